//! Primitive ideals, ideal pairs, and the lattice operations on them.
//!
//! An ideal pair `(H, U)` is a saturated hereditary set `H` together with a
//! proper open subset `U(μ)` of the circle for every cycle `μ` with no
//! entrance in `E⁰ ∖ H` (the set `C(H)`); these are in bijection with the
//! closed two-sided ideals of the graph algebra. A primitive ideal is indexed
//! by a maximal tail `T` and a circle point `z`, with `z` pinned to 1 when `T`
//! is aperiodic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circle::{Angle, ClosedCircleSet, OpenCircleSet};
use crate::error::{Error, Result};
use crate::graph::{Cycle, DirectedGraph, VertexSet};
use crate::tails::{enumerate_maximal_tails, tail_of_cycle, MaximalTail, TailKind};

/// `I_{T,z}`; `z` is stored after raising to the period, so it is arbitrary
/// for cyclic tails and `Angle::ZERO` (that is, `z = 1`) for aperiodic ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimitiveIdeal {
    tail: MaximalTail,
    z: Angle,
}

impl PrimitiveIdeal {
    pub fn new(tail: MaximalTail, z: Angle) -> Result<Self> {
        if !tail.is_cyclic() && z != Angle::ZERO {
            return Err(Error::InvalidPrimitive(format!(
                "aperiodic tail {} admits only z = 1, got angle {z}",
                tail.vertices()
            )));
        }
        Ok(PrimitiveIdeal { tail, z })
    }

    pub fn tail(&self) -> &MaximalTail {
        &self.tail
    }

    pub fn z(&self) -> Angle {
        self.z
    }
}

impl fmt::Display for PrimitiveIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({}, {})", self.tail.vertices(), self.z)
    }
}

/// A validated ideal pair. The keys of `u` are exactly `C(h)`, in canonical
/// rotation, so rotations of one cycle share a single value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealPair {
    h: VertexSet,
    u: BTreeMap<Cycle, OpenCircleSet>,
}

impl IdealPair {
    pub fn new(
        graph: &DirectedGraph,
        h: VertexSet,
        u: impl IntoIterator<Item = (Cycle, OpenCircleSet)>,
    ) -> Result<Self> {
        graph.check_vertices(&h)?;
        if !graph.is_saturated_hereditary(&h) {
            return Err(Error::InvalidPair(format!(
                "{h} is not saturated hereditary"
            )));
        }
        let mut values = BTreeMap::new();
        for (cycle, set) in u {
            let cycle = Cycle::new(graph, cycle.edges().to_vec())?;
            if !set.is_proper() {
                return Err(Error::InvalidPair(format!(
                    "U({cycle}) is the whole circle"
                )));
            }
            if values.insert(cycle.clone(), set).is_some() {
                return Err(Error::InvalidPair(format!("U({cycle}) is given twice")));
            }
        }
        let expected: BTreeSet<Cycle> = cycles_outside(graph, &h).into_iter().collect();
        let given: BTreeSet<Cycle> = values.keys().cloned().collect();
        if expected != given {
            let show = |cs: &BTreeSet<Cycle>| {
                cs.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(Error::InvalidPair(format!(
                "U must be defined exactly on C({h}) = {{{}}}, got {{{}}}",
                show(&expected),
                show(&given)
            )));
        }
        Ok(IdealPair { h, u: values })
    }

    /// `(H, μ ↦ ∅)`, the gauge-invariant ideal generated by `H`.
    pub fn gauge_invariant(graph: &DirectedGraph, h: VertexSet) -> Result<Self> {
        let cycles = cycles_outside(graph, &h);
        IdealPair::new(
            graph,
            h,
            cycles.into_iter().map(|c| (c, OpenCircleSet::empty())),
        )
    }

    /// The zero ideal `(∅, μ ↦ ∅)`.
    pub fn zero(graph: &DirectedGraph) -> Self {
        IdealPair::gauge_invariant(graph, VertexSet::new()).expect("∅ is saturated hereditary")
    }

    /// The improper ideal `(E⁰, ∅)`.
    pub fn improper(graph: &DirectedGraph) -> Self {
        IdealPair {
            h: graph.all_vertices(),
            u: BTreeMap::new(),
        }
    }

    pub fn h(&self) -> &VertexSet {
        &self.h
    }

    pub fn cycles(&self) -> impl Iterator<Item = &Cycle> + '_ {
        self.u.keys()
    }

    pub fn u(&self, cycle: &Cycle) -> Option<&OpenCircleSet> {
        self.u.get(cycle)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Cycle, &OpenCircleSet)> + '_ {
        self.u.iter()
    }
}

impl fmt::Display for IdealPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ", self.h)?;
        if self.u.is_empty() {
            return write!(f, "∅)");
        }
        let parts: Vec<String> = self.entries().map(|(c, s)| format!("{c} ↦ {s}")).collect();
        write!(f, "{})", parts.join("; "))
    }
}

/// `C(H)`: cycles with no entrance in `E⁰ ∖ H`.
pub fn cycles_outside(graph: &DirectedGraph, h: &VertexSet) -> Vec<Cycle> {
    graph.entrance_free_cycles(&graph.all_vertices().difference(h))
}

/// One entry of the primitive ideal space: a tail and the closed set of
/// admissible `z` (the whole circle for cyclic tails, `{1}` for aperiodic ones).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullEntry {
    pub tail: MaximalTail,
    pub allowed: ClosedCircleSet,
}

/// The primitive ideals containing an ideal: `I_{T,z}` belongs to the hull
/// iff some entry has tail `T` and `allowed` contains `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Hull(pub Vec<HullEntry>);

impl Hull {
    pub fn entries(&self) -> &[HullEntry] {
        &self.0
    }

    pub fn contains(&self, p: &PrimitiveIdeal) -> bool {
        self.0
            .iter()
            .any(|e| e.tail == *p.tail() && e.allowed.contains(p.z()))
    }
}

fn point_one() -> ClosedCircleSet {
    ClosedCircleSet::points([Angle::ZERO])
}

/// The primitive ideal space, one stratum per maximal tail.
pub fn enumerate_primitive_strata(graph: &DirectedGraph) -> Result<Vec<HullEntry>> {
    Ok(enumerate_maximal_tails(graph)?
        .into_iter()
        .map(|tail| {
            let allowed = match tail.kind() {
                TailKind::Aperiodic => point_one(),
                TailKind::Cyclic(_) => ClosedCircleSet::full(),
            };
            HullEntry { tail, allowed }
        })
        .collect())
}

pub fn prim_to_pair(graph: &DirectedGraph, p: &PrimitiveIdeal) -> Result<IdealPair> {
    let h = graph.all_vertices().difference(p.tail().vertices());
    let cycles = cycles_outside(graph, &h);
    let u = match (p.tail().kind(), cycles.as_slice()) {
        (TailKind::Aperiodic, []) => Vec::new(),
        (TailKind::Cyclic(mu), [only]) if mu == only => {
            vec![(mu.clone(), OpenCircleSet::co_point(p.z()))]
        }
        _ => {
            return Err(Error::InternalInvariantViolation(format!(
                "C({h}) has {} cycles, inconsistent with tail {}",
                cycles.len(),
                p.tail()
            )))
        }
    };
    IdealPair::new(graph, h, u)
}

/// The primitive ideal equal to `J_{H,U}`, if there is one.
pub fn as_primitive(graph: &DirectedGraph, pair: &IdealPair) -> Option<PrimitiveIdeal> {
    let complement = graph.all_vertices().difference(pair.h());
    let tail = crate::tails::classify_tail(graph, &complement).ok()?;
    let z = match tail.kind() {
        TailKind::Aperiodic if pair.u.is_empty() => Angle::ZERO,
        TailKind::Cyclic(mu) if pair.u.len() == 1 => pair.u(mu)?.as_co_point()?,
        _ => return None,
    };
    PrimitiveIdeal::new(tail, z).ok()
}

/// `J_{H1,U1} ⊆ J_{H2,U2}`.
pub fn pair_leq(p1: &IdealPair, p2: &IdealPair) -> bool {
    p1.h.is_subset(&p2.h)
        && p1
            .entries()
            .all(|(mu, u1)| p2.u(mu).is_none_or(|u2| u1.is_subset(u2)))
}

/// The intersection of the ideals in `family`.
pub fn pair_meet(graph: &DirectedGraph, family: &[IdealPair]) -> Result<IdealPair> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    let h = rest
        .iter()
        .fold(first.h.clone(), |acc, p| acc.intersection(&p.h));
    let mut u = Vec::new();
    for mu in cycles_outside(graph, &h) {
        let constraints: Vec<&OpenCircleSet> = family.iter().filter_map(|p| p.u(&mu)).collect();
        if constraints.is_empty() {
            return Err(Error::InternalInvariantViolation(format!(
                "no member of the meet family constrains {mu} ∈ C({h})"
            )));
        }
        // no-op for finite families
        let value = OpenCircleSet::interior_of_intersection(constraints);
        u.push((mu, value));
    }
    IdealPair::new(graph, h, u)
}

/// The closed span of the ideals in `family`.
pub fn pair_join(graph: &DirectedGraph, family: &[IdealPair]) -> Result<IdealPair> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let union_at = |mu: &Cycle| OpenCircleSet::union_all(family.iter().filter_map(|p| p.u(mu)));

    let all_h = family
        .iter()
        .fold(VertexSet::new(), |acc, p| acc.union(&p.h));
    let a = graph.saturated_hereditary_closure(&all_h);
    let mut promoted = a.clone();
    for mu in cycles_outside(graph, &a) {
        if union_at(&mu).is_full() {
            promoted.insert(mu.base(graph));
        }
    }
    let h = graph.saturated_hereditary_closure(&promoted);

    let mut u = Vec::new();
    for mu in cycles_outside(graph, &h) {
        let value = union_at(&mu);
        if !value.is_proper() {
            return Err(Error::InternalInvariantViolation(format!(
                "joined U({mu}) covers the circle but {mu} survives in C({h})"
            )));
        }
        u.push((mu, value));
    }
    IdealPair::new(graph, h, u)
}

/// `J_{H,U} ⊆ I_{T,z}`.
pub fn contained_in_prim(pair: &IdealPair, p: &PrimitiveIdeal) -> bool {
    if !pair.h.is_disjoint(p.tail().vertices()) {
        return false;
    }
    match p.tail().cycle().and_then(|mu| pair.u(mu)) {
        Some(u) => !u.contains(p.z()),
        None => true,
    }
}

/// Whether `target` lies in the closure of `xs`, i.e. `⋂ xs ⊆ target`.
pub fn closure_contains(
    graph: &DirectedGraph,
    xs: &[PrimitiveIdeal],
    target: &PrimitiveIdeal,
) -> Result<bool> {
    if xs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let covered = xs
        .iter()
        .fold(VertexSet::new(), |acc, p| acc.union(p.tail().vertices()));
    let s = target.tail();
    if !s.vertices().is_subset(&covered) {
        return Ok(false);
    }
    let Some(mu) = s.cycle() else {
        return Ok(true);
    };
    if !graph.is_entrance_free(mu, &covered) {
        return Ok(true);
    }
    let same_tail = crate::circle::finite_closed_set(
        xs.iter().filter(|p| p.tail() == s).map(PrimitiveIdeal::z),
    );
    Ok(same_tail.contains(target.z()))
}

/// The primitive ideals containing `J_{H,U}`, tail by tail.
pub fn hull(graph: &DirectedGraph, pair: &IdealPair) -> Result<Hull> {
    let mut entries = Vec::new();
    for tail in enumerate_maximal_tails(graph)? {
        if !tail.vertices().is_disjoint(pair.h()) {
            continue;
        }
        let allowed = match tail.cycle() {
            None => point_one(),
            Some(mu) => match pair.u(mu) {
                Some(u) => u.complement(),
                None => ClosedCircleSet::full(),
            },
        };
        entries.push(HullEntry { tail, allowed });
    }
    Ok(Hull(entries))
}

/// Recovers the ideal pair whose hull is `hull`.
pub fn hull_to_pair(graph: &DirectedGraph, hull: &Hull) -> Result<IdealPair> {
    let tails = enumerate_maximal_tails(graph)?;
    let mut seen = BTreeSet::new();
    let mut covered = VertexSet::new();
    for entry in hull.entries() {
        if !tails.contains(&entry.tail) {
            return Err(Error::MalformedHull(format!(
                "{} is not a maximal tail of the graph",
                entry.tail
            )));
        }
        if !seen.insert(entry.tail.vertices().clone()) {
            return Err(Error::MalformedHull(format!(
                "tail {} listed twice",
                entry.tail
            )));
        }
        if entry.allowed.is_empty() {
            return Err(Error::MalformedHull(format!(
                "entry for {} allows no z",
                entry.tail
            )));
        }
        if !entry.tail.is_cyclic() && entry.allowed != point_one() {
            return Err(Error::MalformedHull(format!(
                "aperiodic tail {} must allow exactly z = 1",
                entry.tail
            )));
        }
        covered = covered.union(entry.tail.vertices());
    }
    let h = graph.all_vertices().difference(&covered);
    let mut u = Vec::new();
    for mu in cycles_outside(graph, &h) {
        let tail = tail_of_cycle(graph, &mu)?;
        let value = hull
            .entries()
            .iter()
            .find(|e| e.tail == tail)
            .map_or_else(OpenCircleSet::empty, |e| e.allowed.complement());
        u.push((mu, value));
    }
    IdealPair::new(graph, h, u).map_err(|e| Error::MalformedHull(e.to_string()))
}

/// `⋂ X` as an ideal pair.
pub fn meet_of_primitives(graph: &DirectedGraph, xs: &[PrimitiveIdeal]) -> Result<IdealPair> {
    let pairs = xs
        .iter()
        .map(|p| prim_to_pair(graph, p))
        .collect::<Result<Vec<_>>>()?;
    pair_meet(graph, &pairs)
}

/// Gauge-invariant ideals are exactly those with every `U(μ)` empty.
pub fn is_gauge_invariant(pair: &IdealPair) -> bool {
    pair.entries().all(|(_, u)| u.is_empty())
}

/// `{v : p_v ∈ J_{H,U}} = H`.
pub fn vertices_in_ideal(pair: &IdealPair) -> &VertexSet {
    pair.h()
}

/// The Hasse diagram of the saturated hereditary sets under inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaugeLattice {
    pub nodes: Vec<VertexSet>,
    /// `(i, j)`: `nodes[j]` covers `nodes[i]`.
    pub covers: Vec<(usize, usize)>,
}

impl GaugeLattice {
    pub fn new(graph: &DirectedGraph) -> Self {
        let nodes = graph.enumerate_saturated_hereditary();
        let below = |i: usize, j: usize| i != j && nodes[i].is_subset(&nodes[j]);
        let mut covers = Vec::new();
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                if below(i, j) && !(0..nodes.len()).any(|k| below(i, k) && below(k, j)) {
                    covers.push((i, j));
                }
            }
        }
        GaugeLattice { nodes, covers }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gauge_lattice {\n    rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            out.push_str(&format!("    n{i} [label=\"{n}\"];\n"));
        }
        for (i, j) in &self.covers {
            out.push_str(&format!("    n{i} -> n{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

// JSON forms:
//   IdealPair      {"H": [...], "U": [{"cycle": [...], "set": <open set>}]}
//   PrimitiveIdeal {"tail": <tail>, "z": "p/q"}
//   Hull           [{"tail": <tail>, "allowed": <closed set>}]

#[derive(Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "H")]
    pub h: VertexSet,
    #[serde(rename = "U", default)]
    pub u: Vec<CycleValueJson>,
}

#[derive(Serialize, Deserialize)]
pub struct CycleValueJson {
    pub cycle: Vec<String>,
    pub set: OpenCircleSet,
}

impl Serialize for IdealPair {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        PairJson {
            h: self.h.clone(),
            u: self
                .entries()
                .map(|(c, s)| CycleValueJson {
                    cycle: c.edges().to_vec(),
                    set: s.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl PairJson {
    pub fn resolve(&self, graph: &DirectedGraph) -> Result<IdealPair> {
        let u = self
            .u
            .iter()
            .map(|e| Ok((Cycle::new(graph, e.cycle.clone())?, e.set.clone())))
            .collect::<Result<Vec<_>>>()?;
        IdealPair::new(graph, self.h.clone(), u)
    }
}

#[derive(Serialize, Deserialize)]
pub struct PrimitiveJson {
    tail: crate::tails::TailJson,
    z: Angle,
}

impl PrimitiveJson {
    pub fn resolve(&self, graph: &DirectedGraph) -> Result<PrimitiveIdeal> {
        PrimitiveIdeal::new(self.tail.resolve(graph)?, self.z)
    }
}

#[derive(Serialize, Deserialize)]
pub struct HullEntryJson {
    tail: crate::tails::TailJson,
    allowed: ClosedCircleSet,
}

impl HullEntryJson {
    pub fn resolve(&self, graph: &DirectedGraph) -> Result<HullEntry> {
        let tail = self
            .tail
            .resolve(graph)
            .map_err(|e| Error::MalformedHull(e.to_string()))?;
        Ok(HullEntry {
            tail,
            allowed: self.allowed.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::Rational;
    use crate::fixtures;
    use crate::tails::classify_tail;

    fn set(vs: &[&str]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn cyc(g: &DirectedGraph, id: &str) -> Cycle {
        Cycle::new(g, vec![id.to_string()]).unwrap()
    }

    fn z(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    fn arc(a: (i64, i64), b: (i64, i64)) -> OpenCircleSet {
        OpenCircleSet::arc(Rational::new(a.0, a.1), Rational::new(b.0, b.1)).unwrap()
    }

    fn pair(g: &DirectedGraph, h: &[&str], u: &[(&str, OpenCircleSet)]) -> IdealPair {
        IdealPair::new(g, set(h), u.iter().map(|(c, s)| (cyc(g, c), s.clone()))).unwrap()
    }

    fn prim(g: &DirectedGraph, t: &[&str], angle: Angle) -> PrimitiveIdeal {
        PrimitiveIdeal::new(classify_tail(g, &set(t)).unwrap(), angle).unwrap()
    }

    #[test]
    fn pair_validation() {
        let flow = fixtures::g_flow();
        assert!(matches!(
            IdealPair::new(&flow, set(&["v"]), []),
            Err(Error::InvalidPair(_))
        ));
        // C(∅) = {a}: U must be given on a only
        assert!(IdealPair::new(&flow, set(&[]), []).is_err());
        assert!(
            IdealPair::new(&flow, set(&[]), [(cyc(&flow, "b"), OpenCircleSet::empty())]).is_err()
        );
        assert!(
            IdealPair::new(&flow, set(&[]), [(cyc(&flow, "a"), OpenCircleSet::full())]).is_err()
        );
        assert!(
            IdealPair::new(&flow, set(&[]), [(cyc(&flow, "a"), OpenCircleSet::empty())]).is_ok()
        );
    }

    #[test]
    fn primitive_requires_z_one_on_aperiodic_tails() {
        let g = fixtures::g_double();
        let tail = classify_tail(&g, &set(&["v"])).unwrap();
        assert!(PrimitiveIdeal::new(tail.clone(), z(1, 2)).is_err());
        assert!(PrimitiveIdeal::new(tail, Angle::ZERO).is_ok());
    }

    #[test]
    fn strata() {
        let s = enumerate_primitive_strata(&fixtures::g_double()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].allowed, point_one());
        let s = enumerate_primitive_strata(&fixtures::g_flow()).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|e| e.allowed.is_full()));
        // the primitive ideal space is the hull of the zero ideal
        for (_, g) in fixtures::corpus() {
            assert_eq!(
                hull(&g, &IdealPair::zero(&g)).unwrap().0,
                enumerate_primitive_strata(&g).unwrap()
            );
        }
    }

    #[test]
    fn primitive_to_pair_examples() {
        let flow = fixtures::g_flow();
        assert_eq!(
            prim_to_pair(&flow, &prim(&flow, &["u", "v"], Angle::ZERO)).unwrap(),
            pair(&flow, &[], &[("a", OpenCircleSet::co_point(Angle::ZERO))])
        );
        assert_eq!(
            prim_to_pair(&flow, &prim(&flow, &["v"], z(1, 2))).unwrap(),
            pair(&flow, &["u"], &[("b", OpenCircleSet::co_point(z(1, 2)))])
        );
        let g = fixtures::g_double();
        assert_eq!(
            prim_to_pair(&g, &prim(&g, &["v"], Angle::ZERO)).unwrap(),
            IdealPair::zero(&g)
        );
    }

    #[test]
    fn as_primitive_examples() {
        let g = fixtures::g_loop();
        let p = pair(&g, &[], &[("a", OpenCircleSet::co_point(Angle::ZERO))]);
        assert_eq!(as_primitive(&g, &p), Some(prim(&g, &["v"], Angle::ZERO)));
        let p = pair(&g, &[], &[("a", arc((0, 1), (1, 2)))]);
        assert_eq!(as_primitive(&g, &p), None);
        let flow = fixtures::g_flow();
        let p = pair(&flow, &["u"], &[("b", OpenCircleSet::empty())]);
        assert_eq!(as_primitive(&flow, &p), None);
        assert_eq!(as_primitive(&flow, &IdealPair::improper(&flow)), None);
        let d = fixtures::g_double();
        assert_eq!(
            as_primitive(&d, &IdealPair::zero(&d)),
            Some(prim(&d, &["v"], Angle::ZERO))
        );
    }

    #[test]
    fn order_examples() {
        let g = fixtures::g_loop();
        let p = pair(&g, &[], &[("a", arc((1, 4), (1, 2)))]);
        let q = pair(&g, &[], &[("a", arc((0, 1), (3, 5)))]);
        assert!(pair_leq(&p, &p));
        assert!(pair_leq(&p, &q));
        assert!(!pair_leq(&q, &p));
        let flow = fixtures::g_flow();
        let p = pair(&flow, &[], &[("a", arc((0, 1), (1, 2)))]);
        let q = pair(&flow, &["u"], &[("b", OpenCircleSet::empty())]);
        assert!(pair_leq(&p, &q));
        assert!(!pair_leq(&q, &p));
    }

    #[test]
    fn meet_examples() {
        let g = fixtures::g_loop();
        let p = pair(&g, &[], &[("a", arc((0, 1), (3, 5)))]);
        let q = pair(&g, &[], &[("a", arc((1, 2), (1, 1)))]);
        assert_eq!(pair_meet(&g, std::slice::from_ref(&p)).unwrap(), p);
        assert_eq!(
            pair_meet(&g, &[p, q]).unwrap(),
            pair(&g, &[], &[("a", arc((1, 2), (3, 5)))])
        );
        let flow = fixtures::g_flow();
        let p = pair(
            &flow,
            &["u"],
            &[("b", OpenCircleSet::co_point(Angle::ZERO))],
        );
        let q = pair(&flow, &[], &[("a", OpenCircleSet::co_point(z(1, 2)))]);
        assert_eq!(pair_meet(&flow, &[p, q.clone()]).unwrap(), q);
        assert_eq!(pair_meet(&flow, &[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn join_examples() {
        let g = fixtures::g_loop();
        let p = pair(&g, &[], &[("a", arc((0, 1), (3, 5)))]);
        let q = pair(&g, &[], &[("a", arc((1, 2), (1, 1)))]);
        assert_eq!(pair_join(&g, std::slice::from_ref(&p)).unwrap(), p);
        let joined = pair_join(&g, &[p, q]).unwrap();
        assert_eq!(
            joined,
            pair(&g, &[], &[("a", OpenCircleSet::co_point(Angle::ZERO))])
        );
        assert!(as_primitive(&g, &joined).is_some());

        let flow = fixtures::g_flow();
        let p = pair(&flow, &[], &[("a", arc((0, 1), (3, 5)))]);
        let q = pair(&flow, &[], &[("a", arc((1, 2), (11, 10)))]);
        assert_eq!(
            pair_join(&flow, &[p, q]).unwrap(),
            pair(&flow, &["u"], &[("b", OpenCircleSet::empty())])
        );
    }

    #[test]
    fn containment_in_primitives() {
        let flow = fixtures::g_flow();
        let p = pair(&flow, &[], &[("a", arc((0, 1), (1, 2)))]);
        assert!(contained_in_prim(
            &p,
            &prim(&flow, &["u", "v"], Angle::ZERO)
        ));
        assert!(!contained_in_prim(&p, &prim(&flow, &["u", "v"], z(1, 4))));
        for (_, g) in fixtures::corpus() {
            let zero = IdealPair::zero(&g);
            for s in enumerate_primitive_strata(&g).unwrap() {
                assert!(contained_in_prim(
                    &zero,
                    &PrimitiveIdeal::new(s.tail, Angle::ZERO).unwrap()
                ));
            }
        }
    }

    #[test]
    fn closure_examples() {
        let flow = fixtures::g_flow();
        let xs = [
            prim(&flow, &["u", "v"], z(1, 4)),
            prim(&flow, &["u", "v"], z(3, 4)),
        ];
        assert!(closure_contains(&flow, &xs[..1], &xs[0]).unwrap());
        assert!(closure_contains(&flow, &xs, &prim(&flow, &["v"], Angle::ZERO)).unwrap());
        assert!(!closure_contains(&flow, &xs, &prim(&flow, &["u", "v"], Angle::ZERO)).unwrap());
        assert!(closure_contains(&flow, &xs, &prim(&flow, &["u", "v"], z(3, 4))).unwrap());
        // {v} alone does not cover u
        let low = [prim(&flow, &["v"], Angle::ZERO)];
        assert!(!closure_contains(&flow, &low, &prim(&flow, &["u", "v"], Angle::ZERO)).unwrap());
    }

    #[test]
    fn hull_examples() {
        let g = fixtures::g_loop();
        let p = pair(&g, &[], &[("a", arc((0, 1), (1, 2)))]);
        let h = hull(&g, &p).unwrap();
        assert_eq!(h.0.len(), 1);
        assert_eq!(h.0[0].allowed, arc((0, 1), (1, 2)).complement());
        assert_eq!(hull_to_pair(&g, &h).unwrap(), p);

        let flow = fixtures::g_flow();
        assert!(hull(&flow, &IdealPair::improper(&flow))
            .unwrap()
            .0
            .is_empty());
        assert_eq!(
            hull_to_pair(&flow, &Hull::default()).unwrap(),
            IdealPair::improper(&flow)
        );
        let h = hull(
            &flow,
            &pair(&flow, &["u"], &[("b", OpenCircleSet::empty())]),
        )
        .unwrap();
        assert_eq!(h.0.len(), 1);
        assert_eq!(h.0[0].tail.vertices(), &set(&["v"]));
        assert!(h.0[0].allowed.is_full());

        let strata = enumerate_primitive_strata(&flow).unwrap();
        let h = Hull(vec![
            strata[0].clone(),
            HullEntry {
                tail: strata[1].tail.clone(),
                allowed: point_one(),
            },
        ]);
        assert_eq!(
            hull_to_pair(&flow, &h).unwrap(),
            pair(&flow, &[], &[("a", OpenCircleSet::co_point(Angle::ZERO))])
        );
    }

    #[test]
    fn malformed_hulls() {
        let flow = fixtures::g_flow();
        let strata = enumerate_primitive_strata(&flow).unwrap();
        let twice = Hull(vec![strata[0].clone(), strata[0].clone()]);
        assert!(matches!(
            hull_to_pair(&flow, &twice),
            Err(Error::MalformedHull(_))
        ));
        let foreign = enumerate_primitive_strata(&fixtures::g_double()).unwrap();
        assert!(matches!(
            hull_to_pair(&flow, &Hull(foreign)),
            Err(Error::MalformedHull(_))
        ));
        let empty_allowed = Hull(vec![HullEntry {
            tail: strata[0].tail.clone(),
            allowed: ClosedCircleSet::empty(),
        }]);
        assert!(matches!(
            hull_to_pair(&flow, &empty_allowed),
            Err(Error::MalformedHull(_))
        ));
    }

    #[test]
    fn meets_of_primitives() {
        let flow = fixtures::g_flow();
        let p = prim(&flow, &["v"], z(1, 3));
        assert_eq!(
            meet_of_primitives(&flow, std::slice::from_ref(&p)).unwrap(),
            prim_to_pair(&flow, &p).unwrap()
        );
        let xs = [
            prim(&flow, &["u", "v"], z(1, 4)),
            prim(&flow, &["u", "v"], z(3, 4)),
        ];
        let expected = ClosedCircleSet::points([z(1, 4), z(3, 4)]).complement();
        assert_eq!(
            meet_of_primitives(&flow, &xs).unwrap(),
            pair(&flow, &[], &[("a", expected)])
        );
        let g = fixtures::g_double();
        assert_eq!(
            meet_of_primitives(&g, &[prim(&g, &["v"], Angle::ZERO)]).unwrap(),
            IdealPair::zero(&g)
        );
    }

    #[test]
    fn gauge_invariance_and_vertices() {
        let g = fixtures::g_loop();
        assert!(is_gauge_invariant(&IdealPair::zero(&g)));
        assert!(!is_gauge_invariant(&pair(
            &g,
            &[],
            &[("a", arc((0, 1), (1, 2)))]
        )));
        let flow = fixtures::g_flow();
        let p = pair(&flow, &["u"], &[("b", OpenCircleSet::empty())]);
        assert!(is_gauge_invariant(&p));
        assert_eq!(vertices_in_ideal(&p), &set(&["u"]));
        assert_eq!(vertices_in_ideal(&IdealPair::zero(&g)), &set(&[]));
        assert_eq!(
            vertices_in_ideal(&IdealPair::improper(&flow)),
            &set(&["u", "v"])
        );
    }

    #[test]
    fn gauge_lattice_hasse_diagram() {
        let lattice = GaugeLattice::new(&fixtures::g_flow());
        assert_eq!(lattice.nodes, vec![set(&[]), set(&["u"]), set(&["u", "v"])]);
        assert_eq!(lattice.covers, vec![(0, 1), (1, 2)]);
        let dot = lattice.to_dot();
        assert!(dot.contains("n0 [label=\"∅\"]"));
        assert!(dot.contains("n2 [label=\"{u,v}\"]"));
        assert!(dot.contains("n0 -> n1;") && dot.contains("n1 -> n2;"));
        assert!(!dot.contains("n0 -> n2;"));
    }

    #[test]
    fn pair_json_round_trip() {
        let flow = fixtures::g_flow();
        let p = pair(&flow, &[], &[("a", arc((1, 2), (11, 10)))]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"{"H":[],"U":[{"cycle":["a"],"set":[["1/2","11/10"]]}]}"#
        );
        let back: PairJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.resolve(&flow).unwrap(), p);
    }
}
