//! Brute-force cross-checks for the fast paths, plus random instance
//! generators used by the property suites and the `oracle` subcommand.
//!
//! The exhaustive searches here work on vertex bitmasks and re-implement the
//! tail axioms from scratch; they share no code with [`crate::graph`] or
//! [`crate::tails`] beyond reading the edge list.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::circle::{Angle, ClosedCircleSet, OpenCircleSet, Rational};
use crate::error::{Error, Result};
use crate::graph::{Cycle, DirectedGraph, Edge, RawGraph, VertexSet};
use crate::ideal::{
    closure_contains, contained_in_prim, cycles_outside, hull, hull_to_pair, meet_of_primitives,
    pair_join, pair_leq, pair_meet, Hull, HullEntry, IdealPair, PrimitiveIdeal,
};
use crate::tails::{enumerate_maximal_tails, MaximalTail};

const MAX_BRUTE_VERTICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub input: String,
    pub fast: String,
    pub brute: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
    }

    fn record(
        &mut self,
        ok: bool,
        input: impl FnOnce() -> String,
        fast: impl ToString,
        brute: impl ToString,
    ) {
        self.checked += 1;
        if !ok {
            self.mismatches.push(Mismatch {
                input: input(),
                fast: fast.to_string(),
                brute: brute.to_string(),
            });
        }
    }
}

/// Vertex indices follow `graph.vertices()`; edges become `(src, rng)` pairs.
struct Bits {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `ancestors[v]`: vertices with a path (possibly empty) to `v`.
    ancestors: Vec<u32>,
}

impl Bits {
    fn new(graph: &DirectedGraph) -> Result<Bits> {
        let n = graph.vertices().len();
        if n > MAX_BRUTE_VERTICES {
            return Err(Error::TooLarge(n));
        }
        let index: BTreeMap<&str, usize> = graph
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let edges: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .map(|e| (index[e.src.as_str()], index[e.rng.as_str()]))
            .collect();
        let mut ancestors: Vec<u32> = (0..n).map(|v| 1 << v).collect();
        loop {
            let mut changed = false;
            for &(s, r) in &edges {
                let merged = ancestors[r] | ancestors[s];
                if merged != ancestors[r] {
                    ancestors[r] = merged;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(Bits {
            n,
            edges,
            ancestors,
        })
    }

    fn has(mask: u32, v: usize) -> bool {
        mask & (1 << v) != 0
    }

    fn axiom_t1(&self, t: u32) -> bool {
        self.edges
            .iter()
            .all(|&(s, r)| !Self::has(t, s) || Self::has(t, r))
    }

    fn axiom_t2(&self, t: u32) -> bool {
        (0..self.n)
            .filter(|&v| Self::has(t, v))
            .all(|v| self.edges.iter().any(|&(s, r)| r == v && Self::has(t, s)))
    }

    fn axiom_t3(&self, t: u32) -> bool {
        let members: Vec<usize> = (0..self.n).filter(|&v| Self::has(t, v)).collect();
        members.iter().all(|&v| {
            members
                .iter()
                .all(|&w| self.ancestors[v] & self.ancestors[w] & t != 0)
        })
    }

    fn to_set(&self, graph: &DirectedGraph, mask: u32) -> VertexSet {
        (0..self.n)
            .filter(|&v| Self::has(mask, v))
            .map(|v| graph.vertices()[v].clone())
            .collect()
    }

    fn subsets(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.n)
    }
}

/// Every nonempty vertex subset satisfying (T1)–(T3), by exhaustive search.
pub fn brute_maximal_tails(graph: &DirectedGraph) -> Result<Vec<VertexSet>> {
    let bits = Bits::new(graph)?;
    let mut found: Vec<VertexSet> = bits
        .subsets()
        .filter(|&t| t != 0 && bits.axiom_t1(t) && bits.axiom_t2(t) && bits.axiom_t3(t))
        .map(|t| bits.to_set(graph, t))
        .collect();
    found.sort_by(VertexSet::size_lex_cmp);
    Ok(found)
}

/// Every subset whose complement satisfies (T1) and (T2), by exhaustive search.
pub fn brute_saturated_hereditary(graph: &DirectedGraph) -> Result<Vec<VertexSet>> {
    let bits = Bits::new(graph)?;
    let all = (1u32 << bits.n) - 1;
    let mut found: Vec<VertexSet> = bits
        .subsets()
        .filter(|&h| {
            let rest = all & !h;
            bits.axiom_t1(rest) && bits.axiom_t2(rest)
        })
        .map(|h| bits.to_set(graph, h))
        .collect();
    found.sort_by(VertexSet::size_lex_cmp);
    Ok(found)
}

fn show_sets(sets: &[VertexSet]) -> String {
    sets.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Fast tail enumeration against exhaustive search, plus uniqueness of the
/// entrance-free cycle class inside every tail.
pub fn check_tails(graph: &DirectedGraph) -> Result<OracleReport> {
    let mut report = OracleReport::default();
    let brute = brute_maximal_tails(graph)?;
    match enumerate_maximal_tails(graph) {
        Ok(tails) => {
            let fast: Vec<VertexSet> = tails.iter().map(|t| t.vertices().clone()).collect();
            report.record(
                fast == brute,
                || "maximal tails".into(),
                show_sets(&fast),
                show_sets(&brute),
            );
            for t in &brute {
                let classes = graph.entrance_free_cycles(t).len();
                report.record(
                    classes <= 1,
                    || format!("entrance-free cycle classes in {t}"),
                    classes,
                    "at most 1",
                );
            }
        }
        Err(e) => report.record(false, || "maximal tails".into(), e, show_sets(&brute)),
    }
    Ok(report)
}

pub fn check_saturated_hereditary(graph: &DirectedGraph) -> Result<OracleReport> {
    let mut report = OracleReport::default();
    let brute = brute_saturated_hereditary(graph)?;
    let fast = graph.enumerate_saturated_hereditary();
    report.record(
        fast == brute,
        || "saturated hereditary sets".into(),
        show_sets(&fast),
        show_sets(&brute),
    );
    Ok(report)
}

/// Primitive ideals containing `J1 ∩ J2`: those containing `J1` or `J2`.
fn hull_union(a: &Hull, b: &Hull) -> Hull {
    let mut merged: BTreeMap<VertexSet, HullEntry> = BTreeMap::new();
    for e in a.entries().iter().chain(b.entries()) {
        merged
            .entry(e.tail.vertices().clone())
            .and_modify(|m| m.allowed = m.allowed.union(&e.allowed))
            .or_insert_with(|| e.clone());
    }
    Hull(merged.into_values().collect())
}

/// Primitive ideals containing `J1 + J2`: those containing both.
fn hull_intersection(a: &Hull, b: &Hull) -> Hull {
    Hull(
        a.entries()
            .iter()
            .filter_map(|e| {
                let other = b.entries().iter().find(|f| f.tail == e.tail)?;
                let allowed = e.allowed.intersect(&other.allowed);
                (!allowed.is_empty()).then(|| HullEntry {
                    tail: e.tail.clone(),
                    allowed,
                })
            })
            .collect(),
    )
}

fn show_family(family: &[&IdealPair]) -> String {
    family
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" , ")
}

/// Lattice laws on every singleton, pair, and consecutive triple drawn from
/// `sample`: meet and join are bounds, they are extremal among the probes
/// (the sample plus the zero and improper ideals), and they agree with the
/// hull route (union of hulls for the meet, intersection for the join).
pub fn check_lattice_laws(graph: &DirectedGraph, sample: &[IdealPair]) -> OracleReport {
    let mut report = OracleReport::default();
    let mut probes: Vec<IdealPair> = sample.to_vec();
    probes.push(IdealPair::zero(graph));
    probes.push(IdealPair::improper(graph));

    let mut families: Vec<Vec<&IdealPair>> = Vec::new();
    for (i, p) in sample.iter().enumerate() {
        families.push(vec![p]);
        for q in &sample[i + 1..] {
            families.push(vec![p, q]);
        }
    }
    for w in sample.windows(3) {
        families.push(w.iter().collect());
    }

    for p in sample {
        report.record(
            pair_leq(p, p),
            || format!("reflexivity of {p}"),
            false,
            true,
        );
    }

    for family in &families {
        let owned: Vec<IdealPair> = family.iter().map(|p| (*p).clone()).collect();
        let input = || show_family(family);
        let meet = match pair_meet(graph, &owned) {
            Ok(m) => m,
            Err(e) => {
                report.record(false, || format!("meet of {}", input()), e, "a valid pair");
                continue;
            }
        };
        let join = match pair_join(graph, &owned) {
            Ok(j) => j,
            Err(e) => {
                report.record(false, || format!("join of {}", input()), e, "a valid pair");
                continue;
            }
        };

        let lower = family.iter().all(|p| pair_leq(&meet, p));
        report.record(
            lower,
            || format!("meet below {}", input()),
            &meet,
            "lower bound",
        );
        let upper = family.iter().all(|p| pair_leq(p, &join));
        report.record(
            upper,
            || format!("join above {}", input()),
            &join,
            "upper bound",
        );

        for q in &probes {
            if family.iter().all(|p| pair_leq(q, p)) {
                report.record(
                    pair_leq(q, &meet),
                    || format!("lower bound {q} of {}", input()),
                    &meet,
                    "greatest lower bound",
                );
            }
            if family.iter().all(|p| pair_leq(p, q)) {
                report.record(
                    pair_leq(&join, q),
                    || format!("upper bound {q} of {}", input()),
                    &join,
                    "least upper bound",
                );
            }
        }

        let hulls: Result<Vec<Hull>> = family.iter().map(|p| hull(graph, p)).collect();
        let hulls = match hulls {
            Ok(h) => h,
            Err(e) => {
                report.record(false, || format!("hulls of {}", input()), e, "hulls");
                continue;
            }
        };
        let united = hulls[1..]
            .iter()
            .fold(hulls[0].clone(), |acc, h| hull_union(&acc, h));
        let shared = hulls[1..]
            .iter()
            .fold(hulls[0].clone(), |acc, h| hull_intersection(&acc, h));
        for (what, fast, via) in [("meet", &meet, &united), ("join", &join, &shared)] {
            match hull_to_pair(graph, via) {
                Ok(brute) => report.record(
                    *fast == brute,
                    || format!("{what} of {} via hulls", input()),
                    fast,
                    &brute,
                ),
                Err(e) => report.record(
                    false,
                    || format!("{what} of {} via hulls", input()),
                    fast,
                    e,
                ),
            }
        }
    }
    report
}

/// Every angle in `base`, plus the midpoint of every pair of cyclically
/// consecutive distinct angles; sorted.
pub fn enriched_grid(base: impl IntoIterator<Item = Angle>) -> Vec<Angle> {
    let mut points: Vec<Angle> = base.into_iter().collect();
    points.push(Angle::ZERO);
    points.sort();
    points.dedup();
    let n = points.len();
    let mids: Vec<Angle> = (0..n)
        .map(|i| points[i].midpoint_towards(points[(i + 1) % n]))
        .collect();
    points.extend(mids);
    points.sort();
    points.dedup();
    points
}

/// Compares the direct closure criterion with containment of the meet of
/// `xs` in each candidate primitive ideal, over every tail and every angle of
/// `zgrid` enriched with the angles occurring in `xs`.
pub fn check_closure_coherence(
    graph: &DirectedGraph,
    xs: &[PrimitiveIdeal],
    zgrid: &[Angle],
) -> Result<OracleReport> {
    let mut report = OracleReport::default();
    let meet = meet_of_primitives(graph, xs)?;
    let mut base: Vec<Angle> = zgrid.to_vec();
    base.extend(xs.iter().map(PrimitiveIdeal::z));
    base.extend(meet.entries().flat_map(|(_, u)| u.endpoints()));
    let grid = enriched_grid(base);
    let show_xs = || {
        xs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" , ")
    };

    for tail in enumerate_maximal_tails(graph)? {
        let angles: &[Angle] = if tail.is_cyclic() {
            &grid
        } else {
            &[Angle::ZERO]
        };
        for &z in angles {
            let target = PrimitiveIdeal::new(tail.clone(), z)?;
            let direct = closure_contains(graph, xs, &target)?;
            let composed = contained_in_prim(&meet, &target);
            report.record(
                direct == composed,
                || format!("{target} in closure of [{}]", show_xs()),
                direct,
                composed,
            );
        }
    }
    Ok(report)
}

/// Exact round trip through the hull.
pub fn check_hull_round_trip(graph: &DirectedGraph, sample: &[IdealPair]) -> OracleReport {
    let mut report = OracleReport::default();
    for p in sample {
        match hull(graph, p).and_then(|h| hull_to_pair(graph, &h)) {
            Ok(back) => report.record(back == *p, || format!("hull round trip of {p}"), &back, p),
            Err(e) => report.record(false, || format!("hull round trip of {p}"), e, p),
        }
    }
    report
}

/// A random source-free graph: random edges, then a loop on every vertex
/// that would otherwise receive nothing. Never exceeds `max_edges` when
/// `max_edges ≥ max_vertices`.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> DirectedGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let budget = max_edges.saturating_sub(n);
    let m = rng.gen_range(0..=budget);
    let mut edges: Vec<Edge> = (0..m)
        .map(|i| {
            Edge::new(
                format!("e{i}"),
                vertices[rng.gen_range(0..n)].clone(),
                vertices[rng.gen_range(0..n)].clone(),
            )
        })
        .collect();
    for v in &vertices {
        if !edges.iter().any(|e| &e.rng == v) {
            edges.push(Edge::new(format!("l{v}"), v.clone(), v.clone()));
        }
    }
    RawGraph { vertices, edges }
        .validate()
        .expect("every vertex has an in-edge")
}

const DENOMINATORS: [i64; 7] = [1, 2, 3, 4, 5, 6, 8];

pub fn random_angle(rng: &mut impl Rng) -> Angle {
    let d = *DENOMINATORS.choose(rng).expect("nonempty");
    Angle::new(rng.gen_range(0..d), d).expect("k/d with 0 ≤ k < d")
}

/// A random proper open set, mixing the shapes that matter for the lattice:
/// empty, co-point, co-finite, unions of arcs, and long wrapping arcs.
pub fn random_open_set(rng: &mut impl Rng) -> OpenCircleSet {
    let set = match rng.gen_range(0..6) {
        0 => OpenCircleSet::empty(),
        1 => OpenCircleSet::co_point(random_angle(rng)),
        2 => {
            let k = rng.gen_range(2..=3);
            ClosedCircleSet::points((0..k).map(|_| random_angle(rng))).complement()
        }
        3 | 4 => {
            let k = rng.gen_range(1..=3);
            let arcs: Vec<(Rational, Rational)> = (0..k)
                .map(|_| {
                    let start = random_angle(rng).value();
                    let d = *DENOMINATORS.choose(rng).expect("nonempty");
                    let len = Rational::new(rng.gen_range(1..=d), d);
                    (start, start + len)
                })
                .collect();
            OpenCircleSet::from_arcs(arcs).expect("0 < len ≤ 1")
        }
        _ => {
            let a = random_angle(rng).value();
            let gap = Rational::new(rng.gen_range(0..=2), 8);
            ClosedCircleSet::arc(a, a + gap)
                .expect("short arc")
                .complement()
        }
    };
    if set.is_proper() {
        set
    } else {
        OpenCircleSet::co_point(random_angle(rng))
    }
}

/// Precomputed enumeration data for drawing random pairs and primitives.
pub struct Sampler<'g> {
    graph: &'g DirectedGraph,
    strata: Vec<(VertexSet, Vec<Cycle>)>,
    tails: Vec<MaximalTail>,
}

impl<'g> Sampler<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Result<Self> {
        let strata = graph
            .enumerate_saturated_hereditary()
            .into_iter()
            .map(|h| {
                let cycles = cycles_outside(graph, &h);
                (h, cycles)
            })
            .collect();
        Ok(Sampler {
            graph,
            strata,
            tails: enumerate_maximal_tails(graph)?,
        })
    }

    pub fn tails(&self) -> &[MaximalTail] {
        &self.tails
    }

    pub fn pair(&self, rng: &mut impl Rng) -> IdealPair {
        let (h, cycles) = self
            .strata
            .choose(rng)
            .expect("∅ is always saturated hereditary");
        self.pair_over(h, cycles, rng)
    }

    /// A random pair whose `H` is the `index`-th saturated hereditary set.
    pub fn pair_at(&self, index: usize, rng: &mut impl Rng) -> IdealPair {
        let (h, cycles) = &self.strata[index % self.strata.len()];
        self.pair_over(h, cycles, rng)
    }

    fn pair_over(&self, h: &VertexSet, cycles: &[Cycle], rng: &mut impl Rng) -> IdealPair {
        let u: Vec<(Cycle, OpenCircleSet)> = cycles
            .iter()
            .map(|c| (c.clone(), random_open_set(rng)))
            .collect();
        IdealPair::new(self.graph, h.clone(), u).expect("values are proper and keys are C(H)")
    }

    pub fn primitive(&self, rng: &mut impl Rng) -> PrimitiveIdeal {
        let tail = self
            .tails
            .choose(rng)
            .expect("source-free graphs have a tail")
            .clone();
        let z = if tail.is_cyclic() {
            random_angle(rng)
        } else {
            Angle::ZERO
        };
        PrimitiveIdeal::new(tail, z).expect("z matches the tail kind")
    }

    /// One to four primitives, drawn mostly from a single tail so that the
    /// angle condition of the closure criterion is exercised.
    pub fn primitive_family(&self, rng: &mut impl Rng) -> Vec<PrimitiveIdeal> {
        let k = rng.gen_range(1..=4);
        let focus = self.primitive(rng);
        (0..k)
            .map(|_| match rng.gen_bool(0.6) {
                true => {
                    let z = if focus.tail().is_cyclic() {
                        random_angle(rng)
                    } else {
                        Angle::ZERO
                    };
                    PrimitiveIdeal::new(focus.tail().clone(), z).expect("same tail kind")
                }
                false => self.primitive(rng),
            })
            .collect()
    }
}

/// All brute-force and coherence checks for one graph, with `samples`
/// randomized instances per check.
pub fn run_all(graph: &DirectedGraph, rng: &mut impl Rng, samples: usize) -> Result<OracleReport> {
    let mut report = check_tails(graph)?;
    report.merge(check_saturated_hereditary(graph)?);
    let sampler = Sampler::new(graph)?;
    let pairs: Vec<IdealPair> = (0..samples).map(|_| sampler.pair(rng)).collect();
    report.merge(check_hull_round_trip(graph, &pairs));
    report.merge(check_lattice_laws(graph, &pairs));
    let grid: Vec<Angle> = (0..8).map(|k| Angle::new(k, 8).expect("k/8")).collect();
    for _ in 0..samples {
        let xs = sampler.primitive_family(rng);
        report.merge(check_closure_coherence(graph, &xs, &grid)?);
    }
    Ok(report)
}
