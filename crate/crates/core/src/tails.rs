//! Maximal tails: the vertex sets indexing the strata of the primitive ideal space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cycle, DirectedGraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TailKind {
    Aperiodic,
    /// Carries the unique (up to rotation) cycle with no entrance in the tail.
    Cyclic(Cycle),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MaximalTail {
    vertices: VertexSet,
    kind: TailKind,
}

impl MaximalTail {
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn kind(&self) -> &TailKind {
        &self.kind
    }

    pub fn cycle(&self) -> Option<&Cycle> {
        match &self.kind {
            TailKind::Cyclic(c) => Some(c),
            TailKind::Aperiodic => None,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.kind, TailKind::Cyclic(_))
    }

    /// Length of the entrance-free cycle, or 0 for an aperiodic tail.
    pub fn period(&self) -> usize {
        self.cycle().map_or(0, Cycle::len)
    }
}

impl fmt::Display for MaximalTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TailKind::Aperiodic => write!(f, "{} aperiodic", self.vertices),
            TailKind::Cyclic(c) => write!(f, "{} cyclic({c})", self.vertices),
        }
    }
}

/// Axioms (T1)–(T3), plus nonemptiness.
pub fn is_maximal_tail(graph: &DirectedGraph, tail: &VertexSet) -> bool {
    if tail.is_empty() || graph.check_vertices(tail).is_err() {
        return false;
    }
    // (T1) s(e) ∈ T ⇒ r(e) ∈ T
    let forward_closed = graph
        .edges()
        .iter()
        .all(|e| !tail.contains(&e.src) || tail.contains(&e.rng));
    // (T2) every v ∈ T receives an edge from T
    let fed = tail.iter().all(|v| {
        graph
            .in_edges(v)
            .expect("checked")
            .iter()
            .any(|e| tail.contains(&e.src))
    });
    if !(forward_closed && fed) {
        return false;
    }
    // (T3) any two members have a common ancestor in T
    let ancestors: Vec<VertexSet> = tail
        .iter()
        .map(|v| graph.ancestors(v).intersection(tail))
        .collect();
    ancestors
        .iter()
        .enumerate()
        .all(|(i, a)| ancestors[i + 1..].iter().all(|b| !a.is_disjoint(b)))
}

/// Every maximal tail, sorted by vertex set (size, then lexicographic).
///
/// In a finite graph an infinite path eventually stays inside one strongly
/// connected component, so the tails are the forward closures of the
/// components that carry an edge.
pub fn enumerate_maximal_tails(graph: &DirectedGraph) -> Result<Vec<MaximalTail>> {
    graph
        .component_tails()
        .iter()
        .map(|t| classify_tail(graph, t))
        .collect()
}

pub fn classify_tail(graph: &DirectedGraph, tail: &VertexSet) -> Result<MaximalTail> {
    if !is_maximal_tail(graph, tail) {
        return Err(Error::NotAMaximalTail);
    }
    let mut cycles = graph.entrance_free_cycles(tail);
    let kind = match cycles.len() {
        0 => TailKind::Aperiodic,
        1 => {
            let cycle = cycles.pop().expect("one cycle");
            if graph.reachable_ranges(&cycle.vertices(graph)) != *tail {
                return Err(Error::InternalInvariantViolation(format!(
                    "tail {tail} is not generated by its entrance-free cycle {cycle}"
                )));
            }
            TailKind::Cyclic(cycle)
        }
        n => {
            return Err(Error::InternalInvariantViolation(format!(
                "tail {tail} holds {n} rotation classes of entrance-free cycles"
            )))
        }
    };
    Ok(MaximalTail {
        vertices: tail.clone(),
        kind,
    })
}

/// `T_μ = {r(λ) : λ ∈ E* r(μ)}`, classified.
pub fn tail_of_cycle(graph: &DirectedGraph, cycle: &Cycle) -> Result<MaximalTail> {
    // Re-validating guards against a cycle built for a different graph.
    let cycle = Cycle::new(graph, cycle.edges().to_vec())?;
    classify_tail(graph, &graph.reachable_ranges(&cycle.vertices(graph)))
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TailJson {
    pub vertices: VertexSet,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
    pub period: usize,
}

impl Serialize for MaximalTail {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        TailJson {
            vertices: self.vertices.clone(),
            kind: if self.is_cyclic() {
                "cyclic"
            } else {
                "aperiodic"
            }
            .into(),
            cycle: self.cycle().map(|c| c.edges().to_vec()),
            period: self.period(),
        }
        .serialize(serializer)
    }
}

impl TailJson {
    /// Re-derives the tail from its vertex set and checks the stated
    /// classification against it.
    pub(crate) fn resolve(&self, graph: &DirectedGraph) -> Result<MaximalTail> {
        graph.check_vertices(&self.vertices)?;
        let tail = classify_tail(graph, &self.vertices)?;
        let stated_cycle = match self.cycle.as_deref() {
            Some([]) | None => None,
            Some(ids) => Some(Cycle::new(graph, ids.to_vec())?),
        };
        let consistent = match (&tail.kind, self.kind.as_str()) {
            (TailKind::Aperiodic, "aperiodic") => stated_cycle.is_none(),
            (TailKind::Cyclic(c), "cyclic") => stated_cycle.as_ref().is_none_or(|s| s == c),
            _ => false,
        };
        if !consistent || self.period != tail.period() {
            return Err(Error::InvalidPrimitive(format!(
                "tail {} is {tail}, not as stated",
                self.vertices
            )));
        }
        Ok(tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(vs: &[&str]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn cycle(g: &DirectedGraph, ids: &[&str]) -> Cycle {
        Cycle::new(g, ids.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn axioms_on_flow() {
        let flow = fixtures::g_flow();
        assert!(is_maximal_tail(&flow, &set(&["v"])));
        assert!(!is_maximal_tail(&flow, &set(&["u"])));
        assert!(is_maximal_tail(&flow, &set(&["u", "v"])));
        assert!(!is_maximal_tail(&flow, &set(&[])));
        assert!(!is_maximal_tail(&flow, &set(&["w"])));
    }

    #[test]
    fn t3_rejects_two_unrelated_components() {
        let fork = fixtures::graph("g_fork");
        assert!(is_maximal_tail(&fork, &set(&["v"])));
        assert!(is_maximal_tail(&fork, &set(&["w"])));
        // (T1) and (T2) hold but v and w share no ancestor inside {v, w}
        assert!(!is_maximal_tail(&fork, &set(&["v", "w"])));
        assert!(is_maximal_tail(&fork, &set(&["u", "v", "w"])));
    }

    #[test]
    fn enumeration_on_fixtures() {
        let loop_ = fixtures::g_loop();
        let tails = enumerate_maximal_tails(&loop_).unwrap();
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].vertices(), &set(&["v"]));
        assert_eq!(tails[0].cycle(), Some(&cycle(&loop_, &["a"])));
        assert_eq!(tails[0].period(), 1);

        let tails = enumerate_maximal_tails(&fixtures::g_double()).unwrap();
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].kind(), &TailKind::Aperiodic);
        assert_eq!(tails[0].period(), 0);

        let flow = fixtures::g_flow();
        let tails = enumerate_maximal_tails(&flow).unwrap();
        let summary: Vec<String> = tails.iter().map(ToString::to_string).collect();
        assert_eq!(summary, ["{v} cyclic(b)", "{u,v} cyclic(a)"]);
        assert!(tails.iter().all(|t| t.period() == 1));
    }

    #[test]
    fn classification() {
        let flow = fixtures::g_flow();
        let t = classify_tail(&flow, &set(&["u", "v"])).unwrap();
        assert_eq!(t.cycle(), Some(&cycle(&flow, &["a"])));
        let t = classify_tail(&fixtures::g_double(), &set(&["v"])).unwrap();
        assert_eq!(t.kind(), &TailKind::Aperiodic);
        assert_eq!(
            classify_tail(&flow, &set(&["u"])),
            Err(Error::NotAMaximalTail)
        );
    }

    #[test]
    fn tails_of_cycles() {
        let flow = fixtures::g_flow();
        let t = tail_of_cycle(&flow, &cycle(&flow, &["a"])).unwrap();
        assert_eq!(t.vertices(), &set(&["u", "v"]));
        assert!(t.is_cyclic());
        let t = tail_of_cycle(&flow, &cycle(&flow, &["b"])).unwrap();
        assert_eq!(t.vertices(), &set(&["v"]));
        assert_eq!(t.cycle(), Some(&cycle(&flow, &["b"])));
        let loop_ = fixtures::g_loop();
        let t = tail_of_cycle(&loop_, &cycle(&loop_, &["a"])).unwrap();
        assert_eq!(t.vertices(), &set(&["v"]));
    }

    #[test]
    fn tail_of_cycle_with_entrance_is_aperiodic_or_other_cycle() {
        // In g_double the loop a has entrance b, and the tail is aperiodic.
        let g = fixtures::g_double();
        let t = tail_of_cycle(&g, &cycle(&g, &["a"])).unwrap();
        assert_eq!(t.kind(), &TailKind::Aperiodic);
        // Foreign cycles are rejected.
        assert!(matches!(
            tail_of_cycle(&fixtures::g_loop(), &cycle(&g, &["b"])),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn two_cycle_tail_has_period_two() {
        let g = fixtures::graph("g_cycle2");
        let tails = enumerate_maximal_tails(&g).unwrap();
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].period(), 2);
    }

    #[test]
    fn json_shape() {
        let flow = fixtures::g_flow();
        let t = classify_tail(&flow, &set(&["v"])).unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"vertices":["v"],"kind":"cyclic","cycle":["b"],"period":1}"#
        );
        let a = classify_tail(&fixtures::g_double(), &set(&["v"])).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"vertices":["v"],"kind":"aperiodic","period":0}"#
        );
        let back: TailJson =
            serde_json::from_str(r#"{"vertices":["v"],"kind":"aperiodic","period":1}"#).unwrap();
        assert!(back.resolve(&fixtures::g_double()).is_err());
    }
}
