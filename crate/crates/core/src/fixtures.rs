//! The shipped fixture graphs.

use crate::graph::{DirectedGraph, RawGraph};

const FIXTURES: &[(&str, &str)] = &[
    ("g_loop", include_str!("../fixtures/g_loop.json")),
    ("g_double", include_str!("../fixtures/g_double.json")),
    ("g_flow", include_str!("../fixtures/g_flow.json")),
    ("g_cycle2", include_str!("../fixtures/g_cycle2.json")),
    ("g_chain", include_str!("../fixtures/g_chain.json")),
    ("g_fork", include_str!("../fixtures/g_fork.json")),
    (
        "g_toeplitz_pair",
        include_str!("../fixtures/g_toeplitz_pair.json"),
    ),
    ("g_mixed", include_str!("../fixtures/g_mixed.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(name, _)| *name)
}

/// Panics on an unknown fixture name.
pub fn raw(name: &str) -> RawGraph {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture named {name}"));
    serde_json::from_str(text).expect("fixture JSON is well-formed")
}

pub fn graph(name: &str) -> DirectedGraph {
    raw(name)
        .validate()
        .expect("fixture graphs are source-free")
}

/// Every fixture, in a fixed order.
pub fn corpus() -> Vec<(&'static str, DirectedGraph)> {
    names().map(|n| (n, graph(n))).collect()
}

/// One vertex `v`, one loop `a`.
pub fn g_loop() -> DirectedGraph {
    graph("g_loop")
}

/// One vertex `v`, two loops `a` and `b`.
pub fn g_double() -> DirectedGraph {
    graph("g_double")
}

/// Loops `a` at `u` and `b` at `v`, plus `c` from `u` to `v`.
pub fn g_flow() -> DirectedGraph {
    graph("g_flow")
}
