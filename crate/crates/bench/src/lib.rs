//! Shared fixtures for the benchmark targets.

use extremes_core::{parse_statement, Statement};

/// Statements spanning the decision paths: flat, indexed, product, and
/// logical.
pub fn fixtures() -> Vec<(&'static str, Statement)> {
    [
        ("distributivity", "A | (B & C) = (A | B) & (A | C)"),
        ("de_morgan_difference", "A \\ (B | C) = (A \\ B) & (A \\ C)"),
        (
            "indexed_distribution",
            "B & (Union s in S. A[s]) = Union s in S. (A[s] & B)",
        ),
        (
            "product_difference",
            "(X * Y) \\ (A * B) = ((X \\ A) * Y) | (X * (Y \\ B))",
        ),
        (
            "quantifier_swap",
            "(exists t in T. forall s in S. p[s,t]) -> forall s in S. exists t in T. p[s,t]",
        ),
        ("contrapositive", "(p -> q) <-> (~q -> ~p)"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_statement(text).expect("fixture parses")))
    .collect()
}
