//! Decision procedures for set-theoretic identities and propositional
//! tautologies.
//!
//! The central fact this crate operationalizes: an identity built from
//! union, intersection, difference, symmetric difference, and complement
//! holds for all sets exactly when it holds in the *extreme cases*, where
//! every variable is either the empty set or the whole universe. That
//! turns identity checking into a small exhaustive enumeration, extends
//! to indexed unions/intersections (completely, for arity-1 families, via
//! the monadic finite-model bound), and — through the translation between
//! sets and logic — also decides propositional tautologies. Cartesian
//! products escape the extreme cases and get their own two-point decision
//! procedure.
//!
//! Every fast verdict can be cross-checked against [`oracle::check_by_model`],
//! a brute-force finite-model search that shares no evaluation code with
//! the fast paths, and every `Invalid` verdict carries a concrete witness
//! model that re-evaluates to a genuine falsification.

pub mod ast;
pub mod bridge;
pub mod decide;
pub mod extremes;
pub mod generate;
pub mod oracle;
mod par;
pub mod parser;
pub mod product;
pub mod transform;

pub use ast::{
    desugar, free_symbols, well_formed, ExtremeAssignment, FamilySymbol, FiniteModel, Method,
    PropExpr, SetExpr, Statement, SymbolKey, Symbols, Verdict, Violation, Witness,
};
pub use bridge::{decide_taut, logic_to_set, set_to_logic, BridgeError};
pub use decide::{classify, decide, DecideError, Decision, StatementClass};
pub use extremes::{decide_flat, decide_indexed, explain, DecideOptions, EngineError, ExplainRow};
pub use oracle::{check_by_model, eval_extreme, eval_model, eval_prop, falsifies, Extent, OracleError, OracleLimits};
pub use parser::{
    parse_statement, parse_statement_in, render, render_prop_expr, render_set_expr, ParseError,
    ParseMode, SourceSpan,
};
pub use product::{decide_product, independence_check, product_flat, reduce_product, ProductError};
pub use transform::{apply, preserves, transform_equal, Law, TransformExpr};
