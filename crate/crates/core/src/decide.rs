//! Routing: classify a statement and dispatch it to the right decision
//! procedure.

use crate::ast::{well_formed, Statement, Verdict, Violation};
use crate::bridge::{decide_prop_equiv, decide_taut, BridgeError};
use crate::extremes::{decide_flat, decide_indexed, DecideOptions, EngineError};
use crate::product::{decide_product, ProductError};

/// Which decision procedure a statement is routed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatementClass {
    Flat,
    Indexed,
    Product,
    Logical,
}

impl StatementClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            StatementClass::Flat => "flat",
            StatementClass::Indexed => "indexed",
            StatementClass::Product => "product",
            StatementClass::Logical => "logical",
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum DecideError {
    #[error("unsupported statement: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Unsupported { violations: Vec<Violation> },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

/// Verdict plus the route that produced it.
#[derive(Debug, Clone)]
pub struct Decision {
    pub class: StatementClass,
    pub verdict: Verdict,
}

/// Syntactic routing: logical statements go through the set translation,
/// products to the two-point decider, families to the indexed engine,
/// everything else to the flat extremes engine.
pub fn classify(s: &Statement) -> StatementClass {
    match s {
        Statement::Taut(_) | Statement::PropEquiv(_, _) => StatementClass::Logical,
        _ if s.contains_product() => StatementClass::Product,
        _ if s.contains_family() => StatementClass::Indexed,
        _ => StatementClass::Flat,
    }
}

/// Decide a statement end to end: well-formedness check, routing, and
/// the routed procedure's verdict.
pub fn decide(s: &Statement, opts: &DecideOptions) -> Result<Decision, DecideError> {
    let violations = well_formed(s);
    if !violations.is_empty() {
        return Err(DecideError::Unsupported { violations });
    }
    let class = classify(s);
    let verdict = match (class, s) {
        (StatementClass::Logical, Statement::Taut(p)) => decide_taut(p, opts)?,
        (StatementClass::Logical, Statement::PropEquiv(l, r)) => decide_prop_equiv(l, r, opts)?,
        (StatementClass::Product, _) => decide_product(s, opts)?,
        (StatementClass::Indexed, _) => decide_indexed(s, opts)?,
        (StatementClass::Flat, _) => decide_flat(s, opts)?,
        _ => unreachable!("logical class covers exactly the logical variants"),
    };
    Ok(Decision { class, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Method;
    use crate::parser::parse_statement;

    fn run(input: &str) -> Decision {
        decide(&parse_statement(input).unwrap(), &DecideOptions::default()).unwrap()
    }

    #[test]
    fn routes_by_statement_shape() {
        assert_eq!(run("A & B = B & A").class, StatementClass::Flat);
        assert_eq!(
            run("B & (Union s in S. A[s]) = Union s in S. (A[s] & B)").class,
            StatementClass::Indexed
        );
        assert_eq!(run("X * (A | B) = X * A | X * B").class, StatementClass::Product);
        assert_eq!(run("p \\/ ~p").class, StatementClass::Logical);
    }

    #[test]
    fn inclusion_statements_are_flat_after_desugaring() {
        let d = run("A & B <= A");
        assert_eq!(d.class, StatementClass::Flat);
        match d.verdict {
            Verdict::Valid { method, .. } => assert_eq!(method, Method::Extremes),
            other => panic!("expected Valid, got {other:?}"),
        }
    }

    #[test]
    fn products_mixed_with_families_are_rejected() {
        let s = parse_statement("Union s in S. A[s] = X * Y").unwrap();
        assert!(matches!(
            decide(&s, &DecideOptions::default()),
            Err(DecideError::Product(_))
        ));
    }
}
