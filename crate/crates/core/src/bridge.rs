//! Translation between set statements and logical statements, and
//! tautology checking by reduction to set theory.
//!
//! Going set-to-logic, each set variable `Y` becomes the atom "`Y` is
//! nonempty" (written with its first letter lowercased), union becomes
//! disjunction, intersection conjunction, complement negation, and
//! difference `l \ r` becomes `l /\ ~r`; equality turns into `<->` and
//! inclusion into `->`. Indexed unions and intersections become
//! existential and universal quantifiers.
//!
//! Going logic-to-set, atoms become set variables (first letter
//! uppercased), `p -> q` expands to `P' | Q`, and a formula is a
//! tautology exactly when its translation equals the universe under
//! every extreme assignment — so one decision core serves both worlds.
//! The direct truth-table evaluator in the oracle module stays as the
//! independent check on this reduction.

use crate::ast::{PropExpr, SetExpr, Statement, Verdict, Witness};
use crate::extremes::{decide_flat, decide_indexed, DecideOptions, EngineError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BridgeError {
    #[error("cartesian products have no direct logical translation; use the product decider")]
    ProductsPresent,
    #[error("expected a set equality or inclusion")]
    NotSetStatement,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Atom name for a set variable: lowercase the first letter. The map is
/// injective because only the first letter changes case.
pub fn atom_name_for_set(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => c.to_ascii_lowercase().to_string() + chars.as_str(),
        None => String::new(),
    }
}

/// Set-variable name for an atom: uppercase the first letter. Inverse of
/// [`atom_name_for_set`].
pub fn set_name_for_atom(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => c.to_ascii_uppercase().to_string() + chars.as_str(),
        None => String::new(),
    }
}

fn set_expr_to_prop(e: &SetExpr) -> Result<PropExpr, BridgeError> {
    Ok(match e {
        SetExpr::Var(name) => PropExpr::Atom {
            name: atom_name_for_set(name),
            indices: Vec::new(),
        },
        SetExpr::Empty => PropExpr::False,
        SetExpr::Universe => PropExpr::True,
        SetExpr::Union(l, r) => PropExpr::or(set_expr_to_prop(l)?, set_expr_to_prop(r)?),
        SetExpr::Inter(l, r) => PropExpr::and(set_expr_to_prop(l)?, set_expr_to_prop(r)?),
        SetExpr::Diff(l, r) => PropExpr::and(
            set_expr_to_prop(l)?,
            PropExpr::not(set_expr_to_prop(r)?),
        ),
        SetExpr::SymDiff(l, r) => {
            let l = set_expr_to_prop(l)?;
            let r = set_expr_to_prop(r)?;
            PropExpr::or(
                PropExpr::and(l.clone(), PropExpr::not(r.clone())),
                PropExpr::and(r, PropExpr::not(l)),
            )
        }
        SetExpr::Complement(inner) => PropExpr::not(set_expr_to_prop(inner)?),
        SetExpr::Product(_, _) => return Err(BridgeError::ProductsPresent),
        SetExpr::FamUnion {
            index,
            index_set,
            body,
        } => PropExpr::exists(index, index_set, set_expr_to_prop(body)?),
        SetExpr::FamInter {
            index,
            index_set,
            body,
        } => PropExpr::forall(index, index_set, set_expr_to_prop(body)?),
        SetExpr::FamVar { name, indices } => PropExpr::Atom {
            name: atom_name_for_set(name),
            indices: indices.clone(),
        },
    })
}

/// Translate a set equality or inclusion into a formula: equality becomes
/// `<->`, inclusion becomes `->`.
pub fn set_to_logic(s: &Statement) -> Result<PropExpr, BridgeError> {
    match s {
        Statement::SetEq(l, r) => Ok(PropExpr::iff(set_expr_to_prop(l)?, set_expr_to_prop(r)?)),
        Statement::SetIncl(l, r) => Ok(PropExpr::implies(
            set_expr_to_prop(l)?,
            set_expr_to_prop(r)?,
        )),
        Statement::Taut(_) | Statement::PropEquiv(_, _) => Err(BridgeError::NotSetStatement),
    }
}

fn prop_to_set_expr(p: &PropExpr) -> SetExpr {
    match p {
        PropExpr::Atom { name, indices } => {
            let name = set_name_for_atom(name);
            if indices.is_empty() {
                SetExpr::Var(name)
            } else {
                SetExpr::FamVar {
                    name,
                    indices: indices.clone(),
                }
            }
        }
        PropExpr::True => SetExpr::Universe,
        PropExpr::False => SetExpr::Empty,
        PropExpr::Or(l, r) => SetExpr::union(prop_to_set_expr(l), prop_to_set_expr(r)),
        PropExpr::And(l, r) => SetExpr::inter(prop_to_set_expr(l), prop_to_set_expr(r)),
        PropExpr::Not(e) => SetExpr::complement(prop_to_set_expr(e)),
        // p -> q is ~p \/ q, so it becomes P' | Q
        PropExpr::Implies(l, r) => SetExpr::union(
            SetExpr::complement(prop_to_set_expr(l)),
            prop_to_set_expr(r),
        ),
        // a nested p <-> q is (p -> q) /\ (q -> p)
        PropExpr::Iff(l, r) => {
            let ls = prop_to_set_expr(l);
            let rs = prop_to_set_expr(r);
            SetExpr::inter(
                SetExpr::union(SetExpr::complement(ls.clone()), rs.clone()),
                SetExpr::union(SetExpr::complement(rs), ls),
            )
        }
        PropExpr::Forall {
            index,
            index_set,
            body,
        } => SetExpr::fam_inter(index, index_set, prop_to_set_expr(body)),
        PropExpr::Exists {
            index,
            index_set,
            body,
        } => SetExpr::fam_union(index, index_set, prop_to_set_expr(body)),
    }
}

/// Translate a formula into a set statement. A top-level `<->` becomes an
/// equality of the two translated sides; any other formula `f` becomes
/// `translation(f) = 1` — "f is a tautology" means its translation is the
/// whole universe in every extreme case.
pub fn logic_to_set(p: &PropExpr) -> Statement {
    match p {
        PropExpr::Iff(l, r) => Statement::SetEq(prop_to_set_expr(l), prop_to_set_expr(r)),
        _ => Statement::SetEq(prop_to_set_expr(p), SetExpr::Universe),
    }
}

/// Rewrite a set-world witness back into atom language so it directly
/// falsifies the original formula.
fn witness_to_atoms(mut w: Witness, equivalence: bool) -> Witness {
    let rename = |key: &crate::ast::SymbolKey| crate::ast::SymbolKey {
        name: atom_name_for_set(&key.name),
        indices: key.indices.clone(),
    };
    w.model.extents = w
        .model
        .extents
        .iter()
        .map(|(k, &v)| (rename(k), v))
        .collect();
    if let Some(a) = w.assignment.take() {
        let values: std::collections::BTreeMap<_, _> =
            a.values.iter().map(|(k, &v)| (rename(k), v)).collect();
        w.assignment = Some(crate::ast::ExtremeAssignment { values });
    }
    let parts: Vec<String> = w
        .model
        .extents
        .iter()
        .map(|(k, &mask)| {
            if k.indices.is_empty() {
                format!("{}={}", k.name, (mask != 0) as u8)
            } else {
                let ix: Vec<String> = k.indices.iter().map(|i| format!("{}", i + 1)).collect();
                format!("{}[{}]={}", k.name, ix.join(","), (mask != 0) as u8)
            }
        })
        .collect();
    let sizes: Vec<String> = w
        .model
        .index_set_sizes
        .iter()
        .map(|(name, size)| format!("|{name}|={size}"))
        .collect();
    let prefix = if sizes.is_empty() {
        String::new()
    } else {
        format!("{} with ", sizes.join(", "))
    };
    w.note = if equivalence {
        format!("{prefix}sides disagree under {}", parts.join(", "))
    } else {
        format!("{prefix}formula is false under {}", parts.join(", "))
    };
    w
}

fn decide_set_statement(s: &Statement, opts: &DecideOptions) -> Result<Verdict, BridgeError> {
    if s.contains_family() {
        Ok(decide_indexed(s, opts)?)
    } else {
        Ok(decide_flat(s, opts)?)
    }
}

/// Decide whether a formula is a tautology by deciding its set
/// translation with the extremes engine.
pub fn decide_taut(p: &PropExpr, opts: &DecideOptions) -> Result<Verdict, BridgeError> {
    let s = logic_to_set(p);
    let verdict = decide_set_statement(&s, opts)?;
    Ok(match verdict {
        Verdict::Invalid { witness } => Verdict::Invalid {
            witness: witness_to_atoms(witness, false),
        },
        other => other,
    })
}

/// Decide whether two formulas are equivalent: translate both sides and
/// decide the resulting set equality.
pub fn decide_prop_equiv(
    l: &PropExpr,
    r: &PropExpr,
    opts: &DecideOptions,
) -> Result<Verdict, BridgeError> {
    let s = Statement::SetEq(prop_to_set_expr(l), prop_to_set_expr(r));
    let verdict = decide_set_statement(&s, opts)?;
    Ok(match verdict {
        Verdict::Invalid { witness } => Verdict::Invalid {
            witness: witness_to_atoms(witness, true),
        },
        other => other,
    })
}
