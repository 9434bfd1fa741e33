//! The transformation calculus: intersect-with, union-with,
//! complementation, identity, and their compositions.
//!
//! Transformations are represented syntactically and compared
//! extensionally: two transformations are equal exactly when applying
//! both to a fresh variable yields identically equal sets, which the
//! extremes engine decides.

use crate::ast::{free_symbols, SetExpr, Statement, Verdict};
use crate::extremes::{decide_flat, DecideOptions, EngineError};

/// A set transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformExpr {
    /// `X -> X`
    Id,
    /// `X -> A & X`
    IntersectWith(SetExpr),
    /// `X -> A | X`
    UnionWith(SetExpr),
    /// `X -> X'`
    Comp,
    /// `X -> outer(inner(X))`
    Compose(Box<TransformExpr>, Box<TransformExpr>),
}

impl TransformExpr {
    pub fn intersect_with(a: SetExpr) -> TransformExpr {
        TransformExpr::IntersectWith(a)
    }

    pub fn union_with(a: SetExpr) -> TransformExpr {
        TransformExpr::UnionWith(a)
    }

    pub fn compose(outer: TransformExpr, inner: TransformExpr) -> TransformExpr {
        TransformExpr::Compose(Box::new(outer), Box::new(inner))
    }

    /// `t.squared()` is `t` composed with itself.
    pub fn squared(&self) -> TransformExpr {
        TransformExpr::compose(self.clone(), self.clone())
    }

    fn parameters(&self, into: &mut Vec<SetExpr>) {
        match self {
            TransformExpr::Id | TransformExpr::Comp => {}
            TransformExpr::IntersectWith(a) | TransformExpr::UnionWith(a) => into.push(a.clone()),
            TransformExpr::Compose(outer, inner) => {
                outer.parameters(into);
                inner.parameters(into);
            }
        }
    }
}

/// Apply a transformation to a set expression by structural substitution.
pub fn apply(t: &TransformExpr, x: &SetExpr) -> SetExpr {
    match t {
        TransformExpr::Id => x.clone(),
        TransformExpr::IntersectWith(a) => SetExpr::inter(a.clone(), x.clone()),
        TransformExpr::UnionWith(a) => SetExpr::union(a.clone(), x.clone()),
        TransformExpr::Comp => SetExpr::complement(x.clone()),
        TransformExpr::Compose(outer, inner) => apply(outer, &apply(inner, x)),
    }
}

/// A variable name different from every variable in the given expressions.
fn fresh_var(used_in: &[SetExpr], preferred: &[&str]) -> SetExpr {
    let mut probe = Statement::SetEq(SetExpr::Empty, SetExpr::Empty);
    if let Statement::SetEq(l, _) = &mut probe {
        *l = used_in
            .iter()
            .cloned()
            .fold(SetExpr::Empty, SetExpr::union);
    }
    let used = free_symbols(&probe).vars;
    for name in preferred {
        if !used.contains(&name.to_string()) {
            return SetExpr::var(name);
        }
    }
    let mut i = 0;
    loop {
        let name = format!("X{i}");
        if !used.contains(&name) {
            return SetExpr::var(&name);
        }
        i += 1;
    }
}

/// Decide whether two transformations are extensionally equal: apply both
/// to a fresh variable and decide the resulting equality over all extreme
/// assignments of the fresh variable and every parameter variable.
pub fn transform_equal(
    t: &TransformExpr,
    s: &TransformExpr,
    opts: &DecideOptions,
) -> Result<Verdict, EngineError> {
    let mut params = Vec::new();
    t.parameters(&mut params);
    s.parameters(&mut params);
    let x = fresh_var(&params, &["X", "Y", "Z"]);
    decide_flat(&Statement::SetEq(apply(t, &x), apply(s, &x)), opts)
}

/// The two binary laws a transformation can preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Union,
    Inter,
}

/// Decide whether `t(X op Y) = t(X) op t(Y)` for the chosen law, with
/// fresh variables `X` and `Y`.
pub fn preserves(t: &TransformExpr, law: Law, opts: &DecideOptions) -> Result<Verdict, EngineError> {
    let mut params = Vec::new();
    t.parameters(&mut params);
    let x = fresh_var(&params, &["X", "Y", "Z"]);
    let y = fresh_var(&[params.clone(), vec![x.clone()]].concat(), &["Y", "Z", "W"]);
    let combine = |l: SetExpr, r: SetExpr| match law {
        Law::Union => SetExpr::union(l, r),
        Law::Inter => SetExpr::inter(l, r),
    };
    let lhs = apply(t, &combine(x.clone(), y.clone()));
    let rhs = combine(apply(t, &x), apply(t, &y));
    decide_flat(&Statement::SetEq(lhs, rhs), opts)
}
