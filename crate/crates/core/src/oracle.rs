//! Ground-truth evaluators and the brute-force oracle.
//!
//! Three evaluators live here: the two-valued extreme-case table
//! ([`eval_extreme`]), the pointwise finite-model evaluator
//! ([`eval_model`]), and the truth-functional formula evaluator
//! ([`eval_prop`]). [`check_by_model`] exhaustively searches finite
//! models (or valuations, for logical statements) and is used as an
//! independent check on every fast decision procedure.

use crate::ast::{
    desugar, free_symbols, ExtremeAssignment, FamilySymbol, FiniteModel, Method, PropExpr,
    SetExpr, Statement, SymbolKey, Symbols, Verdict, Witness,
};
use crate::par::first_hit;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no extension for symbol `{0}`")]
    MissingExtent(String),
    #[error("no valuation for atom `{0}`")]
    MissingValuation(String),
    #[error("evaluator does not handle {0}; desugar or route to a product-aware decider")]
    UnsupportedNode(&'static str),
    #[error("index set `{0}` has no size in this model")]
    MissingIndexSet(String),
    #[error("index variable `{0}` is unbound")]
    UnboundIndex(String),
    #[error("point sets and pair sets may not be combined")]
    MixedRank,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {needed} models requested, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("universe size {requested} exceeds the supported maximum of {cap}")]
    UniverseTooLarge { requested: usize, cap: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

// extensions are u32 bitmasks: up to 32 points, or up to 5 when pair
// sets (n*n bits) are involved
const MAX_UNIVERSE: usize = 16;
const MAX_UNIVERSE_WITH_PRODUCTS: usize = 5;

/// Search limits for [`check_by_model`]. Index sets range over sizes
/// `1..=max_index_set`; the universe is always nonempty.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_universe: usize,
    pub max_index_set: usize,
    /// Ceiling on the total number of models enumerated in one call.
    pub model_budget: u64,
    pub jobs: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_universe: 3,
            max_index_set: 3,
            model_budget: 10_000_000,
            jobs: 1,
        }
    }
}

/// Evaluate a desugared, product-free, family-free set expression under
/// an extreme assignment. `false` is the empty set, `true` the universe;
/// union is max, intersection is min, difference is `min(a, 1-b)`.
pub fn eval_extreme(e: &SetExpr, a: &ExtremeAssignment) -> Result<bool, EvalError> {
    match e {
        SetExpr::Var(name) => a
            .get(&SymbolKey::plain(name))
            .ok_or_else(|| EvalError::MissingExtent(name.clone())),
        SetExpr::Empty => Ok(false),
        SetExpr::Universe => Ok(true),
        SetExpr::Union(l, r) => Ok(eval_extreme(l, a)? | eval_extreme(r, a)?),
        SetExpr::Inter(l, r) => Ok(eval_extreme(l, a)? & eval_extreme(r, a)?),
        SetExpr::Diff(l, r) => Ok(eval_extreme(l, a)? & !eval_extreme(r, a)?),
        SetExpr::SymDiff(_, _) => Err(EvalError::UnsupportedNode("symmetric difference")),
        SetExpr::Complement(_) => Err(EvalError::UnsupportedNode("complement")),
        SetExpr::Product(_, _) => Err(EvalError::UnsupportedNode("cartesian products")),
        SetExpr::FamUnion { .. } | SetExpr::FamInter { .. } | SetExpr::FamVar { .. } => {
            Err(EvalError::UnsupportedNode("indexed families"))
        }
    }
}

/// A set of points (rank 1) or of point pairs (rank 2). Pair `(a, b)` is
/// bit `a * n + b` where `n` is the universe size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    Points(u32),
    Pairs(u32),
}

impl Extent {
    fn combine(self, other: Extent, op: impl Fn(u32, u32) -> u32) -> Result<Extent, EvalError> {
        match (self, other) {
            (Extent::Points(a), Extent::Points(b)) => Ok(Extent::Points(op(a, b))),
            (Extent::Pairs(a), Extent::Pairs(b)) => Ok(Extent::Pairs(op(a, b))),
            _ => Err(EvalError::MixedRank),
        }
    }
}

struct IndexEnv(Vec<(String, usize)>);

impl IndexEnv {
    fn resolve(&self, index: &str) -> Result<usize, EvalError> {
        self.0
            .iter()
            .rev()
            .find(|(v, _)| v == index)
            .map(|(_, i)| *i)
            .ok_or_else(|| EvalError::UnboundIndex(index.to_string()))
    }
}

fn eval_model_in(e: &SetExpr, m: &FiniteModel, env: &mut IndexEnv) -> Result<Extent, EvalError> {
    match e {
        SetExpr::Var(name) => m
            .extents
            .get(&SymbolKey::plain(name))
            .map(|&mask| Extent::Points(mask))
            .ok_or_else(|| EvalError::MissingExtent(name.clone())),
        SetExpr::Empty => Ok(Extent::Points(0)),
        SetExpr::Universe => Ok(Extent::Points(m.full_mask())),
        SetExpr::Union(l, r) => {
            eval_model_in(l, m, env)?.combine(eval_model_in(r, m, env)?, |a, b| a | b)
        }
        SetExpr::Inter(l, r) => {
            eval_model_in(l, m, env)?.combine(eval_model_in(r, m, env)?, |a, b| a & b)
        }
        SetExpr::Diff(l, r) => {
            eval_model_in(l, m, env)?.combine(eval_model_in(r, m, env)?, |a, b| a & !b)
        }
        SetExpr::SymDiff(_, _) => Err(EvalError::UnsupportedNode("symmetric difference")),
        SetExpr::Complement(_) => Err(EvalError::UnsupportedNode("complement")),
        SetExpr::Product(l, r) => {
            let lv = eval_model_in(l, m, env)?;
            let rv = eval_model_in(r, m, env)?;
            match (lv, rv) {
                (Extent::Points(a), Extent::Points(b)) => {
                    let n = m.universe_size;
                    let mut pairs = 0u32;
                    for i in 0..n {
                        if a & (1 << i) != 0 {
                            for j in 0..n {
                                if b & (1 << j) != 0 {
                                    pairs |= 1 << (i * n + j);
                                }
                            }
                        }
                    }
                    Ok(Extent::Pairs(pairs))
                }
                _ => Err(EvalError::UnsupportedNode("nested cartesian products")),
            }
        }
        SetExpr::FamUnion {
            index,
            index_set,
            body,
        } => {
            let size = *m
                .index_set_sizes
                .get(index_set)
                .ok_or_else(|| EvalError::MissingIndexSet(index_set.clone()))?;
            // union over the empty family is the empty set
            let mut acc = Extent::Points(0);
            for i in 0..size {
                env.0.push((index.clone(), i));
                let v = eval_model_in(body, m, env);
                env.0.pop();
                let v = v?;
                acc = if i == 0 { v } else { acc.combine(v, |a, b| a | b)? };
            }
            Ok(acc)
        }
        SetExpr::FamInter {
            index,
            index_set,
            body,
        } => {
            let size = *m
                .index_set_sizes
                .get(index_set)
                .ok_or_else(|| EvalError::MissingIndexSet(index_set.clone()))?;
            // intersection over the empty family is the whole universe
            let mut acc = Extent::Points(m.full_mask());
            for i in 0..size {
                env.0.push((index.clone(), i));
                let v = eval_model_in(body, m, env);
                env.0.pop();
                let v = v?;
                acc = if i == 0 { v } else { acc.combine(v, |a, b| a & b)? };
            }
            Ok(acc)
        }
        SetExpr::FamVar { name, indices } => {
            let resolved: Result<Vec<usize>, EvalError> =
                indices.iter().map(|ix| env.resolve(ix)).collect();
            let key = SymbolKey::instance(name, resolved?);
            m.extents
                .get(&key)
                .map(|&mask| Extent::Points(mask))
                .ok_or_else(|| EvalError::MissingExtent(format!("{name}{:?}", indices)))
        }
    }
}

/// Pointwise evaluation of a desugared set expression in a finite model.
pub fn eval_model(e: &SetExpr, m: &FiniteModel) -> Result<Extent, EvalError> {
    eval_model_in(e, m, &mut IndexEnv(Vec::new()))
}

/// Truth valuation of atoms (and atom instances) by symbol key.
pub type Valuation = BTreeMap<SymbolKey, bool>;

fn eval_prop_in(
    p: &PropExpr,
    truth: &Valuation,
    sizes: &BTreeMap<String, usize>,
    env: &mut IndexEnv,
) -> Result<bool, EvalError> {
    match p {
        PropExpr::Atom { name, indices } => {
            let resolved: Result<Vec<usize>, EvalError> =
                indices.iter().map(|ix| env.resolve(ix)).collect();
            let key = SymbolKey::instance(name, resolved?);
            truth
                .get(&key)
                .copied()
                .ok_or_else(|| EvalError::MissingValuation(name.clone()))
        }
        PropExpr::True => Ok(true),
        PropExpr::False => Ok(false),
        PropExpr::Or(l, r) => Ok(eval_prop_in(l, truth, sizes, env)? | eval_prop_in(r, truth, sizes, env)?),
        PropExpr::And(l, r) => Ok(eval_prop_in(l, truth, sizes, env)? & eval_prop_in(r, truth, sizes, env)?),
        PropExpr::Not(e) => Ok(!eval_prop_in(e, truth, sizes, env)?),
        PropExpr::Implies(l, r) => {
            Ok(!eval_prop_in(l, truth, sizes, env)? | eval_prop_in(r, truth, sizes, env)?)
        }
        PropExpr::Iff(l, r) => {
            Ok(eval_prop_in(l, truth, sizes, env)? == eval_prop_in(r, truth, sizes, env)?)
        }
        PropExpr::Forall {
            index,
            index_set,
            body,
        } => {
            let size = *sizes
                .get(index_set)
                .ok_or_else(|| EvalError::MissingIndexSet(index_set.clone()))?;
            // conjunction over all instances; empty conjunction is true
            for i in 0..size {
                env.0.push((index.clone(), i));
                let v = eval_prop_in(body, truth, sizes, env);
                env.0.pop();
                if !v? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        PropExpr::Exists {
            index,
            index_set,
            body,
        } => {
            let size = *sizes
                .get(index_set)
                .ok_or_else(|| EvalError::MissingIndexSet(index_set.clone()))?;
            // disjunction over all instances; empty disjunction is false
            for i in 0..size {
                env.0.push((index.clone(), i));
                let v = eval_prop_in(body, truth, sizes, env);
                env.0.pop();
                if v? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Truth-functional evaluation; quantifiers expand over the concrete
/// index-set sizes (universal = conjunction, existential = disjunction).
pub fn eval_prop(
    p: &PropExpr,
    truth: &Valuation,
    sizes: &BTreeMap<String, usize>,
) -> Result<bool, EvalError> {
    eval_prop_in(p, truth, sizes, &mut IndexEnv(Vec::new()))
}

/// Syntactic rank of a desugared expression: 1 for point sets, 2 for
/// pair sets. Errors when ranks are mixed under one operator.
fn expr_rank(e: &SetExpr) -> Result<u8, EvalError> {
    match e {
        SetExpr::Var(_) | SetExpr::Empty | SetExpr::Universe | SetExpr::FamVar { .. } => Ok(1),
        SetExpr::Product(l, r) => {
            if expr_rank(l)? != 1 || expr_rank(r)? != 1 {
                return Err(EvalError::UnsupportedNode("nested cartesian products"));
            }
            Ok(2)
        }
        SetExpr::Union(l, r) | SetExpr::Inter(l, r) | SetExpr::Diff(l, r) | SetExpr::SymDiff(l, r) => {
            let lr = expr_rank(l)?;
            if lr != expr_rank(r)? {
                Err(EvalError::MixedRank)
            } else {
                Ok(lr)
            }
        }
        SetExpr::Complement(inner) => expr_rank(inner),
        SetExpr::FamUnion { body, .. } | SetExpr::FamInter { body, .. } => {
            let r = expr_rank(body)?;
            if r != 1 {
                Err(EvalError::UnsupportedNode("products inside indexed families"))
            } else {
                Ok(1)
            }
        }
    }
}

/// All sizes assignments for the named index sets, each ranging over
/// `1..=max`, in lexicographic order. Yields one empty assignment when
/// there are no index sets, and nothing when `max` is 0.
pub(crate) fn size_combos(names: &[String], max: usize) -> Vec<BTreeMap<String, usize>> {
    let mut out = Vec::new();
    let mut current = vec![1usize; names.len()];
    if names.is_empty() {
        out.push(BTreeMap::new());
        return out;
    }
    if max == 0 {
        return out;
    }
    loop {
        out.push(
            names
                .iter()
                .cloned()
                .zip(current.iter().copied())
                .collect(),
        );
        let mut pos = names.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < max {
                current[pos] += 1;
                for c in current.iter_mut().skip(pos + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// Expand families into concrete instances for the given sizes and merge
/// them with the plain variables, sorted.
pub(crate) fn symbol_keys(syms: &Symbols, sizes: &BTreeMap<String, usize>) -> Vec<SymbolKey> {
    let mut keys: Vec<SymbolKey> = syms.vars.iter().map(|v| SymbolKey::plain(v)).collect();
    for fam in &syms.families {
        keys.extend(family_instances(fam, sizes));
    }
    keys.sort();
    keys
}

pub(crate) fn family_instances(
    fam: &FamilySymbol,
    sizes: &BTreeMap<String, usize>,
) -> Vec<SymbolKey> {
    let dims: Vec<usize> = fam
        .index_sets
        .iter()
        .map(|s| sizes.get(s).copied().unwrap_or(0))
        .collect();
    match dims.as_slice() {
        [a] => (0..*a).map(|i| SymbolKey::instance(&fam.name, vec![i])).collect(),
        [a, b] => {
            let mut keys = Vec::with_capacity(a * b);
            for i in 0..*a {
                for j in 0..*b {
                    keys.push(SymbolKey::instance(&fam.name, vec![i, j]));
                }
            }
            keys
        }
        _ => Vec::new(),
    }
}

/// Decode assignment counter `v` into one bit per symbol. The first
/// symbol occupies the most significant position, so counting up walks
/// the assignments in lexicographic order with 0 (empty) first.
pub(crate) fn decode_bits(v: u64, count: usize) -> Vec<bool> {
    (0..count).map(|i| v >> (count - 1 - i) & 1 == 1).collect()
}

fn point_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn render_points(mask: u32, names: &[String]) -> String {
    let members: Vec<&str> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, s)| s.as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

fn render_pairs(mask: u32, names: &[String]) -> String {
    let n = names.len();
    let mut members = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if mask & (1 << (i * n + j)) != 0 {
                members.push(format!("({},{})", names[i], names[j]));
            }
        }
    }
    format!("{{{}}}", members.join(","))
}

fn render_extent(e: Extent, names: &[String]) -> String {
    match e {
        Extent::Points(mask) => render_points(mask, names),
        Extent::Pairs(mask) => render_pairs(mask, names),
    }
}

fn assignment_from_model(model: &FiniteModel) -> Option<ExtremeAssignment> {
    if model.universe_size != 1 {
        return None;
    }
    let mut a = ExtremeAssignment::default();
    for (key, &mask) in &model.extents {
        a.values.insert(key.clone(), mask != 0);
    }
    Some(a)
}

struct SearchSpace {
    keys: Vec<SymbolKey>,
    universe_size: usize,
    sizes: BTreeMap<String, usize>,
}

impl SearchSpace {
    fn bits(&self) -> u32 {
        (self.keys.len() * self.universe_size) as u32
    }

    fn model_for(&self, v: u64) -> FiniteModel {
        let n = self.universe_size;
        let bits = self.bits() as usize;
        let mut extents = BTreeMap::new();
        for (i, key) in self.keys.iter().enumerate() {
            let shift = bits - (i + 1) * n;
            let mask = ((v >> shift) as u32) & ((1u32 << n) - 1);
            extents.insert(key.clone(), mask);
        }
        FiniteModel {
            universe_size: n,
            extents,
            index_set_sizes: self.sizes.clone(),
        }
    }
}

fn check_set_eq(
    l: &SetExpr,
    r: &SetExpr,
    syms: &Symbols,
    limits: &OracleLimits,
) -> Result<Verdict, OracleError> {
    expr_rank(l)?;
    if expr_rank(l)? != expr_rank(r)? {
        return Err(OracleError::Eval(EvalError::MixedRank));
    }
    let cap = if l.contains_product() || r.contains_product() {
        MAX_UNIVERSE_WITH_PRODUCTS
    } else {
        MAX_UNIVERSE
    };
    if limits.max_universe > cap {
        return Err(OracleError::UniverseTooLarge {
            requested: limits.max_universe,
            cap,
        });
    }
    let mut spaces = Vec::new();
    let mut total: u64 = 0;
    for n in 1..=limits.max_universe {
        for sizes in size_combos(&syms.index_sets, limits.max_index_set) {
            let keys = symbol_keys(syms, &sizes);
            let space = SearchSpace {
                keys,
                universe_size: n,
                sizes,
            };
            let bits = space.bits();
            if bits > 62 {
                return Err(OracleError::BudgetExceeded {
                    needed: u64::MAX,
                    budget: limits.model_budget,
                });
            }
            total = total.saturating_add(1u64 << bits);
            spaces.push(space);
        }
    }
    if total > limits.model_budget {
        return Err(OracleError::BudgetExceeded {
            needed: total,
            budget: limits.model_budget,
        });
    }

    let mut checked: u64 = 0;
    for space in &spaces {
        let count = 1u64 << space.bits();
        let hit = first_hit(count, limits.jobs, |v| {
            let model = space.model_for(v);
            let lv = match eval_model(l, &model) {
                Ok(x) => x,
                Err(e) => return Some(Err(e)),
            };
            let rv = match eval_model(r, &model) {
                Ok(x) => x,
                Err(e) => return Some(Err(e)),
            };
            if lv != rv {
                Some(Ok((model, lv, rv)))
            } else {
                None
            }
        });
        match hit {
            Some((_, Ok((model, lv, rv)))) => {
                let names = point_names(space.universe_size);
                let note = format!(
                    "left = {}, right = {}",
                    render_extent(lv, &names),
                    render_extent(rv, &names)
                );
                return Ok(Verdict::Invalid {
                    witness: Witness {
                        assignment: assignment_from_model(&model),
                        model,
                        point_names: names,
                        note,
                    },
                });
            }
            Some((_, Err(e))) => return Err(OracleError::Eval(e)),
            None => checked += count,
        }
    }
    Ok(Verdict::Valid {
        method: Method::TruthTable,
        cases_checked: checked,
    })
}

fn check_logical(
    sides: (&PropExpr, Option<&PropExpr>),
    syms: &Symbols,
    limits: &OracleLimits,
) -> Result<Verdict, OracleError> {
    let (first, second) = sides;
    let mut total: u64 = 0;
    let mut spaces = Vec::new();
    for sizes in size_combos(&syms.index_sets, limits.max_index_set) {
        let keys = symbol_keys(syms, &sizes);
        if keys.len() > 62 {
            return Err(OracleError::BudgetExceeded {
                needed: u64::MAX,
                budget: limits.model_budget,
            });
        }
        total = total.saturating_add(1u64 << keys.len());
        spaces.push((keys, sizes));
    }
    if total > limits.model_budget {
        return Err(OracleError::BudgetExceeded {
            needed: total,
            budget: limits.model_budget,
        });
    }

    let mut checked: u64 = 0;
    for (keys, sizes) in &spaces {
        let count = 1u64 << keys.len();
        let hit = first_hit(count, limits.jobs, |v| {
            let bits = decode_bits(v, keys.len());
            let truth: Valuation = keys.iter().cloned().zip(bits.iter().copied()).collect();
            let fv = match eval_prop(first, &truth, sizes) {
                Ok(x) => x,
                Err(e) => return Some(Err(e)),
            };
            let failed = match second {
                None => !fv,
                Some(s) => match eval_prop(s, &truth, sizes) {
                    Ok(sv) => fv != sv,
                    Err(e) => return Some(Err(e)),
                },
            };
            if failed {
                Some(Ok(truth))
            } else {
                None
            }
        });
        match hit {
            Some((_, Ok(truth))) => {
                let mut extents = BTreeMap::new();
                let mut assignment = ExtremeAssignment::default();
                for (key, &b) in &truth {
                    extents.insert(key.clone(), b as u32);
                    assignment.values.insert(key.clone(), b);
                }
                let parts: Vec<String> = truth
                    .iter()
                    .map(|(k, &b)| format!("{}={}", render_symbol(k, sizes), b as u8))
                    .collect();
                let note = match second {
                    None => format!("formula is false under {}", parts.join(", ")),
                    Some(_) => format!("sides disagree under {}", parts.join(", ")),
                };
                return Ok(Verdict::Invalid {
                    witness: Witness {
                        assignment: Some(assignment),
                        model: FiniteModel {
                            universe_size: 1,
                            extents,
                            index_set_sizes: sizes.clone(),
                        },
                        point_names: point_names(1),
                        note,
                    },
                });
            }
            Some((_, Err(e))) => return Err(OracleError::Eval(e)),
            None => checked += count,
        }
    }
    Ok(Verdict::Valid {
        method: Method::TruthTable,
        cases_checked: checked,
    })
}

fn render_symbol(key: &SymbolKey, _sizes: &BTreeMap<String, usize>) -> String {
    if key.indices.is_empty() {
        key.name.clone()
    } else {
        let parts: Vec<String> = key.indices.iter().map(|i| format!("{}", i + 1)).collect();
        format!("{}[{}]", key.name, parts.join(","))
    }
}

/// Brute-force oracle: enumerate every finite model (universe sizes
/// `1..=max_universe`, index-set sizes `1..=max_index_set`, all symbol
/// extensions) for set statements, or every valuation for logical
/// statements, in a fixed deterministic order. Returns `Invalid` with the
/// first falsifying model, `Valid` with the number of models checked, or
/// an explicit budget error — never a silent pass.
pub fn check_by_model(s: &Statement, limits: &OracleLimits) -> Result<Verdict, OracleError> {
    let s = desugar(s);
    let syms = free_symbols(&s);
    match &s {
        Statement::SetEq(l, r) => check_set_eq(l, r, &syms, limits),
        Statement::SetIncl(_, _) => unreachable!("inclusion removed by desugaring"),
        Statement::Taut(p) => check_logical((p, None), &syms, limits),
        Statement::PropEquiv(l, r) => check_logical((l, Some(r)), &syms, limits),
    }
}

/// Re-evaluate a statement under a witness model and report whether the
/// model genuinely falsifies it. Logical statements read each atom as
/// "its extension is nonempty".
pub fn falsifies(s: &Statement, w: &Witness) -> Result<bool, EvalError> {
    let s = desugar(s);
    match &s {
        Statement::SetEq(l, r) => {
            Ok(eval_model(l, &w.model)? != eval_model(r, &w.model)?)
        }
        Statement::SetIncl(_, _) => unreachable!("inclusion removed by desugaring"),
        Statement::Taut(p) => {
            let truth = model_valuation(&w.model);
            Ok(!eval_prop(p, &truth, &w.model.index_set_sizes)?)
        }
        Statement::PropEquiv(l, r) => {
            let truth = model_valuation(&w.model);
            Ok(eval_prop(l, &truth, &w.model.index_set_sizes)?
                != eval_prop(r, &truth, &w.model.index_set_sizes)?)
        }
    }
}

fn model_valuation(model: &FiniteModel) -> Valuation {
    model
        .extents
        .iter()
        .map(|(key, &mask)| (key.clone(), mask != 0))
        .collect()
}
