//! Term languages for set expressions, logical expressions, and the
//! statements the deciders operate on, plus structural utilities
//! (symbol collection, well-formedness, desugaring).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A set-valued term over a universe.
///
/// `Empty` and `Universe` are the constants written `0` and `1` in the
/// surface syntax. Indexed unions/intersections bind an index variable
/// ranging over a named index set; `FamVar` is an occurrence of an
/// indexed family such as `A[s]` or `P[s,t]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Var(String),
    Empty,
    Universe,
    Union(Box<SetExpr>, Box<SetExpr>),
    Inter(Box<SetExpr>, Box<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
    SymDiff(Box<SetExpr>, Box<SetExpr>),
    Complement(Box<SetExpr>),
    Product(Box<SetExpr>, Box<SetExpr>),
    FamUnion {
        index: String,
        index_set: String,
        body: Box<SetExpr>,
    },
    FamInter {
        index: String,
        index_set: String,
        body: Box<SetExpr>,
    },
    FamVar {
        name: String,
        indices: Vec<String>,
    },
}

impl SetExpr {
    pub fn var(name: &str) -> SetExpr {
        SetExpr::Var(name.to_string())
    }

    pub fn union(l: SetExpr, r: SetExpr) -> SetExpr {
        SetExpr::Union(Box::new(l), Box::new(r))
    }

    pub fn inter(l: SetExpr, r: SetExpr) -> SetExpr {
        SetExpr::Inter(Box::new(l), Box::new(r))
    }

    pub fn diff(l: SetExpr, r: SetExpr) -> SetExpr {
        SetExpr::Diff(Box::new(l), Box::new(r))
    }

    pub fn sym_diff(l: SetExpr, r: SetExpr) -> SetExpr {
        SetExpr::SymDiff(Box::new(l), Box::new(r))
    }

    pub fn complement(e: SetExpr) -> SetExpr {
        SetExpr::Complement(Box::new(e))
    }

    pub fn product(l: SetExpr, r: SetExpr) -> SetExpr {
        SetExpr::Product(Box::new(l), Box::new(r))
    }

    pub fn fam_union(index: &str, index_set: &str, body: SetExpr) -> SetExpr {
        SetExpr::FamUnion {
            index: index.to_string(),
            index_set: index_set.to_string(),
            body: Box::new(body),
        }
    }

    pub fn fam_inter(index: &str, index_set: &str, body: SetExpr) -> SetExpr {
        SetExpr::FamInter {
            index: index.to_string(),
            index_set: index_set.to_string(),
            body: Box::new(body),
        }
    }

    pub fn fam_var(name: &str, indices: &[&str]) -> SetExpr {
        SetExpr::FamVar {
            name: name.to_string(),
            indices: indices.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Number of nodes in the term tree.
    pub fn node_count(&self) -> usize {
        match self {
            SetExpr::Var(_) | SetExpr::Empty | SetExpr::Universe | SetExpr::FamVar { .. } => 1,
            SetExpr::Union(l, r)
            | SetExpr::Inter(l, r)
            | SetExpr::Diff(l, r)
            | SetExpr::SymDiff(l, r)
            | SetExpr::Product(l, r) => 1 + l.node_count() + r.node_count(),
            SetExpr::Complement(e) => 1 + e.node_count(),
            SetExpr::FamUnion { body, .. } | SetExpr::FamInter { body, .. } => {
                1 + body.node_count()
            }
        }
    }

    /// True if a `Product` node occurs anywhere in the term.
    pub fn contains_product(&self) -> bool {
        match self {
            SetExpr::Product(_, _) => true,
            SetExpr::Var(_) | SetExpr::Empty | SetExpr::Universe | SetExpr::FamVar { .. } => false,
            SetExpr::Union(l, r)
            | SetExpr::Inter(l, r)
            | SetExpr::Diff(l, r)
            | SetExpr::SymDiff(l, r) => l.contains_product() || r.contains_product(),
            SetExpr::Complement(e) => e.contains_product(),
            SetExpr::FamUnion { body, .. } | SetExpr::FamInter { body, .. } => {
                body.contains_product()
            }
        }
    }

    /// True if any indexed-family construct occurs anywhere in the term.
    pub fn contains_family(&self) -> bool {
        match self {
            SetExpr::FamVar { .. } | SetExpr::FamUnion { .. } | SetExpr::FamInter { .. } => true,
            SetExpr::Var(_) | SetExpr::Empty | SetExpr::Universe => false,
            SetExpr::Union(l, r)
            | SetExpr::Inter(l, r)
            | SetExpr::Diff(l, r)
            | SetExpr::SymDiff(l, r)
            | SetExpr::Product(l, r) => l.contains_family() || r.contains_family(),
            SetExpr::Complement(e) => e.contains_family(),
        }
    }
}

/// A propositional formula, possibly quantified over index sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PropExpr {
    Atom { name: String, indices: Vec<String> },
    True,
    False,
    Or(Box<PropExpr>, Box<PropExpr>),
    And(Box<PropExpr>, Box<PropExpr>),
    Not(Box<PropExpr>),
    Implies(Box<PropExpr>, Box<PropExpr>),
    Iff(Box<PropExpr>, Box<PropExpr>),
    Forall {
        index: String,
        index_set: String,
        body: Box<PropExpr>,
    },
    Exists {
        index: String,
        index_set: String,
        body: Box<PropExpr>,
    },
}

impl PropExpr {
    pub fn atom(name: &str) -> PropExpr {
        PropExpr::Atom {
            name: name.to_string(),
            indices: Vec::new(),
        }
    }

    pub fn atom_indexed(name: &str, indices: &[&str]) -> PropExpr {
        PropExpr::Atom {
            name: name.to_string(),
            indices: indices.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn or(l: PropExpr, r: PropExpr) -> PropExpr {
        PropExpr::Or(Box::new(l), Box::new(r))
    }

    pub fn and(l: PropExpr, r: PropExpr) -> PropExpr {
        PropExpr::And(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: PropExpr) -> PropExpr {
        PropExpr::Not(Box::new(e))
    }

    pub fn implies(l: PropExpr, r: PropExpr) -> PropExpr {
        PropExpr::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: PropExpr, r: PropExpr) -> PropExpr {
        PropExpr::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(index: &str, index_set: &str, body: PropExpr) -> PropExpr {
        PropExpr::Forall {
            index: index.to_string(),
            index_set: index_set.to_string(),
            body: Box::new(body),
        }
    }

    pub fn exists(index: &str, index_set: &str, body: PropExpr) -> PropExpr {
        PropExpr::Exists {
            index: index.to_string(),
            index_set: index_set.to_string(),
            body: Box::new(body),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            PropExpr::Atom { .. } | PropExpr::True | PropExpr::False => 1,
            PropExpr::Or(l, r)
            | PropExpr::And(l, r)
            | PropExpr::Implies(l, r)
            | PropExpr::Iff(l, r) => 1 + l.node_count() + r.node_count(),
            PropExpr::Not(e) => 1 + e.node_count(),
            PropExpr::Forall { body, .. } | PropExpr::Exists { body, .. } => 1 + body.node_count(),
        }
    }

    /// True if a quantifier occurs anywhere in the formula.
    pub fn contains_quantifier(&self) -> bool {
        match self {
            PropExpr::Forall { .. } | PropExpr::Exists { .. } => true,
            PropExpr::Atom { .. } | PropExpr::True | PropExpr::False => false,
            PropExpr::Or(l, r)
            | PropExpr::And(l, r)
            | PropExpr::Implies(l, r)
            | PropExpr::Iff(l, r) => l.contains_quantifier() || r.contains_quantifier(),
            PropExpr::Not(e) => e.contains_quantifier(),
        }
    }
}

/// A claim to be decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    /// The two set expressions denote the same set in every universe.
    SetEq(SetExpr, SetExpr),
    /// The left set is contained in the right set in every universe.
    SetIncl(SetExpr, SetExpr),
    /// The formula is true under every valuation.
    Taut(PropExpr),
    /// The two formulas have the same truth value under every valuation.
    PropEquiv(PropExpr, PropExpr),
}

impl Statement {
    pub fn node_count(&self) -> usize {
        match self {
            Statement::SetEq(l, r) | Statement::SetIncl(l, r) => l.node_count() + r.node_count(),
            Statement::Taut(p) => p.node_count(),
            Statement::PropEquiv(l, r) => l.node_count() + r.node_count(),
        }
    }

    pub fn contains_product(&self) -> bool {
        match self {
            Statement::SetEq(l, r) | Statement::SetIncl(l, r) => {
                l.contains_product() || r.contains_product()
            }
            Statement::Taut(_) | Statement::PropEquiv(_, _) => false,
        }
    }

    pub fn contains_family(&self) -> bool {
        match self {
            Statement::SetEq(l, r) | Statement::SetIncl(l, r) => {
                l.contains_family() || r.contains_family()
            }
            Statement::Taut(p) => p.contains_quantifier(),
            Statement::PropEquiv(l, r) => l.contains_quantifier() || r.contains_quantifier(),
        }
    }
}

/// Identity of an enumerable symbol: a plain variable (or 0-ary atom),
/// or one concrete instance of an indexed family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolKey {
    pub name: String,
    pub indices: Vec<usize>,
}

impl SymbolKey {
    pub fn plain(name: &str) -> SymbolKey {
        SymbolKey {
            name: name.to_string(),
            indices: Vec::new(),
        }
    }

    pub fn instance(name: &str, indices: Vec<usize>) -> SymbolKey {
        SymbolKey {
            name: name.to_string(),
            indices,
        }
    }
}

/// One extreme case: every plain variable and every family instance is
/// sent to either the empty set (`false`) or the whole universe (`true`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtremeAssignment {
    pub values: BTreeMap<SymbolKey, bool>,
}

impl ExtremeAssignment {
    pub fn get(&self, key: &SymbolKey) -> Option<bool> {
        self.values.get(key).copied()
    }

    pub fn set_var(&mut self, name: &str, value: bool) {
        self.values.insert(SymbolKey::plain(name), value);
    }
}

/// How a Valid verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exhaustive enumeration of extreme assignments.
    Extremes,
    /// Exhaustive valuation of pair-membership atoms over two generic points.
    TwoPoint,
    /// Extreme enumeration over every index-set size up to the monadic
    /// completeness bound.
    MonadicBound,
    /// Brute-force model/valuation search.
    TruthTable,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Extremes => "extremes",
            Method::TwoPoint => "two-point",
            Method::MonadicBound => "monadic-bound",
            Method::TruthTable => "truth-table",
        };
        f.write_str(s)
    }
}

/// Outcome of a decision procedure.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Valid { method: Method, cases_checked: u64 },
    /// All instantiations with index sets of size up to `bound` hold; larger
    /// index sets were not checked (dyadic families have no completeness
    /// bound implemented).
    ValidUpToBound { bound: usize, cases_checked: u64 },
    Invalid { witness: Witness },
}

impl Verdict {
    pub fn is_invalid(&self) -> bool {
        matches!(self, Verdict::Invalid { .. })
    }
}

/// A concrete finite model: a universe of `universe_size` points together
/// with an extension for every symbol and a size for every index set.
///
/// Extensions are bitmasks over the points; bit `i` is point `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiniteModel {
    pub universe_size: usize,
    pub extents: BTreeMap<SymbolKey, u32>,
    pub index_set_sizes: BTreeMap<String, usize>,
}

impl FiniteModel {
    pub fn full_mask(&self) -> u32 {
        if self.universe_size >= 32 {
            u32::MAX
        } else {
            (1u32 << self.universe_size) - 1
        }
    }
}

/// A falsifying example: a finite model under which the statement fails,
/// plus the extreme assignment it came from when the failure was found by
/// extreme-case enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub assignment: Option<ExtremeAssignment>,
    pub model: FiniteModel,
    /// Display names for the model's points, e.g. `x1` or `a`/`b`.
    pub point_names: Vec<String>,
    pub note: String,
}

/// A symbol inventory in deterministic (lexicographic) order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Symbols {
    /// Plain set variables, or 0-ary atoms for logical statements.
    pub vars: Vec<String>,
    /// Indexed family symbols (or indexed atoms), with per-position index sets.
    pub families: Vec<FamilySymbol>,
    /// Index-set names occurring in binders.
    pub index_sets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySymbol {
    pub name: String,
    /// Index set each position ranges over; length is the arity (1 or 2).
    pub index_sets: Vec<String>,
}

impl FamilySymbol {
    pub fn arity(&self) -> usize {
        self.index_sets.len()
    }
}

/// A well-formedness defect. Violations are reported, not thrown.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("index `{0}` is not bound by any enclosing binder")]
    UnboundIndex(String),
    #[error("cartesian products may not be nested")]
    NestedProduct,
    #[error("more than two distinct index variables ({0} found)")]
    TooManyIndexVars(usize),
    #[error("symbol `{0}` is used with inconsistent arities")]
    ArityMismatch(String),
    #[error("family `{name}` has arity {arity}; only arity 1 or 2 is supported")]
    UnsupportedArity { name: String, arity: usize },
    #[error("position {position} of `{name}` ranges over both `{first}` and `{second}`")]
    IndexSetMismatch {
        name: String,
        position: usize,
        first: String,
        second: String,
    },
    #[error("empty identifier")]
    EmptyIdentifier,
}

/// State threaded through the well-formedness walk.
struct WfCheck {
    violations: Vec<Violation>,
    /// Binder stack: index variable -> index set.
    env: Vec<(String, String)>,
    /// All distinct index-variable names seen (bound or used).
    index_vars: BTreeSet<String>,
    /// Symbol name -> arity it was first used with.
    arities: BTreeMap<String, usize>,
    /// (family, position) -> index set it was first used with.
    position_sets: BTreeMap<(String, usize), String>,
}

impl WfCheck {
    fn new() -> Self {
        WfCheck {
            violations: Vec::new(),
            env: Vec::new(),
            index_vars: BTreeSet::new(),
            arities: BTreeMap::new(),
            position_sets: BTreeMap::new(),
        }
    }

    fn lookup(&self, index: &str) -> Option<&str> {
        self.env
            .iter()
            .rev()
            .find(|(v, _)| v == index)
            .map(|(_, s)| s.as_str())
    }

    fn check_name(&mut self, name: &str) {
        if name.is_empty() {
            self.violations.push(Violation::EmptyIdentifier);
        }
    }

    fn record_symbol(&mut self, name: &str, indices: &[String]) {
        self.check_name(name);
        let arity = indices.len();
        match self.arities.get(name) {
            Some(&a) if a != arity => {
                if !self
                    .violations
                    .contains(&Violation::ArityMismatch(name.to_string()))
                {
                    self.violations.push(Violation::ArityMismatch(name.to_string()));
                }
            }
            Some(_) => {}
            None => {
                self.arities.insert(name.to_string(), arity);
            }
        }
        if arity > 2 {
            self.violations.push(Violation::UnsupportedArity {
                name: name.to_string(),
                arity,
            });
        }
        for (position, index) in indices.iter().enumerate() {
            self.index_vars.insert(index.clone());
            match self.lookup(index) {
                None => self
                    .violations
                    .push(Violation::UnboundIndex(index.clone())),
                Some(set) => {
                    let set = set.to_string();
                    match self.position_sets.get(&(name.to_string(), position)) {
                        Some(first) if *first != set => {
                            self.violations.push(Violation::IndexSetMismatch {
                                name: name.to_string(),
                                position,
                                first: first.clone(),
                                second: set,
                            });
                        }
                        Some(_) => {}
                        None => {
                            self.position_sets
                                .insert((name.to_string(), position), set);
                        }
                    }
                }
            }
        }
    }

    fn enter_binder(&mut self, index: &str, index_set: &str) {
        self.check_name(index);
        self.check_name(index_set);
        self.index_vars.insert(index.to_string());
        self.env.push((index.to_string(), index_set.to_string()));
    }

    fn exit_binder(&mut self) {
        self.env.pop();
    }

    fn walk_set(&mut self, e: &SetExpr, inside_product: bool) {
        match e {
            SetExpr::Var(name) => self.record_symbol(name, &[]),
            SetExpr::Empty | SetExpr::Universe => {}
            SetExpr::Union(l, r)
            | SetExpr::Inter(l, r)
            | SetExpr::Diff(l, r)
            | SetExpr::SymDiff(l, r) => {
                self.walk_set(l, inside_product);
                self.walk_set(r, inside_product);
            }
            SetExpr::Complement(inner) => self.walk_set(inner, inside_product),
            SetExpr::Product(l, r) => {
                if inside_product {
                    self.violations.push(Violation::NestedProduct);
                }
                self.walk_set(l, true);
                self.walk_set(r, true);
            }
            SetExpr::FamUnion {
                index,
                index_set,
                body,
            }
            | SetExpr::FamInter {
                index,
                index_set,
                body,
            } => {
                self.enter_binder(index, index_set);
                self.walk_set(body, inside_product);
                self.exit_binder();
            }
            SetExpr::FamVar { name, indices } => self.record_symbol(name, indices),
        }
    }

    fn walk_prop(&mut self, p: &PropExpr) {
        match p {
            PropExpr::Atom { name, indices } => self.record_symbol(name, indices),
            PropExpr::True | PropExpr::False => {}
            PropExpr::Or(l, r)
            | PropExpr::And(l, r)
            | PropExpr::Implies(l, r)
            | PropExpr::Iff(l, r) => {
                self.walk_prop(l);
                self.walk_prop(r);
            }
            PropExpr::Not(e) => self.walk_prop(e),
            PropExpr::Forall {
                index,
                index_set,
                body,
            }
            | PropExpr::Exists {
                index,
                index_set,
                body,
            } => {
                self.enter_binder(index, index_set);
                self.walk_prop(body);
                self.exit_binder();
            }
        }
    }
}

/// Check a statement's structural invariants. Returns the empty vector
/// when the statement is well-formed.
pub fn well_formed(s: &Statement) -> Vec<Violation> {
    let mut wf = WfCheck::new();
    match s {
        Statement::SetEq(l, r) | Statement::SetIncl(l, r) => {
            wf.walk_set(l, false);
            wf.walk_set(r, false);
        }
        Statement::Taut(p) => wf.walk_prop(p),
        Statement::PropEquiv(l, r) => {
            wf.walk_prop(l);
            wf.walk_prop(r);
        }
    }
    if wf.index_vars.len() > 2 {
        wf.violations
            .push(Violation::TooManyIndexVars(wf.index_vars.len()));
    }
    wf.violations
}

/// Symbol collector. Relies on the well-formedness pass for consistency,
/// so it records the first binding it sees for each family position.
struct SymbolScan {
    vars: BTreeSet<String>,
    families: BTreeMap<String, Vec<String>>,
    index_sets: BTreeSet<String>,
    env: Vec<(String, String)>,
}

impl SymbolScan {
    fn new() -> Self {
        SymbolScan {
            vars: BTreeSet::new(),
            families: BTreeMap::new(),
            index_sets: BTreeSet::new(),
            env: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, indices: &[String]) {
        if indices.is_empty() {
            self.vars.insert(name.to_string());
            return;
        }
        let sets: Vec<String> = indices
            .iter()
            .map(|index| {
                self.env
                    .iter()
                    .rev()
                    .find(|(v, _)| v == index)
                    .map(|(_, s)| s.clone())
                    .unwrap_or_default()
            })
            .collect();
        self.families.entry(name.to_string()).or_insert(sets);
    }

    fn walk_set(&mut self, e: &SetExpr) {
        match e {
            SetExpr::Var(name) => self.record(name, &[]),
            SetExpr::Empty | SetExpr::Universe => {}
            SetExpr::Union(l, r)
            | SetExpr::Inter(l, r)
            | SetExpr::Diff(l, r)
            | SetExpr::SymDiff(l, r)
            | SetExpr::Product(l, r) => {
                self.walk_set(l);
                self.walk_set(r);
            }
            SetExpr::Complement(inner) => self.walk_set(inner),
            SetExpr::FamUnion {
                index,
                index_set,
                body,
            }
            | SetExpr::FamInter {
                index,
                index_set,
                body,
            } => {
                self.index_sets.insert(index_set.clone());
                self.env.push((index.clone(), index_set.clone()));
                self.walk_set(body);
                self.env.pop();
            }
            SetExpr::FamVar { name, indices } => self.record(name, indices),
        }
    }

    fn walk_prop(&mut self, p: &PropExpr) {
        match p {
            PropExpr::Atom { name, indices } => self.record(name, indices),
            PropExpr::True | PropExpr::False => {}
            PropExpr::Or(l, r)
            | PropExpr::And(l, r)
            | PropExpr::Implies(l, r)
            | PropExpr::Iff(l, r) => {
                self.walk_prop(l);
                self.walk_prop(r);
            }
            PropExpr::Not(e) => self.walk_prop(e),
            PropExpr::Forall {
                index,
                index_set,
                body,
            }
            | PropExpr::Exists {
                index,
                index_set,
                body,
            } => {
                self.index_sets.insert(index_set.clone());
                self.env.push((index.clone(), index_set.clone()));
                self.walk_prop(body);
                self.env.pop();
            }
        }
    }
}

/// Collect the free symbols of a statement: plain variables, family
/// symbols with their arities, and index-set names, each in lexicographic
/// order and listed exactly once.
pub fn free_symbols(s: &Statement) -> Symbols {
    let mut scan = SymbolScan::new();
    match s {
        Statement::SetEq(l, r) | Statement::SetIncl(l, r) => {
            scan.walk_set(l);
            scan.walk_set(r);
        }
        Statement::Taut(p) => scan.walk_prop(p),
        Statement::PropEquiv(l, r) => {
            scan.walk_prop(l);
            scan.walk_prop(r);
        }
    }
    Symbols {
        vars: scan.vars.into_iter().collect(),
        families: scan
            .families
            .into_iter()
            .map(|(name, index_sets)| FamilySymbol { name, index_sets })
            .collect(),
        index_sets: scan.index_sets.into_iter().collect(),
    }
}

fn desugar_set(e: &SetExpr) -> SetExpr {
    match e {
        SetExpr::Var(_) | SetExpr::Empty | SetExpr::Universe | SetExpr::FamVar { .. } => e.clone(),
        SetExpr::Union(l, r) => SetExpr::union(desugar_set(l), desugar_set(r)),
        SetExpr::Inter(l, r) => SetExpr::inter(desugar_set(l), desugar_set(r)),
        SetExpr::Diff(l, r) => SetExpr::diff(desugar_set(l), desugar_set(r)),
        // A ^ B becomes (A \ B) | (B \ A)
        SetExpr::SymDiff(l, r) => {
            let l = desugar_set(l);
            let r = desugar_set(r);
            SetExpr::union(
                SetExpr::diff(l.clone(), r.clone()),
                SetExpr::diff(r, l),
            )
        }
        // A' becomes 1 \ A
        SetExpr::Complement(inner) => SetExpr::diff(SetExpr::Universe, desugar_set(inner)),
        SetExpr::Product(l, r) => SetExpr::product(desugar_set(l), desugar_set(r)),
        SetExpr::FamUnion {
            index,
            index_set,
            body,
        } => SetExpr::fam_union(index, index_set, desugar_set(body)),
        SetExpr::FamInter {
            index,
            index_set,
            body,
        } => SetExpr::fam_inter(index, index_set, desugar_set(body)),
    }
}

/// Rewrite symmetric difference, complement, and inclusion into the core
/// union/intersection/difference language. Idempotent and semantics
/// preserving; logical statements pass through unchanged.
pub fn desugar(s: &Statement) -> Statement {
    match s {
        Statement::SetEq(l, r) => Statement::SetEq(desugar_set(l), desugar_set(r)),
        // A <= B becomes A | B = B
        Statement::SetIncl(l, r) => {
            let l = desugar_set(l);
            let r = desugar_set(r);
            Statement::SetEq(SetExpr::union(l, r.clone()), r)
        }
        Statement::Taut(_) | Statement::PropEquiv(_, _) => s.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> SetExpr {
        SetExpr::var(name)
    }

    #[test]
    fn free_symbols_are_sorted_and_unique() {
        let s = Statement::SetEq(
            SetExpr::inter(v("B"), v("A")),
            SetExpr::inter(v("A"), v("B")),
        );
        let syms = free_symbols(&s);
        assert_eq!(syms.vars, vec!["A".to_string(), "B".to_string()]);
        assert!(syms.families.is_empty());
        assert!(syms.index_sets.is_empty());
    }

    #[test]
    fn free_symbols_report_families_with_index_sets() {
        let s = Statement::SetEq(
            SetExpr::fam_union("s", "S", SetExpr::fam_var("A", &["s"])),
            SetExpr::Universe,
        );
        let syms = free_symbols(&s);
        assert!(syms.vars.is_empty());
        assert_eq!(syms.families.len(), 1);
        assert_eq!(syms.families[0].name, "A");
        assert_eq!(syms.families[0].arity(), 1);
        assert_eq!(syms.families[0].index_sets, vec!["S".to_string()]);
        assert_eq!(syms.index_sets, vec!["S".to_string()]);
    }

    #[test]
    fn free_symbols_of_tautology() {
        let s = Statement::Taut(PropExpr::or(
            PropExpr::atom("p"),
            PropExpr::not(PropExpr::atom("p")),
        ));
        let syms = free_symbols(&s);
        assert_eq!(syms.vars, vec!["p".to_string()]);
    }

    #[test]
    fn well_formed_accepts_plain_equality() {
        let s = Statement::SetEq(
            SetExpr::union(v("A"), v("B")),
            SetExpr::union(v("B"), v("A")),
        );
        assert!(well_formed(&s).is_empty());
    }

    #[test]
    fn nested_product_is_a_violation() {
        let s = Statement::SetEq(
            SetExpr::product(SetExpr::product(v("A"), v("B")), v("C")),
            v("D"),
        );
        assert!(well_formed(&s).contains(&Violation::NestedProduct));
    }

    #[test]
    fn product_under_product_operand_is_a_violation() {
        let s = Statement::SetEq(
            SetExpr::product(SetExpr::union(SetExpr::product(v("A"), v("B")), v("C")), v("D")),
            v("E"),
        );
        assert!(well_formed(&s).contains(&Violation::NestedProduct));
    }

    #[test]
    fn unbound_index_is_a_violation() {
        let s = Statement::SetEq(SetExpr::fam_var("A", &["s"]), SetExpr::Empty);
        assert_eq!(
            well_formed(&s),
            vec![Violation::UnboundIndex("s".to_string())]
        );
    }

    #[test]
    fn three_index_variables_are_rejected() {
        let body = SetExpr::fam_union(
            "t",
            "T",
            SetExpr::fam_union("u", "U", SetExpr::fam_var("A", &["s"])),
        );
        let s = Statement::SetEq(SetExpr::fam_union("s", "S", body), SetExpr::Empty);
        assert!(well_formed(&s)
            .iter()
            .any(|v| matches!(v, Violation::TooManyIndexVars(3))));
    }

    #[test]
    fn inconsistent_family_index_sets_are_rejected() {
        let s = Statement::SetEq(
            SetExpr::fam_union("s", "S", SetExpr::fam_var("A", &["s"])),
            SetExpr::fam_union("t", "T", SetExpr::fam_var("A", &["t"])),
        );
        assert!(well_formed(&s)
            .iter()
            .any(|v| matches!(v, Violation::IndexSetMismatch { .. })));
    }

    #[test]
    fn mixed_var_and_family_use_is_an_arity_mismatch() {
        let s = Statement::SetEq(
            SetExpr::union(v("A"), SetExpr::fam_union("s", "S", SetExpr::fam_var("A", &["s"]))),
            SetExpr::Empty,
        );
        assert!(well_formed(&s).contains(&Violation::ArityMismatch("A".to_string())));
    }

    #[test]
    fn desugar_symmetric_difference() {
        let s = Statement::SetEq(SetExpr::sym_diff(v("A"), v("B")), SetExpr::sym_diff(v("B"), v("A")));
        let d = desugar(&s);
        let expected = Statement::SetEq(
            SetExpr::union(SetExpr::diff(v("A"), v("B")), SetExpr::diff(v("B"), v("A"))),
            SetExpr::union(SetExpr::diff(v("B"), v("A")), SetExpr::diff(v("A"), v("B"))),
        );
        assert_eq!(d, expected);
    }

    #[test]
    fn desugar_inclusion() {
        let s = Statement::SetIncl(v("A"), v("B"));
        let d = desugar(&s);
        assert_eq!(
            d,
            Statement::SetEq(SetExpr::union(v("A"), v("B")), v("B"))
        );
    }

    #[test]
    fn desugar_complement_introduces_universe_only() {
        let s = Statement::SetEq(SetExpr::complement(v("A")), SetExpr::diff(SetExpr::Universe, v("A")));
        let d = desugar(&s);
        assert_eq!(
            d,
            Statement::SetEq(
                SetExpr::diff(SetExpr::Universe, v("A")),
                SetExpr::diff(SetExpr::Universe, v("A"))
            )
        );
        let before = free_symbols(&s);
        let after = free_symbols(&d);
        assert_eq!(before.vars, after.vars);
    }

    #[test]
    fn desugar_is_idempotent() {
        let s = Statement::SetIncl(
            SetExpr::sym_diff(SetExpr::complement(v("A")), v("B")),
            SetExpr::Universe,
        );
        let once = desugar(&s);
        assert_eq!(desugar(&once), once);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;
        use std::collections::BTreeMap;

        // Direct pointwise semantics for the sugared operators, used only
        // to check that desugaring preserves meaning. Symmetric difference
        // is xor, complement is the whole universe minus the set.
        fn direct_eval(e: &SetExpr, extents: &BTreeMap<String, u32>, full: u32) -> u32 {
            match e {
                SetExpr::Var(name) => extents[name],
                SetExpr::Empty => 0,
                SetExpr::Universe => full,
                SetExpr::Union(l, r) => {
                    direct_eval(l, extents, full) | direct_eval(r, extents, full)
                }
                SetExpr::Inter(l, r) => {
                    direct_eval(l, extents, full) & direct_eval(r, extents, full)
                }
                SetExpr::Diff(l, r) => {
                    direct_eval(l, extents, full) & !direct_eval(r, extents, full) & full
                }
                SetExpr::SymDiff(l, r) => {
                    (direct_eval(l, extents, full) ^ direct_eval(r, extents, full)) & full
                }
                SetExpr::Complement(inner) => !direct_eval(inner, extents, full) & full,
                _ => unreachable!("flat expressions only"),
            }
        }

        fn sugared_expr() -> impl Strategy<Value = SetExpr> {
            let leaf = prop_oneof![
                Just(SetExpr::Empty),
                Just(SetExpr::Universe),
                prop_oneof![Just("A"), Just("B"), Just("C")].prop_map(SetExpr::var),
            ];
            leaf.prop_recursive(5, 32, 2, |inner| {
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(l, r)| SetExpr::union(l, r)),
                    (inner.clone(), inner.clone()).prop_map(|(l, r)| SetExpr::inter(l, r)),
                    (inner.clone(), inner.clone()).prop_map(|(l, r)| SetExpr::diff(l, r)),
                    (inner.clone(), inner.clone()).prop_map(|(l, r)| SetExpr::sym_diff(l, r)),
                    inner.prop_map(SetExpr::complement),
                ]
            })
        }

        proptest! {
            // Desugaring changes the syntax, never the meaning: on every
            // model of universe size up to 3, the rewritten statement
            // evaluates exactly like the original.
            #[test]
            fn desugaring_preserves_model_semantics(
                l in sugared_expr(),
                r in sugared_expr(),
                masks in proptest::collection::vec(0u32..8, 3),
                n in 1usize..=3,
            ) {
                let full = (1u32 << n) - 1;
                let names = ["A", "B", "C"];
                let extents: BTreeMap<String, u32> = names
                    .iter()
                    .zip(masks.iter())
                    .map(|(name, mask)| (name.to_string(), mask & full))
                    .collect();

                let s = Statement::SetEq(l.clone(), r.clone());
                let d = desugar(&s);
                let (dl, dr) = match &d {
                    Statement::SetEq(dl, dr) => (dl, dr),
                    _ => unreachable!(),
                };
                let model = crate::ast::FiniteModel {
                    universe_size: n,
                    extents: extents
                        .iter()
                        .map(|(k, &v)| (SymbolKey::plain(k), v))
                        .collect(),
                    index_set_sizes: BTreeMap::new(),
                };
                for (orig, desugared) in [(&l, dl), (&r, dr)] {
                    let direct = direct_eval(orig, &extents, full);
                    let via_model = match crate::oracle::eval_model(desugared, &model).unwrap() {
                        crate::oracle::Extent::Points(mask) => mask,
                        _ => unreachable!(),
                    };
                    prop_assert_eq!(direct, via_model);
                }

                // desugaring never invents variables
                prop_assert_eq!(free_symbols(&d).vars, free_symbols(&s).vars);
            }
        }
    }
}
