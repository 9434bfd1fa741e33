//! Seeded random statement generators for cross-validation tests and
//! benchmarks. All generators produce well-formed statements and are
//! deterministic for a fixed seed.

use crate::ast::{PropExpr, SetExpr, Statement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic statement generator.
pub struct StatementGen {
    rng: ChaCha8Rng,
}

const FLAT_POOL: [&str; 4] = ["A", "B", "C", "D"];

impl StatementGen {
    pub fn new(seed: u64) -> Self {
        StatementGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn pick<'a>(&mut self, pool: &[&'a str]) -> &'a str {
        pool[self.rng.random_range(0..pool.len())]
    }

    fn flat_expr(&mut self, pool: &[&str], depth: usize, sugar: bool) -> SetExpr {
        if depth == 0 || self.rng.random_range(0..4) == 0 {
            return match self.rng.random_range(0..6) {
                0 => SetExpr::Empty,
                1 => SetExpr::Universe,
                _ => SetExpr::var(self.pick(pool)),
            };
        }
        let ops = if sugar { 6 } else { 3 };
        match self.rng.random_range(0..ops) {
            0 => SetExpr::union(
                self.flat_expr(pool, depth - 1, sugar),
                self.flat_expr(pool, depth - 1, sugar),
            ),
            1 => SetExpr::inter(
                self.flat_expr(pool, depth - 1, sugar),
                self.flat_expr(pool, depth - 1, sugar),
            ),
            2 => SetExpr::diff(
                self.flat_expr(pool, depth - 1, sugar),
                self.flat_expr(pool, depth - 1, sugar),
            ),
            3 => SetExpr::sym_diff(
                self.flat_expr(pool, depth - 1, sugar),
                self.flat_expr(pool, depth - 1, sugar),
            ),
            _ => SetExpr::complement(self.flat_expr(pool, depth - 1, sugar)),
        }
    }

    /// A flat set equality over at most `max_vars` variables with
    /// expression depth at most `max_depth`; includes symmetric
    /// difference and complement.
    pub fn flat_statement(&mut self, max_vars: usize, max_depth: usize) -> Statement {
        let pool = &FLAT_POOL[..max_vars.min(FLAT_POOL.len())];
        let depth = self.rng.random_range(1..=max_depth);
        Statement::SetEq(
            self.flat_expr(pool, depth, true),
            self.flat_expr(pool, depth, true),
        )
    }

    fn product_side(&mut self, first_pool: &[&str], second_pool: &[&str]) -> SetExpr {
        let terms = self.rng.random_range(1..=3);
        let mut side = self.product_term(first_pool, second_pool);
        for _ in 1..terms {
            let term = self.product_term(first_pool, second_pool);
            side = match self.rng.random_range(0..3) {
                0 => SetExpr::union(side, term),
                1 => SetExpr::inter(side, term),
                _ => SetExpr::diff(side, term),
            };
        }
        side
    }

    fn product_term(&mut self, first_pool: &[&str], second_pool: &[&str]) -> SetExpr {
        SetExpr::product(
            self.flat_expr(first_pool, 2, false),
            self.flat_expr(second_pool, 2, false),
        )
    }

    /// A product-flat equality; coordinates draw from one shared pool, so
    /// dependent coordinates occur.
    pub fn product_statement(&mut self) -> Statement {
        let pool = ["A", "B", "X", "Y"];
        Statement::SetEq(
            self.product_side(&pool, &pool),
            self.product_side(&pool, &pool),
        )
    }

    /// A product-flat equality whose coordinates use disjoint variable
    /// pools, so the product-to-intersection reduction always applies.
    pub fn independent_product_statement(&mut self) -> Statement {
        let first = ["X", "A"];
        let second = ["Y", "B"];
        Statement::SetEq(
            self.product_side(&first, &second),
            self.product_side(&first, &second),
        )
    }

    fn monadic_body(&mut self, families: &[&str], depth: usize) -> SetExpr {
        if depth == 0 || self.rng.random_range(0..3) == 0 {
            return match self.rng.random_range(0..5) {
                0 => SetExpr::Empty,
                1 => SetExpr::Universe,
                2 => SetExpr::var("B"),
                _ => SetExpr::fam_var(self.pick(families), &["s"]),
            };
        }
        match self.rng.random_range(0..4) {
            0 => SetExpr::union(
                self.monadic_body(families, depth - 1),
                self.monadic_body(families, depth - 1),
            ),
            1 => SetExpr::inter(
                self.monadic_body(families, depth - 1),
                self.monadic_body(families, depth - 1),
            ),
            2 => SetExpr::diff(
                self.monadic_body(families, depth - 1),
                self.monadic_body(families, depth - 1),
            ),
            _ => SetExpr::complement(self.monadic_body(families, depth - 1)),
        }
    }

    fn monadic_expr(&mut self, families: &[&str], depth: usize) -> SetExpr {
        if depth == 0 {
            return self.binder(families);
        }
        match self.rng.random_range(0..5) {
            0 => SetExpr::union(
                self.monadic_expr(families, depth - 1),
                self.monadic_expr(families, depth - 1),
            ),
            1 => SetExpr::inter(
                self.monadic_expr(families, depth - 1),
                self.monadic_expr(families, depth - 1),
            ),
            2 => SetExpr::diff(
                self.monadic_expr(families, depth - 1),
                self.monadic_expr(families, depth - 1),
            ),
            3 => SetExpr::complement(self.monadic_expr(families, depth - 1)),
            _ => self.binder(families),
        }
    }

    fn binder(&mut self, families: &[&str]) -> SetExpr {
        let body = self.monadic_body(families, 2);
        if self.rng.random_range(0..2) == 0 {
            SetExpr::fam_union("s", "S", body)
        } else {
            SetExpr::fam_inter("s", "S", body)
        }
    }

    /// An equality over indexed unions/intersections of arity-1 families
    /// (`family_count` of them, at most 2) plus one plain variable, all
    /// over a single index set.
    pub fn monadic_statement(&mut self, family_count: usize) -> Statement {
        let families = &["A", "C"][..family_count.clamp(1, 2)];
        loop {
            let s = Statement::SetEq(
                self.monadic_expr(families, 2),
                self.monadic_expr(families, 2),
            );
            if s.contains_family() {
                return s;
            }
        }
    }

    fn prop_expr(&mut self, depth: usize, allow_iff: bool) -> PropExpr {
        if depth == 0 || self.rng.random_range(0..4) == 0 {
            return match self.rng.random_range(0..5) {
                0 => PropExpr::True,
                1 => PropExpr::False,
                _ => PropExpr::atom(self.pick(&["p", "q", "r"])),
            };
        }
        let ops = if allow_iff { 5 } else { 4 };
        match self.rng.random_range(0..ops) {
            0 => PropExpr::or(
                self.prop_expr(depth - 1, allow_iff),
                self.prop_expr(depth - 1, allow_iff),
            ),
            1 => PropExpr::and(
                self.prop_expr(depth - 1, allow_iff),
                self.prop_expr(depth - 1, allow_iff),
            ),
            2 => PropExpr::implies(
                self.prop_expr(depth - 1, allow_iff),
                self.prop_expr(depth - 1, allow_iff),
            ),
            3 => PropExpr::not(self.prop_expr(depth - 1, allow_iff)),
            _ => PropExpr::iff(
                self.prop_expr(depth - 1, allow_iff),
                self.prop_expr(depth - 1, allow_iff),
            ),
        }
    }

    /// A quantifier-free formula over three atoms.
    pub fn quantifier_free_prop(&mut self) -> PropExpr {
        let depth = self.rng.random_range(3..=4);
        self.prop_expr(depth, true)
    }

    fn quantified_prop(&mut self) -> PropExpr {
        let body = match self.rng.random_range(0..3) {
            0 => PropExpr::atom_indexed("p", &["s"]),
            1 => PropExpr::implies(PropExpr::atom("q"), PropExpr::atom_indexed("p", &["s"])),
            _ => PropExpr::or(
                PropExpr::atom_indexed("p", &["s"]),
                PropExpr::not(PropExpr::atom_indexed("r", &["s"])),
            ),
        };
        let quantified = if self.rng.random_range(0..2) == 0 {
            PropExpr::forall("s", "S", body)
        } else {
            PropExpr::exists("s", "S", body)
        };
        match self.rng.random_range(0..3) {
            0 => quantified,
            1 => PropExpr::not(quantified),
            _ => PropExpr::implies(quantified.clone(), quantified),
        }
    }

    fn dyadic_statement(&mut self) -> Statement {
        let inner = if self.rng.random_range(0..2) == 0 {
            SetExpr::fam_inter("s", "S", SetExpr::fam_var("P", &["s", "t"]))
        } else {
            SetExpr::fam_union("s", "S", SetExpr::fam_var("P", &["s", "t"]))
        };
        let outer = if self.rng.random_range(0..2) == 0 {
            SetExpr::fam_union("t", "T", inner)
        } else {
            SetExpr::fam_inter("t", "T", inner)
        };
        let swapped = SetExpr::fam_inter(
            "s",
            "S",
            SetExpr::fam_union("t", "T", SetExpr::fam_var("P", &["s", "t"])),
        );
        if self.rng.random_range(0..2) == 0 {
            Statement::SetIncl(outer, swapped)
        } else {
            Statement::SetEq(outer, swapped)
        }
    }

    /// Any well-formed statement: flat, inclusion, indexed (monadic or
    /// dyadic), product, tautology, or quantified formula. Used for
    /// parser round-trip testing.
    pub fn any_statement(&mut self) -> Statement {
        match self.rng.random_range(0..8) {
            0 | 1 => self.flat_statement(4, 5),
            2 => {
                let pool = &FLAT_POOL[..3];
                Statement::SetIncl(
                    self.flat_expr(pool, 3, true),
                    self.flat_expr(pool, 3, true),
                )
            }
            3 => self.product_statement(),
            4 => self.monadic_statement(2),
            5 => self.dyadic_statement(),
            6 => Statement::Taut(self.prop_expr(4, true)),
            _ => Statement::Taut(self.quantified_prop()),
        }
    }
}
