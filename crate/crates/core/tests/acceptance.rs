//! Acceptance suite: golden catalogs, oracle cross-validation, and
//! witness validity. Each test prints one PASS line describing what it
//! established.

use extremes_core::generate::StatementGen;
use extremes_core::transform::{preserves, transform_equal, Law, TransformExpr};
use extremes_core::{
    apply, check_by_model, decide, decide_flat, decide_indexed, decide_product, desugar,
    eval_model, falsifies, free_symbols, parse_statement, reduce_product, render, DecideOptions,
    Method, OracleLimits, SetExpr, Statement, SymbolKey, Verdict,
};
use std::path::PathBuf;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expect {
    Valid,
    ValidUpToBound,
    Invalid,
}

fn catalog(name: &str) -> Vec<(String, Expect)> {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "catalog", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    let mut out = Vec::new();
    for line in text.lines() {
        let (stmt, comment) = match line.split_once('#') {
            Some((s, c)) => (s.trim(), c),
            None => (line.trim(), ""),
        };
        if stmt.is_empty() {
            continue;
        }
        let expect = if comment.contains("expect: valid-up-to-bound") {
            Expect::ValidUpToBound
        } else if comment.contains("expect: invalid") {
            Expect::Invalid
        } else if comment.contains("expect: valid") {
            Expect::Valid
        } else {
            panic!("catalog line without expectation: {line}");
        };
        out.push((stmt.to_string(), expect));
    }
    out
}

fn opts() -> DecideOptions {
    DecideOptions::default()
}

fn par_opts() -> DecideOptions {
    DecideOptions {
        dyadic_bound: 4,
        jobs: test_jobs(),
    }
}

fn test_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get().min(4))
        .unwrap_or(1)
}

fn verdict_matches(verdict: &Verdict, expect: Expect) -> bool {
    matches!(
        (verdict, expect),
        (Verdict::Valid { .. }, Expect::Valid)
            | (Verdict::ValidUpToBound { .. }, Expect::ValidUpToBound)
            | (Verdict::Invalid { .. }, Expect::Invalid)
    )
}

fn run_catalog(name: &str) -> (usize, Duration) {
    let entries = catalog(name);
    let count = entries.len();
    let started = Instant::now();
    for (input, expect) in entries {
        let stmt = parse_statement(&input).unwrap_or_else(|e| panic!("{input}: {e}"));
        let decision = decide(&stmt, &opts()).unwrap_or_else(|e| panic!("{input}: {e}"));
        assert!(
            verdict_matches(&decision.verdict, expect),
            "{input}: expected {expect:?}, got {:?}",
            decision.verdict
        );
        if let Verdict::Invalid { witness } = &decision.verdict {
            assert!(
                falsifies(&stmt, witness).unwrap(),
                "{input}: witness does not falsify"
            );
        }
    }
    (count, started.elapsed())
}

#[test]
fn identity_catalog_decides_as_annotated() {
    let started = Instant::now();
    let (identities, _) = run_catalog("identities.txt");
    let (inclusions, _) = run_catalog("inclusions.txt");
    let (indexed, _) = run_catalog("indexed.txt");
    let elapsed = started.elapsed();

    // the failing distribution law must fail at exactly this assignment
    let stmt = parse_statement("A ^ (B | C) = (A | C) ^ (B | C)").unwrap();
    match decide(&stmt, &opts()).unwrap().verdict {
        Verdict::Invalid { witness } => {
            let a = witness.assignment.as_ref().expect("extreme witness");
            assert_eq!(a.get(&SymbolKey::plain("A")), Some(false));
            assert_eq!(a.get(&SymbolKey::plain("B")), Some(false));
            assert_eq!(a.get(&SymbolKey::plain("C")), Some(true));
        }
        other => panic!("expected Invalid, got {other:?}"),
    }

    assert!(
        elapsed < Duration::from_secs(1),
        "identity catalogs took {elapsed:?}"
    );
    println!(
        "PASS: identity catalogs ({} statements) decide as annotated in {elapsed:?}",
        identities + inclusions + indexed
    );
}

#[test]
fn tautology_catalog_decides_as_annotated() {
    let entries = catalog("tautologies.txt");
    let valid_count = entries
        .iter()
        .filter(|(_, e)| *e == Expect::Valid)
        .count();
    assert!(valid_count >= 16, "expected at least 16 tautologies");
    let (count, elapsed) = run_catalog("tautologies.txt");
    assert!(
        elapsed < Duration::from_secs(1),
        "tautology catalog took {elapsed:?}"
    );
    println!("PASS: tautology catalog ({count} statements) decides as annotated in {elapsed:?}");
}

#[test]
fn quantifier_suite_uses_the_monadic_bound() {
    let entries = catalog("quantified-logic.txt");
    for (input, expect) in &entries {
        let stmt = parse_statement(input).unwrap();
        let verdict = decide(&stmt, &opts()).unwrap().verdict;
        match expect {
            Expect::Valid => match verdict {
                Verdict::Valid { method, .. } => assert_eq!(
                    method,
                    Method::MonadicBound,
                    "{input}: expected the monadic-bound method"
                ),
                other => panic!("{input}: expected Valid, got {other:?}"),
            },
            Expect::ValidUpToBound => match verdict {
                Verdict::ValidUpToBound { bound, .. } => assert_eq!(bound, 4),
                other => panic!("{input}: expected ValidUpToBound, got {other:?}"),
            },
            Expect::Invalid => panic!("{input}: quantifier suite has no invalid entries"),
        }
    }

    // negating a universal is the same fact as complementing an indexed
    // union; the two forms must agree
    let as_formula = parse_statement("~(forall s in S. p[s]) <-> exists s in S. ~p[s]").unwrap();
    let as_sets = parse_statement("(Union s in S. A[s])' = Inter s in S. A[s]'").unwrap();
    let formula_verdict = decide(&as_formula, &opts()).unwrap().verdict;
    let set_verdict = decide(&as_sets, &opts()).unwrap().verdict;
    assert!(!formula_verdict.is_invalid());
    assert_eq!(formula_verdict.is_invalid(), set_verdict.is_invalid());

    println!(
        "PASS: quantifier suite ({} statements) decides with the expected methods",
        entries.len()
    );
}

#[test]
fn product_suite_matches_expected_verdicts() {
    run_catalog("products.txt");

    // the correct difference expansion is valid by two-point valuation
    let correct =
        parse_statement("(X * Y) \\ (A * B) = ((X \\ A) * Y) | (X * (Y \\ B))").unwrap();
    match decide_product(&correct, &opts()).unwrap() {
        Verdict::Valid {
            method,
            cases_checked,
        } => {
            assert_eq!(method, Method::TwoPoint);
            assert_eq!(cases_checked, 256);
        }
        other => panic!("expected Valid, got {other:?}"),
    }

    // both refuted forms produce two-point witnesses
    for input in [
        "(X * Y) \\ (A * B) = (X \\ A) * (Y \\ B)",
        "(X * X) \\ (A * A) = (X \\ A) * (X \\ A)",
    ] {
        let stmt = parse_statement(input).unwrap();
        match decide_product(&stmt, &opts()).unwrap() {
            Verdict::Invalid { witness } => {
                assert_eq!(witness.model.universe_size, 2, "{input}");
                assert!(falsifies(&stmt, &witness).unwrap(), "{input}");
            }
            other => panic!("{input}: expected Invalid, got {other:?}"),
        }
    }

    // replacing * with & under coordinate independence preserves the verdict
    let reduced = reduce_product(&correct).unwrap();
    assert!(!decide_flat(&reduced, &opts()).unwrap().is_invalid());

    println!("PASS: product suite decides as annotated; reduction round-trip holds");
}

/// Oracle limits for a monadic statement: index sets up to the monadic
/// bound, universe as large as a small model budget allows.
fn indexed_limits(s: &Statement, jobs: usize) -> OracleLimits {
    let syms = free_symbols(s);
    let k = syms.families.len();
    assert!(syms.families.iter().all(|f| f.arity() == 1));
    let max_index = 1usize << k;
    let plain = syms.vars.len();
    let mut max_universe = 1;
    let models_at = |n: usize| -> u64 {
        (1..=max_index)
            .map(|m| 1u64 << ((n * (plain + k * m)).min(62)))
            .sum()
    };
    if models_at(2) <= 100_000 {
        max_universe = 2;
    }
    OracleLimits {
        max_universe,
        max_index_set: max_index,
        model_budget: 50_000_000,
        jobs,
    }
}

#[test]
fn random_statements_agree_with_the_oracle() {
    let started = Instant::now();
    let opts = par_opts();
    let jobs = opts.jobs;

    let flat_limits = OracleLimits {
        max_universe: 3,
        max_index_set: 3,
        model_budget: 50_000_000,
        jobs,
    };
    let mut gen = StatementGen::new(0xF1A7);
    for i in 0..1000 {
        let s = gen.flat_statement(4, 5);
        let fast = decide_flat(&s, &opts).unwrap();
        let slow = check_by_model(&s, &flat_limits).unwrap();
        assert_eq!(
            fast.is_invalid(),
            slow.is_invalid(),
            "flat disagreement #{i} on {}",
            render(&s)
        );
        if let Verdict::Invalid { witness } = &fast {
            assert!(falsifies(&s, witness).unwrap());
        }
    }
    let flat_elapsed = started.elapsed();

    let mut gen = StatementGen::new(0x9A1B);
    for i in 0..500 {
        let s = gen.product_statement();
        let fast = decide_product(&s, &opts).unwrap();
        let slow = check_by_model(&s, &flat_limits).unwrap();
        assert_eq!(
            fast.is_invalid(),
            slow.is_invalid(),
            "product disagreement #{i} on {}",
            render(&s)
        );
        if let Verdict::Invalid { witness } = &fast {
            assert!(falsifies(&s, witness).unwrap());
        }
    }
    let product_elapsed = started.elapsed() - flat_elapsed;

    let mut gen = StatementGen::new(0x011D);
    for i in 0..200 {
        let families = if i % 5 == 0 { 2 } else { 1 };
        let s = gen.monadic_statement(families);
        let fast = decide_indexed(&s, &opts).unwrap();
        let slow = check_by_model(&s, &indexed_limits(&s, jobs)).unwrap();
        assert_eq!(
            fast.is_invalid(),
            slow.is_invalid(),
            "indexed disagreement #{i} on {}",
            render(&s)
        );
        if let Verdict::Invalid { witness } = &fast {
            assert!(falsifies(&s, witness).unwrap());
        }
    }
    let elapsed = started.elapsed();

    assert!(
        elapsed < Duration::from_secs(60),
        "oracle equivalence took {elapsed:?}"
    );
    println!(
        "PASS: 1000 flat / 500 product / 200 indexed random statements agree with the oracle \
         (flat {flat_elapsed:?}, product {product_elapsed:?}, total {elapsed:?})"
    );
}

/// Evaluate both sides of a set equality on every one-point model over
/// the given variables and return the assignments (as bit vectors, first
/// variable = most significant) where the sides differ.
fn one_point_disagreements(stmt: &Statement, vars: &[&str]) -> Vec<u32> {
    let (l, r) = match desugar(stmt) {
        Statement::SetEq(l, r) => (l, r),
        _ => unreachable!(),
    };
    let mut out = Vec::new();
    for v in 0..1u32 << vars.len() {
        let extents = vars
            .iter()
            .enumerate()
            .map(|(i, name)| (SymbolKey::plain(name), v >> (vars.len() - 1 - i) & 1))
            .collect();
        let model = extremes_core::FiniteModel {
            universe_size: 1,
            extents,
            index_set_sizes: Default::default(),
        };
        if eval_model(&l, &model).unwrap() != eval_model(&r, &model).unwrap() {
            out.push(v);
        }
    }
    out
}

#[test]
fn one_point_checks_do_not_decide_product_statements() {
    // Passing every extreme case proves nothing for products: the pair
    // swap holds on all four one-point models yet is false.
    let swap = parse_statement("X * Y = Y * X").unwrap();
    assert!(one_point_disagreements(&swap, &["X", "Y"]).is_empty());
    assert!(decide_product(&swap, &opts()).unwrap().is_invalid());

    // The correct difference expansion also agrees on all 16 one-point
    // models, but only the two-point valuation proves it.
    let correct =
        parse_statement("(X * Y) \\ (A * B) = ((X \\ A) * Y) | (X * (Y \\ B))").unwrap();
    assert!(one_point_disagreements(&correct, &["A", "B", "X", "Y"]).is_empty());
    match decide_product(&correct, &opts()).unwrap() {
        Verdict::Valid { method, .. } => assert_eq!(method, Method::TwoPoint),
        other => panic!("expected Valid, got {other:?}"),
    }

    // The naive difference identity is false, and one-point evaluation
    // already refutes it at A = 0, B = 1, X = 1, Y = 1 — the hint
    // "what happens when A is empty and B is not".
    let naive = parse_statement("(X * Y) \\ (A * B) = (X \\ A) * (Y \\ B)").unwrap();
    let disagreements = one_point_disagreements(&naive, &["A", "B", "X", "Y"]);
    assert!(disagreements.contains(&0b0111));
    assert!(decide_product(&naive, &opts()).unwrap().is_invalid());

    println!(
        "PASS: one-point agreement does not decide product statements \
         (pair swap passes all extreme cases yet is invalid)"
    );
}

#[test]
fn transformation_calculus_resolves_as_expected() {
    let a = SetExpr::var("A");
    let b = SetExpr::var("B");
    let i_a = TransformExpr::intersect_with(a.clone());
    let i_b = TransformExpr::intersect_with(b.clone());
    let u_a = TransformExpr::union_with(a.clone());
    let u_b = TransformExpr::union_with(b.clone());
    let comp = TransformExpr::Comp;

    let valid = |v: Result<Verdict, _>| !v.unwrap().is_invalid();

    // squares and compositions
    assert!(valid(transform_equal(&i_a.squared(), &i_a, &opts())));
    assert!(valid(transform_equal(&u_a.squared(), &u_a, &opts())));
    assert!(valid(transform_equal(&comp.squared(), &TransformExpr::Id, &opts())));
    assert!(valid(transform_equal(
        &TransformExpr::compose(i_a.clone(), i_b.clone()),
        &TransformExpr::intersect_with(SetExpr::inter(a.clone(), b.clone())),
        &opts()
    )));
    assert!(valid(transform_equal(
        &TransformExpr::compose(u_a.clone(), u_b.clone()),
        &TransformExpr::union_with(SetExpr::union(a.clone(), b.clone())),
        &opts()
    )));

    // preservation laws
    assert!(valid(preserves(&i_a, Law::Union, &opts())));
    assert!(valid(preserves(&i_a, Law::Inter, &opts())));
    assert!(valid(preserves(&u_a, Law::Union, &opts())));
    assert!(preserves(&comp, Law::Union, &opts()).unwrap().is_invalid());

    // complementation swaps the two laws
    let x = SetExpr::var("X");
    let y = SetExpr::var("Y");
    let swap_union = Statement::SetEq(
        apply(&comp, &SetExpr::union(x.clone(), y.clone())),
        SetExpr::inter(apply(&comp, &x), apply(&comp, &y)),
    );
    let swap_inter = Statement::SetEq(
        apply(&comp, &SetExpr::inter(x.clone(), y.clone())),
        SetExpr::union(apply(&comp, &x), apply(&comp, &y)),
    );
    assert!(valid(decide_flat(&swap_union, &opts())));
    assert!(valid(decide_flat(&swap_inter, &opts())));

    // complement sandwiches
    let sandwich_i = TransformExpr::compose(
        comp.clone(),
        TransformExpr::compose(
            TransformExpr::union_with(SetExpr::complement(a.clone())),
            comp.clone(),
        ),
    );
    let sandwich_u = TransformExpr::compose(
        comp.clone(),
        TransformExpr::compose(
            TransformExpr::intersect_with(SetExpr::complement(a.clone())),
            comp.clone(),
        ),
    );
    assert!(valid(transform_equal(&i_a, &sandwich_i, &opts())));
    assert!(valid(transform_equal(&u_a, &sandwich_u, &opts())));

    // symmetric difference satisfies the abelian-group laws
    for input in [
        "A ^ (B ^ C) = (A ^ B) ^ C",
        "A ^ 0 = A",
        "A ^ A = 0",
        "A ^ B = B ^ A",
    ] {
        assert!(
            valid(decide_flat(&parse_statement(input).unwrap(), &opts())),
            "{input}"
        );
    }
    run_catalog("transformations.txt");

    println!("PASS: transformation calculus resolves to the expected identities");
}

#[test]
fn parser_round_trips_on_random_and_catalog_statements() {
    let mut gen = StatementGen::new(0x5EED);
    for i in 0..1000 {
        let s = gen.any_statement();
        let rendered = render(&s);
        let reparsed = parse_statement(&rendered)
            .unwrap_or_else(|e| panic!("round trip #{i} failed to parse `{rendered}`: {e}"));
        assert_eq!(reparsed, s, "round trip #{i} through `{rendered}`");
    }

    for name in [
        "identities.txt",
        "inclusions.txt",
        "indexed.txt",
        "tautologies.txt",
        "quantified-logic.txt",
        "products.txt",
        "transformations.txt",
    ] {
        for (input, _) in catalog(name) {
            let stmt = parse_statement(&input).unwrap();
            let rendered = render(&stmt);
            assert_eq!(parse_statement(&rendered).unwrap(), stmt, "{name}: {input}");
            assert_eq!(
                render(&parse_statement(&rendered).unwrap()),
                rendered,
                "{name}: rendering is not a fixpoint for {input}"
            );
        }
    }

    println!("PASS: 1000 random statements and all catalog files round-trip through the parser");
}

#[test]
fn catalog_verdicts_agree_with_the_default_oracle() {
    let limits = OracleLimits {
        jobs: test_jobs(),
        ..OracleLimits::default()
    };
    let mut checked = 0usize;
    for name in [
        "identities.txt",
        "inclusions.txt",
        "indexed.txt",
        "tautologies.txt",
        "quantified-logic.txt",
        "products.txt",
        "transformations.txt",
    ] {
        for (input, _) in catalog(name) {
            let stmt = parse_statement(&input).unwrap();
            let fast = decide(&stmt, &par_opts()).unwrap().verdict;
            let slow = check_by_model(&stmt, &limits).unwrap();
            assert_eq!(
                fast.is_invalid(),
                slow.is_invalid(),
                "{name}: engine and oracle disagree on {input}"
            );
            checked += 1;
        }
    }
    println!("PASS: all {checked} catalog statements agree with the three-point oracle");
}

#[test]
fn every_invalid_verdict_carries_a_falsifying_witness() {
    let mut invalid_count = 0usize;
    for name in [
        "identities.txt",
        "inclusions.txt",
        "indexed.txt",
        "tautologies.txt",
        "quantified-logic.txt",
        "products.txt",
        "transformations.txt",
    ] {
        for (input, _) in catalog(name) {
            let stmt = parse_statement(&input).unwrap();
            if let Verdict::Invalid { witness } = decide(&stmt, &opts()).unwrap().verdict {
                assert!(
                    falsifies(&stmt, &witness).unwrap(),
                    "{input}: witness fails to falsify"
                );
                invalid_count += 1;
            }
        }
    }
    assert!(invalid_count >= 6, "expected several invalid statements");
    println!("PASS: all {invalid_count} invalid catalog verdicts re-evaluate to genuine falsifications");
}
