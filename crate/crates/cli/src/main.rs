//! Command-line front end for the extremes decision procedures.
//!
//! Exit codes: 0 all statements valid, 1 at least one invalid, 2 parse
//! error, 3 unsupported construct, 4 oracle budget exceeded, 5 oracle
//! disagreement. In batch mode the highest code wins.

use clap::{Args, Parser, Subcommand};
use extremes_core::extremes::label_instance;
use extremes_core::{
    check_by_model, decide, explain, falsifies, free_symbols, logic_to_set, parse_statement_in,
    render, render_prop_expr, set_to_logic, DecideError, DecideOptions, OracleError, OracleLimits,
    ParseError, ParseMode, PropExpr, Statement, Verdict, Witness,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_PARSE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_DISAGREEMENT: u8 = 5;

#[derive(Parser)]
#[command(
    name = "extremes",
    version,
    about = "Decide set-theoretic identities and propositional tautologies by extreme-case enumeration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one statement or a file of statements
    Check(CheckArgs),
    /// Translate between the set world and the logic world
    Translate(TranslateArgs),
    /// Print the full extreme-case table for a flat statement
    Explain(ExplainArgs),
    /// Cross-check the fast decision against the brute-force oracle
    Oracle(OracleArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Statement to decide
    statement: Option<String>,
    /// File with one statement per line; `#` starts a comment
    #[arg(short = 'f', long = "file", conflicts_with = "statement")]
    file: Option<PathBuf>,
    /// Emit one JSON object per statement
    #[arg(long)]
    json: bool,
    /// Print the verdict only
    #[arg(long, conflicts_with = "json")]
    quiet: bool,
    /// Read a top-level `<->` as a claimed equivalence
    #[arg(long)]
    equiv: bool,
    /// Largest index-set size checked when an arity-2 family is present
    #[arg(long, default_value_t = 4)]
    bound: usize,
    /// Worker threads for enumeration (output is identical for any value)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct TranslateArgs {
    statement: String,
    /// Translate a set statement into a formula
    #[arg(long = "to-logic", conflicts_with = "to_sets")]
    to_logic: bool,
    /// Translate a formula into a set statement
    #[arg(long = "to-sets")]
    to_sets: bool,
    /// Also decide the translation
    #[arg(long)]
    check: bool,
    /// Read a top-level `<->` as a claimed equivalence
    #[arg(long)]
    equiv: bool,
    #[arg(long, default_value_t = 4)]
    bound: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct ExplainArgs {
    statement: String,
}

#[derive(Args)]
struct OracleArgs {
    statement: String,
    /// Largest universe size the oracle enumerates
    #[arg(long = "max-universe", default_value_t = 3)]
    max_universe: usize,
    /// Largest index-set size the oracle enumerates
    #[arg(long = "max-index", default_value_t = 3)]
    max_index: usize,
    /// Ceiling on the total number of models enumerated
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 4)]
    bound: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    // die quietly when the read end of a pipe goes away, like other
    // line-oriented tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::Translate(args) => cmd_translate(&args),
        Command::Explain(args) => cmd_explain(&args),
        Command::Oracle(args) => cmd_oracle(&args),
    };
    ExitCode::from(code)
}

fn statement_kind(s: &Statement) -> &'static str {
    match s {
        Statement::SetEq(_, _) => "set-equality",
        Statement::SetIncl(_, _) => "set-inclusion",
        Statement::Taut(_) => "tautology",
        Statement::PropEquiv(_, _) => "equivalence",
    }
}

fn report_parse_error(input: &str, err: &ParseError) {
    eprintln!(
        "error: {} (bytes {}..{})",
        err.message, err.span.start, err.span.end
    );
    eprintln!("  {input}");
    let mut marker = String::from("  ");
    for _ in 0..err.span.start {
        marker.push(' ');
    }
    for _ in err.span.start..err.span.end.max(err.span.start + 1) {
        marker.push('^');
    }
    eprintln!("{marker}");
    if !err.expected.is_empty() {
        eprintln!("  expected: {}", err.expected.join(", "));
    }
}

fn parse_error_code(err: &ParseError) -> u8 {
    if err.violations.is_empty() {
        EXIT_PARSE
    } else {
        EXIT_UNSUPPORTED
    }
}

fn decide_error_code(err: &DecideError) -> u8 {
    // routing and precondition failures are all "unsupported construct"
    let _ = err;
    EXIT_UNSUPPORTED
}

#[derive(Serialize)]
struct JsonWitness {
    points: Vec<String>,
    sets: BTreeMap<String, Vec<String>>,
    index_sets: BTreeMap<String, usize>,
    note: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    input: &'a str,
    kind: &'a str,
    verdict: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cases: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<JsonWitness>,
    elapsed_ms: u64,
}

fn witness_parts(stmt: &Statement, w: &Witness) -> JsonWitness {
    let syms = free_symbols(stmt);
    let sets: BTreeMap<String, Vec<String>> = w
        .model
        .extents
        .iter()
        .map(|(key, &mask)| {
            let label = label_instance(key, &syms, &w.model.index_set_sizes);
            let members: Vec<String> = w
                .point_names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| p.clone())
                .collect();
            (label, members)
        })
        .collect();
    JsonWitness {
        points: w.point_names.clone(),
        sets,
        index_sets: w.model.index_set_sizes.clone(),
        note: w.note.clone(),
    }
}

fn verdict_summary(v: &Verdict) -> String {
    match v {
        Verdict::Valid {
            method,
            cases_checked,
        } => format!("Valid ({method}, {cases_checked} cases)"),
        Verdict::ValidUpToBound {
            bound,
            cases_checked,
        } => format!("Valid up to index-set size {bound} ({cases_checked} cases)"),
        Verdict::Invalid { .. } => "Invalid".to_string(),
    }
}

fn print_witness(stmt: &Statement, w: &Witness) {
    let parts = witness_parts(stmt, w);
    let universe = format!("{{{}}}", parts.points.join(","));
    let sizes = if parts.index_sets.is_empty() {
        String::new()
    } else {
        let rendered: Vec<String> = parts
            .index_sets
            .iter()
            .map(|(name, size)| format!("|{name}|={size}"))
            .collect();
        format!("; index sets {}", rendered.join(", "))
    };
    let sets: Vec<String> = parts
        .sets
        .iter()
        .map(|(label, members)| format!("{label} = {{{}}}", members.join(",")))
        .collect();
    println!("  witness: universe {universe}{sizes}; {}", sets.join(", "));
    println!("  note: {}", w.note);
}

fn run_one(input: &str, args: &CheckArgs) -> u8 {
    let mode = if args.equiv {
        ParseMode::Equiv
    } else {
        ParseMode::Auto
    };
    let started = Instant::now();
    let stmt = match parse_statement_in(input, mode) {
        Ok(s) => s,
        Err(err) => {
            report_parse_error(input, &err);
            return parse_error_code(&err);
        }
    };
    let opts = DecideOptions {
        dyadic_bound: args.bound,
        jobs: args.jobs,
    };
    let decision = match decide(&stmt, &opts) {
        Ok(d) => d,
        Err(err) => {
            eprintln!("error: {err}");
            return decide_error_code(&err);
        }
    };
    let elapsed_ms = started.elapsed().as_millis() as u64;

    if args.json {
        let (verdict, method, cases, bound) = match &decision.verdict {
            Verdict::Valid {
                method,
                cases_checked,
            } => ("valid", Some(method.to_string()), Some(*cases_checked), None),
            Verdict::ValidUpToBound {
                bound,
                cases_checked,
            } => ("valid-up-to-bound", None, Some(*cases_checked), Some(*bound)),
            Verdict::Invalid { .. } => ("invalid", None, None, None),
        };
        let witness = match &decision.verdict {
            Verdict::Invalid { witness } => Some(witness_parts(&stmt, witness)),
            _ => None,
        };
        let report = JsonReport {
            input,
            kind: statement_kind(&stmt),
            verdict,
            method,
            cases,
            bound,
            witness,
            elapsed_ms,
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else if args.quiet {
        println!("{}", verdict_summary(&decision.verdict));
    } else {
        println!("{input}: {}", verdict_summary(&decision.verdict));
        if let Verdict::Invalid { witness } = &decision.verdict {
            print_witness(&stmt, witness);
        }
    }
    u8::from(decision.verdict.is_invalid())
}

fn cmd_check(args: &CheckArgs) -> u8 {
    let inputs: Vec<String> = if let Some(path) = &args.file {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(err) => {
                eprintln!("error: cannot read {}: {err}", path.display());
                return EXIT_PARSE;
            }
        };
        text.lines()
            .map(|line| line.split('#').next().unwrap_or("").trim().to_string())
            .filter(|line| !line.is_empty())
            .collect()
    } else if let Some(stmt) = &args.statement {
        vec![stmt.trim().to_string()]
    } else {
        eprintln!("error: provide a statement or --file");
        return EXIT_PARSE;
    };

    let mut worst = 0u8;
    for input in &inputs {
        worst = worst.max(run_one(input, args));
    }
    worst
}

fn cmd_translate(args: &TranslateArgs) -> u8 {
    if !args.to_logic && !args.to_sets {
        eprintln!("error: choose --to-logic or --to-sets");
        return EXIT_PARSE;
    }
    let mode = if args.equiv {
        ParseMode::Equiv
    } else {
        ParseMode::Auto
    };
    let stmt = match parse_statement_in(&args.statement, mode) {
        Ok(s) => s,
        Err(err) => {
            report_parse_error(&args.statement, &err);
            return parse_error_code(&err);
        }
    };
    let opts = DecideOptions {
        dyadic_bound: args.bound,
        jobs: args.jobs,
    };

    if args.to_logic {
        let formula = match set_to_logic(&stmt) {
            Ok(f) => f,
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_UNSUPPORTED;
            }
        };
        println!("{}", render_prop_expr(&formula));
        if args.check {
            let translated = Statement::Taut(formula);
            return check_translation(&translated, &opts);
        }
    } else {
        let formula = match stmt {
            Statement::Taut(p) => p,
            Statement::PropEquiv(l, r) => PropExpr::iff(l, r),
            _ => {
                eprintln!("error: expected a formula, found a set statement");
                return EXIT_UNSUPPORTED;
            }
        };
        let translated = logic_to_set(&formula);
        println!("{}", render(&translated));
        if args.check {
            return check_translation(&translated, &opts);
        }
    }
    0
}

fn check_translation(stmt: &Statement, opts: &DecideOptions) -> u8 {
    match decide(stmt, opts) {
        Ok(decision) => {
            println!("{}", verdict_summary(&decision.verdict));
            if let Verdict::Invalid { witness } = &decision.verdict {
                print_witness(stmt, witness);
            }
            u8::from(decision.verdict.is_invalid())
        }
        Err(err) => {
            eprintln!("error: {err}");
            decide_error_code(&err)
        }
    }
}

fn cmd_explain(args: &ExplainArgs) -> u8 {
    let stmt = match parse_statement_in(&args.statement, ParseMode::Auto) {
        Ok(s) => s,
        Err(err) => {
            report_parse_error(&args.statement, &err);
            return parse_error_code(&err);
        }
    };
    let rows = match explain(&stmt) {
        Ok(rows) => rows,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_UNSUPPORTED;
        }
    };
    let vars: Vec<String> = free_symbols(&stmt).vars;
    println!("{} | L R", vars.join(" "));
    let mut disagreements = 0usize;
    for row in &rows {
        let cells: Vec<String> = vars
            .iter()
            .map(|name| {
                let value = row
                    .assignment
                    .get(&extremes_core::SymbolKey::plain(name))
                    .unwrap_or(false);
                format!("{:1$}", value as u8, name.len())
            })
            .collect();
        let mark = if row.agrees() { "" } else { "  <- differs" };
        println!(
            "{} | {} {}{mark}",
            cells.join(" "),
            row.lhs as u8,
            row.rhs as u8
        );
        if !row.agrees() {
            disagreements += 1;
        }
    }
    if disagreements == 0 {
        println!("{} cases, all agree", rows.len());
    } else {
        println!("{} cases, {disagreements} disagree", rows.len());
    }
    0
}

fn cmd_oracle(args: &OracleArgs) -> u8 {
    let stmt = match parse_statement_in(&args.statement, ParseMode::Auto) {
        Ok(s) => s,
        Err(err) => {
            report_parse_error(&args.statement, &err);
            return parse_error_code(&err);
        }
    };
    let opts = DecideOptions {
        dyadic_bound: args.bound,
        jobs: args.jobs,
    };
    let fast = match decide(&stmt, &opts) {
        Ok(d) => d,
        Err(err) => {
            eprintln!("error: {err}");
            return decide_error_code(&err);
        }
    };
    let limits = OracleLimits {
        max_universe: args.max_universe,
        max_index_set: args.max_index,
        model_budget: args.budget,
        jobs: args.jobs,
    };
    let slow = match check_by_model(&stmt, &limits) {
        Ok(v) => v,
        Err(OracleError::BudgetExceeded { needed, budget }) => {
            eprintln!("error: oracle budget exceeded ({needed} models requested, budget {budget})");
            return EXIT_BUDGET;
        }
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_UNSUPPORTED;
        }
    };

    println!("engine: {}", verdict_summary(&fast.verdict));
    println!("oracle: {}", verdict_summary(&slow));

    let mut agree = fast.verdict.is_invalid() == slow.is_invalid();
    if let Verdict::Invalid { witness } = &fast.verdict {
        match falsifies(&stmt, witness) {
            Ok(true) => {}
            _ => {
                eprintln!("error: engine witness does not falsify the statement");
                agree = false;
            }
        }
    }
    if let Verdict::Invalid { witness } = &slow {
        match falsifies(&stmt, witness) {
            Ok(true) => {}
            _ => {
                eprintln!("error: oracle witness does not falsify the statement");
                agree = false;
            }
        }
    }

    if agree {
        println!("agreement: verdicts match");
        0
    } else {
        println!("DISAGREEMENT: engine and oracle verdicts differ");
        EXIT_DISAGREEMENT
    }
}
