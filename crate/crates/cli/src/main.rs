//! Command-line front end: search, verification, form instantiation and
//! matching, and catalog listing with machine-readable reports.
//!
//! Exit codes: 0 success/verified, 1 verification failed or instantiation
//! rejected (a counterexample or reason is emitted), 2 usage or capacity
//! error. JSON written via --json is byte-stable across reruns and across
//! --threads values; timing goes to stdout and CSV only.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use zerosum_core::{
    classify_extremal, enumerate_report, group_catalog, instantiate_form, match_subset,
    min_sigma, to_json_pretty, verify_class_shapes, verify_duplicate_sums, verify_lower_bounds,
    verify_multiplicity_bound, verify_quotient_bound, CatalogEntry, Error, FormId,
    FormMatchEntry, GroupSpec, InstantiateReport, SearchOptions, SearchReport, SubsetSeq,
    SweepEntry, VerifyOutcome, DEFAULT_MAX_ORDER, SEARCH_CSV_HEADER,
};

#[derive(Parser)]
#[command(
    name = "zerosum",
    version,
    about = "Exhaustive search and verification for subset sums of zero-sum free sets over finite abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum |Σ(S)| over zero-sum free k-subsets, with witnesses
    MinSigma(SearchArgs),
    /// Count (and with --witnesses list) the zero-sum free k-subsets
    Enumerate(EnumerateArgs),
    /// Extremal classification biconditional for one (group, k, target)
    Classify(ClassifyArgs),
    /// Verification suites; exit 1 with a counterexample on any failure
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Instantiate or reverse-match the extremal families
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Abelian group isomorphism types up to an order bound
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Group spec like Z20 or Z2xZ10; without it, sweep the catalog
    #[arg(long)]
    group: Option<String>,
    /// Catalog bound when --group is absent; parse capacity otherwise
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long)]
    k: usize,
    /// Search shard workers
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Include the full witness list in output
    #[arg(long)]
    witnesses: bool,
    /// Unit-multiplier reduction for cyclic groups; results match default mode
    #[arg(long)]
    fast_cyclic: bool,
    /// Write the full report as JSON
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write a CSV summary
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// List every subset, not just the count
    #[arg(long)]
    witnesses: bool,
    #[arg(long)]
    fast_cyclic: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    target: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Size lower bounds plus duplicate-sum exclusions
    Bounds(BoundsArgs),
    /// Classification biconditionals at (6,19), (5,13), (4,8)
    Classification(ClassificationArgs),
    /// Equal-sum class sizes and shape coverage for 6-subsets
    Shapes(ScopeArgs),
    /// Quotient inequality over random subsets and splits
    Quotient(QuotientArgs),
    /// Multiplicity bound for long sequences over an odd cyclic group
    Multiplicity(MultiplicityArgs),
}

#[derive(Args)]
struct ScopeArgs {
    /// Single group to check; without it, every catalog group up to --max-order
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    scope: ScopeArgs,
    /// Single subset size; default checks every size in [1,7]
    #[arg(long)]
    k: Option<usize>,
    /// Fuzz trials for the duplicate-sum clause
    #[arg(long, default_value_t = 200)]
    trials: u64,
}

#[derive(Args)]
struct ClassificationArgs {
    #[command(flatten)]
    scope: ScopeArgs,
    /// Subset size; requires --target, default runs all three pairs
    #[arg(long, requires = "target")]
    k: Option<usize>,
    #[arg(long, requires = "k")]
    target: Option<usize>,
}

#[derive(Args)]
struct QuotientArgs {
    #[command(flatten)]
    scope: ScopeArgs,
    /// Random (subset, split) trials per group
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

#[derive(Args)]
struct MultiplicityArgs {
    /// Odd cyclic group Z<n> with 9 <= n <= 21
    #[arg(long)]
    group: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FormsCmd {
    /// Build one family instance from parameters
    Instantiate(InstantiateArgs),
    /// Every family parameterization matching a subset
    Match(MatchArgs),
}

#[derive(Args)]
struct InstantiateArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    max_order: Option<u64>,
    /// Family id: s6-i..s6-v, s5-i, s5-ii, s4-i
    #[arg(long)]
    form: String,
    /// Comma-separated parameter elements, e.g. `1` or `(0,1),(1,1)`
    #[arg(long)]
    params: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct MatchArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    max_order: Option<u64>,
    /// Subset as comma-separated elements, e.g. `1,3,4,5,6,18`
    #[arg(long)]
    subset: String,
    /// Comma-separated family ids; default: every family of the subset's size
    #[arg(long)]
    forms: Option<String>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long)]
    max_order: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

enum CliError {
    Core(Error),
    Io(std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::FormRejected(_) => 1,
                _ => 2,
            }
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn parse_group(text: &str, max_order: Option<u64>) -> Result<Arc<GroupSpec>, CliError> {
    let limit = max_order.unwrap_or(DEFAULT_MAX_ORDER);
    Ok(Arc::new(GroupSpec::parse_with_limit(text, limit)?))
}

fn scope_groups(scope: &ScopeArgs) -> Result<Vec<Arc<GroupSpec>>, CliError> {
    match (&scope.group, scope.max_order) {
        (Some(text), max) => Ok(vec![parse_group(text, max)?]),
        (None, Some(bound)) => Ok(group_catalog(bound as usize).into_iter().map(Arc::new).collect()),
        (None, None) => Err(CliError::Usage(
            "provide --group or --max-order".to_string(),
        )),
    }
}

fn write_json<T: serde::Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, to_json_pretty(value))?;
    }
    Ok(())
}

fn write_text(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn opt_num(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |m| m.to_string())
}

fn print_report(r: &SearchReport, list_witnesses: bool) {
    println!(
        "group={} k={} zsf_count={} min_sigma={} witness_count={} elapsed_ms={} shards={}",
        r.group,
        r.k,
        r.zsf_count,
        opt_num(r.min_sigma),
        r.witness_count,
        r.elapsed_ms,
        r.shards,
    );
    if list_witnesses {
        for w in &r.witnesses {
            let mut line = format!("witness subset={} sigma_size={}", w.subset, w.sigma_size);
            for m in &w.matches {
                let _ = write!(line, " {}[{}]", m.form, m.params.join(";"));
            }
            println!("{line}");
        }
    }
}

fn print_outcome(o: &VerifyOutcome) {
    println!("claim={} status={} {}", o.claim, o.status, o.detail);
    if let Some(cx) = &o.counterexample {
        println!(
            "counterexample: group={} subset={} info={}",
            cx.group, cx.subset, cx.info
        );
    }
}

fn outcomes_exit(outcomes: &[VerifyOutcome]) -> i32 {
    if outcomes.iter().all(VerifyOutcome::passed) {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::MinSigma(args) => run_min_sigma(args),
        Command::Enumerate(args) => run_enumerate(args),
        Command::Classify(args) => run_classify(args),
        Command::Verify(cmd) => run_verify(cmd),
        Command::Forms(cmd) => run_forms(cmd),
        Command::Catalog(args) => run_catalog(args),
    }
}

fn run_min_sigma(args: SearchArgs) -> Result<i32, CliError> {
    let opts = SearchOptions {
        threads: args.threads,
        unit_reduced: args.fast_cyclic,
    };
    match &args.group {
        Some(text) => {
            let group = parse_group(text, args.max_order)?;
            let mut report = min_sigma(&group, args.k, opts)?;
            print_report(&report, args.witnesses);
            let mut csv = String::from(SEARCH_CSV_HEADER);
            csv.push('\n');
            csv.push_str(&zerosum_core::search_csv_row(&report));
            csv.push('\n');
            write_text(&args.csv, &csv)?;
            if !args.witnesses {
                report.witnesses.clear();
            }
            write_json(&args.json, &report)?;
            Ok(0)
        }
        None => {
            let bound = args.max_order.ok_or_else(|| {
                CliError::Usage("provide --group or --max-order".to_string())
            })?;
            if args.fast_cyclic {
                return Err(CliError::Usage(
                    "--fast-cyclic applies to a single cyclic --group".to_string(),
                ));
            }
            let mut entries = Vec::new();
            let mut csv = String::from(SEARCH_CSV_HEADER);
            csv.push('\n');
            for group in group_catalog(bound as usize) {
                let group = Arc::new(group);
                if args.k >= group.order() {
                    continue;
                }
                let report = min_sigma(&group, args.k, opts)?;
                let entry = SweepEntry::from_report(&report);
                println!(
                    "group={} k={} zsf_count={} min_sigma={} conjecture={} attains={} elapsed_ms={}",
                    entry.group,
                    entry.k,
                    entry.zsf_count,
                    opt_num(entry.min_sigma),
                    entry.conjecture,
                    entry
                        .attains_conjecture
                        .map_or("none".to_string(), |b| b.to_string()),
                    entry.elapsed_ms,
                );
                csv.push_str(&zerosum_core::search_csv_row(&report));
                csv.push('\n');
                entries.push(entry);
            }
            write_text(&args.csv, &csv)?;
            write_json(&args.json, &entries)?;
            Ok(0)
        }
    }
}

fn run_enumerate(args: EnumerateArgs) -> Result<i32, CliError> {
    let group = parse_group(&args.group, args.max_order)?;
    let opts = SearchOptions {
        threads: args.threads,
        unit_reduced: args.fast_cyclic,
    };
    let report = enumerate_report(&group, args.k, opts, args.witnesses)?;
    println!(
        "group={} k={} zsf_count={} elapsed_ms={} shards={}",
        report.group, report.k, report.zsf_count, report.elapsed_ms, report.shards,
    );
    for s in &report.subsets {
        println!("subset={s}");
    }
    write_json(&args.json, &report)?;
    Ok(0)
}

fn run_classify(args: ClassifyArgs) -> Result<i32, CliError> {
    let group = parse_group(&args.group, args.max_order)?;
    let outcome = classify_extremal(
        &group,
        args.k,
        args.target,
        SearchOptions::with_threads(args.threads),
    )?;
    print_outcome(&outcome);
    write_json(&args.json, &outcome)?;
    Ok(outcomes_exit(std::slice::from_ref(&outcome)))
}

fn run_verify(cmd: VerifyCmd) -> Result<i32, CliError> {
    match cmd {
        VerifyCmd::Bounds(args) => {
            let groups = scope_groups(&args.scope)?;
            let ks: Vec<usize> = match args.k {
                Some(k) => vec![k],
                None => (1..=7).collect(),
            };
            let opts = SearchOptions::with_threads(args.scope.threads);
            let mut outcomes = Vec::new();
            for group in &groups {
                outcomes.extend(verify_lower_bounds(group, &ks, opts)?);
                outcomes.push(verify_duplicate_sums(group, args.trials)?);
            }
            for o in &outcomes {
                print_outcome(o);
            }
            write_json(&args.scope.json, &outcomes)?;
            Ok(outcomes_exit(&outcomes))
        }
        VerifyCmd::Classification(args) => {
            let groups = scope_groups(&args.scope)?;
            let pairs: Vec<(usize, usize)> = match (args.k, args.target) {
                (Some(k), Some(t)) => vec![(k, t)],
                _ => vec![(6, 19), (5, 13), (4, 8)],
            };
            let opts = SearchOptions::with_threads(args.scope.threads);
            let mut outcomes = Vec::new();
            for group in &groups {
                for &(k, target) in &pairs {
                    outcomes.push(classify_extremal(group, k, target, opts)?);
                }
            }
            for o in &outcomes {
                print_outcome(o);
            }
            write_json(&args.scope.json, &outcomes)?;
            Ok(outcomes_exit(&outcomes))
        }
        VerifyCmd::Shapes(args) => {
            let groups = scope_groups(&args)?;
            let opts = SearchOptions::with_threads(args.threads);
            let mut outcomes = Vec::new();
            for group in &groups {
                outcomes.push(verify_class_shapes(group, opts)?);
            }
            for o in &outcomes {
                print_outcome(o);
            }
            write_json(&args.json, &outcomes)?;
            Ok(outcomes_exit(&outcomes))
        }
        VerifyCmd::Quotient(args) => {
            let groups = scope_groups(&args.scope)?;
            let mut outcomes = Vec::new();
            for group in &groups {
                outcomes.push(verify_quotient_bound(group, args.trials)?);
            }
            for o in &outcomes {
                print_outcome(o);
            }
            write_json(&args.scope.json, &outcomes)?;
            Ok(outcomes_exit(&outcomes))
        }
        VerifyCmd::Multiplicity(args) => {
            let group = parse_group(&args.group, None)?;
            if group.moduli().len() != 1 {
                return Err(CliError::Usage(
                    "multiplicity verification takes a cyclic group Z<n>".to_string(),
                ));
            }
            let outcome = verify_multiplicity_bound(group.order())?;
            print_outcome(&outcome);
            write_json(&args.json, &outcome)?;
            Ok(outcomes_exit(std::slice::from_ref(&outcome)))
        }
    }
}

fn run_forms(cmd: FormsCmd) -> Result<i32, CliError> {
    match cmd {
        FormsCmd::Instantiate(args) => {
            let group = parse_group(&args.group, args.max_order)?;
            let form = FormId::from_token(&args.form)
                .ok_or_else(|| CliError::Usage(format!("unknown form `{}`", args.form)))?;
            let params = group.parse_elements(&args.params)?;
            let subset = instantiate_form(&group, form, &params)?;
            let report = InstantiateReport {
                form: form.token().to_string(),
                params: params.iter().map(|p| p.to_string()).collect(),
                subset: subset.render(),
                sigma_size: subset.sigma_set()?.popcount(),
            };
            println!(
                "form={} params={} subset={} sigma_size={}",
                report.form,
                report.params.join(";"),
                report.subset,
                report.sigma_size,
            );
            write_json(&args.json, &report)?;
            Ok(0)
        }
        FormsCmd::Match(args) => {
            let group = parse_group(&args.group, args.max_order)?;
            let subset = SubsetSeq::parse(&group, &args.subset)?;
            let ids: Vec<FormId> = match &args.forms {
                Some(text) => text
                    .split(',')
                    .map(|t| {
                        FormId::from_token(t.trim())
                            .ok_or_else(|| CliError::Usage(format!("unknown form `{t}`")))
                    })
                    .collect::<Result<_, _>>()?,
                None => {
                    let ids = FormId::families_for_size(subset.len());
                    if ids.is_empty() {
                        return Err(CliError::Usage(format!(
                            "no families describe subsets of size {}",
                            subset.len()
                        )));
                    }
                    ids.to_vec()
                }
            };
            let matches = match_subset(&group, &subset, &ids)?;
            let entries: Vec<FormMatchEntry> = matches
                .iter()
                .map(|m| FormMatchEntry {
                    form: m.form.token().to_string(),
                    params: m.params.iter().map(|p| p.to_string()).collect(),
                })
                .collect();
            if entries.is_empty() {
                println!("no matches");
            }
            for e in &entries {
                println!("match form={} params={}", e.form, e.params.join(";"));
            }
            write_json(&args.json, &entries)?;
            Ok(0)
        }
    }
}

fn run_catalog(args: CatalogArgs) -> Result<i32, CliError> {
    let entries: Vec<CatalogEntry> = group_catalog(args.max_order as usize)
        .iter()
        .map(|g| CatalogEntry {
            group: g.render(),
            order: g.order(),
        })
        .collect();
    for e in &entries {
        println!("group={} order={}", e.group, e.order);
    }
    write_json(&args.json, &entries)?;
    Ok(0)
}
