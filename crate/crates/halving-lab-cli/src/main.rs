//! Command-line front end: reproducible halving-edge experiments with
//! machine-readable output.
//!
//! Exit codes: 0 when every hard assertion (identity, rotation lemma,
//! dominance, oracle equivalence where invoked) passes, 1 when one fails or
//! a sweep row errors, 2 on usage or I/O problems.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use halving_lab::audit::verify_identity;
use halving_lab::bound::{asymptotic_probe, bound_report_from_parts, BoundPreset};
use halving_lab::crossings::crossing_number;
use halving_lab::cubic::{solve_cubic, CubicPolynomial};
use halving_lab::fileio::{read_pointset, write_pointset};
use halving_lab::geom::PointSet;
use halving_lab::graph::{degree_histogram, halving_edges_rotational};
use halving_lab::pointgen::{generate, Gamma, GeneratorSpec, Kind};
use halving_lab::report::{
    analyze, csv_row, csv_row_bound_only, render_json, render_text, AnalysisReport,
    AnalyzeOptions, CSV_HEADER,
};

/// Brute-force oracle cross-check is automatic up to this size; the O(n^3)
/// enumeration stays under a second here.
const ORACLE_LIMIT: usize = 600;

#[derive(Parser)]
#[command(
    name = "halving-lab",
    version,
    about = "Halving-edge graphs: exact enumeration, crossing identities, and the n^(4/3) bound"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a reproducible general-position point set file.
    Generate(GenerateArgs),
    /// Run the full measurement, audit, and bound chain on one point set.
    Analyze(AnalyzeArgs),
    /// Run only the audits: identity, lemma suite, rotation lemma, chains.
    Audit(AuditArgs),
    /// Stream a CSV corpus sweep over n values and seeds.
    Sweep(SweepArgs),
    /// Solve a cubic polynomial and print its real roots.
    SolveCubic(SolveCubicArgs),
    /// Tabulate the bound root m_star and m_star / n^(4/3) over an n list.
    Probe(ProbeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Random,
    Convex,
    Dense,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Random => Kind::RandomSquare,
            KindArg::Convex => Kind::ConvexPosition,
            KindArg::Dense => Kind::DenseGrid,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    PaperLiteral,
    Corrected,
    Both,
}

impl PresetArg {
    fn presets(self) -> Vec<BoundPreset> {
        match self {
            PresetArg::PaperLiteral => vec![BoundPreset::PaperLiteral],
            PresetArg::Corrected => vec![BoundPreset::Corrected],
            PresetArg::Both => BoundPreset::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AuditFormatArg {
    Json,
    Text,
}

/// Where the points come from: a file, or generator flags.
#[derive(Args)]
struct SourceArgs {
    /// Point-set file to read; omit it to generate points instead.
    #[arg(value_name = "FILE")]
    input: Option<PathBuf>,
    /// Number of points to generate (must be even).
    #[arg(long)]
    n: Option<usize>,
    /// Generator family for generated sets.
    #[arg(long, value_enum, default_value_t = KindArg::Random)]
    kind: KindArg,
    /// RNG seed; HALVING_LAB_SEED supplies the default.
    #[arg(long, env = "HALVING_LAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Coordinate half-width of the generated set.
    #[arg(long)]
    bbox: Option<i64>,
    /// Density ratio for --kind dense (N, N/D, or a short decimal).
    #[arg(long)]
    gamma: Option<String>,
}

impl SourceArgs {
    fn load(&self) -> Result<(PointSet, String, Option<u64>), String> {
        if let Some(path) = &self.input {
            let ps = read_pointset(path).map_err(|e| format!("{}: {e}", path.display()))?;
            return Ok((ps, format!("file:{}", path.display()), None));
        }
        let n = self
            .n
            .ok_or("either a point-set file or --n is required")?;
        let spec = build_spec(self.kind, n, self.seed, self.bbox, &self.gamma)?;
        let ps = generate(&spec).map_err(|e| e.to_string())?;
        Ok((ps, Kind::from(self.kind).to_string(), Some(self.seed)))
    }
}

fn build_spec(
    kind: KindArg,
    n: usize,
    seed: u64,
    bbox: Option<i64>,
    gamma: &Option<String>,
) -> Result<GeneratorSpec, String> {
    let mut spec = GeneratorSpec::new(kind.into(), n, seed);
    if let Some(b) = bbox {
        spec = spec.with_bbox(b);
    }
    if let Some(g) = gamma {
        spec = spec.with_gamma(g.parse::<Gamma>()?);
    }
    Ok(spec)
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of points (must be even).
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = KindArg::Random)]
    kind: KindArg,
    #[arg(long, env = "HALVING_LAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    bbox: Option<i64>,
    #[arg(long)]
    gamma: Option<String>,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = PresetArg::Corrected)]
    preset: PresetArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip enumeration and audits; report only the cubic and its root.
    #[arg(long)]
    bound_only: bool,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = AuditFormatArg::Text)]
    format: AuditFormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// n values: "4..40:2" (inclusive range with step), "1000,10000", or a mix.
    #[arg(long)]
    n_list: String,
    /// Seeds per n, counted upward from --seed.
    #[arg(long, default_value_t = 1)]
    seeds_per_n: u64,
    #[arg(long, value_enum, default_value_t = KindArg::Random)]
    kind: KindArg,
    #[arg(long, env = "HALVING_LAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = PresetArg::Corrected)]
    preset: PresetArg,
    #[arg(long)]
    bbox: Option<i64>,
    #[arg(long)]
    gamma: Option<String>,
    /// Skip enumeration; emit one m_star row per (n, preset).
    #[arg(long)]
    bound_only: bool,
    /// Worker threads for the sweep; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveCubicArgs {
    #[arg(allow_negative_numbers = true)]
    a: f64,
    #[arg(allow_negative_numbers = true)]
    b: f64,
    #[arg(allow_negative_numbers = true)]
    c: f64,
    #[arg(allow_negative_numbers = true)]
    d: f64,
}

#[derive(Args)]
struct ProbeArgs {
    /// n values, same syntax as sweep's --n-list.
    #[arg(long)]
    n_list: String,
    #[arg(long, value_enum, default_value_t = PresetArg::Corrected)]
    preset: PresetArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::SolveCubic(args) => cmd_solve_cubic(args),
        Command::Probe(args) => cmd_probe(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// One stderr line per failed hard assertion, so exit code 1 is
/// self-explaining even when stdout is CSV or redirected to a file.
fn report_exit(report: &AnalysisReport) -> ExitCode {
    if report.hard_assertions_pass() {
        return ExitCode::SUCCESS;
    }
    if !report.identity_holds {
        eprintln!("assertion failed: crossing identity");
    }
    if !report.rotation_passes {
        eprintln!("assertion failed: rotation lemma");
    }
    if report.oracle_match == Some(false) {
        eprintln!("assertion failed: enumeration oracle equivalence");
    }
    for b in &report.bounds {
        if !b.dominance {
            eprintln!("assertion failed: dominance[{}]", b.preset);
        }
    }
    ExitCode::FAILURE
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, content).map_err(|e| format!("writing {}: {e}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode, String> {
    let spec = build_spec(args.kind, args.n, args.seed, args.bbox, &args.gamma)?;
    let ps = generate(&spec).map_err(|e| e.to_string())?;
    write_pointset(&ps, &args.out).map_err(|e| format!("writing {}: {e}", args.out.display()))?;
    println!("wrote {} points to {}", ps.n(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode, String> {
    if args.bound_only {
        let n = args
            .source
            .n
            .ok_or("--bound-only needs --n (no enumeration, so no input file)")?;
        let mut content = format!("{CSV_HEADER}\n");
        for preset in args.preset.presets() {
            let m_star =
                halving_lab::bound::halving_upper_bound(n, preset).map_err(|e| e.to_string())?;
            content.push_str(&csv_row_bound_only(n, preset, m_star));
            content.push('\n');
        }
        emit(&args.out, &content)?;
        return Ok(ExitCode::SUCCESS);
    }
    let (ps, origin, seed) = args.source.load()?;
    let opts = AnalyzeOptions {
        presets: args.preset.presets(),
        check_oracle: ps.n() <= ORACLE_LIMIT,
    };
    let report = analyze(&ps, &origin, seed, &opts).map_err(|e| e.to_string())?;
    let content = match args.format {
        FormatArg::Json => render_json(&report),
        FormatArg::Text => render_text(&report),
        FormatArg::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for b in &report.bounds {
                s.push_str(&csv_row(b));
                s.push('\n');
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(report_exit(&report))
}

fn cmd_audit(args: AuditArgs) -> Result<ExitCode, String> {
    let (ps, origin, seed) = args.source.load()?;
    let opts = AnalyzeOptions {
        presets: Vec::new(),
        check_oracle: ps.n() <= ORACLE_LIMIT,
    };
    let report = analyze(&ps, &origin, seed, &opts).map_err(|e| e.to_string())?;
    let content = match args.format {
        AuditFormatArg::Json => render_json(&report),
        AuditFormatArg::Text => render_text(&report),
    };
    emit(&args.out, &content)?;
    Ok(report_exit(&report))
}

/// Parses "4..40:2", "1000,10000", "8", and comma-separated mixes; returns
/// the values sorted ascending without duplicates.
fn parse_n_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (range, step) = match part.split_once(':') {
            Some((r, st)) => {
                let step: usize = st
                    .parse()
                    .map_err(|_| format!("bad step in '{part}'"))?;
                if step == 0 {
                    return Err(format!("zero step in '{part}'"));
                }
                (r, step)
            }
            None => (part, 1),
        };
        match range.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.parse().map_err(|_| format!("bad range start in '{part}'"))?;
                let b: usize = b.parse().map_err(|_| format!("bad range end in '{part}'"))?;
                let mut v = a;
                while v <= b {
                    out.push(v);
                    v += step;
                }
            }
            None => out.push(range.parse().map_err(|_| format!("bad n '{part}'"))?),
        }
    }
    if out.is_empty() {
        return Err("empty n list".to_string());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let ns = parse_n_list(&args.n_list)?;
    let presets = args.preset.presets();

    if args.bound_only {
        let mut content = format!("{CSV_HEADER}\n");
        for &n in &ns {
            for &preset in &presets {
                let m_star = halving_lab::bound::halving_upper_bound(n, preset)
                    .map_err(|e| format!("n={n}: {e}"))?;
                content.push_str(&csv_row_bound_only(n, preset, m_star));
                content.push('\n');
            }
        }
        emit(&args.out, &content)?;
        eprintln!("sweep: {} bound-only rows", (content.lines().count() - 1));
        return Ok(ExitCode::SUCCESS);
    }

    let gamma = match &args.gamma {
        Some(g) => Some(g.parse::<Gamma>()?),
        None => None,
    };
    let mut instances = Vec::new();
    for &n in &ns {
        for s in 0..args.seeds_per_n {
            instances.push((n, args.seed + s));
        }
    }

    let work = |&(n, seed): &(usize, u64)| -> Result<(Vec<String>, bool, bool), String> {
        let mut spec = GeneratorSpec::new(args.kind.into(), n, seed);
        if let Some(b) = args.bbox {
            spec = spec.with_bbox(b);
        }
        if let Some(g) = gamma {
            spec = spec.with_gamma(g);
        }
        let tag = |e: &dyn std::fmt::Display| format!("n={n} seed={seed}: {e}");
        let ps = generate(&spec).map_err(|e| tag(&e))?;
        let g = halving_edges_rotational(&ps).map_err(|e| tag(&e))?;
        let h = degree_histogram(&g);
        let cr = crossing_number(&g);
        let identity = verify_identity(&ps, &g, &cr).map_err(|e| tag(&e))?;
        let mut rows = Vec::with_capacity(presets.len());
        let mut dominance_ok = true;
        for &preset in &presets {
            let b = bound_report_from_parts(n, g.m(), h.sum_sq, h.alpha, cr.cr, identity.holds, preset)
                .map_err(|e| tag(&e))?;
            dominance_ok &= b.dominance;
            rows.push(csv_row(&b));
        }
        Ok((rows, identity.holds, dominance_ok))
    };
    let run = || instances.par_iter().map(work).collect::<Vec<_>>();
    let results = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| e.to_string())?
            .install(run),
        None => run(),
    };

    let mut content = format!("{CSV_HEADER}\n");
    let (mut rows_out, mut identity_ok, mut failures, mut assertion_failures) = (0usize, 0usize, 0usize, 0usize);
    for result in &results {
        match result {
            Ok((rows, identity, dominance)) => {
                for row in rows {
                    content.push_str(row);
                    content.push('\n');
                    rows_out += 1;
                }
                identity_ok += usize::from(*identity);
                if !identity || !dominance {
                    assertion_failures += 1;
                }
            }
            Err(msg) => {
                eprintln!("sweep row failed: {msg}");
                failures += 1;
            }
        }
    }
    emit(&args.out, &content)?;
    let measured = instances.len() - failures;
    let rate = if measured == 0 {
        0.0
    } else {
        100.0 * identity_ok as f64 / measured as f64
    };
    eprintln!(
        "sweep: {rows_out} rows, identity pass rate {rate:.1}% ({identity_ok}/{measured} instances)"
    );
    Ok(if failures == 0 && assertion_failures == 0 && measured > 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

/// Up to `digits` significant digits, trailing zeros trimmed.
fn sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn cmd_solve_cubic(args: SolveCubicArgs) -> Result<ExitCode, String> {
    let poly = CubicPolynomial::new(args.a, args.b, args.c, args.d).map_err(|e| e.to_string())?;
    let solution = solve_cubic(&poly);
    let roots = solution
        .roots
        .iter()
        .map(|&r| sig_digits(r, 12))
        .collect::<Vec<_>>()
        .join(" ");
    println!("{roots}, {}", solution.class);
    Ok(ExitCode::SUCCESS)
}

#[derive(serde::Serialize)]
struct ProbeOut {
    n: usize,
    preset: BoundPreset,
    m_star: f64,
    ratio: f64,
}

fn cmd_probe(args: ProbeArgs) -> Result<ExitCode, String> {
    let ns = parse_n_list(&args.n_list)?;
    let presets = args.preset.presets();
    let mut tables = Vec::with_capacity(presets.len());
    for &preset in &presets {
        tables.push(asymptotic_probe(&ns, preset).map_err(|e| e.to_string())?);
    }

    // n-major, preset-minor, so per-n comparisons sit on adjacent rows
    let mut flat = Vec::with_capacity(ns.len() * presets.len());
    for i in 0..ns.len() {
        for (&preset, table) in presets.iter().zip(&tables) {
            let row = table[i];
            flat.push(ProbeOut {
                n: row.n,
                preset,
                m_star: row.m_star,
                ratio: row.ratio,
            });
        }
    }

    let content = match args.format {
        FormatArg::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for r in &flat {
                s.push_str(&csv_row_bound_only(r.n, r.preset, r.m_star));
                s.push('\n');
            }
            s
        }
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&flat).expect("probe rows serialize");
            s.push('\n');
            s
        }
        FormatArg::Text => {
            let mut s = format!("{:>10}  {:<13}  {:>20}  {:>10}\n", "n", "preset", "m_star", "ratio");
            for r in &flat {
                s.push_str(&format!(
                    "{:>10}  {:<13}  {:>20}  {:>10}\n",
                    r.n,
                    r.preset.to_string(),
                    sig_digits(r.m_star, 12),
                    sig_digits(r.ratio, 6),
                ));
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_list_forms() {
        assert_eq!(parse_n_list("4..10:2").unwrap(), vec![4, 6, 8, 10]);
        assert_eq!(parse_n_list("1000,10000").unwrap(), vec![1000, 10000]);
        assert_eq!(parse_n_list("8").unwrap(), vec![8]);
        assert_eq!(parse_n_list("10,4..6:2").unwrap(), vec![4, 6, 10]);
        assert_eq!(parse_n_list("4,4,4").unwrap(), vec![4]);
        assert!(parse_n_list("").is_err());
        assert!(parse_n_list("4..10:0").is_err());
        assert!(parse_n_list("x").is_err());
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(sig_digits(1.0, 12), "1");
        assert_eq!(sig_digits(2.0, 12), "2");
        assert_eq!(sig_digits(-3.0, 12), "-3");
        assert_eq!(sig_digits(0.0, 12), "0");
        assert_eq!(sig_digits(1.5, 12), "1.5");
        assert_eq!(sig_digits(0.25, 12), "0.25");
        assert_eq!(sig_digits(1.0 / 3.0, 12), "0.333333333333");
    }
}
