//! One-stop analysis of a point set and the renderings consumed by the CLI:
//! versioned JSON, the fixed sweep/probe CSV schema, and a text summary.

use serde::Serialize;

use crate::audit::{
    audit_lemmas, convex_chain_decompose, lovasz_rotation_check, verify_identity, AuditError,
};
use crate::bound::{bound_report_from_parts, BoundError, BoundPreset, BoundReport};
use crate::crossings::crossing_number;
use crate::geom::PointSet;
use crate::graph::{
    degree_histogram, halving_edges_bruteforce, halving_edges_rotational, GraphError,
};

/// Version stamp carried by every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// Header of the sweep/probe CSV stream; one row per (instance, preset).
pub const CSV_HEADER: &str =
    "n,preset,m_star,ratio,measured_m,measured_cr,M,alpha,identity_holds,dominance";

#[derive(Debug, thiserror::Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// What to run and compare during [`analyze`].
#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    /// Bound presets to evaluate, in output order.
    pub presets: Vec<BoundPreset>,
    /// Re-enumerate with the brute-force oracle and compare edge sets.
    pub check_oracle: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> AnalyzeOptions {
        AnalyzeOptions {
            presets: vec![BoundPreset::Corrected],
            check_oracle: false,
        }
    }
}

/// Aggregated output of the whole measurement and audit chain on one point
/// set. Every numeric field is the exact value produced by the owning
/// module; nothing is re-rounded on the way in.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    /// Where the points came from: a generator name or "file:<path>".
    pub generator: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    /// Sparse (degree, count) pairs, degree ascending.
    pub degree_histogram: Vec<(usize, usize)>,
    pub alpha: usize,
    /// M = sum of squared degrees.
    pub sum_sq_degrees: u64,
    pub cr: u64,
    pub identity_lhs: u64,
    pub identity_rhs: u64,
    pub identity_holds: bool,
    pub lemma_sum_sq_consistent: bool,
    pub lemma_max_degree_bound: bool,
    /// First degree whose vertex count is even, if any (recorded, not
    /// asserted; a convex quadrilateral already produces one).
    pub lemma_odd_counts_violation: Option<usize>,
    /// First adjacent degree pair j < i with n_i > n_j, if any.
    pub lemma_monotone_counts_violation: Option<(usize, usize)>,
    /// Probes made by the Lovász rotation lemma check (4 per edge).
    pub rotation_probes: usize,
    pub rotation_passes: bool,
    pub chain_count: usize,
    pub chain_max_pairwise_crossings: usize,
    pub chain_merges_vetoed: usize,
    pub chains_convex: bool,
    /// Edge-set equality of the rotational and brute-force enumerators;
    /// None when the oracle was not invoked.
    pub oracle_match: Option<bool>,
    /// One entry per requested preset, in request order.
    pub bounds: Vec<BoundReport>,
}

impl AnalysisReport {
    /// The hard assertions behind the process exit code: identity, the
    /// rotation lemma, dominance under every requested preset, and oracle
    /// equivalence where invoked.
    pub fn hard_assertions_pass(&self) -> bool {
        self.identity_holds
            && self.rotation_passes
            && self.oracle_match.unwrap_or(true)
            && self.bounds.iter().all(|b| b.dominance)
    }
}

/// Runs enumeration, histogram, crossings, identity, lemma audits, the
/// rotation check, chain decomposition, and the bound comparison.
pub fn analyze(
    ps: &PointSet,
    generator: &str,
    seed: Option<u64>,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, AnalyzeError> {
    let g = halving_edges_rotational(ps)?;
    let oracle_match = if opts.check_oracle {
        let brute = halving_edges_bruteforce(ps)?;
        Some(brute.edges() == g.edges())
    } else {
        None
    };
    let h = degree_histogram(&g);
    let cr = crossing_number(&g);
    let identity = verify_identity(ps, &g, &cr)?;
    let lemmas = audit_lemmas(&g, &h);
    let rotation = lovasz_rotation_check(ps, &g);
    let chains = convex_chain_decompose(ps, &g);
    let mut bounds = Vec::with_capacity(opts.presets.len());
    for &preset in &opts.presets {
        bounds.push(bound_report_from_parts(
            ps.n(),
            g.m(),
            h.sum_sq,
            h.alpha,
            cr.cr,
            identity.holds,
            preset,
        )?);
    }
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        generator: generator.to_string(),
        seed,
        n: ps.n(),
        m: g.m(),
        degree_histogram: h.pairs(),
        alpha: h.alpha,
        sum_sq_degrees: h.sum_sq,
        cr: cr.cr,
        identity_lhs: identity.lhs,
        identity_rhs: identity.rhs,
        identity_holds: identity.holds,
        lemma_sum_sq_consistent: lemmas.sum_sq_consistent,
        lemma_max_degree_bound: lemmas.max_degree_bound,
        lemma_odd_counts_violation: lemmas.odd_counts_violation,
        lemma_monotone_counts_violation: lemmas.monotone_counts_violation,
        rotation_probes: rotation.probes,
        rotation_passes: rotation.pass(),
        chain_count: chains.chain_count(),
        chain_max_pairwise_crossings: chains.max_pairwise_crossings,
        chain_merges_vetoed: chains.merges_vetoed,
        chains_convex: chains.all_convex,
        oracle_match,
        bounds,
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn render_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Human-oriented multi-line summary.
pub fn render_text(report: &AnalysisReport) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    write!(out, "analysis: {}, n = {}", report.generator, report.n).unwrap();
    if let Some(seed) = report.seed {
        write!(out, ", seed = {seed}").unwrap();
    }
    out.push('\n');
    writeln!(out, "halving edges: m = {}", report.m).unwrap();
    let hist = report
        .degree_histogram
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    writeln!(out, "degree histogram: {hist}").unwrap();
    writeln!(
        out,
        "max degree alpha = {}, M = {}",
        report.alpha, report.sum_sq_degrees
    )
    .unwrap();
    writeln!(out, "crossings: cr = {}", report.cr).unwrap();
    writeln!(
        out,
        "identity: lhs {} rhs {} -> {}",
        report.identity_lhs,
        report.identity_rhs,
        if report.identity_holds { "holds" } else { "FAILED" }
    )
    .unwrap();
    let odd = match report.lemma_odd_counts_violation {
        Some(d) => format!("even count at degree {d}"),
        None => "none".to_string(),
    };
    let mono = match report.lemma_monotone_counts_violation {
        Some((i, j)) => format!("n_{i} > n_{j}"),
        None => "none".to_string(),
    };
    writeln!(
        out,
        "lemma audits: sum-sq consistent {}; alpha >= 2m/n {}; odd-counts violation: {}; monotone-counts violation: {}",
        yes_no(report.lemma_sum_sq_consistent),
        yes_no(report.lemma_max_degree_bound),
        odd,
        mono,
    )
    .unwrap();
    writeln!(
        out,
        "Lovász rotation lemma: {} probes, {}",
        report.rotation_probes,
        if report.rotation_passes { "pass" } else { "FAILED" }
    )
    .unwrap();
    writeln!(
        out,
        "convex chains: {} chains, {} merges vetoed, max pairwise crossings {}, convex {}",
        report.chain_count,
        report.chain_merges_vetoed,
        report.chain_max_pairwise_crossings,
        yes_no(report.chains_convex),
    )
    .unwrap();
    if let Some(eq) = report.oracle_match {
        writeln!(
            out,
            "enumeration oracle: {}",
            if eq { "rotational = brute force" } else { "MISMATCH" }
        )
        .unwrap();
    }
    for b in &report.bounds {
        writeln!(
            out,
            "bound[{}]: m_star = {}, ratio = {}, dominance {}, crossing-lemma regime {}",
            b.preset,
            b.m_star,
            ratio_of(b.n, b.m_star),
            yes_no(b.dominance),
            yes_no(b.crossing_lemma_applicable),
        )
        .unwrap();
    }
    out
}

fn ratio_of(n: usize, m_star: f64) -> f64 {
    let nf = n as f64;
    m_star / (nf * nf.cbrt())
}

/// One CSV row for a fully measured instance.
pub fn csv_row(b: &BoundReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        b.n,
        b.preset,
        b.m_star,
        ratio_of(b.n, b.m_star),
        b.measured_m,
        b.measured_cr,
        b.sum_sq_degrees,
        b.alpha,
        b.identity_holds,
        b.dominance,
    )
}

/// One CSV row for a bound-only run: the enumeration columns stay empty.
pub fn csv_row_bound_only(n: usize, preset: BoundPreset, m_star: f64) -> String {
    format!("{},{},{},{},,,,,,", n, preset, m_star, ratio_of(n, m_star))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad() -> PointSet {
        PointSet::from_coords([(0, 0), (10, 0), (10, 10), (0, 10)])
    }

    fn star() -> PointSet {
        PointSet::from_coords([(0, 0), (10, 0), (5, 10), (5, 4)])
    }

    #[test]
    fn quad_report_fields() {
        let opts = AnalyzeOptions {
            presets: vec![BoundPreset::Corrected],
            check_oracle: true,
        };
        let r = analyze(&quad(), "file:quad.txt", None, &opts).unwrap();
        assert_eq!(r.schema_version, SCHEMA_VERSION);
        assert_eq!((r.n, r.m, r.cr), (4, 2, 1));
        assert_eq!(r.degree_histogram, vec![(1, 4)]);
        assert_eq!((r.alpha, r.sum_sq_degrees), (1, 4));
        assert!(r.identity_holds && r.rotation_passes && r.chains_convex);
        assert_eq!(r.lemma_odd_counts_violation, Some(1));
        assert_eq!(r.oracle_match, Some(true));
        assert_eq!(r.bounds.len(), 1);
        assert!(r.hard_assertions_pass());
    }

    #[test]
    fn star_report_records_but_passes() {
        let r = analyze(&star(), "file:star.txt", None, &AnalyzeOptions::default()).unwrap();
        assert_eq!((r.m, r.cr), (3, 0));
        assert_eq!(r.lemma_odd_counts_violation, None);
        assert!(r.hard_assertions_pass());
    }

    #[test]
    fn dominance_failure_blocks_hard_assertions() {
        let opts = AnalyzeOptions {
            presets: vec![BoundPreset::PaperLiteral],
            check_oracle: false,
        };
        let r = analyze(&quad(), "file:quad.txt", None, &opts).unwrap();
        assert!(!r.bounds[0].dominance);
        assert!(!r.hard_assertions_pass());
    }

    #[test]
    fn json_is_deterministic_and_versioned() {
        let opts = AnalyzeOptions {
            presets: BoundPreset::ALL.to_vec(),
            check_oracle: true,
        };
        let a = render_json(&analyze(&star(), "g", Some(7), &opts).unwrap());
        let b = render_json(&analyze(&star(), "g", Some(7), &opts).unwrap());
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["seed"], 7);
        assert_eq!(v["bounds"][0]["preset"], "paper-literal");
        assert_eq!(v["bounds"][1]["preset"], "corrected");
        assert_eq!(v["degree_histogram"][0][0], 1);
        assert_eq!(v["degree_histogram"][0][1], 3);
    }

    #[test]
    fn csv_rows_match_the_header_shape() {
        assert_eq!(CSV_HEADER.split(',').count(), 10);
        let r = analyze(&quad(), "g", None, &AnalyzeOptions::default()).unwrap();
        let row = csv_row(&r.bounds[0]);
        assert_eq!(row.split(',').count(), 10);
        assert!(row.starts_with("4,corrected,"));
        assert!(row.ends_with(",true,true"));

        let only = csv_row_bound_only(1000, BoundPreset::PaperLiteral, 19965.0);
        assert_eq!(only.split(',').count(), 10);
        let cols: Vec<&str> = only.split(',').collect();
        assert_eq!(cols[0], "1000");
        assert_eq!(cols[1], "paper-literal");
        assert!(cols[4..].iter().all(|c| c.is_empty()));
    }

    #[test]
    fn text_rendering_mentions_the_rotation_lemma() {
        let r = analyze(&star(), "random-square", Some(3), &AnalyzeOptions::default()).unwrap();
        let text = render_text(&r);
        assert!(text.contains("Lovász rotation lemma"));
        assert!(text.contains("identity: lhs 1 rhs 1 -> holds"));
        assert!(text.contains("seed = 3"));
        assert!(text.contains("bound[corrected]"));
    }
}
