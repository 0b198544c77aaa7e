//! End-to-end theorem checks: build the family, colour it, compute the
//! statistics and compare them with the published closed forms.
//!
//! Every comparison is exact rational equality.

use std::fmt;
use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::coloring::{equitable_chromatic_number, find_equitable_coloring, is_equitable, is_proper, SolverConfig};
use crate::error::{Error, Result};
use crate::families::{constructive_coloring, generate, FamilyId};
use crate::formulas::{closed_form, corrected_wheel_odd_variance, TheoremId};
use crate::graph::Graph;
use crate::oracle::{brute_force_chi_e, ORACLE_BUDGET};
use crate::par::{self, Execution};
use crate::rational::Rational;
use crate::stats::{distribution_of, ChromaticStats};

pub const CSV_HEADER: [&str; 16] = [
    "theorem",
    "family",
    "n",
    "N",
    "k",
    "computed_mean",
    "computed_var",
    "printed_mean",
    "printed_var",
    "mean_match",
    "var_match",
    "corrected_var_match",
    "chi_e_solver",
    "chi_e_oracle",
    "ecc",
    "runtime_ms",
];

pub const ECC_CSV_HEADER: [&str; 7] = ["family", "n", "N", "max_degree", "chi_e", "ecc", "runtime_ms"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EccOutcome {
    Holds,
    Violated,
    /// Complete graph or odd cycle; the conjecture says nothing.
    NotApplicable,
    /// The solver ran out of budget before χₑ was known.
    Inconclusive,
}

impl EccOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            EccOutcome::Holds => "holds",
            EccOutcome::Violated => "violated",
            EccOutcome::NotApplicable => "n/a",
            EccOutcome::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for EccOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringSource {
    Constructive,
    Solver,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub solver: SolverConfig,
    /// Run the exact χₑ search for instances with `n` up to this bound.
    pub solver_max_n: Option<u32>,
    /// Run the exhaustive oracle whenever the instance fits its budget.
    pub oracle: bool,
    /// Derive the ECC outcome from the solver's χₑ.
    pub ecc: bool,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            solver: SolverConfig::default(),
            solver_max_n: Some(10),
            oracle: true,
            ecc: true,
            execution: Execution::default(),
        }
    }
}

impl VerifyOptions {
    /// Closed-form comparison only: no χₑ searches.
    pub fn formulas_only() -> Self {
        VerifyOptions { solver_max_n: None, oracle: false, ecc: false, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationRecord {
    pub theorem: TheoremId,
    pub family: FamilyId,
    pub n_vertices: usize,
    pub k: usize,
    pub source: Option<ColoringSource>,
    pub computed: Option<ChromaticStats>,
    pub printed: ChromaticStats,
    pub mean_match: bool,
    pub variance_match: bool,
    /// Odd wheels only: computed variance against the corrected polynomial.
    pub corrected_variance_match: Option<bool>,
    pub chi_e_solver: Option<usize>,
    pub chi_e_oracle: Option<usize>,
    pub ecc: Option<EccOutcome>,
    pub runtime_ms: u64,
    /// Why no colouring at the published colour count was obtained.
    pub failure: Option<String>,
}

impl VerificationRecord {
    pub fn is_wheel_odd(&self) -> bool {
        self.theorem == TheoremId::Thm1Wheel && self.family.n % 2 == 1
    }

    /// Mismatch that is fully explained by the odd-wheel variance erratum.
    pub fn is_wheel_odd_erratum(&self) -> bool {
        self.is_wheel_odd()
            && self.failure.is_none()
            && self.mean_match
            && !self.variance_match
            && self.corrected_variance_match == Some(true)
    }

    pub fn all_match(&self) -> bool {
        self.failure.is_none() && self.mean_match && self.variance_match
    }
}

pub fn verify_instance(t: TheoremId, n: u32, opts: &VerifyOptions) -> Result<VerificationRecord> {
    let started = Instant::now();
    let family = FamilyId::new(t.family(), n)?;
    let g = generate(family)?;
    let k = family.published_color_count();
    let printed = closed_form(t, n)?;

    let mut failure = None;
    let mut source = None;
    let coloring = match constructive_coloring(family) {
        Ok(c) => {
            source = Some(ColoringSource::Constructive);
            Some(c)
        }
        Err(construct_err) => match find_equitable_coloring(&g, k, &opts.solver) {
            Ok(Some(c)) => {
                source = Some(ColoringSource::Solver);
                Some(c)
            }
            Ok(None) => {
                failure = Some(format!("{construct_err}; exact search: no equitable {k}-coloring exists"));
                None
            }
            Err(e) => {
                failure = Some(format!("{construct_err}; exact search: {e}"));
                None
            }
        },
    };

    let computed = match coloring {
        Some(c) if is_proper(&g, &c)? && is_equitable(&c) && c.k() == k => {
            Some(ChromaticStats::of(&distribution_of(&c)))
        }
        Some(_) => {
            failure = Some("colouring failed the properness/equitability recheck".into());
            None
        }
        None => None,
    };

    let mean_match = computed.as_ref().is_some_and(|s| s.mean == printed.mean);
    let variance_match = computed.as_ref().is_some_and(|s| s.variance == printed.variance);
    let corrected_variance_match = if t == TheoremId::Thm1Wheel && n % 2 == 1 {
        match &computed {
            Some(s) => Some(s.variance == corrected_wheel_odd_variance(n)?),
            None => None,
        }
    } else {
        None
    };

    let mut chi_e_solver = None;
    let mut ecc = None;
    if opts.solver_max_n.is_some_and(|max| n <= max) {
        let chi = match equitable_chromatic_number(&g, &opts.solver) {
            Ok(chi) => Some(chi),
            Err(Error::Timeout { .. }) => None,
            Err(e) => return Err(e),
        };
        chi_e_solver = chi;
        if opts.ecc {
            ecc = Some(ecc_outcome(&g, chi)?);
        }
    }
    let chi_e_oracle = if opts.oracle && g.n_vertices() <= ORACLE_BUDGET {
        Some(brute_force_chi_e(&g, opts.execution)?)
    } else {
        None
    };

    Ok(VerificationRecord {
        theorem: t,
        family,
        n_vertices: g.n_vertices(),
        k,
        source,
        computed,
        printed,
        mean_match,
        variance_match,
        corrected_variance_match,
        chi_e_solver,
        chi_e_oracle,
        ecc,
        runtime_ms: started.elapsed().as_millis() as u64,
        failure,
    })
}

/// One record per `(theorem, n)`, theorems in declaration order, then `n`
/// ascending. Instances run on the configured execution mode; the output
/// order never depends on it.
pub fn verify_range(
    theorems: &[TheoremId],
    n_min: u32,
    n_max: u32,
    opts: &VerifyOptions,
) -> Result<Vec<VerificationRecord>> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::input(format!("need 3 <= n_min <= n_max, got {n_min}..={n_max}")));
    }
    let mut theorems = theorems.to_vec();
    theorems.sort();
    theorems.dedup();
    let jobs: Vec<(TheoremId, u32)> = theorems.iter().flat_map(|&t| (n_min..=n_max).map(move |n| (t, n))).collect();
    par::map_ordered(opts.execution, &jobs, |&(t, n)| verify_instance(t, n, opts)).into_iter().collect()
}

fn ecc_outcome(g: &Graph, chi_e: Option<usize>) -> Result<EccOutcome> {
    if g.is_complete() || g.is_odd_cycle() {
        return Ok(EccOutcome::NotApplicable);
    }
    Ok(match chi_e {
        Some(chi) if chi <= g.max_degree()? => EccOutcome::Holds,
        Some(_) => EccOutcome::Violated,
        None => EccOutcome::Inconclusive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EccRecord {
    pub family: FamilyId,
    pub n_vertices: usize,
    pub max_degree: usize,
    pub chi_e: Option<usize>,
    pub outcome: EccOutcome,
    pub runtime_ms: u64,
}

/// Checks χₑ(G) ≤ Δ(G) on one family instance.
pub fn ecc_check(family: FamilyId, solver: &SolverConfig) -> Result<EccRecord> {
    let started = Instant::now();
    let g = generate(family)?;
    if !g.is_connected()? {
        return Err(Error::input(format!("{family} is not connected")));
    }
    let chi_e = match equitable_chromatic_number(&g, solver) {
        Ok(chi) => Some(chi),
        Err(Error::Timeout { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(EccRecord {
        family,
        n_vertices: g.n_vertices(),
        max_degree: g.max_degree()?,
        chi_e,
        outcome: ecc_outcome(&g, chi_e)?,
        runtime_ms: started.elapsed().as_millis() as u64,
    })
}

pub fn ecc_range(
    kind: crate::families::FamilyKind,
    n_min: u32,
    n_max: u32,
    solver: &SolverConfig,
    exec: Execution,
) -> Result<Vec<EccRecord>> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::input(format!("need 3 <= n_min <= n_max, got {n_min}..={n_max}")));
    }
    let ids = (n_min..=n_max).map(|n| FamilyId::new(kind, n)).collect::<Result<Vec<_>>>()?;
    par::map_ordered(exec, &ids, |&id| ecc_check(id, solver)).into_iter().collect()
}

/// Records that should fail a strict run. With `expect_wheel_odd_erratum`,
/// odd-wheel rows whose only defect is the known variance erratum pass.
pub fn mismatches(records: &[VerificationRecord], expect_wheel_odd_erratum: bool) -> Vec<&VerificationRecord> {
    records
        .iter()
        .filter(|r| !r.all_match())
        .filter(|r| !(expect_wheel_odd_erratum && r.is_wheel_odd_erratum()))
        .collect()
}

fn frac(r: &Rational) -> String {
    r.to_fraction_string()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(r: &VerificationRecord) -> [String; 16] {
    [
        r.theorem.name().to_string(),
        r.family.kind.name().to_string(),
        r.family.n.to_string(),
        r.n_vertices.to_string(),
        r.k.to_string(),
        opt(r.computed.as_ref().map(|s| frac(&s.mean))),
        opt(r.computed.as_ref().map(|s| frac(&s.variance))),
        frac(&r.printed.mean),
        frac(&r.printed.variance),
        r.mean_match.to_string(),
        r.variance_match.to_string(),
        opt(r.corrected_variance_match),
        opt(r.chi_e_solver),
        opt(r.chi_e_oracle),
        opt(r.ecc),
        r.runtime_ms.to_string(),
    ]
}

pub fn write_csv<W: Write>(records: &[VerificationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(csv_row(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv(records: &[VerificationRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

#[derive(Serialize)]
struct JsonRow<'a> {
    theorem: &'static str,
    family: &'static str,
    n: u32,
    #[serde(rename = "N")]
    n_vertices: usize,
    k: usize,
    computed_mean: Option<String>,
    computed_var: Option<String>,
    printed_mean: String,
    printed_var: String,
    mean_match: bool,
    var_match: bool,
    corrected_var_match: Option<bool>,
    chi_e_solver: Option<usize>,
    chi_e_oracle: Option<usize>,
    ecc: Option<&'static str>,
    runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

pub fn to_json(records: &[VerificationRecord]) -> String {
    let rows: Vec<JsonRow> = records
        .iter()
        .map(|r| JsonRow {
            theorem: r.theorem.name(),
            family: r.family.kind.name(),
            n: r.family.n,
            n_vertices: r.n_vertices,
            k: r.k,
            computed_mean: r.computed.as_ref().map(|s| frac(&s.mean)),
            computed_var: r.computed.as_ref().map(|s| frac(&s.variance)),
            printed_mean: frac(&r.printed.mean),
            printed_var: frac(&r.printed.variance),
            mean_match: r.mean_match,
            var_match: r.variance_match,
            corrected_var_match: r.corrected_variance_match,
            chi_e_solver: r.chi_e_solver,
            chi_e_oracle: r.chi_e_oracle,
            ecc: r.ecc.map(EccOutcome::as_str),
            runtime_ms: r.runtime_ms,
            error: r.failure.as_deref(),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("report serialises")
}

pub fn ecc_to_csv(records: &[EccRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(ECC_CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.family.kind.name().to_string(),
            r.family.n.to_string(),
            r.n_vertices.to_string(),
            r.max_degree.to_string(),
            opt(r.chi_e),
            r.outcome.to_string(),
            r.runtime_ms.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
}

pub fn ecc_to_json(records: &[EccRecord]) -> String {
    #[derive(Serialize)]
    struct Row {
        family: &'static str,
        n: u32,
        #[serde(rename = "N")]
        n_vertices: usize,
        max_degree: usize,
        chi_e: Option<usize>,
        ecc: &'static str,
        runtime_ms: u64,
    }
    let rows: Vec<Row> = records
        .iter()
        .map(|r| Row {
            family: r.family.kind.name(),
            n: r.family.n,
            n_vertices: r.n_vertices,
            max_degree: r.max_degree,
            chi_e: r.chi_e,
            ecc: r.outcome.as_str(),
            runtime_ms: r.runtime_ms,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("report serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyKind;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn even_wheel_matches() {
        let rec = verify_instance(TheoremId::Thm1Wheel, 8, &VerifyOptions::default()).unwrap();
        assert!(rec.mean_match && rec.variance_match);
        assert_eq!(rec.corrected_variance_match, None);
        assert_eq!(rec.chi_e_solver, Some(5));
        assert_eq!(rec.chi_e_oracle, Some(5));
        assert_eq!(rec.ecc, Some(EccOutcome::Holds));
    }

    #[test]
    fn odd_wheel_shows_erratum() {
        let rec = verify_instance(TheoremId::Thm1Wheel, 9, &VerifyOptions::default()).unwrap();
        assert!(rec.mean_match);
        assert!(!rec.variance_match);
        assert_eq!(rec.corrected_variance_match, Some(true));
        assert_eq!(rec.computed.as_ref().unwrap().variance, r(249, 100));
        assert_eq!(rec.printed.variance, r(93, 40));
        assert!(rec.is_wheel_odd_erratum());
    }

    #[test]
    fn every_odd_wheel_from_five_shows_erratum() {
        let records = verify_range(&[TheoremId::Thm1Wheel], 5, 49, &VerifyOptions::formulas_only()).unwrap();
        let odd: Vec<_> = records.iter().filter(|r| r.is_wheel_odd()).collect();
        assert_eq!(odd.len(), 23);
        for rec in odd {
            assert!(rec.mean_match, "n = {}", rec.family.n);
            assert!(!rec.variance_match, "n = {}", rec.family.n);
            assert_eq!(rec.corrected_variance_match, Some(true), "n = {}", rec.family.n);
        }
    }

    #[test]
    fn wheel_three_is_a_recorded_failure() {
        let rec = verify_instance(TheoremId::Thm1Wheel, 3, &VerifyOptions::default()).unwrap();
        assert!(rec.failure.is_some());
        assert!(rec.computed.is_none());
        assert!(!rec.mean_match && !rec.variance_match);
        assert_eq!(rec.corrected_variance_match, None);
        assert_eq!(rec.chi_e_solver, Some(4));
        assert_eq!(rec.ecc, Some(EccOutcome::NotApplicable));
        assert_eq!(mismatches(std::slice::from_ref(&rec), true).len(), 1);
    }

    #[test]
    fn flower_matches() {
        let rec = verify_instance(TheoremId::Thm4Flower, 5, &VerifyOptions::default()).unwrap();
        assert!(rec.all_match());
    }

    #[test]
    fn helm_four_single_record() {
        let recs = verify_range(&[TheoremId::Thm2Helm], 4, 4, &VerifyOptions::formulas_only()).unwrap();
        assert_eq!(recs.len(), 1);
        let s = recs[0].computed.as_ref().unwrap();
        assert_eq!((s.mean.clone(), s.variance.clone()), (r(7, 3), r(4, 3)));
        assert!(recs[0].all_match());
    }

    #[test]
    fn range_cardinality_and_order() {
        let recs = verify_range(&TheoremId::ALL, 3, 10, &VerifyOptions::formulas_only()).unwrap();
        assert_eq!(recs.len(), 64);
        let keys: Vec<_> = recs.iter().map(|r| (r.theorem, r.family.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(verify_range(&TheoremId::ALL, 2, 10, &VerifyOptions::formulas_only()).is_err());
        assert!(verify_range(&TheoremId::ALL, 6, 5, &VerifyOptions::formulas_only()).is_err());
    }

    #[test]
    fn ecc_spot_checks() {
        let s = SolverConfig::default();
        let w8 = ecc_check(FamilyId::new(FamilyKind::Wheel, 8).unwrap(), &s).unwrap();
        assert_eq!((w8.chi_e, w8.max_degree, w8.outcome), (Some(5), 8, EccOutcome::Holds));
        let w3 = ecc_check(FamilyId::new(FamilyKind::Wheel, 3).unwrap(), &s).unwrap();
        assert_eq!(w3.outcome, EccOutcome::NotApplicable);
        let c5 = ecc_check(FamilyId::new(FamilyKind::Cycle, 5).unwrap(), &s).unwrap();
        assert_eq!(c5.outcome, EccOutcome::NotApplicable);
        let h6 = ecc_check(FamilyId::new(FamilyKind::Helm, 6).unwrap(), &s).unwrap();
        assert_eq!(h6.max_degree, 6);
        assert_eq!(h6.outcome, EccOutcome::Holds);
    }

    #[test]
    fn csv_layout() {
        let recs = verify_range(&[TheoremId::Thm1Wheel], 9, 9, &VerifyOptions::formulas_only()).unwrap();
        let text = to_csv(&recs);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(
            row[..15],
            [
                "thm1_wheel",
                "wheel",
                "9",
                "10",
                "6",
                "31/10",
                "249/100",
                "31/10",
                "93/40",
                "true",
                "false",
                "true",
                "",
                "",
                ""
            ]
        );
    }

    #[test]
    fn json_report_uses_csv_field_names() {
        let recs = verify_range(&[TheoremId::Thm4Flower], 3, 3, &VerifyOptions::formulas_only()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&recs)).unwrap();
        let obj = v[0].as_object().unwrap();
        for key in CSV_HEADER {
            assert!(obj.contains_key(key), "missing {key}");
        }
        assert!(!obj.contains_key("error"));
    }

    #[test]
    fn strict_mode_exempts_only_the_known_erratum() {
        let recs = verify_range(&[TheoremId::Thm1Wheel], 4, 9, &VerifyOptions::formulas_only()).unwrap();
        assert_eq!(mismatches(&recs, false).len(), 3);
        assert!(mismatches(&recs, true).is_empty());
    }
}
