//! Building blocks behind the `qread` binary: phase-expression parsing,
//! scattering-matrix loading, tradeoff-curve generation with CSV export,
//! verification sweeps, and the JSON design report.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use qread::baseline::{coherent_energy_for_error, coherent_helstrom_energy_for_error};
use qread::design::{continuous_minimizer, design_probe, DesignResult};
use qread::device::{reduce_pair, ScatteringMatrix};
use qread::discrimination::{Mode, ReadingTask};
use qread::error::Error;
use qread::oracle::brute_force_min_energy;

/// Verification passes when the search stays within this much of the
/// closed form on both sides.
pub const VERIFY_TOL: f64 = 1e-6;

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments or parameter ranges (exit 2).
    Usage(String),
    /// Scattering-matrix validation failure (exit 3).
    Device(String),
    /// Filesystem failure (exit 4).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Device(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Device(m) | CliError::Io(m) => m,
        }
    }
}

fn usage_error(err: Error) -> CliError {
    CliError::Usage(err.to_string())
}

/// Parses a phase given in radians or as a fraction of pi: `pi`, `pi/12`,
/// `3pi/4`, `0.5pi`, or a plain number like `0.7853981633974483`.
pub fn parse_phase(text: &str) -> Result<f64, CliError> {
    let cleaned = text.trim().to_ascii_lowercase().replace(' ', "");
    let bad = || CliError::Usage(format!("cannot parse phase `{text}`"));
    let value = if let Some(pi_at) = cleaned.find("pi") {
        let coeff = &cleaned[..pi_at];
        let rest = &cleaned[pi_at + 2..];
        let numerator: f64 = match coeff.trim_end_matches('*') {
            "" => 1.0,
            c => c.parse().map_err(|_| bad())?,
        };
        let denominator: f64 = match rest.strip_prefix('/') {
            None if rest.is_empty() => 1.0,
            Some(d) => d.parse().map_err(|_| bad())?,
            None => return Err(bad()),
        };
        numerator * std::f64::consts::PI / denominator
    } else {
        cleaned.parse().map_err(|_| bad())?
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

/// Reads a scattering matrix from a JSON file holding four [re, im] pairs in
/// row-major order.
pub fn load_scattering_matrix(path: &Path) -> Result<ScatteringMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let pairs: [[f64; 2]; 4] = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!("{} is not a 4-entry [re, im] array: {e}", path.display()))
    })?;
    Ok(ScatteringMatrix::from_row_major(&pairs))
}

/// Resolves the device phase from either a phase expression or a pair of
/// scattering-matrix files.
pub fn resolve_phase(
    delta: Option<&str>,
    u1: Option<&Path>,
    u2: Option<&Path>,
) -> Result<f64, CliError> {
    match (delta, u1, u2) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(CliError::Usage(
            "give either --delta or --u1/--u2, not both".into(),
        )),
        (Some(expr), None, None) => parse_phase(expr),
        (None, Some(a), Some(b)) => {
            let m1 = load_scattering_matrix(a)?;
            let m2 = load_scattering_matrix(b)?;
            let dev = reduce_pair(&m1, &m2).map_err(|e| CliError::Device(e.to_string()))?;
            Ok(dev.eigenphase())
        }
        _ => Err(CliError::Usage("provide --delta, or both --u1 and --u2".into())),
    }
}

/// The design result in its JSON wire shape.
#[derive(Debug, Serialize)]
pub struct DesignReport {
    pub delta: f64,
    pub mode: String,
    pub q: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub n_star: u32,
    pub alpha: f64,
    pub energy: f64,
    pub achieved_probability: f64,
    /// Probe amplitudes as [n, m, re, im] rows in index order.
    pub probe: Vec<(u32, u32, f64, f64)>,
}

impl From<&DesignResult> for DesignReport {
    fn from(result: &DesignResult) -> Self {
        let probe = result
            .probe
            .iter()
            .map(|(idx, amp)| (idx.n, idx.m, amp.re, amp.im))
            .collect();
        Self {
            delta: result.delta,
            mode: result.task.mode().to_string(),
            q: result.task.q(),
            k: result.task.threshold_k(),
            n_star: result.n_star,
            alpha: result.alpha,
            energy: result.energy,
            achieved_probability: result.achieved_probability,
            probe,
        }
    }
}

/// Designs a probe and renders the JSON report.
pub fn run_design(delta: f64, mode: Mode, q: f64) -> Result<String, CliError> {
    let task = ReadingTask::new(mode, q).map_err(usage_error)?;
    let result = design_probe(delta, task).map_err(usage_error)?;
    let report = DesignReport::from(&result);
    serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))
}

/// One sampled point of the energy-versus-budget tradeoff.
#[derive(Debug, Clone)]
pub struct TradeoffRow {
    pub q: f64,
    pub k: f64,
    pub n_star: u32,
    pub alpha: f64,
    pub energy_optimal: f64,
    pub energy_coherent: f64,
}

/// A q-sorted sweep of optimal versus coherent energies at fixed phase.
#[derive(Debug, Clone)]
pub struct TradeoffCurve {
    pub delta: f64,
    pub mode: Mode,
    pub rows: Vec<TradeoffRow>,
}

/// Grid spacing for tradeoff sweeps. The interesting regime is q -> 0 where
/// the curves diverge, so log spacing is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

/// Which strategy fills the coherent-energy column in ambiguous mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherentBaseline {
    Homodyne,
    Helstrom,
}

pub fn build_tradeoff(
    delta: f64,
    mode: Mode,
    points: usize,
    q_min: f64,
    q_max: f64,
    spacing: Spacing,
    baseline: CoherentBaseline,
) -> Result<TradeoffCurve, CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!("need at least 2 grid points, got {points}")));
    }
    if !(q_min > 0.0 && q_min < q_max && q_max <= mode.max_threshold()) {
        return Err(CliError::Usage(format!(
            "need 0 < q-min < q-max <= {}, got [{q_min}, {q_max}]",
            mode.max_threshold()
        )));
    }

    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let fraction = i as f64 / (points - 1) as f64;
        let q = match spacing {
            Spacing::Log => q_min * (q_max / q_min).powf(fraction),
            Spacing::Linear => q_min + (q_max - q_min) * fraction,
        };
        let task = ReadingTask::new(mode, q).map_err(usage_error)?;
        let result = design_probe(delta, task).map_err(usage_error)?;
        let energy_coherent = match mode {
            // The reference comparison is ambiguous-only; unambiguous rows
            // carry a placeholder to keep the schema fixed.
            Mode::Unambiguous => f64::NAN,
            Mode::Ambiguous if q >= 0.5 => 0.0,
            Mode::Ambiguous => match baseline {
                CoherentBaseline::Homodyne => {
                    coherent_energy_for_error(q, delta).map_err(usage_error)?
                }
                CoherentBaseline::Helstrom => {
                    coherent_helstrom_energy_for_error(q, delta).map_err(usage_error)?
                }
            },
        };
        rows.push(TradeoffRow {
            q,
            k: task.threshold_k(),
            n_star: result.n_star,
            alpha: result.alpha,
            energy_optimal: result.energy,
            energy_coherent,
        });
    }
    Ok(TradeoffCurve { delta, mode, rows })
}

fn format_full(value: f64) -> String {
    if value.is_nan() {
        "nan".into()
    } else {
        format!("{value:.16e}")
    }
}

impl TradeoffCurve {
    /// Renders the CSV with full double precision so downstream tools
    /// reproduce the curves exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,K,n_star,alpha,energy_optimal,energy_coherent_homodyne\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                format_full(row.q),
                format_full(row.k),
                row.n_star,
                format_full(row.alpha),
                format_full(row.energy_optimal),
                format_full(row.energy_coherent),
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_csv())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
    }
}

/// One verified budget point.
#[derive(Debug, Clone)]
pub struct VerifyRow {
    pub q: f64,
    pub k: f64,
    pub closed_form: f64,
    pub search: f64,
    pub pass: bool,
}

/// Outcome of a verification sweep.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub delta: f64,
    pub mode: Mode,
    pub d_max: u32,
    pub samples: u64,
    pub seed: u64,
    pub rows: Vec<VerifyRow>,
}

impl VerifyOutcome {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "delta={} mode={} d_max={} samples={} seed={}",
            format_full(self.delta),
            self.mode,
            self.d_max,
            self.samples,
            self.seed,
        );
        for row in &self.rows {
            let _ = writeln!(
                out,
                "q={} K={} closed={} oracle={} {}",
                format_full(row.q),
                format_full(row.k),
                format_full(row.closed_form),
                format_full(row.search),
                if row.pass { "PASS" } else { "FAIL" },
            );
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        let _ = writeln!(
            out,
            "verify: {passed}/{} {}",
            self.rows.len(),
            if self.all_pass() { "PASS" } else { "FAIL" },
        );
        out
    }
}

/// Default budget grid for verification sweeps.
pub const DEFAULT_VERIFY_GRID: [f64; 5] = [0.0, 0.001, 0.01, 0.1, 0.25];

/// Runs the brute-force search against the closed form on each budget point.
pub fn run_verify(
    delta: f64,
    mode: Mode,
    budgets: &[f64],
    d_max: Option<u32>,
    samples: u64,
    seed: u64,
) -> Result<VerifyOutcome, CliError> {
    if budgets.is_empty() {
        return Err(CliError::Usage("empty q grid".into()));
    }
    let x_star = continuous_minimizer(delta).map_err(usage_error)?;
    let d_max = d_max.unwrap_or(x_star.ceil() as u32 + 4);

    let mut rows = Vec::with_capacity(budgets.len());
    for &q in budgets {
        let task = ReadingTask::new(mode, q).map_err(usage_error)?;
        let k = task.threshold_k();
        let closed_form = design_probe(delta, task).map_err(usage_error)?.energy;
        let search = brute_force_min_energy(delta, k, d_max, samples, seed).map_err(usage_error)?;
        let pass = search >= closed_form - VERIFY_TOL && search - closed_form <= VERIFY_TOL;
        rows.push(VerifyRow { q, k, closed_form, search, pass });
    }
    Ok(VerifyOutcome { delta, mode, d_max, samples, seed, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn phase_expressions_parse() {
        assert!((parse_phase("pi/4").unwrap() - PI / 4.0).abs() < 1e-15);
        assert!((parse_phase("pi").unwrap() - PI).abs() < 1e-15);
        assert!((parse_phase("3pi/4").unwrap() - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((parse_phase("0.5pi").unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((parse_phase("PI / 12").unwrap() - PI / 12.0).abs() < 1e-15);
        assert!((parse_phase("0.37").unwrap() - 0.37).abs() < 1e-15);
        assert!(parse_phase("four").is_err());
        assert!(parse_phase("pi/").is_err());
        assert!(parse_phase("pie").is_err());
    }

    #[test]
    fn tradeoff_rejects_degenerate_grids() {
        let err = build_tradeoff(
            PI / 4.0,
            Mode::Ambiguous,
            1,
            1e-6,
            0.49,
            Spacing::Log,
            CoherentBaseline::Homodyne,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(build_tradeoff(
            PI / 4.0,
            Mode::Ambiguous,
            10,
            0.2,
            0.1,
            Spacing::Log,
            CoherentBaseline::Homodyne,
        )
        .is_err());
    }

    #[test]
    fn tradeoff_rows_are_sorted_and_ordered() {
        let curve = build_tradeoff(
            PI / 4.0,
            Mode::Ambiguous,
            50,
            1e-6,
            0.49,
            Spacing::Log,
            CoherentBaseline::Homodyne,
        )
        .unwrap();
        assert_eq!(curve.rows.len(), 50);
        for pair in curve.rows.windows(2) {
            assert!(pair[0].q < pair[1].q);
            assert!(pair[0].energy_optimal >= pair[1].energy_optimal - 1e-12);
        }
        for row in &curve.rows {
            assert!(row.energy_coherent >= row.energy_optimal);
        }
    }

    #[test]
    fn unambiguous_tradeoff_uses_placeholders() {
        let curve = build_tradeoff(
            PI / 4.0,
            Mode::Unambiguous,
            5,
            0.01,
            0.9,
            Spacing::Linear,
            CoherentBaseline::Homodyne,
        )
        .unwrap();
        let csv = curve.to_csv();
        assert!(csv.starts_with("q,K,n_star,alpha,energy_optimal,energy_coherent_homodyne\n"));
        for line in csv.lines().skip(1) {
            assert!(line.ends_with(",nan"));
        }
    }

    #[test]
    fn csv_roundtrips_q_through_the_design() {
        let curve = build_tradeoff(
            PI / 12.0,
            Mode::Ambiguous,
            20,
            1e-5,
            0.4,
            Spacing::Log,
            CoherentBaseline::Homodyne,
        )
        .unwrap();
        let csv = curve.to_csv();
        for line in csv.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            let q: f64 = fields[0].parse().unwrap();
            let energy: f64 = fields[4].parse().unwrap();
            let task = ReadingTask::ambiguous(q).unwrap();
            let again = design_probe(PI / 12.0, task).unwrap().energy;
            assert!((again - energy).abs() < 1e-9);
        }
    }

    #[test]
    fn verify_passes_on_reference_phases() {
        let outcome = run_verify(
            PI / 4.0,
            Mode::Ambiguous,
            &[0.0, 0.1],
            None,
            2000,
            qread::DEFAULT_SEED,
        )
        .unwrap();
        assert!(outcome.all_pass());
        assert_eq!(outcome.d_max, 7);
        let text = outcome.render();
        assert!(text.contains("PASS"));
        assert!(!text.contains("FAIL"));
    }

    #[test]
    fn verify_unambiguous_threshold_is_q() {
        let outcome = run_verify(
            PI / 12.0,
            Mode::Unambiguous,
            &[0.25],
            None,
            2000,
            qread::DEFAULT_SEED,
        )
        .unwrap();
        assert!(outcome.all_pass());
        assert!((outcome.rows[0].k - 0.25).abs() < 1e-15);
    }

    #[test]
    fn design_report_shape() {
        let json = run_design(PI / 4.0, Mode::Ambiguous, 0.0).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["n_star"], 3);
        assert_eq!(value["mode"], "ambiguous");
        assert!(value["K"].is_number());
        let probe = value["probe"].as_array().unwrap();
        assert_eq!(probe.len(), 3);
        assert_eq!(probe[0].as_array().unwrap().len(), 4);
    }
}
