//! Figure scans and single-shot optimization runs.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2, TAU};
use std::path::Path;
use std::str::FromStr;

use bellkit::bell::{
    bell_parameter, family_a_set1, family_b_p1, family_b_p2, family_by_name, optimize_bell, polish,
    psi_family_state, standard_two_qubit_observables, xstate_bell_formula, xstate_observables, BellResult,
    ObservableFamily, ObservableSet, OptimizeConfig, QubitQutritFamilyA, QubitQutritFamilyB, U2Variant,
    CIRELSON,
};
use bellkit::dynamics::{rho_of_tau, xstate_p1, MixtureSpec};
use bellkit::entanglement::{entanglement_of_formation, schlienz_mahler_beta};
use bellkit::linalg::c;
use bellkit::{BipartiteState, OperatorMatrix, Spin};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::params::{check_keys, get_or, Params};

/// Built-in observable parameter lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Set1,
    FamilyBP1,
    FamilyBP2,
}

impl Preset {
    pub fn values(self) -> Vec<f64> {
        match self {
            Preset::Set1 => family_a_set1().to_vec(),
            Preset::FamilyBP1 => family_b_p1().to_vec(),
            Preset::FamilyBP2 => family_b_p2().to_vec(),
        }
    }
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "set1" => Ok(Preset::Set1),
            "familyB-p1" => Ok(Preset::FamilyBP1),
            "familyB-p2" => Ok(Preset::FamilyBP2),
            _ => Err(CliError::usage(format!("unknown preset {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub steps: usize,
    pub seed: u64,
    pub params: Params,
    pub preset: Option<Preset>,
    pub variant: U2Variant,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            steps: 101,
            seed: 0,
            params: Params::new(),
            preset: None,
            variant: U2Variant::X,
        }
    }
}

impl ScanConfig {
    fn check(&self, allowed: &[&str]) -> Result<()> {
        if self.steps < 2 {
            return Err(CliError::usage("--steps must be at least 2"));
        }
        check_keys(&self.params, allowed)
    }

    fn param(&self, key: &str, default: f64) -> f64 {
        get_or(&self.params, key, default)
    }
}

/// Header plus rows of already formatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Parsed numeric values of a column; empty cells become `None`.
    pub fn numbers(&self, name: &str) -> Vec<Option<f64>> {
        let k = self.column(name).expect("known column");
        self.rows.iter().map(|r| r[k].parse().ok()).collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("CSV of ASCII cells"))
    }
}

/// Several named tables written as `<dir>/<name>.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    pub tables: Vec<(String, Table)>,
}

impl Bundle {
    pub fn get(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, table) in &self.tables {
            std::fs::write(dir.join(format!("{name}.csv")), table.to_csv()?)?;
        }
        Ok(())
    }
}

/// 12 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn flag(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

fn summary(entries: &[(&str, String)]) -> Table {
    let mut t = Table::new(&["key", "value"]);
    t.rows = entries.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    t
}

fn axis(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect()
}

const BOUNDARY_TOL: f64 = 1e-12;

fn crosses(a: f64, b: f64) -> bool {
    (a - 2.0) * (b - 2.0) < 0.0
}

/// Marks points where F_B − 2 vanishes or changes sign towards a neighbour.
pub fn boundary_1d(values: &[f64]) -> Vec<bool> {
    (0..values.len())
        .map(|i| {
            let v = values[i];
            (v - 2.0).abs() < BOUNDARY_TOL
                || (i > 0 && crosses(v, values[i - 1]))
                || (i + 1 < values.len() && crosses(v, values[i + 1]))
        })
        .collect()
}

/// As [`boundary_1d`] on a grid with 4-neighbours; `None` cells are ignored.
pub fn boundary_2d(grid: &[Vec<Option<f64>>]) -> Vec<Vec<bool>> {
    let at = |i: isize, k: isize| -> Option<f64> {
        if i < 0 || k < 0 {
            return None;
        }
        grid.get(i as usize).and_then(|r| r.get(k as usize)).copied().flatten()
    };
    (0..grid.len())
        .map(|i| {
            (0..grid[i].len())
                .map(|k| {
                    let Some(v) = grid[i][k] else { return false };
                    let (i, k) = (i as isize, k as isize);
                    (v - 2.0).abs() < BOUNDARY_TOL
                        || [(i - 1, k), (i + 1, k), (i, k - 1), (i, k + 1)]
                            .iter()
                            .any(|&(a, b)| at(a, b).is_some_and(|w| crosses(v, w)))
                })
                .collect()
        })
        .collect()
}

fn variance(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v > values[best] { i } else { best })
}

/// F_B with the standard observables, E_F and β over α, γ ∈ [−1, 1] for
/// α|φ₊⟩ + b|φ₋⟩ + γ|ψ₋⟩ + b|ψ₊⟩, b = √((1 − α² − γ²)/2).
pub fn run_fig1(cfg: &ScanConfig) -> Result<Table> {
    cfg.check(&[])?;
    let ax = axis(-1.0, 1.0, cfg.steps);
    let obs = standard_two_qubit_observables();
    struct Point {
        b: f64,
        f: f64,
        e_f: f64,
        beta: f64,
    }
    let grid: Vec<Vec<Option<Point>>> = ax
        .par_iter()
        .map(|&a| {
            ax.iter()
                .map(|&g| {
                    let rest = 1.0 - a * a - g * g;
                    if rest < -1e-12 {
                        return Ok(None);
                    }
                    let b = (rest.max(0.0) / 2.0).sqrt();
                    let s = BipartiteState::from_pure(Spin::HALF, Spin::HALF, &psi_family_state(a, b, g, b))?;
                    Ok(Some(Point {
                        b,
                        f: bell_parameter(&s, &obs)?,
                        e_f: entanglement_of_formation(&s)?,
                        beta: schlienz_mahler_beta(&s),
                    }))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let values: Vec<Vec<Option<f64>>> = grid.iter().map(|r| r.iter().map(|p| p.as_ref().map(|p| p.f)).collect()).collect();
    let edge = boundary_2d(&values);
    let mut t = Table::new(&["alpha", "gamma", "b", "status", "f_b", "f_b_closed", "e_f", "beta", "boundary"]);
    for (i, &a) in ax.iter().enumerate() {
        for (k, &g) in ax.iter().enumerate() {
            let row = match &grid[i][k] {
                None => vec![num(a), num(g), String::new(), "skip".into(), String::new(), String::new(), String::new(), String::new(), String::new()],
                Some(p) => vec![
                    num(a),
                    num(g),
                    num(p.b),
                    "ok".into(),
                    num(p.f),
                    num((4.0 * SQRT_2 * a * g).abs()),
                    num(p.e_f),
                    num(p.beta),
                    flag(edge[i][k]),
                ],
            };
            t.rows.push(row);
        }
    }
    Ok(t)
}

/// X-state with ρ₁₄ = ix, ρ₂₃ = iy and the most balanced diagonal that keeps
/// it positive; `None` when |x| + |y| > ½.
pub fn feasible_x_state(x: f64, y: f64) -> Option<BipartiteState> {
    let slack = 0.5 - x.abs() - y.abs();
    if slack < -1e-12 {
        return None;
    }
    let s = slack.max(0.0) / 2.0;
    let (outer, inner) = (x.abs() + s, y.abs() + s);
    let mut m = OperatorMatrix::from_real_diagonal(&[outer, inner, inner, outer]);
    m.set(0, 3, c(0.0, x));
    m.set(3, 0, c(0.0, -x));
    m.set(1, 2, c(0.0, y));
    m.set(2, 1, c(0.0, -y));
    BipartiteState::new(Spin::HALF, Spin::HALF, m).ok()
}

/// 2√2|x + y| over x = r₁₄ sin φ₁₄, y = r₂₃ sin φ₂₃ ∈ [−e, e] (e = `extent`,
/// default ½), with the trace evaluation on every realizable point.
pub fn run_fig2(cfg: &ScanConfig) -> Result<Table> {
    cfg.check(&["extent"])?;
    let e = cfg.param("extent", 0.5);
    let ax = axis(-e, e, cfg.steps);
    let obs = xstate_observables();
    let rows: Vec<Vec<(f64, Option<f64>)>> = ax
        .par_iter()
        .map(|&x| {
            ax.iter()
                .map(|&y| {
                    let trace = match feasible_x_state(x, y) {
                        Some(s) => Some(bell_parameter(&s, &obs)?),
                        None => None,
                    };
                    Ok((xstate_bell_formula(x, y), trace))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let closed: Vec<Vec<Option<f64>>> = rows.iter().map(|r| r.iter().map(|p| Some(p.0)).collect()).collect();
    let edge = boundary_2d(&closed);
    let mut t = Table::new(&["x", "y", "status", "f_b_closed", "f_b_trace", "boundary"]);
    for (i, &x) in ax.iter().enumerate() {
        for (k, &y) in ax.iter().enumerate() {
            let (f, trace) = rows[i][k];
            t.rows.push(vec![
                num(x),
                num(y),
                if trace.is_some() { "ok" } else { "infeasible" }.into(),
                num(f),
                trace.map(num).unwrap_or_default(),
                flag(edge[i][k]),
            ]);
        }
    }
    Ok(t)
}

const FAMILY_A_KEYS: [&str; 7] = ["a1", "a2", "a3", "a4", "a5", "b1", "b2"];

fn family_a_params(cfg: &ScanConfig) -> Result<Vec<f64>> {
    let base = match cfg.preset {
        None | Some(Preset::Set1) => family_a_set1().to_vec(),
        Some(p) => return Err(CliError::usage(format!("preset {p:?} does not belong to family A"))),
    };
    Ok(FAMILY_A_KEYS.iter().zip(base).map(|(k, v)| cfg.param(k, v)).collect())
}

fn bell_on_p1(obs: &ObservableSet, theta1: f64, tau: f64) -> Result<f64> {
    Ok(bell_parameter(&xstate_p1(theta1, tau), obs)?)
}

/// Offsets of the θ₁ slices around 3π/2.
pub const FIG3_SLICE_OFFSETS: [f64; 3] = [-1e-3, 0.0, 1e-3];

/// β over the (p₁, p₂) simplex, F_B of family A over (τ, θ₁), the θ₁ = 3π/2
/// slices and the (θ₁; F_B, β) slice at τ = π.
pub fn run_fig3(cfg: &ScanConfig) -> Result<Bundle> {
    let mut allowed = FAMILY_A_KEYS.to_vec();
    allowed.extend(["theta1", "theta2", "theta3", "tau_beta"]);
    cfg.check(&allowed)?;
    let fam = QubitQutritFamilyA::new(cfg.variant);
    let obs = fam.build(&family_a_params(cfg)?)?;
    let thetas = [
        cfg.param("theta1", FRAC_PI_4),
        cfg.param("theta2", FRAC_PI_4),
        cfg.param("theta3", FRAC_PI_4),
    ];
    let tau_beta = cfg.param("tau_beta", 0.0);
    let n = cfg.steps;

    let probs = axis(0.0, 1.0, n);
    let beta_rows: Vec<Vec<(f64, f64, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n - i)
                .map(|k| {
                    let (p1, p2) = (probs[i], probs[k]);
                    let p3 = (1.0 - p1 - p2).max(0.0);
                    let spec = MixtureSpec { p: [p1, p2, p3], theta: thetas, tau: tau_beta };
                    Ok((p1, p2, schlienz_mahler_beta(&rho_of_tau(&spec)?)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut beta_t = Table::new(&["p1", "p2", "p3", "beta"]);
    let mut beta_best = (f64::MIN, 0.0, 0.0);
    for &(p1, p2, b) in beta_rows.iter().flatten() {
        beta_t.rows.push(vec![num(p1), num(p2), num((1.0 - p1 - p2).max(0.0)), num(b)]);
        if b > beta_best.0 {
            beta_best = (b, p1, p2);
        }
    }
    let beta_origin = beta_rows[0][0].2;

    let angles = axis(0.0, TAU, n);
    let surface: Vec<Vec<f64>> = angles
        .par_iter()
        .map(|&tau| angles.iter().map(|&th| bell_on_p1(&obs, th, tau)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let edge = boundary_2d(&surface.iter().map(|r| r.iter().map(|&v| Some(v)).collect()).collect::<Vec<_>>());
    let mut bell_t = Table::new(&["tau", "theta1", "f_b", "boundary"]);
    let mut bell_best = (f64::MIN, 0.0, 0.0);
    for (i, &tau) in angles.iter().enumerate() {
        for (k, &th) in angles.iter().enumerate() {
            let f = surface[i][k];
            bell_t.rows.push(vec![num(tau), num(th), num(f), flag(edge[i][k])]);
            if f > bell_best.0 {
                bell_best = (f, tau, th);
            }
        }
    }

    let mut slice_t = Table::new(&["offset", "theta1", "tau", "f_b"]);
    let mut slice_var = Vec::new();
    for off in FIG3_SLICE_OFFSETS {
        let th = 1.5 * PI + off;
        let vals = angles.iter().map(|&tau| bell_on_p1(&obs, th, tau)).collect::<Result<Vec<_>>>()?;
        for (&tau, &f) in angles.iter().zip(&vals) {
            slice_t.rows.push(vec![num(off), num(th), num(tau), num(f)]);
        }
        slice_var.push(variance(&vals));
    }

    let mut pi_t = Table::new(&["theta1", "f_b", "beta", "boundary"]);
    let pi_vals = angles.iter().map(|&th| bell_on_p1(&obs, th, PI)).collect::<Result<Vec<_>>>()?;
    let pi_edge = boundary_1d(&pi_vals);
    for (k, &th) in angles.iter().enumerate() {
        let beta = schlienz_mahler_beta(&xstate_p1(th, PI));
        pi_t.rows.push(vec![num(th), num(pi_vals[k]), num(beta), flag(pi_edge[k])]);
    }

    let sum_t = summary(&[
        ("variant", cfg.variant.to_string()),
        ("bell_max", num(bell_best.0)),
        ("bell_argmax_tau", num(bell_best.1)),
        ("bell_argmax_theta1", num(bell_best.2)),
        ("slice_variance_minus", num(slice_var[0])),
        ("slice_variance", num(slice_var[1])),
        ("slice_variance_plus", num(slice_var[2])),
        ("beta_max", num(beta_best.0)),
        ("beta_argmax_p1", num(beta_best.1)),
        ("beta_argmax_p2", num(beta_best.2)),
        ("beta_origin", num(beta_origin)),
    ]);
    Ok(Bundle {
        tables: vec![
            ("fig3_beta".into(), beta_t),
            ("fig3_bell".into(), bell_t),
            ("fig3_slices".into(), slice_t),
            ("fig3_tau_pi".into(), pi_t),
            ("fig3_summary".into(), sum_t),
        ],
    })
}

/// τ values at which the p₂ = 1 trace over θ₂ is evaluated.
pub const FIG4_TAUS: [f64; 3] = [0.0, FRAC_PI_4, PI / 2.0];

/// Family B with the built-in presets: F_B over τ for p₁ = 1 at θ₁ (default
/// 3π/4), its local polish, and F_B over θ₂ for p₂ = 1 at three τ values.
pub fn run_fig4(cfg: &ScanConfig) -> Result<Bundle> {
    cfg.check(&["theta1", "polish_evals"])?;
    let theta1 = cfg.param("theta1", 3.0 * FRAC_PI_4);
    let polish_evals = cfg.param("polish_evals", 4000.0).max(1.0) as usize;
    let fam = QubitQutritFamilyB::default();
    let n = cfg.steps;
    let angles = axis(0.0, TAU, n);

    let obs1 = fam.build(&Preset::FamilyBP1.values())?;
    let trace1 = angles.par_iter().map(|&tau| bell_on_p1(&obs1, theta1, tau)).collect::<Result<Vec<_>>>()?;
    let edge1 = boundary_1d(&trace1);
    let mut t1 = Table::new(&["tau", "f_b", "boundary"]);
    for (k, &tau) in angles.iter().enumerate() {
        t1.rows.push(vec![num(tau), num(trace1[k]), flag(edge1[k])]);
    }
    let k1 = argmax(&trace1);
    let polished = polish(&xstate_p1(theta1, angles[k1]), &fam, &Preset::FamilyBP1.values(), polish_evals)?;

    let obs2 = fam.build(&Preset::FamilyBP2.values())?;
    let traces2: Vec<Vec<f64>> = FIG4_TAUS
        .iter()
        .map(|&tau| {
            angles
                .par_iter()
                .map(|&th| Ok(bell_parameter(&rho_of_tau(&MixtureSpec::pure(2, th, tau)?)?, &obs2)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let edge2 = boundary_1d(&traces2[0]);
    let mut t2 = Table::new(&["theta2", "f_b_tau0", "f_b_tau1", "f_b_tau2", "boundary"]);
    for (k, &th) in angles.iter().enumerate() {
        t2.rows.push(vec![num(th), num(traces2[0][k]), num(traces2[1][k]), num(traces2[2][k]), flag(edge2[k])]);
    }
    let peaks: Vec<f64> = traces2.iter().map(|t| t[argmax(t)]).collect();
    let spread = peaks.iter().cloned().fold(f64::MIN, f64::max) - peaks.iter().cloned().fold(f64::MAX, f64::min);

    let sum_t = summary(&[
        ("theta1", num(theta1)),
        ("peak1", num(trace1[k1])),
        ("peak1_tau", num(angles[k1])),
        ("cirelson_gap1", num(CIRELSON - trace1[k1])),
        ("peak1_polished", num(polished.f_b)),
        ("cirelson_gap1_polished", num(CIRELSON - polished.f_b)),
        ("polish_evaluations", polished.evaluations.to_string()),
        ("tau0", num(FIG4_TAUS[0])),
        ("tau1", num(FIG4_TAUS[1])),
        ("tau2", num(FIG4_TAUS[2])),
        ("peak2_tau0", num(peaks[0])),
        ("peak2_tau1", num(peaks[1])),
        ("peak2_tau2", num(peaks[2])),
        ("peak2_argmax_theta2", num(angles[argmax(&traces2[0])])),
        ("peak2_tau_spread", num(spread)),
    ]);
    Ok(Bundle {
        tables: vec![("fig4_p1".into(), t1), ("fig4_p2".into(), t2), ("fig4_summary".into(), sum_t)],
    })
}

/// Named built-in states for `optimize` and `state export`.
pub fn scenario_state(name: &str, params: &Params) -> Result<BipartiteState> {
    let p = |k: &str, d: f64| get_or(params, k, d);
    match name {
        "phi-plus" => {
            check_keys(params, &[])?;
            Ok(BipartiteState::from_pure(Spin::HALF, Spin::HALF, &psi_family_state(1.0, 0.0, 0.0, 0.0))?)
        }
        "dephased" => {
            check_keys(params, &[])?;
            let m = OperatorMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]);
            Ok(BipartiteState::new(Spin::HALF, Spin::HALF, m)?)
        }
        "psi" => {
            check_keys(params, &["alpha", "beta", "gamma", "delta"])?;
            let v = psi_family_state(p("alpha", 1.0), p("beta", 0.0), p("gamma", 0.0), p("delta", 0.0));
            Ok(BipartiteState::from_pure(Spin::HALF, Spin::HALF, &v)?)
        }
        "xstate-p1" => {
            check_keys(params, &["theta1", "tau"])?;
            Ok(xstate_p1(p("theta1", 3.0 * FRAC_PI_4), p("tau", 0.0)))
        }
        "mixture" => {
            check_keys(params, &["p1", "p2", "p3", "theta1", "theta2", "theta3", "tau"])?;
            let spec = MixtureSpec {
                p: [p("p1", 1.0), p("p2", 0.0), p("p3", 0.0)],
                theta: [p("theta1", 0.0), p("theta2", 0.0), p("theta3", 0.0)],
                tau: p("tau", 0.0),
            };
            Ok(rho_of_tau(&spec)?)
        }
        _ => Err(CliError::usage(format!(
            "unknown scenario {name:?}; expected phi-plus, dephased, psi, xstate-p1 or mixture"
        ))),
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeRequest {
    pub family: String,
    pub starts: usize,
    pub max_evals: usize,
    pub seed: u64,
    /// Polish from these parameters instead of a multi-start search.
    pub preset: Option<Preset>,
}

#[derive(Debug, Serialize)]
struct BellResultDoc<'a> {
    family: &'a str,
    f_b: f64,
    params: &'a [f64],
    evaluations: usize,
    seed: u64,
}

pub fn optimize(state: &BipartiteState, req: &OptimizeRequest) -> Result<BellResult> {
    let fam: Box<dyn ObservableFamily> = family_by_name(&req.family).map_err(|e| CliError::usage(e.to_string()))?;
    match req.preset {
        Some(p) => {
            let mut r = polish(state, fam.as_ref(), &p.values(), req.max_evals)?;
            r.seed = req.seed;
            Ok(r)
        }
        None => {
            let cfg = OptimizeConfig::new(fam.arity(), req.starts, req.max_evals, req.seed);
            Ok(optimize_bell(state, fam.as_ref(), &cfg)?)
        }
    }
}

pub fn result_json(r: &BellResult) -> String {
    let doc = BellResultDoc {
        family: &r.family,
        f_b: r.f_b,
        params: &r.params,
        evaluations: r.evaluations,
        seed: r.seed,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}
