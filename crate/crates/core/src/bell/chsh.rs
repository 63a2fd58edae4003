use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::angmom::{sigma_x, sigma_y, sigma_z};
use crate::bipartite::{is_x_position, BipartiteState};
use crate::error::{Error, Result};
use crate::linalg::{c, OperatorMatrix};

use super::observables::{DichotomicObservable, ObservableSet};

pub const CIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;

const REAL_TOL: f64 = 1e-10;
const X_FORM_TOL: f64 = 1e-12;

/// E(A, B) = Tr(ρ (A ⊗ B)).
pub fn correlation(state: &BipartiteState, a: &DichotomicObservable, b: &DichotomicObservable) -> Result<f64> {
    let (d1, d2) = state.dims();
    if a.dim() != d1 || b.dim() != d2 {
        return Err(Error::domain(format!(
            "observables of dimensions ({}, {}) do not act on a {d1}×{d2} state",
            a.dim(),
            b.dim()
        )));
    }
    let e = state.expectation_product(a.matrix(), b.matrix())?;
    if e.im.abs() > REAL_TOL {
        return Err(Error::Numerical(format!("correlation has imaginary part {:e}", e.im)));
    }
    Ok(e.re)
}

/// F_B = |E(A₁,B₁) + E(A₁,B₂) − E(A₂,B₁) + E(A₂,B₂)|.
pub fn bell_parameter(state: &BipartiteState, obs: &ObservableSet) -> Result<f64> {
    let e11 = correlation(state, &obs.a1, &obs.b1)?;
    let e12 = correlation(state, &obs.a1, &obs.b2)?;
    let e21 = correlation(state, &obs.a2, &obs.b1)?;
    let e22 = correlation(state, &obs.a2, &obs.b2)?;
    Ok((e11 + e12 - e21 + e22).abs())
}

fn diagonal_pair() -> (OperatorMatrix, OperatorMatrix) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let b1 = (sigma_x() + sigma_z()).scale_real(s);
    let b2 = (sigma_x() - sigma_z()).scale_real(s);
    (b1, b2)
}

/// A₁ = σ_z, A₂ = σ_x, B₁ = (σ_x+σ_z)/√2, B₂ = (σ_x−σ_z)/√2.
pub fn standard_two_qubit_observables() -> ObservableSet {
    let (b1, b2) = diagonal_pair();
    ObservableSet::new(sigma_z(), sigma_x(), b1, b2).expect("fixed observables are dichotomic")
}

/// As the standard set but with A₁ = σ_y.
pub fn xstate_observables() -> ObservableSet {
    let (b1, b2) = diagonal_pair();
    ObservableSet::new(sigma_y(), sigma_x(), b1, b2).expect("fixed observables are dichotomic")
}

/// 2√2 |x + y| with x = r₁₄ sin φ₁₄, y = r₂₃ sin φ₂₃.
pub fn xstate_bell_formula(x: f64, y: f64) -> f64 {
    CIRELSON * (x + y).abs()
}

/// Closed-form Bell factor of an X-state under [`xstate_observables`].
pub fn xstate_bell_closed_form(state: &BipartiteState) -> Result<f64> {
    if !state.is_two_qubit() {
        return Err(Error::domain("closed form needs a two-qubit state"));
    }
    let m = state.matrix();
    for row in 0..4 {
        for col in 0..4 {
            let v = m.get(row, col).norm();
            if !is_x_position(row, col) && v > X_FORM_TOL {
                return Err(Error::domain(format!("entry ({row}, {col}) = {v:e} breaks the X form")));
            }
        }
    }
    Ok(xstate_bell_formula(m.get(0, 3).im, m.get(1, 2).im))
}

/// Maximum of F_B over all observable choices: 2√(m₁+m₂), m₁ ≥ m₂ the two
/// largest eigenvalues of TᵀT with T_kl = Tr(ρ σ_k⊗σ_l).
pub fn horodecki_max_bell(state: &BipartiteState) -> Result<f64> {
    if !state.is_two_qubit() {
        return Err(Error::domain("Horodecki bound needs a two-qubit state"));
    }
    let paulis = [sigma_x(), sigma_y(), sigma_z()];
    let rho = state.matrix();
    let t = Matrix3::from_fn(|k, l| rho.trace_product(&paulis[k].kron(&paulis[l])).re);
    let mut eig: Vec<f64> = (t.transpose() * t).symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok(2.0 * (eig[0] + eig[1]).max(0.0).sqrt())
}

/// α|φ₊⟩ + β|φ₋⟩ + γ|ψ₋⟩ + δ|ψ₊⟩ in the product basis |++⟩, |+−⟩, |−+⟩, |−−⟩.
pub fn psi_family_state(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Vec<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        c(s * (alpha + beta), 0.0),
        c(s * (gamma + delta), 0.0),
        c(s * (delta - gamma), 0.0),
        c(s * (alpha - beta), 0.0),
    ]
}
