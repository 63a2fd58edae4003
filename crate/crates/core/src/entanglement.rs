//! Concurrence, entanglement of formation and the Schlienz-Mahler β parameter.

use crate::angmom::sigma_y;
use crate::bipartite::{negativity, reduce_first, reduce_second, BipartiteState, Side};
use crate::error::{Error, Result};
use crate::gell_mann::gell_mann;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: Option<f64>,
    pub eof: Option<f64>,
    pub beta: f64,
    pub negativity: f64,
}

fn require_two_qubit(state: &BipartiteState) -> Result<()> {
    if state.is_two_qubit() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "two-qubit state required, got dimensions {:?}",
            state.dims()
        )))
    }
}

/// Wootters concurrence max(0, μ₁−μ₂−μ₃−μ₄), μ the decreasing square roots of
/// the eigenvalues of ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y).
pub fn concurrence(state: &BipartiteState) -> Result<f64> {
    require_two_qubit(state)?;
    let rho = state.matrix();
    let yy = sigma_y().kron(&sigma_y());
    // μᵢ are the singular values of √ρ (σ_y⊗σ_y) √ρ*, whose Gram matrix is √ρ ρ̃ √ρ.
    let root = rho.hermitian_map(|x| x.max(0.0).sqrt().into());
    let m = &(&root * &yy) * &root.conj();
    let mut mu: Vec<f64> = m.as_matrix().singular_values().iter().copied().collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).clamp(0.0, 1.0))
}

fn h(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// E_F = −x₊log₂x₊ − x₋log₂x₋ with x± = (1 ± √(1−C²))/2.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !c.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&c) {
        return Err(Error::domain(format!("concurrence {c} outside [0, 1]")));
    }
    let c = c.clamp(0.0, 1.0);
    let s = (1.0 - c * c).sqrt();
    Ok(h((1.0 + s) / 2.0) + h((1.0 - s) / 2.0))
}

pub fn entanglement_of_formation(state: &BipartiteState) -> Result<f64> {
    eof_from_concurrence(concurrence(state)?)
}

/// Σ_{kl} |⟨Λ_k⊗Λ_l⟩ − ⟨Λ_k⟩⟨Λ_l⟩|² over the generalized Gell-Mann bases.
pub fn correlation_tensor_norm(state: &BipartiteState) -> f64 {
    let (d1, d2) = state.dims();
    if d1 < 2 || d2 < 2 {
        return 0.0;
    }
    let b1 = gell_mann(d1).expect("dimension checked");
    let b2 = gell_mann(d2).expect("dimension checked");
    let first = reduce_second(state);
    let second = reduce_first(state);
    let a: Vec<f64> = b1.generators().iter().map(|g| first.matrix().trace_product(g).re).collect();
    let b: Vec<f64> = b2.generators().iter().map(|g| second.matrix().trace_product(g).re).collect();
    let rho = state.matrix();
    let mut total = 0.0;
    for (gk, ak) in b1.generators().iter().zip(&a) {
        for (gl, bl) in b2.generators().iter().zip(&b) {
            let m = rho.trace_product(&gk.kron(gl)).re - ak * bl;
            total += m * m;
        }
    }
    total
}

/// Correlation-tensor norm of the maximally entangled state of Schmidt rank n.
pub fn max_correlation_norm(n: usize) -> f64 {
    let n = n as f64;
    4.0 * (1.0 - 1.0 / (n * n))
}

/// β = Σ|M_kl|² scaled so that the maximally entangled state of the smaller
/// subsystem gives 1. Zero when either subsystem is one-dimensional.
pub fn schlienz_mahler_beta(state: &BipartiteState) -> f64 {
    let (d1, d2) = state.dims();
    let n = d1.min(d2);
    if n < 2 {
        return 0.0;
    }
    correlation_tensor_norm(state) / max_correlation_norm(n)
}

pub fn report(state: &BipartiteState) -> EntanglementReport {
    let (concurrence, eof) = match concurrence(state) {
        Ok(c) => (Some(c), eof_from_concurrence(c).ok()),
        Err(_) => (None, None),
    };
    EntanglementReport {
        concurrence,
        eof,
        beta: schlienz_mahler_beta(state),
        negativity: negativity(state, Side::First),
    }
}
