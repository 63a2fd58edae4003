//! Two-qudit states in the product basis.
//!
//! The composite index of |k₁⟩|k₂⟩ is (k₁−1)·d₂ + k₂ (1-based), i.e.
//! row-major over subsystem 1 then subsystem 2, which is the ordering of
//! the Kronecker product ρ₁ ⊗ ρ₂.

use num_complex::Complex64;

use crate::angmom::{projector, sigma_z, Spin};
use crate::error::{Error, Result};
use crate::linalg::{OperatorMatrix, ZERO};
use crate::state::DensityMatrix;

/// Which subsystem an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    j1: Spin,
    j2: Spin,
    rho: DensityMatrix,
}

impl BipartiteState {
    pub fn new(j1: Spin, j2: Spin, mat: OperatorMatrix) -> Result<Self> {
        let expected = j1.dim() * j2.dim();
        if mat.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: mat.dim(),
            });
        }
        let rho = DensityMatrix::new(mat)?;
        Ok(Self { j1, j2, rho })
    }

    pub fn from_pure(j1: Spin, j2: Spin, psi: &[Complex64]) -> Result<Self> {
        Self::new(j1, j2, OperatorMatrix::outer(psi))
    }

    pub fn j1(&self) -> Spin {
        self.j1
    }

    pub fn j2(&self) -> Spin {
        self.j2
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.j1.dim(), self.j2.dim())
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        self.rho.matrix()
    }

    pub fn is_two_qubit(&self) -> bool {
        self.j1 == Spin::HALF && self.j2 == Spin::HALF
    }

    /// 0-based composite index of 1-based subsystem labels.
    pub fn composite_index(&self, k1: usize, k2: usize) -> usize {
        (k1 - 1) * self.j2.dim() + (k2 - 1)
    }

    /// Tr(ρ (A ⊗ B)).
    pub fn expectation_product(&self, a: &OperatorMatrix, b: &OperatorMatrix) -> Result<Complex64> {
        let (d1, d2) = self.dims();
        if a.dim() != d1 {
            return Err(Error::DimensionMismatch { expected: d1, found: a.dim() });
        }
        if b.dim() != d2 {
            return Err(Error::DimensionMismatch { expected: d2, found: b.dim() });
        }
        Ok(self.matrix().trace_product(&a.kron(b)))
    }
}

/// ρ₁ ⊗ ρ₂.
pub fn compose_product(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<BipartiteState> {
    BipartiteState::new(rho1.spin(), rho2.spin(), rho1.matrix().kron(rho2.matrix()))
}

/// ρ_{k̃l̃} = Tr(ρ A_{l₁k₁} ⊗ A_{l₂k₂}) with 1-based labels.
pub fn element(state: &BipartiteState, k1: usize, k2: usize, l1: usize, l2: usize) -> Result<Complex64> {
    let a1 = projector(state.j1, l1 as i64, k1 as i64)?;
    let a2 = projector(state.j2, l2 as i64, k2 as i64)?;
    state.expectation_product(&a1, &a2)
}

/// Traces out subsystem 1, leaving the state of subsystem 2.
pub fn reduce_first(state: &BipartiteState) -> DensityMatrix {
    let (d1, d2) = state.dims();
    let m = state.matrix();
    let out = OperatorMatrix::from_fn(d2, |k2, l2| {
        (0..d1).map(|k1| m.get(k1 * d2 + k2, k1 * d2 + l2)).sum()
    });
    DensityMatrix::new(out).expect("partial trace of a valid state is valid")
}

/// Traces out subsystem 2, leaving the state of subsystem 1.
pub fn reduce_second(state: &BipartiteState) -> DensityMatrix {
    let (d1, d2) = state.dims();
    let m = state.matrix();
    let out = OperatorMatrix::from_fn(d1, |k1, l1| {
        (0..d2).map(|k2| m.get(k1 * d2 + k2, l1 * d2 + k2)).sum()
    });
    DensityMatrix::new(out).expect("partial trace of a valid state is valid")
}

/// Partial transpose of any d₁d₂ × d₁d₂ matrix on the given side.
pub fn partial_transpose_matrix(m: &OperatorMatrix, d1: usize, d2: usize, side: Side) -> OperatorMatrix {
    OperatorMatrix::from_fn(d1 * d2, |row, col| {
        let (k1, k2) = (row / d2, row % d2);
        let (l1, l2) = (col / d2, col % d2);
        match side {
            Side::First => m.get(l1 * d2 + k2, k1 * d2 + l2),
            Side::Second => m.get(k1 * d2 + l2, l1 * d2 + k2),
        }
    })
}

/// ρ^{T₁}: (k₁k₂, l₁l₂) ↦ ρ_{l₁k₂, k₁l₂}.
pub fn partial_transpose_first(state: &BipartiteState) -> OperatorMatrix {
    let (d1, d2) = state.dims();
    partial_transpose_matrix(state.matrix(), d1, d2, Side::First)
}

/// ρ^{T₂}: (k₁k₂, l₁l₂) ↦ ρ_{k₁l₂, l₁k₂}.
pub fn partial_transpose_second(state: &BipartiteState) -> OperatorMatrix {
    let (d1, d2) = state.dims();
    partial_transpose_matrix(state.matrix(), d1, d2, Side::Second)
}

pub fn partial_transpose(state: &BipartiteState, side: Side) -> OperatorMatrix {
    match side {
        Side::First => partial_transpose_first(state),
        Side::Second => partial_transpose_second(state),
    }
}

/// Sum of the magnitudes of the negative eigenvalues of the partial transpose.
pub fn negativity(state: &BipartiteState, side: Side) -> f64 {
    partial_transpose(state, side)
        .hermitian_eigenvalues()
        .into_iter()
        .filter(|&x| x < 0.0)
        .map(f64::abs)
        .sum()
}

/// log₂(2N + 1).
pub fn log_negativity(state: &BipartiteState, side: Side) -> f64 {
    (2.0 * negativity(state, side) + 1.0).log2()
}

/// σ_z ⊗ σ_z.
pub fn x_commuting_element() -> OperatorMatrix {
    sigma_z().kron(&sigma_z())
}

/// True when (row, col) is on the diagonal or anti-diagonal of a 4×4 matrix.
pub fn is_x_position(row: usize, col: usize) -> bool {
    row == col || row + col == 3
}

/// ½(ρ + X₁ρX₁) with every non-X entry set to exactly zero.
pub fn x_state_projection(state: &BipartiteState) -> Result<BipartiteState> {
    if !state.is_two_qubit() {
        return Err(Error::domain("X-state projection needs a two-qubit state"));
    }
    let x1 = x_commuting_element();
    let m = state.matrix();
    let sum = m + &(&(&x1 * m) * &x1);
    let mut projected = sum.scale_real(0.5);
    for row in 0..4 {
        for col in 0..4 {
            if !is_x_position(row, col) {
                projected.set(row, col, ZERO);
            }
        }
    }
    BipartiteState::new(Spin::HALF, Spin::HALF, projected)
}
