//! Single-qudit density matrices and their expectation-value parametrization.
//!
//! Entry (k, l) of a density matrix is the expectation value of the
//! projector A_lk = 𝒥₊^{2j−l+1} 𝒥₋^{2j} 𝒥₊^{k−1}. [`ExpectationTable`]
//! holds those expectation values; [`DensityMatrix`] is the validated matrix.

use num_complex::Complex64;

use crate::angmom::{projector, Spin};
use crate::error::{Error, Invariant, Result};
use crate::gell_mann::GellMannBasis;
use crate::linalg::OperatorMatrix;

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_FLOOR: f64 = -1e-9;

/// Checks the three density-matrix invariants, naming the first that fails.
pub fn validate(mat: &OperatorMatrix) -> Result<()> {
    let defect = mat.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::validation(
            Invariant::Hermitian,
            format!("max |ρ_kl − conj(ρ_lk)| = {defect:.3e}"),
        ));
    }
    let tr = mat.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::validation(
            Invariant::Trace,
            format!("trace = {:.12} {:+.3e}i", tr.re, tr.im),
        ));
    }
    let min_eig = mat.hermitian_eigenvalues()[0];
    if min_eig < PSD_FLOOR {
        return Err(Error::validation(
            Invariant::Psd,
            format!("negative eigenvalue {min_eig:.6e}"),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    spin: Spin,
    mat: OperatorMatrix,
}

impl DensityMatrix {
    pub fn new(mat: OperatorMatrix) -> Result<Self> {
        let spin = Spin::from_dim(mat.dim())?;
        validate(&mat)?;
        Ok(Self { spin, mat })
    }

    /// |ψ⟩⟨ψ| for a normalized state vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        Self::new(OperatorMatrix::outer(psi))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(OperatorMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.mat
    }

    /// Tr(ρ O).
    pub fn expectation(&self, op: &OperatorMatrix) -> Result<Complex64> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: op.dim(),
            });
        }
        Ok(self.mat.trace_product(op))
    }

    /// Eigenvalues clipped at zero and renormalized to sum to one.
    pub fn clipped_spectrum(&self) -> Vec<f64> {
        let vals: Vec<f64> = self
            .mat
            .hermitian_eigenvalues()
            .into_iter()
            .map(|x| x.max(0.0))
            .collect();
        let total: f64 = vals.iter().sum();
        vals.into_iter().map(|x| x / total).collect()
    }
}

/// Entry (k, l) holds ⟨𝒥₊^{2j−l+1} 𝒥₋^{2j} 𝒥₊^{k−1}⟩ (row-major, 0-based storage).
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationTable {
    spin: Spin,
    values: Vec<Vec<Complex64>>,
}

impl ExpectationTable {
    pub fn new(spin: Spin, values: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = spin.dim();
        if values.len() != d || values.iter().any(|r| r.len() != d) {
            return Err(Error::validation(
                Invariant::Square,
                format!("expectation table must be {d}x{d}"),
            ));
        }
        Ok(Self { spin, values })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn values(&self) -> &[Vec<Complex64>] {
        &self.values
    }

    /// Value at 1-based labels (k, l).
    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.values[k - 1][l - 1]
    }
}

/// Tabulates Tr(ρ A_lk) for every (k, l).
pub fn expectations_of(rho: &DensityMatrix) -> ExpectationTable {
    let j = rho.spin();
    let d = j.dim();
    let values = (1..=d)
        .map(|k| {
            (1..=d)
                .map(|l| {
                    let a_lk = projector(j, l as i64, k as i64).expect("labels in range");
                    rho.matrix().trace_product(&a_lk)
                })
                .collect()
        })
        .collect();
    ExpectationTable { spin: j, values }
}

/// ρ_kl = table(k, l), validated as a density matrix.
pub fn from_expectations(table: &ExpectationTable) -> Result<DensityMatrix> {
    let mat = OperatorMatrix::from_rows(&table.values)?;
    DensityMatrix::new(mat)
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().trace_product(rho.matrix()).re
}

/// λ_k = Tr(ρΛ_k) over the Gell-Mann generators of matching dimension.
pub fn bloch_vector(rho: &DensityMatrix, basis: &GellMannBasis) -> Result<Vec<f64>> {
    basis.real_components(rho.matrix())
}

/// ρ = I/d + ½ Σ λ_k Λ_k.
pub fn from_bloch_vector(lambda: &[f64], basis: &GellMannBasis) -> Result<DensityMatrix> {
    let coeffs: Vec<Complex64> = lambda.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mat = crate::gell_mann::reconstruct_operator(Complex64::new(1.0, 0.0), &coeffs, basis)?;
    DensityMatrix::new(mat)
}
