//! Generalized Gell-Mann generators of su(d) assembled from the
//! ladder-operator projectors, and the expansion of operators on them.

use num_complex::Complex64;

use crate::angmom::{projector, Spin};
use crate::error::{Error, Result};
use crate::linalg::{c, OperatorMatrix, I, ZERO};

/// Which block of the generator list an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// A_kl + A_lk (k < l, 1-based).
    Symmetric { k: usize, l: usize },
    /// i(A_lk − A_kl) (k < l, 1-based).
    Antisymmetric { k: usize, l: usize },
    /// √(2/(r(r+1)))(Σ_{k≤r} A_kk − r A_{r+1,r+1}).
    Diagonal { r: usize },
}

/// The d²−1 generators ordered as: symmetric block, antisymmetric block,
/// diagonal block. Inside the off-diagonal blocks pairs (k, l) with k < l
/// run lexicographically; the diagonal block runs over r = 1..d−1.
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    dim: usize,
    generators: Vec<OperatorMatrix>,
    kinds: Vec<GeneratorKind>,
}

impl GellMannBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[OperatorMatrix] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> &OperatorMatrix {
        &self.generators[index]
    }

    pub fn kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    /// Indices of the off-diagonal (symmetric and antisymmetric) generators.
    pub fn off_diagonal(&self) -> impl Iterator<Item = usize> + '_ {
        self.kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| !matches!(k, GeneratorKind::Diagonal { .. }))
            .map(|(i, _)| i)
    }

    /// Real coefficient vector λ_k = Tr(ρΛ_k) of a Hermitian operator.
    pub fn real_components(&self, op: &OperatorMatrix) -> Result<Vec<f64>> {
        self.check_dim(op)?;
        Ok(self.generators.iter().map(|g| op.trace_product(g).re).collect())
    }

    fn check_dim(&self, op: &OperatorMatrix) -> Result<()> {
        if op.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: op.dim(),
            });
        }
        Ok(())
    }
}

pub fn gell_mann(d: usize) -> Result<GellMannBasis> {
    if d < 2 {
        return Err(Error::domain(format!("Gell-Mann basis needs d >= 2, got {d}")));
    }
    let j = Spin::from_dim(d)?;
    let a = |k: usize, l: usize| projector(j, k as i64, l as i64);

    let pairs: Vec<(usize, usize)> = (1..=d)
        .flat_map(|k| (k + 1..=d).map(move |l| (k, l)))
        .collect();
    let mut generators = Vec::with_capacity(d * d - 1);
    let mut kinds = Vec::with_capacity(d * d - 1);

    for &(k, l) in &pairs {
        generators.push(&a(k, l)? + &a(l, k)?);
        kinds.push(GeneratorKind::Symmetric { k, l });
    }
    for &(k, l) in &pairs {
        generators.push((&a(l, k)? - &a(k, l)?).scale(I));
        kinds.push(GeneratorKind::Antisymmetric { k, l });
    }
    for r in 1..d {
        let mut sum = OperatorMatrix::zeros(d);
        for k in 1..=r {
            sum = &sum + &a(k, k)?;
        }
        let lam = &sum - &a(r + 1, r + 1)?.scale_real(r as f64);
        let norm = (2.0 / (r * (r + 1)) as f64).sqrt();
        generators.push(lam.scale_real(norm));
        kinds.push(GeneratorKind::Diagonal { r });
    }

    Ok(GellMannBasis {
        dim: d,
        generators,
        kinds,
    })
}

/// O = (Tr O/d) I + ½ Σ_k Tr(OΛ_k) Λ_k; returns (Tr O, [Tr(OΛ_k)]).
pub fn expand_operator(
    op: &OperatorMatrix,
    basis: &GellMannBasis,
) -> Result<(Complex64, Vec<Complex64>)> {
    basis.check_dim(op)?;
    let coeffs = basis.generators.iter().map(|g| op.trace_product(g)).collect();
    Ok((op.trace(), coeffs))
}

pub fn reconstruct_operator(
    trace: Complex64,
    coeffs: &[Complex64],
    basis: &GellMannBasis,
) -> Result<OperatorMatrix> {
    if coeffs.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: coeffs.len(),
        });
    }
    let d = basis.dim;
    let mut out = OperatorMatrix::identity(d).scale(trace / d as f64);
    for (coef, g) in coeffs.iter().zip(&basis.generators) {
        if *coef != ZERO {
            out = &out + &g.scale(coef * c(0.5, 0.0));
        }
    }
    Ok(out)
}
