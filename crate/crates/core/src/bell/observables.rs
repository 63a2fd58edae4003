use crate::error::{Error, Result};
use crate::linalg::OperatorMatrix;

/// Tolerance on ‖A² − I‖∞ and on the Hermiticity defect.
pub const DICHOTOMY_TOL: f64 = 1e-10;

/// A Hermitian observable with spectrum in {−1, +1}.
#[derive(Debug, Clone, PartialEq)]
pub struct DichotomicObservable {
    mat: OperatorMatrix,
}

impl DichotomicObservable {
    pub fn new(mat: OperatorMatrix) -> Result<Self> {
        let defect = mat.hermiticity_defect();
        if defect > DICHOTOMY_TOL {
            return Err(Error::domain(format!("observable is not Hermitian (defect {defect:e})")));
        }
        let sq = &mat * &mat;
        let dev = sq.max_abs_diff(&OperatorMatrix::identity(mat.dim()));
        if dev > DICHOTOMY_TOL {
            return Err(Error::domain(format!("observable is not dichotomic (‖A²−I‖ = {dev:e})")));
        }
        Ok(Self { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.mat
    }
}

/// Alice's (A₁, A₂) and Bob's (B₁, B₂).
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSet {
    pub a1: DichotomicObservable,
    pub a2: DichotomicObservable,
    pub b1: DichotomicObservable,
    pub b2: DichotomicObservable,
}

impl ObservableSet {
    pub fn new(a1: OperatorMatrix, a2: OperatorMatrix, b1: OperatorMatrix, b2: OperatorMatrix) -> Result<Self> {
        let set = Self {
            a1: DichotomicObservable::new(a1)?,
            a2: DichotomicObservable::new(a2)?,
            b1: DichotomicObservable::new(b1)?,
            b2: DichotomicObservable::new(b2)?,
        };
        if set.a1.dim() != set.a2.dim() || set.b1.dim() != set.b2.dim() {
            return Err(Error::domain("observables on the same side must share a dimension"));
        }
        Ok(set)
    }

    /// (d_A, d_B).
    pub fn dims(&self) -> (usize, usize) {
        (self.a1.dim(), self.b1.dim())
    }
}
