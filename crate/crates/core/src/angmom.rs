//! Angular-momentum operators in the basis |k⟩ = |j, j−k+1⟩, k = 1..2j+1.
//!
//! Row/column index 0 of every matrix is the highest weight |j, j⟩. All
//! public functions that take basis labels `k`, `l` use the 1-based
//! convention of the ket labels; internally indices are 0-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{c, OperatorMatrix};

/// Largest supported 2j. Factorial prefactors beyond this lose all precision.
pub const MAX_TWICE_J: u32 = 60;

/// A spin quantum number, stored as 2j so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    twice_j: u32,
}

impl Spin {
    pub const HALF: Spin = Spin { twice_j: 1 };
    pub const ONE: Spin = Spin { twice_j: 2 };
    pub const THREE_HALVES: Spin = Spin { twice_j: 3 };

    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j > MAX_TWICE_J {
            return Err(Error::domain(format!(
                "2j = {twice_j} exceeds the supported maximum {MAX_TWICE_J}"
            )));
        }
        Ok(Self { twice_j })
    }

    /// Spin from a (half-)integer value such as 0.5 or 1.0.
    pub fn from_f64(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if twice.is_nan() || twice < 0.0 || (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::domain(format!("{j} is not a non-negative half-integer")));
        }
        Self::from_twice(twice.round() as u32)
    }

    /// Spin whose multiplet has dimension `d = 2j+1`.
    pub fn from_dim(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("dimension must be positive"));
        }
        Self::from_twice((d - 1) as u32)
    }

    pub fn twice_j(self) -> u32 {
        self.twice_j
    }

    pub fn j(self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    /// Magnetic quantum number m of the 0-based basis index.
    pub fn m_of_index(self, index: usize) -> f64 {
        self.j() - index as f64
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_j.is_multiple_of(2) {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

/// Raising (`Plus`) or lowering (`Minus`) ladder direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Plus,
    Minus,
}

/// ln(n!) accumulated as a sum of logarithms.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

pub fn factorial(n: u32) -> f64 {
    ln_factorial(n).exp()
}

pub fn jz(j: Spin) -> OperatorMatrix {
    let diag: Vec<f64> = (0..j.dim()).map(|k| j.m_of_index(k)).collect();
    OperatorMatrix::from_real_diagonal(&diag)
}

/// J₊ with elements ⟨j, m+1|J₊|j, m⟩ = √((j−m)(j+m+1)).
pub fn jplus(j: Spin) -> OperatorMatrix {
    let tj = i64::from(j.twice_j);
    let mut out = OperatorMatrix::zeros(j.dim());
    for col in 1..j.dim() {
        // twice m of the column state
        let tm = tj - 2 * col as i64;
        let value = (((tj - tm) * (tj + tm + 2)) as f64 / 4.0).sqrt();
        out.set(col - 1, col, c(value, 0.0));
    }
    out
}

pub fn jminus(j: Spin) -> OperatorMatrix {
    jplus(j).transpose()
}

pub fn ladder(j: Spin, direction: Ladder) -> OperatorMatrix {
    match direction {
        Ladder::Plus => jplus(j),
        Ladder::Minus => jminus(j),
    }
}

pub fn jx(j: Spin) -> OperatorMatrix {
    (jplus(j) + jminus(j)).scale_real(0.5)
}

pub fn jy(j: Spin) -> OperatorMatrix {
    (jplus(j) - jminus(j)).scale(c(0.0, -0.5))
}

/// J² = j(j+1)·I.
pub fn casimir(j: Spin) -> OperatorMatrix {
    OperatorMatrix::identity(j.dim()).scale_real(j.j() * (j.j() + 1.0))
}

/// Pauli matrices as 2·J for spin ½.
pub fn sigma_x() -> OperatorMatrix {
    jx(Spin::HALF).scale_real(2.0)
}

pub fn sigma_y() -> OperatorMatrix {
    jy(Spin::HALF).scale_real(2.0)
}

pub fn sigma_z() -> OperatorMatrix {
    jz(Spin::HALF).scale_real(2.0)
}

fn check_power(j: Spin, r: i64) -> Result<u32> {
    if r < 0 || r > i64::from(j.twice_j) {
        return Err(Error::domain(format!(
            "ladder power {r} outside 0..={} for j = {j}",
            j.twice_j
        )));
    }
    Ok(r as u32)
}

/// 𝒥±ʳ = √((2j−r)!/(r!(2j)!)) J±ʳ, so that 𝒥₋ʳ|j,j⟩ = |j,j−r⟩ and
/// 𝒥₊ʳ|j,−j⟩ = |j,−j+r⟩. `r = 0` gives the identity.
pub fn normalized_ladder_power(j: Spin, direction: Ladder, r: i64) -> Result<OperatorMatrix> {
    let r = check_power(j, r)?;
    let tj = j.twice_j;
    let norm = (0.5 * (ln_factorial(tj - r) - ln_factorial(r) - ln_factorial(tj))).exp();
    Ok(ladder(j, direction).pow(r).scale_real(norm))
}

fn check_label(j: Spin, label: i64, name: &str) -> Result<u32> {
    if label < 1 || label > j.dim() as i64 {
        return Err(Error::domain(format!(
            "basis label {name} = {label} outside 1..={}",
            j.dim()
        )));
    }
    Ok(label as u32)
}

/// A_kl = |k⟩⟨l| = 𝒥₊^{2j−k+1} 𝒥₋^{2j} 𝒥₊^{l−1}.
pub fn projector(j: Spin, k: i64, l: i64) -> Result<OperatorMatrix> {
    check_label(j, k, "k")?;
    check_label(j, l, "l")?;
    let tj = i64::from(j.twice_j);
    let left = normalized_ladder_power(j, Ladder::Plus, tj + 1 - k)?;
    let middle = normalized_ladder_power(j, Ladder::Minus, tj)?;
    let right = normalized_ladder_power(j, Ladder::Plus, l - 1)?;
    Ok(&(&left * &middle) * &right)
}

/// |k⟩⟨l| written as J₋^{k−1} J₊^{2j} J₋^{2j−l+1} with its factorial prefactor.
pub fn projector_alt_minus_plus(j: Spin, k: i64, l: i64) -> Result<OperatorMatrix> {
    let k = check_label(j, k, "k")?;
    let l = check_label(j, l, "l")?;
    let tj = j.twice_j;
    let lf = ln_factorial;
    // 1/((2j)!)² split evenly over the two factors that carry large entries.
    let inv = (-lf(tj)).exp();
    let root = (0.5 * (lf(tj + 1 - k) + lf(l - 1) - lf(tj + 1 - l) - lf(k - 1))).exp();
    let jm = jminus(j);
    let a = jm.pow(k - 1);
    let b = jplus(j).pow(tj).scale_real(inv);
    let d = jm.pow(tj + 1 - l).scale_real(inv * root);
    Ok(&(&a * &b) * &d)
}

/// |k⟩⟨l| written as J₊^{2j−k+1} J₋^{2j} J₊^{2j} J₋^{2j−l+1} with its factorial prefactor.
pub fn projector_alt_plus_minus(j: Spin, k: i64, l: i64) -> Result<OperatorMatrix> {
    let k = check_label(j, k, "k")?;
    let l = check_label(j, l, "l")?;
    let tj = j.twice_j;
    let lf = ln_factorial;
    let inv = (-lf(tj)).exp();
    let root = (0.5 * (lf(k - 1) + lf(l - 1) - lf(tj + 1 - k) - lf(tj + 1 - l))).exp();
    let jp = jplus(j);
    let jm = jminus(j);
    let a = jp.pow(tj + 1 - k).scale_real(inv);
    let b = jm.pow(tj).scale_real(inv);
    let d = jp.pow(tj).scale_real(inv);
    let e = jm.pow(tj + 1 - l).scale_real(root);
    Ok(&(&(&a * &b) * &d) * &e)
}

fn diagonal_of(j: Spin, f: impl Fn(f64) -> f64) -> OperatorMatrix {
    let diag: Vec<f64> = (0..j.dim()).map(|k| f(j.m_of_index(k))).collect();
    OperatorMatrix::from_real_diagonal(&diag)
}

/// F_k = F(J_z − kI) with F(x) = J² − x² + x; F₀ = J₊J₋.
pub fn functional_f(j: Spin, k: u32) -> OperatorMatrix {
    let jj = j.j() * (j.j() + 1.0);
    let shift = f64::from(k);
    diagonal_of(j, |m| {
        let x = m - shift;
        jj - x * x + x
    })
}

/// G_k = G(J_z + kI) with G(x) = J² − x² − x; G₀ = J₋J₊.
pub fn functional_g(j: Spin, k: u32) -> OperatorMatrix {
    let jj = j.j() * (j.j() + 1.0);
    let shift = f64::from(k);
    diagonal_of(j, |m| {
        let x = m + shift;
        jj - x * x - x
    })
}

/// J₊ᵏJ₋ᵐ (`left = Plus`) or J₋ᵏJ₊ᵐ (`left = Minus`), evaluated through the
/// diagonal factorization
///
/// ```text
/// m ≥ k:  J₊ᵏJ₋ᵐ = F_{k−1}⋯F₀ J₋^{m−k}      m < k:  J₊ᵏJ₋ᵐ = F_{k−1}⋯F_{k−m} J₊^{k−m}
/// ```
///
/// and the same with G and the directions swapped.
pub fn ladder_product(j: Spin, left: Ladder, k: u32, m: u32) -> OperatorMatrix {
    let functional = |s: u32| match left {
        Ladder::Plus => functional_f(j, s),
        Ladder::Minus => functional_g(j, s),
    };
    let (left_op, right_op) = match left {
        Ladder::Plus => (jplus(j), jminus(j)),
        Ladder::Minus => (jminus(j), jplus(j)),
    };
    let factors = k.min(m);
    let mut acc = OperatorMatrix::identity(j.dim());
    for s in 1..=factors {
        acc = &acc * &functional(k - s);
    }
    if m >= k {
        &acc * &right_op.pow(m - k)
    } else {
        &acc * &left_op.pow(k - m)
    }
}
