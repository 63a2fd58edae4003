use std::f64::consts::PI;
use std::fmt;

use crate::angmom::{jx, jz, sigma_x, sigma_y, sigma_z, Spin};
use crate::error::{Error, Result};
use crate::gell_mann::gell_mann;
use crate::linalg::OperatorMatrix;

use super::observables::ObservableSet;

/// A real-parametrized family of CHSH observable tuples.
pub trait ObservableFamily: Send + Sync {
    fn name(&self) -> &str;
    fn arity(&self) -> usize;
    /// (d_A, d_B) of the produced observables.
    fn dims(&self) -> (usize, usize);
    fn build(&self, params: &[f64]) -> Result<ObservableSet>;
}

fn check_arity(family: &dyn ObservableFamily, params: &[f64]) -> Result<()> {
    if params.len() != family.arity() {
        return Err(Error::domain(format!(
            "{} takes {} parameters, got {}",
            family.name(),
            family.arity(),
            params.len()
        )));
    }
    Ok(())
}

/// Reading of the third generator in u₂ = exp(i(α₃σ_z + α₄σ_y + α₅σ_?)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum U2Variant {
    #[default]
    X,
    Y,
}

impl fmt::Display for U2Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            U2Variant::X => write!(f, "u2-x"),
            U2Variant::Y => write!(f, "u2-y"),
        }
    }
}

impl std::str::FromStr for U2Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u2-x" => Ok(U2Variant::X),
            "u2-y" => Ok(U2Variant::Y),
            _ => Err(Error::domain(format!("unknown u2 variant {s:?}"))),
        }
    }
}

/// Qubit-qutrit family with parameters (α₁, α₂, α₃, α₄, α₅, β₁, β₂):
/// A₁ = u₁σ_zu₁†, A₂ = u₂σ_zu₂†, B₁ = I − J_z(J_z − I), B₂ = UB₁U†,
/// u₁ = exp(i(α₁σ_z + α₂σ_y)), U = exp(iβ₁J_z) exp(iβ₂J_x).
#[derive(Debug, Clone, Copy, Default)]
pub struct QubitQutritFamilyA {
    pub variant: U2Variant,
}

impl QubitQutritFamilyA {
    pub fn new(variant: U2Variant) -> Self {
        Self { variant }
    }

    /// diag(1, 1, −1).
    pub fn b1() -> OperatorMatrix {
        let z = jz(Spin::ONE);
        let id = OperatorMatrix::identity(3);
        &id - &(&z * &(&z - &id))
    }
}

impl ObservableFamily for QubitQutritFamilyA {
    fn name(&self) -> &str {
        match self.variant {
            U2Variant::X => "family-a",
            U2Variant::Y => "family-a-y",
        }
    }

    fn arity(&self) -> usize {
        7
    }

    fn dims(&self) -> (usize, usize) {
        (2, 3)
    }

    fn build(&self, p: &[f64]) -> Result<ObservableSet> {
        check_arity(self, p)?;
        let (sx, sy, sz) = (sigma_x(), sigma_y(), sigma_z());
        let u1 = (sz.scale_real(p[0]) + sy.scale_real(p[1])).expm_i_hermitian(1.0);
        let third = match self.variant {
            U2Variant::X => &sx,
            U2Variant::Y => &sy,
        };
        let g2 = sz.scale_real(p[2]) + sy.scale_real(p[3]) + third.scale_real(p[4]);
        let u2 = g2.expm_i_hermitian(1.0);
        let u = jz(Spin::ONE).expm_i_hermitian(p[5]) * jx(Spin::ONE).expm_i_hermitian(p[6]);
        let b1 = Self::b1();
        let b2 = b1.conjugate_by(&u);
        ObservableSet::new(sz.conjugate_by(&u1), sz.conjugate_by(&u2), b1, b2)
    }
}

/// Ordering of the six off-diagonal su(3) generators Λ₁…Λ₆.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SuThreeOrder {
    /// All symmetric generators (12, 13, 23), then all antisymmetric ones.
    #[default]
    Grouped,
    /// Interleaved λ₁, λ₂, λ₄, λ₅, λ₆, λ₇.
    Interleaved,
}

/// Qubit-qutrit family with parameters (α, c, b₁, …, b₆):
/// A(a) = [[cos a, −sin a], [−sin a, −cos a]] for A₁ = A(α), A₂ = A(c),
/// B₁ = diag(1, −1, −1), B₂ = U diag(−1, 1, 1) U†,
/// U = exp(ib₆Λ₆) ⋯ exp(ib₁Λ₁).
#[derive(Debug, Clone)]
pub struct QubitQutritFamilyB {
    order: SuThreeOrder,
    generators: Vec<OperatorMatrix>,
}

impl QubitQutritFamilyB {
    pub fn new(order: SuThreeOrder) -> Self {
        let basis = gell_mann(3).expect("d = 3 is valid");
        let off: Vec<usize> = basis.off_diagonal().collect();
        let picks = match order {
            SuThreeOrder::Grouped => [0, 1, 2, 3, 4, 5],
            SuThreeOrder::Interleaved => [0, 3, 1, 4, 2, 5],
        };
        let generators = picks.iter().map(|&i| basis.generator(off[i]).clone()).collect();
        Self { order, generators }
    }

    pub fn order(&self) -> SuThreeOrder {
        self.order
    }

    pub fn reflection(a: f64) -> OperatorMatrix {
        sigma_z().scale_real(a.cos()) - sigma_x().scale_real(a.sin())
    }

    pub fn unitary(&self, b: &[f64]) -> OperatorMatrix {
        let mut u = OperatorMatrix::identity(3);
        for (g, &bk) in self.generators.iter().zip(b).rev() {
            u = &u * &g.expm_i_hermitian(bk);
        }
        u
    }
}

impl Default for QubitQutritFamilyB {
    fn default() -> Self {
        Self::new(SuThreeOrder::default())
    }
}

impl ObservableFamily for QubitQutritFamilyB {
    fn name(&self) -> &str {
        "family-b"
    }

    fn arity(&self) -> usize {
        8
    }

    fn dims(&self) -> (usize, usize) {
        (2, 3)
    }

    fn build(&self, p: &[f64]) -> Result<ObservableSet> {
        check_arity(self, p)?;
        let u = self.unitary(&p[2..]);
        let b1 = OperatorMatrix::from_real_diagonal(&[1.0, -1.0, -1.0]);
        let b2 = OperatorMatrix::from_real_diagonal(&[-1.0, 1.0, 1.0]).conjugate_by(&u);
        ObservableSet::new(Self::reflection(p[0]), Self::reflection(p[1]), b1, b2)
    }
}

/// Two-qubit family n·σ per observable, parameters (θ, φ) for A₁, A₂, B₁, B₂.
#[derive(Debug, Clone, Copy, Default)]
pub struct LocalRotationFamily;

impl LocalRotationFamily {
    pub fn spin_along(theta: f64, phi: f64) -> OperatorMatrix {
        sigma_x().scale_real(theta.sin() * phi.cos())
            + sigma_y().scale_real(theta.sin() * phi.sin())
            + sigma_z().scale_real(theta.cos())
    }
}

impl ObservableFamily for LocalRotationFamily {
    fn name(&self) -> &str {
        "general"
    }

    fn arity(&self) -> usize {
        8
    }

    fn dims(&self) -> (usize, usize) {
        (2, 2)
    }

    fn build(&self, p: &[f64]) -> Result<ObservableSet> {
        check_arity(self, p)?;
        ObservableSet::new(
            Self::spin_along(p[0], p[1]),
            Self::spin_along(p[2], p[3]),
            Self::spin_along(p[4], p[5]),
            Self::spin_along(p[6], p[7]),
        )
    }
}

/// (α₁, …, α₅, β₁, β₂) = (1/2, 9/2, 5, 1, 17/4, 4/3, π).
pub fn family_a_set1() -> [f64; 7] {
    [0.5, 4.5, 5.0, 1.0, 4.25, 4.0 / 3.0, PI]
}

/// Parameters tuned for the p₁ = 1 state at θ₁ = 3π/4.
pub fn family_b_p1() -> [f64; 8] {
    [PI / 4.0, 3.0 * PI / 4.0, -PI / 30.0, PI / 2.0, 0.0, 3.0 * PI / 4.0, (0.6f64).sqrt() * PI, PI / 40.0]
}

/// Parameters tuned for the p₂ = 1 state.
pub fn family_b_p2() -> [f64; 8] {
    [PI / 4.0, 3.0 * PI / 4.0, -PI / 125.0, PI / 125.0, PI / 2.0, 7.0 * PI / 8.0, PI / 5.0, -3.0 * PI / 10.0]
}

/// Looks up a family by its CLI name: `family-a`, `family-a-y`, `family-b`, `general`.
pub fn family_by_name(name: &str) -> Result<Box<dyn ObservableFamily>> {
    match name {
        "family-a" => Ok(Box::new(QubitQutritFamilyA::new(U2Variant::X))),
        "family-a-y" => Ok(Box::new(QubitQutritFamilyA::new(U2Variant::Y))),
        "family-b" => Ok(Box::new(QubitQutritFamilyB::default())),
        "general" => Ok(Box::new(LocalRotationFamily)),
        _ => Err(Error::domain(format!("unknown observable family {name:?}"))),
    }
}
