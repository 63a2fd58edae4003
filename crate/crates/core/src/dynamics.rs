//! Two coupled spins j₁ = ½ (qubit) and j₂ = 1 (qutrit) under
//! H = ω₀(J² − J₁² − J₂²) − ω₁J_z, their coupled eigenstates and the
//! τ-dependent superpositions Ψ₁, Ψ₂, Ψ₃ with τ = ω₁t.
//!
//! Product-basis order is |j₁, m₁⟩|j₂, m₂⟩ with m₁ outermost, both running
//! from +j down to −j: (↑,1), (↑,0), (↑,−1), (↓,1), (↓,0), (↓,−1).

use num_complex::Complex64;

use crate::angmom::{jminus, jplus, jz, ln_factorial, Spin};
use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::linalg::{c, OperatorMatrix, ZERO};

const PROB_TOL: f64 = 1e-12;

fn twice(x: f64, what: &str) -> Result<i64> {
    let t = 2.0 * x;
    if !t.is_finite() || (t - t.round()).abs() > 1e-9 {
        return Err(Error::domain(format!("{what} = {x} is not a half-integer")));
    }
    Ok(t.round() as i64)
}

fn lf(twice_n: i64) -> f64 {
    debug_assert!(twice_n >= 0 && twice_n % 2 == 0);
    ln_factorial((twice_n / 2) as u32)
}

/// ⟨j₁ m₁; j₂ m₂ | j m⟩ by the Racah sum, Condon-Shortley phases. Returns 0
/// for m ≠ m₁ + m₂, a broken triangle rule or |mᵢ| > jᵢ.
pub fn clebsch_gordan(j1: f64, m1: f64, j2: f64, m2: f64, j: f64, m: f64) -> Result<f64> {
    let (tj1, tm1) = (twice(j1, "j1")?, twice(m1, "m1")?);
    let (tj2, tm2) = (twice(j2, "j2")?, twice(m2, "m2")?);
    let (tj, tm) = (twice(j, "j")?, twice(m, "m")?);
    if tj1 < 0 || tj2 < 0 || tj < 0 {
        return Err(Error::domain("angular momenta must be non-negative"));
    }
    let parity_ok = (tj1 + tm1) % 2 == 0 && (tj2 + tm2) % 2 == 0 && (tj + tm) % 2 == 0;
    if tm != tm1 + tm2
        || !parity_ok
        || tm1.abs() > tj1
        || tm2.abs() > tj2
        || tm.abs() > tj
        || tj < (tj1 - tj2).abs()
        || tj > tj1 + tj2
        || (tj1 + tj2 + tj) % 2 != 0
    {
        return Ok(0.0);
    }
    let prefactor = 0.5
        * (((tj + 1) as f64).ln() + lf(tj + tj1 - tj2) + lf(tj - tj1 + tj2) + lf(tj1 + tj2 - tj)
            - lf(tj1 + tj2 + tj + 2)
            + lf(tj + tm)
            + lf(tj - tm)
            + lf(tj1 - tm1)
            + lf(tj1 + tm1)
            + lf(tj2 - tm2)
            + lf(tj2 + tm2));
    let mut sum = 0.0;
    // k runs in steps of 1, i.e. 2 in twice-units
    let mut tk = 0;
    while tk <= tj1 + tj2 {
        let args = [
            tj1 + tj2 - tj - tk,
            tj1 - tm1 - tk,
            tj2 + tm2 - tk,
            tj - tj2 + tm1 + tk,
            tj - tj1 - tm2 + tk,
        ];
        if args.iter().all(|&a| a >= 0) {
            let denom = lf(tk) + args.iter().map(|&a| lf(a)).sum::<f64>();
            let sign = if (tk / 2) % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * (prefactor - denom).exp();
        }
        tk += 2;
    }
    Ok(sum)
}

/// Coupling strength ω₀ and Zeeman-like frequency ω₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyPair {
    pub omega0: f64,
    pub omega1: f64,
}

/// |j₁, j₂; j m⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoupledLabel {
    j1: Spin,
    j2: Spin,
    j: Spin,
    twice_m: i64,
}

impl CoupledLabel {
    pub fn new(j1: Spin, j2: Spin, j: Spin, m: f64) -> Result<Self> {
        let twice_m = twice(m, "m")?;
        let (a, b, t) = (i64::from(j1.twice_j()), i64::from(j2.twice_j()), i64::from(j.twice_j()));
        if t < (a - b).abs() || t > a + b || (a + b + t) % 2 != 0 {
            return Err(Error::domain(format!("j = {j} is not reachable from {j1} ⊗ {j2}")));
        }
        if twice_m.abs() > t || (t + twice_m) % 2 != 0 {
            return Err(Error::domain(format!("m = {m} is not a projection of j = {j}")));
        }
        Ok(Self { j1, j2, j, twice_m })
    }

    pub fn j1(&self) -> Spin {
        self.j1
    }

    pub fn j2(&self) -> Spin {
        self.j2
    }

    pub fn j(&self) -> Spin {
        self.j
    }

    pub fn m(&self) -> f64 {
        self.twice_m as f64 / 2.0
    }
}

/// All coupled labels of j₁ ⊗ j₂, j descending then m descending.
pub fn coupled_labels(j1: Spin, j2: Spin) -> Vec<CoupledLabel> {
    let (a, b) = (j1.twice_j(), j2.twice_j());
    let mut out = Vec::new();
    let mut tj = a + b;
    loop {
        let j = Spin::from_twice(tj).expect("bounded by j1 + j2");
        let mut tm = i64::from(tj);
        while tm >= -i64::from(tj) {
            out.push(CoupledLabel::new(j1, j2, j, tm as f64 / 2.0).expect("enumerated label is valid"));
            tm -= 2;
        }
        if tj == a.abs_diff(b) {
            break;
        }
        tj -= 2;
    }
    out
}

/// E = ω₀{j(j+1) − j₁(j₁+1) − j₂(j₂+1)} − ω₁m.
pub fn energy(label: &CoupledLabel, freq: FrequencyPair) -> f64 {
    let jj = |s: Spin| s.j() * (s.j() + 1.0);
    freq.omega0 * (jj(label.j) - jj(label.j1) - jj(label.j2)) - freq.omega1 * label.m()
}

/// ω₀(J² − J₁² − J₂²) − ω₁J_z = 2ω₀ J₁·J₂ − ω₁(J₁z + J₂z) on the product space.
pub fn hamiltonian(j1: Spin, j2: Spin, freq: FrequencyPair) -> OperatorMatrix {
    let (i1, i2) = (OperatorMatrix::identity(j1.dim()), OperatorMatrix::identity(j2.dim()));
    let zz = jz(j1).kron(&jz(j2));
    let pm = jplus(j1).kron(&jminus(j2));
    let mp = jminus(j1).kron(&jplus(j2));
    let dot = zz + (pm + mp).scale_real(0.5);
    let total_z = jz(j1).kron(&i2) + i1.kron(&jz(j2));
    dot.scale_real(2.0 * freq.omega0) - total_z.scale_real(freq.omega1)
}

fn cg_vector(label: &CoupledLabel) -> Vec<Complex64> {
    let (d1, d2) = (label.j1.dim(), label.j2.dim());
    let mut v = vec![ZERO; d1 * d2];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            let (m1, m2) = (label.j1.m_of_index(i1), label.j2.m_of_index(i2));
            let cg = clebsch_gordan(label.j1.j(), m1, label.j2.j(), m2, label.j.j(), label.m())
                .expect("labels are half-integers");
            v[i1 * d2 + i2] = c(cg, 0.0);
        }
    }
    v
}

/// e^{−iHt}|j₁, j₂; j m⟩ = e^{−iEt} Σ_{m₁} CG |j₁ m₁⟩|j₂, m − m₁⟩.
pub fn eigenstate(label: &CoupledLabel, t: f64, freq: FrequencyPair) -> Vec<Complex64> {
    let phase = Complex64::from_polar(1.0, -energy(label, freq) * t);
    cg_vector(label).into_iter().map(|z| z * phase).collect()
}

fn qubit_qutrit_label(j: Spin, m: f64) -> CoupledLabel {
    CoupledLabel::new(Spin::HALF, Spin::ONE, j, m).expect("fixed valid label")
}

/// cos θ e^{im_aτ}|a⟩ + sin θ e^{im_bτ}|b⟩ with (a, b) the pair of coupled
/// states of Ψ_k: k = 1 uses |3/2, ±3/2⟩, k = 2 uses |½, ±½⟩ and k = 3 uses
/// |3/2, ±½⟩. Global phases e^{−iω₀(…)t} are dropped.
pub fn psi_state(k: u8, theta: f64, tau: f64) -> Result<Vec<Complex64>> {
    let (j, m) = match k {
        1 => (Spin::THREE_HALVES, 1.5),
        2 => (Spin::HALF, 0.5),
        3 => (Spin::THREE_HALVES, 0.5),
        _ => return Err(Error::domain(format!("Ψ index {k} is not 1, 2 or 3"))),
    };
    let a = cg_vector(&qubit_qutrit_label(j, m));
    let b = cg_vector(&qubit_qutrit_label(j, -m));
    let wa = Complex64::from_polar(theta.cos(), m * tau);
    let wb = Complex64::from_polar(theta.sin(), -m * tau);
    Ok(a.iter().zip(&b).map(|(x, y)| x * wa + y * wb).collect())
}

/// Weights p_k and angles θ_k of ρ(τ) = Σ p_k |Ψ_k(θ_k, τ)⟩⟨Ψ_k(θ_k, τ)|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureSpec {
    pub p: [f64; 3],
    pub theta: [f64; 3],
    pub tau: f64,
}

impl MixtureSpec {
    pub fn pure(k: u8, theta: f64, tau: f64) -> Result<Self> {
        if !(1..=3).contains(&k) {
            return Err(Error::domain(format!("Ψ index {k} is not 1, 2 or 3")));
        }
        let mut p = [0.0; 3];
        let mut th = [0.0; 3];
        p[usize::from(k - 1)] = 1.0;
        th[usize::from(k - 1)] = theta;
        Ok(Self { p, theta: th, tau })
    }

    pub fn validate(&self) -> Result<()> {
        let sum: f64 = self.p.iter().sum();
        if self.p.iter().any(|&x| !x.is_finite() || x < -PROB_TOL) || (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::domain(format!("weights {:?} are not a probability vector", self.p)));
        }
        Ok(())
    }
}

pub fn rho_of_tau(spec: &MixtureSpec) -> Result<BipartiteState> {
    spec.validate()?;
    let mut acc = OperatorMatrix::zeros(6);
    for k in 0..3 {
        let p = spec.p[k].max(0.0);
        if p == 0.0 {
            continue;
        }
        let psi = psi_state(k as u8 + 1, spec.theta[k], spec.tau)?;
        acc = acc + OperatorMatrix::outer(&psi).scale_real(p);
    }
    BipartiteState::new(Spin::HALF, Spin::ONE, acc)
}

/// ρ for p₁ = 1: cos²θ₁ and sin²θ₁ on the corners of the diagonal,
/// e^{±3iτ} cos θ₁ sin θ₁ on the anti-diagonal corners, zero elsewhere.
pub fn xstate_p1(theta1: f64, tau: f64) -> BipartiteState {
    let (cs, sn) = (theta1.cos(), theta1.sin());
    let mut m = OperatorMatrix::zeros(6);
    m.set(0, 0, c(cs * cs, 0.0));
    m.set(5, 5, c(sn * sn, 0.0));
    let corner = Complex64::from_polar(cs * sn, 3.0 * tau);
    m.set(0, 5, corner);
    m.set(5, 0, corner.conj());
    BipartiteState::new(Spin::HALF, Spin::ONE, m).expect("rank-one projector")
}

/// diag(e^{i(m₁+m₂)τ}) on the qubit-qutrit product basis; ρ(τ) = V ρ(0) V†.
pub fn phase_evolution(tau: f64) -> OperatorMatrix {
    let mut v = OperatorMatrix::zeros(6);
    for i1 in 0..2 {
        for i2 in 0..3 {
            let m = Spin::HALF.m_of_index(i1) + Spin::ONE.m_of_index(i2);
            let idx = i1 * 3 + i2;
            v.set(idx, idx, Complex64::from_polar(1.0, m * tau));
        }
    }
    v
}
