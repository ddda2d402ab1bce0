//! Klein-Gordon side of the problem: Whittaker–Hill parameters, quantized
//! momentum spectra, the frame built on the wave vector, the full wave
//! function and the vacuum Gordon–Volkov phase.
//!
//! Four-vectors are `(p⁰, pˣ, pʸ, pᶻ)` with metric `(+, −, −, −)`; the wave
//! is polarized along x and propagates along y. Wavenumbers and momenta are
//! in cm⁻¹ (momentum divided by ħ). The spatial z coordinate is called `x3`
//! to keep it apart from the phase variable `z = ξ/2`.
//!
//! The test charge is negative and only the positive-energy branch is
//! built; the opposite orientation follows from `a → −a`, `z → z + π/2`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{InceError, Result};
use crate::ince::IncePolynomial;
use crate::params::{constants, intensity_parameter, DerivedParams, InceProblem};

/// Contravariant four-vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self([t, x, y, z])
    }

    /// Minkowski product `a⁰b⁰ − a·b`.
    pub fn dot(&self, other: &FourVector) -> f64 {
        let (a, b) = (self.0, other.0);
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    }

    pub fn square(&self) -> f64 {
        self.dot(self)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector(v.0.map(|x| self * x))
    }
}

/// Wave vector, complementary wave vector and polarization vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameVectors {
    /// `k₀(1, 0, n_m, 0)`.
    pub k: FourVector,
    /// `−k₀(n_m, 0, 1, 0)`: `k̂² = −k²`, `k̂·k = 0`.
    pub k_hat: FourVector,
    pub e1: FourVector,
    pub e2: FourVector,
}

impl FrameVectors {
    pub fn new(k0: f64, n_m: f64) -> Self {
        Self {
            k: FourVector::new(k0, 0.0, k0 * n_m, 0.0),
            k_hat: FourVector::new(-k0 * n_m, 0.0, -k0, 0.0),
            e1: FourVector::new(0.0, 1.0, 0.0, 0.0),
            e2: FourVector::new(0.0, 0.0, 0.0, 1.0),
        }
    }

    pub fn from_params(d: &DerivedParams) -> Self {
        Self::new(d.k0, d.n_m)
    }
}

/// Invariant components of a four-vector with respect to a frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub k_dot_p: f64,
    pub k_hat_dot_p: f64,
    pub p_dot_e1: f64,
    pub p_dot_e2: f64,
}

impl Decomposition {
    /// `p = (k·p/k²) k − (k̂·p/k²) k̂ − (p·e₁) e₁ − (p·e₂) e₂`.
    pub fn reconstruct(&self, frame: &FrameVectors) -> FourVector {
        let k2 = frame.k.square();
        (self.k_dot_p / k2) * frame.k - (self.k_hat_dot_p / k2) * frame.k_hat
            - self.p_dot_e1 * frame.e1
            - self.p_dot_e2 * frame.e2
    }
}

pub fn decompose_four_vector(p: &FourVector, frame: &FrameVectors) -> Decomposition {
    Decomposition {
        k_dot_p: frame.k.dot(p),
        k_hat_dot_p: frame.k_hat.dot(p),
        p_dot_e1: p.dot(&frame.e1),
        p_dot_e2: p.dot(&frame.e2),
    }
}

/// Coefficients of `w″ + (θ₀ + 2θ₁ cos2z + 2θ₂ cos4z) w = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WhittakerHillParams {
    pub theta0: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl WhittakerHillParams {
    /// Parameters corresponding to Ince's equation with `(a, q, η)`.
    pub fn from_ince(a: f64, q: usize, eta: f64) -> Self {
        let theta2 = (a / 4.0).powi(2);
        Self { theta0: eta - 2.0 * theta2, theta1: -(q as f64 + 1.0) * a / 2.0, theta2 }
    }

    /// `a = 4√θ₂`.
    pub fn a(&self) -> f64 {
        4.0 * self.theta2.sqrt()
    }

    /// `η = θ₀ + 2θ₂`.
    pub fn eta(&self) -> f64 {
        self.theta0 + 2.0 * self.theta2
    }
}

/// Whittaker–Hill parameters for four-momentum `p`.
///
/// `θ₁` is taken with the sign that makes `2θ₁ = −2p_x a/k_p`, so that
/// `p_x = (q+1)k_p/2 > 0` selects Ince's equation with `a ≥ 0`.
pub fn wh_params(derived: &DerivedParams, p: &FourVector) -> Result<WhittakerHillParams> {
    let kp2 = derived.kp * derived.kp;
    if !(kp2 > 0.0) {
        return Err(InceError::Vacuum);
    }
    let frame = FrameVectors::from_params(derived);
    let k_dot_p = frame.k.dot(p);
    let ea = derived.eps_a0;
    let p_x = p.0[1];
    let theta0 = (4.0 / -kp2)
        * (-(k_dot_p * k_dot_p) / kp2 + p.square() - derived.kappa.powi(2) - ea * ea / 2.0);
    let theta1 = -4.0 * p_x * ea / kp2;
    let theta2 = ea * ea / kp2;
    Ok(WhittakerHillParams { theta0, theta1, theta2 })
}

/// Mass-shell condition imposed on the momentum parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MassShell {
    /// `p² = κ²`.
    Free,
    /// `p² = κ² + ε²A₀²`.
    Dressed,
}

/// Square root of a real radicand: real, or purely imaginary with the given
/// magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Root {
    Real(f64),
    Imaginary(f64),
}

impl Root {
    pub fn of(radicand: f64) -> Self {
        if radicand >= 0.0 {
            Root::Real(radicand.sqrt())
        } else {
            Root::Imaginary((-radicand).sqrt())
        }
    }

    pub fn magnitude(&self) -> f64 {
        match *self {
            Root::Real(v) | Root::Imaginary(v) => v,
        }
    }

    pub fn real(&self) -> Option<f64> {
        match *self {
            Root::Real(v) => Some(v),
            Root::Imaginary(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Signed momentum components of one branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kinematics {
    pub p_hat: f64,
    /// `p_ξ = k·p`.
    pub p_xi: f64,
    pub p0: f64,
    pub p_y: f64,
}

/// Momentum parameters attached to one eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumState {
    pub a: f64,
    pub q: usize,
    pub eta: f64,
    pub p_x: f64,
    pub p_z: f64,
    /// `|p̂|`, real or imaginary.
    pub p_hat: Root,
    /// `|2p_ξ/k_p²|`, real or imaginary.
    pub p_xi_ratio: Root,
    pub mass_shell: MassShell,
    /// `p̂² < 0`.
    pub evanescent: bool,
    /// `p_ξ² < 0`.
    pub gap_state: bool,
    /// `p₀` for `(+p_ξ, +p̂)` and `(+p_ξ, −p̂)`; absent unless both are real.
    pub p0: Option<[f64; 2]>,
    /// `p_y` for the same two branches.
    pub p_y: Option<[f64; 2]>,
    pub k0: f64,
    pub kp: f64,
    pub n_m: f64,
}

impl MomentumState {
    /// Components for a choice of signs; `None` if `p̂` or `p_ξ` is imaginary.
    pub fn branch(&self, xi_sign: Sign, hat_sign: Sign) -> Option<Kinematics> {
        let p_hat = hat_sign.value() * self.p_hat.real()?;
        let p_xi = xi_sign.value() * self.p_xi_ratio.real()? * self.kp * self.kp / 2.0;
        let (p0, p_y) = energy_momentum(self.k0, self.kp, self.n_m, p_xi, p_hat);
        Some(Kinematics { p_hat, p_xi, p0, p_y })
    }

    /// The four-momentum `(p₀, p_x, p_y, p_z)` of a branch.
    pub fn four_momentum(&self, xi_sign: Sign, hat_sign: Sign) -> Option<FourVector> {
        self.branch(xi_sign, hat_sign)
            .map(|b| FourVector::new(b.p0, self.p_x, b.p_y, self.p_z))
    }
}

/// `p₀ = k₀(p_ξ/k_p² + n_m p̂/k_p)`, `p_y = k₀(n_m p_ξ/k_p² + p̂/k_p)`.
pub fn energy_momentum(k0: f64, kp: f64, n_m: f64, p_xi: f64, p_hat: f64) -> (f64, f64) {
    let kp2 = kp * kp;
    (k0 * (p_xi / kp2 + n_m * p_hat / kp), k0 * (n_m * p_xi / kp2 + p_hat / kp))
}

/// Radicand of `p̂ = ±(k_p/2)√(…)`.
pub fn p_hat_radicand(eta: f64, q: usize, a: f64, p_z: f64, kp: f64, kappa: f64) -> f64 {
    eta - (q as f64 + 1.0).powi(2) - (2.0 * p_z / kp).powi(2) - (2.0 * kappa / kp).powi(2)
        - (a / 2.0).powi(2)
}

/// Momentum parameters for eigenvalue `eta` of `problem`.
pub fn momentum_spectrum(
    eta: f64,
    problem: &InceProblem,
    derived: &DerivedParams,
    p_z: f64,
    mass_shell: MassShell,
) -> MomentumState {
    let (a, q, kp) = (problem.a, problem.q, derived.kp);
    let hat_rad = p_hat_radicand(eta, q, a, p_z, kp, derived.kappa);
    let xi_rad = match mass_shell {
        MassShell::Free => eta - (a / 2.0).powi(2),
        MassShell::Dressed => eta,
    };
    let p_hat = match Root::of(hat_rad) {
        Root::Real(v) => Root::Real(kp / 2.0 * v),
        Root::Imaginary(v) => Root::Imaginary(kp / 2.0 * v),
    };
    let p_xi_ratio = Root::of(xi_rad);
    let mut state = MomentumState {
        a,
        q,
        eta,
        p_x: (q as f64 + 1.0) * kp / 2.0,
        p_z,
        p_hat,
        p_xi_ratio,
        mass_shell,
        evanescent: hat_rad < 0.0,
        gap_state: xi_rad < 0.0,
        p0: None,
        p_y: None,
        k0: derived.k0,
        kp,
        n_m: derived.n_m,
    };
    if let (Some(plus), Some(minus)) =
        (state.branch(Sign::Plus, Sign::Plus), state.branch(Sign::Plus, Sign::Minus))
    {
        state.p0 = Some([plus.p0, minus.p0]);
        state.p_y = Some([plus.p_y, minus.p_y]);
    }
    state
}

/// `η = 4[p̂² + p_⊥² + κ² + ε²A₀²]/k_p²`.
pub fn eta_from_momenta(p_hat: f64, p_x: f64, p_z: f64, derived: &DerivedParams) -> f64 {
    4.0 * (p_hat * p_hat + p_x * p_x + p_z * p_z + derived.kappa.powi(2) + derived.eps_a0.powi(2))
        / derived.kp.powi(2)
}

/// Spacetime point `(ct, x, y, x3)` in cm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub ct: f64,
    pub x: f64,
    pub y: f64,
    pub x3: f64,
}

impl SpacetimePoint {
    /// Phase `ξ = k₀(ct − n_m y)`.
    pub fn phase(&self, k0: f64, n_m: f64) -> f64 {
        k0 * (self.ct - n_m * self.y)
    }

    /// Longitudinal coordinate `x̂ = k₀(y − n_m ct)/k_p`.
    pub fn longitudinal(&self, k0: f64, kp: f64, n_m: f64) -> f64 {
        k0 * (self.y - n_m * self.ct) / kp
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveOptions {
    pub hat_sign: Sign,
    /// Evaluate evanescent states anyway (finite interaction regions).
    pub allow_evanescent: bool,
}

impl Default for WaveOptions {
    fn default() -> Self {
        Self { hat_sign: Sign::Plus, allow_evanescent: false }
    }
}

/// Envelope `exp[−(a/4) cos ξ]`.
pub fn envelope(a: f64, xi: f64) -> f64 {
    (-(a / 4.0) * xi.cos()).exp()
}

/// `Φ = exp[i(p̂x̂ + p_x x + p_z x3)] · exp[−(a/4)cos ξ] · IP(ξ)`, left
/// unnormalized.
pub fn wavefunction(
    solution: &IncePolynomial,
    state: &MomentumState,
    point: &SpacetimePoint,
    opts: WaveOptions,
) -> Result<Complex64> {
    if solution.a != state.a || solution.q() != state.q {
        return Err(InceError::StateMismatch {
            sol_a: solution.a,
            sol_q: solution.q(),
            state_a: state.a,
            state_q: state.q,
        });
    }
    if state.evanescent && !opts.allow_evanescent {
        return Err(InceError::Evanescent);
    }
    let xi = point.phase(state.k0, state.n_m);
    let x_hat = point.longitudinal(state.k0, state.kp, state.n_m);
    let transverse = state.p_x * point.x + state.p_z * point.x3;
    let s = opts.hat_sign.value();
    let exponent = match state.p_hat {
        Root::Real(v) => Complex64::new(0.0, s * v * x_hat + transverse),
        // i · (±i|p̂|) x̂ = ∓|p̂| x̂
        Root::Imaginary(v) => Complex64::new(-s * v * x_hat, transverse),
    };
    Ok(exponent.exp() * (envelope(solution.a, xi) * solution.evaluate(xi)))
}

/// Plane wave in vacuum for the Gordon–Volkov comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VacuumWave {
    pub k0: f64,
    /// `|ε|A₀` in cm⁻¹.
    pub eps_a0: f64,
}

impl VacuumWave {
    pub fn from_laser(photon_energy: f64, intensity: f64) -> Self {
        let kappa = constants::ELECTRON_MASS_EV / constants::HBAR_C_EV_CM;
        Self {
            k0: photon_energy / constants::HBAR_C_EV_CM,
            eps_a0: intensity_parameter(photon_energy, intensity) * kappa,
        }
    }

    /// `k = k₀(1, 0, 1, 0)`.
    pub fn k(&self) -> FourVector {
        FourVector::new(self.k0, 0.0, self.k0, 0.0)
    }
}

fn volkov_k_dot_p(p: &FourVector, wave: &VacuumWave) -> Result<f64> {
    let kp = wave.k().dot(p);
    if kp == 0.0 {
        return Err(InceError::LightlikeMomentum);
    }
    Ok(kp)
}

/// Integrand `[−2εp·A + ε²A²]/(2k·p)` for `A = e_x A₀ cos ξ` and `ε < 0`.
/// With the metric, `p·A = −p_x A₀ cos ξ` and `A² = −A₀² cos² ξ`.
pub fn volkov_integrand(p: &FourVector, wave: &VacuumWave, xi: f64) -> Result<f64> {
    let kp = volkov_k_dot_p(p, wave)?;
    let ea = wave.eps_a0;
    let c = xi.cos();
    Ok((-2.0 * ea * p.0[1] * c - ea * ea * c * c) / (2.0 * kp))
}

/// Field-dependent part of the action `S_p`, the integral of
/// [`volkov_integrand`] from 0 to `xi`, in closed form.
pub fn volkov_phase(p: &FourVector, wave: &VacuumWave, xi: f64) -> Result<f64> {
    let kp = volkov_k_dot_p(p, wave)?;
    let ea = wave.eps_a0;
    let oscillating = -2.0 * ea * p.0[1] * xi.sin();
    let quadratic = -ea * ea * (xi / 2.0 + (2.0 * xi).sin() / 4.0);
    Ok((oscillating + quadratic) / (2.0 * kp))
}
