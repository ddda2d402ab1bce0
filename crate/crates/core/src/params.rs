//! Physical inputs, derived dimensionless parameters and the Ince problem
//! descriptor.
//!
//! Public quantities use eV for energies, W/cm² for intensities, cm⁻³ for
//! densities and cm⁻¹ for wavenumbers. Constants are CODATA 2018 values.
//! The electric field amplitude follows the Gaussian-unit convention
//! `I = c F₀² / 8π` for a linearly polarized wave.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{InceError, Result};

/// CODATA 2018 constants.
pub mod constants {
    /// Fine-structure constant.
    pub const ALPHA: f64 = 7.297_352_569_3e-3;
    /// ħc in eV·cm.
    pub const HBAR_C_EV_CM: f64 = 1.973_269_804e-5;
    /// Electron rest energy mc² in eV.
    pub const ELECTRON_MASS_EV: f64 = 0.510_998_950_00e6;
    /// Elementary charge in coulomb, equal to joule per electron-volt.
    pub const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;
    /// Speed of light in cm/s.
    pub const SPEED_OF_LIGHT_CM_S: f64 = 2.997_924_58e10;
}

use constants::*;

/// How the plasma is specified. Exactly one of the two is given, the other
/// follows from the Drude plasma frequency `ω_p² = 4π n_e e² / m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlasmaSpec {
    /// Electron density in cm⁻³.
    ElectronDensity(f64),
    /// Plasmon energy ħω_p in eV.
    PlasmonEnergy(f64),
}

/// Plasmon energy (eV) for an electron density (cm⁻³).
pub fn plasmon_energy_from_density(n_e: f64) -> f64 {
    (4.0 * PI * ALPHA * HBAR_C_EV_CM.powi(3) * n_e / ELECTRON_MASS_EV).sqrt()
}

/// Electron density (cm⁻³) for a plasmon energy (eV).
pub fn density_from_plasmon_energy(plasmon_ev: f64) -> f64 {
    plasmon_ev * plasmon_ev * ELECTRON_MASS_EV / (4.0 * PI * ALPHA * HBAR_C_EV_CM.powi(3))
}

/// Laser and plasma inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaserPlasmaConfig {
    /// ħω₀ in eV.
    pub photon_energy: f64,
    /// I₀ in W/cm².
    pub intensity: f64,
    pub plasma: PlasmaSpec,
}

impl LaserPlasmaConfig {
    pub fn new(photon_energy: f64, intensity: f64, plasma: PlasmaSpec) -> Self {
        Self { photon_energy, intensity, plasma }
    }

    /// Plasmon energy ħω_p in eV, derived if the density was given.
    pub fn plasmon_energy(&self) -> f64 {
        match self.plasma {
            PlasmaSpec::PlasmonEnergy(e) => e,
            PlasmaSpec::ElectronDensity(n) => plasmon_energy_from_density(n),
        }
    }

    /// Electron density n_e in cm⁻³, derived if the plasmon energy was given.
    pub fn electron_density(&self) -> f64 {
        match self.plasma {
            PlasmaSpec::PlasmonEnergy(e) => density_from_plasmon_energy(e),
            PlasmaSpec::ElectronDensity(n) => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.photon_energy > 0.0) || !self.photon_energy.is_finite() {
            return Err(InceError::NonPositivePhotonEnergy(self.photon_energy));
        }
        if !(self.intensity >= 0.0) || !self.intensity.is_finite() {
            return Err(InceError::NegativeIntensity(self.intensity));
        }
        let raw = match self.plasma {
            PlasmaSpec::PlasmonEnergy(e) => e,
            PlasmaSpec::ElectronDensity(n) => n,
        };
        if !(raw > 0.0) || !raw.is_finite() {
            return Err(InceError::NonPositivePlasma(raw));
        }
        let plasmon = self.plasmon_energy();
        if plasmon >= self.photon_energy {
            return Err(InceError::NotPropagating {
                plasmon_ev: plasmon,
                photon_ev: self.photon_energy,
            });
        }
        Ok(())
    }
}

/// Dimensionless intensity parameter μ₀ = eF₀/(mcω₀) for intensity in W/cm²
/// and photon energy in eV.
pub fn intensity_parameter(photon_energy: f64, intensity: f64) -> f64 {
    let intensity_ev = intensity / ELEMENTARY_CHARGE_C;
    let mu2 = 8.0 * PI * ALPHA * intensity_ev * HBAR_C_EV_CM.powi(3)
        / (SPEED_OF_LIGHT_CM_S * ELECTRON_MASS_EV.powi(2) * photon_energy.powi(2));
    mu2.sqrt()
}

/// Photon density I₀/(cħω₀) in cm⁻³.
pub fn photon_density(photon_energy: f64, intensity: f64) -> f64 {
    intensity / (ELEMENTARY_CHARGE_C * SPEED_OF_LIGHT_CM_S * photon_energy)
}

/// Quantities derived from a [`LaserPlasmaConfig`]. Wavenumbers are in cm⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Index of refraction, `√(1 − ω_p²/ω₀²)`.
    pub n_m: f64,
    /// ω₀/c.
    pub k0: f64,
    /// ω_p/c = k₀√(1 − n_m²).
    pub kp: f64,
    /// Fundamental coupling 4|ε|A₀/k_p.
    pub a: f64,
    pub mu0: f64,
    /// Photon density in cm⁻³.
    pub n_ph: f64,
    /// mc/ħ.
    pub kappa: f64,
    /// √(κ² + ε²A₀²).
    pub kappa_star: f64,
    /// |ε|A₀ = |e|A₀/ħc.
    pub eps_a0: f64,
    /// ħω_p in eV.
    pub plasmon_energy: f64,
    /// n_e in cm⁻³.
    pub electron_density: f64,
}

impl DerivedParams {
    /// Builds a parameter set from wavenumber scales directly, bypassing the
    /// plasma model. `kappa` may be any non-negative value; it is used for
    /// dimensionless studies where `2κ/k_p` is chosen freely.
    pub fn from_scales(k0: f64, n_m: f64, a: f64, kappa: f64) -> Result<Self> {
        if !(a >= 0.0) || !a.is_finite() {
            return Err(InceError::InvalidCoupling(a));
        }
        let kp = k0 * (1.0 - n_m * n_m).sqrt();
        let eps_a0 = a * kp / 4.0;
        let plasmon_energy = kp * HBAR_C_EV_CM;
        Ok(Self {
            n_m,
            k0,
            kp,
            a,
            mu0: if kappa > 0.0 { eps_a0 / kappa } else { 0.0 },
            n_ph: 0.0,
            kappa,
            kappa_star: kappa.hypot(eps_a0),
            eps_a0,
            plasmon_energy,
            electron_density: density_from_plasmon_energy(plasmon_energy),
        })
    }

    /// Plasma wavelength λ_p = 2π/k_p in nm.
    pub fn plasma_wavelength_nm(&self) -> f64 {
        2.0 * PI / self.kp * 1e7
    }

    /// `2mc²/ħω_p`, the factor between `2μ₀` and `a`.
    pub fn mass_ratio(&self) -> f64 {
        2.0 * self.kappa / self.kp
    }
}

/// Derives all dimensionless and wavenumber parameters.
pub fn derive_params(cfg: &LaserPlasmaConfig) -> Result<DerivedParams> {
    cfg.validate()?;
    let photon = cfg.photon_energy;
    let plasmon = cfg.plasmon_energy();
    let ratio = plasmon / photon;
    let n_m = (1.0 - ratio * ratio).sqrt();
    let k0 = photon / HBAR_C_EV_CM;
    let kp = plasmon / HBAR_C_EV_CM;
    let kappa = ELECTRON_MASS_EV / HBAR_C_EV_CM;
    let mu0 = intensity_parameter(photon, cfg.intensity);
    // |ε|A₀ = eF₀/(ħc k₀) = μ₀ κ
    let eps_a0 = mu0 * kappa;
    Ok(DerivedParams {
        n_m,
        k0,
        kp,
        a: 4.0 * eps_a0 / kp,
        mu0,
        n_ph: photon_density(photon, cfg.intensity),
        kappa,
        kappa_star: kappa.hypot(eps_a0),
        eps_a0,
        plasmon_energy: plasmon,
        electron_density: cfg.electron_density(),
    })
}

/// The four families of Ince polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `Σ A_r cos 2rz`, q = 2n.
    EvenCosine,
    /// `Σ B_r sin 2rz`, q = 2n.
    EvenSine,
    /// `Σ A'_r cos (2r+1)z`, q = 2n+1.
    OddCosine,
    /// `Σ B'_r sin (2r+1)z`, q = 2n+1.
    OddSine,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::EvenCosine, Family::EvenSine, Family::OddCosine, Family::OddSine];

    pub fn name(self) -> &'static str {
        match self {
            Family::EvenCosine => "even_cosine",
            Family::EvenSine => "even_sine",
            Family::OddCosine => "odd_cosine",
            Family::OddSine => "odd_sine",
        }
    }

    pub fn is_even(self) -> bool {
        matches!(self, Family::EvenCosine | Family::EvenSine)
    }

    pub fn is_cosine(self) -> bool {
        matches!(self, Family::EvenCosine | Family::OddCosine)
    }

    /// Smallest admissible degree n.
    pub fn min_degree(self) -> usize {
        match self {
            Family::EvenSine => 1,
            _ => 0,
        }
    }

    /// Parameter q for degree n.
    pub fn q(self, n: usize) -> usize {
        if self.is_even() {
            2 * n
        } else {
            2 * n + 1
        }
    }

    /// Matrix size (and coefficient count) for degree n.
    pub fn size(self, n: usize) -> usize {
        match self {
            Family::EvenSine => n,
            _ => n + 1,
        }
    }

    /// Lowest eigen index: EvenSine solutions are labelled 1..=n.
    pub fn first_index(self) -> usize {
        match self {
            Family::EvenSine => 1,
            _ => 0,
        }
    }

    /// Harmonic multiple of z carried by coefficient slot `i`.
    pub fn harmonic(self, i: usize) -> usize {
        match self {
            Family::EvenCosine => 2 * i,
            Family::EvenSine => 2 * (i + 1),
            Family::OddCosine | Family::OddSine => 2 * i + 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = InceError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "even_cosine" | "ec" | "c2n" => Ok(Family::EvenCosine),
            "even_sine" | "es" | "s2n" => Ok(Family::EvenSine),
            "odd_cosine" | "oc" | "c2n1" => Ok(Family::OddCosine),
            "odd_sine" | "os" | "s2n1" => Ok(Family::OddSine),
            _ => Err(InceError::UnknownFamily(s.to_string())),
        }
    }
}

/// One instance of Ince's equation `w″ + a sin2z w′ + (η − qa cos2z) w = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InceProblem {
    pub a: f64,
    pub q: usize,
    pub family: Family,
}

impl InceProblem {
    /// Problem for degree `n` of `family`.
    pub fn new(family: Family, n: usize, a: f64) -> Result<Self> {
        if !(a >= 0.0) || !a.is_finite() {
            return Err(InceError::InvalidCoupling(a));
        }
        if n < family.min_degree() {
            return Err(InceError::DegreeTooSmall {
                family: family.name(),
                n,
                min: family.min_degree(),
            });
        }
        Ok(Self { a, q: family.q(n), family })
    }

    /// Problem from an explicit q; parity must match the family.
    pub fn with_q(family: Family, q: usize, a: f64) -> Result<Self> {
        let even = q.is_multiple_of(2);
        if even != family.is_even() {
            return Err(InceError::ParityMismatch { family: family.name(), q });
        }
        Self::new(family, q / 2, a)
    }

    /// Polynomial degree n (q = 2n or 2n+1).
    pub fn n(&self) -> usize {
        self.q / 2
    }
}

/// Transverse momentum p_x = (q+1)k_p/2 selecting the polynomial solutions.
pub fn transverse_momentum(problem: &InceProblem, derived: &DerivedParams) -> f64 {
    (problem.q as f64 + 1.0) * derived.kp / 2.0
}

/// Shift of the phase variable that maps a solution for coupling `a` onto
/// the solution for `−a`: if `w(z)` solves the equation with `a`, then
/// `w(z + π/2)` solves it with `−a`.
pub fn reflect_coupling(z: f64) -> f64 {
    z + FRAC_PI_2
}
