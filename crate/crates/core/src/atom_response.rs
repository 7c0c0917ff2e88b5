//! Steady-state response of a driven two-level atom.
//!
//! Detuning is carried as `delta = Δ/Γ` and drive strength as the on-resonance
//! saturation parameter `s0`. Physical units only enter through
//! [`physical_to_normalized`].

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_unit_interval, Error, Result};

/// Reduced Planck constant (J·s), CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity (F/m), CODATA 2018.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Dipole-weighted solid angle of the full sphere, `8π/3`.
pub const FULL_DIPOLE_SOLID_ANGLE: f64 = 8.0 * PI / 3.0;

/// A two-level transition: angular frequency, linewidth and (real) dipole moment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomTransition {
    omega0: f64,
    gamma: f64,
    mu: f64,
}

fn gamma_prefactor(omega0: f64) -> f64 {
    omega0.powi(3) / (3.0 * PI * EPSILON_0 * HBAR * SPEED_OF_LIGHT.powi(3))
}

impl AtomTransition {
    /// Builds the transition from its frequency (rad/s) and dipole matrix element (C·m);
    /// the spontaneous emission rate follows from both.
    pub fn from_dipole(omega0: f64, mu: f64) -> Result<Self> {
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::Domain(format!("omega0 = {omega0} must be > 0")));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::Domain(format!(
                "dipole moment mu = {mu} must be real, finite and > 0"
            )));
        }
        Ok(Self {
            omega0,
            gamma: gamma_prefactor(omega0) * mu * mu,
            mu,
        })
    }

    /// Builds the transition from its frequency and linewidth (both rad/s),
    /// inferring the dipole moment.
    pub fn from_linewidth(omega0: f64, gamma: f64) -> Result<Self> {
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::Domain(format!("omega0 = {omega0} must be > 0")));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!("gamma = {gamma} must be > 0")));
        }
        Ok(Self {
            omega0,
            gamma,
            mu: (gamma / gamma_prefactor(omega0)).sqrt(),
        })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Transition wavelength `2πc/ω₀` (m).
    pub fn wavelength(&self) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT / self.omega0
    }
}

/// Drive parameters in normalized units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Drive {
    /// Detuning Δ/Γ.
    pub delta: f64,
    /// On-resonance saturation parameter.
    pub s0: f64,
}

impl Drive {
    pub fn new(delta: f64, s0: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(Error::Domain(format!("delta = {delta} must be finite")));
        }
        ensure_non_negative("s0", s0)?;
        Ok(Self { delta, s0 })
    }

    /// Saturation parameter at this detuning.
    pub fn saturation(&self) -> f64 {
        saturation_at_detuning(self.s0, self.delta)
    }
}

/// Field, Rabi frequency and saturation parameter produced by a focused beam of given power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalDrive {
    /// Field amplitude parallel to the dipole at the atom (V/m).
    pub e0: f64,
    /// Rabi frequency `E₀μ/ħ` (rad/s).
    pub rabi: f64,
    /// On-resonance saturation parameter `2Ω_R²/Γ²`.
    pub s0: f64,
}

/// Converts incident power into the field at the atom and the saturation parameter.
///
/// `solid_angle` is the unnormalized dipole-weighted solid angle in `[0, 8π/3]`.
/// The drive frequency is taken equal to the transition frequency.
pub fn physical_to_normalized(
    power: f64,
    atom: &AtomTransition,
    solid_angle: f64,
    eta: f64,
) -> Result<PhysicalDrive> {
    ensure_non_negative("power", power)?;
    ensure_unit_interval("eta", eta)?;
    if !(0.0..=FULL_DIPOLE_SOLID_ANGLE * (1.0 + 1e-15)).contains(&solid_angle) {
        return Err(Error::Domain(format!(
            "solid angle {solid_angle} must lie in [0, 8π/3]"
        )));
    }
    let e0 = (2.0 * power).sqrt() / (atom.wavelength() * (EPSILON_0 * SPEED_OF_LIGHT).sqrt())
        * solid_angle.sqrt()
        * eta;
    let rabi = e0 * atom.mu / HBAR;
    let s0 = 2.0 * rabi * rabi / (atom.gamma * atom.gamma);
    Ok(PhysicalDrive { e0, rabi, s0 })
}

/// `s0` from power via the normalized closed form `8PΩ̃η²/(ħω₀Γ)`.
pub fn saturation_from_power(power: f64, atom: &AtomTransition, omega_n: f64, eta: f64) -> Result<f64> {
    ensure_non_negative("power", power)?;
    ensure_unit_interval("omega_n", omega_n)?;
    ensure_unit_interval("eta", eta)?;
    Ok(8.0 * power * omega_n * eta * eta / (HBAR * atom.omega0 * atom.gamma))
}

/// `s = s0 / (1 + 4δ²)`.
pub fn saturation_at_detuning(s0: f64, delta: f64) -> f64 {
    s0 / (1.0 + 4.0 * delta * delta)
}

/// Upper-state population `(s/2)/(1+s)`.
pub fn excited_state_population(s: f64) -> f64 {
    0.5 * s / (1.0 + s)
}

/// Steady-state coherence `ρ_ab = Ω_R(iΓ − 2Δ)/(4Δ² + Γ² + 2Ω_R²)`, all rates in rad/s.
pub fn steady_state_coherence(rabi: f64, delta_abs: f64, gamma: f64) -> Complex64 {
    let denom = 4.0 * delta_abs * delta_abs + gamma * gamma + 2.0 * rabi * rabi;
    Complex64::new(-2.0 * delta_abs, gamma) * (rabi / denom)
}

/// Phase of the scattered field, `arctan(2δ) + π/2`, or `arctan(2δ) + π` once the
/// Gouy shift of the transmitted wave is folded in.
pub fn scattered_phase(delta: f64, include_gouy: bool) -> f64 {
    let offset = if include_gouy { PI } else { FRAC_PI_2 };
    (2.0 * delta).atan() + offset
}

/// Scattered-to-incident power ratio `4Ω̃η² / ((1+4δ²)(1+s)²)`.
pub fn scattered_power_ratio(omega_n: f64, eta: f64, delta: f64, s0: f64) -> f64 {
    let lorentz = 1.0 + 4.0 * delta * delta;
    let s = s0 / lorentz;
    4.0 * omega_n * eta * eta / (lorentz * (1.0 + s) * (1.0 + s))
}

/// Share `1/(1+s)` of the scattered power that is coherent with the drive.
pub fn coherent_fraction(s: f64) -> f64 {
    1.0 / (1.0 + s)
}
