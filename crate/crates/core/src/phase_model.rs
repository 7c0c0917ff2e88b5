//! Phase of the superposition of the transmitted beam and the light the atom
//! scatters coherently into it.
//!
//! Both setups reduce to the argument of one complex number
//! `re + i·im`, where
//!
//! ```text
//! re = √p (1+s)^{3/2} (1+4δ²) − 2 g
//! im = −4 g δ
//! g  = √(Ω̃ Ω̃′) η η′
//! ```
//!
//! The symmetric setup is the special case `Ω̃′ = Ω̃`, `η′ = η`, `p = 1`.

use serde::{Deserialize, Serialize};

use crate::atom_response::saturation_at_detuning;
use crate::error::{ensure_non_negative, ensure_unit_interval, Error, Result};

/// Focusing and collection through the same optics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricCoupling {
    /// Dipole-weighted solid-angle fraction Ω̃.
    pub omega_n: f64,
    /// Overlap η of the incident mode with the dipole mode.
    pub eta: f64,
}

impl SymmetricCoupling {
    pub fn new(omega_n: f64, eta: f64) -> Result<Self> {
        ensure_unit_interval("omega_n", omega_n)?;
        ensure_unit_interval("eta", eta)?;
        Ok(Self { omega_n, eta })
    }

    /// `Ω̃η²`, the single combination the symmetric phase depends on.
    pub fn strength(&self) -> f64 {
        self.omega_n * self.eta * self.eta
    }

    pub fn as_asymmetric(&self) -> AsymmetricCoupling {
        AsymmetricCoupling {
            omega_n: self.omega_n,
            eta: self.eta,
            omega_n_prime: self.omega_n,
            eta_prime: self.eta,
            p: 1.0,
        }
    }
}

/// Collection optics differing from the focusing optics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetricCoupling {
    pub omega_n: f64,
    pub eta: f64,
    /// Solid-angle fraction of the re-collimating optics.
    pub omega_n_prime: f64,
    /// Overlap of the re-collimated beam with the dipole mode.
    pub eta_prime: f64,
    /// Fraction of incident power that is re-collimated.
    pub p: f64,
}

impl AsymmetricCoupling {
    pub fn new(omega_n: f64, eta: f64, omega_n_prime: f64, eta_prime: f64, p: f64) -> Result<Self> {
        ensure_unit_interval("omega_n", omega_n)?;
        ensure_unit_interval("eta", eta)?;
        ensure_unit_interval("omega_n_prime", omega_n_prime)?;
        ensure_unit_interval("eta_prime", eta_prime)?;
        ensure_unit_interval("p", p)?;
        Ok(Self {
            omega_n,
            eta,
            omega_n_prime,
            eta_prime,
            p,
        })
    }

    /// Effective coupling `√(Ω̃Ω̃′)ηη′`.
    pub fn strength(&self) -> f64 {
        (self.omega_n * self.omega_n_prime).sqrt() * self.eta * self.eta_prime
    }
}

/// Classification of a computed phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// On resonance, scattered light dominates: φ = π.
    Pi,
    /// On resonance, transmitted light dominates: φ = 0.
    Zero,
    /// The complex field vanishes; no phase is defined.
    Boundary,
    /// Off resonance.
    Generic,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Pi => "pi",
            Branch::Zero => "zero",
            Branch::Boundary => "boundary",
            Branch::Generic => "generic",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Phase together with the complex number it was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseResult {
    /// Principal value in (−π, π].
    pub phi: f64,
    pub branch: Branch,
    pub real_part: f64,
    pub imag_part: f64,
    /// Saturation parameter at the evaluated detuning.
    pub s: f64,
}

fn validate_drive(delta: f64, s0: f64) -> Result<()> {
    if !delta.is_finite() {
        return Err(Error::Domain(format!("delta = {delta} must be finite")));
    }
    ensure_non_negative("s0", s0)
}

fn assemble(re: f64, im: f64, delta: f64, s: f64) -> Result<PhaseResult> {
    // -0.0 would put the resonant π branch at −π
    let im = if im == 0.0 { 0.0 } else { im };
    let branch = if delta != 0.0 {
        Branch::Generic
    } else if re < 0.0 {
        Branch::Pi
    } else if re > 0.0 {
        Branch::Zero
    } else {
        return Err(Error::Boundary);
    };
    if re == 0.0 && im == 0.0 {
        return Err(Error::Boundary);
    }
    Ok(PhaseResult {
        phi: im.atan2(re),
        branch,
        real_part: re,
        imag_part: im,
        s,
    })
}

/// Phase shift for the symmetric setup.
pub fn phase_symmetric(c: &SymmetricCoupling, delta: f64, s0: f64) -> Result<PhaseResult> {
    validate_drive(delta, s0)?;
    let lorentz = 1.0 + 4.0 * delta * delta;
    let s = saturation_at_detuning(s0, delta);
    let g = c.strength();
    let re = (1.0 + s).powf(1.5) * lorentz - 2.0 * g;
    let im = -4.0 * g * delta;
    assemble(re, im, delta, s)
}

/// Phase shift for the general setup with distinct collection optics.
pub fn phase_asymmetric(c: &AsymmetricCoupling, delta: f64, s0: f64) -> Result<PhaseResult> {
    validate_drive(delta, s0)?;
    if !(c.p > 0.0) {
        return Err(Error::Domain(format!(
            "re-collimated power fraction p = {} must be > 0",
            c.p
        )));
    }
    let lorentz = 1.0 + 4.0 * delta * delta;
    let s = saturation_at_detuning(s0, delta);
    let g = c.strength();
    let re = c.p.sqrt() * (1.0 + s).powf(1.5) * lorentz - 2.0 * g;
    let im = -4.0 * g * delta;
    assemble(re, im, delta, s)
}

/// On-resonance branch from the sign of `2Ω̃η² − (1+s0)^{3/2}`.
pub fn resonance_branch(c: &SymmetricCoupling, s0: f64) -> Branch {
    let drive = 2.0 * c.strength();
    let transmitted = (1.0 + s0).powf(1.5);
    if drive > transmitted {
        Branch::Pi
    } else if drive < transmitted {
        Branch::Zero
    } else {
        Branch::Boundary
    }
}

/// Largest `s0` that still gives the π branch on resonance, `(2Ω̃η²)^{2/3} − 1`.
///
/// `None` when even an unsaturated atom stays on the zero branch.
pub fn critical_saturation(c: &SymmetricCoupling) -> Option<f64> {
    let drive = 2.0 * c.strength();
    if drive >= 1.0 {
        Some(drive.powf(2.0 / 3.0) - 1.0)
    } else {
        None
    }
}

/// Arctangent form of the symmetric phase, valid for `|δ| ≥ 1/2` where the real
/// part cannot become negative.
pub fn dispersive_phase_arctan(c: &SymmetricCoupling, delta: f64, s0: f64) -> Result<f64> {
    validate_drive(delta, s0)?;
    if delta.abs() < 0.5 {
        return Err(Error::Precondition(format!(
            "arctan form requires |delta| >= 0.5, got {delta}"
        )));
    }
    let g = c.strength();
    let s = saturation_at_detuning(s0, delta);
    let num = 4.0 * g * delta;
    let den = (1.0 + s).powf(1.5) * (1.0 + 4.0 * delta * delta) - 2.0 * g;
    if den == 0.0 {
        return Ok(-num.signum() * std::f64::consts::FRAC_PI_2);
    }
    Ok(-(num / den).atan())
}

/// Weak-drive, large-detuning phase `φ₀ = −4Ω̃η²δ / (1 + 4δ² − 2Ω̃η²)`.
pub fn kerr_linear_phase(c: &SymmetricCoupling, delta: f64) -> Result<f64> {
    let g = c.strength();
    let den = 1.0 + 4.0 * delta * delta - 2.0 * g;
    if den == 0.0 {
        return Err(Error::Pole(format!(
            "1 + 4δ² − 2Ω̃η² vanishes at delta = {delta}"
        )));
    }
    Ok(-4.0 * g * delta / den)
}

/// Intensity-dependent phase `φ₀(1 − 3s/2)`.
pub fn kerr_phase(phi0: f64, s: f64) -> f64 {
    phi0 * (1.0 - 1.5 * s)
}

/// Relative deviation of the Kerr-type phase from the full symmetric phase at
/// detuned saturation `s` (the full model is fed `s0 = s(1+4δ²)`).
pub fn kerr_relative_error(c: &SymmetricCoupling, delta: f64, s: f64) -> Result<f64> {
    ensure_non_negative("s", s)?;
    let s0 = s * (1.0 + 4.0 * delta * delta);
    let full = phase_symmetric(c, delta, s0)?.phi;
    if full == 0.0 {
        return Err(Error::UndefinedRatio(
            "full-model phase is zero".to_string(),
        ));
    }
    let kerr = kerr_phase(kerr_linear_phase(c, delta)?, s);
    Ok((full - kerr).abs() / full.abs())
}

/// How far a phase shift exceeds the phase uncertainty `amplitude^{-1/2}` of a
/// coherent probe; values above one mean the shift is resolvable.
pub fn repeater_margin(phi: f64, coherent_amplitude: f64) -> Result<f64> {
    if !(coherent_amplitude > 0.0 && coherent_amplitude.is_finite()) {
        return Err(Error::Domain(format!(
            "coherent amplitude {coherent_amplitude} must be > 0"
        )));
    }
    Ok(phi.abs() * coherent_amplitude.sqrt())
}
