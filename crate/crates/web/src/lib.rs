//! wasm-bindgen bindings behind the static demo page in `www/`.
//!
//! Each export has a plain Rust counterpart in [`curves`] so the numerics can be
//! tested natively.

use wasm_bindgen::prelude::*;

pub mod curves {
    use atomphase::{
        critical_saturation, kerr_linear_phase, kerr_phase, optimize_doughnut_waist, phase_asymmetric,
        recollimation_parameters, saturation_at_detuning, AsymmetricCoupling, BeamProfile, ParabolicMirror,
        Result, SymmetricCoupling,
    };

    /// Evenly spaced grid including both endpoints.
    pub fn grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
        match count {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..count)
                .map(|i| {
                    if i + 1 == count {
                        stop
                    } else {
                        start + (stop - start) * i as f64 / (count - 1) as f64
                    }
                })
                .collect(),
        }
    }

    /// Phase in degrees over a detuning grid; NaN where the field vanishes.
    pub fn phase_vs_detuning(coupling: &AsymmetricCoupling, s0: f64, deltas: &[f64]) -> Result<Vec<f64>> {
        deltas
            .iter()
            .map(|&d| match phase_asymmetric(coupling, d, s0) {
                Ok(r) => Ok(r.phi.to_degrees()),
                Err(atomphase::Error::Boundary) => Ok(f64::NAN),
                Err(e) => Err(e),
            })
            .collect()
    }

    /// On-resonance saturation above which the phase drops from π to 0, NaN if none.
    pub fn threshold(coupling: &SymmetricCoupling) -> f64 {
        critical_saturation(coupling).unwrap_or(f64::NAN)
    }

    /// Full and Kerr-expanded phase in radians over a grid of saturation at fixed detuning.
    pub fn kerr_vs_full(coupling: &SymmetricCoupling, delta: f64, ss: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let phi0 = kerr_linear_phase(coupling, delta)?;
        let scale = 1.0 + 4.0 * delta * delta;
        let mut full = Vec::with_capacity(ss.len());
        let mut kerr = Vec::with_capacity(ss.len());
        for &s in ss {
            let s0 = s * scale;
            debug_assert!((saturation_at_detuning(s0, delta) - s).abs() <= 1e-12 * s.max(1.0));
            full.push(atomphase::phase_symmetric(coupling, delta, s0)?.phi);
            kerr.push(kerr_phase(phi0, s));
        }
        Ok((full, kerr))
    }

    /// `[omega_n, omega_n_prime, eta, eta_prime, p, waist]` for a doughnut beam on a mirror.
    /// A non-positive waist selects the overlap-optimal one.
    pub fn mirror_coupling(f: f64, r: f64, hole: f64, waist: f64) -> Result<[f64; 6]> {
        let mirror = ParabolicMirror::new(f, r, hole)?;
        let waist = if waist > 0.0 {
            waist
        } else {
            optimize_doughnut_waist(&mirror)?.waist
        };
        let rc = recollimation_parameters(&mirror, &BeamProfile::Doughnut { waist })?;
        Ok([rc.omega_n, rc.omega_n_prime, rc.eta, rc.eta_prime, rc.p, waist])
    }
}

fn js_err(e: atomphase::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Phase in degrees for `count` detunings in `[delta_min, delta_max]`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn phase_curve(
    omega_n: f64,
    eta: f64,
    omega_n_prime: f64,
    eta_prime: f64,
    p: f64,
    s0: f64,
    delta_min: f64,
    delta_max: f64,
    count: usize,
) -> Result<Vec<f64>, JsError> {
    let c = atomphase::AsymmetricCoupling::new(omega_n, eta, omega_n_prime, eta_prime, p).map_err(js_err)?;
    curves::phase_vs_detuning(&c, s0, &curves::grid(delta_min, delta_max, count)).map_err(js_err)
}

/// Resonance threshold of the symmetric coupling, NaN if the phase is never π.
#[wasm_bindgen]
pub fn resonance_threshold(omega_n: f64, eta: f64) -> Result<f64, JsError> {
    let c = atomphase::SymmetricCoupling::new(omega_n, eta).map_err(js_err)?;
    Ok(curves::threshold(&c))
}

/// Full curve followed by the Kerr curve, `count` values each, for `s` in `[0, s_max]`.
#[wasm_bindgen]
pub fn kerr_curves(omega_n: f64, eta: f64, delta: f64, s_max: f64, count: usize) -> Result<Vec<f64>, JsError> {
    let c = atomphase::SymmetricCoupling::new(omega_n, eta).map_err(js_err)?;
    let (mut full, kerr) = curves::kerr_vs_full(&c, delta, &curves::grid(0.0, s_max, count)).map_err(js_err)?;
    full.extend(kerr);
    Ok(full)
}

/// `[omega_n, omega_n_prime, eta, eta_prime, p, waist]`; `waist <= 0` optimizes it.
#[wasm_bindgen]
pub fn mirror_coupling(f: f64, r: f64, hole: f64, waist: f64) -> Result<Vec<f64>, JsError> {
    curves::mirror_coupling(f, r, hole, waist).map(Vec::from).map_err(js_err)
}
