//! Focusing geometry: dipole-weighted solid angles, mode overlaps and the
//! re-collimation properties of a deep parabolic mirror.
//!
//! Angles are polar angles `θ` measured from the optical axis. For a mirror the
//! focus sits at the origin, the vertex at `z = −f`, and the surface is
//! `z = d²/(4f) − f`; a ray entering parallel to the axis at pupil radius `d`
//! is sent through the focus at `θ(d) = π − 2·arctan(d/2f)` and leaves the
//! mirror again at `d′ = 4f²/d`.
//!
//! Beam profiles are real amplitudes of one coordinate: the pupil radius `d`
//! for mirror regions and `θ` for angular regions.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::golden_section_maximize;
use crate::quadrature::{integrate, Tolerance};

/// Orientation of a linear dipole relative to the optical axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DipoleOrientation {
    Axial,
    Transverse,
}

/// Squared sine of the angle between direction `(θ, φ)` and the dipole axis.
pub fn dipole_intensity(orientation: DipoleOrientation, theta: f64, phi: f64) -> f64 {
    match orientation {
        DipoleOrientation::Axial => theta.sin().powi(2),
        DipoleOrientation::Transverse => {
            let c = theta.sin() * phi.cos();
            1.0 - c * c
        }
    }
}

/// Dipole-weighted solid-angle fraction of the cone `[0, θ]` around an axial
/// dipole, as a function of `cos θ`: `(2 − 3cosθ + cos³θ)/4`.
pub fn axial_cap_fraction(cos_theta: f64) -> f64 {
    0.25 * (2.0 - 3.0 * cos_theta + cos_theta.powi(3))
}

/// A lens cone of semi-aperture `half_angle` around the optical axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeAperture {
    pub half_angle: f64,
    pub orientation: DipoleOrientation,
}

impl ConeAperture {
    pub fn new(half_angle: f64, orientation: DipoleOrientation) -> Result<Self> {
        if !(half_angle > 0.0 && half_angle <= PI) {
            return Err(Error::Domain(format!(
                "half angle {half_angle} must lie in (0, π]"
            )));
        }
        Ok(Self {
            half_angle,
            orientation,
        })
    }

    /// Cone of a lens with the given numerical aperture (in vacuum).
    pub fn from_numerical_aperture(na: f64, orientation: DipoleOrientation) -> Result<Self> {
        if !(na > 0.0 && na <= 1.0) {
            return Err(Error::Domain(format!("numerical aperture {na} must lie in (0, 1]")));
        }
        Self::new(na.asin(), orientation)
    }
}

/// Normalized dipole-weighted solid angle Ω̃ of a cone.
pub fn cone_weighted_solid_angle(cone: &ConeAperture) -> Result<f64> {
    let alpha = cone.half_angle;
    if !(alpha > 0.0 && alpha <= PI) {
        return Err(Error::Domain(format!("half angle {alpha} must lie in (0, π]")));
    }
    let c = alpha.cos();
    let cap = axial_cap_fraction(c);
    Ok(match cone.orientation {
        DipoleOrientation::Axial => cap,
        DipoleOrientation::Transverse => 0.75 * (1.0 - c) - 0.5 * cap,
    })
}

/// Paraboloidal mirror with its focus at the atom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicMirror {
    pub focal_length: f64,
    /// Outer radius of the mirror aperture.
    pub aperture_radius: f64,
    /// Radius of the central hole at the vertex.
    pub hole_radius: f64,
}

impl ParabolicMirror {
    pub fn new(focal_length: f64, aperture_radius: f64, hole_radius: f64) -> Result<Self> {
        if !(focal_length > 0.0 && focal_length.is_finite()) {
            return Err(Error::Domain(format!("focal length {focal_length} must be > 0")));
        }
        if !(aperture_radius > 0.0 && aperture_radius.is_finite()) {
            return Err(Error::Domain(format!(
                "aperture radius {aperture_radius} must be > 0"
            )));
        }
        if !(hole_radius >= 0.0 && hole_radius < aperture_radius) {
            return Err(Error::Domain(format!(
                "hole radius {hole_radius} must lie in [0, {aperture_radius})"
            )));
        }
        Ok(Self {
            focal_length,
            aperture_radius,
            hole_radius,
        })
    }

    fn cos_theta(&self, d: f64) -> f64 {
        let t2 = (d / (2.0 * self.focal_length)).powi(2);
        (t2 - 1.0) / (t2 + 1.0)
    }

    fn theta(&self, d: f64) -> f64 {
        PI - 2.0 * (d / (2.0 * self.focal_length)).atan()
    }

    fn conjugate(&self, d: f64) -> f64 {
        4.0 * self.focal_length * self.focal_length / d
    }
}

/// Where a ray parallel to the axis goes after hitting the mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayMap {
    /// Polar angle of the ray leaving the focus.
    pub theta: f64,
    /// Pupil radius at which it is re-collimated by the second reflection.
    pub d_prime: f64,
}

pub fn parabola_ray_map(d: f64, mirror: &ParabolicMirror) -> Result<RayMap> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Domain(format!("pupil radius {d} must be > 0")));
    }
    Ok(RayMap {
        theta: mirror.theta(d),
        d_prime: mirror.conjugate(d),
    })
}

/// Normalized dipole-weighted solid angle covered by the mirror annulus, for an
/// axial dipole at the focus.
pub fn mirror_weighted_solid_angle(mirror: &ParabolicMirror) -> f64 {
    pupil_band_solid_angle(mirror, mirror.hole_radius, mirror.aperture_radius)
}

fn pupil_band_solid_angle(mirror: &ParabolicMirror, inner: f64, outer: f64) -> f64 {
    axial_cap_fraction(mirror.cos_theta(inner)) - axial_cap_fraction(mirror.cos_theta(outer))
}

/// Pupil-plane amplitude of the axial dipole's far field after collimation by
/// the mirror, `sinθ(d) / (1 + (d/2f)²)`.
pub fn pupil_dipole_profile(d: f64, mirror: &ParabolicMirror) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::Domain(format!("pupil radius {d} must be > 0")));
    }
    Ok(dipole_pupil_amplitude(d, mirror.focal_length))
}

fn dipole_pupil_amplitude(d: f64, focal_length: f64) -> f64 {
    let t = d / (2.0 * focal_length);
    let q = 1.0 + t * t;
    // sinθ = 2t/(1+t²)
    2.0 * t / (q * q)
}

/// Incident amplitude profile.
#[derive(Clone)]
pub enum BeamProfile {
    FlatTop,
    /// `(x/w)·exp(−x²/w²)`.
    Doughnut { waist: f64 },
    /// The dipole's own mode in whatever coordinate the region uses.
    DipoleMatched,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl BeamProfile {
    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        BeamProfile::Custom(Arc::new(f))
    }

    fn pupil_amplitude(&self, d: f64, mirror: &ParabolicMirror) -> f64 {
        match self {
            BeamProfile::FlatTop => 1.0,
            BeamProfile::Doughnut { waist } => doughnut(d, *waist),
            BeamProfile::DipoleMatched => dipole_pupil_amplitude(d, mirror.focal_length),
            BeamProfile::Custom(f) => f(d),
        }
    }

    fn angular_amplitude(&self, theta: f64, phi: f64, orientation: DipoleOrientation) -> f64 {
        match self {
            BeamProfile::FlatTop => 1.0,
            BeamProfile::Doughnut { waist } => doughnut(theta, *waist),
            BeamProfile::DipoleMatched => dipole_intensity(orientation, theta, phi).sqrt(),
            BeamProfile::Custom(f) => f(theta),
        }
    }
}

impl fmt::Debug for BeamProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeamProfile::FlatTop => f.write_str("FlatTop"),
            BeamProfile::Doughnut { waist } => f.debug_struct("Doughnut").field("waist", waist).finish(),
            BeamProfile::DipoleMatched => f.write_str("DipoleMatched"),
            BeamProfile::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

fn doughnut(x: f64, waist: f64) -> f64 {
    let u = x / waist;
    u * (-u * u).exp()
}

/// Amplitude, per unit solid angle, of the field a pupil profile produces on the
/// focal sphere, `A(d(θ))·f/sin²(θ/2)`. Power is conserved:
/// `∫A² 2πd dd = ∫Ã² 2π sinθ dθ` over corresponding ranges.
pub fn angular_image(profile: &BeamProfile, mirror: &ParabolicMirror, theta: f64) -> f64 {
    let half = 0.5 * theta;
    let d = 2.0 * mirror.focal_length / half.tan();
    profile.pupil_amplitude(d, mirror) * mirror.focal_length / half.sin().powi(2)
}

/// Region over which an overlap is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// Pupil annulus `[inner, outer]` in front of a mirror (axial dipole).
    Pupil {
        mirror: ParabolicMirror,
        inner: f64,
        outer: f64,
    },
    /// Polar-angle band on the focal sphere.
    Angular {
        theta_min: f64,
        theta_max: f64,
        orientation: DipoleOrientation,
    },
}

impl Region {
    pub fn cone(cone: &ConeAperture) -> Self {
        Region::Angular {
            theta_min: 0.0,
            theta_max: cone.half_angle,
            orientation: cone.orientation,
        }
    }

    /// The annulus illuminated by a beam filling the mirror aperture.
    pub fn mirror(mirror: &ParabolicMirror) -> Self {
        Region::Pupil {
            mirror: *mirror,
            inner: mirror.hole_radius,
            outer: mirror.aperture_radius,
        }
    }
}

/// `∫ g(d) 2πd dd` over `[inner, outer]`, integrated in `ψ = arctan(d/2f)` so that
/// `d → ∞` maps to a finite, smooth endpoint.
fn pupil_integral(
    g: impl Fn(f64) -> f64,
    focal_length: f64,
    inner: f64,
    outer: f64,
) -> Result<f64> {
    let two_f = 2.0 * focal_length;
    let psi_lo = (inner / two_f).atan();
    let psi_hi = (outer / two_f).atan();
    let v = integrate(
        |psi| {
            let t = psi.tan();
            let sec2 = 1.0 + t * t;
            g(two_f * t) * two_f * two_f * t * sec2
        },
        psi_lo,
        psi_hi,
        Tolerance::PUPIL,
    )?;
    Ok(2.0 * PI * v)
}

/// `∫∫ g(θ, φ) sinθ dθ dφ` over a polar band.
fn angular_integral(
    g: impl Fn(f64, f64) -> f64,
    orientation: DipoleOrientation,
    theta_min: f64,
    theta_max: f64,
) -> Result<f64> {
    match orientation {
        DipoleOrientation::Axial => {
            let v = integrate(|t| g(t, 0.0) * t.sin(), theta_min, theta_max, Tolerance::ANGULAR)?;
            Ok(2.0 * PI * v)
        }
        DipoleOrientation::Transverse => {
            // integrand is even in φ about 0 and π/2; one quadrant suffices
            let inner_err = RefCell::new(None);
            let v = integrate(
                |t| match integrate(|p| g(t, p), 0.0, 0.5 * PI, Tolerance::ANGULAR) {
                    Ok(v) => v * t.sin(),
                    Err(e) => {
                        inner_err.borrow_mut().get_or_insert(e);
                        f64::NAN
                    }
                },
                theta_min,
                theta_max,
                Tolerance::ANGULAR,
            );
            if let Some(e) = inner_err.into_inner() {
                return Err(e);
            }
            Ok(4.0 * v?)
        }
    }
}

/// Normalized amplitude overlap of `profile` with the dipole mode on `region`.
pub fn overlap_eta(profile: &BeamProfile, region: &Region) -> Result<f64> {
    let (cross, norm_beam, norm_dipole) = match *region {
        Region::Pupil {
            mirror,
            inner,
            outer,
        } => {
            if !(inner >= 0.0 && outer > inner && outer.is_finite()) {
                return Err(Error::Degenerate(format!(
                    "empty pupil annulus [{inner}, {outer}]"
                )));
            }
            let f = mirror.focal_length;
            let a = |d: f64| profile.pupil_amplitude(d, &mirror);
            let b = |d: f64| dipole_pupil_amplitude(d, f);
            (
                pupil_integral(|d| a(d) * b(d), f, inner, outer)?,
                pupil_integral(|d| a(d).powi(2), f, inner, outer)?,
                pupil_integral(|d| b(d).powi(2), f, inner, outer)?,
            )
        }
        Region::Angular {
            theta_min,
            theta_max,
            orientation,
        } => {
            if !(theta_min >= 0.0 && theta_max > theta_min && theta_max <= PI) {
                return Err(Error::Degenerate(format!(
                    "empty angular band [{theta_min}, {theta_max}]"
                )));
            }
            let a = |t: f64, p: f64| profile.angular_amplitude(t, p, orientation);
            let b = |t: f64, p: f64| dipole_intensity(orientation, t, p).sqrt();
            (
                angular_integral(|t, p| a(t, p) * b(t, p), orientation, theta_min, theta_max)?,
                angular_integral(|t, p| a(t, p).powi(2), orientation, theta_min, theta_max)?,
                angular_integral(|t, p| b(t, p).powi(2), orientation, theta_min, theta_max)?,
            )
        }
    };
    if !(norm_beam > 0.0) || !(norm_dipole > 0.0) {
        return Err(Error::Degenerate("profile has zero norm on the region".into()));
    }
    let eta = cross / (norm_beam * norm_dipole).sqrt();
    // Cauchy–Schwarz; rounding can overshoot by an ulp or two
    Ok(eta.clamp(-1.0, 1.0))
}

/// Coupling parameters of a mirror for focusing and for re-collimation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Recollimation {
    /// Solid-angle fraction covered on the way in.
    pub omega_n: f64,
    /// Overlap of the incident beam with the dipole mode over the mirror annulus.
    pub eta: f64,
    /// Solid-angle fraction of the rays that are re-collimated.
    pub omega_n_prime: f64,
    /// Overlap of the re-collimated beam with the dipole mode.
    pub eta_prime: f64,
    /// Re-collimated fraction of incident power.
    pub p: f64,
}

/// Traces the incident beam through the focus and back out of the mirror.
///
/// A ray entering at `d` leaves at `4f²/d`; it is lost when that lands outside
/// the aperture or inside the hole, leaving the kept band
/// `[max(h, 4f²/R), min(R, 4f²/h)]`.
pub fn recollimation_parameters(
    mirror: &ParabolicMirror,
    profile: &BeamProfile,
) -> Result<Recollimation> {
    let f = mirror.focal_length;
    let (h, r) = (mirror.hole_radius, mirror.aperture_radius);
    let kept_lo = h.max(mirror.conjugate(r));
    let kept_hi = if h > 0.0 { r.min(mirror.conjugate(h)) } else { r };
    if !(kept_hi > kept_lo) {
        return Err(Error::Degenerate(format!(
            "no ray is re-collimated (kept band [{kept_lo}, {kept_hi}])"
        )));
    }

    let power = |lo: f64, hi: f64| {
        pupil_integral(|d| profile.pupil_amplitude(d, mirror).powi(2), f, lo, hi)
    };
    let total = power(h, r)?;
    if !(total > 0.0) {
        return Err(Error::Degenerate("incident profile carries no power".into()));
    }
    let p = (power(kept_lo, kept_hi)? / total).min(1.0);

    let exit_lo = mirror.conjugate(kept_hi);
    let exit_hi = mirror.conjugate(kept_lo);
    let omega_n = mirror_weighted_solid_angle(mirror);
    let omega_n_prime = pupil_band_solid_angle(mirror, exit_lo, exit_hi);
    let eta = overlap_eta(profile, &Region::mirror(mirror))?;

    let four_f2 = 4.0 * f * f;
    let incident = profile.clone();
    let m = *mirror;
    // power-conserving pull-back of the incident amplitude through d′ = 4f²/d
    let remapped = BeamProfile::custom(move |dp| {
        let d = four_f2 / dp;
        incident.pupil_amplitude(d, &m) * four_f2 / (dp * dp)
    });
    let eta_prime = overlap_eta(
        &remapped,
        &Region::Pupil {
            mirror: *mirror,
            inner: exit_lo,
            outer: exit_hi,
        },
    )?;

    Ok(Recollimation {
        omega_n,
        eta,
        omega_n_prime,
        eta_prime,
        p,
    })
}

/// Best member of a one-parameter profile family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaistOptimum {
    pub waist: f64,
    pub eta: f64,
}

/// Maximizes the incident overlap over the mirror annulus across a profile family
/// parameterized by `w ∈ [lo, hi]`.
pub fn optimize_waist<F>(mirror: &ParabolicMirror, family: F, lo: f64, hi: f64) -> Result<WaistOptimum>
where
    F: Fn(f64) -> BeamProfile,
{
    let region = Region::mirror(mirror);
    let best = golden_section_maximize(|w| overlap_eta(&family(w), &region), lo, hi, 1e-6)?;
    Ok(WaistOptimum {
        waist: best.x,
        eta: best.value,
    })
}

/// Doughnut waist with the best dipole overlap, searched over `[0.1f, 20f]`.
pub fn optimize_doughnut_waist(mirror: &ParabolicMirror) -> Result<WaistOptimum> {
    let f = mirror.focal_length;
    optimize_waist(mirror, |waist| BeamProfile::Doughnut { waist }, 0.1 * f, 20.0 * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use DipoleOrientation::{Axial, Transverse};

    fn mirror(f: f64, r: f64, h: f64) -> ParabolicMirror {
        ParabolicMirror::new(f, r, h).unwrap()
    }

    /// Oracle: brute-force `(3/8π)∫∫ sin²Θ sinθ dθ dφ` by nested quadrature.
    fn weighted_solid_angle_by_quadrature(alpha: f64, orientation: DipoleOrientation) -> f64 {
        let inner = |theta: f64| {
            integrate(|phi| dipole_intensity(orientation, theta, phi), 0.0, 2.0 * PI, Tolerance::ANGULAR).unwrap()
                * theta.sin()
        };
        3.0 / (8.0 * PI) * integrate(inner, 0.0, alpha, Tolerance::ANGULAR).unwrap()
    }

    #[test]
    fn cone_examples() {
        for o in [Axial, Transverse] {
            let full = cone_weighted_solid_angle(&ConeAperture::new(PI, o).unwrap()).unwrap();
            assert!((full - 1.0).abs() < 1e-12);
            let half = cone_weighted_solid_angle(&ConeAperture::new(0.5 * PI, o).unwrap()).unwrap();
            assert!((half - 0.5).abs() < 1e-12);
        }
        let na95 = ConeAperture::from_numerical_aperture(0.95, Transverse).unwrap();
        let v = cone_weighted_solid_angle(&na95).unwrap();
        assert!((v - 0.379_100).abs() < 1e-6, "{v}");
        let v = cone_weighted_solid_angle(&ConeAperture::new(PI / 3.0, Axial).unwrap()).unwrap();
        assert_relative_eq!(v, 0.15625, max_relative = 1e-14);
    }

    #[test]
    fn cone_domain() {
        assert!(ConeAperture::new(0.0, Axial).is_err());
        assert!(ConeAperture::new(3.2, Axial).is_err());
        let bad = ConeAperture {
            half_angle: -1.0,
            orientation: Axial,
        };
        assert!(cone_weighted_solid_angle(&bad).is_err());
    }

    #[test]
    fn cone_closed_forms_match_quadrature() {
        for o in [Axial, Transverse] {
            for &alpha in &[0.1, 0.7, 1.2, 0.5 * PI, 2.0, 2.9, PI] {
                let closed = cone_weighted_solid_angle(&ConeAperture::new(alpha, o).unwrap()).unwrap();
                let quad = weighted_solid_angle_by_quadrature(alpha, o);
                assert!((closed - quad).abs() < 1e-9, "{o:?} α={alpha}: {closed} vs {quad}");
            }
        }
    }

    #[test]
    fn cone_monotone_in_angle() {
        for o in [Axial, Transverse] {
            let mut last = 0.0;
            for i in 1..=400 {
                let v = cone_weighted_solid_angle(&ConeAperture::new(PI * i as f64 / 400.0, o).unwrap()).unwrap();
                assert!(v >= last);
                last = v;
            }
        }
    }

    #[test]
    fn dipole_pattern_integrates_to_full_weight() {
        for o in [Axial, Transverse] {
            assert!((weighted_solid_angle_by_quadrature(PI, o) - 1.0).abs() < 1e-9);
        }
    }

    /// Oracle: reflect a ray travelling along −z off the surface z = d²/4f − f and
    /// check it passes through the focus; return the polar angle of the focal ray.
    fn ray_trace_theta(d: f64, f: f64) -> f64 {
        let hit = (d, d * d / (4.0 * f) - f);
        let n = {
            let (nx, nz) = (-d / (2.0 * f), 1.0);
            let len = (nx * nx + nz * nz).sqrt();
            (nx / len, nz / len)
        };
        let v = (0.0, -1.0);
        let dot = v.0 * n.0 + v.1 * n.1;
        let r = (v.0 - 2.0 * dot * n.0, v.1 - 2.0 * dot * n.1);
        // the reflected ray must head for the origin: hit + t r = 0
        let t = -hit.0 / r.0;
        assert!((hit.1 + t * r.1).abs() < 1e-9 * f.max(1.0));
        hit.0.atan2(hit.1)
    }

    #[test]
    fn ray_map_examples() {
        let m = mirror(1.0, 10.0, 0.0);
        let map = parabola_ray_map(2.0, &m).unwrap();
        assert!((map.theta - 0.5 * PI).abs() < 1e-15);
        assert_eq!(map.d_prime, 2.0);
        assert!((ray_trace_theta(2.0, 1.0) - 0.5 * PI).abs() < 1e-12);
        let map = parabola_ray_map(1.0, &m).unwrap();
        assert!((map.theta - 2.214_297_435_588_181).abs() < 1e-12);
        assert_eq!(map.d_prime, 4.0);
        assert!((ray_trace_theta(1.0, 1.0) - map.theta).abs() < 1e-12);
        assert!(parabola_ray_map(0.0, &m).is_err());
        assert!(parabola_ray_map(-1.0, &m).is_err());
    }

    #[test]
    fn ray_map_agrees_with_ray_trace() {
        for &f in &[0.3, 1.0, 7.5] {
            let m = mirror(f, 100.0, 0.0);
            for i in 1..50 {
                let d = 0.2 * f * i as f64;
                let theta = parabola_ray_map(d, &m).unwrap().theta;
                assert!((theta - ray_trace_theta(d, f)).abs() < 1e-12);
                let d2 = parabola_ray_map(parabola_ray_map(d, &m).unwrap().d_prime, &m).unwrap();
                assert!((theta + d2.theta - PI).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mirror_solid_angle_examples() {
        assert!((mirror_weighted_solid_angle(&mirror(1.0, 2.0, 0.0)) - 0.5).abs() < 1e-12);
        assert!(mirror_weighted_solid_angle(&mirror(1.0, 4.0, 4.0 - 1e-12)).abs() < 1e-9);
        let deep = mirror_weighted_solid_angle(&mirror(1.0, 20.0, 0.4));
        assert!((deep - 0.9954).abs() < 1e-3, "{deep}");
        let worked = mirror_weighted_solid_angle(&mirror(1.0, 4.0, 0.2));
        assert!((worked - 0.8957).abs() < 1e-3, "{worked}");
    }

    #[test]
    fn mirror_solid_angle_matches_quadrature() {
        let m = mirror(1.0, 20.0, 0.4);
        let lo = m.theta(m.aperture_radius);
        let hi = m.theta(m.hole_radius);
        let quad = 0.75 * integrate(|t| t.sin().powi(3), lo, hi, Tolerance::ANGULAR).unwrap();
        assert!((mirror_weighted_solid_angle(&m) - quad).abs() < 1e-9);
    }

    #[test]
    fn pupil_dipole_profile_examples() {
        let m = mirror(1.0, 10.0, 0.0);
        assert!((pupil_dipole_profile(2.0, &m).unwrap() - 0.5).abs() < 1e-15);
        assert!(pupil_dipole_profile(1e-9, &m).unwrap() < 1e-8);
        assert!(pupil_dipole_profile(1e9, &m).unwrap() < 1e-20);
        assert!(pupil_dipole_profile(0.0, &m).is_err());
        // equals sinθ/(1 + (d/2f)²) with θ from the ray map
        for &d in &[0.1, 0.9, 3.3, 17.0] {
            let theta = parabola_ray_map(d, &m).unwrap().theta;
            let expected = theta.sin() / (1.0 + (d / 2.0).powi(2));
            assert!((pupil_dipole_profile(d, &m).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn pupil_dipole_power_equals_angular_pattern() {
        for &f in &[0.5, 1.0, 3.0] {
            let m = mirror(f, 1.0, 0.0);
            let pupil = pupil_integral(|d| dipole_pupil_amplitude(d, f).powi(2), f, 0.0, f64::INFINITY).unwrap();
            let angular = 2.0 * PI * integrate(|t| t.sin().powi(3), 0.0, PI, Tolerance::ANGULAR).unwrap();
            assert!((pupil - f * f * angular).abs() < 1e-6 * f * f);
            assert!((pupil - f * f * 8.0 * PI / 3.0).abs() < 1e-6 * f * f);
            let _ = m;
        }
    }

    #[test]
    fn pupil_substitution_matches_direct_integration() {
        // oracle: integrate directly in d on a finite annulus
        let m = mirror(1.0, 6.0, 0.3);
        let profile = BeamProfile::Doughnut { waist: 2.2 };
        let direct = 2.0 * PI
            * integrate(
                |d| profile.pupil_amplitude(d, &m).powi(2) * d,
                0.3,
                6.0,
                Tolerance::PUPIL,
            )
            .unwrap();
        let sub = pupil_integral(|d| profile.pupil_amplitude(d, &m).powi(2), 1.0, 0.3, 6.0).unwrap();
        assert!((direct - sub).abs() < 1e-8);
    }

    #[test]
    fn angular_image_conserves_power() {
        let m = mirror(1.3, 9.0, 0.25);
        let lo = m.theta(m.aperture_radius);
        let hi = m.theta(m.hole_radius);
        for profile in [
            BeamProfile::FlatTop,
            BeamProfile::Doughnut { waist: 2.0 },
            BeamProfile::DipoleMatched,
        ] {
            let pupil = pupil_integral(|d| profile.pupil_amplitude(d, &m).powi(2), m.focal_length, 0.25, 9.0).unwrap();
            let angle = 2.0 * PI
                * integrate(|t| angular_image(&profile, &m, t).powi(2) * t.sin(), lo, hi, Tolerance::ANGULAR)
                    .unwrap();
            assert!((pupil - angle).abs() < 1e-6 * pupil.max(1.0), "{profile:?}: {pupil} vs {angle}");
        }
        // the dipole mode images onto f·sinθ
        for &t in &[0.4, 1.5, 2.8] {
            assert!((angular_image(&BeamProfile::DipoleMatched, &m, t) - 1.3 * t.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn overlap_matched_is_unity() {
        let regions = [
            Region::mirror(&mirror(1.0, 20.0, 0.4)),
            Region::Pupil {
                mirror: mirror(2.0, 3.0, 0.0),
                inner: 0.5,
                outer: 1.0,
            },
            Region::cone(&ConeAperture::new(1.1, Axial).unwrap()),
            Region::cone(&ConeAperture::new(2.5, Transverse).unwrap()),
        ];
        for region in &regions {
            let eta = overlap_eta(&BeamProfile::DipoleMatched, region).unwrap();
            assert!((eta - 1.0).abs() < 1e-9, "{region:?}: {eta}");
        }
    }

    #[test]
    fn overlap_flat_top_full_sphere() {
        let region = Region::Angular {
            theta_min: 0.0,
            theta_max: PI,
            orientation: Axial,
        };
        let eta = overlap_eta(&BeamProfile::FlatTop, &region).unwrap();
        let closed = PI * (3.0f64 / 32.0).sqrt();
        assert!((eta - closed).abs() < 1e-9);
        assert!((eta - 0.9620).abs() < 1e-4);
    }

    #[test]
    fn overlap_is_bounded_and_degenerate_cases_error() {
        let m = mirror(1.0, 20.0, 0.4);
        for w in [0.3, 1.0, 2.4, 8.0] {
            let eta = overlap_eta(&BeamProfile::Doughnut { waist: w }, &Region::mirror(&m)).unwrap();
            assert!(eta > 0.0 && eta < 1.0);
        }
        let zero = BeamProfile::custom(|_| 0.0);
        assert!(matches!(overlap_eta(&zero, &Region::mirror(&m)), Err(Error::Degenerate(_))));
        let empty = Region::Pupil {
            mirror: m,
            inner: 2.0,
            outer: 2.0,
        };
        assert!(matches!(overlap_eta(&BeamProfile::FlatTop, &empty), Err(Error::Degenerate(_))));
    }

    #[test]
    fn recollimation_flat_top_worked_example() {
        let r = recollimation_parameters(&mirror(1.0, 4.0, 0.2), &BeamProfile::FlatTop).unwrap();
        assert!((r.p - 15.0 / 15.96).abs() < 1e-6, "{}", r.p);
        assert!((r.p - 0.9398).abs() < 1e-3);
        assert!((r.omega_n - 0.8957).abs() < 1e-3);
        assert!((r.omega_n_prime - 0.7920).abs() < 1e-3);
        // closed forms: kept band [1, 4] maps onto itself
        assert!((r.omega_n_prime - (axial_cap_fraction(-0.6) - axial_cap_fraction(0.6))).abs() < 1e-12);
        assert!(r.eta_prime > 0.0 && r.eta_prime <= 1.0);
    }

    #[test]
    fn recollimation_of_matched_beam_in_huge_mirror_is_lossless() {
        let r = recollimation_parameters(&mirror(1.0, 1e6, 0.0), &BeamProfile::DipoleMatched).unwrap();
        assert!((r.omega_n_prime - r.omega_n).abs() < 1e-6);
        assert!((r.p - 1.0).abs() < 1e-6);
        assert!((r.eta_prime - 1.0).abs() < 1e-6);
        assert!((r.eta - 1.0).abs() < 1e-9);
    }

    #[test]
    fn recollimation_empty_band_is_degenerate() {
        let m = mirror(1.0, 4.0, 3.99);
        assert!(matches!(
            recollimation_parameters(&m, &BeamProfile::FlatTop),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn recollimation_never_gains() {
        for &(f, r, h) in &[(1.0, 4.0, 0.2), (1.0, 20.0, 0.4), (0.5, 3.0, 0.05), (2.0, 5.0, 0.0), (1.0, 2.5, 1.8)] {
            let m = mirror(f, r, h);
            for profile in [BeamProfile::FlatTop, BeamProfile::Doughnut { waist: 1.7 * f }, BeamProfile::DipoleMatched] {
                let rc = recollimation_parameters(&m, &profile).unwrap();
                assert!(rc.omega_n_prime <= rc.omega_n + 1e-12);
                assert!(rc.p <= 1.0 && rc.p > 0.0);
                assert!(rc.eta_prime <= 1.0 && rc.eta <= 1.0);
            }
        }
    }

    #[test]
    fn doughnut_waist_on_deep_mirror() {
        let m = mirror(1.0, 20.0, 0.4);
        let best = optimize_doughnut_waist(&m).unwrap();
        assert!(best.eta >= 0.95 && best.eta < 1.0, "{best:?}");
        // scipy bounded Brent on the same integrals: w* = 2.36316, η* = 0.959120
        assert!((best.waist - 2.363_16).abs() < 1e-4, "{best:?}");
        assert!((best.eta - 0.959_120).abs() < 1e-5, "{best:?}");
        let region = Region::mirror(&m);
        for scale in [1.0 - 1e-3, 1.0 + 1e-3] {
            let eta = overlap_eta(&BeamProfile::Doughnut { waist: best.waist * scale }, &region).unwrap();
            assert!(eta <= best.eta);
        }
    }

    #[test]
    fn family_containing_matched_profile_reaches_unity() {
        // dipole profiles of mirrors with focal length w; w = f is the matched one
        let m = mirror(1.0, 20.0, 0.4);
        let best = optimize_waist(
            &m,
            |w| BeamProfile::custom(move |d| dipole_pupil_amplitude(d, w)),
            0.1,
            20.0,
        )
        .unwrap();
        assert!((best.eta - 1.0).abs() < 1e-9, "{best:?}");
        assert!((best.waist - 1.0).abs() < 1e-4);
    }

    #[test]
    fn mirror_validation() {
        assert!(ParabolicMirror::new(0.0, 1.0, 0.0).is_err());
        assert!(ParabolicMirror::new(1.0, 1.0, 1.0).is_err());
        assert!(ParabolicMirror::new(1.0, 1.0, -0.1).is_err());
        assert!(ParabolicMirror::new(1.0, 0.0, 0.0).is_err());
    }
}
