//! Phase shift imprinted by a single two-level atom on a focused coherent beam.
//!
//! The crate is organized bottom-up:
//!
//! * [`atom_response`]: steady state of the driven atom, saturation, scattered power.
//! * [`phase_model`]: phase of transmitted plus coherently scattered light,
//!   resonance branches and the Kerr-type weak-saturation expansion.
//! * [`geometry`]: dipole-weighted solid angles and mode overlaps for lens cones
//!   and deep parabolic mirrors.
//! * [`sweep`]: parameter scans and figure presets.
//!
//! Detuning is always `Δ/Γ`, and drive strength is the on-resonance saturation
//! parameter `s0`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod atom_response;
pub mod error;
pub mod geometry;
pub mod optimize;
pub mod phase_model;
pub mod quadrature;
pub mod sweep;

pub use atom_response::{
    coherent_fraction, excited_state_population, physical_to_normalized, saturation_at_detuning,
    scattered_phase, scattered_power_ratio, steady_state_coherence, AtomTransition, Drive,
    PhysicalDrive,
};
pub use error::{Error, Result};
pub use geometry::{
    cone_weighted_solid_angle, mirror_weighted_solid_angle, optimize_doughnut_waist, optimize_waist,
    overlap_eta, parabola_ray_map, pupil_dipole_profile, recollimation_parameters, BeamProfile,
    ConeAperture, DipoleOrientation, ParabolicMirror, Recollimation, Region,
};
pub use phase_model::{
    critical_saturation, dispersive_phase_arctan, kerr_linear_phase, kerr_phase,
    kerr_relative_error, phase_asymmetric, phase_symmetric, repeater_margin, resonance_branch,
    AsymmetricCoupling, Branch, PhaseResult, SymmetricCoupling,
};
pub use sweep::{
    figure_preset, run_sweep, Coupling, Figure, FigurePreset, Model, ResultRow, SweepSpec,
};
