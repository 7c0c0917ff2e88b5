//! Parameter sweeps and the figure presets built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::atom_response::{coherent_fraction, saturation_at_detuning, scattered_power_ratio};
use crate::error::{Error, Result};
use crate::phase_model::{
    critical_saturation, kerr_linear_phase, kerr_phase, phase_asymmetric, phase_symmetric,
    resonance_branch, AsymmetricCoupling, Branch, PhaseResult, SymmetricCoupling,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Symmetric,
    Asymmetric,
    Kerr,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::Symmetric => "symmetric",
            Model::Asymmetric => "asymmetric",
            Model::Kerr => "kerr",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(Model::Symmetric),
            "asymmetric" => Ok(Model::Asymmetric),
            "kerr" => Ok(Model::Kerr),
            other => Err(Error::Domain(format!("unknown model '{other}'"))),
        }
    }
}

/// Coupling parameters as they appear in configuration files; the primed
/// values and `p` are only read by the asymmetric model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coupling {
    pub omega_n: f64,
    pub eta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_n_prime: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_prime: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

impl Coupling {
    pub fn symmetric(omega_n: f64, eta: f64) -> Self {
        Self {
            omega_n,
            eta,
            omega_n_prime: None,
            eta_prime: None,
            p: None,
        }
    }

    pub fn asymmetric(omega_n: f64, eta: f64, omega_n_prime: f64, eta_prime: f64, p: f64) -> Self {
        Self {
            omega_n,
            eta,
            omega_n_prime: Some(omega_n_prime),
            eta_prime: Some(eta_prime),
            p: Some(p),
        }
    }

    fn to_symmetric(self) -> Result<SymmetricCoupling> {
        SymmetricCoupling::new(self.omega_n, self.eta)
    }

    fn to_asymmetric(self) -> Result<AsymmetricCoupling> {
        let missing = |name: &str| Error::Domain(format!("asymmetric model needs '{name}'"));
        AsymmetricCoupling::new(
            self.omega_n,
            self.eta,
            self.omega_n_prime.ok_or_else(|| missing("omega_n_prime"))?,
            self.eta_prime.ok_or_else(|| missing("eta_prime"))?,
            self.p.ok_or_else(|| missing("p"))?,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVar {
    Delta,
    S0,
    S,
    OmegaN,
    Eta,
}

impl SweepVar {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepVar::Delta => "delta",
            SweepVar::S0 => "s0",
            SweepVar::S => "s",
            SweepVar::OmegaN => "omega_n",
            SweepVar::Eta => "eta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// Inclusive grid over the swept variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRange {
    pub var: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl SweepRange {
    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Domain(format!("sweep count {} must be >= 2", self.count)));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start == self.stop {
            return Err(Error::Domain(format!(
                "sweep endpoints must be finite and distinct, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(Error::Domain("log spacing requires positive endpoints".into()));
        }
        Ok(())
    }

    /// Grid points in ascending order, both endpoints included exactly.
    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let (lo, hi) = if self.start < self.stop {
            (self.start, self.stop)
        } else {
            (self.stop, self.start)
        };
        let last = self.count - 1;
        let n = last as f64;
        Ok((0..self.count)
            .map(|i| {
                if i == 0 {
                    lo
                } else if i == last {
                    hi
                } else {
                    let t = i as f64 / n;
                    match self.spacing {
                        Spacing::Linear => lo + (hi - lo) * t,
                        Spacing::Log => lo * (hi / lo).powf(t),
                    }
                }
            })
            .collect())
    }
}

/// Values held fixed during a sweep. At most one of `s0` and `s` may be given;
/// `s` is converted with `s0 = s(1 + 4δ²)` at each point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixed {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

/// A one-dimensional scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub model: Model,
    pub coupling: Coupling,
    pub sweep: SweepRange,
    #[serde(default)]
    pub fixed: Fixed,
}

/// One evaluated point. `phi_rad`/`phi_deg` are absent on degenerate points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub swept: f64,
    pub delta: f64,
    pub s0: f64,
    pub s: f64,
    pub phi_rad: Option<f64>,
    pub phi_deg: Option<f64>,
    pub branch: Branch,
    pub p_sc_over_p: f64,
    pub coherent_fraction: f64,
    pub model: Model,
}

impl ResultRow {
    pub const COLUMNS: [&'static str; 10] = [
        "swept",
        "delta",
        "s0",
        "s",
        "phi_rad",
        "phi_deg",
        "branch",
        "p_sc_over_p",
        "coherent_fraction",
        "model",
    ];
}

/// Evaluates one point of a model. Degenerate phases come back as a
/// [`Branch::Boundary`] row; invalid parameters are errors.
pub fn evaluate_point(model: Model, coupling: &Coupling, delta: f64, s0: f64, swept: f64) -> Result<ResultRow> {
    let phase: Result<(f64, Branch)> = match model {
        Model::Symmetric => phase_symmetric(&coupling.to_symmetric()?, delta, s0).map(into_pair),
        Model::Asymmetric => phase_asymmetric(&coupling.to_asymmetric()?, delta, s0).map(into_pair),
        Model::Kerr => {
            let c = coupling.to_symmetric()?;
            if !delta.is_finite() || !(s0 >= 0.0) {
                return Err(Error::Domain(format!("invalid drive delta = {delta}, s0 = {s0}")));
            }
            let s = saturation_at_detuning(s0, delta);
            kerr_linear_phase(&c, delta).map(|phi0| {
                let branch = if delta == 0.0 { Branch::Zero } else { Branch::Generic };
                (kerr_phase(phi0, s), branch)
            })
        }
    };
    let (phi, branch) = match phase {
        Ok((phi, branch)) => (Some(phi), branch),
        Err(Error::Boundary | Error::Pole(_)) => (None, Branch::Boundary),
        Err(e) => return Err(e),
    };
    let s = saturation_at_detuning(s0, delta);
    Ok(ResultRow {
        swept,
        delta,
        s0,
        s,
        phi_rad: phi,
        phi_deg: phi.map(f64::to_degrees),
        branch,
        p_sc_over_p: scattered_power_ratio(coupling.omega_n, coupling.eta, delta, s0),
        coherent_fraction: coherent_fraction(s),
        model,
    })
}

fn into_pair(r: PhaseResult) -> (f64, Branch) {
    (r.phi, r.branch)
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        self.sweep.validate()?;
        let f = &self.fixed;
        if f.s0.is_some() && f.s.is_some() {
            return Err(Error::Domain("fix at most one of 's0' and 's'".into()));
        }
        match self.sweep.var {
            SweepVar::Delta => {
                if f.delta.is_some() {
                    return Err(Error::Domain("'delta' is swept and cannot also be fixed".into()));
                }
            }
            SweepVar::S0 | SweepVar::S => {
                if f.s0.is_some() || f.s.is_some() {
                    return Err(Error::Domain("saturation is swept and cannot also be fixed".into()));
                }
                if f.delta.is_none() {
                    return Err(Error::Domain("saturation sweeps need a fixed 'delta'".into()));
                }
            }
            SweepVar::OmegaN | SweepVar::Eta => {
                if f.delta.is_none() {
                    return Err(Error::Domain("this sweep needs a fixed 'delta'".into()));
                }
            }
        }
        match self.model {
            Model::Asymmetric => self.coupling.to_asymmetric().map(|_| ()),
            _ => self.coupling.to_symmetric().map(|_| ()),
        }
    }

    fn point(&self, x: f64) -> Result<ResultRow> {
        let mut coupling = self.coupling;
        let mut delta = self.fixed.delta.unwrap_or(0.0);
        let mut s0 = None;
        let mut s = None;
        match self.sweep.var {
            SweepVar::Delta => delta = x,
            SweepVar::S0 => s0 = Some(x),
            SweepVar::S => s = Some(x),
            SweepVar::OmegaN => coupling.omega_n = x,
            SweepVar::Eta => coupling.eta = x,
        }
        let s0 = match (s0.or(self.fixed.s0), s.or(self.fixed.s)) {
            (Some(s0), _) => s0,
            (None, Some(s)) => s * (1.0 + 4.0 * delta * delta),
            (None, None) => 0.0,
        };
        evaluate_point(self.model, &coupling, delta, s0, x)
    }
}

/// Evaluates every grid point of `spec`, in ascending order of the swept value.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let points = spec.sweep.points()?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.par_iter().map(|&x| spec.point(x)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().map(|&x| spec.point(x)).collect()
    }
}

/// One cell of the resonance phase diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchRow {
    pub omega_n_eta_sq: f64,
    pub s0: f64,
    pub branch: Branch,
    pub critical_s0: Option<f64>,
}

impl BranchRow {
    pub const COLUMNS: [&'static str; 4] = ["omega_n_eta_sq", "s0", "branch", "critical_s0"];
}

/// On-resonance branch over a grid of `Ω̃η²` (realized with `η = 1`) and `s0`.
pub fn branch_grid(strength: &SweepRange, s0: &SweepRange) -> Result<Vec<BranchRow>> {
    let xs = strength.points()?;
    let ss = s0.points()?;
    let mut rows = Vec::with_capacity(xs.len() * ss.len());
    for &x in &xs {
        let c = SymmetricCoupling::new(x, 1.0)?;
        let critical = critical_saturation(&c);
        for &s in &ss {
            if !(s >= 0.0) {
                return Err(Error::Domain(format!("s0 = {s} must be >= 0")));
            }
            rows.push(BranchRow {
                omega_n_eta_sq: x,
                s0: s,
                branch: resonance_branch(&c, s),
                critical_s0: critical,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 4] = [FigurePreset::Fig2, FigurePreset::Fig3, FigurePreset::Fig4, FigurePreset::Fig5];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
        }
    }
}

impl FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigurePreset::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown figure preset '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesSpec {
    Sweep(SweepSpec),
    BranchGrid { strength: SweepRange, s0: SweepRange },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSeries {
    pub name: String,
    pub spec: SeriesSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesData {
    Sweep(Vec<ResultRow>),
    BranchGrid(Vec<BranchRow>),
}

impl FigureSeries {
    pub fn evaluate(&self) -> Result<SeriesData> {
        match &self.spec {
            SeriesSpec::Sweep(spec) => run_sweep(spec).map(SeriesData::Sweep),
            SeriesSpec::BranchGrid { strength, s0 } => branch_grid(strength, s0).map(SeriesData::BranchGrid),
        }
    }
}

/// A bundle of series reproducing one figure, plus free-form metadata
/// describing choices the figure itself leaves open.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub preset: FigurePreset,
    pub metadata: Vec<(String, String)>,
    pub series: Vec<FigureSeries>,
}

fn linear(var: SweepVar, start: f64, stop: f64, count: usize) -> SweepRange {
    SweepRange {
        var,
        start,
        stop,
        count,
        spacing: Spacing::Linear,
    }
}

fn delta_series(name: &str, model: Model, coupling: Coupling, s0: f64, range: SweepRange) -> FigureSeries {
    FigureSeries {
        name: name.to_string(),
        spec: SeriesSpec::Sweep(SweepSpec {
            model,
            coupling,
            sweep: range,
            fixed: Fixed {
                s0: Some(s0),
                ..Fixed::default()
            },
        }),
    }
}

/// Parameter sets of the example figures.
pub fn figure_preset(preset: FigurePreset) -> Figure {
    let meta = |k: &str, v: &str| (k.to_string(), v.to_string());
    match preset {
        FigurePreset::Fig2 => {
            let range = linear(SweepVar::Delta, -5.0, 0.0, 501);
            let parabola = Coupling::asymmetric(0.94, 0.98, 0.88, 0.99, 0.97);
            Figure {
                preset,
                metadata: vec![meta("abscissa", "delta in [-5, 0], 501 points")],
                series: vec![
                    delta_series("solid", Model::Symmetric, Coupling::symmetric(1.0, 1.0), 0.0, range),
                    delta_series("dashed", Model::Symmetric, Coupling::symmetric(0.38, 1.0), 0.0, range),
                    delta_series("dotted", Model::Asymmetric, parabola, 0.1, range),
                    delta_series("dashdot", Model::Asymmetric, parabola, 10.0, range),
                ],
            }
        }
        FigurePreset::Fig3 => Figure {
            preset,
            metadata: vec![
                meta("grid", "omega_n*eta^2 in [0, 1] (101) x s0 in [0, 2] (101), eta = 1, delta = 0"),
            ],
            series: vec![FigureSeries {
                name: "grid".into(),
                spec: SeriesSpec::BranchGrid {
                    strength: linear(SweepVar::OmegaN, 0.0, 1.0, 101),
                    s0: linear(SweepVar::S0, 0.0, 2.0, 101),
                },
            }],
        },
        FigurePreset::Fig4 => {
            let range = linear(SweepVar::Delta, -0.02, 0.0, 401);
            let thr = 4f64.cbrt() - 1.0;
            let full = Coupling::symmetric(1.0, 1.0);
            Figure {
                preset,
                metadata: vec![meta("abscissa", "delta in [-0.02, 0], 401 points")],
                series: vec![
                    delta_series("solid", Model::Symmetric, Coupling::symmetric(0.5 + 1e-4, 1.0), 0.0, range),
                    delta_series("dashed", Model::Symmetric, Coupling::symmetric(0.5 - 1e-4, 1.0), 0.0, range),
                    delta_series("dotted", Model::Symmetric, full, thr - 1e-5, range),
                    delta_series("dashdot", Model::Symmetric, full, thr + 1e-5, range),
                ],
            }
        }
        FigurePreset::Fig5 => {
            let coupling = Coupling::symmetric(0.94, 0.98);
            let mut series = Vec::new();
            for (side, delta) in [("left", -10.0), ("right", -50.0)] {
                for (tag, model) in [("full", Model::Symmetric), ("kerr", Model::Kerr)] {
                    series.push(FigureSeries {
                        name: format!("{side}-{tag}"),
                        spec: SeriesSpec::Sweep(SweepSpec {
                            model,
                            coupling,
                            sweep: linear(SweepVar::S, 0.0, 0.5, 201),
                            fixed: Fixed {
                                delta: Some(delta),
                                ..Fixed::default()
                            },
                        }),
                    });
                }
            }
            Figure {
                preset,
                metadata: vec![
                    meta("abscissa", "detuned saturation parameter s in [0, 0.5], 201 points"),
                    meta("s0", "s0 = s * (1 + 4 delta^2)"),
                ],
                series,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn delta_spec(model: Model, coupling: Coupling, s0: f64, start: f64, stop: f64, count: usize) -> SweepSpec {
        SweepSpec {
            model,
            coupling,
            sweep: linear(SweepVar::Delta, start, stop, count),
            fixed: Fixed {
                s0: Some(s0),
                ..Fixed::default()
            },
        }
    }

    #[test]
    fn grid_points() {
        let r = linear(SweepVar::Delta, -5.0, 0.0, 501);
        let p = r.points().unwrap();
        assert_eq!(p.len(), 501);
        assert_eq!(p[0], -5.0);
        assert_eq!(p[500], 0.0);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        let r = SweepRange {
            var: SweepVar::S0,
            start: 100.0,
            stop: 0.01,
            count: 5,
            spacing: Spacing::Log,
        };
        let p = r.points().unwrap();
        assert_eq!(p[0], 0.01);
        assert_eq!(p[4], 100.0);
        assert!((p[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_validation() {
        assert!(linear(SweepVar::Delta, 0.0, 1.0, 1).points().is_err());
        assert!(linear(SweepVar::Delta, 1.0, 1.0, 5).points().is_err());
        let log = SweepRange {
            var: SweepVar::S0,
            start: 0.0,
            stop: 1.0,
            count: 5,
            spacing: Spacing::Log,
        };
        assert!(log.points().is_err());
    }

    #[test]
    fn three_point_sweep_matches_direct_calls() {
        let spec = delta_spec(Model::Symmetric, Coupling::symmetric(0.8, 0.9), 0.3, -2.0, 2.0, 3);
        let rows = run_sweep(&spec).unwrap();
        let c = SymmetricCoupling::new(0.8, 0.9).unwrap();
        for (row, delta) in rows.iter().zip([-2.0, 0.0, 2.0]) {
            let direct = phase_symmetric(&c, delta, 0.3).unwrap();
            assert_eq!(row.phi_rad.unwrap().to_bits(), direct.phi.to_bits());
            assert_eq!(row.branch, direct.branch);
        }
    }

    #[test]
    fn boundary_points_become_flagged_rows() {
        let spec = delta_spec(Model::Symmetric, Coupling::symmetric(0.5, 1.0), 0.0, -1.0, 1.0, 3);
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows[1].branch, Branch::Boundary);
        assert_eq!(rows[1].phi_rad, None);
        assert!(rows[0].phi_rad.is_some());
        // Kerr pole at 1 + 4δ² = 2Ω̃η²
        let spec = delta_spec(Model::Kerr, Coupling::symmetric(1.0, 1.0), 0.0, -0.5, 0.5, 3);
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows[0].branch, Branch::Boundary);
        assert_eq!(rows[1].phi_rad, Some(0.0));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = delta_spec(Model::Asymmetric, Coupling::symmetric(0.5, 1.0), 0.0, -1.0, 1.0, 3);
        assert!(run_sweep(&spec).is_err());
        spec.model = Model::Symmetric;
        spec.fixed.s = Some(0.1);
        assert!(run_sweep(&spec).is_err());
        spec.fixed.s = None;
        spec.fixed.delta = Some(1.0);
        assert!(run_sweep(&spec).is_err());
        let s_sweep = SweepSpec {
            model: Model::Kerr,
            coupling: Coupling::symmetric(0.94, 0.98),
            sweep: linear(SweepVar::S, 0.0, 0.5, 11),
            fixed: Fixed::default(),
        };
        assert!(run_sweep(&s_sweep).is_err());
        let bad_coupling = delta_spec(Model::Symmetric, Coupling::symmetric(1.5, 1.0), 0.0, -1.0, 1.0, 3);
        assert!(run_sweep(&bad_coupling).is_err());
    }

    #[test]
    fn fig2_solid_reaches_half_turn_on_resonance() {
        let fig = figure_preset(FigurePreset::Fig2);
        let SeriesData::Sweep(rows) = fig.series[0].evaluate().unwrap() else {
            panic!("sweep expected")
        };
        let last = rows.last().unwrap();
        assert_eq!(last.delta, 0.0);
        assert_eq!(last.phi_deg, Some(180.0));
        assert_eq!(last.phi_rad, Some(PI));
    }

    #[test]
    fn fig2_caption_parameters() {
        let fig = figure_preset(FigurePreset::Fig2);
        let names: Vec<_> = fig.series.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["solid", "dashed", "dotted", "dashdot"]);
        let s0 = |i: usize| match &fig.series[i].spec {
            SeriesSpec::Sweep(s) => (s.model, s.fixed.s0.unwrap()),
            _ => unreachable!(),
        };
        assert_eq!(s0(2), (Model::Asymmetric, 0.1));
        assert_eq!(s0(3), (Model::Asymmetric, 10.0));
    }

    #[test]
    fn fig4_threshold_series() {
        let fig = figure_preset(FigurePreset::Fig4);
        let thr = 4f64.cbrt() - 1.0;
        let s0s: Vec<f64> = fig
            .series
            .iter()
            .map(|s| match &s.spec {
                SeriesSpec::Sweep(s) => s.fixed.s0.unwrap(),
                _ => unreachable!(),
            })
            .collect();
        assert!(s0s.contains(&(thr - 1e-5)));
        assert!(s0s.contains(&(thr + 1e-5)));
    }

    #[test]
    fn fig3_grid_classification() {
        let fig = figure_preset(FigurePreset::Fig3);
        let SeriesData::BranchGrid(rows) = fig.series[0].evaluate().unwrap() else {
            panic!("grid expected")
        };
        assert_eq!(rows.len(), 101 * 101);
        let cell = rows.iter().find(|r| r.omega_n_eta_sq == 0.4 && r.s0 == 0.0).unwrap();
        assert_eq!(cell.branch, Branch::Zero);
        assert_eq!(cell.critical_s0, None);
        let cell = rows.iter().find(|r| r.omega_n_eta_sq == 1.0 && r.s0 == 0.0).unwrap();
        assert_eq!(cell.branch, Branch::Pi);
        let half = rows.iter().find(|r| r.omega_n_eta_sq == 0.5 && r.s0 == 0.0).unwrap();
        assert_eq!(half.branch, Branch::Boundary);
    }

    #[test]
    fn fig5_kerr_rows_follow_kerr_formula() {
        let fig = figure_preset(FigurePreset::Fig5);
        assert_eq!(fig.series.len(), 4);
        let c = SymmetricCoupling::new(0.94, 0.98).unwrap();
        for series in &fig.series {
            let SeriesData::Sweep(rows) = series.evaluate().unwrap() else {
                panic!()
            };
            assert_eq!(rows.len(), 201);
            if series.name.ends_with("kerr") {
                for row in &rows {
                    let expected = kerr_phase(kerr_linear_phase(&c, row.delta).unwrap(), row.s);
                    assert!((row.phi_rad.unwrap() - expected).abs() < 1e-12);
                    assert!((row.s - row.swept).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = delta_spec(Model::Asymmetric, Coupling::asymmetric(0.94, 0.98, 0.88, 0.99, 0.97), 0.1, -5.0, 0.0, 11);
        let json = serde_json::to_string(&spec).unwrap();
        let back: SweepSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
        let text = r#"{"model":"kerr","coupling":{"omega_n":0.94,"eta":0.98},
            "sweep":{"var":"s","start":0,"stop":0.5,"count":5},"fixed":{"delta":-10}}"#;
        let spec: SweepSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.sweep.spacing, Spacing::Linear);
        assert_eq!(run_sweep(&spec).unwrap().len(), 5);
    }

    #[test]
    fn parallel_and_serial_agree() {
        let spec = delta_spec(Model::Symmetric, Coupling::symmetric(0.94, 0.98), 0.1, -10.0, 10.0, 2001);
        let rows = run_sweep(&spec).unwrap();
        let serial: Vec<_> = spec.sweep.points().unwrap().iter().map(|&x| spec.point(x).unwrap()).collect();
        assert_eq!(rows, serial);
    }
}
