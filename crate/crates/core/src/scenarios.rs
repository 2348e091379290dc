//! The three worked examples as parametrized instances, their closed-form
//! skew-information values, and grid sweeps over them.
//!
//! * `example1`: a qubit pure state `cos(theta/2)|1> + e^{i phi} sin(theta/2)|0>`
//!   with observables `-sigma_x`, `sigma_y`, `sigma_z` (variance family).
//! * `example2`: the mixed qubit state with Bloch vector
//!   `(sqrt3/2 cos theta, sqrt3/2 sin theta, 0)` and the three Pauli matrices.
//! * `example3`: the spin-1 pure state
//!   `sin theta cos phi |1> + sin theta sin phi |0> + cos theta |-1>` with
//!   `L_x`, `L_y`, `L_z`, basis ordered `|1>, |0>, |-1>`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::bounds::{evaluate_all, BoundName, BoundReport, EvaluationOptions, ObservableSet};
use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, C64};
use crate::states::{from_bloch, pure_state, BlochVector, DensityMatrix};

const RANGE_SLACK: f64 = 1e-12;

fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<()> {
    if !(value >= min - RANGE_SLACK && value <= max + RANGE_SLACK) {
        return Err(Error::ParameterOutOfRange { name, value, min, max });
    }
    Ok(())
}

fn spin1(entries: [[C64; 3]; 3]) -> HermitianMatrix {
    HermitianMatrix::from_rows(&entries.map(|row| row.to_vec())).expect("spin-1 operators are Hermitian")
}

pub fn spin1_x() -> HermitianMatrix {
    let (o, h) = (C64::new(0.0, 0.0), C64::new(FRAC_1_SQRT_2, 0.0));
    spin1([[o, h, o], [h, o, h], [o, h, o]])
}

pub fn spin1_y() -> HermitianMatrix {
    let (o, p, m) = (
        C64::new(0.0, 0.0),
        C64::new(0.0, FRAC_1_SQRT_2),
        C64::new(0.0, -FRAC_1_SQRT_2),
    );
    spin1([[o, m, o], [p, o, m], [o, p, o]])
}

pub fn spin1_z() -> HermitianMatrix {
    HermitianMatrix::from_real_diagonal(&[1.0, 0.0, -1.0])
}

pub fn example1_instance(theta: f64, phi: f64) -> Result<(DensityMatrix, ObservableSet)> {
    check_range("theta", theta, 0.0, PI)?;
    check_range("phi", phi, 0.0, 2.0 * PI)?;
    let amplitudes = [
        C64::from_polar((theta / 2.0).sin(), phi),
        C64::new((theta / 2.0).cos(), 0.0),
    ];
    let rho = pure_state(&amplitudes)?;
    // -|0><1| - |1><0|, -i|0><1| + i|1><0|, |0><0| - |1><1|
    let obs = ObservableSet::new(vec![
        -&HermitianMatrix::pauli_x(),
        HermitianMatrix::pauli_y(),
        HermitianMatrix::pauli_z(),
    ])?;
    Ok((rho, obs))
}

pub fn example2_instance(theta: f64) -> Result<(DensityMatrix, ObservableSet)> {
    check_range("theta", theta, 0.0, 2.0 * PI)?;
    let r = 3f64.sqrt() / 2.0;
    let rho = from_bloch(BlochVector::new(r * theta.cos(), r * theta.sin(), 0.0))?;
    let obs = ObservableSet::new(vec![
        HermitianMatrix::pauli_x(),
        HermitianMatrix::pauli_y(),
        HermitianMatrix::pauli_z(),
    ])?;
    Ok((rho, obs))
}

/// Closed-form skew informations for `example2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Example2Terms {
    /// `I(sigma_x) + I(sigma_y) + I(sigma_z)`
    pub sum: f64,
    /// `I(sigma_x + sigma_y + sigma_z)`
    pub xyz: f64,
    pub x_plus_y: f64,
    pub x_plus_z: f64,
    pub y_plus_z: f64,
    pub x_minus_y: f64,
    pub x_minus_z: f64,
    pub y_minus_z: f64,
}

impl Example2Terms {
    pub fn entries(&self) -> [(&'static str, f64); 8] {
        [
            ("sum", self.sum),
            ("x+y+z", self.xyz),
            ("x+y", self.x_plus_y),
            ("x+z", self.x_plus_z),
            ("y+z", self.y_plus_z),
            ("x-y", self.x_minus_y),
            ("x-z", self.x_minus_z),
            ("y-z", self.y_minus_z),
        ]
    }
}

pub fn example2_oracle(theta: f64) -> Result<Example2Terms> {
    check_range("theta", theta, 0.0, 2.0 * PI)?;
    let (s, c) = theta.sin_cos();
    let c2 = (2.0 * theta).cos();
    Ok(Example2Terms {
        sum: 1.0,
        xyz: 1.0 - c * s,
        x_plus_y: 0.5 - c * s,
        x_plus_z: 0.25 * (3.0 - c2),
        y_plus_z: 0.25 * (3.0 + c2),
        x_minus_y: 0.5 * (1.0 + (2.0 * theta).sin()),
        x_minus_z: 0.25 * (3.0 - c2),
        y_minus_z: 0.25 * (3.0 + c2),
    })
}

pub fn example3_instance(theta: f64, phi: f64) -> Result<(DensityMatrix, ObservableSet)> {
    check_range("theta", theta, 0.0, PI)?;
    check_range("phi", phi, 0.0, 2.0 * PI)?;
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let rho = pure_state(&[C64::new(st * cp, 0.0), C64::new(st * sp, 0.0), C64::new(ct, 0.0)])?;
    let obs = ObservableSet::new(vec![spin1_x(), spin1_y(), spin1_z()])?;
    Ok((rho, obs))
}

/// Closed form of `I(L_x) + I(L_y) + I(L_z)` for `example3`.
pub fn example3_sum_oracle(theta: f64, phi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let first = ct * ct - st * st * cp * cp;
    let second = ct + st * cp;
    2.0 - first * first - 2.0 * st * st * sp * sp * second * second
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    Example1,
    Example2,
    Example3,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Example1 => "example1",
            Scenario::Example2 => "example2",
            Scenario::Example3 => "example3",
        }
    }

    pub fn has_phi(self) -> bool {
        self != Scenario::Example2
    }

    fn range(self, parameter: Parameter) -> (f64, f64) {
        match (self, parameter) {
            (Scenario::Example2, Parameter::Theta) => (0.0, 2.0 * PI),
            (_, Parameter::Theta) => (0.0, PI),
            (_, Parameter::Phi) => (0.0, 2.0 * PI),
        }
    }

    pub fn instance(self, theta: f64, phi: f64) -> Result<(DensityMatrix, ObservableSet)> {
        match self {
            Scenario::Example1 => example1_instance(theta, phi),
            Scenario::Example2 => example2_instance(theta),
            Scenario::Example3 => example3_instance(theta, phi),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "example1" => Ok(Scenario::Example1),
            "example2" => Ok(Scenario::Example2),
            "example3" => Ok(Scenario::Example3),
            other => Err(format!(
                "unknown scenario {other:?} (expected example1, example2 or example3)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parameter {
    Theta,
    Phi,
}

impl Parameter {
    pub fn as_str(self) -> &'static str {
        match self {
            Parameter::Theta => "theta",
            Parameter::Phi => "phi",
        }
    }
}

/// Evenly spaced points `start, start + step, ...` up to `stop` (radians).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidGrid("bounds and step must be finite".into()));
        }
        if step <= 0.0 {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if stop < start {
            return Err(Error::InvalidGrid(format!("stop {stop} is below start {start}")));
        }
        Ok(Self { start, stop, step })
    }

    /// `count` points from `start` to `stop` inclusive.
    pub fn linspace(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidGrid("linspace needs at least two points".into()));
        }
        Self::new(start, stop, (stop - start) / (count - 1) as f64)
    }

    pub fn points(&self) -> Vec<f64> {
        let last = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=last)
            .map(|k| (self.start + k as f64 * self.step).min(self.stop))
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Parses `start:stop:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(Error::InvalidGrid(format!("expected start:stop:step, got {s:?}")));
        };
        let parse = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("{x:?} is not a number")))
        };
        Self::new(parse(start)?, parse(stop)?, parse(step)?)
    }
}

/// One scenario, one swept parameter, the rest held fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub fixed: BTreeMap<Parameter, f64>,
    pub sweep: Parameter,
    pub grid: Grid,
}

impl SweepSpec {
    pub const DEFAULT_POINTS: usize = 201;

    /// Sweeps theta over the scenario's full range with the documented fixed
    /// phi: `pi/4` for example1, `pi/2` for example3.
    pub fn default_for(scenario: Scenario) -> Self {
        let (lo, hi) = scenario.range(Parameter::Theta);
        let mut fixed = BTreeMap::new();
        match scenario {
            Scenario::Example1 => {
                fixed.insert(Parameter::Phi, PI / 4.0);
            }
            Scenario::Example3 => {
                fixed.insert(Parameter::Phi, PI / 2.0);
            }
            Scenario::Example2 => {}
        }
        Self {
            scenario,
            fixed,
            sweep: Parameter::Theta,
            grid: Grid::linspace(lo, hi, Self::DEFAULT_POINTS).expect("valid default grid"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut params = vec![self.sweep];
        params.extend(self.fixed.keys().copied());
        for p in params {
            if p == Parameter::Phi && !self.scenario.has_phi() {
                return Err(Error::InvalidGrid(format!("{} has no phi parameter", self.scenario)));
            }
        }
        if self.fixed.contains_key(&self.sweep) {
            return Err(Error::InvalidGrid(format!(
                "{} is both swept and fixed",
                self.sweep.as_str()
            )));
        }
        let (lo, hi) = self.scenario.range(self.sweep);
        check_range(self.sweep.as_str(), self.grid.start, lo, hi)?;
        check_range(self.sweep.as_str(), self.grid.stop, lo, hi)?;
        Ok(())
    }

    fn value_of(&self, p: Parameter, swept: f64) -> f64 {
        if p == self.sweep {
            swept
        } else {
            self.fixed.get(&p).copied().unwrap_or(0.0)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub phi: Option<f64>,
    pub report: BoundReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub scenario: Scenario,
    /// Bounds reported per row, in catalog order.
    pub columns: Vec<BoundName>,
    pub rows: Vec<SweepRow>,
}

/// Evaluates every bound at each grid point, in grid order.
pub fn run_sweep(spec: &SweepSpec, options: &EvaluationOptions) -> Result<Sweep> {
    spec.validate()?;
    let mut rows = Vec::new();
    for x in spec.grid.points() {
        let theta = spec.value_of(Parameter::Theta, x);
        let phi = spec.value_of(Parameter::Phi, x);
        let (rho, obs) = spec.scenario.instance(theta, phi)?;
        let mut report = evaluate_all(&rho, &obs, options)?;
        report.metadata.scenario = Some(spec.scenario.to_string());
        rows.push(SweepRow {
            theta,
            phi: spec.scenario.has_phi().then_some(phi),
            report,
        });
    }
    // Every scenario has three observables, so the applicable set is fixed.
    let columns = BoundName::CATALOG.into_iter().filter(|b| b.applies_to(3)).collect();
    Ok(Sweep {
        scenario: spec.scenario,
        columns,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{expectation, skew_information, variance};
    use approx::assert_abs_diff_eq;

    #[test]
    fn example1_pole_is_eigenstate_of_a3() {
        let (rho, obs) = example1_instance(0.0, 0.0).unwrap();
        assert_eq!(
            rho.as_matrix(),
            HermitianMatrix::from_real_diagonal(&[0.0, 1.0]).as_matrix()
        );
        assert_eq!(variance(&rho, &obs.observables()[2]).unwrap(), 0.0);
    }

    #[test]
    fn example1_variance_sum_is_two() {
        let (rho, obs) = example1_instance(PI / 2.0, PI / 4.0).unwrap();
        let means: f64 = obs.iter().map(|a| expectation(&rho, a).unwrap().powi(2)).sum();
        assert_abs_diff_eq!(means, 1.0, epsilon = 1e-14);
        let total: f64 = obs.iter().map(|a| variance(&rho, a).unwrap()).sum();
        assert_abs_diff_eq!(total, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn example1_observables_match_outer_products() {
        let (_, obs) = example1_instance(0.1, 0.2).unwrap();
        let a = obs.observables();
        assert_eq!(a[0][(0, 1)], C64::new(-1.0, 0.0));
        assert_eq!(a[0][(1, 0)], C64::new(-1.0, 0.0));
        assert_eq!(a[1][(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(a[1][(1, 0)], C64::new(0.0, 1.0));
        assert_eq!(a[2][(0, 0)], C64::new(1.0, 0.0));
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(matches!(
            example1_instance(4.0, 0.0),
            Err(Error::ParameterOutOfRange { name: "theta", .. })
        ));
        assert!(matches!(
            example3_instance(1.0, -0.5),
            Err(Error::ParameterOutOfRange { name: "phi", .. })
        ));
        assert!(example2_instance(2.0 * PI).is_ok());
        assert!(example2_oracle(7.0).is_err());
    }

    #[test]
    fn example2_closed_forms_at_named_points() {
        let (rho, obs) = example2_instance(0.0).unwrap();
        let total: f64 = obs.iter().map(|a| skew_information(&rho, a).unwrap()).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);

        let (rho, obs) = example2_instance(PI / 4.0).unwrap();
        let a = obs.observables();
        assert_abs_diff_eq!(skew_information(&rho, &(&a[0] + &a[1])).unwrap(), 0.0, epsilon = 1e-12);

        let (rho, obs) = example2_instance(PI / 2.0).unwrap();
        let a = obs.observables();
        assert_abs_diff_eq!(skew_information(&rho, &(&a[0] - &a[2])).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn example2_oracle_values() {
        let t = example2_oracle(0.0).unwrap();
        assert_eq!((t.sum, t.x_plus_y, t.y_plus_z, t.x_minus_y), (1.0, 0.5, 1.0, 0.5));
        let t = example2_oracle(PI / 4.0).unwrap();
        assert_abs_diff_eq!(t.x_minus_y, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn example3_pole_and_named_point() {
        let (rho, obs) = example3_instance(0.0, 1.3).unwrap();
        let lz = &obs.observables()[2];
        assert_abs_diff_eq!(expectation(&rho, lz).unwrap(), -1.0, epsilon = 1e-15);
        assert_eq!(variance(&rho, lz).unwrap(), 0.0);
        assert_abs_diff_eq!(example3_sum_oracle(PI / 2.0, PI / 2.0), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn spin1_commutation() {
        // [L_x, L_y] = i L_z
        let k = crate::linalg::commutator(&spin1_x(), &spin1_y()).unwrap();
        let expected = spin1_z().scale(C64::new(0.0, 1.0));
        assert!((&k - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn grid_parsing_and_points() {
        let g: Grid = "0:1:0.25".parse().unwrap();
        assert_eq!(g.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = Grid::linspace(0.0, 2.0 * PI, 201).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 201);
        assert_eq!(*pts.last().unwrap(), 2.0 * PI);
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("1:0:0.1".parse::<Grid>().is_err());
        assert!("a:1:0.1".parse::<Grid>().is_err());
    }

    #[test]
    fn sweep_spec_validation() {
        let mut spec = SweepSpec::default_for(Scenario::Example2);
        spec.fixed.insert(Parameter::Phi, 0.3);
        assert!(spec.validate().is_err());

        let mut spec = SweepSpec::default_for(Scenario::Example1);
        spec.grid = Grid::new(0.0, 4.0, 0.5).unwrap();
        assert!(matches!(spec.validate(), Err(Error::ParameterOutOfRange { .. })));
        assert!("example4".parse::<Scenario>().is_err());
    }

    #[test]
    fn sweep_rows_follow_grid() {
        let mut spec = SweepSpec::default_for(Scenario::Example2);
        spec.grid = Grid::linspace(0.0, PI, 5).unwrap();
        let sweep = run_sweep(&spec, &EvaluationOptions::default()).unwrap();
        assert_eq!(sweep.rows.len(), 5);
        assert!(sweep
            .rows
            .iter()
            .all(|r| r.phi.is_none() && r.report.violations.is_empty()));
        assert!(sweep.columns.contains(&BoundName::ChenSkew));
        assert!(!sweep.columns.contains(&BoundName::Robertson));
    }
}
