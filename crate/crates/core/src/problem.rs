//! JSON problem files.
//!
//! ```json
//! {
//!   "state": { "kind": "pure", "amplitudes": [[1, 0], [0, 0]] },
//!   "observables": [
//!     [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
//!     [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]
//!   ],
//!   "options": { "budget": 1000000, "tolerance": 1e-8 }
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major nested
//! arrays. `state` is one of `{"kind": "density", "matrix": ...}`,
//! `{"kind": "pure", "amplitudes": ...}` or `{"kind": "bloch", "r": [x, y, z]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{evaluate_all, BoundReport, EvaluationOptions, ObservableSet, DEFAULT_BUDGET, DEFAULT_TOLERANCE};
use crate::error::Error;
use crate::linalg::{ComplexMatrix, HermitianMatrix, C64};
use crate::states::{from_bloch, pure_state, BlochVector, DensityMatrix};

/// A complex number encoded as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonComplex(pub f64, pub f64);

impl From<JsonComplex> for C64 {
    fn from(z: JsonComplex) -> Self {
        C64::new(z.0, z.1)
    }
}

impl From<C64> for JsonComplex {
    fn from(z: C64) -> Self {
        JsonComplex(z.re, z.im)
    }
}

pub type JsonMatrix = Vec<Vec<JsonComplex>>;

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    m.rows()
        .into_iter()
        .map(|row| row.into_iter().map(JsonComplex::from).collect())
        .collect()
}

fn matrix_from_json(m: &JsonMatrix) -> Vec<Vec<C64>> {
    m.iter().map(|row| row.iter().map(|&z| z.into()).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    Density { matrix: JsonMatrix },
    Pure { amplitudes: Vec<JsonComplex> },
    Bloch { r: [f64; 3] },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProblemOptions {
    pub budget: u64,
    pub tolerance: f64,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl From<ProblemOptions> for EvaluationOptions {
    fn from(o: ProblemOptions) -> Self {
        EvaluationOptions {
            budget: o.budget,
            tolerance: o.tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInput {
    pub state: StateSpec,
    pub observables: Vec<JsonMatrix>,
    #[serde(default)]
    pub options: ProblemOptions,
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("malformed problem JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{field}: {source}")]
    Field {
        field: String,
        #[source]
        source: Error,
    },
}

fn at(field: impl Into<String>) -> impl FnOnce(Error) -> ProblemError {
    let field = field.into();
    move |source| ProblemError::Field { field, source }
}

impl ProblemInput {
    pub fn from_json(text: &str) -> Result<Self, ProblemError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Encodes an explicit state and observable set.
    pub fn from_parts(rho: &DensityMatrix, obs: &ObservableSet, options: ProblemOptions) -> Self {
        Self {
            state: StateSpec::Density {
                matrix: matrix_to_json(rho.as_matrix()),
            },
            observables: obs.iter().map(|a| matrix_to_json(a.as_matrix())).collect(),
            options,
        }
    }

    pub fn state(&self) -> Result<DensityMatrix, ProblemError> {
        match &self.state {
            StateSpec::Density { matrix } => {
                let m = HermitianMatrix::from_rows(&matrix_from_json(matrix)).map_err(at("state.matrix"))?;
                DensityMatrix::new(m).map_err(at("state.matrix"))
            }
            StateSpec::Pure { amplitudes } => {
                let psi: Vec<C64> = amplitudes.iter().map(|&z| z.into()).collect();
                pure_state(&psi).map_err(at("state.amplitudes"))
            }
            StateSpec::Bloch { r } => from_bloch(BlochVector::new(r[0], r[1], r[2])).map_err(at("state.r")),
        }
    }

    /// Parses every observable and checks it against the state dimension.
    pub fn build(&self) -> Result<(DensityMatrix, ObservableSet), ProblemError> {
        let rho = self.state()?;
        let mut observables = Vec::with_capacity(self.observables.len());
        for (i, m) in self.observables.iter().enumerate() {
            let field = format!("observables[{i}]");
            let a = HermitianMatrix::from_rows(&matrix_from_json(m)).map_err(at(field.clone()))?;
            if a.dim() != rho.dim() {
                return Err(at(field)(Error::DimensionMismatch {
                    expected: rho.dim(),
                    found: a.dim(),
                }));
            }
            observables.push(a);
        }
        let obs = ObservableSet::new(observables).map_err(at("observables"))?;
        Ok((rho, obs))
    }

    pub fn evaluate(&self) -> Result<BoundReport, ProblemError> {
        let (rho, obs) = self.build()?;
        evaluate_all(&rho, &obs, &self.options.into()).map_err(|e| match e {
            Error::BudgetExceeded { .. } => at("options.budget")(e),
            other => at("observables")(other),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAULIS: &str = r#"[
        [[[0,0],[1,0]],[[1,0],[0,0]]],
        [[[0,0],[0,-1]],[[0,1],[0,0]]],
        [[[1,0],[0,0]],[[0,0],[-1,0]]]
    ]"#;

    fn problem(state: &str, observables: &str) -> String {
        format!(r#"{{"state": {state}, "observables": {observables}}}"#)
    }

    fn field_of(err: ProblemError) -> String {
        match err {
            ProblemError::Field { field, .. } => field,
            other => panic!("expected field error, got {other}"),
        }
    }

    #[test]
    fn pure_state_problem_evaluates() {
        let p = ProblemInput::from_json(&problem(r#"{"kind":"pure","amplitudes":[[1,0],[0,0]]}"#, PAULIS)).unwrap();
        assert_eq!(p.options, ProblemOptions::default());
        let report = p.evaluate().unwrap();
        assert!((report.variance_sum - 2.0).abs() < 1e-12);
        assert!((report.skew_sum - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bloch_and_density_states() {
        let p = ProblemInput::from_json(&problem(r#"{"kind":"bloch","r":[0,0,0]}"#, PAULIS)).unwrap();
        assert_eq!(p.evaluate().unwrap().skew_sum, 0.0);
        let p = ProblemInput::from_json(&problem(
            r#"{"kind":"density","matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#,
            PAULIS,
        ))
        .unwrap();
        assert_eq!(p.state().unwrap().purity(), 0.5);
    }

    #[test]
    fn errors_name_the_field() {
        let bad_obs = r#"[[[[0,0],[1,0]],[[1,0],[0,0]]], [[[0,0],[2,0]],[[0,0],[0,0]]]]"#;
        let p = ProblemInput::from_json(&problem(r#"{"kind":"bloch","r":[0,0,1]}"#, bad_obs)).unwrap();
        assert_eq!(field_of(p.build().unwrap_err()), "observables[1]");

        let p = ProblemInput::from_json(&problem(r#"{"kind":"bloch","r":[1,1,1]}"#, PAULIS)).unwrap();
        assert_eq!(field_of(p.build().unwrap_err()), "state.r");

        let p =
            ProblemInput::from_json(&problem(r#"{"kind":"pure","amplitudes":[[1,0],[0,0],[0,0]]}"#, PAULIS)).unwrap();
        let err = p.build().unwrap_err();
        assert!(err.to_string().contains("observables[0]"), "{err}");

        let p = ProblemInput::from_json(&problem(r#"{"kind":"bloch","r":[0,0,1]}"#, "[]")).unwrap();
        assert_eq!(field_of(p.build().unwrap_err()), "observables");
    }

    #[test]
    fn budget_error_names_options() {
        let text = format!(
            r#"{{"state": {{"kind":"bloch","r":[0,0,1]}}, "observables": {PAULIS}, "options": {{"budget": 2}}}}"#
        );
        let p = ProblemInput::from_json(&text).unwrap();
        assert_eq!(p.options.tolerance, DEFAULT_TOLERANCE);
        assert_eq!(field_of(p.evaluate().unwrap_err()), "options.budget");
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(ProblemInput::from_json("{"), Err(ProblemError::Json(_))));
        assert!(matches!(
            ProblemInput::from_json(&problem(r#"{"kind":"mixed"}"#, PAULIS)),
            Err(ProblemError::Json(_))
        ));
    }

    #[test]
    fn from_parts_round_trips() {
        let p = ProblemInput::from_json(&problem(r#"{"kind":"bloch","r":[0.1,0.2,0.3]}"#, PAULIS)).unwrap();
        let (rho, obs) = p.build().unwrap();
        let encoded = ProblemInput::from_parts(&rho, &obs, ProblemOptions::default());
        let text = serde_json::to_string(&encoded).unwrap();
        let (rho2, obs2) = ProblemInput::from_json(&text).unwrap().build().unwrap();
        assert_eq!(rho, rho2);
        assert_eq!(obs, obs2);
    }
}
