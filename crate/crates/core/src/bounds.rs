//! Lower bounds on sums of variances and sums of skew informations.
//!
//! Every evaluator returns a [`BoundValue`]. Bounds belong to one of three
//! families, according to the quantity they bound from below:
//!
//! * [`Family::Variance`]: `sum_i (Delta A_i)^2`
//! * [`Family::Skew`]: `sum_i I_rho(A_i)`
//! * [`Family::Product`]: `Delta A Delta B` (two observables only)
//!
//! [`evaluate_all`] computes every bound for one state and observable set and
//! checks each one against its target sum.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{commutator, HermitianMatrix};
use crate::measures::{amplitude_vector, skew_information, variance};
use crate::states::DensityMatrix;

/// Default cap on the number of permutation tuples the Theorem-1 search visits.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Default relative tolerance for flagging a bound above its target.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Two maximizing tuples closer than this are treated as tied.
const TIE_TOLERANCE: f64 = 1e-12;

/// Which uncertainty quantity a bound applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Variance,
    Skew,
    Product,
}

/// Identifier of every bound the crate evaluates. Declaration order is the
/// catalog order used for reports, CSV columns and tie-breaking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundName {
    /// Permutation-maximized amplitude-vector bound.
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "song")]
    Song,
    /// Sorted-component bound with the unit-step prefactor.
    #[serde(rename = "chen_variance")]
    ChenVariance,
    /// `1/2 [Delta(A+B)]^2`, two observables only.
    #[serde(rename = "mp_quadratic")]
    MpQuadratic,
    /// Root-of-sums plus sum-of-differences skew bound.
    #[serde(rename = "th2eq1")]
    Theorem2a,
    /// Root-of-differences plus sum-of-sums skew bound.
    #[serde(rename = "th2eq2")]
    Theorem2b,
    /// Skew bound with the `1/(N-2)` prefactor, three or more observables.
    #[serde(rename = "chen_skew")]
    ChenSkew,
    #[serde(rename = "zhang")]
    Zhang,
    #[serde(rename = "parallelogram_sum")]
    ParallelogramSum,
    #[serde(rename = "parallelogram_diff")]
    ParallelogramDiff,
    /// `1/2 |<[A, B]>|` against `Delta A Delta B`.
    #[serde(rename = "robertson")]
    Robertson,
}

impl BoundName {
    pub const CATALOG: [BoundName; 11] = [
        BoundName::Theorem1,
        BoundName::Song,
        BoundName::ChenVariance,
        BoundName::MpQuadratic,
        BoundName::Theorem2a,
        BoundName::Theorem2b,
        BoundName::ChenSkew,
        BoundName::Zhang,
        BoundName::ParallelogramSum,
        BoundName::ParallelogramDiff,
        BoundName::Robertson,
    ];

    pub fn family(self) -> Family {
        match self {
            BoundName::Theorem1 | BoundName::Song | BoundName::ChenVariance | BoundName::MpQuadratic => {
                Family::Variance
            }
            BoundName::Robertson => Family::Product,
            _ => Family::Skew,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Theorem1 => "theorem1",
            BoundName::Song => "song",
            BoundName::ChenVariance => "chen_variance",
            BoundName::MpQuadratic => "mp_quadratic",
            BoundName::Theorem2a => "th2eq1",
            BoundName::Theorem2b => "th2eq2",
            BoundName::ChenSkew => "chen_skew",
            BoundName::Zhang => "zhang",
            BoundName::ParallelogramSum => "parallelogram_sum",
            BoundName::ParallelogramDiff => "parallelogram_diff",
            BoundName::Robertson => "robertson",
        }
    }

    /// Whether the bound is defined for `n` observables.
    pub fn applies_to(self, n: usize) -> bool {
        match self {
            BoundName::MpQuadratic | BoundName::Robertson => n == 2,
            BoundName::ChenSkew => n >= 3,
            _ => n >= 2,
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `N >= 2` observables of a common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableSet {
    observables: Vec<HermitianMatrix>,
}

impl ObservableSet {
    pub fn new(observables: Vec<HermitianMatrix>) -> Result<Self> {
        if observables.len() < 2 {
            return Err(Error::TooFewObservables {
                found: observables.len(),
                min: 2,
            });
        }
        let dim = observables[0].dim();
        if let Some(bad) = observables.iter().find(|a| a.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { observables })
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.observables[0].dim()
    }

    pub fn observables(&self) -> &[HermitianMatrix] {
        &self.observables
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HermitianMatrix> {
        self.observables.iter()
    }

    /// `sum_i A_i`.
    pub fn total(&self) -> HermitianMatrix {
        let mut iter = self.observables.iter();
        let first = iter.next().expect("at least two observables").clone();
        iter.fold(first, |acc, a| &acc + a)
    }

    /// Index pairs `i < j` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        (0..self.len()).tuple_combinations()
    }

    fn check_state(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho.dim(),
            });
        }
        Ok(())
    }
}

/// One permutation per observable, the first fixed to the identity.
///
/// Stored zero-based; serialized in one-line notation over `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct PermutationTuple {
    perms: Vec<Vec<usize>>,
}

impl PermutationTuple {
    pub fn new(perms: Vec<Vec<usize>>) -> std::result::Result<Self, String> {
        let Some(first) = perms.first() else {
            return Err("empty permutation tuple".into());
        };
        let d = first.len();
        for (i, p) in perms.iter().enumerate() {
            let mut seen = vec![false; d];
            if p.len() != d || !p.iter().all(|&k| k < d && !std::mem::replace(&mut seen[k], true)) {
                return Err(format!("entry {i} is not a permutation of {d} elements"));
            }
        }
        if first.iter().enumerate().any(|(k, &v)| k != v) {
            return Err("first permutation must be the identity".into());
        }
        Ok(Self { perms })
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }
}

impl TryFrom<Vec<Vec<usize>>> for PermutationTuple {
    type Error = String;

    fn try_from(one_based: Vec<Vec<usize>>) -> std::result::Result<Self, String> {
        let zero_based = one_based
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|k| k.checked_sub(1).ok_or("permutation entries start at 1"))
                    .collect()
            })
            .collect::<std::result::Result<Vec<Vec<usize>>, _>>()?;
        Self::new(zero_based)
    }
}

impl From<PermutationTuple> for Vec<Vec<usize>> {
    fn from(tuple: PermutationTuple) -> Self {
        tuple
            .perms
            .into_iter()
            .map(|p| p.into_iter().map(|k| k + 1).collect())
            .collect()
    }
}

/// A bound's value. Inapplicable bounds carry `NaN`, written as JSON `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub name: BoundName,
    #[serde(with = "nan_as_null")]
    pub value: f64,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<PermutationTuple>,
}

impl BoundValue {
    pub fn new(name: BoundName, value: f64) -> Self {
        Self {
            name,
            value,
            applicable: true,
            detail: None,
        }
    }

    pub fn inapplicable(name: BoundName) -> Self {
        Self {
            name,
            value: f64::NAN,
            applicable: false,
            detail: None,
        }
    }
}

mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
        if value.is_finite() {
            s.serialize_f64(*value)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

fn root(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

fn pair_coefficient(n: usize) -> f64 {
    2.0 / (n * (n - 1)) as f64
}

/// `(d!)^(N-1)`, or `None` on overflow.
pub fn permutation_count(dim: usize, n: usize) -> Option<u128> {
    let factorial = (1..=dim as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))?;
    (1..n).try_fold(1u128, |acc, _| acc.checked_mul(factorial))
}

/// The amplitude-vector objective for one fixed arrangement of the vectors:
///
/// `1/(2N-2) { sum_{i<j} ||x_i + x_j||^2 + 2/(N(N-1)) (sum_{i<j} ||x_i - x_j||)^2 }`
pub fn theorem1_objective(vectors: &[Vec<f64>]) -> f64 {
    let n = vectors.len();
    let mut plus_sq = 0.0;
    let mut minus = 0.0;
    for (i, j) in (0..n).tuple_combinations() {
        let (mut p, mut m) = (0.0, 0.0);
        for (x, y) in vectors[i].iter().zip(&vectors[j]) {
            p += (x + y) * (x + y);
            m += (x - y) * (x - y);
        }
        plus_sq += p;
        minus += m.sqrt();
    }
    (plus_sq + pair_coefficient(n) * minus * minus) / (2 * n - 2) as f64
}

/// Maximizes [`theorem1_objective`] over one permutation per observable.
///
/// The first observable keeps the identity permutation: applying one shared
/// permutation to all vectors leaves the objective unchanged. The search is
/// exhaustive over `(d!)^(N-1)` tuples in lexicographic order and keeps the
/// first tuple that beats the running maximum by more than `1e-12`. It fails
/// with [`Error::BudgetExceeded`] instead of visiting more than `budget` tuples.
pub fn bound_theorem1(rho: &DensityMatrix, obs: &ObservableSet, budget: u64) -> Result<BoundValue> {
    obs.check_state(rho)?;
    let (d, n) = (obs.dim(), obs.len());
    let tuples = permutation_count(d, n);
    if tuples.is_none_or(|t| t > u128::from(budget)) {
        return Err(Error::BudgetExceeded { tuples, budget });
    }

    let amplitudes = obs
        .iter()
        .map(|a| amplitude_vector(rho, a))
        .collect::<Result<Vec<_>>>()?;
    let perms: Vec<Vec<usize>> = (0..d).permutations(d).collect();
    let arranged: Vec<Vec<Vec<f64>>> = amplitudes
        .iter()
        .map(|a| perms.iter().map(|p| a.permuted(p)).collect())
        .collect();

    // Odometer over the permutation indices of observables 1..N.
    let mut index = vec![0usize; n - 1];
    let mut current: Vec<Vec<f64>> = arranged.iter().map(|a| a[0].clone()).collect();
    let mut best = f64::NEG_INFINITY;
    let mut best_index = index.clone();
    loop {
        let value = theorem1_objective(&current);
        if value > best + TIE_TOLERANCE {
            best = value;
            best_index.clone_from(&index);
        }
        let mut slot = n - 1;
        loop {
            if slot == 0 {
                let mut chosen = vec![perms[0].clone()];
                chosen.extend(best_index.iter().map(|&k| perms[k].clone()));
                let detail = PermutationTuple::new(chosen).expect("generated permutations are valid");
                return Ok(BoundValue {
                    detail: Some(detail),
                    ..BoundValue::new(BoundName::Theorem1, best)
                });
            }
            let pos = slot - 1;
            index[pos] += 1;
            if index[pos] < perms.len() {
                current[slot].clone_from(&arranged[slot][index[pos]]);
                break;
            }
            index[pos] = 0;
            current[slot].clone_from(&arranged[slot][0]);
            slot -= 1;
        }
    }
}

/// `1/N { [Delta(sum A_i)]^2 + 2/(N(N-1)) (sum_{i<j} Delta(A_i - A_j))^2 }`.
pub fn bound_song(rho: &DensityMatrix, obs: &ObservableSet) -> Result<BoundValue> {
    obs.check_state(rho)?;
    let n = obs.len();
    let total = variance(rho, &obs.total())?;
    let mut spread = 0.0;
    for (i, j) in obs.pairs() {
        spread += root(variance(rho, &(&obs.observables[i] - &obs.observables[j]))?);
    }
    let value = (total + pair_coefficient(n) * spread * spread) / n as f64;
    Ok(BoundValue::new(BoundName::Song, value))
}

/// Sorted-component bound.
///
/// With `b_i` the amplitude vector of `A_i` sorted ascending and
/// `K_ij^2 = ||b_i + b_j||^2`, the value is
/// `1/(2^H N - 2) { sum K_ij^2 + (H - 1)/(N-1)^2 (sum K_ij)^2 }` with
/// `H = H(2 - N)` the unit step (1 at `N = 2`, 0 above).
pub fn bound_chen_variance(rho: &DensityMatrix, obs: &ObservableSet) -> Result<BoundValue> {
    obs.check_state(rho)?;
    let n = obs.len();
    let sorted = obs
        .iter()
        .map(|a| amplitude_vector(rho, a).map(|v| v.sorted_ascending()))
        .collect::<Result<Vec<_>>>()?;
    let step = if n <= 2 { 1.0 } else { 0.0 };
    let (mut k_sq_sum, mut k_sum) = (0.0, 0.0);
    for (i, j) in obs.pairs() {
        let k_sq: f64 = sorted[i].iter().zip(&sorted[j]).map(|(x, y)| (x + y) * (x + y)).sum();
        k_sq_sum += k_sq;
        k_sum += k_sq.sqrt();
    }
    let prefactor = 1.0 / (2f64.powf(step) * n as f64 - 2.0);
    let coefficient = (step - 1.0) / ((n - 1) * (n - 1)) as f64;
    let value = prefactor * (k_sq_sum + coefficient * k_sum * k_sum);
    Ok(BoundValue::new(BoundName::ChenVariance, value))
}

/// Skew informations of all pairwise sums and differences.
struct PairSkews {
    plus: Vec<f64>,
    minus: Vec<f64>,
}

impl PairSkews {
    fn new(rho: &DensityMatrix, obs: &ObservableSet) -> Result<Self> {
        obs.check_state(rho)?;
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        for (i, j) in obs.pairs() {
            let (a, b) = (&obs.observables[i], &obs.observables[j]);
            plus.push(skew_information(rho, &(a + b))?);
            minus.push(skew_information(rho, &(a - b))?);
        }
        Ok(Self { plus, minus })
    }

    fn sum(values: &[f64]) -> f64 {
        values.iter().sum()
    }

    fn root_sum(values: &[f64]) -> f64 {
        values.iter().map(|&x| root(x)).sum()
    }
}

fn theorem2_value(n: usize, rooted: &[f64], summed: &[f64]) -> f64 {
    let r = PairSkews::root_sum(rooted);
    (pair_coefficient(n) * r * r + PairSkews::sum(summed)) / (2 * n - 2) as f64
}

/// `1/(2N-2) { 2/(N(N-1)) (sum_{i<j} sqrt I(A_i+A_j))^2 + sum_{i<j} I(A_i-A_j) }`.
pub fn bound_theorem2a(rho: &DensityMatrix, obs: &ObservableSet) -> Result<BoundValue> {
    let s = PairSkews::new(rho, obs)?;
    Ok(BoundValue::new(
        BoundName::Theorem2a,
        theorem2_value(obs.len(), &s.plus, &s.minus),
    ))
}

/// `1/(2N-2) { 2/(N(N-1)) (sum_{i<j} sqrt I(A_i-A_j))^2 + sum_{i<j} I(A_i+A_j) }`.
pub fn bound_theorem2b(rho: &DensityMatrix, obs: &ObservableSet) -> Result<BoundValue> {
    let s = PairSkews::new(rho, obs)?;
    Ok(BoundValue::new(
        BoundName::Theorem2b,
        theorem2_value(obs.len(), &s.minus, &s.plus),
    ))
}

/// `1/(N-2) { sum_{i<j} I(A_i+A_j) - 1/(N-1)^2 (sum_{i<j} sqrt I(A_i+A_j))^2 }`,
/// inapplicable for two observables.
pub fn bound_chen_skew(rho: &DensityMatrix, obs: &ObservableSet) -> Result<BoundValue> {
    let n = obs.len();
    if n < 3 {
        obs.check_state(rho)?;
        return Ok(BoundValue::inapplicable(BoundName::ChenSkew));
    }
    let s = PairSkews::new(rho, obs)?;
    let r = PairSkews::root_sum(&s.plus);
    let value = (PairSkews::sum(&s.plus) - r * r / ((n - 1) * (n - 1)) as f64) / (n - 2) as f64;
    Ok(BoundValue::new(BoundName::ChenSkew, value))
}

/// `1/N { I(sum A_i) + 2/(N(N-1)) (sum_{i<j} sqrt I(A_i-A_j))^2 }`.
pub fn bound_zhang(rho: &DensityMatrix, obs: &ObservableSet) -> Result<BoundValue> {
    let n = obs.len();
    let s = PairSkews::new(rho, obs)?;
    let r = PairSkews::root_sum(&s.minus);
    let value = (skew_information(rho, &obs.total())? + pair_coefficient(n) * r * r) / n as f64;
    Ok(BoundValue::new(BoundName::Zhang, value))
}

/// `1/(2N-2) sum_{i<j} I(A_i+A_j)`.
pub fn bound_parallelogram_sum(rho: &DensityMatrix, obs: &ObservableSet) -> Result<BoundValue> {
    let s = PairSkews::new(rho, obs)?;
    let value = PairSkews::sum(&s.plus) / (2 * obs.len() - 2) as f64;
    Ok(BoundValue::new(BoundName::ParallelogramSum, value))
}

/// `1/(2N-2) sum_{i<j} I(A_i-A_j)`.
pub fn bound_parallelogram_diff(rho: &DensityMatrix, obs: &ObservableSet) -> Result<BoundValue> {
    let s = PairSkews::new(rho, obs)?;
    let value = PairSkews::sum(&s.minus) / (2 * obs.len() - 2) as f64;
    Ok(BoundValue::new(BoundName::ParallelogramDiff, value))
}

fn check_pair(rho: &DensityMatrix, a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    for m in [a, b] {
        if m.dim() != rho.dim() {
            return Err(Error::DimensionMismatch {
                expected: rho.dim(),
                found: m.dim(),
            });
        }
    }
    Ok(())
}

/// `1/2 |tr(rho [A, B])|`, a lower bound on `Delta A Delta B`.
pub fn bound_robertson(rho: &DensityMatrix, a: &HermitianMatrix, b: &HermitianMatrix) -> Result<BoundValue> {
    check_pair(rho, a, b)?;
    let k = commutator(a, b)?;
    let value = 0.5 * (rho.as_matrix() * &k).trace().norm();
    Ok(BoundValue::new(BoundName::Robertson, value))
}

/// `1/2 [Delta(A+B)]^2`.
pub fn bound_mp_quadratic(rho: &DensityMatrix, a: &HermitianMatrix, b: &HermitianMatrix) -> Result<BoundValue> {
    check_pair(rho, a, b)?;
    Ok(BoundValue::new(BoundName::MpQuadratic, 0.5 * variance(rho, &(a + b))?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvaluationOptions {
    pub budget: u64,
    /// A bound counts as violated when it exceeds its target by more than
    /// `tolerance * max(1, target)`.
    pub tolerance: f64,
}

impl Default for EvaluationOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub dim: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
}

/// Uncertainty sums, every bound, and the outcome of checking each bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub variance_sum: f64,
    pub skew_sum: f64,
    /// `Delta A_1 Delta A_2`, present for two observables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub std_product: Option<f64>,
    /// One entry per catalog bound, in catalog order.
    pub bounds: Vec<BoundValue>,
    pub violations: Vec<BoundName>,
    pub tightest_variance: Option<BoundName>,
    pub tightest_skew: Option<BoundName>,
    pub metadata: ReportMetadata,
}

impl BoundReport {
    pub fn get(&self, name: BoundName) -> Option<&BoundValue> {
        self.bounds.iter().find(|b| b.name == name)
    }

    /// Value of an applicable bound.
    pub fn value(&self, name: BoundName) -> Option<f64> {
        self.get(name).filter(|b| b.applicable).map(|b| b.value)
    }

    /// The quantity a family bounds from below.
    pub fn target(&self, family: Family) -> Option<f64> {
        match family {
            Family::Variance => Some(self.variance_sum),
            Family::Skew => Some(self.skew_sum),
            Family::Product => self.std_product,
        }
    }

    /// `target - value` for an applicable bound.
    pub fn slack(&self, name: BoundName) -> Option<f64> {
        Some(self.target(name.family())? - self.value(name)?)
    }

    /// Applicable bounds of one family, largest first; ties keep catalog order.
    pub fn ranked(&self, family: Family) -> Vec<&BoundValue> {
        let mut ranked: Vec<&BoundValue> = self
            .bounds
            .iter()
            .filter(|b| b.applicable && b.name.family() == family)
            .collect();
        ranked.sort_by(|a, b| b.value.total_cmp(&a.value));
        ranked
    }

    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// Evaluates the uncertainty sums and every catalog bound.
pub fn evaluate_all(rho: &DensityMatrix, obs: &ObservableSet, options: &EvaluationOptions) -> Result<BoundReport> {
    obs.check_state(rho)?;
    let n = obs.len();
    let variances = obs.iter().map(|a| variance(rho, a)).collect::<Result<Vec<_>>>()?;
    let variance_sum: f64 = variances.iter().sum();
    let skew_sum = obs.iter().map(|a| skew_information(rho, a)).sum::<Result<f64>>()?;
    let std_product = (n == 2).then(|| (variances[0] * variances[1]).sqrt());

    let pair = (n == 2).then(|| (&obs.observables[0], &obs.observables[1]));
    let mut bounds = Vec::with_capacity(BoundName::CATALOG.len());
    for name in BoundName::CATALOG {
        if !name.applies_to(n) {
            bounds.push(BoundValue::inapplicable(name));
            continue;
        }
        let bound = match name {
            BoundName::Theorem1 => bound_theorem1(rho, obs, options.budget)?,
            BoundName::Song => bound_song(rho, obs)?,
            BoundName::ChenVariance => bound_chen_variance(rho, obs)?,
            BoundName::Theorem2a => bound_theorem2a(rho, obs)?,
            BoundName::Theorem2b => bound_theorem2b(rho, obs)?,
            BoundName::ChenSkew => bound_chen_skew(rho, obs)?,
            BoundName::Zhang => bound_zhang(rho, obs)?,
            BoundName::ParallelogramSum => bound_parallelogram_sum(rho, obs)?,
            BoundName::ParallelogramDiff => bound_parallelogram_diff(rho, obs)?,
            BoundName::MpQuadratic => {
                let (a, b) = pair.expect("two observables");
                bound_mp_quadratic(rho, a, b)?
            }
            BoundName::Robertson => {
                let (a, b) = pair.expect("two observables");
                bound_robertson(rho, a, b)?
            }
        };
        bounds.push(bound);
    }

    let mut report = BoundReport {
        variance_sum,
        skew_sum,
        std_product,
        bounds,
        violations: Vec::new(),
        tightest_variance: None,
        tightest_skew: None,
        metadata: ReportMetadata {
            dim: obs.dim(),
            n,
            ..ReportMetadata::default()
        },
    };
    report.violations = report
        .bounds
        .iter()
        .filter(|b| b.applicable)
        .filter(|b| {
            let target = report.target(b.name.family()).unwrap_or(f64::INFINITY);
            b.value.is_nan() || b.value > target + options.tolerance * target.abs().max(1.0)
        })
        .map(|b| b.name)
        .collect();
    report.tightest_variance = report.ranked(Family::Variance).first().map(|b| b.name);
    report.tightest_skew = report.ranked(Family::Skew).first().map(|b| b.name);
    Ok(report)
}
