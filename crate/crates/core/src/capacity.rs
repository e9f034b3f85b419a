//! Mutual-information capacities of unitary models, their optimal inputs,
//! the `SU(2)` closed forms and the gapped-partition lower bound.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rep_core::{
    self, decompose, for_each_partition, weyl_dimension_rows, Decomposition, Label, Model,
    Partition, RefDim,
};
use crate::scalar::{binomial, ln_big, ln_rational, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    /// Converts a value in nats to this base.
    pub fn from_nats<T: Real>(self, nats: T) -> T {
        match self {
            LogBase::Natural => nats,
            LogBase::Two => nats / T::LN_2(),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            LogBase::Natural => "e",
            LogBase::Two => "2",
        }
    }

    /// Column suffix for the unit.
    pub fn unit(self) -> &'static str {
        match self {
            LogBase::Natural => "nats",
            LogBase::Two => "bits",
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "nat" | "nats" => Ok(LogBase::Natural),
            "2" | "bit" | "bits" => Ok(LogBase::Two),
            _ => Err(Error::OutOfRange {
                name: "base",
                value: s.to_string(),
                range: "{e, 2}",
            }),
        }
    }
}

impl Serialize for LogBase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Renders a rational as `"num/den"`.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Block weight `p_λ` of an input state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockWeight {
    pub label: Label,
    pub p: BigRational,
}

impl Serialize for BlockWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BlockWeight", 2)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("p", &rational_string(&self.p))?;
        st.end()
    }
}

/// Capacity `log Σ_λ d_λ min(l n_λ, d_λ)` together with the distribution
/// over blocks that attains it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityReport<T> {
    pub model: Model,
    pub n: u64,
    pub t: usize,
    pub l: RefDim,
    pub log_base: LogBase,
    pub value: T,
    pub optimal_p: Vec<BlockWeight>,
}

impl<T: Real> CapacityReport<T> {
    /// Re-expresses the value in another base. Reports are built in nats.
    pub fn in_base(mut self, base: LogBase) -> Self {
        let nats = match self.log_base {
            LogBase::Natural => self.value,
            LogBase::Two => self.value * T::LN_2(),
        };
        self.value = base.from_nats(nats);
        self.log_base = base;
        self
    }
}

/// One block of the optimal input: a maximally entangled state on
/// `U_λ ⊗ C^{eff_mult}` with amplitude `sqrt(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockState {
    pub label: Label,
    pub p: BigRational,
    pub dim: BigUint,
    pub eff_mult: BigUint,
}

impl BlockState {
    pub fn amplitude<T: Real>(&self) -> T {
        crate::scalar::rational_to_real::<T>(&self.p).sqrt()
    }

    pub fn descriptor(&self) -> String {
        format!(
            "maximally entangled on U_{} (dim {}) x C^{}",
            self.label, self.dim, self.eff_mult
        )
    }
}

impl Serialize for BlockState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BlockState", 4)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("p", &rational_string(&self.p))?;
        st.serialize_field("dim", &self.dim.to_string())?;
        st.serialize_field("eff_mult", &self.eff_mult.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputStateSpec {
    pub blocks: Vec<BlockState>,
}

impl InputStateSpec {
    pub fn weights(&self) -> Vec<BigRational> {
        self.blocks.iter().map(|b| b.p.clone()).collect()
    }

    pub fn total(&self) -> BigRational {
        self.blocks.iter().map(|b| b.p.clone()).sum()
    }
}

fn to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// Optimal input: `p_λ ∝ d_λ min(l n_λ, d_λ)`, exact.
pub fn optimal_input(decomp: &Decomposition) -> InputStateSpec {
    let total = to_rational(&decomp.support_dimension());
    let blocks = decomp
        .entries
        .iter()
        .map(|e| BlockState {
            label: e.label.clone(),
            p: to_rational(&e.support()) / &total,
            dim: e.dim.clone(),
            eff_mult: e.eff_mult.clone(),
        })
        .collect();
    InputStateSpec { blocks }
}

/// Capacity of a decomposition, in nats.
pub fn capacity<T: Real>(decomp: &Decomposition) -> CapacityReport<T> {
    let input = optimal_input(decomp);
    CapacityReport {
        model: decomp.model,
        n: decomp.n,
        t: decomp.t,
        l: decomp.l,
        log_base: LogBase::Natural,
        value: ln_big(&decomp.support_dimension()),
        optimal_p: input
            .blocks
            .into_iter()
            .map(|b| BlockWeight {
                label: b.label,
                p: b.p,
            })
            .collect(),
    }
}

/// Mutual information of the twirled block state for an exact distribution
/// `p` aligned with `decomp.entries`:
/// `S(p) + Σ p_λ log(d_λ eff_λ) = Σ p_λ log(d_λ eff_λ / p_λ)`.
///
/// Terms sharing the same ratio are merged in exact arithmetic before the
/// logarithm, so the optimal distribution returns exactly `log Σ d_λ eff_λ`.
pub fn block_state_mi<T: Real>(decomp: &Decomposition, p: &[BigRational]) -> Result<T> {
    check_len(decomp, p.len())?;
    if let Some(neg) = p.iter().find(|x| x.is_negative()) {
        return Err(Error::Negative(rational_string(neg)));
    }
    let total: BigRational = p.iter().cloned().sum();
    if !total.is_one() {
        return Err(Error::Unnormalized(rational_string(&total)));
    }
    let mut groups: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    for (e, w) in decomp.entries.iter().zip(p) {
        if w.is_zero() {
            continue;
        }
        let ratio = to_rational(&e.support()) / w;
        *groups.entry(ratio).or_insert_with(BigRational::zero) += w;
    }
    Ok(groups.iter().fold(T::zero(), |acc, (ratio, weight)| {
        acc + crate::scalar::rational_to_real::<T>(weight) * ln_rational::<T>(ratio)
    }))
}

/// Floating-point variant of [`block_state_mi`] for sampled distributions.
/// The weights must sum to one within `1e-12`.
pub fn block_state_mi_real<T: Real>(decomp: &Decomposition, p: &[T]) -> Result<T> {
    check_len(decomp, p.len())?;
    if let Some(neg) = p.iter().find(|x| **x < T::zero()) {
        return Err(Error::Negative(neg.to_string()));
    }
    let total = p.iter().fold(T::zero(), |a, &b| a + b);
    if (total - T::one()).abs() > T::tol(1e-12) {
        return Err(Error::Unnormalized(total.to_string()));
    }
    let mut acc = T::zero();
    for (e, &w) in decomp.entries.iter().zip(p) {
        if w > T::zero() {
            acc = acc + w * (ln_big::<T>(&e.support()) - w.ln());
        }
    }
    Ok(acc)
}

fn check_len(decomp: &Decomposition, got: usize) -> Result<()> {
    if got != decomp.entries.len() {
        return Err(Error::DistributionLength {
            expected: decomp.entries.len(),
            got,
        });
    }
    Ok(())
}

fn check_t(t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::RowBudget { min: 2, got: t });
    }
    Ok(())
}

/// Multi-phase capacity `log C(n+t-1, t-1)`.
pub fn mp_capacity<T: Real>(n: u64, t: usize) -> Result<T> {
    check_t(t)?;
    Ok(ln_big(&binomial(n + t as u64 - 1, t as u64 - 1)))
}

/// Exact `Σ_{λ ∈ Y_t^n} d_λ²`.
pub fn su_dim_square_sum(n: u64, t: usize) -> Result<BigUint> {
    check_t(t)?;
    rep_core::dim_square_sum(n, t)
}

/// `SU(t)` capacity with an unbounded reference: `log Σ_λ d_λ²`.
pub fn su_capacity<T: Real>(n: u64, t: usize) -> Result<T> {
    Ok(ln_big(&su_dim_square_sum(n, t)?))
}

/// `Σ d_λ²` for `SU(2)` from the parity-split closed forms.
pub fn su2_closed_form(n: u64) -> BigUint {
    let three = BigUint::from(3u32);
    if n.is_multiple_of(2) {
        let m = BigUint::from(n / 2);
        (&m + 1u32) * (&m * 2u32 + 1u32) * (&m * 2u32 + 3u32) / three
    } else {
        let m = BigUint::from(n.div_ceil(2));
        &m * 2u32 * (&m + 1u32) * (&m * 2u32 + 1u32) / three
    }
}

/// `|log Σ d_λ² - (3 log n - log 6)|` for `t = 2`.
pub fn su2_asymptote_residual<T: Real>(n: u64) -> T {
    let exact: T = ln_big(&su2_closed_form(n));
    let n = T::c(n as f64);
    (exact - (T::c(3.0) * n.ln() - T::c(6.0).ln())).abs()
}

/// Lower bound on `log Σ d_λ²` from the gapped-partition subset.
#[derive(Debug, Clone, PartialEq)]
pub struct GappedBound<T> {
    /// Minimum gap `n / (a t)` between consecutive rows.
    pub gap: u64,
    /// Per-factor dimension floor `n / (a t²)`.
    pub factor: BigRational,
    pub members: Vec<Partition>,
    /// `log(|members| * factor^{t(t-1)})`.
    pub value: T,
}

/// Partitions of `n` with at most `t` rows whose consecutive rows differ by at
/// least `gap` (the last row is unconstrained).
pub fn gapped_partitions(n: u64, t: usize, gap: u64) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_partition(n, t, |rows| {
        if rows.windows(2).all(|w| w[0] - w[1] >= gap) {
            out.push(Partition::new(rows.to_vec()).expect("canonical rows"));
        }
    })?;
    Ok(out)
}

/// Counting lower bound on the `SU(t)` capacity using partitions with row
/// gaps of at least `n/(a t)`, for `2 <= a <= 3`.
pub fn su_lower_bound<T: Real>(n: u64, t: usize, a: &BigRational) -> Result<GappedBound<T>> {
    check_t(t)?;
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    if a < &two || a > &three {
        return Err(Error::OutOfRange {
            name: "a",
            value: rational_string(a),
            range: "[2, 3]",
        });
    }
    let tt = BigRational::from_integer(BigInt::from(t));
    let n_r = BigRational::from_integer(BigInt::from(n));
    let gap = &n_r / (a * &tt);
    if !gap.is_integer() || !gap.is_positive() {
        return Err(Error::NonIntegerGap(rational_string(&gap)));
    }
    let gap_u: u64 = gap
        .to_integer()
        .try_into()
        .map_err(|_| Error::NonIntegerGap(rational_string(&gap)))?;
    let factor = &gap / &tt;
    let members = gapped_partitions(n, t, gap_u)?;
    let exponent = (t * (t - 1)) as f64;
    let value = if members.is_empty() {
        T::neg_infinity()
    } else {
        T::c(members.len() as f64).ln() + T::c(exponent) * ln_rational::<T>(&factor)
    };
    Ok(GappedBound {
        gap: gap_u,
        factor,
        members,
        value,
    })
}

/// Checks the per-diagram floor `d_λ >= factor^{t(t-1)/2}` exactly.
pub fn gapped_dimension_floor_holds(lambda: &Partition, factor: &BigRational) -> bool {
    let t = lambda.t() as u32;
    let d = to_rational(&weyl_dimension_rows(lambda.rows()));
    d >= num_traits::pow(factor.clone(), (t * (t - 1) / 2) as usize)
}

/// Mutual information of the maximally entangled input on the symmetric
/// subspace: `2 log C(n+t-1, t-1)`.
pub fn symmetric_subspace_mi<T: Real>(n: u64, t: usize) -> Result<T> {
    Ok(T::c(2.0) * mp_capacity::<T>(n, t)?)
}

/// Fano upper bound on `log N` for `N` states distinguishable with average
/// error `eps`: `(log 2 + mi) / (1 - eps)`.
pub fn fano_bound<T: Real>(mi: T, eps: T) -> Result<T> {
    if !(eps >= T::zero() && eps < T::one()) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps.to_string(),
            range: "[0, 1)",
        });
    }
    if mi < T::zero() {
        return Err(Error::OutOfRange {
            name: "mi",
            value: mi.to_string(),
            range: "[0, inf)",
        });
    }
    Ok((T::LN_2() + mi) / (T::one() - eps))
}

/// Least-squares slope of `value` against `log n`.
pub fn scaling_fit<T: Real>(points: &[(u64, T)]) -> Result<T> {
    let mut ns: Vec<u64> = points.iter().map(|p| p.0).collect();
    ns.sort_unstable();
    ns.dedup();
    if points.len() < 3 || ns.len() != points.len() || ns[0] == 0 {
        return Err(Error::TooFewPoints(ns.len()));
    }
    let m = T::c(points.len() as f64);
    let xs: Vec<T> = points.iter().map(|p| T::c(p.0 as f64).ln()).collect();
    let mean_x = xs.iter().fold(T::zero(), |a, &b| a + b) / m;
    let mean_y = points.iter().fold(T::zero(), |a, p| a + p.1) / m;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (x, p) in xs.iter().zip(points) {
        let dx = *x - mean_x;
        sxy = sxy + dx * (p.1 - mean_y);
        sxx = sxx + dx * dx;
    }
    Ok(sxy / sxx)
}

/// Standard-scaling reference line `(d/2) log n`, `d` the parameter count.
pub fn baseline<T: Real>(model: Model, t: usize, n: u64) -> T {
    T::c(model.parameter_count(t) as f64 / 2.0) * T::c(n as f64).ln()
}

/// Capacity of the model at `(n, t, l)`, choosing the streamed route where
/// the decomposition is not needed.
pub fn model_capacity<T: Real>(model: Model, n: u64, t: usize, l: RefDim) -> Result<T> {
    match (model, l) {
        (Model::MultiPhase, RefDim::Finite(0)) => Err(Error::ZeroReference),
        (Model::MultiPhase, _) => mp_capacity(n, t),
        (Model::SpecialUnitary, RefDim::Unbounded) => su_capacity(n, t),
        (Model::SpecialUnitary, l) => Ok(capacity::<T>(&decompose(model, n, t, l)?).value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep_core::RefDim;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn capacity_examples() {
        let mp = decompose(Model::MultiPhase, 3, 2, RefDim::Finite(1)).unwrap();
        assert!(close(capacity::<f64>(&mp).value, 4f64.ln()));

        let su = decompose(Model::SpecialUnitary, 2, 2, RefDim::Unbounded).unwrap();
        let rep = capacity::<f64>(&su);
        assert!(close(rep.value, 10f64.ln()));
        assert_eq!(rep.optimal_p[0].p, q(9, 10));
        assert_eq!(rep.optimal_p[1].p, q(1, 10));

        let trivial = decompose(Model::SpecialUnitary, 0, 2, RefDim::Unbounded).unwrap();
        assert_eq!(capacity::<f64>(&trivial).value, 0.0);
    }

    #[test]
    fn report_json_and_base() {
        let su = decompose(Model::SpecialUnitary, 2, 2, RefDim::Unbounded).unwrap();
        let rep = capacity::<f64>(&su);
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["optimal_p"][0]["p"], "9/10");
        assert_eq!(v["log_base"], "e");
        let bits = rep.clone().in_base(LogBase::Two);
        assert!(close(bits.value, 10f64.log2()));
        let back = bits.in_base(LogBase::Natural);
        assert!(close(back.value, rep.value));
    }

    #[test]
    fn block_mi_examples() {
        let mp = decompose(Model::MultiPhase, 3, 2, RefDim::Finite(1)).unwrap();
        // Uniform over the two extreme weights (NOON support).
        let mut p = vec![BigRational::zero(); 4];
        p[0] = q(1, 2);
        p[3] = q(1, 2);
        let v: f64 = block_state_mi(&mp, &p).unwrap();
        assert!(close(v, 2f64.ln()));

        let su = decompose(Model::SpecialUnitary, 2, 2, RefDim::Unbounded).unwrap();
        let v: f64 = block_state_mi(&su, &[q(1, 1), q(0, 1)]).unwrap();
        assert!(close(v, 9f64.ln()));
        let v: f64 = block_state_mi(&su, &[q(9, 10), q(1, 10)]).unwrap();
        assert_eq!(v, capacity::<f64>(&su).value);
    }

    #[test]
    fn block_mi_errors() {
        let su = decompose(Model::SpecialUnitary, 2, 2, RefDim::Unbounded).unwrap();
        assert!(matches!(
            block_state_mi::<f64>(&su, &[q(1, 2), q(1, 3)]),
            Err(Error::Unnormalized(_))
        ));
        assert!(matches!(
            block_state_mi::<f64>(&su, &[q(1, 1)]),
            Err(Error::DistributionLength { .. })
        ));
        assert!(block_state_mi::<f64>(&su, &[q(3, 2), q(-1, 2)]).is_err());
        assert!(block_state_mi_real::<f64>(&su, &[0.5, 0.4]).is_err());
        let v = block_state_mi_real::<f64>(&su, &[0.9, 0.1]).unwrap();
        assert!(close(v, 10f64.ln()));
    }

    #[test]
    fn optimal_input_examples() {
        let mp = decompose(Model::MultiPhase, 5, 3, RefDim::Finite(1)).unwrap();
        let spec = optimal_input(&mp);
        assert_eq!(spec.blocks.len(), 21);
        assert!(spec.blocks.iter().all(|b| b.p == q(1, 21)));
        assert!(spec.total().is_one());

        let su = decompose(Model::SpecialUnitary, 2, 2, RefDim::Unbounded).unwrap();
        assert_eq!(optimal_input(&su).weights(), vec![q(9, 10), q(1, 10)]);
        assert!(optimal_input(&su).blocks[0]
            .descriptor()
            .starts_with("maximally entangled on U_(2,0)"));

        let single = decompose(Model::MultiPhase, 0, 2, RefDim::Finite(1)).unwrap();
        assert_eq!(optimal_input(&single).weights(), vec![q(1, 1)]);
        let amp: f64 = optimal_input(&su).blocks[1].amplitude();
        assert!(close(amp, 0.1f64.sqrt()));
    }

    #[test]
    fn mp_capacity_examples() {
        assert!(close(mp_capacity::<f64>(4, 2).unwrap(), 5f64.ln()));
        assert!(close(mp_capacity::<f64>(2, 3).unwrap(), 6f64.ln()));
        assert_eq!(mp_capacity::<f64>(0, 4).unwrap(), 0.0);
        assert!(mp_capacity::<f64>(3, 1).is_err());
    }

    #[test]
    fn su_capacity_examples() {
        assert!(close(su_capacity::<f64>(2, 2).unwrap(), 10f64.ln()));
        assert!(close(su_capacity::<f64>(3, 2).unwrap(), 20f64.ln()));
        assert!(close(su_capacity::<f64>(2, 3).unwrap(), 45f64.ln()));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(su2_closed_form(2), BigUint::from(10u32));
        assert_eq!(su2_closed_form(1), BigUint::from(4u32));
        assert_eq!(su2_closed_form(12), BigUint::from(455u32));
        assert_eq!(su2_closed_form(4), BigUint::from(35u32));
        assert!(25f64.ln() < 35f64.ln());
    }

    #[test]
    fn residual_examples() {
        // Frozen from exact evaluation: log(11*12*13/6) - (3 log 10 - log 6).
        let r10: f64 = su2_asymptote_residual(10);
        let oracle = (11.0f64 * 12.0 * 13.0 / 6.0).ln() - (3.0 * 10f64.ln() - 6f64.ln());
        assert!((r10 - oracle.abs()).abs() < 1e-12);
        assert!(r10 <= 0.7);
        assert!(su2_asymptote_residual::<f64>(1000) <= 0.007);
    }

    #[test]
    fn lower_bound_examples() {
        let b = su_lower_bound::<f64>(12, 2, &q(3, 1)).unwrap();
        assert_eq!(b.gap, 2);
        assert_eq!(b.members.len(), 6);
        // factor n / (a t^2) = 1, so only the count survives.
        assert!(close(b.value, 6f64.ln()));

        let b = su_lower_bound::<f64>(12, 2, &q(2, 1)).unwrap();
        assert_eq!(b.gap, 3);
        assert_eq!(b.members.len(), 5);
        assert!(close(b.value, (5.0 * 1.5f64 * 1.5).ln()));
        assert!(b.value <= 455f64.ln());
        for lam in &b.members {
            assert!(gapped_dimension_floor_holds(lam, &b.factor));
        }
    }

    #[test]
    fn lower_bound_errors() {
        assert!(matches!(
            su_lower_bound::<f64>(12, 2, &q(4, 1)),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            su_lower_bound::<f64>(10, 2, &q(3, 1)),
            Err(Error::NonIntegerGap(_))
        ));
    }

    #[test]
    fn symmetric_subspace_examples() {
        assert!(close(
            symmetric_subspace_mi::<f64>(2, 2).unwrap(),
            9f64.ln()
        ));
        assert!(close(
            symmetric_subspace_mi::<f64>(1, 2).unwrap(),
            su_capacity::<f64>(1, 2).unwrap()
        ));
        assert!(close(
            symmetric_subspace_mi::<f64>(4, 2).unwrap(),
            25f64.ln()
        ));
    }

    #[test]
    fn fano_examples() {
        assert!(close(fano_bound(0.0, 0.0).unwrap(), 2f64.ln()));
        assert!(close(fano_bound(5f64.ln(), 0.5).unwrap(), 2.0 * 10f64.ln()));
        assert!(fano_bound(0.0, 1.0).is_err());
        assert!(fano_bound(-1.0, 0.1).is_err());
        assert!(fano_bound(1.0, 0.2).unwrap() > fano_bound(1.0, 0.1).unwrap());
        assert!(fano_bound(1.1, 0.1).unwrap() > fano_bound(1.0, 0.1).unwrap());
    }

    #[test]
    fn fit_examples() {
        let pts: Vec<(u64, f64)> = (1..10).map(|n| (n, 3.0 * (n as f64).ln())).collect();
        assert!((scaling_fit(&pts).unwrap() - 3.0).abs() < 1e-12);
        assert!(matches!(
            scaling_fit(&pts[..2]),
            Err(Error::TooFewPoints(2))
        ));
        assert!(scaling_fit(&[(2, 1.0), (2, 1.0), (3, 1.0)]).is_err());
    }

    #[test]
    fn model_capacity_routes() {
        let a: f64 = model_capacity(Model::SpecialUnitary, 4, 2, RefDim::Unbounded).unwrap();
        let b: f64 = model_capacity(Model::SpecialUnitary, 4, 2, RefDim::Finite(100)).unwrap();
        assert!(close(a, b));
        let c: f64 = model_capacity(Model::MultiPhase, 4, 3, RefDim::Finite(1)).unwrap();
        assert!(close(c, 15f64.ln()));
    }

    #[test]
    fn works_in_f32() {
        let v: f32 = su_capacity(2, 2).unwrap();
        assert!((v - 10f32.ln()).abs() < 1e-6);
        let s: f32 = scaling_fit(&[(1, 0.0), (2, 2f32.ln()), (4, 4f32.ln())]).unwrap();
        assert!((s - 1.0).abs() < 1e-5);
    }
}
