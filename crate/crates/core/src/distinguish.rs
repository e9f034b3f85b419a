//! Rényi-entropy bounds on the number of distinguishable group elements and
//! radius bounds on the multi-phase torus.

// Range checks are written as `!(x > lo)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::capacity::capacity;
use crate::error::{Error, Result};
use crate::rep_core::{Decomposition, Model};
use crate::scalar::Real;

fn validated<T: Real>(spectrum: &[T]) -> Result<Vec<T>> {
    let tol = T::tol(1e-12);
    let mut out = Vec::with_capacity(spectrum.len());
    for &x in spectrum {
        if x < -tol || !x.is_finite() {
            return Err(Error::Negative(x.to_string()));
        }
        out.push(x.max(T::zero()));
    }
    let total = out.iter().fold(T::zero(), |a, &b| a + b);
    if (total - T::one()).abs() > tol {
        return Err(Error::Unnormalized(total.to_string()));
    }
    Ok(out)
}

/// `S_α = log(Σ p^α) / (1 - α)` for `α > 0`, `α ≠ 1`.
pub fn renyi_entropy<T: Real>(spectrum: &[T], alpha: T) -> Result<T> {
    if !(alpha > T::zero()) || alpha == T::one() || !alpha.is_finite() {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha.to_string(),
            range: "(0, 1) or (1, inf)",
        });
    }
    let p = validated(spectrum)?;
    let trace = p
        .iter()
        .filter(|&&x| x > T::zero())
        .fold(T::zero(), |a, &x| a + x.powf(alpha));
    Ok(trace.ln() / (T::one() - alpha))
}

/// Shannon / von Neumann entropy of a spectrum.
pub fn shannon_entropy<T: Real>(spectrum: &[T]) -> Result<T> {
    let p = validated(spectrum)?;
    Ok(p.iter()
        .filter(|&&x| x > T::zero())
        .fold(T::zero(), |a, &x| a - x * x.ln()))
}

/// `S_0 = log rank`, the `β → 0` limit. Entries at or below `1e-12` do not count.
pub fn max_entropy<T: Real>(spectrum: &[T]) -> Result<T> {
    let p = validated(spectrum)?;
    let rank = p.iter().filter(|&&x| x > T::tol(1e-12)).count();
    Ok(T::c(rank as f64).ln())
}

/// Lower and upper bounds on `log M_ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenyiBounds<T> {
    pub alpha: T,
    /// `0` stands for the `β → 0` limit.
    pub beta: T,
    pub epsilon: T,
    pub lower_log_m: T,
    pub upper_log_m: T,
}

impl<T: Real> RenyiBounds<T> {
    pub fn contains(&self, log_m: T) -> bool {
        self.lower_log_m <= log_m && log_m <= self.upper_log_m
    }

    pub fn width(&self) -> T {
        self.upper_log_m - self.lower_log_m
    }
}

impl<T: Real + Serialize> Serialize for RenyiBounds<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RenyiBounds", 5)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("epsilon", &self.epsilon)?;
        st.serialize_field("lower_nats", &self.lower_log_m)?;
        st.serialize_field("upper_nats", &self.upper_log_m)?;
        st.end()
    }
}

fn check_eps<T: Real>(eps: T) -> Result<()> {
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps.to_string(),
            range: "(0, 1)",
        });
    }
    Ok(())
}

/// Bounds from the Rényi entropies of the averaged output state:
///
/// - `log M ≥ S_α - (log 2 - log ε) / (α - 1)` for `1 < α ≤ 2`
/// - `log M ≤ S_β + log(1 - ε) / (β - 1)` for `0 < β < 1`
pub fn m_bounds_general<T: Real>(
    s_alpha: T,
    s_beta: T,
    alpha: T,
    beta: T,
    eps: T,
) -> Result<RenyiBounds<T>> {
    if !(alpha > T::one() && alpha <= T::c(2.0)) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha.to_string(),
            range: "(1, 2]",
        });
    }
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::OutOfRange {
            name: "beta",
            value: beta.to_string(),
            range: "(0, 1)",
        });
    }
    check_eps(eps)?;
    Ok(RenyiBounds {
        alpha,
        beta,
        epsilon: eps,
        lower_log_m: s_alpha - (T::LN_2() - eps.ln()) / (alpha - T::one()),
        upper_log_m: s_beta + (T::one() - eps).ln() / (beta - T::one()),
    })
}

/// The `α = 2`, `β → 0` bracket around a capacity `r`:
/// `r - (log 2 - log ε) ≤ log M_ε ≤ r - log(1 - ε)`.
pub fn capacity_bracket<T: Real>(r: T, eps: T) -> Result<RenyiBounds<T>> {
    check_eps(eps)?;
    Ok(RenyiBounds {
        alpha: T::c(2.0),
        beta: T::zero(),
        epsilon: eps,
        lower_log_m: r - (T::LN_2() - eps.ln()),
        upper_log_m: r - (T::one() - eps).ln(),
    })
}

/// [`capacity_bracket`] at the capacity of `decomp`. The lower end may be
/// negative, which is a vacuous but valid bound.
pub fn m_eps_capacity_bounds<T: Real>(decomp: &Decomposition, eps: T) -> Result<RenyiBounds<T>> {
    capacity_bracket(capacity::<T>(decomp).value, eps)
}

/// Normalized Haar volume of a sup-distance ball of radius `r` on the
/// `(t-1)`-torus of phases.
pub fn ball_volume_mp<T: Real>(r: T, t: usize) -> Result<T> {
    if !(r >= T::zero()) {
        return Err(Error::OutOfRange {
            name: "R",
            value: r.to_string(),
            range: "[0, inf)",
        });
    }
    if t < 2 {
        return Err(Error::RowBudget { min: 2, got: t });
    }
    let frac = (r / T::PI()).min(T::one());
    Ok(frac.powi(t as i32 - 1))
}

/// Exponent of the small-radius ball volume, `B(R) = O(R^k)`: the number of
/// group parameters. For `SU(t)` radius bounds are only available through it.
pub fn ball_volume_exponent(model: Model, t: usize) -> u64 {
    model.parameter_count(t)
}

/// Smallest `R` with `volume(R) ≥ 1/M` (so `R_ε ≤ B^{-1}(1/M)`), found by
/// bisection to `1e-10` absolute.
pub fn radius_bound<T: Real, F: Fn(T) -> T>(m: T, volume: F) -> Result<T> {
    if !(m >= T::one()) {
        return Err(Error::OutOfRange {
            name: "M",
            value: m.to_string(),
            range: "[1, inf)",
        });
    }
    let target = T::one() / m;
    let mut lo = T::zero();
    let mut hi = T::one();
    let mut doublings = 0;
    while volume(hi) < target {
        lo = hi;
        hi = hi + hi;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::Bisection("volume never reaches 1/M".into()));
        }
    }
    let tol = T::tol(1e-10);
    while hi - lo > tol {
        let mid = lo + (hi - lo) / T::c(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if volume(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// [`radius_bound`] with the multi-phase ball volume.
pub fn mp_radius_bound<T: Real>(m: T, t: usize) -> Result<T> {
    if t < 2 {
        return Err(Error::RowBudget { min: 2, got: t });
    }
    radius_bound(m, |r| ball_volume_mp(r, t).unwrap_or(T::one()))
}

/// Circular distance between two phases.
pub fn phase_distance<T: Real>(a: T, b: T) -> T {
    let two_pi = T::c(2.0) * T::PI();
    let d = (a - b).abs() % two_pi;
    d.min(two_pi - d)
}

/// Sup distance on the torus.
pub fn torus_distance<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |m, (&x, &y)| m.max(phase_distance(x, y)))
}

/// Equally spaced grid `{2πk/N}^{t-1}` on the torus, a finite subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeCodebook<T> {
    pub t: usize,
    pub points_per_axis: u64,
    pub elements: Vec<Vec<T>>,
}

impl<T: Real> LatticeCodebook<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `R(Ω) = π / N` under the sup distance.
    pub fn covering_radius(&self) -> T {
        T::PI() / T::c(self.points_per_axis as f64)
    }

    /// Index vector of an element, recovered from its phases.
    pub fn indices(&self, element: &[T]) -> Vec<u64> {
        let scale = T::c(self.points_per_axis as f64) / (T::c(2.0) * T::PI());
        element
            .iter()
            .map(|&x| {
                let k = (x * scale).round().to_u64().unwrap_or(0);
                k % self.points_per_axis
            })
            .collect()
    }

    /// Whether the set is closed under addition mod `2π`.
    pub fn is_subgroup(&self) -> bool {
        let n = self.points_per_axis;
        let keys: std::collections::HashSet<Vec<u64>> =
            self.elements.iter().map(|e| self.indices(e)).collect();
        if keys.len() != self.elements.len() {
            return false;
        }
        keys.iter().all(|a| {
            keys.iter().all(|b| {
                let sum: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % n).collect();
                keys.contains(&sum)
            })
        })
    }

    /// Sup distance from `theta` to the nearest codebook element.
    pub fn distance_to(&self, theta: &[T]) -> T {
        self.elements
            .iter()
            .map(|e| torus_distance(e, theta))
            .fold(T::infinity(), T::min)
    }
}

impl<T: Real + Serialize> Serialize for LatticeCodebook<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.elements.len()))?;
        for e in &self.elements {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

/// Multi-phase codebook with `N = n + 1` points per axis.
pub fn mp_lattice<T: Real>(n: u64, t: usize) -> Result<LatticeCodebook<T>> {
    if t < 2 {
        return Err(Error::RowBudget { min: 2, got: t });
    }
    let per_axis = n + 1;
    let axes = t - 1;
    let step = T::c(2.0) * T::PI() / T::c(per_axis as f64);
    let total = (per_axis as usize).pow(axes as u32);
    let mut elements = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut e = vec![T::zero(); axes];
        for slot in e.iter_mut().rev() {
            *slot = step * T::c((idx % per_axis as usize) as f64);
            idx /= per_axis as usize;
        }
        elements.push(e);
    }
    Ok(LatticeCodebook {
        t,
        points_per_axis: per_axis,
        elements,
    })
}
