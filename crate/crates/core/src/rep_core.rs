//! Irreducible decompositions of `n`-fold tensor powers.
//!
//! Two models are supported: the multi-phase torus acting diagonally on
//! `C^t` (irreps are one-dimensional, labelled by weight vectors) and `SU(t)`
//! (irreps labelled by Young diagrams with at most `t` rows). All dimensions
//! and multiplicities are exact big integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::factorial;

/// Young diagram with exactly `t` rows (zero padded), stored non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rows: Vec<u64>,
}

impl Partition {
    /// Validates a non-increasing row list. The row budget `t` is the length.
    pub fn new(rows: Vec<u64>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::RowBudget { min: 1, got: 0 });
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::PartitionOrder(rows));
        }
        Ok(Self { rows })
    }

    /// Builds from rows in any order, sorting into canonical form.
    pub fn from_unsorted(mut rows: Vec<u64>) -> Result<Self> {
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(rows)
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn t(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> u64 {
        self.rows.iter().sum()
    }

    /// Rows in non-decreasing order, the arrangement used by the Weyl product.
    pub fn ascending(&self) -> Vec<u64> {
        self.rows.iter().rev().copied().collect()
    }

    /// Column lengths of the diagram.
    pub fn conjugate(&self) -> Vec<u64> {
        let first = self.rows.first().copied().unwrap_or(0);
        (0..first)
            .map(|c| self.rows.iter().filter(|&&r| r > c).count() as u64)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.rows)
    }
}

/// Torus weight `(n_0, ..., n_{t-1})`: how many tensor factors sit in each level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    counts: Vec<u64>,
}

impl WeightVector {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::RowBudget { min: 1, got: 0 });
        }
        Ok(Self { counts })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn t(&self) -> usize {
        self.counts.len()
    }

    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.counts)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Irrep label for either model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Partition(Partition),
    Weight(WeightVector),
}

impl Label {
    pub fn parts(&self) -> &[u64] {
        match self {
            Label::Partition(p) => p.rows(),
            Label::Weight(w) => w.counts(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Partition(p) => p.fmt(f),
            Label::Weight(w) => w.fmt(f),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    #[serde(rename = "mp")]
    MultiPhase,
    #[serde(rename = "su")]
    SpecialUnitary,
}

impl Model {
    pub fn tag(self) -> &'static str {
        match self {
            Model::MultiPhase => "mp",
            Model::SpecialUnitary => "su",
        }
    }

    /// Number of real parameters of the group acting on `C^t`.
    pub fn parameter_count(self, t: usize) -> u64 {
        let t = t as u64;
        match self {
            Model::MultiPhase => t - 1,
            Model::SpecialUnitary => t * t - 1,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mp" | "multiphase" | "multi-phase" => Ok(Model::MultiPhase),
            "su" | "specialunitary" | "special-unitary" => Ok(Model::SpecialUnitary),
            other => Err(Error::Unsupported(format!("unknown model tag {other:?}"))),
        }
    }
}

/// Dimension `l` of the reference system attached to the probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefDim {
    Finite(u64),
    /// Large enough that `l * n_λ >= d_λ` for every block.
    Unbounded,
}

impl fmt::Display for RefDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefDim::Finite(l) => write!(f, "{l}"),
            RefDim::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for RefDim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "unbounded" => Ok(RefDim::Unbounded),
            _ => {
                let l: u64 = s.parse().map_err(|_| Error::OutOfRange {
                    name: "l",
                    value: s.to_string(),
                    range: "positive integer or \"inf\"",
                })?;
                if l == 0 {
                    return Err(Error::ZeroReference);
                }
                Ok(RefDim::Finite(l))
            }
        }
    }
}

impl Serialize for RefDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RefDim::Finite(l) => s.serialize_u64(*l),
            RefDim::Unbounded => s.serialize_str("inf"),
        }
    }
}

/// One isotypic block `U_λ ⊗ C^{n_λ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepEntry {
    pub label: Label,
    pub dim: BigUint,
    pub mult: BigUint,
    /// `min(l * mult, dim)`: the part of the multiplicity space a pure input can reach.
    pub eff_mult: BigUint,
}

impl IrrepEntry {
    /// `d_λ * min(l n_λ, d_λ)`, the block's contribution to the support dimension.
    pub fn support(&self) -> BigUint {
        &self.dim * &self.eff_mult
    }
}

impl Serialize for IrrepEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IrrepEntry", 4)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("dim", &self.dim.to_string())?;
        st.serialize_field("mult", &self.mult.to_string())?;
        st.serialize_field("eff_mult", &self.eff_mult.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub model: Model,
    pub n: u64,
    pub t: usize,
    pub l: RefDim,
    pub entries: Vec<IrrepEntry>,
}

impl Decomposition {
    /// `Σ d_λ n_λ`; equals `t^n` for a complete decomposition.
    pub fn total_dimension(&self) -> BigUint {
        self.entries.iter().map(|e| &e.dim * &e.mult).sum()
    }

    /// `Σ d_λ min(l n_λ, d_λ)`.
    pub fn support_dimension(&self) -> BigUint {
        self.entries.iter().map(IrrepEntry::support).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn find(&self, label: &Label) -> Option<&IrrepEntry> {
        self.entries.iter().find(|e| &e.label == label)
    }
}

/// Calls `visit` for each partition of `n` into at most `t` parts, in
/// lexicographically descending order, without allocating per partition.
pub fn for_each_partition<F: FnMut(&[u64])>(n: u64, t: usize, mut visit: F) -> Result<()> {
    if t == 0 {
        return Err(Error::RowBudget { min: 1, got: 0 });
    }
    let mut rows = vec![0u64; t];
    fill_partition(&mut rows, 0, n, n, &mut visit);
    Ok(())
}

fn fill_partition<F: FnMut(&[u64])>(
    rows: &mut [u64],
    pos: usize,
    remaining: u64,
    max: u64,
    visit: &mut F,
) {
    let slots = (rows.len() - pos) as u64;
    if slots == 1 {
        if remaining <= max {
            rows[pos] = remaining;
            visit(rows);
        }
        return;
    }
    let lo = remaining.div_ceil(slots);
    let hi = max.min(remaining);
    for first in (lo..=hi).rev() {
        rows[pos] = first;
        fill_partition(rows, pos + 1, remaining - first, first, visit);
    }
}

/// All partitions of `n` with at most `t` rows, lexicographically descending.
pub fn enumerate_partitions(n: u64, t: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_partition(n, t, |rows| {
        out.push(Partition {
            rows: rows.to_vec(),
        })
    })?;
    Ok(out)
}

/// Weyl dimension of the `SU(t)` irrep `λ`, with `t` the number of rows.
pub fn weyl_dimension(lambda: &Partition) -> BigUint {
    weyl_dimension_rows(lambda.rows())
}

/// Weyl dimension from non-increasing rows.
///
/// Works on the ascending arrangement `λ'`:
/// `d = Π_{j<k} (k - j + λ'_k - λ'_j) / (k - j)`.
pub(crate) fn weyl_dimension_rows(rows: &[u64]) -> BigUint {
    let t = rows.len();
    let asc = |i: usize| rows[t - 1 - i];

    let mut num_small: Option<u128> = Some(1);
    let mut den: u128 = 1;
    for j in 0..t {
        for k in (j + 1)..t {
            let gap = (k - j) as u128;
            den *= gap;
            let f = gap + (asc(k) - asc(j)) as u128;
            num_small = num_small.and_then(|acc| acc.checked_mul(f));
        }
    }
    if let Some(num) = num_small {
        return BigUint::from(num / den);
    }

    let mut num = BigUint::one();
    for j in 0..t {
        for k in (j + 1)..t {
            num *= (k - j) as u64 + asc(k) - asc(j);
        }
    }
    num / BigUint::from(den)
}

/// Number of standard Young tableaux of shape `λ` (hook-length formula),
/// which is the multiplicity of the `SU(t)` irrep in `(C^t)^{⊗n}`.
pub fn multiplicity_su(lambda: &Partition, n: u64) -> Result<BigUint> {
    if lambda.n() != n {
        return Err(Error::PartitionSum {
            rows: lambda.rows().to_vec(),
            n,
        });
    }
    let cols = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.rows().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = cols[j as usize] - i as u64 - 1;
            hooks *= arm + leg + 1;
        }
    }
    Ok(factorial(n) / hooks)
}

/// Calls `visit` for each weight vector in `C_t^n`, lexicographically descending.
pub fn for_each_weight<F: FnMut(&[u64])>(n: u64, t: usize, mut visit: F) -> Result<()> {
    if t == 0 {
        return Err(Error::RowBudget { min: 1, got: 0 });
    }
    let mut counts = vec![0u64; t];
    fill_weight(&mut counts, 0, n, &mut visit);
    Ok(())
}

fn fill_weight<F: FnMut(&[u64])>(counts: &mut [u64], pos: usize, remaining: u64, visit: &mut F) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        visit(counts);
        return;
    }
    for first in (0..=remaining).rev() {
        counts[pos] = first;
        fill_weight(counts, pos + 1, remaining - first, visit);
    }
}

/// All of `C_t^n`; there are `C(n+t-1, t-1)` of them.
pub fn enumerate_weights(n: u64, t: usize) -> Result<Vec<WeightVector>> {
    let mut out = Vec::new();
    for_each_weight(n, t, |c| out.push(WeightVector { counts: c.to_vec() }))?;
    Ok(out)
}

/// Multinomial coefficient `n! / Π n_j!`: how many computational basis
/// strings carry the weight.
pub fn multiplicity_mp(weight: &WeightVector) -> BigUint {
    let mut acc = BigUint::one();
    let mut seen = 0u64;
    // Running multinomial of the prefix; every intermediate is an integer.
    for &c in weight.counts() {
        for i in 1..=c {
            seen += 1;
            acc *= seen;
            acc /= i;
        }
    }
    acc
}

fn effective(l: RefDim, mult: &BigUint, dim: &BigUint) -> BigUint {
    match l {
        RefDim::Unbounded => dim.clone(),
        RefDim::Finite(l) => (mult * l).min(dim.clone()),
    }
}

/// Full isotypic decomposition of the `n`-fold tensor power for the model.
pub fn decompose(model: Model, n: u64, t: usize, l: RefDim) -> Result<Decomposition> {
    if t < 2 {
        return Err(Error::RowBudget { min: 2, got: t });
    }
    if l == RefDim::Finite(0) {
        return Err(Error::ZeroReference);
    }
    let mut entries = Vec::new();
    match model {
        Model::MultiPhase => {
            for_each_weight(n, t, |c| {
                let w = WeightVector { counts: c.to_vec() };
                let dim = BigUint::one();
                let mult = multiplicity_mp(&w);
                let eff_mult = effective(l, &mult, &dim);
                entries.push(IrrepEntry {
                    label: Label::Weight(w),
                    dim,
                    mult,
                    eff_mult,
                });
            })?;
        }
        Model::SpecialUnitary => {
            let mut err = None;
            for_each_partition(n, t, |rows| {
                let p = Partition {
                    rows: rows.to_vec(),
                };
                let dim = weyl_dimension(&p);
                match multiplicity_su(&p, n) {
                    Ok(mult) => {
                        let eff_mult = effective(l, &mult, &dim);
                        entries.push(IrrepEntry {
                            label: Label::Partition(p),
                            dim,
                            mult,
                            eff_mult,
                        });
                    }
                    Err(e) => err = Some(e),
                }
            })?;
            if let Some(e) = err {
                return Err(e);
            }
        }
    }
    Ok(Decomposition {
        model,
        n,
        t,
        l,
        entries,
    })
}

/// `Σ_{λ ∈ Y_t^n} d_λ²`, streamed without building the decomposition.
pub fn dim_square_sum(n: u64, t: usize) -> Result<BigUint> {
    let mut acc = BigUint::zero();
    for_each_partition(n, t, |rows| {
        let d = weyl_dimension_rows(rows);
        acc += &d * &d;
    })?;
    Ok(acc)
}

/// Number of partitions of `n` into at most `t` parts.
pub fn partition_count(n: u64, t: usize) -> Result<u64> {
    let mut count = 0u64;
    for_each_partition(n, t, |_| count += 1)?;
    Ok(count)
}
