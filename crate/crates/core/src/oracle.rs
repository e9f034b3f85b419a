//! Brute-force dense-matrix oracle.
//!
//! States live on `(C^t)^{⊗n} ⊗ C^{ref}` with the first tensor factor most
//! significant and the reference system last: the amplitude of
//! `|s_1 … s_n⟩ ⊗ |r⟩` sits at `(Σ s_k t^{n-k}) * ref + r`.
//!
//! Nothing here depends on the capacity formulas; the oracle is the
//! independent route those formulas are checked against.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rep_core::{Model, Partition};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Largest Hilbert-space dimension the oracle accepts (`4096`, i.e. 12 qubits).
pub const MAX_DIM: usize = 4096;
/// Largest `n` for the `SU(2)` twirl.
pub const MAX_SU2_N: u64 = 8;

fn system_dim(n: u64, t: usize) -> Result<usize> {
    let mut d: usize = 1;
    for _ in 0..n {
        d = d
            .checked_mul(t)
            .filter(|&d| d <= MAX_DIM)
            .ok_or_else(|| Error::Cap(format!("t^n = {t}^{n} exceeds {MAX_DIM}")))?;
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub n: u64,
    pub t: usize,
    pub ref_dim: usize,
}

impl Dims {
    pub fn new(n: u64, t: usize, ref_dim: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::RowBudget { min: 2, got: t });
        }
        if ref_dim == 0 {
            return Err(Error::ZeroReference);
        }
        system_dim(n, t)?;
        Ok(Self { n, t, ref_dim })
    }

    pub fn system(&self) -> usize {
        self.t.pow(self.n as u32)
    }

    pub fn total(&self) -> usize {
        self.system() * self.ref_dim
    }

    fn check(&self, n: u64, t: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::Dimension {
                expected: n as usize,
                got: self.n as usize,
            });
        }
        if self.t != t {
            return Err(Error::Dimension {
                expected: t,
                got: self.t,
            });
        }
        Ok(())
    }
}

/// Unit vector on the probe (and optional reference).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: DVector<C64>,
    dims: Dims,
}

impl PureState {
    pub fn new(amps: DVector<C64>, dims: Dims) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::Dimension {
                expected: dims.total(),
                got: amps.len(),
            });
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amps, dims })
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amps.dotc(&other.amps)
    }

    pub fn projector(&self) -> DensityOperator {
        DensityOperator {
            matrix: &self.amps * self.amps.adjoint(),
            dims: self.dims,
        }
    }
}

/// Density matrix with its tensor layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: DMatrix<C64>,
    dims: Dims,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity, all within `1e-10`.
    pub fn new(matrix: DMatrix<C64>, dims: Dims) -> Result<Self> {
        let d = dims.total();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::Dimension {
                expected: d,
                got: matrix.nrows(),
            });
        }
        let herm = (&matrix - matrix.adjoint()).camax();
        if herm > 1e-10 {
            return Err(Error::InvalidDensity(format!("not Hermitian ({herm:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let rho = Self { matrix, dims };
        if let Some(min) = rho.spectrum().into_iter().reduce(f64::min) {
            if min < -1e-10 {
                return Err(Error::InvalidDensity(format!("eigenvalue {min:e}")));
            }
        }
        Ok(rho)
    }

    /// Maximally mixed state.
    pub fn maximally_mixed(dims: Dims) -> Self {
        let d = dims.total();
        Self {
            matrix: DMatrix::identity(d, d) / C64::from(d as f64),
            dims,
        }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Eigenvalues, computed block by block over the connected components of
    /// the non-zero pattern.
    pub fn spectrum(&self) -> Vec<f64> {
        let d = self.matrix.nrows();
        let mut parent: Vec<usize> = (0..d).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for j in 0..d {
            for i in (j + 1)..d {
                if self.matrix[(i, j)] != ZERO || self.matrix[(j, i)] != ZERO {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..d {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        let mut out = Vec::with_capacity(d);
        for idx in groups.values() {
            let k = idx.len();
            let block = DMatrix::from_fn(k, k, |a, b| {
                let x = self.matrix[(idx[a], idx[b])];
                let y = self.matrix[(idx[b], idx[a])].conj();
                (x + y) * 0.5
            });
            out.extend(block.symmetric_eigenvalues().iter().copied());
        }
        out
    }

    /// Largest entry of `[ρ, U]` in absolute value.
    pub fn commutator_norm(&self, unitary: &DMatrix<C64>) -> f64 {
        (&self.matrix * unitary - unitary * &self.matrix).camax()
    }
}

/// `diag(1, e^{iθ_1}, …, e^{iθ_{t-1}})`.
pub fn mp_unitary(theta: &[f64], t: usize) -> Result<DMatrix<C64>> {
    if theta.len() + 1 != t {
        return Err(Error::Dimension {
            expected: t - 1,
            got: theta.len(),
        });
    }
    let mut u = DMatrix::identity(t, t);
    for (j, &th) in theta.iter().enumerate() {
        u[(j + 1, j + 1)] = C64::from_polar(1.0, th);
    }
    Ok(u)
}

/// Applies `u` to tensor factor `site` of every column of `m`.
fn apply_site(m: &mut DMatrix<C64>, u: &DMatrix<C64>, dims: Dims, site: u64) {
    let t = dims.t;
    let stride = t.pow((dims.n - 1 - site) as u32) * dims.ref_dim;
    let block = stride * t;
    let mut buf = vec![ZERO; t];
    for mut col in m.column_iter_mut() {
        let len = col.len();
        for base in (0..len).step_by(block) {
            for off in 0..stride {
                for (a, slot) in buf.iter_mut().enumerate() {
                    *slot = col[base + off + a * stride];
                }
                for a in 0..t {
                    let mut acc = ZERO;
                    for (b, x) in buf.iter().enumerate() {
                        acc += u[(a, b)] * x;
                    }
                    col[base + off + a * stride] = acc;
                }
            }
        }
    }
}

fn check_local(u: &DMatrix<C64>, t: usize) -> Result<()> {
    if u.nrows() != t || u.ncols() != t {
        return Err(Error::Dimension {
            expected: t,
            got: u.nrows(),
        });
    }
    Ok(())
}

/// `(U^{⊗n} ⊗ I_ref) |ψ⟩`.
pub fn tensor_power_apply(u: &DMatrix<C64>, n: u64, psi: &PureState) -> Result<PureState> {
    psi.dims.check(n, u.nrows())?;
    check_local(u, psi.dims.t)?;
    let mut m = DMatrix::from_column_slice(psi.amps.len(), 1, psi.amps.as_slice());
    for site in 0..n {
        apply_site(&mut m, u, psi.dims, site);
    }
    Ok(PureState {
        amps: m.column(0).into_owned(),
        dims: psi.dims,
    })
}

/// `(U^{⊗n} ⊗ I) ρ (U^{⊗n} ⊗ I)†`.
pub fn tensor_power_conjugate(u: &DMatrix<C64>, rho: &DensityOperator) -> Result<DensityOperator> {
    check_local(u, rho.dims.t)?;
    let mut m = rho.matrix.clone();
    for site in 0..rho.dims.n {
        apply_site(&mut m, u, rho.dims, site);
    }
    let mut m = m.adjoint();
    for site in 0..rho.dims.n {
        apply_site(&mut m, u, rho.dims, site);
    }
    Ok(DensityOperator {
        matrix: m.adjoint(),
        dims: rho.dims,
    })
}

/// Full `U^{⊗n} ⊗ I_ref` as a dense matrix (for commutation checks).
pub fn tensor_power_matrix(u: &DMatrix<C64>, dims: Dims) -> Result<DMatrix<C64>> {
    check_local(u, dims.t)?;
    let d = dims.total();
    let mut m = DMatrix::identity(d, d);
    for site in 0..dims.n {
        apply_site(&mut m, u, dims, site);
    }
    Ok(m)
}

fn digits(mut s: usize, n: u64, t: usize) -> Vec<usize> {
    let mut out = vec![0; n as usize];
    for slot in out.iter_mut().rev() {
        *slot = s % t;
        s /= t;
    }
    out
}

fn index_of(digits: &[usize], t: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * t + d)
}

/// Equal superposition of one sorted basis string per weight vector. For
/// `t = 2` this is `Σ_j |0^j 1^{n-j}⟩ / sqrt(n+1)`.
pub fn weight_superposition_state(n: u64, t: usize) -> Result<PureState> {
    let dims = Dims::new(n, t, 1)?;
    let mut amps = DVector::from_element(dims.total(), ZERO);
    let mut strings = Vec::new();
    crate::rep_core::for_each_weight(n, t, |w| {
        let s: Vec<usize> = w
            .iter()
            .enumerate()
            .flat_map(|(level, &c)| std::iter::repeat_n(level, c as usize))
            .collect();
        strings.push(index_of(&s, t));
    })?;
    let a = C64::from(1.0 / (strings.len() as f64).sqrt());
    for s in strings {
        amps[s] = a;
    }
    PureState::new(amps, dims)
}

/// `Σ_{j=0}^{n} |0^j 1^{n-j}⟩ / sqrt(n+1)`.
pub fn bs4_state(n: u64) -> Result<PureState> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: "0".into(),
            range: "[1, 12]",
        });
    }
    weight_superposition_state(n, 2)
}

/// `(|0…0⟩ + |1…1⟩) / sqrt 2`.
pub fn noon_state(n: u64) -> Result<PureState> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: "0".into(),
            range: "[1, 12]",
        });
    }
    let dims = Dims::new(n, 2, 1)?;
    let mut amps = DVector::from_element(dims.total(), ZERO);
    let a = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    amps[0] = a;
    amps[dims.total() - 1] = a;
    PureState::new(amps, dims)
}

/// Torus average over an `N`-point-per-axis grid. Matrix elements of the
/// conjugated state are trigonometric polynomials of per-axis degree `≤ n`,
/// so any `N > n` reproduces the Haar average exactly.
pub fn mp_twirl_grid(
    rho: &DensityOperator,
    n: u64,
    t: usize,
    points: u64,
) -> Result<DensityOperator> {
    rho.dims.check(n, t)?;
    if points == 0 {
        return Err(Error::OutOfRange {
            name: "points",
            value: "0".into(),
            range: "[1, inf)",
        });
    }
    let dims = rho.dims;
    let sys = dims.system();
    let weights: Vec<Vec<i64>> = (0..sys)
        .map(|s| {
            let mut w = vec![0i64; t];
            for d in digits(s, n, t) {
                w[d] += 1;
            }
            w
        })
        .collect();

    // avg[Δ + n] = (1/N) Σ_k e^{2πi k Δ / N}; entries at roundoff level are
    // vanishing character sums and are flushed to zero.
    let nn = n as i64;
    let avg: Vec<C64> = (-nn..=nn)
        .map(|delta| {
            let s: C64 = (0..points)
                .map(|k| {
                    C64::from_polar(1.0, 2.0 * PI * (k as f64) * (delta as f64) / points as f64)
                })
                .sum();
            let s = s / points as f64;
            if s.norm() < 1e-13 {
                ZERO
            } else {
                s
            }
        })
        .collect();

    let r = dims.ref_dim;
    let mut out = rho.matrix.clone();
    for sy in 0..sys {
        for sx in 0..sys {
            let mut f = ONE;
            for (a, b) in weights[sx].iter().zip(&weights[sy]).skip(1) {
                f *= avg[(a - b + nn) as usize];
            }
            if f == ONE {
                continue;
            }
            for ry in 0..r {
                for rx in 0..r {
                    let (i, j) = (sx * r + rx, sy * r + ry);
                    out[(i, j)] = if f == ZERO { ZERO } else { out[(i, j)] * f };
                }
            }
        }
    }
    Ok(DensityOperator { matrix: out, dims })
}

/// Haar twirl over the multi-phase torus, via the `(n+1)^{t-1}` grid.
pub fn mp_twirl(rho: &DensityOperator, n: u64, t: usize) -> Result<DensityOperator> {
    mp_twirl_grid(rho, n, t, n + 1)
}

/// One isotypic block of `(C^2)^{⊗n}` in the Schur-aligned basis.
#[derive(Debug, Clone)]
pub struct SchurBlock {
    pub label: Partition,
    pub dim: usize,
    pub mult: usize,
    /// First column of the block in [`SchurBasis::matrix`]; column
    /// `offset + m * mult + a` holds magnetic index `m` (from the top) and
    /// multiplicity index `a`.
    pub offset: usize,
}

/// Orthonormal basis of `(C^2)^{⊗n}` adapted to `U_λ ⊗ C^{n_λ}`.
#[derive(Debug, Clone)]
pub struct SchurBasis {
    pub n: u64,
    pub blocks: Vec<SchurBlock>,
    matrix: DMatrix<C64>,
}

impl SchurBasis {
    /// Columns are the basis vectors.
    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn column(&self, block: &SchurBlock, m: usize, a: usize) -> usize {
        block.offset + m * block.mult + a
    }
}

/// Builds the Schur basis: highest-weight vectors from the total-spin
/// Casimir restricted to each weight space, then lowering-operator orbits.
pub fn su2_schur_basis(n: u64) -> Result<SchurBasis> {
    if n > MAX_SU2_N {
        return Err(Error::Cap(format!(
            "SU(2) oracle needs n <= {MAX_SU2_N}, got {n}"
        )));
    }
    let d = 1usize << n;
    let nu = n as usize;
    // Qubit k is bit (n-1-k); bit value 0 is spin up.
    let popcount = |s: usize| s.count_ones() as usize;
    let jz = |s: usize| nu as f64 / 2.0 - popcount(s) as f64;

    // J² = Jz² + (J+J- + J-J+)/2
    let mut jp = DMatrix::<f64>::zeros(d, d);
    for s in 0..d {
        for bit in 0..nu {
            if s & (1 << bit) != 0 {
                jp[(s & !(1 << bit), s)] = 1.0;
            }
        }
    }
    let jm = jp.transpose();
    let mut casimir = (&jp * &jm + &jm * &jp) * 0.5;
    for s in 0..d {
        casimir[(s, s)] += jz(s) * jz(s);
    }

    let lower = |v: &DVector<f64>| -> DVector<f64> {
        let mut out = DVector::zeros(d);
        for s in 0..d {
            if v[s] == 0.0 {
                continue;
            }
            for bit in 0..nu {
                if s & (1 << bit) == 0 {
                    out[s | (1 << bit)] += v[s];
                }
            }
        }
        out
    };

    let mut blocks = Vec::new();
    let mut columns: Vec<DVector<f64>> = Vec::with_capacity(d);
    for k in 0..=(nu / 2) {
        let j = nu as f64 / 2.0 - k as f64;
        let target = j * (j + 1.0);
        let sector: Vec<usize> = (0..d).filter(|&s| popcount(s) == k).collect();
        let sub = DMatrix::from_fn(sector.len(), sector.len(), |a, b| {
            casimir[(sector[a], sector[b])]
        });
        let eig = sub.symmetric_eigen();
        let mut highest: Vec<DVector<f64>> = Vec::new();
        for (idx, &ev) in eig.eigenvalues.iter().enumerate() {
            if (ev - target).abs() < 1e-6 {
                let mut v = DVector::zeros(d);
                for (a, &s) in sector.iter().enumerate() {
                    v[s] = eig.eigenvectors[(a, idx)];
                }
                highest.push(v);
            }
        }
        let mult = highest.len();
        let dim = nu - 2 * k + 1;
        let offset = columns.len();
        // orbit[m][a]
        let mut layer = highest;
        for step in 0..dim {
            let m = j - step as f64;
            for v in &layer {
                columns.push(v.clone());
            }
            if step + 1 < dim {
                let coef = (j * (j + 1.0) - m * (m - 1.0)).sqrt();
                layer = layer.iter().map(|v| lower(v) / coef).collect();
            }
        }
        blocks.push(SchurBlock {
            label: Partition::new(vec![(nu - k) as u64, k as u64])?,
            dim,
            mult,
            offset,
        });
    }
    if columns.len() != d {
        return Err(Error::InvalidDensity(format!(
            "Schur basis has {} columns, expected {d}",
            columns.len()
        )));
    }
    let matrix = DMatrix::from_fn(d, d, |r, c| C64::from(columns[c][r]));
    Ok(SchurBasis { n, blocks, matrix })
}

/// `(A ⊗ I_r) M` for `A` acting on the system factor.
fn left_kron(a: &DMatrix<C64>, m: &DMatrix<C64>, r: usize) -> DMatrix<C64> {
    if r == 1 {
        return a * m;
    }
    let sys = a.nrows();
    let at = a.transpose();
    let mut out = DMatrix::zeros(m.nrows(), m.ncols());
    for c in 0..m.ncols() {
        // Column index s*r + rr viewed as an r x sys column-major matrix.
        let v = DMatrix::from_column_slice(r, sys, m.column(c).as_slice());
        let w = v * &at;
        out.column_mut(c).copy_from_slice(w.as_slice());
    }
    out
}

/// `(A ⊗ I) M (A ⊗ I)†`.
fn kron_conjugate(a: &DMatrix<C64>, m: &DMatrix<C64>, r: usize) -> DMatrix<C64> {
    let left = left_kron(a, m, r);
    left_kron(a, &left.adjoint(), r).adjoint()
}

/// Haar twirl over `SU(2)` acting on `n` qubits (reference untouched):
/// `T(ρ) = Σ_λ (I_{U_λ}/d_λ) ⊗ Tr_{U_λ}[P_λ ρ P_λ]` in the Schur basis.
pub fn su2_twirl(rho: &DensityOperator, n: u64) -> Result<DensityOperator> {
    rho.dims.check(n, 2)?;
    let basis = su2_schur_basis(n)?;
    su2_twirl_with(&basis, rho)
}

/// [`su2_twirl`] with a precomputed basis.
pub fn su2_twirl_with(basis: &SchurBasis, rho: &DensityOperator) -> Result<DensityOperator> {
    rho.dims.check(basis.n, 2)?;
    let r = rho.dims.ref_dim;
    let w = basis.matrix();
    let in_schur = kron_conjugate(&w.adjoint(), &rho.matrix, r);
    let mut out = DMatrix::zeros(in_schur.nrows(), in_schur.ncols());
    for b in &basis.blocks {
        let idx = |m: usize, a: usize, rr: usize| basis.column(b, m, a) * r + rr;
        let side = b.mult * r;
        let mut sigma = DMatrix::<C64>::zeros(side, side);
        for m in 0..b.dim {
            for (a, ra) in (0..b.mult).flat_map(|a| (0..r).map(move |x| (a, x))) {
                for (c, rc) in (0..b.mult).flat_map(|a| (0..r).map(move |x| (a, x))) {
                    sigma[(a * r + ra, c * r + rc)] += in_schur[(idx(m, a, ra), idx(m, c, rc))];
                }
            }
        }
        sigma /= C64::from(b.dim as f64);
        for m in 0..b.dim {
            for a in 0..b.mult {
                for ra in 0..r {
                    for c in 0..b.mult {
                        for rc in 0..r {
                            out[(idx(m, a, ra), idx(m, c, rc))] = sigma[(a * r + ra, c * r + rc)];
                        }
                    }
                }
            }
        }
    }
    Ok(DensityOperator {
        matrix: kron_conjugate(w, &out, r),
        dims: rho.dims,
    })
}

/// Haar-random `SU(2)` element from a normalized Gaussian quaternion.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<C64> {
    let mut q = [0.0f64; 4];
    for x in q.iter_mut() {
        *x = rng.sample(StandardNormal);
    }
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = C64::new(q[0], q[1]) / norm;
    let b = C64::new(q[2], q[3]) / norm;
    Matrix2::new(a, -b.conj(), b, a.conj())
}

fn to_dmatrix(u: &Matrix2<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |i, j| u[(i, j)])
}

/// Monte-Carlo estimate of the `SU(2)` twirl with `samples` Haar draws.
///
/// Draws come in groups of four, `U`, `U·iX`, `U·iY`, `U·iZ` for one Haar
/// `U`. Each draw is still Haar distributed, so the estimate is unbiased,
/// and the Pauli symmetrization removes much of the sampling noise.
pub fn su2_twirl_monte_carlo<R: Rng + ?Sized>(
    rho: &DensityOperator,
    n: u64,
    samples: usize,
    rng: &mut R,
) -> Result<DensityOperator> {
    rho.dims.check(n, 2)?;
    let i = C64::i();
    let paulis = [
        Matrix2::new(ONE, ZERO, ZERO, ONE),
        Matrix2::new(ZERO, i, i, ZERO),
        Matrix2::new(ZERO, ONE, -ONE, ZERO),
        Matrix2::new(i, ZERO, ZERO, -i),
    ];
    let mut acc = DMatrix::zeros(rho.matrix.nrows(), rho.matrix.ncols());
    let mut u = Matrix2::identity();
    for k in 0..samples {
        if k % 4 == 0 {
            u = haar_su2(rng);
        }
        let v = to_dmatrix(&(u * paulis[k % 4]));
        acc += tensor_power_conjugate(&v, rho)?.matrix;
    }
    acc /= C64::from(samples as f64);
    Ok(DensityOperator {
        matrix: acc,
        dims: rho.dims,
    })
}

/// `½ Σ |eig(ρ - σ)|`.
pub fn trace_distance(a: &DensityOperator, b: &DensityOperator) -> f64 {
    let diff = a.matrix() - b.matrix();
    let herm = (&diff + diff.adjoint()) * C64::from(0.5);
    0.5 * herm
        .symmetric_eigenvalues()
        .iter()
        .map(|x| x.abs())
        .sum::<f64>()
}

/// Optimal `SU(2)` input: per-block maximally entangled states on
/// `U_λ ⊗ C^{d_λ}` (multiplicity slot 0 tensored with the reference),
/// weighted by `d_λ / sqrt(Σ d²)`. The reference has dimension `max d_λ`.
pub fn bn1_state_su2(n: u64) -> Result<PureState> {
    let basis = su2_schur_basis(n)?;
    bn1_state_with(&basis)
}

fn bn1_state_with(basis: &SchurBasis) -> Result<PureState> {
    let r = basis.blocks.iter().map(|b| b.dim).max().unwrap_or(1);
    let dims = Dims::new(basis.n, 2, r)?;
    let norm2: f64 = basis.blocks.iter().map(|b| (b.dim * b.dim) as f64).sum();
    let mut amps = DVector::from_element(dims.total(), ZERO);
    let w = basis.matrix();
    for b in &basis.blocks {
        // d/sqrt(Σd²) times 1/sqrt(d) for the maximally entangled pair.
        let coef = (b.dim as f64).sqrt() / norm2.sqrt();
        for m in 0..b.dim {
            let col = w.column(basis.column(b, m, 0));
            for (s, x) in col.iter().enumerate() {
                amps[s * r + m] += x * coef;
            }
        }
    }
    PureState::new(amps, dims)
}

/// `‖(P_λ ⊗ I)ψ‖²` for each `SU(2)` isotypic block.
pub fn isotypic_weights(basis: &SchurBasis, psi: &PureState) -> Result<Vec<(Partition, f64)>> {
    psi.dims.check(basis.n, 2)?;
    let r = psi.dims.ref_dim;
    let w = basis.matrix();
    let mut out = Vec::new();
    for b in &basis.blocks {
        let mut acc = 0.0;
        for m in 0..b.dim {
            for a in 0..b.mult {
                let col = w.column(basis.column(b, m, a));
                for rr in 0..r {
                    let amp: C64 = col
                        .iter()
                        .enumerate()
                        .map(|(s, x)| x.conj() * psi.amps[s * r + rr])
                        .sum();
                    acc += amp.norm_sqr();
                }
            }
        }
        out.push((b.label.clone(), acc));
    }
    Ok(out)
}

/// `-Σ λ log λ` over eigenvalues above `1e-12`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
        return Err(Error::InvalidDensity(format!("trace {tr}")));
    }
    Ok(rho
        .spectrum()
        .into_iter()
        .filter(|&x| x > 1e-12)
        .map(|x| -x * x.ln())
        .sum())
}

/// Group elements to discriminate.
#[derive(Debug, Clone, PartialEq)]
pub enum Codebook {
    /// Phase vectors of length `t - 1`.
    Phases(Vec<Vec<f64>>),
    Su2(Vec<Matrix2<C64>>),
}

impl Codebook {
    pub fn len(&self) -> usize {
        match self {
            Codebook::Phases(p) => p.len(),
            Codebook::Su2(u) => u.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self, t: usize) -> Result<()> {
        match self {
            Codebook::Phases(ps) => {
                for p in ps {
                    if p.len() + 1 != t {
                        return Err(Error::Dimension {
                            expected: t - 1,
                            got: p.len(),
                        });
                    }
                    if let Some(bad) = p
                        .iter()
                        .find(|x| !(**x >= -1e-10 && **x < 2.0 * PI + 1e-10))
                    {
                        return Err(Error::OutOfRange {
                            name: "phase",
                            value: bad.to_string(),
                            range: "[0, 2π)",
                        });
                    }
                }
            }
            Codebook::Su2(us) => {
                if t != 2 {
                    return Err(Error::Unsupported("SU(2) codebook needs t = 2".into()));
                }
                for u in us {
                    let unit = (u * u.adjoint() - Matrix2::identity()).camax();
                    let det = u.determinant();
                    if unit > 1e-10 || (det - ONE).norm() > 1e-10 {
                        return Err(Error::Unsupported(format!(
                            "codebook element is not in SU(2) (|UU†-I| = {unit:e}, det = {det})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn unitary(&self, j: usize, t: usize) -> Result<DMatrix<C64>> {
        match self {
            Codebook::Phases(p) => mp_unitary(&p[j], t),
            Codebook::Su2(u) => Ok(to_dmatrix(&u[j])),
        }
    }
}

impl From<&crate::distinguish::LatticeCodebook<f64>> for Codebook {
    fn from(l: &crate::distinguish::LatticeCodebook<f64>) -> Self {
        Codebook::Phases(l.elements.clone())
    }
}

/// Encoded states `f(g_j)|ψ⟩`.
pub fn codebook_states(
    codebook: &Codebook,
    psi: &PureState,
    n: u64,
    t: usize,
) -> Result<Vec<PureState>> {
    psi.dims.check(n, t)?;
    codebook.validate(t)?;
    (0..codebook.len())
        .map(|j| tensor_power_apply(&codebook.unitary(j, t)?, n, psi))
        .collect()
}

/// Square-root measurement `Π_j = S^{-1/2}|ψ_j⟩⟨ψ_j|S^{-1/2}` with
/// `S = Σ|ψ_j⟩⟨ψ_j|` inverted on its support, plus the junk outcome
/// `I - Σ Π_j`.
#[derive(Debug, Clone)]
pub struct SrmPovm {
    pub elements: Vec<DMatrix<C64>>,
    pub junk: DMatrix<C64>,
}

pub fn srm_povm(states: &[PureState]) -> SrmPovm {
    let d = states.first().map(|s| s.amps.len()).unwrap_or(0);
    let mut s = DMatrix::<C64>::zeros(d, d);
    for st in states {
        s += &st.amps * st.amps.adjoint();
    }
    let eig = s.symmetric_eigen();
    let mut inv_sqrt = DMatrix::<C64>::zeros(d, d);
    for (k, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev > 1e-12 {
            let v = eig.eigenvectors.column(k);
            inv_sqrt += (v * v.adjoint()) * C64::from(1.0 / ev.sqrt());
        }
    }
    let elements: Vec<DMatrix<C64>> = states
        .iter()
        .map(|st| {
            let v = &inv_sqrt * &st.amps;
            &v * v.adjoint()
        })
        .collect();
    let mut junk = DMatrix::identity(d, d);
    for e in &elements {
        junk -= e;
    }
    SrmPovm { elements, junk }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SrmOutcome {
    pub codebook_size: usize,
    pub success_prob: f64,
    pub min_gram_eigenvalue: f64,
    /// Gram matrix is singular below `1e-12`: the states are linearly
    /// dependent, so the SRM cannot be perfect. Reported, not an error.
    pub degenerate: bool,
}

impl SrmOutcome {
    pub fn error_prob(&self) -> f64 {
        1.0 - self.success_prob
    }
}

/// Average SRM success `(1/M) Σ_j Tr[σ_j Π_j] = (1/M) Σ_j (G^{1/2})_{jj}²`,
/// with `G` the Gram matrix of the encoded states.
pub fn srm_discrimination(
    codebook: &Codebook,
    psi: &PureState,
    n: u64,
    t: usize,
) -> Result<SrmOutcome> {
    if codebook.is_empty() {
        return Err(Error::OutOfRange {
            name: "M",
            value: "0".into(),
            range: "[1, inf)",
        });
    }
    let states = codebook_states(codebook, psi, n, t)?;
    let m = states.len();
    let gram = DMatrix::from_fn(m, m, |i, j| states[i].inner(&states[j]));
    let eig = gram.symmetric_eigen();
    let min_eig = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    // Round-off eigenvalues of a singular Gram matrix would otherwise add
    // sqrt(1e-16) = 1e-8 to the diagonal of the square root.
    let cutoff = 1e-12 * eig.eigenvalues.amax().max(1.0);
    let mut success = 0.0;
    for j in 0..m {
        let diag: f64 = eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &ev)| ev > cutoff)
            .map(|(k, &ev)| ev.sqrt() * eig.eigenvectors[(j, k)].norm_sqr())
            .sum();
        success += diag * diag;
    }
    Ok(SrmOutcome {
        codebook_size: m,
        success_prob: (success / m as f64).clamp(0.0, 1.0),
        min_gram_eigenvalue: min_eig,
        degenerate: min_eig < 1e-12,
    })
}

/// `S(T_G(|ψ⟩⟨ψ|))`: the Haar-prior mutual information of the input.
pub fn empirical_mi(psi: &PureState, model: Model, n: u64, t: usize) -> Result<f64> {
    let rho = psi.projector();
    let twirled = match model {
        Model::MultiPhase => mp_twirl(&rho, n, t)?,
        Model::SpecialUnitary => {
            if t != 2 {
                return Err(Error::Unsupported(format!(
                    "SU(t) twirl is only available for t = 2, got {t}"
                )));
            }
            su2_twirl(&rho, n)?
        }
    };
    von_neumann_entropy(&twirled)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateTag {
    Bs4,
    Noon,
    Bn1,
}

impl StateTag {
    pub fn tag(self) -> &'static str {
        match self {
            StateTag::Bs4 => "bs4",
            StateTag::Noon => "noon",
            StateTag::Bn1 => "bn1",
        }
    }
}

impl std::str::FromStr for StateTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bs4" => Ok(StateTag::Bs4),
            "noon" => Ok(StateTag::Noon),
            "bn1" => Ok(StateTag::Bn1),
            _ => Err(Error::Unsupported(format!("unknown state {s:?}"))),
        }
    }
}

/// One simulated run, as serialized by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub model: Model,
    pub n: u64,
    pub t: usize,
    pub state_tag: &'static str,
    pub codebook_tag: &'static str,
    pub seed: u64,
    pub success_prob: Option<f64>,
    pub entropy_nats: f64,
}

/// Builds the named state for the model.
pub fn prepare_state(model: Model, state: StateTag, n: u64, t: usize) -> Result<PureState> {
    match (model, state) {
        (Model::MultiPhase, StateTag::Bs4) if t == 2 => bs4_state(n),
        // The flat weight superposition is the optimal multi-phase input.
        (Model::MultiPhase, StateTag::Bs4 | StateTag::Bn1) => weight_superposition_state(n, t),
        (_, StateTag::Noon) if t == 2 => noon_state(n),
        (Model::SpecialUnitary, StateTag::Bn1) if t == 2 => bn1_state_su2(n),
        (Model::SpecialUnitary, StateTag::Bs4) if t == 2 => bs4_state(n),
        _ => Err(Error::Unsupported(format!(
            "state {} for model {model} with t = {t}",
            state.tag()
        ))),
    }
}

/// Checks the dense-oracle caps for a model.
pub fn check_caps(model: Model, n: u64, t: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: "0".into(),
            range: "[1, cap]",
        });
    }
    match model {
        Model::SpecialUnitary if t != 2 => Err(Error::Unsupported(format!(
            "SU(t) oracle only supports t = 2, got {t}"
        ))),
        Model::SpecialUnitary if n > MAX_SU2_N => Err(Error::Cap(format!(
            "SU(2) oracle needs n <= {MAX_SU2_N}, got {n}"
        ))),
        _ => system_dim(n, t).map(|_| ()),
    }
}

/// Runs one oracle experiment: twirled entropy of the input and, for the
/// multi-phase lattice codebook, the SRM success probability.
pub fn run_experiment(
    model: Model,
    n: u64,
    t: usize,
    state: StateTag,
    lattice: bool,
    seed: u64,
) -> Result<ExperimentResult> {
    check_caps(model, n, t)?;
    let psi = prepare_state(model, state, n, t)?;
    let entropy = empirical_mi(&psi, model, n, t)?;
    let success = if lattice {
        if model != Model::MultiPhase {
            return Err(Error::Unsupported(
                "lattice codebook is only defined for the multi-phase model".into(),
            ));
        }
        let code = crate::distinguish::mp_lattice::<f64>(n, t)?;
        Some(srm_discrimination(&Codebook::from(&code), &psi, n, t)?.success_prob)
    } else {
        None
    };
    Ok(ExperimentResult {
        model,
        n,
        t,
        state_tag: state.tag(),
        codebook_tag: if lattice { "lattice" } else { "none" },
        seed,
        success_prob: success,
        entropy_nats: entropy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn unitary_examples() {
        assert_eq!(mp_unitary(&[0.0, 0.0], 3).unwrap(), DMatrix::identity(3, 3));
        let u = mp_unitary(&[PI], 2).unwrap();
        assert!((u[(1, 1)] - c(-1.0, 0.0)).norm() < 1e-15);
        let u = mp_unitary(&[PI / 2.0, PI], 3).unwrap();
        assert!((u[(1, 1)] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((u[(2, 2)] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(mp_unitary(&[0.0], 3).is_err());
    }

    #[test]
    fn tensor_apply_examples() {
        let psi = bs4_state(3).unwrap();
        let id = DMatrix::identity(2, 2);
        assert_eq!(tensor_power_apply(&id, 3, &psi).unwrap(), psi);

        let dims = Dims::new(2, 2, 1).unwrap();
        let mut amps = DVector::from_element(4, ZERO);
        amps[3] = ONE;
        let eleven = PureState::new(amps, dims).unwrap();
        let z = mp_unitary(&[PI], 2).unwrap();
        let out = tensor_power_apply(&z, 2, &eleven).unwrap();
        assert!((out.amplitudes()[3] - ONE).norm() < 1e-15);

        // The bs4 strings 0^j 1^{3-j} pick up e^{i(3-j)θ}; ordered by the number
        // of ones: (1, e^{iθ}, e^{2iθ}, e^{3iθ}) / 2.
        let th = 0.7;
        let u = mp_unitary(&[th], 2).unwrap();
        let out = tensor_power_apply(&u, 3, &psi).unwrap();
        for ones in 0..4usize {
            let idx = (1usize << ones) - 1;
            let want = C64::from_polar(0.5, th * ones as f64);
            assert!((out.amplitudes()[idx] - want).norm() < 1e-14);
        }
        assert!((out.amplitudes().norm() - 1.0).abs() < 1e-12);
        assert!(tensor_power_apply(&u, 2, &psi).is_err());
    }

    #[test]
    fn state_examples() {
        let b1 = bs4_state(1).unwrap();
        let n1 = noon_state(1).unwrap();
        assert!((b1.inner(&n1).norm() - 1.0).abs() < 1e-14);

        let b2 = bs4_state(2).unwrap();
        let a = 1.0 / 3f64.sqrt();
        for (i, want) in [a, a, 0.0, a].into_iter().enumerate() {
            assert!((b2.amplitudes()[i].re - want).abs() < 1e-15);
        }
        let n3 = noon_state(3).unwrap();
        assert!((n3.amplitudes()[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((n3.amplitudes()[7].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(bs4_state(0).is_err());
    }

    #[test]
    fn noon_bs4_overlap() {
        // Inner-product oracle: both share |0^n> and |1^n>, so
        // |<noon|bs4>|² = (2 / (sqrt 2 sqrt(n+1)))² = 2/(n+1).
        for n in 1..=8u64 {
            let ov = noon_state(n)
                .unwrap()
                .inner(&bs4_state(n).unwrap())
                .norm_sqr();
            assert!((ov - 2.0 / (n as f64 + 1.0)).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn density_validation() {
        let dims = Dims::new(1, 2, 1).unwrap();
        let bad =
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(DensityOperator::new(bad, dims).is_err());
        let neg = DMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), ZERO, ZERO, c(-0.5, 0.0)]);
        assert!(DensityOperator::new(neg, dims).is_err());
        let ok = DMatrix::from_row_slice(2, 2, &[c(0.75, 0.0), ZERO, ZERO, c(0.25, 0.0)]);
        let rho = DensityOperator::new(ok, dims).unwrap();
        let h = von_neumann_entropy(&rho).unwrap();
        assert!((h - (0.75 * (4.0f64 / 3.0).ln() + 0.25 * 4f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn entropy_examples() {
        assert!(
            von_neumann_entropy(&bs4_state(3).unwrap().projector())
                .unwrap()
                .abs()
                < 1e-12
        );
        let mixed = DensityOperator::maximally_mixed(Dims::new(3, 2, 1).unwrap());
        assert!((von_neumann_entropy(&mixed).unwrap() - 8f64.ln()).abs() < 1e-12);
        let mut scaled = mixed.clone();
        scaled.matrix *= C64::from(2.0);
        assert!(von_neumann_entropy(&scaled).is_err());
    }

    #[test]
    fn mp_twirl_examples() {
        let dims = Dims::new(3, 2, 1).unwrap();
        let mut amps = DVector::from_element(8, ZERO);
        amps[0] = ONE;
        let fixed = PureState::new(amps, dims).unwrap().projector();
        let tw = mp_twirl(&fixed, 3, 2).unwrap();
        assert!((tw.matrix() - fixed.matrix()).camax() < 1e-15);

        for n in 1..=6 {
            let tw = mp_twirl(&bs4_state(n).unwrap().projector(), n, 2).unwrap();
            let h = von_neumann_entropy(&tw).unwrap();
            assert!((h - ((n + 1) as f64).ln()).abs() < 1e-9);
            let tw = mp_twirl(&noon_state(n).unwrap().projector(), n, 2).unwrap();
            let h = von_neumann_entropy(&tw).unwrap();
            assert!((h - 2f64.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn mp_twirl_commutes_and_grid_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 3;
        let t = 3;
        let rho = weight_superposition_state(n, t).unwrap().projector();
        let tw = mp_twirl(&rho, n, t).unwrap();
        assert!((tw.trace() - ONE).norm() < 1e-12);
        for _ in 0..20 {
            let th: Vec<f64> = (0..2).map(|_| rng.random::<f64>() * 2.0 * PI).collect();
            let u = tensor_power_matrix(&mp_unitary(&th, t).unwrap(), tw.dims()).unwrap();
            assert!(tw.commutator_norm(&u) < 1e-9);
        }
        let finer = mp_twirl_grid(&rho, n, t, n + 2).unwrap();
        assert!((finer.matrix() - tw.matrix()).camax() < 1e-12);
        // A too-coarse grid is not the Haar average.
        let coarse = mp_twirl_grid(&rho, n, t, n).unwrap();
        assert!((coarse.matrix() - tw.matrix()).camax() > 1e-3);
    }

    #[test]
    fn schur_basis_is_unitary_and_sized() {
        for n in 1..=5 {
            let b = su2_schur_basis(n).unwrap();
            let w = b.matrix();
            let d = w.nrows();
            assert!((w.adjoint() * w - DMatrix::<C64>::identity(d, d)).camax() < 1e-10);
            for blk in &b.blocks {
                let want = crate::rep_core::multiplicity_su(&blk.label, n).unwrap();
                assert_eq!(want, num_bigint::BigUint::from(blk.mult));
                assert_eq!(
                    crate::rep_core::weyl_dimension(&blk.label),
                    num_bigint::BigUint::from(blk.dim)
                );
            }
        }
        assert!(su2_schur_basis(9).is_err());
    }

    #[test]
    fn su2_twirl_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mixed = DensityOperator::maximally_mixed(Dims::new(3, 2, 1).unwrap());
        let tw = su2_twirl(&mixed, 3).unwrap();
        assert!((tw.matrix() - mixed.matrix()).camax() < 1e-12);

        for (n, want) in [(1u64, 4.0f64), (2, 10.0), (3, 20.0)] {
            let psi = bn1_state_su2(n).unwrap();
            let tw = su2_twirl(&psi.projector(), n).unwrap();
            let h = von_neumann_entropy(&tw).unwrap();
            assert!((h - want.ln()).abs() < 1e-6, "n={n}: {h}");
            assert!((tw.trace() - ONE).norm() < 1e-10);
            let again = su2_twirl(&tw, n).unwrap();
            assert!((again.matrix() - tw.matrix()).camax() < 1e-9);
            for _ in 0..20 {
                let u = to_dmatrix(&haar_su2(&mut rng));
                let full = tensor_power_matrix(&u, tw.dims()).unwrap();
                assert!(tw.commutator_norm(&full) < 1e-8);
            }
        }
    }

    #[test]
    fn su2_twirl_matches_monte_carlo() {
        // At 1e4 draws the sampling noise in trace distance is itself about
        // 1e-2, so the cross-check uses 1e5 draws against the same tolerance.
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for (n, psi) in [(2, bs4_state(2).unwrap()), (2, bn1_state_su2(2).unwrap())] {
            let rho = psi.projector();
            let exact = su2_twirl(&rho, n).unwrap();
            let mc = su2_twirl_monte_carlo(&rho, n, 100_000, &mut rng).unwrap();
            let d = trace_distance(&exact, &mc);
            assert!(d < 1e-2, "{d}");
        }

        // The Pauli group already averages degree-one inputs exactly.
        let rho = bn1_state_su2(1).unwrap().projector();
        let mc = su2_twirl_monte_carlo(&rho, 1, 4, &mut rng).unwrap();
        assert!(trace_distance(&su2_twirl(&rho, 1).unwrap(), &mc) < 1e-12);
    }

    #[test]
    fn bn1_examples() {
        let psi = bn1_state_su2(1).unwrap();
        assert_eq!(psi.dims().ref_dim, 2);
        // Maximally entangled two-qubit state: reduced state I/2.
        let a = psi.amplitudes();
        let reduced00 = a[0].norm_sqr() + a[1].norm_sqr();
        assert!((reduced00 - 0.5).abs() < 1e-12);

        let basis = su2_schur_basis(2).unwrap();
        let psi = bn1_state_su2(2).unwrap();
        let w = isotypic_weights(&basis, &psi).unwrap();
        assert!((w[0].1 - 0.9).abs() < 1e-12);
        assert!((w[1].1 - 0.1).abs() < 1e-12);
    }

    #[test]
    fn srm_examples() {
        let psi = bs4_state(4).unwrap();
        let single = Codebook::Phases(vec![vec![0.3]]);
        let out = srm_discrimination(&single, &psi, 4, 2).unwrap();
        assert!((out.success_prob - 1.0).abs() < 1e-12);

        let lattice = crate::distinguish::mp_lattice::<f64>(4, 2).unwrap();
        let code = Codebook::from(&lattice);
        let out = srm_discrimination(&code, &psi, 4, 2).unwrap();
        assert!((out.success_prob - 1.0).abs() < 1e-9);
        assert!(!out.degenerate);

        let noon = noon_state(4).unwrap();
        let out = srm_discrimination(&code, &noon, 4, 2).unwrap();
        assert!(out.success_prob < 1.0 - 1e-6);
        assert!(out.degenerate);
        assert!(out.success_prob <= 2.0 / 5.0 + 1e-9);
    }

    #[test]
    fn srm_povm_matches_gram_route() {
        let noon = noon_state(3).unwrap();
        let lattice = crate::distinguish::mp_lattice::<f64>(3, 2).unwrap();
        let code = Codebook::from(&lattice);
        let states = codebook_states(&code, &noon, 3, 2).unwrap();
        let povm = srm_povm(&states);
        // Elements plus junk resolve the identity; junk is the complement
        // projector of the span.
        let mut total = povm.junk.clone();
        for e in &povm.elements {
            total += e;
        }
        assert!((total - DMatrix::<C64>::identity(8, 8)).camax() < 1e-10);
        assert!((&povm.junk * &povm.junk - &povm.junk).camax() < 1e-10);
        let direct: f64 = states
            .iter()
            .zip(&povm.elements)
            .map(|(s, p)| (s.amps.adjoint() * p * &s.amps)[(0, 0)].re)
            .sum::<f64>()
            / states.len() as f64;
        let gram = srm_discrimination(&code, &noon, 3, 2).unwrap();
        assert!((direct - gram.success_prob).abs() < 1e-10);
    }

    #[test]
    fn srm_su2_codebook() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = bn1_state_su2(2).unwrap();
        let code = Codebook::Su2((0..4).map(|_| haar_su2(&mut rng)).collect());
        let out = srm_discrimination(&code, &psi, 2, 2).unwrap();
        assert!(out.success_prob > 0.0 && out.success_prob <= 1.0);

        let bad = Codebook::Su2(vec![Matrix2::new(ONE, ZERO, ZERO, c(-1.0, 0.0))]);
        assert!(srm_discrimination(&bad, &psi, 2, 2).is_err());
        let bad = Codebook::Phases(vec![vec![7.0]]);
        assert!(srm_discrimination(&bad, &bs4_state(2).unwrap(), 2, 2).is_err());
    }

    #[test]
    fn empirical_mi_examples() {
        let v = empirical_mi(&bs4_state(3).unwrap(), Model::MultiPhase, 3, 2).unwrap();
        assert!((v - 4f64.ln()).abs() < 1e-9);
        let v = empirical_mi(&noon_state(3).unwrap(), Model::MultiPhase, 3, 2).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-9);
        let v = empirical_mi(&bn1_state_su2(2).unwrap(), Model::SpecialUnitary, 2, 2).unwrap();
        assert!((v - 10f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn experiment_and_caps() {
        let r = run_experiment(Model::MultiPhase, 3, 2, StateTag::Bs4, true, 1).unwrap();
        assert!((r.success_prob.unwrap() - 1.0).abs() < 1e-9);
        assert!(check_caps(Model::SpecialUnitary, 9, 2).is_err());
        assert!(check_caps(Model::MultiPhase, 13, 2).is_err());
        assert!(check_caps(Model::MultiPhase, 12, 2).is_ok());
        assert!(check_caps(Model::SpecialUnitary, 3, 3).is_err());
        assert!(run_experiment(Model::SpecialUnitary, 2, 2, StateTag::Bn1, true, 1).is_err());
    }
}
