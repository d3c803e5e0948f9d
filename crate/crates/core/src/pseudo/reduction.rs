//! Slice preprocessing for pseudospectrum sweeps: trapezoidal reductions of
//! one-parameter slice pencils, banded Givens QR, and the inverse-iteration
//! sigma_min kernel, all instrumented with operation counters.

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cmod, CMat, CVec, Cx, Real};
use nalgebra::Complex;

/// Counters for the computational paths. Flop counts are exact for the
/// Givens/solve kernels implemented here; dense SVDs and Householder QRs
/// are delegated, so they are charged with the standard models
/// 4 k l^2 + 8 l^3 and 2 k l^2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Telemetry {
    /// Per-slice trapezoidal reductions.
    pub slice_reductions: u64,
    /// One-time reductions hoisted out of the slice loop (very-tall QR).
    pub onetime_reductions: u64,
    /// Per-point banded QR factorizations.
    pub point_qr: u64,
    /// Total inverse-iteration steps across points.
    pub inverse_iterations: u64,
    /// Dense SVD evaluations (naive path, or fallbacks).
    pub dense_svd: u64,
    /// Inverse-iteration stagnations resolved by a dense SVD.
    pub dense_svd_fallbacks: u64,
    /// Counted floating-point operations.
    pub flops: u64,
}

impl Telemetry {
    pub fn merge(&mut self, other: &Telemetry) {
        self.slice_reductions += other.slice_reductions;
        self.onetime_reductions += other.onetime_reductions;
        self.point_qr += other.point_qr;
        self.inverse_iterations += other.inverse_iterations;
        self.dense_svd += other.dense_svd;
        self.dense_svd_fallbacks += other.dense_svd_fallbacks;
        self.flops += other.flops;
    }
}

/// Flop model charged per dense SVD of a k x l matrix.
pub fn svd_model_flops(k: usize, l: usize) -> u64 {
    let (k, l) = (k as u64, l as u64);
    4 * k * l * l + 8 * l * l * l
}

fn qr_model_flops(k: usize, l: usize) -> u64 {
    let (k, l) = (k as u64, l as u64);
    2 * k * l * l
}

/// A one-parameter slice pencil `C + t A` after unitary reduction. The row
/// layout keeps the structured square block first and any dense rows last;
/// structural zeros are exact, so the per-point QR rotates only against
/// true nonzeros.
#[derive(Clone, Debug)]
pub struct ReducedSlicePencil<T: Real> {
    pub c: CMat<T>,
    pub a: CMat<T>,
}

impl<T: Real> ReducedSlicePencil<T> {
    pub fn rows(&self) -> usize {
        self.c.nrows()
    }

    pub fn cols(&self) -> usize {
        self.c.ncols()
    }

    /// Assembles the slice matrix at a parameter value. Exact zeros shared
    /// by both blocks stay exact.
    pub fn at(&self, t: Cx<T>) -> CMat<T> {
        let mut out = self.c.clone();
        for j in 0..out.ncols() {
            for i in 0..out.nrows() {
                let a = self.a[(i, j)];
                if a.re != T::zero() || a.im != T::zero() {
                    out[(i, j)] += a * t;
                }
            }
        }
        out
    }
}

fn zero_below_diagonal<T: Real>(m: &mut CMat<T>, offset: usize) {
    // offset 0 zeroes strictly below the diagonal, 1 below the subdiagonal
    for j in 0..m.ncols() {
        for i in (j + 1 + offset)..m.nrows() {
            m[(i, j)] = Complex::new(T::zero(), T::zero());
        }
    }
}

/// Very-tall preprocessing (k >= 2l): a one-time QR of the sweep-parameter
/// coefficient, then per slice a second QR of the lower rows of the
/// constant block. Singular values of the reduced slice equal those of the
/// original slice.
pub struct VeryTallReducer<T: Real> {
    q_adj: CMat<T>,
    r_top: CMat<T>,
    l: usize,
    k: usize,
}

impl<T: Real> VeryTallReducer<T> {
    /// `a_sweep` is the coefficient of the sweep parameter (constant across
    /// slices).
    pub fn new(a_sweep: &CMat<T>, tel: &mut Telemetry) -> Result<Self> {
        let (k, l) = a_sweep.shape();
        if k < 2 * l {
            return Err(Error::ShapeMismatch(format!(
                "very-tall path requires k >= 2l, got {k}x{l}"
            )));
        }
        let (q, r) = linalg::full_qr(a_sweep);
        tel.onetime_reductions += 1;
        tel.flops += qr_model_flops(k, l);
        let mut r_top = r.rows(0, l).into_owned();
        zero_below_diagonal(&mut r_top, 0);
        Ok(Self {
            q_adj: q.adjoint(),
            r_top,
            l,
            k,
        })
    }

    /// Reduces the constant block of one slice; the result has l dense rows
    /// on top of a constant upper-triangular tail.
    pub fn reduce(&self, c_slice: &CMat<T>, tel: &mut Telemetry) -> ReducedSlicePencil<T> {
        let (k, l) = (self.k, self.l);
        let c_tilde = &self.q_adj * c_slice;
        let lower = c_tilde.rows(l, k - l).into_owned();
        let (_, r2) = linalg::full_qr(&lower);
        tel.slice_reductions += 1;
        tel.flops += qr_model_flops(k - l, l);
        let p = (k - l).min(l);
        let mut r2_top = r2.rows(0, p).into_owned();
        zero_below_diagonal(&mut r2_top, 0);
        let mut c = CMat::<T>::zeros(l + p, l);
        c.rows_mut(0, l).copy_from(&c_tilde.rows(0, l));
        c.rows_mut(l, p).copy_from(&r2_top);
        let mut a = CMat::<T>::zeros(l + p, l);
        a.rows_mut(0, l).copy_from(&self.r_top);
        ReducedSlicePencil { c, a }
    }
}

/// Slightly-tall preprocessing (k < 2l): simultaneous reduction of the
/// lower l x l blocks of the constant part and the sweep coefficient to
/// Hessenberg / triangular form by Givens rotations. The reduced slice has
/// lower bandwidth one in its leading block plus k - l trailing dense rows,
/// so per-point QR needs only k - l + 1 rotations per column.
pub fn reduce_slightly_tall<T: Real>(
    c_slice: &CMat<T>,
    a_slice: &CMat<T>,
    tel: &mut Telemetry,
) -> Result<ReducedSlicePencil<T>> {
    let (k, l) = c_slice.shape();
    if a_slice.shape() != (k, l) {
        return Err(Error::DimensionMismatch("slice blocks disagree".into()));
    }
    if k >= 2 * l {
        return Err(Error::ShapeMismatch(format!(
            "slightly-tall path requires k < 2l, got {k}x{l}"
        )));
    }
    if k < l {
        return Err(Error::ShapeMismatch(
            "pencil has fewer rows than columns".into(),
        ));
    }
    let top = k - l;
    let mut c_all = c_slice.clone();
    let mut a_all = a_slice.clone();

    // step 1: QR of the lower block of a, applied to the lower rows of both
    let a_low = a_all.rows(top, l).into_owned();
    let (q0, r0) = linalg::full_qr(&a_low);
    tel.flops += qr_model_flops(l, l);
    let q0h = q0.adjoint();
    let new_c_low = &q0h * c_all.rows(top, l).into_owned();
    c_all.rows_mut(top, l).copy_from(&new_c_low);
    a_all.rows_mut(top, l).copy_from(&r0.rows(0, l));

    // step 2: chase C's lower block to Hessenberg while keeping A triangular
    for j in 0..l.saturating_sub(2) {
        for i in ((j + 2)..l).rev() {
            // left rotation on lower-block rows (i-1, i) zeroing C_low[i, j]
            let (c_rot, s_rot) = givens(c_all[(top + i - 1, j)], c_all[(top + i, j)]);
            apply_left_rotation(&mut c_all, top + i - 1, top + i, j, c_rot, s_rot, tel);
            apply_left_rotation(&mut a_all, top + i - 1, top + i, i - 1, c_rot, s_rot, tel);
            // the left rotation fills A_low[i, i-1]; kill it from the right
            let (cz, sz) = givens(a_all[(top + i, i)], a_all[(top + i, i - 1)]);
            apply_right_rotation(&mut a_all, i, i - 1, cz, sz, tel);
            apply_right_rotation(&mut c_all, i, i - 1, cz, sz, tel);
        }
    }
    tel.slice_reductions += 1;

    // reorder rows (structured block first, dense rows last) and pin the
    // structural zeros of the reduced blocks exactly
    let mut c = CMat::<T>::zeros(k, l);
    let mut a = CMat::<T>::zeros(k, l);
    let mut c_block = c_all.rows(top, l).into_owned();
    let mut a_block = a_all.rows(top, l).into_owned();
    zero_below_diagonal(&mut c_block, 1);
    zero_below_diagonal(&mut a_block, 0);
    c.rows_mut(0, l).copy_from(&c_block);
    a.rows_mut(0, l).copy_from(&a_block);
    c.rows_mut(l, top).copy_from(&c_all.rows(0, top));
    a.rows_mut(l, top).copy_from(&a_all.rows(0, top));
    Ok(ReducedSlicePencil { c, a })
}

/// Complex Givens rotation (c real, s complex) such that applying
/// rows r1 <- c r1 + s r2, r2 <- -conj(s) r1 + c r2 zeroes the second slot
/// of the pair (f, g).
fn givens<T: Real>(f: Cx<T>, g: Cx<T>) -> (T, Cx<T>) {
    let gn = cmod(g);
    if gn == T::zero() {
        return (T::one(), Complex::new(T::zero(), T::zero()));
    }
    let fn_ = cmod(f);
    let d = (fn_ * fn_ + gn * gn).sqrt();
    if fn_ == T::zero() {
        return (T::zero(), g.conj() / Complex::new(d, T::zero()));
    }
    let c = fn_ / d;
    let s = (f / Complex::new(fn_, T::zero())) * g.conj() / Complex::new(d, T::zero());
    (c, s)
}

/// Rows r1 <- c r1 + s r2, r2 <- -conj(s) r1 + c r2, from column `from` on.
fn apply_left_rotation<T: Real>(
    m: &mut CMat<T>,
    r1: usize,
    r2: usize,
    from: usize,
    c: T,
    s: Cx<T>,
    tel: &mut Telemetry,
) {
    let ncols = m.ncols();
    let cc = Complex::new(c, T::zero());
    for col in from..ncols {
        let a = m[(r1, col)];
        let b = m[(r2, col)];
        m[(r1, col)] = cc * a + s * b;
        m[(r2, col)] = -s.conj() * a + cc * b;
    }
    tel.flops += 16 * (ncols - from) as u64;
}

/// Columns c1 <- c c1 + s c2, c2 <- -conj(s) c1 + c c2 (all rows).
fn apply_right_rotation<T: Real>(
    m: &mut CMat<T>,
    c1: usize,
    c2: usize,
    c: T,
    s: Cx<T>,
    tel: &mut Telemetry,
) {
    let nrows = m.nrows();
    let cc = Complex::new(c, T::zero());
    for row in 0..nrows {
        let a = m[(row, c1)];
        let b = m[(row, c2)];
        m[(row, c1)] = cc * a + s * b;
        m[(row, c2)] = -s.conj() * a + cc * b;
    }
    tel.flops += 16 * nrows as u64;
}

/// Givens QR of a matrix with exact structural zeros: scans each column and
/// rotates only against entries that are actually nonzero, so the counted
/// work reflects the band profile. Returns the square upper-triangular
/// factor.
pub fn banded_qr_r<T: Real>(s: &CMat<T>, tel: &mut Telemetry) -> CMat<T> {
    let (rows, cols) = s.shape();
    let mut m = s.clone();
    tel.point_qr += 1;
    for j in 0..cols {
        for i in (j + 1)..rows {
            let entry = m[(i, j)];
            if entry.re != T::zero() || entry.im != T::zero() {
                let (c, srot) = givens(m[(j, j)], entry);
                apply_left_rotation(&mut m, j, i, j, c, srot, tel);
                m[(i, j)] = Complex::new(T::zero(), T::zero());
            }
        }
    }
    m.rows(0, cols).into_owned()
}

/// Smallest singular value of an upper-triangular factor by inverse
/// iteration on R^H R; falls back to a dense SVD when the triangle is
/// numerically singular or the iteration cannot settle (flagged).
pub fn sigma_min_from_r<T: Real>(r: &CMat<T>, tel: &mut Telemetry) -> T {
    let n = r.ncols();
    let scale = r.norm();
    if scale == T::zero() {
        return T::zero();
    }
    let mut min_diag = T::of(f64::MAX);
    for i in 0..n {
        min_diag = min_diag.min(cmod(r[(i, i)]));
    }
    if min_diag <= T::of(1e-14) * scale {
        tel.dense_svd += 1;
        tel.dense_svd_fallbacks += 1;
        tel.flops += svd_model_flops(n, n);
        return linalg::sigma_min(r);
    }
    let mut z = CVec::<T>::from_fn(n, |i, _| {
        Complex::new(T::one() + T::of(i as f64) / T::of(n as f64 + 1.0), T::of(0.1))
    });
    z.unscale_mut(z.norm());
    let mut sigma = T::zero();
    let max_iter = 200;
    for it in 0..max_iter {
        // u = (R^H R)^{-1} z via two triangular solves
        let w = solve_lower_adjoint(r, &z, tel);
        let u = solve_upper(r, &w, tel);
        tel.inverse_iterations += 1;
        let mu = u.norm();
        if !mu.as_f64().is_finite() || mu == T::zero() {
            tel.dense_svd += 1;
            tel.dense_svd_fallbacks += 1;
            tel.flops += svd_model_flops(n, n);
            return linalg::sigma_min(r);
        }
        let new_sigma = T::one() / mu.sqrt();
        let settled = it > 0 && (new_sigma - sigma).abs() <= T::of(1e-10) * new_sigma;
        sigma = new_sigma;
        if settled {
            return sigma;
        }
        z = u.unscale(mu);
    }
    tel.dense_svd += 1;
    tel.dense_svd_fallbacks += 1;
    tel.flops += svd_model_flops(n, n);
    linalg::sigma_min(r)
}

/// Solves R^H w = z for upper-triangular R (forward substitution).
fn solve_lower_adjoint<T: Real>(r: &CMat<T>, z: &CVec<T>, tel: &mut Telemetry) -> CVec<T> {
    let n = r.ncols();
    let mut w = CVec::<T>::zeros(n);
    for i in 0..n {
        let mut acc = z[i];
        for j in 0..i {
            acc -= r[(j, i)].conj() * w[j];
        }
        w[i] = acc / r[(i, i)].conj();
    }
    tel.flops += (4 * n * n) as u64;
    w
}

/// Solves R u = w for upper-triangular R (back substitution).
fn solve_upper<T: Real>(r: &CMat<T>, w: &CVec<T>, tel: &mut Telemetry) -> CVec<T> {
    let n = r.ncols();
    let mut u = CVec::<T>::zeros(n);
    for i in (0..n).rev() {
        let mut acc = w[i];
        for j in (i + 1)..n {
            acc -= r[(i, j)] * u[j];
        }
        u[i] = acc / r[(i, i)];
    }
    tel.flops += (4 * n * n) as u64;
    u
}

/// sigma_min of a reduced slice pencil at one parameter value.
pub fn sigma_min_point<T: Real>(
    reduced: &ReducedSlicePencil<T>,
    t: Cx<T>,
    tel: &mut Telemetry,
) -> T {
    let s = reduced.at(t);
    let r = banded_qr_r(&s, tel);
    sigma_min_from_r(&r, tel)
}
