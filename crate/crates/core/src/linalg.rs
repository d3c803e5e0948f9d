//! Dense complex kernels shared by every module: singular values, null
//! spaces, orthogonal complements, adjugates, and seeded random sampling.

use crate::scalar::{cmod, CMat, CVec, Cx, Real};
use nalgebra::Complex;
use rand::Rng;

/// Largest singular value (spectral norm). Zero for an empty matrix.
pub fn spectral_norm<T: Real>(m: &CMat<T>) -> T {
    if m.is_empty() {
        return T::zero();
    }
    singular_values(m)
        .into_iter()
        .fold(T::zero(), |a, s| if s > a { s } else { a })
}

/// Smallest singular value over the min(k, l) spectrum.
pub fn sigma_min<T: Real>(m: &CMat<T>) -> T {
    singular_values(m)
        .into_iter()
        .fold(T::of(f64::MAX), |a, s| if s < a { s } else { a })
}

/// All singular values of `m` (unspecified order).
pub fn singular_values<T: Real>(m: &CMat<T>) -> Vec<T> {
    let svd = nalgebra::SVD::new(m.clone(), false, false);
    svd.singular_values.iter().cloned().collect()
}

/// Smallest singular value together with its right singular vector.
pub fn min_singular_triplet<T: Real>(m: &CMat<T>) -> (T, CVec<T>) {
    let svd = nalgebra::SVD::new(m.clone(), true, true);
    let s = &svd.singular_values;
    let mut idx = 0;
    for i in 1..s.len() {
        if s[i] < s[idx] {
            idx = i;
        }
    }
    let v_t = svd.v_t.as_ref().expect("right singular vectors requested");
    let x = v_t.row(idx).adjoint();
    (s[idx], x)
}

/// Full (square-Q) Householder QR of a k x c matrix with c <= k.
///
/// Returns (Q, R) with Q unitary k x k and R upper trapezoidal k x c.
pub fn full_qr<T: Real>(m: &CMat<T>) -> (CMat<T>, CMat<T>) {
    let (k, c) = m.shape();
    assert!(c <= k, "full_qr expects a tall or square matrix");
    let mut q = CMat::<T>::identity(k, k);
    let mut r = m.clone();
    for j in 0..c.min(k.saturating_sub(1)) {
        let x = r.view((j, j), (k - j, 1)).into_owned();
        let norm = x.norm();
        if norm <= T::zero() {
            continue;
        }
        let x0 = x[(0, 0)];
        let phase = if cmod(x0) > T::zero() {
            x0 / Complex::new(cmod(x0), T::zero())
        } else {
            Complex::new(T::one(), T::zero())
        };
        let alpha = -phase * Complex::new(norm, T::zero());
        let mut v = x;
        v[(0, 0)] -= alpha;
        let vn2 = v.norm_squared();
        if vn2 <= T::zero() {
            continue;
        }
        let beta = Complex::new(T::of(2.0) / vn2, T::zero());
        // R[j.., j..] -= beta v (v^H R[j.., j..])
        let vh_r = v.adjoint() * r.view((j, j), (k - j, c - j));
        let update = (&v * vh_r).scale(T::one());
        let mut block = r.view_mut((j, j), (k - j, c - j));
        block -= update * beta;
        // Q[:, j..] -= beta (Q[:, j..] v) v^H
        let qv = q.view((0, j), (k, k - j)) * &v;
        let upd = qv * v.adjoint() * beta;
        let mut qblock = q.view_mut((0, j), (k, k - j));
        qblock -= upd;
    }
    (q, r)
}

/// Orthonormal basis of the orthogonal complement of the column span of
/// `basis` (assumed to have orthonormal columns) inside C^k.
pub fn orth_complement<T: Real>(basis: &CMat<T>, dim_space: usize) -> CMat<T> {
    let r = basis.ncols();
    if r == 0 {
        return CMat::<T>::identity(dim_space, dim_space);
    }
    assert_eq!(basis.nrows(), dim_space);
    let (q, _) = full_qr(basis);
    q.columns(r, dim_space - r).into_owned()
}

/// Number of singular values strictly above `tol_rel * sigma_max`.
pub fn numerical_rank<T: Real>(m: &CMat<T>, tol_rel: T) -> usize {
    let sv = singular_values(m);
    let smax = sv.iter().cloned().fold(T::zero(), |a, s| if s > a { s } else { a });
    if smax <= T::zero() {
        return 0;
    }
    sv.into_iter().filter(|s| *s > tol_rel * smax).count()
}

/// Default relative rank tolerance: max(k, l) * machine epsilon.
pub fn default_rank_tol<T: Real>(k: usize, l: usize) -> T {
    T::of(k.max(l) as f64) * T::default_epsilon()
}

/// Orthonormal basis of {y : y^H m = 0}, deciding rank by singular values
/// <= tol_rel * sigma_max. Returns the k x d basis with d = k - rank.
pub fn left_nullspace_basis<T: Real>(m: &CMat<T>, tol_rel: T) -> CMat<T> {
    let k = m.nrows();
    let svd = nalgebra::SVD::new(m.clone(), true, false);
    let s = &svd.singular_values;
    let smax = s.iter().cloned().fold(T::zero(), |a, v| if v > a { v } else { a });
    let rank = if smax <= T::zero() {
        0
    } else {
        s.iter().filter(|v| **v > tol_rel * smax).count()
    };
    let u = svd.u.as_ref().expect("left singular vectors requested");
    let range = u.columns(0, rank).into_owned();
    orth_complement(&range, k)
}

/// Complex sign: conj(z)/|z| for nonzero z, zero otherwise.
pub fn unit_sign<T: Real>(z: Cx<T>) -> Cx<T> {
    let n = cmod(z);
    if n > T::zero() {
        z.conj() / Complex::new(n, T::zero())
    } else {
        Complex::new(T::zero(), T::zero())
    }
}

/// Adjugate via cofactor expansion; adj(m)[i][j] = (-1)^(i+j) det(minor(j, i)).
///
/// Defined for every square matrix, including singular ones. Intended for
/// the small row-selected blocks (l stays single digit in practice).
pub fn adjugate<T: Real>(m: &CMat<T>) -> CMat<T> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "adjugate of a non-square matrix");
    if n == 0 {
        return CMat::<T>::zeros(0, 0);
    }
    if n == 1 {
        return CMat::<T>::identity(1, 1);
    }
    let mut adj = CMat::<T>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = strike(m, j, i);
            let det = minor.determinant();
            let sign = if (i + j) % 2 == 0 { T::one() } else { -T::one() };
            adj[(i, j)] = det * Complex::new(sign, T::zero());
        }
    }
    adj
}

fn strike<T: Real>(m: &CMat<T>, row: usize, col: usize) -> CMat<T> {
    let n = m.nrows();
    let mut out = CMat::<T>::zeros(n - 1, n - 1);
    let mut r = 0;
    for i in 0..n {
        if i == row {
            continue;
        }
        let mut c = 0;
        for j in 0..n {
            if j == col {
                continue;
            }
            out[(r, c)] = m[(i, j)];
            c += 1;
        }
        r += 1;
    }
    out
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn hermitian_min_eig<T: Real>(m: &CMat<T>) -> T {
    let h = (m + m.adjoint()).scale(T::of(0.5));
    let eig = nalgebra::SymmetricEigen::new(h);
    eig.eigenvalues
        .iter()
        .cloned()
        .fold(T::of(f64::MAX), |a, v| if v < a { v } else { a })
}

/// Largest principal angle (radians) between the spans of two orthonormal
/// bases of equal dimension.
pub fn max_principal_angle<T: Real>(u: &CMat<T>, v: &CMat<T>) -> T {
    assert_eq!(u.ncols(), v.ncols());
    if u.ncols() == 0 {
        return T::zero();
    }
    let overlap = u.adjoint() * v;
    let smin = sigma_min(&overlap);
    let clamped = if smin > T::one() { T::one() } else { smin };
    clamped.acos()
}

/// Uniform sample from the closed complex unit disc.
pub fn uniform_disc<T: Real>(rng: &mut impl Rng) -> Cx<T> {
    loop {
        let re: f64 = rng.random::<f64>() * 2.0 - 1.0;
        let im: f64 = rng.random::<f64>() * 2.0 - 1.0;
        if re * re + im * im <= 1.0 {
            return Complex::new(T::of(re), T::of(im));
        }
    }
}

/// Standard complex Gaussian sample (Box-Muller).
pub fn standard_complex<T: Real>(rng: &mut impl Rng) -> Cx<T> {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    Complex::new(T::of(r * theta.cos()), T::of(r * theta.sin()))
}

/// Random unit vector in C^n.
pub fn random_unit_cvec<T: Real>(rng: &mut impl Rng, n: usize) -> CVec<T> {
    loop {
        let v = CVec::<T>::from_fn(n, |_, _| standard_complex::<T>(rng));
        let norm = v.norm();
        if norm > T::of(1e-6) {
            return v.unscale(norm);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Complex;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn full_qr_reconstructs_and_q_unitary() {
        let m = CMat::<f64>::from_row_slice(
            4,
            2,
            &[
                c(1.0, 0.5),
                c(2.0, -1.0),
                c(0.0, 0.0),
                c(3.0, 0.0),
                c(-1.0, 2.0),
                c(0.5, 0.5),
                c(2.0, 2.0),
                c(1.0, -1.0),
            ],
        );
        let (q, r) = full_qr(&m);
        assert!((q.adjoint() * &q - CMat::<f64>::identity(4, 4)).norm() < 1e-13);
        assert!((&q * &r - &m).norm() < 1e-13);
        for j in 0..2 {
            for i in (j + 1)..4 {
                assert!(r[(i, j)].norm() < 1e-13, "r not trapezoidal at ({i},{j})");
            }
        }
    }

    #[test]
    fn left_nullspace_of_zero_matrix_is_full() {
        let m = CMat::<f64>::zeros(3, 2);
        let b = left_nullspace_basis(&m, 1e-10);
        assert_eq!(b.ncols(), 3);
        assert!((b.adjoint() * &b - CMat::<f64>::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn left_nullspace_annihilates() {
        let m = CMat::<f64>::from_row_slice(
            3,
            2,
            &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)],
        );
        let b = left_nullspace_basis(&m, 1e-10);
        assert_eq!(b.ncols(), 1);
        assert!((b.adjoint() * &m).norm() < 1e-12 * m.norm());
    }

    #[test]
    fn adjugate_matches_det_times_inverse() {
        let m = CMat::<f64>::from_row_slice(
            3,
            3,
            &[
                c(2.0, 1.0),
                c(0.0, -1.0),
                c(1.0, 0.0),
                c(3.0, 0.0),
                c(1.0, 1.0),
                c(0.0, 0.0),
                c(0.5, 0.0),
                c(2.0, 0.0),
                c(1.0, -1.0),
            ],
        );
        let adj = adjugate(&m);
        let det = m.determinant();
        let inv = m.clone().try_inverse().unwrap();
        assert!((adj - inv.map(|z| z * det)).norm() < 1e-11);
    }

    #[test]
    fn adjugate_of_singular_rank1_matrix() {
        // adj of a rank-deficient 2x2 is built from the null vectors
        let m = CMat::<f64>::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]);
        let adj = adjugate(&m);
        // [[4, -2], [-2, 1]]
        assert!((adj[(0, 0)] - c(4.0, 0.0)).norm() < 1e-14);
        assert!((adj[(0, 1)] - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((adj[(1, 0)] - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((adj[(1, 1)] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn unit_sign_convention() {
        let s = unit_sign(c(3.0, 4.0));
        assert!((s - c(0.6, -0.8)).norm() < 1e-15);
        assert_eq!(unit_sign(c(0.0, 0.0)), c(0.0, 0.0));
        // z * sign(z) = |z|
        let z = c(-2.0, 5.0);
        assert!((z * unit_sign(z) - c(z.norm(), 0.0)).norm() < 1e-14);
    }
}
