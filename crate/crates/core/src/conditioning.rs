//! Eigenvalue and eigenvector condition numbers, the auxiliary matrix built
//! from the left null space, secular-Jacobian diagnostics, and
//! intersection-angle geometry.

use crate::backward::eigenvalue_backward_error;
use crate::error::{Error, Result};
use crate::linalg;
use crate::pencil::{
    enumerate_selections, left_nullspace, secular_gradient, secular_value, Eigenpair, EigenTuple,
    MultiParamPencil, NullSpaceBasis, PerturbationModel,
};
use crate::scalar::{cmod, CMat, CVec, Real};
use nalgebra::Complex;

/// Relative scales the eigenvalue perturbation by ||lambda*||; absolute does not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionMode {
    Relative,
    Absolute,
}

/// Result of an eigenvalue-condition computation.
#[derive(Clone, Debug)]
pub struct ConditionReport<T> {
    pub kappa: T,
    pub mode: ConditionMode,
    pub b_inverse_norm: T,
    pub gamma_star: T,
    pub left_null_dim: usize,
    /// Set when a relative request was evaluated absolutely because
    /// ||lambda*|| = 0.
    pub switched_to_absolute: bool,
}

/// Left-null dimension must equal m and cond(B) must stay below this for an
/// eigenvalue to be certified simple.
const MAX_B_CONDITION: f64 = 1e12;
/// Rank tolerance for the left-null-space simplicity test.
const SIMPLICITY_NULL_TOL: f64 = 1e-10;
/// An input pair only qualifies as an eigenpair when its backward
/// eigenvalue error is at most this.
const MAX_BACKWARD_ERROR: f64 = 1e-8;

/// The m x m auxiliary matrix `B_ij = y_i^H (dM/dlambda_j)(lambda*) x*`
/// over an orthonormal left-null basis Y. For linear pencils the derivative
/// is the coefficient A_j. Nonsingular at algebraically simple eigenvalues.
pub fn auxiliary_matrix<T: Real>(
    pencil: &MultiParamPencil<T>,
    pair: &Eigenpair<T>,
    basis: &NullSpaceBasis<T>,
) -> Result<CMat<T>> {
    let m = pencil.n_params();
    if basis.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "left-null basis has {} columns, expected m = {}",
            basis.dim(),
            m
        )));
    }
    let mut b = CMat::<T>::zeros(m, m);
    for j in 0..m {
        let dj = pencil.partial_derivative(&pair.lambda, j)?;
        let col = basis.basis.adjoint() * (dj * &pair.x);
        b.column_mut(j).copy_from(&col);
    }
    Ok(b)
}

/// Certifies numerical simplicity of an eigenpair: left-null dimension
/// exactly m at the standard tolerance, and cond(B) below 1e12. Returns the
/// basis and auxiliary matrix on success.
pub fn simplicity_certificate<T: Real>(
    pencil: &MultiParamPencil<T>,
    pair: &Eigenpair<T>,
) -> Result<(NullSpaceBasis<T>, CMat<T>)> {
    let m = pencil.evaluate(&pair.lambda)?;
    let basis = left_nullspace(&m, T::of(SIMPLICITY_NULL_TOL));
    if basis.dim() != pencil.n_params() {
        return Err(Error::NonSimpleEigenvalue(format!(
            "left null space has dimension {}, expected {}",
            basis.dim(),
            pencil.n_params()
        )));
    }
    let b = auxiliary_matrix(pencil, pair, &basis)?;
    let sv = linalg::singular_values(&b);
    let smax = sv.iter().cloned().fold(T::zero(), T::max);
    let smin = sv.iter().cloned().fold(T::of(f64::MAX), T::min);
    if smin <= T::zero() || smax / smin > T::of(MAX_B_CONDITION) {
        return Err(Error::NonSimpleEigenvalue(
            "auxiliary matrix is singular to working precision".into(),
        ));
    }
    Ok((basis, b))
}

/// Eigenvalue condition number `kappa = ||B^-1|| gamma* / ||lambda*||`
/// (relative mode; absolute drops the norm). Refuses non-simple
/// eigenvalues and pairs whose backward error is too large to qualify.
pub fn eigenvalue_condition<T: Real>(
    pencil: &MultiParamPencil<T>,
    model: &PerturbationModel<T>,
    pair: &Eigenpair<T>,
    mode: ConditionMode,
) -> Result<ConditionReport<T>> {
    let eta = eigenvalue_backward_error(pencil, model, &pair.lambda)?;
    match eta.finite() {
        Some(v) if v <= T::of(MAX_BACKWARD_ERROR) => {}
        _ => {
            return Err(Error::NumericalRefusal(
                "input is not an eigenvalue to working precision (backward error too large)"
                    .into(),
            ))
        }
    }
    let (basis, b) = simplicity_certificate(pencil, pair)?;
    let b_inverse_norm = T::one() / linalg::sigma_min(&b);
    let gamma_star = model.gamma(pencil, &pair.lambda)?;
    let lam_norm = pair.lambda.norm();
    let (kappa, mode_out, switched) = match mode {
        ConditionMode::Absolute => (b_inverse_norm * gamma_star, ConditionMode::Absolute, false),
        ConditionMode::Relative => {
            if lam_norm > T::zero() {
                (
                    b_inverse_norm * gamma_star / lam_norm,
                    ConditionMode::Relative,
                    false,
                )
            } else {
                (b_inverse_norm * gamma_star, ConditionMode::Absolute, true)
            }
        }
    };
    Ok(ConditionReport {
        kappa,
        mode: mode_out,
        b_inverse_norm,
        gamma_star,
        left_null_dim: basis.dim(),
        switched_to_absolute: switched,
    })
}

/// Eigenvector condition number
/// `kappa(x*) = ||V (W^H M(lambda*) V)^-1 W^H|| gamma*`, with V spanning the
/// orthogonal complement of the normalization vector g and W the orthogonal
/// complement of span{(dM/dlambda_i) x*}.
///
/// `g` defaults to x* (so g^H x* = 1 for the unit eigenvector).
pub fn eigenvector_condition<T: Real>(
    pencil: &MultiParamPencil<T>,
    model: &PerturbationModel<T>,
    pair: &Eigenpair<T>,
    g: Option<&CVec<T>>,
) -> Result<T> {
    let l = pencil.cols();
    let k = pencil.rows();
    let m = pencil.n_params();
    if l == 1 {
        // the normalization pins the whole vector
        return Ok(T::zero());
    }
    let g = match g {
        Some(v) => {
            let c = (v.adjoint() * &pair.x)[(0, 0)];
            if cmod(c) <= T::of(1e-14) {
                return Err(Error::InvalidInput(
                    "normalization vector is orthogonal to the eigenvector".into(),
                ));
            }
            v.clone()
        }
        None => pair.x.clone(),
    };
    let gn = g.norm();
    let gmat = CMat::<T>::from_columns(&[g.unscale(gn)]);
    let v = linalg::orth_complement(&gmat, l);

    let mut span = CMat::<T>::zeros(k, m);
    for j in 0..m {
        let col = pencil.partial_derivative(&pair.lambda, j)? * &pair.x;
        span.column_mut(j).copy_from(&col);
    }
    if linalg::numerical_rank(&span, T::of(1e-10)) != m {
        return Err(Error::NonSimpleEigenvalue(
            "derivative directions (dM/dlambda_i) x* are rank deficient".into(),
        ));
    }
    let svd = nalgebra::SVD::new(span, true, false);
    let u = svd.u.as_ref().expect("u requested");
    let range = u.columns(0, m).into_owned();
    let w = linalg::orth_complement(&range, k);

    let mstar = pencil.evaluate(&pair.lambda)?;
    let core = w.adjoint() * &mstar * &v;
    let inv = core.try_inverse().ok_or_else(|| {
        Error::NonSimpleEigenvalue("projected pencil W^H M(lambda*) V is singular".into())
    })?;
    let kmat = &v * inv * w.adjoint();
    let gamma_star = model.gamma(pencil, &pair.lambda)?;
    Ok(linalg::spectral_norm(&kmat) * gamma_star)
}

/// Jacobian of the secular system: row i is the gradient of the i-th
/// secular value in canonical selection order. L x m.
pub fn secular_jacobian<T: Real>(
    pencil: &MultiParamPencil<T>,
    lambda: &EigenTuple<T>,
) -> Result<CMat<T>> {
    let sels = enumerate_selections(pencil.rows(), pencil.cols())?;
    let m = pencil.n_params();
    let mut jac = CMat::<T>::zeros(sels.len(), m);
    for (i, sel) in sels.iter().enumerate() {
        let grad = secular_gradient(pencil, sel, lambda)?;
        jac.row_mut(i).copy_from(&grad.transpose());
    }
    Ok(jac)
}

/// Structured factor linking the secular Jacobian to the auxiliary matrix
/// for the 3 x 2 two-parameter case: J = D B with D = [[a, 0], [0, b], [c, d]]
/// in the left-null basis assembled from the first two row selections.
/// Returns D and the relative reconstruction residual.
pub fn verify_jacobian_factorization<T: Real>(
    pencil: &MultiParamPencil<T>,
    pair: &Eigenpair<T>,
) -> Result<(CMat<T>, T)> {
    if pencil.n_params() != 2 || pencil.rows() != 3 || pencil.cols() != 2 {
        return Err(Error::ShapeMismatch(
            "factorization check requires m = 2, k = 3, l = 2".into(),
        ));
    }
    simplicity_certificate(pencil, pair)?;
    let mstar = pencil.evaluate(&pair.lambda)?;
    let sels = enumerate_selections(3, 2)?;

    // left-null vectors of the first two row-selected square pencils,
    // embedded back into C^3
    let mut w_basis = Vec::with_capacity(2);
    for sel in sels.iter().take(2) {
        let block = sel.select(&mstar);
        let svd = nalgebra::SVD::new(block, true, false);
        let s = &svd.singular_values;
        let idx = if s[0] < s[1] { 0 } else { 1 };
        let u = svd.u.as_ref().expect("u requested");
        let w_local: CVec<T> = u.column(idx).into_owned();
        w_basis.push(sel.embed(&w_local, 3));
    }

    let mut b = CMat::<T>::zeros(2, 2);
    for (i, w) in w_basis.iter().enumerate() {
        for j in 0..2 {
            let dj = pencil.partial_derivative(&pair.lambda, j)?;
            b[(i, j)] = (w.adjoint() * (dj * &pair.x))[(0, 0)];
        }
    }

    let jac = secular_jacobian(pencil, &pair.lambda)?;
    let mut d = CMat::<T>::zeros(3, 2);
    // rows 0 and 1 are single-scalar least squares against the B rows
    for i in 0..2 {
        let mut num = Complex::new(T::zero(), T::zero());
        let mut den = T::zero();
        for j in 0..2 {
            num += b[(i, j)].conj() * jac[(i, j)];
            den += cmod(b[(i, j)]) * cmod(b[(i, j)]);
        }
        if den <= T::zero() {
            return Err(Error::NonSimpleEigenvalue(
                "vanishing auxiliary row in factorization".into(),
            ));
        }
        d[(i, i)] = num / Complex::new(den, T::zero());
    }
    // row 2 solves J_3 = c B_1 + d B_2
    let bt = b.transpose();
    let rhs = CVec::<T>::from_vec(vec![jac[(2, 0)], jac[(2, 1)]]);
    let cd = bt.lu().solve(&rhs).ok_or_else(|| {
        Error::NonSimpleEigenvalue("auxiliary matrix singular in factorization".into())
    })?;
    d[(2, 0)] = cd[0];
    d[(2, 1)] = cd[1];

    let residual = (&jac - &d * &b).norm() / jac.norm();
    Ok((d, residual))
}

/// Pairwise intersection angles of the secular curves through a real point
/// of a real two-parameter pencil, plus their mean.
#[derive(Clone, Debug)]
pub struct AngleReport<T> {
    /// Acute angle per unordered pair of curves, in curve-index order.
    pub angles: Vec<T>,
    pub mean: T,
    /// Canonical indices of the selections whose curves pass through the point.
    pub curves: Vec<usize>,
}

/// Computes the acute angles between the tangent lines of every pair of
/// secular curves passing through `lambda` (those with |chi| below an
/// absolute tolerance derived from the local scale).
pub fn intersection_angles<T: Real>(
    pencil: &MultiParamPencil<T>,
    lambda: &EigenTuple<T>,
) -> Result<AngleReport<T>> {
    if pencil.n_params() != 2 {
        return Err(Error::ShapeMismatch(
            "intersection angles are defined for two parameters".into(),
        ));
    }
    let imag_scale = pencil
        .terms()
        .iter()
        .map(|t| t.coeff.iter().map(|z| z.im.abs()).fold(T::zero(), T::max))
        .fold(T::zero(), T::max);
    if imag_scale > T::of(1e-12) * pencil.coeff_scale() || lambda.max_imag() > T::of(1e-12) {
        return Err(Error::InvalidInput(
            "intersection angles require a real pencil at a real point".into(),
        ));
    }
    let sels = enumerate_selections(pencil.rows(), pencil.cols())?;
    let chi: Vec<T> = sels
        .iter()
        .map(|s| secular_value(pencil, s, lambda).map(cmod))
        .collect::<Result<_>>()?;
    let chi_max = chi.iter().cloned().fold(T::zero(), T::max);
    let tol = T::of(1e-6) * (T::one() + chi_max);
    let curves: Vec<usize> = (0..sels.len()).filter(|i| chi[*i] <= tol).collect();
    if curves.len() < 2 {
        return Err(Error::NumericalRefusal(format!(
            "only {} secular curve(s) pass through the point",
            curves.len()
        )));
    }
    let mut grads = Vec::with_capacity(curves.len());
    for &i in &curves {
        let g = secular_gradient(pencil, &sels[i], lambda)?;
        let gx = g[0].re;
        let gy = g[1].re;
        let norm = (gx * gx + gy * gy).sqrt();
        if norm <= T::of(1e-14) * (T::one() + chi_max) {
            return Err(Error::NumericalRefusal(
                "vanishing secular gradient; tangent undefined".into(),
            ));
        }
        grads.push((gx / norm, gy / norm));
    }
    let mut angles = Vec::new();
    for i in 0..grads.len() {
        for j in (i + 1)..grads.len() {
            let dot = (grads[i].0 * grads[j].0 + grads[i].1 * grads[j].1).abs();
            let clamped = if dot > T::one() { T::one() } else { dot };
            angles.push(clamped.acos());
        }
    }
    let mut mean = T::zero();
    for a in &angles {
        mean += *a;
    }
    mean /= T::of(angles.len() as f64);
    Ok(AngleReport {
        angles,
        mean,
        curves,
    })
}

/// Worst-case admissible perturbations of amplitude `eps` for the
/// eigenvalue map: rank-one updates along the unit left-null direction that
/// maximizes the first-order eigenvalue displacement. Re-solving the
/// perturbed problem from (lambda*, x*) moves the eigenvalue by
/// `kappa_abs * eps` to first order.
pub fn worst_case_eigenvalue_perturbations<T: Real>(
    pencil: &MultiParamPencil<T>,
    model: &PerturbationModel<T>,
    pair: &Eigenpair<T>,
    eps: T,
) -> Result<Vec<CMat<T>>> {
    let (basis, b) = simplicity_certificate(pencil, pair)?;
    let binv = b.clone().try_inverse().ok_or_else(|| {
        Error::NonSimpleEigenvalue("auxiliary matrix singular".into())
    })?;
    // top right singular vector of B^-1: direction of maximal amplification
    let svd = nalgebra::SVD::new(binv, false, true);
    let s = &svd.singular_values;
    let mut idx = 0;
    for i in 1..s.len() {
        if s[i] > s[idx] {
            idx = i;
        }
    }
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let vmax = v_t.row(idx).adjoint();
    let z = &basis.basis * vmax;

    let outer = &z * pair.x.adjoint();
    let mut out = Vec::with_capacity(pencil.terms().len());
    for (term, weight) in pencil.terms().iter().zip(model.weights()) {
        let mut mono = Complex::new(T::one(), T::zero());
        for (i, &e) in term.exponent.iter().enumerate() {
            mono *= crate::scalar::cpow(pair.lambda.0[i], e);
        }
        let sign = linalg::unit_sign(mono);
        let scale = -sign * Complex::new(eps * *weight, T::zero());
        out.push(outer.map(|x| x * scale));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::min_singular_triplet;
    use crate::scalar::Cx;
    use approx::assert_relative_eq;

    fn exact_pair(pencil: &MultiParamPencil<f64>, lam: [f64; 2]) -> Eigenpair<f64> {
        let tuple = EigenTuple::from_f64s(&lam);
        let m = pencil.evaluate(&tuple).unwrap();
        let (_, x) = min_singular_triplet(&m);
        Eigenpair::new(tuple, x).unwrap()
    }

    #[test]
    fn example_a_condition_numbers() {
        let p = fixtures::example_a::<f64>();
        let rel = PerturbationModel::relative(&p);
        let expected = [([1.0, 2.0], 9.1899), ([3.0, 1.0], 6.9633), ([1.0, 1.0], 11.2077)];
        for (lam, kappa) in expected {
            let pair = exact_pair(&p, lam);
            let rep = eigenvalue_condition(&p, &rel, &pair, ConditionMode::Relative).unwrap();
            assert_relative_eq!(rep.kappa, kappa, max_relative = 1e-3);
            assert_eq!(rep.left_null_dim, 2);
            assert!(!rep.switched_to_absolute);
            // report invariant: kappa = ||B^-1|| gamma / ||lambda||
            assert_relative_eq!(
                rep.kappa,
                rep.b_inverse_norm * rep.gamma_star / pair.lambda.norm(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn condition_refuses_non_eigenvalue() {
        let p = fixtures::example_a::<f64>();
        let rel = PerturbationModel::relative(&p);
        let pair = exact_pair(&p, [0.4, 0.9]);
        let err = eigenvalue_condition(&p, &rel, &pair, ConditionMode::Relative).unwrap_err();
        assert!(err.is_numerical());
    }

    #[test]
    fn auxiliary_matrix_invariant_under_unitary_basis_change() {
        let p = fixtures::example_a::<f64>();
        let pair = exact_pair(&p, [1.0, 2.0]);
        let m = p.evaluate(&pair.lambda).unwrap();
        let basis = left_nullspace(&m, 1e-10);
        let b = auxiliary_matrix(&p, &pair, &basis).unwrap();

        // rotate the basis by a unitary factor
        let theta: f64 = 0.83;
        let (c, s) = (theta.cos(), theta.sin());
        let u = CMat::<f64>::from_row_slice(
            2,
            2,
            &[
                Cx::new(c, 0.0),
                Cx::new(-s, 0.2).unscale((1.0f64 + 0.04).sqrt()),
                Cx::new(s, 0.2).unscale((1.0f64 + 0.04).sqrt()),
                Cx::new(c, 0.0),
            ],
        );
        // orthonormalize u properly
        let (q, _) = linalg::full_qr(&u);
        let rotated = NullSpaceBasis::new(&basis.basis * &q, basis.tol).unwrap();
        let b2 = auxiliary_matrix(&p, &pair, &rotated).unwrap();
        let n1 = 1.0 / linalg::sigma_min(&b);
        let n2 = 1.0 / linalg::sigma_min(&b2);
        assert_relative_eq!(n1, n2, max_relative = 1e-12);
    }

    #[test]
    fn gep_specialization_reduces_to_scalar() {
        // m = 1 square GEP: kappa = gamma / (|y^H A_1 x| |lambda|)
        let a0_real = nalgebra::DMatrix::<f64>::from_row_slice(
            3,
            3,
            &[2.0, -1.0, 0.5, 0.0, 1.0, -2.0, 1.0, 0.0, 3.0],
        );
        let a0 = a0_real.map(|v| Cx::new(v, 0.0));
        let a1 = CMat::<f64>::identity(3, 3).map(|z| z * Cx::new(-1.0, 0.0));
        let p = MultiParamPencil::linear(vec![a0.clone(), a1.clone()]).unwrap();
        let eigs = a0_real.complex_eigenvalues();
        let lam0 = eigs[0];
        let tuple = EigenTuple::new(CVec::<f64>::from_vec(vec![lam0])).unwrap();
        let m = p.evaluate(&tuple).unwrap();
        let (_, x) = min_singular_triplet(&m);
        let pair = Eigenpair::new(tuple.clone(), x).unwrap();

        let rel = PerturbationModel::relative(&p);
        let rep = eigenvalue_condition(&p, &rel, &pair, ConditionMode::Relative).unwrap();

        let basis = left_nullspace(&m, 1e-10);
        assert_eq!(basis.dim(), 1);
        let y = basis.basis.column(0).into_owned();
        let scalar = (y.adjoint() * (&a1 * &pair.x))[(0, 0)];
        let gamma = rel.gamma(&p, &tuple).unwrap();
        let expected = gamma / (cmod(scalar) * cmod(lam0));
        assert_relative_eq!(rep.kappa, expected, max_relative = 1e-12);
    }

    #[test]
    fn factorization_structure_on_example_a() {
        let p = fixtures::example_a::<f64>();
        for lam in [[1.0, 2.0], [3.0, 1.0], [1.0, 1.0]] {
            let pair = exact_pair(&p, lam);
            let (d, residual) = verify_jacobian_factorization(&p, &pair).unwrap();
            assert!(residual <= 1e-8, "residual {residual} at {lam:?}");
            assert!(cmod(d[(0, 1)]) == 0.0 && cmod(d[(1, 0)]) == 0.0);
            assert!(cmod(d[(0, 0)]) > 0.0 && cmod(d[(1, 1)]) > 0.0);
        }
    }

    #[test]
    fn secular_jacobian_full_rank_at_eigenvalues() {
        let p = fixtures::example_a::<f64>();
        for lam in [[1.0, 2.0], [3.0, 1.0], [1.0, 1.0]] {
            let jac = secular_jacobian(&p, &EigenTuple::from_f64s(&lam)).unwrap();
            assert_eq!(jac.shape(), (3, 2));
            assert_eq!(linalg::numerical_rank(&jac, 1e-8), 2);
        }
    }

    #[test]
    fn angles_orthogonal_and_tangential_crossings() {
        // rows of M(lambda): r1 = [l1, 1], r2 = [l2, l2], r3 = [1, 2]; at
        // (0.5, 0) all three curves meet:
        //   chi{1,2} = l1 l2 - l2   grad (0, -0.5)
        //   chi{1,3} = 2 l1 - 1     grad (2, 0)
        //   chi{2,3} = l2           grad (0, 1)
        // pairs: orthogonal, tangential (angle 0), orthogonal
        let zeros = CMat::<f64>::zeros(3, 2);
        let mut a0 = zeros.clone();
        a0[(0, 1)] = Cx::new(1.0, 0.0);
        a0[(2, 0)] = Cx::new(1.0, 0.0);
        a0[(2, 1)] = Cx::new(2.0, 0.0);
        let mut a1 = zeros.clone();
        a1[(0, 0)] = Cx::new(1.0, 0.0);
        let mut a2 = zeros.clone();
        a2[(1, 0)] = Cx::new(1.0, 0.0);
        a2[(1, 1)] = Cx::new(1.0, 0.0);
        let p = MultiParamPencil::linear(vec![a0, a1, a2]).unwrap();
        let rep = intersection_angles(&p, &EigenTuple::from_f64s(&[0.5, 0.0])).unwrap();
        assert_eq!(rep.curves, vec![0, 1, 2]);
        let half_pi = std::f64::consts::FRAC_PI_2;
        assert_relative_eq!(rep.angles[0], half_pi, epsilon = 1e-14);
        assert!(rep.angles[1].abs() < 1e-14, "tangential pair");
        assert_relative_eq!(rep.angles[2], half_pi, epsilon = 1e-14);
        assert_relative_eq!(rep.mean, std::f64::consts::FRAC_PI_3, epsilon = 1e-14);
    }

    #[test]
    fn angles_refusals() {
        // away from the spectrum no curve passes
        let p = fixtures::example_a::<f64>();
        let err = intersection_angles(&p, &EigenTuple::from_f64s(&[5.0, 5.0])).unwrap_err();
        assert!(err.is_numerical());

        // an identically-zero secular determinant has no tangent
        // rows: r1 = [1, 0], r2 = [0, l1], r3 = [0, l2]; chi{2,3} = 0
        let zeros = CMat::<f64>::zeros(3, 2);
        let mut a0 = zeros.clone();
        a0[(0, 0)] = Cx::new(1.0, 0.0);
        let mut a1 = zeros.clone();
        a1[(1, 1)] = Cx::new(1.0, 0.0);
        let mut a2 = zeros.clone();
        a2[(2, 1)] = Cx::new(1.0, 0.0);
        let degenerate = MultiParamPencil::linear(vec![a0, a1, a2]).unwrap();
        let err = intersection_angles(&degenerate, &EigenTuple::from_f64s(&[0.0, 0.0])).unwrap_err();
        assert!(err.is_numerical());
    }

    #[test]
    fn eigenvector_condition_l_equals_one() {
        // k x 1 pencil: eigenvector fixed by normalization
        let a0 = CMat::<f64>::from_row_slice(2, 1, &[Cx::new(1.0, 0.0), Cx::new(-2.0, 0.0)]);
        let a1 = CMat::<f64>::from_row_slice(2, 1, &[Cx::new(-1.0, 0.0), Cx::new(0.0, 0.0)]);
        let a2 = CMat::<f64>::from_row_slice(2, 1, &[Cx::new(0.0, 0.0), Cx::new(1.0, 0.0)]);
        let p = MultiParamPencil::linear(vec![a0, a1, a2]).unwrap();
        // M(l) = [1 - l1; -2 + l2], zero at (1, 2)
        let pair = Eigenpair::new(
            EigenTuple::from_f64s(&[1.0, 2.0]),
            CVec::<f64>::from_vec(vec![Cx::new(1.0, 0.0)]),
        )
        .unwrap();
        let rel = PerturbationModel::relative(&p);
        assert_eq!(eigenvector_condition(&p, &rel, &pair, None).unwrap(), 0.0);
    }
}
