//! Norm-wise backward errors of approximate eigenpairs and eigenvalues,
//! and the rank-one perturbations that attain them.

use crate::error::{Error, Result};
use crate::linalg;
use crate::pencil::{Eigenpair, EigenTuple, MultiParamPencil, PerturbationModel};
use crate::scalar::{CMat, Real};
use nalgebra::Complex;

/// A backward error that may be unbounded (all perturbations forbidden
/// while the residual is nonzero). Serialized as the string "inf" rather
/// than a floating-point infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ErrorBound<T> {
    Finite(T),
    Unbounded,
}

impl<T: Real> ErrorBound<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ErrorBound::Finite(_))
    }

    pub fn finite(&self) -> Option<T> {
        match self {
            ErrorBound::Finite(v) => Some(*v),
            ErrorBound::Unbounded => None,
        }
    }

    /// Finite value or panic; for call sites that already checked gamma > 0.
    pub fn expect_finite(&self) -> T {
        self.finite().expect("backward error is unbounded")
    }
}

/// Backward error of an approximate eigenpair:
/// `eta(lambda, x) = ||M(lambda) x|| / (gamma(lambda) ||x||)`.
///
/// A zero residual gives 0 even when gamma vanishes; a nonzero residual
/// with gamma = 0 is unbounded.
pub fn eigenpair_backward_error<T: Real>(
    pencil: &MultiParamPencil<T>,
    model: &PerturbationModel<T>,
    lambda: &EigenTuple<T>,
    x: &crate::scalar::CVec<T>,
) -> Result<ErrorBound<T>> {
    let xnorm = x.norm();
    if xnorm.as_f64() < 1e-300 {
        return Err(Error::InvalidInput("zero approximate eigenvector".into()));
    }
    let r = pencil.evaluate(lambda)? * x;
    let rnorm = r.norm();
    let gamma = model.gamma(pencil, lambda)?;
    if gamma > T::zero() {
        Ok(ErrorBound::Finite(rnorm / (gamma * xnorm)))
    } else if rnorm == T::zero() {
        Ok(ErrorBound::Finite(T::zero()))
    } else {
        Ok(ErrorBound::Unbounded)
    }
}

/// Backward error of an approximate eigenvalue:
/// `eta(lambda) = sigma_min(M(lambda)) / gamma(lambda)`, the minimum of the
/// eigenpair error over all unit eigenvectors.
pub fn eigenvalue_backward_error<T: Real>(
    pencil: &MultiParamPencil<T>,
    model: &PerturbationModel<T>,
    lambda: &EigenTuple<T>,
) -> Result<ErrorBound<T>> {
    let smin = linalg::sigma_min(&pencil.evaluate(lambda)?);
    let gamma = model.gamma(pencil, lambda)?;
    if gamma > T::zero() {
        Ok(ErrorBound::Finite(smin / gamma))
    } else if smin == T::zero() {
        Ok(ErrorBound::Finite(T::zero()))
    } else {
        Ok(ErrorBound::Unbounded)
    }
}

/// Rank-one perturbations `Delta A_i` that make `(lambda, x)` an exact
/// eigenpair of the perturbed pencil while attaining
/// `||Delta A_i|| = eta(lambda, x) ||E_i||` (zero for terms whose monomial
/// vanishes at `lambda`, by the sign convention sign(0) = 0).
pub fn attaining_perturbations<T: Real>(
    pencil: &MultiParamPencil<T>,
    model: &PerturbationModel<T>,
    pair: &Eigenpair<T>,
) -> Result<Vec<CMat<T>>> {
    let gamma = model.gamma(pencil, &pair.lambda)?;
    if gamma <= T::zero() {
        return Err(Error::InvalidInput(
            "all perturbation weights vanish; no attaining perturbation exists".into(),
        ));
    }
    let r = pencil.residual(pair)?;
    let xnorm2 = pair.x.norm_squared();
    // dual vector of x: w = x / ||x||^2 so that w^H x = 1, ||r w^H|| = ||r||/||x||
    let w = pair.x.unscale(xnorm2);
    let outer = &r * w.adjoint();
    let ginv = Complex::new(T::one() / gamma, T::zero());
    let mut out = Vec::with_capacity(pencil.terms().len());
    for (term, weight) in pencil.terms().iter().zip(model.weights()) {
        // sign(lambda^e) with sign(z) = conj(z)/|z|; zero exponent gives 1
        let mut mono = Complex::new(T::one(), T::zero());
        for (i, &e) in term.exponent.iter().enumerate() {
            mono *= crate::scalar::cpow(pair.lambda.0[i], e);
        }
        let sign = linalg::unit_sign(mono);
        let scale = -sign * Complex::new(*weight, T::zero()) * ginv;
        out.push(outer.map(|z| z * scale));
    }
    Ok(out)
}

/// Applies term-wise perturbations to a pencil.
pub fn perturb_pencil<T: Real>(
    pencil: &MultiParamPencil<T>,
    deltas: &[CMat<T>],
) -> Result<MultiParamPencil<T>> {
    if deltas.len() != pencil.terms().len() {
        return Err(Error::DimensionMismatch(
            "one perturbation per pencil term required".into(),
        ));
    }
    let terms = pencil
        .terms()
        .iter()
        .zip(deltas)
        .map(|(t, d)| crate::pencil::PencilTerm {
            exponent: t.exponent.clone(),
            coeff: &t.coeff + d,
        })
        .collect();
    MultiParamPencil::new(pencil.rows(), pencil.cols(), pencil.n_params(), terms)
}
