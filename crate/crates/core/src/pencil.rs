//! Rectangular multiparameter matrix pencils: representation, evaluation,
//! row selections, secular values and gradients, null spaces, normal rank.

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cmod, cpow, CMat, CVec, Cx, Real};
use itertools::Itertools;
use nalgebra::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

/// One term of a matrix-valued multivariate polynomial: a multi-index
/// exponent over the spectral parameters and a complex k x l coefficient.
#[derive(Clone, Debug)]
pub struct PencilTerm<T: Real> {
    pub exponent: Vec<u32>,
    pub coeff: CMat<T>,
}

/// A k x l matrix pencil in m spectral parameters, given as a sum of
/// exponent/coefficient terms. The linear case is
/// `A_0 + lambda_1 A_1 + ... + lambda_m A_m`.
#[derive(Clone, Debug)]
pub struct MultiParamPencil<T: Real> {
    k: usize,
    l: usize,
    m: usize,
    terms: Vec<PencilTerm<T>>,
}

impl<T: Real> MultiParamPencil<T> {
    pub fn new(k: usize, l: usize, m: usize, terms: Vec<PencilTerm<T>>) -> Result<Self> {
        if k == 0 || l == 0 || m == 0 {
            return Err(Error::InvalidInput("k, l, m must be positive".into()));
        }
        for t in &terms {
            if t.coeff.shape() != (k, l) {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient is {}x{}, expected {}x{}",
                    t.coeff.nrows(),
                    t.coeff.ncols(),
                    k,
                    l
                )));
            }
            if t.exponent.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "exponent has {} entries, expected {}",
                    t.exponent.len(),
                    m
                )));
            }
        }
        for (a, b) in terms.iter().tuple_combinations() {
            if a.exponent == b.exponent {
                return Err(Error::InvalidInput(format!(
                    "duplicate exponent {:?}",
                    a.exponent
                )));
            }
        }
        Ok(Self { k, l, m, terms })
    }

    /// Linear pencil `A_0 + sum lambda_i A_i` from m + 1 coefficients.
    pub fn linear(coeffs: Vec<CMat<T>>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput(
                "a linear pencil needs at least a constant and one parameter coefficient".into(),
            ));
        }
        let m = coeffs.len() - 1;
        let (k, l) = coeffs[0].shape();
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, coeff)| {
                let mut exponent = vec![0u32; m];
                if i > 0 {
                    exponent[i - 1] = 1;
                }
                PencilTerm { exponent, coeff }
            })
            .collect();
        Self::new(k, l, m, terms)
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.l
    }

    pub fn n_params(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[PencilTerm<T>] {
        &self.terms
    }

    /// True iff every exponent is zero or a standard unit vector.
    pub fn is_linear(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.exponent.iter().sum::<u32>() <= 1)
    }

    /// True iff k = l + m - 1.
    pub fn is_standard_shape(&self) -> bool {
        self.k == self.l + self.m - 1
    }

    /// The coefficient of the degree-one term in parameter `param`, if the
    /// pencil is linear in that parameter. Zero matrix when the term is absent.
    pub fn linear_coefficient(&self, param: usize) -> CMat<T> {
        let mut unit = vec![0u32; self.m];
        unit[param] = 1;
        self.terms
            .iter()
            .find(|t| t.exponent == unit)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| CMat::<T>::zeros(self.k, self.l))
    }

    /// The constant-coefficient term, or zero when absent.
    pub fn constant_coefficient(&self) -> CMat<T> {
        self.terms
            .iter()
            .find(|t| t.exponent.iter().all(|e| *e == 0))
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| CMat::<T>::zeros(self.k, self.l))
    }

    /// Highest degree in parameter `param` across terms.
    pub fn degree_in(&self, param: usize) -> u32 {
        self.terms
            .iter()
            .map(|t| t.exponent[param])
            .max()
            .unwrap_or(0)
    }

    /// Max spectral norm over coefficient matrices; the scale used in
    /// convergence thresholds.
    pub fn coeff_scale(&self) -> T {
        self.terms
            .iter()
            .map(|t| linalg::spectral_norm(&t.coeff))
            .fold(T::zero(), |a, s| if s > a { s } else { a })
    }

    /// Evaluates `sum_terms lambda^exponent coeff`.
    pub fn evaluate(&self, lambda: &EigenTuple<T>) -> Result<CMat<T>> {
        if lambda.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "lambda has {} entries, pencil has {} parameters",
                lambda.len(),
                self.m
            )));
        }
        let mut out = CMat::<T>::zeros(self.k, self.l);
        for t in &self.terms {
            let w = monomial(&lambda.0, &t.exponent);
            out += t.coeff.map(|z| z * w);
        }
        Ok(out)
    }

    /// dM/dlambda_param evaluated at `lambda`. For a linear pencil this is
    /// the coefficient of that parameter, independent of `lambda`.
    pub fn partial_derivative(&self, lambda: &EigenTuple<T>, param: usize) -> Result<CMat<T>> {
        if param >= self.m {
            return Err(Error::InvalidInput(format!(
                "parameter index {} out of range for m = {}",
                param, self.m
            )));
        }
        if lambda.len() != self.m {
            return Err(Error::DimensionMismatch(
                "lambda length does not match parameter count".into(),
            ));
        }
        let mut out = CMat::<T>::zeros(self.k, self.l);
        for t in &self.terms {
            let e = t.exponent[param];
            if e == 0 {
                continue;
            }
            let mut reduced = t.exponent.clone();
            reduced[param] -= 1;
            let w = monomial(&lambda.0, &reduced) * Complex::new(T::of(e as f64), T::zero());
            out += t.coeff.map(|z| z * w);
        }
        Ok(out)
    }

    /// Residual `M(lambda) x`.
    pub fn residual(&self, pair: &Eigenpair<T>) -> Result<CVec<T>> {
        if pair.x.len() != self.l {
            return Err(Error::DimensionMismatch(
                "eigenvector length does not match pencil columns".into(),
            ));
        }
        Ok(self.evaluate(&pair.lambda)? * &pair.x)
    }

    /// Maximal rank over `trials` evaluations at random complex tuples with
    /// components uniform on the unit disc.
    pub fn normal_rank(&self, trials: usize, tol_rel: T, rng: &mut impl Rng) -> usize {
        assert!(trials >= 1);
        let mut best = 0;
        for _ in 0..trials {
            let lam = EigenTuple(CVec::<T>::from_fn(self.m, |_, _| {
                linalg::uniform_disc::<T>(rng)
            }));
            let m = self.evaluate(&lam).expect("dimensions fixed by pencil");
            best = best.max(linalg::numerical_rank(&m, tol_rel));
        }
        best
    }

    /// `normal_rank` with a ChaCha stream seeded for reproducibility.
    pub fn normal_rank_seeded(&self, trials: usize, tol_rel: T, seed: u64) -> usize {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        self.normal_rank(trials, tol_rel, &mut rng)
    }

    /// Casts every coefficient into another scalar type.
    pub fn map_scalar<U: Real>(&self) -> MultiParamPencil<U> {
        MultiParamPencil {
            k: self.k,
            l: self.l,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|t| PencilTerm {
                    exponent: t.exponent.clone(),
                    coeff: t
                        .coeff
                        .map(|z| Complex::new(U::of(z.re.as_f64()), U::of(z.im.as_f64()))),
                })
                .collect(),
        }
    }
}

fn monomial<T: Real>(lambda: &CVec<T>, exponent: &[u32]) -> Cx<T> {
    let mut w = Complex::new(T::one(), T::zero());
    for (i, &e) in exponent.iter().enumerate() {
        if e > 0 {
            w *= cpow(lambda[i], e);
        }
    }
    w
}

fn monomial_abs<T: Real>(lambda: &CVec<T>, exponent: &[u32]) -> T {
    let mut w = T::one();
    for (i, &e) in exponent.iter().enumerate() {
        for _ in 0..e {
            w *= cmod(lambda[i]);
        }
    }
    w
}

/// An m-tuple of spectral parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenTuple<T: Real>(pub CVec<T>);

impl<T: Real> EigenTuple<T> {
    pub fn new(values: CVec<T>) -> Result<Self> {
        for z in values.iter() {
            if !z.re.as_f64().is_finite() || !z.im.as_f64().is_finite() {
                return Err(Error::InvalidInput("non-finite eigenvalue component".into()));
            }
        }
        Ok(Self(values))
    }

    pub fn from_reals(values: &[T]) -> Self {
        Self(CVec::<T>::from_iterator(
            values.len(),
            values.iter().map(|v| Complex::new(*v, T::zero())),
        ))
    }

    pub fn from_f64s(values: &[f64]) -> Self {
        Self(CVec::<T>::from_iterator(
            values.len(),
            values.iter().map(|v| Complex::new(T::of(*v), T::zero())),
        ))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> T {
        self.0.norm()
    }

    /// Largest absolute imaginary part over components.
    pub fn max_imag(&self) -> T {
        self.0
            .iter()
            .map(|z| z.im.abs())
            .fold(T::zero(), |a, v| if v > a { v } else { a })
    }
}

/// An eigenvalue tuple with a unit right eigenvector.
#[derive(Clone, Debug)]
pub struct Eigenpair<T: Real> {
    pub lambda: EigenTuple<T>,
    pub x: CVec<T>,
}

impl<T: Real> Eigenpair<T> {
    /// Normalizes `x` to unit Euclidean length; rejects (near-)zero vectors.
    pub fn new(lambda: EigenTuple<T>, x: CVec<T>) -> Result<Self> {
        let norm = x.norm();
        if norm.as_f64() < 1e-300 {
            return Err(Error::InvalidInput("zero eigenvector".into()));
        }
        Ok(Self {
            lambda,
            x: x.unscale(norm),
        })
    }
}

/// How coefficient perturbations are weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Absolute,
    Relative,
    Custom,
}

/// Per-term error weights ||E_i|| and the resulting gamma aggregate.
#[derive(Clone, Debug)]
pub struct PerturbationModel<T: Real> {
    mode: WeightMode,
    weights: Vec<T>,
}

impl<T: Real> PerturbationModel<T> {
    /// Unit weight for every term (E_i with unit spectral norm).
    pub fn absolute(pencil: &MultiParamPencil<T>) -> Self {
        Self {
            mode: WeightMode::Absolute,
            weights: vec![T::one(); pencil.terms().len()],
        }
    }

    /// Weight_i = spectral norm of the i-th coefficient.
    pub fn relative(pencil: &MultiParamPencil<T>) -> Self {
        Self {
            mode: WeightMode::Relative,
            weights: pencil
                .terms()
                .iter()
                .map(|t| linalg::spectral_norm(&t.coeff))
                .collect(),
        }
    }

    pub fn custom(weights: Vec<T>) -> Result<Self> {
        if weights.iter().any(|w| *w < T::zero()) {
            return Err(Error::InvalidInput("negative perturbation weight".into()));
        }
        Ok(Self {
            mode: WeightMode::Custom,
            weights,
        })
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// gamma(lambda) = sum_terms |lambda^exponent| * weight.
    pub fn gamma(&self, pencil: &MultiParamPencil<T>, lambda: &EigenTuple<T>) -> Result<T> {
        if self.weights.len() != pencil.terms().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} pencil terms",
                self.weights.len(),
                pencil.terms().len()
            )));
        }
        if lambda.len() != pencil.n_params() {
            return Err(Error::DimensionMismatch(
                "lambda length does not match parameter count".into(),
            ));
        }
        let mut g = T::zero();
        for (t, w) in pencil.terms().iter().zip(&self.weights) {
            g += monomial_abs(&lambda.0, &t.exponent) * *w;
        }
        Ok(g)
    }
}

/// A selection of l rows out of k, stored zero-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSelection {
    rows: Vec<usize>,
}

impl RowSelection {
    pub fn new(mut rows: Vec<usize>, k: usize) -> Result<Self> {
        rows.sort_unstable();
        rows.dedup();
        if rows.iter().any(|r| *r >= k) {
            return Err(Error::InvalidInput("row index out of range".into()));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// One-based indices, the convention used in reports and serialized output.
    pub fn one_based(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r + 1).collect()
    }

    /// Extracts the selected rows of a matrix.
    pub fn select<T: Real>(&self, m: &CMat<T>) -> CMat<T> {
        let mut out = CMat::<T>::zeros(self.rows.len(), m.ncols());
        for (i, &r) in self.rows.iter().enumerate() {
            out.row_mut(i).copy_from(&m.row(r));
        }
        out
    }

    /// Embeds an l-vector into C^k on the selected rows.
    pub fn embed<T: Real>(&self, v: &CVec<T>, k: usize) -> CVec<T> {
        let mut out = CVec::<T>::zeros(k);
        for (i, &r) in self.rows.iter().enumerate() {
            out[r] = v[i];
        }
        out
    }
}

/// All C(k, l) selections of l rows from k, in lexicographic order.
pub fn enumerate_selections(k: usize, l: usize) -> Result<Vec<RowSelection>> {
    if l > k {
        return Err(Error::InvalidInput(format!(
            "cannot select {l} rows from {k}"
        )));
    }
    Ok((0..k)
        .combinations(l)
        .map(|rows| RowSelection { rows })
        .collect())
}

/// Secular value: determinant of the row-selected evaluated pencil.
pub fn secular_value<T: Real>(
    pencil: &MultiParamPencil<T>,
    sel: &RowSelection,
    lambda: &EigenTuple<T>,
) -> Result<Cx<T>> {
    if sel.len() != pencil.cols() {
        return Err(Error::DimensionMismatch(
            "row selection size does not match pencil columns".into(),
        ));
    }
    let m = pencil.evaluate(lambda)?;
    Ok(sel.select(&m).determinant())
}

/// Gradient of a secular value: entry j is
/// trace(adj([M(lambda)]_sel) [dM/dlambda_j]_sel).
pub fn secular_gradient<T: Real>(
    pencil: &MultiParamPencil<T>,
    sel: &RowSelection,
    lambda: &EigenTuple<T>,
) -> Result<CVec<T>> {
    let m = pencil.evaluate(lambda)?;
    let adj = linalg::adjugate(&sel.select(&m));
    let mut grad = CVec::<T>::zeros(pencil.n_params());
    for j in 0..pencil.n_params() {
        let dj = sel.select(&pencil.partial_derivative(lambda, j)?);
        grad[j] = (&adj * dj).trace();
    }
    Ok(grad)
}

/// Orthonormal left-null-space basis of a matrix with the tolerance recorded.
#[derive(Clone, Debug)]
pub struct NullSpaceBasis<T: Real> {
    pub basis: CMat<T>,
    pub tol: T,
}

impl<T: Real> NullSpaceBasis<T> {
    /// Validates orthonormality of the supplied columns.
    pub fn new(basis: CMat<T>, tol: T) -> Result<Self> {
        let d = basis.ncols();
        if d > 0 {
            let gram = basis.adjoint() * &basis;
            if (gram - CMat::<T>::identity(d, d)).norm() > T::of(1e-12) {
                return Err(Error::InvalidInput(
                    "null-space basis columns are not orthonormal".into(),
                ));
            }
        }
        Ok(Self { basis, tol })
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// Orthonormal basis of {y : y^H m = 0}; rank decided by singular values
/// <= tol_rel * sigma_max.
pub fn left_nullspace<T: Real>(m: &CMat<T>, tol_rel: T) -> NullSpaceBasis<T> {
    NullSpaceBasis {
        basis: linalg::left_nullspace_basis(m, tol_rel),
        tol: tol_rel,
    }
}
