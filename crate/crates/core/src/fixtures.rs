//! Built-in demonstration problems used by the test suite and shipped by
//! `mpspec examples install`.

use crate::pencil::MultiParamPencil;
use crate::scalar::{CMat, Real, RVec};
use nalgebra::Complex;

fn real_mat<T: Real>(rows: usize, cols: usize, data: &[f64]) -> CMat<T> {
    CMat::<T>::from_row_slice(
        rows,
        cols,
        &data
            .iter()
            .map(|v| Complex::new(T::of(*v), T::zero()))
            .collect::<Vec<_>>(),
    )
}

/// Two-parameter 3x2 demo problem A with integer entries. Its spectrum is
/// {(1, 2), (3, 1), (1, 1)}.
pub fn example_a<T: Real>() -> MultiParamPencil<T> {
    MultiParamPencil::linear(vec![
        real_mat(3, 2, &[-6.0, -4.0, 0.0, -2.0, -2.0, -2.0]),
        real_mat(3, 2, &[2.0, 1.0, 0.0, 0.0, 2.0, 0.0]),
        real_mat(3, 2, &[2.0, 1.0, 0.0, 2.0, 0.0, 2.0]),
    ])
    .expect("static data")
}

/// Two-parameter 3x2 demo problem B with a well-spread spectrum.
pub fn example_b<T: Real>() -> MultiParamPencil<T> {
    MultiParamPencil::linear(vec![
        real_mat(3, 2, &[2.0, 6.0, 4.0, 5.0, 0.0, 1.0]),
        real_mat(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]),
        real_mat(3, 2, &[4.0, 2.0, 0.0, 8.0, 1.0, 1.0]),
    ])
    .expect("static data")
}

/// Hankel-structured 3x2 two-parameter problem that is (nested) right
/// definite; its spectrum is real.
pub fn hankel_definite<T: Real>() -> MultiParamPencil<T> {
    MultiParamPencil::linear(vec![
        real_mat(3, 2, &[0.0260, 0.4380, 0.4380, 0.6542, 0.6542, 1.4192]),
        real_mat(3, 2, &[-1.6324, 0.1128, 0.1128, -0.4401, -0.4401, -0.6968]),
        real_mat(3, 2, &[3.3280, -0.3346, -0.3346, 0.6774, 0.6774, -0.0754]),
    ])
    .expect("static data")
}

/// Output series for the least-squares realization demo, together with the
/// model order. The data is compliant with alpha = (-0.5, -0.5).
pub fn realization_series<T: Real>() -> (RVec<T>, usize) {
    (
        RVec::<T>::from_iterator(5, [2.0, 4.0, 3.0, 3.5, 3.25].iter().map(|v| T::of(*v))),
        2,
    )
}
