//! Scalar abstraction: the library is generic over the real field backing
//! all complex arithmetic, with `f64` as the default in the CLI.

use nalgebra::{Complex, DMatrix, DVector, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar types the library can run on.
pub trait Real: RealField + FromPrimitive + ToPrimitive + Copy {
    /// Converts an `f64` constant (tolerances, literals) into this type.
    #[inline]
    fn of(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("representable constant")
    }

    /// Converts back to `f64` for reporting and serialization.
    #[inline]
    fn as_f64(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("finite value")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over `T`.
pub type Cx<T> = Complex<T>;
/// Dense complex matrix.
pub type CMat<T> = DMatrix<Complex<T>>;
/// Dense complex column vector.
pub type CVec<T> = DVector<Complex<T>>;
/// Dense real matrix.
pub type RMat<T> = DMatrix<T>;
/// Dense real column vector.
pub type RVec<T> = DVector<T>;

/// Builds a complex scalar from `f64` parts.
#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> Cx<T> {
    Complex::new(T::of(re), T::of(im))
}

/// Modulus |z| of a complex scalar over a generic real field.
#[inline]
pub fn cmod<T: Real>(z: Cx<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

/// Integer power z^e by repeated multiplication (exponents stay small).
#[inline]
pub fn cpow<T: Real>(z: Cx<T>, e: u32) -> Cx<T> {
    let mut out = Complex::new(T::one(), T::zero());
    for _ in 0..e {
        out *= z;
    }
    out
}
