//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point type the simulation is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only if the type cannot hold finite values.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal representable in scalar type")
    }

    /// Converts a count or index.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// A tolerance that never drops below `floor` but widens with the type's precision.
    ///
    /// `floor` is the f64-calibrated value; `scale * epsilon` takes over for coarser types.
    fn tol(floor: f64, scale: f64) -> Self {
        let eps = Self::epsilon() * Self::lit(scale);
        let floor = Self::lit(floor);
        if eps > floor {
            eps
        } else {
            floor
        }
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + Default
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Complex amplitude over a [`Real`] scalar.
pub type Cplx<T> = Complex<T>;

/// `e^{iθ}`
#[inline]
pub fn cis<T: Real>(theta: T) -> Cplx<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

/// `e^{2πi·r/n}` with `r` reduced modulo `n` before the angle is formed.
#[inline]
pub fn root_of_unity<T: Real>(r: usize, n: usize) -> Cplx<T> {
    let r = r % n;
    // quarter turns are exact
    if (4 * r).is_multiple_of(n) {
        return match 4 * r / n {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        };
    }
    cis(T::TAU() * T::count(r) / T::count(n))
}
