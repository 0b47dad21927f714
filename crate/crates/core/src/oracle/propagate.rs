//! Fixed-step classical Runge–Kutta integration of `i dψ/dt = Hψ`.
//!
//! The Gershgorin midpoint `c` of `H` is removed before stepping and restored afterwards as the
//! exact phase `e^{−ict}`; this halves the stiffness without touching the block structure.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, Cplx, Real};

/// Abort threshold for `|‖ψ(t)‖ − ‖ψ(0)‖|`.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Target bound on accumulated RK4 phase error used by [`default_step`].
const PHASE_ERROR_BUDGET: f64 = 1e-10;

struct Sparse<T> {
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Cplx<T>>,
}

impl<T: Real> Sparse<T> {
    fn from_dense(m: &Array2<Cplx<T>>, shift: T) -> Self {
        let d = m.nrows();
        let mut row_start = Vec::with_capacity(d + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for i in 0..d {
            row_start.push(cols.len());
            for j in 0..d {
                let mut v = m[(i, j)];
                if i == j {
                    v.re -= shift;
                }
                if v.re != T::zero() || v.im != T::zero() {
                    cols.push(j);
                    vals.push(v);
                }
            }
        }
        row_start.push(cols.len());
        Self {
            row_start,
            cols,
            vals,
        }
    }

    // out = −i·M·x
    fn apply_minus_i(&self, x: &[Cplx<T>], out: &mut [Cplx<T>]) {
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in self.row_start[i]..self.row_start[i + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *o = Complex::new(acc.im, -acc.re);
        }
    }
}

/// Center and radius of the Gershgorin interval containing the (real) spectrum of `h`.
pub fn gershgorin_interval<T: Real>(h: &Array2<Cplx<T>>) -> (T, T) {
    let d = h.nrows();
    if d == 0 {
        return (T::zero(), T::zero());
    }
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for i in 0..d {
        let r = (0..d)
            .filter(|&j| j != i)
            .fold(T::zero(), |s, j| s + h[(i, j)].norm());
        lo = lo.min(h[(i, i)].re - r);
        hi = hi.max(h[(i, i)].re + r);
    }
    let two = T::lit(2.0);
    ((lo + hi) / two, (hi - lo) / two)
}

/// Step size for propagating to `t`.
///
/// Never larger than `min(1e−3, 0.05/‖H‖_max)`. Also small enough that the RK4 phase error
/// estimate `t·E·(dt·E)⁴/120`, with `E` the Gershgorin radius of the shifted `H`, stays
/// below 1e−10.
pub fn default_step<T: Real>(h: &Array2<Cplx<T>>, t: T) -> T {
    let max_entry = h.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    let mut dt = T::lit(1e-3);
    if max_entry > T::zero() {
        dt = dt.min(T::lit(0.05) / max_entry);
    }
    let (_, radius) = gershgorin_interval(h);
    let horizon = t.abs() * radius;
    if horizon > T::zero() {
        let budget = T::lit(120.0 * PHASE_ERROR_BUDGET) / horizon;
        dt = dt.min(budget.powf(T::lit(0.25)) / radius);
    }
    dt
}

/// Propagates `psi0` under `h` to time `t` with steps no longer than `dt`.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn propagate_numeric<T: Real>(
    h: &Array2<Cplx<T>>,
    psi0: &[Cplx<T>],
    t: T,
    dt: T,
) -> Result<Vec<Cplx<T>>> {
    let d = h.nrows();
    if h.ncols() != d || psi0.len() != d {
        return Err(Error::InvalidParameter(format!(
            "state of length {} against {}×{} Hamiltonian",
            psi0.len(),
            d,
            h.ncols()
        )));
    }
    if !(dt > T::zero()) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "need dt > 0 and finite t, got dt = {dt}, t = {t}"
        )));
    }
    let (center, _) = gershgorin_interval(h);
    let m = Sparse::from_dense(h, center);

    let steps = (t.abs() / dt).ceil().to_usize().unwrap_or(usize::MAX).max(1);
    let step = t / T::count(steps);
    let half = step / T::lit(2.0);
    let sixth = step / T::lit(6.0);

    let zero = Complex::new(T::zero(), T::zero());
    let mut psi = psi0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) =
        (vec![zero; d], vec![zero; d], vec![zero; d], vec![zero; d]);
    let mut tmp = vec![zero; d];
    let norm = |v: &[Cplx<T>]| v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
    let norm0 = norm(psi0);

    for _ in 0..steps {
        m.apply_minus_i(&psi, &mut k1);
        for i in 0..d {
            tmp[i] = psi[i] + k1[i] * half;
        }
        m.apply_minus_i(&tmp, &mut k2);
        for i in 0..d {
            tmp[i] = psi[i] + k2[i] * half;
        }
        m.apply_minus_i(&tmp, &mut k3);
        for i in 0..d {
            tmp[i] = psi[i] + k3[i] * step;
        }
        m.apply_minus_i(&tmp, &mut k4);
        for i in 0..d {
            psi[i] += (k1[i] + (k2[i] + k3[i]) * T::lit(2.0) + k4[i]) * sixth;
        }
    }

    let drift = (norm(&psi) - norm0).abs();
    if !(drift <= T::lit(NORM_DRIFT_LIMIT)) {
        return Err(Error::NormDrift {
            drift: drift.to_f64().unwrap_or(f64::INFINITY),
            dt: step.to_f64().unwrap_or(f64::NAN),
        });
    }
    let phase = cis(-center * t);
    Ok(psi.into_iter().map(|z| z * phase).collect())
}
