//! Cyclic Jacobi diagonalization of complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal unitary and then
//! applies the real symmetric Jacobi rotation that zeroes it. Sweeps run in row order until the
//! off-diagonal Frobenius norm is below `ε·‖A‖_F`.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: Array2<Cplx<T>>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V Λ V†`
    pub fn reconstruct(&self) -> Array2<Cplx<T>> {
        let d = self.values.len();
        Array2::from_shape_fn((d, d), |(i, j)| {
            (0..d).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                acc + self.vectors[(i, k)] * self.vectors[(j, k)].conj() * self.values[k]
            })
        })
    }
}

/// Largest `|M_ij − M_ji*|`.
pub fn hermitian_deviation<T: Real>(m: &Array2<Cplx<T>>) -> T {
    let d = m.nrows();
    let mut worst = T::zero();
    for i in 0..d {
        for j in i..d {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn off_diagonal_norm<T: Real>(a: &Array2<Cplx<T>>) -> T {
    let d = a.nrows();
    let mut s = T::zero();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

pub fn hermitian_eigs<T: Real>(m: &Array2<Cplx<T>>) -> Result<HermitianEigen<T>> {
    let d = m.nrows();
    if m.ncols() != d {
        return Err(Error::InvalidParameter(format!(
            "eigensolver needs a square matrix, got {}×{}",
            d,
            m.ncols()
        )));
    }
    let frob = m.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
    let dev = hermitian_deviation(m);
    if dev > T::tol(1e-10, 64.0) * T::one().max(frob) {
        return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
    }

    // work on the exactly Hermitian part
    let mut a = Array2::from_shape_fn((d, d), |(i, j)| {
        if i == j {
            Complex::new(m[(i, i)].re, T::zero())
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * T::lit(0.5)
        }
    });
    let mut v = Array2::from_shape_fn((d, d), |(i, j)| {
        Complex::new(if i == j { T::one() } else { T::zero() }, T::zero())
    });

    let target = T::epsilon() * T::lit(0.5) * frob;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target || off == T::zero() {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off.to_f64().unwrap_or(f64::NAN),
            });
        }
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = Array2::from_shape_fn((d, d), |(r, c)| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

fn rotate<T: Real>(a: &mut Array2<Cplx<T>>, v: &mut Array2<Cplx<T>>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let d = a.nrows();
    // unit phase e^{-iφ} with a_pq = |a_pq| e^{iφ}
    let unphase = apq.conj() / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (T::lit(2.0) * mag).atan2(aqq - app) * T::lit(0.5);
    let (s, c) = theta.sin_cos();
    let zero = Complex::new(T::zero(), T::zero());
    // U restricted to (p, q): [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]
    let u_pp = Complex::new(c, T::zero());
    let u_pq = Complex::new(s, T::zero());
    let u_qp = unphase * (-s);
    let u_qq = unphase * c;

    // A ← A U
    for k in 0..d {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // A ← U† A
    for k in 0..d {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = zero;
    a[(q, p)] = zero;
    a[(p, p)].im = T::zero();
    a[(q, q)].im = T::zero();
    // V ← V U
    for k in 0..d {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}
