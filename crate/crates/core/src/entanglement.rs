//! Two-atom reduced states and their negativity.
//!
//! Basis order is `{|gg⟩, |ge⟩, |eg⟩, |ee⟩}` with atom `l` as the first (transposed) qubit.
//! Within the manifold at most one atom is excited and photonic components leave both atoms in
//! `g`, so the reduced state of atoms `(l, m)` only has `|gg⟩`, `|ge⟩`, `|eg⟩` support.

use ndarray::Array2;
use num_complex::Complex;

use crate::dynamics::ManifoldState;
use crate::error::{Error, Result};
use crate::oracle::{hermitian_deviation, hermitian_eigs};
use crate::scalar::{Cplx, Real};

const GG: usize = 0;
const GE: usize = 1;
const EG: usize = 2;

/// A validated 4×4 two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoAtomDensity<T> {
    rho: Array2<Cplx<T>>,
}

impl<T: Real> TwoAtomDensity<T> {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(rho: Array2<Cplx<T>>) -> Result<Self> {
        if rho.dim() != (4, 4) {
            return Err(Error::InvalidParameter(format!(
                "two-atom density must be 4×4, got {:?}",
                rho.dim()
            )));
        }
        let tol = T::tol(1e-12, 64.0);
        let dev = hermitian_deviation(&rho);
        if dev > tol {
            return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
        }
        let trace = (0..4).fold(Complex::new(T::zero(), T::zero()), |s, i| s + rho[(i, i)]);
        if (trace - T::one()).norm() > tol {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let min = hermitian_eigs(&rho)?.values[0];
        if min < -T::tol(1e-10, 256.0) {
            return Err(Error::InvalidParameter(format!(
                "density matrix has negative eigenvalue {min}"
            )));
        }
        Ok(Self { rho })
    }

    pub fn matrix(&self) -> &Array2<Cplx<T>> {
        &self.rho
    }
}

/// Reduced state of atoms `l` and `m` after tracing out photons and every other atom.
pub fn two_atom_reduced<T: Real>(
    state: &ManifoldState<T>,
    l: usize,
    m: usize,
) -> Result<TwoAtomDensity<T>> {
    let n = state.sites();
    if l == m || l >= n || m >= n {
        return Err(Error::InvalidPair { l, m, n });
    }
    let (al, am) = (state.a[l], state.a[m]);
    let ground = state
        .a
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != l && k != m)
        .map(|(_, z)| z.norm_sqr())
        .chain(state.c.iter().map(|z| z.norm_sqr()))
        .fold(T::zero(), |s, p| s + p);

    let zero = Complex::new(T::zero(), T::zero());
    let mut rho = Array2::from_elem((4, 4), zero);
    rho[(GG, GG)] = Complex::new(ground, T::zero());
    rho[(EG, EG)] = Complex::new(al.norm_sqr(), T::zero());
    rho[(GE, GE)] = Complex::new(am.norm_sqr(), T::zero());
    rho[(EG, GE)] = al * am.conj();
    rho[(GE, EG)] = am * al.conj();
    TwoAtomDensity::new(rho)
}

/// Transpose on the first qubit: `⟨i₁j₁|ρ^{T₁}|i₂j₂⟩ = ⟨i₂j₁|ρ|i₁j₂⟩`.
pub fn partial_transpose_first<T: Real>(rho: &Array2<Cplx<T>>) -> Array2<Cplx<T>> {
    Array2::from_shape_fn((4, 4), |(r, c)| {
        let (i1, j1) = (r / 2, r % 2);
        let (i2, j2) = (c / 2, c % 2);
        rho[(2 * i2 + j1, 2 * i1 + j2)]
    })
}

/// `Σ|λ_i| − 1` over the partial-transpose eigenvalues, without clamping.
pub fn negativity_raw<T: Real>(rho: &TwoAtomDensity<T>) -> Result<T> {
    let eig = hermitian_eigs(&partial_transpose_first(rho.matrix()))?;
    Ok(eig.values.iter().fold(T::zero(), |s, v| s + v.abs()) - T::one())
}

/// Negativity clamped at zero.
pub fn negativity<T: Real>(rho: &TwoAtomDensity<T>) -> Result<T> {
    Ok(negativity_raw(rho)?.max(T::zero()))
}

/// `(1/n)[√((n−2)² + 4) − (n−2)]`: the pairwise negativity after a photonic W-state has
/// fully converted into an atomic one (weak hopping, `t = π/2`).
pub fn w_negativity_closed_form<T: Real>(n: usize) -> Result<T> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "W-state negativity needs n ≥ 2, got {n}"
        )));
    }
    let k = T::count(n - 2);
    Ok(((k * k + T::lit(4.0)).sqrt() - k) / T::count(n))
}

/// Pairwise negativity of the weak-hopping W evolution at any `t`.
///
/// With `p = sin²t / n` per atom the partial transpose has eigenvalues `p, p` and
/// `½[(1−2p) ± √((1−2p)² + 4p²)]`, so the negativity is `√((1−2p)² + 4p²) − (1−2p)`.
pub fn w_negativity_weak_hopping<T: Real>(n: usize, t: T) -> Result<T> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "W-state negativity needs n ≥ 2, got {n}"
        )));
    }
    let p = t.sin().powi(2) / T::count(n);
    let q = T::one() - T::lit(2.0) * p;
    Ok((q * q + T::lit(4.0) * p * p).sqrt() - q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn atomic_w(n: usize) -> ManifoldState<f64> {
        let mut s = ManifoldState::zeros(n);
        for a in s.a.iter_mut() {
            *a = Complex64::new(0.0, -1.0 / (n as f64).sqrt());
        }
        s
    }

    #[test]
    fn reduced_from_atomic_w() {
        for n in [2usize, 3, 5, 8] {
            let rho = two_atom_reduced(&atomic_w(n), 0, n - 1).unwrap();
            let nf = n as f64;
            let mut want = Array2::from_elem((4, 4), re(0.0));
            want[(GG, GG)] = re(1.0 - 2.0 / nf);
            for (r, c) in [(EG, EG), (GE, GE), (EG, GE), (GE, EG)] {
                want[(r, c)] = re(1.0 / nf);
            }
            assert!((rho.matrix() - &want).iter().all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn reduced_trivial_cases() {
        let s = ManifoldState::<f64>::w_state(4).unwrap();
        let rho = two_atom_reduced(&s, 1, 2).unwrap();
        assert!((rho.matrix()[(GG, GG)] - 1.0).norm() < 1e-15);
        assert_eq!(negativity(&rho).unwrap(), 0.0);

        let s = ManifoldState::<f64>::excitation_at(4, 2).unwrap();
        let rho = two_atom_reduced(&s, 2, 0).unwrap();
        assert_eq!(rho.matrix()[(EG, EG)], re(1.0));
        assert_eq!(rho.matrix()[(GG, GG)], re(0.0));

        assert!(two_atom_reduced(&s, 1, 1).is_err());
        assert!(two_atom_reduced(&s, 1, 4).is_err());
    }

    #[test]
    fn unnormalized_state_rejected() {
        let mut s = ManifoldState::<f64>::w_state(3).unwrap();
        s.c[0] = re(2.0);
        assert!(two_atom_reduced(&s, 0, 1).is_err());
    }

    #[test]
    fn partial_transpose_of_w_density() {
        for n in [2usize, 4, 6] {
            let rho = two_atom_reduced(&atomic_w(n), 0, 1).unwrap();
            let pt = partial_transpose_first(rho.matrix());
            let nf = n as f64;
            let want = [
                [nf - 2.0, 0.0, 0.0, 1.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [1.0, 0.0, 0.0, 0.0],
            ];
            for r in 0..4 {
                for c in 0..4 {
                    assert!((pt[(r, c)] - want[r][c] / nf).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn partial_transpose_involution_and_diagonal() {
        let m = Array2::from_shape_fn((4, 4), |(r, c)| Complex64::new(r as f64, c as f64 * 0.5));
        assert_eq!(partial_transpose_first(&partial_transpose_first(&m)), m);
        let d = Array2::from_diag(&ndarray::arr1(&[re(0.1), re(0.2), re(0.3), re(0.4)]));
        assert_eq!(partial_transpose_first(&d), d);
        let rho = TwoAtomDensity::new(d).unwrap();
        assert!(negativity_raw(&rho).unwrap().abs() < 1e-10);
    }

    #[test]
    fn bell_state_is_maximal() {
        let h = 0.5;
        let mut m = Array2::from_elem((4, 4), re(0.0));
        for (r, c) in [(GE, GE), (EG, EG), (GE, EG), (EG, GE)] {
            m[(r, c)] = re(h);
        }
        let rho = TwoAtomDensity::new(m).unwrap();
        assert!((negativity(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_density_matrices() {
        let m = Array2::from_diag(&ndarray::arr1(&[re(0.5), re(0.5), re(0.5), re(-0.5)]));
        assert!(TwoAtomDensity::new(m).is_err());
        let m = Array2::from_diag(&ndarray::arr1(&[re(0.5), re(0.5), re(0.5), re(0.5)]));
        assert!(TwoAtomDensity::new(m).is_err());
        assert!(TwoAtomDensity::new(Array2::<Complex64>::zeros((3, 3))).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(w_negativity_closed_form::<f64>(2).unwrap(), 1.0);
        let n4: f64 = w_negativity_closed_form(4).unwrap();
        assert!((n4 - (8f64.sqrt() - 2.0) / 4.0).abs() < 1e-15);
        assert!((n4 - 0.207_106_781_186_547_5).abs() < 1e-12);
        let n6: f64 = w_negativity_closed_form(6).unwrap();
        assert!((n6 - (20f64.sqrt() - 4.0) / 6.0).abs() < 1e-15);
        assert!(w_negativity_closed_form::<f64>(1).is_err());

        let mut prev = f64::INFINITY;
        for n in 2..=64 {
            let v: f64 = w_negativity_closed_form(n).unwrap();
            assert!(v < prev && v > 0.0);
            prev = v;
        }
        assert!(prev < 0.02);
    }

    #[test]
    fn n4_brute_force_eigen() {
        // characteristic polynomial of the 2×2 (gg, ee) block of 4·ρ^{T₁}: λ² − 2λ − 1 = 0
        let lam_minus = (2.0 - (4.0f64 + 4.0).sqrt()) / 2.0 / 4.0;
        let rho = two_atom_reduced(&atomic_w(4), 0, 2).unwrap();
        let v: f64 = negativity(&rho).unwrap();
        assert!((v + 2.0 * lam_minus).abs() < 1e-12);
        assert!((v - 0.207_106_781_186_547_5).abs() < 1e-12);
    }

    #[test]
    fn weak_hopping_form_matches_closed_form_at_quarter_period() {
        for n in 2..=12 {
            let a: f64 = w_negativity_weak_hopping(n, std::f64::consts::FRAC_PI_2).unwrap();
            let b: f64 = w_negativity_closed_form(n).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(w_negativity_weak_hopping::<f64>(3, 0.0).unwrap(), 0.0);
    }
}
