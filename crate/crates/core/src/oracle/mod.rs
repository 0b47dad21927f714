//! Independent numerical checks of the closed-form dynamics.
//!
//! Nothing here uses the character-basis block solution: the manifold Hamiltonian is assembled
//! directly in the site basis, propagated with RK4, and diagonalized with a Jacobi solver.

mod eigen;
mod full_space;
mod propagate;

use ndarray::Array2;
use num_complex::Complex;

use crate::cayley::CayleyGraph;
use crate::dynamics::CavityParams;
use crate::scalar::{Cplx, Real};

pub use eigen::{hermitian_deviation, hermitian_eigs, HermitianEigen};
pub use full_space::{
    full_space_closure_check, manifold_restriction, ClosureReport, MAX_FULL_SPACE_SITES,
};
pub use propagate::{default_step, gershgorin_interval, propagate_numeric, NORM_DRIFT_LIMIT};

/// The 2n×2n manifold Hamiltonian in the basis `c_0, a_0, …, c_{n−1}, a_{n−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHamiltonian<T> {
    matrix: Array2<Cplx<T>>,
}

impl<T: Real> DenseHamiltonian<T> {
    pub fn matrix(&self) -> &Array2<Cplx<T>> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, psi: &[Cplx<T>]) -> Vec<Cplx<T>> {
        self.matrix
            .rows()
            .into_iter()
            .map(|row| {
                row.iter()
                    .zip(psi)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (h, p)| acc + h * p)
            })
            .collect()
    }

    /// `⟨ψ|H|ψ⟩`
    pub fn expectation(&self, psi: &[Cplx<T>]) -> T {
        self.apply(psi)
            .iter()
            .zip(psi)
            .fold(T::zero(), |acc, (hp, p)| acc + (p.conj() * hp).re)
    }

    pub fn propagate(&self, psi0: &[Cplx<T>], t: T) -> crate::Result<Vec<Cplx<T>>> {
        propagate_numeric(&self.matrix, psi0, t, default_step(&self.matrix, t))
    }
}

/// `I_n ⊗ [[ω+Δ/2, √2λ], [√2λ, ω−Δ/2]] + 2ξ A ⊗ [[1, 0], [0, 0]]`
pub fn dense_manifold_hamiltonian<T: Real>(
    graph: &CayleyGraph,
    params: &CavityParams<T>,
) -> DenseHamiltonian<T> {
    let n = graph.order();
    let two = T::lit(2.0);
    let omega = params.omega(n);
    let half_delta = params.detuning() / two;
    let g = T::SQRT_2() * params.lambda;
    let hop = two * params.xi;
    let adj = graph.adjacency();
    let matrix = Array2::from_shape_fn((2 * n, 2 * n), |(r, c)| {
        let (i, ri) = (r / 2, r % 2);
        let (j, cj) = (c / 2, c % 2);
        let mut v = T::zero();
        if i == j {
            v += match (ri, cj) {
                (0, 0) => omega + half_delta,
                (1, 1) => omega - half_delta,
                _ => g,
            };
        }
        if ri == 0 && cj == 0 {
            v += hop * T::count(adj[(i, j)] as usize);
        }
        Complex::new(v, T::zero())
    });
    DenseHamiltonian { matrix }
}

/// `P ⊗ I_2` in the interleaved basis.
pub fn block_transform<T: Real>(graph: &CayleyGraph) -> Array2<Cplx<T>> {
    let p = graph.fourier::<T>();
    let n = graph.order();
    Array2::from_shape_fn((2 * n, 2 * n), |(r, c)| {
        if r % 2 == c % 2 {
            p[(r / 2, c / 2)]
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

/// `(P ⊗ I_2) H (P ⊗ I_2)†` split into its 2×2 diagonal blocks and the largest entry outside them.
#[derive(Debug, Clone)]
pub struct BlockDecomposition<T> {
    pub blocks: Vec<[[Cplx<T>; 2]; 2]>,
    pub off_block_residual: T,
}

pub fn block_decompose<T: Real>(
    graph: &CayleyGraph,
    h: &DenseHamiltonian<T>,
) -> BlockDecomposition<T> {
    let u = block_transform::<T>(graph);
    let u_dag = u.t().mapv(|z| z.conj());
    let conj = u.dot(h.matrix()).dot(&u_dag);
    let n = graph.order();
    let mut off = T::zero();
    for r in 0..2 * n {
        for c in 0..2 * n {
            if r / 2 != c / 2 {
                off = off.max(conj[(r, c)].norm());
            }
        }
    }
    let blocks = (0..n)
        .map(|j| {
            [
                [conj[(2 * j, 2 * j)], conj[(2 * j, 2 * j + 1)]],
                [conj[(2 * j + 1, 2 * j)], conj[(2 * j + 1, 2 * j + 1)]],
            ]
        })
        .collect();
    BlockDecomposition {
        blocks,
        off_block_residual: off,
    }
}
