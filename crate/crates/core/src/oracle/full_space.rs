//! The Hamiltonian on the full `3^n` product space, built from single-site operator actions.
//!
//! Each site carries `{|g,0⟩, |g,2⟩, |e,0⟩}`. Operators that leave this span, for example `a†²`
//! acting on `|g,2⟩`, are tracked as escaped amplitude instead of being dropped silently. For
//! inputs supported on the manifold none escape, so closure in the truncated space is closure
//! in the untruncated one.

use ndarray::Array2;
use num_complex::Complex;
use serde::Serialize;

use crate::cayley::CayleyGraph;
use crate::dynamics::CavityParams;
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

use super::dense_manifold_hamiltonian;

pub const MAX_FULL_SPACE_SITES: usize = 5;

const G0: usize = 0;
const G2: usize = 1;
const E0: usize = 2;

/// Outcome of [`full_space_closure_check`]. All errors are max-abs entries.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub sites: usize,
    pub full_dimension: usize,
    pub manifold_dimension: usize,
    /// Largest `|H_full[r, m]|` with `m` in the manifold and `r` outside it.
    pub leakage: f64,
    /// Norm of amplitude pushed out of the three-level truncation by manifold columns.
    pub truncation_escape: f64,
    /// `max |P H_full P − H_manifold|` against the 2n×2n dense Hamiltonian.
    pub restriction_error: f64,
    /// `max |[H_full, N̂]|` over the truncated space.
    pub commutator_full: f64,
    /// `max |[H_restricted, N̂_restricted]|`.
    pub commutator_restricted: f64,
    /// `max |N̂ − (2−n)/2|` over the manifold basis.
    pub manifold_eigenvalue_error: f64,
    pub tolerance: f64,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        [
            self.leakage,
            self.truncation_escape,
            self.restriction_error,
            self.commutator_full,
            self.commutator_restricted,
            self.manifold_eigenvalue_error,
        ]
        .iter()
        .all(|&e| e <= self.tolerance)
    }
}

struct FullSpace<'a, T> {
    n: usize,
    params: &'a CavityParams<T>,
    edges: Vec<(usize, usize)>,
    pow3: Vec<usize>,
}

impl<'a, T: Real> FullSpace<'a, T> {
    fn new(graph: &CayleyGraph, params: &'a CavityParams<T>) -> Self {
        let n = graph.order();
        let a = graph.adjacency();
        let edges = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a[(i, j)] != 0)
            .collect();
        let pow3 = (0..=n).map(|k| 3usize.pow(k as u32)).collect();
        Self {
            n,
            params,
            edges,
            pow3,
        }
    }

    fn dim(&self) -> usize {
        self.pow3[self.n]
    }

    // interleaved c_0, a_0, c_1, a_1, …
    fn manifold(&self) -> Vec<usize> {
        (0..self.n)
            .flat_map(|k| [G2 * self.pow3[k], E0 * self.pow3[k]])
            .collect()
    }

    fn digit(&self, index: usize, site: usize) -> usize {
        index / self.pow3[site] % 3
    }

    fn with_digit(&self, index: usize, site: usize, value: usize) -> usize {
        index - self.digit(index, site) * self.pow3[site] + value * self.pow3[site]
    }

    fn site_energy(&self, level: usize) -> T {
        let half = T::lit(0.5);
        match level {
            G0 => -half * self.params.omega_a,
            G2 => -half * self.params.omega_a + T::lit(2.0) * self.params.omega_c,
            _ => half * self.params.omega_a,
        }
    }

    // ½ a†a + s_z on one site
    fn site_number(level: usize) -> T {
        match level {
            G0 => T::lit(-0.5),
            _ => T::lit(0.5),
        }
    }

    fn number(&self, index: usize) -> T {
        (0..self.n).fold(T::zero(), |s, k| s + Self::site_number(self.digit(index, k)))
    }

    /// `H|index⟩` as (target, amplitude) pairs plus the squared norm that left the truncation.
    fn apply(&self, index: usize) -> (Vec<(usize, T)>, T) {
        let mut out = Vec::new();
        let mut escaped = T::zero();
        let diag = (0..self.n).fold(T::zero(), |s, k| s + self.site_energy(self.digit(index, k)));
        out.push((index, diag));

        // λ(σ_eg a² + σ_ge a†²): |g,2⟩ ↔ |e,0⟩ with amplitude √2λ
        let g = T::SQRT_2() * self.params.lambda;
        for k in 0..self.n {
            match self.digit(index, k) {
                G2 => out.push((self.with_digit(index, k, E0), g)),
                E0 => out.push((self.with_digit(index, k, G2), g)),
                _ => {}
            }
        }

        // ξ Σ_{edges} (a_i†² a_j² + a_j†² a_i²)
        for &(i, j) in &self.edges {
            for (to, from) in [(i, j), (j, i)] {
                if self.digit(index, from) != G2 {
                    continue;
                }
                // a² |2⟩ = √2 |0⟩
                let lowered = self.with_digit(index, from, G0);
                let amp = self.params.xi * T::SQRT_2();
                match self.digit(lowered, to) {
                    // a†² |0⟩ = √2 |2⟩
                    G0 => out.push((self.with_digit(lowered, to, G2), amp * T::SQRT_2())),
                    // a†²|e,0⟩ = √2|e,2⟩, a†²|g,2⟩ = √12|g,4⟩: both outside the span
                    E0 => escaped += (amp * T::SQRT_2()).powi(2),
                    _ => escaped += (amp * T::lit(12.0).sqrt()).powi(2),
                }
            }
        }
        (out, escaped)
    }
}

/// Builds `H` on the three-level product space (`n ≤ 5`) and checks that the manifold is invariant.
pub fn full_space_closure_check<T: Real>(
    graph: &CayleyGraph,
    params: &CavityParams<T>,
) -> Result<ClosureReport> {
    let n = graph.order();
    if n > MAX_FULL_SPACE_SITES {
        return Err(Error::TooLarge {
            n,
            max: MAX_FULL_SPACE_SITES,
        });
    }
    params.validate()?;
    let space = FullSpace::new(graph, params);
    let dim = space.dim();

    let mut full = Array2::<T>::zeros((dim, dim));
    let mut escape = vec![T::zero(); dim];
    for col in 0..dim {
        let (entries, escaped) = space.apply(col);
        for (row, amp) in entries {
            full[(row, col)] += amp;
        }
        escape[col] = escaped;
    }

    // manifold basis in the interleaved order c_0, a_0, c_1, a_1, …
    let manifold = space.manifold();
    let mut in_manifold = vec![false; dim];
    for &m in &manifold {
        in_manifold[m] = true;
    }

    let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
    let mut leakage = 0.0f64;
    let mut truncation_escape = 0.0f64;
    for &m in &manifold {
        for row in 0..dim {
            if !in_manifold[row] {
                leakage = leakage.max(f(full[(row, m)].abs()));
            }
        }
        truncation_escape = truncation_escape.max(f(escape[m].sqrt()));
    }

    let dense = dense_manifold_hamiltonian(graph, params);
    let mut restriction_error = 0.0f64;
    let mut restricted = Array2::<T>::zeros((2 * n, 2 * n));
    for (r, &mr) in manifold.iter().enumerate() {
        for (c, &mc) in manifold.iter().enumerate() {
            restricted[(r, c)] = full[(mr, mc)];
            let diff: Cplx<T> = dense.matrix()[(r, c)] - Complex::new(full[(mr, mc)], T::zero());
            restriction_error = restriction_error.max(f(diff.norm()));
        }
    }

    let numbers: Vec<T> = (0..dim).map(|i| space.number(i)).collect();
    let mut commutator_full = 0.0f64;
    for r in 0..dim {
        for c in 0..dim {
            let v = full[(r, c)];
            if v != T::zero() {
                commutator_full = commutator_full.max(f((v * (numbers[c] - numbers[r])).abs()));
            }
        }
    }
    let expected_number = (T::lit(2.0) - T::count(n)) / T::lit(2.0);
    let manifold_numbers: Vec<T> = manifold.iter().map(|&m| numbers[m]).collect();
    let manifold_eigenvalue_error = manifold_numbers
        .iter()
        .fold(0.0f64, |w, &v| w.max(f((v - expected_number).abs())));
    let mut commutator_restricted = 0.0f64;
    for r in 0..2 * n {
        for c in 0..2 * n {
            let v = restricted[(r, c)] * (manifold_numbers[c] - manifold_numbers[r]);
            commutator_restricted = commutator_restricted.max(f(v.abs()));
        }
    }

    Ok(ClosureReport {
        sites: n,
        full_dimension: dim,
        manifold_dimension: 2 * n,
        leakage,
        truncation_escape,
        restriction_error,
        commutator_full,
        commutator_restricted,
        manifold_eigenvalue_error,
        tolerance: f(T::tol(1e-12, 64.0)),
    })
}

/// The full-space Hamiltonian restricted to the manifold, in the order `c_0, a_0, c_1, …`.
pub fn manifold_restriction<T: Real>(
    graph: &CayleyGraph,
    params: &CavityParams<T>,
) -> Result<Array2<T>> {
    let n = graph.order();
    if n > MAX_FULL_SPACE_SITES {
        return Err(Error::TooLarge {
            n,
            max: MAX_FULL_SPACE_SITES,
        });
    }
    let space = FullSpace::new(graph, params);
    let manifold = space.manifold();
    let mut out = Array2::zeros((2 * n, 2 * n));
    for (c, &mc) in manifold.iter().enumerate() {
        let (entries, _) = space.apply(mc);
        for (row, amp) in entries {
            if let Some(r) = manifold.iter().position(|&m| m == row) {
                out[(r, c)] += amp;
            }
        }
    }
    Ok(out)
}
