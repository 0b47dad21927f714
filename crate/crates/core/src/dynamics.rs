//! Exact dynamics on the 2n-dimensional photon-excitation manifold.
//!
//! The manifold is spanned by `|c_i⟩` (two photons in cavity `i`, every atom in `g`) and
//! `|a_i⟩` (atom `i` excited, no photons). In the character basis
//! `|c_j⟩' = n^{-1/2} Σ_i χ_j(α_i)|c_i⟩` (likewise for `|a_j⟩'`) the Hamiltonian splits into
//! independent 2×2 blocks
//!
//! ```text
//! H_j = [[ω + Δ/2 + 2ξx_j, √2λ],
//!        [√2λ,             ω − Δ/2]]
//! ```
//!
//! where `x_j` is the adjacency eigenvalue, `Δ = ω_a − 2ω_c` and `ω = ½[(2−n)ω_a − Δ]`.
//! Each block is a two-level Rabi problem solved in closed form by [`evolve_block`].
//! Amplitudes keep the `e^{−i(ω+ξx_j)t}` phases; nothing is gauged away.

use ndarray::Array2;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::group::CharacterTable;
use crate::scalar::{cis, Cplx, Real};

/// `|x_j|` below this counts as a zero adjacency eigenvalue in the large-hopping forms.
pub const ZERO_EIGENVALUE_THRESHOLD: f64 = 1e-9;

/// Physical constants of one atom-cavity site plus the hopping rate (ħ = 1, rad/time).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityParams<T> {
    /// Atomic level splitting `ω_a`.
    pub omega_a: T,
    /// Cavity mode frequency `ω_c`.
    pub omega_c: T,
    /// Two-photon atom-field coupling `λ`.
    pub lambda: T,
    /// Two-photon hopping rate `ξ` between adjacent cavities.
    pub xi: T,
}

impl<T: Real> CavityParams<T> {
    pub fn new(omega_a: T, omega_c: T, lambda: T, xi: T) -> Result<Self> {
        let p = Self {
            omega_a,
            omega_c,
            lambda,
            xi,
        };
        p.validate()?;
        Ok(p)
    }

    /// Two-photon resonance `Δ = 0` with `λ = 1/√2` and `ω_c = 1`.
    pub fn resonant(xi: T) -> Self {
        Self {
            omega_a: T::lit(2.0),
            omega_c: T::one(),
            lambda: T::FRAC_1_SQRT_2(),
            xi,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega_a, self.omega_c, self.lambda, self.xi]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if self.lambda <= T::zero() {
            return Err(Error::InvalidParameter(format!(
                "coupling λ must be positive, got {}",
                self.lambda
            )));
        }
        if self.xi < T::zero() {
            return Err(Error::InvalidParameter(format!(
                "hopping ξ must be non-negative, got {}",
                self.xi
            )));
        }
        Ok(())
    }

    pub fn with_xi(self, xi: T) -> Self {
        Self { xi, ..self }
    }

    /// `Δ = ω_a − 2ω_c`
    pub fn detuning(&self) -> T {
        self.omega_a - T::lit(2.0) * self.omega_c
    }

    /// `ω = ½[(2−n)ω_a − Δ]` for a graph with `n` sites.
    pub fn omega(&self, n: usize) -> T {
        let two = T::lit(2.0);
        ((two - T::count(n)) * self.omega_a - self.detuning()) / two
    }

    /// Rabi frequency `√(2λ² + (Δ/2 + ξx)²)` of the block with adjacency eigenvalue `x`.
    pub fn rabi_frequency(&self, x: T) -> T {
        let two = T::lit(2.0);
        let d = self.detuning() / two + self.xi * x;
        (two * self.lambda * self.lambda + d * d).sqrt()
    }

    /// Whether the resonant closed forms (`Δ = 0`, `λ = 1/√2`) apply.
    pub fn is_standard_resonance(&self) -> bool {
        let tol = T::tol(1e-12, 16.0);
        let scale = T::one().max(self.omega_a.abs()).max(self.omega_c.abs());
        self.detuning().abs() <= tol * scale && (self.lambda - T::FRAC_1_SQRT_2()).abs() <= tol
    }

    fn require_standard_resonance(&self) -> Result<()> {
        if self.is_standard_resonance() {
            Ok(())
        } else {
            Err(Error::NotResonant {
                delta: self.detuning().to_f64().unwrap_or(f64::NAN),
                lambda: self.lambda.to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}

impl Default for CavityParams<f64> {
    fn default() -> Self {
        Self::resonant(0.0)
    }
}

/// `|ψ⟩ = Σ_i C_i|c_i⟩ + A_i|a_i⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifoldState<T> {
    /// Photonic amplitudes `C_i`.
    pub c: Vec<Cplx<T>>,
    /// Atomic amplitudes `A_i`.
    pub a: Vec<Cplx<T>>,
}

/// Amplitudes `C'_j`, `A'_j` in the character basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockState<T> {
    pub cp: Vec<Cplx<T>>,
    pub ap: Vec<Cplx<T>>,
}

fn zero<T: Real>() -> Cplx<T> {
    Complex::new(T::zero(), T::zero())
}

fn check_site(n: usize, i: usize) -> Result<()> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, size: n });
    }
    Ok(())
}

impl<T: Real> ManifoldState<T> {
    pub fn new(c: Vec<Cplx<T>>, a: Vec<Cplx<T>>) -> Result<Self> {
        if c.len() != a.len() {
            return Err(Error::StateDimension {
                expected: c.len(),
                got: a.len(),
            });
        }
        Ok(Self { c, a })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            c: vec![zero(); n],
            a: vec![zero(); n],
        }
    }

    /// Photonic W-state: `C_i = 1/√n` for every site.
    pub fn w_state(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("W-state needs n ≥ 1".into()));
        }
        let amp = T::count(n).sqrt().recip();
        Ok(Self {
            c: vec![Complex::new(amp, T::zero()); n],
            a: vec![zero(); n],
        })
    }

    /// Two photons in cavity `i`.
    pub fn photon_at(n: usize, i: usize) -> Result<Self> {
        check_site(n, i)?;
        let mut s = Self::zeros(n);
        s.c[i] = Complex::new(T::one(), T::zero());
        Ok(s)
    }

    /// Atom `i` excited.
    pub fn excitation_at(n: usize, i: usize) -> Result<Self> {
        check_site(n, i)?;
        let mut s = Self::zeros(n);
        s.a[i] = Complex::new(T::one(), T::zero());
        Ok(s)
    }

    pub fn sites(&self) -> usize {
        self.c.len()
    }

    pub fn norm_sqr(&self) -> T {
        let (pa, pc) = self.total_probabilities();
        pa + pc
    }

    /// `(P_a, P_c) = (Σ|A_i|², Σ|C_i|²)`
    pub fn total_probabilities(&self) -> (T, T) {
        let sum = |v: &[Cplx<T>]| v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        (sum(&self.a), sum(&self.c))
    }

    /// Ordering `c_0, a_0, c_1, a_1, …`.
    pub fn to_interleaved(&self) -> Vec<Cplx<T>> {
        self.c
            .iter()
            .zip(&self.a)
            .flat_map(|(&c, &a)| [c, a])
            .collect()
    }

    pub fn from_interleaved(v: &[Cplx<T>]) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "interleaved vector has odd length {}",
                v.len()
            )));
        }
        Ok(Self {
            c: v.iter().step_by(2).copied().collect(),
            a: v.iter().skip(1).step_by(2).copied().collect(),
        })
    }

    /// Largest amplitude difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.c
            .iter()
            .zip(&other.c)
            .chain(self.a.iter().zip(&other.a))
            .fold(T::zero(), |m, (x, y)| m.max((x - y).norm()))
    }
}

impl<T: Real> BlockState<T> {
    /// Parseval: the same `(P_a, P_c)` as the site-basis state.
    pub fn total_probabilities(&self) -> (T, T) {
        let sum = |v: &[Cplx<T>]| v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        (sum(&self.ap), sum(&self.cp))
    }
}

/// `(P_a, P_c)` of a site-basis state.
pub fn total_probabilities<T: Real>(state: &ManifoldState<T>) -> (T, T) {
    state.total_probabilities()
}

/// The 2×2 block `H_j` for adjacency eigenvalue `x` on an `n`-site graph.
pub fn block_hamiltonian<T: Real>(params: &CavityParams<T>, n: usize, x: T) -> Array2<Cplx<T>> {
    let two = T::lit(2.0);
    let omega = params.omega(n);
    let half_delta = params.detuning() / two;
    let g = T::SQRT_2() * params.lambda;
    let re = |v: T| Complex::new(v, T::zero());
    ndarray::arr2(&[
        [re(omega + half_delta + two * params.xi * x), re(g)],
        [re(g), re(omega - half_delta)],
    ])
}

/// Block eigenvalues `(E₊, E₋) = (ω + ξx) ± √(2λ² + (Δ/2 + ξx)²)`.
pub fn block_energies<T: Real>(params: &CavityParams<T>, n: usize, x: T) -> (T, T) {
    let center = params.omega(n) + params.xi * x;
    let r = params.rabi_frequency(x);
    (center + r, center - r)
}

/// Closed-form propagation of one block from `(C'(0), A'(0))` to time `t`.
pub fn evolve_block<T: Real>(
    params: &CavityParams<T>,
    n: usize,
    x: T,
    t: T,
    cp0: Cplx<T>,
    ap0: Cplx<T>,
) -> (Cplx<T>, Cplx<T>) {
    let i = Complex::new(T::zero(), T::one());
    let r = params.rabi_frequency(x);
    let detune = params.detuning() / T::lit(2.0) + params.xi * x;
    let g = T::SQRT_2() * params.lambda;
    let (sin_rt, cos_rt) = (r * t).sin_cos();
    // sin(Rt)/R, finite as R → 0
    let sinc = if r > T::epsilon() { sin_rt / r } else { t };
    let phase = cis(-(params.omega(n) + params.xi * x) * t);

    let cp = (cp0 * Complex::new(cos_rt, -detune * sinc) - i * g * sinc * ap0) * phase;
    let ap = (ap0 * Complex::new(cos_rt, detune * sinc) - i * g * sinc * cp0) * phase;
    (cp, ap)
}

/// Large-/small-hopping regime for [`asymptotic_photon_amplitudes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Small,
    Large,
}

/// Precomputed characters and spectrum for repeated evaluation on one graph.
#[derive(Debug, Clone)]
pub struct Evolution<T: Real> {
    params: CavityParams<T>,
    table: CharacterTable<T>,
    spectrum: Vec<T>,
    inv_sqrt_n: T,
}

impl<T: Real> Evolution<T> {
    pub fn new(graph: &CayleyGraph, params: CavityParams<T>) -> Result<Self> {
        params.validate()?;
        let spectrum = graph.spectrum::<T>()?.values().to_vec();
        let table = CharacterTable::new(graph.group())?;
        Ok(Self {
            params,
            table,
            inv_sqrt_n: T::count(spectrum.len()).sqrt().recip(),
            spectrum,
        })
    }

    pub fn params(&self) -> &CavityParams<T> {
        &self.params
    }

    pub fn sites(&self) -> usize {
        self.spectrum.len()
    }

    pub fn spectrum(&self) -> &[T] {
        &self.spectrum
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.sites() {
            return Err(Error::StateDimension {
                expected: self.sites(),
                got: len,
            });
        }
        Ok(())
    }

    // out_j = n^{-1/2} Σ_i χ_j(α_i) v_i
    fn forward(&self, v: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let n = self.sites();
        (0..n)
            .map(|j| {
                (0..n).fold(zero(), |acc, i| acc + self.table.get(j, i) * v[i]) * self.inv_sqrt_n
            })
            .collect()
    }

    // out_i = n^{-1/2} Σ_j χ_j*(α_i) v_j
    fn backward(&self, v: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let n = self.sites();
        (0..n)
            .map(|i| {
                (0..n).fold(zero(), |acc, j| acc + self.table.get(j, i).conj() * v[j])
                    * self.inv_sqrt_n
            })
            .collect()
    }

    pub fn to_block_basis(&self, state: &ManifoldState<T>) -> Result<BlockState<T>> {
        self.check_len(state.c.len())?;
        self.check_len(state.a.len())?;
        Ok(BlockState {
            cp: self.forward(&state.c),
            ap: self.forward(&state.a),
        })
    }

    pub fn from_block_basis(&self, block: &BlockState<T>) -> Result<ManifoldState<T>> {
        self.check_len(block.cp.len())?;
        self.check_len(block.ap.len())?;
        Ok(ManifoldState {
            c: self.backward(&block.cp),
            a: self.backward(&block.ap),
        })
    }

    pub fn evolve_blocks(&self, block: &BlockState<T>, t: T) -> Result<BlockState<T>> {
        self.check_len(block.cp.len())?;
        self.check_len(block.ap.len())?;
        let n = self.sites();
        let (cp, ap) = (0..n)
            .map(|j| {
                evolve_block(
                    &self.params,
                    n,
                    self.spectrum[j],
                    t,
                    block.cp[j],
                    block.ap[j],
                )
            })
            .unzip();
        Ok(BlockState { cp, ap })
    }

    /// `ψ(t)` for any initial manifold state.
    pub fn evolve(&self, state0: &ManifoldState<T>, t: T) -> Result<ManifoldState<T>> {
        let block = self.to_block_basis(state0)?;
        self.from_block_basis(&self.evolve_blocks(&block, t)?)
    }

    // (1/n) Σ_j f(j) χ_j*(α_i), one output per site
    fn character_sum(&self, f: impl Fn(usize) -> Cplx<T>) -> Vec<Cplx<T>> {
        let n = self.sites();
        let weights: Vec<Cplx<T>> = (0..n).map(f).collect();
        let inv_n = T::count(n).recip();
        (0..n)
            .map(|i| {
                (0..n).fold(zero(), |acc, j| acc + weights[j] * self.table.get(j, i).conj())
                    * inv_n
            })
            .collect()
    }

    /// Closed-form amplitudes for two photons starting in cavity 0 (resonance, λ = 1/√2).
    pub fn photon_transfer_amplitudes(&self, t: T) -> Result<ManifoldState<T>> {
        self.params.require_standard_resonance()?;
        let n = self.sites();
        let i = Complex::new(T::zero(), T::one());
        let omega = self.params.omega(n);
        let xi = self.params.xi;
        let c = self.character_sum(|j| {
            let xx = xi * self.spectrum[j];
            let r = (T::one() + xx * xx).sqrt();
            let (s, co) = (t * r).sin_cos();
            cis(-(omega + xx) * t) / r * (Complex::new(r * co, T::zero()) - i * xx * s)
        });
        let a = self.character_sum(|j| {
            let xx = xi * self.spectrum[j];
            let r = (T::one() + xx * xx).sqrt();
            -i * cis(-(omega + xx) * t) / r * (t * r).sin()
        });
        Ok(ManifoldState { c, a })
    }

    /// Closed-form amplitudes for atom 0 initially excited (resonance, λ = 1/√2).
    pub fn excitation_transfer_amplitudes(&self, t: T) -> Result<ManifoldState<T>> {
        self.params.require_standard_resonance()?;
        let n = self.sites();
        let i = Complex::new(T::zero(), T::one());
        let omega = self.params.omega(n);
        let xi = self.params.xi;
        let c = self.character_sum(|j| {
            let xx = xi * self.spectrum[j];
            let r = (T::one() + xx * xx).sqrt();
            -i * cis(-(omega + xx) * t) / r * (t * r).sin()
        });
        let a = self.character_sum(|j| {
            let xx = xi * self.spectrum[j];
            let r = (T::one() + xx * xx).sqrt();
            let (s, co) = (t * r).sin_cos();
            cis(-(omega + xx) * t) / r * (Complex::new(r * co, T::zero()) + i * xx * s)
        });
        Ok(ManifoldState { c, a })
    }

    /// Leading-order photon-transfer amplitudes for `ξ → 0` or `ξ → ∞`.
    pub fn asymptotic_photon_amplitudes(&self, t: T, regime: Regime) -> Result<ManifoldState<T>> {
        self.params.require_standard_resonance()?;
        let n = self.sites();
        let i = Complex::new(T::zero(), T::one());
        let phase = cis(-self.params.omega(n) * t);
        let (sin_t, cos_t) = t.sin_cos();
        let zero_tol = T::lit(ZERO_EIGENVALUE_THRESHOLD);
        let two = T::lit(2.0);
        let xi = self.params.xi;
        match regime {
            Regime::Small => Ok(ManifoldState {
                c: self.character_sum(|_| phase * cos_t),
                a: self.character_sum(|_| -i * phase * sin_t),
            }),
            Regime::Large => Ok(ManifoldState {
                c: self.character_sum(|j| {
                    let x = self.spectrum[j];
                    if x.abs() < zero_tol {
                        phase * cos_t
                    } else {
                        phase * cis(-two * xi * t * x)
                    }
                }),
                a: self.character_sum(|j| {
                    if self.spectrum[j].abs() < zero_tol {
                        -i * phase * sin_t
                    } else {
                        zero()
                    }
                }),
            }),
        }
    }
}

pub fn to_block_basis<T: Real>(
    graph: &CayleyGraph,
    state: &ManifoldState<T>,
) -> Result<BlockState<T>> {
    Evolution::new(graph, CavityParams::resonant(T::zero()))?.to_block_basis(state)
}

pub fn from_block_basis<T: Real>(
    graph: &CayleyGraph,
    block: &BlockState<T>,
) -> Result<ManifoldState<T>> {
    Evolution::new(graph, CavityParams::resonant(T::zero()))?.from_block_basis(block)
}

/// Exact `ψ(t)`: character transform, per-block Rabi rotation, inverse transform.
pub fn evolve<T: Real>(
    graph: &CayleyGraph,
    params: &CavityParams<T>,
    state0: &ManifoldState<T>,
    t: T,
) -> Result<ManifoldState<T>> {
    Evolution::new(graph, *params)?.evolve(state0, t)
}

pub fn photon_transfer_amplitudes<T: Real>(
    graph: &CayleyGraph,
    params: &CavityParams<T>,
    t: T,
) -> Result<ManifoldState<T>> {
    Evolution::new(graph, *params)?.photon_transfer_amplitudes(t)
}

pub fn excitation_transfer_amplitudes<T: Real>(
    graph: &CayleyGraph,
    params: &CavityParams<T>,
    t: T,
) -> Result<ManifoldState<T>> {
    Evolution::new(graph, *params)?.excitation_transfer_amplitudes(t)
}

pub fn asymptotic_photon_amplitudes<T: Real>(
    graph: &CayleyGraph,
    params: &CavityParams<T>,
    t: T,
    regime: Regime,
) -> Result<ManifoldState<T>> {
    Evolution::new(graph, *params)?.asymptotic_photon_amplitudes(t, regime)
}
