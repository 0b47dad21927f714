//! Random instances for oracle comparisons: groups, symmetric generating sets, states, parameters.

use num_complex::Complex;
use rand::Rng;

use crate::cayley::{validate_generator_indices, CayleyGraph};
use crate::dynamics::{CavityParams, ManifoldState};
use crate::group::FiniteAbelianGroup;
use crate::scalar::Real;

/// A product of cyclic factors with `2 ≤ |G| ≤ max_order`.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_order: usize) -> FiniteAbelianGroup {
    assert!(max_order >= 2, "max_order must be at least 2");
    let mut orders = Vec::new();
    let mut product = 1;
    loop {
        let cap = max_order / product;
        if cap < 2 {
            break;
        }
        let k = rng.gen_range(2..=cap);
        orders.push(k);
        product *= k;
        if rng.gen_bool(0.5) {
            break;
        }
    }
    FiniteAbelianGroup::new(orders).expect("factors are at least 2")
}

/// Up to `max_draws` random non-identity elements, closed under inversion.
pub fn random_graph_on<R: Rng + ?Sized>(
    rng: &mut R,
    group: FiniteAbelianGroup,
    max_draws: usize,
) -> CayleyGraph {
    let n = group.order();
    let draws = rng.gen_range(1..=max_draws.max(1));
    let mut gens = Vec::with_capacity(2 * draws);
    for _ in 0..draws {
        let s = rng.gen_range(1..n);
        gens.push(s);
        gens.push(group.inverse_index(s));
    }
    let set = validate_generator_indices(&group, &gens).expect("symmetric by construction");
    CayleyGraph::new(group, set)
}

pub fn random_graph<R: Rng + ?Sized>(
    rng: &mut R,
    max_order: usize,
    max_draws: usize,
) -> CayleyGraph {
    let group = random_group(rng, max_order);
    random_graph_on(rng, group, max_draws)
}

/// A normalized manifold state with independent uniform real and imaginary parts.
pub fn random_state<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> ManifoldState<T> {
    let mut draw = |_| Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)));
    let mut s = ManifoldState {
        c: (0..n).map(&mut draw).collect(),
        a: (0..n).map(&mut draw).collect(),
    };
    let norm = s.norm_sqr().sqrt();
    for z in s.c.iter_mut().chain(s.a.iter_mut()) {
        *z /= norm;
    }
    s
}

/// Ranges for [`random_params`].
#[derive(Debug, Clone, Copy)]
pub struct ParamRanges {
    pub omega_c: (f64, f64),
    pub detuning: (f64, f64),
    pub lambda: (f64, f64),
    pub xi: (f64, f64),
}

impl Default for ParamRanges {
    fn default() -> Self {
        Self {
            omega_c: (0.0, 2.0),
            detuning: (-2.0, 2.0),
            lambda: (0.3, 2.0),
            xi: (0.0, 10.0),
        }
    }
}

pub fn random_params<T: Real, R: Rng + ?Sized>(rng: &mut R, ranges: &ParamRanges) -> CavityParams<T> {
    let mut pick = |(lo, hi): (f64, f64)| if hi > lo { rng.gen_range(lo..hi) } else { lo };
    let omega_c = pick(ranges.omega_c);
    let delta = pick(ranges.detuning);
    let lambda = pick(ranges.lambda);
    let xi = pick(ranges.xi);
    CavityParams {
        omega_a: T::lit(2.0 * omega_c + delta),
        omega_c: T::lit(omega_c),
        lambda: T::lit(lambda),
        xi: T::lit(xi),
    }
}
