use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use cayley_cavity::entanglement::{negativity, partial_transpose_first, two_atom_reduced};
use cayley_cavity::oracle::{dense_manifold_hamiltonian, hermitian_eigs};
use cayley_cavity::sampling::{random_graph, random_params, random_state, ParamRanges};
use cayley_cavity::{
    w_negativity_closed_form, w_negativity_weak_hopping, CavityParams, CayleyGraph, Complex64,
    Evolution, ManifoldState, Regime,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, max_order: usize) -> (CayleyGraph, CavityParams<f64>, ManifoldState<f64>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(&mut rng, max_order, 3);
    let p = random_params(&mut rng, &ParamRanges::default());
    let psi = random_state(&mut rng, g.order());
    (g, p, psi, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evolution_is_unitary(seed in any::<u64>()) {
        let (g, p, psi, mut rng) = instance(seed, 32);
        let t = rng.gen_range(0.0..50.0);
        let out = Evolution::new(&g, p).unwrap().evolve(&psi, t).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolution_composes(seed in any::<u64>()) {
        let (g, p, psi, mut rng) = instance(seed, 32);
        let (t1, t2) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
        let evo = Evolution::new(&g, p).unwrap();
        let direct = evo.evolve(&psi, t1 + t2).unwrap();
        let stepped = evo.evolve(&evo.evolve(&psi, t1).unwrap(), t2).unwrap();
        prop_assert!(direct.max_abs_diff(&stepped) < 1e-9);
    }

    #[test]
    fn energy_is_conserved(seed in any::<u64>()) {
        let (g, p, psi, mut rng) = instance(seed, 16);
        let t = rng.gen_range(0.0..20.0);
        let h = dense_manifold_hamiltonian(&g, &p);
        let out = Evolution::new(&g, p).unwrap().evolve(&psi, t).unwrap();
        let before = h.expectation(&psi.to_interleaved());
        let after = h.expectation(&out.to_interleaved());
        prop_assert!((before - after).abs() < 1e-9 * (1.0 + before.abs()));
    }

    #[test]
    fn fourier_round_trip_preserves_norm(seed in any::<u64>()) {
        let (g, p, psi, _) = instance(seed, 48);
        let evo = Evolution::new(&g, p).unwrap();
        let blocks = evo.to_block_basis(&psi).unwrap();
        let (ba, bc) = blocks.total_probabilities();
        let (pa, pc) = psi.total_probabilities();
        prop_assert!((ba - pa).abs() < 1e-12 && (bc - pc).abs() < 1e-12);
        let back = evo.from_block_basis(&blocks).unwrap();
        prop_assert!(back.max_abs_diff(&psi) < 1e-12);
    }

    #[test]
    fn transfer_amplitudes_match_evolution(seed in any::<u64>(), xi in 0.0f64..10.0, t in 0.0f64..20.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 24, 3);
        let evo = Evolution::new(&g, CavityParams::resonant(xi)).unwrap();
        let n = g.order();
        let photon = evo.evolve(&ManifoldState::photon_at(n, 0).unwrap(), t).unwrap();
        let excite = evo.evolve(&ManifoldState::excitation_at(n, 0).unwrap(), t).unwrap();
        prop_assert!(evo.photon_transfer_amplitudes(t).unwrap().max_abs_diff(&photon) < 1e-10);
        prop_assert!(evo.excitation_transfer_amplitudes(t).unwrap().max_abs_diff(&excite) < 1e-10);
    }

    #[test]
    fn spectrum_matches_eigensolver(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 64, 3);
        let adj = g.adjacency_real::<f64>().mapv(|v| Complex64::new(v, 0.0));
        let numeric = hermitian_eigs(&adj).unwrap().values;
        let closed = g.spectrum::<f64>().unwrap().sorted();
        for (a, b) in closed.iter().zip(&numeric) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn fourier_diagonalizes_adjacency(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 64, 3);
        let f = g.fourier::<f64>();
        let adj = g.adjacency_real::<f64>().mapv(|v| Complex64::new(v, 0.0));
        let fh = f.t().mapv(|z| z.conj());
        let d = f.dot(&adj).dot(&fh);
        let x = g.spectrum::<f64>().unwrap();
        for ((i, j), z) in d.indexed_iter() {
            let want = if i == j { x.get(i) } else { 0.0 };
            prop_assert!((z - Complex64::new(want, 0.0)).norm() < 1e-11);
        }
    }

    #[test]
    fn reduced_density_symmetries(seed in any::<u64>(), t in 0.0f64..10.0, xi in 0.0f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 16, 3);
        let n = g.order();
        prop_assume!(n >= 3);
        let s = Evolution::new(&g, CavityParams::resonant(xi)).unwrap()
            .evolve(&ManifoldState::w_state(n).unwrap(), t).unwrap();
        let (l, m, k) = (0, 1, 2);
        let forward = negativity(&two_atom_reduced(&s, l, m).unwrap()).unwrap();
        let backward = negativity(&two_atom_reduced(&s, m, l).unwrap()).unwrap();
        let other = negativity(&two_atom_reduced(&s, l, k).unwrap()).unwrap();
        prop_assert!((forward - backward).abs() < 1e-10);
        prop_assert!((forward - other).abs() < 1e-10);
    }
}

#[test]
fn w_density_negativity_matches_closed_form() {
    for n in [2usize, 3, 4, 6, 8] {
        let g = CayleyGraph::cycle(n.max(3)).unwrap();
        let g = if n == 2 { CayleyGraph::hypercube(1).unwrap() } else { g };
        let evo = Evolution::new(&g, CavityParams::new(0.0, 0.0, FRAC_1_SQRT_2, 0.0).unwrap()).unwrap();
        let s = evo.evolve(&ManifoldState::w_state(n).unwrap(), FRAC_PI_2).unwrap();
        let rho = two_atom_reduced(&s, 0, 1).unwrap();
        let closed: f64 = w_negativity_closed_form(n).unwrap();
        assert!((negativity(&rho).unwrap() - closed).abs() < 1e-12, "n = {n}");

        let eig = hermitian_eigs(&partial_transpose_first(rho.matrix())).unwrap().values;
        let (nf, k) = (n as f64, (n - 2) as f64);
        let root = (k * k + 4.0).sqrt();
        let mut want = vec![1.0 / nf, 1.0 / nf, (k + root) / (2.0 * nf), (k - root) / (2.0 * nf)];
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in eig.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12, "n = {n}: {eig:?} vs {want:?}");
        }
    }
}

#[test]
fn weak_hopping_negativity_tracks_time() {
    let g = CayleyGraph::cycle(5).unwrap();
    let evo = Evolution::new(&g, CavityParams::new(0.0, 0.0, FRAC_1_SQRT_2, 0.0).unwrap()).unwrap();
    let w = ManifoldState::w_state(5).unwrap();
    for k in 0..=50 {
        let t = PI * k as f64 / 50.0;
        let s = evo.evolve(&w, t).unwrap();
        let got = negativity(&two_atom_reduced(&s, 0, 2).unwrap()).unwrap();
        let want: f64 = w_negativity_weak_hopping(5, t).unwrap();
        assert!((got - want).abs() < 1e-12, "t = {t}");
    }
}

#[test]
fn weak_hopping_excitation_stays_in_the_atom() {
    let g = CayleyGraph::cycle(6).unwrap();
    let evo = Evolution::new(&g, CavityParams::resonant(1e-6)).unwrap();
    let s = evo.evolve(&ManifoldState::excitation_at(6, 0).unwrap(), PI).unwrap();
    for (i, z) in s.c.iter().enumerate() {
        assert!(z.norm() < 1e-3, "C_{i}(π) = {z}");
    }
    assert!((s.a[0].norm() - 1.0).abs() < 1e-6);
}

#[test]
fn weak_hopping_w_reaches_atoms_at_quarter_period() {
    let g = CayleyGraph::cycle(4).unwrap();
    let evo = Evolution::new(&g, CavityParams::resonant(1e-6)).unwrap();
    let s = evo.evolve(&ManifoldState::w_state(4).unwrap(), FRAC_PI_2).unwrap();
    let phase = Complex64::from_polar(1.0, -evo.params().omega(4) * FRAC_PI_2);
    for a in &s.a {
        assert!((a - Complex64::new(0.0, -0.5) * phase).norm() < 1e-5);
    }
}

#[test]
fn strong_hopping_w_keeps_photons() {
    let g = CayleyGraph::cycle(4).unwrap();
    let p = CavityParams::resonant(1e3);
    let evo = Evolution::new(&g, p).unwrap();
    let x_min = evo.spectrum().iter().filter(|x: &&f64| x.abs() > 1e-9).fold(f64::INFINITY, |m: f64, x| m.min(x.abs()));
    let bound = 2.0 * p.lambda * p.lambda / (p.xi * x_min).powi(2);
    let w = ManifoldState::w_state(4).unwrap();
    for k in 0..=2000 {
        let (pa, _) = evo.evolve(&w, 10.0 * k as f64 / 2000.0).unwrap().total_probabilities();
        assert!(pa <= bound * (1.0 + 1e-9));
    }
}

fn asymptotic_error(g: &CayleyGraph, xi: f64, regime: Regime) -> f64 {
    let evo = Evolution::new(g, CavityParams::resonant(xi)).unwrap();
    let photon = ManifoldState::photon_at(g.order(), 0).unwrap();
    (0..=200)
        .map(|k| {
            let t = 3.0 * k as f64 / 200.0;
            let exact = evo.evolve(&photon, t).unwrap();
            exact.max_abs_diff(&evo.asymptotic_photon_amplitudes(t, regime).unwrap())
        })
        .fold(0.0, f64::max)
}

#[test]
fn small_hopping_asymptotics_converge_linearly() {
    for g in [CayleyGraph::cycle(6).unwrap(), CayleyGraph::hypercube(3).unwrap()] {
        for xi in [1e-2, 1e-3, 1e-4] {
            let err = asymptotic_error(&g, xi, Regime::Small);
            assert!(err <= 20.0 * xi, "ξ = {xi}: {err}");
        }
    }
}

#[test]
fn large_hopping_asymptotics_converge_inversely() {
    for g in [CayleyGraph::cycle(6).unwrap(), CayleyGraph::hypercube(3).unwrap()] {
        for xi in [1e2, 1e3, 1e4] {
            let err = asymptotic_error(&g, xi, Regime::Large);
            assert!(err <= 5.0 / xi, "ξ = {xi}: {err}");
        }
    }
}
