use cayley_cavity::entanglement::{negativity, two_atom_reduced};
use cayley_cavity::oracle::{
    block_decompose, default_step, dense_manifold_hamiltonian, full_space_closure_check,
    hermitian_eigs, propagate_numeric, MAX_FULL_SPACE_SITES,
};
use cayley_cavity::sampling::{random_graph, random_params, random_state, ParamRanges};
use cayley_cavity::{
    block_energies, w_negativity_weak_hopping, CavityParams, CayleyGraph, Evolution,
    ManifoldState,
};
use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, Scenario};
use crate::error::CliError;
use crate::output::{Cell, Table};

pub const SEED_ENV: &str = "CAYLEY_CAVITY_SEED";
const DEFAULT_SEED: u64 = 0x00ca_71e7;

/// Largest hopping for which the weak-hopping negativity is shown alongside the exact one.
pub const WEAK_HOPPING_XI: f64 = 1e-2;

pub fn run_simulate(cfg: &RunConfig) -> Result<Table, CliError> {
    let graph = cfg.graph()?;
    let n = graph.order();
    let evo = Evolution::new(&graph, cfg.cavity()?)?;
    let psi0 = cfg.initial_state(n)?;
    let mut columns = vec!["t".to_string()];
    columns.extend((0..n).map(|i| format!("Pc_{i}")));
    columns.extend((0..n).map(|i| format!("Pa_{i}")));
    columns.extend(["P_a", "P_c", "norm"].map(String::from));
    let mut table = Table::new(columns);
    for t in cfg.time.points() {
        let s = evo.evolve(&psi0, t)?;
        let (pa, pc) = s.total_probabilities();
        let mut row = vec![Cell::from(t)];
        row.extend(s.c.iter().map(|z| Cell::from(z.norm_sqr())));
        row.extend(s.a.iter().map(|z| Cell::from(z.norm_sqr())));
        row.extend([pa, pc, pa + pc].map(Cell::from));
        table.push(row);
    }
    Ok(table)
}

pub fn run_spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let graph = cfg.graph()?;
    let params = cfg.cavity()?;
    let spectrum = graph.spectrum::<f64>()?;
    let mut table = Table::new(["index", "x", "E_plus", "E_minus"].map(String::from).to_vec());
    for (i, &x) in spectrum.values().iter().enumerate() {
        let (ep, em) = block_energies(&params, graph.order(), x);
        table.push(vec![i.into(), x.into(), ep.into(), em.into()]);
    }
    Ok(table)
}

pub fn run_negativity(cfg: &RunConfig, pair: (usize, usize)) -> Result<Table, CliError> {
    let (l, m) = pair;
    let graph = cfg.graph()?;
    let n = graph.order();
    let params = cfg.cavity()?;
    let evo = Evolution::new(&graph, params)?;
    let psi0 = cfg.initial_state(n)?;
    let with_reference = cfg.scenario == Scenario::W
        && params.is_standard_resonance()
        && params.xi <= WEAK_HOPPING_XI;
    let mut columns = vec!["t".to_string(), "negativity".to_string()];
    if with_reference {
        columns.push("weak_hopping_reference".to_string());
    }
    let mut table = Table::new(columns);
    for t in cfg.time.points() {
        let s = evo.evolve(&psi0, t)?;
        let mut row = vec![t.into(), negativity(&two_atom_reduced(&s, l, m)?)?.into()];
        if with_reference {
            row.push(w_negativity_weak_hopping::<f64>(n, t)?.into());
        }
        table.push(row);
    }
    Ok(table)
}

pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("{SEED_ENV} must be an unsigned integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub table: Table,
    pub passed: bool,
}

struct Check {
    name: &'static str,
    max_error: Option<f64>,
    tolerance: f64,
    note: String,
}

impl Check {
    fn new(name: &'static str, max_error: f64, tolerance: f64) -> Self {
        Check {
            name,
            max_error: Some(max_error),
            tolerance,
            note: String::new(),
        }
    }

    fn skipped(name: &'static str, tolerance: f64, note: impl Into<String>) -> Self {
        Check {
            name,
            max_error: None,
            tolerance,
            note: note.into(),
        }
    }

    fn status(&self) -> &'static str {
        match self.max_error {
            None => "skip",
            Some(e) if e <= self.tolerance => "pass",
            Some(_) => "fail",
        }
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn complex(a: &Array2<f64>) -> Array2<Complex64> {
    a.mapv(|v| Complex64::new(v, 0.0))
}

fn numeric_error(
    graph: &CayleyGraph,
    params: CavityParams<f64>,
    psi0: &ManifoldState<f64>,
    t: f64,
) -> Result<f64, CliError> {
    let h = dense_manifold_hamiltonian(graph, &params);
    let numeric = propagate_numeric(h.matrix(), &psi0.to_interleaved(), t, default_step(h.matrix(), t))?;
    let exact = Evolution::new(graph, params)?.evolve(psi0, t)?;
    Ok(exact.max_abs_diff(&ManifoldState::from_interleaved(&numeric)?))
}

/// Runs every oracle check on the configured graph plus `random_instances` random ones.
pub fn run_verify(cfg: &RunConfig, random_instances: usize, seed: u64) -> Result<VerifyReport, CliError> {
    let graph = cfg.graph()?;
    let params = cfg.cavity()?;
    let n = graph.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let closed = graph.spectrum::<f64>()?.sorted();
    let numeric = hermitian_eigs(&complex(&graph.adjacency_real::<f64>()))?.values;
    checks.push(Check::new("spectrum", max_abs_diff(&closed, &numeric), 1e-10));

    let f = graph.fourier::<f64>();
    let d = f.dot(&complex(&graph.adjacency_real::<f64>())).dot(&f.t().mapv(|z| z.conj()));
    let x = graph.spectrum::<f64>()?;
    let diag_err = d
        .indexed_iter()
        .map(|((i, j), z)| {
            let want = if i == j { x.get(i) } else { 0.0 };
            (z - Complex64::new(want, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("fourier_diagonalization", diag_err, 1e-11));

    let dec = block_decompose(&graph, &dense_manifold_hamiltonian(&graph, &params));
    checks.push(Check::new("block_residual", dec.off_block_residual, 1e-11));
    let mut energy_err = 0.0f64;
    for (j, b) in dec.blocks.iter().enumerate() {
        let block = ndarray::arr2(&[[b[0][0], b[0][1]], [b[1][0], b[1][1]]]);
        let eig = hermitian_eigs(&block)?.values;
        let (ep, em) = block_energies(&params, n, x.get(j));
        energy_err = energy_err.max(max_abs_diff(&eig, &[em, ep]));
    }
    checks.push(Check::new("block_energies", energy_err, 1e-10));

    let evo = Evolution::new(&graph, params)?;
    let times = cfg.time.points();
    let t_end = times.last().copied().unwrap_or(0.0);
    let probes: Vec<ManifoldState<f64>> = (0..4).map(|_| random_state(&mut rng, n)).collect();
    let mut unitarity = 0.0f64;
    let mut composition = 0.0f64;
    for psi in &probes {
        let t1 = rng.gen_range(0.0..=t_end.max(1.0));
        let t2 = rng.gen_range(0.0..=t_end.max(1.0));
        let direct = evo.evolve(psi, t1 + t2)?;
        unitarity = unitarity.max((direct.norm_sqr() - 1.0).abs());
        composition = composition.max(direct.max_abs_diff(&evo.evolve(&evo.evolve(psi, t1)?, t2)?));
    }
    checks.push(Check::new("unitarity", unitarity, 1e-12));
    checks.push(Check::new("composition", composition, 1e-9));

    let mut propagation = numeric_error(&graph, params, &cfg.initial_state(n)?, t_end)?;
    propagation = propagation.max(numeric_error(&graph, params, &probes[0], 0.5 * t_end)?);
    checks.push(Check::new("numeric_propagation", propagation, 1e-8));

    let mut random = 0.0f64;
    for _ in 0..random_instances {
        let g = random_graph(&mut rng, 12, 3);
        let p = random_params(&mut rng, &ParamRanges::default());
        let psi = random_state(&mut rng, g.order());
        let t = rng.gen_range(0.0..10.0);
        random = random.max(numeric_error(&g, p, &psi, t)?);
    }
    if random_instances > 0 {
        checks.push(Check::new("random_instances", random, 1e-8));
    } else {
        checks.push(Check::skipped("random_instances", 1e-8, "none requested"));
    }

    if n <= MAX_FULL_SPACE_SITES {
        // the manifold is only closed at two-photon resonance
        let resonant = CavityParams::new(2.0 * params.omega_c, params.omega_c, params.lambda, params.xi)?;
        let report = full_space_closure_check(&graph, &resonant)?;
        let err = report.leakage.max(report.truncation_escape).max(report.restriction_error);
        checks.push(Check::new("manifold_closure", err, report.tolerance));
    } else {
        checks.push(Check::skipped(
            "manifold_closure",
            1e-12,
            format!("{n} sites exceeds the full-space limit of {MAX_FULL_SPACE_SITES}"),
        ));
    }

    let mut table = Table::new(
        ["check", "max_error", "tolerance", "status", "note"]
            .map(String::from)
            .to_vec(),
    );
    let mut passed = true;
    for c in &checks {
        passed &= c.status() != "fail";
        table.push(vec![
            c.name.into(),
            c.max_error.map_or(Cell::Text(String::new()), Cell::Num),
            c.tolerance.into(),
            c.status().into(),
            Cell::Text(c.note.clone()),
        ]);
    }
    Ok(VerifyReport { table, passed })
}
