use std::f64::consts::{FRAC_PI_2, PI};
use std::process::Command as Process;

use cayley_cavity_cli::{
    run_negativity, run_simulate, run_spectrum, run_verify, Cli, Command, Format, RunConfig,
    Scenario, Table, Times,
};
use clap::Parser;

fn resolve(args: &[&str]) -> Result<(Command, RunConfig), cayley_cavity_cli::CliError> {
    let cli = Cli::try_parse_from(std::iter::once("cayley-cavity").chain(args.iter().copied()))
        .expect("arguments parse");
    let cfg = match &cli.command {
        Command::Simulate(a) | Command::Spectrum(a) => a.resolve()?,
        Command::Negativity { config, .. } | Command::Verify { config, .. } => config.resolve()?,
    };
    Ok((cli.command, cfg))
}

fn config(args: &[&str]) -> RunConfig {
    resolve(args).unwrap().1
}

fn num(table: &Table, row: usize, col: &str) -> f64 {
    table.rows[row][table.column(col).unwrap()].as_f64().unwrap()
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_cayley-cavity"))
}

#[test]
fn preset_c6_photon_run_is_valid() {
    let cfg = config(&[
        "simulate", "--preset", "c6", "--scenario", "photon", "--site", "0", "--xi", "100", "--tmax",
        "0.02", "--steps", "200",
    ]);
    assert_eq!((cfg.group.as_str(), cfg.generators.as_str()), ("z6", "1,5"));
    assert_eq!(cfg.scenario, Scenario::Photon);
    assert_eq!(cfg.time, Times::Grid { t_max: 0.02, steps: 200 });
    let table = run_simulate(&cfg).unwrap();
    assert_eq!(table.rows.len(), 201);
    assert_eq!(table.columns.len(), 1 + 12 + 3);
    assert!((num(&table, 0, "Pc_0") - 1.0).abs() < 1e-15);
    for r in 0..table.rows.len() {
        assert!((num(&table, r, "norm") - 1.0).abs() < 1e-12);
    }
}

#[test]
fn residue_generators_build_the_square() {
    let cfg = config(&["spectrum", "--group", "z2xz2", "--gens", "1:0,0:1"]);
    let graph = cfg.graph().unwrap();
    assert_eq!((graph.order(), graph.degree()), (4, 2));
    assert_eq!(config(&["spectrum", "--preset", "q2"]).graph().unwrap().generators().indices(), graph.generators().indices());
}

#[test]
fn identity_generator_is_rejected() {
    assert!(resolve(&["simulate", "--group", "z4", "--gens", "0"]).is_err());
    let out = binary().args(["simulate", "--group", "z4", "--gens", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_configs_exit_with_status_two() {
    for args in [
        vec!["simulate", "--preset", "c6", "--scenario", "photon", "--site", "6"],
        vec!["simulate", "--preset", "x9"],
        vec!["simulate", "--steps", "0"],
        vec!["simulate", "--xi", "0", "--tmax", "1", "--time-unit", "pi-over-xi"],
        vec!["simulate", "--scenario", "bogus"],
        vec!["negativity", "--pair", "1,1"],
    ] {
        let out = binary().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn weak_hopping_w_has_sine_squared_atoms() {
    let cfg = config(&["simulate", "--preset", "c4", "--xi", "1e-3", "--steps", "400"]);
    let table = run_simulate(&cfg).unwrap();
    for r in 0..table.rows.len() {
        let t = num(&table, r, "t");
        assert!((num(&table, r, "P_a") - t.sin().powi(2)).abs() < 1e-3);
    }
}

#[test]
fn c6_table_at_three_eighths_pi_over_xi() {
    let cfg = config(&[
        "simulate", "--preset", "c6", "--scenario", "photon", "--xi", "100", "--time-factor", "0.375",
        "--time-unit", "pi-over-xi",
    ]);
    match cfg.time {
        Times::Single { t } => assert!((t - 3.0 * PI / 800.0).abs() < 1e-17),
        other => panic!("expected a single time, got {other:?}"),
    }
    let table = run_simulate(&cfg).unwrap();
    let want = [0.2222, 0.0095, 0.0556, 0.6476, 0.0556, 0.0095];
    for (i, w) in want.iter().enumerate() {
        assert!((num(&table, 0, &format!("Pc_{i}")) - w).abs() < 5e-3);
    }
    assert!(num(&table, 0, "P_a") < 0.01);
}

#[test]
fn negativity_examples() {
    let time = FRAC_PI_2.to_string();
    let pair_w = config(&["negativity", "--preset", "q1", "--xi", "1e-3", "--time", &time]);
    let t = run_negativity(&pair_w, (0, 1)).unwrap();
    assert!((num(&t, 0, "negativity") - 1.0).abs() < 1e-3);
    assert!(t.column("weak_hopping_reference").is_some());

    let six = config(&["negativity", "--preset", "c6", "--xi", "1e-3", "--time", &time]);
    let t = run_negativity(&six, (0, 3)).unwrap();
    assert!((num(&t, 0, "negativity") - (20f64.sqrt() - 4.0) / 6.0).abs() < 1e-4);

    for scenario in ["w", "photon"] {
        let at_zero = config(&["negativity", "--preset", "c6", "--scenario", scenario, "--time", "0"]);
        assert!(num(&run_negativity(&at_zero, (0, 1)).unwrap(), 0, "negativity") < 1e-15);
    }
    let strong = config(&["negativity", "--preset", "c6", "--xi", "2", "--time", "1"]);
    assert!(run_negativity(&strong, (0, 1)).unwrap().column("weak_hopping_reference").is_none());
}

#[test]
fn spectrum_rows() {
    let t = run_spectrum(&config(&["spectrum", "--preset", "c6", "--xi", "0.3"])).unwrap();
    let x: Vec<f64> = (0..6).map(|r| num(&t, r, "x")).collect();
    for (got, want) in x.iter().zip([2.0, 1.0, -1.0, -2.0, -1.0, 1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let cube = config(&["spectrum", "--group", "z2xz2xz2", "--gens", "1:0:0,0:1:0,0:0:1"]);
    let t = run_spectrum(&cube).unwrap();
    let mut x: Vec<f64> = (0..8).map(|r| num(&t, r, "x")).collect();
    x.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (got, want) in x.iter().zip([-3.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 3.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn verify_passes_on_presets() {
    for preset in ["c6", "q2", "c3"] {
        let report = run_verify(&config(&["verify", "--preset", preset]), 3, 7).unwrap();
        assert!(report.passed, "{preset}: {:?}", report.table);
    }
    let out = binary()
        .args(["verify", "--preset", "c6"])
        .env("CAYLEY_CAVITY_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().lines().skip(1).all(|l| !l.contains(",fail,")));
    let bad_seed = binary().args(["verify"]).env("CAYLEY_CAVITY_SEED", "abc").output().unwrap();
    assert_eq!(bad_seed.status.code(), Some(2));
}

#[test]
fn csv_output_is_deterministic() {
    let cfg = config(&["simulate", "--preset", "q2", "--scenario", "excite", "--site", "2", "--xi", "0.7"]);
    let a = run_simulate(&cfg).unwrap().render(Format::Csv).unwrap();
    let b = run_simulate(&cfg).unwrap().render(Format::Csv).unwrap();
    assert_eq!(a, b);
    let first_data = a.lines().nth(1).unwrap();
    assert!(first_data.starts_with("0.00000000000e0,"));
}

#[test]
fn json_config_round_trip_reproduces_output() {
    let cfg = config(&[
        "simulate", "--preset", "c5", "--scenario", "photon", "--site", "3", "--omega-c", "0.7",
        "--lambda", "1.3", "--xi", "2.9", "--tmax", "1.7", "--time-unit", "pi", "--steps", "37",
    ]);
    let reloaded = RunConfig::from_json(&cfg.to_json().unwrap()).unwrap();
    assert_eq!(reloaded, cfg);
    for format in [Format::Csv, Format::Json] {
        assert_eq!(
            run_simulate(&cfg).unwrap().render(format).unwrap(),
            run_simulate(&reloaded).unwrap().render(format).unwrap()
        );
    }
}

#[test]
fn config_file_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.json");
    let out_path = dir.path().join("rows.json");
    let dumped = binary()
        .args(["simulate", "--preset", "q2", "--xi", "0.7", "--time", "1.3", "--dump-config"])
        .output()
        .unwrap();
    assert_eq!(dumped.status.code(), Some(0));
    std::fs::write(&cfg_path, &dumped.stdout).unwrap();

    let status = binary()
        .args(["simulate", "--config"])
        .arg(&cfg_path)
        .args(["--format", "json", "--output"])
        .arg(&out_path)
        .status()
        .unwrap();
    assert!(status.success());
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let row = &rows.as_array().unwrap()[0];
    assert_eq!(row["t"].as_f64(), Some(1.3));
    assert!((row["norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let keys: Vec<&String> = row.as_object().unwrap().keys().collect();
    assert_eq!(keys.first().map(|k| k.as_str()), Some("t"));
    assert_eq!(keys.last().map(|k| k.as_str()), Some("norm"));
}
