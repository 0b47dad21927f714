use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use cayley_cavity_cli::run::seed_from_env;
use cayley_cavity_cli::{
    run_negativity, run_simulate, run_spectrum, run_verify, Cli, CliError, Command, ConfigArgs,
    RunConfig, Table,
};
use clap::Parser;

fn emit(cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(cfg.format, &mut w)?;
            w.flush()?;
        }
        None => table.write(cfg.format, io::stdout().lock())?,
    }
    Ok(())
}

/// Resolves the config; `None` means it was dumped and there is nothing left to run.
fn prepare(args: &ConfigArgs) -> Result<Option<RunConfig>, CliError> {
    let cfg = args.resolve()?;
    if args.dump_config {
        println!("{}", cfg.to_json()?);
        return Ok(None);
    }
    Ok(Some(cfg))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Simulate(args) => {
            if let Some(cfg) = prepare(&args)? {
                emit(&cfg, &run_simulate(&cfg)?)?;
            }
        }
        Command::Spectrum(args) => {
            if let Some(cfg) = prepare(&args)? {
                emit(&cfg, &run_spectrum(&cfg)?)?;
            }
        }
        Command::Negativity { config, pair } => {
            if let Some(cfg) = prepare(&config)? {
                emit(&cfg, &run_negativity(&cfg, pair)?)?;
            }
        }
        Command::Verify {
            config,
            random_instances,
        } => {
            if let Some(cfg) = prepare(&config)? {
                let report = run_verify(&cfg, random_instances, seed_from_env()?)?;
                emit(&cfg, &report.table)?;
                if !report.passed {
                    return Ok(1);
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
