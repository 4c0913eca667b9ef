// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;

use args::{Cli, Command, Format};
use clap::Parser;
use commands::Report;
use iho_core::Error;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

const EXIT_NUMERICAL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation(_) | Error::Domain(_) | Error::GridMismatch(_) => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Eval(_) => "eval",
        Command::Residual(_) => "residual",
        Command::Lct(_) => "lct",
        Command::GroupCheck(_) => "group-check",
        Command::Unitarity(_) => "unitarity",
        Command::SpectrumMap(_) => "spectrum-map",
        Command::WronskianProbe(_) => "wronskian-probe",
        Command::RiggedCheck(_) => "rigged-check",
    }
}

fn dispatch(c: &Command) -> iho_core::Result<Report> {
    match c {
        Command::Eval(a) => commands::eval(a),
        Command::Residual(a) => commands::residual(a),
        Command::Lct(a) => commands::lct(a),
        Command::GroupCheck(a) => commands::group_check(a),
        Command::Unitarity(a) => commands::unitarity(a),
        Command::SpectrumMap(a) => commands::spectrum_map(a),
        Command::WronskianProbe(a) => commands::wronskian_probe(a),
        Command::RiggedCheck(a) => commands::rigged_check(a),
    }
}

fn emit(cli: &Cli, report: &Report) -> io::Result<()> {
    let sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    match cli.format {
        Format::Csv => report.table.write_csv(&mut out).map_err(io::Error::other)?,
        Format::Json => {
            let doc = report.table.to_json(subcommand_name(&cli.command), report.params.clone());
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
    }
    out.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("iho {}: {e}", subcommand_name(&cli.command));
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("iho: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match &report.failure {
        Some(msg) => {
            eprintln!("iho {}: {msg}", subcommand_name(&cli.command));
            ExitCode::from(EXIT_NUMERICAL)
        }
        None => ExitCode::SUCCESS,
    }
}
