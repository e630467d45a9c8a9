use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chevalley::experiments::{self, ChevalleyReport, FitReport};
use chevalley::scenario::{Overrides, Scenario};
use chevalley::{Error, Result};

/// Exact jets, diagrams and Chevalley functions of polynomial maps.
///
/// Exit status: 0 success, 2 input error, 3 only inconclusive results,
/// 4 a certified cross-check failed.
#[derive(Parser)]
#[command(name = "chevalley", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Jet matrices J^l at every tuple, l = l_max.
    Jet(Common),
    /// Diagrams of initial exponents of the relation ideals.
    Diagram(Common),
    /// Chevalley table l(a, k) and H(k), plus leaf estimates.
    Chevalley(Common),
    /// Linear envelopes l <= alpha k + beta over the table.
    Fit(Common),
    /// nu-orders of the scenario's probe functions.
    Nu(Common),
    /// Sampled mu boundedness verdicts (heuristic, floating point).
    Mu(Common),
    /// Random product-estimate probe.
    Product(Common),
    /// Every exact cross-check the scenario supports.
    Verify(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long)]
    l_max: Option<u32>,
    #[arg(long)]
    window: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Include full matrices in `jet` output.
    #[arg(long)]
    dump_matrix: bool,
}

impl Common {
    fn scenario(&self) -> Result<Scenario> {
        let mut sc = Scenario::load(&self.scenario)?;
        sc.apply(&Overrides {
            k_max: self.k_max,
            l_max: self.l_max,
            window: self.window,
            seed: self.seed,
        })?;
        Ok(sc)
    }
}

fn no_csv() -> Error {
    Error::Input("csv output is only available for `chevalley` and `fit`".into())
}

fn render<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> Result<String> {
    match format {
        Format::Text => Ok(text()),
        Format::Json => experiments::to_json(value),
        Format::Csv => Err(no_csv()),
    }
}

fn run(cmd: Cmd) -> Result<(String, Option<PathBuf>, u8)> {
    let (c, out, code) = match &cmd {
        Cmd::Jet(c) => {
            let sc = c.scenario()?;
            let r = experiments::jet_reports(&sc, c.dump_matrix)?;
            (c, render(c.format, &r, || experiments::jet_text(&r))?, 0)
        }
        Cmd::Diagram(c) => {
            let r = experiments::diagram_reports(&c.scenario()?)?;
            (c, render(c.format, &r, || experiments::diagram_text(&r))?, 0)
        }
        Cmd::Chevalley(c) => {
            let r = ChevalleyReport::build(&c.scenario()?)?;
            let out = match c.format {
                Format::Csv => experiments::table_csv(&r.rows)?,
                f => render(f, &r, || r.text())?,
            };
            (c, out, if r.inconclusive_only() { 3 } else { 0 })
        }
        Cmd::Fit(c) => {
            let r = FitReport::build(&c.scenario()?)?;
            let out = match c.format {
                Format::Csv => experiments::table_csv(&r.rows)?,
                f => render(f, &r, || r.text())?,
            };
            (c, out, if r.inconclusive_only() { 3 } else { 0 })
        }
        Cmd::Nu(c) => {
            let r = experiments::nu_reports(&c.scenario()?)?;
            (c, render(c.format, &r, || experiments::nu_text(&r))?, 0)
        }
        Cmd::Mu(c) => {
            let r = experiments::mu_reports(&c.scenario()?)?;
            let text = || r.iter().map(|m| m.text()).collect::<Vec<_>>().join("\n");
            (c, render(c.format, &r, text)?, 0)
        }
        Cmd::Product(c) => {
            let r = experiments::product_reports(&c.scenario()?)?;
            let text = || r.iter().map(|p| p.text()).collect::<Vec<_>>().join("\n");
            (c, render(c.format, &r, text)?, 0)
        }
        Cmd::Verify(c) => {
            let r = experiments::verify_consistency(&c.scenario()?)?;
            (c, render(c.format, &r, || r.text())?, if r.passed() { 0 } else { 4 })
        }
    };
    Ok((out, c.out.clone(), code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((text, path, code)) => {
            if let Some(p) = path {
                if let Err(e) = std::fs::write(&p, &text) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
