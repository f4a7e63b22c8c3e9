//! Command-line front end: closed-form sums, shooting spectra, sum-rule
//! reports, Green's-function diagonals, Airy zero tables, and the
//! verification battery.

mod cases;
mod config;
mod output;
mod spec_string;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

use sumrules_core::greens::{build_zero_energy_solutions, second_order_sum, GreensDiagonal};
use sumrules_core::potential::Potential;
use sumrules_core::powerlaw::{closed_form_sums, Parity, PowerLawParams};
use sumrules_core::specfun::AiryZeroTable;
use sumrules_core::spectrum::{assemble_report, solve_spectrum, Spectrum};

use crate::config::Config;

#[derive(Parser)]
#[command(
    name = "sumrules",
    about = "Eigenvalue sum rules for symmetric confining potentials",
    version
)]
struct Cli {
    /// Optional key = value configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form sums S, S1, S2 for the power-law well gamma |x|^N.
    ClosedForm {
        #[arg(long = "N")]
        n: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Shooting spectrum of a potential, as CSV.
    Spectrum {
        /// powerlaw:N=<real>[,gamma=<real>] | sho_shifted |
        /// box:half_width=<real> | file:<path>
        #[arg(long)]
        potential: String,
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        count: usize,
    },
    /// Partial sums plus WKB tails for the power-law well, as JSON.
    Report {
        #[arg(long = "N")]
        n: Option<f64>,
        /// Highest exact ladder index k; levels 0..=k enter the partial sums.
        #[arg(long)]
        terms: Option<usize>,
        /// Inverse power p in the sums.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Diagonal Green's functions of a potential, as CSV.
    Greens {
        #[arg(long)]
        potential: String,
        /// Append the second-order (inverse-square) sums per parity.
        #[arg(long)]
        second_order: bool,
    },
    /// Run the verification battery (or one case) and report pass/fail.
    Verify {
        /// airy | sho | sho_shifted | quartic | box | powerlaw:<N> |
        /// general:<potential-spec>
        #[arg(long)]
        case: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The first zeros of Ai and Ai' as CSV (n, parity, zero).
    AiryZeros {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Serialize)]
struct ReportDto {
    order: u32,
    exact_terms: usize,
    partial_s1: f64,
    partial_s2: f64,
    tail_s1: Option<f64>,
    tail_s2: Option<f64>,
    s1_divergent: bool,
    s2_divergent: bool,
    s_estimate: f64,
    closed_form_ref: Option<f64>,
    abs_error: Option<f64>,
}

fn spectrum_csv(spectra: &[Spectrum]) -> String {
    let mut out = String::from("parity,n,lambda,nodes,residual\n");
    for spectrum in spectra {
        let parity = match spectrum.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        for (m, lam) in spectrum.eigenvalues.iter().enumerate() {
            out.push_str(&format!(
                "{parity},{m},{:.12e},{},{:.3e}\n",
                lam, spectrum.node_counts[m], spectrum.residuals[m]
            ));
        }
    }
    out
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };

    match cli.command {
        Command::ClosedForm { n, gamma } => {
            let n = n.or(cfg.n).context("need --N (or N in the config file)")?;
            let gamma = gamma.or(cfg.gamma).unwrap_or(1.0);
            let params = PowerLawParams::new(n, gamma)?;
            let sums = closed_form_sums(&params);
            println!("N = {}", params.exponent);
            println!("gamma = {}", params.strength);
            println!("nu = {:.15}", params.nu);
            println!("beta = {:.15}", params.beta);
            println!("S = {:.15}", sums.s);
            match sums.s1 {
                Some(v) => println!("S1 = {v:.15}"),
                None => println!("S1 = divergent (N <= 2)"),
            }
            match sums.s2 {
                Some(v) => println!("S2 = {v:.15}"),
                None => println!("S2 = divergent (N <= 2)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum {
            potential,
            parity,
            count,
        } => {
            let pot = spec_string::parse_potential(&potential)?;
            let spectra = match parity {
                ParityArg::Even => vec![solve_spectrum(&pot, Parity::Even, count)?],
                ParityArg::Odd => vec![solve_spectrum(&pot, Parity::Odd, count)?],
                ParityArg::Both => vec![
                    solve_spectrum(&pot, Parity::Even, count)?,
                    solve_spectrum(&pot, Parity::Odd, count)?,
                ],
            };
            print!("{}", spectrum_csv(&spectra));
            Ok(ExitCode::SUCCESS)
        }
        Command::Report {
            n,
            terms,
            order,
            gamma,
        } => {
            let n = n.or(cfg.n).context("need --N (or N in the config file)")?;
            let gamma = gamma.or(cfg.gamma).unwrap_or(1.0);
            let terms = terms.or(cfg.terms).unwrap_or(4);
            let order = order.or(cfg.order).unwrap_or(1);
            let pot = Potential::power_law(n, gamma)?;
            let report = assemble_report(&pot, terms, order)?;
            let dto = ReportDto {
                order: report.order,
                exact_terms: report.exact_terms,
                partial_s1: report.partial_s1,
                partial_s2: report.partial_s2,
                tail_s1: report.tail_s1,
                tail_s2: report.tail_s2,
                s1_divergent: report.s1_divergent,
                s2_divergent: report.s2_divergent,
                s_estimate: report.s_estimate,
                closed_form_ref: report.closed_form_ref,
                abs_error: report.abs_error,
            };
            println!("{}", serde_json::to_string_pretty(&dto)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Greens {
            potential,
            second_order,
        } => {
            let pot = spec_string::parse_potential(&potential)?;
            let diag = match &pot {
                Potential::PowerLaw(params) => {
                    // cover the region where the Bessel argument stays modest
                    let x_max = (18.0 / (params.nu * params.strength.sqrt()))
                        .powf(params.nu)
                        .min(12.0);
                    GreensDiagonal::for_power_law(params, 200, x_max)?
                }
                _ => {
                    let sys = build_zero_energy_solutions(&pot)?;
                    let x_max = *sys.phi2.grid.last().unwrap();
                    GreensDiagonal::for_system(&sys, 200, x_max)
                }
            };
            let mut out = String::from("x,g1,g2,difference\n");
            for i in 0..diag.grid.len() {
                out.push_str(&format!(
                    "{:.12e},{:.12e},{:.12e},{:.12e}\n",
                    diag.grid[i], diag.g1_diag[i], diag.g2_diag[i], diag.difference[i]
                ));
            }
            if second_order {
                out.push_str(&format!(
                    "# second_order_even,{:.12e}\n",
                    second_order_sum(&pot, Parity::Even)?
                ));
                out.push_str(&format!(
                    "# second_order_odd,{:.12e}\n",
                    second_order_sum(&pot, Parity::Odd)?
                ));
            }
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { case, format, out } => {
            let ids = match case {
                Some(text) => vec![cases::CaseId::parse(&text)?],
                None => cases::default_cases(),
            };
            let mut reports = Vec::new();
            for id in &ids {
                reports.push(cases::run_case(id, cfg.quad_tol)?);
            }
            let rendered = match format {
                FormatArg::Json => output::render_json(&reports)?,
                FormatArg::Csv => output::render_csv(&reports),
                FormatArg::Table => output::render_table(&reports),
            };
            match out {
                Some(path) => std::fs::write(&path, rendered)
                    .with_context(|| format!("cannot write `{}`", path.display()))?,
                None => print!("{rendered}"),
            }
            let all_pass = reports.iter().all(|c| c.pass);
            if !all_pass {
                for case in reports.iter().filter(|c| !c.pass) {
                    for q in case.quantities.iter().filter(|q| !q.pass) {
                        eprintln!(
                            "FAIL {} / {}: got {:.12e}, expected {:.12e} (tol {:.1e})",
                            case.case, q.name, q.got, q.expected, q.tol
                        );
                    }
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::AiryZeros { count } => {
            let table = AiryZeroTable::compute(count)?;
            let mut out = String::from("n,parity,zero\n");
            for (n, parity, zero) in table.merged_rows() {
                out.push_str(&format!("{n},{parity},{zero:.12}\n"));
            }
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
