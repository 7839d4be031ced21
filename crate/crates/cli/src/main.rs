//! `killp`: command-line driver for the homology calculator.
//!
//! Exit status: 0 on success, 2 on invalid arguments, 1 when the engine
//! rejects a query, 3 when `verify` finds a mismatch.

mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use killp::gaps::{density_bounds, enumerate_z1, enumerate_z2};
use killp::homology::{
    hc_closed_form, hc_neg_closed_form, hc_neg_truncation_probe, hc_oracle, hochschild, hochschild_oracle, hp,
    phi_coeffs, Coverage,
};
use killp::padic::vp;
use killp::{Execution, Prime};
use output::{compare, render_pairs, render_shapes, CrossCheck, Format, ShapeRecord};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "killp", version, about = "Exact homology of R//p: HH, HC, HC^- and HP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// An odd prime.
    #[arg(long, value_parser = parse_prime)]
    prime: Prime,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Run batch work on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Args)]
struct Degrees {
    /// Homological degree (first degree of a range when --to is given).
    #[arg(long, allow_negative_numbers = true)]
    degree: i64,
    /// Last degree of an inclusive range.
    #[arg(long, allow_negative_numbers = true)]
    to: Option<i64>,
}

impl Degrees {
    fn range(&self) -> std::ops::RangeInclusive<i64> {
        self.degree..=self.to.unwrap_or(self.degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum WhichSet {
    Z1,
    Z2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hochschild homology: closed form, checked against the total complex.
    Hh {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Cyclic homology: Smith normal form of the presentation, checked against the closed form.
    Hc {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Negative cyclic homology from the closed form.
    Hcneg {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degrees: Degrees,
        /// List factors R/n up to this n [default: 4m + 1].
        #[arg(long)]
        n_max: Option<u64>,
        /// Also compare against the K- and (K+1)-truncated presentations.
        #[arg(long, value_name = "K")]
        probe: Option<usize>,
    },
    /// Periodic cyclic homology.
    Hp {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degrees: Degrees,
        /// List factors R/n up to this n.
        #[arg(long, default_value_t = 27)]
        n_max: u64,
    },
    /// Enumerate Z1 or Z2 up to a bound.
    Zsets {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        set: WhichSet,
        #[arg(long)]
        max: u64,
    },
    /// Empirical density of Z1 and Z2 with the lower bounds.
    Density {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1_000_000)]
        max: u64,
    },
    /// The coefficients of phi_{j,i}(1).
    Coeffs {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        j: i64,
        /// Target index [default: j].
        #[arg(long)]
        i: Option<i64>,
    },
    /// Cross-check every closed form against its oracle over a degree range.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        hc_from: i64,
        #[arg(long, default_value_t = 40)]
        hc_to: i64,
        #[arg(long, default_value_t = 10)]
        hh_to: i64,
        /// Number of Z2 elements above 1 used for the kernel generator check.
        #[arg(long, default_value_t = 3)]
        kernel_count: usize,
        /// Even generator span J.
        #[arg(long, default_value_t = 4)]
        span: u64,
    },
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let n: u64 = s.parse().map_err(|e| format!("{e}"))?;
    Prime::new(n).map_err(|e| e.to_string())
}

enum Failure {
    Engine(String),
    Mismatch(String),
}

impl From<killp::Error> for Failure {
    fn from(e: killp::Error) -> Self {
        Failure::Engine(e.to_string())
    }
}

#[derive(Serialize)]
struct SetReport {
    prime: u64,
    set: WhichSet,
    max: u64,
    count: usize,
    elements: Vec<u64>,
    /// 1 is a member by convention: no gap window reaches it.
    includes_one: bool,
    /// Elements prime to p that the gap windows remove.
    excluded_non_multiples: Vec<u64>,
}

#[derive(Serialize)]
struct Component {
    n: i64,
    value: String,
    valuation: Option<i64>,
    /// `v_p(n)`; the component lives in `R/p^modulus_exponent`.
    modulus_exponent: u32,
    nonzero: bool,
}

#[derive(Serialize)]
struct CoeffReport {
    prime: u64,
    j: u64,
    i: i64,
    head: String,
    head_valuation: Option<i64>,
    components: Vec<Component>,
}

fn shapes(common: &Common, records: &[ShapeRecord]) -> String {
    render_shapes(records, common.format)
}

fn run(cmd: &Command) -> Result<(String, Option<&Common>), Failure> {
    match cmd {
        Command::Hh { common, degrees } => {
            let p = common.prime;
            let mut records = Vec::new();
            for i in degrees.range() {
                let cf = hochschild(p, i)?;
                let oracle = hochschild_oracle(p, i)?;
                records.push(ShapeRecord::from_result(&cf).with_check(compare(
                    "oracle",
                    &cf,
                    &Coverage::Covered(oracle),
                )));
            }
            Ok((shapes(common, &records), Some(common)))
        }
        Command::Hc { common, degrees } => {
            let p = common.prime;
            let mut records = Vec::new();
            for i in degrees.range() {
                let oracle = hc_oracle(p, i)?;
                let mut rec = ShapeRecord::from_result(&oracle);
                if i % 2 == 0 {
                    rec = rec.with_check(compare("closed_form", &oracle, &hc_closed_form(p, i)?));
                }
                records.push(rec);
            }
            Ok((shapes(common, &records), Some(common)))
        }
        Command::Hcneg { common, degrees, n_max, probe } => {
            let p = common.prime;
            let mut records = Vec::new();
            for m in degrees.range() {
                let listing = n_max.unwrap_or(4 * m.max(2) as u64 + 1);
                let cf = hc_neg_closed_form(p, m, listing);
                let mut rec = ShapeRecord::from_coverage(&cf);
                if let (Some(k), Some(_)) = (probe, cf.result()) {
                    if m >= 2 && m % 2 == 0 {
                        let r = hc_neg_truncation_probe(p, m, *k)?;
                        rec = rec.with_check(CrossCheck {
                            against: format!("truncation K={k}"),
                            status: if r.passed { "agrees" } else { "differs" }.into(),
                            detail: Some(format!(
                                "stable exponents {:?} match R/n for n <= {}",
                                r.stabilized,
                                r.matched_bound.map(|l| l.to_string()).unwrap_or_else(|| "-".into())
                            )),
                        });
                    }
                }
                records.push(rec);
            }
            Ok((shapes(common, &records), Some(common)))
        }
        Command::Hp { common, degrees, n_max } => {
            let records: Vec<ShapeRecord> =
                degrees.range().map(|i| ShapeRecord::from_result(&hp(common.prime, i, *n_max))).collect();
            Ok((shapes(common, &records), Some(common)))
        }
        Command::Zsets { common, set, max } => {
            let p = common.prime;
            let elements = match set {
                WhichSet::Z1 => enumerate_z1(p, *max, common.exec())?,
                WhichSet::Z2 => enumerate_z2(p, *max, common.exec())?,
            };
            let excluded_non_multiples = (1..=*max)
                .step_by(2)
                .filter(|&n| vp(p, n as i64).map(|v| v == 0).unwrap_or(false))
                .filter(|n| elements.binary_search(n).is_err())
                .collect();
            let report = SetReport {
                prime: p.get(),
                set: *set,
                max: *max,
                count: elements.len(),
                includes_one: elements.first() == Some(&1),
                elements,
                excluded_non_multiples,
            };
            let text = match common.format {
                Format::Json => output::json(&report),
                Format::Csv => {
                    let mut s = String::from("n\n");
                    for n in &report.elements {
                        s.push_str(&format!("{n}\n"));
                    }
                    s
                }
                Format::Table => {
                    let list: Vec<String> = report
                        .elements
                        .iter()
                        .map(|&n| if n == 1 { "1*".to_string() } else { n.to_string() })
                        .collect();
                    format!(
                        "{:?} cap [1, {}] for p = {}: {} elements\n{}\n* 1 is included by convention\nexcluded besides multiples of p: {:?}\n",
                        report.set,
                        report.max,
                        report.prime,
                        report.count,
                        list.join(", "),
                        report.excluded_non_multiples
                    )
                }
            };
            Ok((text, Some(common)))
        }
        Command::Density { common, max } => {
            let r = density_bounds(common.prime, *max, common.exec())?;
            Ok((render_pairs(&r, common.format), Some(common)))
        }
        Command::Coeffs { common, j, i } => {
            let p = common.prime;
            let target = i.unwrap_or(*j);
            let v = phi_coeffs(p, *j, target)?;
            let components = v
                .components
                .iter()
                .map(|(n, c)| Component {
                    n: *n as i64,
                    value: c.to_string(),
                    valuation: c.valuation(),
                    modulus_exponent: vp(p, *n as i64).unwrap_or(0),
                    nonzero: v.nonzero_in_quotient(p, *n),
                })
                .collect();
            let report = CoeffReport {
                prime: p.get(),
                j: v.j,
                i: target,
                head: v.head.to_string(),
                head_valuation: v.head.valuation(),
                components,
            };
            let text = match common.format {
                Format::Json => output::json(&report),
                Format::Csv => {
                    let mut s = String::from("n,value,valuation,modulus_exponent,nonzero\n");
                    s.push_str(&format!("-1,{},{},,true\n", report.head, fmt_opt(report.head_valuation)));
                    for c in &report.components {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            c.n,
                            c.value,
                            fmt_opt(c.valuation),
                            c.modulus_exponent,
                            c.nonzero
                        ));
                    }
                    s
                }
                Format::Table => {
                    let mut s = format!(
                        "phi_{{{},{}}}(1), p = {}\n  e_-1  {}  (v = {})\n",
                        report.j,
                        report.i,
                        report.prime,
                        report.head,
                        fmt_opt(report.head_valuation)
                    );
                    for c in &report.components {
                        let mark = if c.nonzero { "" } else { "  (zero in R/n)" };
                        s.push_str(&format!("  e_{:<3} {}{mark}\n", c.n, c.value));
                    }
                    s
                }
            };
            Ok((text, Some(common)))
        }
        Command::Verify { common, hc_from, hc_to, hh_to, kernel_count, span } => {
            let params = verify::VerifyParams {
                hc_from: *hc_from,
                hc_to: *hc_to,
                hh_to: *hh_to,
                kernel_count: *kernel_count,
                span: *span,
            };
            let report = verify::run(common.prime, params, common.exec())?;
            let text = match common.format {
                Format::Json => output::json(&report),
                Format::Csv => verify::render_csv(&report),
                Format::Table => verify::render_table(&report),
            };
            if report.passed {
                Ok((text, Some(common)))
            } else {
                emit(&text, common.out.as_ref()).map_err(Failure::Engine)?;
                Err(Failure::Mismatch(verify::render_table(&report)))
            }
        }
    }
}

fn fmt_opt(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "inf".into())
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((text, common)) => match emit(&text, common.and_then(|c| c.out.as_ref())) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(diff)) => {
            eprintln!("verification failed\n{diff}");
            ExitCode::from(3)
        }
    }
}
