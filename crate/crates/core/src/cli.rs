//! Command-line front end. Every command prints one UTF-8 JSON document.
//!
//! Exit codes: `classify` returns 0 / 1 / 2 for in / out / uncertified;
//! `witness` returns 2 when the hypothesis fails; `verify` returns 1 when a
//! check fails. Any other error exits with 3.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::character::parse_character;
use crate::criterion::{classify, sphere_description, Membership, VerdictJson};
use crate::error::{Error, Result};
use crate::free_product::Signature;
use crate::graph::{parse_graph, SpokeParams};
use crate::kernel::{kernel_suite, CheckRecord, Window, XCache};
use crate::theta::{theta_suite, ThetaAssignment};
use crate::witness::{hypothesis_check, reduce_labels, witness_report};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "sigma-artin", version, about = "Sigma^1 membership and kernel growth witnesses for Artin groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a character of the Artin group of a graph.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        chi: PathBuf,
    },
    /// Compute the dim E_s growth table.
    Witness {
        #[command(flatten)]
        spoke: SpokeArgs,
        #[arg(long, default_value_t = 4)]
        smax: u64,
    },
    /// Run the decomposition and θ checks over an index window.
    Verify {
        #[command(flatten)]
        spoke: SpokeArgs,
        #[arg(long, allow_hyphen_values = true)]
        jmin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        jmax: Option<i64>,
        /// Negative control: `SPOKE:J:VALUE` overrides one base θ value.
        #[arg(long, hide = true)]
        corrupt_theta: Option<String>,
    },
    /// Describe the Σ¹ complement of a spoke-family group.
    Sphere {
        #[command(flatten)]
        spoke: SpokeArgs,
    },
    /// Reduce the labels to primes.
    Reduce {
        #[command(flatten)]
        spoke: SpokeArgs,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpokeArgs {
    /// Spoke-family graph file; must agree with inline parameters if both are given.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated k_1..k_n.
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<u64>>,
    /// Comma-separated l_2..l_n.
    #[arg(long, value_delimiter = ',')]
    pub l: Option<Vec<u64>>,
}

impl SpokeArgs {
    pub fn resolve(&self) -> Result<SpokeParams> {
        let inline = match (&self.k, &self.l) {
            (Some(k), Some(l)) => Some(SpokeParams::new(k.clone(), l.clone())?),
            (None, None) => None,
            _ => return Err(Error::InvalidParams("--k and --l go together".into())),
        };
        let from_graph = match &self.graph {
            Some(path) => {
                let g = parse_graph(&read(path)?)?;
                let m = g.to_spoke_params().ok_or_else(|| {
                    Error::InvalidParams(format!("{} is not a spoke-family graph", path.display()))
                })?;
                Some(m.params)
            }
            None => None,
        };
        let p = match (inline, from_graph) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::InvalidParams(format!(
                    "inline parameters {a} disagree with graph parameters {b}"
                )))
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(Error::InvalidParams("give --k/--l or --graph".into()))
            }
        };
        if let Some(n) = self.n {
            if n != p.n() {
                return Err(Error::InvalidParams(format!("--n {n} but {} labels k_i", p.n())));
            }
        }
        Ok(p)
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })
}

/// Exit code and JSON document of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
}

fn envelope(command: &str, config: Value, body: Value) -> Value {
    let mut doc = json!({
        "tool": "sigma-artin",
        "version": VERSION,
        "command": command,
        "config": config,
    });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

fn error_doc(command: &str, config: Value, e: &Error) -> Value {
    envelope(command, config, json!({ "error": e.to_string() }))
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { graph, chi } => {
            let config = json!({ "graph": graph, "chi": chi });
            let run = || -> Result<_> {
                let g = parse_graph(&read(graph)?)?;
                let c = parse_character(&g, &read(chi)?)?;
                classify(&g, &c)
            };
            match run() {
                Ok(v) => {
                    let code = match v.membership {
                        Membership::InSigma1 => 0,
                        Membership::NotInSigma1 => 1,
                        Membership::CriterionFailsUncertified => 2,
                    };
                    let body = serde_json::to_value(VerdictJson::from(&v)).unwrap();
                    Outcome {
                        code,
                        json: envelope("classify", config, body),
                    }
                }
                Err(e) => Outcome {
                    code: 3,
                    json: error_doc("classify", config, &e),
                },
            }
        }
        Command::Witness { spoke, smax } => {
            let config = json!({ "spoke": spoke, "smax": smax });
            let p = match spoke.resolve() {
                Ok(p) => p,
                Err(e) => return fail("witness", config, e),
            };
            match witness_report(&p, *smax) {
                Ok(r) => {
                    let code = if r.bounds_hold && r.strictly_increasing { 0 } else { 1 };
                    Outcome {
                        code,
                        json: envelope("witness", config, serde_json::to_value(r).unwrap()),
                    }
                }
                Err(e @ Error::HypothesisFails(_)) => Outcome {
                    code: 2,
                    json: envelope(
                        "witness",
                        config,
                        json!({
                            "error": e.to_string(),
                            "hypothesis_sum": hypothesis_check(&p).sum.to_string(),
                            "reduced_params": reduce_labels(&p),
                        }),
                    ),
                },
                Err(e) => fail("witness", config, e),
            }
        }
        Command::Verify {
            spoke,
            jmin,
            jmax,
            corrupt_theta,
        } => {
            let config = json!({
                "spoke": spoke, "jmin": jmin, "jmax": jmax, "corrupt_theta": corrupt_theta,
            });
            match spoke
                .resolve()
                .and_then(|p| verify(&p, *jmin, *jmax, corrupt_theta.as_deref()))
            {
                Ok(report) => {
                    let code = if report.failed == 0 { 0 } else { 1 };
                    Outcome {
                        code,
                        json: envelope("verify", config, serde_json::to_value(report).unwrap()),
                    }
                }
                Err(e) => fail("verify", config, e),
            }
        }
        Command::Sphere { spoke } => {
            let config = json!({ "spoke": spoke });
            match spoke.resolve() {
                Ok(p) => match sphere_description(&p) {
                    Ok(r) => Outcome {
                        code: 0,
                        json: envelope("sphere", config, serde_json::to_value(r).unwrap()),
                    },
                    Err(e) => Outcome {
                        code: 2,
                        json: error_doc("sphere", config, &e),
                    },
                },
                Err(e) => fail("sphere", config, e),
            }
        }
        Command::Reduce { spoke } => {
            let config = json!({ "spoke": spoke });
            match spoke.resolve() {
                Ok(p) => {
                    let h = hypothesis_check(&p);
                    Outcome {
                        code: 0,
                        json: envelope(
                            "reduce",
                            config,
                            json!({
                                "reduced_params": reduce_labels(&p),
                                "hypothesis_sum": h.sum.to_string(),
                                "hypothesis_holds": h.holds,
                            }),
                        ),
                    }
                }
                Err(e) => fail("reduce", config, e),
            }
        }
    }
}

fn fail(command: &str, config: Value, e: Error) -> Outcome {
    Outcome {
        code: 3,
        json: error_doc(command, config, &e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub params: SpokeParams,
    pub reduced_params: SpokeParams,
    pub windows: Vec<(usize, Window)>,
    pub total: usize,
    pub failed: usize,
    pub first_failure: Option<CheckRecord>,
    pub records: Vec<CheckRecord>,
}

/// Decomposition, recurrence, membership and θ checks for every spoke of the
/// reduced parameters.
pub fn verify(
    p: &SpokeParams,
    jmin: Option<i64>,
    jmax: Option<i64>,
    corrupt: Option<&str>,
) -> Result<VerifyReport> {
    let rp = reduce_labels(p);
    let sig = Signature::from_params(&rp.params);
    let mut theta = ThetaAssignment::new(&sig)?;
    if let Some(arg) = corrupt {
        let parts: Vec<&str> = arg.split(':').collect();
        let bad = || Error::InvalidParams(format!("--corrupt-theta expects SPOKE:J:VALUE, got `{arg}`"));
        let [i, j, v] = parts.as_slice() else {
            return Err(bad());
        };
        let (i, j, v) = (
            i.parse::<usize>().map_err(|_| bad())?,
            j.parse::<usize>().map_err(|_| bad())?,
            v.parse::<i64>().map_err(|_| bad())?,
        );
        let width = sig.spoke(i)?.width as usize;
        if j >= width {
            return Err(bad());
        }
        theta = theta.with_base_override(i, j, v);
    }
    let mut records = Vec::new();
    let mut windows = Vec::new();
    for f in sig.spokes() {
        let mut cache = XCache::new(&sig, f.spoke)?;
        let d = cache.default_window();
        let w = Window {
            jmin: jmin.unwrap_or(d.jmin),
            jmax: jmax.unwrap_or(d.jmax),
        };
        if w.jmin > 0 || w.jmax < cache.l() * 2 - 1 {
            return Err(Error::InvalidParams(format!(
                "window {}..={} must contain the base range 0..{}",
                w.jmin,
                w.jmax,
                2 * cache.l()
            )));
        }
        windows.push((f.spoke, w));
        records.extend(kernel_suite(&mut cache, w));
        records.extend(theta_suite(&theta, &mut cache, w));
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    Ok(VerifyReport {
        params: p.clone(),
        reduced_params: rp.params,
        windows,
        total: records.len(),
        failed,
        first_failure: records.iter().find(|r| !r.pass).cloned(),
        records,
    })
}

/// Parses `args`, runs the command and writes the output. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    let outcome = execute(&cli);
    let text = serde_json::to_string_pretty(&outcome.json).unwrap() + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 3;
            }
        }
        None => print!("{text}"),
    }
    outcome.code
}
