use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use qtatoms_core::diagrams::{Cell, LatticeDiagram, Partition};
use qtatoms_core::harmonics::{frobenius, module_of};
use qtatoms_core::harness::{enumerate, run_tasks, Caps, Kind, ReportSet, Task};
use qtatoms_core::pieri::{atoms_qt_with, dp1_expand, Route};
use qtatoms_core::symfunc::{htilde, set_cache_dir, set_degree_cap, to_htilde, Basis, SymFun};
use qtatoms_core::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qtatoms", version, about = "Exact q,t symmetric functions and lattice-diagram harmonics")]
struct Cli {
    /// Directory for cached tables (default: $QTATOMS_CACHE, else no disk cache).
    #[arg(long, global = true, env = "QTATOMS_CACHE")]
    cache: Option<PathBuf>,
    /// Largest degree for which H̃ tables may be built.
    #[arg(long, global = true, default_value_t = 8)]
    degree_cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Schur expansion of H̃_μ.
    Htilde {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        json: bool,
    },
    /// Bigraded Frobenius characteristic of a diagram module.
    Frobenius {
        /// `mu:[3,2]`, `mu/ij:[3,2,1]/(0,0)` or `skew:1|0,1,1|3`.
        #[arg(long)]
        diagram: String,
    },
    /// Pieri coefficients of ∂_{p1} H̃_μ.
    Pieri {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        json: bool,
    },
    /// A^x, A^y and Ξ at a cell of μ.
    Atoms {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        cell: String,
        /// shadow_pieri, nabla_product or ek_sum.
        #[arg(long, default_value = "shadow_pieri")]
        route: String,
    },
    /// Runs a verification campaign.
    Verify {
        /// Task kind, or `all`.
        #[arg(long, required_unless_present = "task")]
        kind: Option<String>,
        /// Reruns a single task by id, e.g. `crucial:[3,2,1]/(1,0)`.
        #[arg(long)]
        task: Option<String>,
        #[arg(long, default_value_t = 1)]
        nmin: usize,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Largest |μ| for brute-force module computations.
        #[arg(long, default_value_t = 5)]
        brute: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn partition(s: &str) -> Result<Partition> {
    s.parse::<Partition>().with_context(|| format!("bad partition {s:?}"))
}

fn in_htilde(f: &SymFun) -> Result<SymFun> {
    Ok(SymFun::from_coeffs(f.degree(), Basis::Htilde, to_htilde(f)?)?)
}

fn coeff_list(f: &SymFun) -> serde_json::Value {
    f.coeffs().iter().map(|(p, c)| serde_json::json!({"partition": p.to_string(), "coeff": c.to_string()})).collect()
}

fn diagram(spec: &str) -> Result<LatticeDiagram> {
    let (kind, body) = spec.split_once(':').context("diagram must look like kind:value")?;
    Ok(match kind {
        "mu" => LatticeDiagram::of_partition(&partition(body)?),
        "mu/ij" => {
            let (mu, c) = body.split_once('/').context("expected [parts]/(i,j)")?;
            LatticeDiagram::hole(&partition(mu)?, c.parse::<Cell>()?)?
        }
        "skew" => LatticeDiagram::parse_skew(body)?,
        _ => bail!("unknown diagram kind {kind:?}"),
    })
}

fn run(cli: Cli) -> Result<u8> {
    set_degree_cap(cli.degree_cap);
    set_cache_dir(cli.cache.clone());
    match cli.cmd {
        Cmd::Htilde { mu, json } => {
            let f = htilde(&partition(&mu)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&coeff_list(&f))?);
            } else {
                print!("{}", f.to_text());
            }
        }
        Cmd::Frobenius { diagram: d } => {
            let l = diagram(&d)?;
            let f = frobenius(&*module_of(&l)?)?.to_symfun();
            println!("diagram {l}");
            print!("{}", f.to_text());
        }
        Cmd::Pieri { mu, json } => {
            let e = dp1_expand(&partition(&mu)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&coeff_list(&e.to_symfun()?))?);
            } else {
                print!("{e}");
            }
        }
        Cmd::Atoms { mu, cell, route } => {
            let mu = partition(&mu)?;
            let c: Cell = cell.parse()?;
            let r: Route = route.parse()?;
            let at = atoms_qt_with(&mu, c, r)?;
            println!("A^x = {}", in_htilde(&at.ax)?);
            println!("A^y = {}", in_htilde(&at.ay)?);
            println!("Xi = {}", in_htilde(&at.xi)?);
        }
        Cmd::Verify { kind, task, nmin, nmax, jobs, brute, seed, instances, report } => {
            let caps = Caps { brute, symbolic: cli.degree_cap, seed, lemma_instances: instances };
            let tasks: Vec<Task> = match (task, kind.as_deref()) {
                (Some(id), _) => vec![id.parse()?],
                (None, Some("all")) => {
                    let mut v = Vec::new();
                    for k in Kind::ALL {
                        v.extend(enumerate(k, nmin, nmax, &caps)?);
                    }
                    v
                }
                (None, Some(k)) => enumerate(k.parse()?, nmin, nmax, &caps)?,
                (None, None) => bail!("give --kind or --task"),
            };
            let set: ReportSet = run_tasks(&tasks, &caps, jobs)?;
            for r in &set.reports {
                println!("{:?} {} {}", r.status, r.task, if r.residual == "0" { "" } else { &r.residual });
            }
            use qtatoms_core::harness::Status;
            eprintln!(
                "{} pass, {} fail, {} skipped",
                set.count(Status::Pass),
                set.count(Status::Fail),
                set.count(Status::Skipped)
            );
            if let Some(path) = report {
                std::fs::write(&path, set.to_json(true)).with_context(|| format!("writing {}", path.display()))?;
            }
            return Ok(set.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = matches!(e.downcast_ref::<Error>(), Some(Error::Parse(_) | Error::Domain(_)));
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
