use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use pspace::finposet::{min_changes_oracle, steps_to_contract, DEFAULT_ORACLE_LIMIT};
use pspace::group::DEFAULT_MAX_ORDER;
use pspace::hunt::{
    analyze_file, export_dot, run_batch, AnalyzeOptions, BatchOptions, Deadline, DotKind, HomotopyReport, PrimeSelection,
    SubgroupPosets,
};
use pspace::{Error, GroupFile};

#[derive(Parser)]
#[command(name = "pspace", version, about = "Homotopy of p-subgroup posets of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one group and prime.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        prime: usize,
        #[arg(long)]
        skip_homology: bool,
        #[arg(long)]
        skip_steps: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        timeout: Option<u64>,
    },
    /// One CSV row per (group file, prime) in a directory.
    Batch {
        dir: PathBuf,
        /// `all` or a comma-separated list of primes.
        #[arg(long, default_value = "all")]
        primes: PrimeSelection,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Per-row budget in seconds (0 = unlimited).
        #[arg(long, default_value_t = 120)]
        timeout: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        skip_homology: bool,
        #[arg(long)]
        skip_steps: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Hasse diagram of a subgroup poset in DOT format.
    Dot {
        file: PathBuf,
        #[arg(long)]
        prime: usize,
        /// Sp, Ap, core_Sp, core_Ap or i_Ap.
        #[arg(long)]
        poset: DotKind,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Exhaustive beat-point search on a small A_p poset, compared with the step count.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        prime: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        limit: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load(path: &Path, max_order: usize) -> Result<(GroupFile, pspace::Group)> {
    let file = GroupFile::load(path)?;
    let g = file
        .group(max_order)
        .with_context(|| format!("building the group of {}", path.display()))?;
    Ok((file, g))
}

/// `p ∤ |G|` is reported as a result, not a failure: both posets are empty.
fn empty_posets(e: &anyhow::Error) -> Option<String> {
    match e.downcast_ref::<Error>() {
        Some(Error::PrimeDoesNotDivide { p, order }) => Some(format!(
            "both posets empty: {p} does not divide |G| = {order}, nothing to compare"
        )),
        _ => None,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            file,
            prime,
            skip_homology,
            skip_steps,
            json,
            max_order,
            timeout,
        } => {
            let opts = AnalyzeOptions {
                skip_homology,
                skip_steps,
                max_order,
                deadline: timeout.map_or(Deadline::none(), |s| Deadline::after(Duration::from_secs(s))),
            };
            let report = match analyze_file(&file, prime, &opts).map_err(anyhow::Error::from) {
                Ok(r) => r,
                Err(e) => match empty_posets(&e) {
                    Some(msg) => {
                        println!("{msg}");
                        return Ok(ExitCode::SUCCESS);
                    }
                    None => return Err(e),
                },
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", render(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Batch {
            dir,
            primes,
            jobs,
            timeout,
            out,
            skip_homology,
            skip_steps,
            max_order,
        } => {
            let opts = BatchOptions {
                primes,
                jobs,
                timeout: (timeout > 0).then(|| Duration::from_secs(timeout)),
                analyze: AnalyzeOptions {
                    skip_homology,
                    skip_steps,
                    max_order,
                    deadline: Deadline::none(),
                },
            };
            let res = run_batch(&dir, &opts)?;
            res.write_csv(&out)?;
            eprintln!("{}", res.summary());
            for r in res.candidates() {
                eprintln!(
                    "candidate: {} (order {}, p = {}), cores {}/{}",
                    r.name, r.order, r.p, r.sp_core, r.ap_core
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dot {
            file,
            prime,
            poset,
            out,
            max_order,
        } => {
            let (f, g) = load(&file, max_order)?;
            let text = match export_dot(&f.name, &g, prime, poset).map_err(anyhow::Error::from) {
                Ok(t) => t,
                Err(e) => match empty_posets(&e) {
                    Some(msg) => {
                        eprintln!("{msg}");
                        return Ok(ExitCode::SUCCESS);
                    }
                    None => return Err(e),
                },
            };
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            file,
            prime,
            limit,
            max_order,
        } => {
            let (f, g) = load(&file, max_order)?;
            let posets = match SubgroupPosets::new(&g, prime).map_err(anyhow::Error::from) {
                Ok(p) => p,
                Err(e) => match empty_posets(&e) {
                    Some(msg) => {
                        println!("{msg}");
                        return Ok(ExitCode::SUCCESS);
                    }
                    None => return Err(e),
                },
            };
            let ap = &posets.ap;
            let oracle = min_changes_oracle(ap, limit)?;
            let steps = steps_to_contract(ap)?;
            println!("group: {} (order {}), p = {}", f.name, g.order(), prime);
            println!("|A_p|: {}", ap.len());
            println!("steps_to_contract: {}", steps.map_or("none".to_string(), |s| s.to_string()));
            println!("oracle_changes: {}", oracle.map_or("none".to_string(), |c| c.to_string()));
            let agree = match (steps, oracle) {
                (Some(0), Some(0)) | (None, None) => true,
                (Some(s), Some(c)) => c + 1 == s,
                _ => false,
            };
            println!("agree: {agree}");
            Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn render(r: &HomotopyReport) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let opt = |h: &Option<pspace::HomologySummary>| h.as_ref().map_or("skipped".to_string(), |h| h.encode());
    let cases = |c: Vec<u8>| {
        if c.is_empty() {
            "none".to_string()
        } else {
            c.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
        }
    };
    let mut s = String::new();
    let mut line = |k: &str, v: String| s.push_str(&format!("{k:<20} {v}\n"));
    line("group", r.name.clone());
    line("order", format!("{} (p-part {})", r.order, r.p_part));
    line("prime", r.p.to_string());
    line("|S_p| |A_p|", format!("{} {}", r.sp_size, r.ap_size));
    line("core sizes", format!("{} {}", r.sp_core, r.ap_core));
    line("same homotopy type", yn(r.same_homotopy_type).into());
    line("|O_p(G)|", r.op_order.to_string());
    line("S_p contractible", yn(r.sp_contractible).into());
    line("A_p contractible", yn(r.ap_contractible).into());
    line("steps", r.steps.to_string());
    line("heights", format!("{} {}", r.sp_height, r.ap_height));
    let preds: Vec<&str> = r.step_predicates.iter().map(|&b| yn(b)).collect();
    line("step predicates", preds.join(" "));
    line("equivalence", cases(r.equivalence.cases.iter().map(|&c| c as u8).collect()));
    line("A_p retract of S_p", yn(r.equivalence.retract).into());
    line("contractibility", cases(r.contractibility.cases.iter().map(|&c| c as u8).collect()));
    line("euler", format!("{} {}", r.euler_sp, r.euler_ap));
    line("homology S_p", opt(&r.homology_sp));
    line("homology A_p", opt(&r.homology_ap));
    line("candidate", yn(r.candidate).into());
    let v = r.violations();
    if !v.is_empty() {
        line("VIOLATIONS", v.join("; "));
    }
    s
}
