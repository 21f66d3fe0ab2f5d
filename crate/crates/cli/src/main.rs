use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use perfcode::oracle::{
    connection_set_from_transversal, is_perfect_code_in_graph, oracle_decide, CayleyGraph,
};
use perfcode::perfect::find_inverse_closed_transversal;
use perfcode_cli::cache::Cache;
use perfcode_cli::experiments::{run_experiment, Report, EXPERIMENTS};
use perfcode_cli::record::{render, Format};
use perfcode_cli::run::{build_group, check, resolve, survey, Caps, CliError, CliResult, Method};
use perfcode_cli::tables::{render_markdown, tables};

#[derive(Parser)]
#[command(
    name = "perfcode",
    about = "Decide whether subgroups are perfect codes of finite groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest group order accepted; also the order cap for lattices.
    #[arg(long, global = true, default_value_t = perfcode::group::DEFAULT_ELEMENT_CAP)]
    max_order: usize,
    /// Node budget for inverse-closed transversal search.
    #[arg(long, global = true, default_value_t = perfcode::perfect::DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Assert that no randomness is used. Every search is deterministic, so
    /// this changes nothing.
    #[arg(long, global = true)]
    seedless: bool,
    /// Record wall time per record.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide each resolved subgroup of a group.
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Append-only JSON-lines verdict cache.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Decide every subgroup, cross-checked against the Cayley-graph oracle.
    Survey {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rebuild the maximal-subgroup tables for the listed field orders.
    Tables {
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29])]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Decide with the Cayley-graph oracle only.
    Oracle {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        /// Write the Cayley graph built from a transversal as an edge list.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Run a named experiment, or `all`.
    Experiment {
        name: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let caps = Caps {
        max_order: cli.global.max_order,
        budget: cli.global.budget,
    };
    let timing = cli.global.timing;
    match cli.command {
        Command::Check {
            group,
            subgroup,
            method,
            format,
            cache,
        } => {
            let cache = cache.map(|p| Cache::open(&p)).transpose()?;
            let records = check(&group, &subgroup, method, caps, timing, cache.as_ref())?;
            emit(&render(&records, format))?;
            if let Some(c) = cache {
                let s = c.stats();
                eprintln!(
                    "cache: {} hits, {} misses, {} rejected",
                    s.hits, s.misses, s.rejected
                );
            }
        }
        Command::Survey { group, format } => {
            let records = survey(&group, caps, timing)?;
            emit(&render(&records, format))?;
            let yes = records.iter().filter(|r| r.is_perfect_code).count();
            eprintln!(
                "{}: {} subgroups, {yes} perfect codes, {} not",
                group,
                records.len(),
                records.len() - yes
            );
        }
        Command::Tables { q, format } => {
            let rows = tables(&q)?;
            match format {
                ReportFormat::Text => emit(&render_markdown(&rows))?,
                ReportFormat::Json => {
                    emit(&(serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"))?
                }
            }
            let bad = rows.iter().filter(|r| !r.matches()).count();
            if bad > 0 {
                return Err(CliError::Failed(format!("{bad} table rows mismatch")));
            }
        }
        Command::Oracle {
            group,
            subgroup,
            emit_graph,
        } => {
            let b = build_group(&group, caps)?;
            let g = b.group.whole();
            for r in resolve(&b, &subgroup)? {
                let h = &r.subgroup;
                let verdict = oracle_decide(&g, h)?;
                let mut line = format!(
                    "{} {}: |G| = {}, |H| = {}, perfect code = {verdict}",
                    b.spec,
                    r.description,
                    g.order(),
                    h.order()
                );
                if let Some(path) = &emit_graph {
                    let l =
                        find_inverse_closed_transversal(&g, h, caps.budget)?.ok_or_else(|| {
                            CliError::Failed(format!(
                                "{}: no transversal, so no graph to emit",
                                r.description
                            ))
                        })?;
                    let conn = connection_set_from_transversal(&g, h, &l)?;
                    let cay = CayleyGraph::new(&g, &conn)?;
                    let check = is_perfect_code_in_graph(&cay, h.members())?;
                    let edges: String = cay
                        .edge_list()
                        .iter()
                        .map(|(u, v)| format!("{u} {v}\n"))
                        .collect();
                    std::fs::write(path, edges)?;
                    line.push_str(&format!(
                        ", graph of degree {} written to {} (direct check {})",
                        cay.degree(),
                        path.display(),
                        check.verdict
                    ));
                }
                emit(&(line + "\n"))?;
            }
        }
        Command::Experiment { name, format } => {
            let names: Vec<&str> = if name == "all" {
                EXPERIMENTS.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut failed = Vec::new();
            for n in names {
                let report: Report = run_experiment(n)?;
                match format {
                    ReportFormat::Text => emit(&report.render_text())?,
                    ReportFormat::Json => {
                        emit(&(serde_json::to_string(&report).expect("reports serialize") + "\n"))?
                    }
                }
                if !report.passed() {
                    failed.push(report.name.clone());
                }
            }
            if !failed.is_empty() {
                return Err(CliError::Failed(format!(
                    "experiments failed: {}",
                    failed.join(", ")
                )));
            }
        }
    }
    Ok(())
}
