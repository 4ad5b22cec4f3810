use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cfclab::decompose::MinDepthSolver;
use cfclab::io as fmt_io;
use cfclab::sweep::{run_sweep, to_jsonl, SweepConfig, SweepSource};
use cfclab::*;
use serde_json::json;

use crate::{Cli, Command, Format, Mode, Quantity};

#[derive(Debug)]
pub enum Failure {
    Lib(cfclab::Error),
    Io(String, io::Error),
    Usage(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(what, e) => write!(f, "{what}: {e}"),
            Failure::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<cfclab::Error> for Failure {
    fn from(e: cfclab::Error) -> Self {
        Failure::Lib(e)
    }
}

pub fn exit_code_for(f: &Failure) -> u8 {
    match f {
        Failure::Lib(Error::BudgetExceeded { .. }) => 3,
        _ => 1,
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| Failure::Io(p.display().to_string(), e))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io("standard input".into(), e))?;
            Ok(s)
        }
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Io("standard output".into(), e))
}

fn emit_json(value: &serde_json::Value) -> Result<()> {
    emit(&format!("{value}\n"))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Failure::Io(path.display().to_string(), e))
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let text = cli.format.unwrap_or(Format::Text);
    let json = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Gen {
            family,
            params,
            seed,
            certificate,
            canonical,
        } => gen(family, params, *seed, certificate.as_deref(), *canonical, text),
        Command::Verify { tree, coloring, mode } => verify(tree.as_deref(), coloring.as_deref(), *mode, text),
        Command::Decompose { tree, seed, min } => decompose(tree.as_deref(), *seed, *min, json),
        Command::Exact { quantity, tree, budget } => exact(*quantity, tree.as_deref(), budget.budget, json),
        Command::Critical { tree, budget } => exact(Quantity::Critical, tree.as_deref(), budget.budget, json),
        Command::Bounds { graph, budget } => exact(Quantity::Bounds, graph.as_deref(), budget.budget, json),
        Command::Sweep {
            count,
            n_min,
            n_max,
            seed,
            family,
            k_min,
            k_max,
            max_n,
            out,
            budget,
        } => {
            let source = match family {
                Some(name) => SweepSource::Family {
                    family: name.parse()?,
                    k_min: *k_min,
                    k_max: *k_max,
                },
                None => SweepSource::Random {
                    count: *count,
                    n_min: *n_min,
                    n_max: *n_max,
                    seed: *seed,
                },
            };
            let config = SweepConfig {
                source,
                budget: budget.budget,
                max_n: *max_n,
            };
            sweep(&config, out.as_ref())
        }
    }
}

fn gen(
    family: &str,
    params: &[usize],
    seed: Option<u64>,
    certificate: Option<&str>,
    canonical: bool,
    format: Format,
) -> Result<ExitCode> {
    let family: Family = family.parse()?;
    let spec = FamilySpec {
        family,
        params: params.to_vec(),
        seed,
    };
    let (tree, coloring) = match certificate {
        Some(_) => {
            let (t, c, _) = generate_with_certificate(&spec)?;
            (t, Some(c))
        }
        None => (generate(&spec)?, None),
    };
    if canonical && coloring.is_some() {
        return Err(Failure::Usage("--canonical renumbers edges and cannot be combined with --certificate".into()));
    }
    let tree = if canonical { tree.canonical() } else { tree };
    if format == Format::Dot {
        return emit(&fmt_io::to_dot(&tree, coloring.as_ref(), None)).map(|_| ExitCode::SUCCESS);
    }
    let mut text = fmt_io::write_tree(&tree);
    match (certificate, &coloring) {
        (Some("-"), Some(c)) => text.push_str(&fmt_io::write_coloring(c)),
        (Some(path), Some(c)) => write_file(Path::new(path), &fmt_io::write_coloring(c))?,
        _ => {}
    }
    emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(tree: Option<&Path>, coloring: Option<&Path>, mode: Mode, format: Format) -> Result<ExitCode> {
    let text = read_input(tree)?;
    let (tree, inline) = fmt_io::read_tree_with_coloring(&text)?;
    let c = match coloring {
        Some(p) => fmt_io::parse_coloring(&read_input(Some(p))?, tree.m())?,
        None => inline.ok_or_else(|| Failure::Usage("no coloring given (use --coloring or append one)".into()))?,
    };
    let verdict = match mode {
        Mode::Cfc => is_cfc_coloring(&tree, &c)?,
        Mode::Odd => is_odd_connected(&tree, &c)?,
        Mode::Ranking => is_edge_ranking(&tree, &c)?,
    };
    match (format, verdict) {
        (Format::Json, Verdict::Valid) => emit_json(&json!({"valid": true, "witness": null}))?,
        (Format::Json, Verdict::Invalid { witness }) => {
            emit_json(&json!({"valid": false, "witness": [witness.0, witness.1]}))?
        }
        (_, Verdict::Valid) => emit("VALID\n")?,
        (_, Verdict::Invalid { witness: (a, b) }) => emit(&format!("WITNESS {a} {b}\n"))?,
    }
    Ok(if verdict.is_valid() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn decompose(tree: Option<&Path>, seed: Option<u64>, min: bool, format: Format) -> Result<ExitCode> {
    let tree = fmt_io::read_tree(&read_input(tree)?)?;
    let (coloring, trace) = if min {
        MinDepthSolver::new().optimal_trace(&tree)?
    } else {
        let policy = seed.map_or(TieBreak::LowestEdgeIndex, TieBreak::SeededRandom);
        algorithm1(&tree, policy)?
    };
    match format {
        Format::Dot => emit(&fmt_io::to_dot(&tree, Some(&coloring), Some(&trace)))?,
        Format::Json => emit_json(&fmt_io::trace_json(&trace))?,
        Format::Text => {
            let mut out = format!("d = {}\n", trace.depth());
            for (i, round) in trace.rounds.iter().enumerate() {
                let edges: Vec<String> = round.iter().map(ToString::to_string).collect();
                out.push_str(&format!("round {}: {}\n", i + 1, edges.join(" ")));
            }
            out.push_str(&fmt_io::write_coloring(&coloring));
            emit(&out)?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn report_text(name: &str, r: &SearchReport) -> String {
    let colors: Vec<String> = r.certificate.colors().iter().map(ToString::to_string).collect();
    format!(
        "{name} = {}\nbounds: {} ..= {}\nnodes: {}\nclosed form: {}\ncertificate: {}\n",
        r.value,
        r.lower_bound_used,
        r.upper_bound_used,
        r.nodes_explored,
        r.closed_form.unwrap_or("none"),
        colors.join(" ")
    )
}

fn exact(quantity: Quantity, input: Option<&Path>, budget: u64, format: Format) -> Result<ExitCode> {
    let text = read_input(input)?;
    if quantity == Quantity::Bounds {
        let graph = fmt_io::read_graph(&text)?;
        let b = general_bounds(&graph, budget)?;
        if format == Format::Json {
            emit_json(&serde_json::to_value(&b).expect("serializable"))?;
        } else {
            let resolved = b.resolved.map_or("unresolved".to_string(), |v| v.to_string());
            emit(&format!(
                "h = {}\ncfc bounds: {} ..= {}\nresolved: {}\n",
                b.h, b.lower, b.upper, resolved
            ))?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    let tree = fmt_io::read_tree(&text)?;
    let (name, report) = match quantity {
        Quantity::Cfc => ("cfc", cfc_exact(&tree, budget)?),
        Quantity::Rank => ("rank", rank_exact(&tree, budget)?),
        Quantity::Oc => ("oc", oc_exact(&tree, budget)?),
        Quantity::Critical => {
            let r = is_cfc_critical(&tree, budget)?;
            if format == Format::Json {
                emit_json(&serde_json::to_value(&r).expect("serializable"))?;
            } else {
                let mut out = format!("critical: {}\ncfc = {}\n", r.is_critical, r.cfc_value);
                for pe in &r.per_edge {
                    let parts: Vec<String> = pe.components.iter().map(|(n, c)| format!("n={n} cfc={c}")).collect();
                    out.push_str(&format!("edge {}: {}\n", pe.edge, parts.join(", ")));
                }
                emit(&out)?;
            }
            return Ok(ExitCode::SUCCESS);
        }
        Quantity::Bounds => unreachable!("handled above"),
    };
    if format == Format::Text {
        emit(&report_text(name, &report))?;
    } else {
        emit_json(&report.to_json())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(config: &SweepConfig, out: Option<&PathBuf>) -> Result<ExitCode> {
    let (records, summary) = run_sweep(config)?;
    let report = to_jsonl(&records);
    let summary = serde_json::to_string(&summary).expect("serializable");
    match out {
        Some(path) => {
            write_file(path, &report)?;
            emit(&format!("{summary}\n"))?;
        }
        None => {
            emit(&report)?;
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
