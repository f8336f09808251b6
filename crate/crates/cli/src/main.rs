use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ceg::adjlist::{parse_adjacency_lists, to_adjacency_list};
use ceg::energy::SpectralData;
use ceg::enumerate::MAX_BUILTIN_ORDER;
use ceg::families::{self, VerificationReport};
use ceg::graph6::{self, from_graph6};
use ceg::pipeline::{self, Format, PipelineError, Problem, SearchConfig, Source};
use ceg::{connected_graphs, read_graph6_stream, Dyadic, Graph};

const USAGE: u8 = 2;
const IO: u8 = 3;

#[derive(Parser)]
#[command(name = "ceg", version, about = "Complementary equienergetic graph search and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Pairs,
    Omega,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Prop1,
    #[value(name = "prop2-kpq")]
    Prop2Kpq,
    Prop3,
    Ramane05,
    Sachs,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum TextFormat {
    Graph6,
    Adjlist,
}

#[derive(Subcommand)]
enum Command {
    /// Staged search over every connected graph of one order
    Search {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        order: Option<usize>,
        /// graph6 file to scan instead of the built-in enumeration
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-5)]
        stage_a_tol: f64,
        #[arg(long, default_value_t = 1e-12)]
        stage_b_tol: f64,
        #[arg(long, default_value_t = 200)]
        digits: u32,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall time in the stats (output is then no longer reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Certified energy of one graph or of every graph in a file
    Energy {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        graph6: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
    /// Characteristic polynomial and isolated eigenvalues
    Spectrum {
        #[arg(long)]
        graph6: String,
        #[arg(long, default_value_t = 20)]
        digits: u32,
    },
    /// Writes every connected graph of an order as graph6
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a closed-form family against exact computation
    Verify {
        #[arg(long, value_enum)]
        family: Family,
        /// Family parameter such as l=6; may be repeated
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Converts between graph6 and adjacency-list text
    Convert {
        #[arg(long, value_enum)]
        from: TextFormat,
        #[arg(long, value_enum)]
        to: TextFormat,
        /// Input file; standard input when absent
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed command with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

fn io(message: impl Into<String>) -> Failure {
    Failure { code: IO, message: message.into() }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_graph6(text: &str) -> Result<Graph, Failure> {
    from_graph6(text).map_err(|e| io(format!("invalid graph6 {text:?}: {e}")))
}

fn encode(g: &Graph) -> Result<String, Failure> {
    graph6::to_graph6(g).map_err(|e| io(e.to_string()))
}

fn search(cfg: SearchConfig, format: Format, out: Option<PathBuf>) -> Result<u8, Failure> {
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let outcome = pipeline::run_search(&cfg).map_err(|e| match e {
        PipelineError::InvalidConfig(m) => usage(m),
        other => io(other.to_string()),
    })?;
    write_output(out.as_ref(), &pipeline::render(&outcome, format))?;
    Ok(0)
}

fn energy(graph6: Option<String>, file: Option<PathBuf>, digits: u32) -> Result<u8, Failure> {
    if digits == 0 {
        return Err(usage("--digits must be at least 1"));
    }
    let graphs: Vec<(String, Graph)> = match (graph6, file) {
        (Some(text), _) => vec![(text.clone(), parse_graph6(&text)?)],
        (None, Some(path)) => {
            let stream = read_graph6_stream(&path).map_err(|e| io(e.to_string()))?;
            stream
                .map(|g| g.map_err(|e| io(e.to_string())).and_then(|g| Ok((encode(&g)?, g))))
                .collect::<Result<_, _>>()?
        }
        (None, None) => return Err(usage("give --graph6 or --file")),
    };
    let mut text = String::new();
    for (label, g) in graphs {
        text.push_str(&format!("{label} {}\n", ceg::energy_certified(&g, digits)));
    }
    print!("{text}");
    Ok(0)
}

fn spectrum(graph6: &str, digits: u32) -> Result<u8, Failure> {
    let g = parse_graph6(graph6)?;
    let mut data = SpectralData::of_graph(&g);
    let target = Dyadic::new(1.into(), (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 1);
    let mut text = format!("order {} edges {}\n", g.order(), g.size());
    text.push_str(&format!("charpoly {}\n", data.poly()));
    text.push_str(&format!("factored {}\n", data.factored_text()));
    let mut iso = data.isolation().clone();
    iso.refine_all(&target);
    let mut zero_pending = iso.zero_multiplicity() > 0;
    for root in iso.roots().iter().rev() {
        if zero_pending && root.interval.hi().signum() < 0 {
            text.push_str(&format!("eigenvalue 0 ×{}\n", iso.zero_multiplicity()));
            zero_pending = false;
        }
        let (lo, hi) = (root.interval.lo().floor_decimal(digits), root.interval.hi().ceil_decimal(digits));
        let value = if root.interval.is_point() { lo } else { format!("[{lo}, {hi}]") };
        text.push_str(&format!("eigenvalue {value} ×{}\n", root.multiplicity));
    }
    if zero_pending {
        text.push_str(&format!("eigenvalue 0 ×{}\n", iso.zero_multiplicity()));
    }
    text.push_str(&format!("{}\n", data.energy(digits)));
    print!("{text}");
    Ok(0)
}

fn enumerate(order: usize, out: Option<PathBuf>) -> Result<u8, Failure> {
    if !(1..=MAX_BUILTIN_ORDER).contains(&order) {
        return Err(usage(format!("--order must be in 1..={MAX_BUILTIN_ORDER}")));
    }
    let stream = connected_graphs(order).map_err(|e| usage(e.to_string()))?;
    let sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(File::create(path).map_err(|e| io(format!("cannot write {}: {e}", path.display())))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    for g in stream {
        let g = g.map_err(|e| io(e.to_string()))?;
        writeln!(sink, "{}", encode(&g)?).map_err(|e| io(format!("write failed: {e}")))?;
    }
    sink.flush().map_err(|e| io(format!("write failed: {e}")))?;
    Ok(0)
}

fn params(raw: &[String]) -> Result<Vec<(String, usize)>, Failure> {
    raw.iter()
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| usage(format!("parameter {p:?} is not of the form k=v")))?;
            let v = v.parse().map_err(|_| usage(format!("parameter {k} needs a non-negative integer, got {v:?}")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn param(list: &[(String, usize)], key: &str, default: usize) -> usize {
    list.iter().rev().find(|(k, _)| k == key).map_or(default, |(_, v)| *v)
}

fn check_keys(list: &[(String, usize)], allowed: &[&str]) -> Result<(), Failure> {
    match list.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(usage(format!("unknown parameter {k:?}; expected one of {allowed:?}"))),
        None => Ok(()),
    }
}

fn render_report(r: &VerificationReport) -> String {
    let mut text = format!("family {}", r.family);
    for (k, v) in &r.parameters {
        text.push_str(&format!(" {k}={v}"));
    }
    text.push('\n');
    for c in &r.checks {
        text.push_str(&format!("[{}] {}: {}\n", if c.passed { "ok" } else { "MISMATCH" }, c.name, c.detail));
    }
    for e in &r.energies {
        text.push_str(&format!("E({}) ∈ [{}, {}]\n", e.graph, e.lo, e.hi));
    }
    text.push_str(if r.passed { "result: verified\n" } else { "result: mismatch found\n" });
    text
}

fn verify(family: Family, raw: &[String], json: bool) -> Result<u8, Failure> {
    let list = params(raw)?;
    let report = match family {
        Family::Prop1 => {
            check_keys(&list, &["p"])?;
            families::verify_prop1(param(&list, "p", 4))
        }
        Family::Prop2Kpq => {
            check_keys(&list, &["p", "q"])?;
            families::verify_kpq(param(&list, "p", 2), param(&list, "q", 3))
        }
        Family::Prop3 => {
            check_keys(&list, &["l"])?;
            families::verify_prop3(param(&list, "l", 5))
        }
        Family::Ramane05 => {
            check_keys(&list, &[])?;
            families::verify_ramane05()
        }
        Family::Sachs => {
            check_keys(&list, &["max-order"])?;
            families::verify_sachs(param(&list, "max-order", 8))
        }
    }
    .map_err(|e| usage(e.to_string()))?;
    let text = if json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        render_report(&report)
    };
    print!("{text}");
    Ok(if report.passed { 0 } else { 1 })
}

fn convert(from: TextFormat, to: TextFormat, input: Option<PathBuf>, out: Option<PathBuf>) -> Result<u8, Failure> {
    let text = match &input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| io(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| io(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    let graphs: Vec<Graph> = match from {
        TextFormat::Graph6 => text
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.trim_end_matches('\r')))
            .map(|(i, l)| (i, l.strip_prefix(graph6::HEADER).unwrap_or(l)))
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| from_graph6(l).map_err(|e| io(format!("line {}: {e}", i + 1))))
            .collect::<Result<_, _>>()?,
        TextFormat::Adjlist => parse_adjacency_lists(&text).map_err(|e| io(e.to_string()))?,
    };
    let rendered = match to {
        TextFormat::Graph6 => graphs.iter().map(|g| Ok(encode(g)? + "\n")).collect::<Result<String, Failure>>()?,
        TextFormat::Adjlist => graphs.iter().map(to_adjacency_list).collect::<Vec<_>>().join("\n"),
    };
    write_output(out.as_ref(), &rendered)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Search { problem, order, input, stage_a_tol, stage_b_tol, digits, workers, format, out, timing } => {
            let problem = match problem {
                ProblemArg::Pairs => Problem::ComplementPairs,
                ProblemArg::Omega => Problem::OmegaLineGraph,
            };
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
                FormatArg::Text => Format::Text,
            };
            let cfg = SearchConfig {
                problem,
                order,
                source: input.map_or(Source::Builtin, Source::File),
                stage_a_tol,
                stage_b_tol,
                certify_digits: digits,
                workers,
                record_timing: timing,
            };
            search(cfg, format, out)
        }
        Command::Energy { graph6, file, digits } => energy(graph6, file, digits),
        Command::Spectrum { graph6, digits } => spectrum(&graph6, digits),
        Command::Enumerate { order, out } => enumerate(order, out),
        Command::Verify { family, params, json } => verify(family, &params, json),
        Command::Convert { from, to, input, out } => convert(from, to, input, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ceg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
