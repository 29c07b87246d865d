use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kindep::covering::{self, CoveringParams, Priors};
use kindep::graph::{self, Chooser, Multigraph, RandomChooser, Scripted};
use kindep::loops::{self, LoopMultigraph};
use kindep::omega;
use kindep::order::{self, ElementaryStep};
use kindep::DegreeSequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "kindep",
    version,
    about = "Worst-case bounds for the MAX k-independent set algorithm"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    /// Only for covering-scan.
    Csv,
}

#[derive(clap::Args)]
struct SeqArgs {
    #[arg(long)]
    k: u32,
    /// Comma list or JSON array, e.g. 1,2,2,4,4,5,6
    #[arg(long)]
    degrees: DegreeSequence,
}

#[derive(Subcommand)]
enum Command {
    /// Worst-case MAX output size b_k(D) and its Ω-chain.
    Bound(SeqArgs),
    /// One application of Ω.
    Omega(SeqArgs),
    /// The full decrement sequence behind Ω, with Ferrers diagrams.
    Trace(SeqArgs),
    /// A multigraph and deletion script on which MAX leaves exactly b_k(D) vertices.
    Construct {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        script_out: Option<PathBuf>,
    },
    /// Run MAX on a multigraph file.
    Verify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        graph: PathBuf,
        /// Replay this deletion script.
        #[arg(long, conflicts_with_all = ["exhaustive", "random"])]
        script: Option<PathBuf>,
        /// Exact minimum over all legal runs.
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Break ties at random instead of by lowest index.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Elementary steps, the order ≼, and pseudo-reductions.
    Lab {
        #[command(subcommand)]
        op: LabOp,
    },
    /// Lower bound on a covering number from a starting bound.
    Covering {
        #[arg(long)]
        v: u64,
        #[arg(long)]
        kappa: u64,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        /// Starting bound; defaults to the Schönheim bound.
        #[arg(long)]
        start: Option<u64>,
    },
    /// Scan κ ranges for improvements on the best known baseline.
    CoveringScan {
        #[arg(long, default_value_t = 5)]
        kappa_min: u64,
        #[arg(long, default_value_t = 40)]
        kappa_max: u64,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        /// CSV with header kappa,v,lambda,bound,source.
        #[arg(long)]
        priors: Option<PathBuf>,
    },
    /// Minimum α_k over loop multigraphs with degree sequence D.
    Loops {
        #[command(flatten)]
        seq: SeqArgs,
        /// Also build an extremal loop multigraph.
        #[arg(long)]
        construct: bool,
    },
}

#[derive(Subcommand)]
enum LabOp {
    /// Decide D ≼ E.
    Precedes {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: DegreeSequence,
        #[arg(long)]
        e: DegreeSequence,
    },
    /// Graphical pseudo-reductions of E.
    Pseudo(SeqArgs),
    /// Apply one addition or transfer step.
    Step {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_enum)]
        kind: StepArg,
        #[arg(long)]
        x: u32,
        #[arg(long)]
        y: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StepArg {
    Addition,
    Transfer,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<kindep::Error> for Failure {
    fn from(e: kindep::Error) -> Self {
        Failure {
            code: if e.is_resource_guard() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// What a subcommand produced: machine form and human form.
struct Output {
    json: Value,
    text: String,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let raw = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| input_error(format!("malformed {}: {e}", path.display())))
}

fn write_json(path: &Path, value: &Value) -> CliResult<()> {
    let body = serde_json::to_string_pretty(value).expect("values serialize");
    fs::write(path, body + "\n")
        .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types serialize")
}

fn edge_lines(edges: impl Iterator<Item = (usize, usize, u32)>) -> String {
    edges
        .map(|(u, v, m)| format!("  {u} - {v} x{m}\n"))
        .collect()
}

fn cmd_bound(args: &SeqArgs) -> CliResult<Output> {
    let t = omega::b(&args.degrees, args.k)?;
    let mut text = format!("b_{}({}) = {}  (p = {})\n", t.k, args.degrees, t.b, t.p);
    for (i, d) in t.chain.iter().enumerate() {
        text += &format!("  Ω^{i}: {d}\n");
    }
    Ok(Output {
        json: to_json(&t),
        text,
    })
}

fn cmd_omega(args: &SeqArgs) -> CliResult<Output> {
    let o = omega::omega(&args.degrees, args.k)?;
    let text = format!(
        "Ω({}) = {o}\n{}",
        args.degrees,
        o.render_ferrers(Some(args.k))
    );
    Ok(Output {
        json: json!({ "k": args.k, "input": args.degrees, "omega": o }),
        text,
    })
}

fn cmd_trace(args: &SeqArgs) -> CliResult<Output> {
    let t = omega::decrement_sequence(&args.degrees, args.k)?;
    let mut text = format!("D = {}\n{}", t.input, t.input.render_ferrers(Some(t.k)));
    text += &format!("A_0 = {}\n", t.a0);
    if t.degenerate {
        text += "degenerate: every reduction is trivial\n";
    } else {
        let seq: Vec<String> = t.a.iter().map(u32::to_string).collect();
        text += &format!("decrement sequence ({}) of length {}\n", seq.join(","), t.s);
        for (i, a) in t
            .intermediates()
            .iter()
            .enumerate()
            .skip(1)
            .take(t.max as usize)
        {
            text += &format!("A_{i} = {a}\n");
        }
    }
    text += &format!("Ω(D) = {}\n{}", t.omega, t.omega.render_ferrers(Some(t.k)));
    Ok(Output {
        json: to_json(&t),
        text,
    })
}

fn cmd_construct(
    args: &SeqArgs,
    graph_out: Option<&Path>,
    script_out: Option<&Path>,
) -> CliResult<Output> {
    let w = graph::construct_worst_case(&args.degrees, args.k)?;
    let graph_json = to_json(&w.graph);
    let script_json = to_json(&w.script);
    if let Some(path) = graph_out {
        write_json(path, &graph_json)?;
    }
    if let Some(path) = script_out {
        write_json(path, &script_json)?;
    }
    let text = format!(
        "multigraph on {} vertices:\n{}deletion script: {:?}\nsurvivors: {}\n",
        w.graph.order(),
        edge_lines(w.graph.edges()),
        w.script.deletions,
        w.b
    );
    Ok(Output {
        json: json!({ "k": args.k, "b": w.b, "graph": graph_json, "script": script_json }),
        text,
    })
}

fn cmd_verify(
    k: u32,
    graph_path: &Path,
    script_path: Option<&Path>,
    exhaustive: bool,
    random: bool,
    seed: u64,
) -> CliResult<Output> {
    let g: Multigraph = read_json(graph_path)?;
    if exhaustive {
        let wc = graph::max_worst_case(&g, k)?;
        let text = format!(
            "worst case over all MAX runs: {} survivors\ndeletion script: {:?}\n",
            wc.min_size, wc.script.deletions
        );
        return Ok(Output {
            json: to_json(&wc),
            text,
        });
    }
    let mut chooser: Box<dyn Chooser> = match script_path {
        Some(path) => {
            let script: graph::DeletionScript = read_json(path)?;
            Box::new(Scripted::new(script.deletions))
        }
        None if random => Box::new(RandomChooser(ChaCha8Rng::seed_from_u64(seed))),
        None => Box::new(graph::LowestIndex),
    };
    let run = graph::max_run(&g, k, chooser.as_mut())?;
    let mut text = String::new();
    for del in &run.log {
        text += &format!("delete {} (degree {})\n", del.vertex, del.degree);
    }
    text += &format!(
        "{}-independent set of size {}: {:?}\n",
        k,
        run.independent_set.len(),
        run.independent_set
    );
    Ok(Output {
        json: json!({
            "k": k,
            "size": run.independent_set.len(),
            "independent_set": run.independent_set,
            "log": run.log,
            "script": run.script(),
        }),
        text,
    })
}

fn cmd_lab(op: &LabOp) -> CliResult<Output> {
    match op {
        LabOp::Precedes { k, d, e } => {
            let holds = order::precedes(d, e, *k)?;
            Ok(Output {
                json: json!({ "k": k, "d": d, "e": e, "precedes": holds }),
                text: format!("{d} {} {e}  (k = {k})\n", if holds { "≼" } else { "⋠" }),
            })
        }
        LabOp::Pseudo(args) => {
            let prs = order::pseudo_reductions(&args.degrees, args.k)?;
            let omega = omega::omega(&args.degrees, args.k)?;
            let mut text = format!("{} pseudo-reductions of {}\n", prs.len(), args.degrees);
            for e in &prs {
                let mark = if *e == omega { "  (Ω)" } else { "" };
                text += &format!("  {e}{mark}\n");
            }
            Ok(Output {
                json: json!({ "k": args.k, "input": args.degrees, "omega": omega, "pseudo_reductions": prs }),
                text,
            })
        }
        LabOp::Step { seq, kind, x, y } => {
            let step = match kind {
                StepArg::Addition => ElementaryStep::addition(*x, *y),
                StepArg::Transfer => ElementaryStep::transfer(*x, *y),
            };
            let out = step.apply(&seq.degrees, seq.k)?;
            Ok(Output {
                json: json!({ "k": seq.k, "input": seq.degrees, "step": step, "output": out }),
                text: format!("{}\n{}", out, out.render_ferrers(Some(seq.k))),
            })
        }
    }
}

fn cmd_covering(v: u64, kappa: u64, lambda: u64, start: Option<u64>) -> CliResult<Output> {
    let params = CoveringParams::new(v, kappa, lambda)?;
    let sch = covering::schonheim(&params);
    let z0 = start.unwrap_or(sch);
    let (bound, reports) = covering::covering_lower_bound(&params, z0)?;
    let mut text = format!("Schönheim bound: {sch}\n");
    for r in &reports {
        let b = r.b.map_or("n/a".to_string(), |b| b.to_string());
        text += &format!(
            "z = {}: r = {}, d = {}, s = {}, ℓ = {}, b_{} = {}{}\n",
            r.z,
            r.r,
            r.d,
            r.s,
            r.ell,
            r.k,
            b,
            if r.contradiction {
                "  → ruled out"
            } else {
                ""
            }
        );
    }
    text += &format!("lower bound: {bound}\n");
    Ok(Output {
        json: json!({ "params": params, "schonheim": sch, "start": z0, "bound": bound, "reports": reports }),
        text,
    })
}

fn cmd_scan(
    kmin: u64,
    kmax: u64,
    lambda: u64,
    priors: Option<&Path>,
    format: Format,
) -> CliResult<String> {
    let priors = match priors {
        Some(path) => {
            let file = fs::File::open(path)
                .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
            Some(Priors::from_csv(file)?)
        }
        None => None,
    };
    let rows = covering::scan_table(kmin, kmax, lambda, priors.as_ref())?;
    Ok(match format {
        Format::Csv => covering::rows_to_csv(&rows),
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        Format::Text => covering::rows_to_text(&rows),
    })
}

fn cmd_loops(args: &SeqArgs, construct: bool) -> CliResult<Output> {
    let value = loops::alpha_k_min_loops(&args.degrees, args.k)?;
    let mut text = format!("minimum α_{} over loop multigraphs: {value}\n", args.k);
    let mut out = json!({ "k": args.k, "degrees": args.degrees, "alpha": value });
    if construct {
        let g: LoopMultigraph = loops::construct_extremal_loop_multigraph(&args.degrees, args.k)?;
        text += &format!("extremal loop multigraph:\n{}", edge_lines(g.edges()));
        if g.order() <= loops::BRUTEFORCE_MAX_ORDER {
            let exact = loops::alpha_k_bruteforce(&g, args.k)?;
            text += &format!("exact α_{} of this multigraph: {exact}\n", args.k);
            out["exact_alpha"] = json!(exact);
        }
        out["graph"] = to_json(&g);
    }
    Ok(Output { json: out, text })
}

fn run(cli: Cli) -> CliResult<String> {
    if let Command::CoveringScan {
        kappa_min,
        kappa_max,
        lambda,
        priors,
    } = &cli.command
    {
        return cmd_scan(
            *kappa_min,
            *kappa_max,
            *lambda,
            priors.as_deref(),
            cli.format,
        );
    }
    if cli.format == Format::Csv {
        return Err(input_error(
            "--format csv is only available for covering-scan",
        ));
    }
    let output = match &cli.command {
        Command::Bound(args) => cmd_bound(args),
        Command::Omega(args) => cmd_omega(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Construct {
            seq,
            graph_out,
            script_out,
        } => cmd_construct(seq, graph_out.as_deref(), script_out.as_deref()),
        Command::Verify {
            k,
            graph,
            script,
            exhaustive,
            random,
            seed,
        } => cmd_verify(*k, graph, script.as_deref(), *exhaustive, *random, *seed),
        Command::Lab { op } => cmd_lab(op),
        Command::Covering {
            v,
            kappa,
            lambda,
            start,
        } => cmd_covering(*v, *kappa, *lambda, *start),
        Command::Loops { seq, construct } => cmd_loops(seq, *construct),
        Command::CoveringScan { .. } => unreachable!("handled above"),
    }?;
    Ok(match cli.format {
        Format::Json => {
            serde_json::to_string_pretty(&output.json).expect("values serialize") + "\n"
        }
        _ => output.text,
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
