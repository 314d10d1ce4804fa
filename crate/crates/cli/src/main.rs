//! CLI: metric tables, Poincaré constants, operator spectra, and
//! theorem verification for weighted graphs.

mod formats;
mod json;
mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use poincare_core::graph::Family;
use poincare_core::metrics::{
    diameter, inradius, path_metric, resistance_metric, restricted_metric, sup_restricted_metric,
};
use poincare_core::poincare::{
    best_constant_zero_exhaustion, constants, verify_theorem, ExhaustionFamily, ExhaustionVerdict,
    TheoremId, VerifyOptions,
};
use poincare_core::spectral::{neumann_operator, omega_operator};
use poincare_core::{Measure, PseudometricMatrix, VertexSubset, WeightedGraph};

use json::{num_array, str_array, Json};

#[derive(Parser)]
#[command(
    name = "poincare",
    about = "Metric and spectral invariants of weighted graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance tables (d, r, optionally r_Omega and r') with diameters and inradii
    Metrics(MetricsArgs),
    /// Poincaré constants c_P, c_P^Omega, and exhaustion sequences
    Constants(ConstantsArgs),
    /// Eigenvalues of the Neumann or Omega-restricted operator
    Spectrum(SpectrumArgs),
    /// Verify the theorems on a graph; exit status 0 iff all checks pass
    Verify(VerifyArgs),
    /// Write a generated family as a graph file
    Generate(GenerateArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file: one `label label weight` edge per line
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    /// Generated family, e.g. path:3, complete:4, star:4, comb:2:3
    #[arg(long, value_name = "NAME:PARAMS")]
    family: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit machine-readable JSON instead of tables
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Compute the restricted metric on this subset (comma-separated labels)
    #[arg(long, value_name = "LABELS")]
    omega: Option<String>,
    /// Also compute r' (the supremum of r_Omega over maximal proper subsets)
    #[arg(long)]
    rprime: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Graph file: one `label label weight` edge per line
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    /// Generated family, e.g. path:3
    #[arg(long, value_name = "NAME:PARAMS")]
    family: Option<String>,
    /// Also compute c_P^Omega on this subset (comma-separated labels)
    #[arg(long, value_name = "LABELS")]
    omega: Option<String>,
    /// Exhaustion sequence for a truncation family: path, geometric_halfline, comb:K
    #[arg(long, value_name = "FAMILY")]
    exhaustion: Option<String>,
    /// Largest truncation parameter for --exhaustion
    #[arg(long, default_value_t = 8, value_name = "N")]
    n_max: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Vertex measure: `uniform` or a measure file (`label mass` lines)
    #[arg(long, default_value = "uniform", value_name = "PATH|uniform")]
    measure: String,
    /// Restrict to this subset (comma-separated labels); the measure then
    /// lives on Omega
    #[arg(long, value_name = "LABELS")]
    omega: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Theorem id: thm-computing, spectral-theory-omega (alias char-c-null),
    /// char-inradius, cor-textbook, finite-measure, r-prime-equals-r,
    /// quarter-inequality, higher-eigenvalues
    theorem: Option<String>,
    /// Run every theorem (branches with unmet preconditions are skipped)
    #[arg(long, conflicts_with = "theorem")]
    all: bool,
    /// Omega for the subset branches (comma-separated labels); defaults to
    /// everything but the lexicographically last vertex
    #[arg(long, value_name = "LABELS")]
    omega: Option<String>,
    /// F for higher-eigenvalues (comma-separated labels); defaults to the
    /// lexicographically first vertex
    #[arg(long = "f", value_name = "LABELS")]
    f_labels: Option<String>,
    /// Mass floors for the variational searches (comma-separated)
    #[arg(long, value_name = "LIST")]
    floors: Option<String>,
    /// Vertex measure: `uniform` or a measure file
    #[arg(long, default_value = "uniform", value_name = "PATH|uniform")]
    measure: String,
    /// Seed for the optimizer multistarts
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample count for the zero-mean inequality
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Print per-theorem provenance notes
    #[arg(long)]
    verbose: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GenerateArgs {
    /// Family to generate, e.g. comb:2:3
    #[arg(long, value_name = "NAME:PARAMS")]
    family: String,
    /// Output path (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Metrics(args) => cmd_metrics(args),
        Command::Constants(args) => cmd_constants(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Generate(args) => cmd_generate(args),
    }
}

fn load_graph(graph: Option<&PathBuf>, family: Option<&str>) -> Result<WeightedGraph> {
    match (graph, family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            formats::parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
        }
        (None, Some(spec)) => Family::parse(spec)
            .and_then(|f| f.generate())
            .map_err(|e| anyhow!(e)),
        _ => bail!("exactly one of --graph and --family is required"),
    }
}

fn sorted_indices(g: &WeightedGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    order
}

fn parse_labels(g: &WeightedGraph, labels: &str) -> Result<VertexSubset> {
    let parts: Vec<&str> = labels
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if parts.is_empty() {
        bail!("empty label list");
    }
    g.subset_from_labels(&parts).map_err(|e| anyhow!(e))
}

fn default_omega(g: &WeightedGraph) -> VertexSubset {
    let order = sorted_indices(g);
    VertexSubset::from_indices(g.n(), &order[..order.len() - 1])
}

fn default_f(g: &WeightedGraph) -> VertexSubset {
    let order = sorted_indices(g);
    VertexSubset::from_indices(g.n(), &order[..1])
}

fn load_measure_map(spec: &str) -> Result<Option<BTreeMap<String, f64>>> {
    if spec == "uniform" {
        return Ok(None);
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    Ok(Some(formats::parse_measure_file(&text)?))
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn graph_json(g: &WeightedGraph) -> Json {
    let order = sorted_indices(g);
    let vertices = str_array(order.iter().map(|&i| g.label(i).to_string()));
    let mut edges: Vec<(String, String, f64)> = g
        .edges()
        .iter()
        .map(|&(i, j, w)| {
            let (a, b) = (g.label(i), g.label(j));
            if a <= b {
                (a.to_string(), b.to_string(), w)
            } else {
                (b.to_string(), a.to_string(), w)
            }
        })
        .collect();
    edges.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    let edges = Json::Arr(
        edges
            .into_iter()
            .map(|(a, b, w)| Json::Arr(vec![Json::Str(a), Json::Str(b), Json::Num(w)]))
            .collect(),
    );
    Json::Obj(vec![("vertices".into(), vertices), ("edges".into(), edges)])
}

fn matrix_json(pm: &PseudometricMatrix, order: &[usize]) -> Json {
    Json::Arr(
        order
            .iter()
            .map(|&i| num_array(order.iter().map(|&j| pm.get(i, j))))
            .collect(),
    )
}

fn subset_labels(g: &WeightedGraph, subset: &VertexSubset) -> Vec<String> {
    let mut labels: Vec<String> = subset
        .indices()
        .into_iter()
        .map(|i| g.label(i).to_string())
        .collect();
    labels.sort();
    labels
}

fn cmd_metrics(args: MetricsArgs) -> Result<ExitCode> {
    let g = load_graph(args.source.graph.as_ref(), args.source.family.as_deref())?;
    let order = sorted_indices(&g);
    let omega = args
        .omega
        .as_deref()
        .map(|s| parse_labels(&g, s))
        .transpose()?;

    let d = path_metric(&g);
    let r = resistance_metric(&g).map_err(|e| anyhow!(e))?;
    let r_omega = omega
        .as_ref()
        .map(|om| restricted_metric(&g, om))
        .transpose()
        .map_err(|e| anyhow!(e))?;
    let r_prime = if args.rprime {
        Some(sup_restricted_metric(&g).map_err(|e| anyhow!(e))?)
    } else {
        None
    };

    let mut tables: Vec<(&str, &PseudometricMatrix)> = vec![("d", &d), ("r", &r)];
    if let Some(ro) = &r_omega {
        tables.push(("r_omega", ro));
    }
    if let Some(rp) = &r_prime {
        tables.push(("r_prime", rp));
    }

    if args.output.json {
        let mut metrics_obj = Vec::new();
        let mut diam_obj = Vec::new();
        let mut inr_obj = Vec::new();
        for (name, pm) in &tables {
            metrics_obj.push((name.to_string(), matrix_json(pm, &order)));
            diam_obj.push((name.to_string(), Json::Num(diameter(pm))));
            if let Some(om) = &omega {
                inr_obj.push((
                    name.to_string(),
                    Json::Num(inradius(pm, om).map_err(|e| anyhow!(e))?),
                ));
            }
        }
        let mut root = vec![
            ("graph".into(), graph_json(&g)),
            ("metrics".into(), Json::Obj(metrics_obj)),
            ("diam".into(), Json::Obj(diam_obj)),
        ];
        if let Some(om) = &omega {
            root.push(("inradius".into(), Json::Obj(inr_obj)));
            root.push(("omega".into(), str_array(subset_labels(&g, om))));
        }
        emit(&args.output, &Json::Obj(root).render())?;
        return Ok(ExitCode::SUCCESS);
    }

    let mut text = String::new();
    for (name, pm) in &tables {
        text.push_str(&format!(
            "{name} (diam = {})\n",
            output::fmt_human(diameter(pm))
        ));
        if g.n() <= 12 {
            text.push_str(&output::metric_table(&g, pm, &order));
        } else {
            text.push_str("  (matrix omitted for n > 12; use --json)\n");
        }
        if let Some(om) = &omega {
            let inr = inradius(pm, om).map_err(|e| anyhow!(e))?;
            text.push_str(&format!(
                "  inradius of {{{}}} = {}\n",
                subset_labels(&g, om).join(", "),
                output::fmt_human(inr)
            ));
        }
        text.push('\n');
    }
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_constants(args: ConstantsArgs) -> Result<ExitCode> {
    let has_source = args.graph.is_some() || args.family.is_some();
    if args.graph.is_some() && args.family.is_some() {
        bail!("pass at most one of --graph and --family");
    }
    if !has_source && args.exhaustion.is_none() {
        bail!("nothing to do: pass --graph/--family and/or --exhaustion");
    }

    let mut root: Vec<(String, Json)> = Vec::new();
    let mut text = String::new();

    if has_source {
        let g = load_graph(args.graph.as_ref(), args.family.as_deref())?;
        let omegas = match args.omega.as_deref() {
            Some(labels) => vec![parse_labels(&g, labels)?],
            None => Vec::new(),
        };
        let bundle = constants(&g, &omegas).map_err(|e| anyhow!(e))?;
        root.push(("graph".into(), graph_json(&g)));
        root.push(("c_p".into(), Json::Num(bundle.c_p)));
        text.push_str(&format!("c_P = {}\n", output::fmt_human(bundle.c_p)));
        for (omega, c) in &bundle.c_p_omega {
            root.push(("c_p_omega".into(), Json::Num(*c)));
            root.push(("omega".into(), str_array(subset_labels(&g, omega))));
            text.push_str(&format!(
                "c_P^Omega = {} on {{{}}}\n",
                output::fmt_human(*c),
                subset_labels(&g, omega).join(", ")
            ));
        }
    } else if args.omega.is_some() {
        bail!("--omega needs a graph source");
    }

    if let Some(spec) = args.exhaustion.as_deref() {
        let family = ExhaustionFamily::parse(spec).map_err(|e| anyhow!(e))?;
        let seq = best_constant_zero_exhaustion(&family, args.n_max).map_err(|e| anyhow!(e))?;
        let verdict = match seq.verdict {
            ExhaustionVerdict::Converged => "converged",
            ExhaustionVerdict::Growing => "growing",
            ExhaustionVerdict::Inconclusive => "inconclusive",
        };
        root.push((
            "exhaustion".into(),
            Json::Obj(vec![
                ("family".into(), Json::Str(spec.to_string())),
                ("n_max".into(), Json::Int(args.n_max as i64)),
                (
                    "points".into(),
                    Json::Arr(
                        seq.points
                            .iter()
                            .map(|&(n, v)| Json::Arr(vec![Json::Int(n as i64), Json::Num(v)]))
                            .collect(),
                    ),
                ),
                ("verdict".into(), Json::Str(verdict.to_string())),
            ]),
        ));
        text.push_str(&format!("c_P^0 exhaustion for {spec} ({verdict}):\n"));
        for &(n, v) in &seq.points {
            text.push_str(&format!("  n = {n}: {}\n", output::fmt_human(v)));
        }
    }

    if args.output.json {
        emit(&args.output, &Json::Obj(root).render())?;
    } else {
        emit(&args.output, &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<ExitCode> {
    let g = load_graph(args.source.graph.as_ref(), args.source.family.as_deref())?;
    let masses = load_measure_map(&args.measure)?;
    let omega = args
        .omega
        .as_deref()
        .map(|s| parse_labels(&g, s))
        .transpose()?;

    let (operator, measure, eigenvalues, labels): (&str, Measure, Vec<f64>, Vec<String>) =
        match &omega {
            None => {
                let m = match &masses {
                    None => Measure::uniform(g.n()),
                    Some(map) => formats::measure_on_graph(&g, map)?,
                };
                let op = neumann_operator(&g, &m).map_err(|e| anyhow!(e))?;
                let labels = g.labels().to_vec();
                ("neumann", m, op.eigenvalues().to_vec(), labels)
            }
            Some(om) => {
                let m = match &masses {
                    None => Measure::finite(vec![1.0 / g.n() as f64; om.count()])
                        .map_err(|e| anyhow!(e))?,
                    Some(map) => formats::measure_on_subset(&g, om, map)?,
                };
                let op = omega_operator(&g, om, &m).map_err(|e| anyhow!(e))?;
                let labels = om
                    .indices()
                    .into_iter()
                    .map(|i| g.label(i).to_string())
                    .collect();
                ("omega", m, op.eigenvalues().to_vec(), labels)
            }
        };

    if args.output.json {
        let mut measure_obj: Vec<(String, Json)> = labels
            .iter()
            .zip(measure.masses())
            .map(|(l, &m)| (l.clone(), Json::Num(m)))
            .collect();
        measure_obj.sort_by(|a, b| a.0.cmp(&b.0));
        let mut root = vec![
            ("graph".into(), graph_json(&g)),
            ("operator".into(), Json::Str(operator.to_string())),
        ];
        if let Some(om) = &omega {
            root.push(("omega".into(), str_array(subset_labels(&g, om))));
        }
        root.push(("measure".into(), Json::Obj(measure_obj)));
        root.push(("eigenvalues".into(), num_array(eigenvalues)));
        emit(&args.output, &Json::Obj(root).render())?;
        return Ok(ExitCode::SUCCESS);
    }

    let mut text = format!("{operator} operator, dimension {}:\n", eigenvalues.len());
    for (k, v) in eigenvalues.iter().enumerate() {
        text.push_str(&format!("  lambda_{k} = {}\n", output::fmt_human(*v)));
    }
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let g = load_graph(args.source.graph.as_ref(), args.source.family.as_deref())?;
    let theorems: Vec<TheoremId> = if args.all {
        TheoremId::ALL.to_vec()
    } else {
        match &args.theorem {
            Some(name) => vec![TheoremId::parse(name).map_err(|e| anyhow!(e))?],
            None => bail!("pass a theorem id or --all"),
        }
    };

    let omega = match args.omega.as_deref() {
        Some(labels) => Some(parse_labels(&g, labels)?),
        None => Some(default_omega(&g)),
    };
    let f_set = match args.f_labels.as_deref() {
        Some(labels) => Some(parse_labels(&g, labels)?),
        None => Some(default_f(&g)),
    };
    let measure = match load_measure_map(&args.measure)? {
        None => None,
        Some(map) => Some(formats::measure_on_graph(&g, &map)?),
    };
    let floors = match args.floors.as_deref() {
        None => poincare_core::poincare::DEFAULT_FLOORS.to_vec(),
        Some(list) => {
            let mut floors = Vec::new();
            for part in list.split(',') {
                let f: f64 = part
                    .trim()
                    .parse()
                    .with_context(|| format!("bad floor `{part}`"))?;
                if !(1e-8..=1e-2).contains(&f) {
                    bail!("floor {f} outside [1e-8, 1e-2]");
                }
                floors.push(f);
            }
            if floors.is_empty() {
                bail!("empty floor list");
            }
            floors
        }
    };
    let opts = VerifyOptions {
        omega,
        f_set: f_set.clone(),
        measure,
        floors,
        seed: args.seed,
        samples: args.samples,
    };

    let mut reports = Vec::new();
    let mut skipped: Vec<(TheoremId, String)> = Vec::new();
    for theorem in theorems {
        if theorem == TheoremId::HigherEigenvalues && args.all {
            let k = f_set.as_ref().map_or(1, VertexSubset::count);
            if k + 1 >= g.n() {
                skipped.push((
                    theorem,
                    format!("needs |F| + 1 < n (|F| = {k}, n = {})", g.n()),
                ));
                continue;
            }
        }
        reports.push(verify_theorem(&g, theorem, &opts).map_err(|e| anyhow!(e))?);
    }
    let all_pass = reports.iter().all(|r| r.pass);

    if args.output.json {
        let reports_json = Json::Arr(
            reports
                .iter()
                .map(|r| {
                    Json::Obj(vec![
                        ("theorem".into(), Json::Str(r.theorem.as_str().into())),
                        ("lhs".into(), Json::Num(r.lhs)),
                        ("rhs".into(), Json::Num(r.rhs)),
                        ("residual".into(), Json::Num(r.residual)),
                        ("tolerance".into(), Json::Num(r.tolerance)),
                        ("pass".into(), Json::Bool(r.pass)),
                        ("notes".into(), str_array(r.notes.iter().cloned())),
                    ])
                })
                .collect(),
        );
        let skipped_json = Json::Arr(
            skipped
                .iter()
                .map(|(t, reason)| {
                    Json::Obj(vec![
                        ("theorem".into(), Json::Str(t.as_str().into())),
                        ("reason".into(), Json::Str(reason.clone())),
                    ])
                })
                .collect(),
        );
        let root = Json::Obj(vec![
            ("graph".into(), graph_json(&g)),
            ("reports".into(), reports_json),
            ("skipped".into(), skipped_json),
            ("all_pass".into(), Json::Bool(all_pass)),
        ]);
        emit(&args.output, &root.render())?;
    } else {
        let mut text = String::new();
        for report in &reports {
            text.push_str(&output::report_lines(report, args.verbose));
        }
        for (theorem, reason) in &skipped {
            text.push_str(&format!("[SKIP] {theorem}: {reason}\n"));
        }
        emit(&args.output, &text)?;
    }

    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let g = Family::parse(&args.family)
        .and_then(|f| f.generate())
        .map_err(|e| anyhow!(e))?;
    let text = formats::write_graph(&g);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
