//! Command-line front end: construct labeled families, solve small graphs
//! exactly, verify labeling files, predict augmentation bounds and run
//! cross-check experiment batches.
//!
//! Machine output is JSON on stdout with fixed field order and integers
//! only. Exit codes: 0 for success (including inapplicable predictions),
//! 1 when an experiment batch contains an inconsistent row, 2 for input or
//! parameter errors.

mod store;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use chila_core::{
    augment_and_label, build_cycle, build_path, build_spider, build_wheel, certify,
    check_pendant_lemma, color_count, extract_profile, is_local_antimagic, label_spider_2n,
    label_star, predict_auto, predict_nonpendant_class, predict_optimal_base,
    predict_pendant_class, run_experiment, solve_chi_la, CertifyOutcome, ColorProfile,
    Constructed, EdgeLabeling, Graph, SolveMethod, SolveOptions, DEFAULT_EDGE_LIMIT,
    HARD_EDGE_LIMIT, MAX_EDGES,
};
use store::ResultsStore;

type CliError = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    name = "chila",
    version,
    about = "Local antimagic labeling toolkit: verify, construct, solve and cross-check"
)]
struct Cli {
    /// Do not append results to the store file.
    #[arg(long, global = true)]
    no_store: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family instance; labeled families also emit the labeling
    /// and its color profile.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Compute the exact local antimagic chromatic number of a small graph.
    Solve {
        /// Edge-list file (one `u v` per line, `#` comments).
        graph: PathBuf,
        /// Maximum edge count to attempt (hard cap 11).
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        edge_limit: usize,
        /// Worker threads; 0 uses all cores, 1 disables parallelism.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Check a labeling file against a graph and report its profile.
    Verify {
        graph: PathBuf,
        labeling: PathBuf,
    },
    /// Attach pendant edges to one color class and extend the labeling.
    Augment {
        graph: PathBuf,
        labeling: PathBuf,
        /// 1-based color class index in profile order.
        #[arg(long)]
        i: usize,
        /// Pendant edges per class member.
        #[arg(long)]
        s: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the augmentation bound rules on a color profile.
    Predict {
        /// Color profile JSON file.
        #[arg(long)]
        profile: PathBuf,
        /// 1-based color class index in profile order.
        #[arg(long)]
        i: usize,
        /// Pendant edges per class member.
        #[arg(long)]
        s: u64,
        #[arg(long, value_enum, default_value_t = Rule::Auto)]
        rule: Rule,
    },
    /// Run a batch of augmentation experiments and cross-check consistency.
    Experiment {
        /// Batch file: one `graph labeling i s` row per line, paths relative
        /// to the batch file.
        batch: PathBuf,
        /// Also confirm each feasible row with the exhaustive solver.
        #[arg(long)]
        use_solver: bool,
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        edge_limit: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Directory for the generated files.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Base name for the generated files.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum Family {
    /// Two-leg spider Sp(2^[n]) with its closed-form labeling.
    Spider2 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Star K_{1,k} with the identity labeling.
    Star {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Star with s pendant edges attached to the leaf of class i.
    StarAugment {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        s: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Path P_n, graph only.
    Path {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cycle C_n, graph only.
    Cycle {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Wheel W_n (hub = vertex 0), graph only.
    Wheel {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spider from leg groups like "2x4,1x3", graph only.
    Spider {
        #[arg(long)]
        legs: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rule {
    Auto,
    NonpendantClass,
    PendantClass,
    OptimalBase,
}

#[derive(Serialize)]
struct Files {
    graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labeling: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<String>,
}

#[derive(Serialize)]
struct ConstructOutput {
    family: String,
    name: String,
    vertices: usize,
    edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    local_antimagic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    color_count: Option<usize>,
    files: Files,
}

#[derive(Serialize)]
struct SolveOutput {
    chi_la: usize,
    witness: Vec<u64>,
    exhaustive: bool,
    nodes: u64,
    method: SolveMethod,
    /// Milliseconds.
    wall_time: u128,
}

#[derive(Serialize)]
struct VerifyOutput {
    local_antimagic: bool,
    color_count: usize,
    profile: Option<ColorProfile>,
    pendant_lemma_ok: Option<bool>,
}

#[derive(Serialize)]
struct AugmentOutput {
    vertices: usize,
    edges: usize,
    local_antimagic: bool,
    color_count: usize,
    certified: Option<usize>,
    files: Files,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let store = ResultsStore::from_env(cli.no_store);
    match run(cli.command, &store) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, store: &ResultsStore) -> Result<ExitCode, CliError> {
    match command {
        Command::Construct { family } => cmd_construct(family, store),
        Command::Solve {
            graph,
            edge_limit,
            jobs,
        } => cmd_solve(&graph, edge_limit, jobs, store),
        Command::Verify { graph, labeling } => cmd_verify(&graph, &labeling, store),
        Command::Augment {
            graph,
            labeling,
            i,
            s,
            output,
        } => cmd_augment(&graph, &labeling, i, s, &output, store),
        Command::Predict {
            profile,
            i,
            s,
            rule,
        } => cmd_predict(&profile, i, s, rule, store),
        Command::Experiment {
            batch,
            use_solver,
            edge_limit,
            jobs,
        } => cmd_experiment(&batch, use_solver, edge_limit, jobs, store),
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read graph file {}: {e}", path.display()))?;
    Ok(Graph::parse_edge_list(&text)?)
}

fn read_labeling(path: &Path, edge_count: usize) -> Result<EdgeLabeling, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read labeling file {}: {e}", path.display()))?;
    Ok(EdgeLabeling::parse(&text, edge_count)?)
}

fn edges_value(g: &Graph) -> Value {
    Value::Array(
        g.edges()
            .iter()
            .map(|&(u, v)| json!([u, v]))
            .collect::<Vec<_>>(),
    )
}

fn warn_store(result: std::io::Result<()>) {
    if let Err(e) = result {
        eprintln!("warning: could not append to the results store: {e}");
    }
}

/// Writes graph / labeling / profile files and returns their paths.
fn write_instance(
    out_dir: &Path,
    name: &str,
    comments: &[String],
    built: &Constructed,
) -> Result<Files, CliError> {
    if built.graph.edge_count() > MAX_EDGES {
        return Err(format!(
            "instance has {} edges, file output is capped at {MAX_EDGES}",
            built.graph.edge_count()
        )
        .into());
    }
    fs::create_dir_all(out_dir)?;
    let graph_path = out_dir.join(format!("{name}.graph"));
    fs::write(&graph_path, built.graph.to_edge_list(comments))?;
    let labeling_path = out_dir.join(format!("{name}.labels"));
    fs::write(&labeling_path, built.labeling.render(&built.graph)?)?;
    let profile_path = built
        .local_antimagic
        .then(|| -> Result<String, CliError> {
            let profile = extract_profile(&built.graph, &built.labeling)?;
            let path = out_dir.join(format!("{name}.profile.json"));
            fs::write(&path, serde_json::to_string_pretty(&profile)?)?;
            Ok(path.display().to_string())
        })
        .transpose()?;
    Ok(Files {
        graph: graph_path.display().to_string(),
        labeling: Some(labeling_path.display().to_string()),
        profile: profile_path,
    })
}

fn write_graph_only(
    out_dir: &Path,
    name: &str,
    comments: &[String],
    graph: &Graph,
) -> Result<Files, CliError> {
    if graph.edge_count() > MAX_EDGES {
        return Err(format!(
            "instance has {} edges, file output is capped at {MAX_EDGES}",
            graph.edge_count()
        )
        .into());
    }
    fs::create_dir_all(out_dir)?;
    let graph_path = out_dir.join(format!("{name}.graph"));
    fs::write(&graph_path, graph.to_edge_list(comments))?;
    Ok(Files {
        graph: graph_path.display().to_string(),
        labeling: None,
        profile: None,
    })
}

fn parse_legs(spec: &str) -> Result<Vec<(usize, usize)>, CliError> {
    spec.split(',')
        .map(|group| {
            let (len, mult) = group
                .trim()
                .split_once('x')
                .ok_or_else(|| format!("leg group `{group}` is not of the form LENxMULT"))?;
            Ok((len.trim().parse::<usize>()?, mult.trim().parse::<usize>()?))
        })
        .collect()
}

fn cmd_construct(family: Family, store: &ResultsStore) -> Result<ExitCode, CliError> {
    let (family_name, params, name, output, built, graph_only): (
        &str,
        Value,
        String,
        OutputArgs,
        Option<Constructed>,
        Option<Graph>,
    ) = match family {
        Family::Spider2 { n, output } => (
            "spider2",
            json!({ "n": n }),
            format!("spider2-n{n}"),
            output,
            Some(label_spider_2n(n)?),
            None,
        ),
        Family::Star { k, output } => (
            "star",
            json!({ "k": k }),
            format!("star-k{k}"),
            output,
            Some(label_star(k)?),
            None,
        ),
        Family::StarAugment { k, i, s, output } => (
            "star-augment",
            json!({ "k": k, "i": i, "s": s }),
            format!("star-augment-k{k}-i{i}-s{s}"),
            output,
            Some(chila_core::augment_star_leaf(k, i, s)?),
            None,
        ),
        Family::Path { n, output } => (
            "path",
            json!({ "n": n }),
            format!("path-n{n}"),
            output,
            None,
            Some(build_path(n)?),
        ),
        Family::Cycle { n, output } => (
            "cycle",
            json!({ "n": n }),
            format!("cycle-n{n}"),
            output,
            None,
            Some(build_cycle(n)?),
        ),
        Family::Wheel { n, output } => (
            "wheel",
            json!({ "n": n }),
            format!("wheel-n{n}"),
            output,
            None,
            Some(build_wheel(n)?),
        ),
        Family::Spider { legs, output } => {
            let parsed = parse_legs(&legs)?;
            let name = format!(
                "spider-{}",
                parsed
                    .iter()
                    .map(|(a, m)| format!("{a}x{m}"))
                    .collect::<Vec<_>>()
                    .join("-")
            );
            (
                "spider",
                json!({ "legs": legs }),
                name,
                output,
                None,
                Some(build_spider(&parsed)?),
            )
        }
    };
    let name = output.name.clone().unwrap_or(name);
    let comments = vec![format!(
        "{family_name} instance; families number the hub/core as vertex 0"
    )];

    let report = if let Some(built) = built {
        let files = write_instance(&output.out_dir, &name, &comments, &built)?;
        ConstructOutput {
            family: family_name.to_string(),
            name: name.clone(),
            vertices: built.graph.vertex_count(),
            edges: built.graph.edge_count(),
            local_antimagic: Some(built.local_antimagic),
            color_count: Some(built.color_count),
            files,
        }
    } else {
        let graph = graph_only.expect("either labeled or graph-only");
        let files = write_graph_only(&output.out_dir, &name, &comments, &graph)?;
        ConstructOutput {
            family: family_name.to_string(),
            name: name.clone(),
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            local_antimagic: None,
            color_count: None,
            files,
        }
    };

    let payload = serde_json::to_value(&report)?;
    println!("{}", serde_json::to_string(&report)?);
    warn_store(store.append("construct", &[family_name], &params, &payload));
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(
    graph_path: &Path,
    edge_limit: usize,
    jobs: usize,
    store: &ResultsStore,
) -> Result<ExitCode, CliError> {
    if edge_limit >= HARD_EDGE_LIMIT {
        eprintln!("warning: an {HARD_EDGE_LIMIT}-edge search explores ~40M labelings per shard set");
    }
    let graph = read_graph(graph_path)?;
    let start = Instant::now();
    let result = solve_chi_la(&graph, SolveOptions { edge_limit, jobs })?;
    let output = SolveOutput {
        chi_la: result.chi_la,
        witness: result.witness.labels().to_vec(),
        exhaustive: result.exhaustive,
        nodes: result.nodes_explored,
        method: result.method,
        wall_time: start.elapsed().as_millis(),
    };
    println!("{}", serde_json::to_string(&output)?);

    // The payload keeps only the fields that are deterministic across
    // thread counts; nodes, witness and wall time are not.
    let params = json!({
        "graph": graph_path.display().to_string(),
        "edges": edges_value(&graph),
        "edge_limit": edge_limit,
    });
    let payload = json!({
        "chi_la": result.chi_la,
        "exhaustive": result.exhaustive,
        "method": serde_json::to_value(result.method)?,
    });
    warn_store(store.append("solve", &[], &params, &payload));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    graph_path: &Path,
    labeling_path: &Path,
    store: &ResultsStore,
) -> Result<ExitCode, CliError> {
    let graph = read_graph(graph_path)?;
    let labeling = read_labeling(labeling_path, graph.edge_count())?;
    let valid = is_local_antimagic(&graph, &labeling)?;
    let output = VerifyOutput {
        local_antimagic: valid,
        color_count: color_count(&graph, &labeling)?,
        profile: valid
            .then(|| extract_profile(&graph, &labeling))
            .transpose()?,
        pendant_lemma_ok: valid
            .then(|| check_pendant_lemma(&graph, &labeling))
            .transpose()?,
    };
    println!("{}", serde_json::to_string(&output)?);

    let params = json!({
        "graph": graph_path.display().to_string(),
        "edges": edges_value(&graph),
        "labels": labeling.labels(),
    });
    warn_store(store.append("verify", &[], &params, &serde_json::to_value(&output)?));
    Ok(ExitCode::SUCCESS)
}

fn cmd_augment(
    graph_path: &Path,
    labeling_path: &Path,
    class_index: usize,
    s: u64,
    output: &OutputArgs,
    store: &ResultsStore,
) -> Result<ExitCode, CliError> {
    let graph = read_graph(graph_path)?;
    let labeling = read_labeling(labeling_path, graph.edge_count())?;
    let built = augment_and_label(&graph, &labeling, class_index, s)?;
    let base_name = graph_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into());
    let name = output
        .name
        .clone()
        .unwrap_or_else(|| format!("{base_name}-aug-i{class_index}-s{s}"));
    let comments = vec![format!(
        "pendant augmentation of {} at class {class_index} with s = {s}; new edges appended \
         per target vertex in ascending order",
        graph_path.display()
    )];
    let files = write_instance(&output.out_dir, &name, &comments, &built)?;
    let certified = built
        .local_antimagic
        .then(|| -> Result<Option<usize>, CliError> {
            Ok(match certify(&built.graph, &built.labeling)? {
                CertifyOutcome::Certified(result) => Some(result.chi_la),
                CertifyOutcome::NotCertifiable { .. } => None,
            })
        })
        .transpose()?
        .flatten();
    let report = AugmentOutput {
        vertices: built.graph.vertex_count(),
        edges: built.graph.edge_count(),
        local_antimagic: built.local_antimagic,
        color_count: built.color_count,
        certified,
        files,
    };
    println!("{}", serde_json::to_string(&report)?);

    let params = json!({
        "graph": graph_path.display().to_string(),
        "edges": edges_value(&graph),
        "labels": labeling.labels(),
        "i": class_index,
        "s": s,
    });
    warn_store(store.append("augment", &[], &params, &serde_json::to_value(&report)?));
    Ok(ExitCode::SUCCESS)
}

fn cmd_predict(
    profile_path: &Path,
    class_index: usize,
    s: u64,
    rule: Rule,
    store: &ResultsStore,
) -> Result<ExitCode, CliError> {
    let text = fs::read_to_string(profile_path)
        .map_err(|e| format!("cannot read profile file {}: {e}", profile_path.display()))?;
    let profile: ColorProfile = serde_json::from_str(&text)?;
    profile.validate()?;
    let bounds = match rule {
        Rule::Auto => predict_auto(&profile, class_index, s)?,
        Rule::NonpendantClass => predict_nonpendant_class(&profile, class_index, s)?,
        Rule::PendantClass => predict_pendant_class(&profile, class_index, s)?,
        Rule::OptimalBase => predict_optimal_base(&profile, class_index, s)?,
    };
    println!("{}", serde_json::to_string(&bounds)?);

    let params = json!({
        "profile": serde_json::to_value(&profile)?,
        "i": class_index,
        "s": s,
        "rule": match rule {
            Rule::Auto => "auto",
            Rule::NonpendantClass => "nonpendant-class",
            Rule::PendantClass => "pendant-class",
            Rule::OptimalBase => "optimal-base",
        },
    });
    warn_store(store.append("predict", &[], &params, &serde_json::to_value(&bounds)?));
    Ok(ExitCode::SUCCESS)
}

struct BatchRow {
    graph: PathBuf,
    labeling: PathBuf,
    class_index: usize,
    s: u64,
}

fn parse_batch(text: &str, base_dir: &Path) -> Result<Vec<BatchRow>, CliError> {
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(format!(
                "batch line {}: expected `graph labeling i s`, got {} fields",
                lineno + 1,
                fields.len()
            )
            .into());
        }
        let resolve = |p: &str| {
            let path = Path::new(p);
            if path.is_absolute() {
                path.to_path_buf()
            } else {
                base_dir.join(path)
            }
        };
        rows.push(BatchRow {
            graph: resolve(fields[0]),
            labeling: resolve(fields[1]),
            class_index: fields[2].parse()?,
            s: fields[3].parse()?,
        });
    }
    Ok(rows)
}

fn cmd_experiment(
    batch_path: &Path,
    use_solver: bool,
    edge_limit: usize,
    jobs: usize,
    store: &ResultsStore,
) -> Result<ExitCode, CliError> {
    let text = fs::read_to_string(batch_path)
        .map_err(|e| format!("cannot read batch file {}: {e}", batch_path.display()))?;
    let base_dir = batch_path.parent().unwrap_or_else(|| Path::new("."));
    let rows = parse_batch(&text, base_dir)?;

    let mut reports = Vec::new();
    let mut inconsistent = 0usize;
    for row in &rows {
        let graph = read_graph(&row.graph)?;
        let labeling = read_labeling(&row.labeling, graph.edge_count())?;
        let label = format!(
            "{} i={} s={}",
            row.graph.display(),
            row.class_index,
            row.s
        );
        let report = run_experiment(
            label,
            &graph,
            &labeling,
            row.class_index,
            row.s,
            use_solver,
            SolveOptions { edge_limit, jobs },
        )?;
        if !report.consistent {
            inconsistent += 1;
        }
        println!("{}", serde_json::to_string(&report)?);
        reports.push(report);
    }
    eprintln!(
        "experiment: {} rows, {} applicable, {} inconsistent",
        reports.len(),
        reports.iter().filter(|r| r.predicted.applicable).count(),
        inconsistent
    );

    let params = json!({
        "batch": batch_path.display().to_string(),
        "use_solver": use_solver,
        "edge_limit": edge_limit,
    });
    let payload = json!({
        "rows": reports.len(),
        "inconsistent": inconsistent,
        "reports": serde_json::to_value(&reports)?,
    });
    warn_store(store.append("experiment", &[&text], &params, &payload));

    Ok(if inconsistent > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
