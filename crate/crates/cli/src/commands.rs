//! One function per subcommand. Each returns its status and result value;
//! errors bubble up to the envelope in `main`.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, ValueEnum};
use cuh_core::amalgam::{check_amalgamation_property, CheckOptions, Verdict as AmalgamVerdict};
use cuh_core::builder::{build_spec, Approximant, DEFAULT_BUDGET, DEFAULT_LEVEL, MAX_LEVEL};
use cuh_core::classify::{classify, ClassifyInput};
use cuh_core::homogeneity::{is_ultrahomogeneous_finite, k_homogeneity, piecewise_report, DEFAULT_PIECE_BOUND, MAX_K};
use cuh_core::io::{parse_graph_any, write_graph_text};
use cuh_core::omitted::{check_omitted_structure, minimally_omitted, Palette};
use cuh_core::pattern::catalog;
use cuh_core::spec::{ClassSpec, Family};
use cuh_core::Color;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{read_input, InputFile, Status};

/// Largest vertex bound accepted by `omitted`.
pub const MAX_OMITTED_BOUND: usize = 6;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "FF_SEED";

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("class").required(true).args(["spec", "family"])))]
pub struct ClassArgs {
    /// Class specification file (JSON)
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Named family, e.g. F22, "F(inf,1)", "G(2,inf)", "F(inf,2,3)"
    #[arg(long, value_name = "NAME")]
    pub family: Option<String>,
}

impl ClassArgs {
    fn load(&self, inputs: &mut Vec<InputFile>) -> Result<ClassSpec> {
        match (&self.spec, &self.family) {
            (Some(p), _) => Ok(ClassSpec::from_json(&read_input(p, inputs)?).with_context(|| p.display().to_string())?),
            (None, Some(f)) => Ok(f.parse::<Family>()?.spec()),
            (None, None) => bail!("one of --spec or --family is required"),
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct BuildArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Extension level to reach
    #[arg(long, default_value_t = DEFAULT_LEVEL)]
    pub level: usize,
    /// Largest number of vertices
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Tie-breaking seed; the FF_SEED environment variable takes precedence
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the approximant (JSON) here instead of embedding it in the report
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write the graph in the text format
    #[arg(long, value_name = "FILE")]
    pub graph_out: Option<PathBuf>,
}

/// The seed in effect: `FF_SEED` when set, else `--seed`.
pub fn effective_seed(flag: Option<u64>) -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => Ok(Some(s.trim().parse().with_context(|| format!("{SEED_ENV}={s:?} is not a u64"))?)),
        Err(_) => Ok(flag),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn build(args: &BuildArgs, seed: Option<u64>, inputs: &mut Vec<InputFile>) -> Result<(Status, Value)> {
    if args.level > MAX_LEVEL {
        bail!("--level {} exceeds {MAX_LEVEL}", args.level);
    }
    let spec = args.class.load(inputs)?;
    let a = build_spec(&spec, args.level, args.budget, seed)?;
    let doc = a.to_json();
    let mut result = json!({
        "class": spec.to_string(),
        "vertices": a.graph.n(),
        "edges": a.graph.edge_count(),
        "level": a.level,
        "requested_level": a.requested_level,
        "exhausted": a.exhausted,
        "seed": seed,
        "events": a.log.len(),
    });
    match &args.out {
        Some(p) => write_file(p, &(serde_json::to_string_pretty(&doc)? + "\n"))?,
        None => result["approximant"] = doc,
    }
    if let Some(p) = &args.graph_out {
        write_file(p, &write_graph_text(&a.graph))?;
    }
    let status = if a.exhausted { Status::Indeterminate } else { Status::Ok };
    Ok((status, result))
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    /// Approximant (JSON), graph (JSON) or graph (text)
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Class of a bare graph; ignored for approximants
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Certified extension level of a bare graph; ignored for approximants
    #[arg(long)]
    pub level: Option<usize>,
    /// Write the classification evidence (JSON) here
    #[arg(long, value_name = "FILE")]
    pub evidence: Option<PathBuf>,
}

fn is_approximant(src: &str) -> bool {
    serde_json::from_str::<Value>(src).is_ok_and(|v| v.get("graph").is_some() && v.get("spec").is_some())
}

pub fn classify_cmd(args: &ClassifyArgs, inputs: &mut Vec<InputFile>) -> Result<(Status, Value)> {
    let src = read_input(&args.input, inputs)?;
    let (graph, spec, level, kind) = if is_approximant(&src) {
        let a = Approximant::from_json(&src).with_context(|| args.input.display().to_string())?;
        (a.graph, Some(a.spec), Some(a.level), "approximant")
    } else {
        let g = parse_graph_any(&src).with_context(|| args.input.display().to_string())?;
        let spec = match &args.spec {
            Some(p) => Some(ClassSpec::from_json(&read_input(p, inputs)?).with_context(|| p.display().to_string())?),
            None => None,
        };
        if let Some(t) = args.level.filter(|&t| t > MAX_LEVEL) {
            bail!("--level {t} exceeds {MAX_LEVEL}");
        }
        (g, spec, args.level, "graph")
    };
    let c = classify(&graph, ClassifyInput { spec: spec.as_ref(), level })?;
    if let Some(p) = &args.evidence {
        write_file(p, &(serde_json::to_string_pretty(&c.evidence)? + "\n"))?;
    }
    let status = if c.label().is_some() { Status::Ok } else { Status::Indeterminate };
    let result = json!({
        "input_kind": kind,
        "vertices": graph.n(),
        "level": level,
        "label": c.label().map(ToString::to_string),
        "verdict": c.verdict,
        "observed_bounds": c.observed_bounds,
        "reductions": c.evidence.reductions,
    });
    Ok((status, result))
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PaletteArg {
    Both,
    Red,
    Blue,
}

impl From<PaletteArg> for Palette {
    fn from(p: PaletteArg) -> Palette {
        match p {
            PaletteArg::Both => Palette::Both,
            PaletteArg::Red => Palette::Only(Color::Red),
            PaletteArg::Blue => Palette::Only(Color::Blue),
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct OmittedArgs {
    /// Host graph (text or JSON)
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Largest omitted graph to report
    #[arg(long, default_value_t = 4)]
    pub bound: usize,
    /// Vertex colors of the candidate graphs
    #[arg(long, value_enum, default_value_t = PaletteArg::Both)]
    pub palette: PaletteArg,
}

fn load_graph(path: &Path, inputs: &mut Vec<InputFile>) -> Result<cuh_core::ColoredGraph> {
    let src = read_input(path, inputs)?;
    parse_graph_any(&src).with_context(|| path.display().to_string())
}

pub fn omitted(args: &OmittedArgs, inputs: &mut Vec<InputFile>) -> Result<(Status, Value)> {
    if args.bound > MAX_OMITTED_BOUND {
        bail!("--bound {} exceeds {MAX_OMITTED_BOUND}", args.bound);
    }
    let g = load_graph(&args.graph, inputs)?;
    let o = minimally_omitted(&g, args.bound, args.palette.into());
    let violations = check_omitted_structure(&o);
    Ok((
        Status::Ok,
        json!({
            "names": o.names(),
            "structure_violations": violations,
            "omitted": o,
        }),
    ))
}

#[derive(Args, Debug, Serialize)]
pub struct AmalgamArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Largest |a1| and |a2|
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    /// Only problems where each side adds one vertex
    #[arg(long)]
    pub one_point_only: bool,
}

pub fn amalgam_check(args: &AmalgamArgs, inputs: &mut Vec<InputFile>) -> Result<(Status, Value)> {
    let spec = args.class.load(inputs)?;
    let opts = CheckOptions { max_size: args.max_size, one_point_only: args.one_point_only };
    let c = check_amalgamation_property(&spec, opts)?;
    let holds = matches!(c.verdict, AmalgamVerdict::HoldsUpTo(_));
    Ok((Status::Ok, json!({ "class": spec.to_string(), "holds": holds, "check": c })))
}

#[derive(Args, Debug, Serialize)]
pub struct UhArgs {
    /// Graph (text or JSON)
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Test k-homogeneity only
    #[arg(long)]
    pub k: Option<usize>,
}

pub fn uh_check(args: &UhArgs, inputs: &mut Vec<InputFile>) -> Result<(Status, Value)> {
    let g = load_graph(&args.graph, inputs)?;
    let result = match args.k {
        Some(k) if k > MAX_K => bail!("--k {k} exceeds {MAX_K}"),
        Some(k) => json!({ "vertices": g.n(), "k": k, "k_homogeneous": k_homogeneity(&g, k)? }),
        None => json!({ "vertices": g.n(), "ultrahomogeneous": is_ultrahomogeneous_finite(&g)? }),
    };
    Ok((Status::Ok, result))
}

#[derive(Args, Debug, Serialize)]
pub struct PiecewiseArgs {
    /// Graph (text or JSON)
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Demand size for the scan of large pieces
    #[arg(long, default_value_t = DEFAULT_PIECE_BOUND)]
    pub bound: usize,
}

pub fn piecewise_check(args: &PiecewiseArgs, inputs: &mut Vec<InputFile>) -> Result<(Status, Value)> {
    let g = load_graph(&args.graph, inputs)?;
    let r = piecewise_report(&g, args.bound)?;
    Ok((Status::Ok, json!({ "piecewise_ultrahomogeneous": r.verdict, "report": r })))
}

pub fn catalog_cmd() -> Result<(Status, Value)> {
    let patterns: Vec<Value> = catalog()
        .into_iter()
        .map(|p| {
            json!({
                "name": p.name.to_string(),
                "vertices": p.graph.n(),
                "edges": p.graph.edge_count(),
                "graph": write_graph_text(&p.graph),
            })
        })
        .collect();
    Ok((Status::Ok, json!({ "count": patterns.len(), "patterns": patterns })))
}
