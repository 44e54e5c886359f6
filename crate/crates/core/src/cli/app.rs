//! The `fum` command line.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use super::formats::{
    parse_planar_code, parse_text, write_planar_code, write_text, FormatError, PLANAR_CODE_HEADER,
};
use super::report::{self, document, error_document, to_dot};
use super::scan::{scan, ScanChecks, ScanOptions};
use crate::constructive::{
    color_quadrangulation_with, fum_color_traced, fum_edge_color_2connected_traced, ConstructError,
    QuadMode,
};
use crate::embedding::{classify, Dart, Edge, EmbeddingError, PlaneGraph};
use crate::exact::{chi_fum_edge_with, chi_fum_with, ChiResult, SolveLimits, DEFAULT_MAX_K_VERTEX};
use crate::families::{
    self, connected_plane_graphs, quadrangulations, triangulations, FamilyError, FamilyKind,
    FamilySpec, MapClass,
};
use crate::fumcheck::{
    check_fum_edge, check_fum_vertex, CheckError, EdgeCheckMode, EdgeColoring, EdgePair,
    FreePairSet, Verdict, VertexColoring,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRIPWIRE: i32 = 3;

#[derive(Debug, Error)]
enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("constructed colouring failed verification")]
    Unverified { detail: Value },
}

impl AppError {
    fn code(&self) -> &'static str {
        match self {
            AppError::Usage(_) => "usage",
            AppError::Io(_) => "io",
            AppError::Format(_) => "format",
            AppError::Embedding(_) => "embedding",
            AppError::Family(_) => "family",
            AppError::Check(_) => "check",
            AppError::Construct(ConstructError::NotApplicable { .. }) => "not_applicable",
            AppError::Construct(ConstructError::PreconditionViolated { .. }) => "precondition",
            AppError::Construct(ConstructError::InternalExhaustion { .. }) => "internal_exhaustion",
            AppError::Construct(ConstructError::FallbackExhausted) => "fallback_exhausted",
            AppError::Construct(ConstructError::Check(_)) => "check",
            AppError::Construct(ConstructError::Embedding(_)) => "embedding",
            AppError::Unverified { .. } => "unverified",
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            AppError::Construct(
                ConstructError::InternalExhaustion { .. } | ConstructError::FallbackExhausted,
            )
            | AppError::Unverified { .. } => EXIT_TRIPWIRE,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "fum",
    version,
    about = "Facial unique-maximum colourings of plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    PlanarCode,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    PlanarCode,
}

#[derive(Args, Debug)]
struct Input {
    /// Input file, or `-` for standard input.
    input: String,
    #[arg(long, value_enum, default_value = "auto")]
    format: InputFormat,
    /// Record index within a planar-code stream.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Outer face given by a dart `u,v` on it.
    #[arg(long, value_parser = parse_dart)]
    outer: Option<Dart>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Budget {
    #[arg(long, default_value_t = DEFAULT_MAX_K_VERTEX)]
    max_k: u32,
    /// Seconds per solver call.
    #[arg(long, default_value_t = 10.0)]
    timeout: f64,
}

impl Budget {
    fn duration(&self) -> Duration {
        Duration::from_secs_f64(self.timeout.max(0.0))
    }

    fn limits(&self) -> SolveLimits {
        SolveLimits::timeout(self.duration())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ColorVariant {
    Subcubic,
    Outerplane,
    Quadrangulation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    GirthVertex,
    GirthEdge,
    NestedQuad,
    Cycle,
    Path,
    Star,
    Wheel,
    K4,
    Cube,
    Quadrangulations,
    Triangulations,
    Subcubic,
    Outerplane,
    PlaneGraphs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Chi,
    ChiEdge,
    Construct,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the faces of the embedding.
    Faces(Input),
    /// Report structural class flags.
    Classify(Input),
    /// Check a vertex colouring.
    VerifyVertex {
        #[command(flatten)]
        input: Input,
        /// Comma-separated colours in vertex order.
        #[arg(long)]
        colors: String,
    },
    /// Check an edge colouring.
    VerifyEdge {
        #[command(flatten)]
        input: Input,
        /// `u-v:c` entries, or bare colours in sorted edge order.
        #[arg(long)]
        colors: String,
        /// Free pairs `a-b/c-d`, comma-separated.
        #[arg(long, default_value = "")]
        free: String,
        /// Skip the outer face and cap outer edges at 3.
        #[arg(long)]
        boundary: bool,
    },
    /// Exact FUM chromatic number.
    Chi {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
        /// Also solve for every choice of outer face.
        #[arg(long)]
        all_outer: bool,
    },
    /// Exact FUM chromatic index.
    ChiEdge {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
    },
    /// Constructive 4-colouring of a supported class.
    Color {
        #[arg(value_enum)]
        variant: ColorVariant,
        #[command(flatten)]
        input: Input,
        /// Quadrangulations: skip the labelling route.
        #[arg(long)]
        force_fallback: bool,
        /// Include the reduction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Constructive 4-edge-colouring of a 2-connected graph.
    ColorEdge {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        trace: bool,
    },
    /// Generate family members or enumerate small graphs.
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// Girth, size, or vertex bound depending on the family.
        param: usize,
        /// Nesting depth for `nested-quad`.
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate every graph of a stream.
    Scan {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "chi")]
        checks: Vec<Check>,
        /// Worker threads, 0 for all cores.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        all_outer: bool,
        /// Record wall-clock time per graph.
        #[arg(long)]
        timings: bool,
    },
    /// Write a DOT drawing, optionally coloured.
    ExportDot {
        #[command(flatten)]
        input: Input,
        /// Vertex colours, comma-separated.
        #[arg(long)]
        colors: Option<String>,
        /// Edge colours as for `verify-edge`.
        #[arg(long)]
        edge_colors: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_dart(s: &str) -> Result<Dart, String> {
    let (a, b) = s.split_once(',').ok_or("expected u,v")?;
    let p = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad vertex {t:?}"))
    };
    Ok(Dart::new(p(a)?, p(b)?))
}

fn parse_edge(s: &str) -> Result<Edge, AppError> {
    let (a, b) = s
        .split_once('-')
        .ok_or_else(|| AppError::Usage(format!("bad edge {s:?}")))?;
    let p = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| AppError::Usage(format!("bad vertex {t:?}")))
    };
    Ok(Edge::new(p(a)?, p(b)?))
}

fn parse_colors(s: &str) -> Result<Vec<u32>, AppError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| AppError::Usage(format!("bad colour {t:?}")))
        })
        .collect()
}

fn parse_edge_colors(g: &PlaneGraph, s: &str) -> Result<EdgeColoring, AppError> {
    if !s.contains(':') {
        let cols = parse_colors(s)?;
        if cols.len() != g.edge_count() {
            return Err(AppError::Usage(format!(
                "{} colours for {} edges",
                cols.len(),
                g.edge_count()
            )));
        }
        return Ok(EdgeColoring::from_indexed(g, &cols));
    }
    let mut c = EdgeColoring::new();
    for item in s.split(',').filter(|t| !t.trim().is_empty()) {
        let (e, col) = item
            .split_once(':')
            .ok_or_else(|| AppError::Usage(format!("bad entry {item:?}")))?;
        let col = col
            .trim()
            .parse::<u32>()
            .map_err(|_| AppError::Usage(format!("bad colour {col:?}")))?;
        c.set(parse_edge(e)?, col);
    }
    Ok(c)
}

fn parse_free(s: &str) -> Result<FreePairSet, AppError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once('/')
                .ok_or_else(|| AppError::Usage(format!("bad pair {t:?}")))?;
            Ok(EdgePair::new(parse_edge(a)?, parse_edge(b)?))
        })
        .collect()
}

fn read_bytes(path: &str) -> Result<Vec<u8>, AppError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| AppError::Io(e.to_string()))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| AppError::Io(format!("{path}: {e}")))
    }
}

fn load_all(input: &Input) -> Result<Vec<PlaneGraph>, AppError> {
    let bytes = read_bytes(&input.input)?;
    let code = match input.format {
        InputFormat::PlanarCode => true,
        InputFormat::Text => false,
        InputFormat::Auto => bytes.starts_with(PLANAR_CODE_HEADER),
    };
    let graphs = if code {
        parse_planar_code(&bytes)?
    } else {
        let s = std::str::from_utf8(&bytes)
            .map_err(|_| AppError::Usage("input is not UTF-8 text".into()))?;
        vec![parse_text(s)?]
    };
    match input.outer {
        Some(d) => Ok(graphs
            .iter()
            .map(|g| g.with_outer(d))
            .collect::<Result<_, _>>()?),
        None => Ok(graphs),
    }
}

fn load_one(input: &Input) -> Result<PlaneGraph, AppError> {
    let mut all = load_all(input)?;
    if input.index >= all.len() {
        return Err(AppError::Usage(format!(
            "record {} requested, stream has {}",
            input.index,
            all.len()
        )));
    }
    Ok(all.swap_remove(input.index))
}

fn verdict_exit(v: &Verdict) -> i32 {
    if v.is_ok() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn chi_exit(r: ChiResult) -> i32 {
    match r {
        ChiResult::Value(_) => EXIT_OK,
        _ => EXIT_FAILURE,
    }
}

enum Output {
    Json(Value),
    Raw(Vec<u8>),
}

fn write_file(path: &PathBuf, bytes: &[u8]) -> Result<(), AppError> {
    std::fs::write(path, bytes).map_err(|e| AppError::Io(format!("{}: {e}", path.display())))
}

fn generate(family: Family, param: usize, depth: usize) -> Result<Vec<PlaneGraph>, AppError> {
    let spec = |kind| FamilySpec {
        kind,
        girth_parameter: param,
        depth,
    };
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(AppError::Usage(what.to_string()))
        }
    };
    Ok(match family {
        Family::GirthVertex => vec![spec(FamilyKind::GirthVertex).generate()?],
        Family::GirthEdge => vec![spec(FamilyKind::GirthEdge).generate()?],
        Family::NestedQuad => vec![spec(FamilyKind::NestedQuad).generate()?],
        Family::Cycle => {
            need(param >= 3, "cycle needs at least 3 vertices")?;
            vec![families::cycle(param)]
        }
        Family::Path => {
            need(param >= 1, "path needs at least 1 vertex")?;
            vec![families::path(param)]
        }
        Family::Star => vec![families::star(param)],
        Family::Wheel => {
            need(param >= 3, "wheel needs at least 3 rim vertices")?;
            vec![families::wheel(param)]
        }
        Family::K4 => vec![families::k4()],
        Family::Cube => vec![families::cube()],
        Family::Quadrangulations => quadrangulations(param),
        Family::Triangulations => triangulations(param),
        Family::Subcubic => connected_plane_graphs(param, MapClass::Subcubic),
        Family::Outerplane => connected_plane_graphs(param, MapClass::Outerplane),
        Family::PlaneGraphs => connected_plane_graphs(param, MapClass::All),
    })
}

fn construct_failure(e: ConstructError) -> AppError {
    AppError::Construct(e)
}

fn execute(cmd: Command) -> Result<(i32, Output), AppError> {
    match cmd {
        Command::Faces(input) => {
            let g = load_one(&input)?;
            Ok((EXIT_OK, Output::Json(report::faces_json(&g))))
        }
        Command::Classify(input) => {
            let g = load_one(&input)?;
            let c = classify(&g)?;
            Ok((
                EXIT_OK,
                Output::Json(
                    json!({ "class": c, "vertices": g.vertex_count(), "edges": g.edge_count() }),
                ),
            ))
        }
        Command::VerifyVertex { input, colors } => {
            let g = load_one(&input)?;
            let c = VertexColoring::from(parse_colors(&colors)?);
            let v = check_fum_vertex(&g, &c)?;
            Ok((
                verdict_exit(&v),
                Output::Json(json!({ "valid": v.is_ok(), "violations": v.violations })),
            ))
        }
        Command::VerifyEdge {
            input,
            colors,
            free,
            boundary,
        } => {
            let g = load_one(&input)?;
            let c = parse_edge_colors(&g, &colors)?;
            let f = parse_free(&free)?;
            f.validate(&g)?;
            let mode = if boundary {
                EdgeCheckMode::boundary_capped()
            } else {
                EdgeCheckMode::default()
            };
            let v = check_fum_edge(&g, &c, &f, mode)?;
            Ok((
                verdict_exit(&v),
                Output::Json(json!({ "valid": v.is_ok(), "violations": v.violations })),
            ))
        }
        Command::Chi {
            input,
            budget,
            all_outer,
        } => {
            let g = load_one(&input)?;
            let (r, w) = chi_fum_with(&g, budget.max_k, budget.limits());
            let mut out = json!({ "chi_fum": r, "witness": w.map(|c| c.colors) });
            let mut code = chi_exit(r);
            if all_outer && g.is_connected() && g.edge_count() > 0 {
                let per_face: Vec<Value> = g
                    .faces()
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let h = g.with_outer(f.darts()[0]).expect("face dart");
                        let r = chi_fum_with(&h, budget.max_k, budget.limits()).0;
                        json!({ "face": i, "chi_fum": r })
                    })
                    .collect();
                let vals: Vec<ChiResult> = per_face
                    .iter()
                    .map(|v| serde_json::from_value(v["chi_fum"].clone()).expect("round trip"))
                    .collect();
                if vals.iter().any(|r| r.value().is_none()) {
                    code = EXIT_FAILURE;
                }
                let nums: Vec<u32> = vals.iter().filter_map(|r| r.value()).collect();
                out["all_outer"] = json!({ "min": nums.iter().min(), "max": nums.iter().max(), "per_face": per_face });
            }
            Ok((code, Output::Json(out)))
        }
        Command::ChiEdge { input, budget } => {
            let g = load_one(&input)?;
            let (r, w) = chi_fum_edge_with(&g, budget.max_k, budget.limits());
            let out =
                json!({ "chi_fum_edge": r, "witness": w.map(|c| report::edge_coloring_json(&c)) });
            Ok((chi_exit(r), Output::Json(out)))
        }
        Command::Color {
            variant,
            input,
            force_fallback,
            trace,
        } => {
            let g = load_one(&input)?;
            let class = classify(&g)?;
            let mut out = json!({ "variant": format!("{variant:?}").to_lowercase() });
            let coloring = match variant {
                ColorVariant::Subcubic | ColorVariant::Outerplane => {
                    let fits = if variant == ColorVariant::Subcubic {
                        class.is_subcubic
                    } else {
                        class.is_outerplane
                    };
                    if !fits {
                        return Err(ConstructError::NotApplicable {
                            reason: format!(
                                "graph is not {}",
                                out["variant"].as_str().unwrap_or("")
                            ),
                        }
                        .into());
                    }
                    let (c, t) = fum_color_traced(&g).map_err(construct_failure)?;
                    if trace {
                        out["trace"] = json!(t);
                    }
                    c
                }
                ColorVariant::Quadrangulation => {
                    let mode = if force_fallback {
                        QuadMode::ForceFallback
                    } else {
                        QuadMode::Labelling
                    };
                    let (c, route) = color_quadrangulation_with(&g, mode, SolveLimits::none())
                        .map_err(construct_failure)?;
                    out["route"] = json!(route);
                    c
                }
            };
            let v = check_fum_vertex(&g, &coloring)?;
            let detail = json!({ "coloring": coloring.colors, "violations": v.violations });
            if !v.is_ok() || coloring.max_color() > 4 {
                return Err(AppError::Unverified { detail });
            }
            out["coloring"] = json!(coloring.colors);
            out["max_color"] = json!(coloring.max_color());
            out["verified"] = json!(true);
            Ok((EXIT_OK, Output::Json(out)))
        }
        Command::ColorEdge { input, trace } => {
            let g = load_one(&input)?;
            let (c, t) = fum_edge_color_2connected_traced(&g).map_err(construct_failure)?;
            let v = check_fum_edge(&g, &c, &FreePairSet::new(), EdgeCheckMode::default())?;
            if !v.is_ok() || c.max_color() > 4 {
                return Err(AppError::Unverified {
                    detail: json!({ "coloring": report::edge_coloring_json(&c), "violations": v.violations }),
                });
            }
            let mut out = json!({
                "coloring": report::edge_coloring_json(&c),
                "max_color": c.max_color(),
                "verified": true,
            });
            if trace {
                out["trace"] = json!(t);
            }
            Ok((EXIT_OK, Output::Json(out)))
        }
        Command::Gen {
            family,
            param,
            depth,
            format,
            output,
        } => {
            let graphs = generate(family, param, depth)?;
            let bytes = match format {
                OutputFormat::PlanarCode => write_planar_code(&graphs)?,
                OutputFormat::Text => graphs
                    .iter()
                    .map(write_text)
                    .collect::<Vec<_>>()
                    .join("\n")
                    .into_bytes(),
            };
            if format == OutputFormat::Text && graphs.len() > 1 && output.is_none() {
                return Err(AppError::Usage(
                    "several graphs: use --format planar-code or --output".into(),
                ));
            }
            match output {
                Some(path) => {
                    if format == OutputFormat::Text && graphs.len() > 1 {
                        return Err(AppError::Usage("text format holds a single graph".into()));
                    }
                    write_file(&path, &bytes)?;
                    Ok((
                        EXIT_OK,
                        Output::Json(
                            json!({ "graphs": graphs.len(), "output": path.display().to_string() }),
                        ),
                    ))
                }
                None => Ok((EXIT_OK, Output::Raw(bytes))),
            }
        }
        Command::Scan {
            input,
            budget,
            checks,
            parallel,
            all_outer,
            timings,
        } => {
            let graphs = load_all(&input)?;
            let opts = ScanOptions {
                checks: ScanChecks {
                    chi: checks.contains(&Check::Chi),
                    chi_edge: checks.contains(&Check::ChiEdge),
                    construct: checks.contains(&Check::Construct),
                },
                max_k: budget.max_k,
                timeout: budget.duration(),
                parallel: if parallel == 0 {
                    rayon::current_num_threads()
                } else {
                    parallel
                },
                all_outer,
                timings,
            };
            let r = scan(&graphs, &opts);
            let code = if r.has_failures() {
                EXIT_TRIPWIRE
            } else if !r.aggregate.counterexample_candidates.is_empty() {
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
            Ok((
                code,
                Output::Json(serde_json::to_value(&r).expect("plain report")),
            ))
        }
        Command::ExportDot {
            input,
            colors,
            edge_colors,
            output,
        } => {
            let g = load_one(&input)?;
            let vc = colors
                .map(|s| parse_colors(&s).map(VertexColoring::from))
                .transpose()?;
            let ec = edge_colors.map(|s| parse_edge_colors(&g, &s)).transpose()?;
            let dot = to_dot(&g, vc.as_ref(), ec.as_ref());
            match output {
                Some(path) => {
                    write_file(&path, dot.as_bytes())?;
                    Ok((
                        EXIT_OK,
                        Output::Json(json!({ "output": path.display().to_string() })),
                    ))
                }
                None => Ok((EXIT_OK, Output::Raw(dot.into_bytes()))),
            }
        }
    }
}

fn render(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s.into_bytes()
}

/// Runs one invocation; returns the exit code and the bytes for standard output.
pub fn run<I, T>(args: I) -> (i32, Vec<u8>)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    (EXIT_OK, e.to_string().into_bytes())
                }
                _ => (
                    EXIT_INPUT,
                    render(&error_document("usage", &e.render().to_string())),
                ),
            };
        }
    };
    match execute(cli.command) {
        Ok((code, Output::Json(v))) => (code, render(&document(v))),
        Ok((code, Output::Raw(b))) => (code, b),
        Err(e) => {
            let mut doc = error_document(e.code(), &e.to_string());
            if let AppError::Unverified { detail } = &e {
                doc["error"]["detail"] = detail.clone();
            }
            (e.exit_code(), render(&doc))
        }
    }
}
