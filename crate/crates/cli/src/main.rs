//! `kc`: knot clusters from the command line.

mod verify;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knot_cluster::alexander::{self, alexander_matrix, specialize, AlexPoly};
use knot_cluster::kauffman::{self, Clock, LatticeConfig};
use knot_cluster::linkdiag::{two_bridge, Label};
use knot_cluster::planner::{self, Event, ReplayFile};
use knot_cluster::{LaurentPoly, LinkDiagram, Quiver, Vars};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kc", version, about = "Knot clusters, Kauffman lattices and Alexander polynomials")]
struct Cli {
    /// Pin the marker rotation that moves Kauffman states up, disabling the fallback.
    #[arg(long, global = true, value_name = "cw|ccw")]
    seed_of_truth: Option<Clock>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check diagram structure and primality.
    Validate { path: PathBuf },
    /// Alexander polynomial by one or all methods.
    Alexander {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Plan (or replay) the mutation sequence and dump the knot seed.
    KnotCluster {
        path: Option<PathBuf>,
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Run every structural and cluster check on one or more diagrams.
    Verify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Append wall-clock times to each check.
        #[arg(long)]
        timings: bool,
    },
    /// Write a quiver, Hasse diagram or link diagram.
    Export {
        path: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value_t = Fmt::Dot)]
        fmt: Fmt,
        /// Segment whose lattice to export (hasse only).
        #[arg(long)]
        segment: Option<Label>,
        /// Keep the 2-cycles of the crossing 4-cycles (quiver only).
        #[arg(long)]
        full: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the standard 2-bridge diagram for a continued fraction like `2,1,1,2`.
    GenTwoBridge {
        #[arg(value_delimiter = ',', required = true)]
        cf: Vec<u32>,
        #[arg(long, value_enum, default_value_t = DiagramFmt::Json)]
        fmt: DiagramFmt,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Cluster,
    Lattice,
    Matrix,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Quiver,
    Hasse,
    Diagram,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFmt {
    Json,
    Pd,
}

pub enum CliError {
    /// Bad input: unreadable file, parse error, bad arguments.
    Input(String),
    /// A computation could not be carried out.
    Compute(String),
    /// Some requested check failed; the report is already printed.
    Failed,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Compute(m) => f.write_str(m),
            CliError::Failed => f.write_str("checks failed"),
        }
    }
}

fn compute<E: fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

pub struct Ctx {
    pub cfg: LatticeConfig,
    pub json: bool,
}

/// `path` itself, or `path` under `$KC_FIXTURES` when that exists instead.
fn resolve(path: &Path) -> Result<PathBuf, CliError> {
    if path.exists() {
        return Ok(path.to_path_buf());
    }
    if let Some(root) = std::env::var_os("KC_FIXTURES") {
        let p = Path::new(&root).join(path);
        if p.exists() {
            return Ok(p);
        }
    }
    Err(CliError::Input(format!("{}: no such file", path.display())))
}

fn read(path: &Path) -> Result<(PathBuf, String), CliError> {
    let p = resolve(path)?;
    let text = fs::read_to_string(&p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
    Ok((p, text))
}

pub fn load(path: &Path) -> Result<LinkDiagram, CliError> {
    let (p, text) = read(path)?;
    LinkDiagram::parse_any(&text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
}

fn print_value(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn validate(ctx: &Ctx, path: &Path) -> Result<(), CliError> {
    let d = load(path)?;
    let violations = d.primality_scan();
    let census: Vec<(usize, usize)> = d.face_census().into_iter().enumerate().filter(|&(_, a)| a > 0).collect();
    let bigons = d.find_bigons().len();
    let triangles = d.face_census().get(3).copied().unwrap_or(0);
    if ctx.json {
        let witness = violations.first().map(|v| {
            json!({ "regions": [v.regions.0, v.regions.1], "segments": [v.segments.0, v.segments.1],
                    "sides": [v.sides.0, v.sides.1] })
        });
        print_value(&json!({
            "crossings": d.n(),
            "segments": d.labels().len(),
            "components": d.components().len(),
            "regions": d.regions().len(),
            "bigons": bigons,
            "triangles": triangles,
            "face_census": census.iter().map(|&(k, a)| json!([k, a])).collect::<Vec<_>>(),
            "prime": violations.is_empty(),
            "violation": witness,
        }));
    } else {
        println!("crossings: {}", d.n());
        println!("segments: {}", d.labels().len());
        println!("components: {}", d.components().len());
        println!("regions: {}", d.regions().len());
        println!("bigons: {bigons}");
        println!("triangles: {triangles}");
        let parts: Vec<String> = census.iter().map(|(k, a)| format!("{k}-gons {a}")).collect();
        println!("faces: {}", parts.join(", "));
        match violations.first() {
            None => println!("prime: pass"),
            Some(v) => println!(
                "prime: fail (regions {} and {} share segments {} and {}; crossings {:?} | {:?})",
                v.regions.0, v.regions.1, v.segments.0, v.segments.1, v.sides.0, v.sides.1
            ),
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

/// One polynomial if every segment gives the same one, else the first disagreement.
fn uniform(
    d: &LinkDiagram,
    mut at: impl FnMut(Label) -> Result<AlexPoly, CliError>,
) -> Result<Result<AlexPoly, String>, CliError> {
    let labels = d.labels();
    let first = at(labels[0])?;
    for &i in &labels[1..] {
        let p = at(i)?;
        if p != first {
            return Ok(Err(format!("segment {} gives {first}, segment {i} gives {p}", labels[0])));
        }
    }
    Ok(Ok(first))
}

fn alexander_cmd(ctx: &Ctx, path: &Path, method: Method) -> Result<(), CliError> {
    let d = load(path)?;
    let classes = d.classify_segments();
    let mut results: Vec<(&str, Result<AlexPoly, String>)> = Vec::new();
    if matches!(method, Method::Cluster | Method::All) {
        let plan = planner::plan(&d).map_err(compute)?;
        let ex = planner::execute_with(&d, &plan, &ctx.cfg).map_err(compute)?;
        results.push(("cluster", uniform(&d, |i| Ok(specialize(&ex.seed.f_polynomial(i), &classes)))?));
    }
    if matches!(method, Method::Lattice | Method::All) {
        let r = uniform(&d, |i| {
            let f = kauffman::poset(&d, i, &ctx.cfg).map_err(compute)?.f_poly();
            Ok(specialize(&f, &classes))
        })?;
        results.push(("lattice", r));
    }
    if matches!(method, Method::Matrix | Method::All) {
        results.push(("matrix", uniform(&d, |i| Ok(alexander_matrix(&d, i)))?));
    }
    let polys: Vec<&AlexPoly> = results.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    let agree = polys.len() == results.len() && polys.windows(2).all(|w| alexander::compare(w[0], w[1]));
    if ctx.json {
        let mut out = serde_json::Map::new();
        for (name, r) in &results {
            let v = match r {
                Ok(p) => p.to_json(),
                Err(why) => json!({ "error": why }),
            };
            out.insert(name.to_string(), v);
        }
        out.insert("agree".into(), json!(agree));
        print_value(&Value::Object(out));
    } else {
        for (name, r) in &results {
            match r {
                Ok(p) => println!("{name}: {p}"),
                Err(why) => println!("{name}: depends on the segment ({why})"),
            }
        }
        println!("agree: {agree}");
    }
    if agree {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn event_text(e: &Event) -> String {
    match e {
        Event::Rd3 { a, b, c } => format!("rd3({a}; {b}, {c})"),
        Event::Bigon { j, k } => format!("bigon({j}, {k})"),
        Event::Hopf { segments: [a, b, c, d] } => format!("hopf({a}, {b}, {c}, {d})"),
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn knot_cluster_cmd(ctx: &Ctx, path: Option<&Path>, replay: Option<&Path>) -> Result<(), CliError> {
    let replay_doc = match replay {
        Some(r) => {
            let (p, text) = read(r)?;
            let doc = ReplayFile::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Some((p, doc))
        }
        None => None,
    };
    let d = match (path, &replay_doc) {
        (Some(p), _) => load(p)?,
        (None, Some((rp, doc))) => {
            let beside = rp.parent().unwrap_or(Path::new(".")).join(&doc.diagram);
            load(if beside.exists() { &beside } else { Path::new(&doc.diagram) })?
        }
        (None, None) => return Err(CliError::Input("give a diagram or --replay".into())),
    };
    let mut events = None;
    let mut all_green = None;
    let mut mismatches = Vec::new();
    let ex = match &replay_doc {
        Some((_, doc)) => {
            let rep = planner::replay(&d, &doc.sequence, doc.expected.as_ref()).map_err(compute)?;
            all_green = Some(rep.all_green);
            mismatches = rep.mismatches.clone();
            rep.execution
        }
        None => {
            let plan = planner::plan(&d).map_err(compute)?;
            let ex = planner::execute_with(&d, &plan, &ctx.cfg).map_err(compute)?;
            events = Some(plan.events);
            ex
        }
    };
    let word: Vec<Label> = ex.seed.history().to_vec();
    let positions: Vec<Value> = d
        .labels()
        .into_iter()
        .map(|i| {
            json!({
                "position": i,
                "t": ex.sigma.apply(i),
                "f": ex.seed.f_polynomial(i).to_string(),
                "g": ex.seed.g_vector(i),
                "c": ex.seed.c_vector(i),
                "den": ex.seed.den_vector(i),
            })
        })
        .collect();
    let ok = mismatches.is_empty() && ex.f_mismatches.is_empty() && ex.quiver_iso;
    if ctx.json {
        print_value(&json!({
            "events": events,
            "word": word,
            "sigma": ex.sigma.cycles(),
            "quiver_iso": ex.quiver_iso,
            "all_green": all_green,
            "lattice_mismatches": ex.f_mismatches,
            "expectation_mismatches": mismatches,
            "positions": positions,
        }));
    } else {
        if let Some(evs) = &events {
            println!("events: {}", evs.iter().map(event_text).collect::<Vec<_>>().join(" "));
        }
        println!("word: {}", join(&word, " "));
        println!("sigma: {}", ex.sigma);
        println!("sigma(Q) = opposite(Q_t): {}", ex.quiver_iso);
        if let Some(g) = all_green {
            println!("all green: {g}");
        }
        for p in &positions {
            println!("x{} = X_T({})", p["position"], p["t"]);
            println!("  F: {}", p["f"].as_str().unwrap());
            for key in ["g", "c", "den"] {
                let v: Vec<String> = p[key].as_array().unwrap().iter().map(Value::to_string).collect();
                println!("  {key}: [{}]", v.join(", "));
            }
        }
        if !ex.f_mismatches.is_empty() {
            println!("lattice mismatches at positions {}", join(&ex.f_mismatches, ", "));
        }
        for m in &mismatches {
            println!("expectation mismatch: {m}");
        }
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn hasse_json(d: &LinkDiagram, p: &kauffman::StatePoset) -> Value {
    let vars = Vars::Y(d.ambient() as usize);
    let states: Vec<Value> = p
        .states
        .iter()
        .zip(&p.exps)
        .map(|(s, e)| {
            let m = LaurentPoly::monomial(vars, e.iter().map(|&v| v as i32).collect(), 1);
            json!({ "markers": s.to_json(d), "monomial": m.to_string() })
        })
        .collect();
    let edges: Vec<Value> = p.edges.iter().map(|&(a, b, l)| json!([a, b, l])).collect();
    json!({ "segment": p.segment, "states": states, "edges": edges, "min": p.min, "max": p.max })
}

fn full_quiver_dot(d: &LinkDiagram) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in d.labels() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in Quiver::full_arrows(d) {
        out.push_str(&format!("  {u} -> {v};\n"));
    }
    out.push_str("}\n");
    out
}

struct ExportArgs<'a> {
    what: What,
    fmt: Fmt,
    segment: Option<Label>,
    full: bool,
    output: Option<&'a Path>,
}

fn export_cmd(ctx: &Ctx, path: &Path, a: ExportArgs) -> Result<(), CliError> {
    let d = load(path)?;
    let text = match (a.what, a.fmt) {
        (What::Quiver, Fmt::Dot) if a.full => full_quiver_dot(&d),
        (What::Quiver, Fmt::Dot) => Quiver::of_diagram(&d).to_dot(),
        (What::Quiver, Fmt::Json) if a.full => {
            let arrows: Vec<Value> = Quiver::full_arrows(&d).into_iter().map(|(u, v)| json!([u, v])).collect();
            serde_json::to_string_pretty(&json!({ "vertices": d.labels(), "arrows": arrows })).unwrap() + "\n"
        }
        (What::Quiver, Fmt::Json) => serde_json::to_string_pretty(&Quiver::of_diagram(&d).to_json()).unwrap() + "\n",
        (What::Hasse, fmt) => {
            let i = a.segment.ok_or_else(|| CliError::Input("--what hasse needs --segment".into()))?;
            if !d.has_label(i) {
                return Err(CliError::Input(format!("no segment {i}")));
            }
            let p = kauffman::poset(&d, i, &ctx.cfg).map_err(compute)?;
            match fmt {
                Fmt::Dot => p.to_dot(),
                Fmt::Json => serde_json::to_string_pretty(&hasse_json(&d, &p)).unwrap() + "\n",
            }
        }
        (What::Diagram, Fmt::Dot) => d.to_dot(),
        (What::Diagram, Fmt::Json) => d.to_json(),
    };
    match a.output {
        Some(o) => fs::write(o, text).map_err(|e| CliError::Input(format!("{}: {e}", o.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen_two_bridge(cf: &[u32], fmt: DiagramFmt) -> Result<(), CliError> {
    let d = two_bridge(cf).map_err(|e| CliError::Input(e.to_string()))?;
    match fmt {
        DiagramFmt::Json => print!("{}", d.to_json()),
        DiagramFmt::Pd => println!("{}", d.to_pd()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match cli.seed_of_truth {
        Some(clock) => LatticeConfig { clock, fallback: false },
        None => LatticeConfig::default(),
    };
    let ctx = Ctx { cfg, json: cli.json };
    match cli.cmd {
        Cmd::Validate { path } => validate(&ctx, &path),
        Cmd::Alexander { path, method } => alexander_cmd(&ctx, &path, method),
        Cmd::KnotCluster { path, replay } => knot_cluster_cmd(&ctx, path.as_deref(), replay.as_deref()),
        Cmd::Verify { paths, timings } => verify::run(&ctx, &paths, timings),
        Cmd::Export { path, what, fmt, segment, full, output } => {
            export_cmd(&ctx, &path, ExportArgs { what, fmt, segment, full, output: output.as_deref() })
        }
        Cmd::GenTwoBridge { cf, fmt } => gen_two_bridge(&cf, fmt),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(e @ CliError::Compute(_)) => {
            eprintln!("kc: {e}");
            ExitCode::from(1)
        }
        Err(e @ CliError::Input(_)) => {
            eprintln!("kc: {e}");
            ExitCode::from(2)
        }
    }
}
