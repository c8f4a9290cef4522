//! `karpelevic`: classify, construct, verify and trace boundary arcs of Θₙ.
//!
//! Exit codes: 0 on success, 1 on a domain error (a failed verification, an
//! infeasible construction), 2 on a usage error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use karpelevic_core::algebra::{format_rat, parse_rat, RatScalar, StochMatrix};
use karpelevic_core::boundary::{contains, region_boundary, region_json, region_svg, trace_csv, ComplexPoint};
use karpelevic_core::digraph::{find_perm_similarity, SimilarityLimits, WeightedDigraph};
use karpelevic_core::farey::{arc_with_denominators, classified_arcs, ArcParams, ArcType};
use karpelevic_core::realize::{
    build_sparsest, conjecture_probe_with_budget, enumerate_sparsest, type1, type2_augment,
    verify_realization, AugmentedTypeII, Composition, RealizeError, DEFAULT_PROBE_BUDGET,
};
use karpelevic_core::DEFAULT_MAX_BRUTE;

#[derive(Parser)]
#[command(name = "karpelevic", version, about = "Boundary arcs of the Karpelevič region")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every Farey arc of order n.
    Arcs {
        n: u64,
        #[arg(long)]
        json: bool,
        /// Include the conjugate arcs of the lower half-plane.
        #[arg(long)]
        all: bool,
    },
    /// Trace the boundary of Θₙ.
    Region(RegionArgs),
    /// Construct a realizing matrix.
    Realize(RealizeArgs),
    /// List the sparsest realizations of an arc up to rotation.
    Enumerate {
        #[command(flatten)]
        arc: ArcArgs,
        #[arg(long)]
        json: bool,
    },
    /// Check a matrix against the reduced Ito polynomial of an arc.
    Verify(VerifyArgs),
    /// Add connectors to a sparsest Type II realization.
    Augment(AugmentArgs),
    /// Search a Type III realization for a block-family relabeling.
    Probe(ProbeArgs),
}

/// An arc, either as JSON or by type and parameters.
#[derive(Args, Clone, Default)]
struct ArcArgs {
    /// Arc parameters as JSON, or a path to a JSON file.
    #[arg(long)]
    arc: Option<String>,
    #[arg(long = "type", value_parser = parse_type)]
    arc_type: Option<ArcType>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    z: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
}

#[derive(Args)]
struct RegionArgs {
    n: u64,
    #[arg(long, default_value_t = 512)]
    samples: usize,
    /// Write an SVG figure of the boundary.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RegionEmit::Summary)]
    emit: RegionEmit,
    /// Report whether the point `re,im` lies in Θₙ instead of tracing.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    contains: Option<ComplexPoint>,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionEmit {
    Summary,
    Json,
    Csv,
    None,
}

#[derive(Args)]
struct RealizeArgs {
    #[arg(value_parser = parse_type)]
    arc_type: ArcType,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    z: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long, value_parser = parse_rational)]
    alpha: Option<RatScalar>,
    #[arg(long, value_delimiter = ',')]
    composition: Option<Vec<usize>>,
    /// Type I row weights, `n + 1 - q` of them.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    alphas: Option<Vec<RatScalar>>,
    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Dot,
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    /// Matrix JSON file, `-` for stdin.
    #[arg(long, default_value = "-")]
    matrix: String,
    #[command(flatten)]
    arc: ArcArgs,
    #[arg(long, value_parser = parse_rational)]
    alpha: RatScalar,
    /// Also test permutation similarity to another matrix.
    #[arg(long)]
    similar_to: Option<PathBuf>,
}

#[derive(Args)]
struct AugmentArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    z: u64,
    #[arg(long, value_parser = parse_rational)]
    alpha: RatScalar,
    #[arg(long, value_delimiter = ',', required = true)]
    composition: Vec<usize>,
    /// Connector to add, as `row` or `row,head` (1-based); repeatable.
    #[arg(long = "connector", value_parser = parse_connector)]
    connectors: Vec<(usize, Option<usize>)>,
    /// Free parameter value, `alphaK=p/q`; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, RatScalar)>,
    #[arg(long, value_enum)]
    emit: Option<Emit>,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long, default_value = "-")]
    matrix: String,
    #[command(flatten)]
    arc: ArcArgs,
    #[arg(long, value_parser = parse_rational)]
    alpha: RatScalar,
    #[arg(long, default_value_t = DEFAULT_PROBE_BUDGET)]
    budget: usize,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn parse_type(s: &str) -> Result<ArcType, String> {
    ArcType::parse(s).ok_or_else(|| format!("unknown arc type {s:?}; expected 0, I, II or III"))
}

fn parse_rational(s: &str) -> Result<RatScalar, String> {
    parse_rat(s).map_err(|_| format!("{s:?} is not an exact rational; write it as p/q"))
}

fn parse_point(s: &str) -> Result<ComplexPoint, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let f = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("bad coordinate {v:?}"));
    Ok(ComplexPoint::new(f(re)?, f(im)?))
}

fn parse_connector(s: &str) -> Result<(usize, Option<usize>), String> {
    let one_based = |v: &str| match v.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k - 1),
        _ => Err(format!("bad row {v:?}; rows are 1-based")),
    };
    match s.split_once(',') {
        Some((a, b)) => Ok((one_based(a)?, Some(one_based(b)?))),
        None => Ok((one_based(s)?, None)),
    }
}

fn parse_param(s: &str) -> Result<(String, RatScalar), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=p/q, got {s:?}"))?;
    Ok((k.trim().to_owned(), parse_rational(v)?))
}

fn max_brute() -> Result<usize, Failure> {
    match std::env::var("KARPELEVIC_MAX_BRUTE") {
        Ok(v) => v
            .trim()
            .parse()
            .or_else(|_| usage(format!("KARPELEVIC_MAX_BRUTE={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_MAX_BRUTE),
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Domain(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn read_matrix(path: &str) -> Result<StochMatrix, Failure> {
    Ok(StochMatrix::from_json_str(&read_source(path)?)?)
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Domain(format!("writing {}: {e}", path.display())))
}

fn need(v: Option<u64>, flag: &str, ty: ArcType) -> Result<u64, Failure> {
    v.map_or_else(|| usage(format!("{ty} arcs need --{flag}")), Ok)
}

impl ArcArgs {
    fn resolve(&self) -> Result<ArcParams, Failure> {
        if let Some(text) = &self.arc {
            if self.arc_type.is_some() {
                return usage("give either --arc or --type, not both");
            }
            let text = if text.trim_start().starts_with('{') {
                text.clone()
            } else {
                read_source(text)?
            };
            return Ok(ArcParams::from_json_str(&text)?);
        }
        let Some(ty) = self.arc_type else {
            return usage("an arc is required: pass --arc JSON or --type with its parameters");
        };
        let (n, q, s) = match ty {
            ArcType::Type0 => {
                let n = need(self.n, "n", ty)?;
                (n, 1, n)
            }
            ArcType::TypeI => {
                let n = need(self.n, "n", ty)?;
                (n, need(self.q, "q", ty)?, n)
            }
            ArcType::TypeII => {
                let (q, d, z) = (need(self.q, "q", ty)?, need(self.d, "d", ty)?, need(self.z, "z", ty)?);
                if z >= q * d {
                    return usage(format!("z={z} must be below qd={}", q * d));
                }
                (q * d, q, q * d - z)
            }
            ArcType::TypeIII => {
                let (q, d, y) = (need(self.q, "q", ty)?, need(self.d, "d", ty)?, need(self.y, "y", ty)?);
                (q * d + y, q, q * d + y)
            }
        };
        if let Some(given) = self.n {
            if given != n {
                return usage(format!("--n {given} disagrees with the order {n} implied by the parameters"));
            }
        }
        let arc = arc_with_denominators(n, q, s)?;
        if arc.arc_type != ty {
            return Err(Failure::Domain(format!("parameters describe {arc}, not a {ty} arc")));
        }
        Ok(arc)
    }
}

fn composition(arc: &ArcParams, parts: Option<&Vec<usize>>) -> Result<Composition, Failure> {
    match (arc.arc_type, parts) {
        (ArcType::Type0 | ArcType::TypeI, None) => Ok(Composition::new(Vec::new(), arc.q as usize)?),
        (ArcType::Type0 | ArcType::TypeI, Some(_)) => usage(format!("{} arcs take no --composition", arc.arc_type)),
        (_, None) => usage(format!("{} arcs need --composition", arc.arc_type)),
        (_, Some(p)) => Ok(Composition::new(p.clone(), arc.q as usize)?),
    }
}

fn emit_matrix(m: &StochMatrix, emit: Emit, out: &mut String) {
    if emit != Emit::Dot {
        out.push_str(&m.to_json_string());
        out.push('\n');
    }
    if emit != Emit::Json {
        out.push_str(&WeightedDigraph::from_stochastic(m).to_dot("realization"));
    }
}

fn hi_label(pair: &karpelevic_core::FareyPair) -> String {
    let (p, q) = pair.hi_angle_fraction();
    format!("{p}/{q}")
}

fn cmd_arcs(n: u64, json: bool, all: bool, out: &mut String) -> Result<(), Failure> {
    if n < 2 {
        return usage(format!("arcs needs n >= 2, got {n}"));
    }
    let mut arcs = classified_arcs(n)?;
    if !all {
        arcs.retain(|(pair, _)| pair.in_upper_half());
    }
    if json {
        let rows: Vec<serde_json::Value> = arcs
            .iter()
            .map(|(pair, arc)| {
                serde_json::json!({
                    "lo": pair.lo.to_string(),
                    "hi": hi_label(pair),
                    "arc": arc,
                    "degree": arc.reduced_degree(),
                })
            })
            .collect();
        out.push_str(&serde_json::to_string_pretty(&rows).expect("arc rows serialise"));
        out.push('\n');
        return Ok(());
    }
    for (pair, arc) in &arcs {
        let extra = match (arc.z, arc.y) {
            (Some(z), _) => format!(" z={z}"),
            (_, Some(y)) => format!(" y={y}"),
            _ => String::new(),
        };
        writeln!(
            out,
            "{}–{} {}{extra} q={} s={} d={} degree={}",
            pair.lo,
            hi_label(pair),
            arc.arc_type,
            arc.q,
            arc.s,
            arc.d,
            arc.reduced_degree()
        )
        .unwrap();
    }
    Ok(())
}

fn cmd_region(a: &RegionArgs, out: &mut String) -> Result<(), Failure> {
    if a.n < 2 {
        return usage(format!("region needs n >= 2, got {}", a.n));
    }
    if let Some(z) = a.contains {
        if a.tol.is_nan() || a.tol < 0.0 {
            return usage("--tol must be non-negative");
        }
        let inside = contains(a.n, z, a.tol)?;
        writeln!(out, "{} {z}", if inside { "inside" } else { "outside" }).unwrap();
        return Ok(());
    }
    let traces = region_boundary(a.n, a.samples)?;
    if let Some(path) = &a.svg {
        write_file(path, &region_svg(&traces))?;
    }
    match a.emit {
        RegionEmit::Json => {
            out.push_str(&region_json(a.n, &traces));
            out.push('\n');
        }
        RegionEmit::Csv => {
            out.push_str("arc,alpha,re,im\n");
            for (i, t) in traces.iter().enumerate() {
                for line in trace_csv(t).lines().skip(1) {
                    writeln!(out, "{i},{line}").unwrap();
                }
            }
        }
        RegionEmit::Summary => {
            for t in &traces {
                writeln!(
                    out,
                    "{}: {} -> {} residual {:.1e}",
                    t.arc,
                    t.start(),
                    t.end(),
                    t.residual_bound
                )
                .unwrap();
            }
        }
        RegionEmit::None => {}
    }
    Ok(())
}

fn cmd_realize(a: &RealizeArgs, out: &mut String) -> Result<(), Failure> {
    let arc = ArcArgs {
        arc: None,
        arc_type: Some(a.arc_type),
        n: a.n,
        q: a.q,
        d: a.d,
        z: a.z,
        y: a.y,
    }
    .resolve()?;
    let m = match (&a.alphas, &a.alpha) {
        (Some(_), Some(_)) => return usage("give --alpha or --alphas, not both"),
        (Some(alphas), None) => {
            if arc.arc_type != ArcType::TypeI {
                return usage("--alphas applies to Type I arcs only");
            }
            type1(arc.n as usize, arc.q as usize, alphas)?
        }
        (None, Some(alpha)) => build_sparsest(&arc, alpha, &composition(&arc, a.composition.as_ref())?)?,
        (None, None) => return usage("realize needs --alpha"),
    };
    emit_matrix(&m, a.emit, out);
    Ok(())
}

fn cmd_enumerate(arc: &ArcArgs, json: bool, out: &mut String) -> Result<(), Failure> {
    let arc = arc.resolve()?;
    let classes = enumerate_sparsest(&arc)?;
    if json {
        let rows: Vec<&Vec<usize>> = classes.iter().map(|c| &c.parts).collect();
        out.push_str(&serde_json::to_string(&rows).expect("compositions serialise"));
        out.push('\n');
        return Ok(());
    }
    for c in &classes {
        let parts: Vec<String> = c.parts.iter().map(usize::to_string).collect();
        writeln!(out, "({})", parts.join(",")).unwrap();
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut String) -> Result<bool, Failure> {
    let limits = SimilarityLimits {
        max_brute: max_brute()?,
        ..SimilarityLimits::default()
    };
    let arc = a.arc.resolve()?;
    let m = read_matrix(&a.matrix)?;
    let report = verify_realization(&m, &arc, &a.alpha)?;
    writeln!(out, "{report}").unwrap();
    let mut ok = report.holds();
    if let Some(path) = &a.similar_to {
        let other = read_matrix(&path.to_string_lossy())?;
        match find_perm_similarity(&m, &other, limits)? {
            Some(perm) => {
                let p: Vec<String> = perm.iter().map(|v| (v + 1).to_string()).collect();
                writeln!(out, "similar to {} via ({})", path.display(), p.join(" ")).unwrap();
            }
            None => {
                writeln!(out, "not permutation similar to {}", path.display()).unwrap();
                ok = false;
            }
        }
    }
    Ok(ok)
}

/// Connector errors carry 0-based rows; the command line is 1-based.
fn one_based_connector(e: RealizeError) -> Failure {
    let msg = match e {
        RealizeError::NotAConnector(t, h) => RealizeError::NotAConnector(t + 1, h + 1).to_string(),
        RealizeError::DuplicateConnector(t, h) => RealizeError::DuplicateConnector(t + 1, h + 1).to_string(),
        RealizeError::EdgeRejected {
            tail,
            head,
            lengths,
            allowed,
        } => RealizeError::EdgeRejected {
            tail: tail + 1,
            head: head + 1,
            lengths,
            allowed,
        }
        .to_string(),
        other => other.to_string(),
    };
    Failure::Domain(msg)
}

fn cmd_augment(a: &AugmentArgs, out: &mut String) -> Result<(), Failure> {
    let (q, d, z) = (a.q as usize, a.d as usize, a.z as usize);
    let x = Composition::new(a.composition.clone(), q)?;
    let mut g = AugmentedTypeII::from_sparsest(q, d, z, &a.alpha, &x)?;
    for &(row, head) in &a.connectors {
        let head = head.unwrap_or_else(|| g.connector_target(row));
        g = type2_augment(&g, (row, head)).map_err(one_based_connector)?;
    }
    let params: BTreeMap<String, RatScalar> = a.params.iter().cloned().collect();
    let free = g.free_params();
    match a.emit {
        Some(emit) => {
            let m = g.instantiate(&params)?;
            emit_matrix(&m, emit, out);
        }
        None => {
            let edges: Vec<String> = g
                .connectors()
                .iter()
                .map(|(t, h)| format!("{}->{}", t + 1, h + 1))
                .collect();
            writeln!(out, "order {}", g.order()).unwrap();
            writeln!(out, "connectors {}", edges.join(" ")).unwrap();
            writeln!(out, "free parameters {}", if free.is_empty() { "none".into() } else { free.join(" ") })
                .unwrap();
            if let Ok(m) = g.instantiate(&params) {
                writeln!(out, "alpha {}", format_rat(g.alpha())).unwrap();
                out.push_str(&m.to_json_string());
                out.push('\n');
            }
        }
    }
    Ok(())
}

fn cmd_probe(a: &ProbeArgs, out: &mut String) -> Result<(), Failure> {
    let arc = a.arc.resolve()?;
    let m = read_matrix(&a.matrix)?;
    let outcome = conjecture_probe_with_budget(&m, &arc, &a.alpha, a.budget)?;
    writeln!(out, "{outcome}").unwrap();
    Ok(())
}

fn run(cli: &Cli, out: &mut String) -> Result<bool, Failure> {
    match &cli.command {
        Command::Arcs { n, json, all } => cmd_arcs(*n, *json, *all, out)?,
        Command::Region(a) => cmd_region(a, out)?,
        Command::Realize(a) => cmd_realize(a, out)?,
        Command::Enumerate { arc, json } => cmd_enumerate(arc, *json, out)?,
        Command::Verify(a) => return cmd_verify(a, out),
        Command::Augment(a) => cmd_augment(a, out)?,
        Command::Probe(a) => cmd_probe(a, out)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
