use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use dhl_core::arcs::{arc_distance, canonicalize_arc, enumerate_arcs, Arc, RawArc};
use dhl_core::doubling::iota;
use dhl_core::kernel::RibbonGraph;
use dhl_core::projection::{boundary_profile, phi};
use dhl_core::spheres::{enumerate_spheres, kappa, sphere_distance, SpherePartition};
use dhl_core::surgery::surgery_path;
use dhl_lab::config::ribbon_from_name;
use dhl_lab::export::{export_graph, Format, GraphKind};
use dhl_lab::{verify, Campaign, CampaignConfig, LabError};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dhl", version, about = "Arcs on surfaces and spheres in doubled handlebodies")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Rank of the free group.
    #[arg(long, global = true, default_value_t = 2)]
    genus: usize,
    /// Ribbon preset (torus, pants, rank3) or a cyclic order such as xyXY.
    #[arg(long, global = true, default_value = "torus")]
    ribbon: String,
    /// Enumeration radius or complexity bound.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Search cap for distances.
    #[arg(long, global = true, default_value_t = 32)]
    cap: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format: json or text; dot, json or csv for export.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Surface data.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Arc operations. Arcs are written `[i,s]-word-[j,t]`.
    Arc {
        #[command(subcommand)]
        cmd: ArcCmd,
    },
    /// Sphere operations. Spheres are written as a side, `{x,yX}`.
    Sphere {
        #[command(subcommand)]
        cmd: SphereCmd,
    },
    /// The doubled sphere of an arc.
    Iota { arc: String },
    /// The arcs a sphere projects to, with its boundary profile.
    Project { sphere: String },
    /// Surgery paths.
    Surgery {
        #[command(subcommand)]
        cmd: SurgeryCmd,
    },
    /// Run a verification campaign.
    Verify(VerifyArgs),
    /// Export an enumerated ball of the arc or sphere graph.
    Export {
        /// arc or sphere
        kind: String,
        /// Cylinders per side for sphere balls.
        #[arg(long, default_value_t = 2)]
        cylinders: usize,
    },
}

#[derive(Subcommand)]
enum SurfaceCmd {
    Info,
}

#[derive(Subcommand)]
enum ArcCmd {
    Canon { arc: String },
    Dist { a: String, b: String },
    Enum,
}

#[derive(Subcommand)]
enum SphereCmd {
    Canon { side: String },
    Dist { p: String, q: String },
    Enum {
        #[arg(long, default_value_t = 2)]
        cylinders: usize,
    },
    Kappa { p: String, q: String },
}

#[derive(Subcommand)]
enum SurgeryCmd {
    Path {
        #[arg(long = "from")]
        p: String,
        #[arg(long = "to")]
        q: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// B5, B3, B7, A1, C3, C4, A2, coherence, farey or invariance.
    campaign: String,
    #[arg(long)]
    cylinders: Option<usize>,
    #[arg(long)]
    arc_complexity: Option<usize>,
    #[arg(long)]
    arc_bound: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    kappa_max: Option<usize>,
    #[arg(long)]
    farey_box: Option<i64>,
    /// File holding frozen A2 thresholds.
    #[arg(long)]
    threshold: Option<PathBuf>,
    /// Append-only JSONL result store.
    #[arg(long)]
    store: Option<PathBuf>,
}

enum Outcome {
    Done(Value),
    Report(Value, bool),
}

fn parse_arc(rg: &RibbonGraph, s: &str) -> Result<Arc, LabError> {
    Ok(canonicalize_arc(rg, &RawArc::parse(s, rg.rank())?)?)
}

fn parse_sphere(rg: &RibbonGraph, s: &str) -> Result<SpherePartition, LabError> {
    Ok(SpherePartition::parse(rg.rank(), s)?)
}

fn run(cli: &Cli) -> Result<Outcome, LabError> {
    let g = &cli.global;
    if let Command::Verify(v) = &cli.command {
        let campaign: Campaign = v.campaign.parse()?;
        let mut c = CampaignConfig::new(campaign).with_ribbon(&g.ribbon);
        c.genus = g.genus;
        c.cap = g.cap;
        c.seed = g.seed;
        if let Some(r) = g.radius {
            c.radius = r;
        }
        macro_rules! set {
            ($($f:ident <- $v:expr),*) => {$(if let Some(x) = $v { c.$f = x; })*};
        }
        set!(max_cylinders <- v.cylinders, arc_complexity <- v.arc_complexity,
             arc_bound <- v.arc_bound, samples <- v.samples, kappa_max <- v.kappa_max,
             farey_box <- v.farey_box);
        c.threshold_path = v.threshold.clone();
        c.store_path = v.store.clone();
        let report = verify(&c)?;
        let pass = report.pass;
        return Ok(Outcome::Report(serde_json::to_value(report)?, pass));
    }
    let rg = ribbon_from_name(&g.ribbon, g.genus)?;
    if rg.rank() != g.genus {
        return Err(LabError::Config(format!(
            "ribbon {} has rank {}, not {}",
            g.ribbon,
            rg.rank(),
            g.genus
        )));
    }
    let rank = rg.rank();
    let v = match &cli.command {
        Command::Surface { cmd: SurfaceCmd::Info } => json!({
            "rank": rank,
            "order": rg.order().iter().map(|l| l.to_char().to_string()).collect::<String>(),
            "genus": rg.genus(),
            "boundary": rg.boundary_words().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        }),
        Command::Arc { cmd } => match cmd {
            ArcCmd::Canon { arc } => {
                let a = parse_arc(&rg, arc)?;
                json!({"arc": a.to_string(), "essential": a.is_essential(&rg), "complexity": a.complexity()})
            }
            ArcCmd::Dist { a, b } => {
                let (a, b) = (parse_arc(&rg, a)?, parse_arc(&rg, b)?);
                json!({"a": a.to_string(), "b": b.to_string(), "distance": arc_distance(&rg, &a, &b, g.cap as i64)?})
            }
            ArcCmd::Enum => {
                let arcs = enumerate_arcs(&rg, g.radius.unwrap_or(3));
                json!(arcs.iter().map(|a| a.to_string()).collect::<Vec<_>>())
            }
        },
        Command::Sphere { cmd } => match cmd {
            SphereCmd::Canon { side } => json!({"sphere": parse_sphere(&rg, side)?.to_string()}),
            SphereCmd::Dist { p, q } => {
                let (p, q) = (parse_sphere(&rg, p)?, parse_sphere(&rg, q)?);
                json!({"p": p.to_string(), "q": q.to_string(), "distance": sphere_distance(rank, &p, &q, g.cap as i64)?})
            }
            SphereCmd::Enum { cylinders } => {
                let s = enumerate_spheres(rank, g.radius.unwrap_or(2), *cylinders);
                json!(s.iter().map(|s| s.to_string()).collect::<Vec<_>>())
            }
            SphereCmd::Kappa { p, q } => {
                let (p, q) = (parse_sphere(&rg, p)?, parse_sphere(&rg, q)?);
                json!({"p": p.to_string(), "q": q.to_string(), "kappa": kappa(rank, &p, &q)})
            }
        },
        Command::Iota { arc } => {
            let a = parse_arc(&rg, arc)?;
            json!({"arc": a.to_string(), "sphere": iota(&rg, &a)?.to_string()})
        }
        Command::Project { sphere } => {
            let p = parse_sphere(&rg, sphere)?;
            json!({
                "sphere": p.to_string(),
                "arcs": phi(&rg, &p)?.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "profile": boundary_profile(&rg, &p),
            })
        }
        Command::Surgery { cmd: SurgeryCmd::Path { p, q } } => {
            let (p, q) = (parse_sphere(&rg, p)?, parse_sphere(&rg, q)?);
            let path = surgery_path(rank, &p, &q)?;
            json!({
                "kappa": kappa(rank, &p, &q),
                "spheres": path.spheres().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            })
        }
        Command::Export { kind, cylinders } => {
            let kind: GraphKind = kind.parse()?;
            let format: Format = g.format.as_deref().unwrap_or("json").parse()?;
            let text = export_graph(&rg, kind, g.radius.unwrap_or(1), *cylinders, format)?;
            Value::String(text)
        }
        Command::Verify(_) => unreachable!("handled above"),
    };
    Ok(Outcome::Done(v))
}

fn render(v: &Value, format: Option<&str>) -> String {
    match (v, format) {
        (Value::String(s), _) => s.clone(),
        (_, Some("text")) => text(v),
        _ => serde_json::to_string_pretty(v).expect("json value serializes") + "\n",
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::Array(xs) => xs.iter().map(|x| text(x).trim_end().to_string() + "\n").collect(),
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| format!("{k}: {}\n", serde_json::to_string(x).expect("serializes")))
            .collect(),
        Value::String(s) => format!("{s}\n"),
        other => format!("{other}\n"),
    }
}

fn emit(cli: &Cli, v: &Value) -> anyhow::Result<()> {
    let s = render(v, cli.global.format.as_deref());
    match &cli.global.out {
        Some(p) => std::fs::write(p, s).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{s}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (value, pass) = match outcome {
        Outcome::Done(v) => (v, true),
        Outcome::Report(v, pass) => (v, pass),
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
