//! Command-line front end for `kss-core`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use kss_core::chambers::{chamber_complex, crossing_report};
use kss_core::domains::{Model, Source};
use kss_core::wire::{wire_vec, ChamberComplexJson, CrossingReportJson, DeltaJson, KssDomainJson, PolytopeJson, WireRat};
use kss_core::{Error, Polytope};
use serde::Serialize;
use serde_json::{json, Value};

pub mod io;
pub mod oracle;
pub mod svg;

#[derive(Parser, Debug)]
#[command(name = "kss", version, about = "Exact K-semistable domains of log Fano pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a model and report its certificates.
    Validate { model: PathBuf },
    /// Per-valuation table of A, S, T and orders.
    Invariants { model: PathBuf },
    /// Delta invariant and status at a coefficient vector.
    Delta {
        model: PathBuf,
        /// Comma-separated rationals, e.g. 1/4,1/4.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// K-semistable domain with its facet provenance.
    Domain {
        model: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Fix all but two coordinates, e.g. 3=1/5 (1-based).
        #[arg(long)]
        slice: Option<String>,
    },
    /// Log-canonical polytope.
    Lc { model: PathBuf },
    /// Minimal total coefficient over the domain and the gap to one.
    Mu { model: PathBuf },
    /// Basis-type approximation S_m along a ray.
    Sm {
        model: PathBuf,
        /// Ray index, 0-based.
        #[arg(long)]
        ray: usize,
        #[arg(long)]
        m: u32,
    },
    /// Chamber decomposition and wall graph for a family.
    Chambers {
        family: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Walls crossed by a segment and the statuses along it.
    Crossing {
        family: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Grid comparison of pointwise delta with domain membership.
    Oracle {
        model: PathBuf,
        #[arg(long)]
        grid: u32,
    },
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result documents serialize")
}

fn rat_str(r: &kss_core::Rat) -> Value {
    to_value(&WireRat(r.clone()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

/// Runs one command and returns its JSON document.
pub fn run(command: &Command) -> Result<Value, Error> {
    match command {
        Command::Validate { model } => validate(&io::load_model(model)?),
        Command::Invariants { model } => invariants(&io::load_model(model)?),
        Command::Delta { model, at } => {
            let m = io::load_model(model)?;
            let x = io::parse_point(at)?;
            let report = m.delta_at(&x)?;
            let mut doc = to_value(&DeltaJson::of(&report));
            doc["model"] = json!(m.name());
            Ok(doc)
        }
        Command::Domain { model, svg, slice } => domain(&io::load_model(model)?, svg.as_deref(), slice.as_deref()),
        Command::Lc { model } => {
            let m = io::load_model(model)?;
            let mut doc = to_value(&PolytopeJson::of(&m.lc_polytope()?));
            doc["model"] = json!(m.name());
            Ok(doc)
        }
        Command::Mu { model } => {
            let m = io::load_model(model)?;
            let r = m.kss_domain()?;
            Ok(json!({
                "model": m.name(),
                "mu": r.mu.as_ref().map(rat_str),
                "gap": r.gap.as_ref().map(rat_str),
                "in_E": r.in_e,
                "cy_face_only": r.cy_face_only,
            }))
        }
        Command::Sm { model, ray, m } => sm(&io::load_model(model)?, *ray, *m),
        Command::Chambers { family, svg } => {
            let models = io::load_family(family)?;
            let complex = chamber_complex(&models)?;
            let doc = to_value(&ChamberComplexJson::of(&complex));
            if let Some(path) = svg {
                write_file(path, &svg::render_chambers(&doc)?)?;
            }
            Ok(doc)
        }
        Command::Crossing { family, model, from, to } => {
            let models = io::load_family(family)?;
            let chosen = models
                .iter()
                .find(|m| m.name() == model)
                .ok_or_else(|| Error::InvalidInput(format!("family has no model named `{model}`")))?;
            let complex = chamber_complex(&models)?;
            let report = crossing_report(&complex, chosen, &io::parse_point(from)?, &io::parse_point(to)?)?;
            Ok(to_value(&CrossingReportJson::of(&complex, &report)))
        }
        Command::Oracle { model, grid } => Ok(to_value(&oracle::grid_oracle(&io::load_model(model)?, *grid)?)),
    }
}

fn validate(m: &Model) -> Result<Value, Error> {
    Ok(match m.source() {
        Source::Toric(pair) => {
            let base = pair.base();
            json!({
                "model": m.name(),
                "kind": "toric",
                "valid": true,
                "dim": base.dim(),
                "k": pair.k(),
                "degree": rat_str(base.degree()),
                "cones": base.cones().len(),
                "divisors": pair.divisors().iter().map(|d| json!({
                    "name": d.name,
                    "witness": wire_vec(&d.witness),
                    "index": d.index.to_string(),
                })).collect::<Vec<_>>(),
            })
        }
        Source::Table(table) => json!({
            "model": m.name(),
            "kind": "table",
            "valid": true,
            "k": m.k(),
            "rows": table.rows().len(),
            "certified": table.certified(),
        }),
    })
}

fn invariants(m: &Model) -> Result<Value, Error> {
    let mut rows = Vec::new();
    for (i, v) in m.valuations().iter().enumerate() {
        let mut row = json!({
            "label": v.label,
            "A": rat_str(&v.log_discrepancy),
            "S": rat_str(&v.s),
            "ord": wire_vec(&v.ord),
        });
        if let Source::Toric(pair) = m.source() {
            let base = pair.base();
            row["ray"] = json!(base.rays()[i]);
            row["T"] = rat_str(&base.t_invariant(&base.ray(i))?);
        }
        rows.push(row);
    }
    let mut doc = json!({ "model": m.name(), "k": m.k(), "valuations": rows });
    if let Source::Toric(pair) = m.source() {
        let base = pair.base();
        doc["dim"] = json!(base.dim());
        doc["degree"] = rat_str(base.degree());
        doc["barycenter"] = to_value(&wire_vec(base.barycenter()));
        doc["polytope"] = to_value(&PolytopeJson::of(base.polytope()));
    }
    Ok(doc)
}

fn sm(m: &Model, ray: usize, level: u32) -> Result<Value, Error> {
    let Source::Toric(pair) = m.source() else {
        return Err(Error::InvalidInput("basis-type approximation needs a toric model".into()));
    };
    let base = pair.base();
    if ray >= base.rays().len() {
        return Err(Error::InvalidInput(format!("ray index {ray} out of range (model has {})", base.rays().len())));
    }
    let u = base.ray(ray);
    let s_m = base.s_m_invariant(&u, level)?;
    let s = base.s_invariant(&u)?;
    Ok(json!({
        "model": m.name(),
        "ray": base.rays()[ray],
        "label": base.ray_label(ray),
        "m": level,
        "lattice_points": base.lattice_points(level).len(),
        "S_m": rat_str(&s_m),
        "S": rat_str(&s),
        "error": rat_str(&(s_m - s)),
    }))
}

fn domain(m: &Model, svg_path: Option<&Path>, slice: Option<&str>) -> Result<Value, Error> {
    let r = m.kss_domain()?;
    let mut doc = to_value(&KssDomainJson::of(m.name(), &r));
    if let Some(spec) = slice {
        let fixed = io::parse_slice(spec)?;
        let k = m.k();
        if k < 2 || fixed.len() + 2 != k {
            return Err(Error::Degenerate(format!("a slice of a k = {k} domain fixes exactly {} coordinates", k.saturating_sub(2))));
        }
        let free: Vec<usize> = (0..k).filter(|i| !fixed.iter().any(|(j, _)| j == i)).collect();
        if free.len() != 2 {
            return Err(Error::Degenerate("slice coordinates must be distinct".into()));
        }
        let frame = Polytope::simplex(k).restrict(&fixed)?;
        let cut = r.domain.restrict(&fixed)?;
        doc["slice"] = json!({
            "fixed": fixed.iter().map(|(i, v)| format!("x{}={}", i + 1, kss_core::rational::fmt_rat(v))).collect::<Vec<_>>().join(","),
            "axes": free.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>(),
            "frame": frame.vertices().iter().map(|v| wire_vec(v)).collect::<Vec<_>>(),
            "vertices": cut.vertices().iter().map(|v| wire_vec(v)).collect::<Vec<_>>(),
        });
    }
    if let Some(path) = svg_path {
        write_file(path, &svg::render_domain(&doc)?)?;
    }
    Ok(doc)
}

/// Serializes a document the way every command prints it.
pub fn render(doc: &Value) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("json values serialize");
    text.push('\n');
    text
}

/// Parses arguments, runs, writes output, and returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let outcome = run(&cli.command).and_then(|doc| {
        let text = render(&doc);
        match &cli.out {
            Some(path) => write_file(path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match outcome {
        Ok(()) => io::EXIT_OK,
        Err(err) => {
            eprintln!("{}", render(&io::error_json(&err)).trim_end());
            io::exit_code(&err)
        }
    }
}
