//! Output sinks and plot-export encodings.

use std::fs;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::{json, Value};

use latticeopt_core::error::Error;
use latticeopt_core::geom::Polyhedron;
use latticeopt_core::json as fmt;

#[derive(Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Off,
}

pub fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Json(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Json(format!("{}: {e}", path.display())))
}

/// Canonical emission: sorted keys, one trailing newline. Identical
/// invocations produce byte-identical output.
pub fn emit(target: &Option<PathBuf>, value: &Value) -> Result<(), Error> {
    let text = format!("{}\n", serde_json::to_string_pretty(value)?);
    write_text(target, &text)
}

pub fn write_text(target: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match target {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Json(format!("cannot write {}: {e}", path.display()))),
    }
}

/// Exact vertex/facet lists.
pub fn plot_json(poly: &Polyhedron) -> Value {
    let v = poly.vrep().expect("plot target nonempty");
    json!({
        "vertices": v.points.iter().map(fmt::vector_to_value).collect::<Vec<_>>(),
        "rays": v.directions.iter().map(fmt::vector_to_value).collect::<Vec<_>>(),
        "facets": poly
            .facets()
            .iter()
            .map(|iq| json!({"a": fmt::vector_to_value(&iq.normal), "b": fmt::rational_to_value(&iq.offset)}))
            .collect::<Vec<_>>(),
    })
}

pub fn plot_csv(poly: &Polyhedron) -> String {
    let mut out = String::new();
    let v = poly.vrep().expect("plot target nonempty");
    out.push_str("kind,coords\n");
    for p in &v.points {
        out.push_str("vertex,");
        out.push_str(&join(p));
        out.push('\n');
    }
    for d in &v.directions {
        out.push_str("ray,");
        out.push_str(&join(d));
        out.push('\n');
    }
    for iq in poly.facets() {
        out.push_str("facet,");
        out.push_str(&join(&iq.normal));
        out.push(';');
        out.push_str(&iq.offset.canonical_string());
        out.push('\n');
    }
    out
}

fn join(v: &latticeopt_core::linalg::RVec) -> String {
    v.0.iter()
        .map(|r| r.canonical_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// OFF export for 2- and 3-dimensional polyhedra: vertices to 15
/// significant digits (lossy, flagged), faces as vertex-incidence lists;
/// recession rays are listed in comments since OFF has no unbounded
/// primitives.
pub fn plot_off(poly: &Polyhedron) -> Result<String, Error> {
    let q = poly.dim;
    if q != 2 && q != 3 {
        return Err(Error::InvalidProblem(
            "OFF export supports only 2- and 3-dimensional polyhedra".into(),
        ));
    }
    let v = poly
        .vrep()
        .ok_or_else(|| Error::InvalidProblem("cannot export the empty set".into()))?;
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for iq in poly.facets() {
        let incident: Vec<usize> = v
            .points
            .iter()
            .enumerate()
            .filter(|(_, p)| iq.normal.dot(p) == iq.offset)
            .map(|(i, _)| i)
            .collect();
        if incident.len() >= q.min(2) {
            faces.push(incident);
        }
    }
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str("# lossy: rationals truncated to 15 significant digits\n");
    for d in &v.directions {
        out.push_str(&format!(
            "# recession ray: {}\n",
            d.0.iter()
                .map(|r| format!("{:.15e}", r.to_f64_lossy()))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    out.push_str(&format!("{} {} 0\n", v.points.len(), faces.len()));
    for p in &v.points {
        let mut coords: Vec<String> =
            p.0.iter().map(|r| format!("{:.15e}", r.to_f64_lossy())).collect();
        while coords.len() < 3 {
            coords.push("0".into());
        }
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    for f in &faces {
        out.push_str(&f.len().to_string());
        for i in f {
            out.push_str(&format!(" {i}"));
        }
        out.push('\n');
    }
    Ok(out)
}
