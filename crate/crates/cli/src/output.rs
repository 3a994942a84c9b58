//! Distribution writers: CSV, JSON and gnuplot data files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use qwalk_core::{Distribution, Site};
use serde_json::{json, Value};

use crate::config::OutputFormat;
use crate::error::CliError;

/// Probabilities below this print as `0` in the text formats.
pub const PRINT_FLOOR: f64 = 1e-15;

/// Run information echoed into JSON output.
#[derive(Clone, Debug, Default)]
pub struct Metadata {
    pub mode: String,
    pub steps: u64,
    pub norm: f64,
    pub config: Value,
}

impl Metadata {
    fn to_json(&self, dims: usize) -> Value {
        json!({ "mode": self.mode, "steps": self.steps, "norm": self.norm, "dims": dims })
    }
}

/// Formats with 12 significant digits and no trailing zeros, switching to
/// exponent notation for very small or very large magnitudes.
pub fn format_probability(p: f64) -> String {
    if p.abs() < PRINT_FLOOR {
        return "0".into();
    }
    let sci = format!("{p:.11e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exponent.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        return format!("{}e{exponent}", trim_zeros(mantissa));
    }
    trim_zeros(&format!("{:.*}", (11 - exp) as usize, p)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn dims_of(d: &Distribution<Site>) -> usize {
    d.iter().next().map(|(s, _)| s.dims()).unwrap_or(1)
}

fn coords_csv(site: Site) -> String {
    site.coords().iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn render_distribution(d: &Distribution<Site>, format: OutputFormat, meta: &Metadata) -> String {
    let dims = dims_of(d);
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(if dims == 2 { "position,position_y,probability\n" } else { "position,probability\n" });
            for (site, p) in d.iter() {
                let _ = writeln!(out, "{},{}", coords_csv(site), format_probability(p));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = d
                .iter()
                .map(|(site, p)| json!({ "position": site.coords(), "probability": p }))
                .collect();
            let doc = json!({ "config": meta.config, "metadata": meta.to_json(dims), "distribution": rows });
            serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
        }
        OutputFormat::Gnuplot => render_gnuplot(d, dims),
    }
}

/// Whitespace columns over the full bounding window of the stored sites.
/// 2D output is blocked by `x` with a blank line between blocks.
fn render_gnuplot(d: &Distribution<Site>, dims: usize) -> String {
    let mut out = String::new();
    if d.is_empty() {
        return "# position probability\n".into();
    }
    let coords: Vec<Vec<i64>> = d.iter().map(|(s, _)| s.coords()).collect();
    let lo = |k: usize| coords.iter().map(|c| c[k]).min().unwrap();
    let hi = |k: usize| coords.iter().map(|c| c[k]).max().unwrap();
    if dims == 2 {
        out.push_str("# x y probability\n");
        for x in lo(0)..=hi(0) {
            for y in lo(1)..=hi(1) {
                let _ = writeln!(out, "{x} {y} {}", format_probability(d.get(&Site::Plane(x, y))));
            }
            out.push('\n');
        }
    } else {
        out.push_str("# position probability\n");
        for x in lo(0)..=hi(0) {
            let _ = writeln!(out, "{x} {}", format_probability(d.get(&Site::Line(x))));
        }
    }
    out
}

/// One row per position: `(position, classical, quantum)`.
pub fn render_comparison(rows: &[(i64, f64, f64)], format: OutputFormat, meta: &Metadata) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("position,classical,quantum\n");
            for (k, c, q) in rows {
                let _ = writeln!(out, "{k},{},{}", format_probability(*c), format_probability(*q));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(k, c, q)| json!({ "position": [k], "classical": c, "quantum": q }))
                .collect();
            let doc = json!({ "config": meta.config, "metadata": meta.to_json(1), "comparison": rows });
            serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
        }
        OutputFormat::Gnuplot => {
            let mut out = String::from("# position classical quantum\n");
            for (k, c, q) in rows {
                let _ = writeln!(out, "{k} {} {}", format_probability(*c), format_probability(*q));
            }
            out
        }
    }
}

/// One row per bipartition cut.
pub fn render_entropy(rows: &[(usize, f64)], format: OutputFormat, meta: &Metadata) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("cut,entropy\n");
            for (cut, e) in rows {
                let _ = writeln!(out, "{cut},{}", format_probability(*e));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = rows.iter().map(|(cut, e)| json!({ "cut": cut, "entropy": e })).collect();
            let doc = json!({ "config": meta.config, "metadata": { "mode": meta.mode, "norm": meta.norm }, "entropy": rows });
            serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
        }
        OutputFormat::Gnuplot => {
            let mut out = String::from("# cut entropy\n");
            for (cut, e) in rows {
                let _ = writeln!(out, "{cut} {}", format_probability(*e));
            }
            out
        }
    }
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            }
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn emit_distribution(
    d: &Distribution<Site>,
    format: OutputFormat,
    path: Option<&Path>,
    meta: &Metadata,
) -> Result<(), CliError> {
    write_output(&render_distribution(d, format, meta), path)
}

/// Reads the `distribution` array of a JSON file written by
/// [`render_distribution`].
pub fn read_json_distribution(text: &str) -> Result<Distribution<Site>, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let rows = doc
        .get("distribution")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Parse("missing `distribution` array".into()))?;
    let mut probs = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        let bad = || CliError::Parse(format!("distribution[{i}] is malformed"));
        let coords: Vec<i64> = row
            .get("position")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|v| v.as_i64().ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        let p = row.get("probability").and_then(Value::as_f64).ok_or_else(bad)?;
        probs.insert(Site::from_coords(&coords)?, p);
    }
    Ok(Distribution::from_weights(probs)?)
}
