//! Text formats: landmark and grid CSV, sweep tables and SVG grid plots.
//!
//! CSV floats are written with 17 significant digits so that every double
//! survives a write/parse round trip; SVG coordinates use 3 decimals.

use std::fmt::Write as _;

use crate::bench::{EvaluationGrid, Point2, RealLifeRow, SweepReport};
use crate::error::{Error, Result};
use crate::landmarks::{Landmark, LandmarkSet, QUASI_TOLERANCE};

pub const LANDMARK_HEADER: &str = "sx,sy,tx,ty,quasi";
pub const GRID_HEADER: &str = "x,y,fx,fy";

/// Canonical 17-significant-digit form of `v`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn parse_f64(field: &str, line: usize) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("`{}` is not a number", field.trim()) })?;
    if !v.is_finite() {
        return Err(Error::Parse { line, msg: format!("`{}` is not finite", field.trim()) });
    }
    Ok(v)
}

/// Non-empty lines with their 1-based numbers, header checked.
fn data_lines<'a>(text: &'a str, header: &str) -> Result<Vec<(usize, Vec<&'a str>)>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        Some((n, h)) => {
            return Err(Error::Parse { line: n, msg: format!("expected header `{header}`, found `{h}`") })
        }
        None => return Err(Error::Parse { line: 1, msg: format!("missing header `{header}`") }),
    }
    let arity = header.split(',').count();
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            let fields: Vec<&str> = l.split(',').collect();
            if fields.len() != arity {
                return Err(Error::Parse {
                    line: n,
                    msg: format!("expected {arity} fields, found {}", fields.len()),
                });
            }
            Ok((n, fields))
        })
        .collect()
}

/// Parses a 2-D landmark file (`sx,sy,tx,ty,quasi`).
pub fn parse_landmarks(text: &str) -> Result<LandmarkSet> {
    let mut pairs = Vec::new();
    for (line, f) in data_lines(text, LANDMARK_HEADER)? {
        let v = f[..4].iter().map(|s| parse_f64(s, line)).collect::<Result<Vec<_>>>()?;
        let quasi = match f[4].trim() {
            "0" => false,
            "1" => true,
            other => return Err(Error::Parse { line, msg: format!("quasi flag must be 0 or 1, found `{other}`") }),
        };
        if quasi && ((v[0] - v[2]).abs() > QUASI_TOLERANCE || (v[1] - v[3]).abs() > QUASI_TOLERANCE) {
            return Err(Error::Validation(format!("line {line}: quasi-landmark source and target differ")));
        }
        pairs.push(Landmark { source: vec![v[0], v[1]], target: vec![v[2], v[3]], quasi });
    }
    if pairs.is_empty() {
        return Err(Error::Parse { line: 1, msg: "no landmark rows".into() });
    }
    LandmarkSet::new(2, pairs)
}

pub fn write_landmarks(set: &LandmarkSet) -> Result<String> {
    if set.dim() != 2 {
        return Err(Error::Domain(format!("landmark files are 2-D, set has dimension {}", set.dim())));
    }
    let mut out = format!("{LANDMARK_HEADER}\n");
    for j in 0..set.len() {
        let (s, t) = (set.source(j), set.target(j));
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f64(s[0]),
            fmt_f64(s[1]),
            fmt_f64(t[0]),
            fmt_f64(t[1]),
            u8::from(set.is_quasi(j))
        );
    }
    Ok(out)
}

/// One row per grid point: original position and its image.
pub fn write_grid(original: &EvaluationGrid, deformed: &EvaluationGrid) -> Result<String> {
    check_shapes(original, deformed)?;
    let mut out = format!("{GRID_HEADER}\n");
    for (p, q) in original.points().iter().zip(deformed.points()) {
        let _ = writeln!(out, "{},{},{},{}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(q[0]), fmt_f64(q[1]));
    }
    Ok(out)
}

/// Parses a grid file back into the original and deformed grids.
///
/// The column count is the length of the leading run of rows sharing the
/// first `y`.
pub fn parse_grid(text: &str) -> Result<(EvaluationGrid, EvaluationGrid)> {
    let mut original = Vec::new();
    let mut deformed = Vec::new();
    for (line, f) in data_lines(text, GRID_HEADER)? {
        let v = f.iter().map(|s| parse_f64(s, line)).collect::<Result<Vec<_>>>()?;
        original.push([v[0], v[1]]);
        deformed.push([v[2], v[3]]);
    }
    if original.is_empty() {
        return Err(Error::Parse { line: 1, msg: "no grid rows".into() });
    }
    let cols = original.iter().take_while(|p| p[1] == original[0][1]).count();
    if original.len() % cols != 0 {
        return Err(Error::Domain(format!("{} points do not form rows of {cols}", original.len())));
    }
    let rows = original.len() / cols;
    Ok((EvaluationGrid::from_points(rows, cols, original)?, EvaluationGrid::from_points(rows, cols, deformed)?))
}

fn check_shapes(a: &EvaluationGrid, b: &EvaluationGrid) -> Result<()> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Domain(format!(
            "grid shapes differ: {}×{} vs {}×{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

pub const SWEEP_HEADER: &str =
    "case,method,reference,parameter,value,rmse,condition,residual,optimal,published_parameter,published_rmse,failure";

/// Sweep reports as one CSV table; published values appear on the optimal row.
pub fn write_sweep_reports(reports: &[SweepReport]) -> String {
    use crate::bench::published;
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in reports {
        for (i, row) in r.rows.iter().enumerate() {
            let optimal = i == r.optimum;
            let (pp, pr) = if optimal {
                (published::parameter(r.method, r.case), published::rmse(r.method, r.case))
            } else {
                (None, None)
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                r.case.name(),
                r.method.name(),
                r.reference.name(),
                r.param_name().unwrap_or(""),
                fmt_opt(row.value),
                fmt_opt(row.rmse),
                fmt_opt(row.condition),
                fmt_opt(row.residual),
                u8::from(optimal),
                fmt_opt(pp),
                fmt_opt(pr),
                row.failure.as_deref().unwrap_or("").replace([',', '\n'], ";"),
            );
        }
    }
    out
}

pub const REAL_LIFE_HEADER: &str = "method,parameter,value,rmse,residual,published_rmse";

pub fn write_real_life(rows: &[RealLifeRow]) -> String {
    let mut out = format!("{REAL_LIFE_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.method.name(),
            r.method.param_kind().map(|k| k.name()).unwrap_or(""),
            fmt_opt(r.param),
            fmt_f64(r.rmse),
            fmt_f64(r.residual),
            fmt_opt(r.published_rmse),
        );
    }
    out
}

const SVG_SIZE: f64 = 1000.0;
const MARKER: f64 = 6.0;

fn svg_num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Plane coordinates to SVG user units, `y` pointing up.
fn svg_xy(p: Point2) -> (String, String) {
    (svg_num(p[0] * SVG_SIZE), svg_num((1.0 - p[1]) * SVG_SIZE))
}

/// SVG plot of `deformed`: one polyline per grid row and per grid column,
/// with optional markers (circle = source, cross = target).
pub fn render_grid_svg(
    original: &EvaluationGrid,
    deformed: &EvaluationGrid,
    landmarks: Option<&LandmarkSet>,
) -> Result<String> {
    check_shapes(original, deformed)?;
    if let Some(set) = landmarks {
        if set.dim() != 2 {
            return Err(Error::Domain("only 2-D landmarks can be drawn".into()));
        }
    }
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n",
    );
    out.push_str("<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n");
    out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n");
    let (rows, cols) = (deformed.rows(), deformed.cols());
    let polyline = |out: &mut String, pts: &mut dyn Iterator<Item = Point2>| {
        let coords: Vec<String> = pts
            .map(|p| {
                let (x, y) = svg_xy(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(out, "<polyline points=\"{}\"/>", coords.join(" "));
    };
    for i in 0..rows {
        polyline(&mut out, &mut (0..cols).map(|j| deformed.point(i, j)));
    }
    for j in 0..cols {
        polyline(&mut out, &mut (0..rows).map(|i| deformed.point(i, j)));
    }
    out.push_str("</g>\n");
    if let Some(set) = landmarks {
        out.push_str("<g fill=\"none\" stroke-width=\"2\">\n");
        for j in 0..set.len() {
            let (sx, sy) = svg_xy([set.source(j)[0], set.source(j)[1]]);
            let _ = writeln!(out, "<circle cx=\"{sx}\" cy=\"{sy}\" r=\"{}\" stroke=\"blue\"/>", svg_num(MARKER));
            let t = set.target(j);
            let (x0, y0) = svg_xy([t[0] - MARKER / SVG_SIZE, t[1] + MARKER / SVG_SIZE]);
            let (x1, y1) = svg_xy([t[0] + MARKER / SVG_SIZE, t[1] - MARKER / SVG_SIZE]);
            let _ = writeln!(
                out,
                "<path d=\"M {x0} {y0} L {x1} {y1} M {x0} {y1} L {x1} {y0}\" stroke=\"red\"/>"
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
