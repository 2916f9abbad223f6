//! Number formatting and the CSV, JSON and SVG emitters.

use std::fmt::Write;

use curvekit::ComplexPoint;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "curvekit/1";
const SIGNIFICANT: usize = 12;
const MARGIN: f64 = 0.05;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// `x` rounded to 12 significant digits, with `-0` turned into `0`.
pub fn round(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT - 1, x).parse().unwrap_or(x);
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Shortest text that reads back as the rounded value.
pub fn fmt(x: f64) -> String {
    let x = round(x);
    if x != 0.0 && (x.abs() < 1e-6 || x.abs() >= 1e15) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round(x)).map_or(Value::Null, Value::Number)
}

/// A JSON object tagged with the schema version.
pub fn document(fields: Vec<(&str, Value)>) -> String {
    let mut map = Map::new();
    map.insert("schema".into(), Value::String(SCHEMA.into()));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("JSON values serialize");
    text.push('\n');
    text
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(fmt).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// SVG with one polyline per curve; the y axis points up.
pub fn svg(curves: &[Vec<ComplexPoint>]) -> String {
    let finite = curves.iter().flatten().filter(|z| z.re.is_finite() && z.im.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in finite {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(-z.im);
        y1 = y1.max(-z.im);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let (mut w, mut h) = (x1 - x0, y1 - y0);
    let span = w.max(h).max(1e-9);
    // flat boxes (a straight trace) still get some height
    let (mx, my) = (MARGIN * w.max(1e-3 * span), MARGIN * h.max(1e-3 * span));
    x0 -= mx;
    y0 -= my;
    w += 2.0 * mx;
    h += 2.0 * my;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"600\" height=\"{}\">",
        fmt(x0),
        fmt(y0),
        fmt(w),
        fmt(h),
        (600.0 * h / w).round().clamp(1.0, 6000.0)
    );
    for (i, curve) in curves.iter().enumerate() {
        let points: Vec<String> = curve
            .iter()
            .filter(|z| z.re.is_finite() && z.im.is_finite())
            .map(|z| format!("{},{}", fmt(z.re), fmt(-z.im)))
            .collect();
        let _ = writeln!(
            out,
            "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" points=\"{}\"/>",
            COLORS[i % COLORS.len()],
            points.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(fmt(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt(-0.0), "0");
        assert_eq!(fmt(-1e-300), "-1e-300");
        assert_eq!(fmt(1.23456789012345e-9), "1.23456789012e-9");
        assert_eq!(fmt(2.0), "2");
        assert_eq!(fmt(0.1 + 0.2), "0.3");
    }

    #[test]
    fn svg_has_one_polyline_per_curve() {
        let a = vec![ComplexPoint::new(0.0, 0.0), ComplexPoint::new(1.0, 1.0)];
        let b = vec![ComplexPoint::new(2.0, 0.0), ComplexPoint::new(0.0, -1.0)];
        let text = svg(&[a, b]);
        assert_eq!(text.matches("<polyline").count(), 2);
        assert!(text.contains("viewBox=\"-0.1 -1.1 2.2 2.2\""), "{text}");
    }
}
