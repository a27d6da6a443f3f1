//! SVG figures drawn from the JSON documents alone.
//!
//! Floating point appears only here, to place exact rationals on a canvas.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use kss_core::Error;
use serde_json::Value;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948", "#9c755f",
];
const DOMAIN_FILL: &str = "#2a9d8f";

fn malformed(what: &str) -> Error {
    Error::InvalidInput(format!("document is missing {what}"))
}

fn num(v: &Value) -> Result<f64, Error> {
    let s = v.as_str().ok_or_else(|| malformed("a rational string"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| malformed("a rational string"));
    match s.split_once('/') {
        Some((p, q)) => Ok(parse(p)? / parse(q)?),
        None => parse(s),
    }
}

fn text_of(v: &Value) -> String {
    v.as_str().unwrap_or("?").to_string()
}

fn points(v: &Value) -> Result<Vec<Vec<f64>>, Error> {
    v.as_array()
        .ok_or_else(|| malformed("a vertex list"))?
        .iter()
        .map(|p| p.as_array().ok_or_else(|| malformed("a point"))?.iter().map(num).collect())
        .collect()
}

fn labels(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|pts| {
            pts.iter()
                .map(|p| {
                    let parts: Vec<String> = p.as_array().map(|c| c.iter().map(text_of).collect()).unwrap_or_default();
                    format!("({})", parts.join(", "))
                })
                .collect()
        })
        .unwrap_or_default()
}

/// Orders the vertices of a convex polygon counter-clockwise.
fn around(pts: &[(f64, f64)]) -> Vec<usize> {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| {
        let ta = (pts[a].1 - cy).atan2(pts[a].0 - cx);
        let tb = (pts[b].1 - cy).atan2(pts[b].0 - cx);
        ta.total_cmp(&tb)
    });
    idx
}

struct Canvas {
    body: String,
    width: u32,
    height: u32,
}

impl Canvas {
    fn new(width: u32, height: u32) -> Self {
        Canvas {
            body: String::new(),
            width,
            height,
        }
    }

    fn text(&mut self, x: f64, y: f64, size: u32, anchor: &str, content: &str) {
        let _ = writeln!(
            self.body,
            r#"  <text x="{x:.2}" y="{y:.2}" font-size="{size}" text-anchor="{anchor}" font-family="sans-serif">{}</text>"#,
            escape(content)
        );
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, opacity: f64, stroke: &str, width: f64) {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.body,
            r#"  <polygon points="{}" fill="{fill}" fill-opacity="{opacity}" stroke="{stroke}" stroke-width="{width}"/>"#,
            coords.join(" ")
        );
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{stroke}" stroke-width="{width}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    fn dot(&mut self, p: (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(self.body, r#"  <circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"/>"#, p.0, p.1);
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n  <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const LEFT: f64 = 60.0;
const SPAN: f64 = 400.0;

fn on_axis(t: f64) -> f64 {
    LEFT + SPAN * t
}

fn plane(p: &[f64], scale: f64) -> (f64, f64) {
    (LEFT + SPAN * p[0] / scale, 40.0 + SPAN - SPAN * p[1] / scale)
}

fn draw_shape(c: &mut Canvas, pts: &[(f64, f64)], fill: &str) {
    match pts.len() {
        0 => {}
        1 => c.dot(pts[0], 5.0, fill),
        2 => {
            c.line(pts[0], pts[1], fill, 5.0);
            c.dot(pts[0], 4.0, fill);
            c.dot(pts[1], 4.0, fill);
        }
        _ => {
            let order: Vec<(f64, f64)> = around(pts).into_iter().map(|i| pts[i]).collect();
            c.polygon(&order, fill, 0.55, fill, 2.0);
        }
    }
}

/// Renders a domain document (`kss domain` output). Two-parameter slices of
/// higher-dimensional domains are drawn from the document's `slice` entry.
pub fn render_domain(doc: &Value) -> Result<String, Error> {
    let title = format!(
        "{}  mu = {}  in_E = {}",
        text_of(&doc["model"]),
        doc["mu"].as_str().unwrap_or("none"),
        doc["in_E"]
    );
    if let Some(slice) = doc.get("slice") {
        return render_plane(
            &slice["frame"],
            &slice["vertices"],
            &format!("{} (slice {})", title, text_of(&slice["fixed"])),
            slice["axes"].as_array().map(|a| (text_of(&a[0]), text_of(&a[1]))),
        );
    }
    let ambient = doc["ambient"].as_u64().ok_or_else(|| malformed("`ambient`"))?;
    match ambient {
        1 => render_interval(&title, &doc["vertices"]),
        2 => {
            let frame = serde_json::json!([["0", "0"], ["1", "0"], ["0", "1"]]);
            render_plane(&frame, &doc["vertices"], &title, None)
        }
        k => Err(Error::Degenerate(format!(
            "drawing a domain with k = {k} needs --slice fixing {} coordinates",
            k.saturating_sub(2)
        ))),
    }
}

fn render_interval(title: &str, vertices: &Value) -> Result<String, Error> {
    let pts = points(vertices)?;
    let names = labels(vertices);
    let mut c = Canvas::new(520, 130);
    c.text(260.0, 24.0, 14, "middle", title);
    c.line((on_axis(0.0), 70.0), (on_axis(1.0), 70.0), "#333", 1.5);
    for (t, label) in [(0.0, "0"), (1.0, "1")] {
        c.line((on_axis(t), 64.0), (on_axis(t), 76.0), "#333", 1.5);
        c.text(on_axis(t), 96.0, 12, "middle", label);
    }
    match pts.len() {
        0 => c.text(260.0, 118.0, 12, "middle", "empty domain"),
        _ => {
            let (lo, hi) = (pts[0][0], pts[pts.len() - 1][0]);
            if pts.len() > 1 {
                c.line((on_axis(lo), 70.0), (on_axis(hi), 70.0), DOMAIN_FILL, 6.0);
            }
            for (p, name) in pts.iter().zip(&names) {
                c.dot((on_axis(p[0]), 70.0), 5.0, DOMAIN_FILL);
                c.text(on_axis(p[0]), 54.0, 12, "middle", name);
            }
        }
    }
    Ok(c.finish())
}

fn render_plane(
    frame: &Value,
    vertices: &Value,
    heading: &str,
    axes: Option<(String, String)>,
) -> Result<String, Error> {
    let frame_pts = points(frame)?;
    let scale = frame_pts
        .iter()
        .flat_map(|p| p.iter().copied())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut c = Canvas::new(540, 520);
    c.text(270.0, 24.0, 14, "middle", heading);
    let frame_px: Vec<(f64, f64)> = frame_pts.iter().map(|p| plane(p, scale)).collect();
    draw_frame(&mut c, &frame_px);
    let (ax, ay) = axes.unwrap_or_else(|| ("x1".into(), "x2".into()));
    c.text(LEFT + SPAN + 10.0, 40.0 + SPAN + 4.0, 12, "start", &ax);
    c.text(LEFT, 32.0, 12, "middle", &ay);

    let pts = points(vertices)?;
    let px: Vec<(f64, f64)> = pts.iter().map(|p| plane(p, scale)).collect();
    if px.is_empty() {
        c.text(270.0, 500.0, 12, "middle", "empty domain");
    }
    draw_shape(&mut c, &px, DOMAIN_FILL);
    for (p, name) in px.iter().zip(labels(vertices)) {
        c.text(p.0 + 8.0, p.1 - 8.0, 11, "start", &name);
    }
    Ok(c.finish())
}

fn draw_frame(c: &mut Canvas, frame: &[(f64, f64)]) {
    match frame.len() {
        0 => {}
        1 => c.dot(frame[0], 3.0, "#333"),
        2 => c.line(frame[0], frame[1], "#333", 1.5),
        _ => {
            let order: Vec<(f64, f64)> = around(frame).into_iter().map(|i| frame[i]).collect();
            c.polygon(&order, "none", 0.0, "#333", 1.5);
        }
    }
}

fn signature(statuses: &Value) -> String {
    statuses
        .as_object()
        .map(|m| {
            m.iter()
                .map(|(k, v)| format!("{k}: {}", text_of(v)))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_default()
}

/// Renders a chamber complex document (`kss chambers` output), shading each
/// chamber by its tuple of statuses.
pub fn render_chambers(doc: &Value) -> Result<String, Error> {
    let k = doc["k"].as_u64().ok_or_else(|| malformed("`k`"))?;
    let chambers = doc["chambers"].as_array().ok_or_else(|| malformed("`chambers`"))?;
    let mut colors: BTreeMap<String, &str> = BTreeMap::new();
    for ch in chambers {
        let sig = signature(&ch["statuses"]);
        let next = PALETTE[colors.len() % PALETTE.len()];
        colors.entry(sig).or_insert(next);
    }
    let legend_top = match k {
        1 => 120.0,
        2 => 470.0,
        _ => return Err(Error::Degenerate(format!("chamber figures support k <= 2, got k = {k}"))),
    };
    let height = legend_top as u32 + 20 * colors.len() as u32 + 20;
    let mut c = Canvas::new(540, height);
    c.text(270.0, 24.0, 14, "middle", &format!("{} chambers, {} walls", chambers.len(), doc["walls"].as_array().map_or(0, Vec::len)));
    for ch in chambers {
        let fill = colors[&signature(&ch["statuses"])];
        let pts = points(&ch["vertices"])?;
        if k == 1 {
            let (lo, hi) = (pts[0][0], pts[pts.len() - 1][0]);
            c.polygon(
                &[(on_axis(lo), 55.0), (on_axis(hi), 55.0), (on_axis(hi), 85.0), (on_axis(lo), 85.0)],
                fill,
                0.6,
                "#222",
                1.0,
            );
            c.text(on_axis((lo + hi) / 2.0), 104.0, 11, "middle", &text_of(&ch["sign_vector"]));
        } else {
            let px: Vec<(f64, f64)> = pts.iter().map(|p| plane(p, 1.0)).collect();
            let order: Vec<(f64, f64)> = around(&px).into_iter().map(|i| px[i]).collect();
            c.polygon(&order, fill, 0.6, "#222", 1.0);
        }
    }
    if k == 1 {
        for t in [0.0, 1.0] {
            c.text(on_axis(t), 48.0, 12, "middle", if t == 0.0 { "0" } else { "1" });
        }
    }
    for (i, (sig, fill)) in colors.iter().enumerate() {
        let y = legend_top + 20.0 * i as f64;
        c.polygon(&[(20.0, y), (34.0, y), (34.0, y + 12.0), (20.0, y + 12.0)], fill, 0.6, "#222", 1.0);
        c.text(42.0, y + 11.0, 12, "start", sig);
    }
    Ok(c.finish())
}
