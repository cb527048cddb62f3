//! Minimal static SVG line/scatter charts for the simulation outputs.

use std::fmt::Write as _;

pub struct Series {
    pub name: String,
    pub color: String,
    pub points: Vec<(f64, f64)>,
    pub markers: bool,
}

const W: f64 = 820.0;
const H: f64 = 520.0;
const MARGIN: f64 = 60.0;

fn bounds(series: &[Series]) -> (f64, f64, f64, f64) {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    if !min_x.is_finite() {
        return (0.0, 1.0, 0.0, 1.0);
    }
    if max_x == min_x {
        max_x = min_x + 1.0;
    }
    if max_y == min_y {
        max_y = min_y + 1.0;
    }
    (min_x, max_x, min_y, max_y)
}

/// Renders a titled line chart; callers write the string to disk.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (min_x, max_x, min_y, max_y) = bounds(series);
    let sx = |x: f64| MARGIN + (x - min_x) / (max_x - min_x) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - min_y) / (max_y - min_y) * (H - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(out, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"28\" font-size=\"16\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>",
        W / 2.0,
        title
    );
    // axes
    let _ = writeln!(
        out,
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/><line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>",
        m = MARGIN,
        r = W - MARGIN,
        t = MARGIN,
        b = H - MARGIN
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>",
        W / 2.0,
        H - 18.0,
        x_label
    );
    let _ = writeln!(
        out,
        "<text x=\"18\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 18 {})\">{}</text>",
        H / 2.0,
        H / 2.0,
        y_label
    );
    // bound labels
    let _ = writeln!(
        out,
        "<text x=\"{m}\" y=\"{b}\" font-size=\"10\" font-family=\"sans-serif\">{min_x:.4}</text><text x=\"{r}\" y=\"{b}\" font-size=\"10\" text-anchor=\"end\" font-family=\"sans-serif\">{max_x:.4}</text>",
        m = MARGIN,
        b = H - MARGIN + 16.0,
        r = W - MARGIN
    );
    let _ = writeln!(
        out,
        "<text x=\"{x}\" y=\"{b}\" font-size=\"10\" text-anchor=\"end\" font-family=\"sans-serif\">{min_y:.4}</text><text x=\"{x}\" y=\"{t}\" font-size=\"10\" text-anchor=\"end\" font-family=\"sans-serif\">{max_y:.4}</text>",
        x = MARGIN - 6.0,
        b = H - MARGIN,
        t = MARGIN + 10.0
    );

    for (si, s) in series.iter().enumerate() {
        if s.points.len() > 1 {
            let mut path = String::new();
            for (i, &(x, y)) in s.points.iter().enumerate() {
                let _ = write!(path, "{}{:.2},{:.2} ", if i == 0 { "M" } else { "L" }, sx(x), sy(y));
            }
            let _ = writeln!(out, "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>", path.trim(), s.color);
        }
        if s.markers {
            for &(x, y) in &s.points {
                let _ = writeln!(out, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{}\"/>", sx(x), sy(y), s.color);
            }
        }
        // legend
        let ly = MARGIN + 18.0 * si as f64;
        let _ = writeln!(
            out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"12\" height=\"4\" fill=\"{c}\"/><text x=\"{tx}\" y=\"{ty}\" font-size=\"11\" font-family=\"sans-serif\">{n}</text>",
            x = W - MARGIN - 150.0,
            y = ly - 4.0,
            c = s.color,
            tx = W - MARGIN - 132.0,
            ty = ly + 1.0,
            n = s.name
        );
    }
    out.push_str("</svg>\n");
    out
}
