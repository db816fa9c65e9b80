//! Minimal static SVG line chart of T, R and A.

use std::fmt::Write;

use polarispec_core::{RealSpectrum, TraSpectra};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 150.0;
const TITLE_LINE: f64 = 16.0;
const TITLE_CHARS: usize = 95;
const BOTTOM: f64 = 52.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Word-wraps the title into at most two lines.
fn title_lines(title: &str) -> Vec<String> {
    let mut lines: Vec<String> = vec![String::new()];
    for word in title.split_whitespace() {
        let last = lines.last_mut().expect("non-empty");
        if !last.is_empty() && last.len() + 1 + word.len() > TITLE_CHARS {
            if lines.len() == 2 {
                lines[1].push_str(" ...");
                break;
            }
            lines.push(word.to_string());
        } else {
            if !last.is_empty() {
                last.push(' ');
            }
            last.push_str(word);
        }
    }
    lines
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=4).map(|k| lo + (hi - lo) * k as f64 / 4.0).collect()
}

pub fn render(s: &TraSpectra, title: &str) -> String {
    let grid = s.grid();
    let (x0, x1) = (grid.omega_min(), grid.omega_max());
    let traces: [(&str, &RealSpectrum, &str); 3] = [
        ("T", &s.transmission, "#1f77b4"),
        ("R", &s.reflection, "#2ca02c"),
        ("A", &s.absorption, "#d62728"),
    ];
    let mut y0 = 0.0f64;
    let mut y1 = 1.0f64;
    for (_, t, _) in &traces {
        for v in t.values() {
            y0 = y0.min(*v);
            y1 = y1.max(*v);
        }
    }
    let title = title_lines(title);
    let top = 24.0 + TITLE_LINE * title.len() as f64;
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - top - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + (y1 - y) / (y1 - y0) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (k, line) in title.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="13">{}</text>"#,
            LEFT + pw / 2.0,
            20.0 + TITLE_LINE * k as f64,
            escape(line)
        );
    }
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for x in ticks(x0, x1) {
        let px = sx(x);
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            top + ph,
            top + ph + 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{x:.2}</text>"#,
            top + ph + 18.0
        );
    }
    for y in ticks(y0, y1) {
        let py = sy(y);
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/>"#,
            LEFT - 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.2}</text>"#,
            LEFT - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">omega</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0
    );
    for (k, (name, trace, color)) in traces.iter().enumerate() {
        let mut points = String::new();
        for (x, y) in grid.points().zip(trace.values()) {
            let _ = write!(points, "{:.2},{:.2} ", sx(x), sy(*y));
        }
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.trim_end()
        );
        let ly = top + 16.0 + 20.0 * k as f64;
        let lx = WIDTH - RIGHT + 16.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{name}</text>"#,
            lx + 30.0,
            ly + 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}
