//! Minimal SVG emitter for fundamental-domain pictures.

use std::fmt::Write as _;

use radharm_core::quotient::{GridSample, Window};
use radharm_core::DomainClass;

const CANVAS: f64 = 600.0;
const INTERIOR_FILL: &str = "#d6e6f5";
const BOUNDARY_FILL: &str = "#1f3b73";
const BASE_FILL: &str = "#c0392b";

/// A classified raster over `window`, drawn cell by cell.
pub struct Figure<'a> {
    pub window: Window,
    pub resolution: usize,
    pub samples: &'a [GridSample],
    pub basepoint: [f64; 2],
    /// Draw the unit circle (slice schematics).
    pub disc: bool,
    /// Lines placed in the `<metadata>` element.
    pub metadata: Vec<String>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Figure<'_> {
    pub fn render(&self) -> String {
        let w = self.window;
        let scale = CANVAS / w.width().max(w.height());
        let (width, height) = (w.width() * scale, w.height() * scale);
        let px = |x: f64| (x - w.x0) * scale;
        let py = |y: f64| (w.y1 - y) * scale;
        let cw = w.width() / self.resolution as f64;
        let ch = w.height() / self.resolution as f64;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
        );
        s.push_str("<metadata>\n");
        for line in &self.metadata {
            let _ = writeln!(s, "{}", escape(line));
        }
        s.push_str("</metadata>\n");
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{width:.1}" height="{height:.1}" fill="white"/>"#);

        // Interior cells, merged into horizontal runs.
        s.push_str(r#"<g fill=""#);
        s.push_str(INTERIOR_FILL);
        s.push_str("\">\n");
        let mut run: Option<(f64, f64, f64)> = None;
        let flush = |s: &mut String, run: (f64, f64, f64)| {
            let (x0, x1, y) = run;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                px(x0 - 0.5 * cw),
                py(y + 0.5 * ch),
                (x1 - x0 + cw) * scale,
                ch * scale
            );
        };
        for c in self.samples.iter().filter(|c| c.class == DomainClass::Interior) {
            run = match run {
                Some((x0, x1, y)) if y == c.y && (c.x - x1 - cw).abs() < 1e-9 * cw.max(1.0) => Some((x0, c.x, y)),
                Some(r) => {
                    flush(&mut s, r);
                    Some((c.x, c.x, c.y))
                }
                None => Some((c.x, c.x, c.y)),
            };
        }
        if let Some(r) = run {
            flush(&mut s, r);
        }
        s.push_str("</g>\n");

        let _ = writeln!(s, r#"<g fill="{BOUNDARY_FILL}">"#);
        for c in self.samples.iter().filter(|c| c.class == DomainClass::Boundary) {
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                px(c.x - 0.5 * cw),
                py(c.y + 0.5 * ch),
                cw * scale,
                ch * scale
            );
        }
        s.push_str("</g>\n");

        if self.disc {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
                px(0.0),
                py(0.0),
                scale
            );
        }
        let [bx, by] = self.basepoint;
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{BASE_FILL}"/>"#,
            px(bx),
            py(by)
        );
        s.push_str("</svg>\n");
        s
    }
}
