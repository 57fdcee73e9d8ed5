//! Deterministic SVG plots of clouds and hulls.
//!
//! The canvas is a fixed 800x800 viewBox fitted to the hull bounds plus a
//! 10% margin on each side, with equal scales on both axes. Coordinates are
//! rounded to 12 significant digits and then printed in shortest form.

use num_complex::Complex64 as C64;

pub const SIZE: f64 = 800.0;
const MARGIN: f64 = 0.1;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub struct Layer {
    pub label: String,
    pub vertices: Vec<C64>,
    pub radius: f64,
}

pub struct Plot {
    pub layers: Vec<Layer>,
    pub cloud: Vec<C64>,
    /// Serialized into the `<metadata>` element.
    pub provenance: String,
}

/// 12 significant digits, shortest text, no negative zero.
pub fn num(v: f64) -> String {
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    center: C64,
    span: f64,
}

impl Frame {
    fn fit(points: &[C64]) -> Self {
        if points.is_empty() {
            return Self { center: C64::new(0.0, 0.0), span: 2.4 };
        }
        let (mut lo, mut hi) = (points[0], points[0]);
        for z in points {
            lo = C64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = C64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        let extent = (hi.re - lo.re).max(hi.im - lo.im);
        let extent = if extent > 1e-12 { extent } else { 1.0 };
        Self { center: (lo + hi) * 0.5, span: extent * (1.0 + 2.0 * MARGIN) }
    }

    fn x(&self, re: f64) -> f64 {
        SIZE / 2.0 + (re - self.center.re) / self.span * SIZE
    }

    fn y(&self, im: f64) -> f64 {
        SIZE / 2.0 - (im - self.center.im) / self.span * SIZE
    }

    fn len(&self, r: f64) -> f64 {
        r / self.span * SIZE
    }

    fn pt(&self, z: C64) -> String {
        format!("{},{}", num(self.x(z.re)), num(self.y(z.im)))
    }
}

pub fn render(plot: &Plot) -> String {
    let hull_points: Vec<C64> = plot.layers.iter().flat_map(|l| l.vertices.iter().copied()).collect();
    let frame = Frame::fit(if hull_points.is_empty() { &plot.cloud } else { &hull_points });
    let mut s = String::new();
    s.push_str(&format!("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {0} {0}\" width=\"{0}\" height=\"{0}\">\n", num(SIZE)));
    s.push_str(&format!("<metadata>{}</metadata>\n", escape(&plot.provenance)));
    s.push_str(&format!("<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n", num(SIZE)));
    let origin = C64::new(0.0, 0.0);
    s.push_str(&format!(
        "<line class=\"axis\" x1=\"0\" y1=\"{y}\" x2=\"{w}\" y2=\"{y}\" stroke=\"#ddd\"/>\n<line class=\"axis\" x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"{w}\" stroke=\"#ddd\"/>\n",
        x = num(frame.x(0.0)),
        y = num(frame.y(0.0)),
        w = num(SIZE)
    ));
    s.push_str(&format!(
        "<circle class=\"unit-circle\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n",
        num(frame.x(origin.re)),
        num(frame.y(origin.im)),
        num(frame.len(1.0))
    ));
    if !plot.cloud.is_empty() {
        s.push_str("<g class=\"cloud\" fill=\"#555\" fill-opacity=\"0.5\">\n");
        for z in &plot.cloud {
            s.push_str(&format!("<circle cx=\"{}\" cy=\"{}\" r=\"1.5\"/>\n", num(frame.x(z.re)), num(frame.y(z.im))));
        }
        s.push_str("</g>\n");
    }
    for (k, layer) in plot.layers.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let dash = if k % 2 == 1 { " stroke-dasharray=\"8 4\"" } else { "" };
        let style = format!("fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"{dash}");
        match layer.vertices.as_slice() {
            [] => {}
            [z] => s.push_str(&format!("<circle class=\"hull\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{color}\"/>\n", num(frame.x(z.re)), num(frame.y(z.im)))),
            [a, b] => s.push_str(&format!("<polyline class=\"hull\" points=\"{} {}\" {style}/>\n", frame.pt(*a), frame.pt(*b))),
            vs => {
                let mut d = format!("M{}", frame.pt(vs[0]));
                for z in &vs[1..] {
                    d.push_str(&format!(" L{}", frame.pt(*z)));
                }
                d.push_str(" Z");
                s.push_str(&format!("<path class=\"hull\" d=\"{d}\" {style}/>\n"));
            }
        }
        s.push_str(&format!(
            "<circle class=\"radius\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-opacity=\"0.4\" stroke-dasharray=\"2 3\"/>\n",
            num(frame.x(0.0)),
            num(frame.y(0.0)),
            num(frame.len(layer.radius))
        ));
        s.push_str(&format!(
            "<text x=\"12\" y=\"{}\" font-family=\"monospace\" font-size=\"14\" fill=\"{color}\">{}: nu = {}</text>\n",
            num(24.0 + 18.0 * k as f64),
            escape(&layer.label),
            num(layer.radius)
        ));
    }
    s.push_str("</svg>\n");
    s
}
