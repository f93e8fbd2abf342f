//! SVG rendering of implicit curves by marching squares on a sign grid,
//! with symmetry elements (center, axes) overlaid.

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::scalars::ComplexScalar;
use crate::symmetry::{SymmetryOutcome, SymmetryReport};
use num_traits::ToPrimitive;
use std::fmt::Write;

#[derive(Debug, Clone, Copy)]
pub struct Window {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Window> {
        if !(x0 < x1 && y0 < y1) {
            return Err(Error::invalid("window must have positive width and height"));
        }
        Ok(Window { x0, y0, x1, y1 })
    }
}

const CANVAS: f64 = 640.0;

struct Mapper {
    win: Window,
}

impl Mapper {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = CANVAS * (x - self.win.x0) / (self.win.x1 - self.win.x0);
        let sy = CANVAS * (self.win.y1 - y) / (self.win.y1 - self.win.y0);
        (sx, sy)
    }
}

/// Marching-squares contour segments of f = 0 on the window.
fn contour_segments(f: &BiPoly, win: &Window, resolution: usize) -> Vec<((f64, f64), (f64, f64))> {
    let n = resolution;
    let dx = (win.x1 - win.x0) / n as f64;
    let dy = (win.y1 - win.y0) / n as f64;
    let mut values = vec![vec![0.0f64; n + 1]; n + 1];
    for (i, row) in values.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let x = win.x0 + i as f64 * dx;
            let y = win.y0 + j as f64 * dy;
            *v = f.eval_f64(x, y);
        }
    }
    let interp = |va: f64, vb: f64| -> f64 {
        if (vb - va).abs() < f64::EPSILON {
            0.5
        } else {
            (-va / (vb - va)).clamp(0.0, 1.0)
        }
    };
    let mut segments = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let x = win.x0 + i as f64 * dx;
            let y = win.y0 + j as f64 * dy;
            // corners: bl, br, tr, tl
            let v = [
                values[i][j],
                values[i + 1][j],
                values[i + 1][j + 1],
                values[i][j + 1],
            ];
            let mut case = 0usize;
            for (bit, val) in v.iter().enumerate() {
                if *val > 0.0 {
                    case |= 1 << bit;
                }
            }
            if case == 0 || case == 15 {
                continue;
            }
            // edge midpoints with linear interpolation
            let e = [
                (x + dx * interp(v[0], v[1]), y),          // bottom
                (x + dx, y + dy * interp(v[1], v[2])),     // right
                (x + dx * interp(v[3], v[2]), y + dy),     // top
                (x, y + dy * interp(v[0], v[3])),          // left
            ];
            let pairs: &[(usize, usize)] = match case {
                1 | 14 => &[(3, 0)],
                2 | 13 => &[(0, 1)],
                3 | 12 => &[(3, 1)],
                4 | 11 => &[(1, 2)],
                5 | 10 => &[(3, 2), (0, 1)],
                6 | 9 => &[(0, 2)],
                7 | 8 => &[(2, 3)],
                _ => &[],
            };
            for &(a, b) in pairs {
                segments.push((e[a], e[b]));
            }
        }
    }
    segments
}

fn unit_to_angle(w: &ComplexScalar) -> f64 {
    let (re, im) = match w {
        ComplexScalar::Exact(g) => (g.re.to_f64().unwrap_or(0.0), g.im.to_f64().unwrap_or(0.0)),
        ComplexScalar::Algebraic(a) => {
            let b = a.refine_to(&crate::scalars::rat_pow10_neg(12));
            let m = b.mid();
            (m.re.to_f64().unwrap_or(0.0), m.im.to_f64().unwrap_or(0.0))
        }
    };
    im.atan2(re) / 2.0
}

fn push_curve(svg: &mut String, f: &BiPoly, win: &Window, resolution: usize, class: &str, color: &str) {
    let mapper = Mapper { win: *win };
    for (a, b) in contour_segments(f, win, resolution) {
        let (x1, y1) = mapper.px(a.0, a.1);
        let (x2, y2) = mapper.px(b.0, b.1);
        writeln!(
            svg,
            r#"  <line class="{class}" x1="{x1:.4}" y1="{y1:.4}" x2="{x2:.4}" y2="{y2:.4}" stroke="{color}" stroke-width="1.5"/>"#,
        )
        .unwrap();
    }
}

fn push_symmetry_overlay(svg: &mut String, rep: &SymmetryReport, win: &Window) {
    let mapper = Mapper { win: *win };
    let Some(center) = &rep.center else { return };
    let cx = center.re.to_f64().unwrap_or(0.0);
    let cy = center.im.to_f64().unwrap_or(0.0);
    let diag = ((win.x1 - win.x0).powi(2) + (win.y1 - win.y0).powi(2)).sqrt();
    for (w, _) in &rep.reflections {
        let phi = unit_to_angle(w);
        let (dx, dy) = (phi.cos(), phi.sin());
        let a = mapper.px(cx - diag * dx, cy - diag * dy);
        let b = mapper.px(cx + diag * dx, cy + diag * dy);
        writeln!(
            svg,
            r##"  <line class="axis" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="#888" stroke-dasharray="6,4" stroke-width="1"/>"##,
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }
    let (px, py) = mapper.px(cx, cy);
    writeln!(
        svg,
        r##"  <circle class="center" cx="{px:.4}" cy="{py:.4}" r="4" fill="#d22"/>"##,
    )
    .unwrap();
}

/// Renders a curve (plus optional symmetry elements) as an SVG document.
pub fn render_symmetry_svg(
    f: &BiPoly,
    outcome: Option<&SymmetryOutcome>,
    win: &Window,
    resolution: usize,
) -> Result<String> {
    if resolution < 16 {
        return Err(Error::invalid("resolution must be at least 16"));
    }
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    )
    .unwrap();
    writeln!(svg, r#"  <rect width="{c}" height="{c}" fill="white"/>"#, c = CANVAS).unwrap();
    push_curve(&mut svg, f, win, resolution, "curve", "#1155cc");
    if let Some(SymmetryOutcome::Finite(rep)) = outcome {
        push_symmetry_overlay(&mut svg, rep, win);
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}

/// Renders both curves of a similarity query in distinct styles.
pub fn render_pair_svg(
    f1: &BiPoly,
    f2: &BiPoly,
    win: &Window,
    resolution: usize,
) -> Result<String> {
    if resolution < 16 {
        return Err(Error::invalid("resolution must be at least 16"));
    }
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    )
    .unwrap();
    writeln!(svg, r#"  <rect width="{c}" height="{c}" fill="white"/>"#, c = CANVAS).unwrap();
    push_curve(&mut svg, f1, win, resolution, "curve1", "#1155cc");
    push_curve(&mut svg, f2, win, resolution, "curve2", "#cc3311");
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn bp(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, rat(n, d)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn circle_renders_contour() {
        let f = bp(&[(2, 0, 1, 1), (0, 2, 1, 1), (0, 0, -1, 1)]);
        let win = Window::new(-2.0, -2.0, 2.0, 2.0).unwrap();
        let svg = render_symmetry_svg(&f, None, &win, 64).unwrap();
        assert!(svg.contains("<line class=\"curve\""));
        assert!(svg.starts_with("<svg"));
        // deterministic output
        let svg2 = render_symmetry_svg(&f, None, &win, 64).unwrap();
        assert_eq!(svg, svg2);
    }

    #[test]
    fn sextic_overlay_has_three_axes() {
        let sextic = bp(&[
            (6, 0, 1, 1),
            (4, 2, -15, 1),
            (3, 0, -2, 1),
            (2, 4, 15, 1),
            (1, 2, 6, 1),
            (0, 6, -1, 1),
        ]);
        let out = crate::symmetry::symmetries(&sextic).unwrap();
        let win = Window::new(-2.0, -2.0, 2.0, 2.0).unwrap();
        let svg = render_symmetry_svg(&sextic, Some(&out), &win, 64).unwrap();
        let axes = svg.matches("class=\"axis\"").count();
        assert_eq!(axes, 3);
        assert!(svg.contains("class=\"center\""));
    }

    #[test]
    fn window_and_resolution_validation() {
        assert!(Window::new(1.0, 0.0, 1.0, 2.0).is_err());
        let f = bp(&[(1, 0, 1, 1)]);
        let win = Window::new(-1.0, -1.0, 1.0, 1.0).unwrap();
        assert!(render_symmetry_svg(&f, None, &win, 8).is_err());
    }
}
