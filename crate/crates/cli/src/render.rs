//! Deterministic SVG rendering of planar (dim = 2) configurations.

use std::fmt::Write as _;
use std::path::Path;

use inversive::{Configuration, ExtendedPoint, OrientedBall};

use crate::error::{CliError, Result};
use crate::schema;

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 20.0;

struct Viewport {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Viewport {
    fn x(&self, wx: f64) -> f64 {
        MARGIN + (wx - self.min_x) * self.scale
    }

    fn y(&self, wy: f64) -> f64 {
        MARGIN + (self.max_y - wy) * self.scale
    }
}

fn fit_viewport(conf: &Configuration) -> Viewport {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut grow = |x: f64, y: f64| {
        lo[0] = lo[0].min(x);
        lo[1] = lo[1].min(y);
        hi[0] = hi[0].max(x);
        hi[1] = hi[1].max(y);
    };
    if let Ok(balls) = conf.ball_items() {
        for b in balls {
            match b {
                OrientedBall::Sphere { center, radius, .. } => {
                    grow(center[0] - radius, center[1] - radius);
                    grow(center[0] + radius, center[1] + radius);
                }
                OrientedBall::HalfSpace { normal, offset } => {
                    grow(normal[0] * offset, normal[1] * offset);
                }
            }
        }
    }
    if let Ok(points) = conf.point_items() {
        for p in points {
            if let ExtendedPoint::Finite(v) = p {
                grow(v[0], v[1]);
            }
        }
    }
    if !lo[0].is_finite() {
        lo = [-2.0, -2.0];
        hi = [2.0, 2.0];
    }
    let side = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
    let pad = 0.25 * side;
    let cx = (lo[0] + hi[0]) / 2.0;
    let cy = (lo[1] + hi[1]) / 2.0;
    let half = side / 2.0 + pad;
    Viewport {
        min_x: cx - half,
        max_y: cy + half,
        scale: (CANVAS - 2.0 * MARGIN) / (2.0 * half),
    }
}

fn p3(v: f64) -> String {
    format!("{v:.3}")
}

pub fn render_svg(conf: &Configuration) -> String {
    let vp = fit_viewport(conf);
    let world_span = (CANVAS - 2.0 * MARGIN) / vp.scale;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let _ = writeln!(svg, r#"<rect width="{c}" height="{c}" fill="white"/>"#, c = CANVAS);

    let text = |svg: &mut String, x: f64, y: f64, label: &str| {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="12">{label}</text>"#,
            p3(x),
            p3(y)
        );
    };

    if let Ok(balls) = conf.ball_items() {
        for (label, b) in conf.labels().iter().zip(balls.iter()) {
            match b {
                OrientedBall::Sphere { center, radius, side } => {
                    let dash = if *side == inversive::Side::Outside {
                        r#" stroke-dasharray="6 3""#
                    } else {
                        ""
                    };
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="black"{dash}/>"#,
                        p3(vp.x(center[0])),
                        p3(vp.y(center[1])),
                        p3(radius * vp.scale)
                    );
                    text(&mut svg, vp.x(center[0]) + 4.0, vp.y(center[1]) - 4.0, label);
                }
                OrientedBall::HalfSpace { normal, offset } => {
                    // boundary line n.x = d, clipped by the viewport; the
                    // short tick points into the half-space
                    let foot = (normal[0] * offset, normal[1] * offset);
                    let dir = (-normal[1], normal[0]);
                    let l = world_span;
                    let (x1, y1) = (foot.0 - l * dir.0, foot.1 - l * dir.1);
                    let (x2, y2) = (foot.0 + l * dir.0, foot.1 + l * dir.1);
                    let _ = writeln!(
                        svg,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
                        p3(vp.x(x1)),
                        p3(vp.y(y1)),
                        p3(vp.x(x2)),
                        p3(vp.y(y2))
                    );
                    let tick = 0.05 * world_span;
                    let _ = writeln!(
                        svg,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
                        p3(vp.x(foot.0)),
                        p3(vp.y(foot.1)),
                        p3(vp.x(foot.0 + tick * normal[0])),
                        p3(vp.y(foot.1 + tick * normal[1]))
                    );
                    text(
                        &mut svg,
                        vp.x(foot.0) + 4.0,
                        vp.y(foot.1) - 4.0,
                        &format!("{label} (through \u{221e})"),
                    );
                }
            }
        }
    }

    if let Ok(points) = conf.point_items() {
        let mut at_infinity = Vec::new();
        for (label, p) in conf.labels().iter().zip(points.iter()) {
            match p {
                ExtendedPoint::Finite(v) => {
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#,
                        p3(vp.x(v[0])),
                        p3(vp.y(v[1]))
                    );
                    text(&mut svg, vp.x(v[0]) + 4.0, vp.y(v[1]) - 4.0, label);
                }
                ExtendedPoint::Infinity(_) => at_infinity.push(label.clone()),
            }
        }
        if !at_infinity.is_empty() {
            text(
                &mut svg,
                MARGIN,
                CANVAS - MARGIN / 2.0,
                &format!("at \u{221e}: {}", at_infinity.join(", ")),
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}

pub fn cmd_render(config: &Path, out: &Path) -> Result<()> {
    let (_, conf) = schema::load_config(config)?;
    if conf.dim() != 2 {
        return Err(CliError::Input(format!(
            "render requires dim = 2, got {}",
            conf.dim()
        )));
    }
    std::fs::write(out, render_svg(&conf))
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}
