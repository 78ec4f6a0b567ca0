//! SVG rendering of the approximants and related figures.
//!
//! Output is vector-only: the spaces contain measure-zero bridge edges that
//! any raster would lose. Renderings are assembled as structured element
//! lists first, so tests can check the drawn geometry against the cubical
//! models before serialization.

use std::fmt::Write as _;

use crate::approx::CubicalModel;
use crate::space_k::{fiber_k, path, PLPath, PointK};
use crate::ternary::{ExactRational, Parity};
use crate::Error;

/// One drawable element, in final pixel coordinates (y grows downward).
#[derive(Clone, PartialEq, Debug)]
pub enum SvgElement {
    Rect {
        x: f64,
        y: f64,
        width: f64,
        height: f64,
        class: &'static str,
    },
    Line {
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
        class: &'static str,
    },
    Polyline {
        points: Vec<(f64, f64)>,
        class: &'static str,
    },
}

/// A complete drawing: canvas size plus elements in paint order.
#[derive(Clone, PartialEq, Debug)]
pub struct SvgDoc {
    pub width: f64,
    pub height: f64,
    pub elements: Vec<SvgElement>,
}

impl SvgDoc {
    pub fn to_svg_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.2}" height="{:.2}" viewBox="0 0 {:.2} {:.2}">"#,
            self.width, self.height, self.width, self.height
        );
        out.push_str(concat!(
            "<style>\n",
            ".square { fill: #c8c8c8; stroke: none; }\n",
            ".bridge-odd { stroke: #c0392b; stroke-width: 2; stroke-linecap: round; }\n",
            ".bridge-even { stroke: #2980b9; stroke-width: 2; stroke-linecap: round; }\n",
            ".path { stroke: #e67e22; stroke-width: 3; fill: none; stroke-linecap: round; }\n",
            ".fiber { stroke: #27ae60; stroke-width: 3; stroke-linecap: round; }\n",
            ".curve { stroke: #2c3e50; stroke-width: 1.5; fill: none; }\n",
            ".segment { stroke: #2c3e50; stroke-width: 1.5; }\n",
            "</style>\n",
        ));
        for element in &self.elements {
            match element {
                SvgElement::Rect {
                    x,
                    y,
                    width,
                    height,
                    class,
                } => {
                    let _ = writeln!(
                        out,
                        r#"<rect x="{x:.4}" y="{y:.4}" width="{width:.4}" height="{height:.4}" class="{class}"/>"#
                    );
                }
                SvgElement::Line {
                    x1,
                    y1,
                    x2,
                    y2,
                    class,
                } => {
                    let _ = writeln!(
                        out,
                        r#"<line x1="{x1:.4}" y1="{y1:.4}" x2="{x2:.4}" y2="{y2:.4}" class="{class}"/>"#
                    );
                }
                SvgElement::Polyline { points, class } => {
                    let mut list = String::new();
                    for (x, y) in points {
                        let _ = write!(list, "{x:.4},{y:.4} ");
                    }
                    let _ = writeln!(
                        out,
                        r#"<polyline points="{}" class="{class}"/>"#,
                        list.trim_end()
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

/// What to draw.
#[derive(Clone, PartialEq, Debug)]
pub enum RenderSubject {
    /// The approximant `K_n`.
    Kn { level: u32 },
    /// The two-curve space `D = P₁ ∪ P₂` with indiscrete component space.
    SpaceD,
    /// `K_n` with a canonical path overlaid.
    PathOverlay {
        level: u32,
        from: PointK,
        to: PointK,
    },
    /// `K_n` with a fiber of the quotient overlaid.
    FiberOverlay { level: u32, t: ExactRational },
}

#[derive(Clone, PartialEq, Debug)]
pub struct RenderSpec {
    pub subject: RenderSubject,
    /// Pixels per unit length.
    pub scale: f64,
}

/// A drawn bridge edge of a model rendering, in grid units, for structural
/// checks against the model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BridgeLine {
    /// First gap column of the run.
    pub from_col: usize,
    /// One past the last gap column of the run.
    pub to_col: usize,
    pub parity: Parity,
}

/// Maximal runs of gap columns, each of which renders as one bridge line.
/// Distinct gaps never share an endpoint, so runs and gaps correspond 1:1.
pub fn bridge_lines(model: &CubicalModel) -> Vec<BridgeLine> {
    use crate::approx::ColumnKind;
    let mut lines: Vec<BridgeLine> = Vec::new();
    let mut open: Option<(usize, Parity, u32)> = None;
    for (c, kind) in model.columns().iter().enumerate() {
        match (*kind, &mut open) {
            (ColumnKind::Gap { parity, level }, Some((_, p, l))) if parity == *p && level == *l => {
            }
            (ColumnKind::Gap { parity, level }, _) => {
                if let Some((start, p, _)) = open.take() {
                    lines.push(BridgeLine {
                        from_col: start,
                        to_col: c,
                        parity: p,
                    });
                }
                open = Some((c, parity, level));
            }
            (_, Some(_)) => {
                let (start, p, _) = open.take().expect("checked");
                lines.push(BridgeLine {
                    from_col: start,
                    to_col: c,
                    parity: p,
                });
            }
            _ => {}
        }
    }
    if let Some((start, p, _)) = open {
        lines.push(BridgeLine {
            from_col: start,
            to_col: model.grid(),
            parity: p,
        });
    }
    lines
}

/// Renders a cubical model: filled rects for squares, one line per retained
/// bridge run.
pub fn render_model(model: &CubicalModel, scale: f64) -> SvgDoc {
    let n = model.grid() as f64;
    let px = |v: f64| v / n * scale;
    let flip = |y: f64| scale - y;
    let mut elements = Vec::new();
    for c in 0..model.grid() {
        for r in 0..model.grid() {
            if model.has_square(c, r) {
                elements.push(SvgElement::Rect {
                    x: px(c as f64),
                    y: flip(px(r as f64 + 1.0)),
                    width: px(1.0),
                    height: px(1.0),
                    class: "square",
                });
            }
        }
    }
    for line in bridge_lines(model) {
        let (y, class) = match line.parity {
            Parity::Odd => (flip(scale), "bridge-odd"),
            Parity::Even => (flip(0.0), "bridge-even"),
        };
        elements.push(SvgElement::Line {
            x1: px(line.from_col as f64),
            y1: y,
            x2: px(line.to_col as f64),
            y2: y,
            class,
        });
    }
    SvgDoc {
        width: scale,
        height: scale,
        elements,
    }
}

fn overlay_path(doc: &mut SvgDoc, pl: &PLPath, scale: f64) {
    let points = pl
        .vertices()
        .iter()
        .map(|p| (p.x().to_f64() * scale, scale - p.y().to_f64() * scale))
        .collect();
    doc.elements.push(SvgElement::Polyline {
        points,
        class: "path",
    });
}

/// Number of polyline samples per oscillating curve branch of `D`.
pub const D_CURVE_SAMPLES: usize = 4000;
/// The oscillating branches are truncated at `x = 1 / (2 · D_OSCILLATIONS)`,
/// sampled uniformly in `1/x` so the oscillations stay resolved.
pub const D_OSCILLATIONS: u32 = 30;

/// The geometry of `D = P₁ ∪ P₂` in its native coordinates
/// (`x ∈ [−1,1]`, `y ∈ [−3,3]`).
///
/// `P₁ = {(x, 2 − sin(π/x)) : 0 < x ≤ 1} ∪ [(1,2),(0,−2)] ∪ ({0} × [−3,−1])`
/// and `P₂` is its image under the half-turn `(x, y) ↦ (−x, −y)`.
pub struct DGeometry {
    pub p1_curve: Vec<(f64, f64)>,
    pub p1_diagonal: ((f64, f64), (f64, f64)),
    pub p1_vertical: ((f64, f64), (f64, f64)),
    pub p2_curve: Vec<(f64, f64)>,
    pub p2_diagonal: ((f64, f64), (f64, f64)),
    pub p2_vertical: ((f64, f64), (f64, f64)),
}

pub fn d_geometry() -> DGeometry {
    let u_min = std::f64::consts::PI;
    let u_max = 2.0 * D_OSCILLATIONS as f64 * std::f64::consts::PI;
    let mut p1_curve = Vec::with_capacity(D_CURVE_SAMPLES);
    let mut p2_curve = Vec::with_capacity(D_CURVE_SAMPLES);
    for i in 0..D_CURVE_SAMPLES {
        let u = u_min + (u_max - u_min) * i as f64 / (D_CURVE_SAMPLES - 1) as f64;
        let x = std::f64::consts::PI / u;
        p1_curve.push((x, 2.0 - (std::f64::consts::PI / x).sin()));
        p2_curve.push((-x, -2.0 + (std::f64::consts::PI / x).sin()));
    }
    DGeometry {
        p1_curve,
        p1_diagonal: ((1.0, 2.0), (0.0, -2.0)),
        p1_vertical: ((0.0, -3.0), (0.0, -1.0)),
        p2_curve,
        p2_diagonal: ((-1.0, -2.0), (0.0, 2.0)),
        p2_vertical: ((0.0, 1.0), (0.0, 3.0)),
    }
}

fn render_d(scale: f64) -> SvgDoc {
    let geometry = d_geometry();
    // Native frame x ∈ [−1,1], y ∈ [−3,3].
    let tx = |x: f64| (x + 1.0) * scale;
    let ty = |y: f64| (3.0 - y) * scale;
    let mut elements = Vec::new();
    for curve in [&geometry.p1_curve, &geometry.p2_curve] {
        elements.push(SvgElement::Polyline {
            points: curve.iter().map(|&(x, y)| (tx(x), ty(y))).collect(),
            class: "curve",
        });
    }
    for ((x1, y1), (x2, y2)) in [
        geometry.p1_diagonal,
        geometry.p1_vertical,
        geometry.p2_diagonal,
        geometry.p2_vertical,
    ] {
        elements.push(SvgElement::Line {
            x1: tx(x1),
            y1: ty(y1),
            x2: tx(x2),
            y2: ty(y2),
            class: "segment",
        });
    }
    SvgDoc {
        width: 2.0 * scale,
        height: 6.0 * scale,
        elements,
    }
}

/// Renders the requested subject at the given scale.
pub fn render(spec: &RenderSpec) -> Result<SvgDoc, Error> {
    match &spec.subject {
        RenderSubject::Kn { level } => {
            Ok(render_model(&CubicalModel::build_k_n(*level)?, spec.scale))
        }
        RenderSubject::SpaceD => Ok(render_d(spec.scale)),
        RenderSubject::PathOverlay { level, from, to } => {
            let mut doc = render_model(&CubicalModel::build_k_n(*level)?, spec.scale);
            let pl = path(from, to)?;
            overlay_path(&mut doc, &pl, spec.scale);
            Ok(doc)
        }
        RenderSubject::FiberOverlay { level, t } => {
            let mut doc = render_model(&CubicalModel::build_k_n(*level)?, spec.scale);
            for segment in fiber_k(t).segments() {
                doc.elements.push(SvgElement::Line {
                    x1: segment.start.x().to_f64() * spec.scale,
                    y1: spec.scale - segment.start.y().to_f64() * spec.scale,
                    x2: segment.end.x().to_f64() * spec.scale,
                    y2: spec.scale - segment.end.y().to_f64() * spec.scale,
                    class: "fiber",
                });
            }
            Ok(doc)
        }
    }
}
