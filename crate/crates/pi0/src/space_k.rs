//! The planar space `K` and its path-component structure.
//!
//! `K = (C × [0,1]) ∪ (K_even × {0}) ∪ (K_odd × {1})`: full vertical fibers
//! over Cantor points, a top bridge over each odd-level gap, and a bottom
//! bridge over each even-level gap. The path components are the vertical
//! fibers over non-endpoint Cantor points and the three-sided arcs over gap
//! closures; collapsing them via the staircase function realizes `[0,1]` as
//! the path-component space.

use serde::{Deserialize, Serialize};

use crate::ternary::{
    cantor_function, cantor_function_preimage, classify, gaps_between, CantorClass, CantorGap,
    CantorPreimage, ExactRational, GapFilter, Parity,
};
use crate::Error;

/// Height of the retained bridge over a gap of the given parity.
pub fn bridge_height(parity: Parity) -> ExactRational {
    match parity {
        Parity::Odd => ExactRational::one(),
        Parity::Even => ExactRational::zero(),
    }
}

/// Membership predicate for `K`: true iff `x` is not interior to a gap, or it
/// is and `y` sits on the retained bridge (top for odd levels, bottom for
/// even).
pub fn member_k(x: &ExactRational, y: &ExactRational) -> bool {
    match classify(x) {
        CantorClass::InGap(gap) => *y == bridge_height(gap.parity()),
        _ => true,
    }
}

/// A point of `K`; membership is enforced at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PointK {
    x: ExactRational,
    y: ExactRational,
}

impl PointK {
    pub fn new(x: ExactRational, y: ExactRational) -> Result<Self, Error> {
        if member_k(&x, &y) {
            Ok(PointK { x, y })
        } else {
            Err(Error::NotInK {
                x: x.to_string(),
                y: y.to_string(),
            })
        }
    }

    pub fn x(&self) -> &ExactRational {
        &self.x
    }

    pub fn y(&self) -> &ExactRational {
        &self.y
    }
}

impl std::fmt::Display for PointK {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Deserialize)]
struct PointKRaw {
    x: ExactRational,
    y: ExactRational,
}

impl<'de> Deserialize<'de> for PointK {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PointKRaw::deserialize(deserializer)?;
        PointK::new(raw.x, raw.y).map_err(serde::de::Error::custom)
    }
}

/// Identity of a path component of `K`: a vertical Cantor fiber
/// `Y_c = {c} × [0,1]` or the arc `Y_I` over a gap closure. Two values are
/// equal exactly when they denote the same component.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentId {
    Fiber(ExactRational),
    Arc(CantorGap),
}

impl ComponentId {
    /// The x-interval the component projects onto.
    pub fn span(&self) -> (&ExactRational, &ExactRational) {
        match self {
            ComponentId::Fiber(c) => (c, c),
            ComponentId::Arc(gap) => (gap.left(), gap.right()),
        }
    }
}

impl std::fmt::Display for ComponentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentId::Fiber(c) => write!(f, "fiber {c}"),
            ComponentId::Arc(gap) => write!(f, "arc over {gap}"),
        }
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum ComponentIdRaw {
    Fiber(ExactRational),
    Arc(CantorGap),
}

impl<'de> Deserialize<'de> for ComponentId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ComponentIdRaw::deserialize(deserializer)? {
            ComponentIdRaw::Fiber(c) => match classify(&c) {
                CantorClass::InteriorCantor => Ok(ComponentId::Fiber(c)),
                _ => Err(serde::de::Error::custom(format!(
                    "{c} is not a non-endpoint Cantor point"
                ))),
            },
            ComponentIdRaw::Arc(gap) => Ok(ComponentId::Arc(gap)),
        }
    }
}

/// The path component containing `p`.
pub fn component_of(p: &PointK) -> ComponentId {
    match classify(p.x()) {
        CantorClass::InteriorCantor => ComponentId::Fiber(p.x().clone()),
        CantorClass::LeftEndpoint(gap)
        | CantorClass::RightEndpoint(gap)
        | CantorClass::InGap(gap) => ComponentId::Arc(gap),
    }
}

/// The quotient map `q_K` realized through the staircase function: constant
/// on each component, distinct across components.
pub fn q_k(p: &PointK) -> ExactRational {
    cantor_function(p.x())
}

pub fn same_component(p: &PointK, q: &PointK) -> bool {
    component_of(p) == component_of(q)
}

/// Whether the straight segment from `p` to `q` lies entirely inside `K`.
///
/// Only three shapes qualify: a degenerate point, a vertical segment over a
/// Cantor point, or a horizontal run along `y = 0` or `y = 1` inside a single
/// gap closure of matching parity. Any other segment crosses gap columns at
/// forbidden heights.
pub fn segment_in_k(p: &PointK, q: &PointK) -> bool {
    if p == q {
        return true;
    }
    if p.x() == q.x() {
        return !classify(p.x()).is_in_gap();
    }
    if p.y() != q.y() {
        return false;
    }
    let y = p.y();
    let parity = if y.is_one() {
        Parity::Odd
    } else if y.is_zero() {
        Parity::Even
    } else {
        return false;
    };
    let (lo, hi) = if p.x() < q.x() {
        (p.x(), q.x())
    } else {
        (q.x(), p.x())
    };
    match classify(lo) {
        CantorClass::LeftEndpoint(gap) | CantorClass::InGap(gap) => {
            gap.parity() == parity && hi <= gap.right()
        }
        _ => false,
    }
}

/// A piecewise-linear path in `K`: consecutive vertices are joined by
/// straight segments, each of which passes [`segment_in_k`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct PLPath {
    vertices: Vec<PointK>,
}

impl PLPath {
    pub fn new(vertices: Vec<PointK>) -> Result<Self, Error> {
        if vertices.is_empty() {
            return Err(Error::Parse {
                input: "[]".to_string(),
                expected: "a nonempty vertex list",
            });
        }
        for pair in vertices.windows(2) {
            if !segment_in_k(&pair[0], &pair[1]) {
                return Err(Error::NotInK {
                    x: format!("segment {} -", pair[0]),
                    y: format!("{}", pair[1]),
                });
            }
        }
        Ok(PLPath { vertices })
    }

    pub fn vertices(&self) -> &[PointK] {
        &self.vertices
    }

    pub fn start(&self) -> &PointK {
        self.vertices.first().expect("nonempty")
    }

    pub fn end(&self) -> &PointK {
        self.vertices.last().expect("nonempty")
    }
}

impl<'de> Deserialize<'de> for PLPath {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let vertices = Vec::<PointK>::deserialize(deserializer)?;
        PLPath::new(vertices).map_err(serde::de::Error::custom)
    }
}

/// One gap of each parity lying strictly between two components; a finite
/// certificate that no path can join them, since any such path would have to
/// cross both bridge heights over every intermediate gap.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub odd: CantorGap,
    pub even: CantorGap,
}

/// A separating pair of gaps for two points in distinct components.
pub fn separation_witness(p: &PointK, q: &PointK) -> Result<SeparationWitness, Error> {
    let a = component_of(p);
    let b = component_of(q);
    if a == b {
        return Err(Error::SameComponent);
    }
    let (lo, hi) = if a.span().1 < b.span().0 {
        (a, b)
    } else {
        (b, a)
    };
    let from = lo.span().1.clone();
    let to = hi.span().0.clone();
    let odd = gaps_between(&from, &to, GapFilter::Odd, 1)?
        .pop()
        .expect("an odd gap separates distinct components");
    let even = gaps_between(&from, &to, GapFilter::Even, 1)?
        .pop()
        .expect("an even gap separates distinct components");
    Ok(SeparationWitness { odd, even })
}

/// A canonical path between two points of the same component: vertical within
/// a fiber, and routed over the bridge edge within an arc. At most 4 vertices.
///
/// Errors with `DifferentComponents`, carrying a separation witness, when no
/// path exists.
pub fn path(p: &PointK, q: &PointK) -> Result<PLPath, Error> {
    let component = component_of(p);
    if component != component_of(q) {
        return Err(Error::DifferentComponents(separation_witness(p, q)?));
    }
    if p == q {
        return PLPath::new(vec![p.clone()]);
    }
    if p.x() == q.x() {
        return PLPath::new(vec![p.clone(), q.clone()]);
    }
    let gap = match component {
        ComponentId::Arc(gap) => gap,
        ComponentId::Fiber(_) => unreachable!("fiber points share an x-coordinate"),
    };
    let bridge = bridge_height(gap.parity());
    let mut vertices = vec![p.clone()];
    for vertex in [
        PointK::new(p.x().clone(), bridge.clone())?,
        PointK::new(q.x().clone(), bridge)?,
        q.clone(),
    ] {
        if vertices.last() != Some(&vertex) {
            vertices.push(vertex);
        }
    }
    PLPath::new(vertices)
}

/// The fiber `q_K⁻¹(t)`: a single vertical segment, or the three-segment arc
/// over a collapsed gap closure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberK {
    Vertical { x: ExactRational },
    #[serde(rename = "arc")]
    GapArc { gap: CantorGap },
}

/// A closed segment of a fiber, given by its endpoints in `K`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Segment {
    pub start: PointK,
    pub end: PointK,
}

impl FiberK {
    /// The fiber as an explicit finite union of closed segments.
    pub fn segments(&self) -> Vec<Segment> {
        let vertical = |x: &ExactRational| Segment {
            start: PointK::new(x.clone(), ExactRational::zero()).expect("Cantor fiber"),
            end: PointK::new(x.clone(), ExactRational::one()).expect("Cantor fiber"),
        };
        match self {
            FiberK::Vertical { x } => vec![vertical(x)],
            FiberK::GapArc { gap } => {
                let bridge = bridge_height(gap.parity());
                vec![
                    vertical(gap.left()),
                    Segment {
                        start: PointK::new(gap.left().clone(), bridge.clone())
                            .expect("bridge endpoint"),
                        end: PointK::new(gap.right().clone(), bridge).expect("bridge endpoint"),
                    },
                    vertical(gap.right()),
                ]
            }
        }
    }

    /// Whether a point of `K` lies on this fiber.
    pub fn contains(&self, p: &PointK) -> bool {
        match self {
            FiberK::Vertical { x } => p.x() == x,
            FiberK::GapArc { gap } => {
                p.x() == gap.left()
                    || p.x() == gap.right()
                    || (gap.contains_open(p.x()) && *p.y() == bridge_height(gap.parity()))
            }
        }
    }
}

/// The full preimage `q_K⁻¹(t)`. Rational `t` always has a rational fiber:
/// dyadics in `(0,1)` pull back to gap arcs, everything else to a single
/// vertical fiber.
pub fn fiber_k(t: &ExactRational) -> FiberK {
    match cantor_function_preimage(t) {
        CantorPreimage::Point(x) => FiberK::Vertical { x },
        CantorPreimage::Gap(gap) => FiberK::GapArc { gap },
    }
}
