//! Finite powers `K^d` and the pullback construction.
//!
//! The product quotient `Q = (q_K)^d : K^d → [0,1]^d` identifies exactly the
//! path components of `K^d`, which are the products of coordinate
//! components. For a box region `X ⊆ [0,1]^d` the pullback `Y = Q⁻¹(X)` is a
//! space whose path-component space is `X`; this module gives membership,
//! componentwise path synthesis, product fibers, and a sampled verification
//! report for that construction.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::space_k::{
    bridge_height, fiber_k, path, q_k, FiberK, PLPath, PointK, SeparationWitness,
};
use crate::ternary::ExactRational;
use crate::Error;

/// A point of `K^d`; every coordinate is a point of `K`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct PointKd {
    coords: Vec<PointK>,
}

impl PointKd {
    pub fn new(coords: Vec<PointK>) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(PointKd { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[PointK] {
        &self.coords
    }
}

impl<'de> Deserialize<'de> for PointKd {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coords = Vec::<PointK>::deserialize(deserializer)?;
        PointKd::new(coords).map_err(serde::de::Error::custom)
    }
}

/// The product quotient: componentwise staircase values. Two points have
/// equal images exactly when they lie in the same path component of `K^d`.
pub fn q_kd(p: &PointKd) -> Vec<ExactRational> {
    p.coords().iter().map(q_k).collect()
}

/// A finite union of closed rational boxes in `[0,1]^d`, standing in for a
/// Tychonoff subspace of the cube.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BoxRegion {
    dim: usize,
    boxes: Vec<Vec<(ExactRational, ExactRational)>>,
}

impl BoxRegion {
    pub fn new(
        dim: usize,
        boxes: Vec<Vec<(ExactRational, ExactRational)>>,
    ) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if boxes.is_empty() {
            return Err(Error::EmptyRegion);
        }
        for b in &boxes {
            if b.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: b.len(),
                });
            }
            for (axis, (lo, hi)) in b.iter().enumerate() {
                if lo > hi {
                    return Err(Error::InvalidBox { axis });
                }
            }
        }
        Ok(BoxRegion { dim, boxes })
    }

    /// The whole cube `[0,1]^d`.
    pub fn full(dim: usize) -> Self {
        BoxRegion::new(
            dim,
            vec![vec![(ExactRational::zero(), ExactRational::one()); dim]],
        )
        .expect("unit cube is a valid region")
    }

    /// A single point as a degenerate box.
    pub fn single_point(coords: Vec<ExactRational>) -> Result<Self, Error> {
        let dim = coords.len();
        BoxRegion::new(dim, vec![coords.into_iter().map(|c| (c.clone(), c)).collect()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[Vec<(ExactRational, ExactRational)>] {
        &self.boxes
    }

    /// Whether a point of `[0,1]^d` lies in some box of the region.
    pub fn contains(&self, point: &[ExactRational]) -> Result<bool, Error> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        Ok(self.boxes.iter().any(|b| {
            b.iter()
                .zip(point)
                .all(|((lo, hi), t)| lo <= t && t <= hi)
        }))
    }
}

#[derive(Deserialize)]
struct BoxRegionRaw {
    dim: usize,
    boxes: Vec<Vec<(ExactRational, ExactRational)>>,
}

impl<'de> Deserialize<'de> for BoxRegion {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BoxRegionRaw::deserialize(deserializer)?;
        BoxRegion::new(raw.dim, raw.boxes).map_err(serde::de::Error::custom)
    }
}

/// Membership in the pullback `Y = Q⁻¹(X)`: true iff `q_kd(p)` lies in the
/// region.
pub fn member_y(p: &PointKd, region: &BoxRegion) -> Result<bool, Error> {
    region.contains(&q_kd(p))
}

/// Joins two points of the same component of `K^d` by one path per
/// coordinate, all on a common parameter. Fails on the first coordinate whose
/// components differ, carrying that coordinate's separation witness.
pub fn path_kd(p: &PointKd, q: &PointKd) -> Result<Vec<PLPath>, Error> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    let mut paths = Vec::with_capacity(p.dim());
    for (i, (a, b)) in p.coords().iter().zip(q.coords()).enumerate() {
        match path(a, b) {
            Ok(pl) => paths.push(pl),
            Err(Error::DifferentComponents(witness)) => {
                return Err(Error::DifferentComponentsAt {
                    coordinate: i,
                    witness,
                });
            }
            Err(other) => return Err(other),
        }
    }
    Ok(paths)
}

/// The product fiber `Q⁻¹(t)`: one `fiber_k` description per coordinate.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProductFiber {
    pub factors: Vec<FiberK>,
}

impl ProductFiber {
    pub fn contains(&self, p: &PointKd) -> bool {
        self.factors.len() == p.dim()
            && self
                .factors
                .iter()
                .zip(p.coords())
                .all(|(f, c)| f.contains(c))
    }
}

/// Componentwise fibers; their product is the compact fiber of `Q` over `t`.
pub fn fiber_kd(t: &[ExactRational]) -> ProductFiber {
    ProductFiber {
        factors: t.iter().map(fiber_k).collect(),
    }
}

/// One sampled point of the pullback in a verification report.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SampleOutcome {
    pub target: Vec<ExactRational>,
    pub point: PointKd,
    pub member: bool,
}

/// A cross-fiber separation recorded in a verification report.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CrossWitness {
    pub coordinate: usize,
    pub witness: SeparationWitness,
}

/// Sampled verification that `Y = Q⁻¹(X)` realizes `X`: membership of lifted
/// samples, joinability within fibers, and certified separation across
/// fibers.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RealizeReport {
    pub dim: usize,
    pub samples: usize,
    pub membership_agreements: usize,
    pub within_fiber_pairs_joined: usize,
    pub cross_fiber_pairs_total: usize,
    pub cross_fiber_pairs_separated: usize,
    pub outcomes: Vec<SampleOutcome>,
    pub cross_witnesses: Vec<CrossWitness>,
}

fn random_unit_rational(rng: &mut ChaCha8Rng) -> ExactRational {
    ExactRational::new(rng.gen_range(0..=1024), 1024).expect("dyadic in range")
}

fn random_in_interval(
    rng: &mut ChaCha8Rng,
    lo: &ExactRational,
    hi: &ExactRational,
) -> ExactRational {
    let offset = random_unit_rational(rng);
    ExactRational::from_ratio(lo.ratio() + (hi.ratio() - lo.ratio()) * offset.ratio())
        .expect("convex combination stays inside [0,1]")
}

/// A point of the fiber, perturbed by the rng within each factor.
fn sample_fiber_point(rng: &mut ChaCha8Rng, fiber: &ProductFiber) -> PointKd {
    let coords = fiber
        .factors
        .iter()
        .map(|factor| match factor {
            FiberK::Vertical { x } => {
                PointK::new(x.clone(), random_unit_rational(rng)).expect("vertical fiber")
            }
            FiberK::GapArc { gap } => match rng.gen_range(0..3u8) {
                0 => PointK::new(gap.left().clone(), random_unit_rational(rng))
                    .expect("endpoint fiber"),
                1 => PointK::new(gap.right().clone(), random_unit_rational(rng))
                    .expect("endpoint fiber"),
                _ => {
                    let x = random_in_interval(rng, gap.left(), gap.right());
                    if gap.contains_open(&x) {
                        PointK::new(x, bridge_height(gap.parity())).expect("bridge point")
                    } else {
                        // Landed on an endpoint of the closure.
                        PointK::new(x, random_unit_rational(rng)).expect("endpoint fiber")
                    }
                }
            },
        })
        .collect();
    PointKd::new(coords).expect("fiber has positive dimension")
}

/// Samples the pullback over `region` and checks the finitely checkable
/// aspects of the realization: every lift lands back in the region, points of
/// one fiber are joinable, and points of distinct fibers separate with
/// witnesses.
pub fn realize_report(
    region: &BoxRegion,
    samples: usize,
    seed: u64,
) -> Result<RealizeReport, Error> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<Vec<ExactRational>> = Vec::with_capacity(samples);
    for _ in 0..samples {
        let b = &region.boxes()[rng.gen_range(0..region.boxes().len())];
        targets.push(
            b.iter()
                .map(|(lo, hi)| random_in_interval(&mut rng, lo, hi))
                .collect(),
        );
    }

    let mut outcomes = Vec::with_capacity(samples);
    let mut membership_agreements = 0usize;
    let mut within_joined = 0usize;
    for t in &targets {
        let fiber = fiber_kd(t);
        let p = sample_fiber_point(&mut rng, &fiber);
        let q = sample_fiber_point(&mut rng, &fiber);
        let member = member_y(&p, region)?;
        let direct = region.contains(t)?;
        if member == direct && member {
            membership_agreements += 1;
        }
        if path_kd(&p, &q).is_ok() {
            within_joined += 1;
        }
        outcomes.push(SampleOutcome {
            target: t.clone(),
            point: p,
            member,
        });
    }

    let mut cross_total = 0usize;
    let mut cross_separated = 0usize;
    let mut cross_witnesses = Vec::new();
    for window in targets.windows(2) {
        if window[0] == window[1] {
            continue;
        }
        cross_total += 1;
        let p = sample_fiber_point(&mut rng, &fiber_kd(&window[0]));
        let q = sample_fiber_point(&mut rng, &fiber_kd(&window[1]));
        match path_kd(&p, &q) {
            Err(Error::DifferentComponentsAt {
                coordinate,
                witness,
            }) => {
                cross_separated += 1;
                cross_witnesses.push(CrossWitness {
                    coordinate,
                    witness,
                });
            }
            _ => {}
        }
    }

    Ok(RealizeReport {
        dim: region.dim(),
        samples,
        membership_agreements,
        within_fiber_pairs_joined: within_joined,
        cross_fiber_pairs_total: cross_total,
        cross_fiber_pairs_separated: cross_separated,
        outcomes,
        cross_witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space_k::{component_of, same_component};

    fn rational(n: u64, d: u64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    fn point(xn: u64, xd: u64, yn: u64, yd: u64) -> PointK {
        PointK::new(rational(xn, xd), rational(yn, yd)).unwrap()
    }

    #[test]
    fn q_kd_examples() {
        let p = PointKd::new(vec![point(1, 2, 1, 1)]).unwrap();
        assert_eq!(q_kd(&p), vec![rational(1, 2)]);

        let p = PointKd::new(vec![point(1, 2, 1, 1), point(0, 1, 0, 1)]).unwrap();
        assert_eq!(q_kd(&p), vec![rational(1, 2), rational(0, 1)]);

        let p = PointKd::new(vec![
            point(1, 4, 1, 2),
            point(1, 4, 9, 10),
            point(1, 1, 0, 1),
        ])
        .unwrap();
        assert_eq!(
            q_kd(&p),
            vec![rational(1, 3), rational(1, 3), rational(1, 1)]
        );
    }

    #[test]
    fn member_y_examples() {
        let full = BoxRegion::full(2);
        let p = PointKd::new(vec![point(1, 2, 1, 1), point(0, 1, 0, 1)]).unwrap();
        assert!(member_y(&p, &full).unwrap());

        let single = BoxRegion::single_point(vec![rational(1, 2)]).unwrap();
        let yes = PointKd::new(vec![point(1, 2, 1, 1)]).unwrap();
        let no = PointKd::new(vec![point(0, 1, 0, 1)]).unwrap();
        assert!(member_y(&yes, &single).unwrap());
        assert!(!member_y(&no, &single).unwrap());

        let region = BoxRegion::new(
            2,
            vec![vec![
                (rational(0, 1), rational(1, 3)),
                (rational(1, 2), rational(1, 1)),
            ]],
        )
        .unwrap();
        let p = PointKd::new(vec![point(1, 4, 0, 1), point(2, 3, 1, 1)]).unwrap();
        assert_eq!(q_kd(&p), vec![rational(1, 3), rational(1, 2)]);
        assert!(member_y(&p, &region).unwrap());

        assert_eq!(
            member_y(&yes, &region),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn region_validation() {
        assert_eq!(BoxRegion::new(1, vec![]), Err(Error::EmptyRegion));
        assert_eq!(
            BoxRegion::new(1, vec![vec![(rational(1, 2), rational(1, 3))]]),
            Err(Error::InvalidBox { axis: 0 })
        );
        assert!(matches!(
            BoxRegion::new(2, vec![vec![(rational(0, 1), rational(1, 2))]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn path_kd_examples() {
        let p = PointKd::new(vec![point(1, 4, 1, 2), point(1, 4, 1, 2)]).unwrap();
        let paths = path_kd(&p, &p).unwrap();
        assert!(paths.iter().all(|pl| pl.vertices().len() == 1));

        let p = PointKd::new(vec![point(1, 3, 0, 1), point(0, 1, 0, 1)]).unwrap();
        let q = PointKd::new(vec![point(2, 3, 1, 1), point(0, 1, 1, 1)]).unwrap();
        let paths = path_kd(&p, &q).unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths[0].vertices().len() <= 4 && paths[0].vertices().len() >= 3);
        assert_eq!(paths[1].vertices().len(), 2);

        // Coordinate 2 (index 1) differs in component: witness reported there.
        let p = PointKd::new(vec![point(1, 3, 0, 1), point(0, 1, 0, 1)]).unwrap();
        let q = PointKd::new(vec![point(2, 3, 1, 1), point(1, 1, 1, 1)]).unwrap();
        match path_kd(&p, &q) {
            Err(Error::DifferentComponentsAt {
                coordinate,
                witness,
            }) => {
                assert_eq!(coordinate, 1);
                assert_eq!(witness.odd.left(), &rational(1, 3));
            }
            other => panic!("expected coordinate witness, got {other:?}"),
        }
    }

    #[test]
    fn path_kd_succeeds_iff_q_kd_agrees() {
        let points = [
            PointKd::new(vec![point(1, 3, 0, 1), point(0, 1, 1, 2)]).unwrap(),
            PointKd::new(vec![point(2, 3, 1, 1), point(0, 1, 0, 1)]).unwrap(),
            PointKd::new(vec![point(1, 2, 1, 1), point(1, 4, 1, 3)]).unwrap(),
            PointKd::new(vec![point(1, 4, 0, 1), point(1, 4, 1, 1)]).unwrap(),
        ];
        for p in &points {
            for q in &points {
                let same = q_kd(p) == q_kd(q);
                assert_eq!(path_kd(p, q).is_ok(), same);
                let componentwise = p
                    .coords()
                    .iter()
                    .zip(q.coords())
                    .all(|(a, b)| same_component(a, b));
                assert_eq!(same, componentwise);
            }
        }
    }

    #[test]
    fn fiber_kd_examples() {
        let fiber = fiber_kd(&[ExactRational::zero(), ExactRational::zero()]);
        assert_eq!(fiber.factors.len(), 2);
        for f in &fiber.factors {
            assert_eq!(
                f,
                &FiberK::Vertical {
                    x: ExactRational::zero()
                }
            );
        }

        let fiber = fiber_kd(&[rational(1, 2), rational(1, 3)]);
        assert!(matches!(fiber.factors[0], FiberK::GapArc { .. }));
        assert_eq!(
            fiber.factors[1],
            FiberK::Vertical { x: rational(1, 4) }
        );
    }

    #[test]
    fn product_fiber_law_by_sampling() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = vec![rational(1, 2), rational(2, 5), rational(3, 4)];
        let fiber = fiber_kd(&t);
        for _ in 0..50 {
            let p = sample_fiber_point(&mut rng, &fiber);
            assert!(fiber.contains(&p));
            assert_eq!(q_kd(&p), t);
            for (factor, coord) in fiber.factors.iter().zip(p.coords()) {
                assert!(factor.contains(coord));
            }
        }
    }

    #[test]
    fn monotone_invariance_per_axis() {
        let low = point(1, 4, 0, 1);
        let high = point(2, 3, 1, 1);
        assert!(low.x() <= high.x());
        let base = point(0, 1, 0, 1);
        let p = PointKd::new(vec![base.clone(), low]).unwrap();
        let q = PointKd::new(vec![base, high]).unwrap();
        assert!(q_kd(&p)[1] <= q_kd(&q)[1]);
        assert_eq!(q_kd(&p)[0], q_kd(&q)[0]);
    }

    #[test]
    fn realize_report_full_interval() {
        let report = realize_report(&BoxRegion::full(1), 10, 0).unwrap();
        assert_eq!(report.samples, 10);
        assert_eq!(report.membership_agreements, 10);
        assert_eq!(report.within_fiber_pairs_joined, 10);
    }

    #[test]
    fn realize_report_point_and_pair() {
        let origin = BoxRegion::single_point(vec![ExactRational::zero()]).unwrap();
        let report = realize_report(&origin, 8, 1).unwrap();
        assert_eq!(report.membership_agreements, 8);
        for outcome in &report.outcomes {
            assert_eq!(
                component_of(&outcome.point.coords()[0]),
                component_of(&PointK::new(ExactRational::zero(), ExactRational::zero()).unwrap())
            );
        }

        let two_points = BoxRegion::new(
            1,
            vec![
                vec![(ExactRational::zero(), ExactRational::zero())],
                vec![(ExactRational::one(), ExactRational::one())],
            ],
        )
        .unwrap();
        let report = realize_report(&two_points, 16, 2).unwrap();
        assert_eq!(report.membership_agreements, 16);
        assert_eq!(
            report.cross_fiber_pairs_separated,
            report.cross_fiber_pairs_total
        );
        assert!(report.cross_fiber_pairs_total > 0);
        for cw in &report.cross_witnesses {
            assert_eq!(cw.coordinate, 0);
        }
    }

    #[test]
    fn region_serde_schema() {
        let region = BoxRegion::new(
            2,
            vec![vec![
                (rational(0, 1), rational(1, 3)),
                (rational(1, 2), rational(1, 1)),
            ]],
        )
        .unwrap();
        let json = serde_json::to_string(&region).unwrap();
        assert_eq!(json, r#"{"dim":2,"boxes":[[["0","1/3"],["1/2","1"]]]}"#);
        let back: BoxRegion = serde_json::from_str(&json).unwrap();
        assert_eq!(back, region);
        assert!(serde_json::from_str::<BoxRegion>(r#"{"dim":1,"boxes":[]}"#).is_err());
    }
}
