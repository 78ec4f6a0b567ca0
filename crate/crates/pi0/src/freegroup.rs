//! Word-level free groups over rational letters.
//!
//! The underlying group of the free Markov topological group on a space is
//! the free group on its points; the Graev variant additionally kills the
//! basepoint letter. Words here carry letters that are rational vectors in
//! `[0,1]^d` — the letters of interest arise as `q_kd` values of loop
//! traversal points, so a reduced word is the image of a loop class in the
//! wedge `W(Y)` under the component-counting isomorphism. The contraction
//! family `t ↦ contract(w, t)` scales every letter toward the origin and
//! witnesses that each element lies in the identity's path component.

use serde::{Deserialize, Serialize};

use crate::product::{q_kd, PointKd};
use crate::ternary::ExactRational;
use crate::Error;

/// Exponent of one syllable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match i8::deserialize(deserializer)? {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            other => Err(serde::de::Error::custom(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// A generator: a rational vector in `[0,1]^d`. Equality is coordinatewise
/// value equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Letter {
    coords: Vec<ExactRational>,
}

impl Letter {
    pub fn new(coords: Vec<ExactRational>) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(Letter { coords })
    }

    /// The origin of `[0,1]^d`, the Graev basepoint of the contraction
    /// family.
    pub fn origin(dim: usize) -> Self {
        Letter {
            coords: vec![ExactRational::zero(); dim.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExactRational] {
        &self.coords
    }

    /// Scales every coordinate by `t ∈ [0,1]`.
    pub fn scale(&self, t: &ExactRational) -> Letter {
        Letter {
            coords: self
                .coords
                .iter()
                .map(|c| {
                    ExactRational::from_ratio(c.ratio() * t.ratio())
                        .expect("product of unit-interval values")
                })
                .collect(),
        }
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coords = Vec::<ExactRational>::deserialize(deserializer)?;
        Letter::new(coords).map_err(serde::de::Error::custom)
    }
}

/// A finite product of signed letters. No reduction is applied at
/// construction; [`reduce`] computes the free normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct GroupWord {
    syllables: Vec<(Letter, Sign)>,
}

impl GroupWord {
    pub fn new(syllables: Vec<(Letter, Sign)>) -> Result<Self, Error> {
        let mut dims = syllables.iter().map(|(l, _)| l.dim());
        if let Some(first) = dims.next() {
            if dims.any(|d| d != first) {
                return Err(Error::InvalidPoint);
            }
        }
        Ok(GroupWord { syllables })
    }

    pub fn empty() -> Self {
        GroupWord {
            syllables: Vec::new(),
        }
    }

    pub fn syllables(&self) -> &[(Letter, Sign)] {
        &self.syllables
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter dimension, when the word is nonempty.
    pub fn dim(&self) -> Option<usize> {
        self.syllables.first().map(|(l, _)| l.dim())
    }

    /// Concatenation as group multiplication, without reduction.
    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord, Error> {
        let mut syllables = self.syllables.clone();
        syllables.extend(other.syllables.iter().cloned());
        GroupWord::new(syllables)
    }

    /// The formal inverse: reversed syllables with flipped signs.
    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|(l, s)| (l.clone(), s.flip()))
                .collect(),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.syllables
            .windows(2)
            .all(|w| !(w[0].0 == w[1].0 && w[0].1 == w[1].1.flip()))
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let syllables = Vec::<(Letter, Sign)>::deserialize(deserializer)?;
        GroupWord::new(syllables).map_err(serde::de::Error::custom)
    }
}

/// Free reduction to the unique normal form: adjacent inverse pairs cancel
/// until none remain. Stack-based, single pass.
pub fn reduce(word: &GroupWord) -> GroupWord {
    let mut stack: Vec<(Letter, Sign)> = Vec::with_capacity(word.syllable_count());
    for (letter, sign) in word.syllables() {
        match stack.last() {
            Some((top, top_sign)) if top == letter && *top_sign == sign.flip() => {
                stack.pop();
            }
            _ => stack.push((letter.clone(), *sign)),
        }
    }
    GroupWord { syllables: stack }
}

/// Graev normal form: delete every syllable whose letter equals the
/// basepoint, then freely reduce. The result represents the image in the free
/// group on the letters other than the basepoint.
pub fn graev_reduce(word: &GroupWord, basepoint: &Letter) -> GroupWord {
    let kept = GroupWord {
        syllables: word
            .syllables()
            .iter()
            .filter(|(l, _)| l != basepoint)
            .cloned()
            .collect(),
    };
    reduce(&kept)
}

/// A formal loop in the wedge `W(K^d)`: a finite sequence of full passes
/// around the circles indexed by points of `K^d`, each with an orientation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct CombinatorialLoop {
    traversals: Vec<(PointKd, Sign)>,
}

impl CombinatorialLoop {
    pub fn new(traversals: Vec<(PointKd, Sign)>) -> Self {
        CombinatorialLoop { traversals }
    }

    pub fn traversals(&self) -> &[(PointKd, Sign)] {
        &self.traversals
    }
}

impl<'de> Deserialize<'de> for CombinatorialLoop {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(CombinatorialLoop::new(Vec::deserialize(deserializer)?))
    }
}

/// The image of a loop class in the free group on the path components: each
/// traversal contributes the letter `q_kd(point)` with its orientation, and
/// the word is freely reduced. Depends only on the components of the
/// traversal points.
pub fn loop_image(lp: &CombinatorialLoop) -> Result<GroupWord, Error> {
    let mut dims = lp.traversals().iter().map(|(p, _)| p.dim());
    if let Some(first) = dims.next() {
        if dims.any(|d| d != first) {
            return Err(Error::InvalidPoint);
        }
    }
    let syllables = lp
        .traversals()
        .iter()
        .map(|(p, sign)| {
            Letter::new(q_kd(p)).map(|letter| (letter, *sign))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(reduce(&GroupWord { syllables }))
}

/// The class of a loop in the fundamental group of the suspension: the Graev
/// reduction of its Markov image with respect to the basepoint component.
pub fn suspension_image(
    lp: &CombinatorialLoop,
    basepoint_component: &Letter,
) -> Result<GroupWord, Error> {
    Ok(graev_reduce(&loop_image(lp)?, basepoint_component))
}

/// One stage of the contraction family on `F_G([0,1]^d, 0)`: every letter is
/// scaled by `t`, then the word is Graev-reduced at the origin.
///
/// `contract(w, 1)` is the Graev normal form of `w`; `contract(w, 0)` is the
/// empty word; for `t > 0` scaling is injective on letters, so the syllable
/// count is independent of `t`.
pub fn contract(word: &GroupWord, t: &ExactRational) -> GroupWord {
    let dim = match word.dim() {
        Some(d) => d,
        None => return GroupWord::empty(),
    };
    let scaled = GroupWord {
        syllables: word
            .syllables()
            .iter()
            .map(|(l, s)| (l.scale(t), *s))
            .collect(),
    };
    graev_reduce(&scaled, &Letter::origin(dim))
}

/// Multiplies `w` on the right by `Π gᵢ · basepointˢⁱ · gᵢ⁻¹`, unreduced.
/// The Graev reduction of the result equals the Graev reduction of `w`, which
/// makes this the kernel-membership probe for the suspension quotient.
pub fn insert_normal_closure(
    word: &GroupWord,
    basepoint: &Letter,
    conjugators: &[GroupWord],
    signs: &[Sign],
) -> Result<GroupWord, Error> {
    if conjugators.len() != signs.len() {
        return Err(Error::LengthMismatch);
    }
    let mut result = word.clone();
    for (g, sign) in conjugators.iter().zip(signs) {
        let middle = GroupWord::new(vec![(basepoint.clone(), *sign)])?;
        result = result.concat(g)?.concat(&middle)?.concat(&g.inverse())?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space_k::PointK;

    fn rational(n: u64, d: u64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    fn letter(n: u64, d: u64) -> Letter {
        Letter::new(vec![rational(n, d)]).unwrap()
    }

    fn word(syllables: Vec<(Letter, Sign)>) -> GroupWord {
        GroupWord::new(syllables).unwrap()
    }

    /// Scan-until-fixpoint reduction oracle, independent of the stack route.
    fn reduce_oracle(w: &GroupWord) -> GroupWord {
        let mut syllables: Vec<(Letter, Sign)> = w.syllables().to_vec();
        loop {
            let mut changed = false;
            let mut out: Vec<(Letter, Sign)> = Vec::with_capacity(syllables.len());
            let mut i = 0;
            while i < syllables.len() {
                if i + 1 < syllables.len()
                    && syllables[i].0 == syllables[i + 1].0
                    && syllables[i].1 == syllables[i + 1].1.flip()
                {
                    i += 2;
                    changed = true;
                } else {
                    out.push(syllables[i].clone());
                    i += 1;
                }
            }
            syllables = out;
            if !changed {
                return GroupWord { syllables };
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let a = letter(1, 2);
        let b = letter(1, 3);
        let w = word(vec![(a.clone(), Sign::Pos), (a.clone(), Sign::Neg)]);
        assert!(reduce(&w).is_empty());

        let w = word(vec![
            (a.clone(), Sign::Pos),
            (b.clone(), Sign::Pos),
            (b.clone(), Sign::Neg),
            (a.clone(), Sign::Pos),
        ]);
        assert_eq!(
            reduce(&w),
            word(vec![(a.clone(), Sign::Pos), (a, Sign::Pos)])
        );
    }

    #[test]
    fn reduce_matches_oracle_and_is_idempotent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let alphabet: Vec<Letter> = (0..5).map(|i| letter(i, 7)).collect();
        for _ in 0..300 {
            let syllables: Vec<(Letter, Sign)> = (0..rng.gen_range(0..50))
                .map(|_| {
                    let l = alphabet[rng.gen_range(0..alphabet.len())].clone();
                    let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                    (l, s)
                })
                .collect();
            let w = word(syllables);
            let reduced = reduce(&w);
            assert_eq!(reduced, reduce_oracle(&w));
            assert!(reduced.is_reduced());
            assert_eq!(reduce(&reduced), reduced);
        }
    }

    #[test]
    fn reduce_ignores_inserted_cancelling_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let alphabet: Vec<Letter> = (0..4).map(|i| letter(i, 5)).collect();
        for _ in 0..100 {
            let base: Vec<(Letter, Sign)> = (0..30)
                .map(|_| {
                    let l = alphabet[rng.gen_range(0..alphabet.len())].clone();
                    let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                    (l, s)
                })
                .collect();
            let mut padded = base.clone();
            for _ in 0..10 {
                let l = alphabet[rng.gen_range(0..alphabet.len())].clone();
                let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                let at = rng.gen_range(0..=padded.len());
                padded.splice(at..at, [(l.clone(), s), (l, s.flip())]);
            }
            assert_eq!(reduce(&word(padded)), reduce(&word(base)));
        }
    }

    #[test]
    fn graev_examples() {
        let origin = letter(0, 1);
        let a = letter(1, 2);
        let b = letter(1, 3);

        let w = word(vec![(origin.clone(), Sign::Pos)]);
        assert!(graev_reduce(&w, &origin).is_empty());

        let w = word(vec![
            (a.clone(), Sign::Pos),
            (origin.clone(), Sign::Pos),
            (a.clone(), Sign::Neg),
            (b.clone(), Sign::Pos),
        ]);
        assert_eq!(
            graev_reduce(&w, &origin),
            word(vec![(b.clone(), Sign::Pos)])
        );

        // A word avoiding the basepoint just reduces.
        let w = word(vec![(a.clone(), Sign::Pos), (b, Sign::Neg)]);
        assert_eq!(graev_reduce(&w, &origin), reduce(&w));
        assert!(graev_reduce(&w, &origin)
            .syllables()
            .iter()
            .all(|(l, _)| l != &origin));
    }

    #[test]
    fn graev_is_a_word_level_homomorphism() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let origin = letter(0, 1);
        let alphabet: Vec<Letter> = (0..4).map(|i| letter(i, 4)).collect();
        let random_word = |rng: &mut rand_chacha::ChaCha8Rng| {
            word(
                (0..rng.gen_range(0..20))
                    .map(|_| {
                        let l = alphabet[rng.gen_range(0..alphabet.len())].clone();
                        let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                        (l, s)
                    })
                    .collect(),
            )
        };
        for _ in 0..100 {
            let u = random_word(&mut rng);
            let v = random_word(&mut rng);
            let direct = graev_reduce(&u.concat(&v).unwrap(), &origin);
            let staged = graev_reduce(
                &graev_reduce(&u, &origin)
                    .concat(&graev_reduce(&v, &origin))
                    .unwrap(),
                &origin,
            );
            assert_eq!(direct, staged);
        }
    }

    fn kd_point(coords: Vec<(u64, u64, u64, u64)>) -> PointKd {
        PointKd::new(
            coords
                .into_iter()
                .map(|(xn, xd, yn, yd)| {
                    PointK::new(rational(xn, xd), rational(yn, yd)).unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn loop_image_examples() {
        // Both traversal points lie in the level-1 arc: letters cancel.
        let lp = CombinatorialLoop::new(vec![
            (kd_point(vec![(1, 3, 0, 1)]), Sign::Pos),
            (kd_point(vec![(2, 3, 1, 1)]), Sign::Neg),
        ]);
        assert!(loop_image(&lp).unwrap().is_empty());

        let lp = CombinatorialLoop::new(vec![(kd_point(vec![(0, 1, 0, 1)]), Sign::Pos)]);
        assert_eq!(
            loop_image(&lp).unwrap(),
            word(vec![(letter(0, 1), Sign::Pos)])
        );

        // Letters a, b, a with exponents +, +, −: already reduced.
        let lp = CombinatorialLoop::new(vec![
            (kd_point(vec![(0, 1, 0, 1)]), Sign::Pos),
            (kd_point(vec![(1, 2, 1, 1)]), Sign::Pos),
            (kd_point(vec![(0, 1, 1, 1)]), Sign::Neg),
        ]);
        let img = loop_image(&lp).unwrap();
        assert_eq!(
            img,
            word(vec![
                (letter(0, 1), Sign::Pos),
                (letter(1, 2), Sign::Pos),
                (letter(0, 1), Sign::Neg),
            ])
        );

        // Mixed dimensions are rejected.
        let lp = CombinatorialLoop::new(vec![
            (kd_point(vec![(0, 1, 0, 1)]), Sign::Pos),
            (kd_point(vec![(0, 1, 0, 1), (1, 3, 1, 2)]), Sign::Pos),
        ]);
        assert_eq!(loop_image(&lp), Err(Error::InvalidPoint));
    }

    #[test]
    fn loop_image_depends_only_on_components() {
        // Swap each traversal point for another point of its component.
        let lp1 = CombinatorialLoop::new(vec![
            (kd_point(vec![(1, 3, 0, 1), (0, 1, 0, 1)]), Sign::Pos),
            (kd_point(vec![(1, 4, 1, 2), (1, 4, 1, 2)]), Sign::Neg),
        ]);
        let lp2 = CombinatorialLoop::new(vec![
            (kd_point(vec![(1, 2, 1, 1), (0, 1, 9, 10)]), Sign::Pos),
            (kd_point(vec![(1, 4, 0, 1), (1, 4, 1, 1)]), Sign::Neg),
        ]);
        assert_eq!(loop_image(&lp1).unwrap(), loop_image(&lp2).unwrap());
    }

    #[test]
    fn suspension_examples() {
        let origin = letter(0, 1);
        // A loop at a point of the basepoint component dies.
        let lp = CombinatorialLoop::new(vec![(kd_point(vec![(0, 1, 1, 2)]), Sign::Pos)]);
        assert!(suspension_image(&lp, &origin).unwrap().is_empty());

        // Markov image [(0,+1),(a,+1)] with basepoint 0 → [(a,+1)].
        let lp = CombinatorialLoop::new(vec![
            (kd_point(vec![(0, 1, 0, 1)]), Sign::Pos),
            (kd_point(vec![(1, 4, 1, 2)]), Sign::Pos),
        ]);
        assert_eq!(
            suspension_image(&lp, &origin).unwrap(),
            word(vec![(letter(1, 3), Sign::Pos)])
        );
    }

    #[test]
    fn contract_examples() {
        let w = word(vec![
            (letter(1, 2), Sign::Pos),
            (letter(1, 4), Sign::Neg),
        ]);
        assert!(contract(&w, &ExactRational::zero()).is_empty());
        assert_eq!(
            contract(&w, &rational(1, 2)),
            word(vec![
                (letter(1, 4), Sign::Pos),
                (letter(1, 8), Sign::Neg),
            ])
        );
        assert_eq!(
            contract(&w, &ExactRational::one()),
            graev_reduce(&w, &letter(0, 1))
        );
    }

    #[test]
    fn contraction_family_properties() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let origin = letter(0, 1);
        for _ in 0..100 {
            let syllables: Vec<(Letter, Sign)> = (0..rng.gen_range(0..25))
                .map(|_| {
                    let l = letter(rng.gen_range(0..8), 8);
                    let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                    (l, s)
                })
                .collect();
            let w = word(syllables);
            assert!(contract(&w, &ExactRational::zero()).is_empty());
            let at_one = contract(&w, &ExactRational::one());
            assert_eq!(at_one, graev_reduce(&w, &origin));
            for (n, d) in [(1u64, 4u64), (1, 2), (3, 4)] {
                assert_eq!(
                    contract(&w, &rational(n, d)).syllable_count(),
                    at_one.syllable_count()
                );
            }
        }
    }

    #[test]
    fn normal_closure_examples() {
        let origin = letter(0, 1);
        let w = word(vec![(letter(1, 2), Sign::Pos)]);
        assert_eq!(
            insert_normal_closure(&w, &origin, &[], &[]).unwrap(),
            w
        );

        let g = word(vec![(letter(1, 3), Sign::Pos), (letter(1, 2), Sign::Neg)]);
        let conj = insert_normal_closure(&GroupWord::empty(), &origin, &[g], &[Sign::Pos])
            .unwrap();
        assert_eq!(conj.syllable_count(), 5);
        assert!(graev_reduce(&conj, &origin).is_empty());

        assert_eq!(
            insert_normal_closure(&w, &origin, &[GroupWord::empty()], &[]),
            Err(Error::LengthMismatch)
        );
    }

    #[test]
    fn graev_reduction_invariant_under_normal_closure() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let origin = letter(0, 1);
        let random_word = |rng: &mut rand_chacha::ChaCha8Rng, max: usize| {
            word(
                (0..rng.gen_range(0..max))
                    .map(|_| {
                        let l = letter(rng.gen_range(0..6), 6);
                        let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                        (l, s)
                    })
                    .collect(),
            )
        };
        for _ in 0..50 {
            let w = random_word(&mut rng, 20);
            let conjugators: Vec<GroupWord> =
                (0..10).map(|_| random_word(&mut rng, 6)).collect();
            let signs: Vec<Sign> = (0..10)
                .map(|_| if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg })
                .collect();
            let inserted = insert_normal_closure(&w, &origin, &conjugators, &signs).unwrap();
            assert_eq!(
                graev_reduce(&inserted, &origin),
                graev_reduce(&w, &origin)
            );
        }
    }

    #[test]
    fn word_serde_schema() {
        let w = word(vec![
            (letter(1, 2), Sign::Pos),
            (letter(1, 4), Sign::Neg),
        ]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"[[["1/2"],1],[["1/4"],-1]]"#);
        let back: GroupWord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        // Mixed dimensions rejected.
        assert!(serde_json::from_str::<GroupWord>(r#"[[["1/2"],1],[["1/4","0"],1]]"#).is_err());
        assert!(serde_json::from_str::<GroupWord>(r#"[[["1/2"],2]]"#).is_err());
    }
}
