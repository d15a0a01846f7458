//! Homology classes on blow-ups of the projective plane, the Cremona
//! involution, a rewrite-based evaluator for genus-0 invariants, and the
//! reduction of classes on the rational elliptic surface to `e9 + iF`.
//!
//! A class `(d; a_1, ..., a_l)` stands for `d h - sum a_i e_i`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::admseq::AdmissibleSequence;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlowupClass {
    pub d: i64,
    pub alphas: Vec<i64>,
}

impl BlowupClass {
    pub fn new(d: i64, alphas: Vec<i64>) -> Self {
        Self { d, alphas }
    }

    /// Zero multiplicities removed, the rest sorted non-increasing.
    pub fn canonical(&self) -> Self {
        let mut alphas: Vec<i64> = self.alphas.iter().copied().filter(|&a| a != 0).collect();
        alphas.sort_by(|a, b| b.cmp(a));
        Self { d: self.d, alphas }
    }

    /// `3d - 1 - sum a_i`, the expected dimension of genus-0 curves in the
    /// class before point constraints.
    pub fn formal_dimension(&self) -> i64 {
        3 * self.d - 1 - self.alphas.iter().sum::<i64>()
    }

    fn padded(&self, len: usize) -> Self {
        let mut c = self.clone();
        if c.alphas.len() < len {
            c.alphas.resize(len, 0);
        }
        c
    }
}

impl fmt::Display for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.d)?;
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for BlowupClass {
    type Err = Error;

    /// Parses `"d;a1,a2,...,al"`; `"d;"` and `"d"` give no multiplicities.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("bad class {s:?}: {what}"));
        let (d, rest) = s.trim().split_once(';').unwrap_or((s.trim(), ""));
        let d = d
            .trim()
            .parse()
            .map_err(|_| bad("degree is not an integer"))?;
        let alphas = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|a| {
                    a.trim()
                        .parse()
                        .map_err(|_| bad("multiplicity is not an integer"))
                })
                .collect::<Result<_>>()?
        };
        Ok(Self { d, alphas })
    }
}

/// The Cremona involution based at points `i`, `j`, `k`:
/// `d -> 2d - a_i - a_j - a_k` and `a_i -> d - a_j - a_k` (and cyclically),
/// other multiplicities unchanged. Missing positions count as 0.
pub fn cremona_transform(c: &BlowupClass, i: usize, j: usize, k: usize) -> Result<BlowupClass> {
    if i == j || j == k || i == k {
        return Err(Error::IndicesNotDistinct(i, j, k));
    }
    let mut out = c.padded(i.max(j).max(k) + 1);
    let (d, ai, aj, ak) = (c.d, out.alphas[i], out.alphas[j], out.alphas[k]);
    out.d = 2 * d - ai - aj - ak;
    out.alphas[i] = d - aj - ak;
    out.alphas[j] = d - ai - ak;
    out.alphas[k] = d - ai - aj;
    Ok(out)
}

/// `(C.C, -K.C) = (d^2 - sum a_i^2, 3d - sum a_i)`. On the nine-point blow-up
/// the second entry is `F.C`.
pub fn pairing_data(c: &BlowupClass) -> (i64, i64) {
    let sq: i64 = c.alphas.iter().map(|a| a * a).sum();
    let sum: i64 = c.alphas.iter().sum();
    (c.d * c.d - sq, 3 * c.d - sum)
}

/// The class of the multiple cover labelled by `s`, with exceptional curves
/// ordered `e_0, e_1, e_-1, e_2, e_-2, ...`:
/// `(s_0; s_0 - 1, s_0 - s_1, s_0 - s_-1, s_1 - s_2, s_-1 - s_-2, ...)`,
/// running out to index `+-|s|` and with trailing zeros dropped.
pub fn class_from_sequence(s: &AdmissibleSequence) -> BlowupClass {
    let s0 = s.get(0) as i64;
    let reach = s.magnitude() as i64;
    let mut alphas = vec![s0 - 1];
    for n in 1..=reach {
        alphas.push(s.get(n - 1) as i64 - s.get(n) as i64);
        alphas.push(s.get(-(n - 1)) as i64 - s.get(-n) as i64);
    }
    while alphas.last() == Some(&0) {
        alphas.pop();
    }
    BlowupClass { d: s0, alphas }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvariantValue {
    Zero,
    One,
    /// The rewrite rules alone did not settle the value within the step budget.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalStep {
    /// Class after dropping zeros and sorting.
    Canonical(BlowupClass),
    /// Multiplicity-one points removed, each giving back one point constraint.
    DroppedOnes(usize),
    /// Padding added ahead of a Cremona move.
    Padded {
        ones: usize,
        zeros: usize,
    },
    Cremona(BlowupClass),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: InvariantValue,
    pub trace: Vec<EvalStep>,
}

pub fn evaluate_invariant(c: &BlowupClass, max_steps: usize) -> InvariantValue {
    trace_invariant(c, max_steps).value
}

/// Rewrites `c` with the elementary rules for genus-0 invariants of blown-up
/// planes until a rule fixes the value:
///
/// 1. a negative multiplicity gives 0, except `(0; -1)` which gives 1;
/// 2. a multiplicity of 1 is a point constraint and may be dropped;
/// 3. order of the points is irrelevant, and zero multiplicities vanish;
/// 4. the value is invariant under Cremona moves;
/// 5. `N(1) = 1`;
///
/// together with: negative degree or negative formal dimension gives 0.
///
/// Each round applies Cremona at the three largest multiplicities. With fewer
/// than three, the list is padded with 1s as far as the formal dimension
/// allows (each 1 uses up a constraint) and with 0s beyond that.
pub fn trace_invariant(c: &BlowupClass, max_steps: usize) -> Evaluation {
    let mut trace = Vec::new();
    let mut cur = c.clone();
    let done = |value, trace| Evaluation { value, trace };
    for _ in 0..max_steps {
        cur = cur.canonical();
        trace.push(EvalStep::Canonical(cur.clone()));

        if cur.alphas.iter().any(|&a| a < 0) {
            let value = if cur.d == 0 && cur.alphas == [-1] {
                InvariantValue::One
            } else {
                InvariantValue::Zero
            };
            return done(value, trace);
        }
        if cur.d < 0 || cur.formal_dimension() < 0 {
            return done(InvariantValue::Zero, trace);
        }

        let ones = cur.alphas.iter().filter(|&&a| a == 1).count();
        if ones > 0 {
            cur.alphas.retain(|&a| a != 1);
            trace.push(EvalStep::DroppedOnes(ones));
        }
        if cur.d == 1 && cur.alphas.is_empty() {
            return done(InvariantValue::One, trace);
        }

        let missing = 3usize.saturating_sub(cur.alphas.len());
        if missing > 0 {
            let ones = missing.min(cur.formal_dimension() as usize);
            cur.alphas.extend(std::iter::repeat_n(1, ones));
            cur.alphas.extend(std::iter::repeat_n(0, missing - ones));
            trace.push(EvalStep::Padded {
                ones,
                zeros: missing - ones,
            });
        }
        cur = cremona_transform(&cur, 0, 1, 2).expect("distinct indices");
        trace.push(EvalStep::Cremona(cur.clone()));
    }
    done(InvariantValue::Undetermined, trace)
}

/// `C = e9 + iF = (3i; i, i, i, i, i, i, i, i, i - 1)` on the rational
/// elliptic surface.
pub fn section_class(i: i64) -> BlowupClass {
    let mut alphas = vec![i; 9];
    alphas[8] = i - 1;
    BlowupClass { d: 3 * i, alphas }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    PadZeros(BlowupClass),
    Permute {
        /// `perm[new] = old` position of each multiplicity.
        perm: Vec<usize>,
        result: BlowupClass,
    },
    Cremona(BlowupClass),
}

impl ReductionStep {
    pub fn result(&self) -> &BlowupClass {
        match self {
            ReductionStep::PadZeros(c) | ReductionStep::Cremona(c) => c,
            ReductionStep::Permute { result, .. } => result,
        }
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::PadZeros(c) => write!(f, "pad     -> {c}"),
            ReductionStep::Permute { result, .. } => write!(f, "permute -> {result}"),
            ReductionStep::Cremona(c) => write!(f, "cremona -> {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// `i` in `e9 + iF`; for the genus-`g` count this is `n + g`.
    pub fibers: i64,
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    pub fn cremona_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ReductionStep::Cremona(_)))
            .count()
    }
}

/// Moves a nine-point class with `F.C = 1` to the form `e9 + iF` by sorting
/// and applying Cremona at the three largest multiplicities. Sorted, the
/// condition forces `a_1 + a_2 + a_3 >= d`, with equality only at `e9 + iF`;
/// otherwise the degree strictly drops.
pub fn reduce_to_section_class(c: &BlowupClass, max_steps: usize) -> Result<Reduction> {
    if c.alphas.len() > 9 {
        return Err(Error::Precondition(format!(
            "{c} has {} multiplicities, at most 9 allowed",
            c.alphas.len()
        )));
    }
    let (_, fc) = pairing_data(c);
    if fc != 1 {
        return Err(Error::Precondition(format!("F.C = {fc} != 1 for {c}")));
    }
    let mut steps = Vec::new();
    let mut cur = c.padded(9);
    if cur.alphas.len() != c.alphas.len() {
        steps.push(ReductionStep::PadZeros(cur.clone()));
    }
    for _ in 0..max_steps {
        let mut perm: Vec<usize> = (0..9).collect();
        perm.sort_by(|&x, &y| cur.alphas[y].cmp(&cur.alphas[x]));
        if perm.iter().enumerate().any(|(new, &old)| new != old) {
            cur.alphas = perm.iter().map(|&old| cur.alphas[old]).collect();
            steps.push(ReductionStep::Permute {
                perm,
                result: cur.clone(),
            });
        }
        let top: i64 = cur.alphas[..3].iter().sum();
        if top == cur.d {
            let i = cur.alphas[0];
            if cur != section_class(i) {
                return Err(Error::NonReducing(format!(
                    "stopped at {cur}, which is not e9 + iF"
                )));
            }
            return Ok(Reduction { fibers: i, steps });
        }
        let next = cremona_transform(&cur, 0, 1, 2)?;
        if next.d >= cur.d {
            return Err(Error::NonReducing(format!(
                "degree did not drop: {cur} -> {next}"
            )));
        }
        cur = next;
        steps.push(ReductionStep::Cremona(cur.clone()));
    }
    Err(Error::NonReducing(format!(
        "no section class within {max_steps} steps"
    )))
}

/// Applies `moves` random moves to `c`, each either a random permutation of
/// the multiplicities or a Cremona move at three random distinct points.
/// Returns every intermediate class, ending with the scrambled one.
pub fn scramble<R: Rng + ?Sized>(c: &BlowupClass, moves: usize, rng: &mut R) -> Vec<BlowupClass> {
    let mut path = vec![c.clone()];
    let mut cur = c.clone();
    let n = cur.alphas.len().max(3);
    cur = cur.padded(n);
    for _ in 0..moves {
        if rng.gen_bool(0.5) {
            cur.alphas.shuffle(rng);
        } else {
            let idx = rand::seq::index::sample(rng, n, 3);
            cur = cremona_transform(&cur, idx.index(0), idx.index(1), idx.index(2))
                .expect("sampled indices are distinct");
        }
        path.push(cur.clone());
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admseq::{enumerate_admissible, is_one_admissible};
    use proptest::prelude::{
        prop, prop_assert_eq, prop_assume, proptest, ProptestConfig, Strategy,
    };
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn class(s: &str) -> BlowupClass {
        s.parse().unwrap()
    }

    fn seq(lo: i64, values: &[i64]) -> AdmissibleSequence {
        AdmissibleSequence::new(lo, values).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let c = class("3;1,1,1,1,1,1,1,1,0");
        assert_eq!(c, section_class(1));
        assert_eq!(c.to_string(), "3;1,1,1,1,1,1,1,1,0");
        assert_eq!(class("1;"), BlowupClass::new(1, vec![]));
        assert_eq!(class("1"), BlowupClass::new(1, vec![]));
        assert!("x;1".parse::<BlowupClass>().is_err());
        assert!("1;1,,2".parse::<BlowupClass>().is_err());
    }

    #[test]
    fn cremona_examples() {
        let fixed = section_class(1);
        assert_eq!(cremona_transform(&fixed, 0, 1, 2).unwrap(), fixed);
        assert_eq!(
            cremona_transform(&class("1;1,1,0"), 0, 1, 2).unwrap(),
            class("0;0,0,-1")
        );
        assert_eq!(
            cremona_transform(&class("1;"), 0, 1, 2).unwrap(),
            class("2;1,1,1")
        );
        assert_eq!(
            cremona_transform(&fixed, 0, 0, 2),
            Err(Error::IndicesNotDistinct(0, 0, 2))
        );
        // positions other than i, j, k are untouched
        assert_eq!(
            cremona_transform(&class("5;1,2,3,4,5"), 4, 0, 2).unwrap(),
            class("1;-3,2,-1,4,1")
        );
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing_data(&class("1;")), (1, 3));
        for i in 0..8 {
            let c = section_class(i);
            assert_eq!(pairing_data(&c), (2 * i - 1, 1));
        }
    }

    #[test]
    fn class_from_sequence_examples() {
        assert_eq!(class_from_sequence(&seq(0, &[1])), class("1;0,1,1"));
        assert_eq!(class_from_sequence(&seq(0, &[1, 1])), class("1;0,0,1,1"));
        assert_eq!(class_from_sequence(&seq(0, &[3, 1])), class("3;2,2,3,1"));
        assert_eq!(
            class_from_sequence(&seq(-1, &[1, 2, 1])),
            class("2;1,1,1,1,1")
        );
    }

    #[test]
    fn sequence_classes_have_dimension_zero() {
        for a in 1..=7 {
            for s in enumerate_admissible(a) {
                let c = class_from_sequence(&s);
                assert_eq!(c.formal_dimension(), 0, "{s} -> {c}");
                assert_eq!(pairing_data(&c).1, 1);
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(evaluate_invariant(&class("1;"), 10), InvariantValue::One);
        assert_eq!(evaluate_invariant(&class("2;"), 10), InvariantValue::One);
        assert_eq!(evaluate_invariant(&class("0;-1"), 10), InvariantValue::One);
        assert_eq!(
            evaluate_invariant(&class("0;-1,-1"), 10),
            InvariantValue::Zero
        );
        assert_eq!(
            evaluate_invariant(&class("2;0,0,-1"), 10),
            InvariantValue::Zero
        );
        assert_eq!(evaluate_invariant(&class("-1;"), 10), InvariantValue::Zero);
        assert_eq!(
            evaluate_invariant(&class("1;1,1,1"), 10),
            InvariantValue::Zero
        );
        assert_eq!(
            evaluate_invariant(&class("3;2,2,3,1"), 10),
            InvariantValue::Zero
        );
        // N(3) = 12 is beyond the elementary rules
        assert_eq!(
            evaluate_invariant(&class("3;"), 50),
            InvariantValue::Undetermined
        );
    }

    #[test]
    fn sequence_classes_are_one_iff_one_admissible() {
        for a in 1..=8 {
            for s in enumerate_admissible(a) {
                let c = class_from_sequence(&s);
                let expected = if is_one_admissible(&s) {
                    InvariantValue::One
                } else {
                    InvariantValue::Zero
                };
                assert_eq!(evaluate_invariant(&c, 64), expected, "{s} -> {c}");
            }
        }
    }

    #[test]
    fn trace_records_padding() {
        let ev = trace_invariant(&class("2;"), 10);
        assert!(ev.trace.contains(&EvalStep::Padded { ones: 3, zeros: 0 }));
        let ev = trace_invariant(&class("2;2,2,1"), 10);
        assert!(
            ev.trace.contains(&EvalStep::Padded { ones: 0, zeros: 1 })
                || ev.trace.contains(&EvalStep::Padded { ones: 1, zeros: 0 })
        );
        assert_eq!(ev.value, InvariantValue::Zero);
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_to_section_class(&section_class(1), 100).unwrap();
        assert_eq!((r.fibers, r.cremona_count()), (1, 0));
        // a conic through five of the points reduces to e_i
        let r = reduce_to_section_class(&class("2;1,1,1,1,1,0,0,0,0"), 100).unwrap();
        assert_eq!(r.fibers, 0);
        assert_eq!(r.cremona_count(), 2);
        assert!(matches!(
            reduce_to_section_class(&class("1;1,1,1,0,0,0,0,0,0"), 100),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            reduce_to_section_class(&class("3;1,1,1,1,1,1,1,1,0,0"), 100),
            Err(Error::Precondition(_))
        ));
        // short classes are padded with zeros: e1 itself
        let r = reduce_to_section_class(&class("0;-1"), 100).unwrap();
        assert_eq!(r.fibers, 0);
    }

    #[test]
    fn reduce_scrambled_c2_genus_one() {
        let mut rng = StdRng::seed_from_u64(7);
        let c = section_class(3);
        let scrambled = scramble(&c, 5, &mut rng).pop().unwrap();
        let r = reduce_to_section_class(&scrambled, 10_000).unwrap();
        assert_eq!(r.fibers, 3);
    }

    #[test]
    fn reduce_scrambles() {
        let mut rng = StdRng::seed_from_u64(2024);
        for _ in 0..300 {
            let i = rng.gen_range(0..=9);
            let moves = rng.gen_range(1..=10);
            let path = scramble(&section_class(i), moves, &mut rng);
            let start = path.last().unwrap();
            let r = reduce_to_section_class(start, 100_000).unwrap();
            assert_eq!(r.fibers, i, "from {start}");
            for step in &r.steps {
                assert_eq!(pairing_data(step.result()), pairing_data(start));
            }
        }
    }

    fn arb_class() -> impl Strategy<Value = BlowupClass> {
        (-20i64..20, prop::collection::vec(-10i64..10, 0..10))
            .prop_map(|(d, a)| BlowupClass::new(d, a))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn cremona_is_involution(c in arb_class(), i in 0usize..10, j in 0usize..10, k in 0usize..10) {
            prop_assume!(i != j && j != k && i != k);
            let once = cremona_transform(&c, i, j, k).unwrap();
            let twice = cremona_transform(&once, i, j, k).unwrap();
            prop_assert_eq!(twice, c.padded(i.max(j).max(k) + 1));
        }

        #[test]
        fn cremona_preserves_pairings(c in arb_class(), i in 0usize..10, j in 0usize..10, k in 0usize..10) {
            prop_assume!(i != j && j != k && i != k);
            prop_assert_eq!(pairing_data(&cremona_transform(&c, i, j, k).unwrap()), pairing_data(&c));
            prop_assert_eq!(pairing_data(&c.canonical()), pairing_data(&c));
        }

        #[test]
        fn canonical_is_idempotent(c in arb_class()) {
            prop_assert_eq!(c.canonical().canonical(), c.canonical());
        }
    }
}
