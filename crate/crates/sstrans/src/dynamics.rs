//! Annotations, the action of annotated pairs `(T, α)` on bi-infinite
//! sequences, sliding-block local rules and their transducer form,
//! permutivity checks, and the Π-action on rotation classes of prime
//! words.

use crate::error::{Error, Result};
use crate::machine::{DetTransducer, StateId};
use crate::minimize::{minimize_with_map, MinimizeOutcome};
use crate::signatures::ln_potential;
use crate::sync;
use crate::word::{all_words, enumerate_prime_classes, Letter, RotationClass, Word};

/// A state annotation: the integer data turning a length-preserving-on-
/// circuits machine into a map on bi-infinite sequences. Every edge must
/// satisfy `α(π(x,q)) = α(q) + |λ(x,q)| − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    values: Vec<i64>,
}

impl Annotation {
    pub fn new(t: &DetTransducer, values: Vec<i64>) -> Result<Annotation> {
        if values.len() != t.state_count() {
            return Err(Error::Invalid("annotation arity mismatch".into()));
        }
        for q in t.states() {
            for x in t.alphabet().letters() {
                let lhs = values[t.step(q, x)];
                let rhs = values[q] + t.output(q, x).len() as i64 - 1;
                if lhs != rhs {
                    return Err(Error::Domain(format!(
                        "annotation rule fails on edge ({}, {x}): {lhs} ≠ {rhs}",
                        t.name(q)
                    )));
                }
            }
        }
        Ok(Annotation { values })
    }

    /// The canonical annotation: the circuit-length potential normalized
    /// so that its minimum value is 0. All annotations of `T` are this one
    /// plus a constant.
    pub fn canonical(t: &DetTransducer) -> Result<Annotation> {
        let pot = ln_potential(t).ok_or_else(|| {
            Error::Domain("machine does not preserve lengths on circuits".into())
        })?;
        let min = *pot.iter().min().expect("at least one state");
        Annotation::new(t, pot.iter().map(|v| v - min).collect())
    }

    /// The canonical annotation shifted by a constant.
    pub fn canonical_plus(t: &DetTransducer, c: i64) -> Result<Annotation> {
        let base = Annotation::canonical(t)?;
        Annotation::new(t, base.values.iter().map(|v| v + c).collect())
    }

    /// The same annotation shifted by a constant (always valid).
    pub fn plus(&self, t: &DetTransducer, c: i64) -> Result<Annotation> {
        Annotation::new(t, self.values.iter().map(|v| v + c).collect())
    }

    pub fn value(&self, q: StateId) -> i64 {
        self.values[q]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// An eventually periodic bi-infinite sequence `…uuu·v·www…` where the
/// first letter of `v` sits at index `offset`; the left period tiles the
/// indices below `offset` ending there, the right period tiles upward
/// from the end of the center.
#[derive(Debug, Clone)]
pub struct BiInfiniteSeq {
    left: Word,
    center: Word,
    right: Word,
    offset: i64,
}

impl BiInfiniteSeq {
    pub fn new(left: Word, center: Word, right: Word, offset: i64) -> Result<BiInfiniteSeq> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::Invalid("periods of a bi-infinite sequence must be non-empty".into()));
        }
        Ok(BiInfiniteSeq { left, center, right, offset }.normalize())
    }

    /// The constant sequence `…xxx…`.
    pub fn constant(x: Letter) -> BiInfiniteSeq {
        let w = Word::single(x);
        BiInfiniteSeq { left: w.clone(), center: Word::empty(), right: w, offset: 0 }
    }

    pub fn letter_at(&self, i: i64) -> Letter {
        if i < self.offset {
            let d = (self.offset - i) as usize;
            let k = self.left.len();
            self.left.letters()[k - 1 - ((d - 1) % k)]
        } else if ((i - self.offset) as usize) < self.center.len() {
            self.center.letters()[(i - self.offset) as usize]
        } else {
            let d = (i - self.offset) as usize - self.center.len();
            self.right.letters()[d % self.right.len()]
        }
    }

    /// The shift by `d`: `y_i = x_{i−d}` (positive `d` moves content right).
    pub fn shift(&self, d: i64) -> BiInfiniteSeq {
        let mut s = self.clone();
        s.offset += d;
        s
    }

    /// Primitive periods and a minimal center: boundary letters matching
    /// the adjacent periodic tail are absorbed into it.
    fn normalize(mut self) -> BiInfiniteSeq {
        self.left = self.left.primitive_root();
        self.right = self.right.primitive_root();
        while !self.center.is_empty()
            && self.center.letters()[0] == self.left.letters()[0]
        {
            self.center = self.center.slice(1..self.center.len());
            self.left = self.left.rotation(1);
            self.offset += 1;
        }
        while !self.center.is_empty()
            && self.center.letters()[self.center.len() - 1]
                == self.right.letters()[self.right.len() - 1]
        {
            self.center = self.center.slice(0..self.center.len() - 1);
            self.right = self.right.rotation(self.right.len() - 1);
        }
        self
    }

    pub fn left_period(&self) -> &Word {
        &self.left
    }

    pub fn center(&self) -> &Word {
        &self.center
    }

    pub fn right_period(&self) -> &Word {
        &self.right
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Literal syntax `(u)^-inf . v . (w)^inf @ t` with comma-separated
    /// letters and `-` for the empty center.
    pub fn parse(s: &str) -> Result<BiInfiniteSeq> {
        let err = || Error::Format(format!("bad sequence literal {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix('(').ok_or_else(err)?;
        let (u, rest) = rest.split_once(")^-inf").ok_or_else(err)?;
        let rest = rest.trim_start().strip_prefix('.').ok_or_else(err)?;
        let (v, rest) = rest.split_once('.').ok_or_else(err)?;
        let rest = rest.trim_start().strip_prefix('(').ok_or_else(err)?;
        let (w, rest) = rest.split_once(")^inf").ok_or_else(err)?;
        let rest = rest.trim_start().strip_prefix('@').ok_or_else(err)?;
        let t: i64 = rest.trim().parse().map_err(|_| err())?;
        BiInfiniteSeq::new(
            Word::parse(u.trim())?,
            Word::parse(v.trim())?,
            Word::parse(w.trim())?,
            t,
        )
    }
}

impl std::fmt::Display for BiInfiniteSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})^-inf . {} . ({})^inf @ {}",
            self.left, self.center, self.right, self.offset
        )
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    a / gcd(a, b) * b
}

impl PartialEq for BiInfiniteSeq {
    /// Letterwise equality over a window wide enough to cover both
    /// centers plus one common period on each side.
    fn eq(&self, other: &BiInfiniteSeq) -> bool {
        let lo = self.offset.min(other.offset)
            - lcm(self.left.len(), other.left.len()) as i64;
        let hi = (self.offset + self.center.len() as i64)
            .max(other.offset + other.center.len() as i64)
            + lcm(self.right.len(), other.right.len()) as i64;
        (lo..hi).all(|i| self.letter_at(i) == other.letter_at(i))
    }
}

impl Eq for BiInfiniteSeq {}

/// A random eventually periodic sequence (for property testing).
pub fn random_seq(n: u32, rng: &mut impl rand::Rng) -> BiInfiniteSeq {
    let mut word = |lo: usize, hi: usize| {
        let len = rng.gen_range(lo..=hi);
        Word::from_letters((0..len).map(|_| rng.gen_range(0..n)))
    };
    let left = word(1, 3);
    let center = word(0, 4);
    let right = word(1, 3);
    let offset = rng.gen_range(-5..5);
    BiInfiniteSeq::new(left, center, right, offset).expect("periods are non-empty")
}

/// The action of the pair `(T, α)` on a sequence: the output block for the
/// input letter at index `i`, read in the forced state `q_i`, starts at
/// index `i + α(q_i)`.
pub fn apply(t: &DetTransducer, a: &Annotation, x: &BiInfiniteSeq) -> Result<BiInfiniteSeq> {
    let cert = sync::sync_level(t, sync::default_max_k(t))?;
    let u = x.left_period();
    let copies = cert.level().div_ceil(u.len()).max(1);
    let (s, _) = t.run(0, &u.repeat(copies))?;
    if t.run(s, u)?.0 != s {
        return Err(Error::Internal(
            "forced state of the left tail is not period-fixed".into(),
        ));
    }
    let (_, left_out) = t.run(s, u)?;
    if left_out.len() != u.len() {
        return Err(Error::Domain(
            "machine does not preserve lengths on the left period circuit".into(),
        ));
    }

    let (r0, mut center_out) = t.run(s, x.center())?;

    // run w-copies until the pre-copy state repeats; the repeating stretch
    // is the right period of the output
    let w = x.right_period();
    let mut states = vec![r0];
    let mut outs: Vec<Word> = Vec::new();
    let (cycle_start, cycle_end) = loop {
        let cur = *states.last().expect("non-empty");
        let (nxt, o) = t.run(cur, w)?;
        outs.push(o);
        if let Some(pos) = states.iter().position(|&q| q == nxt) {
            break (pos, states.len());
        }
        states.push(nxt);
    };
    for o in &outs[..cycle_start] {
        center_out = center_out.concat(o);
    }
    let mut right_out = Word::empty();
    for o in &outs[cycle_start..cycle_end] {
        right_out = right_out.concat(o);
    }
    if right_out.len() != (cycle_end - cycle_start) * w.len() {
        return Err(Error::Domain(
            "machine does not preserve lengths on the right period circuit".into(),
        ));
    }

    BiInfiniteSeq::new(left_out, center_out, right_out, x.offset() + a.value(s))
}

/// Transfers an annotation of a raw machine through minimization: every
/// surviving state inherits `γ(q) + |Λ(ε,q)|`, which must agree across
/// merged states.
pub fn transfer_annotation(
    outcome: &MinimizeOutcome,
    gamma: &[i64],
) -> Result<Annotation> {
    let t = outcome.result.det()?;
    let mut vals: Vec<Option<i64>> = vec![None; t.state_count()];
    for (old, target) in outcome.map.iter().enumerate() {
        let Some(m) = *target else { continue };
        let v = gamma[old] + outcome.lambda_eps[old].len() as i64;
        match vals[m] {
            None => vals[m] = Some(v),
            Some(prev) if prev == v => {}
            Some(prev) => {
                return Err(Error::Internal(format!(
                    "annotation transfer conflict at {}: {prev} vs {v}",
                    t.name(m)
                )))
            }
        }
    }
    let values = vals
        .into_iter()
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| Error::Internal("annotation transfer left a state uncovered".into()))?;
    Annotation::new(t, values)
}

/// The product of annotated pairs: `(T,α)(U,β) = (minimize(TU), γ)` with
/// `γ` built from `α(s) + β(t)` on the raw product and carried through
/// minimization.
pub fn product_annotation(
    t: &DetTransducer,
    alpha: &Annotation,
    u: &DetTransducer,
    beta: &Annotation,
) -> Result<(DetTransducer, Annotation)> {
    let p = t.product(u)?;
    let m2 = u.state_count();
    let gamma: Vec<i64> = (0..p.state_count())
        .map(|i| alpha.value(i / m2) + beta.value(i % m2))
        .collect();
    let outcome = minimize_with_map(&p)?;
    let ann = transfer_annotation(&outcome, &gamma)?;
    Ok((outcome.result.det()?.clone(), ann))
}

/// A sliding-block local rule `f : X_n^m → X_n` applied as
/// `y_i = f(x_{i−m+1} … x_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    n: u32,
    m: usize,
    table: Vec<Letter>,
}

impl LocalRule {
    pub fn new(n: u32, m: usize, table: Vec<Letter>) -> Result<LocalRule> {
        if m < 1 {
            return Err(Error::Invalid("local rule needs window length ≥ 1".into()));
        }
        if table.len() != (n as usize).pow(m as u32) {
            return Err(Error::Invalid("local rule table size mismatch".into()));
        }
        if table.iter().any(|&y| y >= n) {
            return Err(Error::Invalid("local rule value out of alphabet".into()));
        }
        Ok(LocalRule { n, m, table })
    }

    pub fn from_fn(n: u32, m: usize, f: impl Fn(&[Letter]) -> Letter) -> Result<LocalRule> {
        let table = all_words(n, m).into_iter().map(|w| f(w.letters())).collect();
        LocalRule::new(n, m, table)
    }

    pub fn window(&self) -> usize {
        self.m
    }

    pub fn alphabet_size(&self) -> u32 {
        self.n
    }

    pub fn eval(&self, window: &[Letter]) -> Letter {
        debug_assert_eq!(window.len(), self.m);
        let idx = window
            .iter()
            .fold(0usize, |acc, &x| acc * self.n as usize + x as usize);
        self.table[idx]
    }

    /// Right permutive: for every context block the map on the last
    /// letter is a permutation.
    pub fn is_right_permutive(&self) -> bool {
        self.permutive(|ctx, x| {
            let mut w = ctx.to_vec();
            w.push(x);
            w
        })
    }

    /// Left permutive: for every context block the map on the first
    /// letter is a permutation.
    pub fn is_left_permutive(&self) -> bool {
        self.permutive(|ctx, x| {
            let mut w = vec![x];
            w.extend_from_slice(ctx);
            w
        })
    }

    fn permutive(&self, build: impl Fn(&[Letter], Letter) -> Vec<Letter>) -> bool {
        for ctx in all_words(self.n, self.m - 1) {
            let mut seen = vec![false; self.n as usize];
            for x in 0..self.n {
                let y = self.eval(&build(ctx.letters(), x)) as usize;
                if seen[y] {
                    return false;
                }
                seen[y] = true;
            }
        }
        true
    }
}

/// The de Bruijn transducer of a local rule (states = context blocks of
/// length `m − 1`), minimized, with the annotation that makes `apply`
/// agree with the sliding-window application of `f`.
pub fn local_rule_to_transducer(f: &LocalRule) -> Result<(DetTransducer, Annotation)> {
    let n = f.n;
    let m = f.m;
    let contexts = all_words(n, m - 1);
    let index = |w: &[Letter]| -> usize {
        w.iter().fold(0usize, |acc, &x| acc * n as usize + x as usize)
    };
    let names = contexts
        .iter()
        .map(|w| {
            if w.is_empty() {
                "q".to_string()
            } else {
                format!("q{}", w.letters().iter().map(|x| x.to_string()).collect::<String>())
            }
        })
        .collect();
    let alphabet = crate::word::Alphabet::new(n)?;
    let mut edges = Vec::with_capacity(contexts.len());
    for ctx in &contexts {
        let mut row = Vec::with_capacity(n as usize);
        for x in 0..n {
            let mut win = ctx.letters().to_vec();
            win.push(x);
            let y = f.eval(&win);
            let next = index(&win[win.len() - (m - 1)..]);
            row.push((next, Word::single(y)));
        }
        edges.push(row);
    }
    let raw = DetTransducer::new(alphabet, names, edges)?;
    // the raw de Bruijn machine aligns output index i with input index i,
    // i.e. carries the constant-0 annotation
    let outcome = minimize_with_map(&raw)?;
    let ann = transfer_annotation(&outcome, &vec![0; raw.state_count()])?;
    Ok((outcome.result.det()?.clone(), ann))
}

/// The Π-action of `T` on rotation classes of prime words of length up to
/// `k_max`: `[γ] ↦ [prime root of λ(γ, q)]` where `q` is the unique
/// `γ`-fixed forced state.
pub fn pi_action(
    t: &DetTransducer,
    k_max: usize,
) -> Result<Vec<(RotationClass, RotationClass)>> {
    let cert = sync::sync_level(t, sync::default_max_k(t))?;
    let k = cert.level().max(1);
    let n = t.alphabet().size();
    let mut out = Vec::new();
    for l in 1..=k_max {
        for class in enumerate_prime_classes(n, l)? {
            let gamma = class.rep();
            let copies = k.div_ceil(l);
            let (q, _) = t.run(0, &gamma.repeat(copies))?;
            if t.run(q, gamma)?.0 != q {
                return Err(Error::Internal(format!(
                    "forced state of {gamma}^∞ is not {gamma}-fixed"
                )));
            }
            let (_, o) = t.run(q, gamma)?;
            if o.is_empty() {
                return Err(Error::Domain(format!(
                    "circuit labeled {gamma} has empty output"
                )));
            }
            let root = o.primitive_root();
            if o != root.repeat(o.len() / root.len()) {
                return Err(Error::Internal("circuit output is not a power of its root".into()));
            }
            out.push((class, RotationClass::of(&root)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::images::invert_default;
    use crate::minimize::is_isomorphic;
    use crate::pool::fixture;
    use crate::signatures::generator;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn canonical_annotations() {
        let id = DetTransducer::identity(2);
        assert_eq!(Annotation::canonical(&id).unwrap().values(), &[0]);

        let t = fixture();
        let a = Annotation::canonical(&t).unwrap();
        let by_name: Vec<i64> = ["a1", "a2", "a3", "a4", "a5", "a6"]
            .iter()
            .map(|nm| a.value(t.state_by_name(nm).unwrap()))
            .collect();
        assert_eq!(by_name, vec![1, 0, 2, 0, 1, 2]);
    }

    #[test]
    fn sequence_literals_and_equality() {
        let x = BiInfiniteSeq::parse("(0,1)^-inf . 1,1 . (0)^inf @ 3").unwrap();
        assert_eq!(x.letter_at(3), 1);
        assert_eq!(x.letter_at(2), 1); // left tail ends …0,1|
        assert_eq!(x.letter_at(100), 0);
        let y = BiInfiniteSeq::parse(&x.to_string()).unwrap();
        assert_eq!(x, y);
        // a redundant presentation of the same sequence
        let z = BiInfiniteSeq::new(w("1,0"), w("1,0,1,1,1"), w("0,0"), 0).unwrap();
        assert_eq!(x, z);
        assert_ne!(x, x.shift(1));
        assert_eq!(BiInfiniteSeq::constant(0), BiInfiniteSeq::constant(0).shift(7));
    }

    #[test]
    fn identity_with_annotation_one_is_the_shift() {
        let id = DetTransducer::identity(2);
        let one = Annotation::canonical_plus(&id, 1).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let x = random_seq(2, &mut rng);
            assert_eq!(apply(&id, &one, &x).unwrap(), x.shift(1));
        }
    }

    #[test]
    fn fixture_apply_basics() {
        let t = fixture();
        let a = Annotation::canonical(&t).unwrap();
        let zero = BiInfiniteSeq::constant(0);
        assert_eq!(apply(&t, &a, &zero).unwrap(), zero);
        // commutes with the shift
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let x = random_seq(2, &mut rng);
            let lhs = apply(&t, &a, &x.shift(1)).unwrap();
            let rhs = apply(&t, &a, &x).unwrap().shift(1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn product_pairs_and_the_group_law() {
        // (T(2,3),0)·(T(3,2),0) = (identity, 1), the shift over X_6
        let t23 = generator(6, 2, 3).unwrap();
        let t32 = generator(6, 3, 2).unwrap();
        let a0 = Annotation::canonical(&t23).unwrap();
        let b0 = Annotation::canonical(&t32).unwrap();
        assert_eq!(a0.values().iter().copied().min(), Some(0));
        let (p, g) = product_annotation(&t23, &a0, &t32, &b0).unwrap();
        assert!(is_isomorphic(&p, &DetTransducer::identity(6)).unwrap());
        assert_eq!(g.values(), &[1]);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_seq(6, &mut rng);
            let once = apply(&t23, &a0, &x).unwrap();
            let seq = apply(&t32, &b0, &once).unwrap();
            let prod = apply(&p, &g, &x).unwrap();
            assert_eq!(seq, prod, "monoid law on {x}");
        }
    }

    #[test]
    fn inverse_pair_undoes_apply() {
        let t = fixture();
        let inv = invert_default(&t).unwrap();
        let a = Annotation::canonical(&t).unwrap();
        let b = Annotation::canonical(&inv).unwrap();
        let (p, g) = product_annotation(&t, &a, &inv, &b).unwrap();
        assert!(is_isomorphic(&p, &DetTransducer::identity(2)).unwrap());
        let c = g.values()[0];
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..50 {
            let x = random_seq(2, &mut rng);
            let y = apply(&t, &a, &x).unwrap();
            let z = apply(&inv, &b, &y).unwrap();
            assert_eq!(z, x.shift(c), "group law on {x}");
        }
    }

    #[test]
    fn local_rules() {
        // last-letter rule is the identity
        let f = LocalRule::from_fn(2, 1, |w| w[0]).unwrap();
        let (t, a) = local_rule_to_transducer(&f).unwrap();
        assert!(is_isomorphic(&t, &DetTransducer::identity(2)).unwrap());
        assert_eq!(a.values(), &[0]);

        // first-letter rule over a window of 2 is the shift
        let f = LocalRule::from_fn(2, 2, |w| w[0]).unwrap();
        let (t, a) = local_rule_to_transducer(&f).unwrap();
        assert!(is_isomorphic(&t, &DetTransducer::identity(2)).unwrap());
        assert_eq!(a.values(), &[1]);

        // XOR rule: 2 states, permutive on both sides
        let f = LocalRule::from_fn(2, 2, |w| (w[0] + w[1]) % 2).unwrap();
        assert!(f.is_right_permutive());
        assert!(f.is_left_permutive());
        let (t, _) = local_rule_to_transducer(&f).unwrap();
        assert_eq!(t.state_count(), 2);

        // constant rule: permutive on neither side
        let f = LocalRule::from_fn(2, 2, |_| 0).unwrap();
        assert!(!f.is_right_permutive());
        assert!(!f.is_left_permutive());
        assert!(local_rule_to_transducer(&f).is_err());
    }

    #[test]
    fn rule_application_matches_apply() {
        let f = LocalRule::from_fn(2, 3, |w| (w[0] + w[2]) % 2).unwrap();
        let (t, a) = local_rule_to_transducer(&f).unwrap();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..30 {
            let x = random_seq(2, &mut rng);
            let y = apply(&t, &a, &x).unwrap();
            for i in -12..12 {
                let win: Vec<Letter> = (i - 2..=i).map(|j| x.letter_at(j)).collect();
                assert_eq!(y.letter_at(i), f.eval(&win), "at {i} on {x}");
            }
        }
    }

    #[test]
    fn pi_action_examples() {
        let id = DetTransducer::identity(2);
        for (src, dst) in pi_action(&id, 4).unwrap() {
            assert_eq!(src, dst);
        }
        let tr = DetTransducer::letter_permutation(2, &[1, 0]).unwrap();
        let map = pi_action(&tr, 3).unwrap();
        let find = |s: &str| {
            let c = RotationClass::of(&w(s)).unwrap();
            map.iter().find(|(a, _)| *a == c).unwrap().1.clone()
        };
        assert_eq!(find("0,0,1"), RotationClass::of(&w("0,1,1")).unwrap());
        assert_eq!(find("0"), RotationClass::of(&w("1")).unwrap());
    }

    #[test]
    fn pi_action_of_fixture_is_length_preserving_permutation() {
        let t = fixture();
        for l in 1..=5usize {
            let classes = enumerate_prime_classes(2, l).unwrap();
            let map = pi_action(&t, l).unwrap();
            let images: std::collections::BTreeSet<_> = map
                .iter()
                .filter(|(a, _)| a.len() == l)
                .map(|(_, b)| b.rep().clone())
                .collect();
            assert_eq!(images.len(), classes.len(), "length {l}");
            assert!(map
                .iter()
                .filter(|(a, _)| a.len() == l)
                .all(|(_, b)| b.len() == l));
        }
    }
}
