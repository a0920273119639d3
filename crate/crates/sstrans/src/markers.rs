//! Marker automorphisms `f_{a,b}` and conveyor-belt maps `f_{wUw}`:
//! validation and search of marker pairs, overlap/bijectivity checks for
//! conveyor systems, direct simulators on bi-infinite sequences, and
//! conversion to annotated transducer pairs landing in `D_n`.

use crate::dynamics::{
    apply, local_rule_to_transducer, Annotation, BiInfiniteSeq, LocalRule,
};
use crate::error::{Error, Result};
use crate::machine::DetTransducer;
use crate::word::{all_words, Letter, Word};
use std::collections::HashMap;

/// A pair of equal-length marker words: each of `aa`, `bb`, `ab`, `ba`
/// contains `a` and `b` only at the trivial positions, so occurrences of
/// the markers in any sequence cannot overlap ambiguously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerPair {
    a: Word,
    b: Word,
}

/// `None` if the pair is valid, otherwise a human-readable violation.
pub fn marker_violation(a: &Word, b: &Word) -> Option<String> {
    if a.len() != b.len() {
        return Some("lengths differ".into());
    }
    if a.len() < 2 {
        return Some("length must be at least 2".into());
    }
    if a == b {
        return Some("words must be distinct".into());
    }
    let occurs = |hay: &[Letter], needle: &[Letter]| -> Vec<usize> {
        (0..=hay.len() - needle.len())
            .filter(|&i| &hay[i..i + needle.len()] == needle)
            .collect()
    };
    for (x, y) in [(a, b), (b, a)] {
        let xx = x.concat(x);
        if occurs(xx.letters(), x.letters()) != vec![0, x.len()] {
            return Some(format!("{x}{x} contains {x} at a non-trivial position"));
        }
        if !occurs(xx.letters(), y.letters()).is_empty() {
            return Some(format!("{x}{x} contains an occurrence of {y}"));
        }
    }
    None
}

impl MarkerPair {
    pub fn new(a: Word, b: Word) -> Result<MarkerPair> {
        match marker_violation(&a, &b) {
            None => Ok(MarkerPair { a, b }),
            Some(v) => Err(Error::Domain(format!("invalid marker pair ({a}, {b}): {v}"))),
        }
    }

    pub fn a(&self) -> &Word {
        &self.a
    }

    pub fn b(&self) -> &Word {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The lexicographically first valid pairs of length `l` over `X_n`, up
/// to `max_count` of them.
pub fn search_marker_pairs(n: u32, l: usize, max_count: usize) -> Result<Vec<MarkerPair>> {
    if n < 2 || l < 2 {
        return Err(Error::Domain("marker search needs n ≥ 2 and l ≥ 2".into()));
    }
    let words = all_words(n, l);
    let mut found = Vec::new();
    for a in &words {
        for b in &words {
            if marker_violation(a, b).is_none() {
                found.push(MarkerPair { a: a.clone(), b: b.clone() });
                if found.len() == max_count {
                    return Ok(found);
                }
            }
        }
    }
    Ok(found)
}

/// The first valid pair, if any.
pub fn search_marker_pair(n: u32, l: usize) -> Result<Option<MarkerPair>> {
    Ok(search_marker_pairs(n, l, 1)?.into_iter().next())
}

/// The `f_{a,b}` value at the center of a width-`6l−1` window (center
/// index `3l−1`): if some alignment places the center inside the middle
/// block of five consecutive marker blocks, that block is swapped;
/// otherwise the letter is copied.
fn marker_value(p: &MarkerPair, window: &[Letter]) -> Letter {
    let l = p.len();
    debug_assert_eq!(window.len(), 6 * l - 1);
    let center = 3 * l - 1;
    for phi in 0..l {
        let lo = center - phi - 2 * l;
        let seg = &window[lo..lo + 5 * l];
        let is_marker_block =
            |c: &[Letter]| c == p.a.letters() || c == p.b.letters();
        if (0..5).all(|k| is_marker_block(&seg[k * l..(k + 1) * l])) {
            let c3 = &seg[2 * l..3 * l];
            let swapped = if c3 == p.a.letters() { &p.b } else { &p.a };
            return swapped.letters()[phi];
        }
    }
    window[center]
}

/// Applies a pointwise window function `y_i = f(x_{i−hl} … x_{i+hr})` to
/// an eventually periodic sequence.
pub fn apply_windowed(
    f: impl Fn(&[Letter]) -> Letter,
    hl: usize,
    hr: usize,
    x: &BiInfiniteSeq,
) -> Result<BiInfiniteSeq> {
    let value = |i: i64| {
        let window: Vec<Letter> =
            (i - hl as i64..=i + hr as i64).map(|j| x.letter_at(j)).collect();
        f(&window)
    };
    let boundary_left = x.offset() - hr as i64;
    let boundary_right = x.offset() + x.center().len() as i64 + hl as i64;
    let lp = x.left_period().len() as i64;
    let rp = x.right_period().len() as i64;
    let left = Word::from_letters((boundary_left - lp..boundary_left).map(value));
    let center = Word::from_letters((boundary_left..boundary_right).map(value));
    let right = Word::from_letters((boundary_right..boundary_right + rp).map(value));
    BiInfiniteSeq::new(left, center, right, boundary_left)
}

/// The direct `f_{a,b}` evaluator on sequences.
pub fn direct_marker_apply(p: &MarkerPair, x: &BiInfiniteSeq) -> Result<BiInfiniteSeq> {
    let l = p.len();
    apply_windowed(|w| marker_value(p, w), 3 * l - 1, 3 * l - 1, x)
}

/// Fixes the additive annotation constant of a converted local rule by
/// probing `apply` against a direct simulator on reference sequences.
fn fit_annotation_constant(
    t: &DetTransducer,
    base: &Annotation,
    probes: &[(BiInfiniteSeq, BiInfiniteSeq)],
    range: i64,
) -> Result<Annotation> {
    let mut fit: Option<i64> = None;
    for c in -range..=range {
        let cand = base.plus(t, c)?;
        if probes
            .iter()
            .map(|(x, y)| Ok(apply(t, &cand, x)? == *y))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b)
        {
            if let Some(prev) = fit {
                return Err(Error::Internal(format!(
                    "annotation constant not unique: {prev} and {c} both fit"
                )));
            }
            fit = Some(c);
        }
    }
    match fit {
        Some(c) => base.plus(t, c),
        None => Err(Error::Internal(
            "no annotation constant matches the direct simulator".into(),
        )),
    }
}

/// Converts a marker pair into an annotated transducer pair acting as
/// `f_{a,b}` on bi-infinite sequences over `X_n`.
pub fn marker_automorphism(p: &MarkerPair, n: u32) -> Result<(DetTransducer, Annotation)> {
    let used = *p.a.letters().iter().chain(p.b.letters()).max().unwrap();
    if used >= n {
        return Err(Error::Domain(format!(
            "marker pair uses letter {used}, out of alphabet of size {n}"
        )));
    }
    let l = p.len();
    let m = 6 * l - 1;
    let rule = LocalRule::from_fn(n, m, |w| marker_value(p, w))?;
    let (t, base) = local_rule_to_transducer(&rule)?;

    // probes: the a/b boundary sequence (whose image moves the boundary
    // structure) and the two marker-constant sequences
    let mut probes = Vec::new();
    let seqs = [
        BiInfiniteSeq::new(p.a.clone(), Word::empty(), p.b.clone(), 0)?,
        BiInfiniteSeq::new(p.b.clone(), Word::empty(), p.a.clone(), 0)?,
        BiInfiniteSeq::new(p.a.clone(), p.a.concat(&p.b), p.b.clone(), 3)?,
    ];
    for x in seqs {
        let y = direct_marker_apply(p, &x)?;
        probes.push((x, y));
    }
    let ann = fit_annotation_constant(&t, &base, &probes, 3 * m as i64)?;
    Ok((t, ann))
}

/// The rewriting rule of a conveyor system: a bijection of `U` applied to
/// every slot independently, or a radius-`δ` block rule over the slot
/// alphabet `U ∪ {boundary}` (contexts truncated at run ends map through
/// the same table with `None` columns).
#[derive(Debug, Clone)]
pub enum ConveyorRule {
    Letterwise(Vec<usize>),
    Block {
        delta: usize,
        table: HashMap<Vec<Option<usize>>, usize>,
    },
}

/// A conveyor system `f_{wUw}`: occurrences of `w·u·w` (`u ∈ U`) mark
/// slots whose contents are rewritten by the rule; everything else is
/// copied.
#[derive(Debug, Clone)]
pub struct ConveyorSystem {
    w: Word,
    u: Vec<Word>,
    rule: ConveyorRule,
}

impl ConveyorSystem {
    pub fn new(w: Word, u: Vec<Word>, rule: ConveyorRule) -> Result<ConveyorSystem> {
        let c = ConveyorSystem { w, u, rule };
        c.validate_shape()?;
        Ok(c)
    }

    pub fn marker_word(&self) -> &Word {
        &self.w
    }

    pub fn slot_alphabet(&self) -> &[Word] {
        &self.u
    }

    pub fn slot_len(&self) -> usize {
        self.u[0].len()
    }

    fn validate_shape(&self) -> Result<()> {
        if self.w.len() < 2 {
            return Err(Error::Domain("conveyor word must have length ≥ 2".into()));
        }
        if self.u.is_empty() {
            return Err(Error::Domain("conveyor slot alphabet is empty".into()));
        }
        let l = self.u[0].len();
        if l == 0 || self.u.iter().any(|v| v.len() != l) {
            return Err(Error::Domain(
                "conveyor slot words must share a positive common length".into(),
            ));
        }
        for (i, v) in self.u.iter().enumerate() {
            if self.u[..i].contains(v) {
                return Err(Error::Domain(format!("duplicate slot word {v}")));
            }
        }
        match &self.rule {
            ConveyorRule::Letterwise(perm) => {
                if perm.len() != self.u.len() {
                    return Err(Error::Domain("rule arity mismatch".into()));
                }
                let mut seen = vec![false; self.u.len()];
                for &p in perm {
                    if p >= self.u.len() || seen[p] {
                        return Err(Error::Domain("rule is not a bijection of U".into()));
                    }
                    seen[p] = true;
                }
            }
            ConveyorRule::Block { delta, table } => {
                let m = self.u.len();
                let width = 2 * delta + 1;
                let mut stack = vec![Vec::new()];
                let mut contexts = Vec::new();
                while let Some(ctx) = stack.pop() {
                    if ctx.len() == width {
                        contexts.push(ctx);
                        continue;
                    }
                    for v in (0..m).map(Some).chain([None]) {
                        let mut c = ctx.clone();
                        c.push(v);
                        stack.push(c);
                    }
                }
                for ctx in contexts {
                    if ctx[*delta].is_none() {
                        continue; // no slot at the center, nothing to map
                    }
                    match table.get(&ctx) {
                        Some(&v) if v < m => {}
                        Some(_) => {
                            return Err(Error::Domain("rule value out of U".into()))
                        }
                        None => {
                            return Err(Error::Domain(format!(
                                "rule table missing context {ctx:?}"
                            )))
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The slot word index at the center of a decoded run context.
    fn rewrite(&self, ctx: &[Option<usize>], center: usize) -> usize {
        match &self.rule {
            ConveyorRule::Letterwise(perm) => perm[center],
            ConveyorRule::Block { table, .. } => table[ctx],
        }
    }

    fn context_radius(&self) -> usize {
        match &self.rule {
            ConveyorRule::Letterwise(_) => 0,
            ConveyorRule::Block { delta, .. } => *delta,
        }
    }

    /// The effective locality margin `(2δ+3)(|w| + l)` of the direct
    /// simulator.
    pub fn margin(&self) -> usize {
        (2 * self.context_radius() + 3) * (self.w.len() + self.slot_len())
    }

    /// The slot index of `letters[at..at+l]` if it is a valid slot: `w`
    /// immediately before, a word of `U` at `at`, `w` immediately after.
    fn slot_at(&self, get: &impl Fn(i64) -> Letter, at: i64) -> Option<usize> {
        let wl = self.w.len() as i64;
        let l = self.slot_len() as i64;
        let read = |lo: i64, len: i64| -> Vec<Letter> {
            (lo..lo + len).map(get).collect()
        };
        if read(at - wl, wl) != self.w.letters() {
            return None;
        }
        if read(at + l, wl) != self.w.letters() {
            return None;
        }
        let body = read(at, l);
        self.u.iter().position(|v| v.letters() == body)
    }

    /// The `f_{wUw}` value at absolute position `i` of the sequence given
    /// by `get`.
    fn value_at(&self, get: &impl Fn(i64) -> Letter, i: i64) -> Letter {
        let l = self.slot_len() as i64;
        let stride = l + self.w.len() as i64;
        for j in (i - l + 1)..=i {
            let Some(ui) = self.slot_at(get, j) else { continue };
            let delta = self.context_radius();
            let mut ctx: Vec<Option<usize>> = vec![None; 2 * delta + 1];
            ctx[delta] = Some(ui);
            for (dir, range) in [(-1i64, 1..=delta), (1, 1..=delta)] {
                for k in range {
                    let slot = self.slot_at(get, j + dir * k as i64 * stride);
                    let pos = (delta as i64 + dir * k as i64) as usize;
                    match slot {
                        Some(v) => ctx[pos] = Some(v),
                        None => break,
                    }
                }
            }
            let mapped = self.rewrite(&ctx, ui);
            return self.u[mapped].letters()[(i - j) as usize];
        }
        get(i)
    }
}

/// Overlap check mirroring the defining condition: two words of `wUw` can
/// share a proper prefix/suffix only of length `|w|`.
pub fn conveyor_overlap_ok(c: &ConveyorSystem) -> Option<String> {
    let blocks: Vec<Word> = c.u.iter().map(|u| c.w.concat(u).concat(&c.w)).collect();
    for a in &blocks {
        for b in &blocks {
            for o in 1..a.len() {
                if a.letters()[a.len() - o..] == b.letters()[..o] && o != c.w.len() {
                    return Some(format!(
                        "{a} and {b} overlap with length {o} ≠ {}",
                        c.w.len()
                    ));
                }
            }
        }
    }
    None
}

/// Validates the overlap condition and the bijectivity hypothesis on
/// `(wU)^k w` for `k ≤ k_check`.
pub fn validate_conveyor(c: &ConveyorSystem, k_check: usize) -> Result<()> {
    if let Some(v) = conveyor_overlap_ok(c) {
        return Err(Error::Domain(format!("conveyor overlap violation: {v}")));
    }
    let m = c.u.len();
    for k in 1..=k_check {
        let mut tuples = vec![Vec::new()];
        for _ in 0..k {
            tuples = tuples
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..m).map(move |v| {
                        let mut t2 = t.clone();
                        t2.push(v);
                        t2
                    })
                })
                .collect();
        }
        let mut seen = std::collections::HashSet::new();
        for t in &tuples {
            let image: Vec<usize> = (0..k)
                .map(|s| {
                    let delta = c.context_radius();
                    let mut ctx: Vec<Option<usize>> = vec![None; 2 * delta + 1];
                    for (pos, slot) in ctx.iter_mut().enumerate() {
                        let rel = pos as i64 - delta as i64 + s as i64;
                        if (0..k as i64).contains(&rel) {
                            *slot = Some(t[rel as usize]);
                        }
                    }
                    c.rewrite(&ctx, t[s])
                })
                .collect();
            if !seen.insert(image) {
                return Err(Error::Domain(format!(
                    "conveyor rule is not injective on (wU)^{k}w (witness tuple {t:?})"
                )));
            }
        }
    }
    Ok(())
}

/// The direct `f_{wUw}` evaluator on sequences.
pub fn direct_conveyor_apply(c: &ConveyorSystem, x: &BiInfiniteSeq) -> Result<BiInfiniteSeq> {
    let r = c.margin();
    apply_windowed(
        |window| {
            let get = |j: i64| window[j as usize];
            c.value_at(&get, r as i64)
        },
        r,
        r,
        x,
    )
}

/// Converts a conveyor system into an annotated transducer pair acting as
/// `f_{wUw}` over `X_n`. The local rule is extracted at the smallest
/// sufficient window radius (verified by a one-letter-extension
/// consistency sweep).
pub fn conveyor_automorphism(c: &ConveyorSystem, n: u32) -> Result<(DetTransducer, Annotation)> {
    validate_conveyor(c, 2)?;
    let used = *c
        .u
        .iter()
        .flat_map(|v| v.letters())
        .chain(c.w.letters())
        .max()
        .unwrap();
    if used >= n {
        return Err(Error::Domain(format!(
            "conveyor system uses letter {used}, out of alphabet of size {n}"
        )));
    }

    let stride = c.w.len() + c.slot_len();
    let mut rho = stride + c.context_radius() * stride;
    let value_in = |window: &[Letter], i: usize| -> Letter {
        // positions outside the window read a letter that can never
        // complete a slot pattern consistently; model them by failing the
        // slot check via an out-of-range sentinel
        let get = |j: i64| -> Letter {
            if j >= 0 && (j as usize) < window.len() {
                window[j as usize]
            } else {
                n // sentinel outside the alphabet: never matches w or U
            }
        };
        c.value_at(&get, i as i64)
    };
    loop {
        let m = 2 * rho + 1;
        if (n as f64).powf((m + 2) as f64) > 2e7 {
            return Err(Error::BoundExceeded {
                op: "conveyor rule extraction".into(),
                detail: "radius insufficient within the enumeration budget".into(),
            });
        }
        // consistency sweep: the center value must not change under any
        // one-letter extension of the window on either side
        let mut consistent = true;
        'sweep: for big in all_words(n, m + 2) {
            let wide = big.letters();
            let v_big = value_in(wide, rho + 1);
            let v_small = value_in(&wide[1..m + 1], rho);
            if v_big != v_small {
                consistent = false;
                break 'sweep;
            }
        }
        if !consistent {
            rho += 1;
            continue;
        }
        let rule = LocalRule::from_fn(n, m, |w| value_in(w, rho))?;
        let (t, base) = local_rule_to_transducer(&rule)?;
        // probes: a run of two slots embedded in non-marker tails
        let u0 = &c.u[0];
        let u1 = &c.u[c.u.len() - 1];
        let run = c
            .w
            .concat(u0)
            .concat(&c.w)
            .concat(u1)
            .concat(&c.w);
        let probes: Vec<(BiInfiniteSeq, BiInfiniteSeq)> = [
            BiInfiniteSeq::new(Word::single(0), run.clone(), Word::single(0), 0)?,
            BiInfiniteSeq::new(Word::single(1), run, Word::single(1), 5)?,
            BiInfiniteSeq::new(c.w.concat(u0), Word::empty(), c.w.concat(u1), 0)?,
        ]
        .into_iter()
        .map(|x| {
            let y = direct_conveyor_apply(c, &x)?;
            Ok((x, y))
        })
        .collect::<Result<Vec<_>>>()?;
        let ann = fit_annotation_constant(&t, &base, &probes, 3 * m as i64)?;
        return Ok((t, ann));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::random_seq;
    use crate::minimize::{is_isomorphic, minimized_product};
    use crate::signatures::{in_dn, loop_state};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn marker_search_matches_enumeration() {
        assert!(search_marker_pair(2, 2).unwrap().is_none());
        let p = search_marker_pair(2, 3).unwrap().unwrap();
        assert_eq!((p.a(), p.b()), (&w("0,0,1"), &w("0,1,1")));
        assert_eq!(search_marker_pairs(2, 3, usize::MAX).unwrap().len(), 18);
        let p = search_marker_pair(2, 4).unwrap().unwrap();
        assert_eq!((p.a(), p.b()), (&w("0,0,0,1"), &w("0,0,1,1")));
        assert_eq!(search_marker_pairs(2, 4, usize::MAX).unwrap().len(), 96);
        let p = search_marker_pair(3, 2).unwrap().unwrap();
        assert_eq!((p.a(), p.b()), (&w("0,1"), &w("0,2")));
        assert_eq!(search_marker_pairs(3, 2, usize::MAX).unwrap().len(), 24);
        // explicit failing shapes
        assert!(marker_violation(&w("0,0"), &w("0,1")).is_some());
        assert!(marker_violation(&w("0,1"), &w("0,1")).is_some());
    }

    #[test]
    fn direct_marker_simulator_swaps_blocks() {
        let p = MarkerPair::new(w("0,0,1"), w("0,1,1")).unwrap();
        // …aaa·bbb… swaps to …bbb·aaa…
        let x = BiInfiniteSeq::new(p.a().clone(), Word::empty(), p.b().clone(), 0).unwrap();
        let y = direct_marker_apply(&p, &x).unwrap();
        let expect =
            BiInfiniteSeq::new(p.b().clone(), Word::empty(), p.a().clone(), 0).unwrap();
        assert_eq!(y, expect);
        // sequences without marker runs are fixed
        let z = BiInfiniteSeq::constant(1);
        assert_eq!(direct_marker_apply(&p, &z).unwrap(), z);
    }

    #[test]
    fn marker_automorphism_properties() {
        let p = MarkerPair::new(w("0,0,1"), w("0,1,1")).unwrap();
        let (t, a) = marker_automorphism(&p, 2).unwrap();
        // agrees with the direct simulator on random sequences
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..40 {
            let x = random_seq(2, &mut rng);
            assert_eq!(
                apply(&t, &a, &x).unwrap(),
                direct_marker_apply(&p, &x).unwrap(),
                "marker apply on {x}"
            );
        }
        // involution, in D_n, loop-state annotation 0
        let sq = minimized_product(&t, &t).unwrap();
        assert!(is_isomorphic(sq.det().unwrap(), &DetTransducer::identity(2)).unwrap());
        assert!(in_dn(&t).unwrap());
        for x in 0..2 {
            assert_eq!(a.value(loop_state(&t, x).unwrap()), 0);
        }
    }

    #[test]
    fn conveyor_overlap_and_validation() {
        let sys = |u: &[&str], rule: ConveyorRule| {
            ConveyorSystem::new(w("1,1,0"), u.iter().map(|s| w(s)).collect(), rule)
        };
        let id2 = ConveyorRule::Letterwise(vec![0, 1]);
        assert!(validate_conveyor(&sys(&["0", "1"], id2.clone()).unwrap(), 3).is_ok());
        assert!(
            validate_conveyor(&sys(&["0,0", "0,1", "1,0"], ConveyorRule::Letterwise(vec![1, 2, 0])).unwrap(), 3)
                .is_ok()
        );
        // w = 00 overlaps itself at length 1
        assert!(validate_conveyor(
            &ConveyorSystem::new(w("0,0"), vec![w("1")], ConveyorRule::Letterwise(vec![0])).unwrap(),
            1
        )
        .is_err());
        // non-bijective letterwise rules are rejected at construction
        assert!(sys(&["0", "1"], ConveyorRule::Letterwise(vec![0, 0])).is_err());
    }

    #[test]
    fn conveyor_identity_rule_is_identity() {
        let c = ConveyorSystem::new(
            w("1,1,0"),
            vec![w("0"), w("1")],
            ConveyorRule::Letterwise(vec![0, 1]),
        )
        .unwrap();
        let (t, a) = conveyor_automorphism(&c, 2).unwrap();
        assert!(is_isomorphic(&t, &DetTransducer::identity(2)).unwrap());
        assert_eq!(a.values(), &[0]);
    }

    #[test]
    fn conveyor_transposition_is_an_involution_in_dn() {
        let c = ConveyorSystem::new(
            w("1,1,0"),
            vec![w("0"), w("1")],
            ConveyorRule::Letterwise(vec![1, 0]),
        )
        .unwrap();
        let (t, a) = conveyor_automorphism(&c, 2).unwrap();
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..40 {
            let x = random_seq(2, &mut rng);
            assert_eq!(
                apply(&t, &a, &x).unwrap(),
                direct_conveyor_apply(&c, &x).unwrap(),
                "conveyor apply on {x}"
            );
        }
        let sq = minimized_product(&t, &t).unwrap();
        assert!(is_isomorphic(sq.det().unwrap(), &DetTransducer::identity(2)).unwrap());
        assert!(in_dn(&t).unwrap());
        for x in 0..2 {
            assert_eq!(a.value(loop_state(&t, x).unwrap()), 0);
        }
    }
}
