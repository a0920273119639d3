//! State images as clopen unions of cones, the remainder operator `L_q`,
//! inverse construction, cone counts, and homeomorphism-state detection.
//!
//! The image of a state `q` is the set of infinite outputs `λ(x, q)` for
//! `x ∈ X_n^ω`. It is explored through *producer configurations*
//! `(state, surplus)`: the machine sits in `state` and has already emitted
//! `surplus` beyond the inspected prefix. A cone `U_w` lies inside the
//! image exactly when the configuration set reached by consuming `w` is
//! *safe*: every further letter keeps the set non-empty (a greatest
//! fixpoint, i.e. a reachability certificate rather than sampling).

use crate::error::{Error, Result};
use crate::machine::{DetTransducer, StateId};
use crate::sync;
use crate::word::{Letter, Word};
use std::collections::{BTreeSet, HashMap, HashSet};

/// A reduced antichain of pairwise prefix-incomparable words covering a
/// clopen set: no word has all of its single-letter extensions present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antichain {
    words: Vec<Word>,
}

impl Antichain {
    pub fn new(mut words: Vec<Word>) -> Antichain {
        words.sort();
        words.dedup();
        Antichain { words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn depth(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// True iff the antichain is `{ε}` (the covered set is everything).
    pub fn is_full(&self) -> bool {
        self.words.len() == 1 && self.words[0].is_empty()
    }

    /// `(s, D)`: number of depth-`D` cylinders covered, at the uniform
    /// depth `D` = antichain depth.
    pub fn uniform_cone_count(&self, n: u32) -> (u64, usize) {
        let d = self.depth();
        let s = self
            .words
            .iter()
            .map(|w| (n as u64).pow((d - w.len()) as u32))
            .sum();
        (s, d)
    }

    /// Replaces every full sibling set `{νx : x ∈ X_n}` by `ν` until none
    /// remains.
    pub fn reduce(&self, n: u32) -> Antichain {
        let mut set: BTreeSet<Word> = self.words.iter().cloned().collect();
        loop {
            let mut replaced = false;
            let candidates: Vec<Word> = set
                .iter()
                .filter(|w| !w.is_empty())
                .map(|w| w.slice(0..w.len() - 1))
                .collect();
            for parent in candidates {
                let kids: Vec<Word> = (0..n)
                    .map(|x| {
                        let mut k = parent.clone();
                        k.push(x);
                        k
                    })
                    .collect();
                if kids.iter().all(|k| set.contains(k)) {
                    for k in &kids {
                        set.remove(k);
                    }
                    set.insert(parent);
                    replaced = true;
                    break;
                }
            }
            if !replaced {
                return Antichain { words: set.into_iter().collect() };
            }
        }
    }
}

impl std::fmt::Display for Antichain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}

type Config = (StateId, Word);
type ConfigSet = Vec<Config>; // sorted, deduplicated

/// Greatest-fixpoint safety over an abstract configuration space: a set is
/// safe iff for every letter the successor set is non-empty and safe. The
/// memo persists results across queries.
pub(crate) fn safe_in_graph<C, F>(
    set: &Vec<C>,
    n: u32,
    budget: usize,
    memo: &mut HashMap<Vec<C>, bool>,
    step: &mut F,
) -> Result<bool>
where
    C: Clone + Eq + std::hash::Hash,
    F: FnMut(&[C], Letter) -> Vec<C>,
{
    if let Some(&v) = memo.get(set) {
        return Ok(v);
    }
    // collect the subset graph reachable from `set`, stopping at
    // already-classified nodes
    let mut nodes: Vec<Vec<C>> = Vec::new();
    let mut index: HashMap<Vec<C>, usize> = HashMap::new();
    let mut succs: Vec<Vec<Option<usize>>> = Vec::new(); // None = classified leaf
    let mut leaf_value: Vec<Vec<bool>> = Vec::new();
    let mut stack = vec![set.clone()];
    index.insert(set.clone(), 0);
    nodes.push(set.clone());
    succs.push(Vec::new());
    leaf_value.push(Vec::new());
    while let Some(s) = stack.pop() {
        let i = index[&s];
        let mut row = Vec::new();
        let mut leaves = Vec::new();
        for c in 0..n {
            let nxt = step(&s, c);
            if nxt.is_empty() {
                row.push(None);
                leaves.push(false);
            } else if let Some(&v) = memo.get(&nxt) {
                row.push(None);
                leaves.push(v);
            } else if let Some(&j) = index.get(&nxt) {
                row.push(Some(j));
                leaves.push(true);
            } else {
                let j = nodes.len();
                if j > budget {
                    return Err(Error::BoundExceeded {
                        op: "cone safety".into(),
                        detail: "configuration-set graph too large".into(),
                    });
                }
                index.insert(nxt.clone(), j);
                nodes.push(nxt.clone());
                succs.push(Vec::new());
                leaf_value.push(Vec::new());
                stack.push(nxt);
                row.push(Some(j));
                leaves.push(true);
            }
        }
        succs[i] = row;
        leaf_value[i] = leaves;
    }
    // prune to the greatest fixpoint
    let m = nodes.len();
    let mut ok = vec![true; m];
    loop {
        let mut changed = false;
        for i in 0..m {
            if !ok[i] {
                continue;
            }
            let bad = succs[i].iter().zip(&leaf_value[i]).any(|(s, &lv)| match s {
                None => !lv,
                Some(j) => !ok[*j],
            });
            if bad {
                ok[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for (i, s) in nodes.into_iter().enumerate() {
        memo.insert(s, ok[i]);
    }
    Ok(ok[0])
}

/// Reduced antichain of cones covered from `initial` by recursive descent:
/// safe → whole cone inside, empty → disjoint, otherwise split. A parent
/// with all children safe is itself safe, so the result is automatically
/// in reduced form.
pub(crate) fn antichain_by_safety<C, F>(
    n: u32,
    initial: Vec<C>,
    bound: usize,
    budget: usize,
    memo: &mut HashMap<Vec<C>, bool>,
    step: &mut F,
    label: &str,
) -> Result<Antichain>
where
    C: Clone + Eq + std::hash::Hash,
    F: FnMut(&[C], Letter) -> Vec<C>,
{
    let mut words = Vec::new();
    let mut stack = vec![(initial, Word::empty())];
    while let Some((set, prefix)) = stack.pop() {
        if set.is_empty() {
            continue;
        }
        if safe_in_graph(&set, n, budget, memo, step)? {
            words.push(prefix);
            continue;
        }
        if prefix.len() >= bound {
            return Err(Error::NotClopen(format!(
                "{label} undecided at depth {bound}"
            )));
        }
        for c in 0..n {
            let mut p = prefix.clone();
            p.push(c);
            stack.push((step(&set, c), p));
        }
    }
    Ok(Antichain::new(words))
}

/// Explorer for producer configurations of one machine, with a global
/// safety memo shared across queries.
pub struct ImageExplorer<'a> {
    t: &'a DetTransducer,
    safe: HashMap<ConfigSet, bool>,
    visited_budget: usize,
}

impl<'a> ImageExplorer<'a> {
    pub fn new(t: &'a DetTransducer) -> Self {
        ImageExplorer { t, safe: HashMap::new(), visited_budget: 500_000 }
    }

    pub fn initial(&self, q: StateId) -> ConfigSet {
        vec![(q, Word::empty())]
    }

    /// All configurations after additionally producing the letter `c`.
    /// Configurations with empty surplus first expand along edges (the
    /// no-ε-output-cycle invariant bounds that expansion).
    pub fn step(&self, set: &[Config], c: Letter) -> ConfigSet {
        step_configs(self.t, set, c)
    }

    /// A safe configuration set certifies that the whole cone below the
    /// consumed prefix lies in the image.
    pub fn is_safe(&mut self, set: &ConfigSet) -> Result<bool> {
        let ImageExplorer { t, safe, visited_budget } = self;
        let t: &DetTransducer = t;
        safe_in_graph(set, t.alphabet().size(), *visited_budget, safe, &mut |s, c| {
            step_configs(t, s, c)
        })
    }
}

/// Free-function form of [`ImageExplorer::step`] for use in closures.
fn step_configs(t: &DetTransducer, set: &[Config], c: Letter) -> ConfigSet {
    let mut out: BTreeSet<Config> = BTreeSet::new();
    let mut seen: HashSet<Config> = HashSet::new();
    let mut work: Vec<Config> = set.to_vec();
    while let Some((q, o)) = work.pop() {
        if !seen.insert((q, o.clone())) {
            continue;
        }
        if o.is_empty() {
            for x in t.alphabet().letters() {
                work.push((t.step(q, x), t.output(q, x).clone()));
            }
        } else if o.letters()[0] == c {
            out.insert((q, o.slice(1..o.len())));
        }
    }
    out.into_iter().collect()
}

/// Default exploration bound `(n+1)·|Q|·(1 + max output length)`.
pub fn default_remainder_bound(t: &DetTransducer) -> usize {
    (t.alphabet().size() as usize + 1) * t.state_count() * (1 + t.max_output_len())
}

/// The reduced antichain `A` with `∪_{ν∈A} U_ν = im(q)`, or an error if the
/// image cannot be certified clopen within `bound` letters of depth.
pub fn image_antichain(t: &DetTransducer, q: StateId, bound: usize) -> Result<Antichain> {
    let mut memo = HashMap::new();
    antichain_by_safety(
        t.alphabet().size(),
        vec![(q, Word::empty())],
        bound,
        500_000,
        &mut memo,
        &mut |s, c| step_configs(t, s, c),
        &format!("image of {}", t.name(q)),
    )
}

/// Image antichains of every state at once. The safety memo is shared
/// across states, so overlapping successor explorations are paid for once.
pub fn image_antichains_all(t: &DetTransducer, bound: usize) -> Result<Vec<Antichain>> {
    let mut memo = HashMap::new();
    t.states()
        .map(|q| {
            antichain_by_safety(
                t.alphabet().size(),
                vec![(q, Word::empty())],
                bound,
                500_000,
                &mut memo,
                &mut |s, c| step_configs(t, s, c),
                &format!("image of {}", t.name(q)),
            )
        })
        .collect()
}

/// `(s, D)` for the image of `q`: cylinder count at the uniform depth.
pub fn uniform_cone_count(t: &DetTransducer, q: StateId, bound: usize) -> Result<(u64, usize)> {
    Ok(image_antichain(t, q, bound)?.uniform_cone_count(t.alphabet().size()))
}

/// True iff there is an infinite input from `r` whose output extends `v`.
fn can_produce(t: &DetTransducer, r: StateId, v: &Word) -> bool {
    let target = v.letters();
    let mut seen = HashSet::new();
    let mut stack = vec![(r, 0usize)];
    while let Some((s, pos)) = stack.pop() {
        if pos >= target.len() {
            return true;
        }
        if !seen.insert((s, pos)) {
            continue;
        }
        for x in t.alphabet().letters() {
            let o = t.output(s, x);
            let rest = &target[pos..];
            let k = o.len().min(rest.len());
            if o.letters()[..k] == rest[..k] {
                stack.push((t.step(s, x), pos + k));
            }
        }
    }
    false
}

/// `(w)L_q`: the greatest common prefix of all infinite inputs from `q`
/// whose output lies in `U_w`. Precondition: `U_w ⊆ im(q)`.
pub fn remainder_l(t: &DetTransducer, q: StateId, w: &Word, bound: usize) -> Result<Word> {
    let mut u = Word::empty();
    let mut state = q;
    let mut produced = 0usize; // letters of w already emitted along u
    loop {
        let mut viable: Vec<(Letter, usize, StateId)> = Vec::new();
        for x in t.alphabet().letters() {
            let o = t.output(state, x);
            let rest = w.len() - produced;
            let k = o.len().min(rest);
            if o.letters()[..k] != w.letters()[produced..produced + k] {
                continue;
            }
            let nxt = t.step(state, x);
            if o.len() >= rest || can_produce(t, nxt, &w.slice(produced + k..w.len())) {
                viable.push((x, produced + k, nxt));
            }
        }
        match viable.len() {
            0 => {
                return Err(Error::Domain(format!(
                    "remainder_L: U_{w} is not contained in the image of {}",
                    t.name(q)
                )))
            }
            1 => {
                let (x, np, ns) = viable[0];
                u.push(x);
                produced = np;
                state = ns;
                if u.len() > bound {
                    return Err(Error::BoundExceeded {
                        op: "remainder_L".into(),
                        detail: format!("|({w})L_{}| exceeds {bound}", t.name(q)),
                    });
                }
            }
            _ => return Ok(u),
        }
    }
}

/// Construction of the inverse machine: states are pairs `(w, q)` with
/// `U_w ⊆ im(q)` and `(w)L_q = ε`, named `"w|q"`; reading `a` from `(w,q)`
/// outputs `u = (wa)L_q` and moves to `(wa − λ(u,q), π(u,q))`.
pub fn invert_raw(t: &DetTransducer, bound: usize) -> Result<DetTransducer> {
    let n = t.alphabet().size();
    // reduce (w, q) by its forced input prefix to restore the invariant
    let reduce = |w: &Word, q: StateId| -> Result<(Word, StateId, Word)> {
        let u = remainder_l(t, q, w, bound)?;
        let (p, o) = t.run(q, &u)?;
        let v = match o.strip_from(w) {
            Some(v) => v,
            None => {
                if !w.is_prefix_of(&o) {
                    return Err(Error::Internal(
                        "remainder output incomparable with target".into(),
                    ));
                }
                Word::empty()
            }
        };
        Ok((v, p, u))
    };

    let mut ids: HashMap<(Word, StateId), StateId> = HashMap::new();
    let mut order: Vec<(Word, StateId)> = Vec::new();
    let mut queue: Vec<StateId> = Vec::new();
    let add = |key: (Word, StateId),
               ids: &mut HashMap<(Word, StateId), StateId>,
                   order: &mut Vec<(Word, StateId)>,
                   queue: &mut Vec<StateId>| {
        if let Some(&i) = ids.get(&key) {
            i
        } else {
            let i = order.len();
            ids.insert(key.clone(), i);
            order.push(key);
            queue.push(i);
            i
        }
    };

    for q in t.states() {
        let anti = image_antichain(t, q, bound)?;
        for nu in anti.words() {
            let (v, p, _) = reduce(nu, q)?;
            add((v, p), &mut ids, &mut order, &mut queue);
        }
    }
    if order.is_empty() {
        return Err(Error::Domain("inverse construction found no states".into()));
    }

    let mut rows: Vec<Vec<(StateId, Word)>> = Vec::new();
    while let Some(i) = queue.pop() {
        while rows.len() <= i {
            rows.push(Vec::new());
        }
        let (w, q) = order[i].clone();
        let mut row = Vec::with_capacity(n as usize);
        for a in 0..n {
            let mut wa = w.clone();
            wa.push(a);
            let (v, p, u) = reduce(&wa, q)?;
            let j = add((v, p), &mut ids, &mut order, &mut queue);
            row.push((j, u));
        }
        rows[i] = row;
        if order.len() > 100_000 {
            return Err(Error::BoundExceeded {
                op: "invert".into(),
                detail: "inverse state exploration exceeds 100000 states".into(),
            });
        }
    }
    while rows.len() < order.len() {
        rows.push(Vec::new());
    }
    let names = order
        .iter()
        .map(|(w, q)| format!("{w}|{}", t.name(*q)))
        .collect();
    DetTransducer::new(t.alphabet(), names, rows)
}

/// The minimized inverse.
pub fn invert(t: &DetTransducer, bound: usize) -> Result<DetTransducer> {
    let raw = invert_raw(t, bound)?;
    let cored = sync::core(&raw)?;
    Ok(crate::minimize::minimize(&cored)?.det()?.clone())
}

/// Inverse with the default bound.
pub fn invert_default(t: &DetTransducer) -> Result<DetTransducer> {
    invert(t, default_remainder_bound(t))
}

/// True iff the image of `q` is the whole space.
pub fn is_homeomorphism_state(t: &DetTransducer, q: StateId, bound: usize) -> Result<bool> {
    Ok(image_antichain(t, q, bound)?.is_full())
}

/// True iff the machine is synchronous and every state's single-letter
/// output map is a permutation of the alphabet.
pub fn is_automaton_invertible(t: &DetTransducer) -> Result<bool> {
    if !t.is_synchronous() {
        return Err(Error::Domain(
            "automaton invertibility is defined for synchronous machines".into(),
        ));
    }
    let n = t.alphabet().size() as usize;
    for q in t.states() {
        let mut seen = vec![false; n];
        for x in t.alphabet().letters() {
            let o = t.output(q, x).letters()[0] as usize;
            if seen[o] {
                return Ok(false);
            }
            seen[o] = true;
        }
    }
    Ok(true)
}

/// Synchronizing levels of `T` and of its constructed inverse.
pub fn is_bisynchronizing(t: &DetTransducer) -> Result<(usize, usize)> {
    let j = sync::sync_level(t, sync::default_max_k(t))?.level();
    let inv = invert_default(t)?;
    let k = sync::sync_level(&inv, sync::default_max_k(&inv))?.level();
    Ok((j, k))
}

/// `H_n` membership: synchronous, every state's single-letter output map a
/// permutation, and the inverse again strongly synchronizing — the carrier
/// of the one-sided-shift automorphisms.
pub fn in_hn(t: &DetTransducer) -> Result<bool> {
    if !t.is_synchronous() || !is_automaton_invertible(t)? {
        return Ok(false);
    }
    match is_bisynchronizing(t) {
        Ok(_) => Ok(true),
        Err(Error::NotSynchronizing(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimize::{is_isomorphic, minimized_product};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn identity_image_full() {
        let id = DetTransducer::identity(2);
        let a = image_antichain(&id, 0, 16).unwrap();
        assert!(a.is_full());
        assert_eq!(a.uniform_cone_count(2), (1, 0));
        assert!(is_homeomorphism_state(&id, 0, 16).unwrap());
    }

    #[test]
    fn sigma_images_are_single_cones() {
        let s = DetTransducer::sigma(2);
        for i in 0..2usize {
            let a = image_antichain(&s, i, 16).unwrap();
            assert_eq!(a.words(), &[Word::single(i as u32)]);
            assert_eq!(a.uniform_cone_count(2), (1, 1));
        }
    }

    #[test]
    fn remainder_basics() {
        let id = DetTransducer::identity(2);
        assert_eq!(remainder_l(&id, 0, &w("0,1"), 16).unwrap(), w("0,1"));
        let s = DetTransducer::sigma(2);
        // from state i of Σ_2 every input maps into U_i
        assert_eq!(remainder_l(&s, 1, &w("1"), 16).unwrap(), Word::empty());
    }

    #[test]
    fn invert_identity_and_permutation() {
        let id = DetTransducer::identity(2);
        let inv = invert_default(&id).unwrap();
        assert!(is_isomorphic(&inv, &id).unwrap());

        let tr = DetTransducer::letter_permutation(3, &[1, 2, 0]).unwrap();
        let inv = invert_default(&tr).unwrap();
        let expect = DetTransducer::letter_permutation(3, &[2, 0, 1]).unwrap();
        assert!(is_isomorphic(&inv, &expect).unwrap());
    }

    #[test]
    fn invert_sigma_gives_group_inverse() {
        let s = DetTransducer::sigma(2);
        let inv = invert_default(&s).unwrap();
        let p = minimized_product(&s, &inv).unwrap();
        assert!(is_isomorphic(p.det().unwrap(), &DetTransducer::identity(2)).unwrap());
        let p = minimized_product(&inv, &s).unwrap();
        assert!(is_isomorphic(p.det().unwrap(), &DetTransducer::identity(2)).unwrap());
    }

    #[test]
    fn automaton_invertibility() {
        assert!(is_automaton_invertible(&DetTransducer::identity(2)).unwrap());
        assert!(!is_automaton_invertible(&DetTransducer::sigma(2)).unwrap());
        let tr = DetTransducer::letter_permutation(2, &[1, 0]).unwrap();
        assert!(is_automaton_invertible(&tr).unwrap());
    }

    #[test]
    fn reduce_rule() {
        let a = Antichain::new(vec![w("0,0"), w("0,1"), w("1")]).reduce(2);
        assert!(a.is_full());
    }
}
