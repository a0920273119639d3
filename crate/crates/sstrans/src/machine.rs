//! Deterministic letter-input, word-output transducers and their basic
//! calculus: extended transition/output maps, products, the greatest common
//! prefix operator Λ, and incomplete-response removal.
//!
//! A machine `T = (X_n, Q, π, λ)` has a total transition `π(x, q)` and a
//! total output `λ(x, q)` (a word, possibly empty) for every letter `x` and
//! state `q`. Validation rejects *degenerate* machines in which some cycle
//! emits no output at all, so every infinite input produces an infinite
//! output.

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// Index of a state inside a [`DetTransducer`].
pub type StateId = usize;

/// A deterministic transducer. States carry opaque string names preserved
/// through parsing; operations that build new machines synthesize
/// traceable names (e.g. product states are named `"p,q"`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetTransducer {
    alphabet: Alphabet,
    names: Vec<String>,
    /// `next[q][x]` = π(x, q)
    next: Vec<Vec<StateId>>,
    /// `out[q][x]` = λ(x, q)
    out: Vec<Vec<Word>>,
}

/// Result of a Λ computation: either a finite greatest common prefix or
/// the degenerate image-size-1 case, reported with the canonical rotation
/// of the eventual period (the `Z_x` word).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gcp {
    Finite(Word),
    Infinite(Word),
}

impl Gcp {
    pub fn finite(&self) -> Result<&Word> {
        match self {
            Gcp::Finite(w) => Ok(w),
            Gcp::Infinite(x) => Err(Error::Domain(format!(
                "degenerate: Z_x case with period {x}"
            ))),
        }
    }
}

impl DetTransducer {
    /// Builds and validates a machine. `edges[q][x] = (target, output)`.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        edges: Vec<Vec<(StateId, Word)>>,
    ) -> Result<DetTransducer> {
        if names.is_empty() {
            return Err(Error::Invalid("machine needs at least one state".into()));
        }
        if edges.len() != names.len() {
            return Err(Error::Invalid("edge table size mismatch".into()));
        }
        {
            let mut seen = std::collections::HashSet::new();
            for nm in &names {
                if !seen.insert(nm) {
                    return Err(Error::Invalid(format!("duplicate state name {nm:?}")));
                }
            }
        }
        let n = alphabet.size() as usize;
        let mut next = Vec::with_capacity(names.len());
        let mut out = Vec::with_capacity(names.len());
        for (q, row) in edges.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!(
                    "state {} must have exactly one edge per letter",
                    names[q]
                )));
            }
            let mut nr = Vec::with_capacity(n);
            let mut or = Vec::with_capacity(n);
            for (x, (dst, w)) in row.into_iter().enumerate() {
                if dst >= names.len() {
                    return Err(Error::Invalid(format!(
                        "edge ({}, {x}) targets unknown state", names[q]
                    )));
                }
                w.check_alphabet(alphabet)?;
                nr.push(dst);
                or.push(w);
            }
            next.push(nr);
            out.push(or);
        }
        let t = DetTransducer { alphabet, names, next, out };
        t.check_non_degenerate()?;
        Ok(t)
    }

    /// Rejects machines with a cycle whose concatenated output is empty.
    fn check_non_degenerate(&self) -> Result<()> {
        // cycle search restricted to ε-output edges
        let m = self.state_count();
        let mut color = vec![0u8; m]; // 0 unvisited, 1 on stack, 2 done
        for start in 0..m {
            if color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some(top) = stack.last_mut() {
                let q = top.0;
                if top.1 >= self.alphabet.size() as usize {
                    color[q] = 2;
                    stack.pop();
                    continue;
                }
                let x = top.1;
                top.1 += 1;
                if self.out[q][x].is_empty() {
                    let dst = self.next[q][x];
                    match color[dst] {
                        0 => {
                            color[dst] = 1;
                            stack.push((dst, 0));
                        }
                        1 => {
                            return Err(Error::Invalid(format!(
                                "degenerate machine: cycle through {} emits no output",
                                self.names[dst]
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        0..self.state_count()
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|s| s == name)
    }

    pub fn step(&self, q: StateId, x: Letter) -> StateId {
        self.next[q][x as usize]
    }

    pub fn output(&self, q: StateId, x: Letter) -> &Word {
        &self.out[q][x as usize]
    }

    /// Longest single-letter output in the machine.
    pub fn max_output_len(&self) -> usize {
        self.out
            .iter()
            .flat_map(|row| row.iter().map(|w| w.len()))
            .max()
            .unwrap_or(0)
    }

    /// True iff every single-letter output has length exactly 1.
    pub fn is_synchronous(&self) -> bool {
        self.out.iter().all(|row| row.iter().all(|w| w.len() == 1))
    }

    /// Extended maps: returns `(π(w, q), λ(w, q))`.
    pub fn run(&self, q: StateId, w: &Word) -> Result<(StateId, Word)> {
        let mut cur = q;
        let mut acc = Word::empty();
        for &x in w.letters() {
            if !self.alphabet.contains(x) {
                return Err(Error::Format(format!(
                    "letter {x} out of alphabet of size {}",
                    self.alphabet.size()
                )));
            }
            acc.extend(&self.out[cur][x as usize]);
            cur = self.next[cur][x as usize];
        }
        Ok((cur, acc))
    }

    /// The identity transducer: one state copying every letter.
    pub fn identity(n: u32) -> DetTransducer {
        let alphabet = Alphabet::new(n).expect("n ≥ 2");
        let edges = vec![(0..n).map(|x| (0, Word::single(x))).collect()];
        DetTransducer::new(alphabet, vec!["id".into()], edges).expect("identity is valid")
    }

    /// The shift transducer `Σ_n`: `π(x, i) = x`, `λ(x, i) = i`.
    pub fn sigma(n: u32) -> DetTransducer {
        let alphabet = Alphabet::new(n).expect("n ≥ 2");
        let names = (0..n).map(|i| format!("q{i}")).collect();
        let edges = (0..n)
            .map(|i| (0..n).map(|x| (x as StateId, Word::single(i))).collect())
            .collect();
        DetTransducer::new(alphabet, names, edges).expect("sigma is valid")
    }

    /// Single-state synchronous machine applying a letter permutation.
    pub fn letter_permutation(n: u32, perm: &[Letter]) -> Result<DetTransducer> {
        let alphabet = Alphabet::new(n)?;
        if perm.len() != n as usize {
            return Err(Error::Invalid("permutation arity mismatch".into()));
        }
        let mut seen = vec![false; n as usize];
        for &p in perm {
            if !alphabet.contains(p) || seen[p as usize] {
                return Err(Error::Invalid("not a permutation of the alphabet".into()));
            }
            seen[p as usize] = true;
        }
        let edges = vec![(0..n).map(|x| (0, Word::single(perm[x as usize]))).collect()];
        DetTransducer::new(alphabet, vec!["p".into()], edges)
    }

    /// Transducer product: the output of `self` is fed into `other`.
    /// States are pairs named `"p,q"`.
    pub fn product(&self, other: &DetTransducer) -> Result<DetTransducer> {
        if self.alphabet != other.alphabet {
            return Err(Error::Domain("alphabet mismatch in product".into()));
        }
        let n = self.alphabet.size();
        let m2 = other.state_count();
        let names = self
            .names
            .iter()
            .flat_map(|p| other.names.iter().map(move |q| format!("{p},{q}")))
            .collect();
        let mut edges = Vec::with_capacity(self.state_count() * m2);
        for p in self.states() {
            for q in other.states() {
                let mut row = Vec::with_capacity(n as usize);
                for x in 0..n {
                    let p2 = self.next[p][x as usize];
                    let mid = &self.out[p][x as usize];
                    let (q2, w) = other.run(q, mid)?;
                    row.push((p2 * m2 + q2, w));
                }
                edges.push(row);
            }
        }
        DetTransducer::new(self.alphabet, names, edges)
    }

    /// Λ(ε, q) for every state: the greatest common prefix of all outputs
    /// from `q`, computed as the limit of the monotone iteration
    /// `G_{d+1}(q) = gcp_x( λ(x,q)·G_d(π(x,q)) )`.
    ///
    /// States whose image is a single point have unbounded Λ; they are
    /// reported as [`Gcp::Infinite`] with the canonical rotation of the
    /// eventual period.
    pub fn lambda_eps_all(&self, depth_bound: usize) -> Result<Vec<Gcp>> {
        let m = self.state_count();
        let mut g: Vec<Word> = vec![Word::empty(); m];
        let mut infinite = vec![false; m];
        let max_iter = 4 * depth_bound + 4 * m + 8;
        for _ in 0..max_iter {
            let mut changed = false;
            let mut ng = Vec::with_capacity(m);
            for q in 0..m {
                if infinite[q] {
                    ng.push(g[q].clone());
                    continue;
                }
                let mut acc: Option<Word> = None;
                for x in self.alphabet.letters() {
                    let cand = self.out[q][x as usize].concat(&g[self.next[q][x as usize]]);
                    acc = Some(match acc {
                        None => cand,
                        Some(a) => a.gcp(&cand),
                    });
                }
                let val = acc.expect("n ≥ 2");
                if val != g[q] {
                    changed = true;
                }
                ng.push(val);
            }
            g = ng;
            for q in 0..m {
                if g[q].len() > depth_bound {
                    infinite[q] = true;
                }
            }
            if !changed {
                break;
            }
            if infinite.iter().all(|&b| b) {
                break;
            }
        }
        let mut res = Vec::with_capacity(m);
        for q in 0..m {
            if infinite[q] {
                res.push(Gcp::Infinite(extract_eventual_period(&g[q]).ok_or_else(
                    || Error::BoundExceeded {
                        op: "lambda_gcp".into(),
                        detail: format!(
                            "state {} grows without a detectable period within {depth_bound}",
                            self.names[q]
                        ),
                    },
                )?));
            } else {
                // stabilization must have been reached
                res.push(Gcp::Finite(g[q].clone()));
            }
        }
        Ok(res)
    }

    /// Default Λ depth bound: `2·|Q|·(1 + max output length)`.
    pub fn default_lambda_bound(&self) -> usize {
        2 * self.state_count() * (1 + self.max_output_len())
    }

    /// Λ(w, q) = λ(w, q) · Λ(ε, π(w, q)).
    pub fn lambda_gcp(&self, q: StateId, w: &Word, depth_bound: usize) -> Result<Gcp> {
        let eps = self.lambda_eps_all(depth_bound)?;
        let (end, prefix) = self.run(q, w)?;
        Ok(match &eps[end] {
            Gcp::Finite(tail) => Gcp::Finite(prefix.concat(tail)),
            Gcp::Infinite(x) => Gcp::Infinite(x.clone()),
        })
    }

    /// Removes incomplete response without touching an initial state:
    /// `λ'(x, q) = Λ(x, q) − Λ(ε, q)`. Returns the rebuilt machine together
    /// with the per-state Λ(ε, q) words used.
    ///
    /// Errors with the `Z_x` diagnostic if any state has infinite Λ.
    pub fn remove_incomplete_response_noninitial(
        &self,
    ) -> Result<(DetTransducer, Vec<Word>)> {
        let eps = self.lambda_eps_all(self.default_lambda_bound())?;
        let mut lam = Vec::with_capacity(self.state_count());
        for (q, g) in eps.iter().enumerate() {
            match g {
                Gcp::Finite(w) => lam.push(w.clone()),
                Gcp::Infinite(x) => {
                    return Err(Error::Domain(format!(
                        "degenerate: Z_x case at state {} (period {x})",
                        self.names[q]
                    )))
                }
            }
        }
        let mut edges = Vec::with_capacity(self.state_count());
        for q in self.states() {
            let mut row = Vec::new();
            for x in self.alphabet.letters() {
                let dst = self.next[q][x as usize];
                let full = self.out[q][x as usize].concat(&lam[dst]);
                let new_out = lam[q].strip_from(&full).ok_or_else(|| {
                    Error::Internal(format!(
                        "Λ(ε,{}) is not a prefix of λ({x},·)·Λ(ε,target)",
                        self.names[q]
                    ))
                })?;
                row.push((dst, new_out));
            }
            edges.push(row);
        }
        let t = DetTransducer::new(self.alphabet, self.names.clone(), edges)?;
        Ok((t, lam))
    }

    /// Quotients by the coarsest partition in which states agree on every
    /// single-letter output and transition into equal blocks. Merged states
    /// have *identical* output trees, so this is sound on any machine; after
    /// incomplete-response removal it computes full ω-equivalence and the
    /// result is weakly minimal.
    ///
    /// Returns the quotient and the old-state → new-state map.
    pub fn merge_omega_equivalent_with_map(&self) -> (DetTransducer, Vec<StateId>) {
        let m = self.state_count();
        let n = self.alphabet.size() as usize;
        // initial partition: single-letter output signature
        let mut block: Vec<usize> = {
            let mut key_ids = std::collections::HashMap::new();
            let mut b = Vec::with_capacity(m);
            for q in 0..m {
                let key: Vec<&Word> = (0..n).map(|x| &self.out[q][x]).collect();
                let next_id = key_ids.len();
                b.push(*key_ids.entry(key).or_insert(next_id));
            }
            b
        };
        loop {
            let mut key_ids = std::collections::HashMap::new();
            let mut nb = Vec::with_capacity(m);
            for q in 0..m {
                let key: (usize, Vec<usize>) =
                    (block[q], (0..n).map(|x| block[self.next[q][x]]).collect());
                let next_id = key_ids.len();
                nb.push(*key_ids.entry(key).or_insert(next_id));
            }
            if nb == block {
                break;
            }
            block = nb;
        }
        // renumber blocks by first occurrence, pick representatives
        let mut order = Vec::new();
        let mut renum = std::collections::HashMap::new();
        for q in 0..m {
            renum.entry(block[q]).or_insert_with(|| {
                order.push(q);
                order.len() - 1
            });
        }
        let map: Vec<StateId> = (0..m).map(|q| renum[&block[q]]).collect();
        let names = order.iter().map(|&q| self.names[q].clone()).collect();
        let edges = order
            .iter()
            .map(|&q| {
                (0..n)
                    .map(|x| (map[self.next[q][x]], self.out[q][x].clone()))
                    .collect()
            })
            .collect();
        let t = DetTransducer::new(self.alphabet, names, edges)
            .expect("quotient of a valid machine is valid");
        (t, map)
    }

    pub fn merge_omega_equivalent(&self) -> DetTransducer {
        self.merge_omega_equivalent_with_map().0
    }

    /// Restriction to a subset of states (which must be transition-closed).
    pub fn restrict(&self, keep: &[StateId]) -> Result<DetTransducer> {
        let mut new_id = vec![usize::MAX; self.state_count()];
        for (i, &q) in keep.iter().enumerate() {
            new_id[q] = i;
        }
        let names = keep.iter().map(|&q| self.names[q].clone()).collect();
        let mut edges = Vec::with_capacity(keep.len());
        for &q in keep {
            let mut row = Vec::new();
            for x in self.alphabet.letters() {
                let dst = self.next[q][x as usize];
                if new_id[dst] == usize::MAX {
                    return Err(Error::Internal(format!(
                        "restriction not closed: {} → {}",
                        self.names[q], self.names[dst]
                    )));
                }
                row.push((new_id[dst], self.out[q][x as usize].clone()));
            }
            edges.push(row);
        }
        DetTransducer::new(self.alphabet, names, edges)
    }

    /// Renames every state (used to keep synthesized names readable).
    pub fn with_names(&self, names: Vec<String>) -> Result<DetTransducer> {
        let edges = self
            .states()
            .map(|q| {
                self.alphabet
                    .letters()
                    .map(|x| (self.next[q][x as usize], self.out[q][x as usize].clone()))
                    .collect()
            })
            .collect();
        DetTransducer::new(self.alphabet, names, edges)
    }
}

/// Detects the eventual period of a long forced-output prefix: the shortest
/// `p` such that the last half of `g` is `p`-periodic. Returns the canonical
/// rotation of the primitive period.
fn extract_eventual_period(g: &Word) -> Option<Word> {
    let len = g.len();
    if len < 4 {
        return None;
    }
    let start = len / 2;
    let letters = g.letters();
    for p in 1..=(len - start) / 2 {
        if (start..len - p).all(|i| letters[i] == letters[i + p]) {
            let period = g.slice(len - p..len);
            return Some(period.primitive_root().canonical_rotation());
        }
    }
    None
}

/// A transducer initialised at a chosen state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialDetTransducer {
    pub base: DetTransducer,
    pub initial: StateId,
}

impl InitialDetTransducer {
    pub fn new(base: DetTransducer, initial: StateId) -> Result<Self> {
        if initial >= base.state_count() {
            return Err(Error::Invalid("initial state out of range".into()));
        }
        Ok(InitialDetTransducer { base, initial })
    }

    /// Drops states unreachable from the initial state.
    pub fn trim(&self) -> InitialDetTransducer {
        let mut seen = vec![false; self.base.state_count()];
        let mut order = Vec::new();
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            order.push(q);
            for x in self.base.alphabet().letters() {
                let d = self.base.step(q, x);
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        order.sort_unstable();
        let base = self.base.restrict(&order).expect("reachable set is closed");
        let initial = order.iter().position(|&q| q == self.initial).unwrap();
        InitialDetTransducer { base, initial }
    }

    /// Incomplete-response removal for initialised machines: rebuilds the
    /// outputs as in the non-initial variant and adds a fresh initial state
    /// `q_{−1}` with `λ'(x, q_{−1}) = Λ(x, q_0)`.
    pub fn remove_incomplete_response(&self) -> Result<InitialDetTransducer> {
        let (stripped, lam) = self.base.remove_incomplete_response_noninitial()?;
        let n = self.base.alphabet().size() as usize;
        let mut names = stripped.names().to_vec();
        let mut fresh = "q-1".to_string();
        while names.contains(&fresh) {
            fresh.push('\'');
        }
        names.push(fresh);
        let qm1 = names.len() - 1;
        let mut edges: Vec<Vec<(StateId, Word)>> = stripped
            .states()
            .map(|q| {
                (0..n)
                    .map(|x| (stripped.step(q, x as Letter), stripped.output(q, x as Letter).clone()))
                    .collect()
            })
            .collect();
        // λ'(x, q_{−1}) = Λ(x, q_0) = λ(x, q_0)·Λ(ε, π(x, q_0))
        let q0 = self.initial;
        let row = (0..n)
            .map(|x| {
                let dst = self.base.step(q0, x as Letter);
                let w = self.base.output(q0, x as Letter).concat(&lam[dst]);
                (dst, w)
            })
            .collect();
        edges.push(row);
        let base = DetTransducer::new(self.base.alphabet(), names, edges)?;
        Ok(InitialDetTransducer { base, initial: qm1 }.trim())
    }

    /// ω-equivalence merge keeping track of the initial state.
    pub fn merge(&self) -> InitialDetTransducer {
        let (merged, map) = self.base.merge_omega_equivalent_with_map();
        InitialDetTransducer { base: merged, initial: map[self.initial] }
            .trim()
    }

    /// Minimization of an initialised machine: incomplete-response removal,
    /// merge, trim.
    pub fn minimize(&self) -> Result<InitialDetTransducer> {
        Ok(self.remove_incomplete_response()?.merge())
    }

    /// Structural equality test for minimized initialised machines: walks
    /// the product of the reachable parts from the initial states.
    pub fn is_isomorphic(&self, other: &InitialDetTransducer) -> bool {
        if self.base.alphabet() != other.base.alphabet() {
            return false;
        }
        let mut pairs = vec![(self.initial, other.initial)];
        let mut map = std::collections::HashMap::new();
        let mut inv = std::collections::HashMap::new();
        map.insert(self.initial, other.initial);
        inv.insert(other.initial, self.initial);
        while let Some((p, q)) = pairs.pop() {
            for x in self.base.alphabet().letters() {
                if self.base.output(p, x) != other.base.output(q, x) {
                    return false;
                }
                let (p2, q2) = (self.base.step(p, x), other.base.step(q, x));
                match (map.get(&p2), inv.get(&q2)) {
                    (None, None) => {
                        map.insert(p2, q2);
                        inv.insert(q2, p2);
                        pairs.push((p2, q2));
                    }
                    (Some(&q2m), Some(&p2m)) if q2m == q2 && p2m == p2 => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn w(s: &str) -> Word {
        if s.is_empty() {
            Word::empty()
        } else {
            Word::from_letters(s.chars().map(|c| c.to_digit(10).unwrap()))
        }
    }

    #[test]
    fn identity_runs() {
        let id = DetTransducer::identity(2);
        let (q, out) = id.run(0, &w("011")).unwrap();
        assert_eq!(q, 0);
        assert_eq!(out, w("011"));
        let (q, out) = id.run(0, &Word::empty()).unwrap();
        assert_eq!((q, out), (0, Word::empty()));
    }

    #[test]
    fn sigma_runs() {
        // Σ_2: from state 0, input 1 → output 0, state 1
        let s = DetTransducer::sigma(2);
        let (q, out) = s.run(0, &w("1")).unwrap();
        assert_eq!((q, out), (1, w("0")));
        let (q, out) = s.run(0, &w("10")).unwrap();
        assert_eq!((q, out), (0, w("01")));
    }

    #[test]
    fn product_shapes() {
        let s = DetTransducer::sigma(2);
        let p = s.product(&s).unwrap();
        assert_eq!(p.state_count(), 4);
        assert_eq!(p.name(1), "q0,q1");
        // λ_{ΣΣ}(x, (0,1)) = λ_Σ(λ_Σ(x,0), 1) = λ_Σ(0, 1) = 1
        assert_eq!(p.output(1, 0), &w("1"));
        assert_eq!(p.output(1, 1), &w("1"));
    }

    #[test]
    fn product_with_identity() {
        let id = DetTransducer::identity(2);
        let s = DetTransducer::sigma(2);
        let p = id.product(&s).unwrap();
        // states (0, i); same transition structure as Σ_2
        for x in 0..2u32 {
            for i in 0..2 {
                assert_eq!(p.output(i, x), s.output(i, x));
            }
        }
    }

    #[test]
    fn degenerate_rejected() {
        let a = Alphabet::new(2).unwrap();
        // single state, both edges silent
        let edges = vec![vec![(0, Word::empty()), (0, Word::empty())]];
        assert!(DetTransducer::new(a, vec!["q".into()], edges).is_err());
        // silent only on letter 0 is fine... but a 0-loop with ε output is a cycle
        let edges = vec![vec![(0, Word::empty()), (0, w("10"))]];
        assert!(DetTransducer::new(a, vec!["q".into()], edges).is_err());
    }

    #[test]
    fn lambda_eps_of_sigma() {
        // every output from state i of Σ_n begins with i and branches after
        let s = DetTransducer::sigma(2);
        let eps = s.lambda_eps_all(s.default_lambda_bound()).unwrap();
        assert_eq!(eps[0], Gcp::Finite(w("0")));
        assert_eq!(eps[1], Gcp::Finite(w("1")));
    }

    #[test]
    fn lambda_gcp_of_identity() {
        let id = DetTransducer::identity(2);
        assert_eq!(
            id.lambda_gcp(0, &w("01"), id.default_lambda_bound()).unwrap(),
            Gcp::Finite(w("01"))
        );
    }

    #[test]
    fn zx_detected() {
        // single state emitting "10" on every letter: image is the single
        // point (10)^∞; canonical period is 01
        let a = Alphabet::new(2).unwrap();
        let edges = vec![vec![(0, w("10")), (0, w("10"))]];
        let t = DetTransducer::new(a, vec!["z".into()], edges).unwrap();
        let eps = t.lambda_eps_all(t.default_lambda_bound()).unwrap();
        assert_eq!(eps[0], Gcp::Infinite(w("01")));
    }

    #[test]
    fn sigma_ir_removal_then_merge_is_identity() {
        // non-initial variant: every state of Σ_3 becomes identity-like
        let s = DetTransducer::sigma(3);
        let (stripped, lam) = s.remove_incomplete_response_noninitial().unwrap();
        for i in 0..3 {
            assert_eq!(lam[i], Word::single(i as u32));
        }
        assert_eq!(stripped.merge_omega_equivalent().state_count(), 1);
    }

    #[test]
    fn sigma_initial_minimize_keeps_leading_output() {
        // initialised at q0, Σ_3 maps x1 x2 … to 0 x1 x2 …, so the minimal
        // initial machine keeps a spike state emitting the leading 0
        let s = DetTransducer::sigma(3);
        let init = InitialDetTransducer::new(s, 0).unwrap();
        let min = init.minimize().unwrap();
        assert_eq!(min.base.state_count(), 2);
        let q = min.initial;
        for x in 0..3u32 {
            assert_eq!(
                min.base.output(q, x),
                &Word::from_letters([0, x])
            );
        }
    }

    #[test]
    fn merge_duplicated_state() {
        // two identical identity states
        let a = Alphabet::new(2).unwrap();
        let edges = vec![
            vec![(1, w("0")), (1, w("1"))],
            vec![(0, w("0")), (0, w("1"))],
        ];
        let t = DetTransducer::new(a, vec!["u".into(), "v".into()], edges).unwrap();
        assert_eq!(t.merge_omega_equivalent().state_count(), 1);
    }
}
