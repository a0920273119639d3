//! The reverse non-deterministic transducer `rev(T)`, domains of reversed
//! states, path greatest-common-prefixes, the `rec`/`mrec` reconstruction
//! of a deterministic machine from a non-deterministic one, the reverse
//! automorphism `T ↦ mrec(rev(T))`, rev-sig, and the non-deterministic
//! inverse view.

use crate::error::{Error, Result};
use crate::images::{antichain_by_safety, Antichain};
use crate::machine::{DetTransducer, StateId};
use crate::minimize::{minimize, Minimized};
use crate::nd::{NdEdge, NondetTransducer};
use crate::signatures::{sig, SigValue};
use crate::sync;
use crate::word::{Letter, Word};
use std::collections::{HashMap, HashSet};

/// Which edge labels a traversal reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Input,
    Output,
}

fn label(e: &NdEdge, side: Side) -> &Word {
    match side {
        Side::Input => &e.input,
        Side::Output => &e.output,
    }
}

/// A traversal position: at a state, or part-way through an edge label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum NdConfig {
    Node(StateId),
    Mid(usize, usize), // (edge index, letters of its label already read)
}

/// All positions after additionally reading `c` on the chosen side.
/// Node positions first expand along ε-labeled edges (the no-ε-circuit
/// invariant bounds that expansion).
fn nd_step(t: &NondetTransducer, side: Side, set: &[NdConfig], c: Letter) -> Vec<NdConfig> {
    let mut out: Vec<NdConfig> = Vec::new();
    let mut seen: HashSet<NdConfig> = HashSet::new();
    let mut work: Vec<NdConfig> = set.to_vec();
    while let Some(cfg) = work.pop() {
        if !seen.insert(cfg) {
            continue;
        }
        match cfg {
            NdConfig::Node(r) => {
                for (i, e) in t.edges_from(r) {
                    let w = label(e, side);
                    if w.is_empty() {
                        work.push(NdConfig::Node(e.dst));
                    } else if w.letters()[0] == c {
                        out.push(if w.len() == 1 {
                            NdConfig::Node(e.dst)
                        } else {
                            NdConfig::Mid(i, 1)
                        });
                    }
                }
            }
            NdConfig::Mid(i, pos) => {
                let e = &t.edges()[i];
                let w = label(e, side);
                if w.letters()[pos] == c {
                    out.push(if pos + 1 == w.len() {
                        NdConfig::Node(e.dst)
                    } else {
                        NdConfig::Mid(i, pos + 1)
                    });
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Reduced antichain covering the set of streams readable from `q` on the
/// chosen side: the domain (input side) or image (output side) of `q`.
pub fn nd_antichain(
    t: &NondetTransducer,
    q: StateId,
    side: Side,
    bound: usize,
) -> Result<Antichain> {
    if !t.every_state_has_out_edge() {
        return Err(Error::Domain(
            "non-deterministic machine has a state with no outgoing edge".into(),
        ));
    }
    let mut memo = HashMap::new();
    antichain_by_safety(
        t.alphabet().size(),
        vec![NdConfig::Node(q)],
        bound,
        500_000,
        &mut memo,
        &mut |s, c| nd_step(t, side, s, c),
        &format!(
            "{} of {}",
            match side {
                Side::Input => "domain",
                Side::Output => "image",
            },
            t.name(q)
        ),
    )
}

/// [`nd_antichain`] for every state at once, with the safety memo shared
/// across states so overlapping explorations are paid for once.
pub fn nd_antichains_all(
    t: &NondetTransducer,
    side: Side,
    bound: usize,
) -> Result<Vec<Antichain>> {
    if !t.every_state_has_out_edge() {
        return Err(Error::Domain(
            "non-deterministic machine has a state with no outgoing edge".into(),
        ));
    }
    let mut memo = HashMap::new();
    (0..t.state_count())
        .map(|q| {
            antichain_by_safety(
                t.alphabet().size(),
                vec![NdConfig::Node(q)],
                bound,
                500_000,
                &mut memo,
                &mut |s, c| nd_step(t, side, s, c),
                &format!(
                    "{} of {}",
                    match side {
                        Side::Input => "domain",
                        Side::Output => "image",
                    },
                    t.name(q)
                ),
            )
        })
        .collect()
}

/// The reverse of a deterministic machine: an edge `(x, q̄, p̄)` with
/// output `reverse(λ(x,p))` for every edge `π(x,p) = q` of `T`. Reversed
/// states carry a `~` suffix.
pub fn rev(t: &DetTransducer) -> Result<NondetTransducer> {
    let names = t.names().iter().map(|nm| format!("{nm}~")).collect();
    let edges = t
        .states()
        .flat_map(|p| {
            t.alphabet().letters().map(move |x| NdEdge {
                input: Word::single(x),
                src: t.step(p, x),
                dst: p,
                output: t.output(p, x).reverse(),
            })
        })
        .collect();
    NondetTransducer::new(t.alphabet(), names, edges)
}

/// The inverse of `T` viewed non-deterministically: each edge
/// `p --x|u--> q` of `T` becomes an edge reading `u` from `p` to `q` with
/// output `x`.
pub fn nd_inverse_view(t: &DetTransducer) -> Result<NondetTransducer> {
    let edges = t
        .states()
        .flat_map(|p| {
            t.alphabet().letters().map(move |x| NdEdge {
                input: t.output(p, x).clone(),
                src: p,
                dst: t.step(p, x),
                output: Word::single(x),
            })
        })
        .collect();
    NondetTransducer::new(t.alphabet(), t.names().to_vec(), edges)
}

/// `{x ∈ X_n^k : the reverse of x forces q in T}`, presented at uniform
/// depth `k`. `N` must be a reverse machine and `k` at least the depth of
/// the domain antichain of `q̄`.
pub fn rev_domain(t: &NondetTransducer, q: StateId, k: usize, bound: usize) -> Result<Antichain> {
    let a = nd_antichain(t, q, Side::Input, bound)?;
    if a.depth() > k {
        return Err(Error::Domain(format!(
            "domain of {} needs depth {}, got {k}",
            t.name(q),
            a.depth()
        )));
    }
    let n = t.alphabet().size();
    let mut words = Vec::new();
    for w in a.words() {
        let mut level = vec![w.clone()];
        for _ in w.len()..k {
            level = level
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |x| {
                        let mut e = v.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        words.extend(level);
    }
    Ok(Antichain::new(words))
}

/// Memoized answers to "can some infinite input-side path from this
/// position read an extension of `v`?". One oracle serves a whole
/// reconstruction, where the same (position, suffix) queries recur across
/// forced-path walks.
struct ReadOracle {
    memo: HashMap<(NdConfig, Word), bool>,
}

impl ReadOracle {
    fn new() -> Self {
        ReadOracle { memo: HashMap::new() }
    }

    fn can_read_cfg(&mut self, t: &NondetTransducer, cfg: NdConfig, v: &Word) -> bool {
        if v.is_empty() {
            return true;
        }
        if let Some(&b) = self.memo.get(&(cfg, v.clone())) {
            return b;
        }
        let rest = v.slice(1..v.len());
        let b = nd_step(t, Side::Input, &[cfg], v.letters()[0])
            .into_iter()
            .any(|next| self.can_read_cfg(t, next, &rest));
        self.memo.insert((cfg, v.clone()), b);
        b
    }

    fn can_read(&mut self, t: &NondetTransducer, q: StateId, v: &Word) -> bool {
        self.can_read_cfg(t, NdConfig::Node(q), v)
    }
}

/// The greatest common prefix of all infinite paths from `q` whose input
/// label extends `w`: returns `(edge indices, input label, output label)`.
/// Precondition: `U_w ⊆ dom(q)`.
pub fn nd_path_gcp(
    t: &NondetTransducer,
    q: StateId,
    w: &Word,
    bound: usize,
) -> Result<(Vec<usize>, Word, Word)> {
    nd_path_gcp_with(t, q, w, bound, &mut ReadOracle::new())
}

fn nd_path_gcp_with(
    t: &NondetTransducer,
    q: StateId,
    w: &Word,
    bound: usize,
    oracle: &mut ReadOracle,
) -> Result<(Vec<usize>, Word, Word)> {
    if !t.every_state_has_out_edge() {
        return Err(Error::Domain(
            "non-deterministic machine has a state with no outgoing edge".into(),
        ));
    }
    let mut cur = q;
    let mut v = w.clone();
    let mut path = Vec::new();
    let mut in_label = Word::empty();
    let mut out_label = Word::empty();
    loop {
        let mut candidates: Vec<usize> = Vec::new();
        for (i, e) in t.edges_from(cur) {
            let lab = &e.input;
            if v.is_empty() {
                candidates.push(i);
            } else if lab.is_prefix_of(&v) {
                if oracle.can_read(t, e.dst, &lab.strip_from(&v).unwrap()) {
                    candidates.push(i);
                }
            } else if v.is_prefix_of(lab) {
                candidates.push(i);
            }
        }
        match candidates.len() {
            0 => {
                return Err(Error::Domain(format!(
                    "path gcp: U_{w} is not contained in the domain of {}",
                    t.name(q)
                )))
            }
            1 => {
                let e = &t.edges()[candidates[0]];
                path.push(candidates[0]);
                in_label = in_label.concat(&e.input);
                out_label = out_label.concat(&e.output);
                v = e.input.strip_from(&v).unwrap_or_default();
                cur = e.dst;
                if path.len() > bound {
                    return Err(Error::BoundExceeded {
                        op: "path gcp".into(),
                        detail: format!(
                            "forced path from {} exceeds the guaranteed branching bound {bound}",
                            t.name(q)
                        ),
                    });
                }
            }
            _ => return Ok((path, in_label, out_label)),
        }
    }
}

/// Default bound `(n+1)·|Q|·(1 + max input-label length)`.
pub fn default_rec_bound(t: &NondetTransducer) -> usize {
    let d = t.edges().iter().map(|e| e.input.len()).max().unwrap_or(0);
    (t.alphabet().size() as usize + 1) * t.state_count() * (1 + d)
}

/// Reconstructs a deterministic machine from a strongly synchronizing
/// non-deterministic one. States are pairs `(w, q)` with `U_w ⊆ dom(q)`
/// and empty path-gcp, named `"w|q"`; reading `a` from `(w, q)` outputs
/// the output label of the forced path for `wa` and moves past it.
pub fn rec(t: &NondetTransducer, bound: usize) -> Result<DetTransducer> {
    let n = t.alphabet().size();
    let oracle = std::cell::RefCell::new(ReadOracle::new());
    // advance (w, q) past its forced path, restoring the empty-gcp invariant
    let reduce = |w: &Word, q: StateId| -> Result<(Word, StateId, Word)> {
        let (path, in_label, out_label) =
            nd_path_gcp_with(t, q, w, bound, &mut oracle.borrow_mut())?;
        let end = path.last().map_or(q, |&i| t.edges()[i].dst);
        let v = in_label.strip_from(w).unwrap_or_default();
        Ok((v, end, out_label))
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

    for (q, anti) in nd_antichains_all(t, Side::Input, bound)?.into_iter().enumerate() {
        for nu in anti.words() {
            let (v, p, _) = reduce(nu, q)?;
            add((v, p), &mut ids, &mut order, &mut queue);
        }
    }
    if order.is_empty() {
        return Err(Error::Domain("reconstruction found no states".into()));
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
                op: "rec".into(),
                detail: "reconstruction exceeds 100000 states".into(),
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

/// `mrec`: the minimized core of the reconstruction.
pub fn mrec(t: &NondetTransducer, bound: usize) -> Result<Minimized> {
    let raw = rec(t, bound)?;
    let cored = sync::core(&raw)?;
    minimize(&cored)
}

/// The reverse automorphism `T ↦ mrec(rev(T))`; applying it twice returns
/// a machine isomorphic to `T`.
pub fn rev_automorphism(t: &DetTransducer) -> Result<DetTransducer> {
    let r = rev(t)?;
    Ok(mrec(&r, default_rec_bound(&r))?.det()?.clone())
}

/// sig of the reverse-automorphism image, cross-checked against the sum of
/// the image cone counts of the reversed states.
pub fn rev_sig(t: &DetTransducer) -> Result<SigValue> {
    if t.alphabet().size() == 2 {
        // The value lives in the trivial group of residues mod 1, so the
        // recovery construction and the dual-route cross-check are vacuous.
        return Ok(SigValue::new(2, 0));
    }
    let r = rev(t)?;
    let bound = default_rec_bound(&r);
    let via_aut = sig(mrec(&r, bound)?.det()?)?;
    let n = t.alphabet().size();
    let modulus = (n - 1) as u64;
    let mut total: u64 = 0;
    for anti in nd_antichains_all(&r, Side::Output, bound)? {
        let m = anti.words().len() as u64;
        if modulus > 1 {
            total = (total + m) % modulus;
        } else {
            total += m;
        }
    }
    let via_counts = SigValue::new(n as u64, total);
    if via_aut != via_counts {
        return Err(Error::Internal(format!(
            "rev-sig routes disagree: {via_aut} vs {via_counts}"
        )));
    }
    Ok(via_aut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::images::invert_default;
    use crate::minimize::{is_isomorphic, minimized_product};
    use crate::pool::fixture;
    use crate::signatures::generator;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn mrec_det(t: &NondetTransducer) -> DetTransducer {
        mrec(t, default_rec_bound(t)).unwrap().det().unwrap().clone()
    }

    #[test]
    fn rec_of_det_view_is_isomorphic() {
        for t in [
            DetTransducer::identity(2),
            DetTransducer::sigma(2),
            fixture(),
            generator(6, 2, 3).unwrap(),
        ] {
            let nd = NondetTransducer::from_det(&t);
            let r = rec(&nd, default_rec_bound(&nd)).unwrap();
            assert!(is_isomorphic(&r, &t).unwrap());
        }
    }

    #[test]
    fn rev_of_identity_and_permutation() {
        let id = DetTransducer::identity(2);
        assert!(is_isomorphic(&mrec_det(&rev(&id).unwrap()), &id).unwrap());

        let p = DetTransducer::letter_permutation(3, &[1, 2, 0]).unwrap();
        // length-1 outputs are fixed by reversal, so the machine returns
        assert!(is_isomorphic(&mrec_det(&rev(&p).unwrap()), &p).unwrap());
    }

    #[test]
    fn rev_sigma_edges_and_domains() {
        let s = DetTransducer::sigma(2);
        let r = rev(&s).unwrap();
        // edge (x, x̄ → j̄) for all j, output j
        assert_eq!(r.edges().len(), 4);
        for e in r.edges() {
            assert_eq!(e.src, e.input.letters()[0] as usize);
        }
        // dom(ī) = U_i and the depth-1 presentation is {i}
        for i in 0..2usize {
            let d = rev_domain(&r, i, 1, 16).unwrap();
            assert_eq!(d.words(), &[Word::single(i as u32)]);
        }
    }

    #[test]
    fn gcp_is_empty_before_forcing() {
        let s = DetTransducer::sigma(2);
        let r = rev(&s).unwrap();
        let (path, _, _) = nd_path_gcp(&r, 0, &w("0"), 16).unwrap();
        assert!(path.is_empty());
    }

    #[test]
    fn rev_automorphism_is_an_involution_on_the_fixture() {
        let t = fixture();
        let once = rev_automorphism(&t).unwrap();
        let twice = rev_automorphism(&once).unwrap();
        assert!(is_isomorphic(&twice, &t).unwrap());
    }

    #[test]
    fn rev_automorphism_fixes_identity() {
        let id = DetTransducer::identity(2);
        assert!(is_isomorphic(&rev_automorphism(&id).unwrap(), &id).unwrap());
    }

    #[test]
    fn rev_sig_values() {
        let id = DetTransducer::identity(6);
        assert_eq!(rev_sig(&id).unwrap().residue(), 1);
        let t23 = generator(6, 2, 3).unwrap();
        let rs = rev_sig(&t23).unwrap();
        assert_eq!(rs.residue(), 2);
        // sig · rev-sig ≡ 1 (mod n−1)
        let s = sig(&t23).unwrap();
        assert!(s.mul(&rs).is_identity());
    }

    #[test]
    fn inverse_view_reconstructs_the_inverse() {
        for t in [fixture(), generator(6, 2, 3).unwrap()] {
            let view = nd_inverse_view(&t).unwrap();
            let r = mrec_det(&view);
            let inv = invert_default(&t).unwrap();
            assert!(is_isomorphic(&r, &inv).unwrap());
            // and it really is the group inverse
            let p = minimized_product(&t, &r).unwrap();
            let id = DetTransducer::identity(t.alphabet().size());
            assert!(is_isomorphic(p.det().unwrap(), &id).unwrap());
        }
    }

    #[test]
    fn rev_automorphism_is_multiplicative_on_a_sample() {
        let a = generator(6, 2, 3).unwrap();
        let b = generator(6, 3, 2).unwrap();
        let ab = minimized_product(&a, &b).unwrap().det().unwrap().clone();
        let lhs = rev_automorphism(&ab).unwrap();
        let ra = rev_automorphism(&a).unwrap();
        let rb = rev_automorphism(&b).unwrap();
        let rhs = minimized_product(&ra, &rb).unwrap().det().unwrap().clone();
        assert!(is_isomorphic(&lhs, &rhs).unwrap());
    }
}
