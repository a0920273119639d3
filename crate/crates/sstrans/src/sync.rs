//! Synchronizing levels, forced-state maps, and core extraction.
//!
//! A machine is *strongly synchronizing at level k* when the state reached
//! after reading any word of length `k` depends only on the word, not on
//! the starting state. The *core* is the subautomaton on the states that
//! arise as such forced states.

use crate::error::{Error, Result};
use crate::machine::{DetTransducer, StateId};
use crate::word::{all_words, Word};
use std::collections::{HashMap, HashSet};

/// Witness that a machine synchronizes at a level.
#[derive(Debug, Clone)]
pub struct SyncCertificate {
    level: usize,
}

impl SyncCertificate {
    pub fn level(&self) -> usize {
        self.level
    }

    /// The forced state of a word of length ≥ level.
    pub fn forced(&self, t: &DetTransducer, w: &Word) -> Result<StateId> {
        if w.len() < self.level {
            return Err(Error::Domain(format!(
                "word {w} shorter than synchronizing level {}",
                self.level
            )));
        }
        Ok(t.run(0, w)?.0)
    }

    /// The full forced map on words of length `level` (meant for small
    /// alphabet/level combinations).
    pub fn forced_map(&self, t: &DetTransducer) -> Result<Vec<(Word, StateId)>> {
        all_words(t.alphabet().size(), self.level)
            .into_iter()
            .map(|w| Ok((w.clone(), self.forced(t, &w)?)))
            .collect()
    }
}

// Sparse representation: sorted, deduplicated state lists. Frontier subsets
// shrink fast, so the total frontier mass stays near the state count even
// when the frontier holds thousands of subsets.
type Subset = Vec<StateId>;

fn full_subset(m: usize) -> Subset {
    (0..m).collect()
}

fn subset_step(t: &DetTransducer, s: &Subset, x: u32) -> Subset {
    let mut r: Vec<StateId> = s.iter().map(|&q| t.step(q, x)).collect();
    r.sort_unstable();
    r.dedup();
    r
}

fn is_singleton(s: &Subset) -> bool {
    s.len() == 1
}

/// Minimal level `k ≤ max_k` at which every length-`k` word forces a state.
///
/// Breadth-first over reachable subsets of `Q` starting from the full set;
/// a recurring frontier still containing a non-singleton subset certifies
/// that the machine never synchronizes.
pub fn sync_level(t: &DetTransducer, max_k: usize) -> Result<SyncCertificate> {
    let mut frontier: HashSet<Subset> = HashSet::new();
    frontier.insert(full_subset(t.state_count()));
    let mut seen_frontiers: HashMap<Vec<Subset>, usize> = HashMap::new();
    for k in 0..=max_k {
        if frontier.iter().all(is_singleton) {
            return Ok(SyncCertificate { level: k });
        }
        let mut key: Vec<Subset> = frontier.iter().cloned().collect();
        key.sort();
        if let Some(prev) = seen_frontiers.insert(key, k) {
            let witness = frontier
                .iter()
                .find(|s| !is_singleton(s))
                .expect("non-singleton present");
            let names: Vec<&str> = witness.iter().map(|&q| t.name(q)).collect();
            return Err(Error::NotSynchronizing(format!(
                "subset {{{}}} recurs (depths {prev} and {k})",
                names.join(",")
            )));
        }
        let mut next = HashSet::new();
        for s in &frontier {
            for x in t.alphabet().letters() {
                next.insert(subset_step(t, s, x));
            }
        }
        frontier = next;
    }
    Err(Error::BoundExceeded {
        op: "sync_level".into(),
        detail: format!("subsets still shrinking at max_k = {max_k}"),
    })
}

/// Default subset-exploration bound `|Q|²`.
pub fn default_max_k(t: &DetTransducer) -> usize {
    t.state_count() * t.state_count()
}

/// The set of forced states: states reachable from any fixed state in
/// exactly `level` steps.
pub fn core_states(t: &DetTransducer, cert: &SyncCertificate) -> Vec<StateId> {
    let mut cur: HashSet<StateId> = [0].into_iter().collect();
    for _ in 0..cert.level() {
        let mut next = HashSet::new();
        for &q in &cur {
            for x in t.alphabet().letters() {
                next.insert(t.step(q, x));
            }
        }
        cur = next;
    }
    let mut v: Vec<StateId> = cur.into_iter().collect();
    v.sort_unstable();
    v
}

/// Restriction of a strongly synchronizing machine to its forced states.
pub fn core(t: &DetTransducer) -> Result<DetTransducer> {
    let cert = sync_level(t, default_max_k(t))?;
    t.restrict(&core_states(t, &cert))
}

/// Like [`core`] but also returns the old → new state mapping
/// (`None` for dropped states).
pub fn core_with_map(t: &DetTransducer) -> Result<(DetTransducer, Vec<Option<StateId>>)> {
    let cert = sync_level(t, default_max_k(t))?;
    let keep = core_states(t, &cert);
    let mut map = vec![None; t.state_count()];
    for (i, &q) in keep.iter().enumerate() {
        map[q] = Some(i);
    }
    Ok((t.restrict(&keep)?, map))
}

/// Measures the synchronizing level of `product(T, U)` and asserts the
/// additivity bound `level ≤ level(T) + level(U)`.
pub fn check_product_level(t: &DetTransducer, u: &DetTransducer) -> Result<usize> {
    let j = sync_level(t, default_max_k(t))?.level();
    let k = sync_level(u, default_max_k(u))?.level();
    let p = t.product(u)?;
    let measured = sync_level(&p, default_max_k(&p))?.level();
    if measured > j + k {
        return Err(Error::Internal(format!(
            "product level {measured} exceeds the additivity bound {j}+{k}"
        )));
    }
    Ok(measured)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Alphabet, Word};

    #[test]
    fn identity_level_zero() {
        let id = DetTransducer::identity(2);
        assert_eq!(sync_level(&id, 4).unwrap().level(), 0);
    }

    #[test]
    fn sigma_level_one() {
        for n in [2u32, 3, 6] {
            let s = DetTransducer::sigma(n);
            let cert = sync_level(&s, 10).unwrap();
            assert_eq!(cert.level(), 1);
            // forced(x) = x
            for x in 0..n {
                assert_eq!(cert.forced(&s, &Word::single(x)).unwrap(), x as usize);
            }
        }
    }

    #[test]
    fn non_synchronizing_detected() {
        // two disconnected identity states never merge
        let a = Alphabet::new(2).unwrap();
        let w = |s: &str| Word::parse(s).unwrap();
        let edges = vec![
            vec![(0, w("0")), (0, w("1"))],
            vec![(1, w("0")), (1, w("1"))],
        ];
        let t = DetTransducer::new(a, vec!["u".into(), "v".into()], edges).unwrap();
        assert!(matches!(
            sync_level(&t, 16),
            Err(Error::NotSynchronizing(_))
        ));
    }

    #[test]
    fn core_idempotent_and_product_level() {
        let s = DetTransducer::sigma(2);
        let c = core(&s).unwrap();
        assert_eq!(c.state_count(), 2);
        let cc = core(&c).unwrap();
        assert_eq!(cc.state_count(), 2);
        assert!(check_product_level(&s, &s).unwrap() <= 2);
        let id = DetTransducer::identity(2);
        assert_eq!(check_product_level(&id, &s).unwrap(), 1);
    }

    #[test]
    fn forced_map_factors_through_lower_levels() {
        let s = DetTransducer::sigma(3);
        let cert = sync_level(&s, 10).unwrap();
        for w in all_words(3, cert.level() + 1) {
            let suffix = w.slice(w.len() - cert.level()..w.len());
            assert_eq!(
                cert.forced(&s, &w).unwrap(),
                cert.forced(&s, &suffix).unwrap()
            );
        }
    }
}
