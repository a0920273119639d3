//! Full minimization of strongly synchronizing transducers and the
//! isomorphism test used for `=` on minimal machines.
//!
//! The pipeline is: a sound structural premerge (states with identical
//! output trees), detection of the degenerate image-size-1 (`Z_x`) case,
//! incomplete-response removal, ω-equivalence merge, and core extraction.
//! The premerge step exists purely for scale: de Bruijn machines with tens
//! of thousands of states collapse before the Λ computations run.

use crate::error::{Error, Result};
use crate::machine::{DetTransducer, Gcp, StateId};
use crate::sync;
use crate::word::Word;

/// A minimization verdict: a genuine minimal machine or the degenerate
/// constant transducer `Z_x`.
#[derive(Debug, Clone)]
pub enum Minimized {
    Det(DetTransducer),
    Zx(Word),
}

impl Minimized {
    pub fn det(&self) -> Result<&DetTransducer> {
        match self {
            Minimized::Det(t) => Ok(t),
            Minimized::Zx(x) => Err(Error::Domain(format!(
                "degenerate: minimization produced Z_x with x = {x}"
            ))),
        }
    }
}

/// Minimization together with the data needed to transfer annotations:
/// the old-state → new-state map (`None` for states dropped by core
/// extraction) and Λ(ε, q) per old state.
#[derive(Debug, Clone)]
pub struct MinimizeOutcome {
    pub result: Minimized,
    pub map: Vec<Option<StateId>>,
    pub lambda_eps: Vec<Word>,
}

/// Minimizes a strongly synchronizing machine.
pub fn minimize_with_map(t: &DetTransducer) -> Result<MinimizeOutcome> {
    let m = t.state_count();
    let (pre, map1) = t.merge_omega_equivalent_with_map();

    let eps = pre.lambda_eps_all(pre.default_lambda_bound())?;
    let infinite: Vec<&Word> = eps
        .iter()
        .filter_map(|g| match g {
            Gcp::Infinite(x) => Some(x),
            Gcp::Finite(_) => None,
        })
        .collect();
    if !infinite.is_empty() {
        if infinite.len() != pre.state_count() {
            return Err(Error::Domain(
                "mixed degenerate machine: only some states have single-point image".into(),
            ));
        }
        let x = infinite[0].clone();
        if infinite.iter().any(|y| **y != x) {
            return Err(Error::Internal(
                "image-size-1 states disagree on the eventual period".into(),
            ));
        }
        let lambda_eps = vec![Word::empty(); m];
        return Ok(MinimizeOutcome {
            result: Minimized::Zx(x),
            map: vec![None; m],
            lambda_eps,
        });
    }

    let (stripped, lam_pre) = pre.remove_incomplete_response_noninitial()?;
    let (merged, map2) = stripped.merge_omega_equivalent_with_map();
    let (cored, map3) = sync::core_with_map(&merged)?;

    let mut map = Vec::with_capacity(m);
    let mut lambda_eps = Vec::with_capacity(m);
    for q in 0..m {
        let a = map1[q];
        lambda_eps.push(lam_pre[a].clone());
        map.push(map3[map2[a]]);
    }
    Ok(MinimizeOutcome {
        result: Minimized::Det(cored),
        map,
        lambda_eps,
    })
}

/// Minimization without the bookkeeping.
pub fn minimize(t: &DetTransducer) -> Result<Minimized> {
    Ok(minimize_with_map(t)?.result)
}

/// `minimize(core(product(T, U)))`, the workhorse composite.
pub fn minimized_product(t: &DetTransducer, u: &DetTransducer) -> Result<Minimized> {
    let p = t.product(u)?;
    let c = sync::core(&p)?;
    minimize(&c)
}

/// Isomorphism of minimal core machines: anchors the candidate state
/// bijection on a synchronized state pair and propagates along
/// transitions, checking outputs and bijectivity.
pub fn is_isomorphic(t: &DetTransducer, u: &DetTransducer) -> Result<bool> {
    Ok(isomorphism_map(t, u)?.is_some())
}

/// The state bijection of an isomorphism `t → u`, if one exists.
pub fn isomorphism_map(t: &DetTransducer, u: &DetTransducer) -> Result<Option<Vec<StateId>>> {
    if t.alphabet() != u.alphabet() || t.state_count() != u.state_count() {
        return Ok(None);
    }
    let kt = sync::sync_level(t, sync::default_max_k(t))?.level();
    let ku = sync::sync_level(u, sync::default_max_k(u))?.level();
    let w0 = Word::single(0).repeat(kt.max(ku));
    let (seed_t, _) = t.run(0, &w0)?;
    let (seed_u, _) = u.run(0, &w0)?;

    let mut map = std::collections::HashMap::new();
    let mut inv = std::collections::HashMap::new();
    map.insert(seed_t, seed_u);
    inv.insert(seed_u, seed_t);
    let mut stack = vec![(seed_t, seed_u)];
    while let Some((p, q)) = stack.pop() {
        for x in t.alphabet().letters() {
            if t.output(p, x) != u.output(q, x) {
                return Ok(None);
            }
            let (p2, q2) = (t.step(p, x), u.step(q, x));
            match (map.get(&p2), inv.get(&q2)) {
                (None, None) => {
                    map.insert(p2, q2);
                    inv.insert(q2, p2);
                    stack.push((p2, q2));
                }
                (Some(&q2m), Some(&p2m)) if q2m == q2 && p2m == p2 => {}
                _ => return Ok(None),
            }
        }
    }
    if map.len() != t.state_count() {
        return Ok(None);
    }
    Ok(Some((0..t.state_count()).map(|p| map[&p]).collect()))
}

/// True iff the machine minimizes to the 1-state identity.
pub fn is_identity(t: &DetTransducer) -> Result<bool> {
    match minimize(t)? {
        Minimized::Det(m) => {
            is_isomorphic(&m, &DetTransducer::identity(t.alphabet().size()))
        }
        Minimized::Zx(_) => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimize_sigma_is_identity() {
        for n in [2u32, 3, 4, 6] {
            let s = DetTransducer::sigma(n);
            let m = minimize(&s).unwrap();
            let m = m.det().unwrap();
            assert_eq!(m.state_count(), 1);
            assert!(is_isomorphic(m, &DetTransducer::identity(n)).unwrap());
        }
    }

    #[test]
    fn minimize_identity_fixed() {
        let id = DetTransducer::identity(2);
        let m = minimize(&id).unwrap();
        assert!(is_isomorphic(m.det().unwrap(), &id).unwrap());
    }

    #[test]
    fn minimize_idempotent() {
        let s = DetTransducer::sigma(3);
        let once = minimize(&s).unwrap();
        let once = once.det().unwrap();
        let twice = minimize(once).unwrap();
        assert!(is_isomorphic(once, twice.det().unwrap()).unwrap());
    }

    #[test]
    fn isomorphism_basics() {
        let s = DetTransducer::sigma(2);
        assert!(is_isomorphic(&s, &s).unwrap());
        assert!(!is_isomorphic(&s, &DetTransducer::identity(2)).unwrap());
    }

    #[test]
    fn zx_branch() {
        let a = crate::word::Alphabet::new(2).unwrap();
        let w = |s: &str| Word::parse(s).unwrap();
        let edges = vec![vec![(0, w("1,0")), (0, w("1,0"))]];
        let t = DetTransducer::new(a, vec!["z".into()], edges).unwrap();
        match minimize(&t).unwrap() {
            Minimized::Zx(x) => assert_eq!(x, w("0,1")),
            Minimized::Det(_) => panic!("expected Z_x"),
        }
    }
}
