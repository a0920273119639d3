//! Reference machines used across tests and the acceptance suites.

use crate::error::Result;
use crate::machine::DetTransducer;
use crate::word::{Alphabet, Letter, Word};

/// The 6-state machine over `X_2` demonstrating the strictness of the
/// inclusion `D_2 ⊊ K_2`: it is length-preserving on circuits but its
/// 0-loop state is not a homeomorphism state. States in index order
/// a1, a2, a3, a4, a5, a6.
pub fn fixture() -> DetTransducer {
    let a = Alphabet::new(2).unwrap();
    let w = |s: &str| Word::parse(s).unwrap();
    let names = (1..=6).map(|i| format!("a{i}")).collect();
    // (target, output) for letters 0, 1 per state
    let edges = vec![
        vec![(0, w("0")), (1, w("-"))],       // a1: 0|0→a1, 1|ε→a2
        vec![(2, w("1,1,0")), (3, w("0"))],   // a2: 0|110→a3, 1|0→a4
        vec![(0, w("-")), (4, w("-"))],       // a3: 0|ε→a1, 1|ε→a5
        vec![(2, w("0,1,0")), (5, w("1,1,1"))], // a4: 0|010→a3, 1|111→a6
        vec![(2, w("1,0")), (3, w("-"))],     // a5: 0|10→a3, 1|ε→a4
        vec![(2, w("0")), (5, w("1"))],       // a6: 0|0→a3, 1|1→a6
    ];
    DetTransducer::new(a, names, edges).unwrap()
}

/// Synchronous memory-one machine: the state is the previous input letter
/// and the output applies the per-state permutation `perms[state]` to the
/// current letter.  With suitable permutation families these machines and
/// their inverses are both strongly synchronizing, giving multi-state
/// elements of `H_n`.
pub fn scramble(n: u32, perms: &[&[Letter]]) -> Result<DetTransducer> {
    let a = Alphabet::new(n)?;
    let names = (0..n).map(|q| format!("p{q}")).collect();
    let edges = (0..n as usize)
        .map(|q| {
            (0..n as usize)
                .map(|x| (x, Word::single(perms[q][x])))
                .collect()
        })
        .collect();
    DetTransducer::new(a, names, edges)
}

/// Multi-state `H_3` elements: three base scrambles (a transposition
/// triggered by one remembered letter, fixing that letter) and minimized
/// products of them.
pub fn hn_pool() -> Result<Vec<DetTransducer>> {
    let id: &[Letter] = &[0, 1, 2];
    let s01: &[Letter] = &[1, 0, 2];
    let s02: &[Letter] = &[2, 1, 0];
    let s12: &[Letter] = &[0, 2, 1];
    let a = scramble(3, &[id, id, s01])?;
    let b = scramble(3, &[id, s02, id])?;
    let c = scramble(3, &[s12, id, id])?;
    let mut out = Vec::new();
    for t in [&a, &b, &c] {
        out.push(crate::minimize::minimize(t)?.det()?.clone());
    }
    for (t, u) in [(&a, &b), (&b, &c), (&a, &c)] {
        let p = crate::minimize::minimized_product(t, u)?;
        out.push(p.det()?.clone());
    }
    Ok(out)
}

/// The first `count` marker-automorphism machines for marker length `l`
/// over `X_n`.
fn marker_machines(n: u32, l: usize, count: usize) -> Result<Vec<DetTransducer>> {
    crate::markers::search_marker_pairs(n, l, count)?
        .iter()
        .map(|p| Ok(crate::markers::marker_automorphism(p, n)?.0))
        .collect()
}

/// A named pool of ≥ 30 invertible machines spanning the alphabets
/// `n ∈ {2, 3, 4, 6}`: identities, shifts, generators, the fixture and its
/// inverse, marker and conveyor automorphisms, letter permutations,
/// one-sided-shift scrambles, and products of these.
pub fn pool() -> Result<Vec<(String, DetTransducer)>> {
    use crate::images::invert_default;
    use crate::minimize::minimized_product;

    let mut out: Vec<(String, DetTransducer)> = Vec::new();
    for n in [2u32, 3, 4, 6] {
        out.push((format!("id{n}"), DetTransducer::identity(n)));
        out.push((format!("sigma{n}"), DetTransducer::sigma(n)));
    }
    let gen23 = crate::signatures::generator(6, 2, 3)?;
    let gen32 = crate::signatures::generator(6, 3, 2)?;
    out.push(("gen6_23".into(), gen23.clone()));
    out.push(("gen6_32".into(), gen32.clone()));
    out.push(("gen4_22".into(), crate::signatures::generator(4, 2, 2)?));

    let fix = fixture();
    out.push(("fixture_inv".into(), invert_default(&fix)?));
    out.push(("fixture".into(), fix.clone()));

    let m2 = marker_machines(2, 3, 3)?;
    for (i, t) in m2.iter().enumerate() {
        out.push((format!("marker2_{i}"), t.clone()));
    }
    let m3 = marker_machines(3, 2, 3)?;
    for (i, t) in m3.iter().enumerate() {
        out.push((format!("marker3_{i}"), t.clone()));
    }

    out.push(("flip2".into(), DetTransducer::letter_permutation(2, &[1, 0])?));
    out.push(("rot3".into(), DetTransducer::letter_permutation(3, &[1, 2, 0])?));
    out.push(("swap3".into(), DetTransducer::letter_permutation(3, &[1, 0, 2])?));
    out.push(("swap4".into(), DetTransducer::letter_permutation(4, &[1, 0, 3, 2])?));

    for (i, t) in hn_pool()?.into_iter().take(3).enumerate() {
        out.push((format!("hn3_{i}"), t));
    }

    let prods: [(&str, &DetTransducer, &DetTransducer); 4] = [
        ("m2prod", &m2[0], &m2[1]),
        ("m3prod", &m3[0], &m3[1]),
        ("fixprod", &fix, &m2[0]),
        ("gen23sq", &gen23, &gen23),
    ];
    for (name, t, u) in prods {
        out.push((name.to_string(), minimized_product(t, u)?.det()?.clone()));
    }

    let conv = crate::markers::ConveyorSystem::new(
        Word::parse("1,1,0")?,
        vec![Word::parse("0,0")?, Word::parse("0,1")?],
        crate::markers::ConveyorRule::Letterwise(vec![1, 0]),
    )?;
    out.push(("conv2_swap".into(), crate::markers::conveyor_automorphism(&conv, 2)?.0));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::images::{
        image_antichain, is_homeomorphism_state, remainder_l,
    };
    use crate::minimize::{is_isomorphic, minimize};
    use crate::sync::{core, sync_level};
    use crate::word::all_words;

    fn w(s: &str) -> Word {
        Word::from_letters(s.chars().map(|c| c.to_digit(10).unwrap()))
    }

    #[test]
    fn fixture_is_minimal_core() {
        let t = fixture();
        let c = core(&t).unwrap();
        assert_eq!(c.state_count(), 6);
        let m = minimize(&t).unwrap();
        assert!(is_isomorphic(m.det().unwrap(), &t).unwrap());
    }

    #[test]
    fn fixture_sync_level_and_forced_map() {
        let t = fixture();
        let cert = sync_level(&t, 64).unwrap();
        assert_eq!(cert.level(), 3);
        // forced states of the eight length-3 words, in index order a1..a6
        let expect = [
            ("000", "a1"),
            ("001", "a2"),
            ("010", "a3"),
            ("011", "a4"),
            ("100", "a1"),
            ("101", "a5"),
            ("110", "a3"),
            ("111", "a6"),
        ];
        for (word, name) in expect {
            let q = cert.forced(&t, &w(word)).unwrap();
            assert_eq!(t.name(q), name, "forced state of {word}");
        }
        let _ = all_words(2, 3);
    }

    #[test]
    fn fixture_image_antichains() {
        let t = fixture();
        let expect: [(&str, &[&str]); 6] = [
            ("a1", &["00", "011", "110"]),
            ("a2", &["0010", "0111", "110"]),
            ("a3", &[""]),
            ("a4", &["010", "111"]),
            ("a5", &["010", "10", "111"]),
            ("a6", &[""]),
        ];
        for (name, words) in expect {
            let q = t.state_by_name(name).unwrap();
            let a = image_antichain(&t, q, 64).unwrap();
            let got: Vec<String> = a
                .words()
                .iter()
                .map(|v| {
                    v.letters()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<String>()
                })
                .collect();
            let mut want: Vec<String> = words.iter().map(|s| s.to_string()).collect();
            want.sort();
            assert_eq!(got, want, "antichain of {name}");
        }
    }

    #[test]
    fn fixture_homeomorphism_states() {
        let t = fixture();
        let homeo = |name: &str| {
            is_homeomorphism_state(&t, t.state_by_name(name).unwrap(), 64).unwrap()
        };
        assert!(homeo("a3"));
        assert!(homeo("a6"));
        assert!(!homeo("a1"));
    }

    #[test]
    fn fixture_inverse_group_law() {
        use crate::images::invert_default;
        use crate::minimize::minimized_product;
        let t = fixture();
        let inv = invert_default(&t).unwrap();
        let id = DetTransducer::identity(2);
        for (a, b) in [(&t, &inv), (&inv, &t)] {
            let p = minimized_product(a, b).unwrap();
            assert!(is_isomorphic(p.det().unwrap(), &id).unwrap());
        }
        let back = invert_default(&inv).unwrap();
        assert!(is_isomorphic(&back, &t).unwrap());
    }

    #[test]
    fn pool_is_large_and_well_formed() {
        let pool = pool().unwrap();
        assert!(pool.len() >= 30, "pool has {} machines", pool.len());
        let names: std::collections::HashSet<&str> =
            pool.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names.len(), pool.len(), "pool names are unique");
    }

    #[test]
    fn scrambles_are_multi_state_hn_elements() {
        use crate::images::in_hn;
        let hn = hn_pool().unwrap();
        assert!(hn.len() >= 5);
        for t in &hn {
            assert!(t.state_count() > 1, "minimal size 1");
            assert!(in_hn(t).unwrap());
        }
        // a scramble whose inverse automaton never collapses is rejected
        let id: &[crate::word::Letter] = &[0, 1, 2];
        let rot: &[crate::word::Letter] = &[1, 2, 0];
        let bad = scramble(3, &[id, id, rot]).unwrap();
        assert!(!in_hn(&bad).unwrap());
    }

    #[test]
    fn fixture_remainder_example() {
        // from a6, only the 1|1 loop edge emits a first letter 1
        let t = fixture();
        let a6 = t.state_by_name("a6").unwrap();
        assert_eq!(remainder_l(&t, a6, &w("1"), 64).unwrap(), w("1"));
    }
}
