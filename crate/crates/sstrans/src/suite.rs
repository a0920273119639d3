//! The acceptance checks: eleven self-contained criteria exercising the
//! whole calculus at desk scale.  Each returns `Ok(())` or a description
//! of the first failure; the CLI `suite` verb and the acceptance test
//! target both dispatch through [`all_criteria`].

use crate::dynamics::{apply, pi_action, product_annotation, random_seq, Annotation};
use crate::images::{in_hn, invert_default, is_homeomorphism_state};
use crate::lift::{
    check_lift_bijectivity, lift_check_depth, lift_is_identity, lift_is_isomorphic,
    lift_product, lift_to_initial,
};
use crate::machine::DetTransducer;
use crate::markers::{
    direct_marker_apply, marker_automorphism, search_marker_pairs, ConveyorRule,
    ConveyorSystem,
};
use crate::minimize::{is_isomorphic, isomorphism_map, minimize, minimized_product, Minimized};
use crate::nd::NondetTransducer;
use crate::pool;
use crate::reverse::{default_rec_bound, mrec, rev_automorphism, rev_sig};
use crate::signatures::{
    generator, in_dn_with_witness, in_kn, in_ln, ln_potential, loop_state, sig, sig_k,
    sig_omega, MnElement,
};
use crate::sync;
use crate::word::{enumerate_prime_classes, RotationClass, Word};
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::collections::HashMap;

pub type CheckResult = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn as_det(m: Minimized) -> std::result::Result<DetTransducer, String> {
    match m {
        Minimized::Det(t) => Ok(t),
        Minimized::Zx(x) => Err(format!("unexpected degenerate machine Z_{x}")),
    }
}

/// An `(T, α)` pair equality test on minimal machines: isomorphic with the
/// annotation carried across the state bijection.
fn pairs_equal(
    t: &DetTransducer,
    a: &Annotation,
    u: &DetTransducer,
    b: &Annotation,
) -> std::result::Result<bool, String> {
    match lib(isomorphism_map(t, u))? {
        None => Ok(false),
        Some(map) => Ok(t
            .states()
            .all(|q| a.value(q) == b.value(map[q]))),
    }
}

/// Criterion 1 — generator signatures: `sig` of the three `n = 6`
/// generators and the `sig_k` closed form for `k ≤ 4`.
pub fn criterion_1_generator_signatures() -> CheckResult {
    for (d, e, s) in [(2u32, 3u32, 3u64), (3, 2, 2), (6, 1, 1)] {
        let t = lib(generator(6, d, e))?;
        let got = lib(sig(&t))?;
        ensure(got.modulus() == 5 && got.residue() == s, || {
            format!("sig(T({d},{e})) = {} (mod {}), expected {s} (mod 5)", got.residue(), got.modulus())
        })?;
        let zeros = vec![0i64; t.state_count()];
        for k in 1..=4u32 {
            let m = 6u64.pow(k) - 1;
            let expect = e as u64 * 6u64.pow(k - 1) % m;
            let got = lib(sig_k(&t, &zeros, k))?;
            ensure(got == expect, || {
                format!("sig_{k}(T({d},{e}), 0) = {got}, expected {expect} (mod {m})")
            })?;
        }
    }
    Ok(())
}

/// Criterion 2 — shift realization: `Σ_n` minimizes to the 1-state
/// identity, and the pair (identity, +1) acts as the shift on 50 random
/// eventually periodic sequences.
pub fn criterion_2_shift_realization() -> CheckResult {
    for n in [2u32, 3, 4, 6] {
        let m = as_det(lib(minimize(&DetTransducer::sigma(n)))?)?;
        ensure(m.state_count() == 1, || {
            format!("minimize(Σ_{n}) has {} states", m.state_count())
        })?;
        ensure(
            lib(is_isomorphic(&m, &DetTransducer::identity(n)))?,
            || format!("minimize(Σ_{n}) is not the identity"),
        )?;
    }
    let id = DetTransducer::identity(2);
    let ann = lib(Annotation::new(&id, vec![1]))?;
    let mut rng = StdRng::seed_from_u64(0x5157);
    for i in 0..50 {
        let x = random_seq(2, &mut rng);
        let y = lib(apply(&id, &ann, &x))?;
        ensure(y == x.shift(1), || {
            format!("(identity, +1) does not shift sequence #{i}: {x}")
        })?;
    }
    Ok(())
}

/// Criterion 3 — group laws on the pool: `T·T⁻¹` minimizes to the
/// identity, inversion is an involution, and synchronizing levels of
/// products are at most the sum of the factors' levels.
pub fn criterion_3_group_laws() -> CheckResult {
    let pool = lib(pool::pool())?;
    ensure(pool.len() >= 30, || format!("pool has only {} machines", pool.len()))?;
    for (name, t) in &pool {
        let inv = lib(invert_default(t))?;
        let p = as_det(lib(minimized_product(t, &inv))?)?;
        ensure(
            lib(is_isomorphic(&p, &DetTransducer::identity(t.alphabet().size())))?,
            || format!("{name}·{name}⁻¹ is not the identity"),
        )?;
        let back = lib(invert_default(&inv))?;
        let tmin = as_det(lib(minimize(t))?)?;
        ensure(lib(is_isomorphic(&back, &tmin))?, || {
            format!("double inversion changes {name}")
        })?;
    }
    // Level additivity over all same-alphabet synchronous pairs. The
    // additivity bound needs length-preserving outputs: a variable-length
    // first factor can starve the second factor of input, delaying its
    // synchronization past the sum of the two levels.
    let mut levels: HashMap<&str, usize> = HashMap::new();
    for (name, t) in &pool {
        levels.insert(name, lib(sync::sync_level(t, sync::default_max_k(t)))?.level());
    }
    for (an, a) in &pool {
        for (bn, b) in &pool {
            if a.alphabet() != b.alphabet() || !a.is_synchronous() || !b.is_synchronous() {
                continue;
            }
            let p = lib(a.product(b))?;
            let lp = lib(sync::sync_level(&p, sync::default_max_k(&p)))?.level();
            let bound = levels[an.as_str()] + levels[bn.as_str()];
            ensure(lp <= bound, || {
                format!("sync level {lp} of {an}·{bn} exceeds {bound}")
            })?;
        }
    }
    Ok(())
}

/// Criterion 4 — signature homomorphisms: `sig` and `sig_ω` are
/// multiplicative over the pool, and `sig·rev_sig ≡ 1` on `L_n` members.
pub fn criterion_4_signature_homomorphisms() -> CheckResult {
    let pool = lib(pool::pool())?;
    for (i, (an, a)) in pool.iter().enumerate() {
        for (bn, b) in pool.iter().skip(i) {
            if a.alphabet() != b.alphabet() {
                continue;
            }
            // Working scale: raw products of two 40-state machines. Pairs of
            // the largest pool members (products of de Bruijn-sized marker
            // machines) blow past it; each still occurs in many pairs with
            // smaller partners.
            if a.state_count() * b.state_count() > 1600 {
                continue;
            }
            let p = as_det(lib(minimized_product(a, b))?)?;
            let sp = lib(sig(&p))?;
            let sab = lib(sig(a))?.mul(&lib(sig(b))?);
            ensure(sp == sab, || {
                format!(
                    "sig({an}·{bn}) = {} but sig({an})·sig({bn}) = {}",
                    sp.residue(),
                    sab.residue()
                )
            })?;
            let wp = lib(sig_omega(&p))?;
            let wab = lib(sig_omega(a).and_then(|x| sig_omega(b).and_then(|y| x.mul(&y))))?;
            ensure(wp == wab, || format!("sig_ω not multiplicative on {an}·{bn}"))?;
        }
    }
    for (name, t) in &pool {
        if !in_ln(t) {
            continue;
        }
        let prod = lib(sig(t))?.mul(&lib(rev_sig(t))?);
        ensure(prod.is_identity(), || {
            format!("sig·rev_sig = {} ≠ 1 on {name}", prod.residue())
        })?;
    }
    Ok(())
}

/// Criterion 5 — the structure of `M_n` for `n ∈ {2, 3, 4, 6}`.
pub fn criterion_5_mn_structure() -> CheckResult {
    for (n, m) in [(2u64, 2u64), (2, 8), (3, 3), (3, 9)] {
        ensure(lib(MnElement::class_of(n, m))?.is_identity(), || {
            format!("M_{n}: class of {m} should be trivial")
        })?;
    }
    let two4 = lib(MnElement::class_of(4, 2))?;
    ensure(!two4.is_identity(), || "M_4: class of 2 is trivial".into())?;
    ensure(lib(two4.mul(&two4))?.is_identity(), || {
        "M_4: class of 2 does not square to the identity".into()
    })?;
    let two6 = lib(MnElement::class_of(6, 2))?;
    for i in 0..=6u32 {
        for j in 0..i {
            ensure(two6.pow(i) != two6.pow(j), || {
                format!("M_6: classes of 2^{i} and 2^{j} coincide")
            })?;
        }
    }
    Ok(())
}

/// Criterion 6 — the reverse automorphism: involution, multiplicativity,
/// the Π-conjugation identity on prime classes of length ≤ 8, and
/// `rec`-stability of deterministic machines.
pub fn criterion_6_reverse_automorphism() -> CheckResult {
    let pool = lib(pool::pool())?;
    let named = |n: &str| -> &DetTransducer {
        &pool.iter().find(|(name, _)| name == n).unwrap().1
    };

    for name in ["id2", "flip2", "sigma2", "fixture", "marker2_0", "hn3_0", "gen6_23"] {
        let t = named(name);
        let r = lib(rev_automorphism(t))?;
        let rr = lib(rev_automorphism(&r))?;
        let tmin = as_det(lib(minimize(t))?)?;
        ensure(lib(is_isomorphic(&rr, &tmin))?, || {
            format!("rev automorphism is not an involution on {name}")
        })?;
        let nd = NondetTransducer::from_det(&tmin);
        let m = as_det(lib(mrec(&nd, default_rec_bound(&nd)))?)?;
        ensure(lib(is_isomorphic(&m, &tmin))?, || {
            format!("rec changes the deterministic machine {name}")
        })?;
    }

    for (an, bn) in [("fixture", "marker2_0"), ("marker2_0", "marker2_1"), ("hn3_0", "hn3_1")] {
        let (a, b) = (named(an), named(bn));
        let p = as_det(lib(minimized_product(a, b))?)?;
        let lhs = lib(rev_automorphism(&p))?;
        let rhs = as_det(lib(minimized_product(
            &lib(rev_automorphism(a))?,
            &lib(rev_automorphism(b))?,
        ))?)?;
        ensure(lib(is_isomorphic(&lhs, &rhs))?, || {
            format!("rev automorphism is not multiplicative on {an}·{bn}")
        })?;
    }

    // Π(revaut(T)) = rev ∘ Π(T) ∘ rev on prime classes of length ≤ 8.
    for name in ["fixture", "marker2_0", "flip2"] {
        let t = named(name);
        let r = lib(rev_automorphism(t))?;
        let pi_t: HashMap<RotationClass, RotationClass> =
            lib(pi_action(t, 8))?.into_iter().collect();
        let pi_r: HashMap<RotationClass, RotationClass> =
            lib(pi_action(&r, 8))?.into_iter().collect();
        for l in 1..=8usize {
            for class in lib(enumerate_prime_classes(2, l))? {
                let via_rev = pi_t[&class.reverse()].reverse();
                ensure(pi_r[&class] == via_rev, || {
                    format!("Π-conjugation fails on {name} at class of {}", class.rep())
                })?;
            }
        }
    }
    Ok(())
}

/// Criterion 7 — `H_n` expulsion: the reverse automorphism throws every
/// multi-state `H_n` element out of `H_n` and fixes the 1-state ones.
pub fn criterion_7_hn_expulsion() -> CheckResult {
    let hn = lib(pool::hn_pool())?;
    ensure(hn.len() >= 5, || format!("only {} H_n machines", hn.len()))?;
    for (i, t) in hn.iter().enumerate() {
        ensure(t.state_count() > 1, || format!("H_n machine #{i} has 1 state"))?;
        ensure(lib(in_hn(t))?, || format!("H_n machine #{i} fails membership"))?;
        let r = lib(rev_automorphism(t))?;
        ensure(!lib(in_hn(&r))?, || {
            format!("rev automorphism keeps multi-state H_n machine #{i} inside H_n")
        })?;
    }
    for t in [
        DetTransducer::identity(3),
        lib(DetTransducer::letter_permutation(3, &[1, 2, 0]))?,
        lib(DetTransducer::letter_permutation(3, &[1, 0, 2]))?,
        lib(DetTransducer::letter_permutation(2, &[1, 0]))?,
    ] {
        ensure(lib(in_hn(&t))?, || "1-state machine fails H_n membership".into())?;
        let r = lib(rev_automorphism(&t))?;
        ensure(lib(is_isomorphic(&r, &t))?, || {
            "rev automorphism moves a 1-state H_n machine".into()
        })?;
    }
    Ok(())
}

/// Criterion 8 — fixture facts: `L_2 = K_2` membership with the canonical
/// potential, the non-homeomorphism state `a1`, and `D_2` exclusion.
pub fn criterion_8_fixture_facts() -> CheckResult {
    let t = pool::fixture();
    ensure(in_ln(&t), || "fixture is not in L_2".into())?;
    ensure(lib(in_kn(&t))?, || "fixture is not in K_2".into())?;
    let pot = ln_potential(&t).ok_or("fixture has no length potential")?;
    let ann = lib(Annotation::canonical(&t))?;
    let base = pot.iter().min().copied().unwrap_or(0);
    for q in t.states() {
        ensure(ann.value(q) == pot[q] - base, || {
            format!("canonical annotation disagrees with the potential at {}", t.name(q))
        })?;
    }
    let expected: [(&str, i64); 6] =
        [("a1", 1), ("a2", 0), ("a3", 2), ("a4", 0), ("a5", 1), ("a6", 2)];
    for (name, v) in expected {
        let q = t.state_by_name(name).ok_or("fixture state missing")?;
        ensure(ann.value(q) == v, || {
            format!("annotation of {name} is {}, expected {v}", ann.value(q))
        })?;
    }
    let a1 = t.state_by_name("a1").ok_or("state a1 missing")?;
    ensure(
        !lib(is_homeomorphism_state(&t, a1, 64))?,
        || "a1 is unexpectedly a homeomorphism state".into(),
    )?;
    let (dn, witness) = lib(in_dn_with_witness(&t))?;
    ensure(!dn, || "fixture is unexpectedly in D_2".into())?;
    ensure(witness.as_deref() == Some("a1"), || {
        format!("D_2 witness is {witness:?}, expected a1")
    })?;
    Ok(())
}

/// Criterion 9 — markers: searched pairs for `n ∈ {2, 3}` give involutions
/// in `D_n` with zero loop-state annotation whose Π-action swaps `[a]` and
/// `[b]`, verified against the direct simulator.
pub fn criterion_9_markers() -> CheckResult {
    let mut rng = StdRng::seed_from_u64(0x6d61726b);
    for (n, l) in [(2u32, 3usize), (3, 2)] {
        let pairs = lib(search_marker_pairs(n, l, 3))?;
        ensure(pairs.len() >= 3, || {
            format!("only {} marker pairs of length {l} over X_{n}", pairs.len())
        })?;
        for p in &pairs {
            let (t, a) = lib(marker_automorphism(p, n))?;
            let (sq, sq_ann) = lib(product_annotation(&t, &a, &t, &a))?;
            ensure(
                lib(is_isomorphic(&sq, &DetTransducer::identity(n)))?
                    && sq_ann.values().iter().all(|&v| v == 0),
                || format!("marker ({}, {}) does not square to the identity pair", p.a(), p.b()),
            )?;
            ensure(lib(crate::signatures::in_dn(&t))?, || {
                format!("marker ({}, {}) is not in D_{n}", p.a(), p.b())
            })?;
            for x in t.alphabet().letters() {
                let q = lib(loop_state(&t, x))?;
                ensure(a.value(q) == 0, || {
                    format!("loop state annotation of letter {x} is {}", a.value(q))
                })?;
            }
            // Π swaps [a] and [b] and fixes every shorter class.
            let ca = lib(RotationClass::of(p.a()))?;
            let cb = lib(RotationClass::of(p.b()))?;
            let pi: HashMap<RotationClass, RotationClass> =
                lib(pi_action(&t, l))?.into_iter().collect();
            ensure(pi[&ca] == cb && pi[&cb] == ca, || {
                format!("Π does not swap [{}] and [{}]", p.a(), p.b())
            })?;
            for k in 1..l {
                for class in lib(enumerate_prime_classes(n, k))? {
                    ensure(pi[&class] == class, || {
                        format!("Π moves the shorter class of {}", class.rep())
                    })?;
                }
            }
            for i in 0..100 {
                let x = random_seq(n, &mut rng);
                let via_machine = lib(apply(&t, &a, &x))?;
                let direct = lib(direct_marker_apply(p, &x))?;
                ensure(via_machine == direct, || {
                    format!(
                        "marker ({}, {}) disagrees with the direct simulator on sequence #{i}: {x}",
                        p.a(),
                        p.b()
                    )
                })?;
            }
        }
    }
    Ok(())
}

/// Criterion 10 — conveyor embedding: letterwise conveyor rules send
/// distinct block permutations to distinct `D_2` elements and respect
/// composition.
pub fn criterion_10_conveyor_embedding() -> CheckResult {
    let w = Word::parse("1,1,0").map_err(|e| e.to_string())?;
    let blocks = [
        Word::parse("0,0").map_err(|e| e.to_string())?,
        Word::parse("0,1").map_err(|e| e.to_string())?,
        Word::parse("1,0").map_err(|e| e.to_string())?,
    ];
    let encode = |perm: &[usize]| -> std::result::Result<(DetTransducer, Annotation), String> {
        let c = lib(ConveyorSystem::new(
            w.clone(),
            blocks.to_vec(),
            ConveyorRule::Letterwise(perm.to_vec()),
        ))?;
        lib(crate::markers::validate_conveyor(&c, 3))?;
        lib(crate::markers::conveyor_automorphism(&c, 2))
    };

    let f = [1usize, 0, 2]; // swap the first two blocks
    let g = [0usize, 2, 1]; // swap the last two blocks
    let fg: Vec<usize> = (0..3).map(|i| g[f[i]]).collect();
    let (tf, af) = encode(&f)?;
    let (tg, ag) = encode(&g)?;
    let (tfg, afg) = encode(&fg)?;
    let (tid, aid) = encode(&[0, 1, 2])?;

    ensure(
        lib(is_isomorphic(&tid, &DetTransducer::identity(2)))? && aid.values() == [0],
        || "the identity permutation does not encode to the identity pair".into(),
    )?;
    for (name, t) in [("f", &tf), ("g", &tg), ("fg", &tfg)] {
        ensure(lib(crate::signatures::in_dn(t))?, || {
            format!("conveyor image of {name} is not in D_2")
        })?;
    }
    ensure(!pairs_equal(&tf, &af, &tg, &ag)?, || {
        "distinct permutations encode to the same element".into()
    })?;
    ensure(
        !lib(is_isomorphic(&tf, &DetTransducer::identity(2)))?,
        || "a non-trivial permutation encodes to the identity".into(),
    )?;

    let (tp, ap) = lib(product_annotation(&tf, &af, &tg, &ag))?;
    ensure(pairs_equal(&tp, &ap, &tfg, &afg)?, || {
        "conveyor encoding is not a homomorphism: image(f)·image(g) ≠ image(f∘g)".into()
    })?;
    let (tsq, asq) = lib(product_annotation(&tf, &af, &tf, &af))?;
    ensure(pairs_equal(&tsq, &asq, &tid, &aid)?, || {
        "the encoded transposition does not square to the identity".into()
    })?;
    Ok(())
}

/// Criterion 11 — the lift into initialised transducers respects products
/// and inverses on five `D_3` machines for `r ∈ {1, 2}`, with bijectivity
/// certified on all cylinders of depth sync-level + 2.
pub fn criterion_11_lift() -> CheckResult {
    let pairs = lib(search_marker_pairs(3, 2, 5))?;
    ensure(pairs.len() >= 5, || "fewer than 5 D_3 marker machines".into())?;
    let ds: Vec<DetTransducer> = pairs
        .iter()
        .map(|p| Ok(lib(marker_automorphism(p, 3))?.0))
        .collect::<std::result::Result<_, String>>()?;

    for (i, d) in ds.iter().enumerate() {
        let l = lib(lift_to_initial(d, 1))?;
        let depth = lib(lift_check_depth(&l))?;
        ensure(lib(check_lift_bijectivity(&l, depth))?, || {
            format!("lift of D_3 machine #{i} is not bijective on depth-{depth} cylinders")
        })?;
    }
    for r in [1u32, 2] {
        for (i, d) in ds.iter().enumerate() {
            let l = lib(lift_to_initial(d, r))?;
            let inv = lib(invert_default(d))?;
            let li = lib(lift_product(&l, &lib(lift_to_initial(&inv, r))?))?;
            ensure(lib(lift_is_identity(&li))?, || {
                format!("lift(D#{i})·lift(D#{i}⁻¹) ≠ id at r = {r}")
            })?;
        }
        // A non-involution: the product of two distinct markers has a
        // genuinely different inverse.
        let p01 = as_det(lib(minimized_product(&ds[0], &ds[1]))?)?;
        let p01_inv = lib(invert_default(&p01))?;
        let li = lib(lift_product(
            &lib(lift_to_initial(&p01, r))?,
            &lib(lift_to_initial(&p01_inv, r))?,
        ))?;
        ensure(lib(lift_is_identity(&li))?, || {
            format!("lift(D#0·D#1)·lift((D#0·D#1)⁻¹) ≠ id at r = {r}")
        })?;

        for (i, j) in [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (0, 4)] {
            let p = as_det(lib(minimized_product(&ds[i], &ds[j]))?)?;
            let lhs = lib(lift_product(
                &lib(lift_to_initial(&ds[i], r))?,
                &lib(lift_to_initial(&ds[j], r))?,
            ))?;
            let rhs = lib(lift_to_initial(&p, r))?;
            ensure(lift_is_isomorphic(&lhs, &rhs), || {
                format!("lift(D#{i})·lift(D#{j}) ≠ lift(D#{i}·D#{j}) at r = {r}")
            })?;
        }
    }
    Ok(())
}

/// All criteria, in order, with short stable labels.
pub fn all_criteria() -> Vec<(&'static str, fn() -> CheckResult)> {
    vec![
        ("generator-signatures", criterion_1_generator_signatures),
        ("shift-realization", criterion_2_shift_realization),
        ("group-laws", criterion_3_group_laws),
        ("signature-homomorphisms", criterion_4_signature_homomorphisms),
        ("mn-structure", criterion_5_mn_structure),
        ("reverse-automorphism", criterion_6_reverse_automorphism),
        ("hn-expulsion", criterion_7_hn_expulsion),
        ("fixture-facts", criterion_8_fixture_facts),
        ("markers", criterion_9_markers),
        ("conveyor-embedding", criterion_10_conveyor_embedding),
        ("lift", criterion_11_lift),
    ]
}
