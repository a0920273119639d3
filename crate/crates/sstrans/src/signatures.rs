//! The signature homomorphisms `sig`, `sig_ω`, `sig_k`, arithmetic in the
//! monoid `M_n`, the generator family `T(d,e)`, and membership tests for
//! the groups `O_n`, `O_{n,r}`, `L_n`, `K_n`, `D_n`.

use crate::error::{Error, Result};
use crate::images::{
    default_remainder_bound, image_antichains_all, is_homeomorphism_state,
    uniform_cone_count,
};
use crate::machine::{DetTransducer, StateId};
use crate::sync;
use crate::word::{Alphabet, Letter, Word};

/// Prime factorization with ascending primes.
fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Element of `M_n`: the monoid generated by the prime divisors of `n`
/// modulo multiplication by `n`. Represented by an exponent vector in
/// `Z^r` reduced modulo the rank-1 lattice spanned by `(L_1, …, L_r)`
/// where `n = Π p_i^{L_i}`; the normal form puts the last coordinate in
/// `[0, L_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnElement {
    primes: Vec<u64>,
    lattice: Vec<i64>,
    expo: Vec<i64>,
}

impl MnElement {
    /// The class of `m` in `M_n`. Errors if `m` has a prime factor not
    /// dividing `n`.
    pub fn class_of(n: u64, m: u64) -> Result<MnElement> {
        let nf = factor(n);
        let primes: Vec<u64> = nf.iter().map(|&(p, _)| p).collect();
        let lattice: Vec<i64> = nf.iter().map(|&(_, l)| l as i64).collect();
        let mut expo = vec![0i64; primes.len()];
        for (p, e) in factor(m) {
            match primes.iter().position(|&q| q == p) {
                Some(i) => expo[i] = e as i64,
                None => {
                    return Err(Error::Domain(format!(
                        "prime {p} of {m} does not divide {n}"
                    )))
                }
            }
        }
        let mut el = MnElement { primes, lattice, expo };
        el.normalize();
        Ok(el)
    }

    pub fn identity(n: u64) -> MnElement {
        MnElement::class_of(n, 1).expect("1 is always a class")
    }

    fn normalize(&mut self) {
        let r = self.lattice.len();
        let t = self.expo[r - 1].div_euclid(self.lattice[r - 1]);
        for i in 0..r {
            self.expo[i] -= t * self.lattice[i];
        }
    }

    pub fn is_identity(&self) -> bool {
        self.expo.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &MnElement) -> Result<MnElement> {
        if self.primes != other.primes {
            return Err(Error::Domain("M_n elements over different n".into()));
        }
        let expo = self
            .expo
            .iter()
            .zip(&other.expo)
            .map(|(a, b)| a + b)
            .collect();
        let mut el = MnElement {
            primes: self.primes.clone(),
            lattice: self.lattice.clone(),
            expo,
        };
        el.normalize();
        Ok(el)
    }

    pub fn inverse(&self) -> MnElement {
        let mut el = MnElement {
            primes: self.primes.clone(),
            lattice: self.lattice.clone(),
            expo: self.expo.iter().map(|&e| -e).collect(),
        };
        el.normalize();
        el
    }

    pub fn pow(&self, k: u32) -> MnElement {
        let mut acc = MnElement {
            primes: self.primes.clone(),
            lattice: self.lattice.clone(),
            expo: vec![0; self.primes.len()],
        };
        for _ in 0..k {
            acc = acc.mul(self).expect("same n");
        }
        acc
    }
}

impl std::fmt::Display for MnElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in self.primes.iter().zip(&self.expo) {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

/// Whether `M_n` is the trivial group: every prime class is the identity.
fn mn_trivial(n: u64) -> bool {
    factor(n)
        .iter()
        .all(|&(p, _)| MnElement::class_of(n, p).map(|c| c.is_identity()).unwrap_or(false))
}

/// A value of `sig`: a residue modulo `n − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigValue {
    modulus: u64,
    residue: u64,
}

impl SigValue {
    pub fn new(n: u64, s: u64) -> SigValue {
        let modulus = n - 1;
        SigValue { modulus, residue: s % modulus.max(1) }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn mul(&self, other: &SigValue) -> SigValue {
        assert_eq!(self.modulus, other.modulus);
        SigValue {
            modulus: self.modulus,
            residue: (self.residue * other.residue) % self.modulus.max(1),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.residue % self.modulus.max(1) == 1 % self.modulus.max(1)
    }

    /// Multiplicative inverse modulo `n − 1` (exists when the residue is a
    /// unit, which `sig` values of invertible machines are).
    pub fn inverse(&self) -> Result<SigValue> {
        let m = self.modulus.max(1) as i64;
        let (mut r0, mut r1) = (m, self.residue as i64 % m);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return Err(Error::Domain(format!(
                "{} is not a unit mod {}",
                self.residue, self.modulus
            )));
        }
        Ok(SigValue {
            modulus: self.modulus,
            residue: s0.rem_euclid(m) as u64,
        })
    }
}

impl std::fmt::Display for SigValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

/// `sig(T)`: the antichain size of any state image, mod `n − 1`. Evaluated
/// at every state with an equality assertion (state-independence is a
/// theorem for `O_n` elements, and re-checking it doubles as a test).
pub fn sig(t: &DetTransducer) -> Result<SigValue> {
    let n = t.alphabet().size() as u64;
    if n == 2 {
        // The target group is trivial (everything ≡ 0 mod 1), so the
        // antichain exploration and its state-independence check are vacuous.
        return Ok(SigValue::new(n, 0));
    }
    let bound = default_remainder_bound(t);
    let mut val: Option<u64> = None;
    for (q, a) in t.states().zip(image_antichains_all(t, bound)?) {
        let s = a.words().len() as u64 % (n - 1).max(1);
        match val {
            None => val = Some(s),
            Some(v) if v == s => {}
            Some(v) => {
                return Err(Error::Domain(format!(
                    "sig is state-dependent: {v} vs {s} at {}",
                    t.name(q)
                )))
            }
        }
    }
    Ok(SigValue::new(n, val.expect("at least one state")))
}

/// `sig_ω(T)`: the class in `M_n` of the uniform cone count of any state.
pub fn sig_omega(t: &DetTransducer) -> Result<MnElement> {
    let n = t.alphabet().size() as u64;
    if mn_trivial(n) {
        // In a trivial target group every value is the identity; skip the
        // cone exploration (and its vacuous state-independence check).
        return Ok(MnElement::identity(n));
    }
    let bound = default_remainder_bound(t);
    let mut val: Option<MnElement> = None;
    for q in t.states() {
        let (s, _) = uniform_cone_count(t, q, bound)?;
        let c = MnElement::class_of(n, s)?;
        match &val {
            None => val = Some(c),
            Some(v) if *v == c => {}
            Some(v) => {
                return Err(Error::Domain(format!(
                    "sig_ω is state-dependent: {v} vs {c} at {}",
                    t.name(q)
                )))
            }
        }
    }
    Ok(val.expect("at least one state"))
}

/// `sig_k` of an annotated pair: `s·n^{b mod k} mod n^k − 1` with
/// `b ≡ −(D + α(q))` for any state `q`, where `(s, D)` is the uniform cone
/// count of `q`. The quantity `s·n^{−(D+α(q))}` is state-independent, which
/// is asserted.
pub fn sig_k(t: &DetTransducer, alpha: &[i64], k: u32) -> Result<u64> {
    if k < 1 {
        return Err(Error::Domain("sig_k needs k ≥ 1".into()));
    }
    let n = t.alphabet().size() as u64;
    let modulus = n.pow(k) - 1;
    let bound = default_remainder_bound(t);
    let mut val: Option<u64> = None;
    for q in t.states() {
        let (s, d) = uniform_cone_count(t, q, bound)?;
        let b = -(d as i64 + alpha[q]);
        let e = b.rem_euclid(k as i64) as u32;
        let mut v = s % modulus;
        for _ in 0..e {
            v = v * n % modulus;
        }
        match val {
            None => val = Some(v),
            Some(w) if w == v => {}
            Some(w) => {
                return Err(Error::Domain(format!(
                    "sig_k is state-dependent: {w} vs {v} at {}",
                    t.name(q)
                )))
            }
        }
    }
    Ok(val.expect("at least one state"))
}

/// `O_n` membership: the inverse construction succeeds and both machines
/// synchronize.
pub fn in_on(t: &DetTransducer) -> bool {
    crate::images::is_bisynchronizing(t).is_ok()
}

/// `O_{n,r}` membership: in `O_n` and `r·sig(T) ≡ r mod n − 1`.
pub fn in_onr(t: &DetTransducer, r: u64) -> Result<bool> {
    let n = t.alphabet().size() as u64;
    if r < 1 || r > n - 1 {
        return Err(Error::Domain(format!("r must satisfy 1 ≤ r ≤ {}", n - 1)));
    }
    if !in_on(t) {
        return Ok(false);
    }
    let s = sig(t)?;
    let m = (n - 1).max(1);
    Ok(r * s.residue() % m == r % m)
}

/// The length potential of an `L_n` element: a state labeling `α` with
/// `α(π(x,q)) = α(q) + |λ(x,q)| − 1` for every edge, found by
/// spanning-tree propagation. `None` when some circuit changes length.
pub fn ln_potential(t: &DetTransducer) -> Option<Vec<i64>> {
    let m = t.state_count();
    let mut pot = vec![i64::MIN; m];
    pot[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        for x in t.alphabet().letters() {
            let d = t.step(q, x);
            let v = pot[q] + t.output(q, x).len() as i64 - 1;
            if pot[d] == i64::MIN {
                pot[d] = v;
                queue.push_back(d);
            } else if pot[d] != v {
                return None;
            }
        }
    }
    if pot.iter().any(|&v| v == i64::MIN) {
        // states unreachable from state 0; length preservation is only
        // meaningful for core machines, which are strongly connected
        return None;
    }
    Some(pot)
}

/// `L_n` membership (length preservation on circuits) for an `O_n` element.
pub fn in_ln(t: &DetTransducer) -> bool {
    in_on(t) && ln_potential(t).is_some()
}

/// `K_n` membership: kernel of `sig_ω`.
pub fn in_kn(t: &DetTransducer) -> Result<bool> {
    if !in_ln(t) {
        return Ok(false);
    }
    Ok(sig_omega(t)?.is_identity())
}

/// The `x`-loop state: the forced state of `x^k`, which is fixed by `x`.
pub fn loop_state(t: &DetTransducer, x: Letter) -> Result<StateId> {
    let cert = sync::sync_level(t, sync::default_max_k(t))?;
    let w = Word::single(x).repeat(cert.level().max(1));
    let (q, _) = t.run(0, &w)?;
    if t.step(q, x) != q {
        return Err(Error::Internal(format!(
            "forced state of {x}^k is not {x}-fixed"
        )));
    }
    Ok(q)
}

/// `D_n` membership: a `K_n` element all of whose letter-loop states are
/// homeomorphism states. On failure the second component names a witness.
pub fn in_dn_with_witness(t: &DetTransducer) -> Result<(bool, Option<String>)> {
    if !in_kn(t)? {
        return Ok((false, None));
    }
    let bound = default_remainder_bound(t);
    for x in t.alphabet().letters() {
        let q = loop_state(t, x)?;
        if !is_homeomorphism_state(t, q, bound)? {
            return Ok((false, Some(t.name(q).to_string())));
        }
    }
    Ok((true, None))
}

pub fn in_dn(t: &DetTransducer) -> Result<bool> {
    Ok(in_dn_with_witness(t)?.0)
}

/// Digit view of `X_n` under `n = Π p_i^{L_i}`: per prime, `L_i` digits
/// base `p_i`, most significant first, primes ascending.
struct MixedRadix {
    bases: Vec<u64>,
    /// whether each digit position belongs to the `d`-part
    in_d: Vec<bool>,
}

impl MixedRadix {
    fn new(n: u64, d: u64) -> Result<MixedRadix> {
        if d < 2 || n % d != 0 {
            return Err(Error::Domain(format!(
                "d = {d} must be a divisor of n = {n} with d > 1"
            )));
        }
        let nf = factor(n);
        let df = factor(d);
        let mut bases = Vec::new();
        let mut in_d = Vec::new();
        for (p, l) in nf {
            let s = df
                .iter()
                .find(|&&(q, _)| q == p)
                .map(|&(_, s)| s)
                .unwrap_or(0);
            if s > l {
                return Err(Error::Domain(format!(
                    "d = {d} is incompatible with the prime support of n = {n}"
                )));
            }
            for j in 0..l {
                bases.push(p);
                in_d.push(j < s);
            }
        }
        Ok(MixedRadix { bases, in_d })
    }

    fn digits(&self, mut m: u64) -> Vec<u64> {
        let mut out = vec![0; self.bases.len()];
        for i in (0..self.bases.len()).rev() {
            out[i] = m % self.bases[i];
            m /= self.bases[i];
        }
        out
    }

    fn value(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .zip(&self.bases)
            .fold(0, |acc, (&d, &b)| acc * b + d)
    }

    fn split(&self, m: u64) -> (u64, u64) {
        let digits = self.digits(m);
        let mut dd = Vec::new();
        let mut ed = Vec::new();
        let mut db = Vec::new();
        let mut eb = Vec::new();
        for i in 0..digits.len() {
            if self.in_d[i] {
                dd.push(digits[i]);
                db.push(self.bases[i]);
            } else {
                ed.push(digits[i]);
                eb.push(self.bases[i]);
            }
        }
        let val = |ds: &[u64], bs: &[u64]| ds.iter().zip(bs).fold(0, |a, (&d, &b)| a * b + d);
        (val(&dd, &db), val(&ed, &eb))
    }

    fn combine(&self, c: u64, b: u64) -> u64 {
        let mut dd = Vec::new();
        let mut ed = Vec::new();
        let (mut db, mut eb) = (Vec::new(), Vec::new());
        for i in 0..self.bases.len() {
            if self.in_d[i] {
                db.push(self.bases[i]);
            } else {
                eb.push(self.bases[i]);
            }
        }
        let mut rest = c;
        for &base in db.iter().rev() {
            dd.push(rest % base);
            rest /= base;
        }
        dd.reverse();
        rest = b;
        for &base in eb.iter().rev() {
            ed.push(rest % base);
            rest /= base;
        }
        ed.reverse();
        let mut digits = Vec::with_capacity(self.bases.len());
        let (mut di, mut ei) = (0, 0);
        for i in 0..self.bases.len() {
            if self.in_d[i] {
                digits.push(dd[di]);
                di += 1;
            } else {
                digits.push(ed[ei]);
                ei += 1;
            }
        }
        self.value(&digits)
    }
}

/// The generator `T(d,e)` with `d·e = n`: states `q_c` for `c ∈ X_d`; on
/// input with digit split `(a, b)` the machine outputs the letter with
/// `d`-part `c` and `e`-part `b`, and moves to `q_a`.
pub fn generator(n: u32, d: u32, e: u32) -> Result<DetTransducer> {
    if d as u64 * e as u64 != n as u64 {
        return Err(Error::Domain(format!("need d·e = n, got {d}·{e} ≠ {n}")));
    }
    let radix = MixedRadix::new(n as u64, d as u64)?;
    let alphabet = Alphabet::new(n)?;
    let names = (0..d).map(|c| format!("q{c}")).collect();
    let mut edges = Vec::with_capacity(d as usize);
    for c in 0..d as u64 {
        let mut row = Vec::with_capacity(n as usize);
        for m in 0..n as u64 {
            let (a, b) = radix.split(m);
            let out = radix.combine(c, b) as Letter;
            row.push((a as StateId, Word::single(out)));
        }
        edges.push(row);
    }
    DetTransducer::new(alphabet, names, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::images::invert;
    use crate::minimize::{is_isomorphic, minimized_product};

    #[test]
    fn mn_structure() {
        // n prime: trivial
        assert!(MnElement::class_of(2, 2).unwrap().is_identity());
        assert!(MnElement::class_of(2, 8).unwrap().is_identity());
        assert!(MnElement::class_of(3, 3).unwrap().is_identity());
        assert!(MnElement::class_of(3, 9).unwrap().is_identity());
        // n = 4: class of 2 has order exactly 2
        let two = MnElement::class_of(4, 2).unwrap();
        assert!(!two.is_identity());
        assert!(two.mul(&two).unwrap().is_identity());
        // n = 6: classes of 2^j pairwise distinct (infinite order)
        let two6 = MnElement::class_of(6, 2).unwrap();
        let powers: Vec<MnElement> = (0..=6).map(|j| two6.pow(j)).collect();
        for i in 0..powers.len() {
            for j in 0..i {
                assert_ne!(powers[i], powers[j]);
            }
        }
        // 2 and 12 agree mod n = 6
        assert_eq!(
            MnElement::class_of(6, 2).unwrap(),
            MnElement::class_of(6, 12).unwrap()
        );
        // foreign prime rejected
        assert!(MnElement::class_of(6, 5).is_err());
    }

    #[test]
    fn generator_shapes_and_spot_values() {
        let t23 = generator(6, 2, 3).unwrap();
        assert_eq!(t23.state_count(), 2);
        // from q0 on 5,3: outputs 2,3 ending in q1
        let (q, out) = t23.run(0, &Word::from_letters([5, 3])).unwrap();
        assert_eq!((q, out), (1, Word::from_letters([2, 3])));
        let t32 = generator(6, 3, 2).unwrap();
        let (q, out) = t32.run(0, &Word::from_letters([5, 3])).unwrap();
        assert_eq!((q, out), (0, Word::from_letters([3, 5])));
        // T(n,1) is the shift transducer Σ_n
        let tn1 = generator(6, 6, 1).unwrap();
        for c in 0..6usize {
            for x in 0..6u32 {
                assert_eq!(tn1.output(c, x), &Word::single(c as u32));
                assert_eq!(tn1.step(c, x), x as usize);
            }
        }
        assert!(generator(12, 8, 2).is_err());
        assert!(generator(6, 4, 2).is_err());
    }

    #[test]
    fn generator_product_is_shift() {
        let t23 = generator(6, 2, 3).unwrap();
        let t32 = generator(6, 3, 2).unwrap();
        let p = minimized_product(&t23, &t32).unwrap();
        assert!(is_isomorphic(p.det().unwrap(), &DetTransducer::identity(6)).unwrap());
        // and they commute up to isomorphism
        let q = minimized_product(&t32, &t23).unwrap();
        assert!(is_isomorphic(p.det().unwrap(), q.det().unwrap()).unwrap());
    }

    #[test]
    fn generator_signatures() {
        assert_eq!(sig(&generator(6, 2, 3).unwrap()).unwrap().residue(), 3);
        assert_eq!(sig(&generator(6, 3, 2).unwrap()).unwrap().residue(), 2);
        assert_eq!(sig(&generator(6, 6, 1).unwrap()).unwrap().residue(), 1);
        assert_eq!(sig(&DetTransducer::identity(6)).unwrap().residue(), 1);
    }

    #[test]
    fn sig_omega_values() {
        let t23 = generator(6, 2, 3).unwrap();
        let t32 = generator(6, 3, 2).unwrap();
        let a = sig_omega(&t23).unwrap();
        let b = sig_omega(&t32).unwrap();
        assert_eq!(a, MnElement::class_of(6, 3).unwrap());
        assert_eq!(b, MnElement::class_of(6, 2).unwrap());
        assert!(a.mul(&b).unwrap().is_identity());
        assert!(sig_omega(&DetTransducer::identity(6)).unwrap().is_identity());
        assert!(sig_omega(&crate::pool::fixture()).unwrap().is_identity());
    }

    #[test]
    fn sig_k_values() {
        // sig_k((T(d,e), 0), k) = e·n^{k−1} mod n^k − 1
        for (d, e) in [(2u32, 3u32), (3, 2), (6, 1)] {
            let t = generator(6, d, e).unwrap();
            let zeros = vec![0i64; t.state_count()];
            for k in 1..=4u32 {
                let m = 6u64.pow(k) - 1;
                let expect = e as u64 * 6u64.pow(k - 1) % m;
                assert_eq!(sig_k(&t, &zeros, k).unwrap(), expect, "T({d},{e}) k={k}");
            }
        }
        // shift pair (identity, +1) → n^{k−1}
        let id = DetTransducer::identity(6);
        for k in 1..=4u32 {
            let m = 6u64.pow(k) - 1;
            assert_eq!(sig_k(&id, &[1], k).unwrap(), 6u64.pow(k - 1) % m);
            assert_eq!(sig_k(&id, &[0], k).unwrap(), 1);
        }
    }

    #[test]
    fn membership_basics() {
        let id = DetTransducer::identity(6);
        assert!(in_on(&id));
        for r in 1..=5 {
            assert!(in_onr(&id, r).unwrap());
        }
        let t23 = generator(6, 2, 3).unwrap();
        assert!(in_on(&t23));
        // 1·3 ≡ 3 ≢ 1 mod 5, while r = n−1 ≡ 0 always satisfies the congruence
        assert!(!in_onr(&t23, 1).unwrap());
        assert!(in_onr(&t23, 5).unwrap());
        assert!(in_ln(&t23));
        assert!(!in_kn(&t23).unwrap());
        let p = minimized_product(&t23, &generator(6, 3, 2).unwrap()).unwrap();
        assert!(in_kn(p.det().unwrap()).unwrap());
    }

    #[test]
    fn fixture_membership() {
        let t = crate::pool::fixture();
        let pot = ln_potential(&t).expect("fixture is length preserving");
        // derived potential: (a6,a3) = 0, (a1,a5) = −1, (a2,a4) = −2,
        // relative to each other (propagation starts at a1 = 0)
        let v = |name: &str| pot[t.state_by_name(name).unwrap()];
        assert_eq!(v("a6") - v("a1"), 1);
        assert_eq!(v("a3") - v("a1"), 1);
        assert_eq!(v("a5") - v("a1"), 0);
        assert_eq!(v("a2") - v("a1"), -1);
        assert_eq!(v("a4") - v("a1"), -1);
        assert!(in_kn(&t).unwrap());
        let (ok, witness) = in_dn_with_witness(&t).unwrap();
        assert!(!ok);
        assert_eq!(witness.as_deref(), Some("a1"));
    }

    #[test]
    fn sig_multiplicative_on_generators() {
        let t23 = generator(6, 2, 3).unwrap();
        let t32 = generator(6, 3, 2).unwrap();
        let p = minimized_product(&t23, &t32).unwrap();
        let sp = sig(p.det().unwrap()).unwrap();
        assert_eq!(sp, sig(&t23).unwrap().mul(&sig(&t32).unwrap()));
        // sig(T)·sig(T⁻¹) = 1
        let inv = invert(&t23, default_remainder_bound(&t23) * 4).unwrap();
        assert_eq!(sig(&inv).unwrap().residue(), 2);
        assert!(sig(&t23).unwrap().mul(&sig(&inv).unwrap()).is_identity());
    }
}
