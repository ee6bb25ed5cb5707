//! Exact arithmetic in small finite fields `F_{p^k}`, `p` odd.
//!
//! Elements are stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of
//! their coefficient vector over `F_p`, so comparing elements is comparing
//! coefficient vectors. Multiplication goes through discrete-log tables built
//! from the smallest primitive element.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Default cap on `p^k` for user-facing field construction.
pub const DEFAULT_FIELD_BOUND: u64 = 6561;
/// Hard cap used for extension fields built during point counting.
pub const HARD_FIELD_BOUND: u64 = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Integer encoding of the coefficient vector.
    pub fn index(self) -> u32 {
        self.0
    }
}

struct FieldData {
    p: u32,
    k: usize,
    /// Monic defining polynomial over `F_p`, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    size: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    pow_p: Vec<u32>,
}

#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.k)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}", self.0.size)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- polynomials over F_p as plain coefficient vectors, used only to find moduli ----

fn fp_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = fp_trim(a.to_vec());
    let b = fp_trim(b.to_vec());
    let db = b.len() - 1;
    let inv_lead = fp_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * inv_lead as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let t = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut e = enc;
            for _ in 0..d {
                g.push((e % p as u64) as u32);
                e /= p as u64;
            }
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`
/// over `F_p`, comparing coefficients from `x^{k-1}` downwards.
pub fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k as u32);
    for enc in 0..count {
        let mut f = Vec::with_capacity(k + 1);
        let mut e = enc;
        for _ in 0..k {
            f.push((e % p as u64) as u32);
            e /= p as u64;
        }
        f.push(1);
        if fp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl FiniteField {
    /// `F_{p^k}` with the default size bound.
    pub fn new(p: u32, k: usize) -> Result<Self> {
        Self::with_bound(p, k, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u32, k: usize, bound: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Unsupported("even characteristic unsupported".into()));
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidInput(
                "extension degree must be at least 1".into(),
            ));
        }
        let size = (p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        if size > bound.min(HARD_FIELD_BOUND) {
            return Err(Error::BoundExceeded(format!(
                "field of size {p}^{k} exceeds bound {}",
                bound.min(HARD_FIELD_BOUND)
            )));
        }
        static FIELDS: OnceLock<Mutex<HashMap<(u32, usize), FiniteField>>> = OnceLock::new();
        let cache = FIELDS.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let f = Self::from_modulus(p, k, smallest_irreducible(p, k));
        cache.lock().unwrap().insert((p, k), f.clone());
        Ok(f)
    }

    fn from_modulus(p: u32, k: usize, modulus: Vec<u32>) -> Self {
        let size = p.pow(k as u32);
        let pow_p: Vec<u32> = (0..=k).map(|i| p.pow(i as u32)).collect();
        let mut data = FieldData {
            p,
            k,
            modulus,
            size,
            exp: Vec::new(),
            log: Vec::new(),
            pow_p,
        };
        // smallest primitive element whose norms to every proper subfield
        // are conjugate to that subfield's primitive element
        let order = (size - 1) as u64;
        let factors = prime_factors(order);
        let subfields: Vec<(u64, Vec<u32>)> = (1..k)
            .filter(|a| k.is_multiple_of(*a))
            .map(|a| {
                let sub =
                    FiniteField::with_bound(p, a, HARD_FIELD_BOUND).expect("subfield within bound");
                let step = order / (sub.size() as u64 - 1);
                (step, sub.primitive_minpoly())
            })
            .collect();
        let mut gen = 1;
        for g in 1..size {
            if !factors.iter().all(|&r| slow_pow(&data, g, order / r) != 1) {
                continue;
            }
            let ok = subfields.iter().all(|(step, minpoly)| {
                let r = slow_pow(&data, g, *step);
                let mut acc = 0u32;
                for &c in minpoly.iter().rev() {
                    acc = slow_add(&data, slow_mul(&data, acc, r), c);
                }
                acc == 0
            });
            if ok {
                gen = g;
                break;
            }
        }
        let mut exp = vec![0u32; (size - 1) as usize];
        let mut log = vec![0u32; size as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = slow_mul(&data, cur, gen);
        }
        data.exp = exp;
        data.log = log;
        FiniteField(Arc::new(data))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Minimal polynomial over `F_p` of the primitive element, low degree first.
    fn primitive_minpoly(&self) -> Vec<u32> {
        let g = self.primitive_element();
        let mut poly = vec![Fq::ONE];
        let mut conj = g;
        loop {
            // poly *= (x - conj)
            let mut next = vec![Fq::ZERO; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(c, conj));
            }
            poly = next;
            conj = self.frobenius(conj);
            if conj == g {
                break;
            }
        }
        poly.iter()
            .map(|c| {
                debug_assert!(c.0 < self.0.p);
                c.0
            })
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Defining polynomial over `F_p`, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Element of the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_index(&self, i: u32) -> Fq {
        assert!(i < self.0.size, "index {i} outside {self}");
        Fq(i)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fq {
        assert!(coeffs.len() <= self.0.k);
        let mut v = 0;
        for (i, &c) in coeffs.iter().enumerate() {
            v += (c % self.0.p) * self.0.pow_p[i];
        }
        Fq(v)
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        let mut v = a.0;
        (0..self.0.k)
            .map(|_| {
                let c = v % self.0.p;
                v /= self.0.p;
                c
            })
            .collect()
    }

    /// The class of `x` in `F_p[x]/(modulus)`.
    pub fn generator(&self) -> Fq {
        if self.0.k == 1 {
            // the root of `x` is 0; report the primitive element instead
            Fq(self.0.exp[1 % self.0.exp.len()])
        } else {
            Fq(self.0.p)
        }
    }

    pub fn primitive_element(&self) -> Fq {
        Fq(self.0.exp[1 % self.0.exp.len()])
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.size).map(Fq)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fq> {
        (1..self.0.size).map(Fq)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fq((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fq(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fq((p - a.0) % p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let n = self.0.size - 1;
        let e = (self.0.log[a.0 as usize] + self.0.log[b.0 as usize]) % n;
        Fq(self.0.exp[e as usize])
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        let n = self.0.size - 1;
        let e = (n - self.0.log[a.0 as usize]) % n;
        Some(Fq(self.0.exp[e as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let n = (self.0.size - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Fq(self.0.exp[((l * (e % n)) % n) as usize])
    }

    /// `a^n` for a signed exponent; `None` when `a = 0` and `n < 0`.
    pub fn powi(&self, a: Fq, n: i64) -> Option<Fq> {
        if n >= 0 {
            Some(self.pow(a, n as u64))
        } else {
            self.inv(a).map(|ai| self.pow(ai, n.unsigned_abs()))
        }
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.0.p as u64)
    }

    /// Discrete logarithm with respect to the primitive element.
    pub fn log(&self, a: Fq) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    pub fn is_square(&self, a: Fq) -> bool {
        a.0 == 0 || self.0.log[a.0 as usize].is_multiple_of(2)
    }

    /// A square root, choosing the one with the smaller index.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return Some(Fq::ZERO);
        }
        let l = self.0.log[a.0 as usize];
        if l % 2 == 1 {
            return None;
        }
        let r = Fq(self.0.exp[(l / 2) as usize]);
        let s = self.neg(r);
        Some(r.min(s))
    }

    /// Smallest non-square (the canonical representative of the non-trivial
    /// square class of `F_q^×`).
    pub fn nonsquare(&self) -> Fq {
        self.nonzero()
            .find(|&a| !self.is_square(a))
            .expect("q odd has non-squares")
    }

    /// Sum of the Frobenius conjugates over the subfield of degree `sub_k`
    /// (absolute degree), i.e. the trace to that subfield.
    pub fn trace_to(&self, a: Fq, sub_k: usize) -> Fq {
        assert!(self.0.k.is_multiple_of(sub_k));
        let q = (self.0.p as u64).pow(sub_k as u32);
        let mut acc = Fq::ZERO;
        let mut cur = a;
        for _ in 0..self.0.k / sub_k {
            acc = self.add(acc, cur);
            cur = self.pow(cur, q);
        }
        acc
    }

    pub fn format(&self, a: Fq) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        let cs = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &c) in cs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}*z"),
                (i, 1) => format!("z^{i}"),
                (i, c) => format!("{c}*z^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn slow_mul(f: &FieldData, a: u32, b: u32) -> u32 {
    let p = f.p as u64;
    let k = f.k;
    let digits = |mut v: u32| -> Vec<u64> {
        (0..k)
            .map(|_| {
                let c = v % f.p;
                v /= f.p;
                c as u64
            })
            .collect()
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * k];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &m) in f.modulus[..k].iter().enumerate() {
            let t = c * m as u64 % p;
            prod[d - k + i] = (prod[d - k + i] + p - t) % p;
        }
    }
    let mut out = 0u32;
    for i in (0..k).rev() {
        out = out * f.p + prod[i] as u32;
    }
    out
}

fn slow_add(f: &FieldData, a: u32, b: u32) -> u32 {
    let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
    while x > 0 || y > 0 {
        out += ((x % f.p + y % f.p) % f.p) * place;
        x /= f.p;
        y /= f.p;
        place *= f.p;
    }
    out
}

fn slow_pow(f: &FieldData, a: u32, mut e: u64) -> u32 {
    let mut result = 1u32;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            result = slow_mul(f, result, base);
        }
        base = slow_mul(f, base, base);
        e >>= 1;
    }
    result
}

/// The field embedding `F_{p^a} -> F_{p^c}` sending the chosen primitive
/// element `g_a` to `g_c^{(p^c-1)/(p^a-1)}`.
///
/// Primitive elements are chosen so that this is a ring map for every pair
/// `a | c`; the maps then compose: `F_{p^a} -> F_{p^b} -> F_{p^c}` equals
/// `F_{p^a} -> F_{p^c}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FiniteField,
    big: FiniteField,
    step: u64,
}

impl Embedding {
    pub fn new(small: &FiniteField, big: &FiniteField) -> Result<Self> {
        if small.characteristic() != big.characteristic()
            || !big.degree().is_multiple_of(small.degree())
        {
            return Err(Error::InvalidInput(format!(
                "{small} does not embed in {big}"
            )));
        }
        let step = (big.size() as u64 - 1) / (small.size() as u64 - 1);
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            step,
        })
    }

    pub fn source(&self) -> &FiniteField {
        &self.small
    }

    pub fn target(&self) -> &FiniteField {
        &self.big
    }

    pub fn apply(&self, a: Fq) -> Fq {
        match self.small.log(a) {
            None => Fq::ZERO,
            Some(l) => {
                let n = self.big.size() as u64 - 1;
                Fq(self.big.0.exp[((l as u64 * self.step) % n) as usize])
            }
        }
    }

    /// Preimage of an element lying in the image, if any.
    pub fn preimage(&self, b: Fq) -> Option<Fq> {
        match self.big.log(b) {
            None => Some(Fq::ZERO),
            Some(j) if (j as u64).is_multiple_of(self.step) => {
                Some(Fq(self.small.0.exp[(j as u64 / self.step) as usize]))
            }
            Some(_) => None,
        }
    }
}

/// Extension of degree `m` over `base`, built with the hard size bound.
pub fn extension(base: &FiniteField, m: usize) -> Result<(FiniteField, Embedding)> {
    let big = FiniteField::with_bound(base.characteristic(), base.degree() * m, HARD_FIELD_BOUND)?;
    let emb = Embedding::new(base, &big)?;
    Ok((big, emb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FiniteField::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(
            f.elements().map(|a| a.index()).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        // the three monic quadratics without roots in F_3 are x^2+1, x^2+x+2, x^2+2x+2
        let mut irreducible = Vec::new();
        for c1 in 0..3u32 {
            for c0 in 0..3u32 {
                if (0..3u32).all(|x| (x * x + c1 * x + c0) % 3 != 0) {
                    irreducible.push((c1, c0));
                }
            }
        }
        assert_eq!(irreducible.len(), 3);
        assert_eq!(irreducible[0], (0, 1));
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn even_characteristic_rejected() {
        let err = FiniteField::new(2, 1).unwrap_err();
        assert!(err.to_string().contains("even characteristic unsupported"));
        assert!(FiniteField::new(9, 1).is_err());
        assert!(matches!(
            FiniteField::new(3, 9),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn square_tests() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert!(f3.is_square(f3.one()));
        assert!(!f3.is_square(f3.from_int(-1)));
        let f9 = FiniteField::new(3, 2).unwrap();
        let minus_one = f9.from_int(-1);
        let brute = f9.elements().any(|y| f9.mul(y, y) == minus_one);
        assert!(brute);
        assert!(f9.is_square(minus_one));
    }

    #[test]
    fn cardinalities() {
        assert_eq!(FiniteField::new(3, 2).unwrap().elements().count(), 9);
        assert_eq!(FiniteField::new(3, 3).unwrap().elements().count(), 27);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (3, 3), (5, 2), (3, 4)] {
            let f = FiniteField::new(p, k).unwrap();
            let els: Vec<Fq> = f.elements().collect();
            for &a in &els {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // check against schoolbook multiplication
                    assert_eq!(f.mul(a, b).0, slow_mul(&f.0, a.0, b.0));
                    if f.size() <= 27 {
                        for &c in &els {
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn square_count_is_half_plus_one() {
        for (p, k) in [(3, 1), (5, 1), (3, 2), (7, 1), (3, 3), (5, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let n = f.elements().filter(|&a| f.is_square(a)).count() as u32;
            assert_eq!(n, f.size().div_ceil(2));
        }
    }

    #[test]
    fn embeddings_preserve_arithmetic() {
        for (p, k, m) in [(3, 1, 2), (3, 2, 2), (5, 1, 2), (7, 1, 2), (3, 1, 3)] {
            let small = FiniteField::new(p, k).unwrap();
            let (big, emb) = extension(&small, m).unwrap();
            for a in small.elements() {
                for b in small.elements() {
                    assert_eq!(
                        emb.apply(small.add(a, b)),
                        big.add(emb.apply(a), emb.apply(b))
                    );
                    assert_eq!(
                        emb.apply(small.mul(a, b)),
                        big.mul(emb.apply(a), emb.apply(b))
                    );
                }
                assert_eq!(emb.preimage(emb.apply(a)), Some(a));
            }
        }
    }

    #[test]
    fn tower_embeddings_commute() {
        let base = FiniteField::new(3, 2).unwrap();
        let (mid, to_mid) = extension(&base, 2).unwrap();
        let (big, to_big) = extension(&base, 4).unwrap();
        let link = Embedding::new(&mid, &big).unwrap();
        for a in base.elements() {
            assert_eq!(link.apply(to_mid.apply(a)), to_big.apply(a));
        }
        for a in mid.elements().take(30) {
            for b in mid.elements().take(30) {
                assert_eq!(
                    link.apply(mid.mul(a, b)),
                    big.mul(link.apply(a), link.apply(b))
                );
            }
        }
    }

    #[test]
    fn embeddings_compose_in_towers() {
        for (p, a, b, c) in [
            (3, 1, 2, 4),
            (3, 2, 4, 8),
            (3, 1, 5, 10),
            (5, 1, 2, 6),
            (3, 2, 6, 12),
        ] {
            let fa = FiniteField::with_bound(p, a, HARD_FIELD_BOUND).unwrap();
            let fb = FiniteField::with_bound(p, b, HARD_FIELD_BOUND).unwrap();
            let fc = FiniteField::with_bound(p, c, HARD_FIELD_BOUND).unwrap();
            let ab = Embedding::new(&fa, &fb).unwrap();
            let bc = Embedding::new(&fb, &fc).unwrap();
            let ac = Embedding::new(&fa, &fc).unwrap();
            for x in fa.elements() {
                assert_eq!(bc.apply(ab.apply(x)), ac.apply(x));
                for y in fa.elements().take(20) {
                    assert_eq!(ac.apply(fa.add(x, y)), fc.add(ac.apply(x), ac.apply(y)));
                }
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        let f = FiniteField::new(3, 3).unwrap();
        for a in f.elements() {
            match f.sqrt(a) {
                Some(r) => assert_eq!(f.mul(r, r), a),
                None => assert!(!f.is_square(a)),
            }
        }
    }
}
