//! Dense univariate polynomials over a [`FiniteField`].
//!
//! A `Poly` never stores trailing zero coefficients, so structural equality is
//! polynomial equality. The field is passed explicitly to every operation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ff::{FiniteField, Fq};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly(Vec<Fq>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Fq::ONE])
    }

    pub fn x() -> Self {
        Poly(vec![Fq::ZERO, Fq::ONE])
    }

    pub fn constant(c: Fq) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Fq, n: usize) -> Self {
        let mut v = vec![Fq::ZERO; n + 1];
        v[n] = c;
        Self::from_coeffs(v)
    }

    /// Coefficients low degree first.
    pub fn from_coeffs(mut c: Vec<Fq>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    /// `x - a`.
    pub fn linear(f: &FiniteField, a: Fq) -> Self {
        Poly(vec![f.neg(a), Fq::ONE])
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.0.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn degi(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn lead(&self) -> Fq {
        self.0.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fq::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, f: &FiniteField, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &FiniteField, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FiniteField) -> Poly {
        Poly(self.0.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn scale(&self, f: &FiniteField, c: Fq) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &FiniteField, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fq::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, f: &FiniteField, mut e: u64) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        result
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fq::ZERO; n];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &FiniteField, d: &Poly) -> (Poly, Poly) {
        let dd = d.deg().expect("division by zero polynomial");
        let inv = f.inv(d.lead()).expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Fq::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.0.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, b));
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, f: &FiniteField, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Exact division, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, f: &FiniteField, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(f, d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, f: &FiniteField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()).unwrap())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &FiniteField, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &FiniteField, x: Fq) -> Fq {
        self.0
            .iter()
            .rev()
            .fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(g)`.
    pub fn compose(&self, f: &FiniteField, g: &Poly) -> Poly {
        self.0.iter().rev().fold(Poly::zero(), |acc, &c| {
            acc.mul(f, g).add(f, &Poly::constant(c))
        })
    }

    pub fn derivative(&self, f: &FiniteField) -> Poly {
        Poly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    /// Apply a coefficient map, e.g. an embedding into an extension field.
    pub fn map(&self, g: impl Fn(Fq) -> Fq) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&c| g(c)).collect())
    }

    /// `x^e mod m`.
    pub fn x_pow_mod(f: &FiniteField, e: u64, m: &Poly) -> Poly {
        let mut result = Poly::one().rem(f, m);
        let mut base = Poly::x().rem(f, m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(f, &base).rem(f, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base).rem(f, m);
            }
        }
        result
    }

    /// Irreducibility over `f` by the gcd test with `x^{q^i} - x`.
    pub fn is_irreducible(&self, f: &FiniteField) -> bool {
        let n = match self.deg() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let q = f.size() as u64;
        let m = self.monic(f);
        let mut xp = Poly::x();
        for _ in 1..=n / 2 {
            // xp <- xp^q mod m
            let mut acc = Poly::one();
            let mut base = xp.clone();
            let mut e = q;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(f, &base).rem(f, &m);
                }
                e >>= 1;
                if e > 0 {
                    base = base.mul(f, &base).rem(f, &m);
                }
            }
            xp = acc;
            if !m.gcd(f, &xp.sub(f, &Poly::x())).is_constant() {
                return false;
            }
        }
        true
    }

    /// Roots in `f`, ascending by index, without multiplicity.
    pub fn roots(&self, f: &FiniteField) -> Vec<Fq> {
        if self.is_zero() {
            return f.elements().collect();
        }
        f.elements()
            .filter(|&a| self.eval(f, a).is_zero())
            .collect()
    }

    /// Multiplicity of the irreducible `p` in `self` (`self` nonzero).
    pub fn valuation(&self, f: &FiniteField, p: &Poly) -> u32 {
        assert!(!self.is_zero());
        let mut v = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(f, p) {
            cur = q;
            v += 1;
        }
        v
    }

    /// Factorisation into monic irreducibles with multiplicities, by trial
    /// division in increasing degree. Returns (leading coefficient, factors).
    pub fn factor(&self, f: &FiniteField) -> (Fq, Vec<(Poly, u32)>) {
        assert!(!self.is_zero());
        let lead = self.lead();
        let mut rest = self.monic(f);
        let mut out = Vec::new();
        let mut d = 1;
        while rest.deg().unwrap_or(0) >= 2 * d {
            for p in monic_irreducibles(f, d) {
                let v = rest.valuation(f, &p);
                if v > 0 {
                    rest = rest.div_exact(f, &p.pow(f, v as u64)).unwrap();
                    out.push((p, v));
                }
            }
            d += 1;
        }
        if rest.deg().unwrap_or(0) > 0 {
            out.push((rest, 1));
        }
        out.sort();
        (lead, out)
    }

    pub fn is_squarefree(&self, f: &FiniteField) -> bool {
        !self.is_zero() && self.gcd(f, &self.derivative(f)).is_constant()
    }

    pub fn format(&self, f: &FiniteField, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format(c);
            let cs = if cs.contains('+') {
                format!("({cs})")
            } else {
                cs
            };
            if !out.is_empty() {
                out.push('+');
            }
            match (i, c == Fq::ONE) {
                (0, _) => out.push_str(&cs),
                (1, true) => out.push_str(var),
                (1, false) => write!(out, "{cs}*{var}").unwrap(),
                (_, true) => write!(out, "{var}^{i}").unwrap(),
                (_, false) => write!(out, "{cs}*{var}^{i}").unwrap(),
            }
        }
        out
    }

    /// Parses sums of terms `c`, `c*v`, `v^n`, `c*v^n`, `-v` with integer
    /// coefficients reduced into the prime field. Any single ASCII letter may
    /// serve as the variable.
    pub fn parse(f: &FiniteField, s: &str) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut var: Option<char> = None;
        let mut acc = Poly::zero();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1i64, b.to_string()),
                None => (1, t.trim_start_matches('+').to_string()),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("bad term in {s:?}")));
            }
            let (coef_str, mono) = match body.find(|c: char| c.is_ascii_alphabetic()) {
                None => (body.as_str(), ""),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    (c, &body[pos..])
                }
            };
            let coef: i64 = if coef_str.is_empty() {
                1
            } else {
                coef_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {coef_str:?}")))?
            };
            let exp = if mono.is_empty() {
                0
            } else {
                let v = mono.chars().next().unwrap();
                if *var.get_or_insert(v) != v {
                    return Err(Error::Parse(format!("mixed variables in {s:?}")));
                }
                match mono[1..].strip_prefix('^') {
                    None if mono.len() == 1 => 1,
                    None => return Err(Error::Parse(format!("bad monomial {mono:?}"))),
                    Some(e) => e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?,
                }
            };
            acc = acc.add(f, &Poly::monomial(f.from_int(sign * coef), exp));
        }
        Ok(acc)
    }
}

/// All monic polynomials of degree exactly `d`, in index order.
pub fn monic_polys(f: &FiniteField, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = f.size() as u64;
    (0..q.pow(d as u32)).map(move |mut e| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(f.from_index((e % q) as u32));
            e /= q;
        }
        c.push(Fq::ONE);
        Poly(c)
    })
}

pub fn monic_irreducibles(f: &FiniteField, d: usize) -> Vec<Poly> {
    monic_polys(f, d).filter(|p| p.is_irreducible(f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::new(3, 1).unwrap()
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_q is (1/d) sum mu(d/e) q^e
        let f = f3();
        assert_eq!(monic_irreducibles(&f, 1).len(), 3);
        assert_eq!(monic_irreducibles(&f, 2).len(), 3);
        assert_eq!(monic_irreducibles(&f, 3).len(), 8);
        assert_eq!(monic_irreducibles(&f, 4).len(), 18);
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(monic_irreducibles(&f9, 2).len(), 36);
    }

    #[test]
    fn divrem_reconstructs() {
        let f = f3();
        for a in monic_polys(&f, 4) {
            for b in monic_polys(&f, 2).take(5) {
                let (q, r) = a.divrem(&f, &b);
                assert!(r.degi() < 2);
                assert_eq!(q.mul(&f, &b).add(&f, &r), a);
            }
        }
    }

    #[test]
    fn parse_and_format() {
        let f = f3();
        let p = Poly::parse(&f, "x^3+x+1").unwrap();
        assert_eq!(p.format(&f, "x"), "x^3+x+1");
        let q = Poly::parse(&f, "-t").unwrap();
        assert_eq!(q.coeffs(), &[Fq::ZERO, f.from_int(2)]);
        let r = Poly::parse(&f, "2*s^2 - 1").unwrap();
        assert_eq!(r.format(&f, "s"), "2*s^2+2");
        assert!(Poly::parse(&f, "x+y").is_err());
    }

    #[test]
    fn factor_roundtrip() {
        let f = f3();
        for a in monic_polys(&f, 5) {
            let (c, fs) = a.factor(&f);
            let mut prod = Poly::constant(c);
            for (p, e) in &fs {
                assert!(p.is_irreducible(&f));
                prod = prod.mul(&f, &p.pow(&f, *e as u64));
            }
            assert_eq!(prod, a);
        }
    }
}
