//! Quaternion algebras over Hasse domains of the projective line, their
//! reduced norm, and the twisted forms of `SL_1(A)`.

use std::collections::HashMap;

use crate::brauer::BrauerModel;
use crate::curve::ClosedPoint;
use crate::error::{Error, Result};
use crate::ff::{FiniteField, Fq};
use crate::hasse::{local_term, pic_group, unit_group, Function, HasseDomain};
use crate::poly::Poly;
use crate::report::{Bound, Component, Quotient, TwistReport};

/// Default degree bound of the norm search.
pub const DEFAULT_NORM_BOUND: usize = 6;
/// Largest number of `(x, y)` pairs tabulated by the norm search.
pub const PAIR_CAP: u64 = 1 << 21;

/// `(a, b)`: `i^2 = a`, `j^2 = b`, `ij = -ji`, over a Hasse domain of `P^1`.
#[derive(Clone, Debug)]
pub struct QuaternionAlgebra {
    pub base: HasseDomain,
    pub a: Function,
    pub b: Function,
    /// Polynomials differing from `a`, `b` by squares.
    pa: Poly,
    pb: Poly,
}

/// `num / den` with `den` supported on `S`.
pub fn parse_function(d: &HasseDomain, s: &str) -> Result<Function> {
    let f = d.curve().field();
    let (n, m) = match s.split_once('/') {
        Some((n, m)) => (n, m),
        None => (s, "1"),
    };
    let strip = |t: &str| {
        t.trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .to_string()
    };
    let num = Poly::parse(f, &strip(n))?;
    let den = Poly::parse(f, &strip(m))?;
    if num.is_zero() || den.is_zero() {
        return Err(Error::InvalidInput(format!("{s:?} is not a unit")));
    }
    let g = Function::Rational {
        num: Poly::one(),
        den: Poly::one(),
    };
    let h = g.mul(d.curve(), &Function::Rational { num, den })?;
    Ok(h)
}

fn finite_places_poly(d: &HasseDomain) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for p in d.places() {
        if let Some(pi) = p.x_polynomial(d.curve())? {
            out.push(pi);
        }
    }
    Ok(out)
}

/// Fails unless `g` is regular away from `S`.
fn check_regular(d: &HasseDomain, g: &Function) -> Result<()> {
    let Function::Rational { den, .. } = g else {
        unreachable!()
    };
    let f = d.curve().field();
    let mut rest = den.monic(f);
    for pi in finite_places_poly(d)? {
        while let Some(q) = rest.div_exact(f, &pi) {
            if rest.is_constant() {
                break;
            }
            rest = q;
        }
    }
    if !rest.is_constant() {
        return Err(Error::InvalidInput(
            "structure constant has poles outside S".into(),
        ));
    }
    Ok(())
}

impl QuaternionAlgebra {
    pub fn new(base: HasseDomain, a: Function, b: Function) -> Result<Self> {
        if !base.curve().is_projective_line() {
            return Err(Error::Unsupported(
                "quaternion algebras are supported over the projective line only".into(),
            ));
        }
        if base.curve().field().characteristic() == 2 {
            return Err(Error::Unsupported(
                "quaternion algebras need odd characteristic".into(),
            ));
        }
        check_regular(&base, &a)?;
        check_regular(&base, &b)?;
        let f = base.curve().field();
        let clear = |g: &Function| {
            let Function::Rational { num, den } = g else {
                unreachable!()
            };
            num.mul(f, den)
        };
        let (pa, pb) = (clear(&a), clear(&b));
        Ok(QuaternionAlgebra { base, a, b, pa, pb })
    }

    /// `a=<fn> b=<fn>`.
    pub fn parse(base: HasseDomain, s: &str) -> Result<Self> {
        let mut a = None;
        let mut b = None;
        for tok in s.split_whitespace() {
            match tok.split_once('=') {
                Some(("a", v)) => a = Some(parse_function(&base, v)?),
                Some(("b", v)) => b = Some(parse_function(&base, v)?),
                Some(("bound", _)) => {}
                _ => return Err(Error::Parse(format!("bad quaternion field {tok:?}"))),
            }
        }
        let a = a.ok_or_else(|| Error::Parse("quaternion needs a=".into()))?;
        let b = b.ok_or_else(|| Error::Parse("quaternion needs b=".into()))?;
        Self::new(base, a, b)
    }

    pub fn label(&self) -> String {
        let f = self.base.curve().field();
        format!("({}, {})", self.a.format(f), self.b.format(f))
    }

    /// `x^2 - a y^2 - b z^2 + ab w^2` on polynomial coordinates, with `a`, `b`
    /// replaced by their polynomial representatives.
    pub fn reduced_norm(&self, x: &[Poly; 4]) -> Poly {
        let f = self.base.curve().field();
        let sq = |p: &Poly| p.mul(f, p);
        let ab = self.pa.mul(f, &self.pb);
        sq(&x[0])
            .sub(f, &self.pa.mul(f, &sq(&x[1])))
            .sub(f, &self.pb.mul(f, &sq(&x[2])))
            .add(f, &ab.mul(f, &sq(&x[3])))
    }

    /// Reduced norm of `(x + yi + zj + wk)` for function coordinates.
    pub fn reduced_norm_fn(&self, x: &[Function; 4]) -> Result<Function> {
        let c = self.base.curve();
        let f = c.field();
        let sq = |g: &Function| g.mul(c, g);
        let neg = |g: Function| g.scale(f, f.neg(Fq::ONE));
        let t0 = sq(&x[0])?;
        let t1 = neg(self.a.mul(c, &sq(&x[1])?)?);
        let t2 = neg(self.b.mul(c, &sq(&x[2])?)?);
        let t3 = self.a.mul(c, &self.b)?.mul(c, &sq(&x[3])?)?;
        Ok(add_fns(f, &[t0, t1, t2, t3]))
    }
}

fn add_fns(f: &FiniteField, xs: &[Function]) -> Function {
    let mut num = Poly::zero();
    let mut den = Poly::one();
    for g in xs {
        let Function::Rational { num: n, den: d } = g else {
            unreachable!()
        };
        num = num.mul(f, d).add(f, &n.mul(f, &den));
        den = den.mul(f, d);
    }
    if num.is_zero() {
        return Function::Rational {
            num,
            den: Poly::one(),
        };
    }
    let g = num.gcd(f, &den);
    let num = num.div_exact(f, &g).unwrap();
    let den = den.div_exact(f, &g).unwrap();
    let l = f.inv(den.lead()).unwrap();
    Function::Rational {
        num: num.scale(f, l),
        den: den.scale(f, l),
    }
}

/// A unit written as a reduced norm: `(x + yi + zj + wk) / e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormWitness {
    pub unit: String,
    pub coords: [Poly; 4],
    pub denominator: Poly,
}

impl NormWitness {
    pub fn format(&self, f: &FiniteField) -> String {
        let c: Vec<String> = self.coords.iter().map(|p| p.format(f, "x")).collect();
        let body = format!("({}) + ({})i + ({})j + ({})k", c[0], c[1], c[2], c[3]);
        if self.denominator.is_constant() {
            format!("{} = Nrd({body})", self.unit)
        } else {
            format!(
                "{} = Nrd(({body}) / ({}))",
                self.unit,
                self.denominator.format(f, "x")
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormVerdict {
    Surjective {
        witnesses: Vec<NormWitness>,
    },
    /// `unit` has odd valuation at `place`, where every reduced norm has even valuation.
    NotSurjective {
        unit: String,
        place: String,
    },
    Unknown {
        unrepresented: Vec<String>,
        bound: usize,
    },
}

impl NormVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            NormVerdict::Surjective { .. } => "surjective",
            NormVerdict::NotSurjective { .. } => "not-surjective",
            NormVerdict::Unknown { .. } => "unknown",
        }
    }
}

fn polys_up_to(f: &FiniteField, d: usize) -> Vec<Poly> {
    let q = f.size() as u64;
    let els: Vec<Fq> = f.elements().collect();
    let n = q.pow(d as u32 + 1);
    (0..n)
        .map(|mut k| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..=d {
                c.push(els[(k % q) as usize]);
                k /= q;
            }
            Poly::from_coeffs(c)
        })
        .collect()
}

/// Polynomial quadruples of degree at most `d` with reduced norm `c^2 * target`,
/// found by matching `x^2 - a y^2` against `target + b (z^2 - a w^2)`.
fn search_level(alg: &QuaternionAlgebra, target: &Poly, d: usize) -> Option<[Poly; 4]> {
    let f = alg.base.curve().field();
    let polys = polys_up_to(f, d);
    let form = |x: &Poly, y: &Poly| x.mul(f, x).sub(f, &alg.pa.mul(f, &y.mul(f, y)));
    let mut table: HashMap<Poly, (usize, usize)> = HashMap::new();
    for (i, x) in polys.iter().enumerate() {
        for (j, y) in polys.iter().enumerate() {
            table.entry(form(x, y)).or_insert((i, j));
        }
    }
    let scales: Vec<Fq> = f.nonzero().map(|c| f.mul(c, c)).collect();
    for (k, z) in polys.iter().enumerate() {
        for (l, w) in polys.iter().enumerate() {
            let rest = alg.pb.mul(f, &form(z, w));
            for &s in &scales {
                let want = target.scale(f, s).add(f, &rest);
                if let Some(&(i, j)) = table.get(&want) {
                    let inv = f.inv(f.sqrt(s).unwrap()).unwrap();
                    let c = [&polys[i], &polys[j], &polys[k], &polys[l]].map(|p| p.scale(f, inv));
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Whether the reduction of the norm form at `p` is anisotropic, so that
/// every reduced norm has even valuation there.
pub fn even_valuation_certificate(alg: &QuaternionAlgebra, p: &ClosedPoint) -> Result<bool> {
    let c = alg.base.curve();
    let (va, a, k) = local_term(c, &alg.a, p)?;
    let (vb, b, _) = local_term(c, &alg.b, p)?;
    if va != 0 || vb != 0 || k.size() > 27 {
        return Ok(false);
    }
    let els: Vec<Fq> = k.elements().collect();
    let ab = k.mul(a, b);
    for &x in &els {
        for &y in &els {
            let s1 = k.sub(k.mul(x, x), k.mul(a, k.mul(y, y)));
            for &z in &els {
                for &w in &els {
                    if x.is_zero() && y.is_zero() && z.is_zero() && w.is_zero() {
                        continue;
                    }
                    let s2 = k.sub(k.mul(ab, k.mul(w, w)), k.mul(b, k.mul(z, z)));
                    if k.add(s1, s2).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Decides whether `Nrd: A^x -> O_S^x` is onto, up to the degree bound.
pub fn norm_surjectivity(alg: &QuaternionAlgebra, bound: usize) -> Result<NormVerdict> {
    let d = &alg.base;
    let c = d.curve();
    let f = c.field();
    let units = unit_group(d)?;
    let mut gens: Vec<Function> = vec![Function::constant(f.nonsquare())];
    gens.extend(units.generators.iter().map(|u| u.function.clone()));
    let big_d = finite_places_poly(d)?
        .into_iter()
        .fold(Poly::one(), |acc, p| acc.mul(f, &p));
    let q = f.size() as u64;
    let mut witnesses = Vec::new();
    let mut unrepresented = Vec::new();
    for u in &gens {
        for p in d.places() {
            let (v, _, _) = local_term(c, u, p)?;
            if v.rem_euclid(2) == 1 && even_valuation_certificate(alg, p)? {
                return Ok(NormVerdict::NotSurjective {
                    unit: u.format(f),
                    place: p.format(c),
                });
            }
        }
        let Function::Rational { num, den } = u else {
            unreachable!()
        };
        let mut found = None;
        'search: for level in 0..=bound {
            if q.saturating_pow(2 * (level as u32 + 1)) > PAIR_CAP {
                break;
            }
            let mut e = den.clone();
            for _ in 0..2 {
                let target = num.mul(f, &e).mul(f, &e).div_exact(f, den).unwrap();
                if let Some(coords) = search_level(alg, &target, level) {
                    found = Some(NormWitness {
                        unit: u.format(f),
                        coords,
                        denominator: e,
                    });
                    break 'search;
                }
                e = e.mul(f, &big_d);
            }
        }
        match found {
            Some(w) => witnesses.push(w),
            None => unrepresented.push(u.format(f)),
        }
    }
    Ok(if unrepresented.is_empty() {
        NormVerdict::Surjective { witnesses }
    } else {
        NormVerdict::Unknown {
            unrepresented,
            bound,
        }
    })
}

/// Twisted forms of `SL_1(A)`: `Pic(O_S)/2 x 2Br(O_S)` when the norm is onto.
pub fn sl1_twist_report(alg: &QuaternionAlgebra, verdict: &NormVerdict) -> Result<TwistReport> {
    let d = &alg.base;
    let j = pic_group(d)?.group.quotient_mod(2);
    let i = BrauerModel::of_domain(d, 2)?.group().clone();
    let size = j.order().unwrap() * i.order().unwrap();
    let f = d.curve().field();
    let mut notes = vec![format!(
        "quaternion algebra {}; reduced norm {}",
        alg.label(),
        verdict.name()
    )];
    match verdict {
        NormVerdict::Surjective { witnesses } => {
            notes.extend(witnesses.iter().map(|w| w.format(f)));
        }
        NormVerdict::NotSurjective { unit, place } => {
            notes.push(format!("{unit} is not a reduced norm: odd valuation at {place}, where all norms have even valuation"));
        }
        NormVerdict::Unknown {
            unrepresented,
            bound,
        } => {
            notes.push(format!(
                "no representation of {} up to degree {bound}",
                unrepresented.join(", ")
            ));
        }
    }
    let (hasse, total, bound) = match verdict {
        NormVerdict::Surjective { .. } => ("holds", Some(size), Bound::Exact),
        NormVerdict::NotSurjective { .. } => ("fails", None, Bound::Unknown),
        NormVerdict::Unknown { .. } => ("unknown", Some(size), Bound::Unknown),
    };
    let comp = Component {
        class: "inner".into(),
        label: "O_S".into(),
        fundamental: "mu2".into(),
        j: Some(j.invariants()),
        i: Some(i.invariants()),
        quotient: Quotient::None,
        size: Some(size),
        size_max: None,
        exact: matches!(verdict, NormVerdict::Surjective { .. }),
        note: None,
    };
    Ok(TwistReport {
        group: "A1-SL1".into(),
        curve: d.curve().describe(),
        places: d.format_places(),
        theta: "0".into(),
        components: vec![comp],
        outer_forms: 0,
        total,
        total_max: None,
        bound,
        hasse_principle: Some(hasse.into()),
        notes,
    })
}
