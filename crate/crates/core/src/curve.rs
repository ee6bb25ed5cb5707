//! Curves of genus 0 and 1 over a finite field: the projective line,
//! Weierstrass cubics and double covers `y^2 = h(s)` of the line with
//! `deg h <= 4`.
//!
//! Points over `F_{q^d}` are stored with coordinates in the canonical field
//! of that size; curve coefficients are carried there by the canonical
//! embedding of the base field.

use std::collections::HashMap;
use std::fmt;

use crate::abgrp::FinAbGroup;
use crate::error::{Error, Result};
use crate::ff::{extension, Embedding, FiniteField, Fq};
use crate::poly::Poly;

/// Default cap on `q^d` for exhaustive enumeration.
pub const DEFAULT_ENUM_BOUND: u64 = 59049;

/// A geometric point. On the projective line affine points are
/// `Affine(x, 0)`. `Infinity(c)` on an even-degree double cover is the point
/// where `y / s^{deg h / 2}` tends to `c`; elsewhere `c = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Point {
    Affine(Fq, Fq),
    Infinity(Fq),
}

impl Point {
    pub const O: Point = Point::Infinity(Fq::ZERO);

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity(_))
    }

    pub fn map(&self, e: &Embedding) -> Point {
        match *self {
            Point::Affine(x, y) => Point::Affine(e.apply(x), e.apply(y)),
            Point::Infinity(c) => Point::Infinity(e.apply(c)),
        }
    }

    pub fn format(&self, f: &FiniteField) -> String {
        match *self {
            Point::Affine(x, y) => format!("({},{})", f.format(x), f.format(y)),
            Point::Infinity(c) if c.is_zero() => "inf".into(),
            Point::Infinity(c) => format!("inf[{}]", f.format(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    ProjectiveLine,
    /// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
    Weierstrass([Fq; 5]),
    /// `y^2 = h(s)` with `h` squarefree of degree 1 to 4.
    DoubleCover(Poly),
}

impl CurveKind {
    fn map(&self, e: &Embedding) -> CurveKind {
        match self {
            CurveKind::ProjectiveLine => CurveKind::ProjectiveLine,
            CurveKind::Weierstrass(a) => CurveKind::Weierstrass(a.map(|c| e.apply(c))),
            CurveKind::DoubleCover(h) => CurveKind::DoubleCover(h.map(|c| e.apply(c))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveModel {
    field: FiniteField,
    kind: CurveKind,
}

fn weierstrass_b(f: &FiniteField, a: &[Fq; 5]) -> [Fq; 4] {
    let [a1, a2, a3, a4, a6] = *a;
    let n = |k: i64| f.from_int(k);
    let b2 = f.add(f.mul(a1, a1), f.mul(n(4), a2));
    let b4 = f.add(f.mul(n(2), a4), f.mul(a1, a3));
    let b6 = f.add(f.mul(a3, a3), f.mul(n(4), a6));
    let b8 = {
        let t1 = f.mul(f.mul(a1, a1), a6);
        let t2 = f.mul(n(4), f.mul(a2, a6));
        let t3 = f.mul(a1, f.mul(a3, a4));
        let t4 = f.mul(a2, f.mul(a3, a3));
        let t5 = f.mul(a4, a4);
        f.sub(f.add(f.sub(f.add(t1, t2), t3), t4), t5)
    };
    [b2, b4, b6, b8]
}

pub fn discriminant(f: &FiniteField, a: &[Fq; 5]) -> Fq {
    let [b2, b4, b6, b8] = weierstrass_b(f, a);
    let n = |k: i64| f.from_int(k);
    let t1 = f.neg(f.mul(f.mul(b2, b2), b8));
    let t2 = f.mul(n(8), f.mul(b4, f.mul(b4, b4)));
    let t3 = f.mul(n(27), f.mul(b6, b6));
    let t4 = f.mul(n(9), f.mul(b2, f.mul(b4, b6)));
    f.add(f.sub(f.sub(t1, t2), t3), t4)
}

/// Parses a field element written as an integer or a polynomial in `z`
/// (the class of `x` in the defining quotient).
pub fn parse_elem(f: &FiniteField, s: &str) -> Result<Fq> {
    let p = FiniteField::new(f.characteristic(), 1)?;
    let poly = Poly::parse(&p, s)?;
    if poly.coeffs().len() > f.degree() {
        return Err(Error::Parse(format!(
            "element {s:?} has too high degree for {f}"
        )));
    }
    let cs: Vec<u32> = poly.coeffs().iter().map(|c| c.index()).collect();
    if f.degree() == 1 && !cs.is_empty() && s.chars().any(|c| c.is_ascii_alphabetic()) {
        return Err(Error::Parse(format!(
            "element {s:?} is not in the prime field"
        )));
    }
    Ok(f.from_coeffs(&cs))
}

impl CurveModel {
    pub fn projective_line(field: FiniteField) -> Self {
        CurveModel {
            field,
            kind: CurveKind::ProjectiveLine,
        }
    }

    pub fn weierstrass(field: FiniteField, a: [Fq; 5]) -> Result<Self> {
        if discriminant(&field, &a).is_zero() {
            return Err(Error::InvalidInput(
                "singular Weierstrass equation (discriminant 0)".into(),
            ));
        }
        Ok(CurveModel {
            field,
            kind: CurveKind::Weierstrass(a),
        })
    }

    pub fn double_cover(field: FiniteField, h: Poly) -> Result<Self> {
        match h.deg() {
            Some(1..=4) => {}
            Some(d) if d > 4 => {
                return Err(Error::Unsupported(format!(
                    "double cover of degree {d} has genus above 1"
                )))
            }
            _ => return Err(Error::InvalidInput("double cover needs deg h >= 1".into())),
        }
        if !h.is_squarefree(&field) {
            return Err(Error::InvalidInput(
                "double cover y^2 = h(s) with repeated root is singular".into(),
            ));
        }
        Ok(CurveModel {
            field,
            kind: CurveKind::DoubleCover(h),
        })
    }

    /// `P1 q=<p>^<k>`, `elliptic q=<p>^<k> a=[a1,a2,a3,a4,a6]`, or
    /// `double q=<p>^<k> h=<polynomial>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut words = spec.split_whitespace();
        let head = words
            .next()
            .ok_or_else(|| Error::Parse("empty curve spec".into()))?;
        let mut q = None;
        let mut a = None;
        let mut h = None;
        let rest: Vec<&str> = words.collect();
        let joined = rest.join(" ");
        for part in split_keyvals(&joined) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            match k {
                "q" => q = Some(v.to_string()),
                "a" => a = Some(v.to_string()),
                "h" => h = Some(v.to_string()),
                _ => return Err(Error::Parse(format!("unknown curve key {k:?}"))),
            }
        }
        let q = q.ok_or_else(|| Error::Parse("curve spec needs q=".into()))?;
        let (p, k) = match q.split_once('^') {
            Some((p, k)) => (p.parse::<u32>(), k.parse::<usize>()),
            None => (q.parse::<u32>(), Ok(1)),
        };
        let (p, k) = (
            p.map_err(|_| Error::Parse(format!("bad q {q:?}")))?,
            k.map_err(|_| Error::Parse(format!("bad q {q:?}")))?,
        );
        if k == 1 && !crate::ff::is_prime(p as u64) {
            return Err(Error::Parse(format!("q={p} must be written as <p>^<k>")));
        }
        let field = FiniteField::new(p, k)?;
        match head {
            "P1" => Ok(Self::projective_line(field)),
            "elliptic" => {
                let a = a.ok_or_else(|| Error::Parse("elliptic spec needs a=[...]".into()))?;
                let body = a
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("bad coefficient list {a:?}")))?;
                let vals: Vec<Fq> = body
                    .split(',')
                    .map(|s| parse_elem(&field, s.trim()))
                    .collect::<Result<_>>()?;
                let arr: [Fq; 5] = vals
                    .try_into()
                    .map_err(|_| Error::Parse("elliptic spec needs five coefficients".into()))?;
                Self::weierstrass(field, arr)
            }
            "double" => {
                let h = h.ok_or_else(|| Error::Parse("double spec needs h=".into()))?;
                let poly = Poly::parse(&field, &h)?;
                Self::double_cover(field, poly)
            }
            other => Err(Error::Parse(format!("unknown curve type {other:?}"))),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn q(&self) -> u64 {
        self.field.size() as u64
    }

    pub fn genus(&self) -> usize {
        match &self.kind {
            CurveKind::ProjectiveLine => 0,
            CurveKind::Weierstrass(_) => 1,
            CurveKind::DoubleCover(h) => (h.deg().unwrap() - 1) / 2,
        }
    }

    pub fn is_projective_line(&self) -> bool {
        self.kind == CurveKind::ProjectiveLine
    }

    /// `y'^2 = h(x)` with `y' = y + (a1 x + a3)/2`, for Weierstrass curves.
    pub fn weierstrass_h(&self) -> Option<Poly> {
        let CurveKind::Weierstrass(a) = &self.kind else {
            return None;
        };
        let f = &self.field;
        let [b2, b4, b6, _] = weierstrass_b(f, a);
        let inv = |k: i64| f.inv(f.from_int(k)).unwrap();
        Some(Poly::from_coeffs(vec![
            f.mul(b6, inv(4)),
            f.mul(b4, inv(2)),
            f.mul(b2, inv(4)),
            Fq::ONE,
        ]))
    }

    /// The same equation over `F_{q^m}`.
    pub fn base_change(&self, m: usize) -> Result<CurveModel> {
        let (big, e) = extension(&self.field, m)?;
        Ok(CurveModel {
            field: big,
            kind: self.kind.map(&e),
        })
    }

    /// The curve over `F_{q^d}` for point enumeration.
    pub fn over(&self, d: usize) -> Result<ExtCurve> {
        let (f, emb) = extension(&self.field, d)?;
        Ok(ExtCurve {
            kind: self.kind.map(&emb),
            f,
            emb,
            d,
            q: self.q(),
        })
    }

    fn check_bound(&self, d: usize, bound: u64) -> Result<()> {
        let size = self.q().checked_pow(d as u32).unwrap_or(u64::MAX);
        if size > bound {
            return Err(Error::BoundExceeded(format!(
                "enumeration over F_{{{}^{d}}} exceeds bound {bound}",
                self.q()
            )));
        }
        Ok(())
    }

    pub fn count_points(&self, d: usize) -> Result<u64> {
        self.count_points_bounded(d, DEFAULT_ENUM_BOUND)
    }

    pub fn count_points_bounded(&self, d: usize, bound: u64) -> Result<u64> {
        self.check_bound(d, bound)?;
        Ok(self.over(d)?.count())
    }

    pub fn points(&self) -> Result<Vec<Point>> {
        Ok(self.over(1)?.points())
    }

    pub fn closed_points(&self, max_degree: usize) -> Result<Vec<ClosedPoint>> {
        self.closed_points_bounded(max_degree, DEFAULT_ENUM_BOUND)
    }

    pub fn closed_points_bounded(&self, max_degree: usize, bound: u64) -> Result<Vec<ClosedPoint>> {
        let mut out = Vec::new();
        for d in 1..=max_degree {
            out.extend(self.places_of_degree(d, bound)?);
        }
        Ok(out)
    }

    pub fn places_of_degree(&self, d: usize, bound: u64) -> Result<Vec<ClosedPoint>> {
        self.check_bound(d, bound)?;
        let ec = self.over(d)?;
        let mut out = Vec::new();
        for p in ec.points() {
            let orbit = ec.orbit(p);
            if orbit.len() == d && orbit.iter().all(|&o| p <= o) {
                out.push(ClosedPoint { degree: d, rep: p });
            }
        }
        Ok(out)
    }

    /// Canonical rational base point: the first rational point at infinity
    /// if there is one, else the smallest affine rational point.
    pub fn base_point(&self) -> Result<Option<Point>> {
        let pts = self.points()?;
        Ok(pts
            .iter()
            .find(|p| p.is_infinity())
            .or(pts.first())
            .copied())
    }

    pub fn l_polynomial(&self) -> Result<LPolynomial> {
        let q = self.q() as i64;
        let n1 = self.count_points(1)? as i64;
        match self.genus() {
            0 => {
                if n1 != q + 1 {
                    return Err(Error::Internal(format!(
                        "genus 0 model with {n1} points over F_{q}"
                    )));
                }
                Ok(LPolynomial { q, coeffs: vec![1] })
            }
            1 => {
                let l = LPolynomial {
                    q,
                    coeffs: vec![1, n1 - q - 1, q],
                };
                let a = n1 - q - 1;
                if a * a > 4 * q {
                    return Err(Error::Internal(
                        "point count violates the Hasse bound".into(),
                    ));
                }
                if let Ok(n2) = self.count_points(2) {
                    if l.predicted_count(2) != n2 as i64 {
                        return Err(Error::Internal(
                            "inconsistent point counts for a genus 1 model".into(),
                        ));
                    }
                }
                Ok(l)
            }
            g => Err(Error::Unsupported(format!("genus {g}"))),
        }
    }

    pub fn elliptic_add(&self, p: Point, q: Point) -> Result<Point> {
        self.over(1)?.add(p, q)
    }

    pub fn elliptic_structure(&self) -> Result<EllipticStructure> {
        EllipticStructure::compute(self)
    }

    pub fn describe(&self) -> String {
        let f = &self.field;
        let qs = if f.degree() == 1 {
            format!("{}", f.size())
        } else {
            format!("{}^{}", f.characteristic(), f.degree())
        };
        match &self.kind {
            CurveKind::ProjectiveLine => format!("P1 q={qs}"),
            CurveKind::Weierstrass(a) => {
                let cs: Vec<String> = a.iter().map(|&c| f.format(c)).collect();
                format!("elliptic q={qs} a=[{}]", cs.join(","))
            }
            CurveKind::DoubleCover(h) => format!("double q={qs} h={}", h.format(f, "s")),
        }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Splits `k=v k=[a, b]` at top-level whitespace, keeping bracketed lists.
fn split_keyvals(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// A curve together with its coefficients carried into `F_{q^d}`.
#[derive(Clone, Debug)]
pub struct ExtCurve {
    pub f: FiniteField,
    pub kind: CurveKind,
    pub emb: Embedding,
    pub d: usize,
    /// size of the base field
    pub q: u64,
}

impl ExtCurve {
    pub fn contains(&self, p: Point) -> bool {
        let f = &self.f;
        match (&self.kind, p) {
            (CurveKind::ProjectiveLine, Point::Affine(_, y)) => y.is_zero(),
            (CurveKind::ProjectiveLine, Point::Infinity(c)) => c.is_zero(),
            (CurveKind::Weierstrass(_), Point::Infinity(c)) => c.is_zero(),
            (CurveKind::Weierstrass(a), Point::Affine(x, y)) => {
                let [a1, a2, a3, a4, a6] = *a;
                let lhs = f.add(f.mul(y, y), f.mul(y, f.add(f.mul(a1, x), a3)));
                let rhs = eval_cubic(f, x, a2, a4, a6);
                lhs == rhs
            }
            (CurveKind::DoubleCover(h), Point::Affine(s, y)) => f.mul(y, y) == h.eval(f, s),
            (CurveKind::DoubleCover(h), Point::Infinity(c)) => {
                if h.deg().unwrap() % 2 == 1 {
                    c.is_zero()
                } else {
                    f.mul(c, c) == h.lead()
                }
            }
        }
    }

    pub fn points(&self) -> Vec<Point> {
        let f = &self.f;
        let mut out = Vec::new();
        match &self.kind {
            CurveKind::ProjectiveLine => {
                out.extend(f.elements().map(|x| Point::Affine(x, Fq::ZERO)));
                out.push(Point::O);
            }
            CurveKind::Weierstrass(a) => {
                let [a1, a2, a3, a4, a6] = *a;
                let half = f.inv(f.from_int(2)).unwrap();
                for x in f.elements() {
                    let b = f.add(f.mul(a1, x), a3);
                    let c = eval_cubic(f, x, a2, a4, a6);
                    let disc = f.add(f.mul(b, b), f.mul(f.from_int(4), c));
                    if let Some(r) = f.sqrt(disc) {
                        let y1 = f.mul(f.sub(r, b), half);
                        let y2 = f.mul(f.sub(f.neg(r), b), half);
                        out.push(Point::Affine(x, y1.min(y2)));
                        if y1 != y2 {
                            out.push(Point::Affine(x, y1.max(y2)));
                        }
                    }
                }
                out.push(Point::O);
            }
            CurveKind::DoubleCover(h) => {
                for s in f.elements() {
                    if let Some(r) = f.sqrt(h.eval(f, s)) {
                        out.push(Point::Affine(s, r));
                        if !r.is_zero() {
                            out.push(Point::Affine(s, f.neg(r)));
                        }
                    }
                }
                out.extend(self.infinity_points());
            }
        }
        out.sort();
        out
    }

    /// Points at infinity rational over this field.
    pub fn infinity_points(&self) -> Vec<Point> {
        match &self.kind {
            CurveKind::DoubleCover(h) if h.deg().unwrap() % 2 == 0 => match self.f.sqrt(h.lead()) {
                Some(r) => {
                    let s = self.f.neg(r);
                    vec![Point::Infinity(r.min(s)), Point::Infinity(r.max(s))]
                }
                None => vec![],
            },
            _ => vec![Point::O],
        }
    }

    pub fn count(&self) -> u64 {
        let f = &self.f;
        let chi = |a: Fq| -> i64 {
            if a.is_zero() {
                0
            } else if f.is_square(a) {
                1
            } else {
                -1
            }
        };
        let qd = f.size() as i64;
        let n = match &self.kind {
            CurveKind::ProjectiveLine => qd + 1,
            CurveKind::Weierstrass(a) => {
                let [a1, a2, a3, a4, a6] = *a;
                let mut n = 1;
                for x in f.elements() {
                    let b = f.add(f.mul(a1, x), a3);
                    let c = eval_cubic(f, x, a2, a4, a6);
                    n += 1 + chi(f.add(f.mul(b, b), f.mul(f.from_int(4), c)));
                }
                n
            }
            CurveKind::DoubleCover(h) => {
                let mut n = self.infinity_points().len() as i64;
                for s in f.elements() {
                    n += 1 + chi(h.eval(f, s));
                }
                n
            }
        };
        n as u64
    }

    /// Relative Frobenius `a -> a^q` over the base field.
    pub fn frobenius(&self, p: Point) -> Point {
        let f = &self.f;
        match p {
            Point::Affine(x, y) => Point::Affine(f.pow(x, self.q), f.pow(y, self.q)),
            Point::Infinity(c) => Point::Infinity(f.pow(c, self.q)),
        }
    }

    pub fn orbit(&self, p: Point) -> Vec<Point> {
        let mut out = vec![p];
        let mut cur = self.frobenius(p);
        while cur != p {
            out.push(cur);
            cur = self.frobenius(cur);
        }
        out
    }

    fn weierstrass(&self) -> Result<[Fq; 5]> {
        match &self.kind {
            CurveKind::Weierstrass(a) => Ok(*a),
            _ => Err(Error::InvalidInput(
                "group law needs a Weierstrass model".into(),
            )),
        }
    }

    pub fn neg(&self, p: Point) -> Result<Point> {
        let [a1, _, a3, _, _] = self.weierstrass()?;
        let f = &self.f;
        Ok(match p {
            Point::Infinity(_) => Point::O,
            Point::Affine(x, y) => Point::Affine(x, f.sub(f.neg(y), f.add(f.mul(a1, x), a3))),
        })
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: Point, q: Point) -> Result<Point> {
        let [a1, a2, a3, a4, a6] = self.weierstrass()?;
        for pt in [p, q] {
            if !self.contains(pt) {
                return Err(Error::InvalidInput(format!(
                    "point {} not on curve",
                    pt.format(&self.f)
                )));
            }
        }
        let f = &self.f;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity(_), _) => return Ok(q),
            (_, Point::Infinity(_)) => return Ok(p),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        if x1 == x2 && f.add(f.add(y1, y2), f.add(f.mul(a1, x2), a3)).is_zero() {
            return Ok(Point::O);
        }
        let (lambda, nu) = if x1 == x2 {
            let den = f.add(f.add(f.mul(f.from_int(2), y1), f.mul(a1, x1)), a3);
            let x1sq = f.mul(x1, x1);
            let num = f.sub(
                f.add(
                    f.add(
                        f.mul(f.from_int(3), x1sq),
                        f.mul(f.mul(f.from_int(2), a2), x1),
                    ),
                    a4,
                ),
                f.mul(a1, y1),
            );
            let num2 = f.sub(
                f.add(
                    f.add(f.neg(f.mul(x1sq, x1)), f.mul(a4, x1)),
                    f.mul(f.from_int(2), a6),
                ),
                f.mul(a3, y1),
            );
            (f.div(num, den).unwrap(), f.div(num2, den).unwrap())
        } else {
            let den = f.sub(x2, x1);
            (
                f.div(f.sub(y2, y1), den).unwrap(),
                f.div(f.sub(f.mul(y1, x2), f.mul(y2, x1)), den).unwrap(),
            )
        };
        let x3 = f.sub(
            f.sub(
                f.sub(f.add(f.mul(lambda, lambda), f.mul(a1, lambda)), a2),
                x1,
            ),
            x2,
        );
        let y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, a1), x3)), nu), a3);
        Ok(Point::Affine(x3, y3))
    }

    pub fn mul(&self, p: Point, k: i64) -> Result<Point> {
        let mut base = if k < 0 { self.neg(p)? } else { p };
        let mut e = k.unsigned_abs();
        let mut acc = Point::O;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(acc, base)?;
            }
            base = self.add(base, base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn order(&self, p: Point) -> Result<u64> {
        let mut n = 1;
        let mut cur = p;
        while cur != Point::O {
            cur = self.add(cur, p)?;
            n += 1;
        }
        Ok(n)
    }
}

fn eval_cubic(f: &FiniteField, x: Fq, a2: Fq, a4: Fq, a6: Fq) -> Fq {
    let x2 = f.mul(x, x);
    f.add(f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.mul(a4, x)), a6)
}

/// A place: a Frobenius orbit of size `degree`, represented by its smallest
/// point with coordinates in the canonical field `F_{q^degree}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClosedPoint {
    pub degree: usize,
    pub rep: Point,
}

impl ClosedPoint {
    pub fn rational(p: Point) -> Self {
        ClosedPoint { degree: 1, rep: p }
    }

    pub fn orbit(&self, c: &CurveModel) -> Result<(ExtCurve, Vec<Point>)> {
        let ec = c.over(self.degree)?;
        let o = ec.orbit(self.rep);
        Ok((ec, o))
    }

    pub fn is_infinity(&self) -> bool {
        self.rep.is_infinity()
    }

    /// The monic irreducible polynomial of an affine place of the projective
    /// line (or of the `x`/`s` coordinate of any affine place).
    pub fn x_polynomial(&self, c: &CurveModel) -> Result<Option<Poly>> {
        let Point::Affine(x, _) = self.rep else {
            return Ok(None);
        };
        let ec = c.over(self.degree)?;
        let f = &ec.f;
        let mut prod = Poly::one();
        let mut cur = x;
        let mut roots = Vec::new();
        loop {
            roots.push(cur);
            prod = prod.mul(f, &Poly::linear(f, cur));
            cur = f.pow(cur, ec.q);
            if cur == x {
                break;
            }
        }
        let coeffs: Option<Vec<Fq>> = prod.coeffs().iter().map(|&a| ec.emb.preimage(a)).collect();
        let coeffs = coeffs
            .ok_or_else(|| Error::Internal("orbit polynomial not over the base field".into()))?;
        Ok(Some(Poly::from_coeffs(coeffs)))
    }

    pub fn format(&self, c: &CurveModel) -> String {
        if c.is_projective_line() {
            if let Ok(Some(p)) = self.x_polynomial(c) {
                return format!("poly:{}", p.format(c.field(), "x"));
            }
        }
        let f = match c.over(self.degree) {
            Ok(ec) => ec.f,
            Err(_) => return format!("deg{}:?", self.degree),
        };
        if self.degree == 1 {
            self.rep.format(&f)
        } else {
            format!("deg{}:{}", self.degree, self.rep.format(&f))
        }
    }

    /// `inf`, `(x0,y0)`, `(X:Y:Z)`, `(x0)` or `(X:Z)` on the line, or
    /// `poly:<monic irreducible>` for a place of the projective line.
    pub fn parse(c: &CurveModel, s: &str) -> Result<ClosedPoint> {
        let s = s.trim();
        let f = c.field();
        if s == "inf" {
            return match c.kind() {
                CurveKind::DoubleCover(h) if h.deg().unwrap() % 2 == 0 => {
                    let inf: Vec<ClosedPoint> = c
                        .closed_points(2)?
                        .into_iter()
                        .filter(|p| p.is_infinity())
                        .collect();
                    match inf.as_slice() {
                        [one] => Ok(*one),
                        _ => Err(Error::Parse(
                            "curve has two points at infinity; write inf[c]".into(),
                        )),
                    }
                }
                _ => Ok(ClosedPoint::rational(Point::O)),
            };
        }
        if let Some(body) = s.strip_prefix("inf[").and_then(|b| b.strip_suffix(']')) {
            let p = Point::Infinity(parse_elem(f, body)?);
            if !c.over(1)?.contains(p) {
                return Err(Error::InvalidInput(format!(
                    "{s} is not a point of the curve"
                )));
            }
            return Ok(ClosedPoint::rational(p));
        }
        if let Some(body) = s.strip_prefix("poly:") {
            if !c.is_projective_line() {
                return Err(Error::Unsupported(
                    "poly: places are only supported on P1".into(),
                ));
            }
            let poly = Poly::parse(f, body)?;
            if !poly.is_monic() || !poly.is_irreducible(f) {
                return Err(Error::InvalidInput(format!(
                    "{body} is not monic irreducible"
                )));
            }
            let d = poly.deg().unwrap();
            let ec = c.over(d)?;
            let mapped = poly.map(|a| ec.emb.apply(a));
            let root = *mapped.roots(&ec.f).iter().min().unwrap();
            return Ok(ClosedPoint {
                degree: d,
                rep: Point::Affine(root, Fq::ZERO),
            });
        }
        let body = s
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("cannot parse place {s:?}")))?;
        let ec = c.over(1)?;
        let p = if body.contains(':') {
            let parts: Vec<Fq> = body
                .split(':')
                .map(|t| parse_elem(f, t.trim()))
                .collect::<Result<_>>()?;
            match (c.kind(), parts.as_slice()) {
                (CurveKind::ProjectiveLine, [x, z]) => match f.inv(*z) {
                    None if !x.is_zero() => Point::O,
                    None => return Err(Error::InvalidInput("(0:0) is not a point".into())),
                    Some(zi) => Point::Affine(f.mul(*x, zi), Fq::ZERO),
                },
                (CurveKind::Weierstrass(_), [x, y, z]) => match f.inv(*z) {
                    None if !y.is_zero() && x.is_zero() => Point::O,
                    None => return Err(Error::InvalidInput(format!("{s} is not on the curve"))),
                    Some(zi) => Point::Affine(f.mul(*x, zi), f.mul(*y, zi)),
                },
                _ => {
                    return Err(Error::Parse(format!(
                        "projective coordinates {s:?} do not fit this curve"
                    )))
                }
            }
        } else {
            let parts: Vec<Fq> = body
                .split(',')
                .map(|t| parse_elem(f, t.trim()))
                .collect::<Result<_>>()?;
            match (c.kind(), parts.as_slice()) {
                (CurveKind::ProjectiveLine, [x]) => Point::Affine(*x, Fq::ZERO),
                (CurveKind::ProjectiveLine, _) => {
                    return Err(Error::Parse(format!("bad P1 point {s:?}")))
                }
                (_, [x, y]) => Point::Affine(*x, *y),
                _ => return Err(Error::Parse(format!("bad point {s:?}"))),
            }
        };
        if !ec.contains(p) {
            return Err(Error::InvalidInput(format!(
                "{s} is not a point of the curve"
            )));
        }
        Ok(ClosedPoint::rational(p))
    }
}

/// `L(T) = prod (1 - alpha_i T)`, coefficients low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub q: i64,
    pub coeffs: Vec<i64>,
}

impl LPolynomial {
    pub fn genus(&self) -> usize {
        (self.coeffs.len() - 1) / 2
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// `L(1)`, the number of degree-zero divisor classes.
    pub fn class_number(&self) -> i64 {
        self.eval(1)
    }

    /// `N_d = q^d + 1 - sum alpha_i^d` via Newton's identities.
    pub fn predicted_count(&self, d: u32) -> i64 {
        let qd = self.q.pow(d) + 1;
        match self.genus() {
            0 => qd,
            _ => {
                // alpha_1 + alpha_2 = -c1, alpha_1 alpha_2 = q
                let e1 = -self.coeffs[1];
                let e2 = self.q;
                let mut s = [2i64, e1];
                for _ in 2..=d {
                    let next = e1 * s[1] - e2 * s[0];
                    s = [s[1], next];
                }
                let sd = if d == 0 {
                    2
                } else if d == 1 {
                    e1
                } else {
                    s[1]
                };
                qd - sd
            }
        }
    }

    /// Reciprocal roots as `(re, im)`.
    pub fn reciprocal_roots(&self) -> Vec<(f64, f64)> {
        if self.genus() == 0 {
            return vec![];
        }
        let e1 = -self.coeffs[1] as f64;
        let disc = e1 * e1 - 4.0 * self.q as f64;
        if disc <= 0.0 {
            let im = (-disc).sqrt() / 2.0;
            vec![(e1 / 2.0, im), (e1 / 2.0, -im)]
        } else {
            let r = disc.sqrt() / 2.0;
            vec![(e1 / 2.0 + r, 0.0), (e1 / 2.0 - r, 0.0)]
        }
    }

    pub fn format(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match i {
                0 => c.to_string(),
                1 => format!("{c}T"),
                _ => format!("{c}T^{i}"),
            });
        }
        parts.join("+").replace("+-", "-")
    }
}

/// `E(F_q) = Z/n1 x Z/n2` with explicit generators and discrete logs.
#[derive(Clone, Debug)]
pub struct EllipticStructure {
    pub group: FinAbGroup,
    pub n1: u64,
    pub n2: u64,
    pub gens: [Point; 2],
    dlog: HashMap<Point, (i128, i128)>,
    points: Vec<Point>,
}

impl EllipticStructure {
    fn compute(c: &CurveModel) -> Result<Self> {
        let ec = c.over(1)?;
        ec.weierstrass()?;
        let pts = ec.points();
        let n = pts.len() as u64;
        let orders: Vec<u64> = pts.iter().map(|&p| ec.order(p)).collect::<Result<_>>()?;
        let n2 = *orders.iter().max().unwrap();
        let n1 = n / n2;
        let g2 = pts[orders.iter().position(|&o| o == n2).unwrap()];
        let multiples_of_g2: Vec<Point> = {
            let mut v = vec![Point::O];
            for _ in 1..n2 {
                v.push(ec.add(*v.last().unwrap(), g2)?);
            }
            v
        };
        let mut found = None;
        for (i, &p) in pts.iter().enumerate() {
            if orders[i] != n1 {
                continue;
            }
            let mut dlog = HashMap::new();
            let mut ip = Point::O;
            for a in 0..n1 {
                for (b, &m) in multiples_of_g2.iter().enumerate() {
                    dlog.insert(ec.add(ip, m)?, (a as i128, b as i128));
                }
                ip = ec.add(ip, p)?;
            }
            if dlog.len() as u64 == n {
                found = Some((p, dlog));
                break;
            }
        }
        let (g1, dlog) =
            found.ok_or_else(|| Error::Internal("no complementary generator".into()))?;
        let group = FinAbGroup::new(2, &[vec![n1 as i128, 0], vec![0, n2 as i128]]);
        Ok(EllipticStructure {
            group,
            n1,
            n2,
            gens: [g1, g2],
            dlog,
            points: pts,
        })
    }

    /// Coordinates `(a, b)` with `P = a G1 + b G2`.
    pub fn log(&self, p: Point) -> Option<(i128, i128)> {
        self.dlog.get(&p).copied()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn order(&self) -> u64 {
        self.n1 * self.n2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6_curve() -> CurveModel {
        CurveModel::parse("elliptic q=3 a=[0,0,0,1,1]").unwrap()
    }

    #[test]
    fn example_curve_points() {
        let c = e6_curve();
        let f = c.field().clone();
        let pts = c.points().unwrap();
        let expected = [
            Point::Affine(f.from_int(0), f.from_int(1)),
            Point::Affine(f.from_int(0), f.from_int(2)),
            Point::Affine(f.from_int(1), f.from_int(0)),
            Point::O,
        ];
        assert_eq!(pts, expected);
        assert_eq!(c.count_points(1).unwrap(), 4);
    }

    #[test]
    fn example_curve_structure_and_l_polynomial() {
        let c = e6_curve();
        let f = c.field().clone();
        let t = Point::Affine(f.from_int(1), f.from_int(0));
        assert_eq!(c.elliptic_add(t, t).unwrap(), Point::O);
        let s = c.elliptic_structure().unwrap();
        assert_eq!(s.group.invariants(), vec![4]);
        let g = Point::Affine(f.from_int(0), f.from_int(1));
        assert_eq!(c.elliptic_add(g, g).unwrap(), t);
        let l = c.l_polynomial().unwrap();
        assert_eq!(l.coeffs, vec![1, 0, 3]);
        assert_eq!(l.class_number(), 4);
    }

    #[test]
    fn projective_line_places() {
        let c = CurveModel::parse("P1 q=3").unwrap();
        assert_eq!(c.count_points(1).unwrap(), 4);
        assert_eq!(c.closed_points(1).unwrap().len(), 4);
        assert_eq!(c.closed_points(2).unwrap().len(), 7);
        assert_eq!(c.l_polynomial().unwrap().coeffs, vec![1]);
        let p = ClosedPoint::parse(&c, "poly:x^2+1").unwrap();
        assert_eq!(p.degree, 2);
        assert_eq!(p.format(&c), "poly:x^2+1");
        assert_eq!(
            ClosedPoint::parse(&c, "poly:t").unwrap().format(&c),
            "poly:x"
        );
    }

    #[test]
    fn singular_inputs_rejected() {
        assert!(CurveModel::parse("elliptic q=3 a=[0,0,0,0,0]").is_err());
        assert!(CurveModel::parse("double q=3 h=s^2").is_err());
        assert!(CurveModel::parse("elliptic q=2 a=[0,0,0,1,1]").is_err());
    }

    #[test]
    fn degree_two_place_count() {
        let c = e6_curve();
        let n1 = c.count_points(1).unwrap();
        let n2 = c.count_points(2).unwrap();
        let places = c.places_of_degree(2, DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(places.len() as u64, (n2 - n1) / 2);
    }

    #[test]
    fn parse_places() {
        let c = e6_curve();
        assert_eq!(ClosedPoint::parse(&c, "inf").unwrap().rep, Point::O);
        assert_eq!(ClosedPoint::parse(&c, "(0:1:0)").unwrap().rep, Point::O);
        let f = c.field().clone();
        assert_eq!(
            ClosedPoint::parse(&c, "(1:0:1)").unwrap().rep,
            Point::Affine(f.one(), f.zero())
        );
        assert!(ClosedPoint::parse(&c, "(1,1)").is_err());
    }
}
