//! Hasse domains `O_S`: Picard groups, S-units and local data of functions.
//!
//! `Pic(C)` of a complete curve is presented on a degree generator (the
//! class of a rational base point) followed by generators of `Pic^0`:
//!
//! * genus 0: `Z`, generated by a rational point;
//! * Weierstrass curves: `[deg, G1, G2]` with `E(F_q) = <G1> x <G2>`;
//! * genus 1 double covers: `[deg, e_P]` for every rational point `P`, with
//!   relations `e_P + e_Q = e_{P+Q}` found by Riemann-Roch.
//!
//! `Pic(O_S)` is the quotient by the classes of the places in `S`, and the
//! S-units are the kernel of `Z^S -> Pic(C)`.

use std::collections::BTreeMap;

use crate::abgrp::{AbHom, FinAbGroup};
use crate::curve::{ClosedPoint, CurveKind, CurveModel, EllipticStructure, ExtCurve, Point};
use crate::error::{Error, Result};
use crate::ff::{Embedding, FiniteField, Fq};
use crate::poly::Poly;
use crate::rr::{is_principal, l_basis, CoverFunction};

/// A place-weighted divisor.
pub type Divisor = Vec<(ClosedPoint, i64)>;

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Splits a comma separated list of places, ignoring commas inside brackets.
pub fn split_places(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Checks that `p` is the canonical representative of a place of `c`.
pub fn validate_place(c: &CurveModel, p: &ClosedPoint) -> Result<()> {
    if p.degree == 0 {
        return Err(Error::InvalidInput("place of degree 0".into()));
    }
    let ec = c.over(p.degree)?;
    if !ec.contains(p.rep) {
        return Err(Error::InvalidInput(format!(
            "{} is not on the curve",
            p.format(c)
        )));
    }
    let orbit = ec.orbit(p.rep);
    if orbit.len() != p.degree || orbit.iter().any(|&o| o < p.rep) {
        return Err(Error::InvalidInput(format!(
            "{} is not a canonical place representative",
            p.format(c)
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct HasseDomain {
    curve: CurveModel,
    places: Vec<ClosedPoint>,
}

impl HasseDomain {
    pub fn new(curve: CurveModel, places: Vec<ClosedPoint>) -> Result<Self> {
        if places.is_empty() {
            return Err(Error::InvalidInput("S must be nonempty".into()));
        }
        for (i, p) in places.iter().enumerate() {
            validate_place(&curve, p)?;
            if places[..i].contains(p) {
                return Err(Error::InvalidInput(format!(
                    "place {} listed twice in S",
                    p.format(&curve)
                )));
            }
        }
        Ok(HasseDomain { curve, places })
    }

    pub fn parse(curve: CurveModel, s: &str) -> Result<Self> {
        let places = split_places(s)
            .iter()
            .map(|t| ClosedPoint::parse(&curve, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(curve, places)
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn places(&self) -> &[ClosedPoint] {
        &self.places
    }

    pub fn format_places(&self) -> String {
        let v: Vec<String> = self.places.iter().map(|p| p.format(&self.curve)).collect();
        format!("{{{}}}", v.join(", "))
    }
}

/// A rational function on a curve. `Rational` lives on the projective line;
/// `Cover` is written on the double-cover model `y'^2 = h(s)` of the curve.
#[derive(Clone, Debug, PartialEq)]
pub enum Function {
    Rational { num: Poly, den: Poly },
    Cover(CoverFunction),
}

impl Function {
    pub fn constant(a: Fq) -> Function {
        Function::Rational {
            num: Poly::constant(a),
            den: Poly::one(),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Function::Rational { num, den } => num.is_constant() && den.is_constant(),
            Function::Cover(g) => g.a.is_constant() && g.b.is_zero() && g.c.is_constant(),
        }
    }

    /// Multiplies by a nonzero constant.
    pub fn scale(&self, f: &FiniteField, k: Fq) -> Function {
        match self {
            Function::Rational { num, den } => Function::Rational {
                num: num.scale(f, k),
                den: den.clone(),
            },
            Function::Cover(g) => Function::Cover(CoverFunction {
                a: g.a.scale(f, k),
                b: g.b.scale(f, k),
                c: g.c.clone(),
            }),
        }
    }

    /// Product on the curve `c`.
    pub fn mul(&self, c: &CurveModel, o: &Function) -> Result<Function> {
        let f = c.field();
        let lift = |g: &Function| -> Result<CoverFunction> {
            match g {
                Function::Cover(h) => Ok(h.clone()),
                Function::Rational { num, den } if den.is_constant() => Ok(CoverFunction {
                    a: num.scale(f, f.inv(den.lead()).unwrap()),
                    b: Poly::zero(),
                    c: Poly::one(),
                }),
                Function::Rational { num, den } => Ok(CoverFunction {
                    a: num.clone(),
                    b: Poly::zero(),
                    c: den.clone(),
                }),
            }
        };
        match (self, o) {
            (Function::Rational { num: n1, den: d1 }, Function::Rational { num: n2, den: d2 })
                if c.is_projective_line() =>
            {
                let num = n1.mul(f, n2);
                let den = d1.mul(f, d2);
                let g = num.gcd(f, &den);
                let num = num.div_exact(f, &g).unwrap();
                let den = den.div_exact(f, &g).unwrap();
                let l = f.inv(den.lead()).unwrap();
                Ok(Function::Rational {
                    num: num.scale(f, l),
                    den: den.scale(f, l),
                })
            }
            _ => {
                let model = cover_model(c)
                    .ok_or_else(|| Error::Internal("no double-cover model".into()))?;
                let CurveKind::DoubleCover(h) = model.kind() else {
                    unreachable!()
                };
                let (x, y) = (lift(self)?, lift(o)?);
                let a = x.a.mul(f, &y.a).add(f, &x.b.mul(f, &y.b).mul(f, h));
                let b = x.a.mul(f, &y.b).add(f, &x.b.mul(f, &y.a));
                Ok(Function::Cover(CoverFunction {
                    a,
                    b,
                    c: x.c.mul(f, &y.c),
                }))
            }
        }
    }

    pub fn format(&self, f: &FiniteField) -> String {
        match self {
            Function::Rational { num, den } if den.is_constant() && den.lead() == Fq::ONE => {
                num.format(f, "x")
            }
            Function::Rational { num, den } => {
                format!("({})/({})", num.format(f, "x"), den.format(f, "x"))
            }
            Function::Cover(g) => g.format(f, "x", "y"),
        }
    }
}

/// The double-cover model of a genus-1 curve or of a double cover itself.
pub fn cover_model(c: &CurveModel) -> Option<CurveModel> {
    match c.kind() {
        CurveKind::ProjectiveLine => None,
        CurveKind::Weierstrass(_) => {
            CurveModel::double_cover(c.field().clone(), c.weierstrass_h()?).ok()
        }
        CurveKind::DoubleCover(_) => Some(c.clone()),
    }
}

/// Moves a point of `ec` (a curve over some extension) to the double-cover
/// model coordinates `y' = y + (a1 x + a3)/2`.
pub fn to_model_point(ec: &ExtCurve, p: Point) -> Point {
    match (&ec.kind, p) {
        (CurveKind::Weierstrass(a), Point::Affine(x, y)) => {
            let f = &ec.f;
            let half = f.inv(f.from_int(2)).unwrap();
            Point::Affine(x, f.add(y, f.mul(half, f.add(f.mul(a[0], x), a[2]))))
        }
        _ => p,
    }
}

/// Working degree for Riemann-Roch on a double cover: the field must hold
/// the square roots of the leading coefficient of an even-degree `h`.
fn rr_degree(model: &CurveModel) -> usize {
    match model.kind() {
        CurveKind::DoubleCover(h)
            if h.deg().unwrap() % 2 == 0 && !model.field().is_square(h.lead()) =>
        {
            2
        }
        _ => 1,
    }
}

/// Points of a place embedded in `F_{q^l}`, in model coordinates.
fn place_points(c: &CurveModel, p: &ClosedPoint, l: usize) -> Result<Vec<Point>> {
    let ed = c.over(p.degree)?;
    let el = c.over(l)?;
    let e = Embedding::new(&ed.f, &el.f)?;
    let rep = p.rep.map(&e);
    Ok(el
        .orbit(rep)
        .into_iter()
        .map(|q| to_model_point(&el, q))
        .collect())
}

#[derive(Clone, Debug)]
enum PicKind {
    /// genus 0 with a rational base point
    Line {
        base: Point,
    },
    Elliptic(EllipticStructure),
    /// genus 1 double-cover model, classes found by Riemann-Roch
    Cover {
        model: CurveModel,
        work: usize,
        base: Point,
        points: Vec<Point>,
        sum: Vec<Vec<usize>>,
    },
}

/// `Pic(C)` of a complete curve with explicit classes of places.
#[derive(Clone, Debug)]
pub struct CurvePic {
    curve: CurveModel,
    group: FinAbGroup,
    kind: PicKind,
}

impl CurvePic {
    pub fn compute(c: &CurveModel) -> Result<Self> {
        match c.kind() {
            CurveKind::Weierstrass(_) => {
                let es = c.elliptic_structure()?;
                let group =
                    FinAbGroup::new(3, &[vec![0, es.n1 as i128, 0], vec![0, 0, es.n2 as i128]]);
                Ok(CurvePic {
                    curve: c.clone(),
                    group,
                    kind: PicKind::Elliptic(es),
                })
            }
            _ if c.genus() == 0 => {
                let base = c.base_point()?.ok_or_else(|| {
                    Error::Internal("genus 0 curve without rational point".into())
                })?;
                Ok(CurvePic {
                    curve: c.clone(),
                    group: FinAbGroup::free(1),
                    kind: PicKind::Line { base },
                })
            }
            CurveKind::DoubleCover(_) if c.genus() == 1 => Self::by_riemann_roch(c),
            _ => Err(Error::Unsupported(format!(
                "Picard group of a genus {} curve",
                c.genus()
            ))),
        }
    }

    /// Divisor-class oracle: `Pic` of a genus-1 curve computed only from
    /// Riemann-Roch principal tests on its double-cover model.
    pub fn by_riemann_roch(c: &CurveModel) -> Result<Self> {
        let model = cover_model(c).filter(|m| m.genus() == 1).ok_or_else(|| {
            Error::Unsupported("Riemann-Roch class oracle needs a genus 1 curve".into())
        })?;
        let work = rr_degree(&model);
        let ec = model.over(work)?;
        let base_c = c
            .base_point()?
            .ok_or_else(|| Error::Internal("no rational point".into()))?;
        let e1 = c.over(1)?;
        let lift = |p: Point| to_model_point(&e1, p).map(&ec.emb);
        let points: Vec<Point> = c.points()?.into_iter().map(lift).collect();
        let base = lift(base_c);
        let n = points.len();
        let index = |p: Point| points.iter().position(|&q| q == p).unwrap();
        let ib = index(base);
        let mut sum = vec![vec![usize::MAX; n]; n];
        let mut rows = vec![unit_row(n + 1, 1 + ib)];
        for i in 0..n {
            for j in i..n {
                let mut found = None;
                for (k, &r) in points.iter().enumerate() {
                    let div = [(points[i], 1), (points[j], 1), (r, -1), (base, -1)];
                    if is_principal(&ec, &div)? {
                        found = Some(k);
                        break;
                    }
                }
                let k = found.ok_or_else(|| {
                    Error::Internal("rational points not closed under addition".into())
                })?;
                sum[i][j] = k;
                sum[j][i] = k;
                let mut row = vec![0i128; n + 1];
                row[1 + i] += 1;
                row[1 + j] += 1;
                row[1 + k] -= 1;
                rows.push(row);
            }
        }
        let group = FinAbGroup::new(n + 1, &rows);
        let finite = FinAbGroup::new(n, &rows.iter().map(|r| r[1..].to_vec()).collect::<Vec<_>>());
        if finite.order() != Some(n as u128) {
            return Err(Error::Internal(format!(
                "Pic^0 of order {:?} from {n} points",
                finite.order()
            )));
        }
        Ok(CurvePic {
            curve: c.clone(),
            group,
            kind: PicKind::Cover {
                model,
                work,
                base,
                points,
                sum,
            },
        })
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    /// `Pic(C)`; the first coordinate is the degree.
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// `Pic^0(C)` as a finite group.
    pub fn degree_zero(&self) -> FinAbGroup {
        let rows: Vec<Vec<i128>> = self
            .group
            .relations()
            .to_rows()
            .into_iter()
            .map(|r| r[1..].to_vec())
            .collect();
        FinAbGroup::new(self.group.ngens() - 1, &rows)
    }

    pub fn class_of_place(&self, p: &ClosedPoint) -> Result<Vec<i128>> {
        let c = &self.curve;
        let d = p.degree as i128;
        match &self.kind {
            PicKind::Line { .. } => Ok(vec![d]),
            PicKind::Elliptic(es) => {
                let ec = c.over(p.degree)?;
                let mut s = Point::O;
                for q in ec.orbit(p.rep) {
                    s = ec.add(s, q)?;
                }
                let s = match s {
                    Point::Infinity(_) => Point::O,
                    Point::Affine(x, y) => {
                        let pre = |a: Fq| {
                            ec.emb
                                .preimage(a)
                                .ok_or_else(|| Error::Internal("trace not rational".into()))
                        };
                        Point::Affine(pre(x)?, pre(y)?)
                    }
                };
                let (a, b) = es
                    .log(s)
                    .ok_or_else(|| Error::Internal("point missing from group table".into()))?;
                Ok(vec![d, a, b])
            }
            PicKind::Cover {
                model,
                work,
                base,
                points,
                ..
            } => {
                let n = points.len();
                let mut v = vec![0i128; n + 1];
                v[0] = d;
                if p.degree == 1 {
                    let e1 = c.over(1)?;
                    let w = model.over(*work)?;
                    let q = to_model_point(&e1, p.rep).map(&w.emb);
                    let i = points
                        .iter()
                        .position(|&r| r == q)
                        .ok_or_else(|| Error::Internal("unknown point".into()))?;
                    v[1 + i] = 1;
                    return Ok(v);
                }
                let l = lcm(p.degree, *work);
                let ec = model.over(l)?;
                let e = Embedding::new(&model.over(*work)?.f, &ec.f)?;
                let mut div: Vec<(Point, i64)> =
                    place_points(c, p, l)?.into_iter().map(|q| (q, 1)).collect();
                div.push((base.map(&e), -(p.degree as i64)));
                for (i, r) in points.iter().enumerate() {
                    let mut dv = div.clone();
                    dv.push((r.map(&e), -1));
                    dv.push((base.map(&e), 1));
                    if is_principal(&ec, &dv)? {
                        v[1 + i] = 1;
                        return Ok(v);
                    }
                }
                Err(Error::Internal(format!(
                    "no class found for place {}",
                    p.format(c)
                )))
            }
        }
    }

    /// Class of a divisor of places.
    pub fn class_of(&self, div: &[(ClosedPoint, i64)]) -> Result<Vec<i128>> {
        let mut v = self.group.zero();
        for (p, k) in div {
            let c = self.class_of_place(p)?;
            v = self.group.add(&v, &self.group.scale(&c, *k as i128));
        }
        Ok(v)
    }

    fn base_place(&self) -> ClosedPoint {
        match &self.kind {
            PicKind::Line { base } => ClosedPoint::rational(*base),
            PicKind::Elliptic(_) => ClosedPoint::rational(Point::O),
            PicKind::Cover { .. } => {
                ClosedPoint::rational(self.curve.base_point().unwrap().unwrap())
            }
        }
    }

    /// A divisor supported on rational points in the class `v`.
    pub fn divisor_of_class(&self, v: &[i128]) -> Result<Divisor> {
        let base = self.base_place();
        let d = v[0] as i64;
        let mut out: BTreeMap<ClosedPoint, i64> = BTreeMap::new();
        let extra = match &self.kind {
            PicKind::Line { .. } => None,
            PicKind::Elliptic(es) => {
                let ec = self.curve.over(1)?;
                let g = ec.add(
                    ec.mul(es.gens[0], v[1] as i64)?,
                    ec.mul(es.gens[1], v[2] as i64)?,
                )?;
                Some(g)
            }
            PicKind::Cover {
                base: b,
                points,
                sum,
                ..
            } => {
                let ib = points.iter().position(|q| q == b).unwrap();
                let mut acc = ib;
                for (i, &k) in v[1..].iter().enumerate() {
                    let k = k.rem_euclid(points.len() as i128) as usize;
                    for _ in 0..k {
                        acc = sum[acc][i];
                    }
                }
                // acc indexes a point over the working field; recover the rational point
                let pts = self.curve.points()?;
                Some(pts[acc])
            }
        };
        *out.entry(base).or_default() += d;
        if let Some(g) = extra {
            if g != base.rep {
                *out.entry(base).or_default() -= 1;
                *out.entry(ClosedPoint::rational(g)).or_default() += 1;
            }
        }
        Ok(out.into_iter().filter(|(_, k)| *k != 0).collect())
    }

    /// A function with the given principal divisor, normalised so its
    /// leading coefficient is 1.
    pub fn principal_function(&self, div: &[(ClosedPoint, i64)]) -> Result<Function> {
        let c = &self.curve;
        let f = c.field();
        if div.iter().map(|(p, k)| p.degree as i64 * k).sum::<i64>() != 0 {
            return Err(Error::InvalidInput(
                "divisor of nonzero degree is not principal".into(),
            ));
        }
        if c.is_projective_line() {
            let mut num = Poly::one();
            let mut den = Poly::one();
            for (p, k) in div {
                if let Some(m) = p.x_polynomial(c)? {
                    let t = m.pow(f, k.unsigned_abs());
                    if *k > 0 {
                        num = num.mul(f, &t);
                    } else {
                        den = den.mul(f, &t);
                    }
                }
            }
            return Ok(Function::Rational { num, den });
        }
        let model =
            cover_model(c).ok_or_else(|| Error::Internal("no double-cover model".into()))?;
        let l = div
            .iter()
            .fold(rr_degree(&model), |acc, (p, _)| lcm(acc, p.degree));
        let ec = model.over(l)?;
        let mut d: Vec<(Point, i64)> = Vec::new();
        for (p, k) in div {
            for q in place_points(c, p, l)? {
                d.push((q, -k));
            }
        }
        let basis = l_basis(&ec, &d)?;
        let [g] = basis.as_slice() else {
            return Err(Error::InvalidInput("divisor is not principal".into()));
        };
        let ef = &ec.f;
        let lead = if !g.a.is_zero() {
            g.a.lead()
        } else {
            g.b.lead()
        };
        let li = ef.inv(lead).unwrap();
        let g = CoverFunction {
            a: g.a.scale(ef, li),
            b: g.b.scale(ef, li),
            c: g.c.clone(),
        };
        let descend = |p: &Poly| -> Result<Poly> {
            let cs: Option<Vec<Fq>> = p.coeffs().iter().map(|&a| ec.emb.preimage(a)).collect();
            cs.map(Poly::from_coeffs).ok_or_else(|| {
                Error::Internal("principal function not defined over the base field".into())
            })
        };
        let down = CoverFunction {
            a: descend(&g.a)?,
            b: descend(&g.b)?,
            c: descend(&g.c)?,
        };
        Ok(Function::Cover(down))
    }

    /// Valuation and leading coefficient (in `F_{q^deg}`) of `g` at a place,
    /// with respect to a uniformizer defined over the residue field.
    pub fn local_term(&self, g: &Function, p: &ClosedPoint) -> Result<(i64, Fq, FiniteField)> {
        local_term(&self.curve, g, p)
    }
}

fn unit_row(n: usize, i: usize) -> Vec<i128> {
    let mut r = vec![0; n];
    r[i] = 1;
    r
}

/// Valuation and leading coefficient of `g` at the place `p` of `c`.
pub fn local_term(c: &CurveModel, g: &Function, p: &ClosedPoint) -> Result<(i64, Fq, FiniteField)> {
    match g {
        Function::Rational { num, den } => {
            let ec = c.over(p.degree)?;
            let f = &ec.f;
            let base = c.field();
            match p.rep {
                Point::Infinity(_) => {
                    let v = den.degi() - num.degi();
                    let lead = f
                        .div(ec.emb.apply(num.lead()), ec.emb.apply(den.lead()))
                        .unwrap();
                    Ok((v, lead, f.clone()))
                }
                Point::Affine(x, _) => {
                    let m = p.x_polynomial(c)?.unwrap();
                    let (vn, un) = strip(base, num, &m);
                    let (vd, ud) = strip(base, den, &m);
                    let e = |q: &Poly| q.map(|a| ec.emb.apply(a)).eval(f, x);
                    let lead = f.div(e(&un), e(&ud)).unwrap();
                    Ok((vn - vd, lead, f.clone()))
                }
            }
        }
        Function::Cover(h) => {
            let model =
                cover_model(c).ok_or_else(|| Error::Internal("no double-cover model".into()))?;
            let ec = c.over(p.degree)?;
            let mc = model.over(p.degree)?;
            let q = to_model_point(&ec, p.rep);
            let hh = h.map(|a| mc.emb.apply(a));
            let (v, lead) = hh.leading_term(&mc, q)?;
            Ok((v, lead, mc.f.clone()))
        }
    }
}

fn strip(f: &FiniteField, g: &Poly, m: &Poly) -> (i64, Poly) {
    let mut g = g.clone();
    let mut v = 0;
    loop {
        let (q, r) = g.divrem(f, m);
        if !r.is_zero() {
            return (v, g);
        }
        g = q;
        v += 1;
    }
}

/// `Pic(O_S) = Pic(C) / <S>`.
#[derive(Clone, Debug)]
pub struct PicOS {
    pub pic: CurvePic,
    pub s_classes: Vec<Vec<i128>>,
    pub group: FinAbGroup,
}

impl PicOS {
    /// `Z^S -> Pic(C)`.
    pub fn s_map(&self) -> Result<AbHom> {
        AbHom::from_images(
            FinAbGroup::free(self.s_classes.len()),
            self.pic.group.clone(),
            &self.s_classes,
        )
    }
}

pub fn pic_group(dom: &HasseDomain) -> Result<PicOS> {
    pic_of(dom.curve(), dom.places())
}

/// `Pic(O)` for the ring of functions regular away from `removed`.
pub fn pic_of(c: &CurveModel, removed: &[ClosedPoint]) -> Result<PicOS> {
    let pic = CurvePic::compute(c)?;
    pic_of_with(pic, removed)
}

pub fn pic_of_with(pic: CurvePic, removed: &[ClosedPoint]) -> Result<PicOS> {
    let s_classes: Vec<Vec<i128>> = removed
        .iter()
        .map(|p| pic.class_of_place(p))
        .collect::<Result<_>>()?;
    let group = pic.group.quotient_by(&s_classes);
    Ok(PicOS {
        pic,
        s_classes,
        group,
    })
}

/// Divisor-class oracle for a genus-1 curve: `Pic` of the complement of
/// `removed`, computed purely from Riemann-Roch.
pub fn divisor_class_oracle(c: &CurveModel, removed: &[ClosedPoint]) -> Result<FinAbGroup> {
    Ok(pic_of_with(CurvePic::by_riemann_roch(c)?, removed)?.group)
}

#[derive(Clone, Debug)]
pub struct SUnit {
    /// exponents of the places of `S` in the divisor
    pub divisor: Vec<i128>,
    pub function: Function,
}

/// `O_S^x = F_q^x x Z^rank`.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub torsion_order: u64,
    pub rank: usize,
    pub generators: Vec<SUnit>,
}

pub fn unit_group(dom: &HasseDomain) -> Result<UnitGroup> {
    let pos = pic_group(dom)?;
    unit_group_with(dom, &pos)
}

pub fn unit_group_with(dom: &HasseDomain, pos: &PicOS) -> Result<UnitGroup> {
    let ker = pos.s_map()?.kernel();
    let mut generators = Vec::new();
    for v in &ker.gens {
        let div: Divisor = dom
            .places()
            .iter()
            .zip(v)
            .map(|(p, &k)| (*p, k as i64))
            .collect();
        let function = pos.pic.principal_function(&div)?;
        generators.push(SUnit {
            divisor: v.clone(),
            function,
        });
    }
    Ok(UnitGroup {
        torsion_order: dom.curve().q() - 1,
        rank: ker.group.rank(),
        generators,
    })
}
