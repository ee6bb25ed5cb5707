//! Etale extensions of a Hasse domain.
//!
//! Quadratic extensions are classified by `O_S^x/(O_S^x)^2 x 2Pic(O_S)`. A
//! class `(u, D)` is realized by `alpha = u * alpha_D` where
//! `div(alpha_D) = 2D - (places of S)`, and the extension is `O_S[sqrt(alpha)]`
//! (normalized). Fibers are read off from the valuation and the leading
//! coefficient of `alpha` at each place; explicit cover curves are built
//! when the normalization is a curve of genus at most 1.

use std::fmt;

use crate::abgrp::{AbHom, FinAbGroup};
use crate::curve::{ClosedPoint, CurveKind, CurveModel, ExtCurve, Point};
use crate::error::{Error, Result};
use crate::ff::{Embedding, Fq};
use crate::hasse::{
    gcd, local_term, pic_group, to_model_point, unit_group_with, CurvePic, Function, HasseDomain,
    PicOS,
};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberKind {
    Split,
    Inert,
    /// Only at places of `S`, which are removed.
    Ramified,
    /// Cubic fibers with more than one place but not totally split.
    Partial,
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberKind::Split => "split",
            FiberKind::Inert => "inert",
            FiberKind::Ramified => "ramified",
            FiberKind::Partial => "partial",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberType {
    pub place: ClosedPoint,
    pub kind: FiberKind,
    /// Local degrees `e * f` of the places above, summing to the degree.
    pub local_degrees: Vec<usize>,
}

impl FiberType {
    fn quadratic(place: ClosedPoint, kind: FiberKind) -> Self {
        let local_degrees = if kind == FiberKind::Split {
            vec![1, 1]
        } else {
            vec![2]
        };
        FiberType {
            place,
            kind,
            local_degrees,
        }
    }

    fn from_local_degrees(place: ClosedPoint, local_degrees: Vec<usize>) -> Self {
        let n: usize = local_degrees.iter().sum();
        let kind = if local_degrees.len() == n {
            FiberKind::Split
        } else if local_degrees.len() == 1 {
            FiberKind::Inert
        } else {
            FiberKind::Partial
        };
        FiberType {
            place,
            kind,
            local_degrees,
        }
    }
}

/// Local splitting data of a cubic extension supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserCubic {
    /// Local degrees above each place of `S`, in order.
    pub splitting: Vec<Vec<usize>>,
    /// Invariant factors of `ker(Pic(R)/2 -> Pic(O_S)/2)`, if known.
    pub pic_kernel: Option<Vec<i128>>,
}

impl UserCubic {
    /// `splitting=[1+2,3] places_above_S=[2,1] pic_kernel=[2]`, fields separated
    /// by spaces or commas; the last two fields are optional and
    /// `places_above_S` is checked against `splitting`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut splitting = None;
        let mut above: Option<Vec<usize>> = None;
        let mut pic_kernel = None;
        let s = s.trim();
        let s = s.strip_prefix("cubic cover:").unwrap_or(s);
        for tok in split_fields(s) {
            let tok = tok.as_str();
            let (k, v) = tok.split_once('=').ok_or_else(|| {
                Error::Parse(format!("expected key=value in cubic data, got {tok:?}"))
            })?;
            let body = v
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected [..] after {k}=")))?;
            let items: Vec<&str> = body
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .collect();
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad number {t:?} in cubic data")))
            };
            match k {
                "splitting" => {
                    let v: Vec<Vec<usize>> = items
                        .iter()
                        .map(|t| {
                            t.split('+')
                                .map(|u| num(u.trim()))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<_>>()?;
                    splitting = Some(v);
                }
                "places_above_S" => {
                    above = Some(items.iter().map(|t| num(t)).collect::<Result<_>>()?)
                }
                "pic_kernel" => {
                    pic_kernel = Some(
                        items
                            .iter()
                            .map(|t| num(t).map(|n| n as i128))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                _ => return Err(Error::Parse(format!("unknown cubic field {k:?}"))),
            }
        }
        let splitting =
            splitting.ok_or_else(|| Error::Parse("cubic data needs splitting=[..]".into()))?;
        for s in &splitting {
            if s.iter().sum::<usize>() != 3 || s.contains(&0) {
                return Err(Error::InvalidInput(format!(
                    "local degrees {s:?} do not sum to 3"
                )));
            }
        }
        if let Some(a) = above {
            let counts: Vec<usize> = splitting.iter().map(|s| s.len()).collect();
            if a != counts {
                return Err(Error::InvalidInput(format!(
                    "places_above_S {a:?} disagrees with splitting {counts:?}"
                )));
            }
        }
        Ok(UserCubic {
            splitting,
            pic_kernel,
        })
    }
}

/// Splits at whitespace and commas outside brackets.
fn split_fields(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch.is_whitespace() || ch == ',') {
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

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    SplitAlgebra,
    ConstantField(usize),
    KummerUnit,
    TorsionBundle,
    Mixed,
    UserCubic(UserCubic),
}

impl ExtensionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExtensionKind::SplitAlgebra => "split",
            ExtensionKind::ConstantField(_) => "constant",
            ExtensionKind::KummerUnit => "unit",
            ExtensionKind::TorsionBundle => "torsion-bundle",
            ExtensionKind::Mixed => "mixed",
            ExtensionKind::UserCubic(_) => "user-cubic",
        }
    }
}

/// How points of the cover curve map to the base curve.
#[derive(Clone, Debug, PartialEq)]
pub enum CoverMap {
    /// The base curve over `F_{q^m}`.
    Constant(usize),
    /// `w^2 = h(x)` over the projective line, `(x, w) -> x`.
    SameX,
    /// `t^2 = c (x - x0)`, `w^2 = c g(x0 + t^2/c) / (t^2/c)` over a genus 1
    /// curve `y'^2 = g(x)`; `(t, w) -> (x0 + t^2/c, t w / c)`.
    TorsionBundle { x0: Fq, c: Fq },
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub curve: CurveModel,
    pub map: CoverMap,
    /// Places of the cover above `S`, with the index of the place below.
    pub removed: Vec<(ClosedPoint, usize)>,
}

#[derive(Clone, Debug)]
pub struct EtaleExtension {
    pub base: HasseDomain,
    pub kind: ExtensionKind,
    pub degree: usize,
    /// `[e, f_1, .., f_r]`: exponent of a constant non-square and of the
    /// free unit generators, mod 2.
    pub unit_class: Vec<u8>,
    /// A 2-torsion class of `Pic(O_S)` (coordinates on the `Pic(C)` generators).
    pub pic_class: Vec<i128>,
    pub alpha: Option<Function>,
    pub fibers: Vec<FiberType>,
    pub cover: Option<Cover>,
}

impl EtaleExtension {
    pub fn is_split(&self) -> bool {
        self.kind == ExtensionKind::SplitAlgebra
    }

    /// Number of connected components of `Spec R`.
    pub fn components(&self) -> usize {
        if self.is_split() {
            2
        } else {
            1
        }
    }

    /// `|S_R|`.
    pub fn removed_count(&self) -> usize {
        self.fibers.iter().map(|f| f.local_degrees.len()).sum()
    }

    /// Places above `S` as `(index in S, local degree, component)`, grouped by component.
    pub fn places_above(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, fib) in self.fibers.iter().enumerate() {
            for (k, &n) in fib.local_degrees.iter().enumerate() {
                let comp = if self.is_split() { k } else { 0 };
                out.push((i, n, comp));
            }
        }
        out.sort_by_key(|&(_, _, comp)| comp);
        out
    }

    pub fn label(&self) -> String {
        let f = self.base.curve().field();
        match &self.kind {
            ExtensionKind::SplitAlgebra => "O_S x O_S".into(),
            ExtensionKind::ConstantField(m) => format!("O_S (x) F_{}", f.size().pow(*m as u32)),
            ExtensionKind::UserCubic(u) => {
                let parts: Vec<String> = u
                    .splitting
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join("+")
                    })
                    .collect();
                format!("cubic[{}]", parts.join(","))
            }
            _ => match &self.alpha {
                Some(a) => format!("O_S[sqrt({})]", a.format(f)),
                None => "O_S[sqrt(?)]".into(),
            },
        }
    }

    pub fn removed_points(&self) -> Vec<ClosedPoint> {
        self.cover
            .as_ref()
            .map(|c| c.removed.iter().map(|(p, _)| *p).collect())
            .unwrap_or_default()
    }
}

/// Fiber of `R` over any place (not only those of `S`).
pub fn fiber_type(r: &EtaleExtension, p: &ClosedPoint) -> Result<FiberType> {
    if let Some(i) = r.base.places().iter().position(|s| s == p) {
        return Ok(r.fibers[i].clone());
    }
    let c = r.base.curve();
    match &r.kind {
        ExtensionKind::SplitAlgebra => Ok(FiberType::quadratic(*p, FiberKind::Split)),
        ExtensionKind::ConstantField(m) => Ok(constant_fiber(*p, *m)),
        ExtensionKind::UserCubic(_) => Err(Error::Unsupported(
            "user cubic data only describes the fibers above S".into(),
        )),
        _ => {
            let alpha = r
                .alpha
                .as_ref()
                .ok_or_else(|| Error::Internal("missing alpha".into()))?;
            let t = alpha_fiber(c, alpha, p)?;
            if t.kind == FiberKind::Ramified {
                return Err(Error::Internal(format!(
                    "extension ramified at {} outside S",
                    p.format(c)
                )));
            }
            Ok(t)
        }
    }
}

fn constant_fiber(p: ClosedPoint, m: usize) -> FiberType {
    let g = gcd(p.degree, m);
    FiberType::from_local_degrees(p, vec![m / g; g])
}

fn alpha_fiber(c: &CurveModel, alpha: &Function, p: &ClosedPoint) -> Result<FiberType> {
    let (v, lead, kp) = local_term(c, alpha, p)?;
    let kind = if v.rem_euclid(2) == 1 {
        FiberKind::Ramified
    } else if kp.is_square(lead) {
        FiberKind::Split
    } else {
        FiberKind::Inert
    };
    Ok(FiberType::quadratic(*p, kind))
}

/// Number of `F_{q^d}`-points of the cover above a point `x` of the base,
/// read from the local data of `alpha` at the place of `x`.
pub fn fiber_size(c: &CurveModel, alpha: &Function, x: Point, d: usize) -> Result<usize> {
    let ec = c.over(d)?;
    let orbit = ec.orbit(x);
    let e = orbit.len();
    let rep = *orbit.iter().min().unwrap();
    let small = c.over(e)?;
    let down = Embedding::new(&small.f, &ec.f)?;
    let rep =
        descend(&down, rep).ok_or_else(|| Error::Internal("orbit rep not in its field".into()))?;
    let place = ClosedPoint { degree: e, rep };
    let (v, lead, kp) = local_term(c, alpha, &place)?;
    if v.rem_euclid(2) == 1 {
        return Ok(1);
    }
    let up = Embedding::new(&kp, &ec.f)?;
    Ok(if ec.f.is_square(up.apply(lead)) { 2 } else { 0 })
}

fn descend(e: &Embedding, p: Point) -> Option<Point> {
    Some(match p {
        Point::Affine(x, y) => Point::Affine(e.preimage(x)?, e.preimage(y)?),
        Point::Infinity(c) => Point::Infinity(e.preimage(c)?),
    })
}

/// Quadratic extensions, trivial class first, then by 2-torsion class and
/// unit class.
pub fn enumerate_quadratic_extensions(dom: &HasseDomain) -> Result<Vec<EtaleExtension>> {
    let pos = pic_group(dom)?;
    let units = unit_group_with(dom, &pos)?;
    let c = dom.curve();
    let f = c.field();
    let nu = f.nonsquare();
    let mut tors = pos.group.torsion_elements(2);
    tors.iter_mut().for_each(|t| *t = pos.group.reduce(t));
    tors.sort_by_key(|t| (!pos.group.is_zero(t), t.clone()));
    let r = units.rank;
    let mut out = Vec::new();
    for d in &tors {
        let alpha_d = if pos.group.is_zero(d) {
            None
        } else {
            Some(torsion_function(&pos, dom, d)?)
        };
        for idx in 0..(1usize << (1 + r)) {
            let bits: Vec<u8> = (0..=r).map(|j| ((idx >> j) & 1) as u8).collect();
            let mut alpha = if bits[0] == 1 {
                Function::constant(nu)
            } else {
                Function::constant(Fq::ONE)
            };
            for (j, g) in units.generators.iter().enumerate() {
                if bits[1 + j] == 1 {
                    alpha = alpha.mul(c, &g.function)?;
                }
            }
            let nonconstant_unit = bits[1..].contains(&1);
            if let Some(ad) = &alpha_d {
                alpha = alpha.mul(c, ad)?;
            }
            let kind = match (alpha_d.is_some(), nonconstant_unit, bits[0]) {
                (false, false, 0) => ExtensionKind::SplitAlgebra,
                (false, false, _) => ExtensionKind::ConstantField(2),
                (false, true, _) => ExtensionKind::KummerUnit,
                (true, false, _) => ExtensionKind::TorsionBundle,
                (true, true, _) => ExtensionKind::Mixed,
            };
            out.push(build_quadratic(dom, kind, bits, d.clone(), alpha)?);
        }
    }
    Ok(out)
}

/// `alpha_D` with `div(alpha_D) = 2D - sum k_i S_i`.
fn torsion_function(pos: &PicOS, dom: &HasseDomain, d: &[i128]) -> Result<Function> {
    let pic = &pos.pic;
    let twice = pic.group().scale(d, 2);
    let k = pos
        .s_map()?
        .preimage(&twice)
        .ok_or_else(|| Error::Internal("2-torsion class not killed by S".into()))?;
    let mut div = Vec::new();
    for (p, m) in pic.divisor_of_class(d)? {
        div.push((p, 2 * m));
    }
    for (p, &m) in dom.places().iter().zip(&k) {
        div.push((*p, -(m as i64)));
    }
    pic.principal_function(&merge(div))
}

fn merge(div: Vec<(ClosedPoint, i64)>) -> Vec<(ClosedPoint, i64)> {
    let mut m = std::collections::BTreeMap::new();
    for (p, k) in div {
        *m.entry(p).or_insert(0) += k;
    }
    m.into_iter().filter(|(_, k)| *k != 0).collect()
}

fn build_quadratic(
    dom: &HasseDomain,
    kind: ExtensionKind,
    unit_class: Vec<u8>,
    pic_class: Vec<i128>,
    alpha: Function,
) -> Result<EtaleExtension> {
    let c = dom.curve();
    let fibers: Vec<FiberType> = match kind {
        ExtensionKind::SplitAlgebra => dom
            .places()
            .iter()
            .map(|p| FiberType::quadratic(*p, FiberKind::Split))
            .collect(),
        _ => dom
            .places()
            .iter()
            .map(|p| alpha_fiber(c, &alpha, p))
            .collect::<Result<_>>()?,
    };
    let mut r = EtaleExtension {
        base: dom.clone(),
        kind,
        degree: 2,
        unit_class,
        pic_class,
        alpha: None,
        fibers,
        cover: None,
    };
    if r.kind != ExtensionKind::SplitAlgebra {
        r.alpha = Some(alpha);
    }
    r.cover = build_cover(&r)?;
    Ok(r)
}

/// The constant-field extension `O_S (x) F_{q^m}`.
pub fn constant_extension(dom: &HasseDomain, m: usize) -> Result<EtaleExtension> {
    if m < 2 {
        return Err(Error::InvalidInput(
            "constant extension needs degree at least 2".into(),
        ));
    }
    let fibers = dom.places().iter().map(|p| constant_fiber(*p, m)).collect();
    let mut r = EtaleExtension {
        base: dom.clone(),
        kind: ExtensionKind::ConstantField(m),
        degree: m,
        unit_class: vec![],
        pic_class: vec![],
        alpha: None,
        fibers,
        cover: None,
    };
    if m == 2 {
        r.alpha = Some(Function::constant(dom.curve().field().nonsquare()));
    }
    r.cover = build_cover(&r)?;
    Ok(r)
}

/// A cubic extension known only through its splitting above `S`.
pub fn user_cubic(dom: &HasseDomain, data: UserCubic) -> Result<EtaleExtension> {
    if data.splitting.len() != dom.places().len() {
        return Err(Error::InvalidInput(format!(
            "cubic data lists {} places, S has {}",
            data.splitting.len(),
            dom.places().len()
        )));
    }
    let fibers = dom
        .places()
        .iter()
        .zip(&data.splitting)
        .map(|(p, s)| FiberType::from_local_degrees(*p, s.clone()))
        .collect();
    Ok(EtaleExtension {
        base: dom.clone(),
        kind: ExtensionKind::UserCubic(data),
        degree: 3,
        unit_class: vec![],
        pic_class: vec![],
        alpha: None,
        fibers,
        cover: None,
    })
}

/// Squarefree part of a rational function on the line, as a polynomial.
fn squarefree_kernel(f: &crate::ff::FiniteField, num: &Poly, den: &Poly) -> Poly {
    let prod = num.mul(f, den);
    let (lead, facs) = prod.factor(f);
    let mut h = Poly::constant(lead);
    for (p, e) in facs {
        if e % 2 == 1 {
            h = h.mul(f, &p);
        }
    }
    h
}

fn build_cover(r: &EtaleExtension) -> Result<Option<Cover>> {
    let c = r.base.curve();
    let f = c.field();
    let (curve, map) = match (&r.kind, &r.alpha) {
        (ExtensionKind::SplitAlgebra | ExtensionKind::UserCubic(_), _) => return Ok(None),
        (ExtensionKind::ConstantField(m), _) => (c.base_change(*m)?, CoverMap::Constant(*m)),
        (_, Some(Function::Rational { num, den })) if c.is_projective_line() => {
            let h = squarefree_kernel(f, num, den);
            match h.deg() {
                Some(1..=4) => (CurveModel::double_cover(f.clone(), h)?, CoverMap::SameX),
                _ => return Ok(None),
            }
        }
        (_, Some(Function::Cover(g))) if matches!(c.kind(), CurveKind::Weierstrass(_)) => {
            // alpha = k (x - x0) with (x0, 0) a 2-torsion point
            if !g.b.is_zero() || !g.c.is_constant() || g.a.deg() != Some(1) {
                return Ok(None);
            }
            let k = f.div(g.a.lead(), g.c.lead()).unwrap();
            let x0 = f.neg(f.div(g.a.coeff(0), g.a.lead()).unwrap());
            let gx = c.weierstrass_h().unwrap();
            let g1 = gx
                .div_exact(f, &Poly::linear(f, x0))
                .ok_or_else(|| Error::Internal("x0 is not a root".into()))?;
            // h(t) = k * g1(x0 + t^2 / k)
            let sub = Poly::from_coeffs(vec![x0, Fq::ZERO, f.inv(k).unwrap()]);
            let h = g1.compose(f, &sub).scale(f, k);
            (
                CurveModel::double_cover(f.clone(), h)?,
                CoverMap::TorsionBundle { x0, c: k },
            )
        }
        _ => return Ok(None),
    };
    let mut cover = Cover {
        curve,
        map,
        removed: Vec::new(),
    };
    for (i, p) in r.base.places().iter().enumerate() {
        let above = places_above(&cover, c, p)?;
        let fib = &r.fibers[i];
        let consistent = match fib.kind {
            FiberKind::Split | FiberKind::Partial => above.len() == fib.local_degrees.len(),
            FiberKind::Inert | FiberKind::Ramified => above.len() == 1,
        };
        if !consistent {
            return Err(Error::Internal(format!(
                "cover model has {} places above {}, fiber analysis says {}",
                above.len(),
                p.format(c),
                fib.kind
            )));
        }
        cover.removed.extend(above.into_iter().map(|q| (q, i)));
    }
    Ok(Some(cover))
}

/// Places of the cover above a place of the base.
pub fn places_above(cover: &Cover, base: &CurveModel, p: &ClosedPoint) -> Result<Vec<ClosedPoint>> {
    let (level, pts) = match cover.map {
        CoverMap::Constant(m) => {
            let e = p.degree / gcd(p.degree, m);
            let big = cover.curve.over(e)?;
            let src = base.over(p.degree)?;
            let emb = Embedding::new(&src.f, &big.f)?;
            let mut pts = Vec::new();
            let mut x = p.rep.map(&emb);
            for _ in 0..p.degree {
                pts.push(x);
                x = frob(&big, x, base.q());
            }
            (e, pts)
        }
        _ => {
            let l = 2 * p.degree;
            let bc = base.over(l)?;
            let emb = Embedding::new(&base.over(p.degree)?.f, &bc.f)?;
            let ec2 = cover.curve.over(l)?;
            let mut pts = Vec::new();
            for x in bc.orbit(p.rep.map(&emb)) {
                pts.extend(fiber_points(cover, &bc, &ec2, x)?);
            }
            (l, pts)
        }
    };
    group_orbits(&cover.curve, level, pts)
}

fn frob(ec: &ExtCurve, p: Point, q: u64) -> Point {
    let f = &ec.f;
    match p {
        Point::Affine(x, y) => Point::Affine(f.pow(x, q), f.pow(y, q)),
        Point::Infinity(c) => Point::Infinity(f.pow(c, q)),
    }
}

/// Groups points of `curve` over its extension of degree `level` into places.
fn group_orbits(curve: &CurveModel, level: usize, mut pts: Vec<Point>) -> Result<Vec<ClosedPoint>> {
    let ec = curve.over(level)?;
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for p in pts {
        if seen.contains(&p) {
            continue;
        }
        let orbit = ec.orbit(p);
        seen.extend(orbit.iter().copied());
        let rep = *orbit.iter().min().unwrap();
        let small = curve.over(orbit.len())?;
        let e = Embedding::new(&small.f, &ec.f)?;
        let rep =
            descend(&e, rep).ok_or_else(|| Error::Internal("place rep not in its field".into()))?;
        out.push(ClosedPoint {
            degree: orbit.len(),
            rep,
        });
    }
    out.sort();
    Ok(out)
}

/// Points of the cover over `ec2.f` above the base point `x` (base coordinates).
fn fiber_points(cover: &Cover, bc: &ExtCurve, ec2: &ExtCurve, x: Point) -> Result<Vec<Point>> {
    let f = &ec2.f;
    let CurveKind::DoubleCover(h) = &ec2.kind else {
        return Err(Error::Internal(
            "geometric cover without double-cover model".into(),
        ));
    };
    let sq_pair = |s: Fq, v: Fq| -> Vec<Point> {
        match f.sqrt(v) {
            None => vec![],
            Some(r) if r.is_zero() => vec![Point::Affine(s, r)],
            Some(r) => vec![Point::Affine(s, r), Point::Affine(s, f.neg(r))],
        }
    };
    if x.is_infinity() {
        return Ok(ec2.infinity_points());
    }
    Ok(match cover.map {
        CoverMap::SameX => {
            let Point::Affine(s, _) = x else {
                unreachable!()
            };
            sq_pair(s, h.eval(f, s))
        }
        CoverMap::TorsionBundle { x0, c } => {
            let (x0, c) = (ec2.emb.apply(x0), ec2.emb.apply(c));
            let Point::Affine(x1, y1) = to_model_point(bc, x) else {
                unreachable!()
            };
            let t2 = f.mul(c, f.sub(x1, x0));
            if t2.is_zero() {
                sq_pair(Fq::ZERO, h.eval(f, Fq::ZERO))
            } else {
                let t = f
                    .sqrt(t2)
                    .ok_or_else(|| Error::Internal("t not in the working field".into()))?;
                [t, f.neg(t)]
                    .into_iter()
                    .map(|t| Point::Affine(t, f.div(f.mul(c, y1), t).unwrap()))
                    .collect()
            }
        }
        CoverMap::Constant(_) => unreachable!(),
    })
}

/// Image of a rational point of the cover: the place below and the residue degree.
pub fn image_place(cover: &Cover, base: &CurveModel, q: Point) -> Result<(ClosedPoint, usize)> {
    match cover.map {
        CoverMap::Constant(m) => {
            let p = group_orbits(base, m, vec![q])?[0];
            Ok((p, m / p.degree))
        }
        CoverMap::SameX => Ok((
            ClosedPoint::rational(match q {
                Point::Affine(s, _) => Point::Affine(s, Fq::ZERO),
                Point::Infinity(_) => Point::O,
            }),
            1,
        )),
        CoverMap::TorsionBundle { x0, c } => {
            let f = base.field();
            let p = match q {
                Point::Infinity(_) => Point::O,
                Point::Affine(t, w) => {
                    let x = f.add(x0, f.div(f.mul(t, t), c).unwrap());
                    let yp = f.div(f.mul(t, w), c).unwrap();
                    let CurveKind::Weierstrass(a) = base.kind() else {
                        unreachable!()
                    };
                    let half = f.inv(f.from_int(2)).unwrap();
                    Point::Affine(x, f.sub(yp, f.mul(half, f.add(f.mul(a[0], x), a[2]))))
                }
            };
            Ok((ClosedPoint::rational(p), 1))
        }
    }
}

/// `Pic(R)` with the norm map to `Pic(O_S)`.
#[derive(Clone, Debug)]
pub struct ExtPic {
    pub group: FinAbGroup,
    pub norm: AbHom,
}

/// `None` when no cover model of genus at most 1 is available.
pub fn extension_pic(r: &EtaleExtension) -> Result<Option<ExtPic>> {
    let pos = pic_group(&r.base)?;
    if r.is_split() {
        let g = pos.group.direct_sum(&pos.group);
        let n = pos.group.ngens();
        let images: Vec<Vec<i128>> = (0..2 * n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i % n] = 1;
                v
            })
            .collect();
        let norm = AbHom::from_images(g.clone(), pos.group.clone(), &images)?;
        return Ok(Some(ExtPic { group: g, norm }));
    }
    let Some(cover) = &r.cover else {
        return Ok(None);
    };
    if cover.curve.genus() > 1 {
        return Ok(None);
    }
    let cpic = CurvePic::compute(&cover.curve)?;
    let removed: Vec<ClosedPoint> = cover.removed.iter().map(|(p, _)| *p).collect();
    let rpic = crate::hasse::pic_of_with(cpic, &removed)?;
    let base = r.base.curve();
    let n = rpic.pic.group().ngens();
    let mut images = Vec::new();
    for i in 0..n {
        let mut e = vec![0i128; n];
        e[i] = 1;
        let mut v = pos.pic.group().zero();
        for (q, k) in rpic.pic.divisor_of_class(&e)? {
            if q.degree != 1 {
                return Err(Error::Internal("class representative not rational".into()));
            }
            let (p, mult) = image_place(cover, base, q.rep)?;
            let cls = pos.pic.class_of_place(&p)?;
            v = pos
                .pic
                .group()
                .add(&v, &pos.pic.group().scale(&cls, k as i128 * mult as i128));
        }
        images.push(v);
    }
    let norm = AbHom::from_images(rpic.group.clone(), pos.group.clone(), &images)?;
    Ok(Some(ExtPic {
        group: rpic.group,
        norm,
    }))
}
