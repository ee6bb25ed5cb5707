//! Counting twisted forms: the type table and one component per class of
//! outer twist.

use std::fmt;

use crate::abgrp::{inversion_orbit_count, FinAbGroup};
use crate::brauer::{
    brauer_kernel, is_imaginary, pic_kernel, pic_mod_extension, theta_action_trivial, BrauerModel,
    Factor, FundamentalDescriptor,
};
use crate::covers::{enumerate_quadratic_extensions, EtaleExtension};
use crate::error::{Error, Result};
use crate::hasse::{pic_group, HasseDomain};
use crate::report::{Bound, Component, Quotient, TwistReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    Intermediate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub letter: char,
    pub rank: usize,
    pub isogeny: Isogeny,
    /// Declared inner/outer index (1, 2, 3 or 6); informational.
    pub index: Option<u8>,
    /// `SL_1(A)` of a quaternion algebra.
    pub sl1: bool,
}

impl GroupSpec {
    /// `[index]<letter><rank>[-adjoint|-sc|-intermediate|-SL1]`, e.g. `E6-adjoint`,
    /// `2D5`, `A1-SL1`, `B3`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, suffix) = match s.split_once('-') {
            Some((b, x)) => (b, Some(x)),
            None => (s, None),
        };
        let mut chars = body.chars().peekable();
        let mut index = None;
        if let Some(c) = chars.peek().copied().filter(char::is_ascii_digit) {
            chars.next();
            index = Some(c.to_digit(10).unwrap() as u8);
        }
        let letter = chars
            .next()
            .filter(|c| "ABCDEFG".contains(*c))
            .ok_or_else(|| {
                Error::Parse(format!("group {s:?} must start with a Dynkin letter A-G"))
            })?;
        let rank_str: String = chars.collect();
        let rank: usize = rank_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in group {s:?}")))?;
        let (isogeny, sl1) = match suffix.map(str::to_ascii_lowercase).as_deref() {
            None | Some("adjoint") | Some("ad") => (Isogeny::Adjoint, false),
            Some("sc") | Some("simply-connected") => (Isogeny::SimplyConnected, false),
            Some("intermediate") => (Isogeny::Intermediate, false),
            Some("sl1") => (Isogeny::SimplyConnected, true),
            Some(x) => return Err(Error::Parse(format!("unknown isogeny {x:?}"))),
        };
        let valid = match letter {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !valid {
            return Err(Error::InvalidInput(format!(
                "no simple type {letter}{rank}"
            )));
        }
        if sl1 && (letter, rank) != ('A', 1) {
            return Err(Error::InvalidInput(
                "SL1 is only supported for quaternion algebras (A1)".into(),
            ));
        }
        let allowed: &[u8] = match (letter, rank) {
            ('D', 4) => &[1, 2, 3, 6],
            ('A', n) if n >= 2 => &[1, 2],
            ('D', _) | ('E', 6) => &[1, 2],
            _ => &[1],
        };
        if let Some(i) = index {
            if !allowed.contains(&i) {
                return Err(Error::InvalidInput(format!(
                    "index {i} is impossible for {letter}{rank}"
                )));
            }
        }
        Ok(GroupSpec {
            letter,
            rank,
            isogeny,
            index,
            sl1,
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.index {
            write!(f, "{i}")?;
        }
        write!(f, "{}{}", self.letter, self.rank)?;
        let suffix = match (self.sl1, self.isogeny) {
            (true, _) => "SL1",
            (_, Isogeny::Adjoint) => "adjoint",
            (_, Isogeny::SimplyConnected) => "sc",
            (_, Isogeny::Intermediate) => "intermediate",
        };
        write!(f, "-{suffix}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theta {
    Trivial,
    Z2,
    S3,
}

impl Theta {
    pub fn name(&self) -> &'static str {
        match self {
            Theta::Trivial => "0",
            Theta::Z2 => "Z/2",
            Theta::S3 => "S3",
        }
    }
}

/// `F(G^ad)` for the inner form and for the outer forms, and `Theta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeRow {
    pub inner: FundamentalDescriptor,
    pub quadratic: Option<FundamentalDescriptor>,
    pub cubic: Option<FundamentalDescriptor>,
    pub theta: Theta,
}

fn desc(f: &[Factor]) -> FundamentalDescriptor {
    FundamentalDescriptor {
        factors: f.to_vec(),
    }
}

pub fn type_table(spec: &GroupSpec) -> TypeRow {
    use Factor::*;
    let n = spec.rank as i128 + 1;
    let (inner, quadratic, cubic, theta) = match (spec.letter, spec.rank) {
        ('A', 1) => (desc(&[Mu(2)]), None, None, Theta::Trivial),
        ('A', _) => (desc(&[Mu(n)]), Some(desc(&[Res1(n)])), None, Theta::Z2),
        ('B', _) | ('C', _) | ('E', 7) => (desc(&[Mu(2)]), None, None, Theta::Trivial),
        ('D', 4) => (
            desc(&[Mu(2), Mu(2)]),
            Some(desc(&[Res(2)])),
            Some(desc(&[Res1(2)])),
            Theta::S3,
        ),
        ('D', r) if r % 2 == 1 => (desc(&[Mu(4)]), Some(desc(&[Res1(4)])), None, Theta::Z2),
        ('D', _) => (
            desc(&[Mu(2), Mu(2)]),
            Some(desc(&[Res(2)])),
            None,
            Theta::Z2,
        ),
        ('E', 6) => (desc(&[Mu(3)]), Some(desc(&[Res1(3)])), None, Theta::Z2),
        _ => (FundamentalDescriptor::trivial(), None, None, Theta::Trivial),
    };
    TypeRow {
        inner,
        quadratic,
        cubic,
        theta,
    }
}

/// Inputs that the engine cannot derive from the curve and `S`.
#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    /// Whether `[A] ~ [A^op]` identifies classes (E6).
    pub tilde: Option<bool>,
    /// Tits class of the universal cover as local invariants in `3Br(O_S)` (E6).
    pub tits: Option<Vec<i128>>,
    /// Cubic extensions for D4.
    pub cubic: Vec<EtaleExtension>,
}

fn order(g: &FinAbGroup) -> u128 {
    g.order().expect("finite invariant group")
}

/// Turns an `Unsupported` failure into a missing part with a note.
fn part(r: Result<FinAbGroup>, note: &mut Option<String>) -> Result<Option<FinAbGroup>> {
    match r {
        Ok(g) => Ok(Some(g)),
        Err(Error::Unsupported(m)) => {
            *note = Some(m);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn component(
    class: &str,
    label: String,
    f: &FundamentalDescriptor,
    j: Result<FinAbGroup>,
    i: Result<FinAbGroup>,
    quotient: Quotient,
    exact: bool,
    mut note: Option<String>,
) -> Result<Component> {
    let j = part(j, &mut note)?;
    let i = part(i, &mut note)?;
    let (size, size_max) = match (&j, &i) {
        (Some(j), Some(i)) => {
            let full = order(j) * order(i);
            let reduced = order(j) * inversion_orbit_count(i)?;
            match quotient {
                Quotient::None => (Some(full), None),
                Quotient::Inversion | Quotient::Theta => (Some(reduced), None),
                Quotient::Undecided => (Some(reduced), (reduced != full).then_some(full)),
            }
        }
        _ => (None, None),
    };
    let trivial_i = i.as_ref().is_some_and(|g| g.is_trivial());
    let exact = exact || trivial_i;
    Ok(Component {
        class: class.into(),
        label,
        fundamental: f.format(),
        j: j.map(|g| g.invariants()),
        i: i.map(|g| g.invariants()),
        quotient: if trivial_i && quotient != Quotient::None {
            Quotient::None
        } else {
            quotient
        },
        size,
        size_max,
        exact,
        note,
    })
}

fn report_header(spec: &GroupSpec, d: &HasseDomain, theta: Theta) -> TwistReport {
    TwistReport {
        group: spec.to_string(),
        curve: d.curve().describe(),
        places: d.format_places(),
        theta: theta.name().into(),
        components: vec![],
        outer_forms: 0,
        total: None,
        total_max: None,
        bound: Bound::Exact,
        hasse_principle: None,
        notes: vec![],
    }
}

/// `Pic(O_S)/m x mBr(O_S)`, optionally with `~`.
fn inner_component(
    d: &HasseDomain,
    f: &FundamentalDescriptor,
    quotient: Quotient,
    label: &str,
) -> Result<Component> {
    let mut j = FinAbGroup::trivial();
    let mut i = FinAbGroup::trivial();
    let pic = pic_group(d)?;
    for fac in &f.factors {
        let m = fac.modulus();
        j = j.direct_sum(&pic.group.quotient_mod(m));
        i = i.direct_sum(BrauerModel::of_domain(d, m)?.group());
    }
    component("inner", label.into(), f, Ok(j), Ok(i), quotient, true, None)
}

/// Types with trivial `Theta`: `Pic(O_S)/m x mBr(O_S)`.
pub fn classify_split_f(spec: &GroupSpec, d: &HasseDomain) -> Result<TwistReport> {
    let row = type_table(spec);
    if row.theta != Theta::Trivial {
        return Err(Error::InvalidInput(format!("{spec} has outer forms")));
    }
    let mut rep = report_header(spec, d, row.theta);
    rep.components
        .push(inner_component(d, &row.inner, Quotient::None, "O_S")?);
    Ok(rep.assemble(false))
}

fn e6_quotient(d: &HasseDomain, opts: &ClassifyOptions) -> Result<Quotient> {
    if let Some(t) = opts.tilde {
        return Ok(if t {
            Quotient::Inversion
        } else {
            Quotient::None
        });
    }
    if let Some(tits) = &opts.tits {
        let model = BrauerModel::of_domain(d, 3)?;
        return Ok(if theta_action_trivial(&model, tits)? {
            Quotient::None
        } else {
            Quotient::Inversion
        });
    }
    Ok(Quotient::Undecided)
}

/// Component for a quadratic class `P`, given the outer fundamental group.
fn quadratic_component(
    d: &HasseDomain,
    r: &EtaleExtension,
    f: &FundamentalDescriptor,
    quotient: Quotient,
) -> Result<Component> {
    let fac = f.factors[0];
    let m = fac.modulus();
    let (j, i, admissible) = match fac {
        Factor::Res1(_) => (
            pic_kernel(r, m),
            brauer_kernel(d, r, m),
            crate::hasse::gcd(r.degree, m as usize) == 1,
        ),
        Factor::Res(_) => (
            pic_mod_extension(r, m),
            BrauerModel::of_extension(r, m).map(|b| b.group().clone()),
            true,
        ),
        Factor::Mu(_) => unreachable!("outer forms have restricted fundamental groups"),
    };
    let note = (matches!(fac, Factor::Res1(_)) && is_imaginary(r))
        .then(|| "imaginary: Brauer kernel is trivial".to_string());
    let class = if r.degree == 3 { "cubic" } else { "quadratic" };
    let mut c = component(class, r.label(), f, j, i, quotient, admissible, None)?;
    if c.note.is_none() {
        c.note = note;
    }
    Ok(c)
}

/// Types with `Theta = Z/2`: E6, D_n for n != 4.
pub fn classify_quadratic_outer(
    spec: &GroupSpec,
    d: &HasseDomain,
    opts: &ClassifyOptions,
) -> Result<TwistReport> {
    let row = type_table(spec);
    if row.theta != Theta::Z2 {
        return Err(Error::InvalidInput(format!(
            "{spec} does not have Theta = Z/2"
        )));
    }
    if spec.letter == 'A' {
        return Err(Error::Unsupported(
            "isotropic type A forms are not classified; use A1-SL1 with a quaternion".into(),
        ));
    }
    if spec.letter == 'D' && spec.rank.is_multiple_of(2) && spec.isogeny == Isogeny::Intermediate {
        return Err(Error::Unsupported(format!(
            "{spec}: intermediate isogenies of D_2k are not classified"
        )));
    }
    let outer = row.quadratic.clone().unwrap();
    let exts = enumerate_quadratic_extensions(d)?;
    let mut rep = report_header(spec, d, row.theta);
    let quotient = match (spec.letter, spec.rank % 2) {
        ('E', _) => e6_quotient(d, opts)?,
        ('D', 1) => Quotient::Inversion,
        _ => Quotient::None,
    };
    for r in &exts {
        if spec.letter == 'D' && spec.rank.is_multiple_of(2) {
            // Pic(R_P)/2 x 2Br(R_P) for every class, the split one included
            let mut c = quadratic_component(d, r, &outer, Quotient::None)?;
            if r.is_split() {
                c.class = "inner".into();
                c.fundamental = row.inner.format();
            }
            rep.components.push(c);
        } else if r.is_split() {
            rep.components
                .push(inner_component(d, &row.inner, quotient, &r.label())?);
        } else {
            rep.components
                .push(quadratic_component(d, r, &outer, quotient)?);
        }
    }
    if quotient == Quotient::Undecided {
        rep.notes.push(
            "[A] ~ [A^op] depends on the relative type; counts are given with and without it"
                .into(),
        );
    }
    if spec.letter == 'D' && spec.rank % 2 == 1 {
        rep.notes.push(
            "outer components inject into the listed groups; the first component is exact".into(),
        );
    }
    Ok(rep.assemble(false))
}

/// D4: the inner component squared, quadratic components, and the supplied cubic ones.
pub fn classify_d4(
    spec: &GroupSpec,
    d: &HasseDomain,
    opts: &ClassifyOptions,
) -> Result<TwistReport> {
    if (spec.letter, spec.rank) != ('D', 4) {
        return Err(Error::InvalidInput(format!("{spec} is not of type D4")));
    }
    if spec.isogeny == Isogeny::Intermediate {
        return Err(Error::Unsupported(
            "D4 forms are classified only for simply-connected or adjoint groups".into(),
        ));
    }
    let row = type_table(spec);
    let mut rep = report_header(spec, d, row.theta);
    let quad = row.quadratic.clone().unwrap();
    for r in enumerate_quadratic_extensions(d)? {
        let mut c = quadratic_component(d, &r, &quad, Quotient::None)?;
        if r.is_split() {
            c.class = "inner".into();
            c.fundamental = row.inner.format();
        }
        rep.components.push(c);
    }
    let cubic = row.cubic.clone().unwrap();
    for r in &opts.cubic {
        if r.degree != 3 {
            return Err(Error::InvalidInput(
                "cubic data must describe a degree 3 extension".into(),
            ));
        }
        rep.components
            .push(quadratic_component(d, r, &cubic, Quotient::Theta)?);
    }
    let missing = opts.cubic.is_empty();
    if missing {
        rep.notes
            .push("cubic classes not enumerated; supply --cubic to include them".into());
    } else {
        rep.notes
            .push("cubic classes limited to the supplied extensions".into());
    }
    Ok(rep.assemble(true))
}

/// Dispatches on the type. Type A is handled by the quaternion module.
pub fn classify(spec: &GroupSpec, d: &HasseDomain, opts: &ClassifyOptions) -> Result<TwistReport> {
    if spec.letter == 'A' {
        return Err(Error::Unsupported(format!(
            "{spec}: type A is only classified as SL1 of a quaternion algebra (pass --quaternion)"
        )));
    }
    match type_table(spec).theta {
        Theta::Trivial => classify_split_f(spec, d),
        Theta::Z2 => classify_quadratic_outer(spec, d, opts),
        Theta::S3 => classify_d4(spec, d, opts),
    }
}
