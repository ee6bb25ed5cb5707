//! m-torsion Brauer groups of Hasse domains as local invariants.
//!
//! An element of `mBr` is a vector of invariants in `Z/m`, one per removed
//! place, summing to zero on every connected component.

use crate::abgrp::{inversion_orbit_count, AbHom, FinAbGroup};
use crate::covers::{extension_pic, EtaleExtension, ExtensionKind};
use crate::error::{Error, Result};
use crate::hasse::{gcd, pic_group, HasseDomain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerModel {
    m: i128,
    /// Number of removed places on each connected component.
    blocks: Vec<usize>,
    group: FinAbGroup,
}

impl BrauerModel {
    pub fn new(m: i128, blocks: Vec<usize>) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidInput(format!(
                "Brauer modulus must be positive, got {m}"
            )));
        }
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidInput(
                "every component needs a removed place".into(),
            ));
        }
        let n: usize = blocks.iter().map(|b| b - 1).sum();
        let rels: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = m;
                r
            })
            .collect();
        Ok(BrauerModel {
            m,
            blocks,
            group: FinAbGroup::new(n, &rels),
        })
    }

    /// `mBr(O_S)`.
    pub fn of_domain(d: &HasseDomain, m: i128) -> Result<Self> {
        Self::new(m, vec![d.places().len()])
    }

    /// `mBr(R)`, with places ordered as in [`EtaleExtension::places_above`].
    pub fn of_extension(r: &EtaleExtension, m: i128) -> Result<Self> {
        let mut blocks = vec![0; r.components()];
        for (_, _, comp) in r.places_above() {
            blocks[comp] += 1;
        }
        Self::new(m, blocks)
    }

    pub fn modulus(&self) -> i128 {
        self.m
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order().unwrap()
    }

    /// Number of places (length of invariant vectors).
    pub fn places(&self) -> usize {
        self.blocks.iter().sum()
    }

    fn ranges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for &b in &self.blocks {
            out.push((start, b));
            start += b;
        }
        out
    }

    /// Invariant vector of a group element.
    pub fn to_invariants(&self, x: &[i128]) -> Vec<i128> {
        let mut out = vec![0; self.places()];
        let mut k = 0;
        for (start, b) in self.ranges() {
            let mut s = 0;
            for i in 1..b {
                out[start + i] = x[k].rem_euclid(self.m);
                s += x[k];
                k += 1;
            }
            out[start] = (-s).rem_euclid(self.m);
        }
        out
    }

    /// Group element of an invariant vector; fails unless each component sums to zero.
    pub fn from_invariants(&self, v: &[i128]) -> Result<Vec<i128>> {
        if v.len() != self.places() {
            return Err(Error::InvalidInput(format!(
                "expected {} local invariants, got {}",
                self.places(),
                v.len()
            )));
        }
        let mut x = Vec::new();
        for (start, b) in self.ranges() {
            if v[start..start + b].iter().sum::<i128>().rem_euclid(self.m) != 0 {
                return Err(Error::InvalidInput(format!(
                    "local invariants do not sum to 0 mod {}",
                    self.m
                )));
            }
            x.extend(v[start + 1..start + b].iter().map(|a| a.rem_euclid(self.m)));
        }
        Ok(x)
    }

    /// Homomorphism given by an integer matrix on invariant vectors.
    fn hom_from_invariant_map(
        &self,
        target: &BrauerModel,
        f: impl Fn(&[i128]) -> Vec<i128>,
    ) -> Result<AbHom> {
        let n = self.group.ngens();
        let images: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                target.from_invariants(&f(&self.to_invariants(&e)))
            })
            .collect::<Result<_>>()?;
        AbHom::from_images(self.group.clone(), target.group.clone(), &images)
    }
}

/// `(index of the place below, local degree)` for each place of `S_R`.
pub type PlacesAbove = [(usize, usize)];

fn places_of(r: &EtaleExtension) -> Vec<(usize, usize)> {
    r.places_above()
        .into_iter()
        .map(|(i, n, _)| (i, n))
        .collect()
}

fn check_above(base: &BrauerModel, ext: &BrauerModel, above: &PlacesAbove) -> Result<()> {
    if above.len() != ext.places() || above.iter().any(|&(i, n)| i >= base.places() || n == 0) {
        return Err(Error::InvalidInput(
            "place data does not match the Brauer models".into(),
        ));
    }
    if base.m != ext.m {
        return Err(Error::InvalidInput(
            "Brauer models have different moduli".into(),
        ));
    }
    Ok(())
}

/// Sums the invariants of the places above each base place.
pub fn corestriction(ext: &BrauerModel, base: &BrauerModel, above: &PlacesAbove) -> Result<AbHom> {
    check_above(base, ext, above)?;
    ext.hom_from_invariant_map(base, |v| {
        let mut out = vec![0; base.places()];
        for (w, &(p, _)) in above.iter().enumerate() {
            out[p] += v[w];
        }
        out
    })
}

/// Sends the invariant at `p` to `n_w` times itself at every place `w` above `p`.
pub fn restriction(base: &BrauerModel, ext: &BrauerModel, above: &PlacesAbove) -> Result<AbHom> {
    check_above(base, ext, above)?;
    base.hom_from_invariant_map(ext, |v| {
        above.iter().map(|&(p, n)| n as i128 * v[p]).collect()
    })
}

/// `R` is imaginary when no place of `S` splits in it: `|S_R| = |S|` on one component.
pub fn is_imaginary(r: &EtaleExtension) -> bool {
    !r.is_split() && r.fibers.iter().all(|f| f.local_degrees.len() == 1)
}

/// One factor of a fundamental group of multiplicative type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `mu_m`.
    Mu(i128),
    /// `R_{R/O_S}(mu_m)`.
    Res(i128),
    /// `R^{(1)}_{R/O_S}(mu_m)`, the kernel of the norm.
    Res1(i128),
}

impl Factor {
    pub fn modulus(&self) -> i128 {
        match *self {
            Factor::Mu(m) | Factor::Res(m) | Factor::Res1(m) => m,
        }
    }

    pub fn order(&self, degree: usize) -> i128 {
        match *self {
            Factor::Mu(m) => m,
            Factor::Res(m) => m.pow(degree as u32),
            Factor::Res1(m) => m.pow(degree as u32 - 1),
        }
    }

    pub fn format(&self) -> String {
        match *self {
            Factor::Mu(m) => format!("mu{m}"),
            Factor::Res(m) => format!("R(mu{m})"),
            Factor::Res1(m) => format!("R1(mu{m})"),
        }
    }
}

/// A product of factors, all relative to the same extension when needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalDescriptor {
    pub factors: Vec<Factor>,
}

impl FundamentalDescriptor {
    pub fn trivial() -> Self {
        FundamentalDescriptor { factors: vec![] }
    }

    pub fn needs_extension(&self) -> bool {
        self.factors.iter().any(|f| !matches!(f, Factor::Mu(_)))
    }

    pub fn format(&self) -> String {
        if self.factors.is_empty() {
            "1".into()
        } else {
            self.factors
                .iter()
                .map(Factor::format)
                .collect::<Vec<_>>()
                .join(" x ")
        }
    }
}

/// An invariant group with the admissibility of the descriptor it came from.
#[derive(Clone, Debug)]
pub struct Invariant {
    pub group: FinAbGroup,
    pub admissible: bool,
}

fn admissible(f: &FundamentalDescriptor, r: Option<&EtaleExtension>) -> bool {
    f.factors.iter().all(|fac| match (fac, r) {
        (Factor::Res1(m), Some(r)) => gcd(r.degree, *m as usize) == 1,
        _ => true,
    })
}

fn require_ext(r: Option<&EtaleExtension>) -> Result<&EtaleExtension> {
    r.ok_or_else(|| {
        Error::InvalidInput("descriptor with restriction factors needs an extension".into())
    })
}

/// `ker(mBr(R) -> mBr(O_S))`.
pub fn brauer_kernel(d: &HasseDomain, r: &EtaleExtension, m: i128) -> Result<FinAbGroup> {
    let base = BrauerModel::of_domain(d, m)?;
    let ext = BrauerModel::of_extension(r, m)?;
    Ok(corestriction(&ext, &base, &places_of(r))?.kernel().group)
}

/// `i(F)`: the Brauer part.
pub fn i_invariant(
    f: &FundamentalDescriptor,
    d: &HasseDomain,
    r: Option<&EtaleExtension>,
) -> Result<Invariant> {
    let mut g = FinAbGroup::trivial();
    for fac in &f.factors {
        let part = match *fac {
            Factor::Mu(m) => BrauerModel::of_domain(d, m)?.group,
            Factor::Res(m) => BrauerModel::of_extension(require_ext(r)?, m)?.group,
            Factor::Res1(m) => brauer_kernel(d, require_ext(r)?, m)?,
        };
        g = g.direct_sum(&part);
    }
    Ok(Invariant {
        group: g,
        admissible: admissible(f, r),
    })
}

/// `Pic(R)/m`.
pub fn pic_mod_extension(r: &EtaleExtension, m: i128) -> Result<FinAbGroup> {
    match extension_pic(r)? {
        Some(p) => Ok(p.group.quotient_mod(m)),
        None => Err(Error::Unsupported(format!(
            "Pic of {} is not computable",
            r.label()
        ))),
    }
}

/// `ker(Pic(R)/m -> Pic(O_S)/m)`.
pub fn pic_kernel(r: &EtaleExtension, m: i128) -> Result<FinAbGroup> {
    if let ExtensionKind::UserCubic(u) = &r.kind {
        return match &u.pic_kernel {
            Some(inv) if m == 2 => Ok(FinAbGroup::from_invariants(inv)),
            _ => Err(Error::Unsupported(format!(
                "Pic kernel of {} was not supplied",
                r.label()
            ))),
        };
    }
    match extension_pic(r)? {
        Some(p) => Ok(p.norm.mod_m(m).kernel().group),
        None => Err(Error::Unsupported(format!(
            "Pic of {} is not computable",
            r.label()
        ))),
    }
}

/// `j(F)`: the Picard part.
pub fn j_invariant(
    f: &FundamentalDescriptor,
    d: &HasseDomain,
    r: Option<&EtaleExtension>,
) -> Result<Invariant> {
    let mut g = FinAbGroup::trivial();
    for fac in &f.factors {
        let part = match *fac {
            Factor::Mu(m) => pic_group(d)?.group.quotient_mod(m),
            Factor::Res(m) => pic_mod_extension(require_ext(r)?, m)?,
            Factor::Res1(m) => pic_kernel(require_ext(r)?, m)?,
        };
        g = g.direct_sum(&part);
    }
    Ok(Invariant {
        group: g,
        admissible: admissible(f, r),
    })
}

/// Whether the diagram automorphism acts trivially: `2 [A_G] = 0`.
pub fn theta_action_trivial(model: &BrauerModel, tits: &[i128]) -> Result<bool> {
    let x = model.from_invariants(tits)?;
    Ok(model.group.is_zero(&model.group.scale(&x, 2)))
}

/// A count that is exact or only an upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Count {
    pub value: u128,
    pub exact: bool,
}

/// Number of genera: `|i(F)|`, exact when `F` is admissible.
pub fn genus_count(
    f: &FundamentalDescriptor,
    d: &HasseDomain,
    r: Option<&EtaleExtension>,
) -> Result<Count> {
    let i = i_invariant(f, d, r)?;
    Ok(Count {
        value: i.group.order().unwrap(),
        exact: i.admissible,
    })
}

/// Size of the class set: `|j(F)|`.
pub fn class_set_size(
    f: &FundamentalDescriptor,
    d: &HasseDomain,
    r: Option<&EtaleExtension>,
) -> Result<Count> {
    let j = j_invariant(f, d, r)?;
    Ok(Count {
        value: j.group.order().unwrap(),
        exact: j.admissible,
    })
}

/// `|G/~|` for `x ~ -x`.
pub fn orbit_count(g: &FinAbGroup) -> Result<u128> {
    inversion_orbit_count(g)
}
