//! A single classification job and the golden example suite.

use twistforms::classify::{classify, ClassifyOptions, GroupSpec};
use twistforms::covers::{constant_extension, user_cubic, UserCubic};
use twistforms::curve::{CurveModel, DEFAULT_ENUM_BOUND};
use twistforms::ff::HARD_FIELD_BOUND;
use twistforms::hasse::{pic_group, unit_group_with, HasseDomain};
use twistforms::report::TwistReport;
use twistforms::typea::{
    norm_surjectivity, sl1_twist_report, QuaternionAlgebra, DEFAULT_NORM_BOUND,
};
use twistforms::{Error, Result};

pub const SIZE_CAP_VAR: &str = "TWISTFORMS_SIZE_CAP";
pub const DEFAULT_ENUM_CLASSES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "kv" => Ok(Format::Structured),
            _ => Err(Error::Parse(format!(
                "unknown format {s:?} (text or structured)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub curve: String,
    pub places: String,
    pub group: String,
    pub tits: Option<String>,
    pub cubic: Vec<String>,
    pub quaternion: Option<String>,
    pub tilde: Option<bool>,
    /// Largest number of quadratic classes to enumerate.
    pub bound_enum: usize,
    pub bound_norm: usize,
    pub format: Format,
}

impl JobSpec {
    pub fn new(curve: &str, places: &str, group: &str) -> Self {
        JobSpec {
            curve: curve.into(),
            places: places.into(),
            group: group.into(),
            tits: None,
            cubic: vec![],
            quaternion: None,
            tilde: None,
            bound_enum: DEFAULT_ENUM_CLASSES,
            bound_norm: DEFAULT_NORM_BOUND,
            format: Format::Text,
        }
    }
}

/// Global cap on the size of fields enumerated, from the environment.
pub fn size_cap() -> Result<u64> {
    match std::env::var(SIZE_CAP_VAR) {
        Ok(v) => {
            let cap: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{SIZE_CAP_VAR}={v:?} is not a number")))?;
            Ok(cap.min(HARD_FIELD_BOUND))
        }
        Err(_) => Ok(DEFAULT_ENUM_BOUND),
    }
}

fn parse_tits(s: &str) -> Result<Vec<i128>> {
    let s = s.trim();
    let s = s.strip_prefix("tits=").unwrap_or(s);
    let body = s
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("Tits class must look like [c1,...], got {s:?}")))?;
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<i128>()
                .map_err(|_| Error::Parse(format!("bad Tits invariant {t:?}")))
        })
        .collect()
}

fn check_sizes(d: &HasseDomain, cap: u64) -> Result<()> {
    let q = d.curve().q();
    for p in d.places() {
        let size = (q as u128).pow(2 * p.degree as u32);
        if size > cap as u128 {
            return Err(Error::BoundExceeded(format!(
                "place {} needs F_{{{q}^{}}}, above the size cap {cap}",
                p.format(d.curve()),
                2 * p.degree
            )));
        }
    }
    Ok(())
}

fn quadratic_class_count(d: &HasseDomain) -> Result<usize> {
    let pos = pic_group(d)?;
    let units = unit_group_with(d, &pos)?;
    let tors = pos.group.torsion(2).order().unwrap_or(u128::MAX) as usize;
    Ok(tors.saturating_mul(1 << (1 + units.rank).min(63)))
}

pub fn run_report(job: &JobSpec, cap: u64) -> Result<TwistReport> {
    let curve = CurveModel::parse(&job.curve)?;
    if curve.q() > cap {
        return Err(Error::BoundExceeded(format!(
            "q = {} exceeds the size cap {cap}",
            curve.q()
        )));
    }
    let d = HasseDomain::parse(curve, &job.places)?;
    check_sizes(&d, cap)?;
    let spec = GroupSpec::parse(&job.group)?;
    if let Some(qs) = &job.quaternion {
        if !spec.sl1 {
            return Err(Error::InvalidInput(
                "--quaternion needs the group A1-SL1".into(),
            ));
        }
        let alg = QuaternionAlgebra::parse(d, qs)?;
        let bound = qs
            .split_whitespace()
            .find_map(|t| t.strip_prefix("bound="))
            .map(|b| {
                b.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad norm bound {b:?}")))
            })
            .transpose()?
            .unwrap_or(job.bound_norm);
        let verdict = norm_surjectivity(&alg, bound)?;
        return sl1_twist_report(&alg, &verdict);
    }
    if spec.sl1 {
        return Err(Error::InvalidInput(
            "A1-SL1 needs --quaternion \"a=.. b=..\"".into(),
        ));
    }
    if spec.letter != 'A'
        && !matches!(
            (spec.letter, spec.rank),
            ('B', _) | ('C', _) | ('E', 7) | ('E', 8) | ('F', 4) | ('G', 2)
        )
    {
        let n = quadratic_class_count(&d)?;
        if n > job.bound_enum {
            return Err(Error::BoundExceeded(format!(
                "{n} quadratic classes exceed the enumeration bound {}",
                job.bound_enum
            )));
        }
    }
    let mut opts = ClassifyOptions {
        tilde: job.tilde,
        ..Default::default()
    };
    if let Some(t) = &job.tits {
        opts.tits = Some(parse_tits(t)?);
    }
    for c in &job.cubic {
        let c = c.trim();
        let r = if c == "constant" {
            constant_extension(&d, 3)?
        } else {
            user_cubic(&d, UserCubic::parse(c.strip_prefix("user:").unwrap_or(c))?)?
        };
        opts.cubic.push(r);
    }
    if !opts.cubic.is_empty() && (spec.letter, spec.rank) != ('D', 4) {
        return Err(Error::InvalidInput("cubic data only applies to D4".into()));
    }
    classify(&spec, &d, &opts)
}

pub fn run(job: &JobSpec, cap: u64) -> Result<String> {
    let rep = run_report(job, cap)?;
    Ok(match job.format {
        Format::Text => rep.to_text(),
        Format::Structured => rep.to_kv(),
    })
}

pub struct GoldenJob {
    pub name: &'static str,
    pub job: JobSpec,
    pub expected: &'static str,
}

fn with_quaternion(mut j: JobSpec, q: &str) -> JobSpec {
    j.quaternion = Some(q.into());
    j
}

pub fn golden_jobs() -> Vec<GoldenJob> {
    let e6 = "elliptic q=3 a=[0,0,0,1,1]";
    vec![
        GoldenJob {
            name: "e6-elliptic",
            job: JobSpec::new(e6, "inf", "E6-adjoint"),
            expected: include_str!("../golden/e6-elliptic.txt"),
        },
        GoldenJob {
            name: "so10-q3",
            job: JobSpec::new("P1 q=3", "inf", "2D5-intermediate"),
            expected: include_str!("../golden/so10-q3.txt"),
        },
        GoldenJob {
            name: "so10-q7",
            job: JobSpec::new("P1 q=7", "inf", "2D5-intermediate"),
            expected: include_str!("../golden/so10-q7.txt"),
        },
        GoldenJob {
            name: "so10-laurent-q3",
            job: JobSpec::new("P1 q=3", "poly:x,inf", "2D5-intermediate"),
            expected: include_str!("../golden/so10-laurent-q3.txt"),
        },
        GoldenJob {
            name: "sl1-twisted",
            job: with_quaternion(JobSpec::new("P1 q=3", "poly:t,inf", "A1-SL1"), "a=-1 b=-t"),
            expected: include_str!("../golden/sl1-twisted.txt"),
        },
        GoldenJob {
            name: "sl1-sums-of-squares",
            job: with_quaternion(JobSpec::new("P1 q=3", "poly:t,inf", "A1-SL1"), "a=-1 b=-1"),
            expected: include_str!("../golden/sl1-sums-of-squares.txt"),
        },
        GoldenJob {
            name: "e8-line",
            job: JobSpec::new("P1 q=3", "inf", "E8"),
            expected: include_str!("../golden/e8-line.txt"),
        },
    ]
}

/// First differing line, as a short diff.
pub fn diff(expected: &str, actual: &str) -> Option<String> {
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i).copied(), a.get(i).copied());
        if x != y {
            return Some(format!(
                "line {}:\n- {}\n+ {}",
                i + 1,
                x.unwrap_or("<missing>"),
                y.unwrap_or("<missing>")
            ));
        }
    }
    None
}
