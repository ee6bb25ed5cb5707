//! Property tests for the arithmetic, geometry and counting layers.

use proptest::prelude::*;
use twistforms::abgrp::{AbHom, FinAbGroup};
use twistforms::brauer::{orbit_count, BrauerModel};
use twistforms::classify::{classify, ClassifyOptions, GroupSpec};
use twistforms::curve::CurveModel;
use twistforms::ff::{extension, FiniteField, Fq};
use twistforms::hasse::HasseDomain;
use twistforms::poly::Poly;
use twistforms::typea::QuaternionAlgebra;

fn field(q: u32) -> FiniteField {
    let (p, k) = match q {
        9 => (3, 2),
        25 => (5, 2),
        27 => (3, 3),
        _ => (q, 1),
    };
    FiniteField::new(p, k).unwrap()
}

fn elem(f: &FiniteField, i: u32) -> Fq {
    f.from_index(i % f.size())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_operations_are_consistent(q in prop::sample::select(vec![3u32, 5, 7, 9, 25, 27]), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(q);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if let Some(ia) = f.inv(a) {
            prop_assert_eq!(f.mul(a, ia), f.one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pow(a, f.size() as u64), a);
    }

    #[test]
    fn embeddings_are_ring_maps(q in prop::sample::select(vec![3u32, 5, 9]), m in 2usize..=3, a in any::<u32>(), b in any::<u32>()) {
        let f = field(q);
        let (big, e) = extension(&f, m).unwrap();
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(e.apply(f.add(a, b)), big.add(e.apply(a), e.apply(b)));
        prop_assert_eq!(e.apply(f.mul(a, b)), big.mul(e.apply(a), e.apply(b)));
        prop_assert_eq!(e.preimage(e.apply(a)), Some(a));
    }

    #[test]
    fn elliptic_curves_obey_hasse_weil(q in prop::sample::select(vec![3u32, 5, 7, 11, 9]), a4 in any::<u32>(), a6 in any::<u32>(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let f = field(q);
        let a = [Fq::ZERO, Fq::ZERO, Fq::ZERO, elem(&f, a4), elem(&f, a6)];
        let Ok(c) = CurveModel::weierstrass(f, a) else { return Ok(()) };
        let n1 = c.count_points(1).unwrap() as i64;
        let q = q as i64;
        prop_assert!((n1 - q - 1).pow(2) <= 4 * q);
        let l = c.l_polynomial().unwrap();
        prop_assert_eq!(l.predicted_count(1), n1);
        prop_assert_eq!(l.predicted_count(2), c.count_points(2).unwrap() as i64);
        prop_assert_eq!(l.class_number(), n1);

        let ec = c.over(1).unwrap();
        let pts = ec.points();
        let (p, r, s) = (*i.get(&pts), *j.get(&pts), *k.get(&pts));
        let l = ec.add(ec.add(p, r).unwrap(), s).unwrap();
        let rr = ec.add(p, ec.add(r, s).unwrap()).unwrap();
        prop_assert_eq!(l, rr);
        prop_assert_eq!(ec.add(p, ec.neg(p).unwrap()).unwrap(), twistforms::curve::Point::O);
        prop_assert_eq!(n1 % ec.order(p).unwrap() as i64, 0);
    }

    #[test]
    fn brauer_model_sizes(m in 2i128..=4, blocks in prop::collection::vec(1usize..=3, 1..=3)) {
        let b = BrauerModel::new(m, blocks.clone()).unwrap();
        let expect: u128 = blocks.iter().map(|&n| m.pow(n as u32 - 1) as u128).product();
        prop_assert_eq!(b.order(), expect);
        for x in b.group().elements().unwrap() {
            let v = b.to_invariants(&x);
            prop_assert_eq!(v.len(), b.places());
            let mut start = 0;
            for &n in &blocks {
                prop_assert_eq!(v[start..start + n].iter().sum::<i128>().rem_euclid(m), 0);
                start += n;
            }
            let back = b.from_invariants(&v).unwrap();
            prop_assert!(b.group().same(&back, &x));
        }
    }

    #[test]
    fn preimage_inverts_apply(src in prop::collection::vec(1i128..=6, 1..=3), tgt in prop::collection::vec(1i128..=6, 1..=3), entries in prop::collection::vec(-5i128..=5, 9), x in prop::collection::vec(-10i128..=10, 3)) {
        let s = FinAbGroup::from_invariants(&src);
        let t = FinAbGroup::from_invariants(&tgt);
        // d_i * image_i must vanish in the target
        let images: Vec<Vec<i128>> = (0..s.ngens())
            .map(|i| (0..t.ngens()).map(|j| entries[i * 3 + j] * (tgt[j] / gcd(tgt[j], src[i]))).collect())
            .collect();
        let Ok(h) = AbHom::from_images(s.clone(), t.clone(), &images) else { return Ok(()) };
        let x = &x[..s.ngens()];
        let y = h.apply(x);
        let pre = h.preimage(&y);
        prop_assert!(pre.is_some());
        prop_assert!(t.same(&h.apply(&pre.unwrap()), &y));
        let ker = h.kernel();
        let img = s.order().unwrap() / ker.group.order().unwrap();
        let brute_img = {
            let mut seen: Vec<Vec<i128>> = vec![];
            for e in s.elements().unwrap() {
                let v = t.reduce(&h.apply(&e));
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
            seen.len() as u128
        };
        prop_assert_eq!(img, brute_img);
    }

    #[test]
    fn quotient_and_torsion_agree(inv in prop::collection::vec(1i128..=12, 1..=3), m in 2i128..=6) {
        let g = FinAbGroup::from_invariants(&inv);
        prop_assert_eq!(g.quotient_mod(m).order(), g.torsion(m).order());
    }

    #[test]
    fn orbit_count_bounds(inv in prop::collection::vec(1i128..=8, 1..=3)) {
        let g = FinAbGroup::from_invariants(&inv);
        let n = g.order().unwrap();
        let o = orbit_count(&g).unwrap();
        prop_assert!(2 * o >= n && o <= n);
        prop_assert_eq!(2 * o - n, g.torsion(2).order().unwrap());
    }

    #[test]
    fn reduced_norm_is_multiplicative(alg in 0usize..4, xs in prop::collection::vec(prop::collection::vec(0u32..3, 3), 8)) {
        let c = CurveModel::parse("P1 q=3").unwrap();
        let d = HasseDomain::parse(c, "poly:x,inf").unwrap();
        let f = d.curve().field().clone();
        let minus = Poly::constant(f.neg(f.one()));
        let t = Poly::x();
        let mt = t.neg(&f);
        let (spec, pa, pb) = [
            ("a=-1 b=-x", &minus, &mt),
            ("a=x b=-1", &t, &minus),
            ("a=-x b=x", &mt, &t),
            ("a=-1 b=-1", &minus, &minus),
        ][alg];
        let q = QuaternionAlgebra::parse(d, spec).unwrap();
        let poly = |c: &Vec<u32>| Poly::from_coeffs(c.iter().map(|&v| f.from_int(v as i64)).collect());
        let x: [Poly; 4] = std::array::from_fn(|i| poly(&xs[i]));
        let y: [Poly; 4] = std::array::from_fn(|i| poly(&xs[i + 4]));
        let z = qmul(&f, pa, pb, &x, &y);
        prop_assert_eq!(q.reduced_norm(&z), q.reduced_norm(&x).mul(&f, &q.reduced_norm(&y)));
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Product in the quaternion algebra with `i^2 = a`, `j^2 = b`, `k = ij`.
fn qmul(f: &FiniteField, a: &Poly, b: &Poly, x: &[Poly; 4], y: &[Poly; 4]) -> [Poly; 4] {
    let m = |p: &Poly, q: &Poly| p.mul(f, q);
    let ab = m(a, b);
    [
        m(&x[0], &y[0])
            .add(f, &m(a, &m(&x[1], &y[1])))
            .add(f, &m(b, &m(&x[2], &y[2])))
            .sub(f, &m(&ab, &m(&x[3], &y[3]))),
        m(&x[0], &y[1])
            .add(f, &m(&x[1], &y[0]))
            .sub(f, &m(b, &m(&x[2], &y[3])))
            .add(f, &m(b, &m(&x[3], &y[2]))),
        m(&x[0], &y[2])
            .add(f, &m(&x[2], &y[0]))
            .add(f, &m(a, &m(&x[1], &y[3])))
            .sub(f, &m(a, &m(&x[3], &y[1]))),
        m(&x[0], &y[3])
            .add(f, &m(&x[3], &y[0]))
            .add(f, &m(&x[1], &y[2]))
            .sub(f, &m(&x[2], &y[1])),
    ]
}

const LINE_PLACES: [&str; 5] = ["inf", "(0)", "(1)", "poly:x^2+1", "(2)"];

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    /// Removing one more place never decreases the count for split types.
    #[test]
    fn split_counts_grow_with_s(ty in prop::sample::select(vec!["B3-adjoint", "C2-adjoint", "E7-adjoint", "G2"]), n in 1usize..=3, start in 0usize..5) {
        let c = CurveModel::parse("P1 q=3").unwrap();
        let spec = GroupSpec::parse(ty).unwrap();
        let pick = |k: usize| (0..k).map(|i| LINE_PLACES[(start + i) % 5]).collect::<Vec<_>>().join(",");
        let small = HasseDomain::parse(c.clone(), &pick(n)).unwrap();
        let big = HasseDomain::parse(c, &pick(n + 1)).unwrap();
        let a = classify(&spec, &small, &ClassifyOptions::default()).unwrap().total.unwrap();
        let b = classify(&spec, &big, &ClassifyOptions::default()).unwrap().total.unwrap();
        prop_assert!(b >= a);
    }

    /// Every component size of a report is at least 1 and the total is their sum.
    #[test]
    fn report_total_is_sum_of_components(ty in prop::sample::select(vec!["D5-adjoint", "E6-adjoint", "B2-adjoint", "2D5-intermediate"]), n in 1usize..=2, start in 0usize..5) {
        let c = CurveModel::parse("P1 q=3").unwrap();
        let spec = GroupSpec::parse(ty).unwrap();
        let places = (0..n).map(|i| LINE_PLACES[(start + i) % 5]).collect::<Vec<_>>().join(",");
        let d = HasseDomain::parse(c, &places).unwrap();
        let rep = classify(&spec, &d, &ClassifyOptions { tilde: Some(true), ..Default::default() }).unwrap();
        let sizes: Vec<u128> = rep.components.iter().map(|c| c.size.unwrap()).collect();
        prop_assert!(sizes.iter().all(|&s| s >= 1));
        prop_assert_eq!(rep.total, Some(sizes.iter().sum()));
    }
}
