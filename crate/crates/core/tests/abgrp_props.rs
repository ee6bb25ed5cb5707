//! Presentation-based group computations against a brute-force coset model.
//!
//! The oracle works in `(Z/N)^n` with `N = |det R|`, which contains the
//! relation lattice, and labels every vector by its coset explicitly.

use proptest::prelude::*;
use twistforms::abgrp::{inversion_orbit_count, smith_normal_form, AbHom, FinAbGroup, IntMatrix};

struct CosetModel {
    n: usize,
    modulus: i128,
    /// coset label of every vector of `(Z/N)^n`, indexed in base `N`
    label: Vec<usize>,
    cosets: usize,
}

fn index(v: &[i128], modulus: i128) -> usize {
    v.iter().rev().fold(0usize, |acc, &c| {
        acc * modulus as usize + c.rem_euclid(modulus) as usize
    })
}

fn vector(mut i: usize, n: usize, modulus: i128) -> Vec<i128> {
    (0..n)
        .map(|_| {
            let c = (i % modulus as usize) as i128;
            i /= modulus as usize;
            c
        })
        .collect()
}

impl CosetModel {
    fn new(rows: &[Vec<i128>], n: usize, modulus: i128) -> Self {
        let total = (modulus as usize).pow(n as u32);
        // closure of the lattice mod N
        let mut in_h = vec![false; total];
        in_h[0] = true;
        let mut h = vec![vec![0i128; n]];
        let mut k = 0;
        while k < h.len() {
            let x = h[k].clone();
            for r in rows {
                let y: Vec<i128> = x
                    .iter()
                    .zip(r)
                    .map(|(a, b)| (a + b).rem_euclid(modulus))
                    .collect();
                let iy = index(&y, modulus);
                if !in_h[iy] {
                    in_h[iy] = true;
                    h.push(y);
                }
            }
            k += 1;
        }
        let mut label = vec![usize::MAX; total];
        let mut cosets = 0;
        for i in 0..total {
            if label[i] != usize::MAX {
                continue;
            }
            let x = vector(i, n, modulus);
            for hv in &h {
                let y: Vec<i128> = x.iter().zip(hv).map(|(a, b)| a + b).collect();
                label[index(&y, modulus)] = cosets;
            }
            cosets += 1;
        }
        CosetModel {
            n,
            modulus,
            label,
            cosets,
        }
    }

    fn class(&self, v: &[i128]) -> usize {
        self.label[index(v, self.modulus)]
    }

    fn reps(&self) -> Vec<Vec<i128>> {
        let mut seen = vec![false; self.cosets];
        let mut out = Vec::new();
        for i in 0..self.label.len() {
            if !seen[self.label[i]] {
                seen[self.label[i]] = true;
                out.push(vector(i, self.n, self.modulus));
            }
        }
        out
    }

    fn torsion_count(&self, m: i128) -> usize {
        let zero = self.class(&vec![0; self.n]);
        self.reps()
            .iter()
            .filter(|x| self.class(&x.iter().map(|a| a * m).collect::<Vec<_>>()) == zero)
            .count()
    }

    fn multiples_count(&self, m: i128) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        for x in self.reps() {
            seen.insert(self.class(&x.iter().map(|a| a * m).collect::<Vec<_>>()));
        }
        seen.len()
    }

    fn inversion_orbits(&self) -> usize {
        let mut orbits = std::collections::BTreeSet::new();
        for x in self.reps() {
            let a = self.class(&x);
            let b = self.class(&x.iter().map(|c| -c).collect::<Vec<_>>());
            orbits.insert((a.min(b), a.max(b)));
        }
        orbits.len()
    }
}

fn presentation() -> impl Strategy<Value = (usize, Vec<Vec<i128>>)> {
    (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(-6i128..=6, n), n)
            .prop_map(move |rows| (n, rows))
    })
}

fn usable(n: usize, rows: &[Vec<i128>]) -> Option<i128> {
    let det = IntMatrix::from_rows(n, rows).det().abs();
    let ok = (1..=200).contains(&det) && (det as u64).pow(n as u32) <= 60_000;
    ok.then_some(det)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_recomposition_and_unimodularity(rows in proptest::collection::vec(proptest::collection::vec(-20i128..=20, 4), 4)) {
        let m = IntMatrix::from_rows(4, &rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.det().abs(), 1);
        prop_assert_eq!(s.v.det().abs(), 1);
        for w in s.diag.windows(2) {
            prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        }
    }

    #[test]
    fn quotient_torsion_and_orbits_match_cosets((n, rows) in presentation(), m in 1i128..=6) {
        let Some(det) = usable(n, &rows) else { return Ok(()); };
        let g = FinAbGroup::new(n, &rows);
        let oracle = CosetModel::new(&rows, n, det);
        prop_assert_eq!(g.order().unwrap() as usize, oracle.cosets);
        let q = g.quotient_mod(m).order().unwrap() as usize;
        let t = g.torsion(m).order().unwrap() as usize;
        prop_assert_eq!(q, oracle.cosets / oracle.multiples_count(m));
        prop_assert_eq!(t, oracle.torsion_count(m));
        prop_assert_eq!(q, t);
        prop_assert_eq!(g.torsion_elements(m).len(), t);
        if oracle.cosets <= 64 {
            prop_assert_eq!(inversion_orbit_count(&g).unwrap() as usize, oracle.inversion_orbits());
        }
    }

    #[test]
    fn kernel_to_cyclic_matches_cosets((n, rows) in presentation(), w in proptest::collection::vec(0i128..12, 3), k in 1i128..=12) {
        let Some(det) = usable(n, &rows) else { return Ok(()); };
        let w = &w[..n];
        if rows.iter().any(|r| r.iter().zip(w).map(|(a, b)| a * b).sum::<i128>() % k != 0) {
            return Ok(());
        }
        let g = FinAbGroup::new(n, &rows);
        let images: Vec<Vec<i128>> = w.iter().map(|&c| vec![c]).collect();
        let hom = AbHom::from_images(g, FinAbGroup::cyclic(k), &images).unwrap();
        let ker = hom.kernel();
        let oracle = CosetModel::new(&rows, n, det);
        let brute = oracle.reps().iter().filter(|x| x.iter().zip(w).map(|(a, b)| a * b).sum::<i128>() % k == 0).count();
        prop_assert_eq!(ker.group.order().unwrap() as usize, brute);
        for gen in &ker.gens {
            prop_assert!(hom.apply(gen).iter().all(|&c| c == 0));
        }
    }
}

#[test]
fn burnside_matches_enumeration_for_all_small_cyclic_products() {
    for a in 1..=8i128 {
        for b in 1..=8i128 {
            if a * b > 64 {
                continue;
            }
            let rows = vec![vec![a, 0], vec![0, b]];
            let oracle = CosetModel::new(&rows, 2, a * b);
            let g = FinAbGroup::new(2, &rows);
            assert_eq!(
                inversion_orbit_count(&g).unwrap() as usize,
                oracle.inversion_orbits(),
                "Z/{a} x Z/{b}"
            );
        }
    }
}
