//! Finitely generated abelian groups as integer relation matrices.
//!
//! Elements are integer row vectors on the generators; `x` is zero in the
//! group iff it lies in the row lattice of the relation matrix. Homomorphisms
//! act on row vectors from the right: `x -> x * M`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i128>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<i128> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[i128]) -> Vec<i128> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * self.get(i, j);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: i128) {
        if c != 0 {
            for j in 0..self.cols {
                let v = self.get(src, j);
                self.data[dst * self.cols + j] += c * v;
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: i128) {
        if c != 0 {
            for i in 0..self.rows {
                let v = self.get(i, src);
                self.data[i * self.cols + dst] += c * v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a.get(k, k) == 0 {
                match (k + 1..n).find(|&i| a.get(i, k) != 0) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k);
        }
        sign * a.get(n - 1, n - 1)
    }
}

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`, nonnegative, zeros last.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<i128>,
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    // each elementary operation is mirrored on the transforms and inverses
    macro_rules! row_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            d.add_row($dst, $src, $k);
            u.add_row($dst, $src, $k);
            u_inv.add_col($src, $dst, -$k);
        }};
    }
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            d.add_col($dst, $src, $k);
            v.add_col($dst, $src, $k);
            v_inv.add_row($src, $dst, -$k);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }

    let n = r.min(c);
    for t in 0..n {
        loop {
            // pivot of smallest absolute value in the trailing block
            let mut best: Option<(usize, usize, i128)> = None;
            for i in t..r {
                for j in t..c {
                    let a = d.get(i, j).abs();
                    if a != 0 && best.is_none_or(|(_, _, b)| a < b) {
                        best = Some((i, j, a));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            row_swap!(t, pi);
            col_swap!(t, pj);
            let mut clean = true;
            let p = d.get(t, t);
            for i in t + 1..r {
                let q = d.get(i, t).div_euclid(p);
                row_add!(i, t, -q);
                if d.get(i, t) != 0 {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = d.get(t, j).div_euclid(p);
                col_add!(j, t, -q);
                if d.get(t, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| d.get(i, j) % p != 0));
            match bad {
                Some(i) => row_add!(t, i, 1),
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    let diag = (0..n).map(|i| d.get(i, i)).collect();
    Snf {
        diag,
        d,
        u,
        u_inv,
        v,
        v_inv,
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A finitely generated abelian group `Z^n / rowspace(R)`.
#[derive(Clone, Debug)]
pub struct FinAbGroup {
    ngens: usize,
    relations: IntMatrix,
    /// Diagonal entry for each generator in Smith coordinates (0 = free).
    diag: Vec<i128>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl PartialEq for FinAbGroup {
    /// Isomorphism of groups, not equality of presentations.
    fn eq(&self, other: &Self) -> bool {
        self.invariants() == other.invariants()
    }
}
impl Eq for FinAbGroup {}

impl FinAbGroup {
    pub fn new(ngens: usize, relations: &[Vec<i128>]) -> Self {
        Self::from_matrix(IntMatrix::from_rows(ngens, relations))
    }

    pub fn from_matrix(relations: IntMatrix) -> Self {
        let ngens = relations.cols;
        let snf = smith_normal_form(&relations);
        let mut diag = vec![0; ngens];
        diag[..snf.diag.len()].copy_from_slice(&snf.diag);
        FinAbGroup {
            ngens,
            relations,
            diag,
            v: snf.v,
            v_inv: snf.v_inv,
        }
    }

    pub fn trivial() -> Self {
        Self::new(0, &[])
    }

    pub fn cyclic(n: i128) -> Self {
        Self::new(1, &[vec![n]])
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, &[])
    }

    /// `Z/d_1 x ... x Z/d_k`, with `0` meaning a copy of `Z`.
    pub fn from_invariants(ds: &[i128]) -> Self {
        let rows: Vec<Vec<i128>> = ds
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut r = vec![0; ds.len()];
                r[i] = d;
                r
            })
            .collect();
        Self::new(ds.len(), &rows)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Invariant factors `d_1 | d_2 | ...` other than 1, with 0 for each free factor (last).
    pub fn invariants(&self) -> Vec<i128> {
        let mut t: Vec<i128> = self
            .diag
            .iter()
            .copied()
            .filter(|&d| d != 1 && d != 0)
            .collect();
        t.sort();
        t.extend(std::iter::repeat_n(0, self.rank()));
        t
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d == 0).count()
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    pub fn order(&self) -> Option<u128> {
        self.is_finite()
            .then(|| self.diag.iter().map(|&d| d as u128).product())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }

    /// Smith coordinates of `x`, reduced into `[0, d_i)` on torsion factors.
    pub fn coords(&self, x: &[i128]) -> Vec<i128> {
        let y = self.v.apply(x);
        y.iter()
            .zip(&self.diag)
            .map(|(&yi, &d)| if d == 0 { yi } else { yi.rem_euclid(d) })
            .collect()
    }

    /// Canonical representative of the class of `x` on the original generators.
    pub fn reduce(&self, x: &[i128]) -> Vec<i128> {
        self.v_inv.apply(&self.coords(x))
    }

    pub fn is_zero(&self, x: &[i128]) -> bool {
        self.coords(x).iter().all(|&c| c == 0)
    }

    pub fn same(&self, x: &[i128], y: &[i128]) -> bool {
        let d: Vec<i128> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    pub fn zero(&self) -> Vec<i128> {
        vec![0; self.ngens]
    }

    pub fn add(&self, x: &[i128], y: &[i128]) -> Vec<i128> {
        self.reduce(&x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>())
    }

    pub fn scale(&self, x: &[i128], k: i128) -> Vec<i128> {
        self.reduce(&x.iter().map(|a| a * k).collect::<Vec<_>>())
    }

    pub fn element_order(&self, x: &[i128]) -> Option<i128> {
        let c = self.coords(x);
        let mut o = 1;
        for (ci, &d) in c.iter().zip(&self.diag) {
            if *ci == 0 {
                continue;
            }
            if d == 0 {
                return None;
            }
            let oi = d / gcd(*ci, d);
            o = o / gcd(o, oi) * oi;
        }
        Some(o)
    }

    /// Every element of a finite group, as canonical representatives.
    pub fn elements(&self) -> Result<Vec<Vec<i128>>> {
        let order = self
            .order()
            .ok_or_else(|| Error::InvalidInput("infinite group".into()))?;
        if order > 1 << 22 {
            return Err(Error::BoundExceeded(format!(
                "group of order {order} too large to enumerate"
            )));
        }
        let mut out = Vec::with_capacity(order as usize);
        let mut y = vec![0i128; self.ngens];
        loop {
            out.push(self.v_inv.apply(&y));
            let mut i = 0;
            loop {
                if i == self.ngens {
                    return Ok(out);
                }
                y[i] += 1;
                if y[i] < self.diag[i] {
                    break;
                }
                y[i] = 0;
                i += 1;
            }
        }
    }

    /// `G / mG`, on the same generators.
    pub fn quotient_mod(&self, m: i128) -> FinAbGroup {
        assert!(m >= 1);
        let mut rows = self.relations.to_rows();
        for i in 0..self.ngens {
            let mut r = vec![0; self.ngens];
            r[i] = m;
            rows.push(r);
        }
        FinAbGroup::new(self.ngens, &rows)
    }

    /// Quotient by the subgroup generated by `elems`, on the same generators.
    pub fn quotient_by(&self, elems: &[Vec<i128>]) -> FinAbGroup {
        let mut rows = self.relations.to_rows();
        rows.extend(elems.iter().cloned());
        FinAbGroup::new(self.ngens, &rows)
    }

    /// Generators of `G[m]` on the original generators.
    pub fn torsion_generators(&self, m: i128) -> Vec<Vec<i128>> {
        let mut gens = Vec::new();
        for (i, &d) in self.diag.iter().enumerate() {
            if d == 0 || d == 1 {
                continue;
            }
            let g = gcd(d, m);
            if g > 1 {
                let mut y = vec![0; self.ngens];
                y[i] = d / g;
                gens.push(self.v_inv.apply(&y));
            }
        }
        gens
    }

    /// `G[m] = {x : m x = 0}` as an abstract group.
    pub fn torsion(&self, m: i128) -> FinAbGroup {
        let ds: Vec<i128> = self
            .diag
            .iter()
            .filter(|&&d| d != 0)
            .map(|&d| gcd(d, m))
            .filter(|&g| g > 1)
            .collect();
        FinAbGroup::from_invariants(&ds)
    }

    /// Elements of `G[m]` on the original generators, in a fixed order
    /// starting with zero.
    pub fn torsion_elements(&self, m: i128) -> Vec<Vec<i128>> {
        let mut ys: Vec<Vec<i128>> = vec![vec![0; self.ngens]];
        for (i, &d) in self.diag.iter().enumerate() {
            if d == 0 || d == 1 {
                continue;
            }
            let g = gcd(d, m);
            let step = d / g;
            let mut next = Vec::new();
            for k in 0..g {
                for y in &ys {
                    let mut y = y.clone();
                    y[i] = k * step;
                    next.push(y);
                }
            }
            ys = next;
        }
        ys.iter().map(|y| self.v_inv.apply(y)).collect()
    }

    pub fn direct_sum(&self, o: &FinAbGroup) -> FinAbGroup {
        let n = self.ngens + o.ngens;
        let mut rows = Vec::new();
        for r in self.relations.to_rows() {
            let mut x = r;
            x.resize(n, 0);
            rows.push(x);
        }
        for r in o.relations.to_rows() {
            let mut x = vec![0; self.ngens];
            x.extend(r);
            rows.push(x);
        }
        FinAbGroup::new(n, &rows)
    }

    pub fn in_lattice(&self, x: &[i128]) -> bool {
        self.is_zero(x)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = self.invariants();
        if inv.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = inv
            .iter()
            .map(|&d| {
                if d == 0 {
                    "Z".to_string()
                } else {
                    format!("Z/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Invariant factors rendered as a compact list, e.g. `[2,4]` or `[]`.
pub fn format_invariants(inv: &[i128]) -> String {
    let parts: Vec<String> = inv.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// A homomorphism given by its values on the source generators.
#[derive(Clone, Debug)]
pub struct AbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

/// A subgroup with its own presentation and the embedding of its generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FinAbGroup,
    /// Images of the subgroup generators in the ambient generators.
    pub gens: Vec<Vec<i128>>,
}

impl AbHom {
    /// Fails unless every source relation maps into the target relation lattice.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows != source.ngens || matrix.cols != target.ngens {
            return Err(Error::InvalidInput(
                "homomorphism matrix has wrong shape".into(),
            ));
        }
        for r in source.relations.to_rows() {
            if !target.is_zero(&matrix.apply(&r)) {
                return Err(Error::InvalidInput(
                    "map does not respect the source relations".into(),
                ));
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn from_images(
        source: FinAbGroup,
        target: FinAbGroup,
        images: &[Vec<i128>],
    ) -> Result<Self> {
        let m = IntMatrix::from_rows(target.ngens, images);
        Self::new(source, target, m)
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        AbHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens),
        }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(source.ngens, target.ngens),
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[i128]) -> Vec<i128> {
        self.target.reduce(&self.matrix.apply(x))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom> {
        AbHom::new(
            self.source.clone(),
            other.target.clone(),
            self.matrix.mul(&other.matrix),
        )
    }

    /// The induced map `G/mG -> H/mH`.
    pub fn mod_m(&self, m: i128) -> AbHom {
        AbHom {
            source: self.source.quotient_mod(m),
            target: self.target.quotient_mod(m),
            matrix: self.matrix.clone(),
        }
    }

    pub fn kernel(&self) -> Subgroup {
        let n = self.source.ngens;
        let k = self.target.ngens;
        // x lies in the preimage lattice iff x * M * V_B vanishes modulo the diagonal
        let phi = self.matrix.mul(&self.target.v);
        let mut block = IntMatrix::zeros(n + k, k);
        for i in 0..n {
            for j in 0..k {
                block.set(i, j, phi.get(i, j));
            }
        }
        for j in 0..k {
            block.set(n + j, j, -self.target.diag[j]);
        }
        let snf = smith_normal_form(&block);
        let rank = snf.diag.iter().filter(|&&d| d != 0).count();
        let spanning: Vec<Vec<i128>> = (rank..n + k).map(|i| snf.u.row(i)[..n].to_vec()).collect();
        // basis of the preimage lattice
        let span = IntMatrix::from_rows(n, &spanning);
        let s2 = smith_normal_form(&span);
        let l = s2.diag.iter().filter(|&&d| d != 0).count();
        let basis: Vec<Vec<i128>> = (0..l)
            .map(|i| s2.v_inv.row(i).iter().map(|v| v * s2.diag[i]).collect())
            .collect();
        // express the source relations in that basis
        let mut coord_rows = Vec::new();
        for r in self.source.relations.to_rows() {
            let w = s2.v.apply(&r);
            let c: Vec<i128> = (0..l)
                .map(|i| {
                    debug_assert_eq!(w[i] % s2.diag[i], 0);
                    w[i] / s2.diag[i]
                })
                .collect();
            debug_assert!(w[l..].iter().all(|&x| x == 0));
            coord_rows.push(c);
        }
        Subgroup {
            group: FinAbGroup::new(l, &coord_rows),
            gens: basis,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    /// Some `x` with `self(x) = y`, if `y` lies in the image.
    pub fn preimage(&self, y: &[i128]) -> Option<Vec<i128>> {
        let n = self.source.ngens;
        let k = self.target.ngens;
        let phi = self.matrix.mul(&self.target.v);
        let mut block = IntMatrix::zeros(n + k, k);
        for i in 0..n {
            for j in 0..k {
                block.set(i, j, phi.get(i, j));
            }
        }
        for j in 0..k {
            block.set(n + j, j, -self.target.diag[j]);
        }
        let snf = smith_normal_form(&block);
        let t = snf.v.apply(&self.target.v.apply(y));
        let mut w = vec![0i128; n + k];
        for j in 0..k {
            let d = snf.diag[j];
            if d == 0 {
                if t[j] != 0 {
                    return None;
                }
            } else {
                if t[j] % d != 0 {
                    return None;
                }
                w[j] = t[j] / d;
            }
        }
        let x = snf.u.apply(&w);
        Some(x[..n].to_vec())
    }
}

/// Orbits of `x -> -x` on a finite group, by Burnside: `(|G| + |G[2]|) / 2`.
pub fn inversion_orbit_count(g: &FinAbGroup) -> Result<u128> {
    let n = g
        .order()
        .ok_or_else(|| Error::InvalidInput("inversion orbits need a finite group".into()))?;
    let t = g.torsion(2).order().unwrap();
    Ok((n + t) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i128]]) -> IntMatrix {
        let c = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(c, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn snf_small_examples() {
        assert_eq!(
            smith_normal_form(&mat(&[&[2, 0], &[0, 4]])).diag,
            vec![2, 4]
        );
        assert_eq!(
            smith_normal_form(&mat(&[&[2, 0], &[0, 3]])).diag,
            vec![1, 6]
        );
        assert_eq!(
            smith_normal_form(&mat(&[&[0, 0], &[0, 0]])).diag,
            vec![0, 0]
        );
    }

    #[test]
    fn snf_recomposes() {
        let m = mat(&[&[4, 6, 2], &[2, -8, 14], &[6, 10, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(3));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
        assert_eq!(s.u.det().abs(), 1);
    }

    #[test]
    fn quotient_and_torsion_examples() {
        let z4 = FinAbGroup::cyclic(4);
        assert_eq!(z4.quotient_mod(2).invariants(), vec![2]);
        assert!(z4.quotient_mod(3).is_trivial());
        assert_eq!(z4.torsion(2).invariants(), vec![2]);
        assert!(z4.torsion(3).is_trivial());
        let g = FinAbGroup::from_invariants(&[0, 6]);
        assert_eq!(g.quotient_mod(4).invariants(), vec![2, 4]);
        let h = FinAbGroup::from_invariants(&[6, 6]);
        assert_eq!(h.torsion(2).invariants(), vec![2, 2]);
    }

    #[test]
    fn kernels() {
        let z4 = FinAbGroup::cyclic(4);
        assert!(AbHom::identity(&z4).kernel().group.is_trivial());
        assert_eq!(AbHom::zero(&z4, &z4).kernel().group.invariants(), vec![4]);
        let src = FinAbGroup::from_invariants(&[2, 2, 2]);
        let sum =
            AbHom::from_images(src, FinAbGroup::cyclic(2), &[vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(sum.kernel().group.invariants(), vec![2, 2]);
        // Z/6 -> Z/6, x -> 2x has kernel {0,3}
        let z6 = FinAbGroup::cyclic(6);
        let dbl = AbHom::from_images(z6.clone(), z6, &[vec![2]]).unwrap();
        let k = dbl.kernel();
        assert_eq!(k.group.invariants(), vec![2]);
        assert_eq!(dbl.apply(&k.gens[0]), vec![0]);
    }

    #[test]
    fn ill_defined_hom_rejected() {
        let z4 = FinAbGroup::cyclic(4);
        let z3 = FinAbGroup::cyclic(3);
        assert!(AbHom::from_images(z4, z3, &[vec![1]]).is_err());
    }

    #[test]
    fn inversion_orbits() {
        assert_eq!(inversion_orbit_count(&FinAbGroup::cyclic(3)).unwrap(), 2);
        assert_eq!(inversion_orbit_count(&FinAbGroup::cyclic(2)).unwrap(), 2);
        assert_eq!(inversion_orbit_count(&FinAbGroup::cyclic(5)).unwrap(), 3);
        assert!(inversion_orbit_count(&FinAbGroup::free(1)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            FinAbGroup::from_invariants(&[4, 2, 1, 0]).to_string(),
            "Z/2 x Z/4 x Z"
        );
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
    }
}
