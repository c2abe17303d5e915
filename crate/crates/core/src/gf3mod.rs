//! Small modules over GF(3) and their invariant quadratic forms.
//!
//! Vectors are rows and act on the right: `v ↦ v·M(g)`, so
//! `M(g*h) = M(g)·M(h)` with `g*h` meaning "first `g`, then `h`".

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::nullspace_mod_p;
use crate::perm::{GeneratedGroup, Permutation};

const P: u8 = 3;

fn add(a: u8, b: u8) -> u8 {
    (a + b) % P
}

fn mul(a: u8, b: u8) -> u8 {
    (a * b) % P
}

fn neg(a: u8) -> u8 {
    (P - a % P) % P
}

/// Dense matrix over GF(3).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GF3Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GF3Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        GF3Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod 3 (negative values allowed).
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|x| x.rem_euclid(P as i64) as u8).collect();
        Ok(GF3Matrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % P;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &GF3Matrix) -> GF3Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add(out.get(i, j), mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `v·M`.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        (0..self.cols).map(|j| (0..self.rows).fold(0, |acc, i| add(acc, mul(v[i], self.get(i, j))))).collect()
    }

    pub fn determinant(&self) -> u8 {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<u8>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = 1u8;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
            if p != c {
                m.swap(p, c);
                det = neg(det);
            }
            det = mul(det, m[c][c]);
            // inverse of 1 is 1, of 2 is 2
            let inv = m[c][c];
            for r in c + 1..n {
                let f = mul(m[r][c], inv);
                if f != 0 {
                    for k in c..n {
                        m[r][k] = add(m[r][k], neg(mul(f, m[c][k])));
                    }
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.determinant() != 0
    }

    /// Dimension of `{v : v·M = v}`.
    pub fn fixed_space_dim(&self) -> usize {
        let n = self.rows;
        let mut d = self.clone();
        for i in 0..n {
            let v = add(d.get(i, i), neg(1));
            d.set(i, i, v);
        }
        // v (M - I) = 0  ⇔  (M - I)ᵀ vᵀ = 0
        let t: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| d.get(i, j) as u64).collect()).collect();
        nullspace_mod_p(&t, n, P as u64).len()
    }
}

/// Rank of a list of vectors over GF(3).
pub fn rank(vectors: &[Vec<u8>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    // rank = dim - nullity of the matrix with the vectors as rows
    let a: Vec<Vec<u64>> = vectors.iter().map(|v| v.iter().map(|&x| x as u64).collect()).collect();
    dim - nullspace_mod_p(&a, dim, P as u64).len()
}

/// Every vector of GF(3)^dim in lexicographic order.
pub fn all_vectors(dim: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..P).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Scales so that the first nonzero entry is 1.
pub fn normalize_line(v: &[u8]) -> Vec<u8> {
    match v.iter().find(|x| **x != 0) {
        Some(&2) => v.iter().map(|&x| mul(x, 2)).collect(),
        _ => v.to_vec(),
    }
}

/// Normalized representatives of the one-dimensional subspaces.
pub fn all_lines(dim: usize) -> Vec<Vec<u8>> {
    all_vectors(dim).into_iter().filter(|v| v.iter().any(|x| *x != 0) && normalize_line(v) == *v).collect()
}

fn dot(a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (x, y)| add(acc, mul(*x, *y)))
}

/// A group acting linearly, with a matrix for every element.
#[derive(Clone, Debug)]
pub struct GModule {
    group: GeneratedGroup,
    dim: usize,
    generator_matrices: Vec<GF3Matrix>,
    /// Indexed like `group.elements()`.
    element_matrices: Vec<GF3Matrix>,
}

impl GModule {
    /// Extends generator matrices to all elements, failing if two words for
    /// the same element give different matrices.
    pub fn new(group: GeneratedGroup, dim: usize, generator_matrices: Vec<GF3Matrix>) -> Result<Self> {
        if generator_matrices.len() != group.generators().len() {
            return Err(Error::Shape("one matrix per generator is required".into()));
        }
        if generator_matrices.iter().any(|m| m.rows != dim || m.cols != dim || !m.is_invertible()) {
            return Err(Error::Shape(format!("generator matrices must be invertible {dim}×{dim}")));
        }
        let n = group.order();
        let mut mats: Vec<Option<GF3Matrix>> = vec![None; n];
        mats[0] = Some(GF3Matrix::identity(dim));
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            let me = mats[e].clone().unwrap_or_else(|| GF3Matrix::identity(dim));
            for (s, ms) in group.generators().iter().zip(&generator_matrices) {
                let prod = group.elements()[e].compose(s);
                let idx = group.index_of(&prod).ok_or(Error::NotMember("product of generators"))?;
                let m = me.mul(ms);
                match &mats[idx] {
                    Some(existing) if *existing != m => {
                        return Err(Error::Inconsistent(format!("action is not a homomorphism at {prod}")));
                    }
                    Some(_) => {}
                    None => {
                        mats[idx] = Some(m);
                        queue.push(idx);
                    }
                }
            }
        }
        let element_matrices = mats.into_iter().map(|m| m.unwrap_or_else(|| GF3Matrix::identity(dim))).collect();
        Ok(GModule { group, dim, generator_matrices, element_matrices })
    }

    /// The trivial action on GF(3)^dim.
    pub fn trivial(group: GeneratedGroup, dim: usize) -> Result<Self> {
        let mats = vec![GF3Matrix::identity(dim); group.generators().len()];
        Self::new(group, dim, mats)
    }

    pub fn group(&self) -> &GeneratedGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrices(&self) -> &[GF3Matrix] {
        &self.generator_matrices
    }

    pub fn matrix(&self, g: &Permutation) -> Result<&GF3Matrix> {
        let i = self.group.index_of(g).ok_or(Error::NotMember("module element"))?;
        Ok(&self.element_matrices[i])
    }

    /// Pairs `(g, h)` of element indices with `M(g*h) ≠ M(g)·M(h)`.
    pub fn homomorphism_failures(&self, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let els = self.group.elements();
        pairs
            .iter()
            .copied()
            .filter(|&(a, b)| {
                let prod = els[a].compose(&els[b]);
                let i = self.group.index_of(&prod).unwrap_or(0);
                self.element_matrices[i] != self.element_matrices[a].mul(&self.element_matrices[b])
            })
            .collect()
    }

    fn line_image(&self, line: &[u8], m: &GF3Matrix) -> Vec<u8> {
        normalize_line(&m.apply(line))
    }

    /// Dimension of the submodule generated by `v`.
    pub fn spin_dim(&self, v: &[u8]) -> usize {
        let mut basis = vec![v.to_vec()];
        let mut r = rank(&basis, self.dim);
        let mut i = 0;
        while i < basis.len() {
            for m in &self.generator_matrices {
                let w = m.apply(&basis[i]);
                basis.push(w);
                let r2 = rank(&basis, self.dim);
                if r2 > r {
                    r = r2;
                } else {
                    basis.pop();
                }
            }
            i += 1;
        }
        r
    }

    /// Irreducible iff every line spins up to the whole space.
    pub fn is_irreducible(&self) -> bool {
        all_lines(self.dim).iter().all(|l| self.spin_dim(l) == self.dim)
    }

    /// Orbits on lines, sorted by (length, least member).
    pub fn orbits_on_lines(&self) -> Vec<Vec<Vec<u8>>> {
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for l in all_lines(self.dim) {
            if seen.contains(&l) {
                continue;
            }
            let mut orbit = vec![l.clone()];
            seen.insert(l);
            let mut i = 0;
            while i < orbit.len() {
                for m in &self.generator_matrices {
                    let w = self.line_image(&orbit[i], m);
                    if seen.insert(w.clone()) {
                        orbit.push(w);
                    }
                }
                i += 1;
            }
            orbit.sort();
            orbits.push(orbit);
        }
        orbits.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a[0].cmp(&b[0])));
        orbits
    }

    /// Elements fixing the vector `v`.
    pub fn vector_stabilizer(&self, v: &[u8]) -> Result<GeneratedGroup> {
        let fixing: Vec<Permutation> = self
            .group
            .elements()
            .iter()
            .zip(&self.element_matrices)
            .filter(|(_, m)| m.apply(v) == v)
            .map(|(g, _)| g.clone())
            .collect();
        self.group.subgroup(&fixing)
    }

    /// `(|C_V(x)|, |C_V(x²)|)` for every element `x` of order 4.
    pub fn order4_fixed_points(&self) -> Vec<(u64, u64)> {
        self.group
            .elements()
            .iter()
            .zip(&self.element_matrices)
            .filter(|(g, _)| g.order() == 4)
            .map(|(_, m)| {
                let sq = m.mul(m);
                (3u64.pow(m.fixed_space_dim() as u32), 3u64.pow(sq.fixed_space_dim() as u32))
            })
            .collect()
    }

    /// The space of invariant quadratic forms, as a basis.
    pub fn invariant_forms(&self) -> Vec<QuadraticForm> {
        let n = self.dim;
        let monomials: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let eval = |v: &[u8]| -> Vec<u8> { monomials.iter().map(|&(i, j)| mul(v[i], v[j])).collect() };
        // Q(v·M) - Q(v) = 0 for all v and generators; monomials of degree ≤ 2
        // are independent as functions on GF(3)^n
        let mut rows = Vec::new();
        for m in &self.generator_matrices {
            for v in all_vectors(n) {
                let a = eval(&m.apply(&v));
                let b = eval(&v);
                rows.push(a.iter().zip(&b).map(|(x, y)| add(*x, neg(*y)) as u64).collect::<Vec<u64>>());
            }
        }
        if rows.is_empty() {
            rows.push(vec![0; monomials.len()]);
        }
        nullspace_mod_p(&rows, monomials.len(), P as u64)
            .into_iter()
            .map(|sol| {
                let mut q = vec![vec![0u8; n]; n];
                for (&(i, j), c) in monomials.iter().zip(sol) {
                    q[i][j] = c as u8;
                }
                QuadraticForm { coeffs: q }
            })
            .collect()
    }
}

/// `Q(v) = Σ_{i≤j} q_ij v_i v_j`, stored upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    coeffs: Vec<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittType {
    Plus,
    Minus,
    /// Degenerate, or a dimension without a plus/minus distinction.
    Other,
}

impl QuadraticForm {
    pub fn from_upper(coeffs: Vec<Vec<u8>>) -> Result<Self> {
        let n = coeffs.len();
        if coeffs.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("quadratic form needs a square coefficient array".into()));
        }
        let mut c = coeffs;
        for (i, row) in c.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = if j < i { 0 } else { *x % P };
            }
        }
        Ok(QuadraticForm { coeffs: c })
    }

    pub fn coeffs(&self) -> &[Vec<u8>] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn evaluate(&self, v: &[u8]) -> u8 {
        let n = self.dim();
        let mut acc = 0;
        for i in 0..n {
            for j in i..n {
                acc = add(acc, mul(self.coeffs[i][j], mul(v[i], v[j])));
            }
        }
        acc
    }

    pub fn scaled(&self, s: u8) -> QuadraticForm {
        QuadraticForm { coeffs: self.coeffs.iter().map(|r| r.iter().map(|&x| mul(x, s)).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|x| *x == 0)
    }

    /// Gram matrix of `B(u, v) = Q(u + v) - Q(u) - Q(v)`.
    pub fn bilinear(&self) -> GF3Matrix {
        let n = self.dim();
        let mut m = GF3Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    mul(2, self.coeffs[i][i])
                } else if i < j {
                    self.coeffs[i][j]
                } else {
                    self.coeffs[j][i]
                };
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.bilinear().is_invertible()
    }

    pub fn is_invariant(&self, module: &GModule) -> bool {
        module
            .generator_matrices()
            .iter()
            .all(|m| all_vectors(self.dim()).iter().all(|v| self.evaluate(&m.apply(v)) == self.evaluate(v)))
    }

    /// Lines on which the form vanishes.
    pub fn singular_lines(&self) -> Vec<Vec<u8>> {
        all_lines(self.dim()).into_iter().filter(|l| self.evaluate(l) == 0).collect()
    }

    /// In dimension 4 over GF(3): 10 singular lines for minus type, 16 for plus.
    pub fn witt_type(&self) -> WittType {
        if self.dim() != 4 || !self.is_nondegenerate() {
            return WittType::Other;
        }
        match self.singular_lines().len() {
            10 => WittType::Minus,
            16 => WittType::Plus,
            _ => WittType::Other,
        }
    }
}

/// Does every hyperplane meet one of the given lines?
///
/// Hyperplanes are kernels of the normalized functionals `f`, one per line
/// of the dual; entry `i` of the result belongs to `all_lines(dim)[i]`.
pub fn hyperplane_coverage(dim: usize, lines: &[Vec<u8>]) -> Vec<bool> {
    all_lines(dim).iter().map(|f| lines.iter().any(|l| dot(f, l) == 0)).collect()
}

/// Alt(6) as `⟨(1,2,3), (2,3,4,5,6)⟩`.
pub fn alt6() -> Result<GeneratedGroup> {
    let gens = [Permutation::parse("(1,2,3)", 6)?, Permutation::parse("(2,3,4,5,6)", 6)?];
    GeneratedGroup::generate(6, &gens)
}

/// The 4-dimensional section `{sum zero} / ⟨all ones⟩` of the permutation module.
///
/// Basis `b_i = e_i - e_6` for `i = 1..4`; since `b_1 + … + b_5` is the
/// all-ones vector, `b_5 ≡ -(b_1 + … + b_4)` in the quotient.
pub fn permutation_module_section(group: &GeneratedGroup) -> Result<GModule> {
    if group.degree() != 6 || group.order() != 360 {
        return Err(Error::Shape(format!(
            "expected Alt(6) on 6 points, got order {} on {} points",
            group.order(),
            group.degree()
        )));
    }
    let coords = |i: usize| -> Vec<i64> {
        // coordinates of b_i (1-based, b_6 = 0) in the quotient basis
        match i {
            6 => vec![0; 4],
            5 => vec![-1; 4],
            _ => (1..=4).map(|j| i64::from(j == i)).collect(),
        }
    };
    let mats = group
        .generators()
        .iter()
        .map(|g| {
            let rows: Vec<Vec<i64>> = (1..=4)
                .map(|i| {
                    let a = coords(g.image(i));
                    let b = coords(g.image(6));
                    a.iter().zip(&b).map(|(x, y)| x - y).collect()
                })
                .collect();
            GF3Matrix::from_rows(&rows)
        })
        .collect::<Result<Vec<_>>>()?;
    GModule::new(group.clone(), 4, mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn section() -> GModule {
        permutation_module_section(&alt6().unwrap()).unwrap()
    }

    #[test]
    fn forty_lines() {
        assert_eq!(all_lines(4).len(), 40);
    }

    #[test]
    fn section_is_irreducible_homomorphism() {
        let m = section();
        assert_eq!(m.dim(), 4);
        assert!(m.is_irreducible());
        let n = m.group().order();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        assert!(m.homomorphism_failures(&pairs).is_empty());
    }

    #[test]
    fn rejects_wrong_group() {
        let s5 = crate::perm::symmetric_group(5).unwrap();
        assert!(permutation_module_section(&s5).is_err());
    }

    #[test]
    fn line_orbits() {
        let m = section();
        let lens: Vec<usize> = m.orbits_on_lines().iter().map(|o| o.len()).collect();
        assert_eq!(lens, vec![10, 15, 15]);
        let trivial = GModule::trivial(GeneratedGroup::generate(1, &[]).unwrap(), 1).unwrap();
        assert_eq!(trivial.orbits_on_lines().len(), 1);
    }

    #[test]
    fn alt4_profile_on_fifteen_orbits() {
        let m = section();
        for orbit in m.orbits_on_lines().iter().filter(|o| o.len() == 15) {
            let st = m.vector_stabilizer(&orbit[0]).unwrap();
            assert_eq!(st.order(), 12);
            assert_eq!(st.derived_subgroup().unwrap().order(), 4);
            assert!(st.elements().iter().all(|g| g.order() != 6));
        }
    }

    #[test]
    fn hyperplanes_meet_ten_orbit() {
        let m = section();
        let orbits = m.orbits_on_lines();
        assert!(hyperplane_coverage(4, &orbits[0]).iter().all(|b| *b));
        // toy: trivial action in dimension 2, each line is its own orbit and
        // the hyperplane equal to it is covered
        let toy = GModule::trivial(GeneratedGroup::generate(1, &[]).unwrap(), 2).unwrap();
        let orbits = toy.orbits_on_lines();
        assert_eq!(orbits.len(), 4);
        for o in &orbits {
            let cover = hyperplane_coverage(2, o);
            assert_eq!(cover.iter().filter(|b| **b).count(), 1);
        }
    }

    #[test]
    fn order_four_fixed_spaces() {
        let m = section();
        let all = m.order4_fixed_points();
        assert!(!all.is_empty());
        assert!(all.iter().all(|p| *p == (1, 9)));
        let id = GF3Matrix::identity(4);
        assert_eq!(3u64.pow(id.fixed_space_dim() as u32), 81);
    }

    #[test]
    fn invariant_form_is_minus_type() {
        let m = section();
        let forms = m.invariant_forms();
        assert_eq!(forms.len(), 1);
        let q = &forms[0];
        assert!(!q.is_zero() && q.is_invariant(&m) && q.is_nondegenerate());
        assert_eq!(q.witt_type(), WittType::Minus);
        let singular = q.singular_lines();
        assert_eq!(singular, m.orbits_on_lines()[0]);
        assert_eq!(q.scaled(2).singular_lines(), singular);
        // the two 15-orbits carry the two nonzero values
        let orbits = m.orbits_on_lines();
        let v1: BTreeSet<u8> = orbits[1].iter().map(|l| q.evaluate(l)).collect();
        let v2: BTreeSet<u8> = orbits[2].iter().map(|l| q.evaluate(l)).collect();
        assert_eq!(v1.len(), 1);
        assert_eq!(v2.len(), 1);
        assert_ne!(v1, v2);
        assert!(!v1.contains(&0) && !v2.contains(&0));
    }

    #[test]
    fn plus_type_count() {
        // x1x2 + x3x4 is hyperbolic
        let q = QuadraticForm::from_upper(vec![vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]])
            .unwrap();
        assert_eq!(q.witt_type(), WittType::Plus);
    }

    #[test]
    fn determinant_small() {
        let m = GF3Matrix::from_rows(&[vec![1, 2], vec![2, 2]]).unwrap();
        // 1·2 - 2·2 = -2 ≡ 1
        assert_eq!(m.determinant(), 1);
        let s = GF3Matrix::from_rows(&[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(!s.is_invertible());
    }
}
