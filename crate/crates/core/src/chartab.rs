//! Character tables by the Dixon–Schneider method, class functions, inner
//! products, structure constants and orthogonality checks.
//!
//! The table is computed by splitting the class algebra over `F_p` into
//! common eigenvectors of the class matrices `(M_i)_{jk} = a_{ijk}`, where
//! `a_{ijk}` is the number of pairs `(a, b) ∈ C_i × C_j` with `ab = g_k`.
//! Each common eigenvector gives the central character of an irreducible,
//! from which its degree and values mod `p` follow. Values are lifted to
//! cyclotomic integers through eigenvalue multiplicities on cyclic subgroups.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::cyclo::{CycloField, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::{inv_mod, nullspace_mod_p, pow_mod};
use crate::perm::{conjugacy_classes, ConjugacyClassData, GeneratedGroup};

/// Largest group order for which a table is computed.
pub const TABLE_ORDER_LIMIT: usize = 10_000;

/// A class function, tagged with the fingerprint of the class data it lives on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    context: u64,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(context: u64, values: Vec<Cyclotomic>) -> Self {
        ClassFunction { context, values }
    }

    pub fn context(&self) -> u64 {
        self.context
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negate(&self) -> ClassFunction {
        ClassFunction { context: self.context, values: self.values.iter().map(|v| -v).collect() }
    }
}

/// Class algebra constants `a_{ijk}` for all triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAlgebra {
    rank: usize,
    data: Vec<u32>,
}

impl ClassAlgebra {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.data[(i * self.rank + j) * self.rank + k]
    }
}

/// All class algebra constants by counting factorisations of each representative.
pub fn class_algebra(group: &GeneratedGroup, classes: &ConjugacyClassData) -> ClassAlgebra {
    let r = classes.len();
    let mut data = vec![0u32; r * r * r];
    for (k, c) in classes.classes().iter().enumerate() {
        for (ai, a) in group.elements().iter().enumerate() {
            let b = a.inverse().compose(&c.representative);
            let i = classes.class_of_index(ai);
            let j = classes.class_of(group, &b).expect("closed group");
            data[(i * r + j) * r + k] += 1;
        }
    }
    ClassAlgebra { rank: r, data }
}

/// Number of pairs `(a, b)` with `a` in class `i`, `b` in class `j` and `ab`
/// equal to the representative of class `k`.
pub fn class_coefficient(
    group: &GeneratedGroup,
    classes: &ConjugacyClassData,
    i: usize,
    j: usize,
    k: usize,
) -> Result<u64> {
    let r = classes.len();
    for (idx, what) in [(i, "class i"), (j, "class j"), (k, "class k")] {
        if idx >= r {
            return Err(Error::Index { what, index: idx, len: r });
        }
    }
    let g = &classes.classes()[k].representative;
    Ok(coefficient_at(group, classes, i, j, g))
}

/// The same count for an arbitrary element `g` of class `k`.
pub fn coefficient_at(
    group: &GeneratedGroup,
    classes: &ConjugacyClassData,
    i: usize,
    j: usize,
    g: &crate::perm::Permutation,
) -> u64 {
    group
        .elements()
        .iter()
        .enumerate()
        .filter(|(ai, _)| classes.class_of_index(*ai) == i)
        .filter(|(_, a)| classes.class_of(group, &a.inverse().compose(g)) == Some(j))
        .count() as u64
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2√order`.
pub fn dixon_prime(order: usize, exponent: usize) -> u64 {
    let e = exponent as u64;
    let mut p = e + 1;
    loop {
        if p * p > 4 * order as u64 && is_prime(p) {
            return p;
        }
        p += e;
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("prime has a primitive root")
}

/// An ordinary character table together with the group and class data.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: GeneratedGroup,
    classes: ConjugacyClassData,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    context: u64,
    field: CycloField,
    coords: Vec<Vec<Vec<Rational>>>,
}

/// Stable fingerprint of the class data (order, sizes and representatives).
pub fn class_context(group: &GeneratedGroup, classes: &ConjugacyClassData) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        h ^= x;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    eat(group.order() as u64);
    for c in classes.classes() {
        eat(c.size as u64);
        for &x in c.representative.images() {
            eat(x as u64);
        }
    }
    h
}

impl CharacterTable {
    /// Wraps given rows without checking orthogonality.
    ///
    /// Degrees are read off the identity column and must be positive integers.
    pub fn from_values(group: GeneratedGroup, classes: ConjugacyClassData, rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = classes.len();
        if rows.len() != r || rows.iter().any(|row| row.len() != r) {
            return Err(Error::Shape(format!("expected a {r}x{r} table")));
        }
        let mut degrees = Vec::with_capacity(r);
        for row in &rows {
            match row[0].as_integer() {
                Some(d) if d > 0 => degrees.push(d as u64),
                _ => return Err(Error::Shape(format!("degree {} is not a positive integer", row[0]))),
            }
        }
        let context = class_context(&group, &classes);
        let n = rows.iter().flatten().fold(classes.exponent() as u32, |acc, v| acc.lcm(&v.conductor()));
        let field = CycloField::new(n);
        let coords = rows
            .iter()
            .map(|row| row.iter().map(|v| field.embed(v).expect("conductor divides lcm")).collect())
            .collect();
        let irreducibles = rows.into_iter().map(|values| ClassFunction { context, values }).collect();
        Ok(CharacterTable { group, classes, irreducibles, degrees, context, field, coords })
    }

    pub fn group(&self) -> &GeneratedGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClassData {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn context(&self) -> u64 {
        self.context
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> Option<usize> {
        self.irreducibles.iter().position(|c| c.values.iter().all(|v| *v == Cyclotomic::one()))
    }

    /// Table whose row `i` is row `perm[i]` of this one.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<CharacterTable> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len() || perm.iter().any(|&p| p >= self.len() || core::mem::replace(&mut seen[p], true)) {
            return Err(Error::Shape(format!("not a permutation of {} rows", self.len())));
        }
        let rows = perm.iter().map(|&p| self.irreducibles[p].values.clone()).collect();
        CharacterTable::from_values(self.group.clone(), self.classes.clone(), rows)
    }

    /// Class function with values on this table's classes.
    pub fn class_function(&self, values: Vec<Cyclotomic>) -> Result<ClassFunction> {
        if values.len() != self.classes.len() {
            return Err(Error::Shape(format!("expected {} class values", self.classes.len())));
        }
        Ok(ClassFunction { context: self.context, values })
    }

    /// `Σ coeffs[i] · χ_i`.
    pub fn combination(&self, coeffs: &[i128]) -> Result<ClassFunction> {
        if coeffs.len() != self.len() {
            return Err(Error::Shape(format!("expected {} coefficients", self.len())));
        }
        let f = &self.field;
        let mut acc = vec![f.zero(); self.classes.len()];
        for (row, &c) in self.coords.iter().zip(coeffs) {
            if c != 0 {
                for (a, v) in acc.iter_mut().zip(row) {
                    *a = f.add(a, &f.scale(v, Rational::from_integer(c)));
                }
            }
        }
        Ok(ClassFunction { context: self.context, values: acc.iter().map(|a| f.to_cyclotomic(a)).collect() })
    }

    /// `(a, b) = |G|⁻¹ Σ_classes |C| a(g) conj(b(g))`.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
        if a.context != self.context || b.context != self.context {
            return Err(Error::ContextMismatch);
        }
        let mut acc = Cyclotomic::zero();
        for (c, (x, y)) in self.classes.classes().iter().zip(a.values.iter().zip(&b.values)) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = acc + (x * &y.conj()).scale(Rational::from_integer(c.size as i128));
        }
        Ok(acc.scale(Rational::new(1, self.order() as i128)))
    }

    /// `a_{xyz} = |G| / (|C(x)| |C(y)|) · Σ_χ χ(x) χ(y) conj(χ(z)) / χ(1)`,
    /// which must be a non-negative integer.
    pub fn structure_constant(&self, x: usize, y: usize, z: usize) -> Result<u64> {
        let r = self.classes.len();
        for (idx, what) in [(x, "class x"), (y, "class y"), (z, "class z")] {
            if idx >= r {
                return Err(Error::Index { what, index: idx, len: r });
            }
        }
        let f = &self.field;
        let mut sum = f.zero();
        for (row, &d) in self.coords.iter().zip(&self.degrees) {
            let t = f.mul(&f.mul(&row[x], &row[y]), &f.conj(&row[z]));
            sum = f.add(&sum, &f.scale(&t, Rational::new(1, d as i128)));
        }
        let n = self.order() as i128;
        let cx = n / self.classes.classes()[x].size as i128;
        let cy = n / self.classes.classes()[y].size as i128;
        let value = f.to_cyclotomic(&f.scale(&sum, Rational::new(n, cx * cy)));
        match value.as_integer() {
            Some(v) if v >= 0 => Ok(v as u64),
            _ => Err(Error::NotIntegral(format!("structure constant ({x},{y},{z}) = {value}"))),
        }
    }
}

/// Free-function form of [`CharacterTable::inner_product`].
pub fn inner_product(table: &CharacterTable, a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    table.inner_product(a, b)
}

/// Free-function form of [`CharacterTable::structure_constant`].
pub fn structure_constant(table: &CharacterTable, x: usize, y: usize, z: usize) -> Result<u64> {
    table.structure_constant(x, y, z)
}

/// Outcome of both orthogonality relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub row_pairs_checked: usize,
    pub column_pairs_checked: usize,
    pub row_failures: Vec<(usize, usize)>,
    pub column_failures: Vec<(usize, usize)>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.row_failures.is_empty() && self.column_failures.is_empty()
    }
}

/// Checks `(χ_i, χ_j) = δ_ij` and `Σ_χ χ(g_i) conj(χ(g_j)) = |C(g_i)| δ_ij`.
pub fn verify_orthogonality(table: &CharacterTable) -> OrthogonalityReport {
    let f = &table.field;
    let r = table.len();
    let n = table.order() as i128;
    let sizes = table.classes.sizes();
    let conj: Vec<Vec<Vec<Rational>>> =
        table.coords.iter().map(|row| row.iter().map(|v| f.conj(v)).collect()).collect();
    let mut report = OrthogonalityReport::default();
    for i in 0..r {
        for j in i..r {
            let mut acc = f.zero();
            for k in 0..r {
                let t = f.mul(&table.coords[i][k], &conj[j][k]);
                acc = f.add(&acc, &f.scale(&t, Rational::from_integer(sizes[k] as i128)));
            }
            let expected = if i == j { n } else { 0 };
            report.row_pairs_checked += 1;
            if f.to_cyclotomic(&acc) != Cyclotomic::from_integer(expected) {
                report.row_failures.push((i, j));
            }
        }
    }
    for a in 0..r {
        for b in a..r {
            let mut acc = f.zero();
            for k in 0..r {
                acc = f.add(&acc, &f.mul(&table.coords[k][a], &conj[k][b]));
            }
            let expected = if a == b { n / sizes[a] as i128 } else { 0 };
            report.column_pairs_checked += 1;
            if f.to_cyclotomic(&acc) != Cyclotomic::from_integer(expected) {
                report.column_failures.push((a, b));
            }
        }
    }
    report
}

/// Computes the character table of `group`.
pub fn character_table(group: &GeneratedGroup) -> Result<CharacterTable> {
    if group.order() > TABLE_ORDER_LIMIT {
        return Err(Error::TooLarge { what: "group order for a character table", limit: TABLE_ORDER_LIMIT });
    }
    let classes = conjugacy_classes(group);
    let r = classes.len();
    let n = group.order() as u64;
    let e = classes.exponent();
    let p = dixon_prime(group.order(), e);
    let algebra = class_algebra(group, &classes);
    let sizes: Vec<u64> = classes.sizes().iter().map(|&s| s as u64).collect();

    let vectors = split_class_algebra(&algebra, p)?;

    let g = primitive_root(p);
    let big_z = pow_mod(g, (p - 1) / e as u64, p);
    let mut rows = Vec::with_capacity(r);
    for mut v in vectors {
        if v[0] == 0 {
            return Err(Error::Splitting("eigenvector vanishes at the identity class".into()));
        }
        let inv0 = inv_mod(v[0], p);
        for x in v.iter_mut() {
            *x = *x * inv0 % p;
        }
        // |G| / χ(1)^2 = Σ_j ω_j ω_{j*} / |C_j|
        let mut s = 0u64;
        for j in 0..r {
            let js = classes.inverse_class(j);
            s = (s + v[j] * v[js] % p * inv_mod(sizes[j] % p, p)) % p;
        }
        if s == 0 {
            return Err(Error::Splitting("degenerate central character".into()));
        }
        let target = n % p * inv_mod(s, p) % p;
        let d = (1..=p / 2)
            .find(|&d| d * d % p == target && d * d <= n && n.is_multiple_of(d))
            .ok_or_else(|| Error::Splitting("no admissible degree".into()))?;
        let modp: Vec<u64> = (0..r).map(|j| v[j] * d % p * inv_mod(sizes[j] % p, p) % p).collect();
        let mut row = Vec::with_capacity(r);
        for (j, c) in classes.classes().iter().enumerate() {
            let o = c.element_order;
            let z = pow_mod(big_z, (e / o) as u64, p);
            let inv_o = inv_mod(o as u64 % p, p);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for k in 0..o {
                let mut m = 0u64;
                for l in 0..o {
                    let val = modp[classes.power_map(l as i64)[j]];
                    let zk = pow_mod(z, ((o - (k * l) % o) % o) as u64, p);
                    m = (m + val * zk) % p;
                }
                m = m * inv_o % p;
                if m > d {
                    return Err(Error::Splitting(format!("eigenvalue multiplicity {m} exceeds degree {d}")));
                }
                total += m;
                if m != 0 {
                    terms.push((k as i64, Rational::from_integer(m as i128)));
                }
            }
            if total != d {
                return Err(Error::Splitting("multiplicities do not sum to the degree".into()));
            }
            row.push(Cyclotomic::from_exponent_terms(o as u32, &terms));
        }
        rows.push(row);
    }
    rows.sort_by(|a, b| (a[0].as_integer(), a).cmp(&(b[0].as_integer(), b)));
    let table = CharacterTable::from_values(group.clone(), classes, rows)?;
    let sum_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
    if sum_sq != n {
        return Err(Error::Splitting(format!("sum of squared degrees {sum_sq} differs from {n}")));
    }
    Ok(table)
}

/// Common eigenvectors of all class matrices over `F_p`, one per irreducible.
fn split_class_algebra(algebra: &ClassAlgebra, p: u64) -> Result<Vec<Vec<u64>>> {
    let r = algebra.rank();
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    let matrix = |i: usize| -> Vec<Vec<u64>> {
        (0..r).map(|j| (0..r).map(|k| algebra.get(i, j, k) as u64 % p).collect()).collect()
    };
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        spaces = split_by(&spaces, &matrix(i), p)?;
    }
    // deterministic seeded combinations, should the class matrices ever fail to separate
    let mut seed: u64 = 0x2545_f491;
    let mut rounds = 0;
    while spaces.iter().any(|s| s.len() > 1) {
        rounds += 1;
        if rounds > 64 {
            return Err(Error::Splitting("eigenspaces stay degenerate".into()));
        }
        let mut m = vec![vec![0u64; r]; r];
        for i in 0..r {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let s = (seed >> 33) % p;
            let mi = matrix(i);
            for (row, mrow) in m.iter_mut().zip(&mi) {
                for (x, y) in row.iter_mut().zip(mrow) {
                    *x = (*x + s * y) % p;
                }
            }
        }
        spaces = split_by(&spaces, &m, p)?;
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().expect("one-dimensional")).collect())
}

fn split_by(spaces: &[Vec<Vec<u64>>], m: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = m.len();
    let mut out = Vec::new();
    for basis in spaces {
        if basis.len() == 1 {
            out.push(basis.clone());
            continue;
        }
        let d = basis.len();
        // images M w_t of the basis vectors
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|w| (0..r).map(|j| (0..r).fold(0u64, |acc, k| (acc + m[j][k] * w[k]) % p)).collect())
            .collect();
        let mut found = 0;
        for lambda in 0..p {
            // columns M w_t - λ w_t
            let a: Vec<Vec<u64>> =
                (0..r).map(|j| (0..d).map(|t| (images[t][j] + p * p - lambda * basis[t][j]) % p).collect()).collect();
            let null = nullspace_mod_p(&a, d, p);
            if null.is_empty() {
                continue;
            }
            found += null.len();
            let sub: Vec<Vec<u64>> = null
                .iter()
                .map(|c| (0..r).map(|j| (0..d).fold(0u64, |acc, t| (acc + c[t] * basis[t][j]) % p)).collect())
                .collect();
            out.push(sub);
        }
        if found != d {
            return Err(Error::Splitting("class matrix is not diagonalisable on an eigenspace".into()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, 9).unwrap()
    }

    fn group(gens: &[&str]) -> GeneratedGroup {
        let g: Vec<Permutation> = gens.iter().map(|s| p(s)).collect();
        GeneratedGroup::generate(9, &g).unwrap()
    }

    fn h108() -> GeneratedGroup {
        group(&["(1,2,3)", "(4,5,6)", "(7,8,9)", "(1,2)(4,5)", "(1,2)(7,8)"])
    }

    fn k648() -> GeneratedGroup {
        group(&["(1,2,3)", "(1,4,7)(2,5,8)(3,6,9)", "(1,2)(4,5)", "(1,4)(2,5)(3,6)(7,8)"])
    }

    #[test]
    fn dixon_primes() {
        assert_eq!(dixon_prime(108, 6), 31);
        assert_eq!(dixon_prime(648, 36), 73);
        assert_eq!(dixon_prime(3, 3), 7);
    }

    #[test]
    fn cyclic_three() {
        let g = group(&["(1,2,3)"]);
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), 3);
        let w = Cyclotomic::root_of_unity(3, 1);
        let w2 = Cyclotomic::root_of_unity(3, 2);
        let one = Cyclotomic::one();
        let mut rows: Vec<Vec<Cyclotomic>> = t.irreducibles().iter().map(|c| c.values().to_vec()).collect();
        rows.sort();
        let mut expected = vec![
            vec![one.clone(), one.clone(), one.clone()],
            vec![one.clone(), w.clone(), w2.clone()],
            vec![one.clone(), w2.clone(), w.clone()],
        ];
        expected.sort();
        assert_eq!(rows, expected);
        assert!(verify_orthogonality(&t).passed());
    }

    #[test]
    fn table_of_h() {
        let t = character_table(&h108()).unwrap();
        assert_eq!(t.len(), 15);
        let mut d = t.degrees().to_vec();
        d.sort();
        assert_eq!(d, vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4]);
        assert!(verify_orthogonality(&t).passed());
        for i in 0..t.len() {
            let ip = t.inner_product(t.character(i), t.character(i)).unwrap();
            assert_eq!(ip, Cyclotomic::one());
        }
    }

    #[test]
    fn table_of_k_and_structure_constants() {
        let k = k648();
        let t = character_table(&k).unwrap();
        let mut d = t.degrees().to_vec();
        d.sort();
        assert_eq!(d, vec![1, 1, 2, 3, 3, 6, 6, 6, 6, 8, 8, 8, 12, 12]);
        assert!(verify_orthogonality(&t).passed());
        let cls = t.classes();
        let x = cls.class_of(&k, &p("(1,2,3)")).unwrap();
        let y = cls.class_of(&k, &p("(1,2,3)(4,5,6)")).unwrap();
        let z = cls.class_of(&k, &p("(1,2,3)(4,5,6)(7,8,9)")).unwrap();
        let expected = [
            ((x, y, z), 3),
            ((x, x, y), 2),
            ((x, x, z), 0),
            ((y, y, x), 4),
            ((y, y, z), 6),
            ((z, z, x), 4),
            ((z, z, y), 2),
        ];
        for ((a, b, c), v) in expected {
            assert_eq!(t.structure_constant(a, b, c).unwrap(), v);
            assert_eq!(class_coefficient(&k, cls, a, b, c).unwrap(), v);
        }
    }

    #[test]
    fn structure_constants_match_counts_in_h() {
        let h = h108();
        let t = character_table(&h).unwrap();
        let alg = class_algebra(&h, t.classes());
        let r = t.len();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    assert_eq!(t.structure_constant(i, j, k).unwrap(), alg.get(i, j, k) as u64);
                }
            }
        }
        // identity class: a_{x, x^-1, 1} = |x^G|
        for i in 0..r {
            let inv = t.classes().inverse_class(i);
            assert_eq!(alg.get(i, inv, 0) as usize, t.classes().classes()[i].size);
        }
    }

    #[test]
    fn coefficient_independent_of_representative() {
        let k = k648();
        let cls = conjugacy_classes(&k);
        for kk in 0..cls.len() {
            let rep = &cls.classes()[kk].representative;
            let other = k.elements().iter().find(|g| cls.class_of(&k, g) == Some(kk) && *g != rep);
            if let Some(other) = other {
                for i in 0..cls.len() {
                    assert_eq!(coefficient_at(&k, &cls, i, 3, rep), coefficient_at(&k, &cls, i, 3, other));
                }
            }
        }
    }

    #[test]
    fn galois_permutes_rows() {
        let t = character_table(&k648()).unwrap();
        let rows: Vec<Vec<Cyclotomic>> = t.irreducibles().iter().map(|c| c.values().to_vec()).collect();
        for m in [5i64, 7, 11, 13, 35] {
            for row in &rows {
                let g: Vec<Cyclotomic> = row.iter().map(|v| v.galois(m)).collect();
                assert!(rows.contains(&g));
            }
        }
    }

    #[test]
    fn mutation_breaks_orthogonality() {
        let t = character_table(&h108()).unwrap();
        let mut rows: Vec<Vec<Cyclotomic>> = t.irreducibles().iter().map(|c| c.values().to_vec()).collect();
        rows[5][7] = &rows[5][7] + &Cyclotomic::one();
        let bad = CharacterTable::from_values(t.group().clone(), t.classes().clone(), rows).unwrap();
        let rep = verify_orthogonality(&bad);
        assert!(!rep.column_failures.is_empty());
    }

    #[test]
    fn context_mismatch() {
        let t = character_table(&h108()).unwrap();
        let u = character_table(&group(&["(1,2,3)"])).unwrap();
        assert_eq!(t.inner_product(t.character(0), u.character(0)), Err(Error::ContextMismatch));
    }

    #[test]
    fn guard() {
        let a9 = group(&["(1,2,3)", "(1,2,3,4,5,6,7,8,9)"]);
        assert!(matches!(character_table(&a9), Err(Error::TooLarge { .. })));
    }
}
