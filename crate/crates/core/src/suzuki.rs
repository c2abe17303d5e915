//! Special classes and the reconstruction of character-table fragments of
//! an overgroup.
//!
//! Given a set `𝒞` of special classes of `H`, the virtual characters of `H`
//! vanishing off `𝒞` form a lattice of rank `|𝒞|`. Inducing a basis `λ_i`
//! to a hypothetical overgroup `G` preserves inner products, so the
//! decomposition matrix `B` of the induced `μ_i` over `Irr(G)` satisfies
//! `B Bᵀ = D` with `D_ij = (λ_i, λ_j)`, and its principal column is fixed.
//! Writing `γ_i = Σ_j χ_j(t_i) χ_j = Σ_k C_ik λ_k`, the values of the
//! irreducibles of `G` on the special classes are the rows of `(C B)ᵀ`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::chartab::CharacterTable;
use crate::cyclo::{CycloField, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::perm::ConjugacyClassData;

/// Assumptions about `G` that cannot be checked inside `H`.
pub const HYPOTHESES: [&str; 2] = [
    "centralizers in G of elements of special classes lie in H",
    "two special classes of H fuse in G only if they fuse in H",
];

/// A set of special classes of `H`, by canonical class index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialClassSet {
    classes: Vec<usize>,
    hypotheses: Vec<String>,
}

impl SpecialClassSet {
    pub fn new(classes: Vec<usize>) -> Result<Self> {
        let set: BTreeSet<usize> = classes.iter().copied().collect();
        if set.len() != classes.len() {
            return Err(Error::Shape("special class listed twice".into()));
        }
        Ok(SpecialClassSet { classes, hypotheses: HYPOTHESES.iter().map(|s| String::from(*s)).collect() })
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.classes.contains(&c)
    }

    pub fn hypotheses(&self) -> &[String] {
        &self.hypotheses
    }
}

/// A class `c` whose `k`-th power lands outside the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerClosureFailure {
    pub class: usize,
    pub exponent: usize,
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialAxiomReport {
    pub power_closure_failures: Vec<PowerClosureFailure>,
    pub contains_identity: bool,
    /// Holds by construction: the set is given as whole classes of `H`.
    pub union_of_classes: bool,
    pub hypotheses: Vec<String>,
}

impl SpecialAxiomReport {
    pub fn passed(&self) -> bool {
        self.power_closure_failures.is_empty() && !self.contains_identity && self.union_of_classes
    }
}

/// Checks closure under generator replacement and that the identity is excluded.
pub fn verify_special_axioms(classes: &ConjugacyClassData, special: &SpecialClassSet) -> Result<SpecialAxiomReport> {
    for &c in special.classes() {
        if c >= classes.len() {
            return Err(Error::Index { what: "special class", index: c, len: classes.len() });
        }
    }
    let mut failures = Vec::new();
    for &c in special.classes() {
        let o = classes.classes()[c].element_order;
        for k in 1..o.max(2) {
            if k.gcd(&o) == 1 {
                let image = classes.power_map(k as i64)[c];
                if !special.contains(image) {
                    failures.push(PowerClosureFailure { class: c, exponent: k, image });
                }
            }
        }
    }
    Ok(SpecialAxiomReport {
        power_closure_failures: failures,
        contains_identity: special.contains(0),
        union_of_classes: true,
        hypotheses: special.hypotheses().to_vec(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ComputedHnf,
    Fixture,
}

/// Integer vectors in `Irr(H)` coordinates spanning the vanishing lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingBasis {
    pub basis: Vec<Vec<i128>>,
    pub provenance: Provenance,
}

impl VanishingBasis {
    pub fn fixture(basis: Vec<Vec<i128>>) -> Self {
        VanishingBasis { basis, provenance: Provenance::Fixture }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Integer power-basis coordinates of every character value, `[class][coord][irr]`.
fn integer_coordinates(table: &CharacterTable) -> Result<Vec<Vec<Vec<i128>>>> {
    let field = CycloField::new(table.classes().exponent() as u32);
    let r = table.len();
    let mut out = vec![vec![vec![0i128; r]; field.dim()]; r];
    for (i, chi) in table.irreducibles().iter().enumerate() {
        for (j, v) in chi.values().iter().enumerate() {
            let coords = field.embed(v)?;
            for (t, c) in coords.iter().enumerate() {
                if !c.is_integer() {
                    return Err(Error::NotIntegral(format!("character value {v}")));
                }
                out[j][t][i] = c.to_integer();
            }
        }
    }
    Ok(out)
}

/// HNF basis of the lattice of virtual characters vanishing at the identity
/// and on every non-special class.
pub fn vanishing_basis(table: &CharacterTable, special: &SpecialClassSet) -> Result<VanishingBasis> {
    let coords = integer_coordinates(table)?;
    let mut rows = Vec::new();
    for (j, block) in coords.iter().enumerate() {
        if !special.contains(j) || j == 0 {
            rows.extend(block.iter().cloned());
        }
    }
    let kernel = linalg::integer_kernel(&rows, table.len());
    Ok(VanishingBasis { basis: linalg::hnf(&kernel), provenance: Provenance::ComputedHnf })
}

/// How a second basis sits in a reference lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeComparison {
    /// Row `i` holds the integer coordinates of `other[i]` in the reference basis.
    pub coordinates: Option<Vec<Vec<i128>>>,
    pub determinant: Option<i128>,
}

impl LatticeComparison {
    pub fn all_in_lattice(&self) -> bool {
        self.coordinates.is_some()
    }

    pub fn unimodular(&self) -> bool {
        matches!(self.determinant, Some(1) | Some(-1))
    }
}

pub fn compare_lattices(reference: &[Vec<i128>], other: &[Vec<i128>]) -> LatticeComparison {
    let coords: Option<Vec<Vec<i128>>> = other.iter().map(|v| linalg::integer_coordinates(reference, v)).collect();
    let determinant = coords.as_ref().filter(|c| c.len() == reference.len()).map(|c| linalg::det_bareiss(c));
    LatticeComparison { coordinates: coords, determinant }
}

/// Decomposition of the `γ_i` in a basis; row `i` is `γ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMatrix {
    pub rows: Vec<Vec<Cyclotomic>>,
}

/// Solves `γ_i = Σ_k C_ik λ_k` for the classes `reps` (one per special class, in order).
pub fn gamma_decomposition(table: &CharacterTable, reps: &[usize], basis: &[Vec<i128>]) -> Result<GammaMatrix> {
    let r = table.len();
    if basis.iter().any(|l| l.len() != r) {
        return Err(Error::Shape(format!("basis vectors need {r} coordinates")));
    }
    // Λᵀ is r × m
    let lt = linalg::transpose(&linalg::to_rational(basis));
    let p = linalg::left_inverse(&lt).ok_or_else(|| Error::Inconsistent("basis is not independent".into()))?;
    let mut rows = Vec::with_capacity(reps.len());
    for &t in reps {
        if t >= r {
            return Err(Error::Index { what: "special representative", index: t, len: r });
        }
        let gamma: Vec<Cyclotomic> = table.irreducibles().iter().map(|chi| chi.value(t).clone()).collect();
        let c: Vec<Cyclotomic> = p.iter().map(|prow| weighted_sum(prow, &gamma)).collect();
        // residual check: Λᵀ c = γ
        for (j, ltrow) in lt.iter().enumerate() {
            if weighted_sum(ltrow, &c) != gamma[j] {
                return Err(Error::Inconsistent(format!("γ for class {t} is not in the span of the basis")));
            }
        }
        rows.push(c);
    }
    Ok(GammaMatrix { rows })
}

fn weighted_sum(weights: &[Rational], values: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (w, v) in weights.iter().zip(values) {
        if !w.is_zero() && !v.is_zero() {
            acc = acc + v.scale(*w);
        }
    }
    acc
}

/// Gram matrix of a basis and its principal multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram {
    pub d: Vec<Vec<i64>>,
    pub principal: Vec<i64>,
}

/// `D_ij = (λ_i, λ_j)` and `p_i = (λ_i, 1_H)`, using orthonormality of `Irr(H)`.
pub fn gram(basis: &[Vec<i128>], trivial_index: usize) -> Gram {
    let d = basis
        .iter()
        .map(|a| basis.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum::<i128>() as i64).collect())
        .collect();
    let principal = basis.iter().map(|a| a[trivial_index] as i64).collect();
    Gram { d, principal }
}

/// Integer decomposition matrix; column 0 is the principal character.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl BMatrix {
    pub fn from_columns(principal: &[i64], columns: &[Vec<i64>]) -> Self {
        let rows = (0..principal.len())
            .map(|i| core::iter::once(principal[i]).chain(columns.iter().map(|c| c[i])).collect())
            .collect();
        BMatrix { rows }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|a| self.rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect()
    }

    /// Non-principal columns sign-normalized and sorted; column 0 untouched.
    pub fn canonical(&self) -> BMatrix {
        let mut cols: Vec<Vec<i64>> = (1..self.column_count()).map(|k| sign_normalized(&self.column(k))).collect();
        cols.sort();
        BMatrix::from_columns(&self.column(0), &cols)
    }
}

fn sign_normalized(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|x| **x != 0) {
        Some(x) if *x < 0 => v.iter().map(|x| -x).collect(),
        _ => v.to_vec(),
    }
}

/// The Gram-constrained search for all `B`.
#[derive(Clone, Debug)]
pub struct BProblem {
    principal: Vec<i64>,
    /// `D - p pᵀ`.
    residual: Vec<Vec<i64>>,
    /// Row processing order.
    order: Vec<usize>,
}

/// A subtree of the search: `columns[c][l]` is the entry of column `c` in
/// the `l`-th processed row, for the first `depth` rows of the processing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SearchTask {
    pub depth: usize,
    pub columns: Vec<Vec<i64>>,
}

impl BProblem {
    pub fn new(d: &[Vec<i64>], principal: &[i64]) -> Result<Self> {
        let m = d.len();
        if principal.len() != m || d.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("Gram matrix and principal vector disagree".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if d[i][j] != d[j][i] {
                    return Err(Error::Shape("Gram matrix is not symmetric".into()));
                }
            }
        }
        let residual: Vec<Vec<i64>> =
            (0..m).map(|i| (0..m).map(|j| d[i][j] - principal[i] * principal[j]).collect()).collect();
        // larger diagonal first: their rows constrain the most columns early
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (core::cmp::Reverse(residual[i][i]), i));
        Ok(BProblem { principal: principal.to_vec(), residual, order })
    }

    pub fn residual(&self) -> &[Vec<i64>] {
        &self.residual
    }

    pub fn row_count(&self) -> usize {
        self.principal.len()
    }

    fn infeasible(&self) -> bool {
        let m = self.row_count();
        (0..m).any(|i| self.residual[i][i] < 0)
            || (0..m).any(|i| (0..m).any(|j| self.residual[i][j].pow(2) > self.residual[i][i] * self.residual[j][j]))
    }

    /// All subtrees after the first `depth` processed rows, in deterministic order.
    pub fn tasks(&self, depth: usize) -> Vec<SearchTask> {
        if self.infeasible() {
            return Vec::new();
        }
        let depth = depth.min(self.row_count());
        let mut out = Vec::new();
        self.descend(0, Vec::new(), depth, &mut |cols| {
            out.push(SearchTask { depth, columns: cols.to_vec() });
        });
        out
    }

    /// Canonical solutions inside one subtree.
    pub fn solve_task(&self, task: &SearchTask) -> BTreeSet<BMatrix> {
        let mut out = BTreeSet::new();
        let m = self.row_count();
        self.descend(task.depth, task.columns.clone(), m, &mut |cols| {
            out.insert(self.assemble(cols));
        });
        out
    }

    /// All canonical solutions, single-threaded.
    pub fn solve_all(&self) -> Vec<BMatrix> {
        let mut all = BTreeSet::new();
        for t in self.tasks(0) {
            all.extend(self.solve_task(&t));
        }
        all.into_iter().collect()
    }

    fn assemble(&self, cols: &[Vec<i64>]) -> BMatrix {
        let m = self.row_count();
        let columns: Vec<Vec<i64>> = cols
            .iter()
            .map(|c| {
                let mut v = vec![0i64; m];
                for (l, &row) in self.order.iter().enumerate() {
                    v[row] = c[l];
                }
                v
            })
            .collect();
        BMatrix::from_columns(&self.principal, &columns).canonical()
    }

    /// Depth-first over processed rows `depth..stop`, calling `emit` at `stop`.
    fn descend(&self, depth: usize, cols: Vec<Vec<i64>>, stop: usize, emit: &mut dyn FnMut(&[Vec<i64>])) {
        if depth == stop {
            emit(&cols);
            return;
        }
        let row = self.order[depth];
        let targets: Vec<i64> = (0..depth).map(|l| self.residual[row][self.order[l]]).collect();
        let norm = self.residual[row][row];
        let c = cols.len();
        // suffix sums of squares per processed row, for the Cauchy–Schwarz bound
        let mut suffix = vec![vec![0i64; depth]; c + 1];
        for k in (0..c).rev() {
            for l in 0..depth {
                suffix[k][l] = suffix[k + 1][l] + cols[k][l] * cols[k][l];
            }
        }
        let mut entries = vec![0i64; c];
        let mut ctx = RowSearch { cols: &cols, targets: &targets, suffix: &suffix, entries: &mut entries };
        let mut partials: Vec<(Vec<i64>, i64)> = Vec::new();
        ctx.assign(0, norm, &mut vec![0i64; depth], &mut |e, rem| partials.push((e.to_vec(), rem)));
        for (e, rem) in partials {
            for fresh in square_partitions(rem) {
                let mut next: Vec<Vec<i64>> = cols
                    .iter()
                    .zip(&e)
                    .map(|(col, &x)| {
                        let mut v = col.clone();
                        v.push(x);
                        v
                    })
                    .collect();
                for u in fresh {
                    let mut v = vec![0i64; depth];
                    v.push(u);
                    next.push(v);
                }
                self.descend(depth + 1, next, stop, emit);
            }
        }
    }
}

struct RowSearch<'a> {
    cols: &'a [Vec<i64>],
    targets: &'a [i64],
    suffix: &'a [Vec<i64>],
    entries: &'a mut Vec<i64>,
}

impl RowSearch<'_> {
    /// Chooses the entries of the current row on existing columns `k..`.
    fn assign(&mut self, k: usize, budget: i64, partial: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64], i64)) {
        let depth = self.targets.len();
        // every processed row's inner product must stay reachable
        for l in 0..depth {
            let e = self.targets[l] - partial[l];
            let s = self.suffix[k][l];
            if s == 0 {
                if e != 0 {
                    return;
                }
            } else if (e as i128).pow(2) > s as i128 * budget as i128 {
                return;
            }
        }
        if k == self.cols.len() {
            emit(self.entries, budget);
            return;
        }
        let bound = isqrt(budget);
        let same_group = k > 0 && self.cols[k] == self.cols[k - 1];
        let upper = if same_group { bound.min(self.entries[k - 1]) } else { bound };
        for t in (-bound..=upper).rev() {
            self.entries[k] = t;
            for l in 0..depth {
                partial[l] += self.cols[k][l] * t;
            }
            self.assign(k + 1, budget - t * t, partial, emit);
            for l in 0..depth {
                partial[l] -= self.cols[k][l] * t;
            }
        }
        self.entries[k] = 0;
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        0
    } else {
        n.isqrt()
    }
}

/// Non-increasing sequences of positive integers whose squares sum to `n`.
pub fn square_partitions(n: i64) -> Vec<Vec<i64>> {
    fn go(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let mut u = isqrt(n).min(max);
        while u >= 1 {
            cur.push(u);
            go(n - u * u, u, cur, out);
            cur.pop();
            u -= 1;
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        go(n, i64::MAX, &mut Vec::new(), &mut out);
    }
    out
}

/// All `B` with `B Bᵀ = D` and principal column `p`, up to permuting and
/// negating non-principal columns.
pub fn enumerate_b(d: &[Vec<i64>], principal: &[i64]) -> Result<Vec<BMatrix>> {
    Ok(BProblem::new(d, principal)?.solve_all())
}

/// Rows of `(C B)ᵀ` on the special representatives, with the `B` that produced them.
///
/// Row 0 is the principal character; the others are sign-normalized and
/// sorted, and the columns of `b` follow the rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    values: Vec<Vec<Cyclotomic>>,
    b: BMatrix,
}

impl Fragment {
    /// Wraps rows and matching `B` columns as given.
    pub fn from_parts(values: Vec<Vec<Cyclotomic>>, b: BMatrix) -> Result<Self> {
        if values.len() != b.column_count() {
            return Err(Error::Shape("fragment rows and B columns differ in number".into()));
        }
        Ok(Fragment { values, b })
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn row(&self, k: usize) -> &[Cyclotomic] {
        &self.values[k]
    }

    pub fn b(&self) -> &BMatrix {
        &self.b
    }

    pub fn row_count(&self) -> usize {
        self.values.len()
    }

    /// Degree relations `Σ_k B_ik d_k = 0`, one per `B` row.
    pub fn degree_relations(&self) -> &[Vec<i64>] {
        &self.b.rows
    }

    /// Negates row `k` together with its `B` column.
    pub fn negate_row(&mut self, k: usize) {
        for v in self.values[k].iter_mut() {
            *v = -&*v;
        }
        for r in self.b.rows.iter_mut() {
            r[k] = -r[k];
        }
    }

    /// Reorders rows (and `B` columns): new row `i` is old row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Fragment> {
        let mut seen = vec![false; self.row_count()];
        if perm.len() != self.row_count()
            || perm.iter().any(|&p| p >= seen.len() || core::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Shape("not a permutation of fragment rows".into()));
        }
        let values = perm.iter().map(|&p| self.values[p].clone()).collect();
        let rows = self.b.rows.iter().map(|r| perm.iter().map(|&p| r[p]).collect()).collect();
        Ok(Fragment { values, b: BMatrix { rows } })
    }

    /// `Σ_k θ_k(t_a) conj(θ_k(t_b))` for all pairs of columns.
    pub fn column_products(&self) -> Vec<Vec<Cyclotomic>> {
        let m = self.values.first().map_or(0, |r| r.len());
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| self.values.iter().fold(Cyclotomic::zero(), |acc, row| acc + &row[a] * &row[b].conj()))
                    .collect()
            })
            .collect()
    }
}

/// Forms `(C B)ᵀ`, normalizes signs and sorts the non-principal rows.
pub fn fragment(c: &GammaMatrix, b: &BMatrix) -> Result<Fragment> {
    let m = c.rows.len();
    if b.row_count() != m || c.rows.iter().any(|r| r.len() != m) {
        return Err(Error::Shape("C and B have incompatible shapes".into()));
    }
    let s = b.column_count();
    let mut values: Vec<Vec<Cyclotomic>> = (0..s)
        .map(|k| {
            (0..m)
                .map(|i| {
                    c.rows[i].iter().zip(&b.rows).fold(Cyclotomic::zero(), |acc, (cij, brow)| {
                        if brow[k] == 0 {
                            acc
                        } else {
                            acc + cij.scale(Rational::from_integer(brow[k] as i128))
                        }
                    })
                })
                .collect()
        })
        .collect();
    if values.first().is_none_or(|r| r.iter().any(|v| *v != Cyclotomic::one())) {
        return Err(Error::Shape("principal row of the fragment is not all ones".into()));
    }
    let mut bm = b.clone();
    for (k, row) in values.iter_mut().enumerate().skip(1) {
        let lead = row.iter().find(|v| !v.is_zero());
        if lead.is_some_and(|v| !v.is_positive_canonical()) {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            for r in bm.rows.iter_mut() {
                r[k] = -r[k];
            }
        }
    }
    let mut perm: Vec<usize> = (1..s).collect();
    perm.sort_by(|&a, &b| values[a].cmp(&values[b]).then_with(|| bm.column(a).cmp(&bm.column(b))));
    perm.insert(0, 0);
    Fragment { values, b: bm }.permute_rows(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::perm::{GeneratedGroup, Permutation};

    fn c3_table() -> CharacterTable {
        let g = GeneratedGroup::generate(3, &[Permutation::parse("(1,2,3)", 3).unwrap()]).unwrap();
        character_table(&g).unwrap()
    }

    #[test]
    fn square_partitions_small() {
        assert_eq!(square_partitions(0), vec![Vec::<i64>::new()]);
        assert_eq!(square_partitions(2), vec![vec![1, 1]]);
        assert_eq!(square_partitions(4), vec![vec![2], vec![1, 1, 1, 1]]);
        assert_eq!(square_partitions(5), vec![vec![2, 1], vec![1, 1, 1, 1, 1]]);
    }

    #[test]
    fn single_difference() {
        let sols = enumerate_b(&[vec![2]], &[0]).unwrap();
        assert_eq!(sols, vec![BMatrix { rows: vec![vec![0, 1, 1]] }]);
        let g = gram(&[vec![1, -1, 0]], 2);
        assert_eq!(g.d, vec![vec![2]]);
    }

    #[test]
    fn infeasible_is_empty() {
        assert!(enumerate_b(&[vec![1]], &[2]).unwrap().is_empty());
        assert!(enumerate_b(&[vec![1, 2], vec![2, 1]], &[0, 0]).unwrap().is_empty());
    }

    #[test]
    fn solutions_satisfy_gram() {
        let d = vec![vec![3, 1, -1], vec![1, 3, 1], vec![-1, 1, 3]];
        let p = vec![1, 0, 0];
        let sols = enumerate_b(&d, &p).unwrap();
        assert!(!sols.is_empty());
        for b in &sols {
            assert_eq!(b.gram(), d);
            assert_eq!(b.column(0), p);
            assert_eq!(*b, b.canonical());
        }
        // independent of row processing order
        let perm = [2usize, 0, 1];
        let dp: Vec<Vec<i64>> = perm.iter().map(|&i| perm.iter().map(|&j| d[i][j]).collect()).collect();
        let pp: Vec<i64> = perm.iter().map(|&i| p[i]).collect();
        let other = enumerate_b(&dp, &pp).unwrap();
        assert_eq!(other.len(), sols.len());
    }

    #[test]
    fn tasks_partition_the_search() {
        let d = vec![vec![4, 1, 0, -1], vec![1, 3, 1, 0], vec![0, 1, 3, 1], vec![-1, 0, 1, 4]];
        let p = vec![1, 0, 0, 1];
        let prob = BProblem::new(&d, &p).unwrap();
        let all = prob.solve_all();
        for depth in 1..=3 {
            let mut merged = BTreeSet::new();
            for t in prob.tasks(depth) {
                merged.extend(prob.solve_task(&t));
            }
            assert_eq!(merged.into_iter().collect::<Vec<_>>(), all);
        }
    }

    #[test]
    fn c3_pipeline() {
        let t = c3_table();
        let special = SpecialClassSet::new(vec![1, 2]).unwrap();
        assert!(verify_special_axioms(t.classes(), &special).unwrap().passed());
        let basis = vanishing_basis(&t, &special).unwrap();
        assert_eq!(basis.len(), 2);
        let gm = gamma_decomposition(&t, &[1, 2], &basis.basis).unwrap();
        // reconstruction is exact
        for (i, &cls) in [1usize, 2].iter().enumerate() {
            for j in 0..3 {
                let mut acc = Cyclotomic::zero();
                for (k, l) in basis.basis.iter().enumerate() {
                    acc = acc + gm.rows[i][k].scale(Rational::from_integer(l[j]));
                }
                assert_eq!(acc, t.character(j).value(cls).clone());
            }
        }
        let triv = t.trivial_index().unwrap();
        let g = gram(&basis.basis, triv);
        let sols = enumerate_b(&g.d, &g.principal).unwrap();
        // G = H solution: B = basis matrix itself
        let cols: Vec<Vec<i64>> =
            (0..3).filter(|&j| j != triv).map(|j| basis.basis.iter().map(|l| l[j] as i64).collect()).collect();
        let own = BMatrix::from_columns(&g.principal, &cols).canonical();
        assert!(sols.contains(&own));
        for b in &sols {
            let f = fragment(&gm, b).unwrap();
            let cp = f.column_products();
            assert_eq!(cp[0][0], Cyclotomic::from_integer(3));
            assert_eq!(cp[0][1], Cyclotomic::zero());
        }
    }

    #[test]
    fn power_closure_failure() {
        let t = c3_table();
        let only_one = SpecialClassSet::new(vec![1]).unwrap();
        let rep = verify_special_axioms(t.classes(), &only_one).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.power_closure_failures.len(), 1);
        let with_identity = SpecialClassSet::new(vec![0, 1, 2]).unwrap();
        assert!(verify_special_axioms(t.classes(), &with_identity).unwrap().contains_identity);
        assert!(SpecialClassSet::new(vec![1, 1]).is_err());
    }

    #[test]
    fn fragment_of_identity_gamma() {
        let c = GammaMatrix { rows: vec![vec![Cyclotomic::one()]] };
        let b = BMatrix { rows: vec![vec![1, -1]] };
        let f = fragment(&c, &b).unwrap();
        assert_eq!(f.row(1), &[Cyclotomic::one()]);
        assert_eq!(f.b().rows, vec![vec![1, 1]]);
        let bad = BMatrix { rows: vec![vec![2, 1]] };
        assert!(fragment(&c, &bad).is_err());
    }
}
