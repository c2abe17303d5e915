//! Exact elimination over reciprocal degrees.
//!
//! Every structure constant `a_xyz` known in `H` gives a linear equation in
//! the unknowns `1/|G|` and `1/d_k`, where `d_k` is the signed degree of
//! fragment row `k`:
//!
//! `a·|C(x)|·|C(y)|·(1/|G|) = Σ_k θ_k(x) θ_k(y) conj(θ_k(z)) / d_k`.
//!
//! Row 0 is the principal character, so its term is the constant 1. Linear
//! projection of such systems, followed by congruences coming from
//! virtual characters of `H`, and short bounded integer arguments, rule out
//! fragments or pin down `|G|`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chartab::CharacterTable;
use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::suzuki::{BMatrix, Fragment, SpecialClassSet};

/// An unknown of the linear stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    One,
    InvOrder,
    /// `1/d_k` for fragment row `k` (0-based; printed 1-based).
    InvDegree(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::One => write!(f, "1"),
            Var::InvOrder => write!(f, "1/|G|"),
            Var::InvDegree(k) => write!(f, "1/d{}", k + 1),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        match s.trim() {
            "1" => Ok(Var::One),
            "invG" | "1/|G|" | "1/G" => Ok(Var::InvOrder),
            t => {
                let k: usize = t
                    .strip_prefix("1/d")
                    .and_then(|n| n.parse().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{t}`")))?;
                Ok(Var::InvDegree(k - 1))
            }
        }
    }
}

/// `Σ c_v · v = 0` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReciprocalEquation {
    terms: BTreeMap<Var, Rational>,
}

impl ReciprocalEquation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Var, Rational)>) -> Self {
        let mut e = Self::new();
        for (v, c) in terms {
            e.add_term(v, c);
        }
        e
    }

    pub fn add_term(&mut self, v: Var, c: Rational) {
        let slot = self.terms.entry(v).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn coefficient(&self, v: Var) -> Rational {
        self.terms.get(&v).copied().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Var, Rational)> + '_ {
        self.terms.iter().map(|(v, c)| (*v, *c))
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, s: Rational) -> Self {
        Self::from_terms(self.terms().map(|(v, c)| (v, c * s)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for (v, c) in other.terms() {
            e.add_term(v, c);
        }
        e
    }

    /// Same relation with primitive integer coefficients, leading one positive.
    pub fn normalized(&self) -> Self {
        let coeffs: Vec<Rational> = self.terms.values().copied().collect();
        let ints = linalg::primitive_integer(&coeffs);
        let flip = ints.first().is_some_and(|x| *x < 0);
        Self::from_terms(
            self.terms.keys().zip(ints).map(|(v, c)| (*v, Rational::from_integer(if flip { -c } else { c }))),
        )
    }

    /// The left-hand side at `|G| = order` and `d_k = degrees[k]`.
    pub fn evaluate(&self, order: i128, degrees: &[i128]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (v, c) in self.terms() {
            let x = match v {
                Var::One => Rational::one(),
                Var::InvOrder => Rational::new(1, order),
                Var::InvDegree(k) => {
                    let d = *degrees.get(k).ok_or(Error::Index { what: "degree", index: k, len: degrees.len() })?;
                    if d == 0 {
                        return Err(Error::Inconsistent(format!("degree d{} is zero", k + 1)));
                    }
                    Rational::new(1, d)
                }
            };
            acc += c * x;
        }
        Ok(acc)
    }
}

impl fmt::Display for ReciprocalEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 = 0");
        }
        for (i, (v, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            match v {
                Var::One => write!(f, "{a}")?,
                Var::InvOrder => write!(f, "{a}/|G|")?,
                Var::InvDegree(k) => write!(f, "{a}/d{}", k + 1)?,
            }
        }
        write!(f, " = 0")
    }
}

/// Equalities `d_b = s·d_a` read off two-term rows of `B`.
///
/// A row `θ_a·B_ia + θ_b·B_ib` with unit entries and no principal part has
/// degree zero, so `1/d_b = -B_ia·B_ib / d_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMerge {
    /// `(representative, sign)` per fragment row.
    map: Vec<(usize, i64)>,
}

impl DegreeMerge {
    pub fn identity(rows: usize) -> Self {
        DegreeMerge { map: (0..rows).map(|k| (k, 1)).collect() }
    }

    pub fn from_b(b: &BMatrix) -> Self {
        let mut m = Self::identity(b.column_count());
        for row in &b.rows {
            let nz: Vec<usize> = (0..row.len()).filter(|&k| row[k] != 0).collect();
            if nz.len() == 2 && row[0] == 0 && nz.iter().all(|&k| row[k].abs() == 1) {
                let (ra, sa) = m.map[nz[0]];
                let (rb, sb) = m.map[nz[1]];
                if ra == rb {
                    continue;
                }
                // d_b = s·d_a, then re-express everything in terms of the smaller representative
                let s = -row[nz[0]] * row[nz[1]];
                let (keep, drop, rel) = if ra < rb { (ra, rb, s * sa * sb) } else { (rb, ra, s * sa * sb) };
                for e in m.map.iter_mut() {
                    if e.0 == drop {
                        *e = (keep, e.1 * rel);
                    }
                }
            }
        }
        m
    }

    pub fn representative(&self, k: usize) -> (usize, i64) {
        self.map[k]
    }

    /// Number of rows sharing `k`'s degree up to sign.
    pub fn class_size(&self, k: usize) -> usize {
        let r = self.map[k].0;
        self.map.iter().filter(|e| e.0 == r).count()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, e)| *e == (k, 1))
    }
}

/// The structure-constant equation for columns `(x, y, z)` of a fragment.
pub fn structure_equation(
    fragment: &Fragment,
    triple: (usize, usize, usize),
    a: u64,
    centralizers: (u64, u64),
    merge: &DegreeMerge,
) -> Result<ReciprocalEquation> {
    let (x, y, z) = triple;
    let width = fragment.values().first().map_or(0, |r| r.len());
    for c in [x, y, z] {
        if c >= width {
            return Err(Error::Index { what: "fragment column", index: c, len: width });
        }
    }
    let mut acc: BTreeMap<Var, Cyclotomic> = BTreeMap::new();
    for (k, row) in fragment.values().iter().enumerate() {
        let c = &(&row[x] * &row[y]) * &row[z].conj();
        if c.is_zero() {
            continue;
        }
        let (var, c) = if k == 0 {
            (Var::One, c)
        } else {
            let (r, s) = merge.representative(k);
            (Var::InvDegree(r), c.scale(Rational::from_integer(s as i128)))
        };
        let slot = acc.entry(var).or_insert_with(Cyclotomic::zero);
        *slot = &*slot + &c;
    }
    let mut eq = ReciprocalEquation::new();
    eq.add_term(Var::InvOrder, Rational::from_integer(a as i128 * centralizers.0 as i128 * centralizers.1 as i128));
    for (v, c) in acc {
        let r =
            c.as_rational().ok_or_else(|| Error::NotIntegral(format!("coefficient of {v} is {c}, not rational")))?;
        eq.add_term(v, -r);
    }
    Ok(eq)
}

/// An implied relation with the multipliers that produce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedRelation {
    pub relation: ReciprocalEquation,
    /// `relation = Σ_i multipliers[i] · equations[i]`.
    pub multipliers: Vec<i128>,
}

impl ProjectedRelation {
    /// Recombines the inputs with the multipliers and compares exactly.
    pub fn verify(&self, equations: &[ReciprocalEquation]) -> bool {
        if equations.len() != self.multipliers.len() {
            return false;
        }
        let sum = equations
            .iter()
            .zip(&self.multipliers)
            .fold(ReciprocalEquation::new(), |acc, (e, &m)| acc.plus(&e.scaled(Rational::from_integer(m))));
        sum == self.relation
    }
}

/// Eliminates every variable outside `keep`; one relation per independent
/// combination with a nonzero remainder.
pub fn project(equations: &[ReciprocalEquation], keep: &BTreeSet<Var>) -> Vec<ProjectedRelation> {
    let vars: BTreeSet<Var> = equations.iter().flat_map(|e| e.variables()).collect();
    let dropped: Vec<Var> = vars.iter().copied().filter(|v| !keep.contains(v)).collect();
    let a: Vec<Vec<Rational>> = equations.iter().map(|e| dropped.iter().map(|&v| e.coefficient(v)).collect()).collect();
    let mut out = Vec::new();
    for m in linalg::left_nullspace(&a, equations.len()) {
        let multipliers = linalg::primitive_integer(&m);
        let relation = equations
            .iter()
            .zip(&multipliers)
            .fold(ReciprocalEquation::new(), |acc, (e, &k)| acc.plus(&e.scaled(Rational::from_integer(k))));
        if !relation.is_zero() {
            out.push(ProjectedRelation { relation, multipliers });
        }
    }
    out
}

/// Unknowns of the integer stage: the index `n = |G:H|` and signed degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolyVar {
    N,
    D(usize),
}

impl fmt::Display for PolyVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyVar::N => write!(f, "n"),
            PolyVar::D(k) => write!(f, "d{}", k + 1),
        }
    }
}

/// Integer polynomial relation `Σ c·monomial = 0`; monomials are sorted variable lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyRelation {
    terms: BTreeMap<Vec<PolyVar>, i128>,
}

impl PolyRelation {
    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<PolyVar>, i128)>) -> Self {
        let mut p = PolyRelation::default();
        for (mut m, c) in terms {
            m.sort();
            *p.terms.entry(m).or_insert(0) += c;
        }
        p.terms.retain(|_, c| *c != 0);
        p
    }

    /// Clears denominators of a reciprocal relation using `|G| = order_h·n`.
    pub fn from_reciprocal(rel: &ReciprocalEquation, order_h: u64) -> Self {
        let degs: Vec<usize> = rel
            .variables()
            .into_iter()
            .filter_map(|v| if let Var::InvDegree(k) = v { Some(k) } else { None })
            .collect();
        let all_d: Vec<PolyVar> = degs.iter().map(|&k| PolyVar::D(k)).collect();
        let denom = rel.terms().fold(1i128, |acc, (_, c)| acc.lcm(c.denom()));
        let h = order_h as i128;
        let terms = rel.terms().map(|(v, c)| {
            let c = (c * Rational::from_integer(denom)).to_integer();
            match v {
                Var::One => {
                    let mut m = all_d.clone();
                    m.push(PolyVar::N);
                    (m, c * h)
                }
                Var::InvOrder => (all_d.clone(), c),
                Var::InvDegree(k) => {
                    let mut m: Vec<PolyVar> = all_d.iter().copied().filter(|v| *v != PolyVar::D(k)).collect();
                    m.push(PolyVar::N);
                    (m, c * h)
                }
            }
        });
        PolyRelation::from_terms(terms.collect::<Vec<_>>()).reduced()
    }

    /// Divides out the content and any variable common to every monomial
    /// (all unknowns are nonzero), leading coefficient positive.
    pub fn reduced(&self) -> Self {
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut common: Option<Vec<PolyVar>> = None;
        for m in self.terms.keys() {
            common = Some(match common {
                None => m.clone(),
                Some(c) => multiset_intersection(&c, m),
            });
        }
        let common = common.unwrap_or_default();
        let g = self.terms.values().fold(0i128, |acc, c| acc.gcd(c));
        let lead = self.terms.iter().min_by(|a, b| display_order(a.0, b.0));
        let sign = if lead.is_some_and(|(_, c)| *c < 0) { -1 } else { 1 };
        PolyRelation::from_terms(
            self.terms.iter().map(|(m, c)| (multiset_difference(m, &common), sign * c / g)).collect::<Vec<_>>(),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[PolyVar], i128)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), *c))
    }

    pub fn coefficient(&self, monomial: &[PolyVar]) -> i128 {
        let mut m = monomial.to_vec();
        m.sort();
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<PolyVar> {
        self.terms.keys().flatten().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the relation reads `c = 0` with no unknowns.
    pub fn constant_only(&self) -> Option<i128> {
        if self.terms.len() == 1 {
            self.terms.get(&Vec::new()).copied()
        } else {
            None
        }
    }

    pub fn evaluate(&self, value: &dyn Fn(PolyVar) -> i128) -> i128 {
        self.terms.iter().map(|(m, c)| m.iter().fold(*c, |acc, v| acc * value(*v))).sum()
    }

    pub fn evaluate_mod(&self, value: &dyn Fn(PolyVar) -> i128, m: i128) -> i128 {
        self.terms
            .iter()
            .map(|(mono, c)| mono.iter().fold(c.mod_floor(&m), |acc, v| (acc * value(*v).mod_floor(&m)) % m))
            .sum::<i128>()
            .mod_floor(&m)
    }
}

/// Higher total degree first, then fewer factors of `n`.
fn display_order(a: &[PolyVar], b: &[PolyVar]) -> core::cmp::Ordering {
    let n_count = |m: &[PolyVar]| m.iter().filter(|v| **v == PolyVar::N).count();
    b.len().cmp(&a.len()).then_with(|| n_count(a).cmp(&n_count(b))).then_with(|| a.cmp(b))
}

fn multiset_intersection(a: &[PolyVar], b: &[PolyVar]) -> Vec<PolyVar> {
    let mut rest = b.to_vec();
    let mut out = Vec::new();
    for v in a {
        if let Some(i) = rest.iter().position(|w| w == v) {
            rest.remove(i);
            out.push(*v);
        }
    }
    out
}

fn multiset_difference(a: &[PolyVar], b: &[PolyVar]) -> Vec<PolyVar> {
    let mut out = a.to_vec();
    for v in b {
        if let Some(i) = out.iter().position(|w| w == v) {
            out.remove(i);
        }
    }
    out
}

impl fmt::Display for PolyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 = 0");
        }
        // highest degree first
        let mut terms: Vec<(&Vec<PolyVar>, &i128)> = self.terms.iter().collect();
        terms.sort_by(|a, b| display_order(a.0, b.0));
        for (i, (m, c)) in terms.iter().enumerate() {
            let sign = if **c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            if m.is_empty() {
                write!(f, "{a}")?;
            } else {
                if a != 1 {
                    write!(f, "{a}*")?;
                }
                let names: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                write!(f, "{}", names.join("*"))?;
            }
        }
        write!(f, " = 0")
    }
}

/// `d_k ≡ residue (mod modulus)` together with the linear form that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceConstraint {
    pub row: usize,
    pub modulus: u64,
    pub residue: u64,
    /// `d ≡ Σ coeff · conj(θ(t_col))`; coefficients reduced mod `modulus`.
    pub form: Vec<(usize, i128)>,
}

impl CongruenceConstraint {
    pub fn holds(&self, degree: i128) -> bool {
        degree.mod_floor(&(self.modulus as i128)) == self.residue as i128
    }
}

impl fmt::Display for CongruenceConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{} ≡ {} (mod {})", self.row + 1, self.residue, self.modulus)
    }
}

/// `|G:H| ≡ residue (mod modulus)`, an input about `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexCongruence {
    pub modulus: u64,
    pub residue: u64,
}

impl IndexCongruence {
    pub fn holds(&self, n: i128) -> bool {
        n.mod_floor(&(self.modulus as i128)) == (self.residue % self.modulus) as i128
    }
}

impl fmt::Display for IndexCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|G:H| ≡ {} (mod {})", self.residue, self.modulus)
    }
}

/// Integrality of `(ψ, θ|_H)` for a virtual character `ψ` of `H` supported on
/// the identity and the special classes.
///
/// `columns[i]` is the class of `H` behind fragment column `i`; `row` gives
/// `θ` there and `row_index` names its degree.
pub fn congruence_from_psi(
    table: &CharacterTable,
    special: &SpecialClassSet,
    columns: &[usize],
    psi: &[i128],
    row: &[Cyclotomic],
    row_index: usize,
) -> Result<CongruenceConstraint> {
    let values = table.combination(psi)?;
    for (c, v) in values.values().iter().enumerate() {
        if c != 0 && !special.contains(c) && !v.is_zero() {
            return Err(Error::Inconsistent(format!("ψ does not vanish on non-special class {c}")));
        }
    }
    if row.len() != columns.len() {
        return Err(Error::Shape("fragment row and column list differ in length".into()));
    }
    for &c in special.classes() {
        if !values.value(c).is_zero() && !columns.contains(&c) {
            return Err(Error::Shape(format!("ψ is nonzero on class {c}, which has no fragment column")));
        }
    }
    let int = |v: &Cyclotomic, what: &str| v.as_integer().ok_or_else(|| Error::NotIntegral(format!("{what} = {v}")));
    let psi1 = int(values.value(0), "ψ(1)")?;
    let sizes = table.classes().sizes();
    let weights: Vec<i128> = columns
        .iter()
        .map(|&c| Ok(sizes[c] as i128 * int(values.value(c), "ψ on a special class")?))
        .collect::<Result<_>>()?;
    let order = table.order() as i128;
    let g = weights.iter().fold(psi1.gcd(&order), |acc, w| acc.gcd(w));
    let m = order / g;
    // psi1/g · d + Σ w_i/g · conj θ_i ≡ 0 (mod m)
    let lead = (psi1 / g).mod_floor(&m);
    let ext = lead.extended_gcd(&m);
    if ext.gcd != 1 && m != 1 {
        return Err(Error::Inconsistent(format!("ψ(1) is not invertible modulo {m}")));
    }
    let inv = ext.x.mod_floor(&m.max(1));
    let form: Vec<(usize, i128)> = weights
        .iter()
        .enumerate()
        .map(|(i, w)| (i, (-(w / g) * inv).mod_floor(&m.max(1))))
        .filter(|(_, c)| *c != 0)
        .collect();
    let mut acc = Cyclotomic::zero();
    for &(i, c) in &form {
        acc = acc + row[i].conj().scale(Rational::from_integer(c));
    }
    let r = int(&acc, "congruence right-hand side")?.mod_floor(&m.max(1));
    // present the form with small representatives, e.g. 4θ(z) − 3θ(x)
    let form = form.into_iter().map(|(i, c)| (i, if 2 * c > m { c - m } else { c })).collect();
    Ok(CongruenceConstraint { row: row_index, modulus: m as u64, residue: r as u64, form })
}

/// Why an elimination stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A relation reduced to a nonzero constant.
    NonzeroConstant { relation: String, constant: i128 },
    /// Every residue tuple allowed by the congruences violates a relation.
    EmptyResidueScan { relation: String, modulus: u64, scanned: u64 },
    /// No group order survives the bounds.
    NoAdmissibleOrder { scanned: u64 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::NonzeroConstant { relation, constant } => {
                write!(f, "relation {relation} reduces to {constant} = 0")
            }
            Certificate::EmptyResidueScan { relation, modulus, scanned } => {
                write!(f, "relation {relation} has no solution modulo {modulus} ({scanned} residue tuples scanned)")
            }
            Certificate::NoAdmissibleOrder { scanned } => {
                write!(f, "no admissible order among {scanned} candidates")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationOutcome {
    Contradiction(Certificate),
    /// `|G|` lies in `orders`; `steps` records the argument.
    ForcedOrder {
        orders: Vec<u64>,
        steps: Vec<String>,
    },
    Inconclusive(Vec<String>),
}

impl EliminationOutcome {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, EliminationOutcome::Contradiction(_))
    }

    pub fn forced_orders(&self) -> Option<&[u64]> {
        match self {
            EliminationOutcome::ForcedOrder { orders, .. } => Some(orders),
            _ => None,
        }
    }
}

impl fmt::Display for EliminationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EliminationOutcome::Contradiction(c) => write!(f, "Contradiction: {c}"),
            EliminationOutcome::ForcedOrder { orders, .. } => {
                let o: Vec<String> = orders.iter().map(|x| x.to_string()).collect();
                write!(f, "ForcedOrder {{{}}}", o.join(", "))
            }
            EliminationOutcome::Inconclusive(notes) => write!(f, "Inconclusive: {}", notes.join("; ")),
        }
    }
}

/// Searches residues of the unknowns modulo the lcm of all moduli for a
/// common zero of the relations.
pub fn residue_refute(
    relations: &[PolyRelation],
    congruences: &[CongruenceConstraint],
    index: IndexCongruence,
) -> EliminationOutcome {
    for r in relations {
        if let Some(c) = r.constant_only() {
            return EliminationOutcome::Contradiction(Certificate::NonzeroConstant {
                relation: r.to_string(),
                constant: c,
            });
        }
    }
    let vars: BTreeSet<PolyVar> = relations.iter().flat_map(|r| r.variables()).collect();
    let mut moduli: BTreeMap<PolyVar, Vec<(i128, i128)>> = BTreeMap::new();
    for c in congruences {
        if vars.contains(&PolyVar::D(c.row)) {
            moduli.entry(PolyVar::D(c.row)).or_default().push((c.modulus as i128, c.residue as i128));
        }
    }
    if vars.contains(&PolyVar::N) {
        moduli.entry(PolyVar::N).or_default().push((index.modulus as i128, index.residue as i128));
    }
    let m = moduli.values().flatten().fold(1i128, |acc, (q, _)| acc.lcm(q));
    if m == 1 {
        return EliminationOutcome::Inconclusive(vec![String::from("no congruence applies; every residue survives")]);
    }
    let vars: Vec<PolyVar> = vars.into_iter().collect();
    let candidates: Vec<Vec<i128>> = vars
        .iter()
        .map(|v| {
            let cs = moduli.get(v).cloned().unwrap_or_default();
            (0..m).filter(|x| cs.iter().all(|(q, r)| x.mod_floor(q) == r.mod_floor(q))).collect()
        })
        .collect();
    let scanned: u64 = candidates.iter().map(|c| c.len() as u64).product();
    let mut survivors = Vec::new();
    let mut idx = vec![0usize; vars.len()];
    if candidates.iter().all(|c| !c.is_empty()) {
        loop {
            let assign: BTreeMap<PolyVar, i128> =
                vars.iter().enumerate().map(|(p, v)| (*v, candidates[p][idx[p]])).collect();
            let value = |v: PolyVar| assign[&v];
            if relations.iter().all(|r| r.evaluate_mod(&value, m) == 0) {
                let desc: Vec<String> = assign.iter().map(|(v, x)| format!("{v}≡{x}")).collect();
                survivors.push(desc.join(","));
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < candidates[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    if survivors.is_empty() {
        let relation = relations.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ");
        EliminationOutcome::Contradiction(Certificate::EmptyResidueScan { relation, modulus: m as u64, scanned })
    } else {
        let mut notes = vec![format!("surviving residues modulo {m}:")];
        notes.extend(survivors);
        EliminationOutcome::Inconclusive(notes)
    }
}

/// Bounded case analysis for `d_a·d_b = k·n·(d_a + d_b)`.
///
/// With `s = d_a + d_b`: each `d² < |G|` gives `|s| < |H|/k`; `Σd² ≤ |G|` gives
/// `s > -|H|/(2k)`. For `s > 0` both degrees are positive and
/// `2kn ≤ s ≤ |H|/k`, bounding `n`. For `s < 0` the degrees share a factor
/// `t` from their congruence, and `a = d/t` is scanned modulo the index
/// modulus, where every surviving residue of `a + b` must fall in the
/// negative window.
pub fn finisher_frag4(
    relation: &PolyRelation,
    degrees: (usize, usize),
    congruences: &[CongruenceConstraint],
    index: IndexCongruence,
    order_h: u64,
) -> Result<EliminationOutcome> {
    let (da, db) = (PolyVar::D(degrees.0), PolyVar::D(degrees.1));
    let p = relation.coefficient(&[da, db]);
    let qa = relation.coefficient(&[PolyVar::N, da]);
    let qb = relation.coefficient(&[PolyVar::N, db]);
    let shape_ok = p != 0
        && qa == qb
        && qa % p == 0
        && relation.terms().count() == 3
        && relation.variables() == [PolyVar::N, da, db].into_iter().collect();
    if !shape_ok || -qa / p <= 0 {
        return Err(Error::Shape(format!("expected d·d' = k·n·(d + d'), got {relation}")));
    }
    let k = (-qa / p) as u64;
    let find = |row: usize| {
        congruences.iter().find(|c| c.row == row).ok_or_else(|| Error::Shape(format!("no congruence for d{}", row + 1)))
    };
    let (ca, cb) = (find(degrees.0)?, find(degrees.1)?);
    let h = order_h as i128;
    let ki = k as i128;
    let mut steps = vec![
        format!(
            "relation: {relation}, i.e. d{}*d{} = {k}*n*(d{} + d{})",
            degrees.0 + 1,
            degrees.1 + 1,
            degrees.0 + 1,
            degrees.1 + 1
        ),
        format!("assumed: {index}"),
    ];
    // strict d² < |G| as printed
    let upper = h / ki; // |s| < upper
    steps.push(format!("d² < |G| for both degrees gives |s| < {upper}"));
    // s² = Σd² + 2kns < |G| + 2kns gives s > -|H|/(2k)
    let lower = -(h / (2 * ki)); // s > lower
    steps.push(format!("Σd² ≤ |G| gives s > {lower}"));
    // positive case, printed chain 2kn ≤ s ≤ |H|/k
    let n_bound = upper / (2 * ki);
    let positive: Vec<u64> = (1..=n_bound).filter(|&n| index.holds(n)).map(|n| n as u64).collect();
    steps.push(format!("s > 0: {}n ≤ s ≤ {upper} gives n ≤ {n_bound}; admissible n: {:?}", 2 * k, positive));
    // negative case
    let t =
        (ca.residue as i128).gcd(&(ca.modulus as i128)).gcd(&(cb.residue as i128)).gcd(&(cb.modulus as i128)).gcd(&ki);
    let (ma, ra) = (ca.modulus as i128 / t, ca.residue as i128 / t);
    let (mb, rb) = (cb.modulus as i128 / t, cb.residue as i128 / t);
    let scan = ma.lcm(&mb).lcm(&(index.modulus as i128));
    let mut sums = BTreeSet::new();
    let mut witnesses = Vec::new();
    for a in (0..scan).filter(|a| a.mod_floor(&ma) == ra.mod_floor(&ma)) {
        for b in (0..scan).filter(|b| b.mod_floor(&mb) == rb.mod_floor(&mb)) {
            for n in (0..scan).filter(|&n| index.holds(n)) {
                if (a * b - (ki / t) * n * (a + b)).mod_floor(&scan) == 0 {
                    sums.insert((a + b).mod_floor(&scan));
                    witnesses.push((n, a, b));
                }
            }
        }
    }
    // a + b = s/t with lower < s < 0
    let window: Vec<i128> = (lower / t - 1..0).filter(|x| x * t > lower).collect();
    let negative: Vec<i128> = window.iter().copied().filter(|x| sums.contains(&x.mod_floor(&scan))).collect();
    steps.push(format!(
        "s < 0: with a = d/{t}, residues of a + b modulo {scan} are {:?}; none may lie in {}..={}",
        sums,
        window.first().copied().unwrap_or(0),
        window.last().copied().unwrap_or(0)
    ));
    steps.push(String::from("strictness: d² < |G| strict and Σd² ≤ |G| non-strict, as printed"));
    if negative.is_empty() {
        if positive.is_empty() {
            return Ok(EliminationOutcome::Contradiction(Certificate::NoAdmissibleOrder { scanned: n_bound as u64 }));
        }
        let orders = positive.iter().map(|n| n * order_h).collect();
        Ok(EliminationOutcome::ForcedOrder { orders, steps })
    } else {
        steps.push(format!("negative case not excluded: a + b ∈ {negative:?} survive"));
        for (n, a, b) in
            witnesses.iter().filter(|(_, a, b)| negative.iter().any(|x| x.mod_floor(&scan) == (a + b).mod_floor(&scan)))
        {
            steps.push(format!("witness n≡{n}, a≡{a}, b≡{b} (mod {scan})"));
        }
        Ok(EliminationOutcome::Inconclusive(steps))
    }
}

/// `|G| = multiplier·|d|` with at least `equal_degree_count` irreducibles of
/// degree `|d|`: `count·d² ≤ |G|` bounds `|d|`, then divisibility filters.
pub fn finisher_thm108(multiplier: u64, equal_degree_count: u64, divisibility: u64) -> EliminationOutcome {
    let bound = multiplier.checked_div(equal_degree_count).unwrap_or(0);
    let orders: Vec<u64> =
        (1..=bound).map(|d| multiplier * d).filter(|o| divisibility != 0 && o % divisibility == 0).collect();
    if orders.is_empty() {
        return EliminationOutcome::Contradiction(Certificate::NoAdmissibleOrder { scanned: bound });
    }
    let steps = vec![
        format!("|G| = {multiplier}·|d|"),
        format!("{equal_degree_count}·d² ≤ |G| gives |d| ≤ {bound}"),
        format!("{divisibility} divides |G|"),
    ];
    EliminationOutcome::ForcedOrder { orders, steps }
}

/// `|G| = r·d` from a relation `α·(1/|G|) + β·(1/d) = 0`.
pub fn order_degree_ratio(relation: &ReciprocalEquation, degree: usize) -> Result<Rational> {
    let expected: BTreeSet<Var> = [Var::InvOrder, Var::InvDegree(degree)].into_iter().collect();
    if relation.variables() != expected {
        return Err(Error::Shape(format!("expected a relation in 1/|G| and 1/d{} only, got {relation}", degree + 1)));
    }
    // α/|G| = -β/d  ⇒  |G| = -(α/β)·d
    Ok(-relation.coefficient(Var::InvOrder) / relation.coefficient(Var::InvDegree(degree)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn eq(terms: &[(Var, i128)]) -> ReciprocalEquation {
        ReciprocalEquation::from_terms(terms.iter().map(|(v, c)| (*v, r(*c))))
    }

    #[test]
    fn var_names_round_trip() {
        for v in [Var::One, Var::InvOrder, Var::InvDegree(6)] {
            let s = match v {
                Var::InvOrder => String::from("invG"),
                _ => v.to_string(),
            };
            assert_eq!(s.parse::<Var>().unwrap(), v);
        }
        assert!("1/d0".parse::<Var>().is_err());
        assert!("d3".parse::<Var>().is_err());
    }

    #[test]
    fn projection_of_two_equations() {
        // x + y = 1 and x - y = 3 over variables; eliminate y
        let e1 = eq(&[(Var::InvDegree(1), 1), (Var::InvDegree(2), 1), (Var::One, -1)]);
        let e2 = eq(&[(Var::InvDegree(1), 1), (Var::InvDegree(2), -1), (Var::One, -3)]);
        let keep = [Var::InvDegree(1), Var::One].into_iter().collect();
        let rels = project(&[e1.clone(), e2.clone()], &keep);
        assert_eq!(rels.len(), 1);
        assert!(rels[0].verify(&[e1, e2]));
        assert_eq!(rels[0].relation.normalized(), eq(&[(Var::One, -2), (Var::InvDegree(1), 1)]).normalized());
    }

    #[test]
    fn frag1_congruence_contradiction() {
        // 2·d11 + 5·d7 = 0 is -4·d11 = 10·d7
        let rel = PolyRelation::from_terms([(vec![PolyVar::D(10)], -4), (vec![PolyVar::D(6)], -10)]).reduced();
        assert_eq!(rel.coefficient(&[PolyVar::D(10)]), 2);
        let cong = [
            CongruenceConstraint { row: 10, modulus: 9, residue: 1, form: vec![] },
            CongruenceConstraint { row: 6, modulus: 9, residue: 2, form: vec![] },
        ];
        let out = residue_refute(&[rel], &cong, IndexCongruence { modulus: 27, residue: 1 });
        assert!(out.is_contradiction(), "{out}");
    }

    #[test]
    fn frag2_congruence_contradiction() {
        let rel = PolyRelation::from_terms([
            (vec![PolyVar::D(1)], 21),
            (vec![PolyVar::N, PolyVar::D(1)], -1),
            (vec![PolyVar::N], -8),
        ]);
        let cong = [CongruenceConstraint { row: 1, modulus: 9, residue: 1, form: vec![] }];
        for index in [IndexCongruence { modulus: 9, residue: 1 }, IndexCongruence { modulus: 27, residue: 1 }] {
            assert!(residue_refute(core::slice::from_ref(&rel), &cong, index).is_contradiction());
        }
        // the degree congruence alone already fails: 21 - 9n ≡ 3 (mod 9)
        assert!(residue_refute(core::slice::from_ref(&rel), &cong, IndexCongruence { modulus: 1, residue: 0 })
            .is_contradiction());
        // without it, d2 ≡ 4 (mod 9) survives
        let out = residue_refute(&[rel], &[], IndexCongruence { modulus: 9, residue: 1 });
        assert!(matches!(&out, EliminationOutcome::Inconclusive(n) if n.iter().any(|s| s.contains("d2≡4"))), "{out}");
    }

    #[test]
    fn trivial_relation_is_inconclusive() {
        let out = residue_refute(&[PolyRelation::default()], &[], IndexCongruence { modulus: 27, residue: 1 });
        assert!(matches!(out, EliminationOutcome::Inconclusive(_)));
        let constant = PolyRelation::from_terms([(vec![], 2)]);
        assert!(residue_refute(&[constant], &[], IndexCongruence { modulus: 27, residue: 1 }).is_contradiction());
    }

    #[test]
    fn clearing_denominators() {
        // 27/d3 + 27/d9 = 9/(2n) with |G| = 648n, i.e. 27/d3 + 27/d9 - 2916/|G| = 0
        let rel = eq(&[(Var::InvDegree(2), 27), (Var::InvDegree(8), 27), (Var::InvOrder, -2916)]);
        let p = PolyRelation::from_reciprocal(&rel, 648);
        let expected = PolyRelation::from_terms([
            (vec![PolyVar::D(2), PolyVar::D(8)], 1),
            (vec![PolyVar::N, PolyVar::D(2)], -6),
            (vec![PolyVar::N, PolyVar::D(8)], -6),
        ]);
        assert_eq!(p, expected);
        // n = 1, d3 = d9 = 12 satisfies it
        let v = |x: PolyVar| match x {
            PolyVar::N => 1,
            _ => 12,
        };
        assert_eq!(p.evaluate(&v), 0);
        // a single reciprocal kept alone reduces to a constant
        let lone = PolyRelation::from_reciprocal(&eq(&[(Var::InvDegree(2), 54)]), 648);
        assert_eq!(lone.constant_only(), Some(1));
    }

    fn frag4_relation() -> PolyRelation {
        PolyRelation::from_terms([
            (vec![PolyVar::D(2), PolyVar::D(8)], 1),
            (vec![PolyVar::N, PolyVar::D(2)], -6),
            (vec![PolyVar::N, PolyVar::D(8)], -6),
        ])
    }

    fn frag4_congruences() -> Vec<CongruenceConstraint> {
        vec![
            CongruenceConstraint { row: 2, modulus: 27, residue: 12, form: vec![] },
            CongruenceConstraint { row: 8, modulus: 27, residue: 12, form: vec![] },
        ]
    }

    #[test]
    fn frag4_forces_order() {
        let out = finisher_frag4(
            &frag4_relation(),
            (2, 8),
            &frag4_congruences(),
            IndexCongruence { modulus: 27, residue: 1 },
            648,
        )
        .unwrap();
        assert_eq!(out.forced_orders(), Some(&[648u64][..]), "{out}");
    }

    #[test]
    fn frag4_weakened_index() {
        let out = finisher_frag4(
            &frag4_relation(),
            (2, 8),
            &frag4_congruences(),
            IndexCongruence { modulus: 9, residue: 1 },
            648,
        )
        .unwrap();
        match out {
            EliminationOutcome::Inconclusive(steps) => {
                assert!(steps.iter().any(|s| s.contains("n ≤ 9") && s.contains("[1]")));
            }
            other => panic!("expected the negative case to survive, got {other}"),
        }
    }

    #[test]
    fn frag4_rejects_other_shapes() {
        let bad = PolyRelation::from_terms([(vec![PolyVar::D(2)], 1), (vec![PolyVar::N], 1)]);
        assert!(finisher_frag4(&bad, (2, 8), &frag4_congruences(), IndexCongruence { modulus: 27, residue: 1 }, 648)
            .is_err());
    }

    /// Direct search over small indices: only n = 1 admits degrees.
    #[test]
    fn frag4_brute_force_oracle() {
        let mut found = BTreeSet::new();
        for n in 1i128..=60 {
            if n % 27 != 1 {
                continue;
            }
            let g = 648 * n;
            let lim = g.isqrt() + 1;
            for d3 in -lim..=lim {
                if d3 == 0 || d3.mod_floor(&27) != 12 || d3 * d3 >= g {
                    continue;
                }
                for d9 in -lim..=lim {
                    if d9 == 0 || d9.mod_floor(&27) != 12 || d9 * d9 >= g || 1 + d3 * d3 + d9 * d9 > g {
                        continue;
                    }
                    if d3 * d9 == 6 * n * (d3 + d9) {
                        found.insert(n);
                    }
                }
            }
        }
        assert_eq!(found.into_iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn thm108_finisher() {
        assert_eq!(finisher_thm108(27, 5, 108).forced_orders(), Some(&[108u64][..]));
        assert_eq!(finisher_thm108(27, 1, 108).forced_orders(), Some(&[108u64, 216, 324, 432, 540, 648][..]));
        assert!(finisher_thm108(27, 5, 109).is_contradiction());
    }

    #[test]
    fn ratio_from_relation() {
        let rel = eq(&[(Var::InvOrder, 27), (Var::InvDegree(1), 1)]);
        assert_eq!(order_degree_ratio(&rel, 1).unwrap(), r(-27));
        assert!(order_degree_ratio(&rel, 2).is_err());
    }

    #[test]
    fn merge_from_b() {
        // columns: principal, θ2, θ3, θ4; rows θ2 - θ3 and -θ2 - θ4
        let b = BMatrix { rows: vec![vec![1, 1, 0, 0], vec![0, 1, -1, 0], vec![0, -1, 0, -1]] };
        let m = DegreeMerge::from_b(&b);
        assert_eq!(m.representative(2), (1, 1));
        assert_eq!(m.representative(3), (1, -1));
        assert_eq!(m.class_size(1), 3);
        assert!(DegreeMerge::identity(3).is_identity());
    }

    #[test]
    fn equation_display() {
        let e = eq(&[(Var::One, -1), (Var::InvOrder, 17496), (Var::InvDegree(1), 8)]);
        assert_eq!(e.to_string(), "-1 + 17496/|G| + 8/d2 = 0");
    }
}
