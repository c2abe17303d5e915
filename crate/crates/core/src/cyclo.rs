//! Exact cyclotomic numbers.
//!
//! A value of conductor `N` is stored as its coordinates in the power basis
//! `1, E(N), …, E(N)^(φ(N)-1)` of `Q(E(N))`, i.e. reduced modulo the
//! cyclotomic polynomial `Φ_N`. After every operation the conductor is
//! lowered to the least `N` whose field contains the value, so equal values
//! have equal representations and a value is rational iff its conductor is 1.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// Exact rational coefficient.
pub type Rational = num_rational::Ratio<i128>;

/// Largest conductor accepted anywhere.
pub const MAX_CONDUCTOR: u32 = 10_000;

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i128> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division by a monic integer polynomial.
fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut q = vec![0i128; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Arithmetic in one fixed field `Q(E(n))`, without conductor minimization.
///
/// Elements are coordinate vectors of length `φ(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloField {
    n: u32,
    phi: Vec<i128>,
}

impl CycloField {
    pub fn new(n: u32) -> Self {
        assert!((1..=MAX_CONDUCTOR).contains(&n), "conductor out of range");
        CycloField { n, phi: cyclotomic_polynomial(n) }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    pub fn one(&self) -> Vec<Rational> {
        let mut v = self.zero();
        v[0] = Rational::one();
        v
    }

    /// Reduces a coefficient vector in powers of `E(n)` (any length) to field coordinates.
    pub fn reduce(&self, full: &[Rational]) -> Vec<Rational> {
        let n = self.n as usize;
        let mut v = vec![Rational::zero(); n.max(self.dim())];
        for (k, c) in full.iter().enumerate() {
            if !c.is_zero() {
                v[k % n] += *c;
            }
        }
        let d = self.dim();
        for i in (d..v.len()).rev() {
            let t = v[i];
            if t.is_zero() {
                continue;
            }
            for (j, &pc) in self.phi.iter().enumerate() {
                if pc != 0 {
                    v[i - d + j] -= t * Rational::from_integer(pc);
                }
            }
        }
        v.truncate(d);
        v
    }

    /// `E(n)^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> Vec<Rational> {
        let n = self.n as i64;
        let mut full = vec![Rational::zero(); self.n as usize];
        full[k.rem_euclid(n) as usize] = Rational::one();
        self.reduce(&full)
    }

    pub fn add(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &[Rational], s: Rational) -> Vec<Rational> {
        a.iter().map(|x| x * s).collect()
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut full = vec![Rational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        self.reduce(&full)
    }

    /// Image under `E(n) ↦ E(n)^k`; `k` must be coprime to `n`.
    pub fn galois(&self, a: &[Rational], k: i64) -> Vec<Rational> {
        let n = self.n as i64;
        let mut full = vec![Rational::zero(); self.n as usize];
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                full[(i as i64 * k).rem_euclid(n) as usize] += *c;
            }
        }
        self.reduce(&full)
    }

    pub fn conj(&self, a: &[Rational]) -> Vec<Rational> {
        self.galois(a, -1)
    }

    /// Coordinates of `c`, whose conductor must divide `n`.
    pub fn embed(&self, c: &Cyclotomic) -> Result<Vec<Rational>> {
        if !self.n.is_multiple_of(c.conductor) {
            return Err(Error::Shape(alloc::format!("conductor {} does not divide {}", c.conductor, self.n)));
        }
        let step = (self.n / c.conductor) as usize;
        let mut full = vec![Rational::zero(); self.n as usize];
        for (k, x) in c.coeffs.iter().enumerate() {
            full[k * step] = *x;
        }
        Ok(self.reduce(&full))
    }

    /// Canonical form of a field element.
    pub fn to_cyclotomic(&self, a: &[Rational]) -> Cyclotomic {
        Cyclotomic::from_field_coords(self.n, a.to_vec())
    }
}

/// An exact element of a cyclotomic field in canonical form.
///
/// The derived order compares the conductor first, then the coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_integer(i: i128) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(i))
    }

    /// `E(n)^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        Cyclotomic::from_exponent_terms(n, &[(k, Rational::one())])
    }

    /// `Σ c · E(n)^k` over the given terms.
    pub fn from_exponent_terms(n: u32, terms: &[(i64, Rational)]) -> Self {
        let field = CycloField::new(n);
        let mut full = vec![Rational::zero(); n as usize];
        for &(k, c) in terms {
            full[k.rem_euclid(n as i64) as usize] += c;
        }
        field.to_cyclotomic(&field.reduce(&full))
    }

    /// Canonical form of field coordinates in `Q(E(n))`.
    pub fn from_field_coords(n: u32, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), totient(n) as usize);
        minimize(n, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates, length `φ(conductor)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.conductor == 1 {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// All coordinates are integers (for values in `Z[E(N)]` this means an algebraic integer).
    pub fn has_integral_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// First nonzero coordinate is positive; zero counts as positive.
    pub fn is_positive_canonical(&self) -> bool {
        self.coeffs.iter().find(|c| !c.is_zero()).is_none_or(|c| c.is_positive())
    }

    fn binary(
        &self,
        other: &Cyclotomic,
        op: impl Fn(&CycloField, &[Rational], &[Rational]) -> Vec<Rational>,
    ) -> Cyclotomic {
        let n = self.conductor.lcm(&other.conductor);
        let field = CycloField::new(n);
        let a = field.embed(self).expect("divides lcm");
        let b = field.embed(other).expect("divides lcm");
        field.to_cyclotomic(&op(&field, &a, &b))
    }

    pub fn scale(&self, s: Rational) -> Cyclotomic {
        if s.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Image under the Galois automorphism `E(N) ↦ E(N)^k`, `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        let field = CycloField::new(self.conductor);
        field.to_cyclotomic(&field.galois(&self.coeffs, k))
    }

    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    /// Multiplicative inverse via the product of the nontrivial Galois conjugates.
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        let n = self.conductor;
        let mut others = Cyclotomic::one();
        for k in 2..n.max(2) {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k as i64);
            }
        }
        let norm = (&others * self).as_rational().expect("field norm is rational");
        Some(others.scale(norm.recip()))
    }
}

/// Lowers the conductor of an element of `Q(E(n))` to its least possible value.
fn minimize(n: u32, coeffs: Vec<Rational>) -> Cyclotomic {
    if coeffs.iter().skip(1).all(|c| c.is_zero()) {
        return Cyclotomic { conductor: 1, coeffs: vec![coeffs[0]] };
    }
    let big = CycloField::new(n);
    for m in 3..n {
        if !n.is_multiple_of(m) || m % 4 == 2 {
            continue;
        }
        let small_dim = totient(m) as usize;
        let step = (n / m) as i64;
        // columns: E(m)^j written in the basis of Q(E(n))
        let cols: Vec<Vec<Rational>> = (0..small_dim).map(|j| big.root_power(j as i64 * step)).collect();
        let a: Vec<Vec<Rational>> = (0..big.dim()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        if let Some(q) = linalg::solve_rational(&a, &coeffs) {
            return Cyclotomic { conductor: m, coeffs: q };
        }
    }
    Cyclotomic { conductor: n, coeffs }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.binary(rhs, $f)
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |f: &CycloField, a: &[Rational], b: &[Rational]| f.add(a, b));
forward_binop!(Sub, sub, |f: &CycloField, a: &[Rational], b: &[Rational]| f.sub(a, b));
forward_binop!(Mul, mul, |f: &CycloField, a: &[Rational], b: &[Rational]| f.mul(a, b));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<i128> for Cyclotomic {
    fn from(i: i128) -> Self {
        Cyclotomic::from_integer(i)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "E({})^{}", self.conductor, k)?;
            } else {
                write!(f, "{c}*E({})^{}", self.conductor, k)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(alloc::format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `E(N)`, `E(N)^k` or `E(N)^-k`, returning `(N, k)`.
fn parse_root(s: &str) -> Result<(u32, i64)> {
    let bad = || Error::Parse(alloc::format!("bad root of unity {s:?}"));
    let rest = s.trim().strip_prefix("E(").ok_or_else(bad)?;
    let (n, tail) = rest.split_once(')').ok_or_else(bad)?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || n > MAX_CONDUCTOR {
        return Err(bad());
    }
    let tail = tail.trim();
    let k =
        if tail.is_empty() { 1 } else { tail.strip_prefix('^').ok_or_else(bad)?.trim().parse().map_err(|_| bad())? };
    Ok((n, k))
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Accepts sums of terms `c`, `E(N)^k`, `c*E(N)^k` and `-E(N)^k`, joined by `+`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic".to_string()));
        }
        let mut acc = Cyclotomic::zero();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(alloc::format!("empty term in {s:?}")));
            }
            let value = if let Some((c, root)) = term.split_once('*') {
                let c = parse_rational(c)?;
                let (n, k) = parse_root(root)?;
                Cyclotomic::from_exponent_terms(n, &[(k, c)])
            } else if term.contains('E') {
                let (neg, body) = match term.strip_prefix('-') {
                    Some(b) => (true, b),
                    None => (false, term),
                };
                let (n, k) = parse_root(body)?;
                let c = if neg { -Rational::one() } else { Rational::one() };
                Cyclotomic::from_exponent_terms(n, &[(k, c)])
            } else {
                Cyclotomic::from_rational(parse_rational(term)?)
            };
            acc = acc + value;
        }
        Ok(acc)
    }
}

/// Text form used by all emitters; identical to `Display`.
pub fn print_canonical(a: &Cyclotomic) -> String {
    a.to_string()
}
