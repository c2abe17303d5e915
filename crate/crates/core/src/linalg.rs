//! Small exact linear algebra over `Q`, `Z` and `F_p`.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Sizes here are tiny (at most a few
//! dozen rows), so everything is dense and straightforward.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclo::Rational;

/// Reduced row echelon form; returns the pivot column of each nonzero row.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = (pr..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(pr, p);
        let inv = m[pr][c].recip();
        for x in m[pr].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows {
            if r != pr && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in 0..cols {
                    let t = m[pr][k] * f;
                    m[r][k] -= t;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Some solution of `a x = b`, free variables set to zero.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(row, &bi)| row.iter().copied().chain(core::iter::once(bi)).collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols];
    }
    Some(x)
}

/// Basis of `{x : a x = 0}`.
pub fn nullspace(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut work = a.to_vec();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -work[r][free];
        }
        basis.push(v);
    }
    basis
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|c| a.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Basis of `{y : yᵀ a = 0}`; `a` has `rows` rows.
pub fn left_nullspace(a: &[Vec<Rational>], rows: usize) -> Vec<Vec<Rational>> {
    debug_assert_eq!(a.len(), rows);
    let t = transpose(a);
    if t.is_empty() {
        // no columns: every combination vanishes
        return (0..rows)
            .map(|i| (0..rows).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
    }
    nullspace(&t, rows)
}

/// `P` with `P a = I` for `a` of full column rank.
pub fn left_inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..rows).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < cols || pivots[..cols] != (0..cols).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(aug[..cols].iter().map(|r| r[cols..].to_vec()).collect())
}

/// Integer row echelon form by unimodular row operations, applied to `m`
/// restricted to its first `width` columns (the rest ride along).
fn integer_echelon(m: &mut [Vec<i128>], width: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..width {
        if pr == rows {
            break;
        }
        loop {
            let best = (pr..rows).filter(|&r| m[r][c] != 0).min_by_key(|&r| m[r][c].abs());
            let Some(b) = best else { break };
            m.swap(pr, b);
            let mut done = true;
            for r in pr + 1..rows {
                if m[r][c] != 0 {
                    let q = Integer::div_floor(&m[r][c], &m[pr][c]);
                    let (top, bottom) = m.split_at_mut(r);
                    for (x, y) in bottom[0].iter_mut().zip(top[pr].iter()) {
                        *x -= q * y;
                    }
                    if bottom[0][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[pr][c] != 0 {
            pivots.push(c);
            pr += 1;
        }
    }
    pivots
}

/// Basis of the integer kernel `{x ∈ Z^cols : a x = 0}`.
pub fn integer_kernel(a: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    let rows = a.len();
    // [aᵀ | I]: rows whose left block vanishes carry kernel vectors on the right
    let mut m: Vec<Vec<i128>> = (0..cols)
        .map(|j| {
            let mut r: Vec<i128> = a.iter().map(|row| row[j]).collect();
            r.extend((0..cols).map(|k| i128::from(k == j)));
            r
        })
        .collect();
    let pivots = integer_echelon(&mut m, rows);
    m[pivots.len()..].iter().map(|r| r[rows..].to_vec()).collect()
}

/// Row Hermite normal form: positive pivots, entries above each pivot reduced
/// into `[0, pivot)`, zero rows dropped.
pub fn hnf(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut m = rows.to_vec();
    let width = m.first().map_or(0, |r| r.len());
    let pivots = integer_echelon(&mut m, width);
    m.truncate(pivots.len());
    for (k, &c) in pivots.iter().enumerate() {
        if m[k][c] < 0 {
            for x in m[k].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..k {
            let q = Integer::div_floor(&m[i][c], &m[k][c]);
            if q != 0 {
                let (top, bottom) = m.split_at_mut(k);
                for (x, y) in top[i].iter_mut().zip(bottom[0].iter()) {
                    *x -= q * y;
                }
            }
        }
    }
    m
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det_bareiss(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn to_rational(m: &[Vec<i128>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect()
}

/// Integer coordinates of `v` in the row basis `basis`, if they exist.
pub fn integer_coordinates(basis: &[Vec<i128>], v: &[i128]) -> Option<Vec<i128>> {
    let a = transpose(&to_rational(basis));
    let b: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x)).collect();
    let x = solve_rational(&a, &b)?;
    // the basis is independent, so the solution is unique
    if x.iter().all(|c| c.is_integer()) {
        Some(x.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (first nonzero entry keeps its sign).
pub fn primitive_integer(v: &[Rational]) -> Vec<i128> {
    let l = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * Rational::from_integer(l)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g == 0 {
        ints
    } else {
        ints.iter().map(|x| x / g).collect()
    }
}

pub fn pow_mod(base: u64, exp: u64, p: u64) -> u64 {
    let mut result = 1u64 % p;
    let mut b = base % p;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

/// Inverse modulo a prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Basis of `{x : a x = 0}` over `F_p`.
pub fn nullspace_mod_p(a: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(piv) = (pr..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(pr, piv);
        let inv = inv_mod(m[pr][c], p);
        for x in m[pr].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != pr && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - f * m[pr][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = (p - m[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(x: i128) -> Rational {
        Rational::from_integer(x)
    }

    #[test]
    fn solve_and_inverse() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)], vec![q(1), q(1)]];
        let x = solve_rational(&a, &[q(5), q(10), q(4)]).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
        assert!(solve_rational(&a, &[q(5), q(10), q(3)]).is_none());
        let p = left_inverse(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let s: Rational = (0..3).map(|k| p[i][k] * a[k][j]).sum();
                assert_eq!(s, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn kernels() {
        let a = vec![vec![2, 4, 6]];
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 4 * v[1] + 6 * v[2], 0);
        }
        // the kernel lattice contains (2,-1,0) and (3,0,-1) with index 1
        let h = hnf(&k);
        assert!(integer_coordinates(&h, &[2, -1, 0]).is_some());
        assert!(integer_coordinates(&h, &[3, 0, -1]).is_some());
        assert!(integer_coordinates(&h, &[1, 1, -1]).is_some());
        let l = left_nullspace(&[vec![q(1), q(2)], vec![q(2), q(4)]], 2);
        assert_eq!(l.len(), 1);
        assert_eq!(l[0][0] * q(1) + l[0][1] * q(2), q(0));
    }

    #[test]
    fn determinants() {
        assert_eq!(det_bareiss(&[vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(det_bareiss(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_bareiss(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(det_bareiss(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]), 4);
    }

    #[test]
    fn mod_p_nullspace() {
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let n = nullspace_mod_p(&a, 3, 7);
        assert_eq!(n.len(), 2);
        for v in &n {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 7, 0);
        }
    }

    proptest! {
        #[test]
        fn hnf_preserves_lattice(rows in prop::collection::vec(prop::collection::vec(-5i128..6, 3), 1..4)) {
            let h = hnf(&rows);
            for r in &rows {
                prop_assert!(r.iter().all(|&x| x == 0) || integer_coordinates(&h, r).is_some());
            }
            for r in &h {
                // each HNF row is an integer combination of the input rows
                let a = transpose(&to_rational(&rows));
                let b: Vec<Rational> = r.iter().map(|&x| q(x)).collect();
                prop_assert!(solve_rational(&a, &b).is_some());
            }
        }

        #[test]
        fn integer_kernel_is_kernel(rows in prop::collection::vec(prop::collection::vec(-4i128..5, 4), 1..3)) {
            let k = integer_kernel(&rows, 4);
            for v in &k {
                for r in &rows {
                    prop_assert_eq!(r.iter().zip(v).map(|(a, b)| a * b).sum::<i128>(), 0);
                }
            }
            let rk = rank(&to_rational(&rows));
            prop_assert_eq!(k.len(), 4 - rk);
        }
    }
}
