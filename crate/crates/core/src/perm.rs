//! Permutations on `1..=degree`, closure enumeration of small groups and
//! their conjugacy classes.
//!
//! Products follow the convention of the usual computer algebra systems:
//! `a * b` applies `a` first, then `b`. Conjugation is `g^h = h⁻¹ g h`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::error::{Error, Result};

/// Largest group order any enumeration is allowed to reach.
pub const ORDER_LIMIT: usize = 1_000_000;

/// A permutation of the points `1..=degree`.
///
/// Images are stored 0-based; the derived ordering is the lexicographic
/// order on image sequences, which is also the canonical element order of
/// every [`GeneratedGroup`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree {
                return Err(Error::PointOutOfRange { point: img, degree });
            }
            if seen[img - 1] {
                return Err(Error::RepeatedPoint(img));
            }
            seen[img - 1] = true;
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Parses a product of disjoint cycles such as `(1,2)(4,5)`; `()` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation text".to_string()));
        }
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(Error::Parse(alloc::format!("expected '(' in {s:?}")));
            }
            let close = rest.find(')').ok_or_else(|| Error::Parse(alloc::format!("unclosed cycle in {s:?}")))?;
            let body = rest[1..close].trim();
            rest = &rest[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let tok = tok.trim();
                let point: usize =
                    tok.parse().map_err(|_| Error::Parse(alloc::format!("bad point {tok:?} in {s:?}")))?;
                if point == 0 || point > degree {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                if used[point - 1] {
                    return Err(Error::RepeatedPoint(point));
                }
                used[point - 1] = true;
                cycle.push(point - 1);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 0-based image table.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        h.inverse().compose(self).compose(h)
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Cycles of length at least two, 1-based, each starting at its least
    /// point and sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1usize, |acc, c| num_integer::lcm(acc, c.len()))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images.iter().zip(other.images.iter()).all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

/// A fully enumerated permutation group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl GeneratedGroup {
    /// Enumerates `⟨generators⟩` on `degree` points.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let elements = closure(degree, generators)?;
        Ok(GeneratedGroup { degree, generators: generators.to_vec(), elements })
    }

    /// Builds a group from a sorted, closed element list, picking a small
    /// generating set greedily in canonical order.
    fn from_closed_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let mut generators = Vec::new();
        let mut span: Vec<Permutation> = vec![Permutation::identity(degree)];
        for e in &elements {
            if span.binary_search(e).is_err() {
                generators.push(e.clone());
                span = closure(degree, &generators)?;
                if span.len() == elements.len() {
                    break;
                }
            }
        }
        Ok(GeneratedGroup { degree, generators, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in canonical (lexicographic) order; index 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.index_of(g).is_some()
    }

    pub fn exponent(&self) -> usize {
        self.elements.iter().fold(1, |acc, g| num_integer::lcm(acc, g.order()))
    }

    pub fn is_subgroup_of(&self, other: &GeneratedGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same underlying element set.
    pub fn same_elements(&self, other: &GeneratedGroup) -> bool {
        self.elements == other.elements
    }

    /// `C(g) = {h : hg = gh}` by a full scan.
    pub fn centralizer(&self, g: &Permutation) -> Result<GeneratedGroup> {
        if !self.contains(g) {
            return Err(Error::NotMember("element for centralizer"));
        }
        let elements: Vec<Permutation> =
            self.elements.iter().filter(|h| h.compose(g) == g.compose(h)).cloned().collect();
        GeneratedGroup::from_closed_elements(self.degree, elements)
    }

    /// `N(sub) = {g : sub^g = sub}` by a full scan; conjugating the
    /// generators of `sub` suffices.
    pub fn normalizer(&self, sub: &GeneratedGroup) -> Result<GeneratedGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotMember("subgroup for normalizer"));
        }
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| sub.generators.iter().all(|s| sub.contains(&s.conjugate_by(g))))
            .cloned()
            .collect();
        GeneratedGroup::from_closed_elements(self.degree, elements)
    }

    /// The commutator subgroup, generated by all commutators `[a, b] = a⁻¹b⁻¹ab`.
    pub fn derived_subgroup(&self) -> Result<GeneratedGroup> {
        let mut comms = BTreeSet::new();
        for a in &self.elements {
            let ai = a.inverse();
            for b in &self.elements {
                let c = ai.compose(&b.inverse()).compose(a).compose(b);
                comms.insert(c);
            }
        }
        let gens: Vec<Permutation> = comms.into_iter().collect();
        let elements = closure(self.degree, &gens)?;
        GeneratedGroup::from_closed_elements(self.degree, elements)
    }

    /// Subgroup generated by elements of this group.
    pub fn subgroup(&self, generators: &[Permutation]) -> Result<GeneratedGroup> {
        if !generators.iter().all(|g| self.contains(g)) {
            return Err(Error::NotMember("subgroup generator"));
        }
        GeneratedGroup::generate(self.degree, generators)
    }
}

fn closure(degree: usize, generators: &[Permutation]) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::new();
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if !seen.contains(&y) {
                if seen.len() >= ORDER_LIMIT {
                    return Err(Error::TooLarge { what: "group order", limit: ORDER_LIMIT });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `Sym(n)` via a transposition and an `n`-cycle.
pub fn symmetric_group(n: usize) -> Result<GeneratedGroup> {
    if n < 2 {
        return GeneratedGroup::generate(n.max(1), &[]);
    }
    let t = Permutation::parse("(1,2)", n)?;
    let cyc: Vec<usize> = (2..=n).chain(core::iter::once(1)).collect();
    let c = Permutation::from_images(&cyc)?;
    GeneratedGroup::generate(n, &[t, c])
}

/// `Alt(n)` via the 3-cycles `(1,2,i)`.
pub fn alternating_group(n: usize) -> Result<GeneratedGroup> {
    let mut gens = Vec::new();
    for i in 3..=n {
        let mut images: Vec<usize> = (1..=n).collect();
        images[0] = 2;
        images[1] = i;
        images[i - 1] = 1;
        gens.push(Permutation::from_images(&images)?);
    }
    GeneratedGroup::generate(n.max(1), &gens)
}

/// One conjugacy class of a [`GeneratedGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Lexicographically least member.
    pub representative: Permutation,
    pub size: usize,
    pub element_order: usize,
}

/// Conjugacy classes in canonical order, with element-to-class lookup and
/// power maps.
///
/// Canonical class order sorts by `(element order, class size, least member)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassData {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    exponent: usize,
    /// `power_maps[m][c]` is the class of `rep(c)^m`, for `0 <= m < exponent`.
    power_maps: Vec<Vec<usize>>,
}

impl ConjugacyClassData {
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class of the element with canonical index `element_index`.
    pub fn class_of_index(&self, element_index: usize) -> usize {
        self.class_of[element_index]
    }

    pub fn class_of(&self, group: &GeneratedGroup, g: &Permutation) -> Option<usize> {
        group.index_of(g).map(|i| self.class_of[i])
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Power map for any integer exponent `m` (reduced modulo the group exponent).
    pub fn power_map(&self, m: i64) -> &[usize] {
        let e = self.exponent as i64;
        &self.power_maps[m.rem_euclid(e) as usize]
    }

    /// Class of inverses.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.power_map(-1)[c]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.element_order).collect()
    }

    pub fn centralizer_order(&self, c: usize, group_order: usize) -> usize {
        group_order / self.classes[c].size
    }
}

/// Conjugacy classes by orbit enumeration under the generators.
pub fn conjugacy_classes(group: &GeneratedGroup) -> ConjugacyClassData {
    let n = group.order();
    let mut raw_class = vec![usize::MAX; n];
    let mut raw: Vec<(usize, usize, usize)> = Vec::new(); // (least index, size, order)
    let gens: Vec<(Permutation, Permutation)> = group.generators().iter().map(|g| (g.inverse(), g.clone())).collect();
    for start in 0..n {
        if raw_class[start] != usize::MAX {
            continue;
        }
        let id = raw.len();
        raw_class[start] = id;
        let mut size = 1;
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            let x = &group.elements()[i];
            for (gi, g) in &gens {
                let y = gi.compose(x).compose(g);
                let j = group.index_of(&y).expect("closed under conjugation");
                if raw_class[j] == usize::MAX {
                    raw_class[j] = id;
                    size += 1;
                    queue.push_back(j);
                }
            }
        }
        raw.push((start, size, group.elements()[start].order()));
    }
    // the least member of each orbit is the first one met in canonical order
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&c| (raw[c].2, raw[c].1, raw[c].0));
    let mut relabel = vec![0; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let classes: Vec<ConjugacyClass> = order
        .iter()
        .map(|&c| ConjugacyClass {
            representative: group.elements()[raw[c].0].clone(),
            size: raw[c].1,
            element_order: raw[c].2,
        })
        .collect();
    let class_of: Vec<usize> = raw_class.iter().map(|&c| relabel[c]).collect();
    let exponent = classes.iter().fold(1, |acc, c| num_integer::lcm(acc, c.element_order));
    let power_maps = (0..exponent)
        .map(|m| {
            classes
                .iter()
                .map(|c| {
                    let p = c.representative.pow(m as i64);
                    class_of[group.index_of(&p).expect("power in group")]
                })
                .collect()
        })
        .collect();
    ConjugacyClassData { classes, class_of, exponent, power_maps }
}

/// Formats a list of permutations, one per line (used in reports).
pub fn format_list(perms: &[Permutation]) -> String {
    let mut s = String::new();
    for p in perms {
        s.push_str(&p.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, 9).unwrap()
    }

    fn h108() -> GeneratedGroup {
        let gens = ["(1,2,3)", "(4,5,6)", "(7,8,9)", "(1,2)(4,5)", "(1,2)(7,8)"];
        GeneratedGroup::generate(9, &gens.map(p)).unwrap()
    }

    fn k648() -> GeneratedGroup {
        let gens = ["(1,2,3)", "(1,4,7)(2,5,8)(3,6,9)", "(1,2)(4,5)", "(1,4)(2,5)(3,6)(7,8)"];
        GeneratedGroup::generate(9, &gens.map(p)).unwrap()
    }

    #[test]
    fn parse_cycles() {
        let a = p("(1,2,3)");
        assert_eq!(a.image(1), 2);
        assert_eq!(a.image(2), 3);
        assert_eq!(a.image(3), 1);
        assert!((4..=9).all(|i| a.image(i) == i));
        assert!(p("()").is_identity());
        let b = p("(1,4,7)(2,5,8)(3,6,9)");
        assert_eq!(b.order(), 3);
        assert_eq!(b.cycles().len(), 3);
        assert_eq!(b.to_string(), "(1,4,7)(2,5,8)(3,6,9)");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Permutation::parse("(1,2)(2,3)", 9), Err(Error::RepeatedPoint(2)));
        assert_eq!(Permutation::parse("(1,10)", 9), Err(Error::PointOutOfRange { point: 10, degree: 9 }));
        assert!(matches!(Permutation::parse("(1,2", 9), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("1,2", 9), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("(1,x)", 9), Err(Error::Parse(_))));
    }

    #[test]
    fn printer_sorts_by_least_point() {
        let a = p("(7,8)(4,6,5)(2,1)");
        assert_eq!(a.to_string(), "(1,2)(4,6,5)(7,8)");
    }

    #[test]
    fn composition_applies_left_first() {
        let a = p("(1,2)");
        let b = p("(2,3)");
        // 1 -> 2 -> 3
        assert_eq!((&a * &b).image(1), 3);
        assert_eq!(a.pow(-1), a);
        assert_eq!(p("(1,2,3)").pow(2), p("(1,3,2)"));
    }

    #[test]
    fn orders_of_fixture_groups() {
        assert_eq!(h108().order(), 108);
        assert_eq!(k648().order(), 648);
        let c3 = GeneratedGroup::generate(9, &[p("(1,2,3)")]).unwrap();
        assert_eq!(c3.order(), 3);
    }

    #[test]
    fn class_counts() {
        let h = h108();
        assert_eq!(conjugacy_classes(&h).len(), 15);
        let k = k648();
        let cd = conjugacy_classes(&k);
        assert_eq!(cd.len(), 14);
        let mut sizes = cd.sizes();
        sizes.sort();
        let mut expected = vec![1, 27, 54, 6, 8, 12, 72, 54, 54, 108, 72, 72, 54, 54];
        expected.sort();
        assert_eq!(sizes, expected);
        let c3 = GeneratedGroup::generate(9, &[p("(1,2,3)")]).unwrap();
        let cd3 = conjugacy_classes(&c3);
        assert_eq!(cd3.sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn class_equation_and_power_maps() {
        let k = k648();
        let cd = conjugacy_classes(&k);
        assert_eq!(cd.sizes().iter().sum::<usize>(), 648);
        for (i, c) in cd.classes().iter().enumerate() {
            let cent = k.centralizer(&c.representative).unwrap();
            assert_eq!(cent.order() * c.size, 648);
            assert_eq!(cd.power_map(1)[i], i);
            assert_eq!(cd.power_map(0)[i], 0);
        }
        // pm(a) o pm(b) = pm(ab)
        for a in 0..cd.exponent() as i64 {
            for b in [2i64, 3, 5] {
                for c in 0..cd.len() {
                    assert_eq!(cd.power_map(a)[cd.power_map(b)[c]], cd.power_map(a * b)[c]);
                }
            }
        }
    }

    #[test]
    fn centralizers_in_k() {
        let k = k648();
        assert_eq!(k.centralizer(&p("(1,2,3)")).unwrap().order(), 108);
        assert_eq!(k.centralizer(&p("(1,2,3)(4,5,6)(7,8,9)")).unwrap().order(), 81);
        assert_eq!(k.centralizer(&p("()")).unwrap().order(), 648);
        assert_eq!(k.centralizer(&p("(1,2)")), Err(Error::NotMember("element for centralizer")));
    }

    #[test]
    fn normalizer_of_self_and_index() {
        let k = k648();
        assert!(k.normalizer(&k).unwrap().same_elements(&k));
        let ka = GeneratedGroup::generate(9, &["(1,2,3)", "(1,4,7)(2,5,8)(3,6,9)", "(1,2)(4,5)"].map(p)).unwrap();
        assert_eq!(k.order() / ka.order(), 2);
        assert!(ka.is_subgroup_of(&k));
    }

    #[test]
    fn derived_subgroup_of_ka_is_h() {
        let ka = GeneratedGroup::generate(9, &["(1,2,3)", "(1,4,7)(2,5,8)(3,6,9)", "(1,2)(4,5)"].map(p)).unwrap();
        let kc = ka.derived_subgroup().unwrap();
        assert!(kc.same_elements(&h108()));
    }

    #[test]
    fn symmetric_and_alternating() {
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
        assert_eq!(alternating_group(5).unwrap().order(), 60);
        assert!(alternating_group(5).unwrap().elements().iter().all(|g| g.is_even()));
    }
}
