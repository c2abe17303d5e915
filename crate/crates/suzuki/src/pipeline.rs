//! Loading a problem and running the special-classes pipeline on it.

use std::collections::BTreeSet;

use suzuki_core::chartab::{character_table, CharacterTable};
use suzuki_core::cyclo::Cyclotomic;
use suzuki_core::elim::IndexCongruence;
use suzuki_core::perm::{ConjugacyClassData, GeneratedGroup};
use suzuki_core::suzuki::{
    compare_lattices, fragment, gamma_decomposition, gram, vanishing_basis, verify_special_axioms, BMatrix, Fragment,
    GammaMatrix, Gram, LatticeComparison, SpecialClassSet, VanishingBasis,
};

use crate::error::InputError;
use crate::fixtures::Source;
use crate::formats::{
    parse_fragment_blocks, parse_named_combinations, FragmentBlock, GroupFile, LabeledTable, ProblemFile,
};
use crate::search::{enumerate_parallel, SearchOptions};

/// Labels for every class in canonical order, plus named elements.
#[derive(Clone, Debug)]
pub struct ClassLabels {
    labels: Vec<String>,
    aliases: Vec<(String, usize)>,
}

impl ClassLabels {
    pub fn label(&self, class: usize) -> &str {
        &self.labels[class]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// A class label or the name of an element.
    pub fn resolve(&self, name: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .or_else(|| self.aliases.iter().find(|(a, _)| a == name).map(|(_, c)| *c))
    }

    /// Builds the map from `class` lines, which must hit every class exactly once.
    pub fn from_group_file(
        gf: &GroupFile,
        group: &GeneratedGroup,
        classes: &ConjugacyClassData,
    ) -> Result<Self, InputError> {
        let class_of = |p| {
            classes
                .class_of(group, p)
                .ok_or_else(|| InputError::fixture("group file", format!("{p} is not in the group")))
        };
        let labels = if gf.classes.is_empty() {
            (1..=classes.len()).map(|i| format!("c{i}")).collect()
        } else {
            let mut labels = vec![String::new(); classes.len()];
            for (l, p) in &gf.classes {
                let c = class_of(p)?;
                if !labels[c].is_empty() {
                    return Err(InputError::fixture(
                        "group file",
                        format!("labels {} and {l} name the same class", labels[c]),
                    ));
                }
                labels[c] = l.clone();
            }
            if let Some(c) = labels.iter().position(String::is_empty) {
                return Err(InputError::fixture(
                    "group file",
                    format!("class with representative {} has no label", classes.classes()[c].representative),
                ));
            }
            labels
        };
        let aliases =
            gf.elements.iter().map(|(n, p)| Ok((n.clone(), class_of(p)?))).collect::<Result<_, InputError>>()?;
        Ok(ClassLabels { labels, aliases })
    }
}

/// A loaded problem with its fixtures checked for shape and labels.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub group_file: GroupFile,
    pub table: CharacterTable,
    pub labels: ClassLabels,
    /// Printed table with its columns mapped to classes.
    pub printed: Option<(LabeledTable, Vec<usize>)>,
    /// Combinations in the printed character numbering.
    pub lambda: Option<Vec<(String, Vec<i128>)>>,
    pub psi: Vec<(String, Vec<i128>)>,
    /// Special classes in the order of the `special` line.
    pub special_labels: Vec<String>,
    pub special_classes: Vec<usize>,
    pub special: SpecialClassSet,
    pub blocks: Vec<FragmentBlock>,
    pub index: Option<IndexCongruence>,
}

impl Problem {
    pub fn load(text: &str, source: &Source) -> Result<Self, InputError> {
        let file = ProblemFile::parse(text)?;
        let gtext = source.read(&file.group)?;
        let group_file = GroupFile::parse(&gtext).map_err(|e| e.in_file(&file.group))?;
        let group = group_file.group()?;
        let table = character_table(&group)?;
        let labels = ClassLabels::from_group_file(&group_file, &group, table.classes())?;
        let printed = match &file.table {
            Some(name) => {
                let t = LabeledTable::parse(&source.read(name)?).map_err(|e| e.in_file(name))?;
                let cols = check_printed_labels(&t, &labels, &table).map_err(|m| InputError::fixture(name, m))?;
                Some((t, cols))
            }
            None => None,
        };
        let names: Vec<String> =
            printed.as_ref().map(|(t, _)| t.rows.iter().map(|(n, _)| n.clone()).collect()).unwrap_or_default();
        let lambda = match &file.lambda {
            Some(name) => {
                if printed.is_none() {
                    return Err(InputError::fixture(name, "a lambda fixture needs a printed table"));
                }
                Some(parse_named_combinations(&source.read(name)?, &names).map_err(|e| e.in_file(name))?)
            }
            None => None,
        };
        let psi = file
            .psi
            .iter()
            .map(|(n, c)| {
                let v = crate::formats::parse_combination(c, &names).map_err(|m| InputError::fixture(n, m))?;
                Ok((n.clone(), v))
            })
            .collect::<Result<_, InputError>>()?;
        let special_classes = file
            .special
            .iter()
            .map(|l| {
                labels.resolve(l).ok_or_else(|| InputError::fixture(&file.name, format!("unknown special class {l:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let special = SpecialClassSet::new(special_classes.clone())?;
        let blocks = match &file.fragments {
            Some(name) => parse_fragment_blocks(&source.read(name)?).map_err(|e| e.in_file(name))?,
            None => Vec::new(),
        };
        let index = file.index.map(|(residue, modulus)| IndexCongruence { modulus, residue });
        Ok(Problem {
            special_labels: file.special.clone(),
            file,
            group_file,
            table,
            labels,
            printed,
            lambda,
            psi,
            special_classes,
            special,
            blocks,
            index,
        })
    }

    pub fn order(&self) -> u64 {
        self.table.order() as u64
    }

    /// Fragment column of a special-class label or element name.
    pub fn column_of(&self, name: &str) -> Option<usize> {
        let c = self.labels.resolve(name)?;
        self.special_classes.iter().position(|&s| s == c)
    }

    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.order() / self.table.classes().classes()[class].size as u64
    }

    /// Printed character `j` ↦ computed row, if every printed row occurs.
    pub fn printed_rows(&self) -> Result<Vec<usize>, String> {
        let (t, cols) = self.printed.as_ref().ok_or("no printed table")?;
        let mut used = vec![false; self.table.len()];
        let mut out = Vec::with_capacity(t.rows.len());
        for (name, vals) in &t.rows {
            let hit = self
                .table
                .irreducibles()
                .iter()
                .enumerate()
                .position(|(i, chi)| !used[i] && cols.iter().zip(vals).all(|(&c, v)| chi.value(c) == v));
            match hit {
                Some(i) => {
                    used[i] = true;
                    out.push(i);
                }
                None => return Err(format!("{name} matches no computed irreducible")),
            }
        }
        if out.len() != self.table.len() {
            return Err(format!("{} printed rows for {} irreducibles", out.len(), self.table.len()));
        }
        Ok(out)
    }

    /// A printed-numbering combination in computed-row coordinates.
    pub fn to_rows(&self, coeffs: &[i128]) -> Result<Vec<i128>, String> {
        let map = self.printed_rows()?;
        let mut v = vec![0i128; self.table.len()];
        for (j, c) in coeffs.iter().enumerate() {
            v[map[j]] += c;
        }
        Ok(v)
    }

    pub fn psi_rows(&self, name: &str) -> Result<Vec<i128>, String> {
        let (_, c) = self.psi.iter().find(|(n, _)| n == name).ok_or_else(|| format!("unknown psi {name:?}"))?;
        self.to_rows(c)
    }

    pub fn index_or_trivial(&self) -> IndexCongruence {
        self.index.unwrap_or(IndexCongruence { modulus: 1, residue: 0 })
    }
}

/// Checks header labels, sizes and element orders of a printed table and
/// returns the class behind each printed column.
fn check_printed_labels(t: &LabeledTable, labels: &ClassLabels, table: &CharacterTable) -> Result<Vec<usize>, String> {
    let cols: Vec<usize> = t
        .labels
        .iter()
        .map(|l| labels.resolve(l).ok_or_else(|| format!("unknown class label {l:?}")))
        .collect::<Result<_, _>>()?;
    let distinct: BTreeSet<usize> = cols.iter().copied().collect();
    if distinct.len() != table.len() || cols.len() != table.len() {
        return Err(format!("printed columns do not cover the {} classes once each", table.len()));
    }
    let data = table.classes().classes();
    if let Some(sizes) = &t.sizes {
        for ((l, &c), &s) in t.labels.iter().zip(&cols).zip(sizes) {
            if data[c].size as u64 != s {
                return Err(format!("class {l} has size {}, printed {s}", data[c].size));
            }
        }
    }
    if let Some(orders) = &t.orders {
        for ((l, &c), &o) in t.labels.iter().zip(&cols).zip(orders) {
            if data[c].element_order as u64 != o {
                return Err(format!("class {l} has element order {}, printed {o}", data[c].element_order));
            }
        }
    }
    if t.rows.len() != table.len() {
        return Err(format!("{} printed characters for {} classes", t.rows.len(), table.len()));
    }
    Ok(cols)
}

/// Everything computed from a problem, up to the list of fragments.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub problem: Problem,
    pub axioms_passed: bool,
    pub vanishing: VanishingBasis,
    /// The working basis in computed-row coordinates: the fixture if given, else HNF.
    pub basis: Vec<Vec<i128>>,
    pub lattice: Option<LatticeComparison>,
    pub gamma: GammaMatrix,
    pub gram: Gram,
    pub solutions: Vec<BMatrix>,
    pub fragments: Vec<Fragment>,
}

impl Analysis {
    pub fn run(problem: Problem, opts: &SearchOptions) -> Result<Self, InputError> {
        let name = problem.file.name.clone();
        let report = verify_special_axioms(problem.table.classes(), &problem.special)?;
        let vanishing = vanishing_basis(&problem.table, &problem.special)?;
        let (basis, lattice) = match &problem.lambda {
            Some(l) => {
                let b: Vec<Vec<i128>> = l
                    .iter()
                    .map(|(_, c)| problem.to_rows(c))
                    .collect::<Result<_, _>>()
                    .map_err(|m| InputError::fixture(&name, m))?;
                let cmp = compare_lattices(&vanishing.basis, &b);
                if !cmp.all_in_lattice() || !cmp.unimodular() {
                    return Err(InputError::fixture(&name, "lambda basis does not span the vanishing lattice"));
                }
                (b, Some(cmp))
            }
            None => (vanishing.basis.clone(), None),
        };
        let trivial =
            problem.table.trivial_index().ok_or_else(|| InputError::fixture(&name, "no trivial character"))?;
        let gamma = gamma_decomposition(&problem.table, &problem.special_classes, &basis)?;
        let gram = gram(&basis, trivial);
        let solutions = enumerate_parallel(&gram.d, &gram.principal, opts)?;
        let fragments = solutions.iter().map(|b| fragment(&gamma, b)).collect::<Result<_, _>>()?;
        Ok(Analysis {
            axioms_passed: report.passed(),
            problem,
            vanishing,
            basis,
            lattice,
            gamma,
            gram,
            solutions,
            fragments,
        })
    }

    fn block_columns(&self, block: &FragmentBlock) -> Result<Vec<usize>, String> {
        block
            .columns
            .iter()
            .map(|l| self.problem.column_of(l).ok_or_else(|| format!("{l} is not a special class")))
            .collect()
    }

    /// Indices of the fragments agreeing with a printed block as multisets
    /// of sign-normalized rows on the block's columns.
    pub fn matching_fragments(&self, block: &FragmentBlock) -> Result<Vec<usize>, String> {
        let cols = self.block_columns(block)?;
        let printed = normalized_multiset(block.rows.iter().cloned());
        Ok(self
            .fragments
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                normalized_multiset(f.values().iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect())) == printed
            })
            .map(|(i, _)| i)
            .collect())
    }

    /// The unique matching fragment, with rows in printed order and signs.
    pub fn aligned_fragment(&self, block_name: &str) -> Result<Fragment, String> {
        let block = self
            .problem
            .blocks
            .iter()
            .find(|b| b.name == block_name)
            .ok_or_else(|| format!("no printed fragment {block_name:?}"))?;
        let hits = self.matching_fragments(block)?;
        let [k] = hits[..] else {
            return Err(format!("{} computed fragments match {block_name:?}, expected one", hits.len()));
        };
        align(&self.fragments[k], block, &self.block_columns(block)?)
    }

    /// Signed degrees when every fragment row is `±χ` on the special classes
    /// for distinct irreducibles `χ` of the group itself.
    pub fn true_degrees(&self, frag: &Fragment) -> Option<Vec<i128>> {
        let table = &self.problem.table;
        let cls = &self.problem.special_classes;
        let mut used = vec![false; table.len()];
        let mut out = Vec::with_capacity(frag.row_count());
        for row in frag.values() {
            let mut found = None;
            for (i, chi) in table.irreducibles().iter().enumerate() {
                if used[i] {
                    continue;
                }
                let restricted: Vec<&Cyclotomic> = cls.iter().map(|&c| chi.value(c)).collect();
                if restricted.iter().zip(row).all(|(a, b)| *a == b) {
                    found = Some((i, 1));
                } else if restricted.iter().zip(row).all(|(a, b)| **a == -b) {
                    found = Some((i, -1));
                }
                if found.is_some() {
                    break;
                }
            }
            let (i, s) = found?;
            used[i] = true;
            out.push(s * table.degrees()[i] as i128);
        }
        Some(out)
    }
}

fn normalize(row: &[Cyclotomic]) -> Vec<Cyclotomic> {
    match row.iter().find(|v| !v.is_zero()) {
        Some(v) if !v.is_positive_canonical() => row.iter().map(|x| -x).collect(),
        _ => row.to_vec(),
    }
}

fn normalized_multiset(rows: impl Iterator<Item = Vec<Cyclotomic>>) -> Vec<Vec<Cyclotomic>> {
    let mut v: Vec<Vec<Cyclotomic>> = rows.map(|r| normalize(&r)).collect();
    v.sort();
    v
}

/// Reorders and re-signs `frag` so that row `i` shows printed row `i` on `cols`.
pub fn align(frag: &Fragment, block: &FragmentBlock, cols: &[usize]) -> Result<Fragment, String> {
    if frag.row_count() != block.rows.len() {
        return Err(format!("{} computed rows against {} printed", frag.row_count(), block.rows.len()));
    }
    let mut f = frag.clone();
    let mut used = vec![false; f.row_count()];
    let mut perm = Vec::with_capacity(f.row_count());
    for (i, want) in block.rows.iter().enumerate() {
        let neg: Vec<Cyclotomic> = want.iter().map(|v| -v).collect();
        let mut hit = None;
        for (k, &taken) in used.iter().enumerate() {
            if taken || (i == 0) != (k == 0) {
                continue;
            }
            let got: Vec<Cyclotomic> = cols.iter().map(|&c| f.row(k)[c].clone()).collect();
            if &got == want {
                hit = Some((k, false));
            } else if got == neg {
                hit = Some((k, true));
            }
            if hit.is_some() {
                break;
            }
        }
        let (k, flip) = hit.ok_or_else(|| format!("printed row {} has no computed counterpart", i + 1))?;
        if flip {
            f.negate_row(k);
        }
        used[k] = true;
        perm.push(k);
    }
    f.permute_rows(&perm).map_err(|e| e.to_string())
}
