//! Runs elimination scripts against fragments of a loaded problem.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::rc::Rc;

use suzuki_core::elim::{
    congruence_from_psi, finisher_frag4, finisher_thm108, order_degree_ratio, project, residue_refute,
    structure_equation, CongruenceConstraint, DegreeMerge, EliminationOutcome, IndexCongruence, PolyRelation, PolyVar,
    ProjectedRelation, ReciprocalEquation, Var,
};
use suzuki_core::suzuki::Fragment;

use crate::error::InputError;
use crate::fixtures::Source;
use crate::formats::{parse_script, Directive};
use crate::pipeline::{Analysis, Problem};
use crate::search::SearchOptions;

/// Loaded problems, shared between scripts.
pub struct Session {
    pub source: Source,
    pub opts: SearchOptions,
    /// Replaces the problem's `|G:H|` congruence when set.
    pub index_override: Option<IndexCongruence>,
    analyses: BTreeMap<String, Rc<Analysis>>,
}

impl Session {
    pub fn new(source: Source, opts: SearchOptions) -> Self {
        Session { source, opts, index_override: None, analyses: BTreeMap::new() }
    }

    pub fn analysis(&mut self, problem_file: &str) -> Result<Rc<Analysis>, InputError> {
        if let Some(a) = self.analyses.get(problem_file) {
            return Ok(a.clone());
        }
        let text = self.source.read(problem_file)?;
        let problem = Problem::load(&text, &self.source).map_err(|e| e.in_file(problem_file))?;
        let a = Rc::new(Analysis::run(problem, &self.opts)?);
        self.analyses.insert(problem_file.to_string(), a.clone());
        Ok(a)
    }
}

/// One equation with the directive that produced it.
#[derive(Clone, Debug)]
pub struct LabeledEquation {
    pub triple: [String; 3],
    pub a: u64,
    pub equation: ReciprocalEquation,
}

#[derive(Clone, Debug)]
pub struct ScriptRun {
    pub analysis: Rc<Analysis>,
    pub fragment_name: String,
    pub fragment: Fragment,
    pub merge: DegreeMerge,
    pub equations: Vec<LabeledEquation>,
    pub relations: Vec<ProjectedRelation>,
    /// Every multiplier certificate recombines to its relation.
    pub certified: bool,
    pub polys: Vec<PolyRelation>,
    pub congruences: Vec<CongruenceConstraint>,
    pub index: IndexCongruence,
    pub outcome: EliminationOutcome,
}

fn fail(msg: impl Into<String>) -> InputError {
    InputError::Other(msg.into())
}

pub fn run_script(text: &str, session: &mut Session) -> Result<ScriptRun, InputError> {
    let directives = parse_script(text)?;
    let mut analysis: Option<Rc<Analysis>> = None;
    let mut frag: Option<(String, Fragment)> = None;
    let mut merge: Option<DegreeMerge> = None;
    let mut equations = Vec::new();
    let mut relations: Option<Vec<ProjectedRelation>> = None;
    let mut congruences = Vec::new();
    let mut outcome = None;
    let mut polys = Vec::new();
    let mut index = IndexCongruence { modulus: 1, residue: 0 };
    for d in directives {
        if outcome.is_some() {
            return Err(fail("nothing may follow the finisher"));
        }
        match d {
            Directive::Problem(p) => {
                let a = session.analysis(&p)?;
                index = session.index_override.unwrap_or_else(|| a.problem.index_or_trivial());
                analysis = Some(a);
            }
            Directive::Fragment(name) => {
                let a = analysis.as_ref().ok_or_else(|| fail("`problem` must come before `fragment`"))?;
                let f = a.aligned_fragment(&name).map_err(fail)?;
                merge = Some(DegreeMerge::identity(f.row_count()));
                frag = Some((name, f));
            }
            Directive::Merge => {
                let (_, f) = frag.as_ref().ok_or_else(|| fail("`merge` needs a fragment"))?;
                merge = Some(DegreeMerge::from_b(f.b()));
            }
            Directive::Equation { triple, a } => {
                let an = analysis.as_ref().ok_or_else(|| fail("no problem loaded"))?;
                let (_, f) = frag.as_ref().ok_or_else(|| fail("`equation` needs a fragment"))?;
                let p = &an.problem;
                let col = |l: &str| p.column_of(l).ok_or_else(|| fail(format!("{l} is not a special class")));
                let (x, y, z) = (col(&triple[0])?, col(&triple[1])?, col(&triple[2])?);
                let cx = p.centralizer_order(p.special_classes[x]);
                let cy = p.centralizer_order(p.special_classes[y]);
                let eq = structure_equation(f, (x, y, z), a, (cx, cy), merge.as_ref().expect("set with fragment"))?;
                equations.push(LabeledEquation { triple, a, equation: eq });
            }
            Directive::Project(keep) => {
                let eqs: Vec<ReciprocalEquation> = equations.iter().map(|e| e.equation.clone()).collect();
                let keep: BTreeSet<Var> = keep.into_iter().collect();
                relations = Some(project(&eqs, &keep));
            }
            Directive::Congruence { psi, row } => {
                let an = analysis.as_ref().ok_or_else(|| fail("no problem loaded"))?;
                let (_, f) = frag.as_ref().ok_or_else(|| fail("`congruence` needs a fragment"))?;
                if row >= f.row_count() {
                    return Err(fail(format!("fragment has no row {}", row + 1)));
                }
                let p = &an.problem;
                let psi_rows = p.psi_rows(&psi).map_err(fail)?;
                congruences.push(congruence_from_psi(
                    &p.table,
                    &p.special,
                    &p.special_classes,
                    &psi_rows,
                    f.row(row),
                    row,
                )?);
            }
            Directive::Finisher(name) => {
                let an = analysis.as_ref().ok_or_else(|| fail("no problem loaded"))?;
                let rels = relations.as_ref().ok_or_else(|| fail("a finisher needs a `project` first"))?;
                let order_h = an.problem.order();
                polys = rels
                    .iter()
                    .map(|r| PolyRelation::from_reciprocal(&r.relation, order_h).reduced())
                    .filter(|p| !p.is_zero())
                    .collect();
                outcome = Some(match name.as_str() {
                    "residue" => residue_refute(&polys, &congruences, index),
                    "frag4" => {
                        let [poly] = &polys[..] else {
                            return Err(fail(format!("frag4 finisher needs one relation, got {}", polys.len())));
                        };
                        let ds: Vec<usize> = poly
                            .variables()
                            .into_iter()
                            .filter_map(|v| if let PolyVar::D(k) = v { Some(k) } else { None })
                            .collect();
                        let [a, b] = ds[..] else {
                            return Err(fail(format!("frag4 finisher needs two degrees in {poly}")));
                        };
                        finisher_frag4(poly, (a, b), &congruences, index, order_h)?
                    }
                    "thm108" => {
                        let [rel] = &rels[..] else {
                            return Err(fail(format!("thm108 finisher needs one relation, got {}", rels.len())));
                        };
                        let k = rel
                            .relation
                            .variables()
                            .into_iter()
                            .find_map(|v| if let Var::InvDegree(k) = v { Some(k) } else { None })
                            .ok_or_else(|| fail("relation has no degree"))?;
                        let r = order_degree_ratio(&rel.relation, k)?;
                        if !r.is_integer() {
                            return Err(fail(format!("|G|/d{} = {r} is not an integer", k + 1)));
                        }
                        let count = merge.as_ref().map_or(1, |m| m.class_size(k)) as u64;
                        finisher_thm108(r.to_integer().unsigned_abs() as u64, count, order_h)
                    }
                    other => return Err(fail(format!("unknown finisher {other:?}"))),
                });
            }
        }
    }
    let analysis = analysis.ok_or_else(|| fail("script names no problem"))?;
    let (fragment_name, fragment) = frag.ok_or_else(|| fail("script selects no fragment"))?;
    let relations = relations.unwrap_or_default();
    let eqs: Vec<ReciprocalEquation> = equations.iter().map(|e| e.equation.clone()).collect();
    let certified = relations.iter().all(|r| r.verify(&eqs));
    Ok(ScriptRun {
        analysis,
        fragment_name,
        merge: merge.expect("set with fragment"),
        fragment,
        equations,
        relations,
        certified,
        polys,
        congruences,
        index,
        outcome: outcome.ok_or_else(|| fail("script has no finisher"))?,
    })
}

impl ScriptRun {
    /// A contradiction or forced order, with every certificate re-verified.
    pub fn is_conclusive(&self) -> bool {
        self.certified && !matches!(self.outcome, EliminationOutcome::Inconclusive(_))
    }

    /// Structured text: equations, relations with certificates, congruences, outcome.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "fragment {} ({} rows)", self.fragment_name, self.fragment.row_count());
        for e in &self.equations {
            let _ =
                writeln!(s, "equation a({},{},{}) = {}: {}", e.triple[0], e.triple[1], e.triple[2], e.a, e.equation);
        }
        for r in &self.relations {
            let m: Vec<String> = r.multipliers.iter().map(i128::to_string).collect();
            let _ = writeln!(s, "relation {}  [multipliers {}]", r.relation, m.join(" "));
        }
        let _ = writeln!(s, "certificates re-verified: {}", if self.certified { "yes" } else { "NO" });
        for p in &self.polys {
            let _ = writeln!(s, "cleared {p}  (n = |G:H|)");
        }
        for c in &self.congruences {
            let _ = writeln!(s, "congruence {c}");
        }
        if self.index.modulus > 1 {
            let _ = writeln!(s, "assumed {}", self.index);
        }
        let _ = writeln!(s, "outcome {}", self.outcome);
        s
    }

    /// Failures when the group itself is substituted for `G`: true signed
    /// degrees of the fragment rows, `|G| = |H|` and `n = 1`.
    pub fn consistency_failures(&self) -> Result<Vec<String>, String> {
        let degrees = self
            .analysis
            .true_degrees(&self.fragment)
            .ok_or("fragment rows are not restrictions of distinct irreducibles")?;
        let order = self.analysis.problem.order() as i128;
        let mut bad = Vec::new();
        for e in &self.equations {
            match e.equation.evaluate(order, &degrees) {
                Ok(v) if v == 0.into() => {}
                Ok(v) => bad.push(format!("{} evaluates to {v}", e.equation)),
                Err(err) => bad.push(err.to_string()),
            }
        }
        for r in &self.relations {
            match r.relation.evaluate(order, &degrees) {
                Ok(v) if v == 0.into() => {}
                other => bad.push(format!("{} gives {other:?}", r.relation)),
            }
        }
        for p in &self.polys {
            let v = p.evaluate(&|v| match v {
                PolyVar::N => 1,
                PolyVar::D(k) => degrees[k],
            });
            if v != 0 {
                bad.push(format!("{p} evaluates to {v}"));
            }
        }
        for c in &self.congruences {
            if !c.holds(degrees[c.row]) {
                bad.push(format!("{c} fails at d = {}", degrees[c.row]));
            }
        }
        if !self.index.holds(1) {
            bad.push(format!("{} fails at n = 1", self.index));
        }
        Ok(bad)
    }
}
