//! Constraint networks over base relations: algebraic closure, backtracking
//! satisfiability over general region structures, and realization as
//! unions of rational intervals via fork frames.

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{compose_sets, AlgebraError, BaseRelation, Kind, RelationSet};
use crate::geometry::{rel_fork, ForkFrame, ForkRegion, ForkShape, GeometryError, IntervalUnion};
use crate::structures::{induced, RegionStructure, StructureError};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("empty relation set between `{0}` and `{1}`")]
    EmptyConstraint(String, String),
    #[error("constraint between `{0}` and itself must allow eq")]
    SelfConstraint(String),
    #[error("no fork assignment with at most {cap} forks")]
    SearchExhausted { cap: usize },
    #[error("realization check failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Variables with relation-set constraints; an absent pair is unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintNetwork {
    kind: Kind,
    vars: Vec<String>,
    rels: Vec<RelationSet>,
}

impl ConstraintNetwork {
    pub fn new(kind: Kind, vars: Vec<String>) -> Result<Self, SolverError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(v) {
                return Err(SolverError::DuplicateVariable(v.clone()));
            }
        }
        let n = vars.len();
        let mut rels = vec![RelationSet::full(kind); n * n];
        for i in 0..n {
            rels[i * n + i] = RelationSet::singleton(kind, BaseRelation::Eq);
        }
        Ok(ConstraintNetwork { kind, vars, rels })
    }

    pub fn rcc8<S: AsRef<str>>(vars: &[S]) -> Result<Self, SolverError> {
        Self::new(
            Kind::Rcc8,
            vars.iter().map(|s| s.as_ref().to_string()).collect(),
        )
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> RelationSet {
        self.rels[i * self.vars.len() + j]
    }

    fn put(&mut self, i: usize, j: usize, s: RelationSet) {
        let n = self.vars.len();
        self.rels[i * n + j] = s;
        self.rels[j * n + i] = s.converse();
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|x| x == v)
    }

    /// Intersects the constraint on `(i, j)` with `s`.
    pub fn constrain(&mut self, i: usize, j: usize, s: RelationSet) -> Result<(), SolverError> {
        if s.kind() != self.kind {
            return Err(AlgebraError::KindMismatch(s.kind(), self.kind).into());
        }
        if s.is_empty() {
            return Err(SolverError::EmptyConstraint(
                self.vars[i].clone(),
                self.vars[j].clone(),
            ));
        }
        if i == j {
            if !s.contains(BaseRelation::Eq) {
                return Err(SolverError::SelfConstraint(self.vars[i].clone()));
            }
            return Ok(());
        }
        let cur = self.get(i, j);
        self.put(i, j, cur.intersect(s));
        Ok(())
    }

    pub fn constrain_named(
        &mut self,
        x: &str,
        y: &str,
        rels: &[BaseRelation],
    ) -> Result<(), SolverError> {
        let i = self
            .index_of(x)
            .ok_or_else(|| SolverError::UnknownVariable(x.into()))?;
        let j = self
            .index_of(y)
            .ok_or_else(|| SolverError::UnknownVariable(y.into()))?;
        let s = RelationSet::from_relations(self.kind, rels.iter().copied())?;
        self.constrain(i, j, s)
    }

    /// Constrained pairs `i < j` whose set is not the full set.
    pub fn constraints(&self) -> Vec<(usize, usize, RelationSet)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let s = self.get(i, j);
                if s != RelationSet::full(self.kind) {
                    out.push((i, j, s));
                }
            }
        }
        out
    }

    pub fn is_atomic(&self) -> bool {
        self.rels.iter().all(|s| s.is_singleton())
    }

    pub fn to_json(&self) -> NetworkJson {
        NetworkJson {
            vars: self.vars.clone(),
            constraints: self
                .constraints()
                .into_iter()
                .map(|(i, j, s)| ConstraintJson {
                    i: self.vars[i].clone(),
                    j: self.vars[j].clone(),
                    rels: s.iter().map(|r| r.name().to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &NetworkJson) -> Result<Self, SolverError> {
        let mut n = ConstraintNetwork::new(Kind::Rcc8, j.vars.clone())?;
        for c in &j.constraints {
            let rels = c
                .rels
                .iter()
                .map(|r| r.parse::<BaseRelation>())
                .collect::<Result<Vec<_>, _>>()?;
            if rels.is_empty() {
                return Err(SolverError::EmptyConstraint(c.i.clone(), c.j.clone()));
            }
            n.constrain_named(&c.i, &c.j, &rels)?;
        }
        Ok(n)
    }
}

/// Serialized network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkJson {
    pub vars: Vec<String>,
    pub constraints: Vec<ConstraintJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub i: String,
    pub j: String,
    pub rels: Vec<String>,
}

/// Outcome of [`a_closure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Closed(ConstraintNetwork),
    Inconsistent,
}

/// Refines `rel(i,k)` by `rel(i,j) ; rel(j,k)` until nothing changes.
pub fn a_closure(net: &ConstraintNetwork) -> Closure {
    let mut n = net.clone();
    if close_in_place(&mut n) {
        Closure::Closed(n)
    } else {
        Closure::Inconsistent
    }
}

fn close_in_place(net: &mut ConstraintNetwork) -> bool {
    let n = net.len();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut queued = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            queue.push_back((i, j));
            queued[i * n + j] = true;
        }
    }
    if net.rels.iter().any(|s| s.is_empty()) {
        return false;
    }
    while let Some((i, j)) = queue.pop_front() {
        queued[i * n + j] = false;
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            // (i,k) from (i,j);(j,k) and (k,j) from (k,i);(i,j)
            for (a, b, via) in [(i, k, j), (k, j, i)] {
                let cur = net.get(a, b);
                let comp = compose_sets(net.get(a, via), net.get(via, b)).expect("same kind");
                let refined = cur.intersect(comp);
                if refined != cur {
                    if refined.is_empty() {
                        return false;
                    }
                    net.put(a, b, refined);
                    let key = if a < b { (a, b) } else { (b, a) };
                    if !queued[key.0 * n + key.1] {
                        queued[key.0 * n + key.1] = true;
                        queue.push_back(key);
                    }
                }
            }
        }
    }
    true
}

/// A satisfying atomic refinement. Variables related by `eq` share a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub structure: RegionStructure,
    /// Region index of each network variable.
    pub region_of: Vec<usize>,
}

/// Outcome of [`satisfiable_rs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfiability {
    Unsat,
    Sat(Solution),
}

impl Satisfiability {
    pub fn is_sat(&self) -> bool {
        matches!(self, Satisfiability::Sat(_))
    }
}

/// Decides satisfiability over general region structures by searching for an
/// atomic refinement closed under composition.
///
/// Branching picks the unresolved pair with the fewest remaining relations
/// (first in lexicographic pair order on ties) and tries its relations in
/// canonical order.
pub fn satisfiable_rs(net: &ConstraintNetwork) -> Satisfiability {
    let mut work = net.clone();
    if !close_in_place(&mut work) {
        return Satisfiability::Unsat;
    }
    match search(work) {
        Some(atomic) => Satisfiability::Sat(quotient(&atomic)),
        None => Satisfiability::Unsat,
    }
}

fn search(net: ConstraintNetwork) -> Option<ConstraintNetwork> {
    let n = net.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..n {
        for j in i + 1..n {
            let len = net.get(i, j).len();
            if len > 1 && best.is_none_or(|(b, _, _)| len < b) {
                best = Some((len, i, j));
            }
        }
    }
    let Some((_, i, j)) = best else {
        return Some(net);
    };
    for r in net.get(i, j).iter() {
        let mut next = net.clone();
        next.put(i, j, RelationSet::singleton(net.kind(), r));
        if close_in_place(&mut next) {
            if let Some(found) = search(next) {
                return Some(found);
            }
        }
    }
    None
}

/// Collapses `eq`-classes of an atomic closed network into a structure.
fn quotient(atomic: &ConstraintNetwork) -> Solution {
    let n = atomic.len();
    let mut region_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if let Some(r) = reps
            .iter()
            .position(|&rep| atomic.get(rep, i).contains(BaseRelation::Eq))
        {
            region_of[i] = r;
        } else {
            region_of[i] = reps.len();
            reps.push(i);
        }
    }
    let names = reps
        .iter()
        .enumerate()
        .map(|(r, _)| {
            (0..n)
                .filter(|&v| region_of[v] == r)
                .map(|v| atomic.vars()[v].clone())
                .collect::<Vec<_>>()
                .join("=")
        })
        .collect();
    let base = |s: RelationSet| s.iter().next().expect("atomic");
    let matrix = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| base(atomic.get(a, b))).collect())
        .collect();
    let structure = RegionStructure::new(atomic.kind(), names, matrix)
        .expect("closed atomic networks are structures");
    Solution {
        structure,
        region_of,
    }
}

/// Fork-frame model of a structure: one shape per region per fork.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForkModel {
    pub frame: ForkFrame,
    pub regions: Vec<ForkRegion>,
}

/// Requirements a set of fork columns has to witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Need {
    NonEmpty(usize),
    Meet(usize, usize),
    InteriorsMeet(usize, usize),
    NotInside(usize, usize),
    Differ(usize, usize),
    NotInInterior(usize, usize),
}

fn non_empty(a: ForkShape) -> bool {
    a != ForkShape::Empty
}

fn meets(a: ForkShape, b: ForkShape) -> bool {
    non_empty(a) && non_empty(b)
}

fn interiors_meet(a: ForkShape, b: ForkShape) -> bool {
    use ForkShape::*;
    meets(a, b) && !matches!((a, b), (Left, Right) | (Right, Left))
}

fn inside(a: ForkShape, b: ForkShape) -> bool {
    a == ForkShape::Empty || a == b || b == ForkShape::Both
}

fn inside_interior(a: ForkShape, b: ForkShape) -> bool {
    a == ForkShape::Empty || b == ForkShape::Both
}

/// Whether a column respects every universally quantified condition of `rel(s,t)`.
fn column_allows(rel: BaseRelation, a: ForkShape, b: ForkShape) -> bool {
    use BaseRelation::*;
    match rel {
        Dc => !meets(a, b),
        Ec => !interiors_meet(a, b),
        Tpp => inside(a, b),
        Ntpp => inside_interior(a, b),
        Tppi => inside(b, a),
        Ntppi => inside_interior(b, a),
        Eq => a == b,
        _ => true,
    }
}

fn needs_of(s: &RegionStructure) -> Vec<Need> {
    use BaseRelation::*;
    let n = s.len();
    let mut out: Vec<Need> = (0..n).map(Need::NonEmpty).collect();
    for i in 0..n {
        for j in i + 1..n {
            match s.rel(i, j) {
                Ec => out.push(Need::Meet(i, j)),
                Po => {
                    out.push(Need::InteriorsMeet(i, j));
                    out.push(Need::NotInside(i, j));
                    out.push(Need::NotInside(j, i));
                }
                Tpp => {
                    out.push(Need::Differ(i, j));
                    out.push(Need::NotInInterior(i, j));
                }
                Tppi => {
                    out.push(Need::Differ(i, j));
                    out.push(Need::NotInInterior(j, i));
                }
                Ntpp | Ntppi => out.push(Need::Differ(i, j)),
                _ => {}
            }
        }
    }
    out
}

fn column_covers(need: Need, col: &[ForkShape]) -> bool {
    match need {
        Need::NonEmpty(i) => non_empty(col[i]),
        Need::Meet(i, j) => meets(col[i], col[j]),
        Need::InteriorsMeet(i, j) => interiors_meet(col[i], col[j]),
        Need::NotInside(i, j) => !inside(col[i], col[j]),
        Need::Differ(i, j) => col[i] != col[j],
        Need::NotInInterior(i, j) => !inside_interior(col[i], col[j]),
    }
}

/// All columns (shape per region) compatible with every pair, in lexicographic order.
fn admissible_columns(s: &RegionStructure) -> Vec<Vec<ForkShape>> {
    let n = s.len();
    let mut out = Vec::new();
    let mut col = Vec::with_capacity(n);
    fn rec(s: &RegionStructure, n: usize, col: &mut Vec<ForkShape>, out: &mut Vec<Vec<ForkShape>>) {
        let k = col.len();
        if k == n {
            if col.iter().any(|&a| non_empty(a)) {
                out.push(col.clone());
            }
            return;
        }
        for b in ForkShape::ALL {
            if (0..k).all(|i| column_allows(s.rel(i, k), col[i], b)) {
                col.push(b);
                rec(s, n, col, out);
                col.pop();
            }
        }
    }
    rec(s, n, &mut col, &mut out);
    out
}

/// Default fork-count cap for `v` regions.
pub fn fork_cap(v: usize) -> usize {
    v * (v.saturating_sub(1)) / 2 + v
}

/// Finds a fork-frame model of an RCC8 structure with the fewest forks (up to `cap`).
///
/// Every fork is a column of shapes. A column is admissible when it respects
/// all "for every fork" conditions of the relations (for example no common
/// point for `dc`); the "some fork" conditions (for example a shared point
/// for `ec`) then have to be covered by the chosen columns. The search is an
/// iterative-deepening exact cover over admissible columns.
pub fn realize_forks(s: &RegionStructure) -> Result<ForkModel, SolverError> {
    realize_forks_with_cap(s, fork_cap(s.len()))
}

pub fn realize_forks_with_cap(s: &RegionStructure, cap: usize) -> Result<ForkModel, SolverError> {
    let needs = needs_of(s);
    let columns = admissible_columns(s);
    let mut covers: Vec<FixedBitSet> = columns
        .iter()
        .map(|col| {
            let mut b = FixedBitSet::with_capacity(needs.len());
            for (k, &need) in needs.iter().enumerate() {
                if column_covers(need, col) {
                    b.insert(k);
                }
            }
            b
        })
        .collect();
    // Drop columns whose coverage is contained in an earlier or larger column's.
    let mut keep = vec![true; columns.len()];
    for a in 0..columns.len() {
        for b in 0..columns.len() {
            if a != b
                && keep[b]
                && covers[a].is_subset(&covers[b])
                && (covers[a] != covers[b] || b < a)
            {
                keep[a] = false;
                break;
            }
        }
    }
    let idx: Vec<usize> = (0..columns.len()).filter(|&c| keep[c]).collect();
    let cols: Vec<&Vec<ForkShape>> = idx.iter().map(|&c| &columns[c]).collect();
    covers = idx.iter().map(|&c| covers[c].clone()).collect();
    let max_cover = covers.iter().map(|c| c.count_ones(..)).max().unwrap_or(0);
    let all = needs.len();
    for f in 1..=cap {
        let mut chosen = Vec::new();
        let covered = FixedBitSet::with_capacity(all);
        if cover_dfs(&covers, &covered, all, f, max_cover, &mut chosen) {
            let n = s.len();
            let regions = (0..n)
                .map(|i| ForkRegion::new(chosen.iter().map(|&c| cols[c][i]).collect()))
                .collect::<Result<Vec<_>, _>>()?;
            let model = ForkModel {
                frame: ForkFrame { forks: f },
                regions,
            };
            verify_forks(s, &model)?;
            return Ok(model);
        }
    }
    Err(SolverError::SearchExhausted { cap })
}

fn cover_dfs(
    covers: &[FixedBitSet],
    covered: &FixedBitSet,
    all: usize,
    depth: usize,
    max_cover: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let missing = all - covered.count_ones(..);
    if missing == 0 {
        return true;
    }
    if depth == 0 || max_cover == 0 || missing > depth * max_cover {
        return false;
    }
    // Branch on the uncovered requirement with the fewest covering columns.
    let mut best: Option<(usize, usize)> = None;
    for k in 0..all {
        if covered.contains(k) {
            continue;
        }
        let cnt = covers.iter().filter(|c| c.contains(k)).count();
        if best.is_none_or(|(b, _)| cnt < b) {
            best = Some((cnt, k));
        }
    }
    let (cnt, k) = best.expect("something uncovered");
    if cnt == 0 {
        return false;
    }
    for (c, cov) in covers.iter().enumerate() {
        if !cov.contains(k) {
            continue;
        }
        let mut next = covered.clone();
        next.union_with(cov);
        chosen.push(c);
        if cover_dfs(covers, &next, all, depth - 1, max_cover, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn verify_forks(s: &RegionStructure, m: &ForkModel) -> Result<(), SolverError> {
    for i in 0..s.len() {
        for j in 0..s.len() {
            let got = rel_fork(&m.frame, &m.regions[i], &m.regions[j])?;
            if got != s.rel(i, j) {
                return Err(SolverError::VerificationFailed(format!(
                    "fork model gives {got} for ({i},{j}), expected {}",
                    s.rel(i, j)
                )));
            }
        }
    }
    Ok(())
}

/// Maps fork `i` to the coordinate `i` and each shape to rational intervals:
/// `Right` to `[i, i+1/4]`, `Left` to `[i-1/4, i]`, `Both` to `[i-g, i+g]`
/// with `g` in `(1/4, 1/3)` increasing along global containment.
pub fn embed_reals(m: &ForkModel) -> Result<Vec<IntervalUnion<Rational>>, SolverError> {
    let n = m.regions.len();
    let sizes: Vec<usize> = m.regions.iter().map(|r| r.point_set().len()).collect();
    let quarter = Rational::new(1, 4);
    let mut pieces: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); n];
    for fork in 1..=m.frame.forks {
        let c = Rational::from_integer(fork as i64);
        let mut both: Vec<usize> = (0..n)
            .filter(|&w| m.regions[w].shape(fork) == ForkShape::Both)
            .collect();
        // Containment implies strictly fewer points, so sorting by size is a linear extension.
        both.sort_by_key(|&w| (sizes[w], w));
        let ranks = both.len() as i64;
        for w in 0..n {
            match m.regions[w].shape(fork) {
                ForkShape::Empty => {}
                ForkShape::Left => pieces[w].push((c - quarter, c)),
                ForkShape::Right => pieces[w].push((c, c + quarter)),
                ForkShape::Both => {
                    let rank = both.iter().position(|&x| x == w).expect("listed") as i64 + 1;
                    let g = quarter + Rational::new(rank, 12 * (ranks + 1));
                    pieces[w].push((c - g, c + g));
                }
            }
        }
    }
    pieces
        .into_iter()
        .map(|p| IntervalUnion::new(p).map_err(SolverError::from))
        .collect()
}

/// A concrete model of a network in the real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub solution: Solution,
    pub forks: ForkModel,
    /// One interval union per structure region.
    pub regions: Vec<IntervalUnion<Rational>>,
}

impl Realization {
    /// Interval union of each network variable, in variable order.
    pub fn by_variable(&self) -> Vec<&IntervalUnion<Rational>> {
        self.solution
            .region_of
            .iter()
            .map(|&r| &self.regions[r])
            .collect()
    }

    pub fn to_json(&self, net: &ConstraintNetwork) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (v, reg) in net.vars().iter().zip(self.by_variable()) {
            let pieces: Vec<serde_json::Value> = reg
                .pieces()
                .iter()
                .map(|(lo, hi)| serde_json::json!([lo.to_string(), hi.to_string()]))
                .collect();
            obj.insert(v.clone(), serde_json::Value::Array(pieces));
        }
        obj.insert(
            "refinement".into(),
            serde_json::to_value(self.solution.structure.to_json()).expect("serializable"),
        );
        serde_json::Value::Object(obj)
    }
}

/// Outcome of [`realize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realized {
    Unsat,
    Model(Box<Realization>),
}

/// Satisfiability, fork model, interval embedding, and a geometric check
/// that the embedded regions induce exactly the atomic refinement.
pub fn realize(net: &ConstraintNetwork) -> Result<Realized, SolverError> {
    let solution = match satisfiable_rs(net) {
        Satisfiability::Unsat => return Ok(Realized::Unsat),
        Satisfiability::Sat(s) => s,
    };
    if solution.structure.kind() != Kind::Rcc8 {
        return Err(SolverError::VerificationFailed(
            "realization needs an RCC8 network".into(),
        ));
    }
    let forks = realize_forks(&solution.structure)?;
    let regions = embed_reals(&forks)?;
    let got = induced(&regions, Some(solution.structure.regions().to_vec()))?;
    if got != solution.structure {
        return Err(SolverError::VerificationFailed(
            "interval regions induce a different matrix".into(),
        ));
    }
    Ok(Realized::Model(Box::new(Realization {
        solution,
        forks,
        regions,
    })))
}

/// The network `ec[k]`: `k` variables, pairwise externally connected.
pub fn ec_k(k: usize) -> ConstraintNetwork {
    let vars: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let mut n = ConstraintNetwork::new(Kind::Rcc8, vars).expect("distinct names");
    let ec = RelationSet::singleton(Kind::Rcc8, BaseRelation::Ec);
    for i in 0..k {
        for j in i + 1..k {
            n.constrain(i, j, ec).expect("non-empty");
        }
    }
    n
}

/// Variable names and constraints of a network in a readable map form.
pub fn describe(net: &ConstraintNetwork) -> BTreeMap<(String, String), String> {
    net.constraints()
        .into_iter()
        .map(|(i, j, s)| {
            (
                (net.vars()[i].clone(), net.vars()[j].clone()),
                s.to_string(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use BaseRelation::*;

    fn net(vars: &[&str], cs: &[(&str, &str, &[BaseRelation])]) -> ConstraintNetwork {
        let mut n = ConstraintNetwork::rcc8(vars).unwrap();
        for (a, b, r) in cs {
            n.constrain_named(a, b, r).unwrap();
        }
        n
    }

    #[test]
    fn closure_examples() {
        let n = net(
            &["x", "y", "z"],
            &[("x", "y", &[Ntpp]), ("y", "z", &[Ntpp])],
        );
        let Closure::Closed(c) = a_closure(&n) else {
            panic!()
        };
        assert_eq!(c.get(0, 2), RelationSet::singleton(Kind::Rcc8, Ntpp));
        assert_eq!(a_closure(&c), Closure::Closed(c.clone()));
        let bad = net(
            &["x", "y", "z"],
            &[("x", "y", &[Tpp]), ("y", "z", &[Tpp]), ("x", "z", &[Dc])],
        );
        assert_eq!(a_closure(&bad), Closure::Inconsistent);
        assert_eq!(satisfiable_rs(&bad), Satisfiability::Unsat);
    }

    #[test]
    fn ec3_is_sat_and_realizes() {
        let n = ec_k(3);
        assert!(satisfiable_rs(&n).is_sat());
        let Realized::Model(m) = realize(&n).unwrap() else {
            panic!()
        };
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(
                        crate::geometry::rel_intervals(&m.regions[i], &m.regions[j]),
                        Ec
                    );
                }
            }
        }
    }

    #[test]
    fn fork_examples() {
        let n = net(&["x", "y"], &[("x", "y", &[Ec])]);
        let Satisfiability::Sat(sol) = satisfiable_rs(&n) else {
            panic!()
        };
        let m = realize_forks(&sol.structure).unwrap();
        assert_eq!(m.frame.forks, 1);
        assert_eq!(m.regions[0].shapes(), &[ForkShape::Left]);
        assert_eq!(m.regions[1].shapes(), &[ForkShape::Right]);
        let reals = embed_reals(&m).unwrap();
        let q = |a, b| Rational::new(a, b);
        assert_eq!(reals[0].pieces(), &[(q(3, 4), q(1, 1))]);
        assert_eq!(reals[1].pieces(), &[(q(1, 1), q(5, 4))]);
    }

    #[test]
    fn nested_both_shapes_get_distinct_radii() {
        let n = net(&["x", "y"], &[("x", "y", &[Ntpp])]);
        let Realized::Model(m) = realize(&n).unwrap() else {
            panic!()
        };
        assert_eq!(
            crate::geometry::rel_intervals(&m.regions[0], &m.regions[1]),
            Ntpp
        );
        let n = net(
            &["x", "y", "z"],
            &[("x", "y", &[Ntpp]), ("x", "z", &[Ntpp])],
        );
        assert!(matches!(realize(&n).unwrap(), Realized::Model(_)));
    }

    #[test]
    fn eq_constraints_merge_variables() {
        let n = net(&["x", "y", "z"], &[("x", "y", &[Eq]), ("y", "z", &[Ec])]);
        let Satisfiability::Sat(sol) = satisfiable_rs(&n) else {
            panic!()
        };
        assert_eq!(sol.structure.len(), 2);
        assert_eq!(sol.region_of, vec![0, 0, 1]);
        assert_eq!(sol.structure.regions()[0], "x=y");
        let Realized::Model(m) = realize(&n).unwrap() else {
            panic!()
        };
        let vars = m.by_variable();
        assert_eq!(vars[0], vars[1]);
    }

    #[test]
    fn json_round_trip() {
        let n = net(&["x", "y"], &[("x", "y", &[Ec, Dc])]);
        let j = n.to_json();
        assert_eq!(ConstraintNetwork::from_json(&j).unwrap(), n);
        let bad = NetworkJson {
            vars: vec!["x".into()],
            constraints: vec![ConstraintJson {
                i: "x".into(),
                j: "q".into(),
                rels: vec!["ec".into()],
            }],
        };
        assert!(ConstraintNetwork::from_json(&bad).is_err());
    }

    #[test]
    fn single_variable() {
        let n = ConstraintNetwork::rcc8(&["x"]).unwrap();
        let Realized::Model(m) = realize(&n).unwrap() else {
            panic!()
        };
        assert_eq!(m.regions.len(), 1);
    }
}
