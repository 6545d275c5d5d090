//! Finite region structures: complete relation matrices obeying the
//! identity, converse and composition-table conditions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{compose_in, BaseRelation, Kind};
use crate::geometry::{GeometryError, Region};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("invalid structure: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("regions {0} and {1} coincide")]
    DuplicateRegion(usize, usize),
    #[error("empty region subset")]
    EmptySubset,
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("duplicate region name `{0}`")]
    DuplicateName(String),
    #[error("empty atom set")]
    EmptySet,
    #[error("size {0} is too large to enumerate (limit {1})")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("malformed structure: {0}")]
    Malformed(String),
}

/// One violated structure condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotSquare,
    WrongKind {
        i: usize,
        j: usize,
        rel: BaseRelation,
    },
    Diagonal {
        i: usize,
        rel: BaseRelation,
    },
    OffDiagonalEq {
        i: usize,
        j: usize,
    },
    Converse {
        i: usize,
        j: usize,
    },
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        rel: BaseRelation,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare => write!(f, "matrix is not square"),
            Violation::WrongKind { i, j, rel } => write!(f, "({i},{j}): {rel} is of the wrong kind"),
            Violation::Diagonal { i, rel } => write!(f, "({i},{i}) is {rel}, expected eq"),
            Violation::OffDiagonalEq { i, j } => write!(f, "({i},{j}) is eq between distinct regions"),
            Violation::Converse { i, j } => write!(f, "({i},{j}) and ({j},{i}) are not converse"),
            Violation::Triangle { i, j, k, rel } => write!(
                f,
                "triangle ({i},{j},{k}): rel({i},{k}) = {rel} not in composition of rel({i},{j}) and rel({j},{k})"
            ),
        }
    }
}

/// Checks a candidate matrix and returns every violated condition.
pub fn validate(kind: Kind, matrix: &[Vec<BaseRelation>]) -> Vec<Violation> {
    let n = matrix.len();
    let mut out = Vec::new();
    if matrix.iter().any(|row| row.len() != n) {
        out.push(Violation::NotSquare);
        return out;
    }
    for i in 0..n {
        for j in 0..n {
            let r = matrix[i][j];
            if !kind.contains(r) {
                out.push(Violation::WrongKind { i, j, rel: r });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        if matrix[i][i] != BaseRelation::Eq {
            out.push(Violation::Diagonal {
                i,
                rel: matrix[i][i],
            });
        }
        for j in 0..n {
            if i != j && matrix[i][j] == BaseRelation::Eq {
                out.push(Violation::OffDiagonalEq { i, j });
            }
            if i < j && matrix[j][i] != matrix[i][j].converse() {
                out.push(Violation::Converse { i, j });
            }
        }
    }
    // Relations as canonical positions and the table as bit masks, so the
    // cubic loop does no lookups by name.
    let pos: Vec<Vec<usize>> = matrix
        .iter()
        .map(|row| row.iter().map(|&r| kind.index_of(r).expect("checked above")).collect())
        .collect();
    let comp: Vec<Vec<u8>> = kind
        .relations()
        .iter()
        .map(|&a| kind.relations().iter().map(|&b| compose_in(kind, a, b).bits()).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            let row = &comp[pos[i][j]];
            for k in 0..n {
                if row[pos[j][k]] >> pos[i][k] & 1 == 0 {
                    out.push(Violation::Triangle {
                        i,
                        j,
                        k,
                        rel: matrix[i][k],
                    });
                }
            }
        }
    }
    out
}

/// A validated finite region structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegionStructure {
    kind: Kind,
    regions: Vec<String>,
    rel: Vec<BaseRelation>,
}

impl RegionStructure {
    /// Validates and builds a structure.
    pub fn new(
        kind: Kind,
        regions: Vec<String>,
        matrix: Vec<Vec<BaseRelation>>,
    ) -> Result<Self, StructureError> {
        if regions.len() != matrix.len() {
            return Err(StructureError::Malformed(format!(
                "{} region names for a {}-row matrix",
                regions.len(),
                matrix.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for r in &regions {
            if !seen.insert(r) {
                return Err(StructureError::DuplicateName(r.clone()));
            }
        }
        let v = validate(kind, &matrix);
        if !v.is_empty() {
            return Err(StructureError::Invalid(v));
        }
        Ok(RegionStructure {
            kind,
            regions,
            rel: matrix.into_iter().flatten().collect(),
        })
    }

    /// Builds a structure named `r1..rn` without validating; callers guarantee validity.
    pub(crate) fn from_flat_unchecked(kind: Kind, n: usize, rel: Vec<BaseRelation>) -> Self {
        debug_assert_eq!(rel.len(), n * n);
        RegionStructure {
            kind,
            regions: default_names(n),
            rel,
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn regions(&self) -> &[String] {
        &self.regions
    }

    pub fn rel(&self, i: usize, j: usize) -> BaseRelation {
        self.rel[i * self.regions.len() + j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.regions.iter().position(|r| r == name)
    }

    pub fn matrix(&self) -> Vec<Vec<BaseRelation>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.rel(i, j)).collect())
            .collect()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, StructureError> {
        if names.len() != self.len() {
            return Err(StructureError::Malformed("wrong number of names".into()));
        }
        let distinct: BTreeSet<_> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(StructureError::Malformed(
                "region names must be distinct".into(),
            ));
        }
        self.regions = names;
        Ok(self)
    }

    /// Restriction to the given region indices, in the given order.
    pub fn substructure(&self, ids: &[usize]) -> Result<Self, StructureError> {
        if ids.is_empty() {
            return Err(StructureError::EmptySubset);
        }
        for &i in ids {
            if i >= self.len() {
                return Err(StructureError::UnknownRegion(i.to_string()));
            }
        }
        let matrix = ids
            .iter()
            .map(|&i| ids.iter().map(|&j| self.rel(i, j)).collect())
            .collect();
        let names = ids.iter().map(|&i| self.regions[i].clone()).collect();
        RegionStructure::new(self.kind, names, matrix)
    }

    /// The RCC5 structure obtained by coarsening every entry.
    pub fn coarsen(&self) -> Self {
        RegionStructure {
            kind: Kind::Rcc5,
            regions: self.regions.clone(),
            rel: self.rel.iter().map(|r| r.coarsen()).collect(),
        }
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            kind: self.kind,
            regions: self.regions.clone(),
            matrix: self
                .matrix()
                .iter()
                .map(|row| row.iter().map(|r| r.name().to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &StructureJson) -> Result<Self, StructureError> {
        let matrix = j
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        s.parse::<BaseRelation>()
                            .map_err(|e| StructureError::Malformed(e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        RegionStructure::new(j.kind, j.regions.clone(), matrix)
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("r{i}")).collect()
}

/// Serialized form of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub kind: Kind,
    pub regions: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

/// Variable name to the set of region indices where it holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Valuation {
    map: BTreeMap<String, BTreeSet<usize>>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set<I: IntoIterator<Item = usize>>(&mut self, var: &str, regions: I) {
        self.map
            .insert(var.to_string(), regions.into_iter().collect());
    }

    pub fn with<I: IntoIterator<Item = usize>>(mut self, var: &str, regions: I) -> Self {
        self.set(var, regions);
        self
    }

    pub fn add(&mut self, var: &str, region: usize) {
        self.map.entry(var.to_string()).or_default().insert(region);
    }

    /// Regions where `var` holds; unknown variables hold nowhere.
    pub fn get(&self, var: &str) -> Option<&BTreeSet<usize>> {
        self.map.get(var)
    }

    pub fn holds(&self, var: &str, region: usize) -> bool {
        self.map.get(var).is_some_and(|s| s.contains(&region))
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BTreeSet<usize>)> {
        self.map.iter()
    }

    pub fn to_json(&self, s: &RegionStructure) -> BTreeMap<String, Vec<String>> {
        self.map
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    v.iter().map(|&i| s.regions()[i].clone()).collect(),
                )
            })
            .collect()
    }

    pub fn from_json(
        s: &RegionStructure,
        j: &BTreeMap<String, Vec<String>>,
    ) -> Result<Self, StructureError> {
        let mut out = Valuation::new();
        for (k, names) in j {
            let mut set = BTreeSet::new();
            for n in names {
                set.insert(
                    s.index_of(n)
                        .ok_or_else(|| StructureError::UnknownRegion(n.clone()))?,
                );
            }
            out.map.insert(k.clone(), set);
        }
        Ok(out)
    }
}

/// The structure induced by pairwise distinct geometric regions.
pub fn induced<R: Region>(
    regions: &[R],
    ids: Option<Vec<String>>,
) -> Result<RegionStructure, StructureError> {
    let n = regions.len();
    let mut rel = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let r = regions[i].rcc8(&regions[j])?;
            if i != j && r == BaseRelation::Eq {
                return Err(StructureError::DuplicateRegion(i, j));
            }
            rel.push(r);
        }
    }
    let names = ids.unwrap_or_else(|| default_names(n));
    let matrix: Vec<Vec<BaseRelation>> = rel.chunks(n.max(1)).map(|c| c.to_vec()).collect();
    let matrix = if n == 0 { Vec::new() } else { matrix };
    let s = RegionStructure::new(crate::algebra::Kind::Rcc8, names, matrix)?;
    Ok(s)
}

/// RCC5 structure of pairwise distinct non-empty sets under set semantics.
pub fn powerset_rcc5<T: Ord + Clone>(
    sets: &[BTreeSet<T>],
) -> Result<RegionStructure, StructureError> {
    let n = sets.len();
    let mut matrix = vec![vec![BaseRelation::Eq; n]; n];
    for i in 0..n {
        if sets[i].is_empty() {
            return Err(StructureError::EmptySet);
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (&sets[i], &sets[j]);
            matrix[i][j] = if a == b {
                return Err(StructureError::DuplicateRegion(i, j));
            } else if a.is_disjoint(b) {
                BaseRelation::Dr
            } else if a.is_subset(b) {
                BaseRelation::Pp
            } else if b.is_subset(a) {
                BaseRelation::Ppi
            } else {
                BaseRelation::Po
            };
        }
    }
    RegionStructure::new(Kind::Rcc5, default_names(n), matrix)
}

/// Result of [`check_sup_property`] for one region subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupEntry {
    pub subset: Vec<usize>,
    pub sup: Option<usize>,
}

/// Whether `u` is a least upper bound of `subset` in an RCC5 structure.
fn is_sup(s: &RegionStructure, subset: &[usize], u: usize) -> bool {
    use BaseRelation::*;
    let n = s.len();
    // every member is equal to or a proper part of u
    if !subset.iter().all(|&x| matches!(s.rel(x, u), Eq | Pp)) {
        return false;
    }
    for t in 0..n {
        // every region having all members as proper parts contains u
        if subset.iter().all(|&x| s.rel(x, t) == Pp) && !matches!(s.rel(u, t), Eq | Pp) {
            return false;
        }
        // every region discrete from all members is discrete from u
        if subset.iter().all(|&x| s.rel(t, x) == Dr) && s.rel(t, u) != Dr {
            return false;
        }
    }
    true
}

/// For every region subset of size 2..=max_subset, the region satisfying the
/// three least-upper-bound conditions, if one exists.
pub fn check_sup_property(
    s: &RegionStructure,
    max_subset: usize,
) -> Result<Vec<SupEntry>, StructureError> {
    if s.kind() != Kind::Rcc5 {
        return Err(StructureError::Malformed(
            "Sup is defined on RCC5 structures".into(),
        ));
    }
    let n = s.len();
    let mut out = Vec::new();
    let mut subset = Vec::new();
    fn rec(
        s: &RegionStructure,
        n: usize,
        max: usize,
        start: usize,
        subset: &mut Vec<usize>,
        out: &mut Vec<SupEntry>,
    ) {
        if subset.len() >= 2 {
            let sup = (0..n).find(|&u| is_sup(s, subset, u));
            out.push(SupEntry {
                subset: subset.clone(),
                sup,
            });
        }
        if subset.len() == max {
            return;
        }
        for x in start..n {
            subset.push(x);
            rec(s, n, max, x + 1, subset, out);
            subset.pop();
        }
    }
    rec(s, n, max_subset.min(3), 0, &mut subset, &mut out);
    Ok(out)
}

/// Largest size accepted by [`enumerate_structures`].
pub const MAX_ENUMERATION: usize = 6;

/// All valid structures on `k` labeled regions in lexicographic order of
/// their upper triangles (pairs `(0,1), (0,2), .., (1,2), ..`, relations in
/// canonical order).
pub fn enumerate_structures(kind: Kind, k: usize) -> Result<StructureIter, StructureError> {
    if k > MAX_ENUMERATION {
        return Err(StructureError::TooLarge(k, MAX_ENUMERATION));
    }
    Ok(StructureIter::new(kind, k))
}

/// Streaming backtracking enumeration, see [`enumerate_structures`].
pub struct StructureIter {
    kind: Kind,
    n: usize,
    pairs: Vec<(usize, usize)>,
    choices: Vec<BaseRelation>,
    // index into `choices` chosen for each assigned pair
    stack: Vec<usize>,
    rel: Vec<BaseRelation>,
    done: bool,
    started: bool,
}

impl StructureIter {
    fn new(kind: Kind, n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        let mut rel = vec![BaseRelation::Eq; n * n];
        for i in 0..n {
            rel[i * n + i] = BaseRelation::Eq;
        }
        StructureIter {
            kind,
            n,
            pairs,
            choices: kind.non_eq().collect(),
            stack: Vec::new(),
            rel,
            done: n == 0,
            started: false,
        }
    }

    fn assign(&mut self, p: usize, c: usize) {
        let (i, j) = self.pairs[p];
        let r = self.choices[c];
        self.rel[i * self.n + j] = r;
        self.rel[j * self.n + i] = r.converse();
    }

    /// All triangles closed by assigning pair `p` satisfy the table.
    fn consistent(&self, p: usize) -> bool {
        let (b, c) = self.pairs[p];
        let n = self.n;
        let r = |x: usize, y: usize| self.rel[x * n + y];
        for a in 0..b {
            let tri = [a, b, c];
            for &x in &tri {
                for &y in &tri {
                    for &z in &tri {
                        if x != y
                            && y != z
                            && x != z
                            && !compose_in(self.kind, r(x, y), r(y, z)).contains(r(x, z))
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Advances to the next complete consistent assignment.
    fn advance(&mut self) -> bool {
        let m = self.pairs.len();
        // Resume: try the next choice for the deepest pair.
        let mut descending = !self.started;
        self.started = true;
        loop {
            if descending {
                if self.stack.len() == m {
                    return true;
                }
                let p = self.stack.len();
                self.stack.push(0);
                self.assign(p, 0);
                if self.consistent(p) {
                    continue;
                }
                descending = false;
                continue;
            }
            // bump the top of the stack
            let Some(top) = self.stack.last_mut() else {
                return false;
            };
            *top += 1;
            let c = *top;
            let p = self.stack.len() - 1;
            if c >= self.choices.len() {
                self.stack.pop();
                continue;
            }
            self.assign(p, c);
            if self.consistent(p) {
                descending = true;
            }
        }
    }
}

impl Iterator for StructureIter {
    type Item = RegionStructure;

    fn next(&mut self) -> Option<RegionStructure> {
        if self.done {
            if self.n == 0 && !self.started {
                self.started = true;
                return Some(RegionStructure::from_flat_unchecked(
                    self.kind,
                    0,
                    Vec::new(),
                ));
            }
            return None;
        }
        if self.pairs.is_empty() {
            // k = 1: a single structure
            self.done = true;
            return Some(RegionStructure::from_flat_unchecked(
                self.kind,
                self.n,
                self.rel.clone(),
            ));
        }
        if self.advance() {
            Some(RegionStructure::from_flat_unchecked(
                self.kind,
                self.n,
                self.rel.clone(),
            ))
        } else {
            self.done = true;
            None
        }
    }
}

/// A structure together with a valuation of propositional variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionModel {
    pub structure: RegionStructure,
    pub valuation: Valuation,
}

/// Serialized form of a model: the structure plus variable extensions by
/// region name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub structure: StructureJson,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl RegionModel {
    pub fn new(structure: RegionStructure, valuation: Valuation) -> Self {
        RegionModel { structure, valuation }
    }

    pub fn to_json(&self) -> ModelJson {
        ModelJson {
            structure: self.structure.to_json(),
            valuation: self.valuation.to_json(&self.structure),
        }
    }

    pub fn from_json(j: &ModelJson) -> Result<Self, StructureError> {
        let structure = RegionStructure::from_json(&j.structure)?;
        let valuation = Valuation::from_json(&structure, &j.valuation)?;
        Ok(RegionModel { structure, valuation })
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseRelation::*;
    use crate::geometry::IntervalUnion;

    #[test]
    fn validate_examples() {
        let k = Kind::Rcc8;
        assert!(validate(k, &[vec![Eq, Dc], vec![Dc, Eq]]).is_empty());
        let bad = vec![vec![Eq, Tpp, Dc], vec![Tppi, Eq, Tpp], vec![Dc, Tppi, Eq]];
        let v = validate(k, &bad);
        assert!(
            v.contains(&Violation::Triangle {
                i: 0,
                j: 1,
                k: 2,
                rel: Dc
            }),
            "{v:?}"
        );
        let v = validate(k, &[vec![Eq, Eq], vec![Eq, Eq]]);
        assert!(v.contains(&Violation::OffDiagonalEq { i: 0, j: 1 }));
    }

    #[test]
    fn induced_intervals() {
        let regs: Vec<IntervalUnion<i64>> = [(0, 1), (1, 2), (0, 3)]
            .iter()
            .map(|&(a, b)| IntervalUnion::interval(a, b).unwrap())
            .collect();
        let s = induced(&regs, None).unwrap();
        assert_eq!(s.rel(0, 1), Ec);
        assert_eq!(s.rel(0, 2), Tpp);
        // [1,2] lies inside the open interval (0,3)
        assert_eq!(s.rel(1, 2), Ntpp);
        let sub = s.substructure(&[0, 2]).unwrap();
        assert_eq!(sub.rel(0, 1), Tpp);
        assert_eq!(s.substructure(&[0]).unwrap().matrix(), vec![vec![Eq]]);
        assert!(s.substructure(&[]).is_err());
        let dup = [regs[0].clone(), regs[0].clone()];
        assert!(matches!(
            induced(&dup, None),
            Err(StructureError::DuplicateRegion(0, 1))
        ));
    }

    #[test]
    fn powerset_examples() {
        let set = |xs: &[u32]| xs.iter().copied().collect::<BTreeSet<u32>>();
        let s = powerset_rcc5(&[set(&[1]), set(&[2]), set(&[1, 2])]).unwrap();
        assert_eq!(s.rel(0, 1), Dr);
        assert_eq!(s.rel(0, 2), Pp);
        assert_eq!(s.rel(2, 1), Ppi);
        let s = powerset_rcc5(&[set(&[1, 2]), set(&[2, 3])]).unwrap();
        assert_eq!(s.rel(0, 1), Po);
        assert!(powerset_rcc5(&[set(&[1]), set(&[1])]).is_err());
        assert!(powerset_rcc5(&[set(&[])]).is_err());
    }

    #[test]
    fn sup_examples() {
        let set = |xs: &[u32]| xs.iter().copied().collect::<BTreeSet<u32>>();
        let all: Vec<_> = [
            vec![1],
            vec![2],
            vec![3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
            vec![1, 2, 3],
        ]
        .iter()
        .map(|v| set(v))
        .collect();
        let s = powerset_rcc5(&all).unwrap();
        let report = check_sup_property(&s, 3).unwrap();
        assert!(report.iter().all(|e| e.sup.is_some()));
        // the sup of {1} and {2} is {1,2}
        assert_eq!(
            report.iter().find(|e| e.subset == vec![0, 1]).unwrap().sup,
            Some(3)
        );
        let s = powerset_rcc5(&[set(&[1]), set(&[2])]).unwrap();
        assert!(check_sup_property(&s, 3)
            .unwrap()
            .iter()
            .all(|e| e.sup.is_none()));
        let s = powerset_rcc5(&[set(&[1])]).unwrap();
        assert!(check_sup_property(&s, 3).unwrap().is_empty());
    }

    #[test]
    fn enumeration_small_counts() {
        assert_eq!(enumerate_structures(Kind::Rcc8, 1).unwrap().count(), 1);
        assert_eq!(enumerate_structures(Kind::Rcc8, 2).unwrap().count(), 7);
        assert_eq!(enumerate_structures(Kind::Rcc5, 2).unwrap().count(), 4);
        assert!(enumerate_structures(Kind::Rcc8, 7).is_err());
    }

    #[test]
    fn enumeration_matches_naive_filter_on_three() {
        for kind in [Kind::Rcc8, Kind::Rcc5] {
            let rels: Vec<_> = kind.non_eq().collect();
            let mut naive = Vec::new();
            for &a in &rels {
                for &b in &rels {
                    for &c in &rels {
                        let m = vec![
                            vec![Eq, a, b],
                            vec![a.converse(), Eq, c],
                            vec![b.converse(), c.converse(), Eq],
                        ];
                        if validate(kind, &m).is_empty() {
                            naive.push(m);
                        }
                    }
                }
            }
            let streamed: Vec<_> = enumerate_structures(kind, 3)
                .unwrap()
                .map(|s| s.matrix())
                .collect();
            assert_eq!(streamed, naive);
        }
    }

    #[test]
    fn enumeration_is_valid_and_duplicate_free() {
        let all: Vec<_> = enumerate_structures(Kind::Rcc8, 4).unwrap().collect();
        let distinct: BTreeSet<_> = all.iter().map(|s| s.matrix()).collect();
        assert_eq!(distinct.len(), all.len());
        for s in &all {
            assert!(validate(Kind::Rcc8, &s.matrix()).is_empty());
        }
    }
}
