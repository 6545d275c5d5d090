use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::algebra::{BaseRelation, Kind};
use crate::structures::{RegionStructure, Valuation};

use super::ast::{Formula, Modality};
use super::expand::expand;
use super::LogicError;

/// Node of a hash-consed core formula; children always precede parents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Var(usize),
    True,
    Not(usize),
    And(usize, usize),
    Box(BaseRelation, usize),
}

/// A core formula as a DAG with structurally equal subformulas merged.
#[derive(Clone, Debug)]
pub(crate) struct Dag {
    pub nodes: Vec<Node>,
    pub vars: Vec<String>,
    pub root: usize,
}

pub(crate) fn compile(f: &Formula, kind: Kind) -> Result<Dag, LogicError> {
    let core = expand(f, kind)?;
    let mut b = DagBuilder::default();
    let root = b.add(&core);
    Ok(Dag {
        nodes: b.nodes,
        vars: b.vars,
        root,
    })
}

#[derive(Default)]
struct DagBuilder {
    nodes: Vec<Node>,
    vars: Vec<String>,
    var_ids: HashMap<String, usize>,
    ids: HashMap<Node, usize>,
    seen: HashMap<*const Formula, usize>,
}

impl DagBuilder {
    fn intern(&mut self, n: Node) -> usize {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(n);
        self.ids.insert(n, id);
        id
    }

    fn add_arc(&mut self, f: &Arc<Formula>) -> usize {
        let key = Arc::as_ptr(f);
        if let Some(&id) = self.seen.get(&key) {
            return id;
        }
        let id = self.add(f);
        self.seen.insert(key, id);
        id
    }

    fn add(&mut self, f: &Formula) -> usize {
        let n = match f {
            Formula::Var(v) => {
                let next = self.vars.len();
                let id = *self.var_ids.entry(v.clone()).or_insert(next);
                if id == next {
                    self.vars.push(v.clone());
                }
                Node::Var(id)
            }
            Formula::True => Node::True,
            Formula::Not(a) => Node::Not(self.add_arc(a)),
            Formula::And(a, b) => {
                let (x, y) = (self.add_arc(a), self.add_arc(b));
                Node::And(x, y)
            }
            Formula::Box(Modality::Rel(r), a) => Node::Box(*r, self.add_arc(a)),
            other => unreachable!("expanded formula contains sugar: {other:?}"),
        };
        self.intern(n)
    }
}

/// Successor sets of every region under every relation of the structure's
/// kind, as bit masks when the structure has at most 64 regions.
pub(crate) struct Frame {
    n: usize,
    kind: Kind,
    succ: Vec<Vec<FixedBitSet>>,
    masks: Option<Vec<Vec<u64>>>,
}

impl Frame {
    pub fn new(s: &RegionStructure) -> Frame {
        let n = s.len();
        let kind = s.kind();
        let succ: Vec<Vec<FixedBitSet>> = kind
            .relations()
            .iter()
            .map(|&r| {
                (0..n)
                    .map(|i| {
                        let mut b = FixedBitSet::with_capacity(n);
                        for j in 0..n {
                            if s.rel(i, j) == r {
                                b.insert(j);
                            }
                        }
                        b
                    })
                    .collect()
            })
            .collect();
        let masks = (n <= 64).then(|| {
            succ.iter()
                .map(|sets| sets.iter().map(|b| b.ones().fold(0u64, |m, j| m | 1 << j)).collect())
                .collect()
        });
        Frame {
            n,
            kind,
            succ,
            masks,
        }
    }

    fn rel_index(&self, r: BaseRelation) -> usize {
        self.kind.index_of(r).expect("compiled for this kind")
    }

    /// Extension of the root of `dag`.
    pub fn root_extension(&self, dag: &Dag, v: &Valuation) -> FixedBitSet {
        match &self.masks {
            Some(masks) => {
                let m = self.root_mask(dag, v, masks);
                let mut b = FixedBitSet::with_capacity(self.n);
                for i in (0..self.n).filter(|i| m >> i & 1 == 1) {
                    b.insert(i);
                }
                b
            }
            None => self.extensions(dag, v).swap_remove(dag.root),
        }
    }

    fn root_mask(&self, dag: &Dag, v: &Valuation, masks: &[Vec<u64>]) -> u64 {
        let n = self.n;
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut ext: Vec<u64> = Vec::with_capacity(dag.nodes.len());
        for node in &dag.nodes {
            let e = match *node {
                Node::Var(k) => v.get(&dag.vars[k]).map_or(0, |set| {
                    set.iter().filter(|&&i| i < n).fold(0, |m, &i| m | 1 << i)
                }),
                Node::True => all,
                Node::Not(a) => !ext[a] & all,
                Node::And(a, c) => ext[a] & ext[c],
                Node::Box(r, a) => {
                    let succ = &masks[self.rel_index(r)];
                    (0..n)
                        .filter(|&i| succ[i] & !ext[a] == 0)
                        .fold(0, |m, i| m | 1 << i)
                }
            };
            ext.push(e);
        }
        ext[dag.root]
    }

    /// Extension of every DAG node; the last computed entry belongs to the root.
    fn extensions(&self, dag: &Dag, v: &Valuation) -> Vec<FixedBitSet> {
        let n = self.n;
        let mut ext: Vec<FixedBitSet> = Vec::with_capacity(dag.nodes.len());
        for node in &dag.nodes {
            let e = match *node {
                Node::Var(k) => {
                    let mut b = FixedBitSet::with_capacity(n);
                    if let Some(set) = v.get(&dag.vars[k]) {
                        for &i in set.iter().filter(|&&i| i < n) {
                            b.insert(i);
                        }
                    }
                    b
                }
                Node::True => {
                    let mut b = FixedBitSet::with_capacity(n);
                    b.insert_range(..);
                    b
                }
                Node::Not(a) => {
                    let mut b = ext[a].clone();
                    b.toggle_range(..);
                    b
                }
                Node::And(a, c) => {
                    let mut b = ext[a].clone();
                    b.intersect_with(&ext[c]);
                    b
                }
                Node::Box(r, a) => {
                    let mut b = FixedBitSet::with_capacity(n);
                    let succ = &self.succ[self.rel_index(r)];
                    for (i, s) in succ.iter().enumerate() {
                        if s.is_subset(&ext[a]) {
                            b.insert(i);
                        }
                    }
                    b
                }
            };
            ext.push(e);
        }
        ext
    }
}

/// A formula compiled once for evaluation on many structures and valuations.
#[derive(Clone, Debug)]
pub struct Compiled {
    dag: Dag,
    kind: Kind,
}

impl Compiled {
    pub fn new(f: &Formula, kind: Kind) -> Result<Compiled, LogicError> {
        Ok(Compiled {
            dag: compile(f, kind)?,
            kind,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }
}

/// A structure prepared for evaluating many formulas and valuations.
pub struct Checker {
    frame: Frame,
    kind: Kind,
}

impl Checker {
    pub fn new(s: &RegionStructure) -> Checker {
        Checker {
            frame: Frame::new(s),
            kind: s.kind(),
        }
    }

    /// Same as [`extension`] for a precompiled formula.
    pub fn extension(&self, f: &Compiled, v: &Valuation) -> Result<FixedBitSet, LogicError> {
        if f.kind != self.kind {
            return Err(LogicError::KindMismatch(f.kind, self.kind));
        }
        Ok(self.frame.root_extension(&f.dag, v))
    }
}

/// Set of regions where `f` holds. Variables without a valuation are false everywhere.
pub fn extension(
    s: &RegionStructure,
    v: &Valuation,
    f: &Formula,
) -> Result<FixedBitSet, LogicError> {
    let dag = compile(f, s.kind())?;
    Ok(Frame::new(s).root_extension(&dag, v))
}

/// Truth of `f` at `region`.
pub fn check(
    s: &RegionStructure,
    v: &Valuation,
    region: usize,
    f: &Formula,
) -> Result<bool, LogicError> {
    if region >= s.len() {
        return Err(LogicError::UnknownRegion(region.to_string()));
    }
    Ok(extension(s, v, f)?.contains(region))
}

/// Truth of `f` at the region with the given name.
pub fn check_named(
    s: &RegionStructure,
    v: &Valuation,
    region: &str,
    f: &Formula,
) -> Result<bool, LogicError> {
    let i = s
        .index_of(region)
        .ok_or_else(|| LogicError::UnknownRegion(region.into()))?;
    check(s, v, i, f)
}

/// Whether `f` holds at every region.
pub fn valid_in(s: &RegionStructure, v: &Valuation, f: &Formula) -> Result<bool, LogicError> {
    Ok(extension(s, v, f)?.count_ones(..) == s.len())
}

/// First region where `f` holds.
pub fn sat_in(
    s: &RegionStructure,
    v: &Valuation,
    f: &Formula,
) -> Result<Option<usize>, LogicError> {
    Ok(extension(s, v, f)?.ones().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseRelation::*;
    use crate::logic::parse;

    fn two_dc() -> RegionStructure {
        RegionStructure::new(
            Kind::Rcc8,
            vec!["x".into(), "y".into()],
            vec![vec![Eq, Dc], vec![Dc, Eq]],
        )
        .unwrap()
    }

    #[test]
    fn basic_clauses() {
        let one = RegionStructure::new(Kind::Rcc8, vec!["x".into()], vec![vec![Eq]]).unwrap();
        let v = Valuation::new().with("p", [0]);
        assert!(check(&one, &v, 0, &parse("[eq]p", Kind::Rcc8).unwrap()).unwrap());
        assert!(!valid_in(&one, &v, &parse("<ppi>true", Kind::Rcc8).unwrap()).unwrap());
        assert!(valid_in(&one, &v, &Formula::True).unwrap());
        assert!(!check(&one, &v, 0, &parse("unknown", Kind::Rcc8).unwrap()).unwrap());
        assert!(check(&one, &v, 1, &Formula::True).is_err());
    }

    #[test]
    fn disconnected_pair_has_no_common_container() {
        let f = parse(
            "nom(p) & nom(q) & <u>(p & <dc>q) -> <u>(<ppi>p & <ppi>q)",
            Kind::Rcc8,
        )
        .unwrap();
        let s = two_dc();
        let v = Valuation::new().with("p", [0]).with("q", [1]);
        assert!(!valid_in(&s, &v, &f).unwrap());
        assert_eq!(
            sat_in(&s, &v, &parse("<dc>p", Kind::Rcc8).unwrap()).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn wrong_alphabet_is_an_error() {
        let s = two_dc();
        let f = Formula::box_rel(Dr, Formula::True);
        assert!(check(&s, &Valuation::new(), 0, &f).is_err());
    }
}
