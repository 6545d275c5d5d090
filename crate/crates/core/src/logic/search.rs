use std::collections::HashMap;

use varisat::{ExtendFormula, Lit, Solver};

use crate::algebra::{compose_in, BaseRelation, Kind, RelationSet};
use crate::solver::ConstraintNetwork;
use crate::structures::{RegionStructure, Valuation, MAX_ENUMERATION};

use super::ast::{Formula, Modality};
use super::eval::{compile, Dag, Frame, Node};
use super::LogicError;

/// Largest structure size [`bounded_sat`] accepts.
pub const MAX_SEARCH_REGIONS: usize = MAX_ENUMERATION;

/// A finite model with a region satisfying the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub structure: RegionStructure,
    pub valuation: Valuation,
    pub region: usize,
}

/// Finds the first model of `f` with at most `max_regions` regions.
///
/// Candidates are ordered by size, then by structure in enumeration order
/// (upper-triangle pairs in lexicographic order, relations in canonical
/// order), then by valuation of the formula's variables (sorted by name,
/// regions ascending, false before true), then by region. The first
/// candidate in this order is found with a SAT encoding of each size by
/// fixing choices greedily under assumptions.
pub fn bounded_sat(
    f: &Formula,
    kind: Kind,
    max_regions: usize,
) -> Result<Option<Witness>, LogicError> {
    if max_regions > MAX_SEARCH_REGIONS {
        return Err(LogicError::BoundExceeded(max_regions, MAX_SEARCH_REGIONS));
    }
    let dag = compile(f, kind)?;
    let mut vars: Vec<String> = dag.vars.clone();
    vars.sort();
    for n in 1..=max_regions {
        if let Some(w) = search_size(&dag, &vars, kind, n)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

struct Encoding {
    solver: Solver<'static>,
    n: usize,
    kind: Kind,
    truth: Lit,
    rel: HashMap<(usize, usize, BaseRelation), Lit>,
    val: HashMap<(String, usize), Lit>,
}

fn backend(e: varisat::solver::SolverError) -> LogicError {
    LogicError::Backend(e.to_string())
}

impl Encoding {
    fn new(kind: Kind, n: usize) -> Encoding {
        let mut solver = Solver::new();
        let truth = solver.new_lit();
        solver.add_clause(&[truth]);
        let mut enc = Encoding {
            solver,
            n,
            kind,
            truth,
            rel: HashMap::new(),
            val: HashMap::new(),
        };
        enc.encode_structure();
        enc
    }

    fn rel_lit(&self, i: usize, j: usize, r: BaseRelation) -> Lit {
        if i == j {
            return if r == BaseRelation::Eq {
                self.truth
            } else {
                !self.truth
            };
        }
        if r == BaseRelation::Eq {
            return !self.truth;
        }
        if i < j {
            self.rel[&(i, j, r)]
        } else {
            self.rel[&(j, i, r.converse())]
        }
    }

    fn encode_structure(&mut self) {
        let n = self.n;
        let rels: Vec<BaseRelation> = self.kind.non_eq().collect();
        for i in 0..n {
            for j in i + 1..n {
                let lits: Vec<Lit> = rels
                    .iter()
                    .map(|&r| {
                        let l = self.solver.new_lit();
                        self.rel.insert((i, j, r), l);
                        l
                    })
                    .collect();
                self.solver.add_clause(&lits);
                for a in 0..lits.len() {
                    for b in a + 1..lits.len() {
                        self.solver.add_clause(&[!lits[a], !lits[b]]);
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    for &r1 in &rels {
                        for &r2 in &rels {
                            let comp = compose_in(self.kind, r1, r2);
                            if comp == RelationSet::full(self.kind) {
                                continue;
                            }
                            let mut clause = vec![!self.rel_lit(i, j, r1), !self.rel_lit(j, k, r2)];
                            clause.extend(
                                comp.iter()
                                    .filter(|&r| r != BaseRelation::Eq)
                                    .map(|r| self.rel_lit(i, k, r)),
                            );
                            self.solver.add_clause(&clause);
                        }
                    }
                }
            }
        }
    }

    fn val_lit(&mut self, var: &str, i: usize) -> Lit {
        if let Some(&l) = self.val.get(&(var.to_string(), i)) {
            return l;
        }
        let l = self.solver.new_lit();
        self.val.insert((var.to_string(), i), l);
        l
    }

    fn and_lit(&mut self, xs: &[Lit]) -> Lit {
        match xs {
            [] => self.truth,
            [x] => *x,
            _ => {
                let e = self.solver.new_lit();
                for &x in xs {
                    self.solver.add_clause(&[!e, x]);
                }
                let mut clause: Vec<Lit> = xs.iter().map(|&x| !x).collect();
                clause.push(e);
                self.solver.add_clause(&clause);
                e
            }
        }
    }

    fn or_lit(&mut self, xs: &[Lit]) -> Lit {
        let neg: Vec<Lit> = xs.iter().map(|&x| !x).collect();
        !self.and_lit(&neg)
    }

    /// Literal per DAG node and region.
    fn encode_formula(&mut self, dag: &Dag) -> Vec<Vec<Lit>> {
        let n = self.n;
        let mut lits: Vec<Vec<Lit>> = Vec::with_capacity(dag.nodes.len());
        for node in &dag.nodes {
            let row: Vec<Lit> = match *node {
                Node::Var(k) => (0..n).map(|i| self.val_lit(&dag.vars[k], i)).collect(),
                Node::True => vec![self.truth; n],
                Node::Not(a) => lits[a].iter().map(|&l| !l).collect(),
                Node::And(a, b) => (0..n)
                    .map(|i| {
                        let pair = [lits[a][i], lits[b][i]];
                        self.and_lit(&pair)
                    })
                    .collect(),
                Node::Box(BaseRelation::Eq, a) => lits[a].clone(),
                Node::Box(r, a) => (0..n)
                    .map(|i| {
                        let terms: Vec<Lit> = (0..n)
                            .filter(|&j| j != i)
                            .map(|j| {
                                let t = [!self.rel_lit(i, j, r), lits[a][j]];
                                self.or_lit(&t)
                            })
                            .collect();
                        self.and_lit(&terms)
                    })
                    .collect(),
            };
            lits.push(row);
        }
        lits
    }

    fn solve(&mut self, assumptions: &[Lit]) -> Result<bool, LogicError> {
        self.solver.assume(assumptions);
        self.solver.solve().map_err(backend)
    }
}

fn search_size(
    dag: &Dag,
    vars: &[String],
    kind: Kind,
    n: usize,
) -> Result<Option<Witness>, LogicError> {
    let mut enc = Encoding::new(kind, n);
    let lits = enc.encode_formula(dag);
    let root = enc.or_lit(&lits[dag.root].clone());
    enc.solver.add_clause(&[root]);
    if !enc.solve(&[])? {
        return Ok(None);
    }
    let mut fixed: Vec<Lit> = Vec::new();
    let rels: Vec<BaseRelation> = kind.non_eq().collect();
    let mut matrix = vec![vec![BaseRelation::Eq; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut chosen = None;
            for (idx, &r) in rels.iter().enumerate() {
                let l = enc.rel_lit(i, j, r);
                fixed.push(l);
                if idx + 1 == rels.len() || enc.solve(&fixed)? {
                    chosen = Some(r);
                    break;
                }
                fixed.pop();
            }
            let r = chosen.expect("some relation is feasible");
            matrix[i][j] = r;
            matrix[j][i] = r.converse();
        }
    }
    let mut valuation = Valuation::new();
    for v in vars {
        for i in 0..n {
            let l = enc.val_lit(v, i);
            fixed.push(!l);
            if enc.solve(&fixed)? {
                continue;
            }
            fixed.pop();
            fixed.push(l);
            valuation.add(v, i);
        }
        if valuation.get(v).is_none() {
            valuation.set(v, []);
        }
    }
    let names = (1..=n).map(|i| format!("r{i}")).collect();
    let structure = RegionStructure::new(kind, names, matrix).expect("encoding enforces the table");
    let f_region = {
        let frame = Frame::new(&structure);
        frame.root_extension(dag, &valuation).ones().next()
    };
    let region = f_region.expect("the encoding guarantees a satisfying region");
    Ok(Some(Witness {
        structure,
        valuation,
        region,
    }))
}

/// Encodes a network as a formula satisfiable exactly when the network is:
/// one nominal `p_x` per variable and, per constraint, `◇_u(p_x ∧ ⟨r⟩p_y)`
/// with a disjunction of diamonds for relation sets.
pub fn network_to_formula(net: &ConstraintNetwork) -> Formula {
    let p = |i: usize| Formula::var(format!("p_{}", net.vars()[i]));
    let constraints = net.constraints().into_iter().map(|(i, j, s)| {
        let body = Formula::disj(s.iter().map(|r| Formula::diamond(Modality::Rel(r), p(j))));
        Formula::diamond(Modality::U, Formula::and(p(i), body))
    });
    let noms = (0..net.len()).map(|i| Formula::nom(p(i)));
    Formula::conj(constraints.chain(noms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    #[test]
    fn examples() {
        let w = bounded_sat(&Formula::var("p"), Kind::Rcc8, 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.structure.len(), 1);
        let f = parse("p & [d]!p & <u>(q & !p)", Kind::Rcc8).unwrap();
        let w = bounded_sat(&f, Kind::Rcc8, 4).unwrap().unwrap();
        assert_eq!(w.structure.len(), 2);
        assert_eq!(w.structure.rel(0, 1), BaseRelation::Dc);
        let f = parse("[pp]false & <pp>true", Kind::Rcc8).unwrap();
        assert_eq!(bounded_sat(&f, Kind::Rcc8, 4).unwrap(), None);
        assert!(bounded_sat(&f, Kind::Rcc8, 7).is_err());
    }

    #[test]
    fn network_encoding() {
        let mut n = ConstraintNetwork::rcc8(&["x", "y"]).unwrap();
        n.constrain_named("x", "y", &[BaseRelation::Ec]).unwrap();
        let f = network_to_formula(&n);
        assert_eq!(
            f,
            parse("<u>(p_x & <ec>p_y) & nom(p_x) & nom(p_y)", Kind::Rcc8).unwrap()
        );
        let one = ConstraintNetwork::rcc8(&["x1"]).unwrap();
        assert_eq!(
            network_to_formula(&one),
            parse("nom(p_x1)", Kind::Rcc8).unwrap()
        );
    }
}
