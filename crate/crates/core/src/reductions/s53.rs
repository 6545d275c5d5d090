//! Products of three S5 frames and their encoding into RCC5 region models.
//!
//! A triple `(w1,w2,w3)` is represented by the least upper bound of three
//! pairwise discrete atoms, one per coordinate. [`model_from_s53`] builds
//! the structure abstractly as sets of atoms under set semantics: the only
//! facts the encoding uses are the RCC5 relations among these unions, and
//! for unions of pairwise discrete regions those relations are determined
//! by which atoms each union contains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{BaseRelation, Kind};
use crate::logic::{Formula, Modality};
use crate::structures::{powerset_rcc5, RegionModel, Valuation};

use super::ReductionError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum S53 {
    Var(String),
    Not(Arc<S53>),
    And(Arc<S53>, Arc<S53>),
    /// Diamond along coordinate 1, 2 or 3.
    Dia(u8, Arc<S53>),
}

impl S53 {
    pub fn var(name: &str) -> S53 {
        S53::Var(name.into())
    }

    pub fn not(a: S53) -> S53 {
        S53::Not(Arc::new(a))
    }

    pub fn and(a: S53, b: S53) -> S53 {
        S53::And(Arc::new(a), Arc::new(b))
    }

    pub fn dia(i: u8, a: S53) -> S53 {
        assert!((1..=3).contains(&i), "coordinate must be 1, 2 or 3");
        S53::Dia(i, Arc::new(a))
    }

    pub fn depth(&self) -> usize {
        match self {
            S53::Var(_) => 0,
            S53::Not(a) => a.depth(),
            S53::And(a, b) => a.depth().max(b.depth()),
            S53::Dia(_, a) => 1 + a.depth(),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            S53::Var(v) => {
                out.insert(v.clone());
            }
            S53::Not(a) | S53::Dia(_, a) => a.collect_vars(out),
            S53::And(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for S53 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S53::Var(v) => f.write_str(v),
            S53::Not(a) => write!(f, "!{}", Unary(a)),
            S53::And(a, b) => write!(f, "{} & {}", Unary(a), Unary(b)),
            S53::Dia(i, a) => write!(f, "<{i}>{}", Unary(a)),
        }
    }
}

struct Unary<'a>(&'a S53);

impl fmt::Display for Unary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            S53::And(..) => write!(f, "({})", self.0),
            other => write!(f, "{other}"),
        }
    }
}

/// Parses `p`, `!φ`, `φ & ψ`, `<1>φ`, `<2>φ`, `<3>φ` and parentheses.
pub fn parse_s53(text: &str) -> Result<S53, ReductionError> {
    let mut p = S53Parser { s: text.as_bytes(), pos: 0 };
    let f = p.conj()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct S53Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl S53Parser<'_> {
    fn err(&self, msg: &str) -> ReductionError {
        ReductionError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn conj(&mut self) -> Result<S53, ReductionError> {
        let mut f = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            f = S53::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<S53, ReductionError> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(S53::not(self.unary()?))
            }
            Some(b'<') => {
                let digit = self.s.get(self.pos + 1).copied();
                let close = self.s.get(self.pos + 2).copied();
                match (digit, close) {
                    (Some(d @ b'1'..=b'3'), Some(b'>')) => {
                        self.pos += 3;
                        Ok(S53::dia(d - b'0', self.unary()?))
                    }
                    _ => Err(self.err("expected <1>, <2> or <3>")),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.conj()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                Ok(S53::var(name))
            }
            Some(_) => Err(self.err("expected a formula")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub type World = (usize, usize, usize);

/// Product model `W1 × W2 × W3` with variable extensions over triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S53Model {
    pub sizes: [usize; 3],
    pub valuation: BTreeMap<String, BTreeSet<World>>,
}

impl S53Model {
    pub fn new(sizes: [usize; 3]) -> Result<Self, ReductionError> {
        if sizes.contains(&0) {
            return Err(ReductionError::EmptyCoordinate);
        }
        Ok(S53Model { sizes, valuation: BTreeMap::new() })
    }

    pub fn set(&mut self, var: &str, worlds: impl IntoIterator<Item = World>) -> Result<(), ReductionError> {
        let set: BTreeSet<World> = worlds.into_iter().collect();
        for &w in &set {
            self.check_world(w)?;
        }
        self.valuation.insert(var.into(), set);
        Ok(())
    }

    pub fn worlds(&self) -> Vec<World> {
        let [a, b, c] = self.sizes;
        let mut out = Vec::with_capacity(a * b * c);
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    fn check_world(&self, w: World) -> Result<(), ReductionError> {
        let [a, b, c] = self.sizes;
        if w.0 < a && w.1 < b && w.2 < c {
            Ok(())
        } else {
            Err(ReductionError::WorldOutOfRange(w))
        }
    }

    fn holds(&self, f: &S53, w: World) -> bool {
        match f {
            S53::Var(v) => self.valuation.get(v).is_some_and(|s| s.contains(&w)),
            S53::Not(a) => !self.holds(a, w),
            S53::And(a, b) => self.holds(a, w) && self.holds(b, w),
            S53::Dia(i, a) => {
                let (x, y, z) = w;
                match i {
                    1 => (0..self.sizes[0]).any(|u| self.holds(a, (u, y, z))),
                    2 => (0..self.sizes[1]).any(|u| self.holds(a, (x, u, z))),
                    _ => (0..self.sizes[2]).any(|u| self.holds(a, (x, y, u))),
                }
            }
        }
    }
}

/// Truth of `f` at world `w`.
pub fn s53_check(model: &S53Model, w: World, f: &S53) -> Result<bool, ReductionError> {
    model.check_world(w)?;
    Ok(model.holds(f, w))
}

/// Auxiliary variables of the encoding; S5³ formulas must not use them.
pub const RESERVED: [&str; 7] = ["a1", "a2", "a3", "d", "d12", "d13", "d23"];

fn v(name: &str) -> Formula {
    Formula::var(name)
}

fn dia(r: BaseRelation, f: Formula) -> Formula {
    Formula::dia_rel(r, f)
}

fn bx(r: BaseRelation, f: Formula) -> Formula {
    Formula::box_rel(r, f)
}

/// The RCC5 formula simulating `f` at regions marked `d`.
pub fn sharp_translate(f: &S53) -> Result<Formula, ReductionError> {
    if let Some(bad) = f.vars().into_iter().find(|x| RESERVED.contains(&x.as_str())) {
        return Err(ReductionError::ReservedVariable(bad));
    }
    Ok(sharp(f))
}

fn sharp(f: &S53) -> Formula {
    use BaseRelation::{Pp, Ppi};
    match f {
        S53::Var(p) => v(p),
        S53::Not(a) => Formula::and(v("d"), Formula::not(sharp(a))),
        S53::And(a, b) => Formula::and(sharp(a), sharp(b)),
        S53::Dia(i, a) => {
            let pair = match i {
                1 => "d23",
                2 => "d13",
                _ => "d12",
            };
            let inner = dia(Pp, Formula::and(v("d"), sharp(a)));
            dia(Ppi, Formula::and(v(pair), inner))
        }
    }
}

/// Conjuncts that make the `a_i` regions pairwise discrete atoms of three
/// non-empty sorts and define `d` and `d_ij` as the least regions with
/// atoms of all three sorts, or of sorts `i` and `j`.
pub fn chi_groups_rcc5() -> Vec<Formula> {
    use BaseRelation::{Po, Pp, Ppi};
    let a = |i: usize| v(&format!("a{i}"));
    let discrete = Formula::conj((1..=3).map(|i| {
        let body = Formula::conj(
            (1..=3).map(|j| Formula::conj([bx(Pp, Formula::not(a(j))), bx(Ppi, Formula::not(a(j))), bx(Po, Formula::not(a(j)))])),
        );
        Formula::implies(a(i), body)
    }));
    let sorts = Formula::conj([
        Formula::implies(a(1), Formula::not(a(2))),
        Formula::implies(a(1), Formula::not(a(3))),
        Formula::implies(a(2), Formula::not(a(3))),
    ]);
    let nonempty = Formula::conj((1..=3).map(|i| Formula::diamond(Modality::U, a(i))));
    let least = |ids: &[usize]| {
        let has_all = Formula::conj(ids.iter().map(|&i| dia(Ppi, a(i))));
        Formula::and(has_all.clone(), Formula::not(dia(Ppi, has_all)))
    };
    let d = Formula::iff(v("d"), least(&[1, 2, 3]));
    let pairs = Formula::conj(
        [(1, 2), (1, 3), (2, 3)]
            .into_iter()
            .map(|(i, j)| Formula::iff(v(&format!("d{i}{j}")), least(&[i, j]))),
    );
    vec![discrete, sorts, nonempty, d, pairs]
}

pub fn chi_rcc5() -> Formula {
    Formula::conj(chi_groups_rcc5())
}

/// `□_u χ ∧ d ∧ f♯`: satisfiable over RCC5 structures with least upper
/// bounds iff `f` is satisfiable in a product model.
pub fn s53_reduction(f: &S53) -> Result<Formula, ReductionError> {
    Ok(Formula::conj([
        Formula::boxed(Modality::U, chi_rcc5()),
        v("d"),
        sharp_translate(f)?,
    ]))
}

/// RCC5 model of sets of atoms with the triple region of each world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S53Embedding {
    pub model: RegionModel,
    pub triple: BTreeMap<World, usize>,
}

/// Atoms `W1 ⊎ W2 ⊎ W3`, all unions of two atoms of different sorts, and
/// all unions of three atoms of pairwise different sorts.
pub fn model_from_s53(w: &S53Model) -> Result<S53Embedding, ReductionError> {
    if w.sizes.contains(&0) {
        return Err(ReductionError::EmptyCoordinate);
    }
    let atom = |sort: usize, i: usize| (sort, i);
    let name = |set: &BTreeSet<(usize, usize)>| {
        set.iter()
            .map(|(s, i)| format!("w{}.{i}", s + 1))
            .collect::<Vec<_>>()
            .join("+")
    };
    let mut sets: Vec<BTreeSet<(usize, usize)>> = Vec::new();
    let mut valuation = Valuation::new();
    for sort in 0..3 {
        for i in 0..w.sizes[sort] {
            valuation.add(&format!("a{}", sort + 1), sets.len());
            sets.push([atom(sort, i)].into());
        }
    }
    for (s, t) in [(0, 1), (0, 2), (1, 2)] {
        for i in 0..w.sizes[s] {
            for j in 0..w.sizes[t] {
                valuation.add(&format!("d{}{}", s + 1, t + 1), sets.len());
                sets.push([atom(s, i), atom(t, j)].into());
            }
        }
    }
    let mut triple = BTreeMap::new();
    for world in w.worlds() {
        let (x, y, z) = world;
        let id = sets.len();
        triple.insert(world, id);
        valuation.add("d", id);
        for (var, ext) in &w.valuation {
            if ext.contains(&world) {
                valuation.add(var, id);
            }
        }
        sets.push([atom(0, x), atom(1, y), atom(2, z)].into());
    }
    for var in RESERVED.iter().map(|s| s.to_string()).chain(w.valuation.keys().cloned()) {
        if valuation.get(&var).is_none() {
            valuation.set(&var, []);
        }
    }
    let names = sets.iter().map(name).collect();
    let structure = powerset_rcc5(&sets)?.with_names(names)?;
    debug_assert_eq!(structure.kind(), Kind::Rcc5);
    Ok(S53Embedding { model: RegionModel::new(structure, valuation), triple })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{check, parse, valid_in};

    fn p(s: &str) -> S53 {
        parse_s53(s).unwrap()
    }

    #[test]
    fn semantics() {
        let mut m = S53Model::new([1, 1, 1]).unwrap();
        m.set("p", [(0, 0, 0)]).unwrap();
        assert!(s53_check(&m, (0, 0, 0), &p("<1>p")).unwrap());
        assert!(!s53_check(&m, (0, 0, 0), &p("!p")).unwrap());
        assert!(s53_check(&m, (1, 0, 0), &p("p")).is_err());
        assert!(S53Model::new([0, 1, 1]).is_err());
    }

    #[test]
    fn translation_clauses() {
        let f = sharp_translate(&p("<3>p")).unwrap();
        assert_eq!(f, parse("<ppi>(d12 & <pp>(d & p))", Kind::Rcc5).unwrap());
        assert_eq!(sharp_translate(&p("!p")).unwrap(), parse("d & !p", Kind::Rcc5).unwrap());
        assert_eq!(chi_groups_rcc5().len(), 5);
        assert!(sharp_translate(&p("d & p")).is_err());
    }

    #[test]
    fn printing_round_trips() {
        for s in ["p", "!p", "p & q", "<1>(p & !<2>q)", "!(p & q) & (r & s)", "<3><1>!p"] {
            assert_eq!(p(&p(s).to_string()), p(s), "{s}");
        }
        assert!(parse_s53("<4>p").is_err());
        assert!(parse_s53("p &").is_err());
    }

    #[test]
    fn smallest_embedding() {
        let mut m = S53Model::new([1, 1, 1]).unwrap();
        m.set("p", [(0, 0, 0)]).unwrap();
        let e = model_from_s53(&m).unwrap();
        assert_eq!(e.model.structure.len(), 7);
        let s = &e.model.structure;
        let vv = &e.model.valuation;
        assert!(valid_in(s, vv, &chi_rcc5()).unwrap());
        let r = e.triple[&(0, 0, 0)];
        let f = s53_reduction(&p("<1>p")).unwrap();
        assert!(check(s, vv, r, &f).unwrap());
    }
}
