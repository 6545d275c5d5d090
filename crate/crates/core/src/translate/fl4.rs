//! Translation of RCC8 formulas into first-order sentences over `(ℚ, <)`
//! whose individuals are box corner coordinates.
//!
//! Evaluation is over the finite set of coordinates that occur in the
//! model. This is sound for translated sentences because every quantified
//! tuple is guarded by `exists`, which only holds of tuples encoding model
//! regions, so tuples outside the model never change a quantifier's value.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::algebra::{BaseRelation, Kind};
use crate::geometry::{HyperRect, IntervalUnion};
use crate::logic::{expand, Formula, Modality};
use crate::structures::Valuation;
use crate::Rational;

use super::TranslateError;

/// Which of the two coordinate tuples a variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tuple {
    X,
    Y,
}

impl Tuple {
    fn other(self) -> Tuple {
        match self {
            Tuple::X => Tuple::Y,
            Tuple::Y => Tuple::X,
        }
    }

    fn slot(self) -> usize {
        match self {
            Tuple::X => 0,
            Tuple::Y => 1,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Tuple::X => "x",
            Tuple::Y => "y",
        }
    }
}

/// Coordinate variable `x_{index+1}` or `y_{index+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CVar {
    pub tuple: Tuple,
    pub index: usize,
}

impl fmt::Display for CVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tuple.prefix(), self.index + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fl4 {
    True,
    Less(CVar, CVar),
    Equal(CVar, CVar),
    /// Lower corner strictly below upper corner in every dimension.
    Rect(Tuple),
    /// The tuple encodes a region of the model.
    Exists(Tuple),
    Pred(String, Tuple),
    Not(Box<Fl4>),
    And(Vec<Fl4>),
    Or(Vec<Fl4>),
    Implies(Box<Fl4>, Box<Fl4>),
    ExistsQ(Tuple, Box<Fl4>),
    ForallQ(Tuple, Box<Fl4>),
}

/// A translated sentence together with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fl4Sentence {
    pub dims: usize,
    pub body: Fl4,
}

impl Fl4Sentence {
    pub fn to_sexp(&self) -> String {
        let mut s = String::new();
        write_fl4(&mut s, &self.body, self.dims);
        s
    }
}

impl fmt::Display for Fl4Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexp())
    }
}

fn tuple_vars(t: Tuple, dims: usize) -> String {
    (0..2 * dims)
        .map(|i| CVar { tuple: t, index: i }.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_fl4(out: &mut String, f: &Fl4, dims: usize) {
    use std::fmt::Write;
    match f {
        Fl4::True => out.push_str("true"),
        Fl4::Less(a, b) => write!(out, "(< {a} {b})").expect("string"),
        Fl4::Equal(a, b) => write!(out, "(= {a} {b})").expect("string"),
        Fl4::Rect(t) => write!(out, "(rect {})", tuple_vars(*t, dims)).expect("string"),
        Fl4::Exists(t) => write!(out, "(region {})", tuple_vars(*t, dims)).expect("string"),
        Fl4::Pred(p, t) => write!(out, "(P_{p} {})", tuple_vars(*t, dims)).expect("string"),
        Fl4::Not(a) => {
            out.push_str("(not ");
            write_fl4(out, a, dims);
            out.push(')');
        }
        Fl4::And(xs) | Fl4::Or(xs) => {
            out.push_str(if matches!(f, Fl4::And(_)) {
                "(and"
            } else {
                "(or"
            });
            for x in xs {
                out.push(' ');
                write_fl4(out, x, dims);
            }
            out.push(')');
        }
        Fl4::Implies(a, b) => {
            out.push_str("(-> ");
            write_fl4(out, a, dims);
            out.push(' ');
            write_fl4(out, b, dims);
            out.push(')');
        }
        Fl4::ExistsQ(t, a) | Fl4::ForallQ(t, a) => {
            let q = if matches!(f, Fl4::ExistsQ(..)) {
                "exists"
            } else {
                "forall"
            };
            write!(out, "({q} ({}) ", tuple_vars(*t, dims)).expect("string");
            write_fl4(out, a, dims);
            out.push(')');
        }
    }
}

fn lo(t: Tuple, d: usize) -> CVar {
    CVar {
        tuple: t,
        index: 2 * d,
    }
}

fn hi(t: Tuple, d: usize) -> CVar {
    CVar {
        tuple: t,
        index: 2 * d + 1,
    }
}

fn le(a: CVar, b: CVar) -> Fl4 {
    Fl4::Not(Box::new(Fl4::Less(b, a)))
}

fn not(a: Fl4) -> Fl4 {
    Fl4::Not(Box::new(a))
}

fn per_dim(dims: usize, f: impl Fn(usize) -> Vec<Fl4>) -> Fl4 {
    Fl4::And((0..dims).flat_map(f).collect())
}

/// The closed boxes share a point.
fn meet(a: Tuple, b: Tuple, dims: usize) -> Fl4 {
    per_dim(dims, |d| {
        vec![le(lo(a, d), hi(b, d)), le(lo(b, d), hi(a, d))]
    })
}

/// The open interiors share a point.
fn interiors_meet(a: Tuple, b: Tuple, dims: usize) -> Fl4 {
    per_dim(dims, |d| {
        vec![Fl4::Less(lo(a, d), hi(b, d)), Fl4::Less(lo(b, d), hi(a, d))]
    })
}

fn subset(a: Tuple, b: Tuple, dims: usize) -> Fl4 {
    per_dim(dims, |d| {
        vec![le(lo(b, d), lo(a, d)), le(hi(a, d), hi(b, d))]
    })
}

fn subset_interior(a: Tuple, b: Tuple, dims: usize) -> Fl4 {
    per_dim(dims, |d| {
        vec![Fl4::Less(lo(b, d), lo(a, d)), Fl4::Less(hi(a, d), hi(b, d))]
    })
}

fn equal(a: Tuple, b: Tuple, dims: usize) -> Fl4 {
    per_dim(dims, |d| {
        vec![
            Fl4::Equal(lo(a, d), lo(b, d)),
            Fl4::Equal(hi(a, d), hi(b, d)),
        ]
    })
}

/// Order formula for `r` between the boxes encoded by tuples `a` and `b`,
/// assembled from per-dimension comparisons of corner coordinates.
pub fn phi_r(r: BaseRelation, dims: usize, a: Tuple, b: Tuple) -> Result<Fl4, TranslateError> {
    use BaseRelation::*;
    let f = match r {
        Dc => not(meet(a, b, dims)),
        Ec => Fl4::And(vec![meet(a, b, dims), not(interiors_meet(a, b, dims))]),
        Po => Fl4::And(vec![
            interiors_meet(a, b, dims),
            not(subset(a, b, dims)),
            not(subset(b, a, dims)),
        ]),
        Eq => equal(a, b, dims),
        Tpp => Fl4::And(vec![
            subset(a, b, dims),
            not(subset_interior(a, b, dims)),
            not(equal(a, b, dims)),
        ]),
        Ntpp => Fl4::And(vec![subset_interior(a, b, dims), not(equal(a, b, dims))]),
        Tppi => phi_r(Tpp, dims, b, a)?,
        Ntppi => phi_r(Ntpp, dims, b, a)?,
        other => return Err(TranslateError::WrongAlphabet(other, Kind::Rcc8)),
    };
    Ok(f)
}

fn check_dims(dims: usize) -> Result<(), TranslateError> {
    if dims == 1 || dims == 2 {
        Ok(())
    } else {
        Err(TranslateError::UnsupportedDimension(dims))
    }
}

/// `∀x̄(rect(x̄) ∧ exists(x̄) → φ^s)`: true iff `φ` holds at every region.
pub fn modal_to_fl4(f: &Formula, dims: usize) -> Result<Fl4Sentence, TranslateError> {
    let local = fl4_local(f, dims)?;
    let guard = Fl4::And(vec![Fl4::Rect(Tuple::X), Fl4::Exists(Tuple::X)]);
    Ok(Fl4Sentence {
        dims,
        body: Fl4::ForallQ(
            Tuple::X,
            Box::new(Fl4::Implies(Box::new(guard), Box::new(local.body))),
        ),
    })
}

/// The translation `φ^s` with free tuple `x̄`.
pub fn fl4_local(f: &Formula, dims: usize) -> Result<Fl4Sentence, TranslateError> {
    check_dims(dims)?;
    let core = expand(f, Kind::Rcc8)?;
    Ok(Fl4Sentence {
        dims,
        body: s_tr(&core, Tuple::X, dims)?,
    })
}

fn here(t: Tuple) -> Vec<Fl4> {
    vec![Fl4::Rect(t), Fl4::Exists(t)]
}

fn s_tr(f: &Formula, t: Tuple, dims: usize) -> Result<Fl4, TranslateError> {
    Ok(match f {
        Formula::Var(p) => {
            let mut v = here(t);
            v.push(Fl4::Pred(p.clone(), t));
            Fl4::And(v)
        }
        Formula::True => Fl4::And(here(t)),
        Formula::And(a, b) => Fl4::And(vec![s_tr(a, t, dims)?, s_tr(b, t, dims)?]),
        Formula::Not(a) => {
            let mut v = here(t);
            v.push(not(s_tr(a, t, dims)?));
            Fl4::And(v)
        }
        // [r]ψ is read as ¬⟨r⟩¬ψ and both use the displayed clauses.
        Formula::Box(Modality::Rel(r), a) => {
            let neg_a = Formula::Not(a.clone());
            let mut v = here(t);
            v.push(not(diamond(*r, &neg_a, t, dims)?));
            Fl4::And(v)
        }
        other => unreachable!("expanded formula contains sugar: {other:?}"),
    })
}

fn diamond(r: BaseRelation, a: &Formula, t: Tuple, dims: usize) -> Result<Fl4, TranslateError> {
    let u = t.other();
    let mut v = here(t);
    v.push(Fl4::ExistsQ(
        u,
        Box::new(Fl4::And(vec![phi_r(r, dims, t, u)?, s_tr(a, u, dims)?])),
    ));
    Ok(Fl4::And(v))
}

/// Finite model: one coordinate tuple per region plus predicate extensions.
#[derive(Clone, Debug)]
pub struct Fl4Model {
    dims: usize,
    regions: Vec<Vec<Rational>>,
    by_coords: HashMap<Vec<Rational>, usize>,
    preds: BTreeMap<String, BTreeSet<usize>>,
    domain: Vec<Rational>,
}

impl Fl4Model {
    pub fn from_rects(
        rects: &[HyperRect<Rational>],
        v: &Valuation,
    ) -> Result<Fl4Model, TranslateError> {
        let dims = rects.first().map_or(1, |r| r.dimension());
        check_dims(dims)?;
        let mut coords = Vec::new();
        for r in rects {
            if r.dimension() != dims {
                return Err(TranslateError::DimensionMismatch);
            }
            coords.push(r.dims().iter().flat_map(|(a, b)| [*a, *b]).collect());
        }
        Fl4Model::new(dims, coords, v)
    }

    pub fn from_intervals(
        ivs: &[IntervalUnion<Rational>],
        v: &Valuation,
    ) -> Result<Fl4Model, TranslateError> {
        let mut coords = Vec::new();
        for (i, iv) in ivs.iter().enumerate() {
            match iv.pieces() {
                [(a, b)] => coords.push(vec![*a, *b]),
                _ => return Err(TranslateError::NotABox(i)),
            }
        }
        Fl4Model::new(1, coords, v)
    }

    fn new(
        dims: usize,
        regions: Vec<Vec<Rational>>,
        v: &Valuation,
    ) -> Result<Fl4Model, TranslateError> {
        let mut by_coords = HashMap::new();
        for (i, c) in regions.iter().enumerate() {
            if by_coords.insert(c.clone(), i).is_some() {
                return Err(TranslateError::DuplicateRegion(i));
            }
        }
        let domain: BTreeSet<Rational> = regions.iter().flatten().copied().collect();
        let preds = v.iter().map(|(k, s)| (k.clone(), s.clone())).collect();
        Ok(Fl4Model {
            dims,
            regions,
            by_coords,
            preds,
            domain: domain.into_iter().collect(),
        })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }
}

type Env = [Vec<Option<Rational>>; 2];

fn lookup(env: &Env, v: CVar) -> Rational {
    env[v.tuple.slot()][v.index].expect("translated formulas only use bound coordinates")
}

fn tuple_of(env: &Env, t: Tuple) -> Vec<Rational> {
    env[t.slot()]
        .iter()
        .map(|c| c.expect("bound tuple"))
        .collect()
}

/// Whether `f` (flattened through conjunctions) has `exists(t)` as a conjunct.
fn guarded_by(f: &Fl4, t: Tuple) -> bool {
    match f {
        Fl4::Exists(u) => *u == t,
        Fl4::And(xs) => xs.iter().any(|x| guarded_by(x, t)),
        _ => false,
    }
}

impl Fl4Model {
    fn eval(&self, f: &Fl4, env: &mut Env) -> bool {
        match f {
            Fl4::True => true,
            Fl4::Less(a, b) => lookup(env, *a) < lookup(env, *b),
            Fl4::Equal(a, b) => lookup(env, *a) == lookup(env, *b),
            Fl4::Rect(t) => (0..self.dims).all(|d| lookup(env, lo(*t, d)) < lookup(env, hi(*t, d))),
            Fl4::Exists(t) => self.by_coords.contains_key(&tuple_of(env, *t)),
            Fl4::Pred(p, t) => match self.by_coords.get(&tuple_of(env, *t)) {
                Some(i) => self.preds.get(p).is_some_and(|s| s.contains(i)),
                None => false,
            },
            Fl4::Not(a) => !self.eval(a, env),
            Fl4::And(xs) => xs.iter().all(|x| self.eval(x, env)),
            Fl4::Or(xs) => xs.iter().any(|x| self.eval(x, env)),
            Fl4::Implies(a, b) => !self.eval(a, env) || self.eval(b, env),
            Fl4::ExistsQ(t, body) => {
                let guarded = guarded_by(body, *t);
                self.quantify(*t, guarded, env, &mut |m, env| m.eval(body, env))
            }
            Fl4::ForallQ(t, body) => {
                let guarded = matches!(&**body, Fl4::Implies(g, _) if guarded_by(g, *t));
                !self.quantify(*t, guarded, env, &mut |m, env| !m.eval(body, env))
            }
        }
    }

    /// Whether some value of tuple `t` satisfies `pred`. Guarded quantifiers
    /// only range over model regions.
    fn quantify(
        &self,
        t: Tuple,
        guarded: bool,
        env: &mut Env,
        pred: &mut dyn FnMut(&Fl4Model, &mut Env) -> bool,
    ) -> bool {
        let saved = env[t.slot()].clone();
        let mut found = false;
        if guarded {
            for c in &self.regions {
                env[t.slot()] = c.iter().map(|x| Some(*x)).collect();
                if pred(self, env) {
                    found = true;
                    break;
                }
            }
        } else {
            let k = 2 * self.dims;
            let m = self.domain.len();
            let total = m.checked_pow(k as u32).unwrap_or(usize::MAX);
            for code in 0..total {
                let mut c = code;
                env[t.slot()] = (0..k)
                    .map(|_| {
                        let v = self.domain[c % m];
                        c /= m;
                        Some(v)
                    })
                    .collect();
                if pred(self, env) {
                    found = true;
                    break;
                }
            }
        }
        env[t.slot()] = saved;
        found
    }

    fn empty_env(&self) -> Env {
        [vec![None; 2 * self.dims], vec![None; 2 * self.dims]]
    }
}

/// Truth of a translated sentence in the model.
pub fn eval_fl4(model: &Fl4Model, s: &Fl4Sentence) -> Result<bool, TranslateError> {
    if s.dims != model.dims {
        return Err(TranslateError::DimensionMismatch);
    }
    let mut env = model.empty_env();
    Ok(model.eval(&s.body, &mut env))
}

/// Truth of `φ^s` with `x̄` bound to the coordinates of a model region.
pub fn eval_fl4_at(
    model: &Fl4Model,
    region: usize,
    s: &Fl4Sentence,
) -> Result<bool, TranslateError> {
    if s.dims != model.dims {
        return Err(TranslateError::DimensionMismatch);
    }
    let coords = model
        .regions
        .get(region)
        .ok_or(TranslateError::UnknownRegion(region))?;
    let mut env = model.empty_env();
    env[0] = coords.iter().map(|c| Some(*c)).collect();
    Ok(model.eval(&s.body, &mut env))
}

/// Truth of `φ_r(ā, b̄)` for explicit corner coordinates.
pub fn phi_r_holds(
    r: BaseRelation,
    a: &[Rational],
    b: &[Rational],
) -> Result<bool, TranslateError> {
    if a.len() != b.len() || a.len() % 2 != 0 {
        return Err(TranslateError::DimensionMismatch);
    }
    let dims = a.len() / 2;
    check_dims(dims)?;
    let f = phi_r(r, dims, Tuple::X, Tuple::Y)?;
    let model = Fl4Model {
        dims,
        regions: Vec::new(),
        by_coords: HashMap::new(),
        preds: BTreeMap::new(),
        domain: Vec::new(),
    };
    let mut env: Env = [
        a.iter().map(|c| Some(*c)).collect(),
        b.iter().map(|c| Some(*c)).collect(),
    ];
    Ok(model.eval(&f, &mut env))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rel_intervals;
    use crate::logic::parse;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn variable_clause() {
        let s = fl4_local(&Formula::var("p"), 2).unwrap();
        assert_eq!(
            s.to_sexp(),
            "(and (rect x1 x2 x3 x4) (region x1 x2 x3 x4) (P_p x1 x2 x3 x4))"
        );
        assert!(modal_to_fl4(&Formula::var("p"), 3).is_err());
    }

    #[test]
    fn touching_intervals() {
        let ivs = vec![
            IntervalUnion::interval(q(0), q(1)).unwrap(),
            IntervalUnion::interval(q(1), q(2)).unwrap(),
        ];
        let v = Valuation::new().with("p", [1]);
        let m = Fl4Model::from_intervals(&ivs, &v).unwrap();
        let s = fl4_local(&parse("<ec>p", Kind::Rcc8).unwrap(), 1).unwrap();
        assert!(eval_fl4_at(&m, 0, &s).unwrap());
        assert!(!eval_fl4_at(&m, 1, &s).unwrap());
        let one = Fl4Model::from_intervals(&ivs[..1], &Valuation::new()).unwrap();
        let s = modal_to_fl4(&parse("<dc>true", Kind::Rcc8).unwrap(), 1).unwrap();
        assert!(!eval_fl4(&one, &s).unwrap());
    }

    #[test]
    fn interval_grid_agrees_with_geometry() {
        let mut ivs = Vec::new();
        for a in 0..=4 {
            for b in a + 1..=4 {
                ivs.push((a, b));
            }
        }
        for &(a1, a2) in &ivs {
            for &(b1, b2) in &ivs {
                let want = rel_intervals(
                    &IntervalUnion::interval(q(a1), q(a2)).unwrap(),
                    &IntervalUnion::interval(q(b1), q(b2)).unwrap(),
                );
                for &r in Kind::Rcc8.relations() {
                    let got = phi_r_holds(r, &[q(a1), q(a2)], &[q(b1), q(b2)]).unwrap();
                    assert_eq!(got, r == want, "{r} on [{a1},{a2}] [{b1},{b2}]");
                }
            }
        }
    }
}
