use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{BaseRelation, Kind};
use crate::logic::{expand, Formula, Modality};
use crate::structures::{RegionStructure, Valuation};

use super::TranslateError;

/// One of the two first-order variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var2 {
    X,
    Y,
}

impl Var2 {
    pub fn other(self) -> Var2 {
        match self {
            Var2::X => Var2::Y,
            Var2::Y => Var2::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var2::X => "x",
            Var2::Y => "y",
        }
    }
}

impl fmt::Display for Var2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Two-variable first-order formula over unary predicates and the relation vocabulary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fo2 {
    True,
    Pred(String, Var2),
    Rel(BaseRelation, Var2, Var2),
    Eq(Var2, Var2),
    Not(Box<Fo2>),
    And(Box<Fo2>, Box<Fo2>),
    Exists(Var2, Box<Fo2>),
}

impl Fo2 {
    pub fn pred(p: impl Into<String>, v: Var2) -> Fo2 {
        Fo2::Pred(p.into(), v)
    }

    pub fn not(a: Fo2) -> Fo2 {
        Fo2::Not(Box::new(a))
    }

    pub fn and(a: Fo2, b: Fo2) -> Fo2 {
        Fo2::And(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Var2, a: Fo2) -> Fo2 {
        Fo2::Exists(v, Box::new(a))
    }

    /// `¬(¬a ∧ ¬b)`
    pub fn or(a: Fo2, b: Fo2) -> Fo2 {
        Fo2::not(Fo2::and(Fo2::not(a), Fo2::not(b)))
    }

    /// `¬(a ∧ ¬b)`
    pub fn implies(a: Fo2, b: Fo2) -> Fo2 {
        Fo2::not(Fo2::and(a, Fo2::not(b)))
    }

    /// `(a → b) ∧ (b → a)`
    pub fn iff(a: Fo2, b: Fo2) -> Fo2 {
        Fo2::and(Fo2::implies(a.clone(), b.clone()), Fo2::implies(b, a))
    }

    /// `¬∃v¬a`
    pub fn forall(v: Var2, a: Fo2) -> Fo2 {
        Fo2::not(Fo2::exists(v, Fo2::not(a)))
    }

    pub fn free_vars(&self) -> BTreeSet<Var2> {
        match self {
            Fo2::True => BTreeSet::new(),
            Fo2::Pred(_, v) => [*v].into(),
            Fo2::Rel(_, a, b) | Fo2::Eq(a, b) => [*a, *b].into(),
            Fo2::Not(a) => a.free_vars(),
            Fo2::And(a, b) => {
                let mut s = a.free_vars();
                s.extend(b.free_vars());
                s
            }
            Fo2::Exists(v, a) => {
                let mut s = a.free_vars();
                s.remove(v);
                s
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Fo2::True | Fo2::Pred(..) | Fo2::Rel(..) | Fo2::Eq(..) => 1,
            Fo2::Not(a) | Fo2::Exists(_, a) => 1 + a.size(),
            Fo2::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Fo2::True | Fo2::Pred(..) | Fo2::Rel(..) | Fo2::Eq(..) => 0,
            Fo2::Not(a) => a.quantifier_depth(),
            Fo2::Exists(_, a) => 1 + a.quantifier_depth(),
            Fo2::And(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
        }
    }

    /// Exchanges `x` and `y` everywhere, binders included.
    pub fn swap_vars(&self) -> Fo2 {
        match self {
            Fo2::True => Fo2::True,
            Fo2::Pred(p, v) => Fo2::Pred(p.clone(), v.other()),
            Fo2::Rel(r, a, b) => Fo2::Rel(*r, a.other(), b.other()),
            Fo2::Eq(a, b) => Fo2::Eq(a.other(), b.other()),
            Fo2::Not(a) => Fo2::not(a.swap_vars()),
            Fo2::And(a, b) => Fo2::and(a.swap_vars(), b.swap_vars()),
            Fo2::Exists(v, a) => Fo2::exists(v.other(), a.swap_vars()),
        }
    }
}

impl fmt::Display for Fo2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fo2::True => f.write_str("true"),
            Fo2::Pred(p, v) => write!(f, "({p} {v})"),
            Fo2::Rel(r, a, b) => write!(f, "({r} {a} {b})"),
            Fo2::Eq(a, b) => write!(f, "(= {a} {b})"),
            Fo2::Not(a) => write!(f, "(not {a})"),
            Fo2::And(a, b) => write!(f, "(and {a} {b})"),
            Fo2::Exists(v, a) => write!(f, "(exists {v} {a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

fn read_sexp(text: &str) -> Result<Sexp, TranslateError> {
    let mut stack: Vec<(Vec<Sexp>, usize)> = Vec::new();
    let mut done: Option<Sexp> = None;
    let bytes = text.as_bytes();
    let mut i = 0;
    let syntax = |pos: usize, msg: &str| TranslateError::Syntax {
        pos,
        msg: msg.into(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if done.is_some() {
            return Err(syntax(i, "trailing input"));
        }
        match c {
            b'(' => {
                stack.push((Vec::new(), i));
                i += 1;
            }
            b')' => {
                let (items, start) = stack.pop().ok_or_else(|| syntax(i, "unbalanced `)`"))?;
                let node = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => done = Some(node),
                }
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                {
                    i += 1;
                }
                let node = Sexp::Atom(text[start..i].to_string(), start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => done = Some(node),
                }
            }
        }
    }
    if let Some((_, start)) = stack.last() {
        return Err(syntax(*start, "unclosed `(`"));
    }
    done.ok_or_else(|| syntax(text.len(), "empty input"))
}

fn var_of(s: &Sexp) -> Result<Var2, TranslateError> {
    match s {
        Sexp::Atom(a, _) if a == "x" => Ok(Var2::X),
        Sexp::Atom(a, _) if a == "y" => Ok(Var2::Y),
        Sexp::Atom(a, pos) => Err(TranslateError::Syntax {
            pos: *pos,
            msg: format!("expected x or y, found `{a}`"),
        }),
        Sexp::List(_, pos) => Err(TranslateError::Syntax {
            pos: *pos,
            msg: "expected x or y".into(),
        }),
    }
}

fn build(s: &Sexp, kind: Kind) -> Result<Fo2, TranslateError> {
    let err = |pos: usize, msg: String| TranslateError::Syntax { pos, msg };
    match s {
        Sexp::Atom(a, _) if a == "true" => Ok(Fo2::True),
        Sexp::Atom(a, pos) => Err(err(*pos, format!("unexpected atom `{a}`"))),
        Sexp::List(items, pos) => {
            let Some(Sexp::Atom(head, _)) = items.first() else {
                return Err(err(*pos, "expected an operator".into()));
            };
            let args = &items[1..];
            let arity = |n: usize| {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(err(*pos, format!("`{head}` takes {n} arguments")))
                }
            };
            match head.as_str() {
                "not" => {
                    arity(1)?;
                    Ok(Fo2::not(build(&args[0], kind)?))
                }
                "and" | "or" => {
                    if args.len() < 2 {
                        return Err(err(*pos, format!("`{head}` takes at least 2 arguments")));
                    }
                    let parts = args
                        .iter()
                        .map(|a| build(a, kind))
                        .collect::<Result<Vec<_>, _>>()?;
                    let f = if head == "and" { Fo2::and } else { Fo2::or };
                    Ok(parts.into_iter().reduce(f).expect("non-empty"))
                }
                "->" | "<->" => {
                    arity(2)?;
                    let (a, b) = (build(&args[0], kind)?, build(&args[1], kind)?);
                    Ok(if head == "->" {
                        Fo2::implies(a, b)
                    } else {
                        Fo2::iff(a, b)
                    })
                }
                "exists" | "forall" => {
                    arity(2)?;
                    let v = var_of(&args[0])?;
                    let body = build(&args[1], kind)?;
                    Ok(if head == "exists" {
                        Fo2::exists(v, body)
                    } else {
                        Fo2::forall(v, body)
                    })
                }
                "=" => {
                    arity(2)?;
                    Ok(Fo2::Eq(var_of(&args[0])?, var_of(&args[1])?))
                }
                name if args.len() == 2 => {
                    let r: BaseRelation = name
                        .parse()
                        .map_err(|_| err(*pos, format!("unknown relation `{name}`")))?;
                    if !kind.contains(r) {
                        return Err(err(
                            *pos,
                            format!("relation {r} is not in the {kind} alphabet"),
                        ));
                    }
                    Ok(Fo2::Rel(r, var_of(&args[0])?, var_of(&args[1])?))
                }
                name if args.len() == 1 => Ok(Fo2::Pred(name.to_string(), var_of(&args[0])?)),
                name => Err(err(
                    *pos,
                    format!("cannot read `{name}` with {} arguments", args.len()),
                )),
            }
        }
    }
}

/// Reads the s-expression syntax printed by `Display`; `or`, `->`, `<->`
/// and `forall` are accepted and rewritten into the core connectives.
pub fn parse_fo2(text: &str, kind: Kind) -> Result<Fo2, TranslateError> {
    build(&read_sexp(text)?, kind)
}

/// Values of `x` and `y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub x: Option<usize>,
    pub y: Option<usize>,
}

impl Assignment {
    pub fn x(region: usize) -> Assignment {
        Assignment {
            x: Some(region),
            y: None,
        }
    }

    fn get(&self, v: Var2) -> Result<usize, TranslateError> {
        match v {
            Var2::X => self.x,
            Var2::Y => self.y,
        }
        .ok_or(TranslateError::Unassigned(v.name()))
    }

    fn set(mut self, v: Var2, region: usize) -> Assignment {
        match v {
            Var2::X => self.x = Some(region),
            Var2::Y => self.y = Some(region),
        }
        self
    }
}

/// Tarskian evaluation over the regions of a finite structure.
pub fn eval_fo(
    s: &RegionStructure,
    v: &Valuation,
    a: Assignment,
    f: &Fo2,
) -> Result<bool, TranslateError> {
    Ok(match f {
        Fo2::True => true,
        Fo2::Pred(p, x) => v.holds(p, a.get(*x)?),
        Fo2::Rel(r, x, y) => {
            if !s.kind().contains(*r) {
                return Err(TranslateError::WrongAlphabet(*r, s.kind()));
            }
            s.rel(a.get(*x)?, a.get(*y)?) == *r
        }
        Fo2::Eq(x, y) => a.get(*x)? == a.get(*y)?,
        Fo2::Not(g) => !eval_fo(s, v, a, g)?,
        Fo2::And(g, h) => eval_fo(s, v, a, g)? && eval_fo(s, v, a, h)?,
        Fo2::Exists(x, g) => {
            for i in 0..s.len() {
                if eval_fo(s, v, a.set(*x, i), g)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// Standard translation with free variable `x`, alternating `x` and `y`
/// under modalities. Defined modalities other than boxes and diamonds over
/// base relations are expanded first.
pub fn modal_to_fo(f: &Formula, kind: Kind) -> Result<Fo2, TranslateError> {
    f.check_alphabet(kind)?;
    st(f, Var2::X, kind)
}

fn st(f: &Formula, v: Var2, kind: Kind) -> Result<Fo2, TranslateError> {
    let w = v.other();
    Ok(match f {
        Formula::Var(p) => Fo2::Pred(p.clone(), v),
        Formula::True => Fo2::True,
        Formula::False => Fo2::not(Fo2::True),
        Formula::Not(a) => Fo2::not(st(a, v, kind)?),
        Formula::And(a, b) => Fo2::and(st(a, v, kind)?, st(b, v, kind)?),
        Formula::Or(a, b) => Fo2::or(st(a, v, kind)?, st(b, v, kind)?),
        Formula::Implies(a, b) => Fo2::implies(st(a, v, kind)?, st(b, v, kind)?),
        Formula::Iff(a, b) => Fo2::iff(st(a, v, kind)?, st(b, v, kind)?),
        Formula::Diamond(Modality::Rel(r), a) => {
            Fo2::exists(w, Fo2::and(Fo2::Rel(*r, v, w), st(a, w, kind)?))
        }
        Formula::Box(Modality::Rel(r), a) => Fo2::not(Fo2::exists(
            w,
            Fo2::and(Fo2::Rel(*r, v, w), Fo2::not(st(a, w, kind)?)),
        )),
        other => st(&*expand(other, kind)?, v, kind)?,
    })
}

fn f_not(a: Formula) -> Formula {
    match a {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        a => Formula::not(a),
    }
}

fn f_and(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (Formula::True, b) => b,
        (a, Formula::True) => a,
        (a, b) => Formula::and(a, b),
    }
}

fn f_or(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (Formula::False, b) => b,
        (a, Formula::False) => a,
        (a, b) => Formula::or(a, b),
    }
}

fn f_dia(r: BaseRelation, a: Formula) -> Formula {
    match a {
        Formula::False => Formula::False,
        a => Formula::dia_rel(r, a),
    }
}

/// Translates a two-variable formula with free variable `x` into a modal
/// formula true at a region exactly when the first-order formula holds with
/// `x` assigned to it.
///
/// Existential quantifiers follow the case split of the classical argument:
/// maximal subformulas free only in `x` are fixed to every truth vector,
/// a relation between `x` and `y` is guessed, and binary atoms become
/// constants under the guess. Only constant folding is applied to the output.
pub fn fo2_to_modal(f: &Fo2, kind: Kind) -> Result<Formula, TranslateError> {
    if f.free_vars().contains(&Var2::Y) {
        return Err(TranslateError::FreeVariable("y"));
    }
    Translator { kind }.sigma(f, Var2::X)
}

struct Translator {
    kind: Kind,
}

/// A leaf of the Boolean skeleton below an existential quantifier.
enum Leaf {
    Binary,
    Outer(usize),
    Inner,
}

impl Translator {
    fn check(&self, r: BaseRelation) -> Result<(), TranslateError> {
        if self.kind.contains(r) {
            Ok(())
        } else {
            Err(TranslateError::WrongAlphabet(r, self.kind))
        }
    }

    /// Translation of a formula whose free variables are among `{v}`.
    fn sigma(&self, f: &Fo2, v: Var2) -> Result<Formula, TranslateError> {
        Ok(match f {
            Fo2::True => Formula::True,
            Fo2::Pred(p, _) => Formula::var(p.clone()),
            Fo2::Rel(r, _, _) => {
                self.check(*r)?;
                if *r == BaseRelation::Eq {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            Fo2::Eq(_, _) => Formula::True,
            Fo2::Not(a) => f_not(self.sigma(a, v)?),
            Fo2::And(a, b) => f_and(self.sigma(a, v)?, self.sigma(b, v)?),
            // A closed formula quantifying the current variable: rename apart.
            Fo2::Exists(w, body) if *w == v => self.exists_case(v, &body.swap_vars())?,
            Fo2::Exists(_, body) => self.exists_case(v, body)?,
        })
    }

    fn classify(&self, f: &Fo2, x: Var2, outer: &mut Vec<Fo2>) -> Leaf {
        let binary = match f {
            Fo2::Rel(_, a, b) | Fo2::Eq(a, b) => a != b,
            _ => false,
        };
        if binary {
            return Leaf::Binary;
        }
        let free = f.free_vars();
        if free.contains(&x.other()) {
            return Leaf::Inner;
        }
        match outer.iter().position(|g| g == f) {
            Some(k) => Leaf::Outer(k),
            None => {
                outer.push(f.clone());
                Leaf::Outer(outer.len() - 1)
            }
        }
    }

    fn collect(&self, f: &Fo2, x: Var2, outer: &mut Vec<Fo2>) {
        match f {
            Fo2::Not(a) => self.collect(a, x, outer),
            Fo2::And(a, b) => {
                self.collect(a, x, outer);
                self.collect(b, x, outer);
            }
            Fo2::True => {}
            leaf => {
                self.classify(leaf, x, outer);
            }
        }
    }

    fn exists_case(&self, x: Var2, body: &Fo2) -> Result<Formula, TranslateError> {
        let y = x.other();
        let mut outer = Vec::new();
        self.collect(body, x, &mut outer);
        let outer_t = outer
            .iter()
            .map(|g| self.sigma(g, x))
            .collect::<Result<Vec<_>, _>>()?;
        let l = outer.len();
        let mut result = Formula::False;
        for mask in 0..(1u64 << l) {
            // w_i = ⊤ when bit (l-1-i) of mask is clear, so the all-⊤ vector comes first.
            let w: Vec<bool> = (0..l).map(|i| mask & (1 << (l - 1 - i)) == 0).collect();
            let mut guard = Formula::True;
            for (g, &wi) in outer_t.iter().zip(&w) {
                guard = f_and(guard, if wi { g.clone() } else { f_not(g.clone()) });
            }
            let mut guesses = Formula::False;
            for &r in self.kind.relations() {
                let inst = self.instantiate(body, x, y, r, &outer, &w)?;
                guesses = f_or(guesses, f_dia(r, inst));
            }
            result = f_or(result, f_and(guard, guesses));
        }
        Ok(result)
    }

    fn instantiate(
        &self,
        f: &Fo2,
        x: Var2,
        y: Var2,
        r: BaseRelation,
        outer: &[Fo2],
        w: &[bool],
    ) -> Result<Formula, TranslateError> {
        Ok(match f {
            Fo2::True => Formula::True,
            Fo2::Not(a) => f_not(self.instantiate(a, x, y, r, outer, w)?),
            Fo2::And(a, b) => f_and(
                self.instantiate(a, x, y, r, outer, w)?,
                self.instantiate(b, x, y, r, outer, w)?,
            ),
            leaf => {
                let mut scratch = outer.to_vec();
                match self.classify(leaf, x, &mut scratch) {
                    Leaf::Binary => constant(self.rho(leaf, x, r)?),
                    Leaf::Outer(k) => constant(w[k]),
                    Leaf::Inner => self.sigma(leaf, y)?,
                }
            }
        })
    }

    /// Value of a binary atom when `r(x, y)` holds.
    fn rho(&self, atom: &Fo2, x: Var2, r: BaseRelation) -> Result<bool, TranslateError> {
        Ok(match atom {
            Fo2::Rel(q, a, _) => {
                self.check(*q)?;
                if *a == x {
                    *q == r
                } else {
                    q.converse() == r
                }
            }
            Fo2::Eq(_, _) => r == BaseRelation::Eq,
            _ => unreachable!("not a binary atom"),
        })
    }
}

fn constant(b: bool) -> Formula {
    if b {
        Formula::True
    } else {
        Formula::False
    }
}

/// `∀x∀y(⋀_{i<n}(p_i(x) ↔ p_i(y)) → (p_n(x) ↔ p_n(y)))` using only `∃`, `∧`, `¬`.
pub fn succinctness_formula(n: usize) -> Fo2 {
    let p = |i: usize, v: Var2| Fo2::pred(format!("p_{i}"), v);
    let same = |i: usize| Fo2::iff(p(i, Var2::X), p(i, Var2::Y));
    let premise = (0..n).map(same).reduce(Fo2::and).unwrap_or(Fo2::True);
    Fo2::forall(
        Var2::X,
        Fo2::forall(Var2::Y, Fo2::implies(premise, same(n))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{check, parse};
    use BaseRelation::*;

    #[test]
    fn standard_translation_examples() {
        let f = modal_to_fo(&parse("<dc>p", Kind::Rcc8).unwrap(), Kind::Rcc8).unwrap();
        assert_eq!(f.to_string(), "(exists y (and (dc x y) (p y)))");
        let f = modal_to_fo(&parse("p", Kind::Rcc8).unwrap(), Kind::Rcc8).unwrap();
        assert_eq!(f.to_string(), "(p x)");
    }

    #[test]
    fn sexp_round_trip() {
        let f = parse_fo2("(exists y (and (ec x y) (not (= x y))))", Kind::Rcc8).unwrap();
        assert_eq!(parse_fo2(&f.to_string(), Kind::Rcc8).unwrap(), f);
        assert!(parse_fo2("(exists z (p z))", Kind::Rcc8).is_err());
        assert!(parse_fo2("(and (p x)", Kind::Rcc8).is_err());
        assert!(parse_fo2("(dr x y)", Kind::Rcc8).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let s = RegionStructure::new(
            Kind::Rcc8,
            vec!["a".into(), "b".into()],
            vec![vec![Eq, Ec], vec![Ec, Eq]],
        )
        .unwrap();
        let v = Valuation::new();
        let f = parse_fo2("(exists y (eq x y))", Kind::Rcc8).unwrap();
        assert!(eval_fo(&s, &v, Assignment::x(1), &f).unwrap());
        let f = Fo2::Rel(Dc, Var2::X, Var2::Y);
        assert!(!eval_fo(
            &s,
            &v,
            Assignment {
                x: Some(0),
                y: Some(0)
            },
            &f
        )
        .unwrap());
        assert!(eval_fo(&s, &v, Assignment::x(0), &f).is_err());
    }

    #[test]
    fn eq_self_atom_is_true() {
        let f = Fo2::Rel(Eq, Var2::X, Var2::X);
        assert_eq!(fo2_to_modal(&f, Kind::Rcc8).unwrap(), Formula::True);
        let f = Fo2::Rel(Po, Var2::X, Var2::X);
        assert_eq!(fo2_to_modal(&f, Kind::Rcc8).unwrap(), Formula::False);
        assert!(fo2_to_modal(&Fo2::pred("p", Var2::Y), Kind::Rcc8).is_err());
    }

    #[test]
    fn ec_diamond_round_trip() {
        let f = parse_fo2("(exists y (and (ec x y) (p y)))", Kind::Rcc8).unwrap();
        let m = fo2_to_modal(&f, Kind::Rcc8).unwrap();
        let direct = parse("<ec>p", Kind::Rcc8).unwrap();
        for n in 1..=3 {
            for s in crate::structures::enumerate_structures(Kind::Rcc8, n).unwrap() {
                for bits in 0..(1u32 << n) {
                    let v = Valuation::new().with("p", (0..n).filter(|i| bits & (1 << i) != 0));
                    for i in 0..n {
                        let want = check(&s, &v, i, &direct).unwrap();
                        assert_eq!(check(&s, &v, i, &m).unwrap(), want);
                        assert_eq!(eval_fo(&s, &v, Assignment::x(i), &f).unwrap(), want);
                    }
                }
            }
        }
    }

    #[test]
    fn succinctness_shape() {
        let f = succinctness_formula(1);
        assert!(f.free_vars().is_empty());
        let preds: BTreeSet<String> = {
            fn walk(f: &Fo2, out: &mut BTreeSet<String>) {
                match f {
                    Fo2::Pred(p, _) => {
                        out.insert(p.clone());
                    }
                    Fo2::Not(a) | Fo2::Exists(_, a) => walk(a, out),
                    Fo2::And(a, b) => {
                        walk(a, out);
                        walk(b, out);
                    }
                    _ => {}
                }
            }
            let mut out = BTreeSet::new();
            walk(&f, &mut out);
            out
        };
        assert_eq!(preds, ["p_0".to_string(), "p_1".to_string()].into());
        let s = RegionStructure::new(
            Kind::Rcc8,
            vec!["a".into(), "b".into()],
            vec![vec![Eq, Dc], vec![Dc, Eq]],
        )
        .unwrap();
        let v = Valuation::new().with("p_0", [0, 1]).with("p_1", [0]);
        assert!(!eval_fo(&s, &v, Assignment::default(), &f).unwrap());
        let v = Valuation::new().with("p_0", [0]).with("p_1", [0]);
        assert!(eval_fo(&s, &v, Assignment::default(), &f).unwrap());
    }
}
