use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{BaseRelation, Kind};

use super::ast::{Formula, Modality};
use super::LogicError;

type Memo = HashMap<*const Formula, Arc<Formula>>;

/// Rewrites every defined operator into `Var`, `True`, `Not`, `And` and
/// boxes over base relations. Shared subformulas stay shared.
pub fn expand(f: &Formula, kind: Kind) -> Result<Arc<Formula>, LogicError> {
    f.check_alphabet(kind)?;
    let mut memo = Memo::new();
    Ok(Expander { kind }.run(f, &mut memo))
}

/// Whether the formula only uses core constructors.
pub fn is_core(f: &Formula) -> bool {
    match f {
        Formula::Var(_) | Formula::True => true,
        Formula::Not(a) => is_core(a),
        Formula::And(a, b) => is_core(a) && is_core(b),
        Formula::Box(Modality::Rel(_), a) => is_core(a),
        _ => false,
    }
}

struct Expander {
    kind: Kind,
}

fn not(a: Arc<Formula>) -> Arc<Formula> {
    Arc::new(Formula::Not(a))
}

fn and(a: Arc<Formula>, b: Arc<Formula>) -> Arc<Formula> {
    Arc::new(Formula::And(a, b))
}

fn var(name: &str) -> Arc<Formula> {
    Arc::new(Formula::Var(name.into()))
}

fn box_rel(r: BaseRelation, a: Arc<Formula>) -> Arc<Formula> {
    Arc::new(Formula::Box(Modality::Rel(r), a))
}

fn dia_rel(r: BaseRelation, a: Arc<Formula>) -> Arc<Formula> {
    not(box_rel(r, not(a)))
}

impl Expander {
    fn run_arc(&self, f: &Arc<Formula>, memo: &mut Memo) -> Arc<Formula> {
        let key = Arc::as_ptr(f);
        if let Some(done) = memo.get(&key) {
            return done.clone();
        }
        let out = self.run(f, memo);
        memo.insert(key, out.clone());
        out
    }

    fn run(&self, f: &Formula, memo: &mut Memo) -> Arc<Formula> {
        match f {
            Formula::Var(v) => var(v),
            Formula::True => Arc::new(Formula::True),
            Formula::False => not(Arc::new(Formula::True)),
            Formula::Not(a) => not(self.run_arc(a, memo)),
            Formula::And(a, b) => and(self.run_arc(a, memo), self.run_arc(b, memo)),
            Formula::Or(a, b) => {
                let (a, b) = (self.run_arc(a, memo), self.run_arc(b, memo));
                not(and(not(a), not(b)))
            }
            Formula::Implies(a, b) => {
                let (a, b) = (self.run_arc(a, memo), self.run_arc(b, memo));
                not(and(a, not(b)))
            }
            Formula::Iff(a, b) => {
                let (a, b) = (self.run_arc(a, memo), self.run_arc(b, memo));
                and(not(and(a.clone(), not(b.clone()))), not(and(b, not(a))))
            }
            Formula::Box(m, a) => {
                let a = self.run_arc(a, memo);
                self.boxed(*m, a)
            }
            Formula::Diamond(m, a) => {
                let a = self.run_arc(a, memo);
                self.diamond(*m, a)
            }
            Formula::Nom(a) => {
                // nom(φ) = ◇_u(φ ∧ □_d ¬φ)
                let a = self.run_arc(a, memo);
                let inner = and(a.clone(), self.boxed(Modality::D, not(a)));
                self.diamond(Modality::U, inner)
            }
        }
    }

    fn boxed(&self, m: Modality, a: Arc<Formula>) -> Arc<Formula> {
        use BaseRelation::*;
        match m {
            Modality::Rel(r) => box_rel(r, a),
            Modality::D => self
                .kind
                .non_eq()
                .map(|r| box_rel(r, a.clone()))
                .reduce(and)
                .expect("at least one relation"),
            Modality::U => and(a.clone(), self.boxed(Modality::D, a)),
            Modality::PP => and(box_rel(Tpp, a.clone()), box_rel(Ntpp, a)),
            Modality::PPI => and(box_rel(Tppi, a.clone()), box_rel(Ntppi, a)),
            _ => not(self.diamond(m, not(a))),
        }
    }

    fn diamond(&self, m: Modality, a: Arc<Formula>) -> Arc<Formula> {
        use BaseRelation::*;
        let ab = |phi: Arc<Formula>| and(and(var("a"), var("b")), phi);
        match m {
            // ◇⁺φ = ⟨tpp⟩(a ∧ ¬b ∧ ⟨tpp⟩(a ∧ b ∧ φ))
            Modality::Next => dia_rel(Tpp, and(and(var("a"), not(var("b"))), dia_rel(Tpp, ab(a)))),
            Modality::Prev => dia_rel(
                Tppi,
                and(and(var("a"), not(var("b"))), dia_rel(Tppi, ab(a))),
            ),
            // ◇^R φ = ⟨tpp⟩(c ∧ ⟨tpp⟩(a ∧ b ∧ φ))
            Modality::Right => dia_rel(Tpp, and(var("c"), dia_rel(Tpp, ab(a)))),
            Modality::Left => dia_rel(Tppi, and(var("c"), dia_rel(Tppi, ab(a)))),
            Modality::Up => self.diamond(Modality::Right, self.diamond(Modality::Next, a)),
            // One step back along the enumeration, then left.
            Modality::Down => self.diamond(Modality::Prev, self.diamond(Modality::Left, a)),
            _ => not(self.boxed(m, not(a))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    fn ex(s: &str) -> Arc<Formula> {
        expand(&parse(s, Kind::Rcc8).unwrap(), Kind::Rcc8).unwrap()
    }

    #[test]
    fn difference_box_has_seven_conjuncts() {
        let f = ex("[d]p");
        assert!(is_core(&f));
        let rels = f.relations();
        assert_eq!(rels.len(), 7);
        assert!(!rels.contains(&BaseRelation::Eq));
        let five = expand(&parse("[d]p", Kind::Rcc5).unwrap(), Kind::Rcc5).unwrap();
        assert_eq!(five.relations().len(), 4);
    }

    #[test]
    fn nominal_and_universal() {
        assert_eq!(ex("nom(p)"), ex("<u>(p & [d]!p)"));
        assert_eq!(ex("[u]p"), ex("p & [d]p"));
        assert_eq!(ex("[pp]p"), ex("[tpp]p & [ntpp]p"));
    }

    #[test]
    fn grid_macros() {
        assert_eq!(ex("<up>p"), ex("<right><next>p"));
        assert_eq!(ex("<down>p"), ex("<prev><left>p"));
        assert_eq!(ex("<next>p"), ex("<tpp>(a & !b & <tpp>(a & b & p))"));
        assert_eq!(ex("<right>p"), ex("<tpp>(c & <tpp>(a & b & p))"));
        assert_eq!(ex("[left]p"), ex("!<left>!p"));
    }

    #[test]
    fn rcc8_macros_rejected_in_rcc5() {
        let f = Formula::boxed(Modality::Next, Formula::var("p"));
        assert!(matches!(
            expand(&f, Kind::Rcc5),
            Err(LogicError::MacroNeedsRcc8(_))
        ));
    }
}
