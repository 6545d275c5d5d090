use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{BaseRelation, Kind};

use super::LogicError;

/// Index of a modal operator: a base relation or one of the defined modalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modality {
    Rel(BaseRelation),
    /// Universal modality.
    U,
    /// Difference modality.
    D,
    /// Proper part (RCC8 macro for tpp and ntpp).
    PP,
    /// Inverse proper part (RCC8 macro for tppi and ntppi).
    PPI,
    /// Next position of the enumeration of grid positions.
    Next,
    Prev,
    Right,
    Up,
    Left,
    Down,
}

impl Modality {
    pub fn name(self) -> &'static str {
        match self {
            Modality::Rel(r) => r.name(),
            Modality::U => "u",
            Modality::D => "d",
            Modality::PP => "pp",
            Modality::PPI => "ppi",
            Modality::Next => "next",
            Modality::Prev => "prev",
            Modality::Right => "right",
            Modality::Up => "up",
            Modality::Left => "left",
            Modality::Down => "down",
        }
    }

    /// Resolves a modality token under an alphabet. In RCC5, `pp` and `ppi`
    /// are base relations; in RCC8 they are the proper-part macros.
    pub fn parse(token: &str, kind: Kind) -> Result<Modality, LogicError> {
        let m = match token {
            "u" => Modality::U,
            "d" => Modality::D,
            "next" => Modality::Next,
            "prev" => Modality::Prev,
            "right" => Modality::Right,
            "up" => Modality::Up,
            "left" => Modality::Left,
            "down" => Modality::Down,
            "pp" if kind == Kind::Rcc8 => Modality::PP,
            "ppi" if kind == Kind::Rcc8 => Modality::PPI,
            other => {
                let r: BaseRelation = other
                    .parse()
                    .map_err(|_| LogicError::UnknownModality(other.into()))?;
                if !kind.contains(r) {
                    return Err(LogicError::WrongAlphabet(r, kind));
                }
                Modality::Rel(r)
            }
        };
        Ok(m)
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Modal formula. The core fragment is `Var`, `True`, `Not`, `And` and
/// `Box` over base relations; everything else is sugar removed by
/// [`super::expand`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    True,
    False,
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
    Box(Modality, Arc<Formula>),
    Diamond(Modality, Arc<Formula>),
    /// Holds exactly when its argument is true in precisely one region.
    Nom(Arc<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Arc::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Arc::new(a), Arc::new(b))
    }

    pub fn boxed(m: Modality, a: Formula) -> Formula {
        Formula::Box(m, Arc::new(a))
    }

    pub fn diamond(m: Modality, a: Formula) -> Formula {
        Formula::Diamond(m, Arc::new(a))
    }

    pub fn box_rel(r: BaseRelation, a: Formula) -> Formula {
        Formula::boxed(Modality::Rel(r), a)
    }

    pub fn dia_rel(r: BaseRelation, a: Formula) -> Formula {
        Formula::diamond(Modality::Rel(r), a)
    }

    pub fn nom(a: Formula) -> Formula {
        Formula::Nom(Arc::new(a))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// Variables occurring in the formula.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::True | Formula::False => {}
            Formula::Not(a) | Formula::Box(_, a) | Formula::Diamond(_, a) | Formula::Nom(a) => {
                a.collect_vars(out)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Number of tree nodes (shared subtrees counted once per occurrence).
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::True | Formula::False => 1,
            Formula::Not(a) | Formula::Box(_, a) | Formula::Diamond(_, a) | Formula::Nom(a) => {
                1 + a.size()
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Modal nesting depth.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::True | Formula::False => 0,
            Formula::Not(a) => a.depth(),
            Formula::Box(_, a) | Formula::Diamond(_, a) | Formula::Nom(a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.depth().max(b.depth()),
        }
    }

    /// All base relations named directly in the formula.
    pub fn relations(&self) -> BTreeSet<BaseRelation> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Box(Modality::Rel(r), _) | Formula::Diamond(Modality::Rel(r), _) = f {
                out.insert(*r);
            }
        });
        out
    }

    fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Var(_) | Formula::True | Formula::False => {}
            Formula::Not(a) | Formula::Box(_, a) | Formula::Diamond(_, a) | Formula::Nom(a) => {
                a.visit(f)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Whether every named relation and macro belongs to `kind`.
    pub fn check_alphabet(&self, kind: Kind) -> Result<(), LogicError> {
        let mut err = None;
        self.visit(&mut |f| {
            if err.is_some() {
                return;
            }
            if let Formula::Box(m, _) | Formula::Diamond(m, _) = f {
                match m {
                    Modality::Rel(r) if !kind.contains(*r) => {
                        err = Some(LogicError::WrongAlphabet(*r, kind))
                    }
                    Modality::PP | Modality::PPI if kind == Kind::Rcc5 => {
                        err = Some(LogicError::MacroNeedsRcc8(m.name()))
                    }
                    Modality::Next
                    | Modality::Prev
                    | Modality::Right
                    | Modality::Up
                    | Modality::Left
                    | Modality::Down
                        if kind == Kind::Rcc5 =>
                    {
                        err = Some(LogicError::MacroNeedsRcc8(m.name()))
                    }
                    _ => {}
                }
            }
        });
        err.map_or(Ok(()), Err)
    }
}

// Binding strength used by the printer and the parser.
const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => PREC_IFF,
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, phi: &Formula, min: u8) -> fmt::Result {
    if prec(phi) < min {
        write!(f, "(")?;
        write_at(f, phi, 0)?;
        return write!(f, ")");
    }
    match phi {
        Formula::Var(v) => f.write_str(v),
        Formula::True => f.write_str("true"),
        Formula::False => f.write_str("false"),
        Formula::Not(a) => {
            f.write_str("!")?;
            write_at(f, a, PREC_UNARY)
        }
        Formula::Box(m, a) => {
            write!(f, "[{m}]")?;
            write_at(f, a, PREC_UNARY)
        }
        Formula::Diamond(m, a) => {
            write!(f, "<{m}>")?;
            write_at(f, a, PREC_UNARY)
        }
        Formula::Nom(a) => {
            f.write_str("nom(")?;
            write_at(f, a, 0)?;
            f.write_str(")")
        }
        // `&`, `|` and `<->` associate to the left, `->` to the right.
        Formula::And(a, b) => binary(f, a, " & ", b, PREC_AND, false),
        Formula::Or(a, b) => binary(f, a, " | ", b, PREC_OR, false),
        Formula::Iff(a, b) => binary(f, a, " <-> ", b, PREC_IFF, false),
        Formula::Implies(a, b) => binary(f, a, " -> ", b, PREC_IMPLIES, true),
    }
}

fn binary(
    f: &mut fmt::Formatter<'_>,
    a: &Formula,
    op: &str,
    b: &Formula,
    p: u8,
    right_assoc: bool,
) -> fmt::Result {
    let (lmin, rmin) = if right_assoc { (p + 1, p) } else { (p, p + 1) };
    write_at(f, a, lmin)?;
    f.write_str(op)?;
    write_at(f, b, rmin)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}
