use std::fmt;
use std::str::FromStr;

use crate::algebra::{compose, BaseRelation, Kind};

use super::ast::{Formula, Modality};
use super::LogicError;

/// Axiom schemata of the RCC8 modal logic with nominals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaId {
    /// `[r](φ → ψ) → ([r]φ → [r]ψ)`
    K,
    /// `⟨r1⟩i → ¬⟨r2⟩i` for `r1 ≠ r2`
    Disjoint,
    /// `⟨r1⟩⟨r2⟩φ → ⟨q1⟩φ ∨ … ∨ ⟨qk⟩φ` with `q1..qk` the table entry of `(r1, r2)`
    Composition,
    /// `φ → [r]⟨r⟩φ` for symmetric `r`
    Symmetry,
    /// `φ → [r]⟨r⁻⟩φ` and `φ → [r⁻]⟨r⟩φ`
    Inverse,
    /// `□_u φ → φ`
    UReflexive,
    /// `□_u φ → □_u □_u φ`
    UTransitive,
    /// `φ → □_u ◇_u φ`
    USymmetric,
    /// `[eq]φ ↔ φ`
    EqIdentity,
    /// `◇_u i`
    NominalExists,
    /// `◇_u(i ∧ φ) → □_u(i → φ)`
    NominalUnique,
}

impl SchemaId {
    pub const ALL: [SchemaId; 11] = [
        SchemaId::K,
        SchemaId::Disjoint,
        SchemaId::Composition,
        SchemaId::Symmetry,
        SchemaId::Inverse,
        SchemaId::UReflexive,
        SchemaId::UTransitive,
        SchemaId::USymmetric,
        SchemaId::EqIdentity,
        SchemaId::NominalExists,
        SchemaId::NominalUnique,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemaId::K => "k",
            SchemaId::Disjoint => "disjoint",
            SchemaId::Composition => "composition",
            SchemaId::Symmetry => "symmetry",
            SchemaId::Inverse => "inverse",
            SchemaId::UReflexive => "u-reflexive",
            SchemaId::UTransitive => "u-transitive",
            SchemaId::USymmetric => "u-symmetric",
            SchemaId::EqIdentity => "eq-identity",
            SchemaId::NominalExists => "nominal-exists",
            SchemaId::NominalUnique => "nominal-unique",
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemaId {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemaId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| LogicError::UnknownSchema(s.into()))
    }
}

/// A schema together with its parameters. Nominals are plain variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    K {
        r: BaseRelation,
        phi: Formula,
        psi: Formula,
    },
    Disjoint {
        r1: BaseRelation,
        r2: BaseRelation,
        nominal: String,
    },
    Composition {
        r1: BaseRelation,
        r2: BaseRelation,
        phi: Formula,
    },
    Symmetry {
        r: BaseRelation,
        phi: Formula,
    },
    Inverse {
        r: BaseRelation,
        phi: Formula,
    },
    UReflexive {
        phi: Formula,
    },
    UTransitive {
        phi: Formula,
    },
    USymmetric {
        phi: Formula,
    },
    EqIdentity {
        phi: Formula,
    },
    NominalExists {
        nominal: String,
    },
    NominalUnique {
        nominal: String,
        phi: Formula,
    },
}

impl Axiom {
    pub fn schema(&self) -> SchemaId {
        match self {
            Axiom::K { .. } => SchemaId::K,
            Axiom::Disjoint { .. } => SchemaId::Disjoint,
            Axiom::Composition { .. } => SchemaId::Composition,
            Axiom::Symmetry { .. } => SchemaId::Symmetry,
            Axiom::Inverse { .. } => SchemaId::Inverse,
            Axiom::UReflexive { .. } => SchemaId::UReflexive,
            Axiom::UTransitive { .. } => SchemaId::UTransitive,
            Axiom::USymmetric { .. } => SchemaId::USymmetric,
            Axiom::EqIdentity { .. } => SchemaId::EqIdentity,
            Axiom::NominalExists { .. } => SchemaId::NominalExists,
            Axiom::NominalUnique { .. } => SchemaId::NominalUnique,
        }
    }

    /// Variables that must denote singletons when testing soundness.
    pub fn nominals(&self) -> Vec<&str> {
        match self {
            Axiom::Disjoint { nominal, .. }
            | Axiom::NominalExists { nominal }
            | Axiom::NominalUnique { nominal, .. } => {
                vec![nominal.as_str()]
            }
            _ => Vec::new(),
        }
    }
}

fn rcc8(r: BaseRelation) -> Result<(), LogicError> {
    if Kind::Rcc8.contains(r) {
        Ok(())
    } else {
        Err(LogicError::WrongAlphabet(r, Kind::Rcc8))
    }
}

fn is_symmetric(r: BaseRelation) -> bool {
    r.converse() == r
}

/// The formula an axiom instance stands for.
pub fn axiom_instance(ax: &Axiom) -> Result<Formula, LogicError> {
    use Formula as F;
    let bx = |r: BaseRelation, f: Formula| F::box_rel(r, f);
    let dia = |r: BaseRelation, f: Formula| F::dia_rel(r, f);
    let out = match ax {
        Axiom::K { r, phi, psi } => {
            rcc8(*r)?;
            F::implies(
                bx(*r, F::implies(phi.clone(), psi.clone())),
                F::implies(bx(*r, phi.clone()), bx(*r, psi.clone())),
            )
        }
        Axiom::Disjoint { r1, r2, nominal } => {
            rcc8(*r1)?;
            rcc8(*r2)?;
            if r1 == r2 {
                return Err(LogicError::InvalidInstance(
                    "disjointness needs two different relations".into(),
                ));
            }
            let i = F::var(nominal.clone());
            F::implies(dia(*r1, i.clone()), F::not(dia(*r2, i)))
        }
        Axiom::Composition { r1, r2, phi } => {
            rcc8(*r1)?;
            rcc8(*r2)?;
            let rhs = F::disj(compose(*r1, *r2).iter().map(|q| dia(q, phi.clone())));
            F::implies(dia(*r1, dia(*r2, phi.clone())), rhs)
        }
        Axiom::Symmetry { r, phi } => {
            rcc8(*r)?;
            if !is_symmetric(*r) {
                return Err(LogicError::InvalidInstance(format!("{r} is not symmetric")));
            }
            F::implies(phi.clone(), bx(*r, dia(*r, phi.clone())))
        }
        Axiom::Inverse { r, phi } => {
            rcc8(*r)?;
            let inv = r.converse();
            F::and(
                F::implies(phi.clone(), bx(*r, dia(inv, phi.clone()))),
                F::implies(phi.clone(), bx(inv, dia(*r, phi.clone()))),
            )
        }
        Axiom::UReflexive { phi } => F::implies(F::boxed(Modality::U, phi.clone()), phi.clone()),
        Axiom::UTransitive { phi } => F::implies(
            F::boxed(Modality::U, phi.clone()),
            F::boxed(Modality::U, F::boxed(Modality::U, phi.clone())),
        ),
        Axiom::USymmetric { phi } => F::implies(
            phi.clone(),
            F::boxed(Modality::U, F::diamond(Modality::U, phi.clone())),
        ),
        Axiom::EqIdentity { phi } => F::iff(bx(BaseRelation::Eq, phi.clone()), phi.clone()),
        Axiom::NominalExists { nominal } => F::diamond(Modality::U, F::var(nominal.clone())),
        Axiom::NominalUnique { nominal, phi } => {
            let i = F::var(nominal.clone());
            F::implies(
                F::diamond(Modality::U, F::and(i.clone(), phi.clone())),
                F::boxed(Modality::U, F::implies(i, phi.clone())),
            )
        }
    };
    Ok(out)
}

/// Side condition of the covering rule: the premise has the form `i → φ`
/// with the nominal `i` not occurring in `φ`.
pub fn rule_cov_check(premise: &Formula, nominal: &str) -> bool {
    apply_cov(premise, nominal).is_some()
}

/// Conclusion `φ` of the covering rule applied to `i → φ`, if applicable.
pub fn apply_cov(premise: &Formula, nominal: &str) -> Option<Formula> {
    match premise {
        Formula::Implies(i, phi)
            if **i == Formula::Var(nominal.into()) && !phi.vars().contains(nominal) =>
        {
            Some((**phi).clone())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;
    use BaseRelation::*;

    fn p(s: &str) -> Formula {
        parse(s, Kind::Rcc8).unwrap()
    }

    #[test]
    fn displayed_instances() {
        let ax = Axiom::Composition {
            r1: Tpp,
            r2: Tpp,
            phi: p("q"),
        };
        assert_eq!(
            axiom_instance(&ax).unwrap(),
            p("<tpp><tpp>q -> <tpp>q | <ntpp>q")
        );
        let ax = Axiom::Symmetry { r: Dc, phi: p("q") };
        assert_eq!(axiom_instance(&ax).unwrap(), p("q -> [dc]<dc>q"));
        let ax = Axiom::EqIdentity { phi: p("q") };
        assert_eq!(axiom_instance(&ax).unwrap(), p("[eq]q <-> q"));
        assert!(axiom_instance(&Axiom::Symmetry {
            r: Tpp,
            phi: p("q")
        })
        .is_err());
        assert!(axiom_instance(&Axiom::Disjoint {
            r1: Dc,
            r2: Dc,
            nominal: "i".into()
        })
        .is_err());
    }

    #[test]
    fn schema_names() {
        for id in SchemaId::ALL {
            assert_eq!(id.name().parse::<SchemaId>().unwrap(), id);
        }
        assert!("nope".parse::<SchemaId>().is_err());
    }

    #[test]
    fn cov_side_condition() {
        assert_eq!(apply_cov(&p("i -> <dc>q"), "i"), Some(p("<dc>q")));
        assert!(!rule_cov_check(&p("i -> <dc>i"), "i"));
        assert!(!rule_cov_check(&p("q -> i"), "i"));
    }
}
