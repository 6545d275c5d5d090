//! Formulas that are satisfiable exactly when a domino system tiles the
//! quadrant, tiles it with a recurring tile, or tiles some finite triangle.
//!
//! Auxiliary variables: `a` marks the chain of nested regions, `b` the
//! members standing for grid positions, `c` the regions used to step right,
//! `wall` and `floor` the positions with `x = 0` and `y = 0`. Tile `t` is
//! the variable [`tile_var`]`(t)`.

use crate::algebra::Kind;
use crate::logic::{parse, Formula, Modality};

use super::{DominoSystem, ReductionError};

/// One named conjunct of the universally enforced part of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiGroup {
    pub name: &'static str,
    pub formula: Formula,
}

/// Variable standing for a tile. Characters outside `[A-Za-z0-9]` are
/// escaped as `_<hex>_`, so distinct tiles get distinct variables.
pub fn tile_var(tile: &str) -> String {
    let mut s = String::from("p_");
    for c in tile.chars() {
        if c.is_ascii_alphanumeric() {
            s.push(c);
        } else {
            s.push_str(&format!("_{:x}_", c as u32));
        }
    }
    s
}

fn f(text: &str) -> Formula {
    parse(text, Kind::Rcc8).expect("fixed formula text parses")
}

fn p(tile: &str) -> Formula {
    Formula::var(tile_var(tile))
}

fn group(name: &'static str, text: &str) -> ChiGroup {
    ChiGroup { name, formula: f(text) }
}

fn one_tile(d: &DominoSystem) -> ChiGroup {
    let mut parts = Vec::new();
    for (i, t) in d.tiles.iter().enumerate() {
        for u in &d.tiles[i + 1..] {
            parts.push(Formula::not(Formula::and(p(t), p(u))));
        }
    }
    ChiGroup { name: "one-tile", formula: Formula::conj(parts) }
}

fn matching(
    name: &'static str,
    guard: &str,
    pairs: &[(String, String)],
    step: Modality,
) -> ChiGroup {
    let options = pairs
        .iter()
        .map(|(t, u)| Formula::and(p(t), Formula::diamond(step, p(u))));
    ChiGroup { name, formula: Formula::implies(f(guard), Formula::disj(options)) }
}

/// The conjuncts shared by the quadrant reductions.
pub fn chi_groups(d: &DominoSystem) -> Vec<ChiGroup> {
    vec![
        group("a-chain", "a -> [dc]!a & [ec]!a & [po]!a"),
        group("ab-then-a", "a & b -> <tpp>(a & !b)"),
        group("a-then-ab", "a & !b -> <tpp>(a & b)"),
        group("a-tangent-b", "a & !b -> [tpp](a -> b)"),
        group("ab-tangent-not-b", "a & b -> [tpp](a -> !b)"),
        group("ab-has-c", "a & b -> <tpp>c"),
        group("c-has-ab", "c -> <tpp>(a & b)"),
        group("c-chain", "c -> [dc]!c & [ec]!c & [po]!c & [tpp]!c & [tppi]!c"),
        group("origin-innermost", "floor & wall -> [ntppi]!a"),
        group("wall-next-floor", "wall -> <next>floor"),
        group("wall-up", "wall -> <up>wall"),
        group("wall-down", "[ntppi]!a | (wall -> <down>wall)"),
        group("right-leaves-wall", "a & b -> <right>!wall"),
        group("left-off-wall", "a & b & !wall -> <left>true"),
        one_tile(d),
        matching("horizontal", "a & b", &d.h, Modality::Right),
        matching("vertical", "a & b", &d.v, Modality::Up),
    ]
}

fn assemble(prefix: &str, groups: &[ChiGroup], suffix: Vec<Formula>) -> Formula {
    let chi = Formula::conj(groups.iter().map(|g| g.formula.clone()));
    let mut parts = vec![f(prefix), Formula::boxed(Modality::U, chi)];
    parts.extend(suffix);
    Formula::conj(parts)
}

/// Satisfiable in a region model iff the system tiles the quadrant.
pub fn phi_d(d: &DominoSystem) -> Formula {
    assemble("a & b & wall & floor & [ntppi]!a", &chi_groups(d), Vec::new())
}

/// The quadrant reduction plus the requirement that the recurring tile
/// occurs infinitely often on the wall and that only one chain of nested
/// `a` regions has a limit.
pub fn phi_d_recurring(d: &DominoSystem) -> Result<Formula, ReductionError> {
    let t0 = d.t0.as_ref().ok_or(ReductionError::MissingTile("t0"))?;
    let recurring = Formula::boxed(
        Modality::U,
        Formula::implies(
            f("a & b"),
            Formula::dia_rel(
                crate::algebra::BaseRelation::Ntpp,
                Formula::and(f("a & b & wall"), p(t0)),
            ),
        ),
    );
    let single_limit = f("[u]([tppi]<po>a -> !a & [tpp]!a & [ntpp]!a)");
    Ok(Formula::conj([phi_d(d), recurring, single_limit]))
}

/// Which version of the finite-triangle reduction to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinVariant {
    /// Conjuncts that demand a further position (next, right or up) only
    /// apply where that position exists, so the last diagonal and the last
    /// position are exempt.
    Guarded,
    /// The unguarded conjuncts. Since the last position lies on the wall and
    /// every wall position must have one above it, no finite model exists.
    Unguarded,
}

/// Conjuncts of the finite-triangle reduction.
pub fn chi_fin_groups(d: &DominoSystem, variant: FinVariant) -> Vec<ChiGroup> {
    let guarded = variant == FinVariant::Guarded;
    let pick = |g: &str, u: &str| if guarded { g.to_string() } else { u.to_string() };
    let ab_right = if guarded { "a & b & <right>true" } else { "a & b" };
    vec![
        group("a-chain", "a -> [dc]!a & [ec]!a & [po]!a"),
        group("a-then-ab", "a & !b -> <tpp>(a & b)"),
        group("a-tangent-b", "a & !b -> [tpp](a -> b)"),
        group("ab-tangent-not-b", "a & b -> [tpp](a -> !b)"),
        group("c-has-ab", "c -> <tpp>(a & b)"),
        group("c-chain", "c -> [dc]!c & [ec]!c & [po]!c & [tpp]!c & [tppi]!c"),
        group("origin-innermost", "floor & wall -> [ntppi]!a"),
        group(
            "wall-next-floor",
            &pick("wall & <next>true -> <next>floor", "wall -> <next>floor"),
        ),
        group("wall-up", &pick("wall & <next>true -> <up>wall", "wall -> <up>wall")),
        group("wall-down", "[ntppi]!a | (wall -> <down>wall)"),
        group("right-leaves-wall", &format!("{ab_right} -> <right>!wall")),
        group("left-off-wall", "a & b & !wall -> <left>true"),
        one_tile(d),
        matching("horizontal", ab_right, &d.h, Modality::Right),
        matching("vertical", ab_right, &d.v, Modality::Up),
        group(
            "first-rightless-on-floor",
            "a & b & !<right>true & [ntppi](a & b -> <right>true) -> floor",
        ),
        group(
            "rightless-continues",
            "a & b & !<right>true -> !<next>true | <next>!<right>true",
        ),
        group("last-on-wall", "a & b & !<next>true -> wall & [ntpp]!(a & b)"),
    ]
}

fn phi_fin(d: &DominoSystem, variant: FinVariant) -> Result<Formula, ReductionError> {
    let s0 = d.s0.as_ref().ok_or(ReductionError::MissingTile("s0"))?;
    let f0 = d.f0.as_ref().ok_or(ReductionError::MissingTile("f0"))?;
    let prefix = format!("a & b & wall & floor & {} & [ntppi]!a", tile_var(s0));
    let last = Formula::or(
        p(f0),
        Formula::dia_rel(
            crate::algebra::BaseRelation::Ntpp,
            Formula::and(f("a & b"), p(f0)),
        ),
    );
    Ok(assemble(&prefix, &chi_fin_groups(d, variant), vec![last]))
}

/// Satisfiable in a finite region model iff the system tiles some
/// `k`-triangle with the start tile at the origin and the final tile
/// somewhere.
pub fn phi_d_fin(d: &DominoSystem) -> Result<Formula, ReductionError> {
    phi_fin(d, FinVariant::Guarded)
}

/// [`phi_d_fin`] without the existence guards; it has no finite models.
pub fn phi_d_fin_unguarded(d: &DominoSystem) -> Result<Formula, ReductionError> {
    phi_fin(d, FinVariant::Unguarded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1() -> DominoSystem {
        DominoSystem::new(["t"], &[("t", "t")], &[("t", "t")])
            .unwrap()
            .with_start("t", "t")
            .unwrap()
    }

    #[test]
    fn group_counts() {
        assert_eq!(chi_groups(&d1()).len(), 17);
        assert_eq!(chi_fin_groups(&d1(), FinVariant::Guarded).len(), 18);
        assert_eq!(chi_groups(&d1())[5].formula, f("a & b -> <tpp>c"));
        let last = &chi_fin_groups(&d1(), FinVariant::Unguarded)[17];
        assert_eq!(last.formula, f("a & b & !<next>true -> wall & [ntpp]!(a & b)"));
    }

    #[test]
    fn tile_names_are_escaped() {
        assert_eq!(tile_var("t1"), "p_t1");
        assert_eq!(tile_var("$"), "p__24_");
        assert_ne!(tile_var("a_"), tile_var("a_5f_"));
        assert!(parse(&tile_var("<q0,b,L>"), Kind::Rcc8).is_ok());
    }

    #[test]
    fn vocabulary() {
        let d = DominoSystem::new(["x", "y"], &[("x", "y")], &[("y", "x")])
            .unwrap()
            .with_start("x", "y")
            .unwrap()
            .with_recurring("x")
            .unwrap();
        let allowed = ["a", "b", "c", "wall", "floor", "p_x", "p_y"];
        for g in [phi_d(&d), phi_d_recurring(&d).unwrap(), phi_d_fin(&d).unwrap()] {
            assert!(g.vars().iter().all(|v| allowed.contains(&v.as_str())), "{g}");
        }
        assert_eq!(phi_d(&d).to_string(), phi_d(&d.clone()).to_string());
        assert!(phi_d_recurring(&d1()).is_err());
    }
}
