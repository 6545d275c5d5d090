//! Seeded random generators for regions, structures, networks and formulas.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{compose_in, BaseRelation, Kind, RelationSet};
use crate::geometry::{ForkRegion, ForkShape, HyperRect, IntervalUnion};
use crate::logic::{Formula, Modality};
use crate::reductions::S53;
use crate::solver::ConstraintNetwork;
use crate::structures::{RegionStructure, Valuation};
use crate::translate::{Fo2, Var2};
use crate::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Union of 1 to `max_pieces` disjoint, non-touching intervals with integer
/// endpoints in `0..=3 * max_pieces`.
pub fn interval_union<R: Rng>(rng: &mut R, max_pieces: usize) -> IntervalUnion {
    let pieces = rng.gen_range(1..=max_pieces);
    let grid: Vec<i64> = (0..=(3 * max_pieces) as i64).collect();
    let mut ends: Vec<i64> = grid.choose_multiple(rng, 2 * pieces).copied().collect();
    ends.sort_unstable();
    let pairs = ends.chunks(2).map(|c| (q(c[0]), q(c[1]))).collect();
    IntervalUnion::new(pairs).expect("ordered distinct endpoints")
}

/// Axis-parallel box with integer corners in `0..=max`.
pub fn hyper_rect<R: Rng>(rng: &mut R, dims: usize, max: i64) -> HyperRect {
    let sides = (0..dims)
        .map(|_| {
            let lo = rng.gen_range(0..max);
            let hi = rng.gen_range(lo + 1..=max);
            (q(lo), q(hi))
        })
        .collect();
    HyperRect::new(sides).expect("lo < hi")
}

/// Non-empty region of a frame with `forks` forks.
pub fn fork_region<R: Rng>(rng: &mut R, forks: usize) -> ForkRegion {
    loop {
        let shapes: Vec<ForkShape> = (0..forks)
            .map(|_| *ForkShape::ALL.choose(rng).expect("non-empty"))
            .collect();
        if let Ok(r) = ForkRegion::new(shapes) {
            return r;
        }
    }
}

/// Random valid structure on `n` regions. Pairs are assigned in order, each
/// with a random relation consistent with the triangles already complete,
/// backtracking on dead ends.
pub fn structure<R: Rng>(rng: &mut R, kind: Kind, n: usize) -> RegionStructure {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut m = vec![vec![BaseRelation::Eq; n]; n];
    fn fits(kind: Kind, m: &[Vec<BaseRelation>], i: usize, j: usize, r: BaseRelation) -> bool {
        // The triangles already complete are those through some k < i.
        (0..i).all(|k| {
            let (ik, kj) = (m[i][k], m[k][j]);
            compose_in(kind, ik, kj).contains(r)
                && compose_in(kind, m[k][i], r).contains(kj)
                && compose_in(kind, r, m[j][k]).contains(ik)
        })
    }
    fn go<R: Rng>(
        rng: &mut R,
        kind: Kind,
        pairs: &[(usize, usize)],
        m: &mut Vec<Vec<BaseRelation>>,
        at: usize,
    ) -> bool {
        let Some(&(i, j)) = pairs.get(at) else {
            return true;
        };
        let mut options: Vec<BaseRelation> = kind.non_eq().collect();
        options.shuffle(rng);
        for r in options {
            if fits(kind, m, i, j, r) {
                m[i][j] = r;
                m[j][i] = r.converse();
                if go(rng, kind, pairs, m, at + 1) {
                    return true;
                }
            }
        }
        false
    }
    assert!(go(rng, kind, &pairs, &mut m, 0), "a fully discrete structure always exists");
    let names = (1..=n).map(|i| format!("r{i}")).collect();
    RegionStructure::new(kind, names, m).expect("every triangle was checked")
}

/// Random extensions for the given variables.
pub fn valuation<R: Rng>(rng: &mut R, vars: &[&str], regions: usize) -> Valuation {
    let mut v = Valuation::new();
    for var in vars {
        v.set(var, (0..regions).filter(|_| rng.gen_bool(0.5)));
    }
    v
}

/// Each pair gets a non-empty random subset of the alphabet, relations kept
/// independently with probability `density`.
pub fn network<R: Rng>(rng: &mut R, kind: Kind, n: usize, density: f64) -> ConstraintNetwork {
    let vars = (1..=n).map(|i| format!("v{i}")).collect();
    let mut net = ConstraintNetwork::new(kind, vars).expect("distinct names");
    for i in 0..n {
        for j in i + 1..n {
            let all = kind.relations();
            let mut set = RelationSet::from_relations(
                kind,
                all.iter().copied().filter(|_| rng.gen_bool(density)),
            )
            .expect("relations of the alphabet");
            if set.is_empty() {
                set = RelationSet::singleton(kind, *all.choose(rng).expect("non-empty"));
            }
            net.constrain(i, j, set).expect("non-empty");
        }
    }
    net
}

/// Modal formula of modal depth at most `depth` over `vars`, using boxes and
/// diamonds of the alphabet and of the universal modality.
pub fn formula<R: Rng>(rng: &mut R, kind: Kind, vars: &[&str], depth: usize) -> Formula {
    let leaf = |rng: &mut R| match rng.gen_range(0..8) {
        0 => Formula::True,
        1 => Formula::False,
        _ => Formula::var(*vars.choose(rng).expect("non-empty")),
    };
    let choice = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..9) };
    match choice {
        0 => leaf(rng),
        1 => Formula::not(leaf(rng)),
        2 | 3 => {
            let a = formula(rng, kind, vars, depth.saturating_sub(1));
            let b = formula(rng, kind, vars, depth.saturating_sub(1));
            match rng.gen_range(0..4) {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                2 => Formula::implies(a, b),
                _ => Formula::iff(a, b),
            }
        }
        4 => Formula::not(formula(rng, kind, vars, depth)),
        5 | 6 | 7 => {
            let r = *kind.relations().choose(rng).expect("non-empty");
            let a = formula(rng, kind, vars, depth - 1);
            if rng.gen_bool(0.5) {
                Formula::dia_rel(r, a)
            } else {
                Formula::box_rel(r, a)
            }
        }
        _ => {
            let a = formula(rng, kind, vars, depth - 1);
            if rng.gen_bool(0.5) {
                Formula::diamond(Modality::U, a)
            } else {
                Formula::boxed(Modality::U, a)
            }
        }
    }
}

/// Two-variable formula with quantifier depth at most `depth` whose free
/// variables are among `scope`.
pub fn fo2<R: Rng>(rng: &mut R, kind: Kind, preds: &[&str], scope: &[Var2], depth: usize) -> Fo2 {
    let atom = |rng: &mut R| {
        if scope.is_empty() {
            return Fo2::True;
        }
        let a = *scope.choose(rng).expect("non-empty");
        let b = *scope.choose(rng).expect("non-empty");
        match rng.gen_range(0..6) {
            0 => Fo2::Eq(a, b),
            1 | 2 => Fo2::Rel(*kind.relations().choose(rng).expect("non-empty"), a, b),
            _ => Fo2::pred(*preds.choose(rng).expect("non-empty"), a),
        }
    };
    let choice = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..7) };
    match choice {
        0 => atom(rng),
        1 => Fo2::not(atom(rng)),
        2 if depth == 0 => Fo2::and(atom(rng), atom(rng)),
        2 | 3 => Fo2::and(
            fo2(rng, kind, preds, scope, depth.saturating_sub(1)),
            fo2(rng, kind, preds, scope, depth),
        ),
        4 => Fo2::not(fo2(rng, kind, preds, scope, depth)),
        _ => {
            let v = if rng.gen_bool(0.5) { Var2::X } else { Var2::Y };
            let mut inner: Vec<Var2> = scope.to_vec();
            if !inner.contains(&v) {
                inner.push(v);
            }
            Fo2::exists(v, fo2(rng, kind, preds, &inner, depth - 1))
        }
    }
}

/// S5³ formula of modal depth at most `depth` over `vars`.
pub fn s53<R: Rng>(rng: &mut R, vars: &[&str], depth: usize) -> S53 {
    let choice = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..6) };
    match choice {
        0 | 1 => S53::var(vars.choose(rng).expect("non-empty")),
        2 => S53::not(S53::var(vars.choose(rng).expect("non-empty"))),
        3 => S53::and(s53(rng, vars, depth - 1), s53(rng, vars, depth)),
        4 => S53::not(s53(rng, vars, depth)),
        _ => S53::dia(rng.gen_range(1..=3), s53(rng, vars, depth - 1)),
    }
}
