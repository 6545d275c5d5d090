//! Concrete regions and the RCC8 relations between them.
//!
//! Every relation is decided from seven point-set facts (closed overlap,
//! interior overlap, the two containments, the two containments in the other
//! region's interior, equality) exactly as the relations are defined on
//! regular closed sets. Interval unions and boxes are generic over the
//! coordinate type; relation decisions only compare coordinates, so an exact
//! type such as [`crate::Rational`] gives exact answers.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Num;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::BaseRelation;

/// Coordinate types usable by the geometry.
pub trait Scalar: Clone + PartialOrd + Num + fmt::Debug {}
impl<T: Clone + PartialOrd + Num + fmt::Debug> Scalar for T {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("degenerate interval: lower end is not below upper end")]
    Degenerate,
    #[error("a region needs at least one interval")]
    EmptyRegion,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("fork region refers to {got} forks but the frame has {frame}")]
    FrameMismatch { got: usize, frame: usize },
    #[error("fork region is empty on every fork")]
    EmptyForkRegion,
}

/// The point-set facts a relation is decided from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Facts {
    /// `s ∩ t ≠ ∅`
    pub meet: bool,
    /// `I(s) ∩ I(t) ≠ ∅`
    pub interiors_meet: bool,
    /// `s ⊆ t`
    pub s_in_t: bool,
    /// `t ⊆ s`
    pub t_in_s: bool,
    /// `s ⊆ I(t)`
    pub s_in_int_t: bool,
    /// `t ⊆ I(s)`
    pub t_in_int_s: bool,
    /// `s = t`
    pub equal: bool,
}

impl Facts {
    /// All relations whose defining condition holds. For non-empty regular
    /// closed sets this has exactly one element.
    pub fn matching(&self) -> Vec<BaseRelation> {
        use BaseRelation::*;
        let f = self;
        let mut out = Vec::new();
        if !f.meet {
            out.push(Dc);
        }
        if f.meet && !f.interiors_meet {
            out.push(Ec);
        }
        if f.interiors_meet && !f.s_in_t && !f.t_in_s {
            out.push(Po);
        }
        if f.equal {
            out.push(Eq);
        }
        if f.s_in_t && !f.s_in_int_t && !f.equal {
            out.push(Tpp);
        }
        if f.s_in_int_t && !f.equal {
            out.push(Ntpp);
        }
        if f.t_in_s && !f.t_in_int_s && !f.equal {
            out.push(Tppi);
        }
        if f.t_in_int_s && !f.equal {
            out.push(Ntppi);
        }
        out
    }

    /// The unique matching relation.
    pub fn relation(&self) -> BaseRelation {
        let m = self.matching();
        assert_eq!(
            m.len(),
            1,
            "relation cases not exclusive for {self:?}: {m:?}"
        );
        m[0]
    }

    fn and(self, o: Facts) -> Facts {
        Facts {
            meet: self.meet && o.meet,
            interiors_meet: self.interiors_meet && o.interiors_meet,
            s_in_t: self.s_in_t && o.s_in_t,
            t_in_s: self.t_in_s && o.t_in_s,
            s_in_int_t: self.s_in_int_t && o.s_in_int_t,
            t_in_int_s: self.t_in_int_s && o.t_in_int_s,
            equal: self.equal && o.equal,
        }
    }
}

/// A finite union of closed intervals, kept sorted with gaps between pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalUnion<S = crate::Rational> {
    pieces: Vec<(S, S)>,
}

impl<S: Scalar> IntervalUnion<S> {
    /// Normalizes the given pieces: sorts them and merges overlapping or touching ones.
    pub fn new(mut pieces: Vec<(S, S)>) -> Result<Self, GeometryError> {
        if pieces.is_empty() {
            return Err(GeometryError::EmptyRegion);
        }
        if pieces.iter().any(|(lo, hi)| !(lo < hi)) {
            return Err(GeometryError::Degenerate);
        }
        pieces.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable coordinates"));
        let mut out: Vec<(S, S)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        Ok(IntervalUnion { pieces: out })
    }

    pub fn interval(lo: S, hi: S) -> Result<Self, GeometryError> {
        Self::new(vec![(lo, hi)])
    }

    pub fn pieces(&self) -> &[(S, S)] {
        &self.pieces
    }

    fn facts(&self, t: &Self) -> Facts {
        let s = self;
        let closed = |a: &(S, S), b: &(S, S)| a.0 <= b.1 && b.0 <= a.1;
        let open = |a: &(S, S), b: &(S, S)| a.0 < b.1 && b.0 < a.1;
        let any = |f: &dyn Fn(&(S, S), &(S, S)) -> bool| {
            s.pieces.iter().any(|a| t.pieces.iter().any(|b| f(a, b)))
        };
        // Pieces are separated by gaps, so a connected piece lies in at most one piece of the other.
        let inside = |x: &Self, y: &Self| {
            x.pieces
                .iter()
                .all(|a| y.pieces.iter().any(|b| b.0 <= a.0 && a.1 <= b.1))
        };
        let inside_int = |x: &Self, y: &Self| {
            x.pieces
                .iter()
                .all(|a| y.pieces.iter().any(|b| b.0 < a.0 && a.1 < b.1))
        };
        Facts {
            meet: any(&closed),
            interiors_meet: any(&open),
            s_in_t: inside(s, t),
            t_in_s: inside(t, s),
            s_in_int_t: inside_int(s, t),
            t_in_int_s: inside_int(t, s),
            equal: s.pieces == t.pieces,
        }
    }
}

/// RCC8 relation between two interval unions.
pub fn rel_intervals<S: Scalar>(s: &IntervalUnion<S>, t: &IntervalUnion<S>) -> BaseRelation {
    s.facts(t).relation()
}

/// Point-set facts between two interval unions.
pub fn interval_facts<S: Scalar>(s: &IntervalUnion<S>, t: &IntervalUnion<S>) -> Facts {
    s.facts(t)
}

/// An axis-aligned closed box, non-degenerate in every dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperRect<S = crate::Rational> {
    dims: Vec<(S, S)>,
}

impl<S: Scalar> HyperRect<S> {
    pub fn new(dims: Vec<(S, S)>) -> Result<Self, GeometryError> {
        if dims.is_empty() {
            return Err(GeometryError::EmptyRegion);
        }
        if dims.iter().any(|(lo, hi)| !(lo < hi)) {
            return Err(GeometryError::Degenerate);
        }
        Ok(HyperRect { dims })
    }

    pub fn dims(&self) -> &[(S, S)] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    fn facts(&self, t: &Self) -> Result<Facts, GeometryError> {
        if self.dims.len() != t.dims.len() {
            return Err(GeometryError::DimensionMismatch(
                self.dims.len(),
                t.dims.len(),
            ));
        }
        // A product of intervals meets, contains or equals another exactly when
        // every factor does, and its interior is the product of open factors.
        let mut acc = Facts {
            meet: true,
            interiors_meet: true,
            s_in_t: true,
            t_in_s: true,
            s_in_int_t: true,
            t_in_int_s: true,
            equal: true,
        };
        for (a, b) in self.dims.iter().zip(&t.dims) {
            let ia = IntervalUnion {
                pieces: vec![a.clone()],
            };
            let ib = IntervalUnion {
                pieces: vec![b.clone()],
            };
            acc = acc.and(ia.facts(&ib));
        }
        Ok(acc)
    }
}

/// RCC8 relation between two boxes of the same dimension.
pub fn rel_rects<S: Scalar>(
    s: &HyperRect<S>,
    t: &HyperRect<S>,
) -> Result<BaseRelation, GeometryError> {
    Ok(s.facts(t)?.relation())
}

/// Point-set facts between two boxes.
pub fn rect_facts<S: Scalar>(s: &HyperRect<S>, t: &HyperRect<S>) -> Result<Facts, GeometryError> {
    s.facts(t)
}

/// A finite disjoint union of forks, each a base point below two leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForkFrame {
    pub forks: usize,
}

/// A point of a fork: base, left leaf or right leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForkPoint {
    Base,
    Left,
    Right,
}

/// A point of a frame: fork index (from 1) and position on that fork.
pub type FramePoint = (usize, ForkPoint);

/// The part of a region lying on one fork. Any non-empty shape contains the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForkShape {
    Empty,
    Left,
    Right,
    Both,
}

impl ForkShape {
    pub const ALL: [ForkShape; 4] = [
        ForkShape::Empty,
        ForkShape::Left,
        ForkShape::Right,
        ForkShape::Both,
    ];

    pub fn points(self) -> &'static [ForkPoint] {
        match self {
            ForkShape::Empty => &[],
            ForkShape::Left => &[ForkPoint::Base, ForkPoint::Left],
            ForkShape::Right => &[ForkPoint::Base, ForkPoint::Right],
            ForkShape::Both => &[ForkPoint::Base, ForkPoint::Left, ForkPoint::Right],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ForkShape::Empty => "empty",
            ForkShape::Left => "left",
            ForkShape::Right => "right",
            ForkShape::Both => "both",
        }
    }
}

/// A region of a fork frame given by its shape on each fork (forks 1..=F).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForkRegion {
    shapes: Vec<ForkShape>,
}

impl ForkRegion {
    /// `shapes[i]` is the shape on fork `i + 1`.
    pub fn new(shapes: Vec<ForkShape>) -> Result<Self, GeometryError> {
        if shapes.iter().all(|&s| s == ForkShape::Empty) {
            return Err(GeometryError::EmptyForkRegion);
        }
        Ok(ForkRegion { shapes })
    }

    pub fn shapes(&self) -> &[ForkShape] {
        &self.shapes
    }

    /// Shape on fork `i` (1-based); forks beyond the vector are empty.
    pub fn shape(&self, fork: usize) -> ForkShape {
        self.shapes
            .get(fork.wrapping_sub(1))
            .copied()
            .unwrap_or(ForkShape::Empty)
    }

    pub fn point_set(&self) -> BTreeSet<FramePoint> {
        let mut out = BTreeSet::new();
        for (i, s) in self.shapes.iter().enumerate() {
            for &p in s.points() {
                out.insert((i + 1, p));
            }
        }
        out
    }
}

impl ForkFrame {
    pub fn points(&self) -> BTreeSet<FramePoint> {
        let mut out = BTreeSet::new();
        for i in 1..=self.forks {
            for p in [ForkPoint::Base, ForkPoint::Left, ForkPoint::Right] {
                out.insert((i, p));
            }
        }
        out
    }

    /// The reflexive order of the frame: each base lies below its two leaves.
    pub fn below(&self, x: FramePoint, y: FramePoint) -> bool {
        x == y || (x.0 == y.0 && x.1 == ForkPoint::Base)
    }

    fn check(&self, r: &ForkRegion) -> Result<(), GeometryError> {
        if r.shapes.len() > self.forks {
            return Err(GeometryError::FrameMismatch {
                got: r.shapes.len(),
                frame: self.forks,
            });
        }
        Ok(())
    }
}

/// Alexandrov interior: points all of whose successors lie in `x`.
pub fn alexandrov_interior(frame: &ForkFrame, x: &BTreeSet<FramePoint>) -> BTreeSet<FramePoint> {
    let all = frame.points();
    all.iter()
        .copied()
        .filter(|&p| all.iter().all(|&q| !frame.below(p, q) || x.contains(&q)))
        .collect()
}

/// Alexandrov closure: points with some successor in `x`.
pub fn alexandrov_closure(frame: &ForkFrame, x: &BTreeSet<FramePoint>) -> BTreeSet<FramePoint> {
    let all = frame.points();
    all.iter()
        .copied()
        .filter(|&p| all.iter().any(|&q| frame.below(p, q) && x.contains(&q)))
        .collect()
}

/// Point-set facts between two fork regions, computed on explicit point sets.
pub fn fork_facts(
    frame: &ForkFrame,
    s: &ForkRegion,
    t: &ForkRegion,
) -> Result<Facts, GeometryError> {
    frame.check(s)?;
    frame.check(t)?;
    let ps = s.point_set();
    let pt = t.point_set();
    let is = alexandrov_interior(frame, &ps);
    let it = alexandrov_interior(frame, &pt);
    Ok(Facts {
        meet: !ps.is_disjoint(&pt),
        interiors_meet: !is.is_disjoint(&it),
        s_in_t: ps.is_subset(&pt),
        t_in_s: pt.is_subset(&ps),
        s_in_int_t: ps.is_subset(&it),
        t_in_int_s: pt.is_subset(&is),
        equal: ps == pt,
    })
}

/// RCC8 relation between two regions of a fork frame.
pub fn rel_fork(
    frame: &ForkFrame,
    s: &ForkRegion,
    t: &ForkRegion,
) -> Result<BaseRelation, GeometryError> {
    Ok(fork_facts(frame, s, t)?.relation())
}

/// RCC5 relation between interval unions.
pub fn rel5_intervals<S: Scalar>(s: &IntervalUnion<S>, t: &IntervalUnion<S>) -> BaseRelation {
    rel_intervals(s, t).coarsen()
}

/// RCC5 relation between boxes.
pub fn rel5_rects<S: Scalar>(
    s: &HyperRect<S>,
    t: &HyperRect<S>,
) -> Result<BaseRelation, GeometryError> {
    Ok(rel_rects(s, t)?.coarsen())
}

/// RCC5 relation between fork regions.
pub fn rel5_fork(
    frame: &ForkFrame,
    s: &ForkRegion,
    t: &ForkRegion,
) -> Result<BaseRelation, GeometryError> {
    Ok(rel_fork(frame, s, t)?.coarsen())
}

/// Regions with a computable RCC8 relation to regions of the same type.
pub trait Region {
    fn rcc8(&self, other: &Self) -> Result<BaseRelation, GeometryError>;
}

impl<S: Scalar> Region for IntervalUnion<S> {
    fn rcc8(&self, other: &Self) -> Result<BaseRelation, GeometryError> {
        Ok(rel_intervals(self, other))
    }
}

impl<S: Scalar> Region for HyperRect<S> {
    fn rcc8(&self, other: &Self) -> Result<BaseRelation, GeometryError> {
        rel_rects(self, other)
    }
}

impl Region for ForkRegion {
    fn rcc8(&self, other: &Self) -> Result<BaseRelation, GeometryError> {
        let frame = ForkFrame {
            forks: self.shapes.len().max(other.shapes.len()),
        };
        rel_fork(&frame, self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseRelation::*;
    use crate::Rational;

    fn iv(pieces: &[(i64, i64)]) -> IntervalUnion<i64> {
        IntervalUnion::new(pieces.to_vec()).unwrap()
    }

    fn bx(dims: &[(i64, i64)]) -> HyperRect<i64> {
        HyperRect::new(dims.to_vec()).unwrap()
    }

    fn fr(shapes: &[ForkShape]) -> ForkRegion {
        ForkRegion::new(shapes.to_vec()).unwrap()
    }

    #[test]
    fn interval_examples() {
        assert_eq!(rel_intervals(&iv(&[(0, 1)]), &iv(&[(1, 2)])), Ec);
        assert_eq!(rel_intervals(&iv(&[(0, 2)]), &iv(&[(1, 3)])), Po);
        assert_eq!(rel_intervals(&iv(&[(1, 2)]), &iv(&[(0, 3)])), Ntpp);
        assert_eq!(rel_intervals(&iv(&[(0, 1)]), &iv(&[(0, 2)])), Tpp);
        assert_eq!(rel5_intervals(&iv(&[(0, 1)]), &iv(&[(1, 2)])), Dr);
        assert_eq!(rel5_intervals(&iv(&[(0, 1)]), &iv(&[(0, 2)])), Pp);
        assert_eq!(rel5_intervals(&iv(&[(0, 1)]), &iv(&[(0, 1)])), Eq);
    }

    #[test]
    fn normalization_merges_touching_pieces() {
        assert_eq!(iv(&[(1, 2), (0, 1)]).pieces(), &[(0, 2)]);
        assert_eq!(iv(&[(0, 3), (1, 2), (5, 6)]).pieces(), &[(0, 3), (5, 6)]);
        assert!(IntervalUnion::new(vec![(1, 1)]).is_err());
        assert!(IntervalUnion::<i64>::new(vec![]).is_err());
    }

    #[test]
    fn multi_piece_relations() {
        // Touching at one point through a gap is still ec.
        assert_eq!(rel_intervals(&iv(&[(0, 1), (3, 4)]), &iv(&[(1, 3)])), Ec);
        assert_eq!(rel_intervals(&iv(&[(0, 1), (3, 4)]), &iv(&[(0, 4)])), Tpp);
        assert_eq!(rel_intervals(&iv(&[(1, 2), (3, 4)]), &iv(&[(0, 5)])), Ntpp);
    }

    #[test]
    fn rational_coordinates() {
        let q = |n, d| Rational::new(n, d);
        let a = IntervalUnion::interval(q(3, 4), q(1, 1)).unwrap();
        let b = IntervalUnion::interval(q(1, 1), q(5, 4)).unwrap();
        assert_eq!(rel_intervals(&a, &b), Ec);
    }

    #[test]
    fn box_examples() {
        assert_eq!(
            rel_rects(&bx(&[(0, 1), (0, 1)]), &bx(&[(2, 3), (0, 1)])).unwrap(),
            Dc
        );
        assert_eq!(
            rel_rects(&bx(&[(0, 2), (0, 2)]), &bx(&[(1, 3), (1, 3)])).unwrap(),
            Po
        );
        assert_eq!(
            rel_rects(&bx(&[(0, 4), (0, 4)]), &bx(&[(1, 2), (1, 2)])).unwrap(),
            Ntppi
        );
        // Corner contact.
        assert_eq!(
            rel_rects(&bx(&[(0, 1), (0, 1)]), &bx(&[(1, 2), (1, 2)])).unwrap(),
            Ec
        );
        assert!(rel_rects(&bx(&[(0, 1)]), &bx(&[(0, 1), (0, 1)])).is_err());
    }

    #[test]
    fn alexandrov_examples() {
        let frame = ForkFrame { forks: 1 };
        let set = |ps: &[ForkPoint]| ps.iter().map(|&p| (1, p)).collect::<BTreeSet<_>>();
        use ForkPoint::*;
        assert_eq!(
            alexandrov_interior(&frame, &set(&[Base, Left])),
            set(&[Left])
        );
        assert_eq!(
            alexandrov_closure(&frame, &set(&[Left])),
            set(&[Base, Left])
        );
        assert_eq!(alexandrov_interior(&frame, &frame.points()), frame.points());
    }

    #[test]
    fn fork_examples() {
        use ForkShape::*;
        let f1 = ForkFrame { forks: 1 };
        let f2 = ForkFrame { forks: 2 };
        assert_eq!(rel_fork(&f1, &fr(&[Left]), &fr(&[Right])).unwrap(), Ec);
        assert_eq!(rel_fork(&f1, &fr(&[Left]), &fr(&[Both])).unwrap(), Ntpp);
        assert_eq!(
            rel_fork(&f2, &fr(&[Left]), &fr(&[Left, Both])).unwrap(),
            Tpp
        );
        assert_eq!(
            rel_fork(&f2, &fr(&[Both]), &fr(&[Empty, Both])).unwrap(),
            Dc
        );
        assert!(rel_fork(&f1, &fr(&[Both]), &fr(&[Empty, Both])).is_err());
    }

    #[test]
    fn shapes_are_regular_closed() {
        let frame = ForkFrame { forks: 1 };
        for s in ForkShape::ALL {
            let pts: BTreeSet<FramePoint> = s.points().iter().map(|&p| (1, p)).collect();
            let reg = alexandrov_closure(&frame, &alexandrov_interior(&frame, &pts));
            assert_eq!(reg, pts, "{s:?}");
        }
    }
}
