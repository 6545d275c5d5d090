//! RCC8 and RCC5 relation algebras.
//!
//! Both vocabularies share one [`BaseRelation`] enum; `po` and `eq` belong to
//! both kinds. A [`RelationSet`] always carries its [`Kind`], and its members
//! are stored as a bitmask over the kind's canonical order.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which relation vocabulary is in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rcc8,
    Rcc5,
}

/// A base relation of either vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseRelation {
    Dc,
    Ec,
    Po,
    Eq,
    Tpp,
    Ntpp,
    Tppi,
    Ntppi,
    Dr,
    Pp,
    Ppi,
}

use BaseRelation::*;

const RCC8: [BaseRelation; 8] = [Dc, Ec, Po, Eq, Tpp, Ntpp, Tppi, Ntppi];
const RCC5: [BaseRelation; 5] = [Dr, Po, Eq, Pp, Ppi];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unknown relation name `{0}`")]
    UnknownRelation(String),
    #[error("relation `{rel}` does not belong to the {kind} vocabulary")]
    WrongKind { rel: BaseRelation, kind: Kind },
    #[error("relation sets of different kinds ({0} vs {1})")]
    KindMismatch(Kind, Kind),
}

impl Kind {
    /// Base relations in canonical order.
    pub fn relations(self) -> &'static [BaseRelation] {
        match self {
            Kind::Rcc8 => &RCC8,
            Kind::Rcc5 => &RCC5,
        }
    }

    /// Position of `r` in the canonical order, if it belongs to this kind.
    pub fn index_of(self, r: BaseRelation) -> Option<usize> {
        self.relations().iter().position(|&x| x == r)
    }

    pub fn contains(self, r: BaseRelation) -> bool {
        self.index_of(r).is_some()
    }

    pub fn size(self) -> usize {
        self.relations().len()
    }

    /// Base relations other than `eq`, canonical order.
    pub fn non_eq(self) -> impl Iterator<Item = BaseRelation> {
        self.relations().iter().copied().filter(|&r| r != Eq)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Rcc8 => "rcc8",
            Kind::Rcc5 => "rcc5",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rcc8" => Ok(Kind::Rcc8),
            "rcc5" => Ok(Kind::Rcc5),
            _ => Err(format!("unknown alphabet `{s}` (expected rcc8 or rcc5)")),
        }
    }
}

impl BaseRelation {
    pub fn name(self) -> &'static str {
        match self {
            Dc => "dc",
            Ec => "ec",
            Po => "po",
            Eq => "eq",
            Tpp => "tpp",
            Ntpp => "ntpp",
            Tppi => "tppi",
            Ntppi => "ntppi",
            Dr => "dr",
            Pp => "pp",
            Ppi => "ppi",
        }
    }

    /// Involution swapping the proper-part relations with their inverses.
    pub fn converse(self) -> BaseRelation {
        match self {
            Tpp => Tppi,
            Tppi => Tpp,
            Ntpp => Ntppi,
            Ntppi => Ntpp,
            Pp => Ppi,
            Ppi => Pp,
            r => r,
        }
    }

    /// RCC8 to RCC5 coarsening. RCC5 relations map to themselves.
    pub fn coarsen(self) -> BaseRelation {
        match self {
            Dc | Ec | Dr => Dr,
            Tpp | Ntpp | Pp => Pp,
            Tppi | Ntppi | Ppi => Ppi,
            Po => Po,
            Eq => Eq,
        }
    }

    pub fn all() -> [BaseRelation; 11] {
        [Dc, Ec, Po, Eq, Tpp, Ntpp, Tppi, Ntppi, Dr, Pp, Ppi]
    }
}

impl fmt::Display for BaseRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaseRelation {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        BaseRelation::all()
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| AlgebraError::UnknownRelation(s.to_string()))
    }
}

/// A set of base relations of one kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationSet {
    kind: Kind,
    bits: u8,
}

impl RelationSet {
    pub fn empty(kind: Kind) -> Self {
        RelationSet { kind, bits: 0 }
    }

    pub fn full(kind: Kind) -> Self {
        RelationSet {
            kind,
            bits: ((1u16 << kind.size()) - 1) as u8,
        }
    }

    /// Panics if `r` is not of `kind`; use [`RelationSet::try_singleton`] on untrusted input.
    pub fn singleton(kind: Kind, r: BaseRelation) -> Self {
        Self::try_singleton(kind, r).expect("relation of the wrong kind")
    }

    pub fn try_singleton(kind: Kind, r: BaseRelation) -> Result<Self, AlgebraError> {
        let i = kind
            .index_of(r)
            .ok_or(AlgebraError::WrongKind { rel: r, kind })?;
        Ok(RelationSet { kind, bits: 1 << i })
    }

    pub fn from_relations<I: IntoIterator<Item = BaseRelation>>(
        kind: Kind,
        rels: I,
    ) -> Result<Self, AlgebraError> {
        let mut s = Self::empty(kind);
        for r in rels {
            s = s.union(Self::try_singleton(kind, r)?);
        }
        Ok(s)
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(self, r: BaseRelation) -> bool {
        self.kind
            .index_of(r)
            .is_some_and(|i| self.bits & (1 << i) != 0)
    }

    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.kind, other.kind);
        RelationSet {
            kind: self.kind,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersect(self, other: Self) -> Self {
        debug_assert_eq!(self.kind, other.kind);
        RelationSet {
            kind: self.kind,
            bits: self.bits & other.bits,
        }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.kind == other.kind && self.bits & !other.bits == 0
    }

    pub fn is_singleton(self) -> bool {
        self.len() == 1
    }

    /// Members in canonical order.
    pub fn iter(self) -> impl Iterator<Item = BaseRelation> {
        self.kind
            .relations()
            .iter()
            .enumerate()
            .filter(move |(i, _)| self.bits & (1 << i) != 0)
            .map(|(_, &r)| r)
    }

    pub fn converse(self) -> Self {
        let mut out = Self::empty(self.kind);
        for r in self.iter() {
            out = out.union(Self::singleton(self.kind, r.converse()));
        }
        out
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(r.name())?;
        }
        f.write_str("}")
    }
}

/// RCC8 composition table, `eq` omitted. Each row: (r1, r2, entry); `*` is all eight.
pub const RCC8_TABLE: [(&str, &str, &str); 49] = [
    ("dc", "dc", "*"),
    ("dc", "ec", "dc ec po tpp ntpp"),
    ("dc", "po", "dc ec po tpp ntpp"),
    ("dc", "tpp", "dc ec po tpp ntpp"),
    ("dc", "ntpp", "dc ec po tpp ntpp"),
    ("dc", "tppi", "dc"),
    ("dc", "ntppi", "dc"),
    ("ec", "dc", "dc ec po tppi ntppi"),
    ("ec", "ec", "dc ec po tpp tppi eq"),
    ("ec", "po", "dc ec po tpp ntpp"),
    ("ec", "tpp", "ec po tpp ntpp"),
    ("ec", "ntpp", "po tpp ntpp"),
    ("ec", "tppi", "dc ec"),
    ("ec", "ntppi", "dc"),
    ("po", "dc", "dc ec po tppi ntppi"),
    ("po", "ec", "dc ec po tppi ntppi"),
    ("po", "po", "*"),
    ("po", "tpp", "po tpp ntpp"),
    ("po", "ntpp", "po tpp ntpp"),
    ("po", "tppi", "dc ec po tppi ntppi"),
    ("po", "ntppi", "dc ec po tppi ntppi"),
    ("tpp", "dc", "dc"),
    ("tpp", "ec", "dc ec"),
    ("tpp", "po", "dc ec po tpp ntpp"),
    ("tpp", "tpp", "tpp ntpp"),
    ("tpp", "ntpp", "ntpp"),
    ("tpp", "tppi", "dc ec po tpp tppi eq"),
    ("tpp", "ntppi", "dc ec po tppi ntppi"),
    ("ntpp", "dc", "dc"),
    ("ntpp", "ec", "dc"),
    ("ntpp", "po", "dc ec po tpp ntpp"),
    ("ntpp", "tpp", "ntpp"),
    ("ntpp", "ntpp", "ntpp"),
    ("ntpp", "tppi", "dc ec po tpp ntpp"),
    ("ntpp", "ntppi", "*"),
    ("tppi", "dc", "dc ec po tppi ntppi"),
    ("tppi", "ec", "ec po tppi ntppi"),
    ("tppi", "po", "po tppi ntppi"),
    ("tppi", "tpp", "po eq tpp tppi"),
    ("tppi", "ntpp", "po tpp ntpp"),
    ("tppi", "tppi", "tppi ntppi"),
    ("tppi", "ntppi", "ntppi"),
    ("ntppi", "dc", "dc ec po tppi ntppi"),
    ("ntppi", "ec", "po tppi ntppi"),
    ("ntppi", "po", "po tppi ntppi"),
    ("ntppi", "tpp", "po tppi ntppi"),
    ("ntppi", "ntpp", "po tppi tpp ntpp ntppi eq"),
    ("ntppi", "tppi", "ntppi"),
    ("ntppi", "ntppi", "ntppi"),
];

/// RCC5 composition table, `eq` omitted.
///
/// The `(ppi, po)` cell is `{po, ppi}`. It is the converse of `(po, pp)` =
/// `{po, pp}`, and it is what set semantics gives: if `x ⊋ y` and `y`
/// overlaps `z`, then `x` overlaps or contains `z`.
pub const RCC5_TABLE: [(&str, &str, &str); 16] = [
    ("dr", "dr", "*"),
    ("dr", "po", "dr po pp"),
    ("dr", "pp", "dr po pp"),
    ("dr", "ppi", "dr"),
    ("po", "dr", "dr po ppi"),
    ("po", "po", "*"),
    ("po", "pp", "po pp"),
    ("po", "ppi", "dr po ppi"),
    ("pp", "dr", "dr"),
    ("pp", "po", "dr po pp"),
    ("pp", "pp", "pp"),
    ("pp", "ppi", "*"),
    ("ppi", "dr", "dr po ppi"),
    ("ppi", "po", "po ppi"),
    ("ppi", "pp", "eq po pp ppi"),
    ("ppi", "ppi", "ppi"),
];

/// A composition table as a dense matrix indexed by canonical positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionTable {
    kind: Kind,
    cells: Vec<Vec<RelationSet>>,
}

impl CompositionTable {
    /// Builds a table from textual entries; `eq` is filled in as the identity.
    pub fn from_entries(kind: Kind, entries: &[(&str, &str, &str)]) -> Result<Self, AlgebraError> {
        let n = kind.size();
        let eq = kind.index_of(Eq).expect("eq in every kind");
        let mut cells = vec![vec![RelationSet::empty(kind); n]; n];
        for (i, &r) in kind.relations().iter().enumerate() {
            cells[i][eq] = RelationSet::singleton(kind, r);
            cells[eq][i] = RelationSet::singleton(kind, r);
        }
        for &(a, b, entry) in entries {
            let a: BaseRelation = a.parse()?;
            let b: BaseRelation = b.parse()?;
            let ia = kind
                .index_of(a)
                .ok_or(AlgebraError::WrongKind { rel: a, kind })?;
            let ib = kind
                .index_of(b)
                .ok_or(AlgebraError::WrongKind { rel: b, kind })?;
            cells[ia][ib] = parse_entry(kind, entry)?;
        }
        Ok(CompositionTable { kind, cells })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn get(&self, r1: BaseRelation, r2: BaseRelation) -> RelationSet {
        let i = self
            .kind
            .index_of(r1)
            .expect("relation of the table's kind");
        let j = self
            .kind
            .index_of(r2)
            .expect("relation of the table's kind");
        self.cells[i][j]
    }

    pub fn set(&mut self, r1: BaseRelation, r2: BaseRelation, value: RelationSet) {
        let i = self
            .kind
            .index_of(r1)
            .expect("relation of the table's kind");
        let j = self
            .kind
            .index_of(r2)
            .expect("relation of the table's kind");
        self.cells[i][j] = value;
    }

    pub fn compose_sets(&self, s1: RelationSet, s2: RelationSet) -> RelationSet {
        let mut out = RelationSet::empty(self.kind);
        for a in s1.iter() {
            for b in s2.iter() {
                out = out.union(self.get(a, b));
            }
        }
        out
    }
}

fn parse_entry(kind: Kind, entry: &str) -> Result<RelationSet, AlgebraError> {
    if entry.trim() == "*" {
        return Ok(RelationSet::full(kind));
    }
    let rels = entry
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<Vec<BaseRelation>, _>>()?;
    RelationSet::from_relations(kind, rels)
}

/// The embedded composition table of a kind.
pub fn table(kind: Kind) -> &'static CompositionTable {
    static T8: OnceLock<CompositionTable> = OnceLock::new();
    static T5: OnceLock<CompositionTable> = OnceLock::new();
    match kind {
        Kind::Rcc8 => T8.get_or_init(|| {
            CompositionTable::from_entries(Kind::Rcc8, &RCC8_TABLE).expect("valid RCC8 table")
        }),
        Kind::Rcc5 => T5.get_or_init(|| {
            CompositionTable::from_entries(Kind::Rcc5, &RCC5_TABLE).expect("valid RCC5 table")
        }),
    }
}

/// RCC8 composition.
pub fn compose(r1: BaseRelation, r2: BaseRelation) -> RelationSet {
    table(Kind::Rcc8).get(r1, r2)
}

/// RCC5 composition.
pub fn compose5(r1: BaseRelation, r2: BaseRelation) -> RelationSet {
    table(Kind::Rcc5).get(r1, r2)
}

/// Composition under an explicit kind.
pub fn compose_in(kind: Kind, r1: BaseRelation, r2: BaseRelation) -> RelationSet {
    table(kind).get(r1, r2)
}

/// Pointwise union of base compositions.
pub fn compose_sets(s1: RelationSet, s2: RelationSet) -> Result<RelationSet, AlgebraError> {
    if s1.kind() != s2.kind() {
        return Err(AlgebraError::KindMismatch(s1.kind(), s2.kind()));
    }
    Ok(table(s1.kind()).compose_sets(s1, s2))
}

/// Converts a base relation of either kind to its RCC5 coarsening.
pub fn coarsen(r: BaseRelation) -> BaseRelation {
    r.coarsen()
}

/// One failing check found by [`meta_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableViolation {
    Identity {
        r: BaseRelation,
        side: &'static str,
        got: RelationSet,
    },
    Converse {
        r: BaseRelation,
        s: BaseRelation,
        lhs: RelationSet,
        rhs: RelationSet,
    },
    Empty {
        r: BaseRelation,
        s: BaseRelation,
    },
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableViolation::Identity { r, side, got } => {
                write!(f, "identity: compose {side} eq with {r} gives {got}")
            }
            TableViolation::Converse { r, s, lhs, rhs } => write!(
                f,
                "converse: conv({r};{s}) = {lhs} but conv({s});conv({r}) = {rhs}"
            ),
            TableViolation::Empty { r, s } => write!(f, "empty entry at ({r},{s})"),
        }
    }
}

/// Audits a table: eq is a two-sided identity, entries are non-empty, and
/// `converse(r;s) = converse(s);converse(r)` for all base pairs.
pub fn meta_check(t: &CompositionTable) -> Vec<TableViolation> {
    let kind = t.kind();
    let eq = RelationSet::singleton(kind, Eq);
    let mut out = Vec::new();
    for &r in kind.relations() {
        let single = RelationSet::singleton(kind, r);
        let right = t.compose_sets(single, eq);
        if right != single {
            out.push(TableViolation::Identity {
                r,
                side: "right",
                got: right,
            });
        }
        let left = t.compose_sets(eq, single);
        if left != single {
            out.push(TableViolation::Identity {
                r,
                side: "left",
                got: left,
            });
        }
    }
    for &r in kind.relations() {
        for &s in kind.relations() {
            let rs = t.get(r, s);
            if rs.is_empty() {
                out.push(TableViolation::Empty { r, s });
            }
            let lhs = rs.converse();
            let rhs = t.get(s.converse(), r.converse());
            if lhs != rhs {
                out.push(TableViolation::Converse { r, s, lhs, rhs });
            }
        }
    }
    out
}

/// [`meta_check`] over the embedded table of `kind`.
pub fn table_meta_check(kind: Kind) -> Vec<TableViolation> {
    meta_check(table(kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(kind: Kind, names: &str) -> RelationSet {
        parse_entry(kind, names).unwrap()
    }

    #[test]
    fn converse_examples() {
        assert_eq!(Tpp.converse(), Tppi);
        assert_eq!(Dc.converse(), Dc);
        assert_eq!(Eq.converse(), Eq);
        for r in BaseRelation::all() {
            assert_eq!(r.converse().converse(), r);
        }
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(Tpp, Tpp), set(Kind::Rcc8, "tpp ntpp"));
        assert_eq!(compose(Ec, Ec), set(Kind::Rcc8, "dc ec po tpp tppi eq"));
        assert_eq!(compose(Eq, Po), set(Kind::Rcc8, "po"));
        assert_eq!(compose(Ntpp, Ntppi), RelationSet::full(Kind::Rcc8));
        assert_eq!(compose5(Pp, Pp), set(Kind::Rcc5, "pp"));
        assert_eq!(compose5(Dr, Po), set(Kind::Rcc5, "dr po pp"));
        assert_eq!(compose5(Ppi, Pp), set(Kind::Rcc5, "eq po pp ppi"));
    }

    #[test]
    fn compose_sets_examples() {
        let k = Kind::Rcc8;
        let eq = RelationSet::singleton(k, Eq);
        let dc = RelationSet::singleton(k, Dc);
        assert_eq!(compose_sets(eq, dc).unwrap(), dc);
        let tpp = RelationSet::singleton(k, Tpp);
        assert_eq!(compose_sets(tpp, tpp).unwrap(), set(k, "tpp ntpp"));
        let full = RelationSet::full(k);
        assert_eq!(compose_sets(full, full).unwrap(), full);
        assert!(compose_sets(full, RelationSet::full(Kind::Rcc5)).is_err());
    }

    #[test]
    fn coarsen_examples() {
        assert_eq!(coarsen(Dc), Dr);
        assert_eq!(coarsen(Ntpp), Pp);
        assert_eq!(coarsen(Po), Po);
        for &r in Kind::Rcc8.relations() {
            assert_eq!(coarsen(r.converse()), coarsen(r).converse());
        }
    }

    #[test]
    fn tables_are_clean() {
        assert!(table_meta_check(Kind::Rcc8).is_empty());
        assert!(table_meta_check(Kind::Rcc5).is_empty());
    }

    #[test]
    fn corrupted_table_is_reported() {
        let mut t = table(Kind::Rcc8).clone();
        t.set(Tpp, Tpp, set(Kind::Rcc8, "tpp"));
        assert!(!meta_check(&t).is_empty());
    }

    #[test]
    fn eq_in_r_then_converse() {
        for kind in [Kind::Rcc8, Kind::Rcc5] {
            for &r in kind.relations() {
                assert!(compose_in(kind, r, r.converse()).contains(Eq));
            }
        }
    }

    #[test]
    fn relation_set_iterates_in_canonical_order() {
        let s = set(Kind::Rcc8, "ntppi dc eq");
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![Dc, Eq, Ntppi]);
        assert_eq!(s.to_string(), "{dc,eq,ntppi}");
        assert!(!s.contains(Dr));
    }
}
