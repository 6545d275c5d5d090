use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{compose_in, meta_check, table, BaseRelation, CompositionTable, Kind, RelationSet};
use crate::geometry::{
    fork_facts, interval_facts, rect_facts, rel_intervals, rel_rects, Facts, ForkFrame, GeometryError,
    HyperRect, IntervalUnion,
};
use crate::logic::{
    axiom_instance, bounded_sat, check, extension, valid_in, Axiom, Checker, Compiled, Formula, SchemaId,
};
use crate::reductions::{
    chi_rcc5, common_superregion, domino_ready_violations, domready_witness, grid_interval_realization,
    loeb, model_from_s53, model_from_tiling, phi_d_fin, phi_d_fin_unguarded, s53_check, sharp_translate,
    tile_triangle, triangle_size, DominoSystem, S53Model, World, S53,
};
use crate::solver::{ec_k, realize, satisfiable_rs, ConstraintNetwork, Realized, Satisfiability};
use crate::structures::{enumerate_structures, induced, validate, RegionStructure, StructureError, Valuation};
use crate::translate::{
    eval_fl4, eval_fl4_at, eval_fo, fl4_local, fo2_to_modal, modal_to_fl4, modal_to_fo, phi_r_holds,
    succinctness_formula, Assignment, Fl4Model, Fo2, Var2,
};
use crate::Rational;

use super::fixtures::{self, Erratum};
use super::{gen, CriterionReport, SuiteConfig, Tally};

fn rng(cfg: &SuiteConfig, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn network_text(net: &ConstraintNetwork) -> String {
    serde_json::to_string(&net.to_json()).expect("serializable")
}

/// All structures of sizes `1..=max`; entry `m - 1` holds size `m`.
pub fn structure_catalog(kind: Kind, max: usize) -> Result<Vec<Vec<RegionStructure>>, StructureError> {
    (1..=max)
        .map(|m| Ok(enumerate_structures(kind, m)?.collect()))
        .collect()
}

/// Every valuation of `vars` over `regions` regions, in binary counting order.
fn all_valuations(vars: &[&str], regions: usize) -> Vec<Valuation> {
    let bits = vars.len() * regions;
    (0..1u64 << bits)
        .map(|mask| {
            let mut v = Valuation::new();
            for (k, var) in vars.iter().enumerate() {
                v.set(var, (0..regions).filter(|i| mask >> (k * regions + i) & 1 == 1));
            }
            v
        })
        .collect()
}

// 1

pub(super) fn composition_tables(_cfg: &SuiteConfig) -> CriterionReport {
    table_fidelity(table(Kind::Rcc8), table(Kind::Rcc5))
}

/// Compares two tables with the printed transcriptions and audits them. A
/// cell may differ from print only when it is a listed erratum, whose
/// printed value must make the printed table fail the audit.
pub fn table_fidelity(rcc8: &CompositionTable, rcc5: &CompositionTable) -> CriterionReport {
    let mut t = Tally::new();
    let e8 = fixtures::entries(&fixtures::RCC8_COLUMNS, &fixtures::RCC8_ROWS);
    let e5 = fixtures::entries(&fixtures::RCC5_COLUMNS, &fixtures::RCC5_ROWS);
    compare_table(&mut t, Kind::Rcc8, rcc8, &e8, &[]);
    compare_table(&mut t, Kind::Rcc5, rcc5, &e5, &fixtures::RCC5_ERRATA);
    t.finish(1)
}

fn compare_table(
    t: &mut Tally,
    kind: Kind,
    got: &CompositionTable,
    printed: &[(&str, &str, &str)],
    errata: &[Erratum],
) {
    if got.kind() != kind {
        t.fail(format!("expected a {kind} table, got {}", got.kind()));
        return;
    }
    let corrected: Vec<(&str, &str, &str)> = printed
        .iter()
        .map(|&(r, c, e)| {
            let fix = errata.iter().find(|x| x.0 == r && x.1 == c);
            (r, c, fix.map_or(e, |x| x.3))
        })
        .collect();
    let (as_printed, want) = match (
        CompositionTable::from_entries(kind, printed),
        CompositionTable::from_entries(kind, &corrected),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            t.fail(format!("{kind} transcription: {e}"));
            return;
        }
    };
    let mut verbatim = 0;
    for &(r, c, _) in printed {
        let (r1, r2): (BaseRelation, BaseRelation) = match (r.parse(), c.parse()) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                t.fail(format!("{kind} transcription names ({r},{c})"));
                continue;
            }
        };
        let (g, w) = (got.get(r1, r2), want.get(r1, r2));
        t.check(g == w, || format!("{kind} ({r},{c}) is {g}, expected {w}"));
        if g == as_printed.get(r1, r2) {
            verbatim += 1;
        }
    }
    for &(r, c, was, now) in errata {
        let printed_audit = meta_check(&as_printed);
        t.check(!printed_audit.is_empty(), || {
            format!("{kind} ({r},{c}) printed as {{{was}}} passes the audit, so it is no erratum")
        });
        t.note(format!(
            "{kind} ({r},{c}) printed as {{{was}}} fails the converse audit, {{{now}}} expected"
        ));
    }
    let audit = meta_check(got);
    t.check(audit.is_empty(), || {
        let v: Vec<String> = audit.iter().map(|x| x.to_string()).collect();
        format!("{kind} audit: {}", v.join(", "))
    });
    t.note(format!("{kind} {verbatim}/{} cells as printed", printed.len()));
}

// 2

pub(super) fn geometry_soundness(cfg: &SuiteConfig) -> CriterionReport {
    let mut rng = rng(cfg, 2);
    let n = cfg.level.pick(2_000, 10_000);
    let mut t = Tally::new();
    for _ in 0..n {
        let r: [IntervalUnion; 3] = std::array::from_fn(|_| gen::interval_union(&mut rng, 4));
        region_triple(&mut t, "intervals", &r, |a, b| Ok(interval_facts(a, b)));
    }
    for _ in 0..n {
        let r: [HyperRect; 3] = std::array::from_fn(|_| gen::hyper_rect(&mut rng, 2, 6));
        region_triple(&mut t, "boxes", &r, rect_facts);
    }
    for _ in 0..n {
        let frame = ForkFrame {
            forks: rng.gen_range(1..=4),
        };
        let r = std::array::from_fn(|_| gen::fork_region(&mut rng, frame.forks));
        region_triple(&mut t, "forks", &r, |a, b| fork_facts(&frame, a, b));
    }
    t.note(format!("{n} triples per geometry"));
    t.finish(2)
}

/// Checks that exactly one relation holds for each ordered pair, that
/// reversed pairs get converse relations, and that every composition
/// (RCC8 and RCC5) contains the relation closing the triangle.
fn region_triple<R: fmt::Debug>(
    t: &mut Tally,
    label: &str,
    r: &[R; 3],
    facts: impl Fn(&R, &R) -> Result<Facts, GeometryError>,
) {
    let mut rel = [[BaseRelation::Eq; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            match facts(&r[i], &r[j]) {
                Ok(f) => {
                    let m = f.matching();
                    t.check(m.len() == 1, || {
                        format!("{label}: {:?} and {:?} satisfy {m:?}", r[i], r[j])
                    });
                    match m.first() {
                        Some(&x) => rel[i][j] = x,
                        None => return,
                    }
                }
                Err(e) => {
                    t.fail(format!("{label}: {e}"));
                    return;
                }
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            t.check(rel[j][i] == rel[i][j].converse(), || {
                format!("{label}: {:?} {} {:?} but reversed {}", r[i], rel[i][j], r[j], rel[j][i])
            });
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let (a, b, c) = (rel[i][j], rel[j][k], rel[i][k]);
                t.check(compose_in(Kind::Rcc8, a, b).contains(c), || {
                    format!("{label}: {c} not in {a};{b} for {:?} {:?} {:?}", r[i], r[j], r[k])
                });
                let (a5, b5, c5) = (a.coarsen(), b.coarsen(), c.coarsen());
                t.check(compose_in(Kind::Rcc5, a5, b5).contains(c5), || {
                    format!("{label}: {c5} not in {a5};{b5} for {:?} {:?} {:?}", r[i], r[j], r[k])
                });
            }
        }
    }
}

// 3

/// Atomic networks on three variables over the relations other than `eq`,
/// then random networks on four variables of mixed density.
pub fn solver_corpus(cfg: &SuiteConfig) -> Vec<ConstraintNetwork> {
    let rels: Vec<BaseRelation> = Kind::Rcc8.non_eq().collect();
    let one = |r| RelationSet::singleton(Kind::Rcc8, r);
    let mut out = Vec::new();
    for &a in &rels {
        for &b in &rels {
            for &c in &rels {
                let mut net = ConstraintNetwork::rcc8(&["x", "y", "z"]).expect("distinct names");
                for (i, j, r) in [(0, 1, a), (0, 2, b), (1, 2, c)] {
                    net.constrain(i, j, one(r)).expect("non-empty");
                }
                out.push(net);
            }
        }
    }
    let mut rng = rng(cfg, 3);
    let count = cfg.level.pick(100, 500);
    for i in 0..count {
        let density = [0.15, 0.3, 0.5][i % 3];
        out.push(gen::network(&mut rng, Kind::Rcc8, 4, density));
    }
    out
}

/// Whether some structure from the catalog models the network: a map from
/// variables onto the regions of a structure of size at most the number of
/// variables under which every constraint holds.
pub fn brute_force_sat(net: &ConstraintNetwork, catalog: &[Vec<RegionStructure>]) -> bool {
    let n = net.len();
    let holds = |s: &RegionStructure, f: &[usize]| {
        (0..n).all(|i| (i + 1..n).all(|j| net.get(i, j).contains(s.rel(f[i], f[j]))))
    };
    for m in 1..=n.min(catalog.len()) {
        for s in &catalog[m - 1] {
            if m == n {
                // Structures are enumerated with labeled regions, so every
                // bijection is covered by the identity on some structure.
                let id: Vec<usize> = (0..n).collect();
                if holds(s, &id) {
                    return true;
                }
                continue;
            }
            let mut f = vec![0usize; n];
            loop {
                let onto = (0..m).all(|r| f.contains(&r));
                if onto && holds(s, &f) {
                    return true;
                }
                let mut k = 0;
                while k < n && f[k] == m - 1 {
                    f[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
                f[k] += 1;
            }
        }
    }
    false
}

pub(super) fn solver_oracle(cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    let catalog = match structure_catalog(Kind::Rcc8, 4) {
        Ok(c) => c,
        Err(e) => {
            t.fail(e.to_string());
            return t.finish(3);
        }
    };
    let (mut sat, mut unsat) = (0, 0);
    for net in solver_corpus(cfg) {
        let got = satisfiable_rs(&net);
        let want = brute_force_sat(&net, &catalog);
        t.check(got.is_sat() == want, || {
            format!("{}: solver {}, brute force {want}", network_text(&net), got.is_sat())
        });
        if let Satisfiability::Sat(sol) = &got {
            let n = net.len();
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let r = sol.structure.rel(sol.region_of[i], sol.region_of[j]);
                    net.get(i, j).contains(r)
                })
            });
            t.check(ok, || format!("{}: refinement violates a constraint", network_text(&net)));
        }
        if want {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    t.note(format!(
        "{sat} satisfiable, {unsat} unsatisfiable, {} structures of size 4",
        catalog[3].len()
    ));
    t.finish(3)
}

// 4

pub(super) fn realization_round_trip(cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    let (mut realized, mut max_pieces) = (0, 0);
    for net in solver_corpus(cfg) {
        if !satisfiable_rs(&net).is_sat() {
            continue;
        }
        match realize(&net) {
            Ok(Realized::Model(r)) => {
                realized += 1;
                let names = r.solution.structure.regions().to_vec();
                let same = induced(&r.regions, Some(names)).is_ok_and(|s| s == r.solution.structure);
                t.check(same, || format!("{}: induced matrix differs", network_text(&net)));
                let vars = r.by_variable();
                for i in 0..net.len() {
                    max_pieces = max_pieces.max(vars[i].pieces().len());
                    for j in i + 1..net.len() {
                        let got = rel_intervals(vars[i], vars[j]);
                        t.check(net.get(i, j).contains(got), || {
                            format!("{}: v{} {got} v{}", network_text(&net), i + 1, j + 1)
                        });
                    }
                }
            }
            Ok(Realized::Unsat) => t.fail(format!("{}: realize reports unsat", network_text(&net))),
            Err(e) => t.fail(format!("{}: {e}", network_text(&net))),
        }
    }
    t.note(format!("{realized} networks realized, at most {max_pieces} pieces per region"));
    t.finish(4)
}

// 5

/// Compares `f` with its modal translation at every region of every
/// structure under every valuation of `vars`.
fn fo_against_modal(
    t: &mut Tally,
    f: &Fo2,
    structures: &[(&RegionStructure, Checker)],
    valuations: &[Vec<Valuation>],
) {
    let compiled = match fo2_to_modal(f, Kind::Rcc8).map_err(|e| e.to_string()).and_then(|m| {
        Compiled::new(&m, Kind::Rcc8).map_err(|e| e.to_string())
    }) {
        Ok(c) => c,
        Err(e) => {
            t.fail(format!("{f}: {e}"));
            return;
        }
    };
    for (s, checker) in structures {
        for v in &valuations[s.len() - 1] {
            let ext = match checker.extension(&compiled, v) {
                Ok(x) => x,
                Err(e) => return t.fail(format!("{f}: {e}")),
            };
            for x in 0..s.len() {
                match eval_fo(s, v, Assignment::x(x), f) {
                    Ok(want) => t.check(ext.contains(x) == want, || {
                        format!("{f} at r{} of {:?} under {v:?}", x + 1, s.matrix())
                    }),
                    Err(e) => return t.fail(format!("{f}: {e}")),
                }
            }
        }
    }
}

pub(super) fn fo2_translation(cfg: &SuiteConfig) -> CriterionReport {
    let mut rng = rng(cfg, 5);
    let mut t = Tally::new();
    let catalog = match structure_catalog(Kind::Rcc8, 3) {
        Ok(c) => c,
        Err(e) => {
            t.fail(e.to_string());
            return t.finish(5);
        }
    };
    let structures: Vec<(&RegionStructure, Checker)> =
        catalog.iter().flatten().map(|s| (s, Checker::new(s))).collect();
    let pq = ["p", "q"];
    let two: Vec<Vec<Valuation>> = (1..=3).map(|m| all_valuations(&pq, m)).collect();

    let count = cfg.level.pick(50, 200);
    for _ in 0..count {
        let f = gen::fo2(&mut rng, Kind::Rcc8, &pq, &[Var2::X], 3);
        fo_against_modal(&mut t, &f, &structures, &two);
    }
    for n in 1..=3 {
        let names: Vec<String> = (0..=n).map(|i| format!("p_{i}")).collect();
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();
        let vals: Vec<Vec<Valuation>> = (1..=3).map(|m| all_valuations(&vars, m)).collect();
        fo_against_modal(&mut t, &succinctness_formula(n), &structures, &vals);
    }
    let fo_checks = t.checked;

    let pairs = cfg.level.pick(100, 500);
    for _ in 0..pairs {
        let f = gen::formula(&mut rng, Kind::Rcc8, &pq, 3);
        let (s, _) = structures.choose(&mut rng).expect("non-empty catalog");
        let v = gen::valuation(&mut rng, &pq, s.len());
        let (fo, ext) = match (modal_to_fo(&f, Kind::Rcc8), extension(s, &v, &f)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) => {
                t.fail(format!("{f}: {e}"));
                continue;
            }
            (_, Err(e)) => {
                t.fail(format!("{f}: {e}"));
                continue;
            }
        };
        for x in 0..s.len() {
            match eval_fo(s, &v, Assignment::x(x), &fo) {
                Ok(want) => t.check(ext.contains(x) == want, || format!("{f} at r{}", x + 1)),
                Err(e) => t.fail(format!("{fo}: {e}")),
            }
        }
    }
    t.note(format!(
        "{count} random formulas and 3 succinctness formulas over {} structures ({fo_checks} checks), {pairs} modal pairs",
        structures.len()
    ));
    t.finish(5)
}

// 6

fn random_axiom<R: Rng>(rng: &mut R, schema: SchemaId) -> Axiom {
    let vars = ["p", "q", "i"];
    let rels = Kind::Rcc8.relations();
    let mut phi = || gen::formula(rng, Kind::Rcc8, &vars, 2);
    let phi1 = phi();
    let phi2 = phi();
    let r = *rels.choose(rng).expect("non-empty");
    let nominal = "i".to_string();
    match schema {
        SchemaId::K => Axiom::K { r, phi: phi1, psi: phi2 },
        SchemaId::Disjoint => {
            let mut pair = rels.choose_multiple(rng, 2);
            let r1 = *pair.next().expect("two relations");
            let r2 = *pair.next().expect("two relations");
            Axiom::Disjoint { r1, r2, nominal }
        }
        SchemaId::Composition => Axiom::Composition {
            r1: r,
            r2: *rels.choose(rng).expect("non-empty"),
            phi: phi1,
        },
        SchemaId::Symmetry => {
            let symmetric: Vec<BaseRelation> = rels.iter().copied().filter(|r| r.converse() == *r).collect();
            Axiom::Symmetry {
                r: *symmetric.choose(rng).expect("dc is symmetric"),
                phi: phi1,
            }
        }
        SchemaId::Inverse => Axiom::Inverse { r, phi: phi1 },
        SchemaId::UReflexive => Axiom::UReflexive { phi: phi1 },
        SchemaId::UTransitive => Axiom::UTransitive { phi: phi1 },
        SchemaId::USymmetric => Axiom::USymmetric { phi: phi1 },
        SchemaId::EqIdentity => Axiom::EqIdentity { phi: phi1 },
        SchemaId::NominalExists => Axiom::NominalExists { nominal },
        SchemaId::NominalUnique => Axiom::NominalUnique { nominal, phi: phi1 },
    }
}

pub(super) fn axiom_soundness(cfg: &SuiteConfig) -> CriterionReport {
    let mut rng = rng(cfg, 6);
    let mut t = Tally::new();
    let count = cfg.level.pick(20, 50);
    let structures: Vec<(RegionStructure, Checker)> = (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            let s = gen::structure(&mut rng, Kind::Rcc8, n);
            let c = Checker::new(&s);
            (s, c)
        })
        .collect();
    let per = cfg.level.pick(100, 500);
    for schema in SchemaId::ALL {
        for _ in 0..per {
            let ax = random_axiom(&mut rng, schema);
            let compiled = match axiom_instance(&ax).and_then(|f| Compiled::new(&f, Kind::Rcc8)) {
                Ok(c) => c,
                Err(e) => {
                    t.fail(format!("{schema}: {e}"));
                    continue;
                }
            };
            for (s, checker) in &structures {
                let mut v = gen::valuation(&mut rng, &["p", "q"], s.len());
                v.set("i", [rng.gen_range(0..s.len())]);
                match checker.extension(&compiled, &v) {
                    Ok(ext) => t.check(ext.count_ones(..) == s.len(), || {
                        format!("{schema} instance {ax:?} fails on {:?} under {v:?}", s.matrix())
                    }),
                    Err(e) => t.fail(format!("{schema}: {e}")),
                }
            }
        }
    }
    t.note(format!(
        "{per} instances of each of {} schemata on {count} structures",
        SchemaId::ALL.len()
    ));
    t.finish(6)
}

// 7

pub(super) fn domino_ready_witness(_cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    let n = 50;
    match domready_witness(n).and_then(|w| domino_ready_violations(&w)) {
        Ok(v) => {
            let nx = 2 * n as u64;
            let ny = n as u64;
            // Pairs examined by the five properties.
            let pairs = (nx - 1) + (nx - 1) * (nx - 2) / 2 + ny + ny * ny + ny * (ny - 1) / 2;
            t.checked = pairs - v.len() as u64;
            for x in v {
                t.check(false, || x);
            }
            t.note(format!("{nx} nested intervals and {ny} linking intervals"));
        }
        Err(e) => t.fail(e.to_string()),
    }
    t.finish(7)
}

// 8

/// Systems that tile some small triangle.
pub(crate) fn tiling_systems() -> Vec<(&'static str, DominoSystem)> {
    let build = |tiles: &[&str], h: &[(&str, &str)], v: &[(&str, &str)], s0: &str, f0: &str| {
        DominoSystem::new(tiles.iter().copied(), h, v)
            .and_then(|d| d.with_start(s0, f0))
            .expect("well-formed fixture")
    };
    vec![
        ("single", build(&["t"], &[("t", "t")], &[("t", "t")], "t", "t")),
        (
            "start-then-fill",
            build(
                &["s", "f"],
                &[("s", "f"), ("f", "f")],
                &[("s", "f"), ("f", "f")],
                "s",
                "f",
            ),
        ),
        (
            "checkerboard",
            build(
                &["w", "k", "u"],
                &[("w", "k"), ("k", "w")],
                &[("w", "k"), ("k", "w")],
                "w",
                "k",
            ),
        ),
    ]
}

/// A system without tilings: nothing may stand right of anything, but the
/// final tile differs from the start tile, so the triangle must extend
/// beyond the origin.
pub(crate) fn refuted_system() -> DominoSystem {
    DominoSystem::new(["s", "f"], &[], &[("s", "f"), ("f", "f")])
        .and_then(|d| d.with_start("s", "f"))
        .expect("well-formed fixture")
}

pub(super) fn finite_tiling_reduction(_cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    for (name, d) in tiling_systems() {
        let phi = match phi_d_fin(&d) {
            Ok(f) => f,
            Err(e) => {
                t.fail(format!("{name}: {e}"));
                continue;
            }
        };
        let unguarded = phi_d_fin_unguarded(&d).expect("start and final tiles are set");
        let mut found = Vec::new();
        for k in 1..=3 {
            let tiling = match tile_triangle(&d, k) {
                Ok(Some(x)) => x,
                Ok(None) => continue,
                Err(e) => {
                    t.fail(format!("{name}: {e}"));
                    continue;
                }
            };
            let bad = tiling.violations(&d);
            t.check(bad.is_empty(), || format!("{name} k={k}: {}", bad.join(", ")));
            let tm = match model_from_tiling(&tiling, triangle_size(k)) {
                Ok(m) => m,
                Err(e) => {
                    t.fail(format!("{name} k={k}: {e}"));
                    continue;
                }
            };
            let s = &tm.model.structure;
            let v = &tm.model.valuation;
            let violations = validate(s.kind(), &s.matrix());
            t.check(violations.is_empty(), || format!("{name} k={k}: invalid structure"));
            match check(s, v, tm.start, &phi) {
                Ok(ok) => t.check(ok, || format!("{name} k={k}: reduction fails at r1")),
                Err(e) => t.fail(format!("{name} k={k}: {e}")),
            }
            let plain = check(s, v, tm.start, &unguarded).unwrap_or(true);
            found.push(format!("k={k} ({} regions, unguarded variant {plain})", s.len()));
        }
        t.check(!found.is_empty(), || format!("{name}: no triangle with k <= 3 tiled"));
        t.note(format!("{name}: {}", found.join(", ")));
    }

    let d = refuted_system();
    for k in 0..=4 {
        match tile_triangle(&d, k) {
            Ok(x) => t.check(x.is_none(), || format!("refuted system tiles k={k}")),
            Err(e) => t.fail(e.to_string()),
        }
    }
    match phi_d_fin(&d).map_err(|e| e.to_string()).and_then(|f| {
        bounded_sat(&f, Kind::Rcc8, 5).map_err(|e| e.to_string())
    }) {
        Ok(w) => t.check(w.is_none(), || "refuted system has a model with at most 5 regions".into()),
        Err(e) => t.fail(e),
    }
    t.note("refuted system: no tiling for k <= 4, no model with at most 5 regions".into());
    t.finish(8)
}

// 9

/// Worlds where `f` holds as a bit mask over `worlds`, computed bottom-up
/// from the variable masks.
fn s53_mask(f: &S53, worlds: &[World], vars: &[(&str, u64)]) -> u64 {
    match f {
        S53::Var(v) => vars.iter().find(|(name, _)| name == v).map_or(0, |&(_, m)| m),
        S53::Not(a) => !s53_mask(a, worlds, vars) & ((1u64 << worlds.len()) - 1),
        S53::And(a, b) => s53_mask(a, worlds, vars) & s53_mask(b, worlds, vars),
        S53::Dia(i, a) => {
            let inner = s53_mask(a, worlds, vars);
            let other = |w: World| match i {
                1 => (w.1, w.2),
                2 => (w.0, w.2),
                _ => (w.0, w.1),
            };
            let mut out = 0;
            for (k, &w) in worlds.iter().enumerate() {
                let seen = worlds
                    .iter()
                    .enumerate()
                    .any(|(j, &u)| inner >> j & 1 == 1 && other(u) == other(w));
                if seen {
                    out |= 1 << k;
                }
            }
            out
        }
    }
}

pub(super) fn s5_cube_encoding(cfg: &SuiteConfig) -> CriterionReport {
    let mut rng = rng(cfg, 9);
    let mut t = Tally::new();
    let vars = ["p", "q"];
    let formulas: Vec<S53> = (0..100).map(|_| gen::s53(&mut rng, &vars, 3)).collect();
    let mut compiled = Vec::new();
    for f in &formulas {
        match sharp_translate(f)
            .map_err(|e| e.to_string())
            .and_then(|g| Compiled::new(&g, Kind::Rcc5).map_err(|e| e.to_string()))
        {
            Ok(c) => compiled.push((f, c)),
            Err(e) => t.fail(format!("{f}: {e}")),
        }
    }
    let chi = Compiled::new(&chi_rcc5(), Kind::Rcc5).expect("fixed formula compiles");
    let base = S53Model::new([2, 2, 2]).expect("non-empty coordinates");
    let worlds = base.worlds();
    let template = match model_from_s53(&base) {
        Ok(e) => e,
        Err(e) => {
            t.fail(e.to_string());
            return t.finish(9);
        }
    };
    let checker = Checker::new(&template.model.structure);
    let n = worlds.len();
    let masks: Vec<u64> = match cfg.level {
        super::Level::Full => (0..1u64 << (2 * n)).collect(),
        super::Level::Quick => (0..2048).map(|_| rng.gen_range(0..1u64 << (2 * n))).collect(),
    };
    for &mask in &masks {
        let mut w = base.clone();
        for (k, var) in vars.iter().enumerate() {
            let ext = (0..n).filter(|i| mask >> (k * n + i) & 1 == 1).map(|i| worlds[i]);
            w.set(var, ext).expect("worlds of the model");
        }
        let emb = match model_from_s53(&w) {
            Ok(e) => e,
            Err(e) => {
                t.fail(e.to_string());
                continue;
            }
        };
        t.check(emb.model.structure == template.model.structure, || {
            "the structure depends on the valuation".into()
        });
        let low = (1u64 << n) - 1;
        let masks_of: [(&str, u64); 2] = [(vars[0], mask & low), (vars[1], mask >> n & low)];
        let v = &emb.model.valuation;
        match checker.extension(&chi, v) {
            Ok(ext) => t.check(ext.count_ones(..) == emb.model.structure.len(), || {
                format!("encoding axioms fail under valuation {mask:#x}")
            }),
            Err(e) => t.fail(e.to_string()),
        }
        for (f, c) in &compiled {
            let ext = match checker.extension(c, v) {
                Ok(x) => x,
                Err(e) => {
                    t.fail(e.to_string());
                    continue;
                }
            };
            let want = s53_mask(f, &worlds, &masks_of);
            for (k, &world) in worlds.iter().enumerate() {
                let got = ext.contains(emb.triple[&world]);
                let expected = want >> k & 1 == 1;
                t.check(got == expected, || format!("{f} at {world:?} under valuation {mask:#x}"));
                if mask % 64 == 0 {
                    let library = s53_check(&w, world, f).expect("world of the model");
                    t.check(library == expected, || {
                        format!("s53_check disagrees on {f} at {world:?} under valuation {mask:#x}")
                    });
                }
            }
        }
    }
    t.note(format!(
        "{} valuations, {} formulas, {} regions",
        masks.len(),
        formulas.len(),
        template.model.structure.len()
    ));
    t.finish(9)
}

// 10

fn grid_boxes(dims: usize) -> Vec<HyperRect> {
    let mut sides = Vec::new();
    for a in 0..=4 {
        for b in a + 1..=4 {
            sides.push((q(a), q(b)));
        }
    }
    let mut out: Vec<Vec<(Rational, Rational)>> = vec![Vec::new()];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                sides.iter().map(move |s| {
                    let mut p = prefix.clone();
                    p.push(*s);
                    p
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|d| HyperRect::new(d).expect("lo < hi"))
        .collect()
}

fn corners(r: &HyperRect) -> Vec<Rational> {
    r.dims().iter().flat_map(|(a, b)| [*a, *b]).collect()
}

pub(super) fn fl4_translation(cfg: &SuiteConfig) -> CriterionReport {
    let mut rng = rng(cfg, 10);
    let mut t = Tally::new();
    for dims in 1..=2 {
        let boxes = grid_boxes(dims);
        for a in &boxes {
            for b in &boxes {
                let want = match rel_rects(a, b) {
                    Ok(r) => r,
                    Err(e) => {
                        t.fail(e.to_string());
                        continue;
                    }
                };
                for &r in Kind::Rcc8.relations() {
                    match phi_r_holds(r, &corners(a), &corners(b)) {
                        Ok(got) => t.check(got == (r == want), || {
                            format!("{r} on {:?} {:?}, geometry says {want}", a.dims(), b.dims())
                        }),
                        Err(e) => t.fail(e.to_string()),
                    }
                }
            }
        }
    }
    let grid_checks = t.checked;

    let count = cfg.level.pick(100, 300);
    let pq = ["p", "q"];
    for round in 0..count {
        let dims = 1 + round % 2;
        let size = rng.gen_range(2..=4);
        let mut rects: Vec<HyperRect> = Vec::new();
        while rects.len() < size {
            let r = gen::hyper_rect(&mut rng, dims, 4);
            if !rects.contains(&r) {
                rects.push(r);
            }
        }
        let f = gen::formula(&mut rng, Kind::Rcc8, &pq, 2);
        let v = gen::valuation(&mut rng, &pq, size);
        let outcome = (|| -> Result<(), String> {
            let s = induced(&rects, None).map_err(|e| e.to_string())?;
            let model = Fl4Model::from_rects(&rects, &v).map_err(|e| e.to_string())?;
            let global = modal_to_fl4(&f, dims).map_err(|e| e.to_string())?;
            let want = valid_in(&s, &v, &f).map_err(|e| e.to_string())?;
            let got = eval_fl4(&model, &global).map_err(|e| e.to_string())?;
            t.check(got == want, || format!("{f} on {rects:?}: sentence {got}, model checker {want}"));
            let local = fl4_local(&f, dims).map_err(|e| e.to_string())?;
            let ext = extension(&s, &v, &f).map_err(|e| e.to_string())?;
            for i in 0..size {
                let got = eval_fl4_at(&model, i, &local).map_err(|e| e.to_string())?;
                t.check(got == ext.contains(i), || format!("{f} at box {i} of {rects:?}"));
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            t.fail(format!("{f}: {e}"));
        }
    }
    t.note(format!("{grid_checks} grid relation checks, {count} random formula and box models"));
    t.finish(10)
}

// 11

pub(super) fn regression_corpus(_cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    let f = loeb();
    let mut structures = 0;
    match structure_catalog(Kind::Rcc8, 3) {
        Ok(catalog) => {
            for s in catalog.iter().flatten() {
                structures += 1;
                for v in all_valuations(&["p"], s.len()) {
                    match valid_in(s, &v, &f) {
                        Ok(ok) => t.check(ok, || format!("{f} fails on {:?} under {v:?}", s.matrix())),
                        Err(e) => t.fail(e.to_string()),
                    }
                }
            }
        }
        Err(e) => t.fail(e.to_string()),
    }
    t.note(format!("proper-part induction valid on {structures} structures"));

    let negated = Formula::not(common_superregion());
    match bounded_sat(&negated, Kind::Rcc8, 3) {
        Ok(Some(w)) => {
            t.check(w.structure.len() <= 3, || "countermodel too large".into());
            let confirmed = check(&w.structure, &w.valuation, w.region, &negated) == Ok(true);
            t.check(confirmed, || "reported countermodel does not refute the formula".into());
            t.note(format!("common superregion refuted with {} regions", w.structure.len()));
        }
        Ok(None) => t.fail("no countermodel to the common superregion formula".into()),
        Err(e) => t.fail(e.to_string()),
    }

    let ec3 = ec_k(3);
    t.check(satisfiable_rs(&ec3).is_sat(), || "three touching regions unsatisfiable".into());
    t.check(grid_interval_realization(&ec3, 6).is_none(), || {
        "three pairwise touching intervals on the 0..6 grid".into()
    });
    t.check(grid_interval_realization(&ec_k(2), 6).is_some(), || {
        "two touching intervals have no grid realization".into()
    });
    t.finish(11)
}
