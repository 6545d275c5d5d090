use topomodal::algebra::{BaseRelation, Kind, RelationSet};
use topomodal::geometry::rel_intervals;
use topomodal::logic::{check, valid_in};
use topomodal::reductions::{
    common_superregion, harbor_example, loeb, marker_machine, model_from_s53, model_from_tiling,
    phi_d_fin, s53_check, s53_reduction, tile_triangle, tm_to_domino, triangle_size, DominoSystem,
    S53Model, S53,
};
use topomodal::solver::{ec_k, realize, satisfiable_rs, ConstraintNetwork, Realized, Satisfiability};
use topomodal::structures::enumerate_structures;
use topomodal::suite::{run_criterion, Level, SuiteConfig};

fn one(r: BaseRelation) -> RelationSet {
    RelationSet::singleton(Kind::Rcc8, r)
}

#[test]
fn realized_intervals_meet_every_constraint() {
    let mut net = ConstraintNetwork::rcc8(&["a", "b", "c", "d"]).unwrap();
    net.constrain(0, 1, one(BaseRelation::Ntpp)).unwrap();
    net.constrain(1, 2, one(BaseRelation::Ec)).unwrap();
    net.constrain(
        2,
        3,
        RelationSet::from_relations(Kind::Rcc8, [BaseRelation::Po, BaseRelation::Tppi]).unwrap(),
    )
    .unwrap();
    let Realized::Model(r) = realize(&net).unwrap() else {
        panic!("network is satisfiable");
    };
    let regions = r.by_variable();
    for (i, j, allowed) in net.constraints() {
        assert!(allowed.contains(rel_intervals(regions[i], regions[j])));
    }
}

#[test]
fn contradictory_chain_is_unsat_everywhere() {
    let mut net = ConstraintNetwork::rcc8(&["a", "b", "c"]).unwrap();
    net.constrain(0, 1, one(BaseRelation::Tpp)).unwrap();
    net.constrain(1, 2, one(BaseRelation::Tpp)).unwrap();
    net.constrain(0, 2, one(BaseRelation::Dc)).unwrap();
    assert_eq!(satisfiable_rs(&net), Satisfiability::Unsat);
    assert_eq!(realize(&net).unwrap(), Realized::Unsat);
}

#[test]
fn ec_networks_are_satisfiable() {
    for k in 1..=5 {
        assert!(satisfiable_rs(&ec_k(k)).is_sat(), "ec[{k}]");
    }
}

#[test]
fn loeb_holds_on_small_finite_structures() {
    let f = loeb();
    for n in 1..=3 {
        for s in enumerate_structures(Kind::Rcc8, n).unwrap() {
            for mask in 0..1u32 << n {
                let v = topomodal::structures::Valuation::new()
                    .with("p", (0..n).filter(|i| mask >> i & 1 == 1));
                assert!(valid_in(&s, &v, &f).unwrap());
            }
        }
    }
}

#[test]
fn harbor_model_verdicts() {
    let h = harbor_example();
    let (s, v) = (&h.model.structure, &h.model.valuation);
    for f in &h.theory {
        assert!(valid_in(s, v, f).unwrap(), "{f}");
    }
    assert!(valid_in(s, v, &h.consequence).unwrap());
    assert!(!valid_in(s, v, &h.non_consequence).unwrap());
}

#[test]
fn common_superregion_fails_on_two_disjoint_regions() {
    let two = enumerate_structures(Kind::Rcc8, 2)
        .unwrap()
        .find(|s| s.rel(0, 1) == BaseRelation::Dc)
        .unwrap();
    let v = topomodal::structures::Valuation::new().with("p", [0]).with("q", [1]);
    assert!(!valid_in(&two, &v, &common_superregion()).unwrap());
}

#[test]
fn finite_tiling_reduction_round_trip() {
    let d = DominoSystem::new(["s", "f"], &[("s", "f"), ("f", "f")], &[("s", "f"), ("f", "f")])
        .unwrap()
        .with_start("s", "f")
        .unwrap();
    let phi = phi_d_fin(&d).unwrap();
    for k in 1..=2 {
        let t = tile_triangle(&d, k).unwrap().unwrap();
        let m = model_from_tiling(&t, triangle_size(k)).unwrap();
        assert!(check(&m.model.structure, &m.model.valuation, m.start, &phi).unwrap());
    }
}

#[test]
fn marker_machine_runs_through_the_whole_chain() {
    let d = tm_to_domino(&marker_machine()).unwrap();
    let t = (1..=12).find_map(|k| tile_triangle(&d, k).unwrap()).unwrap();
    assert!(t.violations(&d).is_empty());
    let phi = phi_d_fin(&d).unwrap();
    assert!(phi.size() > 0);
}

#[test]
fn cube_embedding_agrees_with_cube_semantics() {
    let mut m = S53Model::new([2, 1, 2]).unwrap();
    m.set("p", [(0, 0, 0), (1, 0, 1)]).unwrap();
    let e = model_from_s53(&m).unwrap();
    let f = S53::and(S53::var("p"), S53::dia(3, S53::not(S53::var("p"))));
    let reduced = s53_reduction(&f).unwrap();
    let (s, v) = (&e.model.structure, &e.model.valuation);
    for (&w, &region) in &e.triple {
        let expect = s53_check(&m, w, &f).unwrap();
        assert_eq!(check(s, v, region, &reduced).unwrap(), expect, "{w:?}");
    }
}

#[test]
fn suite_counts_are_reproducible() {
    let cfg = SuiteConfig { seed: 7, level: Level::Quick };
    for id in [2, 3, 7] {
        let a = run_criterion(id, &cfg).unwrap();
        let b = run_criterion(id, &cfg).unwrap();
        assert!(a.passed, "{}", a.tsv());
        assert_eq!((a.checked, a.failures, &a.notes), (b.checked, b.failures, &b.notes));
    }
    assert!(run_criterion(12, &cfg).is_err());
    assert_eq!("quick".parse::<Level>().unwrap(), Level::Quick);
    assert!("fast".parse::<Level>().is_err());
}
