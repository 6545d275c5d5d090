use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use topomodal::algebra::Kind;
use topomodal::logic::{bounded_sat, check, extension, parse, sat_in, valid_in, Formula, Modality};
use topomodal::reductions::{
    lambda, lambda_inv, s53_check, tile_triangle, triangle_size, DominoSystem, S53Model, S53,
};
use topomodal::structures::Valuation;
use topomodal::suite::{gen, structure_catalog};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn kind_of(rcc5: bool) -> Kind {
    if rcc5 {
        Kind::Rcc5
    } else {
        Kind::Rcc8
    }
}

/// Every valuation of `vars` on `n` regions.
fn valuations(vars: &[&str], n: usize) -> Vec<Valuation> {
    (0..1u32 << (vars.len() * n))
        .map(|mask| {
            let mut v = Valuation::new();
            for (k, var) in vars.iter().enumerate() {
                v.set(var, (0..n).filter(|i| mask >> (k * n + i) & 1 == 1));
            }
            v
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_formulas_parse_back(seed: u64, rcc5: bool, depth in 0usize..4) {
        let kind = kind_of(rcc5);
        let f = gen::formula(&mut rng(seed), kind, &["p", "q", "r"], depth);
        let text = f.to_string();
        let back = parse(&text, kind).unwrap();
        prop_assert_eq!(back.to_string(), text);
        let s = gen::structure(&mut rng(seed ^ 1), kind, 3);
        let v = gen::valuation(&mut rng(seed ^ 2), &["p", "q", "r"], 3);
        prop_assert_eq!(extension(&s, &v, &back).unwrap(), extension(&s, &v, &f).unwrap());
    }

    #[test]
    fn universal_box_is_validity(seed: u64, rcc5: bool, n in 1usize..6) {
        let kind = kind_of(rcc5);
        let f = gen::formula(&mut rng(seed), kind, &["p", "q"], 2);
        let s = gen::structure(&mut rng(seed ^ 1), kind, n);
        let v = gen::valuation(&mut rng(seed ^ 2), &["p", "q"], n);
        let valid = valid_in(&s, &v, &f).unwrap();
        let boxed = extension(&s, &v, &Formula::boxed(Modality::U, f)).unwrap();
        prop_assert_eq!(boxed.count_ones(..), if valid { n } else { 0 });
    }

    #[test]
    fn nominal_means_exactly_one_region(seed: u64, rcc5: bool, n in 1usize..6) {
        let kind = kind_of(rcc5);
        let s = gen::structure(&mut rng(seed), kind, n);
        let v = gen::valuation(&mut rng(seed ^ 1), &["p"], n);
        let count = v.get("p").map_or(0, |e| e.len());
        let nom = Formula::nom(Formula::var("p"));
        prop_assert_eq!(valid_in(&s, &v, &nom).unwrap(), count == 1);
        prop_assert_eq!(sat_in(&s, &v, &nom).unwrap().is_some(), count == 1);
    }

    #[test]
    fn lambda_round_trips(i in 1usize..5000) {
        let (x, y) = lambda(i).unwrap();
        prop_assert_eq!(lambda_inv(x, y), i);
    }

    #[test]
    fn lambda_inverse_round_trips(x in 0usize..60, y in 0usize..60) {
        prop_assert_eq!(lambda(lambda_inv(x, y)).unwrap(), (x, y));
    }

    #[test]
    fn cube_diamonds_commute(seed: u64, sizes in prop::array::uniform3(1usize..3)) {
        use rand::Rng;
        let mut r = rng(seed);
        let phi = gen::s53(&mut r, &["p", "q"], 2);
        let mut m = S53Model::new(sizes).unwrap();
        for var in ["p", "q"] {
            let worlds: Vec<_> = m.worlds().into_iter().filter(|_| r.gen_bool(0.5)).collect();
            m.set(var, worlds).unwrap();
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let ij = S53::dia(i, S53::dia(j, phi.clone()));
            let ji = S53::dia(j, S53::dia(i, phi.clone()));
            for w in m.worlds() {
                prop_assert_eq!(s53_check(&m, w, &ij).unwrap(), s53_check(&m, w, &ji).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// The first model found by the SAT encoding exists exactly when a scan
    /// of all structures and valuations of at most two regions finds one.
    #[test]
    fn bounded_search_matches_enumeration(seed: u64, rcc5: bool) {
        let kind = kind_of(rcc5);
        let f = gen::formula(&mut rng(seed), kind, &["p", "q"], 2);
        let catalog = structure_catalog(kind, 2).unwrap();
        let naive = catalog.iter().flatten().any(|s| {
            valuations(&["p", "q"], s.len())
                .iter()
                .any(|v| sat_in(s, v, &f).unwrap().is_some())
        });
        let found = bounded_sat(&f, kind, 2).unwrap();
        prop_assert_eq!(found.is_some(), naive);
        if let Some(w) = found {
            prop_assert!(check(&w.structure, &w.valuation, w.region, &f).unwrap());
        }
    }

    #[test]
    fn triangle_tiling_matches_enumeration(
        seed: u64,
        tiles in 1usize..4,
        k in 0usize..3,
    ) {
        use rand::Rng;
        let mut r = rng(seed);
        let names: Vec<String> = (0..tiles).map(|i| format!("t{i}")).collect();
        let mut pairs = || {
            let mut out = Vec::new();
            for a in &names {
                for b in &names {
                    if r.gen_bool(0.6) {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
            out
        };
        let (h, v) = (pairs(), pairs());
        let s0 = r.gen_range(0..tiles);
        let f0 = r.gen_range(0..tiles);
        let d = DominoSystem {
            tiles: names.clone(),
            h: h.clone(),
            v: v.clone(),
            s0: Some(names[s0].clone()),
            f0: Some(names[f0].clone()),
            t0: None,
        };
        let positions: Vec<(usize, usize)> =
            (1..=triangle_size(k)).map(|i| lambda(i).unwrap()).collect();
        let at = |x: usize, y: usize| positions.iter().position(|&p| p == (x, y));
        let has = |set: &[(String, String)], a: usize, b: usize| {
            set.iter().any(|(p, q)| *p == names[a] && *q == names[b])
        };
        let total = tiles.pow(positions.len() as u32);
        let naive = (0..total).any(|code| {
            let assign: Vec<usize> =
                (0..positions.len()).map(|i| code / tiles.pow(i as u32) % tiles).collect();
            assign[at(0, 0).unwrap()] == s0
                && assign.contains(&f0)
                && positions.iter().enumerate().all(|(i, &(x, y))| {
                    at(x + 1, y).is_none_or(|j| has(&h, assign[i], assign[j]))
                        && at(x, y + 1).is_none_or(|j| has(&v, assign[i], assign[j]))
                })
        });
        let found = tile_triangle(&d, k).unwrap();
        prop_assert_eq!(found.is_some(), naive);
        if let Some(t) = found {
            prop_assert!(t.violations(&d).is_empty());
        }
    }
}
