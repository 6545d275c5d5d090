//! Small fixed formulas, networks and models used as regression cases.

use crate::algebra::Kind;
use crate::geometry::{rel_intervals, IntervalUnion};
use crate::logic::{parse, Formula};
use crate::solver::ConstraintNetwork;
use crate::structures::{induced, RegionModel, Valuation};
use crate::Rational;

fn f(text: &str) -> Formula {
    parse(text, Kind::Rcc8).expect("fixed formula text parses")
}

/// Valid exactly on structures without infinite ascending proper-part
/// chains, so on every finite structure.
pub fn loeb() -> Formula {
    f("[pp]([pp]p -> p) -> [pp]p")
}

/// Two discrete regions have a common proper superregion. Not valid over
/// arbitrary structures: two `dc` regions alone refute it.
pub fn common_superregion() -> Formula {
    f("nom(p) & nom(q) & <u>(p & <dc>q) -> <u>(<ppi>p & <ppi>q)")
}

/// A small geographic knowledge base and a model of it.
#[derive(Clone, Debug)]
pub struct HarborExample {
    pub model: RegionModel,
    /// Background theory and facts about one city and one river.
    pub theory: Vec<Formula>,
    /// Follows from the theory: the city has a harbor part touching the river.
    pub consequence: Formula,
    /// Fails in the model: the city touches the sea.
    pub non_consequence: Formula,
}

pub fn harbor_example() -> HarborExample {
    let iv = |a: i64, b: i64| {
        IntervalUnion::interval(Rational::from_integer(a), Rational::from_integer(b))
            .expect("lo < hi")
    };
    let regions = [iv(0, 5), iv(4, 6), iv(2, 4), iv(10, 12)];
    let names = ["dresden", "elbe", "harbor_area", "baltic"];
    let structure = induced(&regions, Some(names.iter().map(|s| s.to_string()).collect()))
        .expect("distinct intervals");
    let valuation = Valuation::new()
        .with("dresden", [0])
        .with("city", [0])
        .with("harbor_city", [0])
        .with("elbe", [1])
        .with("river", [1])
        .with("harbor", [2])
        .with("sea", [3]);
    let not_dc = "[ec]!sea & [po]!sea & [eq]!sea & [tpp]!sea & [ntpp]!sea & [tppi]!sea & [ntppi]!sea";
    let rivers = "[ec](river -> elbe) & [po](river -> elbe) & [eq](river -> elbe) \
        & [tpp](river -> elbe) & [ntpp](river -> elbe) & [tppi](river -> elbe) & [ntppi](river -> elbe)";
    let theory = vec![
        f("nom(elbe)"),
        f("nom(dresden)"),
        f("[u](harbor_city <-> city & <ppi>harbor)"),
        f("[u](harbor -> <ec>river | <ec>sea)"),
        f("[u](dresden -> harbor_city)"),
        f("[u](elbe -> river)"),
        f(&format!("[u](dresden -> {not_dc})")),
        f(&format!("[u](dresden -> <po>elbe & {rivers})")),
    ];
    HarborExample {
        model: RegionModel::new(structure, valuation),
        theory,
        consequence: f("[u](dresden -> <ppi>(harbor & <ec>elbe))"),
        non_consequence: f("[u](dresden -> <ec>sea)"),
    }
}

/// First assignment of single intervals with integer endpoints in
/// `0..=max` satisfying every constraint of the network, searching
/// variables in order and intervals lexicographically.
pub fn grid_interval_realization(net: &ConstraintNetwork, max: i64) -> Option<Vec<(i64, i64)>> {
    let mut candidates = Vec::new();
    for lo in 0..=max {
        for hi in lo + 1..=max {
            candidates.push((lo, hi));
        }
    }
    let ivs: Vec<IntervalUnion> = candidates
        .iter()
        .map(|&(a, b)| {
            IntervalUnion::interval(Rational::from_integer(a), Rational::from_integer(b))
                .expect("lo < hi")
        })
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(net: &ConstraintNetwork, ivs: &[IntervalUnion], chosen: &mut Vec<usize>) -> bool {
        let j = chosen.len();
        if j == net.len() {
            return true;
        }
        for c in 0..ivs.len() {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(i, &ci)| net.get(i, j).contains(rel_intervals(&ivs[ci], &ivs[c])));
            if ok {
                chosen.push(c);
                if go(net, ivs, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if go(net, &ivs, &mut chosen) {
        Some(chosen.into_iter().map(|c| candidates[c]).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{bounded_sat, valid_in};
    use crate::solver::ec_k;

    #[test]
    fn harbor_theory_holds() {
        let h = harbor_example();
        let (s, v) = (&h.model.structure, &h.model.valuation);
        for t in &h.theory {
            assert!(valid_in(s, v, t).unwrap(), "{t}");
        }
        assert!(valid_in(s, v, &h.consequence).unwrap());
        assert!(!valid_in(s, v, &h.non_consequence).unwrap());
    }

    #[test]
    fn superregion_countermodel() {
        let w = bounded_sat(&Formula::not(common_superregion()), Kind::Rcc8, 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.structure.len(), 2);
    }

    #[test]
    fn touching_intervals_on_a_grid() {
        assert!(grid_interval_realization(&ec_k(2), 2).is_some());
        assert!(grid_interval_realization(&ec_k(3), 6).is_none());
    }
}
