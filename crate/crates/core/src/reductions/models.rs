use std::collections::BTreeMap;

use crate::algebra::BaseRelation;
use crate::geometry::{rel_intervals, IntervalUnion};
use crate::structures::{induced, RegionModel, Valuation};
use crate::Rational;

use super::domino::{lambda, on_floor, on_wall, right_of, Tiling};
use super::formulas::tile_var;
use super::ReductionError;

/// Two nested interval families: `x_1 ⊂ x_2 ⊂ …` touching at alternate
/// ends, and `y_i` linking `x_{2i-1}` to `x_{2j-1}` when position `j` is
/// right of position `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominoReady {
    pub x: Vec<IntervalUnion>,
    pub y: Vec<IntervalUnion>,
}

fn interval(lo: i64, hi: i64) -> IntervalUnion {
    IntervalUnion::interval(Rational::from_integer(lo), Rational::from_integer(hi))
        .expect("lo < hi")
}

fn x_interval(i: usize) -> IntervalUnion {
    let j = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        interval(-j, j)
    } else {
        interval(-j, j + 1)
    }
}

fn y_interval(i: usize) -> Result<IntervalUnion, ReductionError> {
    Ok(interval(-(i as i64), right_of(i)? as i64))
}

/// `x_1..x_{2n}` and `y_1..y_n`.
pub fn domready_witness(count: usize) -> Result<DominoReady, ReductionError> {
    if count == 0 {
        return Err(ReductionError::ZeroIndex);
    }
    let x = (1..=2 * count).map(x_interval).collect();
    let y = (1..=count).map(y_interval).collect::<Result<_, _>>()?;
    Ok(DominoReady { x, y })
}

/// Failures of the five defining properties among the generated intervals,
/// decided by the interval relation oracle.
pub fn domino_ready_violations(w: &DominoReady) -> Result<Vec<String>, ReductionError> {
    use BaseRelation::*;
    let mut out = Vec::new();
    let (nx, ny) = (w.x.len(), w.y.len());
    let rel = |a: &IntervalUnion, b: &IntervalUnion| rel_intervals(a, b);
    for i in 0..nx {
        if i + 1 < nx && rel(&w.x[i], &w.x[i + 1]) != Tpp {
            out.push(format!("x{} tpp x{}", i + 1, i + 2));
        }
        for j in i + 2..nx {
            if rel(&w.x[i], &w.x[j]) != Ntpp {
                out.push(format!("x{} ntpp x{}", i + 1, j + 1));
            }
        }
    }
    for i in 1..=ny {
        if 2 * i - 1 <= nx && rel(&w.x[2 * i - 2], &w.y[i - 1]) != Tpp {
            out.push(format!("x{} tpp y{i}", 2 * i - 1));
        }
        for j in 1..=ny {
            if 2 * j - 1 > nx {
                continue;
            }
            let tangent = rel(&w.y[i - 1], &w.x[2 * j - 2]) == Tpp;
            if tangent != (right_of(i)? == j) {
                out.push(format!("y{i} tpp x{} iff {j} is right of {i}", 2 * j - 1));
            }
        }
        for j in i + 1..=ny {
            if rel(&w.y[i - 1], &w.y[j - 1]) != Ntpp {
                out.push(format!("y{i} ntpp y{j}"));
            }
        }
    }
    Ok(out)
}

/// Finite model built from a tiling of the first `m` enumerated positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingModel {
    pub model: RegionModel,
    /// Region standing for position 1.
    pub start: usize,
    /// Region standing for each position `1..=m`.
    pub positions: Vec<usize>,
}

/// Regions `r_i = x_{2i-1}` for positions `i <= m`, `s_i = x_{2i}` for
/// `i < m`, and `t_i = y_i` when the position right of `i` is at most `m`,
/// with `a` on the `r` and `s` regions, `b` on the `r` regions, `c` on the
/// `t` regions, and `wall`, `floor` and tile variables on the `r` regions.
/// Coinciding intervals become one region carrying all their variables.
pub fn model_from_tiling(tiling: &Tiling, m: usize) -> Result<TilingModel, ReductionError> {
    if m == 0 {
        return Err(ReductionError::ZeroIndex);
    }
    let mut tiles = Vec::with_capacity(m);
    for i in 1..=m {
        let (x, y) = lambda(i)?;
        let t = tiling.get(x, y).ok_or(ReductionError::OutsideTiling(i))?;
        tiles.push(t.to_string());
    }

    let mut regions: Vec<IntervalUnion> = Vec::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut valuation = Valuation::new();
    let mut by_interval: BTreeMap<Vec<(Rational, Rational)>, usize> = BTreeMap::new();
    let mut add = |iv: IntervalUnion, name: String, vars: Vec<String>, v: &mut Valuation| {
        let key = iv.pieces().to_vec();
        let id = *by_interval.entry(key).or_insert_with(|| {
            regions.push(iv);
            names.push(Vec::new());
            regions.len() - 1
        });
        names[id].push(name);
        for var in vars {
            v.add(&var, id);
        }
        id
    };

    let mut positions = Vec::with_capacity(m);
    for i in 1..=m {
        let mut vars = vec!["a".to_string(), "b".to_string(), tile_var(&tiles[i - 1])];
        if on_wall(i)? {
            vars.push("wall".into());
        }
        if on_floor(i)? {
            vars.push("floor".into());
        }
        positions.push(add(x_interval(2 * i - 1), format!("r{i}"), vars, &mut valuation));
    }
    for i in 1..m {
        add(x_interval(2 * i), format!("s{i}"), vec!["a".into()], &mut valuation);
    }
    for i in 1..=m {
        if right_of(i)? <= m {
            add(y_interval(i)?, format!("t{i}"), vec!["c".into()], &mut valuation);
        }
    }
    for var in ["a", "b", "c", "wall", "floor"] {
        if valuation.get(var).is_none() {
            valuation.set(var, []);
        }
    }

    let ids = names.iter().map(|n| n.join("=")).collect();
    let structure = induced(&regions, Some(ids))?;
    Ok(TilingModel {
        model: RegionModel::new(structure, valuation),
        start: positions[0],
        positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{tile_triangle, triangle_size, DominoSystem};

    #[test]
    fn witness_intervals() {
        let w = domready_witness(3).unwrap();
        assert_eq!(w.x[0], interval(-1, 1));
        assert_eq!(w.x[1], interval(-1, 2));
        assert_eq!(w.x[2], interval(-2, 2));
        assert_eq!(w.y[0], interval(-1, 2));
        assert!(domino_ready_violations(&w).unwrap().is_empty());
    }

    #[test]
    fn single_tile_model() {
        let d = DominoSystem::new(["t"], &[("t", "t")], &[("t", "t")])
            .unwrap()
            .with_start("t", "t")
            .unwrap();
        let tiling = tile_triangle(&d, 2).unwrap().unwrap();
        let tm = model_from_tiling(&tiling, triangle_size(2)).unwrap();
        let s = &tm.model.structure;
        assert_eq!(s.regions()[tm.start], "r1");
        // s1 and t1 are both [-1,2]
        assert!(s.index_of("s1=t1").is_some());
        let v = &tm.model.valuation;
        let ab: Vec<usize> = (0..s.len()).filter(|&i| v.holds("a", i) && v.holds("b", i)).collect();
        assert_eq!(ab, tm.positions);
        assert!(model_from_tiling(&tiling, 7).is_err());
    }
}
