use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ReductionError;

/// Tiles with horizontal and vertical matching conditions and optional
/// distinguished start, final and recurring tiles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominoSystem {
    pub tiles: Vec<String>,
    pub h: Vec<(String, String)>,
    pub v: Vec<(String, String)>,
    #[serde(default)]
    pub s0: Option<String>,
    #[serde(default)]
    pub f0: Option<String>,
    #[serde(default)]
    pub t0: Option<String>,
}

impl DominoSystem {
    pub fn new<S: Into<String>>(
        tiles: impl IntoIterator<Item = S>,
        h: &[(&str, &str)],
        v: &[(&str, &str)],
    ) -> Result<Self, ReductionError> {
        let pairs = |xs: &[(&str, &str)]| {
            xs.iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect()
        };
        let d = DominoSystem {
            tiles: tiles.into_iter().map(Into::into).collect(),
            h: pairs(h),
            v: pairs(v),
            s0: None,
            f0: None,
            t0: None,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn with_start(mut self, s0: &str, f0: &str) -> Result<Self, ReductionError> {
        self.s0 = Some(s0.into());
        self.f0 = Some(f0.into());
        self.validate()?;
        Ok(self)
    }

    pub fn with_recurring(mut self, t0: &str) -> Result<Self, ReductionError> {
        self.t0 = Some(t0.into());
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.tiles.is_empty() {
            return Err(ReductionError::NoTiles);
        }
        let mut seen = BTreeSet::new();
        for t in &self.tiles {
            if !seen.insert(t) {
                return Err(ReductionError::DuplicateTile(t.clone()));
            }
        }
        let known = |t: &String| {
            if seen.contains(t) {
                Ok(())
            } else {
                Err(ReductionError::UnknownTile(t.clone()))
            }
        };
        for (a, b) in self.h.iter().chain(&self.v) {
            known(a)?;
            known(b)?;
        }
        for t in [&self.s0, &self.f0, &self.t0].into_iter().flatten() {
            known(t)?;
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, ReductionError> {
        let d: DominoSystem =
            serde_json::from_str(text).map_err(|e| ReductionError::Json(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn index_of(&self, tile: &str) -> Option<usize> {
        self.tiles.iter().position(|t| t == tile)
    }

    fn matrix(&self, pairs: &[(String, String)]) -> Vec<Vec<bool>> {
        let n = self.tiles.len();
        let mut m = vec![vec![false; n]; n];
        for (a, b) in pairs {
            let (i, j) = (self.index_of(a), self.index_of(b));
            if let (Some(i), Some(j)) = (i, j) {
                m[i][j] = true;
            }
        }
        m
    }

    fn required(&self, t: &Option<String>, name: &'static str) -> Result<usize, ReductionError> {
        let t = t.as_ref().ok_or(ReductionError::MissingTile(name))?;
        self.index_of(t)
            .ok_or_else(|| ReductionError::UnknownTile(t.clone()))
    }
}

/// Position of the `i`-th tile (from 1) in the diagonal enumeration of the
/// first quadrant: diagonal `x+y = d` is walked from the floor `(d,0)` up to
/// the wall `(0,d)`, so going right from `(x,y)` lands on `(x+1,y)`.
pub fn lambda(i: usize) -> Result<(usize, usize), ReductionError> {
    if i == 0 {
        return Err(ReductionError::ZeroIndex);
    }
    let mut d = 0;
    while tri(d + 1) < i {
        d += 1;
    }
    let o = i - tri(d) - 1;
    Ok((d - o, o))
}

pub fn lambda_inv(x: usize, y: usize) -> usize {
    tri(x + y) + y + 1
}

fn tri(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Index reached from `i` by one step to the right.
pub fn right_of(i: usize) -> Result<usize, ReductionError> {
    let (x, y) = lambda(i)?;
    Ok(lambda_inv(x + 1, y))
}

/// Index reached from `i` by one step up.
pub fn up_of(i: usize) -> Result<usize, ReductionError> {
    let (x, y) = lambda(i)?;
    Ok(lambda_inv(x, y + 1))
}

pub fn on_wall(i: usize) -> Result<bool, ReductionError> {
    Ok(lambda(i)?.0 == 0)
}

pub fn on_floor(i: usize) -> Result<bool, ReductionError> {
    Ok(lambda(i)?.1 == 0)
}

/// Number of positions in the `k`-triangle `{(x,y) | x+y <= k}`.
pub fn triangle_size(k: usize) -> usize {
    tri(k + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Triangle,
    Square,
}

/// Tile assignment to the positions of a `k`-triangle or a `k`×`k` square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub k: usize,
    pub shape: Shape,
    pub cells: BTreeMap<(usize, usize), String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingJson {
    pub k: usize,
    #[serde(default = "default_shape")]
    pub shape: Shape,
    pub cells: BTreeMap<String, String>,
}

fn default_shape() -> Shape {
    Shape::Triangle
}

impl Tiling {
    pub fn positions(shape: Shape, k: usize) -> Vec<(usize, usize)> {
        match shape {
            Shape::Triangle => (1..=triangle_size(k))
                .map(|i| lambda(i).expect("positive index"))
                .collect(),
            Shape::Square => (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).collect(),
        }
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        match self.shape {
            Shape::Triangle => x + y <= self.k,
            Shape::Square => x < self.k && y < self.k,
        }
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&str> {
        self.cells.get(&(x, y)).map(String::as_str)
    }

    /// Horizontal and vertical neighbor pairs that violate the matching
    /// conditions, plus positions that are missing a tile.
    pub fn violations(&self, d: &DominoSystem) -> Vec<String> {
        let h = d.matrix(&d.h);
        let v = d.matrix(&d.v);
        let mut out = Vec::new();
        for (x, y) in Tiling::positions(self.shape, self.k) {
            let Some(t) = self.get(x, y).and_then(|t| d.index_of(t)) else {
                out.push(format!("({x},{y}) has no known tile"));
                continue;
            };
            let right = self.get(x + 1, y).and_then(|t| d.index_of(t));
            if let Some(r) = right {
                if !h[t][r] {
                    out.push(format!("({x},{y})-({},{y}) violates H", x + 1));
                }
            }
            let up = self.get(x, y + 1).and_then(|t| d.index_of(t));
            if let Some(u) = up {
                if !v[t][u] {
                    out.push(format!("({x},{y})-({x},{}) violates V", y + 1));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> TilingJson {
        TilingJson {
            k: self.k,
            shape: self.shape,
            cells: self
                .cells
                .iter()
                .map(|((x, y), t)| (format!("{x},{y}"), t.clone()))
                .collect(),
        }
    }

    pub fn from_json(j: &TilingJson) -> Result<Self, ReductionError> {
        let mut cells = BTreeMap::new();
        for (key, t) in &j.cells {
            let bad = || ReductionError::Json(format!("bad position `{key}`"));
            let (a, b) = key.split_once(',').ok_or_else(bad)?;
            let x = a.trim().parse().map_err(|_| bad())?;
            let y = b.trim().parse().map_err(|_| bad())?;
            cells.insert((x, y), t.clone());
        }
        let tiling = Tiling { k: j.k, shape: j.shape, cells };
        for &(x, y) in tiling.cells.keys() {
            if !tiling.contains(x, y) {
                return Err(ReductionError::Json(format!("position ({x},{y}) is outside the domain")));
            }
        }
        Ok(tiling)
    }
}

struct Search<'a> {
    positions: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    h: Vec<Vec<bool>>,
    v: Vec<Vec<bool>>,
    fixed: BTreeMap<usize, usize>,
    need: Option<usize>,
    d: &'a DominoSystem,
}

impl Search<'_> {
    fn run(&self) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(self.positions.len());
        if self.dfs(&mut chosen, 0) {
            Some(chosen)
        } else {
            None
        }
    }

    fn dfs(&self, chosen: &mut Vec<usize>, found: usize) -> bool {
        let p = chosen.len();
        if p == self.positions.len() {
            return self.need.is_none() || found > 0;
        }
        let (x, y) = self.positions[p];
        let left = x.checked_sub(1).and_then(|l| self.index.get(&(l, y)));
        let below = y.checked_sub(1).and_then(|b| self.index.get(&(x, b)));
        let candidates: Vec<usize> = match self.fixed.get(&p) {
            Some(&t) => vec![t],
            None => (0..self.d.tiles.len()).collect(),
        };
        for t in candidates {
            if left.is_some_and(|&l| !self.h[chosen[l]][t]) {
                continue;
            }
            if below.is_some_and(|&b| !self.v[chosen[b]][t]) {
                continue;
            }
            chosen.push(t);
            let hit = found + usize::from(self.need == Some(t));
            if self.dfs(chosen, hit) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

fn search(
    d: &DominoSystem,
    shape: Shape,
    k: usize,
    start: Option<usize>,
    need: Option<usize>,
) -> Option<Tiling> {
    let positions = Tiling::positions(shape, k);
    if positions.is_empty() {
        return None;
    }
    let index = positions.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut fixed = BTreeMap::new();
    if let Some(s) = start {
        fixed.insert(0, s);
    }
    let s = Search { positions, index, h: d.matrix(&d.h), v: d.matrix(&d.v), fixed, need, d };
    let chosen = s.run()?;
    let cells = s
        .positions
        .iter()
        .zip(chosen)
        .map(|(&p, t)| (p, d.tiles[t].clone()))
        .collect();
    Some(Tiling { k, shape, cells })
}

/// First tiling of the `k`-triangle (in enumeration order, tiles in declared
/// order) with the start tile at the origin and the final tile somewhere.
pub fn tile_triangle(d: &DominoSystem, k: usize) -> Result<Option<Tiling>, ReductionError> {
    let s0 = d.required(&d.s0, "s0")?;
    let f0 = d.required(&d.f0, "f0")?;
    Ok(search(d, Shape::Triangle, k, Some(s0), Some(f0)))
}

/// First tiling of the `k`×`k` square, with the start tile at the origin
/// when one is declared.
pub fn tile_square(d: &DominoSystem, k: usize) -> Option<Tiling> {
    let start = d.s0.as_ref().and_then(|t| d.index_of(t));
    search(d, Shape::Square, k, start, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_anchors() {
        assert_eq!(lambda(1).unwrap(), (0, 0));
        assert_eq!(lambda(2).unwrap(), (1, 0));
        assert_eq!(lambda(3).unwrap(), (0, 1));
        assert_eq!(lambda(4).unwrap(), (2, 0));
        assert!(lambda(0).is_err());
        for i in 1..=10_000 {
            let (x, y) = lambda(i).unwrap();
            assert_eq!(lambda_inv(x, y), i);
        }
        assert_eq!(right_of(1).unwrap(), 2);
        assert_eq!(up_of(1).unwrap(), 3);
        assert_eq!(right_of(3).unwrap(), 5);
    }

    #[test]
    fn single_tile() {
        let d = DominoSystem::new(["t"], &[("t", "t")], &[("t", "t")])
            .unwrap()
            .with_start("t", "t")
            .unwrap();
        let t = tile_triangle(&d, 2).unwrap().unwrap();
        assert_eq!(t.cells.len(), 6);
        assert!(t.violations(&d).is_empty());
        assert!(tile_square(&d, 3).is_some());
        let j = t.to_json();
        assert_eq!(j.cells["0,0"], "t");
        assert_eq!(Tiling::from_json(&j).unwrap(), t);
    }

    #[test]
    fn no_horizontal_pairs() {
        let d = DominoSystem::new(["s", "f"], &[], &[("s", "f"), ("f", "f")])
            .unwrap()
            .with_start("s", "f")
            .unwrap();
        for k in 0..=4 {
            assert!(tile_triangle(&d, k).unwrap().is_none());
        }
        assert!(tile_square(&d, 2).is_none());
    }

    #[test]
    fn json_shape() {
        let text = r#"{"tiles":["t1"],"h":[["t1","t1"]],"v":[["t1","t1"]],"s0":"t1","f0":"t1","t0":null}"#;
        let d = DominoSystem::from_json(text).unwrap();
        assert_eq!(d.s0.as_deref(), Some("t1"));
        assert!(DominoSystem::from_json(r#"{"tiles":["a"],"h":[["a","b"]],"v":[]}"#).is_err());
        assert!(tile_triangle(&DominoSystem::new(["a"], &[], &[]).unwrap(), 1).is_err());
    }
}
