use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DominoSystem, ReductionError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
}

impl Move {
    fn name(self) -> &'static str {
        match self {
            Move::L => "L",
            Move::R => "R",
        }
    }
}

/// `(state, read, next state, write, move)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition(pub String, pub String, pub String, pub String, pub Move);

/// Single-tape machine on a right-infinite tape, started on the blank tape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuringMachine {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: String,
    pub marker: String,
    pub initial: String,
    pub halt: String,
    pub delta: Vec<Transition>,
}

/// A normal-form requirement the machine fails.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Normalization {
    /// Some transition enters the initial state.
    InitialReentered,
    /// A non-halting state has no transition for a symbol it can read, or
    /// the halting state has a transition.
    StopsOutsideHalt,
    /// A transition into the halting state moves left.
    LastStepLeft,
    /// A transition into the halting state writes something other than the
    /// marker.
    HaltsUnmarked,
    /// Some transition writes the blank.
    WritesBlank,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::InitialReentered => "the initial state is entered again",
            Normalization::StopsOutsideHalt => "the machine can stop outside the halting state",
            Normalization::LastStepLeft => "the last step is not to the right",
            Normalization::HaltsUnmarked => "the halting position is not marked",
            Normalization::WritesBlank => "the blank is written",
        })
    }
}

impl TuringMachine {
    pub fn from_json(text: &str) -> Result<Self, ReductionError> {
        let m: TuringMachine =
            serde_json::from_str(text).map_err(|e| ReductionError::Json(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn check_symbols(&self) -> Result<(), ReductionError> {
        let states: BTreeSet<&String> = self.states.iter().collect();
        let symbols: BTreeSet<&String> = self.alphabet.iter().collect();
        let state = |q: &String| {
            if states.contains(q) {
                Ok(())
            } else {
                Err(ReductionError::UnknownState(q.clone()))
            }
        };
        let symbol = |s: &String| {
            if symbols.contains(s) {
                Ok(())
            } else {
                Err(ReductionError::UnknownSymbol(s.clone()))
            }
        };
        state(&self.initial)?;
        state(&self.halt)?;
        symbol(&self.blank)?;
        symbol(&self.marker)?;
        for Transition(q, s, q2, s2, _) in &self.delta {
            state(q)?;
            state(q2)?;
            symbol(s)?;
            symbol(s2)?;
        }
        Ok(())
    }

    /// Normal-form requirements the machine fails, in declaration order.
    pub fn normalization_violations(&self) -> Vec<Normalization> {
        let mut out = BTreeSet::new();
        for Transition(q, _, q2, s2, m) in &self.delta {
            if *q2 == self.initial {
                out.insert(Normalization::InitialReentered);
            }
            if *q == self.halt {
                out.insert(Normalization::StopsOutsideHalt);
            }
            if *q2 == self.halt && *m == Move::L {
                out.insert(Normalization::LastStepLeft);
            }
            if *q2 == self.halt && *s2 != self.marker {
                out.insert(Normalization::HaltsUnmarked);
            }
            if *s2 == self.blank {
                out.insert(Normalization::WritesBlank);
            }
        }
        // The initial state only ever reads the blank of the empty tape.
        for q in &self.states {
            if *q == self.halt {
                continue;
            }
            let readable: Vec<&String> = if *q == self.initial {
                vec![&self.blank]
            } else {
                self.alphabet.iter().collect()
            };
            for s in readable {
                if !self.delta.iter().any(|t| t.0 == *q && t.1 == *s) {
                    out.insert(Normalization::StopsOutsideHalt);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        self.check_symbols()?;
        let v = self.normalization_violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ReductionError::Normalization(v))
        }
    }
}

fn head(q: &str, s: &str, m: Move) -> String {
    format!("<{q},{s},{}>", m.name())
}

fn prev(q: &str, s: &str, m: Move) -> String {
    format!("<{q},{s},{}>'", m.name())
}

const PAD: &str = "$";

/// Domino system whose triangle tilings with the start tile at the origin
/// and the final tile somewhere correspond to halting runs. Columns are
/// configurations with the leftmost cell at the bottom. `<q,s,M>` is the
/// head cell (state, content, direction of the last move) and `<q,s,M>'`
/// the previously active cell.
pub fn tm_to_domino(m: &TuringMachine) -> Result<DominoSystem, ReductionError> {
    m.validate()?;
    let sigma = &m.alphabet;
    let moves = [Move::L, Move::R];
    let mut tiles: Vec<String> = sigma.clone();
    for q in &m.states {
        for s in sigma {
            for mv in moves {
                tiles.push(head(q, s, mv));
            }
        }
    }
    for q in &m.states {
        for s in sigma {
            for mv in moves {
                tiles.push(prev(q, s, mv));
            }
        }
    }
    tiles.push(PAD.into());

    let mut h: BTreeSet<(String, String)> = BTreeSet::new();
    let mut v: BTreeSet<(String, String)> = BTreeSet::new();
    for s in sigma {
        h.insert((s.clone(), s.clone()));
        h.insert((s.clone(), PAD.into()));
    }
    for Transition(q, s, q2, s2, mv2) in &m.delta {
        for mv in moves {
            h.insert((head(q, s, mv), prev(q2, s2, *mv2)));
        }
    }
    for s in sigma {
        for q in &m.states {
            for q2 in &m.states {
                for mv in moves {
                    for mv2 in moves {
                        h.insert((s.clone(), head(q, s, mv)));
                        h.insert((prev(q, s, mv), head(q2, s, mv2)));
                    }
                }
            }
            for mv in moves {
                h.insert((prev(q, s, mv), s.clone()));
                h.insert((prev(q, s, mv), PAD.into()));
            }
        }
    }
    h.insert((head(&m.halt, &m.marker, Move::R), PAD.into()));
    h.insert((PAD.into(), PAD.into()));

    for s in sigma {
        for s2 in sigma {
            if *s != m.blank || *s2 == m.blank {
                v.insert((s.clone(), s2.clone()));
            }
            for q in &m.states {
                v.insert((s.clone(), head(q, s2, Move::L)));
                v.insert((head(q, s2, Move::R), s.clone()));
                v.insert((prev(q, s2, Move::L), s.clone()));
                v.insert((s.clone(), prev(q, s2, Move::R)));
                v.insert((head(q, s, Move::L), prev(q, s2, Move::L)));
                v.insert((prev(q, s2, Move::R), head(q, s, Move::R)));
            }
        }
    }
    v.insert((PAD.into(), PAD.into()));

    let order = |set: BTreeSet<(String, String)>| {
        let pos = |t: &String| tiles.iter().position(|x| x == t).expect("declared tile");
        let mut pairs: Vec<(String, String)> = set.into_iter().collect();
        pairs.sort_by_key(|(a, b)| (pos(a), pos(b)));
        pairs
    };
    let h = order(h);
    let v = order(v);
    let d = DominoSystem {
        s0: Some(head(&m.initial, &m.blank, Move::L)),
        f0: Some(head(&m.halt, &m.marker, Move::R)),
        t0: None,
        h,
        v,
        tiles,
    };
    d.validate()?;
    Ok(d)
}

/// Three-state machine that marks cell 0, steps right, marks cell 1, steps
/// back and halts on cell 1 after a final step right.
pub fn marker_machine() -> TuringMachine {
    let t = |q: &str, s: &str, q2: &str, s2: &str, m: Move| {
        Transition(q.into(), s.into(), q2.into(), s2.into(), m)
    };
    TuringMachine {
        states: vec!["q0".into(), "q1".into(), "qf".into()],
        alphabet: vec!["b".into(), "#".into()],
        blank: "b".into(),
        marker: "#".into(),
        initial: "q0".into(),
        halt: "qf".into(),
        delta: vec![
            t("q0", "b", "q1", "#", Move::R),
            t("q1", "b", "q1", "#", Move::L),
            t("q1", "#", "qf", "#", Move::R),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::tile_triangle;

    #[test]
    fn tile_count_and_padding() {
        let m = marker_machine();
        let d = tm_to_domino(&m).unwrap();
        assert_eq!(d.tiles.len(), 2 + 2 * 3 * 2 * 2 + 1);
        let pad = ("$".to_string(), "$".to_string());
        assert!(d.h.contains(&pad));
        assert!(d.v.contains(&pad));
        assert_eq!(d.s0.as_deref(), Some("<q0,b,L>"));
        assert_eq!(d.f0.as_deref(), Some("<qf,#,R>"));
    }

    #[test]
    fn halting_run_tiles_a_triangle() {
        let d = tm_to_domino(&marker_machine()).unwrap();
        let found = (1..=12).find_map(|k| tile_triangle(&d, k).unwrap());
        let t = found.expect("the machine halts");
        assert!(t.violations(&d).is_empty());
        assert!(t.k <= 12);
    }

    #[test]
    fn normalizations() {
        let mut m = marker_machine();
        m.delta.push(Transition("q1".into(), "#".into(), "q0".into(), "b".into(), Move::L));
        let v = m.normalization_violations();
        assert!(v.contains(&Normalization::InitialReentered));
        assert!(v.contains(&Normalization::WritesBlank));
        let mut m = marker_machine();
        m.delta.pop();
        assert_eq!(m.normalization_violations(), vec![Normalization::StopsOutsideHalt]);
        let mut m = marker_machine();
        m.delta[2].4 = Move::L;
        m.delta[2].3 = "b".into();
        assert_eq!(
            m.normalization_violations(),
            vec![
                Normalization::LastStepLeft,
                Normalization::HaltsUnmarked,
                Normalization::WritesBlank
            ]
        );
        assert!(tm_to_domino(&m).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = marker_machine();
        let text = m.to_json();
        let step = serde_json::to_string(&m.delta[0]).unwrap();
        assert_eq!(step, r##"["q0","b","q1","#","R"]"##);
        assert_eq!(TuringMachine::from_json(&text).unwrap(), m);
    }
}
