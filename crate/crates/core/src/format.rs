//! The `gipf-1` JSON instance document.
//!
//! ```json
//! {
//!   "format": "gipf-1",
//!   "kind": "normal",
//!   "players": [{"name": "p1", "strategies": ["s1", "s2"]}, {"name": "p2", "strategies": ["t1"]}],
//!   "utilities": [{"player": 0, "profile": [1, 0], "value": "3/2"}],
//!   "region": {"sets": [[0], [0]]},
//!   "budget": 1,
//!   "promise": [{"player": 0, "profile": [0, 0], "value": "inf"}]
//! }
//! ```
//!
//! Graphical documents add `edges` and key utilities and promises by
//! `[own, neighbors in ascending order]`. Omitted entries are 0.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{AnyGame, Game, GameForm, GraphicalGame, Player, RectRegion};
use crate::promise::PaymentPromise;
use crate::value::{format_rational, ExtValue};

pub const FORMAT: &str = "gipf-1";

/// A JSON integer or a `"p/q"` / `"inf"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn to_value(&self) -> Result<ExtValue> {
        match self {
            Num::Int(v) => Ok(ExtValue::Finite(BigRational::from_integer(BigInt::from(
                *v,
            )))),
            Num::Text(s) => s.parse(),
        }
    }
}

impl From<&ExtValue> for Num {
    fn from(v: &ExtValue) -> Self {
        match v {
            ExtValue::Finite(r) if r.is_integer() => match r.numer().to_i64() {
                Some(n) => Num::Int(n),
                None => Num::Text(format_rational(r)),
            },
            other => Num::Text(other.to_string()),
        }
    }
}

impl From<&BigRational> for Num {
    fn from(r: &BigRational) -> Self {
        Num::from(&ExtValue::Finite(r.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Normal,
    Graphical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerDoc {
    pub name: String,
    pub strategies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub player: usize,
    pub profile: Vec<usize>,
    pub value: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionDoc {
    pub sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format: String,
    pub kind: Kind,
    pub players: Vec<PlayerDoc>,
    #[serde(default)]
    pub utilities: Vec<EntryDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub promise: Option<Vec<EntryDoc>>,
}

/// A parsed and validated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub game: AnyGame,
    pub region: Option<RectRegion>,
    pub budget: Option<ExtValue>,
    pub promise: Option<PaymentPromise>,
}

impl Instance {
    pub fn new(game: impl Into<AnyGame>) -> Self {
        Instance {
            game: game.into(),
            region: None,
            budget: None,
            promise: None,
        }
    }

    pub fn with_region(mut self, region: RectRegion) -> Self {
        self.region = Some(region);
        self
    }

    pub fn with_budget(mut self, budget: ExtValue) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_promise(mut self, promise: PaymentPromise) -> Self {
        self.promise = Some(promise);
        self
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    from_document(doc)
}

fn check_entries<G: GameForm + ?Sized>(game: &G, entries: &[EntryDoc], what: &str) -> Result<()> {
    let n = game.num_players();
    let mut seen = BTreeSet::new();
    for e in entries {
        if e.player >= n {
            return Err(Error::OutOfRange {
                what: "player",
                index: e.player,
                limit: n,
            });
        }
        let space = game.table_space(e.player);
        if e.profile.len() != space.radix().len() {
            return Err(Error::Malformed(format!(
                "{what} entry for player {} has {} indices, expected {}",
                e.player,
                e.profile.len(),
                space.radix().len()
            )));
        }
        space.checked_index(&e.profile)?;
        if !seen.insert((e.player, e.profile.clone())) {
            return Err(Error::Malformed(format!(
                "duplicate {what} entry for player {} at {:?}",
                e.player, e.profile
            )));
        }
    }
    Ok(())
}

fn finite_utility(e: &EntryDoc) -> Result<BigRational> {
    match e.value.to_value()? {
        ExtValue::Finite(r) => Ok(r),
        ExtValue::Infinite => Err(Error::InfiniteUtility { player: e.player }),
    }
}

pub fn from_document(doc: Document) -> Result<Instance> {
    if doc.format != FORMAT {
        return Err(Error::Malformed(format!(
            "unsupported format {:?}, expected {FORMAT:?}",
            doc.format
        )));
    }
    let players: Vec<Player> = doc
        .players
        .into_iter()
        .map(|p| Player {
            name: p.name,
            strategies: p.strategies,
        })
        .collect();
    let game: AnyGame = match doc.kind {
        Kind::Normal => {
            if !doc.edges.is_empty() {
                return Err(Error::Malformed(
                    "edges are only allowed in graphical documents".into(),
                ));
            }
            let mut g = Game::new(players)?;
            check_entries(&g, &doc.utilities, "utility")?;
            for e in &doc.utilities {
                g.set_utility(e.player, &e.profile, finite_utility(e)?)?;
            }
            g.into()
        }
        Kind::Graphical => {
            let edges = doc.edges.iter().map(|&[a, b]| (a, b)).collect();
            let mut g = GraphicalGame::new(players, edges)?;
            check_entries(&g, &doc.utilities, "utility")?;
            for e in &doc.utilities {
                g.set_local_utility(e.player, &e.profile, finite_utility(e)?)?;
            }
            g.into()
        }
    };

    let region = match doc.region {
        None => None,
        Some(r) => {
            for (i, s) in r.sets.iter().enumerate() {
                if s.iter().collect::<BTreeSet<_>>().len() != s.len() {
                    return Err(Error::Malformed(format!(
                        "duplicate strategy in desired set of player {i}"
                    )));
                }
            }
            let region = RectRegion::new(r.sets);
            region.validate(&game.strategy_counts())?;
            Some(region)
        }
    };
    let budget = doc.budget.as_ref().map(Num::to_value).transpose()?;
    if let Some(b) = &budget {
        if b.is_negative() {
            return Err(Error::InvalidArgument(format!("negative budget {b}")));
        }
    }
    let promise = match doc.promise {
        None => None,
        Some(entries) => {
            check_entries(&game, &entries, "promise")?;
            let mut v = PaymentPromise::new(game.num_players());
            for e in &entries {
                v.set(e.player, e.profile.clone(), e.value.to_value()?)?;
            }
            Some(v)
        }
    };
    Ok(Instance {
        game,
        region,
        budget,
        promise,
    })
}

fn utility_entries(game: &AnyGame) -> Vec<EntryDoc> {
    let mut out = Vec::new();
    for i in 0..game.num_players() {
        let space = game.table_space(i);
        let table = match game {
            AnyGame::Normal(g) => g.utilities(i),
            AnyGame::Graphical(g) => g.local_utilities(i),
        };
        for (idx, u) in table.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            out.push(EntryDoc {
                player: i,
                profile: space.decode(idx),
                value: u.into(),
            });
        }
    }
    out
}

/// Canonical document: nonzero entries only, in player then profile order.
pub fn to_document(inst: &Instance) -> Document {
    let game = &inst.game;
    Document {
        format: FORMAT.to_string(),
        kind: if game.is_graphical() {
            Kind::Graphical
        } else {
            Kind::Normal
        },
        players: game
            .players()
            .iter()
            .map(|p| PlayerDoc {
                name: p.name.clone(),
                strategies: p.strategies.clone(),
            })
            .collect(),
        utilities: utility_entries(game),
        edges: match game {
            AnyGame::Graphical(g) => g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            AnyGame::Normal(_) => Vec::new(),
        },
        region: inst.region.as_ref().map(|r| RegionDoc {
            sets: r.sets().to_vec(),
        }),
        budget: inst.budget.as_ref().map(Num::from),
        promise: inst.promise.as_ref().map(|v| {
            (0..v.num_players())
                .flat_map(|i| {
                    v.entries(i).map(move |(k, val)| EntryDoc {
                        player: i,
                        profile: k.clone(),
                        value: val.into(),
                    })
                })
                .collect()
        }),
    }
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn write_instance(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(inst)).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const EX1: &str = r#"{
        "format": "gipf-1", "kind": "normal",
        "players": [{"name": "p1", "strategies": ["s1", "s2", "s3"]},
                    {"name": "p2", "strategies": ["t1", "t2"]}],
        "utilities": [
            {"player": 0, "profile": [0, 0], "value": 1},
            {"player": 0, "profile": [1, 0], "value": 2},
            {"player": 0, "profile": [1, 1], "value": 1},
            {"player": 0, "profile": [2, 1], "value": "1/2"}
        ],
        "region": {"sets": [[0, 2], [0]]},
        "budget": "11/10"
    }"#;

    #[test]
    fn parses_values_and_defaults() {
        let inst = parse_instance(EX1).unwrap();
        let AnyGame::Normal(g) = &inst.game else {
            panic!("normal game expected")
        };
        assert_eq!(g.utility(0, &[1, 0]), &BigRational::from_integer(2.into()));
        assert_eq!(g.utility(0, &[2, 1]), &BigRational::new(1.into(), 2.into()));
        assert!(g.utility(0, &[2, 0]).is_zero());
        assert_eq!(inst.budget, Some(ExtValue::ratio(11, 10)));
        assert!(inst.promise.is_none());
    }

    #[test]
    fn fixture_round_trip() {
        let inst = Instance::new(fixtures::ex1())
            .with_region(fixtures::ex1_region())
            .with_budget(ExtValue::ratio(11, 10))
            .with_promise(fixtures::ex1_promise());
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let err = |s: &str| parse_instance(s).unwrap_err();
        let base = r#""format": "gipf-1", "kind": "normal",
            "players": [{"name": "a", "strategies": ["x", "y"]}, {"name": "b", "strategies": ["z"]}]"#;
        assert!(matches!(
            err(&format!("{{{base}, \"region\": {{\"sets\": [[0], []]}}}}")),
            Error::EmptyDesiredSet { player: 1 }
        ));
        assert!(matches!(
            err(&format!("{{{base}, \"promise\": [{{\"player\": 0, \"profile\": [0, 0], \"value\": \"-1\"}}]}}")),
            Error::NegativePromise { player: 0 }
        ));
        assert!(matches!(
            err(&format!("{{{base}, \"utilities\": [{{\"player\": 1, \"profile\": [0, 0], \"value\": \"inf\"}}]}}")),
            Error::InfiniteUtility { player: 1 }
        ));
        assert!(matches!(
            err(&format!(
                "{{{base}, \"utilities\": [{{\"player\": 0, \"profile\": [2, 0], \"value\": 1}}]}}"
            )),
            Error::OutOfRange { .. }
        ));
        assert!(matches!(
            err("{\"format\": \"gipf-1\""),
            Error::Malformed(_)
        ));
        assert!(matches!(
            err(&format!("{{{base}, \"extra\": 1}}")),
            Error::Malformed(_)
        ));
        let dup = r#"{"player": 0, "profile": [0, 0], "value": 1}"#;
        assert!(matches!(
            err(&format!("{{{base}, \"utilities\": [{dup}, {dup}]}}")),
            Error::Malformed(_)
        ));
    }

    #[test]
    fn graphical_round_trip() {
        let mut g = GraphicalGame::new(
            vec![Player::new("a", ["T", "F"]), Player::new("b", ["T", "F"])],
            vec![(0, 1)],
        )
        .unwrap();
        g.set_local_utility_int(0, &[1, 0], 3).unwrap();
        let mut v = PaymentPromise::new(2);
        v.set(1, vec![0, 1], ExtValue::Infinite).unwrap();
        let inst = Instance::new(g)
            .with_promise(v)
            .with_budget(ExtValue::Infinite);
        let text = write_instance(&inst);
        assert!(text.contains("\"inf\""));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}
