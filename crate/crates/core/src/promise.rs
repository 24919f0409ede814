use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::game::GameForm;
use crate::value::ExtValue;

/// Sparse per-player payment promises; absent entries are 0.
///
/// Keys are full strategy profiles for normal-form games and
/// `[own, neighbors…]` tuples for graphical games. Zero values are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PaymentPromise {
    entries: Vec<BTreeMap<Vec<usize>, ExtValue>>,
}

impl PaymentPromise {
    /// The all-zero promise for `players` players.
    pub fn new(players: usize) -> Self {
        PaymentPromise {
            entries: vec![BTreeMap::new(); players],
        }
    }

    pub fn num_players(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, player: usize, key: Vec<usize>, value: ExtValue) -> Result<()> {
        if player >= self.entries.len() {
            return Err(Error::OutOfRange {
                what: "player",
                index: player,
                limit: self.entries.len(),
            });
        }
        if value.is_negative() {
            return Err(Error::NegativePromise { player });
        }
        if value.is_zero() {
            self.entries[player].remove(&key);
        } else {
            self.entries[player].insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, player: usize, key: &[usize]) -> Option<&ExtValue> {
        self.entries.get(player).and_then(|m| m.get(key))
    }

    pub fn value(&self, player: usize, key: &[usize]) -> ExtValue {
        self.get(player, key).cloned().unwrap_or_default()
    }

    pub fn entries(&self, player: usize) -> impl Iterator<Item = (&Vec<usize>, &ExtValue)> {
        self.entries[player].iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// `Σ_i V_i(x)` for a full profile `x` of `game`.
    pub fn total_at<G: GameForm + ?Sized>(&self, game: &G, profile: &[usize]) -> ExtValue {
        (0..self.entries.len())
            .filter_map(|i| self.get(i, &game.table_key(i, profile)))
            .sum()
    }

    /// Checks every key against the game's table shapes.
    pub fn validate<G: GameForm + ?Sized>(&self, game: &G) -> Result<()> {
        if self.entries.len() != game.num_players() {
            return Err(Error::Shape(format!(
                "promise covers {} players but the game has {}",
                self.entries.len(),
                game.num_players()
            )));
        }
        for (i, m) in self.entries.iter().enumerate() {
            let space = game.table_space(i);
            for key in m.keys() {
                space.checked_index(key)?;
            }
        }
        Ok(())
    }
}
