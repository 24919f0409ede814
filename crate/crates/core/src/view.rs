//! Dense payoff tables of a payment-modified game, arranged for row comparisons.

use crate::error::Result;
use crate::game::{Game, GameForm, GraphicalGame, ProfileSpace, RectRegion};
use crate::promise::PaymentPromise;
use crate::value::ExtValue;

/// Player `i`'s `[U_i + V_i]` as a matrix: one row per own strategy, one column
/// per context. A context is a profile of the other players (normal form) or of
/// the neighbors (graphical form), in ascending player order.
#[derive(Debug, Clone)]
pub struct PlayerTable {
    strategies: usize,
    context_players: Vec<usize>,
    contexts: ProfileSpace,
    values: Vec<ExtValue>,
}

impl PlayerTable {
    fn cell(&self, own: usize, ctx: usize) -> usize {
        own * self.contexts.size() + ctx
    }
}

/// The modified game `G[V]`, read-only.
#[derive(Debug, Clone)]
pub struct ModifiedGameView {
    counts: Vec<usize>,
    tables: Vec<PlayerTable>,
    graphical: bool,
}

impl ModifiedGameView {
    pub fn from_game(game: &Game, promise: Option<&PaymentPromise>) -> Result<Self> {
        if let Some(p) = promise {
            p.validate(game)?;
        }
        let counts = game.strategy_counts();
        let n = counts.len();
        let mut tables = Vec::with_capacity(n);
        for i in 0..n {
            let context_players: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let contexts = ProfileSpace::new(context_players.iter().map(|&j| counts[j]).collect())?;
            let mut table = PlayerTable {
                strategies: counts[i],
                context_players,
                contexts,
                values: vec![ExtValue::zero(); game.space().size()],
            };
            for (idx, profile) in game.space().iter().enumerate() {
                let cell = cell_of(&table, i, &profile);
                table.values[cell] = ExtValue::Finite(game.utility_at(i, idx).clone());
            }
            if let Some(p) = promise {
                for (key, v) in p.entries(i) {
                    let cell = cell_of(&table, i, key);
                    table.values[cell] = &table.values[cell] + v;
                }
            }
            tables.push(table);
        }
        Ok(ModifiedGameView {
            counts,
            tables,
            graphical: false,
        })
    }

    pub fn from_graphical(game: &GraphicalGame, promise: Option<&PaymentPromise>) -> Result<Self> {
        if let Some(p) = promise {
            p.validate(game)?;
        }
        let counts = game.strategy_counts();
        let mut tables = Vec::with_capacity(counts.len());
        for (i, &c) in counts.iter().enumerate() {
            let context_players = game.neighbors(i).to_vec();
            let contexts = ProfileSpace::new(context_players.iter().map(|&j| counts[j]).collect())?;
            // local keys are [own, ctx…] with own most significant, so the
            // local index already equals own * |contexts| + ctx
            let mut values: Vec<ExtValue> = game
                .local_utilities(i)
                .iter()
                .map(|u| ExtValue::Finite(u.clone()))
                .collect();
            if let Some(p) = promise {
                let space = game.table_space(i);
                for (key, v) in p.entries(i) {
                    let cell = space.index(key);
                    values[cell] = &values[cell] + v;
                }
            }
            tables.push(PlayerTable {
                strategies: c,
                context_players,
                contexts,
                values,
            });
        }
        Ok(ModifiedGameView {
            counts,
            tables,
            graphical: true,
        })
    }

    pub fn num_players(&self) -> usize {
        self.counts.len()
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn strategies(&self, player: usize) -> usize {
        self.tables[player].strategies
    }

    pub fn is_graphical(&self) -> bool {
        self.graphical
    }

    pub fn contexts(&self, player: usize) -> usize {
        self.tables[player].contexts.size()
    }

    pub fn context_players(&self, player: usize) -> &[usize] {
        &self.tables[player].context_players
    }

    pub fn payoff(&self, player: usize, own: usize, ctx: usize) -> &ExtValue {
        let t = &self.tables[player];
        &t.values[t.cell(own, ctx)]
    }

    pub fn row(&self, player: usize, own: usize) -> &[ExtValue] {
        let t = &self.tables[player];
        let w = t.contexts.size();
        &t.values[own * w..(own + 1) * w]
    }

    /// Strategies of the context players, in ascending player order.
    pub fn decode_context(&self, player: usize, ctx: usize) -> Vec<usize> {
        self.tables[player].contexts.decode(ctx)
    }

    /// Context index of a full strategy profile.
    pub fn context_of(&self, player: usize, profile: &[usize]) -> usize {
        let t = &self.tables[player];
        let tuple: Vec<usize> = t.context_players.iter().map(|&j| profile[j]).collect();
        t.contexts.index(&tuple)
    }

    /// `[U_i + V_i](x)` for a full profile `x`.
    pub fn modified_utility(&self, player: usize, profile: &[usize]) -> ExtValue {
        let ctx = self.context_of(player, profile);
        self.payoff(player, profile[player], ctx).clone()
    }

    /// Whether every context player's strategy in `ctx` lies in the region.
    pub fn context_within(&self, player: usize, ctx: usize, region: &RectRegion) -> bool {
        let t = &self.tables[player];
        t.contexts
            .decode(ctx)
            .iter()
            .zip(&t.context_players)
            .all(|(&x, &j)| region.contains_strategy(j, x))
    }

    /// The promise-table key addressing `(own, ctx)` for this view's game form.
    pub fn table_key(&self, player: usize, own: usize, ctx: usize) -> Vec<usize> {
        let rest = self.decode_context(player, ctx);
        if self.graphical {
            let mut key = Vec::with_capacity(rest.len() + 1);
            key.push(own);
            key.extend(rest);
            key
        } else {
            let mut key = rest;
            key.insert(player, own);
            key
        }
    }
}

fn cell_of(table: &PlayerTable, player: usize, profile: &[usize]) -> usize {
    let ctx = table
        .context_players
        .iter()
        .zip(table.contexts.radix())
        .fold(0, |acc, (&j, &r)| acc * r + profile[j]);
    table.cell(profile[player], ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn modified_utility_adds_promise() {
        let g = fixtures::ex1();
        let v = fixtures::ex1_promise();
        let view = g.view(Some(&v)).unwrap();
        assert_eq!(view.modified_utility(0, &[0, 0]), ExtValue::int(2));
        assert_eq!(view.modified_utility(1, &[0, 0]), ExtValue::ratio(11, 10));
        assert_eq!(view.modified_utility(0, &[1, 0]), ExtValue::int(2));
    }

    #[test]
    fn zero_promise_is_identity() {
        let g = fixtures::ex1();
        let plain = g.view(None).unwrap();
        let zero = g.view(Some(&PaymentPromise::new(2))).unwrap();
        for p in g.space().iter() {
            for i in 0..2 {
                assert_eq!(
                    plain.modified_utility(i, &p),
                    ExtValue::Finite(g.utility(i, &p).clone())
                );
                assert_eq!(zero.modified_utility(i, &p), plain.modified_utility(i, &p));
            }
        }
    }

    #[test]
    fn infinite_promise_absorbs() {
        let g = fixtures::ex1();
        let mut v = PaymentPromise::new(2);
        v.set(0, vec![2, 1], ExtValue::Infinite).unwrap();
        let view = g.view(Some(&v)).unwrap();
        assert_eq!(view.modified_utility(0, &[2, 1]), ExtValue::Infinite);
    }

    #[test]
    fn three_player_contexts_round_trip() {
        let g = crate::game::Game::new(vec![
            crate::game::Player::new("a", ["0", "1"]),
            crate::game::Player::new("b", ["0", "1", "2"]),
            crate::game::Player::new("c", ["0", "1"]),
        ])
        .unwrap();
        let view = g.view(None).unwrap();
        for p in g.space().iter() {
            for i in 0..3 {
                let ctx = view.context_of(i, &p);
                assert_eq!(view.table_key(i, p[i], ctx), p);
            }
        }
    }
}
