//! Weak dominance on a (possibly payment-modified) game.
//!
//! `x` dominates `y` for player `i` when `[U_i + V_i](x, c) >= [U_i + V_i](y, c)`
//! for every context `c` and the inequality is strict for at least one. On
//! graphical views the contexts range over neighbor profiles only.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::game::RectRegion;
use crate::view::ModifiedGameView;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceWitness {
    pub player: usize,
    pub dominating: usize,
    pub dominated: usize,
    /// Strategies of the context players (see [`ModifiedGameView::context_players`])
    /// at the first context where the dominating strategy is strictly better.
    pub strict_at: Vec<usize>,
}

fn check_strategy(view: &ModifiedGameView, player: usize, s: usize) -> Result<()> {
    if player >= view.num_players() {
        return Err(Error::OutOfRange {
            what: "player",
            index: player,
            limit: view.num_players(),
        });
    }
    let limit = view.strategies(player);
    if s >= limit {
        return Err(Error::OutOfRange {
            what: "strategy",
            index: s,
            limit,
        });
    }
    Ok(())
}

/// First strict context if `x` dominates `y`, without argument checks.
fn dominance_context(view: &ModifiedGameView, player: usize, x: usize, y: usize) -> Option<usize> {
    let (rx, ry) = (view.row(player, x), view.row(player, y));
    let mut strict = None;
    for (ctx, (a, b)) in rx.iter().zip(ry).enumerate() {
        match a.cmp(b) {
            Ordering::Less => return None,
            Ordering::Greater if strict.is_none() => strict = Some(ctx),
            _ => {}
        }
    }
    strict
}

pub fn dominates(
    view: &ModifiedGameView,
    player: usize,
    x: usize,
    y: usize,
) -> Result<Option<DominanceWitness>> {
    check_strategy(view, player, x)?;
    check_strategy(view, player, y)?;
    if x == y {
        return Err(Error::SelfComparison {
            player,
            strategy: x,
        });
    }
    Ok(
        dominance_context(view, player, x, y).map(|ctx| DominanceWitness {
            player,
            dominating: x,
            dominated: y,
            strict_at: view.decode_context(player, ctx),
        }),
    )
}

fn is_dominated(view: &ModifiedGameView, player: usize, y: usize) -> bool {
    (0..view.strategies(player)).any(|x| x != y && dominance_context(view, player, x, y).is_some())
}

/// `X_i^*`, ascending.
pub fn undominated(view: &ModifiedGameView, player: usize) -> Vec<usize> {
    (0..view.strategies(player))
        .filter(|&y| !is_dominated(view, player, y))
        .collect()
}

/// `X^* = X_1^* × … × X_n^*`.
pub fn undominated_region(view: &ModifiedGameView) -> RectRegion {
    RectRegion::new(
        (0..view.num_players())
            .map(|i| undominated(view, i))
            .collect(),
    )
}

/// The smallest-index undominated strategy dominating `y`.
pub fn find_dominator(view: &ModifiedGameView, player: usize, y: usize) -> Result<usize> {
    check_strategy(view, player, y)?;
    undominated(view, player)
        .into_iter()
        .find(|&x| x != y && dominance_context(view, player, x, y).is_some())
        .ok_or(Error::Undominated {
            player,
            strategy: y,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::GameForm;

    #[test]
    fn ex1_dominance_facts() {
        let g = fixtures::ex1();
        let view = g.view(None).unwrap();
        let w = dominates(&view, 0, 0, 2).unwrap().expect("s1 dominates s3");
        assert_eq!(w.strict_at, vec![0]);
        assert_eq!(dominates(&view, 1, 0, 1).unwrap(), None);
        assert_eq!(dominates(&view, 0, 0, 1).unwrap(), None);
        assert!(matches!(
            dominates(&view, 0, 1, 1),
            Err(Error::SelfComparison { .. })
        ));
        assert!(dominates(&view, 0, 0, 3).is_err());
    }

    #[test]
    fn ex1_undominated_sets() {
        let g = fixtures::ex1();
        let view = g.view(None).unwrap();
        assert_eq!(undominated(&view, 0), vec![0, 1]);
        assert_eq!(undominated(&view, 1), vec![0, 1]);
        let v = g.view(Some(&fixtures::ex1_promise())).unwrap();
        assert_eq!(undominated(&v, 0), vec![0]);
        assert_eq!(undominated(&v, 1), vec![0]);
        let v2 = g.view(Some(&fixtures::ex1_promise_cheap())).unwrap();
        assert_eq!(
            undominated_region(&v2),
            RectRegion::new(vec![vec![0], vec![0]])
        );
    }

    #[test]
    fn single_strategy_game_is_undominated() {
        let g = crate::game::Game::new(vec![
            crate::game::Player::new("a", ["x"]),
            crate::game::Player::new("b", ["y"]),
        ])
        .unwrap();
        let view = g.view(None).unwrap();
        assert_eq!(undominated_region(&view), RectRegion::full(&[1, 1]));
    }

    #[test]
    fn find_dominator_cases() {
        let view = fixtures::ex1().view(None).unwrap();
        assert_eq!(find_dominator(&view, 0, 2).unwrap(), 0);
        assert_eq!(
            find_dominator(&view, 1, 0),
            Err(Error::Undominated {
                player: 1,
                strategy: 0
            })
        );
        let ce = fixtures::ce1().view(None).unwrap();
        assert_eq!(find_dominator(&ce, 0, 1).unwrap(), 0);
    }
}
