//! Two players, zero budget: X3C to GAME IMPLEMENTATION.
//!
//! Both players share the strategy list `a_0 … a_{3n̂-1}` followed by one
//! `c^{a_i}_j` per (set, member) pair, ordered by set index and then element.
//! Names are `a{i}` and `c{i}.{j}`.

use std::collections::BTreeSet;

use crate::check::{verify, Mode};
use crate::error::{Error, Result};
use crate::game::{Game, GameForm, Player, RectRegion};
use crate::promise::PaymentPromise;
use crate::value::ExtValue;

use super::x3c::{ExactCover, X3CInstance};
use super::Reduction;

/// Index of `c^{a_i}_j`; `a_i` must belong to `C_j`.
pub fn c_index(inst: &X3CInstance, i: usize, j: usize) -> usize {
    let pos = inst.sets()[j]
        .iter()
        .position(|&a| a == i)
        .expect("element not in set");
    inst.num_elements() + 3 * j + pos
}

fn strategy_names(inst: &X3CInstance) -> Vec<String> {
    let m = inst.num_elements();
    let mut names: Vec<String> = (0..m).map(|i| format!("a{i}")).collect();
    for (j, t) in inst.sets().iter().enumerate() {
        names.extend(t.iter().map(|i| format!("c{i}.{j}")));
    }
    names
}

pub fn x3c_to_two_player(inst: &X3CInstance) -> Result<Reduction<Game>> {
    let m = inst.num_elements();
    let names = strategy_names(inst);
    let mut game = Game::new(vec![
        Player::new("p1", names.clone()),
        Player::new("p2", names),
    ])?;
    let c = |i, j| c_index(inst, i, j);

    for (j, t) in inst.sets().iter().enumerate() {
        for &ai in t {
            game.set_utility_int(0, &[ai, c(ai, j)], 2)?;
            game.set_utility_int(0, &[c(ai, j), c(ai, j)], 2)?;
            for &an in t.iter().filter(|&&a| a != ai) {
                game.set_utility_int(0, &[ai, c(an, j)], 1)?;
                game.set_utility_int(0, &[c(ai, j), c(an, j)], 1)?;
            }
        }
    }
    for i in 0..m {
        let prev = (i + m - 1) % m;
        for p in inst.containing(prev) {
            let row = c(prev, p);
            game.set_utility_int(1, &[row, i], 1)?;
            for j in inst.containing(i) {
                game.set_utility_int(1, &[row, c(i, j)], 1)?;
            }
        }
    }

    let desired: Vec<usize> = (m..4 * m).collect();
    Ok(Reduction {
        game,
        region: RectRegion::new(vec![desired.clone(), desired]),
        budget: ExtValue::zero(),
    })
}

/// Infinite payments that make `c^{a_i}_j` (with `C_j` in the cover) dominate
/// `a_i` and every other `c^{a_i}_l`, for both players.
pub fn x3c_forward_promise_2p(inst: &X3CInstance, cover: &ExactCover) -> Result<PaymentPromise> {
    cover.validate(inst)?;
    let m = inst.num_elements();
    let c = |i, j| c_index(inst, i, j);
    let mut v = PaymentPromise::new(2);
    for &j in &cover.sets {
        for &ai in &inst.sets()[j] {
            for p in inst.containing(ai).into_iter().filter(|&p| p != j) {
                for &an in &inst.sets()[p] {
                    v.set(0, vec![c(ai, j), c(an, p)], ExtValue::Infinite)?;
                }
            }
            let prev = (ai + m - 1) % m;
            for p in inst
                .containing(prev)
                .into_iter()
                .filter(|&p| !cover.contains(p))
            {
                v.set(1, vec![c(prev, p), c(ai, j)], ExtValue::Infinite)?;
            }
        }
    }
    Ok(v)
}

/// Reads the X3C instance back out of the strategy names and checks that the
/// game is exactly its reduction.
pub fn x3c_from_two_player(game: &Game) -> Result<X3CInstance> {
    let bad = |why: &str| Error::Decode(format!("not a two-player X3C game: {why}"));
    if game.num_players() != 2 {
        return Err(bad("expected two players"));
    }
    let names = &game.players()[0].strategies;
    let m = names.iter().take_while(|s| s.starts_with('a')).count();
    if m == 0 || m % 3 != 0 || names.len() != 4 * m {
        return Err(bad("strategy counts"));
    }
    let mut sets = vec![Vec::new(); m];
    for s in &names[m..] {
        let (i, j) = s
            .strip_prefix('c')
            .and_then(|r| r.split_once('.'))
            .and_then(|(i, j)| Some((i.parse::<usize>().ok()?, j.parse::<usize>().ok()?)))
            .ok_or_else(|| bad(&format!("strategy name {s:?}")))?;
        sets.get_mut(j).ok_or_else(|| bad("set index"))?.push(i);
    }
    let sets = sets
        .into_iter()
        .map(|t| <[usize; 3]>::try_from(t).map_err(|_| bad("set size")))
        .collect::<Result<Vec<_>>>()?;
    let inst = X3CInstance::new(m / 3, sets).map_err(|e| bad(&e.to_string()))?;
    if x3c_to_two_player(&inst)?.game != *game {
        return Err(bad("utilities differ from the construction"));
    }
    Ok(inst)
}

/// `S = {C_j : some c^{a_i}_j is undominated for player 2}`.
pub fn decode_cover_2p(game: &Game, promise: &PaymentPromise) -> Result<ExactCover> {
    let inst = x3c_from_two_player(game)?;
    let red = x3c_to_two_player(&inst)?;
    let report = verify(game, promise, &red.region, &red.budget, Mode::Subset)?;
    if !report.holds {
        return Err(Error::Decode(
            "promise does not implement the desired region at budget 0".into(),
        ));
    }
    let m = inst.num_elements();
    let sets: BTreeSet<usize> = report
        .undominated_region
        .set(1)
        .iter()
        .map(|&s| (s - m) / 3)
        .collect();
    let cover = ExactCover::new(sets.into_iter().collect());
    cover.validate(&inst)?;
    Ok(cover)
}
