//! Graphical games of degree three with two strategies: X3C to GAME IMPLEMENTATION.
//!
//! Players `a0 … a{3n̂-1}` come first, then `C0 … C{3n̂-1}`; every player has
//! strategies `T` (index 0) and `F` (index 1).

use num_rational::BigRational;
use num_traits::Zero;

use crate::check::{verify, Mode};
use crate::error::{Error, Result};
use crate::game::{GameForm, GraphicalGame, Player, ProfileSpace, RectRegion};
use crate::promise::PaymentPromise;
use crate::value::ExtValue;

use super::x3c::{ExactCover, X3CInstance};
use super::Reduction;

pub const T: usize = 0;
pub const F: usize = 1;

/// Budget of the construction; any value in `(0, 1)` works.
pub fn graphical_budget() -> ExtValue {
    ExtValue::ratio(1, 2)
}

/// Neighbor patterns of an element player with a number of `T`s other than one.
fn off_patterns() -> impl Iterator<Item = Vec<usize>> {
    ProfileSpace::new(vec![2, 2, 2])
        .expect("tiny space")
        .iter()
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|s| s.iter().filter(|&&x| x == T).count() != 1)
}

pub fn x3c_to_graphical(inst: &X3CInstance) -> Result<Reduction<GraphicalGame>> {
    let m = inst.num_elements();
    let mut players: Vec<Player> = (0..m)
        .map(|i| Player::new(format!("a{i}"), ["T", "F"]))
        .collect();
    players.extend((0..m).map(|j| Player::new(format!("C{j}"), ["T", "F"])));
    let edges = inst
        .sets()
        .iter()
        .enumerate()
        .flat_map(|(j, t)| t.iter().map(move |&i| (i, m + j)))
        .collect();
    let mut game = GraphicalGame::new(players, edges)?;
    for i in 0..m {
        for s in off_patterns() {
            let mut key = vec![F];
            key.extend(s);
            game.set_local_utility_int(i, &key, 1)?;
        }
    }
    let mut sets = vec![vec![T]; m];
    sets.extend(std::iter::repeat_n(vec![T, F], m));
    Ok(Reduction {
        game,
        region: RectRegion::new(sets),
        budget: graphical_budget(),
    })
}

/// `∞` to every element player for `T` against a non-unique cover pattern, and
/// `budget/(3n̂)` to each set player for its cover-consistent strategy.
pub fn x3c_forward_promise_graphical(
    inst: &X3CInstance,
    cover: &ExactCover,
    budget: &ExtValue,
) -> Result<PaymentPromise> {
    cover.validate(inst)?;
    let share = match budget {
        ExtValue::Finite(b) if *b > BigRational::zero() => {
            b / BigRational::from_integer(inst.num_elements().into())
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "budget must be finite and positive, got {budget}"
            )))
        }
    };
    let m = inst.num_elements();
    let mut v = PaymentPromise::new(2 * m);
    for i in 0..m {
        for s in off_patterns() {
            let mut key = vec![T];
            key.extend(s);
            v.set(i, key, ExtValue::Infinite)?;
        }
    }
    for j in 0..m {
        let own = if cover.contains(j) { T } else { F };
        for s in ProfileSpace::new(vec![2, 2, 2])?.iter() {
            let mut key = vec![own];
            key.extend(s);
            v.set(m + j, key, ExtValue::Finite(share.clone()))?;
        }
    }
    Ok(v)
}

/// Reads the instance from the player graph and checks the game matches its reduction.
pub fn x3c_from_graphical(game: &GraphicalGame) -> Result<X3CInstance> {
    let bad = |why: &str| Error::Decode(format!("not a graphical X3C game: {why}"));
    let n = game.num_players();
    if n == 0 || !n.is_multiple_of(6) {
        return Err(bad("player count"));
    }
    let m = n / 2;
    let sets = (m..n)
        .map(|j| <[usize; 3]>::try_from(game.neighbors(j).to_vec()).map_err(|_| bad("set degree")))
        .collect::<Result<Vec<_>>>()?;
    let inst = X3CInstance::new(m / 3, sets).map_err(|e| bad(&e.to_string()))?;
    if x3c_to_graphical(&inst)?.game != *game {
        return Err(bad("utilities differ from the construction"));
    }
    Ok(inst)
}

/// `S = {C_j : X*_{C_j} = {T}}`; each set player must end single-valued.
pub fn decode_cover_graphical(
    game: &GraphicalGame,
    promise: &PaymentPromise,
) -> Result<ExactCover> {
    let inst = x3c_from_graphical(game)?;
    let red = x3c_to_graphical(&inst)?;
    let report = verify(game, promise, &red.region, &red.budget, Mode::Subset)?;
    if !report.holds {
        return Err(Error::Decode(format!(
            "promise does not implement the desired region within budget {}",
            red.budget
        )));
    }
    let m = inst.num_elements();
    let star = &report.undominated_region;
    let mut chosen = Vec::new();
    for j in 0..m {
        match star.set(m + j) {
            [T] => chosen.push(j),
            [F] => {}
            _ => {
                return Err(Error::InvalidCover(format!(
                    "set player C{j} keeps both strategies"
                )))
            }
        }
    }
    let cover = ExactCover::new(chosen);
    cover.validate(&inst)?;
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::x3c::{brute_x3c, gen_x3c, Force};

    fn r(v: i64) -> num_rational::BigRational {
        num_rational::BigRational::from_integer(v.into())
    }

    #[test]
    fn forced_instance_shape() {
        let red = x3c_to_graphical(&X3CInstance::forced()).unwrap();
        let g = &red.game;
        assert_eq!(g.num_players(), 6);
        assert_eq!(g.degree(), 3);
        assert!((0..3).all(|i| g.neighbors(i).len() == 3));
        assert_eq!(g.local_utility(0, &[F, T, T, T]), &r(1));
        assert_eq!(g.local_utility(0, &[F, T, F, F]), &r(0));
        assert_eq!(g.local_utility(0, &[T, T, T, T]), &r(0));
        assert!(g.local_utilities(3).iter().all(Zero::is_zero));
        let expanded = g.expand().unwrap();
        assert_eq!(expanded.space().size(), 64);
    }

    #[test]
    fn forward_promise_round_trip() {
        let inst = X3CInstance::forced();
        let red = x3c_to_graphical(&inst).unwrap();
        let cover = ExactCover::new(vec![0]);
        let v = x3c_forward_promise_graphical(&inst, &cover, &red.budget).unwrap();
        let r = verify(&red.game, &v, &red.region, &red.budget, Mode::Subset).unwrap();
        assert!(r.holds);
        assert_eq!(r.cost, ExtValue::ratio(1, 2));
        assert_eq!(r.undominated_region.set(3), &[T]);
        assert_eq!(r.undominated_region.set(4), &[F]);
        assert_eq!(decode_cover_graphical(&red.game, &v).unwrap(), cover);
        assert!(x3c_forward_promise_graphical(&inst, &cover, &ExtValue::zero()).is_err());
    }

    #[test]
    fn planted_round_trip() {
        let inst = gen_x3c(2, 11, Force::Yes).unwrap();
        let cover = brute_x3c(&inst).unwrap();
        let red = x3c_to_graphical(&inst).unwrap();
        let v = x3c_forward_promise_graphical(&inst, &cover, &red.budget).unwrap();
        decode_cover_graphical(&red.game, &v)
            .unwrap()
            .validate(&inst)
            .unwrap();
    }

    #[test]
    fn undecided_set_player_is_rejected() {
        let inst = X3CInstance::forced();
        let red = x3c_to_graphical(&inst).unwrap();
        let mut v = PaymentPromise::new(6);
        for i in 0..3 {
            for s in off_patterns() {
                let mut key = vec![T];
                key.extend(s);
                v.set(i, key, ExtValue::Infinite).unwrap();
            }
        }
        // both strategies of every set player survive, so the element payments land on X*
        let r = verify(&red.game, &v, &red.region, &red.budget, Mode::Subset).unwrap();
        assert_eq!(r.undominated_region.set(3), &[T, F]);
        assert!(decode_cover_graphical(&red.game, &v).is_err());
    }
}
