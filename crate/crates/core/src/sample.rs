//! Seeded random games and regions for property tests and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::game::{Game, GameForm, GraphicalGame, Player, RectRegion};

fn players(counts: &[usize]) -> Vec<Player> {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| Player::new(format!("p{i}"), (0..c).map(|s| format!("s{s}"))))
        .collect()
}

/// Integer utilities drawn uniformly from `0..=max_utility`.
pub fn random_game<R: Rng + ?Sized>(rng: &mut R, counts: &[usize], max_utility: i64) -> Game {
    let mut g = Game::new(players(counts)).expect("counts are positive");
    let space = g.space().clone();
    for profile in space.iter() {
        for i in 0..counts.len() {
            g.set_utility_int(i, &profile, rng.gen_range(0..=max_utility))
                .expect("in range");
        }
    }
    g
}

/// Strategy counts in `lo..=hi` for each of `n` players.
pub fn random_counts<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: usize, hi: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// Each `O_i` is a uniformly sized nonempty subset of at most `max_size` strategies.
pub fn random_region<R: Rng + ?Sized>(
    rng: &mut R,
    counts: &[usize],
    max_size: usize,
) -> RectRegion {
    RectRegion::new(
        counts
            .iter()
            .map(|&c| {
                let k = rng.gen_range(1..=c.min(max_size.max(1)));
                sample(rng, c, k).into_vec()
            })
            .collect(),
    )
}

/// Whether some player is left with undesired strategies while every
/// opponent profile is desired.
pub fn is_degenerate<G: GameForm + ?Sized>(game: &G, region: &RectRegion) -> bool {
    let counts = game.strategy_counts();
    (0..counts.len()).any(|i| {
        region.set(i).len() < counts[i]
            && (0..counts.len()).all(|j| j == i || region.set(j).len() == counts[j])
    })
}

/// Random graph with edge probability `p` and random local utilities.
pub fn random_graphical<R: Rng + ?Sized>(
    rng: &mut R,
    counts: &[usize],
    p: f64,
    max_utility: i64,
) -> GraphicalGame {
    let n = counts.len();
    let edges = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect::<Vec<_>>();
    let mut g = GraphicalGame::new(players(counts), edges).expect("simple graph");
    for i in 0..n {
        let space = g.table_space(i).clone();
        for key in space.iter() {
            g.set_local_utility_int(i, &key, rng.gen_range(0..=max_utility))
                .expect("in range");
        }
    }
    g
}
