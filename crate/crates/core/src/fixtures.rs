//! Small reference games used by tests, benches and the CLI examples.

use crate::game::{Game, Player, RectRegion};
use crate::promise::PaymentPromise;
use crate::value::ExtValue;

/// Three strategies against two:
///
/// ```text
///        t1    t2
///  s1   1,1   1,1
///  s2   2,1   0,1
///  s3   0,0   1,0
/// ```
pub fn ex1() -> Game {
    let mut g = Game::new(vec![
        Player::new("p1", ["s1", "s2", "s3"]),
        Player::new("p2", ["t1", "t2"]),
    ])
    .expect("valid game");
    let table = [
        ([0, 0], 1, 1),
        ([0, 1], 1, 1),
        ([1, 0], 2, 1),
        ([1, 1], 0, 1),
        ([2, 0], 0, 0),
        ([2, 1], 1, 0),
    ];
    for (profile, u1, u2) in table {
        g.set_utility_int(0, &profile, u1).unwrap();
        g.set_utility_int(1, &profile, u2).unwrap();
    }
    g
}

/// `{s1, s3} × {t1}`.
pub fn ex1_region() -> RectRegion {
    RectRegion::new(vec![vec![0, 2], vec![0]])
}

/// Pays p1 one unit at `(s1, t1)` and p2 a tenth at `(s1, t1)`.
pub fn ex1_promise() -> PaymentPromise {
    let mut v = PaymentPromise::new(2);
    v.set(0, vec![0, 0], ExtValue::int(1)).unwrap();
    v.set(1, vec![0, 0], ExtValue::ratio(1, 10)).unwrap();
    v
}

/// Like [`ex1_promise`] but p2's tenth moves to `(s2, t1)`.
pub fn ex1_promise_cheap() -> PaymentPromise {
    let mut v = PaymentPromise::new(2);
    v.set(0, vec![0, 0], ExtValue::int(1)).unwrap();
    v.set(1, vec![1, 0], ExtValue::ratio(1, 10)).unwrap();
    v
}

/// Symmetric 2×2 game where `s1` dominates `s2` for both players:
/// `U(s1,s1)=2, U(s2,s1)=1, U(s1,s2)=1, U(s2,s2)=0` (arguments are p1's, p2's strategy).
pub fn ce1() -> Game {
    let mut g = Game::new(vec![
        Player::new("p1", ["s1", "s2"]),
        Player::new("p2", ["s1", "s2"]),
    ])
    .expect("valid game");
    for (profile, u) in [([0, 0], 2), ([1, 0], 1), ([0, 1], 1), ([1, 1], 0)] {
        g.set_utility_int(0, &profile, u).unwrap();
        g.set_utility_int(1, &profile, u).unwrap();
    }
    g
}

/// `{s1, s2} × {s1}`.
pub fn ce1_region() -> RectRegion {
    RectRegion::new(vec![vec![0, 1], vec![0]])
}
