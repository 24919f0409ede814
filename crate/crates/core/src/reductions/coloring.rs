//! 3-coloring to EXACT GAME IMPLEMENTATION.
//!
//! Both players share the strategy list: vertex strategies `v{v}` at `0..n`,
//! color choices `v{v}:{c}` at `n + 3v + (c-1)`, dummies `d{k}` at `4n + k`.
//! The `k`-th color choice pairs with the `k`-th dummy.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::check::{verify, Mode};
use crate::domination::dominates;
use crate::error::{Error, Result};
use crate::game::{Game, GameForm, Player, RectRegion};
use crate::promise::PaymentPromise;
use crate::value::ExtValue;

use super::Reduction;

/// An undirected simple graph on `0..vertices`, optionally with a coloring in `1..=3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringInstance {
    pub vertices: usize,
    /// Normalized to `(u, v)` with `u < v`, sorted, no duplicates.
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<u8>>,
}

impl ColoringInstance {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::OutOfRange {
                    what: "vertex",
                    index: u.max(v),
                    limit: vertices,
                });
            }
            if u == v {
                return Err(Error::Malformed(format!("self-loop on vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(ColoringInstance {
            vertices,
            edges: set.into_iter().collect(),
            coloring: None,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("valid")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid")
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|v| (v, (v + 1) % 5));
        let spokes = (0..5).map(|v| (v, v + 5));
        let inner = (0..5).map(|v| (5 + v, 5 + (v + 2) % 5));
        Self::new(10, outer.chain(spokes).chain(inner)).expect("valid")
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn check_coloring(&self, phi: &[u8]) -> Result<()> {
        if phi.len() != self.vertices {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} vertices",
                phi.len(),
                self.vertices
            )));
        }
        if let Some(v) = phi.iter().position(|c| !(1..=3).contains(c)) {
            return Err(Error::InvalidColoring(format!(
                "vertex {v} has color {}",
                phi[v]
            )));
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| phi[u] == phi[v]) {
            return Err(Error::InvalidColoring(format!(
                "edge ({u}, {v}) is monochromatic"
            )));
        }
        Ok(())
    }

    pub fn with_coloring(mut self, phi: Vec<u8>) -> Result<Self> {
        self.check_coloring(&phi)?;
        self.coloring = Some(phi);
        Ok(self)
    }
}

pub fn color_choice(n: usize, v: usize, c: u8) -> usize {
    n + 3 * v + (c as usize - 1)
}

fn dummy(n: usize, k: usize) -> usize {
    4 * n + k
}

fn strategy_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    names.extend((0..n).flat_map(|v| (1..=3).map(move |c| format!("v{v}:{c}"))));
    names.extend((0..3 * n).map(|k| format!("d{k}")));
    names
}

/// `U_1` of the construction, as a sparse list of nonzero entries.
fn player_one_utilities(graph: &ColoringInstance) -> Vec<((usize, usize), i64)> {
    let n = graph.vertices;
    let cc = |v, c| color_choice(n, v, c);
    let mut u = Vec::new();
    for v in 0..n {
        for c1 in 1..=3 {
            for c2 in 1..=3 {
                u.push(((cc(v, c1), cc(v, c2)), if c1 == c2 { 3 } else { 2 }));
            }
            u.push(((v, cc(v, c1)), 3));
        }
    }
    for &(a, b) in &graph.edges {
        for (x, y) in [(a, b), (b, a)] {
            for c1 in 1..=3 {
                for c2 in 1..=3 {
                    u.push(((cc(x, c1), cc(y, c2)), if c1 == c2 { 1 } else { 2 }));
                }
                u.push(((x, cc(y, c1)), 2));
            }
        }
    }
    for k in 0..3 * n {
        u.push(((n + k, dummy(n, k)), 1));
    }
    u
}

pub fn coloring_to_exact(graph: &ColoringInstance) -> Result<Reduction<Game>> {
    let n = graph.vertices;
    if n == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    let names = strategy_names(n);
    let mut game = Game::new(vec![
        Player::new("p1", names.clone()),
        Player::new("p2", names),
    ])?;
    for ((x, y), val) in player_one_utilities(graph) {
        game.set_utility_int(0, &[x, y], val)?;
        game.set_utility_int(1, &[y, x], val)?;
    }
    let desired: Vec<usize> = (n..4 * n).collect();
    Ok(Reduction {
        game,
        region: RectRegion::new(vec![desired.clone(), desired]),
        budget: ExtValue::int(1),
    })
}

/// Symmetric unit payments for `(v, φ(v))` against the other colors of `v`
/// and against `(u, φ(v))` for every neighbor `u`.
pub fn coloring_forward_promise(graph: &ColoringInstance, phi: &[u8]) -> Result<PaymentPromise> {
    graph.check_coloring(phi)?;
    let n = graph.vertices;
    let cc = |v, c| color_choice(n, v, c);
    let mut v1 = Vec::new();
    for v in 0..n {
        let c = phi[v];
        v1.extend((1..=3).filter(|&d| d != c).map(|d| (cc(v, c), cc(v, d))));
        v1.extend(graph.neighbors(v).map(|u| (cc(v, c), cc(u, c))));
    }
    let mut promise = PaymentPromise::new(2);
    for (x, y) in v1 {
        promise.set(0, vec![x, y], ExtValue::int(1))?;
        promise.set(1, vec![y, x], ExtValue::int(1))?;
    }
    Ok(promise)
}

/// Recovers the graph from `U_1(v, (u, 1)) = 2` and checks the game matches its reduction.
pub fn graph_from_exact(game: &Game) -> Result<ColoringInstance> {
    let bad = |why: &str| Error::Decode(format!("not a coloring game: {why}"));
    if game.num_players() != 2 {
        return Err(bad("expected two players"));
    }
    let total = game.strategy_counts()[0];
    if total == 0 || !total.is_multiple_of(7) {
        return Err(bad("strategy count"));
    }
    let n = total / 7;
    let two = BigRational::from_integer(2.into());
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (v + 1..n).map(move |u| (v, u)))
        .filter(|&(v, u)| *game.utility(0, &[v, color_choice(n, u, 1)]) == two)
        .collect();
    let graph = ColoringInstance::new(n, edges)?;
    if coloring_to_exact(&graph)?.game != *game {
        return Err(bad("utilities differ from the construction"));
    }
    Ok(graph)
}

/// `φ(v)` is the smallest color whose choice dominates `v` for both players.
pub fn decode_coloring(game: &Game, promise: &PaymentPromise) -> Result<ColoringInstance> {
    let graph = graph_from_exact(game)?;
    let red = coloring_to_exact(&graph)?;
    let report = verify(game, promise, &red.region, &red.budget, Mode::Exact)?;
    if !report.holds {
        return Err(Error::Decode(
            "promise does not exactly implement the color choices within budget 1".into(),
        ));
    }
    let n = graph.vertices;
    let view = game.view(Some(promise))?;
    let mut phi = Vec::with_capacity(n);
    for v in 0..n {
        let mut found = None;
        for c in 1..=3u8 {
            let x = color_choice(n, v, c);
            if dominates(&view, 0, x, v)?.is_some() && dominates(&view, 1, x, v)?.is_some() {
                found = Some(c);
                break;
            }
        }
        let c = found.ok_or_else(|| {
            Error::InvalidColoring(format!(
                "no color choice of vertex {v} dominates it for both players"
            ))
        })?;
        phi.push(c);
    }
    graph.with_coloring(phi)
}

/// Lexicographically first proper 3-coloring, by exhaustive search.
pub fn brute_coloring(graph: &ColoringInstance) -> Option<Vec<u8>> {
    fn go(graph: &ColoringInstance, adj: &[Vec<usize>], phi: &mut Vec<u8>) -> bool {
        let v = phi.len();
        if v == graph.vertices {
            return true;
        }
        for c in 1..=3 {
            if adj[v].iter().all(|&u| u > v || phi[u] != c) {
                phi.push(c);
                if go(graph, adj, phi) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    let adj: Vec<Vec<usize>> = (0..graph.vertices)
        .map(|v| graph.neighbors(v).collect())
        .collect();
    let mut phi = Vec::with_capacity(graph.vertices);
    go(graph, &adj, &mut phi).then_some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> num_rational::BigRational {
        num_rational::BigRational::from_integer(v.into())
    }

    #[test]
    fn triangle_layout() {
        let k3 = ColoringInstance::complete(3);
        let red = coloring_to_exact(&k3).unwrap();
        assert_eq!(red.game.strategy_counts(), vec![21, 21]);
        assert_eq!(red.region.set(0).len(), 9);
        let cc = |v, c| color_choice(3, v, c);
        assert_eq!(red.game.utility(0, &[cc(1, 2), cc(1, 2)]), &r(3));
        assert_eq!(red.game.utility(0, &[cc(0, 2), cc(1, 2)]), &r(1));
        assert_eq!(red.game.utility(0, &[cc(0, 1), cc(1, 2)]), &r(2));
        assert_eq!(red.game.utility(1, &[cc(1, 2), cc(0, 1)]), &r(2));
        assert_eq!(red.game.utility(0, &[cc(0, 1), 12]), &r(1));
        assert_eq!(red.game.utility(1, &[12, cc(0, 1)]), &r(1));
    }

    #[test]
    fn forward_promise_round_trips() {
        for graph in [
            ColoringInstance::complete(3),
            ColoringInstance::path(3),
            ColoringInstance::cycle(5),
        ] {
            let phi = brute_coloring(&graph).unwrap();
            let red = coloring_to_exact(&graph).unwrap();
            let v = coloring_forward_promise(&graph, &phi).unwrap();
            let r = verify(&red.game, &v, &red.region, &ExtValue::int(1), Mode::Exact).unwrap();
            assert!(r.holds, "{r:?}");
            let decoded = decode_coloring(&red.game, &v).unwrap();
            assert_eq!(decoded.coloring, Some(phi));
        }
    }

    #[test]
    fn improper_colorings_and_zero_promise() {
        let k3 = ColoringInstance::complete(3);
        assert!(matches!(
            coloring_forward_promise(&k3, &[1, 1, 2]),
            Err(Error::InvalidColoring(_))
        ));
        let red = coloring_to_exact(&k3).unwrap();
        assert!(decode_coloring(&red.game, &PaymentPromise::new(2)).is_err());
    }

    #[test]
    fn brute_force_cases() {
        assert_eq!(
            brute_coloring(&ColoringInstance::complete(3)),
            Some(vec![1, 2, 3])
        );
        assert_eq!(brute_coloring(&ColoringInstance::complete(4)), None);
        assert_eq!(
            brute_coloring(&ColoringInstance::new(4, []).unwrap()),
            Some(vec![1; 4])
        );
        assert!(brute_coloring(&ColoringInstance::petersen()).is_some());
        assert_eq!(ColoringInstance::petersen().edges.len(), 15);
    }
}
