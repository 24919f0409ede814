//! Games in normal form and graphical form, strategy profiles and rectangular regions.

use std::collections::BTreeSet;
use std::ops::Deref;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::promise::PaymentPromise;
use crate::view::ModifiedGameView;

/// Upper bound on the number of cells in any dense table.
pub const MAX_PROFILES: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Player {
    pub name: String,
    pub strategies: Vec<String>,
}

impl Player {
    pub fn new(
        name: impl Into<String>,
        strategies: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        Player {
            name: name.into(),
            strategies: strategies.into_iter().map(Into::into).collect(),
        }
    }
}

/// Mixed-radix indexing of tuples `(x_0, …, x_{k-1})` with `x_0` most significant,
/// so that index order is lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileSpace {
    radix: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl ProfileSpace {
    pub fn new(radix: Vec<usize>) -> Result<Self> {
        let mut strides = vec![0; radix.len()];
        let mut size: usize = 1;
        for (k, &r) in radix.iter().enumerate().rev() {
            strides[k] = size;
            size = size
                .checked_mul(r)
                .filter(|&s| s <= MAX_PROFILES)
                .ok_or_else(|| {
                    Error::TooLarge(format!("table over {radix:?} exceeds {MAX_PROFILES} cells"))
                })?;
        }
        Ok(ProfileSpace {
            radix,
            strides,
            size,
        })
    }

    pub fn radix(&self) -> &[usize] {
        &self.radix
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.radix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radix.is_empty()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.radix.len());
        tuple.iter().zip(&self.strides).map(|(x, s)| x * s).sum()
    }

    pub fn checked_index(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.radix.len() {
            return Err(Error::Shape(format!(
                "profile {tuple:?} has {} entries, expected {}",
                tuple.len(),
                self.radix.len()
            )));
        }
        for (&x, &r) in tuple.iter().zip(&self.radix) {
            if x >= r {
                return Err(Error::OutOfRange {
                    what: "strategy",
                    index: x,
                    limit: r,
                });
            }
        }
        Ok(self.index(tuple))
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let x = idx / s;
                idx %= s;
                x
            })
            .collect()
    }

    /// All tuples in lexicographic order.
    pub fn iter(&self) -> Product {
        Product::new(self.radix.iter().map(|&r| (0..r).collect()).collect())
    }
}

/// Lexicographic iterator over the Cartesian product of index lists.
#[derive(Debug, Clone)]
pub struct Product {
    sets: Vec<Vec<usize>>,
    pos: Vec<usize>,
    done: bool,
}

impl Product {
    pub fn new(sets: Vec<Vec<usize>>) -> Self {
        let done = sets.iter().any(Vec::is_empty);
        let pos = vec![0; sets.len()];
        Product { sets, pos, done }
    }
}

impl Iterator for Product {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self
            .pos
            .iter()
            .zip(&self.sets)
            .map(|(&p, s)| s[p])
            .collect();
        let mut k = self.sets.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.pos[k] += 1;
            if self.pos[k] < self.sets[k].len() {
                break;
            }
            self.pos[k] = 0;
        }
        Some(item)
    }
}

/// One strategy index per player, in player order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyProfile(pub Vec<usize>);

impl StrategyProfile {
    /// Splits into `(x_i, x_-i)`.
    pub fn split(&self, player: usize) -> (usize, Vec<usize>) {
        let mut rest = self.0.clone();
        let own = rest.remove(player);
        (own, rest)
    }

    /// Inverse of [`StrategyProfile::split`].
    pub fn join(player: usize, own: usize, rest: &[usize]) -> Self {
        let mut v = rest.to_vec();
        v.insert(player, own);
        StrategyProfile(v)
    }
}

impl Deref for StrategyProfile {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// A rectangular strategy-profile region `O_1 × … × O_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RectRegion {
    sets: Vec<Vec<usize>>,
}

impl RectRegion {
    /// Builds a region; each set is sorted and deduplicated.
    pub fn new(sets: Vec<Vec<usize>>) -> Self {
        let sets = sets
            .into_iter()
            .map(|s| s.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        RectRegion { sets }
    }

    pub fn full(counts: &[usize]) -> Self {
        RectRegion {
            sets: counts.iter().map(|&c| (0..c).collect()).collect(),
        }
    }

    pub fn validate(&self, counts: &[usize]) -> Result<()> {
        if self.sets.len() != counts.len() {
            return Err(Error::Shape(format!(
                "region has {} sets but the game has {} players",
                self.sets.len(),
                counts.len()
            )));
        }
        for (player, (set, &c)) in self.sets.iter().zip(counts).enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyDesiredSet { player });
            }
            if let Some(&x) = set.iter().find(|&&x| x >= c) {
                return Err(Error::OutOfRange {
                    what: "strategy",
                    index: x,
                    limit: c,
                });
            }
        }
        Ok(())
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, player: usize) -> &[usize] {
        &self.sets[player]
    }

    pub fn num_players(&self) -> usize {
        self.sets.len()
    }

    pub fn contains_strategy(&self, player: usize, strategy: usize) -> bool {
        self.sets[player].binary_search(&strategy).is_ok()
    }

    pub fn contains(&self, profile: &[usize]) -> bool {
        profile
            .iter()
            .enumerate()
            .all(|(i, &x)| self.contains_strategy(i, x))
    }

    /// Whether `x_-i` lies in `O_-i`.
    pub fn contains_others(&self, player: usize, profile: &[usize]) -> bool {
        profile
            .iter()
            .enumerate()
            .all(|(j, &x)| j == player || self.contains_strategy(j, x))
    }

    /// `X_i \ O_i` in ascending order.
    pub fn complement(&self, player: usize, count: usize) -> Vec<usize> {
        (0..count)
            .filter(|&x| !self.contains_strategy(player, x))
            .collect()
    }

    pub fn size(&self) -> u128 {
        self.sets.iter().map(|s| s.len() as u128).product()
    }

    pub fn profiles(&self) -> Product {
        Product::new(self.sets.clone())
    }

    pub fn is_full(&self, counts: &[usize]) -> bool {
        self.sets.iter().zip(counts).all(|(s, &c)| s.len() == c)
    }
}

/// Anything that can be turned into a payment-modified view.
pub trait GameForm {
    fn players(&self) -> &[Player];

    fn num_players(&self) -> usize {
        self.players().len()
    }

    fn strategy_counts(&self) -> Vec<usize> {
        self.players().iter().map(|p| p.strategies.len()).collect()
    }

    /// Key space of player `i`'s utility and promise tables.
    fn table_space(&self, player: usize) -> &ProfileSpace;

    /// Projects a full profile onto player `i`'s table key.
    fn table_key(&self, player: usize, profile: &[usize]) -> Vec<usize>;

    fn view(&self, promise: Option<&PaymentPromise>) -> Result<ModifiedGameView>;

    fn is_graphical(&self) -> bool;
}

fn check_players(players: &[Player]) -> Result<()> {
    if players.is_empty() {
        return Err(Error::Malformed("game has no players".into()));
    }
    for p in players {
        if p.strategies.is_empty() {
            return Err(Error::Malformed(format!(
                "player {:?} has no strategies",
                p.name
            )));
        }
    }
    Ok(())
}

/// A finite game in normal form with exact rational utilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    players: Vec<Player>,
    space: ProfileSpace,
    utilities: Vec<Vec<BigRational>>,
}

impl Game {
    /// A game whose utilities are all zero.
    pub fn new(players: Vec<Player>) -> Result<Self> {
        check_players(&players)?;
        let space = ProfileSpace::new(players.iter().map(|p| p.strategies.len()).collect())?;
        let utilities = vec![vec![BigRational::zero(); space.size()]; players.len()];
        Ok(Game {
            players,
            space,
            utilities,
        })
    }

    pub fn space(&self) -> &ProfileSpace {
        &self.space
    }

    pub fn utility(&self, player: usize, profile: &[usize]) -> &BigRational {
        &self.utilities[player][self.space.index(profile)]
    }

    pub fn utility_at(&self, player: usize, index: usize) -> &BigRational {
        &self.utilities[player][index]
    }

    pub fn utilities(&self, player: usize) -> &[BigRational] {
        &self.utilities[player]
    }

    pub fn set_utility(
        &mut self,
        player: usize,
        profile: &[usize],
        value: BigRational,
    ) -> Result<()> {
        if player >= self.players.len() {
            return Err(Error::OutOfRange {
                what: "player",
                index: player,
                limit: self.players.len(),
            });
        }
        let idx = self.space.checked_index(profile)?;
        self.utilities[player][idx] = value;
        Ok(())
    }

    pub fn set_utility_int(&mut self, player: usize, profile: &[usize], value: i64) -> Result<()> {
        self.set_utility(player, profile, BigRational::from_integer(value.into()))
    }

    /// `max_{i, x} U_i(x)`.
    pub fn max_utility(&self) -> BigRational {
        self.utilities
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

impl GameForm for Game {
    fn players(&self) -> &[Player] {
        &self.players
    }

    fn table_space(&self, _player: usize) -> &ProfileSpace {
        &self.space
    }

    fn table_key(&self, _player: usize, profile: &[usize]) -> Vec<usize> {
        profile.to_vec()
    }

    fn view(&self, promise: Option<&PaymentPromise>) -> Result<ModifiedGameView> {
        ModifiedGameView::from_game(self, promise)
    }

    fn is_graphical(&self) -> bool {
        false
    }
}

/// A game whose utilities depend only on a player's own strategy and its neighbors'.
///
/// Local tables are keyed by `[own, neighbor strategies in ascending neighbor order]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicalGame {
    players: Vec<Player>,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    spaces: Vec<ProfileSpace>,
    local: Vec<Vec<BigRational>>,
}

impl GraphicalGame {
    pub fn new(players: Vec<Player>, edges: Vec<(usize, usize)>) -> Result<Self> {
        check_players(&players)?;
        let n = players.len();
        let mut seen = BTreeSet::new();
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::OutOfRange {
                        what: "player",
                        index: v,
                        limit: n,
                    });
                }
            }
            if a == b {
                return Err(Error::Malformed(format!("self-loop on player {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::Malformed(format!("duplicate edge {e:?}")));
            }
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for ns in &mut neighbors {
            ns.sort_unstable();
        }
        let counts: Vec<usize> = players.iter().map(|p| p.strategies.len()).collect();
        let spaces = neighbors
            .iter()
            .enumerate()
            .map(|(i, ns)| {
                let mut radix = vec![counts[i]];
                radix.extend(ns.iter().map(|&j| counts[j]));
                ProfileSpace::new(radix)
            })
            .collect::<Result<Vec<_>>>()?;
        let local = spaces
            .iter()
            .map(|s| vec![BigRational::zero(); s.size()])
            .collect();
        Ok(GraphicalGame {
            players,
            edges: seen.into_iter().collect(),
            neighbors,
            spaces,
            local,
        })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, player: usize) -> &[usize] {
        &self.neighbors[player]
    }

    pub fn degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn local_utility(&self, player: usize, key: &[usize]) -> &BigRational {
        &self.local[player][self.spaces[player].index(key)]
    }

    pub fn local_utilities(&self, player: usize) -> &[BigRational] {
        &self.local[player]
    }

    pub fn set_local_utility(
        &mut self,
        player: usize,
        key: &[usize],
        value: BigRational,
    ) -> Result<()> {
        if player >= self.players.len() {
            return Err(Error::OutOfRange {
                what: "player",
                index: player,
                limit: self.players.len(),
            });
        }
        let idx = self.spaces[player].checked_index(key)?;
        self.local[player][idx] = value;
        Ok(())
    }

    pub fn set_local_utility_int(
        &mut self,
        player: usize,
        key: &[usize],
        value: i64,
    ) -> Result<()> {
        self.set_local_utility(player, key, BigRational::from_integer(value.into()))
    }

    /// Materializes the full normal-form game.
    pub fn expand(&self) -> Result<Game> {
        let mut game = Game::new(self.players.clone())?;
        let space = game.space.clone();
        for (idx, profile) in space.iter().enumerate() {
            for i in 0..self.players.len() {
                let key = self.table_key(i, &profile);
                game.utilities[i][idx] = self.local_utility(i, &key).clone();
            }
        }
        Ok(game)
    }

    /// Rewrites a neighborhood-local promise over full profiles.
    pub fn expand_promise(&self, promise: &PaymentPromise) -> Result<PaymentPromise> {
        promise.validate(self)?;
        let space = ProfileSpace::new(self.strategy_counts())?;
        let mut out = PaymentPromise::new(self.players.len());
        for profile in space.iter() {
            for i in 0..self.players.len() {
                let key = self.table_key(i, &profile);
                if let Some(v) = promise.get(i, &key) {
                    out.set(i, profile.clone(), v.clone())?;
                }
            }
        }
        Ok(out)
    }
}

impl GameForm for GraphicalGame {
    fn players(&self) -> &[Player] {
        &self.players
    }

    fn table_space(&self, player: usize) -> &ProfileSpace {
        &self.spaces[player]
    }

    fn table_key(&self, player: usize, profile: &[usize]) -> Vec<usize> {
        let mut key = Vec::with_capacity(1 + self.neighbors[player].len());
        key.push(profile[player]);
        key.extend(self.neighbors[player].iter().map(|&j| profile[j]));
        key
    }

    fn view(&self, promise: Option<&PaymentPromise>) -> Result<ModifiedGameView> {
        ModifiedGameView::from_graphical(self, promise)
    }

    fn is_graphical(&self) -> bool {
        true
    }
}

/// Either representation, as read from an instance document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGame {
    Normal(Game),
    Graphical(GraphicalGame),
}

impl AnyGame {
    /// The normal-form game, expanding a graphical one if needed.
    pub fn to_normal(&self) -> Result<Game> {
        match self {
            AnyGame::Normal(g) => Ok(g.clone()),
            AnyGame::Graphical(g) => g.expand(),
        }
    }
}

impl From<Game> for AnyGame {
    fn from(g: Game) -> Self {
        AnyGame::Normal(g)
    }
}

impl From<GraphicalGame> for AnyGame {
    fn from(g: GraphicalGame) -> Self {
        AnyGame::Graphical(g)
    }
}

impl GameForm for AnyGame {
    fn players(&self) -> &[Player] {
        match self {
            AnyGame::Normal(g) => g.players(),
            AnyGame::Graphical(g) => g.players(),
        }
    }

    fn table_space(&self, player: usize) -> &ProfileSpace {
        match self {
            AnyGame::Normal(g) => g.table_space(player),
            AnyGame::Graphical(g) => g.table_space(player),
        }
    }

    fn table_key(&self, player: usize, profile: &[usize]) -> Vec<usize> {
        match self {
            AnyGame::Normal(g) => g.table_key(player, profile),
            AnyGame::Graphical(g) => g.table_key(player, profile),
        }
    }

    fn view(&self, promise: Option<&PaymentPromise>) -> Result<ModifiedGameView> {
        match self {
            AnyGame::Normal(g) => g.view(promise),
            AnyGame::Graphical(g) => g.view(promise),
        }
    }

    fn is_graphical(&self) -> bool {
        matches!(self, AnyGame::Graphical(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_space_is_lexicographic() {
        let s = ProfileSpace::new(vec![2, 3]).unwrap();
        let all: Vec<_> = s.iter().collect();
        assert_eq!(all.len(), 6);
        for (k, p) in all.iter().enumerate() {
            assert_eq!(s.index(p), k);
            assert_eq!(&s.decode(k), p);
        }
        assert_eq!(all[1], vec![0, 1]);
        assert!(s.checked_index(&[2, 0]).is_err());
    }

    #[test]
    fn empty_space_has_one_tuple() {
        let s = ProfileSpace::new(vec![]).unwrap();
        assert_eq!(s.size(), 1);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn region_validation() {
        let r = RectRegion::new(vec![vec![2, 0, 0], vec![]]);
        assert_eq!(r.set(0), &[0, 2]);
        assert_eq!(
            r.validate(&[3, 2]),
            Err(Error::EmptyDesiredSet { player: 1 })
        );
        assert!(RectRegion::new(vec![vec![3], vec![0]])
            .validate(&[3, 2])
            .is_err());
        assert!(RectRegion::new(vec![vec![0]]).validate(&[3, 2]).is_err());
    }

    #[test]
    fn graphical_rejects_bad_edges() {
        let ps = vec![Player::new("a", ["T", "F"]), Player::new("b", ["T", "F"])];
        assert!(GraphicalGame::new(ps.clone(), vec![(0, 0)]).is_err());
        assert!(GraphicalGame::new(ps.clone(), vec![(0, 1), (1, 0)]).is_err());
        assert!(GraphicalGame::new(ps, vec![(0, 2)]).is_err());
    }

    #[test]
    fn expand_single_isolated_player() {
        let mut gg =
            GraphicalGame::new(vec![Player::new("solo", ["x", "y", "z"])], vec![]).unwrap();
        gg.set_local_utility_int(0, &[1], 5).unwrap();
        let g = gg.expand().unwrap();
        assert_eq!(g.utilities(0), gg.local_utilities(0));
    }
}
