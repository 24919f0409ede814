//! Minimum-budget implementation by enumeration over dominator mappings,
//! exactification on equitable games, and zero-cost implementation.
//!
//! The enumeration works on utilities scaled to integers by the lcm of their
//! denominators. When every scaled value fits in 62 bits the scan runs on
//! `i128`, otherwise on `BigInt`.
//!
//! A player `i` with undesired strategies whose opponents' desired sets are
//! everything (`O_-i = X_-i`) gets no infinite off-region payments, so the
//! payments computed for a mapping may tie an undesired strategy with its image
//! everywhere. Such a mapping is usable only if one of its desired profiles
//! has slack below the mapping's bound, where a small extra payment restores
//! strictness. Mappings without that slack have a bound that is an infimum but
//! not a minimum.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::{region_payment_max, verify, Mode};
use crate::error::{Error, Result};
use crate::game::{Game, GameForm, ProfileSpace, RectRegion};
use crate::mapping::DominatorMapping;
use crate::promise::PaymentPromise;
use crate::value::ExtValue;
use crate::view::ModifiedGameView;

/// Cap on the cells of all per-player payment tables built by the solver.
pub const MAX_TABLE_CELLS: usize = 1 << 27;

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Worker threads; 0 means one per available processor.
    pub jobs: usize,
}

impl SolveOptions {
    fn threads(&self) -> usize {
        if self.jobs > 0 {
            self.jobs
        } else {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub delta: ExtValue,
    pub promise: PaymentPromise,
    pub mapping: DominatorMapping,
    pub exactified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquitableReport {
    pub equitable: bool,
    /// `(|O_i|, |X_-i \ O_-i|)` per player.
    pub margins: Vec<(u128, u128)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counter {
    pub player: usize,
    pub strategy: usize,
    pub counter: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PneWitness {
    /// An outside strategy no inside strategy weakly beats on the region.
    Defection { player: usize, strategy: usize },
    /// The smallest countering inside strategy for every outside strategy.
    Counters { counters: Vec<Counter> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PneReport {
    pub holds: bool,
    pub witness: PneWitness,
}

fn check_mapping(
    region: &RectRegion,
    count: usize,
    player: usize,
    f: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>> {
    let mut sorted = f.to_vec();
    sorted.sort_unstable();
    let domain: Vec<usize> = sorted.iter().map(|&(x, _)| x).collect();
    if domain != region.complement(player, count) {
        return Err(Error::InvalidArgument(format!(
            "mapping domain {domain:?} is not the undesired set of player {player}"
        )));
    }
    if let Some(&(_, o)) = sorted
        .iter()
        .find(|&&(_, o)| !region.contains_strategy(player, o))
    {
        return Err(Error::InvalidArgument(format!(
            "player {player}: image {o} is not desired"
        )));
    }
    Ok(sorted)
}

/// Payments for one player's mapping `F_i` over the desired region:
/// `max(0, max_{x ∈ F_i^{-1}(o_i)} U_i(x, o_-i) − U_i(o))`, or 0 on an empty preimage.
pub fn compute_v(
    game: &Game,
    player: usize,
    f: &[(usize, usize)],
    region: &RectRegion,
) -> Result<BTreeMap<Vec<usize>, BigRational>> {
    let counts = game.strategy_counts();
    region.validate(&counts)?;
    if player >= counts.len() {
        return Err(Error::OutOfRange {
            what: "player",
            index: player,
            limit: counts.len(),
        });
    }
    let f = check_mapping(region, counts[player], player, f)?;
    let mut out = BTreeMap::new();
    for o in region.profiles() {
        let mut probe = o.clone();
        let mut best: Option<&BigRational> = None;
        for &(x, img) in &f {
            if img == o[player] {
                probe[player] = x;
                let u = game.utility(player, &probe);
                if best.is_none_or(|b| u > b) {
                    best = Some(u);
                }
            }
        }
        let v = match best {
            Some(b) => (b - game.utility(player, &o)).max(BigRational::zero()),
            None => BigRational::zero(),
        };
        out.insert(o, v);
    }
    Ok(out)
}

/// Whether `|O_i| ≤ |X_-i \ O_-i|` for every player.
pub fn is_equitable<G: GameForm + ?Sized>(
    game: &G,
    region: &RectRegion,
) -> Result<EquitableReport> {
    let counts = game.strategy_counts();
    region.validate(&counts)?;
    let margins: Vec<(u128, u128)> = (0..counts.len())
        .map(|i| {
            let (all, inside) = (0..counts.len())
                .filter(|&j| j != i)
                .fold((1u128, 1u128), |(a, b), j| {
                    (a * counts[j] as u128, b * region.set(j).len() as u128)
                });
            (region.set(i).len() as u128, all - inside)
        })
        .collect();
    Ok(EquitableReport {
        equitable: margins.iter().all(|&(a, b)| a <= b),
        margins,
    })
}

trait Scalar:
    Clone
    + Ord
    + Send
    + Sync
    + Zero
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
{
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Utilities times the lcm of their denominators.
fn scale_utilities(game: &Game) -> (BigInt, Vec<Vec<BigInt>>) {
    let n = game.num_players();
    let scale = (0..n)
        .flat_map(|i| game.utilities(i))
        .fold(BigInt::one(), |l, u| l.lcm(u.denom()));
    let values = (0..n)
        .map(|i| {
            game.utilities(i)
                .iter()
                .map(|u| u.numer() * (&scale / u.denom()))
                .collect()
        })
        .collect();
    (scale, values)
}

fn strides(counts: &[usize]) -> Vec<usize> {
    let mut s = vec![1; counts.len()];
    for k in (0..counts.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * counts[k + 1];
    }
    s
}

struct PlayerPlan<T> {
    undesired: Vec<usize>,
    desired: Vec<usize>,
    count: usize,
    /// `count × m` payments, one row per mapping of this player.
    table: Vec<T>,
    /// Per mapping: desired positions whose preimage ties its image everywhere.
    lacking: Vec<Vec<usize>>,
    /// Per desired position: indices of the region profiles with that own strategy.
    groups: Vec<Vec<usize>>,
}

struct Plan<T> {
    profiles: Vec<Vec<usize>>,
    players: Vec<PlayerPlan<T>>,
    total: u128,
    degenerate: Option<usize>,
}

fn decode_choices(mut f: usize, digits: usize, base: usize) -> Vec<usize> {
    let mut out = vec![0; digits];
    for d in out.iter_mut().rev() {
        *d = f % base;
        f /= base;
    }
    out
}

fn is_degenerate(region: &RectRegion, counts: &[usize], i: usize) -> bool {
    region.set(i).len() < counts[i]
        && (0..counts.len()).all(|j| j == i || region.set(j).len() == counts[j])
}

fn build_plan<T: Scalar>(game: &Game, region: &RectRegion, util: &[Vec<T>]) -> Result<Plan<T>> {
    let counts = game.strategy_counts();
    let n = counts.len();
    let st = strides(&counts);
    let profiles: Vec<Vec<usize>> = region.profiles().collect();
    let m = profiles.len();
    let index: Vec<usize> = profiles.iter().map(|o| game.space().index(o)).collect();
    let mut players = Vec::with_capacity(n);
    let mut total: u128 = 1;
    let mut cells: usize = 0;
    let mut degenerate = None;
    for i in 0..n {
        let undesired = region.complement(i, counts[i]);
        let desired = region.set(i).to_vec();
        let d = undesired.len();
        let count = (desired.len() as u128)
            .checked_pow(d as u32)
            .filter(|&c| c <= usize::MAX as u128)
            .ok_or_else(|| Error::TooLarge(format!("player {i} has too many dominator mappings")))?
            as usize;
        cells = count
            .checked_mul(m)
            .and_then(|c| c.checked_add(cells))
            .filter(|&c| c <= MAX_TABLE_CELLS)
            .ok_or_else(|| {
                Error::TooLarge(format!("payment tables exceed {MAX_TABLE_CELLS} cells"))
            })?;
        total = total
            .checked_mul(count as u128)
            .ok_or_else(|| Error::TooLarge("mapping space overflows".into()))?;
        let pos_of = |s: usize| desired.binary_search(&s).expect("desired strategy");
        let own_pos: Vec<usize> = profiles.iter().map(|o| pos_of(o[i])).collect();
        let mut groups = vec![Vec::new(); desired.len()];
        for (k, &p) in own_pos.iter().enumerate() {
            groups[p].push(k);
        }
        let degen = is_degenerate(region, &counts, i);
        if degen && degenerate.is_none() {
            degenerate = Some(i);
        }
        let ui = &util[i];
        let mut table = Vec::with_capacity(count * m);
        let mut lacking = vec![Vec::new(); count];
        for (f, lack) in lacking.iter_mut().enumerate() {
            let choice = decode_choices(f, d, desired.len());
            let row_start = table.len();
            for k in 0..m {
                let base = index[k] - profiles[k][i] * st[i];
                let mut best: Option<&T> = None;
                for (j, &x) in undesired.iter().enumerate() {
                    if choice[j] == own_pos[k] {
                        let u = &ui[base + x * st[i]];
                        if best.is_none_or(|b| u > b) {
                            best = Some(u);
                        }
                    }
                }
                let v = match best {
                    Some(b) if *b > ui[index[k]] => b.clone() - &ui[index[k]],
                    _ => T::zero(),
                };
                table.push(v);
            }
            if degen {
                let row = &table[row_start..];
                for (p, group) in groups.iter().enumerate() {
                    let tied = undesired.iter().enumerate().any(|(j, &x)| {
                        choice[j] == p
                            && group.iter().all(|&k| {
                                let base = index[k] - profiles[k][i] * st[i];
                                ui[index[k]].clone() + &row[k] <= ui[base + x * st[i]]
                            })
                    });
                    if tied {
                        lack.push(p);
                    }
                }
            }
        }
        players.push(PlayerPlan {
            undesired,
            desired,
            count,
            table,
            lacking,
            groups,
        });
    }
    Ok(Plan {
        profiles,
        players,
        total,
        degenerate,
    })
}

#[derive(Clone)]
struct ScanOut<T> {
    best: Option<(T, u128)>,
    unattained: Option<T>,
}

impl<T: Scalar> ScanOut<T> {
    fn empty() -> Self {
        ScanOut {
            best: None,
            unattained: None,
        }
    }

    fn merge(self, other: Self) -> Self {
        let best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if (&b.0, b.1) < (&a.0, a.1) { b } else { a }),
            (a, b) => a.or(b),
        };
        let unattained = match (self.unattained, other.unattained) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        ScanOut { best, unattained }
    }
}

fn decode_index<T>(plan: &Plan<T>, mut g: u128) -> Vec<usize> {
    let mut digits = vec![0; plan.players.len()];
    for (d, p) in digits.iter_mut().zip(&plan.players).rev() {
        *d = (g % p.count as u128) as usize;
        g /= p.count as u128;
    }
    digits
}

fn attained<T: Scalar>(plan: &Plan<T>, digits: &[usize], sums: &[T], delta: &T) -> bool {
    plan.players.iter().zip(digits).all(|(p, &f)| {
        p.lacking[f]
            .iter()
            .all(|&pos| p.groups[pos].iter().any(|&k| sums[k] < *delta))
    })
}

fn scan<T: Scalar>(plan: &Plan<T>, lo: u128, hi: u128) -> ScanOut<T> {
    let n = plan.players.len();
    let m = plan.profiles.len();
    let mut out = ScanOut::empty();
    if lo >= hi {
        return out;
    }
    let mut digits = decode_index(plan, lo);
    let mut partial: Vec<Vec<T>> = vec![vec![T::zero(); m]; n + 1];
    let refill = |partial: &mut Vec<Vec<T>>, digits: &[usize], from: usize| {
        for p in from..n {
            let row = &plan.players[p].table[digits[p] * m..(digits[p] + 1) * m];
            let (head, tail) = partial.split_at_mut(p + 1);
            for ((dst, src), v) in tail[0].iter_mut().zip(&head[p]).zip(row) {
                *dst = src.clone() + v;
            }
        }
    };
    refill(&mut partial, &digits, 0);
    let mut g = lo;
    loop {
        let sums = &partial[n];
        let delta = sums.iter().max().expect("nonempty region");
        let beats_best = out.best.as_ref().is_none_or(|(b, _)| delta < b);
        let beats_unattained = out.unattained.as_ref().is_none_or(|u| delta < u);
        if beats_best || beats_unattained {
            if attained(plan, &digits, sums, delta) {
                if beats_best {
                    out.best = Some((delta.clone(), g));
                }
            } else if beats_unattained {
                out.unattained = Some(delta.clone());
            }
        }
        g += 1;
        if g >= hi {
            break;
        }
        let mut p = n;
        loop {
            p -= 1;
            digits[p] += 1;
            if digits[p] < plan.players[p].count {
                break;
            }
            digits[p] = 0;
        }
        refill(&mut partial, &digits, p);
    }
    out
}

fn search<T: Scalar>(plan: &Plan<T>, opts: SolveOptions) -> Result<ScanOut<T>> {
    let threads = opts.threads();
    if threads <= 1 || plan.total < 4096 {
        return Ok(scan(plan, 0, plan.total));
    }
    let chunks = (threads as u128 * 8).min(plan.total);
    let step = plan.total.div_ceil(chunks);
    let ranges: Vec<(u128, u128)> = (0..chunks)
        .map(|c| (c * step, ((c + 1) * step).min(plan.total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        ranges
            .par_iter()
            .map(|&(lo, hi)| scan(plan, lo, hi))
            .reduce(ScanOut::empty, ScanOut::merge)
    }))
}

fn finish<T: Scalar>(
    game: &Game,
    region: &RectRegion,
    plan: &Plan<T>,
    scale: &BigInt,
    g: u128,
) -> Result<SolveResult> {
    let n = plan.players.len();
    let m = plan.profiles.len();
    let digits = decode_index(plan, g);
    let to_q = |v: &T| BigRational::new(v.to_big(), scale.clone());
    let mut sums = vec![T::zero(); m];
    for (p, &f) in plan.players.iter().zip(&digits) {
        for (s, v) in sums.iter_mut().zip(&p.table[f * m..(f + 1) * m]) {
            *s = s.clone() + v;
        }
    }
    let delta = sums.iter().max().expect("nonempty region").clone();
    let mut promise = PaymentPromise::new(n);
    let mut choices = Vec::with_capacity(n);
    for (i, (p, &f)) in plan.players.iter().zip(&digits).enumerate() {
        let row = &p.table[f * m..(f + 1) * m];
        let mut values: Vec<BigRational> = row.iter().map(to_q).collect();
        for &pos in &p.lacking[f] {
            let k = *p.groups[pos]
                .iter()
                .find(|&&k| sums[k] < delta)
                .expect("attained mapping has slack");
            let slack = to_q(&(delta.clone() - &sums[k]));
            values[k] += slack / BigRational::from_integer(BigInt::from(n));
        }
        for (o, v) in plan.profiles.iter().zip(values) {
            promise.set(i, o.clone(), ExtValue::Finite(v))?;
        }
        let choice = decode_choices(f, p.undesired.len(), p.desired.len());
        choices.push(choice.into_iter().map(|c| p.desired[c]).collect());
    }
    for profile in game.space().iter() {
        for i in 0..n {
            if region.contains_strategy(i, profile[i]) && !region.contains_others(i, &profile) {
                promise.set(i, profile.clone(), ExtValue::Infinite)?;
            }
        }
    }
    let mapping = DominatorMapping::from_choices(region, &game.strategy_counts(), choices)?;
    Ok(SolveResult {
        delta: ExtValue::Finite(to_q(&delta)),
        promise,
        mapping,
        exactified: false,
    })
}

fn solve_scaled<T: Scalar>(
    game: &Game,
    region: &RectRegion,
    scale: &BigInt,
    util: &[Vec<T>],
    opts: SolveOptions,
) -> Result<SolveResult> {
    let plan = build_plan(game, region, util)?;
    let out = search(&plan, opts)?;
    let degenerate = || Error::DegenerateRegion {
        player: plan.degenerate.unwrap_or(0),
    };
    let (best, g) = out.best.ok_or_else(degenerate)?;
    if out.unattained.is_some_and(|u| u < best) {
        return Err(degenerate());
    }
    finish(game, region, &plan, scale, g)
}

pub fn min_budget_solve(game: &Game, region: &RectRegion) -> Result<SolveResult> {
    min_budget_solve_with(game, region, SolveOptions::default())
}

/// The smallest `δ = max_{o ∈ O} Σ_i V_i(o)` over promises implementing `O`,
/// with the first optimal mapping in enumeration order.
pub fn min_budget_solve_with(
    game: &Game,
    region: &RectRegion,
    opts: SolveOptions,
) -> Result<SolveResult> {
    region.validate(&game.strategy_counts())?;
    let (scale, big) = scale_utilities(game);
    let limit = BigInt::one() << 62;
    if big.iter().flatten().all(|v| v.abs() < limit) {
        let small: Vec<Vec<i128>> = big
            .iter()
            .map(|row| row.iter().map(|v| v.to_i128().expect("bounded")).collect())
            .collect();
        solve_scaled(game, region, &scale, &small, opts)
    } else {
        solve_scaled(game, region, &scale, &big, opts)
    }
}

/// Rewrites a promise implementing `O` into one implementing `O` exactly, with
/// the same payments on `O`.
pub fn exactify(
    game: &Game,
    region: &RectRegion,
    promise: &PaymentPromise,
) -> Result<PaymentPromise> {
    let counts = game.strategy_counts();
    let n = counts.len();
    region.validate(&counts)?;
    promise.validate(game)?;
    let eq = is_equitable(game, region)?;
    if !eq.equitable {
        return Err(Error::NotEquitable {
            margins: eq.margins,
        });
    }
    for o in region.profiles() {
        if let Some(i) = (0..n).find(|&i| promise.value(i, &o).is_infinite()) {
            return Err(Error::InfiniteOnRegion {
                player: i,
                profile: o,
            });
        }
    }
    if !verify(game, promise, region, &ExtValue::Infinite, Mode::Subset)?.holds {
        return Err(Error::NotImplemented);
    }
    let delta = match region_payment_max(game, promise, region)? {
        ExtValue::Finite(d) => d,
        ExtValue::Infinite => unreachable!("finite on the region"),
    };
    let big_m = game.max_utility() + delta + BigRational::one();
    let mut out = PaymentPromise::new(n);
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let ctx_space = ProfileSpace::new(others.iter().map(|&j| counts[j]).collect())?;
        let inside = |ctx: &[usize]| {
            ctx.iter()
                .zip(&others)
                .all(|(&x, &j)| region.contains_strategy(j, x))
        };
        let designated: Vec<Vec<usize>> = ctx_space
            .iter()
            .filter(|c| !inside(c))
            .take(region.set(i).len())
            .collect();
        for (k, &oi) in region.set(i).iter().enumerate() {
            for ctx in ctx_space.iter() {
                let mut profile = ctx.clone();
                profile.insert(i, oi);
                let v = if inside(&ctx) {
                    promise.value(i, &profile)
                } else {
                    let u = game.utility(i, &profile);
                    let extra = if ctx == designated[k] {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                    ExtValue::Finite(&big_m + extra - u)
                };
                out.set(i, profile, v)?;
            }
        }
    }
    Ok(out)
}

pub fn solve_exact(game: &Game, region: &RectRegion) -> Result<SolveResult> {
    solve_exact_with(game, region, SolveOptions::default())
}

pub fn solve_exact_with(
    game: &Game,
    region: &RectRegion,
    opts: SolveOptions,
) -> Result<SolveResult> {
    let eq = is_equitable(game, region)?;
    if !eq.equitable {
        return Err(Error::NotEquitable {
            margins: eq.margins,
        });
    }
    let base = min_budget_solve_with(game, region, opts)?;
    let promise = exactify(game, region, &base.promise)?;
    Ok(SolveResult {
        promise,
        exactified: true,
        ..base
    })
}

/// Literal evaluation of the promise-Nash condition on the view's payoffs.
pub fn is_pne(view: &ModifiedGameView, region: &RectRegion) -> Result<PneReport> {
    region.validate(view.strategy_counts())?;
    let mut counters = Vec::new();
    for i in 0..view.num_players() {
        let inside: Vec<usize> = (0..view.contexts(i))
            .filter(|&c| view.context_within(i, c, region))
            .collect();
        for x in region.complement(i, view.strategies(i)) {
            let counter = region.set(i).iter().copied().find(|&p| {
                inside
                    .iter()
                    .all(|&c| view.payoff(i, p, c) >= view.payoff(i, x, c))
            });
            match counter {
                Some(p) => counters.push(Counter {
                    player: i,
                    strategy: x,
                    counter: p,
                }),
                None => {
                    return Ok(PneReport {
                        holds: false,
                        witness: PneWitness::Defection {
                            player: i,
                            strategy: x,
                        },
                    })
                }
            }
        }
    }
    Ok(PneReport {
        holds: true,
        witness: PneWitness::Counters { counters },
    })
}

/// Infinite payments on `(p_i, x_-i)` for `p_i ∈ P_i` and `x_-i ∉ P_-i`, zero elsewhere.
pub fn zero_cost_promise<G: GameForm + ?Sized>(
    game: &G,
    region: &RectRegion,
) -> Result<PaymentPromise> {
    let view = game.view(None)?;
    let report = is_pne(&view, region)?;
    if let PneWitness::Defection { player, strategy } = report.witness {
        return Err(Error::NotPne { player, strategy });
    }
    let n = view.num_players();
    let mut promise = PaymentPromise::new(n);
    for i in 0..n {
        for ctx in 0..view.contexts(i) {
            if view.context_within(i, ctx, region) {
                continue;
            }
            for &p in region.set(i) {
                promise.set(i, view.table_key(i, p, ctx), ExtValue::Infinite)?;
            }
        }
    }
    if !verify(game, &promise, region, &ExtValue::zero(), Mode::Subset)?.holds {
        let counts = game.strategy_counts();
        let player = (0..n)
            .find(|&i| {
                (0..view.contexts(i)).all(|c| view.context_within(i, c, region))
                    && region.set(i).len() < counts[i]
            })
            .unwrap_or(0);
        return Err(Error::DegenerateRegion { player });
    }
    Ok(promise)
}
