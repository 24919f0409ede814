//! Definition-level cross-checks for the solver.
//!
//! Everything here is rebuilt from the raw definitions on exact rationals: the
//! mapping space is walked recursively, each mapping's promise is checked with
//! the dominance scan, and the payment bound is summed directly. Nothing in
//! [`crate::solver`] is called.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::check::{verify, Mode};
use crate::domination::dominates;
use crate::error::{Error, Result};
use crate::game::{Game, GameForm, RectRegion};
use crate::mapping::DominatorMapping;
use crate::promise::PaymentPromise;
use crate::value::ExtValue;

/// Largest mapping space the oracle will walk.
pub const MAX_MAPPINGS: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub delta: ExtValue,
    pub all_optimal_mappings: Vec<DominatorMapping>,
    /// Payment bound of every mapping, including unattainable ones.
    pub per_mapping_costs: BTreeMap<DominatorMapping, ExtValue>,
    /// Mappings whose bound cannot be met: some undesired strategy ties its
    /// image everywhere and no desired profile leaves room to break the tie.
    pub unattainable: Vec<DominatorMapping>,
}

fn mapping_promise(
    game: &Game,
    region: &RectRegion,
    f: &DominatorMapping,
) -> Result<PaymentPromise> {
    let n = game.num_players();
    let mut v = PaymentPromise::new(n);
    for o in region.profiles() {
        for i in 0..n {
            let base = game.utility(i, &o);
            let mut x_prof = o.clone();
            let gain = f
                .preimage(i, o[i])
                .map(|x| {
                    x_prof[i] = x;
                    game.utility(i, &x_prof) - base
                })
                .max();
            if let Some(g) = gain.filter(|g| g > &BigRational::zero()) {
                v.set(i, o.clone(), ExtValue::Finite(g))?;
            }
        }
    }
    for x in game.space().iter() {
        for i in 0..n {
            let others_inside = (0..n).all(|j| j == i || region.contains_strategy(j, x[j]));
            if region.contains_strategy(i, x[i]) && !others_inside {
                v.set(i, x.clone(), ExtValue::Infinite)?;
            }
        }
    }
    Ok(v)
}

fn bound(region: &RectRegion, v: &PaymentPromise) -> ExtValue {
    region
        .profiles()
        .map(|o| {
            (0..region.num_players())
                .map(|i| v.value(i, &o))
                .sum::<ExtValue>()
        })
        .max()
        .unwrap_or_default()
}

/// Undesired strategies their image fails to dominate under `v`.
fn failures(game: &Game, f: &DominatorMapping, v: &PaymentPromise) -> Result<Vec<(usize, usize)>> {
    let view = game.view(Some(v))?;
    let mut out = Vec::new();
    for i in 0..game.num_players() {
        for &(x, img) in f.player(i) {
            if dominates(&view, i, img, x)?.is_none() {
                out.push((i, x));
            }
        }
    }
    Ok(out)
}

enum Outcome {
    Attained(ExtValue),
    Unattainable(ExtValue),
}

fn evaluate(game: &Game, region: &RectRegion, f: &DominatorMapping) -> Result<Outcome> {
    let counts = game.strategy_counts();
    let n = counts.len();
    let mut v = mapping_promise(game, region, f)?;
    let b = bound(region, &v);
    let failed = failures(game, f, &v)?;
    if failed.is_empty() {
        return Ok(Outcome::Attained(b));
    }
    let ExtValue::Finite(limit) = b.clone() else {
        return Err(Error::OracleViolation(format!(
            "{f}: infinite payment on the desired region"
        )));
    };
    let sums: BTreeMap<Vec<usize>, ExtValue> = region
        .profiles()
        .map(|o| {
            let s = (0..n).map(|i| v.value(i, &o)).sum();
            (o, s)
        })
        .collect();
    let mut targets: Vec<(usize, usize)> = failed
        .iter()
        .map(|&(i, x)| (i, f.image(i, x).unwrap()))
        .collect();
    targets.sort_unstable();
    targets.dedup();
    for (i, oi) in targets {
        let others_full = (0..n).all(|j| j == i || region.set(j).len() == counts[j]);
        if !others_full {
            return Err(Error::OracleViolation(format!(
                "{f}: player {i} has off-region contexts yet its image {oi} does not dominate"
            )));
        }
        let slack = sums.iter().find_map(|(o, s)| match s {
            ExtValue::Finite(s) if o[i] == oi && s < &limit => Some((o.clone(), &limit - s)),
            _ => None,
        });
        let Some((o, room)) = slack else {
            return Ok(Outcome::Unattainable(b));
        };
        let add = room / BigRational::from_integer(n.into());
        let cur = v.value(i, &o);
        v.set(i, o, cur + ExtValue::Finite(add))?;
    }
    if !failures(game, f, &v)?.is_empty() {
        return Err(Error::OracleViolation(format!(
            "{f}: tie persists after repair"
        )));
    }
    if bound(region, &v) != b {
        return Err(Error::OracleViolation(format!(
            "{f}: repair changed the payment bound"
        )));
    }
    Ok(Outcome::Attained(b))
}

fn walk(
    region: &RectRegion,
    counts: &[usize],
    player: usize,
    current: &mut Vec<Vec<usize>>,
    visit: &mut dyn FnMut(DominatorMapping) -> Result<()>,
) -> Result<()> {
    if player == counts.len() {
        return visit(DominatorMapping::from_choices(
            region,
            counts,
            current.clone(),
        )?);
    }
    let slots = counts[player] - region.set(player).len();
    if current[player].len() == slots {
        return walk(region, counts, player + 1, current, visit);
    }
    for &o in region.set(player) {
        current[player].push(o);
        walk(region, counts, player, current, visit)?;
        current[player].pop();
    }
    Ok(())
}

/// Exhaustive search over every dominator mapping.
pub fn oracle_min_budget(game: &Game, region: &RectRegion) -> Result<OracleResult> {
    let counts = game.strategy_counts();
    region.validate(&counts)?;
    let mut size: u128 = 1;
    for (i, &c) in counts.iter().enumerate() {
        let k = region.set(i).len() as u128;
        for _ in 0..(c - region.set(i).len()) {
            size = size.saturating_mul(k);
        }
    }
    if size > MAX_MAPPINGS {
        return Err(Error::TooLarge(format!(
            "{size} dominator mappings exceed {MAX_MAPPINGS}"
        )));
    }
    let mut per_mapping_costs = BTreeMap::new();
    let mut unattainable = Vec::new();
    let mut attained: Vec<(DominatorMapping, ExtValue)> = Vec::new();
    let mut current = vec![Vec::new(); counts.len()];
    walk(region, &counts, 0, &mut current, &mut |f| {
        match evaluate(game, region, &f)? {
            Outcome::Attained(b) => {
                per_mapping_costs.insert(f.clone(), b.clone());
                attained.push((f, b));
            }
            Outcome::Unattainable(b) => {
                per_mapping_costs.insert(f.clone(), b);
                unattainable.push(f);
            }
        }
        Ok(())
    })?;
    let degenerate = || {
        let player = (0..counts.len())
            .find(|&i| {
                region.set(i).len() < counts[i]
                    && (0..counts.len()).all(|j| j == i || region.set(j).len() == counts[j])
            })
            .unwrap_or(0);
        Error::DegenerateRegion { player }
    };
    let delta = attained
        .iter()
        .map(|(_, b)| b.clone())
        .min()
        .ok_or_else(degenerate)?;
    if unattainable.iter().any(|f| per_mapping_costs[f] < delta) {
        return Err(degenerate());
    }
    let all_optimal_mappings = attained
        .into_iter()
        .filter(|(_, b)| *b == delta)
        .map(|(f, _)| f)
        .collect();
    Ok(OracleResult {
        delta,
        all_optimal_mappings,
        per_mapping_costs,
        unattainable,
    })
}

/// Builds the infinite-off-region promise for `P` and checks it end to end at budget 0.
pub fn oracle_zero_cost<G: GameForm + ?Sized>(game: &G, region: &RectRegion) -> Result<bool> {
    let view = game.view(None)?;
    region.validate(view.strategy_counts())?;
    let n = view.num_players();
    let mut v = PaymentPromise::new(n);
    for i in 0..n {
        for ctx in (0..view.contexts(i)).filter(|&c| !view.context_within(i, c, region)) {
            for &p in region.set(i) {
                v.set(i, view.table_key(i, p, ctx), ExtValue::Infinite)?;
            }
        }
    }
    Ok(verify(game, &v, region, &ExtValue::zero(), Mode::Subset)?.holds)
}
