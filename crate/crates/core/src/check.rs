//! Cost of a payment promise and (exact) implementation checks.

use serde::Serialize;

use crate::domination::undominated_region;
use crate::error::{Error, Result};
use crate::game::{GameForm, RectRegion};
use crate::promise::PaymentPromise;
use crate::value::ExtValue;

/// Largest region the naive enumerations below will walk.
pub const MAX_REGION: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `X*_{G[V]} ⊆ O`
    Subset,
    /// `X*_{G[V]} = O`
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Undominated in `G[V]` but not desired.
    Undesired { player: usize, strategy: usize },
    /// Desired but dominated in `G[V]` (exact mode only).
    Missing { player: usize, strategy: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub mode: Mode,
    pub holds: bool,
    pub undominated_region: RectRegion,
    pub cost: ExtValue,
    pub budget: ExtValue,
    pub within_budget: bool,
    pub violation: Option<Violation>,
}

/// `max_{o ∈ region} Σ_i V_i(o)`.
pub fn region_payment_max<G: GameForm + ?Sized>(
    game: &G,
    promise: &PaymentPromise,
    region: &RectRegion,
) -> Result<ExtValue> {
    region.validate(&game.strategy_counts())?;
    if region.size() > MAX_REGION {
        return Err(Error::TooLarge(format!(
            "region of {} profiles",
            region.size()
        )));
    }
    if promise.is_zero() {
        return Ok(ExtValue::zero());
    }
    let mut best = ExtValue::zero();
    for profile in region.profiles() {
        let total = promise.total_at(game, &profile);
        if total.is_infinite() {
            return Ok(total);
        }
        if total > best {
            best = total;
        }
    }
    Ok(best)
}

/// `cost(V) = max_{x ∈ X*_{G[V]}} Σ_i V_i(x)`.
pub fn cost<G: GameForm + ?Sized>(game: &G, promise: &PaymentPromise) -> Result<ExtValue> {
    let view = game.view(Some(promise))?;
    region_payment_max(game, promise, &undominated_region(&view))
}

pub fn verify<G: GameForm + ?Sized>(
    game: &G,
    promise: &PaymentPromise,
    region: &RectRegion,
    budget: &ExtValue,
    mode: Mode,
) -> Result<VerifyReport> {
    let counts = game.strategy_counts();
    region.validate(&counts)?;
    let view = game.view(Some(promise))?;
    let star = undominated_region(&view);
    let cost = region_payment_max(game, promise, &star)?;

    let mut violation = None;
    'outer: for (i, &c) in counts.iter().enumerate() {
        for s in 0..c {
            let undominated = star.contains_strategy(i, s);
            let desired = region.contains_strategy(i, s);
            if undominated && !desired {
                violation = Some(Violation::Undesired {
                    player: i,
                    strategy: s,
                });
                break 'outer;
            }
            if mode == Mode::Exact && desired && !undominated {
                violation = Some(Violation::Missing {
                    player: i,
                    strategy: s,
                });
                break 'outer;
            }
        }
    }
    let within_budget = &cost <= budget;
    Ok(VerifyReport {
        mode,
        holds: within_budget && violation.is_none(),
        undominated_region: star,
        cost,
        budget: budget.clone(),
        within_budget,
        violation,
    })
}
