//! Payment promises that steer finite games into a desired rectangular
//! region of strategy profiles.
//!
//! A promise `V` adds nonnegative (possibly infinite) payments to the
//! utilities of a game `G`; it *implements* a region `O` when every weakly
//! undominated profile of `G[V]` lies in `O`, and its cost is the largest total
//! payment over those undominated profiles. The crate covers:
//!
//! * exact models of normal-form and graphical games ([`Game`], [`GraphicalGame`]),
//! * weak domination and implementation checks ([`dominates`], [`verify`]),
//! * the minimum-budget search over dominator mappings and its exact
//!   variant ([`min_budget_solve`], [`solve_exact`]),
//! * zero-cost implementability via promise-Nash equilibria ([`is_pne`]),
//! * the X3C and 3-coloring hardness constructions ([`reductions`]),
//! * an independent brute-force cross-check ([`oracle`]).
//!
//! ```
//! use gimpl_core::{fixtures, min_budget_solve, ExtValue};
//!
//! let game = fixtures::ex1();
//! let res = min_budget_solve(&game, &fixtures::ex1_region()).unwrap();
//! assert_eq!(res.delta, ExtValue::int(1));
//! ```

pub mod check;
pub mod domination;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod mapping;
pub mod oracle;
pub mod promise;
pub mod reductions;
pub mod sample;
pub mod solver;
pub mod value;
pub mod view;

pub use check::{cost, region_payment_max, verify, Mode, VerifyReport, Violation};
pub use domination::{
    dominates, find_dominator, undominated, undominated_region, DominanceWitness,
};
pub use error::{Error, Margins, Result};
pub use format::{parse_instance, to_document, write_instance, Document, Instance};
pub use game::{
    AnyGame, Game, GameForm, GraphicalGame, Player, ProfileSpace, RectRegion, StrategyProfile,
};
pub use mapping::DominatorMapping;
pub use oracle::{oracle_min_budget, oracle_zero_cost, OracleResult};
pub use promise::PaymentPromise;
pub use solver::{
    compute_v, exactify, is_equitable, is_pne, min_budget_solve, min_budget_solve_with,
    solve_exact, solve_exact_with, zero_cost_promise, EquitableReport, PneReport, PneWitness,
    SolveOptions, SolveResult,
};
pub use value::ExtValue;
pub use view::ModifiedGameView;
