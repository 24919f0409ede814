//! Hardness constructions as instance generators, with certificate builders,
//! decoders and brute-force solvers for the source problems.

pub mod coloring;
pub mod graphical;
pub mod two_player;
pub mod x3c;

use crate::game::RectRegion;
use crate::value::ExtValue;

pub use coloring::{
    brute_coloring, coloring_forward_promise, coloring_to_exact, decode_coloring, ColoringInstance,
};
pub use graphical::{
    decode_cover_graphical, graphical_budget, x3c_forward_promise_graphical, x3c_from_graphical,
    x3c_to_graphical,
};
pub use two_player::{
    decode_cover_2p, x3c_forward_promise_2p, x3c_from_two_player, x3c_to_two_player,
};
pub use x3c::{brute_x3c, gen_x3c, ExactCover, Force, X3CInstance};

/// A reduced instance: the game, its desired region and its budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction<G> {
    pub game: G,
    pub region: RectRegion,
    pub budget: ExtValue,
}
