use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::RectRegion;

/// One function `F_i : X_i \ O_i → O_i` per player, stored as
/// `(undesired, desired)` pairs in ascending undesired order.
///
/// The derived ordering is the enumeration order of the mapping space: players
/// ascending, then undesired strategies ascending, comparing the chosen
/// desired strategies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DominatorMapping {
    players: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MappingEntry {
    pub player: usize,
    pub undesired: usize,
    pub desired: usize,
}

impl DominatorMapping {
    /// `choices[i][k]` is the image of the `k`-th undesired strategy of player `i`.
    pub fn from_choices(
        region: &RectRegion,
        counts: &[usize],
        choices: Vec<Vec<usize>>,
    ) -> Result<Self> {
        region.validate(counts)?;
        if choices.len() != counts.len() {
            return Err(Error::Shape(format!(
                "mapping covers {} players, expected {}",
                choices.len(),
                counts.len()
            )));
        }
        let mut players = Vec::with_capacity(counts.len());
        for (i, (images, &c)) in choices.into_iter().zip(counts).enumerate() {
            let domain = region.complement(i, c);
            if domain.len() != images.len() {
                return Err(Error::Shape(format!(
                    "player {i} maps {} strategies, expected {}",
                    images.len(),
                    domain.len()
                )));
            }
            if let Some(&bad) = images.iter().find(|&&o| !region.contains_strategy(i, o)) {
                return Err(Error::InvalidArgument(format!(
                    "player {i}: image {bad} is not desired"
                )));
            }
            players.push(domain.into_iter().zip(images).collect());
        }
        Ok(DominatorMapping { players })
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    /// `F_i` as `(undesired, desired)` pairs.
    pub fn player(&self, i: usize) -> &[(usize, usize)] {
        &self.players[i]
    }

    pub fn image(&self, i: usize, undesired: usize) -> Option<usize> {
        self.players[i]
            .binary_search_by_key(&undesired, |&(x, _)| x)
            .ok()
            .map(|k| self.players[i][k].1)
    }

    /// `F_i^{-1}(o)`, ascending.
    pub fn preimage(&self, i: usize, desired: usize) -> impl Iterator<Item = usize> + '_ {
        self.players[i]
            .iter()
            .filter(move |&&(_, o)| o == desired)
            .map(|&(x, _)| x)
    }

    pub fn entries(&self) -> Vec<MappingEntry> {
        self.players
            .iter()
            .enumerate()
            .flat_map(|(player, f)| {
                f.iter().map(move |&(undesired, desired)| MappingEntry {
                    player,
                    undesired,
                    desired,
                })
            })
            .collect()
    }
}

impl fmt::Display for DominatorMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .iter()
            .map(|e| format!("F{}({})={}", e.player, e.undesired, e.desired))
            .collect();
        if parts.is_empty() {
            f.write_str("{}")
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_choices_checks_images() {
        let o = RectRegion::new(vec![vec![0, 2], vec![0]]);
        let m = DominatorMapping::from_choices(&o, &[3, 2], vec![vec![0], vec![0]]).unwrap();
        assert_eq!(m.image(0, 1), Some(0));
        assert_eq!(m.image(1, 1), Some(0));
        assert_eq!(m.preimage(0, 0).collect::<Vec<_>>(), vec![1]);
        assert_eq!(m.to_string(), "{F0(1)=0, F1(1)=0}");
        assert!(DominatorMapping::from_choices(&o, &[3, 2], vec![vec![1], vec![0]]).is_err());
        assert!(DominatorMapping::from_choices(&o, &[3, 2], vec![vec![0, 2], vec![0]]).is_err());
    }

    #[test]
    fn order_follows_enumeration() {
        let o = RectRegion::new(vec![vec![0, 2], vec![0]]);
        let a = DominatorMapping::from_choices(&o, &[3, 2], vec![vec![0], vec![0]]).unwrap();
        let b = DominatorMapping::from_choices(&o, &[3, 2], vec![vec![2], vec![0]]).unwrap();
        assert!(a < b);
    }
}
