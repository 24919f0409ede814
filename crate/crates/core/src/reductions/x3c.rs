//! Exact cover by 3-sets where every element occurs in exactly three sets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Draw budget of the rejection samplers in [`gen_x3c`].
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X3CInstance {
    n_hat: usize,
    sets: Vec<[usize; 3]>,
}

impl X3CInstance {
    /// Elements are `0..3n̂`; each triple is stored sorted.
    pub fn new(n_hat: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if n_hat == 0 {
            return Err(Error::InvalidX3c("n̂ must be at least 1".into()));
        }
        let m = 3 * n_hat;
        if sets.len() != m {
            return Err(Error::InvalidX3c(format!(
                "{} sets, expected {m}",
                sets.len()
            )));
        }
        let mut occurrences = vec![0usize; m];
        let mut sorted = Vec::with_capacity(m);
        for (j, mut t) in sets.into_iter().enumerate() {
            t.sort_unstable();
            if t[2] >= m {
                return Err(Error::InvalidX3c(format!(
                    "set {j} names element {} of {m}",
                    t[2]
                )));
            }
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::InvalidX3c(format!("set {j} repeats an element")));
            }
            for a in t {
                occurrences[a] += 1;
            }
            sorted.push(t);
        }
        if let Some(a) = occurrences.iter().position(|&k| k != 3) {
            return Err(Error::InvalidX3c(format!(
                "element {a} occurs in {} sets",
                occurrences[a]
            )));
        }
        Ok(X3CInstance {
            n_hat,
            sets: sorted,
        })
    }

    /// The only instance with `n̂ = 1`: three copies of `{0, 1, 2}`.
    pub fn forced() -> Self {
        X3CInstance {
            n_hat: 1,
            sets: vec![[0, 1, 2]; 3],
        }
    }

    pub fn n_hat(&self) -> usize {
        self.n_hat
    }

    pub fn num_elements(&self) -> usize {
        3 * self.n_hat
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    /// Indices of the sets containing `a`, ascending.
    pub fn containing(&self, a: usize) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&j| self.sets[j].contains(&a))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCover {
    /// Set indices, ascending.
    pub sets: Vec<usize>,
}

impl ExactCover {
    pub fn new(mut sets: Vec<usize>) -> Self {
        sets.sort_unstable();
        ExactCover { sets }
    }

    pub fn validate(&self, inst: &X3CInstance) -> Result<()> {
        if self.sets.len() != inst.n_hat() {
            return Err(Error::InvalidCover(format!(
                "{} sets, expected {}",
                self.sets.len(),
                inst.n_hat()
            )));
        }
        let mut seen = vec![false; inst.num_elements()];
        for &j in &self.sets {
            let t = inst
                .sets()
                .get(j)
                .ok_or_else(|| Error::InvalidCover(format!("no set {j}")))?;
            for &a in t {
                if std::mem::replace(&mut seen[a], true) {
                    return Err(Error::InvalidCover(format!("element {a} covered twice")));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, j: usize) -> bool {
        self.sets.binary_search(&j).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Force {
    Yes,
    No,
    Any,
}

/// Shuffles the tokens and cuts them into triples; `None` if a triple repeats an element.
fn cut_triples(rng: &mut ChaCha8Rng, mut tokens: Vec<usize>) -> Option<Vec<[usize; 3]>> {
    tokens.shuffle(rng);
    let triples: Vec<[usize; 3]> = tokens.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
    triples
        .iter()
        .all(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
        .then_some(triples)
}

fn tokens(m: usize, copies: usize) -> Vec<usize> {
    (0..m)
        .flat_map(|a| std::iter::repeat_n(a, copies))
        .collect()
}

/// Seeded instance sampler. `Yes` plants a disjoint cover and fills the other
/// `2n̂` sets from the remaining occurrences; `No` rejects draws that have a cover.
pub fn gen_x3c(n_hat: usize, seed: u64, force: Force) -> Result<X3CInstance> {
    if n_hat == 0 {
        return Err(Error::InvalidX3c("n̂ must be at least 1".into()));
    }
    let m = 3 * n_hat;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let sets = match force {
            Force::Any | Force::No => cut_triples(&mut rng, tokens(m, 3)),
            Force::Yes => {
                let mut elems: Vec<usize> = (0..m).collect();
                elems.shuffle(&mut rng);
                cut_triples(&mut rng, tokens(m, 2)).map(|mut rest| {
                    rest.extend(elems.chunks(3).map(|c| [c[0], c[1], c[2]]));
                    rest.shuffle(&mut rng);
                    rest
                })
            }
        };
        let Some(sets) = sets else { continue };
        let inst = X3CInstance::new(n_hat, sets)?;
        if force == Force::No && brute_x3c(&inst).is_some() {
            continue;
        }
        return Ok(inst);
    }
    Err(Error::SamplerExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// The lexicographically first exact cover, by exhaustive search.
pub fn brute_x3c(inst: &X3CInstance) -> Option<ExactCover> {
    fn go(inst: &X3CInstance, from: usize, used: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == inst.n_hat() {
            return true;
        }
        for j in from..inst.sets().len() {
            let t = inst.sets()[j];
            if t.iter().any(|&a| used[a]) {
                continue;
            }
            t.iter().for_each(|&a| used[a] = true);
            chosen.push(j);
            if go(inst, j + 1, used, chosen) {
                return true;
            }
            chosen.pop();
            t.iter().for_each(|&a| used[a] = false);
        }
        false
    }
    let mut used = vec![false; inst.num_elements()];
    let mut chosen = Vec::new();
    go(inst, 0, &mut used, &mut chosen).then(|| ExactCover::new(chosen))
}
