use std::collections::HashMap;

use num_bigint::{BigUint, RandBigInt};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::Natural;
use crate::counting::{count, ProblemSpec};
use crate::error::{Error, Result};

use super::Composition;

/// Exactly uniform sampler over the valid compositions of a spec.
///
/// Parts are drawn left to right; part `i` takes value `j` with probability
/// proportional to the number of ways to complete the remaining boxes. The
/// stream is ChaCha8 seeded from a `u64`, so a seed reproduces the same
/// sequence on every platform.
#[derive(Debug)]
pub struct Sampler {
    spec: ProblemSpec,
    upper: u64,
    rng: ChaCha8Rng,
    completions: HashMap<(u64, u64), Natural>,
}

impl Sampler {
    pub fn new(spec: &ProblemSpec, seed: u64) -> Result<Self> {
        if count(spec).count.is_zero() {
            return Err(Error::InfeasibleSpec);
        }
        Ok(Sampler {
            spec: *spec,
            upper: spec.effective_upper(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            completions: HashMap::new(),
        })
    }

    /// Ways to fill `boxes` boxes with exactly `balls` balls under the spec's bounds.
    fn completions(&mut self, boxes: u64, balls: u64) -> Natural {
        if boxes == 0 {
            return Natural::from(u64::from(balls == 0));
        }
        let spec = self.spec;
        self.completions
            .entry((boxes, balls))
            .or_insert_with(|| {
                let sub = ProblemSpec {
                    balls,
                    boxes,
                    lower: spec.lower,
                    upper: spec.upper,
                };
                count(&sub).count
            })
            .clone()
    }

    pub fn draw(&mut self) -> Composition {
        let n = self.spec.boxes;
        let mut parts = Vec::with_capacity(n as usize);
        let mut left = self.spec.balls;
        for placed in 0..n {
            let boxes_after = n - placed - 1;
            let choices: Vec<(u64, Natural)> = (self.spec.lower..=self.upper.min(left))
                .map(|j| (j, self.completions(boxes_after, left - j)))
                .filter(|(_, w)| !w.is_zero())
                .collect();
            let total: BigUint = choices.iter().map(|(_, w)| w.as_biguint()).sum();
            let mut ticket = self.rng.gen_biguint_below(&total);
            let mut pick = choices[choices.len() - 1].0;
            for (j, w) in &choices {
                if &ticket < w.as_biguint() {
                    pick = *j;
                    break;
                }
                ticket -= w.as_biguint();
            }
            parts.push(pick);
            left -= pick;
        }
        debug_assert_eq!(left, 0);
        Composition::new(parts)
    }
}

impl Iterator for Sampler {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        Some(self.draw())
    }
}

/// `draws` independent uniform compositions of `spec`, reproducible from `seed`.
pub fn uniform_sample(spec: &ProblemSpec, seed: u64, draws: usize) -> Result<Vec<Composition>> {
    let sampler = Sampler::new(spec, seed)?;
    Ok(sampler.take(draws).collect())
}
