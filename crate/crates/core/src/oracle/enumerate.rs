use crate::counting::ProblemSpec;

use super::Composition;

/// Lazy iterator over the valid compositions of a spec in increasing
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    lower: u64,
    upper: u64,
    current: Option<Vec<u64>>,
    remaining: Option<usize>,
}

/// All valid compositions of `spec`, stopping after `limit` items when given.
pub fn enumerate(spec: &ProblemSpec, limit: Option<usize>) -> Compositions {
    let upper = spec.effective_upper();
    let current = smallest_completion(spec.balls, spec.boxes as usize, spec.lower, upper);
    Compositions {
        lower: spec.lower,
        upper,
        current,
        remaining: limit,
    }
}

/// Whether `balls` can be split over `boxes` parts in `[lower, upper]`.
fn fits(balls: u64, boxes: usize, lower: u64, upper: u64) -> bool {
    let boxes = boxes as u128;
    let balls = balls as u128;
    boxes * lower as u128 <= balls && balls <= boxes * upper as u128
}

/// Lexicographically smallest way to split `balls` over `boxes` parts in
/// `[lower, upper]`: each part takes the least it can while the rest still fit.
fn smallest_completion(balls: u64, boxes: usize, lower: u64, upper: u64) -> Option<Vec<u64>> {
    if !fits(balls, boxes, lower, upper) {
        return None;
    }
    let mut parts = Vec::with_capacity(boxes);
    let mut left = balls;
    for i in 0..boxes {
        let after = (boxes - i - 1) as u128;
        let room_after = (after * upper as u128).min(left as u128) as u64;
        let part = lower.max(left - room_after);
        parts.push(part);
        left -= part;
    }
    Some(parts)
}

fn successor(parts: &[u64], lower: u64, upper: u64) -> Option<Vec<u64>> {
    let n = parts.len();
    let mut suffix: u64 = parts.last().copied().unwrap_or(0);
    // The last part is forced by the others, so start one position earlier.
    for i in (0..n.saturating_sub(1)).rev() {
        suffix += parts[i];
        let bumped = parts[i] + 1;
        if bumped > upper || bumped > suffix {
            continue;
        }
        if let Some(tail) = smallest_completion(suffix - bumped, n - i - 1, lower, upper) {
            let mut next = parts[..i].to_vec();
            next.push(bumped);
            next.extend(tail);
            return Some(next);
        }
    }
    None
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.remaining == Some(0) {
            return None;
        }
        let parts = self.current.take()?;
        self.current = successor(&parts, self.lower, self.upper);
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        Some(Composition::new(parts))
    }
}
