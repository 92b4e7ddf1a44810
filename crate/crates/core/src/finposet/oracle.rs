//! Exhaustive search over beat-point removal orders.
//!
//! Used as an independent check on [`steps_to_contract`](super::steps_to_contract):
//! a finite space is contractible in `n ≥ 1` steps exactly when its beat points
//! can be removed down to a single point with at most `n - 1` switches between
//! up and down removals.

use std::collections::VecDeque;

use crate::error::{Error, Result};

use super::{BeatKind, Poset};

pub const DEFAULT_ORACLE_LIMIT: usize = 12;
const HARD_LIMIT: usize = 20;

/// Minimum number of kind switches over all removal sequences reaching a single
/// point, or `None` when no such sequence exists (`X` is not contractible).
/// A single point needs no removals and reports `Some(0)`.
pub fn min_changes_oracle(x: &Poset, limit: usize) -> Result<Option<usize>> {
    let n = x.len();
    if n > limit || n > HARD_LIMIT {
        return Err(Error::SizeLimitExceeded {
            size: n,
            limit: limit.min(HARD_LIMIT),
        });
    }
    if n == 0 {
        return Ok(None);
    }
    let up: Vec<u32> = (0..n).map(|i| mask(x.up(i).iter())).collect();
    let down: Vec<u32> = (0..n).map(|i| mask(x.down(i).iter())).collect();
    let full = (1u32 << n) - 1;

    // 0-1 BFS over (alive set, kind of the last removal); kind 2 = none yet.
    let states = 1usize << n;
    let mut dist = vec![[usize::MAX; 3]; states];
    let mut dq = VecDeque::new();
    dist[full as usize][2] = 0;
    dq.push_back((full, 2usize));
    while let Some((alive, last)) = dq.pop_front() {
        let d = dist[alive as usize][last];
        if alive.count_ones() == 1 {
            return Ok(Some(d));
        }
        for xi in 0..n {
            if alive >> xi & 1 == 0 {
                continue;
            }
            for (kind, k) in [(BeatKind::Down, 0usize), (BeatKind::Up, 1usize)] {
                let is_beat = match kind {
                    BeatKind::Down => unique_extremal(down[xi] & alive, &up),
                    BeatKind::Up => unique_extremal(up[xi] & alive, &down),
                };
                if !is_beat {
                    continue;
                }
                let cost = usize::from(last != 2 && last != k);
                let next = alive & !(1 << xi);
                let nd = d + cost;
                if nd < dist[next as usize][k] {
                    dist[next as usize][k] = nd;
                    if cost == 0 {
                        dq.push_front((next, k));
                    } else {
                        dq.push_back((next, k));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn mask(it: impl Iterator<Item = usize>) -> u32 {
    it.fold(0, |m, i| m | 1 << i)
}

fn unique_extremal(set: u32, above: &[u32]) -> bool {
    let mut found = 0;
    let mut rest = set;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if above[u] & set == 0 {
            found += 1;
            if found > 1 {
                return false;
            }
        }
    }
    found == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_with_maximum_needs_no_changes() {
        let p = Poset::from_relation(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(min_changes_oracle(&p, 12).unwrap(), Some(0));
        assert_eq!(min_changes_oracle(&Poset::chain(5), 12).unwrap(), Some(0));
    }

    #[test]
    fn minimal_fence_is_not_contractible() {
        // 4-element crown: two minima each below two maxima
        let p = Poset::from_relation(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(min_changes_oracle(&p, 12).unwrap(), None);
        assert_eq!(min_changes_oracle(&Poset::antichain(2), 12).unwrap(), None);
    }

    #[test]
    fn zigzag_fence_needs_changes() {
        // a < b > c < d : removable with one switch
        let p = Poset::from_relation(4, &[(0, 1), (2, 1), (2, 3)]).unwrap();
        assert_eq!(min_changes_oracle(&p, 12).unwrap(), Some(1));
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            min_changes_oracle(&Poset::chain(13), 12),
            Err(Error::SizeLimitExceeded { size: 13, limit: 12 })
        ));
        assert_eq!(min_changes_oracle(&Poset::point(), 12).unwrap(), Some(0));
        assert_eq!(min_changes_oracle(&Poset::empty(), 12).unwrap(), None);
    }
}
