//! Order-isomorphism by colour refinement plus individualization.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::Poset;

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

struct Side<'a> {
    x: &'a Poset,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(x: &'a Poset) -> Self {
        let up = (0..x.len()).map(|i| x.up(i).iter().collect()).collect();
        let down = (0..x.len()).map(|i| x.down(i).iter().collect()).collect();
        Side { x, up, down }
    }

    fn initial_colors(&self) -> Vec<u64> {
        let levels = self.x.levels();
        let covers = self.x.covers();
        let mut up_covers = vec![0usize; self.x.len()];
        let mut down_covers = vec![0usize; self.x.len()];
        for &(a, b) in &covers {
            up_covers[a] += 1;
            down_covers[b] += 1;
        }
        (0..self.x.len())
            .map(|i| {
                hash_of(&(
                    self.up[i].len(),
                    self.down[i].len(),
                    levels[i],
                    up_covers[i],
                    down_covers[i],
                ))
            })
            .collect()
    }

    fn round(&self, colors: &[u64]) -> Vec<u64> {
        let mut buf = Vec::new();
        (0..colors.len())
            .map(|i| {
                let mut h = DefaultHasher::new();
                colors[i].hash(&mut h);
                for side in [&self.up[i], &self.down[i]] {
                    buf.clear();
                    buf.extend(side.iter().map(|&j| colors[j]));
                    buf.sort_unstable();
                    buf.hash(&mut h);
                }
                h.finish()
            })
            .collect()
    }
}

fn histogram(colors: &[u64]) -> HashMap<u64, usize> {
    let mut h = HashMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Refines both colourings in lockstep until the partition stops splitting.
/// Returns `false` as soon as the colour histograms disagree.
fn refine(a: &Side, b: &Side, ca: &mut Vec<u64>, cb: &mut Vec<u64>) -> bool {
    let mut classes = histogram(ca).len();
    loop {
        if histogram(ca) != histogram(cb) {
            return false;
        }
        let na = a.round(ca);
        let nb = b.round(cb);
        let next = histogram(&na).len();
        *ca = na;
        *cb = nb;
        if next == classes {
            return histogram(ca) == histogram(cb);
        }
        classes = next;
    }
}

fn is_isomorphism(x: &Poset, y: &Poset, map: &[usize]) -> bool {
    (0..x.len()).all(|i| {
        let image = x.up(i).iter().map(|j| map[j]);
        let mut count = 0;
        for j in image {
            if !y.lt(map[i], j) {
                return false;
            }
            count += 1;
        }
        count == y.up(map[i]).count()
    })
}

fn search(a: &Side, b: &Side, mut ca: Vec<u64>, mut cb: Vec<u64>, depth: u64) -> Option<Vec<usize>> {
    if !refine(a, b, &mut ca, &mut cb) {
        return None;
    }
    let hist = histogram(&ca);
    // smallest non-singleton class, ties broken by colour for determinism
    let target = hist
        .iter()
        .filter(|&(_, &n)| n > 1)
        .min_by_key(|&(&c, &n)| (n, c))
        .map(|(&c, _)| c);
    let Some(colour) = target else {
        let pos: HashMap<u64, usize> = cb.iter().enumerate().map(|(j, &c)| (c, j)).collect();
        let map: Vec<usize> = ca.iter().map(|c| pos[c]).collect();
        return is_isomorphism(a.x, b.x, &map).then_some(map);
    };
    let xi = ca.iter().position(|&c| c == colour).expect("class is non-empty");
    let marker = hash_of(&(colour, depth, u64::MAX));
    for yj in (0..cb.len()).filter(|&j| cb[j] == colour) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[xi] = marker;
        nb[yj] = marker;
        if let Some(map) = search(a, b, na, nb, depth + 1) {
            return Some(map);
        }
    }
    None
}

/// An order-isomorphism `X → Y` as the list of images, if one exists.
pub fn poset_iso(x: &Poset, y: &Poset) -> Option<Vec<usize>> {
    if x.len() != y.len() || x.relation_count() != y.relation_count() {
        return None;
    }
    if x.is_empty() {
        return Some(Vec::new());
    }
    let a = Side::new(x);
    let b = Side::new(y);
    let ca = a.initial_colors();
    let cb = b.initial_colors();
    search(&a, &b, ca, cb, 0)
}

/// Finite spaces are homotopy equivalent exactly when their cores are isomorphic.
pub fn same_homotopy_type(x: &Poset, y: &Poset) -> bool {
    let (cx, _) = x.core();
    let (cy, _) = y.core();
    poset_iso(&cx, &cy).is_some()
}
