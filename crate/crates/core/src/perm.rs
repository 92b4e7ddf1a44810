//! Permutations on `{0, …, degree-1}` with cycle-notation I/O.
//!
//! Products compose left to right: `a * b` applies `a` first, then `b`.
//! Cycle notation in text is 1-based; the internal representation is 0-based.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Self {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a >= degree || std::mem::replace(&mut touched[a], true) {
                    return None;
                }
                images[a] = cyc[(k + 1) % cyc.len()] as u32;
            }
        }
        Some(Self {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses 1-based cycle notation such as `(1 2 8 3)(4 7)`; `()` is the identity.
    ///
    /// Errors carry a 1-based column relative to `text`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let err = |col: usize, msg: String| Error::Parse {
            line: 1,
            column: col + 1,
            msg,
        };
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' => i += 1,
                b'(' => {
                    let open = i;
                    i += 1;
                    let mut cycle: Vec<(usize, usize)> = Vec::new();
                    loop {
                        while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t' || bytes[i] == b',') {
                            i += 1;
                        }
                        if i >= bytes.len() {
                            return Err(err(open, "unterminated cycle".into()));
                        }
                        if bytes[i] == b')' {
                            i += 1;
                            break;
                        }
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if start == i {
                            return Err(err(i, format!("unexpected character {:?}", bytes[i] as char)));
                        }
                        let point: usize = text[start..i]
                            .parse()
                            .map_err(|_| err(start, "point out of range".into()))?;
                        if point == 0 || point > degree {
                            return Err(err(start, format!("point {point} outside 1..={degree}")));
                        }
                        cycle.push((point - 1, start));
                    }
                    for (k, &(a, col)) in cycle.iter().enumerate() {
                        if std::mem::replace(&mut touched[a], true) {
                            return Err(err(col, format!("point {} repeated", a + 1)));
                        }
                        images[a] = cycle[(k + 1) % cycle.len()].0 as u32;
                    }
                }
                c => return Err(err(i, format!("unexpected character {:?}", c as char))),
            }
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// Disjoint cycles of length ≥ 2, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.image(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles("(1 2 8 3)(4 7)", 8).unwrap();
        assert_eq!(p.image(0), 1);
        assert_eq!(p.image(2), 0);
        assert_eq!(p.image(3), 6);
        assert_eq!(p.to_string(), "(1 2 8 3)(4 7)");
        assert!(Perm::parse_cycles("()", 3).unwrap().is_identity());
        assert!(Perm::parse_cycles("", 3).unwrap().is_identity());
    }

    #[test]
    fn parse_rejects_repeated_point() {
        match Perm::parse_cycles("(1 2)(2 3)", 3) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(Perm::parse_cycles("(1 5)", 4).is_err());
        assert!(Perm::parse_cycles("(0 1)", 4).is_err());
        assert!(Perm::parse_cycles("(1 2", 4).is_err());
        assert!(Perm::parse_cycles("(1 x)", 4).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).image(0), 2);
        assert_eq!((&a * &b).to_string(), "(1 3 2)");
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a * &a.inverse()).is_identity());
            prop_assert!((&a.inverse() * &a).is_identity());
            let round = Perm::parse_cycles(&a.to_string(), 7).unwrap();
            prop_assert_eq!(round, a);
        }
    }
}
