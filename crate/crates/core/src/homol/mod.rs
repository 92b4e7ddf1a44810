//! Reduced integral homology of simplicial complexes.

mod snf;

pub use snf::{smith_normal_form, IntMatrix, SmithForm};

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// Simplices grouped by dimension; each simplex is a strictly increasing vertex list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Builds the complex from its simplices, sorting and deduplicating each
    /// dimension. Rejects unsorted vertex lists and sets that are not face-closed.
    pub fn new(mut simplices_by_dim: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        for (k, dim) in simplices_by_dim.iter_mut().enumerate() {
            for s in dim.iter() {
                if s.len() != k + 1 || s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Construction(format!(
                        "simplex {s:?} is not a strictly increasing {k}-simplex"
                    )));
                }
            }
            dim.sort();
            dim.dedup();
        }
        while simplices_by_dim.last().is_some_and(Vec::is_empty) {
            simplices_by_dim.pop();
        }
        let complex = Self {
            simplices: simplices_by_dim,
        };
        if !complex.is_face_closed() {
            return Err(Error::Construction("complex is not closed under faces".into()));
        }
        Ok(complex)
    }

    pub(crate) fn from_sorted_unchecked(simplices: Vec<Vec<Vec<u32>>>) -> Self {
        Self { simplices }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    /// `f_k` for each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn is_face_closed(&self) -> bool {
        for k in 1..self.simplices.len() {
            let lower = &self.simplices[k - 1];
            for s in &self.simplices[k] {
                for drop in 0..s.len() {
                    let face = face_without(s, drop);
                    if lower.binary_search(&face).is_err() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Applies a vertex relabeling (used to test relabeling invariance).
    pub fn relabel(&self, map: &[u32]) -> Result<Self> {
        let dims = self
            .simplices
            .iter()
            .map(|dim| {
                dim.iter()
                    .map(|s| {
                        let mut t: Vec<u32> = s.iter().map(|&v| map[v as usize]).collect();
                        t.sort_unstable();
                        t
                    })
                    .collect()
            })
            .collect();
        Self::new(dims)
    }
}

fn face_without(s: &[u32], drop: usize) -> Vec<u32> {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .map(|(_, &v)| v)
        .collect()
}

/// `∂_k : C_k → C_{k-1}` with rows indexed by `(k-1)`-simplices and columns by
/// `k`-simplices (both in sorted order); the face omitting vertex `i` has sign `(-1)^i`.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> Result<IntMatrix> {
    let top = complex.dim().unwrap_or(0);
    if k == 0 || k > top {
        return Err(Error::DimensionOutOfRange { k, top });
    }
    let rows = complex.simplices(k - 1);
    let cols = complex.simplices(k);
    let row_index: HashMap<&[u32], usize> =
        rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for drop in 0..s.len() {
            let face = face_without(s, drop);
            let i = row_index[face.as_slice()];
            m.set(i, j, if drop % 2 == 0 { 1 } else { -1 });
        }
    }
    Ok(m)
}

/// Betti number and torsion coefficients in one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    #[serde(serialize_with = "ser_torsion")]
    pub torsion: Vec<BigUint>,
}

fn ser_torsion<S: serde::Serializer>(t: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(ToString::to_string))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub reduced: bool,
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    /// Every reduced group vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(|g| g.betti == 0 && g.torsion.is_empty())
    }

    /// Drops trailing zero groups so summaries of complexes of different
    /// dimension compare by their groups alone.
    pub fn trimmed(&self) -> HomologySummary {
        let mut groups = self.groups.clone();
        while groups
            .last()
            .is_some_and(|g| g.betti == 0 && g.torsion.is_empty())
        {
            groups.pop();
        }
        HomologySummary {
            reduced: self.reduced,
            groups,
        }
    }

    /// `b0;b1;…|t0;t1;…` where each `t_k` lists torsion coefficients joined by `.`.
    pub fn encode(&self) -> String {
        let t = self.trimmed();
        let betti: Vec<String> = t.groups.iter().map(|g| g.betti.to_string()).collect();
        let tors: Vec<String> = t
            .groups
            .iter()
            .map(|g| {
                g.torsion
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect();
        format!("{}|{}", betti.join(";"), tors.join(";"))
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// Reduced homology computed from Smith normal forms of the boundary maps,
/// with `∂_0` the augmentation `C_0 → ℤ`.
pub fn reduced_homology(complex: &SimplicialComplex) -> Result<HomologySummary> {
    let top = complex.dim().ok_or(Error::EmptyComplex)?;
    // ranks[k] = rank ∂_k, torsion_of[k] = invariant factors > 1 of ∂_k
    let mut ranks = vec![0usize; top + 2];
    let mut torsion_of: Vec<Vec<BigUint>> = vec![Vec::new(); top + 2];
    ranks[0] = 1;
    for k in 1..=top {
        let snf = smith_normal_form(&boundary_matrix(complex, k)?);
        ranks[k] = snf.rank;
        torsion_of[k] = snf.factors.into_iter().filter(|d| !d.is_one()).collect();
    }
    let groups = (0..=top)
        .map(|k| HomologyGroup {
            betti: complex.simplices(k).len() - ranks[k] - ranks[k + 1],
            torsion: torsion_of[k + 1].clone(),
        })
        .collect();
    Ok(HomologySummary {
        reduced: true,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(dims: Vec<Vec<Vec<u32>>>) -> SimplicialComplex {
        SimplicialComplex::new(dims).unwrap()
    }

    fn circle() -> SimplicialComplex {
        cx(vec![
            vec![vec![0], vec![1], vec![2]],
            vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        ])
    }

    /// Minimal 6-vertex triangulation of the real projective plane.
    fn rp2() -> SimplicialComplex {
        let tris: Vec<[u32; 3]> = vec![
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ];
        let mut edges = Vec::new();
        let mut tri = Vec::new();
        for t in &tris {
            let mut t = t.to_vec();
            t.sort();
            edges.push(vec![t[0], t[1]]);
            edges.push(vec![t[0], t[2]]);
            edges.push(vec![t[1], t[2]]);
            tri.push(t);
        }
        cx(vec![(0..6).map(|v| vec![v]).collect(), edges, tri])
    }

    #[test]
    fn edge_boundary() {
        let k = cx(vec![vec![vec![0], vec![1]], vec![vec![0, 1]]]);
        let d = boundary_matrix(&k, 1).unwrap();
        assert_eq!(d.to_dense(), vec![vec![-1], vec![1]]);
        assert_eq!(smith_normal_form(&d).rank, 1);
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let tri = cx(vec![
            vec![vec![0], vec![1], vec![2]],
            vec![vec![0, 1], vec![0, 2], vec![1, 2]],
            vec![vec![0, 1, 2]],
        ]);
        let d1 = boundary_matrix(&tri, 1).unwrap();
        let d2 = boundary_matrix(&tri, 2).unwrap();
        assert!(d1.mul(&d2).is_zero());
        assert!(matches!(
            boundary_matrix(&tri, 3),
            Err(Error::DimensionOutOfRange { k: 3, top: 2 })
        ));
        assert!(boundary_matrix(&tri, 0).is_err());
    }

    #[test]
    fn rejects_non_closed() {
        assert!(SimplicialComplex::new(vec![vec![vec![0]], vec![vec![0, 1]]]).is_err());
        assert!(SimplicialComplex::new(vec![vec![vec![0], vec![1]], vec![vec![1, 0]]]).is_err());
    }

    #[test]
    fn homology_examples() {
        let pt = cx(vec![vec![vec![0]]]);
        assert!(reduced_homology(&pt).unwrap().is_acyclic());
        let h = reduced_homology(&circle()).unwrap();
        assert_eq!(h.betti(), vec![0, 1]);
        assert!(h.is_torsion_free());
        assert_eq!(h.encode(), "0;1|;");
        let two_points = cx(vec![vec![vec![0], vec![1]]]);
        assert_eq!(reduced_homology(&two_points).unwrap().betti(), vec![1]);
        assert!(matches!(
            reduced_homology(&SimplicialComplex::default()),
            Err(Error::EmptyComplex)
        ));
    }

    #[test]
    fn projective_plane_has_torsion() {
        let h = reduced_homology(&rp2()).unwrap();
        assert_eq!(h.betti(), vec![0, 0, 0]);
        assert_eq!(h.groups[1].torsion, vec![BigUint::from(2u32)]);
        assert_eq!(h.encode(), "0;0|;2");
        assert_eq!(rp2().euler_characteristic(), 1);
    }
}
