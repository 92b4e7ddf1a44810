//! Permutation models of groups described as semidirect products.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

use super::parse::GroupFile;

/// `N ⋊ H` acting on the cosets of `H`, identified with the elements of `N`:
/// `N` acts by right translation and each generator of `H` by the given
/// automorphism of `N` (a permutation of `N`'s element indices). `H` must act
/// faithfully. Fails unless the result has order `expected_order`.
pub fn semidirect_on_cosets(base: &Group, automorphisms: &[Vec<usize>], expected_order: usize) -> Result<Group> {
    let n = base.order();
    for (k, phi) in automorphisms.iter().enumerate() {
        let images: Vec<u32> = phi.iter().map(|&i| i as u32).collect();
        if phi.len() != n || Perm::from_images(images).is_none() {
            return Err(Error::Construction(format!("automorphism {k} is not a bijection of N")));
        }
        let respects = (0..n).all(|a| {
            base.generator_indices()
                .iter()
                .all(|&b| phi[base.mul(a, b)] == base.mul(phi[a], phi[b]))
        });
        if !respects {
            return Err(Error::Construction(format!("map {k} is not a homomorphism of N")));
        }
    }
    let mut gens: Vec<Perm> = base
        .generator_indices()
        .iter()
        .map(|&b| Perm::from_images((0..n).map(|m| base.mul(m, b) as u32).collect()).expect("translation"))
        .collect();
    for phi in automorphisms {
        gens.push(Perm::from_images(phi.iter().map(|&i| i as u32).collect()).expect("checked above"));
    }
    finish(n, &gens, expected_order)
}

fn finish(degree: usize, gens: &[Perm], expected_order: usize) -> Result<Group> {
    let g = Group::closure(degree, gens, expected_order.max(1))
        .map_err(|_| Error::Construction(format!("group exceeds the expected order {expected_order}")))?;
    if g.order() != expected_order {
        return Err(Error::Construction(format!(
            "group has order {}, expected {expected_order}",
            g.order()
        )));
    }
    Ok(g)
}

/// `F_p^dim ⋊ H` acting on the `p^dim` vectors, where `H` is generated by the
/// given `dim × dim` matrices over `F_p` (acting on column vectors).
pub fn affine_group(p: usize, dim: usize, matrices: &[Vec<Vec<usize>>], expected_order: usize) -> Result<Group> {
    let size = p.pow(dim as u32);
    let digits = |mut v: usize| -> Vec<usize> {
        (0..dim)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let encode = |x: &[usize]| x.iter().rev().fold(0, |acc, &d| acc * p + d);
    let mut gens = Vec::new();
    for axis in 0..dim {
        let images = (0..size)
            .map(|v| {
                let mut x = digits(v);
                x[axis] = (x[axis] + 1) % p;
                encode(&x) as u32
            })
            .collect();
        gens.push(Perm::from_images(images).expect("translation"));
    }
    for (k, m) in matrices.iter().enumerate() {
        if m.len() != dim || m.iter().any(|r| r.len() != dim) {
            return Err(Error::Construction(format!("matrix {k} is not {dim}×{dim}")));
        }
        let images: Vec<u32> = (0..size)
            .map(|v| {
                let x = digits(v);
                let y: Vec<usize> = (0..dim)
                    .map(|r| (0..dim).map(|c| m[r][c] * x[c]).sum::<usize>() % p)
                    .collect();
                encode(&y) as u32
            })
            .collect();
        let perm = Perm::from_images(images)
            .ok_or_else(|| Error::Construction(format!("matrix {k} is singular mod {p}")))?;
        gens.push(perm);
    }
    finish(size, &gens, expected_order)
}

/// `AΓL(1, 9) = ((Z3 × Z3) ⋊ Z8) ⋊ Z2`: translations of `F9`, multiplication
/// by a generator of `F9^×`, and the Frobenius map, in coordinates over
/// `F9 = F3[i]` with `i² = -1`.
pub fn affine_semilinear_9() -> Result<Group> {
    // multiplication by 1 + i: (a + bi)(1 + i) = (a - b) + (a + b) i
    let omega = vec![vec![1, 2], vec![1, 1]];
    let frobenius = vec![vec![1, 0], vec![0, 2]];
    affine_group(3, 2, &[omega, frobenius], 144)
}

fn block_diag(blocks: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let dim: usize = blocks.iter().map(Vec::len).sum();
    let mut m = vec![vec![0; dim]; dim];
    let mut off = 0;
    for b in blocks {
        for (r, row) in b.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m[off + r][off + c] = v;
            }
        }
        off += b.len();
    }
    m
}

fn mat_mul(a: &[Vec<usize>], b: &[Vec<usize>], p: usize) -> Vec<Vec<usize>> {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum::<usize>() % p).collect())
        .collect()
}

/// `F2^6 ⋊ P` with `P` of order 27 inside the Sylow 3-subgroup `Z3 ≀ Z3` of
/// `GL(6, 2)`, acting on `F2^6 = (F2^2)^3`: `P` is generated by
/// `diag(w, w⁻¹, 1)`, `diag(1, w, w⁻¹)` and the cyclic block shift times
/// `diag(w^twist, 1, 1)`, with `w` of order 3 in `GL(2, 2)`. The twist
/// (0, 1 or 2) selects one of the three such subgroups not contained in the
/// base.
pub fn two_six_by_27(twist: usize) -> Result<Group> {
    let one = vec![vec![1, 0], vec![0, 1]];
    let w = vec![vec![0, 1], vec![1, 1]];
    let w2 = mat_mul(&w, &w, 2);
    let wt = match twist % 3 {
        0 => one.clone(),
        1 => w.clone(),
        _ => w2.clone(),
    };
    let a = block_diag(&[w.clone(), w2.clone(), one.clone()]);
    let b = block_diag(&[one.clone(), w.clone(), w2.clone()]);
    // shift block k to block k + 1
    let mut shift = vec![vec![0; 6]; 6];
    for k in 0..3 {
        let to = (k + 1) % 3;
        shift[2 * to][2 * k] = 1;
        shift[2 * to + 1][2 * k + 1] = 1;
    }
    let c = mat_mul(&shift, &block_diag(&[wt, one.clone(), one]), 2);
    affine_group(2, 6, &[a, b, c], 1728)
}

/// Group files for the constructed groups, generators written out, paired with
/// a one-line structural description.
pub fn constructed_files() -> Result<Vec<(GroupFile, &'static str)>> {
    let g144 = affine_semilinear_9()?;
    let g1728 = two_six_by_27(0)?;
    Ok(vec![
        (
            GroupFile::new("G144", g144.degree(), g144.generators().to_vec()),
            "((Z3 x Z3) : Z8) : Z2 = AGammaL(1,9) on the 9 points of F9",
        ),
        (
            GroupFile::new("G1728", g1728.degree(), g1728.generators().to_vec()),
            "F2^6 : P27 on the 64 points of F2^6, P27 inside Z3 wr Z3 (twist 0)",
        ),
    ])
}

/// Directory holding [`constructed_files`] as text; kept apart from the main
/// catalog so batch runs over the catalog stay small.
pub fn constructed_dir() -> std::path::PathBuf {
    super::catalog_dir().join("constructed")
}

/// The text written for a constructed group.
pub fn constructed_text(file: &GroupFile, description: &str, order: usize) -> String {
    let mut text = file.to_text();
    let body = text.split_off(text.find("degree").expect("degree line"));
    text.push_str(&format!("# order: {order}\n# structure: {description}\n"));
    text.push_str(&body);
    text
}
