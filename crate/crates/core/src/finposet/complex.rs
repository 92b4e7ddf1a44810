use crate::homol::SimplicialComplex;

use super::Poset;

/// The order complex `K(X)`: one `k`-simplex for every chain of `k + 1`
/// elements, with vertices numbered by element index.
pub fn order_complex(x: &Poset) -> SimplicialComplex {
    let mut dims: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut chain = Vec::new();
    for v in 0..x.len() {
        chain.push(v as u32);
        extend_chains(x, &mut chain, &mut dims);
        chain.pop();
    }
    for d in &mut dims {
        d.sort_unstable();
    }
    SimplicialComplex::from_sorted_unchecked(dims)
}

fn extend_chains(x: &Poset, chain: &mut Vec<u32>, dims: &mut Vec<Vec<Vec<u32>>>) {
    let k = chain.len() - 1;
    if dims.len() <= k {
        dims.push(Vec::new());
    }
    let mut simplex = chain.clone();
    simplex.sort_unstable();
    dims[k].push(simplex);
    let top = *chain.last().expect("non-empty chain") as usize;
    for next in x.up(top).iter() {
        chain.push(next as u32);
        extend_chains(x, chain, dims);
        chain.pop();
    }
}

/// Euler characteristic of `K(X)`, without materializing the chains.
///
/// With `w(x) = Σ (-1)^{|c|-1}` over chains `c` whose top is `x`, we have
/// `w(x) = 1 - Σ_{y<x} w(y)` and `χ = Σ_x w(x)`.
pub fn euler_char(x: &Poset) -> i64 {
    let mut w = vec![0i64; x.len()];
    for v in x.linear_extension() {
        w[v] = 1 - x.down(v).iter().map(|y| w[y]).sum::<i64>();
    }
    w.iter().sum()
}
