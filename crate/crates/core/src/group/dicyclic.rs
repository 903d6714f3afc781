//! Structural recognition used by the complete-colour-pair test:
//! generalized dicyclic groups and `Q8 × C2^n`.

use std::collections::HashMap;

use serde::Serialize;

use super::{are_isomorphic, quaternion_times_c2n, FiniteGroup, Quaternion};

/// `G ≅ Dic(A, y)` realized inside `G`: `A` is an abelian index-2 subgroup,
/// `x ∉ A` inverts `A` by conjugation and squares to the involution `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DicyclicWitness {
    pub subgroup: Vec<usize>,
    pub x: usize,
    pub y: usize,
    /// How many elements of the coset `Ax` qualify as `x`.
    pub valid_x: usize,
}

/// All index-2 subgroups, as membership masks in a canonical order.
fn index_two_subgroups(g: &FiniteGroup) -> Vec<Vec<bool>> {
    let n = g.order();
    if n % 2 != 0 {
        return Vec::new();
    }
    // Every index-2 subgroup contains the squares, and G/⟨squares⟩ is an
    // elementary abelian 2-group; index-2 subgroups are kernels of its
    // nonzero functionals.
    let squares: Vec<usize> = (0..n).map(|a| g.mul(a, a)).collect();
    let s = g.subgroup(&squares);
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if coset[a] == usize::MAX {
            for &t in &s {
                coset[g.mul(a, t)] = reps.len();
            }
            reps.push(a);
        }
    }
    let mut coords: HashMap<usize, u64> = HashMap::from([(0, 0)]);
    let mut rank = 0;
    for &r in &reps {
        if coords.contains_key(&coset[r]) {
            continue;
        }
        if rank == 63 {
            return Vec::new();
        }
        let bit = 1u64 << rank;
        rank += 1;
        let known: Vec<(usize, u64)> = coords.iter().map(|(&c, &v)| (c, v)).collect();
        for (c, v) in known {
            coords.insert(coset[g.mul(reps[c], r)], v | bit);
        }
    }
    (1..(1u64 << rank))
        .map(|f| (0..n).map(|a| (coords[&coset[a]] & f).count_ones() % 2 == 0).collect())
        .collect()
}

/// Every abelian index-2 subgroup `A` admitting a dicyclic `x`, with the
/// first such `x` in index order. Empty when `G` is not generalized dicyclic.
pub fn recognize_dicyclic(g: &FiniteGroup) -> Vec<DicyclicWitness> {
    let mut out = Vec::new();
    for mask in index_two_subgroups(g) {
        let a: Vec<usize> = (0..g.order()).filter(|&i| mask[i]).collect();
        let abelian = a.iter().all(|&p| a.iter().all(|&q| g.mul(p, q) == g.mul(q, p)));
        if !abelian {
            continue;
        }
        let valid: Vec<usize> = (0..g.order())
            .filter(|&x| !mask[x])
            .filter(|&x| {
                let y = g.mul(x, x);
                y != 0 && g.mul(y, y) == 0 && a.iter().all(|&b| g.conj(b, x) == g.inv(b))
            })
            .collect();
        if let Some(&x) = valid.first() {
            out.push(DicyclicWitness { y: g.mul(x, x), x, valid_x: valid.len(), subgroup: a });
        }
    }
    out
}

fn c2_rank(g: &FiniteGroup) -> Option<usize> {
    let n = g.order();
    (n % 8 == 0 && (n / 8).is_power_of_two()).then(|| (n / 8).trailing_zeros() as usize)
}

pub fn is_q8_times_c2n(g: &FiniteGroup) -> bool {
    q8_times_c2n_inversion_sets(g).is_some()
}

/// For `G ≅ Q8 × C2^n`, the images of `{±i} × C2^n`, `{±j} × C2^n` and
/// `{±k} × C2^n` under the first isomorphism found.
pub fn q8_times_c2n_inversion_sets(g: &FiniteGroup) -> Option<[Vec<usize>; 3]> {
    let rank = c2_rank(g)?;
    let (model, units) = quaternion_times_c2n(rank).ok()?;
    let iso = are_isomorphic(&model, g)?;
    let pick = |unit: Quaternion| {
        let mut v: Vec<usize> = (0..model.order()).filter(|&x| units[x] == unit).map(|x| iso.map[x]).collect();
        v.sort_unstable();
        v
    };
    Some([pick(Quaternion::I), pick(Quaternion::J), pick(Quaternion::K)])
}
