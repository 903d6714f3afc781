//! Affine maps `x ↦ g₀·α(x)` on a Cayley graph's vertex set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::CayleyGraph;
use crate::group::FiniteGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineDecomposition {
    /// `g₀ = p(e)`.
    pub translation: usize,
    /// The automorphism `α(x) = g₀⁻¹·p(x)` as an element map.
    pub automorphism: Vec<usize>,
}

fn is_left_translation(g: &FiniteGroup, q: &Permutation) -> bool {
    let g0 = q.apply(0);
    (0..g.order()).all(|x| q.apply(x) == g.mul(g0, x))
}

/// Whether `p` conjugates every left translation to a left translation.
pub fn normalizes_left_regular(g: &FiniteGroup, p: &Permutation) -> bool {
    let pinv = p.inverse();
    let gens: Vec<usize> = if g.generators().is_empty() {
        (0..g.order()).collect()
    } else {
        g.generators().iter().map(|&(_, s)| s).collect()
    };
    gens.into_iter().all(|s| {
        let translate = Permutation::from_images((0..g.order()).map(|x| g.mul(s, x)).collect()).expect("table row");
        is_left_translation(g, &p.compose_unchecked(&translate).compose_unchecked(&pinv))
    })
}

fn decompose(g: &FiniteGroup, p: &Permutation) -> Option<AffineDecomposition> {
    let g0 = p.apply(0);
    let g0inv = g.inv(g0);
    let alpha: Vec<usize> = (0..g.order()).map(|x| g.mul(g0inv, p.apply(x))).collect();
    let n = g.order();
    let hom = (0..n).all(|x| (0..n).all(|y| alpha[g.mul(x, y)] == g.mul(alpha[x], alpha[y])));
    hom.then_some(AffineDecomposition { translation: g0, automorphism: alpha })
}

/// Decide whether `p` is affine on the group behind `cg`.
///
/// Both the decomposition and the normalizer formulation are evaluated; a
/// disagreement is reported as an internal inconsistency.
pub fn is_affine(cg: &CayleyGraph, p: &Permutation) -> Result<Option<AffineDecomposition>> {
    let g = cg.group();
    if p.degree() != g.order() {
        return Err(Error::DegreeMismatch { left: p.degree(), right: g.order() });
    }
    let decomposition = decompose(g, p);
    if decomposition.is_some() != normalizes_left_regular(g, p) {
        return Err(Error::Inconsistency(format!(
            "affine decomposition and normalizer test disagree on {p}"
        )));
    }
    Ok(decomposition)
}

/// Whether the automorphism `alpha` maps every colour class `{c, c⁻¹}` of
/// `cg` onto itself.
pub fn fixes_colour_classes(cg: &CayleyGraph, alpha: &[usize]) -> bool {
    cg.connection().iter().all(|&c| cg.colour_of_element(alpha[c]) == cg.colour_of_element(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cayley_graph;
    use crate::group::{cyclic, dihedral, direct_product};

    #[test]
    fn translations_are_affine() {
        let g = dihedral(4).unwrap();
        let cg = cayley_graph(&g, &g.small_generating_set().iter().flat_map(|&s| [s, g.inv(s)]).collect::<Vec<_>>()).unwrap();
        for a in 0..g.order() {
            let p = Permutation::from_images((0..g.order()).map(|x| g.mul(a, x)).collect()).unwrap();
            let d = is_affine(&cg, &p).unwrap().unwrap();
            assert_eq!(d.translation, a);
            assert_eq!(d.automorphism, (0..g.order()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn inversion_on_abelian_group_is_affine() {
        let g = direct_product(&cyclic(3).unwrap(), &cyclic(4).unwrap(), 64).unwrap();
        let cg = cayley_graph(&g, &[1, g.inv(1)]).unwrap_or_else(|_| cayley_graph(&g, &[1]).unwrap());
        let inv = Permutation::from_images((0..g.order()).map(|x| g.inv(x)).collect()).unwrap();
        assert!(is_affine(&cg, &inv).unwrap().is_some());
    }

    #[test]
    fn transposition_is_not_affine() {
        let g = cyclic(5).unwrap();
        let cg = cayley_graph(&g, &[1, 4]).unwrap();
        let p = Permutation::from_cycles(5, &[vec![1, 2]]).unwrap();
        assert!(is_affine(&cg, &p).unwrap().is_none());
    }
}
