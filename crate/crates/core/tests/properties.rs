use cca_core::engine::{fixes_colour_classes, is_affine, is_colour_preserving, normalizes_left_regular};
use cca_core::graph::{cayley_graph, CayleyGraph};
use cca_core::group::{automorphisms, cyclic, dihedral, direct_product, elementary_abelian_2, quaternion, FiniteGroup};
use cca_core::lab::{knn_actors, DihedralSquare, NormalForm};
use cca_core::Permutation;
use proptest::prelude::*;
use std::sync::OnceLock;

struct Entry {
    group: FiniteGroup,
    autos: Vec<Vec<usize>>,
    classes: Vec<usize>,
}

fn corpus() -> &'static [Entry] {
    static CORPUS: OnceLock<Vec<Entry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut groups = vec![
            cyclic(5).unwrap(),
            cyclic(6).unwrap(),
            cyclic(8).unwrap(),
            dihedral(3).unwrap(),
            dihedral(4).unwrap(),
            dihedral(5).unwrap(),
            elementary_abelian_2(2).unwrap(),
            elementary_abelian_2(3).unwrap(),
            quaternion(),
            direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap(), 512).unwrap(),
            direct_product(&cyclic(3).unwrap(), &dihedral(3).unwrap(), 512).unwrap(),
        ];
        groups
            .drain(..)
            .map(|group| {
                let autos = automorphisms(&group, 1 << 16).unwrap();
                let classes = (1..group.order()).filter(|&x| x <= group.inv(x)).collect();
                Entry { group, autos, classes }
            })
            .collect()
    })
}

/// Inverse-closed connection set picked by a bitmask over inverse classes.
fn connection(entry: &Entry, mask: u64) -> Vec<usize> {
    let g = &entry.group;
    let mut c = Vec::new();
    for (i, &x) in entry.classes.iter().enumerate() {
        if mask >> (i % 64) & 1 == 1 {
            c.push(x);
            if g.inv(x) != x {
                c.push(g.inv(x));
            }
        }
    }
    if c.is_empty() {
        c.push(entry.classes[0]);
        c.push(g.inv(entry.classes[0]));
        c.dedup();
    }
    c
}

fn graph(entry: &Entry, mask: u64) -> CayleyGraph {
    cayley_graph(&entry.group, &connection(entry, mask)).unwrap()
}

fn affine_map(g: &FiniteGroup, g0: usize, alpha: &[usize]) -> Permutation {
    Permutation::from_images((0..g.order()).map(|x| g.mul(g0, alpha[x])).collect()).unwrap()
}

/// Table-level oracle: `p` is affine iff `x ↦ p(e)⁻¹ p(x)` is a homomorphism.
fn affine_oracle(g: &FiniteGroup, p: &Permutation) -> bool {
    let t = g.inv(p.apply(0));
    let a: Vec<usize> = (0..g.order()).map(|x| g.mul(t, p.apply(x))).collect();
    (0..g.order()).all(|x| (0..g.order()).all(|y| a[g.mul(x, y)] == g.mul(a[x], a[y])))
}

fn shuffled(n: usize, seed: &[usize]) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for (i, &s) in seed.iter().enumerate().take(n) {
        images.swap(i, i + s % (n - i));
    }
    Permutation::from_images(images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn left_translations_preserve_colours(which in 0usize..11, mask in any::<u64>(), a in 0usize..64) {
        let entry = &corpus()[which];
        let cg = graph(entry, mask);
        let g = &entry.group;
        let a = a % g.order();
        let translate = Permutation::from_images((0..g.order()).map(|x| g.mul(a, x)).collect()).unwrap();
        prop_assert!(is_colour_preserving(cg.graph(), &translate).unwrap());
    }

    #[test]
    fn affine_iff_normalizes_left_regular(
        which in 0usize..11,
        mask in any::<u64>(),
        g0 in 0usize..64,
        auto in 0usize..4096,
        seed in proptest::collection::vec(0usize..64, 24),
        structured in any::<bool>(),
    ) {
        let entry = &corpus()[which];
        let g = &entry.group;
        let cg = graph(entry, mask);
        let p = if structured {
            affine_map(g, g0 % g.order(), &entry.autos[auto % entry.autos.len()])
        } else {
            shuffled(g.order(), &seed)
        };
        let oracle = affine_oracle(g, &p);
        prop_assert_eq!(normalizes_left_regular(g, &p), oracle);
        prop_assert_eq!(is_affine(&cg, &p).unwrap().is_some(), oracle);
    }

    #[test]
    fn affine_colour_preserving_iff_classes_fixed(
        which in 0usize..11,
        mask in any::<u64>(),
        g0 in 0usize..64,
        auto in 0usize..4096,
    ) {
        let entry = &corpus()[which];
        let g = &entry.group;
        let cg = graph(entry, mask);
        let alpha = &entry.autos[auto % entry.autos.len()];
        let p = affine_map(g, g0 % g.order(), alpha);
        let classes_fixed = cg
            .connection()
            .iter()
            .all(|&c| alpha[c] == c || alpha[c] == g.inv(c));
        prop_assert_eq!(fixes_colour_classes(&cg, alpha), classes_fixed);
        prop_assert_eq!(is_colour_preserving(cg.graph(), &p).unwrap(), classes_fixed);
    }

    #[test]
    fn normal_form_round_trip(n_pick in 0usize..3, i1 in 0usize..64, i2 in 0usize..64, e in 0usize..2, d in 0usize..2) {
        let n = [3, 5, 7][n_pick];
        let (actors, square) = square_for(n);
        let nf = NormalForm { i1: i1 % n, i2: i2 % n, e, d };
        let h = square.assemble(nf).unwrap();
        prop_assert_eq!(square.normal_form(h).unwrap(), nf);
        // The element really is ρ₁^{i1} ρ₂^{i2} τ^e γ^d as a permutation.
        let p = actors.word(nf.i1 as i64, nf.i2 as i64, e as i64).compose(&square.gamma.pow(d as i64)).unwrap();
        prop_assert_eq!(square.group.perm(h), &p);
    }

    #[test]
    fn rebasing_identity(n_pick in 0usize..3, a in -64i64..64, b in -64i64..64) {
        let n = [3i64, 5, 7][n_pick];
        let (actors, _) = square_for(n as usize);
        // x = (a+b)/2 and y = (b−a)/2 mod n, found by search rather than by inverting 2.
        let x = (0..n).find(|x| (2 * x - a - b).rem_euclid(n) == 0).unwrap();
        let y = (0..n).find(|y| (2 * y - b + a).rem_euclid(n) == 0).unwrap();
        let r12 = actors.rho1.compose(&actors.rho2).unwrap();
        let r1inv_r2 = actors.rho1.inverse().compose(&actors.rho2).unwrap();
        let rhs = r12.pow(x).compose(&r1inv_r2.pow(y)).unwrap();
        prop_assert_eq!(actors.word(a, b, 0), rhs);
    }
}

fn square_for(n: usize) -> (cca_core::lab::KnnActors, DihedralSquare) {
    static CACHE: OnceLock<Vec<(cca_core::lab::KnnActors, DihedralSquare)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        [3, 5, 7]
            .iter()
            .map(|&n| {
                let a = knn_actors(n).unwrap();
                let s = DihedralSquare::new(&a).unwrap();
                (a, s)
            })
            .collect()
    });
    cache.iter().find(|(a, _)| a.n == n).cloned().unwrap()
}
