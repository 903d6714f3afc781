use cca_core::group::{
    are_isomorphic, cyclic, dihedral, direct_product, elementary_abelian_2, generalized_dicyclic, generalized_dihedral,
    is_q8_times_c2n, quaternion, quaternion_times_c2n, recognize_dicyclic, FiniteGroup,
};

fn abelian_models() -> Vec<FiniteGroup> {
    let mut v: Vec<FiniteGroup> = (1..=8).map(|n| cyclic(n).unwrap()).collect();
    v.push(elementary_abelian_2(2).unwrap());
    v.push(elementary_abelian_2(3).unwrap());
    v.push(direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap(), 64).unwrap());
    v
}

fn corpus() -> Vec<(String, FiniteGroup)> {
    let mut v = Vec::new();
    for n in 1..=16 {
        v.push((format!("C{n}"), cyclic(n).unwrap()));
    }
    for n in 3..=8 {
        v.push((format!("D{n}"), dihedral(n).unwrap()));
    }
    for n in 2..=4 {
        v.push((format!("C2^{n}"), elementary_abelian_2(n).unwrap()));
    }
    v.push(("Q8".into(), quaternion()));
    v.push(("Q8xC2".into(), quaternion_times_c2n(1).unwrap().0));
    for a in abelian_models() {
        if a.order() % 2 == 0 && 2 * a.order() <= 16 {
            for y in a.involutions() {
                v.push((format!("Dic(|A|={}, y={})", a.order(), a.name(y)), generalized_dicyclic(&a, a.element(y)).unwrap()));
            }
        }
        if 2 * a.order() <= 16 {
            v.push((format!("Dih(|A|={})", a.order()), generalized_dihedral(&a).unwrap()));
        }
    }
    let c2 = cyclic(2).unwrap();
    v.push(("C2xD4".into(), direct_product(&c2, &dihedral(4).unwrap(), 64).unwrap()));
    v.push(("C4xC4".into(), direct_product(&cyclic(4).unwrap(), &cyclic(4).unwrap(), 64).unwrap()));
    v.push(("C2xQ8 via product".into(), direct_product(&c2, &quaternion(), 64).unwrap()));
    v
}

/// `G` is generalized dicyclic iff it is isomorphic to some `Dic(A, y)`
/// built from an abelian model of half its order.
fn dicyclic_oracle(g: &FiniteGroup, models: &[FiniteGroup]) -> bool {
    models.iter().filter(|a| 2 * a.order() == g.order() && a.order() % 2 == 0).any(|a| {
        a.involutions()
            .into_iter()
            .any(|y| are_isomorphic(&generalized_dicyclic(a, a.element(y)).unwrap(), g).is_some())
    })
}

#[test]
fn dicyclic_recognition_matches_construction() {
    let models = abelian_models();
    for (name, g) in corpus() {
        let witnesses = recognize_dicyclic(&g);
        assert_eq!(!witnesses.is_empty(), dicyclic_oracle(&g, &models), "{name}");
        for w in &witnesses {
            assert_eq!(w.subgroup.len() * 2, g.order(), "{name}");
            assert!(w.subgroup.binary_search(&w.x).is_err(), "{name}");
            assert_eq!(g.mul(w.x, w.x), w.y, "{name}");
            assert_eq!(g.element_order(w.y), 2, "{name}");
            for &b in &w.subgroup {
                assert_eq!(g.conj(b, w.x), g.inv(b), "{name}");
            }
        }
    }
}

#[test]
fn q8_times_c2n_recognition() {
    for (name, g) in corpus() {
        let expected = [0, 1, 2].iter().any(|&k| {
            let m = quaternion_times_c2n(k).unwrap().0;
            m.order() == g.order() && are_isomorphic(&m, &g).is_some()
        });
        assert_eq!(is_q8_times_c2n(&g), expected, "{name}");
    }
}
