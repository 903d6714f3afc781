use cca_core::engine::{is_colour_preserving, replay_witness, VerdictKind};
use cca_core::lab::{arc_labeling, cayley_form, induced_vertex_map, knn_actors, proposition_3_3_witness, theorem_3_1_witness};

#[test]
fn every_transported_map_is_colour_preserving() {
    for n in [3, 5] {
        let actors = knn_actors(n).unwrap();
        let labeling = arc_labeling(&actors).unwrap();
        let form = cayley_form(&actors, &labeling).unwrap();
        let mut exceptions = 0;
        for h in 0..actors.h.order() {
            let p = induced_vertex_map(&actors, actors.h.perm(h), &labeling).unwrap();
            if !is_colour_preserving(form.cayley.graph(), &p).unwrap() {
                exceptions += 1;
            }
        }
        assert_eq!(exceptions, 0, "n = {n}");
    }
}

#[test]
fn witnesses_for_n_nine() {
    let v = theorem_3_1_witness(9).unwrap();
    assert_eq!(v.kind, VerdictKind::NonCca);
    assert_eq!(v.witness.as_ref().unwrap().images.len(), 162);
    assert!(replay_witness(&v).unwrap());
    let v = proposition_3_3_witness(7).unwrap();
    assert_eq!(v.witness.as_ref().unwrap().images.len(), 196);
    assert!(replay_witness(&v).unwrap());
}
