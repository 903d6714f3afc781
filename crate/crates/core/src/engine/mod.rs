//! The decision core.

mod affine;
mod arcs;
mod cca;
mod harness;
mod pair;
mod search;
mod verdict;

pub use affine::{fixes_colour_classes, is_affine, normalizes_left_regular, AffineDecomposition};
pub use arcs::{
    check_acts_by_automorphisms, induced_vertex_map, is_arc_regular, line_subdivision_form, local_action, orbit,
    ArcLabeling, LineSubdivisionForm,
};
pub use cca::{is_cca_graph, is_cca_group, DEFAULT_SUBSET_CAP, ORBIT_PRUNING_LIMIT};
pub use harness::corollary_4_10_harness;
pub use pair::{is_complete_colour_pair, regular_realization};
pub use search::{colour_preserving_automorphisms, is_colour_preserving, AutGroupResult, SearchStats, AUTOMORPHISM_LIMIT};
pub use verdict::{replay, replay_witness, Check, Verdict, VerdictKind, Witness};
