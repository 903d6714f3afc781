//! `⟨G, γ⟩ ≅ D_2n × D_2n` with `γ = σ₁σ₂τ`, its normal form
//! `ρ₁^{i1} ρ₂^{i2} τ^e γ^d`, and the map `φ` extending the `σ₂` transport.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use crate::engine::{is_affine, is_colour_preserving, Verdict, VerdictKind, Witness};
use crate::error::{Error, Result};
use crate::graph::{cayley_graph, CayleyGraph};
use crate::group::{are_isomorphic, closure_named, dihedral, direct_product, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::perm::Permutation;

use super::{arc_labeling, cayley_form, induced_vertex_map, knn_actors, stage, KnnActors};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    pub i1: usize,
    pub i2: usize,
    pub e: usize,
    pub d: usize,
}

#[derive(Clone, Debug)]
pub struct DihedralSquare {
    pub gamma: Permutation,
    /// `⟨ρ₁, ρ₂, τ, γ⟩` with its realization on `K_{n,n}`.
    pub group: FiniteGroup,
    forms: Vec<NormalForm>,
    by_form: HashMap<NormalForm, usize>,
    n: usize,
}

/// `γ := σ₁σ₂τ`, checked against the relations it must satisfy.
pub fn gamma(actors: &KnnActors) -> Result<Permutation> {
    let gamma = actors.sigma1.compose(&actors.sigma2)?.compose(&actors.tau)?;
    let r12 = actors.rho1.compose(&actors.rho2)?;
    let r1inv_r2 = actors.rho1.inverse().compose(&actors.rho2)?;
    let ok = gamma.order() == 2
        && gamma.compose(&actors.tau)? == actors.tau.compose(&gamma)?
        && gamma.conjugate(&r1inv_r2)? == r1inv_r2
        && gamma.conjugate(&r12)? == r12.inverse();
    stage(ok, "gamma", "gamma fails its defining relations")?;
    Ok(gamma)
}

impl DihedralSquare {
    pub fn new(actors: &KnnActors) -> Result<Self> {
        let n = actors.n;
        let gamma = gamma(actors)?;
        let gens: Vec<(String, Permutation)> = [
            ("rho1", &actors.rho1),
            ("rho2", &actors.rho2),
            ("tau", &actors.tau),
            ("gamma", &gamma),
        ]
        .iter()
        .map(|(s, p)| (s.to_string(), (*p).clone()))
        .collect();
        let group = closure_named(&gens, DEFAULT_ORDER_CAP.max(4 * n * n))?;
        stage(group.order() == 4 * n * n, "gamma", "|<G, gamma>| != 4n^2")?;

        let mut forms = vec![NormalForm { i1: 0, i2: 0, e: 0, d: 0 }; group.order()];
        let mut by_form = HashMap::new();
        for i1 in 0..n {
            for i2 in 0..n {
                for e in 0..2 {
                    for d in 0..2 {
                        let nf = NormalForm { i1, i2, e, d };
                        let p = assemble_perm(actors, &gamma, nf);
                        let idx = group
                            .index_of_perm(&p)
                            .ok_or_else(|| Error::Inconsistency("normal form escapes the group".into()))?;
                        if by_form.values().any(|&j| j == idx) {
                            return Err(Error::Inconsistency("normal forms are not unique".into()));
                        }
                        forms[idx] = nf;
                        by_form.insert(nf, idx);
                    }
                }
            }
        }
        Ok(DihedralSquare { gamma, group, forms, by_form, n })
    }

    pub fn normal_form(&self, h: usize) -> Result<NormalForm> {
        self.forms
            .get(h)
            .copied()
            .ok_or(Error::ElementOutOfRange { index: h, order: self.group.order() })
    }

    pub fn assemble(&self, nf: NormalForm) -> Result<usize> {
        let reduced = NormalForm { i1: nf.i1 % self.n, i2: nf.i2 % self.n, e: nf.e % 2, d: nf.d % 2 };
        self.by_form
            .get(&reduced)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("{nf:?} is not a normal form")))
    }

    pub fn gamma_index(&self) -> usize {
        self.group.index_of_perm(&self.gamma).expect("gamma generates")
    }

    /// Whether `h` lies in `G`, i.e. has no `γ` factor.
    pub fn in_g(&self, h: usize) -> bool {
        self.forms[h].d == 0
    }
}

fn assemble_perm(actors: &KnnActors, gamma: &Permutation, nf: NormalForm) -> Permutation {
    actors.word(nf.i1 as i64, nf.i2 as i64, nf.e as i64).compose_unchecked(&gamma.pow(nf.d as i64))
}

/// `ρ₁^a ρ₂^b = (ρ₁ρ₂)^{(a+b)/2} (ρ₁⁻¹ρ₂)^{(b−a)/2}` for all `a, b`, with
/// halving done modulo `n`.
pub fn rebasing_identity_holds(actors: &KnnActors) -> bool {
    let n = actors.n as i64;
    let half = (n + 1) / 2;
    let r12 = actors.rho1.compose_unchecked(&actors.rho2);
    let r1inv_r2 = actors.rho1.inverse().compose_unchecked(&actors.rho2);
    (0..n).all(|a| {
        (0..n).all(|b| {
            let lhs = actors.word(a, b, 0);
            let rhs = r12
                .pow(((a + b) * half).rem_euclid(n))
                .compose_unchecked(&r1inv_r2.pow(((b - a) * half).rem_euclid(n)));
            lhs == rhs
        })
    })
}

/// `φ(g) = σ₂(g)`, `φ(gγ) = σ₂(g)γ` on `⟨G, γ⟩`, computed through the arc
/// transport and cross-checked against `(i1, i2, e, d) ↦ (i1, −i2, e, d)`.
pub fn phi(actors: &KnnActors, square: &DihedralSquare, sigma2_on_g: &Permutation) -> Result<Permutation> {
    let grp = &square.group;
    let gamma = square.gamma_index();
    let n = actors.n;
    let mut images = vec![usize::MAX; grp.order()];
    for h in 0..grp.order() {
        let (g, tail) = if square.in_g(h) { (h, false) } else { (grp.mul(h, gamma), true) };
        let g_in_g = actors.g_index(grp.perm(g))?;
        let image = grp
            .index_of_perm(actors.g.perm(sigma2_on_g.apply(g_in_g)))
            .ok_or_else(|| Error::Inconsistency("sigma2 transport leaves G".into()))?;
        images[h] = if tail { grp.mul(image, gamma) } else { image };

        let nf = square.normal_form(h)?;
        let expected = square.assemble(NormalForm { i2: (n - nf.i2) % n, ..nf })?;
        if images[h] != expected {
            return Err(Error::Inconsistency(format!("phi disagrees with the normal-form map at {}", grp.name(h))));
        }
    }
    Permutation::from_images(images).map_err(|_| Error::Inconsistency("phi is not a bijection".into()))
}

/// `Cay(⟨G, γ⟩, C ∪ {γ})`.
pub fn square_cayley_graph(actors: &KnnActors, square: &DihedralSquare) -> Result<CayleyGraph> {
    let grp = &square.group;
    let mut connection = vec![square.gamma_index()];
    for &c in &actors.expected_connection()? {
        connection.push(grp.index_of_perm(actors.g.perm(c)).expect("G is a subgroup"));
    }
    let mut plain = grp.clone();
    plain.clear_realization();
    cayley_graph(&plain, &connection)
}

/// Run the full pipeline for the `D_2n × D_2n` witness.
pub fn proposition_3_3_witness(n: usize) -> Result<Verdict> {
    let start = Instant::now();
    let actors = knn_actors(n).map_err(crate::Error::at("actors"))?;
    let labeling = arc_labeling(&actors).map_err(Error::at("labeling"))?;
    let form = cayley_form(&actors, &labeling).map_err(Error::at("cayley form"))?;
    let sigma2 = induced_vertex_map(&actors, &actors.sigma2, &labeling).map_err(Error::at("transport"))?;

    let mut v = Verdict::new(VerdictKind::NonCca);
    let square = DihedralSquare::new(&actors).map_err(Error::at("gamma"))?;
    v.check("gamma relations", true, "gamma^2 = e, commutes with tau and rho1^-1 rho2, inverts rho1 rho2");
    let model = direct_product(&dihedral(n)?, &dihedral(n)?, DEFAULT_ORDER_CAP.max(4 * n * n))?;
    let iso = are_isomorphic(&square.group, &model).is_some();
    stage(
        v.check("<G, gamma> isomorphic to D_2n x D_2n", iso, format!("order {}", square.group.order())),
        "gamma",
        "<G, gamma> is not D_2n x D_2n",
    )?;
    stage(v.check("rebasing identity", rebasing_identity_holds(&actors), "all n^2 exponent pairs"), "normal form", "rebasing identity fails")?;

    let cg = square_cayley_graph(&actors, &square).map_err(Error::at("cayley graph"))?;
    stage(v.check("connected", cg.graph().is_connected(), format!("{} vertices", cg.group().order())), "cayley graph", "disconnected")?;
    v.check(
        "connection set",
        true,
        format!("{{{}}}", cg.connection_names().join(", ")),
    );

    let gamma_colour = cg.colour_of_element(square.gamma_index());
    let cross_ok = cg
        .graph()
        .edges()
        .filter(|&(u, w, _)| square.in_g(u) != square.in_g(w))
        .all(|(_, _, c)| c == gamma_colour);
    stage(v.check("edges between G and G gamma coloured gamma", cross_ok, ""), "cayley graph", "cross edge not coloured gamma")?;

    let phi = phi(&actors, &square, &sigma2).map_err(Error::at("phi"))?;
    v.check("phi agrees with normal-form map", true, "(i1, i2, e, d) -> (i1, -i2, e, d)");
    let preserving = is_colour_preserving(cg.graph(), &phi)?;
    stage(
        v.check("phi colour-preserving", preserving, format!("all {} edges", cg.graph().edge_count())),
        "colour check",
        "phi is not colour-preserving",
    )?;

    let restricted_affine = is_affine(&form.cayley, &sigma2)?.is_some();
    stage(v.check("phi restricted to G non-affine", !restricted_affine, ""), "affinity", "restriction is affine")?;
    let affine = is_affine(&cg, &phi)?.is_some();
    stage(v.check("phi non-affine", !affine, ""), "affinity", "phi is affine")?;

    v.witness = Some(Witness { group: cg.group().clone(), connection: cg.connection().to_vec(), images: phi.into_images() });
    v.stats.elapsed = start.elapsed();
    Ok(v)
}
