//! Isomorphism search by backtracking over generator images.

use std::ops::ControlFlow;

use crate::error::{Error, Result};

use super::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    /// Images of the source's search generators.
    pub generator_images: Vec<(usize, usize)>,
    /// Full element map, source index to target index.
    pub map: Vec<usize>,
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<usize>,
    gen_orders: Vec<usize>,
    target_orders: Vec<usize>,
}

impl Search<'_> {
    /// Extend `map` to the subgroup generated by the first `k + 1` generators.
    fn extend(&self, map: &mut [usize], used: &mut [bool], images: &[usize]) -> bool {
        let mut queue: Vec<usize> = (0..map.len()).filter(|&a| map[a] != UNSET).collect();
        while let Some(a) = queue.pop() {
            for (t, &g) in self.gens[..images.len()].iter().enumerate() {
                let b = self.source.mul(a, g);
                let img = self.target.mul(map[a], images[t]);
                if map[b] == UNSET {
                    if used[img] {
                        return false;
                    }
                    map[b] = img;
                    used[img] = true;
                    queue.push(b);
                } else if map[b] != img {
                    return false;
                }
            }
        }
        true
    }

    fn run(
        &self,
        map: &[usize],
        used: &[bool],
        images: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let k = images.len();
        if k == self.gens.len() {
            return visit(map, images);
        }
        for y in 0..self.target.order() {
            if used[y] || self.target_orders[y] != self.gen_orders[k] {
                continue;
            }
            let mut map = map.to_vec();
            let mut used = used.to_vec();
            images.push(y);
            if self.extend(&mut map, &mut used, images) {
                self.run(&map, &used, images, visit)?;
            }
            images.pop();
        }
        ControlFlow::Continue(())
    }
}

fn for_each_isomorphism(
    source: &FiniteGroup,
    target: &FiniteGroup,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>,
) -> Vec<usize> {
    if source.order() != target.order() || source.order_profile() != target.order_profile() {
        return source.small_generating_set();
    }
    embeddings(source, target, visit)
}

/// Visit every injective homomorphism `source → target` as an element map
/// together with the images of the search generators, in canonical order.
/// Returns the search generators.
pub fn embeddings(
    source: &FiniteGroup,
    target: &FiniteGroup,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>,
) -> Vec<usize> {
    let gens = source.small_generating_set();
    let search = Search {
        source,
        target,
        gen_orders: gens.iter().map(|&g| source.element_order(g)).collect(),
        target_orders: (0..target.order()).map(|a| target.element_order(a)).collect(),
        gens: gens.clone(),
    };
    let mut map = vec![UNSET; source.order()];
    let mut used = vec![false; target.order()];
    map[0] = 0;
    used[0] = true;
    let _ = search.run(&map, &used, &mut Vec::new(), visit);
    gens
}

/// First isomorphism in canonical search order, if any.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Isomorphism> {
    let mut found = None;
    let gens = for_each_isomorphism(g, h, &mut |map, images| {
        found = Some((map.to_vec(), images.to_vec()));
        ControlFlow::Break(())
    });
    found.map(|(map, images)| Isomorphism { generator_images: gens.into_iter().zip(images).collect(), map })
}

/// All automorphisms of `g` as element maps, identity first.
pub fn automorphisms(g: &FiniteGroup, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_isomorphism(g, g, &mut |map, _| {
        if out.len() == cap {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(map.to_vec());
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::AutomorphismCap { cap });
    }
    out.sort();
    Ok(out)
}
