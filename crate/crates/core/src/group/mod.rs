//! Finite groups stored as multiplication tables.
//!
//! Elements are indexed in breadth-first discovery order from the generators
//! (right multiplication, ties broken by generator order), so index 0 is
//! always the identity and every derived output is deterministic.

mod construct;
mod dicyclic;
mod iso;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use construct::{
    cyclic, dihedral, direct_product, elementary_abelian_2, generalized_dicyclic,
    generalized_dihedral, left_regular, quaternion, quaternion_times_c2n, wreath_c2,
    Quaternion,
};
pub use dicyclic::{is_q8_times_c2n, q8_times_c2n_inversion_sets, recognize_dicyclic, DicyclicWitness};
pub use iso::{are_isomorphic, automorphisms, embeddings, Isomorphism};

/// Default bound on group orders for table-backed constructions.
pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    inverses: Vec<usize>,
    generators: Vec<(String, usize)>,
    #[serde(skip)]
    realization: Option<Vec<Permutation>>,
    #[serde(skip)]
    perm_index: HashMap<Permutation, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.generators)
            .field("realized", &self.realization.is_some())
            .finish()
    }
}

/// Breadth-first closure of `generators` under right multiplication.
///
/// Returns the group (with element names derived from discovery words) and
/// the raw element behind each index.
pub(crate) fn build<T, F>(identity: T, generators: Vec<(String, T)>, mul: F, cap: usize) -> Result<(FiniteGroup, Vec<T>)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut words: Vec<Vec<(usize, u64)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (k, (_, g)) in generators.iter().enumerate() {
            let prod = mul(&elements[i], g);
            if index.contains_key(&prod) {
                continue;
            }
            if elements.len() == cap {
                return Err(Error::OrderExceedsCap { cap });
            }
            let mut word = words[i].clone();
            match word.last_mut() {
                Some((last, exp)) if *last == k => *exp += 1,
                _ => word.push((k, 1)),
            }
            index.insert(prod.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(prod);
            words.push(word);
        }
    }

    let n = elements.len();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = mul(&elements[i], &elements[j]);
            table[i * n + j] = *index
                .get(&prod)
                .ok_or_else(|| Error::Inconsistency("multiplication escaped the closure".into()))?;
        }
    }

    let gen_names: Vec<&str> = generators.iter().map(|(s, _)| s.as_str()).collect();
    let names = words.iter().map(|w| render_word(w, &gen_names)).collect();
    let gen_indices = generators.iter().map(|(s, g)| (s.clone(), index[g])).collect();
    let group = FiniteGroup::from_parts(names, table, gen_indices)?;
    Ok((group, elements))
}

fn render_word(word: &[(usize, u64)], gen_names: &[&str]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let sep = if gen_names.iter().all(|s| s.chars().count() == 1) { "" } else { "*" };
    word.iter()
        .map(|&(k, exp)| if exp == 1 { gen_names[k].to_string() } else { format!("{}^{}", gen_names[k], exp) })
        .collect::<Vec<_>>()
        .join(sep)
}

impl FiniteGroup {
    /// Assemble a group from a table with identity at index 0.
    ///
    /// Only the shape and the identity row are checked here; use
    /// [`FiniteGroup::check_axioms`] for the exhaustive check.
    pub fn from_parts(names: Vec<String>, table: Vec<usize>, generators: Vec<(String, usize)>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::InvalidArgument("table shape does not match element count".into()));
        }
        if table.iter().any(|&x| x >= n) {
            return Err(Error::InvalidArgument("table entry out of range".into()));
        }
        if (0..n).any(|i| table[i] != i || table[i * n] != i) {
            return Err(Error::InvalidArgument("index 0 is not a two-sided identity".into()));
        }
        let mut inverses = vec![usize::MAX; n];
        for i in 0..n {
            inverses[i] = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .ok_or_else(|| Error::InvalidArgument(format!("element {} has no inverse", names[i])))?;
        }
        if let Some((g, _)) = generators.iter().find(|(_, i)| *i >= n) {
            return Err(Error::InvalidArgument(format!("generator {g} out of range")));
        }
        Ok(FiniteGroup { names, table, inverses, generators, realization: None, perm_index: HashMap::new() })
    }

    /// Attach a faithful permutation action. Fails unless `perms` is an
    /// injective homomorphism.
    pub fn with_realization(mut self, perms: Vec<Permutation>) -> Result<Self> {
        if perms.len() != self.order() {
            return Err(Error::InvalidArgument("realization length differs from group order".into()));
        }
        let degree = perms[0].degree();
        if let Some(p) = perms.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch { left: degree, right: p.degree() });
        }
        let mut index = HashMap::with_capacity(perms.len());
        for (i, p) in perms.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::InvalidArgument("realization is not faithful".into()));
            }
        }
        for a in 0..self.order() {
            for &(_, b) in &self.generators {
                if perms[a].compose_unchecked(&perms[b]) != perms[self.mul(a, b)] {
                    return Err(Error::InvalidArgument("realization is not a homomorphism".into()));
                }
            }
        }
        if !perms[0].is_identity() {
            return Err(Error::InvalidArgument("identity does not act trivially".into()));
        }
        self.realization = Some(perms);
        self.perm_index = index;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// `a⁻¹ b a`.
    pub fn conj(&self, b: usize, a: usize) -> usize {
        self.mul(self.mul(self.inv(a), b), a)
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().find(|(s, _)| s == name).map(|&(_, i)| i)
    }

    pub fn element(&self, index: usize) -> GroupElement<'_> {
        assert!(index < self.order(), "element index {index} out of range");
        GroupElement { group: self, index }
    }

    pub fn realization(&self) -> Option<&[Permutation]> {
        self.realization.as_deref()
    }

    /// Permutation realizing element `a`; panics on an unrealized group.
    pub fn perm(&self, a: usize) -> &Permutation {
        &self.realization.as_ref().expect("group has no realization")[a]
    }

    /// Degree of the realization, if any.
    pub fn degree(&self) -> Option<usize> {
        self.realization.as_ref().map(|r| r[0].degree())
    }

    /// Element realized by `p`, if `p` lies in the realized group.
    pub fn index_of_perm(&self, p: &Permutation) -> Option<usize> {
        self.perm_index.get(p).copied()
    }

    pub fn clear_realization(&mut self) {
        self.realization = None;
        self.perm_index.clear();
    }

    pub fn rename_generators(mut self, rename: impl Fn(&str) -> String) -> Self {
        for (s, _) in &mut self.generators {
            *s = rename(s);
        }
        self
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Multiset of element orders, as `order -> count`.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for a in 0..self.order() {
            *out.entry(self.element_order(a)).or_insert(0) += 1;
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every non-identity element is an involution.
    pub fn is_elementary_abelian_2(&self) -> bool {
        (1..self.order()).all(|a| self.mul(a, a) == 0)
    }

    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order()).filter(|&a| self.mul(a, a) == 0).collect()
    }

    /// Exhaustive associativity, identity and inverse check.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(a, 0) != a || self.mul(0, a) != a {
                return Err(Error::Inconsistency(format!("identity fails at {}", self.name(a))));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::Inconsistency(format!("inverse fails at {}", self.name(a))));
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Inconsistency(format!(
                            "associativity fails at ({}, {}, {})",
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !mask[b] {
                    mask[b] = true;
                    queue.push_back(b);
                }
            }
        }
        mask
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mask = self.subgroup_mask(gens);
        (0..self.order()).filter(|&i| mask[i]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup_mask(gens).iter().all(|&b| b)
    }

    /// A short generating set, chosen greedily by descending element order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order()).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut mask = self.subgroup_mask(&gens);
        for a in by_order {
            if !mask[a] {
                gens.push(a);
                mask = self.subgroup_mask(&gens);
            }
        }
        gens
    }
}

/// An element of a specific group.
#[derive(Clone, Copy)]
pub struct GroupElement<'g> {
    group: &'g FiniteGroup,
    index: usize,
}

impl<'g> GroupElement<'g> {
    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn inverse(self) -> Self {
        GroupElement { group: self.group, index: self.group.inv(self.index) }
    }

    pub fn pow(self, k: i64) -> Self {
        GroupElement { group: self.group, index: self.group.pow(self.index, k) }
    }

    pub fn order(&self) -> usize {
        self.group.element_order(self.index)
    }

    pub fn is_identity(&self) -> bool {
        self.index == 0
    }
}

impl PartialEq for GroupElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.index == other.index
    }
}

impl Eq for GroupElement<'_> {}

impl<'g> Mul for GroupElement<'g> {
    type Output = GroupElement<'g>;

    fn mul(self, rhs: Self) -> Self::Output {
        assert!(std::ptr::eq(self.group, rhs.group), "elements of different groups");
        GroupElement { group: self.group, index: self.group.mul(self.index, rhs.index) }
    }
}

impl fmt::Debug for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.group.name(self.index), self.index)
    }
}

impl fmt::Display for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.group.name(self.index))
    }
}

/// Group generated by named permutations, with its faithful realization.
pub fn closure_named(gens: &[(String, Permutation)], cap: usize) -> Result<FiniteGroup> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let degree = gens
        .first()
        .map(|(_, p)| p.degree())
        .ok_or_else(|| Error::InvalidArgument("closure needs at least one generator".into()))?;
    if let Some((_, p)) = gens.iter().find(|(_, p)| p.degree() != degree) {
        return Err(Error::DegreeMismatch { left: degree, right: p.degree() });
    }
    let (group, perms) = build(Permutation::identity(degree), gens.to_vec(), |a, b| a.compose_unchecked(b), cap)?;
    group.with_realization(perms)
}

/// Group generated by `gens`, named `g1, g2, ..`.
pub fn closure(gens: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    let named: Vec<_> = gens.iter().enumerate().map(|(k, p)| (format!("g{}", k + 1), p.clone())).collect();
    closure_named(&named, cap)
}
