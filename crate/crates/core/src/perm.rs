//! Permutations of `{0, .., degree - 1}`.
//!
//! Composition is right-to-left: `p.compose(&q)` maps `i` to `p(q(i))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Build from an image array, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::NotAPermutation(format!("cycles {cycles:?} on {degree} points")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose_unchecked(&base);
        }
        acc
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Result<Permutation> {
        Ok(self.compose(other)?.compose_unchecked(&self.inverse()))
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Non-trivial cycles in order of their smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Conjugate by a relabelling of points: the result maps `relabel(i)` to `relabel(self(i))`.
    pub fn relabel(&self, relabel: &Permutation) -> Permutation {
        relabel.compose_unchecked(self).compose_unchecked(&relabel.inverse())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_composition() {
        let id = Permutation::identity(3);
        assert_eq!(id.compose(&id).unwrap(), id);
    }

    #[test]
    fn three_cycle_squared() {
        let c = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let expected = Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap();
        assert_eq!(c.compose(&c).unwrap(), expected);
        assert_eq!(c.compose(&c.inverse()).unwrap(), Permutation::identity(3));
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn composition_is_right_to_left() {
        // p = (0 1), q = (1 2): p(q(1)) = p(2) = 2, p(q(2)) = p(1) = 0.
        let p = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert_eq!(p.compose(&q).unwrap().images(), &[1, 2, 0]);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(2);
        let b = Permutation::identity(3);
        assert_eq!(a.compose(&b), Err(Error::DegreeMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn display_cycles() {
        let p = Permutation::from_cycles(5, &[vec![0, 3], vec![1, 2, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 3)(1 2 4)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p.pow(6), Permutation::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
    }
}
