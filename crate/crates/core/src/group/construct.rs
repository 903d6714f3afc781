//! Named group constructions.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{build, FiniteGroup, GroupElement, DEFAULT_ORDER_CAP};

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::InvalidArgument("cyclic group needs n >= 1".into()));
    }
    let r = 1 % n;
    Ok(build(0usize, vec![("r".into(), r)], |a, b| (a + b) % n, n.max(1))?.0)
}

/// Dihedral group of order `2n` with rotation `r` and reflection `s`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidArgument("dihedral group needs n >= 3".into()));
    }
    // (k, f) stands for r^k s^f.
    let mul = move |&(a, f): &(usize, bool), &(b, g): &(usize, bool)| {
        let b = if f { (n - b) % n } else { b };
        ((a + b) % n, f ^ g)
    };
    let gens = vec![("r".into(), (1, false)), ("s".into(), (0, true))];
    Ok(build((0, false), gens, mul, 2 * n)?.0)
}

fn fresh_name(base: &str, taken: &[(String, usize)]) -> String {
    let used: HashSet<&str> = taken.iter().map(|(s, _)| s.as_str()).collect();
    if !used.contains(base) {
        return base.to_string();
    }
    (0..).map(|k| format!("{base}{k}")).find(|s| !used.contains(s.as_str())).unwrap()
}

/// `Dih(A)`: abelian `A` extended by an involution inverting every element.
pub fn generalized_dihedral(a: &FiniteGroup) -> Result<FiniteGroup> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let sigma = fresh_name("s", a.generators());
    let mul = |&(x, f): &(usize, bool), &(y, g): &(usize, bool)| {
        let y = if f { a.inv(y) } else { y };
        (a.mul(x, y), f ^ g)
    };
    let mut gens: Vec<_> = a.generators().iter().map(|(s, i)| (s.clone(), (*i, false))).collect();
    gens.push((sigma, (0, true)));
    Ok(build((0, false), gens, mul, 2 * a.order())?.0)
}

/// `Dic(A, y)`: abelian `A` of even order extended by `x` with `x² = y` and
/// `x⁻¹ a x = a⁻¹`.
pub fn generalized_dicyclic(a: &FiniteGroup, y: GroupElement<'_>) -> Result<FiniteGroup> {
    if !std::ptr::eq(a, y.group()) {
        return Err(Error::InvalidArgument("y is not an element of A".into()));
    }
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if a.order() % 2 != 0 {
        return Err(Error::InvalidArgument("A must have even order".into()));
    }
    if y.order() != 2 {
        return Err(Error::NotInvolution(y.to_string()));
    }
    let y = y.index();
    let x_name = fresh_name("x", a.generators());
    // (b, f) stands for b x^f; x b = b⁻¹ x.
    let mul = |&(b, f): &(usize, bool), &(c, g): &(usize, bool)| match (f, g) {
        (false, _) => (a.mul(b, c), g),
        (true, false) => (a.mul(b, a.inv(c)), true),
        (true, true) => (a.mul(a.mul(b, a.inv(c)), y), false),
    };
    let mut gens: Vec<_> = a.generators().iter().map(|(s, i)| (s.clone(), (*i, false))).collect();
    gens.push((x_name, (0, true)));
    Ok(build((0, false), gens, mul, 2 * a.order())?.0)
}

fn product_names(g: &FiniteGroup, h: &FiniteGroup) -> (Vec<String>, Vec<String>) {
    let left: Vec<String> = g.generators().iter().map(|(s, _)| s.clone()).collect();
    let right: Vec<String> = h.generators().iter().map(|(s, _)| s.clone()).collect();
    if left.iter().any(|s| right.contains(s)) {
        (
            left.iter().map(|s| format!("{s}_1")).collect(),
            right.iter().map(|s| format!("{s}_2")).collect(),
        )
    } else {
        (left, right)
    }
}

/// Direct product with componentwise multiplication. Generator names are
/// suffixed `_1`/`_2` when the factors share a name.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    if g.order() * h.order() > cap {
        return Err(Error::OrderExceedsCap { cap });
    }
    let (ln, rn) = product_names(g, h);
    let mut gens: Vec<(String, (usize, usize))> =
        g.generators().iter().zip(ln).map(|((_, i), s)| (s, (*i, 0))).collect();
    gens.extend(h.generators().iter().zip(rn).map(|((_, j), s)| (s, (0, *j))));
    let mul = |&(a, b): &(usize, usize), &(c, d): &(usize, usize)| (g.mul(a, c), h.mul(b, d));
    Ok(build((0, 0), gens, mul, cap)?.0)
}

/// `(G × G) ⋊ C2` with the `C2` factor `w` swapping coordinates.
pub fn wreath_c2(g: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    if 2 * g.order() * g.order() > cap {
        return Err(Error::OrderExceedsCap { cap });
    }
    let swap = fresh_name("w", &[]);
    let mut gens: Vec<(String, (usize, usize, bool))> =
        g.generators().iter().map(|(s, i)| (format!("{s}_1"), (*i, 0, false))).collect();
    gens.extend(g.generators().iter().map(|(s, i)| (format!("{s}_2"), (0, *i, false))));
    gens.push((swap, (0, 0, true)));
    // (a, b, f) stands for (a, b) w^f; w (c, d) w = (d, c).
    let mul = |&(a, b, f): &(usize, usize, bool), &(c, d, h): &(usize, usize, bool)| {
        let (c, d) = if f { (d, c) } else { (c, d) };
        (g.mul(a, c), g.mul(b, d), f ^ h)
    };
    Ok(build((0, 0, false), gens, mul, cap)?.0)
}

/// `C2^n` with generators `c1 .. cn`.
pub fn elementary_abelian_2(n: usize) -> Result<FiniteGroup> {
    if n >= usize::BITS as usize - 1 {
        return Err(Error::OrderExceedsCap { cap: DEFAULT_ORDER_CAP });
    }
    let gens = (0..n).map(|k| (format!("c{}", k + 1), 1usize << k)).collect();
    Ok(build(0usize, gens, |a, b| a ^ b, 1 << n)?.0)
}

/// Unit part of a quaternion: `1, i, j, k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quaternion {
    One,
    I,
    J,
    K,
}

impl Quaternion {
    fn mul(self, other: Quaternion) -> (bool, Quaternion) {
        use Quaternion::*;
        match (self, other) {
            (One, q) | (q, One) => (false, q),
            (I, I) | (J, J) | (K, K) => (true, One),
            (I, J) => (false, K),
            (J, I) => (true, K),
            (J, K) => (false, I),
            (K, J) => (true, I),
            (K, I) => (false, J),
            (I, K) => (true, J),
        }
    }
}

type SignedUnit = (bool, Quaternion);

fn quaternion_mul(&(s, p): &SignedUnit, &(t, q): &SignedUnit) -> SignedUnit {
    let (neg, r) = p.mul(q);
    (s ^ t ^ neg, r)
}

/// The quaternion group `Q8` with generators `i`, `j`.
pub fn quaternion() -> FiniteGroup {
    quaternion_times_c2n(0).expect("Q8 fits").0
}

/// `Q8 × C2^n` with generators `i, j, c1 .. cn`, plus the quaternion unit
/// of each element.
pub fn quaternion_times_c2n(n: usize) -> Result<(FiniteGroup, Vec<Quaternion>)> {
    if n >= usize::BITS as usize - 4 {
        return Err(Error::OrderExceedsCap { cap: DEFAULT_ORDER_CAP });
    }
    let mut gens = vec![
        ("i".to_string(), ((false, Quaternion::I), 0usize)),
        ("j".to_string(), ((false, Quaternion::J), 0usize)),
    ];
    gens.extend((0..n).map(|k| (format!("c{}", k + 1), ((false, Quaternion::One), 1usize << k))));
    let mul = |(p, a): &(SignedUnit, usize), (q, b): &(SignedUnit, usize)| (quaternion_mul(p, q), a ^ b);
    let (group, raw) = build(((false, Quaternion::One), 0), gens, mul, 8 << n)?;
    Ok((group, raw.into_iter().map(|((_, u), _)| u).collect()))
}

/// `Ĝ`: the group acting on its own element indices by left multiplication.
pub fn left_regular(g: &FiniteGroup) -> FiniteGroup {
    let n = g.order();
    let perms = (0..n)
        .map(|a| Permutation::from_images((0..n).map(|x| g.mul(a, x)).collect()).expect("rows of a group table are bijections"))
        .collect();
    let mut plain = g.clone();
    plain.clear_realization();
    plain.with_realization(perms).expect("left translations form a faithful action")
}
