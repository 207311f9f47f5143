//! Counting `G_n(u, g) = { a : a^n = (a u^{-1})^n = g }`.
//!
//! [`gn_count_bruteforce`] scans any enumerable group. For `S(p,j)` and
//! `n = p^j`, [`gn_count_structured`] reduces both conditions to linear
//! congruences in the `a_1`-exponent of `a` and needs no enumeration.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{checked_size, element_order, FiniteGroup};
use crate::spgroup::{b_valuation, SElement, SpGroup};

/// Witness lists never hold more than this many elements.
pub const MAX_WITNESSES: usize = 16;

const CHUNK: u64 = 1 << 12;

/// An exact, possibly huge, cardinality. Serialises as a JSON number when it
/// fits in a `u64` and as a decimal string otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(pub BigUint);

impl Count {
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<u64> for Count {
    fn from(x: u64) -> Self {
        Count(BigUint::from(x))
    }
}

impl PartialEq<u64> for Count {
    fn eq(&self, other: &u64) -> bool {
        self.to_u64() == Some(*other)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCount<E> {
    pub n: u64,
    pub count: u64,
    /// The first members of the set in enumeration order.
    pub witnesses: Vec<E>,
}

/// Exact `|G_n(u, g)|` by scanning every `a` in the group.
pub fn gn_count_bruteforce<G: FiniteGroup>(
    group: &G,
    n: u64,
    u: &G::Elem,
    g: &G::Elem,
    limit: u64,
) -> Result<BruteCount<G::Elem>> {
    let size = checked_size(group, limit)?;
    let u_inv = group.invert(u);
    let chunks = size.div_ceil(CHUNK);
    let partial: Vec<(u64, Vec<G::Elem>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut count = 0;
            let mut witnesses = Vec::new();
            for i in c * CHUNK..((c + 1) * CHUNK).min(size) {
                let a = group.element_at(i);
                if group.pow(&a, n) != *g {
                    continue;
                }
                let au = group.multiply(&a, &u_inv);
                if group.pow(&au, n) == *g {
                    count += 1;
                    if witnesses.len() < MAX_WITNESSES {
                        witnesses.push(a);
                    }
                }
            }
            (count, witnesses)
        })
        .collect();
    let mut count = 0;
    let mut witnesses = Vec::new();
    for (c, w) in partial {
        count += c;
        witnesses.extend(w.into_iter().take(MAX_WITNESSES - witnesses.len()));
    }
    Ok(BruteCount {
        n,
        count,
        witnesses,
    })
}

/// The `n`-th power map `a -> a^n` as a table of element indices.
#[derive(Clone, Debug)]
pub struct PowerMap {
    pub n: u64,
    images: Vec<u32>,
}

impl PowerMap {
    pub fn new<G: FiniteGroup>(group: &G, n: u64, limit: u64) -> Result<Self> {
        let size = checked_size(group, limit.min(u32::MAX as u64))?;
        let images = (0..size)
            .into_par_iter()
            .map(|i| group.index_of(&group.pow(&group.element_at(i), n)) as u32)
            .collect();
        Ok(PowerMap { n, images })
    }

    #[inline]
    pub fn image(&self, index: u64) -> u32 {
        self.images[index as usize]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

/// `|G_n(u, g)|` using a precomputed power map.
pub fn gn_count_with_map<G: FiniteGroup>(
    group: &G,
    map: &PowerMap,
    u: &G::Elem,
    g: &G::Elem,
) -> u64 {
    let u_inv = group.invert(u);
    let target = group.index_of(g) as u32;
    (0..map.len() as u64)
        .into_par_iter()
        .filter(|&i| {
            map.image(i) == target && {
                let au = group.multiply(&group.element_at(i), &u_inv);
                map.image(group.index_of(&au)) == target
            }
        })
        .count() as u64
}

/// `|G_n(u, g)|` for every `g` at once, indexed by element index.
pub fn gn_profile<G: FiniteGroup>(group: &G, map: &PowerMap, u: &G::Elem) -> Vec<u32> {
    let u_inv = group.invert(u);
    let mut counts = vec![0u32; map.len()];
    for i in 0..map.len() as u64 {
        let target = map.image(i);
        let au = group.multiply(&group.element_at(i), &u_inv);
        if map.image(group.index_of(&au)) == target {
            counts[target as usize] += 1;
        }
    }
    counts
}

/// Result of [`gn_count_structured`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuredCount {
    pub n: u64,
    pub count: Count,
    /// `b`-exponents `k` (in `a = q b^k`) contributing members, ascending.
    pub contributing_b_exponents: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Solution class `x = r (mod m')` of `c x = rhs (mod m)`, if any.
pub fn solve_linear_congruence(c: u64, rhs: u64, m: u64) -> Option<(u64, u64)> {
    let d = gcd(c % m, m);
    if !rhs.is_multiple_of(d) {
        return None;
    }
    let m2 = m / d;
    if m2 == 1 {
        return Some((0, 1));
    }
    let inv = mod_inverse((c / d) % m2, m2)?;
    let r = ((rhs / d) % m2) as u128 * inv as u128 % m2 as u128;
    Some((r as u64, m2))
}

/// Number of `x` in `Z_m` lying in both residue classes. The class moduli
/// must divide `m` and one must divide the other.
fn intersect_count(a: (u64, u64), b: (u64, u64), m: u64) -> u64 {
    let (small, large) = if a.1 <= b.1 { (a, b) } else { (b, a) };
    debug_assert_eq!(large.1 % small.1, 0);
    if large.0 % small.1 == small.0 % small.1 {
        m / large.1
    } else {
        0
    }
}

/// Exact `|G_{p^j}(u, g)|` in `S(p,j)` without enumeration.
///
/// With `a = q b^k` and `u^{-1} = w b^{k'}`, `a^{p^j} = c_t q_1 a_1` and
/// `(a u^{-1})^{p^j} = c_{t'} (q_1 + (B^k w)_1) a_1` where `b^k`, `b^{k+k'}`
/// have orders `p^{j-t}`, `p^{j-t'}` and `c_t` is the corner of
/// `p^t Y(p^t)`. For each `k` that leaves two linear congruences in `q_1`;
/// the coordinates `q_2 .. q_n` are free.
pub fn gn_count_structured(group: &SpGroup, u: &SElement, g: &SElement) -> Result<StructuredCount> {
    let params = group.params();
    let n = params.p_pow_j();
    let m = params.top_modulus();
    let none = || StructuredCount {
        n,
        count: Count::default(),
        contributing_b_exponents: Vec::new(),
    };
    // Every p^j-th power lies in <a_1^{p^j}>.
    if g.b_exponent() != 0 || g.vector().coords()[1..].iter().any(|&c| c != 0) {
        return Ok(none());
    }
    let g1 = g.vector().coords()[0];
    let coeffs: Vec<u64> = (0..=params.j())
        .map(|t| group.power_coefficient(t))
        .collect::<Result<_>>()?;

    let u_inv = group.invert(u);
    let mut per_exponent = 0u64;
    let mut contributing = Vec::new();
    for k in 0..params.b_order() {
        let t = b_valuation(params, k);
        let t2 = b_valuation(params, k + u_inv.b_exponent());
        let shift = group.b_power(k).apply_unchecked(u_inv.vector()).coords()[0];
        let Some(first) = solve_linear_congruence(coeffs[t as usize], g1, m) else {
            continue;
        };
        let Some((r2, m2)) = solve_linear_congruence(coeffs[t2 as usize], g1, m) else {
            continue;
        };
        // q_1 + shift = r2 (mod m2)
        let second = ((r2 + m2 - shift % m2) % m2, m2);
        let solutions = intersect_count(first, second, m);
        if solutions > 0 {
            per_exponent += solutions;
            contributing.push(k);
        }
    }
    let free = BigUint::from(params.p()).pow(params.dim() as u32 - 1);
    Ok(StructuredCount {
        n,
        count: Count(BigUint::from(per_exponent) * free),
        contributing_b_exponents: contributing,
    })
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Least common multiple of all element orders.
pub fn exponent<G: FiniteGroup>(group: &G, limit: u64) -> Result<u64> {
    let size = checked_size(group, limit)?;
    let e = (0..size)
        .into_par_iter()
        .map(|i| element_order(group, &group.element_at(i)))
        .reduce(|| 1, lcm);
    if e == 0 {
        return Err(Error::Verification("element order overflow".into()));
    }
    Ok(e)
}
