//! The semidirect product `S(p,j) = P_{p,j} x| <b>`.
//!
//! Elements are stored as `q b^k` with `q` an exponent vector and
//! `0 <= k < p^j`, so `(q, k) (q', k') = (q + B^k q', k + k')`. Note that a
//! factorisation `a_1^{j_1} y b^{-k}` corresponds to `b`-exponent `p^j - k`
//! here.

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;
use serde::Serialize;

use crate::construction::{build_b, build_y_from_powers, has_corner_block_form};
use crate::error::{Error, Result};
use crate::mixedmod::{EndoMatrix, GroupParams, MixedVector};

/// Default cap on the number of elements any enumeration may visit.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SElement {
    v: MixedVector,
    k: u64,
}

impl SElement {
    pub fn new(v: MixedVector, k: u64) -> Result<Self> {
        let order = v.params().b_order();
        if k >= order {
            return Err(Error::OutOfRange {
                what: "b exponent",
                value: k as i128,
                min: 0,
                max: order as i128 - 1,
            });
        }
        Ok(SElement { v, k })
    }

    /// The `P_{p,j}` component `q`.
    pub fn vector(&self) -> &MixedVector {
        &self.v
    }

    /// The exponent `k` of `b`.
    pub fn b_exponent(&self) -> u64 {
        self.k
    }

    pub fn params(&self) -> GroupParams {
        self.v.params()
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.v.is_zero()
    }
}

/// Precomputed data for arithmetic in one `S(p,j)`.
#[derive(Clone, Debug)]
pub struct SpGroup {
    params: GroupParams,
    /// `B^k` for `0 <= k < p^j`.
    b_powers: Vec<EndoMatrix>,
    /// `p^t Y(p^t)` for `0 <= t <= j`.
    scaled_y: Vec<EndoMatrix>,
}

/// p-adic valuation of `k` in `[0, p^j)`, capped at `j` (so `k = 0` gives `j`).
/// The element `b^k` then has order `p^{j-t}`.
pub fn b_valuation(params: GroupParams, k: u64) -> u32 {
    let k = k % params.b_order();
    if k == 0 {
        return params.j();
    }
    let mut t = 0;
    let mut k = k;
    while k.is_multiple_of(params.p()) {
        k /= params.p();
        t += 1;
    }
    t
}

impl SpGroup {
    pub fn new(params: GroupParams) -> Self {
        let b = build_b(params);
        let mut b_powers = Vec::with_capacity(params.b_order() as usize);
        b_powers.push(EndoMatrix::identity(params));
        for k in 1..params.b_order() as usize {
            let next = b_powers[k - 1].mul_unchecked(&b);
            b_powers.push(next);
        }
        let scaled_y = (0..=params.j())
            .map(|t| build_y_from_powers(params, &b_powers, t).scale(params.p().pow(t) as i128))
            .collect();
        SpGroup {
            params,
            b_powers,
            scaled_y,
        }
    }

    pub fn from_pj(p: u64, j: u32) -> Result<Self> {
        Ok(Self::new(GroupParams::new(p, j)?))
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// `B^k`, with `k` taken modulo `p^j`.
    pub fn b_power(&self, k: u64) -> &EndoMatrix {
        &self.b_powers[(k % self.params.b_order()) as usize]
    }

    /// `p^t Y(p^t)`.
    pub fn scaled_y(&self, t: u32) -> &EndoMatrix {
        &self.scaled_y[t as usize]
    }

    /// Leading coefficient `c_t` of `p^t Y(p^t) = diag(c_t, 0, ..., 0)`.
    ///
    /// Fails if the block form does not hold, which would contradict the
    /// structure of `S(p,j)`.
    pub fn power_coefficient(&self, t: u32) -> Result<u64> {
        let m = self.scaled_y(t);
        let c = m.get(0, 0);
        if has_corner_block_form(m, c) {
            Ok(c)
        } else {
            Err(Error::Verification(format!(
                "p^{t} Y(p^{t}) is not of the form diag(c, 0) for {}",
                self.params
            )))
        }
    }

    pub fn identity(&self) -> SElement {
        SElement {
            v: MixedVector::zero(self.params),
            k: 0,
        }
    }

    /// The generator `a_i`, `1 <= i <= p^j - 1`.
    pub fn a(&self, i: usize) -> SElement {
        assert!(
            i >= 1 && i <= self.params.dim(),
            "generator index {i} out of range"
        );
        SElement {
            v: MixedVector::basis(self.params, i - 1),
            k: 0,
        }
    }

    pub fn b(&self) -> SElement {
        SElement {
            v: MixedVector::zero(self.params),
            k: 1 % self.params.b_order(),
        }
    }

    /// `a_1^e`.
    pub fn a1_pow(&self, e: i128) -> SElement {
        SElement {
            v: MixedVector::basis(self.params, 0).scale(e),
            k: 0,
        }
    }

    pub fn multiply(&self, x: &SElement, y: &SElement) -> SElement {
        let n = self.params.dim();
        let mut out = vec![0u64; n];
        self.b_power(x.k).apply_into(y.v.coords(), &mut out);
        let mut v = MixedVector::from_reduced(self.params, out);
        v.add_assign_unchecked(&x.v);
        SElement {
            v,
            k: (x.k + y.k) % self.params.b_order(),
        }
    }

    /// `(q b^k)^{-1} = (-B^{-k} q) b^{-k}`.
    pub fn invert(&self, x: &SElement) -> SElement {
        let order = self.params.b_order();
        let k_inv = (order - x.k) % order;
        let v = self.b_power(k_inv).apply_unchecked(&x.v).negate();
        SElement { v, k: k_inv }
    }

    /// `x^e` by square-and-multiply.
    pub fn power_generic(&self, x: &SElement, mut e: u64) -> SElement {
        let mut result = self.identity();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.multiply(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        result
    }

    /// `(q b^k)^{p^j} = p^t Y(p^t) q` where `b^k` has order `p^{j-t}`.
    pub fn power_pj(&self, x: &SElement) -> SElement {
        let t = b_valuation(self.params, x.k);
        SElement {
            v: self.scaled_y(t).apply_unchecked(&x.v),
            k: 0,
        }
    }

    pub fn commutes(&self, x: &SElement, y: &SElement) -> bool {
        self.multiply(x, y) == self.multiply(y, x)
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        self.params.group_order_u64()
    }

    pub fn order(&self) -> BigUint {
        self.params.group_order()
    }

    /// Group order, or a guard error when it exceeds `limit`.
    pub fn enumerable_size(&self, limit: u64) -> Result<u64> {
        match self.size() {
            Some(n) if n <= limit => Ok(n),
            _ => Err(Error::SizeGuard {
                what: "group order",
                value: format!("{}^{}", self.params.p(), self.params.group_order_exponent()),
                limit: limit.to_string(),
            }),
        }
    }

    /// The element with position `index` in the lexicographic order on
    /// `(k, q_1, ..., q_n)`. Requires `index < |S(p,j)|`.
    pub fn element_at(&self, mut index: u64) -> SElement {
        let n = self.params.dim();
        let mut coords = vec![0u64; n];
        for i in (0..n).rev() {
            let m = self.params.modulus(i);
            coords[i] = index % m;
            index /= m;
        }
        debug_assert!(index < self.params.b_order());
        SElement {
            v: MixedVector::from_reduced(self.params, coords),
            k: index,
        }
    }

    /// Inverse of [`SpGroup::element_at`].
    pub fn index_of(&self, x: &SElement) -> u64 {
        let mut index = x.k;
        for (i, &c) in x.v.coords().iter().enumerate() {
            index = index * self.params.modulus(i) + c;
        }
        index
    }

    /// Every element exactly once, in index order.
    pub fn enumerate(&self, limit: u64) -> Result<impl Iterator<Item = SElement> + '_> {
        let size = self.enumerable_size(limit)?;
        Ok((0..size).map(move |i| self.element_at(i)))
    }

    /// A uniformly random element; works whether or not the group is
    /// enumerable.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> SElement {
        let coords: Vec<u64> = (0..self.params.dim())
            .map(|i| rng.gen_range(0..self.params.modulus(i)))
            .collect();
        SElement {
            v: MixedVector::from_reduced(self.params, coords),
            k: rng.gen_range(0..self.params.b_order()),
        }
    }

    /// A random element whose `b`-exponent is exactly `k`.
    pub fn random_with_b_exponent<R: Rng + ?Sized>(&self, rng: &mut R, k: u64) -> SElement {
        let mut x = self.random_element(rng);
        x.k = k % self.params.b_order();
        x
    }

    /// Parses a word such as `"a1^3 a2^-1 b^2"`; `""` and `"e"` give the
    /// identity.
    pub fn parse_element(&self, text: &str) -> Result<SElement> {
        let mut acc = self.identity();
        for token in text.split_whitespace() {
            let factor = self.parse_factor(token)?;
            acc = self.multiply(&acc, &factor);
        }
        Ok(acc)
    }

    fn parse_factor(&self, token: &str) -> Result<SElement> {
        let err = |reason: &str| Error::Parse {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        if token == "e" {
            return Ok(self.identity());
        }
        let (base, exp) = match token.split_once('^') {
            Some((base, exp)) => {
                let e: i64 = exp
                    .parse()
                    .map_err(|_| err("exponent is not a 64-bit integer"))?;
                (base, e)
            }
            None => (token, 1),
        };
        if base == "b" {
            let order = self.params.b_order() as i128;
            return Ok(SElement {
                v: MixedVector::zero(self.params),
                k: (exp as i128).rem_euclid(order) as u64,
            });
        }
        let index = base
            .strip_prefix('a')
            .ok_or_else(|| err("expected a<i>, b or e"))?;
        let i: usize = index
            .parse()
            .map_err(|_| err("generator index is not a number"))?;
        if i == 0 || i > self.params.dim() {
            return Err(err(&format!(
                "generator index must lie in 1..={}",
                self.params.dim()
            )));
        }
        Ok(SElement {
            v: MixedVector::basis(self.params, i - 1).scale(exp as i128),
            k: 0,
        })
    }

    /// Canonical text `a1^x1 ... an^xn b^k`, zero exponents omitted, `e` for
    /// the identity.
    pub fn format_element(&self, x: &SElement) -> String {
        let mut parts: Vec<String> =
            x.v.coords()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, c)| format!("a{}^{}", i + 1, c))
                .collect();
        if x.k != 0 {
            parts.push(format!("b^{}", x.k));
        }
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn display<'a>(&'a self, x: &'a SElement) -> impl fmt::Display + 'a {
        struct D<'a>(&'a SpGroup, &'a SElement);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format_element(self.1))
            }
        }
        D(self, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterCheckMode {
    /// Every element was tested against the generators `a_1` and `b`.
    Enumerated,
    /// Only `<a_1^p>` and a random sample were tested.
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub params: GroupParams,
    /// Decimal group order.
    pub group_order: String,
    pub group_order_exponent: u64,
    /// Order of `a_1`, the exponent of the cyclic factor.
    pub a1_order: u64,
    pub center_generator: String,
    pub expected_center_order: u64,
    pub center_mode: CenterCheckMode,
    /// `|Z(S(p,j))|` when enumerated.
    pub center_order: Option<u64>,
    /// Every power of `a_1^p` commutes with `a_1` and `b`.
    pub generator_commutes: bool,
    /// Number of non-central sampled elements checked (sampled mode).
    pub samples: u64,
    pub center_ok: bool,
}

/// Group order and center `<a_1^p>` of order `p^j`.
///
/// The center is found by full enumeration when the group has at most
/// `limit` elements, otherwise by testing `samples` random elements outside
/// `<a_1^p>`.
pub fn structure_report<R: Rng + ?Sized>(
    group: &SpGroup,
    limit: u64,
    samples: u64,
    rng: &mut R,
) -> StructureReport {
    let params = group.params();
    let p = params.p();
    let gens = [group.a(1), group.b()];
    let is_central = |x: &SElement| gens.iter().all(|g| group.commutes(x, g));
    let in_center_subgroup = |x: &SElement| {
        x.k == 0 && x.v.coords()[1..].iter().all(|&c| c == 0) && x.v.coords()[0].is_multiple_of(p)
    };

    let generator = group.a1_pow(p as i128);
    let mut z = group.identity();
    let mut generator_commutes = true;
    for _ in 0..params.p_pow_j() {
        generator_commutes &= is_central(&z);
        z = group.multiply(&z, &generator);
    }
    let generator_order_ok = z.is_identity();

    let (mode, center_order, samples_done, outside_ok) = match group.enumerable_size(limit) {
        Ok(size) => {
            use rayon::prelude::*;
            let (count, stray) = (0..size)
                .into_par_iter()
                .map(|i| {
                    let x = group.element_at(i);
                    if is_central(&x) {
                        (1u64, !in_center_subgroup(&x) as u64)
                    } else {
                        (0, 0)
                    }
                })
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            (CenterCheckMode::Enumerated, Some(count), 0, stray == 0)
        }
        Err(_) => {
            let mut ok = true;
            let mut done = 0;
            while done < samples {
                let x = group.random_element(rng);
                if in_center_subgroup(&x) {
                    continue;
                }
                ok &= !is_central(&x);
                done += 1;
            }
            (CenterCheckMode::Sampled, None, done, ok)
        }
    };

    let expected = params.p_pow_j();
    let center_ok = generator_commutes
        && generator_order_ok
        && outside_ok
        && center_order.is_none_or(|c| c == expected);

    StructureReport {
        params,
        group_order: params.group_order().to_string(),
        group_order_exponent: params.group_order_exponent(),
        a1_order: params.top_modulus(),
        center_generator: format!("a1^{p}"),
        expected_center_order: expected,
        center_mode: mode,
        center_order,
        generator_commutes,
        samples: samples_done,
        center_ok,
    }
}
