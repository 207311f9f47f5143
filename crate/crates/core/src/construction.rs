//! The matrices `B`, `S = B - I` and `Y(p^t)` attached to `S(p,j)`, closed
//! forms for the powers of `S` and `B`, and a self-check of the identities
//! they satisfy.
//!
//! The closed forms are independent of [`EndoMatrix::pow`] and exist to
//! cross-check it; nothing downstream computes with them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixedmod::{EndoMatrix, GroupParams};

/// The automorphism `b`:
/// `a_1 -> a_1 a_2^{-1}`, `a_k -> a_k a_{k+1}` for `1 < k < n`,
/// `a_n -> a_n a_1^{-p^j}`.
pub fn build_b(params: GroupParams) -> EndoMatrix {
    let n = params.dim();
    let pj = params.p_pow_j() as i64;
    let mut rows = vec![vec![0i64; n]; n];
    for (c, row) in rows.iter_mut().enumerate() {
        row[c] = 1;
    }
    rows[1][0] = -1;
    for c in 1..n - 1 {
        rows[c + 1][c] = 1;
    }
    rows[0][n - 1] = -pj;
    EndoMatrix::from_rows(params, &rows).expect("B is well defined")
}

/// `S = B - I`.
pub fn build_shift(params: GroupParams) -> EndoMatrix {
    let minus_identity = EndoMatrix::identity(params).scale(-1);
    build_b(params).add_unchecked(&minus_identity)
}

/// Closed form of `S^k` for `1 <= k <= p^j`.
///
/// `S` sends `a_1 -> a_2^{-1}`, `a_c -> a_{c+1}` and `a_n -> a_1^{-p^j}`, so
/// `S^k a_c` is `a_{c+k}` (negated when `c = 1`) while `c + k <= n`, lands on
/// `a_1^{-p^j}` (or `a_1^{p^j}` for `c = 1`) when `c + k = n + 1`, and
/// vanishes afterwards because `p^j a_2 = 0`.
#[allow(clippy::needless_range_loop)]
pub fn shift_power_closed(params: GroupParams, k: u64) -> Result<EndoMatrix> {
    let n = params.dim();
    let pj = params.p_pow_j();
    if k == 0 || k > pj {
        return Err(Error::OutOfRange {
            what: "shift power k",
            value: k as i128,
            min: 1,
            max: pj as i128,
        });
    }
    let k = k as usize;
    let mut rows = vec![vec![0i64; n]; n];
    for c in 0..n {
        let sign = if c == 0 { -1 } else { 1 };
        let target = c + k;
        if target < n {
            rows[target][c] = sign;
        } else if target == n {
            rows[0][c] = -sign * pj as i64;
        }
    }
    EndoMatrix::from_rows(params, &rows)
}

/// Row `k` of Pascal's triangle reduced modulo `m`.
pub fn pascal_row(k: usize, m: u64) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        next.extend(row.windows(2).map(|w| (w[0] + w[1]) % m));
        next.push(1 % m);
        row = next;
    }
    row
}

/// Closed form of `B^k` for `1 <= k <= p^j - 2`, read off Pascal's triangle:
/// `B^k = sum_i C(k,i) S^i` and the powers of `S` up to `S^{n-1}` do not
/// interact.
#[allow(clippy::needless_range_loop)]
pub fn binomial_entry_closed(params: GroupParams, k: u64) -> Result<EndoMatrix> {
    let n = params.dim();
    let pj = params.p_pow_j();
    if k == 0 || k + 2 > pj {
        return Err(Error::OutOfRange {
            what: "binomial power k",
            value: k as i128,
            min: 1,
            max: pj as i128 - 2,
        });
    }
    let k = k as usize;
    // Only residues mod p matter: every row-0 binomial is multiplied by p^j.
    let t = pascal_row(k, params.p());
    let binom = |i: usize| -> i64 { t.get(i).copied().unwrap_or(0) as i64 };
    let mut rows = vec![vec![0i64; n]; n];
    rows[0][0] = 1;
    for c in 1..n {
        rows[0][c] = -binom(n - c) * pj as i64;
    }
    for r in 1..n {
        rows[r][0] = -binom(r);
        for c in 1..=r {
            rows[r][c] = binom(r - c);
        }
    }
    EndoMatrix::from_rows(params, &rows)
}

/// `Y(p^t) = sum_{m=0}^{p^{j-t}-1} B^{m p^t}` for `0 <= t <= j`; `Y(p^j)` is
/// the identity (a single summand).
pub fn build_y(params: GroupParams, t: u32) -> Result<EndoMatrix> {
    let step = build_b(params).pow(params.p().pow(t_in_range(params, t)?));
    Ok(sum_of_powers(&step, params.p().pow(params.j() - t)))
}

/// `Y(p^t)` from a precomputed table of `B^k`, `0 <= k < p^j`.
pub(crate) fn build_y_from_powers(
    params: GroupParams,
    b_powers: &[EndoMatrix],
    t: u32,
) -> EndoMatrix {
    let step = params.p().pow(t) as usize;
    let terms = params.p().pow(params.j() - t) as usize;
    (1..terms).fold(b_powers[0].clone(), |acc, m| {
        acc.add_unchecked(&b_powers[m * step])
    })
}

fn t_in_range(params: GroupParams, t: u32) -> Result<u32> {
    if t > params.j() {
        return Err(Error::OutOfRange {
            what: "t",
            value: t as i128,
            min: 0,
            max: params.j() as i128,
        });
    }
    Ok(t)
}

fn sum_of_powers(step: &EndoMatrix, terms: u64) -> EndoMatrix {
    let params = step.params();
    let mut acc = EndoMatrix::zero(params);
    let mut term = EndoMatrix::identity(params);
    for _ in 0..terms {
        acc = acc.add_unchecked(&term);
        term = term.mul_unchecked(step);
    }
    acc
}

/// True when `m` is `diag(corner, 0, ..., 0)`.
pub fn has_corner_block_form(m: &EndoMatrix, corner: u64) -> bool {
    let n = m.dim();
    (0..n).all(|r| {
        (0..n).all(|c| {
            let expected = if (r, c) == (0, 0) { corner } else { 0 };
            m.get(r, c) == expected
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub params: GroupParams,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Names of the checks performed by [`verify_construction`], in report order.
pub const CHECK_NAMES: [&str; 8] = [
    "b_order",
    "b_power_corner",
    "y1_block_form",
    "ypt_block_form",
    "shift_closed_form",
    "binomial_closed_form",
    "y1_fixed_by_b",
    "b_powers_well_defined",
];

/// Recomputes every identity for the concrete `(p, j)`.
pub fn verify_construction(params: GroupParams) -> VerificationReport {
    let pj = params.p_pow_j();
    let b = build_b(params);
    let s = build_shift(params);

    // B^0 .. B^{p^j} by repeated multiplication.
    let mut b_powers = Vec::with_capacity(pj as usize + 1);
    b_powers.push(EndoMatrix::identity(params));
    for k in 1..=pj as usize {
        let next = b_powers[k - 1].mul_unchecked(&b);
        b_powers.push(next);
    }

    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    // (a) order of B
    let early = (1..pj as usize).find(|&k| b_powers[k].is_identity());
    let full = b_powers[pj as usize].is_identity();
    push(
        "b_order",
        early.is_none() && full,
        match early {
            Some(k) => format!("B^{k} = I before k = {pj}"),
            None if full => format!("B has order exactly {pj}"),
            None => format!("B^{pj} != I"),
        },
    );

    // (b) corner of B^{p^j - 1}
    let corner = b_powers[pj as usize - 1].get(0, 0);
    push(
        "b_power_corner",
        corner == pj + 1,
        format!(
            "(1,1) entry of B^{} is {corner}, expected {}",
            pj - 1,
            pj + 1
        ),
    );

    // (c) Y(1)
    let y1 = build_y_from_powers(params, &b_powers, 0);
    push(
        "y1_block_form",
        has_corner_block_form(&y1, 2 * pj),
        format!(
            "Y(1) (1,1) entry {}, expected diag({}, 0)",
            y1.get(0, 0),
            2 * pj
        ),
    );

    // (d) p^t Y(p^t), 1 <= t < j
    let failing: Vec<u32> = (1..params.j())
        .filter(|&t| {
            let scaled = build_y_from_powers(params, &b_powers, t).scale(params.p().pow(t) as i128);
            !has_corner_block_form(&scaled, pj)
        })
        .collect();
    push(
        "ypt_block_form",
        failing.is_empty(),
        if params.j() == 1 {
            "no t with 1 <= t < j".to_string()
        } else if failing.is_empty() {
            format!("p^t Y(p^t) = diag({pj}, 0) for 1 <= t < {}", params.j())
        } else {
            format!("block form fails at t = {failing:?}")
        },
    );

    // (e) closed form of S^k
    let mut s_pow = EndoMatrix::identity(params);
    let mut bad_shift = Vec::new();
    for k in 1..=pj {
        s_pow = s_pow.mul_unchecked(&s);
        match shift_power_closed(params, k) {
            Ok(closed) if closed == s_pow => {}
            _ => bad_shift.push(k),
        }
    }
    push(
        "shift_closed_form",
        bad_shift.is_empty(),
        if bad_shift.is_empty() {
            format!("S^k matches the shifting rule for 1 <= k <= {pj}")
        } else {
            format!("mismatch at k = {bad_shift:?}")
        },
    );

    // (f) Pascal closed form of B^k
    let bad_binom: Vec<u64> = (1..pj - 1)
        .filter(|&k| binomial_entry_closed(params, k).map_or(true, |m| m != b_powers[k as usize]))
        .collect();
    push(
        "binomial_closed_form",
        bad_binom.is_empty(),
        if bad_binom.is_empty() {
            format!("B^k matches Pascal's triangle for 1 <= k <= {}", pj - 2)
        } else {
            format!("mismatch at k = {bad_binom:?}")
        },
    );

    // (g) B Y(1) = Y(1) = Y(1) B
    let left = b.mul_unchecked(&y1);
    let right = y1.mul_unchecked(&b);
    push(
        "y1_fixed_by_b",
        left == y1 && right == y1,
        format!(
            "B*Y(1) == Y(1): {}, Y(1)*B == Y(1): {}",
            left == y1,
            right == y1
        ),
    );

    // (h) well-definedness of every power
    let ill = b_powers.iter().position(|m| !m.is_well_defined());
    push(
        "b_powers_well_defined",
        ill.is_none(),
        match ill {
            Some(k) => format!("B^{k} violates the row-0 divisibility condition"),
            None => format!("B^k well defined for 0 <= k <= {pj}"),
        },
    );

    VerificationReport { params, checks }
}
