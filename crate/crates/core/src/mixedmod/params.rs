use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// Bounds on the size of the module a [`GroupParams`] may describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    /// Largest allowed rank `p^j - 1` of the module.
    pub max_dimension: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_dimension: 2048,
        }
    }
}

/// The pair `(p, j)` selecting one group `S(p, j)`, with derived sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupParams {
    p: u64,
    j: u32,
    #[serde(skip)]
    dim: usize,
    #[serde(skip)]
    p_pow_j: u64,
    #[serde(skip)]
    top_modulus: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GroupParams {
    pub fn new(p: u64, j: u32) -> Result<Self> {
        Self::with_guard(p, j, SizeGuard::default())
    }

    pub fn with_guard(p: u64, j: u32, guard: SizeGuard) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if p == 2 {
            return Err(Error::InvalidParams("p must be an odd prime".into()));
        }
        if j == 0 {
            return Err(Error::InvalidParams("j must be at least 1".into()));
        }
        let too_big = || Error::SizeGuard {
            what: "module dimension p^j - 1",
            value: format!("{p}^{j} - 1"),
            limit: guard.max_dimension.to_string(),
        };
        let p_pow_j = p.checked_pow(j).ok_or_else(too_big)?;
        let dim = usize::try_from(p_pow_j - 1).map_err(|_| too_big())?;
        if dim > guard.max_dimension {
            return Err(too_big());
        }
        // Residue products must fit in u64.
        let top_modulus = p_pow_j
            .checked_mul(p)
            .filter(|&m| m <= u32::MAX as u64)
            .ok_or_else(too_big)?;
        Ok(GroupParams {
            p,
            j,
            dim,
            p_pow_j,
            top_modulus,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// Rank of the module, `p^j - 1`; also the number of generators `a_i`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `p^j`, which is also the order of `b`.
    pub fn p_pow_j(&self) -> u64 {
        self.p_pow_j
    }

    pub fn b_order(&self) -> u64 {
        self.p_pow_j
    }

    /// `p^{j+1}`, the modulus of coordinate 0 and the order of `a_1`.
    pub fn top_modulus(&self) -> u64 {
        self.top_modulus
    }

    /// Modulus of coordinate (or matrix row) `i`.
    #[inline]
    pub fn modulus(&self, i: usize) -> u64 {
        if i == 0 {
            self.top_modulus
        } else {
            self.p
        }
    }

    /// Exponent `e` with `|S(p,j)| = p^e`, namely `p^j + 2j - 1`.
    pub fn group_order_exponent(&self) -> u64 {
        self.p_pow_j + 2 * self.j as u64 - 1
    }

    /// Exponent `e` with `|P_{p,j}| = p^e`, namely `p^j + j - 1`.
    pub fn module_order_exponent(&self) -> u64 {
        self.p_pow_j + self.j as u64 - 1
    }

    pub fn group_order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.group_order_exponent() as u32)
    }

    pub fn module_order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.module_order_exponent() as u32)
    }

    /// Group order when it fits in a `u64`.
    pub fn group_order_u64(&self) -> Option<u64> {
        self.p.checked_pow(self.group_order_exponent() as u32)
    }

    pub fn module_order_u64(&self) -> Option<u64> {
        self.p.checked_pow(self.module_order_exponent() as u32)
    }

    pub(crate) fn check_same(&self, other: &GroupParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamsMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl std::fmt::Display for GroupParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S({},{})", self.p, self.j)
    }
}
