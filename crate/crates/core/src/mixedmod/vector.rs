use super::{reduce, GroupParams};
use crate::error::{Error, Result};

/// An element of `P_{p,j}` written additively as an exponent vector over
/// the generators `a_1, ..., a_{p^j-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedVector {
    params: GroupParams,
    coords: Vec<u64>,
}

impl MixedVector {
    pub fn zero(params: GroupParams) -> Self {
        MixedVector {
            params,
            coords: vec![0; params.dim()],
        }
    }

    /// The generator `a_{index+1}` (so `basis(params, 0)` is `a_1`).
    pub fn basis(params: GroupParams, index: usize) -> Self {
        let mut v = Self::zero(params);
        v.coords[index] = 1;
        v
    }

    /// Builds a vector from arbitrary integers, reducing each coordinate.
    pub fn from_coords(params: GroupParams, coords: &[i64]) -> Result<Self> {
        if coords.len() != params.dim() {
            return Err(Error::Shape {
                rows: coords.len(),
                cols: 1,
                dim: params.dim(),
            });
        }
        let coords = coords
            .iter()
            .enumerate()
            .map(|(i, &c)| reduce(c as i128, params.modulus(i)))
            .collect();
        Ok(MixedVector { params, coords })
    }

    /// Wraps coordinates that are already canonical residues.
    pub(crate) fn from_reduced(params: GroupParams, coords: Vec<u64>) -> Self {
        debug_assert_eq!(coords.len(), params.dim());
        debug_assert!(coords
            .iter()
            .enumerate()
            .all(|(i, &c)| c < params.modulus(i)));
        MixedVector { params, coords }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The group operation of `P_{p,j}`.
    pub fn combine(&self, other: &MixedVector) -> Result<MixedVector> {
        self.params.check_same(&other.params)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &MixedVector) {
        let p = self.params;
        for (i, (a, &b)) in self.coords.iter_mut().zip(&other.coords).enumerate() {
            let m = p.modulus(i);
            *a += b;
            if *a >= m {
                *a -= m;
            }
        }
    }

    pub fn negate(&self) -> MixedVector {
        let p = self.params;
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &c)| if c == 0 { 0 } else { p.modulus(i) - c })
            .collect();
        MixedVector { params: p, coords }
    }

    /// `c * v`, i.e. the element `q^c` in multiplicative notation.
    pub fn scale(&self, c: i128) -> MixedVector {
        let p = self.params;
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let m = p.modulus(i);
                ((reduce(c, m) as u128 * x as u128) % m as u128) as u64
            })
            .collect();
        MixedVector { params: p, coords }
    }
}
