//! Arithmetic in the abelian group `Z_{p^{j+1}} x Z_p^{p^j-2}` and its
//! endomorphism ring.
//!
//! Coordinate 0 lives modulo `p^{j+1}`, every other coordinate modulo `p`.
//! Endomorphisms are square matrices acting on column vectors; row 0 is
//! reduced modulo `p^{j+1}` and the remaining rows modulo `p`. Such a matrix
//! is only well defined when every row-0 entry outside column 0 is a
//! multiple of `p^j`, because it maps an element of order `p` into the
//! cyclic factor of order `p^{j+1}`.

mod matrix;
mod params;
mod vector;

pub use matrix::EndoMatrix;
pub use params::{is_prime, GroupParams, SizeGuard};
pub use vector::MixedVector;

/// Canonical residue of `x` modulo `m`.
#[inline]
pub(crate) fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}
