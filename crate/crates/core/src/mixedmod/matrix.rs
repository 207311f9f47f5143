use super::{reduce, GroupParams, MixedVector};
use crate::error::{Error, Result};

/// An endomorphism of `P_{p,j}` stored as a dense matrix acting on the left.
///
/// Column `c` holds the exponent vector of the image of `a_{c+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndoMatrix {
    params: GroupParams,
    entries: Vec<u64>,
}

impl EndoMatrix {
    pub fn identity(params: GroupParams) -> Self {
        let n = params.dim();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        EndoMatrix { params, entries }
    }

    pub fn zero(params: GroupParams) -> Self {
        let n = params.dim();
        EndoMatrix {
            params,
            entries: vec![0; n * n],
        }
    }

    /// Builds a matrix from integer rows, reducing row 0 modulo `p^{j+1}` and
    /// the other rows modulo `p`, then checks well-definedness.
    pub fn from_rows(params: GroupParams, rows: &[Vec<i64>]) -> Result<Self> {
        let n = params.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                dim: n,
            });
        }
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                let m = params.modulus(r);
                row.iter().map(move |&x| reduce(x as i128, m))
            })
            .collect();
        Self::from_entries(params, entries)
    }

    pub(crate) fn from_entries(params: GroupParams, entries: Vec<u64>) -> Result<Self> {
        let m = EndoMatrix { params, entries };
        m.check_well_defined()?;
        Ok(m)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    /// Entry at 0-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim() + col]
    }

    pub fn row(&self, row: usize) -> &[u64] {
        let n = self.dim();
        &self.entries[row * n..(row + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim()).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.params)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&x| x != 0).count()
    }

    /// Row-0 entries outside column 0 must be multiples of `p^j`.
    pub fn check_well_defined(&self) -> Result<()> {
        let pj = self.params.p_pow_j();
        match self
            .row(0)
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &x)| x % pj != 0)
        {
            Some((column, &entry)) => Err(Error::NotWellDefined {
                column,
                entry,
                divisor: pj,
            }),
            None => Ok(()),
        }
    }

    pub fn is_well_defined(&self) -> bool {
        self.check_well_defined().is_ok()
    }

    /// Applies the endomorphism to `v`.
    pub fn apply(&self, v: &MixedVector) -> Result<MixedVector> {
        self.params.check_same(&v.params())?;
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &MixedVector) -> MixedVector {
        let n = self.dim();
        let mut out = vec![0u64; n];
        self.apply_into(v.coords(), &mut out);
        MixedVector::from_reduced(self.params, out)
    }

    /// `out = self * x`. Row 0 may use the mod-`p` residues of `x[1..]`
    /// directly since its entries there are multiples of `p^j`.
    #[inline]
    pub(crate) fn apply_into(&self, x: &[u64], out: &mut [u64]) {
        let n = self.dim();
        for (r, o) in out.iter_mut().enumerate() {
            let m = self.params.modulus(r);
            let row = &self.entries[r * n..(r + 1) * n];
            // Entries and coordinates are below 2^32, so each product fits
            // in a u64 and n of them fit in a u128.
            let acc: u128 = row.iter().zip(x).map(|(&a, &b)| (a * b) as u128).sum();
            *o = (acc % m as u128) as u64;
        }
    }

    /// Composition `self * other` (apply `other` first).
    pub fn mul(&self, other: &EndoMatrix) -> Result<EndoMatrix> {
        self.params.check_same(&other.params)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &EndoMatrix) -> EndoMatrix {
        let n = self.dim();
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            let m = self.params.modulus(r);
            let row = self.row(r);
            let out = &mut entries[r * n..(r + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (o, &b) in out.iter_mut().zip(other.row(k)) {
                    *o = (*o + a * (b % m)) % m;
                }
            }
        }
        let result = EndoMatrix {
            params: self.params,
            entries,
        };
        debug_assert!(result.is_well_defined());
        result
    }

    pub fn add(&self, other: &EndoMatrix) -> Result<EndoMatrix> {
        self.params.check_same(&other.params)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &EndoMatrix) -> EndoMatrix {
        let n = self.dim();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .enumerate()
            .map(|(i, (&a, &b))| (a + b) % self.params.modulus(i / n))
            .collect();
        EndoMatrix {
            params: self.params,
            entries,
        }
    }

    /// Entrywise multiple `c * self`.
    pub fn scale(&self, c: i128) -> EndoMatrix {
        let n = self.dim();
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let m = self.params.modulus(i / n);
                ((reduce(c, m) as u128 * a as u128) % m as u128) as u64
            })
            .collect();
        EndoMatrix {
            params: self.params,
            entries,
        }
    }

    /// `self^e` by square-and-multiply; `self^0` is the identity.
    pub fn pow(&self, mut e: u64) -> EndoMatrix {
        let mut result = Self::identity(self.params);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }
}

impl std::fmt::Display for EndoMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.dim() {
            let row: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p31() -> GroupParams {
        GroupParams::new(3, 1).unwrap()
    }

    fn m31(rows: [[i64; 2]; 2]) -> EndoMatrix {
        EndoMatrix::from_rows(p31(), &rows.map(|r| r.to_vec())).unwrap()
    }

    // B for (3,1) written directly from a_1 -> a_1 a_2^{-1}, a_2 -> a_2 a_1^{-3}.
    fn b31() -> EndoMatrix {
        m31([[1, -3], [-1, 1]])
    }

    #[test]
    fn apply_examples() {
        let p = p31();
        let b = b31();
        assert_eq!(
            b.apply(&MixedVector::basis(p, 0)).unwrap().coords(),
            &[1, 2]
        );
        assert_eq!(
            b.apply(&MixedVector::basis(p, 1)).unwrap().coords(),
            &[6, 1]
        );
        let v = MixedVector::from_coords(p, &[5, 2]).unwrap();
        assert_eq!(EndoMatrix::identity(p).apply(&v).unwrap(), v);
    }

    #[test]
    fn mul_examples() {
        let b = b31();
        // Entrywise: [1*1 + 6*2, 1*6 + 6*1] mod 9 = [13, 12] = [4, 3];
        // [2*1 + 1*2, 2*6 + 1*1] mod 3 = [4, 13] = [1, 1].
        assert_eq!(b.mul(&b).unwrap(), m31([[4, 3], [1, 1]]));
        assert_eq!(b.mul(&EndoMatrix::identity(p31())).unwrap(), b);
        assert!(b.mul(&b.mul(&b).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn add_examples() {
        let b = b31();
        assert_eq!(b.add(&b).unwrap(), m31([[2, 3], [1, 2]]));
        assert_eq!(b.add(&EndoMatrix::zero(p31())).unwrap(), b);
    }

    #[test]
    fn pow_examples() {
        let b = b31();
        assert!(b.pow(3).is_identity());
        assert!(b.pow(0).is_identity());
        assert_eq!(b.pow(2), b.mul(&b).unwrap());
        assert_eq!(b.pow(2).get(0, 0), 4);
    }

    #[test]
    fn rejects_ill_defined_rows() {
        let err = EndoMatrix::from_rows(p31(), &[vec![1, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::NotWellDefined {
                column: 1,
                entry: 1,
                divisor: 3
            }
        );
        assert!(matches!(
            EndoMatrix::from_rows(p31(), &[vec![1, 0]]),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn mismatched_params_are_errors() {
        let other = EndoMatrix::identity(GroupParams::new(5, 1).unwrap());
        assert!(b31().mul(&other).is_err());
        assert!(b31().add(&other).is_err());
        assert!(other.apply(&MixedVector::zero(p31())).is_err());
    }
}
