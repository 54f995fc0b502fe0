use super::{BigComplex, BigReal};

/// Dense n x n complex Hermitian matrix.
///
/// Only the diagonal (real by construction) and the strict lower triangle are
/// stored, so `entries[i][j] == conj(entries[j][i])` holds exactly — it is a
/// property of the representation, not of the data.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    n: usize,
    diag: Vec<BigReal>,
    lower: Vec<BigComplex>, // row-major strict lower triangle
}

impl HermitianMatrix {
    /// Build from a diagonal generator and a strict-lower-triangle generator
    /// (`lower` is called with i > j).
    pub fn from_fn(
        n: usize,
        mut diag: impl FnMut(usize) -> BigReal,
        mut lower: impl FnMut(usize, usize) -> BigComplex,
    ) -> Self {
        let diag = (0..n).map(&mut diag).collect();
        let mut tri = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in 0..i {
                tri.push(lower(i, j));
            }
        }
        Self {
            n,
            diag,
            lower: tri,
        }
    }

    /// Build a real symmetric matrix from an entry generator (called with
    /// i >= j).
    pub fn from_real_fn(n: usize, mut entry: impl FnMut(usize, usize) -> BigReal) -> Self {
        let mut diag = Vec::with_capacity(n);
        let mut tri = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in 0..i {
                tri.push(BigComplex::from_real(entry(i, j)));
            }
            diag.push(entry(i, i));
        }
        Self {
            n,
            diag,
            lower: tri,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn tri_index(i: usize, j: usize) -> usize {
        debug_assert!(i > j);
        i * (i - 1) / 2 + j
    }

    pub fn diagonal(&self, i: usize) -> &BigReal {
        &self.diag[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigComplex {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => BigComplex::from_real(self.diag[i].clone()),
            Greater => self.lower[Self::tri_index(i, j)].clone(),
            Less => self.lower[Self::tri_index(j, i)].conj(),
        }
    }

    /// Entrywise max norm, `max_ij |M_ij|`.
    pub fn max_norm(&self) -> BigReal {
        let mut m = BigReal::with_prec_zero(
            self.diag
                .iter()
                .map(BigReal::prec)
                .max()
                .unwrap_or(53)
                .max(self.lower.iter().map(BigComplex::prec).max().unwrap_or(53)),
        );
        for d in &self.diag {
            m = m.max(&d.abs());
        }
        for z in &self.lower {
            m = m.max(&z.abs());
        }
        m
    }

    /// All entries have zero imaginary part (always true for the diagonal;
    /// checks the triangle).
    pub fn is_real(&self) -> bool {
        self.lower.iter().all(|z| z.im.is_zero())
    }

    /// Dense copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<BigComplex>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;

    #[test]
    fn hermitian_by_construction() {
        let ctx = PrecisionContext::new(40).unwrap();
        let m = HermitianMatrix::from_fn(
            3,
            |i| ctx.from_i64(i as i64),
            |i, j| BigComplex::new(ctx.from_i64((i + j) as i64), ctx.one()),
        );
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), m.get(j, i).conj());
            }
            assert!(m.get(i, i).im.is_zero());
        }
        // largest entry is 3 + i at (2, 1)
        assert_eq!(m.max_norm(), ctx.from_i64(10).sqrt());
    }

    #[test]
    fn max_norm_scans_all_entries() {
        let ctx = PrecisionContext::new(40).unwrap();
        let m = HermitianMatrix::from_real_fn(2, |i, j| ctx.from_i64(if i != j { -7 } else { 1 }));
        assert_eq!(m.max_norm(), ctx.from_i64(7));
    }
}
