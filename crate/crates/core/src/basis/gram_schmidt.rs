//! Gram-Schmidt orthonormalization of the augmented family
//! (f0, p_m^m, p_{m+1}^m, ...).
//!
//! The Legendre block is already orthonormal, so the Gram matrix of the raw
//! family is the identity plus a single row/column of overlaps
//! g_a = <f0, p_{m+a-1}^m>. Orthonormalization happens in raw-family
//! coordinates: each new vector keeps an exact record of how it combines f0
//! and the polynomials, which is what both the truncated Hamiltonian and the
//! boundary-data bookkeeping need.

use super::AugmentKind;
use crate::error::{Error, Result};
use crate::numerics::{BigReal, PrecisionContext};

/// Lower-triangular change-of-basis matrix: `row(k)` holds the coordinates of
/// the k-th orthonormal function over the raw family
/// (f0, p_m^m, ..., p_{m+k-1}^m).
#[derive(Debug, Clone)]
pub struct CoefficientMatrix {
    rows: Vec<Vec<BigReal>>,
    overlaps: Vec<BigReal>,
}

impl CoefficientMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of the k-th orthonormal function (length k + 1).
    pub fn row(&self, k: usize) -> &[BigReal] {
        &self.rows[k]
    }

    /// Raw-family overlaps g_a = <f0, p_{m+a-1}^m> for a = 1..n-1.
    pub fn overlap(&self, a: usize) -> &BigReal {
        &self.overlaps[a]
    }

    /// Inner product of two raw-coordinate vectors under the Gram matrix
    /// G = I + f0 cross terms.
    fn gram_inner(&self, u: &[BigReal], v: &[BigReal], ctx: &PrecisionContext) -> BigReal {
        let mut acc = ctx.zero();
        for (a, ua) in u.iter().enumerate() {
            if a < v.len() {
                acc += &(ua * &v[a]);
            }
        }
        let mut u_dot_g = ctx.zero();
        for (a, ua) in u.iter().enumerate().skip(1) {
            u_dot_g += &(ua * &self.overlaps[a]);
        }
        let mut v_dot_g = ctx.zero();
        for (a, va) in v.iter().enumerate().skip(1) {
            v_dot_g += &(va * &self.overlaps[a]);
        }
        acc += &(&u[0] * &v_dot_g);
        acc += &(&v[0] * &u_dot_g);
        acc
    }
}

/// Orthonormalize (f0, p_m^m, ..., p_{m+n-2}^m) starting from f0.
///
/// Row 0 is (1, 0, ..., 0) — the first orthonormal function is f0 itself —
/// and every diagonal coefficient is nonzero because f0, having nonzero
/// boundary values, is linearly independent from the polynomials. A residual
/// norm below 10^{-digits/2} would contradict that independence and reports
/// [`Error::DegenerateBasis`].
pub fn gram_schmidt_augmented(
    f0: AugmentKind,
    m: u32,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<CoefficientMatrix> {
    if n == 0 {
        return Err(Error::InvalidSpec("basis size must be at least 1".into()));
    }
    let mut overlaps = Vec::with_capacity(n);
    overlaps.push(ctx.zero()); // unused slot: a = 0 is f0 itself
    for a in 1..n {
        overlaps.push(f0.overlap(m + a as u32 - 1, m, ctx)?);
    }

    let mut matrix = CoefficientMatrix {
        rows: Vec::with_capacity(n),
        overlaps,
    };
    let mut row0 = vec![ctx.zero(); 1];
    row0[0] = ctx.one();
    matrix.rows.push(row0);

    let floor = ctx.pow10(-(i64::from(ctx.digits()) / 2));
    for k in 1..n {
        // Start from the raw polynomial e_k and subtract the projections on
        // the previous orthonormal vectors.
        let mut v = vec![ctx.zero(); k + 1];
        v[k] = ctx.one();
        for i in 0..k {
            let proj = matrix.gram_inner(&matrix.rows[i], &v, ctx);
            for (a, ra) in matrix.rows[i].iter().enumerate() {
                let delta = &proj * ra;
                v[a] = &v[a] - delta;
            }
        }
        let norm_sqr = matrix.gram_inner(&v, &v, ctx);
        let norm = norm_sqr.sqrt();
        if norm <= floor {
            return Err(Error::DegenerateBasis {
                index: k,
                residual: norm.to_scientific(5),
            });
        }
        let inv = norm.recip();
        for entry in &mut v {
            *entry = &*entry * &inv;
        }
        matrix.rows.push(v);
    }
    Ok(matrix)
}
