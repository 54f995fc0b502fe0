//! Cyclic Jacobi eigendecomposition for dense Hermitian matrices.
//!
//! Jacobi rotations use only field operations and square roots, so the solver
//! behaves identically at every working precision — no balancing or shift
//! heuristics. Quadratic convergence makes the sweep count grow only
//! logarithmically with the requested number of digits, which keeps 500-digit
//! runs on 40 x 40 matrices practical.

use super::{BigComplex, BigReal, HermitianMatrix, PrecisionContext};
use crate::error::{Error, Result};

/// Result of a Hermitian eigendecomposition: `M = V diag(lambda) V†` with
/// eigenvalues ascending and `vectors[k]` the k-th column of `V`.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub eigenvalues: Vec<BigReal>,
    pub vectors: Vec<Vec<BigComplex>>,
}

impl Eigensystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_min(&self) -> &BigReal {
        &self.eigenvalues[0]
    }

    /// Apply `V f(Lambda) V†` to a coefficient vector.
    pub fn apply_spectral_fn(
        &self,
        f: impl Fn(&BigReal) -> BigComplex,
        c: &[BigComplex],
        ctx: &PrecisionContext,
    ) -> Vec<BigComplex> {
        let n = self.dim();
        debug_assert_eq!(c.len(), n);
        let mut out = vec![ctx.complex_zero(); n];
        for (k, v) in self.vectors.iter().enumerate() {
            // <v_k, c>
            let mut inner = ctx.complex_zero();
            for i in 0..n {
                inner += &(&v[i].conj() * &c[i]);
            }
            let w = &f(&self.eigenvalues[k]) * &inner;
            for i in 0..n {
                out[i] += &(&w * &v[i]);
            }
        }
        out
    }

    /// Dense `V f(Lambda) V†`, row-major.
    pub fn spectral_matrix(
        &self,
        f: impl Fn(&BigReal) -> BigComplex,
        ctx: &PrecisionContext,
    ) -> Vec<Vec<BigComplex>> {
        let n = self.dim();
        let weights: Vec<BigComplex> = self.eigenvalues.iter().map(f).collect();
        let mut out = vec![vec![ctx.complex_zero(); n]; n];
        for (k, v) in self.vectors.iter().enumerate() {
            for i in 0..n {
                let wi = &v[i] * &weights[k];
                for (j, vj) in v.iter().enumerate() {
                    out[i][j] += &(&wi * &vj.conj());
                }
            }
        }
        out
    }

    /// `max_ij |(V V† - I)_ij|`.
    pub fn unitarity_defect(&self, ctx: &PrecisionContext) -> BigReal {
        let n = self.dim();
        let mut worst = ctx.zero();
        for i in 0..n {
            for j in 0..=i {
                let mut s = ctx.complex_zero();
                for v in &self.vectors {
                    s += &(&v[i] * &v[j].conj());
                }
                if i == j {
                    s.re -= &ctx.one();
                }
                worst = worst.max(&s.abs());
            }
        }
        worst
    }

    /// `max_ij |M_ij - (V Lambda V†)_ij|`.
    pub fn reconstruction_error(&self, m: &HermitianMatrix, ctx: &PrecisionContext) -> BigReal {
        let rebuilt = self.spectral_matrix(|l| ctx.complex_from_real(l.clone()), ctx);
        let n = self.dim();
        let mut worst = ctx.zero();
        for i in 0..n {
            for j in 0..n {
                let d = &rebuilt[i][j] - &m.get(i, j);
                worst = worst.max(&d.abs());
            }
        }
        worst
    }
}

/// Diagonalize a Hermitian matrix by cyclic Jacobi rotations.
///
/// On success, `max_ij |M - V Lambda V†|_ij <= tol * max_ij |M_ij|` and
/// `V V† = I` to the same tolerance, with eigenvalues sorted ascending.
/// Returns [`Error::NonConvergence`] when the off-diagonal mass does not fall
/// below the target within the sweep budget, which signals a tolerance too
/// tight for the working precision.
pub fn eigendecompose_hermitian(
    m: &HermitianMatrix,
    tol: &BigReal,
    ctx: &PrecisionContext,
) -> Result<Eigensystem> {
    let floor = ctx.eps(10);
    if !(tol > &ctx.zero()) || tol < &floor {
        return Err(Error::NonConvergence(format!(
            "tolerance {} below the floor 10^-({}-10) supported by {} digits",
            tol.to_scientific(3),
            ctx.digits(),
            ctx.digits()
        )));
    }
    let n = m.dim();
    if n == 0 {
        return Ok(Eigensystem {
            eigenvalues: vec![],
            vectors: vec![],
        });
    }

    let mut a = m.to_dense();
    let mut v: Vec<Vec<BigComplex>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        ctx.complex_from_real(ctx.one())
                    } else {
                        ctx.complex_zero()
                    }
                })
                .collect()
        })
        .collect();

    let scale = m.max_norm();
    if !scale.is_zero() {
        let stop = tol * &scale * ctx.from_rational(&rug::Rational::from((1, 16)));
        let rot_floor = &stop / ctx.from_i64(16 * n as i64);
        let max_sweeps = 40 + ctx.digits() as usize / 4;
        let mut converged = false;
        for _ in 0..max_sweeps {
            if off_diagonal_max(&a, ctx) <= stop {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q, &rot_floor, ctx);
                }
            }
        }
        if !converged && off_diagonal_max(&a, ctx) > stop {
            return Err(Error::NonConvergence(format!(
                "off-diagonal max {} above target {} after {} sweeps",
                off_diagonal_max(&a, ctx).to_scientific(3),
                stop.to_scientific(3),
                max_sweeps
            )));
        }
    }

    // Sort ascending; the sort is stable, so exactly degenerate eigenvalues
    // keep the deterministic order the sweeps produced.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i][i]
            .re
            .partial_cmp(&a[j][j].re)
            .expect("eigenvalues are finite")
    });

    let eigenvalues: Vec<BigReal> = order.iter().map(|&i| a[i][i].re.clone()).collect();
    let mut vectors: Vec<Vec<BigComplex>> = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i][k].clone()).collect())
        .collect();
    for col in &mut vectors {
        canonicalize_phase(col, ctx);
    }

    Ok(Eigensystem {
        eigenvalues,
        vectors,
    })
}

fn off_diagonal_max(a: &[Vec<BigComplex>], ctx: &PrecisionContext) -> BigReal {
    let n = a.len();
    let mut worst = ctx.zero();
    for i in 0..n {
        for j in 0..i {
            worst = worst.max(&a[i][j].abs());
        }
    }
    worst
}

/// One Jacobi rotation zeroing the (p, q) entry: A <- J† A J, V <- V J with
/// J_pp = c, J_pq = -s w, J_qp = s conj(w), J_qq = c, where w = A_pq / |A_pq|
/// and tan(theta) solves t^2 - 2 tau t - 1 = 0 for tau = (A_qq - A_pp)/2|A_pq|
/// (the smaller root, keeping rotation angles below pi/4).
fn rotate(
    a: &mut [Vec<BigComplex>],
    v: &mut [Vec<BigComplex>],
    p: usize,
    q: usize,
    rot_floor: &BigReal,
    ctx: &PrecisionContext,
) {
    let apq = a[p][q].clone();
    let r = apq.abs();
    if &r <= rot_floor {
        return;
    }
    let w = apq.scale(&r.recip());
    let app = a[p][p].re.clone();
    let aqq = a[q][q].re.clone();

    let tau = (&aqq - &app) / (ctx.from_i64(2) * &r);
    let hyp = (ctx.one() + tau.square()).sqrt();
    let t = if tau.is_zero() {
        ctx.one()
    } else if tau.is_sign_negative() {
        (tau.abs() + hyp).recip()
    } else {
        -(tau.abs() + hyp).recip()
    };
    let c = (ctx.one() + t.square()).sqrt().recip();
    let s = &t * &c;

    let n = a.len();
    // sw = s * w, swc = s * conj(w)
    let sw = w.scale(&s);
    let swc = w.conj().scale(&s);

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k][p].clone();
        let akq = a[k][q].clone();
        let new_kp = &akp.scale(&c) + &(&swc * &akq);
        let new_kq = &akq.scale(&c) - &(&sw * &akp);
        a[p][k] = new_kp.conj();
        a[q][k] = new_kq.conj();
        a[k][p] = new_kp;
        a[k][q] = new_kq;
    }

    let two_csr = ctx.from_i64(2) * &c * &s * &r;
    let c2 = c.square();
    let s2 = s.square();
    a[p][p] = ctx.complex_from_real(&c2 * &app + &s2 * &aqq + &two_csr);
    a[q][q] = ctx.complex_from_real(&s2 * &app + &c2 * &aqq - &two_csr);
    a[p][q] = ctx.complex_zero();
    a[q][p] = ctx.complex_zero();

    for row in v.iter_mut() {
        let vp = row[p].clone();
        let vq = row[q].clone();
        row[p] = &vp.scale(&c) + &(&swc * &vq);
        row[q] = &vq.scale(&c) - &(&sw * &vp);
    }
}

/// Rotate the global phase of an eigenvector so its first component of
/// magnitude above 1/(2 sqrt(n)) becomes positive real. A unit vector always
/// has one, so the result is a deterministic representative.
fn canonicalize_phase(col: &mut [BigComplex], ctx: &PrecisionContext) {
    let n = col.len() as i64;
    let threshold = ctx.from_i64(4 * n).sqrt().recip();
    let pivot = col.iter().find(|z| z.abs() > threshold).cloned();
    if let Some(z) = pivot {
        let phase = z.conj().scale(&z.abs().recip());
        for entry in col.iter_mut() {
            *entry = &*entry * &phase;
        }
    }
}
