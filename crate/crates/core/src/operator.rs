//! Truncated Hamiltonians Ĥ_n = P_n H P_n for the box Laplacian, in closed
//! form, plus the Galerkin-projector residual diagnostic.
//!
//! In an eigenbasis the truncation is diagonal. Over associated Legendre
//! polynomials the matrix elements <P_l^m, -(P_k^m)''> reduce to finite
//! factorial sums: integrating by parts m times leaves only endpoint terms
//! with derivative orders between m/2 + 1 and m, everything below vanishing
//! because of the (1 - x²)^{m/2} factor and everything above because plain
//! Legendre derivatives of order beyond m vanish at ±1 under the remaining
//! cap power. Because the basis functions and their first derivatives vanish
//! at the boundary, those elements are the same for every self-adjoint
//! realization of the Laplacian — the construction takes no boundary
//! condition argument.

use rug::{Integer, Rational};

use crate::basis::{eigenbasis_mode, gram_schmidt_augmented, AugmentKind, BasisSpec, BoundaryCondition, SpectralData};
use crate::error::{Error, Result};
use crate::legendre::{
    assoc_legendre_poly, deriv_legendre_at_one_exact, norm_assoc_legendre, AssocLegendreIndex,
    Poly,
};
use crate::numerics::{
    eigendecompose_hermitian, integrate_adaptive, BigComplex, BigReal, Eigensystem,
    HermitianMatrix, PrecisionContext,
};

/// How a truncated Hamiltonian's entries were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    QuadratureOracle,
}

/// A truncation Ĥ_n of the Laplacian to the first n functions of a basis
/// family, expressed over the normalized basis.
#[derive(Debug, Clone)]
pub struct TruncatedHamiltonian {
    pub basis: BasisSpec,
    pub n: usize,
    pub matrix: HermitianMatrix,
    pub provenance: Provenance,
}

impl TruncatedHamiltonian {
    /// Default eigendecomposition tolerance used by the propagation and
    /// residual paths.
    pub fn default_tol(ctx: &PrecisionContext) -> BigReal {
        ctx.eps(12)
    }

    pub fn eigendecompose(&self, ctx: &PrecisionContext) -> Result<Eigensystem> {
        eigendecompose_hermitian(&self.matrix, &Self::default_tol(ctx), ctx)
    }
}

/// Non-normalized matrix element <P_l^m, -(P_k^m)''>, exactly.
///
/// Zero whenever l + k is odd (the integrand is odd); otherwise twice the
/// endpoint sum h_{lk} (with the larger degree first — the element is
/// symmetric).
pub fn raw_matrix_element_exact(l: u32, k: u32, m: u32) -> Result<Rational> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::InvalidSpec(format!(
            "matrix elements need even m >= 4, got m = {m}"
        )));
    }
    AssocLegendreIndex::new(l, m)?;
    AssocLegendreIndex::new(k, m)?;
    if (l + k) % 2 == 1 {
        return Ok(Rational::new());
    }
    let (hi, lo) = if l >= k { (l, k) } else { (k, l) };
    let h = if m == 4 {
        endpoint_sum_m4(hi, lo)
    } else {
        endpoint_sum_general(hi, lo, m)
    };
    Ok(h * Rational::from(2))
}

/// The m = 4 closed form:
/// h_{lk} = (2 - l(l+1)/12) (k+4)!/(k-4)! + (18/5!) (k+5)!/(k-5)!.
fn endpoint_sum_m4(l: u32, k: u32) -> Rational {
    let first = (Rational::from(2)
        - Rational::from((Integer::from(l) * Integer::from(l + 1), Integer::from(12))))
        * rising_ratio(k, 4);
    let second = Rational::from((18, 120)) * rising_ratio(k, 5);
    first + second
}

/// (k+a)!/(k-a)! with the convention that it vanishes when k < a (the
/// underlying Legendre derivative of order k + a exceeds the degree).
fn rising_ratio(k: u32, a: u32) -> Rational {
    if k < a {
        return Rational::new();
    }
    Rational::from((
        crate::legendre::factorial(k + a),
        crate::legendre::factorial(k - a),
    ))
}

/// The general even-m endpoint sum
/// h_{lk} = sum_{t=m/2+1}^{m} (-1)^t [d^{m-t}P_l](1) [d^{t-1}G_k](1) with
/// G_k = (1-x²)^{m/2} (P_k^m)'', evaluated with exact polynomial arithmetic.
fn endpoint_sum_general(l: u32, k: u32, m: u32) -> Rational {
    let idx_k = AssocLegendreIndex::new(k, m).expect("validated by caller");
    let cap = cap_poly(m / 2);
    let g = cap.mul(&assoc_legendre_poly(idx_k).derivative_n(2));
    let mut sum = Rational::new();
    for t in m / 2 + 1..=m {
        let left = deriv_legendre_at_one_exact(l, m - t);
        if left == 0 {
            continue;
        }
        let right = g.derivative_n(t - 1).eval_at_one();
        let mut term = left * right;
        if t % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    sum
}

/// (1 - x²)^{m/2} as an exact polynomial.
fn cap_poly(half_m: u32) -> Poly {
    let mut coeffs = vec![Rational::new(); 2 * half_m as usize + 1];
    for j in 0..=half_m {
        let mut c = Integer::from(Integer::binomial_u(half_m, j));
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[2 * j as usize] = Rational::from(c);
    }
    Poly::from_coeffs(coeffs)
}

/// Non-normalized <P_l^m, -(P_k^m)''> at working precision.
pub fn raw_matrix_element(l: u32, k: u32, m: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(ctx.from_rational(&raw_matrix_element_exact(l, k, m)?))
}

/// Normalized matrix element <p_l^m, -(p_k^m)''>.
pub fn normalized_matrix_element(
    l: u32,
    k: u32,
    m: u32,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let raw = raw_matrix_element(l, k, m, ctx)?;
    let nl = norm_assoc_legendre(AssocLegendreIndex::new(l, m)?, ctx);
    let nk = norm_assoc_legendre(AssocLegendreIndex::new(k, m)?, ctx);
    Ok(raw / (nl * nk))
}

/// Build Ĥ_n over the first n functions of the basis family.
///
/// Eigenbases give diag(E_j) in the energy ordering; Legendre families use
/// the closed-form elements divided by norms; augmented families transform
/// the raw-family operator by the Gram-Schmidt coefficient matrix, where
/// <f0, -f0''> is the f0 eigenvalue and <f0, -p''> couples through the
/// overlap (boundary terms vanish because p and p' do).
pub fn truncated_hamiltonian(
    spec: &BasisSpec,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<TruncatedHamiltonian> {
    if n == 0 {
        return Err(Error::InvalidSpec("truncation size must be positive".into()));
    }
    let matrix = match spec {
        BasisSpec::EigenBasis(bc) => {
            let energies: Vec<BigReal> = (0..n)
                .map(|pos| Ok(eigenbasis_mode(bc, pos)?.energy(ctx)))
                .collect::<Result<_>>()?;
            HermitianMatrix::from_fn(n, |i| energies[i].clone(), |_, _| ctx.complex_zero())
        }
        BasisSpec::Legendre { m } => legendre_block(*m, 0, n, ctx)?,
        BasisSpec::Augmented { f0, m } => {
            let coeffs = gram_schmidt_augmented(*f0, *m, n, ctx)?;
            let raw = augmented_raw_operator(*f0, *m, n, ctx)?;
            // Ĥ = C H_raw C†, all real.
            HermitianMatrix::from_real_fn(n, |i, j| {
                let mut acc = ctx.zero();
                for (a, cia) in coeffs.row(i).iter().enumerate() {
                    let mut inner = ctx.zero();
                    for (b, cjb) in coeffs.row(j).iter().enumerate() {
                        inner += &(cjb * &raw[a][b]);
                    }
                    acc += &(cia * &inner);
                }
                acc
            })
        }
    };
    Ok(TruncatedHamiltonian {
        basis: spec.clone(),
        n,
        matrix,
        provenance: Provenance::ClosedForm,
    })
}

/// Normalized Legendre block with rows/columns offset by `start` within the
/// family (l = m + start + i).
fn legendre_block(
    m: u32,
    start: usize,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<HermitianMatrix> {
    let norms: Vec<BigReal> = (0..n)
        .map(|i| {
            Ok(norm_assoc_legendre(
                AssocLegendreIndex::new(m + (start + i) as u32, m)?,
                ctx,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut entries = vec![vec![ctx.zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let raw = raw_matrix_element_exact(m + (start + i) as u32, m + (start + j) as u32, m)?;
            entries[i][j] = ctx.from_rational(&raw) / (&norms[i] * &norms[j]);
        }
    }
    Ok(HermitianMatrix::from_real_fn(n, |i, j| {
        entries[i][j].clone()
    }))
}

/// Raw-family operator matrix for the augmented basis: index 0 is f0 and
/// index a >= 1 the normalized polynomial p_{m+a-1}^m.
fn augmented_raw_operator(
    f0: AugmentKind,
    m: u32,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<Vec<BigReal>>> {
    let pi = ctx.pi();
    let lambda0 = ctx.from_rational(&f0.eigenvalue_over_pi_sqr()) * &pi * &pi;
    let mut raw = vec![vec![ctx.zero(); n]; n];
    raw[0][0] = lambda0.clone();
    for a in 1..n {
        let coupling = &lambda0 * &f0.overlap(m + a as u32 - 1, m, ctx)?;
        raw[0][a] = coupling.clone();
        raw[a][0] = coupling;
    }
    if n > 1 {
        let block = legendre_block(m, 0, n - 1, ctx)?;
        for a in 1..n {
            for b in 1..n {
                raw[a][b] = block.get(a - 1, b - 1).re;
            }
        }
    }
    Ok(raw)
}

/// Quadrature-built Ĥ_n for a Legendre basis — the oracle counterpart of the
/// closed-form construction.
pub fn truncated_hamiltonian_via_quadrature(
    m: u32,
    n: usize,
    digits: u32,
) -> Result<TruncatedHamiltonian> {
    let ctx = PrecisionContext::new(digits + 20)?;
    let polys: Vec<_> = (0..n)
        .map(|i| {
            let idx = AssocLegendreIndex::new(m + i as u32, m)?;
            let norm = norm_assoc_legendre(idx, &ctx);
            let p = assoc_legendre_poly(idx);
            Ok((
                p.to_real(&ctx).scale(&norm.recip()),
                p.derivative_n(2).to_real(&ctx).scale(&norm.recip()),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut entries = vec![vec![ctx.zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = integrate_adaptive(
                &|x| -(polys[i].0.eval(x, &ctx) * polys[j].1.eval(x, &ctx)),
                digits,
            )?;
            entries[i][j] = v;
        }
    }
    Ok(TruncatedHamiltonian {
        basis: BasisSpec::legendre(m)?,
        n,
        matrix: HermitianMatrix::from_real_fn(n, |i, j| entries[i][j].clone()),
        provenance: Provenance::QuadratureOracle,
    })
}

/// Distance ||Q_n psi_j - psi_j|| of an exact eigenvector from its Galerkin
/// projection, computed in coefficient space as
/// sqrt( ||E_j Ĥ_n^{-1} c - c||² + tail_mass ).
///
/// Requires Ĥ_n to be safely invertible; an eigenvalue below 10^{-digits/2}
/// in magnitude reports [`Error::SingularTruncation`].
pub fn galerkin_projection_residual(
    spec: &BasisSpec,
    bc: &BoundaryCondition,
    j: i64,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let state = crate::basis::expand_state(spec, bc, j, n, ctx)?;
    let ham = truncated_hamiltonian(spec, n, ctx)?;
    let eig = ham.eigendecompose(ctx)?;
    let floor = ctx.pow10(-(i64::from(ctx.digits()) / 2));
    let lambda_min_abs = eig
        .eigenvalues
        .iter()
        .map(BigReal::abs)
        .reduce(|a, b| a.min(&b))
        .expect("n >= 1");
    if lambda_min_abs < floor {
        return Err(Error::SingularTruncation(lambda_min_abs.to_scientific(5)));
    }
    let energy = SpectralData::new(bc, j)?.energy(ctx);
    let inverted = eig.apply_spectral_fn(
        |lambda| ctx.complex_from_real(lambda.recip()),
        &state.c,
        ctx,
    );
    let mut dist_sqr = state.tail_mass.clone();
    for (x, c) in inverted.iter().zip(&state.c) {
        dist_sqr += &(&x.scale(&energy) - c).norm_sqr();
    }
    Ok(dist_sqr.sqrt())
}
