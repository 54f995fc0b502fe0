//! Orthonormal basis families for the box Hilbert space L²((-1,1)) and the
//! exact expansion coefficients of reference eigenfunctions in them.
//!
//! Three families are supported: the exact eigenbases of the Laplacian for
//! Dirichlet / Neumann / periodic boundary conditions, the normalized
//! associated Legendre polynomials (p_l^m)_{l >= m} with even m >= 4 (whose
//! boundary values and first derivatives all vanish, making the family blind
//! to the choice of boundary condition), and Gram-Schmidt-augmented families
//! GS(f0, (p_l^m)) that prepend a single function carrying the desired
//! boundary behaviour.

mod coefficients;
mod gram_schmidt;

use rug::{Integer, Rational};

pub use coefficients::{
    coeff_constant_exact, coeff_dirichlet, coeff_dirichlet_exact, coeff_neumann,
    coeff_neumann_exact, coeff_periodic, coeff_periodic_exact,
};
pub use gram_schmidt::{gram_schmidt_augmented, CoefficientMatrix};

use crate::error::{Error, Result};
use crate::legendre::{assoc_legendre_poly, norm_assoc_legendre, AssocLegendreIndex, RealPoly};
use crate::numerics::{BigComplex, BigReal, PrecisionContext};

/// Self-adjoint realization of the Laplacian on (-1, 1) by its boundary
/// condition. The alpha-periodic angle is stored as an exact rational
/// multiple of pi (alpha/pi in [0, 2)), so alpha = 0 is periodic and
/// alpha = pi anti-periodic.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
    AlphaPeriodic(Rational),
}

impl BoundaryCondition {
    pub fn periodic() -> Self {
        Self::AlphaPeriodic(Rational::new())
    }

    pub fn antiperiodic() -> Self {
        Self::AlphaPeriodic(Rational::from(1))
    }

    pub fn alpha_periodic(alpha_over_pi: Rational) -> Result<Self> {
        if alpha_over_pi < 0 || alpha_over_pi >= 2 {
            return Err(Error::InvalidSpec(format!(
                "alpha/pi must lie in [0, 2), got {alpha_over_pi}"
            )));
        }
        Ok(Self::AlphaPeriodic(alpha_over_pi))
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Self::AlphaPeriodic(q) if *q == 0)
    }

    pub fn is_antiperiodic(&self) -> bool {
        matches!(self, Self::AlphaPeriodic(q) if *q == 1)
    }

    /// Tag used in CSV output and error messages.
    pub fn tag(&self) -> String {
        match self {
            Self::Dirichlet => "dirichlet".into(),
            Self::Neumann => "neumann".into(),
            Self::AlphaPeriodic(q) if *q == 0 => "periodic".into(),
            Self::AlphaPeriodic(q) if *q == 1 => "antiperiodic".into(),
            Self::AlphaPeriodic(q) => format!("alpha={q}pi"),
        }
    }
}

/// One exact eigenpair (E_j, psi_j) of the Laplacian for a supported
/// boundary condition, with psi_j normalized in L²((-1,1)).
///
/// Mode conventions: Dirichlet j >= 1 with psi_j = sin(j pi (x+1)/2) and
/// E_j = j² pi²/4; Neumann j >= 0 with the matching cosines (j = 0 is the
/// normalized constant 1/sqrt(2)); periodic j in Z with
/// psi_j = e^{i j pi (x+1)}/sqrt(2) and E_j = j² pi²; anti-periodic supports
/// the single reference mode j = 0, psi_0 = cos(pi (x+1)/2), E_0 = pi²/4.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    bc: BoundaryCondition,
    j: i64,
    kind: ModeKind,
}

#[derive(Debug, Clone, PartialEq)]
enum ModeKind {
    DirichletSin,
    NeumannCos,
    PeriodicExp,
    AntiperiodicCos,
}

impl SpectralData {
    pub fn new(bc: &BoundaryCondition, j: i64) -> Result<Self> {
        let kind = match bc {
            BoundaryCondition::Dirichlet => {
                if j < 1 {
                    return Err(Error::UnsupportedPair(format!(
                        "Dirichlet modes start at j = 1, got j = {j}"
                    )));
                }
                ModeKind::DirichletSin
            }
            BoundaryCondition::Neumann => {
                if j < 0 {
                    return Err(Error::UnsupportedPair(format!(
                        "Neumann modes start at j = 0, got j = {j}"
                    )));
                }
                ModeKind::NeumannCos
            }
            BoundaryCondition::AlphaPeriodic(q) if *q == 0 => ModeKind::PeriodicExp,
            BoundaryCondition::AlphaPeriodic(q) if *q == 1 => {
                if j != 0 {
                    return Err(Error::UnsupportedPair(
                        "only the j = 0 anti-periodic reference mode is available".into(),
                    ));
                }
                ModeKind::AntiperiodicCos
            }
            BoundaryCondition::AlphaPeriodic(q) => {
                return Err(Error::UnsupportedPair(format!(
                    "no exact eigen-system for alpha = {q} pi"
                )))
            }
        };
        Ok(Self {
            bc: bc.clone(),
            j,
            kind,
        })
    }

    pub fn bc(&self) -> &BoundaryCondition {
        &self.bc
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    /// Energy divided by pi², as an exact rational.
    pub fn energy_over_pi_sqr(&self) -> Rational {
        let j2 = Integer::from(self.j).square();
        match self.kind {
            ModeKind::DirichletSin | ModeKind::NeumannCos => Rational::from((j2, Integer::from(4))),
            ModeKind::PeriodicExp => Rational::from(j2),
            ModeKind::AntiperiodicCos => Rational::from((1, 4)),
        }
    }

    pub fn energy(&self, ctx: &PrecisionContext) -> BigReal {
        let pi = ctx.pi();
        ctx.from_rational(&self.energy_over_pi_sqr()) * &pi * &pi
    }

    /// Value of the normalized eigenfunction at x.
    pub fn eval(&self, x: &BigReal, ctx: &PrecisionContext) -> BigComplex {
        let half = ctx.from_rational(&Rational::from((1, 2)));
        let sqrt_half = half.sqrt();
        let xp1 = x + ctx.one();
        match self.kind {
            ModeKind::DirichletSin => {
                let (s, _) = (ctx.from_i64(self.j) * ctx.pi() * &half * &xp1).sin_cos();
                ctx.complex_from_real(s)
            }
            ModeKind::NeumannCos => {
                if self.j == 0 {
                    ctx.complex_from_real(sqrt_half)
                } else {
                    let (_, c) = (ctx.from_i64(self.j) * ctx.pi() * &half * &xp1).sin_cos();
                    ctx.complex_from_real(c)
                }
            }
            ModeKind::PeriodicExp => {
                BigComplex::unit_phase(&(ctx.from_i64(self.j) * ctx.pi() * &xp1)).scale(&sqrt_half)
            }
            ModeKind::AntiperiodicCos => {
                let (_, c) = (ctx.pi() * &half * &xp1).sin_cos();
                ctx.complex_from_real(c)
            }
        }
    }
}

/// Which function is prepended to the Legendre family by Gram-Schmidt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugmentKind {
    /// f0 = 1/sqrt(2): periodic (and Neumann) boundary data, -f0'' = 0.
    ConstantPeriodic,
    /// f0 = cos(pi (x+1)/2): anti-periodic (and Neumann) boundary data,
    /// -f0'' = (pi²/4) f0.
    CosineAntiperiodic,
}

impl AugmentKind {
    /// Eigenvalue of -d²/dx² on f0, divided by pi².
    pub fn eigenvalue_over_pi_sqr(&self) -> Rational {
        match self {
            AugmentKind::ConstantPeriodic => Rational::new(),
            AugmentKind::CosineAntiperiodic => Rational::from((1, 4)),
        }
    }

    /// The boundary condition f0 is an eigenfunction of.
    pub fn boundary_condition(&self) -> BoundaryCondition {
        match self {
            AugmentKind::ConstantPeriodic => BoundaryCondition::periodic(),
            AugmentKind::CosineAntiperiodic => BoundaryCondition::antiperiodic(),
        }
    }

    /// <f0, p_l^m>, the overlap with a normalized associated Legendre
    /// polynomial.
    pub fn overlap(&self, l: u32, m: u32, ctx: &PrecisionContext) -> Result<BigReal> {
        let norm = norm_assoc_legendre(AssocLegendreIndex::new(l, m)?, ctx);
        match self {
            AugmentKind::ConstantPeriodic => {
                let raw = ctx.from_rational(&coeff_constant_exact(l, m)?);
                Ok(raw / (ctx.from_i64(2).sqrt() * norm))
            }
            AugmentKind::CosineAntiperiodic => {
                Ok(coeff_neumann(l, m, 1, ctx)? / norm)
            }
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            AugmentKind::ConstantPeriodic => "augmented-constant",
            AugmentKind::CosineAntiperiodic => "augmented-cosine",
        }
    }
}

/// Which orthonormal family spans the truncation subspaces.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisSpec {
    /// Eigenbasis of the Laplacian for the given boundary condition.
    EigenBasis(BoundaryCondition),
    /// Normalized associated Legendre polynomials (p_l^m)_{l >= m}.
    Legendre { m: u32 },
    /// GS(f0, (p_l^m)_{l >= m}).
    Augmented { f0: AugmentKind, m: u32 },
}

impl BasisSpec {
    pub fn legendre(m: u32) -> Result<Self> {
        if m < 4 || m % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "Legendre basis needs even m >= 4, got m = {m}"
            )));
        }
        Ok(Self::Legendre { m })
    }

    pub fn augmented(f0: AugmentKind, m: u32) -> Result<Self> {
        if m < 4 || m % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "augmented basis needs even m >= 4, got m = {m}"
            )));
        }
        Ok(Self::Augmented { f0, m })
    }

    pub fn m(&self) -> Option<u32> {
        match self {
            Self::EigenBasis(_) => None,
            Self::Legendre { m } | Self::Augmented { m, .. } => Some(*m),
        }
    }

    /// Tag used in CSV output.
    pub fn tag(&self) -> String {
        match self {
            Self::EigenBasis(bc) => format!("eigen-{}", bc.tag()),
            Self::Legendre { .. } => "legendre".into(),
            Self::Augmented { f0, .. } => f0.tag().into(),
        }
    }
}

/// Position of eigenbasis mode j in the truncation ordering: Dirichlet modes
/// are listed j = 1, 2, ...; Neumann modes j = 0, 1, ...; periodic modes in
/// the energy-sorted order j = 0, +1, -1, +2, -2, ... (ties broken +j first).
pub fn eigenbasis_position(bc: &BoundaryCondition, j: i64) -> Result<usize> {
    match bc {
        BoundaryCondition::Dirichlet => {
            if j >= 1 {
                Ok((j - 1) as usize)
            } else {
                Err(Error::UnsupportedPair("Dirichlet modes start at j = 1".into()))
            }
        }
        BoundaryCondition::Neumann => {
            if j >= 0 {
                Ok(j as usize)
            } else {
                Err(Error::UnsupportedPair("Neumann modes start at j = 0".into()))
            }
        }
        BoundaryCondition::AlphaPeriodic(q) if *q == 0 => Ok(if j > 0 {
            (2 * j - 1) as usize
        } else {
            (-2 * j) as usize
        }),
        _ => Err(Error::UnsupportedPair(format!(
            "no eigenbasis ordering for {}",
            bc.tag()
        ))),
    }
}

/// Mode index occupying the given position of the eigenbasis ordering.
pub fn eigenbasis_mode(bc: &BoundaryCondition, position: usize) -> Result<SpectralData> {
    let j = match bc {
        BoundaryCondition::Dirichlet => position as i64 + 1,
        BoundaryCondition::Neumann => position as i64,
        BoundaryCondition::AlphaPeriodic(q) if *q == 0 => {
            if position == 0 {
                0
            } else if position % 2 == 1 {
                (position as i64 + 1) / 2
            } else {
                -(position as i64 / 2)
            }
        }
        _ => {
            return Err(Error::UnsupportedPair(format!(
                "no eigenbasis for {}",
                bc.tag()
            )))
        }
    };
    SpectralData::new(bc, j)
}

/// Boundary data (values and first derivatives at the two endpoints) of a
/// basis function.
#[derive(Debug, Clone)]
pub struct BoundaryData {
    pub value_neg: BigComplex,
    pub value_pos: BigComplex,
    pub deriv_neg: BigComplex,
    pub deriv_pos: BigComplex,
}

impl BoundaryData {
    fn zero(ctx: &PrecisionContext) -> Self {
        Self {
            value_neg: ctx.complex_zero(),
            value_pos: ctx.complex_zero(),
            deriv_neg: ctx.complex_zero(),
            deriv_pos: ctx.complex_zero(),
        }
    }
}

/// A single orthonormal basis function: an evaluator plus its boundary data.
#[derive(Debug, Clone)]
pub struct BasisElement {
    kind: ElementKind,
    pub boundary: BoundaryData,
}

#[derive(Debug, Clone)]
enum ElementKind {
    Polynomial(RealPoly),
    Mode(SpectralData),
    /// beta * cos(pi (x+1)/2) + polynomial
    CosinePlusPolynomial { beta: BigReal, poly: RealPoly },
}

impl BasisElement {
    pub fn eval(&self, x: &BigReal, ctx: &PrecisionContext) -> BigComplex {
        match &self.kind {
            ElementKind::Polynomial(p) => ctx.complex_from_real(p.eval(x, ctx)),
            ElementKind::Mode(mode) => mode.eval(x, ctx),
            ElementKind::CosinePlusPolynomial { beta, poly } => {
                let half = ctx.from_rational(&Rational::from((1, 2)));
                let (_, c) = (ctx.pi() * &half * (x + ctx.one())).sin_cos();
                ctx.complex_from_real(beta * c + poly.eval(x, ctx))
            }
        }
    }
}

/// Normalized associated Legendre polynomial p_{m+index}^m as a
/// rounded-coefficient polynomial.
fn normalized_legendre_real(l: u32, m: u32, ctx: &PrecisionContext) -> Result<RealPoly> {
    let idx = AssocLegendreIndex::new(l, m)?;
    let norm = norm_assoc_legendre(idx, ctx);
    Ok(assoc_legendre_poly(idx).to_real(ctx).scale(&norm.recip()))
}

/// The index-th orthonormal function of a basis family, with boundary data.
///
/// For `Legendre { m }` the index-th element is p_{m+index}^m (boundary data
/// exactly zero); for `Augmented` element 0 is f0 itself and element k >= 1
/// the k-th Gram-Schmidt vector, whose boundary data is beta^{(k)} times the
/// boundary data of f0.
pub fn basis_element(spec: &BasisSpec, index: usize, ctx: &PrecisionContext) -> Result<BasisElement> {
    match spec {
        BasisSpec::EigenBasis(bc) => {
            let mode = eigenbasis_mode(bc, index)?;
            let boundary = eigenmode_boundary(&mode, ctx);
            Ok(BasisElement {
                kind: ElementKind::Mode(mode),
                boundary,
            })
        }
        BasisSpec::Legendre { m } => {
            let poly = normalized_legendre_real(*m + index as u32, *m, ctx)?;
            Ok(BasisElement {
                kind: ElementKind::Polynomial(poly),
                boundary: BoundaryData::zero(ctx),
            })
        }
        BasisSpec::Augmented { f0, m } => {
            let coeffs = gram_schmidt_augmented(*f0, *m, index + 1, ctx)?;
            let row = coeffs.row(index);
            let beta = row[0].clone();
            let mut poly = RealPoly::zero();
            for (a, c) in row.iter().enumerate().skip(1) {
                let p = normalized_legendre_real(*m + a as u32 - 1, *m, ctx)?;
                poly = poly.add(&p.scale(c));
            }
            let boundary = augment_boundary(*f0, &beta, ctx);
            let kind = match f0 {
                AugmentKind::ConstantPeriodic => {
                    let half_sqrt = ctx
                        .from_rational(&Rational::from((1, 2)))
                        .sqrt();
                    ElementKind::Polynomial(poly.add(&RealPoly::constant(beta * half_sqrt)))
                }
                AugmentKind::CosineAntiperiodic => ElementKind::CosinePlusPolynomial { beta, poly },
            };
            Ok(BasisElement { kind, boundary })
        }
    }
}

fn eigenmode_boundary(mode: &SpectralData, ctx: &PrecisionContext) -> BoundaryData {
    let half = ctx.from_rational(&Rational::from((1, 2)));
    let sqrt_half = half.sqrt();
    let j = mode.j();
    let j_real = ctx.from_i64(j);
    let sign_j = ctx.from_i64(if j.rem_euclid(2) == 0 { 1 } else { -1 });
    match mode.kind {
        ModeKind::DirichletSin => {
            // d/dx sin(j pi (x+1)/2) = (j pi / 2) cos(j pi (x+1)/2)
            let slope = &j_real * ctx.pi() * &half;
            BoundaryData {
                value_neg: ctx.complex_zero(),
                value_pos: ctx.complex_zero(),
                deriv_neg: ctx.complex_from_real(slope.clone()),
                deriv_pos: ctx.complex_from_real(slope * &sign_j),
            }
        }
        ModeKind::NeumannCos => {
            let (vn, vp) = if j == 0 {
                (sqrt_half.clone(), sqrt_half.clone())
            } else {
                (ctx.one(), sign_j.clone())
            };
            BoundaryData {
                value_neg: ctx.complex_from_real(vn),
                value_pos: ctx.complex_from_real(vp),
                deriv_neg: ctx.complex_zero(),
                deriv_pos: ctx.complex_zero(),
            }
        }
        ModeKind::PeriodicExp => {
            // psi = e^{i j pi (x+1)}/sqrt(2); e^{2 i j pi} = 1 at x = +1.
            let v = ctx.complex_from_real(sqrt_half.clone());
            let d = BigComplex::new(ctx.zero(), &j_real * ctx.pi() * &sqrt_half);
            BoundaryData {
                value_neg: v.clone(),
                value_pos: v,
                deriv_neg: d.clone(),
                deriv_pos: d,
            }
        }
        ModeKind::AntiperiodicCos => BoundaryData {
            value_neg: ctx.complex_from_real(ctx.one()),
            value_pos: ctx.complex_from_real(-ctx.one()),
            deriv_neg: ctx.complex_zero(),
            deriv_pos: ctx.complex_zero(),
        },
    }
}

fn augment_boundary(f0: AugmentKind, beta: &BigReal, ctx: &PrecisionContext) -> BoundaryData {
    let sqrt_half = ctx.from_rational(&Rational::from((1, 2))).sqrt();
    match f0 {
        AugmentKind::ConstantPeriodic => {
            let v = ctx.complex_from_real(beta * &sqrt_half);
            BoundaryData {
                value_neg: v.clone(),
                value_pos: v,
                deriv_neg: ctx.complex_zero(),
                deriv_pos: ctx.complex_zero(),
            }
        }
        AugmentKind::CosineAntiperiodic => BoundaryData {
            value_neg: ctx.complex_from_real(beta.clone()),
            value_pos: ctx.complex_from_real(-beta),
            deriv_neg: ctx.complex_zero(),
            deriv_pos: ctx.complex_zero(),
        },
    }
}

/// A state expressed by its first n coefficients in a basis, plus the mass of
/// the truncated tail.
#[derive(Debug, Clone)]
pub struct StateCoefficients {
    pub basis: BasisSpec,
    pub n: usize,
    pub c: Vec<BigComplex>,
    pub tail_mass: BigReal,
}

impl StateCoefficients {
    /// sum_l |c_l|².
    pub fn head_mass(&self, ctx: &PrecisionContext) -> BigReal {
        let mut acc = ctx.zero();
        for z in &self.c {
            acc += &z.norm_sqr();
        }
        acc
    }
}

/// Expand the normalized eigenfunction psi_j of the given boundary condition
/// over the first n elements of a basis, using the exact closed-form
/// coefficients; tail_mass = 1 - sum |c_l|².
///
/// Returns [`Error::UnsupportedPair`] when no closed form exists (e.g. a
/// periodic eigenvector in the Neumann eigenbasis).
pub fn expand_state(
    spec: &BasisSpec,
    bc: &BoundaryCondition,
    j: i64,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<StateCoefficients> {
    let mode = SpectralData::new(bc, j)?;
    let c: Vec<BigComplex> = match spec {
        BasisSpec::EigenBasis(basis_bc) => {
            if basis_bc != bc {
                return Err(Error::UnsupportedPair(format!(
                    "state of {} in the {} eigenbasis",
                    bc.tag(),
                    basis_bc.tag()
                )));
            }
            let pos = eigenbasis_position(bc, j)?;
            (0..n)
                .map(|k| {
                    if k == pos {
                        ctx.complex_from_real(ctx.one())
                    } else {
                        ctx.complex_zero()
                    }
                })
                .collect()
        }
        BasisSpec::Legendre { m } => {
            let mut out = Vec::with_capacity(n);
            for k in 0..n {
                let l = *m + k as u32;
                let norm = norm_assoc_legendre(AssocLegendreIndex::new(l, *m)?, ctx);
                out.push(raw_state_overlap(l, *m, &mode, ctx)?.scale(&norm.recip()));
            }
            out
        }
        BasisSpec::Augmented { f0, m } => {
            expand_in_augmented(*f0, *m, &mode, n, ctx)?
        }
    };

    let mut head = ctx.zero();
    for z in &c {
        head += &z.norm_sqr();
    }
    let mut tail_mass = ctx.one() - head;
    if tail_mass.is_sign_negative() {
        if tail_mass.abs() > ctx.eps(15) {
            return Err(Error::InvalidSpec(format!(
                "head mass exceeds 1 by {}",
                tail_mass.abs().to_scientific(5)
            )));
        }
        // Parseval guarantees the true tail is nonnegative; the excess is
        // rounding noise.
        tail_mass = ctx.zero();
    }
    Ok(StateCoefficients {
        basis: spec.clone(),
        n,
        c,
        tail_mass,
    })
}

/// <P_l^m, psi> for a normalized reference mode psi (the Legendre factor kept
/// non-normalized).
fn raw_state_overlap(
    l: u32,
    m: u32,
    mode: &SpectralData,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let sqrt_half = ctx.from_rational(&Rational::from((1, 2))).sqrt();
    match mode.kind {
        ModeKind::DirichletSin => Ok(ctx.complex_from_real(coeff_dirichlet(
            l,
            m,
            mode.j as u32,
            ctx,
        )?)),
        ModeKind::NeumannCos => {
            let raw = coeff_neumann(l, m, mode.j as u32, ctx)?;
            // j = 0: the normalized constant is 1/sqrt(2), not 1.
            Ok(ctx.complex_from_real(if mode.j == 0 { raw * &sqrt_half } else { raw }))
        }
        ModeKind::PeriodicExp => {
            Ok(coeff_periodic(l, m, mode.j, ctx)?.scale(&sqrt_half))
        }
        // cos(pi (x+1)/2) is the Neumann j = 1 function, so the same closed
        // form applies.
        ModeKind::AntiperiodicCos => Ok(ctx.complex_from_real(coeff_neumann(l, m, 1, ctx)?)),
    }
}

fn expand_in_augmented(
    f0: AugmentKind,
    m: u32,
    mode: &SpectralData,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<BigComplex>> {
    // Raw-family overlaps r_a = <raw_a, psi>; then c_k = sum_a C[k][a] r_a.
    let r0: BigComplex = match (f0, &mode.kind) {
        (AugmentKind::ConstantPeriodic, ModeKind::PeriodicExp) => {
            // <1/sqrt(2), e^{i j pi (x+1)}/sqrt(2)> = delta_{j0}
            if mode.j == 0 {
                ctx.complex_from_real(ctx.one())
            } else {
                ctx.complex_zero()
            }
        }
        (AugmentKind::CosineAntiperiodic, ModeKind::AntiperiodicCos) => {
            ctx.complex_from_real(ctx.one())
        }
        _ => {
            return Err(Error::UnsupportedPair(format!(
                "state of {} (j = {}) in the {} basis",
                mode.bc.tag(),
                mode.j,
                f0.tag()
            )))
        }
    };
    let mut r = Vec::with_capacity(n);
    r.push(r0);
    for a in 1..n {
        let l = m + a as u32 - 1;
        let norm = norm_assoc_legendre(AssocLegendreIndex::new(l, m)?, ctx);
        r.push(raw_state_overlap(l, m, mode, ctx)?.scale(&norm.recip()));
    }
    let coeffs = gram_schmidt_augmented(f0, m, n, ctx)?;
    let mut c = Vec::with_capacity(n);
    for k in 0..n {
        let row = coeffs.row(k);
        let mut acc = ctx.complex_zero();
        for (a, ra) in r.iter().enumerate().take(k + 1) {
            acc += &ra.scale(&row[a]);
        }
        c.push(acc);
    }
    Ok(c)
}

#[cfg(test)]
mod tests;
