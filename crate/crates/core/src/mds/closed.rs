//! Closed rational forms of the two series, their residue-class pieces, and
//! the functional equation connecting them.
//!
//! Conventions: x = q^{-s}, y = q^{-w}. The s -> 1-s, w -> w+s-1/2 change of
//! variables is (x, y) -> (q^{-1} x^{-1}, q^{1/2} x y), and the prefactors
//! q^{2s-1} = q^{-1} x^{-2}, q^{1/2-s} = q^{1/2} x are exact scalars in
//! Q(ζ_N) times Laurent monomials.

use crate::chars::CharCtx;
use crate::cyclo::CycNum;
use crate::error::Result;
use crate::report::Outcome;
use crate::series::build::q_pow;
use crate::series::Scalar;
use crate::series::{BiPoly, BiRat, Monomial};

fn one_minus(c: CycNum, i: i64, j: i64) -> BiPoly<CycNum> {
    BiPoly::term(c.one_like(), 0, 0).sub(&BiPoly::term(c, i, j))
}

/// (1 - q^2 xy) / ((1-qx)(1-qy)(1-q^{n+1} x^n y^n)).
pub fn z1_closed(ctx: &CharCtx) -> BiRat<CycNum> {
    let cyclo = ctx.cyclo();
    let n = ctx.field().n() as i64;
    let num = one_minus(q_pow(cyclo, 2), 1, 1);
    let den = one_minus(q_pow(cyclo, 1), 1, 0)
        .mul(&one_minus(q_pow(cyclo, 1), 0, 1))
        .mul(&one_minus(q_pow(cyclo, n + 1), n, n));
    BiRat::new(num, den)
}

/// The piece of the first series over deg m ≡ i (mod n):
/// (1 - q^{n+1} x y^n) resp. (q^i - q^{i+1} x) y^i over the common
/// denominator (1-qx)(1-q^n y^n)(1-q^{n+1} x^n y^n).
pub fn z1_delta_closed(ctx: &CharCtx, i: u32) -> BiRat<CycNum> {
    let cyclo = ctx.cyclo();
    let n = ctx.field().n() as i64;
    let den = one_minus(q_pow(cyclo, 1), 1, 0)
        .mul(&one_minus(q_pow(cyclo, n), 0, n))
        .mul(&one_minus(q_pow(cyclo, n + 1), n, n));
    let num = if i == 0 {
        one_minus(q_pow(cyclo, n + 1), 1, n)
    } else {
        let i = i as i64;
        BiPoly::term(q_pow(cyclo, i), 0, i).sub(&BiPoly::term(q_pow(cyclo, i + 1), 1, i))
    };
    BiRat::new(num, den)
}

/// The closed form of the Gauss-sum series:
/// [1 - q^{3n/2} x^{n-1} y^n + Σ_{i=1}^{n-1} (τ(ε^i) q^{i-1+i/2} x^{i-1} y^i
///  - τ(ε^i) q^{3i/2} x^i y^i)]
/// / [(1-qx)(1-q^{n/2+1} y^n)(1-q^{3n/2} x^n y^n)].
pub fn z2_closed(ctx: &CharCtx) -> BiRat<CycNum> {
    let cyclo = ctx.cyclo();
    let n = ctx.field().n();
    let ni = n as i64;
    let mut num = one_minus(CycNum::sqrt_q_pow(cyclo, 3 * ni), ni - 1, ni);
    for i in 1..n {
        let tau = ctx.tau(i);
        let ii = i as i64;
        // τ(ε^i) q^{i-1+i/2} = τ(ε^i) √q^{3i-2}
        num = num.add(&BiPoly::term(
            tau.mul(&CycNum::sqrt_q_pow(cyclo, 3 * ii - 2)),
            ii - 1,
            ii,
        ));
        num = num.sub(&BiPoly::term(
            tau.mul(&CycNum::sqrt_q_pow(cyclo, 3 * ii)),
            ii,
            ii,
        ));
    }
    let den = one_minus(q_pow(cyclo, 1), 1, 0)
        .mul(&one_minus(CycNum::sqrt_q_pow(cyclo, ni + 2), 0, ni))
        .mul(&one_minus(CycNum::sqrt_q_pow(cyclo, 3 * ni), ni, ni));
    BiRat::new(num, den)
}

/// The change of variables (s, w) -> (1-s, w+s-1/2) as substitution
/// monomials: x -> q^{-1} x^{-1}, y -> q^{1/2} x y.
pub fn fe_substitution(ctx: &CharCtx) -> (Monomial<CycNum>, Monomial<CycNum>) {
    let cyclo = ctx.cyclo();
    (
        Monomial::new(q_pow(cyclo, -1), -1, 0),
        Monomial::new(CycNum::sqrt_q_pow(cyclo, 1), 1, 1),
    )
}

/// q^{2s-1}(1-q^{-s})/(1-q^{s-1}) as a rational function of x.
fn fe_prefactor_zero(ctx: &CharCtx) -> BiRat<CycNum> {
    let cyclo = ctx.cyclo();
    let one = CycNum::one(cyclo);
    // q^{-1} x^{-2} (1 - x) / (1 - q^{-1} x^{-1})
    let num = BiPoly::term(q_pow(cyclo, -1), -2, 0).sub(&BiPoly::term(q_pow(cyclo, -1), -1, 0));
    let den = BiPoly::term(one, 0, 0).sub(&BiPoly::term(q_pow(cyclo, -1), -1, 0));
    BiRat::new(num, den).normalized()
}

/// q^{2s-1} q^{1/2-s} τ/√q = τ q^{-1} x^{-1}, with τ either τ(ε^i) or its
/// conjugate.
fn fe_prefactor_nonzero(ctx: &CharCtx, tau: &CycNum) -> BiRat<CycNum> {
    let cyclo = ctx.cyclo();
    let one = CycNum::one(cyclo);
    BiRat::new(
        BiPoly::term(tau.mul(&q_pow(cyclo, -1)), -1, 0),
        BiPoly::term(one, 0, 0),
    )
}

/// The residue-class piece of the Gauss-sum series, constructed from the
/// matching piece of the first series through the inverse functional
/// equation (the direction carrying τ(ε^i) rather than its conjugate).
pub fn z2_delta_closed(ctx: &CharCtx, i: u32) -> Result<BiRat<CycNum>> {
    let (mx, my) = fe_substitution(ctx);
    let reflected = z1_delta_closed(ctx, i).substitute(&mx, &my)?;
    let pref = if i == 0 {
        fe_prefactor_zero(ctx)
    } else {
        fe_prefactor_nonzero(ctx, ctx.tau(i))
    };
    Ok(pref.mul(&reflected).normalized())
}

fn birat_pretty(r: &BiRat<CycNum>) -> String {
    format!(
        "({}) / ({})",
        r.num.pretty("x", "y", &CycNum::pretty),
        r.den.pretty("x", "y", &CycNum::pretty)
    )
}

/// The functional equation in the printed direction: for each residue class,
/// Z1-piece(s, w) = q^{2s-1}(1-q^{-s})/(1-q^{s-1}) Z2-piece(1-s, w+s-1/2)
/// for i = 0, and with prefactor q^{2s-1} q^{1/2-s} τ̄(ε^i)/√q for i ≠ 0.
pub fn thm_fe_outcome(ctx: &CharCtx, i: u32) -> Result<Outcome> {
    let (mx, my) = fe_substitution(ctx);
    let lhs = z1_delta_closed(ctx, i);
    let reflected = z2_delta_closed(ctx, i)?.substitute(&mx, &my)?;
    let pref = if i == 0 {
        fe_prefactor_zero(ctx)
    } else {
        fe_prefactor_nonzero(ctx, &ctx.tau(i).conjugate())
    };
    let rhs = pref.mul(&reflected);
    Ok(Outcome::of(
        lhs.equal(&rhs),
        || birat_pretty(&lhs),
        || birat_pretty(&rhs),
    ))
}

/// Closed forms of the section-of-evaluation auxiliary series.
pub mod aux {
    use super::*;

    /// (1 - q x y^n) / ((1-qx)(1-q y^n)(1-q^n x^n y^n)).
    pub fn t_a_closed(ctx: &CharCtx) -> BiRat<CycNum> {
        let cyclo = ctx.cyclo();
        let n = ctx.field().n() as i64;
        let num = one_minus(q_pow(cyclo, 1), 1, n);
        let den = one_minus(q_pow(cyclo, 1), 1, 0)
            .mul(&one_minus(q_pow(cyclo, 1), 0, n))
            .mul(&one_minus(q_pow(cyclo, n), n, n));
        BiRat::new(num, den)
    }

    /// 1/((1-x)(1-xy)): the kernel selecting deg m <= deg d.
    pub fn kernel_a(ctx: &CharCtx) -> BiRat<CycNum> {
        let cyclo = ctx.cyclo();
        let one = CycNum::one(cyclo);
        BiRat::new(
            BiPoly::term(one.clone(), 0, 0),
            one_minus(one.clone(), 1, 0).mul(&one_minus(one, 1, 1)),
        )
    }

    /// 1/(1-xy): the kernel selecting the diagonal deg m = deg d.
    pub fn kernel_b(ctx: &CharCtx) -> BiRat<CycNum> {
        let cyclo = ctx.cyclo();
        let one = CycNum::one(cyclo);
        BiRat::new(BiPoly::term(one.clone(), 0, 0), one_minus(one, 1, 1))
    }

    /// 1/((1-q^{n+1} x^n y^n)(1-qx)): the triangular piece in closed form.
    pub fn z_a_closed(ctx: &CharCtx) -> BiRat<CycNum> {
        let cyclo = ctx.cyclo();
        let n = ctx.field().n() as i64;
        let one = CycNum::one(cyclo);
        BiRat::new(
            BiPoly::term(one, 0, 0),
            one_minus(q_pow(cyclo, n + 1), n, n).mul(&one_minus(q_pow(cyclo, 1), 1, 0)),
        )
    }

    /// 1/(1-q^{n+1} x^n y^n): the diagonal piece in closed form.
    pub fn z_b_closed(ctx: &CharCtx) -> BiRat<CycNum> {
        let cyclo = ctx.cyclo();
        let n = ctx.field().n() as i64;
        let one = CycNum::one(cyclo);
        BiRat::new(
            BiPoly::term(one, 0, 0),
            one_minus(q_pow(cyclo, n + 1), n, n),
        )
    }
}

pub use aux::*;

/// Pretty form of a closed rational function for reports and tables.
pub fn closed_form_strings(r: &BiRat<CycNum>) -> (String, String) {
    (
        r.num.pretty("x", "y", &CycNum::pretty),
        r.den.pretty("x", "y", &CycNum::pretty),
    )
}
