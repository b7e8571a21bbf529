//! Prime-part generating series: concrete coefficient grids for a given
//! irreducible p, symbolic closed forms over the formal scalar ring, the
//! local functional equation, the substitution correspondence onto the
//! global closed forms, and the alternative local series built from the
//! reflected Euler products.
//!
//! Local variables are X = |p|^{-s}, Y = |p|^{-w}; grid indices are powers
//! of X and Y. In the symbolic forms v stands for |p|^{1/2} and G_i for the
//! Gauss sum g(1, ε^i, χ_p).

use crate::chars::CharCtx;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::formal::FormalScalar;
use crate::lfun::{euler_q, weight_a_pp, weight_b_pp};
use crate::poly::Poly;
use crate::report::Outcome;
use crate::series::{BiPoly, BiRat, Monomial, SeriesGrid};

use super::MdsInstance;

fn require_irreducible(inst: &MdsInstance, p: &Poly) -> Result<()> {
    if !inst.chars().tables().is_irreducible(p) {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    Ok(())
}

/// Grid of the first local series: a(p^j, p^k) X^j Y^k.
pub fn h1_grid(inst: &MdsInstance, p: &Poly, jmax: usize, kmax: usize) -> Result<SeriesGrid<CycNum>> {
    require_irreducible(inst, p)?;
    let q = inst.q();
    let n = inst.n();
    let cyclo = inst.chars().cyclo();
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(cyclo));
    for j in 0..=jmax {
        for k in 0..=kmax {
            if let Some(a) = weight_a_pp(q, p.degree(), n, j as u32, k as u32) {
                grid.set(
                    j,
                    k,
                    CycNum::from_rational(
                        cyclo,
                        num::BigRational::from_integer(num::BigInt::from(a)),
                    ),
                );
            }
        }
    }
    Ok(grid)
}

/// g(1, ε, χ_{p^k}) / √|sqf(p^k)| as an exact scalar: 1 for k ≡ 0 (mod n)
/// and g(1, ε^i, χ_p)/√|p| for k ≡ i ≠ 0.
fn gauss_ratio(inst: &MdsInstance, p: &Poly, k: usize) -> Result<CycNum> {
    let n = inst.n();
    let cyclo = inst.chars().cyclo();
    let i = (k as u32) % n;
    if i == 0 {
        Ok(CycNum::one(cyclo))
    } else {
        let g = inst.chars().gauss_g(&Poly::one(), i, p)?;
        Ok(g.mul(&CycNum::sqrt_q_pow(cyclo, -(p.degree() as i64))))
    }
}

/// Grid of the second local series:
/// (1-|p|^{n/2-1} Y^n)^{-1} Σ b(p^j, p^k) g(1,ε,χ_{p^k})/√|sqf(p^k)| X^j Y^k.
pub fn h2_grid(inst: &MdsInstance, p: &Poly, jmax: usize, kmax: usize) -> Result<SeriesGrid<CycNum>> {
    require_irreducible(inst, p)?;
    let q = inst.q();
    let n = inst.n();
    let cyclo = inst.chars().cyclo();
    let mut inner = SeriesGrid::zeros(jmax, kmax, CycNum::zero(cyclo));
    for k in 0..=kmax {
        let ratio = gauss_ratio(inst, p, k)?;
        for j in 0..=jmax {
            let b = weight_b_pp(q, p.degree(), n, j as u32, k as u32);
            if !b.is_zero() {
                inner.set(j, k, b.to_cyc(inst.chars()).mul(&ratio));
            }
        }
    }
    // prefactor 1/(1 - |p|^{n/2-1} Y^n)
    let step = CycNum::sqrt_q_pow(cyclo, p.degree() as i64 * (n as i64 - 2));
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(cyclo));
    for j in 0..=jmax {
        for k in 0..=kmax {
            let mut cell = CycNum::zero(cyclo);
            let mut a = 0usize;
            let mut scale = CycNum::one(cyclo);
            while n as usize * a <= k {
                cell = cell.add(&inner.get(j, k - n as usize * a).mul(&scale));
                scale = scale.mul(&step);
                a += 1;
            }
            grid.set(j, k, cell);
        }
    }
    Ok(grid)
}

// ---------------------------------------------------------------------------
// symbolic closed forms
// ---------------------------------------------------------------------------

fn fs_one(ctx: &CharCtx) -> FormalScalar {
    FormalScalar::one(ctx.cyclo(), ctx.field().n() as usize - 1)
}

fn fs_v(ctx: &CharCtx, e: i64) -> FormalScalar {
    FormalScalar::v_pow(ctx.cyclo(), ctx.field().n() as usize - 1, e)
}

fn fs_g(ctx: &CharCtx, i: u32) -> FormalScalar {
    FormalScalar::gen_pow(ctx.cyclo(), ctx.field().n() as usize - 1, i as usize, 1)
}

fn fterm(c: FormalScalar, i: i64, j: i64) -> BiPoly<FormalScalar> {
    BiPoly::term(c, i, j)
}

fn f_one_minus(c: FormalScalar, i: i64, j: i64) -> BiPoly<FormalScalar> {
    fterm(c.one_like(), 0, 0).sub(&fterm(c, i, j))
}

use crate::series::Scalar;

/// (1 - XY) / ((1-X)(1-Y)(1-v^{2(n-1)} X^n Y^n)).
pub fn h1_closed(ctx: &CharCtx) -> BiRat<FormalScalar> {
    let n = ctx.field().n() as i64;
    let one = fs_one(ctx);
    let num = f_one_minus(one.clone(), 1, 1);
    let den = f_one_minus(one.clone(), 1, 0)
        .mul(&f_one_minus(one, 0, 1))
        .mul(&f_one_minus(fs_v(ctx, 2 * (n - 1)), n, n));
    BiRat::new(num, den)
}

/// Residue-class pieces of the first local series over the common
/// denominator (1-X)(1-Y^n)(1-v^{2(n-1)} X^n Y^n).
pub fn h1_delta_closed(ctx: &CharCtx, i: u32) -> BiRat<FormalScalar> {
    let n = ctx.field().n() as i64;
    let one = fs_one(ctx);
    let den = f_one_minus(one.clone(), 1, 0)
        .mul(&f_one_minus(one.clone(), 0, n))
        .mul(&f_one_minus(fs_v(ctx, 2 * (n - 1)), n, n));
    let num = if i == 0 {
        f_one_minus(one, 1, n)
    } else {
        f_one_minus(one, 1, 0).mul(&fterm(fs_one(ctx), 0, i as i64))
    };
    BiRat::new(num, den)
}

/// (1 - v^{n-2} X^{n-1} Y^n + Σ_i G_i v^{i-2} X^{i-1} Y^i (1-X))
/// / ((1-X)(1-v^{n-2} Y^n)(1-v^n X^n Y^n)).
pub fn h2_closed(ctx: &CharCtx) -> BiRat<FormalScalar> {
    let n = ctx.field().n();
    let ni = n as i64;
    let one = fs_one(ctx);
    let mut num = f_one_minus(fs_v(ctx, ni - 2), ni - 1, ni);
    for i in 1..n {
        let ii = i as i64;
        let coef = fs_g(ctx, i).mul(&fs_v(ctx, ii - 2));
        num = num.add(&fterm(coef, ii - 1, ii).mul(&f_one_minus(one.clone(), 1, 0)));
    }
    let den = f_one_minus(one, 1, 0)
        .mul(&f_one_minus(fs_v(ctx, ni - 2), 0, ni))
        .mul(&f_one_minus(fs_v(ctx, ni), ni, ni));
    BiRat::new(num, den)
}

/// Residue-class pieces of the second local series.
pub fn h2_delta_closed(ctx: &CharCtx, i: u32) -> BiRat<FormalScalar> {
    let n = ctx.field().n();
    let ni = n as i64;
    let one = fs_one(ctx);
    let den = f_one_minus(one.clone(), 1, 0)
        .mul(&f_one_minus(fs_v(ctx, ni - 2), 0, ni))
        .mul(&f_one_minus(fs_v(ctx, ni), ni, ni));
    let num = if i == 0 {
        f_one_minus(fs_v(ctx, ni - 2), ni - 1, ni)
    } else {
        let ii = i as i64;
        let coef = fs_g(ctx, i).mul(&fs_v(ctx, ii - 2));
        fterm(coef, ii - 1, ii).mul(&f_one_minus(one, 1, 0))
    };
    BiRat::new(num, den)
}

/// Evaluate a symbolic local form at a concrete prime: v -> √q^{deg p},
/// G_i -> g(1, ε^i, χ_p).
pub fn eval_at_prime(
    inst: &MdsInstance,
    r: &BiRat<FormalScalar>,
    p: &Poly,
) -> Result<BiRat<CycNum>> {
    require_irreducible(inst, p)?;
    let ctx = inst.chars();
    let v_img = CycNum::sqrt_q_pow(ctx.cyclo(), p.degree() as i64);
    let g_imgs: Vec<CycNum> = (1..ctx.field().n())
        .map(|i| ctx.gauss_g(&Poly::one(), i, p))
        .collect::<Result<_>>()?;
    r.map_scalars(&mut |c: &FormalScalar| c.eval(&v_img, &g_imgs))
}

fn formal_pretty(r: &BiRat<FormalScalar>) -> String {
    format!(
        "({}) / ({})",
        r.num.pretty("X", "Y", &|c: &FormalScalar| c.to_string()),
        r.den.pretty("X", "Y", &|c: &FormalScalar| c.to_string())
    )
}

/// The local functional equation, as an exact identity of symbolic rational
/// functions: with (X, Y) -> (v^{-2} X^{-1}, v X Y),
///
/// i = 0:  H1-piece(X, Y) = (1 - v^{-2}X^{-1})/(1 - X) · H2-piece(X', Y')
/// i ≠ 0:  H1-piece(X, Y) = (v/G_i) v^{-1} X^{-1} · H2-piece(X', Y')
pub fn local_fe_outcome(ctx: &CharCtx, i: u32) -> Result<Outcome> {
    let one = fs_one(ctx);
    let mx = Monomial::new(fs_v(ctx, -2), -1, 0);
    let my = Monomial::new(fs_v(ctx, 1), 1, 1);
    let lhs = h1_delta_closed(ctx, i);
    let reflected = h2_delta_closed(ctx, i).substitute(&mx, &my)?;
    let pref = if i == 0 {
        // (1 - v^{-2} X^{-1}) / (1 - X)
        BiRat::new(
            fterm(one.clone(), 0, 0).sub(&fterm(fs_v(ctx, -2), -1, 0)),
            f_one_minus(one, 1, 0),
        )
        .normalized()
    } else {
        // √|p| / g(1,ε^i,χ_p) · |p|^{s-1/2} = X^{-1} / G_i
        BiRat::new(fterm(one, -1, 0), fterm(fs_g(ctx, i), 0, 0)).normalized()
    };
    let rhs = pref.mul(&reflected);
    Ok(Outcome::of(
        lhs.equal(&rhs),
        || formal_pretty(&lhs),
        || formal_pretty(&rhs),
    ))
}

/// The substitution correspondence mapping the local closed forms onto the
/// global ones: X -> qx, Y -> qy, v -> q^{-1/2}, and the normalized Gauss
/// sums onto the normalized finite-field ones, G_i/v -> τ(ε^i)/√q (i.e.
/// G_i -> τ(ε^i)/q).
pub fn correspondence_map(ctx: &CharCtx, r: &BiRat<FormalScalar>) -> Result<BiRat<CycNum>> {
    let cyclo = ctx.cyclo();
    let v_img = CycNum::sqrt_q_pow(cyclo, -1);
    let g_imgs: Vec<CycNum> = (1..ctx.field().n())
        .map(|i| ctx.tau(i).mul(&crate::series::build::q_pow(cyclo, -1)))
        .collect();
    let mapped = r.map_scalars(&mut |c: &FormalScalar| c.eval(&v_img, &g_imgs))?;
    let qx = Monomial::new(crate::series::build::q_pow(cyclo, 1), 1, 0);
    let qy = Monomial::new(crate::series::build::q_pow(cyclo, 1), 0, 1);
    mapped.substitute(&qx, &qy)
}

// ---------------------------------------------------------------------------
// the local series from reflected Euler products
// ---------------------------------------------------------------------------

/// Q(s; p^e) re-indexed to the local variable X = x^{deg p}.
fn local_q(inst: &MdsInstance, p: &Poly, e: u32) -> Result<Vec<CycNum>> {
    let ctx = inst.chars();
    let mut power = Poly::one();
    for _ in 0..e {
        power = ctx.field().poly_mul(&power, p);
    }
    let qpoly = euler_q(ctx, &power)?;
    let dp = p.degree() as i64;
    let top = qpoly.max_exp().unwrap_or(0);
    assert!(top % dp == 0 || top == 0, "local exponents divide deg p");
    let mut out = vec![CycNum::zero(ctx.cyclo()); (top / dp) as usize + 1];
    for (k, c) in qpoly.terms() {
        assert_eq!(k % dp, 0, "local exponent not a multiple of deg p");
        out[(k / dp) as usize] = c.clone();
    }
    Ok(out)
}

/// The residue-class piece of the alternative local series built from the
/// reflected products:
///
/// i = 0:  (1 - X)^{-1} Σ_k Q(s; p^{nk}) Y^{nk}
/// i ≠ 0:  g(1,ε^i,χ_p)/√|p| · Σ_k Q(s; p^{nk+i}) Y^{nk+i}
pub fn h2_alt_delta_grid(
    inst: &MdsInstance,
    p: &Poly,
    i: u32,
    jmax: usize,
    kmax: usize,
) -> Result<SeriesGrid<CycNum>> {
    require_irreducible(inst, p)?;
    let n = inst.n();
    let cyclo = inst.chars().cyclo();
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(cyclo));
    let mut e = i;
    while (e as usize) <= kmax {
        let coeffs = local_q(inst, p, e)?;
        for (a, c) in coeffs.iter().enumerate() {
            if a <= jmax && !c.is_zero() {
                grid.add_into(a, e as usize, c);
            }
        }
        e += n;
    }
    if i == 0 {
        // multiply by 1/(1-X): running sums along rows
        for k in 0..=kmax {
            for j in 1..=jmax {
                let prev = grid.get(j - 1, k).clone();
                grid.add_into(j, k, &prev);
            }
        }
        Ok(grid)
    } else {
        let ratio = gauss_ratio(inst, p, i as usize)?;
        grid.map_scalars(&mut |c: &CycNum| Ok(c.mul(&ratio)))
    }
}

/// Σ_i of the pieces above: the full alternative local series.
pub fn h2_alt_grid(
    inst: &MdsInstance,
    p: &Poly,
    jmax: usize,
    kmax: usize,
) -> Result<SeriesGrid<CycNum>> {
    let mut out = SeriesGrid::zeros(jmax, kmax, CycNum::zero(inst.chars().cyclo()));
    for i in 0..inst.n() {
        out = out.add(&h2_alt_delta_grid(inst, p, i, jmax, kmax)?);
    }
    Ok(out)
}
