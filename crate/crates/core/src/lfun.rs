//! Weighting factors, L-functions, and their functional equations.
//!
//! The two multiplicative weights a(d, m) and b(d, m) are defined prime by
//! prime from the exponent pair (v_p(d), v_p(m)); b takes half-integer
//! powers of |p|, realized exactly as rational multiples of √q. On top of
//! them sit:
//!
//! * L(s, χ_m) = Σ_d χ_m(d) |d|^{-s}, computed by full enumeration so it can
//!   serve as an independent oracle (a polynomial in x = q^{-s} of degree
//!   deg m̃ - 1, or the zeta function 1/(1-qx) when the powerfree part is 1);
//! * the weighted L(s, χ̂_m) = Σ_d χ_{m0}(d̂) a(d, m) |d|^{-s}, which factors
//!   as L(s, χ_{m0}) · P(s; m) for a finite Euler product P supported on the
//!   primes dividing m;
//! * the reflected product Q(s; m) = P(1-s; m) / (m/m̃)^{s-1/2};
//! * exact functional-equation checks relating L(s, χ_m) to L(1-s, χ̄_m)
//!   through Gauss sums, in both the completed and expanded forms.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::chars::CharCtx;
use crate::cyclo::CycNum;
use crate::error::Result;
use crate::poly::{enumerate_monic, Poly};
use crate::report::Outcome;
use crate::series::{UniPoly, UniRat};

// ---------------------------------------------------------------------------
// weights
// ---------------------------------------------------------------------------

/// r · √q^h with h ∈ {0, 1}: the value ring of the multiplicative weights.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPow {
    pub rat: BigRational,
    pub half: bool,
}

impl HalfPow {
    pub fn one() -> Self {
        HalfPow {
            rat: BigRational::one(),
            half: false,
        }
    }

    pub fn zero() -> Self {
        HalfPow {
            rat: BigRational::zero(),
            half: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    /// r · q^{e/2} folded into canonical form.
    pub fn from_sqrt_pow(q: u64, rat: BigRational, e: i64) -> Self {
        let q = BigInt::from(q);
        let half = e.rem_euclid(2) == 1;
        let whole = e.div_euclid(2);
        let scale = if whole >= 0 {
            BigRational::from_integer(q.pow(whole as u32))
        } else {
            BigRational::new(BigInt::one(), q.pow((-whole) as u32))
        };
        HalfPow {
            rat: rat * scale,
            half,
        }
    }

    pub fn mul(&self, other: &Self, q: u64) -> Self {
        let mut rat = &self.rat * &other.rat;
        let half = self.half ^ other.half;
        if self.half && other.half {
            rat *= BigRational::from_integer(BigInt::from(q));
        }
        HalfPow { rat, half }
    }

    pub fn to_cyc(&self, ctx: &CharCtx) -> CycNum {
        let base = if self.half {
            CycNum::sqrt_q(ctx.cyclo())
        } else {
            CycNum::one(ctx.cyclo())
        };
        base.scale(&self.rat)
    }
}

/// a(p^j, p^k): |p|^{(n-1)·min/n} when min(j, k) ≡ 0 (mod n), else 0.
/// Always an integer power of q.
pub fn weight_a_pp(q: u64, deg_p: usize, n: u32, j: u32, k: u32) -> Option<u128> {
    let d = j.min(k);
    if d % n != 0 {
        return None;
    }
    let e = deg_p as u32 * (n - 1) * (d / n);
    Some((q as u128).pow(e))
}

/// b(p^j, p^k) by the five-case table.
pub fn weight_b_pp(q: u64, deg_p: usize, n: u32, j: u32, k: u32) -> HalfPow {
    if k == 0 {
        return HalfPow::one();
    }
    let norm_minus_one = BigRational::from_integer(BigInt::from(q).pow(deg_p as u32) - 1);
    if k % n == 0 {
        // |p|^{k/2-1}(|p|-1) for j >= k; -|p|^{k/2-1} for j = k-1
        let e = deg_p as i64 * (k as i64 - 2);
        if j >= k {
            HalfPow::from_sqrt_pow(q, norm_minus_one, e)
        } else if j + 1 == k {
            HalfPow::from_sqrt_pow(q, -BigRational::one(), e)
        } else {
            HalfPow::zero()
        }
    } else if j + 1 == k {
        // |p|^{(k-1)/2}
        HalfPow::from_sqrt_pow(q, BigRational::one(), deg_p as i64 * (k as i64 - 1))
    } else {
        HalfPow::zero()
    }
}

/// a(d, m) = Π a(p^{v_p(d)}, p^{v_p(m)}); symmetric in its arguments.
pub fn weight_a(ctx: &CharCtx, d: &Poly, m: &Poly) -> Result<CycNum> {
    let q = ctx.field().q();
    let n = ctx.field().n();
    let mut acc = BigRational::one();
    for (p, k) in &ctx.tables().factorize(m)?.factors {
        let j = valuation(ctx, d, p);
        match weight_a_pp(q, p.degree(), n, j, *k) {
            None => return Ok(CycNum::zero(ctx.cyclo())),
            Some(v) => acc *= BigRational::from_integer(BigInt::from(v)),
        }
    }
    Ok(CycNum::from_rational(ctx.cyclo(), acc))
}

/// b(d, m) = Π b(p^{v_p(d)}, p^{v_p(m)}).
pub fn weight_b(ctx: &CharCtx, d: &Poly, m: &Poly) -> Result<CycNum> {
    let q = ctx.field().q();
    let n = ctx.field().n();
    let mut acc = HalfPow::one();
    for (p, k) in &ctx.tables().factorize(m)?.factors {
        let j = valuation(ctx, d, p);
        let w = weight_b_pp(q, p.degree(), n, j, *k);
        if w.is_zero() {
            return Ok(CycNum::zero(ctx.cyclo()));
        }
        acc = acc.mul(&w, q);
    }
    Ok(acc.to_cyc(ctx))
}

fn valuation(ctx: &CharCtx, d: &Poly, p: &Poly) -> u32 {
    let mut v = 0;
    let mut cur = d.clone();
    loop {
        let (quot, rem) = ctx.field().poly_divrem(&cur, p);
        if rem.is_zero() && !cur.is_zero() {
            v += 1;
            cur = quot;
        } else {
            return v;
        }
    }
}

// ---------------------------------------------------------------------------
// L-functions
// ---------------------------------------------------------------------------

/// ζ_O(s) = 1/(1 - q x).
pub fn zeta_o(ctx: &CharCtx) -> UniRat<CycNum> {
    let one = CycNum::one(ctx.cyclo());
    let q = CycNum::from_integer(ctx.cyclo(), ctx.field().q() as i64);
    UniRat::new(
        UniPoly::term(one.clone(), 0),
        UniPoly::term(one, 0).sub(&UniPoly::term(q, 1)),
    )
}

/// L(s, χ_m) (or L(s, χ̄_m) with `conj`), by full enumeration of monic d of
/// each degree below deg m̃. Returns ζ_O when the powerfree part of m is 1.
pub fn lfun(ctx: &CharCtx, m: &Poly, conj: bool) -> Result<UniRat<CycNum>> {
    let parts = ctx.tables().parts(m)?;
    if parts.powerfree.is_one() {
        return Ok(zeta_o(ctx));
    }
    let n = ctx.field().n();
    let bound = parts.squarefree.degree(); // degree of L is bound - 1
    let mut coeffs = Vec::with_capacity(bound);
    for k in 0..bound {
        let mut counts = vec![0i128; n as usize];
        for d in enumerate_monic(ctx.field(), k) {
            if let Some(t) = ctx.symbol_dlog(&d, &parts.powerfree)? {
                let t = if conj { (n - t) % n } else { t };
                counts[t as usize] += 1;
            }
        }
        let mut c = CycNum::zero(ctx.cyclo());
        for (t, &count) in counts.iter().enumerate() {
            if count != 0 {
                c = c.add(&ctx.eps_cyc(t as u32).scale(&BigRational::from_integer(
                    BigInt::from(count),
                )));
            }
        }
        coeffs.push(c);
    }
    Ok(UniRat::new(
        UniPoly::from_coeffs(coeffs),
        UniPoly::term(CycNum::one(ctx.cyclo()), 0),
    ))
}

/// The local factor P_p(s; m) in the variable x^{deg p}, for p^e exactly
/// dividing m: for p outside the powerfree part,
/// (1 - χ_{m0}(p) x_p) Σ_{k<nα} χ_{m0}(p^k) a(p^{nα}, p^k) x_p^k
/// + |p|^{(n-1)α} x_p^{nα}; for p inside it, Σ_{k<=nα} a(p^{nα+i}, p^k) x_p^k.
fn euler_p_local(ctx: &CharCtx, m0: &Poly, p: &Poly, e: u32) -> Result<UniPoly<CycNum>> {
    let q = ctx.field().q();
    let n = ctx.field().n();
    let alpha = e / n;
    let i = e % n;
    let one = CycNum::one(ctx.cyclo());
    if alpha == 0 {
        return Ok(UniPoly::term(one, 0));
    }
    let dp = p.degree() as i64;
    let cyc_of = |v: u128| CycNum::from_rational(
        ctx.cyclo(),
        BigRational::from_integer(BigInt::from(v)),
    );
    if i == 0 {
        let chi = ctx
            .symbol_dlog(p, m0)?
            .expect("p is prime to the powerfree part here");
        let chi = ctx.eps_cyc(chi);
        let mut sum = UniPoly::zero();
        let mut chi_pow = one.clone();
        for k in 0..(n * alpha) {
            if let Some(a) = weight_a_pp(q, p.degree(), n, n * alpha, k) {
                sum = sum.add(&UniPoly::term(chi_pow.mul(&cyc_of(a)), k as i64 * dp));
            }
            chi_pow = chi_pow.mul(&chi);
        }
        let lead = (q as u128).pow(p.degree() as u32 * (n - 1) * alpha);
        let front = UniPoly::term(one, 0).sub(&UniPoly::term(chi, dp));
        Ok(front
            .mul(&sum)
            .add(&UniPoly::term(cyc_of(lead), (n * alpha) as i64 * dp)))
    } else {
        let mut sum = UniPoly::zero();
        for k in 0..=(n * alpha) {
            if let Some(a) = weight_a_pp(q, p.degree(), n, n * alpha + i, k) {
                sum = sum.add(&UniPoly::term(cyc_of(a), k as i64 * dp));
            }
        }
        Ok(sum)
    }
}

/// P(s; m) = Π_{p | m} P_p(s; m).
pub fn euler_p(ctx: &CharCtx, m: &Poly) -> Result<UniPoly<CycNum>> {
    let parts = ctx.tables().parts(m)?;
    let mut out = UniPoly::term(CycNum::one(ctx.cyclo()), 0);
    for (p, e) in &ctx.tables().factorize(m)?.factors {
        out = out.mul(&euler_p_local(ctx, &parts.powerfree, p, *e)?);
    }
    Ok(out)
}

/// Q(s; m) as the normalized Euler product: per prime,
/// |p|^{-e_p (s - 1/2)} P_p(1-s; m) with e_p = nα for p outside the
/// powerfree part and e_p = nα + i - 1 inside it.
pub fn euler_q(ctx: &CharCtx, m: &Poly) -> Result<UniPoly<CycNum>> {
    let parts = ctx.tables().parts(m)?;
    let qinv = crate::series::build::q_pow(ctx.cyclo(), -1);
    let n = ctx.field().n();
    let mut out = UniPoly::term(CycNum::one(ctx.cyclo()), 0);
    for (p, e) in &ctx.tables().factorize(m)?.factors {
        let local = euler_p_local(ctx, &parts.powerfree, p, *e)?;
        let alpha = e / n;
        let i = e % n;
        let e_p = if i == 0 { n * alpha } else { n * alpha + i - 1 };
        let shift = p.degree() as i64 * e_p as i64;
        // P_p(1-s) x^shift √q^shift
        let reflected = local
            .substitute(&qinv, -1)?
            .shift(shift)
            .scale(&CycNum::sqrt_q_pow(ctx.cyclo(), shift));
        out = out.mul(&reflected);
    }
    Ok(out)
}

/// The global reflection law tying Q to P: Q(s; m) · |m/m̃|^{s-1/2} equals
/// P(1-s; m), i.e. Q = P(1-s; m) x^D √q^D with D = deg m - deg m̃.
pub fn q_reflection_check(ctx: &CharCtx, m: &Poly) -> Result<Outcome> {
    let parts = ctx.tables().parts(m)?;
    let d = (m.degree() - parts.squarefree.degree()) as i64;
    let lhs = euler_q(ctx, m)?;
    let rhs = euler_p(ctx, m)?
        .substitute(&crate::series::build::q_pow(ctx.cyclo(), -1), -1)?
        .shift(d)
        .scale(&CycNum::sqrt_q_pow(ctx.cyclo(), d));
    Ok(Outcome::of(
        lhs == rhs,
        || format!("{lhs:?}"),
        || format!("{rhs:?}"),
    ))
}

/// L(s, χ̂_m) as the product representation L(s, χ_{m0}) · P(s; m).
pub fn lfun_hat(ctx: &CharCtx, m: &Poly) -> Result<UniRat<CycNum>> {
    let l = lfun(ctx, m, false)?;
    let p = euler_p(ctx, m)?;
    Ok(UniRat::new(l.num.mul(&p), l.den))
}

/// Brute-force coefficients of L(s, χ̂_m) = Σ_d χ_{m0}(d̂) a(d, m) |d|^{-s}
/// up to the given degree, by enumerating every monic d. Runs on raw
/// coefficient buffers so the enumeration stays allocation-free.
pub fn lfun_hat_brute(ctx: &CharCtx, m: &Poly, depth: usize) -> Result<Vec<CycNum>> {
    let q = ctx.field().q();
    let n = ctx.field().n();
    let factors = ctx.tables().factorize(m)?.factors;

    struct Plan<'a> {
        coeffs: Vec<u64>,
        poly: &'a Poly,
        strip: bool,
        sym_e: u32,
        a_by_v: Vec<Option<u128>>,
        table: Option<&'a [u8]>,
    }
    let plans: Vec<Plan> = factors
        .iter()
        .map(|(p, e)| Plan {
            coeffs: p.coeffs().to_vec(),
            poly: p,
            strip: e % n != 0,
            sym_e: e % n,
            a_by_v: (0..=depth as u32)
                .map(|v| weight_a_pp(q, p.degree(), n, v, *e))
                .collect(),
            table: ctx.symbol_table(p),
        })
        .collect();

    let mut counts = vec![vec![0i128; n as usize]; depth + 1];
    let (mut d, mut dhat, mut probe, mut quot, mut rem) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (j, row) in counts.iter_mut().enumerate() {
        crate::poly::raw::first_monic(&mut d, j);
        loop {
            dhat.clear();
            dhat.extend_from_slice(&d);
            let mut a_val = 1i128;
            let mut dead = false;
            for plan in &plans {
                let mut v = 0usize;
                probe.clear();
                probe.extend_from_slice(&dhat);
                while crate::poly::raw::try_div_exact(&probe, &plan.coeffs, q, &mut quot, &mut rem)
                {
                    v += 1;
                    std::mem::swap(&mut probe, &mut quot);
                }
                if plan.strip {
                    std::mem::swap(&mut dhat, &mut probe);
                }
                match plan.a_by_v[v] {
                    None => {
                        dead = true;
                        break;
                    }
                    Some(a) => a_val *= a as i128,
                }
            }
            if !dead {
                let mut t = 0u32;
                for plan in &plans {
                    if plan.sym_e == 0 {
                        continue;
                    }
                    let rcode = crate::poly::raw::rem_code(&dhat, &plan.coeffs, q, &mut rem);
                    debug_assert_ne!(rcode, 0, "coprime part divisible by a powerfree prime");
                    let s = match plan.table {
                        Some(table) => table[rcode as usize] as u32,
                        None => ctx
                            .prime_symbol_dlog_code(rcode, plan.poly)
                            .expect("coprime part has nonzero symbol"),
                    };
                    t = (t + plan.sym_e * s) % n;
                }
                row[t as usize] += a_val;
            }
            if !crate::poly::raw::next_monic(&mut d, q) {
                break;
            }
        }
    }

    Ok(counts
        .into_iter()
        .map(|row| {
            let mut c = CycNum::zero(ctx.cyclo());
            for (t, &w) in row.iter().enumerate() {
                if w != 0 {
                    c = c.add(
                        &ctx.eps_cyc(t as u32)
                            .scale(&BigRational::from_integer(BigInt::from(w))),
                    );
                }
            }
            c
        })
        .collect())
}

/// Reconcile the two routes to L(s, χ̂_m) through degree deg m + n, and
/// check the degree bound deg < deg m when m is not a perfect n-th power.
pub fn lfun_hat_check(ctx: &CharCtx, m: &Poly) -> Result<Outcome> {
    let depth = m.deg().max(0) as usize + ctx.field().n() as usize;
    let brute = lfun_hat_brute(ctx, m, depth)?;
    let product = lfun_hat(ctx, m)?;
    let expanded = product.expand(depth as i64)?;
    if brute != expanded {
        return Ok(Outcome::fail(format!("{brute:?}"), format!("{expanded:?}")));
    }
    let parts = ctx.tables().parts(m)?;
    if !parts.powerfree.is_one() {
        // polynomial of degree < deg m
        let deg = product.num.max_exp().unwrap_or(0);
        if deg >= m.deg().max(1) {
            return Ok(Outcome::fail(
                format!("deg L-hat = {deg}"),
                format!("required < deg m = {}", m.deg()),
            ));
        }
    }
    Ok(Outcome::pass())
}

// ---------------------------------------------------------------------------
// functional equations
// ---------------------------------------------------------------------------

fn x_monomial(ctx: &CharCtx, c: CycNum, e: i64) -> UniRat<CycNum> {
    UniRat::new(
        UniPoly::term(c, e),
        UniPoly::term(CycNum::one(ctx.cyclo()), 0),
    )
}

/// The expanded functional equation for n-th-power-free m ≠ 1 with
/// deg m ≡ i (mod n):
///
/// i = 0:  L(s,χ_m) = q^{2s-1} |m̃|^{1/2-s} (g(1,ε,χ_m)/|m̃|^{1/2})
///                    · (1-q^{-s})/(1-q^{-(1-s)}) · L(1-s, χ̄_m)
/// i ≠ 0:  L(s,χ_m) = q^{2s-1} (q|m̃|)^{1/2-s} (τ̄(ε^i)/√q)
///                    · (g(1,ε,χ_m)/|m̃|^{1/2}) · L(1-s, χ̄_m)
pub fn lfun_fe_check(ctx: &CharCtx, m: &Poly) -> Result<Outcome> {
    let parts = ctx.tables().parts(m)?;
    if parts.powerfree != *m {
        return Err(crate::error::Error::NotPowerfree(m.to_string()));
    }
    assert!(!m.is_one(), "the functional equation needs m != 1");
    let cyclo = ctx.cyclo();
    let n = ctx.field().n();
    let i = (m.degree() as u32) % n;
    let dt = parts.squarefree.degree() as i64;
    let qinv = crate::series::build::q_pow(cyclo, -1);
    let one = CycNum::one(cyclo);

    let lhs = lfun(ctx, m, false)?;
    let l_reflected = lfun(ctx, m, true)?.substitute(&qinv, -1)?;
    let g = ctx.gauss_g(&Poly::one(), 1, m)?;
    // g / |m̃|^{1/2}
    let g_norm = g.mul(&CycNum::sqrt_q_pow(cyclo, -dt));
    // q^{2s-1} = q^{-1} x^{-2}
    let pref = x_monomial(ctx, qinv.clone(), -2);

    let rhs = if i == 0 {
        // |m̃|^{1/2-s} = √q^{dt} x^{dt}
        let cond = x_monomial(ctx, CycNum::sqrt_q_pow(cyclo, dt), dt);
        // (1-x) / (1 - q^{-1}x^{-1})
        let num = UniPoly::term(one.clone(), 0).sub(&UniPoly::term(one.clone(), 1));
        let den = UniPoly::term(one.clone(), 0).sub(&UniPoly::term(qinv.clone(), -1));
        let ratio = UniRat::new(num, den);
        pref.mul(&cond)
            .scale(&g_norm)
            .mul(&ratio)
            .mul(&l_reflected)
    } else {
        // (q|m̃|)^{1/2-s} = √q^{dt+1} x^{dt+1}
        let cond = x_monomial(ctx, CycNum::sqrt_q_pow(cyclo, dt + 1), dt + 1);
        // τ̄(ε^i)/√q
        let tau_norm = ctx
            .tau(i)
            .conjugate()
            .mul(&CycNum::sqrt_q_pow(cyclo, -1));
        pref.mul(&cond)
            .scale(&tau_norm.mul(&g_norm))
            .mul(&l_reflected)
    };
    Ok(Outcome::of(
        lhs.equal(&rhs),
        || format!("{lhs:?}"),
        || format!("{rhs:?}"),
    ))
}

/// The completed functional equation
/// L*(s,χ_m) = q^{2s-1} |cond χ_m|^{1/2-s} (g*(1,ε,χ_m)/|cond χ_m|^{1/2})
///             · L*(1-s, χ̄_m),
/// with L* = L/(1-q^{-s}) and |cond| = |m̃| for deg m ≡ 0 (mod n), and
/// L* = L, |cond| = q|m̃| otherwise.
pub fn lfun_fe_complete_check(ctx: &CharCtx, m: &Poly) -> Result<Outcome> {
    let parts = ctx.tables().parts(m)?;
    if parts.powerfree != *m {
        return Err(crate::error::Error::NotPowerfree(m.to_string()));
    }
    assert!(!m.is_one());
    let cyclo = ctx.cyclo();
    let n = ctx.field().n();
    let i = (m.degree() as u32) % n;
    let dt = parts.squarefree.degree() as i64;
    let qinv = crate::series::build::q_pow(cyclo, -1);
    let one = CycNum::one(cyclo);

    let complete = |l: UniRat<CycNum>, reflected: bool| -> Result<UniRat<CycNum>> {
        if i != 0 {
            return Ok(l);
        }
        // divide by 1 - q^{-s}, i.e. (1-x) or its reflection (1 - q^{-1}x^{-1})
        let factor = if reflected {
            UniPoly::term(one.clone(), 0).sub(&UniPoly::term(qinv.clone(), -1))
        } else {
            UniPoly::term(one.clone(), 0).sub(&UniPoly::term(one.clone(), 1))
        };
        Ok(UniRat::new(l.num, l.den.mul(&factor)))
    };

    let lhs = complete(lfun(ctx, m, false)?, false)?;
    let l_reflected = complete(lfun(ctx, m, true)?, false)?.substitute(&qinv, -1)?;
    // conductor degree: deg m̃, plus 1 for the ramified place at infinity
    let cond_deg = if i == 0 { dt } else { dt + 1 };
    let g_star = ctx.gauss_star(m)?;
    let g_norm = g_star.mul(&CycNum::sqrt_q_pow(cyclo, -cond_deg));
    let pref = x_monomial(ctx, qinv, -2);
    let cond = x_monomial(ctx, CycNum::sqrt_q_pow(cyclo, cond_deg), cond_deg);
    let rhs = pref.mul(&cond).scale(&g_norm).mul(&l_reflected);
    Ok(Outcome::of(
        lhs.equal(&rhs),
        || format!("{lhs:?}"),
        || format!("{rhs:?}"),
    ))
}

/// deg_x L(s, χ_m) = deg m̃ - 1 for n-th-power-free m ≠ 1.
pub fn lfun_degree_check(ctx: &CharCtx, m: &Poly) -> Result<Outcome> {
    let parts = ctx.tables().parts(m)?;
    let l = lfun(ctx, m, false)?;
    let deg = l.num.max_exp().unwrap_or(-1);
    let want = parts.squarefree.degree() as i64 - 1;
    Ok(Outcome::of(
        deg == want,
        || format!("deg L = {deg}"),
        || format!("deg m-tilde - 1 = {want}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, FieldCtx};

    fn cc(q: u64, n: u32) -> CharCtx {
        CharCtx::new(FieldCtx::new(q, n, None).unwrap(), 4)
    }

    fn p(ctx: &CharCtx, s: &str) -> Poly {
        parse_poly(ctx.field(), s).unwrap()
    }

    fn int(ctx: &CharCtx, v: i64) -> CycNum {
        CycNum::from_integer(ctx.cyclo(), v)
    }

    #[test]
    fn weight_a_examples() {
        let ctx = cc(5, 2);
        // a(1, m) = 1
        for s in ["t", "t^2", "t^3+t+1"] {
            assert!(weight_a(&ctx, &Poly::one(), &p(&ctx, s)).unwrap().is_one());
        }
        // n=2: a(t, t) = 0 (min = 1 odd)
        assert!(weight_a(&ctx, &p(&ctx, "t"), &p(&ctx, "t")).unwrap().is_zero());
        // n=2, q=5: a(t^2, t^2) = 5
        assert_eq!(
            weight_a(&ctx, &p(&ctx, "t^2"), &p(&ctx, "t^2")).unwrap(),
            int(&ctx, 5)
        );
    }

    #[test]
    fn weight_a_symmetric_small() {
        let ctx = cc(5, 2);
        for dd in 0..=3usize {
            for dm in 0..=3usize {
                for d in enumerate_monic(ctx.field(), dd) {
                    for m in enumerate_monic(ctx.field(), dm) {
                        assert_eq!(
                            weight_a(&ctx, &d, &m).unwrap(),
                            weight_a(&ctx, &m, &d).unwrap(),
                            "a({d},{m})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn weight_b_examples() {
        let ctx = cc(5, 2);
        // b(d, 1) = 1
        for s in ["1", "t", "t^2+1"] {
            assert!(weight_b(&ctx, &p(&ctx, s), &Poly::one()).unwrap().is_one());
        }
        // n=2, q=5: b(t, t^2) = -1 (third case, -|p|^{k/2-1} = -5^0)
        assert_eq!(
            weight_b(&ctx, &p(&ctx, "t"), &p(&ctx, "t^2")).unwrap(),
            int(&ctx, -1)
        );
        // n=3, q=7: b(t, t^2) = √7 (fourth case, |p|^{(k-1)/2})
        let ctx = cc(7, 3);
        assert_eq!(
            weight_b(&ctx, &p(&ctx, "t"), &p(&ctx, "t^2")).unwrap(),
            CycNum::sqrt_q(ctx.cyclo())
        );
    }

    #[test]
    fn lfun_examples() {
        let ctx = cc(5, 2);
        // m = 1: the zeta function 1/(1-qx)
        let z = lfun(&ctx, &Poly::one(), false).unwrap();
        assert!(z.equal(&zeta_o(&ctx)));
        // m = t: L = 1
        let l = lfun(&ctx, &p(&ctx, "t"), false).unwrap();
        assert!(l.equal(&UniRat::new(
            UniPoly::term(int(&ctx, 1), 0),
            UniPoly::term(int(&ctx, 1), 0)
        )));
        // m = t(t+1): L = 1 - x
        let l = lfun(&ctx, &p(&ctx, "t^2+t"), false).unwrap();
        let want = UniRat::new(
            UniPoly::from_coeffs(vec![int(&ctx, 1), int(&ctx, -1)]),
            UniPoly::term(int(&ctx, 1), 0),
        );
        assert!(l.equal(&want));
    }

    #[test]
    fn euler_p_examples() {
        let ctx = cc(5, 2);
        // squarefree m: P = 1
        for s in ["t", "t^2+t", "t^2+2"] {
            let pp = euler_p(&ctx, &p(&ctx, s)).unwrap();
            assert_eq!(pp, UniPoly::term(int(&ctx, 1), 0));
        }
        // m = t^2 (n=2, q=5): P_t = 1 - x + 5x^2
        let pp = euler_p(&ctx, &p(&ctx, "t^2")).unwrap();
        let want = UniPoly::from_coeffs(vec![int(&ctx, 1), int(&ctx, -1), int(&ctx, 5)]);
        assert_eq!(pp, want);
    }

    #[test]
    fn lfun_hat_examples() {
        let ctx = cc(5, 2);
        // m = 1: all weights are 1, recovering the zeta function
        assert!(lfun_hat(&ctx, &Poly::one()).unwrap().equal(&zeta_o(&ctx)));
        // m = t^2: zeta * (1 - x + 5x^2)
        let lh = lfun_hat(&ctx, &p(&ctx, "t^2")).unwrap();
        let want = UniRat::new(
            UniPoly::from_coeffs(vec![int(&ctx, 1), int(&ctx, -1), int(&ctx, 5)]),
            UniPoly::from_coeffs(vec![int(&ctx, 1), int(&ctx, -5)]),
        );
        assert!(lh.equal(&want));
        // both computation paths agree
        for s in ["1", "t", "t^2", "t^3", "t^2+t", "t^4"] {
            assert!(lfun_hat_check(&ctx, &p(&ctx, s)).unwrap().pass, "m = {s}");
        }
    }

    #[test]
    fn q_reflection_examples() {
        for (q, n) in [(5u64, 2u32), (7, 3)] {
            let ctx = cc(q, n);
            for s in ["t", "t^2", "t^3", "t^2+t"] {
                assert!(q_reflection_check(&ctx, &p(&ctx, s)).unwrap().pass);
            }
        }
        // squarefree m gives Q = P = 1
        let ctx = cc(5, 2);
        assert_eq!(
            euler_q(&ctx, &p(&ctx, "t^2+t")).unwrap(),
            UniPoly::term(int(&ctx, 1), 0)
        );
    }

    #[test]
    fn functional_equation_spot_checks() {
        let ctx = cc(5, 2);
        // m = t: both sides are the constant 1
        assert!(lfun_fe_check(&ctx, &p(&ctx, "t")).unwrap().pass);
        // m = t(t+1): L = 1 - x
        assert!(lfun_fe_check(&ctx, &p(&ctx, "t^2+t")).unwrap().pass);
        assert!(lfun_fe_complete_check(&ctx, &p(&ctx, "t")).unwrap().pass);
        assert!(lfun_fe_complete_check(&ctx, &p(&ctx, "t^2+t")).unwrap().pass);
        assert!(lfun_degree_check(&ctx, &p(&ctx, "t^2+t")).unwrap().pass);
        // power-free precondition
        assert!(lfun_fe_check(&ctx, &p(&ctx, "t^2")).is_err());
    }

    #[test]
    fn functional_equation_spot_checks_cubic() {
        let ctx = cc(7, 3);
        for s in ["t", "t+1", "t^2", "t^2+1", "t^2+t"] {
            assert!(lfun_fe_check(&ctx, &p(&ctx, s)).unwrap().pass, "m = {s}");
            assert!(
                lfun_fe_complete_check(&ctx, &p(&ctx, s)).unwrap().pass,
                "m = {s} complete"
            );
        }
    }
}
