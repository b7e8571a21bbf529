//! Exact arithmetic in the cyclotomic field Q(ζ_N), N = lcm(4,n)·q.
//!
//! One ring holds every scalar the verification needs: the embedded n-th
//! roots of unity, values of additive characters of F_q, Gauss sums, and an
//! exact square root of q. Elements are rational coefficient vectors of
//! length φ(N) reduced modulo the N-th cyclotomic polynomial, so equality is
//! coefficientwise and all arithmetic is exact. No floating point appears
//! anywhere; a complex-embedding printer exists only for reports.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Context for Q(ζ_N): the conductor, the cyclotomic modulus Φ_N, and
/// reduction tables for powers of ζ_N.
pub struct CycCtx {
    q: u64,
    n: u32,
    conductor: u64,
    phi: usize,
    /// Φ_N as integer coefficients, low degree first, monic, length phi+1.
    modulus: Vec<BigInt>,
    /// ζ_N^j reduced mod Φ_N, for 0 <= j < N (covers conjugation and the
    /// tails of products, since 2(φ(N)-1) < N here).
    power_table: Vec<Vec<BigInt>>,
    sqrt_q: OnceLock<Vec<BigRational>>,
}

impl fmt::Debug for CycCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycCtx")
            .field("q", &self.q)
            .field("n", &self.n)
            .field("conductor", &self.conductor)
            .field("phi", &self.phi)
            .finish()
    }
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

fn lcm64(a: u64, b: u64) -> u64 {
    a / gcd64(a, b) * b
}

/// Squarefree divisors of m with their Möbius signs.
fn squarefree_divisors(m: u64) -> Vec<(u64, i32)> {
    let mut primes = Vec::new();
    let mut rest = m;
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            primes.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let mut div = 1u64;
        let mut sign = 1i32;
        for (i, &p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                div *= p;
                sign = -sign;
            }
        }
        out.push((div, sign));
    }
    out
}

fn euler_phi(m: u64) -> u64 {
    let mut out = m;
    let mut rest = m;
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            out = out / d * (d - 1);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        out = out / rest * (rest - 1);
    }
    out
}

// --- dense integer polynomial helpers for building Φ_N ---

fn zpoly_trim(v: &mut Vec<BigInt>) {
    while v.last().map(|c| c.is_zero()) == Some(true) {
        v.pop();
    }
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

/// Exact division of integer polynomials (panics if not exact, which cannot
/// happen for the cyclotomic products used here).
fn zpoly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    zpoly_trim(&mut rem);
    let mut den = den.to_vec();
    zpoly_trim(&mut den);
    let dlead = den.last().expect("division by zero polynomial").clone();
    assert!(rem.len() >= den.len());
    let mut quot = vec![BigInt::zero(); rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = rem[k + den.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let f = &top / &dlead;
        assert!((&f * &dlead - &top).is_zero(), "inexact polynomial division");
        quot[k] = f.clone();
        for (j, cb) in den.iter().enumerate() {
            let delta = &f * cb;
            rem[k + j] -= delta;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Φ_m by the Möbius product Π_{d|m} (x^{m/d} - 1)^{μ(d)}.
fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut num: Vec<BigInt> = vec![BigInt::one()];
    let mut den: Vec<BigInt> = vec![BigInt::one()];
    for (d, sign) in squarefree_divisors(m) {
        let e = (m / d) as usize;
        let mut factor = vec![BigInt::zero(); e + 1];
        factor[0] = -BigInt::one();
        factor[e] = BigInt::one();
        if sign == 1 {
            num = zpoly_mul(&num, &factor);
        } else {
            den = zpoly_mul(&den, &factor);
        }
    }
    zpoly_div_exact(&num, &den)
}

impl CycCtx {
    /// Context for the verification field at (q, n): N = lcm(4, n)·q.
    pub fn new(q: u64, n: u32) -> Arc<Self> {
        let conductor = lcm64(4, n as u64) * q;
        let modulus = cyclotomic_polynomial(conductor);
        let phi = modulus.len() - 1;
        debug_assert_eq!(phi as u64, euler_phi(conductor));
        // power_table[j] = ζ^j mod Φ: shift and fold the leading term using
        // x^phi = -(lower part of Φ).
        let mut power_table: Vec<Vec<BigInt>> = Vec::with_capacity(conductor as usize);
        for j in 0..conductor as usize {
            if j < phi {
                let mut row = vec![BigInt::zero(); phi];
                row[j] = BigInt::one();
                power_table.push(row);
            } else {
                let prev = &power_table[j - 1];
                let mut row = vec![BigInt::zero(); phi];
                let top = prev[phi - 1].clone();
                for k in 1..phi {
                    row[k] = prev[k - 1].clone();
                }
                if !top.is_zero() {
                    for k in 0..phi {
                        row[k] -= &top * &modulus[k];
                    }
                }
                power_table.push(row);
            }
        }
        Arc::new(CycCtx {
            q,
            n,
            conductor,
            phi,
            modulus,
            power_table,
            sqrt_q: OnceLock::new(),
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The conductor N of the ambient cyclotomic field.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree φ(N) of the field over Q.
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// Exact element of Q(ζ_N), stored as the canonical residue mod Φ_N.
#[derive(Clone)]
pub struct CycNum {
    ctx: Arc<CycCtx>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self.pretty())
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl CycNum {
    pub fn ctx(&self) -> &Arc<CycCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn zero(ctx: &Arc<CycCtx>) -> Self {
        CycNum {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.phi],
        }
    }

    pub fn one(ctx: &Arc<CycCtx>) -> Self {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_rational(ctx: &Arc<CycCtx>, r: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); ctx.phi];
        coeffs[0] = r;
        CycNum {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_integer(ctx: &Arc<CycCtx>, v: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(BigInt::from(v)))
    }

    /// ζ_N^k for any integer k (negative exponents wrap around).
    pub fn zeta_pow(ctx: &Arc<CycCtx>, k: i64) -> Self {
        let e = k.rem_euclid(ctx.conductor as i64) as usize;
        let coeffs = ctx.power_table[e]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        CycNum {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Σ weights[g]·ζ^g for a full vector of N rational weights. This is the
    /// bridge from "group algebra" accumulators (used by the summation
    /// kernels) to canonical field elements: one reduction pass instead of a
    /// ring multiplication per term.
    pub fn from_zeta_weights(ctx: &Arc<CycCtx>, weights: &[BigRational]) -> Self {
        assert_eq!(weights.len(), ctx.conductor as usize);
        let mut coeffs = vec![BigRational::zero(); ctx.phi];
        for (g, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (k, c) in ctx.power_table[g].iter().enumerate() {
                if !c.is_zero() {
                    coeffs[k] += w * c;
                }
            }
        }
        CycNum {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Integer-weight variant of `from_zeta_weights`.
    pub fn from_zeta_counts(ctx: &Arc<CycCtx>, counts: &[i128]) -> Self {
        let weights: Vec<BigRational> = counts
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Self::from_zeta_weights(ctx, &weights)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(r) if the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ctx.conductor, other.ctx.conductor);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ctx.conductor, other.ctx.conductor);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CycNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ctx.conductor, other.ctx.conductor);
        let phi = self.ctx.phi;
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = conv[..phi].to_vec();
        for (i, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (k, m) in self.ctx.power_table[i].iter().enumerate() {
                if !m.is_zero() {
                    coeffs[k] += c * m;
                }
            }
        }
        CycNum {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_N over Q. Φ_N is irreducible, so every nonzero element is a unit.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<BigRational> = self
            .ctx
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, _, t) = qpoly_ext_gcd(&modulus, &self.coeffs);
        // g is a nonzero constant (Φ_N irreducible, self nonzero mod Φ_N)
        assert_eq!(g.len(), 1, "cyclotomic modulus is not coprime to element");
        let ginv = g[0].recip();
        let mut coeffs: Vec<BigRational> = t.iter().map(|c| c * &ginv).collect();
        coeffs.resize(self.ctx.phi, BigRational::zero());
        Ok(CycNum {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// The field automorphism ζ_N -> ζ_N^{-1}; complex conjugation under any
    /// embedding sending ζ_N to a primitive root of unity.
    pub fn conjugate(&self) -> Self {
        let nn = self.ctx.conductor as usize;
        let mut coeffs = vec![BigRational::zero(); self.ctx.phi];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = (nn - k) % nn;
            for (i, m) in self.ctx.power_table[e].iter().enumerate() {
                if !m.is_zero() {
                    coeffs[i] += a * m;
                }
            }
        }
        CycNum {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// a · conj(a); rational for the Gauss sums this library manipulates.
    pub fn abs_square(&self) -> Self {
        self.mul(&self.conjugate())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycNum::one(&self.ctx);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Canonical exact √q: the quadratic Gauss sum Σ_{j mod q} (j|q) ζ_q^j,
    /// multiplied by -ζ_4 when q ≡ 3 (mod 4). Squares to q and is positive
    /// real under ζ_N -> e^{2πi/N}.
    pub fn sqrt_q(ctx: &Arc<CycCtx>) -> Self {
        let coeffs = ctx
            .sqrt_q
            .get_or_init(|| {
                let q = ctx.q;
                let zq_step = ctx.conductor / q;
                let mut gauss = CycNum::zero(ctx);
                for j in 1..q {
                    // Legendre symbol via Euler's criterion
                    let mut sym = 1u64;
                    let mut b = j % q;
                    let mut e = (q - 1) / 2;
                    while e > 0 {
                        if e & 1 == 1 {
                            sym = sym * b % q;
                        }
                        b = b * b % q;
                        e >>= 1;
                    }
                    let term = CycNum::zeta_pow(ctx, (zq_step * j) as i64);
                    gauss = if sym == 1 {
                        gauss.add(&term)
                    } else {
                        gauss.sub(&term)
                    };
                }
                if q % 4 == 3 {
                    let i_unit = CycNum::zeta_pow(ctx, ctx.conductor as i64 / 4);
                    gauss = gauss.mul(&i_unit).neg();
                }
                gauss.coeffs
            })
            .clone();
        CycNum {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// q^{e/2} as an exact element: rational for even e, a rational multiple
    /// of √q for odd e. Negative exponents allowed.
    pub fn sqrt_q_pow(ctx: &Arc<CycCtx>, e: i64) -> Self {
        let q = BigInt::from(ctx.q);
        let half = e.div_euclid(2);
        let rational = if half >= 0 {
            BigRational::from_integer(q.pow(half as u32))
        } else {
            BigRational::new(BigInt::one(), q.pow((-half) as u32))
        };
        if e.rem_euclid(2) == 0 {
            CycNum::from_rational(ctx, rational)
        } else {
            CycNum::sqrt_q(ctx).scale(&rational)
        }
    }

    /// Compact deterministic rendering: plain rationals, rational multiples
    /// of sqrt(q), or a polynomial in z = ζ_N.
    pub fn pretty(&self) -> String {
        if let Some(r) = self.as_rational() {
            return format_rational(&r);
        }
        // r·sqrt(q)?  x·sqrt(q) is rational iff x is a rational multiple.
        let sq = CycNum::sqrt_q(&self.ctx);
        if let Some(r) = self.mul(&sq).as_rational() {
            let r = r / BigRational::from_integer(BigInt::from(self.ctx.q));
            return format!("{}*sqrt({})", format_rational(&r), self.ctx.q);
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let coef = format_rational(&mag);
            match k {
                0 => out.push_str(&coef),
                _ => {
                    if mag.is_one() {
                        out.push_str(&format!("z^{k}"));
                    } else {
                        out.push_str(&format!("{coef}*z^{k}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// JSON form {"N": N, "coeffs": ["a/b", ...]} with exactly φ(N) entries.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.ctx.conductor,
            "coeffs": self.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(ctx: &Arc<CycCtx>, value: &serde_json::Value) -> Result<Self> {
        let nn = value
            .get("N")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Parse("missing N".into()))?;
        if nn != ctx.conductor {
            return Err(Error::Parse(format!(
                "conductor mismatch: {} vs {}",
                nn, ctx.conductor
            )));
        }
        let arr = value
            .get("coeffs")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("missing coeffs".into()))?;
        if arr.len() != ctx.phi {
            return Err(Error::Parse("coefficient count mismatch".into()));
        }
        let coeffs = arr
            .iter()
            .map(|v| {
                v.as_str()
                    .and_then(|s| s.parse::<BigRational>().ok())
                    .ok_or_else(|| Error::Parse("bad rational".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycNum {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    /// Approximate complex value under ζ_N -> e^{2πi/N}. Report printing
    /// only; never used in any verification path.
    pub fn approx_complex(&self) -> (f64, f64) {
        let nn = self.ctx.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rational_to_f64(c);
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / nn;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let num: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    num / den
}

// --- rational polynomial helpers for the inverse ---

fn qpoly_trim(v: &mut Vec<BigRational>) {
    while v.last().map(|c| c.is_zero()) == Some(true) {
        v.pop();
    }
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    qpoly_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let f = &top * &lead_inv;
        for (j, cb) in b.iter().enumerate() {
            let delta = &f * cb;
            rem[k + j] -= delta;
        }
        quot[k] = f;
    }
    qpoly_trim(&mut rem);
    (quot, rem)
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (k, c) in b.iter().enumerate() {
        out[k] -= c;
    }
    qpoly_trim(&mut out);
    out
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g.
fn qpoly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    qpoly_trim(&mut r0);
    qpoly_trim(&mut r1);
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = Vec::new();
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (quot, rem) = qpoly_divrem(&r0, &r1);
        let s2 = qpoly_sub(&s0, &qpoly_mul(&quot, &s1));
        let t2 = qpoly_sub(&t0, &qpoly_mul(&quot, &t1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx52() -> Arc<CycCtx> {
        CycCtx::new(5, 2)
    }

    fn ctx73() -> Arc<CycCtx> {
        CycCtx::new(7, 3)
    }

    #[test]
    fn conductor_and_degree() {
        let c = ctx52();
        assert_eq!(c.conductor(), 20);
        assert_eq!(c.phi(), 8);
        let c = ctx73();
        assert_eq!(c.conductor(), 84);
        assert_eq!(c.phi(), 24);
    }

    #[test]
    fn phi20_known_coefficients() {
        // Φ_20 = x^8 - x^6 + x^4 - x^2 + 1
        let m = cyclotomic_polynomial(20);
        let want: Vec<i64> = vec![1, 0, -1, 0, 1, 0, -1, 0, 1];
        assert_eq!(m, want.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn zeta_has_exact_order() {
        for ctx in [ctx52(), ctx73()] {
            let nn = ctx.conductor();
            let z = CycNum::zeta_pow(&ctx, 1);
            assert!(z.pow(nn as i64).unwrap().is_one());
            for p in [2u64, 3, 5, 7, 11, 13] {
                if nn % p == 0 {
                    assert!(
                        !z.pow((nn / p) as i64).unwrap().is_one(),
                        "order divides N/{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        // 1 + ζ_5 + ζ_5^2 + ζ_5^3 + ζ_5^4 = 0 inside Q(ζ_20)
        let ctx = ctx52();
        let mut acc = CycNum::zero(&ctx);
        for k in 0..5 {
            acc = acc.add(&CycNum::zeta_pow(&ctx, 4 * k));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn zeta_inverse_and_conjugate() {
        let ctx = ctx73();
        let nn = ctx.conductor() as i64;
        for k in [1i64, 5, 13] {
            let z = CycNum::zeta_pow(&ctx, k);
            let zinv = CycNum::zeta_pow(&ctx, nn - k);
            assert!(z.mul(&zinv).is_one());
            assert_eq!(z.conjugate(), zinv);
            assert!(z.abs_square().is_one());
        }
        assert!(CycNum::zero(&ctx).abs_square().is_zero());
    }

    #[test]
    fn sqrt_q_squares_to_q() {
        for (ctx, q) in [(ctx52(), 5i64), (ctx73(), 7i64)] {
            let s = CycNum::sqrt_q(&ctx);
            assert_eq!(s.mul(&s), CycNum::from_integer(&ctx, q));
            // positive real under the standard embedding
            let (re, im) = s.approx_complex();
            assert!(im.abs() < 1e-9 && (re - (q as f64).sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn sqrt_q_explicit_form_for_q5() {
        // ζ_5 - ζ_5^2 - ζ_5^3 + ζ_5^4 with ζ_5 = ζ_20^4
        let ctx = ctx52();
        let want = CycNum::zeta_pow(&ctx, 4)
            .sub(&CycNum::zeta_pow(&ctx, 8))
            .sub(&CycNum::zeta_pow(&ctx, 12))
            .add(&CycNum::zeta_pow(&ctx, 16));
        assert_eq!(CycNum::sqrt_q(&ctx), want);
    }

    #[test]
    fn sqrt_q_pow_cases() {
        let ctx = ctx73();
        let s = CycNum::sqrt_q(&ctx);
        assert_eq!(CycNum::sqrt_q_pow(&ctx, 2), CycNum::from_integer(&ctx, 7));
        assert_eq!(CycNum::sqrt_q_pow(&ctx, 3), s.mul(&s).mul(&s));
        let m1 = CycNum::sqrt_q_pow(&ctx, -1);
        assert!(m1.mul(&s).is_one());
        assert_eq!(CycNum::sqrt_q_pow(&ctx, 0), CycNum::one(&ctx));
    }

    #[test]
    fn json_roundtrip() {
        let ctx = ctx52();
        let x = CycNum::sqrt_q(&ctx).add(&CycNum::from_rational(
            &ctx,
            BigRational::new(BigInt::from(3), BigInt::from(2)),
        ));
        let json = x.to_json();
        assert_eq!(json["coeffs"].as_array().unwrap().len(), 8);
        assert_eq!(CycNum::from_json(&ctx, &json).unwrap(), x);
    }

    #[test]
    fn pretty_forms() {
        let ctx = ctx52();
        assert_eq!(CycNum::from_integer(&ctx, -3).pretty(), "-3");
        assert_eq!(CycNum::sqrt_q(&ctx).pretty(), "1*sqrt(5)");
        assert_eq!(
            CycNum::sqrt_q(&ctx)
                .scale(&BigRational::new(BigInt::from(1), BigInt::from(5)))
                .pretty(),
            "1/5*sqrt(5)"
        );
        assert_eq!(CycNum::zeta_pow(&ctx, 1).pretty(), "z^1");
    }

    fn arb_cycnum(ctx: Arc<CycCtx>) -> impl Strategy<Value = CycNum> {
        let phi = ctx.phi();
        proptest::collection::vec(-9i64..=9, phi).prop_map(move |v| {
            let coeffs = v
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect();
            CycNum {
                ctx: ctx.clone(),
                coeffs,
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn ring_laws(a in arb_cycnum(ctx52()), b in arb_cycnum(ctx52()), c in arb_cycnum(ctx52())) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
            prop_assert_eq!(a.sub(&a), CycNum::zero(a.ctx()));
        }

        #[test]
        fn field_inverse(a in arb_cycnum(ctx52())) {
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            } else {
                prop_assert!(a.inv().is_err());
            }
        }

        #[test]
        fn conjugation_is_ring_hom(a in arb_cycnum(ctx73()), b in arb_cycnum(ctx73())) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!(a.add(&b).conjugate(), a.conjugate().add(&b.conjugate()));
            prop_assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
        }
    }
}
