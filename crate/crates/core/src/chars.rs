//! Characters and Gauss sums over F_q[t].
//!
//! This module fixes, once per (q, n) configuration:
//!
//! * the multiplicative character χ: F_q^× → μ_n, a ↦ a^{(q-1)/n};
//! * an embedding ε of μ_n(F_q) into Q(ζ_N), sending
//!   generator^{(q-1)/n} ↦ ζ_N^{N/n};
//! * the additive character e of the completion at infinity, pinned to
//!   e(y) = ζ_q^c where c is the t^{-1} coefficient of the expansion of y
//!   in descending powers of t (so e is trivial exactly on polynomials);
//! * the n-th power residue symbol (d/m), computed per prime factor of m by
//!   modular exponentiation, with prime exponents acting mod n (a prime
//!   whose exponent in m is divisible by n contributes trivially, so the
//!   symbol attached to m agrees with the one attached to its n-th
//!   powerfree part and vanishes exactly on gcd(d, m̃) ≠ 1);
//! * the polynomial Gauss sums g(r, ε^i, χ_c) and finite-field Gauss sums
//!   τ(ε^i), both by direct summation.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::cyclo::{CycCtx, CycNum};
use crate::error::{Error, Result};
use crate::poly::{FieldCtx, Poly, PolyTables};

/// Residues per degree admitted into the eager per-prime symbol tables;
/// above this the symbol falls back to modular exponentiation.
const TABLE_RESIDUE_BUDGET: u64 = 4_000_000;

/// Everything needed to evaluate characters at a fixed (q, n): field and
/// cyclotomic contexts, factorization tables, the ε-embedding, per-prime
/// symbol tables, and the cached finite-field Gauss sums.
pub struct CharCtx {
    field: Arc<FieldCtx>,
    cyclo: Arc<CycCtx>,
    tables: PolyTables,
    /// discrete log in μ_n with base generator^{(q-1)/n}, indexed by field
    /// element; None off μ_n
    mu_dlog: Vec<Option<u32>>,
    /// per-prime symbol tables: prime code -> (residue code -> dlog of the
    /// symbol, SYM_ZERO for the zero residue)
    symbol_tables: HashMap<u64, Vec<u8>>,
    /// τ(ε^i) for i = 1..n
    taus: Vec<CycNum>,
}

const SYM_ZERO: u8 = u8::MAX;

impl CharCtx {
    /// Build the context with factorization and symbol tables covering
    /// moduli up to `max_deg`.
    pub fn new(field: Arc<FieldCtx>, max_deg: usize) -> Self {
        let q = field.q();
        let n = field.n();
        let cyclo = CycCtx::new(q, n);
        let tables = PolyTables::new(field.clone(), max_deg);

        let eps_base = field.pow(field.generator(), (q - 1) / n as u64);
        let mut mu_dlog = vec![None; q as usize];
        let mut v = 1u64;
        for i in 0..n {
            mu_dlog[v as usize] = Some(i);
            v = field.mul(v, eps_base);
        }
        debug_assert_eq!(v, 1, "embedded subgroup does not have order n");

        let mut ctx = CharCtx {
            field,
            cyclo,
            tables,
            mu_dlog,
            symbol_tables: HashMap::new(),
            taus: Vec::new(),
        };
        ctx.build_symbol_tables(max_deg);
        ctx.taus = (1..n).map(|i| ctx.compute_tau(i)).collect();
        ctx
    }

    fn build_symbol_tables(&mut self, max_deg: usize) {
        let q = self.field.q();
        let mut budget = TABLE_RESIDUE_BUDGET;
        for d in 1..=max_deg {
            let primes = self.tables.irreducibles(d);
            let cost = (primes.len() as u64).saturating_mul(q.pow(d as u32));
            if cost > budget {
                break;
            }
            budget -= cost;
            let built: Vec<(u64, Vec<u8>)> = primes
                .par_iter()
                .map(|p| {
                    let size = q.pow(d as u32) as usize;
                    let mut table = vec![SYM_ZERO; size];
                    for (rcode, slot) in table.iter_mut().enumerate().skip(1) {
                        let r = Poly::from_code(rcode as u64, q);
                        *slot = self.symbol_dlog_modexp(&r, p) as u8;
                    }
                    (p.code(q), table)
                })
                .collect();
            self.symbol_tables.extend(built);
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn cyclo(&self) -> &Arc<CycCtx> {
        &self.cyclo
    }

    pub fn tables(&self) -> &PolyTables {
        &self.tables
    }

    /// χ on constants: a ↦ a^{(q-1)/n} ∈ μ_n, with zero mapped to None.
    pub fn chi_const(&self, a: u64) -> Option<u64> {
        let q = self.field.q();
        if a % q == 0 {
            None
        } else {
            Some(self.field.pow(a, (q - 1) / self.field.n() as u64))
        }
    }

    /// Discrete log of a μ_n element with respect to the embedding base.
    pub fn mu_dlog(&self, a: u64) -> Option<u32> {
        self.mu_dlog[(a % self.field.q()) as usize]
    }

    /// ε^t as an exact root of unity ζ_N^{tN/n}.
    pub fn eps_cyc(&self, t: u32) -> CycNum {
        let step = self.cyclo.conductor() as i64 / self.field.n() as i64;
        CycNum::zeta_pow(&self.cyclo, t as i64 * step)
    }

    /// Symbol of a residue r modulo a monic irreducible p, as a discrete
    /// log in 0..n: r^{(|p|-1)/n} mod p, a constant in μ_n.
    fn symbol_dlog_modexp(&self, r: &Poly, p: &Poly) -> u32 {
        let q = self.field.q();
        let e = (q.pow(p.degree() as u32) - 1) / self.field.n() as u64;
        let s = self.field.poly_powmod(r, e, p);
        assert!(s.deg() <= 0, "symbol power is not a constant");
        self.mu_dlog(s.coeff(0))
            .expect("symbol power lies outside mu_n")
    }

    /// (d/p) for monic irreducible p, as Some(dlog) or None when p | d.
    pub fn prime_symbol_dlog(&self, d: &Poly, p: &Poly) -> Option<u32> {
        let q = self.field.q();
        let r = self.field.poly_rem(d, p);
        if r.is_zero() {
            return None;
        }
        if let Some(table) = self.symbol_tables.get(&p.code(q)) {
            match table[r.code(q) as usize] {
                SYM_ZERO => unreachable!("nonzero residue flagged zero"),
                t => Some(t as u32),
            }
        } else {
            Some(self.symbol_dlog_modexp(&r, p))
        }
    }

    /// The eager symbol table for p, if one was built.
    pub fn symbol_table(&self, p: &Poly) -> Option<&[u8]> {
        self.symbol_tables
            .get(&p.code(self.field.q()))
            .map(|t| t.as_slice())
    }

    /// (r/p) for a residue already reduced mod p, given by its base-q code.
    pub fn prime_symbol_dlog_code(&self, rcode: u64, p: &Poly) -> Option<u32> {
        if rcode == 0 {
            return None;
        }
        if let Some(table) = self.symbol_tables.get(&p.code(self.field.q())) {
            Some(table[rcode as usize] as u32)
        } else {
            let r = Poly::from_code(rcode, self.field.q());
            Some(self.symbol_dlog_modexp(&r, p))
        }
    }

    /// The n-th power residue symbol (d/m) as a discrete log in 0..n, or
    /// None when it vanishes. Prime exponents act mod n, so the symbol
    /// vanishes exactly when gcd(d, m̃) ≠ 1.
    pub fn symbol_dlog(&self, d: &Poly, m: &Poly) -> Result<Option<u32>> {
        if m.is_zero() || !m.is_monic() {
            return Err(Error::NotMonic(m.to_string()));
        }
        let n = self.field.n();
        let fact = self.tables.factorize(m)?;
        let mut acc = 0u32;
        for (p, e) in &fact.factors {
            let er = e % n;
            if er == 0 {
                continue;
            }
            match self.prime_symbol_dlog(d, p) {
                None => return Ok(None),
                Some(t) => acc = (acc + er * t) % n,
            }
        }
        Ok(Some(acc))
    }

    /// (d/m) embedded into Q(ζ_N); completely multiplicative in both
    /// arguments on coprime pairs.
    pub fn residue_symbol(&self, d: &Poly, m: &Poly) -> Result<CycNum> {
        Ok(match self.symbol_dlog(d, m)? {
            None => CycNum::zero(&self.cyclo),
            Some(t) => self.eps_cyc(t),
        })
    }

    /// e(num/den): ζ_q raised to the t^{-1} coefficient of the expansion of
    /// num/den in descending powers of t. Trivial precisely on polynomials.
    pub fn additive_e(&self, num: &Poly, den: &Poly) -> Result<CycNum> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let rem = self.field.poly_rem(num, den);
        let top = rem.coeff(den.degree().wrapping_sub(1));
        let c = if den.degree() == 0 {
            0
        } else {
            self.field.mul(top, self.field.inv(den.leading()))
        };
        Ok(self.zeta_q_pow(c))
    }

    /// ζ_q^c inside Q(ζ_N).
    pub fn zeta_q_pow(&self, c: u64) -> CycNum {
        let step = self.cyclo.conductor() as i64 / self.field.q() as i64;
        CycNum::zeta_pow(&self.cyclo, (c % self.field.q()) as i64 * step)
    }

    /// The Gauss sum g(r, ε^i, χ_c) = Σ_{y mod c̃} ε^i((y/c)) e(ry/c̃),
    /// summed over all q^{deg c̃} residues. g(·, ·, χ_1) = 1.
    pub fn gauss_g(&self, r: &Poly, i: u32, c: &Poly) -> Result<CycNum> {
        if c.is_zero() || !c.is_monic() {
            return Err(Error::NotMonic(c.to_string()));
        }
        assert!(i >= 1 && i < self.field.n(), "character power out of range");
        let parts = self.tables.parts(c)?;
        let c0 = &parts.powerfree;
        let ctilde = &parts.squarefree;
        let q = self.field.q();
        let n = self.field.n();
        let nn = self.cyclo.conductor();
        let eps_step = nn / n as u64;
        let q_step = nn / q;

        if ctilde.is_one() {
            // single residue y = 0; the symbol (0/c) is the empty product 1
            return Ok(CycNum::one(&self.cyclo));
        }

        let dt = ctilde.degree();
        let count = q.pow(dt as u32);
        // accumulate exponent classes of ζ_N, one reduction at the end
        let mut weights = vec![0i128; nn as usize];
        for ycode in 0..count {
            let y = Poly::from_code(ycode, q);
            let Some(t) = self.symbol_dlog(&y, c0)? else {
                continue;
            };
            let ry = self.field.poly_rem(&self.field.poly_mul(r, &y), ctilde);
            let b = ry.coeff(dt - 1);
            let exp = ((t as u64 * i as u64) % n as u64 * eps_step + b * q_step) % nn;
            weights[exp as usize] += 1;
        }
        Ok(CycNum::from_zeta_counts(&self.cyclo, &weights))
    }

    fn compute_tau(&self, i: u32) -> CycNum {
        let q = self.field.q();
        let n = self.field.n() as u64;
        let nn = self.cyclo.conductor();
        let eps_step = nn / n;
        let q_step = nn / q;
        let mut weights = vec![0i128; nn as usize];
        for j in 1..q {
            let chi = self.chi_const(j).expect("nonzero");
            let t = self.mu_dlog(chi).expect("chi lands in mu_n") as u64;
            let exp = ((t * i as u64) % n * eps_step + j * q_step) % nn;
            weights[exp as usize] += 1;
        }
        CycNum::from_zeta_counts(&self.cyclo, &weights)
    }

    /// τ(ε^i) = Σ_{j ∈ F_q} ε^i(χ(j)) e_0(j), for 1 <= i < n.
    pub fn tau(&self, i: u32) -> &CycNum {
        assert!(i >= 1 && i < self.field.n(), "character power out of range");
        &self.taus[(i - 1) as usize]
    }

    /// The normalized Gauss sum appearing in the completed functional
    /// equation: g(1, ε, χ_m) when deg m ≡ 0 (mod n), and τ̄(ε^i)·g(1, ε, χ_m)
    /// when deg m ≡ i ≢ 0.
    pub fn gauss_star(&self, m: &Poly) -> Result<CycNum> {
        let parts = self.tables.parts(m)?;
        if parts.powerfree != *m {
            return Err(Error::NotPowerfree(m.to_string()));
        }
        if m.is_one() {
            return Ok(CycNum::one(&self.cyclo));
        }
        let g = self.gauss_g(&Poly::one(), 1, m)?;
        let i = (m.degree() as u32) % self.field.n();
        if i == 0 {
            Ok(g)
        } else {
            Ok(self.tau(i).conjugate().mul(&g))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{enumerate_monic, parse_poly};

    fn cc(q: u64, n: u32) -> CharCtx {
        CharCtx::new(FieldCtx::new(q, n, None).unwrap(), 4)
    }

    fn p(ctx: &CharCtx, s: &str) -> Poly {
        parse_poly(ctx.field(), s).unwrap()
    }

    #[test]
    fn chi_const_examples() {
        let ctx = cc(5, 2);
        assert_eq!(ctx.chi_const(2), Some(4)); // 2^2 = 4 = -1 mod 5
        assert_eq!(ctx.chi_const(1), Some(1));
        assert_eq!(ctx.chi_const(0), None);
    }

    #[test]
    fn residue_symbol_examples() {
        let ctx = cc(5, 2);
        let minus_one = CycNum::from_integer(ctx.cyclo(), -1);
        // (t+2 / t): (t+2) mod t = 2, 2^2 = -1
        assert_eq!(
            ctx.residue_symbol(&p(&ctx, "t+2"), &p(&ctx, "t")).unwrap(),
            minus_one
        );
        // (d / 1) = 1 always
        for s in ["t", "t^3+2t+1", "0"] {
            assert!(ctx
                .residue_symbol(&p(&ctx, s), &Poly::one())
                .unwrap()
                .is_one());
        }
        // (t / t+1) = (t+1 / t) = 1
        assert!(ctx
            .residue_symbol(&p(&ctx, "t"), &p(&ctx, "t+1"))
            .unwrap()
            .is_one());
        assert!(ctx
            .residue_symbol(&p(&ctx, "t+1"), &p(&ctx, "t"))
            .unwrap()
            .is_one());
        // vanishes exactly on gcd(d, m̃) ≠ 1
        assert!(ctx
            .residue_symbol(&p(&ctx, "t"), &p(&ctx, "t"))
            .unwrap()
            .is_zero());
        assert!(ctx
            .residue_symbol(&p(&ctx, "t"), &p(&ctx, "t^3"))
            .unwrap()
            .is_zero());
        // exponents divisible by n contribute trivially, even at shared
        // primes: the symbol mod t^2 is the symbol mod its powerfree part 1
        let m = p(&ctx, "t^2");
        assert!(ctx.residue_symbol(&p(&ctx, "t+1"), &m).unwrap().is_one());
        assert!(ctx.residue_symbol(&p(&ctx, "t"), &m).unwrap().is_one());
    }

    #[test]
    fn additive_character_examples() {
        let ctx = cc(5, 2);
        let zeta5 = ctx.zeta_q_pow(1);
        // e(1/t) = ζ_q
        assert_eq!(
            ctx.additive_e(&Poly::one(), &p(&ctx, "t")).unwrap(),
            zeta5
        );
        // e(f) = 1 for any polynomial f
        for s in ["0", "3", "t^2+1", "4t^3"] {
            assert!(ctx.additive_e(&p(&ctx, s), &Poly::one()).unwrap().is_one());
        }
        // e(y/t) = ζ_5^y for constants y
        for y in 0..5u64 {
            assert_eq!(
                ctx.additive_e(&Poly::constant(y), &p(&ctx, "t")).unwrap(),
                ctx.zeta_q_pow(y)
            );
        }
        // nontrivial on 1/t: the conductor shadow of {y : e trivial on yO} = O
        assert!(!ctx.additive_e(&Poly::one(), &p(&ctx, "t")).unwrap().is_one());
        assert!(ctx.additive_e(&Poly::one(), &Poly::zero()).is_err());
    }

    #[test]
    fn gauss_sum_examples() {
        let ctx = cc(5, 2);
        let one = Poly::one();
        // g(1, ε, χ_t) = Σ_y (y|5) ζ_5^y = √5
        assert_eq!(
            ctx.gauss_g(&one, 1, &p(&ctx, "t")).unwrap(),
            CycNum::sqrt_q(ctx.cyclo())
        );
        // empty modulus
        assert!(ctx.gauss_g(&one, 1, &one).unwrap().is_one());
        // |g(1, ε, χ_p)|^2 = |p| for irreducible p
        for (s, norm) in [("t", 5), ("t+1", 5), ("t^2+2", 25)] {
            let g = ctx.gauss_g(&one, 1, &p(&ctx, s)).unwrap();
            assert_eq!(g.abs_square(), CycNum::from_integer(ctx.cyclo(), norm));
        }
    }

    #[test]
    fn tau_examples() {
        let ctx = cc(5, 2);
        assert_eq!(ctx.tau(1), &CycNum::sqrt_q(ctx.cyclo()));
        assert_eq!(
            ctx.tau(1).abs_square(),
            CycNum::from_integer(ctx.cyclo(), 5)
        );
        let ctx = cc(7, 3);
        for i in 1..=2 {
            assert_eq!(
                ctx.tau(i).mul(&ctx.tau(i).conjugate()),
                CycNum::from_integer(ctx.cyclo(), 7)
            );
        }
    }

    #[test]
    fn gauss_star_examples() {
        let ctx = cc(5, 2);
        // deg t = 1 ≡ 1 (mod 2): τ̄(ε)·g(1,ε,χ_t) = √5·√5 = 5
        assert_eq!(
            ctx.gauss_star(&p(&ctx, "t")).unwrap(),
            CycNum::from_integer(ctx.cyclo(), 5)
        );
        assert!(ctx.gauss_star(&Poly::one()).unwrap().is_one());
        // deg ≡ 0 branch coincides with the plain Gauss sum
        let m = p(&ctx, "t^2+1"); // = (t+2)(t+3), squarefree of degree 2
        assert_eq!(
            ctx.gauss_star(&m).unwrap(),
            ctx.gauss_g(&Poly::one(), 1, &m).unwrap()
        );
        assert!(ctx.gauss_star(&p(&ctx, "t^2")).is_err());
    }

    #[test]
    fn prime_power_symbol_collapse() {
        // g(1, ε, χ_{p^i}) = g(1, ε^i, χ_p) for 1 <= i < n
        for (q, n) in [(5u64, 2u32), (7, 3)] {
            let ctx = cc(q, n);
            let one = Poly::one();
            for d in 1..=2usize {
                for prime in ctx.tables().irreducibles(d).to_vec() {
                    let mut power = prime.clone();
                    for i in 1..n {
                        assert_eq!(
                            ctx.gauss_g(&one, 1, &power).unwrap(),
                            ctx.gauss_g(&one, i, &prime).unwrap(),
                            "prime {prime}, power {i}"
                        );
                        power = ctx.field().poly_mul(&power, &prime);
                    }
                }
            }
        }
    }

    #[test]
    fn reciprocity_small() {
        for (q, n) in [(5u64, 2u32), (7, 3)] {
            let ctx = cc(q, n);
            for dm in 1..=2usize {
                for dd in 1..=2usize {
                    for m in enumerate_monic(ctx.field(), dm) {
                        for d in enumerate_monic(ctx.field(), dd) {
                            if !ctx.field().poly_gcd(&m, &d).is_one() {
                                continue;
                            }
                            assert_eq!(
                                ctx.symbol_dlog(&d, &m).unwrap(),
                                ctx.symbol_dlog(&m, &d).unwrap(),
                                "({d}/{m}) vs ({m}/{d}) at q={q}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_small() {
        // Σ_{deg d = k} (d/m) = 0 for deg m <= k, m not a perfect n-th power
        for (q, n) in [(5u64, 2u32), (7, 3)] {
            let ctx = cc(q, n);
            for dm in 0..=2usize {
                for m in enumerate_monic(ctx.field(), dm) {
                    let is_power = ctx.tables().parts(&m).unwrap().powerfree.is_one();
                    for k in dm..=3 {
                        let mut acc = vec![0i64; n as usize];
                        let mut zero_count = 0;
                        for d in enumerate_monic(ctx.field(), k) {
                            match ctx.symbol_dlog(&d, &m).unwrap() {
                                Some(t) => acc[t as usize] += 1,
                                None => zero_count += 1,
                            }
                        }
                        let sum: CycNum = acc.iter().enumerate().fold(
                            CycNum::zero(ctx.cyclo()),
                            |s, (t, &c)| {
                                s.add(&ctx.eps_cyc(t as u32).scale(
                                    &num::BigRational::from_integer(num::BigInt::from(c)),
                                ))
                            },
                        );
                        if is_power {
                            assert_eq!(zero_count, 0);
                            assert!(!sum.is_zero());
                        } else {
                            assert!(sum.is_zero(), "m={m}, k={k}, q={q}");
                        }
                    }
                }
            }
        }
    }
}
