//! Arithmetic in the prime field F_q and the polynomial ring F_q[t].
//!
//! Everything downstream sums over monic polynomials, so this module provides
//! the ring operations, deterministic enumeration of monics, factorization
//! into monic irreducibles, and the derived parts of a monic polynomial
//! (n-th powerfree part, squarefree part, coprime part) that the series
//! definitions are built from.
//!
//! Polynomials are dense coefficient vectors, low degree first, with the
//! leading coefficient nonzero (the zero polynomial is the empty vector).
//! Norms are `|f| = q^deg f`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Context for a prime field F_q together with the character order n.
///
/// Requires q prime, q ≡ 1 (mod 2n) (needed for the reciprocity law), and a
/// generator of F_q^× (used to fix the embedding of the n-th roots of unity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    q: u64,
    n: u32,
    generator: u64,
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of m, ascending, without multiplicity.
fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

impl FieldCtx {
    /// Build a context, choosing the smallest primitive root when no
    /// generator is supplied.
    pub fn new(q: u64, n: u32, generator: Option<u64>) -> Result<Arc<Self>> {
        if !is_prime(q) {
            return Err(Error::InvalidConfig(format!("q = {q} is not prime")));
        }
        if n < 2 {
            return Err(Error::InvalidConfig(format!("n = {n} must be at least 2")));
        }
        if (q - 1) % (2 * n as u64) != 0 {
            return Err(Error::InvalidConfig(format!(
                "q = {q} is not congruent to 1 mod 2n = {}",
                2 * n
            )));
        }
        let generator = match generator {
            Some(g) => {
                let g = g % q;
                if !Self::is_primitive_root(q, g) {
                    return Err(Error::InvalidConfig(format!(
                        "{g} does not generate the multiplicative group of F_{q}"
                    )));
                }
                g
            }
            None => (2..q)
                .find(|&g| Self::is_primitive_root(q, g))
                .expect("every prime field has a primitive root"),
        };
        Ok(Arc::new(FieldCtx { q, n, generator }))
    }

    fn is_primitive_root(q: u64, g: u64) -> bool {
        if g == 0 {
            return false;
        }
        prime_factors(q - 1)
            .iter()
            .all(|&p| pow_mod(g, (q - 1) / p, q) != 1)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    // --- scalar arithmetic in F_q ---

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b % self.q) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.q - a % self.q) % self.q
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.q)
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.q != 0, "inverse of zero in F_q");
        pow_mod(a, self.q - 2, self.q)
    }

    /// Reduce a signed integer into 0..q.
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Dense polynomial over F_q, low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    /// Normalizing constructor: drops trailing zeros. Coefficients must
    /// already be reduced mod q.
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// The monomial c * t^k.
    pub fn monomial(c: u64, k: usize) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn constant(c: u64) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree of the polynomial; the zero polynomial has degree -1 by the
    /// convention used here (callers that care check `is_zero` first).
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Degree as usize; panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Base-q integer encoding Σ c_i q^i. Injective on reduced coefficient
    /// vectors; used as a compact cache key. Panics if the value would not
    /// fit in a u64.
    pub fn code(&self, q: u64) -> u64 {
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(q)
                .and_then(|v| v.checked_add(c))
                .expect("polynomial code overflow");
        }
        acc
    }

    /// Inverse of `code`.
    pub fn from_code(mut code: u64, q: u64) -> Self {
        let mut coeffs = Vec::new();
        while code > 0 {
            coeffs.push(code % q);
            code /= q;
        }
        Poly { coeffs }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                (_, _) => write!(f, "{c}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl FieldCtx {
    // --- polynomial ring operations ---

    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut out = vec![0u64; len];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.add(a.coeff(k), b.coeff(k));
        }
        Poly::new(out)
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut out = vec![0u64; len];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.sub(a.coeff(k), b.coeff(k));
        }
        Poly::new(out)
    }

    /// Schoolbook product; quadratic, which is ample at desk-scale degrees.
    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + ca * cb) % self.q;
            }
        }
        Poly::new(out)
    }

    pub fn poly_scale(&self, a: &Poly, c: u64) -> Poly {
        Poly::new(a.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    /// Euclidean division: a = quot * b + rem with deg rem < deg b.
    pub fn poly_divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_zero(), "division by the zero polynomial");
        if a.coeffs.len() < b.coeffs.len() {
            return (Poly::zero(), a.clone());
        }
        let lead_inv = self.inv(b.leading());
        let mut rem = a.coeffs.clone();
        let mut quot = vec![0u64; a.coeffs.len() - b.coeffs.len() + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + b.coeffs.len() - 1];
            if top == 0 {
                continue;
            }
            let f = self.mul(top, lead_inv);
            quot[k] = f;
            for (j, &cb) in b.coeffs.iter().enumerate() {
                rem[k + j] = self.sub(rem[k + j], self.mul(f, cb));
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly_divrem(a, b).1
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = self.inv(a.leading());
            self.poly_scale(&a, inv)
        }
    }

    pub fn poly_mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    /// a^e mod m by square-and-multiply.
    pub fn poly_powmod(&self, a: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.poly_rem(a, m);
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mulmod(&acc, &base, m);
            }
            base = self.poly_mulmod(&base, &base, m);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at a field element.
    pub fn poly_eval(&self, a: &Poly, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in a.coeffs.iter().rev() {
            acc = (acc * x + c) % self.q;
        }
        acc
    }

    /// Exact divisibility test.
    pub fn poly_divides(&self, d: &Poly, a: &Poly) -> bool {
        self.poly_rem(a, d).is_zero()
    }
}

/// Iterator over all monic polynomials of a fixed degree, in lexicographic
/// order on coefficient vectors with the constant term varying fastest.
/// Yields exactly q^deg polynomials.
pub fn enumerate_monic(ctx: &FieldCtx, deg: usize) -> impl Iterator<Item = Poly> {
    let q = ctx.q();
    let count = q
        .checked_pow(deg as u32)
        .expect("monic enumeration range overflow");
    (0..count).map(move |r| {
        let mut coeffs = Vec::with_capacity(deg + 1);
        let mut rest = r;
        for _ in 0..deg {
            coeffs.push(rest % q);
            rest /= q;
        }
        coeffs.push(1);
        Poly { coeffs }
    })
}

/// A complete factorization unit * Π p_i^{e_i} into monic irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    /// Distinct monic irreducible factors with exponents, ordered by
    /// (degree, code) for reproducible output.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiply the factorization back together.
    pub fn product(&self, ctx: &FieldCtx) -> Poly {
        let mut acc = Poly::constant(self.unit);
        for (p, e) in &self.factors {
            for _ in 0..*e {
                acc = ctx.poly_mul(&acc, p);
            }
        }
        acc
    }
}

/// The n-th powerfree part and the squarefree part of a monic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parts {
    /// Π p^(e mod n) over p^e exactly dividing m.
    pub powerfree: Poly,
    /// Π p over primes p dividing the powerfree part.
    pub squarefree: Poly,
}

/// Shared lookup tables for F_q[t]: monic irreducibles by degree and cached
/// factorizations. Construction is deterministic; the tables are immutable
/// afterwards and safe to share across threads.
#[derive(Debug)]
pub struct PolyTables {
    ctx: Arc<FieldCtx>,
    max_deg: usize,
    irreducibles: Vec<Vec<Poly>>,
    /// Factor lists indexed by polynomial code, for all monic m with
    /// deg m <= max_deg. Entries are (irreducible code, exponent).
    factor_cache: Vec<Vec<(u64, u32)>>,
}

impl PolyTables {
    pub fn new(ctx: Arc<FieldCtx>, max_deg: usize) -> Self {
        let irreducibles = build_irreducibles(&ctx, max_deg);
        let mut tables = PolyTables {
            ctx,
            max_deg,
            irreducibles,
            factor_cache: Vec::new(),
        };
        tables.build_factor_cache();
        tables
    }

    fn build_factor_cache(&mut self) {
        let q = self.ctx.q();
        let size = q.pow(self.max_deg as u32 + 1) as usize;
        // Sieve: mark every monic multiple of every irreducible. Each m
        // divisible by p is hit exactly once (at the cofactor m/p), so this
        // collects the distinct prime divisors; smaller-degree primes are
        // visited first, keeping the lists sorted by (degree, code).
        let mut cache: Vec<Vec<(u64, u32)>> = vec![Vec::new(); size];
        for d in 1..=self.max_deg {
            for p in &self.irreducibles[d] {
                let pcode = p.code(q);
                for fd in 0..=(self.max_deg - d) {
                    for f in enumerate_monic(&self.ctx, fd) {
                        let m = self.ctx.poly_mul(p, &f);
                        let entry = &mut cache[m.code(q) as usize];
                        if entry.last().map(|&(c, _)| c) != Some(pcode) {
                            entry.push((pcode, 0));
                        }
                    }
                }
            }
        }
        // Exponents by exact division.
        for (code, entry) in cache.iter_mut().enumerate() {
            if entry.is_empty() {
                continue;
            }
            let m = Poly::from_code(code as u64, q);
            if !m.is_monic() {
                entry.clear();
                continue;
            }
            let mut rest = m;
            for (pcode, e) in entry.iter_mut() {
                let p = Poly::from_code(*pcode, q);
                loop {
                    let (quot, rem) = self.ctx.poly_divrem(&rest, &p);
                    if rem.is_zero() {
                        rest = quot;
                        *e += 1;
                    } else {
                        break;
                    }
                }
            }
            debug_assert!(rest.is_one());
        }
        self.factor_cache = cache;
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    /// All monic irreducibles of the given degree, ascending code order.
    pub fn irreducibles(&self, deg: usize) -> &[Poly] {
        &self.irreducibles[deg]
    }

    pub fn is_irreducible(&self, p: &Poly) -> bool {
        !p.is_zero() && p.is_monic() && {
            let d = p.degree();
            let q = self.ctx.q();
            // lists are in ascending code order (from enumerate_monic)
            d <= self.max_deg
                && self.irreducibles[d]
                    .binary_search_by_key(&p.code(q), |f| f.code(q))
                    .is_ok()
        }
    }

    /// Complete factorization of a nonzero polynomial. Cached for monic
    /// inputs within the table bound; computed by trial division otherwise.
    pub fn factorize(&self, m: &Poly) -> Result<Factorization> {
        if m.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = m.leading();
        let monic = if unit == 1 {
            m.clone()
        } else {
            self.ctx.poly_scale(m, self.ctx.inv(unit))
        };
        if monic.is_one() {
            return Ok(Factorization {
                unit,
                factors: Vec::new(),
            });
        }
        let q = self.ctx.q();
        let factors = if monic.degree() <= self.max_deg {
            self.factor_cache[monic.code(q) as usize]
                .iter()
                .map(|&(pcode, e)| (Poly::from_code(pcode, q), e))
                .collect()
        } else {
            factor_by_trial_division(&self.ctx, &monic)
        };
        Ok(Factorization { unit, factors })
    }

    /// The n-th powerfree part m0 and squarefree part of a monic m.
    pub fn parts(&self, m: &Poly) -> Result<Parts> {
        if m.is_zero() || !m.is_monic() {
            return Err(Error::NotMonic(m.to_string()));
        }
        let n = self.ctx.n();
        let fact = self.factorize(m)?;
        let mut powerfree = Poly::one();
        let mut squarefree = Poly::one();
        for (p, e) in &fact.factors {
            let r = e % n;
            if r > 0 {
                for _ in 0..r {
                    powerfree = self.ctx.poly_mul(&powerfree, p);
                }
                squarefree = self.ctx.poly_mul(&squarefree, p);
            }
        }
        Ok(Parts {
            powerfree,
            squarefree,
        })
    }

    /// Strip from d every prime that divides m0, leaving the part of d
    /// relatively prime to m0.
    pub fn coprime_part(&self, d: &Poly, m0: &Poly) -> Poly {
        assert!(!d.is_zero() && !m0.is_zero());
        let mut out = d.clone();
        loop {
            let g = self.ctx.poly_gcd(&out, m0);
            if g.is_one() {
                return out;
            }
            out = self.ctx.poly_divrem(&out, &g).0;
        }
    }
}

fn build_irreducibles(ctx: &FieldCtx, max_deg: usize) -> Vec<Vec<Poly>> {
    let mut by_deg: Vec<Vec<Poly>> = vec![Vec::new(); max_deg + 1];
    for d in 1..=max_deg {
        let mut found = Vec::new();
        'cand: for cand in enumerate_monic(ctx, d) {
            for pd in 1..=d / 2 {
                for p in &by_deg[pd] {
                    if ctx.poly_divides(p, &cand) {
                        continue 'cand;
                    }
                }
            }
            found.push(cand);
        }
        by_deg[d] = found;
    }
    by_deg
}

/// Deterministic trial division against enumerated irreducibles, for inputs
/// beyond the table bound.
fn factor_by_trial_division(ctx: &FieldCtx, m: &Poly) -> Vec<(Poly, u32)> {
    let mut rest = m.clone();
    let mut factors = Vec::new();
    let mut d = 1usize;
    while !rest.is_one() {
        if d > rest.degree() / 2 {
            factors.push((rest.clone(), 1));
            break;
        }
        for p in enumerate_monic(ctx, d) {
            if rest.is_one() || d > rest.degree() / 2 {
                break;
            }
            // p is guaranteed irreducible here: all its smaller prime
            // factors would already have been divided out of `rest`.
            let mut e = 0u32;
            loop {
                let (quot, rem) = ctx.poly_divrem(&rest, &p);
                if rem.is_zero() {
                    rest = quot;
                    e += 1;
                } else {
                    break;
                }
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        d += 1;
    }
    factors.sort_by_key(|(p, _)| (p.degree(), p.code(ctx.q())));
    factors
}

/// Allocation-free helpers on raw coefficient slices (low degree first) for
/// the enumeration kernels. Divisors must be monic. Buffers are reused by
/// the callers, so after warmup these run without touching the allocator.
pub(crate) mod raw {
    /// Write the first monic of the given degree into the buffer.
    pub fn first_monic(buf: &mut Vec<u64>, deg: usize) {
        buf.clear();
        buf.resize(deg + 1, 0);
        buf[deg] = 1;
    }

    /// Advance to the next monic in enumeration order (constant term
    /// fastest); false once the range is exhausted.
    pub fn next_monic(buf: &mut [u64], q: u64) -> bool {
        let deg = buf.len() - 1;
        for c in buf.iter_mut().take(deg) {
            *c += 1;
            if *c < q {
                return true;
            }
            *c = 0;
        }
        false
    }

    /// If the monic p divides a exactly, replace nothing and return the
    /// quotient in `quot` (true); otherwise leave `quot` unspecified
    /// (false). `rem` is scratch.
    pub fn try_div_exact(
        a: &[u64],
        p: &[u64],
        q: u64,
        quot: &mut Vec<u64>,
        rem: &mut Vec<u64>,
    ) -> bool {
        if a.len() < p.len() {
            return false;
        }
        rem.clear();
        rem.extend_from_slice(a);
        quot.clear();
        quot.resize(a.len() - p.len() + 1, 0);
        for k in (0..quot.len()).rev() {
            let top = rem[k + p.len() - 1];
            if top != 0 {
                quot[k] = top;
                for (j, &pc) in p.iter().enumerate() {
                    rem[k + j] = (rem[k + j] + (q - pc) * top) % q;
                }
            }
        }
        rem[..p.len() - 1].iter().all(|&c| c == 0)
    }

    /// Base-q code of (a mod p); `rem` is scratch.
    pub fn rem_code(a: &[u64], p: &[u64], q: u64, rem: &mut Vec<u64>) -> u64 {
        rem.clear();
        rem.extend_from_slice(a);
        if rem.len() >= p.len() {
            for k in (0..=rem.len() - p.len()).rev() {
                let top = rem[k + p.len() - 1];
                if top != 0 {
                    rem[k + p.len() - 1] = 0;
                    for (j, &pc) in p.iter().enumerate().take(p.len() - 1) {
                        rem[k + j] = (rem[k + j] + (q - pc) * top) % q;
                    }
                }
            }
        }
        let digits = (p.len() - 1).min(rem.len());
        let mut code = 0u64;
        for i in (0..digits).rev() {
            code = code * q + rem[i];
        }
        code
    }
}

/// Parse a polynomial literal: either a human form like `t^3+2t+1` or a
/// comma-separated coefficient list low-to-high like `1,2,0,1`. Integer
/// coefficients are reduced mod q; negative coefficients are accepted.
pub fn parse_poly(ctx: &FieldCtx, input: &str) -> Result<Poly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial literal".into()));
    }
    if s.contains(',') {
        let coeffs = s
            .split(',')
            .map(|tok| {
                tok.parse::<i64>()
                    .map(|v| ctx.from_i64(v))
                    .map_err(|_| Error::Parse(format!("bad coefficient `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Poly::new(coeffs));
    }
    parse_human(ctx, &s)
}

fn parse_human(ctx: &FieldCtx, s: &str) -> Result<Poly> {
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut sign_neg = false;
    let mut i = 0;
    while i <= bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start) {
            if start < i {
                terms.push((sign_neg, &s[start..i]));
            }
            if i < bytes.len() {
                sign_neg = bytes[i] == b'-';
                start = i + 1;
            }
        } else if (bytes[i] == b'+' || bytes[i] == b'-') && i == start {
            // leading sign of the first term
            sign_neg = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    if terms.is_empty() {
        return Err(Error::Parse(format!("cannot parse polynomial `{s}`")));
    }
    let mut acc = Poly::zero();
    for (neg, term) in terms {
        let term = term.trim_matches('*');
        let (coef_str, exp) = match term.find('t') {
            None => (term, None),
            Some(pos) => {
                let coef = term[..pos].trim_end_matches('*');
                let rest = &term[pos + 1..];
                let exp = if rest.is_empty() {
                    1usize
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
                } else {
                    return Err(Error::Parse(format!("cannot parse term `{term}`")));
                };
                (coef, Some(exp))
            }
        };
        let coef = if coef_str.is_empty() {
            1i64
        } else {
            coef_str
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad coefficient `{coef_str}`")))?
        };
        let coef = ctx.from_i64(if neg { -coef } else { coef });
        let k = match exp {
            None => 0,
            Some(e) => e,
        };
        acc = ctx.poly_add(&acc, &Poly::monomial(coef, k));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx5() -> Arc<FieldCtx> {
        FieldCtx::new(5, 2, None).unwrap()
    }

    fn ctx7() -> Arc<FieldCtx> {
        FieldCtx::new(7, 3, None).unwrap()
    }

    fn p(ctx: &FieldCtx, s: &str) -> Poly {
        parse_poly(ctx, s).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(FieldCtx::new(6, 2, None).is_err());
        assert!(FieldCtx::new(7, 2, None).is_err()); // 7 != 1 mod 4
        assert!(FieldCtx::new(5, 2, Some(4)).is_err()); // 4 has order 2
        assert_eq!(FieldCtx::new(5, 2, None).unwrap().generator(), 2);
    }

    #[test]
    fn ring_ops() {
        let ctx = ctx5();
        // (t+2)(t+3) = t^2 + 1 over F_5
        let prod = ctx.poly_mul(&p(&ctx, "t+2"), &p(&ctx, "t+3"));
        assert_eq!(prod, p(&ctx, "t^2+1"));
        // a * 1 = a
        let a = p(&ctx, "3t^2+t+4");
        assert_eq!(ctx.poly_mul(&a, &Poly::one()), a);
        // division law
        let b = p(&ctx, "t+2");
        let (quot, rem) = ctx.poly_divrem(&a, &b);
        assert_eq!(ctx.poly_add(&ctx.poly_mul(&quot, &b), &rem), a);
        assert!(rem.deg() < b.deg());
        // gcd(t^2+1, t+2) = t+2 over F_5
        assert_eq!(ctx.poly_gcd(&p(&ctx, "t^2+1"), &p(&ctx, "t+2")), p(&ctx, "t+2"));
    }

    #[test]
    fn monic_enumeration() {
        let ctx = ctx5();
        let deg0: Vec<_> = enumerate_monic(&ctx, 0).collect();
        assert_eq!(deg0, vec![Poly::one()]);
        let deg1: Vec<_> = enumerate_monic(&ctx, 1).collect();
        assert_eq!(deg1.len(), 5);
        assert_eq!(deg1[0], p(&ctx, "t"));
        assert_eq!(deg1[4], p(&ctx, "t+4"));
        let ctx = ctx7();
        assert_eq!(enumerate_monic(&ctx, 3).count(), 343);
        // constant term varies fastest
        let deg2: Vec<_> = enumerate_monic(&ctx, 2).collect();
        assert_eq!(deg2[1], p(&ctx, "t^2+1"));
        assert_eq!(deg2[7], p(&ctx, "t^2+t"));
    }

    #[test]
    fn factorization_examples() {
        let t5 = PolyTables::new(ctx5(), 4);
        let f = t5.factorize(&p(t5.ctx(), "t^2+1")).unwrap();
        assert_eq!(
            f.factors,
            vec![(p(t5.ctx(), "t+2"), 1), (p(t5.ctx(), "t+3"), 1)]
        );
        let f = t5.factorize(&p(t5.ctx(), "t^2")).unwrap();
        assert_eq!(f.factors, vec![(p(t5.ctx(), "t"), 2)]);
        let t7 = PolyTables::new(ctx7(), 4);
        let f = t7.factorize(&p(t7.ctx(), "t^2+1")).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0], (p(t7.ctx(), "t^2+1"), 1));
        assert!(t7.factorize(&Poly::zero()).is_err());
    }

    #[test]
    fn factorization_roundtrip_exhaustive() {
        for (tables, max) in [(PolyTables::new(ctx5(), 5), 5), (PolyTables::new(ctx7(), 4), 4)] {
            for d in 0..=max {
                for m in enumerate_monic(tables.ctx(), d) {
                    let f = tables.factorize(&m).unwrap();
                    assert_eq!(f.product(tables.ctx()), m, "refactor {m}");
                    for (p, _) in &f.factors {
                        assert!(tables.is_irreducible(p), "{p} not irreducible");
                    }
                }
            }
        }
    }

    #[test]
    fn irreducible_counts() {
        // Necklace counts: (q^d - sum of proper divisors) / d.
        let t7 = PolyTables::new(ctx7(), 4);
        assert_eq!(t7.irreducibles(1).len(), 7);
        assert_eq!(t7.irreducibles(2).len(), 21);
        assert_eq!(t7.irreducibles(3).len(), 112);
        assert_eq!(t7.irreducibles(4).len(), 588);
    }

    #[test]
    fn parts_examples() {
        let t5 = PolyTables::new(ctx5(), 5);
        // n=2: m = t^4 (t+1) -> m0 = t+1, squarefree = t+1
        let m = t5.ctx().poly_mul(&p(t5.ctx(), "t^4"), &p(t5.ctx(), "t+1"));
        let parts = t5.parts(&m).unwrap();
        assert_eq!(parts.powerfree, p(t5.ctx(), "t+1"));
        assert_eq!(parts.squarefree, p(t5.ctx(), "t+1"));
        // n=3: m = t^3 -> both trivial
        let t7 = PolyTables::new(ctx7(), 4);
        let parts = t7.parts(&p(t7.ctx(), "t^3")).unwrap();
        assert!(parts.powerfree.is_one());
        assert!(parts.squarefree.is_one());
        // coprime part: d = t^2 (t+1), m0 = t -> t+1
        let d = t5.ctx().poly_mul(&p(t5.ctx(), "t^2"), &p(t5.ctx(), "t+1"));
        assert_eq!(t5.coprime_part(&d, &p(t5.ctx(), "t")), p(t5.ctx(), "t+1"));
    }

    #[test]
    fn parts_invariants_exhaustive() {
        let tables = PolyTables::new(ctx5(), 5);
        let ctx = tables.ctx().clone();
        for d in 0..=5 {
            for m in enumerate_monic(&ctx, d) {
                let parts = tables.parts(&m).unwrap();
                // m0 | m, squarefree | m0
                assert!(ctx.poly_divides(&parts.powerfree, &m));
                assert!(ctx.poly_divides(&parts.squarefree, &parts.powerfree));
                // m / m0 is a perfect n-th power: every exponent divisible by n
                let quot = ctx.poly_divrem(&m, &parts.powerfree).0;
                for (_, e) in tables.factorize(&quot).unwrap().factors {
                    assert_eq!(e % ctx.n(), 0);
                }
                // squarefree part is squarefree
                for (_, e) in tables.factorize(&parts.squarefree).unwrap().factors {
                    assert_eq!(e, 1);
                }
                // coprime part really is coprime
                for dd in enumerate_monic(&ctx, 2) {
                    let hat = tables.coprime_part(&dd, &parts.powerfree);
                    assert!(ctx.poly_gcd(&hat, &parts.powerfree).is_one());
                }
            }
        }
    }

    #[test]
    fn parse_forms() {
        let ctx = ctx5();
        assert_eq!(p(&ctx, "1,2,0,1"), p(&ctx, "t^3+2t+1"));
        assert_eq!(p(&ctx, "t^2-1"), p(&ctx, "t^2+4"));
        assert_eq!(p(&ctx, "-2"), Poly::constant(3));
        assert_eq!(p(&ctx, "2*t^2 + t"), p(&ctx, "2t^2+t"));
        assert!(parse_poly(&ctx, "x^2").is_err());
        assert!(parse_poly(&ctx, "").is_err());
        // display round-trips through the parser
        let a = p(&ctx, "3t^4+t^2+2");
        assert_eq!(p(&ctx, &a.to_string()), a);
    }

    #[test]
    fn code_roundtrip() {
        let ctx = ctx7();
        for d in 0..=3 {
            for m in enumerate_monic(&ctx, d) {
                assert_eq!(Poly::from_code(m.code(7), 7), m);
            }
        }
    }
}
