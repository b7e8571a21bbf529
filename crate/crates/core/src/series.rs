//! Bivariate polynomial / rational-function / power-series engine over an
//! exact scalar ring, plus the univariate specialization used by the
//! L-function layer.
//!
//! The two variables are the substitution variables x = q^{-s}, y = q^{-w}
//! (or their prime-local counterparts X, Y). Rational functions compare by
//! cross-multiplication; expansion produces a truncated coefficient grid by
//! the standard division recurrence. Exponents are signed so that variable
//! changes like x -> q^{-1} x^{-1} stay inside the representation; rational
//! functions clear negative exponents by scaling numerator and denominator
//! with a common monomial.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::formal::FormalScalar;

/// Exact coefficient ring for series: implemented by `CycNum` (a field) and
/// `FormalScalar` (invertible only at monomials).
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn pow_signed(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.one_like();
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
}

impl Scalar for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero(self.ctx())
    }
    fn one_like(&self) -> Self {
        CycNum::one(self.ctx())
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        CycNum::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        CycNum::sub(self, other)
    }
    fn neg(&self) -> Self {
        CycNum::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        CycNum::mul(self, other)
    }
    fn inv(&self) -> Result<Self> {
        CycNum::inv(self)
    }
}

impl Scalar for FormalScalar {
    fn zero_like(&self) -> Self {
        FormalScalar::zero(self.ctx(), self.ngens())
    }
    fn one_like(&self) -> Self {
        FormalScalar::one(self.ctx(), self.ngens())
    }
    fn is_zero(&self) -> bool {
        FormalScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        FormalScalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FormalScalar::sub(self, other)
    }
    fn neg(&self) -> Self {
        FormalScalar::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        FormalScalar::mul(self, other)
    }
    fn inv(&self) -> Result<Self> {
        FormalScalar::inv(self)
    }
}

// ---------------------------------------------------------------------------
// univariate Laurent polynomials and rational functions
// ---------------------------------------------------------------------------

/// Finitely supported Laurent polynomial in one variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<T: Scalar> {
    terms: BTreeMap<i64, T>,
}

impl<T: Scalar> Default for UniPoly<T> {
    fn default() -> Self {
        UniPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> UniPoly<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: T, k: i64) -> Self {
        let mut out = Self::zero();
        if !c.is_zero() {
            out.terms.insert(k, c);
        }
        out
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(k as i64, c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Option<&T> {
        self.terms.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(&mut self, k: i64, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(acc) => {
                let sum = acc.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *acc = sum;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.insert_add(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                out.insert_add(ka + kb, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.insert_add(k, v.mul(c));
        }
        out
    }

    pub fn shift(&self, e: i64) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.terms.insert(k + e, v.clone());
        }
        out
    }

    /// Substitute x -> c · x^e (e = ±1 or any nonzero integer); requires c
    /// invertible when negative powers of c arise.
    pub fn substitute(&self, c: &T, e: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.insert_add(k * e, v.mul(&c.pow_signed(k)?));
        }
        Ok(out)
    }

    pub fn map_scalars<U: Scalar>(&self, f: &mut impl FnMut(&T) -> Result<U>) -> Result<UniPoly<U>> {
        let mut out = UniPoly::zero();
        for (&k, v) in &self.terms {
            out.insert_add(k, f(v)?);
        }
        Ok(out)
    }
}

/// Ratio of two univariate Laurent polynomials with nonzero denominator.
#[derive(Clone, Debug)]
pub struct UniRat<T: Scalar> {
    pub num: UniPoly<T>,
    pub den: UniPoly<T>,
}

impl<T: Scalar> UniRat<T> {
    pub fn new(num: UniPoly<T>, den: UniPoly<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        UniRat { num, den }
    }

    pub fn from_poly(num: UniPoly<T>) -> Self {
        let one = num
            .terms
            .values()
            .next()
            .map(|c| c.one_like())
            .map(|c| UniPoly::term(c, 0));
        match one {
            Some(one) => UniRat { num, den: one },
            None => panic!("from_poly of zero needs an exemplar; use new()"),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        UniRat {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        UniRat {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        UniRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Equality as rational functions: cross-multiplication.
    pub fn equal(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn substitute(&self, c: &T, e: i64) -> Result<Self> {
        Ok(UniRat {
            num: self.num.substitute(c, e)?,
            den: self.den.substitute(c, e)?,
        })
    }

    /// Power-series coefficients 0..=kmax at x = 0. Fails if the function
    /// has a pole at 0 or the relevant denominator unit is not invertible.
    pub fn expand(&self, kmax: i64) -> Result<Vec<T>> {
        let dv = self.den.min_exp().expect("nonzero denominator");
        let den = self.den.shift(-dv);
        let num = self.num.shift(-dv);
        let c0 = den.coeff(0).expect("constant term after shift");
        let c0inv = c0.inv().map_err(|_| Error::NonUnitConstantTerm)?;
        let zero = c0.zero_like();
        let low = num.min_exp().unwrap_or(0).min(0);
        let mut series: BTreeMap<i64, T> = BTreeMap::new();
        for k in low..=kmax {
            let mut acc = num.coeff(k).cloned().unwrap_or_else(|| zero.clone());
            for (j, dj) in den.terms() {
                if j == 0 || j > k - low {
                    continue;
                }
                if let Some(s) = series.get(&(k - j)) {
                    acc = acc.sub(&dj.mul(s));
                }
            }
            let val = acc.mul(&c0inv);
            if k < 0 && !val.is_zero() {
                return Err(Error::NonUnitConstantTerm);
            }
            series.insert(k, val);
        }
        Ok((0..=kmax)
            .map(|k| series.get(&k).cloned().unwrap_or_else(|| zero.clone()))
            .collect())
    }
}

// ---------------------------------------------------------------------------
// bivariate
// ---------------------------------------------------------------------------

/// Finitely supported map (i, j) -> scalar for monomials x^i y^j; canonical
/// form drops zero coefficients. Negative exponents are permitted as
/// substitution intermediates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly<T: Scalar> {
    terms: BTreeMap<(i64, i64), T>,
}

impl<T: Scalar> Default for BiPoly<T> {
    fn default() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> BiPoly<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: T, i: i64, j: i64) -> Self {
        let mut out = Self::zero();
        if !c.is_zero() {
            out.terms.insert((i, j), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> Option<&T> {
        self.terms.get(&(i, j))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &T)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    fn insert_add(&mut self, key: (i64, i64), c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(acc) => {
                let sum = acc.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *acc = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.insert_add(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ia, ja), ca) in &self.terms {
            for (&(ib, jb), cb) in &other.terms {
                out.insert_add((ia + ib, ja + jb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.insert_add(k, v.mul(c));
        }
        out
    }

    pub fn shift(&self, dx: i64, dy: i64) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.terms.insert((i + dx, j + dy), v.clone());
        }
        out
    }

    /// Swap the two variables.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.terms.insert((j, i), v.clone());
        }
        out
    }

    pub fn min_exps(&self) -> (i64, i64) {
        let mut mx = i64::MAX;
        let mut my = i64::MAX;
        for &(i, j) in self.terms.keys() {
            mx = mx.min(i);
            my = my.min(j);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (mx, my)
        }
    }

    /// Substitute x -> cx · x^{ax} y^{bx}, y -> cy · x^{ay} y^{by}.
    pub fn substitute(&self, mx: &Monomial<T>, my: &Monomial<T>) -> Result<Self> {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            let c = v
                .mul(&mx.coef.pow_signed(i)?)
                .mul(&my.coef.pow_signed(j)?);
            out.insert_add((i * mx.xe + j * my.xe, i * mx.ye + j * my.ye), c);
        }
        Ok(out)
    }

    pub fn map_scalars<U: Scalar>(
        &self,
        f: &mut impl FnMut(&T) -> Result<U>,
    ) -> Result<BiPoly<U>> {
        let mut out = BiPoly::zero();
        for (&k, v) in &self.terms {
            out.insert_add(k, f(v)?);
        }
        Ok(out)
    }

    /// Render with the given variable names, highest y then x first.
    pub fn pretty(&self, xname: &str, yname: &str, fmt_scalar: &impl Fn(&T) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&(i, j), c) in self.terms.iter() {
            let mut part = format!("({})", fmt_scalar(c));
            if i != 0 {
                part.push_str(&format!("*{xname}^{i}"));
            }
            if j != 0 {
                part.push_str(&format!("*{yname}^{j}"));
            }
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// c · x^xe · y^ye, the image of one variable under a substitution.
#[derive(Clone, Debug)]
pub struct Monomial<T: Scalar> {
    pub coef: T,
    pub xe: i64,
    pub ye: i64,
}

impl<T: Scalar> Monomial<T> {
    pub fn new(coef: T, xe: i64, ye: i64) -> Self {
        Monomial { coef, xe, ye }
    }

    /// The identity substitution image for one variable.
    pub fn ident_x(one: T) -> Self {
        Monomial::new(one, 1, 0)
    }

    pub fn ident_y(one: T) -> Self {
        Monomial::new(one, 0, 1)
    }
}

/// Ratio of two bivariate polynomials; denominator nonzero. Equality is by
/// cross-multiplication of numerators and denominators.
#[derive(Clone, Debug)]
pub struct BiRat<T: Scalar> {
    pub num: BiPoly<T>,
    pub den: BiPoly<T>,
}

impl<T: Scalar> BiRat<T> {
    pub fn new(num: BiPoly<T>, den: BiPoly<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        BiRat { num, den }
    }

    pub fn from_poly_with(num: BiPoly<T>, one: T) -> Self {
        BiRat {
            num,
            den: BiPoly::term(one, 0, 0),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BiRat {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.num.is_zero(), "division by zero rational function");
        BiRat {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        BiRat {
            num: self
                .num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&BiRat {
            num: other.num.neg(),
            den: other.den.clone(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        BiRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        BiRat {
            num: self.num.transpose(),
            den: self.den.transpose(),
        }
    }

    /// Exact equality of rational functions.
    pub fn equal(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Clear negative exponents and cancel the common monomial factor:
    /// shift numerator and denominator by the same monomial so that both
    /// are ordinary polynomials and at least one has a term on each axis
    /// boundary.
    pub fn normalized(&self) -> Self {
        if self.num.is_zero() {
            let (dx, dy) = self.den.min_exps();
            return BiRat {
                num: BiPoly::zero(),
                den: self.den.shift(-dx, -dy),
            };
        }
        let (nx, ny) = self.num.min_exps();
        let (dx, dy) = self.den.min_exps();
        let sx = -nx.min(dx);
        let sy = -ny.min(dy);
        BiRat {
            num: self.num.shift(sx, sy),
            den: self.den.shift(sx, sy),
        }
    }

    /// Apply the variable change x -> mx, y -> my; the result is normalized
    /// to ordinary polynomials.
    pub fn substitute(&self, mx: &Monomial<T>, my: &Monomial<T>) -> Result<Self> {
        Ok(BiRat {
            num: self.num.substitute(mx, my)?,
            den: self.den.substitute(mx, my)?,
        }
        .normalized())
    }

    pub fn map_scalars<U: Scalar>(
        &self,
        f: &mut impl FnMut(&T) -> Result<U>,
    ) -> Result<BiRat<U>> {
        Ok(BiRat {
            num: self.num.map_scalars(f)?,
            den: self.den.map_scalars(f)?,
        })
    }

    /// Truncated power-series expansion at the origin.
    pub fn expand(&self, jmax: usize, kmax: usize) -> Result<SeriesGrid<T>> {
        let r = self.normalized();
        let den = &r.den;
        let c0 = den
            .coeff(0, 0)
            .ok_or(Error::NonUnitConstantTerm)?;
        let c0inv = c0.inv().map_err(|_| Error::NonUnitConstantTerm)?;
        let zero = c0.zero_like();
        let mut grid = SeriesGrid::zeros(jmax, kmax, zero.clone());
        for i in 0..=jmax as i64 {
            for j in 0..=kmax as i64 {
                let mut acc = r.num.coeff(i, j).cloned().unwrap_or_else(|| zero.clone());
                for ((a, b), dv) in den.terms() {
                    if (a, b) == (0, 0) || a > i || b > j {
                        continue;
                    }
                    acc = acc.sub(&dv.mul(grid.get((i - a) as usize, (j - b) as usize)));
                }
                grid.set(i as usize, j as usize, acc.mul(&c0inv));
            }
        }
        Ok(grid)
    }
}

/// Truncated (jmax+1) × (kmax+1) coefficient grid: entry (j, k) is the
/// coefficient of x^j y^k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesGrid<T: Scalar> {
    jmax: usize,
    kmax: usize,
    data: Vec<T>,
}

impl<T: Scalar> SeriesGrid<T> {
    pub fn zeros(jmax: usize, kmax: usize, zero: T) -> Self {
        SeriesGrid {
            jmax,
            kmax,
            data: vec![zero; (jmax + 1) * (kmax + 1)],
        }
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn get(&self, j: usize, k: usize) -> &T {
        &self.data[j * (self.kmax + 1) + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: T) {
        self.data[j * (self.kmax + 1) + k] = v;
    }

    pub fn add_into(&mut self, j: usize, k: usize, v: &T) {
        let slot = &mut self.data[j * (self.kmax + 1) + k];
        *slot = slot.add(v);
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.jmax, self.kmax), (other.jmax, other.kmax));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.jmax, self.kmax), (other.jmax, other.kmax));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.sub(b);
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let zero = self.data[0].zero_like();
        let mut out = SeriesGrid::zeros(self.kmax, self.jmax, zero);
        for j in 0..=self.jmax {
            for k in 0..=self.kmax {
                out.set(k, j, self.get(j, k).clone());
            }
        }
        out
    }

    /// Truncated series product.
    pub fn mul_series(&self, other: &Self) -> Self {
        assert_eq!((self.jmax, self.kmax), (other.jmax, other.kmax));
        let zero = self.data[0].zero_like();
        let mut out = SeriesGrid::zeros(self.jmax, self.kmax, zero);
        for j in 0..=self.jmax {
            for k in 0..=self.kmax {
                let a = self.get(j, k);
                if a.is_zero() {
                    continue;
                }
                for jj in 0..=(self.jmax - j) {
                    for kk in 0..=(self.kmax - k) {
                        let b = other.get(jj, kk);
                        if !b.is_zero() {
                            out.add_into(j + jj, k + kk, &a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Restrict to entries with y-exponent ≡ r (mod modulus), zeroing the
    /// rest.
    pub fn restrict_kmod(&self, modulus: usize, r: usize) -> Self {
        let mut out = self.clone();
        for j in 0..=self.jmax {
            for k in 0..=self.kmax {
                if k % modulus != r {
                    let z = out.get(j, k).zero_like();
                    out.set(j, k, z);
                }
            }
        }
        out
    }

    pub fn map_scalars<U: Scalar>(&self, f: &mut impl FnMut(&T) -> Result<U>) -> Result<SeriesGrid<U>> {
        let data = self
            .data
            .iter()
            .map(|v| f(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesGrid {
            jmax: self.jmax,
            kmax: self.kmax,
            data,
        })
    }

    /// First differing cell, for failure reporting.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        for j in 0..=self.jmax.min(other.jmax) {
            for k in 0..=self.kmax.min(other.kmax) {
                if self.get(j, k) != other.get(j, k) {
                    return Some((j, k));
                }
            }
        }
        None
    }
}

/// Coefficientwise (Hadamard) product of two grids.
pub fn hadamard_star<T: Scalar>(a: &SeriesGrid<T>, b: &SeriesGrid<T>) -> SeriesGrid<T> {
    assert_eq!((a.jmax, a.kmax), (b.jmax, b.kmax));
    let mut out = a.clone();
    for (x, y) in out.data.iter_mut().zip(&b.data) {
        *x = x.mul(y);
    }
    out
}

/// Helpers for building rational functions over Q(ζ_N) from integer data.
pub mod build {
    use super::*;
    use crate::cyclo::CycCtx;
    use num::BigInt;
    use std::sync::Arc;

    pub fn cyc_int(ctx: &Arc<CycCtx>, v: i64) -> CycNum {
        CycNum::from_integer(ctx, v)
    }

    /// q^e as an exact rational scalar (negative exponents allowed).
    pub fn q_pow(ctx: &Arc<CycCtx>, e: i64) -> CycNum {
        let q = BigInt::from(ctx.q());
        let r = if e >= 0 {
            BigRational::from_integer(q.pow(e as u32))
        } else {
            BigRational::new(BigInt::from(1), q.pow((-e) as u32))
        };
        CycNum::from_rational(ctx, r)
    }

    /// A polynomial Σ c · x^i y^j from (coefficient, i, j) triples with
    /// CycNum coefficients.
    pub fn bipoly(terms: Vec<(CycNum, i64, i64)>) -> BiPoly<CycNum> {
        let mut out = BiPoly::zero();
        for (c, i, j) in terms {
            out = out.add(&BiPoly::term(c, i, j));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycCtx;
    use build::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ctx() -> Arc<CycCtx> {
        CycCtx::new(5, 2)
    }

    fn int_poly(ctx: &Arc<CycCtx>, terms: &[(i64, i64, i64)]) -> BiPoly<CycNum> {
        bipoly(
            terms
                .iter()
                .map(|&(c, i, j)| (cyc_int(ctx, c), i, j))
                .collect(),
        )
    }

    #[test]
    fn geometric_expansion() {
        let c = ctx();
        // 1/(1-qx): coefficient of x^i is q^i
        let one = cyc_int(&c, 1);
        let den = int_poly(&c, &[(1, 0, 0), (-5, 1, 0)]);
        let r = BiRat::new(BiPoly::term(one, 0, 0), den);
        let grid = r.expand(4, 2).unwrap();
        for i in 0..=4i64 {
            assert_eq!(grid.get(i as usize, 0), &q_pow(&c, i));
            assert!(grid.get(i as usize, 1).is_zero());
        }
    }

    #[test]
    fn closed_form_expansion_spot_values() {
        // (1-q^2 xy)/((1-qx)(1-qy)(1-q^{n+1} x^n y^n)) at q=5, n=2:
        // coeff(1,1) = 0 and coeff(2,2) = q^4 + q^3 - q^4 = 125
        let c = ctx();
        let num = int_poly(&c, &[(1, 0, 0), (-25, 1, 1)]);
        let den = int_poly(&c, &[(1, 0, 0), (-5, 1, 0)])
            .mul(&int_poly(&c, &[(1, 0, 0), (-5, 0, 1)]))
            .mul(&int_poly(&c, &[(1, 0, 0), (-125, 2, 2)]));
        let grid = BiRat::new(num, den).expand(2, 2).unwrap();
        assert!(grid.get(1, 1).is_zero());
        assert_eq!(grid.get(2, 2), &cyc_int(&c, 125));
        assert_eq!(grid.get(0, 0), &cyc_int(&c, 1));
    }

    #[test]
    fn expand_polynomial_is_padding() {
        let c = ctx();
        let p = int_poly(&c, &[(3, 1, 0), (2, 0, 2)]);
        let r = BiRat::from_poly_with(p.clone(), cyc_int(&c, 1));
        let grid = r.expand(3, 3).unwrap();
        for i in 0..=3i64 {
            for j in 0..=3i64 {
                let want = p.coeff(i, j).cloned().unwrap_or(cyc_int(&c, 0));
                assert_eq!(grid.get(i as usize, j as usize), &want);
            }
        }
    }

    #[test]
    fn hadamard_identity_kernel() {
        let c = ctx();
        let one = cyc_int(&c, 1);
        // A = 1/((1-2x)(1-3y)); all-ones kernel = 1/((1-x)(1-y))
        let a = BiRat::new(
            BiPoly::term(one.clone(), 0, 0),
            int_poly(&c, &[(1, 0, 0), (-2, 1, 0)]).mul(&int_poly(&c, &[(1, 0, 0), (-3, 0, 1)])),
        )
        .expand(3, 3)
        .unwrap();
        let ones = BiRat::new(
            BiPoly::term(one.clone(), 0, 0),
            int_poly(&c, &[(1, 0, 0), (-1, 1, 0)]).mul(&int_poly(&c, &[(1, 0, 0), (-1, 0, 1)])),
        )
        .expand(3, 3)
        .unwrap();
        assert_eq!(hadamard_star(&a, &ones), a);
        // 1/(1-x) * 1/(1-x) = 1/(1-x) coefficientwise
        let gx = BiRat::new(
            BiPoly::term(one.clone(), 0, 0),
            int_poly(&c, &[(1, 0, 0), (-1, 1, 0)]),
        )
        .expand(3, 3)
        .unwrap();
        assert_eq!(hadamard_star(&gx, &gx), gx);
    }

    #[test]
    fn substitution_involution() {
        // s -> 1-s corresponds to x -> q^{-1} x^{-1}; applying the full map
        // (x, y) -> (q^{-1}x^{-1}, q^{1/2} x y) twice is the identity.
        let c = ctx();
        let mx = Monomial::new(q_pow(&c, -1), -1, 0);
        let my = Monomial::new(crate::cyclo::CycNum::sqrt_q(&c), 1, 1);
        let r = BiRat::new(
            int_poly(&c, &[(1, 0, 0), (-25, 1, 1)]),
            int_poly(&c, &[(1, 0, 0), (-5, 1, 0), (7, 2, 2)]),
        );
        let once = r.substitute(&mx, &my).unwrap();
        let twice = once.substitute(&mx, &my).unwrap();
        assert!(twice.equal(&r));
        // identity substitution
        let idx = Monomial::ident_x(cyc_int(&c, 1));
        let idy = Monomial::ident_y(cyc_int(&c, 1));
        assert!(r.substitute(&idx, &idy).unwrap().equal(&r));
    }

    #[test]
    fn unirat_expansion_and_equality() {
        let c = ctx();
        // 1/(1-5x) expands to 5^k
        let den = UniPoly::from_coeffs(vec![cyc_int(&c, 1), cyc_int(&c, -5)]);
        let num = UniPoly::term(cyc_int(&c, 1), 0);
        let zeta = UniRat::new(num, den);
        let coeffs = zeta.expand(4).unwrap();
        for (k, v) in coeffs.iter().enumerate() {
            assert_eq!(v, &q_pow(&c, k as i64));
        }
        // (1-x)/(1-x)^2 == 1/(1-x)
        let onemx = UniPoly::from_coeffs(vec![cyc_int(&c, 1), cyc_int(&c, -1)]);
        let a = UniRat::new(onemx.clone(), onemx.mul(&onemx));
        let b = UniRat::new(UniPoly::term(cyc_int(&c, 1), 0), onemx.clone());
        assert!(a.equal(&b));
        // substitution x -> q^{-1} x^{-1} is an involution
        let sub = a.substitute(&q_pow(&c, -1), -1).unwrap();
        assert!(sub.substitute(&q_pow(&c, -1), -1).unwrap().equal(&a));
        // pole at the origin is rejected
        let pole = UniRat::new(UniPoly::term(cyc_int(&c, 1), 0), UniPoly::term(cyc_int(&c, 1), 1));
        assert!(pole.expand(3).is_err());
    }

    fn arb_bipoly(ctx: Arc<CycCtx>) -> impl Strategy<Value = BiPoly<CycNum>> {
        proptest::collection::vec(((0i64..3, 0i64..3), -4i64..=4), 0..5).prop_map(move |terms| {
            let mut out = BiPoly::zero();
            for ((i, j), c) in terms {
                out = out.add(&BiPoly::term(cyc_int(&ctx, c), i, j));
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn product_expansion_consistency(a in arb_bipoly(ctx()), b in arb_bipoly(ctx())) {
            // expand(A·B) equals the truncated product of the expansions,
            // for rational functions with denominator (1-x)(1-y)
            let c = ctx();
            let den = int_poly(&c, &[(1, 0, 0), (-1, 1, 0)])
                .mul(&int_poly(&c, &[(1, 0, 0), (-1, 0, 1)]));
            let ra = BiRat::new(a, den.clone());
            let rb = BiRat::new(b, den.clone());
            let lhs = ra.mul(&rb).expand(4, 4).unwrap();
            let rhs = ra.expand(4, 4).unwrap().mul_series(&rb.expand(4, 4).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hadamard_bilinear(a in arb_bipoly(ctx()), b in arb_bipoly(ctx()), k in -3i64..=3) {
            let c = ctx();
            let one = cyc_int(&c, 1);
            let ga = BiRat::from_poly_with(a, one.clone()).expand(3, 3).unwrap();
            let gb = BiRat::from_poly_with(b, one.clone()).expand(3, 3).unwrap();
            prop_assert_eq!(hadamard_star(&ga, &gb), hadamard_star(&gb, &ga));
            let scaled = {
                let mut g = ga.clone();
                for j in 0..=3 {
                    for kk in 0..=3 {
                        let v = g.get(j, kk).mul(&cyc_int(&c, k));
                        g.set(j, kk, v);
                    }
                }
                g
            };
            prop_assert_eq!(
                hadamard_star(&scaled, &gb),
                {
                    let mut g = hadamard_star(&ga, &gb);
                    for j in 0..=3 {
                        for kk in 0..=3 {
                            let v = g.get(j, kk).mul(&cyc_int(&c, k));
                            g.set(j, kk, v);
                        }
                    }
                    g
                }
            );
        }
    }
}
