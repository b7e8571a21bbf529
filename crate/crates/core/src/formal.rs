//! Laurent polynomials in a formal symbol v (standing for |p|^{1/2}) and in
//! named constants G_1 … G_{n-1} (standing for the Gauss sums attached to a
//! prime), with coefficients in Q(ζ_N).
//!
//! This is the coefficient ring for the symbolic prime-part identities: the
//! closed forms of the local generating series live over it, and evaluating
//! v and the G_i at concrete field elements is a ring homomorphism onto
//! Q(ζ_N), which is how the symbolic identities are grounded against the
//! grids computed from an actual prime.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclo::{CycCtx, CycNum};
use crate::error::{Error, Result};

/// Monomial key: the power of v and the multidegree in G_1 … G_{n-1}.
/// All exponents may be negative.
type Key = (i64, Vec<i64>);

#[derive(Clone)]
pub struct FormalScalar {
    ctx: Arc<CycCtx>,
    ngens: usize,
    terms: BTreeMap<Key, CycNum>,
}

impl PartialEq for FormalScalar {
    fn eq(&self, other: &Self) -> bool {
        self.ngens == other.ngens && self.terms == other.terms
    }
}

impl Eq for FormalScalar {}

impl fmt::Debug for FormalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalScalar({self})")
    }
}

impl FormalScalar {
    pub fn zero(ctx: &Arc<CycCtx>, ngens: usize) -> Self {
        FormalScalar {
            ctx: ctx.clone(),
            ngens,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_cyc(ctx: &Arc<CycCtx>, ngens: usize, c: CycNum) -> Self {
        let mut out = Self::zero(ctx, ngens);
        if !c.is_zero() {
            out.terms.insert((0, vec![0; ngens]), c);
        }
        out
    }

    pub fn one(ctx: &Arc<CycCtx>, ngens: usize) -> Self {
        Self::from_cyc(ctx, ngens, CycNum::one(ctx))
    }

    pub fn from_integer(ctx: &Arc<CycCtx>, ngens: usize, v: i64) -> Self {
        Self::from_cyc(ctx, ngens, CycNum::from_integer(ctx, v))
    }

    /// c · v^e
    pub fn v_pow(ctx: &Arc<CycCtx>, ngens: usize, e: i64) -> Self {
        let mut out = Self::zero(ctx, ngens);
        out.terms.insert((e, vec![0; ngens]), CycNum::one(ctx));
        out
    }

    /// The constant G_i (1-based, 1 <= i <= ngens), raised to a power.
    pub fn gen_pow(ctx: &Arc<CycCtx>, ngens: usize, i: usize, e: i64) -> Self {
        assert!(i >= 1 && i <= ngens, "generator index out of range");
        let mut exps = vec![0i64; ngens];
        exps[i - 1] = e;
        let mut out = Self::zero(ctx, ngens);
        out.terms.insert((0, exps), CycNum::one(ctx));
        out
    }

    pub fn ctx(&self) -> &Arc<CycCtx> {
        &self.ctx
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, vec![0; self.ngens]))
                .map(|c| c.is_one())
                == Some(true)
    }

    fn insert(&mut self, key: Key, c: CycNum) {
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
        debug_assert_eq!(self.ngens, other.ngens);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
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
        debug_assert_eq!(self.ngens, other.ngens);
        let mut out = Self::zero(&self.ctx, self.ngens);
        for ((va, ga), ca) in &self.terms {
            for ((vb, gb), cb) in &other.terms {
                let key = (
                    va + vb,
                    ga.iter().zip(gb).map(|(x, y)| x + y).collect::<Vec<_>>(),
                );
                out.insert(key, ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_cyc(&self, c: &CycNum) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, v| {
            *v = v.mul(c);
            !v.is_zero()
        });
        out
    }

    /// Inverse of a single-term element with invertible coefficient.
    /// General elements are not units of this ring.
    pub fn inv(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let ((ve, ge), c) = self.terms.iter().next().unwrap();
        let cinv = c.inv().map_err(|_| Error::NotInvertible(self.to_string()))?;
        let mut out = Self::zero(&self.ctx, self.ngens);
        out.terms
            .insert((-ve, ge.iter().map(|e| -e).collect()), cinv);
        Ok(out)
    }

    /// Evaluation homomorphism v -> v_image, G_i -> g_images[i-1].
    /// Negative exponents require the corresponding image to be invertible.
    pub fn eval(&self, v_image: &CycNum, g_images: &[CycNum]) -> Result<CycNum> {
        assert_eq!(g_images.len(), self.ngens);
        let mut acc = CycNum::zero(&self.ctx);
        for ((ve, ge), c) in &self.terms {
            let mut term = c.mul(&v_image.pow(*ve)?);
            for (img, e) in g_images.iter().zip(ge) {
                if *e != 0 {
                    term = term.mul(&img.pow(*e)?);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for FormalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((ve, ge), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c.pretty())?;
            if *ve != 0 {
                write!(f, "*v^{ve}")?;
            }
            for (i, e) in ge.iter().enumerate() {
                if *e != 0 {
                    write!(f, "*G{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> Arc<CycCtx> {
        CycCtx::new(5, 2)
    }

    #[test]
    fn monomial_inverse() {
        let c = ctx();
        let m = FormalScalar::v_pow(&c, 1, -3).mul(&FormalScalar::gen_pow(&c, 1, 1, 2));
        let inv = m.inv().unwrap();
        assert!(m.mul(&inv).is_one());
        let sum = m.add(&FormalScalar::one(&c, 1));
        assert!(sum.inv().is_err());
    }

    #[test]
    fn eval_concrete() {
        let c = ctx();
        // v^2 evaluated at v = sqrt(5) gives 5
        let v2 = FormalScalar::v_pow(&c, 1, 2);
        let s = CycNum::sqrt_q(&c);
        assert_eq!(
            v2.eval(&s, &[CycNum::one(&c)]).unwrap(),
            CycNum::from_integer(&c, 5)
        );
        // negative powers need invertible images
        let vm1 = FormalScalar::v_pow(&c, 1, -1);
        assert!(vm1.eval(&CycNum::zero(&c), &[CycNum::one(&c)]).is_err());
    }

    fn arb_formal(ctx: Arc<CycCtx>) -> impl Strategy<Value = FormalScalar> {
        proptest::collection::vec(
            ((-2i64..=2), (-2i64..=2), (-5i64..=5)),
            0..4,
        )
        .prop_map(move |terms| {
            let mut out = FormalScalar::zero(&ctx, 1);
            for (ve, ge, c) in terms {
                let mono = FormalScalar::v_pow(&ctx, 1, ve)
                    .mul(&FormalScalar::gen_pow(&ctx, 1, 1, ge))
                    .mul_cyc(&CycNum::from_integer(&ctx, c));
                out = out.add(&mono);
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn eval_is_ring_hom(a in arb_formal(ctx()), b in arb_formal(ctx()), k in 1i64..=6) {
            let c = ctx();
            // invertible images: a power of zeta and a rational offset of sqrt(q)
            let v_img = CycNum::zeta_pow(&c, k);
            let g_img = CycNum::sqrt_q(&c).add(&CycNum::from_integer(&c, k));
            let imgs = [g_img];
            let lhs = a.mul(&b).eval(&v_img, &imgs).unwrap();
            let rhs = a.eval(&v_img, &imgs).unwrap().mul(&b.eval(&v_img, &imgs).unwrap());
            prop_assert_eq!(lhs, rhs);
            let lhs = a.add(&b).eval(&v_img, &imgs).unwrap();
            let rhs = a.eval(&v_img, &imgs).unwrap().add(&b.eval(&v_img, &imgs).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
