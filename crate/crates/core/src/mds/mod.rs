//! Assembly and verification of the double Dirichlet series.
//!
//! `MdsInstance` owns a character context plus enumeration caches for a
//! fixed truncation, and the submodules build everything on top of it:
//! brute-force coefficient grids, closed rational forms, the prime-part
//! generating series with their symbolic identities, and the named
//! verification suites.

mod closed;
mod grids;
mod pparts;
mod suites;

pub use closed::*;
pub use grids::*;
pub use pparts::*;
pub use suites::*;

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::chars::CharCtx;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::poly::{enumerate_monic, FieldCtx, Poly};

/// A monic polynomial with its factorization data, precomputed once per
/// instance so the summation kernels never re-factor inside loops.
#[derive(Debug, Clone)]
pub struct FactoredMonic {
    pub m: Poly,
    /// factors of m itself
    pub factors: Vec<(Poly, u32)>,
    /// n-th powerfree part m0 and its factors (exponents reduced mod n)
    pub m0: Poly,
    pub m0_factors: Vec<(Poly, u32)>,
    /// squarefree part of m0
    pub mtilde: Poly,
}

impl FactoredMonic {
    pub fn is_nth_power(&self) -> bool {
        self.m0.is_one()
    }
}

/// Shared state for one verification run: contexts plus enumeration caches
/// sized for the requested truncation.
pub struct MdsInstance {
    chars: CharCtx,
    jmax: usize,
    kmax: usize,
    /// all monic polynomials by degree, 0..=max(jmax, kmax+1)
    monics: Vec<Vec<Poly>>,
    /// factored monic polynomials by degree, 0..=kmax
    factored: Vec<Vec<FactoredMonic>>,
}

impl MdsInstance {
    pub fn new(q: u64, n: u32, jmax: usize, kmax: usize, generator: Option<u64>) -> Result<Self> {
        let field = FieldCtx::new(q, n, generator)?;
        Self::with_field(field, jmax, kmax)
    }

    pub fn with_field(field: Arc<FieldCtx>, jmax: usize, kmax: usize) -> Result<Self> {
        let chars = CharCtx::new(field.clone(), kmax.max(1));
        let enum_max = jmax.max(kmax + 1);
        let monics: Vec<Vec<Poly>> = (0..=enum_max)
            .map(|d| enumerate_monic(&field, d).collect())
            .collect();
        let factored: Vec<Vec<FactoredMonic>> = (0..=kmax)
            .map(|d| {
                monics[d]
                    .par_iter()
                    .map(|m| {
                        let fact = chars.tables().factorize(m).expect("monic nonzero");
                        let parts = chars.tables().parts(m).expect("monic");
                        let m0_factors = fact
                            .factors
                            .iter()
                            .filter_map(|(p, e)| {
                                let r = e % field.n();
                                (r > 0).then(|| (p.clone(), r))
                            })
                            .collect();
                        FactoredMonic {
                            m: m.clone(),
                            factors: fact.factors,
                            m0: parts.powerfree,
                            m0_factors,
                            mtilde: parts.squarefree,
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(MdsInstance {
            chars,
            jmax,
            kmax,
            monics,
            factored,
        })
    }

    pub fn chars(&self) -> &CharCtx {
        &self.chars
    }

    pub fn q(&self) -> u64 {
        self.chars.field().q()
    }

    pub fn n(&self) -> u32 {
        self.chars.field().n()
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn monics(&self, deg: usize) -> &[Poly] {
        &self.monics[deg]
    }

    pub fn factored(&self, deg: usize) -> &[FactoredMonic] {
        &self.factored[deg]
    }

    /// (d/m0) through the precomputed factor list, as a discrete log.
    /// Never vanishes when d is the coprime part of something with respect
    /// to m0; vanishes iff gcd(d, m̃) ≠ 1 in general.
    pub fn symbol_from_factors(&self, d: &Poly, m0_factors: &[(Poly, u32)]) -> Option<u32> {
        let n = self.chars.field().n();
        let mut acc = 0u32;
        for (p, e) in m0_factors {
            let t = self.chars.prime_symbol_dlog(d, p)?;
            acc = (acc + e * t) % n;
        }
        Some(acc)
    }

    /// Gauss sums g(1, ε, χ_{m0}) for every distinct powerfree part among
    /// the monics of degree <= kdeg, keyed by polynomial code.
    pub fn gauss_cache(&self, kdeg: usize) -> HashMap<u64, CycNum> {
        let q = self.q();
        let mut codes: Vec<u64> = Vec::new();
        for d in 0..=kdeg {
            for fm in &self.factored[d] {
                codes.push(fm.m0.code(q));
            }
        }
        codes.sort_unstable();
        codes.dedup();
        codes
            .into_par_iter()
            .map(|code| {
                let m0 = Poly::from_code(code, q);
                let g = self
                    .chars
                    .gauss_g(&Poly::one(), 1, &m0)
                    .expect("monic powerfree");
                (code, g)
            })
            .collect()
    }
}

/// The named verification suites exposed by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Reciprocity,
    Vanishing,
    Lfe,
    Prop21,
    Z1,
    Z2,
    Thm11,
    Pparts,
    Thm32,
    Correspondence,
    Prop41,
    Section6,
    All,
}

impl Suite {
    pub const ALL_NAMES: [&'static str; 13] = [
        "reciprocity",
        "vanishing",
        "lfe",
        "prop21",
        "z1",
        "z2",
        "thm11",
        "pparts",
        "thm32",
        "correspondence",
        "prop41",
        "section6",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "reciprocity" => Suite::Reciprocity,
            "vanishing" => Suite::Vanishing,
            "lfe" => Suite::Lfe,
            "prop21" => Suite::Prop21,
            "z1" => Suite::Z1,
            "z2" => Suite::Z2,
            "thm11" => Suite::Thm11,
            "pparts" => Suite::Pparts,
            "thm32" => Suite::Thm32,
            "correspondence" => Suite::Correspondence,
            "prop41" => Suite::Prop41,
            "section6" => Suite::Section6,
            "all" => Suite::All,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown suite `{other}`; expected one of {}",
                    Suite::ALL_NAMES.join(", ")
                )))
            }
        })
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Suite::Reciprocity => "reciprocity",
            Suite::Vanishing => "vanishing",
            Suite::Lfe => "lfe",
            Suite::Prop21 => "prop21",
            Suite::Z1 => "z1",
            Suite::Z2 => "z2",
            Suite::Thm11 => "thm11",
            Suite::Pparts => "pparts",
            Suite::Thm32 => "thm32",
            Suite::Correspondence => "correspondence",
            Suite::Prop41 => "prop41",
            Suite::Section6 => "section6",
            Suite::All => "all",
        };
        write!(f, "{name}")
    }
}
