//! Brute-force coefficient grids, computed by direct summation over pairs
//! of monic polynomials with exact arithmetic.
//!
//! The kernels enumerate raw coefficient buffers and accumulate per
//! root-of-unity class with machine integers, converting to field elements
//! once per cell; the inner loops stay free of allocation and big-rational
//! traffic. Exact addition is associative and commutative, so the rayon
//! partitioning cannot change any result.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::rational::BigRational;

use rayon::prelude::*;

use crate::cyclo::CycNum;
use crate::error::Result;
use crate::lfun::{euler_p, euler_q, lfun, lfun_hat_brute, weight_a_pp, weight_b_pp};
use crate::poly::{raw, Poly};
use crate::series::{Scalar, SeriesGrid, UniRat};

use super::{FactoredMonic, MdsInstance};

/// Prepared per-prime data for the enumeration kernels.
struct PrimePlan<'a> {
    coeffs: &'a [u64],
    poly: &'a Poly,
    strip: bool,
    /// exponent of this prime in the powerfree part (0 if none)
    sym_e: u32,
    /// a(p^v, p^e) by valuation v, as machine integers
    a_by_v: Vec<Option<u128>>,
    /// b(p^v, p^e) by valuation v, as (integer, √q parity); None when zero
    b_by_v: Vec<Option<(i128, bool)>>,
    table: Option<&'a [u8]>,
}

struct Workspace {
    d: Vec<u64>,
    dhat: Vec<u64>,
    probe: Vec<u64>,
    quot: Vec<u64>,
    rem: Vec<u64>,
    vals: Vec<u32>,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            d: Vec::new(),
            dhat: Vec::new(),
            probe: Vec::new(),
            quot: Vec::new(),
            rem: Vec::new(),
            vals: Vec::new(),
        }
    }
}

fn build_plans<'a>(inst: &'a MdsInstance, fm: &'a FactoredMonic, max_v: usize) -> Vec<PrimePlan<'a>> {
    let q = inst.q();
    let n = inst.n();
    fm.factors
        .iter()
        .map(|(p, e)| PrimePlan {
            coeffs: p.coeffs(),
            poly: p,
            strip: e % n != 0,
            sym_e: e % n,
            a_by_v: (0..=max_v as u32)
                .map(|v| weight_a_pp(q, p.degree(), n, v, *e))
                .collect(),
            b_by_v: (0..=max_v as u32)
                .map(|v| {
                    let w = weight_b_pp(q, p.degree(), n, v, *e);
                    if w.is_zero() {
                        None
                    } else {
                        let int = w
                            .rat
                            .numer()
                            .try_into()
                            .expect("weight magnitude fits i128");
                        debug_assert!(w.rat.denom() == &BigInt::from(1));
                        Some((int, w.half))
                    }
                })
                .collect(),
            table: inst.chars().symbol_table(p),
        })
        .collect()
}

/// Fill `ws.vals` with the valuation of `ws.d` at each plan prime and leave
/// the coprime part (primes of the powerfree part stripped) in `ws.dhat`.
fn valuations(q: u64, plans: &[PrimePlan], ws: &mut Workspace) {
    ws.vals.clear();
    ws.dhat.clear();
    ws.dhat.extend_from_slice(&ws.d);
    for plan in plans {
        let mut v = 0u32;
        ws.probe.clear();
        ws.probe.extend_from_slice(&ws.dhat);
        while raw::try_div_exact(&ws.probe, plan.coeffs, q, &mut ws.quot, &mut ws.rem) {
            v += 1;
            std::mem::swap(&mut ws.probe, &mut ws.quot);
        }
        if plan.strip {
            std::mem::swap(&mut ws.dhat, &mut ws.probe);
        }
        ws.vals.push(v);
    }
}

/// Symbol class of the coprime part in `ws.dhat` against the powerfree-part
/// primes. Never vanishes.
fn coprime_symbol(inst: &MdsInstance, plans: &[PrimePlan], ws: &mut Workspace) -> u32 {
    let q = inst.q();
    let n = inst.n();
    let mut t = 0u32;
    for plan in plans {
        if plan.sym_e == 0 {
            continue;
        }
        let rcode = raw::rem_code(&ws.dhat, plan.coeffs, q, &mut ws.rem);
        debug_assert_ne!(rcode, 0, "coprime part divisible by a powerfree prime");
        let s = match plan.table {
            Some(table) => table[rcode as usize] as u32,
            None => inst
                .chars()
                .prime_symbol_dlog_code(rcode, plan.poly)
                .expect("nonzero residue"),
        };
        t = (t + plan.sym_e * s) % n;
    }
    t
}

fn counts_to_cyc(inst: &MdsInstance, counts: &[i128]) -> CycNum {
    let mut acc = CycNum::zero(inst.chars().cyclo());
    for (t, &c) in counts.iter().enumerate() {
        if c != 0 {
            acc = acc.add(
                &inst
                    .chars()
                    .eps_cyc(t as u32)
                    .scale(&BigRational::from_integer(BigInt::from(c))),
            );
        }
    }
    acc
}

/// The raw pair grid Σ_{d,m monic} χ_{m0}(d̂) a(d, m) x^{deg d} y^{deg m}.
/// This is the whole first series; its masked variants give the triangular
/// and diagonal pieces of the decomposition.
pub fn pair_grid(inst: &MdsInstance, jmax: usize, kmax: usize) -> SeriesGrid<CycNum> {
    let q = inst.q();
    let n = inst.n();
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(inst.chars().cyclo()));
    for k in 0..=kmax {
        let column: Vec<Vec<i128>> = inst
            .factored(k)
            .par_iter()
            .map(|fm| {
                let plans = build_plans(inst, fm, jmax);
                let mut ws = Workspace::new();
                let mut acc = vec![vec![0i128; n as usize]; jmax + 1];
                for (j, row) in acc.iter_mut().enumerate() {
                    raw::first_monic(&mut ws.d, j);
                    loop {
                        valuations(q, &plans, &mut ws);
                        let mut a_val = 1i128;
                        let mut dead = false;
                        for (plan, &v) in plans.iter().zip(&ws.vals) {
                            match plan.a_by_v[v as usize] {
                                None => {
                                    dead = true;
                                    break;
                                }
                                Some(a) => a_val *= a as i128,
                            }
                        }
                        if !dead {
                            let t = coprime_symbol(inst, &plans, &mut ws);
                            row[t as usize] += a_val;
                        }
                        if !raw::next_monic(&mut ws.d, q) {
                            break;
                        }
                    }
                }
                acc
            })
            .reduce(
                || vec![vec![0i128; n as usize]; jmax + 1],
                |mut a, b| {
                    for (ra, rb) in a.iter_mut().zip(&b) {
                        for (x, y) in ra.iter_mut().zip(rb) {
                            *x += y;
                        }
                    }
                    a
                },
            );
        for (j, counts) in column.iter().enumerate() {
            grid.set(j, k, counts_to_cyc(inst, counts));
        }
    }
    grid
}

/// The first series again, through the L-function route: for each m the
/// column contribution is the expansion of L(s, χ_{m0}) P(s; m).
pub fn z1_grid_via_l(inst: &MdsInstance, jmax: usize, kmax: usize) -> Result<SeriesGrid<CycNum>> {
    let q = inst.q();
    let lcache = lfun_cache(inst, kmax, false)?;
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(inst.chars().cyclo()));
    for k in 0..=kmax {
        let columns: Vec<Vec<CycNum>> = inst
            .factored(k)
            .par_iter()
            .map(|fm| {
                let l = &lcache[&fm.m0.code(q)];
                let p = euler_p(inst.chars(), &fm.m)?;
                UniRat::new(l.num.mul(&p), l.den.clone()).expand(jmax as i64)
            })
            .collect::<Result<_>>()?;
        for col in columns {
            for (j, v) in col.into_iter().enumerate() {
                grid.add_into(j, k, &v);
            }
        }
    }
    Ok(grid)
}

/// L(s, χ_{m0}) (or its conjugate) for every distinct powerfree part among
/// monics of degree <= kmax, keyed by code.
pub fn lfun_cache(
    inst: &MdsInstance,
    kmax: usize,
    conj: bool,
) -> Result<HashMap<u64, UniRat<CycNum>>> {
    let q = inst.q();
    let mut codes: Vec<u64> = Vec::new();
    for k in 0..=kmax {
        for fm in inst.factored(k) {
            codes.push(fm.m0.code(q));
        }
    }
    codes.sort_unstable();
    codes.dedup();
    codes
        .into_par_iter()
        .map(|code| {
            let m0 = Poly::from_code(code, q);
            Ok((code, lfun(inst.chars(), &m0, conj)?))
        })
        .collect()
}

/// The Gauss-sum series before its zeta prefactor:
/// Σ_{d,m} g(1,ε,χ_{m0})/√|m̃| · χ̄_{m0}(d̂) b(d,m) x^{deg d} y^{deg m}.
fn z2_inner_grid(
    inst: &MdsInstance,
    jmax: usize,
    kmax: usize,
    gauss: &HashMap<u64, CycNum>,
) -> SeriesGrid<CycNum> {
    let q = inst.q();
    let n = inst.n();
    let cyclo = inst.chars().cyclo();
    let sqrt = CycNum::sqrt_q(cyclo);
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(cyclo));
    for k in 0..=kmax {
        let columns: Vec<Vec<CycNum>> = inst
            .factored(k)
            .par_iter()
            .map(|fm| {
                // g(1,ε,χ_{m0}) / √|m̃|
                let g_norm = gauss[&fm.m0.code(q)]
                    .mul(&CycNum::sqrt_q_pow(cyclo, -(fm.mtilde.deg().max(0))));
                let plans = build_plans(inst, fm, jmax);
                let mut ws = Workspace::new();
                // accumulate by (j, conjugated symbol class, √q parity)
                let mut acc = vec![vec![[0i128; 2]; n as usize]; jmax + 1];
                for (j, row) in acc.iter_mut().enumerate() {
                    raw::first_monic(&mut ws.d, j);
                    loop {
                        valuations(q, &plans, &mut ws);
                        let mut b_int = 1i128;
                        let mut b_half = false;
                        let mut dead = false;
                        for (plan, &v) in plans.iter().zip(&ws.vals) {
                            match plan.b_by_v[v as usize] {
                                None => {
                                    dead = true;
                                    break;
                                }
                                Some((int, half)) => {
                                    b_int *= int;
                                    if b_half && half {
                                        b_int *= q as i128;
                                    }
                                    b_half ^= half;
                                }
                            }
                        }
                        if !dead {
                            let t = coprime_symbol(inst, &plans, &mut ws);
                            let tbar = ((n - t) % n) as usize;
                            row[tbar][b_half as usize] += b_int;
                        }
                        if !raw::next_monic(&mut ws.d, q) {
                            break;
                        }
                    }
                }
                let mut column = Vec::with_capacity(jmax + 1);
                for row in &acc {
                    let mut cell = CycNum::zero(cyclo);
                    for (t, pair) in row.iter().enumerate() {
                        let mut part = CycNum::zero(cyclo);
                        if pair[0] != 0 {
                            part = part.add(&CycNum::from_rational(
                                cyclo,
                                BigRational::from_integer(BigInt::from(pair[0])),
                            ));
                        }
                        if pair[1] != 0 {
                            part = part
                                .add(&sqrt.scale(&BigRational::from_integer(BigInt::from(pair[1]))));
                        }
                        if !part.is_zero() {
                            cell = cell.add(&inst.chars().eps_cyc(t as u32).mul(&part));
                        }
                    }
                    column.push(cell.mul(&g_norm));
                }
                column
            })
            .collect();
        for col in columns {
            for (j, v) in col.into_iter().enumerate() {
                grid.add_into(j, k, &v);
            }
        }
    }
    grid
}

/// The full second series: the inner Gauss-sum grid multiplied, as a series
/// in y, by ζ_O(nw - n/2 + 1) = 1/(1 - q^{n/2} y^n).
pub fn z2_grid(
    inst: &MdsInstance,
    jmax: usize,
    kmax: usize,
    gauss: &HashMap<u64, CycNum>,
) -> SeriesGrid<CycNum> {
    let n = inst.n() as usize;
    let cyclo = inst.chars().cyclo();
    let inner = z2_inner_grid(inst, jmax, kmax, gauss);
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(cyclo));
    for j in 0..=jmax {
        for k in 0..=kmax {
            let mut cell = CycNum::zero(cyclo);
            let mut a = 0usize;
            while n * a <= k {
                let scale = CycNum::sqrt_q_pow(cyclo, (n * a) as i64);
                cell = cell.add(&inner.get(j, k - n * a).mul(&scale));
                a += 1;
            }
            grid.set(j, k, cell);
        }
    }
    grid
}

/// Brute-force grid of T_a(s, w) = Σ_{m: m0=1} Σ_d a(d, m) x^{deg d} y^{deg m}.
pub fn t_a_brute(inst: &MdsInstance, jmax: usize, kmax: usize) -> SeriesGrid<CycNum> {
    let q = inst.q();
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(inst.chars().cyclo()));
    for k in 0..=kmax {
        let column: Vec<i128> = inst
            .factored(k)
            .par_iter()
            .filter(|fm| fm.is_nth_power())
            .map(|fm| {
                let plans = build_plans(inst, fm, jmax);
                let mut ws = Workspace::new();
                let mut acc = vec![0i128; jmax + 1];
                for (j, slot) in acc.iter_mut().enumerate() {
                    raw::first_monic(&mut ws.d, j);
                    loop {
                        valuations(q, &plans, &mut ws);
                        let mut a_val = 1i128;
                        let mut dead = false;
                        for (plan, &v) in plans.iter().zip(&ws.vals) {
                            match plan.a_by_v[v as usize] {
                                None => {
                                    dead = true;
                                    break;
                                }
                                Some(a) => a_val *= a as i128,
                            }
                        }
                        if !dead {
                            *slot += a_val;
                        }
                        if !raw::next_monic(&mut ws.d, q) {
                            break;
                        }
                    }
                }
                acc
            })
            .reduce(
                || vec![0i128; jmax + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(&b) {
                        *x += y;
                    }
                    a
                },
            );
        for (j, &count) in column.iter().enumerate() {
            grid.set(j, k, counts_to_cyc(inst, &[count]));
        }
    }
    grid
}

/// Zero out the cells with x-degree strictly below the y-degree, leaving
/// the triangular piece summed over deg m <= deg d.
pub fn mask_lower_triangle(grid: &SeriesGrid<CycNum>) -> SeriesGrid<CycNum> {
    let mut out = grid.clone();
    for j in 0..=grid.jmax() {
        for k in 0..=grid.kmax() {
            if k > j {
                let z = out.get(j, k).zero_like();
                out.set(j, k, z);
            }
        }
    }
    out
}

/// Keep only the diagonal deg m = deg d.
pub fn mask_diagonal(grid: &SeriesGrid<CycNum>) -> SeriesGrid<CycNum> {
    let mut out = grid.clone();
    for j in 0..=grid.jmax() {
        for k in 0..=grid.kmax() {
            if k != j {
                let z = out.get(j, k).zero_like();
                out.set(j, k, z);
            }
        }
    }
    out
}

/// Claimed vanishing of Σ_{deg d = k} (d/m) for deg m <= k, unless m is a
/// perfect n-th power. Returns the violations.
pub fn vanishing_plain_failures(
    inst: &MdsInstance,
    max_m_deg: usize,
    max_d_deg: usize,
) -> Vec<(Poly, usize)> {
    let q = inst.q();
    let n = inst.n();
    let mut all: Vec<&FactoredMonic> = Vec::new();
    for k in 0..=max_m_deg {
        all.extend(inst.factored(k).iter());
    }
    let mut failures: Vec<(Poly, usize)> = all
        .par_iter()
        .flat_map_iter(|fm| {
            let mut out = Vec::new();
            if fm.is_nth_power() {
                return out.into_iter();
            }
            let plans: Vec<PrimePlan> = build_plans(inst, fm, 0)
                .into_iter()
                .filter(|p| p.sym_e > 0)
                .collect();
            let mut ws = Workspace::new();
            let lo = fm.m.deg().max(0) as usize;
            for k in lo..=max_d_deg {
                let mut counts = vec![0i128; n as usize];
                raw::first_monic(&mut ws.d, k);
                loop {
                    // plain symbol (d/m): zero as soon as a powerfree prime
                    // divides d
                    let mut t = 0u32;
                    let mut zero = false;
                    for plan in &plans {
                        let rcode = raw::rem_code(&ws.d, plan.coeffs, q, &mut ws.rem);
                        if rcode == 0 {
                            zero = true;
                            break;
                        }
                        let s = match plan.table {
                            Some(table) => table[rcode as usize] as u32,
                            None => inst
                                .chars()
                                .prime_symbol_dlog_code(rcode, plan.poly)
                                .expect("nonzero residue"),
                        };
                        t = (t + plan.sym_e * s) % n;
                    }
                    if !zero {
                        counts[t as usize] += 1;
                    }
                    if !raw::next_monic(&mut ws.d, q) {
                        break;
                    }
                }
                if !counts_to_cyc(inst, &counts).is_zero() {
                    out.push((fm.m.clone(), k));
                }
            }
            out.into_iter()
        })
        .collect();
    failures.sort_by_key(|(m, k)| (m.code(inst.q()), *k));
    failures
}

/// The weighted vanishing Σ_{deg d = k} χ_{m0}(d̂) a(d, m) = 0 for
/// deg m <= k <= depth, m not a perfect n-th power. Returns violations.
pub fn vanishing_weighted_failures(
    inst: &MdsInstance,
    max_m_deg: usize,
    depth: usize,
) -> Result<Vec<(Poly, usize)>> {
    let mut all: Vec<&FactoredMonic> = Vec::new();
    for k in 0..=max_m_deg {
        all.extend(inst.factored(k).iter());
    }
    let nested: Vec<Vec<(Poly, usize)>> = all
        .par_iter()
        .map(|fm| {
            let mut out = Vec::new();
            if fm.is_nth_power() {
                return Ok(out);
            }
            let coeffs = lfun_hat_brute(inst.chars(), &fm.m, depth)?;
            let lo = fm.m.deg().max(0) as usize;
            for (k, c) in coeffs.iter().enumerate().skip(lo) {
                if !c.is_zero() {
                    out.push((fm.m.clone(), k));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut failures: Vec<(Poly, usize)> = nested.into_iter().flatten().collect();
    failures.sort_by_key(|(m, k)| (m.code(inst.q()), *k));
    Ok(failures)
}

/// Exhaustive reciprocity (m/d) = (d/m) over coprime monic pairs of degree
/// at most `max_deg`. Returns the number of coprime pairs checked and the
/// smallest counterexample, if any.
pub fn reciprocity_failures(inst: &MdsInstance, max_deg: usize) -> (u64, Option<(Poly, Poly)>) {
    let q = inst.q();
    let field = inst.chars().field().clone();
    let mut all: Vec<&FactoredMonic> = Vec::new();
    for k in 0..=max_deg {
        all.extend(inst.factored(k).iter());
    }
    let results: Vec<(u64, Option<(Poly, Poly)>)> = all
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let mut count = 0u64;
            let mut worst: Option<(Poly, Poly)> = None;
            for b in &all[i..] {
                let share_prime = b
                    .factors
                    .iter()
                    .any(|(p, _)| field.poly_rem(&a.m, p).is_zero());
                if share_prime {
                    continue;
                }
                count += 1;
                let ab = inst.symbol_from_factors(&a.m, &b.m0_factors);
                let ba = inst.symbol_from_factors(&b.m, &a.m0_factors);
                if ab != ba && worst.is_none() {
                    worst = Some((a.m.clone(), b.m.clone()));
                }
            }
            (count, worst)
        })
        .collect();
    let mut total = 0u64;
    let mut worst: Option<(Poly, Poly)> = None;
    for (c, w) in results {
        total += c;
        if let Some(pair) = w {
            let better = match &worst {
                None => true,
                Some(prev) => (pair.0.code(q), pair.1.code(q)) < (prev.0.code(q), prev.1.code(q)),
            };
            if better {
                worst = Some(pair);
            }
        }
    }
    (total, worst)
}

/// Exhaustive symmetry a(d, m) = a(m, d) over monic pairs of degree at most
/// `max_deg`.
pub fn weight_a_symmetry_failures(inst: &MdsInstance, max_deg: usize) -> Option<(Poly, Poly)> {
    let q = inst.q();
    let mut all: Vec<&FactoredMonic> = Vec::new();
    for k in 0..=max_deg {
        all.extend(inst.factored(k).iter());
    }
    let plans_all: Vec<Vec<PrimePlan>> = all
        .iter()
        .map(|fm| build_plans(inst, fm, max_deg))
        .collect();
    let a_of = |d: &FactoredMonic, plans: &[PrimePlan], ws: &mut Workspace| -> u128 {
        ws.d.clear();
        ws.d.extend_from_slice(d.m.coeffs());
        valuations(q, plans, ws);
        let mut acc = 1u128;
        for (plan, &v) in plans.iter().zip(&ws.vals) {
            match plan.a_by_v[v as usize] {
                None => return 0,
                Some(a) => acc *= a,
            }
        }
        acc
    };
    let failures: Vec<(Poly, Poly)> = all
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, d)| {
            let mut ws = Workspace::new();
            let mut out = Vec::new();
            for (m, mplans) in all[i..].iter().zip(&plans_all[i..]) {
                if a_of(d, mplans, &mut ws) != a_of(m, &plans_all[i], &mut ws) {
                    out.push((d.m.clone(), m.m.clone()));
                }
            }
            out.into_iter()
        })
        .collect();
    failures
        .into_iter()
        .min_by_key(|(a, b)| (a.code(q), b.code(q)))
}

/// Termwise diagonal symmetry χ_{m0}(d̂) a(d,m) = χ_{d0}(m̂) a(m,d) for
/// deg d = deg m <= max_deg.
pub fn diagonal_symmetry_failures(inst: &MdsInstance, max_deg: usize) -> Option<(Poly, Poly)> {
    let q = inst.q();
    let term = |d: &FactoredMonic, plans: &[PrimePlan], ws: &mut Workspace| -> (u128, u32) {
        ws.d.clear();
        ws.d.extend_from_slice(d.m.coeffs());
        valuations(q, plans, ws);
        let mut acc = 1u128;
        for (plan, &v) in plans.iter().zip(&ws.vals) {
            match plan.a_by_v[v as usize] {
                None => return (0, 0),
                Some(a) => acc *= a,
            }
        }
        let t = coprime_symbol(inst, plans, ws);
        (acc, t)
    };
    for k in 0..=max_deg {
        let fms = inst.factored(k);
        let plans_all: Vec<Vec<PrimePlan>> =
            fms.iter().map(|fm| build_plans(inst, fm, k)).collect();
        let bad = fms
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, d)| {
                let mut ws = Workspace::new();
                let mut out = Vec::new();
                for (m, mplans) in fms[i..].iter().zip(&plans_all[i..]) {
                    if term(d, mplans, &mut ws) != term(m, &plans_all[i], &mut ws) {
                        out.push((d.m.clone(), m.m.clone()));
                    }
                }
                out.into_iter()
            })
            .min_by_key(|(a, b)| (a.code(q), b.code(q)));
        if bad.is_some() {
            return bad;
        }
    }
    None
}

/// The series Σ_m g(1,ε,χ_{m0})/√|m̃| · L(s, χ̄_{m0}) Q(s; m) / |m|^w built
/// from the reflected Euler products; equal to the Gauss-sum series.
pub fn z2_from_q_grid(
    inst: &MdsInstance,
    jmax: usize,
    kmax: usize,
    gauss: &HashMap<u64, CycNum>,
) -> Result<SeriesGrid<CycNum>> {
    let q = inst.q();
    let cyclo = inst.chars().cyclo();
    let lcache = lfun_cache(inst, kmax, true)?;
    let mut grid = SeriesGrid::zeros(jmax, kmax, CycNum::zero(cyclo));
    for k in 0..=kmax {
        let columns: Vec<Vec<CycNum>> = inst
            .factored(k)
            .par_iter()
            .map(|fm| {
                let g_norm = gauss[&fm.m0.code(q)]
                    .mul(&CycNum::sqrt_q_pow(cyclo, -(fm.mtilde.deg().max(0))));
                let l = &lcache[&fm.m0.code(q)];
                let qq = euler_q(inst.chars(), &fm.m)?;
                let col = UniRat::new(l.num.mul(&qq), l.den.clone()).expand(jmax as i64)?;
                Ok(col.into_iter().map(|c| c.mul(&g_norm)).collect())
            })
            .collect::<Result<_>>()?;
        for col in columns {
            for (j, v) in col.into_iter().enumerate() {
                grid.add_into(j, k, &v);
            }
        }
    }
    Ok(grid)
}
