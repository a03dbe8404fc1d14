//! Floating-point oracle for the Dirichlet series
//! L_m(s) = sum over odd l of (-m/l) l^{-s} and its companion
//! L_{-m}(s) with character (m/l), plus the sine/cosine Fourier series that
//! express these L-values as finite character combinations. Everything here
//! is independent of the exact closed-form machinery, so agreement between
//! the two is a genuine cross-check.

use num_traits::ToPrimitive;

use crate::arith::{jacobi, rat, squarefree_decompose, Rat};
use crate::Error;

/// Tolerance for oracle-vs-closed-form comparisons at s >= 2.
pub const ORACLE_TOL: f64 = 1e-6;
/// Tolerance at s = 1, where the series converges only conditionally.
pub const ORACLE_TOL_S1: f64 = 1e-4;

/// A numerically evaluated L-value together with its tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LValue {
    pub value: f64,
    /// Tail estimate: rigorous for s >= 2, heuristic (documented in
    /// `l_plus`) for s = 1.
    pub error_bound: f64,
    pub terms_used: u64,
}

/// Largest block count keeping the default summand budget of 10^7 per call.
pub fn default_blocks(m: u64) -> u64 {
    (5_000_000 / m).max(2)
}

// Character table chi(j) for odd j in [1, 4m), period 4m. `numerator`
// selects (numerator/l) as the character.
fn character_table(numerator: i64, m: u64) -> Result<Vec<i8>, Error> {
    (1..4 * m)
        .step_by(2)
        .map(|j| jacobi(numerator, j as i64))
        .collect()
}

fn block_sum(table: &[i8], period: u64, s: u32, blocks: u64) -> (f64, f64, u64) {
    let neg_s = -(s as i32);
    let mut sum = 0.0f64;
    let mut prev = 0.0f64; // partial sum after blocks-1 complete blocks
    let mut terms = 0u64;
    for b in 0..blocks {
        if b == blocks - 1 {
            prev = sum;
        }
        let base = b * period;
        for (idx, &chi) in table.iter().enumerate() {
            terms += 1;
            if chi == 0 {
                continue;
            }
            let l = (base + 2 * idx as u64 + 1) as f64;
            sum += chi as f64 * l.powi(neg_s);
        }
    }
    (sum, prev, terms)
}

fn l_series(numerator: i64, m: u64, s: u32, blocks: u64) -> Result<LValue, Error> {
    if blocks == 0 {
        return Err(Error::NoBlocks);
    }
    let period = 4 * m;
    let table = character_table(numerator, m)?;
    let (sum, prev, terms) = block_sum(&table, period, s, blocks);
    let tail_start = (blocks * period + 1) as f64;
    if s == 1 {
        // Complete blocks of a mean-zero character leave a tail that decays
        // like c / blocks; averaging the last two block partial sums keeps
        // that order but with a small constant. The heuristic bound scales
        // the final block increment back up by the block count, doubled
        // since the increment estimates the tail constant only to first
        // order.
        let value = if blocks >= 2 { 0.5 * (sum + prev) } else { sum };
        let error_bound = (2.0 * blocks as f64 * (sum - prev).abs()).max(1e-12);
        return Ok(LValue {
            value,
            error_bound,
            terms_used: terms,
        });
    }
    let mean_zero = table.iter().map(|&c| c as i64).sum::<i64>() == 0;
    let error_bound = if mean_zero {
        // Abel summation against bounded character partial sums.
        period as f64 * tail_start.powi(-(s as i32))
    } else {
        // Principal character (m a perfect square): bound the tail by the
        // integral of the nonzero-term density.
        let nonzero = table.iter().filter(|&&c| c != 0).count() as f64;
        2.0 * (nonzero / period as f64) * tail_start.powi(1 - s as i32) / (s as f64 - 1.0)
    };
    Ok(LValue {
        value: sum,
        error_bound,
        terms_used: terms,
    })
}

/// L_m(s) = sum over odd l of (-m/l) l^{-s}, summed in complete blocks of
/// the character period dividing 4m. Requires s >= 1.
pub fn l_plus(m: u64, s: u32, blocks: u64) -> Result<LValue, Error> {
    if m == 0 {
        return Err(Error::BadM(0));
    }
    if s == 0 {
        return Err(Error::BadS { min: 1, got: s });
    }
    let mi = i64::try_from(m).map_err(|_| Error::TooLarge(m))?;
    l_series(-mi, m, s, blocks)
}

/// L_{-m}(s) = sum over odd l of (m/l) l^{-s}. Requires s >= 2: for a
/// perfect-square m the character is principal and the series diverges at
/// s = 1.
pub fn l_minus(m: u64, s: u32, blocks: u64) -> Result<LValue, Error> {
    if m == 0 {
        return Err(Error::BadM(0));
    }
    if s <= 1 {
        return Err(Error::BadS { min: 2, got: s });
    }
    let mi = i64::try_from(m).map_err(|_| Error::TooLarge(m))?;
    l_series(mi, m, s, blocks)
}

// Partial sums of sum_k trig(2 pi (2k+1) y) / (2k+1)^e. For rational
// y = p/q the angles repeat with period q in k, so the trig values come
// from a precomputed table indexed by (2k+1) p mod q.
fn fourier_sum(y: &Rat, exponent: i32, k_terms: u64, sine: bool) -> f64 {
    let p = y.numer().to_i64().expect("fourier point out of range");
    let q = y.denom().to_u64().expect("fourier denominator out of range");
    let tau = 2.0 * std::f64::consts::PI;
    let table: Vec<f64> = (0..q)
        .map(|r| {
            let angle = tau * r as f64 / q as f64;
            if sine {
                angle.sin()
            } else {
                angle.cos()
            }
        })
        .collect();
    let step = (2 * p).rem_euclid(q as i64) as u64;
    let mut r = p.rem_euclid(q as i64) as u64;
    let mut sum = 0.0f64;
    for k in 0..k_terms {
        let odd = (2 * k + 1) as f64;
        sum += table[r as usize] * odd.powi(-exponent);
        r += step;
        if r >= q {
            r -= q;
        }
    }
    sum
}

/// Partial sum of S_{2n+1}(y) = sum_k sin(2 pi (2k+1) y) / (2k+1)^{2n+1}
/// with `k_terms` summands.
pub fn fourier_s(n: u32, y: &Rat, k_terms: u64) -> f64 {
    fourier_sum(y, 2 * n as i32 + 1, k_terms, true)
}

/// Partial sum of C_{2n}(y) = sum_k cos(2 pi (2k+1) y) / (2k+1)^{2n} with
/// `k_terms` summands; n >= 1.
pub fn fourier_c(n: u32, y: &Rat, k_terms: u64) -> f64 {
    assert!(n >= 1, "C_{{2n}} needs n >= 1");
    fourier_sum(y, 2 * n as i32, k_terms, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombinationKind {
    /// Combination expressing L_m at odd arguments through S_{2n+1}.
    S,
    /// Combination expressing L_{-m} at even arguments through C_{2n}.
    C,
}

/// The finite character combination evaluating an L-value through Fourier
/// series: L = (2/sqrt(m)) * sum_k eps_k * F(y_k) with F = S_{2n+1} or
/// C_{2n} depending on `kind`. Zero-character indices are dropped, so every
/// eps entry is +-1.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCombination {
    pub m: u64,
    pub eps: Vec<i8>,
    pub y: Vec<Rat>,
}

/// Builds the combination for square-free m > 1, split on m mod 4.
pub fn fourier_combination(m: u64, kind: CombinationKind) -> Result<FourierCombination, Error> {
    if m <= 1 {
        return Err(Error::NotSquareFreeBase(m));
    }
    let dec = squarefree_decompose(m)?;
    if dec.u != 1 {
        return Err(Error::NotSquareFreeBase(m));
    }
    let mi = m as i64;
    let mut eps = Vec::new();
    let mut y = Vec::new();
    let mut push = |e: i8, num: u64, den: u64| {
        if e != 0 {
            eps.push(e);
            y.push(rat(num as i64, den as i64));
        }
    };
    // (half, quarter) index shapes: k/m for k <= (m-1)/2, or k/(4m) for odd k < m.
    let half = |push: &mut dyn FnMut(i8, u64, u64)| -> Result<(), Error> {
        for k in 1..=(m - 1) / 2 {
            push(jacobi(k as i64, mi)?, k, m);
        }
        Ok(())
    };
    let quarter = |push: &mut dyn FnMut(i8, u64, u64), num: i64| -> Result<(), Error> {
        for k in (1..m).step_by(2) {
            push(jacobi(num, k as i64)?, k, 4 * m);
        }
        Ok(())
    };
    match (m % 4, kind) {
        (3, CombinationKind::S) => half(&mut push)?,
        (3, CombinationKind::C) => quarter(&mut push, mi)?,
        (1, CombinationKind::S) => quarter(&mut push, -mi)?,
        (1, CombinationKind::C) => half(&mut push)?,
        (2, CombinationKind::S) => quarter(&mut push, -mi)?,
        (2, CombinationKind::C) => quarter(&mut push, mi)?,
        _ => unreachable!("square-free m is never 0 mod 4"),
    }
    Ok(FourierCombination { m, eps, y })
}

impl FourierCombination {
    /// Evaluates (2/sqrt(m)) * sum_k eps_k * F(n, y_k) with `k_terms`
    /// summands per Fourier series.
    pub fn evaluate(&self, kind: CombinationKind, n: u32, k_terms: u64) -> f64 {
        let mut sum = 0.0f64;
        for (e, y) in self.eps.iter().zip(&self.y) {
            let f = match kind {
                CombinationKind::S => fourier_s(n, y, k_terms),
                CombinationKind::C => fourier_c(n, y, k_terms),
            };
            sum += *e as f64 * f;
        }
        2.0 / (self.m as f64).sqrt() * sum
    }
}
