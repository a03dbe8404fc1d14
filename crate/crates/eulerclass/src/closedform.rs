//! Closed forms of the generating functions s_m(x).
//!
//! For every m >= 1 the even part c_m(x) and odd part d_m(x) of s_m(x) are
//! finite sums of terms coeff * cos(a x) / cos(b x) and
//! coeff * sin(a x) / cos(b x). Square-free m > 1 is handled by a direct
//! character-weighted construction split on m mod 4; composite m = b u^2
//! reduces to the square-free base through a subset expansion over the
//! distinct odd primes of u. Expanding the closed form with the exact
//! series engine yields the integer sequence s_{m,0}, s_{m,1}, ...

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{
    binomial, factorial, jacobi, rat_to_f64, squarefree_decompose, Int, Rat,
    SquareFreeDecomposition,
};
use crate::series::TruncatedSeries;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Cos,
    Sin,
}

/// One summand coeff * flavor(num_freq * x) / cos(den_freq * x).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrigTerm {
    #[serde(serialize_with = "serialize_rat")]
    pub coeff: Rat,
    pub flavor: Flavor,
    pub num_freq: u64,
    pub den_freq: u64,
}

fn serialize_rat<S: Serializer>(value: &Rat, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&value.to_string())
}

impl TrigTerm {
    pub fn new(coeff: Rat, flavor: Flavor, num_freq: u64, den_freq: u64) -> Self {
        TrigTerm {
            coeff,
            flavor,
            num_freq,
            den_freq,
        }
    }

    fn sort_key(&self) -> (u64, u64, Flavor) {
        (self.den_freq, self.num_freq, self.flavor)
    }

    fn series(&self, order: usize) -> TruncatedSeries {
        let num = match self.flavor {
            Flavor::Cos => TruncatedSeries::cos(self.num_freq, order),
            Flavor::Sin => TruncatedSeries::sin(self.num_freq, order),
        };
        num.scale(&self.coeff)
    }
}

/// The closed form of s_m(x): c_terms sum to the even part, d_terms to the
/// odd part. Both lists are canonically sorted by (den_freq, num_freq) with
/// like terms merged and zero terms removed, so equality is structural.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedForm {
    pub m: u64,
    pub c_terms: Vec<TrigTerm>,
    pub d_terms: Vec<TrigTerm>,
}

fn canonical(mut terms: Vec<TrigTerm>) -> Vec<TrigTerm> {
    terms.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let mut out: Vec<TrigTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.sort_key() == t.sort_key() => last.coeff += t.coeff,
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

/// Closed form for m = 1: sec x + tan x.
pub fn base_form() -> ClosedForm {
    ClosedForm {
        m: 1,
        c_terms: vec![TrigTerm::new(Rat::one(), Flavor::Cos, 0, 1)],
        d_terms: vec![TrigTerm::new(Rat::one(), Flavor::Sin, 1, 1)],
    }
}

/// Closed form for square-free b > 1, dispatching on b mod 4. The even and
/// odd parts are built separately so composite assembly can weight them
/// with different signs.
pub fn squarefree_form(b: u64) -> Result<ClosedForm, Error> {
    if b <= 1 {
        return Err(Error::BadBase(b));
    }
    let dec = squarefree_decompose(b)?;
    if dec.u != 1 {
        return Err(Error::BadBase(b));
    }
    let bi = b as i64;
    let mut c_terms = Vec::new();
    let mut d_terms = Vec::new();
    let push = |terms: &mut Vec<TrigTerm>, chi: i8, flavor: Flavor, num: u64| {
        if chi != 0 {
            terms.push(TrigTerm::new(
                Rat::from_integer(Int::from(chi)),
                flavor,
                num,
                b,
            ));
        }
    };
    match b % 4 {
        3 => {
            let t = (b - 3) / 4;
            for k in 1..=t {
                let chi = jacobi(k as i64, bi)?;
                push(&mut c_terms, chi, Flavor::Cos, b - 4 * k);
                push(&mut d_terms, chi, Flavor::Sin, 4 * k);
            }
            for k in t + 1..=2 * t + 1 {
                let chi = jacobi(k as i64, bi)?;
                push(&mut c_terms, chi, Flavor::Cos, 4 * k - b);
                push(&mut d_terms, chi, Flavor::Sin, 2 * b - 4 * k);
            }
        }
        1 => {
            let t = (b - 1) / 4;
            for k in 1..=t {
                let chi = jacobi(k as i64, bi)?;
                push(&mut c_terms, chi, Flavor::Cos, 4 * k);
                push(&mut d_terms, chi, Flavor::Sin, b - 4 * k);
            }
            for k in t + 1..=2 * t {
                let chi = jacobi(k as i64, bi)?;
                push(&mut c_terms, -chi, Flavor::Cos, 2 * b - 4 * k);
                push(&mut d_terms, -chi, Flavor::Sin, 4 * k - b);
            }
        }
        2 => {
            for k in (1..b).step_by(2) {
                let chi = jacobi(-bi, k as i64)?;
                push(&mut c_terms, chi, Flavor::Cos, b - k);
                push(&mut d_terms, chi, Flavor::Sin, k);
            }
        }
        // A square-free integer is never 0 mod 4.
        _ => unreachable!("square-free base divisible by 4"),
    }
    Ok(ClosedForm {
        m: b,
        c_terms: canonical(c_terms),
        d_terms: canonical(d_terms),
    })
}

/// One summand of the subset expansion of m = b u^2 over the distinct odd
/// primes of u: c_m(x) = sum weight * sigma_c * c_b(t x) and likewise for
/// d_m with sigma_d.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm {
    /// The odd primes of u selected by this term.
    pub subset: Vec<u64>,
    /// Dilation factor, t = u^2 / prod(subset); always divides u^2.
    pub t: u64,
    /// K_b * t / u.
    pub weight: Rat,
    /// prod over the subset of -(-b/u_i).
    pub sigma_c: i8,
    /// prod over the subset of -(b/u_i).
    pub sigma_d: i8,
}

/// Expands m = b u^2 into one term per subset of the odd primes of u whose
/// character values are all nonzero. Subsets touching a prime with
/// character value 0 drop out entirely, since (-b/p) = 0 iff (b/p) = 0.
pub fn expansion_terms(dec: &SquareFreeDecomposition) -> Vec<ExpansionTerm> {
    let k = dec.odd_primes.len();
    let mut out = Vec::new();
    'subset: for mask in 0u32..(1 << k) {
        let mut subset = Vec::new();
        let mut divisor = 1u64;
        let mut sigma_c = 1i8;
        let mut sigma_d = 1i8;
        for i in 0..k {
            if mask & (1 << i) != 0 {
                if dec.eps_c[i] == 0 {
                    continue 'subset;
                }
                subset.push(dec.odd_primes[i]);
                divisor *= dec.odd_primes[i];
                sigma_c *= -dec.eps_c[i];
                sigma_d *= -dec.eps_d[i];
            }
        }
        let t = dec.u * dec.u / divisor;
        let weight = &dec.k_b * Rat::new(Int::from(t), Int::from(dec.u));
        out.push(ExpansionTerm {
            subset,
            t,
            weight,
            sigma_c,
            sigma_d,
        });
    }
    out
}

/// Closed form of s_m(x) for any m >= 1.
pub fn build(m: u64) -> Result<ClosedForm, Error> {
    if m == 0 {
        return Err(Error::BadM(0));
    }
    if m == 1 {
        // The expansion weight K_b t / u assumes m > 1; the base case is
        // already normalized.
        return Ok(base_form());
    }
    let dec = squarefree_decompose(m)?;
    let base = if dec.b == 1 {
        base_form()
    } else {
        squarefree_form(dec.b)?
    };
    let mut c_terms = Vec::new();
    let mut d_terms = Vec::new();
    for ex in expansion_terms(&dec) {
        let wc = &ex.weight * Rat::from_integer(Int::from(ex.sigma_c));
        let wd = &ex.weight * Rat::from_integer(Int::from(ex.sigma_d));
        for term in &base.c_terms {
            c_terms.push(TrigTerm::new(
                &term.coeff * &wc,
                Flavor::Cos,
                term.num_freq * ex.t,
                term.den_freq * ex.t,
            ));
        }
        for term in &base.d_terms {
            d_terms.push(TrigTerm::new(
                &term.coeff * &wd,
                Flavor::Sin,
                term.num_freq * ex.t,
                term.den_freq * ex.t,
            ));
        }
    }
    Ok(ClosedForm {
        m,
        c_terms: canonical(c_terms),
        d_terms: canonical(d_terms),
    })
}

fn expand_terms(terms: &[TrigTerm], order: usize) -> TruncatedSeries {
    // Group numerators by denominator frequency so each secant series is
    // inverted and multiplied once.
    let mut grouped: BTreeMap<u64, TruncatedSeries> = BTreeMap::new();
    for term in terms {
        grouped
            .entry(term.den_freq)
            .and_modify(|s| *s = s.add(&term.series(order)))
            .or_insert_with(|| term.series(order));
    }
    let mut total = TruncatedSeries::zero(order);
    for (den, numerator) in grouped {
        let sec = TruncatedSeries::cos(den, order)
            .reciprocal()
            .expect("cos series has constant term 1");
        total = total.add(&numerator.mul(&sec));
    }
    total
}

impl ClosedForm {
    /// Exact Taylor series of the even part c_m(x).
    pub fn c_series(&self, order: usize) -> TruncatedSeries {
        expand_terms(&self.c_terms, order)
    }

    /// Exact Taylor series of the odd part d_m(x).
    pub fn d_series(&self, order: usize) -> TruncatedSeries {
        expand_terms(&self.d_terms, order)
    }

    /// The integers s_{m,0}..s_{m,n_max}: EGF coefficients of the even part
    /// at even indices interleaved with the odd part at odd indices.
    /// Fails if any value is not a positive integer, which would signal an
    /// internal inconsistency.
    pub fn coefficients(&self, n_max: usize) -> Result<Vec<Int>, Error> {
        let order = 2 * n_max + 2;
        let c = self.c_series(order);
        let d = self.d_series(order);
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let v = if n % 2 == 0 {
                c.egf_coefficient(n)?
            } else {
                d.egf_coefficient(n)?
            };
            if !v.is_integer() || !v.is_positive() {
                return Err(Error::BadCoefficient {
                    m: self.m,
                    index: n,
                    value: v.to_string(),
                });
            }
            out.push(v.to_integer());
        }
        Ok(out)
    }

    /// Cosine polynomial of cos(m x) * c_m(x) as (coefficient, frequency)
    /// pairs in increasing frequency order. Every denominator frequency d
    /// of the closed form divides m with odd quotient, so
    /// cos(m x) / cos(d x) is itself a cosine polynomial and the product
    /// stays finite.
    pub fn hat_cos_poly(&self) -> Vec<(Rat, u64)> {
        let mut acc: BTreeMap<u64, Rat> = BTreeMap::new();
        for term in &self.c_terms {
            for (coeff, freq) in hat_products(self.m, term) {
                *acc.entry(freq).or_insert_with(Rat::zero) += coeff;
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, c)| (c, f))
            .collect()
    }

    /// Sine polynomial of cos(m x) * d_m(x), same representation as
    /// `hat_cos_poly`.
    pub fn hat_sin_poly(&self) -> Vec<(Rat, u64)> {
        let mut acc: BTreeMap<u64, Rat> = BTreeMap::new();
        for term in &self.d_terms {
            for (coeff, freq) in hat_products(self.m, term) {
                if freq != 0 {
                    *acc.entry(freq).or_insert_with(Rat::zero) += coeff;
                }
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, c)| (c, f))
            .collect()
    }
}

// Expands cos(m x) * term into a finite trig polynomial. With q = m / den
// odd and j = (q - 1) / 2,
//   cos(m x) / cos(den x) = (-1)^j + 2 sum_{i=1..j} (-1)^{j-i} cos(2 i den x),
// and the product against the numerator splits by product-to-sum.
fn hat_products(m: u64, term: &TrigTerm) -> Vec<(Rat, u64)> {
    let den = term.den_freq;
    let nu = term.num_freq;
    debug_assert!(m % den == 0 && (m / den) % 2 == 1);
    let j = (m / den - 1) / 2;
    let mut out = Vec::new();
    let lead = if j % 2 == 0 { 1i8 } else { -1 };
    out.push((
        &term.coeff * Rat::from_integer(Int::from(lead)),
        nu,
    ));
    for i in 1..=j {
        let sign = if (j - i) % 2 == 0 { 1i64 } else { -1 };
        let w = &term.coeff * Rat::from_integer(Int::from(sign));
        let f = 2 * i * den;
        match term.flavor {
            // 2 cos(f x) cos(nu x) = cos((f + nu) x) + cos((f - nu) x)
            Flavor::Cos => {
                out.push((w.clone(), f + nu));
                out.push((w, f.abs_diff(nu)));
            }
            // 2 cos(f x) sin(nu x) = sin((nu + f) x) + sin((nu - f) x)
            Flavor::Sin => {
                out.push((w.clone(), nu + f));
                match nu.cmp(&f) {
                    std::cmp::Ordering::Greater => out.push((w, nu - f)),
                    std::cmp::Ordering::Less => out.push((-w, f - nu)),
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Exact residual of the linear recurrence implied by
/// cos(m x) * c_m(x) resp. cos(m x) * d_m(x) being a finite trig polynomial:
///
///   even: sum_{i=0..n} (-1)^i m^{2i} C(2n, 2i) c_{m,n-i} - (2n)! [x^{2n}] (cos(m x) c_m(x))
///   odd:  sum_{i=0..n-1} (-1)^i m^{2i} C(2n-1, 2i) d_{m,n-i} - (2n-1)! [x^{2n-1}] (cos(m x) d_m(x))
///
/// The hat side is evaluated directly from the trig-polynomial term list,
/// independent of the series reciprocal, so a zero residual genuinely
/// cross-checks the expansion.
pub fn recurrence_residual(m: u64, n: usize, parity: Parity) -> Result<Rat, Error> {
    let form = build(m)?;
    let mpow = |i: usize| Int::from(m).pow(2 * i as u32);
    match parity {
        Parity::Even => {
            let seq = form.coefficients(2 * n)?;
            let mut lhs = Rat::zero();
            for i in 0..=n {
                let sign = if i % 2 == 0 { Int::one() } else { -Int::one() };
                lhs += Rat::from_integer(sign * mpow(i) * binomial(2 * n, 2 * i) * &seq[2 * (n - i)]);
            }
            let mut rhs = Rat::zero();
            for (coeff, freq) in form.hat_cos_poly() {
                rhs += coeff * Rat::from_integer(Int::from(freq).pow(2 * n as u32));
            }
            if n % 2 == 1 {
                rhs = -rhs;
            }
            Ok(lhs - rhs)
        }
        Parity::Odd => {
            if n == 0 {
                return Err(Error::NotPositive(0));
            }
            let seq = form.coefficients(2 * n - 1)?;
            let mut lhs = Rat::zero();
            for i in 0..n {
                let sign = if i % 2 == 0 { Int::one() } else { -Int::one() };
                lhs += Rat::from_integer(
                    sign * mpow(i) * binomial(2 * n - 1, 2 * i) * &seq[2 * (n - i) - 1],
                );
            }
            let mut rhs = Rat::zero();
            for (coeff, freq) in form.hat_sin_poly() {
                rhs += coeff * Rat::from_integer(Int::from(freq).pow(2 * n as u32 - 1));
            }
            if (n - 1) % 2 == 1 {
                rhs = -rhs;
            }
            Ok(lhs - rhs)
        }
    }
}

/// s_{m,0}..s_{m,n_max} for any m >= 1.
pub fn sequence(m: u64, n_max: usize) -> Result<Vec<Int>, Error> {
    build(m)?.coefficients(n_max)
}

/// L-value predicted from the exact coefficients: for odd s this is
/// L_m(s), for even s it is L_{-m}(s). In both cases the value equals
/// s_{m,s-1} * K_m * sqrt(m) * (pi / 2m)^s / (s-1)! with K_m = 1/2 only
/// for m = 1.
pub fn predicted_l(m: u64, s: u32) -> Result<f64, Error> {
    if m == 0 {
        return Err(Error::BadM(0));
    }
    if s == 0 {
        return Err(Error::BadS { min: 1, got: 0 });
    }
    let seq = sequence(m, (s - 1) as usize)?;
    let coeff = seq
        .last()
        .expect("sequence is never empty")
        .to_f64()
        .expect("coefficient out of f64 range");
    let k_m = if m == 1 { 0.5 } else { 1.0 };
    let ratio = std::f64::consts::PI / (2.0 * m as f64);
    let fact = rat_to_f64(&Rat::from_integer(factorial((s - 1) as usize)));
    Ok(coeff * k_m * (m as f64).sqrt() * ratio.powi(s as i32) / fact)
}
