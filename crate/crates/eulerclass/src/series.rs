//! Truncated Taylor series with exact rational coefficients.
//!
//! A series of order N stores the coefficients a_0..a_N of
//! sum a_n x^n; every arithmetic result is truncated to the minimum order
//! of its inputs and all coefficients stay exact. No floating point enters
//! this module.

use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{factorial, Int, Rat};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    /// Builds a series from its Taylor coefficients a_0..a_N.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a_0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn constant(value: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// Taylor expansion of cos(freq * x): a_{2k} = (-1)^k freq^{2k} / (2k)!.
    pub fn cos(freq: u64, order: usize) -> Self {
        let mut s = Self::zero(order);
        let f2 = Rat::from_integer(Int::from(freq) * Int::from(freq));
        let mut term = Rat::one();
        s.coeffs[0] = Rat::one();
        let mut k = 2usize;
        while k <= order {
            term = -term * &f2 / Rat::from_integer(Int::from((k - 1) * k));
            s.coeffs[k] = term.clone();
            k += 2;
        }
        s
    }

    /// Taylor expansion of sin(freq * x): a_{2k+1} = (-1)^k freq^{2k+1} / (2k+1)!.
    pub fn sin(freq: u64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order == 0 {
            return s;
        }
        let f2 = Rat::from_integer(Int::from(freq) * Int::from(freq));
        let mut term = Rat::from_integer(Int::from(freq));
        s.coeffs[1] = term.clone();
        let mut k = 3usize;
        while k <= order {
            term = -term * &f2 / Rat::from_integer(Int::from((k - 1) * k));
            s.coeffs[k] = term.clone();
            k += 2;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] - &other.coeffs[n])
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse up to the truncation order, by the recurrence
    /// b_n = -(1/a_0) sum_{k=1..n} a_k b_{n-k}.
    pub fn reciprocal(&self) -> Result<Self, Error> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = Rat::one() / &self.coeffs[0];
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        out[0] = inv0.clone();
        for n in 1..self.coeffs.len() {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out[n] = -acc * &inv0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Argument dilation x -> t x, i.e. a_n -> a_n t^n.
    pub fn dilate(&self, t: u64) -> Self {
        let t = Rat::from_integer(Int::from(t));
        let mut pow = Rat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &pow;
                pow = &pow * &t;
                v
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// n! * a_n, the coefficient in the exponential generating function view.
    pub fn egf_coefficient(&self, n: usize) -> Result<Rat, Error> {
        if n > self.order() {
            return Err(Error::OrderExceeded {
                index: n,
                order: self.order(),
            });
        }
        Ok(&self.coeffs[n] * Rat::from_integer(factorial(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rat::one())
    }
}
