//! Exact integer plumbing: Jacobi/Kronecker symbols, factorization,
//! square-free decomposition, and the Gauss-sum residual used to validate
//! quadratic characters numerically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision signed integer used throughout the crate.
pub type Int = BigInt;
/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// n! as an exact integer.
pub fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k))
}

/// Binomial coefficient C(n, k), exact.
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut c = Int::one();
    for i in 1..=k {
        c = c * Int::from(n - k + i) / Int::from(i);
    }
    c
}

/// Renders a rational as `p/q`, omitting the denominator when it is 1.
pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

/// Jacobi symbol (a/n) for odd positive n.
///
/// Negative numerators follow the convention (-1/n) = (-1)^((n-1)/2), which
/// makes a |-> (a/n) a character mod n; reducing a into [0, n) therefore
/// gives the right value for every integer a. Also (a/1) = 1 for all a.
pub fn jacobi(a: i64, n: i64) -> Result<i8, Error> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadModulus(n));
    }
    Ok(jacobi_reduced(a.rem_euclid(n) as u64, n as u64))
}

// n odd positive, 0 <= a < n.
fn jacobi_reduced(mut a: u64, mut n: u64) -> i8 {
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol (a/n) for positive n, extending the Jacobi symbol to
/// even denominators via (a/2) = 0, 1, -1 for a even, a = +-1 mod 8,
/// a = +-3 mod 8 respectively.
pub fn kronecker(a: i64, n: i64) -> Result<i8, Error> {
    if n <= 0 {
        return Err(Error::NotPositive(n));
    }
    let mut n = n as u64;
    let mut sign = 1i8;
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    Ok(sign * jacobi_reduced(a.rem_euclid(n as i64) as u64, n))
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the listed bases cover the full range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho; n must be odd, composite, > 1.
fn rho_factor(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        a %= b;
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Prime factorization of n >= 1 as (prime, exponent) pairs in increasing
/// prime order. Trial division up to 10^6, then Miller-Rabin plus Pollard
/// rho for any remaining cofactor.
pub fn factor(n: u64) -> Result<Vec<(u64, u32)>, Error> {
    if n == 0 {
        return Err(Error::NotPositive(0));
    }
    let mut n = n;
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |out: &mut Vec<(u64, u32)>, p: u64| match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    };
    for p in std::iter::once(2).chain((3..=1_000_000u64).step_by(2)) {
        if p * p > n {
            break;
        }
        while n % p == 0 {
            n /= p;
            push(&mut out, p);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(&mut out, m);
        } else {
            let d = rho_factor(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// m = b * u^2 with b square-free, plus the character data attached to the
/// distinct odd primes of u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    pub m: u64,
    /// Square-free part.
    pub b: u64,
    /// Cofactor, m = b * u^2.
    pub u: u64,
    /// Distinct odd primes dividing u, strictly increasing.
    pub odd_primes: Vec<u64>,
    /// (-b / u_i) for each odd prime, aligned with `odd_primes`.
    pub eps_c: Vec<i8>,
    /// (b / u_i) for each odd prime, aligned with `odd_primes`.
    pub eps_d: Vec<i8>,
    /// 1/2 when b = 1, otherwise 1.
    pub k_b: Rat,
}

pub fn squarefree_decompose(m: u64) -> Result<SquareFreeDecomposition, Error> {
    if m == 0 {
        return Err(Error::BadM(0));
    }
    if m > i64::MAX as u64 / 4 {
        return Err(Error::TooLarge(m));
    }
    let mut b = 1u64;
    let mut u = 1u64;
    let mut odd_primes = Vec::new();
    for (p, e) in factor(m)? {
        if e % 2 == 1 {
            b *= p;
        }
        if e >= 2 {
            u *= p.pow(e / 2);
            if p != 2 {
                odd_primes.push(p);
            }
        }
    }
    let eps_c = odd_primes
        .iter()
        .map(|&p| jacobi(-(b as i64), p as i64))
        .collect::<Result<Vec<_>, _>>()?;
    let eps_d = odd_primes
        .iter()
        .map(|&p| jacobi(b as i64, p as i64))
        .collect::<Result<Vec<_>, _>>()?;
    let k_b = if b == 1 { rat(1, 2) } else { Rat::one() };
    Ok(SquareFreeDecomposition {
        m,
        b,
        u,
        odd_primes,
        eps_c,
        eps_d,
        k_b,
    })
}

/// Checks whether m is admissible for the Gauss-sum expansion: m = 1 mod 4,
/// or m = 8 or 12 mod 16, with no odd prime square dividing m.
fn gauss_admissible(m: i64) -> Result<(), Error> {
    if m == 0 {
        return Err(Error::GaussHypothesis(m));
    }
    let r4 = m.rem_euclid(4);
    let r16 = m.rem_euclid(16);
    if !(r4 == 1 || r16 == 8 || r16 == 12) {
        return Err(Error::GaussHypothesis(m));
    }
    for (p, e) in factor(m.unsigned_abs())? {
        if p != 2 && e >= 2 {
            return Err(Error::GaussHypothesis(m));
        }
    }
    Ok(())
}

/// Residual |(m/l) - gauss_sum(m, l) / sqrt(m)| where
/// gauss_sum(m, l) = sum_{r=1}^{|m|} (m/r) e^{2 pi i l r / |m|} and sqrt(m)
/// is the principal branch (i sqrt(|m|) for negative m). Zero, up to
/// rounding, whenever m is admissible and l is odd.
pub fn gauss_sum_residual(m: i64, l: u64) -> Result<f64, Error> {
    if l == 0 || l % 2 == 0 {
        return Err(Error::BadModulus(l as i64));
    }
    gauss_admissible(m)?;
    let am = m.unsigned_abs();
    let lhs = jacobi(m, l as i64)? as f64;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for r in 1..=am {
        let chi = kronecker(m, r as i64)?;
        if chi == 0 {
            continue;
        }
        let angle = 2.0 * std::f64::consts::PI * ((l % am) as f64 * r as f64 % am as f64) / am as f64;
        let (s, c) = angle.sin_cos();
        re += chi as f64 * c;
        im += chi as f64 * s;
    }
    let root = (am as f64).sqrt();
    // Divide the sum by sqrt(m): by sqrt(|m|) when m > 0, by i sqrt(|m|)
    // when m < 0.
    let (qre, qim) = if m > 0 {
        (re / root, im / root)
    } else {
        (im / root, -re / root)
    };
    Ok(((lhs - qre).powi(2) + qim.powi(2)).sqrt())
}

/// f64 value of an exact integer; panics only far beyond desk scale.
pub fn int_to_f64(v: &Int) -> f64 {
    v.to_f64().expect("integer out of f64 range")
}

/// f64 value of an exact rational.
pub fn rat_to_f64(v: &Rat) -> f64 {
    let num = v.numer().to_f64();
    let den = v.denom().to_f64();
    match (num, den) {
        (Some(n), Some(d)) => n / d,
        _ => int_to_f64(&(v.numer() / v.denom())),
    }
}

/// True when v is a negative rational (helper for sign-aware rendering).
pub fn rat_is_negative(v: &Rat) -> bool {
    v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: Legendre symbol by exhaustive quadratic-residue
    // scan, extended multiplicatively to odd composite moduli.
    fn legendre_brute(a: i64, p: u64) -> i8 {
        let r = a.rem_euclid(p as i64) as u64;
        if r == 0 {
            return 0;
        }
        for x in 1..p {
            if x * x % p == r {
                return 1;
            }
        }
        -1
    }

    fn jacobi_brute(a: i64, n: u64) -> i8 {
        let mut acc = 1i8;
        for (p, e) in factor(n).unwrap() {
            for _ in 0..e {
                acc *= legendre_brute(a, p);
            }
        }
        acc
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(1, 9).unwrap(), 1);
        assert_eq!(jacobi(2, 7).unwrap(), 1); // 3^2 = 2 mod 7
        assert_eq!(jacobi(-6, 5).unwrap(), 1); // -6 = 4 = 2^2 mod 5
        assert_eq!(jacobi(-6, 3).unwrap(), 0);
        assert_eq!(jacobi(0, 1).unwrap(), 1);
        assert_eq!(jacobi(7, 1).unwrap(), 1);
    }

    #[test]
    fn jacobi_rejects_bad_modulus() {
        assert!(jacobi(3, 4).is_err());
        assert!(jacobi(3, 0).is_err());
        assert!(jacobi(3, -5).is_err());
    }

    #[test]
    fn jacobi_matches_brute_force() {
        for n in (1..=99u64).step_by(2) {
            for a in -60i64..=60 {
                assert_eq!(
                    jacobi(a, n as i64).unwrap(),
                    jacobi_brute(a, n),
                    "a={a} n={n}"
                );
            }
        }
    }

    #[test]
    fn jacobi_multiplicative_in_numerator() {
        for n in (1..=99i64).step_by(2) {
            for a in -50i64..=50 {
                for b in -50i64..=50 {
                    assert_eq!(
                        jacobi(a, n).unwrap() * jacobi(b, n).unwrap(),
                        jacobi(a * b, n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn jacobi_depends_only_on_residue() {
        for n in (1..=99i64).step_by(2) {
            for a in 1..=300i64 {
                assert_eq!(jacobi(a, n).unwrap(), jacobi(a % n, n).unwrap());
                assert_eq!(jacobi(a, n).unwrap(), jacobi(a + n, n).unwrap());
            }
        }
    }

    fn squarefree(m: u64) -> bool {
        factor(m).unwrap().iter().all(|&(_, e)| e == 1)
    }

    // Reciprocity identities that tie the two character conventions together.
    #[test]
    fn reciprocity_identities() {
        for m in (3..=199i64).step_by(4) {
            // m = 3 mod 4
            if !squarefree(m as u64) {
                continue;
            }
            let t = (m - 3) / 4;
            for k in 1..=t {
                assert_eq!(jacobi(k, m).unwrap(), jacobi(m, m - 4 * k).unwrap());
            }
            for k in t + 1..=(m - 1) / 2 {
                assert_eq!(jacobi(k, m).unwrap(), jacobi(m, 4 * k - m).unwrap());
            }
        }
        for m in (5..=197i64).step_by(4) {
            // m = 1 mod 4
            if !squarefree(m as u64) {
                continue;
            }
            let t = (m - 1) / 4;
            for k in 1..=t {
                assert_eq!(jacobi(k, m).unwrap(), jacobi(-m, m - 4 * k).unwrap());
            }
            for k in t + 1..=2 * t {
                assert_eq!(-jacobi(k, m).unwrap(), jacobi(-m, 4 * k - m).unwrap());
            }
        }
        for m in (2..=198i64).step_by(4) {
            // m = 2 mod 4
            if !squarefree(m as u64) {
                continue;
            }
            for k in (1..m).step_by(2) {
                assert_eq!(jacobi(-m, k).unwrap(), jacobi(m, m - k).unwrap());
            }
        }
    }

    #[test]
    fn kronecker_even_denominators() {
        // (a/2) table on odd a, zero on even a.
        for (a, want) in [(1i64, 1i8), (7, 1), (-1, 1), (3, -1), (5, -1), (-3, -1)] {
            assert_eq!(kronecker(a, 2).unwrap(), want, "a={a}");
        }
        assert_eq!(kronecker(6, 2).unwrap(), 0);
        assert_eq!(kronecker(-4, 8).unwrap(), 0);
        // Multiplicative over the denominator.
        for a in -30i64..=30 {
            for n1 in 1..=20i64 {
                for n2 in 1..=20i64 {
                    assert_eq!(
                        kronecker(a, n1 * n2).unwrap(),
                        kronecker(a, n1).unwrap() * kronecker(a, n2).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(1).unwrap(), vec![]);
        assert_eq!(factor(4225).unwrap(), vec![(5, 2), (13, 2)]);
        assert_eq!(factor(1350).unwrap(), vec![(2, 1), (3, 3), (5, 2)]);
        assert!(factor(0).is_err());
    }

    #[test]
    fn factor_recomposes() {
        for n in 1..=20_000u64 {
            let prod: u64 = factor(n)
                .unwrap()
                .iter()
                .map(|&(p, e)| p.pow(e))
                .product();
            assert_eq!(prod, n);
        }
        // A couple of larger ones that exercise the rho path.
        for n in [999_999_999_989u64 * 2, 1_000_003 * 1_000_033] {
            let prod: u64 = factor(n)
                .unwrap()
                .iter()
                .map(|&(p, e)| p.pow(e))
                .product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn squarefree_decompose_examples() {
        let d = squarefree_decompose(12675).unwrap();
        assert_eq!((d.b, d.u), (3, 65));
        assert_eq!(d.odd_primes, vec![5, 13]);
        assert_eq!(d.eps_c, vec![-1, 1]);
        assert_eq!(d.eps_d, vec![-1, 1]);
        assert_eq!(d.k_b, Rat::one());

        let d = squarefree_decompose(7).unwrap();
        assert_eq!((d.b, d.u), (7, 1));
        assert!(d.odd_primes.is_empty());

        let d = squarefree_decompose(225).unwrap();
        assert_eq!((d.b, d.u), (1, 15));
        assert_eq!(d.odd_primes, vec![3, 5]);
        assert_eq!(d.k_b, rat(1, 2));

        assert!(squarefree_decompose(0).is_err());
    }

    #[test]
    fn squarefree_decompose_recomposes() {
        for m in 1..=100_000u64 {
            let d = squarefree_decompose(m).unwrap();
            assert_eq!(d.b * d.u * d.u, m);
            assert!(squarefree(d.b));
        }
    }

    #[test]
    fn gauss_residual_examples() {
        assert!(gauss_sum_residual(5, 3).unwrap() <= 1e-9);
        assert!(gauss_sum_residual(-3, 1).unwrap() <= 1e-9);
        assert!(gauss_sum_residual(12, 7).unwrap() <= 1e-9);
    }

    #[test]
    fn gauss_residual_rejects_bad_inputs() {
        assert!(gauss_sum_residual(3, 1).is_err()); // 3 mod 4
        assert!(gauss_sum_residual(45, 1).is_err()); // odd square factor
        assert!(gauss_sum_residual(0, 1).is_err());
        assert!(gauss_sum_residual(5, 2).is_err());
        assert!(gauss_sum_residual(5, 0).is_err());
    }

    #[test]
    fn gauss_residual_small_sweep() {
        for m in -60i64..=60 {
            if gauss_admissible(m).is_err() {
                continue;
            }
            for l in (1..=39u64).step_by(2) {
                let r = gauss_sum_residual(m, l).unwrap();
                assert!(r <= 1e-9, "m={m} l={l} residual={r}");
            }
        }
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rat_string(&rat(5, 2)), "5/2");
        assert_eq!(rat_string(&rat(-3, 2)), "-3/2");
        assert_eq!(rat_string(&rat(65, 1)), "65");
        assert_eq!(rat_string(&rat(4, 2)), "2");
    }
}
