//! Brute-force enumeration of alternating augmented r-signed permutations.
//!
//! A word (G, (i_1,j_1), ..., (i_n,j_n)) carries n labels with signs
//! i_k in [r] and values j_k forming a permutation of [n], prefixed by the
//! special label G. For a parameter 0 <= p <= r the labels are ordered
//! lexicographically with G squeezed between sign r-p and sign r-p+1; a
//! word is alternating when its descent set is exactly {2, 4, ...}. The
//! counts here are the combinatorial oracle for the coefficient sequences
//! produced by the closed forms.

use std::cmp::Ordering;

use crate::Error;

/// Enumeration stays exhaustive, so the search space is capped at
/// r^n * n! words with r <= 4 and n <= 8.
pub const MAX_R: u32 = 4;
pub const MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    /// The special minimal-edge label G.
    Special,
    /// An ordinary label (sign, value) with sign in [r], value in [n].
    Pair { sign: u32, value: u32 },
}

// Total-order key: G sits above every (i, j) with i <= r - p and below
// every (i, j) with i > r - p; ordinary labels compare lexicographically.
fn key(r: u32, p: u32, label: Label) -> (u32, u64) {
    match label {
        Label::Special => (r - p, u64::MAX),
        Label::Pair { sign, value } => (sign, value as u64),
    }
}

pub fn compare_labels(r: u32, p: u32, a: Label, b: Label) -> Ordering {
    key(r, p, a).cmp(&key(r, p, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedSignedPermutation {
    pub r: u32,
    pub p: u32,
    pub signs: Vec<u32>,
    pub values: Vec<u32>,
}

impl AugmentedSignedPermutation {
    pub fn new(r: u32, p: u32, signs: Vec<u32>, values: Vec<u32>) -> Result<Self, Error> {
        if r == 0 || p > r {
            return Err(Error::BadPermutation(format!("need 1 <= r and p <= r, got r = {r}, p = {p}")));
        }
        if signs.len() != values.len() {
            return Err(Error::BadPermutation(
                "signs and values must have equal length".into(),
            ));
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &j in &values {
            if j == 0 || j as usize > n || seen[j as usize] {
                return Err(Error::BadPermutation(format!(
                    "values must be a permutation of 1..={n}"
                )));
            }
            seen[j as usize] = true;
        }
        if let Some(&i) = signs.iter().find(|&&i| i == 0 || i > r) {
            return Err(Error::BadPermutation(format!(
                "sign {i} outside 1..={r}"
            )));
        }
        Ok(AugmentedSignedPermutation { r, p, signs, values })
    }

    /// True when the descent set of (G, g_1, ..., g_n) is exactly the even
    /// positions; in particular G < g_1 must hold for n >= 1.
    pub fn is_alternating(&self) -> bool {
        let mut prev = key(self.r, self.p, Label::Special);
        for k in 1..=self.values.len() {
            let cur = key(
                self.r,
                self.p,
                Label::Pair {
                    sign: self.signs[k - 1],
                    value: self.values[k - 1],
                },
            );
            let descent = prev > cur;
            if descent != (k % 2 == 0) {
                return false;
            }
            prev = cur;
        }
        true
    }
}

fn check_caps(r: u32, p: u32, n: usize) -> Result<(), Error> {
    if r == 0 || r > MAX_R || p > r || n > MAX_N {
        return Err(Error::EnumerationCap { r, p, n });
    }
    Ok(())
}

// Depth-first extension of a partial word; prunes as soon as the
// alternation constraint fails at the current position.
fn extend(r: u32, position: usize, n: usize, prev: (u32, u64), used: &mut [bool]) -> u64 {
    if position > n {
        return 1;
    }
    let want_descent = position % 2 == 0;
    let mut total = 0u64;
    for j in 1..=n as u32 {
        if used[j as usize] {
            continue;
        }
        used[j as usize] = true;
        for i in 1..=r {
            let cur = (i, j as u64);
            let descent = prev > cur;
            if descent == want_descent {
                total += extend(r, position + 1, n, cur, used);
            }
        }
        used[j as usize] = false;
    }
    total
}

/// Number of alternating augmented r-signed permutations on [n] under the
/// order parameterized by p; exhaustive enumeration.
pub fn count(r: u32, p: u32, n: usize) -> Result<u64, Error> {
    check_caps(r, p, n)?;
    let mut used = vec![false; n + 1];
    Ok(extend(r, 1, n, key(r, p, Label::Special), &mut used))
}

/// Counts words alternating from position 2 onward whose first sign lies
/// in the band r - p2 + 1 <= i_1 <= r - p1. Positions past the first never
/// compare against G, so this equals count(r, p2, n) - count(r, p1, n).
pub fn count_first_sign_band(r: u32, p1: u32, p2: u32, n: usize) -> Result<u64, Error> {
    if p2 > r || p1 >= p2 {
        return Err(Error::BadBand { p1, p2 });
    }
    check_caps(r, p2, n)?;
    if n == 0 {
        return Ok(0); // the empty word has no first sign
    }
    let mut total = 0u64;
    let mut used = vec![false; n + 1];
    for j in 1..=n as u32 {
        used[j as usize] = true;
        for i in r - p2 + 1..=r - p1 {
            total += extend(r, 2, n, (i, j as u64), &mut used);
        }
        used[j as usize] = false;
    }
    Ok(total)
}
