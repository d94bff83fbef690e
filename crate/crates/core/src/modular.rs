//! Prime-field arithmetic for inverting power-sum syndromes.
//!
//! A set of error locations `D ⊆ F_p` is recovered from its power sums
//! `p_k = Σ_{d∈D} d^k` in two steps: Newton's identities turn the power sums
//! into elementary symmetric functions, and the locator polynomial
//! `Π_{d∈D} (X - d)` built from them is evaluated at every candidate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus. Residues are kept in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn reduce(self, x: u64) -> u64 {
        x % self.0
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        let (a, b) = (a % self.0, b % self.0);
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.0)
    }

    pub fn pow(self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.0)
    }

    /// Inverse by Fermat's little theorem. `a` must be nonzero mod p.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0), "zero has no inverse");
        self.pow(a, self.0 - 2)
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Modulus::new(p)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all u64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `q`. Bertrand's postulate keeps it at most `2q`.
pub fn next_prime_above(q: u64) -> Result<Modulus> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("need q >= 2, got {q}")));
    }
    let p = (q + 1..).find(|&c| is_prime(c)).expect("primes are unbounded");
    assert!(p <= 2 * q, "Bertrand bound violated: {p} > 2*{q}");
    Ok(Modulus(p))
}

/// Polynomial over F_p, coefficients highest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPolynomial {
    coefficients: Vec<u64>,
    modulus: Modulus,
}

impl ModPolynomial {
    /// Reduces the coefficients and strips leading zeros.
    pub fn new(coefficients: Vec<u64>, modulus: Modulus) -> Self {
        let mut coefficients: Vec<u64> = coefficients.into_iter().map(|c| modulus.reduce(c)).collect();
        let lead = coefficients.iter().position(|&c| c != 0).unwrap_or(coefficients.len());
        coefficients.drain(..lead);
        ModPolynomial { coefficients, modulus }
    }

    /// `X^e - e_1 X^{e-1} + e_2 X^{e-2} - ... + (-1)^e e_e`.
    pub fn locator(elementary: &[u64], modulus: Modulus) -> Self {
        let mut coefficients = Vec::with_capacity(elementary.len() + 1);
        coefficients.push(1);
        for (k, &e) in elementary.iter().enumerate() {
            coefficients.push(if k % 2 == 0 { modulus.neg(e) } else { modulus.reduce(e) });
        }
        ModPolynomial::new(coefficients, modulus)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        self.coefficients
            .iter()
            .fold(0, |acc, &c| m.add(m.mul(acc, x), c))
    }
}

/// Newton's identities: `k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i`, with `e_0 = 1`.
pub fn power_sums_to_elementary(power_sums: &[u64], modulus: Modulus) -> Result<Vec<u64>> {
    let count = power_sums.len();
    if count as u64 >= modulus.value() {
        return Err(Error::TooManyPowerSums { count, modulus: modulus.value() });
    }
    let m = modulus;
    let mut e = Vec::with_capacity(count + 1);
    e.push(1u64);
    for k in 1..=count {
        let mut sum = 0;
        for i in 1..=k {
            let term = m.mul(e[k - i], m.reduce(power_sums[i - 1]));
            sum = if i % 2 == 1 { m.add(sum, term) } else { m.sub(sum, term) };
        }
        e.push(m.mul(sum, m.inv(k as u64)));
    }
    e.remove(0);
    Ok(e)
}

/// Candidates at which the locator polynomial of `elementary` vanishes,
/// in the order the candidates are given.
pub fn locator_roots<I>(elementary: &[u64], candidates: I, modulus: Modulus) -> Vec<u64>
where
    I: IntoIterator<Item = u64>,
{
    let locator = ModPolynomial::locator(elementary, modulus);
    candidates.into_iter().filter(|&c| locator.eval(c) == 0).collect()
}
