//! VT-syndrome binary constant-weight codes and their bridge to set codes.
//!
//! A binary word `x` of length `q` has syndrome vector
//! `(Σ i x_i, Σ i^2 x_i, .., Σ i^t x_i) mod p` with 1-based positions and a
//! prime `p > q`. Fixing the weight `n` and the syndrome `a` gives a code that
//! corrects up to `t` flips from 1 to 0: the syndrome deficit of a received
//! word is exactly the vector of power sums of the flipped positions.
//!
//! Alphabet symbol `s` sits at bit position `s + 1`, so symbol 0 still
//! contributes to every syndrome.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard::{binomial, ScaleGuard};
use crate::modular::{locator_roots, power_sums_to_elementary, Modulus};
use crate::model::SymbolSet;

/// A binary word; displayed as a string of `0`/`1` with position 1 leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord(Vec<bool>);

impl BitWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BitWord(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitWord(vec![false; len])
    }

    /// Word of length `len` with ones at the given 1-based positions.
    pub fn from_positions(len: usize, ones: &[usize]) -> Self {
        let mut bits = vec![false; len];
        for &i in ones {
            bits[i - 1] = true;
        }
        BitWord(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// 1-based positions holding a one.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (1..).zip(&self.0).filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn zeros_at(&self) -> impl Iterator<Item = usize> + '_ {
        (1..).zip(&self.0).filter(|(_, &b)| !b).map(|(i, _)| i)
    }

    /// True if every one of `other` is also a one here.
    pub fn covers(&self, other: &BitWord) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| a || !b)
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParameter(format!("bad bit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitWord)
    }
}

/// `t` residues mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SyndromeVector(Vec<u64>);

impl SyndromeVector {
    pub fn new(residues: Vec<u64>) -> Self {
        SyndromeVector(residues)
    }

    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Parameters of the code `{x : wt(x) = n, vts_t(x) = a}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawVtParams")]
pub struct VtParams {
    pub q: usize,
    pub n: usize,
    pub t: usize,
    pub p: Modulus,
    pub a: SyndromeVector,
}

#[derive(Deserialize)]
struct RawVtParams {
    q: usize,
    n: usize,
    t: usize,
    p: Modulus,
    a: SyndromeVector,
}

impl TryFrom<RawVtParams> for VtParams {
    type Error = Error;

    fn try_from(raw: RawVtParams) -> Result<Self> {
        VtParams::new(raw.q, raw.n, raw.t, raw.p, raw.a)
    }
}

impl VtParams {
    /// Checks `n <= q < p <= 2q`, `t >= 1`, `|a| = t` and `a_k < p`.
    pub fn new(q: usize, n: usize, t: usize, p: Modulus, a: SyndromeVector) -> Result<Self> {
        let pv = p.value();
        if n > q {
            return Err(Error::InvalidParameter(format!("weight {n} exceeds length {q}")));
        }
        if pv <= q as u64 || pv > 2 * q as u64 {
            return Err(Error::InvalidParameter(format!("prime {pv} not in ({q}, {}]", 2 * q)));
        }
        if t == 0 {
            return Err(Error::InvalidParameter("error budget t must be at least 1".into()));
        }
        if a.len() != t || a.residues().iter().any(|&r| r >= pv) {
            return Err(Error::InvalidParameter(format!("syndrome must be {t} residues below {pv}")));
        }
        Ok(VtParams { q, n, t, p, a })
    }
}

/// `i^k mod p` for positions `1..=q` and exponents `1..=t`.
struct PowerTable {
    t: usize,
    table: Vec<u64>,
}

impl PowerTable {
    fn new(q: usize, t: usize, p: Modulus) -> Self {
        let mut table = Vec::with_capacity(q * t);
        for i in 1..=q as u64 {
            let mut acc = 1;
            for _ in 0..t {
                acc = p.mul(acc, i);
                table.push(acc);
            }
        }
        PowerTable { t, table }
    }

    /// Powers `i^1..i^t` of 1-based position `i`.
    fn row(&self, i: usize) -> &[u64] {
        &self.table[(i - 1) * self.t..i * self.t]
    }
}

/// Residue `k` is `Σ_{i=1}^{q} i^k x_i mod p`.
pub fn vt_syndrome(x: &BitWord, t: usize, p: Modulus) -> Result<SyndromeVector> {
    if p.value() <= x.len() as u64 {
        return Err(Error::InvalidParameter(format!(
            "modulus {} must exceed the word length {}",
            p.value(),
            x.len()
        )));
    }
    let mut out = vec![0u64; t];
    for i in x.ones() {
        let mut power = 1;
        for slot in out.iter_mut() {
            power = p.mul(power, i as u64);
            *slot = p.add(*slot, power);
        }
    }
    Ok(SyndromeVector(out))
}

pub fn is_codeword(x: &BitWord, params: &VtParams) -> bool {
    x.len() == params.q
        && x.weight() == params.n
        && vt_syndrome(x, params.t, params.p).is_ok_and(|s| s == params.a)
}

/// Restores up to `t` ones flipped to zero.
///
/// The deficit `a - vts(y)` equals the power sums of the `e = n - wt(y)`
/// flipped positions. The first `e` deficits give the locator polynomial;
/// its roots among the zero positions of `y` are the flips. The remaining
/// deficits are checked by re-verifying membership of the result.
pub fn decode_asymmetric(y: &BitWord, params: &VtParams) -> Result<BitWord> {
    if y.len() != params.q {
        return Err(Error::LengthMismatch { pattern: params.q, word: y.len() });
    }
    let weight = y.weight();
    if weight > params.n {
        return Err(Error::NoSolution);
    }
    let errors = params.n - weight;
    if errors > params.t {
        return Err(Error::WeightTooLow { weight, target: params.n, budget: params.t });
    }
    if errors == 0 {
        return if is_codeword(y, params) { Ok(y.clone()) } else { Err(Error::NoSolution) };
    }
    let p = params.p;
    let received = vt_syndrome(y, errors, p)?;
    let deficits: Vec<u64> = params.a.residues()[..errors]
        .iter()
        .zip(received.residues())
        .map(|(&a, &s)| p.sub(a, s))
        .collect();
    let elementary = power_sums_to_elementary(&deficits, p)?;
    let roots = locator_roots(&elementary, y.zeros_at().map(|i| i as u64), p);
    if roots.len() != errors {
        return Err(Error::NoSolution);
    }
    let mut bits = y.bits().to_vec();
    for r in roots {
        bits[r as usize - 1] = true;
    }
    let x = BitWord(bits);
    if is_codeword(&x, params) {
        Ok(x)
    } else {
        Err(Error::NoSolution)
    }
}

/// Walks every weight-`n` word of length `q` in lexicographic order (position
/// 1 most significant, 0 < 1), passing the word and its syndrome.
fn for_each_weight_word<F>(q: usize, n: usize, t: usize, p: Modulus, mut visit: F)
where
    F: FnMut(&[bool], &[u64]),
{
    #[allow(clippy::too_many_arguments)]
    fn walk<F: FnMut(&[bool], &[u64])>(
        pos: usize,
        remaining: usize,
        bits: &mut Vec<bool>,
        sums: &mut [u64],
        powers: &PowerTable,
        p: Modulus,
        q: usize,
        visit: &mut F,
    ) {
        if pos > q {
            visit(bits, sums);
            return;
        }
        if q - pos >= remaining {
            bits.push(false);
            walk(pos + 1, remaining, bits, sums, powers, p, q, visit);
            bits.pop();
        }
        if remaining > 0 {
            let row = powers.row(pos);
            for (s, &w) in sums.iter_mut().zip(row) {
                *s = p.add(*s, w);
            }
            bits.push(true);
            walk(pos + 1, remaining - 1, bits, sums, powers, p, q, visit);
            bits.pop();
            for (s, &w) in sums.iter_mut().zip(row) {
                *s = p.sub(*s, w);
            }
        }
    }

    let powers = PowerTable::new(q, t, p);
    let mut bits = Vec::with_capacity(q);
    let mut sums = vec![0u64; t];
    walk(1, n, &mut bits, &mut sums, &powers, p, q, &mut visit);
}

fn guard_weight_words(q: usize, n: usize, guard: &ScaleGuard) -> Result<()> {
    guard.check_enumeration(binomial(q as u64, n as u64).unwrap_or(u128::MAX))
}

fn check_class_shape(q: usize, n: usize, p: Modulus) -> Result<()> {
    if n > q {
        return Err(Error::InvalidParameter(format!("weight {n} exceeds length {q}")));
    }
    if p.value() <= q as u64 {
        return Err(Error::InvalidParameter(format!("modulus {} must exceed {q}", p.value())));
    }
    Ok(())
}

/// All codewords of the class, in lexicographic order.
pub fn enumerate_class(params: &VtParams) -> Result<Vec<BitWord>> {
    enumerate_class_guarded(params, &ScaleGuard::from_env())
}

pub fn enumerate_class_guarded(params: &VtParams, guard: &ScaleGuard) -> Result<Vec<BitWord>> {
    guard_weight_words(params.q, params.n, guard)?;
    let target = params.a.residues();
    let mut out = Vec::new();
    for_each_weight_word(params.q, params.n, params.t, params.p, |bits, sums| {
        if sums == target {
            out.push(BitWord(bits.to_vec()));
        }
    });
    Ok(out)
}

/// Size of every nonempty syndrome class among the weight-`n` words.
pub fn class_sizes(q: usize, n: usize, t: usize, p: Modulus) -> Result<HashMap<SyndromeVector, u64>> {
    class_sizes_guarded(q, n, t, p, &ScaleGuard::from_env())
}

pub fn class_sizes_guarded(
    q: usize,
    n: usize,
    t: usize,
    p: Modulus,
    guard: &ScaleGuard,
) -> Result<HashMap<SyndromeVector, u64>> {
    check_class_shape(q, n, p)?;
    guard_weight_words(q, n, guard)?;
    let mut sizes: HashMap<SyndromeVector, u64> = HashMap::new();
    for_each_weight_word(q, n, t, p, |_, sums| {
        *sizes.entry(SyndromeVector(sums.to_vec())).or_default() += 1;
    });
    Ok(sizes)
}

/// Largest syndrome class, ties broken by the lexicographically smallest syndrome.
pub fn best_class(q: usize, n: usize, t: usize, p: Modulus) -> Result<(SyndromeVector, u64)> {
    best_class_guarded(q, n, t, p, &ScaleGuard::from_env())
}

pub fn best_class_guarded(
    q: usize,
    n: usize,
    t: usize,
    p: Modulus,
    guard: &ScaleGuard,
) -> Result<(SyndromeVector, u64)> {
    let sizes = class_sizes_guarded(q, n, t, p, guard)?;
    let (a, size) = sizes
        .into_iter()
        .max_by(|(a1, s1), (a2, s2)| s1.cmp(s2).then_with(|| a2.cmp(a1)))
        .expect("at least one weight-n word exists");
    let total = binomial(q as u64, n as u64).expect("guarded above");
    let pigeonhole = pigeonhole_bound(total, p.value(), t);
    assert!(
        size as u128 >= pigeonhole,
        "largest class {size} below pigeonhole bound {pigeonhole}"
    );
    Ok((a, size))
}

/// `ceil(total / p^t)`; the quotient rounds up to 1 once `p^t` exceeds `total`.
pub fn pigeonhole_bound(total: u128, p: u64, t: usize) -> u128 {
    match (p as u128).checked_pow(t as u32) {
        Some(classes) => total.div_ceil(classes),
        None => total.min(1),
    }
}

/// Bit `s + 1` is set iff symbol `s` is in the set.
pub fn subset_to_bitword(set: &SymbolSet) -> BitWord {
    let mut bits = vec![false; set.alphabet_size() as usize];
    for s in set.iter() {
        bits[s as usize] = true;
    }
    BitWord(bits)
}

pub fn bitword_to_subset(x: &BitWord) -> SymbolSet {
    let mut set = SymbolSet::empty(x.len() as u32);
    for i in x.ones() {
        set.insert(i as u32 - 1);
    }
    set
}

/// Recovers the codeword set from which `received` lost at most `t` symbols.
pub fn set_decode(received: &SymbolSet, params: &VtParams) -> Result<SymbolSet> {
    if received.alphabet_size() as usize != params.q {
        return Err(Error::InvalidParameter(format!(
            "set over alphabet {} given to a code over {}",
            received.alphabet_size(),
            params.q
        )));
    }
    decode_asymmetric(&subset_to_bitword(received), params).map(|x| bitword_to_subset(&x))
}
