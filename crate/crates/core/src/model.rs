//! Words, symbol sets, permutations and the two deletion semantics.
//!
//! Positions are 1-based at every public boundary. A deletion pattern
//! `{2, 4}` removes the second and fourth entries of a word.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A q-ary word. Symbols are always below `alphabet_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl Word {
    pub fn new(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(Error::SymbolOutOfRange { symbol, alphabet_size });
        }
        Ok(Word { symbols, alphabet_size })
    }

    /// Builds a word and additionally requires pairwise distinct symbols.
    pub fn multiplicity_free(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        let word = Word::new(symbols, alphabet_size)?;
        if let Some(dup) = word.first_duplicate() {
            return Err(Error::DuplicateSymbol(dup));
        }
        Ok(word)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.first_duplicate().is_none()
    }

    fn first_duplicate(&self) -> Option<u32> {
        let mut seen = SymbolSet::empty(self.alphabet_size);
        self.symbols.iter().copied().find(|&s| !seen.insert(s))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.symbols)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, ")")
}

/// An n-subset of the alphabet `{0, .., q-1}`, stored as a length-q bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolSet {
    blocks: Vec<u64>,
    alphabet_size: u32,
}

impl SymbolSet {
    pub fn empty(alphabet_size: u32) -> Self {
        SymbolSet {
            blocks: vec![0; (alphabet_size as usize).div_ceil(64)],
            alphabet_size,
        }
    }

    /// Collects symbols into a set. Repeated symbols collapse.
    pub fn from_symbols<I>(alphabet_size: u32, symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut set = SymbolSet::empty(alphabet_size);
        for symbol in symbols {
            if symbol >= alphabet_size {
                return Err(Error::SymbolOutOfRange { symbol, alphabet_size });
            }
            set.insert(symbol);
        }
        Ok(set)
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// Inserts `symbol`, returning false if it was already present.
    ///
    /// Panics if `symbol` is outside the alphabet.
    pub fn insert(&mut self, symbol: u32) -> bool {
        assert!(symbol < self.alphabet_size, "symbol {symbol} outside alphabet");
        let (block, bit) = (symbol as usize / 64, symbol % 64);
        let fresh = self.blocks[block] & (1 << bit) == 0;
        self.blocks[block] |= 1 << bit;
        fresh
    }

    pub fn remove(&mut self, symbol: u32) -> bool {
        if symbol >= self.alphabet_size {
            return false;
        }
        let (block, bit) = (symbol as usize / 64, symbol % 64);
        let present = self.blocks[block] & (1 << bit) != 0;
        self.blocks[block] &= !(1 << bit);
        present
    }

    pub fn contains(&self, symbol: u32) -> bool {
        symbol < self.alphabet_size && self.blocks[symbol as usize / 64] & (1 << (symbol % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_subset(&self, other: &SymbolSet) -> bool {
        self.alphabet_size == other.alphabet_size
            && self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &SymbolSet) -> usize {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i as u32 * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

/// Lexicographic order on the increasing listing of members.
impl Ord for SymbolSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.alphabet_size.cmp(&other.alphabet_size))
    }
}

impl PartialOrd for SymbolSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// A permutation of `1..=n` written as the sequence of its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().zip(1..).all(|(&v, i)| v == i)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.images)
    }
}

/// A set of deleted positions `I ⊆ [n]`, 1-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPattern")]
pub struct DeletionPattern {
    n: usize,
    positions: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPattern {
    n: usize,
    positions: Vec<usize>,
}

impl TryFrom<RawPattern> for DeletionPattern {
    type Error = Error;

    fn try_from(raw: RawPattern) -> Result<Self> {
        DeletionPattern::new(raw.n, raw.positions)
    }
}

impl DeletionPattern {
    /// Sorts and validates the positions. Duplicates are rejected.
    pub fn new(n: usize, mut positions: Vec<usize>) -> Result<Self> {
        positions.sort_unstable();
        for (i, &p) in positions.iter().enumerate() {
            if p == 0 || p > n {
                return Err(Error::PositionOutOfRange { position: p, len: n });
            }
            if i > 0 && positions[i - 1] == p {
                return Err(Error::InvalidParameter(format!("position {p} listed twice")));
            }
        }
        Ok(DeletionPattern { n, positions })
    }

    pub fn none(n: usize) -> Self {
        DeletionPattern { n, positions: Vec::new() }
    }

    pub fn original_length(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Number of deletions `|I|`.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions.binary_search(&position).is_ok()
    }

    /// `k(I) = k - |{i in I : i < k}|`, the new position of a surviving entry `k`.
    pub fn shifted_position(&self, k: usize) -> usize {
        k - self.positions.partition_point(|&i| i < k)
    }

    fn check_against(&self, len: usize) -> Result<()> {
        if self.n != len {
            return Err(Error::LengthMismatch { pattern: self.n, word: len });
        }
        Ok(())
    }
}

/// Keeps the entries of `seq` whose 1-based positions are not in `pattern`.
fn surviving<T: Copy>(seq: &[T], pattern: &DeletionPattern) -> Vec<T> {
    let mut out = Vec::with_capacity(seq.len() - pattern.len());
    let mut deleted = pattern.positions().iter().peekable();
    for (k, &value) in (1..).zip(seq) {
        if deleted.next_if_eq(&&k).is_none() {
            out.push(value);
        }
    }
    out
}

/// Removes the positions in `pattern` from `x`, preserving order.
pub fn delete_positions(x: &Word, pattern: &DeletionPattern) -> Result<Word> {
    pattern.check_against(x.len())?;
    Ok(Word {
        symbols: surviving(x.symbols(), pattern),
        alphabet_size: x.alphabet_size(),
    })
}

/// Stable deletions: surviving values keep their labels.
///
/// The result is a sequence over `1..=n` and in general no longer a
/// permutation, so it comes back as a [`Word`] over the alphabet `0..=n`.
pub fn apply_stable_deletions(sigma: &Permutation, pattern: &DeletionPattern) -> Result<Word> {
    pattern.check_against(sigma.len())?;
    Ok(Word {
        symbols: surviving(sigma.images(), pattern),
        alphabet_size: sigma.len() as u32 + 1,
    })
}

/// Unstable deletions: surviving values are relabelled to `1..=n-|I|`
/// keeping their relative order. Each value drops by the number of
/// deleted values below it.
pub fn apply_unstable_deletions(sigma: &Permutation, pattern: &DeletionPattern) -> Result<Permutation> {
    pattern.check_against(sigma.len())?;
    let mut removed: Vec<u32> = pattern
        .positions()
        .iter()
        .map(|&i| sigma.images()[i - 1])
        .collect();
    removed.sort_unstable();
    let images = surviving(sigma.images(), pattern)
        .into_iter()
        .map(|v| v - removed.partition_point(|&r| r < v) as u32)
        .collect();
    Ok(Permutation { images })
}
