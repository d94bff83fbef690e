//! Permutation codes correcting stable (or, at `t = 1`, unstable) deletions.
//!
//! Codes are built greedily: scan `S_n` in a fixed order and admit a
//! permutation when its deletion ball misses every ball admitted so far.
//! A hash index from ball members to codeword ids makes each admission test
//! `O(|ball|)` lookups.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard::ScaleGuard;
use crate::model::{apply_stable_deletions, apply_unstable_deletions, DeletionPattern, Permutation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeletionKind {
    #[default]
    Stable,
    Unstable,
}

/// Order in which the greedy scan visits `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ScanOrder {
    /// Lexicographic, starting from the identity.
    #[default]
    Lex,
    /// A seeded shuffle of the lexicographic order.
    Shuffled(u64),
}

impl fmt::Display for ScanOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanOrder::Lex => f.write_str("lex"),
            ScanOrder::Shuffled(seed) => write!(f, "shuffle:{seed}"),
        }
    }
}

impl FromStr for ScanOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "lex" {
            return Ok(ScanOrder::Lex);
        }
        s.strip_prefix("shuffle:")
            .and_then(|seed| seed.parse().ok())
            .map(ScanOrder::Shuffled)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scan order {s:?}")))
    }
}

impl TryFrom<String> for ScanOrder {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ScanOrder> for String {
    fn from(order: ScanOrder) -> String {
        order.to_string()
    }
}

/// A permutation code together with the deletion model it is meant to correct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCodeBook")]
pub struct PermCodeBook {
    pub n: usize,
    pub t: usize,
    pub codewords: Vec<Permutation>,
    pub order: ScanOrder,
    #[serde(default)]
    pub deletions: DeletionKind,
}

#[derive(Deserialize)]
struct RawCodeBook {
    n: usize,
    t: usize,
    codewords: Vec<Permutation>,
    #[serde(default)]
    order: ScanOrder,
    #[serde(default)]
    deletions: DeletionKind,
}

impl TryFrom<RawCodeBook> for PermCodeBook {
    type Error = Error;

    fn try_from(raw: RawCodeBook) -> Result<Self> {
        PermCodeBook::new(raw.n, raw.t, raw.deletions, raw.codewords, raw.order)
    }
}

impl PermCodeBook {
    /// Checks lengths and budgets; ball disjointness is left to [`verify_sd_property`].
    pub fn new(
        n: usize,
        t: usize,
        deletions: DeletionKind,
        codewords: Vec<Permutation>,
        order: ScanOrder,
    ) -> Result<Self> {
        if t > n {
            return Err(Error::InvalidParameter(format!("budget {t} exceeds length {n}")));
        }
        if deletions == DeletionKind::Unstable && t > 1 {
            return Err(Error::InvalidParameter(
                "unstable-deletion codes are only supported for t <= 1".into(),
            ));
        }
        if let Some(bad) = codewords.iter().find(|c| c.len() != n) {
            return Err(Error::InvalidParameter(format!("codeword {bad} does not have length {n}")));
        }
        Ok(PermCodeBook { n, t, codewords, order, deletions })
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

/// Every deletion pattern on `[n]` with at most `t` positions.
fn patterns(n: usize, t: usize) -> impl Iterator<Item = DeletionPattern> {
    (0..=t.min(n)).flat_map(move |size| {
        (1..=n).combinations(size).map(move |positions| {
            DeletionPattern::new(n, positions).expect("combinations are in range")
        })
    })
}

fn ball_sequences(sigma: &Permutation, t: usize, kind: DeletionKind) -> HashSet<Vec<u32>> {
    patterns(sigma.len(), t)
        .map(|pattern| match kind {
            DeletionKind::Stable => apply_stable_deletions(sigma, &pattern)
                .expect("pattern sized to sigma")
                .into_symbols(),
            DeletionKind::Unstable => apply_unstable_deletions(sigma, &pattern)
                .expect("pattern sized to sigma")
                .into(),
        })
        .collect()
}

/// All words reachable from `sigma` by at most `t` stable deletions.
pub fn stable_deletion_ball(sigma: &Permutation, t: usize) -> HashSet<Word> {
    let alphabet = sigma.len() as u32 + 1;
    ball_sequences(sigma, t, DeletionKind::Stable)
        .into_iter()
        .map(|s| Word::new(s, alphabet).expect("values of a permutation"))
        .collect()
}

/// All permutations reachable from `sigma` by at most `t` unstable deletions.
pub fn unstable_deletion_ball(sigma: &Permutation, t: usize) -> HashSet<Permutation> {
    ball_sequences(sigma, t, DeletionKind::Unstable)
        .into_iter()
        .map(|s| Permutation::new(s).expect("rank compression yields permutations"))
        .collect()
}

/// Greedy t-stable-deletion-correcting code in lexicographic scan order.
pub fn greedy_sd_code(n: usize, t: usize) -> Result<PermCodeBook> {
    greedy_code(n, t, DeletionKind::Stable, ScanOrder::Lex, &ScaleGuard::from_env())
}

/// Greedy single-unstable-deletion-correcting code in lexicographic scan order.
pub fn greedy_ud_code(n: usize, t: usize) -> Result<PermCodeBook> {
    greedy_code(n, t, DeletionKind::Unstable, ScanOrder::Lex, &ScaleGuard::from_env())
}

pub fn greedy_code(
    n: usize,
    t: usize,
    deletions: DeletionKind,
    order: ScanOrder,
    guard: &ScaleGuard,
) -> Result<PermCodeBook> {
    // Validates (n, t, kind) before the scan.
    let mut book = PermCodeBook::new(n, t, deletions, Vec::new(), order)?;
    guard.check_permutations(n)?;

    let mut candidates: Vec<Vec<u32>> = (1..=n as u32).permutations(n).collect();
    if n == 0 {
        candidates = vec![Vec::new()];
    }
    if let ScanOrder::Shuffled(seed) = order {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    let mut owner: HashMap<Vec<u32>, usize> = HashMap::new();
    for images in candidates {
        let sigma = Permutation::new(images).expect("generated from 1..=n");
        let ball = ball_sequences(&sigma, t, deletions);
        if ball.iter().any(|w| owner.contains_key(w)) {
            continue;
        }
        let id = book.codewords.len();
        owner.extend(ball.into_iter().map(|w| (w, id)));
        book.codewords.push(sigma);
    }
    Ok(book)
}

/// True iff the radius-t balls of distinct codewords are pairwise disjoint.
pub fn verify_sd_property(code: &PermCodeBook) -> bool {
    let mut owner: HashMap<Vec<u32>, usize> = HashMap::new();
    for (id, sigma) in code.codewords.iter().enumerate() {
        for w in ball_sequences(sigma, code.t, code.deletions) {
            if let Some(&other) = owner.get(&w) {
                if other != id {
                    return false;
                }
            }
            owner.insert(w, id);
        }
    }
    true
}

fn check_received_len(code: &PermCodeBook, len: usize) -> Result<()> {
    let min = code.n - code.t;
    if len < min || len > code.n {
        return Err(Error::ReceivedLength { len, min, max: code.n });
    }
    Ok(())
}

fn unique_match<'a, I>(mut hits: I) -> Result<Permutation>
where
    I: Iterator<Item = &'a Permutation>,
{
    let first = hits.next().ok_or(Error::NotFound)?;
    let extra = hits.count();
    if extra > 0 {
        return Err(Error::Ambiguous(extra + 1));
    }
    Ok(first.clone())
}

/// Two-pointer subsequence test.
fn is_subsequence(needle: &[u32], haystack: &[u32]) -> bool {
    let mut rest = haystack.iter();
    needle.iter().all(|v| rest.any(|h| h == v))
}

/// Finds the codeword whose stable-deletion ball contains `received`.
///
/// A stable deletion keeps a subsequence, so a codeword matches exactly when
/// `received` is one of its subsequences of length at least `n - t`.
pub fn sd_decode(code: &PermCodeBook, received: &[u32]) -> Result<Permutation> {
    check_received_len(code, received.len())?;
    unique_match(
        code.codewords
            .iter()
            .filter(|c| is_subsequence(received, c.images())),
    )
}

/// Finds the codeword whose unstable-deletion ball contains `received`.
pub fn ud_decode(code: &PermCodeBook, received: &Permutation) -> Result<Permutation> {
    check_received_len(code, received.len())?;
    let missing = code.n - received.len();
    unique_match(code.codewords.iter().filter(|c| {
        (1..=code.n).combinations(missing).any(|positions| {
            let pattern = DeletionPattern::new(code.n, positions).expect("in range");
            apply_unstable_deletions(c, &pattern).expect("sized") == *received
        })
    }))
}

/// Reference size `n! / (2n)^{3t-1}` of the best known explicit construction,
/// reported next to greedy sizes for comparison.
pub fn reference_size_bound(n: usize, t: usize) -> f64 {
    let log2 = (1..=n).map(|i| (i as f64).log2()).sum::<f64>()
        - (3.0 * t as f64 - 1.0) * (2.0 * n as f64).log2();
    log2.exp2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u32]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn book(n: usize, t: usize, codewords: &[&[u32]]) -> PermCodeBook {
        PermCodeBook::new(n, t, DeletionKind::Stable, codewords.iter().map(|c| perm(c)).collect(), ScanOrder::Lex)
            .unwrap()
    }

    fn seqs(ball: &HashSet<Word>) -> HashSet<Vec<u32>> {
        ball.iter().map(|w| w.symbols().to_vec()).collect()
    }

    #[test]
    fn ball_examples() {
        let s = perm(&[3, 1, 2]);
        assert_eq!(seqs(&stable_deletion_ball(&s, 0)), HashSet::from([vec![3, 1, 2]]));
        let ball = seqs(&stable_deletion_ball(&perm(&[1, 2]), 1));
        assert_eq!(ball, HashSet::from([vec![1, 2], vec![1], vec![2]]));
        let ball = seqs(&stable_deletion_ball(&perm(&[1, 2, 3]), 1));
        assert_eq!(ball, HashSet::from([vec![1, 2, 3], vec![2, 3], vec![1, 3], vec![1, 2]]));
    }

    #[test]
    fn ball_size_bounded_by_pattern_count() {
        for images in (1..=5u32).permutations(5) {
            let s = perm(&images);
            for t in 0..=5 {
                let patterns = patterns(5, t).count();
                assert!(stable_deletion_ball(&s, t).len() <= patterns);
                // Distinct values: different patterns always give different subsequences.
                assert_eq!(stable_deletion_ball(&s, t).len(), patterns);
            }
        }
    }

    #[test]
    fn unstable_ball_small() {
        let ball = unstable_deletion_ball(&perm(&[2, 3, 1]), 1);
        let expected: HashSet<Permutation> =
            [perm(&[2, 3, 1]), perm(&[2, 1]), perm(&[1, 2])].into_iter().collect();
        assert_eq!(ball, expected);
    }

    #[test]
    fn verify_examples() {
        assert!(verify_sd_property(&book(5, 2, &[&[1, 2, 3, 4, 5], &[4, 5, 2, 3, 1]])));
        assert!(verify_sd_property(&book(4, 2, &[&[2, 1, 4, 3]])));
        // Both balls contain (1,2) and (1,3).
        assert!(!verify_sd_property(&book(3, 1, &[&[1, 2, 3], &[1, 3, 2]])));
    }

    #[test]
    fn greedy_t0_is_whole_group() {
        for n in 0..=6 {
            let code = greedy_sd_code(n, 0).unwrap();
            assert_eq!(code.len() as u128, crate::guard::factorial(n).unwrap());
        }
    }

    #[test]
    fn greedy_starts_with_identity() {
        for n in 1..=6 {
            for t in 0..=2.min(n) {
                assert!(greedy_sd_code(n, t).unwrap().codewords[0].is_identity());
            }
        }
    }

    /// Naive greedy: compare each candidate's ball against every admitted ball.
    fn naive_greedy(n: usize, t: usize) -> Vec<Permutation> {
        let mut admitted: Vec<(Permutation, HashSet<Word>)> = Vec::new();
        for images in (1..=n as u32).permutations(n) {
            let sigma = perm(&images);
            let ball = stable_deletion_ball(&sigma, t);
            if admitted.iter().all(|(_, other)| other.is_disjoint(&ball)) {
                admitted.push((sigma, ball));
            }
        }
        admitted.into_iter().map(|(s, _)| s).collect()
    }

    #[test]
    fn greedy_matches_naive_oracle() {
        for (n, t) in [(4, 1), (4, 2), (5, 1), (5, 2), (3, 1)] {
            assert_eq!(greedy_sd_code(n, t).unwrap().codewords, naive_greedy(n, t), "n={n} t={t}");
        }
    }

    #[test]
    fn greedy_monotone_in_t() {
        for n in 1..=6 {
            let sizes: Vec<usize> = (0..=n).map(|t| greedy_sd_code(n, t).unwrap().len()).collect();
            assert!(sizes.windows(2).all(|w| w[1] <= w[0]), "n={n}: {sizes:?}");
        }
    }

    #[test]
    fn greedy_codes_verify_and_decode() {
        for n in 1..=6 {
            for t in 0..=2.min(n) {
                let code = greedy_sd_code(n, t).unwrap();
                assert!(verify_sd_property(&code));
                for sigma in &code.codewords {
                    for pattern in patterns(n, t) {
                        let received = apply_stable_deletions(sigma, &pattern).unwrap();
                        assert_eq!(sd_decode(&code, received.symbols()).as_ref(), Ok(sigma));
                    }
                }
            }
        }
    }

    #[test]
    fn unstable_codes() {
        assert!(greedy_ud_code(5, 2).is_err());
        for n in 1..=6 {
            let code = greedy_ud_code(n, 1).unwrap();
            assert!(verify_sd_property(&code));
            for sigma in &code.codewords {
                for pattern in patterns(n, 1) {
                    let received = apply_unstable_deletions(sigma, &pattern).unwrap();
                    assert_eq!(ud_decode(&code, &received).as_ref(), Ok(sigma));
                }
            }
        }
    }

    #[test]
    fn shuffled_order_still_verifies() {
        let g = ScaleGuard::default();
        let code = greedy_code(5, 1, DeletionKind::Stable, ScanOrder::Shuffled(9), &g).unwrap();
        assert!(verify_sd_property(&code));
        let again = greedy_code(5, 1, DeletionKind::Stable, ScanOrder::Shuffled(9), &g).unwrap();
        assert_eq!(code, again);
    }

    #[test]
    fn decode_examples() {
        let code = book(5, 2, &[&[1, 2, 3, 4, 5], &[4, 5, 2, 3, 1]]);
        assert_eq!(sd_decode(&code, &[4, 2, 1]).unwrap(), perm(&[4, 5, 2, 3, 1]));
        assert_eq!(sd_decode(&code, &[1, 2, 3, 4, 5]).unwrap(), perm(&[1, 2, 3, 4, 5]));
        assert_eq!(sd_decode(&code, &[2, 1, 3]), Err(Error::NotFound));
        assert!(matches!(sd_decode(&code, &[1, 2]), Err(Error::ReceivedLength { .. })));
        let bad = book(3, 1, &[&[1, 2, 3], &[1, 3, 2]]);
        assert_eq!(sd_decode(&bad, &[1, 3]), Err(Error::Ambiguous(2)));
    }

    #[test]
    fn guard_rejects_large_n() {
        let tight = ScaleGuard { enumeration: 10, permutations: 100 };
        assert!(matches!(
            greedy_code(6, 1, DeletionKind::Stable, ScanOrder::Lex, &tight),
            Err(Error::ScaleGuardExceeded { .. })
        ));
    }

    #[test]
    fn codebook_json() {
        let code = book(5, 2, &[&[1, 2, 3, 4, 5], &[4, 5, 2, 3, 1]]);
        let json = serde_json::to_string(&code).unwrap();
        assert_eq!(
            json,
            r#"{"n":5,"t":2,"codewords":[[1,2,3,4,5],[4,5,2,3,1]],"order":"lex","deletions":"stable"}"#
        );
        let back: PermCodeBook =
            serde_json::from_str(r#"{"n":5,"t":2,"codewords":[[1,2,3,4,5],[4,5,2,3,1]],"order":"lex"}"#).unwrap();
        assert_eq!(back, code);
        assert!(serde_json::from_str::<PermCodeBook>(r#"{"n":4,"t":1,"codewords":[[1,2,3]]}"#).is_err());
        assert!("shuffle:x".parse::<ScanOrder>().is_err());
        assert_eq!("shuffle:5".parse::<ScanOrder>().unwrap(), ScanOrder::Shuffled(5));
    }

    #[test]
    fn reference_bound_values() {
        // 120 / 10^5 for n = 5, t = 2.
        assert!((reference_size_bound(5, 2) - 0.0012).abs() < 1e-12);
    }
}
