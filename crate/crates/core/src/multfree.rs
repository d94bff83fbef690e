//! Multiplicity-free codes built from a set code and a permutation code.
//!
//! A word with distinct symbols splits into its symbol set `A(x)` and its
//! induced permutation `P(x)`, where `P(x)_k` is the rank of `x_k` inside
//! `A(x)`. The split is a bijection; [`psi`] puts the pieces back together.
//! The code is the preimage of `C_S × C_perm`, so its size is the product of
//! the component sizes.
//!
//! Decoding after up to `t` deletions:
//! 1. the surviving symbols form a subset of `A(x)`; the set code restores it;
//! 2. replacing each surviving symbol by its rank in the restored set gives
//!    `P(x)` with the same positions stably deleted;
//! 3. the permutation code restores `P(x)`;
//! 4. [`psi`] rebuilds `x`.
//!
//! With unstable-deletion permutation codes step 2 is replaced by taking the
//! induced permutation of the received word directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard::ScaleGuard;
use crate::model::{Permutation, SymbolSet, Word};
use crate::modular::next_prime_above;
use crate::perm_code::{
    greedy_code, sd_decode, ud_decode, verify_sd_property, DeletionKind, PermCodeBook, ScanOrder,
};
use crate::vt::{best_class_guarded, enumerate_class_guarded, is_codeword, set_decode, subset_to_bitword, VtParams};

/// Which deletion model the permutation component corrects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Stable,
    Unstable,
}

impl Mode {
    pub fn deletion_kind(self) -> DeletionKind {
        match self {
            Mode::Stable => DeletionKind::Stable,
            Mode::Unstable => DeletionKind::Unstable,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stable" => Ok(Mode::Stable),
            "unstable" => Ok(Mode::Unstable),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

/// A set code given as an explicit list of n-subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawExplicitSetCode", into = "RawExplicitSetCode")]
pub struct ExplicitSetCode {
    q: usize,
    n: usize,
    t: usize,
    sets: Vec<SymbolSet>,
}

#[derive(Serialize, Deserialize)]
struct RawExplicitSetCode {
    q: usize,
    n: usize,
    t: usize,
    sets: Vec<Vec<u32>>,
}

impl TryFrom<RawExplicitSetCode> for ExplicitSetCode {
    type Error = Error;

    fn try_from(raw: RawExplicitSetCode) -> Result<Self> {
        let sets = raw
            .sets
            .into_iter()
            .map(|s| {
                let len = s.len();
                let set = SymbolSet::from_symbols(raw.q as u32, s)?;
                if set.len() != len {
                    return Err(Error::InvalidParameter("repeated symbol in a set codeword".into()));
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        ExplicitSetCode::new(raw.q, raw.n, raw.t, sets)
    }
}

impl From<ExplicitSetCode> for RawExplicitSetCode {
    fn from(code: ExplicitSetCode) -> Self {
        RawExplicitSetCode {
            q: code.q,
            n: code.n,
            t: code.t,
            sets: code.sets.iter().map(SymbolSet::to_vec).collect(),
        }
    }
}

impl ExplicitSetCode {
    /// Sorts the sets into set-lex order. Every set must have `n` members over `q` symbols.
    pub fn new(q: usize, n: usize, t: usize, mut sets: Vec<SymbolSet>) -> Result<Self> {
        if n > q || t > n {
            return Err(Error::InvalidParameter(format!("need t <= n <= q, got q={q} n={n} t={t}")));
        }
        for set in &sets {
            if set.alphabet_size() as usize != q || set.len() != n {
                return Err(Error::InvalidParameter(format!("set {set} is not an {n}-subset of a {q}-ary alphabet")));
            }
        }
        sets.sort();
        sets.dedup();
        Ok(ExplicitSetCode { q, n, t, sets })
    }

    pub fn sets(&self) -> &[SymbolSet] {
        &self.sets
    }

    /// No two sets share `n - t` elements.
    pub fn corrects_deletions(&self) -> bool {
        let floor = self.n - self.t;
        self.sets.iter().enumerate().all(|(i, a)| {
            self.sets[i + 1..].iter().all(|b| a.intersection_len(b) < floor)
        })
    }

    /// The unique set containing `received`, searched exhaustively.
    pub fn decode(&self, received: &SymbolSet) -> Result<SymbolSet> {
        if received.len() + self.t < self.n || received.len() > self.n {
            return Err(Error::NoSolution);
        }
        let mut hits = self.sets.iter().filter(|s| received.is_subset(s));
        match (hits.next(), hits.next()) {
            (Some(set), None) => Ok(set.clone()),
            (None, _) => Err(Error::NoSolution),
            (Some(_), Some(_)) => Err(Error::Ambiguous(2 + hits.count())),
        }
    }
}

/// The set-code component: a VT syndrome class or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetCode {
    Vt(VtParams),
    Explicit(ExplicitSetCode),
}

impl SetCode {
    pub fn shape(&self) -> (usize, usize, usize) {
        match self {
            SetCode::Vt(p) => (p.q, p.n, p.t),
            SetCode::Explicit(c) => (c.q, c.n, c.t),
        }
    }

    /// Codeword sets in set-lex order.
    pub fn materialize(&self, guard: &ScaleGuard) -> Result<Vec<SymbolSet>> {
        match self {
            SetCode::Vt(params) => {
                let mut sets: Vec<SymbolSet> = enumerate_class_guarded(params, guard)?
                    .iter()
                    .map(crate::vt::bitword_to_subset)
                    .collect();
                sets.sort();
                Ok(sets)
            }
            SetCode::Explicit(code) => Ok(code.sets.clone()),
        }
    }

    pub fn decode(&self, received: &SymbolSet) -> Result<SymbolSet> {
        match self {
            SetCode::Vt(params) => set_decode(received, params),
            SetCode::Explicit(code) => code.decode(received),
        }
    }
}

/// Serializable description of a multiplicity-free code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultFreeCodeSpec {
    pub q: usize,
    pub n: usize,
    pub t: usize,
    #[serde(default)]
    pub mode: Mode,
    pub set_code: SetCode,
    pub perm_code: PermCodeBook,
}

impl MultFreeCodeSpec {
    /// Smallest prime above `q`, the largest VT class, and a greedy permutation code.
    pub fn construct(q: usize, n: usize, t: usize, mode: Mode) -> Result<Self> {
        Self::construct_guarded(q, n, t, mode, &ScaleGuard::from_env())
    }

    pub fn construct_guarded(q: usize, n: usize, t: usize, mode: Mode, guard: &ScaleGuard) -> Result<Self> {
        if n == 0 || n > q || t == 0 || t > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= t <= n <= q, got q={q} n={n} t={t}"
            )));
        }
        if mode == Mode::Unstable && t >= 2 {
            return Err(Error::InvalidParameter("unstable mode supports only t = 1".into()));
        }
        let p = next_prime_above(q.max(2) as u64)?;
        let (a, _) = best_class_guarded(q, n, t, p, guard)?;
        let set_code = SetCode::Vt(VtParams::new(q, n, t, p, a)?);
        let perm_code = greedy_code(n, t, mode.deletion_kind(), ScanOrder::Lex, guard)?;
        let spec = MultFreeCodeSpec { q, n, t, mode, set_code, perm_code };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let (q, n, t) = (self.q, self.n, self.t);
        if n > q {
            return Err(Error::InvalidParameter(format!("length {n} exceeds alphabet {q}")));
        }
        if self.set_code.shape() != (q, n, t) {
            return Err(Error::InvalidParameter("set code parameters disagree with (q, n, t)".into()));
        }
        if (self.perm_code.n, self.perm_code.t) != (n, t) {
            return Err(Error::InvalidParameter("permutation code parameters disagree with (n, t)".into()));
        }
        if self.perm_code.deletions != self.mode.deletion_kind() {
            return Err(Error::InvalidParameter("permutation code deletion model disagrees with mode".into()));
        }
        if self.mode == Mode::Unstable && t >= 2 {
            return Err(Error::InvalidParameter("unstable mode supports only t = 1".into()));
        }
        Ok(())
    }
}

/// `A(x)`, the set of symbols of a multiplicity-free word.
pub fn induced_set(x: &Word) -> Result<SymbolSet> {
    let mut set = SymbolSet::empty(x.alphabet_size());
    for &s in x.symbols() {
        if !set.insert(s) {
            return Err(Error::DuplicateSymbol(s));
        }
    }
    Ok(set)
}

/// `P(x)`: entry `k` is the rank of `x_k` among the symbols of `x` (1 = smallest).
pub fn induced_permutation(x: &Word) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_unstable_by_key(|&i| x.symbols()[i]);
    let mut images = vec![0u32; x.len()];
    for (rank, pair) in order.windows(2).enumerate() {
        if x.symbols()[pair[0]] == x.symbols()[pair[1]] {
            return Err(Error::DuplicateSymbol(x.symbols()[pair[0]]));
        }
        images[pair[0]] = rank as u32 + 1;
    }
    if let Some(&last) = order.last() {
        images[last] = x.len() as u32;
    }
    Ok(Permutation::new(images).expect("ranks of distinct values"))
}

/// `Ψ(A, σ) = (a_{σ_1}, .., a_{σ_n})` with `a_1 < .. < a_n` the members of `A`.
pub fn psi(set: &SymbolSet, sigma: &Permutation) -> Result<Word> {
    let sorted = set.to_vec();
    if sorted.len() != sigma.len() {
        return Err(Error::InvalidParameter(format!(
            "set of size {} paired with a permutation of length {}",
            sorted.len(),
            sigma.len()
        )));
    }
    let symbols = sigma.images().iter().map(|&k| sorted[k as usize - 1]).collect();
    Word::new(symbols, set.alphabet_size())
}

/// Replaces each symbol of `y` by its rank in `set` (1 = smallest), using a
/// rank table over the alphabet.
pub fn ranks_within(set: &SymbolSet, y: &Word) -> Result<Vec<u32>> {
    let mut rank = vec![0u32; set.alphabet_size() as usize];
    for (r, s) in set.iter().enumerate() {
        rank[s as usize] = r as u32 + 1;
    }
    y.symbols()
        .iter()
        .map(|&s| match rank.get(s as usize).copied().unwrap_or(0) {
            0 => Err(Error::SymbolNotInSet(s)),
            r => Ok(r),
        })
        .collect()
}

/// Intermediate values of one decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTrace {
    pub set: SymbolSet,
    /// The received word with each symbol replaced by its rank in `set`
    /// (stable mode) or the induced permutation of the received word (unstable mode).
    pub tau: Vec<u32>,
    pub permutation: Permutation,
    pub word: Word,
}

/// Report of [`MultFreeCode::verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub set_code_size: usize,
    pub perm_code_size: usize,
    pub code_size: u128,
    /// Every materialized set is a codeword of the VT class (always true for explicit codes).
    pub class_membership: bool,
    /// No two sets share an (n - t)-subset.
    pub set_code_corrects: bool,
    /// Permutation-code deletion balls are pairwise disjoint.
    pub ball_disjointness: bool,
    pub ok: bool,
}

/// A spec with its set code materialized, ready for enumeration and decoding.
#[derive(Debug, Clone)]
pub struct MultFreeCode {
    spec: MultFreeCodeSpec,
    sets: Vec<SymbolSet>,
}

impl MultFreeCode {
    pub fn new(spec: MultFreeCodeSpec) -> Result<Self> {
        Self::with_guard(spec, &ScaleGuard::from_env())
    }

    pub fn with_guard(spec: MultFreeCodeSpec, guard: &ScaleGuard) -> Result<Self> {
        spec.validate()?;
        let sets = spec.set_code.materialize(guard)?;
        let code = MultFreeCode { spec, sets };
        guard.check_enumeration(code.len())?;
        Ok(code)
    }

    pub fn spec(&self) -> &MultFreeCodeSpec {
        &self.spec
    }

    pub fn sets(&self) -> &[SymbolSet] {
        &self.sets
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.spec.perm_code.codewords
    }

    /// `|C_S| · |C_perm|`.
    pub fn len(&self) -> u128 {
        self.sets.len() as u128 * self.permutations().len() as u128
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Codewords in (set-lex, permutation-order) order.
    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        self.sets.iter().flat_map(move |set| {
            self.permutations()
                .iter()
                .map(move |sigma| psi(set, sigma).expect("component sizes agree"))
        })
    }

    /// Codeword number `i = i_set · |C_perm| + i_perm`.
    pub fn encode_index(&self, index: u128) -> Result<Word> {
        let size = self.len();
        if index >= size {
            return Err(Error::IndexOutOfRange { index, size });
        }
        let per_set = self.permutations().len() as u128;
        let set = &self.sets[(index / per_set) as usize];
        let sigma = &self.permutations()[(index % per_set) as usize];
        psi(set, sigma)
    }

    pub fn decode(&self, received: &Word) -> Result<Word> {
        self.decode_trace(received).map(|trace| trace.word)
    }

    pub fn decode_trace(&self, received: &Word) -> Result<DecodeTrace> {
        let MultFreeCodeSpec { q, n, t, .. } = self.spec;
        if received.alphabet_size() as usize != q {
            return Err(Error::InvalidParameter(format!(
                "received word over alphabet {} for a {q}-ary code",
                received.alphabet_size()
            )));
        }
        if received.len() + t < n || received.len() > n {
            return Err(Error::ReceivedLength { len: received.len(), min: n - t, max: n });
        }
        let observed = induced_set(received)?;
        let set = self
            .spec
            .set_code
            .decode(&observed)
            .map_err(|e| Error::SetDecodeFailed(Box::new(e)))?;

        let (tau, permutation) = match self.spec.mode {
            Mode::Stable => {
                let tau = ranks_within(&set, received)?;
                let sigma = sd_decode(&self.spec.perm_code, &tau)
                    .map_err(|e| Error::PermDecodeFailed(Box::new(e)))?;
                (tau, sigma)
            }
            Mode::Unstable => {
                if let Some(s) = received.symbols().iter().find(|&&s| !set.contains(s)) {
                    return Err(Error::SymbolNotInSet(*s));
                }
                let observed_perm = induced_permutation(received)?;
                let sigma = ud_decode(&self.spec.perm_code, &observed_perm)
                    .map_err(|e| Error::PermDecodeFailed(Box::new(e)))?;
                (observed_perm.into(), sigma)
            }
        };
        let word = psi(&set, &permutation)?;
        Ok(DecodeTrace { set, tau, permutation, word })
    }

    /// Structural soundness checks on both components.
    pub fn verify(&self) -> VerifyReport {
        let class_membership = match &self.spec.set_code {
            SetCode::Vt(params) => self.sets.iter().all(|s| is_codeword(&subset_to_bitword(s), params)),
            SetCode::Explicit(_) => true,
        };
        let set_code_corrects = ExplicitSetCode {
            q: self.spec.q,
            n: self.spec.n,
            t: self.spec.t,
            sets: self.sets.clone(),
        }
        .corrects_deletions();
        let ball_disjointness = verify_sd_property(&self.spec.perm_code);
        VerifyReport {
            set_code_size: self.sets.len(),
            perm_code_size: self.permutations().len(),
            code_size: self.len(),
            class_membership,
            set_code_corrects,
            ball_disjointness,
            ok: class_membership && set_code_corrects && ball_disjointness,
        }
    }
}
