//! Directive sequences of substitutions and the finite machinery around
//! them: limit-word prefixes, factor languages, complexity, and balance.
//!
//! A directive sequence is periodic, an explicit list with a periodic tail,
//! or driven by a continued fraction expansion of a point (in which case the
//! cocycle identity `M_{σ_[0,n)} = trA⁽ⁿ⁾(x)` holds by construction).
//! Substitutions and cocycle products are materialized lazily into a cache
//! that only ever grows.

use std::collections::BTreeSet;
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::mcf::{MCFAlgorithm, McfError};
use crate::simplex::SimplexPoint;
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

/// Block size for seed-chain extension scans.
const CHAIN_BLOCK: usize = 64;

/// Total generated-word budget for language scans.
const LANGUAGE_BUDGET: usize = 200_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SadicError {
    #[error("no nested seed-letter chain found in the scan window")]
    NoNestedSeed,
    #[error("language table not saturated at depth {depth}")]
    Unsaturated { depth: usize },
    #[error("no positive cocycle product within window {window}")]
    NotPrimitive { window: usize },
    #[error("continued fraction expansion exited at step {step}: {source}")]
    CfExit { step: usize, source: McfError },
    #[error("generated words exceed the length budget ({budget})")]
    LengthBudget { budget: usize },
    #[error("substitution dimension {0} does not match sequence dimension {1}")]
    DimMismatch(u8, u8),
    #[error("empty directive data")]
    Empty,
}

enum Source {
    /// `(σ_0, …, σ_{p−1})^∞`.
    Periodic(Vec<Substitution>),
    /// Explicit prefix followed by a periodic tail.
    Explicit {
        prefix: Vec<Substitution>,
        period: Vec<Substitution>,
    },
    /// `σ_n = φ(Tⁿx)` for a continued fraction algorithm; the start point
    /// is iterate 0 in the cache.
    CfDriven { algo: MCFAlgorithm },
}

struct Cache {
    subs: Vec<Substitution>,
    /// products[n] = M_{σ_[0,n)}; products[0] = identity.
    products: Vec<IntMatrix>,
    /// Iterates Tᵏx for CF-driven sequences.
    cf_iterates: Vec<SimplexPoint>,
    cf_exit: Option<(usize, McfError)>,
}

/// A lazily materialized sequence of substitutions `σ = (σ_n)` with cached
/// cocycle products.
pub struct DirectiveSequence {
    d: u8,
    source: Source,
    cache: Mutex<Cache>,
}

impl DirectiveSequence {
    pub fn periodic(period: Vec<Substitution>) -> Result<Self, SadicError> {
        if period.is_empty() {
            return Err(SadicError::Empty);
        }
        let d = period[0].dim();
        for s in &period {
            if s.dim() != d {
                return Err(SadicError::DimMismatch(s.dim(), d));
            }
        }
        Ok(DirectiveSequence {
            d,
            source: Source::Periodic(period),
            cache: Self::fresh_cache(d),
        })
    }

    pub fn explicit(
        prefix: Vec<Substitution>,
        period: Vec<Substitution>,
    ) -> Result<Self, SadicError> {
        if period.is_empty() {
            return Err(SadicError::Empty);
        }
        let d = period[0].dim();
        for s in prefix.iter().chain(period.iter()) {
            if s.dim() != d {
                return Err(SadicError::DimMismatch(s.dim(), d));
            }
        }
        Ok(DirectiveSequence {
            d,
            source: Source::Explicit { prefix, period },
            cache: Self::fresh_cache(d),
        })
    }

    pub fn cf_driven(algo: MCFAlgorithm, start: SimplexPoint) -> Result<Self, SadicError> {
        let d = algo.dim();
        if start.dim() != d as usize {
            return Err(SadicError::DimMismatch(start.dim() as u8, d));
        }
        let cache = Cache {
            subs: Vec::new(),
            products: vec![IntMatrix::identity(d as usize)],
            cf_iterates: vec![start],
            cf_exit: None,
        };
        Ok(DirectiveSequence {
            d,
            source: Source::CfDriven { algo },
            cache: Mutex::new(cache),
        })
    }

    fn fresh_cache(d: u8) -> Mutex<Cache> {
        Mutex::new(Cache {
            subs: Vec::new(),
            products: vec![IntMatrix::identity(d as usize)],
            cf_iterates: Vec::new(),
            cf_exit: None,
        })
    }

    pub fn dim(&self) -> u8 {
        self.d
    }

    /// Materializes substitutions `σ_0..σ_{n-1}`; returns how many exist
    /// (less than `n` only when a CF-driven expansion exits early).
    fn materialize(&self, cache: &mut Cache, n: usize) -> usize {
        while cache.subs.len() < n {
            let k = cache.subs.len();
            let next = match &self.source {
                Source::Periodic(p) => Some(p[k % p.len()].clone()),
                Source::Explicit { prefix, period } => {
                    if k < prefix.len() {
                        Some(prefix[k].clone())
                    } else {
                        Some(period[(k - prefix.len()) % period.len()].clone())
                    }
                }
                Source::CfDriven { algo, .. } => {
                    if cache.cf_exit.is_some() {
                        None
                    } else {
                        let cur = cache.cf_iterates.last().expect("start iterate").clone();
                        match algo.step(&cur) {
                            Ok((cell, next_pt)) => {
                                cache.cf_iterates.push(next_pt);
                                Some(algo.substitution(&cell).expect("cell data"))
                            }
                            Err(e) => {
                                cache.cf_exit = Some((k, e));
                                None
                            }
                        }
                    }
                }
            };
            match next {
                Some(s) => {
                    let prod = cache.products.last().unwrap().mul(s.incidence());
                    cache.products.push(prod);
                    cache.subs.push(s);
                }
                None => break,
            }
        }
        cache.subs.len()
    }

    /// For CF-driven sequences, the step index and error where the expansion
    /// left the algorithm domain (if it did within the materialized window).
    pub fn cf_exit(&self) -> Option<(usize, McfError)> {
        self.cache.lock().unwrap().cf_exit.clone()
    }

    /// The expanded point of a CF-driven sequence.
    pub fn cf_start(&self) -> Option<SimplexPoint> {
        match &self.source {
            Source::CfDriven { .. } => Some(self.cache.lock().unwrap().cf_iterates[0].clone()),
            _ => None,
        }
    }

    /// Period length for purely periodic sequences.
    pub fn period_length(&self) -> Option<usize> {
        match &self.source {
            Source::Periodic(p) => Some(p.len()),
            Source::Explicit { prefix, period } if prefix.is_empty() => Some(period.len()),
            _ => None,
        }
    }

    pub fn substitution(&self, n: usize) -> Result<Substitution, SadicError> {
        let mut cache = self.cache.lock().unwrap();
        if self.materialize(&mut cache, n + 1) <= n {
            let (step, source) = cache.cf_exit.clone().expect("only CF sequences are finite");
            return Err(SadicError::CfExit { step, source });
        }
        Ok(cache.subs[n].clone())
    }

    /// Exact cocycle product `M_{σ_[0,n)}`.
    pub fn product(&self, n: usize) -> Result<IntMatrix, SadicError> {
        let mut cache = self.cache.lock().unwrap();
        if self.materialize(&mut cache, n) < n {
            let (step, source) = cache.cf_exit.clone().expect("only CF sequences are finite");
            return Err(SadicError::CfExit { step, source });
        }
        Ok(cache.products[n].clone())
    }

    /// `|σ_[0,n)(j)|`, the column sum of the cocycle product.
    pub fn image_length(&self, n: usize, j: Letter) -> Result<BigInt, SadicError> {
        Ok(self.product(n)?.column_sum((j - 1) as usize))
    }

    /// The shifted sequence `Σⁿσ`.
    pub fn shift(&self, n: usize) -> Result<DirectiveSequence, SadicError> {
        match &self.source {
            Source::Periodic(p) => {
                let mut rotated = p.clone();
                rotated.rotate_left(n % p.len());
                DirectiveSequence::periodic(rotated)
            }
            Source::Explicit { prefix, period } => {
                if n < prefix.len() {
                    DirectiveSequence::explicit(prefix[n..].to_vec(), period.clone())
                } else {
                    let mut rotated = period.clone();
                    rotated.rotate_left((n - prefix.len()) % period.len());
                    DirectiveSequence::periodic(rotated)
                }
            }
            Source::CfDriven { algo, .. } => {
                let mut cache = self.cache.lock().unwrap();
                if self.materialize(&mut cache, n) < n {
                    let (step, source) = cache.cf_exit.clone().unwrap();
                    return Err(SadicError::CfExit { step, source });
                }
                let start = cache.cf_iterates[n].clone();
                drop(cache);
                DirectiveSequence::cf_driven(
                    MCFAlgorithm::by_name(algo.name(), algo.dim()).expect("catalog name"),
                    start,
                )
            }
        }
    }

    /// True if `M_{σ_[0,n)}` is entrywise positive for some `n ≤ window`.
    pub fn primitive_within(&self, window: usize) -> bool {
        let mut cache = self.cache.lock().unwrap();
        let avail = self.materialize(&mut cache, window);
        (1..=avail).any(|n| cache.products[n].is_positive())
    }

    fn first_letter_map(cache: &Cache, k: usize) -> Vec<Letter> {
        let s = &cache.subs[k];
        (1..=s.dim()).map(|j| s.image(j).letters()[0]).collect()
    }

    /// Walks the first-letter maps down from `(top, j)`: i_t is the first
    /// letter of σ_t(i_{t+1}), so σ_[0,t)(i_t) are nested prefixes of a
    /// limit word.
    fn walk_down(cache: &Cache, top: usize, bottom: usize, j: Letter) -> Letter {
        let mut cur = j;
        for t in (bottom..top).rev() {
            let f = Self::first_letter_map(cache, t);
            cur = f[(cur - 1) as usize];
        }
        cur
    }

    /// Finds `(depth, letter)` such that `σ_[0,depth)(letter)` is a limit
    /// word prefix of length ≥ `n`, by the rules below. Every choice is a
    /// pure function of the substitution sequence, so prefixes are stable
    /// under extension.
    ///
    /// Rule 1 (left-proper windows): if the first-letter maps over some
    /// window `[k, m)` compose to a constant map with value `c`, every seed
    /// chain through depth `m` passes through `(k, c)`, so `σ_[0,k)(c)` is a
    /// prefix of every limit word reaching that deep — unconditionally
    /// stable. The largest such `k` below the scan frontier wins.
    ///
    /// Rule 2 (fallback, e.g. when all first-letter maps are permutations):
    /// take the chain through `(k, s)` where `s` is the window image letter
    /// whose walk to depth 0 is smallest (preferring letter 1). For
    /// injective first-letter maps the chain with a given bottom letter is
    /// unique, which again makes the choice stable.
    fn seed_at_length(&self, cache: &mut Cache, n: usize) -> Result<(usize, Letter), SadicError> {
        let target_len = BigInt::from(n);
        let len_at = |cache: &Cache, k: usize, c: Letter| -> BigInt {
            cache.products[k].column_sum((c - 1) as usize)
        };
        let mut best_singleton: Option<(usize, Letter)> = None;
        let mut last_growth = (0usize, BigInt::from(0));
        let mut m = 1usize;
        loop {
            let avail = self.materialize(cache, m);
            let frontier = avail.min(m);
            if frontier == m || cache.cf_exit.is_some() {
                // backward scan of window images C_[k,m)(A) for singletons
                let mut image: Vec<Letter> = (1..=self.d).collect();
                for k in (0..frontier).rev() {
                    let f = Self::first_letter_map(cache, k);
                    let mut next: Vec<Letter> =
                        image.iter().map(|&l| f[(l - 1) as usize]).collect();
                    next.sort_unstable();
                    next.dedup();
                    image = next;
                    if image.len() == 1 {
                        let c = image[0];
                        match best_singleton {
                            Some((bk, _)) if bk >= k => {}
                            _ => best_singleton = Some((k, c)),
                        }
                        // deeper (larger) k cannot appear further down this scan
                        break;
                    }
                }
            }
            if let Some((k, c)) = best_singleton {
                if len_at(cache, k, c) >= target_len {
                    return Ok((k, c));
                }
            }
            // growth stall detection (e.g. the identity substitution)
            let max_len = (1..=self.d)
                .map(|j| len_at(cache, frontier, j))
                .max()
                .unwrap_or_else(|| BigInt::from(0));
            if max_len > last_growth.1 {
                last_growth = (m, max_len);
            } else if m - last_growth.0 > CHAIN_BLOCK {
                return Err(SadicError::NoNestedSeed);
            }
            if frontier < m {
                // CF-driven sequence exited before depth m
                let (step, source) = cache.cf_exit.clone().expect("finite ⇒ CF exit");
                if let Some((k, c)) = best_singleton {
                    if len_at(cache, k, c) >= target_len {
                        return Ok((k, c));
                    }
                }
                // the sequence is finite, so chains from its frontier are
                // final: no guard zone is needed
                if let Some(found) =
                    self.fallback_seed(cache, frontier, &target_len, best_singleton, 0)
                {
                    return Ok(found);
                }
                return Err(SadicError::CfExit { step, source });
            }
            // fallback path: no singleton window near the frontier although
            // words are long enough
            if best_singleton
                .map(|(k, _)| m > k + 2 * CHAIN_BLOCK)
                .unwrap_or(m > 2 * CHAIN_BLOCK)
            {
                let deep_enough = (1..=self.d)
                    .any(|j| len_at(cache, m.saturating_sub(CHAIN_BLOCK), j) >= target_len);
                if deep_enough {
                    if let Some(found) =
                        self.fallback_seed(cache, m, &target_len, best_singleton, CHAIN_BLOCK)
                    {
                        return Ok(found);
                    }
                }
            }
            m += 1;
        }
    }

    /// Rule-2 seed: letters at depth `top − CHAIN_BLOCK` reachable from the
    /// frontier, preferring the chain that reaches letter 1 at depth 0. A
    /// singleton-window anchor, when present, filters the candidates so the
    /// fallback can never contradict an earlier Rule-1 answer.
    fn fallback_seed(
        &self,
        cache: &mut Cache,
        top: usize,
        target_len: &BigInt,
        anchor: Option<(usize, Letter)>,
        guard: usize,
    ) -> Option<(usize, Letter)> {
        let k = top.saturating_sub(guard);
        if guard == 0 {
            // finite frontier: the choice must not depend on the requested
            // length, so take the longest word (ties by walk preference) and
            // only then check it covers the target
            let mut best: Option<(BigInt, bool, Letter, Letter)> = None;
            for j in 1..=self.d {
                if let Some((ak, ac)) = anchor {
                    if ak <= k && Self::walk_down(cache, k, ak, j) != ac {
                        continue;
                    }
                }
                let i0 = Self::walk_down(cache, k, 0, j);
                let len = cache.products[k].column_sum((j - 1) as usize);
                // longest first; the boolean and letter orderings break ties
                let candidate = (len, i0 == 1, i0, j);
                let better = match &best {
                    None => true,
                    Some((bl, b1, bi, bj)) => {
                        (
                            &candidate.0,
                            candidate.1,
                            std::cmp::Reverse(candidate.2),
                            std::cmp::Reverse(candidate.3),
                        ) > (bl, *b1, std::cmp::Reverse(*bi), std::cmp::Reverse(*bj))
                    }
                };
                if better {
                    best = Some(candidate);
                }
            }
            return match best {
                Some((len, _, _, s)) if len >= *target_len => Some((k, s)),
                _ => None,
            };
        }
        let mut best: Option<(bool, Letter, Letter)> = None; // (i0 != 1, i0, s)
        for j in 1..=self.d {
            let s = Self::walk_down(cache, top, k, j);
            if cache.products[k].column_sum((s - 1) as usize) < *target_len {
                continue;
            }
            if let Some((ak, ac)) = anchor {
                if ak <= k && Self::walk_down(cache, k, ak, s) != ac {
                    continue;
                }
            }
            let i0 = Self::walk_down(cache, k, 0, s);
            let key = (i0 != 1, i0, s);
            if best.map(|b| key < b).unwrap_or(true) {
                best = Some(key);
            }
        }
        best.map(|(_, _, s)| (k, s))
    }

    /// First `n` letters of a limit word of the sequence.
    ///
    /// Stable under extension: requesting more letters never changes the
    /// ones already produced (see `seed_at_length` for the invariants).
    pub fn limit_word_prefix(&self, n: usize) -> Result<Word, SadicError> {
        if n == 0 {
            return Ok(Word::empty());
        }
        let mut cache = self.cache.lock().unwrap();
        let (depth, letter) = self.seed_at_length(&mut cache, n)?;
        let mut w = Word::letter(letter);
        for t in (0..depth).rev() {
            w = cache.subs[t].apply_truncated(&w, n);
        }
        debug_assert!(w.len() >= n);
        Ok(w.prefix(n))
    }

    /// Generates `σ_[0,depth)(j)` in full for every letter `j`.
    fn generator_words(&self, cache: &mut Cache, depth: usize) -> Result<Vec<Word>, SadicError> {
        if self.materialize(cache, depth) < depth {
            let (step, source) = cache.cf_exit.clone().unwrap();
            return Err(SadicError::CfExit { step, source });
        }
        let mut total = 0usize;
        let mut out = Vec::with_capacity(self.d as usize);
        for j in 1..=self.d {
            let mut w = Word::letter(j);
            for t in (0..depth).rev() {
                w = cache.subs[t].apply(&w);
                total += w.len();
                if total > LANGUAGE_BUDGET {
                    return Err(SadicError::LengthBudget {
                        budget: LANGUAGE_BUDGET,
                    });
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// Factors of length ≤ `n` of the words `σ_[0,depth)(j)`, with a flag
    /// telling whether one more level of images leaves the table unchanged.
    pub fn language(&self, n: usize, depth: usize) -> Result<LanguageTable, SadicError> {
        assert!(n >= 1, "factor length must be positive");
        let mut cache = self.cache.lock().unwrap();
        let at_depth = factor_sets(&self.generator_words(&mut cache, depth)?, n);
        let saturated = match self.generator_words(&mut cache, depth + 1) {
            Ok(next_words) => factor_sets(&next_words, n) == at_depth,
            Err(SadicError::CfExit { .. }) => false,
            Err(e) => return Err(e),
        };
        Ok(LanguageTable {
            max_len: n,
            depth,
            saturated,
            factors: at_depth,
        })
    }

    /// Smallest scanned depth ≤ `depth_cap` whose language table for lengths
    /// ≤ `n` is stable against a deeper probe.
    ///
    /// The single-increment flag of [`language`](Self::language) can stall
    /// transiently when the sequence lingers on near-trivial substitutions:
    /// a run of R identical Cassaigne–Selmer or Arnoux–Rauzy maps freezes the
    /// factor sets for up to R consecutive depths. The automatic search
    /// therefore probes at `depth + max(8, depth/2, longest run + 4)`; the
    /// run-aware gap clears any stall plateau, and stays affordable because
    /// stall-prone sequences are exactly the slowly growing ones.
    pub fn saturated_language(
        &self,
        n: usize,
        depth_cap: usize,
    ) -> Result<LanguageTable, SadicError> {
        let mut depth = 2;
        loop {
            let table = self.language(n, depth)?;
            if table.saturated {
                let run = self.longest_run_near(depth + 8);
                let gap = (depth / 2).max(8).max(run + 4);
                let probe = self.factor_sets_at(depth + gap, depth, n)?;
                if (1..=n).all(|m| table.factors(m) == &probe[m - 1]) {
                    return Ok(table);
                }
            }
            if depth >= depth_cap {
                return Err(SadicError::Unsaturated { depth });
            }
            let step = if depth < 24 { 2 } else { 4 };
            depth = (depth + step).min(depth_cap);
        }
    }

    /// Factors of length ≤ `n` of `σ_[0,target)(j)` without expanding the
    /// full target-depth words: when every letter image at `base` is at
    /// least `n` letters long, each short factor lies inside the image of a
    /// 2-letter block, so scanning `σ_[0,base)(ab)` over the 2-factors `ab`
    /// of the shifted words `σ_[base,target)(j)` is exact and exponentially
    /// cheaper. Falls back to direct expansion for shallow bases.
    fn factor_sets_at(
        &self,
        target: usize,
        base: usize,
        n: usize,
    ) -> Result<Vec<BTreeSet<Word>>, SadicError> {
        let mut cache = self.cache.lock().unwrap();
        if self.materialize(&mut cache, target) < target {
            let (step, source) = cache.cf_exit.clone().unwrap();
            return Err(SadicError::CfExit { step, source });
        }
        let min_len = (0..self.d as usize)
            .map(|j| cache.products[base].column_sum(j))
            .min()
            .unwrap();
        if base == 0 || base >= target || min_len < BigInt::from(n) {
            return Ok(factor_sets(&self.generator_words(&mut cache, target)?, n));
        }
        // 2-factors (and letters) of the shifted words σ_[base,target)(j)
        let mut pairs: BTreeSet<(Letter, Letter)> = BTreeSet::new();
        let mut letters_seen: BTreeSet<Letter> = BTreeSet::new();
        let mut total = 0usize;
        for j in 1..=self.d {
            let mut w = Word::letter(j);
            for t in (base..target).rev() {
                w = cache.subs[t].apply(&w);
                total += w.len();
                if total > LANGUAGE_BUDGET {
                    return Err(SadicError::LengthBudget {
                        budget: LANGUAGE_BUDGET,
                    });
                }
            }
            let ls = w.letters();
            letters_seen.extend(ls.iter().copied());
            for win in ls.windows(2) {
                pairs.insert((win[0], win[1]));
            }
        }
        let bases = self.generator_words(&mut cache, base)?;
        let mut scan_words: Vec<Word> = letters_seen
            .iter()
            .map(|&a| bases[(a - 1) as usize].clone())
            .collect();
        for &(a, b) in &pairs {
            scan_words.push(bases[(a - 1) as usize].concat(&bases[(b - 1) as usize]));
        }
        Ok(factor_sets(&scan_words, n))
    }

    /// Longest run of one repeated substitution within a window, extending
    /// the window while the run at its frontier is still going (capped).
    /// Runs in purely constant sequences report 0: a constant sequence
    /// cannot stall-and-resume, so no extra gap is needed there.
    fn longest_run_near(&self, window: usize) -> usize {
        let mut cache = self.cache.lock().unwrap();
        let mut end = window.max(4);
        let mut avail = self.materialize(&mut cache, end + 1);
        let mut longest = 0usize;
        let mut cur = 1usize;
        let mut k = 1usize;
        let cap = window + 512;
        loop {
            if k >= avail.min(end + 1) && (k >= avail || cur == 0) {
                break;
            }
            if k >= avail {
                break;
            }
            if cache.subs[k] == cache.subs[k - 1] {
                cur += 1;
                if k + 1 > end && end < cap {
                    // the frontier run is still open; look further
                    end += 32;
                    avail = self.materialize(&mut cache, end + 1);
                }
            } else {
                longest = longest.max(cur);
                cur = 1;
            }
            k += 1;
            if k > end {
                break;
            }
        }
        if cur >= k {
            // one single run filled the whole window: a constant sequence
            0
        } else {
            longest.max(if k > end { 0 } else { cur })
        }
    }

    /// Factor complexity `p(1..=n_max)` from a saturated table.
    pub fn factor_complexity(&self, n_max: usize, depth: usize) -> Result<Vec<usize>, SadicError> {
        let table = self.language(n_max, depth)?;
        if !table.saturated {
            return Err(SadicError::Unsaturated { depth });
        }
        Ok(table.complexities())
    }

    /// Balance constants of the language scanned up to factor length
    /// `n_scan` at the given depth; optionally per-factor constants for
    /// factors up to length `factors_up_to`.
    pub fn balance(
        &self,
        n_scan: usize,
        depth: usize,
        factors_up_to: Option<usize>,
    ) -> Result<BalanceReport, SadicError> {
        let table = self.language(n_scan, depth)?;
        if !table.saturated {
            return Err(SadicError::Unsaturated { depth });
        }
        Ok(balance_from_table(&table, self.d, factors_up_to))
    }
}

fn factor_sets(words: &[Word], n: usize) -> Vec<BTreeSet<Word>> {
    use std::collections::HashSet;
    let mut sets: Vec<BTreeSet<Word>> = Vec::with_capacity(n);
    for m in 1..=n {
        // collect borrowed windows first so only distinct factors allocate
        let mut seen: HashSet<&[Letter]> = HashSet::new();
        for w in words {
            let letters = w.letters();
            if letters.len() < m {
                continue;
            }
            for win in letters.windows(m) {
                seen.insert(win);
            }
        }
        sets.push(seen.into_iter().map(Word::from).collect());
    }
    sets
}

/// Factors of each length `1..=max_len` with saturation provenance.
#[derive(Debug, Clone)]
pub struct LanguageTable {
    pub max_len: usize,
    pub depth: usize,
    pub saturated: bool,
    factors: Vec<BTreeSet<Word>>,
}

impl LanguageTable {
    pub fn factors(&self, len: usize) -> &BTreeSet<Word> {
        &self.factors[len - 1]
    }

    /// `p(m) = |factors(m)|` for `m = 1..=max_len`.
    pub fn complexities(&self) -> Vec<usize> {
        self.factors.iter().map(BTreeSet::len).collect()
    }
}

/// Measured balance constants, scoped by scan length and depth.
#[derive(Debug, Clone, Serialize)]
pub struct BalanceReport {
    pub n_scan: usize,
    pub depth: usize,
    /// C_i per letter: the max over equal-length factor pairs of the letter
    /// count difference.
    pub letter_constants: Vec<i64>,
    /// Largest letter constant.
    pub c_max: i64,
    /// C_v for factors v up to the requested length, rendered as strings.
    pub factor_constants: Option<Vec<(String, i64)>>,
}

fn balance_from_table(table: &LanguageTable, d: u8, factors_up_to: Option<usize>) -> BalanceReport {
    let mut letter_constants = vec![0i64; d as usize];
    for m in 1..=table.max_len {
        if table.factors(m).is_empty() {
            continue;
        }
        let mut mins = vec![i64::MAX; d as usize];
        let mut maxs = vec![i64::MIN; d as usize];
        for w in table.factors(m) {
            let mut counts = vec![0i64; d as usize];
            for &l in w.letters() {
                counts[(l - 1) as usize] += 1;
            }
            for i in 0..d as usize {
                mins[i] = mins[i].min(counts[i]);
                maxs[i] = maxs[i].max(counts[i]);
            }
        }
        for i in 0..d as usize {
            letter_constants[i] = letter_constants[i].max(maxs[i] - mins[i]);
        }
    }
    let factor_constants = factors_up_to.map(|cap| {
        let mut out = Vec::new();
        for vlen in 1..=cap.min(table.max_len) {
            for v in table.factors(vlen) {
                let mut c_v = 0i64;
                for m in vlen..=table.max_len {
                    let mut min_c = i64::MAX;
                    let mut max_c = i64::MIN;
                    for w in table.factors(m) {
                        let c = count_occurrences(w, v);
                        min_c = min_c.min(c);
                        max_c = max_c.max(c);
                    }
                    if min_c != i64::MAX {
                        c_v = c_v.max(max_c - min_c);
                    }
                }
                out.push((v.to_string(), c_v));
            }
        }
        out
    });
    BalanceReport {
        n_scan: table.max_len,
        depth: table.depth,
        c_max: letter_constants.iter().copied().max().unwrap_or(0),
        letter_constants,
        factor_constants,
    }
}

fn count_occurrences(w: &Word, v: &Word) -> i64 {
    let (wl, vl) = (w.letters(), v.letters());
    if vl.len() > wl.len() {
        return 0;
    }
    wl.windows(vl.len()).filter(|win| *win == vl).count() as i64
}


#[cfg(test)]
mod exit_tests {
    use super::*;
    use crate::mcf::MCFAlgorithm;
    use crate::simplex::SimplexPoint;

    #[test]
    fn words_from_exited_expansions_use_the_final_level() {
        // a small-denominator JP point exits Euclid-style after a few steps;
        // the finite sequence still serves words its last level can cover
        let x = SimplexPoint::parse("51/256,92/256,113/256", 128).unwrap();
        let seq = DirectiveSequence::cf_driven(MCFAlgorithm::jacobi_perron(), x).unwrap();
        let w = seq.limit_word_prefix(30).unwrap();
        assert_eq!(w.len(), 30);
        // stability also holds on the finite sequence
        let w10 = seq.limit_word_prefix(10).unwrap();
        assert_eq!(w.prefix(10), w10);
        // far beyond the final level the honest answer is the exit error
        assert!(matches!(
            seq.limit_word_prefix(100_000_000),
            Err(SadicError::CfExit { .. })
        ));
    }
}
