//! The balanced-pair algorithm.
//!
//! Starting from the neighbor pairs `(ij, ji)`, iterate
//! `(v₁, v₂) ↦ decompose(σ(v₁), σ(v₂))` to closure. If the closure is finite
//! and every discovered pair can reach a coincidence `(i, i)` in the
//! decomposition graph, the substitutive system has purely discrete spectrum.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::substitution::Substitution;
use crate::word::{abelianize, Word};

/// Two words with equal abelianization, stored with the lexicographically
/// smaller side first (pairs are unordered).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BalancedPair {
    pub left: Word,
    pub right: Word,
}

impl BalancedPair {
    pub fn new(a: Word, b: Word, d: u8) -> Self {
        debug_assert_eq!(
            abelianize(&a, d),
            abelianize(&b, d),
            "pair must be balanced"
        );
        debug_assert!(!a.is_empty());
        if a <= b {
            BalancedPair { left: a, right: b }
        } else {
            BalancedPair { left: b, right: a }
        }
    }

    pub fn from_strs(a: &str, b: &str, d: u8) -> Self {
        BalancedPair::new(Word::parse(a).unwrap(), Word::parse(b).unwrap(), d)
    }

    pub fn is_coincidence(&self) -> bool {
        self.left.len() == 1 && self.left == self.right
    }
}

impl std::fmt::Display for BalancedPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// Splits a balanced pair at every index where the prefix abelianizations
/// coincide; the parts are irreducible and concatenate back to the input.
/// The sides keep their orientation.
pub fn decompose_ordered(v1: &Word, v2: &Word, d: u8) -> Vec<(Word, Word)> {
    assert_eq!(v1.len(), v2.len(), "balanced pairs have equal length");
    let mut parts = Vec::new();
    let mut diff = vec![0i64; d as usize];
    let mut start = 0;
    let (l1, l2) = (v1.letters(), v2.letters());
    for k in 0..l1.len() {
        diff[(l1[k] - 1) as usize] += 1;
        diff[(l2[k] - 1) as usize] -= 1;
        if diff.iter().all(|&c| c == 0) {
            parts.push((
                v1.factor(start, k + 1 - start),
                v2.factor(start, k + 1 - start),
            ));
            start = k + 1;
        }
    }
    debug_assert_eq!(start, l1.len(), "input must be balanced");
    parts
}

/// Irreducible parts of a balanced pair, in canonical orientation.
pub fn decompose(pair: &BalancedPair, d: u8) -> Vec<BalancedPair> {
    decompose_ordered(&pair.left, &pair.right, d)
        .into_iter()
        .map(|(a, b)| BalancedPair::new(a, b, d))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BpaVerdict {
    /// Finite closure, every pair reaches a coincidence: purely discrete
    /// spectrum for the substitutive system.
    Terminates,
    /// Finite closure with a nonempty set of pairs from which no coincidence
    /// is reachable.
    NonDiscrete { witness: Vec<BalancedPair> },
    /// A cap was hit before closure; explicitly not a truthy outcome.
    Inconclusive { reason: String },
}

#[derive(Debug, Serialize)]
pub struct BpaResult {
    pub verdict: BpaVerdict,
    /// Generation sets I₀, I₁, …: all irreducible parts produced at each
    /// round (pairs may reappear across generations).
    pub generations: Vec<BTreeSet<BalancedPair>>,
    /// Every pair ever discovered.
    pub pairs: BTreeSet<BalancedPair>,
    pub rounds: usize,
}

impl BpaResult {
    pub fn terminates(&self) -> bool {
        matches!(self.verdict, BpaVerdict::Terminates)
    }
}

/// Runs the balanced-pair algorithm for σ with caps on the number of
/// distinct pairs and closure rounds.
pub fn bpa_run(sigma: &Substitution, pair_cap: usize, iter_cap: usize) -> BpaResult {
    let d = sigma.dim();
    let mut i0 = BTreeSet::new();
    for i in 1..=d {
        for j in i + 1..=d {
            i0.insert(BalancedPair::new(
                Word::new(vec![i, j]),
                Word::new(vec![j, i]),
                d,
            ));
        }
    }
    let mut generations = vec![i0.clone()];
    let mut all: BTreeSet<BalancedPair> = i0.clone();
    let mut edges: BTreeMap<BalancedPair, Vec<BalancedPair>> = BTreeMap::new();
    let mut rounds = 0;
    loop {
        if rounds >= iter_cap {
            return BpaResult {
                verdict: BpaVerdict::Inconclusive {
                    reason: format!("round cap {iter_cap} reached before closure"),
                },
                generations,
                pairs: all,
                rounds,
            };
        }
        rounds += 1;
        let prev = generations.last().unwrap().clone();
        let mut next = BTreeSet::new();
        for pair in &prev {
            let parts = edges.entry(pair.clone()).or_insert_with(|| {
                let img = BalancedPair::new(sigma.apply(&pair.left), sigma.apply(&pair.right), d);
                decompose(&img, d)
            });
            for p in parts.iter() {
                debug_assert_eq!(
                    abelianize(&p.left, d),
                    abelianize(&p.right, d),
                    "produced pair must be balanced"
                );
                next.insert(p.clone());
            }
        }
        let new_pairs: Vec<BalancedPair> = next.difference(&all).cloned().collect();
        all.extend(new_pairs.iter().cloned());
        generations.push(next);
        if all.len() > pair_cap {
            return BpaResult {
                verdict: BpaVerdict::Inconclusive {
                    reason: format!("pair cap {pair_cap} exceeded"),
                },
                generations,
                pairs: all,
                rounds,
            };
        }
        if new_pairs.is_empty() {
            break;
        }
    }
    // closure reached: make sure every pair's decomposition is recorded
    let pending: Vec<BalancedPair> = all
        .iter()
        .filter(|p| !edges.contains_key(*p))
        .cloned()
        .collect();
    for pair in pending {
        let img = BalancedPair::new(sigma.apply(&pair.left), sigma.apply(&pair.right), d);
        let parts = decompose(&img, d);
        edges.insert(pair, parts);
    }
    // reverse reachability from coincidences
    let mut reaches: BTreeSet<BalancedPair> =
        all.iter().filter(|p| p.is_coincidence()).cloned().collect();
    let mut reverse: BTreeMap<&BalancedPair, Vec<&BalancedPair>> = BTreeMap::new();
    for (src, parts) in &edges {
        for dst in parts {
            reverse.entry(dst).or_default().push(src);
        }
    }
    let mut queue: VecDeque<BalancedPair> = reaches.iter().cloned().collect();
    while let Some(p) = queue.pop_front() {
        if let Some(srcs) = reverse.get(&p) {
            for &s in srcs {
                if reaches.insert(s.clone()) {
                    queue.push_back(s.clone());
                }
            }
        }
    }
    let stuck: Vec<BalancedPair> = all
        .iter()
        .filter(|p| !reaches.contains(*p))
        .cloned()
        .collect();
    let verdict = if stuck.is_empty() {
        BpaVerdict::Terminates
    } else {
        BpaVerdict::NonDiscrete { witness: stuck }
    };
    BpaResult {
        verdict,
        generations,
        pairs: all,
        rounds,
    }
}
