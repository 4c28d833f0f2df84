//! Bounded-deviation word construction.
//!
//! Given a nonzero count vector `x ∈ N^d`, produce a word `w` with
//! `l(w) = x` whose every prefix `p` satisfies
//! `‖π'_x l(p)‖_∞ ≤ 1 − 1/(2d−2)`, starting with a letter of maximal count.
//! Greedy choice minimizing the running sup-norm (ties: largest remaining
//! count, then smallest index) almost always succeeds; a bounded
//! backtracking pass covers the rest.
//!
//! All deviations are compared exactly: with `N = ⟨1, x⟩` the condition
//! `|c_j − k·x_j/N| ≤ 1 − 1/(2d−2)` is scaled to integers as
//! `|c_j·N − k·x_j|·(2d−2) ≤ N·(2d−3)`.

use super::SpectralError;
use crate::word::{Letter, Word};

const NODE_CAP: usize = 2_000_000;

pub fn tijdeman_word(x: &[u64]) -> Result<Word, SpectralError> {
    let d = x.len();
    if d < 2 {
        // d = 1: the word is forced and every prefix projects to 0
        if d == 1 && x[0] > 0 {
            return Ok(Word::new(vec![1; x[0] as usize]));
        }
        return Err(SpectralError::BadInput(
            "need a nonzero vector with d ≥ 2".into(),
        ));
    }
    let total: u64 = x.iter().sum();
    if total == 0 {
        return Err(SpectralError::BadInput("zero vector".into()));
    }
    let n = total as i128;
    let scale = (2 * d - 2) as i128;
    let bound = n * (2 * d - 3) as i128; // |dev_j·scale| ≤ N(2d−3)
    let max_count = *x.iter().max().unwrap();

    let mut counts = vec![0u64; d];
    let mut word: Vec<Letter> = Vec::with_capacity(total as usize);
    let mut nodes = 0usize;
    // choices[k] = letters already tried at position k (for backtracking)
    let mut tried: Vec<Vec<Letter>> = vec![Vec::new(); total as usize];

    while (word.len() as u64) < total {
        let k = word.len();
        let next = pick_letter(x, &counts, k, n, scale, bound, &tried[k], max_count);
        match next {
            Some(l) => {
                tried[k].push(l);
                counts[(l - 1) as usize] += 1;
                word.push(l);
            }
            None => {
                // backtrack
                tried[k].clear();
                match word.pop() {
                    Some(prev) => {
                        counts[(prev - 1) as usize] -= 1;
                        nodes += 1;
                        if nodes > NODE_CAP {
                            return Err(SpectralError::SearchExhausted);
                        }
                    }
                    None => return Err(SpectralError::SearchExhausted),
                }
            }
        }
    }
    Ok(Word::new(word))
}

#[allow(clippy::too_many_arguments)]
fn pick_letter(
    x: &[u64],
    counts: &[u64],
    k: usize,
    n: i128,
    scale: i128,
    bound: i128,
    tried: &[Letter],
    max_count: u64,
) -> Option<Letter> {
    let d = x.len();
    let mut best: Option<(i128, i64, Letter)> = None; // (supnorm, -remaining, letter)
    for l in 1..=d as u8 {
        if tried.contains(&l) {
            continue;
        }
        let idx = (l - 1) as usize;
        if counts[idx] >= x[idx] {
            continue;
        }
        // the first letter must have maximal coordinate
        if k == 0 && x[idx] != max_count {
            continue;
        }
        let kp = (k + 1) as i128;
        let mut sup = 0i128;
        let mut ok = true;
        for j in 0..d {
            let c = counts[j] as i128 + if j == idx { 1 } else { 0 };
            let dev = (c * n - kp * x[j] as i128).abs() * scale;
            if dev > bound {
                ok = false;
                break;
            }
            sup = sup.max(dev);
        }
        if !ok {
            continue;
        }
        let remaining = (x[idx] - counts[idx]) as i64;
        let key = (sup, -remaining, l);
        if best.map(|b| key < b).unwrap_or(true) {
            best = Some(key);
        }
    }
    best.map(|(_, _, l)| l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::abelianize;

    fn check(x: &[u64]) {
        let d = x.len();
        let w = tijdeman_word(x).unwrap();
        let n: u64 = x.iter().sum();
        assert_eq!(w.len() as u64, n);
        let counts = abelianize(&w, d as u8);
        for (j, &xj) in x.iter().enumerate() {
            assert_eq!(counts.as_slice()[j] as u64, xj, "l(w) must equal x");
        }
        // prefix bound, exact
        let scale = (2 * d - 2) as i128;
        let bound = n as i128 * (2 * d - 3) as i128;
        let mut c = vec![0i128; d];
        for (k, &l) in w.letters().iter().enumerate() {
            c[(l - 1) as usize] += 1;
            let kp = (k + 1) as i128;
            for j in 0..d {
                let dev = (c[j] * n as i128 - kp * x[j] as i128).abs() * scale;
                assert!(
                    dev <= bound,
                    "prefix deviation bound violated at {k} for {x:?}"
                );
            }
        }
        // first letter has maximal coordinate
        let first = w.letters()[0];
        let max = *x.iter().max().unwrap();
        assert_eq!(x[(first - 1) as usize], max);
    }

    #[test]
    fn hand_examples() {
        assert_eq!(tijdeman_word(&[1, 1, 1]).unwrap().to_string(), "123");
        assert_eq!(tijdeman_word(&[2, 1]).unwrap().to_string(), "121");
        assert_eq!(tijdeman_word(&[1, 0, 0]).unwrap().to_string(), "1");
    }

    #[test]
    fn random_vectors_satisfy_the_bound() {
        let mut state = 0xfeedf00du64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) % 21
        };
        for _ in 0..100 {
            let x = [next(), next(), next()];
            if x.iter().sum::<u64>() == 0 {
                continue;
            }
            check(&x);
        }
        for _ in 0..40 {
            let x = [next(), next(), next(), next()];
            if x.iter().sum::<u64>() == 0 {
                continue;
            }
            check(&x);
        }
    }

    #[test]
    fn rejects_zero_vector() {
        assert!(tijdeman_word(&[0, 0, 0]).is_err());
    }
}
