//! Non-erasing substitutions and their incidence matrices.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::word::{abelianize, AbelianVector, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("image of letter {0} is empty")]
    EmptyImage(Letter),
    #[error("letter {0} outside alphabet 1..={1}")]
    LetterOutOfRange(u32, u8),
    #[error("rule for letter {0} is missing or duplicated")]
    BadRule(Letter),
    #[error("cannot parse substitution from {0:?}")]
    Unparsable(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(u8, u8),
}

/// A substitution `σ` over `{1, …, d}`: a map letter → nonempty word.
///
/// The incidence matrix `M_σ` (`M[i][j]` = occurrences of letter `i` in
/// `σ(j)`) is derived at construction and cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Substitution {
    d: u8,
    images: Vec<Word>,
    #[serde(skip)]
    incidence: IntMatrix,
}

impl Substitution {
    /// Builds a substitution from the images of letters `1..=d`.
    ///
    /// Rejects empty images (the map must be non-erasing) and letters outside
    /// the alphabet. Unimodularity is *not* required here; algorithm catalogs
    /// check it separately.
    pub fn new(d: u8, images: Vec<Word>) -> Result<Self, SubstitutionError> {
        if images.len() != d as usize {
            return Err(SubstitutionError::BadRule(images.len() as u8 + 1));
        }
        for (k, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(SubstitutionError::EmptyImage(k as u8 + 1));
            }
            img.check_alphabet(d).map_err(|_| {
                SubstitutionError::LetterOutOfRange(
                    img.letters()
                        .iter()
                        .copied()
                        .find(|&l| l == 0 || l > d)
                        .unwrap_or(0) as u32,
                    d,
                )
            })?;
        }
        let mut inc = IntMatrix::zero(d as usize);
        for (j, img) in images.iter().enumerate() {
            let counts = abelianize(img, d);
            for i in 0..d as usize {
                inc[(i, j)] = counts.as_slice()[i].into();
            }
        }
        Ok(Substitution {
            d,
            images,
            incidence: inc,
        })
    }

    /// Identity substitution `i ↦ i`.
    pub fn identity(d: u8) -> Self {
        let images = (1..=d).map(Word::letter).collect();
        Substitution::new(d, images).expect("identity is well formed")
    }

    pub fn dim(&self) -> u8 {
        self.d
    }

    pub fn image(&self, l: Letter) -> &Word {
        &self.images[(l - 1) as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// The cached incidence matrix `M_σ`.
    pub fn incidence(&self) -> &IntMatrix {
        &self.incidence
    }

    pub fn is_unimodular(&self) -> bool {
        self.incidence.is_unimodular()
    }

    /// `σ(i)` starts with the same letter for every `i`.
    pub fn is_left_proper(&self) -> bool {
        let first = self.images[0].letters()[0];
        self.images.iter().all(|w| w.letters()[0] == first)
    }

    /// Applies the substitution to a word, concatenating images in order.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &l in w.letters() {
            out.extend_from_slice(self.image(l).letters());
        }
        Word::new(out)
    }

    /// Applies the substitution, truncating the output to `max_len` letters.
    ///
    /// The first `max_len` letters of `σ(w)` depend only on a prefix of `w`,
    /// so callers expanding limit words can truncate at every stage.
    pub fn apply_truncated(&self, w: &Word, max_len: usize) -> Word {
        let mut out = Vec::with_capacity(max_len.min(w.len() * 2) + 8);
        for &l in w.letters() {
            out.extend_from_slice(self.image(l).letters());
            if out.len() >= max_len {
                out.truncate(max_len);
                break;
            }
        }
        Word::new(out)
    }

    /// Functional composition `(self ∘ rhs)(i) = self(rhs(i))`.
    ///
    /// The incidence matrix of the result is `M_self · M_rhs`.
    pub fn compose(&self, rhs: &Substitution) -> Result<Substitution, SubstitutionError> {
        if self.d != rhs.d {
            return Err(SubstitutionError::DimMismatch(self.d, rhs.d));
        }
        let images = rhs.images.iter().map(|img| self.apply(img)).collect();
        Substitution::new(self.d, images)
    }

    /// Abelianized action: `l(σ(w)) = M_σ · l(w)` evaluated directly.
    pub fn abelian_action(&self, v: &AbelianVector) -> AbelianVector {
        use num_traits::ToPrimitive;
        let big: Vec<num_bigint::BigInt> = v.as_slice().iter().map(|&x| x.into()).collect();
        let out = self.incidence.mul_vec(&big);
        AbelianVector(
            out.iter()
                .map(|x| x.to_i64().expect("abelian overflow"))
                .collect(),
        )
    }

    /// Parses `"1->13;2->12;3->2"`; rules may be separated by `;` or newlines.
    ///
    /// The alphabet size is the number of rules; every letter `1..=d` must get
    /// exactly one rule and images must stay inside the alphabet.
    pub fn parse(s: &str) -> Result<Substitution, SubstitutionError> {
        let rules: Vec<&str> = s
            .split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .collect();
        if rules.is_empty() {
            return Err(SubstitutionError::Unparsable(s.to_string()));
        }
        let d = rules.len() as u8;
        let mut images: Vec<Option<Word>> = vec![None; d as usize];
        for rule in rules {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| SubstitutionError::Unparsable(rule.to_string()))?;
            let letter: u32 = lhs
                .trim()
                .parse()
                .map_err(|_| SubstitutionError::Unparsable(rule.to_string()))?;
            if letter == 0 || letter > d as u32 {
                return Err(SubstitutionError::LetterOutOfRange(letter, d));
            }
            let img = Word::parse(rhs.trim())
                .map_err(|_| SubstitutionError::Unparsable(rule.to_string()))?;
            let slot = &mut images[(letter - 1) as usize];
            if slot.is_some() {
                return Err(SubstitutionError::BadRule(letter as Letter));
            }
            *slot = Some(img);
        }
        let images: Vec<Word> = images
            .into_iter()
            .enumerate()
            .map(|(k, w)| w.ok_or(SubstitutionError::BadRule(k as u8 + 1)))
            .collect::<Result<_, _>>()?;
        Substitution::new(d, images)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<String> = (1..=self.d)
            .map(|l| format!("{}->{}", l, self.image(l)))
            .collect();
        write!(f, "{}", rules.join(";"))
    }
}

/// The Cassaigne–Selmer substitution γ₁: 1↦1, 2↦13, 3↦2.
pub fn gamma1() -> Substitution {
    Substitution::parse("1->1;2->13;3->2").unwrap()
}

/// The Cassaigne–Selmer substitution γ₂: 1↦2, 2↦13, 3↦3.
pub fn gamma2() -> Substitution {
    Substitution::parse("1->2;2->13;3->3").unwrap()
}

/// γ₁ ∘ γ₂: 1↦13, 2↦12, 3↦2.
pub fn cs_tau() -> Substitution {
    gamma1().compose(&gamma2()).unwrap()
}

/// Arnoux–Rauzy substitution α_i over `{1, …, d}`: i↦i, j↦ij.
pub fn arnoux_rauzy_sub(d: u8, i: Letter) -> Substitution {
    assert!(i >= 1 && i <= d);
    let images = (1..=d)
        .map(|j| {
            if j == i {
                Word::letter(i)
            } else {
                Word::new(vec![i, j])
            }
        })
        .collect();
    Substitution::new(d, images).unwrap()
}

/// Brun substitution β_ij over `{1, …, d}`: j↦ij, k↦k for k ≠ j.
pub fn brun_sub(d: u8, i: Letter, j: Letter) -> Substitution {
    assert!(i != j && i >= 1 && i <= d && j >= 1 && j <= d);
    let images = (1..=d)
        .map(|k| {
            if k == j {
                Word::new(vec![i, j])
            } else {
                Word::letter(k)
            }
        })
        .collect();
    Substitution::new(d, images).unwrap()
}

/// Jacobi–Perron substitution ι_{a,b}: 1↦2, 2↦3, 3↦1·2^a·3^b, for 0 ≤ a ≤ b, b ≠ 0.
pub fn jacobi_perron_sub(a: u64, b: u64) -> Substitution {
    assert!(a <= b && b != 0);
    let mut img3 = vec![1u8];
    img3.extend(std::iter::repeat(2u8).take(a as usize));
    img3.extend(std::iter::repeat(3u8).take(b as usize));
    Substitution::new(3, vec![Word::letter(2), Word::letter(3), Word::new(img3)]).unwrap()
}

/// The d-bonacci substitution α̃: i↦1(i+1) for i < d, d↦1.
pub fn d_bonacci(d: u8) -> Substitution {
    let images = (1..=d)
        .map(|i| {
            if i < d {
                Word::new(vec![1, i + 1])
            } else {
                Word::letter(1)
            }
        })
        .collect();
    Substitution::new(d, images).unwrap()
}
