//! Braid words on `n` strands.
//!
//! Words are only freely reduced. Deciding equality needs a faithful action,
//! see [`crate::representations::braid_equal`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{token_error, tokenize};

/// A word in `α_1 … α_{n-1}` and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<(u32, i8)>,
}

fn push_braid(buffer: &mut Vec<(u32, i8)>, letter: (u32, i8)) {
    if buffer
        .last()
        .is_some_and(|&(i, s)| i == letter.0 && s == -letter.1)
    {
        buffer.pop();
    } else {
        buffer.push(letter);
    }
}

impl BraidWord {
    pub fn identity(n: usize) -> Self {
        BraidWord {
            n,
            letters: Vec::new(),
        }
    }

    pub fn new(n: usize, letters: &[(u32, i8)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall { n, min: 2 });
        }
        let mut buffer = Vec::with_capacity(letters.len());
        for &(i, s) in letters {
            if i == 0 || i as usize >= n {
                return Err(Error::IndexOutOfRange {
                    index: i as usize,
                    bound: n - 1,
                });
            }
            if s != 1 && s != -1 {
                return Err(Error::IllegalExponent {
                    factor: i as usize,
                    exponent: s as i64,
                });
            }
            push_braid(&mut buffer, (i, s));
        }
        Ok(BraidWord { n, letters: buffer })
    }

    /// The generator `α_i^sign`.
    pub fn generator(n: usize, i: u32, sign: i8) -> Result<Self> {
        Self::new(n, &[(i, sign)])
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[(u32, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self.mul_trusted(other))
    }

    pub(crate) fn mul_trusted(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_braid(&mut letters, l);
        }
        BraidWord { n: self.n, letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = BraidWord::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            out = out.mul_trusted(&base);
        }
        out
    }

    /// Every letter inverted in place: the image under `α_i ↦ α_i⁻¹`.
    pub fn invert_letters(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    /// Sum of the exponents.
    pub fn length_hom(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| s as i64).sum()
    }

    /// Image in the symmetric group, `α_i ↦ (i, i+1)`.
    pub fn perm_image(&self) -> Permutation {
        let mut p = Permutation::identity(self.n);
        // p ∘ t is p with entries i, i+1 swapped
        for &(i, _) in &self.letters {
            p.images.swap(i as usize - 1, i as usize);
        }
        p
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in tokenize(text)? {
            if tok.name != "a" && tok.name != "alpha" {
                return Err(token_error(
                    &tok,
                    format!("expected a braid generator a_i, found '{}'", tok.name),
                ));
            }
            let i = tok
                .index
                .ok_or_else(|| token_error(&tok, "braid generators need an index"))?;
            if i as usize >= n {
                return Err(token_error(
                    &tok,
                    format!("a{i} does not exist on {n} strands"),
                ));
            }
            let sign = if tok.exponent < 0 { -1 } else { 1 };
            for _ in 0..tok.exponent.unsigned_abs() {
                letters.push((i, sign));
            }
        }
        Self::new(n, &letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, s)| {
                if s == 1 {
                    format!("a{i}")
                } else {
                    format!("a{i}^-1")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `ζ = (α_1 α_2 … α_{n-1})^n`
pub fn zeta(n: usize) -> Result<BraidWord> {
    let chain = positive_chain(n, n - 1)?;
    Ok(chain.pow(n as i64))
}

/// `β₀ = (α_1 α_2 α_3)²` in B₄.
pub fn beta0() -> BraidWord {
    positive_chain(4, 3).unwrap().pow(2)
}

/// `β = α_1 α_2 … α_{n-2}`
pub fn beta_chain(n: usize) -> Result<BraidWord> {
    if n < 3 {
        return Err(Error::RankTooSmall { n, min: 3 });
    }
    positive_chain(n, n - 2)
}

fn positive_chain(n: usize, last: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::RankTooSmall { n, min: 2 });
    }
    let letters: Vec<(u32, i8)> = (1..=last as u32).map(|i| (i, 1)).collect();
    BraidWord::new(n, &letters)
}

/// A permutation of `{1..n}` stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize - 1] {
                return Err(Error::Unsupported(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize == i + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
