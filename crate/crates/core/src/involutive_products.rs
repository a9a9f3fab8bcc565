//! Free products of cyclic groups.
//!
//! [`InvolutiveWord`] is the special case K = C₂ ⋆ … ⋆ C₂ with letters
//! `x1 … xn`; [`FreeProductWord`] handles arbitrary finite or infinite factors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_words::{rotation_matching, Family, FreeWord, GenSym, Letter};
use crate::text::{token_error, tokenize, with_sign};

/// Reduced word in K = ⋆ₙC₂: no two adjacent letters are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvolutiveWord {
    n: usize,
    letters: Vec<u32>,
}

fn push_involutive(buffer: &mut Vec<u32>, x: u32) {
    if buffer.last() == Some(&x) {
        buffer.pop();
    } else {
        buffer.push(x);
    }
}

impl InvolutiveWord {
    pub fn identity(n: usize) -> Self {
        InvolutiveWord {
            n,
            letters: Vec::new(),
        }
    }

    pub fn generator(i: u32, n: usize) -> Result<Self> {
        Self::k_reduce(&[i], n)
    }

    /// Cancels adjacent equal letters until none remain.
    pub fn k_reduce(raw: &[u32], n: usize) -> Result<Self> {
        let mut letters = Vec::with_capacity(raw.len());
        for &x in raw {
            if x == 0 || x as usize > n {
                return Err(Error::IndexOutOfRange {
                    index: x as usize,
                    bound: n,
                });
            }
            push_involutive(&mut letters, x);
        }
        Ok(InvolutiveWord { n, letters })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[u32] {
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

    fn same_rank(&self, other: &InvolutiveWord) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &InvolutiveWord) -> Result<InvolutiveWord> {
        self.same_rank(other)?;
        Ok(self.mul_trusted(other))
    }

    pub(crate) fn mul_trusted(&self, other: &InvolutiveWord) -> InvolutiveWord {
        let mut letters = self.letters.clone();
        for &x in &other.letters {
            push_involutive(&mut letters, x);
        }
        InvolutiveWord { n: self.n, letters }
    }

    pub fn inverse(&self) -> InvolutiveWord {
        InvolutiveWord {
            n: self.n,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn pow(&self, k: i64) -> InvolutiveWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = InvolutiveWord::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            out = out.mul_trusted(&base);
        }
        out
    }

    /// `c · self · c⁻¹`
    pub fn conjugate_by(&self, c: &InvolutiveWord) -> Result<InvolutiveWord> {
        self.same_rank(c)?;
        Ok(c.mul_trusted(self).mul_trusted(&c.inverse()))
    }

    /// Parity of the reduced length.
    pub fn kappa(&self) -> u8 {
        (self.letters.len() % 2) as u8
    }

    /// `self = conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (InvolutiveWord, InvolutiveWord) {
        let l = &self.letters;
        let mut i = 0;
        while 2 * i + 1 < l.len() && l[i] == l[l.len() - 1 - i] {
            i += 1;
        }
        (
            InvolutiveWord {
                n: self.n,
                letters: l[..i].to_vec(),
            },
            InvolutiveWord {
                n: self.n,
                letters: l[i..l.len() - i].to_vec(),
            },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.letters.len() < 2 || self.letters[0] != *self.letters.last().unwrap()
    }

    /// Returns `c` with `c · self · c⁻¹ = other`.
    pub fn k_conjugate(&self, other: &InvolutiveWord) -> Option<InvolutiveWord> {
        if self.n != other.n {
            return None;
        }
        let (a1, core1) = self.cyclic_reduce();
        let (a2, core2) = other.cyclic_reduce();
        let shift = rotation_matching(&core2.letters, &core1.letters)?;
        let prefix = InvolutiveWord {
            n: self.n,
            letters: core2.letters[..shift].to_vec(),
        };
        Some(a2.mul_trusted(&prefix).mul_trusted(&a1.inverse()))
    }

    pub fn is_conjugate(&self, other: &InvolutiveWord) -> bool {
        self.k_conjugate(other).is_some()
    }

    /// Rewrites an even-length word in the basis `g_i = x_i x_{i+1}`.
    pub fn express_in_g(&self) -> Option<FreeWord> {
        if self.kappa() != 0 {
            return None;
        }
        let mut letters = Vec::new();
        for pair in self.letters.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a < b {
                letters.extend((a..b).map(|i| Letter::new(GenSym::g(i), 1)));
            } else {
                letters.extend((b..a).rev().map(|i| Letter::new(GenSym::g(i), -1)));
            }
        }
        Some(FreeWord::reduce_trusted(letters))
    }

    /// Substitutes `x_i` by `images[i-1]`. The images should be involutions
    /// for the result to be a homomorphism.
    pub fn substitute(&self, images: &[InvolutiveWord]) -> InvolutiveWord {
        let n = images.first().map_or(self.n, |w| w.n);
        let mut letters = Vec::with_capacity(self.len());
        for &x in &self.letters {
            for &y in &images[x as usize - 1].letters {
                push_involutive(&mut letters, y);
            }
        }
        InvolutiveWord { n, letters }
    }

    /// Maximal runs of letters lying in a single block of `p`.
    pub fn syllable_decompose(&self, p: &FactorPartition) -> Vec<(usize, InvolutiveWord)> {
        let mut out: Vec<(usize, InvolutiveWord)> = Vec::new();
        for &x in &self.letters {
            let block = p.block_of(x);
            match out.last_mut() {
                Some((b, w)) if *b == block => w.letters.push(x),
                _ => out.push((
                    block,
                    InvolutiveWord {
                        n: self.n,
                        letters: vec![x],
                    },
                )),
            }
        }
        out
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut raw = Vec::new();
        for tok in tokenize(text)? {
            if tok.name != "x" {
                return Err(token_error(
                    &tok,
                    format!("expected x_i, found '{}'", tok.name),
                ));
            }
            let i = tok.index.unwrap_or(1);
            if i as usize > n {
                return Err(token_error(&tok, format!("index {i} exceeds n = {n}")));
            }
            for _ in 0..tok.exponent.rem_euclid(2) {
                raw.push(i);
            }
        }
        Self::k_reduce(&raw, n)
    }
}

impl fmt::Display for InvolutiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|x| format!("x{x}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `δ = x1 x2 … xn`
pub fn delta_word(n: usize) -> InvolutiveWord {
    InvolutiveWord {
        n,
        letters: (1..=n as u32).collect(),
    }
}

/// `δ(i, j) = x_i x_{i+1} … x_j` for `1 ≤ i < j ≤ n`.
pub fn delta_range(i: usize, j: usize, n: usize) -> Result<InvolutiveWord> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::InvalidRange { i, j, n });
    }
    Ok(InvolutiveWord {
        n,
        letters: (i as u32..=j as u32).collect(),
    })
}

/// Like [`delta_range`] but allows `i == j`, giving the single letter `x_i`.
pub(crate) fn delta_block(i: usize, j: usize, n: usize) -> InvolutiveWord {
    debug_assert!(1 <= i && i <= j && j <= n);
    InvolutiveWord {
        n,
        letters: (i as u32..=j as u32).collect(),
    }
}

fn embed(w: &FreeWord, n: usize, family: Family) -> Result<InvolutiveWord> {
    let mut letters = Vec::with_capacity(2 * w.len());
    for l in w.letters() {
        if l.gen.family != family {
            return Err(Error::FiberMismatch {
                expected: if family == Family::V {
                    "v-words"
                } else {
                    "g-words"
                },
            });
        }
        let i = l.gen.index;
        if i as usize >= n {
            return Err(Error::IndexOutOfRange {
                index: i as usize,
                bound: n - 1,
            });
        }
        let (a, b) = if family == Family::V {
            (1, i + 1)
        } else {
            (i, i + 1)
        };
        let (first, second) = if l.sign == 1 { (a, b) } else { (b, a) };
        push_involutive(&mut letters, first);
        push_involutive(&mut letters, second);
    }
    Ok(InvolutiveWord { n, letters })
}

/// `v_i ↦ x1 x_{i+1}`
pub fn embed_v(w: &FreeWord, n: usize) -> Result<InvolutiveWord> {
    embed(w, n, Family::V)
}

/// `g_i ↦ x_i x_{i+1}`
pub fn embed_g(w: &FreeWord, n: usize) -> Result<InvolutiveWord> {
    embed(w, n, Family::G)
}

/// `v_i = g1 g2 … g_i`
pub fn v_to_g(w: &FreeWord) -> Result<FreeWord> {
    w.substitute(|s| {
        (s.family == Family::V).then(|| FreeWord::from_signed(Family::G, &prefix(s.index)))
    })
}

/// `g1 = v1`, `g_i = v_{i-1}⁻¹ v_i`
pub fn g_to_v(w: &FreeWord) -> Result<FreeWord> {
    w.substitute(|s| {
        (s.family == Family::G).then(|| {
            if s.index == 1 {
                FreeWord::generator(GenSym::v(1))
            } else {
                FreeWord::from_signed(Family::V, &[(s.index - 1, -1), (s.index, 1)])
            }
        })
    })
}

fn prefix(i: u32) -> Vec<(u32, i8)> {
    (1..=i).map(|j| (j, 1)).collect()
}

/// Partition of `{1..n}` into consecutive intervals, numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorPartition {
    n: usize,
    /// Inclusive `(start, end)` per block.
    blocks: Vec<(usize, usize)>,
}

impl FactorPartition {
    /// Blocks given by the cut points: `{1..i1}, {i1+1..i2}, …, {ik+1..n}`.
    pub fn from_cuts(n: usize, cuts: &[usize]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(cuts.len() + 1);
        let mut start = 1;
        for &c in cuts {
            if c < start || c >= n {
                return Err(Error::InvalidRange { i: start, j: c, n });
            }
            blocks.push((start, c));
            start = c + 1;
        }
        blocks.push((start, n));
        Ok(FactorPartition { n, blocks })
    }

    pub fn from_blocks(n: usize, blocks: &[(usize, usize)]) -> Result<Self> {
        let mut expected = 1;
        for &(a, b) in blocks {
            if a != expected || b < a || b > n {
                return Err(Error::InvalidRange { i: a, j: b, n });
            }
            expected = b + 1;
        }
        if expected != n + 1 {
            return Err(Error::InvalidRange {
                i: expected,
                j: n,
                n,
            });
        }
        Ok(FactorPartition {
            n,
            blocks: blocks.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn block_of(&self, x: u32) -> usize {
        let x = x as usize;
        self.blocks
            .iter()
            .position(|&(a, b)| a <= x && x <= b)
            .map(|p| p + 1)
            .expect("letter outside the partition")
    }
}

/// Order of a cyclic free factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

/// Reduced word in a free product of cyclic groups.
///
/// Syllables are `(factor, exponent)` with factors numbered from 1;
/// finite-order exponents are kept in `1..m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeProductWord {
    orders: Vec<Order>,
    syllables: Vec<(usize, i64)>,
}

impl FreeProductWord {
    pub fn identity(orders: &[Order]) -> Self {
        FreeProductWord {
            orders: orders.to_vec(),
            syllables: Vec::new(),
        }
    }

    pub fn syllable(factor: usize, exponent: i64, orders: &[Order]) -> Result<Self> {
        Self::fp_reduce(&[(factor, exponent)], orders)
    }

    /// Merges adjacent syllables of the same factor and reduces exponents.
    pub fn fp_reduce(raw: &[(usize, i64)], orders: &[Order]) -> Result<Self> {
        let mut w = FreeProductWord::identity(orders);
        for &(factor, exponent) in raw {
            if factor == 0 || factor > orders.len() || exponent == 0 {
                return Err(Error::IllegalExponent { factor, exponent });
            }
            w.push(factor, exponent);
        }
        Ok(w)
    }

    fn normalize(&self, factor: usize, exponent: i64) -> i64 {
        match self.orders[factor - 1] {
            Order::Finite(m) => exponent.rem_euclid(m as i64),
            Order::Infinite => exponent,
        }
    }

    fn push(&mut self, factor: usize, exponent: i64) {
        let e = self.normalize(factor, exponent);
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((f, x)) if *f == factor => {
                let merged = match self.orders[factor - 1] {
                    Order::Finite(m) => (*x + e).rem_euclid(m as i64),
                    Order::Infinite => *x + e,
                };
                if merged == 0 {
                    self.syllables.pop();
                } else {
                    *x = merged;
                }
            }
            _ => self.syllables.push((factor, e)),
        }
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn mul(&self, other: &FreeProductWord) -> Result<FreeProductWord> {
        if self.orders != other.orders {
            return Err(Error::Unsupported(
                "free-product words over different factor orders".into(),
            ));
        }
        Ok(self.mul_trusted(other))
    }

    pub(crate) fn mul_trusted(&self, other: &FreeProductWord) -> FreeProductWord {
        let mut out = self.clone();
        for &(f, e) in &other.syllables {
            out.push(f, e);
        }
        out
    }

    pub fn inverse(&self) -> FreeProductWord {
        let mut out = FreeProductWord::identity(&self.orders);
        for &(f, e) in self.syllables.iter().rev() {
            out.push(f, -e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> FreeProductWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeProductWord::identity(&self.orders);
        for _ in 0..k.unsigned_abs() {
            out = out.mul_trusted(&base);
        }
        out
    }

    /// `c · self · c⁻¹`
    pub fn conjugate_by(&self, c: &FreeProductWord) -> FreeProductWord {
        c.mul_trusted(self).mul_trusted(&c.inverse())
    }

    /// `self = conjugator · core · conjugator⁻¹` where `core` has at most one
    /// syllable or begins and ends in different factors.
    pub fn cyclic_reduce(&self) -> (FreeProductWord, FreeProductWord) {
        let mut conj = FreeProductWord::identity(&self.orders);
        let mut core = self.clone();
        while core.syllables.len() >= 2 {
            let (f0, e0) = core.syllables[0];
            let (f1, _) = *core.syllables.last().unwrap();
            if f0 != f1 {
                break;
            }
            let first = FreeProductWord {
                orders: self.orders.clone(),
                syllables: vec![(f0, e0)],
            };
            conj = conj.mul_trusted(&first);
            core = first.inverse().mul_trusted(&core).mul_trusted(&first);
        }
        (conj, core)
    }

    /// Returns `c` with `c · self · c⁻¹ = other`.
    pub fn fp_conjugate(&self, other: &FreeProductWord) -> Option<FreeProductWord> {
        if self.orders != other.orders {
            return None;
        }
        let (a1, core1) = self.cyclic_reduce();
        let (a2, core2) = other.cyclic_reduce();
        let shift = rotation_matching(&core2.syllables, &core1.syllables)?;
        let prefix = FreeProductWord {
            orders: self.orders.clone(),
            syllables: core2.syllables[..shift].to_vec(),
        };
        Some(a2.mul_trusted(&prefix).mul_trusted(&a1.inverse()))
    }

    /// The exponent `e` with `self = factor^e`, if `self` lies in that factor.
    pub fn factor_power(&self, factor: usize) -> Option<i64> {
        match self.syllables.as_slice() {
            [] => Some(0),
            [(f, e)] if *f == factor => Some(*e),
            _ => None,
        }
    }

    /// Applies the endomorphism sending factor generator `i` to `images[i-1]`.
    pub fn substitute(&self, images: &[FreeProductWord]) -> FreeProductWord {
        let orders = images
            .first()
            .map(|w| w.orders.clone())
            .unwrap_or_else(|| self.orders.clone());
        let mut out = FreeProductWord::identity(&orders);
        for &(f, e) in &self.syllables {
            out = out.mul_trusted(&images[f - 1].pow(e));
        }
        out
    }

    /// Parses syllables such as `"u v^2 u"`; `names[i]` names factor `i+1`.
    pub fn parse(text: &str, names: &[&str], orders: &[Order]) -> Result<Self> {
        let mut raw = Vec::new();
        for tok in tokenize(text)? {
            if tok.index.is_some() {
                return Err(token_error(&tok, "free-product letters take no index"));
            }
            let factor = names
                .iter()
                .position(|n| *n == tok.name)
                .ok_or_else(|| token_error(&tok, format!("unknown factor '{}'", tok.name)))?;
            if tok.exponent != 0 {
                raw.push((factor + 1, tok.exponent));
            }
        }
        Self::fp_reduce(&raw, orders)
    }

    pub fn format_with(&self, names: &[&str]) -> String {
        if self.syllables.is_empty() {
            return "e".into();
        }
        self.syllables
            .iter()
            .map(|&(f, e)| with_sign(names[f - 1].to_string(), e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.orders.len())
            .map(|i| match i {
                1 => "u".to_string(),
                2 => "v".to_string(),
                _ => format!("f{i}"),
            })
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.format_with(&refs))
    }
}
