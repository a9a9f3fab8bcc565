//! Fixed subgroups of braid actions, conjugacy to powers of δ and u₀, and
//! exhaustive word enumeration.

use serde::{Deserialize, Serialize};

use crate::braids::BraidWord;
use crate::error::{Error, Result};
use crate::free_words::{Family, FreeWord, GenSym, Letter};
use crate::involutive_products::{delta_block, delta_word, FactorPartition, InvolutiveWord};
use crate::representations::{FiberWord, Representation};

/// Cut points `1 ≤ i_1 < … < i_k < n`. The braid generators not cut form T.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutSet {
    n: usize,
    cuts: Vec<usize>,
}

impl CutSet {
    pub fn new(n: usize, cuts: &[usize]) -> Result<Self> {
        let mut prev = 0;
        for &c in cuts {
            if c <= prev || c >= n {
                return Err(Error::InvalidRange { i: prev, j: c, n });
            }
            prev = c;
        }
        Ok(CutSet {
            n,
            cuts: cuts.to_vec(),
        })
    }

    /// Every cut set for `n`, in lexicographic order of the cut lists.
    pub fn all(n: usize) -> Vec<CutSet> {
        (0u32..1 << (n - 1))
            .map(|mask| {
                let cuts: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                CutSet { n, cuts }
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn partition(&self) -> FactorPartition {
        FactorPartition::from_cuts(self.n, &self.cuts).unwrap()
    }

    /// The generators `α_i` with `i` not a cut.
    pub fn t_generators(&self) -> Vec<BraidWord> {
        (1..self.n)
            .filter(|i| !self.cuts.contains(i))
            .map(|i| BraidWord::generator(self.n, i as u32, 1).unwrap())
            .collect()
    }
}

/// Generators `δ(1, i_1), δ(i_1+1, i_2), …, δ(i_k+1, n)` of the T-fixed subgroup.
/// Blocks of size one contribute the single letter `x_i`.
pub fn fixed_gens(c: &CutSet) -> Vec<InvolutiveWord> {
    c.partition()
        .blocks()
        .iter()
        .map(|&(a, b)| delta_block(a, b, c.n))
        .collect()
}

/// Membership in the subgroup generated by [`fixed_gens`]: every syllable with
/// respect to the block partition is a power of its block's δ-range.
pub fn in_fixed_subgroup(w: &InvolutiveWord, c: &CutSet) -> bool {
    let p = c.partition();
    w.syllable_decompose(&p).iter().all(|(block, syl)| {
        let (a, b) = p.blocks()[block - 1];
        is_power_of(syl, &delta_block(a, b, c.n))
    })
}

fn is_power_of(w: &InvolutiveWord, base: &InvolutiveWord) -> bool {
    let l = base.len();
    if !w.len().is_multiple_of(l) {
        return false;
    }
    let k = (w.len() / l) as i64;
    *w == base.pow(k) || *w == base.pow(-k)
}

/// `ρ(b)(w) = w`
pub fn is_fixed(w: &FiberWord, rep: &Representation, b: &BraidWord) -> Result<bool> {
    Ok(rep.apply(b, w)? == *w)
}

/// Fixed by every `α_i`.
pub fn fixed_by_all(w: &FiberWord, rep: &Representation) -> Result<bool> {
    fixed_by_each(w, rep, &standard_generators(rep.strands()))
}

pub fn fixed_by_each(w: &FiberWord, rep: &Representation, braids: &[BraidWord]) -> Result<bool> {
    for b in braids {
        if !is_fixed(w, rep, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn standard_generators(n: usize) -> Vec<BraidWord> {
    (1..n as u32)
        .map(|i| BraidWord::generator(n, i, 1).unwrap())
        .collect()
}

/// The `k` with `w ∼ δᵏ`, if any.
pub fn conj_to_delta_power(w: &InvolutiveWord) -> Option<i64> {
    let (_, core) = w.cyclic_reduce();
    let n = w.rank();
    if core.len() % n != 0 {
        return None;
    }
    let k = (core.len() / n) as i64;
    let delta = delta_word(n);
    [k, -k]
        .into_iter()
        .find(|&e| core.is_conjugate(&delta.pow(e)))
}

/// `u_0 = u_1 u_2 … u_n`
pub fn u0_word(n: usize) -> FreeWord {
    FreeWord::from_signed(
        Family::U,
        &(1..=n as u32).map(|i| (i, 1)).collect::<Vec<_>>(),
    )
}

/// The `k` with `w ∼ u_0ᵏ`, if any.
pub fn conj_to_u0_power(w: &FreeWord, n: usize) -> Option<i64> {
    let (_, core) = w.cyclic_reduce();
    if core.len() % n != 0 {
        return None;
    }
    let k = (core.len() / n) as i64;
    let u0 = u0_word(n);
    [k, -k].into_iter().find(|&e| core.is_conjugate(&u0.pow(e)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjugacyClass {
    /// Conjugate to `u_j^k`, `k ≠ 0`.
    PowerOfUj {
        j: u32,
        k: i64,
    },
    /// Conjugate to `u_0^k`; the identity is reported as `k = 0`.
    PowerOfU0 {
        k: i64,
    },
    Other,
}

/// Classifies `w` up to conjugacy as a power of a free generator, a power of
/// `u_0`, or neither.
pub fn dyer_grossman_classify(w: &FreeWord, n: usize) -> ConjugacyClass {
    let (_, core) = w.cyclic_reduce();
    if let Some(first) = core.letters().first() {
        if core.letters().iter().all(|l| *l == *first) {
            let k = core.len() as i64 * first.sign as i64;
            if n > 1 || first.gen.index != 1 {
                return ConjugacyClass::PowerOfUj {
                    j: first.gen.index,
                    k,
                };
            }
        }
    }
    match conj_to_u0_power(w, n) {
        Some(k) => ConjugacyClass::PowerOfU0 { k },
        None => ConjugacyClass::Other,
    }
}

/// `ρ(b)(w) ∼ w` for every listed braid.
pub fn invariant_up_to_conjugacy(
    w: &FiberWord,
    rep: &Representation,
    braids: &[BraidWord],
) -> Result<bool> {
    for b in braids {
        if !rep.apply(b, w)?.is_conjugate(w) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `α_i(w) ∼ w` for every `i`.
pub fn braid_invariant_classify(w: &FiberWord, rep: &Representation) -> Result<bool> {
    invariant_up_to_conjugacy(w, rep, &standard_generators(rep.strands()))
}

/// What [`enumerate`] lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordKind {
    /// Reduced words in K = ⋆ₙC₂.
    KWords,
    /// Reduced u-words in the free group of rank n.
    FWords,
    /// Freely reduced words in the braid generators of Bₙ.
    BraidWords,
}

/// Enumerated word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EnumeratedWord {
    K(InvolutiveWord),
    F(FreeWord),
    Braid(BraidWord),
}

/// Default cap on the number of enumerated words.
pub const DEFAULT_BUDGET: u128 = 20_000_000;

/// Number of reduced words of length at most `max_len` over an alphabet of
/// `letters` symbols where each symbol has `forbidden` disallowed successors.
fn count_reduced(letters: u128, forbidden: u128, max_len: usize) -> u128 {
    let mut total = 1u128;
    let mut level = letters;
    for _ in 0..max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(letters.saturating_sub(forbidden));
    }
    total
}

pub fn enumeration_size(kind: WordKind, n: usize, max_len: usize) -> u128 {
    match kind {
        WordKind::KWords => count_reduced(n as u128, 1, max_len),
        WordKind::FWords => count_reduced(2 * n as u128, 1, max_len),
        WordKind::BraidWords => count_reduced(2 * (n as u128 - 1), 1, max_len),
    }
}

/// Letter sequences of a reduced alphabet, in length-lexicographic order.
/// `cancels(a, b)` says `b` may not follow `a`.
fn reduced_sequences<F>(alphabet: usize, max_len: usize, cancels: F) -> Vec<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    let mut level_start = 0;
    for _ in 0..max_len {
        let level_end = out.len();
        for idx in level_start..level_end {
            for a in 0..alphabet {
                if out[idx].last().is_some_and(|&p| cancels(p, a)) {
                    continue;
                }
                let mut w = out[idx].clone();
                w.push(a);
                out.push(w);
            }
        }
        level_start = level_end;
    }
    out
}

pub fn enumerate_k_words(n: usize, max_len: usize, budget: u128) -> Result<Vec<InvolutiveWord>> {
    check_budget(WordKind::KWords, n, max_len, budget)?;
    Ok(reduced_sequences(n, max_len, |a, b| a == b)
        .into_iter()
        .map(|s| {
            InvolutiveWord::k_reduce(&s.iter().map(|&a| a as u32 + 1).collect::<Vec<_>>(), n)
                .unwrap()
        })
        .collect())
}

/// Letter order `g1, g1⁻¹, g2, g2⁻¹, …`.
pub fn enumerate_free_words(
    family: Family,
    rank: usize,
    max_len: usize,
    budget: u128,
) -> Result<Vec<FreeWord>> {
    check_budget(WordKind::FWords, rank, max_len, budget)?;
    let letter = |a: usize| {
        Letter::new(
            GenSym::new(family, a as u32 / 2 + 1),
            if a.is_multiple_of(2) { 1 } else { -1 },
        )
    };
    Ok(
        reduced_sequences(2 * rank, max_len, |a, b| a / 2 == b / 2 && a != b)
            .into_iter()
            .map(|s| FreeWord::reduce_trusted(s.into_iter().map(letter)))
            .collect(),
    )
}

/// Letter order `a1, a1⁻¹, a2, a2⁻¹, …`.
pub fn enumerate_braid_words(n: usize, max_len: usize, budget: u128) -> Result<Vec<BraidWord>> {
    check_budget(WordKind::BraidWords, n, max_len, budget)?;
    Ok(
        reduced_sequences(2 * (n - 1), max_len, |a, b| a / 2 == b / 2 && a != b)
            .into_iter()
            .map(|s| {
                let letters: Vec<(u32, i8)> = s
                    .into_iter()
                    .map(|a| (a as u32 / 2 + 1, if a % 2 == 0 { 1 } else { -1 }))
                    .collect();
                BraidWord::new(n, &letters).unwrap()
            })
            .collect(),
    )
}

/// Every reduced word of length at most `max_len`, each exactly once, in
/// length-lexicographic order.
pub fn enumerate(
    kind: WordKind,
    n: usize,
    max_len: usize,
    budget: u128,
) -> Result<Vec<EnumeratedWord>> {
    Ok(match kind {
        WordKind::KWords => enumerate_k_words(n, max_len, budget)?
            .into_iter()
            .map(EnumeratedWord::K)
            .collect(),
        WordKind::FWords => enumerate_free_words(Family::U, n, max_len, budget)?
            .into_iter()
            .map(EnumeratedWord::F)
            .collect(),
        WordKind::BraidWords => enumerate_braid_words(n, max_len, budget)?
            .into_iter()
            .map(EnumeratedWord::Braid)
            .collect(),
    })
}

fn check_budget(kind: WordKind, n: usize, max_len: usize, budget: u128) -> Result<()> {
    let needed = enumeration_size(kind, n, max_len);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::RepKind;

    fn k(s: &str, n: usize) -> InvolutiveWord {
        InvolutiveWord::parse(s, n).unwrap()
    }

    fn fw(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    fn strings(ws: &[InvolutiveWord]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn fixed_gens_examples() {
        assert_eq!(
            strings(&fixed_gens(&CutSet::new(3, &[1]).unwrap())),
            ["x1", "x2 x3"]
        );
        assert_eq!(
            strings(&fixed_gens(&CutSet::new(4, &[]).unwrap())),
            ["x1 x2 x3 x4"]
        );
        assert_eq!(
            strings(&fixed_gens(&CutSet::new(5, &[2]).unwrap())),
            ["x1 x2", "x3 x4 x5"]
        );
        assert!(CutSet::new(3, &[3]).is_err());
        assert_eq!(CutSet::all(3).len(), 4);
    }

    #[test]
    fn is_fixed_examples() {
        let rep4 = Representation::new(RepKind::RhoPlus, 4).unwrap();
        assert!(fixed_by_all(&FiberWord::Involutive(delta_word(4)), &rep4).unwrap());
        let rep3 = Representation::new(RepKind::RhoPlus, 3).unwrap();
        let w = FiberWord::Involutive(k("x1 x2", 3));
        let a1 = BraidWord::parse("a1", 3).unwrap();
        let a2 = BraidWord::parse("a2", 3).unwrap();
        assert!(is_fixed(&w, &rep3, &a1).unwrap());
        assert!(!is_fixed(&w, &rep3, &a2).unwrap());
    }

    #[test]
    fn delta_power_examples() {
        assert_eq!(conj_to_delta_power(&k("x2 x3 x1 x2 x3 x1", 3)), Some(2));
        assert_eq!(conj_to_delta_power(&k("e", 3)), Some(0));
        assert_eq!(conj_to_delta_power(&k("x1 x2", 3)), None);
        assert_eq!(conj_to_delta_power(&k("x3 x2 x1", 3)), Some(-1));
    }

    #[test]
    fn u0_examples() {
        assert_eq!(conj_to_u0_power(&fw("u3 u1 u2"), 3), Some(1));
        assert_eq!(
            dyer_grossman_classify(&fw("u3 u1 u2"), 3),
            ConjugacyClass::PowerOfU0 { k: 1 }
        );
        assert_eq!(
            dyer_grossman_classify(&fw("u2^-1 u1^3 u2"), 3),
            ConjugacyClass::PowerOfUj { j: 1, k: 3 }
        );
        assert_eq!(
            dyer_grossman_classify(&fw("u1 u2^-1"), 3),
            ConjugacyClass::Other
        );
    }

    #[test]
    fn invariance_examples() {
        let rep = Representation::new(RepKind::RhoPlus, 3).unwrap();
        for e in -2..=2 {
            let w = FiberWord::Involutive(delta_word(3).pow(e));
            assert!(braid_invariant_classify(&w, &rep).unwrap());
        }
        let w = FiberWord::Involutive(k("x1 x2", 3));
        assert!(!braid_invariant_classify(&w, &rep).unwrap());

        let rho_d = Representation::new(RepKind::RhoDv, 4).unwrap();
        let x0 = FiberWord::Free(crate::semidirect::x0_word(4).unwrap());
        assert!(braid_invariant_classify(&x0, &rho_d).unwrap());
    }

    #[test]
    fn membership_examples() {
        let c = CutSet::new(4, &[2]).unwrap();
        assert!(in_fixed_subgroup(&k("x1 x2 x3 x4 x2 x1", 4), &c));
        assert!(!in_fixed_subgroup(&k("x1 x3 x4", 4), &c));
        let single = CutSet::new(3, &[1]).unwrap();
        assert!(in_fixed_subgroup(&k("x1 x2 x3 x1", 3), &single));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            strings(&enumerate_k_words(3, 2, DEFAULT_BUDGET).unwrap()),
            ["e", "x1", "x2", "x3", "x1 x2", "x1 x3", "x2 x1", "x2 x3", "x3 x1", "x3 x2"]
        );
        let f: Vec<String> = enumerate_free_words(Family::U, 2, 1, DEFAULT_BUDGET)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(f, ["e", "u1", "u1^-1", "u2", "u2^-1"]);
        let b: Vec<String> = enumerate_braid_words(3, 1, DEFAULT_BUDGET)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(b, ["e", "a1", "a1^-1", "a2", "a2^-1"]);
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_k_words(3, 8, DEFAULT_BUDGET).unwrap().len(), 766);
        assert_eq!(enumeration_size(WordKind::FWords, 3, 6), 23437);
        assert_eq!(enumeration_size(WordKind::BraidWords, 4, 6), 23437);
        assert!(matches!(
            enumerate_k_words(3, 30, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
