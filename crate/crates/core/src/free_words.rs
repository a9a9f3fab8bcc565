//! Freely reduced words in finitely generated free groups.
//!
//! Every constructor reduces, so a [`FreeWord`] is always in its unique
//! freely reduced form and equality of words is equality of group elements.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{token_error, tokenize, with_sign};

/// Symbol families. The set is closed: every generator used anywhere in the
/// crate belongs to one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    U,
    V,
    G,
    X,
    Y,
    A,
    B,
    S,
    T,
    Alpha,
    Beta,
    Delta,
}

/// Families that may share a word. Arithmetic across alphabets is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    U,
    V,
    G,
    XY,
    ST,
    AB,
    /// Rank-2 standard generators and the `b_i` generators of A(B_n).
    AlphaBeta,
    Delta,
}

impl Family {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Family::U => Alphabet::U,
            Family::V => Alphabet::V,
            Family::G => Alphabet::G,
            Family::X | Family::Y => Alphabet::XY,
            Family::S | Family::T => Alphabet::ST,
            Family::A | Family::B => Alphabet::AB,
            Family::Alpha | Family::Beta => Alphabet::AlphaBeta,
            Family::Delta => Alphabet::Delta,
        }
    }

    fn letter(self) -> &'static str {
        match self {
            Family::U => "u",
            Family::V => "v",
            Family::G => "g",
            Family::X => "x",
            Family::Y => "y",
            Family::A => "a",
            Family::B => "b",
            Family::S => "s",
            Family::T => "t",
            Family::Alpha => "a",
            Family::Beta => "b",
            Family::Delta => "d",
        }
    }

    /// Single-generator families print without their index when it is 1.
    fn bare_when_one(self) -> bool {
        matches!(
            self,
            Family::X | Family::Y | Family::A | Family::B | Family::S | Family::T
        )
    }
}

/// A generator symbol: family plus a positive index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenSym {
    pub family: Family,
    pub index: u32,
}

impl GenSym {
    pub fn new(family: Family, index: u32) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        GenSym { family, index }
    }

    pub fn u(i: u32) -> Self {
        Self::new(Family::U, i)
    }
    pub fn v(i: u32) -> Self {
        Self::new(Family::V, i)
    }
    pub fn g(i: u32) -> Self {
        Self::new(Family::G, i)
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.bare_when_one() && self.index == 1 {
            write!(f, "{}", self.family.letter())
        } else {
            write!(f, "{}{}", self.family.letter(), self.index)
        }
    }
}

/// A generator with a sign of +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GenSym,
    pub sign: i8,
}

impl Letter {
    pub fn new(gen: GenSym, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { gen, sign }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign == -other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 1 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^-1", self.gen)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

/// Class of a word in the abelianization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianVector {
    pub coords: Vec<i64>,
}

impl AbelianVector {
    pub fn zero(rank: usize) -> Self {
        AbelianVector {
            coords: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &AbelianVector) -> AbelianVector {
        assert_eq!(self.rank(), other.rank());
        AbelianVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

fn push_reduced(buffer: &mut Vec<Letter>, letter: Letter) {
    if buffer.last().is_some_and(|last| last.cancels(letter)) {
        buffer.pop();
    } else {
        buffer.push(letter);
    }
}

fn check_single_alphabet(letters: &[Letter]) -> Result<()> {
    if let Some(first) = letters.first() {
        let alpha = first.gen.family.alphabet();
        for l in letters {
            let other = l.gen.family.alphabet();
            if other != alpha {
                return Err(Error::MixedAlphabet {
                    left: alpha,
                    right: other,
                });
            }
        }
    }
    Ok(())
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Self> {
        let mut buffer = Vec::new();
        for l in letters {
            push_reduced(&mut buffer, l);
        }
        check_single_alphabet(&buffer)?;
        Ok(FreeWord { letters: buffer })
    }

    /// Reduction without the alphabet check; callers guarantee a single alphabet.
    pub(crate) fn reduce_trusted<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut buffer = Vec::new();
        for l in letters {
            push_reduced(&mut buffer, l);
        }
        FreeWord { letters: buffer }
    }

    pub fn generator(gen: GenSym) -> Self {
        FreeWord {
            letters: vec![Letter::new(gen, 1)],
        }
    }

    pub fn generator_inv(gen: GenSym) -> Self {
        FreeWord {
            letters: vec![Letter::new(gen, -1)],
        }
    }

    /// Builds a word from `(family, index, sign)` triples.
    pub fn from_signed(family: Family, letters: &[(u32, i8)]) -> Self {
        Self::reduce_trusted(
            letters
                .iter()
                .map(|&(i, s)| Letter::new(GenSym::new(family, i), s)),
        )
    }

    pub fn letters(&self) -> &[Letter] {
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

    /// `None` for the identity, which belongs to every alphabet.
    pub fn alphabet(&self) -> Option<Alphabet> {
        self.letters.first().map(|l| l.gen.family.alphabet())
    }

    fn compatible(&self, other: &FreeWord) -> Result<()> {
        match (self.alphabet(), other.alphabet()) {
            (Some(left), Some(right)) if left != right => Err(Error::MixedAlphabet { left, right }),
            _ => Ok(()),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        self.compatible(other)?;
        Ok(self.mul_trusted(other))
    }

    pub(crate) fn mul_trusted(&self, other: &FreeWord) -> FreeWord {
        let mut buffer = self.letters.clone();
        buffer.reserve(other.len());
        for &l in &other.letters {
            push_reduced(&mut buffer, l);
        }
        FreeWord { letters: buffer }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul_trusted(&base);
        }
        out
    }

    /// `c · self · c⁻¹`
    pub fn conjugate_by(&self, c: &FreeWord) -> Result<FreeWord> {
        self.compatible(c)?;
        Ok(c.mul_trusted(self).mul_trusted(&c.inverse()))
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (FreeWord, FreeWord) {
        let l = &self.letters;
        let mut i = 0;
        while 2 * i + 1 < l.len() && l[i].cancels(l[l.len() - 1 - i]) {
            i += 1;
        }
        (
            FreeWord {
                letters: l[..i].to_vec(),
            },
            FreeWord {
                letters: l[i..l.len() - i].to_vec(),
            },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.letters.len() < 2 || !self.letters[0].cancels(*self.letters.last().unwrap())
    }

    /// Returns `c` with `c · self · c⁻¹ = other`, if the two are conjugate.
    ///
    /// The witness is canonical: the smallest rotation of `other`'s core that
    /// matches `self`'s core is used.
    pub fn conjugacy_witness(&self, other: &FreeWord) -> Option<FreeWord> {
        if self.compatible(other).is_err() {
            return None;
        }
        let (a1, core1) = self.cyclic_reduce();
        let (a2, core2) = other.cyclic_reduce();
        let shift = rotation_matching(&core2.letters, &core1.letters)?;
        let prefix = FreeWord {
            letters: core2.letters[..shift].to_vec(),
        };
        Some(a2.mul_trusted(&prefix).mul_trusted(&a1.inverse()))
    }

    pub fn is_conjugate(&self, other: &FreeWord) -> bool {
        self.conjugacy_witness(other).is_some()
    }

    /// Image in ℤ^rank: coordinate i is the signed count of generator i.
    pub fn abelianize(&self, rank: usize) -> Result<AbelianVector> {
        let mut v = AbelianVector::zero(rank);
        let mut family = None;
        for l in &self.letters {
            match family {
                None => family = Some(l.gen.family),
                Some(f) if f != l.gen.family => {
                    return Err(Error::MixedAlphabet {
                        left: f.alphabet(),
                        right: l.gen.family.alphabet(),
                    })
                }
                _ => {}
            }
            let i = l.gen.index as usize;
            if i > rank {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: rank,
                });
            }
            v.coords[i - 1] += l.sign as i64;
        }
        Ok(v)
    }

    /// The integer `k` with `self = base^k`, if any. `base` must be nontrivial.
    pub fn power_of(&self, base: &FreeWord) -> Option<i64> {
        if self.is_identity() {
            return Some(0);
        }
        if base.is_identity() {
            return None;
        }
        let (conj, core) = base.cyclic_reduce();
        let outer = 2 * conj.len();
        if self.len() < outer || !(self.len() - outer).is_multiple_of(core.len()) {
            return None;
        }
        let k = ((self.len() - outer) / core.len()) as i64;
        [k, -k].into_iter().find(|&cand| base.pow(cand) == *self)
    }

    /// Applies the endomorphism given by generator images.
    pub fn substitute<F>(&self, mut image: F) -> Result<FreeWord>
    where
        F: FnMut(GenSym) -> Option<FreeWord>,
    {
        let mut buffer: Vec<Letter> = Vec::with_capacity(self.len());
        for l in &self.letters {
            let img = image(l.gen).ok_or(Error::MissingImage(l.gen))?;
            if l.sign == 1 {
                for &x in &img.letters {
                    push_reduced(&mut buffer, x);
                }
            } else {
                for &x in img.letters.iter().rev() {
                    push_reduced(&mut buffer, x.inverse());
                }
            }
        }
        check_single_alphabet(&buffer)?;
        Ok(FreeWord { letters: buffer })
    }

    /// Substitutes generator `i` by `images[i-1]`, ignoring the family.
    /// Callers guarantee every index is in range.
    pub(crate) fn substitute_indexed(&self, images: &[FreeWord]) -> FreeWord {
        let mut buffer: Vec<Letter> = Vec::with_capacity(self.len());
        for l in &self.letters {
            let img = &images[l.gen.index as usize - 1];
            if l.sign == 1 {
                for &x in &img.letters {
                    push_reduced(&mut buffer, x);
                }
            } else {
                for &x in img.letters.iter().rev() {
                    push_reduced(&mut buffer, x.inverse());
                }
            }
        }
        FreeWord { letters: buffer }
    }

    pub fn apply_endomorphism(&self, images: &BTreeMap<GenSym, FreeWord>) -> Result<FreeWord> {
        self.substitute(|g| images.get(&g).cloned())
    }

    /// Matches `y^k x^ε y^l` over the `{x, y}` alphabet.
    pub fn match_axis_form(&self) -> Option<(i64, i8, i64)> {
        let x = GenSym::new(Family::X, 1);
        let y = GenSym::new(Family::Y, 1);
        let l = &self.letters;
        let mut pos = 0;
        let mut k = 0i64;
        while pos < l.len() && l[pos].gen == y {
            k += l[pos].sign as i64;
            pos += 1;
        }
        if pos >= l.len() || l[pos].gen != x {
            return None;
        }
        let eps = l[pos].sign;
        pos += 1;
        let mut tail = 0i64;
        while pos < l.len() && l[pos].gen == y {
            tail += l[pos].sign as i64;
            pos += 1;
        }
        (pos == l.len()).then_some((k, eps, tail))
    }
}

/// Smallest `j` with `rotate_left(word, j) == target`.
pub(crate) fn rotation_matching<T: PartialEq>(word: &[T], target: &[T]) -> Option<usize> {
    if word.len() != target.len() {
        return None;
    }
    if word.is_empty() {
        return Some(0);
    }
    let n = word.len();
    (0..n).find(|&j| (0..n).all(|i| word[(i + j) % n] == target[i]))
}

/// Evaluates `w(x, xy) · w(y, xy)` for a word `w` over `{s, t}`.
///
/// The second component is true iff the product is trivial.
pub fn lemma_fourth_eval(w: &FreeWord) -> Result<(FreeWord, bool)> {
    if let Some(alpha) = w.alphabet() {
        if alpha != Alphabet::ST {
            return Err(Error::MixedAlphabet {
                left: Alphabet::ST,
                right: alpha,
            });
        }
    }
    let x = FreeWord::generator(GenSym::new(Family::X, 1));
    let y = FreeWord::generator(GenSym::new(Family::Y, 1));
    let xy = x.mul_trusted(&y);
    let first = w.substitute(|g| match g.family {
        Family::S => Some(x.clone()),
        Family::T => Some(xy.clone()),
        _ => None,
    })?;
    let second = w.substitute(|g| match g.family {
        Family::S => Some(y.clone()),
        Family::T => Some(xy.clone()),
        _ => None,
    })?;
    let product = first.mul_trusted(&second);
    let trivial = product.is_identity();
    Ok((product, trivial))
}

fn family_for(name: &str, has_index: bool) -> Option<Family> {
    Some(match (name, has_index) {
        ("u", _) => Family::U,
        ("v", _) => Family::V,
        ("g", _) => Family::G,
        ("x", _) => Family::X,
        ("y", _) => Family::Y,
        ("s", _) => Family::S,
        ("t", _) => Family::T,
        ("a", false) => Family::A,
        ("b", false) => Family::B,
        ("a", true) | ("alpha", _) => Family::Alpha,
        ("b", true) | ("beta", _) => Family::Beta,
        ("d", _) | ("delta", _) => Family::Delta,
        _ => return None,
    })
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Parses `"u1 u2^-1 u1"`. `a`/`b` without index are the rank-2
    /// coordinates, with an index they are `alpha_i`/`beta_i`; `d_i` is `delta_i`.
    fn from_str(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut alphabet: Option<Alphabet> = None;
        for tok in tokenize(text)? {
            let family = family_for(&tok.name, tok.index.is_some())
                .ok_or_else(|| token_error(&tok, format!("unknown symbol '{}'", tok.name)))?;
            match alphabet {
                None => alphabet = Some(family.alphabet()),
                Some(a) if a != family.alphabet() => {
                    return Err(token_error(&tok, "symbols from different families"))
                }
                _ => {}
            }
            let gen = GenSym::new(family, tok.index.unwrap_or(1));
            let sign = if tok.exponent < 0 { -1 } else { 1 };
            for _ in 0..tok.exponent.unsigned_abs() {
                letters.push(Letter::new(gen, sign));
            }
        }
        Ok(FreeWord::reduce_trusted(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Formats a word with exponents collected: `u1^2 u2^-1`.
pub fn format_compact(w: &FreeWord) -> String {
    if w.is_identity() {
        return "e".into();
    }
    let mut parts = Vec::new();
    let mut iter = w.letters().iter().peekable();
    while let Some(&l) = iter.next() {
        let mut count = l.sign as i64;
        while iter.peek().is_some_and(|n| **n == l) {
            iter.next();
            count += l.sign as i64;
        }
        parts.push(with_sign(l.gen.to_string(), count));
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("u1 u1^-1"), FreeWord::identity());
        assert_eq!(w("u1 u2 u2^-1 u3"), w("u1 u3"));
        assert_eq!(w("u2 u2^-1 u1 u2").to_string(), "u1 u2");
    }

    #[test]
    fn multiply_and_invert_examples() {
        assert_eq!(w("u1").mul(&w("u1^-1")).unwrap(), FreeWord::identity());
        assert_eq!(w("u1 u2").inverse().to_string(), "u2^-1 u1^-1");
        assert_eq!(w("u1 u2").mul(&w("u2^-1")).unwrap(), w("u1"));
    }

    #[test]
    fn mixed_families_rejected() {
        assert!(matches!(
            w("u1").mul(&w("v1")),
            Err(Error::MixedAlphabet { .. })
        ));
        assert!("u1 v2".parse::<FreeWord>().is_err());
        // the identity mixes with anything
        assert_eq!(FreeWord::identity().mul(&w("v1")).unwrap(), w("v1"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("u2 u1 u2^-1").cyclic_reduce(), (w("u2"), w("u1")));
        assert_eq!(w("u1 u2").cyclic_reduce(), (w("e"), w("u1 u2")));
        assert_eq!(
            w("u1 u2 u1^-1 u1 u1^-1").cyclic_reduce(),
            (w("u1"), w("u2"))
        );
    }

    #[test]
    fn conjugacy_examples() {
        let c = w("u1 u2").conjugacy_witness(&w("u2 u1")).unwrap();
        assert_eq!(c, w("u2"));
        assert_eq!(w("u1 u2").conjugate_by(&c).unwrap(), w("u2 u1"));
        assert_eq!(w("u1").conjugacy_witness(&w("u2")), None);
        assert_eq!(
            w("u1 u2 u1^-1").conjugacy_witness(&w("u2")),
            Some(w("u1^-1"))
        );
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(
            w("u1 u2^-1 u1").abelianize(3).unwrap().coords,
            vec![2, -1, 0]
        );
        assert_eq!(w("e").abelianize(2).unwrap().coords, vec![0, 0]);
        assert_eq!(w("u1 u2 u3").abelianize(3).unwrap().coords, vec![1, 1, 1]);
        assert!(matches!(
            w("u4").abelianize(3),
            Err(Error::IndexOutOfRange { index: 4, bound: 3 })
        ));
    }

    #[test]
    fn power_of_examples() {
        assert_eq!(w("u1 u2 u1 u2").power_of(&w("u1 u2")), Some(2));
        assert_eq!(w("e").power_of(&w("u1")), Some(0));
        assert_eq!(w("u2 u1").power_of(&w("u1 u2")), None);
        assert_eq!(w("u2^-1 u1^-1").power_of(&w("u1 u2")), Some(-1));
        // non-cyclically-reduced base
        let base = w("u3 u1 u2 u3^-1");
        assert_eq!(base.pow(-3).power_of(&base), Some(-3));
    }

    #[test]
    fn endomorphism_examples() {
        let mut images = BTreeMap::new();
        images.insert(GenSym::u(1), w("u2"));
        images.insert(GenSym::u(2), w("u2^-1 u1 u2"));
        assert_eq!(w("u1 u2").apply_endomorphism(&images).unwrap(), w("u1 u2"));

        let id: BTreeMap<_, _> = [(GenSym::u(1), w("u1"))].into_iter().collect();
        assert_eq!(w("u1").apply_endomorphism(&id).unwrap(), w("u1"));

        let conj: BTreeMap<_, _> = [(GenSym::u(1), w("u1 u2 u1^-1"))].into_iter().collect();
        assert_eq!(w("u1").apply_endomorphism(&conj).unwrap(), w("u1 u2 u1^-1"));
        assert_eq!(
            w("u2").apply_endomorphism(&conj),
            Err(Error::MissingImage(GenSym::u(2)))
        );
    }

    #[test]
    fn axis_form_examples() {
        assert_eq!(w("y y x^-1 y").match_axis_form(), Some((2, -1, 1)));
        assert_eq!(w("x").match_axis_form(), Some((0, 1, 0)));
        assert_eq!(w("x y x").match_axis_form(), None);
        assert_eq!(w("y").match_axis_form(), None);
    }

    #[test]
    fn lemma_fourth_examples() {
        assert_eq!(lemma_fourth_eval(&w("e")).unwrap(), (w("e"), true));
        assert_eq!(lemma_fourth_eval(&w("s")).unwrap(), (w("x y"), false));
        // x·(xy)^-1 · y·(xy)^-1 = x y^-1 x^-1 · y y^-1 x^-1
        assert_eq!(
            lemma_fourth_eval(&w("s t^-1")).unwrap(),
            (w("x y^-1 x^-1 x^-1"), false)
        );
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "e",
            "u1 u2^-1 u1",
            "x y^-1",
            "a b^-1 a",
            "b1 b2^-1",
            "d3 d1 d2^-1",
        ] {
            assert_eq!(w(s).to_string(), s);
        }
        assert_eq!(format_compact(&w("u1 u1 u2^-1 u2^-1 u1")), "u1^2 u2^-2 u1");
        assert_eq!(w("v^3").len(), 3);
    }
}
