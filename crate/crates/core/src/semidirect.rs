//! A(Bₙ) = Fₙ ⋊ Bₙ, A(Dₙ) = Fₙ₋₁ ⋊ Bₙ and K ⋊ Bₙ in semidirect coordinates.
//!
//! An element is a pair `(w, γ)` standing for the product `w·γ`, so that
//! `(w1, γ1)(w2, γ2) = (w1 · ρ(γ1)(w2), γ1 γ2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braids::{zeta, BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::free_words::{Family, FreeWord, GenSym, Letter};
use crate::involutive_products::{delta_word, embed_g, g_to_v, InvolutiveWord};
use crate::representations::{braid_equal, FiberWord, RepKind, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlavorTag {
    ArtinB,
    ArtinD,
    KSemidirect,
}

impl FlavorTag {
    pub fn name(self) -> &'static str {
        match self {
            FlavorTag::ArtinB => "B",
            FlavorTag::ArtinD => "D",
            FlavorTag::KSemidirect => "K",
        }
    }
}

impl FromStr for FlavorTag {
    type Err = Error;

    /// Accepts `B`, `D`, `K` in either case.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "B" => Ok(FlavorTag::ArtinB),
            "D" => Ok(FlavorTag::ArtinD),
            "K" => Ok(FlavorTag::KSemidirect),
            _ => Err(Error::Unsupported(format!("unknown flavor '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupFlavor {
    pub tag: FlavorTag,
    pub n: usize,
}

impl GroupFlavor {
    pub fn new(tag: FlavorTag, n: usize) -> Result<Self> {
        let min = match tag {
            FlavorTag::ArtinB | FlavorTag::KSemidirect => 3,
            FlavorTag::ArtinD => 4,
        };
        if n < min {
            return Err(Error::RankTooSmall { n, min });
        }
        Ok(GroupFlavor { tag, n })
    }

    pub fn artin_b(n: usize) -> Result<Self> {
        Self::new(FlavorTag::ArtinB, n)
    }

    pub fn artin_d(n: usize) -> Result<Self> {
        Self::new(FlavorTag::ArtinD, n)
    }

    pub fn k_semidirect(n: usize) -> Result<Self> {
        Self::new(FlavorTag::KSemidirect, n)
    }

    pub fn rep_kind(&self) -> RepKind {
        match self.tag {
            FlavorTag::ArtinB => RepKind::RhoB,
            FlavorTag::ArtinD => RepKind::RhoDg,
            FlavorTag::KSemidirect => RepKind::RhoPlus,
        }
    }

    pub fn representation(&self) -> Representation {
        Representation::new(self.rep_kind(), self.n).unwrap()
    }

    /// Family of the presentation generators: `β_i` for B, `δ_i` for D.
    fn presentation_family(&self) -> Result<Family> {
        match self.tag {
            FlavorTag::ArtinB => Ok(Family::Beta),
            FlavorTag::ArtinD => Ok(Family::Delta),
            FlavorTag::KSemidirect => Err(self.unsupported("presentation")),
        }
    }

    fn unsupported(&self, op: &'static str) -> Error {
        Error::UnsupportedFlavor {
            op,
            flavor: self.to_string(),
        }
    }
}

impl fmt::Display for GroupFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            FlavorTag::ArtinB => write!(f, "A(B{})", self.n),
            FlavorTag::ArtinD => write!(f, "A(D{})", self.n),
            FlavorTag::KSemidirect => write!(f, "K{}⋊B{}", self.n, self.n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemidirectElement {
    pub flavor: GroupFlavor,
    pub fiber: FiberWord,
    pub braid: BraidWord,
}

impl SemidirectElement {
    pub fn new(flavor: GroupFlavor, fiber: FiberWord, braid: BraidWord) -> Result<Self> {
        if braid.strands() != flavor.n {
            return Err(Error::StrandMismatch {
                expected: flavor.n,
                found: braid.strands(),
            });
        }
        let fiber = normalize_fiber(flavor, fiber)?;
        Ok(SemidirectElement {
            flavor,
            fiber,
            braid,
        })
    }

    pub fn identity(flavor: GroupFlavor) -> Self {
        SemidirectElement {
            flavor,
            fiber: flavor.representation().fiber_identity(),
            braid: BraidWord::identity(flavor.n),
        }
    }

    /// `(w, e)`
    pub fn from_fiber(flavor: GroupFlavor, fiber: FiberWord) -> Result<Self> {
        Self::new(flavor, fiber, BraidWord::identity(flavor.n))
    }

    /// Parses `"(g1 g2 | a1 a2)"`. v-words are accepted for A(Dₙ).
    pub fn parse(text: &str, flavor: GroupFlavor) -> Result<Self> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or(Error::Parse {
                column: 1,
                message: "expected '(fiber | braid)'".into(),
            })?;
        let (fiber_text, braid_text) = inner.split_once('|').ok_or(Error::Parse {
            column: 1,
            message: "missing '|' between fiber and braid".into(),
        })?;
        let fiber = match flavor.tag {
            FlavorTag::KSemidirect => {
                FiberWord::Involutive(InvolutiveWord::parse(fiber_text, flavor.n)?)
            }
            _ => FiberWord::Free(fiber_text.parse()?),
        };
        let braid = BraidWord::parse(braid_text, flavor.n)?;
        Self::new(flavor, fiber, braid)
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.fiber, self.braid)
    }
}

/// Checks the fiber family, converting v-words to the g-basis for A(Dₙ).
fn normalize_fiber(flavor: GroupFlavor, fiber: FiberWord) -> Result<FiberWord> {
    let fiber = match (flavor.tag, fiber) {
        (FlavorTag::ArtinD, FiberWord::Free(w))
            if w.letters().iter().any(|l| l.gen.family == Family::V) =>
        {
            FiberWord::Free(crate::involutive_products::v_to_g(&w)?)
        }
        (_, f) => f,
    };
    let rep = flavor.representation();
    // routes through the same family and index checks as the action itself
    rep.apply(&BraidWord::identity(flavor.n), &fiber)?;
    Ok(fiber)
}

fn same_flavor(e1: &SemidirectElement, e2: &SemidirectElement) -> Result<()> {
    if e1.flavor != e2.flavor {
        return Err(Error::FlavorMismatch);
    }
    Ok(())
}

fn act(rep: &Representation, b: &BraidWord, w: &FiberWord) -> FiberWord {
    rep.apply(b, w).expect("fiber validated on construction")
}

/// `(w1, γ1)(w2, γ2) = (w1 · ρ(γ1)(w2), γ1 γ2)`
pub fn sd_multiply(e1: &SemidirectElement, e2: &SemidirectElement) -> Result<SemidirectElement> {
    same_flavor(e1, e2)?;
    let rep = e1.flavor.representation();
    Ok(multiply_with(&rep, e1, e2))
}

fn multiply_with(
    rep: &Representation,
    e1: &SemidirectElement,
    e2: &SemidirectElement,
) -> SemidirectElement {
    let moved = act(rep, &e1.braid, &e2.fiber);
    SemidirectElement {
        flavor: e1.flavor,
        fiber: e1.fiber.mul(&moved).expect("fibers share a family"),
        braid: e1.braid.mul_trusted(&e2.braid),
    }
}

/// Product of a sequence of elements of one flavor.
pub fn sd_product(
    flavor: GroupFlavor,
    elements: &[SemidirectElement],
) -> Result<SemidirectElement> {
    let rep = flavor.representation();
    let mut acc = SemidirectElement::identity(flavor);
    for e in elements {
        if e.flavor != flavor {
            return Err(Error::FlavorMismatch);
        }
        acc = multiply_with(&rep, &acc, e);
    }
    Ok(acc)
}

/// `(w, γ)⁻¹ = (ρ(γ⁻¹)(w⁻¹), γ⁻¹)`
pub fn sd_invert(e: &SemidirectElement) -> SemidirectElement {
    let rep = e.flavor.representation();
    let inv = e.braid.inverse();
    SemidirectElement {
        flavor: e.flavor,
        fiber: act(&rep, &inv, &e.fiber.inverse()),
        braid: inv,
    }
}

/// Fibers compared as reduced words, braids through the faithful action.
pub fn sd_equal(e1: &SemidirectElement, e2: &SemidirectElement) -> Result<bool> {
    same_flavor(e1, e2)?;
    Ok(e1.fiber == e2.fiber && braid_equal(&e1.braid, &e2.braid))
}

/// `g · e · g⁻¹`
pub fn sd_conjugate(e: &SemidirectElement, g: &SemidirectElement) -> Result<SemidirectElement> {
    sd_product(e.flavor, &[g.clone(), e.clone(), sd_invert(g)])
}

pub fn sd_commute(e1: &SemidirectElement, e2: &SemidirectElement) -> Result<bool> {
    sd_equal(&sd_multiply(e1, e2)?, &sd_multiply(e2, e1)?)
}

/// Projection onto Bₙ.
pub fn pi(e: &SemidirectElement) -> BraidWord {
    e.braid.clone()
}

/// `b ↦ (e, b)`
pub fn section(b: &BraidWord, flavor: GroupFlavor) -> Result<SemidirectElement> {
    SemidirectElement::new(flavor, flavor.representation().fiber_identity(), b.clone())
}

fn presentation_generator(flavor: GroupFlavor, i: u32) -> Result<SemidirectElement> {
    let n = flavor.n;
    if i == 0 || i as usize > n {
        return Err(Error::IndexOutOfRange {
            index: i as usize,
            bound: n,
        });
    }
    let alpha = |j: u32| BraidWord::generator(n, j, 1).unwrap();
    let (fiber, braid) = match (flavor.tag, i) {
        (FlavorTag::ArtinB, 1) => (GenSym::u(1), BraidWord::identity(n)),
        (FlavorTag::ArtinD, 1) => (GenSym::g(1), alpha(1)),
        (FlavorTag::ArtinB, _) | (FlavorTag::ArtinD, _) => {
            return SemidirectElement::new(
                flavor,
                FiberWord::Free(FreeWord::identity()),
                alpha(i - 1),
            )
        }
        (FlavorTag::KSemidirect, _) => return Err(flavor.unsupported("phi")),
    };
    SemidirectElement::new(flavor, FiberWord::Free(FreeWord::generator(fiber)), braid)
}

/// Presentation generators `β_i ↦ φ(β_i)` (A(Bₙ)) or `δ_i ↦ φ(δ_i)` (A(Dₙ)).
pub fn phi(word: &FreeWord, flavor: GroupFlavor) -> Result<SemidirectElement> {
    let family = flavor.presentation_family()?;
    let gens: Vec<SemidirectElement> = (1..=flavor.n as u32)
        .map(|i| presentation_generator(flavor, i))
        .collect::<Result<_>>()?;
    let inverses: Vec<SemidirectElement> = gens.iter().map(sd_invert).collect();
    let rep = flavor.representation();
    let mut acc = SemidirectElement::identity(flavor);
    for l in word.letters() {
        if l.gen.family != family {
            return Err(Error::FiberMismatch {
                expected: if family == Family::Beta {
                    "b_i presentation words"
                } else {
                    "d_i presentation words"
                },
            });
        }
        let i = l.gen.index as usize;
        if i > flavor.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: flavor.n,
            });
        }
        let g = if l.sign > 0 {
            &gens[i - 1]
        } else {
            &inverses[i - 1]
        };
        acc = multiply_with(&rep, &acc, g);
    }
    Ok(acc)
}

fn word(family: Family, letters: impl IntoIterator<Item = (u32, i8)>) -> FreeWord {
    FreeWord::reduce_trusted(
        letters
            .into_iter()
            .map(|(i, s)| Letter::new(GenSym::new(family, i), s)),
    )
}

/// `ψ(u_i) = β_i … β_2 β_1 β_2⁻¹ … β_i⁻¹`
fn psi_u(i: u32) -> FreeWord {
    let c = word(Family::Beta, (2..=i).rev().map(|j| (j, 1)));
    c.mul_trusted(&FreeWord::generator(GenSym::new(Family::Beta, 1)))
        .mul_trusted(&c.inverse())
}

/// `ψ(v_i) = δ_{i+1} … δ_3 · δ_1 δ_2⁻¹ · δ_3⁻¹ … δ_{i+1}⁻¹`
fn psi_v(i: u32) -> FreeWord {
    let c = word(Family::Delta, (3..=i + 1).rev().map(|j| (j, 1)));
    c.mul_trusted(&word(Family::Delta, [(1, 1), (2, -1)]))
        .mul_trusted(&c.inverse())
}

/// Rewrites an element as a word in the presentation generators.
pub fn psi(e: &SemidirectElement) -> Result<FreeWord> {
    let family = e.flavor.presentation_family()?;
    let fiber = e.fiber.as_free().expect("A(B)/A(D) fibers are free words");
    let fiber_word = match e.flavor.tag {
        FlavorTag::ArtinB => fiber.substitute(|g| Some(psi_u(g.index)))?,
        _ => g_to_v(fiber)?.substitute(|g| Some(psi_v(g.index)))?,
    };
    let braid_word = word(family, e.braid.letters().iter().map(|&(i, s)| (i + 1, s)));
    Ok(fiber_word.mul_trusted(&braid_word))
}

/// Coxeter matrix of type Bₙ or Dₙ in the numbering used by [`phi`].
pub fn coxeter_matrix(flavor: GroupFlavor) -> Result<Vec<Vec<u32>>> {
    let n = flavor.n;
    let mut m = vec![vec![2u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut set = |a: usize, b: usize, v: u32| {
        m[a - 1][b - 1] = v;
        m[b - 1][a - 1] = v;
    };
    match flavor.tag {
        FlavorTag::ArtinB => {
            set(1, 2, 4);
            for i in 2..n {
                set(i, i + 1, 3);
            }
        }
        FlavorTag::ArtinD => {
            set(1, 3, 3);
            set(2, 3, 3);
            for i in 3..n {
                set(i, i + 1, 3);
            }
        }
        FlavorTag::KSemidirect => return Err(flavor.unsupported("coxeter_matrix")),
    }
    Ok(m)
}

/// `w(a, b : m)`: the alternating word `a b a …` of length `m`.
fn alternating(family: Family, a: u32, b: u32, m: u32) -> FreeWord {
    word(family, (0..m).map(|k| (if k % 2 == 0 { a } else { b }, 1)))
}

/// Defining relations `w(s_i, s_j : m_ij) = w(s_j, s_i : m_ij)` for `i < j`.
pub fn presentation_relations(flavor: GroupFlavor) -> Result<Vec<(FreeWord, FreeWord)>> {
    let family = flavor.presentation_family()?;
    let m = coxeter_matrix(flavor)?;
    let mut out = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &mij) in row.iter().enumerate().skip(i + 1) {
            let (a, b) = (i as u32 + 1, j as u32 + 1);
            out.push((
                alternating(family, a, b, mij),
                alternating(family, b, a, mij),
            ));
        }
    }
    Ok(out)
}

/// Evaluates a presentation word given images of its generators.
pub fn evaluate(
    images: &[SemidirectElement],
    w: &FreeWord,
    flavor: GroupFlavor,
) -> Result<SemidirectElement> {
    let mut factors = Vec::with_capacity(w.len());
    for l in w.letters() {
        let img = images
            .get(l.gen.index as usize - 1)
            .ok_or(Error::MissingImage(l.gen))?;
        factors.push(if l.sign > 0 {
            img.clone()
        } else {
            sd_invert(img)
        });
    }
    sd_product(flavor, &factors)
}

/// True iff both sides of every relation evaluate to equal elements.
pub fn verify_presentation(
    images: &[SemidirectElement],
    relations: &[(FreeWord, FreeWord)],
) -> Result<bool> {
    let Some(first) = images.first() else {
        return Ok(relations.iter().all(|(l, r)| l == r));
    };
    let flavor = first.flavor;
    for (lhs, rhs) in relations {
        let l = evaluate(images, lhs, flavor)?;
        let r = evaluate(images, rhs, flavor)?;
        if !sd_equal(&l, &r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `φ(s_1), …, φ(s_n)` for A(Bₙ), A(Dₙ); `x_1 … x_n, α_1 … α_{n-1}` for K ⋊ Bₙ.
pub fn generators(flavor: GroupFlavor) -> Vec<SemidirectElement> {
    match flavor.tag {
        FlavorTag::KSemidirect => {
            let n = flavor.n;
            let xs = (1..=n as u32).map(|i| {
                SemidirectElement::from_fiber(
                    flavor,
                    FiberWord::Involutive(InvolutiveWord::generator(i, n).unwrap()),
                )
                .unwrap()
            });
            let alphas = (1..n as u32)
                .map(|i| section(&BraidWord::generator(n, i, 1).unwrap(), flavor).unwrap());
            xs.chain(alphas).collect()
        }
        _ => (1..=flavor.n as u32)
            .map(|i| presentation_generator(flavor, i).unwrap())
            .collect(),
    }
}

/// Generator of the centre.
pub fn center_element(flavor: GroupFlavor) -> SemidirectElement {
    let n = flavor.n;
    let z = zeta(n).unwrap();
    let delta = delta_word(n);
    let (fiber, braid) = match flavor.tag {
        FlavorTag::ArtinB => (
            FiberWord::Free(word(Family::U, (1..=n as u32).map(|i| (i, 1)))),
            z,
        ),
        FlavorTag::ArtinD if n.is_multiple_of(2) => {
            (FiberWord::Free(delta.express_in_g().unwrap()), z)
        }
        FlavorTag::ArtinD => (
            FiberWord::Free(delta.pow(2).express_in_g().unwrap()),
            z.pow(2),
        ),
        FlavorTag::KSemidirect => (FiberWord::Involutive(delta), z),
    };
    SemidirectElement::new(flavor, fiber, braid).unwrap()
}

/// Image of K-generator `x_i` under ε_n on K ⋊ Bₙ:
/// `ε(x_1) = x_1` and `ε(x_{i+1}) = ρ⁺(α_i⁻¹)(ε(x_i))`.
fn eps_k_images(n: usize) -> Vec<InvolutiveWord> {
    let rep = Representation::new(RepKind::RhoPlus, n).unwrap();
    let mut out = vec![InvolutiveWord::generator(1, n).unwrap()];
    for i in 1..n as u32 {
        let prev = out.last().unwrap();
        let inv = BraidWord::generator(n, i, -1).unwrap();
        out.push(rep.apply_k(&inv, prev).unwrap());
    }
    out
}

/// ε_n: inverts every standard generator.
pub fn eps_n(e: &SemidirectElement) -> Result<SemidirectElement> {
    match e.flavor.tag {
        FlavorTag::ArtinB | FlavorTag::ArtinD => {
            let w = psi(e)?;
            phi(
                &w.substitute(|g| Some(FreeWord::generator_inv(g)))?,
                e.flavor,
            )
        }
        FlavorTag::KSemidirect => {
            let n = e.flavor.n;
            let k = e.fiber.as_involutive().unwrap();
            let fiber = k.substitute(&eps_k_images(n));
            SemidirectElement::new(
                e.flavor,
                FiberWord::Involutive(fiber),
                e.braid.invert_letters(),
            )
        }
    }
}

/// τ_n: the graph involution swapping `δ_1` and `δ_2`; conjugation by `x_1`
/// on K ⋊ Bₙ.
pub fn tau_n(e: &SemidirectElement) -> Result<SemidirectElement> {
    match e.flavor.tag {
        FlavorTag::ArtinD => {
            let w = psi(e)?;
            let swapped = w.substitute(|g| {
                let j = match g.index {
                    1 => 2,
                    2 => 1,
                    j => j,
                };
                Some(FreeWord::generator(GenSym::new(Family::Delta, j)))
            })?;
            phi(&swapped, e.flavor)
        }
        FlavorTag::KSemidirect => {
            let x1 = SemidirectElement::from_fiber(
                e.flavor,
                FiberWord::Involutive(InvolutiveWord::generator(1, e.flavor.n).unwrap()),
            )?;
            sd_conjugate(e, &x1)
        }
        FlavorTag::ArtinB => Err(e.flavor.unsupported("tau_n")),
    }
}

/// The inclusion A(Dₙ) → K ⋊ Bₙ induced by `g_i ↦ x_i x_{i+1}`.
pub fn embed_d_in_k(e: &SemidirectElement) -> Result<SemidirectElement> {
    if e.flavor.tag != FlavorTag::ArtinD {
        return Err(e.flavor.unsupported("embed_d_in_k"));
    }
    let n = e.flavor.n;
    let fiber = embed_g(e.fiber.as_free().unwrap(), n)?;
    SemidirectElement::new(
        GroupFlavor::k_semidirect(n)?,
        FiberWord::Involutive(fiber),
        e.braid.clone(),
    )
}

/// Element of C₂ⁿ ⋊ Sₙ, acting on ℝⁿ by `e_i ↦ signs[p(i)] e_{p(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub signs: Vec<i8>,
    pub perm: Permutation,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            signs: vec![1; n],
            perm: Permutation::identity(n),
        }
    }

    /// `(s1, p1)(s2, p2) = (s1 · p1(s2), p1 p2)`
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let mut signs = self.signs.clone();
        for (i, &s) in other.signs.iter().enumerate() {
            signs[self.perm.apply(i as u32 + 1) as usize - 1] *= s;
        }
        SignedPermutation {
            signs,
            perm: self.perm.compose(&other.perm),
        }
    }

    /// Lies in W(Dₙ): an even number of sign changes.
    pub fn is_even(&self) -> bool {
        self.signs.iter().filter(|&&s| s < 0).count() % 2 == 0
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: String = self
            .signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        write!(f, "[{signs}] {}", self.perm)
    }
}

/// Image in the Coxeter group W(Bₙ) = C₂ⁿ ⋊ Sₙ.
pub fn coxeter_project(e: &SemidirectElement) -> SignedPermutation {
    let n = e.flavor.n;
    let mut signs = vec![1i8; n];
    let mut flip = |i: u32| signs[i as usize - 1] *= -1;
    match &e.fiber {
        FiberWord::Free(w) if e.flavor.tag == FlavorTag::ArtinB => {
            w.letters().iter().for_each(|l| flip(l.gen.index))
        }
        FiberWord::Free(w) => embed_g(w, n)
            .unwrap()
            .letters()
            .iter()
            .for_each(|&x| flip(x)),
        FiberWord::Involutive(k) => k.letters().iter().for_each(|&x| flip(x)),
    }
    SignedPermutation {
        signs,
        perm: e.braid.perm_image(),
    }
}

/// The word x₀ in Fₙ₋₁ fixed by every braid under ρ_D.
pub fn x0_word(n: usize) -> Result<FreeWord> {
    if n < 4 {
        return Err(Error::RankTooSmall { n, min: 4 });
    }
    let alternating =
        |flip: bool| (1..n as u32).map(move |i| (i, if (i % 2 == 1) != flip { 1 } else { -1 }));
    Ok(if n.is_multiple_of(2) {
        word(Family::V, alternating(false))
    } else {
        word(Family::V, alternating(false).chain(alternating(true)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_words::format_compact;

    fn fb(n: usize) -> GroupFlavor {
        GroupFlavor::artin_b(n).unwrap()
    }

    fn fd(n: usize) -> GroupFlavor {
        GroupFlavor::artin_d(n).unwrap()
    }

    fn el(s: &str, f: GroupFlavor) -> SemidirectElement {
        SemidirectElement::parse(s, f).unwrap()
    }

    fn pw(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_examples() {
        let f = fb(3);
        assert_eq!(
            sd_multiply(&el("(u1 | e)", f), &el("(e | a1)", f)).unwrap(),
            el("(u1 | a1)", f)
        );
        assert_eq!(
            sd_multiply(&el("(e | a1)", f), &el("(u1 | e)", f)).unwrap(),
            el("(u2 | a1)", f)
        );
        assert_eq!(sd_invert(&el("(e | a1)", f)), el("(e | a1^-1)", f));
        assert!(matches!(
            sd_multiply(&el("(u1 | e)", f), &el("(u1 | e)", fb(4))),
            Err(Error::FlavorMismatch)
        ));
    }

    #[test]
    fn inverse_is_two_sided() {
        let f = fb(4);
        let e = el("(u1 u3^-1 | a1 a2^-1 a3)", f);
        let id = SemidirectElement::identity(f);
        assert!(sd_equal(&sd_multiply(&e, &sd_invert(&e)).unwrap(), &id).unwrap());
        assert!(sd_equal(&sd_multiply(&sd_invert(&e), &e).unwrap(), &id).unwrap());
    }

    #[test]
    fn equal_examples() {
        let f = fb(3);
        assert!(sd_equal(&el("(e | a1 a2 a1)", f), &el("(e | a2 a1 a2)", f)).unwrap());
        assert!(!sd_equal(&el("(u1 | e)", f), &el("(u2 | e)", f)).unwrap());
        let c = center_element(f);
        assert!(sd_commute(&c, &el("(u1 | e)", f)).unwrap());
        assert!(sd_commute(&c, &el("(e | a1)", f)).unwrap());
    }

    #[test]
    fn projection_and_section() {
        assert!(pi(&phi(&pw("b1"), fb(3)).unwrap()).is_identity());
        assert_eq!(pi(&phi(&pw("d1"), fd(4)).unwrap()).to_string(), "a1");
        assert_eq!(pi(&phi(&pw("d2"), fd(4)).unwrap()).to_string(), "a1");
        let a1 = BraidWord::parse("a1", 3).unwrap();
        assert_eq!(section(&a1, fb(3)).unwrap(), phi(&pw("b2"), fb(3)).unwrap());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&pw("b1"), fb(3)).unwrap(), el("(u1 | e)", fb(3)));
        let e = phi(&pw("b2 b1 b2^-1"), fb(3)).unwrap();
        assert!(sd_equal(&e, &el("(u2 | e)", fb(3))).unwrap());
        assert_eq!(phi(&pw("d1"), fd(4)).unwrap(), el("(g1 | a1)", fd(4)));
        assert!(phi(&pw("b5"), fb(3)).is_err());
        assert!(phi(&pw("d1"), fb(3)).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(
            format_compact(&psi(&el("(u2 | e)", fb(3))).unwrap()),
            "b2 b1 b2^-1"
        );
        assert_eq!(psi(&el("(g1 | e)", fd(4))).unwrap(), pw("d1 d2^-1"));
        assert_eq!(
            psi(&el("(v2 | e)", fd(4))).unwrap(),
            pw("d3 d1 d2^-1 d3^-1")
        );
        let v2 = phi(&pw("d3 d1 d2^-1 d3^-1"), fd(4)).unwrap();
        assert!(sd_equal(&v2, &el("(v2 | e)", fd(4))).unwrap());
    }

    #[test]
    fn presentation_examples() {
        for f in [fb(3), fd(4)] {
            let rel = presentation_relations(f).unwrap();
            assert!(verify_presentation(&generators(f), &rel).unwrap(), "{f}");
        }
        let f = fb(3);
        let mut bad = generators(f);
        bad[0] = el("(u2 | e)", f);
        assert!(!verify_presentation(&bad, &presentation_relations(f).unwrap()).unwrap());
    }

    #[test]
    fn center_examples() {
        let c = center_element(fb(3));
        assert_eq!(c.to_string(), "(u1 u2 u3 | a1 a2 a1 a2 a1 a2)");
        let c4 = center_element(fd(4));
        assert_eq!(c4.fiber.to_string(), "g1 g3");
        let c5 = center_element(fd(5));
        assert_eq!(c5.braid.len(), 40);
        for f in [fb(3), fd(4), fd(5), GroupFlavor::k_semidirect(3).unwrap()] {
            let c = center_element(f);
            for g in generators(f) {
                assert!(sd_commute(&c, &g).unwrap(), "{f} {g}");
            }
        }
    }

    #[test]
    fn special_automorphism_examples() {
        let f = fb(3);
        assert_eq!(
            eps_n(&phi(&pw("b1"), f).unwrap()).unwrap(),
            phi(&pw("b1^-1"), f).unwrap()
        );
        let d = fd(4);
        assert!(sd_equal(
            &tau_n(&phi(&pw("d1"), d).unwrap()).unwrap(),
            &phi(&pw("d2"), d).unwrap()
        )
        .unwrap());
        assert!(sd_equal(
            &tau_n(&phi(&pw("d3"), d).unwrap()).unwrap(),
            &phi(&pw("d3"), d).unwrap()
        )
        .unwrap());
        assert!(matches!(
            tau_n(&phi(&pw("b1"), f).unwrap()),
            Err(Error::UnsupportedFlavor { .. })
        ));
        assert_eq!(eps_k_images(3)[1].to_string(), "x1 x2 x1");
    }

    #[test]
    fn tau_is_conjugation_by_x1() {
        for n in 4..=6 {
            let d = fd(n);
            for g in generators(d) {
                let lhs = embed_d_in_k(&tau_n(&g).unwrap()).unwrap();
                let rhs = tau_n(&embed_d_in_k(&g).unwrap()).unwrap();
                assert!(sd_equal(&lhs, &rhs).unwrap(), "n={n} {g}");
            }
        }
    }

    #[test]
    fn coxeter_examples() {
        let p = coxeter_project(&phi(&pw("b1"), fb(3)).unwrap());
        assert_eq!(p.to_string(), "[-++] (1,2,3)");
        let p = coxeter_project(&phi(&pw("b2"), fb(3)).unwrap());
        assert_eq!(p.to_string(), "[+++] (2,1,3)");
        let p = coxeter_project(&phi(&pw("d1"), fd(4)).unwrap());
        assert_eq!(p.to_string(), "[--++] (2,1,3,4)");
        assert!(p.is_even());
    }

    #[test]
    fn x0_examples() {
        assert_eq!(x0_word(4).unwrap().to_string(), "v1 v2^-1 v3");
        assert_eq!(
            x0_word(5).unwrap().to_string(),
            "v1 v2^-1 v3 v4^-1 v1^-1 v2 v3^-1 v4"
        );
        assert_eq!(
            x0_word(4).unwrap().abelianize(3).unwrap().coords,
            vec![1, -1, 1]
        );
        assert!(x0_word(3).is_err());
    }
}
