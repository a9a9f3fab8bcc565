//! Braid group actions on free groups and on K = ⋆ₙC₂.
//!
//! All actions are left actions: a braid word is applied letter by letter
//! from the right.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braids::BraidWord;
use crate::error::{Error, Result};
use crate::free_words::{Alphabet, Family, FreeWord, GenSym};
use crate::involutive_products::{embed_g, InvolutiveWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepKind {
    /// Action on Fₙ = ⟨u_1 … u_n⟩.
    RhoB,
    /// Action on Fₙ₋₁ in the basis v_i = x_1 x_{i+1}.
    RhoDv,
    /// Action on Fₙ₋₁ in the basis g_i = x_i x_{i+1}.
    RhoDg,
    /// Action on K = ⋆ₙC₂.
    RhoPlus,
}

impl RepKind {
    pub const ALL: [RepKind; 4] = [
        RepKind::RhoB,
        RepKind::RhoDv,
        RepKind::RhoDg,
        RepKind::RhoPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepKind::RhoB => "rhoB",
            RepKind::RhoDv => "rhoDv",
            RepKind::RhoDg => "rhoDg",
            RepKind::RhoPlus => "rhoPlus",
        }
    }

    /// Smallest supported strand count.
    pub fn min_strands(self) -> usize {
        match self {
            RepKind::RhoB | RepKind::RhoPlus => 2,
            RepKind::RhoDv | RepKind::RhoDg => 3,
        }
    }

    fn family(self) -> Option<Family> {
        match self {
            RepKind::RhoB => Some(Family::U),
            RepKind::RhoDv => Some(Family::V),
            RepKind::RhoDg => Some(Family::G),
            RepKind::RhoPlus => None,
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RepKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported(format!("unknown representation '{s}'")))
    }
}

/// An element of the fiber acted on: a free-group word or a K-word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiberWord {
    Free(FreeWord),
    Involutive(InvolutiveWord),
}

impl FiberWord {
    pub fn is_identity(&self) -> bool {
        match self {
            FiberWord::Free(w) => w.is_identity(),
            FiberWord::Involutive(w) => w.is_identity(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            FiberWord::Free(w) => w.len(),
            FiberWord::Involutive(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn inverse(&self) -> FiberWord {
        match self {
            FiberWord::Free(w) => FiberWord::Free(w.inverse()),
            FiberWord::Involutive(w) => FiberWord::Involutive(w.inverse()),
        }
    }

    pub fn mul(&self, other: &FiberWord) -> Result<FiberWord> {
        match (self, other) {
            (FiberWord::Free(a), FiberWord::Free(b)) => Ok(FiberWord::Free(a.mul(b)?)),
            (FiberWord::Involutive(a), FiberWord::Involutive(b)) => {
                Ok(FiberWord::Involutive(a.mul(b)?))
            }
            _ => Err(Error::FiberMismatch {
                expected: "matching fiber types",
            }),
        }
    }

    /// Returns `c` with `c · self · c⁻¹ = other`.
    pub fn conjugacy_witness(&self, other: &FiberWord) -> Option<FiberWord> {
        match (self, other) {
            (FiberWord::Free(a), FiberWord::Free(b)) => a.conjugacy_witness(b).map(FiberWord::Free),
            (FiberWord::Involutive(a), FiberWord::Involutive(b)) => {
                a.k_conjugate(b).map(FiberWord::Involutive)
            }
            _ => None,
        }
    }

    pub fn is_conjugate(&self, other: &FiberWord) -> bool {
        self.conjugacy_witness(other).is_some()
    }

    pub fn as_free(&self) -> Option<&FreeWord> {
        match self {
            FiberWord::Free(w) => Some(w),
            FiberWord::Involutive(_) => None,
        }
    }

    pub fn as_involutive(&self) -> Option<&InvolutiveWord> {
        match self {
            FiberWord::Involutive(w) => Some(w),
            FiberWord::Free(_) => None,
        }
    }
}

impl fmt::Display for FiberWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberWord::Free(w) => w.fmt(f),
            FiberWord::Involutive(w) => w.fmt(f),
        }
    }
}

impl From<FreeWord> for FiberWord {
    fn from(w: FreeWord) -> Self {
        FiberWord::Free(w)
    }
}

impl From<InvolutiveWord> for FiberWord {
    fn from(w: InvolutiveWord) -> Self {
        FiberWord::Involutive(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tables {
    Free {
        forward: Vec<Vec<FreeWord>>,
        backward: Vec<Vec<FreeWord>>,
    },
    Involutive {
        forward: Vec<Vec<InvolutiveWord>>,
        backward: Vec<Vec<InvolutiveWord>>,
    },
}

/// Generator image tables for `α_i` and `α_i⁻¹`, `i = 1 … n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    kind: RepKind,
    n: usize,
    tables: Tables,
}

fn fw(family: Family, letters: &[(u32, i8)]) -> FreeWord {
    FreeWord::from_signed(family, letters)
}

fn rho_b_tables(n: usize) -> (Vec<Vec<FreeWord>>, Vec<Vec<FreeWord>>) {
    let u = |l: &[(u32, i8)]| fw(Family::U, l);
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for i in 1..n as u32 {
        let mut f: Vec<FreeWord> = (1..=n as u32).map(|j| u(&[(j, 1)])).collect();
        let mut b = f.clone();
        let (a, c) = (i as usize - 1, i as usize);
        f[a] = u(&[(i + 1, 1)]);
        f[c] = u(&[(i + 1, -1), (i, 1), (i + 1, 1)]);
        b[a] = u(&[(i, 1), (i + 1, 1), (i, -1)]);
        b[c] = u(&[(i, 1)]);
        forward.push(f);
        backward.push(b);
    }
    (forward, backward)
}

fn rho_dv_tables(n: usize) -> (Vec<Vec<FreeWord>>, Vec<Vec<FreeWord>>) {
    let v = |l: &[(u32, i8)]| fw(Family::V, l);
    let rank = n as u32 - 1;
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for i in 1..n as u32 {
        let mut f: Vec<FreeWord> = (1..=rank).map(|j| v(&[(j, 1)])).collect();
        let mut b = f.clone();
        if i == 1 {
            for j in 2..=rank {
                f[j as usize - 1] = v(&[(1, -1), (j, 1)]);
                b[j as usize - 1] = v(&[(1, 1), (j, 1)]);
            }
        } else {
            let (p, c) = (i as usize - 2, i as usize - 1);
            f[p] = v(&[(i, 1)]);
            f[c] = v(&[(i, 1), (i - 1, -1), (i, 1)]);
            b[c] = v(&[(i - 1, 1)]);
            b[p] = v(&[(i - 1, 1), (i, -1), (i - 1, 1)]);
        }
        forward.push(f);
        backward.push(b);
    }
    (forward, backward)
}

fn rho_dg_tables(n: usize) -> (Vec<Vec<FreeWord>>, Vec<Vec<FreeWord>>) {
    let g = |l: &[(u32, i8)]| fw(Family::G, l);
    let rank = n as u32 - 1;
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for i in 1..n as u32 {
        let mut f: Vec<FreeWord> = (1..=rank).map(|j| g(&[(j, 1)])).collect();
        let mut b = f.clone();
        if i >= 2 {
            f[i as usize - 2] = g(&[(i - 1, 1), (i, 1)]);
            b[i as usize - 2] = g(&[(i - 1, 1), (i, -1)]);
        }
        if i < rank {
            f[i as usize] = g(&[(i, -1), (i + 1, 1)]);
            b[i as usize] = g(&[(i, 1), (i + 1, 1)]);
        }
        forward.push(f);
        backward.push(b);
    }
    (forward, backward)
}

#[allow(clippy::type_complexity)]
fn rho_plus_tables(n: usize) -> (Vec<Vec<InvolutiveWord>>, Vec<Vec<InvolutiveWord>>) {
    let x = |l: &[u32]| InvolutiveWord::k_reduce(l, n).unwrap();
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for i in 1..n as u32 {
        let mut f: Vec<InvolutiveWord> = (1..=n as u32).map(|j| x(&[j])).collect();
        let mut b = f.clone();
        let (a, c) = (i as usize - 1, i as usize);
        f[a] = x(&[i + 1]);
        f[c] = x(&[i + 1, i, i + 1]);
        b[c] = x(&[i]);
        b[a] = x(&[i, i + 1, i]);
        forward.push(f);
        backward.push(b);
    }
    (forward, backward)
}

impl Representation {
    pub fn new(kind: RepKind, n: usize) -> Result<Self> {
        if n < kind.min_strands() {
            return Err(Error::RankTooSmall {
                n,
                min: kind.min_strands(),
            });
        }
        let tables = match kind {
            RepKind::RhoB => {
                let (forward, backward) = rho_b_tables(n);
                Tables::Free { forward, backward }
            }
            RepKind::RhoDv => {
                let (forward, backward) = rho_dv_tables(n);
                Tables::Free { forward, backward }
            }
            RepKind::RhoDg => {
                let (forward, backward) = rho_dg_tables(n);
                Tables::Free { forward, backward }
            }
            RepKind::RhoPlus => {
                let (forward, backward) = rho_plus_tables(n);
                Tables::Involutive { forward, backward }
            }
        };
        Ok(Representation { kind, n, tables })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// Rank of the group acted on.
    pub fn fiber_rank(&self) -> usize {
        match self.kind {
            RepKind::RhoB | RepKind::RhoPlus => self.n,
            RepKind::RhoDv | RepKind::RhoDg => self.n - 1,
        }
    }

    pub fn fiber_generator(&self, j: u32) -> FiberWord {
        match self.kind.family() {
            Some(family) => FiberWord::Free(FreeWord::generator(GenSym::new(family, j))),
            None => FiberWord::Involutive(InvolutiveWord::generator(j, self.n).unwrap()),
        }
    }

    pub fn fiber_generators(&self) -> Vec<FiberWord> {
        (1..=self.fiber_rank() as u32)
            .map(|j| self.fiber_generator(j))
            .collect()
    }

    pub fn fiber_identity(&self) -> FiberWord {
        match self.kind {
            RepKind::RhoPlus => FiberWord::Involutive(InvolutiveWord::identity(self.n)),
            _ => FiberWord::Free(FreeWord::identity()),
        }
    }

    /// Replaces the image of fiber generator `j` under `α_i^sign`.
    pub fn with_image(mut self, i: u32, sign: i8, j: u32, image: FiberWord) -> Result<Self> {
        let (row, col) = (i as usize - 1, j as usize - 1);
        match (&mut self.tables, image) {
            (Tables::Free { forward, backward }, FiberWord::Free(w)) => {
                let t = if sign > 0 { forward } else { backward };
                t[row][col] = w;
            }
            (Tables::Involutive { forward, backward }, FiberWord::Involutive(w)) => {
                let t = if sign > 0 { forward } else { backward };
                t[row][col] = w;
            }
            _ => {
                return Err(Error::FiberMismatch {
                    expected: "the representation's fiber",
                })
            }
        }
        Ok(self)
    }

    pub fn parse_fiber(&self, text: &str) -> Result<FiberWord> {
        let w = match self.kind {
            RepKind::RhoPlus => FiberWord::Involutive(InvolutiveWord::parse(text, self.n)?),
            _ => FiberWord::Free(text.parse()?),
        };
        self.check_fiber(&w)?;
        Ok(w)
    }

    fn check_fiber(&self, w: &FiberWord) -> Result<()> {
        let expected = match self.kind {
            RepKind::RhoB => "u-words",
            RepKind::RhoDv => "v-words",
            RepKind::RhoDg => "g-words",
            RepKind::RhoPlus => "K-words",
        };
        match (self.kind.family(), w) {
            (Some(family), FiberWord::Free(f)) => {
                if let Some(a) = f.alphabet() {
                    if a != family.alphabet() {
                        return Err(Error::FiberMismatch { expected });
                    }
                }
                for l in f.letters() {
                    if l.gen.index as usize > self.fiber_rank() {
                        return Err(Error::IndexOutOfRange {
                            index: l.gen.index as usize,
                            bound: self.fiber_rank(),
                        });
                    }
                }
                Ok(())
            }
            (None, FiberWord::Involutive(k)) if k.rank() == self.n => Ok(()),
            (None, FiberWord::Involutive(k)) => Err(Error::StrandMismatch {
                expected: self.n,
                found: k.rank(),
            }),
            _ => Err(Error::FiberMismatch { expected }),
        }
    }

    fn check_braid(&self, b: &BraidWord) -> Result<()> {
        if b.strands() != self.n {
            return Err(Error::StrandMismatch {
                expected: self.n,
                found: b.strands(),
            });
        }
        Ok(())
    }

    /// `ρ(b)(w)`
    pub fn apply(&self, b: &BraidWord, w: &FiberWord) -> Result<FiberWord> {
        self.check_braid(b)?;
        self.check_fiber(w)?;
        Ok(match w {
            FiberWord::Free(f) => FiberWord::Free(self.apply_free_unchecked(b, f)),
            FiberWord::Involutive(k) => FiberWord::Involutive(self.apply_k_unchecked(b, k)),
        })
    }

    pub fn apply_free(&self, b: &BraidWord, w: &FreeWord) -> Result<FreeWord> {
        match self.apply(b, &FiberWord::Free(w.clone()))? {
            FiberWord::Free(f) => Ok(f),
            FiberWord::Involutive(_) => unreachable!(),
        }
    }

    pub fn apply_k(&self, b: &BraidWord, w: &InvolutiveWord) -> Result<InvolutiveWord> {
        match self.apply(b, &FiberWord::Involutive(w.clone()))? {
            FiberWord::Involutive(k) => Ok(k),
            FiberWord::Free(_) => unreachable!(),
        }
    }

    pub(crate) fn apply_free_unchecked(&self, b: &BraidWord, w: &FreeWord) -> FreeWord {
        let Tables::Free { forward, backward } = &self.tables else {
            panic!("free word given to {}", self.kind)
        };
        let mut out = w.clone();
        for &(i, s) in b.letters().iter().rev() {
            let t = if s > 0 { forward } else { backward };
            out = out.substitute_indexed(&t[i as usize - 1]);
        }
        out
    }

    pub(crate) fn apply_k_unchecked(&self, b: &BraidWord, w: &InvolutiveWord) -> InvolutiveWord {
        let Tables::Involutive { forward, backward } = &self.tables else {
            panic!("K-word given to {}", self.kind)
        };
        let mut out = w.clone();
        for &(i, s) in b.letters().iter().rev() {
            let t = if s > 0 { forward } else { backward };
            out = out.substitute(&t[i as usize - 1]);
        }
        out
    }

    /// Images of all fiber generators under `b`.
    pub fn generator_images(&self, b: &BraidWord) -> Result<Vec<FiberWord>> {
        self.check_braid(b)?;
        Ok(self
            .fiber_generators()
            .iter()
            .map(|g| match g {
                FiberWord::Free(f) => FiberWord::Free(self.apply_free_unchecked(b, f)),
                FiberWord::Involutive(k) => FiberWord::Involutive(self.apply_k_unchecked(b, k)),
            })
            .collect())
    }

    /// Braid relations checked on every fiber generator, one entry per
    /// violated relation.
    pub fn braid_relation_failures(&self) -> Vec<String> {
        let n = self.n;
        let gen = |i: u32, s: i8| BraidWord::generator(n, i, s).unwrap();
        let mut pairs = Vec::new();
        for i in 1..n as u32 {
            for j in i + 1..n as u32 {
                let (a, b) = (gen(i, 1), gen(j, 1));
                if j == i + 1 {
                    pairs.push((
                        a.mul_trusted(&b).mul_trusted(&a),
                        b.mul_trusted(&a).mul_trusted(&b),
                    ));
                } else {
                    pairs.push((a.mul_trusted(&b), b.mul_trusted(&a)));
                }
            }
        }
        let mut failures = Vec::new();
        for (lhs, rhs) in pairs {
            let left = self.generator_images(&lhs).unwrap();
            let right = self.generator_images(&rhs).unwrap();
            if left != right {
                failures.push(format!("{lhs} = {rhs}"));
            }
        }
        failures
    }

    pub fn verify_braid_relations(&self) -> bool {
        self.braid_relation_failures().is_empty() && self.inverse_tables_consistent()
    }

    /// The `α_i⁻¹` table undoes the `α_i` table on every generator.
    fn inverse_tables_consistent(&self) -> bool {
        let gens = self.fiber_generators();
        match &self.tables {
            Tables::Free { forward, backward } => (0..self.n - 1).all(|i| {
                gens.iter().all(|g| {
                    let g = g.as_free().unwrap();
                    g.substitute_indexed(&backward[i])
                        .substitute_indexed(&forward[i])
                        == *g
                        && g.substitute_indexed(&forward[i])
                            .substitute_indexed(&backward[i])
                            == *g
                })
            }),
            Tables::Involutive { forward, backward } => (0..self.n - 1).all(|i| {
                gens.iter().all(|g| {
                    let g = g.as_involutive().unwrap();
                    g.substitute(&backward[i]).substitute(&forward[i]) == *g
                        && g.substitute(&forward[i]).substitute(&backward[i]) == *g
                })
            }),
        }
    }

    /// Abelianized action: column `j` is the class of the image of generator `j`.
    pub fn homology_matrix(&self, b: &BraidWord) -> Result<IntegerMatrix> {
        if self.kind == RepKind::RhoPlus {
            return Err(Error::UnsupportedFlavor {
                op: "homology_matrix",
                flavor: self.kind.to_string(),
            });
        }
        let rank = self.fiber_rank();
        let images = self.generator_images(b)?;
        let mut m = IntegerMatrix::zero(rank);
        for (j, img) in images.iter().enumerate() {
            let v = img.as_free().unwrap().abelianize(rank)?;
            for (i, c) in v.coords.iter().enumerate() {
                m.entries[i][j] = *c;
            }
        }
        Ok(m)
    }
}

/// Equality in Bₙ, decided through the faithful action on Fₙ.
pub fn braid_equal(b1: &BraidWord, b2: &BraidWord) -> bool {
    if b1.strands() != b2.strands() {
        return false;
    }
    if b1 == b2 {
        return true;
    }
    let rho = Representation::new(RepKind::RhoB, b1.strands().max(2)).unwrap();
    braid_equal_with(&rho, b1, b2)
}

pub(crate) fn braid_equal_with(rho: &Representation, b1: &BraidWord, b2: &BraidWord) -> bool {
    // b1 = b2 iff b2⁻¹ b1 acts trivially; acting with the quotient keeps words short
    let q = b2.inverse().mul_trusted(b1);
    (1..=rho.fiber_rank() as u32).all(|j| {
        let u = FreeWord::generator(GenSym::u(j));
        rho.apply_free_unchecked(&q, &u) == u
    })
}

/// Applies the endomorphism sending fiber generator `j` to `images[j-1]`.
pub fn map_fiber(images: &[FiberWord], w: &FiberWord) -> Result<FiberWord> {
    match w {
        FiberWord::Free(f) => {
            let imgs: Vec<FreeWord> = images
                .iter()
                .map(|i| i.as_free().cloned())
                .collect::<Option<_>>()
                .ok_or(Error::FiberMismatch {
                    expected: "free-group images",
                })?;
            for l in f.letters() {
                if l.gen.index as usize > imgs.len() {
                    return Err(Error::MissingImage(l.gen));
                }
            }
            let out = f.substitute_indexed(&imgs);
            if let (Some(a), Some(b)) = (out.alphabet(), imgs.iter().find_map(|w| w.alphabet())) {
                if a != b {
                    return Err(Error::MixedAlphabet { left: b, right: a });
                }
            }
            Ok(FiberWord::Free(out))
        }
        FiberWord::Involutive(k) => {
            let imgs: Vec<InvolutiveWord> = images
                .iter()
                .map(|i| i.as_involutive().cloned())
                .collect::<Option<_>>()
                .ok_or(Error::FiberMismatch {
                    expected: "K-word images",
                })?;
            if k.letters().iter().any(|&x| x as usize > imgs.len()) {
                return Err(Error::FiberMismatch {
                    expected: "an image for every x_i",
                });
            }
            Ok(FiberWord::Involutive(k.substitute(&imgs)))
        }
    }
}

/// True iff the endomorphism given by `images` commutes with every listed braid.
pub fn check_equivariant(
    images: &[FiberWord],
    rep: &Representation,
    braids: &[BraidWord],
) -> Result<bool> {
    for b in braids {
        for g in rep.fiber_generators() {
            let left = map_fiber(images, &rep.apply(b, &g)?)?;
            let right = rep.apply(b, &map_fiber(images, &g)?)?;
            if left != right {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `embed_g(ρ_D(b)(w)) = ρ⁺(b)(embed_g(w))`
pub fn compat_embed(b: &BraidWord, w: &FreeWord, n: usize) -> Result<bool> {
    if w.alphabet().is_some_and(|a| a != Alphabet::G) {
        return Err(Error::FiberMismatch {
            expected: "g-words",
        });
    }
    let rho_d = Representation::new(RepKind::RhoDg, n)?;
    let rho_plus = Representation::new(RepKind::RhoPlus, n)?;
    let left = embed_g(&rho_d.apply_free(b, w)?, n)?;
    let right = rho_plus.apply_k(b, &embed_g(w, n)?)?;
    Ok(left == right)
}

/// Square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl IntegerMatrix {
    pub fn zero(dim: usize) -> Self {
        IntegerMatrix {
            entries: vec![vec![0; dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i][i] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let d = self.dim();
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out.entries[i][j] += a * other.entries[k][j];
                }
            }
        }
        out
    }

    /// Fraction-free Gaussian elimination.
    pub fn determinant(&self) -> i64 {
        let d = self.dim();
        if d == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..d - 1 {
            if a[k][k] == 0 {
                match (k + 1..d).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[d - 1][d - 1]) as i64
    }

    /// The matrix with a 1 in row `p(j)`, column `j`.
    pub fn permutation(images: &[u32]) -> IntegerMatrix {
        let mut m = Self::zero(images.len());
        for (j, &i) in images.iter().enumerate() {
            m.entries[i as usize - 1][j] = 1;
        }
        m
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| format!("{x:>3}"))
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        write!(f, "{}", rows.join("\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braids::zeta;
    use crate::involutive_products::delta_word;

    fn b(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, n).unwrap()
    }

    fn act(kind: RepKind, n: usize, braid: &str, word: &str) -> String {
        let rep = Representation::new(kind, n).unwrap();
        let w = rep.parse_fiber(word).unwrap();
        rep.apply(&b(braid, n), &w).unwrap().to_string()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(act(RepKind::RhoB, 3, "a1", "u2"), "u2^-1 u1 u2");
        assert_eq!(act(RepKind::RhoDv, 4, "a1", "v3"), "v1^-1 v3");
        assert_eq!(act(RepKind::RhoDg, 4, "a2", "g1"), "g1 g2");
        assert_eq!(act(RepKind::RhoPlus, 4, "a1", "x1"), "x2");
        assert_eq!(act(RepKind::RhoPlus, 4, "a1", "x2"), "x2 x1 x2");
        assert_eq!(act(RepKind::RhoB, 3, "a1^-1", "u1"), "u1 u2 u1^-1");
    }

    #[test]
    fn apply_is_a_left_action() {
        let rep = Representation::new(RepKind::RhoB, 3).unwrap();
        let w: FreeWord = "u1 u3^-1".parse().unwrap();
        let (b1, b2) = (b("a1 a2^-1", 3), b("a2 a1", 3));
        let lhs = rep.apply_free(&b1.mul(&b2).unwrap(), &w).unwrap();
        let rhs = rep
            .apply_free(&b1, &rep.apply_free(&b2, &w).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_rejects_mismatches() {
        let rep = Representation::new(RepKind::RhoB, 3).unwrap();
        let v = FiberWord::Free("v1".parse().unwrap());
        assert!(matches!(
            rep.apply(&b("a1", 3), &v),
            Err(Error::FiberMismatch { .. })
        ));
        let u = FiberWord::Free("u1".parse().unwrap());
        assert!(matches!(
            rep.apply(&b("a1", 4), &u),
            Err(Error::StrandMismatch { .. })
        ));
    }

    #[test]
    fn braid_relations_hold() {
        for kind in RepKind::ALL {
            for n in 3..=6 {
                let rep = Representation::new(kind, n).unwrap();
                assert!(rep.verify_braid_relations(), "{kind} n={n}");
            }
        }
    }

    #[test]
    fn corrupted_table_breaks_relations() {
        let bad = Representation::new(RepKind::RhoB, 3)
            .unwrap()
            .with_image(1, 1, 2, FiberWord::Free("u1 u2".parse().unwrap()))
            .unwrap();
        assert!(!bad.verify_braid_relations());
    }

    #[test]
    fn braid_equal_examples() {
        assert!(braid_equal(&b("a1 a2 a1", 3), &b("a2 a1 a2", 3)));
        assert!(!braid_equal(&b("a1", 3), &b("a2", 3)));
        let z = zeta(3).unwrap();
        let g = b("a1 a2^-1 a1", 3);
        let conj = g.mul(&z).unwrap().mul(&g.inverse()).unwrap();
        assert!(braid_equal(&z, &conj));
    }

    #[test]
    fn homology_examples() {
        let rho_b = Representation::new(RepKind::RhoB, 3).unwrap();
        assert_eq!(
            rho_b.homology_matrix(&b("a1", 3)).unwrap(),
            IntegerMatrix::permutation(&[2, 1, 3])
        );
        let pure = b("a1 a1 a2^-1 a2^-1", 3);
        assert_eq!(
            rho_b.homology_matrix(&pure).unwrap(),
            IntegerMatrix::identity(3)
        );

        let rho_d = Representation::new(RepKind::RhoDg, 4).unwrap();
        let m = rho_d.homology_matrix(&b("a2", 4)).unwrap();
        assert_eq!(
            m.entries,
            vec![vec![1, 0, 0], vec![1, 1, -1], vec![0, 0, 1]]
        );
        assert_eq!(m.determinant(), 1);
    }

    #[test]
    fn determinant_examples() {
        let m = IntegerMatrix {
            entries: vec![vec![0, 1], vec![1, 0]],
        };
        assert_eq!(m.determinant(), -1);
        let m = IntegerMatrix {
            entries: vec![vec![2, 3, 1], vec![4, 1, 0], vec![0, 5, 2]],
        };
        assert_eq!(m.determinant(), 2 * 2 - 3 * 8 + 20);
    }

    #[test]
    fn equivariance_examples() {
        let n = 4;
        let rho_plus = Representation::new(RepKind::RhoPlus, n).unwrap();
        let d = delta_word(n);
        let conj_by_d_inv: Vec<FiberWord> = (1..=n as u32)
            .map(|j| {
                let x = InvolutiveWord::generator(j, n).unwrap();
                FiberWord::Involutive(x.conjugate_by(&d.inverse()).unwrap())
            })
            .collect();
        let gens: Vec<BraidWord> = (1..n as u32)
            .map(|i| BraidWord::generator(n, i, 1).unwrap())
            .collect();
        assert!(check_equivariant(&conj_by_d_inv, &rho_plus, &gens).unwrap());

        let rho_b = Representation::new(RepKind::RhoB, 3).unwrap();
        let u0: FreeWord = "u1 u2 u3".parse().unwrap();
        let conj_by_u0_inv: Vec<FiberWord> = (1..=3)
            .map(|j| {
                let u = FreeWord::generator(GenSym::u(j));
                FiberWord::Free(u.conjugate_by(&u0.inverse()).unwrap())
            })
            .collect();
        let gens3 = vec![b("a1", 3), b("a2", 3)];
        assert!(check_equivariant(&conj_by_u0_inv, &rho_b, &gens3).unwrap());

        let swap: Vec<FiberWord> = ["u2", "u1", "u3"]
            .iter()
            .map(|s| FiberWord::Free(s.parse().unwrap()))
            .collect();
        assert!(!check_equivariant(&swap, &rho_b, &[b("a2", 3)]).unwrap());
    }

    #[test]
    fn compat_embed_examples() {
        assert!(compat_embed(&b("a2", 4), &"g1".parse().unwrap(), 4).unwrap());
        assert!(compat_embed(&b("e", 4), &"g3 g1^-1".parse().unwrap(), 4).unwrap());
    }
}
