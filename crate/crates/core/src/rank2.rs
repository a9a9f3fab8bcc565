//! Rank-2 Artin groups `A = ⟨α, β | w(α,β:m) = w(β,α:m)⟩`, `m ≥ 3`.
//!
//! Words in the standard generators use the families `Alpha`/`Beta`; words in
//! the coordinates `a, b` use the families `A`/`B`. In text, `a` and `b`
//! name `α` and `β` for standard words and the coordinates for `ab` words.
//!
//! For `m = 2k+1`: `a = αβ`, `b = (αβ)^k α`, `A = ⟨a, b | a^m = b²⟩`, `c = a^m`.
//! For `m = 2k`: `a = αβ`, `b = β`, `A = ⟨a, b | a^k b = b a^k⟩`, `c = a^k`.
//! In both cases `c` generates the centre and `A/⟨c⟩` is `C₂ ⋆ C_m`
//! (generated by `b̄`, `ā`) or `C_k ⋆ ℤ` (generated by `ā`, `b̄`).

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_words::{Alphabet, Family, FreeWord, GenSym, Letter};
use crate::involutive_products::{FreeProductWord, Order};

fn gen_word(family: Family, sign: i8) -> FreeWord {
    FreeWord::from_signed(family, &[(1, sign)])
}

fn std_alpha() -> FreeWord {
    gen_word(Family::Alpha, 1)
}

fn std_beta() -> FreeWord {
    gen_word(Family::Beta, 1)
}

fn ab_a() -> FreeWord {
    gen_word(Family::A, 1)
}

fn ab_b() -> FreeWord {
    gen_word(Family::B, 1)
}

/// Parses a word in the standard generators; `a`, `b`, `alpha`, `beta` all work.
pub fn parse_std(text: &str) -> Result<FreeWord> {
    let w: FreeWord = text.parse()?;
    w.substitute(|g| match (g.family, g.index) {
        (Family::A | Family::Alpha, 1) => Some(std_alpha()),
        (Family::B | Family::Beta, 1) => Some(std_beta()),
        _ => None,
    })
}

/// Parses a word in the coordinates `a, b`.
pub fn parse_ab(text: &str) -> Result<FreeWord> {
    let w: FreeWord = text.parse()?;
    match w.alphabet() {
        None | Some(Alphabet::AB) if w.letters().iter().all(|l| l.gen.index == 1) => Ok(w),
        _ => Err(Error::Parse {
            column: 1,
            message: "expected a word in a and b".into(),
        }),
    }
}

/// Prints a standard word with `a` for `α` and `b` for `β`.
pub fn format_std(w: &FreeWord) -> String {
    w.substitute(|g| match g.family {
        Family::Alpha => Some(ab_a()),
        Family::Beta => Some(ab_b()),
        _ => Some(FreeWord::generator(g)),
    })
    .map(|x| x.to_string())
    .unwrap_or_else(|_| w.to_string())
}

/// `c^{c_exp} · lift(residue)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rank2NormalForm {
    pub c_exp: i64,
    pub residue: FreeProductWord,
}

/// An endomorphism given by the images of the two generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rank2Map {
    pub first: FreeWord,
    pub second: FreeWord,
}

impl Rank2Map {
    pub fn new(first: FreeWord, second: FreeWord) -> Self {
        Rank2Map { first, second }
    }

    /// Substitutes into a word over the same alphabet as the images' domain.
    fn substitute(&self, w: &FreeWord) -> Result<FreeWord> {
        w.substitute(|g| match g.family {
            Family::Alpha | Family::A => Some(self.first.clone()),
            Family::Beta | Family::B => Some(self.second.clone()),
            _ => None,
        })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Rank2Map) -> Result<Rank2Map> {
        Ok(Rank2Map {
            first: self.substitute(&other.first)?,
            second: self.substitute(&other.second)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialAuto {
    Eps,
    Tau,
    Eta,
    EtaInv,
    DeltaConj,
}

/// `φ = ι_w ∘ ε^{e_eps} ∘ τ^{e_tau} ∘ η^{e_eta}` with `ι_w(x) = w x w⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutoDescriptor {
    /// Word in the coordinates `a, b`, with no central factor.
    pub inner_witness: FreeWord,
    pub e_eps: u8,
    pub e_tau: u8,
    pub e_eta: i64,
}

/// Automorphism class in the central quotient: `φ = ν ∘ ι_w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientClassification {
    pub conjugator: FreeProductWord,
    pub params: QuotientParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientParams {
    /// `ν_r : u ↦ u, v ↦ v^r` on `C₂ ⋆ C_m`.
    Odd { r: i64 },
    /// `ν_{ε,r,s} : u ↦ u^r, v ↦ v^ε u^s` on `C_k ⋆ ℤ`.
    Even { eps: i8, r: i64, s: i64 },
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn mod_inverse(r: i64, m: i64) -> i64 {
    (1..m).find(|x| (r * x).rem_euclid(m) == 1).unwrap_or(1)
}

fn syl(factor: usize, e: i64, orders: &[Order]) -> FreeProductWord {
    FreeProductWord::fp_reduce(&[(factor, e)], orders)
        .unwrap_or_else(|_| FreeProductWord::identity(orders))
}

fn pow_syl(factor: usize, e: i64, orders: &[Order]) -> FreeProductWord {
    if e == 0 {
        FreeProductWord::identity(orders)
    } else {
        syl(factor, e, orders)
    }
}

/// `[ν(u), ν(v)]`
pub fn nu_images(params: QuotientParams, orders: &[Order]) -> [FreeProductWord; 2] {
    match params {
        QuotientParams::Odd { r } => [syl(1, 1, orders), pow_syl(2, r, orders)],
        QuotientParams::Even { eps, r, s } => [
            pow_syl(1, r, orders),
            pow_syl(2, eps as i64, orders).mul_trusted(&pow_syl(1, s, orders)),
        ],
    }
}

fn nu_inverse_images(params: QuotientParams, orders: &[Order]) -> [FreeProductWord; 2] {
    match params {
        QuotientParams::Odd { r } => {
            let Order::Finite(m) = orders[1] else {
                unreachable!()
            };
            [
                syl(1, 1, orders),
                pow_syl(2, mod_inverse(r, m as i64), orders),
            ]
        }
        QuotientParams::Even { eps, r, s } => {
            let Order::Finite(k) = orders[0] else {
                unreachable!()
            };
            let r_inv = mod_inverse(r, k as i64);
            let v = syl(2, 1, orders).mul_trusted(&pow_syl(1, -s * r_inv, orders));
            [pow_syl(1, r_inv, orders), v.pow(eps as i64)]
        }
    }
}

/// Finds `g` and `ν` with `φ = ι_g ∘ ν`, given `φ(u)` and `φ(v)`.
fn quotient_decompose(
    u_img: &FreeProductWord,
    v_img: &FreeProductWord,
) -> Result<(FreeProductWord, QuotientParams)> {
    let orders = u_img.orders().to_vec();
    if v_img.orders() != orders.as_slice() {
        return Err(Error::Unsupported("images live in different groups".into()));
    }
    let not_auto = |why: &str| Error::NotAnAutomorphism(format!("u ↦ {u_img}, v ↦ {v_img}: {why}"));
    let (g, params) = match orders.as_slice() {
        [Order::Finite(2), Order::Finite(m)] => {
            let m = *m as i64;
            let (w1, core1) = u_img.cyclic_reduce();
            if core1.syllables() != [(1, 1)] {
                return Err(not_auto("image of u is not conjugate to u"));
            }
            let (w2, core2) = v_img.cyclic_reduce();
            let r = match core2.syllables() {
                [(2, r)] if gcd(*r, m) == 1 => *r,
                _ => {
                    return Err(not_auto(
                        "image of v is not conjugate to a generating power of v",
                    ))
                }
            };
            let u = syl(1, 1, &orders);
            let g = [FreeProductWord::identity(&orders), u]
                .into_iter()
                .map(|t| w1.mul_trusted(&t))
                .find(|g| w2.inverse().mul_trusted(g).factor_power(2).is_some())
                .ok_or_else(|| not_auto("the images do not generate"))?;
            (g, QuotientParams::Odd { r })
        }
        [Order::Finite(k), Order::Infinite] => {
            let k = *k as i64;
            let (w1, core1) = u_img.cyclic_reduce();
            let r = match core1.syllables() {
                [(1, r)] if gcd(*r, k) == 1 => *r,
                _ => {
                    return Err(not_auto(
                        "image of u is not conjugate to a generating power of u",
                    ))
                }
            };
            let v_prime = w1.inverse().mul_trusted(v_img).mul_trusted(&w1);
            let (p, eps, q) = match v_prime.syllables() {
                [(2, e)] => (0, *e, 0),
                [(1, p), (2, e)] => (*p, *e, 0),
                [(2, e), (1, q)] => (0, *e, *q),
                [(1, p), (2, e), (1, q)] => (*p, *e, *q),
                _ => return Err(not_auto("image of v has the wrong shape")),
            };
            if eps.abs() != 1 {
                return Err(not_auto("image of v is not primitive"));
            }
            let g = w1.mul_trusted(&pow_syl(1, p, &orders));
            let s = (p + q).rem_euclid(k);
            (
                g,
                QuotientParams::Even {
                    eps: eps as i8,
                    r,
                    s,
                },
            )
        }
        _ => {
            return Err(Error::Unsupported(
                "quotient must be C2 * Cm (m odd) or Ck * Z".into(),
            ))
        }
    };
    let [nu_u, nu_v] = nu_images(params, &orders);
    if nu_u.conjugate_by(&g) != *u_img || nu_v.conjugate_by(&g) != *v_img {
        return Err(not_auto("verification failed"));
    }
    Ok((g, params))
}

/// Writes an automorphism of `C₂ ⋆ C_m` or `C_k ⋆ ℤ` as `ν ∘ ι_w`.
pub fn classify_quotient_auto(
    u_img: &FreeProductWord,
    v_img: &FreeProductWord,
) -> Result<QuotientClassification> {
    let (g, params) = quotient_decompose(u_img, v_img)?;
    let inv = nu_inverse_images(params, u_img.orders());
    Ok(QuotientClassification {
        conjugator: g.substitute(&inv),
        params,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rank2Group {
    m: u32,
}

impl Rank2Group {
    pub fn new(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::RankTooSmall {
                n: m as usize,
                min: 3,
            });
        }
        Ok(Rank2Group { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.m / 2
    }

    pub fn is_odd(&self) -> bool {
        self.m % 2 == 1
    }

    /// Orders of the quotient factors `u`, `v`.
    pub fn quotient_orders(&self) -> [Order; 2] {
        if self.is_odd() {
            [Order::Finite(2), Order::Finite(self.m)]
        } else {
            [Order::Finite(self.k()), Order::Infinite]
        }
    }

    /// Names of `u`, `v` in the coordinates.
    pub fn quotient_names(&self) -> [&'static str; 2] {
        if self.is_odd() {
            ["b", "a"]
        } else {
            ["a", "b"]
        }
    }

    /// Quotient factor carrying the coordinate `a` (`true`) or `b` (`false`).
    fn factor_of(&self, is_a: bool) -> usize {
        match (self.is_odd(), is_a) {
            (true, true) | (false, false) => 2,
            _ => 1,
        }
    }

    /// `a` or `b` lifted to the power `c` of its quotient factor, if finite.
    fn factor_order(&self, factor: usize) -> Option<i64> {
        match self.quotient_orders()[factor - 1] {
            Order::Finite(o) => Some(o as i64),
            Order::Infinite => None,
        }
    }

    fn factor_letter(&self, factor: usize) -> FreeWord {
        if self.quotient_names()[factor - 1] == "a" {
            ab_a()
        } else {
            ab_b()
        }
    }

    /// The central element `c` as a coordinate word.
    pub fn center_word(&self) -> FreeWord {
        let e = if self.is_odd() { self.m } else { self.k() };
        ab_a().pow(e as i64)
    }

    pub fn normal_form(&self, w: &FreeWord) -> Result<Rank2NormalForm> {
        let mut c_exp = 0i64;
        let mut syllables: Vec<(usize, i64)> = Vec::new();
        for l in w.letters() {
            let factor = match (l.gen.family, l.gen.index) {
                (Family::A, 1) => self.factor_of(true),
                (Family::B, 1) => self.factor_of(false),
                _ => {
                    return Err(Error::MixedAlphabet {
                        left: Alphabet::AB,
                        right: l.gen.family.alphabet(),
                    })
                }
            };
            let current = match syllables.last() {
                Some(&(f, e)) if f == factor => {
                    syllables.pop();
                    e
                }
                _ => 0,
            };
            let mut next = current + l.sign as i64;
            if let Some(o) = self.factor_order(factor) {
                if next == o {
                    c_exp += 1;
                    next = 0;
                } else if next < 0 {
                    c_exp -= 1;
                    next += o;
                }
            }
            if next != 0 {
                syllables.push((factor, next));
            }
        }
        Ok(Rank2NormalForm {
            c_exp,
            residue: FreeProductWord::fp_reduce(&syllables, &self.quotient_orders())?,
        })
    }

    /// The coordinate word `c^{c_exp} · lift(residue)`.
    pub fn nf_word(&self, nf: &Rank2NormalForm) -> FreeWord {
        let mut w = self.center_word().pow(nf.c_exp);
        for &(f, e) in nf.residue.syllables() {
            w = w.mul_trusted(&self.factor_letter(f).pow(e));
        }
        w
    }

    fn lift(&self, residue: &FreeProductWord) -> FreeWord {
        self.nf_word(&Rank2NormalForm {
            c_exp: 0,
            residue: residue.clone(),
        })
    }

    /// Canonical coordinate word for the element represented by `w`.
    pub fn canonical(&self, w: &FreeWord) -> Result<FreeWord> {
        Ok(self.nf_word(&self.normal_form(w)?))
    }

    pub fn nf_equal(&self, w1: &FreeWord, w2: &FreeWord) -> Result<bool> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }

    pub fn format_nf(&self, nf: &Rank2NormalForm) -> String {
        let residue = nf.residue.format_with(&self.quotient_names());
        match (nf.c_exp, nf.residue.is_identity()) {
            (0, _) => residue,
            (e, true) => crate::text::with_sign("c".into(), e),
            (e, false) => format!("{} {residue}", crate::text::with_sign("c".into(), e)),
        }
    }

    /// Images of `α`, `β` as coordinate words.
    fn std_in_ab(&self) -> Rank2Map {
        let (a, b) = (ab_a(), ab_b());
        if self.is_odd() {
            let k = self.k() as i64;
            Rank2Map::new(
                a.pow(-k).mul_trusted(&b),
                b.inverse().mul_trusted(&a.pow(k + 1)),
            )
        } else {
            Rank2Map::new(a.mul_trusted(&b.inverse()), b)
        }
    }

    /// Images of `a`, `b` as standard words.
    fn ab_in_std(&self) -> Rank2Map {
        let ab = std_alpha().mul_trusted(&std_beta());
        let b = if self.is_odd() {
            ab.pow(self.k() as i64).mul_trusted(&std_alpha())
        } else {
            std_beta()
        };
        Rank2Map::new(ab, b)
    }

    pub fn std_to_ab(&self, w: &FreeWord) -> Result<FreeWord> {
        check_alphabet(w, Alphabet::AlphaBeta)?;
        self.std_in_ab().substitute(w)
    }

    pub fn ab_to_std(&self, w: &FreeWord) -> Result<FreeWord> {
        check_alphabet(w, Alphabet::AB)?;
        self.ab_in_std().substitute(w)
    }

    /// `w(α, β : m)`
    pub fn delta_std(&self) -> FreeWord {
        alternating(std_alpha(), std_beta(), self.m)
    }

    /// Both sides of the defining relation.
    pub fn relation_std(&self) -> (FreeWord, FreeWord) {
        (
            alternating(std_alpha(), std_beta(), self.m),
            alternating(std_beta(), std_alpha(), self.m),
        )
    }

    /// Equality of standard words in `A`.
    pub fn std_equal(&self, w1: &FreeWord, w2: &FreeWord) -> Result<bool> {
        self.nf_equal(&self.std_to_ab(w1)?, &self.std_to_ab(w2)?)
    }

    /// The special automorphism on standard generators.
    pub fn special_auto(&self, which: SpecialAuto) -> Result<Rank2Map> {
        let (al, be) = (std_alpha(), std_beta());
        Ok(match which {
            SpecialAuto::Eps => Rank2Map::new(al.inverse(), be.inverse()),
            SpecialAuto::Tau => Rank2Map::new(be, al),
            SpecialAuto::Eta | SpecialAuto::EtaInv if self.is_odd() => {
                return Err(Error::Unsupported(format!(
                    "eta is only defined for even m, got m = {}",
                    self.m
                )))
            }
            SpecialAuto::Eta => Rank2Map::new(be.inverse(), be.mul_trusted(&al).mul_trusted(&be)),
            SpecialAuto::EtaInv => {
                Rank2Map::new(al.mul_trusted(&be).mul_trusted(&al), al.inverse())
            }
            SpecialAuto::DeltaConj => {
                let d = self.delta_std();
                Rank2Map::new(al.conjugate_by(&d)?, be.conjugate_by(&d)?)
            }
        })
    }

    pub fn special_auto_apply(&self, which: SpecialAuto, w: &FreeWord) -> Result<FreeWord> {
        check_alphabet(w, Alphabet::AlphaBeta)?;
        self.special_auto(which)?.substitute(w)
    }

    /// Applies a map on standard generators to a standard word.
    pub fn apply_std(&self, map: &Rank2Map, w: &FreeWord) -> Result<FreeWord> {
        map.substitute(w)
    }

    /// True iff the map sends the defining relation to a relation.
    pub fn preserves_relation(&self, map: &Rank2Map) -> Result<bool> {
        let (l, r) = self.relation_std();
        self.std_equal(&map.substitute(&l)?, &map.substitute(&r)?)
    }

    /// The same map in coordinates, images in canonical form.
    fn map_in_ab(&self, map: &Rank2Map) -> Result<Rank2Map> {
        let ab = self.ab_in_std();
        let first = self.std_to_ab(&map.substitute(&ab.first)?)?;
        let second = self.std_to_ab(&map.substitute(&ab.second)?)?;
        Ok(Rank2Map::new(
            self.canonical(&first)?,
            self.canonical(&second)?,
        ))
    }

    fn map_in_std(&self, map: &Rank2Map) -> Result<Rank2Map> {
        let s = self.std_in_ab();
        let first = self.ab_to_std(&map.substitute(&s.first)?)?;
        let second = self.ab_to_std(&map.substitute(&s.second)?)?;
        Ok(Rank2Map::new(first, second))
    }

    fn ab_compose(&self, f: &Rank2Map, g: &Rank2Map) -> Result<Rank2Map> {
        let h = f.compose(g)?;
        Ok(Rank2Map::new(
            self.canonical(&h.first)?,
            self.canonical(&h.second)?,
        ))
    }

    fn ab_identity() -> Rank2Map {
        Rank2Map::new(ab_a(), ab_b())
    }

    fn ab_power(&self, f: &Rank2Map, inverse: &Rank2Map, e: i64) -> Result<Rank2Map> {
        let base = if e < 0 { inverse } else { f };
        let mut out = Self::ab_identity();
        for _ in 0..e.unsigned_abs() {
            out = self.ab_compose(base, &out)?;
        }
        Ok(out)
    }

    /// `ε^e_eps ∘ τ^e_tau ∘ η^e_eta` in coordinates.
    fn outer_ab(&self, e_eps: u8, e_tau: u8, e_eta: i64) -> Result<Rank2Map> {
        let mut out = Self::ab_identity();
        if e_eta != 0 {
            let eta = self.map_in_ab(&self.special_auto(SpecialAuto::Eta)?)?;
            let eta_inv = self.map_in_ab(&self.special_auto(SpecialAuto::EtaInv)?)?;
            out = self.ab_power(&eta, &eta_inv, e_eta)?;
        }
        if e_tau == 1 {
            let tau = self.map_in_ab(&self.special_auto(SpecialAuto::Tau)?)?;
            out = self.ab_compose(&tau, &out)?;
        }
        if e_eps == 1 {
            let eps = self.map_in_ab(&self.special_auto(SpecialAuto::Eps)?)?;
            out = self.ab_compose(&eps, &out)?;
        }
        Ok(out)
    }

    fn quotient_images(&self, map: &Rank2Map) -> Result<[FreeProductWord; 2]> {
        let ra = self.normal_form(&map.first)?.residue;
        let rb = self.normal_form(&map.second)?.residue;
        Ok(if self.is_odd() { [rb, ra] } else { [ra, rb] })
    }

    fn conjugate_ab(&self, map: &Rank2Map, w: &FreeWord) -> Result<Rank2Map> {
        let winv = w.inverse();
        let f = |x: &FreeWord| self.canonical(&w.mul_trusted(x).mul_trusted(&winv));
        Ok(Rank2Map::new(f(&map.first)?, f(&map.second)?))
    }

    /// The `W` with `map = ι_W`, as a coordinate word without central part.
    fn inner_witness(&self, map: &Rank2Map) -> Result<FreeWord> {
        let [u, v] = self.quotient_images(map)?;
        let (g, params) = quotient_decompose(&u, &v)?;
        let trivial = match params {
            QuotientParams::Odd { r } => r.rem_euclid(self.m as i64) == 1,
            QuotientParams::Even { eps, r, s } => {
                eps == 1 && r.rem_euclid(self.k() as i64) == 1 % self.k() as i64 && s == 0
            }
        };
        let w = self.lift(&g);
        if !trivial || self.conjugate_ab(&Self::ab_identity(), &w)? != *map {
            return Err(Error::NotAnAutomorphism(
                "the remaining map is not inner".into(),
            ));
        }
        Ok(w)
    }

    /// Writes the automorphism `α ↦ alpha_img, β ↦ beta_img` as
    /// `ι_w ∘ ε^{e_eps} ∘ τ^{e_tau} ∘ η^{e_eta}`.
    pub fn classify_auto(
        &self,
        alpha_img: &FreeWord,
        beta_img: &FreeWord,
    ) -> Result<AutoDescriptor> {
        check_alphabet(alpha_img, Alphabet::AlphaBeta)?;
        check_alphabet(beta_img, Alphabet::AlphaBeta)?;
        let map = Rank2Map::new(alpha_img.clone(), beta_img.clone());
        if !self.preserves_relation(&map)? {
            return Err(Error::NotAnAutomorphism(
                "the defining relation is not preserved".into(),
            ));
        }
        let f = self.map_in_ab(&map)?;
        let fc = self.normal_form(&f.substitute(&self.center_word())?)?;
        if !fc.residue.is_identity() || fc.c_exp.abs() != 1 {
            return Err(Error::CenterViolated(self.format_nf(&fc)));
        }
        let sigma = fc.c_exp;
        let (e_eps, e_tau, e_eta) = if self.is_odd() {
            (u8::from(sigma < 0), 0, 0)
        } else {
            self.even_outer_class(&f, sigma)?
        };
        // ψ = φ ∘ O⁻¹ with O⁻¹ = η^{-e_eta} ∘ τ^{e_tau} ∘ ε^{e_eps}
        let mut o_inv = self.outer_ab(e_eps, 0, 0)?;
        if e_tau == 1 {
            o_inv = self.ab_compose(&self.outer_ab(0, 1, 0)?, &o_inv)?;
        }
        o_inv = self.ab_compose(&self.outer_ab(0, 0, -e_eta)?, &o_inv)?;
        let psi = self.ab_compose(&f, &o_inv)?;
        Ok(AutoDescriptor {
            inner_witness: self.inner_witness(&psi)?,
            e_eps,
            e_tau,
            e_eta,
        })
    }

    fn even_outer_class(&self, f: &Rank2Map, sigma: i64) -> Result<(u8, u8, i64)> {
        let [u, v] = self.quotient_images(f)?;
        let (g, params) = quotient_decompose(&u, &v)?;
        let QuotientParams::Even { eps, .. } = params else {
            unreachable!()
        };
        let g_lift = self.lift(&g);
        let phi1 = self.conjugate_ab(f, &g_lift.inverse())?;
        if !self.nf_equal(&phi1.first, &ab_a().pow(sigma))? {
            return Err(Error::NotAnAutomorphism(
                "image of a is not conjugate to a^±1".into(),
            ));
        }
        let nb = self.normal_form(&phi1.second)?;
        let k = self.k() as i64;
        let t_prime = match nb.residue.syllables() {
            [(2, e)] if *e == eps as i64 => k * nb.c_exp,
            [(2, e), (1, s)] if *e == eps as i64 => s + k * nb.c_exp,
            _ => {
                return Err(Error::NotAnAutomorphism(
                    "image of b has the wrong shape".into(),
                ))
            }
        };
        let t = sigma * t_prime;
        Ok(match (sigma < 0, eps < 0) {
            (false, false) => (0, 0, t),
            (false, true) => (0, 1, t - 1),
            (true, false) => (1, 1, t - 1),
            (true, true) => (1, 0, t),
        })
    }

    /// The automorphism described by `d`, on standard generators.
    pub fn build_auto(&self, d: &AutoDescriptor) -> Result<Rank2Map> {
        if self.is_odd() && d.e_eta != 0 {
            return Err(Error::Unsupported("eta is only defined for even m".into()));
        }
        check_alphabet(&d.inner_witness, Alphabet::AB)?;
        let outer = self.outer_ab(d.e_eps, d.e_tau, d.e_eta)?;
        let ab = self.conjugate_ab(&outer, &d.inner_witness)?;
        self.map_in_std(&ab)
    }

    /// True iff the two maps agree on both generators in `A`.
    pub fn maps_equal(&self, f: &Rank2Map, g: &Rank2Map) -> Result<bool> {
        Ok(self.std_equal(&f.first, &g.first)? && self.std_equal(&f.second, &g.second)?)
    }

    /// Equivalence classes of all reduced coordinate words of length at most
    /// `max_len` under the relation-rewriting closure restricted to words of
    /// length at most `lmax`. Returns the words with a class id each.
    pub fn closure_classes(&self, max_len: usize, lmax: usize) -> Result<Vec<(FreeWord, usize)>> {
        if lmax > 12 {
            return Err(Error::BudgetExceeded {
                needed: lmax as u128,
                budget: 12,
            });
        }
        // letters 0 = a, 1 = a⁻¹, 2 = b, 3 = b⁻¹; x ^ 1 inverts
        let words = packed_reduced_words(lmax);
        let mut index = vec![u32::MAX; 1 << (2 * lmax + 2)];
        for (i, w) in words.iter().enumerate() {
            index[pack(w) as usize] = i as u32;
        }
        let code = |l: &Letter| match (l.gen.family, l.sign) {
            (Family::A, 1) => 0u8,
            (Family::A, _) => 1,
            (Family::B, 1) => 2,
            _ => 3,
        };
        let relator: Vec<u8> = self.relator_ab().letters().iter().map(code).collect();
        let relator_inv: Vec<u8> = relator.iter().rev().map(|x| x ^ 1).collect();
        let mut moves: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for r in [relator, relator_inv] {
            for shift in 0..r.len() {
                let rot: Vec<u8> = r[shift..].iter().chain(&r[..shift]).copied().collect();
                for cut in 0..=rot.len() {
                    let q_inv = rot[cut..].iter().rev().map(|x| x ^ 1).collect();
                    moves.push((rot[..cut].to_vec(), q_inv));
                }
            }
        }
        moves.sort();
        moves.dedup();
        let edges: Vec<Vec<u32>> = words
            .par_iter()
            .map(|l| {
                let mut out = Vec::new();
                let mut buf: Vec<u8> = Vec::with_capacity(2 * lmax + 16);
                for (p, q) in &moves {
                    if p.len() > l.len() {
                        continue;
                    }
                    for start in 0..=l.len() - p.len() {
                        if l[start..start + p.len()] != p[..] {
                            continue;
                        }
                        buf.clear();
                        for &x in l[..start].iter().chain(q).chain(&l[start + p.len()..]) {
                            if buf.last() == Some(&(x ^ 1)) {
                                buf.pop();
                            } else {
                                buf.push(x);
                            }
                        }
                        if buf.len() <= lmax {
                            let j = index[pack(&buf) as usize];
                            out.push(j);
                        }
                    }
                }
                out
            })
            .collect();
        let mut parent: Vec<u32> = (0..words.len() as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for (i, targets) in edges.iter().enumerate() {
            for &j in targets {
                let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        let letter = |x: &u8| {
            let family = if *x < 2 { Family::A } else { Family::B };
            Letter::new(
                GenSym::new(family, 1),
                if x.is_multiple_of(2) { 1 } else { -1 },
            )
        };
        Ok(words
            .iter()
            .enumerate()
            .filter(|(_, w)| w.len() <= max_len)
            .map(|(i, w)| {
                (
                    FreeWord::reduce_trusted(w.iter().map(letter)),
                    find(&mut parent, i as u32) as usize,
                )
            })
            .collect())
    }

    /// `a^m b^-2` or `a^k b a^-k b^-1`.
    fn relator_ab(&self) -> FreeWord {
        let (a, b) = (ab_a(), ab_b());
        if self.is_odd() {
            a.pow(self.m as i64).mul_trusted(&b.pow(-2))
        } else {
            let k = self.k() as i64;
            a.pow(k)
                .mul_trusted(&b)
                .mul_trusted(&a.pow(-k))
                .mul_trusted(&b.inverse())
        }
    }
}

/// Base-4 code with a leading 1, unique per word.
fn pack(w: &[u8]) -> u64 {
    w.iter().fold(1u64, |acc, &x| (acc << 2) | x as u64)
}

/// Freely reduced words over `a^±1, b^±1` in length-lexicographic order.
fn packed_reduced_words(lmax: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    let mut level_start = 0;
    for _ in 0..lmax {
        let level_end = out.len();
        for i in level_start..level_end {
            for x in 0..4u8 {
                if out[i].last() == Some(&(x ^ 1)) {
                    continue;
                }
                let mut w = out[i].clone();
                w.push(x);
                out.push(w);
            }
        }
        level_start = level_end;
    }
    out
}

fn alternating(x: FreeWord, y: FreeWord, m: u32) -> FreeWord {
    let mut w = FreeWord::identity();
    for i in 0..m {
        w = w.mul_trusted(if i % 2 == 0 { &x } else { &y });
    }
    w
}

fn check_alphabet(w: &FreeWord, expected: Alphabet) -> Result<()> {
    match w.alphabet() {
        Some(a) if a != expected => Err(Error::MixedAlphabet {
            left: expected,
            right: a,
        }),
        _ => {
            if let Some(l) = w.letters().iter().find(|l| l.gen.index != 1) {
                return Err(Error::IndexOutOfRange {
                    index: l.gen.index as usize,
                    bound: 1,
                });
            }
            Ok(())
        }
    }
}

impl fmt::Display for AutoDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "inner {} · eps^{} · tau^{} · eta^{}",
            self.inner_witness, self.e_eps, self.e_tau, self.e_eta
        )
    }
}
