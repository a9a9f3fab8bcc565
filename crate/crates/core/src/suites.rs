//! Exhaustive and randomized verification suites.
//!
//! Each suite returns a [`VerifyReport`] listing every counterexample found.
//! Work is spread over the rayon pool; results are gathered in input order,
//! so reports do not depend on the number of threads.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braids::{beta0, zeta, BraidWord};
use crate::error::{Error, Result};
use crate::fixed_conjugacy::{
    braid_invariant_classify, conj_to_delta_power, conj_to_u0_power, dyer_grossman_classify,
    enumerate_braid_words, enumerate_free_words, enumerate_k_words, fixed_by_all,
    invariant_up_to_conjugacy, u0_word, ConjugacyClass, DEFAULT_BUDGET,
};
use crate::free_words::{lemma_fourth_eval, Family, FreeWord, GenSym, Letter};
use crate::involutive_products::{delta_word, InvolutiveWord};
use crate::rank2::{AutoDescriptor, Rank2Group, Rank2Map, SpecialAuto};
use crate::representations::{FiberWord, RepKind, Representation};
use crate::semidirect::{
    center_element, embed_d_in_k, eps_n, evaluate, generators, phi, presentation_relations, psi,
    sd_commute, sd_conjugate, sd_equal, sd_multiply, tau_n, x0_word, FlavorTag, GroupFlavor,
    SemidirectElement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    BraidRelations,
    PhiPsi,
    ZetaInner,
    Center,
    DeltaKey,
    DyerGrossman,
    Faithfulness,
    X0Fixed,
    Beta0,
    SpecialAutos,
    LemmaFourth,
    Rank2Closure,
    Rank2Out,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::BraidRelations,
        Suite::PhiPsi,
        Suite::ZetaInner,
        Suite::Center,
        Suite::DeltaKey,
        Suite::DyerGrossman,
        Suite::Faithfulness,
        Suite::X0Fixed,
        Suite::Beta0,
        Suite::SpecialAutos,
        Suite::LemmaFourth,
        Suite::Rank2Closure,
        Suite::Rank2Out,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BraidRelations => "braid-relations",
            Suite::PhiPsi => "phi-psi",
            Suite::ZetaInner => "zeta-inner",
            Suite::Center => "center",
            Suite::DeltaKey => "deltakey",
            Suite::DyerGrossman => "dyer-grossman",
            Suite::Faithfulness => "faithfulness",
            Suite::X0Fixed => "x0-fixed",
            Suite::Beta0 => "beta0",
            Suite::SpecialAutos => "special-autos",
            Suite::LemmaFourth => "lemma-fourth",
            Suite::Rank2Closure => "rank2-closure",
            Suite::Rank2Out => "rank2-out",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite '{s}'")))
    }
}

/// Knobs for a suite run. `None` selects the suite's default range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n: Option<usize>,
    pub m: Option<u32>,
    pub len: Option<usize>,
    pub rep: Option<RepKind>,
    pub flavor: Option<FlavorTag>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub budget: u128,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: None,
            m: None,
            len: None,
            rep: None,
            flavor: None,
            samples: None,
            seed: 0x5eed,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Parameters actually used by a run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub n: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub m: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub len: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rep: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flavor: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub params: ReportParams,
    pub checked: u64,
    pub failures: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checks, {} failures)",
            self.suite,
            if self.pass { "pass" } else { "FAIL" },
            self.checked,
            self.failures.len()
        )?;
        if let Some(ms) = self.wall_time_ms {
            write!(f, " in {ms} ms")?;
        }
        for failure in &self.failures {
            write!(f, "\n  {failure}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn absorb(&mut self, checked: u64, failures: Vec<String>) {
        self.checked += checked;
        self.failures.extend(failures);
    }

    /// Runs `test` over `items` in parallel; `test` returns a counterexample.
    fn par_check<T, F>(&mut self, items: &[T], test: F) -> Result<()>
    where
        T: Sync,
        F: Fn(&T) -> Result<Option<String>> + Sync,
    {
        let found: Vec<Option<String>> = items.par_iter().map(&test).collect::<Result<_>>()?;
        self.absorb(items.len() as u64, found.into_iter().flatten().collect());
        Ok(())
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut params = ReportParams::default();
    let mut tally = Tally::default();
    match suite {
        Suite::BraidRelations => braid_relations(cfg, &mut params, &mut tally)?,
        Suite::PhiPsi => phi_psi(cfg, &mut params, &mut tally)?,
        Suite::ZetaInner => zeta_inner(cfg, &mut params, &mut tally)?,
        Suite::Center => center(cfg, &mut params, &mut tally)?,
        Suite::DeltaKey => delta_key(cfg, &mut params, &mut tally)?,
        Suite::DyerGrossman => dyer_grossman(cfg, &mut params, &mut tally)?,
        Suite::Faithfulness => faithfulness(cfg, &mut params, &mut tally)?,
        Suite::X0Fixed => x0_fixed(cfg, &mut params, &mut tally)?,
        Suite::Beta0 => beta0_realization(&mut params, &mut tally)?,
        Suite::SpecialAutos => special_autos(cfg, &mut params, &mut tally)?,
        Suite::LemmaFourth => lemma_fourth(cfg, &mut params, &mut tally)?,
        Suite::Rank2Closure => rank2_closure(cfg, &mut params, &mut tally)?,
        Suite::Rank2Out => rank2_out(cfg, &mut params, &mut tally)?,
    }
    Ok(VerifyReport {
        suite: suite.name().to_string(),
        params,
        checked: tally.checked,
        pass: tally.failures.is_empty(),
        failures: tally.failures,
        wall_time_ms: Some(start.elapsed().as_millis() as u64),
    })
}

fn n_range(cfg: &SuiteConfig, lo: usize, hi: usize) -> Vec<usize> {
    cfg.n.map_or_else(|| (lo..=hi).collect(), |n| vec![n])
}

fn rng(cfg: &SuiteConfig, params: &mut ReportParams) -> ChaCha8Rng {
    params.seed = Some(cfg.seed);
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

/// A freely reduced word of exactly `len` letters in `g_1 … g_rank`.
pub fn random_free_word<R: Rng>(rng: &mut R, family: Family, rank: usize, len: usize) -> FreeWord {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(
            GenSym::new(family, rng.gen_range(1..=rank as u32)),
            if rng.gen_bool(0.5) { 1 } else { -1 },
        );
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    FreeWord::reduce_trusted(letters)
}

/// A reduced word of exactly `len` letters in `x_1 … x_n`.
pub fn random_k_word<R: Rng>(rng: &mut R, n: usize, len: usize) -> InvolutiveWord {
    let mut letters: Vec<u32> = Vec::with_capacity(len);
    while letters.len() < len {
        let x = rng.gen_range(1..=n as u32);
        if letters.last() != Some(&x) {
            letters.push(x);
        }
    }
    InvolutiveWord::k_reduce(&letters, n).unwrap()
}

/// A freely reduced braid word of exactly `len` letters.
pub fn random_braid<R: Rng>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let mut letters: Vec<(u32, i8)> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = (
            rng.gen_range(1..n as u32),
            if rng.gen_bool(0.5) { 1 } else { -1 },
        );
        if letters.last() != Some(&(l.0, -l.1)) {
            letters.push(l);
        }
    }
    BraidWord::new(n, &letters).unwrap()
}

/// A product of `len` random generators (or their inverses) of the flavor.
pub fn random_element<R: Rng>(rng: &mut R, flavor: GroupFlavor, len: usize) -> SemidirectElement {
    let gens = generators(flavor);
    let mut acc = SemidirectElement::identity(flavor);
    for _ in 0..len {
        let g = &gens[rng.gen_range(0..gens.len())];
        let g = if rng.gen_bool(0.5) {
            g.clone()
        } else {
            crate::semidirect::sd_invert(g)
        };
        acc = sd_multiply(&acc, &g).unwrap();
    }
    acc
}

/// A random word in the presentation generators `b_i` or `d_i`.
fn random_presentation_word<R: Rng>(rng: &mut R, flavor: GroupFlavor, len: usize) -> FreeWord {
    let family = match flavor.tag {
        FlavorTag::ArtinB => Family::Beta,
        _ => Family::Delta,
    };
    random_free_word(rng, family, flavor.n, len)
}

fn braid_relations(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let reps = cfg.rep.map_or(RepKind::ALL.to_vec(), |r| vec![r]);
    for kind in reps {
        params.rep.push(kind.name().to_string());
        let lo = kind
            .min_strands()
            .max(if kind == RepKind::RhoDv || kind == RepKind::RhoDg {
                4
            } else {
                3
            });
        for n in n_range(cfg, lo, 6) {
            if !params.n.contains(&n) {
                params.n.push(n);
            }
            let rep = Representation::new(kind, n)?;
            let failures = rep.braid_relation_failures();
            tally.absorb(
                ((n - 1) * (n - 2) / 2) as u64,
                failures
                    .iter()
                    .map(|f| format!("{kind} n={n}: {f}"))
                    .collect(),
            );
            tally.check(rep.verify_braid_relations() || !failures.is_empty(), || {
                format!("{kind} n={n}: inverse table does not undo the forward table")
            });
        }
    }
    Ok(())
}

fn flavors(cfg: &SuiteConfig, default: &[FlavorTag]) -> Vec<FlavorTag> {
    cfg.flavor.map_or(default.to_vec(), |f| vec![f])
}

fn flavor_ns(cfg: &SuiteConfig, tag: FlavorTag, hi: usize) -> Vec<usize> {
    let lo = if tag == FlavorTag::ArtinD { 4 } else { 3 };
    n_range(cfg, lo, hi)
}

fn note_flavor(params: &mut ReportParams, tag: FlavorTag, n: usize) {
    if !params.flavor.iter().any(|f| f == tag.name()) {
        params.flavor.push(tag.name().to_string());
    }
    if !params.n.contains(&n) {
        params.n.push(n);
    }
}

fn phi_psi(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let samples = cfg.samples.unwrap_or(500);
    params.samples = Some(samples);
    let mut rng = rng(cfg, params);
    for tag in flavors(cfg, &[FlavorTag::ArtinB, FlavorTag::ArtinD]) {
        if tag == FlavorTag::KSemidirect {
            return Err(Error::UnsupportedFlavor {
                op: "phi-psi",
                flavor: "K".into(),
            });
        }
        for n in flavor_ns(cfg, tag, 6) {
            note_flavor(params, tag, n);
            let flavor = GroupFlavor::new(tag, n)?;
            let family = if tag == FlavorTag::ArtinB {
                Family::Beta
            } else {
                Family::Delta
            };
            // ψ∘φ on the presentation generators, letter for letter
            for i in 1..=n as u32 {
                let s = FreeWord::generator(GenSym::new(family, i));
                let back = psi(&phi(&s, flavor)?)?;
                tally.check(back == s, || format!("{flavor}: psi(phi({s})) = {back}"));
            }
            // φ∘ψ on the semidirect generators
            let gens: Vec<SemidirectElement> = (0..n as u32)
                .map(|j| {
                    if j == 0 {
                        phi(&FreeWord::generator(GenSym::new(family, 1)), flavor)
                    } else {
                        crate::semidirect::section(&BraidWord::generator(n, j, 1)?, flavor)
                    }
                })
                .chain(
                    flavor
                        .representation()
                        .fiber_generators()
                        .into_iter()
                        .map(|f| SemidirectElement::from_fiber(flavor, f)),
                )
                .collect::<Result<_>>()?;
            for g in &gens {
                let back = phi(&psi(g)?, flavor)?;
                tally.check(sd_equal(&back, g)?, || {
                    format!("{flavor}: phi(psi({g})) = {back}")
                });
            }
            // φ kills every defining relation
            let images: Vec<SemidirectElement> = (1..=n as u32)
                .map(|i| phi(&FreeWord::generator(GenSym::new(family, i)), flavor))
                .collect::<Result<_>>()?;
            for (l, r) in presentation_relations(flavor)? {
                let ok = sd_equal(
                    &evaluate(&images, &l, flavor)?,
                    &evaluate(&images, &r, flavor)?,
                )?;
                tally.check(ok, || format!("{flavor}: phi({l}) != phi({r})"));
            }
            let elements: Vec<SemidirectElement> = (0..samples)
                .map(|i| random_element(&mut rng, flavor, 1 + i % 12))
                .collect();
            let words: Vec<FreeWord> = (0..samples)
                .map(|i| random_presentation_word(&mut rng, flavor, 1 + i % 12))
                .collect();
            tally.par_check(&elements, |e| {
                let back = phi(&psi(e)?, flavor)?;
                Ok((!sd_equal(&back, e)?).then(|| format!("{flavor}: phi(psi({e})) = {back}")))
            })?;
            tally.par_check(&words, |w| {
                let image = phi(w, flavor)?;
                let again = phi(&psi(&image)?, flavor)?;
                Ok((!sd_equal(&again, &image)?)
                    .then(|| format!("{flavor}: psi(phi({w})) differs from {w}")))
            })?;
        }
    }
    Ok(())
}

fn zeta_inner(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let samples = cfg.samples.unwrap_or(500);
    let len = cfg.len.unwrap_or(12);
    params.samples = Some(samples);
    params.len = Some(len);
    let mut rng = rng(cfg, params);
    for n in n_range(cfg, 3, 6) {
        params.n.push(n);
        let z = zeta(n)?;
        tally.check(z.length_hom() == (n * (n - 1)) as i64, || {
            format!("n={n}: length of zeta is {}", z.length_hom())
        });
        let rho_b = Representation::new(RepKind::RhoB, n)?;
        let rho_plus = Representation::new(RepKind::RhoPlus, n)?;
        let u0_inv = u0_word(n).inverse();
        let delta_inv = delta_word(n).inverse();
        let mut free: Vec<FreeWord> = (1..=n as u32)
            .map(|j| FreeWord::generator(GenSym::u(j)))
            .collect();
        free.extend((0..samples).map(|i| random_free_word(&mut rng, Family::U, n, 1 + i % len)));
        let mut k: Vec<InvolutiveWord> = (1..=n as u32)
            .map(|j| InvolutiveWord::generator(j, n).unwrap())
            .collect();
        k.extend((0..samples).map(|i| random_k_word(&mut rng, n, 1 + i % len)));
        tally.par_check(&free, |w| {
            let got = rho_b.apply_free(&z, w)?;
            let want = w.conjugate_by(&u0_inv)?;
            Ok((got != want).then(|| format!("rhoB n={n}: zeta({w}) = {got}, expected {want}")))
        })?;
        tally.par_check(&k, |w| {
            let got = rho_plus.apply_k(&z, w)?;
            let want = w.conjugate_by(&delta_inv)?;
            Ok((got != want).then(|| format!("rhoPlus n={n}: zeta({w}) = {got}, expected {want}")))
        })?;
    }
    Ok(())
}

fn center(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let all = [FlavorTag::ArtinB, FlavorTag::ArtinD, FlavorTag::KSemidirect];
    for tag in flavors(cfg, &all) {
        let hi = if tag == FlavorTag::ArtinD { 6 } else { 5 };
        for n in flavor_ns(cfg, tag, hi) {
            note_flavor(params, tag, n);
            let flavor = GroupFlavor::new(tag, n)?;
            let c = center_element(flavor);
            for g in generators(flavor) {
                tally.check(sd_commute(&c, &g)?, || {
                    format!("{flavor}: {c} does not commute with {g}")
                });
            }
        }
    }
    Ok(())
}

fn delta_key(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let n = cfg.n.unwrap_or(3);
    let len = cfg.len.unwrap_or(8);
    params.n.push(n);
    params.len = Some(len);
    let rep = Representation::new(RepKind::RhoPlus, n)?;
    let delta = delta_word(n);
    let words = enumerate_k_words(n, len, cfg.budget)?;
    tally.par_check(&words, |w| {
        let fw = FiberWord::Involutive(w.clone());
        let invariant = braid_invariant_classify(&fw, &rep)?;
        let conj = conj_to_delta_power(w).is_some();
        let fixed = fixed_by_all(&fw, &rep)?;
        let power = {
            let k = (w.len() / n) as i64;
            w.len() % n == 0 && (*w == delta.pow(k) || *w == delta.pow(-k))
        };
        Ok(if invariant != conj {
            Some(format!(
                "{w}: invariant up to conjugacy = {invariant}, conjugate to a delta power = {conj}"
            ))
        } else if fixed != power {
            Some(format!(
                "{w}: fixed by all = {fixed}, a delta power = {power}"
            ))
        } else {
            None
        })
    })
}

fn dyer_grossman(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let n = cfg.n.unwrap_or(3);
    let len = cfg.len.unwrap_or(6);
    params.n.push(n);
    params.len = Some(len);
    let rep = Representation::new(RepKind::RhoB, n)?;
    let squares: Vec<BraidWord> = (1..n as u32)
        .map(|i| BraidWord::generator(n, i, 1).unwrap().pow(2))
        .collect();
    let words = enumerate_free_words(Family::U, n, len, cfg.budget)?;
    tally.par_check(&words, |w| {
        let fw = FiberWord::Free(w.clone());
        let invariant = braid_invariant_classify(&fw, &rep)?;
        let conj = conj_to_u0_power(w, n).is_some();
        let square_invariant = invariant_up_to_conjugacy(&fw, &rep, &squares)?;
        let listed = dyer_grossman_classify(w, n) != ConjugacyClass::Other;
        Ok(if invariant != conj {
            Some(format!(
                "{w}: invariant up to conjugacy = {invariant}, conjugate to a u0 power = {conj}"
            ))
        } else if square_invariant != listed {
            Some(format!(
                "{w}: invariant under squares = {square_invariant}, in the class list = {listed}"
            ))
        } else {
            None
        })
    })
}

fn faithfulness(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let n = cfg.n.unwrap_or(4);
    let len = cfg.len.unwrap_or(6);
    params.n.push(n);
    params.len = Some(len);
    let reps = [RepKind::RhoB, RepKind::RhoDv, RepKind::RhoDg]
        .map(|k| Representation::new(k, n))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    for r in &reps {
        params.rep.push(r.kind().name().to_string());
    }
    let braids = enumerate_braid_words(n, len, cfg.budget)?;
    tally.par_check(&braids, |b| {
        let trivial: Vec<bool> = reps
            .iter()
            .map(|r| Ok(r.generator_images(b)? == r.fiber_generators()))
            .collect::<Result<_>>()?;
        Ok((trivial.iter().any(|&t| t != trivial[0])).then(|| {
            let detail: Vec<String> = reps
                .iter()
                .zip(&trivial)
                .map(|(r, t)| format!("{}={t}", r.kind()))
                .collect();
            format!("{b}: acts trivially {}", detail.join(" "))
        }))
    })
}

fn x0_fixed(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    for n in n_range(cfg, 4, 6) {
        params.n.push(n);
        let rep = Representation::new(RepKind::RhoDv, n)?;
        let x0 = FiberWord::Free(x0_word(n)?);
        for i in 1..n as u32 {
            let b = BraidWord::generator(n, i, 1)?;
            let image = rep.apply(&b, &x0)?;
            tally.check(image == x0, || format!("n={n}: alpha{i}({x0}) = {image}"));
        }
    }
    Ok(())
}

fn beta0_realization(params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let n = 4;
    params.n.push(n);
    let rep = Representation::new(RepKind::RhoDg, n)?;
    let b = beta0();
    let g = |i: u32| FreeWord::generator(GenSym::g(i));
    let g13 = g(1).mul_trusted(&g(3));
    for i in 1..=3 {
        let got = rep.apply_free(&b, &g(i))?;
        let want = g(i).inverse().mul_trusted(&g13);
        tally.check(got == want, || {
            format!("beta0(g{i}) = {got}, expected {want}")
        });
    }
    Ok(())
}

type ElementMap = fn(&SemidirectElement) -> Result<SemidirectElement>;

fn special_autos(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let samples = cfg.samples.unwrap_or(200);
    params.samples = Some(samples);
    let mut rng = rng(cfg, params);
    let all = [FlavorTag::ArtinB, FlavorTag::ArtinD, FlavorTag::KSemidirect];
    for tag in flavors(cfg, &all) {
        let lo = if tag == FlavorTag::ArtinD { 4 } else { 3 };
        for n in n_range(cfg, lo.max(4), 6) {
            note_flavor(params, tag, n);
            let flavor = GroupFlavor::new(tag, n)?;
            let pairs: Vec<(SemidirectElement, SemidirectElement)> = (0..samples)
                .map(|i| {
                    (
                        random_element(&mut rng, flavor, 1 + i % 8),
                        random_element(&mut rng, flavor, 1 + (i / 8) % 8),
                    )
                })
                .collect();
            let mut maps: Vec<(&str, ElementMap)> = vec![("eps", eps_n)];
            if tag != FlavorTag::ArtinB {
                maps.push(("tau", tau_n));
            }
            for (name, f) in maps {
                tally.par_check(&pairs, |(x, y)| {
                    let fx = f(x)?;
                    if !sd_equal(&f(&fx)?, x)? {
                        return Ok(Some(format!("{flavor}: {name} is not involutive on {x}")));
                    }
                    let lhs = f(&sd_multiply(x, y)?)?;
                    let rhs = sd_multiply(&fx, &f(y)?)?;
                    Ok((!sd_equal(&lhs, &rhs)?)
                        .then(|| format!("{flavor}: {name} is not multiplicative on {x}, {y}")))
                })?;
            }
            if tag == FlavorTag::ArtinD {
                let kflavor = GroupFlavor::k_semidirect(n)?;
                let x1 = SemidirectElement::from_fiber(
                    kflavor,
                    FiberWord::Involutive(InvolutiveWord::generator(1, n)?),
                )?;
                tally.par_check(&pairs, |(x, _)| {
                    let lhs = embed_d_in_k(&tau_n(x)?)?;
                    let rhs = sd_conjugate(&embed_d_in_k(x)?, &x1)?;
                    Ok((!sd_equal(&lhs, &rhs)?)
                        .then(|| format!("{flavor}: tau({x}) is not conjugation by x1")))
                })?;
            }
        }
    }
    Ok(())
}

fn lemma_fourth(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let len = cfg.len.unwrap_or(6);
    params.len = Some(len);
    let words: Vec<FreeWord> = enumerate_free_words(Family::S, 2, len, cfg.budget)?
        .into_iter()
        .filter(|w| !w.is_identity())
        .map(|w| {
            FreeWord::reduce_trusted(w.letters().iter().map(|l| {
                let family = if l.gen.index == 1 {
                    Family::S
                } else {
                    Family::T
                };
                Letter::new(GenSym::new(family, 1), l.sign)
            }))
        })
        .collect();
    tally.par_check(&words, |w| {
        let (product, trivial) = lemma_fourth_eval(w)?;
        Ok(trivial.then(|| format!("{w}: w(x,xy) w(y,xy) = {product}")))
    })
}

fn m_range(cfg: &SuiteConfig) -> Vec<u32> {
    cfg.m.map_or_else(|| (3..=6).collect(), |m| vec![m])
}

/// Longest word the rewriting closure may pass through.
pub const CLOSURE_LMAX: usize = 10;

fn rank2_closure(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let len = cfg.len.unwrap_or(6);
    params.len = Some(len);
    for m in m_range(cfg) {
        params.m.push(m);
        let g = Rank2Group::new(m)?;
        let classes = g.closure_classes(len, CLOSURE_LMAX.max(len))?;
        let nfs: Vec<_> = classes
            .par_iter()
            .map(|(w, _)| g.normal_form(w))
            .collect::<Result<_>>()?;
        // partitions agree iff the map class id -> normal form is a bijection
        let mut by_class = std::collections::HashMap::new();
        let mut by_nf = std::collections::HashMap::new();
        for ((w, class), nf) in classes.iter().zip(&nfs) {
            tally.checked += 1;
            let first_nf = by_class.entry(*class).or_insert((w, nf));
            if first_nf.1 != nf {
                tally.failures.push(format!(
                    "m={m}: {} and {w} are equal by rewriting but have normal forms {} and {}",
                    first_nf.0,
                    g.format_nf(first_nf.1),
                    g.format_nf(nf)
                ));
            }
            let first_class = by_nf.entry(nf).or_insert((w, *class));
            if first_class.1 != *class {
                tally.failures.push(format!(
                    "m={m}: {} and {w} share the normal form {} but are not joined by rewriting",
                    first_class.0,
                    g.format_nf(nf)
                ));
            }
        }
    }
    Ok(())
}

fn random_descriptor<R: Rng>(rng: &mut R, g: &Rank2Group) -> AutoDescriptor {
    let len = rng.gen_range(0..=6);
    let w = random_free_word(rng, Family::A, 2, len);
    let w = FreeWord::reduce_trusted(w.letters().iter().map(|l| {
        let family = if l.gen.index == 1 {
            Family::A
        } else {
            Family::B
        };
        Letter::new(GenSym::new(family, 1), l.sign)
    }));
    AutoDescriptor {
        inner_witness: w,
        e_eps: rng.gen_range(0..=1),
        e_tau: rng.gen_range(0..=1),
        e_eta: if g.is_odd() { 0 } else { rng.gen_range(-5..=5) },
    }
}

fn rank2_out(cfg: &SuiteConfig, params: &mut ReportParams, tally: &mut Tally) -> Result<()> {
    let samples = cfg.samples.unwrap_or(200);
    params.samples = Some(samples);
    let mut rng = rng(cfg, params);
    for m in m_range(cfg) {
        params.m.push(m);
        let g = Rank2Group::new(m)?;
        let auto = |s| g.special_auto(s);
        let id = Rank2Map::new(crate::rank2::parse_std("a")?, crate::rank2::parse_std("b")?);
        let eps = auto(SpecialAuto::Eps)?;
        let tau = auto(SpecialAuto::Tau)?;
        for (name, f) in [("eps", &eps), ("tau", &tau)] {
            tally.check(g.preserves_relation(f)?, || {
                format!("m={m}: {name} breaks the relation")
            });
            tally.check(g.maps_equal(&f.compose(f)?, &id)?, || {
                format!("m={m}: {name}^2 != id")
            });
        }
        if g.is_odd() {
            let dc = auto(SpecialAuto::DeltaConj)?;
            tally.check(g.maps_equal(&tau, &dc)?, || {
                format!("m={m}: tau != Delta-conjugation")
            });
        } else {
            let eta = auto(SpecialAuto::Eta)?;
            let eta_inv = auto(SpecialAuto::EtaInv)?;
            tally.check(g.preserves_relation(&eta)?, || {
                format!("m={m}: eta breaks the relation")
            });
            tally.check(g.maps_equal(&eta.compose(&eta_inv)?, &id)?, || {
                format!("m={m}: eta eta^-1 != id")
            });
            let tet = tau.compose(&eta)?.compose(&tau)?;
            tally.check(g.maps_equal(&tet, &eta_inv)?, || {
                format!("m={m}: tau eta tau != eta^-1")
            });
            tally.check(
                g.maps_equal(&eps.compose(&eta)?, &eta.compose(&eps)?)?,
                || format!("m={m}: eps and eta do not commute"),
            );
            // η^t(β): word length grows strictly and the class is read back
            let mut power = id.clone();
            let mut last_len = crate::rank2::parse_std("b")?.len();
            for t in 1..=10 {
                power = eta.compose(&power)?;
                let len = power.second.len();
                tally.check(len > last_len, || {
                    format!("m={m}: |eta^{t}(b)| = {len} does not grow")
                });
                last_len = len;
                let d = g.classify_auto(&power.first, &power.second)?;
                tally.check(d.e_eta == t && d.e_eps == 0 && d.e_tau == 0, || {
                    format!("m={m}: eta^{t} classified as {d}")
                });
            }
        }
        tally.check(
            g.maps_equal(&eps.compose(&tau)?, &tau.compose(&eps)?)?,
            || format!("m={m}: eps and tau do not commute"),
        );
        let descriptors: Vec<AutoDescriptor> = (0..samples)
            .map(|_| random_descriptor(&mut rng, &g))
            .collect();
        let results: Vec<Result<(AutoDescriptor, AutoDescriptor)>> = descriptors
            .par_iter()
            .map(|d| {
                let f = g.build_auto(d)?;
                Ok((d.clone(), g.classify_auto(&f.first, &f.second)?))
            })
            .collect();
        let mut outer_seen = std::collections::BTreeSet::new();
        for r in results {
            let (d, back) = match r {
                Ok(x) => x,
                Err(e) => {
                    tally.check(false, || format!("m={m}: round trip failed: {e}"));
                    continue;
                }
            };
            outer_seen.insert((back.e_eps, back.e_tau, back.e_eta));
            let same_map = g.maps_equal(&g.build_auto(&d)?, &g.build_auto(&back)?)?;
            let outer_ok = if g.is_odd() {
                back.e_tau == 0 && back.e_eta == 0
            } else {
                (back.e_eps, back.e_tau, back.e_eta) == (d.e_eps, d.e_tau, d.e_eta)
            };
            let witness_ok = g.is_odd() && d.e_tau == 1
                || g.normal_form(&back.inner_witness)?.residue
                    == g.normal_form(&d.inner_witness)?.residue;
            tally.check(same_map && outer_ok && witness_ok, || {
                format!("m={m}: {d} reclassified as {back}")
            });
        }
        if g.is_odd() {
            let expected: std::collections::BTreeSet<_> = [(0, 0, 0), (1, 0, 0)].into();
            tally.check(outer_seen == expected, || {
                format!("m={m}: outer classes realized {outer_seen:?}")
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite, cfg: SuiteConfig) -> VerifyReport {
        let r = run_suite(suite, &cfg).unwrap();
        assert!(r.pass, "{r}");
        r
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        let small = SuiteConfig {
            n: Some(4),
            len: Some(4),
            samples: Some(20),
            m: Some(4),
            ..SuiteConfig::default()
        };
        for s in Suite::ALL {
            let r = quick(s, small.clone());
            assert!(r.checked > 0, "{s}");
        }
    }

    #[test]
    fn reports_are_deterministic_across_pools() {
        let cfg = SuiteConfig {
            n: Some(3),
            len: Some(5),
            ..SuiteConfig::default()
        };
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let mut a = one.install(|| run_suite(Suite::DeltaKey, &cfg)).unwrap();
        let mut b = run_suite(Suite::DeltaKey, &cfg).unwrap();
        a.wall_time_ms = None;
        b.wall_time_ms = None;
        assert_eq!(a, b);
    }

    #[test]
    fn broken_representation_is_reported() {
        let rep = Representation::new(RepKind::RhoB, 3)
            .unwrap()
            .with_image(1, 1, 1, FiberWord::Free(FreeWord::generator(GenSym::u(1))))
            .unwrap();
        assert!(!rep.verify_braid_relations());
    }
}
