use artin_bd::braids::{beta_chain, BraidWord};
use artin_bd::fixed_conjugacy::{
    enumerate_free_words, enumerate_k_words, fixed_by_all, fixed_by_each, fixed_gens,
    in_fixed_subgroup, invariant_up_to_conjugacy, CutSet, DEFAULT_BUDGET,
};
use artin_bd::free_words::{Family, FreeWord, GenSym, Letter};
use artin_bd::involutive_products::{delta_word, embed_g, InvolutiveWord};
use artin_bd::representations::{FiberWord, RepKind, Representation};

/// Every letter sequence over `alphabet` of length at most `max_len`.
fn sequences<T: Clone>(alphabet: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for a in alphabet {
                let mut s = out[i].clone();
                s.push(a.clone());
                out.push(s);
            }
        }
        start = end;
    }
    out
}

#[test]
fn reduce_is_idempotent_on_all_short_sequences() {
    let u = |i, s| Letter::new(GenSym::u(i), s);
    for (alphabet, max_len) in [
        (vec![u(1, 1), u(1, -1)], 20),
        (vec![u(1, 1), u(1, -1), u(2, 1), u(2, -1)], 9),
    ] {
        for s in sequences(&alphabet, max_len) {
            let w = FreeWord::reduce(s.iter().copied()).unwrap();
            assert!(w.len() <= s.len());
            assert_eq!(FreeWord::reduce(w.letters().iter().copied()).unwrap(), w);
        }
    }
}

#[test]
fn k_reduce_reaches_a_fixed_point() {
    for s in sequences(&[1u32, 2, 3], 12) {
        let w = InvolutiveWord::k_reduce(&s, 3).unwrap();
        assert!(w.letters().windows(2).all(|p| p[0] != p[1]), "{s:?}");
        assert_eq!(InvolutiveWord::k_reduce(w.letters(), 3).unwrap(), w);
        assert_eq!(w.len() % 2, s.len() % 2);
    }
}

#[test]
fn g_words_are_recovered_from_their_embedding() {
    for w in enumerate_free_words(Family::G, 3, 8, DEFAULT_BUDGET).unwrap() {
        let k = embed_g(&w, 4).unwrap();
        assert_eq!(k.kappa(), 0);
        assert_eq!(k.express_in_g(), Some(w));
    }
}

#[test]
fn words_fixed_by_every_braid_are_delta_powers() {
    let rep = Representation::new(RepKind::RhoPlus, 3).unwrap();
    let delta = delta_word(3);
    let mut fixed = Vec::new();
    for w in enumerate_k_words(3, 9, DEFAULT_BUDGET).unwrap() {
        if fixed_by_all(&FiberWord::Involutive(w.clone()), &rep).unwrap() {
            fixed.push(w);
        }
    }
    let mut expected: Vec<InvolutiveWord> = (-3..=3).map(|k| delta.pow(k)).collect();
    fixed.sort();
    expected.sort();
    assert_eq!(fixed, expected);
}

/// Some cyclic rotation of the cyclically reduced core lies in the subgroup.
fn conjugate_into_fixed_subgroup(w: &InvolutiveWord, c: &CutSet) -> bool {
    let (_, core) = w.cyclic_reduce();
    let l = core.letters();
    (0..l.len().max(1)).any(|shift| {
        let rotated: Vec<u32> = l[shift..].iter().chain(&l[..shift]).copied().collect();
        in_fixed_subgroup(&InvolutiveWord::k_reduce(&rotated, c.n()).unwrap(), c)
    })
}

#[test]
fn fixed_subgroups_of_parabolic_subgroups() {
    for n in [3, 4] {
        let rep = Representation::new(RepKind::RhoPlus, n).unwrap();
        let words = enumerate_k_words(n, 8, DEFAULT_BUDGET).unwrap();
        for c in CutSet::all(n) {
            let t = c.t_generators();
            let gens = fixed_gens(&c);
            let mut alphabet = gens.clone();
            alphabet.extend(gens.iter().map(|g| g.inverse()));
            for s in sequences(&alphabet, 4) {
                let product = s
                    .iter()
                    .fold(InvolutiveWord::identity(n), |acc, g| acc.mul(g).unwrap());
                assert!(fixed_by_each(&FiberWord::Involutive(product.clone()), &rep, &t).unwrap());
                assert!(in_fixed_subgroup(&product, &c));
            }
            for w in &words {
                let fw = FiberWord::Involutive(w.clone());
                let fixed = fixed_by_each(&fw, &rep, &t).unwrap();
                assert_eq!(
                    fixed,
                    in_fixed_subgroup(w, &c),
                    "n={n} cuts={:?} w={w}",
                    c.cuts()
                );
                let invariant = invariant_up_to_conjugacy(&fw, &rep, &t).unwrap();
                assert_eq!(
                    invariant,
                    conjugate_into_fixed_subgroup(w, &c),
                    "n={n} cuts={:?} w={w}",
                    c.cuts()
                );
            }
        }
    }
}

#[test]
fn beta_shifts_the_g_basis_and_fixes_x() {
    for n in [5, 7] {
        let rep = Representation::new(RepKind::RhoDg, n).unwrap();
        let beta = beta_chain(n).unwrap();
        let g = |i: u32| FreeWord::generator(GenSym::g(i));
        for i in 1..=(n as u32 - 3) {
            assert_eq!(
                rep.apply_free(&beta, &g(i)).unwrap(),
                g(i + 1),
                "n={n} i={i}"
            );
        }
        let x = (1..=n as u32 - 2)
            .step_by(2)
            .fold(FreeWord::identity(), |acc, i| acc.mul(&g(i)).unwrap());
        assert_eq!(rep.apply_free(&beta, &x).unwrap(), x, "n={n}");
    }
}

#[test]
fn beta_chain_is_the_positive_product() {
    assert_eq!(
        beta_chain(5).unwrap(),
        BraidWord::parse("a1 a2 a3", 5).unwrap()
    );
}
