use std::collections::BTreeMap;

use artin_bd::braids::BraidWord;
use artin_bd::fixed_conjugacy::{conj_to_delta_power, u0_word};
use artin_bd::free_words::{Family, FreeWord, GenSym, Letter};
use artin_bd::involutive_products::{
    delta_word, embed_g, embed_v, v_to_g, FactorPartition, InvolutiveWord,
};
use artin_bd::rank2::{AutoDescriptor, Rank2Group};
use artin_bd::representations::{IntegerMatrix, RepKind, Representation};
use artin_bd::semidirect::{
    coxeter_project, eps_n, pi, sd_equal, sd_invert, sd_multiply, tau_n, FlavorTag, GroupFlavor,
};
use artin_bd::suites::{random_element, random_free_word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letters(family: Family, rank: u32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..=rank, any::<bool>()), 0..=max_len).prop_map(move |v| {
        v.into_iter()
            .map(|(i, s)| Letter::new(GenSym::new(family, i), if s { 1 } else { -1 }))
            .collect()
    })
}

fn u_word(rank: u32, max_len: usize) -> impl Strategy<Value = FreeWord> {
    letters(Family::U, rank, max_len).prop_map(|l| FreeWord::reduce(l).unwrap())
}

fn k_word(n: usize, max_len: usize) -> impl Strategy<Value = InvolutiveWord> {
    prop::collection::vec(1..=n as u32, 0..=max_len)
        .prop_map(move |raw| InvolutiveWord::k_reduce(&raw, n).unwrap())
}

fn braid(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n as u32, any::<bool>()), 0..=max_len).prop_map(move |v| {
        let l: Vec<(u32, i8)> = v
            .into_iter()
            .map(|(i, s)| (i, if s { 1 } else { -1 }))
            .collect();
        BraidWord::new(n, &l).unwrap()
    })
}

fn ab_word(max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(0u8..4, 0..=max_len).prop_map(|v| {
        FreeWord::reduce(v.into_iter().map(|x| {
            let family = if x < 2 { Family::A } else { Family::B };
            Letter::new(GenSym::new(family, 1), if x % 2 == 0 { 1 } else { -1 })
        }))
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduce_is_idempotent_and_shortens(l in letters(Family::U, 3, 20)) {
        let w = FreeWord::reduce(l.clone()).unwrap();
        prop_assert!(w.len() <= l.len());
        prop_assert_eq!(FreeWord::reduce(w.letters().to_vec()).unwrap(), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    }

    #[test]
    fn conjugacy_witnesses_are_exact(w in u_word(3, 10), c in u_word(3, 6), d in u_word(3, 6)) {
        let w2 = w.conjugate_by(&c).unwrap();
        let w3 = w2.conjugate_by(&d).unwrap();
        prop_assert!(w.is_conjugate(&w));
        prop_assert!(w.is_conjugate(&w2) && w2.is_conjugate(&w));
        prop_assert!(w.is_conjugate(&w3));
        let x = w.conjugacy_witness(&w3).unwrap();
        prop_assert_eq!(w.conjugate_by(&x).unwrap(), w3);
    }

    #[test]
    fn abelianize_is_additive(w1 in u_word(4, 12), w2 in u_word(4, 12)) {
        let sum = w1.abelianize(4).unwrap().add(&w2.abelianize(4).unwrap());
        prop_assert_eq!(w1.mul(&w2).unwrap().abelianize(4).unwrap(), sum);
    }

    #[test]
    fn nielsen_move_and_inverse_compose_to_identity(w in u_word(3, 12), i in 1u32..=3, j in 1u32..=3) {
        prop_assume!(i != j);
        let (ui, uj) = (FreeWord::generator(GenSym::u(i)), FreeWord::generator(GenSym::u(j)));
        let table = |image: FreeWord| -> BTreeMap<GenSym, FreeWord> {
            (1..=3)
                .map(|t| (GenSym::u(t), if t == i { image.clone() } else { FreeWord::generator(GenSym::u(t)) }))
                .collect()
        };
        let forward = table(ui.mul(&uj).unwrap());
        let backward = table(ui.mul(&uj.inverse()).unwrap());
        let there = w.apply_endomorphism(&forward).unwrap();
        prop_assert_eq!(there.apply_endomorphism(&backward).unwrap(), w);
    }

    #[test]
    fn k_reduce_leaves_no_adjacent_repeats(w in k_word(5, 30)) {
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1]));
        prop_assert_eq!(InvolutiveWord::k_reduce(w.letters(), 5).unwrap(), w);
    }

    #[test]
    fn kappa_is_a_homomorphism(w1 in k_word(4, 15), w2 in k_word(4, 15)) {
        prop_assert_eq!(w1.mul(&w2).unwrap().kappa(), w1.kappa() ^ w2.kappa());
    }

    #[test]
    fn v_and_g_embeddings_agree(n in 3usize..=6, seed in any::<u64>(), len in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_free_word(&mut rng, Family::V, n - 1, len);
        prop_assert_eq!(embed_v(&w, n).unwrap(), embed_g(&v_to_g(&w).unwrap(), n).unwrap());
    }

    #[test]
    fn syllables_concatenate_back(w in k_word(5, 20), cuts in prop::sample::subsequence(vec![1usize, 2, 3, 4], 0..=4)) {
        let p = FactorPartition::from_cuts(5, &cuts).unwrap();
        let mut acc = InvolutiveWord::identity(5);
        for (block, syl) in w.syllable_decompose(&p) {
            prop_assert!(syl.letters().iter().all(|&x| p.block_of(x) == block));
            acc = acc.mul(&syl).unwrap();
        }
        prop_assert_eq!(acc, w);
    }

    #[test]
    fn perm_image_respects_concatenation(b1 in braid(5, 12), b2 in braid(5, 12)) {
        let joined = b1.mul(&b2).unwrap().perm_image();
        prop_assert_eq!(joined, b1.perm_image().compose(&b2.perm_image()));
    }

    #[test]
    fn braids_fix_u0_and_delta(b in braid(5, 15)) {
        let rho_b = Representation::new(RepKind::RhoB, 5).unwrap();
        let rho_plus = Representation::new(RepKind::RhoPlus, 5).unwrap();
        prop_assert_eq!(rho_b.apply_free(&b, &u0_word(5)).unwrap(), u0_word(5));
        prop_assert_eq!(rho_plus.apply_k(&b, &delta_word(5)).unwrap(), delta_word(5));
    }

    #[test]
    fn action_is_by_automorphisms(b in braid(4, 10), w1 in u_word(4, 8), w2 in u_word(4, 8)) {
        let rho = Representation::new(RepKind::RhoB, 4).unwrap();
        let img = |w: &FreeWord| rho.apply_free(&b, w).unwrap();
        prop_assert_eq!(img(&w1.mul(&w2).unwrap()), img(&w1).mul(&img(&w2)).unwrap());
        prop_assert_eq!(rho.apply_free(&b.inverse(), &img(&w1)).unwrap(), w1);
    }

    #[test]
    fn homology_of_rho_b_is_the_permutation(b in braid(5, 15)) {
        let rho = Representation::new(RepKind::RhoB, 5).unwrap();
        let expected = IntegerMatrix::permutation(b.perm_image().images());
        prop_assert_eq!(rho.homology_matrix(&b).unwrap(), expected);
    }

    #[test]
    fn delta_power_found_on_conjugates(k in -3i64..=3, c in k_word(4, 8)) {
        let w = delta_word(4).pow(k).conjugate_by(&c).unwrap();
        let found = conj_to_delta_power(&w).unwrap();
        prop_assert_eq!(delta_word(4).pow(found), delta_word(4).pow(k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn semidirect_arithmetic(seed in any::<u64>(), tag in 0usize..3, n in 4usize..=5) {
        let flavor = [FlavorTag::ArtinB, FlavorTag::ArtinD, FlavorTag::KSemidirect].map(|t| GroupFlavor::new(t, n).unwrap())[tag];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = [0, 1, 2].map(|_| random_element(&mut rng, flavor, 6));
        let left = sd_multiply(&sd_multiply(&x, &y).unwrap(), &z).unwrap();
        let right = sd_multiply(&x, &sd_multiply(&y, &z).unwrap()).unwrap();
        prop_assert!(sd_equal(&left, &right).unwrap());
        let xy = sd_multiply(&x, &y).unwrap();
        prop_assert!(sd_equal(&sd_multiply(&x, &sd_invert(&x)).unwrap(), &artin_bd::semidirect::SemidirectElement::identity(flavor)).unwrap());
        prop_assert_eq!(pi(&xy), pi(&x).mul(&pi(&y)).unwrap());
        prop_assert_eq!(coxeter_project(&xy), coxeter_project(&x).compose(&coxeter_project(&y)));
    }

    #[test]
    fn special_automorphisms_are_involutive_homomorphisms(seed in any::<u64>(), n in 4usize..=6) {
        let flavor = GroupFlavor::artin_d(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&mut rng, flavor, 6);
        let y = random_element(&mut rng, flavor, 6);
        for f in [eps_n, tau_n] {
            prop_assert!(sd_equal(&f(&f(&x).unwrap()).unwrap(), &x).unwrap());
            let lhs = f(&sd_multiply(&x, &y).unwrap()).unwrap();
            let rhs = sd_multiply(&f(&x).unwrap(), &f(&y).unwrap()).unwrap();
            prop_assert!(sd_equal(&lhs, &rhs).unwrap());
        }
    }

    #[test]
    fn rank2_normal_form_is_canonical(m in 3u32..=8, w1 in ab_word(14), w2 in ab_word(14)) {
        let g = Rank2Group::new(m).unwrap();
        let c1 = g.canonical(&w1).unwrap();
        prop_assert_eq!(g.canonical(&c1).unwrap(), c1.clone());
        let joined = g.normal_form(&w1.mul(&w2).unwrap()).unwrap();
        let via_canonical = g.normal_form(&c1.mul(&g.canonical(&w2).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(joined, via_canonical);
        prop_assert!(g.nf_equal(&w1.mul(&w1.inverse()).unwrap(), &FreeWord::identity()).unwrap());
        let back = g.std_to_ab(&g.ab_to_std(&w1).unwrap()).unwrap();
        prop_assert!(g.nf_equal(&back, &w1).unwrap());
    }

    #[test]
    fn rank2_descriptors_round_trip(m in 3u32..=8, w in ab_word(6), e_eps in 0u8..=1, e_tau in 0u8..=1, e_eta in -5i64..=5) {
        let g = Rank2Group::new(m).unwrap();
        let d = AutoDescriptor {
            inner_witness: w,
            e_eps,
            e_tau,
            e_eta: if g.is_odd() { 0 } else { e_eta },
        };
        let f = g.build_auto(&d).unwrap();
        let back = g.classify_auto(&f.first, &f.second).unwrap();
        prop_assert!(g.maps_equal(&f, &g.build_auto(&back).unwrap()).unwrap());
        if g.is_odd() {
            prop_assert_eq!((back.e_tau, back.e_eta), (0, 0));
        } else {
            prop_assert_eq!((back.e_eps, back.e_tau, back.e_eta), (d.e_eps, d.e_tau, d.e_eta));
            prop_assert_eq!(g.normal_form(&back.inner_witness).unwrap().residue, g.normal_form(&d.inner_witness).unwrap().residue);
        }
        prop_assert_eq!(g.normal_form(&back.inner_witness).unwrap().c_exp, 0);
    }
}
