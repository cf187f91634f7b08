use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dmr_core::cyclo::{CycContext, GaloisElement};
use dmr_core::dshuffle::{dmr_check, DmrOptions, DmrVariant};
use dmr_core::linalg::{kernel_basis, mat_vec, rank, Matrix, Rationals};
use dmr_core::maps::{galois_act, map_f, map_f_inv, map_p, map_q, GaloisVariant};
use dmr_core::numeric::{cmzv, mpv, CmzvIndex, MpvIndex};
use dmr_core::products::{harmonic, shuffle, ProductKind};
use dmr_core::series::{deserialize, random_coeff, random_series, serialize, RandomSpec};
use dmr_core::words::{y_factor, Alphabet, Word};

fn spec(rational: bool) -> RandomSpec {
    RandomSpec { rational, ..Default::default() }
}

fn word(max_code: u8, len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..=max_code, 0..=len).prop_map(|v| Word::from_slice(&v))
}

fn y_word(n: u8, len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0..3usize, 1..=n), 0..=len).prop_map(|parts| {
        let mut w = Word::new();
        for (zeros, letter) in parts {
            w.extend(std::iter::repeat(0).take(zeros));
            w.push(letter);
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn f_round_trip(n in 3u32..=6, seed in any::<u64>(), rational in any::<bool>()) {
        let ctx = CycContext::new(n).unwrap();
        let f = random_series(&ctx, Alphabet::Xt, 3, seed, spec(rational));
        prop_assert_eq!(map_f_inv(&map_f(&f).unwrap()).unwrap(), f);
        let g = random_series(&ctx, Alphabet::X, 3, seed ^ 1, spec(rational));
        prop_assert_eq!(map_f(&map_f_inv(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn p_and_q_round_trips(n in 3u32..=5, seed in any::<u64>()) {
        let ctx = CycContext::new(n).unwrap();
        let f = random_series(&ctx, Alphabet::X, 4, seed, spec(false));
        prop_assert_eq!(map_p(&map_p(&f, true).unwrap(), false).unwrap(), f.clone());
        let g = random_series(&ctx, Alphabet::Xt, 4, seed, spec(false));
        prop_assert_eq!(map_q(&map_q(&g, false).unwrap(), true).unwrap(), g);
    }

    #[test]
    fn shuffle_is_commutative_and_counts_binomially(u in word(4, 4), v in word(4, 4)) {
        let a = shuffle(&u, &v);
        prop_assert_eq!(&a, &shuffle(&v, &u));
        let total: u64 = a.values().sum();
        let (p, q) = (u.len() as u64, v.len() as u64);
        let binom = (1..=q).fold(1u64, |acc, i| acc * (p + i) / i);
        prop_assert_eq!(total, binom);
    }

    #[test]
    fn shuffle_is_associative(u in word(3, 3), v in word(3, 3), w in word(3, 2)) {
        let mut left = std::collections::BTreeMap::new();
        for (x, a) in shuffle(&u, &v) {
            for (y, b) in shuffle(&x, &w) {
                *left.entry(y).or_insert(0u64) += a * b;
            }
        }
        let mut right = std::collections::BTreeMap::new();
        for (x, a) in shuffle(&v, &w) {
            for (y, b) in shuffle(&u, &x) {
                *right.entry(y).or_insert(0u64) += a * b;
            }
        }
        prop_assert_eq!(left, right);
    }

    #[test]
    fn harmonic_is_commutative(n in 3u8..=5, u in y_word(5, 3), v in y_word(5, 3)) {
        let clamp = |w: &Word| Word::from_iter(w.iter().map(|&c| if c > n { n } else { c }));
        let (u, v) = (clamp(&u), clamp(&v));
        for kind in [ProductKind::HarmonicY, ProductKind::HarmonicYt] {
            let (yu, yv) = (y_factor(&u).unwrap(), y_factor(&v).unwrap());
            prop_assert_eq!(harmonic(&yu, &yv, kind, n as u32).unwrap(), harmonic(&yv, &yu, kind, n as u32).unwrap());
        }
    }

    #[test]
    fn cyclotomic_field_axioms(n in 3u32..=12, seed in any::<u64>()) {
        let ctx = CycContext::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_coeff(&ctx, &mut rng, false), random_coeff(&ctx, &mut rng, false), random_coeff(&ctx, &mut rng, false));
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
        prop_assert_eq!(ctx.mul(&a, &(&b + &c)), &ctx.mul(&a, &b) + &ctx.mul(&a, &c));
        if !a.is_zero() {
            prop_assert!(ctx.mul(&a, &ctx.inv(&a).unwrap()).is_one());
        }
        for sigma in GaloisElement::all(&ctx) {
            prop_assert_eq!(ctx.galois_apply(&sigma, &ctx.mul(&a, &b)), ctx.mul(&ctx.galois_apply(&sigma, &a), &ctx.galois_apply(&sigma, &b)));
        }
    }

    #[test]
    fn galois_intertwining(n in 3u32..=6, seed in any::<u64>()) {
        let ctx = CycContext::new(n).unwrap();
        let f = random_series(&ctx, Alphabet::Xt, 3, seed, spec(false));
        for sigma in GaloisElement::all(&ctx) {
            let lhs = map_f(&galois_act(&f, &sigma, GaloisVariant::DeltaTilde).unwrap()).unwrap();
            let rhs = galois_act(&map_f(&f).unwrap(), &sigma, GaloisVariant::CoeffOnly).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in 1usize..5, cols in 1usize..7, entries in proptest::collection::vec(-3i64..=3, 35)) {
        let data: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| (0..cols).map(|j| BigRational::from_integer(BigInt::from(entries[i * cols + j]))).collect())
            .collect();
        let m = Matrix::from_rows(cols, data).unwrap();
        let ker = kernel_basis(&Rationals, &m);
        prop_assert_eq!(rank(&Rationals, &m) + ker.len(), cols);
        for v in &ker {
            prop_assert!(mat_vec(&Rationals, &m, v).iter().all(|x| *x == BigRational::from_integer(0.into())));
        }
    }

    #[test]
    fn membership_verdicts_transport(n in 3u32..=4, seed in any::<u64>()) {
        let ctx = CycContext::new(n).unwrap();
        let opts = DmrOptions::default();
        let psi = random_series(&ctx, Alphabet::Xt, 3, seed, RandomSpec { density: 2, ..spec(false) });
        let a = dmr_check(&psi, DmrVariant::DmrN, &opts).unwrap();
        let b = dmr_check(&map_f(&psi).unwrap(), DmrVariant::DmrMuN, &opts).unwrap();
        prop_assert_eq!(a.verdicts(), b.verdicts());
    }

    #[test]
    fn serialization_round_trip(n in 3u32..=6, seed in any::<u64>(), rational in any::<bool>()) {
        let ctx = CycContext::new(n).unwrap();
        for a in [Alphabet::X, Alphabet::Xt] {
            let f = random_series(&ctx, a, 3, seed, spec(rational));
            prop_assert_eq!(deserialize(&serialize(&f)).unwrap(), f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn residue_classes_partition_zeta(n in 2u32..=6, k in 2u32..=3) {
        let m = 20_000;
        let total: f64 = (0..n as i64).map(|a| cmzv(&CmzvIndex::new(n, vec![k], vec![a]).unwrap(), m).value).sum();
        let z = mpv(&MpvIndex::new(n, vec![k], vec![0]).unwrap(), m).value.re;
        prop_assert!((total - z).abs() < 1e-12);
    }
}
