use dmr_core::cyclo::CycContext;
use dmr_core::dist::{map_f_d, map_id_star, map_id_star_tilde, map_pd_star, map_pd_star_tilde, DistCorrection, DivisorContext};
use dmr_core::dshuffle::{
    bracket, dmr_check, dmr_graded_basis, graded_dim, psi_star, psi_star_tilde, DmrOptions, DmrVariant, FieldTag, StarNormalization,
};
use dmr_core::linalg::{invariant_subspace, Matrix};
use dmr_core::maps::{map_f, map_fy};
use dmr_core::numeric::{check_bridge, check_stuffle_numeric, cmzv, CmzvIndex};
use dmr_core::products::{harmonic, ProductKind};
use dmr_core::series::{random_series, RandomSpec};
use dmr_core::words::{y_factor, Alphabet, Word};
use dmr_core::Series;

fn mono(ctx: &dmr_core::cyclo::Ctx, a: Alphabet, d: usize, w: &[u8]) -> Series {
    Series::monomial(ctx, a, d, w, ctx.one())
}

#[test]
fn graded_dimensions_over_both_fields() {
    let opts = DmrOptions::default();
    for n in [3u32, 4] {
        let ctx = CycContext::new(n).unwrap();
        for d in 1..=2 {
            for v in [DmrVariant::DmrMuN, DmrVariant::DmrN] {
                let q = graded_dim(&ctx, d, v, FieldTag::Q, &opts).unwrap();
                let c = graded_dim(&ctx, d, v, FieldTag::QmuN, &opts).unwrap();
                assert_eq!(q, c, "N={} d={} {}", n, d, v.tag());
            }
        }
    }
}

#[test]
fn congruent_degree_one_basis() {
    let ctx = CycContext::new(3).unwrap();
    let b = dmr_graded_basis(&ctx, 1, DmrVariant::DmrN, FieldTag::Q, &DmrOptions::default()).unwrap();
    assert_eq!(b.dim(), 1);
    let v = &b.vectors[0];
    assert!(v.coeff(&[0]).is_zero());
    assert_eq!(v.coeff(&[1]), v.coeff(&[2]));
    assert_eq!(&v.coeff(&[3]) + &v.coeff(&[1]).scale_int(&2.into()), ctx.zero());
}

#[test]
fn printed_star_normalization_breaks_transport() {
    // With the extra factor 1/N the congruent harmonic condition no longer
    // matches the classical one from degree 3 on.
    for n in [3u32, 4] {
        let ctx = CycContext::new(n).unwrap();
        let printed = DmrOptions { star: StarNormalization::Printed, ..Default::default() };
        let consistent = DmrOptions::default();
        assert_eq!(graded_dim(&ctx, 3, DmrVariant::DmrN, FieldTag::Q, &consistent).unwrap(), graded_dim(&ctx, 3, DmrVariant::DmrMuN, FieldTag::Q, &consistent).unwrap());
        assert_ne!(graded_dim(&ctx, 3, DmrVariant::DmrN, FieldTag::Q, &printed).unwrap(), graded_dim(&ctx, 3, DmrVariant::DmrMuN, FieldTag::Q, &printed).unwrap());
        let psi = random_series(&ctx, Alphabet::Xt, 3, 11, RandomSpec::default());
        assert_ne!(map_fy(&psi_star_tilde(&psi, StarNormalization::Printed).unwrap()).unwrap(), psi_star(&map_f(&psi).unwrap()).unwrap());
    }
}

#[test]
fn distribution_degree_one_dimensions() {
    let expected = [(3u32, 0usize, 1usize), (4, 0, 1), (5, 1, 2), (6, 0, 2)];
    for (n, literal, kernel) in expected {
        let ctx = CycContext::new(n).unwrap();
        for (corr, want) in [(DistCorrection::ClassZeroLetter, literal), (DistCorrection::Transported, literal), (DistCorrection::Kernel, kernel)] {
            let opts = DmrOptions { correction: corr, ..Default::default() };
            assert_eq!(graded_dim(&ctx, 1, DmrVariant::DmrdMuN, FieldTag::Q, &opts).unwrap(), want, "N={} {:?}", n, corr);
            assert_eq!(graded_dim(&ctx, 1, DmrVariant::DmrdN, FieldTag::Q, &opts).unwrap(), want, "N={} {:?}", n, corr);
        }
    }
}

#[test]
fn distribution_maps_on_letters() {
    let ctx = CycContext::new(4).unwrap();
    let dc = DivisorContext::new(4, 2).unwrap();
    assert_eq!(map_pd_star(&mono(&ctx, Alphabet::X, 2, &[1]), &dc).unwrap(), mono(&ctx, Alphabet::X, 2, &[2]));
    assert!(map_id_star(&mono(&ctx, Alphabet::X, 2, &[1]), &dc).unwrap().is_zero());
    assert_eq!(map_pd_star(&mono(&ctx, Alphabet::X, 2, &[0]), &dc).unwrap(), mono(&ctx, Alphabet::X, 2, &[0]).scale(&ctx.int(2)));
    assert_eq!(map_pd_star_tilde(&mono(&ctx, Alphabet::Xt, 2, &[2]), &dc).unwrap(), mono(&ctx, Alphabet::Xt, 2, &[2]).scale(&ctx.int(2)));
    assert!(map_pd_star_tilde(&mono(&ctx, Alphabet::Xt, 2, &[1]), &dc).unwrap().is_zero());
    assert_eq!(map_id_star_tilde(&mono(&ctx, Alphabet::Xt, 2, &[1]), &dc).unwrap(), mono(&ctx, Alphabet::Xt, 2, &[2]));
    assert_eq!(map_f_d(&mono(&ctx, Alphabet::Xt, 2, &[0]), &dc).unwrap(), mono(&ctx, Alphabet::X, 2, &[0]));
}

#[test]
fn bracket_is_alternating_and_transported() {
    let ctx = CycContext::new(3).unwrap();
    let a = random_series(&ctx, Alphabet::Xt, 4, 5, RandomSpec::default());
    let b = random_series(&ctx, Alphabet::Xt, 4, 6, RandomSpec::default());
    assert!(bracket(&a, &a).unwrap().is_zero());
    assert_eq!(map_f(&bracket(&a, &b).unwrap()).unwrap(), bracket(&map_f(&a).unwrap(), &map_f(&b).unwrap()).unwrap());
}

#[test]
fn member_report_fields() {
    let ctx = CycContext::new(4).unwrap();
    let b = dmr_graded_basis(&ctx, 2, DmrVariant::DmrMuN, FieldTag::Q, &DmrOptions::default()).unwrap();
    let r = dmr_check(&b.vectors[0], DmrVariant::DmrMuN, &DmrOptions::default()).unwrap();
    assert!(r.is_member());
    let j = r.to_json();
    assert_eq!(j["member"], true);
    assert_eq!(j["variant"], "dmr0-muN");
    let bad = b.vectors[0].add(&mono(&ctx, Alphabet::X, 2, &[1, 2])).unwrap();
    let r = dmr_check(&bad, DmrVariant::DmrMuN, &DmrOptions::default()).unwrap();
    assert!(!r.cond_ii());
    assert!(r.shuffle_witness.is_some());
}

#[test]
fn invariant_subspace_of_a_swap() {
    let swap = Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    assert_eq!(invariant_subspace(&[swap]).unwrap().len(), 2);
    assert_eq!(invariant_subspace(&[Matrix::identity(4)]).unwrap().len(), 4);
}

#[test]
fn stuffle_terms_match_numeric_identity() {
    let (u, v) = (y_factor(&[1]).unwrap(), y_factor(&[2]).unwrap());
    let p = harmonic(&u, &v, ProductKind::HarmonicY, 3).unwrap();
    let mut words: Vec<Word> = p.keys().map(dmr_core::words::y_embed).collect();
    words.sort();
    assert_eq!(words, vec![Word::from_slice(&[0, 3]), Word::from_slice(&[1, 2]), Word::from_slice(&[2, 1])]);
    assert!(check_stuffle_numeric(3, 1, 2, 100_000, 1e-5).unwrap().pass);
}

#[test]
fn numeric_examples() {
    let r = check_bridge(&CmzvIndex::new(4, vec![3], vec![2]).unwrap(), 100_000, 1e-8).unwrap();
    assert!(r.residual <= 1e-8);
    let a = cmzv(&CmzvIndex::new(3, vec![2, 1], vec![1, 2]).unwrap(), 50_000);
    let b = cmzv(&CmzvIndex::new(3, vec![2, 1], vec![1, 2]).unwrap(), 100_000);
    assert!((a.value - b.value).abs() <= a.bound + b.bound);
}
