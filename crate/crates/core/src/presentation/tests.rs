use super::*;
use crate::envelope::{gr_image, LieContext};
use crate::freealg::Generator;
use crate::gauss::{decompose, Block};
use crate::rtt::YangianContext;

fn setup(s: &str, parts: &str) -> (YangianContext, Composition) {
    let seq: crate::grading::ZeroOneSequence = s.parse().unwrap();
    (YangianContext::new(seq.clone()), Composition::parse(seq, parts).unwrap())
}

fn only_instance(id: RelationId, mu: &Composition, deg: usize, pick: &[(&str, usize)]) -> RelationInstance {
    enumerate_instances(id, mu, deg)
        .unwrap()
        .into_iter()
        .find(|x| pick.iter().all(|&(n, v)| x.get(n) == v))
        .expect("instance exists")
}

#[test]
fn relation_ids_round_trip() {
    for &id in RelationId::ALL {
        assert_eq!(id.as_str().parse::<RelationId>().unwrap(), id);
    }
    assert_eq!("R9.9".parse::<RelationId>(), Err(Error::UnknownRelation("R9.9".into())));
    assert_eq!(RelationId::parse_list("all").unwrap().len(), RelationId::ALL.len());
    assert_eq!(RelationId::defining().count(), 16);
}

#[test]
fn ef_bracket_instance_vanishes() {
    let (ctx, mu) = setup("01", "1,1");
    let factors = decompose(&ctx, &mu, 1).unwrap();
    let gamma = Gamma::new(&ctx, &factors);
    let inst = only_instance(RelationId::R7_6, &mu, 1, &[]);
    assert!(evaluate_under_gamma(&inst, &gamma).unwrap().is_zero());
    // The bracket alone does not vanish, so the check is not vacuous.
    let s = Symbols::new(&mu);
    assert!(!gamma.eval(&Expr::bracket(s.e(1, 1, 1, 1), s.f(1, 1, 1, 1))).unwrap().is_zero());
}

#[test]
fn symmetric_ee_instance_vanishes() {
    let (ctx, mu) = setup("001", "2,1");
    let factors = decompose(&ctx, &mu, 3).unwrap();
    let gamma = Gamma::new(&ctx, &factors);
    let inst = only_instance(RelationId::R7_7, &mu, 2, &[("i", 1), ("h", 1), ("j", 1), ("k", 1), ("r", 2), ("s", 2)]);
    assert!(evaluate_under_gamma(&inst, &gamma).unwrap().is_zero());
}

#[test]
fn sign_error_is_detected() {
    let (ctx, mu) = setup("01", "1,1");
    let factors = decompose(&ctx, &mu, 3).unwrap();
    let gamma = Gamma::new(&ctx, &factors);
    let inst = only_instance(RelationId::R7_6, &mu, 2, &[("r", 2), ("s", 1)]);
    let s = Symbols::new(&mu);
    let good = build_relation(&inst).unwrap();
    let lhs = Expr::bracket(s.e(1, 1, 1, 2), s.f(1, 1, 1, 1));
    // Flipping the right-hand side: residual = 2·lhs instead of 0.
    let rhs = lhs.clone().minus(good);
    let wrong = lhs.clone().plus(rhs);
    assert!(gamma.eval(&build_relation(&inst).unwrap()).unwrap().is_zero());
    assert_eq!(gamma.eval(&wrong).unwrap(), gamma.eval(&lhs).unwrap().scale(&crate::coeff::Coeff::from_int(2)));
}

#[test]
fn under_capped_factors_are_refused() {
    let (ctx, mu) = setup("01", "1,1");
    let factors = decompose(&ctx, &mu, 2).unwrap();
    let gamma = Gamma::new(&ctx, &factors);
    let inst = only_instance(RelationId::R7_6, &mu, 3, &[("r", 3), ("s", 3)]);
    assert_eq!(evaluate_under_gamma(&inst, &gamma), Err(Error::CapTooSmall { given: 2, required: 5 }));
    assert_eq!(required_cap(&[inst]).unwrap(), 5);
}

#[test]
fn series_identities_small() {
    let (ctx, mu) = setup("01", "1,1");
    for id in [RelationId::R3_11, RelationId::R5_8] {
        let report = evaluate_series_identity(id, &ctx, &mu, 3).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.instances > 0);
    }
    let (ctx, mu) = setup("010", "1,1,1");
    let report = evaluate_series_identity(RelationId::R6_1a, &ctx, &mu, 3).unwrap();
    assert!(report.passed(), "{report:?}");
    assert!(matches!(evaluate_series_identity(RelationId::R5_1, &ctx, &mu, 3), Err(Error::Config(_))));
}

#[test]
fn series_form_matches_coefficient_form() {
    // (u - v)[D_1(u), E_1(v)] = RHS; dividing RHS by (u - v) must give the
    // coefficient brackets [D^{(r)}, E^{(s)}] on the certified window.
    let (ctx, mu) = setup("01", "1,1");
    let factors = decompose(&ctx, &mu, 4).unwrap();
    let env = SeriesEnv::new(&ctx, &factors, &['u', 'v'], 4).unwrap();
    let d = env.block(Block::D(1), 1, 1, 'u').unwrap();
    let rhs = env
        .mul(
            &d,
            &env.block(Block::E(1, 2), 1, 1, 'v').unwrap().sub(&env.block(Block::E(1, 2), 1, 1, 'u').unwrap()).unwrap(),
        )
        .unwrap();
    let q = rhs.divide_by_difference('u', 'v').unwrap();
    let gamma = Gamma::new(&ctx, &factors);
    let s = Symbols::new(&mu);
    for r in 1..=2 {
        for t in 1..=2 {
            let direct = gamma.eval(&Expr::bracket(s.d(1, 1, 1, r), s.e(1, 1, 1, t))).unwrap();
            assert_eq!(q.coefficient(&[r as u8, t as u8]).unwrap(), direct, "r={r} s={t}");
        }
    }
}

#[test]
fn verify_streams_in_order() {
    let (ctx, mu) = setup("010", "1,1,1");
    let ids = [RelationId::R7_9, RelationId::R6_1b, RelationId::R5_1];
    let mut seen = Vec::new();
    let summary = verify(&ctx, &mu, &ids, 2, |r| seen.push((r.relation.clone(), r.residual_is_zero))).unwrap();
    assert!(summary.passed());
    assert_eq!(summary.instances, seen.len());
    assert!(seen.iter().position(|(r, _)| r == "R6.1b") > seen.iter().position(|(r, _)| r == "R7.9"));
    assert!(summary.relations["R5.1"].skipped.is_some());
}

#[test]
fn pbw_examples() {
    let (ctx, mu) = setup("01", "1,1");
    let report = pbw_audit(&ctx, &mu, 0, 1).unwrap();
    assert_eq!(report.supermonomials, 4);
    assert_eq!(report.loop_monomials, 4);
    assert!(report.passed(), "{report:?}");

    let factors = decompose(&ctx, &mu, 1).unwrap();
    let gamma = Gamma::new(&ctx, &factors);
    let e = gamma.eval(&Symbols::new(&mu).e(1, 1, 1, 1)).unwrap();
    let loops = LieContext::new(ctx.seq().clone(), true);
    assert_eq!(gr_image(&ctx, &e, 0, &loops).unwrap(), loops.x(1, 2, 0));

    let odd = Generator::e_block(&mu, 1, 2, 1, 1, 1);
    assert!(odd.is_odd());
    assert!(!is_supermonomial(&[odd, odd]));
    let even = Generator::d(&mu, 1, 1, 1, 1);
    assert!(is_supermonomial(&[even, even, odd]));
}

#[test]
fn pbw_window_two() {
    let (ctx, mu) = setup("01", "1,1");
    let report = pbw_audit(&ctx, &mu, 2, 2).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn levi_examples() {
    let (ctx, mu) = setup("010", "1,1,1");
    let report = levi_audit(&ctx, &mu, 2).unwrap();
    assert!(report.passed(), "{report:?}");
    assert!(report.cross_block > 0 && report.same_block > 0 && report.singleton > 0);
    let (ctx, mu) = setup("0101", "2,2");
    assert!(levi_audit(&ctx, &mu, 2).unwrap().passed());
    let (ctx, mu) = setup("01", "2");
    assert!(levi_audit(&ctx, &mu, 2).is_err());
}
