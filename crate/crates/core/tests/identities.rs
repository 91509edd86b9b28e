use std::collections::BTreeSet;

use akv_core::almost_hermitian::catalogue::{lookup, CATALOGUE};
use akv_core::almost_hermitian::evaluate::all_residuals;
use akv_core::almost_hermitian::identities::gray::anti_invariant_projector;
use akv_core::almost_hermitian::identities::{Outcome, PointState};
use akv_core::curvature::operator::apply;
use akv_core::exterior::Tensor;
use akv_core::family::{preset, random_almost_kahler, Geometry, Hypothesis, Instance};
use akv_core::Jet;

const RANDOM_POINTS: [[f64; 4]; 2] = [[0.1, -0.2, 0.15, 0.05], [-0.3, 0.25, -0.1, 0.2]];

fn state(inst: &Instance, p: [f64; 4]) -> PointState<'_> {
    PointState::new(&inst.geometry, p, inst.geometry.as_family()).unwrap()
}

fn random_instance(seed: u64) -> Instance {
    Instance::new(format!("random{seed}"), Geometry::Raw(random_almost_kahler(seed)))
}

/// Every check that applies to `inst` stays within its tier at `p`.
fn assert_applicable_hold(inst: &Instance, p: [f64; 4]) {
    let st = state(inst, p);
    for (name, o) in all_residuals(&st) {
        let info = lookup(name).unwrap();
        if !info.applies(&inst.hypotheses) {
            continue;
        }
        match o {
            Outcome::Value { value } => assert!(
                value <= info.tier.tolerance(),
                "{} at {p:?}: {name} = {value:e}",
                inst.name
            ),
            Outcome::Skipped { .. } => {}
            Outcome::Error { message } => panic!("{} at {p:?}: {name} errored: {message}", inst.name),
        }
    }
}

#[test]
fn universal_identities_on_random_structures() {
    for seed in 0..4 {
        let inst = random_instance(seed);
        for p in RANDOM_POINTS {
            assert_applicable_hold(&inst, p);
        }
    }
}

#[test]
fn family_presets_satisfy_their_hypotheses() {
    for name in ["hyperbolic3sym", "gibbons_hawking", "flat_sigma", "kahler_product", "poly2"] {
        let inst = preset(name).unwrap();
        for p in inst.sample(3, 11).unwrap() {
            assert_applicable_hold(&inst, p);
        }
    }
}

#[test]
fn residuals_do_not_depend_on_the_gauge() {
    // Off-hypothesis residuals (the nullity construction on a structure
    // that is not Gray-3) are not gauge invariant, so compare applicable ones.
    for inst in [random_instance(2), preset("poly2").unwrap(), preset("hyperbolic3sym").unwrap()] {
        let p = inst.sample(1, 5).unwrap()[0];
        let st = state(&inst, p);
        let [x, y, ..] = Jet::coordinates(p);
        let theta = x.scale(0.7).add(&y.mul(&y).scale(-0.4)).add_const(1.1);
        let rotated = st.with_rotated_gauge(&theta).unwrap();
        let before = all_residuals(&st);
        let after = all_residuals(&rotated);
        for (name, o) in &before {
            if !lookup(name).unwrap().applies(&inst.hypotheses) {
                continue;
            }
            if let (Some(u), Some(v)) = (o.value(), after[name].value()) {
                assert!(
                    (u - v).abs() <= 1e-10 * u.abs().max(1.0),
                    "{}: {name} {u:e} vs {v:e}",
                    inst.name
                );
            }
        }
    }
}

#[test]
fn anti_invariant_projector_matches_pullback() {
    let inst = random_instance(1);
    let st = state(&inst, RANDOM_POINTS[0]);
    let ctx = st.hd.ctx();
    let p = anti_invariant_projector(&st);
    let psi = Tensor::covariant(2, |i| {
        let v = (i[0] as f64 - i[1] as f64) * (1.0 + 0.3 * (i[0] * i[1]) as f64);
        st.zero().add_const(v)
    });
    let direct = st.hd.double_prime(&psi);
    assert!(st.norm(&apply(&p, &psi, ctx).sub(&direct)) < 1e-12);
    let twice = apply(&p, &apply(&p, &psi, ctx), ctx);
    assert!(st.norm(&twice.sub(&direct)) < 1e-12);
    assert!(st.norm(&apply(&p, &st.hd.omega, ctx)) < 1e-12);
}

#[test]
fn gibbons_hawking_has_exactly_one_flat_weyl_half() {
    let inst = preset("gibbons_hawking").unwrap();
    let mut zero_half = BTreeSet::new();
    for p in inst.sample(5, 3).unwrap() {
        let sc = state(&inst, p).scalars();
        assert!(sc.norm_ric < 1e-8, "|Ric| = {:e}", sc.norm_ric);
        let (small, large) = if sc.norm_wplus < sc.norm_wminus {
            ("plus", sc.norm_wminus)
        } else {
            ("minus", sc.norm_wplus)
        };
        assert!(sc.norm_wplus.min(sc.norm_wminus) < 1e-8);
        assert!(large > 1e-3);
        zero_half.insert(small);
    }
    // κ = 3|∇Ω|²/2 ≠ 0 lives in W⁺, so W⁻ is the half that vanishes.
    assert_eq!(zero_half, BTreeSet::from(["minus"]));
}

#[test]
fn homothety_scales_norm_and_keeps_relative_gray_residual() {
    for name in ["hyperbolic3sym", "perturbed"] {
        let base = preset(name).unwrap();
        let mut scaled = base.clone();
        if let Geometry::Family(f) = &mut scaled.geometry {
            f.scale = 2.0;
        }
        let p = [1.3, 0.2, 0.1, -0.3];
        let a = state(&base, p);
        let b = state(&scaled, p);
        assert!(b.hd.j.values().sub(&a.hd.j.values()).max_abs() < 1e-13);
        let ratio = b.hd.norm2.value() / a.hd.norm2.value();
        assert!((ratio - 0.25).abs() < 1e-12, "{ratio}");
        let ga = all_residuals(&a)["g3_iv"].value().unwrap();
        let gb = all_residuals(&b)["g3_iv"].value().unwrap();
        assert!((ga - gb).abs() < 1e-9, "{name}: {ga:e} vs {gb:e}");
    }
}

#[test]
fn negative_controls_break_gray3() {
    for (name, cr) in [("perturbed", false), ("cr_defect", true)] {
        let inst = preset(name).unwrap();
        let p = [1.3, 0.2, 0.1, -0.3];
        let r = all_residuals(&state(&inst, p));
        let g3 = r["g3_iv"].value().unwrap();
        assert!(g3 > 1e-4, "{name}: g3_iv = {g3:e}");
        assert!(r["d_omega"].value().unwrap() < 1e-12);
        let crv = r["cauchy_riemann"].value().unwrap();
        if cr {
            assert!((crv - 1e-3).abs() < 1e-12);
        } else {
            assert!(crv < 1e-12);
        }
    }
}

#[test]
fn kahler_product_skips_gauge_checks() {
    let inst = preset("kahler_product").unwrap();
    let st = state(&inst, [1.2, 0.3, 0.0, 0.0]);
    assert!(st.nullity.is_none());
    let sc = st.scalars();
    assert!(sc.norm_nabla_omega2 < 1e-20);
    assert!((sc.kappa - sc.s).abs() < 1e-10);
    let r = all_residuals(&st);
    assert!(matches!(r["gammaI-gammaJ"], Outcome::Skipped { .. }));
    assert!(matches!(r["m1"], Outcome::Skipped { .. }));
}

#[test]
fn catalogue_floor_and_hypotheses() {
    assert!(CATALOGUE.len() >= 20);
    let g2 = lookup("g2").unwrap();
    assert!(g2.applies(&preset("hyperbolic3sym").unwrap().hypotheses));
    assert!(!g2.applies(&preset("poly2").unwrap().hypotheses));
    assert!(lookup("weitzenbock1").unwrap().requires.contains(&Hypothesis::Gray3));
}
