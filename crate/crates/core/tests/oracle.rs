use akv_core::almost_hermitian::identities::PointState;
use akv_core::family::{preset, random_almost_kahler, Geometry};
use akv_core::oracle::{scalars, DEFAULT_STEP};

fn compare(geo: &Geometry, p: [f64; 4]) {
    let engine = PointState::new(geo, p, geo.as_family()).unwrap().scalars();
    let fd = scalars(geo, p, DEFAULT_STEP).unwrap();
    let e = [
        engine.norm_nabla_omega2,
        engine.s,
        engine.kappa,
        engine.s_star,
        engine.norm_wplus,
        engine.norm_wminus,
        engine.norm_ric,
        engine.norm_ric0,
    ];
    for (i, (a, b)) in e.iter().zip(fd.as_array()).enumerate() {
        assert!((a - b).abs() <= 1e-5, "scalar {i} at {p:?}: jet {a} vs fd {b}");
    }
}

#[test]
fn jet_scalars_match_finite_differences_on_random_structures() {
    for seed in [0, 7] {
        let geo = Geometry::Raw(random_almost_kahler(seed));
        compare(&geo, [0.1, -0.2, 0.15, 0.05]);
    }
}

#[test]
fn jet_scalars_match_finite_differences_on_presets() {
    for name in ["hyperbolic3sym", "gibbons_hawking", "poly2", "perturbed"] {
        let inst = preset(name).unwrap();
        compare(&inst.geometry, [1.3, 0.2, 0.1, -0.3]);
    }
}
