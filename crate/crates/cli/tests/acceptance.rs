//! Acceptance criteria, one line per criterion. Runs as a plain binary so
//! the lines show up in `cargo test` output.

use std::collections::BTreeSet;
use std::time::Instant;

use akv_cli::report::Report;
use akv_cli::{run, RunConfig};
use akv_core::almost_hermitian::catalogue::Group;
use akv_core::family::{preset, random_almost_kahler, Geometry, Instance};
use akv_core::oracle;

const FAMILY: [&str; 5] = ["hyperbolic3sym", "gibbons_hawking", "flat_sigma", "kahler_product", "poly2"];
const RANDOM_SPECS: u64 = 20;

fn report(inst: &Instance, groups: &[Group], points: usize, seed: u64) -> Report {
    let mut cfg = RunConfig::with_instance(inst.clone());
    cfg.groups = groups.iter().copied().collect();
    cfg.points = points;
    cfg.seed = seed;
    run(&cfg).expect("run succeeds")
}

fn random(seed: u64) -> Instance {
    Instance::new(format!("random_{seed}"), Geometry::Raw(random_almost_kahler(seed)))
}

/// Per-point values of one residual; missing or non-numeric cells are NaN so
/// that every comparison against them fails.
fn values(r: &Report, name: &str) -> Vec<f64> {
    r.points
        .iter()
        .map(|p| p.residuals.get(name).and_then(|c| c.value()).unwrap_or(f64::NAN))
        .collect()
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

fn min(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.min(b) })
}

fn all_le(v: &[f64], tol: f64) -> bool {
    v.iter().all(|x| *x <= tol)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn gray3_on_family() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for name in ["hyperbolic3sym", "gibbons_hawking", "poly2"] {
        let r = report(&preset(name).unwrap(), &[Group::Gray], 25, 0);
        let v = values(&r, "g3_iv");
        ok &= all_le(&v, 1e-7);
        worst = worst.max(max(&v));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(ok && secs < 30.0, format!("max g3_iv {worst:.1e}, {secs:.1} s"))
}

fn lemma1_equivalence() -> Outcome {
    let mut instances: Vec<Instance> = FAMILY.iter().chain(&["perturbed", "cr_defect"]).map(|n| preset(n).unwrap()).collect();
    instances.extend((0..RANDOM_SPECS).map(random));
    let (mut small, mut large, mut mixed) = (0, 0, 0);
    for inst in &instances {
        let r = report(inst, &[Group::Gray], 10, 1);
        let cols: Vec<Vec<f64>> = ["g3_i", "g3_iii", "g3_iv"].iter().map(|n| values(&r, n)).collect();
        for i in 0..r.points.len() {
            let v = [cols[0][i], cols[1][i], cols[2][i]];
            if v.iter().all(|x| *x <= 1e-7) {
                small += 1;
            } else if v.iter().all(|x| *x >= 1e-4) {
                large += 1;
            } else {
                mixed += 1;
            }
        }
    }
    outcome(
        mixed == 0 && small > 0 && large > 0,
        format!("{} instances: {small} jointly small, {large} jointly large, {mixed} mixed points", instances.len()),
    )
}

fn opposite_structure_kahler() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for name in FAMILY {
        let v = values(&report(&preset(name).unwrap(), &[Group::Section4], 25, 2), "nabla_I");
        ok &= all_le(&v, 1e-8);
        worst = worst.max(max(&v));
    }
    outcome(ok, format!("max |∇I| {worst:.1e}"))
}

fn chern_forms() -> Outcome {
    let mut ok = true;
    let mut worst = [0.0f64; 3];
    let mut gauge_points = 0;
    for name in FAMILY {
        let r = report(&preset(name).unwrap(), &[Group::Chern], 25, 3);
        for (k, check) in ["gammaI-gammaJ", "chernforms_I", "chernforms_J"].iter().enumerate() {
            for (p, v) in r.points.iter().zip(values(&r, check)) {
                let degenerate = p.scalars.as_ref().is_none_or(|s| s.norm_nabla_omega2 <= 1e-8);
                if k == 0 && degenerate {
                    continue;
                }
                if k == 0 {
                    gauge_points += 1;
                }
                ok &= v <= 1e-7;
                worst[k] = worst[k].max(v);
            }
        }
    }
    outcome(
        ok && gauge_points > 0,
        format!(
            "max γ_I−3γ_J+dd^J ln|∇Ω|² {:.1e} over {gauge_points} points, γ_I {:.1e}, γ_J {:.1e}",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn einstein_member() -> Outcome {
    let r = report(&preset("gibbons_hawking").unwrap(), &[], 25, 4);
    let mut ok = true;
    let mut halves = BTreeSet::new();
    let (mut ric, mut zero, mut other) = (0.0f64, 0.0f64, f64::INFINITY);
    for p in &r.points {
        let Some(s) = &p.scalars else {
            ok = false;
            continue;
        };
        let (z, o, which) = if s.norm_wplus <= s.norm_wminus {
            (s.norm_wplus, s.norm_wminus, "W+")
        } else {
            (s.norm_wminus, s.norm_wplus, "W-")
        };
        ok &= s.norm_ric <= 1e-8 && z <= 1e-8 && o > 1e-8;
        halves.insert(which);
        ric = ric.max(s.norm_ric);
        zero = zero.max(z);
        other = other.min(o);
    }
    let which: Vec<_> = halves.into_iter().collect();
    outcome(
        ok && which.len() == 1,
        format!(
            "max |Ric| {ric:.1e}; vanishing half {} (max {zero:.1e}), other half min {other:.2}",
            which.join("/")
        ),
    )
}

fn gray2_separation() -> Outcome {
    let h = report(&preset("hyperbolic3sym").unwrap(), &[Group::Gray], 25, 5);
    let p = report(&preset("poly2").unwrap(), &[Group::Gray], 25, 5);
    let hg2 = values(&h, "g2");
    let pg3 = values(&p, "g3_iv");
    let pg2 = values(&p, "g2");
    let ok = all_le(&hg2, 1e-8) && all_le(&pg3, 1e-7) && pg2.iter().all(|v| *v >= 1e-4);
    outcome(
        ok,
        format!(
            "hyperbolic3sym max g2 {:.1e}; poly2 max g3_iv {:.1e}, min g2 {:.2e}",
            max(&hg2),
            max(&pg3),
            min(&pg2)
        ),
    )
}

const UNIVERSAL: [&str; 12] = [
    "weitzOm",
    "s*-s",
    "ricid",
    "star",
    "starstar",
    "jpb2",
    "bianchi+",
    "bianchi-",
    "bianchiOm",
    "bianchi+2,0",
    "cotton-york",
    "delta_w_c",
];

fn universal_identities() -> Outcome {
    let mut worst = ("", 0.0f64);
    let mut ok = true;
    for seed in 0..RANDOM_SPECS {
        let r = report(
            &random(seed),
            &[Group::U2, Group::Weitzenbock, Group::Bianchi, Group::Chern],
            2,
            seed,
        );
        for name in UNIVERSAL {
            let v = values(&r, name);
            ok &= all_le(&v, 1e-6);
            let m = max(&v);
            if !(m <= worst.1) {
                worst = (name, m);
            }
        }
    }
    outcome(ok, format!("{RANDOM_SPECS} random specs, worst {} = {:.1e}", worst.0, worst.1))
}

fn weitzenbock_specialization() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for name in FAMILY {
        let v = values(&report(&preset(name).unwrap(), &[Group::Weitzenbock], 10, 6), "weitzenbock1");
        ok &= all_le(&v, 1e-6);
        worst = worst.max(max(&v));
    }
    let control = values(&report(&preset("perturbed").unwrap(), &[Group::Weitzenbock], 10, 6), "weitzenbock1");
    let floor = min(&control);
    outcome(
        ok && floor > 1e-3,
        format!("family max {worst:.1e}; perturbed control min {floor:.2e}"),
    )
}

fn ricci_shape() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for name in FAMILY {
        let v = values(&report(&preset(name).unwrap(), &[Group::Chern], 25, 7), "ricci_shape");
        ok &= all_le(&v, 1e-8);
        worst = worst.max(max(&v));
    }
    outcome(ok, format!("max |Ric − (s/2)g_Σ| {worst:.1e}"))
}

fn engine_integrity() -> Outcome {
    let mut instances: Vec<Instance> = FAMILY.iter().chain(&["perturbed"]).map(|n| preset(n).unwrap()).collect();
    instances.extend((0..4).map(random));
    let mut fd_err: f64 = 0.0;
    let mut recompose: f64 = 0.0;
    let mut ok = true;
    for inst in &instances {
        let r = report(inst, &[Group::U2], 3, 8);
        let v = values(&r, "u2_recompose");
        ok &= all_le(&v, 1e-10);
        recompose = recompose.max(max(&v));
        for p in &r.points {
            let Some(s) = &p.scalars else {
                ok = false;
                continue;
            };
            let fd = oracle::scalars(&inst.geometry, p.p, oracle::DEFAULT_STEP).expect("oracle evaluates");
            let jet = [
                s.norm_nabla_omega2,
                s.s,
                s.kappa,
                s.s_star,
                s.norm_wplus,
                s.norm_wminus,
                s.norm_ric,
                s.norm_ric0,
            ];
            for (a, b) in jet.iter().zip(fd.as_array()) {
                let e = (a - b).abs();
                ok &= e <= 1e-5;
                fd_err = fd_err.max(e);
            }
        }
    }
    let mut cfg = RunConfig::with_instance(preset("poly2").unwrap());
    cfg.points = 6;
    cfg.seed = 42;
    let first = run(&cfg).unwrap().to_json();
    let second = run(&cfg).unwrap().to_json();
    let serial = akv_cli::run_with_threads(&cfg, Some(1)).unwrap().to_json();
    let identical = first == second && first == serial;
    outcome(
        ok && identical,
        format!(
            "jet vs FD max {fd_err:.1e}; U(2) recomposition max {recompose:.1e}; repeated and serial reports identical: {identical}"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Gray-3 on the family", gray3_on_family),
        ("Gray-3 characterizations agree", lemma1_equivalence),
        ("opposite structure is Kähler", opposite_structure_kahler),
        ("Chern form relations", chern_forms),
        ("Einstein member", einstein_member),
        ("second vs third Gray condition", gray2_separation),
        ("universal identities", universal_identities),
        ("Weitzenböck specialization", weitzenbock_specialization),
        ("Ricci shape", ricci_shape),
        ("engine integrity", engine_integrity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<34} {}  {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
