//! Named instances.

use super::{
    DomainBox, FamilyInstance, Geometry, HoloFn, Hypothesis, Instance, SurfaceKind, SurfaceSpec,
};
use super::expr::Expr;
use crate::error::InstanceError;

const NAMES: [&str; 7] = [
    "hyperbolic3sym",
    "gibbons_hawking",
    "flat_sigma",
    "kahler_product",
    "poly2",
    "perturbed",
    "cr_defect",
];

pub fn preset_names() -> &'static [&'static str] {
    &NAMES
}

fn unit_box(x: [f64; 2], y: [f64; 2]) -> DomainBox {
    DomainBox {
        lo: [x[0], y[0], -1.0, -1.0],
        hi: [x[1], y[1], 1.0, 1.0],
    }
}

fn family(surface: SurfaceKind, h: HoloFn, domain: DomainBox) -> FamilyInstance {
    FamilyInstance {
        surface: SurfaceSpec::new(surface),
        h,
        domain,
        scale: 1.0,
    }
}

fn family_u(u: Expr, h: HoloFn, domain: DomainBox) -> FamilyInstance {
    FamilyInstance {
        surface: SurfaceSpec::custom(u),
        h,
        domain,
        scale: 1.0,
    }
}

/// Looks up a named instance.
///
/// `gibbons_hawking` takes u = 0, so g = w(dx² + dy² + dz²) + w⁻¹(dt + v dz)²
/// with w harmonic: the Ricci-flat member. `flat_sigma` takes g_Σ = dx² + dy²
/// instead, which is not Einstein.
///
/// `perturbed` adds 0.1 x² dx⊗dx to the hyperbolic surface metric and
/// `cr_defect` adds 1e-3·x to v; both are negative controls that still claim
/// the family hypotheses so the Gray-dependent checks run on them and fail.
pub fn preset(name: &str) -> Result<Instance, InstanceError> {
    let half_plane = unit_box([0.5, 2.0], [-1.0, 1.0]);
    let geometry = match name {
        "hyperbolic3sym" => family(SurfaceKind::HyperbolicHalfplane, HoloFn::monomial(1), half_plane),
        "gibbons_hawking" => family_u(Expr::c(0.0), HoloFn::monomial(1), half_plane),
        "flat_sigma" => family(SurfaceKind::Flat, HoloFn::monomial(1), half_plane),
        "kahler_product" => family(SurfaceKind::HyperbolicHalfplane, HoloFn::constant(1.0), half_plane),
        "poly2" => family(
            SurfaceKind::Flat,
            HoloFn::monomial(2),
            unit_box([1.0, 2.0], [-0.4, 0.4]),
        ),
        "perturbed" => {
            let mut fi = family(SurfaceKind::HyperbolicHalfplane, HoloFn::monomial(1), half_plane);
            fi.surface.anisotropy = Some(Expr::c(0.1) * Expr::x().powi(2));
            fi
        }
        "cr_defect" => {
            let mut h = HoloFn::monomial(1);
            h.cr_defect = 1e-3;
            family(SurfaceKind::HyperbolicHalfplane, h, half_plane)
        }
        _ => return Err(InstanceError::UnknownPreset(name.to_string())),
    };
    let inst = Instance::new(name, Geometry::Family(geometry))
        .with_hypotheses(&[Hypothesis::Gray3, Hypothesis::Family]);
    Ok(if matches!(name, "hyperbolic3sym" | "kahler_product") {
        inst.with_hypotheses(&[Hypothesis::Gray2])
    } else {
        inst
    })
}

pub fn presets() -> Vec<Instance> {
    NAMES.iter().map(|n| preset(n).expect("known preset")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_validate() {
        for inst in presets() {
            inst.validate().unwrap();
        }
        assert!(matches!(preset("nope"), Err(InstanceError::UnknownPreset(_))));
    }
}
