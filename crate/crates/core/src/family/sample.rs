//! Deterministic quasi-random sampling of admissible points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Geometry;
use crate::error::InstanceError;
use crate::exterior::DIM;

const BASES: [u64; DIM] = [2, 3, 5, 7];

/// Candidates tried per requested point before giving up (a rejection rate
/// above 99%).
const MAX_TRIES_PER_POINT: usize = 100;

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// `n` points of the shifted Halton sequence in the domain box that pass
/// [`Geometry::admissible`]. The shift is drawn from `seed`.
pub fn sample(
    geometry: &Geometry,
    n: usize,
    seed: u64,
    margin: f64,
) -> Result<Vec<[f64; DIM]>, InstanceError> {
    if n == 0 {
        return Err(InstanceError::Invalid("need at least one sample point".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: [f64; DIM] = std::array::from_fn(|_| rng.random::<f64>());
    let domain = geometry.domain();
    let max_tries = n.saturating_mul(MAX_TRIES_PER_POINT);
    let mut out = Vec::with_capacity(n);
    let mut tried = 0;
    while out.len() < n && tried < max_tries {
        tried += 1;
        let u = std::array::from_fn(|i| (halton(tried as u64, BASES[i]) + shift[i]).fract());
        let p = domain.lerp(u);
        if geometry.admissible(&p, margin) {
            out.push(p);
        }
    }
    if out.len() < n {
        return Err(InstanceError::SamplingExhausted {
            requested: n,
            accepted: out.len(),
            tried,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{preset, DomainBox, FamilyInstance, HoloFn, SurfaceKind, SurfaceSpec};

    #[test]
    fn radical_inverse() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(5, 3) - (2.0 / 3.0 + 1.0 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn same_seed_same_points() {
        let inst = preset("hyperbolic3sym").unwrap();
        let a = inst.sample(25, 7).unwrap();
        let b = inst.sample(25, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, inst.sample(25, 8).unwrap());
    }

    #[test]
    fn poly2_points_respect_margin() {
        let inst = preset("poly2").unwrap();
        for p in inst.sample(200, 3).unwrap() {
            assert!(p[0] * p[0] - p[1] * p[1] > 1e-3);
        }
    }

    #[test]
    fn mostly_inadmissible_domain_is_exhausted() {
        // w = x is positive only on a sliver of the box.
        let fi = FamilyInstance {
            surface: SurfaceSpec::new(SurfaceKind::Flat),
            h: HoloFn::monomial(1),
            domain: DomainBox::new([-1.0, 0.0, 0.0, 0.0], [1e-3, 1.0, 1.0, 1.0]).unwrap(),
            scale: 1.0,
        };
        let err = sample(&Geometry::Family(fi), 10, 0, 1e-3).unwrap_err();
        assert!(matches!(err, InstanceError::SamplingExhausted { requested: 10, tried: 1000, .. }));
    }
}
