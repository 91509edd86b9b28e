//! Gauge φ ∈ [[Λ^{0,2}]], the 1-forms a, b, the Kähler nullity D and the
//! opposite structure I.

use super::algebra::{endo_on_one_form, endo_on_two_form, one_form_times, sharp, Field};
use super::hermitian::HermitianData;
use crate::error::GeometryError;
use crate::exterior::{compose, endomorphism, form_inner, wedge, Tensor, DIM};
use crate::jets::Jet;
use crate::scalar::Scalar;

/// Below this value of |∇Ω|² the point is treated as Kähler-type.
pub const GAUGE_THRESHOLD: f64 = 1e-8;
/// Minimum norm of the projected coordinate 2-form used as a gauge seed.
pub const SEED_FLOOR: f64 = 1e-6;

/// Candidate seeds dx∧dy, dx∧dz, dx∧dt in order.
const SEEDS: [(usize, usize); 3] = [(0, 1), (0, 2), (0, 3)];

#[derive(Clone, Debug)]
pub struct GaugeFrame {
    /// Index into the seed list {e01, e02, e03} actually used.
    pub seed: (usize, usize),
    pub phi: Field,
    pub jphi: Field,
    /// ∇Ω = a⊗φ − Ja⊗Jφ
    pub a: Field,
    pub ja: Field,
    /// ∇φ = −a⊗Ω + b⊗Jφ
    pub b: Field,
    /// Endomorphisms of φ and Jφ.
    pub j1: Field,
    pub j2: Field,
    /// W₃⁺(φ) = λφ + μJφ
    pub lambda: Jet,
    pub mu: Jet,
}

fn coordinate_form(base: [f64; DIM], (p, q): (usize, usize)) -> Field {
    Tensor::covariant(2, |i| {
        let v = if (i[0], i[1]) == (p, q) {
            1.0
        } else if (i[0], i[1]) == (q, p) {
            -1.0
        } else {
            0.0
        };
        Jet::constant(base, v)
    })
}

impl GaugeFrame {
    /// Deterministic gauge: the first coordinate 2-form whose J-anti-invariant
    /// part has norm ≥ [`SEED_FLOOR`], normalized to |φ|² = 2.
    pub fn new(hd: &HermitianData, w3: &Field) -> Result<Self, GeometryError> {
        let base = hd.ctx().sqrt_det.base();
        for seed in SEEDS {
            let psi = hd.double_prime(&coordinate_form(base, seed));
            let n2 = form_inner(&psi, &psi, hd.ctx());
            if n2.value().sqrt() >= SEED_FLOOR {
                let phi = psi.scale_by(&n2.recip()?.scale(2.0).sqrt()?);
                let mut g = Self::from_phi(hd, phi, w3)?;
                g.seed = seed;
                return Ok(g);
            }
        }
        Err(GeometryError::Invalid("no coordinate 2-form seeds a gauge".into()))
    }

    /// Frame for a given gauge φ (J-anti-invariant, |φ|² = 2).
    pub fn from_phi(hd: &HermitianData, phi: Field, w3: &Field) -> Result<Self, GeometryError> {
        let ctx = hd.ctx();
        let jphi = hd.j_form(&phi);
        let zero = ctx.sqrt_det.zero_like();
        let a = Tensor::covariant(1, |k| {
            let mut acc = zero.clone();
            for i in 0..DIM {
                for j in 0..DIM {
                    acc.add_mul_assign(hd.nabla_omega.get(&[k[0], i, j]), &raised(&phi, ctx, i, j));
                }
            }
            acc.scale(0.25)
        });
        let ja = hd.j_one_form(&a);
        let nphi = hd.curv.nabla(&phi)?;
        let b = Tensor::covariant(1, |k| {
            let slice = Tensor::covariant(2, |i| nphi.get(&[k[0], i[0], i[1]]).clone());
            form_inner(&slice, &jphi, ctx).scale(0.5)
        });
        let j1 = endomorphism(&phi, ctx);
        let j2 = compose(&hd.j, &j1);
        let w3phi = crate::curvature::operator::apply(w3, &phi, ctx);
        let lambda = form_inner(&w3phi, &phi, ctx).scale(0.5);
        let mu = form_inner(&w3phi, &jphi, ctx).scale(0.5);
        Ok(GaugeFrame {
            seed: (0, 0),
            phi,
            jphi,
            a,
            ja,
            b,
            j1,
            j2,
            lambda,
            mu,
        })
    }

    /// φ' = cos θ φ + sin θ Jφ for a scalar field θ.
    pub fn rotated(&self, hd: &HermitianData, theta: &Jet, w3: &Field) -> Result<Self, GeometryError> {
        let phi = self
            .phi
            .scale_by(&theta.cos())
            .add(&self.jphi.scale_by(&theta.sin()));
        let mut g = Self::from_phi(hd, phi, w3)?;
        g.seed = self.seed;
        Ok(g)
    }

    /// a⊗φ − Ja⊗Jφ
    pub fn nabla_omega_model(&self) -> Field {
        one_form_times(&self.a, &self.phi).sub(&one_form_times(&self.ja, &self.jphi))
    }

    /// −a⊗Ω + b⊗Jφ
    pub fn nabla_phi_model(&self, hd: &HermitianData) -> Field {
        one_form_times(&self.b, &self.jphi).sub(&one_form_times(&self.a, &hd.omega))
    }

    /// Ja⊗Ω − b⊗φ
    pub fn nabla_jphi_model(&self, hd: &HermitianData) -> Field {
        one_form_times(&self.ja, &hd.omega).sub(&one_form_times(&self.b, &self.phi))
    }

    /// |a|²
    pub fn a_norm2(&self, hd: &HermitianData) -> Jet {
        self.a.dot(&self.a, hd.ctx())
    }

    /// W₃⁺ rebuilt from (λ, μ): λ/2 (φ⊗φ − Jφ⊗Jφ) + μ/2 (φ⊗Jφ + Jφ⊗φ).
    pub fn w3_model(&self) -> Field {
        use crate::curvature::operator::outer;
        let l = outer(&self.phi, &self.phi)
            .sub(&outer(&self.jphi, &self.jphi))
            .scale_by(&self.lambda.scale(0.5));
        let m = outer(&self.phi, &self.jphi)
            .add(&outer(&self.jphi, &self.phi))
            .scale_by(&self.mu.scale(0.5));
        l.add(&m)
    }
}

fn raised(phi: &Field, ctx: &crate::exterior::MetricContext<Jet>, i: usize, j: usize) -> Jet {
    let mut acc = ctx.sqrt_det.zero_like();
    for a in 0..DIM {
        for b in 0..DIM {
            acc.add_mul_assign(&ctx.ginv(i, a).mul(ctx.ginv(j, b)), phi.get(&[a, b]));
        }
    }
    acc
}

/// Kähler nullity D, its complement and the opposite structure I.
#[derive(Clone, Debug)]
pub struct Nullity {
    pub a_norm2: Jet,
    /// J₁a, J₂a (1-forms dual to a basis of D)
    pub j1a: Field,
    pub j2a: Field,
    /// g-orthogonal projector onto D, slots [Contra, Co].
    pub proj_d: Field,
    /// g restricted to D.
    pub g_sigma: Field,
    /// Ω restricted to D.
    pub omega_sigma: Field,
    /// Ω̄ = Ω − (2/|a|²) a∧Ja
    pub omega_bar: Field,
    pub i: Field,
    /// φ̄ = φ + (2/|a|²) Ja∧J₂a
    pub phi_bar: Field,
    pub iphi_bar: Field,
    /// Coefficients of ∇a on {a, Ja, J₁a, J₂a}.
    pub m1: Field,
    pub n1: Field,
    pub m2: Field,
    pub n2: Field,
    /// D-component of n₂ − a/2.
    pub m0: Field,
}

impl Nullity {
    pub fn new(hd: &HermitianData, gf: &GaugeFrame) -> Result<Self, GeometryError> {
        if hd.norm2.value() <= GAUGE_THRESHOLD {
            return Err(GeometryError::GaugeDegenerate(hd.norm2.value()));
        }
        let ctx = hd.ctx();
        let a_norm2 = gf.a_norm2(hd);
        let inv = a_norm2.recip()?;
        let j1a = endo_on_one_form(&gf.j1, &gf.a);
        let j2a = endo_on_one_form(&gf.j2, &gf.a);

        // D = span(J₁a♯, J₂a♯); projector X ↦ Σ ⟨X, e⟩ e / |a|²
        let (v1, v2) = (sharp(&j1a, ctx), sharp(&j2a, ctx));
        let proj_d = Tensor::from_fn(
            &[crate::exterior::Slot::Contra, crate::exterior::Slot::Co],
            |idx| {
                let (k, i) = (idx[0], idx[1]);
                v1[k].mul(j1a.get(&[i])).add(&v2[k].mul(j2a.get(&[i]))).mul(&inv)
            },
        );
        let g_perp = Tensor::covariant(2, |i| {
            gf.a.get(&[i[0]])
                .mul(gf.a.get(&[i[1]]))
                .add(&gf.ja.get(&[i[0]]).mul(gf.ja.get(&[i[1]])))
        });
        let g_sigma = ctx.g.sub(&g_perp.scale_by(&inv));
        let a_ja = wedge(&gf.a, &gf.ja)?;
        let omega_sigma = hd.omega.sub(&a_ja.scale_by(&inv));
        let omega_bar = hd.omega.sub(&a_ja.scale_by(&inv.scale(2.0)));
        let i = endomorphism(&omega_bar, ctx);
        let phi_bar = gf
            .phi
            .add(&wedge(&gf.ja, &j2a)?.scale_by(&inv.scale(2.0)));
        let iphi_bar = endo_on_two_form(&i, &phi_bar);

        let na = hd.curv.nabla(&gf.a)?;
        let coeff = |e: &Field| {
            let es = sharp(e, ctx);
            Tensor::covariant(1, |k| {
                let mut acc = ctx.sqrt_det.zero_like();
                for (l, el) in es.iter().enumerate() {
                    acc.add_mul_assign(na.get(&[k[0], l]), el);
                }
                acc.mul(&inv)
            })
        };
        let (m1, n1, m2, n2) = (coeff(&gf.a), coeff(&gf.ja), coeff(&j1a), coeff(&j2a));
        let half = n2.sub(&gf.a.scale(0.5));
        let m0 = project_one_form(&proj_d, &half);
        Ok(Nullity {
            a_norm2,
            j1a,
            j2a,
            proj_d,
            g_sigma,
            omega_sigma,
            omega_bar,
            i,
            phi_bar,
            iphi_bar,
            m1,
            n1,
            m2,
            n2,
            m0,
        })
    }

    /// ā read off from ∇Ω̄ = ā⊗φ̄ − Iā⊗Iφ̄.
    pub fn a_bar(&self, hd: &HermitianData) -> Result<Field, GeometryError> {
        let nob = hd.curv.nabla(&self.omega_bar)?;
        let ctx = hd.ctx();
        Ok(Tensor::covariant(1, |k| {
            let slice = Tensor::covariant(2, |i| nob.get(&[k[0], i[0], i[1]]).clone());
            form_inner(&slice, &self.phi_bar, ctx).scale(0.5)
        }))
    }

    /// b̄ = ½⟨∇φ̄, Iφ̄⟩
    pub fn b_bar(&self, hd: &HermitianData) -> Result<Field, GeometryError> {
        let np = hd.curv.nabla(&self.phi_bar)?;
        let ctx = hd.ctx();
        Ok(Tensor::covariant(1, |k| {
            let slice = Tensor::covariant(2, |i| np.get(&[k[0], i[0], i[1]]).clone());
            form_inner(&slice, &self.iphi_bar, ctx).scale(0.5)
        }))
    }

    /// Iα for a 1-form.
    pub fn i_one_form(&self, alpha: &Field) -> Field {
        endo_on_one_form(&self.i, alpha)
    }
}

/// The 1-form α(P·) for a projector P.
pub fn project_one_form(p: &Field, alpha: &Field) -> Field {
    Tensor::covariant(1, |i| {
        let mut acc = alpha.comps()[0].zero_like();
        for k in 0..DIM {
            acc.add_mul_assign(alpha.get(&[k]), p.get(&[k, i[0]]));
        }
        acc
    })
}
