//! J, Ω, ∇Ω, the Nijenhuis tensor and the U(2) pieces of the curvature.

use super::algebra::{
    anti_invariant_part, endo_on_two_form, invariant_part, pullback2, symmetric_endo, zero_of,
    Field,
};
use super::AlmostHermitianField;
use crate::curvature::operator::{apply, compose, identity, kulkarni_nomizu, outer, sd_projector, sym_outer};
use crate::curvature::{metric_jets, trace, Curvature};
use crate::error::GeometryError;
use crate::exterior::{endomorphism, form_inner, Orientation, Slot, Tensor, DIM};
use crate::jets::Jet;

/// Almost Hermitian data at one point, as jets.
#[derive(Clone, Debug)]
pub struct HermitianData {
    pub curv: Curvature,
    /// Ω_ij
    pub omega: Field,
    /// J^k_i with ⟨JX, Y⟩ = Ω(X, Y)
    pub j: Field,
    /// Orientation induced by J (sign of the Pfaffian of Ω).
    pub orientation: Orientation,
    /// (∇_k Ω)_ij
    pub nabla_omega: Field,
    /// |∇Ω|² with the 2-form norm in the value slots.
    pub norm2: Jet,
}

fn pfaffian(o: &Tensor<f64>) -> f64 {
    o.get(&[0, 1]) * o.get(&[2, 3]) - o.get(&[0, 2]) * o.get(&[1, 3]) + o.get(&[0, 3]) * o.get(&[1, 2])
}

impl HermitianData {
    pub fn at<F: AlmostHermitianField>(field: &F, p: [f64; DIM]) -> Result<Self, GeometryError> {
        let ctx = metric_jets(field, p)?;
        let vars = Jet::coordinates(p);
        let om = field.fundamental_form(&vars)?;
        let omega = Tensor::covariant(2, |i| om[i[0]][i[1]].clone());
        Self::from_parts(Curvature::from_metric(ctx)?, omega)
    }

    pub fn from_parts(curv: Curvature, omega: Field) -> Result<Self, GeometryError> {
        let ctx = &curv.ctx;
        let j = endomorphism(&omega, ctx);
        let pf = pfaffian(&omega.values());
        if pf == 0.0 {
            return Err(GeometryError::Invalid("Ω is degenerate".into()));
        }
        let orientation = Orientation::from_sign(pf);
        let nabla_omega = curv.nabla(&omega)?;
        let norm2 = nabla_omega.dot(&nabla_omega, ctx).scale(0.5);
        Ok(HermitianData {
            curv,
            omega,
            j,
            orientation,
            nabla_omega,
            norm2,
        })
    }

    pub fn ctx(&self) -> &crate::exterior::MetricContext<Jet> {
        &self.curv.ctx
    }

    /// ψ(J·, J·)
    pub fn pull(&self, t: &Field) -> Field {
        pullback2(&self.j, t)
    }

    /// ψ' = ½(ψ + ψ(J·, J·))
    pub fn prime(&self, t: &Field) -> Field {
        invariant_part(&self.j, t)
    }

    /// ψ'' = ½(ψ − ψ(J·, J·))
    pub fn double_prime(&self, t: &Field) -> Field {
        anti_invariant_part(&self.j, t)
    }

    /// (Jψ)(X, Y) = −ψ(JX, Y)
    pub fn j_form(&self, psi: &Field) -> Field {
        endo_on_two_form(&self.j, psi)
    }

    /// (Jα)_X = −α(JX)
    pub fn j_one_form(&self, alpha: &Field) -> Field {
        super::algebra::endo_on_one_form(&self.j, alpha)
    }

    /// S(J·, ·) for a symmetric S; for J-invariant S this is a 2-form.
    pub fn compose_j(&self, s: &Field) -> Field {
        Tensor::covariant(2, |i| {
            let mut acc = zero_of(self.ctx());
            for a in 0..DIM {
                acc.add_mul_assign(self.j.get(&[a, i[0]]), s.get(&[a, i[1]]));
            }
            acc
        })
    }

    /// N^c_ij = N(∂i, ∂j)^c from the bracket formula on coordinate fields.
    pub fn nijenhuis(&self) -> Result<Field, GeometryError> {
        let dj = self.j.partials()?; // dj[a][c][i] = ∂_a J^c_i
        let zero = zero_of(self.ctx());
        Ok(Tensor::from_fn(&[Slot::Contra, Slot::Co, Slot::Co], |idx| {
            let (c, i, jj) = (idx[0], idx[1], idx[2]);
            let mut acc = zero.clone();
            for a in 0..DIM {
                acc.add_mul_assign(self.j.get(&[a, i]), dj.get(&[a, c, jj]));
                acc.add_scaled_assign(&self.j.get(&[a, jj]).mul(dj.get(&[a, c, i])), -1.0);
                acc.add_mul_assign(self.j.get(&[c, a]), dj.get(&[jj, a, i]));
                acc.add_scaled_assign(&self.j.get(&[c, a]).mul(dj.get(&[i, a, jj])), -1.0);
            }
            acc
        }))
    }
}

/// U(2) pieces of the curvature relative to J.
#[derive(Clone, Debug)]
pub struct U2Curvature {
    pub s: Jet,
    pub kappa: Jet,
    pub s_star: Jet,
    pub ric_prime: Field,
    /// Ric'' (equal to Ric₀'')
    pub ric_pp: Field,
    pub ric0_prime: Field,
    pub rho: Field,
    pub rho0: Field,
    /// ρ* = R(Ω)
    pub rho_star: Field,
    pub rho_star_pp: Field,
    pub ric_star: Field,
    pub wplus: Field,
    pub wminus: Field,
    pub w1: Field,
    pub w2: Field,
    /// W₃⁺ = W⁺ − W₁⁺ − W₂⁺
    pub w3: Field,
    /// Projection onto Λ⁺ for the J-orientation.
    pub pplus: Field,
}

impl U2Curvature {
    pub fn new(hd: &HermitianData) -> Self {
        let c = &hd.curv;
        let ctx = &c.ctx;
        let s = c.scalar.clone();
        let ric_prime = hd.prime(&c.ricci);
        let ric_pp = hd.double_prime(&c.ricci);
        let ric0_prime = hd.prime(&c.ric0);
        let rho = hd.compose_j(&ric_prime);
        let rho0 = hd.compose_j(&ric0_prime);
        let rho_star = apply(&c.riemann, &hd.omega, ctx);
        let rho_star_pp = hd.double_prime(&rho_star);
        // Ric*(X, Y) = −ρ*(JX, Y)
        let ric_star = hd.compose_j(&rho_star).scale(-1.0);
        let s_star = trace(&ric_star, ctx);

        let pplus = sd_projector(ctx, hd.orientation, 1.0);
        let pminus = sd_projector(ctx, hd.orientation, -1.0);
        let wplus = compose(&c.weyl, &pplus, ctx);
        let wminus = compose(&c.weyl, &pminus, ctx);
        let kappa = form_inner(&apply(&wplus, &hd.omega, ctx), &hd.omega, ctx).scale(3.0);
        let w1 = outer(&hd.omega, &hd.omega)
            .scale_by(&kappa.scale(1.0 / 8.0))
            .sub(&pplus.scale_by(&kappa.scale(1.0 / 12.0)));
        let w2 = sym_outer(&rho_star_pp, &hd.omega);
        let w3 = wplus.sub(&w1).sub(&w2);
        U2Curvature {
            s,
            kappa,
            s_star,
            ric_prime,
            ric_pp,
            ric0_prime,
            rho,
            rho0,
            rho_star,
            rho_star_pp,
            ric_star,
            wplus,
            wminus,
            w1,
            w2,
            w3,
            pplus,
        }
    }

    /// ½ S ⊙ g, the curvature-type tensor of a symmetric S in the Singer–Thorpe blocks.
    pub fn ricci_piece(s: &Field, hd: &HermitianData) -> Field {
        kulkarni_nomizu(s, &hd.curv.ctx.g).scale(0.5)
    }

    /// (s/12) Id on Λ².
    pub fn scalar_piece(&self, hd: &HermitianData) -> Field {
        identity(&hd.curv.ctx).scale_by(&self.s.scale(1.0 / 12.0))
    }

    /// Ric(X) as an endomorphism.
    pub fn ricci_endo(hd: &HermitianData, s: &Field) -> Field {
        symmetric_endo(s, hd.ctx())
    }
}
