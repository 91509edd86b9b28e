//! The list of checks with their groups, tolerance tiers and hypotheses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::family::Hypothesis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Compat,
    Gray,
    U2,
    Bianchi,
    Weitzenbock,
    Section4,
    Chern,
}

pub const ALL_GROUPS: [Group; 7] = [
    Group::Compat,
    Group::Gray,
    Group::U2,
    Group::Bianchi,
    Group::Weitzenbock,
    Group::Section4,
    Group::Chern,
];

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Compat => "compat",
            Group::Gray => "gray",
            Group::U2 => "u2",
            Group::Bianchi => "bianchi",
            Group::Weitzenbock => "weitzenbock",
            Group::Section4 => "section4",
            Group::Chern => "chern",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ALL_GROUPS
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown check group `{s}`"))
    }
}

/// Tolerance tiers by the number of derivatives a residual consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Algebraic,
    FirstOrder,
    SecondOrder,
    HigherOrder,
}

impl Tier {
    pub fn tolerance(self) -> f64 {
        match self {
            Tier::Algebraic => 1e-10,
            Tier::FirstOrder => 1e-8,
            Tier::SecondOrder => 1e-7,
            Tier::HigherOrder => 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckInfo {
    pub name: &'static str,
    pub group: Group,
    pub tier: Tier,
    /// Hypotheses under which the identity must hold; on instances that do
    /// not declare them the residual is reported without a verdict.
    pub requires: &'static [Hypothesis],
    /// Residual is relative to |R|.
    pub relative: bool,
    pub formula: &'static str,
}

impl CheckInfo {
    pub fn applies(&self, hyps: &BTreeSet<Hypothesis>) -> bool {
        self.requires.iter().all(|h| hyps.contains(h))
    }
}

use Group::*;
use Hypothesis::{Family, Gray2, Gray3};
use Tier::*;

const fn c(
    name: &'static str,
    group: Group,
    tier: Tier,
    requires: &'static [Hypothesis],
    formula: &'static str,
) -> CheckInfo {
    CheckInfo {
        name,
        group,
        tier,
        requires,
        relative: false,
        formula,
    }
}

const fn rel(mut info: CheckInfo) -> CheckInfo {
    info.relative = true;
    info
}

pub const CATALOGUE: &[CheckInfo] = &[
    c("d_omega", Compat, FirstOrder, &[], "dΩ = 0"),
    c("j_squared", Compat, Algebraic, &[], "J² = −Id"),
    c("j_orthogonal", Compat, Algebraic, &[], "g(J·, J·) = g"),
    c("omega_norm", Compat, Algebraic, &[], "|Ω|² = 2"),
    c("metric_spd", Compat, Algebraic, &[], "g positive definite"),
    c("cauchy_riemann", Compat, Algebraic, &[Family], "∂w/∂x = ∂v/∂y, ∂w/∂y = −∂v/∂x"),
    rel(c("g3_i", Gray, FirstOrder, &[Gray3], "Ric'' = 0 and ρ*'' = 0")),
    rel(c("g3_iii", Gray, FirstOrder, &[Gray3], "Ric* − Ric = ((κ − s)/6) g")),
    rel(c("g3_iv", Gray, FirstOrder, &[Gray3], "R(X,Y,Z,U) = R(JX,JY,JZ,JU)")),
    rel(c("g3_v", Gray, FirstOrder, &[Gray3], "[R, P''] = 0 with P'' the projection onto [[Λ^{0,2}]]")),
    rel(c(
        "g2",
        Gray,
        FirstOrder,
        &[Gray2],
        "R(X,Y,Z,U) − R(JX,JY,Z,U) = R(JX,Y,JZ,U) + R(JX,Y,Z,JU)",
    )),
    c(
        "u2_recompose",
        U2,
        Algebraic,
        &[],
        "R = (s/12)Id + W₁⁺ + W₂⁺ + W₃⁺ + ½Ric₀'⊙g + ½Ric₀''⊙g + W⁻",
    ),
    c("s_star", U2, Algebraic, &[], "s* = (2κ + s)/3"),
    c("s*-s", U2, FirstOrder, &[], "s* − s = |∇Ω|²"),
    c("naOm-N", U2, FirstOrder, &[], "(∇_XΩ)(Y,Z) = ½⟨JX, N(Y,Z)⟩"),
    c("naJ", U2, FirstOrder, &[], "∇_{JX}J = −J∇_XJ"),
    c("ddJ+dJd", U2, FirstOrder, &[], "(dd^J + d^Jd)f = (d^Jf)(N)"),
    c("laplacian", U2, FirstOrder, &[], "Δf = −⟨dd^Jf, Ω⟩"),
    c("na-om", U2, FirstOrder, &[], "∇Ω = a⊗φ − Ja⊗Jφ"),
    c("na-phi", U2, FirstOrder, &[], "∇φ = −a⊗Ω + b⊗Jφ, ∇Jφ = Ja⊗Ω − b⊗φ"),
    c("a_norm", U2, FirstOrder, &[], "|∇Ω|² = 4|a|²"),
    c("gauge_orthonormal", U2, Algebraic, &[], "{Ω, φ, Jφ}/√2 orthonormal in Λ⁺"),
    c(
        "gauge_rotation",
        U2,
        FirstOrder,
        &[],
        "φ' = cosθ φ + sinθ Jφ ⇒ a' = cosθ a − sinθ Ja, b' = b + dθ",
    ),
    c("weitzOm", Weitzenbock, FirstOrder, &[], "½∇*∇Ω = ρ* − ρ"),
    c("delnaom", Weitzenbock, FirstOrder, &[], "δ^∇(∇Ω) = 2ρ*'' + ((κ − s)/3)Ω"),
    c("ricid", Weitzenbock, FirstOrder, &[], "∇²_{X,Y}Ω − ∇²_{Y,X}Ω = [J, R_{X,Y}]"),
    c(
        "jpb2",
        Weitzenbock,
        HigherOrder,
        &[],
        "((d^∇δ^∇ + δ^∇d^∇)V)_X = (∇*∇V)_X + V_{Ric(X)} + (R·V)_X, V = ∇Ω",
    ),
    c(
        "laplacenaom*",
        Weitzenbock,
        HigherOrder,
        &[],
        "∇*∇(∇Ω) = 2∇ρ*'' − 2J(A⁺)'' − ∇_{Ric(·)}Ω − 2R·∇Ω + 2∇_{Ric₀'(·)}Ω + ⅓d(κ−s)⊗Ω + ((κ−s)/3)∇Ω",
    ),
    c(
        "laplacenaom",
        Weitzenbock,
        HigherOrder,
        &[],
        "∇*∇(∇Ω)_X expanded through the U(2) pieces, including A_X and δW₃⁺ terms",
    ),
    c(
        "weitzenbock1",
        Weitzenbock,
        HigherOrder,
        &[Gray3],
        "∇*∇(∇Ω) + (3s/4)∇Ω + ∇_{Ric₀(·)}Ω = 0",
    ),
    c(
        "bianchi+",
        Bianchi,
        SecondOrder,
        &[],
        "self-dual part of the differential Bianchi identity in U(2) terms",
    ),
    c(
        "bianchi-",
        Bianchi,
        SecondOrder,
        &[],
        "∇_{JZ}ρ₀ + ⅙(ds∧Z♭)⁻ = 2(δW⁻)_Z + A⁻_Z",
    ),
    c(
        "bianchiOm",
        Bianchi,
        SecondOrder,
        &[],
        "⅓(d^J(κ−s))_Z = 2⟨(δW₃⁺)_Z, Ω⟩ + 2(δρ*'')_Z − ⟨ρ*'', ∇_{JZ}Ω⟩ + ⟨A⁺_Z, Ω⟩",
    ),
    c(
        "bianchi+2,0",
        Bianchi,
        SecondOrder,
        &[],
        "[[Λ^{0,2}]] part of the self-dual Bianchi identity",
    ),
    c("riccibianchi", Bianchi, FirstOrder, &[], "−δ(ρ₀ − (s/4)Ω) = Jδ(Ric'')"),
    c("contracted_bianchi", Bianchi, FirstOrder, &[], "δ(Ric₀ − (s/4)g) = 0"),
    c(
        "cotton-york",
        Bianchi,
        SecondOrder,
        &[],
        "2C_Z = ∇_{JZ}ρ₀ − ¼(d^Js)_ZΩ + ∇_{ρ₀(Z)}Ω + ⅙ds∧Z♭ − A_Z",
    ),
    c("delta_w_c", Bianchi, SecondOrder, &[], "δW = C"),
    c(
        "deltaw+1",
        Bianchi,
        SecondOrder,
        &[],
        "(δW₁⁺)_Z = −⅛(d^Jκ)_ZΩ + (κ/8)∇_{JZ}Ω + (1/12)(dκ∧Z♭)⁺",
    ),
    c(
        "deltaw+2",
        Bianchi,
        SecondOrder,
        &[],
        "(δW₂⁺)_Z = ½∇_{JZ}ρ*'' + ½∇_{ρ*''(Z)}Ω + ½(δρ*'')_ZΩ",
    ),
    c(
        "lem3-1",
        Bianchi,
        SecondOrder,
        &[Gray3],
        "¼d|∇Ω|² = d|a|² = −J⟨δW₃⁺, Ω⟩ = −2JW₃⁺(φ)(a)",
    ),
    c("rho_closed", Bianchi, FirstOrder, &[Gray3], "dρ = 0"),
    c("star", Chern, FirstOrder, &[], "da − Ja∧b = −R(Jφ), d(Ja) + a∧b = −R(φ)"),
    c("starstar", Chern, FirstOrder, &[], "db = a∧Ja − ρ*"),
    c("chernform_closed", Chern, FirstOrder, &[], "d(ρ* − a∧Ja) = 0"),
    c(
        "gammaI-gammaJ",
        Chern,
        SecondOrder,
        &[Gray3],
        "γ_I = 3γ_J − dd^J ln|∇Ω|²",
    ),
    c("chernforms_I", Chern, SecondOrder, &[Family], "γ_I = (s/2)Ω_Σ"),
    c("chernforms_J", Chern, SecondOrder, &[Family], "γ_J = (s/2 + |∇Ω|²/4)Ω_Σ"),
    c("ricci_shape", Chern, FirstOrder, &[Family], "Ric = (s/2)g_Σ"),
    c(
        "m1",
        Section4,
        FirstOrder,
        &[Gray3],
        "m₁ = ½d ln|∇Ω|² = −(1/|a|²)JW₃⁺(φ)(a)",
    ),
    c(
        "naa",
        Section4,
        FirstOrder,
        &[Gray3],
        "n₁ = −b − Jm₁, m₂ = ½Ja + Jm₀, n₂ = −Jm₂ = ½a + m₀ with m₀♯ ∈ D",
    ),
    c("abar", Section4, FirstOrder, &[Gray3], "ā = 2m₀"),
    c("na-bar-Om", Section4, FirstOrder, &[Gray3], "∇Ω̄ = ā⊗φ̄ − Iā⊗Iφ̄"),
    c("na-bar-phi", Section4, FirstOrder, &[Gray3], "∇φ̄ = b̄⊗Iφ̄ − ā⊗Ω̄"),
    c("bar-b", Section4, FirstOrder, &[Gray3], "b̄ = 3b + d^J ln|∇Ω|²"),
    c("d_omega_bar", Section4, FirstOrder, &[Gray3], "dΩ̄ = 0"),
    c("nabla_I", Section4, FirstOrder, &[Gray3], "∇I = 0"),
    c(
        "barpsi",
        Section4,
        SecondOrder,
        &[Gray3],
        "ρ₀ = ¼(s + |∇Ω̄|²/4)Ω̄ + Ψ̄, (ρ̄*)''_I = Ψ̄, Ψ̄ = ½∇_{d ln|∇Ω|²}Ω̄",
    ),
    c("D_tangent", Section4, FirstOrder, &[Family], "D = span(∂x, ∂y)"),
    c(
        "sigma_explicit",
        Section4,
        FirstOrder,
        &[Family],
        "g_Σ, Ω_Σ and Ω̄ from D agree with the explicit construction",
    ),
];

pub fn lookup(name: &str) -> Option<&'static CheckInfo> {
    CATALOGUE.iter().find(|c| c.name == name)
}

pub fn in_groups(groups: &BTreeSet<Group>) -> impl Iterator<Item = &'static CheckInfo> + '_ {
    CATALOGUE.iter().filter(move |c| groups.contains(&c.group))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_groups_parse() {
        let names: BTreeSet<_> = CATALOGUE.iter().map(|c| c.name).collect();
        assert_eq!(names.len(), CATALOGUE.len());
        for g in ALL_GROUPS {
            assert_eq!(g.name().parse::<Group>().unwrap(), g);
        }
        assert!("curvature".parse::<Group>().is_err());
    }
}
