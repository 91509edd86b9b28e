//! Finite-difference reference pipeline for the curvature scalars.
//!
//! Evaluates the metric and Ω in plain `f64`, differentiates by central
//! differences and works in an orthonormal frame with 6×6 operator matrices.
//! It shares no derivative or tensor code with the jet engine and exists to
//! cross-check it.

use nalgebra::{Matrix4, Matrix6, Vector6};

use crate::almost_hermitian::AlmostHermitianField;
use crate::error::GeometryError;
use crate::exterior::DIM;

type M4 = [[f64; DIM]; DIM];
type Gamma = [[[f64; DIM]; DIM]; DIM];

pub const DEFAULT_STEP: f64 = 1e-3;

/// Curvature scalars at a point, with the same normalizations as the engine:
/// full-contraction tensor norms, |∇Ω|² = ½∇_kΩ_ij∇^kΩ^ij.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleScalars {
    pub norm_nabla_omega2: f64,
    pub s: f64,
    pub kappa: f64,
    pub s_star: f64,
    pub norm_wplus: f64,
    pub norm_wminus: f64,
    pub norm_ric: f64,
    pub norm_ric0: f64,
}

impl OracleScalars {
    pub fn as_array(&self) -> [f64; 8] {
        [
            self.norm_nabla_omega2,
            self.s,
            self.kappa,
            self.s_star,
            self.norm_wplus,
            self.norm_wminus,
            self.norm_ric,
            self.norm_ric0,
        ]
    }

    fn combine(fine: &Self, coarse: &Self) -> Self {
        let f = fine.as_array();
        let c = coarse.as_array();
        let r: [f64; 8] = std::array::from_fn(|i| (4.0 * f[i] - c[i]) / 3.0);
        OracleScalars {
            norm_nabla_omega2: r[0],
            s: r[1],
            kappa: r[2],
            s_star: r[3],
            norm_wplus: r[4],
            norm_wminus: r[5],
            norm_ric: r[6],
            norm_ric0: r[7],
        }
    }
}

fn shifted(p: &[f64; DIM], k: usize, d: f64) -> [f64; DIM] {
    let mut q = *p;
    q[k] += d;
    q
}

fn inverse(g: &M4) -> Result<M4, GeometryError> {
    let m = Matrix4::from_fn(|i, j| g[i][j]);
    let inv = m.try_inverse().ok_or(GeometryError::SingularMetric(0.0))?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| inv[(i, j)])))
}

/// ∂_k of a matrix-valued function by central differences.
fn partials<F>(f: &F, p: &[f64; DIM], h: f64) -> Result<[M4; DIM], GeometryError>
where
    F: Fn(&[f64; DIM]) -> Result<M4, GeometryError>,
{
    let mut out = [[[0.0; DIM]; DIM]; DIM];
    for (k, slot) in out.iter_mut().enumerate() {
        let plus = f(&shifted(p, k, h))?;
        let minus = f(&shifted(p, k, -h))?;
        for i in 0..DIM {
            for j in 0..DIM {
                slot[i][j] = (plus[i][j] - minus[i][j]) / (2.0 * h);
            }
        }
    }
    Ok(out)
}

fn christoffel<M: AlmostHermitianField>(m: &M, p: &[f64; DIM], h: f64) -> Result<Gamma, GeometryError> {
    let g = m.metric(p)?;
    let gi = inverse(&g)?;
    let dg = partials(&|q: &[f64; DIM]| m.metric(q), p, h)?;
    let mut gamma = [[[0.0; DIM]; DIM]; DIM];
    for k in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                gamma[k][i][j] = (0..DIM)
                    .map(|l| 0.5 * gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]))
                    .sum();
            }
        }
    }
    Ok(gamma)
}

/// Orthonormal frame columns F with Fᵀ g F = 1.
fn frame(g: &M4) -> Result<Matrix4<f64>, GeometryError> {
    let m = Matrix4::from_fn(|i, j| g[i][j]);
    let l = m.cholesky().ok_or(GeometryError::SingularMetric(0.0))?.l();
    l.transpose().try_inverse().ok_or(GeometryError::SingularMetric(0.0))
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Orthonormal basis of Λ± for the orientation `sign`, as rows in the
/// e_i∧e_j (i < j) basis.
fn half_basis(orient: f64, sd: f64) -> [Vector6<f64>; 3] {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let s = orient * sd;
    [
        Vector6::new(c, 0.0, 0.0, 0.0, 0.0, s * c),
        Vector6::new(0.0, c, 0.0, 0.0, -s * c, 0.0),
        Vector6::new(0.0, 0.0, c, s * c, 0.0, 0.0),
    ]
}

fn projector(orient: f64, sd: f64) -> Matrix6<f64> {
    half_basis(orient, sd)
        .iter()
        .fold(Matrix6::zeros(), |acc, v| acc + v * v.transpose())
}

/// One finite-difference evaluation at step `h`.
pub fn scalars_at_step<M: AlmostHermitianField>(m: &M, p: [f64; DIM], h: f64) -> Result<OracleScalars, GeometryError> {
    let g = m.metric(&p)?;
    let gamma = christoffel(m, &p, h)?;
    let mut dgamma = [[[[0.0; DIM]; DIM]; DIM]; DIM];
    for (c, slot) in dgamma.iter_mut().enumerate() {
        let plus = christoffel(m, &shifted(&p, c, h), h)?;
        let minus = christoffel(m, &shifted(&p, c, -h), h)?;
        for k in 0..DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    slot[k][i][j] = (plus[k][i][j] - minus[k][i][j]) / (2.0 * h);
                }
            }
        }
    }

    // Coordinate R_ijkl = −g_lm(∂_iΓ^m_jk − ∂_jΓ^m_ik + Γ^m_iaΓ^a_jk − Γ^m_jaΓ^a_ik).
    let mut r = [[[[0.0; DIM]; DIM]; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                let mut up = [0.0; DIM];
                for (mm, u) in up.iter_mut().enumerate() {
                    *u = dgamma[i][mm][j][k] - dgamma[j][mm][i][k];
                    for a in 0..DIM {
                        *u += gamma[mm][i][a] * gamma[a][j][k] - gamma[mm][j][a] * gamma[a][i][k];
                    }
                }
                for l in 0..DIM {
                    r[i][j][k][l] = -(0..DIM).map(|mm| g[l][mm] * up[mm]).sum::<f64>();
                }
            }
        }
    }

    let f = frame(&g)?;
    let om = m.fundamental_form(&p)?;
    let dom = partials(&|q: &[f64; DIM]| m.fundamental_form(q), &p, h)?;
    let mut nom = [[[0.0; DIM]; DIM]; DIM];
    for k in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                nom[k][i][j] = dom[k][i][j]
                    - (0..DIM)
                        .map(|a| gamma[a][k][i] * om[a][j] + gamma[a][k][j] * om[i][a])
                        .sum::<f64>();
            }
        }
    }

    // Frame components.
    let rf = |a: usize, b: usize, c: usize, d: usize| {
        let mut acc = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        acc += r[i][j][k][l] * f[(i, a)] * f[(j, b)] * f[(k, c)] * f[(l, d)];
                    }
                }
            }
        }
        acc
    };
    let mut rfr = [[[[0.0; DIM]; DIM]; DIM]; DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                for d in 0..DIM {
                    rfr[a][b][c][d] = rf(a, b, c, d);
                }
            }
        }
    }
    let omf = f.transpose() * Matrix4::from_fn(|i, j| om[i][j]) * f;
    let mut norm_nabla_omega2 = 0.0;
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                let mut v = 0.0;
                for k in 0..DIM {
                    for i in 0..DIM {
                        for j in 0..DIM {
                            v += nom[k][i][j] * f[(k, a)] * f[(i, b)] * f[(j, c)];
                        }
                    }
                }
                norm_nabla_omega2 += 0.5 * v * v;
            }
        }
    }

    let ric = Matrix4::from_fn(|i, k| (0..DIM).map(|b| rfr[i][b][k][b]).sum::<f64>());
    let s = ric.trace();
    let ric0 = ric - Matrix4::identity() * (s / 4.0);

    // Curvature and Weyl operators on Λ² in the unit basis e_i∧e_j.
    let op = Matrix6::from_fn(|x, y| {
        let (i, j) = PAIRS[x];
        let (k, l) = PAIRS[y];
        rfr[i][j][k][l]
    });
    let hn = ric0 * 0.5 + Matrix4::identity() * (s / 24.0);
    let kn = Matrix6::from_fn(|x, y| {
        let (i, j) = PAIRS[x];
        let (k, l) = PAIRS[y];
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        hn[(i, k)] * d(j, l) + hn[(j, l)] * d(i, k) - hn[(i, l)] * d(j, k) - hn[(j, k)] * d(i, l)
    });
    let weyl = op - kn;
    let omega = Vector6::from_fn(|x, _| {
        let (i, j) = PAIRS[x];
        omf[(i, j)]
    });
    let orient = (omf[(0, 1)] * omf[(2, 3)] - omf[(0, 2)] * omf[(1, 3)] + omf[(0, 3)] * omf[(1, 2)]).signum();
    let pplus = projector(orient, 1.0);
    let pminus = projector(orient, -1.0);
    let wplus = pplus * weyl;
    let wminus = pminus * weyl;
    let kappa = 3.0 * omega.dot(&(wplus.transpose() * omega));
    let s_star = 2.0 * omega.dot(&(op.transpose() * omega));

    Ok(OracleScalars {
        norm_nabla_omega2,
        s,
        kappa,
        s_star,
        norm_wplus: 2.0 * wplus.norm(),
        norm_wminus: 2.0 * wminus.norm(),
        norm_ric: ric.norm(),
        norm_ric0: ric0.norm(),
    })
}

/// Richardson-extrapolated scalars from steps `h` and `h/2`.
pub fn scalars<M: AlmostHermitianField>(m: &M, p: [f64; DIM], h: f64) -> Result<OracleScalars, GeometryError> {
    let coarse = scalars_at_step(m, p, h)?;
    let fine = scalars_at_step(m, p, h / 2.0)?;
    Ok(OracleScalars::combine(&fine, &coarse))
}
