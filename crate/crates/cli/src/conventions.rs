//! The sign and normalization conventions the residuals are computed in.
//! Reports carry the SHA-256 of this sheet so that numbers produced under
//! different conventions are never compared by accident.

use sha2::{Digest, Sha256};

pub const SHEET: &str = "\
R_ijkl = <R(d_i, d_j) d_k, d_l>, Ric_ij = g^bd R_ibjd, s = tr Ric
curvature operator: R(phi)_kl = 1/2 phi^ij R_ijkl
h = Ric0/2 + s g/24, R = h (Kulkarni-Nomizu) g + W
2-form inner product: <a, b> = 1/2 a_ij b^ij, so |Omega|^2 = 2
tensor residual norms: full contraction with g, no symmetry factors
|nabla Omega|^2 = 1/2 nabla_k Omega_ij nabla^k Omega^ij
Omega(X, Y) = g(JX, Y), J^k_i = g^kl Omega_il
J on 1-forms: (J a)(X) = -a(JX); on 2-forms: (J psi)(X, Y) = -psi(JX, Y)
orientation: vol = Omega^Omega/2
rho* = R(Omega), Ric*(X, Y) = -rho*(JX, Y), s* = tr Ric*, kappa = 3<W+(Omega), Omega>
psi'' = (psi - psi(J., J.))/2 on 2-forms and symmetric 2-tensors
delta = -g^ij nabla_i (.)_j..., nabla*nabla = -g^ij nabla_i nabla_j, Delta f = -tr nabla^2 f
d^J f = J df, d^J a = -d(Ja)(J., J.)
gauge: phi = normalized [[Lambda^{0,2}]] part of dx^dy, else dx^dz, else dx^dt; |phi|^2 = 2
a_k = 1/4 nabla_k Omega_ij phi^ij, b_k = 1/2 <nabla_k phi, J phi>
gauge threshold: |nabla Omega|^2 > 1e-8
(T.V)_X = g^ij [T(X, d_i), V(d_j)] with 2-forms read as skew endomorphisms
(dW3+)_Z'' projects the 2-form slot
";

pub fn sheet_hash() -> String {
    hex::encode(Sha256::digest(SHEET.as_bytes()))
}

#[cfg(test)]
mod tests {
    #[test]
    fn hash_is_stable_hex() {
        let h = super::sheet_hash();
        assert_eq!(h.len(), 64);
        assert_eq!(h, super::sheet_hash());
    }
}
