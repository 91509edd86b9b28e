//! Truncated multivariate Taylor arithmetic in four variables.
//!
//! A [`Jet`] stores the normalized Taylor coefficients `∂^α f / α!` of a
//! scalar field at a base point, for every multi-index of total degree at
//! most [`MAX_ORDER`]. Each jet also carries the degree up to which its
//! coefficients are trustworthy; differentiation lowers it by one and
//! products keep the minimum of their operands.

use std::fmt;
use std::sync::OnceLock;

use crate::error::JetError;

/// Number of chart variables.
pub const NVARS: usize = 4;
/// Highest retained total degree.
pub const MAX_ORDER: usize = 4;
/// Coefficients per jet: C(NVARS + MAX_ORDER, MAX_ORDER).
pub const NCOEFFS: usize = 70;

/// Number of monomials of total degree `<= d`, for d = 0..=4.
const PREFIX: [usize; MAX_ORDER + 1] = [1, 5, 15, 35, 70];

/// Exponent vector of a monomial in (x, y, z, t).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex([u8; NVARS]);

impl MultiIndex {
    pub fn new(exponents: [u8; NVARS]) -> Result<Self, JetError> {
        let m = MultiIndex(exponents);
        if m.degree() > MAX_ORDER {
            return Err(JetError::DegreeTooHigh(m.degree()));
        }
        Ok(m)
    }

    pub fn zero() -> Self {
        MultiIndex([0; NVARS])
    }

    /// The first-order multi-index e_var.
    pub fn unit(var: usize) -> Self {
        let mut e = [0; NVARS];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> [u8; NVARS] {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// α! = Π α_i!
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&e| (1..=e as u64).product::<u64>() as f64)
            .product()
    }

    /// Position of this monomial in the coefficient layout.
    pub fn position(&self) -> usize {
        tables().position(*self)
    }

    /// Inverse of [`MultiIndex::position`].
    pub fn at_position(pos: usize) -> Self {
        tables().monomials[pos]
    }

    fn checked_add(self, other: MultiIndex) -> Option<MultiIndex> {
        let mut e = [0u8; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + other.0[i];
        }
        let m = MultiIndex(e);
        (m.degree() <= MAX_ORDER).then_some(m)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Monomial layout and product tables, built once.
struct Tables {
    /// Graded lexicographic order: by degree, then exponents descending.
    monomials: Vec<MultiIndex>,
    /// (i, j, k) with monomial_i * monomial_j = monomial_k, sorted by deg(k).
    triples: Vec<(u8, u8, u8)>,
    /// triples[..cut[d]] are exactly those with deg(k) <= d.
    cut: [usize; MAX_ORDER + 1],
    /// deriv[v][k] = position of monomial_k + e_v, when it fits.
    deriv: [[Option<u8>; NCOEFFS]; NVARS],
}

impl Tables {
    fn build() -> Self {
        let mut monomials = Vec::with_capacity(NCOEFFS);
        for d in 0..=MAX_ORDER as u8 {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    for c in (0..=d - a - b).rev() {
                        monomials.push(MultiIndex([a, b, c, d - a - b - c]));
                    }
                }
            }
        }
        debug_assert_eq!(monomials.len(), NCOEFFS);

        let pos = |m: MultiIndex| monomials.iter().position(|&x| x == m).unwrap();
        let mut triples = Vec::new();
        for (i, &mi) in monomials.iter().enumerate() {
            for (j, &mj) in monomials.iter().enumerate() {
                if let Some(mk) = mi.checked_add(mj) {
                    triples.push((i as u8, j as u8, pos(mk) as u8));
                }
            }
        }
        triples.sort_by_key(|&(_, _, k)| (monomials[k as usize].degree(), k));
        let mut cut = [0; MAX_ORDER + 1];
        for (d, c) in cut.iter_mut().enumerate() {
            *c = triples
                .iter()
                .filter(|t| monomials[t.2 as usize].degree() <= d)
                .count();
        }

        let mut deriv = [[None; NCOEFFS]; NVARS];
        for (v, row) in deriv.iter_mut().enumerate() {
            for (k, &mk) in monomials.iter().enumerate() {
                if let Some(up) = mk.checked_add(MultiIndex::unit(v)) {
                    row[k] = Some(pos(up) as u8);
                }
            }
        }
        Tables {
            monomials,
            triples,
            cut,
            deriv,
        }
    }

    fn position(&self, m: MultiIndex) -> usize {
        // graded layout: skip lower degrees, then count predecessors inside the degree
        let d = m.degree();
        let start = if d == 0 { 0 } else { PREFIX[d - 1] };
        start
            + self.monomials[start..PREFIX[d]]
                .iter()
                .position(|&x| x == m)
                .expect("monomial present in its degree block")
    }
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(Tables::build)
}

/// Truncated Taylor expansion of a scalar field around `base`.
#[derive(Clone, PartialEq)]
pub struct Jet {
    base: [f64; NVARS],
    order: u8,
    coeffs: [f64; NCOEFFS],
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet")
            .field("base", &self.base)
            .field("order", &self.order)
            .field("coeffs", &&self.coeffs[..PREFIX[self.order as usize]])
            .finish()
    }
}

impl Jet {
    /// Exact constant; valid to every order.
    pub fn constant(base: [f64; NVARS], c: f64) -> Self {
        let mut coeffs = [0.0; NCOEFFS];
        coeffs[0] = c;
        Jet {
            base,
            order: MAX_ORDER as u8,
            coeffs,
        }
    }

    /// The coordinate function x_var expanded at `base`.
    pub fn seed(base: [f64; NVARS], var: usize) -> Result<Self, JetError> {
        if var >= NVARS {
            return Err(JetError::VariableOutOfRange(var));
        }
        let mut j = Jet::constant(base, base[var]);
        j.coeffs[1 + var] = 1.0;
        Ok(j)
    }

    /// The four coordinate jets at `base`.
    pub fn coordinates(base: [f64; NVARS]) -> [Jet; NVARS] {
        std::array::from_fn(|v| Jet::seed(base, v).expect("var < NVARS"))
    }

    /// Build a jet from raw normalized coefficients.
    pub fn from_coeffs(base: [f64; NVARS], order: usize, coeffs: [f64; NCOEFFS]) -> Self {
        assert!(order <= MAX_ORDER);
        let mut c = coeffs;
        c[PREFIX[order]..].iter_mut().for_each(|x| *x = 0.0);
        Jet {
            base,
            order: order as u8,
            coeffs: c,
        }
    }

    pub fn base(&self) -> [f64; NVARS] {
        self.base
    }

    /// Highest total degree whose coefficients are retained.
    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[f64; NCOEFFS] {
        &self.coeffs
    }

    /// Normalized coefficient ∂^α f / α!.
    pub fn coeff(&self, alpha: MultiIndex) -> Result<f64, JetError> {
        self.check_depth(alpha.degree())?;
        Ok(self.coeffs[alpha.position()])
    }

    /// Mixed partial derivative ∂^α f at the base point.
    pub fn partial(&self, alpha: MultiIndex) -> Result<f64, JetError> {
        Ok(self.coeff(alpha)? * alpha.factorial())
    }

    /// The jet of ∂f/∂x_var, one order shallower.
    pub fn derivative(&self, var: usize) -> Result<Jet, JetError> {
        if var >= NVARS {
            return Err(JetError::VariableOutOfRange(var));
        }
        if self.order == 0 {
            return Err(JetError::DepthExhausted);
        }
        let t = tables();
        let order = self.order as usize - 1;
        let mut coeffs = [0.0; NCOEFFS];
        for (k, c) in coeffs.iter_mut().enumerate().take(PREFIX[order]) {
            let up = t.deriv[var][k].expect("degree below MAX_ORDER") as usize;
            let e = t.monomials[up].0[var] as f64;
            *c = e * self.coeffs[up];
        }
        Ok(Jet {
            base: self.base,
            order: order as u8,
            coeffs,
        })
    }

    /// Drop coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        let order = order.min(self.order as usize);
        Jet::from_coeffs(self.base, order, self.coeffs)
    }

    fn check_depth(&self, degree: usize) -> Result<(), JetError> {
        if degree > MAX_ORDER {
            return Err(JetError::DegreeTooHigh(degree));
        }
        if degree > self.order as usize {
            return Err(JetError::DepthExhausted);
        }
        Ok(())
    }

    #[inline]
    fn same_base(&self, other: &Jet) {
        assert!(
            self.base == other.base,
            "jets expanded at different base points: {:?} vs {:?}",
            self.base,
            other.base
        );
    }

    fn n(&self) -> usize {
        PREFIX[self.order as usize]
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        self.same_base(rhs);
        let order = self.order.min(rhs.order);
        let mut out = Jet::constant(self.base, 0.0);
        out.order = order;
        for k in 0..PREFIX[order as usize] {
            out.coeffs[k] = self.coeffs[k] + rhs.coeffs[k];
        }
        out
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        self.same_base(rhs);
        let order = self.order.min(rhs.order);
        let mut out = Jet::constant(self.base, 0.0);
        out.order = order;
        for k in 0..PREFIX[order as usize] {
            out.coeffs[k] = self.coeffs[k] - rhs.coeffs[k];
        }
        out
    }

    pub fn neg(&self) -> Jet {
        self.scale(-1.0)
    }

    pub fn scale(&self, c: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[..self.n()].iter_mut().for_each(|x| *x *= c);
        out
    }

    pub fn add_const(&self, c: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Degree-truncated Cauchy product.
    pub fn mul(&self, rhs: &Jet) -> Jet {
        self.same_base(rhs);
        let mut out = Jet::constant(self.base, 0.0);
        out.order = self.order.min(rhs.order);
        accumulate_product(&mut out.coeffs, &self.coeffs, &rhs.coeffs, out.order);
        out
    }

    /// self += a * b
    pub fn add_mul_assign(&mut self, a: &Jet, b: &Jet) {
        self.same_base(a);
        self.same_base(b);
        let order = self.order.min(a.order).min(b.order);
        self.coeffs[PREFIX[order as usize]..].iter_mut().for_each(|x| *x = 0.0);
        self.order = order;
        accumulate_product(&mut self.coeffs, &a.coeffs, &b.coeffs, order);
    }

    /// self += c * a
    pub fn add_scaled_assign(&mut self, a: &Jet, c: f64) {
        self.same_base(a);
        let order = self.order.min(a.order);
        self.coeffs[PREFIX[order as usize]..].iter_mut().for_each(|x| *x = 0.0);
        self.order = order;
        for k in 0..PREFIX[order as usize] {
            self.coeffs[k] += c * a.coeffs[k];
        }
    }

    /// Compose a univariate function given its normalized Taylor coefficients
    /// `taylor[n] = f^(n)(u0) / n!` at u0 = self.value().
    fn compose(&self, taylor: &[f64; MAX_ORDER + 1]) -> Jet {
        let mut delta = self.clone();
        delta.coeffs[0] = 0.0;
        let mut out = Jet::constant(self.base, taylor[0]);
        out.order = self.order;
        let mut power = delta.clone();
        for (n, &tn) in taylor.iter().enumerate().skip(1) {
            if n > self.order as usize {
                break;
            }
            out.add_scaled_assign(&power, tn);
            if n < self.order as usize {
                power = power.mul(&delta);
            }
        }
        out
    }

    pub fn recip(&self) -> Result<Jet, JetError> {
        let u0 = self.value();
        if u0 == 0.0 {
            return Err(JetError::DivideByZero);
        }
        let mut t = [0.0; MAX_ORDER + 1];
        let mut p = 1.0 / u0;
        for (n, tn) in t.iter_mut().enumerate() {
            *tn = if n % 2 == 0 { p } else { -p };
            p /= u0;
        }
        Ok(self.compose(&t))
    }

    pub fn div(&self, rhs: &Jet) -> Result<Jet, JetError> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        let mut t = [0.0; MAX_ORDER + 1];
        let mut fact = 1.0;
        for (n, tn) in t.iter_mut().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            *tn = e / fact;
        }
        self.compose(&t)
    }

    pub fn ln(&self) -> Result<Jet, JetError> {
        let u0 = self.value();
        if !(u0 > 0.0) {
            return Err(JetError::Domain {
                op: "ln",
                value: u0,
            });
        }
        let mut t = [0.0; MAX_ORDER + 1];
        t[0] = u0.ln();
        for (n, tn) in t.iter_mut().enumerate().skip(1) {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            *tn = sign / (n as f64 * u0.powi(n as i32));
        }
        Ok(self.compose(&t))
    }

    pub fn sqrt(&self) -> Result<Jet, JetError> {
        let u0 = self.value();
        if !(u0 > 0.0) {
            return Err(JetError::Domain {
                op: "sqrt",
                value: u0,
            });
        }
        // sqrt(u0) * Σ C(1/2, n) (δ/u0)^n
        let r = u0.sqrt();
        let mut t = [0.0; MAX_ORDER + 1];
        let mut binom = 1.0;
        for (n, tn) in t.iter_mut().enumerate() {
            if n > 0 {
                binom *= (0.5 - (n as f64 - 1.0)) / n as f64;
            }
            *tn = r * binom / u0.powi(n as i32);
        }
        Ok(self.compose(&t))
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cycle = [s, c, -s, -c];
        self.compose(&trig_coeffs(cycle))
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cycle = [c, -s, -c, s];
        self.compose(&trig_coeffs(cycle))
    }

    /// Integer power; negative exponents require a nonzero value.
    pub fn powi(&self, n: i32) -> Result<Jet, JetError> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut result = Jet::constant(self.base, 1.0);
        let mut base = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if n == 0 {
            result.order = self.order;
        }
        Ok(result)
    }
}

fn trig_coeffs(cycle: [f64; 4]) -> [f64; MAX_ORDER + 1] {
    let mut t = [0.0; MAX_ORDER + 1];
    let mut fact = 1.0;
    for (n, tn) in t.iter_mut().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        *tn = cycle[n % 4] / fact;
    }
    t
}

#[inline]
fn accumulate_product(out: &mut [f64; NCOEFFS], a: &[f64; NCOEFFS], b: &[f64; NCOEFFS], order: u8) {
    let t = tables();
    for &(i, j, k) in &t.triples[..t.cut[order as usize]] {
        out[k as usize] += a[i as usize] * b[j as usize];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const P0: [f64; 4] = [0.0; 4];

    fn mi(e: [u8; 4]) -> MultiIndex {
        MultiIndex::new(e).unwrap()
    }

    #[test]
    fn layout_is_graded_and_invertible() {
        assert_eq!(tables().monomials.len(), NCOEFFS);
        for pos in 0..NCOEFFS {
            let m = MultiIndex::at_position(pos);
            assert_eq!(m.position(), pos);
        }
        assert_eq!(mi([0, 0, 0, 0]).position(), 0);
        assert_eq!(mi([1, 0, 0, 0]).position(), 1);
        assert_eq!(mi([0, 0, 0, 1]).position(), 4);
        assert_eq!(tables().triples.len(), 495);
        assert!(MultiIndex::new([2, 2, 1, 0]).is_err());
    }

    #[test]
    fn seed_examples() {
        let j = Jet::seed([1.0, 0.0, 0.0, 0.0], 0).unwrap();
        assert_eq!(j.coeff(mi([0, 0, 0, 0])).unwrap(), 1.0);
        assert_eq!(j.coeff(mi([1, 0, 0, 0])).unwrap(), 1.0);
        assert_eq!(j.coeffs().iter().filter(|&&c| c != 0.0).count(), 2);

        let j = Jet::seed([2.0, 3.0, 0.0, 0.0], 1).unwrap();
        assert_eq!(j.value(), 3.0);
        assert_eq!(j.coeff(mi([0, 1, 0, 0])).unwrap(), 1.0);
        assert_eq!(j.coeffs().iter().filter(|&&c| c != 0.0).count(), 2);

        assert!(matches!(
            Jet::seed(P0, 4),
            Err(JetError::VariableOutOfRange(4))
        ));
    }

    #[test]
    fn mixed_partial_of_xy_is_one() {
        for p in [[0.3, -1.2, 4.0, 0.5], [7.0, 2.0, -3.0, 1.0]] {
            let xy = Jet::seed(p, 0).unwrap().mul(&Jet::seed(p, 1).unwrap());
            assert_eq!(xy.partial(mi([1, 1, 0, 0])).unwrap(), 1.0);
        }
    }

    #[test]
    fn square_expansion() {
        let x = Jet::seed([3.0, 0.0, 0.0, 0.0], 0).unwrap();
        let x2 = x.mul(&x);
        assert_eq!(x2.value(), 9.0);
        assert_eq!(x2.coeff(mi([1, 0, 0, 0])).unwrap(), 6.0);
        assert_eq!(x2.coeff(mi([2, 0, 0, 0])).unwrap(), 1.0);
        assert_eq!(x2.coeff(mi([3, 0, 0, 0])).unwrap(), 0.0);
    }

    #[test]
    fn exp_series() {
        let e = Jet::seed(P0, 0).unwrap().exp();
        let expected = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (n, &c) in expected.iter().enumerate() {
            assert_relative_eq!(e.coeff(mi([n as u8, 0, 0, 0])).unwrap(), c, epsilon = 1e-15);
        }
    }

    #[test]
    fn ln_second_coefficient_matches_finite_differences() {
        let x = Jet::seed([1.0, 0.0, 0.0, 0.0], 0).unwrap();
        let l = x.ln().unwrap();
        // oracle: central second difference of ln at 1 with step 1e-4
        let h = 1e-4_f64;
        let fd = ((1.0 + h).ln() - 2.0 * 1.0_f64.ln() + (1.0 - h).ln()) / (h * h);
        assert_relative_eq!(fd, -1.0, epsilon = 1e-6);
        assert_relative_eq!(l.coeff(mi([2, 0, 0, 0])).unwrap(), fd / 2.0, epsilon = 1e-6);
        assert_relative_eq!(l.coeff(mi([2, 0, 0, 0])).unwrap(), -0.5, epsilon = 1e-15);
    }

    #[test]
    fn partial_examples() {
        let c = Jet::constant([1.0, 2.0, 3.0, 4.0], 5.0);
        for pos in 1..NCOEFFS {
            assert_eq!(c.partial(MultiIndex::at_position(pos)).unwrap(), 0.0);
        }
        let p = [1.0, 1.0, 0.0, 0.0];
        let x = Jet::seed(p, 0).unwrap();
        let y = Jet::seed(p, 1).unwrap();
        let x2y = x.mul(&x).mul(&y);
        assert_eq!(x2y.partial(mi([2, 1, 0, 0])).unwrap(), 2.0);
    }

    #[test]
    fn exp_sin_mixed_partial_matches_finite_differences() {
        let x = Jet::seed(P0, 0).unwrap();
        let y = Jet::seed(P0, 1).unwrap();
        let f = x.exp().mul(&y.sin());
        let h = 1e-4;
        let g = |a: f64, b: f64| a.exp() * b.sin();
        let fd = (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4.0 * h * h);
        let jet = f.partial(mi([1, 1, 0, 0])).unwrap();
        assert_relative_eq!(jet, 1.0, epsilon = 1e-15);
        assert_relative_eq!(jet, fd, epsilon = 1e-7);
    }

    #[test]
    fn reciprocal_is_geometric_series() {
        let x = Jet::seed([2.0, 0.0, 0.0, 0.0], 0).unwrap();
        let r = Jet::constant(x.base(), 1.0).div(&x).unwrap();
        // 1/x = Σ (-1)^n (x-2)^n / 2^(n+1)
        for n in 0..=4u8 {
            let expected = (-1.0f64).powi(n as i32) / 2.0f64.powi(n as i32 + 1);
            assert_relative_eq!(r.coeff(mi([n, 0, 0, 0])).unwrap(), expected, epsilon = 1e-13);
        }
    }

    #[test]
    fn domain_errors() {
        let z = Jet::constant(P0, 0.0);
        assert!(matches!(z.recip(), Err(JetError::DivideByZero)));
        assert!(matches!(z.ln(), Err(JetError::Domain { op: "ln", .. })));
        assert!(matches!(
            Jet::constant(P0, -1.0).sqrt(),
            Err(JetError::Domain { op: "sqrt", .. })
        ));
    }

    #[test]
    fn derivative_lowers_order_until_exhausted() {
        let x = Jet::seed([1.0, 0.0, 0.0, 0.0], 0).unwrap();
        let mut j = x.mul(&x).mul(&x).mul(&x);
        for k in (0..4).rev() {
            j = j.derivative(0).unwrap();
            assert_eq!(j.order(), k);
        }
        assert_relative_eq!(j.value(), 24.0);
        assert!(matches!(j.derivative(0), Err(JetError::DepthExhausted)));
        assert!(matches!(
            j.partial(mi([1, 0, 0, 0])),
            Err(JetError::DepthExhausted)
        ));
    }

    #[test]
    fn sqrt_squares_back() {
        let p = [0.7, 0.2, -0.4, 1.1];
        let [x, y, ..] = Jet::coordinates(p);
        let f = x.mul(&x).add(&y.mul(&y)).add_const(1.0);
        let r = f.sqrt().unwrap();
        let back = r.mul(&r);
        for k in 0..NCOEFFS {
            assert_relative_eq!(back.coeffs()[k], f.coeffs()[k], epsilon = 1e-13);
        }
    }

    #[test]
    #[should_panic(expected = "different base points")]
    fn mixing_base_points_aborts() {
        let a = Jet::constant([0.0; 4], 1.0);
        let b = Jet::constant([1.0, 0.0, 0.0, 0.0], 1.0);
        let _ = a.add(&b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn jet() -> impl Strategy<Value = Jet> {
            proptest::collection::vec(-1.0..1.0f64, NCOEFFS)
                .prop_map(|v| Jet::from_coeffs(P0, 4, std::array::from_fn(|i| v[i])))
        }

        fn close(a: &Jet, b: &Jet, tol: f64) -> bool {
            a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs()))
        }

        proptest! {
            #[test]
            fn product_is_commutative_and_associative(a in jet(), b in jet(), c in jet()) {
                prop_assert!(close(&a.mul(&b), &b.mul(&a), 1e-14));
                prop_assert!(close(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)), 1e-12));
            }

            #[test]
            fn product_rule(a in jet(), b in jet(), var in 0usize..4) {
                let lhs = a.mul(&b).derivative(var).unwrap();
                let ta = a.truncate(3);
                let tb = b.truncate(3);
                let rhs = a.derivative(var).unwrap().mul(&tb).add(&ta.mul(&b.derivative(var).unwrap()));
                prop_assert!(close(&lhs, &rhs, 1e-12));
            }

            #[test]
            fn exp_ln_inverse(a in jet()) {
                let back = a.exp().ln().unwrap();
                prop_assert!(close(&back, &a, 1e-11));
            }

            #[test]
            fn recip_inverts(a in jet(), c in 1.5..3.0f64) {
                let shifted = a.add_const(c);
                let one = shifted.mul(&shifted.recip().unwrap());
                prop_assert!(close(&one, &Jet::constant(P0, 1.0), 1e-11));
            }

            #[test]
            fn sin_cos_square_sum(a in jet()) {
                let s = a.sin();
                let c = a.cos();
                prop_assert!(close(&s.mul(&s).add(&c.mul(&c)), &Jet::constant(P0, 1.0), 1e-12));
            }
        }
    }
}
