//! Affine maps of the complex plane and orientation-preserving isometries.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::InequalityCheck;

pub type Point = Complex64;

/// Tolerance for exact algebra.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for long iterated chains.
pub const CHAIN_TOL: f64 = 1e-9;

pub fn pt(x: f64, y: f64) -> Point {
    Complex64::new(x, y)
}

/// `x -> u*x + v` with arbitrary complex coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub u: Complex64,
    pub v: Complex64,
}

impl AffineMap {
    pub fn new(u: Complex64, v: Complex64) -> Self {
        Self { u, v }
    }

    pub fn apply(&self, x: Point) -> Point {
        self.u * x + self.v
    }

    /// `|u| + |v|`, which is also the sup of `|f(x)|` over the closed unit disc.
    pub fn norm(&self) -> f64 {
        self.u.norm() + self.v.norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.u * s, self.v * s)
    }
}

impl std::ops::Sub for AffineMap {
    type Output = AffineMap;
    fn sub(self, o: AffineMap) -> AffineMap {
        AffineMap::new(self.u - o.u, self.v - o.v)
    }
}

impl std::ops::Add for AffineMap {
    type Output = AffineMap;
    fn add(self, o: AffineMap) -> AffineMap {
        AffineMap::new(self.u + o.u, self.v + o.v)
    }
}

#[derive(Deserialize)]
struct RawMotion {
    u: Complex64,
    c: Complex64,
}

/// `x -> u*x + c` with `|u| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMotion")]
pub struct RigidMotion {
    u: Complex64,
    c: Complex64,
}

impl TryFrom<RawMotion> for RigidMotion {
    type Error = Error;
    fn try_from(r: RawMotion) -> Result<Self> {
        RigidMotion::new(r.u, r.c)
    }
}

impl RigidMotion {
    /// Renormalizes `u` onto the unit circle. Fails for non-finite input or `u = 0`.
    pub fn new(u: Complex64, c: Complex64) -> Result<Self> {
        let m = u.norm();
        if !(m.is_finite() && m > 0.0 && c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::Invalid(format!("not a rigid motion: u = {u}, c = {c}")));
        }
        Ok(Self { u: u / m, c })
    }

    fn raw(u: Complex64, c: Complex64) -> Self {
        let m = u.norm();
        Self { u: if (m - 1.0).abs() > 1e-15 { u / m } else { u }, c }
    }

    pub fn identity() -> Self {
        Self { u: Complex64::new(1.0, 0.0), c: Complex64::new(0.0, 0.0) }
    }

    pub fn translation(c: Point) -> Self {
        Self { u: Complex64::new(1.0, 0.0), c }
    }

    /// Rotation by `phi` about `center`.
    pub fn rotation(center: Point, phi: f64) -> Self {
        let u = Complex64::from_polar(1.0, phi);
        Self { u, c: center * (1.0 - u) }
    }

    pub fn u(&self) -> Complex64 {
        self.u
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// Rotation angle in (-pi, pi].
    pub fn angle(&self) -> f64 {
        let a = self.u.arg();
        if a <= -PI { a + 2.0 * PI } else { a }
    }

    pub fn is_translation(&self) -> bool {
        self.u == Complex64::new(1.0, 0.0)
    }

    /// Fixed point of a proper rotation.
    pub fn center(&self) -> Option<Point> {
        let d = 1.0 - self.u;
        (d.norm() > 0.0).then(|| self.c / d)
    }

    pub fn apply(&self, x: Point) -> Point {
        self.u * x + self.c
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &RigidMotion) -> RigidMotion {
        RigidMotion::raw(self.u * g.u, self.u * g.c + self.c)
    }

    pub fn inverse(&self) -> RigidMotion {
        let ui = self.u.conj();
        RigidMotion::raw(ui, -(self.c * ui))
    }

    pub fn as_affine(&self) -> AffineMap {
        AffineMap::new(self.u, self.c)
    }

    /// `self - j` as an element of L.
    pub fn minus_identity(&self) -> AffineMap {
        AffineMap::new(self.u - 1.0, self.c)
    }

    /// `‖self - other‖`.
    pub fn distance(&self, other: &RigidMotion) -> f64 {
        (self.as_affine() - other.as_affine()).norm()
    }

    /// n-fold composition by the closed form `u^n x + (1 + u + ... + u^{n-1}) c`.
    pub fn iterate(&self, n: u32) -> RigidMotion {
        if n == 0 {
            return RigidMotion::identity();
        }
        let theta = self.u.arg();
        let un = Complex64::from_polar(1.0, n as f64 * theta);
        RigidMotion::raw(un, geometric_sum(self.u, n) * self.c)
    }

    /// `‖self − other‖ ≤ tol`.
    pub fn approx_eq(&self, other: &RigidMotion, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

impl Default for RigidMotion {
    fn default() -> Self {
        Self::identity()
    }
}

/// `1 + u + ... + u^{n-1}` for `|u| = 1`.
///
/// Uses `e^{i(n-1)θ/2} sin(nθ/2) / sin(θ/2)`, which has no cancellation near
/// `u = 1`; only `θ = 0` exactly takes the value `n`.
pub fn geometric_sum(u: Complex64, n: u32) -> Complex64 {
    let theta = u.arg();
    if theta == 0.0 {
        return Complex64::new(n as f64, 0.0);
    }
    let nf = n as f64;
    let half = theta / 2.0;
    let mag = (nf * half).sin() / half.sin();
    Complex64::from_polar(1.0, (nf - 1.0) * half) * mag
}

/// Checks `‖α^n − j‖ = |1 + u + ... + u^{n-1}| ‖α − j‖` and, when `|u − 1| ≤ 1/n`,
/// `‖α^n − j‖ ≥ (n/2) ‖α − j‖`.
#[derive(Debug, Clone, Serialize)]
pub struct IterateNormReport {
    pub n: u32,
    pub identity: InequalityCheck,
    pub doubling: Option<InequalityCheck>,
}

impl IterateNormReport {
    pub fn pass(&self) -> bool {
        self.identity.pass && self.doubling.as_ref().map_or(true, |c| c.pass)
    }
}

pub fn check_iterate_norm_identity(alpha: &RigidMotion, n: u32) -> Result<IterateNormReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let lhs = alpha.iterate(n).minus_identity().norm();
    let base = alpha.minus_identity().norm();
    let rhs = geometric_sum(alpha.u(), n).norm() * base;
    let identity = InequalityCheck::new((lhs - rhs).abs(), CHAIN_TOL, 0.0).strict();
    let doubling = ((alpha.u() - 1.0).norm() <= 1.0 / n as f64)
        .then(|| InequalityCheck::new(n as f64 / 2.0 * base, lhs, EXACT_TOL));
    Ok(IterateNormReport { n, identity, doubling })
}

/// `‖f1⁻¹ − f2⁻¹‖ ≤ (1 + |c2|) ‖f1 − f2‖`.
pub fn check_inverse_lipschitz(f1: &RigidMotion, f2: &RigidMotion) -> InequalityCheck {
    let lhs = f1.inverse().distance(&f2.inverse());
    let rhs = (1.0 + f2.c().norm()) * f1.distance(f2);
    InequalityCheck::new(lhs, rhs, EXACT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point, b: Point) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn apply_examples() {
        assert!(close(RigidMotion::identity().apply(pt(3.0, 4.0)), pt(3.0, 4.0)));
        assert!(close(RigidMotion::rotation(pt(0.0, 0.0), PI / 2.0).apply(pt(1.0, 0.0)), pt(0.0, 1.0)));
        assert!(close(RigidMotion::translation(pt(1.0, 2.0)).apply(pt(0.0, 0.0)), pt(1.0, 2.0)));
        assert!(close(RigidMotion::rotation(pt(0.0, 0.0), PI).apply(pt(1.0, 0.0)), pt(-1.0, 0.0)));
        assert!(close(RigidMotion::rotation(pt(1.0, 1.0), 0.7).apply(pt(1.0, 1.0)), pt(1.0, 1.0)));
    }

    #[test]
    fn norm_examples() {
        let f = AffineMap::new(Complex64::i(), pt(3.0, 0.0));
        assert_eq!(f.norm(), 4.0);
        assert_eq!(RigidMotion::identity().as_affine().norm(), 1.0);
        let d = RigidMotion::translation(pt(1.0, 0.0)).as_affine() - RigidMotion::identity().as_affine();
        assert_eq!(d.norm(), 1.0);
    }

    #[test]
    fn inverse_examples() {
        let r = RigidMotion::rotation(pt(2.0, -1.0), 1.1);
        assert!(r.inverse().approx_eq(&RigidMotion::rotation(pt(2.0, -1.0), -1.1), 1e-12));
        let t = RigidMotion::translation(pt(0.5, 3.0));
        assert!(t.inverse().approx_eq(&RigidMotion::translation(pt(-0.5, -3.0)), 1e-15));
        assert!(r.compose(&r.inverse()).approx_eq(&RigidMotion::identity(), 1e-12));
    }

    #[test]
    fn serde_shape() {
        let m = RigidMotion::translation(pt(1.0, 2.0));
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"u":[1.0,0.0],"c":[1.0,2.0]}"#);
        let back: RigidMotion = serde_json::from_str(r#"{"u":[0.0,2.0],"c":[0,0]}"#).unwrap();
        assert!((back.u() - Complex64::i()).norm() < 1e-15);
        assert!(serde_json::from_str::<RigidMotion>(r#"{"u":[0,0],"c":[0,0]}"#).is_err());
    }

    #[test]
    fn iterate_examples() {
        let t = RigidMotion::translation(pt(0.3, -0.2));
        assert!(t.iterate(7).approx_eq(&RigidMotion::translation(pt(2.1, -1.4)), 1e-14));
        let r = RigidMotion::rotation(pt(0.0, 0.0), 0.2);
        assert!(r.iterate(9).approx_eq(&RigidMotion::rotation(pt(0.0, 0.0), 1.8), 1e-13));
        let a = RigidMotion::rotation(pt(1.0, 2.0), 2.5);
        assert!(a.iterate(1).approx_eq(&a, 1e-15));
    }

    #[test]
    fn geometric_sum_near_one() {
        // θ = 1e-11, n = 100: the sum is n - O(n^3 θ^2), indistinguishable from n.
        let u = Complex64::from_polar(1.0, 1e-11);
        let s = geometric_sum(u, 100);
        assert!((s.norm() - 100.0).abs() < 1e-9);
        // brute-force oracle at a moderate angle
        let u = Complex64::from_polar(1.0, 0.37);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..23 {
            acc += p;
            p *= u;
        }
        assert!((geometric_sum(u, 23) - acc).norm() < 1e-12);
    }

    #[test]
    fn e1_translation_factor_n() {
        let r = check_iterate_norm_identity(&RigidMotion::translation(pt(0.1, 0.0)), 12).unwrap();
        assert!(r.pass());
        let d = r.doubling.unwrap();
        // ‖α^12 − j‖ = 1.2, (n/2)‖α − j‖ = 0.6
        assert!((d.rhs - 1.2).abs() < 1e-12 && (d.lhs - 0.6).abs() < 1e-12);
    }

    #[test]
    fn e1_identity_motion() {
        let r = check_iterate_norm_identity(&RigidMotion::identity(), 5).unwrap();
        assert!(r.pass());
        assert_eq!(r.doubling.unwrap().lhs, 0.0);
    }

    #[test]
    fn e2_small_rotation() {
        for n in 2..20u32 {
            let nf = n as f64;
            let a = RigidMotion::rotation(pt(0.0, 0.0), 1.0 / (2.0 * nf));
            let r = check_iterate_norm_identity(&a, n).unwrap();
            assert!(r.pass());
            // oracle: ‖α^n − j‖ = |e^{i/2} − 1| = 2 sin(1/4), ‖α − j‖ = 2 sin(1/4n)
            let d = r.doubling.unwrap();
            assert!((d.rhs - 2.0 * 0.25f64.sin()).abs() < 1e-12);
            assert!((d.lhs - nf * (1.0 / (4.0 * nf)).sin()).abs() < 1e-12);
        }
        // |u − 1| = 2 sin(π/4n) > 1/n: the doubling premise does not hold
        let a = RigidMotion::rotation(pt(0.0, 0.0), PI / 4.0);
        assert!(check_iterate_norm_identity(&a, 2).unwrap().doubling.is_none());
    }

    #[test]
    fn e8_examples() {
        let c = check_inverse_lipschitz(&RigidMotion::identity(), &RigidMotion::identity());
        assert!(c.pass && c.lhs == 0.0 && c.rhs == 0.0);
        let c = check_inverse_lipschitz(&RigidMotion::translation(pt(1.0, 0.0)), &RigidMotion::identity());
        assert!(c.pass && c.lhs == 1.0 && c.rhs == 1.0);
    }
}
