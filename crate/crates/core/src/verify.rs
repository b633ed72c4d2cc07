//! Seeded randomized suites for the motion-algebra and movement bounds.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::motion::{check_inverse_lipschitz, check_iterate_norm_identity, pt, RigidMotion, CHAIN_TOL};
use crate::movement::{check_elementary_increment_bound, check_splice_distance, elementary_movement, Movement};
use crate::report::{ConstructionReport, InequalityCheck};
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    /// Largest `lhs − rhs` seen; at most the suite tolerance when it passes.
    pub max_violation: f64,
    pub tol: f64,
    pub pass: bool,
}

impl SuiteResult {
    fn new(name: &str, tol: f64) -> Self {
        Self { name: name.into(), cases: 0, max_violation: f64::NEG_INFINITY, tol, pass: true }
    }

    fn record(&mut self, violation: f64) {
        self.cases += 1;
        self.max_violation = self.max_violation.max(violation);
        self.pass &= violation <= self.tol;
    }
}

/// Offset uniform in `[−c_max, c_max]²`, angle uniform in `(−φ_max, φ_max)`.
pub fn random_motion(rng: &mut impl Rng, c_max: f64, phi_max: f64) -> RigidMotion {
    let c = pt(rng.gen_range(-c_max..=c_max), rng.gen_range(-c_max..=c_max));
    let phi = if phi_max > 0.0 { rng.gen_range(-phi_max..phi_max) } else { 0.0 };
    RigidMotion::new(crate::Point::from_polar(1.0, phi), c).expect("finite")
}

/// `‖α^n − j‖ = |1 + … + u^{n−1}| ‖α − j‖` to `1e−9`, and `‖α^n − j‖ ≥ (n/2) ‖α − j‖`
/// with `1e−12` slack whenever `|u − 1| ≤ 1/n`, for `motions` motions and `n = 1..=50`.
///
/// Half the motions have angles below `1/50` so the second inequality gets exercised.
pub fn suite_iterates(seed: u64, motions: usize) -> Result<(SuiteResult, SuiteResult)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e1 = SuiteResult::new("e1_iterate_identity", CHAIN_TOL);
    let mut e2 = SuiteResult::new("e2_doubling", 1e-12);
    for k in 0..motions {
        let phi_max = if k % 2 == 0 { PI } else { 0.02 };
        let alpha = random_motion(&mut rng, 3.0, phi_max);
        for n in 1..=50 {
            let r = check_iterate_norm_identity(&alpha, n)?;
            e1.record(r.identity.lhs);
            if let Some(d) = r.doubling {
                e2.record(d.lhs - d.rhs);
            }
        }
    }
    Ok((e1, e2))
}

/// `‖f₁⁻¹ − f₂⁻¹‖ ≤ (1 + |c₂|) ‖f₁ − f₂‖` for `pairs` random pairs.
pub fn suite_inverse(seed: u64, pairs: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x8);
    let mut s = SuiteResult::new("e8_inverse_lipschitz", 1e-12);
    for _ in 0..pairs {
        let (f1, f2) = (random_motion(&mut rng, 5.0, PI), random_motion(&mut rng, 5.0, PI));
        let c = check_inverse_lipschitz(&f1, &f2);
        s.record(c.lhs - c.rhs);
    }
    s
}

/// `|E_{t₁}(x) − E_{t₂}(x)| ≤ 2|t₁ − t₂| (‖α‖ + 1)` on a `grid²` time grid and 256 disc
/// points for `motions` motions with `|c| ≤ 10`, `|φ| ≤ 3`.
pub fn suite_increment(seed: u64, motions: usize, grid: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
    let mut s = SuiteResult::new("e5_increment_bound", 1e-12);
    for _ in 0..motions {
        let alpha = random_motion(&mut rng, 10.0, 3.0);
        let r = check_elementary_increment_bound(&alpha, grid)?;
        s.cases += r.samples_checked - 1;
        s.record(r.max_violation);
    }
    Ok(s)
}

/// `E^{α^n}_{i/n} = α^i` to `1e−10` for translations and rotations with `|φ| < π/n`, `n ≤ 64`.
pub fn suite_grid_times(seed: u64, per_n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
    let mut s = SuiteResult::new("e3_grid_times", 1e-10);
    for n in 1..=64u32 {
        for k in 0..per_n {
            let phi_max = if k % 2 == 0 { 0.0 } else { 0.999 * PI / n as f64 };
            let alpha = random_motion(&mut rng, 2.0, phi_max);
            let e = match elementary_movement(alpha.iterate(n))? {
                Movement::Constant => continue,
                m => m,
            };
            for i in 0..=n {
                s.record(e.eval(i as f64 / n as f64).distance(&alpha.iterate(i)));
            }
        }
    }
    Ok(s)
}

/// A segment from `j` to `beta` that follows `E^β` with a sideways wiggle of size `amp`.
pub fn perturbed_segment(beta: &RigidMotion, amp: f64, dir: crate::Point, knots: usize) -> Result<Movement> {
    let e = elementary_movement(*beta)?;
    let samples = (0..=knots)
        .map(|k| {
            let t = k as f64 / knots as f64;
            let w = RigidMotion::translation(dir * (amp * (PI * t).sin() * (3.0 * PI * t).cos()));
            (t, w.compose(&e.eval(t)))
        })
        .collect();
    let mut m = Movement::sampled(samples)?;
    // land exactly on beta
    if let Movement::Sampled { samples } = &mut m {
        samples.last_mut().unwrap().1 = *beta;
    }
    Ok(m)
}

/// `|Fⁿ_t(x) − E^{βⁿ}_t(x)| ≤ 8/n` over 1024 times for spliced perturbed segments.
pub fn suite_splice(seed: u64, per_n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
    let mut s = SuiteResult::new("e4_splice_distance", 1e-12);
    for n in [2u32, 4, 8, 16, 32, 64] {
        let nf = n as f64;
        for _ in 0..per_n {
            // ‖β − j‖ ≤ 1/(2n): rotation about a point near the origin by a small angle
            let phi = rng.gen_range(-0.2..0.2) / nf;
            let a = pt(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let beta = RigidMotion::rotation(a, phi);
            let dir = crate::Point::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
            let seg = perturbed_segment(&beta, 0.25 / nf, dir, 32)?;
            let r = check_splice_distance(&beta, n, &seg)?;
            s.cases += r.samples_checked - 1;
            s.record(r.max_violation);
        }
    }
    Ok(s)
}

/// Every suite at its full size, as one report.
pub fn verify_lemmas(seed: u64) -> Result<(Vec<SuiteResult>, ConstructionReport)> {
    let (e1, e2) = suite_iterates(seed, 1000)?;
    let suites = vec![
        e1,
        e2,
        suite_inverse(seed, 1000),
        suite_increment(seed, 50, 64)?,
        suite_grid_times(seed, 8)?,
        suite_splice(seed, 8)?,
    ];
    let mut r = ConstructionReport::new("verify_lemmas");
    r.measure("seed", seed);
    for s in &suites {
        r.measure(&format!("{}.cases", s.name), s.cases)
            .verdict(&s.name, InequalityCheck::new(s.max_violation, s.tol, 0.0));
    }
    Ok((suites, r))
}
