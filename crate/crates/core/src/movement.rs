//! Continuous movements: paths `t -> M_t` of rigid motions with `M_0 = j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motion::{RigidMotion, CHAIN_TOL, EXACT_TOL};
use crate::report::BoundReport;

/// A movement on `[0, 1]`.
///
/// `Chain` runs its stages one after another in equal time slots; each stage
/// acts on the pose left by the previous ones. `Spliced` is `β^{i-1} ∘ S(nt − i + 1)`
/// on the i-th of `n` slots, where `segment` (on `[0, 1]`) ends at `β`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Movement {
    Constant,
    Elementary { alpha: RigidMotion },
    Chain { stages: Vec<Movement> },
    Spliced { beta: RigidMotion, n: u32, segment: Box<Movement> },
    Reparameterized { inner: Box<Movement>, from: f64, to: f64 },
    Sampled { samples: Vec<(f64, RigidMotion)> },
    Inverse { inner: Box<Movement> },
}

/// The canonical path from `j` to `alpha`: straight for translations,
/// constant-speed rotation by the angle in `(-π, π)` otherwise.
pub fn elementary_movement(alpha: RigidMotion) -> Result<Movement> {
    if alpha == RigidMotion::identity() {
        return Ok(Movement::Constant);
    }
    if (alpha.u() + 1.0).norm() <= EXACT_TOL {
        return Err(Error::HalfTurn);
    }
    Ok(Movement::Elementary { alpha })
}

/// `E^α_t`. The offset is `c e^{i(t-1)φ/2} sin(tφ/2) / sin(φ/2)`, equal to
/// `a (1 - e^{itφ})` for the center `a`, but without the cancellation near `φ = 0`.
pub fn elementary_at(alpha: &RigidMotion, t: f64) -> RigidMotion {
    let phi = alpha.angle();
    if phi == 0.0 {
        return RigidMotion::translation(alpha.c() * t);
    }
    let ut = Complex64::from_polar(1.0, t * phi);
    let half = phi / 2.0;
    let off = alpha.c() * Complex64::from_polar(1.0, (t - 1.0) * half) * ((t * half).sin() / half.sin());
    RigidMotion::new(ut, off).expect("finite")
}

/// `F^n`, built from a movement `m` that ends at `beta`.
pub fn splice(m: &Movement, beta: RigidMotion, n: u32) -> Result<Movement> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let gap = m.eval(1.0).distance(&beta);
    if gap > CHAIN_TOL {
        return Err(Error::SpliceMismatch { gap });
    }
    if n == 1 {
        return Ok(m.clone());
    }
    Ok(Movement::Spliced { beta, n, segment: Box::new(m.clone()) })
}

/// `t -> M_t⁻¹`.
pub fn inverse_movement(m: &Movement) -> Movement {
    match m {
        Movement::Constant => Movement::Constant,
        Movement::Elementary { alpha } => Movement::Elementary { alpha: alpha.inverse() },
        Movement::Inverse { inner } => (**inner).clone(),
        other => Movement::Inverse { inner: Box::new(other.clone()) },
    }
}

impl Movement {
    pub fn translation(c: crate::Point) -> Movement {
        if c == Complex64::new(0.0, 0.0) {
            Movement::Constant
        } else {
            Movement::Elementary { alpha: RigidMotion::translation(c) }
        }
    }

    /// Rotation about `center` by `phi`; split into equal halves when `|phi| ≥ π`.
    pub fn rotation(center: crate::Point, phi: f64) -> Movement {
        if phi == 0.0 {
            Movement::Constant
        } else if phi.abs() < std::f64::consts::PI {
            Movement::Elementary { alpha: RigidMotion::rotation(center, phi) }
        } else {
            let half = Movement::rotation(center, phi / 2.0);
            Movement::Chain { stages: vec![half.clone(), half] }
        }
    }

    pub fn sampled(samples: Vec<(f64, RigidMotion)>) -> Result<Movement> {
        let m = Movement::Sampled { samples };
        m.validate()?;
        Ok(m)
    }

    /// Checks the invariants of a deserialized movement.
    pub fn validate(&self) -> Result<()> {
        match self {
            Movement::Constant => Ok(()),
            Movement::Elementary { alpha } => elementary_movement(*alpha).map(|_| ()),
            Movement::Chain { stages } => {
                if stages.is_empty() {
                    return Err(Error::Invalid("chain without stages".into()));
                }
                stages.iter().try_for_each(Movement::validate)
            }
            Movement::Spliced { beta, n, segment } => {
                segment.validate()?;
                splice(segment, *beta, *n).map(|_| ())
            }
            Movement::Reparameterized { inner, from, to } => {
                if !(0.0..=1.0).contains(from) || !(0.0..=1.0).contains(to) {
                    return Err(Error::Invalid(format!("reparameterization [{from}, {to}] outside [0, 1]")));
                }
                inner.validate()
            }
            Movement::Sampled { samples } => {
                let ok = samples.len() >= 2
                    && samples[0].0 == 0.0
                    && samples.last().unwrap().0 == 1.0
                    && samples.windows(2).all(|w| w[0].0 < w[1].0);
                if !ok {
                    return Err(Error::Invalid("samples must increase strictly from t = 0 to t = 1".into()));
                }
                if !samples[0].1.approx_eq(&RigidMotion::identity(), CHAIN_TOL) {
                    return Err(Error::Invalid("sampled movement must start at the identity".into()));
                }
                Ok(())
            }
            Movement::Inverse { inner } => inner.validate(),
        }
    }

    pub fn evaluate(&self, t: f64) -> Result<RigidMotion> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::TimeOutOfRange(t));
        }
        Ok(self.eval(t))
    }

    /// `evaluate` with `t` clamped into `[0, 1]`.
    pub fn eval(&self, t: f64) -> RigidMotion {
        let t = t.clamp(0.0, 1.0);
        match self {
            Movement::Constant => RigidMotion::identity(),
            Movement::Elementary { alpha } => elementary_at(alpha, t),
            Movement::Chain { stages } => {
                let k = stages.len();
                let s = t * k as f64;
                let i = (s.floor() as usize).min(k - 1);
                let mut pose = RigidMotion::identity();
                for st in &stages[..i] {
                    pose = st.eval(1.0).compose(&pose);
                }
                stages[i].eval(s - i as f64).compose(&pose)
            }
            Movement::Spliced { beta, n, segment } => {
                let s = t * *n as f64;
                let i = (s.ceil() as u32).clamp(1, *n);
                beta.iterate(i - 1).compose(&segment.eval(s - (i - 1) as f64))
            }
            Movement::Reparameterized { inner, from, to } => {
                inner.eval(from + t * (to - from)).compose(&inner.eval(*from).inverse())
            }
            Movement::Sampled { samples } => {
                let j = samples.partition_point(|(s, _)| *s <= t).clamp(1, samples.len() - 1);
                let (t0, a) = samples[j - 1];
                let (t1, b) = samples[j];
                let lam = (t - t0) / (t1 - t0);
                let delta = (b.u() / a.u()).arg();
                let u = a.u() * Complex64::from_polar(1.0, lam * delta);
                RigidMotion::new(u, a.c() + (b.c() - a.c()) * lam).expect("finite")
            }
            Movement::Inverse { inner } => inner.eval(t).inverse(),
        }
    }

    /// Stages of a chain, or the movement itself.
    pub fn stages(&self) -> Vec<&Movement> {
        match self {
            Movement::Chain { stages } => stages.iter().flat_map(|s| s.stages()).collect(),
            other => vec![other],
        }
    }

    /// Largest `‖M_{t+1} − M_t‖ / Δt` over consecutive samples.
    pub fn sampled_modulus(&self) -> Option<f64> {
        match self {
            Movement::Sampled { samples } => Some(
                samples
                    .windows(2)
                    .map(|w| w[1].1.distance(&w[0].1) / (w[1].0 - w[0].0))
                    .fold(0.0, f64::max),
            ),
            _ => None,
        }
    }

    /// The movement restricted to `[0, t_end]` and rescaled to `[0, 1]`.
    pub fn restrict(&self, t_end: f64) -> Movement {
        if t_end >= 1.0 {
            self.clone()
        } else {
            Movement::Reparameterized { inner: Box::new(self.clone()), from: 0.0, to: t_end }
        }
    }
}

/// Nested sample times: 0, 1, then the base-2 van der Corput points.
/// With `2^k + 1` samples this is the uniform grid of step `2^-k`.
pub fn sample_times(samples: usize) -> impl Iterator<Item = f64> {
    (0..samples).map(|k| match k {
        0 => 0.0,
        1 => 1.0,
        _ => {
            let mut i = (k - 1) as u64;
            let (mut x, mut f) = (0.0, 0.5);
            while i > 0 {
                if i & 1 == 1 {
                    x += f;
                }
                i >>= 1;
                f /= 2.0;
            }
            x
        }
    })
}

/// Max over sampled t of `‖M1_t − M2_t‖`. Nondecreasing in `samples`.
pub fn sup_distance(m1: &Movement, m2: &Movement, samples: usize) -> f64 {
    sample_times(samples.max(2)).map(|t| m1.eval(t).distance(&m2.eval(t))).fold(0.0, f64::max)
}

/// 256 points of the closed unit disc: 16 rings out to the boundary, 16 spokes each.
pub fn disc_points() -> Vec<crate::Point> {
    let mut v = Vec::with_capacity(256);
    for r in 1..=16 {
        for a in 0..16 {
            let ang = (a as f64 + 0.5 * (r % 2) as f64) * std::f64::consts::TAU / 16.0;
            v.push(Complex64::from_polar(r as f64 / 16.0, ang));
        }
    }
    v
}

/// `|E_{t1}(x) − E_{t2}(x)| ≤ 2|t1 − t2| (‖α‖ + 1)` over a `grid × grid` set of times
/// and 256 points of the unit disc.
pub fn check_elementary_increment_bound(alpha: &RigidMotion, grid: usize) -> Result<BoundReport> {
    let m = elementary_movement(*alpha)?;
    let grid = grid.max(2);
    let times: Vec<f64> = (0..grid).map(|i| i as f64 / (grid - 1) as f64).collect();
    let poses: Vec<RigidMotion> = times.iter().map(|&t| m.eval(t)).collect();
    let k = alpha.as_affine().norm() + 1.0;
    let pts = disc_points();
    let mut worst = f64::NEG_INFINITY;
    for (i, a) in poses.iter().enumerate() {
        for (j, b) in poses.iter().enumerate() {
            let du = a.u() - b.u();
            let dc = a.c() - b.c();
            let rhs = 2.0 * (times[i] - times[j]).abs() * k;
            for x in &pts {
                worst = worst.max((du * x + dc).norm() - rhs);
            }
        }
    }
    Ok(BoundReport {
        max_violation: worst,
        samples_checked: (grid * grid * pts.len()) as u64,
        pass: worst <= EXACT_TOL,
    })
}

/// `|F^n_t(x) − E^{β^n}_t(x)| ≤ 8/n` over 1024 times, taking the exact sup over `|x| ≤ 1`.
pub fn check_splice_distance(beta: &RigidMotion, n: u32, m_small: &Movement) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let nf = n as f64;
    let step = beta.minus_identity().norm();
    if step > 1.0 / nf + EXACT_TOL {
        return Err(Error::Precondition(format!("‖β − j‖ = {step} exceeds 1/n")));
    }
    const SAMPLES: usize = 1024;
    let drift = (0..SAMPLES)
        .map(|i| m_small.eval(i as f64 / (SAMPLES - 1) as f64).minus_identity().norm())
        .fold(0.0, f64::max);
    if drift > 1.0 / nf + EXACT_TOL {
        return Err(Error::Precondition(format!("segment strays {drift} from the identity, more than 1/n")));
    }
    let f = splice(m_small, *beta, n)?;
    let e = elementary_movement(beta.iterate(n))?;
    let bound = 8.0 / nf;
    let worst = (0..SAMPLES)
        .map(|i| {
            let t = i as f64 / (SAMPLES - 1) as f64;
            f.eval(t).distance(&e.eval(t)) - bound
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(BoundReport { max_violation: worst, samples_checked: SAMPLES as u64, pass: worst <= EXACT_TOL })
}
