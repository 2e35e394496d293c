//! Block-error bounds on the depolarizing channel
//! `rho -> (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)`.
//!
//! Everything here is `f64`. For a maximal-entanglement code with logical
//! enumerator `B`, minimum-weight decoding fails with probability at most
//! `B(gamma) - 1`, where `gamma` is the Bhattacharyya parameter.
//!
//! ```
//! use eaqec::channel::{bhattacharyya, weight_enum_error_bound};
//! use eaqec::WeightEnumerator;
//!
//! let b = WeightEnumerator::from_u64(3, &[1, 0, 0, 3], 2).unwrap();
//! let g = bhattacharyya(0.1).unwrap();
//! let bound = weight_enum_error_bound(&b, 0.1).unwrap();
//! assert!((bound - 3.0 * g.powi(3)).abs() < 1e-12);
//! ```

use std::fmt::Write as _;

use crate::code::{EaqecCode, GroupKind};
use crate::enumerator::WeightEnumerator;
use crate::error::ChannelError;
use crate::simulate::{simulate_map_block_error, SimulationResult};

fn check(p: f64) -> Result<f64, ChannelError> {
    if p.is_finite() && (0.0..0.75).contains(&p) {
        Ok(p)
    } else {
        Err(ChannelError::Probability(p))
    }
}

fn gamma(p: f64) -> f64 {
    2.0 * (p * (1.0 - p) / 3.0).sqrt() + 2.0 * p / 3.0
}

/// `2 sqrt(p(1-p)/3) + 2p/3`.
pub fn bhattacharyya(p: f64) -> Result<f64, ChannelError> {
    check(p).map(gamma)
}

/// `sum_{w >= 1} B_w gamma^w`.
pub fn weight_enum_error_bound(b: &WeightEnumerator, p: f64) -> Result<f64, ChannelError> {
    let g = bhattacharyya(p)?;
    Ok(b.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(w, c)| bigint_f64(c) * g.powi(w as i32))
        .sum())
}

fn bigint_f64(c: &num_bigint::BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::INFINITY)
}

/// Expected block error of a uniformly random `[[n,k;n-k]]` code:
/// `(4^k - 1)/(4^n - 1) ((1 + 3 gamma)^n - 1)`. Evaluated in log space so
/// large `n` neither overflows nor cancels.
pub fn random_code_error_bound(n: usize, k: usize, p: f64) -> Result<f64, ChannelError> {
    if k == 0 || k > n {
        return Err(ChannelError::Parameters { n, k });
    }
    let g = bhattacharyya(p)?;
    if g == 0.0 {
        return Ok(0.0);
    }
    let ln4 = 4f64.ln();
    let (nf, kf) = (n as f64, k as f64);
    let ln_ratio = (kf - nf) * ln4 + (-(4f64.powf(-kf))).ln_1p() - (-(4f64.powf(-nf))).ln_1p();
    let x = nf * (3.0 * g).ln_1p();
    // ln((1+3g)^n - 1) = ln(expm1(x))
    let ln_tail = if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    };
    Ok((ln_ratio + ln_tail).exp())
}

/// Largest rate for which the random-code bound vanishes as `n` grows:
/// `1 - log2(1 + 3 gamma) / 2`.
pub fn rate_threshold(p: f64) -> Result<f64, ChannelError> {
    let g = bhattacharyya(p)?;
    Ok(1.0 - 0.5 * (1.0 + 3.0 * g).log2())
}

fn binary_entropy(p: f64) -> f64 {
    let h = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    h(p) + h(1.0 - p)
}

/// Entanglement-assisted hashing rate `1 - (H2(p) + p log2 3) / 2`.
pub fn hashing_bound(p: f64) -> Result<f64, ChannelError> {
    let p = check(p)?;
    Ok(1.0 - 0.5 * (binary_entropy(p) + p * 3f64.log2()))
}

/// A curve in an error-bound plot.
#[derive(Debug, Clone)]
pub enum CurveSubject {
    /// A concrete maximal-entanglement code.
    Code { label: String, code: EaqecCode },
    /// The random-coding bound for `[[n,k;n-k]]`.
    Random { n: usize, k: usize },
}

impl CurveSubject {
    pub fn label(&self) -> String {
        match self {
            CurveSubject::Code { label, .. } => label.clone(),
            CurveSubject::Random { n, k } => format!("random[[{n},{k}]]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurvePoint {
    pub subject: String,
    pub p: f64,
    pub gamma: f64,
    pub bound: f64,
    pub empirical: Option<SimulationResult>,
}

/// Monte Carlo settings for the optional empirical columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveSimulation {
    pub trials: u64,
    pub seed: u64,
}

/// One point per `(subject, p)`, subjects outermost.
pub fn error_curve(
    subjects: &[CurveSubject],
    grid: &[f64],
    simulation: Option<CurveSimulation>,
) -> Result<Vec<ErrorCurvePoint>, ChannelError> {
    for &p in grid {
        check(p)?;
    }
    let mut points = Vec::with_capacity(subjects.len() * grid.len());
    for s in subjects {
        let logical = match s {
            CurveSubject::Code { code, .. } => {
                if !code.is_maximal() {
                    return Err(ChannelError::NotMaximal);
                }
                Some(code.enumerator(GroupKind::Logical)?)
            }
            CurveSubject::Random { .. } => None,
        };
        for &p in grid {
            let bound = match (s, &logical) {
                (CurveSubject::Random { n, k }, _) => random_code_error_bound(*n, *k, p)?,
                (_, Some(b)) => weight_enum_error_bound(b, p)?,
                _ => unreachable!(),
            };
            let empirical = match (s, simulation) {
                (CurveSubject::Code { code, .. }, Some(sim)) => {
                    Some(simulate_map_block_error(code, p, sim.trials, sim.seed)?)
                }
                _ => None,
            };
            points.push(ErrorCurvePoint {
                subject: s.label(),
                p,
                gamma: gamma(p),
                bound,
                empirical,
            });
        }
    }
    Ok(points)
}

/// CSV with header `subject,p,gamma,bound`, plus `empirical,ci_halfwidth`
/// when `simulation` is set (blank for random-code rows).
///
/// ```
/// use eaqec::channel::{emit_error_curve, CurveSubject};
///
/// let csv = emit_error_curve(&[CurveSubject::Random { n: 3, k: 1 }], &[], None).unwrap();
/// assert_eq!(csv, "subject,p,gamma,bound\n");
/// ```
pub fn emit_error_curve(
    subjects: &[CurveSubject],
    grid: &[f64],
    simulation: Option<CurveSimulation>,
) -> Result<String, ChannelError> {
    let points = error_curve(subjects, grid, simulation)?;
    let mut out = String::from("subject,p,gamma,bound");
    if simulation.is_some() {
        out.push_str(",empirical,ci_halfwidth");
    }
    out.push('\n');
    for pt in &points {
        write!(out, "{},{},{:.12e},{:.12e}", pt.subject, pt.p, pt.gamma, pt.bound).unwrap();
        if simulation.is_some() {
            match &pt.empirical {
                Some(r) => write!(out, ",{:.12e},{:.12e}", r.rate, r.ci_halfwidth).unwrap(),
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    Ok(out)
}
