//! Monte Carlo block-error estimate under minimum-weight (MAP) decoding.
//!
//! For a maximal-entanglement code the simplified stabilizer has full
//! symplectic rank, so every syndrome class is a coset of the logical group
//! and the decoder is a table from syndrome to the lightest error with that
//! syndrome. Ties go to the lexicographically smallest Pauli string
//! (`I < X < Y < Z`, qubit 0 first).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::EaqecCode;
use crate::error::ChannelError;

/// Largest `n` for which the `4^n`-entry leader scan is attempted.
pub const MAX_SIMULATION_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationResult {
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    /// Half-width of the 95% Wilson score interval.
    pub ci_halfwidth: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// 95% Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Syndrome-indexed coset leaders, Paulis packed as `(x, z)` with bit `q`
/// for qubit `q`.
#[derive(Debug, Clone)]
pub(crate) struct CosetTable {
    stab: Vec<(u32, u32)>,
    leaders: Vec<(u32, u32)>,
}

impl CosetTable {
    pub(crate) fn new(code: &EaqecCode) -> Result<CosetTable, ChannelError> {
        code.require_valid()?;
        if !code.is_maximal() {
            return Err(ChannelError::NotMaximal);
        }
        let n = code.n();
        if n > MAX_SIMULATION_QUBITS {
            return Err(ChannelError::TooLarge {
                n,
                limit: MAX_SIMULATION_QUBITS,
            });
        }
        let stab: Vec<(u32, u32)> = code
            .stabilizer()
            .rows()
            .iter()
            .map(|p| {
                (0..n).fold((0, 0), |(x, z), q| {
                    (x | (p.x_bit(q) as u32) << q, z | (p.z_bit(q) as u32) << q)
                })
            })
            .collect();
        let mut table = CosetTable {
            leaders: vec![(0, 0); 1 << stab.len()],
            stab,
        };
        let mut best = vec![u32::MAX; table.leaders.len()];
        for index in 0..1u64 << (2 * n) {
            let (mut x, mut z) = (0u32, 0u32);
            for q in 0..n {
                match index >> (2 * (n - 1 - q)) & 3 {
                    1 => x |= 1 << q,
                    2 => {
                        x |= 1 << q;
                        z |= 1 << q;
                    }
                    3 => z |= 1 << q,
                    _ => {}
                }
            }
            let w = (x | z).count_ones();
            let s = table.syndrome(x, z);
            if w < best[s] {
                best[s] = w;
                table.leaders[s] = (x, z);
            }
        }
        Ok(table)
    }

    fn syndrome(&self, x: u32, z: u32) -> usize {
        self.stab.iter().enumerate().fold(0, |s, (i, &(sx, sz))| {
            s | ((((x & sz) ^ (z & sx)).count_ones() & 1) as usize) << i
        })
    }

    /// Whether decoding `(x, z)` leaves a nontrivial logical operator.
    pub(crate) fn fails(&self, x: u32, z: u32) -> bool {
        let (lx, lz) = self.leaders[self.syndrome(x, z)];
        (x ^ lx, z ^ lz) != (0, 0)
    }
}

/// Estimates the block error probability of `code` on the depolarizing
/// channel with `trials` samples. Trial `t` draws from ChaCha8 seeded by
/// `seed` on stream `t`, so the result does not depend on thread count.
///
/// ```
/// use eaqec::constructions::repetition_code_odd;
/// use eaqec::simulate::simulate_map_block_error;
///
/// let code = repetition_code_odd(3).unwrap();
/// let r = simulate_map_block_error(&code, 0.0, 1000, 7).unwrap();
/// assert_eq!(r.failures, 0);
/// ```
pub fn simulate_map_block_error(
    code: &EaqecCode,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<SimulationResult, ChannelError> {
    if !(p.is_finite() && (0.0..0.75).contains(&p)) {
        return Err(ChannelError::Probability(p));
    }
    if trials == 0 {
        return Err(ChannelError::NoTrials);
    }
    let table = CosetTable::new(code)?;
    let n = code.n();
    let key = ChaCha8Rng::seed_from_u64(seed).get_seed();
    let failures = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = ChaCha8Rng::from_seed(key);
            rng.set_stream(t);
            let (mut x, mut z) = (0u32, 0u32);
            for q in 0..n {
                if rng.random::<f64>() < p {
                    match rng.random_range(0..3u8) {
                        0 => x |= 1 << q,
                        1 => {
                            x |= 1 << q;
                            z |= 1 << q;
                        }
                        _ => z |= 1 << q,
                    }
                }
            }
            table.fails(x, z)
        })
        .count() as u64;
    let (ci_low, ci_high) = wilson_interval(failures, trials);
    Ok(SimulationResult {
        trials,
        failures,
        rate: failures as f64 / trials as f64,
        ci_halfwidth: (ci_high - ci_low) / 2.0,
        ci_low,
        ci_high,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::weight_enum_error_bound;
    use crate::code::GroupKind;
    use crate::constructions::{accumulator_code, repetition_code};

    #[test]
    fn corrects_single_errors_at_distance_three() {
        for n in [3, 4, 5] {
            let code = repetition_code(n).unwrap();
            let table = CosetTable::new(&code).unwrap();
            assert!(!table.fails(0, 0));
            for q in 0..n {
                for (x, z) in [(1u32 << q, 0), (1 << q, 1 << q), (0, 1 << q)] {
                    assert!(!table.fails(x, z), "n={n} q={q}");
                }
            }
            // A logical operator is never corrected.
            let all = (1u32 << n) - 1;
            assert!(table.fails(0, all));
        }
    }

    #[test]
    fn deterministic_and_below_bound() {
        let code = repetition_code(3).unwrap();
        let a = simulate_map_block_error(&code, 0.1, 20_000, 42).unwrap();
        let b = simulate_map_block_error(&code, 0.1, 20_000, 42).unwrap();
        assert_eq!(a, b);
        let bound = weight_enum_error_bound(&code.enumerator(GroupKind::Logical).unwrap(), 0.1).unwrap();
        assert!(a.rate <= bound + 3.0 * a.ci_halfwidth);
        assert!(a.ci_low <= a.rate && a.rate <= a.ci_high);
    }

    #[test]
    fn rejects_bad_input() {
        let code = repetition_code(3).unwrap();
        assert!(matches!(simulate_map_block_error(&code, 0.8, 10, 0), Err(ChannelError::Probability(_))));
        assert!(matches!(simulate_map_block_error(&code, 0.1, 0, 0), Err(ChannelError::NoTrials)));
        let demoted = crate::constructions::demote_logical_to_ebit(&accumulator_code(4).unwrap(), 0).unwrap();
        assert!(demoted.is_maximal());
        let nonmax: EaqecCode = "n=3 k=1 c=0\nS: ZZI IZZ\nL: XXX ZZZ\n".parse().unwrap();
        assert!(matches!(simulate_map_block_error(&nonmax, 0.1, 10, 0), Err(ChannelError::NotMaximal)));
    }

    #[test]
    fn wilson_edges() {
        let (lo, hi) = wilson_interval(0, 100);
        assert!(lo < 1e-12);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo + hi - 1.0).abs() < 1e-12);
    }
}
