//! Upper and lower bounds on the minimum distance of `[[n,k,d;c]]` codes.

mod ip;
mod lattice;
mod lp;
mod report;
mod simplex;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::BoundsError;

pub use ip::{
    solve_ip, solve_lp_relaxation, Constraint, DecidedBy, IpProblem, IpStatus, IpVariable,
    IpVerdict, Relation, DEFAULT_NODE_LIMIT,
};
pub use lp::{
    build_lp_general, build_lp_general_with, build_lp_maximal, build_lp_maximal_with, lp_bound, lp_bound_known,
    lp_bound_with, Direction, LpBound, LpStep, StepStatus,
};
pub use report::{bound_report, BoundReport, LowerBound, LowerProvenance, UpperProvenance};

/// Validated code parameters: `n >= 1`, `k + c <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub c: usize,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, c: usize) -> Result<CodeParams, BoundsError> {
        if n == 0 || k + c > n {
            Err(BoundsError::Parameters { n, k, c })
        } else {
            Ok(CodeParams { n, k, c })
        }
    }

    /// `[[n,k;n-k]]`.
    pub fn maximal(n: usize, k: usize) -> Result<CodeParams, BoundsError> {
        if k > n {
            return Err(BoundsError::Parameters { n, k, c: 0 });
        }
        CodeParams::new(n, k, n - k)
    }

    pub fn is_maximal(&self) -> bool {
        self.c == self.n - self.k
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{};{}]]", self.n, self.k, self.c)
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `sum_{j <= t} 3^j C(n, j)`: Pauli errors of weight at most `t`.
pub fn sphere_size(n: usize, t: usize) -> BigInt {
    (0..=t.min(n))
        .map(|j| num_traits::pow(BigInt::from(3), j) * binomial(n, j))
        .sum()
}

/// Largest `d` with `n - k + c >= 2(d - 1)`.
pub fn singleton_bound(p: CodeParams) -> usize {
    (p.n - p.k + p.c) / 2 + 1
}

/// Sphere-packing bound, valid for nondegenerate codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingBound {
    pub d: usize,
    /// Always true for maximal entanglement, where codes cannot be degenerate.
    pub applicable: bool,
}

/// Largest `d <= n` whose correctable errors fit into the `2^(n-k+c)`
/// syndromes.
///
/// For `d = 2t + 1` the weight-`<= t` errors must have distinct syndromes.
/// For `d = 2t + 2` the same holds for those errors together with the
/// `3^(t+1) C(n-1, t)` weight-`(t+1)` errors that act on qubit 0, since any
/// two of these multiply to weight at most `2t + 1 < d`.
pub fn hamming_bound(p: CodeParams) -> HammingBound {
    let syndromes = BigInt::one() << (p.n - p.k + p.c);
    let mut best = 1;
    for d in 2..=p.n {
        let t = (d - 1) / 2;
        let mut needed = sphere_size(p.n, t);
        if d % 2 == 0 {
            needed += num_traits::pow(BigInt::from(3), t + 1) * binomial(p.n - 1, t);
        }
        if needed <= syndromes {
            best = d;
        } else {
            break;
        }
    }
    HammingBound {
        d: best,
        applicable: p.is_maximal(),
    }
}

/// `floor(3 n M / (4 (M - 1)))` with `M = 4^k`.
pub fn plotkin_bound(n: usize, k: usize) -> Result<usize, BoundsError> {
    if k == 0 {
        return Err(BoundsError::ZeroK);
    }
    let m = BigInt::one() << (2 * k);
    let num = BigInt::from(3 * n) * &m;
    let den = BigInt::from(4) * (m - 1);
    let q: BigInt = num / den;
    Ok(q.try_into().expect("bounded by n"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GvOutcome {
    /// A code with this many information qubits exists.
    Guaranteed(usize),
    NotGuaranteed,
}

/// `k = ceil(log2(2^(n+c) / sum_{j<d} 3^j C(n,j)))`, reported only when
/// `0 <= k <= n - c`.
pub fn gilbert_varshamov(n: usize, d: usize, c: usize) -> Result<GvOutcome, BoundsError> {
    if d == 0 {
        return Err(BoundsError::ZeroDistance);
    }
    if c > n {
        return Err(BoundsError::Parameters { n, k: 0, c });
    }
    let s = sphere_size(n, d - 1);
    let floor_log2 = s.bits() as i64 - 1;
    let k = (n + c) as i64 - floor_log2;
    if k >= 0 && k <= (n - c) as i64 {
        Ok(GvOutcome::Guaranteed(k as usize))
    } else {
        Ok(GvOutcome::NotGuaranteed)
    }
}

/// Largest `d` at which the Gilbert-Varshamov count guarantees at least `k`
/// information qubits with `c` ebits.
pub fn gv_distance(p: CodeParams) -> Option<usize> {
    (1..=p.n)
        .filter(|&d| {
            matches!(gilbert_varshamov(p.n, d, p.c), Ok(GvOutcome::Guaranteed(g)) if g >= p.k)
        })
        .max()
}

/// Caps from the nonexistence theorems for even `n`: no `[[n,1,n;n-1]]` and
/// no `[[n,n-1,2;1]]` code.
pub fn nonexistence_cap(p: CodeParams) -> Option<(usize, UpperProvenance)> {
    if p.n % 2 != 0 || p.n < 2 {
        return None;
    }
    if p.k == 1 && p.c == p.n - 1 {
        Some((p.n - 1, UpperProvenance::Theorem6))
    } else if p.k == p.n - 1 && p.c == 1 {
        Some((1, UpperProvenance::Theorem7))
    } else {
        None
    }
}
