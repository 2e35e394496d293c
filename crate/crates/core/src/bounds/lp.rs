//! The weight-enumerator linear programs and the distance bound they give.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ip::{solve_ip, solve_lp_relaxation, DecidedBy, IpProblem, IpStatus, Relation};
use super::CodeParams;
use crate::enumerator::krawtchouk_matrix;
use crate::error::BoundsError;

/// Which distance the `d`-block of constraints targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Direction {
    /// The code itself: `B_w` (minus `C_w`) vanishes below `d`.
    #[default]
    Code,
    /// The dual code: `A_w` (minus `C_w`) vanishes below `d`.
    Dual,
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn add_family(p: &mut IpProblem, name: &str, n: usize, order: &BigInt) -> Vec<usize> {
    (0..=n)
        .map(|w| p.add_variable(format!("{name}_{w}"), BigInt::zero(), Some(order.clone())))
        .collect()
}

fn add_identity_and_sum(p: &mut IpProblem, name: &str, vars: &[usize], order: &BigInt) {
    p.add_constraint(format!("{name}_0 = 1"), vec![(vars[0], int(1))], Relation::Eq, int(1));
    p.add_constraint(
        format!("sum {name} = {order}"),
        vars.iter().map(|&v| (v, int(1))).collect(),
        Relation::Eq,
        BigRational::from_integer(order.clone()),
    );
}

/// `out_w = order^-1 sum_w' P_w(w', n) in_w'` for every `w`.
fn add_macwilliams(
    p: &mut IpProblem,
    names: (&str, &str),
    input: &[usize],
    output: &[usize],
    order: &BigInt,
    kraw: &[Vec<BigInt>],
) {
    let n = input.len() - 1;
    for w in 0..=n {
        let mut terms = vec![(output[w], int(1))];
        for wp in 0..=n {
            terms.push((input[wp], -BigRational::new(kraw[w][wp].clone(), order.clone())));
        }
        p.add_constraint(
            format!("{}_{w} = MacWilliams({})", names.1, names.0),
            terms,
            Relation::Eq,
            BigRational::zero(),
        );
    }
}

/// Constraints any `[[n,k,d;n-k]]` code's enumerators `A` (of `S_S`) and `B`
/// (of `L`) satisfy. Infeasibility proves no such code exists.
pub fn build_lp_maximal(n: usize, k: usize, d: usize) -> Result<IpProblem, BoundsError> {
    build_lp_maximal_with(n, k, d, Direction::Code)
}

pub fn build_lp_maximal_with(
    n: usize,
    k: usize,
    d: usize,
    direction: Direction,
) -> Result<IpProblem, BoundsError> {
    if k < 1 || k > n {
        return Err(BoundsError::Parameters { n, k, c: n.saturating_sub(k) });
    }
    if d < 1 {
        return Err(BoundsError::ZeroDistance);
    }
    let s_order = pow2(2 * (n - k));
    let l_order = pow2(2 * k);
    let kraw = krawtchouk_matrix(n);

    let mut p = IpProblem::new();
    let a = add_family(&mut p, "A", n, &s_order);
    let b = add_family(&mut p, "B", n, &l_order);
    add_identity_and_sum(&mut p, "A", &a, &s_order);
    add_identity_and_sum(&mut p, "B", &b, &l_order);
    add_macwilliams(&mut p, ("A", "B"), &a, &b, &s_order, &kraw);
    let (target, name) = match direction {
        Direction::Code => (&b, "B"),
        Direction::Dual => (&a, "A"),
    };
    for w in 1..d.min(n + 1) {
        p.add_constraint(format!("{name}_{w} = 0"), vec![(target[w], int(1))], Relation::Eq, int(0));
    }
    Ok(p)
}

/// The four-enumerator system for `0 < c < n - k`: `A` of `S_S x S_I`, `B` of
/// `L x S_I`, `C` of `S_I` and `D` of `L x S_S x S_I`.
pub fn build_lp_general(n: usize, k: usize, c: usize, d: usize) -> Result<IpProblem, BoundsError> {
    build_lp_general_with(n, k, c, d, Direction::Code)
}

pub fn build_lp_general_with(
    n: usize,
    k: usize,
    c: usize,
    d: usize,
    direction: Direction,
) -> Result<IpProblem, BoundsError> {
    if k > n || c == 0 || c >= n - k {
        return Err(BoundsError::Parameters { n, k, c });
    }
    if d < 1 {
        return Err(BoundsError::ZeroDistance);
    }
    let a_order = pow2(n - k + c);
    let b_order = pow2(n + k - c);
    let c_order = pow2(n - k - c);
    let d_order = pow2(n + k + c);
    let kraw = krawtchouk_matrix(n);

    let mut p = IpProblem::new();
    let av = add_family(&mut p, "A", n, &a_order);
    let bv = add_family(&mut p, "B", n, &b_order);
    let cv = add_family(&mut p, "C", n, &c_order);
    let dv = add_family(&mut p, "D", n, &d_order);
    add_identity_and_sum(&mut p, "A", &av, &a_order);
    add_identity_and_sum(&mut p, "B", &bv, &b_order);
    add_identity_and_sum(&mut p, "C", &cv, &c_order);
    add_identity_and_sum(&mut p, "D", &dv, &d_order);
    for w in 1..=n {
        for (name, big, small) in [
            ("D >= A", dv[w], av[w]),
            ("D >= B", dv[w], bv[w]),
            ("D >= C", dv[w], cv[w]),
            ("A >= C", av[w], cv[w]),
            ("B >= C", bv[w], cv[w]),
        ] {
            p.add_constraint(
                format!("{name} at {w}"),
                vec![(big, int(1)), (small, int(-1))],
                Relation::Ge,
                int(0),
            );
        }
    }
    add_macwilliams(&mut p, ("A", "B"), &av, &bv, &a_order, &kraw);
    add_macwilliams(&mut p, ("C", "D"), &cv, &dv, &c_order, &kraw);
    let (target, name) = match direction {
        Direction::Code => (&bv, "B"),
        Direction::Dual => (&av, "A"),
    };
    for w in 1..d.min(n + 1) {
        p.add_constraint(
            format!("{name}_{w} = C_{w}"),
            vec![(target[w], int(1)), (cv[w], int(-1))],
            Relation::Eq,
            int(0),
        );
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepStatus {
    Feasible,
    Infeasible,
    Undecided,
}

impl fmt::Display for StepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepStatus::Feasible => "feasible",
            StepStatus::Infeasible => "infeasible",
            StepStatus::Undecided => "undecided",
        })
    }
}

/// One feasibility query made while searching for the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpStep {
    pub d: usize,
    /// Whether the query was the integer program or only its LP relaxation.
    pub integer: bool,
    pub status: StepStatus,
    pub decided_by: DecidedBy,
    pub nodes: u64,
}

impl fmt::Display for LpStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} {} {} ({}, {} nodes)",
            self.d,
            if self.integer { "ip" } else { "lp" },
            self.status,
            self.decided_by,
            self.nodes
        )
    }
}

/// Result of [`lp_bound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpBound {
    /// Proven upper bound on the distance: `d* - 1` for the smallest
    /// infeasible `d*` that was decided.
    pub value: usize,
    /// True if an integer query below `value + 1` hit the node limit, so the
    /// integer program might give a smaller bound than `value`.
    pub undecided: bool,
    /// Stage that decided the infeasible query at `value + 1`.
    pub decided_by: DecidedBy,
    pub steps: Vec<LpStep>,
}

fn build(params: CodeParams, d: usize, direction: Direction) -> Result<IpProblem, BoundsError> {
    let CodeParams { n, k, c } = params;
    if c == n - k {
        build_lp_maximal_with(n, k, d, direction)
    } else {
        build_lp_general_with(n, k, c, d, direction)
    }
}

/// Upper bound on the distance of any code with these parameters.
///
/// The LP relaxation is scanned for `d = 2, 3, ..., n + 1` until it becomes
/// infeasible at some `d_lp`. Integer programs are then solved at
/// `d_lp - 1, d_lp - 2, ...` until one is integer-feasible; the bound is one
/// less than the smallest integer-infeasible `d`. By monotonicity in `d` this
/// equals the smallest infeasible `d` found by a plain upward scan.
///
/// ```
/// use eaqec::bounds::{lp_bound, CodeParams, DEFAULT_NODE_LIMIT};
///
/// let b = lp_bound(CodeParams::new(8, 3, 5).unwrap(), DEFAULT_NODE_LIMIT).unwrap();
/// assert_eq!(b.value, 5);
/// ```
pub fn lp_bound(params: CodeParams, node_limit: u64) -> Result<LpBound, BoundsError> {
    lp_bound_with(params, node_limit, Direction::Code)
}

pub fn lp_bound_with(
    params: CodeParams,
    node_limit: u64,
    direction: Direction,
) -> Result<LpBound, BoundsError> {
    lp_bound_known(params, node_limit, direction, 0)
}

/// As [`lp_bound_with`], but integer programs at `d <= known_distance` are
/// taken as feasible without solving, because a code of that distance exists.
pub fn lp_bound_known(
    params: CodeParams,
    node_limit: u64,
    direction: Direction,
    known_distance: usize,
) -> Result<LpBound, BoundsError> {
    let CodeParams { n, k, c } = params;
    if k == 0 {
        return Err(BoundsError::ZeroK);
    }
    if c == 0 && n - k > 0 || c > n - k {
        return Err(BoundsError::UnsupportedEntanglement { n, k, c });
    }
    let mut steps = Vec::new();
    let mut d_lp = None;
    for d in 2..=n + 1 {
        let feasible = solve_lp_relaxation(&build(params, d, direction)?);
        steps.push(LpStep {
            d,
            integer: false,
            status: if feasible {
                StepStatus::Feasible
            } else {
                StepStatus::Infeasible
            },
            decided_by: DecidedBy::LpRelaxation,
            nodes: 1,
        });
        if !feasible {
            d_lp = Some(d);
            break;
        }
    }
    let d_lp = d_lp.expect("d = n + 1 forces every low-weight coefficient to vanish");
    if d_lp <= n && solve_lp_relaxation(&build(params, d_lp + 1, direction)?) {
        return Err(BoundsError::Monotonicity {
            infeasible: d_lp,
            feasible: d_lp + 1,
        });
    }
    let mut value = d_lp - 1;
    let mut decided_by = DecidedBy::LpRelaxation;
    let mut undecided = false;
    let mut d = d_lp - 1;
    while d >= 2 {
        if d <= known_distance {
            steps.push(LpStep {
                d,
                integer: true,
                status: StepStatus::Feasible,
                decided_by: DecidedBy::KnownCode,
                nodes: 0,
            });
            break;
        }
        let verdict = solve_ip(&build(params, d, direction)?, node_limit);
        steps.push(LpStep {
            d,
            integer: true,
            status: match verdict.status {
                IpStatus::IntegerFeasible => StepStatus::Feasible,
                IpStatus::Infeasible => StepStatus::Infeasible,
                IpStatus::Undecided => StepStatus::Undecided,
            },
            decided_by: verdict.decided_by,
            nodes: verdict.nodes_explored,
        });
        match verdict.status {
            IpStatus::IntegerFeasible => break,
            IpStatus::Undecided => {
                undecided = true;
                break;
            }
            IpStatus::Infeasible => {
                value = d - 1;
                decided_by = verdict.decided_by;
                d -= 1;
            }
        }
    }
    Ok(LpBound {
        value,
        undecided,
        decided_by,
        steps,
    })
}
