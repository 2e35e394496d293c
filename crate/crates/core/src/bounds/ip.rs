//! Integer feasibility problems with exact rational data, decided by the
//! rational simplex plus depth-first branch-and-bound.
//!
//! Branching happens in the coordinates of an LLL-reduced basis of the
//! integer solutions of the equality constraints, rather than on the original
//! variables. Without it, problems whose equalities carry large coefficients
//! (as the MacWilliams identities do) send the search down endless chains of
//! fractional vertices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lattice::integer_solutions;
use super::simplex::{self, LinearSystem, LpOutcome};

/// Default branch-and-bound node budget.
pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

/// An integer variable with bounds `lower <= x <= upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpVariable {
    pub name: String,
    pub lower: BigInt,
    pub upper: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub terms: Vec<(usize, BigRational)>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// A pure feasibility problem over integer variables.
///
/// ```
/// use eaqec::bounds::{solve_ip, IpProblem, IpStatus, Relation};
/// use num_bigint::BigInt;
/// use num_rational::BigRational;
///
/// let mut p = IpProblem::new();
/// let a = p.add_variable("a", BigInt::from(0), None);
/// let half = BigRational::new(BigInt::from(1), BigInt::from(2));
/// p.add_constraint("half", vec![(a, BigRational::from_integer(BigInt::from(1)))], Relation::Eq, half);
/// assert_eq!(solve_ip(&p, 100).status, IpStatus::Infeasible);
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IpProblem {
    variables: Vec<IpVariable>,
    constraints: Vec<Constraint>,
}

impl IpProblem {
    pub fn new() -> IpProblem {
        IpProblem::default()
    }

    /// Declares a variable and returns its index.
    pub fn add_variable(&mut self, name: impl Into<String>, lower: BigInt, upper: Option<BigInt>) -> usize {
        self.variables.push(IpVariable {
            name: name.into(),
            lower,
            upper,
        });
        self.variables.len() - 1
    }

    /// Adds a constraint. Terms on the same variable are merged and zero
    /// terms dropped.
    ///
    /// # Panics
    /// If a term references an undeclared variable.
    pub fn add_constraint(
        &mut self,
        label: impl Into<String>,
        terms: Vec<(usize, BigRational)>,
        relation: Relation,
        rhs: BigRational,
    ) {
        let mut merged: Vec<(usize, BigRational)> = Vec::new();
        for (v, a) in terms {
            assert!(v < self.variables.len(), "undeclared variable {v}");
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some((_, acc)) => *acc += a,
                None => merged.push((v, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_zero());
        self.constraints.push(Constraint {
            label: label.into(),
            terms: merged,
            relation,
            rhs,
        });
    }

    pub fn variables(&self) -> &[IpVariable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Returns the label of the first constraint or bound `x` violates.
    pub fn check(&self, x: &[BigInt]) -> Result<(), String> {
        if x.len() != self.variables.len() {
            return Err(format!(
                "assignment has {} values for {} variables",
                x.len(),
                self.variables.len()
            ));
        }
        for (v, val) in self.variables.iter().zip(x) {
            if val < &v.lower || v.upper.as_ref().is_some_and(|u| val > u) {
                return Err(format!("bounds of {}", v.name));
            }
        }
        for c in &self.constraints {
            let lhs: BigRational = c
                .terms
                .iter()
                .map(|(v, a)| a * BigRational::from_integer(x[*v].clone()))
                .sum();
            let ok = match c.relation {
                Relation::Eq => lhs == c.rhs,
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
            };
            if !ok {
                return Err(c.label.clone());
            }
        }
        Ok(())
    }

    fn system(&self) -> LinearSystem {
        let nv = self.variables.len();
        let mut sys = LinearSystem::new(nv);
        for (j, v) in self.variables.iter().enumerate() {
            sys.lower[j] = Some(BigRational::from_integer(v.lower.clone()));
            sys.upper[j] = v.upper.clone().map(BigRational::from_integer);
        }
        for c in &self.constraints {
            let mut row = vec![BigRational::zero(); nv];
            for (v, a) in &c.terms {
                row[*v] = a.clone();
            }
            sys.push(row, c.relation, c.rhs.clone(), None);
        }
        sys
    }
}

impl fmt::Display for IpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.variables {
            match &v.upper {
                Some(u) => writeln!(f, "var {} in [{}, {}]", v.name, v.lower, u)?,
                None => writeln!(f, "var {} >= {}", v.name, v.lower)?,
            }
        }
        for c in &self.constraints {
            let terms: Vec<String> = c
                .terms
                .iter()
                .map(|(v, a)| format!("{}*{}", a, self.variables[*v].name))
                .collect();
            writeln!(f, "{}: {} {} {}", c.label, terms.join(" + "), c.relation, c.rhs)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IpStatus {
    Infeasible,
    IntegerFeasible,
    Undecided,
}

/// Which stage of the solver settled the question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecidedBy {
    /// The root LP relaxation was infeasible or already integral.
    LpRelaxation,
    BranchAndBound,
    /// The equality constraints have no integer solution at all.
    Lattice,
    /// The node budget ran out.
    NodeLimit,
    /// Not solved: a code with these parameters is already known, and its
    /// enumerators are an integer solution.
    KnownCode,
}

impl fmt::Display for IpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IpStatus::Infeasible => "infeasible",
            IpStatus::IntegerFeasible => "integer-feasible",
            IpStatus::Undecided => "undecided",
        })
    }
}

impl fmt::Display for DecidedBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecidedBy::LpRelaxation => "lp-relaxation",
            DecidedBy::BranchAndBound => "branch-and-bound",
            DecidedBy::Lattice => "lattice",
            DecidedBy::NodeLimit => "node-limit",
            DecidedBy::KnownCode => "known-code",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpVerdict {
    pub status: IpStatus,
    pub witness: Option<Vec<BigInt>>,
    pub nodes_explored: u64,
    pub decided_by: DecidedBy,
}

/// Feasibility of the LP relaxation alone.
pub fn solve_lp_relaxation(p: &IpProblem) -> bool {
    matches!(simplex::solve(&p.system()), LpOutcome::Feasible(_))
}

fn to_integer_row(terms: &[(usize, BigRational)], rhs: &BigRational, nv: usize) -> (Vec<BigInt>, BigInt) {
    let scale = terms
        .iter()
        .map(|(_, a)| a.denom().clone())
        .fold(rhs.denom().clone(), |acc, d| acc.lcm(&d));
    let mut row = vec![BigInt::zero(); nv];
    for (v, a) in terms {
        row[*v] = a.numer() * (&scale / a.denom());
    }
    (row, rhs.numer() * (&scale / rhs.denom()))
}

/// The problem rewritten over `y`, with `x = x0 + sum_j y_j basis[j]`
/// covering exactly the integer solutions of the equalities.
struct Reduced {
    x0: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
    system: LinearSystem,
}

impl Reduced {
    /// `None` when some constraint fails regardless of `y`, including when
    /// the equalities have no integer solution.
    fn new(p: &IpProblem) -> Option<Reduced> {
        let nv = p.variables.len();
        let (rows, rhs): (Vec<_>, Vec<_>) = p
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::Eq)
            .map(|c| to_integer_row(&c.terms, &c.rhs, nv))
            .unzip();
        let lattice = integer_solutions(&rows, &rhs, nv)?;
        let dim = lattice.basis.len();
        let x0 = lattice.x0;
        let basis = lattice.basis;
        let q = |v: &BigInt| BigRational::from_integer(v.clone());

        let mut system = LinearSystem::new(dim);
        for (i, v) in p.variables.iter().enumerate() {
            let row: Vec<BigRational> = basis.iter().map(|b| q(&b[i])).collect();
            let lo = &v.lower - &x0[i];
            let hi = v.upper.as_ref().map(|u| u - &x0[i]);
            if row.iter().all(Zero::is_zero) {
                if lo.is_positive() || hi.is_some_and(|h| h.is_negative()) {
                    return None;
                }
                continue;
            }
            match hi {
                Some(h) => {
                    let range = q(&(&h - &lo));
                    system.push(row, Relation::Le, q(&h), Some(range));
                }
                None => system.push(row, Relation::Ge, q(&lo), None),
            }
        }
        for c in p.constraints.iter().filter(|c| c.relation != Relation::Eq) {
            let mut row = vec![BigRational::zero(); dim];
            let mut rhs = c.rhs.clone();
            for (v, a) in &c.terms {
                rhs -= a * q(&x0[*v]);
                for (r, b) in row.iter_mut().zip(&basis) {
                    if !b[*v].is_zero() {
                        *r += a * q(&b[*v]);
                    }
                }
            }
            if row.iter().all(Zero::is_zero) {
                let ok = match c.relation {
                    Relation::Le => !rhs.is_negative(),
                    Relation::Ge => !rhs.is_positive(),
                    Relation::Eq => unreachable!(),
                };
                if !ok {
                    return None;
                }
                continue;
            }
            system.push(row, c.relation, rhs, None);
        }
        Some(Reduced { x0, basis, system })
    }

    fn lift(&self, y: &[BigInt]) -> Vec<BigInt> {
        let mut x = self.x0.clone();
        for (yj, b) in y.iter().zip(&self.basis) {
            if yj.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += yj * bi;
            }
        }
        x
    }
}

fn verdict(status: IpStatus, witness: Option<Vec<BigInt>>, nodes: u64, decided_by: DecidedBy) -> IpVerdict {
    IpVerdict {
        status,
        witness,
        nodes_explored: nodes,
        decided_by,
    }
}

fn feasible(p: &IpProblem, witness: Vec<BigInt>, nodes: u64, decided_by: DecidedBy) -> IpVerdict {
    assert!(
        p.check(&witness).is_ok(),
        "solver produced an assignment violating {:?}",
        p.check(&witness)
    );
    verdict(IpStatus::IntegerFeasible, Some(witness), nodes, decided_by)
}

/// Decides integer feasibility.
///
/// The first node is the LP relaxation of `p` itself. If it is feasible but
/// fractional, the integer solutions of the equalities are parametrised by a
/// reduced lattice basis and the search continues over those coordinates:
/// each node solves the LP relaxation under tightened bounds, the most
/// fractional coordinate is split into `y <= floor` and `y >= ceil`, and the
/// child on the side the fractional value is nearer to is explored first.
pub fn solve_ip(p: &IpProblem, node_limit: u64) -> IpVerdict {
    if node_limit == 0 {
        return verdict(IpStatus::Undecided, None, 0, DecidedBy::NodeLimit);
    }
    let x = match simplex::solve(&p.system()) {
        LpOutcome::Infeasible => return verdict(IpStatus::Infeasible, None, 1, DecidedBy::LpRelaxation),
        LpOutcome::Feasible(x) => x,
    };
    if x.iter().all(BigRational::is_integer) {
        let witness = x.iter().map(BigRational::to_integer).collect();
        return feasible(p, witness, 1, DecidedBy::LpRelaxation);
    }
    let Some(mut reduced) = Reduced::new(p) else {
        return verdict(IpStatus::Infeasible, None, 1, DecidedBy::Lattice);
    };

    let dim = reduced.basis.len();
    let mut stack: Vec<(Vec<Option<BigInt>>, Vec<Option<BigInt>>)> = vec![(vec![None; dim], vec![None; dim])];
    let mut nodes = 1u64;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while let Some((lower, upper)) = stack.pop() {
        if nodes >= node_limit {
            return verdict(IpStatus::Undecided, None, nodes, DecidedBy::NodeLimit);
        }
        nodes += 1;
        reduced.system.lower = lower.iter().map(|l| l.clone().map(BigRational::from_integer)).collect();
        reduced.system.upper = upper.iter().map(|u| u.clone().map(BigRational::from_integer)).collect();
        let y = match simplex::solve(&reduced.system) {
            LpOutcome::Infeasible => continue,
            LpOutcome::Feasible(y) => y,
        };

        let mut pick: Option<(usize, BigRational)> = None;
        for (j, v) in y.iter().enumerate() {
            if v.is_integer() {
                continue;
            }
            let dist = (v - v.floor() - &half).abs();
            if pick.as_ref().is_none_or(|(_, best)| dist < *best) {
                pick = Some((j, dist));
            }
        }
        let Some((j, _)) = pick else {
            let y: Vec<BigInt> = y.iter().map(BigRational::to_integer).collect();
            return feasible(p, reduced.lift(&y), nodes, DecidedBy::BranchAndBound);
        };

        let v = &y[j];
        let fl = v.floor().to_integer();
        let ce = &fl + BigInt::one();
        let near_up = (v - BigRational::from_integer(fl.clone())) > half;
        let mut down = (lower.clone(), upper.clone());
        down.1[j] = Some(fl);
        let mut up = (lower, upper);
        up.0[j] = Some(ce);
        if near_up {
            stack.push(down);
            stack.push(up);
        } else {
            stack.push(up);
            stack.push(down);
        }
    }
    verdict(IpStatus::Infeasible, None, nodes, DecidedBy::BranchAndBound)
}
