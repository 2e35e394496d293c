//! Phase-1 bounded-variable simplex over exact rationals.
//!
//! Only feasibility is decided: the problem is `A x (=,<=,>=) b` with
//! `l <= x <= u`, where either bound may be infinite. Pivoting uses Bland's
//! rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ip::Relation;

/// A dense linear feasibility problem.
#[derive(Debug, Clone)]
pub(crate) struct LinearSystem {
    pub rows: Vec<Vec<BigRational>>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<BigRational>,
    /// Width of a two-sided inequality row: `Le` rows also get
    /// `lhs >= rhs - range`, `Ge` rows `lhs <= rhs + range`.
    pub ranges: Vec<Option<BigRational>>,
    pub lower: Vec<Option<BigRational>>,
    pub upper: Vec<Option<BigRational>>,
}

impl LinearSystem {
    pub fn new(nv: usize) -> LinearSystem {
        LinearSystem {
            rows: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            ranges: Vec::new(),
            lower: vec![None; nv],
            upper: vec![None; nv],
        }
    }

    pub fn push(&mut self, row: Vec<BigRational>, relation: Relation, rhs: BigRational, range: Option<BigRational>) {
        self.rows.push(row);
        self.relations.push(relation);
        self.rhs.push(rhs);
        self.ranges.push(range);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Feasible(Vec<BigRational>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum At {
    Lower,
    Upper,
    Basic,
}

struct Tableau {
    t: Vec<Vec<BigRational>>,
    cost: Vec<BigRational>,
    beta: Vec<BigRational>,
    basis: Vec<usize>,
    state: Vec<At>,
    upper: Vec<Option<BigRational>>,
    artificial_from: usize,
}

/// How an original variable maps to nonnegative tableau columns.
enum Column {
    /// `x = l + y`.
    Shifted(usize),
    /// `x = u - y`.
    Flipped(usize),
    /// `x = y+ - y-`.
    Split(usize, usize),
}

pub(crate) fn solve(sys: &LinearSystem) -> LpOutcome {
    let m = sys.rows.len();
    let nv = sys.lower.len();
    for j in 0..nv {
        if let (Some(l), Some(u)) = (&sys.lower[j], &sys.upper[j]) {
            if u < l {
                return LpOutcome::Infeasible;
            }
        }
    }

    let mut columns = Vec::with_capacity(nv);
    let mut upper: Vec<Option<BigRational>> = Vec::new();
    for j in 0..nv {
        let c = upper.len();
        match (&sys.lower[j], &sys.upper[j]) {
            (Some(l), u) => {
                columns.push(Column::Shifted(c));
                upper.push(u.as_ref().map(|u| u - l));
            }
            (None, Some(_)) => {
                columns.push(Column::Flipped(c));
                upper.push(None);
            }
            (None, None) => {
                columns.push(Column::Split(c, c + 1));
                upper.push(None);
                upper.push(None);
            }
        }
    }
    let width = upper.len();

    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    for i in 0..m {
        let mut b = sys.rhs[i].clone();
        let mut row = vec![BigRational::zero(); width];
        for (j, a) in sys.rows[i].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match columns[j] {
                Column::Shifted(c) => {
                    let l = sys.lower[j].as_ref().expect("shifted columns have a lower bound");
                    if !l.is_zero() {
                        b -= a * l;
                    }
                    row[c] = a.clone();
                }
                Column::Flipped(c) => {
                    b -= a * sys.upper[j].as_ref().expect("flipped columns have an upper bound");
                    row[c] = -a.clone();
                }
                Column::Split(p, q) => {
                    row[p] = a.clone();
                    row[q] = -a.clone();
                }
            }
        }
        rows.push(row);
        rhs.push(b);
    }

    // Slack columns for inequalities.
    let slack_count = sys.relations.iter().filter(|r| **r != Relation::Eq).count();
    let mut slack_of_row: Vec<Option<usize>> = vec![None; m];
    let mut slack_sign: Vec<i8> = vec![0; m];
    let mut next = width;
    for i in 0..m {
        slack_sign[i] = match sys.relations[i] {
            Relation::Eq => continue,
            Relation::Le => 1,
            Relation::Ge => -1,
        };
        slack_of_row[i] = Some(next);
        upper.push(sys.ranges[i].clone());
        next += 1;
    }
    let structural = width + slack_count;

    // Make rhs nonnegative; a slack with coefficient +1 can start basic if
    // its value fits under its bound.
    let mut needs_artificial = Vec::new();
    let mut initial_basic = vec![usize::MAX; m];
    for i in 0..m {
        if rhs[i].is_negative() {
            for a in rows[i].iter_mut() {
                if !a.is_zero() {
                    *a = -a.clone();
                }
            }
            rhs[i] = -rhs[i].clone();
            slack_sign[i] = -slack_sign[i];
        }
        match slack_of_row[i] {
            Some(col) if slack_sign[i] == 1 && upper[col].as_ref().is_none_or(|u| &rhs[i] <= u) => {
                initial_basic[i] = col
            }
            _ => needs_artificial.push(i),
        }
    }
    let total = structural + needs_artificial.len();
    upper.extend(std::iter::repeat_n(None, needs_artificial.len()));

    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = std::mem::take(&mut rows[i]);
        row.resize(total, BigRational::zero());
        if let Some(col) = slack_of_row[i] {
            row[col] = BigRational::from_integer(BigInt::from(slack_sign[i]));
        }
        t.push(row);
    }
    for (a, &i) in needs_artificial.iter().enumerate() {
        let col = structural + a;
        t[i][col] = BigRational::one();
        initial_basic[i] = col;
    }

    let mut state = vec![At::Lower; total];
    for &b in &initial_basic {
        state[b] = At::Basic;
    }
    let mut cost = vec![BigRational::zero(); total];
    for &i in &needs_artificial {
        for j in 0..total {
            if state[j] != At::Basic && !t[i][j].is_zero() {
                cost[j] -= &t[i][j];
            }
        }
    }

    let mut tab = Tableau {
        t,
        cost,
        beta: rhs,
        basis: initial_basic,
        state,
        upper,
        artificial_from: structural,
    };
    tab.run();

    let infeasible = tab
        .basis
        .iter()
        .zip(&tab.beta)
        .any(|(&b, v)| b >= tab.artificial_from && v.is_positive());
    if infeasible {
        return LpOutcome::Infeasible;
    }
    let mut y = vec![BigRational::zero(); total];
    for j in 0..total {
        if tab.state[j] == At::Upper {
            y[j] = tab.upper[j].clone().expect("at upper implies finite bound");
        }
    }
    for (i, &b) in tab.basis.iter().enumerate() {
        y[b] = tab.beta[i].clone();
    }
    let x = columns
        .iter()
        .enumerate()
        .map(|(j, col)| match *col {
            Column::Shifted(c) => &y[c] + sys.lower[j].as_ref().expect("shifted"),
            Column::Flipped(c) => sys.upper[j].as_ref().expect("flipped") - &y[c],
            Column::Split(p, q) => &y[p] - &y[q],
        })
        .collect();
    LpOutcome::Feasible(x)
}

impl Tableau {
    fn can_move(&self, j: usize) -> bool {
        match &self.upper[j] {
            Some(u) => u.is_positive(),
            None => true,
        }
    }

    fn run(&mut self) {
        loop {
            let entering = (0..self.cost.len()).find(|&j| match self.state[j] {
                At::Lower => self.cost[j].is_negative() && self.can_move(j),
                At::Upper => self.cost[j].is_positive(),
                At::Basic => false,
            });
            let Some(j) = entering else {
                return;
            };
            let increasing = self.state[j] == At::Lower;

            // Ratio test. `alpha` is the rate at which the basic variable in
            // row i decreases per unit step of the entering variable.
            let mut best: Option<(BigRational, usize)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][j];
                if a.is_zero() {
                    continue;
                }
                let alpha = if increasing { a.clone() } else { -a.clone() };
                let b = self.basis[i];
                let limit = if alpha.is_positive() {
                    &self.beta[i] / &alpha
                } else {
                    match &self.upper[b] {
                        Some(u) => (u - &self.beta[i]) / -alpha,
                        None => continue,
                    }
                };
                let better = match &best {
                    None => true,
                    Some((lim, bi)) => limit < *lim || (limit == *lim && b < self.basis[*bi]),
                };
                if better {
                    best = Some((limit, i));
                }
            }

            let flip = self.upper[j].clone();
            let take_flip = match (&flip, &best) {
                (Some(u), Some((lim, _))) => u <= lim,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!("phase-1 objective is bounded below"),
            };

            if take_flip {
                let u = flip.expect("checked above");
                let delta = if increasing { u } else { -u };
                for i in 0..self.t.len() {
                    if !self.t[i][j].is_zero() {
                        let d = &self.t[i][j] * &delta;
                        self.beta[i] -= d;
                    }
                }
                self.state[j] = if increasing { At::Upper } else { At::Lower };
                continue;
            }

            let (theta, r) = best.expect("checked above");
            let step = if increasing { theta.clone() } else { -theta.clone() };
            for i in 0..self.t.len() {
                if !self.t[i][j].is_zero() {
                    let d = &self.t[i][j] * &step;
                    self.beta[i] -= d;
                }
            }
            let entering_value = if increasing {
                theta
            } else {
                self.upper[j].clone().expect("at upper implies finite bound") - theta
            };

            let leaving = self.basis[r];
            let alpha_r = &self.t[r][j] * if increasing { BigRational::one() } else { -BigRational::one() };
            self.state[leaving] = if alpha_r.is_positive() { At::Lower } else { At::Upper };
            if leaving >= self.artificial_from {
                self.upper[leaving] = Some(BigRational::zero());
                self.state[leaving] = At::Lower;
            }
            self.basis[r] = j;
            self.state[j] = At::Basic;
            self.beta[r] = entering_value;
            self.pivot(r, j);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.t[r][j].clone();
        if !p.is_one() {
            for a in self.t[r].iter_mut() {
                if !a.is_zero() {
                    *a /= &p;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.t[r]);
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&c| !pivot_row[c].is_zero()).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for &c in &nz {
                let d = &f * &pivot_row[c];
                row[c] -= d;
            }
        }
        if !self.cost[j].is_zero() {
            let f = self.cost[j].clone();
            for &c in &nz {
                let d = &f * &pivot_row[c];
                self.cost[c] -= d;
            }
        }
        self.t[r] = pivot_row;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sys(
        rows: Vec<Vec<i64>>,
        relations: Vec<Relation>,
        rhs: Vec<i64>,
        lower: Vec<i64>,
        upper: Vec<Option<i64>>,
    ) -> LinearSystem {
        LinearSystem {
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(|a| q(a, 1)).collect())
                .collect(),
            ranges: vec![None; relations.len()],
            relations,
            rhs: rhs.into_iter().map(|b| q(b, 1)).collect(),
            lower: lower.into_iter().map(|l| Some(q(l, 1))).collect(),
            upper: upper.into_iter().map(|u| u.map(|u| q(u, 1))).collect(),
        }
    }

    fn check(s: &LinearSystem, x: &[BigRational]) {
        for (j, v) in x.iter().enumerate() {
            if let Some(l) = &s.lower[j] {
                assert!(v >= l);
            }
            if let Some(u) = &s.upper[j] {
                assert!(v <= u);
            }
        }
        for (i, row) in s.rows.iter().enumerate() {
            let lhs: BigRational = row.iter().zip(x).map(|(a, v)| a * v).sum();
            match s.relations[i] {
                Relation::Eq => assert_eq!(lhs, s.rhs[i]),
                Relation::Le => assert!(lhs <= s.rhs[i]),
                Relation::Ge => assert!(lhs >= s.rhs[i]),
            }
            if let Some(r) = &s.ranges[i] {
                match s.relations[i] {
                    Relation::Le => assert!(lhs >= &s.rhs[i] - r),
                    Relation::Ge => assert!(lhs <= &s.rhs[i] + r),
                    Relation::Eq => {}
                }
            }
        }
    }

    #[test]
    fn simple_feasible() {
        use Relation::*;
        let s = sys(
            vec![vec![1, 1], vec![1, -1]],
            vec![Eq, Ge],
            vec![3, 1],
            vec![0, 0],
            vec![None, None],
        );
        match solve(&s) {
            LpOutcome::Feasible(x) => check(&s, &x),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn simple_infeasible() {
        use Relation::*;
        let s = sys(
            vec![vec![1, 1], vec![1, 1]],
            vec![Le, Ge],
            vec![2, 3],
            vec![0, 0],
            vec![None, None],
        );
        assert_eq!(solve(&s), LpOutcome::Infeasible);
    }

    #[test]
    fn bounds_are_respected() {
        use Relation::*;
        // x + y = 5 with x <= 2, y <= 2 is infeasible; with y <= 3 it is tight.
        let s = sys(vec![vec![1, 1]], vec![Eq], vec![5], vec![0, 0], vec![Some(2), Some(2)]);
        assert_eq!(solve(&s), LpOutcome::Infeasible);
        let s = sys(vec![vec![1, 1]], vec![Eq], vec![5], vec![0, 0], vec![Some(2), Some(3)]);
        match solve(&s) {
            LpOutcome::Feasible(x) => check(&s, &x),
            o => panic!("{o:?}"),
        }
        // Nonzero lower bounds and negative right-hand sides.
        let s = sys(
            vec![vec![-1, 2], vec![1, 0]],
            vec![Le, Ge],
            vec![-4, 5],
            vec![3, -2],
            vec![Some(9), Some(1)],
        );
        match solve(&s) {
            LpOutcome::Feasible(x) => check(&s, &x),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn free_variables_and_ranges() {
        use Relation::*;
        // x free, y <= 5 with no lower bound: x - y = -7 and 2 <= x + y <= 3.
        let mut s = LinearSystem::new(2);
        s.upper[1] = Some(q(5, 1));
        s.push(vec![q(1, 1), q(-1, 1)], Eq, q(-7, 1), None);
        s.push(vec![q(1, 1), q(1, 1)], Le, q(3, 1), Some(q(1, 1)));
        match solve(&s) {
            LpOutcome::Feasible(x) => {
                check(&s, &x);
                assert!(x[1] >= q(9, 2));
            }
            o => panic!("{o:?}"),
        }
        // A range too narrow for the rhs is rejected.
        let mut s = LinearSystem::new(1);
        s.lower[0] = Some(q(0, 1));
        s.push(vec![q(1, 1)], Le, q(10, 1), Some(q(2, 1)));
        s.push(vec![q(1, 1)], Le, q(7, 1), None);
        assert_eq!(solve(&s), LpOutcome::Infeasible);
        s.rows[1] = vec![q(1, 1)];
        s.rhs[1] = q(8, 1);
        match solve(&s) {
            LpOutcome::Feasible(x) => assert_eq!(x[0], q(8, 1)),
            o => panic!("{o:?}"),
        }
    }
}
