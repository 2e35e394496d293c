//! Integer solutions of linear equations: a particular solution plus an
//! LLL-reduced basis of the integer kernel.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// All integer `x` with `E x = e` are `x0 + sum_j y_j basis[j]`, `y` integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct AffineLattice {
    pub x0: Vec<BigInt>,
    pub basis: Vec<Vec<BigInt>>,
}

/// Nearest integer to `a / b` for any nonzero `b`.
fn round_div_signed(a: &BigInt, b: &BigInt) -> BigInt {
    if b.is_negative() {
        round_div(&-a, &-b)
    } else {
        round_div(a, b)
    }
}

/// Solves `E x = e` over the integers. `rows` is `E` with every row given
/// over `nv` columns. Returns `None` when there is no integer solution.
pub(crate) fn integer_solutions(rows: &[Vec<BigInt>], rhs: &[BigInt], nv: usize) -> Option<AffineLattice> {
    // Column operations act on the stacked matrix [E; I], stored by column.
    let m = rows.len();
    let mut cols: Vec<Vec<BigInt>> = (0..nv)
        .map(|j| {
            let mut c: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
            c.extend((0..nv).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();

    let mut pivots: Vec<Option<usize>> = vec![None; m];
    let mut p = 0;
    for i in 0..m {
        if p == nv {
            break;
        }
        // Euclid across columns: the smallest nonzero entry becomes the
        // pivot and reduces the rest, which keeps entries from exploding.
        loop {
            let Some(best) = (p..nv)
                .filter(|&q| !cols[q][i].is_zero())
                .min_by(|&a, &b| cols[a][i].magnitude().cmp(cols[b][i].magnitude()))
            else {
                break;
            };
            cols.swap(p, best);
            let h = cols[p][i].clone();
            let mut done = true;
            for q in p + 1..nv {
                if cols[q][i].is_zero() {
                    continue;
                }
                let r = round_div_signed(&cols[q][i], &h);
                let (lo, hi) = cols.split_at_mut(q);
                for (x, y) in hi[0].iter_mut().zip(&lo[p]) {
                    if !y.is_zero() {
                        *x -= &r * y;
                    }
                }
                if !cols[q][i].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if cols.get(p).is_none_or(|c| c[i].is_zero()) {
            continue;
        }
        if cols[p][i].is_negative() {
            for x in cols[p].iter_mut() {
                *x = -x.clone();
            }
        }
        // Keep earlier pivot columns small by reducing them against this one.
        let h = cols[p][i].clone();
        for q in 0..p {
            let r = cols[q][i].div_floor(&h);
            if !r.is_zero() {
                for k in 0..cols[q].len() {
                    let d = &r * &cols[p][k];
                    cols[q][k] -= d;
                }
            }
        }
        pivots[i] = Some(p);
        p += 1;
    }

    // Forward substitution for z with E V z = e, using only pivot columns.
    let mut z: Vec<BigInt> = vec![BigInt::zero(); p];
    for i in 0..m {
        let mut r = rhs[i].clone();
        let upto = pivots[i].unwrap_or(p);
        for (q, zq) in z.iter().enumerate().take(upto) {
            if !zq.is_zero() {
                r -= &cols[q][i] * zq;
            }
        }
        match pivots[i] {
            Some(q) => {
                let (quot, rem) = r.div_rem(&cols[q][i]);
                if !rem.is_zero() {
                    return None;
                }
                z[q] = quot;
            }
            None => {
                if !r.is_zero() {
                    return None;
                }
            }
        }
    }
    let mut x0 = vec![BigInt::zero(); nv];
    for (q, zq) in z.iter().enumerate() {
        if zq.is_zero() {
            continue;
        }
        for (k, x) in x0.iter_mut().enumerate() {
            *x += zq * &cols[q][m + k];
        }
    }
    let mut basis: Vec<Vec<BigInt>> = cols[p..].iter().map(|c| c[m..].to_vec()).collect();
    lll_reduce(&mut basis);
    let x0 = nearest_plane(x0, &basis);
    Some(AffineLattice { x0, basis })
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `a / b` for `b > 0`, halves rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)))
}

/// In-place LLL reduction with `delta = 99/100`, in all-integer arithmetic.
/// The vectors must be linearly independent.
pub(crate) fn lll_reduce(b: &mut [Vec<BigInt>]) {
    let n = b.len();
    if n == 0 {
        return;
    }
    // d[i + 1] is the Gram determinant of b[0..=i]; lam[k][j] the scaled
    // Gram-Schmidt coefficients.
    let mut d: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut lam: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = dot(&b[0], &b[0]);
    let mut k = 1;
    let mut kmax = 0;

    let red = |b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize| {
        if (&lam[k][l] * BigInt::from(2)).abs() > d[l + 1] {
            let q = round_div(&lam[k][l], &d[l + 1]);
            let (lo, hi) = b.split_at_mut(k);
            for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
                if !y.is_zero() {
                    *x -= &q * y;
                }
            }
            lam[k][l] -= &q * &d[l + 1];
            for i in 0..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    };

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input is linearly dependent");
                    d[k + 1] = u;
                }
            }
        }
        loop {
            red(b, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(100) * &d[k + 1] * &d[k - 1];
            let rhs = BigInt::from(99) * &d[k] * &d[k] - BigInt::from(100) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs >= rhs {
                break;
            }
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = std::mem::take(&mut lam[k][j]);
                lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
            }
            let l = lam[k][k - 1].clone();
            let big = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&big * t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = big;
            if k > 1 {
                k -= 1;
            }
        }
        for l in (0..k.saturating_sub(1)).rev() {
            red(b, &mut lam, &d, k, l);
        }
        k += 1;
    }
}

/// Babai's nearest-plane reduction of `x` modulo the lattice of `basis`.
fn nearest_plane(mut x: Vec<BigInt>, basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() {
        return x;
    }
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(basis.len());
    let mut norms: Vec<BigRational> = Vec::with_capacity(basis.len());
    for v in basis {
        let mut s: Vec<BigRational> = v.iter().map(q).collect();
        for (prev, nn) in star.iter().zip(&norms) {
            let mu: BigRational = v.iter().zip(prev).map(|(a, b)| q(a) * b).sum::<BigRational>() / nn;
            for (si, pi) in s.iter_mut().zip(prev) {
                *si -= &mu * pi;
            }
        }
        norms.push(s.iter().map(|a| a * a).sum());
        star.push(s);
    }
    for j in (0..basis.len()).rev() {
        let c: BigRational = x.iter().zip(&star[j]).map(|(a, b)| q(a) * b).sum::<BigRational>() / &norms[j];
        let c = c.round().to_integer();
        if !c.is_zero() {
            for (xi, bi) in x.iter_mut().zip(&basis[j]) {
                *xi -= &c * bi;
            }
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn apply(rows: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
        rows.iter().map(|r| dot(r, x)).collect()
    }

    #[test]
    fn solves_and_spans_kernel() {
        let rows = vec![v(&[2, 3, 5, 0]), v(&[0, 4, 6, 8])];
        let rhs = v(&[7, 10]);
        let lat = integer_solutions(&rows, &rhs, 4).unwrap();
        assert_eq!(apply(&rows, &lat.x0), rhs);
        assert_eq!(lat.basis.len(), 2);
        for b in &lat.basis {
            assert_eq!(apply(&rows, b), v(&[0, 0]));
        }
    }

    #[test]
    fn detects_parity_obstruction() {
        let rows = vec![v(&[2, 2, -2])];
        assert!(integer_solutions(&rows, &v(&[1]), 3).is_none());
        assert!(integer_solutions(&rows, &v(&[4]), 3).is_some());
        // Inconsistent over the rationals too.
        let rows = vec![v(&[1, 1]), v(&[2, 2])];
        assert!(integer_solutions(&rows, &v(&[1, 3]), 2).is_none());
        assert!(integer_solutions(&rows, &v(&[1, 2]), 2).is_some());
    }

    #[test]
    fn lll_shortens_a_skewed_basis() {
        let mut b = vec![v(&[1, 0, 0]), v(&[1000, 1, 0]), v(&[7777, 555, 1])];
        lll_reduce(&mut b);
        for x in &b {
            assert!(dot(x, x) <= BigInt::from(3));
        }
    }
}
