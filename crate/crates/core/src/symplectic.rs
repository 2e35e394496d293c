//! Ordered sets of Pauli rows: GF(2) rank, symplectic structure, and group
//! enumeration.

use std::fmt;

use crate::error::SymplecticError;
use crate::pauli::PauliOp;

/// Default limit on the number of elements [`SymplecticMatrix::enumerate_group`]
/// will produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 28;

/// An ordered list of Pauli rows on a common number of qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    n: usize,
    rows: Vec<PauliOp>,
}

/// Generators split into anticommuting pairs and a commuting remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticDecomposition {
    pub pairs: Vec<(PauliOp, PauliOp)>,
    pub isotropic: Vec<PauliOp>,
}

impl SymplecticDecomposition {
    /// Rows in canonical order: `g_1, h_1, ..., g_c, h_c`, then the isotropic rows.
    pub fn rows(&self) -> Vec<PauliOp> {
        let mut out = Vec::with_capacity(2 * self.pairs.len() + self.isotropic.len());
        for (g, h) in &self.pairs {
            out.push(g.clone());
            out.push(h.clone());
        }
        out.extend(self.isotropic.iter().cloned());
        out
    }
}

/// Incrementally reduced GF(2) basis over packed rows, keyed by lowest set bit.
#[derive(Debug, Clone)]
pub(crate) struct Gf2Basis {
    by_pivot: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl Gf2Basis {
    pub(crate) fn new(bits: usize) -> Gf2Basis {
        Gf2Basis {
            by_pivot: vec![None; bits],
            rank: 0,
        }
    }

    fn reduce(&self, row: &mut [u64]) -> Option<usize> {
        loop {
            let pivot = lowest_bit(row)?;
            match &self.by_pivot[pivot] {
                Some(b) => {
                    for (a, x) in row.iter_mut().zip(b) {
                        *a ^= x;
                    }
                }
                None => return Some(pivot),
            }
        }
    }

    /// Adds `row`; returns false if it was already in the span.
    pub(crate) fn insert(&mut self, mut row: Vec<u64>) -> bool {
        match self.reduce(&mut row) {
            Some(p) => {
                self.by_pivot[p] = Some(row);
                self.rank += 1;
                true
            }
            None => false,
        }
    }

    pub(crate) fn contains(&self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r).is_none()
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

impl SymplecticMatrix {
    pub fn new(n: usize, rows: Vec<PauliOp>) -> Result<SymplecticMatrix, SymplecticError> {
        for (i, r) in rows.iter().enumerate() {
            if r.num_qubits() != n {
                return Err(SymplecticError::RowLength {
                    row: i,
                    expected: n,
                    found: r.num_qubits(),
                });
            }
        }
        Ok(SymplecticMatrix { n, rows })
    }

    pub fn empty(n: usize) -> SymplecticMatrix {
        SymplecticMatrix { n, rows: Vec::new() }
    }

    /// Parses whitespace-separated Pauli strings. The qubit count comes from
    /// the first row, so the text must not be empty.
    pub fn parse(text: &str) -> Result<SymplecticMatrix, SymplecticError> {
        let rows = text
            .split_whitespace()
            .map(|s| s.parse::<PauliOp>())
            .collect::<Result<Vec<_>, _>>()?;
        let n = rows
            .first()
            .map(|r| r.num_qubits())
            .ok_or(crate::error::PauliError::Empty)?;
        SymplecticMatrix::new(n, rows)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliOp] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn into_rows(self) -> Vec<PauliOp> {
        self.rows
    }

    /// Concatenates the rows of `self` and `other`.
    pub fn stacked(&self, other: &SymplecticMatrix) -> Result<SymplecticMatrix, SymplecticError> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SymplecticMatrix::new(self.n, rows)
    }

    pub(crate) fn basis(&self) -> Gf2Basis {
        let mut b = Gf2Basis::new(2 * self.n);
        for r in &self.rows {
            b.insert(r.to_row());
        }
        b
    }

    /// Rank of the rows as length-`2n` vectors over GF(2).
    pub fn gf2_rank(&self) -> usize {
        self.basis().rank()
    }

    pub fn is_independent(&self) -> bool {
        self.gf2_rank() == self.rows.len()
    }

    /// Whether `p` is a product of rows (up to phase).
    pub fn span_contains(&self, p: &PauliOp) -> bool {
        p.num_qubits() == self.n && self.basis().contains(&p.to_row())
    }

    /// Whether both row sets generate the same group.
    pub fn same_span(&self, other: &SymplecticMatrix) -> bool {
        if self.n != other.n {
            return false;
        }
        let a = self.basis();
        let b = other.basis();
        a.rank() == b.rank() && other.rows.iter().all(|r| a.contains(&r.to_row()))
    }

    /// Entry `(i, j)` is the symplectic product of rows `i` and `j`.
    pub fn commutation_matrix(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|a| self.rows.iter().map(|b| a.sp(b)).collect())
            .collect()
    }

    /// Half the GF(2) rank of the commutation matrix.
    pub fn symplectic_pair_count(&self) -> usize {
        let m = self.commutation_matrix();
        let mut basis = Gf2Basis::new(self.rows.len().max(1));
        for row in m {
            let mut packed = vec![0u64; self.rows.len().div_ceil(64).max(1)];
            for (j, bit) in row.iter().enumerate() {
                if *bit == 1 {
                    packed[j / 64] |= 1 << (j % 64);
                }
            }
            basis.insert(packed);
        }
        basis.rank() / 2
    }

    /// Symplectic Gram-Schmidt.
    ///
    /// Rows are taken in order. The first later row anticommuting with the
    /// current pivot becomes its partner, and every remaining row is cleaned
    /// against the new pair. A pivot with no partner is isotropic.
    pub fn gram_schmidt(&self) -> Result<SymplecticDecomposition, SymplecticError> {
        if !self.is_independent() {
            return Err(SymplecticError::DependentRows);
        }
        let mut rest: Vec<PauliOp> = self.rows.clone();
        let mut pairs = Vec::new();
        let mut isotropic = Vec::new();
        while !rest.is_empty() {
            let g = rest.remove(0);
            match rest.iter().position(|r| r.sp(&g) == 1) {
                None => isotropic.push(g),
                Some(j) => {
                    let h = rest.remove(j);
                    for r in rest.iter_mut() {
                        let with_h = r.sp(&h);
                        let with_g = r.sp(&g);
                        if with_h == 1 {
                            r.mul_assign_unchecked(&g);
                        }
                        if with_g == 1 {
                            r.mul_assign_unchecked(&h);
                        }
                    }
                    pairs.push((g, h));
                }
            }
        }
        Ok(SymplecticDecomposition { pairs, isotropic })
    }

    /// All `2^g` products of generator subsets, identity first, in Gray-code
    /// order.
    pub fn enumerate_group(&self, cap: u64) -> Result<GroupElements, SymplecticError> {
        check_cap(self.rows.len(), cap)?;
        if !self.is_independent() {
            return Err(SymplecticError::DependentRows);
        }
        Ok(GroupElements {
            gens: self.rows.clone(),
            current: PauliOp::identity(self.n.max(1)),
            index: 0,
            total: 1u64 << self.rows.len(),
        })
    }
}

pub(crate) fn check_cap(generators: usize, cap: u64) -> Result<(), SymplecticError> {
    if generators >= 64 || (1u64 << generators) > cap {
        Err(SymplecticError::CapExceeded { generators, cap })
    } else {
        Ok(())
    }
}

/// Walks a group in Gray-code order, calling `f` with the element and the
/// Gray code of the generator subset that produced it.
pub(crate) fn for_each_element(gens: &[PauliOp], n: usize, mut f: impl FnMut(&PauliOp, u64) -> bool) {
    let mut current = PauliOp::identity(n);
    let total = 1u64 << gens.len();
    if !f(&current, 0) {
        return;
    }
    for i in 1..total {
        current.mul_assign_unchecked(&gens[i.trailing_zeros() as usize]);
        if !f(&current, i ^ (i >> 1)) {
            return;
        }
    }
}

/// Iterator returned by [`SymplecticMatrix::enumerate_group`].
#[derive(Debug, Clone)]
pub struct GroupElements {
    gens: Vec<PauliOp>,
    current: PauliOp,
    index: u64,
    total: u64,
}

impl Iterator for GroupElements {
    type Item = PauliOp;

    fn next(&mut self) -> Option<PauliOp> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let g = &self.gens[self.index.trailing_zeros() as usize];
            self.current.mul_assign_unchecked(g);
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GroupElements {}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymplecticMatrix(n={}, [{self}])", self.n)
    }
}
