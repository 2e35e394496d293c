//! Pauli operators on `n` qubits as binary symplectic vectors `(x|z)`.
//!
//! Phases are dropped: `XZ` and `ZX` are the same operator `Y` here, which is
//! all that weights, commutation and enumerators ever look at.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::PauliError;

const WORD: usize = 64;

/// A single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(ch: char) -> Option<Pauli> {
        match ch {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// An `n`-qubit Pauli operator up to phase.
///
/// Bits are packed into 64-bit words; qubit `i` lives in word `i / 64`, bit
/// `i % 64`. Qubit 0 is the leftmost character of the text form.
///
/// ```
/// use eaqec::PauliOp;
///
/// let p: PauliOp = "XYIZ".parse().unwrap();
/// assert_eq!(p.weight(), 3);
/// let q: PauliOp = "ZZZZ".parse().unwrap();
/// assert_eq!(p.symplectic_product(&q).unwrap(), 0);
/// assert_eq!(p.multiply(&q).unwrap().to_string(), "YXZI");
/// ```
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

impl PauliOp {
    /// The identity on `n` qubits.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn identity(n: usize) -> PauliOp {
        assert!(n >= 1, "a Pauli operator needs at least one qubit");
        PauliOp {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
        }
    }

    /// The operator with letter `p` on `qubit` and identity elsewhere.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> PauliOp {
        let mut op = PauliOp::identity(n);
        op.set(qubit, p);
        op
    }

    /// Builds an operator from explicit bit vectors.
    pub fn from_bits(x: &[bool], z: &[bool]) -> Result<PauliOp, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        if x.is_empty() {
            return Err(PauliError::Empty);
        }
        let mut op = PauliOp::identity(x.len());
        for i in 0..x.len() {
            op.set(i, Pauli::from_bits(x[i], z[i]));
        }
        Ok(op)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, i: usize) -> bool {
        assert!(i < self.n, "qubit {i} out of range for n={}", self.n);
        (self.x[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn z_bit(&self, i: usize) -> bool {
        assert!(i < self.n, "qubit {i} out of range for n={}", self.n);
        (self.z[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn get(&self, i: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(i), self.z_bit(i))
    }

    pub fn set(&mut self, i: usize, p: Pauli) {
        assert!(i < self.n, "qubit {i} out of range for n={}", self.n);
        let (xb, zb) = p.bits();
        let (w, b) = (i / WORD, 1u64 << (i % WORD));
        if xb {
            self.x[w] |= b;
        } else {
            self.x[w] &= !b;
        }
        if zb {
            self.z[w] |= b;
        } else {
            self.z[w] &= !b;
        }
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Number of qubits on which the operator acts nontrivially.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// `x·z' + z·x' mod 2`; zero iff the operators commute.
    pub fn symplectic_product(&self, other: &PauliOp) -> Result<u8, PauliError> {
        self.check_len(other)?;
        Ok(self.sp(other))
    }

    pub fn commutes_with(&self, other: &PauliOp) -> Result<bool, PauliError> {
        Ok(self.symplectic_product(other)? == 0)
    }

    /// Product up to phase.
    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp, PauliError> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn sp(&self, other: &PauliOp) -> u8 {
        debug_assert_eq!(self.n, other.n);
        let mut acc = 0u64;
        for i in 0..self.x.len() {
            acc ^= (self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i]);
        }
        (acc.count_ones() & 1) as u8
    }

    pub(crate) fn mul_assign_unchecked(&mut self, other: &PauliOp) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    fn check_len(&self, other: &PauliOp) -> Result<(), PauliError> {
        if self.n != other.n {
            Err(PauliError::LengthMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// The operator as one `2n`-bit row `x_0..x_{n-1} z_0..z_{n-1}`, packed.
    pub(crate) fn to_row(&self) -> Vec<u64> {
        let mut row = vec![0u64; words_for(2 * self.n)];
        for i in 0..self.n {
            if (self.x[i / WORD] >> (i % WORD)) & 1 == 1 {
                row[i / WORD] |= 1 << (i % WORD);
            }
            if (self.z[i / WORD] >> (i % WORD)) & 1 == 1 {
                let j = self.n + i;
                row[j / WORD] |= 1 << (j % WORD);
            }
        }
        row
    }

    /// Inverse of [`PauliOp::to_row`].
    #[cfg(test)]
    pub(crate) fn from_row(n: usize, row: &[u64]) -> PauliOp {
        let mut op = PauliOp::identity(n);
        for i in 0..n {
            if (row[i / WORD] >> (i % WORD)) & 1 == 1 {
                op.x[i / WORD] |= 1 << (i % WORD);
            }
            let j = n + i;
            if (row[j / WORD] >> (j % WORD)) & 1 == 1 {
                op.z[i / WORD] |= 1 << (i % WORD);
            }
        }
        op
    }

    /// Compares text forms letter by letter with `I < X < Y < Z`.
    pub fn lex_cmp(&self, other: &PauliOp) -> Ordering {
        for i in 0..self.n.min(other.n) {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.n.cmp(&other.n)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.n).map(|i| self.get(i).to_char()).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PauliError::Empty);
        }
        let n = s.chars().count();
        let mut op = PauliOp::identity(n);
        for (i, ch) in s.chars().enumerate() {
            let p = Pauli::from_char(ch).ok_or(PauliError::BadLetter { ch, position: i })?;
            op.set(i, p);
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(p("III").weight(), 0);
        assert_eq!(p("XXX").weight(), 3);
        assert_eq!(p("XYIZ").weight(), 3);
    }

    #[test]
    fn products() {
        assert_eq!(p("X").symplectic_product(&p("Z")).unwrap(), 1);
        assert_eq!(p("XXX").symplectic_product(&p("ZZZ")).unwrap(), 1);
        assert_eq!(p("ZZI").symplectic_product(&p("XXX")).unwrap(), 0);
        assert!(p("XX").symplectic_product(&p("XXX")).is_err());
    }

    #[test]
    fn multiplication() {
        assert!(p("X").multiply(&p("X")).unwrap().is_identity());
        assert_eq!(p("XXI").multiply(&p("IXX")).unwrap(), p("XIX"));
        assert_eq!(p("XXX").multiply(&p("ZZZ")).unwrap(), p("YYY"));
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<PauliOp>().is_err());
        assert!("XQ".parse::<PauliOp>().is_err());
    }

    #[test]
    fn wide_operators_cross_word_boundaries() {
        let n = 130;
        let mut a = PauliOp::identity(n);
        a.set(0, Pauli::X);
        a.set(64, Pauli::Y);
        a.set(129, Pauli::Z);
        assert_eq!(a.weight(), 3);
        let s = a.to_string();
        assert_eq!(s.parse::<PauliOp>().unwrap(), a);
        let row = a.to_row();
        assert_eq!(PauliOp::from_row(n, &row), a);
        let b = PauliOp::single(n, 64, Pauli::Z);
        assert_eq!(a.sp(&b), 1);
    }

    #[test]
    fn lexicographic_order() {
        assert_eq!(p("IX").lex_cmp(&p("XI")), Ordering::Less);
        assert_eq!(p("YI").lex_cmp(&p("XZ")), Ordering::Greater);
        assert_eq!(p("ZZ").lex_cmp(&p("ZZ")), Ordering::Equal);
    }
}
