//! Entanglement-assisted repetition and accumulator codes, their encoders,
//! the two code extensions, and the exhaustive nonexistence searches.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::circuit::CliffordCircuit;
use crate::code::EaqecCode;
use crate::error::{CodeError, ConstructionError};
use crate::pauli::{Pauli, PauliOp};
use crate::symplectic::SymplecticMatrix;

fn op(s: &str) -> PauliOp {
    s.parse().expect("constructed from I/X/Y/Z letters")
}

/// `p` on qubits `a` and `a + 1` of `n`.
fn pair_on(n: usize, a: usize, p: Pauli) -> PauliOp {
    let mut o = PauliOp::identity(n);
    o.set(a, p);
    o.set(a + 1, p);
    o
}

fn matrix(n: usize, rows: Vec<PauliOp>) -> SymplecticMatrix {
    SymplecticMatrix::new(n, rows).expect("rows built with n qubits")
}

/// The `[[n,1,n;n-1]]` repetition code for odd `n >= 3`.
///
/// ```
/// use eaqec::constructions::repetition_code_odd;
///
/// let code = repetition_code_odd(5).unwrap();
/// assert_eq!(code.distance().unwrap(), 5);
/// ```
pub fn repetition_code_odd(n: usize) -> Result<EaqecCode, ConstructionError> {
    if n < 3 || n % 2 == 0 {
        return Err(ConstructionError::Length {
            family: "odd repetition",
            requirement: "odd n >= 3",
            n,
        });
    }
    let mut stab: Vec<PauliOp> = (0..n - 1).map(|a| pair_on(n, a, Pauli::Z)).collect();
    stab.extend((0..n - 1).map(|a| pair_on(n, a, Pauli::X)));
    let logical = vec![op(&"X".repeat(n)), op(&"Z".repeat(n))];
    Ok(EaqecCode::new_valid(n, 1, n - 1, matrix(n, stab), matrix(n, logical))?)
}

/// The `[[n,1,n-1;n-1]]` repetition code for even `n >= 4`.
///
/// Z-type generators: `ZZ` on neighbouring qubits `0..n-1` and `Z` on every
/// qubit but the first. X-type generators: `XX` on neighbouring qubits
/// `1..n` and `X` on every qubit. Logical operators: `X^(n-1) I` and `Z^n`.
pub fn repetition_code_even(n: usize) -> Result<EaqecCode, ConstructionError> {
    if n < 4 || n % 2 == 1 {
        return Err(ConstructionError::Length {
            family: "even repetition",
            requirement: "even n >= 4",
            n,
        });
    }
    let mut stab: Vec<PauliOp> = (0..n - 2).map(|a| pair_on(n, a, Pauli::Z)).collect();
    stab.push(op(&format!("I{}", "Z".repeat(n - 1))));
    stab.extend((1..n - 1).map(|a| pair_on(n, a, Pauli::X)));
    stab.push(op(&"X".repeat(n)));
    let logical = vec![op(&format!("{}I", "X".repeat(n - 1))), op(&"Z".repeat(n))];
    Ok(EaqecCode::new_valid(n, 1, n - 1, matrix(n, stab), matrix(n, logical))?)
}

/// Repetition code of either parity.
pub fn repetition_code(n: usize) -> Result<EaqecCode, ConstructionError> {
    if n % 2 == 1 {
        repetition_code_odd(n)
    } else {
        repetition_code_even(n)
    }
}

/// The dual of the repetition code: `[[n,n-1,2;1]]` for odd `n`,
/// `[[n,n-1,1;1]]` for even `n`.
pub fn accumulator_code(n: usize) -> Result<EaqecCode, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::Length {
            family: "accumulator",
            requirement: "n >= 3",
            n,
        });
    }
    Ok(repetition_code(n)?.dual()?)
}

/// CNOT cascade encoding the repetition code. Qubit 0 carries the
/// information; qubits `1..n` are the sender's halves of the ebits.
///
/// For odd `n` the cascade repeats `CNOT(a, a+2) CNOT(a+1, a) CNOT(a+2, a+1)`
/// for `a = 0, 2, ..., n-3`. For even `n` it is the cascade for `n + 1` with
/// the gates touching the last qubit removed.
///
/// ```
/// use eaqec::constructions::repetition_encoder_circuit;
/// use eaqec::PauliOp;
///
/// let circ = repetition_encoder_circuit(5).unwrap();
/// let x: PauliOp = "XIIII".parse().unwrap();
/// assert_eq!(circ.conjugate(&x).unwrap().to_string(), "XXXXX");
/// ```
pub fn repetition_encoder_circuit(n: usize) -> Result<CliffordCircuit, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::Length {
            family: "repetition encoder",
            requirement: "n >= 3",
            n,
        });
    }
    let span = if n % 2 == 1 { n } else { n + 1 };
    let mut circ = CliffordCircuit::new(n);
    for a in (0..span - 2).step_by(2) {
        for (c, t) in [(a, a + 2), (a + 1, a), (a + 2, a + 1)] {
            if c < n && t < n {
                circ.cnot(c, t).expect("indices checked");
            }
        }
    }
    Ok(circ)
}

/// Images of the unencoded inputs: `(X_0, Z_0)` become the logical rows and
/// `X_i, Z_i` for `i >= 1` the stabilizer rows.
pub fn encoder_images(circ: &CliffordCircuit) -> (SymplecticMatrix, SymplecticMatrix) {
    let n = circ.num_qubits();
    let image = |q: usize, p: Pauli| {
        circ.conjugate(&PauliOp::single(n, q, p))
            .expect("input has the circuit's width")
    };
    let logical = vec![image(0, Pauli::X), image(0, Pauli::Z)];
    let stab = (1..n).flat_map(|q| [image(q, Pauli::X), image(q, Pauli::Z)]).collect();
    (matrix(n, logical), matrix(n, stab))
}

/// `[[n,k,d;c]]` to `[[n+1,k,>=d;c+1]]`: appends a qubit and the pair
/// `X`, `Z` acting on it.
pub fn extend_add_ebit(code: &EaqecCode) -> Result<EaqecCode, ConstructionError> {
    code.require_valid()?;
    let n = code.n();
    let widen = |p: &PauliOp| {
        let mut q = PauliOp::identity(n + 1);
        for i in 0..n {
            q.set(i, p.get(i));
        }
        q
    };
    let mut stab = vec![
        PauliOp::single(n + 1, n, Pauli::Z),
        PauliOp::single(n + 1, n, Pauli::X),
    ];
    stab.extend(code.stabilizer().rows().iter().map(widen));
    let logical = code.logical().rows().iter().map(widen).collect();
    Ok(EaqecCode::new_valid(
        n + 1,
        code.k(),
        code.c() + 1,
        matrix(n + 1, stab),
        matrix(n + 1, logical),
    )?)
}

/// `[[n,k,d;c]]` to `[[n,k-1,>=d;c+1]]`: logical pair `pair_index` joins
/// the stabilizer.
pub fn demote_logical_to_ebit(code: &EaqecCode, pair_index: usize) -> Result<EaqecCode, ConstructionError> {
    code.require_valid()?;
    if pair_index >= code.k() {
        return Err(CodeError::PairIndex {
            index: pair_index,
            k: code.k(),
        }
        .into());
    }
    let rows = code.logical().rows();
    let mut stab = code.stabilizer().rows().to_vec();
    stab.extend_from_slice(&rows[2 * pair_index..2 * pair_index + 2]);
    let logical = rows
        .iter()
        .enumerate()
        .filter(|(i, _)| i / 2 != pair_index)
        .map(|(_, p)| p.clone())
        .collect();
    Ok(EaqecCode::new_valid(
        code.n(),
        code.k() - 1,
        code.c() + 1,
        matrix(code.n(), stab),
        matrix(code.n(), logical),
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `[[n,1,n;n-1]]`: a two-row logical matrix.
    Repetition,
    /// `[[n,n-1,2;1]]`: a two-row check matrix.
    Accumulator,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Repetition => "repetition",
            Family::Accumulator => "accumulator",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Family, String> {
        match s.to_ascii_lowercase().as_str() {
            "repetition" | "rep" => Ok(Family::Repetition),
            "accumulator" | "acc" => Ok(Family::Accumulator),
            _ => Err(format!("unknown family {s:?} (expected repetition or accumulator)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonexistenceResult {
    pub n: usize,
    pub family: Family,
    pub exists: bool,
    /// Row pairs with symplectic product 1 that were examined.
    pub candidates_checked: u64,
    /// The first surviving pair, if any.
    pub witness: Option<(PauliOp, PauliOp)>,
}

impl fmt::Display for NonexistenceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} family={} exists={} candidates_checked={}",
            self.n, self.family, self.exists, self.candidates_checked
        )?;
        if let Some((a, b)) = &self.witness {
            write!(f, " witness={a},{b}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest `n` searched.
    pub cap: usize,
    /// Allow odd `n`, where codes of both families do exist.
    pub allow_odd: bool,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            cap: 6,
            allow_odd: false,
        }
    }
}

fn to_op(n: usize, x: u32, z: u32) -> PauliOp {
    let xs: Vec<bool> = (0..n).map(|i| x >> i & 1 == 1).collect();
    let zs: Vec<bool> = (0..n).map(|i| z >> i & 1 == 1).collect();
    PauliOp::from_bits(&xs, &zs).expect("n >= 1")
}

/// Exhaustive search for a two-row matrix `(u1|v1), (u2|v2)` with
/// symplectic product 1 meeting the family's distance requirement.
///
/// For [`Family::Repetition`] the matrix is the logical matrix and all three
/// nontrivial products must have full support. For [`Family::Accumulator`]
/// it is the check matrix, and every single-qubit `X`, `Z` and `Y` error
/// must anticommute with some row. Either way no row can have an identity
/// position, so the first row is taken as `X^a Y^b Z^c` up to qubit
/// permutation, and the second row ranges over all `4^n` operators.
///
/// ```
/// use eaqec::constructions::{nonexistence_search, Family};
///
/// let r = nonexistence_search(4, Family::Repetition).unwrap();
/// assert!(!r.exists);
/// ```
pub fn nonexistence_search(n: usize, family: Family) -> Result<NonexistenceResult, ConstructionError> {
    nonexistence_search_with(n, family, SearchOptions::default())
}

pub fn nonexistence_search_with(
    n: usize,
    family: Family,
    options: SearchOptions,
) -> Result<NonexistenceResult, ConstructionError> {
    if n % 2 == 1 && !options.allow_odd {
        return Err(ConstructionError::OddLength(n));
    }
    if n == 0 || n > options.cap || n > 12 {
        return Err(ConstructionError::CapExceeded {
            n,
            cap: options.cap.min(12),
        });
    }
    let full = (1u32 << n) - 1;
    let mut shapes = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            shapes.push((a, b));
        }
    }
    let per_shape: Vec<(u64, Option<(u32, u32, u32, u32)>)> = shapes
        .par_iter()
        .map(|&(a, b)| {
            // X on [0, a), Y on [a, a+b), Z on the rest.
            let x1 = (1u32 << (a + b)) - 1;
            let z1 = full & !((1u32 << a) - 1);
            let mut count = 0u64;
            let mut found = None;
            for x2 in 0..=full {
                for z2 in 0..=full {
                    if ((x1 & z2) ^ (z1 & x2)).count_ones() % 2 == 0 {
                        continue;
                    }
                    count += 1;
                    let ok = match family {
                        Family::Repetition => (x2 | z2) == full && ((x1 ^ x2) | (z1 ^ z2)) == full,
                        Family::Accumulator => {
                            (x1 | x2) == full && (z1 | z2) == full && ((x1 ^ z1) | (x2 ^ z2)) == full
                        }
                    };
                    if ok && found.is_none() {
                        found = Some((x1, z1, x2, z2));
                    }
                }
            }
            (count, found)
        })
        .collect();
    let candidates_checked = per_shape.iter().map(|(c, _)| c).sum();
    let witness = per_shape
        .iter()
        .find_map(|(_, w)| *w)
        .map(|(x1, z1, x2, z2)| (to_op(n, x1, z1), to_op(n, x2, z2)));
    Ok(NonexistenceResult {
        n,
        family,
        exists: witness.is_some(),
        candidates_checked,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::GroupKind;

    fn coeffs(code: &EaqecCode, g: GroupKind) -> Vec<u64> {
        code.enumerator(g)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn odd_repetition() {
        let c3 = repetition_code_odd(3).unwrap();
        assert_eq!(c3.distance().unwrap(), 3);
        assert_eq!(coeffs(&c3, GroupKind::Stabilizer), vec![1, 0, 9, 6]);
        let c5 = repetition_code_odd(5).unwrap();
        assert_eq!(coeffs(&c5, GroupKind::Stabilizer), vec![1, 0, 30, 60, 105, 60]);
        let c9 = repetition_code_odd(9).unwrap();
        assert_eq!(coeffs(&c9, GroupKind::Logical), vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 3]);
        assert!(repetition_code_odd(4).is_err());
        assert!(repetition_code_odd(1).is_err());
    }

    #[test]
    fn even_repetition() {
        let c4 = repetition_code_even(4).unwrap();
        assert_eq!(c4.validate().derived_c, 3);
        assert_eq!(c4.distance().unwrap(), 3);
        assert_eq!(coeffs(&c4, GroupKind::Stabilizer), vec![1, 1, 15, 27, 20]);
        let c6 = repetition_code_even(6).unwrap();
        assert_eq!(c6.stabilizer().symplectic_pair_count(), 5);
        assert_eq!(coeffs(&c6, GroupKind::Logical), vec![1, 0, 0, 0, 0, 1, 2]);
        assert!(repetition_code_even(5).is_err());
        assert!(repetition_code_even(2).is_err());
    }

    #[test]
    fn accumulators() {
        let a5 = accumulator_code(5).unwrap();
        assert_eq!((a5.n(), a5.k(), a5.c()), (5, 4, 1));
        assert_eq!(a5.distance().unwrap(), 2);
        let a4 = accumulator_code(4).unwrap();
        assert_eq!((a4.n(), a4.k(), a4.c()), (4, 3, 1));
        assert_eq!(a4.distance().unwrap(), 1);
        for n in 3..=8 {
            let back = accumulator_code(n).unwrap().dual().unwrap();
            let rep = repetition_code(n).unwrap();
            assert!(back.stabilizer().same_span(rep.stabilizer()));
            assert!(back.logical().same_span(rep.logical()));
        }
    }

    #[test]
    fn five_qubit_encoder_tables() {
        let circ = repetition_encoder_circuit(5).unwrap();
        let (logical, stab) = encoder_images(&circ);
        let names: Vec<String> = logical.rows().iter().chain(stab.rows()).map(|p| p.to_string()).collect();
        assert_eq!(
            names,
            ["XXXXX", "ZZZZZ", "XXIII", "IZZZZ", "IXXXX", "ZZIII", "IIXXI", "IIIZZ", "IIIXX", "IIZZI"]
        );
        let code = repetition_code_odd(5).unwrap();
        assert!(stab.same_span(code.stabilizer()));
        assert!(logical.same_span(code.logical()));
    }

    #[test]
    fn encoders_span_constructed_codes() {
        for n in 3..=9 {
            let (logical, stab) = encoder_images(&repetition_encoder_circuit(n).unwrap());
            let code = repetition_code(n).unwrap();
            assert!(stab.same_span(code.stabilizer()), "n={n}");
            assert!(logical.same_span(code.logical()), "n={n}");
        }
    }

    #[test]
    fn extensions() {
        let c3 = repetition_code_odd(3).unwrap();
        let e = extend_add_ebit(&c3).unwrap();
        assert_eq!((e.n(), e.k(), e.c()), (4, 1, 3));
        assert_eq!(e.validate().derived_c, c3.validate().derived_c + 1);
        assert!(e.distance().unwrap() >= 3);

        let d = demote_logical_to_ebit(&c3, 0).unwrap();
        assert_eq!((d.n(), d.k(), d.c()), (3, 0, 3));
        assert!(matches!(d.distance(), Err(CodeError::DistanceUndefined)));
        assert!(demote_logical_to_ebit(&d, 0).is_err());

        let a5 = accumulator_code(5).unwrap();
        for i in 0..4 {
            let d = demote_logical_to_ebit(&a5, i).unwrap();
            assert_eq!((d.k(), d.c()), (3, 2));
            assert!(d.distance().unwrap() >= 2);
        }
        assert!(demote_logical_to_ebit(&a5, 4).is_err());
    }

    #[test]
    fn nonexistence() {
        for family in [Family::Repetition, Family::Accumulator] {
            let r = nonexistence_search(4, family).unwrap();
            assert!(!r.exists, "{r}");
            assert!(r.candidates_checked > 0);
            let r = nonexistence_search_with(
                3,
                family,
                SearchOptions {
                    cap: 6,
                    allow_odd: true,
                },
            )
            .unwrap();
            assert!(r.exists, "{r}");
        }
        assert!(matches!(
            nonexistence_search(5, Family::Repetition),
            Err(ConstructionError::OddLength(5))
        ));
        assert!(matches!(
            nonexistence_search(8, Family::Repetition),
            Err(ConstructionError::CapExceeded { .. })
        ));
    }
}
