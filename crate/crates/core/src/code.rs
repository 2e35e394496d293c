//! Entanglement-assisted stabilizer codes `[[n,k,d;c]]`.
//!
//! A code is described by its simplified stabilizer generators (the
//! sender-side halves of the stabilizer, `n - k + c` rows made of `c`
//! anticommuting pairs and `n - k - c` isotropic rows) and `2k` logical
//! generators.

use std::fmt;
use std::str::FromStr;

use crate::error::{CodeError, ParseError};
use crate::pauli::PauliOp;
use crate::symplectic::{check_cap, for_each_element, SymplecticMatrix, DEFAULT_ENUMERATION_CAP};

/// The four groups whose weight enumerators the MacWilliams identity relates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `S_I`, the isotropic subgroup (enumerator `C`).
    Isotropic,
    /// `S' = S_S x S_I`, the simplified stabilizer group (enumerator `A`).
    Stabilizer,
    /// `L x S_I` (enumerator `B`).
    Logical,
    /// `L x S_S x S_I`, the whole normalizer (enumerator `D`).
    Normalizer,
}

impl GroupKind {
    pub const ALL: [GroupKind; 4] = [
        GroupKind::Isotropic,
        GroupKind::Stabilizer,
        GroupKind::Logical,
        GroupKind::Normalizer,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GroupKind::Isotropic => "isotropic",
            GroupKind::Stabilizer => "stabilizer",
            GroupKind::Logical => "logical",
            GroupKind::Normalizer => "normalizer",
        }
    }
}

impl FromStr for GroupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "isotropic" | "C" => Ok(GroupKind::Isotropic),
            "stabilizer" | "A" => Ok(GroupKind::Stabilizer),
            "logical" | "B" => Ok(GroupKind::Logical),
            "normalizer" | "D" => Ok(GroupKind::Normalizer),
            _ => Err(format!(
                "unknown group {s:?}; expected stabilizer, logical, isotropic or normalizer"
            )),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A named invariant a code fails to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    StabilizerAndLogicalDependent { rank: usize, expected: usize },
    PairCount { expected: usize, found: usize },
    LogicalAnticommutes { stabilizer_row: usize, logical_row: usize },
    LogicalNotSymplectic { pairs: usize, isotropic: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StabilizerAndLogicalDependent { rank, expected } => write!(
                f,
                "stabilizer and logical rows are dependent (rank {rank}, expected {expected})"
            ),
            Violation::PairCount { expected, found } => {
                write!(f, "stabilizer has {found} symplectic pairs, expected c = {expected}")
            }
            Violation::LogicalAnticommutes {
                stabilizer_row,
                logical_row,
            } => write!(
                f,
                "logical row {logical_row} anticommutes with stabilizer row {stabilizer_row}"
            ),
            Violation::LogicalNotSymplectic { pairs, isotropic } => write!(
                f,
                "logical rows form {pairs} pairs and {isotropic} isotropic generators"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub derived_c: usize,
    pub failures: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            write!(f, "valid (c = {})", self.derived_c)
        } else {
            let msgs: Vec<String> = self.failures.iter().map(|v| v.to_string()).collect();
            write!(f, "invalid: {}", msgs.join("; "))
        }
    }
}

/// An `[[n,k;c]]` entanglement-assisted code.
///
/// ```
/// use eaqec::EaqecCode;
///
/// let code: EaqecCode = "n=3 k=1 c=2\nS: ZZI IZZ XXI IXX\nL: XXX ZZZ\n".parse().unwrap();
/// assert!(code.validate().valid);
/// assert_eq!(code.distance().unwrap(), 3);
/// let acc = code.dual().unwrap();
/// assert_eq!((acc.n(), acc.k(), acc.c()), (3, 2, 1));
/// assert_eq!(acc.distance().unwrap(), 2);
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EaqecCode {
    n: usize,
    k: usize,
    c: usize,
    stabilizer: SymplecticMatrix,
    logical: SymplecticMatrix,
}

fn canonical(m: SymplecticMatrix) -> SymplecticMatrix {
    match m.gram_schmidt() {
        Ok(d) => SymplecticMatrix::new(m.num_qubits(), d.rows()).expect("same qubit count"),
        Err(_) => m,
    }
}

impl EaqecCode {
    /// Checks shapes and stores both generator sets in Gram-Schmidt order.
    /// Group-structure invariants are left to [`EaqecCode::validate`].
    pub fn new(
        n: usize,
        k: usize,
        c: usize,
        stabilizer: SymplecticMatrix,
        logical: SymplecticMatrix,
    ) -> Result<EaqecCode, CodeError> {
        if n == 0 || k + c > n {
            return Err(ParseError::Parameters { n, k, c }.into());
        }
        for (section, m, expected) in [
            ("S", &stabilizer, n - k + c),
            ("L", &logical, 2 * k),
        ] {
            if m.len() != expected {
                return Err(ParseError::RowCount {
                    section,
                    expected,
                    found: m.len(),
                }
                .into());
            }
            if m.num_qubits() != n {
                return Err(ParseError::RowLength {
                    section,
                    row: 0,
                    expected: n,
                    found: m.num_qubits(),
                }
                .into());
            }
        }
        Ok(EaqecCode {
            n,
            k,
            c,
            stabilizer: canonical(stabilizer),
            logical: canonical(logical),
        })
    }

    /// Builds a code and rejects it unless it validates.
    pub fn new_valid(
        n: usize,
        k: usize,
        c: usize,
        stabilizer: SymplecticMatrix,
        logical: SymplecticMatrix,
    ) -> Result<EaqecCode, CodeError> {
        let code = EaqecCode::new(n, k, c, stabilizer, logical)?;
        code.require_valid()?;
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn stabilizer(&self) -> &SymplecticMatrix {
        &self.stabilizer
    }

    pub fn logical(&self) -> &SymplecticMatrix {
        &self.logical
    }

    pub fn is_maximal(&self) -> bool {
        self.c == self.n - self.k
    }

    /// The `2c` symplectic-pair rows of the stabilizer, `g_1, h_1, ...`.
    pub fn symplectic_rows(&self) -> &[PauliOp] {
        &self.stabilizer.rows()[..2 * self.c.min(self.stabilizer.len() / 2)]
    }

    /// The `n - k - c` isotropic stabilizer rows.
    pub fn isotropic_rows(&self) -> &[PauliOp] {
        &self.stabilizer.rows()[2 * self.c.min(self.stabilizer.len() / 2)..]
    }

    /// Generators of one of the four groups.
    pub fn generators(&self, group: GroupKind) -> SymplecticMatrix {
        let mut rows: Vec<PauliOp> = Vec::new();
        match group {
            GroupKind::Isotropic => rows.extend_from_slice(self.isotropic_rows()),
            GroupKind::Stabilizer => rows.extend_from_slice(self.stabilizer.rows()),
            GroupKind::Logical => {
                rows.extend_from_slice(self.logical.rows());
                rows.extend_from_slice(self.isotropic_rows());
            }
            GroupKind::Normalizer => {
                rows.extend_from_slice(self.logical.rows());
                rows.extend_from_slice(self.stabilizer.rows());
            }
        }
        SymplecticMatrix::new(self.n, rows).expect("rows share n")
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let derived_c = self.stabilizer.symplectic_pair_count();

        let joint = self.stabilizer.stacked(&self.logical).expect("rows share n");
        let rank = joint.gf2_rank();
        if rank != joint.len() {
            failures.push(Violation::StabilizerAndLogicalDependent {
                rank,
                expected: joint.len(),
            });
        }
        if derived_c != self.c {
            failures.push(Violation::PairCount {
                expected: self.c,
                found: derived_c,
            });
        }
        'outer: for (i, s) in self.stabilizer.rows().iter().enumerate() {
            for (j, l) in self.logical.rows().iter().enumerate() {
                if s.sp(l) == 1 {
                    failures.push(Violation::LogicalAnticommutes {
                        stabilizer_row: i,
                        logical_row: j,
                    });
                    break 'outer;
                }
            }
        }
        match self.logical.gram_schmidt() {
            Ok(d) if d.pairs.len() == self.k && d.isotropic.is_empty() => {}
            Ok(d) => failures.push(Violation::LogicalNotSymplectic {
                pairs: d.pairs.len(),
                isotropic: d.isotropic.len(),
            }),
            // Dependent logical rows already failed the joint rank check.
            Err(_) => {}
        }
        ValidationReport {
            valid: failures.is_empty(),
            derived_c,
            failures,
        }
    }

    pub(crate) fn require_valid(&self) -> Result<(), CodeError> {
        let report = self.validate();
        if report.valid {
            Ok(())
        } else {
            Err(CodeError::Invalid(report.to_string()))
        }
    }

    /// The `[[n,c;k]]` dual: logical rows and isotropic rows become the
    /// stabilizer, the stabilizer's symplectic pairs become the logical rows.
    pub fn dual(&self) -> Result<EaqecCode, CodeError> {
        self.require_valid()?;
        let mut stab: Vec<PauliOp> = self.logical.rows().to_vec();
        stab.extend_from_slice(self.isotropic_rows());
        let logical = self.symplectic_rows().to_vec();
        EaqecCode::new(
            self.n,
            self.c,
            self.k,
            SymplecticMatrix::new(self.n, stab)?,
            SymplecticMatrix::new(self.n, logical)?,
        )
    }

    /// Minimum weight over `(L x S_I) \ S_I` with the default enumeration cap.
    pub fn distance(&self) -> Result<usize, CodeError> {
        self.distance_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn distance_with_cap(&self, cap: u64) -> Result<usize, CodeError> {
        self.require_valid()?;
        if self.k == 0 {
            return Err(CodeError::DistanceUndefined);
        }
        let gens = self.generators(GroupKind::Logical);
        check_cap(gens.len(), cap)?;
        let logical_mask = (1u64 << (2 * self.k)) - 1;
        let mut best = usize::MAX;
        for_each_element(gens.rows(), self.n, |p, subset| {
            if subset & logical_mask != 0 {
                best = best.min(p.weight());
            }
            best > 1
        });
        Ok(best)
    }
}

/// Parses the text code format:
///
/// ```text
/// # comment
/// n=3 k=1 c=2
/// S: ZZI IZZ XXI IXX
/// L: XXX ZZZ
/// ```
pub fn parse_code(text: &str) -> Result<EaqecCode, CodeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(ParseError::MalformedHeader { line: 1 })?;
    let (n, k, c) = parse_header(header).ok_or(ParseError::MalformedHeader { line: hline })?;
    if n == 0 || k + c > n {
        return Err(ParseError::Parameters { n, k, c }.into());
    }
    let stabilizer = parse_section(&mut lines, "S", n, n - k + c, hline + 1)?;
    let logical = parse_section(&mut lines, "L", n, 2 * k, hline + 2)?;
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::Trailing { line }.into());
    }
    EaqecCode::new(n, k, c, stabilizer, logical)
}

fn parse_header(line: &str) -> Option<(usize, usize, usize)> {
    let (mut n, mut k, mut c) = (None, None, None);
    for tok in line.split_whitespace() {
        let (key, val) = tok.split_once('=')?;
        let val: usize = val.parse().ok()?;
        let slot = match key {
            "n" => &mut n,
            "k" => &mut k,
            "c" => &mut c,
            _ => return None,
        };
        if slot.replace(val).is_some() {
            return None;
        }
    }
    Some((n?, k?, c?))
}

fn parse_section<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    section: &'static str,
    n: usize,
    expected: usize,
    fallback_line: usize,
) -> Result<SymplecticMatrix, ParseError> {
    let (line, text) = lines.next().ok_or(ParseError::MissingSection {
        line: fallback_line,
        expected: section,
    })?;
    let body = text
        .strip_prefix(section)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or(ParseError::MissingSection {
            line,
            expected: section,
        })?;
    let mut rows = Vec::new();
    for (i, tok) in body.split_whitespace().enumerate() {
        let p: PauliOp = tok.parse().map_err(|source| ParseError::Pauli {
            section,
            row: i,
            source,
        })?;
        if p.num_qubits() != n {
            return Err(ParseError::RowLength {
                section,
                row: i,
                expected: n,
                found: p.num_qubits(),
            });
        }
        rows.push(p);
    }
    if rows.len() != expected {
        return Err(ParseError::RowCount {
            section,
            expected,
            found: rows.len(),
        });
    }
    Ok(SymplecticMatrix::new(n, rows).expect("lengths checked"))
}

/// Canonical text form; `parse_code(&serialize_code(c)) == c`.
pub fn serialize_code(code: &EaqecCode) -> String {
    code.to_string()
}

impl fmt::Display for EaqecCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} k={} c={}", self.n, self.k, self.c)?;
        if self.stabilizer.is_empty() {
            writeln!(f, "S:")?;
        } else {
            writeln!(f, "S: {}", self.stabilizer)?;
        }
        if self.logical.is_empty() {
            writeln!(f, "L:")
        } else {
            writeln!(f, "L: {}", self.logical)
        }
    }
}

impl FromStr for EaqecCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_code(s)
    }
}
