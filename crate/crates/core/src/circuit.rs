//! CNOT-only Clifford circuits and Pauli conjugation through them.

use std::fmt;
use std::str::FromStr;

use crate::error::SymplecticError;
use crate::pauli::{Pauli, PauliOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cnot {
    pub control: usize,
    pub target: usize,
}

/// An ordered list of CNOT gates on `n` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<Cnot>,
}

impl CliffordCircuit {
    pub fn new(n: usize) -> CliffordCircuit {
        CliffordCircuit { n, gates: Vec::new() }
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self, SymplecticError> {
        for index in [control, target] {
            if index >= self.n {
                return Err(SymplecticError::IndexOutOfRange { index, n: self.n });
            }
        }
        if control == target {
            return Err(SymplecticError::SelfLoop(control));
        }
        self.gates.push(Cnot { control, target });
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Cnot] {
        &self.gates
    }

    /// Image of `p` under conjugation by the whole circuit, gates applied in
    /// order. `X_c -> X_c X_t` and `Z_t -> Z_c Z_t`.
    pub fn conjugate(&self, p: &PauliOp) -> Result<PauliOp, SymplecticError> {
        if p.num_qubits() != self.n {
            return Err(crate::error::PauliError::LengthMismatch {
                left: self.n,
                right: p.num_qubits(),
            }
            .into());
        }
        let mut out = p.clone();
        for g in &self.gates {
            let (xc, zc) = out.get(g.control).bits();
            let (xt, zt) = out.get(g.target).bits();
            out.set(g.target, Pauli::from_bits(xt ^ xc, zt));
            out.set(g.control, Pauli::from_bits(xc, zc ^ zt));
        }
        Ok(out)
    }
}

impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            writeln!(f, "CNOT {} {}", g.control, g.target)?;
        }
        Ok(())
    }
}

/// Parses `CNOT <control> <target>` lines; the qubit count is one more than
/// the largest index used. Blank lines and `#` comments are skipped.
impl FromStr for CliffordCircuit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut gates = Vec::new();
        for (no, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["CNOT", c, t] => {
                    let c: usize = c.parse().map_err(|_| format!("line {}: bad control", no + 1))?;
                    let t: usize = t.parse().map_err(|_| format!("line {}: bad target", no + 1))?;
                    gates.push((c, t));
                }
                _ => return Err(format!("line {}: expected `CNOT <control> <target>`", no + 1)),
            }
        }
        let n = gates.iter().map(|&(c, t)| c.max(t) + 1).max().unwrap_or(0);
        let mut circ = CliffordCircuit::new(n);
        for (c, t) in gates {
            circ.cnot(c, t).map_err(|e| e.to_string())?;
        }
        Ok(circ)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn single_gate_rules() {
        let mut c = CliffordCircuit::new(2);
        c.cnot(0, 1).unwrap();
        assert_eq!(c.conjugate(&p("XI")).unwrap(), p("XX"));
        assert_eq!(c.conjugate(&p("IX")).unwrap(), p("IX"));
        assert_eq!(c.conjugate(&p("IZ")).unwrap(), p("ZZ"));
        assert_eq!(c.conjugate(&p("ZI")).unwrap(), p("ZI"));
        assert_eq!(c.conjugate(&p("YI")).unwrap(), p("YX"));
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = CliffordCircuit::new(3);
        assert_eq!(c.conjugate(&p("XYZ")).unwrap(), p("XYZ"));
    }

    #[test]
    fn bad_gates() {
        let mut c = CliffordCircuit::new(2);
        assert!(c.cnot(0, 2).is_err());
        assert!(c.cnot(1, 1).is_err());
        assert!(c.conjugate(&p("XXX")).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut c = CliffordCircuit::new(3);
        c.cnot(0, 2).unwrap().cnot(1, 0).unwrap();
        let back: CliffordCircuit = c.to_string().parse().unwrap();
        assert_eq!(back, c);
    }
}
