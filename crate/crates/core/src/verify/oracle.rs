//! Brute-force basis-state oracle.
//!
//! For a fixed computational basis state every `sigma_z` is a number, so the
//! bus follows a plain sequence of displacements. Composing them with
//! `D(b) D(a) = exp(i Im(b conj(a))) D(a + b)` gives the state's phase directly.

use num_complex::Complex;
use rayon::prelude::*;

use super::VerifyError;
use crate::phase_algebra::{OpSequence, Quadrature};

/// Largest register the oracle enumerates unless overridden.
pub const DEFAULT_ORACLE_LIMIT: usize = 20;

/// Diagonal phase per basis state, in units of `pi/8`.
///
/// Bit `q` of the index is qubit `q`; a set bit means `sigma_z = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseFunction {
    qubits: usize,
    values: Vec<i64>,
}

impl PhaseFunction {
    /// Wraps a table; its length must be `2^qubits`.
    pub fn from_table(values: Vec<i64>) -> Result<Self, VerifyError> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(VerifyError::TableSize { len });
        }
        Ok(PhaseFunction {
            qubits: len.trailing_zeros() as usize,
            values,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> i64 {
        self.values[index]
    }
}

/// Bitstring label with qubit 0 first.
pub(crate) fn bit_label(index: usize, qubits: usize) -> String {
    (0..qubits)
        .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Replays `seq` for every basis state of its register.
pub fn oracle_phase_function(seq: &OpSequence, limit: usize) -> Result<PhaseFunction, VerifyError> {
    let q = seq.qubit_count();
    if q > limit || q >= usize::BITS as usize {
        return Err(VerifyError::OracleLimit { qubits: q, limit });
    }
    let amps: Vec<(usize, Complex<i64>)> = seq
        .ops()
        .iter()
        .map(|op| {
            let s = i64::from(op.sign);
            let c = match op.quad {
                Quadrature::Position => Complex::new(s, 0),
                Quadrature::Momentum => Complex::new(0, s),
            };
            (op.qubit, c)
        })
        .collect();
    let rows: Vec<Option<i64>> = (0..1usize << q)
        .into_par_iter()
        .map(|x| {
            let mut alpha = Complex::new(0i64, 0);
            let mut phase = 0i64;
            for &(qubit, c) in &amps {
                let b = if x >> qubit & 1 == 1 { -c } else { c };
                phase += (b * alpha.conj()).im;
                alpha += b;
            }
            (alpha == Complex::new(0, 0)).then_some(phase)
        })
        .collect();
    let mut values = Vec::with_capacity(rows.len());
    for (x, r) in rows.into_iter().enumerate() {
        match r {
            Some(v) => values.push(v),
            None => {
                return Err(VerifyError::ResidualDisplacement {
                    bits: bit_label(x, q),
                })
            }
        }
    }
    Ok(PhaseFunction { qubits: q, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_algebra::{standard, BusOp};

    #[test]
    fn u_cp_table() {
        let f = oracle_phase_function(&standard::u_cp(), 20).unwrap();
        // index bits: q0 is bit 0, so 01 (q0=0, q1=1) is index 2.
        assert_eq!(f.get(0b00), 2);
        assert_eq!(f.get(0b11), 2);
        assert_eq!(f.get(0b01), -2);
        assert_eq!(f.get(0b10), -2);
    }

    #[test]
    fn empty_sequence() {
        let f = oracle_phase_function(&OpSequence::empty(3), 20).unwrap();
        assert!(f.values().iter().all(|&v| v == 0));
        assert_eq!(f.qubits(), 3);
    }

    #[test]
    fn residual_names_bitstring() {
        let s = OpSequence::new(2, vec![BusOp::new(1, Quadrature::Position, 1)]).unwrap();
        assert_eq!(
            oracle_phase_function(&s, 20),
            Err(VerifyError::ResidualDisplacement { bits: "00".into() })
        );
    }

    #[test]
    fn limit_enforced() {
        assert!(matches!(
            oracle_phase_function(&OpSequence::empty(5), 4),
            Err(VerifyError::OracleLimit { qubits: 5, limit: 4 })
        ));
    }

    #[test]
    fn table_size() {
        assert!(PhaseFunction::from_table(vec![0; 3]).is_err());
        assert_eq!(PhaseFunction::from_table(vec![0; 8]).unwrap().qubits(), 3);
    }
}
