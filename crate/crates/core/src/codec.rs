//! Systematic SEC-DED encoding and syndrome decoding over a [`CheckMatrix`].
//!
//! Syndromes are packed into a `u64` with bit `r` holding row `r`, so a check
//! matrix may have at most 64 rows. Since every column of H has odd weight,
//! the syndrome weight classifies the error: zero is clean, odd points at a
//! single column, even and nonzero is a double error.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::planner::CheckMatrix;

/// An `n`-bit word laid out by the check matrix's column order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword(pub Vec<u8>);

impl Codeword {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn flip(&mut self, position: usize) {
        self.0[position] ^= 1;
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(&self.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome {
    value: u64,
    len: usize,
}

impl Syndrome {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    /// Row-ordered bits, row 0 first.
    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|r| ((self.value >> r) & 1) as u8).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutcomeKind {
    NoError,
    Corrected,
    DoubleError,
    MultiError,
}

impl OutcomeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutcomeKind::NoError => "no_error",
            OutcomeKind::Corrected => "corrected",
            OutcomeKind::DoubleError => "double_error",
            OutcomeKind::MultiError => "multi_error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    NoError { data: Vec<u8> },
    Corrected { position: usize, data: Vec<u8> },
    DoubleError,
    /// Odd-weight syndrome that matches no column: three or more errors.
    MultiError,
}

impl DecodeOutcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            DecodeOutcome::NoError { .. } => OutcomeKind::NoError,
            DecodeOutcome::Corrected { .. } => OutcomeKind::Corrected,
            DecodeOutcome::DoubleError => OutcomeKind::DoubleError,
            DecodeOutcome::MultiError => OutcomeKind::MultiError,
        }
    }

    pub fn data(&self) -> Option<&[u8]> {
        match self {
            DecodeOutcome::NoError { data } | DecodeOutcome::Corrected { data, .. } => Some(data),
            _ => None,
        }
    }
}

/// `kind[:position] payload`, e.g. `corrected:5 0110`.
impl fmt::Display for DecodeOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().as_str())?;
        if let DecodeOutcome::Corrected { position, .. } = self {
            write!(f, ":{position}")?;
        }
        if let Some(data) = self.data() {
            write!(f, " {}", bits_to_string(data))?;
        }
        Ok(())
    }
}

/// Encoder/decoder bound to one check matrix.
#[derive(Clone, Debug)]
pub struct SecDed {
    matrix: CheckMatrix,
    column_syndromes: Vec<u64>,
    lookup: HashMap<u64, usize>,
}

impl SecDed {
    pub fn new(matrix: CheckMatrix) -> Result<Self> {
        if matrix.check_bits() > 64 {
            return Err(Error::Scale(format!(
                "{} check bits exceed the 64-bit syndrome",
                matrix.check_bits()
            )));
        }
        let h = &matrix.h;
        let column_syndromes: Vec<u64> = (0..h.cols())
            .map(|c| {
                (0..h.rows())
                    .filter(|&r| h.get(r, c))
                    .fold(0u64, |acc, r| acc | 1 << r)
            })
            .collect();
        let lookup = column_syndromes
            .iter()
            .enumerate()
            .map(|(c, &s)| (s, c))
            .collect();
        Ok(Self {
            matrix,
            column_syndromes,
            lookup,
        })
    }

    pub fn matrix(&self) -> &CheckMatrix {
        &self.matrix
    }

    pub fn data_bits(&self) -> usize {
        self.matrix.data_bits()
    }

    pub fn length(&self) -> usize {
        self.matrix.length()
    }

    fn check_len(expected: usize, actual: usize) -> Result<()> {
        if expected == actual {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected, actual })
        }
    }

    fn raw_syndrome(&self, word: &[u8]) -> u64 {
        word.iter()
            .zip(&self.column_syndromes)
            .filter(|(&b, _)| b == 1)
            .fold(0, |acc, (_, &s)| acc ^ s)
    }

    pub fn encode(&self, data: &[u8]) -> Result<Codeword> {
        Self::check_len(self.data_bits(), data.len())?;
        let mut word = vec![0u8; self.length()];
        let mut parity = 0u64;
        for (&bit, &pos) in data.iter().zip(&self.matrix.data_positions) {
            word[pos] = bit & 1;
            if bit & 1 == 1 {
                parity ^= self.column_syndromes[pos];
            }
        }
        for (row, &pos) in self.matrix.parity_positions.iter().enumerate() {
            word[pos] = ((parity >> row) & 1) as u8;
        }
        Ok(Codeword(word))
    }

    pub fn syndrome(&self, word: &[u8]) -> Result<Syndrome> {
        Self::check_len(self.length(), word.len())?;
        Ok(Syndrome {
            value: self.raw_syndrome(word),
            len: self.matrix.check_bits(),
        })
    }

    /// Column whose syndrome equals `s`, via the precomputed table.
    pub fn lookup(&self, s: Syndrome) -> Option<usize> {
        self.lookup.get(&s.value).copied()
    }

    /// Column whose syndrome equals `s`, by scanning H.
    pub fn lookup_linear(&self, s: Syndrome) -> Option<usize> {
        self.column_syndromes.iter().position(|&c| c == s.value)
    }

    fn payload(&self, word: &[u8]) -> Vec<u8> {
        self.matrix.data_positions.iter().map(|&p| word[p]).collect()
    }

    pub fn decode(&self, word: &[u8]) -> Result<DecodeOutcome> {
        let s = self.syndrome(word)?;
        if s.is_zero() {
            return Ok(DecodeOutcome::NoError {
                data: self.payload(word),
            });
        }
        if s.weight() % 2 == 0 {
            return Ok(DecodeOutcome::DoubleError);
        }
        match self.lookup(s) {
            Some(position) => {
                let mut fixed = word.to_vec();
                fixed[position] ^= 1;
                Ok(DecodeOutcome::Corrected {
                    position,
                    data: self.payload(&fixed),
                })
            }
            None => Ok(DecodeOutcome::MultiError),
        }
    }
}

pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .enumerate()
        .map(|(i, ch)| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Parse {
                line: 1,
                message: format!("character {i} is '{other}', expected 0 or 1"),
            }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::Strategy;
    use crate::planner::build_check_matrix;

    fn codec(k: usize) -> SecDed {
        SecDed::new(build_check_matrix(k, Strategy::Shift).unwrap()).unwrap()
    }

    fn data_word(k: usize, value: u64) -> Vec<u8> {
        (0..k).map(|i| ((value >> i) & 1) as u8).collect()
    }

    #[test]
    fn zero_data_encodes_to_zero() {
        let c = codec(4);
        assert_eq!(c.encode(&[0; 4]).unwrap().to_string(), "00000000");
    }

    #[test]
    fn every_codeword_has_zero_syndrome_and_is_unique() {
        for k in 1..=8 {
            let c = codec(k);
            let mut seen = std::collections::HashSet::new();
            for v in 0..1u64 << k {
                let word = c.encode(&data_word(k, v)).unwrap();
                assert!(c.syndrome(word.bits()).unwrap().is_zero());
                assert!(seen.insert(word));
            }
        }
    }

    #[test]
    fn single_flip_syndrome_is_the_column() {
        let c = codec(11);
        let word = c.encode(&data_word(11, 0x5a3)).unwrap();
        for i in 0..c.length() {
            let mut bad = word.clone();
            bad.flip(i);
            let s = c.syndrome(bad.bits()).unwrap();
            assert_eq!(s.to_bits(), c.matrix().h.column(i));
        }
    }

    #[test]
    fn double_flips_have_even_nonzero_syndrome() {
        let c = codec(8);
        let word = c.encode(&data_word(8, 0xc4)).unwrap();
        for i in 0..c.length() {
            for j in i + 1..c.length() {
                let mut bad = word.clone();
                bad.flip(i);
                bad.flip(j);
                let s = c.syndrome(bad.bits()).unwrap();
                assert!(!s.is_zero() && s.weight().is_multiple_of(2));
                assert_eq!(c.decode(bad.bits()).unwrap(), DecodeOutcome::DoubleError);
            }
        }
    }

    #[test]
    fn single_flip_is_corrected() {
        let c = codec(16);
        for v in [0u64, 1, 0xffff, 0x1234, 0xbeef] {
            let data = data_word(16, v);
            let word = c.encode(&data).unwrap();
            assert_eq!(
                c.decode(word.bits()).unwrap(),
                DecodeOutcome::NoError { data: data.clone() }
            );
            for i in 0..c.length() {
                let mut bad = word.clone();
                bad.flip(i);
                assert_eq!(
                    c.decode(bad.bits()).unwrap(),
                    DecodeOutcome::Corrected {
                        position: i,
                        data: data.clone()
                    }
                );
            }
        }
    }

    #[test]
    fn triple_flip_onto_unused_column_is_multi_error() {
        // k=8 uses 8 of the 10 weight-3 columns on 5 rows.
        let c = codec(8);
        let rows = c.matrix().check_bits();
        let missing = (0u64..1 << rows)
            .find(|v| v.count_ones() == 3 && !c.column_syndromes.contains(v))
            .unwrap();
        let mut word = c.encode(&data_word(8, 0x3c)).unwrap();
        for r in (0..rows).filter(|r| (missing >> r) & 1 == 1) {
            word.flip(c.matrix().parity_positions[r]);
        }
        assert_eq!(c.decode(word.bits()).unwrap(), DecodeOutcome::MultiError);
    }

    #[test]
    fn table_and_scan_lookup_agree() {
        let c = codec(26);
        for v in 0..1u64 << c.matrix().check_bits() {
            let s = Syndrome {
                value: v,
                len: c.matrix().check_bits(),
            };
            assert_eq!(c.lookup(s), c.lookup_linear(s));
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let c = codec(4);
        assert!(c.encode(&[0; 3]).is_err());
        assert!(c.decode(&[0; 7]).is_err());
        assert!(c.syndrome(&[0; 9]).is_err());
    }

    #[test]
    fn outcome_rendering() {
        let o = DecodeOutcome::Corrected {
            position: 5,
            data: vec![0, 1, 1, 0],
        };
        assert_eq!(o.to_string(), "corrected:5 0110");
        assert_eq!(DecodeOutcome::DoubleError.to_string(), "double_error");
        assert_eq!(
            DecodeOutcome::NoError { data: vec![1] }.to_string(),
            "no_error 1"
        );
    }

    #[test]
    fn bit_strings() {
        assert_eq!(parse_bits("0110").unwrap(), vec![0, 1, 1, 0]);
        assert!(parse_bits("01a").is_err());
        assert_eq!(bits_to_string(&[1, 0, 1]), "101");
    }
}
