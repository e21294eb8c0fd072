//! Bit-flip fault injection against a generated code.
//!
//! Random mode uses `ChaCha8Rng::seed_from_u64(seed)` from `rand_chacha`,
//! so a report is reproducible from its seed. Each trial draws a data word
//! (one `u64` per 64 data bits, bit `i` of the word is data bit `i % 64`),
//! then the fault class (low bit of one `u32`: 0 single, 1 double), then
//! positions with `gen_range`.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codec::{DecodeOutcome, SecDed};
use crate::delta::Strategy;
use crate::error::{Error, Result};
use crate::planner::build_check_matrix;

/// Largest codeword length accepted by exhaustive mode.
pub const EXHAUSTIVE_MAX_LENGTH: usize = 128;
/// Exhaustive mode enumerates every data word up to this many data bits.
pub const EXHAUSTIVE_ALL_WORDS_MAX_K: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaultMode {
    /// All single and double flips over a set of codewords: every data word
    /// when `k <= 12`, otherwise `trials` seeded data words.
    Exhaustive,
    /// `trials` seeded random patterns, each a single or a double flip.
    Random,
}

impl FaultMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            FaultMode::Exhaustive => "exhaustive",
            FaultMode::Random => "random",
        }
    }
}

impl fmt::Display for FaultMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FaultMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(FaultMode::Exhaustive),
            "random" => Ok(FaultMode::Random),
            other => Err(format!("unknown mode '{other}' (expected exhaustive or random)")),
        }
    }
}

/// Outcomes for one fault class.
///
/// `handled` means the expected outcome: corrected at the flipped position
/// for singles, flagged `double_error` for doubles. A miscorrection is any
/// outcome that hands back a payload different from the original (including
/// a silent `no_error`). Everything else, such as a single flagged as a
/// double, is residual.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassTally {
    pub injected: u64,
    pub handled: u64,
    pub miscorrections: u64,
    pub residual: u64,
}

impl ClassTally {
    fn absorb(mut self, other: ClassTally) -> ClassTally {
        self.injected += other.injected;
        self.handled += other.handled;
        self.miscorrections += other.miscorrections;
        self.residual += other.residual;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultReport {
    pub k: usize,
    pub n: usize,
    pub mode: FaultMode,
    pub seed: u64,
    /// Data words used as fault targets (exhaustive mode only).
    pub codewords: u64,
    pub singles: ClassTally,
    pub doubles: ClassTally,
}

pub const FAULT_CSV_HEADER: &str = "class,injected,handled,miscorrections,residual";

impl FaultReport {
    pub fn trials(&self) -> u64 {
        self.singles.injected + self.doubles.injected
    }

    pub fn singles_corrected(&self) -> u64 {
        self.singles.handled
    }

    pub fn doubles_detected(&self) -> u64 {
        self.doubles.handled
    }

    pub fn miscorrections(&self) -> u64 {
        self.singles.miscorrections + self.doubles.miscorrections
    }

    pub fn residual(&self) -> u64 {
        self.singles.residual + self.doubles.residual
    }

    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let fields: [(&str, String); 12] = [
            ("k", self.k.to_string()),
            ("n", self.n.to_string()),
            ("mode", self.mode.to_string()),
            ("seed", self.seed.to_string()),
            ("codewords", self.codewords.to_string()),
            ("trials", self.trials().to_string()),
            ("singles_injected", self.singles.injected.to_string()),
            ("singles_corrected", self.singles_corrected().to_string()),
            ("doubles_injected", self.doubles.injected.to_string()),
            ("doubles_detected", self.doubles_detected().to_string()),
            ("miscorrections", self.miscorrections().to_string()),
            ("residual", self.residual().to_string()),
        ];
        for (key, value) in fields {
            let _ = writeln!(out, "{key}={value}");
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(FAULT_CSV_HEADER);
        out.push('\n');
        for (class, t) in [("single", self.singles), ("double", self.doubles)] {
            let _ = writeln!(
                out,
                "{class},{},{},{},{}",
                t.injected, t.handled, t.miscorrections, t.residual
            );
        }
        out
    }
}

fn random_data(rng: &mut ChaCha8Rng, k: usize) -> Vec<u8> {
    let mut data = Vec::with_capacity(k);
    while data.len() < k {
        let word = rng.next_u64();
        let take = (k - data.len()).min(64);
        data.extend((0..take).map(|i| ((word >> i) & 1) as u8));
    }
    data
}

fn index_data(k: usize, value: u64) -> Vec<u8> {
    (0..k).map(|i| ((value >> i) & 1) as u8).collect()
}

fn classify(outcome: &DecodeOutcome, data: &[u8], handled: bool) -> ClassTally {
    let mut t = ClassTally {
        injected: 1,
        ..ClassTally::default()
    };
    if handled {
        t.handled = 1;
    } else if outcome.data().is_some_and(|d| d != data) || matches!(outcome, DecodeOutcome::Corrected { .. }) {
        t.miscorrections = 1;
    } else {
        t.residual = 1;
    }
    t
}

fn single(codec: &SecDed, word: &[u8], data: &[u8], i: usize) -> Result<ClassTally> {
    let mut bad = word.to_vec();
    bad[i] ^= 1;
    let outcome = codec.decode(&bad)?;
    let ok = matches!(&outcome, DecodeOutcome::Corrected { position, data: d } if *position == i && d == data);
    Ok(classify(&outcome, data, ok))
}

fn double(codec: &SecDed, word: &[u8], data: &[u8], i: usize, j: usize) -> Result<ClassTally> {
    let mut bad = word.to_vec();
    bad[i] ^= 1;
    bad[j] ^= 1;
    let outcome = codec.decode(&bad)?;
    let ok = outcome == DecodeOutcome::DoubleError;
    Ok(classify(&outcome, data, ok))
}

fn exhaustive_for_word(codec: &SecDed, data: &[u8]) -> Result<(ClassTally, ClassTally)> {
    let word = codec.encode(data)?;
    let word = word.bits();
    let n = word.len();
    let mut singles = ClassTally::default();
    let mut doubles = ClassTally::default();
    for i in 0..n {
        singles = singles.absorb(single(codec, word, data, i)?);
        for j in i + 1..n {
            doubles = doubles.absorb(double(codec, word, data, i, j)?);
        }
    }
    Ok((singles, doubles))
}

/// Injects single and double bit flips into codewords of the `k`-bit code
/// (built with the shift strategy) and tallies how the decoder responds.
pub fn inject_faults(k: usize, mode: FaultMode, trials: u64, seed: u64) -> Result<FaultReport> {
    let codec = SecDed::new(build_check_matrix(k, Strategy::Shift)?)?;
    let n = codec.length();
    let mut report = FaultReport {
        k,
        n,
        mode,
        seed,
        codewords: 0,
        singles: ClassTally::default(),
        doubles: ClassTally::default(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mode {
        FaultMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX_LENGTH {
                return Err(Error::Scale(format!(
                    "exhaustive mode needs n <= {EXHAUSTIVE_MAX_LENGTH}, got n={n}"
                )));
            }
            let words: Vec<Vec<u8>> = if k <= EXHAUSTIVE_ALL_WORDS_MAX_K {
                (0..1u64 << k).map(|v| index_data(k, v)).collect()
            } else {
                (0..trials).map(|_| random_data(&mut rng, k)).collect()
            };
            report.codewords = words.len() as u64;
            let (singles, doubles) = words
                .par_iter()
                .map(|data| exhaustive_for_word(&codec, data))
                .try_reduce(
                    || (ClassTally::default(), ClassTally::default()),
                    |a, b| Ok((a.0.absorb(b.0), a.1.absorb(b.1))),
                )?;
            report.singles = singles;
            report.doubles = doubles;
        }
        FaultMode::Random => {
            for _ in 0..trials {
                let data = random_data(&mut rng, k);
                let word = codec.encode(&data)?;
                if rng.next_u32() & 1 == 0 {
                    let i = rng.gen_range(0..n);
                    report.singles = report.singles.absorb(single(&codec, word.bits(), &data, i)?);
                } else {
                    let i = rng.gen_range(0..n);
                    let mut j = rng.gen_range(0..n - 1);
                    if j >= i {
                        j += 1;
                    }
                    report.doubles = report.doubles.absorb(double(&codec, word.bits(), &data, i, j)?);
                }
            }
        }
    }
    Ok(report)
}
