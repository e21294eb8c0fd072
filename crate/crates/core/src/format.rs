//! Text renderings of a [`BitMatrix`].
//!
//! All three formats start with a header giving the row and column counts,
//! followed by one line per row, top row first:
//!
//! * `txt`: header `rows cols`; each row is `cols` characters from `{0,1}`,
//!   column 0 leftmost.
//! * `csv`: header `rows,cols`; each row is `cols` comma-separated bits.
//! * `hex`: header `rows cols`; each row is `ceil(cols/4)` lowercase hex
//!   digits. Column 0 is the most significant bit of the first digit and the
//!   last digit is zero-padded on the right.
//!
//! Lines starting with `#` are comments and may appear anywhere; blank lines
//! are allowed after the last row. Parsing ignores both, so comments never
//! affect equality.

use std::fmt;
use std::str::FromStr;

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MatrixFormat {
    #[default]
    Txt,
    Csv,
    Hex,
}

impl MatrixFormat {
    pub const ALL: [MatrixFormat; 3] = [MatrixFormat::Txt, MatrixFormat::Csv, MatrixFormat::Hex];

    pub fn as_str(&self) -> &'static str {
        match self {
            MatrixFormat::Txt => "txt",
            MatrixFormat::Csv => "csv",
            MatrixFormat::Hex => "hex",
        }
    }
}

impl fmt::Display for MatrixFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "txt" => Ok(MatrixFormat::Txt),
            "csv" => Ok(MatrixFormat::Csv),
            "hex" => Ok(MatrixFormat::Hex),
            other => Err(format!("unknown format '{other}' (expected txt, csv or hex)")),
        }
    }
}

const HEX_DIGITS: &[u8; 16] = b"0123456789abcdef";

pub fn render(mat: &BitMatrix, format: MatrixFormat) -> String {
    let mut out = String::with_capacity(mat.rows() * (mat.cols() + 1) * 2 + 16);
    match format {
        MatrixFormat::Csv => out.push_str(&format!("{},{}\n", mat.rows(), mat.cols())),
        _ => out.push_str(&format!("{} {}\n", mat.rows(), mat.cols())),
    }
    for r in 0..mat.rows() {
        let row = mat.row(r);
        match format {
            MatrixFormat::Txt => out.extend(row.iter().map(|&b| (b'0' + b) as char)),
            MatrixFormat::Csv => {
                for (c, &b) in row.iter().enumerate() {
                    if c > 0 {
                        out.push(',');
                    }
                    out.push((b'0' + b) as char);
                }
            }
            MatrixFormat::Hex => {
                for nibble in row.chunks(4) {
                    let v = nibble
                        .iter()
                        .enumerate()
                        .fold(0usize, |acc, (i, &b)| acc | (b as usize) << (3 - i));
                    out.push(HEX_DIGITS[v] as char);
                }
            }
        }
        out.push('\n');
    }
    out
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: &str, lineno: usize, format: MatrixFormat) -> Result<(usize, usize)> {
    let fields: Vec<&str> = match format {
        MatrixFormat::Csv => line.split(',').map(str::trim).collect(),
        _ => line.split_whitespace().collect(),
    };
    let [rows, cols] = fields.as_slice() else {
        return Err(parse_error(lineno, "header must be 'rows cols'"));
    };
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_error(lineno, format!("'{s}' is not a count")))
    };
    Ok((num(rows)?, num(cols)?))
}

fn parse_row(line: &str, lineno: usize, cols: usize, format: MatrixFormat) -> Result<Vec<u8>> {
    let bit = |ch: char| match ch {
        '0' => Ok(0u8),
        '1' => Ok(1u8),
        other => Err(parse_error(lineno, format!("'{other}' is not a bit"))),
    };
    let bits: Vec<u8> = match format {
        MatrixFormat::Txt => line.chars().map(bit).collect::<Result<_>>()?,
        MatrixFormat::Csv if line.is_empty() => Vec::new(),
        MatrixFormat::Csv => line
            .split(',')
            .map(|cell| {
                let mut chars = cell.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(ch), None) => bit(ch),
                    _ => Err(parse_error(lineno, format!("'{cell}' is not a bit"))),
                }
            })
            .collect::<Result<_>>()?,
        MatrixFormat::Hex => {
            let digits = cols.div_ceil(4);
            if line.chars().count() != digits {
                return Err(parse_error(
                    lineno,
                    format!("expected {digits} hex digits, found {}", line.len()),
                ));
            }
            let mut bits = Vec::with_capacity(digits * 4);
            for ch in line.chars() {
                let v = ch
                    .to_digit(16)
                    .ok_or_else(|| parse_error(lineno, format!("'{ch}' is not a hex digit")))?;
                bits.extend((0..4).rev().map(|i| ((v >> i) & 1) as u8));
            }
            if bits[cols..].iter().any(|&b| b != 0) {
                return Err(parse_error(lineno, "padding bits must be zero"));
            }
            bits.truncate(cols);
            bits
        }
    };
    if bits.len() != cols {
        return Err(parse_error(
            lineno,
            format!("expected {cols} columns, found {}", bits.len()),
        ));
    }
    Ok(bits)
}

pub fn parse(text: &str, format: MatrixFormat) -> Result<BitMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.starts_with('#'));

    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing header"))?;
    let (rows, cols) = parse_header(header, lineno, format)?;

    let mut mat = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| parse_error(lineno + r + 1, format!("missing row {r}")))?;
        let bits = parse_row(line, lineno, cols, format)?;
        mat.row_mut(r).copy_from_slice(&bits);
    }
    if let Some((lineno, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(parse_error(lineno, "unexpected content after last row"));
    }
    Ok(mat)
}
