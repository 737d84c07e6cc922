//! Generator configuration files and the sequence text format.
//!
//! A config is a JSON object with a `control` half (LFSR + step map) and a
//! `controlled` half (either another LFSR or a 2-adic fraction a/q). Large
//! integers can be given as decimal strings; polynomials accept either the
//! ascending bit string form ("1101") or sparse form ("x^3 + x + 1").
//!
//! Sequence files hold '0'/'1' characters with arbitrary whitespace, plus
//! '#' comment lines. A `# period=N` comment declares that the bits are
//! periodic with period N, which downstream readers use to pick exact rather
//! than prefix measurements.

use std::io::{BufRead, Write};
use std::num::ParseIntError;

use num_bigint::BigUint;
use num_traits::Num;
use serde::Deserialize;
use thiserror::Error;

use crate::bound::smallest_primitive;
use crate::generators::{
    ClockedSpec, ControlSpec, ControlledSpec, FcsrSpec, GeneratorError, LfsrSpec, StepMap,
};
use crate::gf2poly::{BinaryPolynomial, PolyError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("state must consist of 0/1 entries")]
    InvalidBits,
    #[error("integer field is not a decimal number: {0}")]
    BadInteger(String),
    #[error("unknown step style {0:?}; expected \"one_plus_bit\" or \"two_bit_weighted\"")]
    UnknownStepStyle(String),
    #[error("step style {style:?} takes {expected} tap(s), got {got}")]
    StyleTapCount {
        style: String,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
}

/// Bits given either as a "0101" string or a JSON array of 0/1.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BitsField {
    Text(String),
    Array(Vec<u8>),
}

impl BitsField {
    pub fn bits(&self) -> Result<Vec<u8>, ConfigError> {
        match self {
            Self::Array(v) => {
                if v.iter().any(|&b| b > 1) {
                    return Err(ConfigError::InvalidBits);
                }
                Ok(v.clone())
            }
            Self::Text(s) => s
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(ConfigError::InvalidBits),
                })
                .collect(),
        }
    }
}

/// An integer given as a JSON number or a decimal string, for values past
/// the JSON number range.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntField {
    Number(u64),
    Text(String),
}

impl IntField {
    pub fn value(&self) -> Result<BigUint, ConfigError> {
        match self {
            Self::Number(n) => Ok(BigUint::from(*n)),
            Self::Text(s) => BigUint::from_str_radix(s.trim(), 10)
                .map_err(|_| ConfigError::BadInteger(s.clone())),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum StepConfig {
    Style { style: String, taps: Vec<usize> },
    Table { taps: Vec<usize>, table: Vec<u64> },
}

impl StepConfig {
    pub fn build(&self) -> Result<StepMap, ConfigError> {
        match self {
            Self::Table { taps, table } => {
                Ok(StepMap::from_table(taps.clone(), table.clone())?)
            }
            Self::Style { style, taps } => match style.as_str() {
                "one_plus_bit" => {
                    if taps.len() != 1 {
                        return Err(ConfigError::StyleTapCount {
                            style: style.clone(),
                            expected: 1,
                            got: taps.len(),
                        });
                    }
                    Ok(StepMap::one_plus_bit(taps[0]))
                }
                "two_bit_weighted" => {
                    if taps.len() != 2 {
                        return Err(ConfigError::StyleTapCount {
                            style: style.clone(),
                            expected: 2,
                            got: taps.len(),
                        });
                    }
                    Ok(StepMap::two_bit_weighted(taps[0], taps[1])?)
                }
                other => Err(ConfigError::UnknownStepStyle(other.to_string())),
            },
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ControlConfig {
    /// Defaults to the smallest primitive polynomial matching the state
    /// length.
    #[serde(default)]
    pub feedback: Option<String>,
    pub state: BitsField,
    pub step: StepConfig,
}

impl ControlConfig {
    pub fn build(&self) -> Result<ControlSpec, ConfigError> {
        let state = self.state.bits()?;
        let feedback = match &self.feedback {
            Some(s) => BinaryPolynomial::parse(s)?,
            None => smallest_primitive(state.len())?,
        };
        let lfsr = LfsrSpec::new(feedback, state)?;
        Ok(ControlSpec::new(lfsr, self.step.build()?)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ControlledConfig {
    Lfsr { feedback: String, state: BitsField },
    Fraction { a: IntField, q: IntField },
}

impl ControlledConfig {
    pub fn build(&self) -> Result<ControlledSpec, ConfigError> {
        match self {
            Self::Lfsr { feedback, state } => {
                let spec = LfsrSpec::new(BinaryPolynomial::parse(feedback)?, state.bits()?)?;
                Ok(ControlledSpec::Lfsr(spec))
            }
            Self::Fraction { a, q } => {
                let spec = FcsrSpec::new(a.value()?, q.value()?)?;
                Ok(ControlledSpec::Fcsr(spec))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct GeneratorConfig {
    pub control: ControlConfig,
    pub controlled: ControlledConfig,
}

impl GeneratorConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<ClockedSpec, ConfigError> {
        Ok(ClockedSpec::new(
            self.control.build()?,
            self.controlled.build()?,
        ))
    }
}

#[derive(Debug, Error)]
pub enum SequenceFormatError {
    #[error("unexpected character {0:?}; sequences hold 0/1, whitespace, and # comments")]
    BadCharacter(char),
    #[error("declared period is not a positive integer: {0}")]
    BadPeriod(#[source] ParseIntError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Bits plus the period declared by a `# period=N` comment, if any.
pub fn read_sequence(
    reader: impl BufRead,
) -> Result<(Vec<u8>, Option<u64>), SequenceFormatError> {
    let mut bits = Vec::new();
    let mut period = None;
    for line in reader.lines() {
        let line = line?;
        let body = match line.split_once('#') {
            Some((before, comment)) => {
                let comment = comment.trim();
                if let Some(val) = comment.strip_prefix("period=") {
                    period = Some(val.trim().parse().map_err(SequenceFormatError::BadPeriod)?);
                }
                before
            }
            None => line.as_str(),
        };
        for c in body.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                c if c.is_whitespace() => {}
                c => return Err(SequenceFormatError::BadCharacter(c)),
            }
        }
    }
    Ok((bits, period))
}

/// Write bits 64 per line, preceded by a period declaration when one is
/// known.
pub fn write_sequence(
    mut writer: impl Write,
    bits: &[u8],
    period: Option<&BigUint>,
) -> std::io::Result<()> {
    if let Some(p) = period {
        writeln!(writer, "# period={p}")?;
    }
    for chunk in bits.chunks(64) {
        let line: String = chunk.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
        writeln!(writer, "{line}")?;
    }
    Ok(())
}
