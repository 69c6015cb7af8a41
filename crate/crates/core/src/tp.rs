//! Technical-progress (TP) sources.
//!
//! Seeded mode draws from ChaCha8 seeded with `seed_from_u64(seed)`. Draw `i`
//! (1-based) consumes the `i`-th `u64` of the keystream and maps it to
//! `1 + 9 * u`, where `u = (x >> 11) * 2^-53` is uniform on `[0, 1)`. The
//! keystream is position-addressable, so `tp_next` is a pure function of
//! `(seed, index)` and identical on every platform.

use std::path::Path;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

pub const TP_MIN: f64 = 1.0;
pub const TP_MAX: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TpProvider {
    Seeded { seed: u64 },
    Exogenous { values: Vec<f64> },
}

fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn draw(x: u64) -> f64 {
    TP_MIN + (TP_MAX - TP_MIN) * unit_interval(x)
}

fn in_domain(tp: f64) -> bool {
    (TP_MIN..=TP_MAX).contains(&tp)
}

impl TpProvider {
    pub fn seeded(seed: u64) -> Self {
        TpProvider::Seeded { seed }
    }

    /// Exogenous sequence; every value must lie in `[1, 10]`.
    pub fn exogenous(values: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !in_domain(**v)) {
            return Err(CoreError::InvalidTpLine {
                line: i + 1,
                reason: format!("value {v} outside [{TP_MIN}, {TP_MAX}]"),
            });
        }
        Ok(TpProvider::Exogenous { values })
    }

    /// Parses the TP file format: one decimal literal per line, line `i` is
    /// period `i`. Trailing blank lines are ignored; blank lines elsewhere are
    /// rejected because they would shift the period alignment.
    pub fn parse_exogenous(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let used = lines
            .iter()
            .rposition(|l| !l.trim().is_empty())
            .map_or(0, |i| i + 1);
        let mut values = Vec::with_capacity(used);
        for (i, raw) in lines[..used].iter().enumerate() {
            let line = i + 1;
            let token = raw.trim();
            if token.is_empty() {
                return Err(CoreError::InvalidTpLine {
                    line,
                    reason: "blank line".into(),
                });
            }
            let value: f64 = token.parse().map_err(|_| CoreError::InvalidTpLine {
                line,
                reason: format!("not a decimal number: {token:?}"),
            })?;
            if !in_domain(value) {
                return Err(CoreError::InvalidTpLine {
                    line,
                    reason: format!("value {value} outside [{TP_MIN}, {TP_MAX}]"),
                });
            }
            values.push(value);
        }
        Ok(TpProvider::Exogenous { values })
    }

    /// Number of values available, `None` for an unbounded seeded stream.
    pub fn available(&self) -> Option<usize> {
        match self {
            TpProvider::Seeded { .. } => None,
            TpProvider::Exogenous { values } => Some(values.len()),
        }
    }

    /// TP for period `index` (1-based).
    pub fn tp_next(&self, index: usize) -> Result<f64> {
        assert!(index >= 1, "TP indices are 1-based");
        match self {
            TpProvider::Seeded { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_word_pos(2 * (index as u128 - 1));
                Ok(draw(rng.next_u64()))
            }
            TpProvider::Exogenous { values } => {
                values
                    .get(index - 1)
                    .copied()
                    .ok_or(CoreError::SequenceExhausted {
                        requested: index,
                        available: values.len(),
                    })
            }
        }
    }

    /// Sequential iterator over periods `1..`.
    pub fn stream(&self) -> TpStream<'_> {
        match self {
            TpProvider::Seeded { seed } => {
                TpStream::Seeded(Box::new(ChaCha8Rng::seed_from_u64(*seed)))
            }
            TpProvider::Exogenous { values } => TpStream::Exogenous(values.iter()),
        }
    }

    /// Short human-readable description used in run summaries.
    pub fn descriptor(&self) -> String {
        match self {
            TpProvider::Seeded { seed } => format!("seed:{seed}"),
            TpProvider::Exogenous { values } => format!("exogenous:{}", values.len()),
        }
    }
}

pub enum TpStream<'a> {
    Seeded(Box<ChaCha8Rng>),
    Exogenous(std::slice::Iter<'a, f64>),
}

impl Iterator for TpStream<'_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        match self {
            TpStream::Seeded(rng) => Some(draw(rng.next_u64())),
            TpStream::Exogenous(it) => it.next().copied(),
        }
    }
}

/// Reads and validates a TP file.
pub fn load_tp_file(path: &Path) -> std::io::Result<Result<TpProvider>> {
    let text = std::fs::read_to_string(path)?;
    Ok(TpProvider::parse_exogenous(&text))
}
