//! Line-oriented text formats.
//!
//! Circuits, one gate per line:
//!
//! ```text
//! H 0
//! ROT 0 1.5708 0.0
//! CZ 0 1
//! CNOT 0 1
//! BELL 0 1
//! ```
//!
//! `X ion` and `Z ion` are also accepted. Schedules, one pulse per line:
//!
//! ```text
//! CARRIER ion beta phase
//! RSB ion beta phase
//! BSB ion beta phase
//! AUXBSB ion beta
//! ```
//!
//! Angles are radians. Blank lines and `#` comments are ignored on input.
//! Output uses the shortest decimal that parses back to the same `f64`, so
//! write → parse → write is byte-identical.

use std::str::FromStr;

use super::{Gate, PulseSchedule};
use crate::dynamics::{PulseInstruction, PulseKind};
use crate::error::{Error, Result};

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            tokens,
        })
    })
}

fn parse_err(line: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

impl<'a> Line<'a> {
    fn expect_args(&self, count: usize) -> Result<()> {
        let got = self.tokens.len() - 1;
        if got == count {
            return Ok(());
        }
        let token = if got > count {
            self.tokens[count + 1]
        } else {
            self.tokens[self.tokens.len() - 1]
        };
        Err(parse_err(
            self.number,
            token,
            format!("`{}` takes {count} arguments, found {got}", self.tokens[0]),
        ))
    }

    fn arg<T: FromStr>(&self, index: usize, what: &str) -> Result<T> {
        let token = self.tokens[index];
        token
            .parse()
            .map_err(|_| parse_err(self.number, token, format!("expected {what}")))
    }

    fn finite(&self, index: usize) -> Result<f64> {
        let value: f64 = self.arg(index, "an angle in radians")?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(parse_err(
                self.number,
                self.tokens[index],
                "angle must be finite",
            ))
        }
    }

    fn ion_pair(&self) -> Result<(usize, usize)> {
        self.expect_args(2)?;
        let a = self.arg(1, "an ion index")?;
        let b = self.arg(2, "an ion index")?;
        if a == b {
            return Err(parse_err(
                self.number,
                self.tokens[2],
                "control equals target",
            ));
        }
        Ok((a, b))
    }
}

pub fn parse_circuit(text: &str) -> Result<Vec<Gate>> {
    lines(text)
        .map(|line| {
            let op = line.tokens[0];
            let gate = match op.to_ascii_uppercase().as_str() {
                "H" | "X" | "Z" => {
                    line.expect_args(1)?;
                    let ion = line.arg(1, "an ion index")?;
                    match op.to_ascii_uppercase().as_str() {
                        "H" => Gate::H(ion),
                        "X" => Gate::X(ion),
                        _ => Gate::Z(ion),
                    }
                }
                "ROT" => {
                    line.expect_args(3)?;
                    let ion = line.arg(1, "an ion index")?;
                    Gate::rot(ion, line.finite(2)?, line.finite(3)?)?
                }
                "CZ" => {
                    let (c, t) = line.ion_pair()?;
                    Gate::Cz {
                        control: c,
                        target: t,
                    }
                }
                "CNOT" => {
                    let (c, t) = line.ion_pair()?;
                    Gate::Cnot {
                        control: c,
                        target: t,
                    }
                }
                "BELL" => {
                    let (a, b) = line.ion_pair()?;
                    Gate::BellPrep { ion_a: a, ion_b: b }
                }
                _ => return Err(parse_err(line.number, op, "unknown gate")),
            };
            Ok(gate)
        })
        .collect()
}

pub fn write_circuit(circuit: &[Gate]) -> String {
    circuit.iter().map(|g| format!("{g}\n")).collect()
}

pub fn parse_schedule(text: &str) -> Result<PulseSchedule> {
    let pulses = lines(text)
        .map(|line| {
            let op = line.tokens[0];
            let kind = PulseKind::from_mnemonic(op)
                .ok_or_else(|| parse_err(line.number, op, "unknown pulse kind"))?;
            let pulse = if kind == PulseKind::AuxBlueSideband {
                line.expect_args(2)?;
                let p = PulseInstruction::aux_blue_sideband(
                    line.arg(1, "an ion index")?,
                    line.finite(2)?,
                );
                p.aux_cycles().map_err(|_| {
                    parse_err(
                        line.number,
                        line.tokens[2],
                        "auxiliary pulse area must be a multiple of 2π",
                    )
                })?;
                p
            } else {
                line.expect_args(3)?;
                PulseInstruction::new(
                    kind,
                    line.arg(1, "an ion index")?,
                    line.finite(2)?,
                    line.finite(3)?,
                )
            };
            Ok(pulse)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PulseSchedule::from_pulses(pulses))
}

pub fn write_schedule(schedule: &PulseSchedule) -> String {
    schedule.pulses().iter().map(|p| format!("{p}\n")).collect()
}
