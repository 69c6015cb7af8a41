//! File formats.
//!
//! Reals are written in scientific notation with 17 significant digits
//! (`{:.16e}`), which round-trips every `f64` exactly and keeps repeated runs
//! byte-identical. Money columns beyond the `f64` range use the same layout
//! with a larger decimal exponent.

use std::fs;
use std::io;
use std::path::Path;

use duel_core::Trajectory;
use duel_experiments::SweepPoint;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::CliError;

pub const TRAJECTORY_HEADER: &str =
    "period,tp,h_investment,m_investment,h_profit,m_profit,protect_bonus,attack_bonus,h_share,m_share";

pub const SWEEP_HEADER: &str = "m_exp,m_win_rate,stderr,undecided_fraction";

pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn trajectory_csv(t: &Trajectory) -> String {
    let mut out = String::with_capacity(256 * (t.records.len() + 1));
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for r in &t.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.period,
            fmt_real(r.tp),
            r.h.investment,
            r.m.investment,
            r.h.profit,
            r.m.profit,
            r.protect_bonus,
            r.attack_bonus,
            fmt_real(r.h.market_share),
            fmt_real(r.m.market_share),
        ));
    }
    out
}

pub fn shares_dat(t: &Trajectory) -> String {
    let mut out = String::from("# period h_share\n");
    for r in &t.records {
        out.push_str(&format!("{} {}\n", r.period, fmt_real(r.h.market_share)));
    }
    out
}

pub fn tp_dat(t: &Trajectory) -> String {
    let mut out = String::from("# period tp\n");
    for r in &t.records {
        out.push_str(&format!("{} {}\n", r.period, fmt_real(r.tp)));
    }
    out
}

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_real(p.m_exp),
            fmt_real(p.stats.m_win_rate),
            fmt_real(p.stats.standard_error),
            fmt_real(p.stats.undecided_fraction()),
        ));
    }
    out
}

/// Pretty JSON whose floats use the fixed 17-significant-digit layout.
struct FixedFloats<'a>(PrettyFormatter<'a>);

impl Formatter for FixedFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", fmt_real(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, FixedFloats(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
