//! On-disk formats: ledger and `θ₀` CSV, run-record JSON, binary checkpoints.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use super::record::RunRecord;
use crate::diagnostics::{LedgerEntry, NormLedger, Theta0Sample, LEDGER_COLUMNS, THETA0_COLUMNS};
use crate::dynamics::{Scheme, SolveKind, SolverParams, SolverState};
use crate::error::{Error, Result};
use crate::heat::DecaySeries;
use crate::spectral::{Complex64, GridSpec, SpectralField};

pub const CHECKPOINT_MAGIC: [u8; 8] = *b"SQGCKPT\0";
pub const CHECKPOINT_VERSION: u32 = 1;
/// Largest grid a checkpoint may declare.
pub const MAX_CHECKPOINT_N: usize = 8192;

fn write_rows<W: Write>(out: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        // `{}` on f64 prints the shortest string that parses back exactly
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn read_rows<R: Read, const K: usize>(input: R, header: &[&str; K]) -> Result<Vec<[f64; K]>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let got: Vec<String> = r.headers()?.iter().map(|h| h.trim().to_string()).collect();
    if got != header.iter().map(|h| h.to_string()).collect::<Vec<_>>() {
        return Err(Error::Ledger(format!("expected columns {header:?}, got {got:?}")));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != K {
            return Err(Error::Ledger(format!("row {} has {} fields, expected {K}", line + 1, rec.len())));
        }
        let mut row = [0.0; K];
        for (slot, field) in row.iter_mut().zip(rec.iter()) {
            *slot = field
                .trim()
                .parse()
                .map_err(|_| Error::Ledger(format!("row {}: bad number {field:?}", line + 1)))?;
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_ledger_csv<W: Write>(out: W, ledger: &NormLedger) -> Result<()> {
    write_rows(out, &LEDGER_COLUMNS, ledger.entries().iter().map(|e| e.values().to_vec()))
}

/// Parses a ledger written by [`write_ledger_csv`]; columns must match exactly.
pub fn read_ledger_csv<R: Read>(input: R) -> Result<NormLedger> {
    let rows = read_rows(input, &LEDGER_COLUMNS)?;
    NormLedger::from_entries(rows.into_iter().map(LedgerEntry::from_values).collect())
}

pub fn write_theta0_csv<W: Write>(out: W, samples: &[Theta0Sample]) -> Result<()> {
    write_rows(
        out,
        &THETA0_COLUMNS,
        samples.iter().map(|s| vec![s.time, s.l2, s.hs_dot, s.linf, s.hs]),
    )
}

pub fn read_theta0_csv<R: Read>(input: R) -> Result<Vec<Theta0Sample>> {
    Ok(read_rows(input, &THETA0_COLUMNS)?
        .into_iter()
        .map(|[time, l2, hs_dot, linf, hs]| Theta0Sample { time, l2, hs_dot, linf, hs })
        .collect())
}

pub fn write_decay_csv<W: Write>(out: W, series: &[DecaySeries]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["norm", "time", "value"])?;
    for s in series {
        for (t, v) in s.times.iter().zip(&s.values) {
            w.write_record([s.norm_label.clone(), t.to_string(), v.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn record_to_json(record: &RunRecord) -> Result<String> {
    Ok(serde_json::to_string_pretty(record)?)
}

pub fn record_from_json(text: &str) -> Result<RunRecord> {
    let record: RunRecord = serde_json::from_str(text)?;
    record.config.validate()?;
    Ok(record)
}

/// Decoded checkpoint: enough to resume the solve it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub grid: GridSpec,
    pub params: SolverParams,
    pub time: f64,
    pub field: SpectralField,
    /// Radial data `f` for a perturbation solve.
    pub radial: Option<SpectralField>,
}

impl Checkpoint {
    pub fn from_state(state: &SolverState) -> Self {
        Checkpoint {
            grid: *state.grid(),
            params: state.params,
            time: state.t,
            field: state.field.clone(),
            radial: match &state.kind {
                SolveKind::Full => None,
                SolveKind::Perturbation { radial } => Some((**radial).clone()),
            },
        }
    }

    pub fn into_state(self) -> SolverState {
        let kind = match self.radial {
            None => SolveKind::Full,
            Some(radial) => SolveKind::Perturbation { radial: Arc::new(radial) },
        };
        SolverState {
            t: self.time,
            field: self.field,
            kind,
            params: self.params,
        }
    }

    /// Little-endian layout: magic, version (u32), n (u32), box length,
    /// γ, σ, dt, t_end, CFL safety (f64), scheme (u8), kind (u8: 0 full,
    /// 1 perturbation), time (f64), then `n²` (re, im) pairs in row-major
    /// mode order, followed by a second block for the radial data when
    /// kind is 1.
    pub fn encode(&self) -> Vec<u8> {
        let n = self.grid.n();
        let blocks = 1 + self.radial.is_some() as usize;
        let mut out = Vec::with_capacity(HEADER_LEN + blocks * n * n * 16);
        out.extend_from_slice(&CHECKPOINT_MAGIC);
        out.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
        out.extend_from_slice(&(n as u32).to_le_bytes());
        let p = &self.params;
        for v in [self.grid.box_length(), p.gamma(), p.sigma(), p.dt(), p.t_end(), p.cfl_safety()] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.push(match p.scheme() {
            Scheme::IfRk2 => 0,
            Scheme::IfRk4 => 1,
        });
        out.push(self.radial.is_some() as u8);
        out.extend_from_slice(&self.time.to_le_bytes());
        for field in std::iter::once(&self.field).chain(self.radial.as_ref()) {
            for c in field.coeffs() {
                out.extend_from_slice(&c.re.to_le_bytes());
                out.extend_from_slice(&c.im.to_le_bytes());
            }
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let bad = |m: String| Error::Checkpoint(m);
        let mut r = ByteReader { bytes, pos: 0 };
        if r.take(8)? != CHECKPOINT_MAGIC {
            return Err(bad("not a checkpoint (bad magic)".into()));
        }
        let version = r.u32()?;
        if version != CHECKPOINT_VERSION {
            return Err(bad(format!("unsupported checkpoint version {version}")));
        }
        let n = r.u32()? as usize;
        if n > MAX_CHECKPOINT_N {
            return Err(bad(format!("grid size {n} exceeds {MAX_CHECKPOINT_N}")));
        }
        let box_length = r.f64()?;
        let grid = GridSpec::new(n, box_length).map_err(|e| bad(e.to_string()))?;
        let [gamma, sigma, dt, t_end, cfl] = [r.f64()?, r.f64()?, r.f64()?, r.f64()?, r.f64()?];
        let scheme = match r.u8()? {
            0 => Scheme::IfRk2,
            1 => Scheme::IfRk4,
            s => return Err(bad(format!("unknown scheme tag {s}"))),
        };
        let params = SolverParams::new(gamma)
            .and_then(|p| p.with_sigma(sigma))
            .and_then(|p| p.with_dt(dt))
            .and_then(|p| p.with_t_end(t_end))
            .and_then(|p| p.with_cfl_safety(cfl))
            .map_err(|e| bad(e.to_string()))?
            .with_scheme(scheme);
        let blocks = match r.u8()? {
            0 => 1,
            1 => 2,
            k => return Err(bad(format!("unknown solve kind {k}"))),
        };
        let time = r.f64()?;
        if !time.is_finite() {
            return Err(bad(format!("non-finite time {time}")));
        }
        let expected = blocks * n * n * 16;
        if r.remaining() != expected {
            return Err(bad(format!(
                "coefficient payload is {} bytes, expected {expected}",
                r.remaining()
            )));
        }
        let mut fields = Vec::with_capacity(blocks);
        for _ in 0..blocks {
            let mut coeffs = Vec::with_capacity(n * n);
            for _ in 0..n * n {
                coeffs.push(Complex64::new(r.f64()?, r.f64()?));
            }
            fields.push(SpectralField::from_coeffs(grid, coeffs).map_err(|e| bad(e.to_string()))?);
        }
        let radial = if blocks == 2 { fields.pop() } else { None };
        let field = fields.pop().expect("one block decoded");
        Ok(Checkpoint { grid, params, time, field, radial })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.encode())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Checkpoint::decode(&fs::read(path)?)
    }
}

const HEADER_LEN: usize = 8 + 4 + 4 + 6 * 8 + 2 + 8;

struct ByteReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.remaining() < k {
            return Err(Error::Checkpoint(format!("truncated at byte {}", self.pos)));
        }
        let s = &self.bytes[self.pos..self.pos + k];
        self.pos += k;
        Ok(s)
    }

    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}
