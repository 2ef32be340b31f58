//! Rendering of command results as pretty text, JSON or CSV.
//!
//! Machine formats contain no timestamps, so identical invocations produce
//! identical bytes. `verify` emits JSON Lines: one record per check (exact)
//! or per sample point (numeric).

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use shefferzeta::bernoulli_euler::{NumberKind, NumberRow};
use shefferzeta::identities::{IdentityReport, Status};
use shefferzeta::quadrature::{format_float, QuadResult};
use shefferzeta::sheffer::{Sequence, SequenceRoute};
use shefferzeta::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub struct Sink {
    out: Box<dyn Write>,
    format: Format,
    total: usize,
    failed: usize,
}

fn seq_name(seq: Sequence) -> &'static str {
    match seq {
        Sequence::P => "p",
        Sequence::Q => "q",
    }
}

#[derive(Serialize)]
struct PolyRecord<'a> {
    seq: &'static str,
    n: usize,
    route: &'static str,
    /// Low-to-high.
    coeffs: &'a IntPoly,
}

#[derive(Serialize)]
struct AllRoutesRecord<'a> {
    seq: &'static str,
    n: usize,
    routes: Vec<PolyRecord<'a>>,
    agree: bool,
}

#[derive(Serialize)]
struct TableRecord<'a> {
    kind: &'static str,
    variant: Option<&'a str>,
    rows: &'a [NumberRow],
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    kind: &'static str,
    #[serde(flatten)]
    record: &'a T,
}

#[derive(Serialize)]
struct VerifyCsvRow<'a> {
    kind: &'static str,
    id: &'a str,
    params: String,
    status: &'static str,
    lhs: String,
    rhs: String,
    rel_diff: String,
    tol: String,
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Vacuous => "vacuous",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn quad_status(r: &QuadResult) -> &'static str {
    match (r.probe, r.pass) {
        (false, true) => "pass",
        (false, false) => "fail",
        (true, true) => "probe_pass",
        (true, false) => "probe_fail",
    }
}

impl Sink {
    pub fn new(out: Box<dyn Write>, format: Format) -> Self {
        Self { out, format, total: 0, failed: 0 }
    }

    pub fn finish(&mut self) -> io::Result<()> {
        self.out.flush()
    }

    fn json_line<T: Serialize>(&mut self, v: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, v)?;
        writeln!(self.out)
    }

    fn csv_rows<T: Serialize>(&mut self, header: bool, rows: impl IntoIterator<Item = T>) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(header).from_writer(Vec::new());
        for row in rows {
            w.serialize(row).map_err(io::Error::other)?;
        }
        let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
        self.out.write_all(&bytes)
    }

    pub fn polys(&mut self, seq: Sequence, n: usize, polys: &[(SequenceRoute, IntPoly)], agree: Option<bool>) -> io::Result<()> {
        let s = seq_name(seq);
        let records: Vec<PolyRecord> =
            polys.iter().map(|(r, p)| PolyRecord { seq: s, n, route: r.as_str(), coeffs: p }).collect();
        match (self.format, agree) {
            (Format::Json, None) => self.json_line(&records[0]),
            (Format::Json, Some(agree)) => self.json_line(&AllRoutesRecord { seq: s, n, routes: records, agree }),
            (Format::Csv, _) => {
                #[derive(Serialize)]
                struct Row<'a> {
                    seq: &'a str,
                    n: usize,
                    route: &'a str,
                    power: usize,
                    coeff: String,
                }
                let rows: Vec<Row> = records
                    .iter()
                    .flat_map(|r| {
                        r.coeffs.coeffs().iter().enumerate().map(move |(k, c)| Row {
                            seq: r.seq,
                            n,
                            route: r.route,
                            power: k,
                            coeff: c.to_string(),
                        })
                    })
                    .collect();
                self.csv_rows(true, rows)
            }
            (Format::Pretty, None) => writeln!(self.out, "{}", polys[0].1),
            (Format::Pretty, Some(agree)) => {
                for (route, p) in polys {
                    writeln!(self.out, "{route}: {p}")?;
                }
                writeln!(self.out, "routes agree: {}", if agree { "yes" } else { "NO" })
            }
        }
    }

    pub fn numbers(&mut self, kind: NumberKind, variant: Option<&str>, rows: &[NumberRow]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json_line(&TableRecord { kind: kind.as_str(), variant, rows }),
            Format::Csv => {
                #[derive(Serialize)]
                struct Row {
                    index: usize,
                    value: String,
                    agree: Option<bool>,
                }
                let rows: Vec<Row> =
                    rows.iter().map(|r| Row { index: r.index, value: r.value.to_string(), agree: r.agree }).collect();
                self.csv_rows(true, rows)
            }
            Format::Pretty => {
                for r in rows {
                    match r.agree {
                        None => writeln!(self.out, "{}: {}", r.index, r.value)?,
                        Some(true) => writeln!(self.out, "{}: {}  (all routes agree)", r.index, r.value)?,
                        Some(false) => {
                            let detail: Vec<String> =
                                r.routes.iter().flatten().map(|(k, v)| format!("{k}={v}")).collect();
                            writeln!(self.out, "{}: {}  DISAGREE {}", r.index, r.value, detail.join(" "))?
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn begin_verify(&mut self) -> io::Result<()> {
        if self.format == Format::Csv {
            writeln!(self.out, "kind,id,params,status,lhs,rhs,rel_diff,tol")?;
        }
        Ok(())
    }

    pub fn identity(&mut self, r: &IdentityReport) -> io::Result<()> {
        self.total += 1;
        if !r.passed() {
            self.failed += 1;
        }
        let range = format!("n={}..{}", r.n_range[0], r.n_range[1]);
        match self.format {
            Format::Json => self.json_line(&Tagged { kind: "exact", record: r }),
            Format::Csv => {
                let (lhs, rhs) = r.counterexample.as_ref().map_or((String::new(), String::new()), |c| (c.lhs.clone(), c.rhs.clone()));
                self.csv_rows(
                    false,
                    [VerifyCsvRow {
                        kind: "exact",
                        id: &r.id,
                        params: range,
                        status: status_name(r.status),
                        lhs,
                        rhs,
                        rel_diff: String::new(),
                        tol: "0".into(),
                    }],
                )
            }
            Format::Pretty => {
                writeln!(self.out, "{:<8} {:<18} {}", status_name(r.status).to_uppercase(), r.id, range)?;
                if let Some(c) = &r.counterexample {
                    writeln!(self.out, "         first failure at n={}: {} != {}", c.n, c.lhs, c.rhs)?;
                }
                Ok(())
            }
        }
    }

    pub fn quad(&mut self, r: &QuadResult) -> io::Result<()> {
        self.total += 1;
        if !r.ok() {
            self.failed += 1;
        }
        match self.format {
            Format::Json => self.json_line(&Tagged { kind: "numeric", record: r }),
            Format::Csv => self.csv_rows(
                false,
                [VerifyCsvRow {
                    kind: "numeric",
                    id: &r.id,
                    params: r.params.clone(),
                    status: quad_status(r),
                    lhs: r.lhs.to_string(),
                    rhs: r.rhs.to_string(),
                    rel_diff: format_float(&r.rel_diff, 6),
                    tol: r.tol.clone(),
                }],
            ),
            Format::Pretty => {
                writeln!(
                    self.out,
                    "{:<8} {:<18} {:<40} rel_diff={} tol={}",
                    quad_status(r).to_uppercase(),
                    r.id,
                    r.params,
                    format_float(&r.rel_diff, 3),
                    r.tol
                )?;
                if let Some(d) = &r.diagnostic {
                    writeln!(self.out, "         {d}")?;
                }
                Ok(())
            }
        }
    }

    pub fn end_verify(&mut self) -> io::Result<()> {
        if self.format == Format::Pretty {
            writeln!(self.out, "{} checks, {} failed", self.total, self.failed)?;
        }
        Ok(())
    }
}
