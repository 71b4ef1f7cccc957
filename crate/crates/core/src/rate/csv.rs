//! CSV rows for rate results.

use crate::error::Error;
use crate::rate::engine::{ModelConfig, RateResult};

pub const RATE_CSV_HEADER: &str =
    "scheme,n,b,q_z,q_x,p_star,t_star,chi_b,chi_e,c_per_ensemble,r_per_pair,status";

/// Values with magnitude below this print as `0`.
pub const ZERO_CUTOFF: f64 = 1e-15;

/// Plain decimal with 9 significant digits and trailing zeros removed.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < ZERO_CUTOFF {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Replaces characters that would break a CSV field.
pub fn sanitize(msg: &str) -> String {
    msg.chars()
        .map(|c| match c {
            ',' => ';',
            '\n' | '\r' | '"' => ' ',
            other => other,
        })
        .collect()
}

fn prefix(scheme: &str, n: usize, b: u8, q_z: f64, q_x: f64) -> String {
    format!("{scheme},{n},{b},{},{}", format_float(q_z), format_float(q_x))
}

pub fn rate_row(r: &RateResult) -> String {
    let c = &r.config;
    format!(
        "{},{},{},{},{},{},{},{}",
        prefix(c.scheme().name(), c.n(), c.basis().bit(), c.q_z(), c.q_x()),
        format_float(r.p_star),
        format_float(r.t_star),
        format_float(r.chi_b),
        format_float(r.chi_e),
        format_float(r.c),
        format_float(r.r),
        r.status
    )
}

/// Row with empty result fields and status `error:<msg>`.
pub fn error_row(scheme: &str, n: usize, b: u8, q_z: f64, q_x: f64, err: &Error) -> String {
    format!("{},,,,,,,error:{}", prefix(scheme, n, b, q_z, q_x), sanitize(&err.to_string()))
}

pub fn result_row(config: &ModelConfig, result: &Result<RateResult, Error>) -> String {
    match result {
        Ok(r) => rate_row(r),
        Err(e) => error_row(config.scheme().name(), config.n(), config.basis().bit(), config.q_z(), config.q_x(), e),
    }
}

/// A parsed data row; result fields are `None` on error rows.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRecord {
    pub scheme: String,
    pub n: usize,
    pub b: u8,
    pub q_z: f64,
    pub q_x: f64,
    pub p_star: Option<f64>,
    pub t_star: Option<f64>,
    pub chi_b: Option<f64>,
    pub chi_e: Option<f64>,
    pub c: Option<f64>,
    pub r: Option<f64>,
    pub status: String,
}

/// Strict parser: exactly 12 fields, plain decimal floats.
pub fn parse_row(line: &str) -> Result<RateRecord, Error> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 12 {
        return Err(Error::InvalidConfig(format!("expected 12 fields, got {}", fields.len())));
    }
    let float = |s: &str| -> Result<f64, Error> {
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit() || c == '.' || c == '-') {
            return Err(Error::InvalidConfig(format!("bad float {s:?}")));
        }
        s.parse().map_err(|_| Error::InvalidConfig(format!("bad float {s:?}")))
    };
    let optional = |s: &str| if s.is_empty() { Ok(None) } else { float(s).map(Some) };
    let status = fields[11].to_string();
    if !(status == "ok" || status == "insecure" || status.starts_with("error:")) {
        return Err(Error::InvalidConfig(format!("bad status {status:?}")));
    }
    Ok(RateRecord {
        scheme: fields[0].to_string(),
        n: fields[1].parse().map_err(|_| Error::InvalidConfig("bad n".into()))?,
        b: fields[2].parse().map_err(|_| Error::InvalidConfig("bad b".into()))?,
        q_z: float(fields[3])?,
        q_x: float(fields[4])?,
        p_star: optional(fields[5])?,
        t_star: optional(fields[6])?,
        chi_b: optional(fields[7])?,
        chi_e: optional(fields[8])?,
        c: optional(fields[9])?,
        r: optional(fields[10])?,
        status,
    })
}
