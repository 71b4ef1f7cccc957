//! Achievable rate at one configuration.
//!
//! ```text
//! cargo run --release --example rate_point -- parity 2 0.05 0.05
//! ```

use qsdc::rate::{achievable_rate, Basis, ModelConfig};
use qsdc::SchemeKind;

fn main() -> qsdc::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let scheme: SchemeKind = args.first().map_or("parity", String::as_str).parse()?;
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let qz: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.05);
    let qx: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(qz);

    let config = ModelConfig::new(scheme, n, Basis::Z, qz, qx)?;
    let r = achievable_rate(&config)?;
    println!("scheme={scheme} n={n} Q_Z={qz} Q_X={qx}");
    println!("  P_A(0)*   = {:.6}", r.p_star);
    println!("  t*        = {:.6}", r.t_star);
    println!("  chi_B     = {:.6}", r.chi_b);
    println!("  chi_E     = {:.6}", r.chi_e);
    println!("  C         = {:.6}  (bits per ensemble)", r.c);
    println!("  R = C / n = {:.6}  ({})", r.r, r.status);
    Ok(())
}
