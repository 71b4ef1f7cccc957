//! Rate against ensemble size for every disclosure scheme.

use qsdc::rate::{sweep, Basis, EngineSettings, ModelConfig};
use qsdc::SchemeKind;

fn main() -> qsdc::Result<()> {
    let q = 0.05;
    let n_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let mut configs = Vec::new();
    for kind in SchemeKind::ALL {
        for n in 1..=n_max {
            configs.push(ModelConfig::new(kind, n, Basis::Z, q, q)?);
        }
    }
    let results = sweep(&configs, &EngineSettings::default());

    println!("{:>7} {:>2} {:>9} {:>9} {:>7}", "scheme", "n", "C", "R", "p*");
    for (config, result) in configs.iter().zip(results) {
        let r = result?;
        println!(
            "{:>7} {:>2} {:>9.5} {:>9.5} {:>7.4}",
            config.scheme(),
            config.n(),
            r.c,
            r.r,
            r.p_star
        );
    }
    Ok(())
}
