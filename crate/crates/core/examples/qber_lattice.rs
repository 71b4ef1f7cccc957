//! Rate over a coarse (Q_Z, Q_X) lattice, drawn as a shaded map.

use qsdc::rate::{sweep, Basis, EngineSettings, ModelConfig};
use qsdc::SchemeKind;

const SHADES: &[u8] = b" .:-=+*#%@";

fn main() -> qsdc::Result<()> {
    let steps = 9;
    let axis: Vec<f64> = (0..steps).map(|i| 0.12 * i as f64 / (steps - 1) as f64).collect();
    let mut configs = Vec::new();
    for &qz in &axis {
        for &qx in &axis {
            configs.push(ModelConfig::new(SchemeKind::FullOutcome, 2, Basis::Z, qz, qx)?);
        }
    }
    let rates: Vec<f64> = sweep(&configs, &EngineSettings::with_grid(17, 1e-6))
        .into_iter()
        .map(|r| r.map(|r| r.r))
        .collect::<qsdc::Result<_>>()?;
    let top = rates.iter().cloned().fold(0.0, f64::max);

    println!("full outcome, n = 2; rows Q_Z, columns Q_X (0 .. 0.12); max R = {top:.4}");
    for (i, &qz) in axis.iter().enumerate() {
        let row: String = rates[i * steps..(i + 1) * steps]
            .iter()
            .map(|&r| SHADES[((r / top) * (SHADES.len() - 1) as f64).round() as usize] as char)
            .collect();
        println!("{qz:5.3} |{row}|");
    }
    Ok(())
}
