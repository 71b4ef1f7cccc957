//! Decoding error of the balanced-count protocol: closed form against
//! simulation, noiseless and with bit flips.

use qsdc::rate::Basis;
use qsdc::sim::{cdm06_error_probability, run_session, EnsembleSizing, SessionConfig};
use qsdc::AttackSpec;

fn main() -> qsdc::Result<()> {
    for attack in [AttackSpec::noiseless(), AttackSpec::new(0.05, 0.05, 0.1)?] {
        println!("Q_Z = {}, Q_X = {}", attack.q_z(), attack.q_x());
        println!("{:>3} {:>9} {:>9} {:>9}", "m", "analytic", "simulated", "std err");
        for m in 1..=5 {
            let config = SessionConfig::cdm06(EnsembleSizing::Balanced(m), attack, 50_000, 1);
            let report = run_session(&config)?;
            println!(
                "{m:>3} {:>9.5} {:>9.5} {:>9.5}",
                cdm06_error_probability(m, Basis::Z, &attack, 0.5)?,
                report.p_e_hat.unwrap_or(f64::NAN),
                report.p_e_std_error.unwrap_or(f64::NAN)
            );
        }
    }

    let config = SessionConfig::cdm06(EnsembleSizing::RawQubits(5), AttackSpec::noiseless(), 50_000, 2);
    let report = run_session(&config)?;
    println!("\nraw ensembles of 5 qubits, discarded qubits -> trials: {:?}", report.discards);
    Ok(())
}
