//! A seeded Monte Carlo session of the disclosure model: the plug-in
//! estimate of Bob's information against the analytic value.

use qsdc::rate::{achievable_rate, BobModel, Basis, ModelConfig};
use qsdc::sim::{run_session, SessionConfig};
use qsdc::{AttackSpec, DisclosureScheme, SchemeKind};

fn main() -> qsdc::Result<()> {
    let (kind, n, q) = (SchemeKind::Parity, 2, 0.05);
    let optimum = achievable_rate(&ModelConfig::new(kind, n, Basis::Z, q, q)?)?;
    let attack = AttackSpec::new(q, q, optimum.t_star)?;
    let config = SessionConfig::model(kind, n, Basis::Z, attack, optimum.p_star, 200_000, 42);
    let report = run_session(&config)?;

    let bob = BobModel::new(&DisclosureScheme::new(kind, n)?, 0, q, q)?;
    print!("{}", report.to_key_value());
    println!("analytic chi_B = {:.6}", bob.chi_b(optimum.p_star));
    Ok(())
}
