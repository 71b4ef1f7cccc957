//! The Bell-diagonal attack family consistent with observed error rates.

use qsdc::attack::t_interval;
use qsdc::AttackSpec;

fn main() -> qsdc::Result<()> {
    for &(qz, qx) in &[(0.05, 0.05), (0.02, 0.08), (0.0, 0.0)] {
        let (lo, hi) = t_interval(qz, qx);
        println!("Q_Z = {qz}, Q_X = {qx}: t in [{lo:.3}, {hi:.3}]");
        for i in 0..=2 {
            let t = lo + (hi - lo) * i as f64 / 2.0;
            let (l00, l01, l10, l11) = AttackSpec::new(qz, qx, t)?.lambdas().as_tuple();
            println!("  t = {t:.3}: lambda = ({l00:.4}, {l01:.4}, {l10:.4}, {l11:.4})");
        }
    }
    match AttackSpec::new(0.05, 0.05, 0.2) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("t outside the interval is rejected: {e}"),
    }
    Ok(())
}
