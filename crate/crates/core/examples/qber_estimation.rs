//! Channel diagnosis: per-basis error rates with Hoeffding intervals.

use qsdc::sim::estimate_qber;
use qsdc::AttackSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qsdc::Result<()> {
    let attack = AttackSpec::new(0.03, 0.07, 0.04)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for pairs in [1_000, 10_000, 100_000] {
        let est = estimate_qber(&attack, pairs, &mut rng)?;
        for (name, q, iv) in [("Z", attack.q_z(), est.z), ("X", attack.q_x(), est.x)] {
            println!(
                "{pairs:>7} pairs, {name}: {:.4} in [{:.4}, {:.4}] from {} sifted (true {q}, covered: {})",
                iv.estimate,
                iv.lower,
                iv.upper,
                iv.sifted,
                iv.contains(q)
            );
        }
    }
    Ok(())
}
