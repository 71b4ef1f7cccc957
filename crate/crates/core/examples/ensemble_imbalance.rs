//! Outcome imbalance of unbalanced ensembles: the residual Bloch z component
//! that balancing removes.

use qsdc::sim::ensemble_imbalance_stats;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qsdc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    println!("{:>6} {:>9} {:>9} {:>9} {:>12}", "N", "mean dN", "sd dN", "sqrt(N)/2", "mean |z|");
    for n in [4, 16, 64, 256, 1024] {
        let stats = ensemble_imbalance_stats(n, 20_000, &mut rng)?;
        let z = stats.bloch_z.iter().map(|z| z.abs()).sum::<f64>() / stats.bloch_z.len() as f64;
        println!("{n:>6} {:>9.4} {:>9.4} {:>9.4} {:>12.5}", stats.mean, stats.std_dev, (n as f64).sqrt() / 2.0, z);
    }
    Ok(())
}
