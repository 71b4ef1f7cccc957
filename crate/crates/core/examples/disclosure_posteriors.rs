//! What each disclosure scheme reveals about Alice's outcome string.

use qsdc::{DisclosureScheme, SchemeKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qsdc::Result<()> {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kind in SchemeKind::ALL {
        let scheme = DisclosureScheme::new(kind, n)?;
        println!("{kind} (n = {n})");
        for s in scheme.announcements() {
            let post = scheme.posterior(&s)?;
            let ks: Vec<String> = post.outcomes.iter().map(ToString::to_string).collect();
            println!("  s = {s:<5} P(s) = {:.4}  K(s) = {{{}}}", post.p_s, ks.join(", "));
        }
        let k = "101".parse()?;
        println!("  sampled announcement for k = 101: {}", scheme.announce(k, &mut rng));
    }
    Ok(())
}
