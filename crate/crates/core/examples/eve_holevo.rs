//! Eve's Holevo quantity along the attack family, with the symmetry classes
//! and spectral reductions used to evaluate it.

use qsdc::attack::t_interval;
use qsdc::rate::EveModel;
use qsdc::{AttackSpec, DisclosureScheme, SchemeKind};

fn main() -> qsdc::Result<()> {
    let (qz, qx, p) = (0.05, 0.05, 0.55);
    for kind in SchemeKind::ALL {
        let model = EveModel::new(DisclosureScheme::new(kind, 3)?)?;
        println!("{kind}, n = 3");
        for class in model.classes() {
            println!(
                "  class of {} with {} announcement(s), weight {:.4}",
                class.representative,
                class.members.len(),
                class.weight
            );
        }
        let (lo, hi) = t_interval(qz, qx);
        for i in 0..=4 {
            let t = lo + (hi - lo) * i as f64 / 4.0;
            let spec = AttackSpec::new(qz, qx, t)?;
            println!("  t = {t:.4}  chi_E = {:.6}  paths {:?}", model.chi_e(&spec, p)?, model.paths(&spec));
        }
    }
    Ok(())
}
