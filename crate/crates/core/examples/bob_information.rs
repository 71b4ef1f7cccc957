//! Bob's channel and his Holevo quantity (a classical mutual information).

use qsdc::bits::BitString;
use qsdc::rate::{p_bob_given_alice, BobModel};
use qsdc::{DisclosureScheme, SchemeKind};

fn main() -> qsdc::Result<()> {
    let (qz, qx) = (0.05, 0.05);
    println!("P(k'|k) for n = 2, a = 0 (Z), b = 0 (Z):");
    for k in BitString::all(2)? {
        let row: Vec<String> = BitString::all(2)?
            .map(|kp| format!("{:.4}", p_bob_given_alice(0, 0, k, kp, qz, qx)))
            .collect();
        println!("  k = {k}: {}", row.join(" "));
    }
    println!("with a = 1 Bob's Z outcomes are uniform: {:.4}", p_bob_given_alice(1, 0, BitString::zeros(2)?, BitString::zeros(2)?, qz, qx));

    println!("\nchi_B against P_A(0), n = 2:");
    for kind in SchemeKind::ALL {
        let model = BobModel::new(&DisclosureScheme::new(kind, 2)?, 0, qz, qx)?;
        let row: Vec<String> = [0.1, 0.3, 0.5, 0.7, 0.9].iter().map(|&p| format!("{:.4}", model.chi_b(p))).collect();
        println!("  {kind:>6}: {}", row.join(" "));
    }
    Ok(())
}
