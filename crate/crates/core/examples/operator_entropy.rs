//! Block-diagonal density operators and their von Neumann entropy.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qsdc::operator::{von_neumann_entropy, HermitianOperator};
use qsdc::rate::rho_e;
use qsdc::{Announcement, AttackSpec, DisclosureScheme, SchemeKind};

fn main() -> qsdc::Result<()> {
    // a qubit |+><+| mixed with the maximally mixed state
    let plus = DMatrix::from_element(2, 2, Complex64::new(0.5, 0.0));
    let mixed = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.5, 0.0));
    let a = HermitianOperator::from_dense(plus)?;
    let b = HermitianOperator::from_dense(mixed)?;
    for w in [0.0, 0.25, 0.5, 1.0] {
        let rho = HermitianOperator::mixture(&[(w, &a), (1.0 - w, &b)])?;
        println!("weight {w:.2} on |+>: S = {:.6}", von_neumann_entropy(&rho)?);
    }

    let scheme = DisclosureScheme::new(SchemeKind::Weight, 2)?;
    let spec = AttackSpec::new(0.05, 0.05, 0.1)?;
    let rho = rho_e(0, &Announcement::Count(1), &scheme, &spec)?;
    println!(
        "\nEve's state for a = 0, weight 1, n = 2: dim {}, {} blocks, trace {:.12}, S = {:.6}",
        rho.dim(),
        rho.blocks().map_or(1, <[_]>::len),
        rho.trace(),
        von_neumann_entropy(&rho)?
    );
    Ok(())
}
