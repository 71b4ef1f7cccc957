//! Finite-dimensional Hermitian operators, spectra and von Neumann entropy.
//!
//! Operators are stored as complex matrices, either dense or as a list of
//! blocks on pairwise disjoint basis-index subsets. Spectra of block
//! operators are computed per block and merged.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest dense dimension accepted by the eigensolver (`4^6`).
pub const DENSE_DIM_MAX: usize = 4096;

/// Absolute tolerance on `A - A†`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Trace tolerance for density operators.
pub const STATE_TRACE_TOL: f64 = 1e-10;

/// Most negative eigenvalue tolerated in a density operator.
pub const STATE_POSITIVITY_TOL: f64 = 1e-10;

/// Eigenvalues at or below this are zero inside entropy sums.
pub const EIGEN_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    indices: Vec<usize>,
    matrix: DMatrix<Complex64>,
}

impl Block {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Dense(DMatrix<Complex64>),
    Blocks(Vec<Block>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    repr: Repr,
}

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_hermitian(m: &DMatrix<Complex64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotHermitian { deviation: f64::INFINITY });
    }
    let deviation = hermitian_deviation(m);
    if deviation > HERMITIAN_TOL || !deviation.is_finite() {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

impl HermitianOperator {
    pub fn from_dense(matrix: DMatrix<Complex64>) -> Result<Self> {
        check_hermitian(&matrix)?;
        Ok(Self { dim: matrix.nrows(), repr: Repr::Dense(matrix) })
    }

    pub fn from_real_symmetric(matrix: &DMatrix<f64>) -> Result<Self> {
        Self::from_dense(matrix.map(|x| Complex64::new(x, 0.0)))
    }

    /// Embeds blocks on disjoint index subsets of a `dim`-dimensional space;
    /// uncovered indices carry zero rows and columns.
    pub fn assemble_block_diagonal(
        dim: usize,
        blocks: Vec<(Vec<usize>, DMatrix<Complex64>)>,
    ) -> Result<Self> {
        let mut seen = vec![false; dim];
        let mut out = Vec::with_capacity(blocks.len());
        for (indices, matrix) in blocks {
            if matrix.nrows() != indices.len() {
                return Err(Error::InvalidConfig(format!(
                    "block of size {} listed with {} indices",
                    matrix.nrows(),
                    indices.len()
                )));
            }
            check_hermitian(&matrix)?;
            for &i in &indices {
                if i >= dim {
                    return Err(Error::OutOfRange(format!("basis index {i} >= dimension {dim}")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::OverlappingBlocks(i));
                }
            }
            out.push(Block { indices, matrix });
        }
        Ok(Self { dim, repr: Repr::Blocks(out) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> Option<&[Block]> {
        match &self.repr {
            Repr::Blocks(b) => Some(b),
            Repr::Dense(_) => None,
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Blocks(blocks) => {
                let mut m = DMatrix::zeros(self.dim, self.dim);
                for b in blocks {
                    for (bi, &i) in b.indices.iter().enumerate() {
                        for (bj, &j) in b.indices.iter().enumerate() {
                            m[(i, j)] = b.matrix[(bi, bj)];
                        }
                    }
                }
                m
            }
        }
    }

    /// Drops the block structure.
    pub fn densified(&self) -> Self {
        Self { dim: self.dim, repr: Repr::Dense(self.to_dense()) }
    }

    pub fn trace(&self) -> f64 {
        match &self.repr {
            Repr::Dense(m) => m.trace().re,
            Repr::Blocks(blocks) => blocks.iter().map(|b| b.matrix.trace().re).sum(),
        }
    }

    /// `Σ w_i A_i` as a dense operator.
    pub fn mixture(terms: &[(f64, &HermitianOperator)]) -> Result<Self> {
        let dim = terms
            .first()
            .map(|(_, op)| op.dim)
            .ok_or_else(|| Error::InvalidConfig("empty mixture".into()))?;
        let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
        for (w, op) in terms {
            if op.dim != dim {
                return Err(Error::InvalidConfig("mixing operators of different dimension".into()));
            }
            acc += op.to_dense() * Complex64::new(*w, 0.0);
        }
        Ok(Self { dim, repr: Repr::Dense(acc) })
    }

    /// `V A V†`.
    pub fn conjugate_by(&self, v: &DMatrix<Complex64>) -> Result<Self> {
        let m = v * self.to_dense() * v.adjoint();
        // restore exact Hermiticity lost to rounding
        let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Self::from_dense(sym)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eig_hermitian(self)
    }

    /// Checks trace and positivity against the density-operator tolerances.
    pub fn validate_state(&self) -> Result<Vec<f64>> {
        let tr = self.trace();
        if (tr - 1.0).abs() > STATE_TRACE_TOL {
            return Err(Error::NotDensityOperator(format!("trace {tr}")));
        }
        let eigs = self.eigenvalues()?;
        if let Some(&min) = eigs.first() {
            if min < -STATE_POSITIVITY_TOL {
                return Err(Error::NotDensityOperator(format!("eigenvalue {min}")));
            }
        }
        Ok(eigs)
    }
}

/// Ascending eigenvalues of a Hermitian matrix given as a dense complex matrix.
///
/// Matrices whose imaginary parts are identically zero go through the real
/// symmetric solver.
pub fn dense_hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n > DENSE_DIM_MAX {
        return Err(Error::DimensionTooLarge { dim: n, max: DENSE_DIM_MAX });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.iter().all(|z| z.im == 0.0) {
        return Ok(real_symmetric_eigenvalues(m.map(|z| z.re)));
    }
    let mut eigs: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    Ok(eigs)
}

/// Ascending eigenvalues of a real symmetric matrix.
pub fn real_symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    match m.nrows() {
        0 => Vec::new(),
        1 => vec![m[(0, 0)]],
        _ => {
            let mut eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
            eigs.sort_by(f64::total_cmp);
            eigs
        }
    }
}

/// Sorted real spectrum; block operators are diagonalized block by block.
pub fn eig_hermitian(op: &HermitianOperator) -> Result<Vec<f64>> {
    match &op.repr {
        Repr::Dense(m) => dense_hermitian_eigenvalues(m),
        Repr::Blocks(blocks) => {
            let covered: usize = blocks.iter().map(|b| b.indices.len()).sum();
            let mut eigs = vec![0.0; op.dim - covered];
            for b in blocks {
                eigs.extend(dense_hermitian_eigenvalues(&b.matrix)?);
            }
            eigs.sort_by(f64::total_cmp);
            Ok(eigs)
        }
    }
}

/// `-Σ μ log2 μ` over eigenvalues above [`EIGEN_FLOOR`].
pub fn entropy_of_spectrum(eigs: &[f64]) -> f64 {
    let s: f64 = eigs
        .iter()
        .filter(|&&mu| mu > EIGEN_FLOOR)
        .map(|&mu| -mu * mu.log2())
        .sum();
    s.max(0.0)
}

/// Von Neumann entropy in bits of a density operator.
pub fn von_neumann_entropy(state: &HermitianOperator) -> Result<f64> {
    let eigs = state.validate_state()?;
    Ok(entropy_of_spectrum(&eigs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_hermitian(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
        let a = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (&a + a.adjoint()) * c(0.5)
    }

    fn random_state(dim: usize, rng: &mut impl Rng) -> HermitianOperator {
        let a = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let rho = &a * a.adjoint();
        let tr = rho.trace();
        let rho = rho / tr;
        HermitianOperator::from_dense((&rho + rho.adjoint()) * c(0.5)).unwrap()
    }

    fn random_unitary(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
        let a = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        a.qr().q()
    }

    /// Number of eigenvalues strictly below `x`, from the signs of the LDL†
    /// pivots of `A - xI` (Sylvester's law of inertia).
    fn count_below(a: &DMatrix<Complex64>, x: f64) -> usize {
        let n = a.nrows();
        let mut m = a.clone();
        for i in 0..n {
            m[(i, i)] -= c(x);
        }
        let mut negatives = 0;
        for k in 0..n {
            let mut pivot = m[(k, k)].re;
            if pivot == 0.0 {
                pivot = -1e-300;
            }
            if pivot < 0.0 {
                negatives += 1;
            }
            for i in k + 1..n {
                let factor = m[(i, k)] / pivot;
                for j in k + 1..n {
                    let delta = factor * m[(k, j)];
                    m[(i, j)] -= delta;
                }
            }
        }
        negatives
    }

    fn bisection_spectrum(a: &DMatrix<Complex64>) -> Vec<f64> {
        let n = a.nrows();
        let bound = a.iter().map(|z| z.norm()).sum::<f64>() + 1.0;
        (0..n)
            .map(|k| {
                // smallest x with more than k eigenvalues below it
                let (mut lo, mut hi) = (-bound, bound);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if count_below(a, mid) > k {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }

    #[test]
    fn eigen_examples() {
        let half = HermitianOperator::from_dense(DMatrix::from_diagonal_element(2, 2, c(0.5))).unwrap();
        assert_eq!(half.eigenvalues().unwrap(), vec![0.5, 0.5]);

        let v = nalgebra::DVector::from_vec(vec![c(0.5), c(0.5), c(0.5), c(0.5)]);
        let proj = HermitianOperator::from_dense(&v * v.adjoint()).unwrap();
        let eigs = proj.eigenvalues().unwrap();
        for (got, want) in eigs.iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn eigen_matches_inertia_bisection_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let a = random_hermitian(8, &mut rng);
            let got = HermitianOperator::from_dense(a.clone()).unwrap().eigenvalues().unwrap();
            let oracle = bisection_spectrum(&a);
            for (g, o) in got.iter().zip(&oracle) {
                assert!((g - o).abs() < 1e-9, "{got:?} vs {oracle:?}");
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = DMatrix::from_diagonal_element(2, 2, c(0.5));
        m[(0, 1)] = Complex64::new(0.1, 0.2);
        m[(1, 0)] = Complex64::new(0.1, 0.2);
        assert!(matches!(HermitianOperator::from_dense(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn entropy_examples() {
        let mixed = HermitianOperator::from_dense(DMatrix::from_diagonal_element(2, 2, c(0.5))).unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap() - 1.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let psi = nalgebra::DVector::from_fn(4, |_, _| Complex64::new(rng.gen(), rng.gen()));
        let psi = &psi / c(psi.norm());
        let pure = HermitianOperator::from_dense(&psi * psi.adjoint()).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-9);

        let mut two = DMatrix::zeros(4, 4);
        two[(0, 0)] = c(0.5);
        two[(3, 3)] = c(0.5);
        let two = HermitianOperator::from_dense(two).unwrap();
        assert!((von_neumann_entropy(&two).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_non_states() {
        let not_normalized =
            HermitianOperator::from_dense(DMatrix::from_diagonal_element(2, 2, c(0.6))).unwrap();
        assert!(matches!(von_neumann_entropy(&not_normalized), Err(Error::NotDensityOperator(_))));
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.2);
        m[(1, 1)] = c(-0.2);
        let negative = HermitianOperator::from_dense(m).unwrap();
        assert!(matches!(von_neumann_entropy(&negative), Err(Error::NotDensityOperator(_))));
    }

    #[test]
    fn block_assembly() {
        let one = |x: f64| DMatrix::from_element(1, 1, c(x));
        let op = HermitianOperator::assemble_block_diagonal(2, vec![(vec![0], one(0.5)), (vec![1], one(0.5))])
            .unwrap();
        assert!((von_neumann_entropy(&op).unwrap() - 1.0).abs() < 1e-12);

        let overlap = HermitianOperator::assemble_block_diagonal(3, vec![(vec![0, 1], DMatrix::zeros(2, 2)), (vec![1], one(1.0))]);
        assert!(matches!(overlap, Err(Error::OverlappingBlocks(1))));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let state = random_state(6, &mut rng);
        let single = HermitianOperator::assemble_block_diagonal(6, vec![((0..6).collect(), state.to_dense())]).unwrap();
        assert_eq!(single.eigenvalues().unwrap(), state.eigenvalues().unwrap());
    }

    #[test]
    fn block_and_dense_spectra_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_state(3, &mut rng).to_dense() * c(0.4);
        let b = random_state(4, &mut rng).to_dense() * c(0.6);
        let op = HermitianOperator::assemble_block_diagonal(
            9,
            vec![(vec![8, 2, 5], a), (vec![0, 1, 3, 7], b)],
        )
        .unwrap();
        let dense = op.densified();
        let s_block = von_neumann_entropy(&op).unwrap();
        let s_dense = von_neumann_entropy(&dense).unwrap();
        assert!((s_block - s_dense).abs() < 1e-9);
        assert_eq!(op.to_dense(), dense.to_dense());
    }

    #[test]
    fn eigenvalue_sum_equals_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..100 {
            let dim = 2 + (i * 7) % 63;
            let a = random_hermitian(dim, &mut rng);
            let op = HermitianOperator::from_dense(a).unwrap();
            let sum: f64 = op.eigenvalues().unwrap().iter().sum();
            assert!((sum - op.trace()).abs() < 1e-10, "dim {dim}");
        }
    }

    #[test]
    fn entropy_is_unitarily_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for dim in [2usize, 3, 5, 8, 16] {
            let rho = random_state(dim, &mut rng);
            let v = random_unitary(dim, &mut rng);
            let rotated = rho.conjugate_by(&v).unwrap();
            let s0 = von_neumann_entropy(&rho).unwrap();
            let s1 = von_neumann_entropy(&rotated).unwrap();
            assert!((s0 - s1).abs() < 1e-9, "dim {dim}: {s0} vs {s1}");
        }
    }

    #[test]
    fn dimension_cap_enforced() {
        let big = DMatrix::<Complex64>::zeros(DENSE_DIM_MAX + 1, 1);
        assert!(dense_hermitian_eigenvalues(&big).is_err());
    }
}
