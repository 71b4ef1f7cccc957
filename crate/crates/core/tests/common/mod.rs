//! Oracles shared by the integration tests and the acceptance harness.
//! Everything here is written from the physical and combinatorial
//! definitions, without calling into the library's numerical paths.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use qsdc::SchemeKind;

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `P(s|k)` by enumerating every random choice of the announcement rule.
/// `k[i]` is the bit at position `i`; announcements are rendered as text
/// (bit strings for full and excess, decimal for weight and parity).
pub fn announcement_law(kind: SchemeKind, k: &[bool]) -> BTreeMap<String, f64> {
    let n = k.len();
    let ones = k.iter().filter(|&&b| b).count();
    let text = |bits: &[bool]| bits.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
    let mut law = BTreeMap::new();
    match kind {
        SchemeKind::FullOutcome => {
            law.insert(text(k), 1.0);
        }
        SchemeKind::Weight => {
            law.insert(ones.to_string(), 1.0);
        }
        SchemeKind::Parity => {
            law.insert((ones % 2).to_string(), 1.0);
        }
        SchemeKind::ExcessBits => {
            let zeros = n - ones;
            let majority = ones > zeros;
            let excess = ones.abs_diff(zeros);
            let positions: Vec<usize> = (0..n).filter(|&i| k[i] == majority).collect();
            // every subset of the majority positions of size `excess`
            let mut choices = 0usize;
            let mut found = Vec::new();
            for mask in 0u64..(1 << positions.len()) {
                if mask.count_ones() as usize != excess {
                    continue;
                }
                let mut s = vec![false; n];
                for (j, &pos) in positions.iter().enumerate() {
                    if (mask >> j) & 1 == 1 {
                        s[pos] = true;
                    }
                }
                found.push(text(&s));
                choices += 1;
            }
            for s in found {
                *law.entry(s).or_insert(0.0) += 1.0 / choices as f64;
            }
        }
    }
    law
}

pub fn bits_of(value: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (value >> (n - 1 - i)) & 1 == 1).collect()
}

/// Joint law of `(s, k)` with uniform `k`: `s -> [(k, P(k, s))]`.
pub fn joint_law(kind: SchemeKind, n: usize) -> BTreeMap<String, Vec<(u64, f64)>> {
    let mut joint: BTreeMap<String, Vec<(u64, f64)>> = BTreeMap::new();
    let pk = 1.0 / (1u64 << n) as f64;
    for value in 0..(1u64 << n) {
        for (s, p) in announcement_law(kind, &bits_of(value, n)) {
            joint.entry(s).or_default().push((value, pk * p));
        }
    }
    joint
}

/// Closed-form `|K(s)|` from the scheme definitions.
pub fn k_size_closed_form(kind: SchemeKind, n: usize, s: &str) -> f64 {
    match kind {
        SchemeKind::FullOutcome => 1.0,
        SchemeKind::Weight => binom(n, s.parse().unwrap()),
        SchemeKind::Parity => {
            let c: usize = s.parse().unwrap();
            (0..=n).filter(|w| w % 2 == c).map(|w| binom(n, w)).sum()
        }
        SchemeKind::ExcessBits => {
            let marked = s.chars().filter(|&c| c == '1').count();
            let rest = n - marked;
            let f_s = if marked == 0 { 1.0 } else { 2.0 };
            if rest % 2 == 1 {
                0.0
            } else {
                binom(rest, rest / 2) * f_s
            }
        }
    }
}

type CMat = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Eve's normalized state for one pair after Alice measures basis `a` with
/// outcome `k`, from the purification
/// `Σ √λ_ij (I ⊗ X^i Z^j)|Φ⁺⟩_AB |ij⟩_E` with Bob traced out.
pub fn eve_pair_state(lambdas: [[f64; 2]; 2], a: u8, k: u8) -> CMat {
    let id = CMat::identity(2, 2);
    let x = CMat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
    let z = CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
    let h = 0.5f64.sqrt();
    let phi = CMat::from_column_slice(4, 1, &[c(h), c(0.0), c(0.0), c(h)]);
    // |Ψ⟩ on A (2) ⊗ B (2) ⊗ E (4)
    let mut psi = CMat::zeros(16, 1);
    for i in 0..2 {
        for j in 0..2 {
            let mut pauli = id.clone();
            if i == 1 {
                pauli = &x * pauli;
            }
            if j == 1 {
                pauli = &z * pauli;
            }
            let ab = kron(&id, &pauli) * &phi;
            let mut e = CMat::zeros(4, 1);
            e[(2 * i + j, 0)] = c(1.0);
            psi += kron(&ab, &e) * c(lambdas[i][j].sqrt());
        }
    }
    let alice = if a == 0 {
        let mut v = CMat::zeros(2, 1);
        v[(k as usize, 0)] = c(1.0);
        v
    } else {
        let sign = if k == 0 { 1.0 } else { -1.0 };
        CMat::from_column_slice(2, 1, &[c(h), c(sign * h)])
    };
    // ⟨k_a|_A |Ψ⟩ as a (B ⊗ E) vector, then trace out B
    let projected = kron(&alice.adjoint(), &CMat::identity(8, 8)) * &psi;
    let mut rho = CMat::zeros(4, 4);
    for b in 0..2 {
        let e = projected.rows(4 * b, 4).into_owned();
        rho += &e * e.adjoint();
    }
    let tr = rho.trace().re;
    rho / c(tr)
}

pub fn lambdas(qz: f64, qx: f64, t: f64) -> [[f64; 2]; 2] {
    [
        [1.0 - (t + qz + qx) / 2.0, (t + qx - qz) / 2.0],
        [(t + qz - qx) / 2.0, (qz + qx - t) / 2.0],
    ]
}

fn entropy(m: &CMat) -> f64 {
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .filter(|&&l| l > 1e-14)
        .map(|&l| -l * l.log2())
        .sum()
}

/// `χ_E = I(A; E S)` by dense assembly of every `4^n × 4^n` conditional
/// state, with the announcement law from [`joint_law`].
pub fn dense_chi_e(kind: SchemeKind, n: usize, qz: f64, qx: f64, t: f64, p: f64) -> f64 {
    let lam = lambdas(qz, qx, t);
    let pair: Vec<Vec<CMat>> = (0..2u8)
        .map(|a| (0..2u8).map(|k| eve_pair_state(lam, a, k)).collect())
        .collect();
    let dim = 1usize << (2 * n);
    let mut chi = 0.0;
    for (_, entries) in joint_law(kind, n) {
        let p_s: f64 = entries.iter().map(|(_, w)| w).sum();
        let mut rho = [CMat::zeros(dim, dim), CMat::zeros(dim, dim)];
        for (a, slot) in rho.iter_mut().enumerate() {
            for &(value, w) in &entries {
                let bits = bits_of(value, n);
                let product = bits
                    .iter()
                    .fold(CMat::identity(1, 1), |acc, &b| kron(&acc, &pair[a][b as usize]));
                *slot += product * c(w / p_s);
            }
        }
        let mix = &rho[0] * c(p) + &rho[1] * c(1.0 - p);
        chi += p_s * (entropy(&mix) - p * entropy(&rho[0]) - (1.0 - p) * entropy(&rho[1]));
    }
    chi
}

/// Exact decoding error of the balanced-count decoder at zero noise and
/// `P_A(0) = 1/2`, by enumerating Bob's `2^{2m}` outcome strings: in the
/// matching basis he always decodes correctly; otherwise his outcomes are
/// uniform and he errs exactly when they are balanced.
pub fn enumerated_cdm06_error(m: usize) -> f64 {
    let total = 1u64 << (2 * m);
    let balanced = (0..total).filter(|v| v.count_ones() as usize == m).count();
    0.5 * balanced as f64 / total as f64
}
