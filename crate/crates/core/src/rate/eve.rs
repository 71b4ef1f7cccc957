//! Eve's conditional probe states `ρ_{E|a,s}` and her Holevo quantity `χ_E`.
//!
//! Each probe lives in a 4-dimensional space with orthonormal basis
//! `e_fg` (index `2f + g`). After Alice measures basis `a` with outcome
//! `k_i`, probe `i` is left in one of two orthogonal, sub-normalized states
//! labelled by `r`:
//!
//! ```text
//! a = 0:  ξ_r(k) = √λ_r0 e_r0 + (-1)^(k⊕r) √λ_r1 e_r1
//! a = 1:  ξ_r(k) = √λ_0r e_0r + (-1)^k     √λ_1r e_1r
//! ```
//!
//! and `ρ_{E|a,s} = Σ_k P(k|s) Σ_r ⊗_i |ξ_{r_i}(k_i)⟩⟨ξ_{r_i}(k_i)|`.
//! For `a = 0` the label `r` fixes every `f` bit, for `a = 1` every `g` bit,
//! so both states are block diagonal with `2^n` blocks of size `2^n`.
//!
//! The mixture `p ρ_{E|0,s} + (1-p) ρ_{E|1,s}` has no such blocks. Two exact
//! reductions are used, whichever is cheaper:
//!
//! * Gram: the mixture is `V Vᵀ` for the `2·2^n·|K(s)|` weighted product
//!   vectors above, so its nonzero spectrum is that of `Vᵀ V`, whose entries
//!   are products of per-probe overlaps.
//! * Sectors: for `x` with `K(s) ⊕ x = K(s)`, sign flips `Z^x` on the `f` bits
//!   and on the `g` bits each commute with both states, splitting the space
//!   into joint eigenspaces.
//!
//! All matrices here are real in this basis.

use std::collections::{BTreeMap, HashMap, HashSet};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::attack::{AttackSpec, Lambdas};
use crate::disclosure::{Announcement, DisclosureScheme, SchemeKind};
use crate::error::{Error, Result};
use crate::operator::{
    entropy_of_spectrum, real_symmetric_eigenvalues, von_neumann_entropy, HermitianOperator,
    DENSE_DIM_MAX,
};

/// `[a][r][k]` → per-probe vector in the `e_fg` basis.
type ProbeVectors = [[[[f64; 4]; 2]; 2]; 2];

fn probe_vectors(l: &Lambdas) -> ProbeVectors {
    let sq = |i: usize, j: usize| l.get(i, j).sqrt();
    let mut xi = [[[[0.0; 4]; 2]; 2]; 2];
    for r in 0..2 {
        for k in 0..2 {
            let v = &mut xi[0][r][k];
            v[2 * r] = sq(r, 0);
            v[2 * r + 1] = if k ^ r == 1 { -sq(r, 1) } else { sq(r, 1) };
            let v = &mut xi[1][r][k];
            v[r] = sq(0, r);
            v[2 + r] = if k == 1 { -sq(1, r) } else { sq(1, r) };
        }
    }
    xi
}

/// Overlaps between per-probe states, indexed by labels `4a + 2r + k`.
fn overlap_table(xi: &ProbeVectors) -> [[f64; 8]; 8] {
    let mut t = [[0.0; 8]; 8];
    for u in 0..8 {
        for v in 0..8 {
            let x = &xi[u >> 2][(u >> 1) & 1][u & 1];
            let y = &xi[v >> 2][(v >> 1) & 1][v & 1];
            t[u][v] = x.iter().zip(y).map(|(a, b)| a * b).sum();
        }
    }
    t
}

/// Dense index of the product basis vector with probe bits `f`, `g`.
/// Bit `b` of `f` and `g` (position `n-1-b`) selects the factor `4^b`.
pub fn product_index(f: u64, g: u64, n: usize) -> usize {
    (0..n).fold(0usize, |acc, b| {
        acc | ((((f >> b) & 1) << 1 | ((g >> b) & 1)) as usize) << (2 * b)
    })
}

/// `σ_f[g, g']` (`a = 0`, flat `[f][g][g']`) and `τ_g[f, f']` (`a = 1`, flat
/// `[g][f][f']`) for uniform weights on `outcomes`. With `labels`, only
/// entries between equally labelled indices are filled.
fn conditional_blocks(
    xi: &ProbeVectors,
    outcomes: &[u64],
    n: usize,
    labels: Option<&[usize]>,
) -> (Vec<f64>, Vec<f64>) {
    let d = 1usize << n;
    let w = 1.0 / outcomes.len() as f64;
    let mut sigma = vec![0.0; d * d * d];
    let mut tau = vec![0.0; d * d * d];
    for r in 0..d as u64 {
        for x in 0..d as u64 {
            for y in x..d as u64 {
                if labels.is_some_and(|l| l[x as usize] != l[y as usize]) {
                    continue;
                }
                let (mut s, mut t) = (0.0, 0.0);
                for &k in outcomes {
                    let (mut ps, mut pt) = (w, w);
                    for b in 0..n {
                        let (rb, kb) = (((r >> b) & 1) as usize, ((k >> b) & 1) as usize);
                        let (xb, yb) = (((x >> b) & 1) as usize, ((y >> b) & 1) as usize);
                        // a = 0: r is the f bit, x/y are g bits
                        let v0 = &xi[0][rb][kb];
                        ps *= v0[2 * rb + xb] * v0[2 * rb + yb];
                        // a = 1: r is the g bit, x/y are f bits
                        let v1 = &xi[1][rb][kb];
                        pt *= v1[2 * xb + rb] * v1[2 * yb + rb];
                    }
                    s += ps;
                    t += pt;
                }
                let base = r as usize * d * d;
                sigma[base + x as usize * d + y as usize] = s;
                sigma[base + y as usize * d + x as usize] = s;
                tau[base + x as usize * d + y as usize] = t;
                tau[base + y as usize * d + x as usize] = t;
            }
        }
    }
    (sigma, tau)
}

/// Announcements whose conditional states are related by a probe relabeling
/// (a permutation of positions or a joint sign flip), so they share every
/// entropy entering `χ_E`.
#[derive(Debug, Clone)]
pub struct AnnouncementClass {
    pub representative: Announcement,
    pub members: Vec<Announcement>,
    /// `Σ P(s)` over the members.
    pub weight: f64,
}

fn class_key(scheme: &DisclosureScheme, s: &Announcement) -> u64 {
    let n = scheme.n() as u64;
    match (scheme.kind(), s) {
        (SchemeKind::FullOutcome | SchemeKind::Parity, _) => 0,
        (SchemeKind::Weight, Announcement::Count(c)) => (*c as u64).min(n - *c as u64),
        (SchemeKind::ExcessBits, Announcement::Bits(b)) => b.ones() as u64,
        _ => unreachable!("announcement kind matches scheme"),
    }
}

/// Groups announcements into symmetry classes: all full-outcome announcements
/// are translates of one another, as are the two parities; weights `w` and
/// `n - w` are complements; excess-bit announcements with the same number of
/// marked positions are permutations of one another.
pub fn announcement_classes(scheme: &DisclosureScheme) -> Result<Vec<AnnouncementClass>> {
    let mut groups: BTreeMap<u64, AnnouncementClass> = BTreeMap::new();
    for s in scheme.announcements() {
        let p_s = scheme.posterior(&s)?.p_s;
        if p_s <= 0.0 {
            continue;
        }
        let class = groups.entry(class_key(scheme, &s)).or_insert_with(|| AnnouncementClass {
            representative: s,
            members: Vec::new(),
            weight: 0.0,
        });
        class.members.push(s);
        class.weight += p_s;
    }
    Ok(groups.into_values().collect())
}

fn singleton_classes(scheme: &DisclosureScheme) -> Result<Vec<AnnouncementClass>> {
    let mut out = Vec::new();
    for s in scheme.announcements() {
        let p_s = scheme.posterior(&s)?.p_s;
        if p_s > 0.0 {
            out.push(AnnouncementClass { representative: s, members: vec![s], weight: p_s });
        }
    }
    Ok(out)
}

/// Basis of `{x : K ⊕ x = K}` over GF(2).
fn stabilizer_basis(outcomes: &[u64], n: usize) -> Vec<u64> {
    let mut member = vec![false; 1 << n];
    for &k in outcomes {
        member[k as usize] = true;
    }
    let mut basis: Vec<u64> = Vec::new();
    for x in 1..(1u64 << n) {
        if !outcomes.iter().all(|&k| member[(k ^ x) as usize]) {
            continue;
        }
        let mut reduced = x;
        for &v in &basis {
            reduced = reduced.min(reduced ^ v);
        }
        if reduced != 0 {
            basis.push(reduced);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

fn sector_label(x: u64, basis: &[u64]) -> usize {
    basis
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &y)| acc | (((y & x).count_ones() & 1) as usize) << j)
}

/// How the mixture spectrum of one class is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixturePath {
    /// Overlap matrix of the `size` weighted product vectors, split by
    /// `symmetries` commuting probe transpositions.
    Gram { size: usize, symmetries: usize },
    /// Joint sign-flip eigenspaces: `count` blocks of size `dim`.
    Sectors { count: usize, dim: usize },
}

#[derive(Debug, Clone)]
struct ClassData {
    class: AnnouncementClass,
    outcomes: Vec<u64>,
    stabilizer: Vec<u64>,
    swaps: Vec<(usize, usize)>,
}

/// Entropies of one announcement class at a fixed attack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassEntropies {
    /// `S(ρ_{E|0,s})`, `S(ρ_{E|1,s})`.
    pub conditional: [f64; 2],
    /// `S(p ρ_{E|0,s} + (1-p) ρ_{E|1,s})`.
    pub mixture: f64,
}

/// `χ_E` for a fixed scheme, reusable across attacks and priors.
#[derive(Debug, Clone)]
pub struct EveModel {
    scheme: DisclosureScheme,
    classes: Vec<ClassData>,
}

impl EveModel {
    /// Builds the class table. For `n <= 3` the class structure is checked
    /// numerically against per-announcement evaluation and abandoned if any
    /// entropy differs.
    pub fn new(scheme: DisclosureScheme) -> Result<Self> {
        let grouped = Self::with_classes(scheme, announcement_classes(&scheme)?)?;
        if scheme.n() <= 3 {
            let check = AttackSpec::new(0.05, 0.08, 0.1)?;
            if grouped.class_deviation(&check, 0.37)? > 1e-10 {
                return Self::ungrouped(scheme);
            }
        }
        Ok(grouped)
    }

    /// One class per announcement.
    pub fn ungrouped(scheme: DisclosureScheme) -> Result<Self> {
        Self::with_classes(scheme, singleton_classes(&scheme)?)
    }

    fn with_classes(scheme: DisclosureScheme, classes: Vec<AnnouncementClass>) -> Result<Self> {
        let n = scheme.n();
        let classes = classes
            .into_iter()
            .map(|class| {
                let outcomes: Vec<u64> = scheme
                    .compat_outcomes(&class.representative)?
                    .iter()
                    .map(|k| k.value())
                    .collect();
                let stabilizer = stabilizer_basis(&outcomes, n);
                let swaps = invariant_swaps(&outcomes, n);
                Ok(ClassData { class, outcomes, stabilizer, swaps })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { scheme, classes })
    }

    pub fn scheme(&self) -> &DisclosureScheme {
        &self.scheme
    }

    pub fn classes(&self) -> impl Iterator<Item = &AnnouncementClass> {
        self.classes.iter().map(|c| &c.class)
    }

    /// Largest entropy difference between a class representative and any
    /// member, each evaluated on its own compatibility set.
    pub fn class_deviation(&self, spec: &AttackSpec, p: f64) -> Result<f64> {
        let xi = probe_vectors(&spec.lambdas());
        let n = self.scheme.n();
        let mut worst = 0.0f64;
        for c in &self.classes {
            let rep = class_entropies(&xi, &c.outcomes, &c.stabilizer, &c.swaps, n, p)?;
            for s in &c.class.members[1..] {
                let outcomes: Vec<u64> =
                    self.scheme.compat_outcomes(s)?.iter().map(|k| k.value()).collect();
                let stab = stabilizer_basis(&outcomes, n);
                let swaps = invariant_swaps(&outcomes, n);
                let e = class_entropies(&xi, &outcomes, &stab, &swaps, n, p)?;
                worst = worst
                    .max((e.mixture - rep.mixture).abs())
                    .max((e.conditional[0] - rep.conditional[0]).abs())
                    .max((e.conditional[1] - rep.conditional[1]).abs());
            }
        }
        Ok(worst)
    }

    /// Mixture path chosen for each class at this attack.
    pub fn paths(&self, spec: &AttackSpec) -> Vec<MixturePath> {
        let xi = probe_vectors(&spec.lambdas());
        let n = self.scheme.n();
        self.classes
            .iter()
            .map(|c| choose_path(&overlap_table(&xi), &c.outcomes, &c.stabilizer, &c.swaps, n))
            .collect()
    }

    /// `(P(class), entropies)` for every class.
    pub fn entropies(&self, spec: &AttackSpec, p: f64) -> Result<Vec<(f64, ClassEntropies)>> {
        let xi = probe_vectors(&spec.lambdas());
        let n = self.scheme.n();
        self.classes
            .iter()
            .map(|c| Ok((c.class.weight, class_entropies(&xi, &c.outcomes, &c.stabilizer, &c.swaps, n, p)?)))
            .collect()
    }

    /// `χ_E` at `P_A(0) = p`.
    pub fn chi_e(&self, spec: &AttackSpec, p: f64) -> Result<f64> {
        check_prior(p)?;
        if p == 0.0 || p == 1.0 {
            return Ok(0.0);
        }
        let total: f64 = self
            .entropies(spec, p)?
            .iter()
            .map(|(w, e)| w * (e.mixture - p * e.conditional[0] - (1.0 - p) * e.conditional[1]))
            .sum();
        Ok(total.clamp(0.0, 1.0))
    }
}

fn check_prior(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("P_A(0) = {p} outside [0, 1]")))
    }
}

fn swap_bits(x: u64, i: usize, j: usize) -> u64 {
    if (x >> i) & 1 == (x >> j) & 1 {
        x
    } else {
        x ^ (1 << i) ^ (1 << j)
    }
}

/// Disjoint transpositions of probe positions that map `K(s)` onto itself,
/// chosen greedily. Permuting probes maps both conditional states of `K` to
/// those of the permuted set, so these commute with the mixture.
fn invariant_swaps(outcomes: &[u64], n: usize) -> Vec<(usize, usize)> {
    let set: HashSet<u64> = outcomes.iter().copied().collect();
    let mut used = vec![false; n];
    let mut swaps = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if used[i] || used[j] {
                continue;
            }
            if outcomes.iter().all(|&k| set.contains(&swap_bits(k, i, j))) {
                used[i] = true;
                used[j] = true;
                swaps.push((i, j));
            }
        }
    }
    swaps
}

/// A nonzero weighted product vector `⊗_b ξ^(a)_{r_b}(k_b)`.
#[derive(Debug, Clone)]
struct Column {
    a: u8,
    r: u64,
    k: u64,
    /// Per-bit labels `4a + 2r_b + k_b` into the overlap table.
    labels: Vec<u8>,
}

fn gram_columns(ov: &[[f64; 8]; 8], outcomes: &[u64], n: usize) -> Vec<Column> {
    let mut cols = Vec::new();
    for a in 0..2u8 {
        for r in 0..(1u64 << n) {
            for &k in outcomes {
                let labels: Vec<u8> = (0..n)
                    .map(|b| 4 * a + 2 * ((r >> b) & 1) as u8 + ((k >> b) & 1) as u8)
                    .collect();
                if labels.iter().all(|&u| ov[u as usize][u as usize] > 0.0) {
                    cols.push(Column { a, r, k, labels });
                }
            }
        }
    }
    cols
}

fn gram_entry(ov: &[[f64; 8]; 8], scale: &[f64; 2], x: &Column, y: &Column) -> f64 {
    scale[x.a as usize]
        * scale[y.a as usize]
        * x.labels
            .iter()
            .zip(&y.labels)
            .map(|(&u, &v)| ov[u as usize][v as usize])
            .product::<f64>()
}

struct Orbit {
    /// `(column, group element reaching it from the representative)`.
    members: Vec<(usize, usize)>,
    stabilizer: Vec<usize>,
}

fn character(chi: usize, h: usize) -> f64 {
    if (chi & h).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Nonzero spectrum of the mixture from its Gram matrix, block diagonalized
/// by the group generated by `swaps` (one block per character).
fn gram_spectrum(
    ov: &[[f64; 8]; 8],
    cols: &[Column],
    swaps: &[(usize, usize)],
    scale: [f64; 2],
) -> Result<Vec<f64>> {
    let index: HashMap<(u8, u64, u64), usize> =
        cols.iter().enumerate().map(|(i, c)| ((c.a, c.r, c.k), i)).collect();
    let group = 1usize << swaps.len();
    let act = |h: usize, c: &Column| -> usize {
        let (mut r, mut k) = (c.r, c.k);
        for (bit, &(i, j)) in swaps.iter().enumerate() {
            if (h >> bit) & 1 == 1 {
                r = swap_bits(r, i, j);
                k = swap_bits(k, i, j);
            }
        }
        index[&(c.a, r, k)]
    };
    let mut seen = vec![false; cols.len()];
    let mut orbits = Vec::new();
    for i in 0..cols.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = Orbit { members: Vec::new(), stabilizer: Vec::new() };
        for h in 0..group {
            let j = act(h, &cols[i]);
            if j == i {
                orbit.stabilizer.push(h);
            }
            if !seen[j] {
                seen[j] = true;
                orbit.members.push((j, h));
            }
        }
        orbits.push(orbit);
    }

    let mut eigs = Vec::with_capacity(cols.len());
    for chi in 0..group {
        let active: Vec<&Orbit> = orbits
            .iter()
            .filter(|o| o.stabilizer.iter().all(|&h| character(chi, h) > 0.0))
            .collect();
        let dim = active.len();
        if dim > DENSE_DIM_MAX {
            return Err(Error::DimensionTooLarge { dim, max: DENSE_DIM_MAX });
        }
        // ⟨u_O, G u_O'⟩ = √(|O|/|O'|) Σ_{y ∈ O'} χ(y) G[rep(O), y]
        let mut m = DMatrix::zeros(dim, dim);
        for (p, o) in active.iter().enumerate() {
            let rep = &cols[o.members[0].0];
            for (q, o2) in active.iter().enumerate().skip(p) {
                let sum: f64 = o2
                    .members
                    .iter()
                    .map(|&(y, h)| character(chi, h) * gram_entry(ov, &scale, rep, &cols[y]))
                    .sum();
                let v = (o.members.len() as f64 / o2.members.len() as f64).sqrt() * sum;
                m[(p, q)] = v;
                m[(q, p)] = v;
            }
        }
        eigs.extend(real_symmetric_eigenvalues(m));
    }
    Ok(eigs)
}

fn choose_path(
    ov: &[[f64; 8]; 8],
    outcomes: &[u64],
    stabilizer: &[u64],
    swaps: &[(usize, usize)],
    n: usize,
) -> MixturePath {
    let size = gram_columns(ov, outcomes, n).len();
    let d = stabilizer.len();
    let group = (1usize << swaps.len()) as f64;
    let gram_cost = group * (size as f64 / group).powi(3);
    let sector_cost = (1u64 << (2 * d)) as f64 * ((1u64 << (2 * (n - d))) as f64).powi(3);
    if gram_cost < sector_cost {
        MixturePath::Gram { size, symmetries: swaps.len() }
    } else {
        MixturePath::Sectors { count: 1 << (2 * d), dim: 1 << (2 * (n - d)) }
    }
}

fn class_entropies(
    xi: &ProbeVectors,
    outcomes: &[u64],
    stabilizer: &[u64],
    swaps: &[(usize, usize)],
    n: usize,
    p: f64,
) -> Result<ClassEntropies> {
    let ov = overlap_table(xi);
    let w = 1.0 / outcomes.len() as f64;

    // per-a states: one Gram matrix over K(s) per label r
    let mut conditional = [0.0; 2];
    for (a, slot) in conditional.iter_mut().enumerate() {
        let mut eigs = Vec::with_capacity(outcomes.len() << n);
        for r in 0..(1u64 << n) {
            let labels: Vec<Vec<usize>> = outcomes
                .iter()
                .map(|&k| {
                    (0..n)
                        .map(|b| 4 * a + 2 * ((r >> b) & 1) as usize + ((k >> b) & 1) as usize)
                        .collect()
                })
                .collect();
            let m = DMatrix::from_fn(outcomes.len(), outcomes.len(), |i, j| {
                w * labels[i].iter().zip(&labels[j]).map(|(&u, &v)| ov[u][v]).product::<f64>()
            });
            eigs.extend(real_symmetric_eigenvalues(m));
        }
        *slot = entropy_of_spectrum(&eigs);
    }

    let mixture = match choose_path(&ov, outcomes, stabilizer, swaps, n) {
        MixturePath::Gram { .. } => {
            let cols = gram_columns(&ov, outcomes, n);
            let scale = [(p * w).sqrt(), ((1.0 - p) * w).sqrt()];
            entropy_of_spectrum(&gram_spectrum(&ov, &cols, swaps, scale)?)
        }
        MixturePath::Sectors { dim, .. } => {
            if dim > DENSE_DIM_MAX {
                return Err(Error::DimensionTooLarge { dim, max: DENSE_DIM_MAX });
            }
            let d = 1usize << n;
            let labels: Vec<usize> = (0..d as u64).map(|x| sector_label(x, stabilizer)).collect();
            let (sigma, tau) = conditional_blocks(xi, outcomes, n, Some(&labels));
            let mut members: Vec<Vec<usize>> = vec![Vec::new(); 1 << stabilizer.len()];
            for (x, &l) in labels.iter().enumerate() {
                members[l].push(x);
            }
            let mut eigs = Vec::with_capacity(d * d);
            for fs in &members {
                for gs in &members {
                    let basis: Vec<(usize, usize)> =
                        fs.iter().flat_map(|&f| gs.iter().map(move |&g| (f, g))).collect();
                    let m = DMatrix::from_fn(basis.len(), basis.len(), |i, j| {
                        let ((f, g), (f2, g2)) = (basis[i], basis[j]);
                        let mut v = 0.0;
                        if f == f2 {
                            v += p * sigma[f * d * d + g * d + g2];
                        }
                        if g == g2 {
                            v += (1.0 - p) * tau[g * d * d + f * d + f2];
                        }
                        v
                    });
                    eigs.extend(real_symmetric_eigenvalues(m));
                }
            }
            entropy_of_spectrum(&eigs)
        }
    };
    Ok(ClassEntropies { conditional, mixture })
}

/// `ρ_{E|a,s}` as a block-diagonal operator on the `4^n`-dimensional probe
/// space, one `2^n`-dimensional block per label `r`.
pub fn rho_e(a: u8, s: &Announcement, scheme: &DisclosureScheme, spec: &AttackSpec) -> Result<HermitianOperator> {
    let n = scheme.n();
    let dim = 1usize << (2 * n);
    if dim > DENSE_DIM_MAX {
        return Err(Error::DimensionTooLarge { dim, max: DENSE_DIM_MAX });
    }
    let outcomes: Vec<u64> = scheme.compat_outcomes(s)?.iter().map(|k| k.value()).collect();
    if outcomes.is_empty() {
        return Err(Error::MalformedAnnouncement(format!("{s} has probability zero")));
    }
    let xi = probe_vectors(&spec.lambdas());
    let (sigma, tau) = conditional_blocks(&xi, &outcomes, n, None);
    let d = 1usize << n;
    let blocks = (0..d)
        .map(|r| {
            let (source, indices): (&[f64], Vec<usize>) = if a == 0 {
                (&sigma, (0..d as u64).map(|g| product_index(r as u64, g, n)).collect())
            } else {
                (&tau, (0..d as u64).map(|f| product_index(f, r as u64, n)).collect())
            };
            let m = DMatrix::from_fn(d, d, |i, j| Complex64::new(source[r * d * d + i * d + j], 0.0));
            (indices, m)
        })
        .collect();
    HermitianOperator::assemble_block_diagonal(dim, blocks)
}

/// Straightforward `χ_E`: every announcement separately, per-a entropies from
/// the block operators, mixture entropy from the dense `4^n` matrix.
pub fn chi_e_reference(scheme: &DisclosureScheme, spec: &AttackSpec, p: f64) -> Result<f64> {
    check_prior(p)?;
    let mut total = 0.0;
    for s in scheme.announcements() {
        let p_s = scheme.posterior(&s)?.p_s;
        if p_s <= 0.0 {
            continue;
        }
        let r0 = rho_e(0, &s, scheme, spec)?;
        let r1 = rho_e(1, &s, scheme, spec)?;
        let mix = HermitianOperator::mixture(&[(p, &r0), (1.0 - p, &r1)])?;
        total += p_s
            * (von_neumann_entropy(&mix)?
                - p * von_neumann_entropy(&r0)?
                - (1.0 - p) * von_neumann_entropy(&r1)?);
    }
    Ok(total.clamp(0.0, 1.0))
}

/// One-shot `χ_E`.
pub fn chi_e(scheme: &DisclosureScheme, spec: &AttackSpec, p: f64) -> Result<f64> {
    EveModel::new(*scheme)?.chi_e(spec, p)
}
