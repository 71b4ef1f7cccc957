//! Deterministic one-dimensional searches: a uniform coarse grid followed by
//! golden-section refinement around the best grid point.

use crate::error::Result;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSettings {
    /// Coarse grid points, endpoints included.
    pub grid: usize,
    /// Bracket width at which golden-section refinement stops.
    pub tol: f64,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self { grid: 33, tol: 1e-7 }
    }
}

/// Minimizes `f` on `[lo, hi]`; returns `(argmin, min)`.
///
/// The refined point replaces the grid optimum only when it is strictly
/// better, so optima on the interval ends are kept.
pub fn minimize<F>(mut f: F, lo: f64, hi: f64, settings: SearchSettings) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(hi - lo > settings.tol) {
        return Ok((lo, f(lo)?));
    }
    let grid = settings.grid.max(3);
    let step = (hi - lo) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid)
        .map(|i| if i == grid - 1 { hi } else { lo + step * i as f64 })
        .collect();
    let mut best = (xs[0], f(xs[0])?);
    let mut best_i = 0;
    for (i, &x) in xs.iter().enumerate().skip(1) {
        let v = f(x)?;
        if v < best.1 {
            best = (x, v);
            best_i = i;
        }
    }

    let (mut a, mut b) = (xs[best_i.saturating_sub(1)], xs[(best_i + 1).min(grid - 1)]);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > settings.tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let refined = if fc <= fd { (c, fc) } else { (d, fd) };
    Ok(if refined.1 < best.1 { refined } else { best })
}

/// Maximizes `f` on `[lo, hi]`; returns `(argmax, max)`.
pub fn maximize<F>(mut f: F, lo: f64, hi: f64, settings: SearchSettings) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (x, v) = minimize(|x| Ok(-f(x)?), lo, hi, settings)?;
    Ok((x, -v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_minimum() {
        let (x, v) = minimize(|x| Ok((x - 0.3137).powi(2) + 1.0), 0.0, 1.0, SearchSettings::default()).unwrap();
        assert!((x - 0.3137).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn keeps_boundary_optimum() {
        let (x, _) = minimize(Ok, 0.2, 0.7, SearchSettings::default()).unwrap();
        assert_eq!(x, 0.2);
        let (x, _) = maximize(Ok, 0.2, 0.7, SearchSettings::default()).unwrap();
        assert_eq!(x, 0.7);
    }

    #[test]
    fn degenerate_interval() {
        let (x, v) = minimize(|x| Ok(x * 2.0), 0.5, 0.5, SearchSettings::default()).unwrap();
        assert_eq!((x, v), (0.5, 1.0));
    }

    #[test]
    fn finds_narrow_well_between_grid_points() {
        // well narrower than the grid spacing but inside the bracket
        let f = |x: f64| Ok(-(-((x - 0.51) / 0.01).powi(2)).exp());
        let (x, _) = minimize(f, 0.0, 1.0, SearchSettings::default()).unwrap();
        assert!((x - 0.51).abs() < 1e-5);
    }

    #[test]
    fn errors_propagate() {
        let r = minimize(
            |x| if x > 0.5 { Err(crate::error::Error::OutOfRange("x".into())) } else { Ok(x) },
            0.0,
            1.0,
            SearchSettings::default(),
        );
        assert!(r.is_err());
    }
}
