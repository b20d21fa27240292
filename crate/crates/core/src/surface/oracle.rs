use super::{DPLattice, SurfaceClass, SurfaceError, SurfaceZariski};
use crate::exactnum::{Poly2, Rational};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Result of the double-precision Zariski oracle at one parameter point:
/// the volume and the full-length coefficient vector of the negative part
/// (zero off the support).  Both are `NaN` when the float solve degenerates.
#[derive(Clone, Debug)]
pub struct NumericZariski {
    pub vol: f64,
    pub coeffs: Vec<f64>,
}

/// Floating-point Zariski decomposition of a single class, independent of
/// the exact path: its own gram arithmetic, its own Gaussian elimination,
/// and a small negative tolerance in place of exact sign tests.
pub fn numeric_zariski_oracle(class: &[f64], lattice: &DPLattice) -> NumericZariski {
    let n = lattice.rank();
    let gram: Vec<Vec<f64>> = lattice
        .gram()
        .iter()
        .map(|row| row.iter().map(Rational::to_f64).collect())
        .collect();
    let curves: Vec<Vec<f64>> = lattice
        .negative_curves()
        .iter()
        .map(|c| c.coords.iter().map(Rational::to_f64).collect())
        .collect();
    let pair = |a: &[f64], b: &[f64]| -> f64 {
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                total += a[i] * b[j] * gram[i][j];
            }
        }
        total
    };

    let m = curves.len();
    let degenerate = NumericZariski {
        vol: f64::NAN,
        coeffs: vec![f64::NAN; m],
    };
    let mut support: Vec<usize> = Vec::new();
    for _ in 0..=m {
        let coeffs = if support.is_empty() {
            Vec::new()
        } else {
            let a: Vec<Vec<f64>> = support
                .iter()
                .map(|&i| support.iter().map(|&j| pair(&curves[i], &curves[j])).collect())
                .collect();
            let b: Vec<f64> = support.iter().map(|&i| pair(class, &curves[i])).collect();
            match solve_f64(a, b) {
                Some(c) => c,
                None => return degenerate,
            }
        };
        let mut p = class.to_vec();
        for (pos, &ci) in support.iter().enumerate() {
            for slot in 0..n {
                p[slot] -= coeffs[pos] * curves[ci][slot];
            }
        }
        let mut grew = false;
        for idx in 0..m {
            if support.contains(&idx) {
                continue;
            }
            if pair(&p, &curves[idx]) < -1e-9 {
                support.push(idx);
                grew = true;
            }
        }
        if !grew {
            let mut full = vec![0.0; m];
            for (pos, &ci) in support.iter().enumerate() {
                full[ci] = coeffs[pos];
            }
            return NumericZariski {
                vol: pair(&p, &p),
                coeffs: full,
            };
        }
    }
    degenerate
}

fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Outcome of sweeping a chamber decomposition against the float oracle.
#[derive(Clone, Copy, Debug)]
pub struct SweepReport {
    pub points: usize,
    pub max_vol_dev: f64,
    pub max_coeff_dev: f64,
}

struct ChamberData {
    region: crate::exactnum::Region,
    vol: Poly2,
    coeffs: Vec<Poly2>,
}

fn chamber_data(
    z: &SurfaceZariski,
    lattice: &DPLattice,
) -> Result<Vec<ChamberData>, SurfaceError> {
    let m = lattice.negative_curves().len();
    z.chambers
        .iter()
        .map(|c| {
            let mut coeffs = vec![Poly2::zero(); m];
            for (idx, poly) in &c.negative {
                coeffs[*idx] = poly.clone();
            }
            Ok(ChamberData {
                region: c.region.clone(),
                vol: c.vol_poly(lattice)?,
                coeffs,
            })
        })
        .collect()
}

fn point_devs(
    d: &SurfaceClass,
    lattice: &DPLattice,
    data: &ChamberData,
    n: usize,
    i: usize,
    j: usize,
) -> (f64, f64) {
    let frac = |k: usize| Rational::new(2 * k as i64 + 1, 2 * n as i64);
    let region = &data.region;
    let u_span = region.u_hi() - region.u_lo();
    let u = region.u_lo() + &(&u_span * &frac(i));
    let v_lo = region.v_lo().eval(&u);
    let v_span = region.v_hi().eval(&u) - &v_lo;
    let v = &v_lo + &(&v_span * &frac(j));
    let (uf, vf) = (u.to_f64(), v.to_f64());
    let oracle = numeric_zariski_oracle(&d.eval_f64(uf, vf), lattice);
    let vol_dev = (data.vol.eval(&u, &v).to_f64() - oracle.vol).abs();
    let coeff_dev = data
        .coeffs
        .iter()
        .zip(&oracle.coeffs)
        .map(|(exact, numeric)| (exact.eval(&u, &v).to_f64() - numeric).abs())
        .fold(0.0f64, f64::max);
    (vol_dev, coeff_dev)
}

/// Compares the exact decomposition against the float oracle on an
/// `n x n` midpoint grid inside every chamber and reports the worst
/// absolute deviations of volume and negative-part coefficients.
pub fn oracle_sweep(
    d: &SurfaceClass,
    lattice: &DPLattice,
    z: &SurfaceZariski,
    n: usize,
) -> Result<SweepReport, SurfaceError> {
    let data = chamber_data(z, lattice)?;
    let tasks: Vec<(usize, usize, usize)> = (0..data.len())
        .flat_map(|ci| (0..n).flat_map(move |i| (0..n).map(move |j| (ci, i, j))))
        .collect();
    let eval =
        |&(ci, i, j): &(usize, usize, usize)| point_devs(d, lattice, &data[ci], n, i, j);
    #[cfg(feature = "parallel")]
    let (max_vol_dev, max_coeff_dev) = tasks
        .par_iter()
        .map(eval)
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    #[cfg(not(feature = "parallel"))]
    let (max_vol_dev, max_coeff_dev) = tasks
        .iter()
        .map(eval)
        .fold((0.0f64, 0.0f64), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    Ok(SweepReport {
        points: tasks.len(),
        max_vol_dev,
        max_coeff_dev,
    })
}

/// Sequential form of `oracle_sweep`.
pub fn oracle_sweep_seq(
    d: &SurfaceClass,
    lattice: &DPLattice,
    z: &SurfaceZariski,
    n: usize,
) -> Result<SweepReport, SurfaceError> {
    let data = chamber_data(z, lattice)?;
    let mut points = 0usize;
    let mut max_vol_dev = 0.0f64;
    let mut max_coeff_dev = 0.0f64;
    for cd in &data {
        for i in 0..n {
            for j in 0..n {
                let (vd, cdev) = point_devs(d, lattice, cd, n, i, j);
                max_vol_dev = max_vol_dev.max(vd);
                max_coeff_dev = max_coeff_dev.max(cdev);
                points += 1;
            }
        }
    }
    Ok(SweepReport {
        points,
        max_vol_dev,
        max_coeff_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::super::zariski_surface;
    use super::*;
    use crate::exactnum::Region;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn smooth_fiber_family() -> (DPLattice, SurfaceClass) {
        let lat = DPLattice::smooth();
        let z = SurfaceClass::from_ints(&[1, -1, 0, 0]);
        let d = lat.anticanonical_class().sub(&z.scale_poly(&Poly2::v()));
        (lat, d)
    }

    #[test]
    fn oracle_matches_hand_values() {
        let (lat, d) = smooth_fiber_family();
        // below the wall: no negative part, vol = 6 - 4v
        let low = numeric_zariski_oracle(&d.eval_f64(0.0, 0.5), &lat);
        assert!((low.vol - 4.0).abs() < 1e-12);
        assert!(low.coeffs.iter().all(|c| c.abs() < 1e-12));
        // above the wall: e1 and L-e2-e3 each with coefficient v - 1
        let high = numeric_zariski_oracle(&d.eval_f64(0.0, 1.5), &lat);
        assert!((high.vol - 0.5).abs() < 1e-12);
        assert!((high.coeffs[0] - 0.5).abs() < 1e-12);
        assert!((high.coeffs[5] - 0.5).abs() < 1e-12);
        for idx in [1, 2, 3, 4] {
            assert!(high.coeffs[idx].abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_on_singular_preset() {
        let lat = DPLattice::singular();
        let z = SurfaceClass::from_ints(&[0, 1, 0]);
        let d = lat.anticanonical_class().sub(&z.scale_poly(&Poly2::v()));
        let res = numeric_zariski_oracle(&d.eval_f64(0.0, 1.5), &lat);
        // vol = 6 - 4v + 2(v - 1)^2 = 1/2, coefficient 2(v - 1) = 1
        assert!((res.vol - 0.5).abs() < 1e-12);
        assert!((res.coeffs[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_agrees_with_exact_chambers() {
        let (lat, d) = smooth_fiber_family();
        let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(2, 1)).unwrap();
        let z = zariski_surface(&d, &lat, &bbox).unwrap();
        let report = oracle_sweep(&d, &lat, &z, 20).unwrap();
        assert_eq!(report.points, 2 * 20 * 20);
        assert!(report.max_vol_dev < 1e-6, "vol dev {}", report.max_vol_dev);
        assert!(
            report.max_coeff_dev < 1e-6,
            "coeff dev {}",
            report.max_coeff_dev
        );
        let seq = oracle_sweep_seq(&d, &lat, &z, 20).unwrap();
        assert_eq!(seq.points, report.points);
        assert!((seq.max_vol_dev - report.max_vol_dev).abs() < 1e-15);
    }

    #[test]
    fn sweep_detects_a_corrupted_chamber() {
        let (lat, d) = smooth_fiber_family();
        let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(2, 1)).unwrap();
        let mut z = zariski_surface(&d, &lat, &bbox).unwrap();
        // shift the positive part of one chamber by a constant class
        let bump = SurfaceClass::from_rationals(vec![
            r(1, 10),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ]);
        z.chambers[0].positive = z.chambers[0].positive.add(&bump);
        let report = oracle_sweep(&d, &lat, &z, 8).unwrap();
        assert!(report.max_vol_dev > 1e-3, "vol dev {}", report.max_vol_dev);
    }
}
