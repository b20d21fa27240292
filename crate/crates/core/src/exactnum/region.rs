use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{AffineU, ExactError, Poly2, Rational};

/// Plane region `{(u, v) : u_lo <= u <= u_hi, v_lo(u) <= v <= v_hi(u)}`
/// with affine `v`-boundaries.  Because the boundaries are affine, the
/// ordering `v_lo <= v_hi` is checked at the two `u`-endpoints only, which
/// is sufficient, and the region is convex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Region {
    u_lo: Rational,
    u_hi: Rational,
    v_lo: AffineU,
    v_hi: AffineU,
}

impl Region {
    pub fn new(
        u_lo: Rational,
        u_hi: Rational,
        v_lo: AffineU,
        v_hi: AffineU,
    ) -> Result<Self, ExactError> {
        if u_lo > u_hi {
            return Err(ExactError::InvalidRegion(format!(
                "u_lo = {u_lo} exceeds u_hi = {u_hi}"
            )));
        }
        for u in [&u_lo, &u_hi] {
            if v_lo.eval(u) > v_hi.eval(u) {
                return Err(ExactError::InvalidRegion(format!(
                    "v_lo = {v_lo} exceeds v_hi = {v_hi} at u = {u}"
                )));
            }
        }
        Ok(Region { u_lo, u_hi, v_lo, v_hi })
    }

    /// Axis-aligned rectangle with constant `v`-bounds.
    pub fn rect(
        u_lo: Rational,
        u_hi: Rational,
        v_lo: Rational,
        v_hi: Rational,
    ) -> Result<Self, ExactError> {
        Region::new(
            u_lo,
            u_hi,
            AffineU::constant_fn(v_lo),
            AffineU::constant_fn(v_hi),
        )
    }

    pub fn u_lo(&self) -> &Rational {
        &self.u_lo
    }

    pub fn u_hi(&self) -> &Rational {
        &self.u_hi
    }

    pub fn v_lo(&self) -> &AffineU {
        &self.v_lo
    }

    pub fn v_hi(&self) -> &AffineU {
        &self.v_hi
    }

    /// Corner points `(u, v)` at both ends of both boundaries.
    pub fn vertices(&self) -> [(Rational, Rational); 4] {
        [
            (self.u_lo.clone(), self.v_lo.eval(&self.u_lo)),
            (self.u_lo.clone(), self.v_hi.eval(&self.u_lo)),
            (self.u_hi.clone(), self.v_lo.eval(&self.u_hi)),
            (self.u_hi.clone(), self.v_hi.eval(&self.u_hi)),
        ]
    }

    /// A rational point in the interior (on the midline when the region is
    /// degenerate).
    pub fn sample_interior(&self) -> (Rational, Rational) {
        let half = Rational::new(1, 2);
        let u = (&self.u_lo + &self.u_hi) * half.clone();
        let v = (self.v_lo.eval(&u) + self.v_hi.eval(&u)) * half;
        (u, v)
    }

    pub fn contains(&self, u: &Rational, v: &Rational) -> bool {
        u >= &self.u_lo
            && u <= &self.u_hi
            && v >= &self.v_lo.eval(u)
            && v <= &self.v_hi.eval(u)
    }

    pub fn area(&self) -> Rational {
        integrate_region(&Poly2::one(), self)
    }

    pub fn is_degenerate(&self) -> bool {
        self.area().is_zero()
    }

    /// Splits at an interior `u`-value into a left and right part.
    pub fn split_at_u(&self, u: &Rational) -> Result<(Region, Region), ExactError> {
        if u <= &self.u_lo || u >= &self.u_hi {
            return Err(ExactError::InvalidSplit(format!(
                "u = {u} is not interior to [{}, {}]",
                self.u_lo, self.u_hi
            )));
        }
        let left = Region::new(
            self.u_lo.clone(),
            u.clone(),
            self.v_lo.clone(),
            self.v_hi.clone(),
        )?;
        let right = Region::new(
            u.clone(),
            self.u_hi.clone(),
            self.v_lo.clone(),
            self.v_hi.clone(),
        )?;
        Ok((left, right))
    }

    /// Splits along an affine line `v = line(u)` lying between the two
    /// boundaries over the whole `u`-interval, into a lower and upper part.
    pub fn split_at_v(&self, line: &AffineU) -> Result<(Region, Region), ExactError> {
        for u in [&self.u_lo, &self.u_hi] {
            let l = line.eval(u);
            if l < self.v_lo.eval(u) || l > self.v_hi.eval(u) {
                return Err(ExactError::InvalidSplit(format!(
                    "line {line} leaves the region at u = {u}"
                )));
            }
        }
        let lower = Region::new(
            self.u_lo.clone(),
            self.u_hi.clone(),
            self.v_lo.clone(),
            line.clone(),
        )?;
        let upper = Region::new(
            self.u_lo.clone(),
            self.u_hi.clone(),
            line.clone(),
            self.v_hi.clone(),
        )?;
        Ok((lower, upper))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u in [{}, {}], v in [{}, {}]",
            self.u_lo, self.u_hi, self.v_lo, self.v_hi
        )
    }
}

/// Exact double integral of `p` over `r`: antiderivative in `v`, affine
/// boundary substitution, then a univariate integral in `u`.
pub fn integrate_region(p: &Poly2, r: &Region) -> Rational {
    let av = p.antiderivative_v();
    let g = &av.subst_v(r.v_hi()) - &av.subst_v(r.v_lo());
    integrate_univariate_u(&g, r.u_lo(), r.u_hi())
        .expect("boundary substitution leaves a polynomial in u")
}

/// Exact integral of a polynomial in `u` alone over `[lo, hi]`.
pub fn integrate_univariate_u(
    p: &Poly2,
    lo: &Rational,
    hi: &Rational,
) -> Result<Rational, ExactError> {
    if p.deg_v() > 0 {
        return Err(ExactError::NotUnivariateU(p.to_string()));
    }
    let a = p.antiderivative_u();
    let zero = Rational::zero();
    Ok(a.eval(hi, &zero) - a.eval(lo, &zero))
}

/// Midpoint-rule double integral on an `n x n` grid, the numeric oracle for
/// `integrate_region`.  Each `u`-column is subdivided between the exact
/// affine boundaries at its midpoint.
pub fn midpoint_integrate(p: &Poly2, r: &Region, n: usize) -> f64 {
    #[cfg(feature = "parallel")]
    {
        let du = (r.u_hi().to_f64() - r.u_lo().to_f64()) / n as f64;
        let total: f64 = (0..n)
            .into_par_iter()
            .map(|i| midpoint_column(p, r, n, i))
            .sum();
        total * du
    }
    #[cfg(not(feature = "parallel"))]
    {
        midpoint_integrate_seq(p, r, n)
    }
}

/// Sequential form of `midpoint_integrate`.
pub fn midpoint_integrate_seq(p: &Poly2, r: &Region, n: usize) -> f64 {
    let du = (r.u_hi().to_f64() - r.u_lo().to_f64()) / n as f64;
    let total: f64 = (0..n).map(|i| midpoint_column(p, r, n, i)).sum();
    total * du
}

fn midpoint_column(p: &Poly2, r: &Region, n: usize, i: usize) -> f64 {
    let u_lo = r.u_lo().to_f64();
    let du = (r.u_hi().to_f64() - u_lo) / n as f64;
    let u = u_lo + (i as f64 + 0.5) * du;
    let v_lo = r.v_lo().eval_f64(u);
    let v_hi = r.v_hi().eval_f64(u);
    let dv = (v_hi - v_lo) / n as f64;
    let column: f64 = (0..n)
        .map(|j| p.eval_f64(u, v_lo + (j as f64 + 0.5) * dv))
        .sum();
    column * dv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn band_0_1_1_2() -> Region {
        Region::rect(r(0, 1), r(1, 1), r(1, 1), r(2, 1)).unwrap()
    }

    fn triangle_upper() -> Region {
        // u in [1, 2], v in [2 - u, 4 - 2u]
        Region::new(
            r(1, 1),
            r(2, 1),
            AffineU::new(r(2, 1), r(-1, 1)),
            AffineU::new(r(4, 1), r(-2, 1)),
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_regions() {
        assert!(Region::rect(r(1, 1), r(0, 1), r(0, 1), r(1, 1)).is_err());
        assert!(Region::rect(r(0, 1), r(1, 1), r(2, 1), r(1, 1)).is_err());
        // crossing affine bounds caught at an endpoint
        assert!(Region::new(
            r(0, 1),
            r(2, 1),
            AffineU::constant_fn(r(1, 1)),
            AffineU::new(r(2, 1), r(-1, 1)),
        )
        .is_err());
    }

    #[test]
    fn square_integrals() {
        // (4 - 2v)^2 over [0,1] x [1,2] = 4/3
        let p = Poly2::affine(r(4, 1), r(0, 1), r(-2, 1)).pow(2);
        assert_eq!(integrate_region(&p, &band_0_1_1_2()), r(4, 3));
    }

    #[test]
    fn triangle_integrals() {
        // (8 - 4u - 2v)^2 over the upper triangle = 1/3
        let p = Poly2::affine(r(8, 1), r(-4, 1), r(-2, 1)).pow(2);
        assert_eq!(integrate_region(&p, &triangle_upper()), r(1, 3));
        // (6 - 3u - v)(2u + v - 3) over the same triangle = 7/24
        let a = Poly2::affine(r(6, 1), r(-3, 1), r(-1, 1));
        let b = Poly2::affine(r(-3, 1), r(2, 1), r(1, 1));
        assert_eq!(integrate_region(&(&a * &b), &triangle_upper()), r(7, 24));
    }

    #[test]
    fn degenerate_region_integrates_to_zero() {
        let line = AffineU::new(r(2, 1), r(-1, 1));
        let reg = Region::new(r(0, 1), r(1, 1), line.clone(), line).unwrap();
        assert!(reg.is_degenerate());
        let p = Poly2::affine(r(1, 1), r(2, 1), r(3, 1));
        assert_eq!(integrate_region(&p, &reg), r(0, 1));
    }

    #[test]
    fn univariate_integral() {
        // 6(2 - u)^3 over [1, 2] = 3/2
        let p = Poly2::affine(r(2, 1), r(-1, 1), r(0, 1)).pow(3).scale(&r(6, 1));
        assert_eq!(
            integrate_univariate_u(&p, &r(1, 1), &r(2, 1)).unwrap(),
            r(3, 2)
        );
        assert!(integrate_univariate_u(&Poly2::v(), &r(0, 1), &r(1, 1)).is_err());
    }

    #[test]
    fn splits_preserve_integrals() {
        let reg = triangle_upper();
        let p = Poly2::affine(r(8, 1), r(-4, 1), r(-2, 1)).pow(2);
        let whole = integrate_region(&p, &reg);
        let (l, rgt) = reg.split_at_u(&r(3, 2)).unwrap();
        assert_eq!(integrate_region(&p, &l) + integrate_region(&p, &rgt), whole);
        let mid = AffineU::new(r(3, 1), r(-3, 2));
        let (lo, hi) = reg.split_at_v(&mid).unwrap();
        assert_eq!(integrate_region(&p, &lo) + integrate_region(&p, &hi), whole);
        assert!(reg.split_at_u(&r(5, 1)).is_err());
        assert!(reg.split_at_v(&AffineU::constant_fn(r(100, 1))).is_err());
    }

    #[test]
    fn vertices_and_containment() {
        let reg = triangle_upper();
        let vs = reg.vertices();
        assert_eq!(vs[0], (r(1, 1), r(1, 1)));
        assert_eq!(vs[1], (r(1, 1), r(2, 1)));
        assert_eq!(vs[2], (r(2, 1), r(0, 1)));
        assert_eq!(vs[3], (r(2, 1), r(0, 1)));
        let (u, v) = reg.sample_interior();
        assert!(reg.contains(&u, &v));
        assert!(!reg.contains(&r(0, 1), &r(1, 1)));
        assert_eq!(reg.area(), r(1, 2));
    }

    #[test]
    fn midpoint_matches_exact() {
        let reg = triangle_upper();
        let p = Poly2::affine(r(8, 1), r(-4, 1), r(-2, 1)).pow(2);
        let exact = integrate_region(&p, &reg).to_f64();
        let numeric = midpoint_integrate(&p, &reg, 400);
        assert!((numeric - exact).abs() / exact.abs() < 1e-4);
        let seq = midpoint_integrate_seq(&p, &reg, 400);
        assert!((seq - numeric).abs() < 1e-9);
    }
}
