use std::fmt;
use std::fmt::Write as _;

use super::SurfaceError;
use crate::exactnum::{Poly2, Rational};

/// A negative curve on the surface: its display name and coordinates in
/// the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeCurve {
    pub name: String,
    pub coords: Vec<Rational>,
}

/// Intersection lattice of a sextic del Pezzo surface together with the
/// list of negative curves that can carry a Zariski negative part.
///
/// Two presets cover the fibers that occur on the threefold: the generic
/// smooth fiber, with the full hexagon of six (-1)-curves, and the
/// half-integral lattice of a fiber with one A1 singularity, whose only
/// negative curve squares to -1/2.  The gram matrix of the singular preset
/// is degenerate because the chosen spanning classes satisfy one relation;
/// all pairings against it remain well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPLattice {
    name: String,
    basis: Vec<String>,
    gram: Vec<Vec<Rational>>,
    anticanonical: Vec<Rational>,
    negative: Vec<NegativeCurve>,
}

impl DPLattice {
    pub fn new(
        name: &str,
        basis: Vec<String>,
        gram: Vec<Vec<Rational>>,
        anticanonical: Vec<Rational>,
        negative: Vec<NegativeCurve>,
    ) -> Result<Self, SurfaceError> {
        let lat = DPLattice {
            name: name.to_owned(),
            basis,
            gram,
            anticanonical,
            negative,
        };
        lat.validate()?;
        Ok(lat)
    }

    fn validate(&self) -> Result<(), SurfaceError> {
        let n = self.basis.len();
        if self.gram.len() != n || self.gram.iter().any(|row| row.len() != n) {
            return Err(SurfaceError::InvalidLattice(format!(
                "gram matrix of lattice `{}` is not {n} x {n}",
                self.name
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(SurfaceError::InvalidLattice(format!(
                        "gram matrix of `{}` is not symmetric at ({i}, {j})",
                        self.name
                    )));
                }
            }
        }
        if self.anticanonical.len() != n {
            return Err(SurfaceError::InvalidLattice(format!(
                "anticanonical class of `{}` has wrong length",
                self.name
            )));
        }
        let k2 = self.pair_rational(&self.anticanonical, &self.anticanonical)?;
        if k2 != Rational::from_int(6) {
            return Err(SurfaceError::InvalidLattice(format!(
                "anticanonical self-intersection of `{}` is {k2}, expected 6",
                self.name
            )));
        }
        for curve in &self.negative {
            if curve.coords.len() != n {
                return Err(SurfaceError::InvalidLattice(format!(
                    "curve {} of `{}` has wrong length",
                    curve.name, self.name
                )));
            }
            let sq = self.pair_rational(&curve.coords, &curve.coords)?;
            if !sq.is_negative() {
                return Err(SurfaceError::InvalidLattice(format!(
                    "curve {} of `{}` has square {sq}, expected negative",
                    curve.name, self.name
                )));
            }
            let deg = self.pair_rational(&self.anticanonical, &curve.coords)?;
            if deg != Rational::one() {
                return Err(SurfaceError::InvalidLattice(format!(
                    "curve {} of `{}` has anticanonical degree {deg}, expected 1",
                    curve.name, self.name
                )));
            }
        }
        Ok(())
    }

    /// Generic smooth sextic del Pezzo: the plane blown up in three general
    /// points, basis (L, e1, e2, e3), hexagon of six (-1)-curves.
    pub fn smooth() -> Self {
        let r = Rational::from_int;
        let gram = vec![
            vec![r(1), r(0), r(0), r(0)],
            vec![r(0), r(-1), r(0), r(0)],
            vec![r(0), r(0), r(-1), r(0)],
            vec![r(0), r(0), r(0), r(-1)],
        ];
        let curve = |name: &str, coords: [i64; 4]| NegativeCurve {
            name: name.to_owned(),
            coords: coords.map(Rational::from_int).to_vec(),
        };
        DPLattice::new(
            "smooth",
            ["L", "e1", "e2", "e3"].map(String::from).to_vec(),
            gram,
            [3, -1, -1, -1].map(Rational::from_int).to_vec(),
            vec![
                curve("e1", [0, 1, 0, 0]),
                curve("e2", [0, 0, 1, 0]),
                curve("e3", [0, 0, 0, 1]),
                curve("L-e1-e2", [1, -1, -1, 0]),
                curve("L-e1-e3", [1, -1, 0, -1]),
                curve("L-e2-e3", [1, 0, -1, -1]),
            ],
        )
        .expect("smooth preset is valid")
    }

    /// Fiber with one A1 singularity, described on its minimal resolution
    /// through the spanning classes (-K, Z, E1) with E1^2 = -1/2; Z is the
    /// fiber of the conic-bundle structure through the singular point.
    pub fn singular() -> Self {
        let gram = vec![
            vec![Rational::from_int(6), Rational::from_int(2), Rational::one()],
            vec![Rational::from_int(2), Rational::zero(), Rational::one()],
            vec![Rational::one(), Rational::one(), Rational::new(-1, 2)],
        ];
        DPLattice::new(
            "singular",
            ["-K", "Z", "E1"].map(String::from).to_vec(),
            gram,
            [1, 0, 0].map(Rational::from_int).to_vec(),
            vec![NegativeCurve {
                name: "E1".to_owned(),
                coords: [0, 0, 1].map(Rational::from_int).to_vec(),
            }],
        )
        .expect("singular preset is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn negative_curves(&self) -> &[NegativeCurve] {
        &self.negative
    }

    pub fn anticanonical_coords(&self) -> &[Rational] {
        &self.anticanonical
    }

    pub fn anticanonical_class(&self) -> SurfaceClass {
        SurfaceClass::from_rationals(self.anticanonical.clone())
    }

    fn check_len(&self, len: usize) -> Result<(), SurfaceError> {
        if len != self.rank() {
            return Err(SurfaceError::LatticeMismatch {
                expected: self.rank(),
                got: len,
            });
        }
        Ok(())
    }

    pub fn pair_rational(
        &self,
        a: &[Rational],
        b: &[Rational],
    ) -> Result<Rational, SurfaceError> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let mut total = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                total += &(&(ai * bj) * &self.gram[i][j]);
            }
        }
        Ok(total)
    }

    /// Symbolic intersection pairing of two polynomial families.
    pub fn pair(&self, a: &SurfaceClass, b: &SurfaceClass) -> Result<Poly2, SurfaceError> {
        self.check_len(a.coords().len())?;
        self.check_len(b.coords().len())?;
        let mut total = Poly2::zero();
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords().iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                total = &total + &(ai * bj).scale(&self.gram[i][j]);
            }
        }
        Ok(total)
    }

    /// Pairing of a family against a fixed rational class.
    pub fn pair_class_vec(
        &self,
        a: &SurfaceClass,
        b: &[Rational],
    ) -> Result<Poly2, SurfaceError> {
        self.pair(a, &SurfaceClass::from_rationals(b.to_vec()))
    }

    /// Gram submatrix of a set of negative curves.
    pub fn negative_gram(&self, support: &[usize]) -> Vec<Vec<Rational>> {
        support
            .iter()
            .map(|&i| {
                support
                    .iter()
                    .map(|&j| {
                        self.pair_rational(
                            &self.negative[i].coords,
                            &self.negative[j].coords,
                        )
                        .expect("curve coordinates match the lattice")
                    })
                    .collect()
            })
            .collect()
    }

    /// Plain-text table of the lattice data with exact entries.
    pub fn text_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lattice {}", self.name);
        let _ = writeln!(out, "basis: {}", self.basis.join(" "));
        let _ = writeln!(out, "gram:");
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
        let cells: Vec<String> = self.anticanonical.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "-K: {}", cells.join(" "));
        let _ = writeln!(out, "negative curves:");
        for curve in &self.negative {
            let cells: Vec<String> = curve.coords.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "  {}: {}", curve.name, cells.join(" "));
        }
        out
    }
}

/// Divisor class (or two-parameter family of classes) on the surface,
/// written in the lattice basis with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    coords: Vec<Poly2>,
}

impl SurfaceClass {
    pub fn from_polys(coords: Vec<Poly2>) -> Self {
        SurfaceClass { coords }
    }

    pub fn from_rationals(coords: Vec<Rational>) -> Self {
        SurfaceClass {
            coords: coords.into_iter().map(Poly2::constant).collect(),
        }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        SurfaceClass {
            coords: coords.iter().map(|&c| Poly2::from_int(c)).collect(),
        }
    }

    pub fn coords(&self) -> &[Poly2] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when every coordinate is affine in `(u, v)`.
    pub fn is_affine_family(&self) -> bool {
        self.coords.iter().all(|c| {
            c.terms()
                .all(|(i, j, _)| (i, j) == (0, 0) || (i, j) == (1, 0) || (i, j) == (0, 1))
        })
    }

    pub fn add(&self, rhs: &SurfaceClass) -> Self {
        assert_eq!(self.coords.len(), rhs.coords.len());
        SurfaceClass {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &SurfaceClass) -> Self {
        assert_eq!(self.coords.len(), rhs.coords.len());
        SurfaceClass {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SurfaceClass {
            coords: self.coords.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly2) -> Self {
        SurfaceClass {
            coords: self.coords.iter().map(|c| c * p).collect(),
        }
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Vec<Rational> {
        self.coords.iter().map(|c| c.eval(u, v)).collect()
    }

    pub fn eval_f64(&self, u: f64, v: f64) -> Vec<f64> {
        self.coords.iter().map(|c| c.eval_f64(u, v)).collect()
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.coords.iter().map(|c| format!("{c}")).collect();
        write!(f, "({})", cells.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn presets_validate() {
        let smooth = DPLattice::smooth();
        assert_eq!(smooth.rank(), 4);
        assert_eq!(smooth.negative_curves().len(), 6);
        let singular = DPLattice::singular();
        assert_eq!(singular.rank(), 3);
        assert_eq!(singular.negative_curves().len(), 1);
    }

    #[test]
    fn smooth_hexagon_intersections() {
        let lat = DPLattice::smooth();
        // each hexagon curve meets exactly two others, once each
        for (i, a) in lat.negative_curves().iter().enumerate() {
            let mut ones = 0;
            for (j, b) in lat.negative_curves().iter().enumerate() {
                if i == j {
                    continue;
                }
                let p = lat.pair_rational(&a.coords, &b.coords).unwrap();
                if p == Rational::one() {
                    ones += 1;
                } else {
                    assert!(p.is_zero(), "{} . {} = {p}", a.name, b.name);
                }
            }
            assert_eq!(ones, 2, "curve {}", a.name);
        }
    }

    #[test]
    fn smooth_fiber_class() {
        let lat = DPLattice::smooth();
        // Z = L - e1 is a 0-curve of anticanonical degree 2 meeting exactly
        // one opposite pair of hexagon curves
        let z = vec![r(1, 1), r(-1, 1), r(0, 1), r(0, 1)];
        assert!(lat.pair_rational(&z, &z).unwrap().is_zero());
        assert_eq!(
            lat.pair_rational(lat.anticanonical_coords(), &z).unwrap(),
            r(2, 1)
        );
        let meets: Vec<Rational> = lat
            .negative_curves()
            .iter()
            .map(|c| lat.pair_rational(&z, &c.coords).unwrap())
            .collect();
        let expected: Vec<Rational> = [1, 0, 0, 0, 0, 1].map(Rational::from_int).to_vec();
        assert_eq!(meets, expected);
    }

    #[test]
    fn singular_preset_pairings() {
        let lat = DPLattice::singular();
        let k = lat.anticanonical_coords().to_vec();
        let z = vec![r(0, 1), r(1, 1), r(0, 1)];
        let e1 = vec![r(0, 1), r(0, 1), r(1, 1)];
        assert_eq!(lat.pair_rational(&k, &z).unwrap(), r(2, 1));
        assert!(lat.pair_rational(&z, &z).unwrap().is_zero());
        assert_eq!(lat.pair_rational(&z, &e1).unwrap(), r(1, 1));
        assert_eq!(lat.pair_rational(&e1, &e1).unwrap(), r(-1, 2));
        // the spanning classes satisfy -K = 2Z + 2E1 in the lattice
        let combo: Vec<Rational> = vec![r(-1, 1), r(2, 1), r(2, 1)];
        for probe in [&k, &z, &e1] {
            assert!(lat.pair_rational(&combo, probe).unwrap().is_zero());
        }
    }

    #[test]
    fn lattice_mismatch_is_reported() {
        let lat = DPLattice::smooth();
        let short = SurfaceClass::from_ints(&[1, 2]);
        let err = lat.pair(&short, &lat.anticanonical_class()).unwrap_err();
        assert_eq!(
            err,
            SurfaceError::LatticeMismatch {
                expected: 4,
                got: 2
            }
        );
    }

    #[test]
    fn invalid_lattices_are_rejected() {
        let r1 = Rational::from_int;
        // wrong anticanonical degree
        assert!(DPLattice::new(
            "bad",
            vec!["A".into()],
            vec![vec![r1(1)]],
            vec![r1(1)],
            vec![],
        )
        .is_err());
        // asymmetric gram
        assert!(DPLattice::new(
            "bad",
            vec!["A".into(), "B".into()],
            vec![vec![r1(6), r1(1)], vec![r1(0), r1(0)]],
            vec![r1(1), r1(0)],
            vec![],
        )
        .is_err());
    }

    #[test]
    fn text_table_round_trips_entries() {
        let table = DPLattice::singular().text_table();
        assert!(table.contains("lattice singular"));
        assert!(table.contains("basis: -K Z E1"));
        assert!(table.contains("-1/2"));
        assert!(table.contains("E1: 0 0 1"));
    }

    #[test]
    fn family_helpers() {
        let lat = DPLattice::smooth();
        // D(u, v) = -K - v Z with Z = L - e1
        let z = SurfaceClass::from_ints(&[1, -1, 0, 0]);
        let d = lat
            .anticanonical_class()
            .sub(&z.scale_poly(&Poly2::v()));
        assert!(d.is_affine_family());
        let dd = lat.pair(&d, &d).unwrap();
        // (-K - vZ)^2 = 6 - 4v
        assert_eq!(
            dd,
            Poly2::from_terms([(0, 0, r(6, 1)), (0, 1, r(-4, 1))])
        );
        let sq = lat.pair(&d.scale_poly(&Poly2::u()), &d).unwrap();
        assert!(!SurfaceClass::from_polys(vec![Poly2::u().pow(2)]).is_affine_family());
        assert_eq!(sq.coeff(1, 0), r(6, 1));
    }
}
