//! Intersection theory and cone tests on a product of four projective
//! lines, specialised to the smooth threefold `X` of multidegree
//! (1,1,1,1) inside it.
//!
//! Divisor classes on `X` are written in the basis of the four fiber
//! classes `Y1..Y4` pulled back from the factors.  Quadruple products in
//! the ambient product are permanents of the 4 x 4 coefficient matrix, and
//! triple products on `X` are quadruple products against the class of `X`
//! itself, which is again (1,1,1,1).
//!
//! The effective cone of `X` is generated by the four fibers together with
//! the four exceptional-type divisors `S_ijk` (coordinates +1 on slots
//! `i, j, k` and -1 on the remaining slot); the curves `l_ijk` dual to the
//! fibers rule them.  Membership is decided two independent ways: through
//! the six facet inequalities `d_i + d_j >= 0`, and by enumerating
//! supporting bases of generators.

use crate::exactnum::{
    integrate_univariate_u, AffineU, ExactError, Poly2, Rational,
};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmbientError {
    #[error("the zero class has no threshold")]
    ZeroClass,
    #[error("threshold is unbounded: {0}")]
    UnboundedThreshold(String),
    #[error("generator {0} is not a divisor")]
    NotADivisor(String),
    #[error("generator {0} is not a curve")]
    NotACurve(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Divisor class on the threefold in fiber coordinates, with polynomial
/// coefficients so one-parameter families can be handled symbolically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiDegree {
    coords: [Poly2; 4],
}

impl MultiDegree {
    pub fn from_polys(coords: [Poly2; 4]) -> Self {
        MultiDegree { coords }
    }

    pub fn from_rationals(coords: [Rational; 4]) -> Self {
        MultiDegree {
            coords: coords.map(Poly2::constant),
        }
    }

    pub fn from_ints(coords: [i64; 4]) -> Self {
        MultiDegree {
            coords: coords.map(Poly2::from_int),
        }
    }

    /// The anticanonical class of the threefold, (1,1,1,1); the same
    /// coordinates describe the class of the threefold in the ambient
    /// product.
    pub fn anticanonical() -> Self {
        MultiDegree::from_ints([1, 1, 1, 1])
    }

    pub fn coords(&self) -> &[Poly2; 4] {
        &self.coords
    }

    pub fn coord(&self, slot: usize) -> &Poly2 {
        &self.coords[slot]
    }

    /// `Some` when every coordinate is a rational constant.
    pub fn as_rationals(&self) -> Option<[Rational; 4]> {
        let c0 = self.coords[0].as_constant()?;
        let c1 = self.coords[1].as_constant()?;
        let c2 = self.coords[2].as_constant()?;
        let c3 = self.coords[3].as_constant()?;
        Some([c0, c1, c2, c3])
    }

    /// Evaluates a `u`-family at a parameter value.
    pub fn eval_u(&self, u: &Rational) -> Result<[Rational; 4], AmbientError> {
        let zero = Rational::zero();
        let mut out = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        for (slot, c) in self.coords.iter().enumerate() {
            if c.deg_v() > 0 {
                return Err(ExactError::NotUnivariateU(c.to_string()).into());
            }
            out[slot] = c.eval(u, &zero);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MultiDegree {
            coords: self.coords.clone().map(|p| p.scale(c)),
        }
    }

    pub fn scale_poly(&self, p: &Poly2) -> Self {
        MultiDegree {
            coords: self.coords.clone().map(|c| &c * p),
        }
    }

    pub fn add(&self, rhs: &MultiDegree) -> Self {
        let mut coords = self.coords.clone();
        for (slot, c) in coords.iter_mut().enumerate() {
            *c = &*c + &rhs.coords[slot];
        }
        MultiDegree { coords }
    }

    pub fn sub(&self, rhs: &MultiDegree) -> Self {
        let mut coords = self.coords.clone();
        for (slot, c) in coords.iter_mut().enumerate() {
            *c = &*c - &rhs.coords[slot];
        }
        MultiDegree { coords }
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )
    }
}

/// Named generators of the effective cones: fiber divisors `Yi`,
/// exceptional-type divisors `Sijk`, and the ruling curves `lijk`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    Fiber(u8),
    Exceptional(u8, u8, u8),
    Line(u8, u8, u8),
}

const TRIPLES: [(u8, u8, u8); 4] = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)];

impl Generator {
    pub fn fibers() -> [Generator; 4] {
        [1, 2, 3, 4].map(Generator::Fiber)
    }

    pub fn exceptionals() -> [Generator; 4] {
        TRIPLES.map(|(i, j, k)| Generator::Exceptional(i, j, k))
    }

    pub fn lines() -> [Generator; 4] {
        TRIPLES.map(|(i, j, k)| Generator::Line(i, j, k))
    }

    /// The eight generators of the pseudo-effective cone of divisors.
    pub fn divisors() -> [Generator; 8] {
        let mut out = [Generator::Fiber(1); 8];
        out[..4].copy_from_slice(&Generator::fibers());
        out[4..].copy_from_slice(&Generator::exceptionals());
        out
    }

    pub fn name(&self) -> String {
        match *self {
            Generator::Fiber(i) => format!("Y{i}"),
            Generator::Exceptional(i, j, k) => format!("S{i}{j}{k}"),
            Generator::Line(i, j, k) => format!("l{i}{j}{k}"),
        }
    }

    /// For a divisor generator, its fiber coordinates.
    pub fn divisor_class(&self) -> Result<MultiDegree, AmbientError> {
        match *self {
            Generator::Fiber(i) => {
                let mut c = [0i64; 4];
                c[i as usize - 1] = 1;
                Ok(MultiDegree::from_ints(c))
            }
            Generator::Exceptional(i, j, k) => {
                let mut c = [0i64; 4];
                c[i as usize - 1] = 1;
                c[j as usize - 1] = 1;
                c[k as usize - 1] = 1;
                c[complement(i, j, k) as usize - 1] = -1;
                Ok(MultiDegree::from_ints(c))
            }
            Generator::Line(..) => Err(AmbientError::NotADivisor(self.name())),
        }
    }

    /// For a curve generator, its intersection numbers with `Y1..Y4`.
    pub fn curve_profile(&self) -> Result<[i64; 4], AmbientError> {
        match *self {
            Generator::Line(i, j, k) => {
                let mut p = [0i64; 4];
                p[complement(i, j, k) as usize - 1] = 1;
                Ok(p)
            }
            _ => Err(AmbientError::NotACurve(self.name())),
        }
    }

    /// The ruling curve of an exceptional-type divisor.
    pub fn ruling(&self) -> Result<Generator, AmbientError> {
        match *self {
            Generator::Exceptional(i, j, k) => Ok(Generator::Line(i, j, k)),
            _ => Err(AmbientError::NotADivisor(self.name())),
        }
    }
}

fn complement(i: u8, j: u8, k: u8) -> u8 {
    10 - i - j - k
}

/// Quadruple intersection product in the ambient product of lines: the
/// permanent of the 4 x 4 matrix of fiber coordinates.
pub fn quad_product(
    a: &MultiDegree,
    b: &MultiDegree,
    c: &MultiDegree,
    d: &MultiDegree,
) -> Poly2 {
    let rows = [a.coords(), b.coords(), c.coords(), d.coords()];
    let mut total = Poly2::zero();
    let mut used = [false; 4];
    permanent_rec(&rows, 0, &mut used, &Poly2::one(), &mut total);
    total
}

fn permanent_rec(
    rows: &[&[Poly2; 4]; 4],
    row: usize,
    used: &mut [bool; 4],
    acc: &Poly2,
    total: &mut Poly2,
) {
    if row == 4 {
        *total = &*total + acc;
        return;
    }
    for col in 0..4 {
        if used[col] || rows[row][col].is_zero() {
            continue;
        }
        let next = acc * &rows[row][col];
        used[col] = true;
        permanent_rec(rows, row + 1, used, &next, total);
        used[col] = false;
    }
}

/// Triple intersection product on the threefold.
pub fn triple_on_x(a: &MultiDegree, b: &MultiDegree, c: &MultiDegree) -> Poly2 {
    quad_product(a, b, c, &MultiDegree::anticanonical())
}

/// Anticanonical volume of a class on the threefold.
pub fn volume(d: &MultiDegree) -> Poly2 {
    triple_on_x(d, d, d)
}

/// Intersection number of a divisor family with a named curve.
pub fn pair_with_curve(d: &MultiDegree, curve: Generator) -> Result<Poly2, AmbientError> {
    let profile = curve.curve_profile()?;
    let mut total = Poly2::zero();
    for (slot, &m) in profile.iter().enumerate() {
        if m != 0 {
            total = &total + &d.coord(slot).scale(&Rational::from_int(m));
        }
    }
    Ok(total)
}

/// Nef test: the nef cone is the positive orthant in fiber coordinates.
pub fn is_nef(class: &[Rational; 4]) -> bool {
    class.iter().all(|c| !c.is_negative())
}

/// Pseudo-effectivity through the facet description of the cone: all six
/// pairwise coordinate sums must be nonnegative.  Cross-checked against
/// `is_pseff_by_basis_enumeration` in the test suite.
pub fn is_pseff(class: &[Rational; 4]) -> bool {
    for i in 0..4 {
        for j in i + 1..4 {
            if (&class[i] + &class[j]).is_negative() {
                return false;
            }
        }
    }
    true
}

/// Pseudo-effectivity by exhaustive search for a supporting basis: the
/// class must be a nonnegative combination of some linearly independent
/// four of the eight cone generators.
pub fn is_pseff_by_basis_enumeration(class: &[Rational; 4]) -> bool {
    let gens: Vec<[Rational; 4]> = Generator::divisors()
        .iter()
        .map(|g| {
            g.divisor_class()
                .expect("divisor generator")
                .as_rationals()
                .expect("constant coordinates")
        })
        .collect();
    let rhs = class.to_vec();
    let idx = [0usize, 1, 2, 3, 4, 5, 6, 7];
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                for d in c + 1..8 {
                    let pick = [idx[a], idx[b], idx[c], idx[d]];
                    let mat: Vec<Vec<Rational>> = (0..4)
                        .map(|row| pick.iter().map(|&g| gens[g][row].clone()).collect())
                        .collect();
                    if let Some(sol) = crate::linalg::solve_rational(&mat, &rhs) {
                        if sol.iter().all(|c| !c.is_negative()) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Largest `x` with `l - x f` nef, from the coordinatewise boundary
/// conditions.  Requires `l` nef and `f` nonzero.
pub fn nef_threshold(l: &[Rational; 4], f: &[Rational; 4]) -> Result<Rational, AmbientError> {
    if f.iter().all(|c| c.is_zero()) {
        return Err(AmbientError::ZeroClass);
    }
    if !is_nef(l) {
        return Err(AmbientError::Validation(
            "nef threshold requires a nef starting class".into(),
        ));
    }
    let mut best: Option<Rational> = None;
    for slot in 0..4 {
        if f[slot].is_positive() {
            let bound = &l[slot] / &f[slot];
            best = Some(match best {
                Some(b) => b.min(bound),
                None => bound,
            });
        }
    }
    best.ok_or_else(|| {
        AmbientError::UnboundedThreshold("no coordinate constrains the nef segment".into())
    })
}

/// Largest `x` with `l - x f` pseudo-effective, from the six facet
/// boundary conditions.
pub fn pseff_threshold(l: &[Rational; 4], f: &[Rational; 4]) -> Result<Rational, AmbientError> {
    if f.iter().all(|c| c.is_zero()) {
        return Err(AmbientError::ZeroClass);
    }
    if !is_pseff(l) {
        return Err(AmbientError::Validation(
            "pseudo-effective threshold requires a pseudo-effective starting class".into(),
        ));
    }
    let mut best: Option<Rational> = None;
    for i in 0..4 {
        for j in i + 1..4 {
            let fs = &f[i] + &f[j];
            if fs.is_positive() {
                let bound = (&l[i] + &l[j]) / fs;
                best = Some(match best {
                    Some(b) => b.min(bound),
                    None => bound,
                });
            }
        }
    }
    best.ok_or_else(|| {
        AmbientError::UnboundedThreshold(
            "no facet constrains the pseudo-effective segment".into(),
        )
    })
}

/// One chamber of a parametric Zariski decomposition on the threefold:
/// positive part `P(u)` and the negative-part coefficients, all affine in
/// the parameter.
#[derive(Clone, Debug)]
pub struct ThreefoldChamber {
    pub u_lo: Rational,
    pub u_hi: Rational,
    pub positive: MultiDegree,
    pub negative: Vec<(Generator, AffineU)>,
}

impl ThreefoldChamber {
    pub fn volume_poly(&self) -> Poly2 {
        volume(&self.positive)
    }
}

/// Chambered Zariski decomposition of the family `-K - u F` for a divisor
/// generator `F`, from `u = 0` out to the pseudo-effective threshold.
#[derive(Clone, Debug)]
pub struct ThreefoldZariski {
    pub chambers: Vec<ThreefoldChamber>,
}

/// Decomposes `-K - u F`.  For a fiber `Yi` there are two chambers: the
/// nef segment, then a chamber where the complementary `Sjkl` enters the
/// negative part with coefficient `u - 1`.  For an `Sijk` the nef and
/// pseudo-effective thresholds coincide and a single chamber remains.
/// Nefness of `P(u)`, vanishing against the rulings of the negative
/// support, and continuity across walls are all validated exactly.
pub fn zariski_threefold(gen: Generator) -> Result<ThreefoldZariski, AmbientError> {
    let f = gen.divisor_class()?;
    let f_coords = f.as_rationals().expect("generator coordinates are constant");
    let minus_k = MultiDegree::anticanonical();
    let k_coords = minus_k.as_rationals().expect("constant");
    let eps = nef_threshold(&k_coords, &f_coords)?;
    let tau = pseff_threshold(&k_coords, &f_coords)?;

    let base = minus_k.sub(&f.scale_poly(&Poly2::u()));
    let mut chambers = vec![ThreefoldChamber {
        u_lo: Rational::zero(),
        u_hi: eps.clone(),
        positive: base.clone(),
        negative: Vec::new(),
    }];

    if tau > eps {
        let support = match gen {
            Generator::Fiber(i) => {
                let (a, b, c) = TRIPLES
                    .into_iter()
                    .find(|&(a, b, c)| a != i && b != i && c != i)
                    .expect("complementary triple");
                Generator::Exceptional(a, b, c)
            }
            _ => {
                return Err(AmbientError::Validation(format!(
                    "no chamber data past the nef threshold for {}",
                    gen.name()
                )))
            }
        };
        // coefficient u - eps on the second chamber
        let coeff = AffineU::new(-&eps, Rational::one());
        let positive = base.sub(&support.divisor_class()?.scale_poly(&coeff.to_poly()));
        chambers.push(ThreefoldChamber {
            u_lo: eps,
            u_hi: tau,
            positive,
            negative: vec![(support, coeff)],
        });
    }

    let z = ThreefoldZariski { chambers };
    validate_threefold(&z)?;
    Ok(z)
}

fn validate_threefold(z: &ThreefoldZariski) -> Result<(), AmbientError> {
    for ch in &z.chambers {
        for u in [&ch.u_lo, &ch.u_hi] {
            let coords = ch.positive.eval_u(u)?;
            if !is_nef(&coords) {
                return Err(AmbientError::Validation(format!(
                    "positive part {} is not nef at u = {u}",
                    ch.positive
                )));
            }
        }
        for (gen, coeff) in &ch.negative {
            for u in [&ch.u_lo, &ch.u_hi] {
                if coeff.eval(u).is_negative() {
                    return Err(AmbientError::Validation(format!(
                        "negative coefficient of {} at u = {u}",
                        gen.name()
                    )));
                }
            }
            let against_ruling = pair_with_curve(&ch.positive, gen.ruling()?)?;
            if !against_ruling.is_zero() {
                return Err(AmbientError::Validation(format!(
                    "P does not vanish on the ruling of {}: {}",
                    gen.name(),
                    against_ruling
                )));
            }
        }
    }
    for pair in z.chambers.windows(2) {
        if pair[0].u_hi != pair[1].u_lo {
            return Err(AmbientError::Validation("chambers are not contiguous".into()));
        }
        let left = pair[0].positive.eval_u(&pair[0].u_hi)?;
        let right = pair[1].positive.eval_u(&pair[1].u_lo)?;
        if left != right {
            return Err(AmbientError::Validation(
                "positive part is discontinuous across a wall".into(),
            ));
        }
    }
    Ok(())
}

/// Expected anticanonical share of a divisor generator: the volume
/// integral of the parametric Zariski decomposition of `-K - u F`,
/// normalised by the anticanonical degree.
pub fn s_x(gen: Generator) -> Result<Rational, AmbientError> {
    let z = zariski_threefold(gen)?;
    let degree = volume(&MultiDegree::anticanonical())
        .as_constant()
        .expect("anticanonical degree is a number");
    let mut total = Rational::zero();
    for ch in &z.chambers {
        total += &integrate_univariate_u(&ch.volume_poly(), &ch.u_lo, &ch.u_hi)?;
    }
    Ok(total / degree)
}

/// Stability excess `A - S` of a divisor generator; positive for every
/// generator exactly when the divisorial part of the story is stable.
pub fn beta(gen: Generator) -> Result<Rational, AmbientError> {
    Ok(Rational::one() - s_x(gen)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn rats(c: [i64; 4]) -> [Rational; 4] {
        c.map(Rational::from_int)
    }

    #[test]
    fn anticanonical_degree_is_24() {
        let k = MultiDegree::anticanonical();
        assert_eq!(volume(&k).as_constant().unwrap(), r(24, 1));
    }

    #[test]
    fn permanent_kills_repeated_fibers() {
        let y1 = Generator::Fiber(1).divisor_class().unwrap();
        let ones = MultiDegree::anticanonical();
        assert!(quad_product(&y1, &y1, &ones, &ones).is_zero());
    }

    #[test]
    fn fiber_family_volume() {
        // vol(-K - u Y1) = 24 - 18u on the nef segment
        let y1 = Generator::Fiber(1).divisor_class().unwrap();
        let d = MultiDegree::anticanonical().sub(&y1.scale_poly(&Poly2::u()));
        let expected = Poly2::from_terms([(0, 0, r(24, 1)), (1, 0, r(-18, 1))]);
        assert_eq!(volume(&d), expected);
    }

    #[test]
    fn second_chamber_volume() {
        let z = zariski_threefold(Generator::Fiber(1)).unwrap();
        assert_eq!(z.chambers.len(), 2);
        let ch = &z.chambers[1];
        // P(u) = (0, 2-u, 2-u, 2-u), vol = 6(2-u)^3
        let two_minus_u = Poly2::affine(r(2, 1), r(-1, 1), r(0, 1));
        let expected_p = MultiDegree::from_polys([
            Poly2::zero(),
            two_minus_u.clone(),
            two_minus_u.clone(),
            two_minus_u.clone(),
        ]);
        assert_eq!(ch.positive, expected_p);
        assert_eq!(ch.volume_poly(), two_minus_u.pow(3).scale(&r(6, 1)));
        assert_eq!(ch.negative.len(), 1);
        assert_eq!(ch.negative[0].0.name(), "S234");
        assert_eq!(ch.negative[0].1, AffineU::new(r(-1, 1), r(1, 1)));
        // volume vanishes at the pseudo-effective threshold
        assert!(ch.volume_poly().eval(&r(2, 1), &r(0, 1)).is_zero());
    }

    #[test]
    fn cone_membership() {
        assert!(is_nef(&rats([1, 1, 1, 1])));
        assert!(is_nef(&rats([0, 0, 0, 0])));
        assert!(!is_nef(&rats([-1, 1, 1, 1])));
        for class in [rats([-1, 1, 1, 1]), rats([0, 0, 0, 0]), rats([2, 0, 1, 0])] {
            assert!(is_pseff(&class));
            assert!(is_pseff_by_basis_enumeration(&class));
        }
        for class in [rats([-1, 1, 1, 0]), rats([-1, 0, 0, 0])] {
            assert!(!is_pseff(&class));
            assert!(!is_pseff_by_basis_enumeration(&class));
        }
    }

    #[test]
    fn thresholds_for_generators() {
        let k = rats([1, 1, 1, 1]);
        let y1 = rats([1, 0, 0, 0]);
        let s234 = rats([-1, 1, 1, 1]);
        assert_eq!(nef_threshold(&k, &y1).unwrap(), r(1, 1));
        assert_eq!(pseff_threshold(&k, &y1).unwrap(), r(2, 1));
        assert_eq!(nef_threshold(&k, &s234).unwrap(), r(1, 1));
        assert_eq!(pseff_threshold(&k, &s234).unwrap(), r(1, 1));
        // bracket the boundary on a fine rational grid
        let at = |x: Rational| {
            let f = &s234;
            let mut c = k.clone();
            for slot in 0..4 {
                c[slot] = &c[slot] - &(&x * &f[slot]);
            }
            c
        };
        assert!(is_pseff(&at(r(1, 1))));
        assert!(!is_pseff(&at(r(1001, 1000))));
        assert!(is_pseff_by_basis_enumeration(&at(r(999, 1000))));
        assert!(!is_pseff_by_basis_enumeration(&at(r(1001, 1000))));
    }

    #[test]
    fn threshold_errors() {
        let k = rats([1, 1, 1, 1]);
        assert_eq!(
            nef_threshold(&k, &rats([0, 0, 0, 0])),
            Err(AmbientError::ZeroClass)
        );
        assert!(matches!(
            nef_threshold(&k, &rats([-1, 0, 0, 0])),
            Err(AmbientError::UnboundedThreshold(_))
        ));
        assert!(nef_threshold(&rats([-1, 1, 1, 1]), &rats([1, 0, 0, 0])).is_err());
    }

    #[test]
    fn expected_shares_and_excess() {
        for gen in Generator::fibers() {
            assert_eq!(s_x(gen).unwrap(), r(33, 48));
            assert_eq!(beta(gen).unwrap(), r(15, 48));
        }
        for gen in Generator::exceptionals() {
            assert_eq!(s_x(gen).unwrap(), r(3, 8));
        }
        for gen in Generator::divisors() {
            assert!(beta(gen).unwrap().is_positive(), "beta({}) <= 0", gen.name());
        }
    }

    #[test]
    fn exceptional_share_against_numeric_grid() {
        // independent double-precision permanent on a midpoint grid
        fn perm4(m: [[f64; 4]; 4]) -> f64 {
            let mut total = 0.0;
            let cols = [0usize, 1, 2, 3];
            // all 24 permutations by swaps
            fn heap(k: usize, c: &mut [usize; 4], m: &[[f64; 4]; 4], total: &mut f64) {
                if k == 1 {
                    *total += (0..4).map(|r| m[r][c[r]]).product::<f64>();
                    return;
                }
                for i in 0..k {
                    heap(k - 1, c, m, total);
                    if k % 2 == 0 {
                        c.swap(i, k - 1);
                    } else {
                        c.swap(0, k - 1);
                    }
                }
            }
            let mut c = cols;
            heap(4, &mut c, &m, &mut total);
            total
        }
        let n = 4000;
        let mut acc = 0.0;
        for i in 0..n {
            let u = (i as f64 + 0.5) / n as f64;
            let d = [1.0 + u, 1.0 - u, 1.0 - u, 1.0 - u];
            let m = [d, d, d, [1.0, 1.0, 1.0, 1.0]];
            acc += perm4(m) / n as f64;
        }
        let numeric = acc / 24.0;
        let exact = s_x(Generator::Exceptional(2, 3, 4)).unwrap().to_f64();
        assert_eq!(s_x(Generator::Exceptional(2, 3, 4)).unwrap(), r(3, 8));
        assert!((numeric - exact).abs() < 1e-4);
    }

    #[test]
    fn curve_pairings() {
        let y1 = Generator::Fiber(1).divisor_class().unwrap();
        let s234 = Generator::Exceptional(2, 3, 4).divisor_class().unwrap();
        let l234 = Generator::Line(2, 3, 4);
        assert_eq!(
            pair_with_curve(&y1, l234).unwrap().as_constant().unwrap(),
            r(1, 1)
        );
        assert_eq!(
            pair_with_curve(&s234, l234).unwrap().as_constant().unwrap(),
            r(-1, 1)
        );
        assert!(pair_with_curve(&y1, Generator::Fiber(2)).is_err());
        assert_eq!(Generator::Exceptional(2, 3, 4).ruling().unwrap().name(), "l234");
    }

    #[test]
    fn generator_names() {
        let names: Vec<String> = Generator::divisors().iter().map(|g| g.name()).collect();
        assert_eq!(
            names,
            ["Y1", "Y2", "Y3", "Y4", "S123", "S124", "S134", "S234"]
        );
        let lines: Vec<String> = Generator::lines().iter().map(|g| g.name()).collect();
        assert_eq!(lines, ["l123", "l124", "l134", "l234"]);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_class() -> impl Strategy<Value = [Rational; 4]> {
            proptest::array::uniform4((-6i64..=6, 1i64..=4))
                .prop_map(|c| c.map(|(n, d)| Rational::new(n, d)))
        }

        fn permutation() -> impl Strategy<Value = [usize; 4]> {
            let all: Vec<[usize; 4]> = {
                let mut out = Vec::new();
                let mut c = [0usize, 1, 2, 3];
                fn heap(k: usize, c: &mut [usize; 4], out: &mut Vec<[usize; 4]>) {
                    if k == 1 {
                        out.push(*c);
                        return;
                    }
                    for i in 0..k {
                        heap(k - 1, c, out);
                        if k % 2 == 0 {
                            c.swap(i, k - 1);
                        } else {
                            c.swap(0, k - 1);
                        }
                    }
                }
                heap(4, &mut c, &mut out);
                out
            };
            proptest::sample::select(all)
        }

        proptest! {
            #[test]
            fn quad_product_is_symmetric_under_slot_permutations(
                a in small_class(),
                b in small_class(),
                c in small_class(),
                d in small_class(),
                perm in permutation(),
            ) {
                let md = |cs: &[Rational; 4]| MultiDegree::from_rationals(cs.clone());
                let permute = |cs: &[Rational; 4]| {
                    let mut out = cs.clone();
                    for (slot, &p) in perm.iter().enumerate() {
                        out[slot] = cs[p].clone();
                    }
                    out
                };
                let plain = quad_product(&md(&a), &md(&b), &md(&c), &md(&d));
                let rotated = quad_product(
                    &md(&permute(&a)),
                    &md(&permute(&b)),
                    &md(&permute(&c)),
                    &md(&permute(&d)),
                );
                prop_assert_eq!(plain, rotated);
            }

            #[test]
            fn facets_agree_with_basis_enumeration(class in small_class()) {
                prop_assert_eq!(
                    is_pseff(&class),
                    is_pseff_by_basis_enumeration(&class)
                );
            }
        }
    }
}
