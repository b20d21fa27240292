use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactError, Rational};

/// Sparse polynomial in the two parameters `u` and `v` with rational
/// coefficients.  Terms are keyed by the exponent pair `(i, j)` of
/// `u^i * v^j` in a `BTreeMap`, so iteration order, equality and printing
/// are all deterministic.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Poly2::constant(Rational::from_int(n))
    }

    /// The monomial `u`.
    pub fn u() -> Self {
        let mut p = Poly2::zero();
        p.add_term(1, 0, Rational::one());
        p
    }

    /// The monomial `v`.
    pub fn v() -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 1, Rational::one());
        p
    }

    /// The affine polynomial `c0 + cu*u + cv*v`.
    pub fn affine(c0: Rational, cu: Rational, cv: Rational) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c0);
        p.add_term(1, 0, cu);
        p.add_term(0, 1, cv);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rational)>>(terms: I) -> Self {
        let mut p = Poly2::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `u^i * v^j`, zero when the term is absent.
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn deg_u(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_v(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly2::zero();
        }
        let mut p = Poly2::zero();
        for (&k, a) in &self.terms {
            p.terms.insert(k, a * c);
        }
        p
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Poly2::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (&(i, j), c) in &self.terms {
            let t = c * &u.pow(i) * &v.pow(j);
            total += &t;
        }
        total
    }

    /// Double-precision evaluation for the numeric oracles.
    pub fn eval_f64(&self, u: f64, v: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64() * u.powi(i as i32) * v.powi(j as i32))
            .sum()
    }

    /// Substitutes `v := line(u)`, leaving a polynomial in `u` alone.
    pub fn subst_v(&self, line: &AffineU) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            // (a + b u)^j expanded binomially
            for k in 0..=j {
                let coeff = c
                    * &binomial(j, k)
                    * &line.constant().pow(j - k)
                    * &line.slope().pow(k);
                out.add_term(i + k, 0, coeff);
            }
        }
        out
    }

    /// Antiderivative with respect to `v`, constant of integration zero.
    pub fn antiderivative_v(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j + 1, c / &Rational::from_int((j + 1) as i64));
        }
        out
    }

    /// Antiderivative with respect to `u`, constant of integration zero.
    pub fn antiderivative_u(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i + 1, j, c / &Rational::from_int((i + 1) as i64));
        }
        out
    }
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut num = 1i64;
    let mut den = 1i64;
    for t in 0..k.min(n - k) {
        num *= (n - t) as i64;
        den *= (t + 1) as i64;
    }
    Rational::new(num, den)
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&k, c) in &self.terms {
            out.terms.insert(k, -c);
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mono = monomial_text(i, j);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == Rational::one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn monomial_text(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("u".to_owned()),
        _ => parts.push(format!("u^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("v".to_owned()),
        _ => parts.push(format!("v^{j}")),
    }
    parts.join("*")
}

/// Affine function of `u` alone, `constant + slope * u`.  These describe
/// region boundaries and the walls of parametric Zariski chambers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineU {
    constant: Rational,
    slope: Rational,
}

impl AffineU {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        AffineU { constant, slope }
    }

    pub fn constant_fn(c: Rational) -> Self {
        AffineU::new(c, Rational::zero())
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn eval(&self, u: &Rational) -> Rational {
        &self.constant + &(&self.slope * u)
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.constant.to_f64() + self.slope.to_f64() * u
    }

    pub fn to_poly(&self) -> Poly2 {
        Poly2::affine(self.constant.clone(), self.slope.clone(), Rational::zero())
    }

    /// Reads an affine function of `u` off a polynomial, rejecting anything
    /// with a `v` term or a higher power of `u`.
    pub fn try_from_poly(p: &Poly2) -> Result<Self, ExactError> {
        if p.deg_v() > 0 {
            return Err(ExactError::NotAffineInU(p.to_string()));
        }
        if p.deg_u() > 1 {
            return Err(ExactError::NotAffineInU(p.to_string()));
        }
        Ok(AffineU::new(p.coeff(0, 0), p.coeff(1, 0)))
    }
}

impl fmt::Display for AffineU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(), f)
    }
}
