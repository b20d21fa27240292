use std::fmt;
use std::str::FromStr;

use super::FlagError;
use crate::exactnum::{AffineU, Poly2, Rational, Region};
use crate::surface::{DPLattice, SurfaceClass};

/// The four point-center configurations: which kind of fiber the flag
/// point sits on, and how many lines of the fiber pass through it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CaseName {
    SmoothNoLine,
    SmoothOneLine,
    SmoothTwoLines,
    SingularFiber,
}

impl CaseName {
    pub fn all() -> [CaseName; 4] {
        [
            CaseName::SmoothNoLine,
            CaseName::SmoothOneLine,
            CaseName::SmoothTwoLines,
            CaseName::SingularFiber,
        ]
    }

    /// Stable identifier used on the command line and in reports.
    pub fn id(&self) -> &'static str {
        match self {
            CaseName::SmoothNoLine => "smooth-no-line",
            CaseName::SmoothOneLine => "smooth-one-line",
            CaseName::SmoothTwoLines => "smooth-two-lines",
            CaseName::SingularFiber => "singular-fiber",
        }
    }

    /// Human-readable description of the configuration.
    pub fn title(&self) -> &'static str {
        match self {
            CaseName::SmoothNoLine => "smooth fiber, no line through the flag point",
            CaseName::SmoothOneLine => "smooth fiber, one line through the flag point",
            CaseName::SmoothTwoLines => "smooth fiber, two lines through the flag point",
            CaseName::SingularFiber => "singular fiber, general flag point",
        }
    }
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CaseName {
    type Err = FlagError;
    fn from_str(s: &str) -> Result<Self, FlagError> {
        CaseName::all()
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| FlagError::UnknownCase(s.to_owned()))
    }
}

/// A published value kept verbatim: the rational it denotes plus the text
/// it was printed as, which may be an unreduced fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedValue {
    pub value: Rational,
    pub text: String,
}

impl PrintedValue {
    pub fn new(text: &str) -> Self {
        PrintedValue {
            value: text.parse().expect("printed value parses as a rational"),
            text: text.to_owned(),
        }
    }
}

/// One quantity of the case report: its pinned exact value and, when the
/// source computation prints a number for it, that printed value.  An
/// erratum entry is one whose printed value disagrees with the exact one.
#[derive(Clone, Debug)]
pub struct ExpectedQuantity {
    pub key: &'static str,
    pub label: &'static str,
    pub exact: Rational,
    pub paper: Option<PrintedValue>,
    pub erratum: bool,
}

/// Fiber data for one chamber of the threefold decomposition: the box of
/// integration in `v`, and the multiplicity of the flag curve in the
/// restricted threefold negative part (zero in every preset).
#[derive(Clone, Debug)]
pub struct CaseChamber {
    pub u_lo: Rational,
    pub u_hi: Rational,
    pub v_top: AffineU,
    pub ord_z_of_n: Poly2,
}

/// Full data of one configuration.
///
/// The surface side of the flag is derived from exact lattice data; the
/// two pieces that encode geometric facts about the flag point — the
/// integration boxes and the order bounds — are configuration data,
/// validated structurally here and against vanishing of the volume on the
/// outer box boundary during evaluation.  The order bound is taken as zero
/// outside its listed regions.
#[derive(Clone, Debug)]
pub struct CaseConfig {
    pub name: CaseName,
    pub lattice: DPLattice,
    /// Class of the flag curve `Z` on the fiber.
    pub flag: SurfaceClass,
    /// Restriction of the threefold negative-support divisor to the fiber;
    /// its multiple in each threefold chamber is subtracted when forming
    /// the restricted family.
    pub cprime: SurfaceClass,
    /// Coefficient of the different of the flag pair at the point; enters
    /// the bound numerator as `1 - different_at_p`.
    pub different_at_p: Rational,
    pub chambers: Vec<CaseChamber>,
    /// Upper bound for the order function in the linear term, as
    /// region/polynomial pairs; zero off the listed regions.
    pub ord_bounds: Vec<(Region, Poly2)>,
    pub expected: Vec<ExpectedQuantity>,
}

fn exp(
    key: &'static str,
    label: &'static str,
    exact: &str,
    paper: Option<&str>,
    erratum: bool,
) -> ExpectedQuantity {
    ExpectedQuantity {
        key,
        label,
        exact: exact.parse().expect("pinned value parses as a rational"),
        paper: paper.map(PrintedValue::new),
        erratum,
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// The two threefold chambers shared by all four configurations: the flag
/// family lives over `u in [0, 1]` with `v` up to 2, then over `u in
/// [1, 2]` with `v` up to `4 - 2u`.
fn standard_chambers() -> Vec<CaseChamber> {
    vec![
        CaseChamber {
            u_lo: r(0, 1),
            u_hi: r(1, 1),
            v_top: AffineU::constant_fn(r(2, 1)),
            ord_z_of_n: Poly2::zero(),
        },
        CaseChamber {
            u_lo: r(1, 1),
            u_hi: r(2, 1),
            v_top: AffineU::new(r(4, 1), r(-2, 1)),
            ord_z_of_n: Poly2::zero(),
        },
    ]
}

/// The four quarters of the integration domain, in reading order: the two
/// `v`-halves of the first box, then the two wall-split parts of the
/// second.
fn standard_regions() -> [Region; 4] {
    let below_wall = AffineU::new(r(2, 1), r(-1, 1));
    let top = AffineU::new(r(4, 1), r(-2, 1));
    [
        Region::rect(r(0, 1), r(1, 1), r(0, 1), r(1, 1)).expect("valid region"),
        Region::rect(r(0, 1), r(1, 1), r(1, 1), r(2, 1)).expect("valid region"),
        Region::new(r(1, 1), r(2, 1), AffineU::constant_fn(r(0, 1)), below_wall.clone())
            .expect("valid region"),
        Region::new(r(1, 1), r(2, 1), below_wall, top).expect("valid region"),
    ]
}

fn ord_bounds_from(bounds: [Poly2; 4]) -> Vec<(Region, Poly2)> {
    standard_regions().into_iter().zip(bounds).collect()
}

fn u_minus_1() -> Poly2 {
    Poly2::affine(r(-1, 1), r(1, 1), r(0, 1))
}

fn v_minus_1() -> Poly2 {
    Poly2::affine(r(-1, 1), r(0, 1), r(1, 1))
}

impl CaseConfig {
    pub fn builtin(name: CaseName) -> CaseConfig {
        match name {
            CaseName::SmoothNoLine => smooth_no_line(),
            CaseName::SmoothOneLine => smooth_one_line(),
            CaseName::SmoothTwoLines => smooth_two_lines(),
            CaseName::SingularFiber => singular_fiber(),
        }
    }

    /// Structural coherence of the case data; evaluation re-validates the
    /// analytic parts (restriction identities, boundary vanishing).
    pub fn validate(&self) -> Result<(), FlagError> {
        let fail = |msg: String| Err(FlagError::InvalidCase(msg));
        let rank = self.lattice.rank();
        if self.flag.coords().len() != rank || self.cprime.coords().len() != rank {
            return fail(format!("class length does not match lattice rank {rank}"));
        }
        for class in [&self.flag, &self.cprime] {
            if class
                .coords()
                .iter()
                .any(|c| c.deg_u() > 0 || c.deg_v() > 0)
            {
                return fail("flag and restriction classes must be constant".into());
            }
        }
        if self.different_at_p.is_negative() || self.different_at_p >= Rational::one() {
            return fail(format!(
                "different coefficient {} outside [0, 1)",
                self.different_at_p
            ));
        }
        // the restriction class carries anticanonical degree 6 and square 6
        let csq = self.lattice.pair(&self.cprime, &self.cprime)?;
        let cdeg = self
            .lattice
            .pair(&self.cprime, &self.lattice.anticanonical_class())?;
        if csq.as_constant() != Some(Rational::from_int(6))
            || cdeg.as_constant() != Some(Rational::from_int(6))
        {
            return fail(format!(
                "restriction class has square {csq} and degree {cdeg}, expected 6 and 6"
            ));
        }
        if self.chambers.is_empty() {
            return fail("no chamber data".into());
        }
        for (i, ch) in self.chambers.iter().enumerate() {
            if ch.u_lo >= ch.u_hi {
                return fail(format!("chamber {i} has empty parameter range"));
            }
            if i > 0 && self.chambers[i - 1].u_hi != ch.u_lo {
                return fail(format!("chamber {i} does not continue the previous one"));
            }
            for u in [&ch.u_lo, &ch.u_hi] {
                if ch.v_top.eval(u).is_negative() {
                    return fail(format!("chamber {i} box has negative height at u = {u}"));
                }
            }
            if ch.ord_z_of_n.deg_v() > 0 {
                return fail(format!("chamber {i} multiplicity must not involve v"));
            }
        }
        for (region, bound) in &self.ord_bounds {
            let owner = self.chambers.iter().find(|ch| {
                region.u_lo() >= &ch.u_lo
                    && region.u_hi() <= &ch.u_hi
                    && [region.u_lo(), region.u_hi()].into_iter().all(|u| {
                        !region.v_lo().eval(u).is_negative()
                            && region.v_hi().eval(u) <= ch.v_top.eval(u)
                    })
            });
            if owner.is_none() {
                return fail(format!("order-bound region lies outside every box: {region}"));
            }
            if bound.deg_u() > 1 || bound.deg_v() > 1 || !bound.coeff(1, 1).is_zero() {
                return fail(format!("order bound {bound} is not affine"));
            }
            for (u, v) in region.vertices() {
                if bound.eval(&u, &v).is_negative() {
                    return fail(format!("order bound {bound} is negative at ({u}, {v})"));
                }
            }
        }
        let mut keys = std::collections::BTreeSet::new();
        for e in &self.expected {
            if !keys.insert(e.key) {
                return fail(format!("duplicate expected key {}", e.key));
            }
            match (&e.paper, e.erratum) {
                (None, true) => {
                    return fail(format!("erratum on {} without a printed value", e.key))
                }
                (Some(p), true) if p.value == e.exact => {
                    return fail(format!(
                        "erratum on {} but printed value {} matches",
                        e.key, p.text
                    ))
                }
                (Some(p), false) if p.value != e.exact => {
                    return fail(format!(
                        "printed value {} for {} disagrees with pinned {} and is not \
                         flagged as an erratum",
                        p.text, e.key, e.exact
                    ))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

pub fn builtin_cases() -> Vec<CaseConfig> {
    CaseName::all().map(CaseConfig::builtin).to_vec()
}

fn smooth_no_line() -> CaseConfig {
    let zero = Poly2::zero();
    CaseConfig {
        name: CaseName::SmoothNoLine,
        lattice: DPLattice::smooth(),
        // a 0-curve fiber class through the flag point
        flag: SurfaceClass::from_ints(&[1, -1, 0, 0]),
        cprime: SurfaceClass::from_ints(&[3, -1, -1, -1]),
        different_at_p: Rational::zero(),
        chambers: standard_chambers(),
        ord_bounds: ord_bounds_from([zero.clone(), zero, u_minus_1(), u_minus_1()]),
        expected: vec![
            exp("quad_partial_1", "quadratic partial 1", "4", Some("4"), false),
            exp("quad_partial_2", "quadratic partial 2", "4/3", Some("4/3"), false),
            exp("quad_partial_3", "quadratic partial 3", "1", Some("1"), false),
            exp("quad_partial_4", "quadratic partial 4", "1/3", Some("1/3"), false),
            exp("quad_term", "quadratic term", "5/6", Some("5/6"), false),
            exp("ord_partial_1", "ord partial 1", "0", None, false),
            exp("ord_partial_2", "ord partial 2", "0", None, false),
            exp("ord_partial_3", "ord partial 3", "1/6", Some("1/6"), false),
            exp("ord_partial_4", "ord partial 4", "1/12", Some("1/12"), false),
            exp("ord_sum", "ord sum (unscaled)", "1/4", Some("1/4"), false),
            exp("ord_term", "ord term", "1/16", Some("1/16"), false),
            exp("s_wyz_p", "S(W^{Y,Z};P)", "43/48", Some("43/48"), false),
            exp("swy_partial_1", "S(W^Y;Z) partial 1", "14/3", Some("14/3"), false),
            exp("swy_partial_2", "S(W^Y;Z) partial 2", "7/6", Some("7/6"), false),
            exp("s_wy_z", "S(W^Y;Z)", "35/48", Some("41/48"), true),
            exp("s_x_y", "S_X(Y)", "33/48", Some("33/48"), false),
            exp("delta_bound", "delta_P lower bound", "48/43", None, false),
        ],
    }
}

fn smooth_one_line() -> CaseConfig {
    let zero = Poly2::zero();
    CaseConfig {
        name: CaseName::SmoothOneLine,
        lattice: DPLattice::smooth(),
        // the unique line through the flag point
        flag: SurfaceClass::from_ints(&[0, 1, 0, 0]),
        cprime: SurfaceClass::from_ints(&[3, -1, -1, -1]),
        different_at_p: Rational::zero(),
        chambers: standard_chambers(),
        ord_bounds: ord_bounds_from([zero.clone(), zero, u_minus_1(), u_minus_1()]),
        expected: vec![
            exp("quad_partial_1", "quadratic partial 1", "7/3", Some("7/3"), false),
            exp("quad_partial_2", "quadratic partial 2", "7/3", Some("7/3"), false),
            exp("quad_partial_3", "quadratic partial 3", "7/12", Some("7/12"), false),
            exp("quad_partial_4", "quadratic partial 4", "7/12", Some("7/12"), false),
            exp("quad_term", "quadratic term", "35/48", Some("35/48"), false),
            exp("ord_partial_1", "ord partial 1", "0", None, false),
            exp("ord_partial_2", "ord partial 2", "0", None, false),
            exp("ord_partial_3", "ord partial 3", "1/8", Some("1/8"), false),
            exp("ord_partial_4", "ord partial 4", "1/8", Some("1/8"), false),
            exp("ord_sum", "ord sum (unscaled)", "1/4", Some("1/4"), false),
            exp("ord_term", "ord term", "1/16", Some("1/16"), false),
            exp("s_wyz_p", "S(W^{Y,Z};P)", "19/24", Some("47/48"), true),
            exp("swy_partial_1", "S(W^Y;Z) partial 1", "6", Some("6"), false),
            exp("swy_partial_2", "S(W^Y;Z) partial 2", "3/2", Some("3/2"), false),
            exp("s_wy_z", "S(W^Y;Z)", "15/16", Some("15/16"), false),
            exp("s_x_y", "S_X(Y)", "33/48", Some("33/48"), false),
            exp("delta_bound", "delta_P lower bound", "16/15", None, false),
        ],
    }
}

fn smooth_two_lines() -> CaseConfig {
    let zero = Poly2::zero();
    // total bound on the outer part: (u + v - 2) + (u - 1)
    let outer = Poly2::affine(r(-3, 1), r(2, 1), r(1, 1));
    CaseConfig {
        name: CaseName::SmoothTwoLines,
        lattice: DPLattice::smooth(),
        // one of the two lines through the flag point
        flag: SurfaceClass::from_ints(&[0, 1, 0, 0]),
        cprime: SurfaceClass::from_ints(&[3, -1, -1, -1]),
        different_at_p: Rational::zero(),
        chambers: standard_chambers(),
        ord_bounds: ord_bounds_from([zero, v_minus_1(), u_minus_1(), outer]),
        expected: vec![
            exp("quad_partial_1", "quadratic partial 1", "7/3", None, false),
            exp("quad_partial_2", "quadratic partial 2", "7/3", None, false),
            exp("quad_partial_3", "quadratic partial 3", "7/12", None, false),
            exp("quad_partial_4", "quadratic partial 4", "7/12", None, false),
            exp("quad_term", "quadratic term", "35/48", Some("35/48"), false),
            exp("ord_partial_1", "ord partial 1", "0", None, false),
            exp("ord_partial_2", "ord partial 2", "2/3", Some("2/3"), false),
            exp("ord_partial_3", "ord partial 3", "1/8", Some("1/8"), false),
            exp("ord_partial_4", "ord partial 4", "7/24", Some("7/24"), false),
            exp("ord_sum", "ord sum (unscaled)", "13/12", Some("13/12"), false),
            exp("ord_term", "ord term", "13/48", Some("13/48"), false),
            exp("s_wyz_p", "S(W^{Y,Z};P)", "1", Some("1"), false),
            exp("swy_partial_1", "S(W^Y;Z) partial 1", "6", None, false),
            exp("swy_partial_2", "S(W^Y;Z) partial 2", "3/2", None, false),
            exp("s_wy_z", "S(W^Y;Z)", "15/16", Some("15/16"), false),
            exp("s_x_y", "S_X(Y)", "33/48", Some("33/48"), false),
            exp("delta_bound", "delta_P lower bound", "1", Some("1"), false),
        ],
    }
}

fn singular_fiber() -> CaseConfig {
    let zero = Poly2::zero();
    CaseConfig {
        name: CaseName::SingularFiber,
        lattice: DPLattice::singular(),
        // the conic fiber through the flag point
        flag: SurfaceClass::from_ints(&[0, 1, 0]),
        cprime: SurfaceClass::from_ints(&[1, 0, 0]),
        different_at_p: Rational::zero(),
        chambers: standard_chambers(),
        ord_bounds: ord_bounds_from([zero.clone(), zero.clone(), zero.clone(), zero]),
        expected: vec![
            exp("quad_partial_1", "quadratic partial 1", "4", Some("4"), false),
            exp("quad_partial_2", "quadratic partial 2", "4/3", Some("4/3"), false),
            exp("quad_partial_3", "quadratic partial 3", "1", Some("1"), false),
            exp("quad_partial_4", "quadratic partial 4", "1/3", Some("1/3"), false),
            exp("quad_term", "quadratic term", "5/6", Some("5/6"), false),
            exp("ord_partial_1", "ord partial 1", "0", None, false),
            exp("ord_partial_2", "ord partial 2", "0", None, false),
            exp("ord_partial_3", "ord partial 3", "0", None, false),
            exp("ord_partial_4", "ord partial 4", "0", None, false),
            exp("ord_sum", "ord sum (unscaled)", "0", None, false),
            exp("ord_term", "ord term", "0", Some("0"), false),
            exp("s_wyz_p", "S(W^{Y,Z};P)", "5/6", Some("5/6"), false),
            exp("swy_partial_1", "S(W^Y;Z) partial 1", "14/3", Some("14/3"), false),
            exp("swy_partial_2", "S(W^Y;Z) partial 2", "7/6", Some("7/6"), false),
            exp("s_wy_z", "S(W^Y;Z)", "35/48", Some("35/48"), false),
            exp("s_x_y", "S_X(Y)", "33/48", Some("33/48"), false),
            exp("delta_bound", "delta_P lower bound", "6/5", None, false),
        ],
    }
}
