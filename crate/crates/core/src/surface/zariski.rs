use super::{DPLattice, SurfaceClass, SurfaceError};
use crate::exactnum::{AffineU, Poly2, Rational, Region};
use crate::linalg;

/// One chamber of a parametric surface Zariski decomposition: on `region`
/// the positive part is `positive` and the negative part is the listed
/// combination of negative curves, every coefficient affine in `(u, v)`.
#[derive(Clone, Debug)]
pub struct SurfaceChamber {
    pub region: Region,
    pub positive: SurfaceClass,
    pub negative: Vec<(usize, Poly2)>,
}

impl SurfaceChamber {
    /// Indices into the lattice's negative-curve list.
    pub fn support(&self) -> Vec<usize> {
        self.negative.iter().map(|(i, _)| *i).collect()
    }

    pub fn negative_class(&self, lattice: &DPLattice) -> SurfaceClass {
        let rank = lattice.rank();
        let mut total = SurfaceClass::from_polys(vec![Poly2::zero(); rank]);
        for (idx, coeff) in &self.negative {
            let curve =
                SurfaceClass::from_rationals(lattice.negative_curves()[*idx].coords.clone());
            total = total.add(&curve.scale_poly(coeff));
        }
        total
    }

    pub fn vol_poly(&self, lattice: &DPLattice) -> Result<Poly2, SurfaceError> {
        lattice.pair(&self.positive, &self.positive)
    }
}

/// Chamber decomposition of an affine two-parameter family over a region.
#[derive(Clone, Debug)]
pub struct SurfaceZariski {
    pub chambers: Vec<SurfaceChamber>,
}

impl SurfaceZariski {
    pub fn chamber_containing(&self, u: &Rational, v: &Rational) -> Option<&SurfaceChamber> {
        self.chambers.iter().find(|c| c.region.contains(u, v))
    }
}

/// Negative support of the decomposition of `d` at one parameter point,
/// grown iteratively: starting empty, every curve pairing negatively
/// against the current positive part joins the support, until none does.
/// All curves with negative pairing are added simultaneously, so the
/// result does not depend on the order of the curve list.
pub fn support_at_point(
    d: &SurfaceClass,
    lattice: &DPLattice,
    u: &Rational,
    v: &Rational,
) -> Result<Vec<usize>, SurfaceError> {
    let d_pt = d.eval(u, v);
    let n = lattice.negative_curves().len();
    let mut support: Vec<usize> = Vec::new();
    for _ in 0..=n {
        let p = positive_at_point(lattice, &support, &d_pt)?;
        let mut grew = false;
        for idx in 0..n {
            if support.contains(&idx) {
                continue;
            }
            let pairing = lattice.pair_rational(&p, &lattice.negative_curves()[idx].coords)?;
            if pairing.is_negative() {
                support.push(idx);
                grew = true;
            }
        }
        if !grew {
            support.sort_unstable();
            return Ok(support);
        }
    }
    Err(SurfaceError::SupportGrowthExceeded(n + 1))
}

/// Variant of `support_at_point` that inserts one curve per round,
/// scanning in the given order; used to demonstrate order independence.
pub fn support_with_insertion_order(
    d: &SurfaceClass,
    lattice: &DPLattice,
    u: &Rational,
    v: &Rational,
    order: &[usize],
) -> Result<Vec<usize>, SurfaceError> {
    let d_pt = d.eval(u, v);
    let n = lattice.negative_curves().len();
    let mut support: Vec<usize> = Vec::new();
    for _ in 0..=n {
        let p = positive_at_point(lattice, &support, &d_pt)?;
        let next = order.iter().copied().chain(0..n).find(|&idx| {
            !support.contains(&idx)
                && lattice
                    .pair_rational(&p, &lattice.negative_curves()[idx].coords)
                    .map(|pairing| pairing.is_negative())
                    .unwrap_or(false)
        });
        match next {
            Some(idx) => support.push(idx),
            None => {
                support.sort_unstable();
                return Ok(support);
            }
        }
    }
    Err(SurfaceError::SupportGrowthExceeded(n + 1))
}

fn positive_at_point(
    lattice: &DPLattice,
    support: &[usize],
    d_pt: &[Rational],
) -> Result<Vec<Rational>, SurfaceError> {
    if support.is_empty() {
        return Ok(d_pt.to_vec());
    }
    let gram = lattice.negative_gram(support);
    let rhs: Vec<Rational> = support
        .iter()
        .map(|&i| lattice.pair_rational(d_pt, &lattice.negative_curves()[i].coords))
        .collect::<Result<_, _>>()?;
    let coeffs = linalg::solve_rational(&gram, &rhs)
        .ok_or_else(|| SurfaceError::SingularSupport(support.to_vec()))?;
    let mut p = d_pt.to_vec();
    for (pos, &ci) in support.iter().enumerate() {
        for (slot, coord) in lattice.negative_curves()[ci].coords.iter().enumerate() {
            p[slot] = &p[slot] - &(&coeffs[pos] * coord);
        }
    }
    Ok(p)
}

/// Solves for the negative-part coefficients symbolically over a region
/// where the support is known; the coefficients come out affine in (u, v).
fn symbolic_solution(
    d: &SurfaceClass,
    lattice: &DPLattice,
    support: &[usize],
) -> Result<(Vec<Poly2>, SurfaceClass), SurfaceError> {
    if support.is_empty() {
        return Ok((Vec::new(), d.clone()));
    }
    let gram = lattice.negative_gram(support);
    let rhs: Vec<Poly2> = support
        .iter()
        .map(|&i| lattice.pair_class_vec(d, &lattice.negative_curves()[i].coords))
        .collect::<Result<_, _>>()?;
    let coeffs = linalg::solve_poly_rhs(&gram, &rhs)
        .ok_or_else(|| SurfaceError::SingularSupport(support.to_vec()))?;
    let mut p = d.clone();
    for (pos, &ci) in support.iter().enumerate() {
        let curve = SurfaceClass::from_rationals(lattice.negative_curves()[ci].coords.clone());
        p = p.sub(&curve.scale_poly(&coeffs[pos]));
    }
    Ok((coeffs, p))
}

enum Wall {
    Vertical(Rational),
    Graph(AffineU),
}

fn wall_of(poly: &Poly2) -> Option<Wall> {
    if poly.is_zero() {
        return None;
    }
    let c0 = poly.coeff(0, 0);
    let cu = poly.coeff(1, 0);
    let cv = poly.coeff(0, 1);
    if !cv.is_zero() {
        let inv = cv.recip();
        Some(Wall::Graph(AffineU::new(
            -&(&c0 * &inv),
            -&(&cu * &inv),
        )))
    } else if !cu.is_zero() {
        Some(Wall::Vertical(-&(&c0 / &cu)))
    } else {
        None
    }
}

enum Split {
    AtU(Rational),
    AtV(AffineU),
}

/// Decides whether a wall line crosses the open interior of a region, and
/// if so how to cut the region.  A graph line that enters through a side
/// boundary first forces a vertical cut at the entry point, so that the
/// final cut along the line spans the whole `u`-interval of its piece.
fn crossing_split(region: &Region, wall: &Wall) -> Option<Split> {
    match wall {
        Wall::Vertical(c) => {
            if c > region.u_lo() && c < region.u_hi() {
                Some(Split::AtU(c.clone()))
            } else {
                None
            }
        }
        Wall::Graph(line) => {
            let mut lo = region.u_lo().clone();
            let mut hi = region.u_hi().clone();
            // clip to { u : margin(u) > 0 } for both boundary margins
            for (a, b) in [
                (
                    line.constant() - region.v_lo().constant(),
                    line.slope() - region.v_lo().slope(),
                ),
                (
                    region.v_hi().constant() - line.constant(),
                    region.v_hi().slope() - line.slope(),
                ),
            ] {
                if b.is_zero() {
                    if !a.is_positive() {
                        return None;
                    }
                } else {
                    let root = -&(&a / &b);
                    if b.is_positive() {
                        lo = lo.max(root);
                    } else {
                        hi = hi.min(root);
                    }
                }
            }
            if lo >= hi {
                return None;
            }
            if &lo > region.u_lo() {
                Some(Split::AtU(lo))
            } else if &hi < region.u_hi() {
                Some(Split::AtU(hi))
            } else {
                Some(Split::AtV(line.clone()))
            }
        }
    }
}

const MAX_REGIONS: usize = 10_000;

/// Parametric Zariski decomposition of the affine family `d` over `bbox`.
///
/// Each worklist region is sampled at an interior rational point, the
/// support is grown there, and the candidate walls of the symbolic
/// solution (vanishing of a support coefficient, or of the pairing of the
/// positive part against an excluded curve) are tested against the region;
/// the first wall crossing the interior splits it.  A region no wall
/// crosses becomes a chamber and is revalidated symbolically: the support
/// gram matrix must be negative definite and the coefficient and pairing
/// inequalities must hold at all four corner points, which suffices since
/// both are affine on a convex region.
pub fn zariski_surface(
    d: &SurfaceClass,
    lattice: &DPLattice,
    bbox: &Region,
) -> Result<SurfaceZariski, SurfaceError> {
    if d.coords().len() != lattice.rank() {
        return Err(SurfaceError::LatticeMismatch {
            expected: lattice.rank(),
            got: d.coords().len(),
        });
    }
    if d.is_zero() {
        return Ok(SurfaceZariski { chambers: Vec::new() });
    }
    if !d.is_affine_family() {
        return Err(SurfaceError::NotAffineFamily(d.to_string()));
    }

    let mut worklist = vec![bbox.clone()];
    let mut chambers: Vec<SurfaceChamber> = Vec::new();
    let mut processed = 0usize;
    while let Some(region) = worklist.pop() {
        processed += 1;
        if processed > MAX_REGIONS {
            return Err(SurfaceError::RefinementOverflow(processed));
        }
        if region.is_degenerate() {
            continue;
        }
        let (u0, v0) = region.sample_interior();
        let support = support_at_point(d, lattice, &u0, &v0)?;
        let (coeffs, positive) = symbolic_solution(d, lattice, &support)?;

        let mut walls: Vec<Poly2> = coeffs.clone();
        for (idx, curve) in lattice.negative_curves().iter().enumerate() {
            if support.contains(&idx) {
                continue;
            }
            walls.push(lattice.pair_class_vec(&positive, &curve.coords)?);
        }
        let split = walls
            .iter()
            .filter_map(|w| wall_of(w))
            .find_map(|w| crossing_split(&region, &w));
        match split {
            Some(Split::AtU(c)) => {
                let (a, b) = region.split_at_u(&c)?;
                worklist.push(a);
                worklist.push(b);
                continue;
            }
            Some(Split::AtV(line)) => {
                let (a, b) = region.split_at_v(&line)?;
                worklist.push(a);
                worklist.push(b);
                continue;
            }
            None => {}
        }

        validate_chamber(lattice, &region, &support, &coeffs, &positive)?;
        let negative: Vec<(usize, Poly2)> = support
            .iter()
            .cloned()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        chambers.push(SurfaceChamber {
            region,
            positive,
            negative,
        });
    }

    chambers.sort_by(|a, b| chamber_key(a).cmp(&chamber_key(b)));
    Ok(SurfaceZariski { chambers })
}

fn chamber_key(c: &SurfaceChamber) -> (Rational, Rational, Rational, Rational) {
    let (mid, _) = c.region.sample_interior();
    (
        c.region.u_lo().clone(),
        c.region.u_hi().clone(),
        c.region.v_lo().eval(&mid),
        c.region.v_hi().eval(&mid),
    )
}

fn validate_chamber(
    lattice: &DPLattice,
    region: &Region,
    support: &[usize],
    coeffs: &[Poly2],
    positive: &SurfaceClass,
) -> Result<(), SurfaceError> {
    if !support.is_empty() && !linalg::is_negative_definite(&lattice.negative_gram(support)) {
        return Err(SurfaceError::NotNegativeDefinite {
            support: support.to_vec(),
            region: region.to_string(),
        });
    }
    let fail = |reason: String| SurfaceError::ChamberValidation {
        region: region.to_string(),
        reason,
    };
    for (pos, &ci) in support.iter().enumerate() {
        let against = lattice.pair_class_vec(positive, &lattice.negative_curves()[ci].coords)?;
        if !against.is_zero() {
            return Err(fail(format!(
                "positive part does not annihilate support curve {}",
                lattice.negative_curves()[ci].name
            )));
        }
        for (u, v) in region.vertices() {
            if coeffs[pos].eval(&u, &v).is_negative() {
                return Err(fail(format!(
                    "negative coefficient of {} at ({u}, {v})",
                    lattice.negative_curves()[ci].name
                )));
            }
        }
    }
    for (idx, curve) in lattice.negative_curves().iter().enumerate() {
        if support.contains(&idx) {
            continue;
        }
        let pairing = lattice.pair_class_vec(positive, &curve.coords)?;
        for (u, v) in region.vertices() {
            if pairing.eval(&u, &v).is_negative() {
                return Err(fail(format!(
                    "positive part meets {} negatively at ({u}, {v})",
                    curve.name
                )));
            }
        }
    }
    Ok(())
}

/// Volume of the family on each chamber: the self-intersection of the
/// positive part.  Outside the decomposed box the volume is zero; use
/// `vol_at` for pointwise queries with that convention.
pub fn vol_surface(
    d: &SurfaceClass,
    lattice: &DPLattice,
    bbox: &Region,
) -> Result<Vec<(Region, Poly2)>, SurfaceError> {
    let z = zariski_surface(d, lattice, bbox)?;
    z.chambers
        .iter()
        .map(|c| Ok((c.region.clone(), c.vol_poly(lattice)?)))
        .collect()
}

/// Pointwise volume with the zero-extension convention.
pub fn vol_at(
    pieces: &[(Region, Poly2)],
    u: &Rational,
    v: &Rational,
) -> Rational {
    for (region, poly) in pieces {
        if region.contains(u, v) {
            return poly.eval(u, v);
        }
    }
    Rational::zero()
}

/// Exact continuity of the volume across every shared wall: samples points
/// on each adjacency and compares the two chamber polynomials.  Returns
/// the number of adjacencies checked.
pub fn check_wall_continuity(
    z: &SurfaceZariski,
    lattice: &DPLattice,
) -> Result<usize, SurfaceError> {
    let vols: Vec<Poly2> = z
        .chambers
        .iter()
        .map(|c| c.vol_poly(lattice))
        .collect::<Result<_, _>>()?;
    let mut checked = 0usize;
    for i in 0..z.chambers.len() {
        for j in i + 1..z.chambers.len() {
            let (a, b) = (&z.chambers[i].region, &z.chambers[j].region);
            let mut samples: Vec<(Rational, Rational)> = Vec::new();
            for (left, right) in [(a, b), (b, a)] {
                if left.u_hi() == right.u_lo() {
                    let u = left.u_hi().clone();
                    let lo = left.v_lo().eval(&u).max(right.v_lo().eval(&u));
                    let hi = left.v_hi().eval(&u).min(right.v_hi().eval(&u));
                    if lo < hi {
                        for k in 1..4i64 {
                            let t = Rational::new(k, 4);
                            let v = &lo + &(&(&hi - &lo) * &t);
                            samples.push((u.clone(), v));
                        }
                    }
                }
                if left.v_hi() == right.v_lo() {
                    let lo = left.u_lo().clone().max(right.u_lo().clone());
                    let hi = left.u_hi().clone().min(right.u_hi().clone());
                    if lo < hi {
                        for k in 1..4i64 {
                            let t = Rational::new(k, 4);
                            let u = &lo + &(&(&hi - &lo) * &t);
                            let v = left.v_hi().eval(&u);
                            samples.push((u, v));
                        }
                    }
                }
            }
            if samples.is_empty() {
                continue;
            }
            checked += 1;
            for (u, v) in samples {
                let from_a = vols[i].eval(&u, &v);
                let from_b = vols[j].eval(&u, &v);
                if from_a != from_b {
                    return Err(SurfaceError::ChamberValidation {
                        region: b.to_string(),
                        reason: format!(
                            "volume jumps from {from_a} to {from_b} at ({u}, {v})"
                        ),
                    });
                }
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn smooth_fiber_family() -> (DPLattice, SurfaceClass) {
        let lat = DPLattice::smooth();
        let z = SurfaceClass::from_ints(&[1, -1, 0, 0]);
        let d = lat.anticanonical_class().sub(&z.scale_poly(&Poly2::v()));
        (lat, d)
    }

    fn singular_family() -> (DPLattice, SurfaceClass) {
        let lat = DPLattice::singular();
        let z = SurfaceClass::from_ints(&[0, 1, 0]);
        let d = lat.anticanonical_class().sub(&z.scale_poly(&Poly2::v()));
        (lat, d)
    }

    #[test]
    fn smooth_fiber_two_chambers() {
        let (lat, d) = smooth_fiber_family();
        let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(2, 1)).unwrap();
        let z = zariski_surface(&d, &lat, &bbox).unwrap();
        assert_eq!(z.chambers.len(), 2);
        let first = &z.chambers[0];
        assert!(first.negative.is_empty());
        assert_eq!(first.vol_poly(&lat).unwrap().to_string(), "6 - 4*v");
        let second = &z.chambers[1];
        // negative part (v - 1)(e1 + (L - e2 - e3))
        assert_eq!(second.support(), vec![0, 5]);
        let vm1 = Poly2::affine(r(-1, 1), r(0, 1), r(1, 1));
        for (_, coeff) in &second.negative {
            assert_eq!(coeff, &vm1);
        }
        // vol = 6 - 4v + 2(v - 1)^2 = 8 - 8v + 2v^2
        assert_eq!(
            second.vol_poly(&lat).unwrap(),
            Poly2::from_terms([(0, 0, r(8, 1)), (0, 1, r(-8, 1)), (0, 2, r(2, 1))])
        );
        // volume vanishes on the outer boundary v = 2
        assert!(second
            .vol_poly(&lat)
            .unwrap()
            .subst_v(&AffineU::constant_fn(r(2, 1)))
            .is_zero());
        assert_eq!(check_wall_continuity(&z, &lat).unwrap(), 1);
    }

    #[test]
    fn singular_fiber_chambers() {
        let (lat, d) = singular_family();
        let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(2, 1)).unwrap();
        let z = zariski_surface(&d, &lat, &bbox).unwrap();
        assert_eq!(z.chambers.len(), 2);
        assert!(z.chambers[0].negative.is_empty());
        // N = 2(v - 1) E1 past the wall v = 1
        assert_eq!(z.chambers[1].support(), vec![0]);
        assert_eq!(
            z.chambers[1].negative[0].1,
            Poly2::affine(r(-2, 1), r(0, 1), r(2, 1))
        );
        // vol = 6 - 4v + 2(v-1)^2 on the second chamber
        assert_eq!(
            z.chambers[1].vol_poly(&lat).unwrap(),
            Poly2::from_terms([(0, 0, r(8, 1)), (0, 1, r(-8, 1)), (0, 2, r(2, 1))])
        );
        assert_eq!(check_wall_continuity(&z, &lat).unwrap(), 1);
    }

    #[test]
    fn support_growth_and_order_independence() {
        let (lat, d) = smooth_fiber_family();
        let u = r(1, 2);
        let v = r(3, 2);
        let s = support_at_point(&d, &lat, &u, &v).unwrap();
        assert_eq!(s, vec![0, 5]);
        for order in [
            vec![0, 1, 2, 3, 4, 5],
            vec![5, 4, 3, 2, 1, 0],
            vec![3, 5, 1, 0, 2, 4],
        ] {
            assert_eq!(
                support_with_insertion_order(&d, &lat, &u, &v, &order).unwrap(),
                s
            );
        }
        assert!(support_at_point(&d, &lat, &u, &r(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn zero_family_has_empty_decomposition() {
        let lat = DPLattice::smooth();
        let zero = SurfaceClass::from_ints(&[0, 0, 0, 0]);
        let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(1, 1)).unwrap();
        let z = zariski_surface(&zero, &lat, &bbox).unwrap();
        assert!(z.chambers.is_empty());
    }

    #[test]
    fn rejects_bad_families() {
        let lat = DPLattice::smooth();
        let wrong_rank = SurfaceClass::from_ints(&[1, 0, 0]);
        let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(1, 1)).unwrap();
        assert!(matches!(
            zariski_surface(&wrong_rank, &lat, &bbox),
            Err(SurfaceError::LatticeMismatch { .. })
        ));
        let quadratic = SurfaceClass::from_polys(vec![
            Poly2::v().pow(2),
            Poly2::zero(),
            Poly2::zero(),
            Poly2::zero(),
        ]);
        assert!(matches!(
            zariski_surface(&quadratic, &lat, &bbox),
            Err(SurfaceError::NotAffineFamily(_))
        ));
    }

    #[test]
    fn past_threshold_box_fails_on_smooth_preset() {
        let (lat, d) = smooth_fiber_family();
        let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(5, 2)).unwrap();
        let err = zariski_surface(&d, &lat, &bbox).unwrap_err();
        assert!(
            matches!(
                err,
                SurfaceError::NotNegativeDefinite { .. }
                    | SurfaceError::SingularSupport(_)
                    | SurfaceError::ChamberValidation { .. }
            ),
            "unexpected error {err:?}"
        );
    }

    #[test]
    fn vol_is_zero_outside_the_box() {
        let (lat, d) = singular_family();
        let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(2, 1)).unwrap();
        let pieces = vol_surface(&d, &lat, &bbox).unwrap();
        assert_eq!(vol_at(&pieces, &r(1, 2), &r(1, 2)), r(4, 1));
        // past the pseudo-effective threshold the zero-extension applies
        assert!(vol_at(&pieces, &r(1, 2), &r(5, 2)).is_zero());
        assert!(vol_at(&pieces, &r(7, 2), &r(1, 2)).is_zero());
    }
}
