use crate::crossed::CrossedElement;
use crate::dynsys::{DynSystem, PointSet};
use crate::error::{Error, Result};
use crate::funcalg::{DegreeRule, Func, GradedSubspace};
use crate::idealwin::{generate_ideal_window, DegreeWindow, GeneratedIdealWindow};

/// An algebra strictly between the coefficient algebra and its commutant,
/// built to avoid a chosen invariant chunk of the degree-n fixed points.
/// Ideals living over the avoided chunk then miss the algebra entirely, so
/// it cannot have the intersection property.
#[derive(Debug, Clone)]
pub struct AvoidingBetween {
    pub algebra: GradedSubspace,
    pub n: i64,
    /// U1: the invariant set of degree-n fixed points the algebra keeps.
    pub invariant_set: PointSet,
    /// A whole orbit of degree-n fixed points outside U1; ideals supported
    /// here witness the failure.
    pub complement_orbit: PointSet,
    /// A nonzero degree-n coefficient inside the algebra: shows B strictly
    /// contains the coefficient algebra.
    pub inside_witness: Func,
    /// A degree-n coefficient in the commutant but not in the algebra:
    /// shows B sits strictly below the commutant.
    pub outside_witness: Func,
}

fn clause(text: &str) -> Error {
    Error::Precondition(text.to_string())
}

/// Builds the avoiding algebra. Every precondition failure names its
/// clause.
pub fn build_avoiding_b(
    sys: &DynSystem,
    n: i64,
    u1: &PointSet,
    window: DegreeWindow,
) -> Result<AvoidingBetween> {
    if n < 1 {
        return Err(clause("n must be at least 1"));
    }
    sys.check_points(u1)?;
    if u1.is_empty() {
        return Err(clause("U1 must be nonempty"));
    }
    if !sys.is_invariant(u1)? {
        return Err(clause("U1 must be invariant under sigma"));
    }
    let per_n = sys.per(n)?;
    if !u1.is_subset(&per_n) {
        return Err(clause("U1 must consist of points fixed by sigma^n"));
    }
    let complement_orbit = sys
        .orbits()
        .iter()
        .find(|orbit| {
            orbit.iter().all(|x| per_n.contains(x)) && orbit.iter().all(|x| !u1.contains(x))
        })
        .map(|orbit| orbit.iter().copied().collect::<PointSet>())
        .ok_or_else(|| {
            clause("the degree-n fixed points must contain a whole orbit outside U1")
        })?;
    let algebra = GradedSubspace::new(
        DegreeRule::AvoidingBetween {
            invariant_set: u1.clone(),
        },
        window,
    );
    let inside_witness = Func::point_mass(sys.size(), *u1.iter().next().unwrap());
    let outside_witness = Func::point_mass(
        sys.size(),
        *complement_orbit.iter().next().unwrap(),
    );
    Ok(AvoidingBetween {
        algebra,
        n,
        invariant_set: u1.clone(),
        complement_orbit,
        inside_witness,
        outside_witness,
    })
}

/// The windowed ideal generated by f2 + f2 d^n for a coefficient f2 living
/// on degree-n fixed points away from U1. Its window meets the avoiding
/// algebra only in zero, which is what refutes the intersection property.
pub fn avoiding_witness_ideal(
    sys: &DynSystem,
    n: i64,
    u1: &PointSet,
    u2: &PointSet,
    f2: &Func,
    mult_window: DegreeWindow,
    target: DegreeWindow,
) -> Result<GeneratedIdealWindow> {
    if n < 1 {
        return Err(clause("n must be at least 1"));
    }
    sys.check_points(u1)?;
    sys.check_points(u2)?;
    f2.check_against(sys)?;
    if f2.is_zero() {
        return Err(clause("F2 must be nonzero"));
    }
    if !f2.supported_in(u2) {
        return Err(clause("F2 must be supported in U2"));
    }
    if !u2.is_subset(&sys.per(n)?) {
        return Err(clause("U2 must consist of points fixed by sigma^n"));
    }
    if !sys.is_invariant(u2)? {
        return Err(clause("U2 must be invariant under sigma"));
    }
    if u1.intersection(u2).next().is_some() {
        return Err(clause("U1 and U2 must be disjoint"));
    }
    let generator = &CrossedElement::monomial(0, f2.clone())
        + &CrossedElement::monomial(n, f2.clone());
    generate_ideal_window(sys, &[generator], mult_window, target)
}

impl AvoidingBetween {
    /// The standard witness ideal for this algebra, generated from the
    /// outside witness point mass.
    pub fn witness_ideal(
        &self,
        sys: &DynSystem,
        mult_window: DegreeWindow,
        target: DegreeWindow,
    ) -> Result<GeneratedIdealWindow> {
        avoiding_witness_ideal(
            sys,
            self.n,
            &self.invariant_set,
            &self.complement_orbit,
            &self.outside_witness,
            mult_window,
            target,
        )
    }
}

/// An algebra between the coefficient algebra and the commutant that meets
/// the line of every periodic point except a chosen base point, where its
/// nonzero-degree coefficients are forced to vanish.
///
/// Over a finite system the base point is isolated, so no intersection
/// guarantee is claimed for this construction; it is built for inspection,
/// and `degenerate` records when it collapses to the coefficient algebra.
#[derive(Debug, Clone)]
pub struct IntersectingBetween {
    pub algebra: GradedSubspace,
    pub base_point: usize,
    /// True when every nonzero-degree slice is zero, i.e. B is just the
    /// coefficient algebra. Happens exactly on one-point systems.
    pub degenerate: bool,
    /// Degree at which the commutant strictly exceeds the algebra.
    pub witness_degree: i64,
    /// Coefficient witnessing that excess: allowed in the commutant slice,
    /// banned from the algebra slice.
    pub witness: Func,
}

pub fn build_intersecting_b(
    sys: &DynSystem,
    base_point: usize,
    window: DegreeWindow,
) -> Result<IntersectingBetween> {
    sys.check_point(base_point)?;
    let algebra = GradedSubspace::new(DegreeRule::IntersectingBetween { base_point }, window);
    let witness_degree = sys.orbit_len(base_point) as i64;
    let witness = Func::point_mass(sys.size(), base_point);
    let order = sys.orbit_lcm();
    let mut degenerate = true;
    for k in 1..=order {
        if algebra.slice(sys, k)?.dim() > 0 {
            degenerate = false;
            break;
        }
    }
    Ok(IntersectingBetween {
        algebra,
        base_point,
        degenerate,
        witness_degree,
        witness,
    })
}

/// One probed ideal: its windowed span and how much of it lies in B.
#[derive(Debug, Clone)]
pub struct ProbeEntry {
    pub generator: CrossedElement,
    pub ideal_dim: usize,
    pub intersection_dim: usize,
}

/// Result of probing a subalgebra against a family of windowed ideals. A
/// nonzero ideal window meeting B only in zero refutes the intersection
/// property outright; all-nonzero intersections prove nothing beyond the
/// window, and the report says which happened.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub entries: Vec<ProbeEntry>,
    pub refuted: bool,
    pub refuting_generator: Option<CrossedElement>,
}

/// Probes B against ideals generated by each family element.
pub fn intersection_property_probe(
    sys: &DynSystem,
    b: &GradedSubspace,
    family: &[CrossedElement],
    mult_window: DegreeWindow,
    target: DegreeWindow,
) -> Result<ProbeReport> {
    let mut entries = Vec::new();
    let mut refuting_generator = None;
    for g in family {
        if g.is_zero() {
            continue;
        }
        let ideal = generate_ideal_window(sys, std::slice::from_ref(g), mult_window, target)?;
        let meet = ideal.subspace().intersect_with_graded(sys, b)?;
        let entry = ProbeEntry {
            generator: g.clone(),
            ideal_dim: ideal.dim(),
            intersection_dim: meet.dim(),
        };
        if entry.ideal_dim > 0 && entry.intersection_dim == 0 && refuting_generator.is_none() {
            refuting_generator = Some(g.clone());
        }
        entries.push(entry);
    }
    Ok(ProbeReport {
        refuted: refuting_generator.is_some(),
        refuting_generator,
        entries,
    })
}

/// The stock probe family: every point-mass monomial over the window, plus
/// every paired element e_p + e_p d^n with p fixed by sigma^n.
pub fn default_probe_family(sys: &DynSystem, window: DegreeWindow) -> Vec<CrossedElement> {
    let size = sys.size();
    let mut family = Vec::new();
    for k in window.iter() {
        for x in 0..size {
            family.push(CrossedElement::monomial(k, Func::point_mass(size, x)));
        }
    }
    for n in 1..=window.hi().max(0) {
        if let Ok(per) = sys.per(n) {
            for p in per {
                let f = Func::point_mass(size, p);
                family.push(
                    &CrossedElement::monomial(0, f.clone()) + &CrossedElement::monomial(n, f),
                );
            }
        }
    }
    family
}

/// Verifies that the graded slices multiply into each other under the
/// twisted product wherever the degrees stay inside the window: the
/// computational check that B is closed under the product.
pub fn closed_under_conv(sys: &DynSystem, b: &GradedSubspace, window: DegreeWindow) -> Result<bool> {
    for d1 in window.iter() {
        for d2 in window.iter() {
            let Some(d) = d1.checked_add(d2) else {
                continue;
            };
            if !window.contains(d) {
                continue;
            }
            let target = b.slice(sys, d)?;
            for f in b.slice(sys, d1)?.basis() {
                for g in b.slice(sys, d2)?.basis() {
                    let prod = &f * &g.sigma_action(sys, d1);
                    if !target.contains(&prod) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
