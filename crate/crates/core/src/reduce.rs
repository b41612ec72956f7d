use crate::crossed::CrossedElement;
use crate::dynsys::DynSystem;
use crate::error::{Error, Result};
use crate::funcalg::Func;
use crate::idealwin::DegreeWindow;

/// One step of the commutant reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// Multiply on the right by sigma_action(a, -shift) d^(-shift). With a
    /// a point mass inside the support of the degree-`shift` coefficient,
    /// this turns that coefficient into a nonzero degree-0 one without
    /// increasing the number of nonzero coefficients.
    RightMultiply { a: Func, shift: i64 },
    /// Replace F by bF - Fb. With b a point mass this wipes the degree-0
    /// coefficient (the coefficient algebra is commutative), never creates
    /// new degrees, and by choice of b keeps the element nonzero.
    Commutate { b: Func },
}

/// A replayable trace of the reduction: apply `steps` to `input` in order
/// and `output` comes out. The output is a nonzero element of the ideal
/// generated by the input lying in the commutant; the steps are the proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub input: CrossedElement,
    pub steps: Vec<ReductionStep>,
    pub output: CrossedElement,
}

/// Applies a single step by plain convolution.
pub fn apply_step(
    sys: &DynSystem,
    element: &CrossedElement,
    step: &ReductionStep,
) -> Result<CrossedElement> {
    match step {
        ReductionStep::RightMultiply { a, shift } => {
            a.check_against(sys)?;
            let mult = CrossedElement::monomial(-shift, a.sigma_action(sys, -shift));
            element.conv(sys, &mult)
        }
        ReductionStep::Commutate { b } => {
            b.check_against(sys)?;
            let bel = CrossedElement::monomial(0, b.clone());
            bel.commutator(sys, element)
        }
    }
}

/// Pushes a nonzero element into the commutant along the ideal it
/// generates.
///
/// Each round first right-multiplies to plant a nonzero degree-0
/// coefficient (picking the lowest-|n| degree, ties to the negative side,
/// and the smallest support point), then, if the result still lies outside
/// the commutant, commutates with the first point mass that gives a
/// nonzero commutator. Commutation strictly drops the number of nonzero
/// coefficients, so at most num_terms rounds happen and the whole run
/// takes at most 2 * num_terms steps.
pub fn reduce_to_commutant(
    sys: &DynSystem,
    input: &CrossedElement,
) -> Result<ReductionCertificate> {
    input.check_against(sys)?;
    if input.is_zero() {
        return Err(Error::ZeroElement);
    }
    let size = sys.size();
    let mut cur = input.clone();
    let mut steps = Vec::new();
    while !cur.in_commutant(sys)? {
        let n = cur
            .degrees()
            .into_iter()
            .min_by_key(|n| (n.abs(), *n))
            .expect("element outside the commutant is nonzero");
        let coeff = cur.coefficient_ref(n).expect("degree is present");
        let p = *coeff.support().iter().next().expect("coefficient is nonzero");
        let step = ReductionStep::RightMultiply {
            a: Func::point_mass(size, p),
            shift: n,
        };
        let next = apply_step(sys, &cur, &step)?;
        assert!(
            next.num_terms() <= cur.num_terms(),
            "right multiplication must not add coefficients"
        );
        assert!(
            !next.coefficient(0).is_zero(),
            "right multiplication plants a degree-0 coefficient"
        );
        steps.push(step);
        cur = next;
        if cur.in_commutant(sys)? {
            break;
        }
        // Outside the commutant some coefficient f_m is nonzero at a point
        // moved by sigma^m, and the point mass there has commutator
        // coefficient f_m(x) at x. So this search cannot fail.
        let mut picked = None;
        for x in 0..size {
            let step = ReductionStep::Commutate {
                b: Func::point_mass(size, x),
            };
            let candidate = apply_step(sys, &cur, &step)?;
            if !candidate.is_zero() {
                picked = Some((step, candidate));
                break;
            }
        }
        let (step, next) =
            picked.expect("an element outside the commutant has a separating point mass");
        assert!(
            next.num_terms() < cur.num_terms(),
            "commutation must strictly drop the coefficient count"
        );
        steps.push(step);
        cur = next;
    }
    Ok(ReductionCertificate {
        input: input.clone(),
        steps,
        output: cur,
    })
}

/// Re-executes a certificate from scratch and checks every claim: the
/// measure never grows and strictly drops at commutate steps, and the final
/// element equals the stated output, is nonzero, and lies in the
/// commutant. Errors name the first failing step; the output comparison
/// counts as step `steps.len()`.
pub fn replay(sys: &DynSystem, cert: &ReductionCertificate) -> Result<()> {
    let fail = |step: usize, reason: &str| Error::ReplayFailed {
        step,
        reason: reason.to_string(),
    };
    cert.input
        .check_against(sys)
        .map_err(|e| fail(0, &e.to_string()))?;
    if cert.input.is_zero() {
        return Err(fail(0, "input is zero"));
    }
    let mut cur = cert.input.clone();
    let mut count = cur.num_terms();
    for (k, step) in cert.steps.iter().enumerate() {
        cur = apply_step(sys, &cur, step).map_err(|e| fail(k, &e.to_string()))?;
        match step {
            ReductionStep::RightMultiply { .. } => {
                if cur.num_terms() > count {
                    return Err(fail(k, "coefficient count grew at a right multiplication"));
                }
            }
            ReductionStep::Commutate { .. } => {
                if cur.num_terms() >= count {
                    return Err(fail(k, "coefficient count did not drop at a commutation"));
                }
            }
        }
        count = cur.num_terms();
    }
    let end = cert.steps.len();
    if cur != cert.output {
        return Err(fail(end, "replayed element differs from the stated output"));
    }
    if cur.is_zero() {
        return Err(fail(end, "output is zero"));
    }
    if !cur
        .in_commutant(sys)
        .map_err(|e| fail(end, &e.to_string()))?
    {
        return Err(fail(end, "output lies outside the commutant"));
    }
    Ok(())
}

impl ReductionCertificate {
    /// Total degree shift accumulated by the right multiplications.
    pub fn total_shift(&self) -> i64 {
        -self
            .steps
            .iter()
            .map(|s| match s {
                ReductionStep::RightMultiply { shift, .. } => *shift,
                ReductionStep::Commutate { .. } => 0,
            })
            .sum::<i64>()
    }

    /// Windows sufficient for the output to be certified inside the
    /// windowed ideal generated by the input.
    ///
    /// Expanding the steps writes the output as a combination of words
    /// (point mass) * input * (point mass * d^J) with J the total shift:
    /// left factors only ever sit at degree 0 and the right factors
    /// collapse to a single point mass at degree J. So multipliers from
    /// hull{0, J} and a target of the input degrees shifted by J are
    /// enough.
    pub fn containment_windows(&self) -> (DegreeWindow, DegreeWindow) {
        let j = self.total_shift();
        let mult = DegreeWindow::hull([0, j]).expect("nonempty");
        let (lo, hi) = self
            .input
            .degree_bounds()
            .expect("certificates carry nonzero inputs");
        let target = DegreeWindow::hull([lo + j, hi + j]).expect("nonempty");
        (mult, target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealwin::generate_ideal_window;
    use crate::scalar::Scalar;

    fn swap01_fix2() -> DynSystem {
        DynSystem::new(vec![1, 0, 2]).unwrap()
    }

    fn em(size: usize, degree: i64, x: usize) -> CrossedElement {
        CrossedElement::monomial(degree, Func::point_mass(size, x))
    }

    #[test]
    fn already_in_commutant_is_a_zero_step_certificate() {
        let sys = swap01_fix2();
        let f = &em(3, 1, 2) + &em(3, 0, 0);
        let cert = reduce_to_commutant(&sys, &f).unwrap();
        assert!(cert.steps.is_empty());
        assert_eq!(cert.output, f);
        replay(&sys, &cert).unwrap();
    }

    #[test]
    fn single_monomial_reduces_in_one_step() {
        let sys = swap01_fix2();
        let cert = reduce_to_commutant(&sys, &em(3, 1, 0)).unwrap();
        assert_eq!(
            cert.steps,
            vec![ReductionStep::RightMultiply {
                a: Func::point_mass(3, 0),
                shift: 1
            }]
        );
        assert_eq!(cert.output, em(3, 0, 0));
        replay(&sys, &cert).unwrap();
    }

    #[test]
    fn paired_input_reduces_by_degree_zero_multiplication() {
        let sys = swap01_fix2();
        let f = &em(3, 0, 0) + &em(3, 1, 0);
        let cert = reduce_to_commutant(&sys, &f).unwrap();
        assert_eq!(
            cert.steps,
            vec![ReductionStep::RightMultiply {
                a: Func::point_mass(3, 0),
                shift: 0
            }]
        );
        assert_eq!(cert.output, em(3, 0, 0));
        replay(&sys, &cert).unwrap();
    }

    #[test]
    fn zero_input_is_rejected() {
        let sys = swap01_fix2();
        assert!(matches!(
            reduce_to_commutant(&sys, &CrossedElement::zero(3)),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn step_bound_holds() {
        let sys = swap01_fix2();
        let f = &(&em(3, 1, 0) + &em(3, -1, 1).scale(&Scalar::i())) + &em(3, 2, 0);
        let cert = reduce_to_commutant(&sys, &f).unwrap();
        assert!(cert.steps.len() <= 2 * f.num_terms());
        replay(&sys, &cert).unwrap();
    }

    #[test]
    fn replay_catches_tampering() {
        let sys = swap01_fix2();
        let f = &em(3, 1, 0) + &em(3, -1, 1);
        let mut cert = reduce_to_commutant(&sys, &f).unwrap();
        replay(&sys, &cert).unwrap();
        let end = cert.steps.len();
        let honest = cert.output.clone();
        cert.output = &cert.output + &em(3, 0, 1);
        let err = replay(&sys, &cert).unwrap_err();
        assert_eq!(
            err,
            Error::ReplayFailed {
                step: end,
                reason: "replayed element differs from the stated output".to_string()
            }
        );
        cert.output = honest;
        cert.steps.push(ReductionStep::Commutate {
            b: Func::point_mass(3, 2),
        });
        // The bogus commutation kills the element, so the padded replay
        // ends on a mismatch at its own output slot.
        let err = replay(&sys, &cert).unwrap_err();
        assert!(matches!(err, Error::ReplayFailed { step, .. } if step == end + 1));
        cert.steps.pop();
        cert.steps.insert(
            0,
            ReductionStep::Commutate {
                b: Func::point_mass(3, 0),
            },
        );
        // This commutator is nonzero with the same coefficient count, so
        // the measure check flags the inserted step itself.
        let err = replay(&sys, &cert).unwrap_err();
        assert!(matches!(
            err,
            Error::ReplayFailed { step: 0, ref reason } if reason.contains("did not drop")
        ));
    }

    #[test]
    fn output_is_certified_inside_the_generated_window() {
        let sys = swap01_fix2();
        for f in [
            em(3, 1, 0),
            &em(3, 0, 0) + &em(3, 1, 0),
            &em(3, 2, 1) + &em(3, -1, 0).scale(&Scalar::from_int(2)),
        ] {
            let cert = reduce_to_commutant(&sys, &f).unwrap();
            let (mult, target) = cert.containment_windows();
            let ideal = generate_ideal_window(&sys, std::slice::from_ref(&f), mult, target).unwrap();
            assert!(
                ideal.membership(&cert.output).is_yes(),
                "output of {f} escaped its windowed ideal"
            );
            ideal.verify_certificates(&sys).unwrap();
        }
    }
}
