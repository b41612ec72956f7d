//! Norms and characters: the summed sup-norm on crossed elements, the
//! character family over fixed points and unit scalars, the commutator
//! ideal as a degree window, and the kernel-of-a-character reports.

use num_traits::ToPrimitive;

use crate::crossed::CrossedElement;
use crate::dynsys::{DynSystem, PointSet};
use crate::error::{Error, Result};
use crate::funcalg::{DegreeRule, Func, GradedSubspace};
use crate::idealwin::{generate_ideal_window, DegreeWindow, SubspaceWindow};
use crate::scalar::{rational_sqrt, Rational, Scalar, UnitScalar};

/// The largest squared modulus among the values of f. Squared moduli are
/// rational, so maxima compare exactly.
pub fn sup_norm_sq(f: &Func) -> Rational {
    f.values()
        .iter()
        .map(Scalar::norm_sq)
        .max()
        .expect("functions have at least one value")
}

/// Sum over degrees of the sup norm of each coefficient, as a float for
/// display. Every decision that matters is made on exact squared moduli;
/// this value only gets printed.
pub fn l1_norm(elem: &CrossedElement) -> f64 {
    elem.terms()
        .iter()
        .map(|(_, f)| {
            sup_norm_sq(f)
                .to_f64()
                .expect("finite rationals convert")
                .sqrt()
        })
        .sum()
}

/// The same sum, exactly, when every coefficient's sup norm is rational.
/// Returns None as soon as one term has an irrational modulus.
pub fn l1_norm_exact(elem: &CrossedElement) -> Option<Rational> {
    let mut total = Rational::from_integer(0.into());
    for (_, f) in elem.terms() {
        total += rational_sqrt(&sup_norm_sq(f))?;
    }
    Some(total)
}

/// A multiplicative functional on the crossed product: evaluation of
/// coefficients at a fixed point of sigma, twisted degree by degree with
/// a unit scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    size: usize,
    x: usize,
    xi: UnitScalar,
}

impl Character {
    pub fn new(sys: &DynSystem, x: usize, xi: UnitScalar) -> Result<Self> {
        sys.check_point(x)?;
        if sys.apply(x) != x {
            return Err(Error::NotFixedPoint { point: x });
        }
        Ok(Character {
            size: sys.size(),
            x,
            xi,
        })
    }

    pub fn point(&self) -> usize {
        self.x
    }

    pub fn twist(&self) -> &UnitScalar {
        &self.xi
    }

    /// Sum over terms of f_n(x) times xi^n.
    pub fn eval(&self, elem: &CrossedElement) -> Result<Scalar> {
        if elem.size() != self.size {
            return Err(Error::SystemMismatch {
                left: elem.size(),
                right: self.size,
            });
        }
        let mut acc = Scalar::zero();
        for (n, f) in elem.terms() {
            acc = &acc + &(f.get(self.x) * &self.xi.pow(*n));
        }
        Ok(acc)
    }
}

/// A sampled slice of the character family, together with the statement
/// describing the whole family.
#[derive(Debug, Clone)]
pub struct CharacterFamily {
    pub characters: Vec<Character>,
    pub fixed_points: PointSet,
    pub statement: String,
}

/// All characters with twist drawn from the given samples: one per pair
/// (fixed point, sample). The full family ranges over every unit-modulus
/// complex twist, which no list exhausts; the statement records that.
pub fn enumerate_characters(sys: &DynSystem, xi_samples: &[UnitScalar]) -> CharacterFamily {
    let fixed_points: PointSet = (0..sys.size()).filter(|&x| sys.apply(x) == x).collect();
    let characters = fixed_points
        .iter()
        .flat_map(|&x| {
            xi_samples.iter().map(move |xi| Character {
                size: sys.size(),
                x,
                xi: xi.clone(),
            })
        })
        .collect();
    let statement = format!(
        "the multiplicative functionals correspond bijectively to pairs (fixed point, unit-modulus scalar); \
         this system has {} fixed point(s), and the list samples {} twist(s) per fixed point",
        fixed_points.len(),
        xi_samples.len(),
    );
    CharacterFamily {
        characters,
        fixed_points,
        statement,
    }
}

/// The functions vanishing on every fixed point, at every degree of the
/// window: the independent description the generated commutator ideal is
/// checked against.
pub fn vanishing_on_fixed_points(sys: &DynSystem, window: DegreeWindow) -> Result<GradedSubspace> {
    let fixed = sys.per(1)?;
    Ok(GradedSubspace::new(DegreeRule::Kernel(fixed), window))
}

/// The window of the two-sided ideal spanned by commutators: all pairwise
/// commutators of in-window point-mass monomials are collected, a basis of
/// their span is taken, and the windowed ideal it generates is returned.
/// Commutative systems come back as the zero window.
pub fn commutator_ideal_window(sys: &DynSystem, window: DegreeWindow) -> Result<SubspaceWindow> {
    let size = sys.size();
    // Point-mass commutators repeat heavily across pairs; dedupe by value
    // before paying for a span insertion.
    let mut seen: std::collections::HashSet<CrossedElement> = std::collections::HashSet::new();
    let mut span = SubspaceWindow::empty(size, window);
    for n in window.iter() {
        for m in window.iter() {
            let Some(d) = n.checked_add(m) else { continue };
            if !window.contains(d) {
                continue;
            }
            for x in 0..size {
                let a = CrossedElement::monomial(n, Func::point_mass(size, x));
                for y in 0..size {
                    let b = CrossedElement::monomial(m, Func::point_mass(size, y));
                    let c = a.commutator(sys, &b)?;
                    if !c.is_zero() && seen.insert(c.clone()) {
                        span.insert(&c)?;
                    }
                }
            }
        }
    }
    if span.dim() == 0 {
        return Ok(span);
    }
    let ideal = generate_ideal_window(sys, &span.basis(), window, window)?;
    Ok(ideal.subspace().clone())
}

/// What holds, inside the window, of the kernel of one character: its
/// codimension, whether it swallows the commutators, and whether it is
/// closed under in-window products with monomials.
#[derive(Debug, Clone)]
pub struct ModularReport {
    pub character: Character,
    pub window: DegreeWindow,
    pub ambient_dim: usize,
    pub kernel_dim: usize,
    pub codim_is_one: bool,
    pub contains_commutator_window: bool,
    pub commutator_basis_evals_vanish: bool,
    pub closed_under_window_products: bool,
    pub classification: String,
    pub kernel: SubspaceWindow,
}

pub fn maximal_modular_report(
    sys: &DynSystem,
    ch: &Character,
    window: DegreeWindow,
) -> Result<ModularReport> {
    let size = sys.size();
    let ambient_dim = window.len() * size;
    // Differences against a reference of nonzero value span the kernel.
    let reference = CrossedElement::monomial(0, Func::point_mass(size, ch.point()));
    debug_assert!(window.contains(0));
    let mut kernel = SubspaceWindow::empty(size, window);
    for n in window.iter() {
        for x in 0..size {
            let b = CrossedElement::monomial(n, Func::point_mass(size, x));
            let value = ch.eval(&b)?;
            let shifted = &b - &reference.scale(&value);
            if !shifted.is_zero() {
                kernel.insert(&shifted)?;
            }
        }
    }
    let kernel_dim = kernel.dim();
    let codim_is_one = ambient_dim - kernel_dim == 1;
    let commutators = commutator_ideal_window(sys, window)?;
    let contains_commutator_window = kernel.contains_subspace(&commutators);
    let mut commutator_basis_evals_vanish = true;
    for c in commutators.basis() {
        if !ch.eval(&c)?.is_zero() {
            commutator_basis_evals_vanish = false;
            break;
        }
    }
    let mut closed = true;
    'outer: for k in kernel.basis() {
        let Some((k_lo, k_hi)) = k.degree_bounds() else { continue };
        for i in window.iter() {
            if !window.contains(k_lo + i) || !window.contains(k_hi + i) {
                continue;
            }
            for u in 0..size {
                let m = CrossedElement::monomial(i, Func::point_mass(size, u));
                for p in [m.conv(sys, &k)?, k.conv(sys, &m)?] {
                    if !p.is_zero() && !kernel.contains_element(&p) {
                        closed = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    let classification = format!(
        "the kernel of the character at fixed point {} with twist {} is a codimension-one ideal \
         slice containing every commutator; each (fixed point, unit twist) pair yields exactly one \
         such kernel, and these exhaust the codimension-one ideal slices containing the commutators",
        ch.point(),
        ch.twist().value(),
    );
    Ok(ModularReport {
        character: ch.clone(),
        window,
        ambient_dim,
        kernel_dim,
        codim_is_one,
        contains_commutator_window,
        commutator_basis_evals_vanish,
        closed_under_window_products: closed,
        classification,
        kernel,
    })
}
