use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::crossed::CrossedElement;
use crate::error::{Error, Result};
use crate::funcalg::{format_coeff_times, Func};
use crate::scalar::Scalar;

/// A Laurent polynomial over the Gaussian rationals: finitely many terms
/// c_k t^k with integer exponents of either sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    /// Sorted by exponent, no zero coefficients.
    terms: Vec<(i64, Scalar)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Scalar::one())
    }

    pub fn monomial(exponent: i64, coeff: Scalar) -> Self {
        if coeff.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: vec![(exponent, coeff)],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut merged: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (k, c) in terms {
            let entry = merged.entry(k).or_insert_with(Scalar::zero);
            *entry = &*entry + &c;
        }
        LaurentPoly {
            terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(i64, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> Scalar {
        match self.terms.binary_search_by_key(&exponent, |(k, _)| *k) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Lowest and highest exponent, when nonzero.
    pub fn degree_bounds(&self) -> Option<(i64, i64)> {
        let lo = self.terms.first()?.0;
        let hi = self.terms.last().expect("nonempty").0;
        Some((lo, hi))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(k, _)| *k == 0)
    }

    /// Multiplies by t^shift.
    pub fn shifted(&self, shift: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k + shift, c.clone())).collect(),
        }
    }

    /// Exact evaluation. Zero is excluded up front: t is invertible, so
    /// the point must be too.
    pub fn eval(&self, point: &Scalar) -> Result<Scalar> {
        if point.is_zero() {
            return Err(Error::EvalAtZero);
        }
        let mut acc = Scalar::zero();
        for (k, c) in &self.terms {
            acc = &acc + &(c * &point.powi(*k)?);
        }
        Ok(acc)
    }

    /// Exact division: returns q with self = q * d, or None when d does
    /// not divide self. Units t^k are stripped from both sides first, so
    /// this is ordinary polynomial division underneath.
    pub fn divide_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (self_lo, _) = self.degree_bounds().expect("nonzero");
        let (d_lo, d_hi) = d.degree_bounds().expect("nonzero");
        let mut rem = self.shifted(-self_lo);
        let divisor = d.shifted(-d_lo);
        let d_deg = d_hi - d_lo;
        let d_lead = divisor.coefficient(d_deg);
        let mut quot_terms = Vec::new();
        while !rem.is_zero() {
            let (_, r_hi) = rem.degree_bounds().expect("nonzero");
            if r_hi < d_deg {
                return None;
            }
            let factor = rem.coefficient(r_hi).div(&d_lead).expect("leading nonzero");
            let step = r_hi - d_deg;
            quot_terms.push((step, factor.clone()));
            rem = &rem - &(&divisor * &LaurentPoly::monomial(step, factor));
        }
        Some(LaurentPoly::from_terms(quot_terms).shifted(self_lo - d_lo))
    }
}

macro_rules! laurent_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

laurent_binop!(Add, add, |a, b| {
    LaurentPoly::from_terms(
        a.terms
            .iter()
            .cloned()
            .chain(b.terms.iter().cloned()),
    )
});

laurent_binop!(Sub, sub, |a, b| {
    LaurentPoly::from_terms(
        a.terms
            .iter()
            .cloned()
            .chain(b.terms.iter().map(|(k, c)| (*k, -c))),
    )
});

laurent_binop!(Mul, mul, |a, b| {
    let mut products = Vec::with_capacity(a.terms.len() * b.terms.len());
    for (k1, c1) in &a.terms {
        for (k2, c2) in &b.terms {
            products.push((k1 + k2, c1 * c2));
        }
    }
    LaurentPoly::from_terms(products)
});

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let piece = match *k {
                0 => {
                    let s = c.to_string();
                    if s.contains('+') || (s.contains('-') && !s.starts_with('-')) {
                        format!("({s})")
                    } else {
                        s
                    }
                }
                1 => format_coeff_times(c, "t"),
                _ => format_coeff_times(c, &format!("t^{k}")),
            };
            if i == 0 {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        write!(f, "{out}")
    }
}

/// The ideal (t - a_1)...(t - a_n) over the Laurent ring, given by its
/// root multiset. Roots must be nonzero: t is a unit, so a root at zero
/// would name the whole ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootIdeal {
    roots: Vec<Scalar>,
    modulus: LaurentPoly,
}

impl RootIdeal {
    pub fn new(roots: Vec<Scalar>) -> Result<Self> {
        if roots.is_empty() || roots.iter().any(Scalar::is_zero) {
            return Err(Error::BadRootIdeal);
        }
        let mut roots = roots;
        roots.sort_by(|a, b| a.lex_cmp(b));
        let mut modulus = LaurentPoly::one();
        for a in &roots {
            let factor = LaurentPoly::from_terms([(1, Scalar::one()), (0, -a)]);
            modulus = &modulus * &factor;
        }
        Ok(RootIdeal { roots, modulus })
    }

    pub fn roots(&self) -> &[Scalar] {
        &self.roots
    }

    /// The product of the linear factors, multiplicities included.
    pub fn modulus(&self) -> &LaurentPoly {
        &self.modulus
    }

    /// Membership is exact divisibility by the modulus.
    pub fn contains(&self, p: &LaurentPoly) -> bool {
        p.divide_exact(&self.modulus).is_some()
    }

    /// Independent necessary condition: members vanish at every root.
    /// Weaker than `contains` for repeated roots; kept as a cross-check.
    pub fn vanishes_at_roots(&self, p: &LaurentPoly) -> Result<bool> {
        for a in &self.roots {
            if !p.eval(a)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A nonzero member of the ideal that is built from f alone: the product
/// of the factors f - f(a_i). Shows the subalgebra generated by any
/// nonconstant element meets the ideal nontrivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrichotomyWitness {
    pub input: LaurentPoly,
    pub roots: Vec<Scalar>,
    /// The i-th factor is input minus the constant input(roots[i]).
    pub factors: Vec<LaurentPoly>,
    pub witness: LaurentPoly,
}

pub fn trichotomy_witness(f: &LaurentPoly, ideal: &RootIdeal) -> Result<TrichotomyWitness> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut factors = Vec::with_capacity(ideal.roots().len());
    let mut witness = LaurentPoly::one();
    for a in ideal.roots() {
        let value = f.eval(a)?;
        let factor = f - &LaurentPoly::monomial(0, value);
        witness = &witness * &factor;
        factors.push(factor);
    }
    Ok(TrichotomyWitness {
        input: f.clone(),
        roots: ideal.roots().to_vec(),
        factors,
        witness,
    })
}

impl TrichotomyWitness {
    /// Recomputes every factor and the product from the input alone, then
    /// checks the claimed properties: nonzero and inside the ideal.
    pub fn replay(&self, ideal: &RootIdeal) -> Result<()> {
        let fail = |step: usize, reason: &str| {
            Err(Error::ReplayFailed {
                step,
                reason: reason.to_string(),
            })
        };
        if self.roots != ideal.roots() {
            return fail(0, "root multiset does not match the ideal");
        }
        if self.factors.len() != self.roots.len() {
            return fail(0, "factor count does not match the root count");
        }
        let mut product = LaurentPoly::one();
        for (i, (a, factor)) in self.roots.iter().zip(&self.factors).enumerate() {
            let expected = &self.input - &LaurentPoly::monomial(0, self.input.eval(a)?);
            if *factor != expected {
                return fail(i, "factor is not the input shifted by its root value");
            }
            product = &product * factor;
        }
        let step = self.factors.len();
        if product != self.witness {
            return fail(step, "witness is not the product of the factors");
        }
        if self.witness.is_zero() {
            return fail(step, "witness is zero");
        }
        if !ideal.contains(&self.witness) {
            return fail(step, "witness is not divisible by the ideal modulus");
        }
        Ok(())
    }
}

/// Reads a crossed-product element over a one-point system as a Laurent
/// polynomial: the coefficient of d^n becomes the coefficient of t^n.
pub fn to_laurent(elem: &CrossedElement) -> Result<LaurentPoly> {
    if elem.size() != 1 {
        return Err(Error::NotOnePoint);
    }
    Ok(LaurentPoly::from_terms(
        elem.terms()
            .iter()
            .map(|(n, f)| (*n, f.get(0).clone())),
    ))
}

/// The inverse direction, over the unique one-point system.
pub fn from_laurent(p: &LaurentPoly) -> CrossedElement {
    let mut acc = CrossedElement::zero(1);
    for (k, c) in p.terms() {
        acc = &acc + &CrossedElement::monomial(*k, Func::constant(1, c.clone()));
    }
    acc
}
