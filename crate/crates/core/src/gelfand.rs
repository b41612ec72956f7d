//! Turns an abstract commutative algebra with automorphism, given by
//! structure constants, into a concrete finite system: characters become
//! points, the automorphism becomes a permutation, and crossed elements
//! transport along the character matrix.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer};

use crate::crossed::{is_maximal_abelian, CrossedElement, MaximalAbelianReport};
use crate::dynsys::DynSystem;
use crate::error::{Error, Result};
use crate::funcalg::Func;
use crate::idealwin::{generate_ideal_window, DegreeWindow};
use crate::linalg::{identity, invert, matmul, matvec, nullspace, trace, vecmat, Row};
use crate::scalar::{Rational, Scalar};

/// A finite-dimensional commutative algebra presented by structure
/// constants c[i][j] (the coordinates of b_i * b_j) together with an
/// algebra automorphism, whose row i holds the coordinates of the image
/// of b_i. Elements are coordinate vectors in the basis b_0, ..,
/// b_{dim-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractAlgebra {
    dim: usize,
    mul: Vec<Vec<Vec<Scalar>>>,
    sigma: Vec<Row>,
    sigma_inv: Vec<Row>,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::AlgebraCheck(msg()))
    }
}

impl AbstractAlgebra {
    /// Validates commutativity, associativity on basis triples, and that
    /// sigma is an invertible multiplicative map.
    pub fn new(mul: Vec<Vec<Vec<Scalar>>>, sigma: Vec<Row>) -> Result<Self> {
        let dim = mul.len();
        check(dim >= 1, || {
            "the algebra needs at least one basis element".to_string()
        })?;
        let cubic = mul
            .iter()
            .all(|p| p.len() == dim && p.iter().all(|r| r.len() == dim));
        check(cubic, || format!("mul must be {dim}x{dim}x{dim}"))?;
        check(
            sigma.len() == dim && sigma.iter().all(|r| r.len() == dim),
            || format!("sigma must be {dim}x{dim}"),
        )?;
        for i in 0..dim {
            for j in 0..i {
                check(mul[i][j] == mul[j][i], || {
                    format!("basis products {i} and {j} do not commute")
                })?;
            }
        }
        let alg = AbstractAlgebra {
            dim,
            mul,
            sigma_inv: identity(dim),
            sigma,
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    // (b_i b_j) b_k against b_i (b_j b_k), in coordinates.
                    let left = alg.mul_coords(&alg.mul[i][j], &basis_vec(dim, k));
                    let right = alg.mul_coords(&basis_vec(dim, i), &alg.mul[j][k]);
                    check(left == right, || {
                        format!("associativity fails on basis triple ({i}, {j}, {k})")
                    })?;
                }
            }
        }
        let sigma_inv = invert(&alg.sigma).ok_or_else(|| {
            Error::AlgebraCheck("the automorphism matrix is not invertible".to_string())
        })?;
        for i in 0..dim {
            for j in 0..dim {
                let image_of_product = vecmat(&alg.mul[i][j], &alg.sigma);
                let product_of_images = alg.mul_coords(&alg.sigma[i], &alg.sigma[j]);
                check(image_of_product == product_of_images, || {
                    format!("the automorphism is not multiplicative on basis pair ({i}, {j})")
                })?;
            }
        }
        Ok(AbstractAlgebra { sigma_inv, ..alg })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sigma_matrix(&self) -> &[Row] {
        &self.sigma
    }

    /// Coordinates of the product of two coordinate vectors.
    pub fn mul_coords(&self, u: &[Scalar], v: &[Scalar]) -> Row {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (k, c) in self.mul[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&uv * c);
                    }
                }
            }
        }
        out
    }

    /// Applies sigma^n to a coordinate vector.
    pub fn sigma_pow_coords(&self, v: &[Scalar], n: i64) -> Row {
        let mat = if n >= 0 { &self.sigma } else { &self.sigma_inv };
        let mut out = v.to_vec();
        for _ in 0..n.unsigned_abs() {
            out = vecmat(&out, mat);
        }
        out
    }

    /// The matrix of multiplication by u, acting on column vectors.
    fn mult_operator(&self, u: &[Scalar]) -> Vec<Row> {
        let mut l = vec![vec![Scalar::zero(); self.dim]; self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.mul[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        l[k][j] = &l[k][j] + &(ui * c);
                    }
                }
            }
        }
        l
    }

    /// The trace form is nondegenerate exactly when the algebra has no
    /// nilpotents; over characteristic zero this is the semisimplicity
    /// test.
    pub fn is_semisimple(&self) -> bool {
        let ops: Vec<Vec<Row>> = (0..self.dim)
            .map(|i| self.mult_operator(&basis_vec(self.dim, i)))
            .collect();
        let gram: Vec<Row> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| trace(&matmul(&ops[i], &ops[j])))
                    .collect()
            })
            .collect();
        invert(&gram).is_some()
    }
}

fn basis_vec(dim: usize, i: usize) -> Row {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

#[derive(Deserialize)]
struct AlgebraSpec {
    dim: usize,
    mul: Vec<Vec<Vec<String>>>,
    sigma: Vec<Vec<String>>,
}

impl<'de> Deserialize<'de> for AbstractAlgebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let spec = AlgebraSpec::deserialize(deserializer)?;
        if spec.mul.len() != spec.dim {
            return Err(D::Error::custom(format!(
                "dim is {} but mul lists {} rows",
                spec.dim,
                spec.mul.len()
            )));
        }
        let mut mul = Vec::with_capacity(spec.dim);
        for (i, plane) in spec.mul.iter().enumerate() {
            let mut rows = Vec::with_capacity(plane.len());
            for (j, row) in plane.iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (k, text) in row.iter().enumerate() {
                    out.push(text.parse::<Scalar>().map_err(|e| {
                        D::Error::custom(format!("mul[{i}][{j}][{k}]: {e}"))
                    })?);
                }
                rows.push(out);
            }
            mul.push(rows);
        }
        let mut sigma = Vec::with_capacity(spec.sigma.len());
        for (i, row) in spec.sigma.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, text) in row.iter().enumerate() {
                out.push(
                    text.parse::<Scalar>()
                        .map_err(|e| D::Error::custom(format!("sigma[{i}][{j}]: {e}")))?,
                );
            }
            sigma.push(out);
        }
        AbstractAlgebra::new(mul, sigma).map_err(D::Error::custom)
    }
}

/// The diagonal algebra on the points of a system: basis of orthogonal
/// idempotents, automorphism permuting them along sigma.
pub fn diagonal_algebra(sys: &DynSystem) -> AbstractAlgebra {
    let dim = sys.size();
    let mut mul = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
    for (i, plane) in mul.iter_mut().enumerate() {
        plane[i][i] = Scalar::one();
    }
    let sigma = (0..dim).map(|i| basis_vec(dim, sys.apply(i))).collect();
    AbstractAlgebra::new(mul, sigma).expect("diagonal algebras validate")
}

/// Basis 1, g with g*g = 1 and the identity automorphism.
pub fn z2_group_algebra() -> AbstractAlgebra {
    let e = |i: usize| basis_vec(2, i);
    let mul = vec![vec![e(0), e(1)], vec![e(1), e(0)]];
    AbstractAlgebra::new(mul, identity(2)).expect("the group algebra validates")
}

/// Characteristic polynomial coefficients, ascending, monic: returns c
/// with p(x) = sum c[k] x^k and c[n] = 1. Exact via the trace recurrence,
/// which divides by integers only.
fn charpoly(m: &[Row]) -> Vec<Scalar> {
    let n = m.len();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut b = identity(n);
    for k in 1..=n {
        let c = matmul(m, &b);
        let a = trace(&c)
            .div(&Scalar::from_int(k as i64))
            .expect("k is nonzero");
        coeffs[n - k] = -&a;
        b = c;
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k];
        }
    }
    coeffs
}

/// All Gaussian integers whose norm divides the norm of z. Every Gaussian
/// integer dividing z is among them, so they are a complete candidate
/// list for integer roots of a monic polynomial with constant term z.
fn gaussian_norm_divisor_candidates(re: &BigInt, im: &BigInt) -> Vec<(BigInt, BigInt)> {
    let norm = re * re + im * im;
    let mut divisors = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= norm {
        if (&norm % &d).is_zero() {
            divisors.push(d.clone());
            divisors.push(&norm / &d);
        }
        d += 1;
    }
    let mut seen: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    for m in divisors {
        let mut x = BigInt::zero();
        while &x * &x <= m {
            let rest = &m - &x * &x;
            let y = rest.sqrt();
            if &y * &y == rest {
                for (a, b) in [(x.clone(), y.clone()), (y.clone(), x.clone())] {
                    for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let cand = (&a * BigInt::from(sa), &b * BigInt::from(sb));
                        if !(cand.0.is_zero() && cand.1.is_zero()) {
                            seen.insert(cand);
                        }
                    }
                }
            }
            x += 1;
        }
    }
    seen.into_iter().collect()
}

fn eval_poly(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// The distinct roots of a monic polynomial that lie in the scalar field.
/// Zero roots are split off as powers of x; the rest are found by scaling
/// to a monic integer polynomial, whose scalar roots are Gaussian
/// integers dividing the constant term.
fn scalar_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut low = 0;
    while low < coeffs.len() - 1 && coeffs[low].is_zero() {
        low += 1;
    }
    let stripped = &coeffs[low..];
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let n = stripped.len() - 1;
    if n == 0 {
        return roots;
    }
    let mut denom = BigInt::one();
    for c in stripped {
        denom = denom.lcm(c.re().denom()).lcm(c.im().denom());
    }
    // x = denom * root turns p monic-integer: coefficient of x^(n-j)
    // is stripped[n-j] * denom^j, an integer.
    let denom_rat = Rational::from_integer(denom.clone());
    let mut scale = Rational::one();
    for _ in 0..n {
        scale = &scale * &denom_rat;
    }
    let constant = &stripped[0] * &Scalar::new(scale.clone(), Rational::zero());
    debug_assert!(constant.re().is_integer() && constant.im().is_integer());
    for (re, im) in
        gaussian_norm_divisor_candidates(&constant.re().to_integer(), &constant.im().to_integer())
    {
        let root = Scalar::new(
            Rational::new(re, denom.clone()),
            Rational::new(im, denom.clone()),
        );
        if eval_poly(stripped, &root).is_zero() && !roots.contains(&root) {
            roots.push(root);
        }
    }
    roots
}

/// The concrete model of an abstract algebra: one point per character,
/// the automorphism acting by permutation, and the character matrix
/// carrying coordinate vectors to functions on the points.
#[derive(Debug, Clone)]
pub struct GelfandData {
    pub algebra: AbstractAlgebra,
    /// Row r lists the values of character r on the basis elements.
    pub characters: Vec<Row>,
    pub induced_system: DynSystem,
    /// The separating element whose multiplication operator was
    /// diagonalized.
    pub separating: Row,
    transform_inv: Vec<Row>,
}

const SEARCH_COEFFS: [i64; 6] = [-3, -2, -1, 1, 2, 3];

/// Finds all characters of the algebra by exact simultaneous
/// diagonalization, or reports that it cannot be done over the scalar
/// field.
pub fn gelfand_transform(alg: &AbstractAlgebra) -> Result<GelfandData> {
    if !alg.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let dim = alg.dim();
    let mut candidates: Vec<Row> = Vec::new();
    for i in 0..dim {
        for c in SEARCH_COEFFS {
            let mut u = vec![Scalar::zero(); dim];
            u[i] = Scalar::from_int(c);
            candidates.push(u);
        }
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            for c1 in SEARCH_COEFFS {
                for c2 in SEARCH_COEFFS {
                    let mut u = vec![Scalar::zero(); dim];
                    u[i] = Scalar::from_int(c1);
                    u[j] = Scalar::from_int(c2);
                    candidates.push(u);
                }
            }
        }
    }
    let mut found: Option<(Row, Vec<Scalar>)> = None;
    for u in candidates {
        let roots = scalar_roots(&charpoly(&alg.mult_operator(&u)));
        if roots.len() == dim {
            found = Some((u, roots));
            break;
        }
    }
    let Some((separating, eigenvalues)) = found else {
        return Err(Error::NotSplit);
    };
    let l = alg.mult_operator(&separating);
    let mut characters = Vec::with_capacity(dim);
    for lambda in &eigenvalues {
        let shifted: Vec<Row> = l
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r[i] = &r[i] - lambda;
                r
            })
            .collect();
        let kernel = nullspace(&shifted, dim);
        assert_eq!(kernel.len(), 1, "distinct eigenvalues give lines");
        let v = &kernel[0];
        // v*v = c v on the eigenline; c != 0 because there are no
        // nilpotents, and v/c is the idempotent of the line.
        let vv = alg.mul_coords(v, v);
        let at = v.iter().position(|x| !x.is_zero()).expect("kernel vectors are nonzero");
        let c = vv[at].div(&v[at]).expect("nonzero entry");
        if c.is_zero() {
            return Err(Error::NotSemisimple);
        }
        let inv_c = c.inv()?;
        let idem: Row = v.iter().map(|x| x * &inv_c).collect();
        // b_j * idem = chi(b_j) * idem reads off the character.
        let mut chi = Vec::with_capacity(dim);
        let pivot = idem.iter().position(|x| !x.is_zero()).expect("idempotents are nonzero");
        for j in 0..dim {
            let w = alg.mul_coords(&basis_vec(dim, j), &idem);
            let value = w[pivot].div(&idem[pivot]).expect("pivot entry is nonzero");
            check(
                w.iter()
                    .zip(&idem)
                    .all(|(a, b)| *a == &value * b),
                || format!("basis element {j} does not act as a scalar on an eigenline"),
            )?;
            chi.push(value);
        }
        characters.push(chi);
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        for (x, y) in characters[a].iter().zip(&characters[b]) {
            let cmp = x.lex_cmp(y);
            if cmp != std::cmp::Ordering::Equal {
                return cmp.reverse();
            }
        }
        std::cmp::Ordering::Equal
    });
    let characters: Vec<Row> = order.into_iter().map(|r| characters[r].clone()).collect();
    for (r, chi) in characters.iter().enumerate() {
        check(chi.iter().any(|x| !x.is_zero()), || {
            format!("character {r} is zero")
        })?;
        for i in 0..dim {
            for j in 0..dim {
                let lhs: Scalar = alg.mul[i][j]
                    .iter()
                    .zip(chi)
                    .fold(Scalar::zero(), |acc, (c, x)| &acc + &(c * x));
                check(lhs == &chi[i] * &chi[j], || {
                    format!("character {r} is not multiplicative on basis pair ({i}, {j})")
                })?;
            }
        }
        for other in &characters[..r] {
            check(other != chi, || "characters repeat".to_string())?;
        }
    }
    let transform_inv = invert(&characters).ok_or_else(|| {
        Error::AlgebraCheck("characters are not linearly independent".to_string())
    })?;
    // The point map sends character r to r composed with sigma inverse.
    let mut perm = Vec::with_capacity(dim);
    for chi in &characters {
        let moved = matvec(&alg.sigma_inv, chi);
        let target = characters.iter().position(|c| *c == moved).ok_or_else(|| {
            Error::AlgebraCheck("the automorphism does not permute the characters".to_string())
        })?;
        perm.push(target);
    }
    let induced_system = DynSystem::new(perm)?;
    Ok(GelfandData {
        algebra: alg.clone(),
        characters,
        induced_system,
        separating,
        transform_inv,
    })
}

impl GelfandData {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The change-of-basis matrix: row r is character r.
    pub fn transform(&self) -> &[Row] {
        &self.characters
    }

    /// The eigenvalue of the separating element at character r.
    pub fn eigenvalue(&self, r: usize) -> Scalar {
        self.characters[r]
            .iter()
            .zip(&self.separating)
            .fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
    }

    /// A coordinate vector as a function on the character points.
    pub fn hat(&self, coords: &[Scalar]) -> Func {
        Func::from_values(matvec(&self.characters, coords))
    }

    /// The inverse of `hat`.
    pub fn unhat(&self, f: &Func) -> Row {
        matvec(&self.transform_inv, f.values())
    }
}

/// A finitely supported sum of coordinate vectors against powers of the
/// twist, over an abstract algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractElement {
    dim: usize,
    terms: Vec<(i64, Row)>,
}

impl AbstractElement {
    pub fn zero(dim: usize) -> Self {
        AbstractElement { dim, terms: Vec::new() }
    }

    pub fn monomial(degree: i64, coords: Row) -> Self {
        let dim = coords.len();
        if coords.iter().all(Scalar::is_zero) {
            return AbstractElement::zero(dim);
        }
        AbstractElement {
            dim,
            terms: vec![(degree, coords)],
        }
    }

    pub fn from_terms(dim: usize, terms: Vec<(i64, Row)>) -> Result<Self> {
        let mut acc: std::collections::BTreeMap<i64, Row> = std::collections::BTreeMap::new();
        for (n, coords) in terms {
            if coords.len() != dim {
                return Err(Error::LengthMismatch {
                    expected: dim,
                    actual: coords.len(),
                });
            }
            let entry = acc.entry(n).or_insert_with(|| vec![Scalar::zero(); dim]);
            for (a, b) in entry.iter_mut().zip(coords) {
                *a = &*a + &b;
            }
        }
        Ok(AbstractElement {
            dim,
            terms: acc
                .into_iter()
                .filter(|(_, coords)| coords.iter().any(|c| !c.is_zero()))
                .collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(i64, Row)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Twisted product over the abstract algebra: coefficients multiply after
/// the left degree pushes the right coefficient through the automorphism.
pub fn abstract_conv(
    alg: &AbstractAlgebra,
    a: &AbstractElement,
    b: &AbstractElement,
) -> Result<AbstractElement> {
    if a.dim != alg.dim() || b.dim != alg.dim() {
        return Err(Error::SystemMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let mut products = Vec::new();
    for (n, u) in &a.terms {
        for (m, v) in &b.terms {
            let degree = n
                .checked_add(*m)
                .ok_or(Error::DegreeOverflow { limit: i64::MAX })?;
            products.push((degree, alg.mul_coords(u, &alg.sigma_pow_coords(v, *n))));
        }
    }
    AbstractElement::from_terms(alg.dim(), products)
}

/// Carries an abstract element to the concrete crossed product over the
/// character points, coefficient by coefficient.
pub fn transport_element(gd: &GelfandData, f: &AbstractElement) -> Result<CrossedElement> {
    if f.dim != gd.dim() {
        return Err(Error::SystemMismatch {
            left: f.dim,
            right: gd.dim(),
        });
    }
    CrossedElement::from_terms(
        gd.dim(),
        f.terms
            .iter()
            .map(|(n, coords)| (*n, gd.hat(coords)))
            .collect(),
    )
}

/// The inverse transport.
pub fn transport_inverse(gd: &GelfandData, elem: &CrossedElement) -> Result<AbstractElement> {
    if elem.size() != gd.dim() {
        return Err(Error::SystemMismatch {
            left: elem.size(),
            right: gd.dim(),
        });
    }
    AbstractElement::from_terms(
        gd.dim(),
        elem.terms()
            .iter()
            .map(|(n, f)| (*n, gd.unhat(f)))
            .collect(),
    )
}

/// The three equivalent density, maximality, and intersection statements,
/// evaluated on the induced finite system. All three fail at finite
/// dimension, each with its own witness, and the report checks they agree.
#[derive(Debug, Clone)]
pub struct TriquivReport {
    pub per_infinity_dense: bool,
    pub maximal_abelian: MaximalAbelianReport,
    /// Whether every nonzero windowed ideal met the coefficient algebra.
    pub intersection_property: bool,
    pub witness_generator: CrossedElement,
    pub witness_window_dim: usize,
    pub witness_meet_dim: usize,
    pub verdicts_agree: bool,
}

pub fn triquiv_report(gd: &GelfandData) -> Result<TriquivReport> {
    let sys = &gd.induced_system;
    let size = sys.size();
    let all: crate::dynsys::PointSet = (0..size).collect();
    let per_infinity_dense = sys.per_infinity() == all;
    let maximal_abelian = is_maximal_abelian(sys);
    let n = sys.orbit_lcm();
    let point = *sys.per(n)?.iter().next().expect("sigma^lcm fixes everything");
    let f = Func::point_mass(size, point);
    let witness_generator =
        &CrossedElement::monomial(0, f.clone()) + &CrossedElement::monomial(n, f);
    let mult = DegreeWindow::new(-n, n)?;
    let target = DegreeWindow::new(-2 * n, 2 * n)?;
    let ideal = generate_ideal_window(sys, std::slice::from_ref(&witness_generator), mult, target)?;
    let witness_window_dim = ideal.dim();
    let witness_meet_dim = ideal.intersect_coefficient_algebra().dim();
    let intersection_property = !(witness_window_dim > 0 && witness_meet_dim == 0);
    let verdicts_agree = per_infinity_dense == maximal_abelian.holds
        && maximal_abelian.holds == intersection_property;
    Ok(TriquivReport {
        per_infinity_dense,
        maximal_abelian,
        intersection_property,
        witness_generator,
        witness_window_dim,
        witness_meet_dim,
        verdicts_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn three_cycle() -> DynSystem {
        DynSystem::new(vec![1, 2, 0]).unwrap()
    }

    #[test]
    fn charpoly_matches_hand_computation() {
        let m = vec![
            vec![sc(0), sc(-3)],
            vec![sc(-3), sc(0)],
        ];
        assert_eq!(charpoly(&m), vec![sc(-9), sc(0), sc(1)]);
        let m = vec![
            vec![sc(2), sc(1)],
            vec![sc(0), sc(3)],
        ];
        // (x-2)(x-3) = x^2 - 5x + 6
        assert_eq!(charpoly(&m), vec![sc(6), sc(-5), sc(1)]);
    }

    #[test]
    fn scalar_roots_cover_zero_fractions_and_gaussian_roots() {
        // x(x+3)(x+2): roots 0, -3, -2.
        let p = vec![sc(0), sc(6), sc(5), sc(1)];
        let roots = scalar_roots(&p);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&sc(0)) && roots.contains(&sc(-3)) && roots.contains(&sc(-2)));
        // (x - 1/2)(x + 1): fractional root needs the rescale.
        let p = vec![Scalar::from_ratio(-1, 2), Scalar::from_ratio(1, 2), sc(1)];
        let roots = scalar_roots(&p);
        assert!(roots.contains(&Scalar::from_ratio(1, 2)) && roots.contains(&sc(-1)));
        // x^2 + 9: purely imaginary roots.
        let p = vec![sc(9), sc(0), sc(1)];
        let roots = scalar_roots(&p);
        assert_eq!(roots.len(), 2);
        let three_i = &Scalar::i() * &sc(3);
        assert!(roots.contains(&three_i) && roots.contains(&-&three_i));
        // x^2 - 2 has no scalar roots.
        assert!(scalar_roots(&[sc(-2), sc(0), sc(1)]).is_empty());
        // x^2: zero twice still reports the root once.
        assert_eq!(scalar_roots(&[sc(0), sc(0), sc(1)]), vec![sc(0)]);
    }

    #[test]
    fn diagonal_algebra_recovers_its_system() {
        let sys = three_cycle();
        let alg = diagonal_algebra(&sys);
        assert!(alg.is_semisimple());
        let gd = gelfand_transform(&alg).unwrap();
        assert_eq!(gd.characters, identity(3));
        let induced: Vec<usize> = (0..3).map(|x| gd.induced_system.apply(x)).collect();
        assert_eq!(induced, vec![1, 2, 0]);
    }

    #[test]
    fn z2_characters_order_plus_one_first() {
        let alg = z2_group_algebra();
        let gd = gelfand_transform(&alg).unwrap();
        assert_eq!(
            gd.characters,
            vec![vec![sc(1), sc(1)], vec![sc(1), sc(-1)]]
        );
        let induced: Vec<usize> = (0..2).map(|x| gd.induced_system.apply(x)).collect();
        assert_eq!(induced, vec![0, 1]);
        let g = AbstractElement::monomial(0, vec![sc(0), sc(1)]);
        let moved = transport_element(&gd, &g).unwrap();
        let expected = CrossedElement::monomial(
            0,
            Func::from_values(vec![sc(1), sc(-1)]),
        );
        assert_eq!(moved, expected);
        assert_eq!(transport_inverse(&gd, &moved).unwrap(), g);
    }

    #[test]
    fn nilpotents_are_rejected() {
        // Basis 1, u with u^2 = 0.
        let e = |i: usize| basis_vec(2, i);
        let mul = vec![vec![e(0), e(1)], vec![e(1), vec![sc(0), sc(0)]]];
        let alg = AbstractAlgebra::new(mul, identity(2)).unwrap();
        assert!(!alg.is_semisimple());
        assert!(matches!(gelfand_transform(&alg), Err(Error::NotSemisimple)));
    }

    #[test]
    fn irrational_spectra_are_reported_as_unsplit() {
        // Basis 1, u with u^2 = 2: eigenvalues would be square roots of 2.
        let e = |i: usize| basis_vec(2, i);
        let mul = vec![vec![e(0), e(1)], vec![e(1), vec![sc(2), sc(0)]]];
        let alg = AbstractAlgebra::new(mul, identity(2)).unwrap();
        assert!(alg.is_semisimple());
        assert!(matches!(gelfand_transform(&alg), Err(Error::NotSplit)));
    }

    #[test]
    fn imaginary_spectra_split() {
        // Basis 1, u with u^2 = -1: characters send u to i and -i.
        let e = |i: usize| basis_vec(2, i);
        let mul = vec![vec![e(0), e(1)], vec![e(1), vec![sc(-1), sc(0)]]];
        let alg = AbstractAlgebra::new(mul, identity(2)).unwrap();
        let gd = gelfand_transform(&alg).unwrap();
        assert_eq!(gd.characters.len(), 2);
        let values: Vec<Scalar> = gd.characters.iter().map(|chi| chi[1].clone()).collect();
        assert!(values.contains(&Scalar::i()) && values.contains(&-&Scalar::i()));
    }

    #[test]
    fn validation_names_the_failing_clause() {
        let e = |i: usize| basis_vec(2, i);
        // Non-commutative table.
        let mul = vec![vec![e(0), e(0)], vec![e(1), e(0)]];
        let err = AbstractAlgebra::new(mul, identity(2)).unwrap_err().to_string();
        assert!(err.contains("do not commute"));
        // Singular automorphism.
        let mul = vec![vec![e(0), e(1)], vec![e(1), e(0)]];
        let err = AbstractAlgebra::new(mul, vec![e(0), e(0)])
            .unwrap_err()
            .to_string();
        assert!(err.contains("not invertible"));
        // Invertible but not multiplicative: swap 1 and g.
        let mul = vec![vec![e(0), e(1)], vec![e(1), e(0)]];
        let err = AbstractAlgebra::new(mul, vec![e(1), e(0)])
            .unwrap_err()
            .to_string();
        assert!(err.contains("not multiplicative"));
    }

    #[test]
    fn transport_is_multiplicative_on_a_spot_check() {
        let sys = three_cycle();
        let gd = gelfand_transform(&diagonal_algebra(&sys)).unwrap();
        let a = AbstractElement::from_terms(
            3,
            vec![(0, vec![sc(1), sc(2), sc(0)]), (1, vec![sc(0), sc(1), sc(-1)])],
        )
        .unwrap();
        let b = AbstractElement::from_terms(
            3,
            vec![(-1, vec![sc(3), sc(0), sc(1)]), (2, vec![Scalar::i(), sc(0), sc(0)])],
        )
        .unwrap();
        let product = abstract_conv(&gd.algebra, &a, &b).unwrap();
        let lhs = transport_element(&gd, &product).unwrap();
        let rhs = transport_element(&gd, &a)
            .unwrap()
            .conv(&gd.induced_system, &transport_element(&gd, &b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(transport_inverse(&gd, &lhs).unwrap(), product);
    }

    #[test]
    fn triquiv_verdicts_agree_and_fail() {
        let gd = gelfand_transform(&diagonal_algebra(&three_cycle())).unwrap();
        let report = triquiv_report(&gd).unwrap();
        assert!(!report.per_infinity_dense);
        assert!(!report.maximal_abelian.holds);
        assert!(!report.intersection_property);
        assert!(report.verdicts_agree);
        assert!(report.witness_window_dim > 0);
        assert_eq!(report.witness_meet_dim, 0);
        assert_eq!(report.witness_generator.degrees(), vec![0, 3]);
    }

    #[test]
    fn json_input_round_trips_through_validation() {
        let text = r#"{
            "dim": 2,
            "mul": [[["1", "0"], ["0", "1"]], [["0", "1"], ["1", "0"]]],
            "sigma": [["1", "0"], ["0", "1"]]
        }"#;
        let alg: AbstractAlgebra = serde_json::from_str(text).unwrap();
        assert_eq!(alg, z2_group_algebra());
        let bad = r#"{
            "dim": 2,
            "mul": [[["1", "0"], ["0", "1"]], [["0", "1"], ["oops", "0"]]],
            "sigma": [["1", "0"], ["0", "1"]]
        }"#;
        let err = serde_json::from_str::<AbstractAlgebra>(bad).unwrap_err().to_string();
        assert!(err.contains("mul[1][1][0]"));
    }
}
