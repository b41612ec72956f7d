//! End-to-end acceptance gate. Each test covers one numbered criterion,
//! prints a single PASS line with its exact workload, and fails if the
//! wall-clock budget is exceeded. All arithmetic checks are exact; the
//! only tolerance is the float display check in criterion 10.

mod common;

use common::*;
use crossed_core::banach::{
    commutator_ideal_window, enumerate_characters, l1_norm, l1_norm_exact,
    maximal_modular_report, vanishing_on_fixed_points,
};
use crossed_core::between::build_avoiding_b;
use crossed_core::crossed::commutant_window;
use crossed_core::funcalg::{DegreeRule, GradedSubspace};
use crossed_core::gelfand::{
    abstract_conv, diagonal_algebra, gelfand_transform, transport_element, transport_inverse,
    triquiv_report, z2_group_algebra, AbstractElement,
};
use crossed_core::idealwin::{generate_ideal_window, paired_form_check, paired_form_witness};
use crossed_core::laurent::{trichotomy_witness, LaurentPoly, RootIdeal};
use crossed_core::reduce::{reduce_to_commutant, replay};
use crossed_core::{CrossedElement, DegreeWindow, DynSystem, Func, PointSet, Scalar};
use rand::Rng;
use std::time::{Duration, Instant};

fn finish(number: u32, name: &str, detail: String, started: Instant, budget_secs: u64) {
    let elapsed = started.elapsed();
    println!("criterion {number} ({name}): PASS ({detail}; {elapsed:.2?})");
    assert!(
        elapsed <= Duration::from_secs(budget_secs),
        "criterion {number} ({name}) exceeded its {budget_secs}s budget: {elapsed:?}"
    );
}

fn point_monomial(size: usize, degree: i64, x: usize) -> CrossedElement {
    CrossedElement::monomial(degree, Func::point_mass(size, x))
}

/// Sparse element built in one pass; integer coefficients keep the bulk
/// of the axiom sweep cheap, the mixed draws keep fractions and imaginary
/// parts in play.
fn axiom_element<R: Rng>(rng: &mut R, size: usize, rich: bool) -> CrossedElement {
    let mut terms: Vec<(i64, Func)> = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let degree = rng.gen_range(-3i64..=3);
        let x = rng.gen_range(0..size);
        let c = if rich {
            rand_scalar(rng)
        } else {
            Scalar::from_int(rng.gen_range(-3i64..=3))
        };
        let mut values = vec![Scalar::zero(); size];
        values[x] = c;
        terms.push((degree, Func::from_values(values)));
    }
    CrossedElement::from_terms(size, terms).expect("term list is well formed")
}

#[test]
fn criterion_01_ring_axioms() {
    let started = Instant::now();
    let mut rng = rng(0xC1);
    let systems = all_systems(5);
    let per_system = 1000usize;
    for sys in &systems {
        let size = sys.size();
        let unit = CrossedElement::unit(size);
        for round in 0..per_system {
            let rich = round % 10 == 0;
            let f = axiom_element(&mut rng, size, rich);
            let g = axiom_element(&mut rng, size, rich);
            let h = axiom_element(&mut rng, size, rich);
            let fg = f.conv(sys, &g).unwrap();
            let gh = g.conv(sys, &h).unwrap();
            assert_eq!(
                fg.conv(sys, &h).unwrap(),
                f.conv(sys, &gh).unwrap(),
                "associativity failed over {:?}",
                sys.sigma()
            );
            let g_plus_h = &g + &h;
            let fh = f.conv(sys, &h).unwrap();
            assert_eq!(
                f.conv(sys, &g_plus_h).unwrap(),
                &fg + &fh,
                "left distributivity failed over {:?}",
                sys.sigma()
            );
            assert_eq!(
                g_plus_h.conv(sys, &f).unwrap(),
                &g.conv(sys, &f).unwrap() + &h.conv(sys, &f).unwrap(),
                "right distributivity failed over {:?}",
                sys.sigma()
            );
            assert_eq!(unit.conv(sys, &f).unwrap(), f);
            assert_eq!(f.conv(sys, &unit).unwrap(), f);
        }
    }
    finish(
        1,
        "ring axioms",
        format!(
            "{} systems x {per_system} triples, degrees [-3,3]",
            systems.len()
        ),
        started,
        10,
    );
}

#[test]
fn criterion_02_commutant_formula() {
    let started = Instant::now();
    let mut monomials = 0u64;
    for sys in all_systems(4) {
        let size = sys.size();
        let coeff_basis: Vec<CrossedElement> =
            (0..size).map(|y| point_monomial(size, 0, y)).collect();
        for n in -4..=4i64 {
            // Degree 0 sits inside the coefficient algebra; every point
            // counts as fixed there.
            let per: PointSet = if n == 0 {
                (0..size).collect()
            } else {
                sys.per(n).unwrap()
            };
            for x in 0..size {
                let m = point_monomial(size, n, x);
                let brute = coeff_basis.iter().all(|b| {
                    m.conv(&sys, b).unwrap() == b.conv(&sys, &m).unwrap()
                });
                let formula = m.in_commutant(&sys).unwrap();
                assert_eq!(
                    formula,
                    brute,
                    "commutant predicate disagrees with the brute-force centralizer \
                     for degree {n}, point {x} over {:?}",
                    sys.sigma()
                );
                assert_eq!(brute, per.contains(&x));
                monomials += 1;
            }
        }
    }
    finish(
        2,
        "commutant formula",
        format!("{monomials} monomials, every system with at most 4 points"),
        started,
        5,
    );
}

#[test]
fn criterion_03_reduction_certificates() {
    let started = Instant::now();
    let mut rng = rng(0xC3);
    let systems = all_systems(4);
    let total = 5000usize;
    let mut verified_ideals = 0u64;
    for i in 0..total {
        let sys = &systems[i % systems.len()];
        let f = rand_nonzero_element(&mut rng, sys.size(), -3, 3, 4);
        let cert = reduce_to_commutant(sys, &f).unwrap();
        assert!(
            cert.steps.len() <= 2 * f.num_terms(),
            "step bound violated for {f} over {:?}",
            sys.sigma()
        );
        replay(sys, &cert).unwrap();
        assert!(!cert.output.is_zero());
        assert!(cert.output.in_commutant(sys).unwrap());
        let (mult, target) = cert.containment_windows();
        let ideal = generate_ideal_window(sys, std::slice::from_ref(&f), mult, target).unwrap();
        assert!(
            ideal.membership(&cert.output).is_yes(),
            "reduction output escaped the windowed ideal of {f} over {:?}",
            sys.sigma()
        );
        if i % 50 == 0 {
            ideal.verify_certificates(sys).unwrap();
            verified_ideals += 1;
        }
    }
    finish(
        3,
        "commutant reduction",
        format!("{total} reductions replayed, {verified_ideals} ideal certificate replays"),
        started,
        60,
    );
}

#[test]
fn criterion_04_witness_ideal_window() {
    let started = Instant::now();
    let mut rng = rng(0xC4);
    let window = DegreeWindow::new(-6, 6).unwrap();
    let mut ideals = 0u64;
    for sys in all_systems(4) {
        let size = sys.size();
        for n in 1..=4i64 {
            let per = sys.per(n).unwrap();
            for &p in per.iter() {
                let f = Func::point_mass(size, p);
                let generator = &CrossedElement::monomial(0, f.clone())
                    + &CrossedElement::monomial(n, f);
                let ideal = generate_ideal_window(&sys, &[generator], window, window).unwrap();
                assert!(ideal.dim() > 0);
                assert_eq!(
                    ideal.intersect_coefficient_algebra().dim(),
                    0,
                    "ideal window met the coefficient algebra for n={n}, p={p} over {:?}",
                    sys.sigma()
                );
                let basis = ideal.subspace().basis();
                for b in &basis {
                    assert!(paired_form_check(b, n));
                    let parts = paired_form_witness(b, n).unwrap();
                    let mut rebuilt = CrossedElement::zero(size);
                    for (degree, coeff) in parts {
                        rebuilt = &rebuilt
                            + &(&CrossedElement::monomial(degree, coeff.clone())
                                + &CrossedElement::monomial(degree + n, coeff));
                    }
                    assert_eq!(&rebuilt, b, "paired decomposition failed to recombine");
                }
                for _ in 0..3 {
                    let mut combo = CrossedElement::zero(size);
                    for b in &basis {
                        combo = &combo + &b.scale(&rand_scalar(&mut rng));
                    }
                    assert!(paired_form_check(&combo, n));
                }
                ideals += 1;
            }
        }
    }
    finish(
        4,
        "paired witness ideal",
        format!("{ideals} point-mass ideals on window [-6,6]"),
        started,
        30,
    );
}

#[test]
fn criterion_05_avoiding_sandwich() {
    let started = Instant::now();
    let sys = DynSystem::new(vec![1, 0, 2, 3]).unwrap();
    let window = DegreeWindow::new(-4, 4).unwrap();
    let b = build_avoiding_b(&sys, 1, &PointSet::from([2]), window).unwrap();
    let a = GradedSubspace::new(DegreeRule::CoefficientAlgebra, window);
    let c = commutant_window(window);
    let mut strict_over_a = false;
    let mut strict_under_c = false;
    for d in window.iter() {
        let sa = a.slice(&sys, d).unwrap();
        let sb = b.algebra.slice(&sys, d).unwrap();
        let sc = c.slice(&sys, d).unwrap();
        for v in sa.basis() {
            assert!(sb.contains(&v), "A escapes B at degree {d}");
        }
        for v in sb.basis() {
            assert!(sc.contains(&v), "B escapes the commutant at degree {d}");
        }
        strict_over_a |= sb.dim() > sa.dim();
        strict_under_c |= sc.dim() > sb.dim();
    }
    assert!(strict_over_a, "B collapsed onto the coefficient algebra");
    assert!(strict_under_c, "B filled the whole commutant");
    let ideal = b.witness_ideal(&sys, window, window).unwrap();
    assert!(ideal.dim() > 0);
    ideal.verify_certificates(&sys).unwrap();
    let meet = ideal
        .subspace()
        .intersect_with_graded(&sys, &b.algebra)
        .unwrap();
    assert_eq!(meet.dim(), 0, "witness ideal window met B nontrivially");
    assert_eq!(ideal.intersect_coefficient_algebra().dim(), 0);
    finish(
        5,
        "avoiding sandwich",
        format!(
            "swap-two-fix-two, window [-4,4], ideal dim {} meets B in 0",
            ideal.dim()
        ),
        started,
        5,
    );
}

#[test]
fn criterion_06_trichotomy_witnesses() {
    let started = Instant::now();
    let mut rng = rng(0xC6);
    let root_pool: Vec<Scalar> = vec![
        Scalar::from_int(1),
        Scalar::from_int(-1),
        Scalar::from_int(2),
        Scalar::from_int(3),
        Scalar::from_ratio(1, 2),
        Scalar::from_ratio(-3, 2),
        Scalar::from_parts(0, 1, 1, 1),
        Scalar::from_parts(1, 1, 1, 1),
        Scalar::from_parts(0, 1, -2, 1),
    ];
    let total = 500usize;
    for _ in 0..total {
        let f = loop {
            let terms = rng.gen_range(1..=4);
            let candidate = LaurentPoly::from_terms(
                (0..terms).map(|_| (rng.gen_range(-3i64..=3), rand_scalar(&mut rng))),
            );
            if !candidate.is_constant() {
                break candidate;
            }
        };
        let count = rng.gen_range(1..=3);
        let roots: Vec<Scalar> = (0..count)
            .map(|_| root_pool[rng.gen_range(0..root_pool.len())].clone())
            .collect();
        let ideal = RootIdeal::new(roots).unwrap();
        let witness = trichotomy_witness(&f, &ideal).unwrap();
        assert!(!witness.witness.is_zero());
        assert!(
            ideal.contains(&witness.witness),
            "witness for {f} not divisible by the root modulus"
        );
        assert!(ideal.vanishes_at_roots(&witness.witness).unwrap());
        witness.replay(&ideal).unwrap();
    }
    finish(
        6,
        "trichotomy witnesses",
        format!("{total} instances built and replayed"),
        started,
        10,
    );
}

fn rand_abstract<R: Rng>(rng: &mut R, dim: usize) -> AbstractElement {
    let terms = rng.gen_range(1..=3);
    AbstractElement::from_terms(
        dim,
        (0..terms)
            .map(|_| {
                (
                    rng.gen_range(-3i64..=3),
                    (0..dim).map(|_| rand_scalar(rng)).collect(),
                )
            })
            .collect(),
    )
    .unwrap()
}

#[test]
fn criterion_07_gelfand_transport() {
    let started = Instant::now();
    let mut rng = rng(0xC7);
    let three_cycle = DynSystem::new(vec![1, 2, 0]).unwrap();
    let fixtures = [
        ("diagonal over a 3-cycle", diagonal_algebra(&three_cycle)),
        ("order-2 group algebra", z2_group_algebra()),
    ];
    let per_fixture = 500usize;
    for (name, alg) in &fixtures {
        let gd = gelfand_transform(alg).unwrap();
        let sys = &gd.induced_system;
        for _ in 0..per_fixture {
            let a = rand_abstract(&mut rng, alg.dim());
            let b = rand_abstract(&mut rng, alg.dim());
            let product = abstract_conv(alg, &a, &b).unwrap();
            let transported = transport_element(&gd, &product).unwrap();
            let factorwise = transport_element(&gd, &a)
                .unwrap()
                .conv(sys, &transport_element(&gd, &b).unwrap())
                .unwrap();
            assert_eq!(transported, factorwise, "transport broke a product ({name})");
            assert_eq!(
                transport_inverse(&gd, &transported).unwrap(),
                product,
                "transport round trip failed ({name})"
            );
        }
        let report = triquiv_report(&gd).unwrap();
        assert!(!report.per_infinity_dense, "{name}: no aperiodic points exist");
        assert!(!report.maximal_abelian.holds);
        assert!(report.maximal_abelian.witness.is_some());
        assert!(!report.intersection_property);
        assert!(report.witness_window_dim > 0 && report.witness_meet_dim == 0);
        assert!(report.verdicts_agree, "{name}: the three verdicts split");
    }
    finish(
        7,
        "gelfand transport",
        format!("{} fixtures x {per_fixture} product pairs + reports", fixtures.len()),
        started,
        10,
    );
}

#[test]
fn criterion_08_commutator_ideal_window() {
    let started = Instant::now();
    let window = DegreeWindow::new(-4, 4).unwrap();
    let systems = all_systems(5);
    for sys in &systems {
        let generated = commutator_ideal_window(sys, window).unwrap();
        let kernel = vanishing_on_fixed_points(sys, window).unwrap();
        for d in window.iter() {
            assert_eq!(
                generated.slice(d),
                kernel.slice(sys, d).unwrap(),
                "commutator ideal window differs from the fixed-point kernel \
                 at degree {d} over {:?}",
                sys.sigma()
            );
        }
    }
    finish(
        8,
        "commutator ideal window",
        format!("{} systems, window [-4,4], slice-by-slice", systems.len()),
        started,
        30,
    );
}

#[test]
fn criterion_09_characters() {
    let started = Instant::now();
    let mut rng = rng(0xC9);
    let systems = [
        DynSystem::new(vec![1, 0, 2]).unwrap(),
        DynSystem::new(vec![1, 0, 2, 3]).unwrap(),
    ];
    let units = unit_samples();
    let window = DegreeWindow::new(-3, 3).unwrap();
    let mut pairs = 0u64;
    let mut reports = 0u64;
    for sys in &systems {
        let family = enumerate_characters(sys, &units);
        assert!(!family.characters.is_empty());
        for ch in &family.characters {
            for _ in 0..50 {
                let f = rand_element(&mut rng, sys.size(), -3, 3, 3);
                let g = rand_element(&mut rng, sys.size(), -3, 3, 3);
                let product = f.conv(sys, &g).unwrap();
                assert_eq!(
                    ch.eval(&product).unwrap(),
                    &ch.eval(&f).unwrap() * &ch.eval(&g).unwrap(),
                    "character not multiplicative at point {}",
                    ch.point()
                );
                assert!(ch
                    .eval(&f.commutator(sys, &g).unwrap())
                    .unwrap()
                    .is_zero());
                pairs += 1;
            }
            for n in -6..=6i64 {
                let dn = CrossedElement::delta_pow(sys.size(), n);
                assert_eq!(ch.eval(&dn).unwrap(), ch.twist().pow(n));
            }
            let report = maximal_modular_report(sys, ch, window).unwrap();
            assert!(report.codim_is_one);
            assert!(report.contains_commutator_window);
            assert!(report.commutator_basis_evals_vanish);
            assert!(report.closed_under_window_products);
            reports += 1;
        }
    }
    assert!(pairs >= 1000, "only {pairs} random pairs were checked");
    finish(
        9,
        "characters and modular kernels",
        format!("{pairs} pairs, twist powers to 6, {reports} kernel reports"),
        started,
        10,
    );
}

fn rand_real_element<R: Rng>(rng: &mut R, size: usize) -> CrossedElement {
    let mut out = CrossedElement::zero(size);
    for _ in 0..rng.gen_range(1..=3) {
        let c = Scalar::from_ratio(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3));
        let mono = point_monomial(size, rng.gen_range(-3i64..=3), rng.gen_range(0..size));
        out = &out + &mono.scale(&c);
    }
    out
}

#[test]
fn criterion_10_l1_submultiplicativity() {
    let started = Instant::now();
    let mut rng = rng(0xCA);
    let systems = all_systems(4);
    let float_pairs = 600usize;
    for i in 0..float_pairs {
        let sys = &systems[i % systems.len()];
        let f = rand_element(&mut rng, sys.size(), -3, 3, 3);
        let g = rand_element(&mut rng, sys.size(), -3, 3, 3);
        let product = f.conv(sys, &g).unwrap();
        assert!(
            l1_norm(&product) <= l1_norm(&f) * l1_norm(&g) + 1e-9,
            "float norm bound failed for {f} and {g} over {:?}",
            sys.sigma()
        );
    }
    let exact_pairs = 300usize;
    for i in 0..exact_pairs {
        let sys = &systems[i % systems.len()];
        let f = rand_real_element(&mut rng, sys.size());
        let g = rand_real_element(&mut rng, sys.size());
        let product = f.conv(sys, &g).unwrap();
        let nf = l1_norm_exact(&f).expect("real rational coefficients have exact norms");
        let ng = l1_norm_exact(&g).expect("real rational coefficients have exact norms");
        let np = l1_norm_exact(&product).expect("products of real elements stay real");
        assert!(np <= &nf * &ng, "exact norm bound failed for {f} and {g}");
    }
    // Single monomials with unit-circle rational coefficients multiply
    // their norms exactly.
    let sys = DynSystem::new(vec![1, 0, 2]).unwrap();
    let c1 = &Scalar::from_parts(3, 5, 4, 5) * &Scalar::from_int(2);
    let c2 = &Scalar::from_parts(5, 13, 12, 13) * &Scalar::from_ratio(1, 3);
    let f = point_monomial(3, 1, 0).scale(&c1);
    let g = point_monomial(3, 2, 1).scale(&c2);
    let product = f.conv(&sys, &g).unwrap();
    assert!(!product.is_zero());
    assert_eq!(
        l1_norm_exact(&product).unwrap(),
        &l1_norm_exact(&f).unwrap() * &l1_norm_exact(&g).unwrap()
    );
    finish(
        10,
        "l1 submultiplicativity",
        format!("{float_pairs} float pairs at 1e-9, {exact_pairs} exact pairs + unit-circle case"),
        started,
        5,
    );
}
