//! End-to-end acceptance gate.
//!
//! One test per numbered criterion, each printing a single pass or fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every numeric expectation here is frozen: counting totals, component
//! sizes, orbit shapes, the printed rank-five inverse, the fourteen
//! exceptional pairs, and the spectral tolerances.

use std::collections::BTreeSet;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use carter_linkage::diagram::{d_type_catalog, full_catalog, homogeneous_class};
use carter_linkage::dual::{dual_reflection_matrix, duality_check, reflection_matrix};
use carter_linkage::gamma::find_gamma_set;
use carter_linkage::linkage::enumerate_partial;
use carter_linkage::spectral::MULTISET_TOLERANCE;
use carter_linkage::transition::class_adjacency;
use carter_linkage::{
    coxeter_relation_check, criterion_check, criterion_set, dual_reflect, e8_d7_pairs,
    find_transition, orbit_partition, ovsienko_reduce, p_classes, pairing_check, rat, ratio,
    spectrum, verify_transition, AdeType, CarterDiagram, DiagramName, GammaSet, LabelVector,
    QuadraticForm, RatMatrix, Root, RootSystem, UnitForm,
};

/// Margin for the open eigenvalue interval (0, 4).
const SPECTRUM_MARGIN: f64 = 1e-6;

/// Random cases per dual-Weyl identity.
const PROPERTY_CASES: u32 = 128;

fn report(tag: &str, failures: Vec<String>) {
    let verdict = if failures.is_empty() { "pass" } else { "fail" };
    println!("acceptance {tag}: {verdict}");
    assert!(failures.is_empty(), "{tag} failures: {failures:#?}");
}

fn diagram(name: &str) -> CarterDiagram {
    name.parse::<DiagramName>().unwrap().diagram().unwrap()
}

fn realize(d: &CarterDiagram, ambient: AdeType) -> GammaSet {
    let rs = RootSystem::new(ambient).unwrap();
    find_gamma_set(d, &rs).unwrap_or_else(|| panic!("{} should embed in {ambient}", d.name()))
}

#[test]
fn a01_counting_table_totals() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let expected = [(4, 24), (5, 42), (6, 76), (7, 142), (8, 16), (9, 18)];
    for (l, total) in expected {
        for name in homogeneous_class(AdeType::D(l)).unwrap() {
            let got = criterion_set(&name.diagram().unwrap()).unwrap().len();
            if got != total {
                failures.push(format!("{name}: {got} labels, expected {total}"));
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs() >= 30 {
        failures.push(format!("totals took {elapsed:?}, budget is 30 s"));
    }
    report("a01 counting table totals", failures);
}

#[test]
fn a02_component_sizes() {
    let mut failures = Vec::new();
    // The labels realized through the rank l+1 D extension number 2l for
    // every diagram of the rank l class.
    for l in 4..=9 {
        for name in homogeneous_class(AdeType::D(l)).unwrap() {
            let d = name.diagram().unwrap();
            match enumerate_partial(&d, AdeType::D(l + 1)) {
                Ok(Some(labels)) if labels.len() == 2 * l => {}
                Ok(Some(labels)) => failures.push(format!(
                    "{name}: D-component has {} labels, expected {}",
                    labels.len(),
                    2 * l
                )),
                other => failures.push(format!("{name}: D extension failed: {other:?}")),
            }
        }
    }
    // The E component is the p = l/4 value class; its size is 2^l.
    for l in 5..=7 {
        for name in homogeneous_class(AdeType::D(l)).unwrap() {
            let d = name.diagram().unwrap();
            let classes = p_classes(&d).unwrap();
            match classes.get(&ratio(l as i64, 4)) {
                Some(class) if class.len() == 1 << l => {}
                Some(class) => failures.push(format!(
                    "{name}: E-component has {} labels, expected {}",
                    class.len(),
                    1 << l
                )),
                None => failures.push(format!("{name}: no p = {l}/4 class")),
            }
        }
    }
    // At rank 7 the D-derived labels sit inside the E8-derived set.
    let d7 = diagram("D7");
    let from_d8 = enumerate_partial(&d7, AdeType::D(8)).unwrap().unwrap();
    let from_e8 = enumerate_partial(&d7, AdeType::E(8)).unwrap().unwrap();
    if from_d8.len() != 14 {
        failures.push(format!("D7: {} D8-derived labels, expected 14", from_d8.len()));
    }
    if !from_d8.is_subset(&from_e8) {
        failures.push("D7: D8-derived labels are not a subset of the E8-derived set".into());
    }
    report("a02 component sizes", failures);
}

#[test]
fn a03_orbit_structure() {
    let mut failures = Vec::new();
    // Expected orbit shapes of the p classes: (rank, p, orbit count,
    // orbit size).  The rank four system is three orbits of eight; the
    // E components split into two halves.
    let shapes: [(usize, (i64, i64), usize, usize); 4] = [
        (4, (1, 1), 3, 8),
        (5, (5, 4), 2, 16),
        (6, (3, 2), 2, 32),
        (7, (7, 4), 2, 64),
    ];
    for (l, (num, den), orbit_count, orbit_size) in shapes {
        for name in homogeneous_class(AdeType::D(l)).unwrap() {
            let d = name.diagram().unwrap();
            let classes = p_classes(&d).unwrap();
            let Some(class) = classes.get(&ratio(num, den)) else {
                failures.push(format!("{name}: no p = {num}/{den} class"));
                continue;
            };
            let orbits = orbit_partition(&d, class).unwrap();
            if orbits.len() != orbit_count || orbits.iter().any(|o| o.size() != orbit_size) {
                let sizes: Vec<usize> = orbits.iter().map(|o| o.size()).collect();
                failures.push(format!(
                    "{name} p = {num}/{den}: orbit sizes {sizes:?}, expected {orbit_count} x {orbit_size}"
                ));
            }
            for orbit in &orbits {
                if *orbit.p() != ratio(num, den) {
                    failures.push(format!(
                        "{name}: orbit reports p = {}, expected {num}/{den}",
                        orbit.p()
                    ));
                }
            }
        }
    }
    // Every orbit of every D-type system carries p exactly 1 on the
    // p = 1 class, as an exact rational.
    for l in 4..=9 {
        for name in homogeneous_class(AdeType::D(l)).unwrap() {
            let d = name.diagram().unwrap();
            let classes = p_classes(&d).unwrap();
            let Some(class) = classes.get(&rat(1)) else {
                failures.push(format!("{name}: no p = 1 class"));
                continue;
            };
            for orbit in orbit_partition(&d, class).unwrap() {
                if *orbit.p() != rat(1) {
                    failures.push(format!("{name}: D orbit reports p = {}", orbit.p()));
                }
            }
        }
    }
    report("a03 orbit structure", failures);
}

#[test]
fn a04_criterion_equivalence() {
    let mut failures = Vec::new();
    for name in d_type_catalog() {
        let d = name.diagram().unwrap();
        let m = d.order() + 1;
        let mut embedded = 0usize;
        for typ in [AdeType::A(m), AdeType::D(m), AdeType::E(m)] {
            if typ.validate().is_err() {
                continue;
            }
            match criterion_check(&d, typ) {
                Ok(Some(check)) => {
                    embedded += 1;
                    if !check.passed() {
                        failures.push(check.to_string());
                    }
                }
                Ok(None) => {}
                Err(e) => failures.push(format!("{name} in {typ}: {e}")),
            }
        }
        if embedded == 0 {
            failures.push(format!("{name}: no ambient attempt embedded"));
        }
    }
    report("a04 criterion equivalence", failures);
}

#[test]
fn a05_rank_five_inverse_matrix() {
    let mut failures = Vec::new();
    let d5 = diagram("D5");
    let b = d5.partial_cartan();
    let expected_b: [[i64; 5]; 5] = [
        [2, 0, 0, -1, 0],
        [0, 2, 0, -1, -1],
        [0, 0, 2, -1, 0],
        [-1, -1, -1, 2, 0],
        [0, -1, 0, 0, 2],
    ];
    // Quadruple of the inverse; every entry of the inverse is a
    // quarter-integer.
    let expected_inv4: [[i64; 5]; 5] = [
        [5, 4, 3, 6, 2],
        [4, 8, 4, 8, 4],
        [3, 4, 5, 6, 2],
        [6, 8, 6, 12, 4],
        [2, 4, 2, 4, 4],
    ];
    let inverse = b.inverse().unwrap();
    for i in 0..5 {
        for j in 0..5 {
            if b[(i, j)] != rat(expected_b[i][j]) {
                failures.push(format!("B[{i}][{j}] = {}, expected {}", b[(i, j)], expected_b[i][j]));
            }
            if inverse[(i, j)] != ratio(expected_inv4[i][j], 4) {
                failures.push(format!(
                    "B^-1[{i}][{j}] = {}, expected {}/4",
                    inverse[(i, j)],
                    expected_inv4[i][j]
                ));
            }
        }
    }
    report("a05 rank five inverse matrix", failures);
}

#[test]
fn a06_e8_d7_pairs() {
    let mut failures = Vec::new();
    let pairs = e8_d7_pairs().unwrap();
    if pairs.len() != 14 {
        failures.push(format!("{} pairs, expected 14", pairs.len()));
    }
    let positive: BTreeSet<(Root, Root)> = pairs
        .iter()
        .filter(|(a, b)| a.is_positive() && b.is_positive())
        .cloned()
        .collect();
    // The seven positive pairs in the simple-root coordinates of E8.
    let rows: [([i64; 8], [i64; 8]); 7] = [
        ([2, 2, 3, 4, 3, 2, 1, 0], [2, 3, 4, 6, 5, 4, 3, 2]),
        ([2, 2, 3, 4, 3, 2, 1, 1], [2, 3, 4, 6, 5, 4, 3, 1]),
        ([2, 2, 3, 4, 3, 2, 2, 1], [2, 3, 4, 6, 5, 4, 2, 1]),
        ([2, 2, 3, 4, 3, 3, 2, 1], [2, 3, 4, 6, 5, 3, 2, 1]),
        ([2, 2, 3, 4, 4, 3, 2, 1], [2, 3, 4, 6, 4, 3, 2, 1]),
        ([2, 2, 3, 5, 4, 3, 2, 1], [2, 3, 4, 5, 4, 3, 2, 1]),
        ([2, 3, 3, 5, 4, 3, 2, 1], [2, 2, 4, 5, 4, 3, 2, 1]),
    ];
    let expected: BTreeSet<(Root, Root)> = rows
        .iter()
        .map(|(e, l)| {
            let (eta, lambda) = (Root(e.to_vec()), Root(l.to_vec()));
            if eta <= lambda {
                (eta, lambda)
            } else {
                (lambda, eta)
            }
        })
        .collect();
    if positive != expected {
        failures.push(format!(
            "positive pairs differ: got {positive:?}, expected {expected:?}"
        ));
    }
    for (eta, lambda) in &positive {
        let sum: Vec<i64> = eta
            .coords()
            .iter()
            .zip(lambda.coords())
            .map(|(a, b)| a + b)
            .collect();
        if sum != vec![4, 5, 7, 10, 8, 6, 4, 2] {
            failures.push(format!("{eta} + {lambda} = {sum:?}"));
        }
    }
    report("a06 exceptional pair table", failures);
}

#[test]
fn a07_conjugate_pairing() {
    let mut failures = Vec::new();
    // Each new root of the rank l+1 system pairs with a root carrying
    // the negated label; the sweep covers the full difference set.
    for (l, difference) in [(4, 16), (5, 20), (6, 24), (7, 28)] {
        match pairing_check(l) {
            Ok(check) => {
                if !check.passed() {
                    failures.push(check.to_string());
                }
                if check.checked != difference {
                    failures.push(format!(
                        "rank {l}: checked {} roots, expected {difference}",
                        check.checked
                    ));
                }
            }
            Err(e) => failures.push(format!("rank {l}: {e}")),
        }
    }
    report("a07 conjugate pairing", failures);
}

/// Sample pool for the random dual-Weyl identities: catalog diagrams
/// with their criterion sets, plus a few realized Γ-sets with roots
/// outside their span.
struct PropertyPool {
    diagrams: Vec<(CarterDiagram, Vec<LabelVector>)>,
    realized: Vec<(GammaSet, Vec<Root>)>,
}

fn property_pool() -> PropertyPool {
    let diagrams = d_type_catalog()
        .into_iter()
        .map(|name| {
            let d = name.diagram().unwrap();
            let labels: Vec<LabelVector> = criterion_set(&d).unwrap().into_iter().collect();
            (d, labels)
        })
        .collect();
    let realized = [
        ("D4", AdeType::D(5)),
        ("D4(a1)", AdeType::D(5)),
        ("D5", AdeType::E(6)),
        ("D5(a1)", AdeType::D(6)),
        ("D6(a2)", AdeType::E(7)),
        ("D7", AdeType::E(8)),
    ]
    .into_iter()
    .map(|(name, ambient)| {
        let set = realize(&diagram(name), ambient);
        let outside: Vec<Root> = set.outside_roots().cloned().collect();
        (set, outside)
    })
    .collect();
    PropertyPool { diagrams, realized }
}

#[test]
fn a08_dual_weyl_identities() {
    let mut failures = Vec::new();
    let pool = property_pool();
    let config = Config {
        cases: PROPERTY_CASES,
        ..Config::default()
    };

    // Applying the label reflection twice is the identity.
    let mut runner = TestRunner::new(config.clone());
    let picks = (any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<prop::sample::Index>());
    if let Err(e) = runner.run(&picks, |(di, ui, vi)| {
        let (d, labels) = &pool.diagrams[di.index(pool.diagrams.len())];
        let u = &labels[ui.index(labels.len())];
        let i = vi.index(d.order());
        let once = dual_reflect(d, i, u).unwrap();
        let twice = dual_reflect(d, i, &once).unwrap();
        prop_assert_eq!(&twice, u);
        Ok(())
    }) {
        failures.push(format!("involution: {e}"));
    }

    // The partial Cartan matrix intertwines reflections with their
    // duals: B s_i equals s*_i B.
    let mut runner = TestRunner::new(config.clone());
    let picks = (any::<prop::sample::Index>(), any::<prop::sample::Index>());
    if let Err(e) = runner.run(&picks, |(di, vi)| {
        let (d, _) = &pool.diagrams[di.index(pool.diagrams.len())];
        let i = vi.index(d.order());
        let b = d.partial_cartan();
        let left = b.mul(&reflection_matrix(d, i)).unwrap();
        let right = dual_reflection_matrix(d, i).mul(&b).unwrap();
        prop_assert_eq!(left, right);
        Ok(())
    }) {
        failures.push(format!("intertwining: {e}"));
    }

    // Reflecting a root in the ambient and reflecting its label agree.
    let mut runner = TestRunner::new(config.clone());
    let picks = (
        any::<prop::sample::Index>(),
        proptest::collection::vec(any::<prop::sample::Index>(), 0..6),
        any::<prop::sample::Index>(),
    );
    if let Err(e) = runner.run(&picks, |(si, word, ri)| {
        let (set, outside) = &pool.realized[si.index(pool.realized.len())];
        let gamma = &outside[ri.index(outside.len())];
        let word: Vec<usize> = word.iter().map(|w| w.index(set.order())).collect();
        prop_assert!(duality_check(set, &word, gamma).unwrap());
        Ok(())
    }) {
        failures.push(format!("equivariance: {e}"));
    }

    // The inverse form is invariant under label reflections.
    let mut runner = TestRunner::new(config.clone());
    let picks = (any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<prop::sample::Index>());
    if let Err(e) = runner.run(&picks, |(di, ui, vi)| {
        let (d, labels) = &pool.diagrams[di.index(pool.diagrams.len())];
        let u = &labels[ui.index(labels.len())];
        let i = vi.index(d.order());
        let form = QuadraticForm::new(d.partial_cartan().inverse().unwrap()).unwrap();
        let image = dual_reflect(d, i, u).unwrap();
        prop_assert_eq!(form.eval_int(u.entries()), form.eval_int(image.entries()));
        Ok(())
    }) {
        failures.push(format!("invariance: {e}"));
    }

    // The dual reflection matrix is the transposed reflection matrix.
    let mut runner = TestRunner::new(config);
    let picks = (any::<prop::sample::Index>(), any::<prop::sample::Index>());
    if let Err(e) = runner.run(&picks, |(di, vi)| {
        let (d, _) = &pool.diagrams[di.index(pool.diagrams.len())];
        let i = vi.index(d.order());
        prop_assert_eq!(
            reflection_matrix(d, i).transpose(),
            dual_reflection_matrix(d, i)
        );
        Ok(())
    }) {
        failures.push(format!("transposition: {e}"));
    }

    report("a08 dual Weyl identities", failures);
}

#[test]
fn a09_transitions() {
    let mut failures = Vec::new();
    for l in 4..=7 {
        for (a, b) in class_adjacency(AdeType::D(l)) {
            for (from, to) in [(a, b), (b, a)] {
                let set = realize(&from.diagram().unwrap(), AdeType::D(l));
                let t = match find_transition(&set, &to.diagram().unwrap()) {
                    Ok(t) => t,
                    Err(e) => {
                        failures.push(format!("{from} -> {to}: {e}"));
                        continue;
                    }
                };
                let m = t.matrix();
                let n = set.order();
                if m.mul(m).unwrap() != RatMatrix::identity(n) {
                    failures.push(format!("{from} -> {to}: matrix is not an involution"));
                }
                if m.det().unwrap() != rat(-1) {
                    failures.push(format!("{from} -> {to}: determinant is not -1"));
                }
                match verify_transition(&t) {
                    Ok(true) => {}
                    Ok(false) => failures.push(format!("{from} -> {to}: verification failed")),
                    Err(e) => failures.push(format!("{from} -> {to}: {e}")),
                }
            }
        }
    }
    report("a09 transitions", failures);
}

#[test]
fn a10_flation_reduction() {
    let mut failures = Vec::new();
    for l in 4..=7 {
        for name in homogeneous_class(AdeType::D(l)).unwrap() {
            if name.cycle == 0 {
                continue;
            }
            let form = UnitForm::of_diagram(&name.diagram().unwrap());
            let reduction = match ovsienko_reduce(&form) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{name}: {e}"));
                    continue;
                }
            };
            if reduction.components() != [AdeType::D(l)] {
                failures.push(format!(
                    "{name}: reduced to {:?}, expected [D{l}]",
                    reduction.components()
                ));
            }
            if !reduction.verify(&form) {
                failures.push(format!("{name}: certificate does not verify"));
            }
            let before = form.matrix().det().unwrap();
            let after = reduction.reduced().matrix().det().unwrap();
            if before != after {
                failures.push(format!("{name}: determinant changed from {before} to {after}"));
            }
        }
    }
    report("a10 flation reduction", failures);
}

#[test]
fn a11_spectra() {
    let mut failures = Vec::new();
    for name in full_catalog() {
        let d = name.diagram().unwrap();
        let s = spectrum(&d.partial_cartan()).unwrap();
        if !(s.min > SPECTRUM_MARGIN && s.max < 4.0 - SPECTRUM_MARGIN) {
            failures.push(format!("{name}: eigenvalues [{}, {}]", s.min, s.max));
        }
    }
    let dynkin = [
        AdeType::A(1),
        AdeType::A(2),
        AdeType::A(3),
        AdeType::A(4),
        AdeType::D(4),
        AdeType::D(5),
        AdeType::D(6),
        AdeType::D(7),
        AdeType::E(6),
        AdeType::E(7),
        AdeType::E(8),
    ];
    for typ in dynkin {
        let d = DiagramName::dynkin(typ).diagram().unwrap();
        let check = coxeter_relation_check(&d).unwrap();
        if !check.matched || check.max_deviation > MULTISET_TOLERANCE {
            failures.push(format!(
                "{typ}: multiset deviation {}",
                check.max_deviation
            ));
        }
    }
    report("a11 spectra", failures);
}
