//! The dual Weyl action on label vectors.
//!
//! Reflections in the Γ-set roots act on labels through the transposed
//! matrices: where `s_i` rewrites coordinates in the root basis, the dual
//! `s*_i` rewrites inner products.  This action is an integer rewrite
//! that never needs the ambient root system, which is what makes orbit
//! computations on linkage systems cheap.

use crate::diagram::CarterDiagram;
use crate::gamma::{GammaSet, LabelVector};
use crate::ratmat::{rat, QuadraticForm, RatMatrix, Rational};
use crate::roots::Root;
use crate::Error;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Matrix of the reflection `s_i` on the span of the Γ-set, written in
/// the Γ-set basis: the identity minus the outer product of `e_i` with
/// row `i` of the partial Cartan matrix.
pub fn reflection_matrix(d: &CarterDiagram, i: usize) -> RatMatrix {
    let b = d.partial_cartan();
    let n = d.order();
    let mut m = RatMatrix::identity(n);
    for j in 0..n {
        m[(i, j)] = &m[(i, j)] - &b[(i, j)];
    }
    m
}

/// Matrix of the dual reflection `s*_i` on label space: the identity
/// minus the outer product of column `i` of the partial Cartan matrix
/// with `e_i`.  This is the transpose of [`reflection_matrix`].
pub fn dual_reflection_matrix(d: &CarterDiagram, i: usize) -> RatMatrix {
    let b = d.partial_cartan();
    let n = d.order();
    let mut m = RatMatrix::identity(n);
    for k in 0..n {
        m[(k, i)] = &m[(k, i)] - &b[(k, i)];
    }
    m
}

/// Apply the dual reflection at vertex `i` to a label: entry `i` is
/// negated, solid neighbors gain `u_i`, dotted neighbors lose `u_i`, and
/// everything else is untouched.  A result outside {-1, 0, 1} means the
/// input was not a linkage label and is reported as an error.
pub fn dual_reflect(d: &CarterDiagram, i: usize, u: &LabelVector) -> Result<LabelVector, Error> {
    assert_eq!(u.len(), d.order(), "label length mismatch");
    assert!(i < d.order(), "vertex out of range");
    let mut out: Vec<i64> = u.entries().to_vec();
    let ui = out[i];
    out[i] = -ui;
    for (k, sign) in d.neighbors(i) {
        // Solid edges carry -1, so subtracting sign·u_i adds u_i there.
        out[k] -= sign * ui;
    }
    if let Some(k) = out.iter().position(|e| e.abs() > 1) {
        return Err(Error::NonTernary(k));
    }
    Ok(LabelVector::new(out).expect("range just checked"))
}

/// One orbit of the dual Weyl action: its labels (sorted) and the shared
/// form value `p = 𝓑∨(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    labels: Vec<LabelVector>,
    p: Rational,
}

impl Orbit {
    /// Sorted member labels.
    pub fn labels(&self) -> &[LabelVector] {
        &self.labels
    }

    /// Number of members.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// The orbit invariant `p`.
    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// Whether this orbit has the loctet size.
    pub fn is_loctet(&self) -> bool {
        self.labels.len() == 8
    }

    /// JSON rendering with `p` as an exact fraction string.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p.to_string(),
            "size": self.labels.len(),
            "labels": self.labels.iter().map(|l| l.entries().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Partition a label set into dual Weyl orbits.
///
/// Every reflection image of a member must lie in the input set; a set
/// that is not closed (a truncated or corrupted system) is reported as a
/// closure violation naming the offending vertex.  Orbits come back
/// sorted by their lexicographically smallest member.
pub fn orbit_partition(
    d: &CarterDiagram,
    labels: &BTreeSet<LabelVector>,
) -> Result<Vec<Orbit>, Error> {
    let inverse_form = QuadraticForm::new(
        d.partial_cartan()
            .inverse()
            .map_err(|_| Error::InvalidDiagram("partial Cartan matrix is singular".into()))?,
    )
    .expect("inverse of symmetric is symmetric");
    let mut seen: BTreeSet<&LabelVector> = BTreeSet::new();
    let mut orbits = Vec::new();
    for start in labels {
        if seen.contains(start) {
            continue;
        }
        let mut members = BTreeSet::new();
        members.insert(start.clone());
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(u) = queue.pop_front() {
            for i in 0..d.order() {
                let image = dual_reflect(d, i, &u)?;
                if !labels.contains(&image) {
                    return Err(Error::ClosureViolation { index: i });
                }
                if members.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        for m in &members {
            seen.insert(labels.get(m).expect("member of the input set"));
        }
        let p = inverse_form.eval_int(start.entries());
        orbits.push(Orbit {
            labels: members.into_iter().collect(),
            p,
        });
    }
    // BTreeSet iteration already visits starts in order, so orbits are
    // ordered by smallest member; assert instead of resorting.
    debug_assert!(orbits.windows(2).all(|w| w[0].labels[0] < w[1].labels[0]));
    Ok(orbits)
}

/// Group orbits by their `p` invariant.
pub fn orbits_by_p(orbits: &[Orbit]) -> BTreeMap<Rational, Vec<&Orbit>> {
    let mut map: BTreeMap<Rational, Vec<&Orbit>> = BTreeMap::new();
    for orbit in orbits {
        map.entry(orbit.p.clone()).or_default().push(orbit);
    }
    map
}

/// Check that reflecting in the ambient and reflecting labels commute
/// with taking label vectors: the word is applied to `gamma` as honest
/// root reflections and to its label through [`dual_reflect`], and the
/// two results are compared.
pub fn duality_check(g: &GammaSet, word: &[usize], gamma: &Root) -> Result<bool, Error> {
    if g.in_span(gamma) {
        return Err(Error::InSpan);
    }
    let mut root = gamma.clone();
    let mut label = g.label_vector(gamma)?;
    for &i in word {
        assert!(i < g.order(), "vertex out of range");
        let tau = &g.roots()[i];
        let t = g.ambient().inner(&root, tau);
        root = Root(
            root.coords()
                .iter()
                .zip(tau.coords())
                .map(|(r, c)| r - t * c)
                .collect(),
        );
        label = dual_reflect(g.diagram(), i, &label)?;
    }
    Ok(g.label_vector(&root)? == label)
}

/// Check `s*_i = ᵗs_i` by building both matrices and comparing, and
/// check that the four-case label rewrite matches the matrix action on
/// every basis vector.
pub fn transpose_identity_check(g: &GammaSet, i: usize) -> Result<bool, Error> {
    if i >= g.order() {
        return Err(Error::Dimension(format!(
            "vertex {} of a {}-vertex diagram",
            i,
            g.order()
        )));
    }
    let d = g.diagram();
    let s = reflection_matrix(d, i);
    let dual = dual_reflection_matrix(d, i);
    if s.transpose() != dual {
        return Ok(false);
    }
    for j in 0..g.order() {
        let mut e = vec![0i64; g.order()];
        e[j] = 1;
        let via_table = dual_reflect(d, i, &LabelVector::new(e.clone()).unwrap())?;
        let via_matrix = dual
            .mul_vec(&e.iter().map(|&x| rat(x)).collect::<Vec<_>>())
            .expect("square matrix");
        if via_table.to_rationals() != via_matrix {
            return Ok(false);
        }
    }
    Ok(true)
}

/// DOT rendering of one orbit: nodes are labels, edges are the dual
/// reflections connecting them, tagged with the vertex index.
pub fn orbit_dot(d: &CarterDiagram, orbit: &Orbit) -> String {
    let mut out = String::from("graph {\n");
    let index: BTreeMap<&LabelVector, usize> = orbit
        .labels()
        .iter()
        .enumerate()
        .map(|(k, l)| (l, k))
        .collect();
    for (k, label) in orbit.labels().iter().enumerate() {
        out.push_str(&format!("  n{k} [label=\"{label}\"];\n"));
    }
    for (k, label) in orbit.labels().iter().enumerate() {
        for i in 0..d.order() {
            if let Ok(image) = dual_reflect(d, i, label) {
                if let Some(&m) = index.get(&image) {
                    if k < m {
                        out.push_str(&format!("  n{k} -- n{m} [label=\"{i}\"];\n"));
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramName;
    use crate::gamma::find_gamma_set;
    use crate::linkage::{criterion_set, p_classes};
    use crate::ratmat::{rat, ratio, Rational};
    use crate::roots::{AdeType, RootSystem};

    fn diagram(name: &str) -> CarterDiagram {
        name.parse::<DiagramName>().unwrap().diagram().unwrap()
    }

    #[test]
    fn star_reflection_matches_the_case_table() {
        let d4 = diagram("D4");
        let u = LabelVector::new(vec![1, 0, 0, 0]).unwrap();
        // Vertex 0 is a tip, solid-adjacent to the center vertex 3.
        let image = dual_reflect(&d4, 0, &u).unwrap();
        assert_eq!(image.entries(), &[-1, 0, 0, 1]);
        // A zero entry at the reflecting vertex changes nothing.
        let fixed = LabelVector::new(vec![0, 1, 0, 0]).unwrap();
        assert_eq!(dual_reflect(&d4, 0, &fixed).unwrap(), fixed);
    }

    #[test]
    fn dotted_edges_subtract_instead_of_add() {
        let d = diagram("D4(a1)");
        // Vertex 1 (α2) has a dotted edge to vertex 3 (β2) and a solid
        // edge to vertex 2 (β1).
        let u = LabelVector::new(vec![0, 1, 0, 0]).unwrap();
        let image = dual_reflect(&d, 1, &u).unwrap();
        assert_eq!(image.entries(), &[0, -1, 1, -1]);
    }

    #[test]
    fn reflections_are_involutions_on_whole_systems() {
        for name in ["D4", "D4(a1)", "D5(a1)", "D6(a2)"] {
            let d = diagram(name);
            for label in criterion_set(&d).unwrap() {
                for i in 0..d.order() {
                    let twice =
                        dual_reflect(&d, i, &dual_reflect(&d, i, &label).unwrap()).unwrap();
                    assert_eq!(twice, label, "{name}, vertex {i}");
                }
            }
        }
    }

    #[test]
    fn nonternary_images_are_rejected() {
        let d4 = diagram("D4");
        // Center entry 1 with a tip entry 1: reflecting at the tip pushes
        // the center to 2.
        let u = LabelVector::new(vec![1, 0, 0, 1]).unwrap();
        assert!(matches!(dual_reflect(&d4, 0, &u), Err(Error::NonTernary(3))));
    }

    #[test]
    fn intertwining_with_the_partial_cartan_matrix() {
        for name in ["D4", "D4(a1)", "D5(a1)", "D7(a2)", "E6", "E8"] {
            let d = diagram(name);
            let b = d.partial_cartan();
            for i in 0..d.order() {
                let left = b.mul(&reflection_matrix(&d, i)).unwrap();
                let right = dual_reflection_matrix(&d, i).mul(&b).unwrap();
                assert_eq!(left, right, "{name}, vertex {i}");
            }
        }
    }

    #[test]
    fn star_system_splits_into_three_loctets() {
        let d4 = diagram("D4");
        let orbits = orbit_partition(&d4, &criterion_set(&d4).unwrap()).unwrap();
        assert_eq!(orbits.len(), 3);
        for orbit in &orbits {
            assert!(orbit.is_loctet());
            assert_eq!(*orbit.p(), rat(1));
        }
        // Same shape for the cycle member of the class.
        let d4a1 = diagram("D4(a1)");
        let orbits = orbit_partition(&d4a1, &criterion_set(&d4a1).unwrap()).unwrap();
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().all(|o| o.is_loctet() && *o.p() == rat(1)));
    }

    #[test]
    fn e_components_split_into_two_equal_orbits() {
        for (l, half) in [(5usize, 16usize), (6, 32), (7, 64)] {
            let d = diagram(&format!("D{l}"));
            let classes = p_classes(&d).unwrap();
            let p = ratio(l as i64, 4);
            let orbits = orbit_partition(&d, &classes[&p]).unwrap();
            assert_eq!(orbits.len(), 2, "D{l}");
            for orbit in &orbits {
                assert_eq!(orbit.size(), half, "D{l}");
                assert_eq!(orbit.p(), &p);
            }
        }
    }

    #[test]
    fn high_rank_systems_are_single_orbits() {
        for l in [8usize, 9] {
            let d = diagram(&format!("D{l}"));
            let set = criterion_set(&d).unwrap();
            let orbits = orbit_partition(&d, &set).unwrap();
            assert_eq!(orbits.len(), 1, "D{l}");
            assert_eq!(orbits[0].size(), 2 * l);
            assert_eq!(*orbits[0].p(), rat(1));
        }
    }

    #[test]
    fn truncated_sets_violate_closure() {
        let d4 = diagram("D4");
        let mut labels = criterion_set(&d4).unwrap();
        let dropped = labels.pop_last().unwrap();
        let err = orbit_partition(&d4, &labels);
        assert!(
            matches!(err, Err(Error::ClosureViolation { .. })),
            "dropping {dropped} must break closure"
        );
    }

    #[test]
    fn ambient_and_label_reflections_commute() {
        let rs = RootSystem::new(AdeType::E(6)).unwrap();
        let d5 = find_gamma_set(&diagram("D5"), &rs).unwrap();
        let outside: Vec<Root> = d5.outside_roots().cloned().collect();
        let words: [&[usize]; 6] = [
            &[],
            &[0],
            &[4],
            &[0, 1, 2],
            &[3, 3, 1, 0],
            &[2, 4, 0, 3, 1, 2],
        ];
        for gamma in &outside {
            for word in words {
                assert!(duality_check(&d5, word, gamma).unwrap(), "{gamma} {word:?}");
            }
        }
        let member = d5.roots()[0].clone();
        assert!(matches!(
            duality_check(&d5, &[0], &member),
            Err(Error::InSpan)
        ));
    }

    #[test]
    fn dual_matrices_are_transposed_reflections() {
        for (name, ambient) in [
            ("D4", AdeType::D(5)),
            ("D4(a1)", AdeType::D(5)),
            ("D6(a2)", AdeType::D(7)),
            ("E7", AdeType::E(8)),
        ] {
            let d = diagram(name);
            let rank = d.order();
            let rs = RootSystem::new(ambient).unwrap();
            let gs = find_gamma_set(&d, &rs).expect("realizable in its chosen ambient");
            for i in 0..rank {
                assert!(transpose_identity_check(&gs, i).unwrap(), "{name} {i}");
            }
            assert!(transpose_identity_check(&gs, rank).is_err());
        }
    }

    #[test]
    fn orbit_json_and_dot_are_stable() {
        let d4 = diagram("D4");
        let orbits = orbit_partition(&d4, &criterion_set(&d4).unwrap()).unwrap();
        let value = orbits[0].to_json();
        assert_eq!(value["p"], "1");
        assert_eq!(value["size"], 8);
        assert_eq!(value["labels"].as_array().unwrap().len(), 8);

        let dot = orbit_dot(&d4, &orbits[0]);
        assert!(dot.starts_with("graph {"));
        // A loctet rendering mentions every node.
        for k in 0..8 {
            assert!(dot.contains(&format!("n{k} ")));
        }
    }

    /// The product of all vertex reflections is determined by the diagram
    /// up to conjugacy, so its order is a sharp fingerprint of the class.
    /// For `A_n` and `D_l` the orders follow the signed cycle structure:
    /// the Coxeter number for the cycle-free members, lcm(2k+2, 2(l-k-1))
    /// for `D_l(a_k)`.  The `E` orders are the classical ones; they pin
    /// the cycle-index naming of the frozen edge tables.
    #[test]
    fn products_of_vertex_reflections_have_the_classical_orders() {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        for name in crate::diagram::full_catalog() {
            let d = name.diagram().unwrap();
            let n = d.order();
            let mut w = RatMatrix::identity(n);
            for i in 0..n {
                w = w.mul(&reflection_matrix(&d, i)).unwrap();
            }
            let expect = match (name.typ, name.cycle) {
                (AdeType::A(r), _) => r + 1,
                (AdeType::D(l), 0) => 2 * (l - 1),
                (AdeType::D(l), k) => {
                    let (a, b) = (2 * k + 2, 2 * (l - k - 1));
                    a / gcd(a, b) * b
                }
                (AdeType::E(6), c) => [12, 9, 6][c],
                (AdeType::E(7), c) => [18, 14, 12, 30, 6][c],
                (AdeType::E(8), c) => [30, 24, 20, 18, 15, 12, 10, 12, 6][c],
                (AdeType::E(_), _) => unreachable!("catalog rank"),
            };
            let id = RatMatrix::identity(n);
            let mut power = w.clone();
            let mut order = 0;
            for k in 1..=60 {
                if power == id {
                    order = k;
                    break;
                }
                power = power.mul(&w).unwrap();
            }
            assert_eq!(order, expect, "{name}");
            // The two rank-8 classes of order 12 differ in trace.
            if name.to_string() == "E8(a5)" || name.to_string() == "E8(a7)" {
                let trace: Rational = (0..n).map(|i| w[(i, i)].clone()).sum();
                let expect_trace = if name.to_string() == "E8(a5)" { 0 } else { 2 };
                assert_eq!(trace, rat(expect_trace), "{name}");
            }
        }
    }
}
