//! Γ-sets: ordered root realizations of Carter diagrams.
//!
//! A Γ-set assigns one ambient root to each diagram vertex so that the
//! Gram matrix of the chosen roots equals the partial Cartan matrix of
//! the diagram.  Everything downstream (label vectors, projections,
//! linkage enumeration) is computed against such a realization.

use crate::diagram::CarterDiagram;
use crate::ratmat::{rat, QuadraticForm, RatMatrix, Rational};
use crate::roots::{Root, RootSystem};
use crate::Error;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

/// Inner products of one root against a Γ-set, entrywise in {-1, 0, 1}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LabelVector(Vec<i64>);

impl LabelVector {
    /// Wrap entries, rejecting anything outside {-1, 0, 1}.
    pub fn new(entries: Vec<i64>) -> Result<Self, Error> {
        if let Some(&bad) = entries.iter().find(|e| e.abs() > 1) {
            return Err(Error::LabelRange(bad));
        }
        Ok(LabelVector(entries))
    }

    /// The zero label of a given length.
    pub fn zero(len: usize) -> Self {
        LabelVector(vec![0; len])
    }

    /// Entry slice.
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty label.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Entrywise negation.
    pub fn negated(&self) -> Self {
        LabelVector(self.0.iter().map(|e| -e).collect())
    }

    /// Entries as rationals.
    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&e| rat(e)).collect()
    }
}

impl fmt::Display for LabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Projection of a label through the inverse partial Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionData {
    /// Coordinates of the projected vector in the Γ-set basis.
    pub gamma_l: Vec<Rational>,
    /// Squared length of the normal component, `2 - B(γ_L)`.
    pub mu_norm_sq: Rational,
    /// The label this was projected from.
    pub label: LabelVector,
}

/// An ordered, linearly independent set of roots realizing a diagram.
#[derive(Debug, Clone)]
pub struct GammaSet {
    diagram: CarterDiagram,
    ambient: RootSystem,
    roots: Vec<Root>,
    gram: RatMatrix,
    gram_inv: RatMatrix,
}

impl GammaSet {
    /// Validate and assemble: the Gram matrix of `roots` must equal the
    /// partial Cartan matrix of `diagram` entrywise, and the roots must be
    /// linearly independent in the ambient coordinates.
    pub fn new(
        diagram: CarterDiagram,
        ambient: RootSystem,
        roots: Vec<Root>,
    ) -> Result<Self, Error> {
        let n = diagram.order();
        if roots.len() != n {
            return Err(Error::Dimension(format!(
                "{} roots for a diagram of {} vertices",
                roots.len(),
                n
            )));
        }
        let gram = diagram.partial_cartan();
        for i in 0..n {
            if !ambient.is_root(&roots[i]) {
                return Err(Error::NoRealization {
                    diagram: diagram.name().to_string(),
                    ambient: ambient.typ().to_string(),
                });
            }
            for j in 0..n {
                let got = ambient.inner(&roots[i], &roots[j]);
                if rat(got) != gram[(i, j)] {
                    return Err(Error::NoRealization {
                        diagram: diagram.name().to_string(),
                        ambient: ambient.typ().to_string(),
                    });
                }
            }
        }
        let mut coords = RatMatrix::zeros(ambient.rank(), n);
        for (j, r) in roots.iter().enumerate() {
            for (i, &c) in r.coords().iter().enumerate() {
                coords[(i, j)] = rat(c);
            }
        }
        if coords.rank() != n {
            return Err(Error::NoRealization {
                diagram: diagram.name().to_string(),
                ambient: ambient.typ().to_string(),
            });
        }
        let gram_inv = gram.inverse()?;
        Ok(GammaSet {
            diagram,
            ambient,
            roots,
            gram,
            gram_inv,
        })
    }

    /// The ambient's simple roots arranged to realize its own Dynkin
    /// diagram in catalog vertex order.
    pub fn of_simple_roots(ambient: &RootSystem) -> GammaSet {
        let name = crate::diagram::DiagramName::dynkin(ambient.typ());
        let diagram = name.diagram().expect("ambient type is in the catalog");
        let roots = crate::diagram::dynkin_vertex_order(ambient.typ())
            .into_iter()
            .map(|old| ambient.simple(old))
            .collect();
        GammaSet::new(diagram, ambient.clone(), roots)
            .expect("simple roots realize the Dynkin diagram")
    }

    /// The diagram being realized.
    pub fn diagram(&self) -> &CarterDiagram {
        &self.diagram
    }

    /// The ambient root system.
    pub fn ambient(&self) -> &RootSystem {
        &self.ambient
    }

    /// The chosen roots, in diagram vertex order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Number of roots.
    pub fn order(&self) -> usize {
        self.roots.len()
    }

    /// The partial Cartan matrix `B` (also the Gram matrix of the roots).
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// Cached `B⁻¹`.
    pub fn gram_inverse(&self) -> &RatMatrix {
        &self.gram_inv
    }

    /// Inner products of `gamma` with each Γ-set root, unconstrained.
    pub fn raw_inner_products(&self, gamma: &Root) -> Result<Vec<i64>, Error> {
        if gamma.coords().len() != self.ambient.rank() {
            return Err(Error::Dimension(format!(
                "root of length {} in a rank {} ambient",
                gamma.coords().len(),
                self.ambient.rank()
            )));
        }
        Ok(self
            .roots
            .iter()
            .map(|t| self.ambient.inner(gamma, t))
            .collect())
    }

    /// The label vector of a root: its inner products with the Γ-set.
    /// An entry of magnitude 2 means `gamma` is a Γ-set root up to sign,
    /// which is rejected.
    pub fn label_vector(&self, gamma: &Root) -> Result<LabelVector, Error> {
        LabelVector::new(self.raw_inner_products(gamma)?)
    }

    /// The dual form value `𝓑∨(u) = uᵀ B⁻¹ u`.
    pub fn dual_form_value(&self, entries: &[i64]) -> Rational {
        let form = QuadraticForm::new(self.gram_inv.clone()).expect("inverse stays symmetric");
        form.eval_int(entries)
    }

    /// Project a label: `γ_L = B⁻¹·label` with the squared normal length
    /// `2 - B(γ_L)`.  The identity `B(γ_L) = 𝓑∨(label)` holds exactly.
    pub fn project(&self, label: &LabelVector) -> ProjectionData {
        assert_eq!(label.len(), self.order(), "label length mismatch");
        let gamma_l = self
            .gram_inv
            .mul_vec(&label.to_rationals())
            .expect("label length checked above");
        let b_value = QuadraticForm::new(self.gram.clone())
            .expect("partial Cartan matrix is symmetric")
            .eval(&gamma_l);
        ProjectionData {
            gamma_l,
            mu_norm_sq: rat(2) - b_value,
            label: label.clone(),
        }
    }

    /// Coordinates of `gamma` in the Γ-set basis, when it lies in the
    /// span.  Solved through the Gram matrix: a vector in the span is
    /// recovered exactly from its inner products with the basis.
    pub fn span_coordinates(&self, gamma: &Root) -> Option<Vec<Rational>> {
        let raw: Vec<Rational> = self
            .roots
            .iter()
            .map(|t| rat(self.ambient.inner(gamma, t)))
            .collect();
        let coeff = self
            .gram_inv
            .mul_vec(&raw)
            .expect("one inner product per Γ-set root");
        // Reconstruct in ambient coordinates and compare.
        let rank = self.ambient.rank();
        let mut rebuilt = vec![Rational::zero(); rank];
        for (c, root) in coeff.iter().zip(&self.roots) {
            if c.is_zero() {
                continue;
            }
            for (i, &x) in root.coords().iter().enumerate() {
                rebuilt[i] += c * rat(x);
            }
        }
        let matches = rebuilt
            .iter()
            .zip(gamma.coords())
            .all(|(r, &g)| *r == rat(g));
        matches.then_some(coeff)
    }

    /// Whether `gamma` lies in the linear span of the Γ-set.
    pub fn in_span(&self, gamma: &Root) -> bool {
        self.span_coordinates(gamma).is_some()
    }

    /// Ambient roots outside the span, in the ambient's root order.
    pub fn outside_roots(&self) -> impl Iterator<Item = &Root> {
        self.ambient
            .roots()
            .iter()
            .filter(|gamma| !self.in_span(gamma))
    }

    /// The other ambient root carrying the same label as `gamma`, when
    /// one exists.  At most one can: two roots outside the span share a
    /// label only through the conjugate construction.
    pub fn conjugate_partner(&self, gamma: &Root) -> Result<Option<Root>, Error> {
        if self.in_span(gamma) {
            return Err(Error::InSpan);
        }
        let label = self.label_vector(gamma)?;
        let mut partners = self.ambient.roots().iter().filter(|delta| {
            *delta != gamma && self.label_vector(delta).is_ok_and(|l| l == label)
        });
        let found = partners.next().cloned();
        debug_assert!(
            partners.next().is_none(),
            "more than one root shares the label {label}"
        );
        Ok(found)
    }

    /// JSON export: diagram name, ambient type, and the chosen roots in
    /// simple-root coordinates of the ambient.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "diagram": self.diagram.name().to_string(),
            "ambient": self.ambient.typ().to_string(),
            "roots": self.roots.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Bitset over ambient root indices; the catalog tops out at 240 roots.
const DOMAIN_WORDS: usize = 4;
type Domain = [u64; DOMAIN_WORDS];

/// Search state shared by the realization searches.
struct Search<'a> {
    diagram: &'a CarterDiagram,
    ambient: &'a RootSystem,
    /// `masks[s + 1][r]`: the roots whose inner product with root `r`
    /// is `s`, for `s` in {-1, 0, 1}.
    masks: [Vec<Domain>; 3],
    found: Vec<GammaSet>,
    limit: usize,
    /// Pick the unassigned vertex with the fewest candidates instead of
    /// the next one in diagram order.  Finds contradictions much sooner,
    /// at the price of realization order; used for existence probes only.
    fail_first: bool,
}

/// Lexicographically first realization of `diagram` inside `ambient`, or
/// `None` when no assignment of roots matches the edge dictionary.  The
/// search assigns vertices in diagram order and tries candidate roots in
/// the ambient's root order, so the result is deterministic.
pub fn find_gamma_set(diagram: &CarterDiagram, ambient: &RootSystem) -> Option<GammaSet> {
    find_gamma_sets(diagram, ambient, 1).into_iter().next()
}

/// Up to `limit` realizations in search order.  Vertices are filled in
/// diagram order; candidate domains for the unassigned vertices shrink as
/// roots are placed, which prunes hopeless branches without changing
/// which realization is found first.
pub fn find_gamma_sets(
    diagram: &CarterDiagram,
    ambient: &RootSystem,
    limit: usize,
) -> Vec<GammaSet> {
    let num_roots = ambient.roots().len();
    assert!(num_roots <= DOMAIN_WORDS * 64, "ambient too large");
    if diagram.order() > ambient.rank() || limit == 0 {
        return Vec::new();
    }
    let inner = ambient.inner_table();
    let mut masks: [Vec<Domain>; 3] = std::array::from_fn(|_| {
        vec![[0u64; DOMAIN_WORDS]; num_roots]
    });
    for r in 0..num_roots {
        for c in 0..num_roots {
            let s = inner[r][c];
            if (-1..=1).contains(&s) {
                masks[(s + 1) as usize][r][c / 64] |= 1 << (c % 64);
            }
        }
    }
    let mut all = [0u64; DOMAIN_WORDS];
    for c in 0..num_roots {
        all[c / 64] |= 1 << (c % 64);
    }
    let domains = vec![all; diagram.order()];

    // Settle existence first with the fail-first ordering; most of the
    // search cost lives in proving absence, and that outcome does not
    // depend on the ordering.
    let mut probe = Search {
        diagram,
        ambient,
        masks,
        found: Vec::new(),
        limit: 1,
        fail_first: true,
    };
    let mut assignment = vec![None; diagram.order()];
    extend(&mut probe, &domains, &mut assignment, 0);
    if probe.found.is_empty() {
        return Vec::new();
    }

    let mut search = Search {
        found: Vec::new(),
        limit,
        fail_first: false,
        ..probe
    };
    let mut assignment = vec![None; diagram.order()];
    extend(&mut search, &domains, &mut assignment, 0);
    search.found
}

fn extend(
    search: &mut Search<'_>,
    domains: &[Domain],
    assignment: &mut [Option<usize>],
    depth: usize,
) {
    let n = search.diagram.order();
    if depth == n {
        let roots: Vec<Root> = assignment
            .iter()
            .map(|c| search.ambient.roots()[c.unwrap()].clone())
            .collect();
        // Pairwise inner products already match; independence can still
        // fail, so defer to the validating constructor.
        if let Ok(gs) = GammaSet::new(
            search.diagram.clone(),
            search.ambient.clone(),
            roots,
        ) {
            search.found.push(gs);
        }
        return;
    }
    let popcount = |d: &Domain| d.iter().map(|w| w.count_ones()).sum::<u32>();
    let v = if search.fail_first {
        (0..n)
            .filter(|&w| assignment[w].is_none())
            .min_by_key(|&w| popcount(&domains[w]))
            .unwrap()
    } else {
        depth
    };
    for word in 0..DOMAIN_WORDS {
        let mut bits = domains[v][word];
        while bits != 0 {
            let c = word * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            // Narrow the open domains to roots compatible with `c`.
            let mut next = domains.to_vec();
            let mut viable = true;
            for w in 0..n {
                if w == v || assignment[w].is_some() {
                    continue;
                }
                let mask = &search.masks[(search.diagram.sign(v, w) + 1) as usize][c];
                let mut nonzero = 0u64;
                for k in 0..DOMAIN_WORDS {
                    next[w][k] &= mask[k];
                    nonzero |= next[w][k];
                }
                if nonzero == 0 {
                    viable = false;
                    break;
                }
            }
            if viable {
                assignment[v] = Some(c);
                extend(search, &next, assignment, depth + 1);
                assignment[v] = None;
                if search.found.len() == search.limit {
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramName;
    use crate::ratmat::ratio;
    use crate::roots::AdeType;

    fn system(typ: AdeType) -> RootSystem {
        RootSystem::new(typ).unwrap()
    }

    fn diagram(name: &str) -> CarterDiagram {
        name.parse::<DiagramName>().unwrap().diagram().unwrap()
    }

    #[test]
    fn simple_roots_realize_every_catalog_dynkin_diagram() {
        for typ in [
            AdeType::A(5),
            AdeType::D(4),
            AdeType::D(7),
            AdeType::E(6),
            AdeType::E(7),
            AdeType::E(8),
        ] {
            let rs = system(typ);
            let gs = GammaSet::of_simple_roots(&rs);
            assert_eq!(gs.order(), typ.rank());
            assert_eq!(*gs.gram(), gs.diagram().partial_cartan());
        }
    }

    #[test]
    fn star_diagram_is_realized_in_its_own_system() {
        let rs = system(AdeType::D(4));
        let gs = find_gamma_set(&diagram("D4"), &rs).expect("realization");
        assert_eq!(*gs.gram(), diagram("D4").partial_cartan());
        // Everything is in the span of a full-rank set.
        assert_eq!(gs.outside_roots().count(), 0);
    }

    #[test]
    fn four_cycle_is_realized_in_rank_four() {
        let rs = system(AdeType::D(4));
        let d = diagram("D4(a1)");
        assert!(find_gamma_set(&d, &rs).is_some());
        // A known witness: in the standard model these are e1-e2, e3-e4,
        // e2-e3, e2+e3, written over the simple roots.
        let witness = vec![
            Root(vec![1, 0, 0, 0]),
            Root(vec![0, 0, 1, 0]),
            Root(vec![0, 1, 0, 0]),
            Root(vec![0, 1, 1, 1]),
        ];
        assert!(GammaSet::new(d, rs, witness).is_ok());
    }

    #[test]
    fn no_d_type_subset_inside_a_type() {
        let rs = system(AdeType::A(5));
        assert!(find_gamma_set(&diagram("D5"), &rs).is_none());
        assert!(find_gamma_set(&diagram("D4"), &rs).is_none());
    }

    #[test]
    fn every_e_cycle_class_is_realized_in_its_own_system() {
        for l in [6usize, 7, 8] {
            let rs = system(AdeType::E(l));
            for name in crate::diagram::homogeneous_class(AdeType::E(l)).unwrap() {
                let d = name.diagram().unwrap();
                let gs = find_gamma_set(&d, &rs)
                    .unwrap_or_else(|| panic!("{name} should embed in E{l}"));
                assert_eq!(*gs.gram(), gs.diagram().partial_cartan(), "{name}");
            }
        }
    }

    #[test]
    fn rejects_root_lists_with_wrong_gram_matrix() {
        let rs = system(AdeType::D(4));
        let bad = vec![
            Root(vec![1, 0, 0, 0]),
            Root(vec![0, 1, 0, 0]),
            Root(vec![0, 0, 1, 0]),
            Root(vec![0, 0, 0, 1]),
        ];
        assert!(GammaSet::new(diagram("D4(a1)"), rs, bad).is_err());
    }

    #[test]
    fn label_vectors_are_ternary_outside_and_blocked_on_members() {
        let rs = system(AdeType::D(6));
        let d5 = find_gamma_set(&diagram("D5"), &rs).expect("D5 in D6");
        for gamma in rs.roots() {
            if d5.roots().contains(gamma) || d5.roots().contains(&gamma.negated()) {
                assert!(matches!(
                    d5.label_vector(gamma),
                    Err(Error::LabelRange(v)) if v.abs() == 2
                ));
            } else if !d5.in_span(gamma) {
                let label = d5.label_vector(gamma).unwrap();
                assert!(label.entries().iter().all(|e| e.abs() <= 1));
            }
        }
    }

    #[test]
    fn projection_matches_the_reference_values() {
        let rs = system(AdeType::D(6));
        let d5 = find_gamma_set(&diagram("D5"), &rs).expect("D5 in D6");

        let zero = d5.project(&LabelVector::zero(5));
        assert!(zero.gamma_l.iter().all(|c| c.is_zero()));
        assert_eq!(zero.mu_norm_sq, rat(2));

        let first = d5.project(&LabelVector::new(vec![1, 0, 0, 0, 0]).unwrap());
        assert_eq!(first.mu_norm_sq, ratio(3, 4));
        let last = d5.project(&LabelVector::new(vec![0, 0, 0, 0, 1]).unwrap());
        assert_eq!(last.mu_norm_sq, rat(1));
    }

    #[test]
    fn projection_reconstructs_labels_and_form_values() {
        let rs = system(AdeType::D(6));
        let d5 = find_gamma_set(&diagram("D5"), &rs).expect("D5 in D6");
        let b = QuadraticForm::new(d5.gram().clone()).unwrap();
        for gamma in rs.roots() {
            if d5.in_span(gamma) {
                continue;
            }
            let label = d5.label_vector(gamma).unwrap();
            let proj = d5.project(&label);
            // label = B·γ_L, recovered exactly.
            let back = d5.gram().mul_vec(&proj.gamma_l).unwrap();
            assert_eq!(back, label.to_rationals());
            // 𝓑∨(label) and 𝓑(γ_L) are the same rational.
            assert_eq!(
                d5.dual_form_value(label.entries()),
                b.eval(&proj.gamma_l)
            );
            assert!(proj.mu_norm_sq > Rational::zero());
        }
    }

    #[test]
    fn span_coordinates_agree_with_the_generic_solver() {
        let rs = system(AdeType::E(6));
        let d5 = find_gamma_set(&diagram("D5"), &rs).expect("D5 in E6");
        let mut outside = 0;
        for gamma in rs.roots() {
            let ours = d5.span_coordinates(gamma);
            let generic = rs.span_coefficients(gamma, d5.roots());
            assert_eq!(ours, generic, "{gamma}");
            if ours.is_none() {
                outside += 1;
            }
        }
        assert_eq!(outside, 32);
    }

    #[test]
    fn extension_root_pairs_with_the_negated_maximal_root() {
        // D6 realized by the last six simple roots of D7; the remaining
        // simple root extends it, and its conjugate partner is the
        // negated maximal root.
        let rs = system(AdeType::D(7));
        let order = crate::diagram::dynkin_vertex_order(AdeType::D(6));
        let roots: Vec<Root> = order.into_iter().map(|v| rs.simple(v + 1)).collect();
        let d6 = GammaSet::new(diagram("D6"), rs.clone(), roots).unwrap();
        let extension = rs.simple(0);
        let partner = d6.conjugate_partner(&extension).unwrap();
        assert_eq!(partner, Some(rs.maximal_root().negated()));
    }

    #[test]
    fn no_conjugate_partners_for_rank_five_in_e6() {
        let rs = system(AdeType::E(6));
        let d5 = find_gamma_set(&diagram("D5"), &rs).expect("D5 in E6");
        for gamma in rs.roots() {
            if d5.in_span(gamma) {
                assert!(matches!(d5.conjugate_partner(gamma), Err(Error::InSpan)));
            } else {
                assert_eq!(d5.conjugate_partner(gamma).unwrap(), None, "{gamma}");
            }
        }
    }

    #[test]
    fn label_sets_do_not_depend_on_the_realization() {
        let rs = system(AdeType::D(5));
        let d4 = diagram("D4(a1)");
        let realizations = find_gamma_sets(&d4, &rs, 6);
        assert!(realizations.len() > 1);
        let label_set = |gs: &GammaSet| {
            let mut labels: Vec<LabelVector> = gs
                .outside_roots()
                .map(|gamma| gs.label_vector(gamma).unwrap())
                .collect();
            labels.sort();
            labels.dedup();
            labels
        };
        let first = label_set(&realizations[0]);
        for other in &realizations[1..] {
            assert_eq!(label_set(other), first);
        }
    }
}
