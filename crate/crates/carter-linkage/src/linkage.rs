//! Linkage roots and linkage systems.
//!
//! A root γ outside the span of a Γ-set S extends it to a larger
//! independent set exactly when 𝓑∨(γ∇) < 2, where 𝓑∨ is the quadratic
//! form of the inverse partial Cartan matrix and γ∇ the label vector of
//! inner products.  The full linkage system of a diagram collects every
//! ternary label satisfying that inequality; partial systems collect the
//! labels actually realized by the roots of one rank-plus-one ambient.

use crate::diagram::{CarterDiagram, DiagramName};
use crate::gamma::{find_gamma_set, GammaSet, LabelVector};
use crate::ratmat::{rat, Rational};
use crate::roots::{AdeType, Root, RootSystem};
use crate::Error;
use num_traits::{Signed, ToPrimitive};
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// The simply laced family an ambient system belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    A,
    D,
    E,
}

impl ComponentKind {
    /// Family of an ambient type.
    pub fn of(typ: AdeType) -> Self {
        match typ {
            AdeType::A(_) => ComponentKind::A,
            AdeType::D(_) => ComponentKind::D,
            AdeType::E(_) => ComponentKind::E,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::A => write!(f, "A"),
            ComponentKind::D => write!(f, "D"),
            ComponentKind::E => write!(f, "E"),
        }
    }
}

/// The linkage system of one base diagram: realized per-ambient label
/// sets plus the full criterion set.
///
/// The total is defined by the criterion 𝓑∨(u) < 2 over nonzero ternary
/// vectors.  It contains the union of the partials, and is in general
/// strictly larger: a single realization need not reach every label that
/// some realization reaches, so the partial sets here are witnesses, not
/// the whole story.
#[derive(Debug, Clone)]
pub struct LinkageSystem {
    base: CarterDiagram,
    partials: BTreeMap<AdeType, BTreeSet<LabelVector>>,
    total: BTreeSet<LabelVector>,
}

impl LinkageSystem {
    /// The base diagram.
    pub fn base(&self) -> &CarterDiagram {
        &self.base
    }

    /// Realized label sets keyed by ambient type.
    pub fn partials(&self) -> &BTreeMap<AdeType, BTreeSet<LabelVector>> {
        &self.partials
    }

    /// The full criterion label set.
    pub fn total(&self) -> &BTreeSet<LabelVector> {
        &self.total
    }

    /// The partial for the ambient of one family, if it embedded.
    pub fn component(&self, kind: ComponentKind) -> Option<&BTreeSet<LabelVector>> {
        self.partials
            .iter()
            .find(|(typ, _)| ComponentKind::of(**typ) == kind)
            .map(|(_, set)| set)
    }

    /// JSON rendering: per-ambient counts with their label lists, plus
    /// the total count.
    pub fn to_json(&self) -> serde_json::Value {
        let mut partials = serde_json::Map::new();
        for (typ, labels) in &self.partials {
            partials.insert(
                typ.to_string(),
                json!({
                    "count": labels.len(),
                    "labels": labels.iter().map(|l| l.entries().to_vec()).collect::<Vec<_>>(),
                }),
            );
        }
        json!({
            "base": self.base.name(),
            "partials": partials,
            "total": self.total.len(),
        })
    }
}

/// Integer data for fast criterion evaluation: the adjugate matrix and
/// determinant of the partial Cartan matrix, so that `uᵀB⁻¹u < 2` becomes
/// `uᵀ·adj·u < 2·det` in plain integer arithmetic.
struct IntForm {
    adj: Vec<Vec<i64>>,
    det: i64,
}

impl IntForm {
    fn of(diagram: &CarterDiagram) -> Result<Self, Error> {
        let b = diagram.partial_cartan();
        let inv = b.inverse()?;
        let det = b.det()?;
        if !det.is_positive() {
            return Err(Error::InvalidDiagram(format!(
                "form of {} is not positive definite",
                diagram.name()
            )));
        }
        let n = b.nrows();
        let mut adj = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let entry = &det * &inv[(i, j)];
                debug_assert!(entry.is_integer(), "adjugate of an integer matrix");
                adj[i][j] = entry
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Dimension("adjugate entry overflow".into()))?;
            }
        }
        let det = det
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Dimension("determinant overflow".into()))?;
        Ok(IntForm { adj, det })
    }

    fn accepts(&self, u: &[i64]) -> bool {
        let mut q = 0i64;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &uj) in u.iter().enumerate() {
                if uj != 0 {
                    q += self.adj[i][j] * ui * uj;
                }
            }
        }
        q < 2 * self.det
    }
}

/// All nonzero ternary vectors of a given length, in odometer order.
fn ternary_vectors(len: usize) -> impl Iterator<Item = Vec<i64>> {
    let count = 3usize.pow(len as u32);
    (0..count).filter_map(move |mut idx| {
        let mut u = vec![0i64; len];
        for entry in u.iter_mut().rev() {
            *entry = (idx % 3) as i64 - 1;
            idx /= 3;
        }
        u.iter().any(|&e| e != 0).then_some(u)
    })
}

/// The full linkage label set of a diagram: every nonzero ternary vector
/// `u` with `𝓑∨(u) < 2`.  Entries beyond ±1 cannot occur, because a unit
/// diagonal forces `𝓑∨(u) ≥ u_i²/2` for each coordinate.
pub fn criterion_set(diagram: &CarterDiagram) -> Result<BTreeSet<LabelVector>, Error> {
    let form = IntForm::of(diagram)?;
    Ok(ternary_vectors(diagram.order())
        .filter(|u| form.accepts(u))
        .map(|u| LabelVector::new(u).expect("ternary by construction"))
        .collect())
}

/// The criterion set partitioned by the invariant `p = 𝓑∨(u)`.
pub fn p_classes(
    diagram: &CarterDiagram,
) -> Result<BTreeMap<Rational, BTreeSet<LabelVector>>, Error> {
    let form = IntForm::of(diagram)?;
    let mut classes: BTreeMap<Rational, BTreeSet<LabelVector>> = BTreeMap::new();
    for u in ternary_vectors(diagram.order()) {
        if form.accepts(&u) {
            let mut q = 0i64;
            for (i, &ui) in u.iter().enumerate() {
                for (j, &uj) in u.iter().enumerate() {
                    q += form.adj[i][j] * ui * uj;
                }
            }
            let p = Rational::new(q.into(), form.det.into());
            classes
                .entry(p)
                .or_default()
                .insert(LabelVector::new(u).expect("ternary by construction"));
        }
    }
    Ok(classes)
}

/// Whether a label satisfies the linkage criterion `𝓑∨(label) < 2` for
/// the Γ-set's diagram, as an exact rational comparison.
pub fn is_linkage_root(g: &GammaSet, label: &LabelVector) -> bool {
    assert_eq!(label.len(), g.order(), "label length mismatch");
    g.dual_form_value(label.entries()) < rat(2)
}

/// Whether a linkage root can attach by a single edge at vertex `i`,
/// i.e. the diagonal entry `b∨_ii` of the inverse matrix is below 2.
pub fn single_endpoint_admits(g: &GammaSet, i: usize) -> Result<bool, Error> {
    if i >= g.order() {
        return Err(Error::Dimension(format!(
            "vertex {} of a {}-vertex Γ-set",
            i,
            g.order()
        )));
    }
    Ok(g.gram_inverse()[(i, i)] < rat(2))
}

/// Labels realized by the roots of one rank-plus-one ambient, using the
/// first Γ-set the deterministic search finds.  `None` when no Γ-set of
/// `base` embeds in the ambient.  Zero labels are dropped: a label with
/// no endpoints attaches nothing.
pub fn enumerate_partial(
    base: &CarterDiagram,
    ambient: AdeType,
) -> Result<Option<BTreeSet<LabelVector>>, Error> {
    ambient.validate()?;
    let rs = RootSystem::new(ambient)?;
    let Some(gs) = find_gamma_set(base, &rs) else {
        return Ok(None);
    };
    let mut labels = BTreeSet::new();
    for gamma in gs.outside_roots() {
        let label = gs
            .label_vector(gamma)
            .expect("roots outside the span have ternary labels");
        if !label.is_zero() {
            labels.insert(label);
        }
    }
    Ok(Some(labels))
}

/// The linkage system of a base diagram: partial label sets from every
/// embeddable ambient of rank one higher, plus the criterion total.
pub fn enumerate_full(base: &CarterDiagram) -> Result<LinkageSystem, Error> {
    let m = base.order() + 1;
    let mut candidates = Vec::new();
    for typ in [AdeType::A(m), AdeType::D(m), AdeType::E(m)] {
        if typ.validate().is_ok() {
            candidates.push(typ);
        }
    }
    let mut partials = BTreeMap::new();
    for ambient in candidates {
        if let Some(labels) = enumerate_partial(base, ambient)? {
            partials.insert(ambient, labels);
        }
    }
    Ok(LinkageSystem {
        base: base.clone(),
        partials,
        total: criterion_set(base)?,
    })
}

/// Outcome of [`criterion_check`]: exhaustive two-sided verification
/// of the linkage criterion over one ambient system.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub base: String,
    pub ambient: AdeType,
    pub outside_checked: usize,
    pub in_span_checked: usize,
    pub failures: Vec<String>,
}

impl CriterionReport {
    /// True when every root satisfied its side of the equivalence.
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.outside_checked > 0
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} in {}: {} outside and {} in-span roots, {} failures",
            self.base,
            self.ambient,
            self.outside_checked,
            self.in_span_checked,
            self.failures.len()
        )
    }
}

/// Check, over every root γ of one ambient, that the form value
/// `𝓑∨(γ∇)` is strictly below 2 with a ternary label exactly when γ is
/// outside the Γ-set's span, and equals 2 exactly on the span.  `None`
/// when the base diagram does not embed in the ambient.
pub fn criterion_check(
    base: &CarterDiagram,
    ambient: AdeType,
) -> Result<Option<CriterionReport>, Error> {
    ambient.validate()?;
    let rs = RootSystem::new(ambient)?;
    let Some(gs) = find_gamma_set(base, &rs) else {
        return Ok(None);
    };
    let two = rat(2);
    let mut report = CriterionReport {
        base: base.name().to_string(),
        ambient,
        outside_checked: 0,
        in_span_checked: 0,
        failures: Vec::new(),
    };
    for gamma in rs.roots() {
        let u = gs.raw_inner_products(gamma).expect("same ambient");
        let value = gs.dual_form_value(&u);
        if gs.in_span(gamma) {
            report.in_span_checked += 1;
            if value != two {
                report
                    .failures
                    .push(format!("{gamma}: in-span form value {value}, expected 2"));
            }
        } else {
            report.outside_checked += 1;
            if value >= two {
                report
                    .failures
                    .push(format!("{gamma}: outside form value {value}, not below 2"));
            }
            if u.iter().any(|e| e.abs() > 1) {
                report
                    .failures
                    .push(format!("{gamma}: outside label {u:?} is not ternary"));
            }
        }
    }
    Ok(Some(report))
}

/// Outcome of [`pairing_check`]: how many outside roots were examined
/// and which ones failed to pair.
#[derive(Debug, Clone)]
pub struct PairingReport {
    pub rank: usize,
    pub checked: usize,
    pub failures: Vec<(Root, Root)>,
}

impl PairingReport {
    /// True when every outside root paired correctly.
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

impl fmt::Display for PairingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairing D{} in D{}: {} roots checked, {} failures",
            self.rank,
            self.rank + 1,
            self.checked,
            self.failures.len()
        )
    }
}

/// Check the label pairing between the roots of `D_{l+1}` outside a
/// `D_l` Γ-set: for positive φ the partner is `μ_max - φ + τ`, for
/// negative φ it is `-μ_max - φ - τ`, where τ is the extension simple
/// root and `μ_max` the maximal root.  The partner must again be an
/// outside root, with the negated label.
pub fn pairing_check(l: usize) -> Result<PairingReport, Error> {
    if !(4..=8).contains(&l) {
        return Err(Error::RankRange {
            got: l,
            min: 4,
            max: 8,
        });
    }
    let ambient = RootSystem::new(AdeType::D(l + 1))?;
    let base = chain_sub_gamma_set(&ambient)?;
    let tau = ambient.simple(0);
    let mu = ambient.maximal_root();
    let v_sum: Vec<i64> = mu
        .coords()
        .iter()
        .zip(tau.coords())
        .map(|(m, t)| m + t)
        .collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    for phi in ambient.roots() {
        if base.in_span(phi) {
            continue;
        }
        checked += 1;
        let sign = if phi.is_positive() { 1 } else { -1 };
        let delta = Root(
            v_sum
                .iter()
                .zip(phi.coords())
                .map(|(v, p)| sign * v - p)
                .collect(),
        );
        let ok = ambient.is_root(&delta)
            && !base.in_span(&delta)
            && base
                .raw_inner_products(&delta)
                .expect("same ambient")
                .iter()
                .zip(base.raw_inner_products(phi).expect("same ambient"))
                .all(|(d, p)| *d == -p);
        if !ok {
            failures.push((phi.clone(), delta));
        }
    }
    Ok(PairingReport {
        rank: l,
        checked,
        failures,
    })
}

/// The `D_l` Γ-set inside `D_{l+1}` spanned by all simple roots but the
/// first; the leftover simple root is the extension root the pairing
/// lemma is phrased around.
fn chain_sub_gamma_set(ambient: &RootSystem) -> Result<GammaSet, Error> {
    let l = ambient.rank() - 1;
    let name = DiagramName::dynkin(AdeType::D(l));
    let order = crate::diagram::dynkin_vertex_order(AdeType::D(l));
    let roots = order.into_iter().map(|v| ambient.simple(v + 1)).collect();
    GammaSet::new(name.diagram()?, ambient.clone(), roots)
}

/// The `D7` Γ-set in `E8` spanned by the simple roots other than α1,
/// arranged in catalog vertex order.
fn standard_d7_in_e8(rs: &RootSystem) -> Result<GammaSet, Error> {
    let diagram = DiagramName::dynkin(AdeType::D(7)).diagram()?;
    let roots = [2, 4, 1, 6, 3, 5, 7]
        .iter()
        .map(|&i| rs.simple(i))
        .collect();
    GammaSet::new(diagram, rs.clone(), roots)
}

/// The 14 unordered pairs of `E8` roots outside the standard `D7` span
/// whose labels negate each other.  Each pair {η, λ} satisfies
/// `η∇ = -λ∇` with `η ≠ ±λ`; there are 7 pairs of positive roots plus
/// their negatives, and anything other than 14 is an error.
pub fn e8_d7_pairs() -> Result<Vec<(Root, Root)>, Error> {
    let rs = RootSystem::new(AdeType::E(8))?;
    let d7 = standard_d7_in_e8(&rs)?;
    let outside: Vec<&Root> = d7.outside_roots().collect();
    let labels: Vec<Vec<i64>> = outside
        .iter()
        .map(|r| d7.raw_inner_products(r).expect("same ambient"))
        .collect();
    let mut pairs = BTreeSet::new();
    for i in 0..outside.len() {
        for j in i + 1..outside.len() {
            if *outside[i] == outside[j].negated() {
                continue;
            }
            if labels[i].iter().zip(&labels[j]).all(|(a, b)| *a == -b) {
                let (eta, lambda) = (outside[i].clone(), outside[j].clone());
                pairs.insert(if eta <= lambda {
                    (eta, lambda)
                } else {
                    (lambda, eta)
                });
            }
        }
    }
    if pairs.len() != 14 {
        return Err(Error::CountMismatch(format!(
            "expected 14 label-negating pairs outside D7 in E8, found {}",
            pairs.len()
        )));
    }
    Ok(pairs.into_iter().collect())
}
