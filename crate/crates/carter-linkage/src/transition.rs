//! Transitions between Γ-sets with a common span.
//!
//! A transition swaps a single root of a Γ-set for another ambient root
//! in the same span, landing on a Γ-set of a different diagram.  The
//! exchange is recorded as an involutive basis-change matrix, which is
//! what transports linkage labels between the two diagrams.

use crate::diagram::{CarterDiagram, DiagramName, Similarity};
use crate::gamma::{GammaSet, LabelVector};
use crate::linkage::criterion_set;
use crate::ratmat::{rat, RatMatrix};
use crate::roots::{AdeType, Root};
use crate::Error;
use num_traits::ToPrimitive;
use serde_json::json;
use std::collections::{BTreeSet, HashMap, VecDeque};

/// A single-root exchange carrying one Γ-set onto another in the same
/// span of the same ambient system.
#[derive(Debug, Clone)]
pub struct Transition {
    from: GammaSet,
    to_set: GammaSet,
    moved_vertex: usize,
    new_root: Root,
    coefficients: Vec<i64>,
    matrix: RatMatrix,
    achieved_gram: RatMatrix,
    similarity: Similarity,
}

impl Transition {
    /// The Γ-set the exchange starts from.
    pub fn from_set(&self) -> &GammaSet {
        &self.from
    }

    /// The resulting Γ-set, rearranged into catalog vertex order.
    pub fn to_set(&self) -> &GammaSet {
        &self.to_set
    }

    /// Position of the replaced root in the starting arrangement.
    pub fn moved_vertex(&self) -> usize {
        self.moved_vertex
    }

    /// The root that takes the replaced one's place.
    pub fn new_root(&self) -> &Root {
        &self.new_root
    }

    /// Expansion of the new root over the starting Γ-set.  The entry at
    /// the moved vertex is always -1, which is what makes the exchange
    /// an involution.
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// The basis-change matrix: identity except for the moved column,
    /// which holds the expansion coefficients.
    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// Gram matrix of the exchanged root list, before rearrangement.
    pub fn achieved_gram(&self) -> &RatMatrix {
        &self.achieved_gram
    }

    /// Witness carrying the exchanged positions onto the catalog vertex
    /// order of the target diagram, with sign flips where needed.
    pub fn similarity(&self) -> &Similarity {
        &self.similarity
    }

    /// Matrix sending labels over the starting diagram to labels over
    /// the target diagram.
    pub fn label_transport(&self) -> RatMatrix {
        self.similarity
            .matrix()
            .mul(&self.matrix.transpose())
            .expect("square matrices of equal order")
    }

    /// Transport one label across the exchange.
    pub fn transport_label(&self, u: &LabelVector) -> Result<LabelVector, Error> {
        let image = self.label_transport().mul_vec(&u.to_rationals())?;
        let mut out = Vec::with_capacity(image.len());
        for (k, q) in image.iter().enumerate() {
            let int = q
                .is_integer()
                .then(|| q.to_integer().to_i64())
                .flatten()
                .ok_or(Error::NonTernary(k))?;
            out.push(int);
        }
        LabelVector::new(out)
    }

    /// JSON rendering: the moved vertex, the replacement's expansion,
    /// and the matrix rows.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "from": self.from.diagram().name(),
            "to": self.to_set.diagram().name(),
            "moved_vertex": self.moved_vertex,
            "new_root": self.new_root.coords().to_vec(),
            "coefficients": self.coefficients,
            "matrix": self.matrix.int_entries().expect("exchange matrices are integral"),
        })
    }
}

/// Search for a transition from a realized Γ-set onto a target diagram.
///
/// The scan is deterministic: vertices in index order, candidate roots
/// in the ambient's lexicographic order.  A candidate replaces one root,
/// must expand integrally over the set with coefficient -1 at the
/// replaced position, and the exchanged Gram matrix must be similar to
/// the target's.  The first hit wins.
pub fn find_transition(from: &GammaSet, to: &CarterDiagram) -> Result<Transition, Error> {
    let n = from.order();
    if to.order() != n {
        return Err(Error::Dimension(format!(
            "target diagram has {} vertices, the Γ-set has {}",
            to.order(),
            n
        )));
    }
    let not_found = || Error::NoTransition {
        from: from.diagram().name().to_string(),
        to: to.name().to_string(),
    };
    let b_from = from.gram();
    // Integral expansions are vertex-independent, so compute them once.
    let mut candidates: Vec<(Root, Vec<i64>)> = Vec::new();
    for alpha in from.ambient().roots() {
        let Some(coeffs) = from.span_coordinates(alpha) else {
            continue;
        };
        let ints: Option<Vec<i64>> = coeffs
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer().to_i64()).flatten())
            .collect();
        if let Some(c) = ints {
            candidates.push((alpha.clone(), c));
        }
    }
    for i in 0..n {
        for (alpha, c) in &candidates {
            if c[i] != -1 {
                continue;
            }
            let mut m = RatMatrix::identity(n);
            for q in 0..n {
                m[(q, i)] = rat(c[q]);
            }
            let achieved = b_from.congruence(&m)?;
            let Ok((exchanged, order)) = CarterDiagram::from_gram("exchanged", &achieved) else {
                continue;
            };
            let Some(sim) = exchanged.similar(to) else {
                continue;
            };
            // Recast the witness from the relabelled vertices of
            // `exchanged` back to raw positions of the root list.
            let mut perm = vec![0usize; n];
            let mut eps = vec![0i64; n];
            for (v, &p) in order.iter().enumerate() {
                perm[p] = sim.perm[v];
                eps[p] = sim.eps[v];
            }
            let sim_pos = Similarity { perm, eps };
            let mut new_roots = vec![Root(Vec::new()); n];
            for p in 0..n {
                let base = if p == i {
                    alpha.clone()
                } else {
                    from.roots()[p].clone()
                };
                let signed = if sim_pos.eps[p] == 1 {
                    base
                } else {
                    base.negated()
                };
                new_roots[sim_pos.perm[p]] = signed;
            }
            let Ok(to_set) = GammaSet::new(to.clone(), from.ambient().clone(), new_roots) else {
                continue;
            };
            return Ok(Transition {
                from: from.clone(),
                to_set,
                moved_vertex: i,
                new_root: alpha.clone(),
                coefficients: c.clone(),
                matrix: m,
                achieved_gram: achieved,
                similarity: sim_pos,
            });
        }
    }
    Err(not_found())
}

/// Re-derive every invariant of a transition from scratch.
///
/// Checks, in order: the matrix fixes all positions but the moved one,
/// squares to the identity, has determinant -1, reproduces the recorded
/// Gram matrix by congruence from both ends, and transports the full
/// linkage system of the starting diagram bijectively onto the target's.
pub fn verify_transition(t: &Transition) -> Result<bool, Error> {
    let n = t.from.order();
    let m = t.matrix();
    let id = RatMatrix::identity(n);
    for j in 0..n {
        if j == t.moved_vertex {
            continue;
        }
        for q in 0..n {
            if m[(q, j)] != id[(q, j)] {
                return Ok(false);
            }
        }
    }
    if m.mul(m)? != id || m.det()? != rat(-1) {
        return Ok(false);
    }
    if !t.from.ambient().is_root(t.new_root()) || !t.from.in_span(t.new_root()) {
        return Ok(false);
    }
    if t.from.gram().congruence(m)? != *t.achieved_gram() {
        return Ok(false);
    }
    let q = t.similarity().matrix();
    if t.to_set.gram().congruence(&q)? != *t.achieved_gram() {
        return Ok(false);
    }
    let from_labels = criterion_set(t.from.diagram())?;
    let to_labels = criterion_set(t.to_set.diagram())?;
    let mut image = BTreeSet::new();
    for u in &from_labels {
        match t.transport_label(u) {
            Ok(v) => {
                image.insert(v);
            }
            Err(_) => return Ok(false),
        }
    }
    Ok(image == to_labels)
}

/// Neighbor pairs of diagrams connected by single transitions, within
/// one homogeneous class.  Cycle diagrams of D type all border their
/// Dynkin member; the exceptional classes form small trees.
pub fn class_adjacency(typ: AdeType) -> Vec<(DiagramName, DiagramName)> {
    let name = |cycle: usize| DiagramName { typ, cycle };
    let pairs: Vec<(usize, usize)> = match typ {
        AdeType::A(_) => Vec::new(),
        AdeType::D(_) => (1..=DiagramName::max_cycle(typ)).map(|k| (k, 0)).collect(),
        AdeType::E(6) => vec![(1, 0), (2, 1)],
        AdeType::E(7) => vec![(1, 0), (2, 0), (3, 1), (4, 3)],
        AdeType::E(8) => vec![
            (1, 0),
            (2, 0),
            (3, 2),
            (4, 1),
            (5, 4),
            (6, 4),
            (7, 5),
            (8, 7),
        ],
        AdeType::E(_) => Vec::new(),
    };
    pairs.into_iter().map(|(a, b)| (name(a), name(b))).collect()
}

/// Chain transitions from a realized Γ-set to any diagram of the same
/// homogeneous class, following the shortest path through the class
/// adjacency.  A chain to the set's own diagram is empty.
pub fn chain(from: &GammaSet, to: &CarterDiagram) -> Result<Vec<Transition>, Error> {
    let start: DiagramName = from.diagram().name().parse()?;
    let goal: DiagramName = to.name().parse()?;
    let not_found = || Error::NoTransition {
        from: start.to_string(),
        to: goal.to_string(),
    };
    if start == goal {
        return Ok(Vec::new());
    }
    if start.typ != goal.typ {
        return Err(not_found());
    }
    let mut neighbors: HashMap<DiagramName, Vec<DiagramName>> = HashMap::new();
    for (a, b) in class_adjacency(start.typ) {
        neighbors.entry(a).or_default().push(b);
        neighbors.entry(b).or_default().push(a);
    }
    let mut back: HashMap<DiagramName, DiagramName> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        if node == goal {
            break;
        }
        for next in neighbors.get(&node).cloned().unwrap_or_default() {
            if next != start && !back.contains_key(&next) {
                back.insert(next, node);
                queue.push_back(next);
            }
        }
    }
    if !back.contains_key(&goal) {
        return Err(not_found());
    }
    let mut path = vec![goal];
    while let Some(prev) = back.get(path.last().unwrap()) {
        path.push(*prev);
    }
    path.reverse();
    let mut steps = Vec::new();
    let mut current = from.clone();
    for name in path.into_iter().skip(1) {
        let step = find_transition(&current, &name.diagram()?)?;
        current = step.to_set().clone();
        steps.push(step);
    }
    Ok(steps)
}
