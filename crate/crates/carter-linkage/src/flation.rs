//! Reduction of unit forms by inflations.
//!
//! A unit form is an integral symmetric matrix with 2 on the diagonal.
//! An inflation at a positive off-diagonal entry is a determinant-one
//! change of basis that flips the entry's sign; iterating them drives a
//! positive definite form to a direct sum of simply laced Cartan
//! matrices, with the accumulated transform as a certificate.

use crate::diagram::CarterDiagram;
use crate::ratmat::{rat, QuadraticForm, RatMatrix};
use crate::roots::AdeType;
use crate::Error;
use num_traits::ToPrimitive;
use std::fmt;

/// An integral symmetric matrix with every diagonal entry equal to 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitForm {
    m: RatMatrix,
}

impl UnitForm {
    /// Validate symmetry, integrality, and the unit diagonal.
    pub fn new(m: RatMatrix) -> Result<Self, Error> {
        let n = m.nrows();
        if m.ncols() != n {
            return Err(Error::Dimension(format!(
                "{} by {} matrix is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.int_entries().is_none() {
            return Err(Error::Parse("unit form entries must be integers".into()));
        }
        for i in 0..n {
            if m[(i, i)] != rat(2) {
                return Err(Error::Parse(format!("diagonal entry ({i}, {i}) is not 2")));
            }
            for j in 0..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::Parse(format!(
                        "entries ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Ok(UnitForm { m })
    }

    /// Build from integer rows.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self, Error> {
        UnitForm::new(RatMatrix::from_int_rows(rows))
    }

    /// The partial Cartan matrix of a diagram as a unit form.
    pub fn of_diagram(d: &CarterDiagram) -> Self {
        UnitForm {
            m: d.partial_cartan(),
        }
    }

    /// Number of variables.
    pub fn order(&self) -> usize {
        self.m.nrows()
    }

    /// One entry as an integer.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[(i, j)]
            .to_integer()
            .to_i64()
            .expect("entries fit in i64 by construction")
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &RatMatrix {
        &self.m
    }

    /// Integer rows.
    pub fn int_rows(&self) -> Vec<Vec<i64>> {
        self.m.int_entries().expect("integral by construction")
    }

    /// Exact positive definiteness.
    pub fn is_positive_definite(&self) -> bool {
        QuadraticForm::new(self.m.clone())
            .expect("symmetric by construction")
            .is_positive_definite()
    }
}

impl fmt::Display for UnitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

/// The elementary change of basis `v ↦ v - ε v_i α_j`: an identity
/// matrix with `-ε` at row `j`, column `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flation {
    pub i: usize,
    pub j: usize,
    pub epsilon: i64,
}

impl Flation {
    /// Indices must differ and the sign must be a unit.
    pub fn new(i: usize, j: usize, epsilon: i64) -> Result<Self, Error> {
        if i == j {
            return Err(Error::BadFlation(format!("indices coincide at {i}")));
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::BadFlation(format!("sign {epsilon} is not a unit")));
        }
        Ok(Flation { i, j, epsilon })
    }

    /// Matrix form at a given order.
    pub fn matrix(&self, n: usize) -> RatMatrix {
        let mut t = RatMatrix::identity(n);
        t[(self.j, self.i)] = rat(-self.epsilon);
        t
    }
}

/// The one-sided elementary step: the product `B · (I - b_ij E_ij)`,
/// returned without symmetrization.
pub fn gabrielov_step(b: &UnitForm, i: usize, j: usize) -> Result<RatMatrix, Error> {
    let n = b.order();
    if i == j {
        return Err(Error::BadFlation(format!("indices coincide at {i}")));
    }
    if i >= n || j >= n {
        return Err(Error::Dimension(format!(
            "entry ({i}, {j}) of an order-{n} form"
        )));
    }
    let mut t = RatMatrix::identity(n);
    t[(i, j)] = &t[(i, j)] - &b.m[(i, j)];
    b.m.mul(&t)
}

/// Apply a flation as a congruence.  The targeted entry must be a unit
/// with sign matching the flation's, which is exactly the condition for
/// the result to stay a unit form.
pub fn apply_flation(b: &UnitForm, f: &Flation) -> Result<UnitForm, Error> {
    let n = b.order();
    if f.i >= n || f.j >= n {
        return Err(Error::Dimension(format!(
            "flation at ({}, {}) of an order-{n} form",
            f.i, f.j
        )));
    }
    let entry = b.entry(f.i, f.j);
    if entry == 0 {
        return Err(Error::BadFlation(format!(
            "entry ({}, {}) is zero",
            f.i, f.j
        )));
    }
    if entry.abs() > 1 {
        return Err(Error::NotUnitForm(f.i, f.j));
    }
    if f.epsilon != entry.signum() {
        return Err(Error::BadFlation(format!(
            "sign {} does not match entry ({}, {}) = {}",
            f.epsilon, f.i, f.j, entry
        )));
    }
    UnitForm::new(b.m.congruence(&f.matrix(n))?)
}

/// Outcome of a reduction: the reduced form, its recognized summands,
/// the accumulated change of basis, and the individual steps.
#[derive(Debug, Clone)]
pub struct Reduction {
    reduced: UnitForm,
    components: Vec<AdeType>,
    transform: RatMatrix,
    steps: Vec<Flation>,
}

impl Reduction {
    /// The fully inflated form: off-diagonal entries in {0, -1}.
    pub fn reduced(&self) -> &UnitForm {
        &self.reduced
    }

    /// Recognized Cartan summands, ordered by first variable.
    pub fn components(&self) -> &[AdeType] {
        &self.components
    }

    /// Product of all step matrices.
    pub fn transform(&self) -> &RatMatrix {
        &self.transform
    }

    /// The steps in application order.
    pub fn steps(&self) -> &[Flation] {
        &self.steps
    }

    /// JSON export: component type list, the certificate matrix, and the
    /// elementary steps it factors into.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "components": self.components.iter().map(AdeType::to_string).collect::<Vec<_>>(),
            "reduced": self.reduced.int_rows(),
            "transform": (0..self.transform.nrows())
                .map(|i| {
                    (0..self.transform.ncols())
                        .map(|j| self.transform[(i, j)].to_string())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
            "steps": self
                .steps
                .iter()
                .map(|f| serde_json::json!({"i": f.i, "j": f.j, "epsilon": f.epsilon}))
                .collect::<Vec<_>>(),
        })
    }

    /// Re-derive the certificate: the transform is the product of the
    /// steps, has determinant ±1, and carries the original form onto
    /// the reduced one by congruence.
    pub fn verify(&self, original: &UnitForm) -> bool {
        let n = original.order();
        let mut product = RatMatrix::identity(n);
        for f in &self.steps {
            product = match product.mul(&f.matrix(n)) {
                Ok(p) => p,
                Err(_) => return false,
            };
        }
        if product != self.transform {
            return false;
        }
        match self.transform.det() {
            Ok(d) if d == rat(1) || d == rat(-1) => {}
            _ => return false,
        }
        match original.m.congruence(&self.transform) {
            Ok(image) => image == self.reduced.m,
            Err(_) => false,
        }
    }
}

/// Reduce a positive definite unit form to a direct sum of simply laced
/// Cartan matrices by greedy inflations.
///
/// Each round targets the lexicographically first positive entry above
/// the diagonal, so runs are deterministic.  The step budget of `10n²`
/// is a safety net; positive definite inputs finish well under it.
pub fn ovsienko_reduce(b: &UnitForm) -> Result<Reduction, Error> {
    if !b.is_positive_definite() {
        return Err(Error::NotDynkin("the form is not positive definite".into()));
    }
    let n = b.order();
    let cap = 10 * n * n;
    let mut current = b.clone();
    let mut transform = RatMatrix::identity(n);
    let mut steps = Vec::new();
    loop {
        let target = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .find(|&(i, j)| current.entry(i, j) > 0);
        let Some((i, j)) = target else { break };
        if steps.len() >= cap {
            return Err(Error::NonTermination(cap));
        }
        let f = Flation::new(i, j, 1)?;
        current = apply_flation(&current, &f)?;
        transform = transform.mul(&f.matrix(n))?;
        steps.push(f);
    }
    let components = recognize_dynkin(&current)?;
    Ok(Reduction {
        reduced: current,
        components,
        transform,
        steps,
    })
}

/// Recognize a fully inflated unit form as a direct sum of simply laced
/// Cartan matrices, by the shape of each connected component: a path, a
/// three-armed star with arm profile (1,1,m), or one of the three
/// exceptional profiles (1,2,2), (1,2,3), (1,2,4).
pub fn recognize_dynkin(b: &UnitForm) -> Result<Vec<AdeType>, Error> {
    let n = b.order();
    for i in 0..n {
        for j in (i + 1)..n {
            let e = b.entry(i, j);
            if e != 0 && e != -1 {
                return Err(Error::NotDynkin(format!(
                    "entry ({i}, {j}) = {e} is not 0 or -1"
                )));
            }
        }
    }
    let adjacent = |i: usize, j: usize| b.entry(i, j) == -1;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut component = vec![start];
        seen[start] = true;
        let mut cursor = 0;
        while cursor < component.len() {
            let v = component[cursor];
            cursor += 1;
            for w in 0..n {
                if !seen[w] && adjacent(v, w) {
                    seen[w] = true;
                    component.push(w);
                }
            }
        }
        out.push(recognize_component(b, &component)?);
    }
    Ok(out)
}

fn recognize_component(b: &UnitForm, vertices: &[usize]) -> Result<AdeType, Error> {
    let size = vertices.len();
    let degree = |v: usize| {
        vertices
            .iter()
            .filter(|&&w| w != v && b.entry(v, w) == -1)
            .count()
    };
    let edge_count: usize = vertices.iter().map(|&v| degree(v)).sum::<usize>() / 2;
    if edge_count != size - 1 {
        return Err(Error::NotDynkin(format!(
            "a component with {size} vertices and {edge_count} edges contains a cycle"
        )));
    }
    let branches: Vec<usize> = vertices.iter().copied().filter(|&v| degree(v) >= 3).collect();
    let typ = match branches.as_slice() {
        [] => AdeType::A(size),
        [center] if degree(*center) == 3 => {
            let mut arms: Vec<usize> = Vec::new();
            for &next in vertices.iter().filter(|&&w| w != *center && b.entry(*center, w) == -1) {
                let mut len = 1;
                let mut prev = *center;
                let mut at = next;
                while let Some(&further) = vertices
                    .iter()
                    .find(|&&w| w != prev && w != at && b.entry(at, w) == -1)
                {
                    prev = at;
                    at = further;
                    len += 1;
                }
                arms.push(len);
            }
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, m] => AdeType::D(m + 3),
                [1, 2, 2] => AdeType::E(6),
                [1, 2, 3] => AdeType::E(7),
                [1, 2, 4] => AdeType::E(8),
                other => {
                    return Err(Error::NotDynkin(format!(
                        "arm profile {other:?} is not simply laced"
                    )))
                }
            }
        }
        _ => {
            return Err(Error::NotDynkin(
                "a vertex of degree 4, or two branch vertices".into(),
            ))
        }
    };
    typ.validate().map_err(|_| {
        Error::NotDynkin(format!("recognized {typ} lies outside the supported ranks"))
    })?;
    Ok(typ)
}
