//! Simply laced root systems.
//!
//! Roots are stored as integer coordinate vectors over the simple root
//! basis, so the bilinear form is the Cartan matrix and every inner product
//! is an exact integer.  The full root set is generated as the closure of
//! the simple roots under the simple reflections.

use crate::ratmat::{rat, RatMatrix, Rational};
use crate::Error;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Largest ambient rank the generator accepts.  The diagram catalogue stops
/// at rank 9, but linkage enumeration for a rank 9 diagram needs a rank 10
/// ambient system, so the cap sits one above the catalogue.
pub const MAX_AMBIENT_RANK: usize = 10;

/// Type of a simply laced root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AdeType {
    /// `A_l`, a path; `l >= 1`.
    A(usize),
    /// `D_l`, a path with a fork at one end; `l >= 4`.
    D(usize),
    /// `E_l` for `l` in `{6, 7, 8}`.
    E(usize),
}

impl AdeType {
    /// Rank, i.e. the number of simple roots.
    pub fn rank(&self) -> usize {
        match *self {
            AdeType::A(l) | AdeType::D(l) | AdeType::E(l) => l,
        }
    }

    /// Check the rank bounds for this family.
    pub fn validate(&self) -> Result<(), Error> {
        let (got, min, max) = match *self {
            AdeType::A(l) => (l, 1, MAX_AMBIENT_RANK),
            AdeType::D(l) => (l, 4, MAX_AMBIENT_RANK),
            AdeType::E(l) => (l, 6, 8),
        };
        if got < min || got > max {
            return Err(Error::RankRange { got, min, max });
        }
        Ok(())
    }

    /// Edges of the Dynkin diagram, on vertices `0..rank`.
    ///
    /// Numbering follows the usual convention: `A_l` and `D_l` are chains
    /// `0-1-...`, with the last two vertices of `D_l` both joined to vertex
    /// `l-3`; in `E_l` the chain is `0-2-3-...-(l-1)` and vertex `1` hangs
    /// off vertex `3`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            AdeType::A(l) => (0..l.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            AdeType::D(l) => {
                let mut e: Vec<(usize, usize)> = (0..l - 2).map(|i| (i, i + 1)).collect();
                e.push((l - 3, l - 1));
                e
            }
            AdeType::E(l) => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..l - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Cartan matrix: 2 on the diagonal, -1 between adjacent simple roots.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let l = self.rank();
        let mut c = vec![vec![0i64; l]; l];
        for i in 0..l {
            c[i][i] = 2;
        }
        for (i, j) in self.edges() {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        c
    }

    /// Number of roots: `l(l+1)` for `A_l`, `2l(l-1)` for `D_l`,
    /// 72, 126, 240 for `E_6`, `E_7`, `E_8`.
    pub fn num_roots(&self) -> usize {
        match *self {
            AdeType::A(l) => l * (l + 1),
            AdeType::D(l) => 2 * l * (l - 1),
            AdeType::E(6) => 72,
            AdeType::E(7) => 126,
            AdeType::E(8) => 240,
            AdeType::E(_) => unreachable!("validated rank"),
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AdeType::A(l) => write!(f, "A{l}"),
            AdeType::D(l) => write!(f, "D{l}"),
            AdeType::E(l) => write!(f, "E{l}"),
        }
    }
}

impl std::str::FromStr for AdeType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mk_err = || Error::Parse(format!("bad root system name {s:?}"));
        if s.is_empty() {
            return Err(mk_err());
        }
        let (family, rank) = s.split_at(1);
        let rank: usize = rank.parse().map_err(|_| mk_err())?;
        let typ = match family {
            "A" | "a" => AdeType::A(rank),
            "D" | "d" => AdeType::D(rank),
            "E" | "e" => AdeType::E(rank),
            _ => return Err(mk_err()),
        };
        typ.validate()?;
        Ok(typ)
    }
}

/// A root, written over the simple root basis of its ambient system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    /// Coordinate slice.
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Sum of coordinates.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// A root is positive exactly when its height is.
    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    /// The opposite root.
    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(|&c| -c).collect())
    }

    /// Coordinates as rationals.
    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| rat(c)).collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A simply laced root system with its full root set and inner products.
#[derive(Debug, Clone)]
pub struct RootSystem {
    typ: AdeType,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
}

impl RootSystem {
    /// Generate the root system of the given type.
    pub fn new(typ: AdeType) -> Result<Self, Error> {
        typ.validate()?;
        let l = typ.rank();
        let cartan = typ.cartan();

        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..l {
            let mut v = vec![0i64; l];
            v[i] = 1;
            seen.insert(v.clone());
            queue.push(v);
        }
        while let Some(v) = queue.pop() {
            for i in 0..l {
                // Simple reflection: subtract the pairing with the i-th
                // simple root along that root.
                let pairing: i64 = (0..l).map(|j| cartan[i][j] * v[j]).sum();
                let mut w = v.clone();
                w[i] -= pairing;
                if seen.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }

        let roots: Vec<Root> = seen.into_iter().map(Root).collect();
        debug_assert_eq!(roots.len(), typ.num_roots());
        Ok(RootSystem { typ, cartan, roots })
    }

    /// Type of the system.
    pub fn typ(&self) -> AdeType {
        self.typ
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.typ.rank()
    }

    /// All roots, sorted lexicographically by coordinates.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Positive roots only.
    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    /// The i-th simple root (0-based).
    pub fn simple(&self, i: usize) -> Root {
        let mut v = vec![0i64; self.rank()];
        v[i] = 1;
        Root(v)
    }

    /// Cartan matrix of the system.
    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }

    /// Cartan matrix as an exact rational matrix.
    pub fn cartan_matrix(&self) -> RatMatrix {
        RatMatrix::from_int_rows(&self.cartan)
    }

    /// Inner product of two vectors in the root lattice.  All roots have
    /// norm 2; distinct non-opposite roots pair to -1, 0 or 1.
    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let l = self.rank();
        let mut acc = 0i64;
        for i in 0..l {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..l {
                acc += a.0[i] * self.cartan[i][j] * b.0[j];
            }
        }
        acc
    }

    /// Index of a root in [`Self::roots`], if present.
    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.roots.binary_search(r).ok()
    }

    /// Whether the vector is a root of this system.
    pub fn is_root(&self, r: &Root) -> bool {
        self.index_of(r).is_some()
    }

    /// The highest root: the unique root of maximal height.
    pub fn maximal_root(&self) -> Root {
        self.roots
            .iter()
            .max_by_key(|r| r.height())
            .expect("root systems are nonempty")
            .clone()
    }

    /// Express `gamma` over the given roots, if it lies in their span.
    pub fn span_coefficients(&self, gamma: &Root, set: &[Root]) -> Option<Vec<Rational>> {
        let l = self.rank();
        let mut a = RatMatrix::zeros(l, set.len());
        for (j, r) in set.iter().enumerate() {
            for i in 0..l {
                a[(i, j)] = rat(r.0[i]);
            }
        }
        a.solve(&gamma.to_rationals())
    }

    /// Whether `gamma` lies in the linear span of the given roots.
    pub fn in_span(&self, gamma: &Root, set: &[Root]) -> bool {
        self.span_coefficients(gamma, set).is_some()
    }

    /// Full pairwise inner product table, indexed like [`Self::roots`].
    pub fn inner_table(&self) -> Vec<Vec<i64>> {
        let n = self.roots.len();
        let mut t = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let p = self.inner(&self.roots[i], &self.roots[j]);
                t[i][j] = p;
                t[j][i] = p;
            }
        }
        t
    }

    /// JSON export with roots in simple-root coordinates.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.typ.to_string(),
            "count": self.roots.len(),
            "cartan": self.cartan,
            "roots": self.roots.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
        })
    }
}
