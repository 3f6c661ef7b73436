//! Floating-point spectrum checks.
//!
//! Everything else in the crate is exact rational arithmetic; this
//! module alone converts to doubles, for two statements that are
//! genuinely about eigenvalues: partial Cartan spectra sit strictly
//! inside (0, 4), and Coxeter eigenvalues of a Dynkin diagram satisfy
//! λ + 2 + 1/λ = (ρ - 2)² against the Cartan eigenvalues ρ.

use crate::diagram::CarterDiagram;
use crate::dual::reflection_matrix;
use crate::ratmat::RatMatrix;
use crate::Error;
use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use serde_json::json;

/// Margin used for the open-interval containment test.
pub const INTERVAL_TOLERANCE: f64 = 1e-9;

/// Pairing tolerance for eigenvalue multisets.
pub const MULTISET_TOLERANCE: f64 = 1e-8;

fn to_f64_matrix(b: &RatMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(b.nrows(), b.ncols(), |i, j| {
        b[(i, j)].to_f64().expect("rationals in range of f64")
    })
}

/// Sorted eigenvalues of a symmetric matrix plus the (0, 4) verdict.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub in_open_interval: bool,
    pub tolerance: f64,
}

impl SpectrumReport {
    /// JSON rendering; eigenvalues stay as doubles.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "eigenvalues": self.eigenvalues,
            "min": self.min,
            "max": self.max,
            "in_open_interval": self.in_open_interval,
            "tolerance": self.tolerance,
        })
    }
}

/// Eigenvalues of a symmetric rational matrix at double precision.
pub fn spectrum(b: &RatMatrix) -> Result<SpectrumReport, Error> {
    if !b.is_symmetric() {
        return Err(Error::Dimension(
            "spectrum needs a symmetric matrix".into(),
        ));
    }
    let mut eigenvalues: Vec<f64> = to_f64_matrix(b)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigenvalues.sort_by(f64::total_cmp);
    let min = *eigenvalues.first().expect("nonempty matrix");
    let max = *eigenvalues.last().expect("nonempty matrix");
    Ok(SpectrumReport {
        in_open_interval: min > INTERVAL_TOLERANCE && max < 4.0 - INTERVAL_TOLERANCE,
        eigenvalues,
        min,
        max,
        tolerance: INTERVAL_TOLERANCE,
    })
}

/// Both sides of the Coxeter eigenvalue relation, sorted, with the
/// worst pairing error.
#[derive(Debug, Clone)]
pub struct CoxeterReport {
    /// Sorted values of (ρ - 2)² over Cartan eigenvalues ρ.
    pub cartan_side: Vec<f64>,
    /// Sorted values of λ + 2 + 1/λ over Coxeter eigenvalues λ.
    pub coxeter_side: Vec<f64>,
    pub max_deviation: f64,
    /// Worst distance of a Coxeter eigenvalue from the unit circle.
    pub max_modulus_error: f64,
    pub matched: bool,
    pub tolerance: f64,
}

impl CoxeterReport {
    /// JSON rendering of both multisets and the verdict.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "cartan_side": self.cartan_side,
            "coxeter_side": self.coxeter_side,
            "max_deviation": self.max_deviation,
            "max_modulus_error": self.max_modulus_error,
            "matched": self.matched,
            "tolerance": self.tolerance,
        })
    }
}

/// Check λ + 2 + 1/λ = (ρ - 2)² for a Dynkin diagram.
///
/// The Coxeter transformation is the product of the reflections in all
/// diagram vertices, taken in vertex order; its eigenvalues lie on the
/// unit circle, so λ + 1/λ is real up to rounding.  The multisets are
/// compared after sorting.
pub fn coxeter_relation_check(d: &CarterDiagram) -> Result<CoxeterReport, Error> {
    if !d.is_dynkin_shape() {
        return Err(Error::InvalidDiagram(format!(
            "{} is not a Dynkin diagram",
            d.name()
        )));
    }
    let n = d.order();
    let mut cox = RatMatrix::identity(n);
    for i in 0..n {
        cox = cox.mul(&reflection_matrix(d, i))?;
    }
    let eig = to_f64_matrix(&cox).complex_eigenvalues();
    let mut coxeter_side: Vec<f64> = eig.iter().map(|l| (l + l.inv()).re + 2.0).collect();
    coxeter_side.sort_by(f64::total_cmp);
    let max_modulus_error = eig
        .iter()
        .map(|l| (l.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let mut cartan_side: Vec<f64> = spectrum(&d.partial_cartan())?
        .eigenvalues
        .iter()
        .map(|r| (r - 2.0).powi(2))
        .collect();
    cartan_side.sort_by(f64::total_cmp);
    let max_deviation = cartan_side
        .iter()
        .zip(&coxeter_side)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(CoxeterReport {
        cartan_side,
        coxeter_side,
        max_deviation,
        max_modulus_error,
        matched: max_deviation <= MULTISET_TOLERANCE,
        tolerance: MULTISET_TOLERANCE,
    })
}

/// Whether two symmetric matrices have the same spectrum within the
/// interval tolerance.  This reports; congruent matrices frequently
/// differ here, see the tests.
pub fn spectra_equal(b1: &RatMatrix, b2: &RatMatrix) -> Result<bool, Error> {
    if b1.nrows() != b2.nrows() {
        return Err(Error::Dimension(format!(
            "{} vs {} rows",
            b1.nrows(),
            b2.nrows()
        )));
    }
    let s1 = spectrum(b1)?;
    let s2 = spectrum(b2)?;
    Ok(s1
        .eigenvalues
        .iter()
        .zip(&s2.eigenvalues)
        .all(|(a, b)| (a - b).abs() <= INTERVAL_TOLERANCE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{catalog_diagram, full_catalog};

    fn form_of(name: &str) -> RatMatrix {
        catalog_diagram(name.parse().unwrap())
            .unwrap()
            .partial_cartan()
    }

    #[test]
    fn small_cartan_spectra_are_the_known_ones() {
        let a1 = spectrum(&form_of("A1")).unwrap();
        assert_eq!(a1.eigenvalues.len(), 1);
        assert!((a1.eigenvalues[0] - 2.0).abs() < 1e-12);

        let a2 = spectrum(&form_of("A2")).unwrap();
        assert!((a2.min - 1.0).abs() < 1e-9);
        assert!((a2.max - 3.0).abs() < 1e-9);
    }

    #[test]
    fn catalog_spectra_sit_inside_the_interval() {
        for name in full_catalog() {
            let d = catalog_diagram(name).unwrap();
            let report = spectrum(&d.partial_cartan()).unwrap();
            assert!(report.in_open_interval, "{name}");
            assert!(report.min > 1e-6 && report.max < 4.0 - 1e-6, "{name}");
            assert_eq!(report.eigenvalues.len(), d.order());
            let trace: f64 = report.eigenvalues.iter().sum();
            assert!((trace - 2.0 * d.order() as f64).abs() < 1e-8, "{name}");
        }
    }

    #[test]
    fn coxeter_relation_holds_on_every_dynkin_diagram() {
        for name in [
            "A1", "A2", "A3", "A4", "D4", "D5", "D6", "D7", "E6", "E7", "E8",
        ] {
            let d = catalog_diagram(name.parse().unwrap()).unwrap();
            let report = coxeter_relation_check(&d).unwrap();
            assert!(report.matched, "{name}: deviation {}", report.max_deviation);
            assert!(report.max_modulus_error < 1e-9, "{name}");
            assert_eq!(report.cartan_side.len(), d.order());
        }
    }

    #[test]
    fn cycle_diagrams_are_rejected_for_the_coxeter_check() {
        let d = catalog_diagram("D4(a1)".parse().unwrap()).unwrap();
        assert!(matches!(
            coxeter_relation_check(&d),
            Err(Error::InvalidDiagram(_))
        ));
    }

    #[test]
    fn congruent_forms_need_not_be_isospectral() {
        // The four-cycle form has spectrum {2-√2, 2-√2, 2+√2, 2+√2},
        // the star Cartan matrix {2-√3, 2, 2, 2+√3}.
        let four_cycle = form_of("D4(a1)");
        let star = form_of("D4");
        assert!(!spectra_equal(&four_cycle, &star).unwrap());
        let s = spectrum(&four_cycle).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        for (got, want) in s
            .eigenvalues
            .iter()
            .zip([2.0 - r2, 2.0 - r2, 2.0 + r2, 2.0 + r2])
        {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn equality_and_inequality_of_simple_spectra() {
        let a2 = form_of("A2");
        assert!(spectra_equal(&a2, &a2).unwrap());
        let split = RatMatrix::from_int_rows(&[vec![2, 0], vec![0, 2]]);
        assert!(!spectra_equal(&a2, &split).unwrap());
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let asym = RatMatrix::from_int_rows(&[vec![2, 1], vec![0, 2]]);
        assert!(spectrum(&asym).is_err());
        let a2 = form_of("A2");
        let a1 = form_of("A1");
        assert!(spectra_equal(&a2, &a1).is_err());
    }
}
