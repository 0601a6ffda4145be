use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::class::{AlgebraSpec, ExteriorClass, WireInt};
use super::monomial::{monomial_basis, Monomial};
use crate::error::{Error, Result};
use crate::lattice::{hermite_normal_form, IntMatrix};

/// An integer linear map between exterior algebras, stored as the image of
/// every source monomial. Grading is not enforced; `degree_shift` records the
/// KK-degree the map is meant to carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLinearMap {
    source: AlgebraSpec,
    target: AlgebraSpec,
    basis: Vec<Monomial>,
    images: Vec<ExteriorClass>,
    degree_shift: i64,
}

impl GradedLinearMap {
    /// Builds a map from one image per source monomial.
    pub fn from_fn<F>(
        source: AlgebraSpec,
        target: AlgebraSpec,
        degree_shift: i64,
        mut image: F,
    ) -> Result<Self>
    where
        F: FnMut(Monomial) -> Result<ExteriorClass>,
    {
        let basis = monomial_basis(source.d);
        let images = basis
            .iter()
            .map(|&m| {
                let img = image(m)?;
                if img.spec() != target {
                    return Err(Error::Spec(format!(
                        "image of {} lies in {}, expected {}",
                        source.label(m),
                        img.spec(),
                        target
                    )));
                }
                Ok(img)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedLinearMap {
            source,
            target,
            basis,
            images,
            degree_shift,
        })
    }

    pub fn identity(spec: AlgebraSpec) -> Self {
        Self::from_fn(spec, spec, 0, |m| Ok(ExteriorClass::monomial(spec, m, 1)))
            .expect("identity images match")
    }

    pub fn zero(source: AlgebraSpec, target: AlgebraSpec) -> Self {
        Self::from_fn(source, target, 0, |_| Ok(ExteriorClass::zero(target)))
            .expect("zero images match")
    }

    /// Interprets `matrix` with rows indexed by the target basis and columns
    /// by the source basis, both in canonical monomial order.
    pub fn from_matrix(
        source: AlgebraSpec,
        target: AlgebraSpec,
        degree_shift: i64,
        matrix: &IntMatrix,
    ) -> Result<Self> {
        let rows = monomial_basis(target.d);
        let cols = monomial_basis(source.d);
        if matrix.rows() != rows.len() || matrix.cols() != cols.len() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map with {} sources and {} targets",
                matrix.rows(),
                matrix.cols(),
                cols.len(),
                rows.len()
            )));
        }
        let mut j = 0;
        Self::from_fn(source, target, degree_shift, |_| {
            let mut img = ExteriorClass::zero(target);
            for (i, &r) in rows.iter().enumerate() {
                img.add_term(r, matrix[(i, j)].clone());
            }
            j += 1;
            Ok(img)
        })
    }

    pub fn source(&self) -> AlgebraSpec {
        self.source
    }

    pub fn target(&self) -> AlgebraSpec {
        self.target
    }

    pub fn degree_shift(&self) -> i64 {
        self.degree_shift
    }

    pub fn with_degree_shift(mut self, shift: i64) -> Self {
        self.degree_shift = shift;
        self
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn image(&self, m: Monomial) -> &ExteriorClass {
        let pos = self
            .basis
            .binary_search(&m)
            .unwrap_or_else(|_| panic!("monomial {m} outside rank {}", self.source.d));
        &self.images[pos]
    }

    pub fn images(&self) -> impl Iterator<Item = (Monomial, &ExteriorClass)> {
        self.basis.iter().copied().zip(self.images.iter())
    }

    pub fn apply(&self, a: &ExteriorClass) -> Result<ExteriorClass> {
        if a.spec() != self.source {
            return Err(Error::Spec(format!(
                "map from {} applied to a class in {}",
                self.source,
                a.spec()
            )));
        }
        let mut out = ExteriorClass::zero(self.target);
        for (m, c) in a.terms() {
            for (t, v) in self.image(m).terms() {
                out.add_term(t, c * v);
            }
        }
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GradedLinearMap) -> Result<GradedLinearMap> {
        compose_maps(self, first)
    }

    /// Same matrix, reinterpreted between other algebras of equal ranks.
    pub fn relabeled(&self, source: AlgebraSpec, target: AlgebraSpec) -> Result<Self> {
        if source.d != self.source.d || target.d != self.target.d {
            return Err(Error::Spec("relabeling must keep ranks".into()));
        }
        let images = self
            .images
            .iter()
            .map(|c| c.relabeled(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedLinearMap {
            source,
            target,
            basis: self.basis.clone(),
            images,
            degree_shift: self.degree_shift,
        })
    }

    pub fn matrix(&self) -> IntMatrix {
        let rows = monomial_basis(self.target.d);
        let mut m = IntMatrix::zeros(rows.len(), self.basis.len());
        for (j, img) in self.images.iter().enumerate() {
            for (t, c) in img.terms() {
                let i = rows.binary_search(&t).expect("target monomial in basis");
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .images()
                .all(|(m, img)| *img == ExteriorClass::monomial(self.target, m, 1))
    }

    /// Every `e_I` goes to `±e_{I^c}` (same rank on both sides).
    pub fn is_signed_complement_permutation(&self) -> bool {
        self.source.d == self.target.d
            && self.images().all(|(m, img)| {
                let expected = m.complement(self.source.d);
                img.len() == 1 && img.coefficient(expected).abs().is_one()
            })
    }

    /// Whether each image of a grade-`p` monomial is homogeneous of grade
    /// `f(p)` (zero images allowed).
    pub fn maps_grades_by(&self, f: impl Fn(usize) -> usize) -> bool {
        self.images()
            .all(|(m, img)| img.is_zero() || img.pure_grade() == Some(f(m.grade())))
    }

    pub fn dump(&self) -> MatrixDump {
        let matrix = self.matrix();
        let rows: Vec<String> = monomial_basis(self.target.d)
            .into_iter()
            .map(|m| self.target.label(m))
            .collect();
        let columns: Vec<String> = self.basis.iter().map(|&m| self.source.label(m)).collect();
        let entries = (0..matrix.rows())
            .map(|i| matrix.row(i).iter().map(WireInt::from).collect())
            .collect();
        MatrixDump {
            source: SpecWire::from(self.source),
            target: SpecWire::from(self.target),
            degree_shift: self.degree_shift,
            rows,
            columns,
            entries,
        }
    }
}

/// `g ∘ f`.
pub fn compose_maps(g: &GradedLinearMap, f: &GradedLinearMap) -> Result<GradedLinearMap> {
    if f.target != g.source {
        return Err(Error::Spec(format!(
            "cannot compose: {} feeds into a map from {}",
            f.target, g.source
        )));
    }
    let images = f
        .images
        .iter()
        .map(|img| g.apply(img))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedLinearMap {
        source: f.source,
        target: g.target,
        basis: f.basis.clone(),
        images,
        degree_shift: f.degree_shift + g.degree_shift,
    })
}

/// Exact inverse over the integers.
///
/// The matrix is invertible over `Z` iff its column Hermite form is the
/// identity, in which case the Hermite witness `U` with `A U = I` is the
/// inverse.
pub fn invert_map(f: &GradedLinearMap) -> Result<GradedLinearMap> {
    if f.source.d != f.target.d {
        return Err(Error::Dimension(format!(
            "map from rank {} to rank {} is not square",
            f.source.d, f.target.d
        )));
    }
    let a = f.matrix();
    let dec = hermite_normal_form(&a);
    if !dec.h.is_identity() {
        let det = if dec.rank == a.cols() {
            a.det()
        } else {
            BigInt::zero()
        };
        return Err(Error::NotInvertible {
            det: det.to_string(),
        });
    }
    let inverse = GradedLinearMap::from_matrix(f.target, f.source, -f.degree_shift, &dec.u)?;
    debug_assert!(compose_maps(&inverse, f).is_ok_and(|c| c.is_identity()));
    Ok(inverse)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecWire {
    pub d: usize,
    pub variance: super::Variance,
    pub side: super::Side,
}

impl From<AlgebraSpec> for SpecWire {
    fn from(s: AlgebraSpec) -> Self {
        SpecWire {
            d: s.d,
            variance: s.variance,
            side: s.side,
        }
    }
}

/// Labeled matrix of a map: rows are target monomials, columns source
/// monomials, both in canonical order.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixDump {
    pub source: SpecWire,
    pub target: SpecWire,
    pub degree_shift: i64,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub entries: Vec<Vec<WireInt>>,
}

impl MatrixDump {
    /// Aligned text table with row and column labels.
    pub fn render_text(&self) -> String {
        let cell = |w: &WireInt| match w {
            WireInt::Small(v) => v.to_string(),
            WireInt::Big(s) => s.clone(),
        };
        let label_width = self.rows.iter().map(String::len).max().unwrap_or(0);
        let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
        for row in &self.entries {
            for (j, e) in row.iter().enumerate() {
                widths[j] = widths[j].max(cell(e).len());
            }
        }
        let mut out = String::new();
        out.push_str(&" ".repeat(label_width));
        for (c, w) in self.columns.iter().zip(&widths) {
            out.push_str(&format!("  {c:>w$}"));
        }
        out.push('\n');
        for (label, row) in self.rows.iter().zip(&self.entries) {
            out.push_str(&format!("{label:<label_width$}"));
            for (e, w) in row.iter().zip(&widths) {
                out.push_str(&format!("  {:>w$}", cell(e)));
            }
            out.push('\n');
        }
        out
    }
}
