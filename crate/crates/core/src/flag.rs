//! Partial flag manifolds `G_{m,s,r} = SO(2m+s+r)/(U(m)×SO(s)×SO(r))` at the
//! Lie-algebra level: isotropy embedding, tangent decomposition, the invariant
//! distributions D₁…D₇ and bracket tests for involutivity and CR integrability.
//!
//! Coordinates of R^{2m+s+r} are ordered `[2m | r | s]`, so for s = 1 the
//! last coordinate is the R^s direction.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::column_basis;
use crate::spin::elementary_skew;

/// Residual below which a bracket counts as lying in a subspace.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// `⟨A, B⟩ = −tr(AB)/2`.
pub fn so_inner(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    -(a * b).trace() / 2.0
}

pub fn bracket(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

/// Upper-triangle entries: an isometry from (so(N), ⟨·,·⟩) to Euclidean space.
fn coords(x: &DMatrix<f64>) -> DVector<f64> {
    let n = x.nrows();
    let mut v = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            v.push(x[(i, j)]);
        }
    }
    DVector::from_vec(v)
}

/// Orthonormal basis (columns of coordinates) of a span of skew matrices.
fn span_coords(elems: &[DMatrix<f64>], n: usize) -> DMatrix<f64> {
    let dim = n * (n - 1) / 2;
    if elems.is_empty() {
        return DMatrix::zeros(dim, 0);
    }
    let cols: Vec<_> = elems.iter().map(coords).collect();
    column_basis(&DMatrix::from_columns(&cols), 1e-10)
}

fn residual_norm(q: &DMatrix<f64>, x: &DMatrix<f64>) -> f64 {
    let v = coords(x);
    if q.ncols() == 0 {
        return v.norm();
    }
    (&v - q * (q.transpose() * &v)).norm()
}

/// so(N) with the basis `E_ij`, `i < j`.
#[derive(Debug, Clone)]
pub struct SoAlgebra {
    pub n: usize,
    pub basis: Vec<DMatrix<f64>>,
}

impl SoAlgebra {
    pub fn new(n: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                basis.push(elementary_skew(n, i, j));
            }
        }
        SoAlgebra { n, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The standard complex structure on R^{2m}: `J₀ e_{2s−1} = e_{2s}`.
pub fn standard_complex_structure(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    for s in 0..m {
        j[(2 * s + 1, 2 * s)] = 1.0;
        j[(2 * s, 2 * s + 1)] = -1.0;
    }
    j
}

fn embed(n: usize, offset: usize, block: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(n, n);
    out.view_mut((offset, offset), block.shape()).copy_from(block);
    out
}

/// Gram–Schmidt in ⟨·,·⟩, dropping dependent elements.
fn orthonormalize(elems: Vec<DMatrix<f64>>) -> Vec<DMatrix<f64>> {
    let mut out: Vec<DMatrix<f64>> = Vec::new();
    for mut x in elems {
        for q in &out {
            x -= q * so_inner(q, &x);
        }
        let norm = so_inner(&x, &x).sqrt();
        if norm > 1e-10 {
            out.push(x / norm);
        }
    }
    out
}

/// `½(A − J₀AJ₀)` and `½(A + J₀AJ₀)`: the parts of A ∈ so(2m) commuting and
/// anticommuting with J₀.
fn complex_parts(a: &DMatrix<f64>, j0: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let conj = j0 * a * j0;
    ((a - &conj) * 0.5, (a + conj) * 0.5)
}

/// Orthonormal basis of `u(m) ⊕ so(s) ⊕ so(r) ⊂ so(2m+s+r)`.
pub fn isotropy_embedding(m: usize, s: usize, r: usize) -> Vec<DMatrix<f64>> {
    let n = 2 * m + s + r;
    let j0 = standard_complex_structure(m);
    let so2m = SoAlgebra::new(2 * m);
    let mut elems: Vec<_> = so2m
        .basis
        .iter()
        .map(|e| embed(n, 0, &complex_parts(e, &j0).0))
        .collect();
    elems.extend(SoAlgebra::new(r).basis.iter().map(|e| embed(n, 2 * m, e)));
    elems.extend(SoAlgebra::new(s).basis.iter().map(|e| embed(n, 2 * m + r, e)));
    orthonormalize(elems)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SummandLabel {
    /// `[[Λ²Cᵐ]]`
    Lambda2,
    /// `[[Cᵐ]] ⊗ Rˢ`, written `[[Cᵐ]]` when s = 1.
    CmRs,
    /// `[[Cᵐ]] ⊗ Rʳ`
    CmRr,
    /// `Rˢ ⊗ Rʳ`
    RsRr,
}

impl SummandLabel {
    pub const ALL: [SummandLabel; 4] = [
        SummandLabel::Lambda2,
        SummandLabel::CmRs,
        SummandLabel::CmRr,
        SummandLabel::RsRr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SummandLabel::Lambda2 => "Λ²Cᵐ",
            SummandLabel::CmRs => "Cᵐ⊗Rˢ",
            SummandLabel::CmRr => "Cᵐ⊗Rʳ",
            SummandLabel::RsRr => "Rˢ⊗Rʳ",
        }
    }

    /// Carries the invariant complex structure.
    pub fn is_complex(self) -> bool {
        self != SummandLabel::RsRr
    }

    pub fn dim(self, m: usize, s: usize, r: usize) -> usize {
        match self {
            SummandLabel::Lambda2 => m * m.saturating_sub(1),
            SummandLabel::CmRs => 2 * m * s,
            SummandLabel::CmRr => 2 * m * r,
            SummandLabel::RsRr => s * r,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TangentSummand {
    pub label: SummandLabel,
    /// Orthonormal in ⟨·,·⟩.
    pub basis: Vec<DMatrix<f64>>,
}

/// The four isotropy summands of `m = h^⊥`, empty ones omitted.
pub fn tangent_decomposition(m: usize, s: usize, r: usize) -> Vec<TangentSummand> {
    let n = 2 * m + s + r;
    let j0 = standard_complex_structure(m);
    let (r0, s0) = (2 * m, 2 * m + r);
    let mut out = Vec::new();
    for label in SummandLabel::ALL {
        let elems: Vec<DMatrix<f64>> = match label {
            SummandLabel::Lambda2 => SoAlgebra::new(2 * m)
                .basis
                .iter()
                .map(|e| embed(n, 0, &complex_parts(e, &j0).1))
                .collect(),
            SummandLabel::CmRs => (0..2 * m)
                .flat_map(|a| (0..s).map(move |t| elementary_skew(n, a, s0 + t)))
                .collect(),
            SummandLabel::CmRr => (0..2 * m)
                .flat_map(|a| (0..r).map(move |k| elementary_skew(n, a, r0 + k)))
                .collect(),
            SummandLabel::RsRr => (0..r)
                .flat_map(|k| (0..s).map(move |t| elementary_skew(n, r0 + k, s0 + t)))
                .collect(),
        };
        let basis = orthonormalize(elems);
        if !basis.is_empty() {
            out.push(TangentSummand { label, basis });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DistributionName {
    D(u8),
    Complement(u8),
}

impl DistributionName {
    pub fn all() -> Vec<DistributionName> {
        (1..=7)
            .flat_map(|i| [DistributionName::D(i), DistributionName::Complement(i)])
            .collect()
    }

    pub fn label(self) -> String {
        match self {
            DistributionName::D(i) => format!("D{i}"),
            DistributionName::Complement(i) => format!("D{i}^perp"),
        }
    }

    /// Summands of `D_i` for s = 1; complements add the rest.
    pub fn summands(self) -> Vec<SummandLabel> {
        use SummandLabel::*;
        let base: &[SummandLabel] = match self {
            DistributionName::D(1) | DistributionName::Complement(1) => &[Lambda2],
            DistributionName::D(2) | DistributionName::Complement(2) => &[CmRr],
            DistributionName::D(3) | DistributionName::Complement(3) => &[CmRs],
            DistributionName::D(4) | DistributionName::Complement(4) => &[Lambda2, CmRr],
            DistributionName::D(5) | DistributionName::Complement(5) => &[Lambda2, CmRs],
            DistributionName::D(6) | DistributionName::Complement(6) => &[CmRr, CmRs],
            _ => &[Lambda2, CmRr, CmRs],
        };
        match self {
            DistributionName::D(_) => base.to_vec(),
            DistributionName::Complement(_) => SummandLabel::ALL
                .into_iter()
                .filter(|l| !base.contains(l))
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct InvariantDistribution {
    pub name: String,
    pub summands: Vec<SummandLabel>,
    pub basis: Vec<DMatrix<f64>>,
    /// Orthonormal coordinates of `basis`.
    q: DMatrix<f64>,
}

impl InvariantDistribution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Distance of `x` from the span, in the ⟨·,·⟩ norm.
    pub fn distance(&self, x: &DMatrix<f64>) -> f64 {
        residual_norm(&self.q, x)
    }

    pub fn is_complex(&self) -> bool {
        self.summands.iter().all(|l| l.is_complex())
    }
}

/// `so(2m+s+r) = h ⊕ m` with its isotropy summands.
#[derive(Debug, Clone)]
pub struct FlagManifold {
    pub m: usize,
    pub s: usize,
    pub r: usize,
    pub h: Vec<DMatrix<f64>>,
    pub summands: Vec<TangentSummand>,
    h_q: DMatrix<f64>,
}

impl FlagManifold {
    pub fn new(m: usize, s: usize, r: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDimension(m, "flag manifold needs m ≥ 1"));
        }
        let h = isotropy_embedding(m, s, r);
        let n = 2 * m + s + r;
        let h_q = span_coords(&h, n);
        Ok(FlagManifold {
            m,
            s,
            r,
            summands: tangent_decomposition(m, s, r),
            h,
            h_q,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.m + self.s + self.r
    }

    pub fn space_label(&self) -> String {
        format!("G({},{},{})", self.m, self.s, self.r)
    }

    pub fn tangent_dim(&self) -> usize {
        self.summands.iter().map(|t| t.basis.len()).sum()
    }

    pub fn summand(&self, label: SummandLabel) -> Option<&TangentSummand> {
        self.summands.iter().find(|t| t.label == label)
    }

    pub fn project_to_m(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        project_to_m(x, &self.h)
    }

    pub fn distribution_from(&self, name: &str, labels: &[SummandLabel]) -> InvariantDistribution {
        let basis: Vec<DMatrix<f64>> = labels
            .iter()
            .filter_map(|l| self.summand(*l))
            .flat_map(|t| t.basis.iter().cloned())
            .collect();
        let q = span_coords(&basis, self.ambient_dim());
        InvariantDistribution {
            name: name.to_string(),
            summands: labels.to_vec(),
            basis,
            q,
        }
    }

    /// D₁…D₇ and complements are defined for s = 1.
    pub fn distribution(&self, name: DistributionName) -> Result<InvariantDistribution> {
        if self.s != 1 {
            return Err(Error::InvalidDimension(self.s, "D₁…D₇ need s = 1"));
        }
        Ok(self.distribution_from(&name.label(), &name.summands()))
    }

    /// `max ‖[h, X]_h‖` over basis pairs: zero when `[h, m] ⊆ m`.
    pub fn reductivity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.h {
            for t in &self.summands {
                for x in &t.basis {
                    let b = bracket(a, x);
                    let in_h = coords(&b) - residual_coords(&self.h_q, &b);
                    worst = worst.max(in_h.norm());
                }
            }
        }
        worst
    }

    /// `max dist([h, X], D)` over basis pairs.
    pub fn isotropy_invariance_residual(&self, d: &InvariantDistribution) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.h {
            for x in &d.basis {
                worst = worst.max(d.distance(&bracket(a, x)));
            }
        }
        worst
    }

    /// Pairwise |⟨·,·⟩| between distinct summands and between summands and h.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, t) in self.summands.iter().enumerate() {
            for x in &t.basis {
                for a in &self.h {
                    worst = worst.max(so_inner(a, x).abs());
                }
                for u in &self.summands[i + 1..] {
                    for y in &u.basis {
                        worst = worst.max(so_inner(x, y).abs());
                    }
                }
            }
        }
        worst
    }
}

fn residual_coords(q: &DMatrix<f64>, x: &DMatrix<f64>) -> DVector<f64> {
    let v = coords(x);
    if q.ncols() == 0 {
        return v;
    }
    &v - q * (q.transpose() * &v)
}

/// `X` minus its ⟨·,·⟩-orthogonal projection onto span(h).
pub fn project_to_m(x: &DMatrix<f64>, h_basis: &[DMatrix<f64>]) -> DMatrix<f64> {
    let n = x.nrows();
    let q = span_coords(h_basis, n);
    let v = residual_coords(&q, x);
    let mut out = DMatrix::zeros(n, n);
    let mut p = 0;
    for i in 0..n {
        for j in i + 1..n {
            out[(i, j)] = v[p];
            out[(j, i)] = -v[p];
            p += 1;
        }
    }
    out
}

/// Complex structure on `[[Λ²Cᵐ]] ⊕ [[Cᵐ]]⊗Rʳ ⊕ [[Cᵐ]]` (s = 1): left
/// multiplication by J₀ on the first 2m rows, completed skew-symmetrically.
#[derive(Debug, Clone)]
pub struct InvariantJ {
    pub m: usize,
    pub r: usize,
    j0: DMatrix<f64>,
    domain: DMatrix<f64>,
}

impl InvariantJ {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if m == 0 || r == 0 {
            return Err(Error::InvalidDimension(m.min(r), "invariant J needs m, r ≥ 1"));
        }
        let flag = FlagManifold::new(m, 1, r)?;
        let domain = flag.distribution(DistributionName::D(7))?;
        Ok(InvariantJ {
            m,
            r,
            j0: standard_complex_structure(m),
            domain: domain.q,
        })
    }

    fn apply_unchecked(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let n = x.nrows();
        let k = 2 * self.m;
        let top = &self.j0 * x.rows(0, k);
        let mut y = DMatrix::zeros(n, n);
        y.view_mut((0, 0), (k, n)).copy_from(&top);
        let off = top.columns(k, n - k).transpose();
        y.view_mut((k, 0), (n - k, k)).copy_from(&(-off));
        y
    }

    /// Errors when `x` has a component outside the complex summands.
    pub fn apply(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let n = 2 * self.m + 1 + self.r;
        if x.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.nrows(),
            });
        }
        let off = residual_norm(&self.domain, x);
        if off > MEMBERSHIP_TOL * (1.0 + coords(x).norm()) {
            return Err(Error::JUndefined(format!("component {off:.3e} outside the complex summands")));
        }
        Ok(self.apply_unchecked(x))
    }

    /// `max(‖J²X + X‖, |⟨JX, JY⟩ − ⟨X, Y⟩|)` over the D₇ basis.
    pub fn structure_residual(&self, basis: &[DMatrix<f64>]) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, x) in basis.iter().enumerate() {
            let jx = self.apply_unchecked(x);
            let jjx = self.apply_unchecked(&jx);
            worst = worst.max(coords(&(jjx + x)).norm());
            for y in &basis[i..] {
                let jy = self.apply_unchecked(y);
                worst = worst.max((so_inner(&jx, &jy) - so_inner(x, y)).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub a: usize,
    pub b: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketVerdict {
    pub verdict: bool,
    pub max_residual: f64,
    /// The basis pair with the largest residual when the verdict is false.
    pub witness: Option<Witness>,
}

fn verdict_from(worst: Witness) -> BracketVerdict {
    let verdict = worst.residual < MEMBERSHIP_TOL;
    BracketVerdict {
        verdict,
        max_residual: worst.residual,
        witness: (!verdict).then_some(worst),
    }
}

/// `project_to_m([X_a, X_b]) ∈ D` for all basis pairs.
pub fn is_involutive(flag: &FlagManifold, d: &InvariantDistribution) -> BracketVerdict {
    let mut worst = Witness {
        a: 0,
        b: 0,
        residual: 0.0,
    };
    for (a, x) in d.basis.iter().enumerate() {
        for (b, y) in d.basis.iter().enumerate().skip(a + 1) {
            let res = d.distance(&flag.project_to_m(&bracket(x, y)));
            if res > worst.residual {
                worst = Witness { a, b, residual: res };
            }
        }
    }
    verdict_from(worst)
}

/// The three bracket conditions with `β(X, Y) = project_to_m([X, Y])`:
/// `β(X,Y) − β(JX,JY) ∈ D`, `β(JX,Y) + β(X,JY) ∈ D` and
/// `J(β(X,Y) − β(JX,JY))_D = β(JX,Y) + β(X,JY)`.
pub fn is_cr_integrable(flag: &FlagManifold, d: &InvariantDistribution, j: &InvariantJ) -> Result<BracketVerdict> {
    if !d.is_complex() {
        return Err(Error::JUndefined(format!("{} contains a real summand", d.name)));
    }
    let beta = |x: &DMatrix<f64>, y: &DMatrix<f64>| flag.project_to_m(&bracket(x, y));
    let jb: Vec<DMatrix<f64>> = d.basis.iter().map(|x| j.apply(x)).collect::<Result<_>>()?;
    let mut worst = Witness {
        a: 0,
        b: 0,
        residual: 0.0,
    };
    for (a, x) in d.basis.iter().enumerate() {
        for (b, y) in d.basis.iter().enumerate().skip(a + 1) {
            let (jx, jy) = (&jb[a], &jb[b]);
            let c1 = beta(x, y) - beta(jx, jy);
            let c2 = beta(jx, y) + beta(x, jy);
            let r1 = d.distance(&c1);
            let r2 = d.distance(&c2);
            let r3 = if r1 < MEMBERSHIP_TOL {
                coords(&(j.apply_unchecked(&c1) - &c2)).norm()
            } else {
                r1
            };
            let res = r1.max(r2).max(r3);
            if res > worst.residual {
                worst = Witness { a, b, residual: res };
            }
        }
    }
    Ok(verdict_from(worst))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlagReportRow {
    pub space: String,
    pub distribution: String,
    pub involutive: Option<bool>,
    pub cr_integrable: Option<bool>,
    pub max_residual: f64,
}

use DistributionName::{Complement as Perp, D};

/// Distributions asserted to be involutive.
pub const ASSERTED_INVOLUTIVE: [DistributionName; 4] = [D(1), D(4), Perp(6), Perp(7)];

/// Distributions asserted to be CR integrable.
pub const ASSERTED_CR: [DistributionName; 4] = [D(1), D(4), D(5), D(7)];

/// Brute-force verdicts `(name, involutive, cr_integrable)` on `G_{m,1,r}`,
/// identical across the grid (2,2), (2,3), (3,2).
pub const GOLDEN_VERDICTS: [(DistributionName, bool, Option<bool>); 14] = [
    (D(1), true, Some(true)),
    (Perp(1), false, None),
    (D(2), false, Some(false)),
    (Perp(2), false, None),
    (D(3), false, Some(false)),
    (Perp(3), false, None),
    (D(4), true, Some(true)),
    (Perp(4), false, None),
    (D(5), true, Some(true)),
    (Perp(5), false, None),
    (D(6), false, Some(false)),
    (Perp(6), true, None),
    (D(7), false, Some(true)),
    (Perp(7), true, None),
];

/// Involutivity of D₁…D₇ and complements, CR integrability where J is
/// defined, on `G_{m,1,r}`.
pub fn flag_report(m: usize, r: usize) -> Result<Vec<FlagReportRow>> {
    let flag = FlagManifold::new(m, 1, r)?;
    let j = InvariantJ::new(m, r)?;
    let mut rows = Vec::new();
    for name in DistributionName::all() {
        let d = flag.distribution(name)?;
        let inv = is_involutive(&flag, &d);
        let cr = if d.is_complex() {
            Some(is_cr_integrable(&flag, &d, &j)?)
        } else {
            None
        };
        let max_residual = cr.map_or(inv.max_residual, |c| c.max_residual.max(inv.max_residual));
        rows.push(FlagReportRow {
            space: flag.space_label(),
            distribution: d.name.clone(),
            involutive: Some(inv.verdict),
            cr_integrable: cr.map(|c| c.verdict),
            max_residual,
        });
    }
    Ok(rows)
}
