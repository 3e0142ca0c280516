//! Partially pure twisted spinors: the standard spinor φ₀, the associated
//! 2-forms η_kl^φ, the purity conditions, and the CR data (V^φ, J^φ, ξ^φ)
//! they determine.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::clifford::{gamma_unchecked, Clifford, Sign, Spinor, StructuredOperator};
use crate::error::{Error, Result};
use crate::form::{Form, SkewForm};
use crate::linalg::{column_basis, distance_from_span, max_abs, orthogonal_complement, rank_analysis};
use crate::spin::{TwistFactor, TwistedSpinorSpace};
pub use crate::twisted::TwistedSpinor;
use crate::C64;

/// Singular values below this fraction of the largest are treated as zero.
pub const RANK_REL_TOL: f64 = 1e-8;
/// Singular values within this factor of the threshold make the rank ambiguous.
pub const AMBIGUITY_BAND: f64 = 1e3;

/// Observed orientation of `J^{φ₀}`: `J(e_{2s-1}) = J_SIGN · e_{2s}`.
pub const J_SIGN: f64 = 1.0;

/// Sign of `ξ^{φ₀}` along `e_{2m+1}` for the standard spinor with r = 1.
///
/// `e_{2m+1} = i T^{⊗m}` and `T u₊₁ = −u₊₁`, so `ξ = (−1)^{m+1} e_{2m+1}`.
pub fn xi_sign(m: usize) -> f64 {
    if m % 2 == 0 {
        -1.0
    } else {
        1.0
    }
}

/// The identification Δ_{2m+r} ≅ Δ_r ⊗ Δ_{2m} together with its check.
#[derive(Debug, Clone, Serialize)]
pub struct SplitIdentification {
    pub m: usize,
    pub r: usize,
    /// `κ(e_{2m+k}) = phase · κ_r(f_k) ⊗ T^{⊗m}`.
    pub phase: [f64; 2],
    pub residual: f64,
}

const SPLIT_TOL: f64 = 1e-12;

/// With the Kronecker table the first `⌊r/2⌋` tensor factors of Δ_{2m+r}
/// carry Δ_r and the last `m` carry Δ_{2m}: the identification is the identity
/// on coefficient arrays and the tangential generators pick up the chirality
/// operator `T^{⊗m}` of Δ_{2m}.
pub fn split_isomorphism(m: usize, r: usize) -> Result<SplitIdentification> {
    if m == 0 {
        return Err(Error::InvalidDimension(m, "split needs m ≥ 1"));
    }
    let n = 2 * m + r;
    let full = Clifford::new(n);
    let base = Clifford::new(2 * m);
    let twist = Clifford::new(r);
    let id_r = DMatrix::<C64>::identity(twist.dim(), twist.dim());
    let chirality = StructuredOperator::new(C64::from(1.0), vec![crate::clifford::blocks::t(); m]).to_dense();
    let mut residual: f64 = 0.0;
    for i in 0..2 * m {
        let want = id_r.kronecker(&base.generator(i).to_dense());
        residual = residual.max(max_abs(&(full.generator(i).to_dense() - want)));
    }
    let phase = C64::from(1.0);
    for k in 0..r {
        let want = twist.generator(k).to_dense().kronecker(&chirality) * phase;
        residual = residual.max(max_abs(&(full.generator(2 * m + k).to_dense() - want)));
    }
    if residual > SPLIT_TOL {
        return Err(Error::Residual {
            what: "split identification",
            residual,
        });
    }
    Ok(SplitIdentification {
        m,
        r,
        phase: [phase.re, phase.im],
        residual,
    })
}

/// The standard partially pure spinor
/// `φ₀ = 2^{-[r/2]/2} Σ_I v_I ⊗ γ_r(u_I) ⊗ u_{1,…,1}` in Σ_r ⊗ Δ_r ⊗ Δ_{2m}⁺,
/// summed over all multi-indices I for every r.
///
/// For r ≤ 1 the sum has the single empty index and γ is plain conjugation
/// on Δ_r = C, so φ₀ collapses to `u_{1,…,1}` with a trivial twist factor.
pub fn canonical_spinor(m: usize, r: usize) -> TwistedSpinor {
    standard_sum(m, r, &crate::spin::sigma_indices(r))
}

/// The even-r variant that sums only over indices with an even number of
/// `−1` (prefactor `2^{-([r/2]-1)/2}`), embedded in the full twist factor.
///
/// It is not partially pure: see [`crate::spin::sigma_dim`].
pub fn even_branch_spinor(m: usize, r: usize) -> Result<TwistedSpinor> {
    if r < 2 || r % 2 != 0 {
        return Err(Error::InvalidDimension(r, "even branch needs even r ≥ 2"));
    }
    Ok(standard_sum(m, r, &crate::spin::even_parity_indices(r)))
}

fn standard_sum(m: usize, r: usize, indices: &[Vec<Sign>]) -> TwistedSpinor {
    let n = 2 * m + r;
    let space = TwistedSpinorSpace::new(n, r);
    let twist = TwistFactor::new(r);
    let gamma = gamma_unchecked(r);
    let base = Spinor::basis(2 * m, &vec![Sign::Plus; m]).expect("m factors");
    let scale = C64::from(1.0 / (indices.len() as f64).sqrt());
    let mut coeffs = DMatrix::zeros(space.sigma_dim(), space.spin_dim());
    for eps in indices {
        let t = twist.indices().iter().position(|i| i == eps).expect("index in Σ_r");
        let u = Spinor::basis(r, eps).expect("index length matches");
        let g = gamma.apply_raw(u.coeffs());
        let row = g.kronecker(base.coeffs()) * scale;
        coeffs.set_row(t, &row.transpose());
    }
    TwistedSpinor::new(space, coeffs).expect("shape built from space")
}

/// Scratch data for repeated pairings on one space.
struct Pairing {
    cl: Clifford,
    twist: TwistFactor,
}

impl Pairing {
    fn new(space: TwistedSpinorSpace) -> Self {
        Pairing {
            cl: Clifford::new(space.n),
            twist: TwistFactor::new(space.r),
        }
    }

    fn eta(&self, phi: &TwistedSpinor, k: usize, l: usize) -> SkewForm {
        let n = self.cl.n();
        let psi = phi.apply_twist(&self.twist.pair(k, l));
        let mut m = DMatrix::zeros(n, n);
        for a in 0..n {
            for b in a + 1..n {
                let v = psi.apply_spin(&self.cl.product(&[a, b])).inner(phi).re;
                m[(a, b)] = v;
                m[(b, a)] = -v;
            }
        }
        SkewForm::new(m).expect("antisymmetric by construction")
    }
}

fn check_twist_indices(phi: &TwistedSpinor, k: usize, l: usize) -> Result<()> {
    let r = phi.r();
    if r < 2 {
        return Err(Error::InvalidDimension(r, "η forms need r ≥ 2"));
    }
    for idx in [k, l] {
        if idx >= r {
            return Err(Error::IndexOutOfRange { index: idx, n: r });
        }
    }
    Ok(())
}

/// `η_kl^φ(X, Y) = Re⟨X∧Y · κ_{r*}(f_k f_l) · φ, φ⟩` (0-based twist indices).
pub fn eta_form(phi: &TwistedSpinor, k: usize, l: usize) -> Result<SkewForm> {
    check_twist_indices(phi, k, l)?;
    Ok(Pairing::new(phi.space()).eta(phi, k, l))
}

/// `η̂_kl^φ(X) = (X ⌟ η_kl^φ)^♯`.
pub fn eta_endo(phi: &TwistedSpinor, k: usize, l: usize) -> Result<DMatrix<f64>> {
    Ok(eta_form(phi, k, l)?.endomorphism())
}

#[derive(Debug, Clone, Serialize)]
pub struct RankAmbiguity {
    pub singular_value: f64,
    pub threshold: f64,
}

/// `W = {Z ∈ Cⁿ : Z·φ = 0}`.
#[derive(Debug, Clone)]
pub struct AnnihilatorSubspace {
    /// Orthonormal basis, one column per vector.
    pub basis: DMatrix<C64>,
    pub singular_values: Vec<f64>,
    pub rank_ambiguity: Option<RankAmbiguity>,
}

impl AnnihilatorSubspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Largest `|Σ_i Z_i²|` over the basis and pairwise sums of basis vectors.
    pub fn isotropy_residual(&self) -> f64 {
        let d = self.dim();
        let q = |z: &DVector<C64>| z.iter().map(|c| c * c).sum::<C64>().norm();
        let mut worst: f64 = 0.0;
        for a in 0..d {
            let za = self.basis.column(a).into_owned();
            worst = worst.max(q(&za));
            for b in a + 1..d {
                worst = worst.max(q(&(&za + self.basis.column(b))));
            }
        }
        worst
    }
}

/// Matrix of `Z ↦ Z·φ` (columns `e_j·φ` flattened).
fn annihilator_matrix(cl: &Clifford, phi: &TwistedSpinor) -> DMatrix<C64> {
    let n = cl.n();
    let mut m = DMatrix::zeros(phi.space().total_dim(), n);
    for j in 0..n {
        m.set_column(j, &phi.apply_spin(cl.generator(j)).flat());
    }
    m
}

pub fn annihilator_subspace(phi: &TwistedSpinor) -> Result<AnnihilatorSubspace> {
    if phi.norm() == 0.0 {
        return Err(Error::Degenerate("zero spinor".into()));
    }
    let cl = Clifford::new(phi.n());
    Ok(annihilator_with(&cl, phi))
}

fn annihilator_with(cl: &Clifford, phi: &TwistedSpinor) -> AnnihilatorSubspace {
    let ra = rank_analysis(&annihilator_matrix(cl, phi), RANK_REL_TOL, AMBIGUITY_BAND);
    let rank_ambiguity = if ra.ambiguous {
        let s = ra
            .singular_values
            .iter()
            .cloned()
            .filter(|s| *s > ra.threshold / AMBIGUITY_BAND && *s < ra.threshold * AMBIGUITY_BAND)
            .fold(f64::NAN, f64::min);
        log::warn!(
            "annihilator rank ambiguous: singular value {s:.3e} near threshold {:.3e}",
            ra.threshold
        );
        Some(RankAmbiguity {
            singular_value: s,
            threshold: ra.threshold,
        })
    } else {
        None
    };
    AnnihilatorSubspace {
        basis: ra.kernel,
        singular_values: ra.singular_values,
        rank_ambiguity,
    }
}

/// `(V^φ, J^φ, (V^φ)^⊥)`.
#[derive(Debug, Clone)]
pub struct CRFrame {
    /// Orthonormal basis of V^φ (n × 2m).
    pub v: DMatrix<f64>,
    /// `J^φ` in the basis `v` (2m × 2m).
    pub j: DMatrix<f64>,
    /// Orthonormal basis of the orthogonal complement (n × r).
    pub complement: DMatrix<f64>,
}

impl CRFrame {
    /// `J^φ` as an endomorphism of Rⁿ vanishing on the complement.
    pub fn ambient_j(&self) -> DMatrix<f64> {
        &self.v * &self.j * self.v.transpose()
    }

    pub fn projector(&self) -> DMatrix<f64> {
        &self.v * self.v.transpose()
    }

    /// `max(‖J² + I‖, ‖JᵀJ − I‖)`.
    pub fn complex_structure_residual(&self) -> f64 {
        let d = self.j.nrows();
        let id = DMatrix::<f64>::identity(d, d);
        let sq = (&self.j * &self.j + &id).abs().max();
        let orth = (self.j.transpose() * &self.j - id).abs().max();
        sq.max(orth)
    }
}

/// Realifies the annihilator: `Z = X − iJX` gives `X = Re Z`, `JX = −Im Z`.
pub fn extract_cr(phi: &TwistedSpinor) -> Result<CRFrame> {
    let w = annihilator_subspace(phi)?;
    let n = phi.n();
    let d = w.dim();
    if d == 0 {
        return Err(Error::Degenerate("trivial annihilator".into()));
    }
    let mut both = DMatrix::<C64>::zeros(n, 2 * d);
    both.view_mut((0, 0), (n, d)).copy_from(&w.basis);
    both.view_mut((0, d), (n, d)).copy_from(&w.basis.map(|z| z.conj()));
    let rank = rank_analysis(&both, RANK_REL_TOL, AMBIGUITY_BAND).rank;
    if rank < 2 * d {
        return Err(Error::Degenerate(format!(
            "W ∩ conj(W) has dimension {}",
            2 * d - rank
        )));
    }
    let re = w.basis.map(|z| z.re);
    let im = w.basis.map(|z| z.im);
    let mut s = DMatrix::zeros(n, 2 * d);
    let mut s_j = DMatrix::zeros(n, 2 * d);
    s.view_mut((0, 0), (n, d)).copy_from(&re);
    s.view_mut((0, d), (n, d)).copy_from(&im);
    s_j.view_mut((0, 0), (n, d)).copy_from(&(-&im));
    s_j.view_mut((0, d), (n, d)).copy_from(&re);
    let q = column_basis(&s, RANK_REL_TOL);
    if q.ncols() != 2 * d {
        return Err(Error::Degenerate("realified annihilator lost rank".into()));
    }
    let c = q.transpose() * &s;
    let c_inv = c.try_inverse().ok_or_else(|| Error::Degenerate("singular frame".into()))?;
    let j = q.transpose() * s_j * c_inv;
    let complement = orthogonal_complement(&q);
    Ok(CRFrame { v: q, j, complement })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PurityReport {
    pub unit_norm_residual: f64,
    pub annihilator_dim: usize,
    pub expected_annihilator_dim: Option<usize>,
    pub eta_condition_residual: f64,
    pub theta_orthogonality_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r4_residual: Option<f64>,
    pub rank_ambiguous: bool,
    pub tolerance: f64,
    pub verdict: bool,
}

impl PurityReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.unit_norm_residual,
            self.eta_condition_residual,
            self.theta_orthogonality_residual,
            self.r4_residual.unwrap_or(0.0),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Evaluates every condition of partial purity and reports the residuals.
pub fn is_partially_pure(phi: &TwistedSpinor, tol: f64) -> PurityReport {
    let space = phi.space();
    let (n, r) = (space.n, space.r);
    let ctx = Pairing::new(space);
    let unit_norm_residual = (phi.norm() - 1.0).abs();
    let w = if phi.norm() > 0.0 {
        Some(annihilator_with(&ctx.cl, phi))
    } else {
        None
    };
    let annihilator_dim = w.as_ref().map_or(0, |w| w.dim());
    let rank_ambiguous = w.as_ref().is_some_and(|w| w.rank_ambiguity.is_some());
    let expected_annihilator_dim = (r < n && (n - r) % 2 == 0).then_some((n - r) / 2);

    let mut eta_condition_residual: f64 = 0.0;
    let mut theta_orthogonality_residual: f64 = 0.0;
    for (k, l) in ctx.twist.pair_list() {
        let eta = ctx.eta(phi, k, l);
        let twisted = phi.apply_twist(&ctx.twist.pair(k, l));
        let lhs = phi.mul_form(&ctx.cl, &Form::from(&eta)).add(&twisted);
        eta_condition_residual = eta_condition_residual.max(lhs.norm());
        theta_orthogonality_residual = theta_orthogonality_residual.max(twisted.inner(phi).norm());
    }
    let r4_residual = (r == 4).then(|| phi.apply_twist(&ctx.twist.product(&[0, 1, 2, 3])).inner(phi).norm());

    let verdict = expected_annihilator_dim == Some(annihilator_dim)
        && !rank_ambiguous
        && unit_norm_residual < tol
        && eta_condition_residual < tol
        && theta_orthogonality_residual < tol
        && r4_residual.is_none_or(|v| v < tol);
    PurityReport {
        unit_norm_residual,
        annihilator_dim,
        expected_annihilator_dim,
        eta_condition_residual,
        theta_orthogonality_residual,
        r4_residual,
        rank_ambiguous,
        tolerance: tol,
        verdict,
    }
}

/// `ξ_j = i⟨e_j·φ, φ⟩`, real because Clifford multiplication is skew-Hermitian.
pub fn xi_vector(phi: &TwistedSpinor) -> DVector<f64> {
    let cl = Clifford::new(phi.n());
    DVector::from_fn(phi.n(), |j, _| {
        (C64::i() * phi.apply_spin(cl.generator(j)).inner(phi)).re
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SoSpanReport {
    pub rank: usize,
    pub closure_residual: f64,
    /// σ in `[η̂_kl, η̂_pq] = σ(δ_lp η̂_kq − δ_kp η̂_lq − δ_lq η̂_kp + δ_kq η̂_lp)`;
    /// `None` when r < 3 (the algebra is abelian).
    pub structure_sign: Option<f64>,
    /// Deviation from that pattern with the recorded σ.
    pub structure_residual: f64,
}

/// Rank of span{η̂_kl^φ} and closure of the span under commutators.
pub fn so_r_span_check(phi: &TwistedSpinor) -> Result<SoSpanReport> {
    let r = phi.r();
    if r < 2 {
        return Err(Error::InvalidDimension(r, "so(r) span needs r ≥ 2"));
    }
    let n = phi.n();
    let ctx = Pairing::new(phi.space());
    let mut endo = vec![vec![DMatrix::<f64>::zeros(n, n); r]; r];
    for (k, l) in ctx.twist.pair_list() {
        let e = ctx.eta(phi, k, l).endomorphism();
        endo[l][k] = -&e;
        endo[k][l] = e;
    }
    let pairs = ctx.twist.pair_list();
    let flat = |m: &DMatrix<f64>| DVector::from_iterator(n * n, m.iter().cloned());
    let stacked = DMatrix::from_columns(&pairs.iter().map(|&(k, l)| flat(&endo[k][l])).collect::<Vec<_>>());
    let rank = column_basis(&stacked, RANK_REL_TOL).ncols();

    let comm = |a: &DMatrix<f64>, b: &DMatrix<f64>| a * b - b * a;
    let mut closure_residual: f64 = 0.0;
    for &(k, l) in &pairs {
        for &(p, q) in &pairs {
            let c = comm(&endo[k][l], &endo[p][q]);
            closure_residual = closure_residual.max(distance_from_span(&stacked, &flat(&c)));
        }
    }

    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let pattern = |k: usize, l: usize, p: usize, q: usize| {
        &endo[k][q] * delta(l, p) - &endo[l][q] * delta(k, p) - &endo[k][p] * delta(l, q)
            + &endo[l][p] * delta(k, q)
    };
    let (structure_sign, structure_residual) = if r >= 3 {
        let c = comm(&endo[0][1], &endo[1][2]);
        let target = pattern(0, 1, 1, 2);
        let sigma = c.dot(&target) / target.dot(&target);
        let sigma = sigma.signum();
        let mut worst: f64 = 0.0;
        for &(k, l) in &pairs {
            for &(p, q) in &pairs {
                let d = comm(&endo[k][l], &endo[p][q]) - pattern(k, l, p, q) * sigma;
                worst = worst.max(d.abs().max());
            }
        }
        (Some(sigma), worst)
    } else {
        (None, 0.0)
    };
    Ok(SoSpanReport {
        rank,
        closure_residual,
        structure_sign,
        structure_residual,
    })
}
