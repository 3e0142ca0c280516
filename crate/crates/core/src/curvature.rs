//! Synthetic algebraic curvature tensors and the pointwise identities of the
//! twisted spinorial curvature: Ricci identity, scalar identity and the
//! Θ-pairing.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{Clifford, StructuredOperator};
use crate::error::{Error, Result};
use crate::form::{Form, SkewForm};
use crate::purity::eta_form;
use crate::spin::{TwistFactor, TwistedSpinorSpace};
use crate::twisted::TwistedSpinor;
use crate::{seeded_rng, trial_rng, C64};

/// Rank-4 array `R_ijkl`, row-major in (i, j, k, l).
///
/// `R_abij` is read as `⟨R(e_a, e_b) e_j, e_i⟩`, so the connection forms are
/// `Ω_ij(X, Y) = −Σ X_a Y_b R_abij`. With this reading the constant-curvature
/// tensor `δ_ikδ_jl − δ_ilδ_jk` has `Ric = (n−1) Id` and `Σ_i e_i·Ric(e_i) = −R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicCurvature {
    n: usize,
    data: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SymmetryResiduals {
    pub antisymmetry: f64,
    pub pair_symmetry: f64,
    pub bianchi: f64,
}

impl AlgebraicCurvature {
    pub fn zeros(n: usize) -> Self {
        AlgebraicCurvature {
            n,
            data: vec![0.0; n.pow(4)],
        }
    }

    /// Wraps raw data without checking any symmetry.
    pub fn from_data(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n.pow(4) {
            return Err(Error::DimensionMismatch {
                expected: n.pow(4),
                got: data.len(),
            });
        }
        Ok(AlgebraicCurvature { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = f(i, j, k, l);
                        out.set(i, j, k, l, v);
                    }
                }
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.data[self.idx(i, j, k, l)]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        let p = self.idx(i, j, k, l);
        self.data[p] = v;
    }

    pub fn symmetry_residuals(&self) -> SymmetryResiduals {
        let n = self.n;
        let mut out = SymmetryResiduals {
            antisymmetry: 0.0,
            pair_symmetry: 0.0,
            bianchi: 0.0,
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(i, j, k, l);
                        let anti = (v + self.get(j, i, k, l)).abs().max((v + self.get(i, j, l, k)).abs());
                        out.antisymmetry = out.antisymmetry.max(anti);
                        out.pair_symmetry = out.pair_symmetry.max((v - self.get(k, l, i, j)).abs());
                        let b = v + self.get(i, k, l, j) + self.get(i, l, j, k);
                        out.bianchi = out.bianchi.max(b.abs());
                    }
                }
            }
        }
        out
    }

    pub fn bianchi_residual(&self) -> f64 {
        self.symmetry_residuals().bianchi
    }

    /// `Ric_ij = Σ_k R_kikj`.
    pub fn ricci(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| (0..n).map(|k| self.get(k, i, k, j)).sum())
    }

    pub fn scalar(&self) -> f64 {
        self.ricci().trace()
    }

    /// `Ω(X, Y)` as a skew form in (i, j).
    pub fn omega(&self, x: &DVector<f64>, y: &DVector<f64>) -> SkewForm {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        for a in 0..n {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                let w = x[a] * y[b];
                if w == 0.0 {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] -= w * self.get(a, b, i, j);
                    }
                }
            }
        }
        SkewForm::skew_part(&m)
    }
}

/// `δ_ikδ_jl − δ_ilδ_jk`, the unit sphere.
pub fn constant_curvature(n: usize) -> AlgebraicCurvature {
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    AlgebraicCurvature::from_fn(n, |i, j, k, l| d(i, k) * d(j, l) - d(i, l) * d(j, k))
}

/// `R_ijkl = Σ_a (h_a)_ik(h_a)_jl − (h_a)_il(h_a)_jk` for symmetric `h_a`.
pub fn curvature_from_symmetric(n: usize, hs: &[DMatrix<f64>]) -> AlgebraicCurvature {
    AlgebraicCurvature::from_fn(n, |i, j, k, l| {
        hs.iter().map(|h| h[(i, k)] * h[(j, l)] - h[(i, l)] * h[(j, k)]).sum()
    })
}

fn random_symmetric<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    (&a + a.transpose()) * 0.5
}

pub fn random_curvature(n: usize, count: usize, seed: u64) -> AlgebraicCurvature {
    random_curvature_with(n, count, &mut seeded_rng(seed))
}

pub fn random_curvature_with<R: Rng>(n: usize, count: usize, rng: &mut R) -> AlgebraicCurvature {
    let hs: Vec<_> = (0..count).map(|_| random_symmetric(n, rng)).collect();
    curvature_from_symmetric(n, &hs)
}

/// Random array antisymmetrized in (i, j) and in (k, l) only.
pub fn non_bianchi_curvature<R: Rng>(n: usize, rng: &mut R) -> AlgebraicCurvature {
    let raw: Vec<f64> = (0..n.pow(4)).map(|_| rng.random_range(-1.0..1.0)).collect();
    let raw = AlgebraicCurvature::from_data(n, raw).expect("length n⁴");
    AlgebraicCurvature::from_fn(n, |i, j, k, l| {
        (raw.get(i, j, k, l) - raw.get(j, i, k, l) - raw.get(i, j, l, k) + raw.get(j, i, l, k)) / 4.0
    })
}

/// Curvature of the auxiliary SO(r) connection and of the U(1) connection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxCurvature {
    n: usize,
    r: usize,
    /// `Θ_kl` for `k < l` in lexicographic order.
    theta: Vec<SkewForm>,
    da: SkewForm,
}

impl AuxCurvature {
    pub fn new(n: usize, r: usize, theta: Vec<SkewForm>, da: SkewForm) -> Result<Self> {
        let pairs = r * r.saturating_sub(1) / 2;
        if theta.len() != pairs {
            return Err(Error::DimensionMismatch {
                expected: pairs,
                got: theta.len(),
            });
        }
        for f in theta.iter().chain(std::iter::once(&da)) {
            if f.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: f.n() });
            }
        }
        Ok(AuxCurvature { n, r, theta, da })
    }

    pub fn zeros(n: usize, r: usize) -> Self {
        let pairs = r * r.saturating_sub(1) / 2;
        AuxCurvature {
            n,
            r,
            theta: vec![SkewForm::zeros(n); pairs],
            da: SkewForm::zeros(n),
        }
    }

    /// Independent skew forms with entries uniform in [−1, 1].
    pub fn random<R: Rng>(n: usize, r: usize, rng: &mut R) -> Self {
        let mut form = || {
            let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
            SkewForm::skew_part(&(a * 2.0))
        };
        let pairs = r * r.saturating_sub(1) / 2;
        let theta = (0..pairs).map(|_| form()).collect();
        let da = form();
        AuxCurvature { n, r, theta, da }
    }

    pub fn theta_list(&self) -> &[SkewForm] {
        &self.theta
    }

    /// `Θ_kl` with `Θ_lk = −Θ_kl`.
    pub fn theta(&self, k: usize, l: usize) -> SkewForm {
        match k.cmp(&l) {
            std::cmp::Ordering::Equal => SkewForm::zeros(self.n),
            std::cmp::Ordering::Less => self.theta[pair_position(self.r, k, l)].clone(),
            std::cmp::Ordering::Greater => self.theta[pair_position(self.r, l, k)].scale(-1.0),
        }
    }

    pub fn set_theta(&mut self, k: usize, l: usize, form: SkewForm) {
        let p = pair_position(self.r, k, l);
        self.theta[p] = form;
    }

    pub fn da(&self) -> &SkewForm {
        &self.da
    }

    pub fn set_da(&mut self, form: SkewForm) {
        self.da = form;
    }
}

fn pair_position(r: usize, k: usize, l: usize) -> usize {
    debug_assert!(k < l && l < r);
    k * (2 * r - k - 1) / 2 + (l - k - 1)
}

/// Clifford data shared by the evaluations on one space.
pub struct CurvatureContext {
    space: TwistedSpinorSpace,
    cl: Clifford,
    twist: TwistFactor,
    /// `e_ie_j` for `i < j`, row-major.
    bivectors: Vec<StructuredOperator>,
}

impl CurvatureContext {
    pub fn new(space: TwistedSpinorSpace) -> Self {
        let cl = Clifford::new(space.n);
        let mut bivectors = Vec::new();
        for i in 0..space.n {
            for j in i + 1..space.n {
                bivectors.push(cl.product(&[i, j]));
            }
        }
        CurvatureContext {
            space,
            cl,
            twist: TwistFactor::new(space.r),
            bivectors,
        }
    }

    fn check(&self, rc: &AlgebraicCurvature, aux: &AuxCurvature, phi: &TwistedSpinor) -> Result<()> {
        let n = self.space.n;
        for got in [rc.n(), aux.n, phi.n()] {
            if got != n {
                return Err(Error::DimensionMismatch { expected: n, got });
            }
        }
        for got in [aux.r, phi.r()] {
            if got != self.space.r {
                return Err(Error::DimensionMismatch {
                    expected: self.space.r,
                    got,
                });
            }
        }
        Ok(())
    }

    /// `Σ_{i<j} ω_ij e_ie_j φ`.
    fn spin_form(&self, omega: &SkewForm, phi: &TwistedSpinor) -> TwistedSpinor {
        let mut out = TwistedSpinor::zeros(self.space);
        for ((i, j, w), op) in omega.increasing().zip(&self.bivectors) {
            if w != 0.0 {
                debug_assert!(i < j);
                out = out.add(&phi.apply_spin(op).scale(C64::from(w)));
            }
        }
        out
    }

    /// `Σ_{k<l} c_kl f_kf_l φ`.
    fn twist_sum(&self, c: &[f64], phi: &TwistedSpinor) -> TwistedSpinor {
        let sigma = self.space.sigma_dim();
        let mut m = DMatrix::<C64>::zeros(sigma, sigma);
        for ((k, l), w) in self.twist.pair_list().into_iter().zip(c) {
            m += self.twist.pair(k, l) * C64::from(*w);
        }
        phi.apply_twist(&m)
    }

    pub fn curvature_apply(
        &self,
        rc: &AlgebraicCurvature,
        aux: &AuxCurvature,
        x: &DVector<f64>,
        y: &DVector<f64>,
        phi: &TwistedSpinor,
    ) -> TwistedSpinor {
        let spin = self.spin_form(&rc.omega(x, y), phi);
        let theta: Vec<f64> = aux.theta.iter().map(|t| t.eval(x, y)).collect();
        let twist = self.twist_sum(&theta, phi);
        let scalar = phi.scale(C64::new(0.0, aux.da.eval(x, y)));
        spin.add(&twist).add(&scalar).scale(C64::from(0.5))
    }

    /// Left and right side of the Ricci identity at X.
    pub fn ricci_sides(
        &self,
        rc: &AlgebraicCurvature,
        aux: &AuxCurvature,
        phi: &TwistedSpinor,
        x: &DVector<f64>,
    ) -> (TwistedSpinor, TwistedSpinor) {
        let n = self.space.n;
        let mut lhs = TwistedSpinor::zeros(self.space);
        for i in 0..n {
            let ei = unit(n, i);
            let term = self.curvature_apply(rc, aux, x, &ei, phi);
            lhs = lhs.add(&term.apply_spin(self.cl.generator(i)));
        }
        let ric_x = rc.ricci() * x;
        let mut rhs = phi.mul_vector(&self.cl, &ric_x).scale(C64::from(-0.5));
        for ((k, l), theta) in self.twist.pair_list().into_iter().zip(&aux.theta) {
            let v = theta.contract(x);
            let t = phi.apply_twist(&self.twist.pair(k, l)).mul_vector(&self.cl, &v);
            rhs = rhs.add(&t.scale(C64::from(0.5)));
        }
        let v = aux.da.contract(x);
        rhs = rhs.add(&phi.mul_vector(&self.cl, &v).scale(C64::new(0.0, 0.5)));
        (lhs, rhs)
    }

    pub fn ricci_residual(
        &self,
        rc: &AlgebraicCurvature,
        aux: &AuxCurvature,
        phi: &TwistedSpinor,
        x: &DVector<f64>,
    ) -> f64 {
        let (lhs, rhs) = self.ricci_sides(rc, aux, phi, x);
        lhs.sub(&rhs).max_norm()
    }

    /// Left and right side of the scalar identity.
    pub fn scalar_sides(
        &self,
        rc: &AlgebraicCurvature,
        aux: &AuxCurvature,
        phi: &TwistedSpinor,
    ) -> (TwistedSpinor, TwistedSpinor) {
        let n = self.space.n;
        let mut lhs = TwistedSpinor::zeros(self.space);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    // e_ie_i = −1 and R(e_i, e_i) = 0.
                    continue;
                }
                let term = self.curvature_apply(rc, aux, &unit(n, i), &unit(n, j), phi);
                let op = &self.bivectors[bivector_position(n, i.min(j), i.max(j))];
                let sign = if i < j { 1.0 } else { -1.0 };
                lhs = lhs.add(&term.apply_spin(op).scale(C64::from(sign)));
            }
        }
        let mut rhs = phi.scale(C64::from(rc.scalar() / 2.0));
        for ((k, l), theta) in self.twist.pair_list().into_iter().zip(&aux.theta) {
            let t = self.spin_form(theta, &phi.apply_twist(&self.twist.pair(k, l)));
            rhs = rhs.add(&t);
        }
        rhs = rhs.add(&self.spin_form(&aux.da, phi).scale(C64::i()));
        (lhs, rhs)
    }

    pub fn scalar_residual(&self, rc: &AlgebraicCurvature, aux: &AuxCurvature, phi: &TwistedSpinor) -> f64 {
        let (lhs, rhs) = self.scalar_sides(rc, aux, phi);
        lhs.sub(&rhs).max_norm()
    }

    /// `⟨Θ̃·φ, φ⟩` with `Θ̃ = Σ_{k<l} Θ_kl·κ(f_kf_l)`.
    pub fn theta_tilde_pairing(&self, aux: &AuxCurvature, phi: &TwistedSpinor) -> C64 {
        let mut acc = TwistedSpinor::zeros(self.space);
        for ((k, l), theta) in self.twist.pair_list().into_iter().zip(&aux.theta) {
            acc = acc.add(&self.spin_form(theta, &phi.apply_twist(&self.twist.pair(k, l))));
        }
        acc.inner(phi)
    }
}

fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

fn bivector_position(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// `½ Σ Ω_ij(X,Y) e_ie_j φ + ½ Σ Θ_kl(X,Y) f_kf_l φ + (i/2) dA(X,Y) φ`.
pub fn twisted_curvature_apply(
    rc: &AlgebraicCurvature,
    aux: &AuxCurvature,
    x: &DVector<f64>,
    y: &DVector<f64>,
    phi: &TwistedSpinor,
) -> Result<TwistedSpinor> {
    let ctx = CurvatureContext::new(phi.space());
    ctx.check(rc, aux, phi)?;
    for v in [x, y] {
        if v.len() != phi.n() {
            return Err(Error::DimensionMismatch {
                expected: phi.n(),
                got: v.len(),
            });
        }
    }
    Ok(ctx.curvature_apply(rc, aux, x, y, phi))
}

pub fn verify_ricci_identity(
    rc: &AlgebraicCurvature,
    aux: &AuxCurvature,
    phi: &TwistedSpinor,
    x: &DVector<f64>,
) -> Result<f64> {
    let ctx = CurvatureContext::new(phi.space());
    ctx.check(rc, aux, phi)?;
    if x.len() != phi.n() {
        return Err(Error::DimensionMismatch {
            expected: phi.n(),
            got: x.len(),
        });
    }
    Ok(ctx.ricci_residual(rc, aux, phi, x))
}

pub fn verify_scalar_identity(rc: &AlgebraicCurvature, aux: &AuxCurvature, phi: &TwistedSpinor) -> Result<f64> {
    let ctx = CurvatureContext::new(phi.space());
    ctx.check(rc, aux, phi)?;
    Ok(ctx.scalar_residual(rc, aux, phi))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThetaPairing {
    /// `|⟨Θ̃·φ, φ⟩ − ⟨Θ, η^φ⟩₀|`.
    pub residual: f64,
    /// `|Im⟨Θ̃·φ, φ⟩|`.
    pub imaginary: f64,
}

/// Compares `⟨Θ̃·φ, φ⟩` with `Σ_{k<l} Σ_{i<j} Θ_kl(e_i,e_j) η_kl^φ(e_i,e_j)`.
pub fn theta_pairing_check(aux: &AuxCurvature, phi: &TwistedSpinor) -> Result<ThetaPairing> {
    if phi.r() < 2 {
        return Err(Error::InvalidDimension(phi.r(), "Θ pairing needs r ≥ 2"));
    }
    if aux.n != phi.n() || aux.r != phi.r() {
        return Err(Error::DimensionMismatch {
            expected: phi.n(),
            got: aux.n,
        });
    }
    let ctx = CurvatureContext::new(phi.space());
    let lhs = ctx.theta_tilde_pairing(aux, phi);
    let mut rhs = 0.0;
    for ((k, l), theta) in ctx.twist.pair_list().into_iter().zip(&aux.theta) {
        rhs += theta.pairing(&eta_form(phi, k, l)?);
    }
    Ok(ThetaPairing {
        residual: (lhs - C64::from(rhs)).norm(),
        imaginary: lhs.im.abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Ricci,
    Scalar,
    ThetaPairing,
}

impl Identity {
    pub const ALL: [Identity; 3] = [Identity::Ricci, Identity::Scalar, Identity::ThetaPairing];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Ricci => "ricci",
            Identity::Scalar => "scalar",
            Identity::ThetaPairing => "theta_pairing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub identity: Identity,
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    pub trials: usize,
    pub max_residual: f64,
    pub pass: bool,
}

/// Number of symmetric squares summed per synthetic tensor.
pub const GENERATOR_TERMS: usize = 3;

/// Random data for one trial: a Bianchi tensor, auxiliary curvature, a unit
/// spinor and a unit vector.
fn trial_data(
    space: TwistedSpinorSpace,
    seed: u64,
    trial: usize,
) -> (AlgebraicCurvature, AuxCurvature, TwistedSpinor, DVector<f64>) {
    let mut rng = trial_rng(seed, trial as u64);
    let n = space.n;
    let rc = random_curvature_with(n, GENERATOR_TERMS, &mut rng);
    let aux = AuxCurvature::random(n, space.r, &mut rng);
    let phi = TwistedSpinor::random_unit(space, &mut rng);
    let x = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0)).normalize();
    (rc, aux, phi, x)
}

/// Runs `trials` seeded instances of one identity; trial `t` draws from stream `t`.
pub fn run_trials(identity: Identity, n: usize, r: usize, seed: u64, trials: usize, tol: f64) -> Result<TrialReport> {
    if identity == Identity::ThetaPairing && r < 2 {
        return Err(Error::InvalidDimension(r, "Θ pairing needs r ≥ 2"));
    }
    let space = TwistedSpinorSpace::new(n, r);
    let ctx = CurvatureContext::new(space);
    let residuals: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (rc, aux, phi, x) = trial_data(space, seed, t);
            match identity {
                Identity::Ricci => ctx.ricci_residual(&rc, &aux, &phi, &x),
                Identity::Scalar => ctx.scalar_residual(&rc, &aux, &phi),
                Identity::ThetaPairing => {
                    let lhs = ctx.theta_tilde_pairing(&aux, &phi);
                    let rhs: f64 = ctx
                        .twist
                        .pair_list()
                        .into_iter()
                        .zip(&aux.theta)
                        .map(|((k, l), th)| th.pairing(&eta_form(&phi, k, l).expect("r ≥ 2")))
                        .sum();
                    (lhs - C64::from(rhs)).norm()
                }
            }
        })
        .collect();
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    Ok(TrialReport {
        identity,
        n,
        r,
        seed,
        trials,
        max_residual,
        pass: max_residual < tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeControlReport {
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    pub trials: usize,
    pub threshold: f64,
    pub bianchi_exceeded: usize,
    pub ricci_exceeded: usize,
    pub min_ricci_residual: f64,
}

impl NegativeControlReport {
    pub fn ricci_fraction(&self) -> f64 {
        self.ricci_exceeded as f64 / self.trials as f64
    }

    pub fn bianchi_fraction(&self) -> f64 {
        self.bianchi_exceeded as f64 / self.trials as f64
    }
}

/// Replaces the Bianchi tensor by [`non_bianchi_curvature`] and counts how
/// often the Bianchi residual and the Ricci-identity residual exceed `threshold`.
pub fn negative_control(n: usize, r: usize, seed: u64, trials: usize, threshold: f64) -> NegativeControlReport {
    let space = TwistedSpinorSpace::new(n, r);
    let ctx = CurvatureContext::new(space);
    let rows: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed ^ 0x6e6f_6e62, t as u64);
            let rc = non_bianchi_curvature(n, &mut rng);
            let aux = AuxCurvature::random(n, r, &mut rng);
            let phi = TwistedSpinor::random_unit(space, &mut rng);
            let x = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0)).normalize();
            (rc.bianchi_residual(), ctx.ricci_residual(&rc, &aux, &phi, &x))
        })
        .collect();
    NegativeControlReport {
        n,
        r,
        seed,
        trials,
        threshold,
        bianchi_exceeded: rows.iter().filter(|(b, _)| *b > threshold).count(),
        ricci_exceeded: rows.iter().filter(|(_, q)| *q > threshold).count(),
        min_ricci_residual: rows.iter().map(|(_, q)| *q).fold(f64::INFINITY, f64::min),
    }
}

/// Closed-form checks for the unit sphere: Ricci and scalar curvature against
/// `(n−1) Id`, `n(n−1)`, and the Ricci identity against `−½(n−1) X·φ`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConstantCurvatureCheck {
    pub n: usize,
    pub ricci_residual: f64,
    pub scalar_residual: f64,
    pub identity_residual: f64,
}

pub fn constant_curvature_check(n: usize, phi: &TwistedSpinor) -> Result<ConstantCurvatureCheck> {
    if phi.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: phi.n() });
    }
    let rc = constant_curvature(n);
    let ricci_residual = (rc.ricci() - DMatrix::identity(n, n) * (n as f64 - 1.0)).abs().max();
    let scalar_residual = (rc.scalar() - (n * (n - 1)) as f64).abs();
    let ctx = CurvatureContext::new(phi.space());
    let aux = AuxCurvature::zeros(n, phi.r());
    let x = unit(n, 0);
    let (lhs, _) = ctx.ricci_sides(&rc, &aux, phi, &x);
    let want = phi.mul_vector(&ctx.cl, &x).scale(C64::from(-0.5 * (n as f64 - 1.0)));
    Ok(ConstantCurvatureCheck {
        n,
        ricci_residual,
        scalar_residual,
        identity_residual: lhs.sub(&want).max_norm(),
    })
}

/// Spinorial curvature extended to a form acting on Σ_r ⊗ Δ_n: used by the
/// Schrödinger–Lichnerowicz term `Θ̃ = Σ Θ_kl · κ(f_kf_l)`.
pub fn theta_tilde_apply(aux: &AuxCurvature, phi: &TwistedSpinor) -> TwistedSpinor {
    let ctx = CurvatureContext::new(phi.space());
    let mut acc = TwistedSpinor::zeros(phi.space());
    for ((k, l), theta) in ctx.twist.pair_list().into_iter().zip(&aux.theta) {
        let form = Form::from(theta);
        acc = acc.add(&phi.apply_twist(&ctx.twist.pair(k, l)).mul_form(&ctx.cl, &form));
    }
    acc
}
