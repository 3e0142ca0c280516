//! Verification suites: each runs one module's acceptance checks and records
//! one row per check in a deterministic report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use serde_json::{json, Value};

use crate::clifford::{clifford_residuals, gamma_structure, StructureKind};
use crate::curvature::{constant_curvature_check, negative_control, run_trials, Identity};
use crate::error::{Error, Result};
use crate::flag::{
    is_cr_integrable, is_involutive, DistributionName, FlagManifold, InvariantJ, ASSERTED_CR,
    ASSERTED_INVOLUTIVE, GOLDEN_VERDICTS, MEMBERSHIP_TOL,
};
use crate::form::SkewForm;
use crate::linalg::max_subspace_angle;
use crate::purity::{
    canonical_spinor, eta_form, even_branch_spinor, extract_cr, is_partially_pure, so_r_span_check,
    split_isomorphism, xi_sign, xi_vector,
};
use crate::spin::{gamma_equivariance_residual, sigma_dim, SpinElement, TwistedSpinorSpace};
use crate::torus::{
    dirac_spectrum, eigenvalue_bound_check, expected_dirac_spectrum, harmonic_kernel, spectrum_distance,
    verify_sl_flat, verify_sl_flat_variant, DiracVariant, TorusModel,
};
use crate::twisted::TwistedSpinor;
use crate::{trial_rng, RNG_ALGORITHM};

pub const SUITES: [&str; 7] = ["clifford", "gamma", "purity", "flags", "curvature", "torus", "all"];

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 42;

/// Grid points for the purity and η-form checks.
pub const PURITY_GRID: [(usize, usize); 7] = [(1, 1), (2, 1), (1, 2), (2, 2), (2, 3), (3, 2), (2, 4)];
pub const FLAG_GRID: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];

/// Threshold above which a non-Bianchi tensor counts as detected.
pub const NEGATIVE_CONTROL_THRESHOLD: f64 = 1e-3;
/// Required detection rate of the curvature negative control.
pub const NEGATIVE_CONTROL_RATE: f64 = 0.95;
/// Maximal fraction of random unit spinors allowed to pass purity.
pub const RANDOM_PURE_RATE: f64 = 0.01;
/// Lower bound on the SL residual once a generator is flipped.
pub const MUTATION_FLOOR: f64 = 1.0;
/// Nonzero holonomy of the torus suite, along the first axis.
pub const TORUS_SHIFT: f64 = 0.3;

/// Parameters of a run. `None` fields fall back to each suite's default grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub tolerance: f64,
    pub seed: u64,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub modes: Option<usize>,
    pub holonomy: Option<Vec<f64>>,
    pub trials: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tolerance: DEFAULT_TOLERANCE,
            seed: DEFAULT_SEED,
            n: None,
            m: None,
            r: None,
            s: None,
            modes: None,
            holonomy: None,
            trials: None,
        }
    }
}

impl SuiteConfig {
    /// Tolerance for checks that must hold to machine precision.
    pub fn strict(&self) -> f64 {
        self.tolerance * 1e-2
    }

    fn dims(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        self.n.map_or_else(|| default.collect(), |n| vec![n])
    }

    fn twists(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        self.r.map_or_else(|| default.collect(), |r| vec![r])
    }

    fn mr_grid(&self, default: &[(usize, usize)]) -> Vec<(usize, usize)> {
        match (self.m, self.r) {
            (Some(m), Some(r)) => vec![(m, r)],
            (Some(m), None) => default.iter().copied().filter(|p| p.0 == m).collect(),
            (None, Some(r)) => default.iter().copied().filter(|p| p.1 == r).collect(),
            (None, None) => default.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warn => "warn",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub details: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub warn: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub rng: &'static str,
    pub seed: u64,
    pub tolerance: f64,
    pub rows: Vec<CheckRow>,
    pub summary: Summary,
}

impl VerificationReport {
    fn new(suite: &str, config: &SuiteConfig, mut rows: Vec<CheckRow>) -> Self {
        // Stable: rows of one check keep their grid order.
        rows.sort_by(|a, b| a.check.cmp(&b.check));
        let mut summary = Summary {
            total: rows.len(),
            ..Summary::default()
        };
        for row in &rows {
            match row.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Warn => summary.warn += 1,
            }
        }
        VerificationReport {
            suite: suite.to_string(),
            rng: RNG_ALGORITHM,
            seed: config.seed,
            tolerance: config.tolerance,
            rows,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "# spinlab report: {}\n", self.suite);
        let _ = writeln!(
            out,
            "rng {}, seed {}, tolerance {:e}\n\n{} pass, {} fail, {} warn, {} total\n",
            self.rng, self.seed, self.tolerance, s.pass, s.fail, s.warn, s.total
        );
        let _ = writeln!(out, "| check | params | status | max_residual | tolerance | details |");
        let _ = writeln!(out, "|---|---|---|---|---|---|");
        for row in &self.rows {
            let params: Vec<String> = row.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "| {} | {} | {} | {:.3e} | {:.1e} | {} |",
                row.check,
                params.join(" "),
                row.status.name(),
                row.max_residual,
                row.tolerance,
                row.details.replace('|', "\\|")
            );
        }
        out
    }
}

/// Builds one row. Non-finite residuals are clamped so reports stay valid JSON.
fn row(check: &str, params: Value, status: Status, residual: f64, tolerance: f64, details: String) -> CheckRow {
    let params = match params {
        Value::Object(map) => map.into_iter().collect(),
        _ => BTreeMap::new(),
    };
    let max_residual = if residual.is_finite() { residual } else { f64::MAX };
    CheckRow {
        check: check.to_string(),
        params,
        status,
        max_residual,
        tolerance,
        details,
    }
}

/// Row that passes when `residual < tolerance`.
fn bound_row(check: &str, params: Value, residual: f64, tolerance: f64, details: String) -> CheckRow {
    row(check, params, Status::from_bool(residual < tolerance), residual, tolerance, details)
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<VerificationReport> {
    let rows = match name {
        "clifford" => clifford_suite(config),
        "gamma" => gamma_suite(config)?,
        "purity" => purity_suite(config)?,
        "flags" => flags_suite(config)?,
        "curvature" => curvature_suite(config)?,
        "torus" => torus_suite(config)?,
        "all" => {
            let mut rows = Vec::new();
            for suite in &SUITES[..SUITES.len() - 1] {
                log::info!("running suite {suite}");
                rows.extend(run_suite(suite, config)?.rows);
            }
            rows
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(VerificationReport::new(name, config, rows))
}

fn clifford_suite(config: &SuiteConfig) -> Vec<CheckRow> {
    config
        .dims(1..=12)
        .into_iter()
        .map(|n| {
            log::info!("clifford n={n}");
            let res = clifford_residuals(n);
            bound_row(
                "clifford.relations",
                json!({ "n": n }),
                res.max(),
                config.strict(),
                format!(
                    "anticommutator {:.1e}, unitarity {:.1e}, skew-hermitian {:.1e}",
                    res.anticommutator, res.unitarity, res.skew_hermitian
                ),
            )
        })
        .collect()
}

/// Kind prescribed by the mod-8 table.
pub fn expected_structure_kind(n: usize) -> StructureKind {
    match n % 8 {
        0 | 1 | 6 | 7 => StructureKind::Real,
        _ => StructureKind::Quaternionic,
    }
}

fn gamma_suite(config: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let trials = config.trials.unwrap_or(20);
    let mut rows = Vec::new();
    for n in config.dims(2..=10) {
        log::info!("gamma n={n}");
        let gamma = gamma_structure(n)?;
        let want = expected_structure_kind(n);
        let sq = gamma.square_residual();
        rows.push(row(
            "gamma.square",
            json!({ "n": n }),
            Status::from_bool(sq == 0.0 && gamma.kind == want),
            sq,
            0.0,
            format!("kind {} (table: {}), square {:+}", gamma.kind, want, gamma.square_sign()),
        ));
        let worst = (0..trials)
            .map(|t| {
                let mut rng = trial_rng(config.seed ^ 0x67616d6d61, (n * 1000 + t) as u64);
                let g = SpinElement::random(n, 1 + t % 3, &mut rng);
                gamma_equivariance_residual(&gamma, &g)
            })
            .fold(0.0, f64::max);
        rows.push(bound_row(
            "gamma.equivariance",
            json!({ "n": n, "trials": trials }),
            worst,
            config.tolerance,
            format!("{trials} random even products"),
        ));
    }
    Ok(rows)
}

fn coordinate_block(n: usize, start: usize, len: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, len, |i, j| if i == start + j { 1.0 } else { 0.0 })
}

fn unit(n: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 })
}

/// Codimension-one point with n = 7: for n ≤ 5 and r ≤ 1 every spinor is pure.
pub const RANDOM_EXTRA: (usize, usize) = (3, 1);

/// Every unit spinor of Δ_3 and Δ_5 is pure, so with a trivial twist a random
/// spinor cannot fail there.
pub fn always_pure(n: usize, r: usize) -> bool {
    r <= 1 && n <= 5
}

fn random_failure_row(config: &SuiteConfig, m: usize, r: usize, trials: usize) -> CheckRow {
    let n = 2 * m + r;
    let space = TwistedSpinorSpace::new(n, r);
    let pure = (0..trials)
        .filter(|&t| {
            let mut rng = trial_rng(config.seed ^ 0x7075_7265, (n * 100_000 + r * 10_000 + t) as u64);
            is_partially_pure(&TwistedSpinor::random_unit(space, &mut rng), config.strict()).verdict
        })
        .count();
    let rate = pure as f64 / trials.max(1) as f64;
    let details = format!("{} of {trials} random unit spinors fail purity", trials - pure);
    let (status, details) = if always_pure(n, r) {
        (Status::Warn, format!("{details}; every spinor is pure in this dimension"))
    } else {
        (Status::from_bool(rate <= RANDOM_PURE_RATE), details)
    };
    row("purity.random_failure", json!({ "m": m, "r": r, "trials": trials }), status, rate, RANDOM_PURE_RATE, details)
}

fn purity_suite(config: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let strict = config.strict();
    let tol = config.tolerance;
    let trials = config.trials.unwrap_or(100);
    let grid = config.mr_grid(&PURITY_GRID);
    let mut rows = Vec::new();
    for &(m, r) in &grid {
        log::info!("purity m={m} r={r}");
        let n = 2 * m + r;
        let params = json!({ "m": m, "r": r });
        let phi = canonical_spinor(m, r);

        let rep = is_partially_pure(&phi, strict);
        let r4 = rep.r4_residual.map_or(String::new(), |v| format!(", quartic {v:.1e}"));
        rows.push(row(
            "purity.canonical",
            params.clone(),
            Status::from_bool(rep.verdict),
            rep.max_residual(),
            strict,
            format!(
                "annihilator dim {} (expected {:?}), eta {:.1e}, theta {:.1e}{r4}",
                rep.annihilator_dim,
                rep.expected_annihilator_dim,
                rep.eta_condition_residual,
                rep.theta_orthogonality_residual
            ),
        ));

        match extract_cr(&phi) {
            Ok(frame) => {
                let v_angle = max_subspace_angle(&frame.v, &coordinate_block(n, 0, 2 * m));
                let c_angle = max_subspace_angle(&frame.complement, &coordinate_block(n, 2 * m, r));
                let j_res = frame.complex_structure_residual();
                rows.push(bound_row(
                    "purity.cr_frame",
                    params.clone(),
                    v_angle.max(c_angle).max(j_res),
                    tol,
                    format!("angle V {v_angle:.1e}, angle complement {c_angle:.1e}, J {j_res:.1e}"),
                ));
            }
            Err(e) => rows.push(row("purity.cr_frame", params.clone(), Status::Fail, f64::MAX, tol, e.to_string())),
        }

        rows.push(random_failure_row(config, m, r, trials));

        if r >= 2 {
            let mut worst: f64 = 0.0;
            for k in 0..r {
                for l in k + 1..r {
                    let eta = eta_form(&phi, k, l)?;
                    let want = SkewForm::wedge(n, 2 * m + k, 2 * m + l);
                    worst = worst.max((eta.matrix() - want.matrix()).amax());
                }
            }
            rows.push(bound_row(
                "purity.eta_frame",
                params.clone(),
                worst,
                strict,
                "eta_kl = e_{2m+k} ^ e_{2m+l} entrywise".to_string(),
            ));
        }

        if r == 1 {
            let xi = xi_vector(&phi);
            let res = (xi - unit(n, 2 * m) * xi_sign(m)).amax();
            rows.push(bound_row(
                "purity.xi",
                params.clone(),
                res,
                strict,
                format!("xi = {:+} e_{}", xi_sign(m), 2 * m + 1),
            ));
        }

        let split = split_isomorphism(m, r)?;
        rows.push(bound_row(
            "purity.split",
            params.clone(),
            split.residual,
            strict,
            format!("phase {:+} {:+}i", split.phase[0], split.phase[1]),
        ));

        if r >= 2 && r % 2 == 0 {
            let even = even_branch_spinor(m, r)?;
            let rep = is_partially_pure(&even, strict);
            rows.push(row(
                "purity.even_branch",
                params.clone(),
                if rep.verdict { Status::Pass } else { Status::Warn },
                rep.max_residual(),
                strict,
                format!(
                    "informational: even-parity twist sum gives annihilator dim {}, verdict {}",
                    rep.annihilator_dim, rep.verdict
                ),
            ));
        }
    }

    if config.m.is_none() && config.r.is_none() {
        let (m, r) = RANDOM_EXTRA;
        rows.push(random_failure_row(config, m, r, trials));
    }

    let span_grid: Vec<(usize, usize)> = grid.iter().copied().filter(|&(m, r)| r >= 2 && m == 2).collect();
    for (m, r) in span_grid {
        let rep = so_r_span_check(&canonical_spinor(m, r))?;
        let want = r * (r - 1) / 2;
        rows.push(row(
            "purity.so_span",
            json!({ "m": m, "r": r }),
            Status::from_bool(rep.rank == want && rep.closure_residual < tol && rep.structure_residual < tol),
            rep.closure_residual.max(rep.structure_residual),
            tol,
            format!(
                "rank {} (expected {want}), structure sign {:?}",
                rep.rank, rep.structure_sign
            ),
        ));
    }
    Ok(rows)
}

fn flags_suite(config: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let strict = config.strict();
    let s = config.s.unwrap_or(1);
    let mut rows = Vec::new();
    for (m, r) in config.mr_grid(&FLAG_GRID) {
        log::info!("flags m={m} s={s} r={r}");
        let flag = FlagManifold::new(m, s, r)?;
        let params = json!({ "m": m, "s": s, "r": r });
        rows.push(bound_row(
            "flags.reductivity",
            params.clone(),
            flag.reductivity_residual(),
            strict,
            "[h, m] in m".to_string(),
        ));
        rows.push(bound_row(
            "flags.orthogonality",
            params.clone(),
            flag.orthogonality_residual(),
            strict,
            "summands mutually orthogonal".to_string(),
        ));
        if s != 1 {
            rows.push(row(
                "flags.distributions",
                params.clone(),
                Status::Warn,
                0.0,
                0.0,
                "distributions D1..D7 are defined for s = 1 only".to_string(),
            ));
            continue;
        }
        let j = InvariantJ::new(m, r)?;
        let d7 = flag.distribution(DistributionName::D(7))?;
        rows.push(bound_row(
            "flags.complex_structure",
            params.clone(),
            j.structure_residual(&d7.basis),
            strict,
            "J^2 = -Id and J orthogonal on D7".to_string(),
        ));
        let mut invariance: f64 = 0.0;
        for (name, inv_want, cr_want) in GOLDEN_VERDICTS {
            let d = flag.distribution(name)?;
            invariance = invariance.max(flag.isotropy_invariance_residual(&d));
            let label = name.label();
            let p = json!({ "m": m, "s": s, "r": r, "distribution": label });
            let inv = is_involutive(&flag, &d);
            let source = if ASSERTED_INVOLUTIVE.contains(&name) { "asserted" } else { "golden" };
            rows.push(row(
                "flags.involutive",
                p.clone(),
                Status::from_bool(inv.verdict == inv_want),
                inv.max_residual,
                MEMBERSHIP_TOL,
                format!("verdict {} ({source}: {inv_want})", inv.verdict),
            ));
            if let Some(cr_want) = cr_want {
                let cr = is_cr_integrable(&flag, &d, &j)?;
                let source = if ASSERTED_CR.contains(&name) { "asserted" } else { "golden" };
                rows.push(row(
                    "flags.cr_integrable",
                    p,
                    Status::from_bool(cr.verdict == cr_want),
                    cr.max_residual,
                    MEMBERSHIP_TOL,
                    format!("verdict {} ({source}: {cr_want})", cr.verdict),
                ));
            }
        }
        rows.push(bound_row(
            "flags.isotropy_invariance",
            params,
            invariance,
            strict,
            "ad(h) preserves every distribution".to_string(),
        ));
    }
    Ok(rows)
}

fn curvature_suite(config: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let trials = config.trials.unwrap_or(100);
    let mut rows = Vec::new();
    for n in config.dims(4..=8) {
        for r in config.twists(1..=3) {
            log::info!("curvature n={n} r={r}");
            for identity in Identity::ALL {
                if identity == Identity::ThetaPairing && r < 2 {
                    continue;
                }
                let rep = run_trials(identity, n, r, config.seed, trials, config.tolerance)?;
                rows.push(row(
                    &format!("curvature.{}", identity.name()),
                    json!({ "n": n, "r": r, "trials": trials }),
                    Status::from_bool(rep.pass),
                    rep.max_residual,
                    config.tolerance,
                    format!("{trials} random curvature tensors and spinors"),
                ));
            }
            let nc = negative_control(n, r, config.seed, trials, NEGATIVE_CONTROL_THRESHOLD);
            let miss = 1.0 - nc.ricci_fraction();
            rows.push(row(
                "curvature.negative_control",
                json!({ "n": n, "r": r, "trials": trials }),
                Status::from_bool(nc.ricci_fraction() >= NEGATIVE_CONTROL_RATE),
                miss,
                1.0 - NEGATIVE_CONTROL_RATE,
                format!(
                    "non-Bianchi tensors: Ricci residual > {:e} in {}/{trials}, Bianchi in {}/{trials}, min {:.2e}",
                    NEGATIVE_CONTROL_THRESHOLD, nc.ricci_exceeded, nc.bianchi_exceeded, nc.min_ricci_residual
                ),
            ));
        }
        let r = config.r.unwrap_or(1);
        let mut rng = trial_rng(config.seed ^ 0x636f_6e73, n as u64);
        let phi = TwistedSpinor::random_unit(TwistedSpinorSpace::new(n, r), &mut rng);
        let cc = constant_curvature_check(n, &phi)?;
        rows.push(bound_row(
            "curvature.constant_curvature",
            json!({ "n": n, "r": r }),
            cc.ricci_residual.max(cc.scalar_residual).max(cc.identity_residual),
            config.strict(),
            format!(
                "Ric = (n-1) Id {:.1e}, R = n(n-1) {:.1e}, identity {:.1e}",
                cc.ricci_residual, cc.scalar_residual, cc.identity_residual
            ),
        ));
    }
    Ok(rows)
}

fn torus_suite(config: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let strict = config.strict();
    let cutoff = config.modes.unwrap_or(4);
    let dims = match (&config.holonomy, config.n) {
        (Some(a), None) => vec![a.len()],
        _ => config.dims(2..=4),
    };
    let mut rows = Vec::new();
    for n in dims {
        for r in config.twists(1..=2) {
            log::info!("torus n={n} r={r} K={cutoff}");
            let holonomies = match &config.holonomy {
                Some(a) => vec![a.clone()],
                None => {
                    let mut shifted = vec![0.0; n];
                    shifted[0] = TORUS_SHIFT;
                    vec![vec![0.0; n], shifted]
                }
            };
            let full = sigma_dim(r) << (n / 2);
            for a in holonomies {
                let model = TorusModel::new(n, r, a.clone(), cutoff)?;
                let params = json!({ "n": n, "r": r, "modes": cutoff, "holonomy": a });
                let trivial = a.iter().all(|&x| x == 0.0);

                rows.push(bound_row(
                    "torus.sl_flat",
                    params.clone(),
                    verify_sl_flat(&model),
                    strict,
                    "D^2 = nabla* nabla on random fields".to_string(),
                ));
                let mutated = verify_sl_flat_variant(&model, DiracVariant::FlippedGenerator(0));
                rows.push(row(
                    "torus.sl_mutation",
                    params.clone(),
                    Status::from_bool(mutated > MUTATION_FLOOR),
                    mutated,
                    MUTATION_FLOOR,
                    "negative control: flipping one generator must break the formula".to_string(),
                ));

                let got = dirac_spectrum(&model);
                let want = expected_dirac_spectrum(&model);
                let dist = spectrum_distance(&got, &want);
                rows.push(bound_row(
                    "torus.spectrum",
                    params.clone(),
                    dist,
                    config.tolerance,
                    format!(
                        "{} distinct eigenvalues, total multiplicity {}; expected +-|k+a| with multiplicity {} per sign",
                        got.eigenvalues.len(),
                        got.total_multiplicity(),
                        full / 2
                    ),
                ));

                let kernel = harmonic_kernel(&model);
                let zero_mode = model.modes().iter().any(|k| model.shifted(k).norm() == 0.0);
                let want_dim = if zero_mode { full } else { 0 };
                let res = kernel.parallel_residual.max(kernel.laplacian_residual);
                rows.push(row(
                    "torus.kernel",
                    params.clone(),
                    Status::from_bool(kernel.dimension == want_dim && res < config.tolerance),
                    res,
                    config.tolerance,
                    format!("dimension {} (expected {want_dim}), trivial holonomy {trivial}", kernel.dimension),
                ));

                let bound = eigenvalue_bound_check(&model);
                rows.push(row(
                    "torus.bound",
                    params,
                    Status::from_bool(bound.pass),
                    0.0,
                    0.0,
                    format!(
                        "min lambda^2 {:.3e} >= {}, attained {}, kernel dim {}",
                        bound.min_lambda_sq, bound.bound_rhs, bound.bound_attained, bound.kernel_dim
                    ),
                ));
            }
        }
    }
    Ok(rows)
}
