//! Brute-force oracle for the flag-manifold verdicts, built from explicit
//! index formulas instead of projections, and the golden table it produced.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use spinlab::flag::{flag_report, DistributionName, ASSERTED_CR, ASSERTED_INVOLUTIVE, GOLDEN_VERDICTS};

/// Skew matrix with upper-triangle entries `(i, j) -> v`.
fn upper(n: usize, entries: &[(usize, usize, f64)]) -> DMatrix<f64> {
    let mut x = DMatrix::zeros(n, n);
    for &(i, j, v) in entries {
        x[(i, j)] += v;
        x[(j, i)] -= v;
    }
    x
}

struct Oracle {
    n: usize,
    h: Vec<DMatrix<f64>>,
    /// (summand index 0..4, element, J(element) when complex)
    summands: Vec<Vec<(DMatrix<f64>, Option<DMatrix<f64>>)>>,
}

impl Oracle {
    /// Layout `[2m | r | s=1]`; summands ordered Λ², C⊗R^s, C⊗R^r, R^s⊗R^r.
    fn new(m: usize, r: usize) -> Self {
        let n = 2 * m + r + 1;
        let last = n - 1;
        let mut h = Vec::new();
        for a in 0..m {
            h.push(upper(n, &[(2 * a, 2 * a + 1, 1.0)]));
            for b in a + 1..m {
                h.push(upper(n, &[(2 * a, 2 * b, 1.0), (2 * a + 1, 2 * b + 1, 1.0)]));
                h.push(upper(n, &[(2 * a, 2 * b + 1, 1.0), (2 * a + 1, 2 * b, -1.0)]));
            }
        }
        for k in 0..r {
            for l in k + 1..r {
                h.push(upper(n, &[(2 * m + k, 2 * m + l, 1.0)]));
            }
        }
        let mut lam = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let x1 = upper(n, &[(2 * a, 2 * b, 1.0), (2 * a + 1, 2 * b + 1, -1.0)]);
                let x2 = upper(n, &[(2 * a, 2 * b + 1, 1.0), (2 * a + 1, 2 * b, 1.0)]);
                lam.push((x1.clone(), Some(x2.clone())));
                lam.push((x2, Some(-x1)));
            }
        }
        let column = |c: usize| {
            (0..m)
                .flat_map(|p| {
                    let x1 = upper(n, &[(2 * p, c, 1.0)]);
                    let x2 = upper(n, &[(2 * p + 1, c, 1.0)]);
                    [(x1.clone(), Some(x2.clone())), (x2, Some(-x1))]
                })
                .collect::<Vec<_>>()
        };
        let cs = column(last);
        let cr: Vec<_> = (0..r).flat_map(|k| column(2 * m + k)).collect();
        let rr: Vec<_> = (0..r).map(|k| (upper(n, &[(2 * m + k, last, 1.0)]), None)).collect();
        Oracle {
            n,
            h,
            summands: vec![lam, cs, cr, rr],
        }
    }

    fn elements(&self, idx: &[usize]) -> Vec<(DMatrix<f64>, Option<DMatrix<f64>>)> {
        idx.iter().flat_map(|&i| self.summands[i].iter().cloned()).collect()
    }
}

fn rank(cols: &[DMatrix<C64>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let n = cols[0].nrows();
    let m = DMatrix::from_fn(n * n, cols.len(), |p, c| cols[c][(p / n, p % n)]);
    let sv = m.svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|s| **s > 1e-9 * max.max(1.0)).count()
}

fn complexify(x: &DMatrix<f64>) -> DMatrix<C64> {
    x.map(C64::from)
}

/// `[D, D] ⊆ D ⊕ h` by a rank count.
fn oracle_involutive(o: &Oracle, idx: &[usize]) -> bool {
    let d: Vec<_> = o.elements(idx).into_iter().map(|(x, _)| complexify(&x)).collect();
    let mut span: Vec<_> = d.clone();
    span.extend(o.h.iter().map(complexify));
    let base = rank(&span);
    for a in 0..d.len() {
        for b in a + 1..d.len() {
            let mut ext = span.clone();
            ext.push(&d[a] * &d[b] - &d[b] * &d[a]);
            if rank(&ext) > base {
                return false;
            }
        }
    }
    true
}

/// `[D^{1,0}, D^{1,0}] ⊆ D^{1,0} ⊕ h_C` with `D^{1,0} = {X − iJX}`.
fn oracle_cr(o: &Oracle, idx: &[usize]) -> bool {
    let z: Vec<DMatrix<C64>> = o
        .elements(idx)
        .into_iter()
        .map(|(x, jx)| complexify(&x) - complexify(&jx.expect("complex summand")) * C64::i())
        .collect();
    let mut span = z.clone();
    span.extend(o.h.iter().map(complexify));
    let base = rank(&span);
    for a in 0..z.len() {
        for b in a + 1..z.len() {
            let mut ext = span.clone();
            ext.push(&z[a] * &z[b] - &z[b] * &z[a]);
            if rank(&ext) > base {
                return false;
            }
        }
    }
    true
}

fn summand_indices(name: DistributionName) -> Vec<usize> {
    let base: Vec<usize> = match name {
        DistributionName::D(1) | DistributionName::Complement(1) => vec![0],
        DistributionName::D(2) | DistributionName::Complement(2) => vec![2],
        DistributionName::D(3) | DistributionName::Complement(3) => vec![1],
        DistributionName::D(4) | DistributionName::Complement(4) => vec![0, 2],
        DistributionName::D(5) | DistributionName::Complement(5) => vec![0, 1],
        DistributionName::D(6) | DistributionName::Complement(6) => vec![1, 2],
        _ => vec![0, 1, 2],
    };
    match name {
        DistributionName::D(_) => base,
        DistributionName::Complement(_) => (0..4).filter(|i| !base.contains(i)).collect(),
    }
}

const GRID: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];

#[test]
fn oracle_construction_is_sound() {
    for (m, r) in GRID {
        let o = Oracle::new(m, r);
        let n = o.n;
        let dims: Vec<_> = o.summands.iter().map(|s| s.len()).collect();
        assert_eq!(dims, vec![m * (m - 1), 2 * m, 2 * m * r, r]);
        let mut all: Vec<_> = o.h.iter().map(complexify).collect();
        all.extend(o.summands.iter().flatten().map(|(x, _)| complexify(x)));
        assert_eq!(rank(&all), n * (n - 1) / 2);
        // J² = −1: each pair (X, JX) has JX listed with image −X.
        for (x, jx) in o.summands.iter().flatten() {
            if let Some(jx) = jx {
                let (y, jy) = o
                    .summands
                    .iter()
                    .flatten()
                    .find(|(y, _)| y == jx || *y == -jx)
                    .expect("J image listed");
                let jjx = if y == jx { jy.clone().unwrap() } else { -jy.clone().unwrap() };
                assert_eq!(jjx, -x);
            }
        }
    }
}

#[test]
fn oracle_reproduces_golden_table() {
    for (m, r) in GRID {
        let o = Oracle::new(m, r);
        for (name, inv, cr) in GOLDEN_VERDICTS {
            let label = name.label();
            let idx = summand_indices(name);
            assert_eq!(oracle_involutive(&o, &idx), inv, "{label} ({m},{r})");
            if let Some(cr) = cr {
                assert_eq!(oracle_cr(&o, &idx), cr, "{label} ({m},{r})");
            }
        }
    }
}

#[test]
fn golden_table_contains_asserted_verdicts() {
    let order: Vec<_> = GOLDEN_VERDICTS.iter().map(|g| g.0).collect();
    assert_eq!(order, DistributionName::all());
    for (name, inv, cr) in GOLDEN_VERDICTS {
        if ASSERTED_INVOLUTIVE.contains(&name) {
            assert!(inv, "{}", name.label());
        }
        if ASSERTED_CR.contains(&name) {
            assert_eq!(cr, Some(true), "{}", name.label());
        }
    }
}

#[test]
fn library_matches_golden_table() {
    for (m, r) in GRID {
        let rows = flag_report(m, r).unwrap();
        for (row, (name, inv, cr)) in rows.iter().zip(GOLDEN_VERDICTS) {
            let label = name.label();
            assert_eq!(row.distribution, label);
            assert_eq!(row.involutive, Some(inv), "{label} ({m},{r})");
            assert_eq!(row.cr_integrable, cr, "{label} ({m},{r})");
        }
    }
}
