//! Property tests for the kernel invariants.

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use slope_core::estimators::{debias, lasso_orthogonal, ols, slope_orthogonal};
use slope_core::patterns::{self, pattern_equal, pattern_of, validate_pattern, PatternVector};
use slope_core::sorted_l1::{dual_norm, in_dual_ball, prox_sorted_l1, project_dual_ball, sorted_l1_norm};
use slope_core::{LinearModel, TuningVector};

fn lam_vec(p: usize) -> impl Strategy<Value = TuningVector> {
    prop::collection::vec(0.0f64..5.0, p).prop_map(|mut v| {
        v.sort_by(|a, b| b.total_cmp(a));
        v[0] += 0.1;
        TuningVector::new(v).expect("sorted positive-leading vector is valid")
    })
}

fn point_vec(p: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, p)
}

/// Values on a coarse grid so exact ties actually occur.
fn gridded_vec(p: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-32i32..=32, p).prop_map(|v| v.into_iter().map(|x| x as f64 / 4.0).collect())
}

fn dims() -> impl Strategy<Value = usize> {
    1usize..=50
}

proptest! {
    #[test]
    fn moreau_identity_is_exact((y, lam) in dims().prop_flat_map(|p| (point_vec(p), lam_vec(p)))) {
        let prox = prox_sorted_l1(&y, &lam).unwrap();
        let cert = project_dual_ball(&y, &lam).unwrap();
        for i in 0..y.len() {
            // pi is the Moreau complement computed with the same arithmetic
            prop_assert_eq!(cert.pi[i].to_bits(), (y[i] - prox[i]).to_bits());
            prop_assert!((prox[i] + cert.pi[i] - y[i]).abs() <= 1e-14 * (1.0 + y[i].abs()));
        }
    }

    #[test]
    fn projection_certificate_holds((y, lam) in dims().prop_flat_map(|p| (point_vec(p), lam_vec(p)))) {
        let prox = prox_sorted_l1(&y, &lam).unwrap();
        let cert = project_dual_ball(&y, &lam).unwrap();
        prop_assert!(cert.slack.iter().all(|s| *s >= -1e-10), "slack {:?}", cert.slack);
        let pairing: f64 = cert.pi.iter().zip(prox.iter()).map(|(a, b)| a * b).sum();
        let j = sorted_l1_norm(&prox, &lam).unwrap();
        prop_assert!((pairing - j).abs() <= 1e-10 * (1.0 + j.abs()));
    }

    #[test]
    fn prox_scaling((y, lam, c) in dims().prop_flat_map(|p| (point_vec(p), lam_vec(p), 0.1f64..10.0))) {
        let base = prox_sorted_l1(&y, &lam).unwrap();
        let scaled_y: Vec<f64> = y.iter().map(|v| c * v).collect();
        let scaled = prox_sorted_l1(&scaled_y, &lam.scaled(c).unwrap()).unwrap();
        for i in 0..y.len() {
            prop_assert!((scaled[i] - c * base[i]).abs() <= 1e-11 * (1.0 + (c * base[i]).abs()));
        }
    }

    #[test]
    fn prox_preserves_signs_and_hierarchy((y, lam) in dims().prop_flat_map(|p| (point_vec(p), lam_vec(p)))) {
        let prox = prox_sorted_l1(&y, &lam).unwrap();
        for i in 0..y.len() {
            prop_assert!(prox[i] * y[i] >= 0.0);
            for j in 0..y.len() {
                if y[i].abs() > y[j].abs() {
                    prop_assert!(prox[i].abs() >= prox[j].abs());
                }
            }
        }
    }

    #[test]
    fn prox_constant_lambda_is_soft_threshold((y, t) in dims().prop_flat_map(|p| (point_vec(p), 0.01f64..6.0))) {
        let lam = TuningVector::constant(t, y.len()).unwrap();
        let prox = prox_sorted_l1(&y, &lam).unwrap();
        for i in 0..y.len() {
            let expected = y[i].signum() * (y[i].abs() - t).max(0.0);
            let expected = if y[i] == 0.0 { 0.0 } else { expected };
            prop_assert_eq!(prox[i].to_bits(), expected.to_bits());
        }
    }

    #[test]
    fn dual_norm_is_a_norm((x, z, lam, t) in dims().prop_flat_map(|p| (point_vec(p), point_vec(p), lam_vec(p), -4.0f64..4.0))) {
        let nx = dual_norm(&x, &lam).unwrap();
        let nz = dual_norm(&z, &lam).unwrap();
        // absolute homogeneity
        let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
        let ntx = dual_norm(&tx, &lam).unwrap();
        prop_assert!((ntx - t.abs() * nx).abs() <= 1e-10 * (1.0 + ntx.abs()));
        // triangle inequality
        let sum: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a + b).collect();
        let nsum = dual_norm(&sum, &lam).unwrap();
        prop_assert!(nsum <= nx + nz + 1e-10 * (1.0 + nx + nz));
        // gauge/ball equivalence away from the boundary
        let tol = 1e-12 * lam.sum();
        if nx < 1.0 - 1e-9 {
            prop_assert!(in_dual_ball(&x, &lam, tol).unwrap());
        }
        if nx > 1.0 + 1e-9 {
            prop_assert!(!in_dual_ball(&x, &lam, tol).unwrap());
        }
    }
}

// --- pattern properties -----------------------------------------------------

fn raw_pattern(p: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(-3i32..=3, p).prop_filter("ranks must cover 1..max", |v| {
        let k = v.iter().map(|m| m.unsigned_abs()).max().unwrap_or(0);
        (1..=k).all(|r| v.iter().any(|m| m.unsigned_abs() == r))
    })
}

fn descending_values(k: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..2.0, k).prop_map(|gaps| {
        let mut v: Vec<f64> = gaps
            .iter()
            .rev()
            .scan(0.0, |acc, g| {
                *acc += g;
                Some(*acc)
            })
            .collect();
        v.reverse();
        v
    })
}

/// A nonzero valid pattern together with strictly descending positive
/// cluster values.
fn pattern_with_values(max_p: usize) -> impl Strategy<Value = (Vec<i32>, Vec<f64>)> {
    (2usize..=max_p)
        .prop_flat_map(raw_pattern)
        .prop_filter("need a nonzero pattern", |e| e.iter().any(|m| *m != 0))
        .prop_flat_map(|entries| {
            let k = entries.iter().map(|m| m.unsigned_abs() as usize).max().unwrap();
            (Just(entries), descending_values(k))
        })
}

proptest! {
    #[test]
    fn pattern_round_trip((entries, v) in pattern_with_values(8)) {
        let m = PatternVector::from_entries(entries).unwrap();
        let u = patterns::pattern_matrix(&m).unwrap();
        let b = patterns::expand(&u, &v).unwrap();
        let back = pattern_of(&b, 0.0);
        prop_assert!(pattern_equal(&back, &m).unwrap());
    }

    #[test]
    fn pattern_scaling_invariance((b, c) in (1usize..=8).prop_flat_map(|p| (gridded_vec(p), 0.1f64..8.0))) {
        let scaled: Vec<f64> = b.iter().map(|v| c * v).collect();
        let m1 = pattern_of(&b, 0.0);
        let m2 = pattern_of(&scaled, 0.0);
        prop_assert!(pattern_equal(&m1, &m2).unwrap());
    }

    #[test]
    fn pattern_of_structural_facts(b in (1usize..=8).prop_flat_map(gridded_vec)) {
        let m = pattern_of(&b, 0.0);
        prop_assert!(validate_pattern(&m));
        let e = m.entries();
        for i in 0..b.len() {
            let sign_b = if b[i] > 0.0 { 1 } else if b[i] < 0.0 { -1 } else { 0 };
            prop_assert_eq!(e[i].signum(), sign_b);
            for j in 0..b.len() {
                if b[i].abs() == b[j].abs() {
                    prop_assert_eq!(e[i].abs(), e[j].abs());
                }
                if b[i].abs() > b[j].abs() {
                    prop_assert!(e[i].abs() > e[j].abs());
                }
            }
        }
    }

    #[test]
    fn single_cluster_pattern_matches_lasso_columns(signs in prop::collection::vec(-1i32..=1, 2..8)) {
        prop_assume!(signs.iter().any(|s| *s != 0));
        let m = PatternVector::from_entries(signs.clone()).unwrap();
        let s = patterns::SignVector::new(signs.iter().map(|v| *v as i8).collect()).unwrap();
        let p = signs.len();
        let x = DMatrix::<f64>::from_fn(p, p, |i, j| ((i * 31 + j * 17) % 7) as f64 - 3.0);
        // X·U_M is the row-sum collapse of X·U_S
        let xm = patterns::clustered_design(&x, &m).unwrap();
        let us = patterns::lasso_pattern_matrix(&s).unwrap();
        let xs = x.clone() * us.to_dense();
        for i in 0..p {
            let row_sum: f64 = xs.row(i).iter().sum();
            prop_assert!((xm[(i, 0)] - row_sum).abs() <= 1e-12 * (1.0 + row_sum.abs()));
        }
    }
}

// --- estimator properties ---------------------------------------------------

/// Random orthogonal design: a signed permutation scaled by s (X'X = s²·I).
fn orthogonal_model(p: usize) -> impl Strategy<Value = (LinearModel, f64)> {
    (
        Just(p),
        prop::collection::vec(prop::bool::ANY, p),
        0.5f64..3.0,
        prop::collection::vec(-10.0f64..10.0, p),
    )
        .prop_map(|(p, flips, s, y)| {
            let x = DMatrix::from_fn(p, p, |i, j| {
                if i == j {
                    if flips[i] {
                        -s
                    } else {
                        s
                    }
                } else {
                    0.0
                }
            });
            let model = LinearModel::new(x, DVector::from_vec(y)).unwrap();
            (model, s * s)
        })
}

proptest! {
    #[test]
    fn slope_certificate_projects_onto_dual_ball(((model, c), lam) in (1usize..=12).prop_flat_map(|p| (orthogonal_model(p), lam_vec(p)))) {
        let fit = slope_orthogonal(&model, &lam).unwrap();
        let ols_fit = ols(&model).unwrap();
        let cert = fit.certificate.as_ref().unwrap();
        // π* = c·(β̂OLS − β̂SLOPE) lies in C_Λ and pairs with the fit
        let scale_tol = 1e-10 * (1.0 + lam.sum());
        prop_assert!(cert.in_ball(scale_tol));
        for i in 0..model.p() {
            let expected = c * (ols_fit.beta[i] - fit.beta[i]);
            prop_assert!((cert.pi[i] - expected).abs() <= 1e-9 * (1.0 + expected.abs()));
        }
        let pairing: f64 = cert.pi.iter().zip(fit.beta.iter()).map(|(a, b)| a * b).sum();
        let j = sorted_l1_norm(&fit.beta, &lam).unwrap();
        prop_assert!((pairing - j).abs() <= 1e-9 * (1.0 + j.abs()));
    }

    #[test]
    fn slope_magnitudes_similarly_sorted_with_ols(((model, _), lam) in (1usize..=12).prop_flat_map(|p| (orthogonal_model(p), lam_vec(p)))) {
        let fit = slope_orthogonal(&model, &lam).unwrap();
        let ols_fit = ols(&model).unwrap();
        for i in 0..model.p() {
            for j in 0..model.p() {
                if ols_fit.beta[i].abs() > ols_fit.beta[j].abs() {
                    prop_assert!(fit.beta[i].abs() >= fit.beta[j].abs());
                }
            }
        }
    }

    #[test]
    fn optimal_objective_monotone_in_penalty(((model, _), lam, bumps) in (1usize..=10).prop_flat_map(|p| (orthogonal_model(p), lam_vec(p), prop::collection::vec(0.0f64..2.0, p)))) {
        let mut bigger: Vec<f64> = bumps;
        bigger.sort_by(|a, b| b.total_cmp(a));
        let lam_up = TuningVector::new(lam.iter().zip(&bigger).map(|(a, b)| a + b).collect()).unwrap();
        let lo = slope_orthogonal(&model, &lam).unwrap();
        let hi = slope_orthogonal(&model, &lam_up).unwrap();
        prop_assert!(lo.objective <= hi.objective + 1e-9 * (1.0 + hi.objective.abs()));
    }

    #[test]
    fn lasso_is_constant_slope(((model, _), t) in (1usize..=12).prop_flat_map(|p| (orthogonal_model(p), 0.01f64..8.0))) {
        let a = lasso_orthogonal(&model, t).unwrap();
        let b = slope_orthogonal(&model, &TuningVector::constant(t, model.p()).unwrap()).unwrap();
        for i in 0..model.p() {
            prop_assert_eq!(a.beta[i].to_bits(), b.beta[i].to_bits());
        }
    }

    #[test]
    fn debias_with_true_pattern_is_exact_noiseless(((entries, v), s) in (pattern_with_values(8), 0.5f64..3.0)) {
        let m = PatternVector::from_entries(entries).unwrap();
        let p = m.len();
        let u = patterns::pattern_matrix(&m).unwrap();
        let beta = patterns::expand(&u, &v).unwrap();
        let x = DMatrix::<f64>::identity(p, p) * s;
        let y = &x * DVector::from_column_slice(&beta);
        let model = LinearModel::new(x, y).unwrap();
        let fit = debias(&model, &m).unwrap();
        for i in 0..p {
            prop_assert!((fit.beta[i] - beta[i]).abs() <= 1e-10 * (1.0 + beta[i].abs()));
        }
    }
}

// --- condition checkers against the prox -------------------------------------

proptest! {
    #[test]
    fn cluster_condition_is_sound((y, lam, c) in (2usize..=8).prop_flat_map(|p| (point_vec(p), lam_vec(p), 0.25f64..4.0))) {
        let report = slope_core::theory::cluster_condition(&y, &lam, c).unwrap();
        let prox = prox_sorted_l1(&y, &lam.divided_by(c).unwrap()).unwrap();
        for (i, j) in &report.pairs {
            let a = prox[report.sort_order[*i]].abs();
            let b = prox[report.sort_order[*j]].abs();
            prop_assert_eq!(a.to_bits(), b.to_bits(), "flagged pair ({}, {}) differs: {} vs {}", i, j, a, b);
        }
    }

    #[test]
    fn support_conditions_match_prox_support((y, lam, p0) in (1usize..=8).prop_flat_map(|p| (point_vec(p), lam_vec(p), 0usize..=p))) {
        let report = slope_core::theory::support_conditions(&y, &lam, 1.0, p0).unwrap();
        prop_assert_eq!(report.all, report.cond_a && report.cond_b && report.cond_c);
        let prox = prox_sorted_l1(&y, &lam).unwrap();
        let support_is_leading = (0..y.len()).all(|i| (prox[i] != 0.0) == (i < p0));
        prop_assert_eq!(report.all, support_is_leading);
    }
}
