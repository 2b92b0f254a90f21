mod common;

use common::oracle::{self, rel_err};
use integral_core::stats::welch_t_test;
use integral_core::{
    aggregate_strategy_cost, build_window, check_budget, compare_strategies, correlation_matrix,
    generate_panel, indicator_trace, Block, BudgetConstraint, BudgetScope, BudgetViolations,
    CorrelationMode, Duty, LoadingMode, SanctionSchedule, SeriesPanel, ShockEvent, Strategy,
    SynthConfig, WindowSpec,
};

const FIXTURE: &str = include_str!("fixtures/panel_5x20.csv");

fn fixture() -> (SeriesPanel, Vec<String>, oracle::Series) {
    let (ids, series) = oracle::read_panel_csv(FIXTURE);
    (SeriesPanel::from_series(ids.clone(), series.clone()).unwrap(), ids, series)
}

fn fixture_strategy() -> Strategy {
    Strategy::new(
        "V_1^6 baseline",
        vec![
            Duty::new("concept_engineer_docs", ["design_docs_cost"]),
            Duty::new("concept_engineer_specs", ["tech_spec_cost", "design_docs_cost"]),
            Duty::new("facility_design_install", ["installation_cost", "supervision_cost"]),
            Duty::new("comprehensive_services", ["supervision_cost"]).with_compliance(false),
        ],
    )
    .unwrap()
    .with_active_periods("concept_engineer_specs", (5..=12).chain(18..=20))
    .unwrap()
}

/// Per-definition strategy cost over the raw fixture columns.
fn oracle_cost(series: &oracle::Series, t: usize) -> f64 {
    let docs = series[0][t - 1];
    let spec = series[1][t - 1];
    let install = series[2][t - 1];
    let supervision = series[4][t - 1];
    let specs_active = (5..=12).contains(&t) || (18..=20).contains(&t);
    let mut v = docs;
    if specs_active {
        v += spec + docs;
    }
    v + install + supervision
}

#[test]
fn strategy_cost_matches_oracle() {
    let (panel, _, series) = fixture();
    let strategy = fixture_strategy();
    let bound = strategy.bind(&panel).unwrap();
    let mut sum = 0.0;
    for t in 1..=20 {
        let v = bound.cost(&panel, t).unwrap();
        let expected = oracle_cost(&series, t);
        assert!(rel_err(v, expected) < 1e-12, "t={t}: {v} vs {expected}");
        sum += expected;
    }
    let total = aggregate_strategy_cost(&strategy, &panel).unwrap();
    assert!(rel_err(total, sum) < 1e-9);
}

#[test]
fn aggregate_cost_trivial_cases() {
    let zero = SeriesPanel::from_series(vec!["a".into()], vec![vec![0.0; 9]]).unwrap();
    let s = Strategy::new("s", vec![Duty::new("d", ["a"])]).unwrap();
    assert_eq!(aggregate_strategy_cost(&s, &zero).unwrap(), 0.0);
    let c = SeriesPanel::from_series(vec!["a".into()], vec![vec![2.5; 9]]).unwrap();
    assert_eq!(aggregate_strategy_cost(&s, &c).unwrap(), 2.5 * 9.0);
}

#[test]
fn budget_flags_top_decile_periods() {
    let (panel, _, series) = fixture();
    let totals: Vec<f64> = (0..20).map(|t| series.iter().map(|s| s[t]).sum()).collect();
    let mut sorted = totals.clone();
    sorted.sort_by(f64::total_cmp);
    // Nearest-rank 90th percentile of 20 values is the 18th smallest.
    let cap = sorted[17];
    let mut order: Vec<usize> = (0..20).collect();
    order.sort_by(|&a, &b| totals[b].total_cmp(&totals[a]));
    let mut top: Vec<usize> = order[..2].iter().map(|i| i + 1).collect();
    top.sort_unstable();

    let report = check_budget(&panel, &BudgetConstraint::new(cap, BudgetScope::PerPeriod).unwrap());
    assert_eq!(report, BudgetViolations::PerPeriod { periods: top });

    let grand: f64 = totals.iter().sum();
    let cumulative = check_budget(&panel, &BudgetConstraint::new(grand * 0.5, BudgetScope::Cumulative).unwrap());
    assert!(matches!(cumulative, BudgetViolations::Cumulative { exceeded: true, .. }));
}

#[test]
fn blocked_duty_delta_matches_brute_force() {
    let (panel, _, series) = fixture();
    let strategy = fixture_strategy();
    let schedule = SanctionSchedule::new(vec![Block::new("facility_design_install", 6, 13)]).unwrap();
    for (mode, pearson) in [(CorrelationMode::Pearson, true), (CorrelationMode::Literal, false)] {
        let spec = WindowSpec::new(6, mode).unwrap();
        let report = compare_strategies(&panel, &strategy, &strategy, &schedule, &spec, None).unwrap();

        let mut blocked = series.clone();
        for p in [2, 4] {
            for t in 6..=13 {
                blocked[p][t - 1] = 0.0;
            }
        }
        let (_, g1) = oracle::trace(&series, 6, pearson);
        let (_, g2) = oracle::trace(&blocked, 6, pearson);
        assert!(rel_err(report.g_values[0], g1) < 1e-9);
        assert!(rel_err(report.g_values[1], g2) < 1e-9);
        assert!(rel_err(report.delta_g, g2 - g1) < 1e-9, "{mode}: {} vs {}", report.delta_g, g2 - g1);
        assert_eq!(report.delta_g, report.g_values[1] - report.g_values[0]);
        assert_eq!(report.blocked_cells, 16);
    }
}

#[test]
fn report_values_equal_independent_recomputation() {
    let (panel, _, _) = fixture();
    let strategy = fixture_strategy();
    let schedule = SanctionSchedule::new(vec![Block::new("concept_engineer_docs", 1, 19)]).unwrap();
    let spec = WindowSpec::new(6, CorrelationMode::Pearson).unwrap();
    let report = compare_strategies(&panel, &strategy, &strategy, &schedule, &spec, None).unwrap();
    let g1 = indicator_trace(&panel, &spec).unwrap().g_total();
    let g2 = indicator_trace(&integral_core::apply_sanctions(&panel, &strategy, &schedule).unwrap(), &spec)
        .unwrap()
        .g_total();
    assert_eq!(report.g_values[0].to_bits(), g1.to_bits());
    assert_eq!(report.g_values[1].to_bits(), g2.to_bits());
    assert_eq!(report.delta_g.to_bits(), (g2 - g1).to_bits());
}

#[test]
fn generation_is_deterministic_and_seed_sensitive() {
    let cfg = SynthConfig {
        events: vec![ShockEvent { period: 34, fraction: 0.3, multiplier: 0.0 }],
        ..SynthConfig::new(50, 52, 3, 11)
    };
    let a = generate_panel(&cfg).unwrap();
    let b = generate_panel(&cfg).unwrap();
    assert!(a.values().iter().zip(b.values()).all(|(x, y)| x.to_bits() == y.to_bits()));
    let c = generate_panel(&SynthConfig { seed: 12, ..cfg.clone() }).unwrap();
    assert_ne!(a, c);

    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    assert_eq!(single.install(|| generate_panel(&cfg).unwrap()), a);
}

#[test]
fn vanishing_noise_with_equal_loadings_is_perfectly_correlated() {
    let cfg = SynthConfig {
        noise_scale: f64::MIN_POSITIVE,
        loadings: LoadingMode::Equal,
        ..SynthConfig::new(6, 20, 1, 3)
    };
    let panel = generate_panel(&cfg).unwrap();
    let spec = WindowSpec::new(6, CorrelationMode::Pearson).unwrap();
    for epoch in spec.epochs(panel.t_max()) {
        let r = correlation_matrix(&build_window(&panel, epoch, &spec).unwrap(), spec.mode);
        for v in r.entries() {
            assert!((v - 1.0).abs() < 1e-6, "epoch {epoch}: {v}");
        }
    }
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

#[test]
fn period_34_shock_shifts_epoch_totals() {
    let cfg = SynthConfig {
        events: vec![ShockEvent { period: 34, fraction: 0.3, multiplier: 0.0 }],
        ..SynthConfig::new(200, 52, 3, 34)
    };
    let panel = generate_panel(&cfg).unwrap();
    assert_eq!((panel.n(), panel.t_max()), (200, 52));
    assert!(panel.values().iter().all(|v| v.is_finite()));
    let trace = indicator_trace(&panel, &WindowSpec::new(6, CorrelationMode::Pearson).unwrap()).unwrap();
    let totals = trace.epoch_totals();
    let (before, after): (Vec<_>, Vec<_>) =
        trace.epochs().iter().zip(&totals).partition(|(&t, _)| t <= 34);
    let before: Vec<f64> = before.into_iter().map(|(_, &g)| g).collect();
    let after: Vec<f64> = after.into_iter().map(|(_, &g)| g).collect();
    let test = welch_t_test(&before, &after).unwrap();
    assert!(test.p_value < 0.05, "p = {}", test.p_value);
    assert!(mean(&after) < mean(&before));
}
