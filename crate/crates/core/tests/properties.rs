use duel_core::{profit, run_cycle, AggressionParams, BankParams, SimParams, TpProvider, Winner};
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = SimParams> {
    (
        1usize..60,
        0.05f64..0.95,
        0.1f64..10.0,
        0.1f64..3.0,
        0.1f64..3.0,
        0.1f64..5.0,
        prop_oneof![Just(0.5), Just(1.0), Just(1.5), 0.3f64..2.0],
        0.0f64..0.5,
        0.0f64..0.5,
        any::<bool>(),
    )
        .prop_map(|(periods, s0, scale, eh, em, c, mu, ap, aa, feed)| {
            let mut p = SimParams::default();
            p.periods = periods;
            p.initial_share_h = s0;
            p.initial_profit_scale = scale;
            p.firm_h.tech_exponent = eh;
            p.firm_m.tech_exponent = em;
            p.bank = BankParams {
                loan_scale: c,
                money_exponent: mu,
            };
            p.aggression = AggressionParams {
                alpha_protect: ap,
                alpha_attack: aa,
            };
            p.bonus_in_loan_base = feed;
            p
        })
}

/// Log-ratio recurrence with no bonuses: r_t = mu * r_{t-1} + (eh - em) ln tp_t.
fn closed_form_h_shares(p: &SimParams, tps: &[f64]) -> Vec<f64> {
    let mut r = (p.initial_share_h / (1.0 - p.initial_share_h)).ln();
    tps.iter()
        .map(|tp| {
            r = p.bank.money_exponent * r
                + (p.firm_h.tech_exponent - p.firm_m.tech_exponent) * tp.ln();
            1.0 / (1.0 + (-r).exp())
        })
        .collect()
}

proptest! {
    #[test]
    fn shares_are_normalized(p in params_strategy(), seed in any::<u64>()) {
        let t = run_cycle(&p, &TpProvider::seeded(seed)).unwrap();
        for r in &t.records {
            prop_assert!((r.h.market_share + r.m.market_share - 1.0).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&r.h.market_share));
            prop_assert!((0.0..=1.0).contains(&r.m.market_share));
            prop_assert!((1.0..=10.0).contains(&r.tp));
        }
    }

    #[test]
    fn runs_are_deterministic(p in params_strategy(), seed in any::<u64>()) {
        let a = run_cycle(&p, &TpProvider::seeded(seed)).unwrap();
        let b = run_cycle(&p, &TpProvider::seeded(seed)).unwrap();
        prop_assert_eq!(a.records, b.records);
        prop_assert_eq!(a.outcome, b.outcome);
    }

    #[test]
    fn replaying_the_tp_column_reproduces_the_run(p in params_strategy(), seed in any::<u64>()) {
        let seeded = run_cycle(&p, &TpProvider::seeded(seed)).unwrap();
        let replay = TpProvider::exogenous(seeded.tp_column()).unwrap();
        let replayed = run_cycle(&p, &replay).unwrap();
        prop_assert_eq!(seeded.records, replayed.records);
    }

    #[test]
    fn symmetric_firms_never_move(
        exp in 0.1f64..3.0,
        mu in 0.3f64..2.0,
        c in 0.1f64..5.0,
        seed in any::<u64>(),
    ) {
        let mut p = SimParams::default();
        p.periods = 100;
        p.initial_share_h = 0.5;
        p.firm_h.tech_exponent = exp;
        p.firm_m.tech_exponent = exp;
        p.bank = BankParams { loan_scale: c, money_exponent: mu };
        p.aggression = AggressionParams::NONE;
        let t = run_cycle(&p, &TpProvider::seeded(seed)).unwrap();
        prop_assert!(t.records.iter().all(|r| (r.h.market_share - 0.5).abs() <= 1e-12));
        prop_assert_eq!(t.outcome.winner, Winner::None);
    }

    #[test]
    fn loan_scale_does_not_move_shares_at_unit_money_exponent(
        p in params_strategy(),
        lambda in 0.01f64..100.0,
        seed in any::<u64>(),
    ) {
        let mut base = p;
        base.bank.money_exponent = 1.0;
        let mut scaled = base.clone();
        scaled.bank.loan_scale *= lambda;
        let a = run_cycle(&base, &TpProvider::seeded(seed)).unwrap();
        let b = run_cycle(&scaled, &TpProvider::seeded(seed)).unwrap();
        for (ra, rb) in a.records.iter().zip(&b.records) {
            prop_assert!((ra.h.market_share - rb.h.market_share).abs() <= 1e-12);
            // profits pick up one factor of lambda per period
            let expected = ra.h.profit.ln() + ra.period as f64 * lambda.ln();
            prop_assert!((rb.h.profit.ln() - expected).abs() <= 1e-9 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn matches_log_ratio_recurrence_without_bonuses(p in params_strategy(), seed in any::<u64>()) {
        let mut p = p;
        p.periods = 100;
        p.aggression = AggressionParams::NONE;
        let t = run_cycle(&p, &TpProvider::seeded(seed)).unwrap();
        let oracle = closed_form_h_shares(&p, &t.tp_column());
        for (r, want) in t.records.iter().zip(oracle) {
            prop_assert!((r.h.market_share - want).abs() <= 1e-9,
                "period {}: {} vs {}", r.period, r.h.market_share, want);
        }
    }

    #[test]
    fn profit_is_monotone(
        tp in 1.0f64..10.0, dtp in 0.0f64..5.0,
        e in 0.01f64..5.0, de in 0.0f64..2.0,
        inv in 0.0f64..100.0, dinv in 0.0f64..100.0,
    ) {
        let base = profit(tp, e, inv);
        prop_assert!(profit((tp + dtp).min(10.0), e, inv) >= base);
        prop_assert!(profit(tp, e + de, inv) >= base);
        prop_assert!(profit(tp, e, inv + dinv) >= base);
    }
}

/// Plain-f64 replica of one run written straight from the model equations,
/// without going through the crate's equation functions.
fn reference_run(p: &SimParams, tps: &[f64]) -> Vec<(f64, f64, f64, f64)> {
    let s0 = p.initial_share_h;
    let (mut ph, mut pm) = (
        p.initial_profit_scale * s0,
        p.initial_profit_scale * (1.0 - s0),
    );
    let mut hs = vec![s0];
    let mut ms = vec![1.0 - s0];
    let mut out = Vec::new();
    for &tp in tps {
        let inv_h = p.bank.loan_scale * ph.powf(p.bank.money_exponent);
        let inv_m = p.bank.loan_scale * pm.powf(p.bank.money_exponent);
        let prof_h = tp.powf(p.firm_h.tech_exponent) * inv_h;
        let prof_m = tp.powf(p.firm_m.tech_exponent) * inv_m;
        let n = ms.len();
        let protect = if n >= 3 && ms[n - 3] < ms[n - 2] && ms[n - 2] < ms[n - 1] {
            p.aggression.alpha_protect * prof_m
        } else {
            0.0
        };
        let n = hs.len();
        let attack = if n >= 2 && hs[n - 1] < hs[n - 2] {
            p.aggression.alpha_attack * prof_m
        } else {
            0.0
        };
        let total = prof_h + prof_m + protect + attack;
        let (sh, sm) = (prof_h / total, (prof_m + protect + attack) / total);
        hs.push(sh);
        ms.push(sm);
        ph = prof_h;
        pm = if p.bonus_in_loan_base {
            prof_m + protect + attack
        } else {
            prof_m
        };
        out.push((prof_h, prof_m, protect + attack, sh));
    }
    out
}

#[test]
fn engine_agrees_with_plain_reference_in_f64_range() {
    for seed in 0..40u64 {
        let mut p = SimParams::default();
        p.periods = 25;
        p.bank = BankParams {
            loan_scale: 0.5 + seed as f64 * 0.05,
            money_exponent: 1.0,
        };
        p.firm_h.tech_exponent = 0.8;
        p.firm_m.tech_exponent = 1.1;
        p.aggression = AggressionParams {
            alpha_protect: 0.3,
            alpha_attack: 0.2,
        };
        p.bonus_in_loan_base = seed % 2 == 0;
        let t = run_cycle(&p, &TpProvider::seeded(seed)).unwrap();
        let reference = reference_run(&p, &t.tp_column());
        for (r, (ph, pm, bonus, sh)) in t.records.iter().zip(reference) {
            let rel = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1e-300);
            assert!(
                rel(r.h.profit.amount(), ph),
                "seed {seed} period {}",
                r.period
            );
            assert!(rel(r.m.profit.amount(), pm));
            assert!(rel(r.protect_bonus.amount() + r.attack_bonus.amount(), bonus) || bonus == 0.0);
            assert!(
                (r.h.market_share - sh).abs() <= 1e-12,
                "seed {seed} period {}",
                r.period
            );
        }
    }
}

#[test]
fn explosive_lending_still_produces_exact_shares() {
    // With money exponent 2 profits leave the f64 range within ~10 periods.
    let mut p = SimParams::default();
    p.bank.money_exponent = 2.0;
    p.periods = 60;
    let t = run_cycle(&p, &TpProvider::seeded(11)).unwrap();
    assert!(t.records.iter().any(|r| !r.h.profit.fits_f64()));
    assert!(t.records.iter().all(|r| r.h.market_share.is_finite()));
    assert_ne!(t.outcome.winner, Winner::None);
}
