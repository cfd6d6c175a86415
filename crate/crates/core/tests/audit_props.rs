mod common;

use common::{any_hypergraph, subset};
use hpr_core::audit::{
    audit, audit_jumbled, audit_pseudo_random, estimate_second_eigenvalue, jumbled_to_pseudo, AuditMode, Criterion,
    PseudoParams, Verdict,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn failing_witnesses_recheck(h in any_hypergraph(3, 12), seed in any::<u64>(), p in 0.05f64..0.95) {
        let r = audit_pseudo_random(&h, PseudoParams::new(p, 0.05, 0.1).unwrap(), AuditMode::Sampled, 40, seed).unwrap();
        if let Some(w) = r.worst_violation {
            prop_assert_eq!(w.recheck(&h).unwrap(), w.edges);
        }
        let j = audit_jumbled(&h, p, 0.5, AuditMode::Sampled, 40, seed).unwrap();
        if j.verdict == Verdict::Fail {
            let w = j.worst_violation.unwrap();
            prop_assert_eq!(w.recheck(&h).unwrap(), w.edges);
            prop_assert!(w.violates);
        }
    }

    #[test]
    fn small_tuples_stay_close_when_large_ones_do(h in any_hypergraph(2, 6), eps in 0.3f64..1.0, alpha in 0.2f64..0.6) {
        let n = h.n();
        let p = h.degree_report().density;
        prop_assume!(p > 0.0);
        let params = PseudoParams::new(p, alpha, eps).unwrap();
        let r = audit_pseudo_random(&h, params, AuditMode::Exhaustive, 0, 0).unwrap();
        prop_assume!(r.verdict == Verdict::Pass);
        let bound = (1.0 + eps) * p * alpha * (n * n) as f64;
        for a in 0..1u64 << n {
            for b in 0..1u64 << n {
                let (sa, sb) = (subset(n, a), subset(n, b));
                let prod = (sa.len() * sb.len()) as f64;
                if prod >= alpha * (n * n) as f64 {
                    continue;
                }
                let e = h.labelled_edge_count(&[&sa, &sb]).unwrap() as f64;
                prop_assert!((e - p * prod).abs() <= bound + 1e-9, "A={a:b} B={b:b} e={e} p∏={}", p * prod);
            }
        }
    }

    #[test]
    fn jumbled_pass_implies_pseudo_pass(h in any_hypergraph(2, 6), beta in 0.5f64..3.0, eps in 0.2f64..1.0) {
        let n = h.n();
        let p = h.degree_report().density;
        prop_assume!(p > 0.0);
        let j = audit_jumbled(&h, p, beta, AuditMode::Exhaustive, 0, 0).unwrap();
        prop_assume!(j.verdict == Verdict::Pass);
        let alpha = jumbled_to_pseudo(p, beta, eps, n, 2).unwrap();
        prop_assume!(alpha <= 1.0);
        let r = audit(&h, Criterion::PseudoRandom { p, alpha, eps }, AuditMode::Exhaustive, 0, 0, u64::MAX).unwrap();
        prop_assert_ne!(r.verdict, Verdict::Fail);
    }
}

#[test]
fn spectral_estimate_matches_exact_on_small_graphs() {
    use hpr_core::generators::{random_kgraph, GenSpec};
    for seed in 0..40u64 {
        let n = 3 + (seed % 6) as usize;
        let h = random_kgraph(&GenSpec { k: 2, n, p: 0.5, seed }).unwrap();
        if h.edge_count() == 0 {
            continue;
        }
        let r = estimate_second_eigenvalue(&h, 200, 20, seed);
        let exact = r.exact.expect("k = 2 has an exact value");
        assert!((r.lambda2 - exact.lambda2).abs() <= 1e-9, "seed {seed}: {} vs {}", r.lambda2, exact.lambda2);
    }
}
