use hpr::hg;
use hpr_core::generators::{random_kgraph, GenSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_then_parse_is_identity(k in 2usize..5, n in 1usize..14, p in 0.0f64..1.0, seed in any::<u64>()) {
        prop_assume!(n >= k);
        let h = random_kgraph(&GenSpec { k, n, p, seed }).unwrap();
        let text = hg::format(&h);
        let back = hg::parse(&text).unwrap();
        prop_assert_eq!(back.digest(), h.digest());
        prop_assert_eq!(hg::format(&back), text);
    }

    #[test]
    fn edge_and_vertex_order_do_not_matter(seed in any::<u64>(), rot in 0usize..64) {
        let h = random_kgraph(&GenSpec { k: 3, n: 9, p: 0.4, seed }).unwrap();
        let mut lines: Vec<String> = h
            .edges_lex()
            .map(|e| e.iter().rev().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        if !lines.is_empty() {
            let r = rot % lines.len();
            lines.rotate_left(r);
        }
        let text = format!("# shuffled\n3 9\n{}\n", lines.join("\n"));
        prop_assert_eq!(hg::parse(&text).unwrap().digest(), h.digest());
    }
}
