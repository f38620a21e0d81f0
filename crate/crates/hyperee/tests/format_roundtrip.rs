mod common;

use hyperee::{parse_hypergraph, serialize_hypergraph};
use hyperee_core::UniformHypergraph;
use proptest::prelude::*;

fn hypergraphs() -> impl Strategy<Value = UniformHypergraph> {
    (2usize..=5, 0usize..=6)
        .prop_flat_map(|(m, extra)| {
            let n = m + extra;
            let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), m);
            (
                Just(m),
                Just(n),
                proptest::collection::btree_set(edge, 0..12),
            )
        })
        .prop_map(|(m, n, edges)| UniformHypergraph::new(m, n, edges).unwrap())
}

proptest! {
    #[test]
    fn parse_inverts_serialize(h in hypergraphs()) {
        let text = serialize_hypergraph(&h);
        prop_assert_eq!(parse_hypergraph(&text).unwrap(), h);
    }

    #[test]
    fn comments_and_edge_order_do_not_matter(h in hypergraphs(), seed in any::<u64>()) {
        let text = serialize_hypergraph(&h);
        let mut lines: Vec<&str> = text.lines().collect();
        let header = lines.remove(0);
        // Deterministic shuffle driven by the seed.
        let mut s = seed;
        for i in (1..lines.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            lines.swap(i, (s >> 33) as usize % (i + 1));
        }
        let noisy = format!("# generated\n\n{header}\n{}\n# end\n", lines.join("\n  # between\n"));
        prop_assert_eq!(parse_hypergraph(&noisy).unwrap(), h);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "[0-9 #\n]{0,60}") {
        let _ = parse_hypergraph(&text);
    }
}

#[test]
fn corpus_files_are_canonical_after_one_pass() {
    for (name, h) in common::file_instances() {
        let text = serialize_hypergraph(&h);
        assert_eq!(parse_hypergraph(&text).unwrap(), h, "{name}");
        assert_eq!(
            serialize_hypergraph(&parse_hypergraph(&text).unwrap()),
            text,
            "{name}"
        );
    }
}
