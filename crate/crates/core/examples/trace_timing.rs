use std::time::Instant;

use hyperee_core::{gen_hyperpath, gen_hyperstar, TraceBudget, TraceEngine, UniformHypergraph};

fn main() {
    for (name, h, max_d) in [
        ("hyperstar(3,2)", gen_hyperstar(3, 2).unwrap(), 80),
        ("hyperstar(4,1)", gen_hyperstar(4, 1).unwrap(), 108),
        ("hyperpath(3,3)", gen_hyperpath(3, 3).unwrap(), 24),
        ("hyperpath(3,4)", gen_hyperpath(3, 4).unwrap(), 24),
        (
            "all triples on 4 vertices",
            UniformHypergraph::new(3, 4, [[0usize, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
                .unwrap(),
            32,
        ),
        (
            "Fano plane",
            UniformHypergraph::from_one_based(
                3,
                7,
                [
                    [1usize, 2, 3],
                    [1, 4, 5],
                    [1, 6, 7],
                    [2, 4, 6],
                    [2, 5, 7],
                    [3, 4, 7],
                    [3, 5, 6],
                ],
            )
            .unwrap(),
            15,
        ),
    ] {
        let engine = TraceEngine::new(&h, TraceBudget::default());
        let start = Instant::now();
        let seq = engine.sequence(max_d).unwrap();
        println!(
            "{name}: Tr_0..Tr_{max_d} in {:.2?}; Tr_{max_d} = {}",
            start.elapsed(),
            seq.values[max_d]
        );
    }
}
