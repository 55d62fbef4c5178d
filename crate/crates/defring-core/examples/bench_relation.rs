use defring_core::deform::{compute_relation, delta_witness, DeformParams};
use std::time::Instant;

fn main() {
    for cap in [6u32, 8] {
        let t0 = Instant::now();
        let mut terms = 0usize;
        for l in 0..2 {
            for m in 0..2 {
                for k in 0..2 {
                    let rel = compute_relation(&DeformParams::from_ints(l, m, k, cap));
                    terms += rel.entries().iter().map(|f| f.num_terms()).sum::<usize>();
                }
            }
        }
        println!(
            "relation cap {cap}: 8 tuples in {:?} ({terms} total terms)",
            t0.elapsed()
        );
    }
    let t0 = Instant::now();
    let w = delta_witness(&DeformParams::from_ints(1, 1, 1, 6));
    println!(
        "delta witness cap 6: {:?} holds={} idem={}",
        t0.elapsed(),
        w.witness_holds(),
        w.idempotent_holds()
    );
    let t0 = Instant::now();
    let w = delta_witness(&DeformParams::from_ints(1, 1, 1, 8));
    println!(
        "delta witness cap 8: {:?} holds={} idem={}",
        t0.elapsed(),
        w.witness_holds(),
        w.idempotent_holds()
    );
}
