use pencil::kronecker::kronecker_type;
use pencil::pencil::random_equivalence;
use pencil::strata::all_types;

/// Every type fitting 8 × 8, each under three seeded equivalences.
#[test]
fn every_type_up_to_eight_is_recovered() {
    let mut failures = Vec::new();
    for m in 0..=8 {
        for n in 0..=8 {
            for t in all_types(m, n) {
                let canon = t.representative().canonical_pencil();
                for seed in 0..3u64 {
                    let p = canon
                        .apply_equivalence(&random_equivalence(m, n, 77 + seed))
                        .unwrap();
                    let got = kronecker_type(&p);
                    if got != t {
                        failures.push(format!("{t} (seed {seed}) read back as {got}"));
                    }
                }
            }
        }
    }
    assert!(failures.is_empty(), "{failures:?}");
}
