use num_traits::{One, Zero};
use proptest::prelude::*;

use pencil::bifurcation::{classify, paper_cases};
use pencil::deformation::{instantiate, miniversal_template, Variant};
use pencil::io::{pencil_from_json, pencil_to_json};
use pencil::kronecker::{kronecker_form, kronecker_type, KroneckerType};
use pencil::pencil::{
    block_delta, block_finite, block_infinite, block_nabla, direct_sum, jiggle, random_equivalence,
    EquivalenceWitness,
};
use pencil::poly::{discriminant_in_x, poly_gcd, squarefree_decomposition, BiPoly, UniPoly};
use pencil::strata::{enumerate_types, is_e1, stratum_codimension};
use pencil::{Matrix, Pencil, Q};

fn scalar() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=12, -30i64..=30, 1i64..=12)
        .prop_map(|(a, b, c, d)| &Q::ratio(a, b) + &(&Q::ratio(c, d) * &Q::i()))
}

fn gauss_int() -> impl Strategy<Value = Q> {
    (-4i64..=4, -2i64..=2).prop_map(|(a, b)| Q::from_ints(a, b))
}

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(gauss_int(), 1..=max_deg + 1).prop_map(UniPoly::new)
}

/// A block: kind (0 △, 1 ▽, 2 finite, 3 ∞), size, eigenvalue index.
type BlockSpec = (u8, usize, i64);

fn block(&(kind, size, ev): &BlockSpec) -> Pencil {
    match kind {
        0 => block_delta(size).unwrap(),
        1 => block_nabla(size).unwrap(),
        2 => block_finite(size, &Q::from_int(ev)).unwrap(),
        _ => block_infinite(size).unwrap(),
    }
}

fn blocks(
    max_dim: usize,
    eigenvalues: std::ops::Range<i64>,
) -> impl Strategy<Value = Vec<BlockSpec>> {
    prop::collection::vec((0u8..4, 1usize..=3, eigenvalues), 0..6).prop_map(move |mut v| {
        let fits = |v: &[BlockSpec]| {
            let p = direct_sum(&v.iter().map(block).collect::<Vec<_>>());
            p.m() <= max_dim && p.n() <= max_dim
        };
        while !fits(&v) {
            v.pop();
        }
        v
    })
}

fn assemble(v: &[BlockSpec]) -> Pencil {
    direct_sum(&v.iter().map(block).collect::<Vec<_>>())
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        p.swap(i, (s >> 33) as usize % (i + 1));
    }
    p
}

fn permutation_matrix(p: &[usize]) -> Matrix {
    Matrix::from_fn(p.len(), p.len(), |i, j| {
        if p[i] == j {
            Q::one()
        } else {
            Q::zero()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a), &Q::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Q::one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn gcd_scales_by_common_factor(p in poly(4), q in poly(4), r in poly(4)) {
        prop_assume!(!r.is_zero() && !(p.is_zero() && q.is_zero()));
        let lhs = poly_gcd(&(&p * &r), &(&q * &r));
        let rhs = (&r * &poly_gcd(&p, &q)).monic();
        prop_assert_eq!(lhs.monic(), rhs);
    }

    #[test]
    fn squarefree_reassembles(f in poly(2), g in poly(2), h in poly(3)) {
        let p = &(&f * &g.pow(2)) * &(&h * &f);
        prop_assume!(!p.is_constant());
        let parts = squarefree_decomposition(&p).unwrap();
        let mut prod = UniPoly::one();
        for (q, e) in &parts {
            prop_assert!(q.is_squarefree());
            prod = &prod * &q.pow(*e as u32);
        }
        prop_assert_eq!(prod.monic(), p.monic());
    }

    #[test]
    fn discriminant_detects_repeated_roots(
        c in prop::collection::vec(gauss_int(), 3),
        b0 in -2i64..=2,
        g0 in -2i64..=2,
    ) {
        // (x − b)(x − g)(x − c0) + c1·x·b·g + c2  with x-coefficients in b, g.
        let (b, g) = (BiPoly::b(), BiPoly::g());
        let c0 = BiPoly::constant(c[0].clone());
        let x0 = &(&(&b * &g) * &c0).scale(&-Q::one()) + &BiPoly::constant(c[2].clone());
        let x1 = &(&(&b * &g) + &(&(&b + &g) * &c0)) + &(&b * &g).scale(&c[1]);
        let x2 = (&(&b + &g) + &c0).scale(&-Q::one());
        let coeffs = vec![x0, x1, x2, BiPoly::one()];
        let d = discriminant_in_x(&coeffs).unwrap();
        let (bq, gq) = (Q::from_int(b0), Q::from_int(g0));
        let u = UniPoly::new(coeffs.iter().map(|k| k.eval(&bq, &gq)).collect());
        let repeated = poly_gcd(&u, &u.derivative()).degree().unwrap_or(0) > 0;
        prop_assert_eq!(d.eval(&bq, &gq).is_zero(), repeated);
    }

    #[test]
    fn equivalences_compose(v in blocks(5, 0..3), s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = assemble(&v);
        let w1 = random_equivalence(p.m(), p.n(), s1);
        let w2 = random_equivalence(p.m(), p.n(), s2);
        let stepwise = p.apply_equivalence(&w1).unwrap().apply_equivalence(&w2).unwrap();
        prop_assert_eq!(stepwise, p.apply_equivalence(&w1.then(&w2)).unwrap());
        let back = p.apply_equivalence(&w1).unwrap().apply_equivalence(&w1.inverse()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn direct_sums_and_permutations(
        a in blocks(3, 0..3),
        b in blocks(3, 0..3),
        c in blocks(3, 0..3),
        seed in any::<u64>(),
    ) {
        let (pa, pb, pc) = (assemble(&a), assemble(&b), assemble(&c));
        let left = direct_sum(&[direct_sum(&[pa.clone(), pb.clone()]), pc.clone()]);
        let right = direct_sum(&[pa, direct_sum(&[pb, pc])]);
        prop_assert_eq!(&left, &right);

        let pr = permutation_matrix(&permutation(left.m(), seed));
        let pc = permutation_matrix(&permutation(left.n(), seed ^ 0x55));
        let w = EquivalenceWitness::new(pr, pc).unwrap();
        prop_assert_eq!(kronecker_type(&left.apply_equivalence(&w).unwrap()), kronecker_type(&left));
    }

    #[test]
    fn swapping_summands_keeps_type(a in blocks(4, 0..3), b in blocks(4, 0..3)) {
        let (pa, pb) = (assemble(&a), assemble(&b));
        prop_assert_eq!(
            kronecker_type(&direct_sum(&[pa.clone(), pb.clone()])),
            kronecker_type(&direct_sum(&[pb, pa]))
        );
    }

    #[test]
    fn jiggle_stays_within_eps(v in blocks(4, 0..3), seed in any::<u64>(), k in 1i64..=50) {
        let p = assemble(&v);
        let eps = Q::ratio(1, k);
        let q = jiggle(&p, eps.re(), seed).unwrap();
        let d = &p.to_vector();
        for (x, y) in d.iter().zip(q.to_vector()) {
            let diff = &y - x;
            prop_assert!(diff.max_abs_part() <= *eps.re());
        }
        prop_assert!(is_e1(&kronecker_type(&q)));
    }

    #[test]
    fn pencil_json_round_trips(v in blocks(4, 0..3), seed in any::<u64>()) {
        let p = assemble(&v);
        let p = p.apply_equivalence(&random_equivalence(p.m(), p.n(), seed)).unwrap();
        let text = serde_json::to_string(&pencil_to_json(&p)).unwrap();
        prop_assert_eq!(pencil_from_json(&serde_json::from_str(&text).unwrap()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn type_is_an_equivalence_invariant(v in blocks(8, 0..3), seed in any::<u64>()) {
        let p = assemble(&v);
        let q = p.apply_equivalence(&random_equivalence(p.m(), p.n(), seed)).unwrap();
        let (form, w) = kronecker_form(&q).unwrap();
        prop_assert_eq!((form.rows(), form.cols()), (q.m(), q.n()));
        prop_assert_eq!(form.kronecker_type(), kronecker_type(&p));
        prop_assert_eq!(q.apply_equivalence(&w).unwrap(), form.canonical_pencil());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn type_is_additive(a in blocks(4, 0..3), b in blocks(4, 10..13), seed in any::<u64>()) {
        // Disjoint eigenvalues, and ∞ only on one side, so the union is well defined.
        let b: Vec<BlockSpec> = b.into_iter().map(|(k, s, e)| (if k == 3 { 2 } else { k }, s, e)).collect();
        let (pa, pb) = (assemble(&a), assemble(&b));
        let sum = direct_sum(&[pa.clone(), pb.clone()]);
        let sum = sum.apply_equivalence(&random_equivalence(sum.m(), sum.n(), seed)).unwrap();
        prop_assert_eq!(kronecker_type(&sum), kronecker_type(&pa).union(&kronecker_type(&pb)));
    }
}

fn small_types() -> Vec<KroneckerType> {
    let mut out = Vec::new();
    for m in 0..=4 {
        for n in 0..=4 {
            out.extend(pencil::strata::all_types(m, n));
        }
    }
    out
}

#[test]
fn zero_instantiation_is_the_base_and_shifts_keep_the_type() {
    for t in small_types() {
        let tm = miniversal_template(&t.representative()).unwrap();
        for variant in [Variant::M, Variant::Mprime, Variant::Mdoubleprime] {
            let zeros = vec![Q::zero(); tm.parameter_count(variant)];
            assert_eq!(instantiate(&tm, variant, &zeros).unwrap(), tm.base, "{t}");
        }
        let k = tm.parameter_count(Variant::Mdoubleprime);
        let live = tm.live_slots(Variant::Mdoubleprime).len();
        for j in live..k {
            let mut vals = vec![Q::zero(); k];
            vals[j] = Q::ratio(1, 7);
            let p = instantiate(&tm, Variant::Mdoubleprime, &vals).unwrap();
            assert_eq!(kronecker_type(&p), t, "shift {j} of {t}");
        }
    }
}

#[test]
fn codimension_does_not_depend_on_eigenvalues() {
    let choices: [fn(usize) -> Q; 3] = [
        |k| Q::ratio(-3 * k as i64 - 1, 2),
        |k| Q::from_ints(k as i64, 1),
        |k| Q::ratio(k as i64 * k as i64 + 5, 3),
    ];
    for m in 0..=5 {
        for n in 0..=5 {
            for t in pencil::strata::all_types(m, n) {
                let c = stratum_codimension(&t);
                for f in choices {
                    let form = t.representative_with(f);
                    let (total, stratum) = pencil::codimension(&form).unwrap();
                    assert_eq!(stratum, c, "{t}");
                    assert_eq!(
                        total,
                        pencil::deformation::orbit_codimension(&form.canonical_pencil())
                    );
                }
            }
        }
    }
}

#[test]
fn enumeration_is_monotone() {
    for m in 0..=5 {
        for n in 0..=5 {
            for k in 0..2 {
                let small = enumerate_types(m, n, k);
                let big = enumerate_types(m, n, k + 1);
                assert!(small.iter().all(|d| big.contains(d)), "{m}x{n} k={k}");
            }
        }
    }
}

#[test]
fn jiggled_representatives_are_generic() {
    for m in 0..=4 {
        for n in 0..=4 {
            for (i, d) in enumerate_types(m, n, 2).into_iter().enumerate() {
                let p = d.ktype.representative().canonical_pencil();
                let q = jiggle(&p, Q::ratio(1, 10).re(), i as u64).unwrap();
                let t = kronecker_type(&q);
                assert!(is_e1(&t), "{} jiggled to {t}", d.ktype);
                assert_eq!(stratum_codimension(&t), 0);
            }
        }
    }
}

#[test]
fn classify_is_deterministic_and_scale_invariant() {
    let ids = [
        "t21.1", "t21.5", "t22.1", "t22.6", "t22.7", "t22.8", "t22.9",
    ];
    for id in ids {
        for case in paper_cases(id, 1, 2).unwrap() {
            let f = &case.family;
            let d = classify(f, 11).unwrap();
            assert_eq!(classify(f, 11).unwrap(), d, "{id}");
            let other = classify(f, 12345).unwrap();
            assert_eq!(other.origin_type, d.origin_type);
            assert_eq!(other.generic_type(), d.generic_type());
            let types = |x: &pencil::BifurcationDiagram| {
                let mut v: Vec<String> = x
                    .curves()
                    .into_iter()
                    .map(|(p, t)| format!("{p}:{t:?}"))
                    .collect();
                v.sort();
                v
            };
            assert_eq!(types(&other), types(&d), "{id}");
            assert_eq!(
                classify(&f.scale(&Q::from_ints(-2, 3)), 11).unwrap(),
                d,
                "{id}"
            );
        }
    }
}
