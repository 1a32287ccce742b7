use pencil::kronecker::{kronecker_form, kronecker_type, parse_type, EigenvalueClass};
use pencil::pencil::{block_delta, block_finite, block_infinite, direct_sum, random_equivalence};
use pencil::{Pencil, Q};

fn check_witness(p: &Pencil) {
    let (form, w) = kronecker_form(p).unwrap();
    let can = form.canonical_pencil();
    assert_eq!(p.apply_equivalence(&w).unwrap(), can);
    assert_eq!((form.rows(), form.cols()), (p.m(), p.n()));
}

#[test]
fn jordan_block_has_single_class() {
    let p = block_finite(2, &Q::from_int(5)).unwrap();
    let (form, w) = kronecker_form(&p).unwrap();
    assert_eq!(form.segre_blocks().len(), 1);
    assert_eq!(form.segre_blocks()[0].sizes, vec![2]);
    assert_eq!(
        form.segre_blocks()[0].eigenvalue.value(),
        Some(Q::from_int(5))
    );
    assert_eq!(p.apply_equivalence(&w).unwrap(), p);
}

#[test]
fn zero_one_by_one() {
    let p = Pencil::from_ints(&[&[0]], &[&[0]]);
    assert_eq!(kronecker_type(&p).to_string(), "u1 d1");
    check_witness(&p);
}

#[test]
fn equivalent_image_recovers_form() {
    let base = direct_sum(&[block_delta(2).unwrap(), block_infinite(1).unwrap()]);
    let w = random_equivalence(base.m(), base.n(), 11);
    let p = base.apply_equivalence(&w).unwrap();
    let (f0, _) = kronecker_form(&base).unwrap();
    let (f1, _) = kronecker_form(&p).unwrap();
    assert_eq!(f0, f1);
    assert!(f1.segre_blocks()[0].eigenvalue == EigenvalueClass::Infinite);
    check_witness(&p);
}

#[test]
fn conjugate_pair() {
    let p = Pencil::from_ints(&[&[1, 0], &[0, 1]], &[&[0, 1], &[2, 0]]);
    assert_eq!(kronecker_type(&p), parse_type("e{1} e{1}").unwrap());
    check_witness(&p);
}

#[test]
fn round_trip_small_types() {
    for m in 0..=4 {
        for n in 0..=4 {
            for t in pencil::strata::all_types(m, n) {
                let can = t.representative().canonical_pencil();
                let w = random_equivalence(m, n, (m * 10 + n) as u64);
                let p = can.apply_equivalence(&w).unwrap();
                assert_eq!(kronecker_type(&p), t, "{m}x{n} {t}");
                check_witness(&p);
            }
        }
    }
}
