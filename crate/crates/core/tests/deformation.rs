use num_traits::Zero;
use pencil::deformation::{
    check_miniversal, check_transversal, codimension, instantiate, miniversal_template,
    orbit_codimension, stratum_tangent, tangent_space, Variant,
};
use pencil::kronecker::kronecker_type;
use pencil::strata::all_types;
use pencil::{Pencil, Q};

#[test]
fn template_matches_tangent_rank_small() {
    for m in 0..=4 {
        for n in 0..=4 {
            for t in all_types(m, n) {
                let f = t.representative();
                let tpl = miniversal_template(&f).unwrap();
                assert_eq!(tpl.slots.len(), orbit_codimension(&tpl.base), "{m}x{n} {t}");
                assert!(check_miniversal(&tpl, Variant::M).unwrap(), "{t}");
                assert!(
                    check_miniversal(&tpl, Variant::Mdoubleprime).unwrap(),
                    "{t}"
                );
                let rep = check_transversal(&tpl.directions(Variant::Mprime), &tpl.base).unwrap();
                assert!(rep.transversal && rep.direct, "{t}");
            }
        }
    }
}

#[test]
fn small_examples() {
    let p = Pencil::from_ints(&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]);
    assert_eq!(tangent_space(&p).rank(), 6);
    let f = pencil::kronecker::kronecker_form(&p).unwrap().0;
    assert_eq!(codimension(&f).unwrap(), (2, 1));
    let t = miniversal_template(&f).unwrap();
    assert_eq!(stratum_tangent(&t).rank(), 7);
    let q = instantiate(&t, Variant::Mdoubleprime, &[Q::zero(), Q::from_int(2)]).unwrap();
    assert_eq!(
        q,
        Pencil::from_ints(&[&[1, 0], &[0, 1]], &[&[2, 1], &[0, 2]])
    );
    assert_eq!(kronecker_type(&q), kronecker_type(&p));
}
