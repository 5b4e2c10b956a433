use octa_core::module::{Context, FpObject};
use octa_core::stable::{
    cone, is_distinguished, is_distinguished_by_enumeration, shift_morphism, triangle_direct_sum, StableMorphism,
    Triangle,
};

fn ctx(p: i64) -> Context {
    Context::new(p, 6).unwrap()
}

fn obj(c: &Context, e: &[u32]) -> FpObject {
    FpObject::from_exponents(c, e).unwrap()
}

fn st(c: &Context, s: &[u32], t: &[u32], rows: Vec<Vec<i64>>) -> StableMorphism {
    StableMorphism::from_rows(c, &obj(c, s), &obj(c, t), rows).unwrap()
}

/// Z/p^3 -p^k-> Z/p^3 -(1, p^{3-k})-> Z/p^k + Z/p^{6-k} -(-p^{3-k}, 1)-> Z/p^3
fn multiplication_triangle(c: &Context, k: u32) -> Triangle {
    let p = c.p();
    let q = p.pow(3 - k);
    Triangle::new(
        st(c, &[3], &[3], vec![vec![p.pow(k)]]),
        st(c, &[3], &[k, 6 - k], vec![vec![1, q]]),
        st(c, &[k, 6 - k], &[3], vec![vec![-q], vec![1]]),
    )
    .unwrap()
}

#[test]
fn cone_objects_of_multiplication_by_powers_of_p() {
    for p in [2, 3] {
        let c = ctx(p);
        let t = cone(&st(&c, &[3], &[3], vec![vec![p]])).unwrap();
        assert_eq!(t.z(), &obj(&c, &[1, 5]));
        let t = cone(&st(&c, &[3], &[3], vec![vec![p * p]])).unwrap();
        assert_eq!(t.z(), &obj(&c, &[2, 4]));
    }
}

#[test]
fn displayed_triangles_are_distinguished() {
    for p in [2, 3] {
        let c = ctx(p);
        for k in [1, 2] {
            let t = multiplication_triangle(&c, k);
            let report = is_distinguished(&t).unwrap();
            assert!(report.distinguished, "{t}: {:?}", report.failure);
            assert!(is_distinguished_by_enumeration(&t).unwrap());
        }
    }
}

#[test]
fn zero_connecting_map_is_rejected() {
    let c = ctx(2);
    let t = multiplication_triangle(&c, 1);
    let broken = Triangle::new(t.f.clone(), t.g.clone(), StableMorphism::zero(&c, t.z(), t.h.target())).unwrap();
    assert!(!is_distinguished(&broken).unwrap().distinguished);
    assert!(!is_distinguished_by_enumeration(&broken).unwrap());
    // over p = 2 the sign is invisible on the Z/p summand, so use p = 3
    let t = multiplication_triangle(&ctx(3), 1);
    let negated = Triangle::new(t.f.clone(), t.g.clone(), t.h.neg()).unwrap();
    assert!(!is_distinguished(&negated).unwrap().distinguished);
    assert!(!is_distinguished_by_enumeration(&negated).unwrap());
}

#[test]
fn cone_of_identity_is_contractible() {
    let c = ctx(3);
    let x = obj(&c, &[1, 4]);
    let t = cone(&StableMorphism::identity(&c, &x)).unwrap();
    assert!(t.z().is_stably_zero());
    assert!(is_distinguished(&t).unwrap().distinguished);
}

#[test]
fn direct_sums_of_triangles() {
    let c = ctx(2);
    let t1 = multiplication_triangle(&c, 1);
    let t2 = multiplication_triangle(&c, 2);
    let s = triangle_direct_sum(&t1, &t2).unwrap();
    assert_eq!(s.z(), &obj(&c, &[1, 2, 4, 5]));
    assert!(is_distinguished(&s).unwrap().distinguished);
    let twice = triangle_direct_sum(&t1, &t1).unwrap();
    assert_eq!(twice.y(), &obj(&c, &[3, 3]));
    assert_eq!(twice.z(), &obj(&c, &[1, 1, 5, 5]));
    assert!(is_distinguished(&twice).unwrap().distinguished);

    // uneven exponents make the reordering of h non-trivial
    let u1 = cone(&st(&c, &[1], &[2], vec![vec![2]])).unwrap();
    let u2 = cone(&st(&c, &[4, 5], &[5], vec![vec![2], vec![1]])).unwrap();
    let s = triangle_direct_sum(&u1, &u2).unwrap();
    assert!(is_distinguished(&s).unwrap().distinguished);
    assert_eq!(s.h.target(), &s.x().shift());

    let z = FpObject::zero(&c);
    let zero_f = StableMorphism::zero(&c, &z, &z);
    let zero_t = Triangle::new(zero_f.clone(), zero_f.clone(), zero_f).unwrap();
    assert_eq!(triangle_direct_sum(&t1, &zero_t).unwrap(), t1);
}

#[test]
fn cone_maps_compose_to_zero() {
    let c = ctx(2);
    let f = st(&c, &[2, 5], &[1, 3, 4], vec![vec![1, 2, 4], vec![1, 3, 2]]);
    let t = cone(&f).unwrap();
    for comp in t.composites().unwrap() {
        assert!(comp.is_zero());
    }
    assert_eq!(t.h.target(), &f.source().shift());
    let _ = shift_morphism(&f);
}
