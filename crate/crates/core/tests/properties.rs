use proptest::prelude::*;

use tcframe::catalog::{pi_exponent, so_ring, surface_ring};
use tcframe::cuplength::{cup_length, cup_length_by_search, zcl_basic, zcl_full, zero_divisor_generators, Limits};
use tcframe::{Algebra, FieldSpec, GeneratorSpec};

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::rationals()),
        Just(FieldSpec::f2()),
        Just(FieldSpec::new(3).unwrap()),
        Just(FieldSpec::new(5).unwrap()),
    ]
}

/// Random truncated polynomial algebras of dimension at most 64.
fn algebra(max_gens: usize) -> impl Strategy<Value = Algebra> {
    (field(), prop::collection::vec((1u32..=4, 2u32..=4), 1..=max_gens)).prop_map(|(f, raw)| {
        let gens = raw
            .into_iter()
            .enumerate()
            .map(|(k, (deg, trunc))| {
                let trunc = if !f.is_char_two() && deg % 2 == 1 { 2 } else { trunc };
                GeneratorSpec::new(format!("x{k}"), deg, trunc)
            })
            .collect();
        Algebra::monomial(f, gens).unwrap()
    })
}

fn pair(max_gens: usize) -> impl Strategy<Value = (Algebra, Algebra)> {
    algebra(max_gens).prop_flat_map(move |a| {
        let f = a.field();
        let b = algebra(max_gens).prop_map(move |b| {
            let gens = b.generators().unwrap().to_vec();
            let gens = gens
                .into_iter()
                .map(|g| {
                    let t = if !f.is_char_two() && g.degree % 2 == 1 {
                        2
                    } else {
                        g.truncation
                    };
                    GeneratorSpec::new(format!("y{}", &g.name[1..]), g.degree, t)
                })
                .collect();
            Algebra::monomial(f, gens).unwrap()
        });
        (Just(a), b)
    })
}

fn as_table(a: &Algebra) -> Algebra {
    let basis = (0..a.dim()).map(|i| (a.basis_name(i), a.degree_of(i))).collect();
    let mut products = Vec::new();
    for i in 1..a.dim() {
        for j in 1..a.dim() {
            for (k, c) in a.mul_basis(i, j) {
                products.push((i, j, k, c));
            }
        }
    }
    Algebra::table(a.field(), basis, products).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutative_and_associative(a in algebra(3), i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let (i, j, k) = (i.index(a.dim()), j.index(a.dim()), k.index(a.dim()));
        let (x, y, z) = (a.basis_element(i), a.basis_element(j), a.basis_element(k));
        let odd = a.degree_of(i) % 2 == 1 && a.degree_of(j) % 2 == 1;
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap().scale(&a.field().sign(odd)));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn odd_elements_square_to_zero(a in algebra(3), coeffs in prop::collection::vec(-3i64..=3, 64)) {
        prop_assume!(!a.field().is_char_two());
        for d in (1..=a.top_degree()).step_by(2) {
            let terms = a
                .basis_indices_in_degree(d)
                .iter()
                .zip(&coeffs)
                .map(|(&i, &c)| (i, a.field().from_i64(c)));
            let x = a.element(terms).unwrap();
            prop_assert!(x.mul(&x).unwrap().is_zero(), "degree {}", d);
        }
    }

    #[test]
    fn poincare_is_multiplicative((a, b) in pair(2)) {
        let (pa, pb) = (a.poincare_polynomial(), b.poincare_polynomial());
        let mut prod = vec![0u64; pa.len() + pb.len() - 1];
        for (x, cx) in pa.iter().enumerate() {
            for (y, cy) in pb.iter().enumerate() {
                prod[x + y] += cx * cy;
            }
        }
        prop_assert_eq!(a.tensor(&b).unwrap().poincare_polynomial(), prod);
    }

    #[test]
    fn table_and_monomial_agree(a in algebra(3)) {
        prop_assume!(a.dim() <= 16);
        let t = as_table(&a);
        prop_assert_eq!(t.dim(), a.dim());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                prop_assert_eq!(t.mul_basis(i, j), a.mul_basis(i, j));
            }
        }
        let limits = Limits::default();
        prop_assert_eq!(cup_length(&t, &limits).unwrap().value, cup_length(&a, &limits).unwrap().value);
    }

    #[test]
    fn zero_divisor_chain(a in algebra(2)) {
        prop_assume!(a.dim() * a.dim() <= 256);
        let limits = Limits::default();
        let full = zcl_full(&a, &limits).unwrap();
        let basic = zcl_basic(&a, &limits).unwrap();
        let cl = cup_length(&a, &limits).unwrap();
        prop_assert!(full.value >= basic.value && basic.value >= cl.value);
        prop_assert!(full.verify() && basic.verify() && cl.verify());
        // the basic zero-divisors generate the whole ideal
        prop_assert_eq!(full.value, basic.value);
    }

    #[test]
    fn cup_length_is_additive((a, b) in pair(2)) {
        let limits = Limits::default();
        let t = a.tensor(&b).unwrap();
        let sum = cup_length(&a, &limits).unwrap().value + cup_length(&b, &limits).unwrap().value;
        prop_assert_eq!(cup_length(&t, &limits).unwrap().value, sum);
        prop_assert_eq!(cup_length_by_search(&t, &limits).unwrap().value, sum);
    }

    #[test]
    fn zcl_is_additive((a, b) in pair(2)) {
        prop_assume!(a.dim() * b.dim() <= 32);
        let limits = Limits::default();
        let t = a.tensor(&b).unwrap();
        let sum = zcl_full(&a, &limits).unwrap().value + zcl_full(&b, &limits).unwrap().value;
        prop_assert_eq!(zcl_full(&t, &limits).unwrap().value, sum);
    }

    #[test]
    fn square_of_basic_zero_divisor(a in algebra(3), u in any::<prop::sample::Index>()) {
        prop_assume!(a.dim() > 1 && a.dim() * a.dim() <= 4096);
        let limits = Limits::default();
        let zd = zero_divisor_generators(&a, &limits).unwrap();
        let pos = a.positive_basis();
        let u = pos[u.index(pos.len())];
        let idx = zd.monomials.iter().position(|&m| m == u).unwrap();
        let bar = &zd.elements[idx];
        let (one, ue) = (a.one(), a.basis_element(u));
        let u2 = ue.mul(&ue).unwrap();
        let c = if a.degree_of(u) % 2 == 0 { 2 } else { 0 };
        let rhs = zd
            .cross(&one, &u2)
            .unwrap()
            .sub(&zd.cross(&ue, &ue).unwrap().scale(&a.field().from_i64(c)))
            .unwrap()
            .add(&zd.cross(&u2, &one).unwrap())
            .unwrap();
        prop_assert_eq!(bar.mul(bar).unwrap(), rhs);
    }
}

#[test]
fn so_ring_dimensions() {
    for n in 1..=12u64 {
        let odd = so_ring(n, FieldSpec::rationals()).unwrap();
        assert_eq!(odd.dim(), 1 << (n / 2), "n = {n}");
        let two = so_ring(n, FieldSpec::f2()).unwrap();
        let expected: u64 = (1..n).step_by(2).map(|i| pi_exponent(i, n).unwrap()).product();
        assert_eq!(two.dim() as u64, expected, "n = {n}");
    }
}

#[test]
fn surfaces_pass_validation() {
    for g in 1..=8 {
        for f in [FieldSpec::rationals(), FieldSpec::f2()] {
            surface_ring(g, f).unwrap().check_axioms().unwrap();
        }
    }
}
