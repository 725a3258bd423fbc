use curvelab_core::groebner::{groebner, ideal_member, IdealBasis};
use curvelab_core::hilbert::{acc_explore, hilbert_function, hilbert_poly};
use curvelab_core::mpoly::MPoly;
use curvelab_core::multiplicity::{bezout_sum_audit, local_mult, DEFAULT_N_MAX};
use curvelab_core::{Error, Fp, Rational};
use proptest::prelude::*;

fn q(s: &str) -> MPoly<Rational> {
    MPoly::parse(s, 3, &()).unwrap()
}

#[test]
fn twisted_cubic_ideal() {
    let i = IdealBasis::<Rational>::parse(&["x2-x1^2", "x3-x1^3"], 3, &()).unwrap();
    let gb = groebner(&i).unwrap();
    assert!(gb.contains(&q("x1*x3-x2^2")).unwrap());
    assert!(!gb.contains(&q("x1*x2-x3+1")).unwrap());
    // a curve of degree 3: HP(t) = 3t + 1
    let hp = hilbert_poly(&i).unwrap();
    assert_eq!(
        hp.hp_coeffs[..2],
        [Rational::from_integer(1), Rational::from_integer(3)]
    );
    assert!(hp.hp_coeffs[2..]
        .iter()
        .all(|c| *c == Rational::from_integer(0)));
}

#[test]
fn points_have_constant_hilbert_polynomial() {
    // the four points of (x1^2 - 1, x2^2 - 1, x3)
    let i = IdealBasis::<Rational>::parse(&["x1^2-1", "x2^2-1", "x3"], 3, &()).unwrap();
    assert_eq!(hilbert_function(&i, 10).unwrap(), 4);
    let pts: Vec<_> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|&(a, b)| [a, b, 0].map(Rational::from_integer))
        .collect();
    let fs = [q("x1^2-1"), q("x2^2-1"), q("x3")];
    let audit = bezout_sum_audit(&fs, &pts, DEFAULT_N_MAX).unwrap();
    assert!(audit.equality);
}

#[test]
fn non_isolated_point_is_reported() {
    let fs = [q("x1"), q("x2"), q("x1*x2")];
    let origin = [0, 0, 0].map(Rational::from_integer);
    assert_eq!(
        local_mult(&fs, &origin, 10).unwrap_err(),
        Error::NotIsolated(10)
    );
}

#[test]
fn stable_chain_over_fp() {
    let p = 101;
    let i = |s: &str| IdealBasis::<Fp>::parse(&[s], 3, &p).unwrap();
    let rep = acc_explore(&[i("x1*x2"), i("x2*x3"), i("x1*x2*x3")]).unwrap();
    assert_eq!(rep.r0, Some(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Sums of products with the generators always lie in the ideal.
    #[test]
    fn combinations_are_members(a in 0i64..5, b in -3i64..4, c in 1i64..4) {
        let gens = ["x1^2-x2", "x2*x3-x1"];
        let i = IdealBasis::<Rational>::parse(&gens, 3, &()).unwrap();
        let f = &(&q(&format!("{a}*x3+{b}")) * &q(gens[0])) + &(&q(&format!("x1^{c}")) * &q(gens[1]));
        prop_assert!(ideal_member(&f, &i).unwrap());
        let g = &f + &q("1");
        prop_assert!(!ideal_member(&g, &i).unwrap());
    }

    /// Adding a generator never increases the Hilbert function.
    #[test]
    fn hilbert_function_antitone(e1 in 0u16..3, e2 in 0u16..3, e3 in 0u16..3, t in 0u32..9) {
        let small = IdealBasis::<Rational>::parse(&["x1^2*x2-x3"], 3, &()).unwrap();
        let extra = format!("x1^{e1}*x2^{e2}*x3^{e3}+x1");
        let big = small.sum(&IdealBasis::parse(&[extra.as_str()], 3, &()).unwrap()).unwrap();
        prop_assert!(hilbert_function(&big, t).unwrap() <= hilbert_function(&small, t).unwrap());
    }

    /// Multiplicity of a coordinate-monomial system at the origin.
    #[test]
    fn monomial_system_multiplicity(a in 1u16..4, b in 1u16..4, c in 1u16..4) {
        let fs = [q(&format!("x1^{a}")), q(&format!("x2^{b}")), q(&format!("x3^{c}+x1*x2"))];
        let origin = [0, 0, 0].map(Rational::from_integer);
        prop_assert_eq!(local_mult(&fs, &origin, DEFAULT_N_MAX).unwrap().value, (a * b * c) as usize);
    }
}
