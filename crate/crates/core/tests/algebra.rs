use proptest::prelude::*;
use qzeta_core::arith::{cyclotomic, CycloProduct};
use qzeta_core::roots::{find_roots, SOLVE_TOL};
use qzeta_core::{CycRat, Field, Poly, Rat, RatFunc};

fn small_poly(max_len: usize) -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(-6i64..=6, 0..max_len).prop_map(|cs| Poly::from_i64s(&cs))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly<Rat>> {
    small_poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn cyc8() -> impl Strategy<Value = CycRat> {
    prop::collection::vec(-4i64..=4, 4)
        .prop_map(|cs| CycRat::from_coords(8, cs.into_iter().map(Rat::from).collect()).unwrap())
}

#[test]
fn x_pow_minus_one_splits() {
    for n in 1..=36u64 {
        let prod = CycloProduct::x_pow_minus_one(n).expand::<Rat>();
        let direct = (1..=n)
            .filter(|d| n % d == 0)
            .fold(Poly::one(), |acc, d| &acc * &cyclotomic::<Rat>(d).unwrap());
        assert_eq!(prod, direct, "n = {n}");
        assert_eq!(prod, Poly::x_pow_minus_one(n as usize));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_laws(a in small_poly(5), b in nonzero_poly(5), c in small_poly(4), d in nonzero_poly(4)) {
        let x = RatFunc::new(a, b).unwrap();
        let y = RatFunc::new(c, d).unwrap();
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.inv().unwrap(), x.clone());
        }
        // canonical form: reduced with monic denominator
        prop_assert!(x.num().gcd(x.den()).unwrap().is_constant());
        prop_assert!(x.den().lead().unwrap().is_one());
    }

    #[test]
    fn cyclotomic_field_inverse(a in cyc8()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul_ref(&a.inverse().unwrap()).is_one());
    }

    #[test]
    fn integer_roots_recovered(rs in prop::collection::vec(-9i64..=9, 1..7)) {
        let p = rs.iter().fold(Poly::<Rat>::one(), |acc, &r| &acc * &Poly::from_i64s(&[-r, 1]));
        let mut got: Vec<f64> = find_roots(&p, SOLVE_TOL).unwrap().iter().map(|f| {
            assert!(f.z.im.abs() < 1e-6);
            f.z.re
        }).collect();
        got.sort_by(f64::total_cmp);
        let mut want: Vec<f64> = rs.iter().map(|&r| r as f64).collect();
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() < 1e-6, "{} vs {}", g, w);
        }
    }
}
