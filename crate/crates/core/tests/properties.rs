use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use salembeta::cofactor::routh::routh_stable_big;
use salembeta::cofactor::{disk_filter, routh_table};
use salembeta::expansion::{companion_to_digits, digits_to_companion, Expansion};
use salembeta::intpoly::{cyclotomic, IntPoly, RatPoly};

fn from_roots(roots: &[i64]) -> IntPoly {
    roots
        .iter()
        .fold(IntPoly::one(), |acc, &r| acc * IntPoly::from_i64s(&[-r, 1]))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..=20, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

proptest! {
    #[test]
    fn division_roundtrip(a in small_poly(9), b in prop::collection::vec(-9i64..=9, 0..5)) {
        let mut b = b;
        b.push(1);
        let b = IntPoly::from_i64s(&b);
        let (q, r) = a.divmod_monic(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn exact_division_recovers_factor(a in small_poly(6), roots in prop::collection::vec(-5i64..=5, 1..4)) {
        let b = from_roots(&roots);
        prop_assert_eq!((&a * &b).divexact(&b).unwrap(), a);
    }

    #[test]
    fn discriminant_of_split_cubic(r in prop::collection::vec(-30i64..=30, 3)) {
        let p = from_roots(&r);
        let d = (r[0] - r[1]) * (r[0] - r[2]) * (r[1] - r[2]);
        prop_assert_eq!(p.discriminant(), BigInt::from(d * d));
    }

    #[test]
    fn companion_roundtrip(digits in prop::collection::vec(0u64..12, 2..20), split in 0usize..20) {
        let m = split % digits.len();
        let p = digits.len() - m;
        let e = Expansion::new(m, p, digits);
        let r = digits_to_companion(&e);
        prop_assert_eq!(companion_to_digits(&r, m, p).unwrap(), e);
    }

    #[test]
    fn routh_fraction_free_matches_rational_table(h in prop::collection::vec(-9i64..=9, 2..12), lead in 1i64..4) {
        let mut h = h;
        h.push(lead);
        let big: Vec<BigInt> = h.iter().map(|&x| BigInt::from(x)).collect();
        let table = routh_table(&RatPoly::new(h.iter().map(|&x| BigRational::from_integer(x.into())).collect()));
        prop_assert_eq!(routh_stable_big(&big), table.is_stable());
    }

    #[test]
    fn disk_test_on_known_roots(roots in prop::collection::vec(-3i64..=3, 1..7), quad in prop::option::of((-3i64..=3, 1i64..=5))) {
        let mut q = from_roots(&roots);
        let mut inside = roots.iter().all(|r| r.abs() < 2);
        if let Some((s, t)) = quad {
            // x^2 + s x + t; complex pair of modulus sqrt(t) when s^2 < 4t
            if s * s < 4 * t {
                q = q * IntPoly::from_i64s(&[t, s, 1]);
                inside &= t < 4;
            }
        }
        prop_assert_eq!(disk_filter(&q, &BigRational::from_integer(2.into())), inside);
    }
}

#[test]
fn cyclotomic_products() {
    for n in 1..=36u64 {
        let prod = (1..=n)
            .filter(|d| n % d == 0)
            .fold(IntPoly::one(), |acc, d| acc * cyclotomic(d));
        let mut c = vec![BigInt::zero(); n as usize + 1];
        c[0] = -BigInt::one();
        c[n as usize] = BigInt::one();
        assert_eq!(prod, IntPoly::new(c), "n = {n}");
    }
}

#[test]
fn high_degree_disk_test_uses_big_path() {
    // (x - 1)^45 has every root inside |z| < 2 but not inside |z| < 1
    let q = from_roots(&[1; 45]);
    assert!(disk_filter(&q, &BigRational::from_integer(2.into())));
    assert!(!disk_filter(&q, &BigRational::one()));
}
