//! Floor integer square root for arbitrary-precision naturals.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Largest `s` with `s * s <= n`.
///
/// Newton's method on `x -> (x + n/x) / 2`, seeded from above with
/// `2^ceil(bits/2)` so the iteration decreases monotonically and the first
/// non-decreasing step can stop it. Runs in `O(log bits)` iterations on
/// multi-thousand-bit inputs.
pub fn integer_sqrt_floor(n: &BigUint) -> BigUint {
    if n.is_zero() || n.is_one() {
        return n.clone();
    }
    // Seed x0 = 2^ceil(bits/2) >= sqrt(n); Newton then converges from above.
    let shift = n.bits().div_ceil(2);
    let mut x = BigUint::one() << shift;
    loop {
        let next = (&x + n / &x) >> 1u32;
        if next >= x {
            break;
        }
        x = next;
    }
    debug_assert!(&x * &x <= *n);
    debug_assert!((&x + 1u32) * (&x + 1u32) > *n);
    x
}

/// Returns `Some(s)` when `n` is a perfect square `s * s`.
pub fn perfect_sqrt(n: &BigUint) -> Option<BigUint> {
    let s = integer_sqrt_floor(n);
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn n(v: u128) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn small_values() {
        let expect = [
            (0u128, 0u128),
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 2),
            (8, 2),
            (9, 3),
            (15, 3),
            (16, 4),
            (99, 9),
            (100, 10),
        ];
        for (input, want) in expect {
            assert_eq!(integer_sqrt_floor(&n(input)), n(want), "isqrt({input})");
        }
    }

    #[test]
    fn near_square_boundaries() {
        for s in 1u128..500 {
            let sq = s * s;
            assert_eq!(integer_sqrt_floor(&n(sq - 1)), n(s - 1));
            assert_eq!(integer_sqrt_floor(&n(sq)), n(s));
            assert_eq!(integer_sqrt_floor(&n(sq + 1)), n(s));
        }
    }

    #[test]
    fn mcc_denominator_example() {
        // (6+2)(6+3)(9+2)(9+3) = 8 * 9 * 11 * 12 = 9504, between 97^2 = 9409
        // and 98^2 = 9604.
        assert_eq!(integer_sqrt_floor(&n(9504)), n(97));
    }

    #[test]
    fn large_power_of_ten() {
        let big = BigUint::from(10u32).pow(60);
        assert_eq!(integer_sqrt_floor(&big), BigUint::from(10u32).pow(30));
        let off = &big - 1u32;
        assert_eq!(
            integer_sqrt_floor(&off),
            BigUint::from(10u32).pow(30) - 1u32
        );
    }

    #[test]
    fn perfect_square_detection() {
        assert_eq!(perfect_sqrt(&n(144)), Some(n(12)));
        assert_eq!(perfect_sqrt(&n(145)), None);
        assert_eq!(perfect_sqrt(&n(0)), Some(n(0)));
    }

    proptest! {
        // Independent oracle: num-bigint ships its own sqrt via num-integer's
        // Roots trait. Both implementations must agree everywhere.
        #[test]
        fn matches_library_sqrt(bytes in proptest::collection::vec(any::<u8>(), 0..96)) {
            let v = BigUint::from_bytes_be(&bytes);
            prop_assert_eq!(integer_sqrt_floor(&v), v.sqrt());
        }

        #[test]
        fn defining_inequality(bytes in proptest::collection::vec(any::<u8>(), 0..96)) {
            let v = BigUint::from_bytes_be(&bytes);
            let s = integer_sqrt_floor(&v);
            prop_assert!(&s * &s <= v);
            prop_assert!((&s + 1u32) * (&s + 1u32) > v);
        }

        #[test]
        fn square_round_trip(bytes in proptest::collection::vec(any::<u8>(), 0..48)) {
            let v = BigUint::from_bytes_be(&bytes);
            prop_assert_eq!(integer_sqrt_floor(&(&v * &v)), v);
        }
    }
}
