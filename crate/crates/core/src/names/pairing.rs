//! Cantor pairing, balanced tuple codes and the zig-zag integer code.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

/// Cantor pairing `(m+n)(m+n+1)/2 + n`. Panics on `u64` overflow.
pub fn pair(m: u64, n: u64) -> u64 {
    let s = m.checked_add(n).expect("pair overflow");
    let t = (s as u128) * (s as u128 + 1) / 2 + n as u128;
    u64::try_from(t).expect("pair overflow")
}

pub fn unpair(k: u64) -> (u64, u64) {
    let k = k as u128;
    let mut w = ((8 * k + 1).isqrt() - 1) / 2;
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    let n = k - w * (w + 1) / 2;
    ((w - n) as u64, n as u64)
}

/// Triple code `⟨a, ⟨b, c⟩⟩`.
pub fn triple(a: u64, b: u64, c: u64) -> u64 {
    pair(a, pair(b, c))
}

pub fn untriple(k: u64) -> (u64, u64, u64) {
    let (a, r) = unpair(k);
    let (b, c) = unpair(r);
    (a, b, c)
}

pub fn pair_big(m: &BigUint, n: &BigUint) -> BigUint {
    let s = m + n;
    let t = &s * (&s + 1u32);
    (t >> 1u32) + n
}

pub fn unpair_big(k: &BigUint) -> (BigUint, BigUint) {
    let eight_k1: BigUint = (k << 3u32) + 1u32;
    let mut w: BigUint = (eight_k1.sqrt() - 1u32) >> 1u32;
    let tri = |w: &BigUint| (w * (w + 1u32)) >> 1u32;
    while &tri(&w) > k {
        w -= 1u32;
    }
    while &tri(&(&w + 1u32)) <= k {
        w += 1u32;
    }
    let n = k - tri(&w);
    (&w - &n, n)
}

/// Encode a tuple of known length by pairing along a balanced binary tree, so that
/// the code has size roughly the sum of the entry sizes.
pub fn tuple_encode(xs: &[BigUint]) -> BigUint {
    match xs.len() {
        0 => BigUint::zero(),
        1 => xs[0].clone(),
        len => {
            let h = len / 2;
            pair_big(&tuple_encode(&xs[..h]), &tuple_encode(&xs[h..]))
        }
    }
}

/// Inverse of [`tuple_encode`] for tuples of length `len >= 1`.
pub fn tuple_decode(code: &BigUint, len: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(len);
    tuple_decode_into(code, len, &mut out);
    out
}

fn tuple_decode_into(code: &BigUint, len: usize, out: &mut Vec<BigUint>) {
    assert!(len >= 1);
    if len == 1 {
        out.push(code.clone());
        return;
    }
    let h = len / 2;
    let (a, b) = unpair_big(code);
    tuple_decode_into(&a, h, out);
    tuple_decode_into(&b, len - h, out);
}

/// `0, -1, 1, -2, 2, ...` ↦ `0, 1, 2, 3, 4, ...`.
pub fn zigzag(a: &BigInt) -> BigUint {
    match a.sign() {
        Sign::Minus => ((-a).to_biguint().unwrap() << 1u32) - 1u32,
        _ => a.to_biguint().unwrap() << 1u32,
    }
}

pub fn unzigzag(n: &BigUint) -> BigInt {
    let half = BigInt::from(n >> 1u32);
    if (n & BigUint::one()).is_zero() {
        half
    } else {
        -half - 1
    }
}

/// Convert to `u64`, panicking with context when the value is too large.
pub fn to_u64(n: &BigUint) -> u64 {
    n.to_u64().unwrap_or_else(|| panic!("value {n} does not fit an index"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cantor_values() {
        assert_eq!(pair(0, 0), 0);
        assert_eq!(pair(1, 2), 8);
        assert_eq!(unpair(pair(7, 3)), (7, 3));
    }

    #[test]
    fn pairing_laws_on_small_square() {
        let mut seen = std::collections::HashSet::new();
        for m in 0..=200 {
            for n in 0..=200 {
                let k = pair(m, n);
                assert_eq!(unpair(k), (m, n));
                assert!(seen.insert(k));
            }
        }
    }

    #[test]
    fn zigzag_order() {
        let got: Vec<BigInt> = (0u32..5).map(|k| unzigzag(&BigUint::from(k))).collect();
        let want: Vec<BigInt> = [0, -1, 1, -2, 2].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(got, want);
    }

    proptest! {
        #[test]
        fn big_pairing_agrees_with_small(m in 0u64..1u64 << 30, n in 0u64..1u64 << 30) {
            let k = pair_big(&BigUint::from(m), &BigUint::from(n));
            prop_assert_eq!(to_u64(&k), pair(m, n));
            prop_assert_eq!(unpair_big(&k), (BigUint::from(m), BigUint::from(n)));
        }

        #[test]
        fn tuple_roundtrip(xs in proptest::collection::vec(0u64..1000, 1..12)) {
            let big: Vec<BigUint> = xs.iter().map(|&x| BigUint::from(x)).collect();
            prop_assert_eq!(tuple_decode(&tuple_encode(&big), big.len()), big);
        }

        #[test]
        fn zigzag_roundtrip(a in any::<i64>()) {
            let a = BigInt::from(a);
            prop_assert_eq!(unzigzag(&zigzag(&a)), a);
        }
    }
}
