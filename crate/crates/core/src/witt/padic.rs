//! `W_n(𝔽_p) ≅ ℤ/pⁿ` through Teichmüller digits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::classical::WittVector;

/// Teichmüller representative of `x` modulo `p^{n+1}`, i.e. `x^{pⁿ} mod p^{n+1}`.
pub fn padic_teichmuller_digit(p: u64, x: u64, n: u32) -> BigInt {
    assert!(x < p, "digit must be a residue mod p");
    let modulus = BigInt::from(p).pow(n + 1);
    BigInt::from(x).modpow(&BigInt::from(p).pow(n), &modulus)
}

/// `Σ pⁱ [aᵢ] mod pⁿ`, with digit `aᵢ` lifted modulo `p^{n−i}`.
pub fn padic_convert(v: &WittVector<BigInt>) -> BigInt {
    let p = v.p;
    let n = v.len() as u32;
    let modulus = BigInt::from(p).pow(n);
    let mut acc = BigInt::zero();
    for (i, a) in v.comps.iter().enumerate() {
        let digit: u64 = a.mod_floor(&BigInt::from(p)).try_into().unwrap();
        let lifted = padic_teichmuller_digit(p, digit, n - 1 - i as u32);
        acc += BigInt::from(p).pow(i as u32) * lifted;
    }
    acc.mod_floor(&modulus)
}

/// Inverse of [`padic_convert`]: components in `[0, p)`.
pub fn padic_to_witt(p: u64, n: usize, x: &BigInt) -> WittVector<BigInt> {
    let pb = BigInt::from(p);
    let mut rest = x.mod_floor(&pb.pow(n as u32));
    let mut comps = Vec::with_capacity(n);
    for i in 0..n {
        let prec = (n - i) as u32;
        let digit = rest.mod_floor(&pb);
        let d: u64 = (&digit).try_into().unwrap();
        let lifted = padic_teichmuller_digit(p, d, prec - 1);
        rest = (rest - lifted).mod_floor(&pb.pow(prec));
        debug_assert!(rest.is_multiple_of(&pb) || prec == 1);
        rest /= &pb;
        comps.push(digit);
    }
    WittVector::new(p, comps)
}

/// Check `r^p ≡ r` and `r ≡ x` for a digit returned by [`padic_teichmuller_digit`].
pub fn is_teichmuller_digit(p: u64, x: u64, n: u32, r: &BigInt) -> bool {
    let m = BigInt::from(p).pow(n + 1);
    r.modpow(&BigInt::from(p), &m) == r.mod_floor(&m) && r.mod_floor(&BigInt::from(p)) == BigInt::from(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits() {
        assert_eq!(padic_teichmuller_digit(5, 2, 1), BigInt::from(7));
        assert!(is_teichmuller_digit(5, 2, 1, &BigInt::from(7)));
        assert_eq!(padic_teichmuller_digit(3, 2, 1), BigInt::from(8));
        for p in [2, 3, 5, 7] {
            for n in 0..4 {
                assert_eq!(padic_teichmuller_digit(p, 1, n), BigInt::from(1));
                assert_eq!(padic_teichmuller_digit(p, 0, n), BigInt::from(0));
            }
        }
    }

    #[test]
    fn convert_examples() {
        let v = WittVector::new(2, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(padic_convert(&v), BigInt::from(3));
        let v = WittVector::new(3, vec![BigInt::from(2), BigInt::from(0)]);
        assert_eq!(padic_convert(&v), BigInt::from(8));
        for x in 0..27 {
            assert_eq!(padic_convert(&padic_to_witt(3, 3, &BigInt::from(x))), BigInt::from(x));
        }
    }
}
