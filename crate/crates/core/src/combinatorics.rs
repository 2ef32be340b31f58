//! Factorials, binomials and small number-theoretic helpers.

use std::sync::{LazyLock, RwLock};

use num::{BigInt, One, Zero};

use crate::error::{invalid, Result};

// Ascending products 0!, 1!, ..., grown on demand.
static FACTORIALS: LazyLock<RwLock<Vec<BigInt>>> = LazyLock::new(|| RwLock::new(vec![BigInt::one()]));

pub fn factorial(n: usize) -> BigInt {
    {
        let cache = FACTORIALS.read().expect("factorial cache poisoned");
        if let Some(v) = cache.get(n) {
            return v.clone();
        }
    }
    let mut cache = FACTORIALS.write().expect("factorial cache poisoned");
    while cache.len() <= n {
        let k = cache.len();
        let next = &cache[k - 1] * BigInt::from(k);
        cache.push(next);
    }
    cache[n].clone()
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = k as usize;
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(2n-1)!! = 1 * 3 * 5 * ... * (2n-1)` for `n >= 1`.
pub fn double_factorial_odd(n: i64) -> Result<BigInt> {
    if n <= 0 {
        return Err(invalid(format!("double_factorial_odd needs n >= 1, got {n}")));
    }
    Ok((1..=n).map(|k| BigInt::from(2 * k - 1)).product())
}

/// Primes `<= bound` by trial division.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&p| (2..).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(7, 4), BigInt::from(35));
        assert_eq!(binomial(5, 9), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial_odd(3).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial_odd(4).unwrap(), BigInt::from(105));
        assert!(double_factorial_odd(0).is_err());
        assert!(double_factorial_odd(-2).is_err());
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(13), vec![2, 3, 5, 7, 11, 13]);
    }

    proptest! {
        #[test]
        fn pascal_rule(n in 1usize..120, k in -2i64..125) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}
