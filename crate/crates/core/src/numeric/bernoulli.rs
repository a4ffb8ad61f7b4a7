use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::BigRational;
use crate::error::{Error, Result};

/// Largest index kept in the Bernoulli table.
pub const MAX_BERNOULLI: usize = 80;

fn table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0 for m ≥ 1
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_BERNOULLI + 1);
        b.push(BigRational::one());
        for m in 1..=MAX_BERNOULLI {
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                if k > 0 {
                    binom = binom * BigInt::from(m + 2 - k) / BigInt::from(k);
                }
                acc += bk * BigRational::from_integer(binom.clone());
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// Exact Bernoulli number `B_m` (convention `B_1 = -1/2`), `m ≤ 80`.
///
/// Odd indices above 1 are rejected: those values are zero and callers are
/// expected to skip them.
pub fn bernoulli(m: usize) -> Result<BigRational> {
    if m > MAX_BERNOULLI {
        return Err(Error::Config(format!("bernoulli index {m} exceeds {MAX_BERNOULLI}")));
    }
    if m > 1 && m % 2 == 1 {
        return Err(Error::Domain(format!("odd bernoulli index {m} requested")));
    }
    Ok(table()[m].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;
    use num_traits::Signed;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0).unwrap(), rat(1, 1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(8).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(10).unwrap(), rat(5, 66));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
    }

    #[test]
    fn odd_and_out_of_range_are_rejected() {
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(82).is_err());
    }

    #[test]
    fn even_values_alternate_in_sign() {
        for k in 1..40 {
            let a = bernoulli(2 * k).unwrap();
            let b = bernoulli(2 * k + 2).unwrap();
            assert!(a.is_positive() != b.is_positive(), "k={k}");
        }
    }

    #[test]
    fn recurrence_holds_for_every_table_entry() {
        // independent check: Σ_{k=0}^{m-1} C(m, k) B_k = 0 under B_1 = -1/2
        for m in 2..=MAX_BERNOULLI {
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for k in 0..m {
                if k > 0 {
                    binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k);
                }
                acc += &table()[k] * BigRational::from_integer(binom.clone());
            }
            assert!(acc.is_zero(), "m={m}");
        }
    }
}
