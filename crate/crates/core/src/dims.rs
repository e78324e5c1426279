//! Dimensions of irreducible representations.
//!
//! [`dim_by_counting`] counts Gelfand-Tsetlin patterns row by row;
//! [`dim_by_product`] evaluates the Weyl product formula and serves as an
//! independent check.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::pattern::for_each_interlacing;
use crate::weight::Weight;

thread_local! {
    // keyed on shift-normalized rows (last part 0)
    static COMPLETIONS: RefCell<HashMap<Vec<u64>, BigUint>> = RefCell::new(HashMap::new());
}

/// Number of patterns with the given normalized top row.
pub(crate) fn count_normalized(row: &[u64]) -> BigUint {
    if row.len() <= 1 {
        return BigUint::one();
    }
    let last = *row.last().expect("non-empty");
    if row[0] == last {
        return BigUint::one();
    }
    let key: Vec<u64> = row.iter().map(|x| x - last).collect();
    if let Some(hit) = COMPLETIONS.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut total = BigUint::zero();
    for_each_interlacing(&key, |next| {
        total += count_normalized(next);
    });
    COMPLETIONS.with(|m| m.borrow_mut().insert(key, total.clone()));
    total
}

/// Number of patterns whose top row is `row` (a weakly decreasing vector).
pub fn count_completions(row: &[BigInt]) -> Result<BigUint> {
    if row.is_empty() {
        return Ok(BigUint::one());
    }
    let w = Weight::new(row.to_vec())?;
    dim_by_counting(&w)
}

/// `d_λ` as the number of patterns of shape `λ`.
pub fn dim_by_counting(lambda: &Weight) -> Result<BigUint> {
    Ok(count_normalized(&lambda.normalized_parts()?))
}

/// `d_λ = ∏_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn dim_by_product(lambda: &Weight) -> BigUint {
    let p = lambda.parts();
    let n = p.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            let d = BigInt::from(j - i);
            num *= &p[i] - &p[j] + &d;
            den *= d;
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(
        r.is_zero() && !q.is_negative(),
        "Weyl product for {lambda} is not a non-negative integer"
    );
    q.to_biguint().expect("checked non-negative")
}

/// Both dimension routes, erroring if they ever disagree.
pub fn dim_checked(lambda: &Weight) -> Result<BigUint> {
    let counted = dim_by_counting(lambda)?;
    let product = dim_by_product(lambda);
    if counted != product {
        return Err(Error::Internal(format!(
            "dimension mismatch for {lambda}: counting {counted}, product {product}"
        )));
    }
    Ok(counted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::normalized_weights;

    fn w(p: &[i64]) -> Weight {
        Weight::from_ints(p).unwrap()
    }

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn counting_examples() {
        assert_eq!(dim_by_counting(&w(&[1, 0])).unwrap(), n(2));
        assert_eq!(dim_by_counting(&w(&[0, 0, 0, 0])).unwrap(), n(1));
        assert_eq!(dim_by_counting(&w(&[9, 7, 3])).unwrap(), n(60));
        assert_eq!(dim_by_counting(&w(&[2, 1, 0])).unwrap(), n(8));
        assert_eq!(dim_by_counting(&w(&[3, 1])).unwrap(), n(3));
    }

    #[test]
    fn product_examples() {
        assert_eq!(dim_by_product(&w(&[1, 0])), n(2));
        assert_eq!(dim_by_product(&w(&[9, 7, 3])), n(60));
        assert_eq!(dim_by_product(&w(&[10, 8, 4])), n(60));
        assert_eq!(dim_by_product(&w(&[5])), n(1));
    }

    #[test]
    fn completions_examples() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(count_completions(&b(&[5])).unwrap(), n(1));
        assert_eq!(count_completions(&b(&[1, 0])).unwrap(), n(2));
        assert_eq!(count_completions(&b(&[2, 0])).unwrap(), n(3));
        assert!(count_completions(&b(&[0, 2])).is_err());
    }

    #[test]
    fn shift_and_contragredient_invariance() {
        for lam in normalized_weights(3, 5) {
            let d = dim_by_counting(&lam).unwrap();
            for p in -3i64..=3 {
                assert_eq!(dim_by_counting(&lam.shift(&BigInt::from(p))).unwrap(), d);
            }
            assert_eq!(dim_by_counting(&lam.contragredient()).unwrap(), d);
        }
    }

    #[test]
    fn constant_weights_are_one_dimensional() {
        for c in -4i64..=4 {
            for rank in 1..=5 {
                assert_eq!(dim_by_counting(&Weight::constant(rank, c).unwrap()).unwrap(), n(1));
            }
        }
    }

    #[test]
    fn large_dimension_exceeds_u64() {
        let lam = w(&[2000, 1500, 1000, 500, 0]);
        let d = dim_by_product(&lam);
        assert!(d > BigUint::from(u64::MAX));
    }
}
