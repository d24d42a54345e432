use crate::error::{Error, Result};

use super::OddGirth;

/// Decides `B ∈ N_{2s}(A)` in `K_{n,k}` by the count `|A \ B| <= s(n-2k)`.
///
/// `a` and `b` are `k`-subsets of `{1..n}` given as strictly increasing lists.
pub fn kneser_walk_test(n: usize, k: usize, a: &[usize], b: &[usize], s: usize) -> Result<bool> {
    if n <= 2 * k {
        return Err(Error::invalid(format!("walk test needs n > 2k, got n={n}, k={k}")));
    }
    if s == 0 {
        return Err(Error::invalid("walk test needs s >= 1"));
    }
    for set in [a, b] {
        let ok = set.len() == k
            && set.windows(2).all(|w| w[0] < w[1])
            && set.iter().all(|&x| (1..=n).contains(&x));
        if !ok {
            return Err(Error::invalid(format!("{set:?} is not a {k}-subset of 1..={n}")));
        }
    }
    let diff = a.iter().filter(|x| b.binary_search(x).is_err()).count();
    Ok(diff <= s * (n - 2 * k))
}

/// `2⌈k/(n-2k)⌉ + 1` for `n > 2k`; infinite when `K_{n,k}` has no edges or is
/// a perfect matching.
pub fn kneser_odd_girth_formula(n: usize, k: usize) -> OddGirth {
    if n <= 2 * k {
        OddGirth::Infinite
    } else {
        OddGirth::Finite(2 * k.div_ceil(n - 2 * k) + 1)
    }
}
