//! Closed-form counts used to cross-check homology computations.

/// Number of derangements of `n` letters, by `D(n) = (n-1)(D(n-1) + D(n-2))`.
pub fn derangements(n: u64) -> u64 {
    let (mut a, mut b) = (1u64, 0u64);
    if n == 0 {
        return a;
    }
    for k in 2..=n {
        let c = (k - 1) * (a + b);
        a = b;
        b = c;
    }
    b
}

/// Catalan number `C(n) = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of injective words on `n` letters, `sum_k n!/(n-k)!`.
pub fn injective_word_count(n: u64) -> u64 {
    let mut total = 0;
    let mut falling = 1;
    for k in 0..=n {
        total += falling;
        falling *= n - k;
    }
    total
}

/// Size of the type B non-crossing partition lattice, `binom(2n, n)`.
pub fn type_b_catalan(n: u64) -> u64 {
    binomial(2 * n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!((0..7).map(derangements).collect::<Vec<_>>(), [1, 0, 1, 2, 9, 44, 265]);
        assert_eq!((0..7).map(catalan).collect::<Vec<_>>(), [1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(injective_word_count(3), 16);
        assert_eq!(type_b_catalan(3), 20);
    }
}
