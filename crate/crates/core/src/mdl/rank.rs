//! Combinadic ranks of k-subsets and Lehmer ranks of permutations.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) before, C(n, i+1) after
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Smallest `w` with `2^w >= x`; `0` for `x <= 1`.
pub fn ceil_log2(x: &BigUint) -> u64 {
    if x <= &BigUint::one() {
        return 0;
    }
    let bits = x.bits();
    if x.count_ones() == 1 {
        bits - 1
    } else {
        bits
    }
}

/// Colex combinadic rank of a sorted 1-based subset:
/// `Σ_{i=1}^{k} C(c_i - 1, i)`, a bijection onto `0..C(n, k)`.
pub fn rank_subset(members: &[usize]) -> BigUint {
    members
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c as u64 - 1, i as u64 + 1))
        .sum()
}

/// Inverse of [`rank_subset`] for `k`-subsets of `1..=n`; `rank` must be
/// below `C(n, k)`.
pub fn unrank_subset(n: usize, k: usize, rank: &BigUint) -> Vec<usize> {
    let mut rank = rank.clone();
    let mut out = vec![0; k];
    let mut hi = n;
    for i in (1..=k).rev() {
        // largest c <= hi with C(c - 1, i) <= rank
        let mut c = hi;
        while binomial(c as u64 - 1, i as u64) > rank {
            c -= 1;
        }
        rank -= binomial(c as u64 - 1, i as u64);
        out[i - 1] = c;
        hi = c - 1;
    }
    out
}

/// Lehmer rank of a permutation of `0..k`.
pub fn rank_permutation(perm: &[usize]) -> BigUint {
    let k = perm.len();
    let mut rank = BigUint::zero();
    for i in 0..k {
        let smaller_after = perm[i + 1..].iter().filter(|&&p| p < perm[i]).count();
        rank = rank * (k - i) as u64 + smaller_after as u64;
    }
    rank
}

/// Inverse of [`rank_permutation`]; `rank` must be below `k!`.
pub fn unrank_permutation(k: usize, rank: &BigUint) -> Vec<usize> {
    let mut digits = vec![0usize; k];
    let mut rank = rank.clone();
    for i in (0..k).rev() {
        let base = (k - i) as u64;
        let d = &rank % base;
        digits[i] = d.try_into().expect("digit fits");
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..k).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}
