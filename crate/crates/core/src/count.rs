//! Exact counting helpers. Every function returns `None` on 64-bit overflow.

/// `n · (n-1) · ... · (n-r+1)`, the number of r-permutations of an n-set.
pub fn falling_factorial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    (n - r + 1..=n).try_fold(1u64, |acc, x| acc.checked_mul(x))
}

pub fn factorial(n: u64) -> Option<u64> {
    falling_factorial(n, n)
}

pub fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Number of distinct arrangements of a multiset with the given multiplicities.
pub fn multinomial(counts: &[u64]) -> Option<u64> {
    let mut total = 0u64;
    let mut acc = 1u64;
    for &c in counts {
        total = total.checked_add(c)?;
        acc = acc.checked_mul(binomial(total, c)?)?;
    }
    Some(acc)
}

/// Rearranges `xs` into the next lexicographic permutation. Returns `false`
/// (leaving `xs` sorted ascending) once the last permutation has been passed.
/// Repeated elements yield each distinct arrangement once.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

pub(crate) fn falling_factorial_expr(n: u64, r: u64) -> String {
    format!("{n}!/({n}-{r})!")
}

pub(crate) fn multinomial_expr(counts: &[u64]) -> String {
    let total: u64 = counts.iter().sum();
    let denom: Vec<String> = counts.iter().map(|c| format!("{c}!")).collect();
    format!("{total}!/({})", denom.join("·"))
}
