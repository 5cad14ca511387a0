//! Exact sums of roots of unity in `Z[x]/Φ_n(x)`.

/// `n`-th cyclotomic polynomial, coefficients in increasing degree.
pub(crate) fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i128; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = divide_exact(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

/// Quotient of monic-divisor polynomial division with zero remainder.
fn divide_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Canonical representative of `Σ counts[k] ζ_n^k` modulo `Φ_n`.
pub(crate) fn reduce_root_sum(counts: &[i128]) -> Vec<i128> {
    let n = counts.len();
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let mut rem = counts.to_vec();
    for i in (deg..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        for (j, &b) in phi.iter().enumerate() {
            rem[i - deg + j] -= c * b;
        }
    }
    rem.truncate(deg);
    while rem.last() == Some(&0) {
        rem.pop();
    }
    rem
}
