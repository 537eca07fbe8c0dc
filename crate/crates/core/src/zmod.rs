//! Small helpers for arithmetic in `Z` and `Z_n`.

/// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn gcd_all<I: IntoIterator<Item = i64>>(values: I) -> i64 {
    values.into_iter().fold(0, gcd)
}

/// Inverse of `u` modulo `n`, if `u` is a unit.
pub fn mod_inverse(u: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (u.rem_euclid(n), n);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(n))
}

/// Reduce `g` into `0..n`.
#[inline]
pub fn residue(g: i64, n: usize) -> usize {
    g.rem_euclid(n as i64) as usize
}

/// The canonical generator of the subgroup of `Z_n` generated by `elements`:
/// the smallest positive element, which always divides `n`.
pub fn subgroup_generator<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> usize {
    elements
        .into_iter()
        .fold(n as i64, |acc, e| gcd(acc, e as i64)) as usize
}

/// Elements of the subgroup `<d>` of `Z_n`, ascending. `d` must divide `n`.
pub fn subgroup_elements(n: usize, d: usize) -> Vec<usize> {
    (0..n).step_by(d).collect()
}

pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}
