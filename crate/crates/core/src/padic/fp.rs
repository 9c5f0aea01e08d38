//! Dense univariate polynomials over F_p, low degree first. Only what the
//! irreducibility test needs.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*b.last().expect("division by zero polynomial"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() * lead_inv % p;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test for a monic polynomial of degree >= 1 over F_p.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.iter().map(|c| c % p).collect());
    let k = match f.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![rem(&x, &f, p)];
    for _ in 0..k {
        let last = frob.last().unwrap().clone();
        let mut acc = vec![1u64];
        for _ in 0..p {
            acc = mul_rem(&acc, &last, &f, p);
        }
        frob.push(acc);
    }
    if frob[k] != rem(&x, &f, p) {
        return false;
    }
    prime_factors(k).into_iter().all(|q| {
        let mut h = frob[k / q].clone();
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        gcd(&h, &f, p).len() == 1
    })
}

/// The monic irreducible polynomial of degree `k` over F_p whose coefficient
/// vector (low degree first, leading 1 excluded) is lexicographically smallest.
pub(crate) fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut low = vec![0u64; k];
    loop {
        let mut f = low.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // odometer with the constant term as the most significant digit
        let mut i = k;
        loop {
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(4));
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(smallest_irreducible(2, 1), vec![0, 1]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        // [1,0,1] precedes [1,1,0] when the constant term is compared first
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
    }

    // brute force: a polynomial of degree <= 3 is irreducible iff it has no root
    #[test]
    fn irreducibility_matches_root_count_in_low_degree() {
        for p in [2u64, 3, 5] {
            for c0 in 0..p {
                for c1 in 0..p {
                    for c2 in 0..p {
                        let f = vec![c0, c1, c2, 1];
                        let has_root = (0..p).any(|x| (c0 + c1 * x + c2 * x * x + x * x * x) % p == 0);
                        assert_eq!(is_irreducible(&f, p), !has_root, "{f:?} mod {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn quartic_with_no_root_can_still_factor() {
        // (x^2+x+1)^2 = x^4 + x^2 + 1 over F_2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
    }
}
