//! Arithmetic and linear algebra over a small prime field `F_p`.
//!
//! Residues are `u64` in `0..p`; `p` stays well below 2³² so products fit.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 32), "prime {p} out of supported range");
        Self { p }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn div(self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Basis of `{x : A x = 0}` for an `rows × cols` matrix given row-major.
    pub fn nullspace(self, a: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut m: Vec<Vec<u64>> = a.to_vec();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(pr) = (row..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            let inv = self.inv(m[row][col]);
            for x in m[row].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..m.len() {
                if r != row && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..cols {
                        let t = self.mul(f, m[row][c]);
                        m[r][c] = self.sub(m[r][c], t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.len() {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(m[r][f]);
                }
                v
            })
            .collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Least `k` with `k² ≥ n`.
pub fn ceil_sqrt(n: u64) -> u64 {
    let mut k = (n as f64).sqrt() as u64;
    while k * k < n {
        k += 1;
    }
    while k > 0 && (k - 1) * (k - 1) >= n {
        k -= 1;
    }
    k
}

/// Greatest `k` with `k² ≤ n`.
pub fn floor_sqrt(n: u64) -> u64 {
    let k = ceil_sqrt(n);
    if k * k > n {
        k - 1
    } else {
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let f = Fp::new(13);
        assert_eq!(f.mul(5, 8), 1);
        assert_eq!(f.inv(5), 8);
        assert_eq!(f.sub(2, 5), 10);
        assert_eq!(f.pow(2, 12), 1);
        assert_eq!(f.div(1, 2), 7);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Fp::new(7);
        let a = vec![vec![1, 2, 3, 4], vec![0, 1, 0, 1]];
        let ns = f.nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let s = row.iter().zip(v).fold(0, |acc, (x, y)| f.add(acc, f.mul(*x, *y)));
                assert_eq!(s, 0);
            }
        }
        assert!(f.nullspace(&[vec![1, 0], vec![0, 1]], 2).is_empty());
    }

    #[test]
    fn integer_helpers() {
        assert!(is_prime(13) && is_prime(421) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_factors(60), [2, 3, 5]);
        assert_eq!(ceil_sqrt(24), 5);
        assert_eq!(ceil_sqrt(25), 5);
        assert_eq!(ceil_sqrt(26), 6);
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(floor_sqrt(24), 4);
        assert_eq!(floor_sqrt(25), 5);
    }
}
