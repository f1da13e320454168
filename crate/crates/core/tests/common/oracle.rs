//! Brute-force depth oracle: explicit integer powers, supports compared
//! directly. Shares no code with the library's search.

pub type Dense = Vec<Vec<u128>>;

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0u128; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s: u128 = 0;
            for t in 0..k {
                // Saturation keeps nonzero entries nonzero, which is all a support needs.
                s = s.saturating_add(a[i][t].saturating_mul(b[t][j]));
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn transpose(a: &Dense) -> Dense {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect()
}

pub fn support(a: &Dense) -> Vec<Vec<bool>> {
    a.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect()
}

pub fn from_u64(rows: &[Vec<u64>]) -> Dense {
    rows.iter().map(|r| r.iter().map(|&x| x as u128).collect()).collect()
}

pub fn is_irredundant(a: &Dense) -> bool {
    a.iter().all(|r| r.iter().any(|&x| x != 0))
        && (0..a[0].len()).all(|j| a.iter().any(|r| r[j] != 0))
}

/// `[M(0), M(1), …, M(max)]` by explicit multiplication.
pub fn alternating_powers(m: &Dense, max: usize) -> Vec<Dense> {
    let mt = transpose(m);
    let mut out = vec![identity(m.len())];
    for k in 0..max {
        let next = mul(&out[k], if k % 2 == 0 { m } else { &mt });
        out.push(next);
    }
    out
}

fn gram_depth(gram: &Dense, max: usize) -> Option<u64> {
    let mut powers = vec![identity(gram.len())];
    for n in 0..max {
        powers.push(mul(&powers[n], gram));
        if support(&powers[n]) == support(&powers[n + 1]) {
            return Some(2 * n as u64 + 1);
        }
    }
    None
}

pub fn odd_depth(m: &Dense) -> Option<u64> {
    let max = 2 * (m.len() + m[0].len()) + 2;
    gram_depth(&mul(m, &transpose(m)), max)
}

pub fn h_depth(m: &Dense) -> Option<u64> {
    let max = 2 * (m.len() + m[0].len()) + 2;
    gram_depth(&mul(&transpose(m), m), max)
}

pub fn depth(m: &Dense) -> Option<u64> {
    let max = 2 * (m.len() + m[0].len()) + 2;
    let p = alternating_powers(m, max);
    (1..max).find(|&k| support(&p[k + 1]) == support(&p[k - 1])).map(|k| k as u64)
}
