//! Small exact-arithmetic and subset-enumeration helpers.

/// Exact binomial coefficient, `None` on overflow. `C(n, k) = 0` for `k > n`.
pub fn checked_binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        let num = u128::from(n - i);
        let den = u128::from(i + 1);
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        acc = a.checked_mul(num / d)?;
    }
    Some(acc)
}

/// Exact binomial coefficient for arguments known not to overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    checked_binomial(n, k).expect("binomial coefficient overflows u128")
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Iterator over all subsets of `mask` having exactly `size` elements,
/// in increasing numeric order of the compressed index (Gosper's hack).
#[derive(Debug, Clone)]
pub struct SubsetsOfSize {
    positions: Vec<u8>,
    state: Option<u128>,
    limit: u128,
}

impl SubsetsOfSize {
    pub fn new(mask: u64, size: usize) -> Self {
        let positions: Vec<u8> = (0..64u8).filter(|&i| mask >> i & 1 == 1).collect();
        let m = positions.len();
        let state = if size > m {
            None
        } else {
            Some((1u128 << size) - 1)
        };
        SubsetsOfSize {
            positions,
            state,
            limit: 1u128 << m,
        }
    }

    fn scatter(&self, compact: u128) -> u64 {
        let mut out = 0u64;
        let mut c = compact;
        while c != 0 {
            let i = c.trailing_zeros() as usize;
            out |= 1u64 << self.positions[i];
            c &= c - 1;
        }
        out
    }
}

impl Iterator for SubsetsOfSize {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let c = self.state?;
        if c >= self.limit {
            self.state = None;
            return None;
        }
        let out = self.scatter(c);
        self.state = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            Some((((ripple ^ c) >> 2) / low) | ripple)
        };
        Some(out)
    }
}

/// All submasks of `mask`, starting from `mask` itself and ending with 0.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}
