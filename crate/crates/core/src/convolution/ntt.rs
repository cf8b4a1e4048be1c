//! Number-theoretic transform over the prime field with
//! `p = 2^64 - 2^32 + 1`. The multiplicative group has 2^32 as its largest
//! power-of-two subgroup, so transforms of any practical length are
//! available, and 0/1 correlations (bounded by the pattern length) are
//! represented exactly.

const P: u64 = 0xffff_ffff_0000_0001;
const EPSILON: u64 = 0xffff_ffff; // 2^64 mod P

fn reduce128(x: u128) -> u64 {
    let x_lo = x as u64;
    let x_hi = (x >> 64) as u64;
    let hi_hi = x_hi >> 32;
    let hi_lo = x_hi & EPSILON;

    let (mut t0, borrow) = x_lo.overflowing_sub(hi_hi);
    if borrow {
        t0 = t0.wrapping_sub(EPSILON);
    }
    let t1 = hi_lo * EPSILON;
    let (mut t2, carry) = t0.overflowing_add(t1);
    if carry {
        t2 = t2.wrapping_add(EPSILON);
    }
    while t2 >= P {
        t2 -= P;
    }
    t2
}

fn mul(a: u64, b: u64) -> u64 {
    reduce128(u128::from(a) * u128::from(b))
}

fn add(a: u64, b: u64) -> u64 {
    let (s, carry) = a.overflowing_add(b);
    let mut s = if carry { s.wrapping_add(EPSILON) } else { s };
    if s >= P {
        s -= P;
    }
    s
}

fn sub(a: u64, b: u64) -> u64 {
    let (d, borrow) = a.overflowing_sub(b);
    if borrow {
        d.wrapping_sub(EPSILON)
    } else {
        d
    }
}

fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

/// In-place NTT; `root` must be a primitive `n`-th root of unity.
fn ntt(a: &mut [u64], root: u64) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());

    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }

    let mut len = 2;
    while len <= n {
        let wlen = pow(root, (n / len) as u64);
        for base in (0..n).step_by(len) {
            let mut w = 1u64;
            for k in 0..len / 2 {
                let u = a[base + k];
                let v = mul(a[base + k + len / 2], w);
                a[base + k] = add(u, v);
                a[base + k + len / 2] = sub(u, v);
                w = mul(w, wlen);
            }
        }
        len <<= 1;
    }
}

pub(crate) struct Correlator {
    len: usize,
    m: usize,
    root: u64,
    root_inv: u64,
    len_inv: u64,
    pattern_ntt: Vec<u64>,
    buf: Vec<u64>,
}

impl Correlator {
    pub(crate) fn new(y: &[u8]) -> Self {
        let m = y.len();
        let len = (2 * m.next_power_of_two()).max(2);
        assert!(len <= 1 << 32, "transform too long for the field");
        // 7 generates the multiplicative group of the field.
        let root = pow(7, (P - 1) / len as u64);
        debug_assert_eq!(pow(root, len as u64), 1);
        debug_assert_ne!(pow(root, len as u64 / 2), 1);

        // Correlation = convolution against the reversed pattern.
        let mut pattern_ntt = vec![0u64; len];
        for (i, &v) in y.iter().rev().enumerate() {
            pattern_ntt[i] = u64::from(v);
        }
        ntt(&mut pattern_ntt, root);

        Correlator {
            len,
            m,
            root,
            root_inv: inv(root),
            len_inv: inv(len as u64),
            pattern_ntt,
            buf: vec![0; len],
        }
    }
}

impl super::BlockCorrelator for Correlator {
    fn block_len(&self) -> usize {
        self.len
    }

    fn correlate(&mut self, block: &[u8], out: &mut Vec<u64>) {
        for (slot, &v) in self.buf.iter_mut().zip(block) {
            *slot = u64::from(v);
        }
        ntt(&mut self.buf, self.root);
        for (x, y) in self.buf.iter_mut().zip(&self.pattern_ntt) {
            *x = mul(*x, *y);
        }
        ntt(&mut self.buf, self.root_inv);
        // conv[t] for t >= m-1 is free of circular wrap-around;
        // corr[i] = conv[i + m - 1].
        out.clear();
        out.extend(
            self.buf[self.m - 1..self.len]
                .iter()
                .take(self.len - self.m + 1)
                .map(|&v| mul(v, self.len_inv)),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        assert_eq!(add(P - 1, 1), 0);
        assert_eq!(sub(0, 1), P - 1);
        assert_eq!(mul(P - 1, P - 1), 1);
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(pow(7, P - 1), 1);
    }
}
