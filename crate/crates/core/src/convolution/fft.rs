//! Complex radix-2 FFT backend.
//!
//! Twiddle factors come from a precomputed table indexed by stride, so the
//! accumulated rounding error stays proportional to log of the transform
//! size. For 0/1 inputs the correlation values are integers bounded by the
//! pattern length; rounding the inverse transform to the nearest integer
//! recovers them exactly.

use std::ops::{Add, Mul, Sub};

#[derive(Clone, Copy, Debug, Default)]
struct Complex {
    re: f64,
    im: f64,
}

impl Complex {
    fn conj(self) -> Complex {
        Complex {
            re: self.re,
            im: -self.im,
        }
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, o: Complex) -> Complex {
        Complex {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, o: Complex) -> Complex {
        Complex {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, o: Complex) -> Complex {
        Complex {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

/// In-place iterative FFT. `roots[k] = exp(-2πik/len)` for `k < len/2`;
/// the inverse pass conjugates and scales by `1/len`.
fn fft(a: &mut [Complex], roots: &[Complex], invert: bool) {
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
        let stride = n / len;
        for base in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let mut w = roots[k * stride];
                if invert {
                    w = w.conj();
                }
                let u = a[base + k];
                let v = a[base + k + len / 2] * w;
                a[base + k] = u + v;
                a[base + k + len / 2] = u - v;
            }
        }
        len <<= 1;
    }

    if invert {
        let scale = 1.0 / n as f64;
        for v in a.iter_mut() {
            v.re *= scale;
            v.im *= scale;
        }
    }
}

pub(crate) struct Correlator {
    len: usize,
    m: usize,
    roots: Vec<Complex>,
    pattern_fft: Vec<Complex>,
    buf: Vec<Complex>,
}

impl Correlator {
    pub(crate) fn new(y: &[u8]) -> Self {
        let m = y.len();
        let len = (2 * m.next_power_of_two()).max(2);
        let roots: Vec<Complex> = (0..len / 2)
            .map(|k| {
                let ang = -2.0 * std::f64::consts::PI * k as f64 / len as f64;
                Complex {
                    re: ang.cos(),
                    im: ang.sin(),
                }
            })
            .collect();
        let mut pattern_fft = vec![Complex::default(); len];
        for (i, &v) in y.iter().enumerate() {
            pattern_fft[i].re = f64::from(v);
        }
        fft(&mut pattern_fft, &roots, false);
        Correlator {
            len,
            m,
            roots,
            pattern_fft,
            buf: vec![Complex::default(); len],
        }
    }
}

impl super::BlockCorrelator for Correlator {
    fn block_len(&self) -> usize {
        self.len
    }

    fn correlate(&mut self, block: &[u8], out: &mut Vec<u64>) {
        for (slot, &v) in self.buf.iter_mut().zip(block) {
            slot.re = f64::from(v);
            slot.im = 0.0;
        }
        fft(&mut self.buf, &self.roots, false);
        // X(k) · conj(Y(k)) inverts to the circular cross-correlation.
        for (x, y) in self.buf.iter_mut().zip(&self.pattern_fft) {
            *x = *x * y.conj();
        }
        fft(&mut self.buf, &self.roots, true);
        out.clear();
        out.extend(self.buf[..=self.len - self.m].iter().map(|c| {
            let r = c.re.round();
            debug_assert!((c.re - r).abs() < 0.25, "fft drifted: {}", c.re);
            r as u64
        }));
    }
}
