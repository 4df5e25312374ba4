//! Complex FFT: iterative radix-2, with Bluestein's chirp-z for other sizes.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::math;

#[derive(Debug, Clone)]
pub(crate) struct Fft {
    len: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Radix2(Radix2),
    Bluestein {
        inner: Radix2,
        chirp: Vec<Complex64>,
        // FFT of the conjugate chirp, zero padded to inner.len
        kernel: Vec<Complex64>,
    },
}

#[derive(Debug, Clone)]
struct Radix2 {
    len: usize,
    twiddles: Vec<Complex64>,
}

impl Radix2 {
    fn new(len: usize) -> Self {
        debug_assert!(len.is_power_of_two());
        let twiddles = (0..len / 2)
            .map(|k| {
                let a = -2.0 * PI * k as f64 / len as f64;
                Complex64::new(math::cos(a), math::sin(a))
            })
            .collect();
        Self { len, twiddles }
    }

    fn forward(&self, buf: &mut [Complex64]) {
        let n = self.len;
        if n <= 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                buf.swap(i, j);
            }
        }
        let mut size = 2;
        while size <= n {
            let half = size / 2;
            let stride = n / size;
            for start in (0..n).step_by(size) {
                for k in 0..half {
                    let t = self.twiddles[k * stride] * buf[start + k + half];
                    let u = buf[start + k];
                    buf[start + k] = u + t;
                    buf[start + k + half] = u - t;
                }
            }
            size *= 2;
        }
    }

    fn inverse_unscaled(&self, buf: &mut [Complex64]) {
        for v in buf.iter_mut() {
            *v = v.conj();
        }
        self.forward(buf);
        for v in buf.iter_mut() {
            *v = v.conj();
        }
    }
}

impl Fft {
    pub(crate) fn new(len: usize) -> Self {
        assert!(len > 0, "FFT length must be positive");
        if len.is_power_of_two() {
            return Self {
                len,
                kind: Kind::Radix2(Radix2::new(len)),
            };
        }
        let m = (2 * len - 1).next_power_of_two();
        let inner = Radix2::new(m);
        // chirp[k] = exp(-i*pi*k^2/n); k^2 reduced mod 2n keeps the angle exact
        let chirp: Vec<Complex64> = (0..len)
            .map(|k| {
                let k2 = (k as u128 * k as u128 % (2 * len as u128)) as f64;
                let a = -PI * k2 / len as f64;
                Complex64::new(math::cos(a), math::sin(a))
            })
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); m];
        kernel[0] = chirp[0].conj();
        for k in 1..len {
            kernel[k] = chirp[k].conj();
            kernel[m - k] = chirp[k].conj();
        }
        inner.forward(&mut kernel);
        Self {
            len,
            kind: Kind::Bluestein {
                inner,
                chirp,
                kernel,
            },
        }
    }

    /// In-place forward transform, no scaling.
    pub(crate) fn forward(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len);
        match &self.kind {
            Kind::Radix2(r) => r.forward(buf),
            Kind::Bluestein {
                inner,
                chirp,
                kernel,
            } => {
                let m = inner.len;
                let mut work = vec![Complex64::new(0.0, 0.0); m];
                for k in 0..self.len {
                    work[k] = buf[k] * chirp[k];
                }
                inner.forward(&mut work);
                for (w, k) in work.iter_mut().zip(kernel) {
                    *w *= k;
                }
                inner.inverse_unscaled(&mut work);
                let scale = 1.0 / m as f64;
                for k in 0..self.len {
                    buf[k] = work[k] * chirp[k] * scale;
                }
            }
        }
    }

    /// In-place inverse transform, scaled by `1/len`.
    pub(crate) fn inverse(&self, buf: &mut [Complex64]) {
        for v in buf.iter_mut() {
            *v = v.conj();
        }
        self.forward(buf);
        let scale = 1.0 / self.len as f64;
        for v in buf.iter_mut() {
            *v = v.conj() * scale;
        }
    }
}
