//! Compensated summation.

use crate::C64;

/// Neumaier's variant of Kahan summation; also correct when a summand is
/// larger in magnitude than the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of complex values, real and imaginary parts separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: C64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<C64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        let mut acc = ComplexSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = C64>>(iter: I) -> C64 {
    iter.into_iter().collect::<ComplexSum>().value()
}
