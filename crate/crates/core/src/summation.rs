//! Compensated (Neumaier) summation for real and complex accumulators.

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<F> {
    sum: F,
    compensation: F,
}

impl<F: Real> CompensatedSum<F> {
    pub fn new() -> Self {
        Self { sum: F::zero(), compensation: F::zero() }
    }

    pub fn add(&mut self, value: F) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation = self.compensation + ((self.sum - t) + value);
        } else {
            self.compensation = self.compensation + ((value - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> F {
        self.sum + self.compensation
    }
}

impl<F: Real> FromIterator<F> for CompensatedSum<F> {
    fn from_iter<I: IntoIterator<Item = F>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplex<F> {
    re: CompensatedSum<F>,
    im: CompensatedSum<F>,
}

impl<F: Real> CompensatedComplex<F> {
    pub fn new() -> Self {
        Self { re: CompensatedSum::new(), im: CompensatedSum::new() }
    }

    pub fn add(&mut self, value: Complex<F>) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    pub fn merge(&mut self, other: &Self) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex<F> {
        Complex::new(self.re.value(), self.im.value())
    }
}
