//! Minimal double-double arithmetic (Dekker splitting, no FMA) used where a
//! single f64 accumulator would lose digits to alternating-term cancellation.

#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const SPLIT: f64 = 134217729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLIT * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn zero() -> Self {
        Dd { hi: 0.0, lo: 0.0 }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, d: f64) -> Dd {
        let q0 = self.hi / d;
        let (p, e) = two_prod(q0, d);
        let r = (self.hi - p) - e + self.lo;
        let q1 = r / d;
        let (hi, lo) = quick_two_sum(q0, q1);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs_hi(self) -> f64 {
        self.hi.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_round_trips() {
        let third = Dd::from_f64(1.0).div_f64(3.0);
        let one = third.mul_f64(3.0);
        assert!((one.hi - 1.0).abs() < 1e-30 && one.lo.abs() < 1e-30);
    }

    #[test]
    fn keeps_thirty_digits_through_cancellation() {
        // (1 + 1e-20) - 1 survives in dd, vanishes in f64
        let x = Dd::from_f64(1.0).add(Dd {
            hi: 1e-20,
            lo: 0.0,
        });
        let diff = x.add(Dd::from_f64(-1.0));
        assert!((diff.to_f64() - 1e-20).abs() < 1e-33);
    }

    #[test]
    fn product_error_term_is_exact() {
        let a = 1.0 + 2f64.powi(-30);
        let b = 1.0 - 2f64.powi(-29);
        let d = Dd::from_f64(a).mul(Dd::from_f64(b));
        let exact = 1.0 - 2f64.powi(-29) + 2f64.powi(-30) - 2f64.powi(-59);
        assert!((d.to_f64() - exact).abs() < 1e-30);
    }
}
