//! Double-double reference for J0 and Y0: power series up to 18, Hankel asymptotics beyond.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
}

impl Dd {
    fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let s = two_sum(s.hi, s.lo + t.hi);
        two_sum(s.hi, s.lo + t.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div_f(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let r = self.add(Dd::new(q1).mul(Dd::new(-d)));
        let q2 = r.hi / d;
        let r = r.add(Dd::new(q2).mul(Dd::new(-d)));
        two_sum(q1, q2).add(Dd::new(r.hi / d))
    }

    fn f(self) -> f64 {
        self.hi + self.lo
    }
}

const EULER: Dd = Dd { hi: 0.577_215_664_901_532_9, lo: -4.942_915_152_430_645e-18 };
const TWO_OVER_PI: Dd = Dd { hi: std::f64::consts::FRAC_2_PI, lo: -3.935_735_335_036_497e-17 };

pub fn series(x: f64) -> (f64, f64) {
    let q = Dd::new(x).mul(Dd::new(x)).div_f(4.0);
    let mut term = Dd::new(1.0);
    let mut j = Dd::new(1.0);
    let mut s = Dd::new(0.0);
    let mut harmonic = Dd::new(0.0);
    for k in 1..400 {
        let kf = k as f64;
        term = term.mul(q).div_f(-kf * kf);
        harmonic = harmonic.add(Dd::new(1.0).div_f(kf));
        j = j.add(term);
        // (−1)^{k+1} H_k q^k/(k!)² = −H_k · term
        s = s.add(harmonic.mul(term).mul(Dd::new(-1.0)));
        if term.hi.abs() < 1e-40 {
            break;
        }
    }
    let log = Dd::new((x / 2.0).ln()).add(EULER);
    let y = TWO_OVER_PI.mul(log.mul(j).add(s));
    (j.f(), y.f())
}

pub fn asymptotic(x: f64) -> (f64, f64) {
    // |a_k| = Π_{m=1..k} (2m−1)² / (k! 8^k); for order 0, a_k carries (−1)^k
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        if k > 0 {
            let m = (2 * k - 1) as f64;
            a *= m * m / (k as f64 * 8.0 * x);
        }
        if a.abs() > last {
            break;
        }
        last = a.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q -= sign * a;
        }
    }
    let (s, c) = x.sin_cos();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (cos_chi, sin_chi) = ((c + s) * r, (s - c) * r);
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    (amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi))
}

pub fn oracle(x: f64) -> (f64, f64) {
    if x <= 18.0 {
        series(x)
    } else {
        asymptotic(x)
    }
}

pub fn log_spaced(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}
