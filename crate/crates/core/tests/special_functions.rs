//! J₀/Y₀ against an independent oracle: ascending series in double-double
//! arithmetic for x ≤ 18, Hankel asymptotic expansion beyond.

use shadowrank::special::{hankel2_0, j0, j1, y0, y1};

mod support {
    pub mod bessel_oracle;
}
use support::bessel_oracle::{asymptotic, log_spaced, oracle, series};

#[test]
fn oracle_reproduces_reference_digits() {
    let (j, y) = oracle(1.0);
    assert!((j - 0.765_197_686_557_966_6).abs() < 1e-15);
    assert!((y - 0.088_256_964_215_676_96).abs() < 1e-15);
    // both branches agree where they meet
    let (js, ys) = series(18.0);
    let (ja, ya) = asymptotic(18.0);
    assert!((js - ja).abs() < 1e-14 && (ys - ya).abs() < 1e-14);
}

#[test]
fn j0_y0_match_oracle_on_forty_arguments() {
    let mut worst: f64 = 0.0;
    for x in log_spaced(40, 1e-3, 1e5) {
        let (jo, yo) = oracle(x);
        let (ej, ey) = ((j0(x) - jo).abs() / jo.abs(), (y0(x) - yo).abs() / yo.abs());
        assert!(ej <= 1e-10, "J0({x}): rel err {ej:e}");
        assert!(ey <= 1e-10, "Y0({x}): rel err {ey:e}");
        worst = worst.max(ej).max(ey);
    }
    println!("worst relative error {worst:e}");
}

#[test]
fn hankel_is_j0_minus_j_y0() {
    for x in log_spaced(12, 1e-2, 1e4) {
        let h = hankel2_0(x);
        assert_eq!((h.re, h.im), (j0(x), -y0(x)));
    }
}

#[test]
fn wronskian() {
    for x in log_spaced(40, 1e-3, 1e5) {
        // J0 Y0' − J0' Y0 with J0' = −J1, Y0' = −Y1
        let w = j1(x) * y0(x) - j0(x) * y1(x);
        let exact = 2.0 / (std::f64::consts::PI * x);
        assert!((w / exact - 1.0).abs() < 1e-9, "x={x}");
    }
}
