//! Distribution functions and small-sample tests.
//!
//! Kept dependency-free on purpose: the t quantile is obtained by a
//! safeguarded Newton iteration on the t upper tail, which is evaluated
//! through the regularized incomplete beta function (continued fraction,
//! modified Lentz). The normal quantile is Wichura's AS 241 (PPND16).
//! Both are accurate to well below 1e-8 over the ranges used here.

#![allow(clippy::excessive_precision)]

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the series in its accurate range
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let (qab, qap, qam) = (a + b, a + 1.0, a - 1.0);
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=5000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)`, with `y = 1 - x` supplied by
/// the caller so that it can be formed without cancellation.
fn beta_reg(a: f64, b: f64, x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if y <= 0.0 {
        return 1.0;
    }
    let front = (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * y.ln()).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, y) / b
    }
}

/// `P(T > t)` for `t >= 0`, accurate far into the tail.
fn t_upper(t: f64, df: f64) -> f64 {
    let t2 = t * t;
    0.5 * beta_reg(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2))
}

pub fn t_cdf(t: f64, df: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t >= 0.0 {
        1.0 - t_upper(t, df)
    } else {
        t_upper(-t, df)
    }
}

pub fn t_pdf(t: f64, df: f64) -> f64 {
    (ln_gamma((df + 1.0) / 2.0)
        - ln_gamma(df / 2.0)
        - 0.5 * (df * std::f64::consts::PI).ln()
        - (df + 1.0) / 2.0 * (t * t / df).ln_1p())
    .exp()
}

/// Inverse CDF of Student's t with `df > 0` degrees of freedom.
pub fn t_quantile(p: f64, df: f64) -> f64 {
    assert!(
        p > 0.0 && p < 1.0 && df > 0.0,
        "t_quantile needs 0 < p < 1 and df > 0"
    );
    if p == 0.5 {
        return 0.0;
    }
    if p < 0.5 {
        return -t_quantile(1.0 - p, df);
    }
    let target = 1.0 - p;
    let (mut lo, mut hi) = (0.0, 1.0);
    while t_upper(hi, df) > target {
        lo = hi;
        hi *= 2.0;
    }
    let mut t = normal_quantile(p).clamp(lo, hi);
    if t <= lo || t >= hi {
        t = 0.5 * (lo + hi);
    }
    for _ in 0..200 {
        let f = t_upper(t, df) - target;
        if f > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let slope = -t_pdf(t, df);
        let mut next = t - f / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let step = (next - t).abs();
        t = next;
        if step <= 1e-15 * t.abs().max(1.0) || hi - lo <= 1e-15 * hi {
            break;
        }
    }
    t
}

const A: [f64; 8] = [
    3.387_132_872_796_366_608,
    133.141_667_891_784_377_45,
    1_971.590_950_306_551_442_7,
    13_731.693_765_509_461_125,
    45_921.953_931_549_871_457,
    67_265.770_927_008_700_853,
    33_430.575_583_588_128_105,
    2_509.080_928_730_122_672_7,
];
const B: [f64; 8] = [
    1.0,
    42.313_330_701_600_911_252,
    687.187_007_492_057_908_3,
    5_394.196_021_424_751_107_7,
    21_213.794_301_586_595_867,
    39_307.895_800_092_710_61,
    28_729.085_735_721_942_674,
    5_226.495_278_852_854_561,
];
const C: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_9,
    5.769_497_221_460_691_405_5,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    0.241_780_725_177_450_611_77,
    0.022_723_844_989_269_184_583_3,
    7.745_450_142_783_414_076_4e-4,
];
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_4,
    0.689_767_334_985_100_004_55,
    0.148_103_976_427_480_074_59,
    0.015_198_666_563_616_457_196_6,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_24e-9,
];
const E: [f64; 8] = [
    6.657_904_643_501_103_777_2,
    5.463_784_911_164_114_369_9,
    1.784_826_539_917_291_335_8,
    0.296_560_571_828_504_891_23,
    0.026_532_189_526_576_123_093,
    0.001_242_660_947_388_078_438_6,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const F: [f64; 8] = [
    1.0,
    0.599_832_206_555_887_937_69,
    0.136_929_880_922_735_805_31,
    0.014_875_361_290_850_614_852_5,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];

fn poly(coef: &[f64; 8], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Inverse standard normal CDF (AS 241, PPND16).
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "normal_quantile needs 0 < p < 1");
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let r = (-r.ln()).sqrt();
    let val = if r <= 5.0 {
        let r = r - 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        let r = r - 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -val
    } else {
        val
    }
}

/// Wilson score interval for `successes` out of `trials` at confidence
/// `level`. The bounds are exactly 0 and 1 at the boundary counts.
pub fn wilson_interval(successes: u64, trials: u64, level: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "wilson_interval: trials must be at least 1".into(),
        ));
    }
    if successes > trials {
        return Err(Error::InvalidArgument(format!(
            "wilson_interval: successes ({successes}) exceed trials ({trials})"
        )));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "wilson_interval: level {level} is not in (0, 1)"
        )));
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Ok((low, high))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub t: f64,
    pub df: u64,
    pub mean_diff: f64,
    /// 95% two-sided interval for the mean difference.
    pub ci_low: f64,
    pub ci_high: f64,
    /// Two-sided p-value.
    pub p_value: f64,
}

/// Paired-samples t-test on `d_i = a_i - b_i`.
///
/// When every difference is identical the standard deviation is zero: a
/// zero mean then yields `t = 0` (and p = 1) by convention, and a nonzero
/// mean is reported as a degenerate, infinite t.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TTestResult> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "paired t-test needs at least 2 pairs, got {n}"
        )));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let nf = n as f64;
    let mean = d.iter().sum::<f64>() / nf;
    let df = (n - 1) as u64;
    if d.iter().all(|x| *x == d[0]) {
        if d[0] == 0.0 {
            return Ok(TTestResult {
                t: 0.0,
                df,
                mean_diff: 0.0,
                ci_low: 0.0,
                ci_high: 0.0,
                p_value: 1.0,
            });
        }
        return Err(Error::DegenerateT(d[0]));
    }
    let ss: f64 = d.iter().map(|x| (x - mean) * (x - mean)).sum();
    let se = (ss / (nf - 1.0)).sqrt() / nf.sqrt();
    let t = mean / se;
    let crit = t_quantile(0.975, df as f64);
    let p_value = (2.0 * t_upper(t.abs(), df as f64)).min(1.0);
    Ok(TTestResult {
        t,
        df,
        mean_diff: mean,
        ci_low: mean - crit * se,
        ci_high: mean + crit * se,
        p_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(got: f64, want: f64, tol: f64) {
        assert!(
            (got - want).abs() <= tol * want.abs().max(1.0),
            "got {got}, want {want}"
        );
    }

    // reference values computed with scipy 1.15 (math.lgamma for ln_gamma)
    #[test]
    fn ln_gamma_matches_reference() {
        for (x, want) in [
            (0.5, 0.5723649429247004),
            (1.0, 0.0),
            (3.7, 1.4280723266653883),
            (10.0, 12.801827480081467),
            (100.5, 361.4355404677776),
            (0.01, 4.599479878042022),
        ] {
            close(ln_gamma(x), want, 1e-13);
        }
    }

    #[test]
    fn t_quantile_matches_reference() {
        for (p, df, want) in [
            (0.975, 1.0, 12.706204736432095),
            (0.975, 2.0, 4.302652729696142),
            (0.975, 5.0, 2.570581835636314),
            (0.975, 30.0, 2.0422724563012373),
            (0.975, 512.0, 1.9646081128301771),
            (0.995, 3.0, 5.840909309733352),
            (0.9, 10.0, 1.3721836411102863),
            (0.6, 4.0, 0.2707222947059493),
            (0.025, 7.0, -2.3646242515927844),
            (0.999, 1.0, 318.3088389855419),
            (0.9999, 2.0, 70.70007107496886),
            (0.975, 100000.0, 1.9599877075346093),
        ] {
            close(t_quantile(p, df), want, 1e-8);
        }
        assert_eq!(t_quantile(0.5, 9.0), 0.0);
    }

    #[test]
    fn t_cdf_matches_reference() {
        for (t, df, want) in [
            (2.0, 3.0, 0.9303370157205785),
            (-1.5, 10.0, 0.08225366322272008),
            (0.3, 1.0, 0.5927735790777423),
            (10.0, 2.0, 0.9950737714883371),
            (1.96, 1000.0, 0.9748634075221256),
            (0.0, 5.0, 0.5),
        ] {
            close(t_cdf(t, df), want, 1e-10);
        }
        // deep tail keeps relative accuracy
        let tail = t_cdf(-17.18, 512.0);
        assert!((tail / 7.1705950210191155e-53 - 1.0).abs() < 1e-8, "{tail}");
    }

    #[test]
    fn normal_quantile_matches_reference() {
        for (p, want) in [
            (0.975, 1.959963984540054),
            (0.995, 2.5758293035489004),
            (0.5, 0.0),
            (0.001, -3.090232306167813),
            (1e-10, -6.361340902404056),
            (0.9, 1.2815515655446004),
            (0.3, -0.5244005127080409),
            (0.999999, 4.753424308817087),
        ] {
            close(normal_quantile(p), want, 1e-12);
        }
    }

    // reference: statsmodels proportion_confint(method="wilson")
    #[test]
    fn wilson_matches_reference() {
        for (k, n, level, lo, hi) in [
            (5, 10, 0.95, 0.236593090512564, 0.7634069094874361),
            (0, 10, 0.95, 0.0, 0.2775327998628892),
            (10, 10, 0.95, 0.7224672001371107, 1.0),
            (3, 17, 0.9, 0.07281446654706442, 0.36896697806902595),
            (40, 50, 0.99, 0.6235053370855839, 0.9062034078838395),
            (1, 1, 0.95, 0.20654931437723745, 1.0),
        ] {
            let (l, h) = wilson_interval(k, n, level).unwrap();
            close(l, lo, 1e-12);
            close(h, hi, 1e-12);
        }
        let (l, h) = wilson_interval(0, 10, 0.95).unwrap();
        assert_eq!(l, 0.0);
        assert!(h < 1.0);
        assert_eq!(wilson_interval(10, 10, 0.95).unwrap().1, 1.0);
        let (l, h) = wilson_interval(5, 10, 0.95).unwrap();
        assert!((0.5 - l - (h - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn wilson_rejects_bad_input_and_nests() {
        assert!(wilson_interval(1, 0, 0.95).is_err());
        assert!(wilson_interval(3, 2, 0.95).is_err());
        assert!(wilson_interval(1, 2, 1.0).is_err());
        let mut prev = wilson_interval(7, 20, 0.5).unwrap();
        for level in [0.8, 0.9, 0.95, 0.99, 0.999] {
            let (l, h) = wilson_interval(7, 20, level).unwrap();
            assert!(l < prev.0 && h > prev.1);
            prev = (l, h);
        }
    }

    #[test]
    fn paired_t_closed_forms() {
        let r = paired_t_test(&[1.0, 2.0, 3.0], &[0.0, 0.0, 0.0]).unwrap();
        assert!((r.t - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.df, 2);
        assert_eq!(r.mean_diff, 2.0);
        // CI = 2 ± t(0.975, 2) / sqrt(3)
        close(r.ci_high, 2.0 + 4.302652729696142 / 3f64.sqrt(), 1e-9);
        // scipy.stats.ttest_rel([1,2,3],[0,0,0]).pvalue
        close(r.p_value, 0.07417990022744858, 1e-9);

        let same = paired_t_test(&[1.0, 5.0], &[1.0, 5.0]).unwrap();
        assert_eq!((same.t, same.mean_diff, same.p_value), (0.0, 0.0, 1.0));
        assert!(matches!(
            paired_t_test(&[2.0, 3.0], &[1.0, 2.0]),
            Err(Error::DegenerateT(_))
        ));
        assert!(matches!(
            paired_t_test(&[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(paired_t_test(&[1.0], &[1.0]).is_err());
    }
}
