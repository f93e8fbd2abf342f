//! Exact scalar types: arbitrary-precision rationals and Gaussian rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = num_rational::BigRational;

/// Gaussian rational `re + im·i`.
pub type GaussRat = num_complex::Complex<Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn gr(re: Rat, im: Rat) -> GaussRat {
    GaussRat::new(re, im)
}

pub fn gr_int(re: i64, im: i64) -> GaussRat {
    GaussRat::new(rat_int(re), rat_int(im))
}

pub fn gr_zero() -> GaussRat {
    GaussRat::new(Rat::zero(), Rat::zero())
}

pub fn gr_one() -> GaussRat {
    GaussRat::new(Rat::one(), Rat::zero())
}

pub fn gr_i() -> GaussRat {
    GaussRat::new(Rat::zero(), Rat::one())
}

pub fn gr_from_rat(r: Rat) -> GaussRat {
    GaussRat::new(r, Rat::zero())
}

/// Squared modulus `re² + im²` as a rational.
pub fn gr_norm(a: &GaussRat) -> Rat {
    &a.re * &a.re + &a.im * &a.im
}

pub fn gr_conj(a: &GaussRat) -> GaussRat {
    GaussRat::new(a.re.clone(), -a.im.clone())
}

pub fn gr_inv(a: &GaussRat) -> GaussRat {
    let n = gr_norm(a);
    assert!(!n.is_zero(), "division by zero Gaussian rational");
    GaussRat::new(&a.re / &n, -&a.im / &n)
}

pub fn gr_div(a: &GaussRat, b: &GaussRat) -> GaussRat {
    a * gr_inv(b)
}

pub fn gr_pow(a: &GaussRat, e: u32) -> GaussRat {
    let mut acc = gr_one();
    for _ in 0..e {
        acc = &acc * a;
    }
    acc
}

pub fn rat_pow(a: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= a;
    }
    acc
}

/// Formats a rational as `p/q`, always including the denominator.
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Canonical display string of a Gaussian rational, e.g. `3/2-1/4i`.
pub fn gr_str(a: &GaussRat) -> String {
    if a.im.is_zero() {
        return rat_str(&a.re);
    }
    let im = if a.im.is_negative() {
        format!("-{}i", rat_str(&-a.im.clone()))
    } else {
        format!("+{}i", rat_str(&a.im))
    };
    if a.re.is_zero() && a.im.is_positive() {
        format!("{}i", rat_str(&a.im))
    } else if a.re.is_zero() {
        im.trim_start_matches('+').to_string()
    } else {
        format!("{}{}", rat_str(&a.re), im)
    }
}

/// Human-readable rational: integers drop the denominator.
pub fn rat_pretty(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Human-readable Gaussian rational, e.g. `2`, `i`, `3/2-2i`.
pub fn gr_pretty(a: &GaussRat) -> String {
    if a.im.is_zero() {
        return rat_pretty(&a.re);
    }
    let im_mag = a.im.abs();
    let im_part = if im_mag.is_one() {
        "i".to_string()
    } else {
        format!("{}*i", rat_pretty(&im_mag))
    };
    if a.re.is_zero() {
        if a.im.is_negative() {
            format!("-{}", im_part)
        } else {
            im_part
        }
    } else if a.im.is_negative() {
        format!("{}-{}", rat_pretty(&a.re), im_part)
    } else {
        format!("{}+{}", rat_pretty(&a.re), im_part)
    }
}

/// Exact integer square root if `n` is a perfect square.
fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational square root if one exists.
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = bigint_sqrt_exact(r.numer())?;
    let d = bigint_sqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

/// Exact rational n-th root if one exists (for odd n, negatives allowed).
pub fn rat_nth_root_exact(r: &Rat, n: u32) -> Option<Rat> {
    assert!(n >= 1);
    if n == 1 {
        return Some(r.clone());
    }
    if r.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return rat_nth_root_exact(&-r.clone(), n).map(|x| -x);
    }
    let root_of = |v: &BigInt| -> Option<BigInt> {
        let c = v.nth_root(n);
        if &num_traits::pow(c.clone(), n as usize) == v {
            Some(c)
        } else {
            None
        }
    };
    let num = root_of(r.numer())?;
    let den = root_of(r.denom())?;
    Some(Rat::new(num, den))
}

/// Exact square root in Q(i), if `a` is a perfect square there.
pub fn gauss_sqrt_exact(a: &GaussRat) -> Option<GaussRat> {
    if a.is_zero() {
        return Some(gr_zero());
    }
    // |w|² = |a| must be rational, then solve x² = (Re a + |a|)/2.
    let modulus = rat_sqrt_exact(&gr_norm(a))?;
    let two = rat_int(2);
    let x2 = (&a.re + &modulus) / &two;
    let x = rat_sqrt_exact(&x2)?;
    if x.is_zero() {
        // a is a negative rational: w = sqrt(-a)·i.
        let y = rat_sqrt_exact(&modulus)?;
        let w = gr(Rat::zero(), y);
        return if &w * &w == *a { Some(w) } else { None };
    }
    let y = &a.im / (&two * &x);
    let w = gr(x, y);
    if &w * &w == *a {
        Some(w)
    } else {
        None
    }
}

/// Decimal expansion of `r` with `digits` fractional digits (truncated).
pub fn rat_decimal_str(r: &Rat, digits: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits);
    let sign = if neg && (!int_part.is_zero() || frac_part.magnitude().to_u32() != Some(0)) {
        "-"
    } else if neg {
        ""
    } else {
        ""
    };
    if digits == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!("{}{}.{}", sign, int_part, frac_str)
    }
}

/// 10^-k as a rational, handy for tolerances in tests and reporting.
pub fn rat_pow10_neg(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u32).pow(k))
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued-fraction convergents.
pub fn rational_reconstruct(x: &Rat, max_den: &BigInt) -> Rat {
    let mut p_prev = BigInt::one();
    let mut q_prev = BigInt::zero();
    let mut p = x.numer().div_floor(x.denom());
    let mut q = BigInt::one();
    let mut frac = x - Rat::from_integer(p.clone());
    while !frac.is_zero() {
        let inv = frac.recip();
        let a = inv.numer().div_floor(inv.denom());
        frac = inv - Rat::from_integer(a.clone());
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if &q_next > max_den {
            break;
        }
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Rat::new(p, q)
}

/// Sign of a rational as -1, 0, or 1.
pub fn rat_sign(r: &Rat) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Either an exact Gaussian rational or a boxed algebraic number.
#[derive(Debug, Clone)]
pub enum ComplexScalar {
    Exact(GaussRat),
    Algebraic(crate::algebraic::AlgebraicNumber),
}

impl ComplexScalar {
    pub fn is_zero(&self) -> bool {
        match self {
            ComplexScalar::Exact(g) => g.is_zero(),
            ComplexScalar::Algebraic(_) => false,
        }
    }

    pub fn as_exact(&self) -> Option<&GaussRat> {
        match self {
            ComplexScalar::Exact(g) => Some(g),
            ComplexScalar::Algebraic(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_exact_works() {
        assert_eq!(rat_sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt_exact(&rat(2, 1)), None);
        assert_eq!(rat_sqrt_exact(&rat(-1, 1)), None);
    }

    #[test]
    fn gauss_sqrt_roundtrip() {
        // (2+3i)² = -5+12i
        let a = gr_int(-5, 12);
        let w = gauss_sqrt_exact(&a).unwrap();
        assert_eq!(&w * &w, a);
        // i has no square root in Q(i)
        assert_eq!(gauss_sqrt_exact(&gr_i()), None);
        // -4 → 2i
        let m4 = gr_int(-4, 0);
        let w = gauss_sqrt_exact(&m4).unwrap();
        assert_eq!(&w * &w, m4);
    }

    #[test]
    fn nth_root_exact() {
        assert_eq!(rat_nth_root_exact(&rat(27, 8), 3), Some(rat(3, 2)));
        assert_eq!(rat_nth_root_exact(&rat(-27, 8), 3), Some(rat(-3, 2)));
        assert_eq!(rat_nth_root_exact(&rat(2, 1), 3), None);
        assert_eq!(rat_nth_root_exact(&rat(-4, 1), 2), None);
    }

    #[test]
    fn decimal_printing() {
        assert_eq!(rat_decimal_str(&rat(1, 3), 5), "0.33333");
        assert_eq!(rat_decimal_str(&rat(-7, 2), 3), "-3.500");
        assert_eq!(rat_str(&Rat::zero()), "0/1");
    }

    #[test]
    fn reconstruct_finds_small_rational() {
        // midpoint of a tight box around 3/7
        let x = rat(3, 7) + rat(1, 10_000_000);
        let r = rational_reconstruct(&x, &BigInt::from(1000));
        assert_eq!(r, rat(3, 7));
    }
}
