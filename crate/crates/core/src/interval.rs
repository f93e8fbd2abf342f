//! Rational interval arithmetic and axis-aligned complex boxes. These back
//! the certified numeric tier: every enclosure is exact, so excluding zero
//! from an interval is a proof.

use crate::cpoly::CPoly;
use crate::scalars::{Rat, GaussRat};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        RatInterval::point(Rat::zero())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &Rat) -> RatInterval {
        if c >= &Rat::zero() {
            RatInterval::new(&self.lo * c, &self.hi * c)
        } else {
            RatInterval::new(&self.hi * c, &self.lo * c)
        }
    }

    /// Largest absolute value attained on the interval.
    pub fn abs_upper(&self) -> Rat {
        use num_traits::Signed;
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }
}

/// Axis-aligned rectangle in the complex plane with rational corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexBox {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn point(z: &GaussRat) -> Self {
        ComplexBox {
            re: RatInterval::point(z.re.clone()),
            im: RatInterval::point(z.im.clone()),
        }
    }

    pub fn mid(&self) -> GaussRat {
        GaussRat::new(self.re.mid(), self.im.mid())
    }

    pub fn width(&self) -> Rat {
        let wr = self.re.width();
        let wi = self.im.width();
        if wr > wi {
            wr
        } else {
            wi
        }
    }

    pub fn contains(&self, z: &GaussRat) -> bool {
        self.re.contains(&z.re) && self.im.contains(&z.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &ComplexBox) -> ComplexBox {
        let rr = self.re.mul(&o.re);
        let ii = self.im.mul(&o.im);
        let ri = self.re.mul(&o.im);
        let ir = self.im.mul(&o.re);
        ComplexBox {
            re: rr.sub(&ii),
            im: ri.add(&ir),
        }
    }

    pub fn mul_exact(&self, c: &GaussRat) -> ComplexBox {
        self.mul(&ComplexBox::point(c))
    }

    /// Upper bound on |z|² over the box.
    pub fn norm_upper(&self) -> Rat {
        let a = self.re.abs_upper();
        let b = self.im.abs_upper();
        &a * &a + &b * &b
    }

    /// Interval enclosure of |z|² over the box.
    pub fn norm_interval(&self) -> RatInterval {
        let re2 = self.re.mul(&self.re);
        let im2 = self.im.mul(&self.im);
        // squares are nonnegative; clamp the lower end at zero
        let clamp = |iv: RatInterval| -> RatInterval {
            if iv.lo < Rat::zero() {
                RatInterval::new(Rat::zero(), iv.hi)
            } else {
                iv
            }
        };
        clamp(re2).add(&clamp(im2))
    }

    /// Evaluates a complex polynomial over the box by Horner's rule.
    pub fn eval_poly(&self, p: &CPoly) -> ComplexBox {
        let mut acc = ComplexBox::point(&crate::scalars::gr_zero());
        for c in p.0.iter().rev() {
            acc = acc.mul(self).add(&ComplexBox::point(c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{gr_int, rat, rat_int};

    #[test]
    fn interval_multiplication_covers_products() {
        let a = RatInterval::new(rat_int(-2), rat_int(3));
        let b = RatInterval::new(rat_int(-1), rat_int(4));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat_int(-8));
        assert_eq!(p.hi, rat_int(12));
    }

    #[test]
    fn box_poly_eval_encloses_value() {
        // p(z) = z² + 1 at z = 2+i gives 4+4i-1+1 = 4+4i
        let p = CPoly::new(vec![gr_int(1, 0), gr_int(0, 0), gr_int(1, 0)]);
        let z = gr_int(2, 1);
        let tiny = rat(1, 1000);
        let b = ComplexBox::new(
            RatInterval::new(&z.re - &tiny, &z.re + &tiny),
            RatInterval::new(&z.im - &tiny, &z.im + &tiny),
        );
        let val = b.eval_poly(&p);
        assert!(val.contains(&p.eval(&z)));
        assert!(!val.contains_zero());
    }
}
