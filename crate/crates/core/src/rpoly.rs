//! Univariate polynomials with rational coefficients and Sturm-sequence
//! real-root machinery. Used by the complex root counter (boundary crossings)
//! and for isolating real algebraic values.

use crate::scalars::{rat_sign, Rat};
use num_traits::{Signed, Zero};

/// Dense univariate polynomial over the rationals; index = degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPoly(pub Vec<Rat>);

impl RPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        RPoly(coeffs)
    }

    pub fn zero() -> Self {
        RPoly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        rat_sign(&self.eval(x))
    }

    pub fn derivative(&self) -> RPoly {
        if self.0.len() <= 1 {
            return RPoly::zero();
        }
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        RPoly::new(coeffs)
    }

    /// Divides by the absolute value of the leading coefficient; keeps signs.
    fn normalize_positive(mut self) -> RPoly {
        if self.is_zero() {
            return self;
        }
        let lead_abs = self.0.last().unwrap().abs();
        for c in &mut self.0 {
            *c = std::mem::take(c) / &lead_abs;
        }
        self
    }

    fn rem(&self, div: &RPoly) -> RPoly {
        assert!(!div.is_zero());
        let mut r = self.0.clone();
        let dd = div.degree().unwrap();
        let lead = div.0.last().unwrap().clone();
        while r.len() > dd {
            let k = r.len() - 1;
            let q = r[k].clone() / &lead;
            if !q.is_zero() {
                for (i, c) in div.0.iter().enumerate() {
                    let idx = k - dd + i;
                    let delta = &q * c;
                    r[idx] = std::mem::take(&mut r[idx]) - delta;
                }
            }
            r.pop();
        }
        RPoly::new(r)
    }

    pub fn exact_div(&self, div: &RPoly) -> RPoly {
        let mut r = self.0.clone();
        let dd = div.degree().unwrap();
        let lead = div.0.last().unwrap().clone();
        let mut q = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1;
            let c = r[k].clone() / &lead;
            q[k - dd] = c.clone();
            for (i, dc) in div.0.iter().enumerate() {
                let idx = k - dd + i;
                let delta = &c * dc;
                r[idx] = std::mem::take(&mut r[idx]) - delta;
            }
            r.pop();
        }
        RPoly::new(q)
    }

    pub fn gcd(&self, other: &RPoly) -> RPoly {
        let mut a = self.clone().normalize_positive();
        let mut b = other.clone().normalize_positive();
        while !b.is_zero() {
            let r = a.rem(&b).normalize_positive();
            a = b;
            b = r;
        }
        a
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> RPoly {
        assert!(!self.is_zero());
        let g = self.gcd(&self.derivative());
        match g.degree() {
            None | Some(0) => self.clone(),
            _ => self.exact_div(&g),
        }
    }
}

/// Sturm chain of the square-free part of a polynomial.
pub struct Sturm {
    chain: Vec<RPoly>,
    sf: RPoly,
}

impl Sturm {
    pub fn new(p: &RPoly) -> Self {
        let sf = p.squarefree_part();
        let mut chain = vec![sf.clone().normalize_positive()];
        let d = sf.derivative().normalize_positive();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                let mut neg = r.normalize_positive();
                for c in &mut neg.0 {
                    *c = -std::mem::take(c);
                }
                chain.push(neg);
            }
        }
        Sturm { chain, sf }
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut prev = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Rat, hi: &Rat) -> usize {
        assert!(lo < hi);
        self.variations(lo) - self.variations(hi)
    }

    /// Number of distinct real roots in `[lo, hi]`.
    pub fn count_closed(&self, lo: &Rat, hi: &Rat) -> usize {
        let mut n = self.count_half_open(lo, hi);
        if self.sf.sign_at(lo) == 0 {
            n += 1;
        }
        n
    }

    /// Isolating intervals for the distinct roots in `[lo, hi]`, sorted.
    /// Each entry `(a, b)` with `a < b` isolates one root in `(a, b]`; entries
    /// with `a == b` are exact rational roots.
    pub fn isolate_in(&self, lo: &Rat, hi: &Rat) -> Vec<(Rat, Rat)> {
        let mut out = Vec::new();
        if self.sf.sign_at(lo) == 0 {
            out.push((lo.clone(), lo.clone()));
        }
        self.isolate_rec(lo, hi, &mut out);
        out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        out
    }

    fn isolate_rec(&self, lo: &Rat, hi: &Rat, out: &mut Vec<(Rat, Rat)>) {
        let n = self.count_half_open(lo, hi);
        if n == 0 {
            return;
        }
        if n == 1 {
            if self.sf.sign_at(hi) == 0 {
                out.push((hi.clone(), hi.clone()));
            } else {
                out.push((lo.clone(), hi.clone()));
            }
            return;
        }
        let mid = (lo + hi) / Rat::from_integer(2.into());
        self.isolate_rec(lo, &mid, out);
        self.isolate_rec(&mid, hi, out);
    }

    /// Shrinks an isolating interval until its width is at most `eps`.
    pub fn refine(&self, mut lo: Rat, mut hi: Rat, eps: &Rat) -> (Rat, Rat) {
        let two = Rat::from_integer(2.into());
        while lo != hi && &(&hi - &lo) > eps {
            let mid = (&lo + &hi) / &two;
            if self.sf.sign_at(&mid) == 0 {
                return (mid.clone(), mid);
            }
            if self.count_half_open(&lo, &mid) > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, rat_int};

    fn poly(cs: &[i64]) -> RPoly {
        RPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x+2)x = x³ + x² - 2x
        let p = poly(&[0, -2, 1, 1]);
        let s = Sturm::new(&p);
        assert_eq!(s.count_closed(&rat_int(-3), &rat_int(3)), 3);
        assert_eq!(s.count_half_open(&rat_int(0), &rat_int(3)), 1);
        assert_eq!(s.count_closed(&rat_int(0), &rat_int(3)), 2);
        // endpoint root at hi is included by half-open count
        assert_eq!(s.count_half_open(&rat_int(-3), &rat_int(0)), 2);
    }

    #[test]
    fn isolation_separates_roots() {
        let p = poly(&[0, -2, 1, 1]);
        let s = Sturm::new(&p);
        let roots = s.isolate_in(&rat_int(-10), &rat_int(10));
        assert_eq!(roots.len(), 3);
        let expect = [rat_int(-2), rat_int(0), rat_int(1)];
        for ((lo, hi), e) in roots.into_iter().zip(expect) {
            let (lo, hi) = s.refine(lo, hi, &rat(1, 1000));
            assert!(lo <= e && e <= hi, "expected {} in [{}, {}]", e, lo, hi);
        }
    }

    #[test]
    fn repeated_roots_isolated_once() {
        // (x-1)²(x+1)
        let p = poly(&[1, 1, -1, -1]);
        let s = Sturm::new(&p);
        let roots = s.isolate_in(&rat_int(-5), &rat_int(5));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn exact_rational_roots_reported_exactly() {
        // roots at 1/2 and 2
        let p = poly(&[2, -5, 2]);
        let s = Sturm::new(&p);
        let roots = s.isolate_in(&rat_int(0), &rat_int(2));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[1], (rat_int(2), rat_int(2)));
    }
}
