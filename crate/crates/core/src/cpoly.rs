//! Univariate polynomials over the Gaussian rationals: arithmetic, monic
//! Euclidean gcd, square-free decomposition, and small helpers used by the
//! root isolator and the similarity system.

use crate::error::{Error, Result};
use crate::scalars::{gr_conj, gr_inv, gr_zero, GaussRat, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// Dense univariate polynomial over Q(i); index = degree of the monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPoly(pub Vec<GaussRat>);

impl CPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        CPoly(coeffs)
    }

    pub fn zero() -> Self {
        CPoly(Vec::new())
    }

    pub fn one() -> Self {
        CPoly(vec![GaussRat::one()])
    }

    pub fn constant(c: GaussRat) -> Self {
        CPoly::new(vec![c])
    }

    /// The monomial c·z^k.
    pub fn monomial(c: GaussRat, k: usize) -> Self {
        let mut v = vec![gr_zero(); k + 1];
        v[k] = c;
        CPoly::new(v)
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

    pub fn coeff(&self, k: usize) -> GaussRat {
        self.0.get(k).cloned().unwrap_or_else(gr_zero)
    }

    pub fn leading(&self) -> GaussRat {
        self.0.last().cloned().unwrap_or_else(gr_zero)
    }

    pub fn eval(&self, z: &GaussRat) -> GaussRat {
        let mut acc = gr_zero();
        for c in self.0.iter().rev() {
            acc = &acc * z + c;
        }
        acc
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + other.coeff(k));
        }
        CPoly::new(v)
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) - other.coeff(k));
        }
        CPoly::new(v)
    }

    pub fn neg(&self) -> CPoly {
        CPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        if self.is_zero() || other.is_zero() {
            return CPoly::zero();
        }
        let mut v = vec![gr_zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                v[i + j] = std::mem::replace(&mut v[i + j], gr_zero()) + prod;
            }
        }
        CPoly::new(v)
    }

    pub fn scale(&self, c: &GaussRat) -> CPoly {
        CPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> CPoly {
        if self.0.len() <= 1 {
            return CPoly::zero();
        }
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * GaussRat::new(Rat::from_integer(i.into()), Rat::zero()))
            .collect();
        CPoly::new(coeffs)
    }

    /// Coefficientwise complex conjugate.
    pub fn conj_coeffs(&self) -> CPoly {
        CPoly(self.0.iter().map(gr_conj).collect())
    }

    pub fn monic(&self) -> CPoly {
        if self.is_zero() {
            return CPoly::zero();
        }
        let inv = gr_inv(&self.leading());
        self.scale(&inv)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, div: &CPoly) -> (CPoly, CPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = gr_inv(&div.leading());
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (CPoly::zero(), CPoly::new(r));
        }
        let mut q = vec![gr_zero(); r.len() - dd];
        while r.len() > dd {
            let k = r.len() - 1;
            let c = &r[k] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in div.0.iter().enumerate() {
                    let idx = k - dd + i;
                    let delta = &c * dc;
                    r[idx] = std::mem::replace(&mut r[idx], gr_zero()) - delta;
                }
            }
            q[k - dd] = c;
            r.pop();
        }
        (CPoly::new(q), CPoly::new(r))
    }

    pub fn rem(&self, div: &CPoly) -> CPoly {
        self.div_rem(div).1
    }

    /// Exact division; panics if `div` does not divide `self`.
    pub fn exact_div(&self, div: &CPoly) -> CPoly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    pub fn divides(&self, other: &CPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Substitutes z := a·z + b.
    pub fn compose_linear(&self, a: &GaussRat, b: &GaussRat) -> CPoly {
        let mut acc = CPoly::zero();
        let lin = CPoly::new(vec![b.clone(), a.clone()]);
        for c in self.0.iter().rev() {
            acc = acc.mul(&lin).add(&CPoly::constant(c.clone()));
        }
        acc
    }

    /// Monic greatest common divisor over Q(i) via Euclidean remainders.
    pub fn gcd(&self, other: &CPoly) -> Result<CPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::invalid("gcd of two zero polynomials"));
        }
        let mut a = self.monic();
        let mut b = other.monic();
        if a.is_zero() {
            return Ok(b);
        }
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Square-free decomposition by Yun's algorithm: returns `(p_i, i)` pairs
    /// with each `p_i` square-free, pairwise coprime, and
    /// `self = lc · Π p_i^i` up to the leading constant.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(CPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::invalid("square-free decomposition of zero"));
        }
        let p = self.monic();
        if p.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp)?;
        let mut out = Vec::new();
        let mut b = p.exact_div(&a0);
        let mut c = dp.exact_div(&a0);
        let mut i = 1usize;
        loop {
            let d = c.sub(&b.derivative());
            let f = b.gcd(&d)?;
            if f.degree().unwrap_or(0) > 0 {
                out.push((f.clone(), i));
            }
            b = b.exact_div(&f);
            c = d.exact_div(&f);
            i += 1;
            if b.degree() == Some(0) {
                break;
            }
        }
        Ok(out)
    }

    /// Product of distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Result<CPoly> {
        let parts = self.squarefree_decomposition()?;
        let mut acc = CPoly::one();
        for (p, _) in parts {
            acc = acc.mul(&p);
        }
        Ok(acc)
    }

    /// Factors out the power of z dividing this polynomial: returns
    /// (p / z^v, v) with nonzero constant term.
    pub fn strip_zero_roots(&self) -> (CPoly, usize) {
        if self.is_zero() {
            return (CPoly::zero(), 0);
        }
        let v = self.0.iter().position(|c| !c.is_zero()).unwrap();
        (CPoly::new(self.0[v..].to_vec()), v)
    }

    /// Real and imaginary parts as real polynomials (coefficientwise).
    pub fn split_re_im(&self) -> (crate::rpoly::RPoly, crate::rpoly::RPoly) {
        let re = self.0.iter().map(|c| c.re.clone()).collect();
        let im = self.0.iter().map(|c| c.im.clone()).collect();
        (crate::rpoly::RPoly::new(re), crate::rpoly::RPoly::new(im))
    }

    /// An upper bound B such that all roots satisfy |z| < B (Cauchy bound,
    /// relaxed to rational arithmetic on coefficient norms).
    pub fn root_bound(&self) -> Rat {
        assert!(!self.is_zero());
        let lead = self.leading();
        // |lead| >= max(|re|,|im|) of the leading coefficient
        let lead_lower = {
            use num_traits::Signed;
            let re = lead.re.abs();
            let im = lead.im.abs();
            if re > im {
                re
            } else {
                im
            }
        };
        let mut max_ratio = Rat::zero();
        for c in &self.0[..self.0.len().saturating_sub(1)] {
            use num_traits::Signed;
            let upper = c.re.abs() + c.im.abs();
            let ratio = upper / &lead_lower;
            if ratio > max_ratio {
                max_ratio = ratio;
            }
        }
        Rat::one() + max_ratio
    }

    /// Resultant of two polynomials via the Sylvester matrix (exact Gaussian
    /// elimination over Q(i)). Intended for the small polynomials arising in
    /// report generation.
    pub fn resultant(&self, other: &CPoly) -> GaussRat {
        let n = match self.degree() {
            None => return gr_zero(),
            Some(n) => n,
        };
        let m = match other.degree() {
            None => return gr_zero(),
            Some(m) => m,
        };
        if n == 0 {
            return crate::scalars::gr_pow(&self.leading(), m as u32);
        }
        if m == 0 {
            return crate::scalars::gr_pow(&other.leading(), n as u32);
        }
        let size = n + m;
        let mut mat = vec![vec![gr_zero(); size]; size];
        for row in 0..m {
            for (k, c) in self.0.iter().rev().enumerate() {
                mat[row][row + k] = c.clone();
            }
        }
        for row in 0..n {
            for (k, c) in other.0.iter().rev().enumerate() {
                mat[m + row][row + k] = c.clone();
            }
        }
        // determinant by fraction-full elimination (field arithmetic)
        let mut det = GaussRat::one();
        for col in 0..size {
            let pivot = (col..size).find(|&r| !mat[r][col].is_zero());
            let pivot = match pivot {
                None => return gr_zero(),
                Some(p) => p,
            };
            if pivot != col {
                mat.swap(pivot, col);
                det = -det;
            }
            let pv = mat[col][col].clone();
            det = &det * &pv;
            let pv_inv = gr_inv(&pv);
            for r in col + 1..size {
                if mat[r][col].is_zero() {
                    continue;
                }
                let factor = &mat[r][col] * &pv_inv;
                for c in col..size {
                    let delta = &factor * &mat[col][c];
                    mat[r][c] = std::mem::replace(&mut mat[r][c], gr_zero()) - delta;
                }
            }
        }
        det
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = crate::scalars::gr_pretty(c);
            let needs_parens = cs[1..].contains('+') || cs[1..].contains('-');
            let term = if k == 0 {
                if needs_parens {
                    format!("({})", cs)
                } else {
                    cs
                }
            } else {
                let var = if k == 1 {
                    "z".to_string()
                } else {
                    format!("z^{}", k)
                };
                if cs == "1" {
                    var
                } else if cs == "-1" {
                    format!("-{}", var)
                } else if needs_parens {
                    format!("({})*{}", cs, var)
                } else {
                    format!("{}*{}", cs, var)
                }
            };
            if first {
                write!(f, "{}", term)?;
                first = false;
            } else if let Some(stripped) = term.strip_prefix('-') {
                write!(f, " - {}", stripped)?;
            } else {
                write!(f, " + {}", term)?;
            }
        }
        Ok(())
    }
}
