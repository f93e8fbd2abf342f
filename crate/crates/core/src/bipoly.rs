//! Sparse exact bivariate polynomials, the Laplacian, the complex form
//! F(z, z̄), and exact plane maps (isometries and similarities).

use crate::algebraic::ConjPoly;
use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::rpoly::RPoly;
use crate::scalars::{
    gr_conj, gr_norm, gr_zero, rat_nth_root_exact, ComplexScalar, GaussRat, Rat,
};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Real bivariate polynomial; key = (x-degree, y-degree), no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    pub terms: BTreeMap<(u32, u32), Rat>,
}

/// Complex form of a real polynomial; key = (z-degree, z̄-degree).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    pub terms: BTreeMap<(u32, u32), GaussRat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn from_terms(terms: &[(u32, u32, Rat)]) -> Self {
        let mut p = BiPoly::zero();
        for (i, j, c) in terms {
            p.add_term(*i, *j, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * crate::scalars::rat_pow(x, i) * crate::scalars::rat_pow(y, j);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for (&(i, j), c) in &self.terms {
            acc += c.to_f64().unwrap_or(0.0) * x.powi(i as i32) * y.powi(j as i32);
        }
        acc
    }

    pub fn partial_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * Rat::from_integer(i.into()));
            }
        }
        out
    }

    pub fn partial_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * Rat::from_integer(j.into()));
            }
        }
        out
    }

    /// Sum of second partials; degree drops by at least two.
    pub fn laplacian(&self) -> BiPoly {
        self.partial_x().partial_x().add(&self.partial_y().partial_y())
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, k: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == k)
                .map(|(&key, c)| (key, c.clone()))
                .collect(),
        }
    }

    /// f(x + a, y + b), computed over cleared denominators so that large
    /// rational shifts stay in integer arithmetic until the final division.
    pub fn translate(&self, a: &Rat, b: &Rat) -> BiPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return BiPoly::zero();
        }
        let n = self.degree().unwrap();
        let v = a.denom().lcm(b.denom());
        let mut den_f = num_bigint::BigInt::from(1);
        for c in self.terms.values() {
            den_f = den_f.lcm(c.denom());
        }
        let ai = (a * Rat::from_integer(v.clone())).to_integer();
        let bi = (b * Rat::from_integer(v.clone())).to_integer();
        // integerized g_ij = c_ij · den_f · v^(n-i-j)
        let mut v_pows = vec![num_bigint::BigInt::from(1)];
        for k in 1..=n as usize {
            let next = &v_pows[k - 1] * &v;
            v_pows.push(next);
        }
        let mut a_pows = vec![num_bigint::BigInt::from(1)];
        let mut b_pows = vec![num_bigint::BigInt::from(1)];
        for k in 1..=n as usize {
            let na = &a_pows[k - 1] * &ai;
            a_pows.push(na);
            let nb = &b_pows[k - 1] * &bi;
            b_pows.push(nb);
        }
        let binom = binom_table(n as usize);
        let mut acc: BTreeMap<(u32, u32), num_bigint::BigInt> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let g = (c * Rat::from_integer(&den_f * &v_pows[(n - i - j) as usize])).to_integer();
            for k in 0..=i {
                let ga = &g * &binom[i as usize][k as usize] * &a_pows[(i - k) as usize];
                for l in 0..=j {
                    let gb = &ga * &binom[j as usize][l as usize] * &b_pows[(j - l) as usize];
                    let e = acc.entry((k, l)).or_insert_with(|| num_bigint::BigInt::from(0));
                    *e += gb;
                }
            }
        }
        // result coefficient: acc_kl · v^(k+l) / (den_f · v^n)
        let scale = &den_f * &v_pows[n as usize];
        let mut out = BiPoly::zero();
        for ((k, l), c) in acc {
            if num_traits::Zero::is_zero(&c) {
                continue;
            }
            out.add_term(k, l, Rat::new(c * &v_pows[(k + l) as usize], scale.clone()));
        }
        out
    }

    /// Coefficients of total degree m of f(x + a, y + b), without computing
    /// the full translation. Cheap for m near deg(f).
    pub fn translated_level(&self, a: &Rat, b: &Rat, m: u32) -> BiPoly {
        let n = match self.degree() {
            None => return BiPoly::zero(),
            Some(n) => n,
        };
        if m > n {
            return BiPoly::zero();
        }
        let binom = binom_table(n as usize);
        let mut a_pows = vec![Rat::one()];
        let mut b_pows = vec![Rat::one()];
        for k in 1..=(n - m) as usize {
            let na = &a_pows[k - 1] * a;
            a_pows.push(na);
            let nb = &b_pows[k - 1] * b;
            b_pows.push(nb);
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i + j < m {
                continue;
            }
            // contributions to x^k y^l with k+l = m, k ≤ i, l ≤ j
            for k in 0..=i.min(m) {
                let l = m - k;
                if l > j {
                    continue;
                }
                let coeff = c
                    * &binom_rat(&binom, i as usize, k as usize)
                    * &binom_rat(&binom, j as usize, l as usize)
                    * &a_pows[(i - k) as usize]
                    * &b_pows[(j - l) as usize];
                out.add_term(k, l, coeff);
            }
        }
        out
    }

    /// f(r₁·(x,y,1), r₂·(x,y,1)) for affine rows r = [cx, cy, c1].
    pub fn compose_affine(&self, row_x: &[Rat; 3], row_y: &[Rat; 3]) -> BiPoly {
        let xi = BiPoly::from_terms(&[
            (1, 0, row_x[0].clone()),
            (0, 1, row_x[1].clone()),
            (0, 0, row_x[2].clone()),
        ]);
        let eta = BiPoly::from_terms(&[
            (1, 0, row_y[0].clone()),
            (0, 1, row_y[1].clone()),
            (0, 0, row_y[2].clone()),
        ]);
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut xi_pows = Vec::with_capacity(max_i + 1);
        let mut eta_pows = Vec::with_capacity(max_j + 1);
        xi_pows.push(BiPoly::constant(Rat::one()));
        for k in 1..=max_i {
            let next = xi_pows[k - 1].mul(&xi);
            xi_pows.push(next);
        }
        eta_pows.push(BiPoly::constant(Rat::one()));
        for k in 1..=max_j {
            let next = eta_pows[k - 1].mul(&eta);
            eta_pows.push(next);
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let t = xi_pows[i as usize].mul(&eta_pows[j as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// True if this polynomial is a (possibly trivial) polynomial in the
    /// single linear form `xi = a·x + b·y + c`; returns the univariate
    /// composition witness.
    pub fn as_univariate_in(&self, xi: &LinearForm) -> Option<RPoly> {
        // cheap necessary condition: the top form must be a multiple of
        // (a·x + b·y)^deg
        if let Some(n) = self.degree() {
            let top = self.homogeneous_part(n);
            let dir = BiPoly::from_terms(&[(1, 0, xi.a.clone()), (0, 1, xi.b.clone())]);
            let mut pow = BiPoly::constant(Rat::one());
            for _ in 0..n {
                pow = pow.mul(&dir);
            }
            let (&key, c0) = top.terms.iter().next()?;
            let d0 = pow.coeff(key.0, key.1);
            if d0.is_zero() {
                return None;
            }
            let ratio = c0 / &d0;
            if pow.scale(&ratio) != top {
                return None;
            }
        }
        // substitute the inverse of (u, v) = (a x + b y + c, b x - a y)
        let (a, b, c) = (&xi.a, &xi.b, &xi.c);
        let n2 = a * a + b * b;
        assert!(!n2.is_zero());
        // x = (a (u - c) + b v)/n2, y = (b (u - c) - a v)/n2
        let xr = [a / &n2, b / &n2, -(a * c) / &n2];
        let yr = [b / &n2, -(a / &n2), -(b * c) / &n2];
        let in_uv = self.compose_affine(&xr, &yr);
        // u-only means all y-degrees (v-degrees) are zero
        let mut coeffs: Vec<Rat> = Vec::new();
        for (&(i, j), cf) in &in_uv.terms {
            if j != 0 {
                return None;
            }
            let i = i as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Rat::zero());
            }
            coeffs[i] = cf.clone();
        }
        Some(RPoly::new(coeffs))
    }

    /// Exact division; panics if `div` does not divide exactly.
    pub fn exact_div(&self, div: &BiPoly) -> BiPoly {
        assert!(!div.is_zero());
        let mut rem = self.clone();
        let mut out = BiPoly::zero();
        let div_key = *div.terms.keys().next_back().unwrap();
        let div_lead = div.terms[&div_key].clone();
        while !rem.is_zero() {
            let &(ri, rj) = rem.terms.keys().next_back().unwrap();
            let (di, dj) = div_key;
            assert!(ri >= di && rj >= dj, "exact_div: not divisible");
            let q = &rem.terms[&(ri, rj)] / &div_lead;
            let qi = ri - di;
            let qj = rj - dj;
            out.add_term(qi, qj, q.clone());
            let mono = BiPoly::from_terms(&[(qi, qj, q)]);
            rem = rem.sub(&mono.mul(div));
        }
        out
    }

    pub fn divides(&self, other: &BiPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        // trial division in the (y, x)-lex order used by exact_div
        let mut rem = other.clone();
        let div_key = *self.terms.keys().next_back().unwrap();
        let div_lead = self.terms[&div_key].clone();
        while !rem.is_zero() {
            let &(ri, rj) = rem.terms.keys().next_back().unwrap();
            let (di, dj) = div_key;
            if ri < di || rj < dj {
                return false;
            }
            let q = &rem.terms[&(ri, rj)] / &div_lead;
            let mono = BiPoly::from_terms(&[(ri - di, rj - dj, q)]);
            rem = rem.sub(&mono.mul(self));
        }
        true
    }

    // ------------------------------------------------------------------
    // gcd and square-free part (primitive PRS with y as main variable)
    // ------------------------------------------------------------------

    fn to_y_coeffs(&self) -> Vec<RPoly> {
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); max_j + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j as usize];
            let i = i as usize;
            if row.len() <= i {
                row.resize(i + 1, Rat::zero());
            }
            row[i] = c.clone();
        }
        rows.into_iter().map(RPoly::new).collect()
    }

    fn y_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    fn x_only(&self) -> Option<RPoly> {
        if self.y_degree() != 0 {
            return None;
        }
        let mut coeffs = Vec::new();
        for (&(i, _), c) in &self.terms {
            let i = i as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Rat::zero());
            }
            coeffs[i] = c.clone();
        }
        Some(RPoly::new(coeffs))
    }

    fn from_rpoly_x(p: &RPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, c) in p.0.iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }

    /// Content with respect to y: monic gcd in Q[x] of the y-coefficients.
    fn content_y(&self) -> RPoly {
        let mut acc = RPoly::zero();
        for row in self.to_y_coeffs() {
            if row.is_zero() {
                continue;
            }
            acc = if acc.is_zero() { row } else { acc.gcd(&row) };
        }
        // make monic
        if acc.is_zero() {
            return acc;
        }
        let lead = acc.0.last().unwrap().clone();
        RPoly::new(acc.0.iter().map(|c| c / &lead).collect())
    }

    /// gcd up to a rational constant, via the primitive PRS in y.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if let (Some(p), Some(q)) = (self.x_only(), other.x_only()) {
            return BiPoly::from_rpoly_x(&p.gcd(&q));
        }
        if self.y_degree() == 0 {
            let p = self.x_only().unwrap();
            return BiPoly::from_rpoly_x(&p.gcd(&other.content_y()));
        }
        if other.y_degree() == 0 {
            let q = other.x_only().unwrap();
            return BiPoly::from_rpoly_x(&q.gcd(&self.content_y()));
        }
        let cont_gcd = self.content_y().gcd(&other.content_y());
        let pp_self = self.exact_div(&BiPoly::from_rpoly_x(&self.content_y()));
        let pp_other = other.exact_div(&BiPoly::from_rpoly_x(&other.content_y()));
        let mut f = pp_self;
        let mut g = pp_other;
        if f.y_degree() < g.y_degree() {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = f.pseudo_rem_y(&g);
            if r.is_zero() {
                break;
            }
            let r_pp = match r.y_degree() {
                0 => {
                    // coprime in y: the gcd is just the content part
                    return BiPoly::from_rpoly_x(&cont_gcd);
                }
                _ => r.primitive_part_y(),
            };
            f = g;
            g = r_pp;
        }
        let g_pp = g.primitive_part_y();
        g_pp.mul(&BiPoly::from_rpoly_x(&cont_gcd))
    }

    fn primitive_part_y(&self) -> BiPoly {
        let c = self.content_y();
        if c.is_zero() {
            return self.clone();
        }
        self.exact_div(&BiPoly::from_rpoly_x(&c))
    }

    /// Pseudo-remainder of self by div, both seen in (Q[x])[y].
    fn pseudo_rem_y(&self, div: &BiPoly) -> BiPoly {
        let dy = div.y_degree();
        let rows = div.to_y_coeffs();
        let div_lead = BiPoly::from_rpoly_x(rows.last().unwrap());
        let mut rem = self.clone();
        while !rem.is_zero() && rem.y_degree() >= dy {
            let ry = rem.y_degree();
            let rem_rows = rem.to_y_coeffs();
            let rem_lead = BiPoly::from_rpoly_x(&rem_rows[ry as usize]);
            // lead(div)·rem - lead(rem)·y^(ry-dy)·div
            let shift = BiPoly::from_terms(&[(0, ry - dy, Rat::one())]);
            rem = rem.mul(&div_lead).sub(&rem_lead.mul(&shift).mul(div));
            debug_assert!(rem.is_zero() || rem.y_degree() < ry || rem.y_degree() < self.y_degree());
        }
        rem
    }

    /// Product of the distinct irreducible factors, normalized to content 1
    /// and positive leading coefficient in the canonical term order.
    pub fn squarefree_part(&self) -> Result<BiPoly> {
        if self.is_zero() {
            return Err(Error::invalid("square-free part of the zero polynomial"));
        }
        if self.is_constant() {
            return Ok(BiPoly::constant(Rat::one()));
        }
        let g1 = self.gcd(&self.partial_x());
        let g = g1.gcd(&self.partial_y());
        let sf = if g.is_constant() {
            self.clone()
        } else {
            self.exact_div(&g)
        };
        Ok(sf.normalized())
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() || self.is_constant() {
            return false;
        }
        let g = self.gcd(&self.partial_x()).gcd(&self.partial_y());
        g.is_constant()
    }

    /// Scales so the leading coefficient (canonical order) is 1.
    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let lead = self.terms.values().next_back().unwrap().clone();
        self.scale(&lead.recip())
    }

    /// Is f a polynomial in (x-cx)² + (y-cy)²? Uses a cheap top-form filter
    /// before the exact recentered check.
    pub fn is_radial_about(&self, center: &GaussRat) -> bool {
        let Some(n) = self.degree() else { return true };
        if n % 2 != 0 {
            return false;
        }
        let top = self.homogeneous_part(n);
        let r2 = BiPoly::from_terms(&[(2, 0, Rat::one()), (0, 2, Rat::one())]);
        let mut pow = BiPoly::constant(Rat::one());
        for _ in 0..n / 2 {
            pow = pow.mul(&r2);
        }
        let c0 = top.coeff(n, 0);
        if c0.is_zero() || pow.scale(&c0) != top {
            return false;
        }
        self.translate(&center.re, &center.im).to_complex().is_radial()
    }

    // ------------------------------------------------------------------
    // Complex form
    // ------------------------------------------------------------------

    /// Rewrites via x = (z + z̄)/2, y = -i(z - z̄)/2.
    pub fn to_complex(&self) -> ZPoly {
        let half = GaussRat::new(Rat::new(1.into(), 2.into()), Rat::zero());
        let mhalf_i = GaussRat::new(Rat::zero(), Rat::new((-1).into(), 2.into()));
        // x-image: (1/2) z + (1/2) z̄ ; y-image: (-i/2) z + (i/2) z̄
        let x_img = ZPoly::from_terms(&[((1, 0), half.clone()), ((0, 1), half)]);
        let y_img = ZPoly::from_terms(&[((1, 0), mhalf_i.clone()), ((0, 1), -mhalf_i)]);
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut xp = vec![ZPoly::one()];
        for k in 1..=max_i {
            let next = xp[k - 1].mul(&x_img);
            xp.push(next);
        }
        let mut yp = vec![ZPoly::one()];
        for k in 1..=max_j {
            let next = yp[k - 1].mul(&y_img);
            yp.push(next);
        }
        let mut out = ZPoly::zero();
        for (&(i, j), c) in &self.terms {
            let gc = GaussRat::new(c.clone(), Rat::zero());
            let term = xp[i as usize].mul(&yp[j as usize]).scale(&gc);
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // descending by total degree, then x-degree
        let mut keys: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by(|&(i1, j1), &(i2, j2)| {
            (i2 + j2, i2).cmp(&(i1 + j1, i1))
        });
        let mut first = true;
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let mut factors: Vec<String> = Vec::new();
            let abs = c.abs();
            if !abs.is_one() || (i == 0 && j == 0) {
                factors.push(crate::scalars::rat_pretty(&abs));
            }
            if i == 1 {
                factors.push("x".into());
            } else if i > 1 {
                factors.push(format!("x^{}", i));
            }
            if j == 1 {
                factors.push("y".into());
            } else if j > 1 {
                factors.push(format!("y^{}", j));
            }
            let term = factors.join("*");
            if first {
                if c.is_negative() {
                    write!(f, "-{}", term)?;
                } else {
                    write!(f, "{}", term)?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", term)?;
            } else {
                write!(f, " + {}", term)?;
            }
        }
        Ok(())
    }
}

fn binom_table(n: usize) -> Vec<Vec<num_bigint::BigInt>> {
    let mut t: Vec<Vec<num_bigint::BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![num_bigint::BigInt::from(1); i + 1];
        for k in 1..i {
            row[k] = &t[i - 1][k - 1] + &t[i - 1][k];
        }
        t.push(row);
    }
    t
}

fn binom_rat(t: &[Vec<num_bigint::BigInt>], i: usize, k: usize) -> Rat {
    Rat::from_integer(t[i][k].clone())
}

/// Linear form a·x + b·y + c with (a, b) ≠ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl LinearForm {
    pub fn from_bipoly(p: &BiPoly) -> Option<LinearForm> {
        if p.degree() != Some(1) {
            return None;
        }
        Some(LinearForm {
            a: p.coeff(1, 0),
            b: p.coeff(0, 1),
            c: p.coeff(0, 0),
        })
    }

    pub fn to_bipoly(&self) -> BiPoly {
        BiPoly::from_terms(&[
            (1, 0, self.a.clone()),
            (0, 1, self.b.clone()),
            (0, 0, self.c.clone()),
        ])
    }

    /// γ ∘ ξ as a bivariate polynomial.
    pub fn substitute_into(&self, gamma: &RPoly) -> BiPoly {
        let xi = self.to_bipoly();
        let mut acc = BiPoly::zero();
        for c in gamma.0.iter().rev() {
            acc = acc.mul(&xi).add(&BiPoly::constant(c.clone()));
        }
        acc
    }
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        let mut t = BTreeMap::new();
        t.insert((0, 0), crate::scalars::gr_one());
        ZPoly { terms: t }
    }

    pub fn from_terms(terms: &[((u32, u32), GaussRat)]) -> Self {
        let mut p = ZPoly::zero();
        for ((j, k), c) in terms {
            p.add_term(*j, *k, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, j: u32, k: u32, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((j, k)).or_insert_with(gr_zero);
        *e = std::mem::replace(e, gr_zero()) + c;
        if self.terms[&(j, k)].is_zero() {
            self.terms.remove(&(j, k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, j: u32, k: u32) -> GaussRat {
        self.terms.get(&(j, k)).cloned().unwrap_or_else(gr_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(j, k)| j + k).max()
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (&(j, k), c) in &o.terms {
            out.add_term(j, k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (&(j, k), c) in &o.terms {
            out.add_term(j, k, -c.clone());
        }
        out
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (&(j1, k1), c1) in &self.terms {
            for (&(j2, k2), c2) in &o.terms {
                out.add_term(j1 + j2, k1 + k2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        let mut out = ZPoly::zero();
        for (&(j, k), v) in &self.terms {
            out.add_term(j, k, v * c);
        }
        out
    }

    /// Reality invariant of complex forms of real polynomials:
    /// c_{kj} = conj(c_{jk}).
    pub fn is_real_form(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(j, k), c)| self.coeff(k, j) == gr_conj(c))
    }

    /// All terms diagonal (j = k): a polynomial in z·z̄.
    pub fn is_radial(&self) -> bool {
        self.terms.keys().all(|&(j, k)| j == k)
    }

    /// Inverse of `to_complex`; errors if the reality invariant fails.
    pub fn to_real(&self) -> Result<BiPoly> {
        if !self.is_real_form() {
            return Err(Error::invalid(
                "complex form violates the reality invariant c_kj = conj(c_jk)",
            ));
        }
        // substitute z = x + i y, z̄ = x - i y over Gaussian coefficients
        let max_j = self.terms.keys().map(|&(j, _)| j).max().unwrap_or(0) as usize;
        let max_k = self.terms.keys().map(|&(_, k)| k).max().unwrap_or(0) as usize;
        // (x + iy)^j as maps (i1, i2) -> GaussRat
        let mut zp: Vec<BTreeMap<(u32, u32), GaussRat>> = vec![BTreeMap::new()];
        zp[0].insert((0, 0), crate::scalars::gr_one());
        for p in 1..=max_j.max(max_k) {
            let mut next: BTreeMap<(u32, u32), GaussRat> = BTreeMap::new();
            for (&(a, b), c) in &zp[p - 1] {
                // multiply by (x + i y)
                let e = next.entry((a + 1, b)).or_insert_with(gr_zero);
                *e = std::mem::replace(e, gr_zero()) + c.clone();
                let ci = c * &crate::scalars::gr_i();
                let e = next.entry((a, b + 1)).or_insert_with(gr_zero);
                *e = std::mem::replace(e, gr_zero()) + ci;
            }
            next.retain(|_, v| !v.is_zero());
            zp.push(next);
        }
        let conj_pow = |m: &BTreeMap<(u32, u32), GaussRat>| -> BTreeMap<(u32, u32), GaussRat> {
            m.iter().map(|(&k, c)| (k, gr_conj(c))).collect()
        };
        let mut acc: BTreeMap<(u32, u32), GaussRat> = BTreeMap::new();
        for (&(j, k), c) in &self.terms {
            let zj = &zp[j as usize];
            let zbk = conj_pow(&zp[k as usize]);
            for (&(a1, b1), c1) in zj {
                for (&(a2, b2), c2) in &zbk {
                    let prod = c * c1 * c2;
                    let e = acc.entry((a1 + a2, b1 + b2)).or_insert_with(gr_zero);
                    *e = std::mem::replace(e, gr_zero()) + prod;
                }
            }
        }
        let mut out = BiPoly::zero();
        for ((i, j), c) in acc {
            if !c.im.is_zero() {
                return Err(Error::internal(
                    "real-form conversion produced an imaginary component",
                ));
            }
            out.add_term(i, j, c.re);
        }
        Ok(out)
    }

    /// F(z - c, z̄ - c̄): recenters so that `c` becomes the origin.
    pub fn recenter(&self, c: &GaussRat) -> ZPoly {
        let zc = ZPoly::from_terms(&[((1, 0), crate::scalars::gr_one()), ((0, 0), c.clone())]);
        let zbc = ZPoly::from_terms(&[((0, 1), crate::scalars::gr_one()), ((0, 0), gr_conj(c))]);
        self.substitute(&zc, &zbc)
    }

    /// Substitutes z := zimg, z̄ := zbimg.
    pub fn substitute(&self, zimg: &ZPoly, zbimg: &ZPoly) -> ZPoly {
        let max_j = self.terms.keys().map(|&(j, _)| j).max().unwrap_or(0) as usize;
        let max_k = self.terms.keys().map(|&(_, k)| k).max().unwrap_or(0) as usize;
        let mut zp = vec![ZPoly::one()];
        for p in 1..=max_j {
            let next = zp[p - 1].mul(zimg);
            zp.push(next);
        }
        let mut zbp = vec![ZPoly::one()];
        for p in 1..=max_k {
            let next = zbp[p - 1].mul(zbimg);
            zbp.push(next);
        }
        let mut out = ZPoly::zero();
        for (&(j, k), c) in &self.terms {
            let term = zp[j as usize].mul(&zbp[k as usize]).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// If proportional, returns λ with self = λ·other.
    pub fn proportionality(&self, other: &ZPoly) -> Option<GaussRat> {
        if other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (&key, c0) = other.terms.iter().next()?;
        let lam = crate::scalars::gr_div(&self.coeff(key.0, key.1), c0);
        for (&(j, k), c) in &other.terms {
            if self.coeff(j, k) != c * &lam {
                return None;
            }
        }
        Some(lam)
    }
}

// ---------------------------------------------------------------------------
// Plane maps
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// z ↦ α·z + β
    Direct,
    /// z ↦ α·z̄ + β
    Opposite,
}

/// β of a plane map: exact, or a polynomial in the (algebraic) α.
#[derive(Debug, Clone)]
pub enum BetaSpec {
    Exact(GaussRat),
    OfAlpha(CPoly),
}

/// An exact similarity of the plane in complex form.
#[derive(Debug, Clone)]
pub struct PlaneMap {
    pub kind: MapKind,
    pub alpha: ComplexScalar,
    pub beta: BetaSpec,
    /// |α|² when exactly known (always for Gaussian α).
    pub norm_sq: Option<Rat>,
}

impl PlaneMap {
    pub fn new_exact(kind: MapKind, alpha: GaussRat, beta: GaussRat) -> Self {
        assert!(!alpha.is_zero(), "plane map with zero alpha");
        let n = gr_norm(&alpha);
        PlaneMap {
            kind,
            alpha: ComplexScalar::Exact(alpha),
            beta: BetaSpec::Exact(beta),
            norm_sq: Some(n),
        }
    }

    pub fn new_algebraic(
        kind: MapKind,
        alpha: crate::algebraic::AlgebraicNumber,
        beta: BetaSpec,
    ) -> Self {
        let norm_sq = binomial_norm_hint(alpha.defining());
        PlaneMap {
            kind,
            alpha: ComplexScalar::Algebraic(alpha),
            beta,
            norm_sq,
        }
    }

    pub fn identity() -> Self {
        PlaneMap::new_exact(MapKind::Direct, crate::scalars::gr_one(), gr_zero())
    }

    /// Reflection across the line through `p` with direction unit w = e^{2iφ}.
    pub fn reflection_exact(w: GaussRat, p: &GaussRat) -> Self {
        let beta = p - &(&w * &gr_conj(p));
        PlaneMap::new_exact(MapKind::Opposite, w, beta)
    }

    pub fn is_isometry_hint(&self) -> Option<bool> {
        self.norm_sq.as_ref().map(|n| n.is_one())
    }

    /// Exact (α, β) if both are Gaussian rational.
    pub fn exact_parts(&self) -> Option<(GaussRat, GaussRat)> {
        match (&self.alpha, &self.beta) {
            (ComplexScalar::Exact(a), BetaSpec::Exact(b)) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }

    /// μ² as an exact rational when available.
    pub fn mu_squared_exact(&self) -> Option<Rat> {
        self.norm_sq.clone()
    }

    /// The affine real form [[cx, cy, c1] for x'; same for y'] of an exact map.
    pub fn as_real_affine(&self) -> Option<([Rat; 3], [Rat; 3])> {
        let (a, b) = self.exact_parts()?;
        match self.kind {
            MapKind::Direct => Some((
                [a.re.clone(), -a.im.clone(), b.re.clone()],
                [a.im.clone(), a.re.clone(), b.im.clone()],
            )),
            MapKind::Opposite => Some((
                [a.re.clone(), a.im.clone(), b.re.clone()],
                [a.im.clone(), -a.re.clone(), b.im.clone()],
            )),
        }
    }

    /// Applies an exact map to a point.
    pub fn apply_exact(&self, z: &GaussRat) -> Option<GaussRat> {
        let (a, b) = self.exact_parts()?;
        Some(match self.kind {
            MapKind::Direct => &a * z + b,
            MapKind::Opposite => &a * &gr_conj(z) + b,
        })
    }
}

/// |root|² for binomial defining polynomials z^m - u, when it is rational.
fn binomial_norm_hint(defining: &CPoly) -> Option<Rat> {
    let deg = defining.degree()?;
    if deg == 0 {
        return None;
    }
    for k in 1..deg {
        if !defining.coeff(k).is_zero() {
            return None;
        }
    }
    let lead = defining.leading();
    let u = -crate::scalars::gr_div(&defining.coeff(0), &lead);
    // |z|^(2m) = |u|²  →  |z|² = norm(u)^(1/m)
    rat_nth_root_exact(&gr_norm(&u), deg as u32)
}

/// Exact composition of a complex form with a plane map (Gaussian parameters).
pub fn compose_exact(f: &ZPoly, m: &PlaneMap) -> Option<ZPoly> {
    let (a, b) = m.exact_parts()?;
    let ac = gr_conj(&a);
    let bc = gr_conj(&b);
    let (zimg, zbimg) = match m.kind {
        MapKind::Direct => (
            ZPoly::from_terms(&[((1, 0), a), ((0, 0), b)]),
            ZPoly::from_terms(&[((0, 1), ac), ((0, 0), bc)]),
        ),
        MapKind::Opposite => (
            ZPoly::from_terms(&[((0, 1), a), ((0, 0), b)]),
            ZPoly::from_terms(&[((1, 0), ac), ((0, 0), bc)]),
        ),
    };
    Some(f.substitute(&zimg, &zbimg))
}

/// Composition with symbolic α (and conj α), β given as a polynomial in α.
/// Coefficients of the result are polynomials in (α, conj α).
pub fn compose_symbolic(f: &ZPoly, kind: MapKind, beta: &CPoly) -> BTreeMap<(u32, u32), ConjPoly> {
    // β(α) and conj β = conj-coeff poly in conj α
    let beta_a = {
        let mut p = ConjPoly::zero();
        for (deg, c) in beta.0.iter().enumerate() {
            p.add_term((deg as u32, 0), c.clone());
        }
        p
    };
    let beta_conj = {
        let mut p = ConjPoly::zero();
        for (deg, c) in beta.0.iter().enumerate() {
            p.add_term((0, deg as u32), gr_conj(c));
        }
        p
    };
    let alpha = ConjPoly::var_alpha();
    let alpha_conj = ConjPoly::var_conj();

    // z-image = s·Z + t where Z is z or z̄ per kind; coefficients ConjPoly
    struct Lin {
        on: (u32, u32), // exponent contribution of the variable part
        s: ConjPoly,
        t: ConjPoly,
    }
    let (zi, zbi) = match kind {
        MapKind::Direct => (
            Lin { on: (1, 0), s: alpha.clone(), t: beta_a.clone() },
            Lin { on: (0, 1), s: alpha_conj.clone(), t: beta_conj.clone() },
        ),
        MapKind::Opposite => (
            Lin { on: (0, 1), s: alpha.clone(), t: beta_a.clone() },
            Lin { on: (1, 0), s: alpha_conj.clone(), t: beta_conj.clone() },
        ),
    };

    let mut acc: BTreeMap<(u32, u32), ConjPoly> = BTreeMap::new();
    let mut add = |key: (u32, u32), val: ConjPoly| {
        let e = acc.entry(key).or_insert_with(ConjPoly::zero);
        *e = e.add(&val);
    };

    // binomial expansion of (s·Z + t)^n per factor, combined per term of f
    let expand = |lin: &Lin, n: u32| -> Vec<((u32, u32), ConjPoly)> {
        // Σ C(n,k) s^k t^(n-k) Z^k
        let mut out = Vec::new();
        let mut s_pow = ConjPoly::constant(crate::scalars::gr_one());
        let mut binom = Rat::one();
        let mut t_pows = vec![ConjPoly::constant(crate::scalars::gr_one())];
        for p in 1..=n {
            let next = t_pows[(p - 1) as usize].mul(&lin.t);
            t_pows.push(next);
        }
        for k in 0..=n {
            if k > 0 {
                s_pow = s_pow.mul(&lin.s);
                binom = binom * Rat::from_integer((n - k + 1).into())
                    / Rat::from_integer(k.into());
            }
            let coeff = s_pow
                .mul(&t_pows[(n - k) as usize])
                .scale(&GaussRat::new(binom.clone(), Rat::zero()));
            out.push(((lin.on.0 * k, lin.on.1 * k), coeff));
        }
        out
    };

    for (&(j, k), c) in &f.terms {
        let zj = expand(&zi, j);
        let zbk = expand(&zbi, k);
        for (e1, c1) in &zj {
            for (e2, c2) in &zbk {
                let val = c1.mul(c2).scale(c);
                add((e1.0 + e2.0, e1.1 + e2.1), val);
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{gr_i, gr_int, rat, rat_int};

    pub fn bp(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, rat(n, d)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn laplacian_examples() {
        // (1/10)x⁵ - (1/2)x³y² + (1/2)x² + 1 → x³ - 3xy² + 1
        let f = bp(&[(5, 0, 1, 10), (3, 2, -1, 2), (2, 0, 1, 2), (0, 0, 1, 1)]);
        let h = bp(&[(3, 0, 1, 1), (1, 2, -3, 1), (0, 0, 1, 1)]);
        assert_eq!(f.laplacian(), h);
        // x² + y² → 4
        let circ = bp(&[(2, 0, 1, 1), (0, 2, 1, 1)]);
        assert_eq!(circ.laplacian(), BiPoly::constant(rat_int(4)));
        // x³ - 3xy² + 1 → 0 (harmonic)
        assert!(h.laplacian().is_zero());
    }

    #[test]
    fn complex_form_roundtrip_and_examples() {
        // x² + y² → z z̄
        let circ = bp(&[(2, 0, 1, 1), (0, 2, 1, 1)]);
        let zf = circ.to_complex();
        assert_eq!(zf, ZPoly::from_terms(&[((1, 1), gr_int(1, 0))]));
        // x³ - 3xy² → (z³ + z̄³)/2 ; oracle: Re(z³) expanded by hand
        let h = bp(&[(3, 0, 1, 1), (1, 2, -3, 1)]);
        let zf = h.to_complex();
        let half = GaussRat::new(rat(1, 2), rat_int(0));
        assert_eq!(
            zf,
            ZPoly::from_terms(&[((3, 0), half.clone()), ((0, 3), half)])
        );
        // round-trip on a mixed polynomial
        let f = bp(&[(5, 0, 1, 10), (3, 2, -1, 2), (2, 0, 1, 2), (0, 0, 1, 1)]);
        let back = f.to_complex().to_real().unwrap();
        assert_eq!(back, f);
        assert!(f.to_complex().is_real_form());
    }

    #[test]
    fn reality_violation_rejected() {
        let bad = ZPoly::from_terms(&[((1, 0), gr_i())]);
        assert!(bad.to_real().is_err());
    }

    #[test]
    fn squarefree_part_examples() {
        // x²y³ → xy
        let f = bp(&[(2, 3, 1, 1)]);
        let sf = f.squarefree_part().unwrap();
        assert_eq!(sf, bp(&[(1, 1, 1, 1)]));
        // (x²+y²-1)² → x²+y²-1
        let c = bp(&[(2, 0, 1, 1), (0, 2, 1, 1), (0, 0, -1, 1)]);
        let sq = c.mul(&c);
        assert_eq!(sq.squarefree_part().unwrap(), c.normalized());
        assert!(!sq.is_squarefree());
        assert!(c.is_squarefree());
    }

    #[test]
    fn compose_with_rotation_flips_sign() {
        // f = x² - y², rotation z ↦ iz is (x,y) ↦ (-y, x); f∘m = y²-x² = -f
        let f = bp(&[(2, 0, 1, 1), (0, 2, -1, 1)]);
        let m = PlaneMap::new_exact(MapKind::Direct, gr_i(), gr_int(0, 0));
        let composed = compose_exact(&f.to_complex(), &m).unwrap();
        let lam = composed.proportionality(&f.to_complex()).unwrap();
        assert_eq!(lam, gr_int(-1, 0));
        // identity map keeps any polynomial
        let id = PlaneMap::identity();
        let same = compose_exact(&f.to_complex(), &id).unwrap();
        assert_eq!(same, f.to_complex());
    }

    #[test]
    fn compose_matches_real_affine_route() {
        let f = bp(&[(3, 1, 2, 3), (1, 2, -1, 2), (0, 1, 5, 1), (0, 0, 1, 7)]);
        // direct map α = 2+i, β = 1-3i
        let m = PlaneMap::new_exact(MapKind::Direct, gr_int(2, 1), gr_int(1, -3));
        let via_z = compose_exact(&f.to_complex(), &m).unwrap().to_real().unwrap();
        let (rx, ry) = m.as_real_affine().unwrap();
        let via_affine = f.compose_affine(&rx, &ry);
        assert_eq!(via_z, via_affine);
        // opposite map too
        let m = PlaneMap::new_exact(MapKind::Opposite, gr_int(1, 2), gr_int(-1, 1));
        let via_z = compose_exact(&f.to_complex(), &m).unwrap().to_real().unwrap();
        let (rx, ry) = m.as_real_affine().unwrap();
        assert_eq!(via_z, f.compose_affine(&rx, &ry));
    }

    #[test]
    fn gcd_of_bivariate_polynomials() {
        let g = bp(&[(1, 1, 1, 1), (0, 0, 1, 1)]); // xy + 1
        let a = g.mul(&bp(&[(2, 0, 1, 1), (0, 1, 3, 1)]));
        let b = g.mul(&bp(&[(0, 2, 1, 1), (1, 0, -1, 1)]));
        let got = a.gcd(&b).normalized();
        assert_eq!(got, g.normalized());
    }

    #[test]
    fn univariate_in_linear_form() {
        // (x+y)(x+y-1) depends only on x+y
        let s = bp(&[(1, 0, 1, 1), (0, 1, 1, 1)]);
        let f = s.mul(&s.sub(&BiPoly::constant(rat_int(1))));
        let xi = LinearForm {
            a: rat_int(1),
            b: rat_int(1),
            c: rat_int(0),
        };
        let pi = f.as_univariate_in(&xi).unwrap();
        // π(t) = t² - t
        assert_eq!(pi, RPoly::new(vec![rat_int(0), rat_int(-1), rat_int(1)]));
        // xy is not a polynomial in any single linear form
        let xy = bp(&[(1, 1, 1, 1)]);
        assert!(xy.as_univariate_in(&xi).is_none());
        // reconstruct: γ∘ξ = f
        assert_eq!(xi.substitute_into(&pi), f);
    }

    #[test]
    fn symbolic_composition_specializes_to_exact() {
        let f = bp(&[(2, 0, 1, 1), (1, 1, -2, 1), (0, 0, 3, 1)]).to_complex();
        // β(α) = (1-2i)·α
        let beta = CPoly::new(vec![gr_int(0, 0), gr_int(1, -2)]);
        let sym = compose_symbolic(&f, MapKind::Direct, &beta);
        // specialize at α = 2+i and compare against compose_exact
        let alpha = gr_int(2, 1);
        let beta_val = beta.eval(&alpha);
        let m = PlaneMap::new_exact(MapKind::Direct, alpha.clone(), beta_val);
        let exact = compose_exact(&f, &m).unwrap();
        for (&(j, k), cp) in &sym {
            assert_eq!(cp.eval_exact(&alpha), exact.coeff(j, k), "term ({},{})", j, k);
        }
        for (&(j, k), c) in &exact.terms {
            if !sym.contains_key(&(j, k)) {
                assert!(c.is_zero(), "missing term ({},{})", j, k);
            }
        }
    }
}
