//! Certified complex root isolation and algebraic numbers.
//!
//! Roots are located by recursive subdivision with an exact winding-number
//! count on each rectangle: the argument variation of p along the boundary is
//! accumulated in exact quarter-turn steps from the sign sequences of
//! Re p and Im p on each edge. Every box returned is certified to contain
//! exactly one root, and refinement can never lose it.

use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::interval::{ComplexBox, RatInterval};
use crate::rpoly::{RPoly, Sturm};
use crate::scalars::{
    gr_zero, rational_reconstruct, GaussRat, Rat,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::Mutex;

/// Starting precision (bits) for certified numeric refinement in the
/// verification tier. Overridable via the CLI's SYMMETRA_PRECISION_BITS.
static PRECISION_BITS: AtomicU32 = AtomicU32::new(256);

pub fn set_precision_bits(bits: u32) {
    PRECISION_BITS.store(bits.clamp(16, 1 << 20), AtomicOrdering::Relaxed);
}

pub fn precision_bits() -> u32 {
    PRECISION_BITS.load(AtomicOrdering::Relaxed)
}

fn start_width() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(2u32).pow(precision_bits()))
}

/// A complex algebraic number: a square-free defining polynomial together
/// with an isolating box containing exactly one of its roots. The box is a
/// refinement cache; refining it is observationally pure.
#[derive(Debug)]
pub struct AlgebraicNumber {
    defining: CPoly,
    cache: Mutex<ComplexBox>,
}

impl Clone for AlgebraicNumber {
    fn clone(&self) -> Self {
        AlgebraicNumber {
            defining: self.defining.clone(),
            cache: Mutex::new(self.box_snapshot()),
        }
    }
}

impl AlgebraicNumber {
    /// Wraps a defining polynomial and a box already known to isolate one
    /// root. Callers outside this module should prefer `isolate_roots`.
    pub fn from_parts_unchecked(defining: CPoly, isolating: ComplexBox) -> Self {
        AlgebraicNumber {
            defining,
            cache: Mutex::new(isolating),
        }
    }

    pub fn defining(&self) -> &CPoly {
        &self.defining
    }

    pub fn box_snapshot(&self) -> ComplexBox {
        self.cache.lock().unwrap().clone()
    }

    /// Returns a sub-box of width at most `eps` still isolating the root.
    pub fn refine_to(&self, eps: &Rat) -> ComplexBox {
        let mut guard = self.cache.lock().unwrap();
        if &guard.width() > eps {
            *guard = refine_box(&self.defining, guard.clone(), eps);
        }
        guard.clone()
    }

    /// Midpoint approximation as `(re, im)` decimal strings.
    pub fn approx_decimal(&self, digits: usize) -> (String, String) {
        let eps = crate::scalars::rat_pow10_neg(digits as u32 + 2);
        let b = self.refine_to(&eps);
        let mid = b.mid();
        (
            crate::scalars::rat_decimal_str(&mid.re, digits),
            crate::scalars::rat_decimal_str(&mid.im, digits),
        )
    }

    /// True if this number equals the exact Gaussian rational `g`.
    pub fn equals_gauss(&self, g: &GaussRat) -> bool {
        self.defining.eval(g).is_zero() && self.box_snapshot().contains(g)
    }
}

// ---------------------------------------------------------------------------
// Winding-number root counting
// ---------------------------------------------------------------------------

fn octant(sa: i8, sb: i8) -> u8 {
    match (sa, sb) {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => unreachable!("p vanishes at a boundary sample"),
    }
}

/// Re and Im of p along the segment from `a` to `b`, as polynomials in t.
fn edge_polys(p: &CPoly, a: &GaussRat, b: &GaussRat) -> (RPoly, RPoly) {
    let dir = b - a;
    p.compose_linear(&dir, a).split_re_im()
}

/// True if p has a root on the closed segment `[a, b]`.
fn segment_has_root(p: &CPoly, a: &GaussRat, b: &GaussRat) -> bool {
    let (re, im) = edge_polys(p, a, b);
    let zero = Rat::zero();
    let one = Rat::one();
    if re.is_zero() && im.is_zero() {
        return true;
    }
    if re.is_zero() {
        return Sturm::new(&im).count_closed(&zero, &one) > 0;
    }
    if im.is_zero() {
        return Sturm::new(&re).count_closed(&zero, &one) > 0;
    }
    let g = re.gcd(&im);
    match g.degree() {
        None | Some(0) => false,
        _ => Sturm::new(&g).count_closed(&zero, &one) > 0,
    }
}

/// Total signed octant steps of arg p along the segment, or None on a
/// boundary root. The segment endpoints may lie on a coordinate axis of the
/// image (Re p or Im p zero) but must not be roots of p.
fn edge_octant_delta(p: &CPoly, a: &GaussRat, b: &GaussRat) -> Option<i32> {
    let (re, im) = edge_polys(p, a, b);
    let zero = Rat::zero();
    let one = Rat::one();
    if re.is_zero() && im.is_zero() {
        return None;
    }
    if re.is_zero() || im.is_zero() {
        let nz = if re.is_zero() { &im } else { &re };
        if Sturm::new(nz).count_closed(&zero, &one) > 0 {
            return None;
        }
        return Some(0);
    }
    let g = re.gcd(&im);
    if g.degree().map(|d| d >= 1).unwrap_or(false)
        && Sturm::new(&g).count_closed(&zero, &one) > 0
    {
        return None;
    }

    let sturm_re = Sturm::new(&re);
    let sturm_im = Sturm::new(&im);
    let mut intervals: Vec<(Rat, Rat, u8)> = sturm_re
        .isolate_in(&zero, &one)
        .into_iter()
        .map(|(l, h)| (l, h, 0u8))
        .chain(
            sturm_im
                .isolate_in(&zero, &one)
                .into_iter()
                .map(|(l, h)| (l, h, 1u8)),
        )
        .collect();
    intervals.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));

    // refine until intervals are strictly disjoint (closed sense)
    loop {
        let overlap = (1..intervals.len()).find(|&i| intervals[i - 1].1 >= intervals[i].0);
        let Some(i) = overlap else { break };
        let mut progressed = false;
        for j in [i - 1, i] {
            let (l, h, which) = intervals[j].clone();
            if l == h {
                continue;
            }
            progressed = true;
            let w = (&h - &l) / Rat::from_integer(4.into());
            let s = if which == 0 { &sturm_re } else { &sturm_im };
            let (nl, nh) = s.refine(l, h, &w);
            intervals[j] = (nl, nh, which);
        }
        assert!(progressed, "coincident roots of Re and Im on a clean edge");
        intervals.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    }

    // sample points: 0, midpoints of gaps between intervals, 1
    let mut samples = vec![zero.clone()];
    for i in 1..intervals.len() {
        let gap_lo = &intervals[i - 1].1;
        let gap_hi = &intervals[i].0;
        if gap_lo < gap_hi {
            samples.push((gap_lo + gap_hi) / Rat::from_integer(2.into()));
        }
    }
    samples.push(one.clone());
    samples.dedup();

    let mut delta = 0i32;
    let mut prev: Option<u8> = None;
    for t in &samples {
        let sa = re.sign_at(t);
        let sb = im.sign_at(t);
        if sa == 0 && sb == 0 {
            return None;
        }
        let q = octant(sa, sb);
        if let Some(pq) = prev {
            let mut d = (q as i32 - pq as i32).rem_euclid(8);
            if d > 4 {
                d -= 8;
            }
            if d.abs() > 2 {
                return None; // sampling too coarse; treat as dirty
            }
            delta += d;
        }
        prev = Some(q);
    }
    Some(delta)
}

/// Number of roots of `p` (with multiplicity) strictly inside the box, or
/// None if a root lies on the boundary.
pub fn box_root_count(p: &CPoly, b: &ComplexBox) -> Option<usize> {
    let bl = GaussRat::new(b.re.lo.clone(), b.im.lo.clone());
    let br = GaussRat::new(b.re.hi.clone(), b.im.lo.clone());
    let tr = GaussRat::new(b.re.hi.clone(), b.im.hi.clone());
    let tl = GaussRat::new(b.re.lo.clone(), b.im.hi.clone());
    let mut total = 0i32;
    for (s, e) in [(&bl, &br), (&br, &tr), (&tr, &tl), (&tl, &bl)] {
        total += edge_octant_delta(p, s, e)?;
    }
    if total % 8 != 0 || total < 0 {
        return None;
    }
    Some((total / 8) as usize)
}

/// Cut fractions tried when subdividing; each root can spoil at most one.
fn cut_candidates(n: usize) -> impl Iterator<Item = Rat> {
    (1..=(n + 2)).map(|k| {
        if k == 1 {
            Rat::new(BigInt::one(), BigInt::from(2))
        } else {
            Rat::new(BigInt::from(k), BigInt::from(2 * k + 1))
        }
    })
}

fn clean_vertical_cut(p: &CPoly, b: &ComplexBox) -> Rat {
    let n = p.degree().unwrap_or(0);
    for f in cut_candidates(n) {
        let x = &b.re.lo + b.re.width() * &f;
        let lo = GaussRat::new(x.clone(), b.im.lo.clone());
        let hi = GaussRat::new(x.clone(), b.im.hi.clone());
        if !segment_has_root(p, &lo, &hi) {
            return x;
        }
    }
    unreachable!("no clean vertical cut among degree+2 candidates");
}

fn clean_horizontal_cut(p: &CPoly, b: &ComplexBox) -> Rat {
    let n = p.degree().unwrap_or(0);
    for f in cut_candidates(n) {
        let y = &b.im.lo + b.im.width() * &f;
        let lo = GaussRat::new(b.re.lo.clone(), y.clone());
        let hi = GaussRat::new(b.re.hi.clone(), y.clone());
        if !segment_has_root(p, &lo, &hi) {
            return y;
        }
    }
    unreachable!("no clean horizontal cut among degree+2 candidates");
}

/// Shrinks a certified isolating box below `eps` width without losing the root.
fn refine_box(p: &CPoly, mut b: ComplexBox, eps: &Rat) -> ComplexBox {
    while &b.width() > eps {
        if b.re.width() >= b.im.width() {
            let x = clean_vertical_cut(p, &b);
            let left = ComplexBox::new(RatInterval::new(b.re.lo.clone(), x.clone()), b.im.clone());
            let cnt = box_root_count(p, &left).expect("clean cut produced dirty box");
            b = if cnt == 1 {
                left
            } else {
                ComplexBox::new(RatInterval::new(x, b.re.hi.clone()), b.im.clone())
            };
        } else {
            let y = clean_horizontal_cut(p, &b);
            let bottom =
                ComplexBox::new(b.re.clone(), RatInterval::new(b.im.lo.clone(), y.clone()));
            let cnt = box_root_count(p, &bottom).expect("clean cut produced dirty box");
            b = if cnt == 1 {
                bottom
            } else {
                ComplexBox::new(b.re.clone(), RatInterval::new(y, b.im.hi.clone()))
            };
        }
    }
    b
}

/// Isolates the distinct roots of `p`, reporting each with its multiplicity.
/// Boxes are pairwise disjoint and at most `target` wide.
pub fn isolate_roots(p: &CPoly, target: &Rat) -> Result<Vec<(AlgebraicNumber, usize)>> {
    if p.is_zero() {
        return Err(Error::invalid("root isolation of the zero polynomial"));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition()? {
        for b in isolate_squarefree(&factor, target) {
            out.push((AlgebraicNumber::from_parts_unchecked(factor.clone(), b), mult));
        }
    }
    Ok(out)
}

fn isolate_squarefree(p: &CPoly, target: &Rat) -> Vec<ComplexBox> {
    let n = p.degree().unwrap();
    let bound = p.root_bound() + Rat::one();
    let root_box = ComplexBox::new(
        RatInterval::new(-bound.clone(), bound.clone()),
        RatInterval::new(-bound.clone(), bound),
    );
    let mut work = vec![(root_box, n)];
    let mut found = Vec::new();
    while let Some((b, count)) = work.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            found.push(refine_box(p, b, target));
            continue;
        }
        let x = clean_vertical_cut(p, &b);
        let y = clean_horizontal_cut(p, &b);
        let xs = [
            RatInterval::new(b.re.lo.clone(), x.clone()),
            RatInterval::new(x, b.re.hi.clone()),
        ];
        let ys = [
            RatInterval::new(b.im.lo.clone(), y.clone()),
            RatInterval::new(y, b.im.hi.clone()),
        ];
        let mut seen = 0usize;
        for xi in &xs {
            for yi in &ys {
                let child = ComplexBox::new(xi.clone(), yi.clone());
                let c = box_root_count(p, &child).expect("clean cuts produced dirty child");
                seen += c;
                if c > 0 {
                    work.push((child, c));
                }
            }
        }
        assert_eq!(seen, count, "child root counts disagree with parent");
    }
    found.sort_by(|a, b| a.re.lo.cmp(&b.re.lo).then(a.im.lo.cmp(&b.im.lo)));
    found
}

// ---------------------------------------------------------------------------
// Recognition and certified predicates
// ---------------------------------------------------------------------------

/// Recognizes `a` as a Gaussian rational of bounded height: both numerator
/// and denominator magnitudes of each component at most `height_bound`.
pub fn recognize_gaussian(a: &AlgebraicNumber, height_bound: &BigInt) -> Option<GaussRat> {
    let h2 = Rat::new(BigInt::one(), 4 * height_bound * height_bound);
    let b = a.refine_to(&h2);
    let mid = b.mid();
    let cand = GaussRat::new(
        rational_reconstruct(&mid.re, height_bound),
        rational_reconstruct(&mid.im, height_bound),
    );
    let bound_ok = |r: &Rat| r.numer().abs() <= *height_bound && r.denom() <= height_bound;
    if !(bound_ok(&cand.re) && bound_ok(&cand.im)) {
        return None;
    }
    if b.contains(&cand) && a.defining.eval(&cand).is_zero() {
        Some(cand)
    } else {
        None
    }
}

/// Decides exactly whether `expr(at) = 0`.
pub fn certified_zero(expr: &CPoly, at: &AlgebraicNumber) -> bool {
    if expr.is_zero() {
        return true;
    }
    let r = expr.rem(&at.defining);
    if r.is_zero() {
        return true;
    }
    if r.degree() == Some(0) {
        return false;
    }
    let g = at.defining.gcd(&r).expect("gcd with nonzero remainder");
    if g.degree() == Some(0) {
        return false;
    }
    // g divides the defining polynomial, so the box is clean for g and
    // contains at most one of its roots.
    let b = at.box_snapshot();
    match box_root_count(&g, &b) {
        Some(c) => c == 1,
        None => {
            // root of g on the box boundary would also be a defining-poly root,
            // which the isolation certificate excludes
            unreachable!("isolating box boundary hits a divisor root")
        }
    }
}

/// Certified equality of two algebraic numbers.
pub fn algebraic_eq(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    let g = match a.defining.gcd(&b.defining) {
        Ok(g) => g,
        Err(_) => return false,
    };
    if g.degree().unwrap_or(0) == 0 {
        return false;
    }
    let ba = a.box_snapshot();
    let bb = b.box_snapshot();
    let re_lo = ba.re.lo.clone().max(bb.re.lo.clone());
    let re_hi = ba.re.hi.clone().min(bb.re.hi.clone());
    if re_lo > re_hi {
        return false;
    }
    let im_lo = ba.im.lo.clone().max(bb.im.lo.clone());
    let im_hi = ba.im.hi.clone().min(bb.im.hi.clone());
    if im_lo > im_hi {
        return false;
    }
    let inter = ComplexBox::new(RatInterval::new(re_lo, re_hi), RatInterval::new(im_lo, im_hi));
    if inter.width().is_zero() {
        // degenerate sliver; a shared root here would lie on both boxes'
        // boundaries, which the isolation certificates exclude
        return false;
    }
    matches!(box_root_count(&g, &inter), Some(c) if c >= 1)
}

/// Deterministic ordering of (possibly algebraic) complex values by
/// (Re, Im), refining enclosures until they separate.
pub fn value_cmp(a: &crate::scalars::ComplexScalar, b: &crate::scalars::ComplexScalar) -> Ordering {
    use crate::scalars::ComplexScalar as CS;
    match (a, b) {
        (CS::Exact(x), CS::Exact(y)) => x.re.cmp(&y.re).then_with(|| x.im.cmp(&y.im)),
        _ => {
            if value_eq(a, b) {
                return Ordering::Equal;
            }
            let mut eps = Rat::new(BigInt::one(), BigInt::from(256));
            for _ in 0..512 {
                let ba = scalar_box(a, &eps);
                let bb = scalar_box(b, &eps);
                if ba.re.hi < bb.re.lo {
                    return Ordering::Less;
                }
                if bb.re.hi < ba.re.lo {
                    return Ordering::Greater;
                }
                if ba.im.hi < bb.im.lo {
                    return Ordering::Less;
                }
                if bb.im.hi < ba.im.lo {
                    return Ordering::Greater;
                }
                eps /= Rat::from_integer(BigInt::from(65536));
            }
            Ordering::Equal
        }
    }
}

pub fn value_eq(a: &crate::scalars::ComplexScalar, b: &crate::scalars::ComplexScalar) -> bool {
    use crate::scalars::ComplexScalar as CS;
    match (a, b) {
        (CS::Exact(x), CS::Exact(y)) => x == y,
        (CS::Exact(x), CS::Algebraic(y)) | (CS::Algebraic(y), CS::Exact(x)) => y.equals_gauss(x),
        (CS::Algebraic(x), CS::Algebraic(y)) => algebraic_eq(x, y),
    }
}

pub fn scalar_box(s: &crate::scalars::ComplexScalar, eps: &Rat) -> ComplexBox {
    match s {
        crate::scalars::ComplexScalar::Exact(g) => ComplexBox::point(g),
        crate::scalars::ComplexScalar::Algebraic(a) => a.refine_to(eps),
    }
}

/// The exact value p(α) as a scalar: Gaussian rational when possible, else
/// an algebraic number whose defining polynomial is the characteristic
/// polynomial of multiplication by p in Q(i)[z]/(d).
pub fn algebraic_value_of(
    alpha: &AlgebraicNumber,
    p: &CPoly,
) -> Result<crate::scalars::ComplexScalar> {
    let d = alpha.defining();
    let r = p.rem(d);
    if r.degree().unwrap_or(0) == 0 {
        return Ok(crate::scalars::ComplexScalar::Exact(r.coeff(0)));
    }
    let m = d.degree().unwrap();
    // multiplication matrix of r on the basis 1, z, …, z^{m-1}
    let mut cols: Vec<Vec<GaussRat>> = Vec::with_capacity(m);
    let mut basis_times_r = r.clone();
    for j in 0..m {
        if j > 0 {
            basis_times_r = basis_times_r
                .mul(&CPoly::monomial(crate::scalars::gr_one(), 1))
                .rem(d);
        }
        let mut col = vec![gr_zero(); m];
        for (i, item) in col.iter_mut().enumerate() {
            *item = basis_times_r.coeff(i);
        }
        cols.push(col);
    }
    // Faddeev–LeVerrier: characteristic polynomial of the m×m matrix
    let mat = |a: &Vec<Vec<GaussRat>>, b: &Vec<Vec<GaussRat>>| -> Vec<Vec<GaussRat>> {
        let mut out = vec![vec![gr_zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = gr_zero();
                for (k, bk) in b.iter().enumerate() {
                    acc = acc + &a[i][k] * &bk[j];
                }
                out[i][j] = acc;
            }
        }
        out
    };
    // rows-from-cols: M[i][j] = cols[j][i]
    let m_rows: Vec<Vec<GaussRat>> = (0..m)
        .map(|i| (0..m).map(|j| cols[j][i].clone()).collect())
        .collect();
    let trace = |a: &Vec<Vec<GaussRat>>| -> GaussRat {
        let mut t = gr_zero();
        for (i, row) in a.iter().enumerate() {
            t = t + row[i].clone();
        }
        t
    };
    let mut coeffs = vec![gr_zero(); m + 1];
    coeffs[m] = crate::scalars::gr_one();
    let mut mk = m_rows.clone();
    let mut ck;
    for k in 1..=m {
        ck = -crate::scalars::gr_div(
            &trace(&mk),
            &GaussRat::new(Rat::from_integer((k as u64).into()), Rat::zero()),
        );
        coeffs[m - k] = ck.clone();
        if k < m {
            // M_{k+1} = M (M_k + c_k I)
            let mut shifted = mk.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = row[i].clone() + ck.clone();
            }
            mk = mat(&m_rows, &shifted);
        }
    }
    let charpoly = CPoly::new(coeffs).squarefree_part()?;
    // isolate the value by shrinking an interval enclosure of p(α)
    let mut width = Rat::new(BigInt::one(), BigInt::from(1u64 << 16));
    for _ in 0..64 {
        let b = alpha.refine_to(&width);
        let enclosure = b.eval_poly(p);
        match box_root_count(&charpoly, &enclosure) {
            Some(1) => {
                let a = AlgebraicNumber::from_parts_unchecked(charpoly, enclosure);
                if let Some(g) = recognize_gaussian(&a, &BigInt::from(1_000_000_000u64)) {
                    return Ok(crate::scalars::ComplexScalar::Exact(g));
                }
                return Ok(crate::scalars::ComplexScalar::Algebraic(a));
            }
            _ => width = width / Rat::from_integer(BigInt::from(256)),
        }
    }
    Err(Error::internal("could not isolate the value of p(alpha)"))
}

// ---------------------------------------------------------------------------
// Bivariate expressions in (α, conj α) and their certified zero test
// ---------------------------------------------------------------------------

/// Polynomial in A = α and B = conj(α) over Q(i).
#[derive(Debug, Clone, Default)]
pub struct ConjPoly {
    pub terms: BTreeMap<(u32, u32), GaussRat>,
}

impl ConjPoly {
    pub fn zero() -> Self {
        ConjPoly::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((0, 0), c);
        }
        ConjPoly { terms: t }
    }

    pub fn var_alpha() -> Self {
        let mut t = BTreeMap::new();
        t.insert((1, 0), crate::scalars::gr_one());
        ConjPoly { terms: t }
    }

    pub fn var_conj() -> Self {
        let mut t = BTreeMap::new();
        t.insert((0, 1), crate::scalars::gr_one());
        ConjPoly { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (u32, u32), c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(gr_zero);
        *entry = std::mem::replace(entry, gr_zero()) + c;
        if self.terms[&key].is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &ConjPoly) -> ConjPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ConjPoly) -> ConjPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn mul(&self, o: &ConjPoly) -> ConjPoly {
        let mut out = ConjPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> ConjPoly {
        let mut out = ConjPoly::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// If no conj(α) appears, view as a univariate polynomial in α.
    pub fn as_conj_free(&self) -> Option<CPoly> {
        let mut coeffs = Vec::new();
        for ((a, b), c) in &self.terms {
            if *b != 0 {
                return None;
            }
            let a = *a as usize;
            if coeffs.len() <= a {
                coeffs.resize(a + 1, gr_zero());
            }
            coeffs[a] = c.clone();
        }
        Some(CPoly::new(coeffs))
    }

    pub fn eval_box(&self, alpha: &ComplexBox) -> ComplexBox {
        let conj = alpha.conj();
        let mut acc = ComplexBox::point(&gr_zero());
        for ((a, b), c) in &self.terms {
            let mut term = ComplexBox::point(c);
            for _ in 0..*a {
                term = term.mul(alpha);
            }
            for _ in 0..*b {
                term = term.mul(&conj);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval_exact(&self, alpha: &GaussRat) -> GaussRat {
        let conj = crate::scalars::gr_conj(alpha);
        let mut acc = gr_zero();
        for ((a, b), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..*a {
                term = &term * alpha;
            }
            for _ in 0..*b {
                term = &term * &conj;
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes conj(α) = s/α for a known |α|² = s, clearing denominators
    /// by the maximal conj-power. Valid for deciding whether the value is 0.
    pub fn conj_eliminated(&self, s: &Rat) -> CPoly {
        let max_b = self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0);
        let mut out = ConjPoly::zero();
        for ((a, b), c) in &self.terms {
            // multiply term by α^max_b: α^a B^b α^max_b → α^(a+max_b-b) s^b
            let sc = crate::scalars::rat_pow(s, *b);
            out.add_term(
                (a + max_b - b, 0),
                c * &GaussRat::new(sc, Rat::zero()),
            );
        }
        out.as_conj_free().expect("conj eliminated")
    }

    /// Lower bound ε > 0 such that any nonzero value of this expression at a
    /// root of `m` (and its conjugate) satisfies |value| ≥ ε.
    fn nonzero_lower_bound(&self, m: &CPoly) -> Rat {
        let n = m.degree().unwrap_or(1).max(1);
        // real polynomial with both α and conj(α) among its roots
        let real_m = m.mul(&m.conj_coeffs());
        let mut den_lcm = BigInt::one();
        for c in &real_m.0 {
            den_lcm = num_integer::lcm(den_lcm, c.re.denom().clone());
        }
        let l = den_lcm.clone();
        let mut max_c = Rat::zero();
        for c in &real_m.0 {
            let v = (c.re.clone() * Rat::from_integer(l.clone())).abs();
            if v > max_c {
                max_c = v;
            }
        }
        let rho = Rat::one() + max_c / Rat::from_integer(l.clone());
        let mut t0 = Rat::zero();
        let mut q_den = BigInt::one();
        let mut a_tot = 0u32;
        for ((a, b), c) in &self.terms {
            let mag = c.re.abs() + c.im.abs();
            t0 += mag * crate::scalars::rat_pow(&rho, a + b);
            q_den = num_integer::lcm(q_den, c.re.denom().clone());
            q_den = num_integer::lcm(q_den, c.im.denom().clone());
            a_tot = a_tot.max(a + b);
        }
        let l_rat = Rat::from_integer(l);
        let t = Rat::from_integer(q_den)
            * crate::scalars::rat_pow(&l_rat, a_tot)
            * (t0 + Rat::one())
            + Rat::from_integer(2.into());
        let deg_v = (2 * n as u32) * (2 * n as u32);
        crate::scalars::rat_pow(&t, deg_v).recip()
    }

    /// Decides exactly whether this expression vanishes at `alpha`
    /// (with B bound to conj(alpha)).
    pub fn decide_zero_at(&self, alpha: &AlgebraicNumber) -> bool {
        if self.is_zero() {
            return true;
        }
        if let Some(p) = self.as_conj_free() {
            return certified_zero(&p, alpha);
        }
        let eps = self.nonzero_lower_bound(&alpha.defining);
        let eps2 = &eps * &eps;
        let mut width = start_width();
        loop {
            let b = alpha.refine_to(&width);
            let v = self.eval_box(&b);
            if !v.contains_zero() {
                return false;
            }
            if v.norm_upper() < eps2 {
                return true;
            }
            width = width * Rat::new(BigInt::one(), BigInt::from(1u64 << 32));
        }
    }

    /// Certified enclosure of the value at `alpha` of width at most `eps`.
    pub fn enclose_at(&self, alpha: &AlgebraicNumber, eps: &Rat) -> ComplexBox {
        let mut width = eps.clone();
        loop {
            let b = alpha.refine_to(&width);
            let v = self.eval_box(&b);
            if &v.width() <= eps {
                return v;
            }
            width = width / Rat::from_integer(BigInt::from(1u64 << 16));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{gr_int, rat, rat_int, rat_pow10_neg, ComplexScalar};

    fn z_poly(cs: &[(i64, i64)]) -> CPoly {
        CPoly::new(cs.iter().map(|&(re, im)| gr_int(re, im)).collect())
    }

    #[test]
    fn count_roots_of_quadratic() {
        // z² + 1: roots ±i
        let p = z_poly(&[(1, 0), (0, 0), (1, 0)]);
        let b = ComplexBox::new(
            RatInterval::new(rat_int(-2), rat_int(2)),
            RatInterval::new(rat_int(-2), rat_int(2)),
        );
        assert_eq!(box_root_count(&p, &b), Some(2));
        let upper = ComplexBox::new(
            RatInterval::new(rat_int(-2), rat_int(2)),
            RatInterval::new(rat(1, 2), rat_int(2)),
        );
        assert_eq!(box_root_count(&p, &upper), Some(1));
        let empty = ComplexBox::new(
            RatInterval::new(rat_int(5), rat_int(6)),
            RatInterval::new(rat_int(5), rat_int(6)),
        );
        assert_eq!(box_root_count(&p, &empty), Some(0));
    }

    #[test]
    fn isolate_z2_plus_1() {
        let p = z_poly(&[(1, 0), (0, 0), (1, 0)]);
        let roots = isolate_roots(&p, &rat(1, 100)).unwrap();
        assert_eq!(roots.len(), 2);
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            let b = r.box_snapshot();
            assert!(b.re.contains(&Rat::zero()));
        }
        // one near i, one near -i
        let ims: Vec<bool> = roots
            .iter()
            .map(|(r, _)| r.box_snapshot().im.lo > Rat::zero())
            .collect();
        assert_eq!(ims.iter().filter(|&&x| x).count(), 1);
    }

    #[test]
    fn isolate_with_multiplicity() {
        // 6z⁵ - 6z² = 6z²(z³-1): roots 0 (double), 1, two complex cube roots
        let p = z_poly(&[(0, 0), (0, 0), (-6, 0), (0, 0), (0, 0), (6, 0)]);
        let roots = isolate_roots(&p, &rat(1, 1000)).unwrap();
        assert_eq!(roots.len(), 4);
        let mut mults: Vec<usize> = roots.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 1, 1, 2]);
        // the double root is zero
        let zero_root = roots.iter().find(|(_, m)| *m == 2).unwrap();
        assert!(zero_root.0.equals_gauss(&gr_int(0, 0)));
    }

    #[test]
    fn cube_roots_of_minus_i_on_unit_circle() {
        // z³ + i, roots have |z|=1 and z³=-i; checked to 1e-30
        let p = z_poly(&[(0, 1), (0, 0), (0, 0), (1, 0)]);
        let roots = isolate_roots(&p, &rat_pow10_neg(31)).unwrap();
        assert_eq!(roots.len(), 3);
        let tol = rat_pow10_neg(30);
        for (r, _) in &roots {
            let b = r.refine_to(&rat_pow10_neg(31));
            // |z|² within tol of 1
            let n = b.norm_interval();
            assert!((n.lo - Rat::one()).abs() < tol && (n.hi - Rat::one()).abs() < tol);
            // z³ within tol of -i componentwise
            let cube = b.mul(&b).mul(&b);
            let target = gr_int(0, -1);
            assert!((cube.mid().re - target.re).abs() < tol);
            assert!((cube.mid().im - target.im).abs() < tol);
            assert!(certified_zero(&p, r));
        }
        // boxes pairwise disjoint
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                assert!(!algebraic_eq(&roots[i].0, &roots[j].0));
            }
        }
    }

    #[test]
    fn recognize_gaussian_rationals() {
        // root of z - (1-2i)
        let p = z_poly(&[(-1, 2), (1, 0)]);
        let roots = isolate_roots(&p, &rat(1, 100)).unwrap();
        let g = recognize_gaussian(&roots[0].0, &BigInt::from(1_000_000)).unwrap();
        assert_eq!(g, gr_int(1, -2));
        // 2z - 3 → 3/2
        let p = z_poly(&[(-3, 0), (2, 0)]);
        let roots = isolate_roots(&p, &rat(1, 100)).unwrap();
        let g = recognize_gaussian(&roots[0].0, &BigInt::from(1_000_000)).unwrap();
        assert_eq!(g, GaussRat::new(rat(3, 2), rat_int(0)));
        // z³ + i = (z - i)(z² + iz - 1): exactly one Gaussian rational root.
        // Oracle: a Gaussian rational root of this monic Gaussian-integer
        // polynomial must be a unit divisor of i; of ±1, ±i only i works,
        // and z² + iz - 1 rejects all four.
        let quad = z_poly(&[(-1, 0), (0, 1), (1, 0)]);
        for cand in [gr_int(1, 0), gr_int(-1, 0), gr_int(0, 1), gr_int(0, -1)] {
            assert!(!quad.eval(&cand).is_zero());
        }
        let p = z_poly(&[(0, 1), (0, 0), (0, 0), (1, 0)]);
        let recognized: Vec<Option<GaussRat>> = isolate_roots(&p, &rat(1, 100))
            .unwrap()
            .iter()
            .map(|(r, _)| recognize_gaussian(r, &BigInt::from(1_000_000)))
            .collect();
        let hits: Vec<&GaussRat> = recognized.iter().flatten().collect();
        assert_eq!(hits, vec![&gr_int(0, 1)]);
    }

    #[test]
    fn certified_zero_on_defining_relation() {
        let p = z_poly(&[(0, 1), (0, 0), (0, 0), (1, 0)]); // z³+i
        let roots = isolate_roots(&p, &rat(1, 100)).unwrap();
        let at = &roots[0].0;
        assert!(certified_zero(&p, at));
        let z_minus_1 = z_poly(&[(-1, 0), (1, 0)]);
        assert!(!certified_zero(&z_minus_1, at));
        assert!(certified_zero(&CPoly::zero(), at));
    }

    #[test]
    fn conj_poly_decides_modulus_one() {
        // α·conj(α) - 1 vanishes exactly on unit-modulus roots of z³+i
        let p = z_poly(&[(0, 1), (0, 0), (0, 0), (1, 0)]);
        let roots = isolate_roots(&p, &rat(1, 100)).unwrap();
        let mut expr = ConjPoly::zero();
        expr.add_term((1, 1), gr_int(1, 0));
        expr.add_term((0, 0), gr_int(-1, 0));
        for (r, _) in &roots {
            assert!(expr.decide_zero_at(r));
        }
        // α·conj(α) - 2 does not vanish
        let mut expr2 = ConjPoly::zero();
        expr2.add_term((1, 1), gr_int(1, 0));
        expr2.add_term((0, 0), gr_int(-2, 0));
        assert!(!expr2.decide_zero_at(&roots[0].0));
    }

    #[test]
    fn value_ordering_is_stable() {
        let p = z_poly(&[(0, 1), (0, 0), (0, 0), (1, 0)]);
        let mut scalars: Vec<ComplexScalar> = isolate_roots(&p, &rat(1, 100))
            .unwrap()
            .into_iter()
            .map(|(r, _)| ComplexScalar::Algebraic(r))
            .collect();
        scalars.sort_by(value_cmp);
        let first = scalar_box(&scalars[0], &rat(1, 100));
        let last = scalar_box(&scalars[2], &rat(1, 100));
        assert!(first.re.hi <= last.re.lo);
    }
}
