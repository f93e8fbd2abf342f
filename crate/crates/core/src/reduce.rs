//! Laplacian chains, degenerate-family detectors, and the anti-Laplacian
//! constructions that replace a curve by a harmonic polynomial (or a conic /
//! line-circle configuration) with at least the same symmetries.

use crate::bipoly::{BiPoly, LinearForm};
use crate::error::{Error, Result};
use crate::rpoly::RPoly;
use crate::scalars::{gr_conj, gr_div, GaussRat, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The sequence f, △f, …, △^ℓf down to the last nonconstant stage, plus the
/// constant value of the next Laplacian.
#[derive(Debug, Clone)]
pub struct LaplacianChain {
    pub stages: Vec<BiPoly>,
    pub ell: usize,
    pub terminal_constant: Rat,
}

pub fn chain(f: &BiPoly) -> Result<LaplacianChain> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::invalid("laplacian chain of a constant"));
    }
    let mut stages = vec![f.clone()];
    loop {
        let next = stages.last().unwrap().laplacian();
        if next.is_constant() {
            let ell = stages.len() - 1;
            return Ok(LaplacianChain {
                stages,
                ell,
                terminal_constant: next.constant_term(),
            });
        }
        stages.push(next);
    }
}

impl LaplacianChain {
    pub fn terminal(&self) -> &BiPoly {
        &self.stages[self.ell]
    }
}

/// An infinite-symmetry family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegenerateFamily {
    ParallelLines { direction: (Rat, Rat) },
    ConcentricCircles { center: GaussRat },
}

/// Result of the reduction case split on deg △^ℓf.
#[derive(Debug, Clone)]
pub enum ReductionOutcome {
    /// A harmonic polynomial of degree ≥ 2 whose symmetries contain Symm(f).
    HarmonicHighDeg(BiPoly),
    /// A conic with finite symmetry group containing Symm(f).
    ConicFallback(BiPoly),
    /// Simultaneous symmetries of a line and a circle contain Symm(f).
    LineTimesCircle { line: BiPoly, circle: BiPoly },
    Degenerate(DegenerateFamily),
}

/// Direction ū of a union of parallel lines: a nonzero rational vector with
/// ∇f·ū ≡ 0, found by solving the linear system on coefficients.
pub fn detect_parallel_lines(f: &BiPoly) -> Option<(Rat, Rat)> {
    if f.is_constant() {
        return None;
    }
    let fx = f.partial_x();
    let fy = f.partial_y();
    if fx.is_zero() {
        return Some((Rat::one(), Rat::zero()));
    }
    if fy.is_zero() {
        return Some((Rat::zero(), Rat::one()));
    }
    // u1·fx + u2·fy ≡ 0 with (u1, u2) ≠ 0; every monomial gives one equation
    let keys: std::collections::BTreeSet<(u32, u32)> = fx
        .terms
        .keys()
        .chain(fy.terms.keys())
        .cloned()
        .collect();
    let first = keys.iter().next().unwrap();
    let (a, b) = (fx.coeff(first.0, first.1), fy.coeff(first.0, first.1));
    let cand = (-b, a);
    if cand.0.is_zero() && cand.1.is_zero() {
        return None;
    }
    let combo = fx.scale(&cand.0).add(&fy.scale(&cand.1));
    if !combo.is_zero() {
        return None;
    }
    Some(normalize_direction(cand))
}

fn normalize_direction((u1, u2): (Rat, Rat)) -> (Rat, Rat) {
    // primitive integer vector with positive first nonzero entry
    let d1 = u1.denom().clone();
    let d2 = u2.denom().clone();
    let lcm = d1.lcm(&d2);
    let n1 = u1 * Rat::from_integer(lcm.clone());
    let n2 = u2 * Rat::from_integer(lcm);
    let g = n1.numer().gcd(n2.numer());
    let (mut v1, mut v2) = if g.is_zero() {
        (n1, n2)
    } else {
        (
            n1 / Rat::from_integer(g.clone()),
            n2 / Rat::from_integer(g),
        )
    };
    let flip = if v1.is_zero() {
        v2.is_negative()
    } else {
        v1.is_negative()
    };
    if flip {
        v1 = -v1;
        v2 = -v2;
    }
    (v1, v2)
}

/// Center of a union of concentric circles: f must be a polynomial in
/// (z-c)(z̄-c̄). Reads the tentative center off the two top coefficients of
/// the complex form and confirms by exact recentering.
pub fn detect_concentric_circles(f: &BiPoly) -> Option<GaussRat> {
    let deg = f.degree()?;
    if deg < 2 || deg % 2 != 0 {
        return None;
    }
    let t = deg / 2;
    let zf = f.to_complex();
    let top = zf.coeff(t, t);
    if top.is_zero() {
        return None;
    }
    // top form must be concentrated on (t, t)
    for (&(j, k), _) in &zf.terms {
        if j + k == deg && (j, k) != (t, t) {
            return None;
        }
    }
    // c̄ = -c_{t,t-1} / (t·c_{t,t})
    let next = zf.coeff(t, t - 1);
    let tc = GaussRat::new(Rat::from_integer(t.into()), Rat::zero()) * &top;
    let center = gr_conj(&(-gr_div(&next, &tc)));
    let recentered = zf.recenter(&center);
    if recentered.is_radial() {
        Some(center)
    } else {
        None
    }
}

/// Common point of a union of concurrent lines: f(x+p) homogeneous for some
/// p. Assumes unions of parallel lines were screened out first.
pub fn detect_concurrent_lines(f: &BiPoly) -> Option<GaussRat> {
    let n = f.degree()?;
    if n < 1 {
        return None;
    }
    let top = f.homogeneous_part(n);
    if &top == f {
        return Some(crate::scalars::gr_zero());
    }
    if n == 1 {
        return None; // single line handled as a parallel family
    }
    // degree-(n-1) part of f(x+p) is f_{n-1} + p1·∂x f_n + p2·∂y f_n
    let gx = top.partial_x();
    let gy = top.partial_y();
    let fn1 = f.homogeneous_part(n - 1);
    // solve the linear system over all degree-(n-1) monomials
    let keys: std::collections::BTreeSet<(u32, u32)> = gx
        .terms
        .keys()
        .chain(gy.terms.keys())
        .chain(fn1.terms.keys())
        .cloned()
        .collect();
    let rows: Vec<(Rat, Rat, Rat)> = keys
        .iter()
        .map(|&(i, j)| (gx.coeff(i, j), gy.coeff(i, j), -fn1.coeff(i, j)))
        .collect();
    // find two independent rows
    let mut solution = None;
    'outer: for (idx1, r1) in rows.iter().enumerate() {
        for r2 in rows.iter().skip(idx1 + 1) {
            let det = &r1.0 * &r2.1 - &r1.1 * &r2.0;
            if det.is_zero() {
                continue;
            }
            let p1 = (&r1.2 * &r2.1 - &r1.1 * &r2.2) / &det;
            let p2 = (&r1.0 * &r2.2 - &r1.2 * &r2.0) / &det;
            solution = Some(GaussRat::new(p1, p2));
            break 'outer;
        }
    }
    let p = solution?;
    // verify level by level, top-down: every part below degree n of f(x+p)
    // must vanish; generic inputs fail at the first level checked
    for m in (0..n).rev() {
        if !f.translated_level(&p.re, &p.im, m).is_zero() {
            return None;
        }
    }
    Some(p)
}

/// Anti-Laplacian along a line: the unique p̃ = γ∘ξ with △p̃ = p and
/// γ(0) = γ'(0) = 0, using △(γ∘ξ) = (a²+b²)·(γ''∘ξ).
pub fn anti_laplacian_linear(p: &BiPoly, xi: &LinearForm) -> Result<BiPoly> {
    let pi = p.as_univariate_in(xi).ok_or_else(|| {
        Error::domain("anti-Laplacian input is not a polynomial in the given linear form")
    })?;
    let n2 = &xi.a * &xi.a + &xi.b * &xi.b;
    if n2.is_zero() {
        return Err(Error::invalid("degenerate linear form"));
    }
    // γ'' = π / (a²+b²); integrate twice with vanishing constants
    let mut gamma = vec![Rat::zero(), Rat::zero()];
    for (k, c) in pi.0.iter().enumerate() {
        let denom = &n2
            * Rat::from_integer(((k + 1) as u64).into())
            * Rat::from_integer(((k + 2) as u64).into());
        gamma.push(c / denom);
    }
    Ok(xi.substitute_into(&RPoly::new(gamma)))
}

/// Anti-Laplacian of a radial polynomial about `center`: coefficientwise
/// e_t·r^{2t} ↦ e_t·r^{2t+2}/(4(t+1)²), normalized to vanish at the center.
pub fn anti_laplacian_radial(p: &BiPoly, center: &GaussRat) -> Result<BiPoly> {
    let shifted = p.translate(&center.re, &center.im);
    let zf = shifted.to_complex();
    if !zf.is_radial() {
        return Err(Error::domain(
            "anti-Laplacian input is not radial about the given center",
        ));
    }
    let r2 = BiPoly::from_terms(&[(2, 0, Rat::one()), (0, 2, Rat::one())]);
    let mut out = BiPoly::zero();
    let mut r2_pow = r2.clone(); // r^{2(t+1)} for t = 0
    let max_t = zf.terms.keys().map(|&(j, _)| j).max().unwrap_or(0);
    for t in 0..=max_t {
        let c = zf.coeff(t, t);
        if !c.im.is_zero() {
            return Err(Error::internal("radial coefficient with imaginary part"));
        }
        if !c.re.is_zero() {
            let denom = Rat::from_integer((4 * (t as u64 + 1) * (t as u64 + 1)).into());
            out = out.add(&r2_pow.scale(&(c.re / denom)));
        }
        if t < max_t {
            r2_pow = r2_pow.mul(&r2);
        }
    }
    Ok(out.translate(&-center.re.clone(), &-center.im.clone()))
}

/// Center of a circle-type conic (2×2 block a scalar matrix), if any.
pub fn radial_center(q: &BiPoly) -> Option<GaussRat> {
    if q.degree() != Some(2) {
        return None;
    }
    let a = q.coeff(2, 0);
    let b = q.coeff(1, 1);
    let c = q.coeff(0, 2);
    if a.is_zero() || !b.is_zero() || a != c {
        return None;
    }
    let two_a = Rat::from_integer(2.into()) * &a;
    Some(GaussRat::new(
        -q.coeff(1, 0) / &two_a,
        -q.coeff(0, 1) / &two_a,
    ))
}

/// Rank-1 direction of a degree-2 polynomial whose quadratic part is
/// s·(a·x + b·y)², together with the univariate profile q = π(ξ₀).
fn parallel_pair_form(q: &BiPoly) -> Option<(LinearForm, RPoly)> {
    if q.degree() != Some(2) {
        return None;
    }
    let a2 = q.coeff(2, 0);
    let b2 = q.coeff(1, 1);
    let c2 = q.coeff(0, 2);
    let det = &a2 * &c2 - &b2 * &b2 / Rat::from_integer(4.into());
    if !det.is_zero() {
        return None;
    }
    let (da, db) = if !a2.is_zero() {
        (a2.clone(), &b2 / (Rat::from_integer(2.into())))
    } else if !c2.is_zero() {
        (&b2 / (Rat::from_integer(2.into())), c2.clone())
    } else {
        return None;
    };
    let (da, db) = normalize_direction((da, db));
    let xi = LinearForm {
        a: da,
        b: db,
        c: Rat::zero(),
    };
    let pi = q.as_univariate_in(&xi)?;
    Some((xi, pi))
}

/// Smallest k ≥ 1 with △^k f a polynomial in the linear form ξ.
fn first_stage_in_linear(chain: &LaplacianChain, xi: &LinearForm) -> Result<usize> {
    for (k, stage) in chain.stages.iter().enumerate() {
        if stage.as_univariate_in(xi).is_some() {
            if k == 0 {
                return Err(Error::domain(
                    "curve is a union of parallel lines; detector should have fired",
                ));
            }
            return Ok(k);
        }
    }
    Err(Error::internal("no chain stage lies in the linear form"))
}

/// Smallest k ≥ 1 with △^k f radial about the center.
fn first_stage_radial(chain: &LaplacianChain, center: &GaussRat) -> Result<usize> {
    for (k, stage) in chain.stages.iter().enumerate() {
        if stage.is_radial_about(center) {
            if k == 0 {
                return Err(Error::domain(
                    "curve is a union of concentric circles; detector should have fired",
                ));
            }
            return Ok(k);
        }
    }
    Err(Error::internal("no chain stage is radial about the center"))
}

/// Replaces the terminal stage by a harmonic polynomial when the terminal
/// constant is nonzero (deg > 2 case): subtracting (c/4)·r² about the
/// tentative center keeps every symmetry of f a symmetry of the result.
pub(crate) fn terminal_harmonic(ch: &LaplacianChain) -> Result<BiPoly> {
    let t = ch.terminal();
    if ch.terminal_constant.is_zero() {
        return Ok(t.clone());
    }
    let quarter = &ch.terminal_constant / Rat::from_integer(4.into());
    let r2 = BiPoly::from_terms(&[(2, 0, Rat::one()), (0, 2, Rat::one())]);
    let h0 = t.sub(&r2.scale(&quarter));
    debug_assert!(h0.is_harmonic());
    let g0 = crate::harmonic::associated_g(&h0)?;
    let p = crate::harmonic::rotation_center(&g0)?;
    let r2_at_p = BiPoly::from_terms(&[
        (2, 0, Rat::one()),
        (0, 2, Rat::one()),
        (1, 0, Rat::from_integer((-2).into()) * &p.re),
        (0, 1, Rat::from_integer((-2).into()) * &p.im),
        (0, 0, &p.re * &p.re + &p.im * &p.im),
    ]);
    let h = t.sub(&r2_at_p.scale(&quarter));
    debug_assert!(h.is_harmonic());
    Ok(h)
}

/// The three-way case split on deg △^ℓf (the reduction of §3.2-style
/// pipelines). Degenerate families are reported as an outcome variant.
pub fn reduce_to_harmonic(f: &BiPoly) -> Result<ReductionOutcome> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::invalid("reduction of a constant"));
    }
    if let Some(direction) = detect_parallel_lines(f) {
        return Ok(ReductionOutcome::Degenerate(DegenerateFamily::ParallelLines {
            direction,
        }));
    }
    if let Some(center) = detect_concentric_circles(f) {
        return Ok(ReductionOutcome::Degenerate(DegenerateFamily::ConcentricCircles {
            center,
        }));
    }
    let ch = chain(f)?;
    reduce_chain(&ch)
}

pub(crate) fn reduce_chain(ch: &LaplacianChain) -> Result<ReductionOutcome> {
    let t = ch.terminal();
    let deg = t.degree().unwrap();
    if deg > 2 {
        return Ok(ReductionOutcome::HarmonicHighDeg(terminal_harmonic(ch)?));
    }
    if deg == 1 {
        let xi_raw = LinearForm::from_bipoly(t).unwrap();
        let xi = normalize_linear_form(&xi_raw);
        return linear_route(ch, &xi);
    }
    // deg == 2
    if let Some(center) = radial_center(t) {
        let k = first_stage_radial(ch, &center)?;
        let fhat = &ch.stages[k - 1];
        let ptilde = anti_laplacian_radial(&ch.stages[k], &center)?;
        let h = fhat.sub(&ptilde);
        debug_assert!(h.is_harmonic());
        return match h.degree() {
            Some(1) => Ok(ReductionOutcome::LineTimesCircle {
                line: h,
                circle: t.clone(),
            }),
            Some(d) if d >= 2 => Ok(ReductionOutcome::HarmonicHighDeg(h)),
            _ => Err(Error::internal("radial reduction produced a constant")),
        };
    }
    if let Some((xi0, pi)) = parallel_pair_form(t) {
        // midline of the pair is canonical under all symmetries of the pair
        let mid = -pi.0[1].clone() / (Rat::from_integer(2.into()) * &pi.0[2]);
        let xi = LinearForm {
            a: xi0.a.clone(),
            b: xi0.b.clone(),
            c: -mid,
        };
        return linear_route(ch, &xi);
    }
    Ok(ReductionOutcome::ConicFallback(t.clone()))
}

fn normalize_linear_form(xi: &LinearForm) -> LinearForm {
    // scale so (a, b) is a primitive integer direction; keeps the zero line
    let (a, b) = normalize_direction((xi.a.clone(), xi.b.clone()));
    let scale = if !xi.a.is_zero() {
        &xi.a / &a
    } else {
        &xi.b / &b
    };
    LinearForm {
        a,
        b,
        c: &xi.c / &scale,
    }
}

fn linear_route(ch: &LaplacianChain, xi: &LinearForm) -> Result<ReductionOutcome> {
    let k = first_stage_in_linear(ch, xi)?;
    let fhat = &ch.stages[k - 1];
    let ptilde = anti_laplacian_linear(&ch.stages[k], xi)?;
    let h = fhat.sub(&ptilde);
    debug_assert!(h.is_harmonic());
    match h.degree() {
        Some(1) => Ok(ReductionOutcome::ConicFallback(h.mul(&xi.to_bipoly()))),
        Some(d) if d >= 2 => Ok(ReductionOutcome::HarmonicHighDeg(h)),
        _ => Err(Error::internal("linear reduction produced a constant")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{gr_int, rat, rat_int};

    fn bp(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, rat(n, d)))
                .collect::<Vec<_>>(),
        )
    }

    fn quintic() -> BiPoly {
        bp(&[(5, 0, 1, 10), (3, 2, -1, 2), (2, 0, 1, 2), (0, 0, 1, 1)])
    }

    /// The stirrup curve, expanded: (x⁵+x⁴-13x³+10x² - y⁴+2y² - 1)/120.
    fn stirrup1() -> BiPoly {
        bp(&[
            (5, 0, 1, 120),
            (4, 0, 1, 120),
            (3, 0, -13, 120),
            (2, 0, 10, 120),
            (0, 4, -1, 120),
            (0, 2, 2, 120),
            (0, 0, -1, 120),
        ])
    }

    #[test]
    fn chain_examples() {
        let ch = chain(&quintic()).unwrap();
        assert_eq!(ch.ell, 1);
        assert_eq!(
            ch.stages[1],
            bp(&[(3, 0, 1, 1), (1, 2, -3, 1), (0, 0, 1, 1)])
        );
        assert!(ch.terminal_constant.is_zero());

        let ch = chain(&stirrup1()).unwrap();
        assert_eq!(ch.ell, 2);
        assert_eq!(
            ch.stages[1],
            bp(&[(3, 0, 1, 6), (2, 0, 1, 10), (1, 0, -13, 20), (0, 0, 1, 5), (0, 2, -1, 10)])
        );
        assert_eq!(ch.stages[2], bp(&[(1, 0, 1, 1)]));
        assert!(ch.terminal_constant.is_zero());

        let circ = bp(&[(2, 0, 1, 1), (0, 2, 1, 1)]);
        let ch = chain(&circ).unwrap();
        assert_eq!(ch.ell, 0);
        assert_eq!(ch.terminal_constant, rat_int(4));
        assert!(ch.ell as u32 <= circ.degree().unwrap().div_ceil(2));

        assert!(chain(&BiPoly::constant(rat_int(2))).is_err());
    }

    #[test]
    fn parallel_line_detection() {
        assert_eq!(
            detect_parallel_lines(&bp(&[(2, 0, 1, 1), (0, 0, -1, 1)])),
            Some((rat_int(0), rat_int(1)))
        );
        // (x+y)(x+y-1): direction (1, -1)
        let s = bp(&[(1, 0, 1, 1), (0, 1, 1, 1)]);
        let f = s.mul(&s.sub(&BiPoly::constant(rat_int(1))));
        assert_eq!(
            detect_parallel_lines(&f),
            Some((rat_int(1), rat_int(-1)))
        );
        assert_eq!(detect_parallel_lines(&bp(&[(1, 1, 1, 1)])), None);
    }

    #[test]
    fn concentric_circle_detection() {
        // (x²+y²-1)(x²+y²-4)
        let c1 = bp(&[(2, 0, 1, 1), (0, 2, 1, 1), (0, 0, -1, 1)]);
        let c4 = bp(&[(2, 0, 1, 1), (0, 2, 1, 1), (0, 0, -4, 1)]);
        let f = c1.mul(&c4);
        assert_eq!(detect_concentric_circles(&f), Some(gr_int(0, 0)));
        // translated by (1, 2): oracle is compose-then-detect
        let moved = f.translate(&rat_int(-1), &rat_int(-2));
        assert_eq!(detect_concentric_circles(&moved), Some(gr_int(1, 2)));
        // x² + 2y² - 1: top form is not (x²+y²)^T
        assert_eq!(
            detect_concentric_circles(&bp(&[(2, 0, 1, 1), (0, 2, 2, 1), (0, 0, -1, 1)])),
            None
        );
    }

    #[test]
    fn concurrent_line_detection() {
        // xy(x+y) about (2, -1)
        let lines = bp(&[(2, 1, 1, 1), (1, 2, 1, 1)]);
        assert_eq!(detect_concurrent_lines(&lines), Some(gr_int(0, 0)));
        let moved = lines.translate(&rat_int(-2), &rat_int(1));
        assert_eq!(detect_concurrent_lines(&moved), Some(gr_int(2, -1)));
        assert_eq!(detect_concurrent_lines(&quintic()), None);
    }

    #[test]
    fn anti_laplacian_linear_examples() {
        let x = LinearForm {
            a: rat_int(1),
            b: rat_int(0),
            c: rat_int(0),
        };
        // p = x → x³/6 (the defining ODE p̃'' = p, p̃(0) = p̃'(0) = 0)
        let p = bp(&[(1, 0, 1, 1)]);
        let pt = anti_laplacian_linear(&p, &x).unwrap();
        assert_eq!(pt, bp(&[(3, 0, 1, 6)]));
        assert_eq!(pt.laplacian(), p);
        // p = 1 → x²/2
        let one = BiPoly::constant(rat_int(1));
        assert_eq!(anti_laplacian_linear(&one, &x).unwrap(), bp(&[(2, 0, 1, 2)]));
        // stirrup: h = △f₁ - x³/6 is the hyperbola centered at (13/4, 0)
        let ch = chain(&stirrup1()).unwrap();
        let fhat = &ch.stages[1];
        let pt = anti_laplacian_linear(&ch.stages[2], &x).unwrap();
        let h = fhat.sub(&pt);
        assert_eq!(
            h,
            bp(&[(2, 0, 1, 10), (1, 0, -13, 20), (0, 0, 1, 5), (0, 2, -1, 10)])
        );
        assert!(h.is_harmonic());
        // not a polynomial in x
        assert!(anti_laplacian_linear(&bp(&[(0, 1, 1, 1)]), &x).is_err());
    }

    #[test]
    fn anti_laplacian_radial_examples() {
        let origin = gr_int(0, 0);
        let r2 = bp(&[(2, 0, 1, 1), (0, 2, 1, 1)]);
        // p = r² → r⁴/16; oracle: △r^{2m} = 4m²r^{2m-2}
        let pt = anti_laplacian_radial(&r2, &origin).unwrap();
        assert_eq!(pt, r2.mul(&r2).scale(&rat(1, 16)));
        assert_eq!(pt.laplacian(), r2);
        // p = 1 → r²/4
        let one = BiPoly::constant(rat_int(1));
        assert_eq!(
            anti_laplacian_radial(&one, &origin).unwrap(),
            r2.scale(&rat(1, 4))
        );
        // p = r⁴ → r⁶/36
        let r4 = r2.mul(&r2);
        let pt = anti_laplacian_radial(&r4, &origin).unwrap();
        assert_eq!(pt, r4.mul(&r2).scale(&rat(1, 36)));
        assert_eq!(pt.laplacian(), r4);
        // off-center radial
        let moved = r2.translate(&rat_int(3), &rat_int(-1));
        let c = gr_int(-3, 1);
        let pt = anti_laplacian_radial(&moved, &c).unwrap();
        assert_eq!(pt.laplacian(), moved);
        // non-radial input
        assert!(anti_laplacian_radial(&bp(&[(2, 0, 1, 1)]), &origin).is_err());
    }

    #[test]
    fn reduce_examples() {
        // quintic → harmonic x³ - 3xy² + 1
        match reduce_to_harmonic(&quintic()).unwrap() {
            ReductionOutcome::HarmonicHighDeg(h) => {
                assert_eq!(h, bp(&[(3, 0, 1, 1), (1, 2, -3, 1), (0, 0, 1, 1)]));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
        // cubic (1/3)x³ - y + 1 → conic fallback x·(1 - y) up to normalization
        let cubic = bp(&[(3, 0, 1, 3), (0, 1, -1, 1), (0, 0, 1, 1)]);
        match reduce_to_harmonic(&cubic).unwrap() {
            ReductionOutcome::ConicFallback(q) => {
                let expect = bp(&[(1, 0, 1, 1)]).mul(&bp(&[(0, 1, -1, 1), (0, 0, 1, 1)]));
                assert_eq!(q.normalized(), expect.normalized());
            }
            other => panic!("unexpected outcome {other:?}"),
        }
        // stirrup → harmonic hyperbola
        match reduce_to_harmonic(&stirrup1()).unwrap() {
            ReductionOutcome::HarmonicHighDeg(h) => {
                assert_eq!(
                    h,
                    bp(&[(2, 0, 1, 10), (1, 0, -13, 20), (0, 0, 1, 5), (0, 2, -1, 10)])
                );
            }
            other => panic!("unexpected outcome {other:?}"),
        }
        // degenerate families surface as outcomes
        match reduce_to_harmonic(&bp(&[(2, 0, 1, 1), (0, 0, -1, 1)])).unwrap() {
            ReductionOutcome::Degenerate(DegenerateFamily::ParallelLines { direction }) => {
                assert_eq!(direction, (rat_int(0), rat_int(1)));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn nonzero_terminal_constant_is_harmonized() {
        // sextic-with-bowl: harmonic sextic + r² has △f = 4 ≠ 0 at ℓ = 0
        let sextic = bp(&[
            (6, 0, 1, 1),
            (4, 2, -15, 1),
            (3, 0, -2, 1),
            (2, 4, 15, 1),
            (1, 2, 6, 1),
            (0, 6, -1, 1),
        ]);
        let f = sextic.add(&bp(&[(2, 0, 1, 1), (0, 2, 1, 1)]));
        let ch = chain(&f).unwrap();
        assert_eq!(ch.ell, 0);
        assert_eq!(ch.terminal_constant, rat_int(4));
        match reduce_to_harmonic(&f).unwrap() {
            ReductionOutcome::HarmonicHighDeg(h) => {
                assert!(h.is_harmonic());
                assert_eq!(h.degree(), Some(6));
                // subtracting r² about the right center recovers the sextic
                assert_eq!(h, sextic);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn line_times_circle_route() {
        // built so h = f - p̃ is exactly the line x: f = x + p̃ where
        // p̃ is the radial anti-Laplacian of the circle r² - 1
        let r2 = bp(&[(2, 0, 1, 1), (0, 2, 1, 1)]);
        let circ = r2.sub(&BiPoly::constant(rat_int(1)));
        let pt = anti_laplacian_radial(&circ, &gr_int(0, 0)).unwrap();
        let f = pt.add(&bp(&[(1, 0, 1, 1)]));
        let ch = chain(&f).unwrap();
        assert_eq!(ch.ell, 1);
        assert_eq!(ch.stages[1], circ);
        match reduce_to_harmonic(&f).unwrap() {
            ReductionOutcome::LineTimesCircle { line, circle } => {
                assert_eq!(line, bp(&[(1, 0, 1, 1)]));
                assert_eq!(circle, circ);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }
}
