//! Exact classification of conics, their symmetry groups, and conic-conic /
//! line-circle similarity, all by rank and signature invariants of the
//! associated symmetric matrix.

use crate::algebraic::{isolate_roots, value_cmp};
use crate::bipoly::{BiPoly, LinearForm, MapKind, PlaneMap};
use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::scalars::{
    gauss_sqrt_exact, gr_conj, gr_div, gr_norm, gr_zero, ComplexScalar, GaussRat, Rat,
};
use crate::symmetry::SymmetryReport;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Intersecting,
    Parallel,
    Coincident,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicClass {
    Ellipse,
    Hyperbola,
    Parabola,
    LinePair(PairKind),
    Circle,
    /// Degenerate real locus: a single point or empty (imaginary conic).
    PointOrEmpty,
}

/// Exact classification data of a degree-2 curve.
#[derive(Debug, Clone)]
pub struct ConicData {
    pub class: ConicClass,
    pub matrix3: [[Rat; 3]; 3],
    pub center: Option<GaussRat>,
    /// Unit w = e^{2iφ} of one symmetry axis (the other is -w), for central
    /// non-circular conics and parabolas.
    pub axis_unit: Option<ComplexScalar>,
    /// Vertex, for parabolas.
    pub vertex: Option<GaussRat>,
    /// Quadratic block is scalar: circle-type (infinite symmetry set).
    pub is_radial: bool,
    /// Rank-1 block with singular matrix: parallel-line-type family.
    pub is_parallel_family: bool,
}

/// Both square roots of a Gaussian rational, exact when possible.
pub fn sqrt_pair(k: &GaussRat) -> Result<(ComplexScalar, ComplexScalar)> {
    if let Some(w) = gauss_sqrt_exact(k) {
        return Ok((ComplexScalar::Exact(w.clone()), ComplexScalar::Exact(-w)));
    }
    let poly = CPoly::new(vec![-k.clone(), gr_zero(), crate::scalars::gr_one()]);
    let eps = Rat::new(BigInt::one(), BigInt::from(1u64 << 20));
    let roots = isolate_roots(&poly, &eps)?;
    if roots.len() != 2 {
        return Err(Error::internal("square root isolation did not find two roots"));
    }
    let mut it = roots.into_iter();
    Ok((
        ComplexScalar::Algebraic(it.next().unwrap().0),
        ComplexScalar::Algebraic(it.next().unwrap().0),
    ))
}

pub fn classify(q: &BiPoly) -> Result<ConicData> {
    if q.degree() != Some(2) {
        return Err(Error::invalid("conic classification requires degree 2"));
    }
    let a = q.coeff(2, 0);
    let b = q.coeff(1, 1);
    let c = q.coeff(0, 2);
    let d = q.coeff(1, 0);
    let e = q.coeff(0, 1);
    let f0 = q.coeff(0, 0);
    let two = Rat::from_integer(2.into());
    let matrix3 = [
        [a.clone(), &b / &two, &d / &two],
        [&b / &two, c.clone(), &e / &two],
        [&d / &two, &e / &two, f0.clone()],
    ];
    let det_s = &a * &c - &b * &b / Rat::from_integer(4.into());
    let is_radial = b.is_zero() && a == c && !a.is_zero();

    if !det_s.is_zero() {
        // central conic
        let cx = (&b * &e / Rat::from_integer(4.into()) - &c * &d / &two) / &det_s;
        let cy = (&b * &d / Rat::from_integer(4.into()) - &a * &e / &two) / &det_s;
        let center = GaussRat::new(cx.clone(), cy.clone());
        let f_at_center = q.eval(&cx, &cy);
        let axis_unit = if is_radial {
            None
        } else {
            // reflection condition at degree 2: w² = conj(c20)/c20
            let c20 = GaussRat::new(
                (&a - &c) / Rat::from_integer(4.into()),
                -&b / Rat::from_integer(4.into()),
            );
            let gamma = gr_div(&gr_conj(&c20), &c20);
            let (w1, w2) = sqrt_pair(&gamma)?;
            Some(if value_cmp(&w1, &w2) == std::cmp::Ordering::Less {
                w2
            } else {
                w1
            })
        };
        let class = if f_at_center.is_zero() {
            if det_s.is_negative() {
                ConicClass::LinePair(PairKind::Intersecting)
            } else {
                ConicClass::PointOrEmpty
            }
        } else if det_s.is_negative() {
            ConicClass::Hyperbola
        } else {
            // definite block: real points iff f_at_center and a have opposite signs
            let real = f_at_center.is_negative() != a.is_negative();
            match (is_radial, real) {
                (true, true) => ConicClass::Circle,
                (false, true) => ConicClass::Ellipse,
                (_, false) => ConicClass::PointOrEmpty,
            }
        };
        return Ok(ConicData {
            class,
            matrix3,
            center: Some(center),
            axis_unit,
            vertex: None,
            is_radial,
            is_parallel_family: false,
        });
    }

    // rank-1 block: s·(a0·x + b0·y)² + linear part
    let (a0, b0) = if !a.is_zero() {
        (a.clone(), &b / &two)
    } else {
        (&b / &two, c.clone())
    };
    let n2 = &a0 * &a0 + &b0 * &b0;
    let xi0 = LinearForm {
        a: a0.clone(),
        b: b0.clone(),
        c: Rat::zero(),
    };
    if let Some(pi) = q.as_univariate_in(&xi0) {
        // parallel pair (possibly coincident or imaginary)
        let disc = &pi.0[1] * &pi.0[1]
            - Rat::from_integer(4.into()) * &pi.0[2] * &pi.0[0];
        let class = if disc.is_zero() {
            ConicClass::LinePair(PairKind::Coincident)
        } else if disc.is_positive() {
            ConicClass::LinePair(PairKind::Parallel)
        } else {
            ConicClass::PointOrEmpty
        };
        let w = line_direction_unit(&a0, &b0);
        return Ok(ConicData {
            class,
            matrix3,
            center: None,
            axis_unit: Some(ComplexScalar::Exact(w)),
            vertex: None,
            is_radial: false,
            is_parallel_family: true,
        });
    }
    // parabola: q = s·ξ0² + d·x + e·y + f with (d, e) not parallel to ∇(ξ0²)
    let s = if !a0.is_zero() && !a.is_zero() {
        &a / (&a0 * &a0)
    } else {
        &c / (&b0 * &b0)
    };
    // axis line: ξ0 = ξ*; derived from ∇q parallel to the axis direction
    let xi_star = -(&d * &a0 + &e * &b0) / (&two * &s * &n2);
    let base_x = &xi_star * &a0 / &n2;
    let base_y = &xi_star * &b0 / &n2;
    let denom = &e * &a0 - &d * &b0;
    if denom.is_zero() {
        return Err(Error::internal("degenerate parabola axis"));
    }
    let k0 = &s * &xi_star * &xi_star + &d * &base_x + &e * &base_y + &f0;
    let t_star = -&k0 / &denom;
    let vertex = GaussRat::new(&base_x - &t_star * &b0, &base_y + &t_star * &a0);
    // axis direction is the null direction (-b0, a0) of the rank-1 block
    let w = line_direction_unit(&a0, &b0);
    Ok(ConicData {
        class: ConicClass::Parabola,
        matrix3,
        center: None,
        axis_unit: Some(ComplexScalar::Exact(w)),
        vertex: Some(vertex),
        is_radial: false,
        is_parallel_family: false,
    })
}

/// Unit w = e^{2iθ} for the direction (-b, a) of the line a·x + b·y + c = 0.
fn line_direction_unit(a: &Rat, b: &Rat) -> GaussRat {
    // direction vector v = (-b, a); w = v²/|v|² in complex form
    let v = GaussRat::new(-b.clone(), a.clone());
    let n = gr_norm(&v);
    gr_div(&(&v * &v), &GaussRat::new(n, Rat::zero()))
}

/// The finite symmetry group of a conic with finitely many symmetries,
/// computed from the classification data alone (center, axis units) with
/// every candidate confirmed by exact substitution. Deliberately independent
/// of the Laplacian-reduction pipeline so the two routes can be compared.
pub fn conic_symmetries(q: &BiPoly) -> Result<SymmetryReport> {
    let data = classify(q)?;
    if data.is_radial {
        return Err(Error::domain(format!(
            "conic of class {:?} has an infinite symmetry group (circle-type)",
            data.class
        )));
    }
    if data.is_parallel_family {
        return Err(Error::domain(format!(
            "conic of class {:?} has an infinite symmetry group (parallel-line-type)",
            data.class
        )));
    }
    if let Some(center) = &data.center {
        let w = data
            .axis_unit
            .clone()
            .ok_or_else(|| Error::internal("central non-circle without axis unit"))?;
        let mut rotations = Vec::new();
        for d in [2u32, 4] {
            let m = crate::symmetry::rotation_map(d, center)?;
            if let Some(lam) = crate::symmetry::verify_isometry(q, &m)? {
                rotations.push((d, lam));
            }
        }
        // candidate mirrors: the two axes ±w, plus the two bisectors ±i·w
        // (realized only by perpendicular line pairs)
        let mut reflections = Vec::new();
        for u in [
            w.clone(),
            scalar_neg(&w),
            scalar_mul_i(&w),
            scalar_neg(&scalar_mul_i(&w)),
        ] {
            let m = crate::symmetry::reflection_map(&u, center);
            if let Some(lam) = crate::symmetry::verify_isometry(q, &m)? {
                reflections.push((u, lam));
            }
        }
        reflections.sort_by(|a, b| value_cmp(&a.0, &b.0));
        let n_star = rotations.iter().map(|&(d, _)| d).max().unwrap_or(1);
        let group_order = n_star * if reflections.is_empty() { 1 } else { 2 };
        return Ok(SymmetryReport {
            center: Some(center.clone()),
            rotations,
            reflections,
            group_order,
            squarefree_normalized: false,
        });
    }
    // parabola: the single axis mirror through the vertex
    let vertex = data
        .vertex
        .clone()
        .ok_or_else(|| Error::internal("parabola without vertex"))?;
    let Some(ComplexScalar::Exact(w)) = data.axis_unit.clone() else {
        return Err(Error::internal("parabola without rational axis unit"));
    };
    let m = PlaneMap::reflection_exact(w.clone(), &vertex);
    let lam = crate::symmetry::verify_isometry(q, &m)?
        .ok_or_else(|| Error::internal("parabola axis mirror failed verification"))?;
    Ok(SymmetryReport {
        center: Some(vertex),
        rotations: Vec::new(),
        reflections: vec![(ComplexScalar::Exact(w), lam)],
        group_order: 2,
        squarefree_normalized: false,
    })
}

fn scalar_neg(s: &ComplexScalar) -> ComplexScalar {
    match s {
        ComplexScalar::Exact(g) => ComplexScalar::Exact(-g.clone()),
        ComplexScalar::Algebraic(a) => {
            // roots of p(-z), box negated
            let flipped = CPoly::new(
                a.defining()
                    .0
                    .iter()
                    .enumerate()
                    .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                    .collect(),
            );
            let b = a.box_snapshot();
            let nb = crate::interval::ComplexBox::new(b.re.neg(), b.im.neg());
            ComplexScalar::Algebraic(crate::algebraic::AlgebraicNumber::from_parts_unchecked(
                flipped, nb,
            ))
        }
    }
}

fn scalar_mul_i(s: &ComplexScalar) -> ComplexScalar {
    match s {
        ComplexScalar::Exact(g) => ComplexScalar::Exact(g * &crate::scalars::gr_i()),
        ComplexScalar::Algebraic(a) => {
            // if p(w) = 0 then q(z) := p(-i·z) vanishes at z = i·w
            let mut coeffs = Vec::new();
            let minus_i = GaussRat::new(Rat::zero(), -Rat::one());
            let mut pw = crate::scalars::gr_one();
            for c in &a.defining().0 {
                coeffs.push(c * &pw);
                pw = &pw * &minus_i;
            }
            let b = a.box_snapshot();
            let nb = crate::interval::ComplexBox::new(b.im.neg(), b.re);
            ComplexScalar::Algebraic(crate::algebraic::AlgebraicNumber::from_parts_unchecked(
                CPoly::new(coeffs),
                nb,
            ))
        }
    }
}

/// All similarities φ with q1∘φ = λ·q2 between two central conics with
/// nonzero centered constant (ellipses and hyperbolas, real or imaginary),
/// two parabolas, or two intersecting line pairs. For intersecting pairs,
/// which admit a one-parameter scaling family, the returned maps are the
/// isometric representatives (|α| = 1).
pub fn conics_similar(q1: &BiPoly, q2: &BiPoly) -> Result<Vec<PlaneMap>> {
    let d1 = classify(q1)?;
    let d2 = classify(q2)?;
    if d1.is_radial || d2.is_radial {
        return Err(Error::domain(
            "circle-type conics admit an infinite similarity family",
        ));
    }
    if d1.is_parallel_family || d2.is_parallel_family {
        return Err(Error::domain(
            "parallel-line-type conics admit an infinite similarity family",
        ));
    }
    let mut candidates: Vec<PlaneMap> = Vec::new();
    match (&d1.center, &d2.center) {
        (Some(p1), Some(p2)) => {
            let z1 = q1.translate(&p1.re, &p1.im).to_complex();
            let z2 = q2.translate(&p2.re, &p2.im).to_complex();
            let c20_1 = z1.coeff(2, 0);
            let c20_2 = z2.coeff(2, 0);
            let c11_1 = z1.coeff(1, 1);
            let c11_2 = z2.coeff(1, 1);
            let c00_1 = z1.coeff(0, 0);
            let c00_2 = z2.coeff(0, 0);
            if c20_1.is_zero() || c20_2.is_zero() {
                return Err(Error::internal("non-radial conic with zero c20"));
            }
            if c00_1.im != Rat::zero() || !c11_1.im.is_zero() {
                return Err(Error::internal("real form with complex invariants"));
            }
            if !c00_1.is_zero() && !c00_2.is_zero() {
                // scale pinned by the constants
                let lam = gr_div(&c00_1, &c00_2);
                let s = if !c11_1.is_zero() || !c11_2.is_zero() {
                    if c11_1.is_zero() || c11_2.is_zero() {
                        return Ok(Vec::new());
                    }
                    let s = (&lam * &c11_2).re / &c11_1.re;
                    if !s.is_positive() {
                        return Ok(Vec::new());
                    }
                    Some(s)
                } else {
                    None
                };
                for kind in [MapKind::Direct, MapKind::Opposite] {
                    let target = match kind {
                        MapKind::Direct => c20_2.clone(),
                        MapKind::Opposite => gr_conj(&c20_2),
                    };
                    let kappa = gr_div(&(&lam * &target), &c20_1);
                    if let Some(s) = &s {
                        // |α²| must equal s
                        if &gr_norm(&kappa) != &(s * s) {
                            continue;
                        }
                    }
                    let (r1, r2) = sqrt_pair(&kappa)?;
                    for alpha in [r1, r2] {
                        candidates.push(anchored_map(kind, alpha, p1, p2, s.clone()));
                    }
                }
            } else if c00_1.is_zero() && c00_2.is_zero() {
                // intersecting pairs: scale-free; enumerate unit alignments
                for kind in [MapKind::Direct, MapKind::Opposite] {
                    let target = match kind {
                        MapKind::Direct => c20_2.clone(),
                        MapKind::Opposite => gr_conj(&c20_2),
                    };
                    let gamma = gr_div(&target, &c20_1);
                    // α⁴ = γ²/|γ|² has the unit solutions for both λ signs
                    let kappa4 = gr_div(
                        &(&gamma * &gamma),
                        &GaussRat::new(gr_norm(&gamma), Rat::zero()),
                    );
                    let mut poly = CPoly::monomial(crate::scalars::gr_one(), 4);
                    poly = poly.sub(&CPoly::constant(kappa4));
                    let eps = Rat::new(BigInt::one(), BigInt::from(1u64 << 20));
                    for (root, _) in isolate_roots(&poly, &eps)? {
                        let alpha = match crate::algebraic::recognize_gaussian(
                            &root,
                            &BigInt::from(1_000_000_000u64),
                        ) {
                            Some(g) => ComplexScalar::Exact(g),
                            None => ComplexScalar::Algebraic(root),
                        };
                        candidates.push(anchored_map(kind, alpha, p1, p2, Some(Rat::one())));
                    }
                }
            } else {
                return Ok(Vec::new());
            }
        }
        (None, None) => {
            // parabolas: unique direct and opposite candidates from the
            // vertex-centered coefficient ratios
            let (v1, v2) = match (&d1.vertex, &d2.vertex) {
                (Some(v1), Some(v2)) => (v1.clone(), v2.clone()),
                _ => return Ok(Vec::new()),
            };
            let z1 = q1.translate(&v1.re, &v1.im).to_complex();
            let z2 = q2.translate(&v2.re, &v2.im).to_complex();
            let (c20_1, c10_1) = (z1.coeff(2, 0), z1.coeff(1, 0));
            let (c20_2, c10_2) = (z2.coeff(2, 0), z2.coeff(1, 0));
            if c20_1.is_zero() || c10_1.is_zero() || c20_2.is_zero() || c10_2.is_zero() {
                return Err(Error::internal("vertex-centered parabola missing terms"));
            }
            // E(2,0)/E(1,0): α = (c²20·c¹10)/(c¹20·c²10)
            let alpha_d = gr_div(&(&c20_2 * &c10_1), &(&c20_1 * &c10_2));
            candidates.push(anchored_map(
                MapKind::Direct,
                ComplexScalar::Exact(alpha_d),
                &v1,
                &v2,
                None,
            ));
            let alpha_o = gr_div(
                &(&gr_conj(&c20_2) * &c10_1),
                &(&c20_1 * &gr_conj(&c10_2)),
            );
            candidates.push(anchored_map(
                MapKind::Opposite,
                ComplexScalar::Exact(alpha_o),
                &v1,
                &v2,
                None,
            ));
        }
        _ => return Ok(Vec::new()),
    }
    confirm_candidates(q1, q2, candidates)
}

/// Map with φ(anchor2) = anchor1: β = p1 - α·p2 (direct) or p1 - α·conj(p2).
pub(crate) fn anchored_map(
    kind: MapKind,
    alpha: ComplexScalar,
    p1: &GaussRat,
    p2: &GaussRat,
    norm_sq: Option<Rat>,
) -> PlaneMap {
    let p2_eff = match kind {
        MapKind::Direct => p2.clone(),
        MapKind::Opposite => gr_conj(p2),
    };
    match alpha {
        ComplexScalar::Exact(a) => {
            let beta = p1 - &(&a * &p2_eff);
            PlaneMap::new_exact(kind, a, beta)
        }
        ComplexScalar::Algebraic(a) => {
            let beta = crate::bipoly::BetaSpec::OfAlpha(CPoly::new(vec![
                p1.clone(),
                -p2_eff,
            ]));
            let mut m = PlaneMap::new_algebraic(kind, a, beta);
            if norm_sq.is_some() {
                m.norm_sq = norm_sq;
            }
            m
        }
    }
}

fn confirm_candidates(
    f1: &BiPoly,
    f2: &BiPoly,
    candidates: Vec<PlaneMap>,
) -> Result<Vec<PlaneMap>> {
    let mut out: Vec<PlaneMap> = Vec::new();
    for m in candidates {
        if crate::similarity::verify_similarity(f1, f2, &m)?.is_some() {
            let dup = out
                .iter()
                .any(|o| o.kind == m.kind && crate::algebraic::value_eq(&o.alpha, &m.alpha));
            if !dup {
                out.push(m);
            }
        }
    }
    out.sort_by(|x, y| {
        let kind_rank = |k: MapKind| match k {
            MapKind::Direct => 0,
            MapKind::Opposite => 1,
        };
        kind_rank(x.kind)
            .cmp(&kind_rank(y.kind))
            .then_with(|| value_cmp(&x.alpha, &y.alpha))
    });
    Ok(out)
}

/// Similarities carrying the configuration line2 ∪ circle2 onto
/// line1 ∪ circle1, i.e. maps φ with (l1·c1)∘φ = λ·(l2·c2).
pub fn line_circle_similar(
    pair1: (&BiPoly, &BiPoly),
    pair2: (&BiPoly, &BiPoly),
) -> Result<Vec<PlaneMap>> {
    let (l1, c1) = pair1;
    let (l2, c2) = pair2;
    let data = |line: &BiPoly, circ: &BiPoly| -> Result<(LinearForm, GaussRat, Rat)> {
        let lf = LinearForm::from_bipoly(line)
            .ok_or_else(|| Error::invalid("line factor is not linear"))?;
        let center = crate::reduce::radial_center(circ)
            .ok_or_else(|| Error::invalid("circle factor is not a circle"))?;
        let a = circ.coeff(2, 0);
        let r2 = (&center.re * &center.re + &center.im * &center.im)
            - circ.coeff(0, 0) / &a;
        Ok((lf, center, r2))
    };
    let (lf1, p1, r1sq) = data(l1, c1)?;
    let (lf2, p2, r2sq) = data(l2, c2)?;
    if r1sq.is_zero() || r2sq.is_zero() {
        return Err(Error::domain("zero-radius circle in line-circle comparison"));
    }
    let mu_sq = &r1sq / &r2sq;
    if !mu_sq.is_positive() {
        return Ok(Vec::new());
    }
    // distance-to-radius invariant
    let dist_sq = |lf: &LinearForm, p: &GaussRat| -> Rat {
        let v = &lf.a * &p.re + &lf.b * &p.im + &lf.c;
        &v * &v / (&lf.a * &lf.a + &lf.b * &lf.b)
    };
    if dist_sq(&lf1, &p1) != &mu_sq * &dist_sq(&lf2, &p2) {
        return Ok(Vec::new());
    }
    let w1 = line_direction_unit(&lf1.a, &lf1.b);
    let w2 = line_direction_unit(&lf2.a, &lf2.b);
    let mut candidates = Vec::new();
    for kind in [MapKind::Direct, MapKind::Opposite] {
        // α² = μ²·w1·conj(w2) (direct) or μ²·w1·w2 (opposite)
        let unit_part = match kind {
            MapKind::Direct => &w1 * &gr_conj(&w2),
            MapKind::Opposite => &w1 * &w2,
        };
        let kappa = GaussRat::new(mu_sq.clone(), Rat::zero()) * unit_part;
        let (a1, a2) = sqrt_pair(&kappa)?;
        for alpha in [a1, a2] {
            candidates.push(anchored_map(kind, alpha, &p1, &p2, Some(mu_sq.clone())));
        }
    }
    let f1 = l1.mul(c1);
    let f2 = l2.mul(c2);
    confirm_candidates(&f1, &f2, candidates)
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

    #[test]
    fn classify_circle_and_hyperbola() {
        let circ = bp(&[(2, 0, 1, 1), (0, 2, 1, 1), (0, 0, -1, 1)]);
        let d = classify(&circ).unwrap();
        assert_eq!(d.class, ConicClass::Circle);
        assert_eq!(d.center, Some(gr_int(0, 0)));
        assert!(d.is_radial);

        // the stirrup hyperbola: (1/10)x² - (13/20)x + 1/5 - (1/10)y²
        let h = bp(&[(2, 0, 1, 10), (1, 0, -13, 20), (0, 0, 1, 5), (0, 2, -1, 10)]);
        let d = classify(&h).unwrap();
        assert_eq!(d.class, ConicClass::Hyperbola);
        assert_eq!(d.center, Some(GaussRat::new(rat(13, 4), rat_int(0))));
        // axes parallel to the coordinate axes: axis unit ±1
        match d.axis_unit {
            Some(ComplexScalar::Exact(w)) => assert!(w == crate::scalars::gr_one() || w == -crate::scalars::gr_one()),
            other => panic!("unexpected axis unit {other:?}"),
        }
    }

    #[test]
    fn classify_line_pairs_and_parabola() {
        // x·(1 - y): intersecting pair, center (0, 1)
        let q = bp(&[(1, 0, 1, 1)]).mul(&bp(&[(0, 1, -1, 1), (0, 0, 1, 1)]));
        let d = classify(&q).unwrap();
        assert_eq!(d.class, ConicClass::LinePair(PairKind::Intersecting));
        assert_eq!(d.center, Some(gr_int(0, 1)));

        // y - x²: parabola with vertex 0 and vertical axis
        let p = bp(&[(0, 1, 1, 1), (2, 0, -1, 1)]);
        let d = classify(&p).unwrap();
        assert_eq!(d.class, ConicClass::Parabola);
        assert_eq!(d.vertex, Some(gr_int(0, 0)));
        // axis x = 0 has angle π/2: w = e^{iπ} = -1
        match d.axis_unit {
            Some(ComplexScalar::Exact(w)) => assert_eq!(w, gr_int(-1, 0)),
            other => panic!("unexpected axis unit {other:?}"),
        }

        // x² - 1: parallel pair
        let q = bp(&[(2, 0, 1, 1), (0, 0, -1, 1)]);
        let d = classify(&q).unwrap();
        assert_eq!(d.class, ConicClass::LinePair(PairKind::Parallel));
        assert!(d.is_parallel_family);
        // (x+y)²: coincident
        let s = bp(&[(1, 0, 1, 1), (0, 1, 1, 1)]);
        assert_eq!(
            classify(&s.mul(&s)).unwrap().class,
            ConicClass::LinePair(PairKind::Coincident)
        );
        // x² + y² + 1: imaginary circle
        let q = bp(&[(2, 0, 1, 1), (0, 2, 1, 1), (0, 0, 1, 1)]);
        let d = classify(&q).unwrap();
        assert_eq!(d.class, ConicClass::PointOrEmpty);
        assert!(d.is_radial);
    }

    #[test]
    fn conic_symmetry_groups() {
        // hyperbola: order-2 rotation about (13/4, 0) plus two axis mirrors
        let h = bp(&[(2, 0, 1, 10), (1, 0, -13, 20), (0, 0, 1, 5), (0, 2, -1, 10)]);
        let rep = conic_symmetries(&h).unwrap();
        assert_eq!(rep.center, Some(GaussRat::new(rat(13, 4), rat_int(0))));
        assert_eq!(rep.rotations, vec![(2, 1)]);
        assert_eq!(rep.reflections.len(), 2);
        assert_eq!(rep.group_order, 4);

        // parabola y - x²: single mirror across x = 0
        let p = bp(&[(0, 1, 1, 1), (2, 0, -1, 1)]);
        let rep = conic_symmetries(&p).unwrap();
        assert_eq!(rep.rotations, vec![]);
        assert_eq!(rep.reflections.len(), 1);
        assert_eq!(rep.group_order, 2);

        // infinite classes are domain errors
        let circ = bp(&[(2, 0, 1, 1), (0, 2, 1, 1), (0, 0, -1, 1)]);
        assert!(conic_symmetries(&circ).is_err());
        let par = bp(&[(2, 0, 1, 1), (0, 0, -1, 1)]);
        assert!(conic_symmetries(&par).is_err());
    }

    #[test]
    fn perpendicular_pair_has_square_group() {
        let q = bp(&[(2, 0, 1, 1), (0, 2, -1, 1)]);
        let rep = conic_symmetries(&q).unwrap();
        assert_eq!(rep.rotations, vec![(2, 1), (4, -1)]);
        assert_eq!(rep.reflections.len(), 4);
        assert_eq!(rep.group_order, 8);
        // oracle: brute-force all eight candidate maps exactly
        let center = gr_int(0, 0);
        let mut count = 0;
        for d in [2u32, 4] {
            let m = crate::symmetry::rotation_map(d, &center).unwrap();
            if crate::symmetry::verify_isometry(&q, &m).unwrap().is_some() {
                count += 1;
            }
        }
        for w in [gr_int(1, 0), gr_int(-1, 0), gr_int(0, 1), gr_int(0, -1)] {
            let m = PlaneMap::reflection_exact(w, &center);
            if crate::symmetry::verify_isometry(&q, &m).unwrap().is_some() {
                count += 1;
            }
        }
        assert_eq!(count, 6); // 2 rotations + 4 distinct mirrors
    }
}
