//! Exact symmetry detection: integer congruence tests for rotations,
//! constraint-gcd extraction of reflection axes, certified verification of
//! every candidate, and the end-to-end pipeline over the Laplacian reduction.

use crate::algebraic::{certified_zero, isolate_roots, recognize_gaussian, value_cmp};
use crate::bipoly::{compose_exact, compose_symbolic, BiPoly, BetaSpec, MapKind, PlaneMap, ZPoly};
use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::reduce::{self, DegenerateFamily, ReductionOutcome};
use crate::scalars::{
    gr_conj, gr_div, gr_str, ComplexScalar, GaussRat, Rat,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rotation orders about the origin: all d in 2..=max_order such that the
/// rotation by 2π/d satisfies F∘ρ = λ·F with λ = ±1. The rotation multiplies
/// the coefficient of z^j z̄^k by ζ_d^{j-k}, so λ = +1 holds iff d divides
/// every exponent difference, and λ = -1 iff d is even and every difference
/// is ≡ d/2 (mod d).
pub fn rotation_orders(f_centered: &ZPoly, max_order: u32) -> Vec<(u32, i8)> {
    let diffs: Vec<i64> = f_centered
        .terms
        .keys()
        .map(|&(j, k)| j as i64 - k as i64)
        .collect();
    let mut out = Vec::new();
    for d in 2..=max_order.max(1) {
        let di = d as i64;
        if diffs.iter().all(|t| t.rem_euclid(di) == 0) {
            out.push((d, 1));
        } else if d % 2 == 0 && diffs.iter().all(|t| t.rem_euclid(di) == di / 2) {
            out.push((d, -1));
        }
    }
    out
}

/// Reflection units about the origin: all w with |w| = 1 such that z ↦ w·z̄
/// satisfies F∘σ = λ·F. For each λ the units are exactly the common roots of
/// the constraint polynomials w^{j-k} - λ·conj(c_jk)/c_jk over the
/// off-diagonal support; any nonzero diagonal term forces λ = +1.
pub fn reflection_units(f_centered: &ZPoly) -> Result<Vec<(ComplexScalar, i8)>> {
    if f_centered.is_radial() {
        return Err(Error::domain(
            "all-diagonal complex form (a union of concentric circles has no finite reflection set)",
        ));
    }
    let has_diagonal = f_centered.terms.keys().any(|&(j, k)| j == k);
    let mut out: Vec<(ComplexScalar, i8)> = Vec::new();
    for lambda in [1i8, -1i8] {
        if lambda == -1 && has_diagonal {
            continue;
        }
        let mut gcd_acc: Option<CPoly> = None;
        for (&(j, k), c) in &f_centered.terms {
            if j <= k {
                continue;
            }
            let mut rhs = gr_div(&gr_conj(c), c);
            if lambda == -1 {
                rhs = -rhs;
            }
            let constraint =
                CPoly::monomial(crate::scalars::gr_one(), (j - k) as usize).sub(&CPoly::constant(rhs));
            gcd_acc = Some(match gcd_acc {
                None => constraint,
                Some(g) => g.gcd(&constraint)?,
            });
        }
        let Some(g) = gcd_acc else { continue };
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let eps = Rat::new(BigInt::one(), BigInt::from(1u64 << 20));
        for (root, _) in isolate_roots(&g, &eps)? {
            let scalar = match recognize_gaussian(&root, &BigInt::from(1_000_000_000u64)) {
                Some(w) => ComplexScalar::Exact(w),
                None => ComplexScalar::Algebraic(root),
            };
            out.push((scalar, lambda));
        }
    }
    out.sort_by(|a, b| value_cmp(&a.0, &b.0));
    Ok(out)
}

/// Exact verification of f∘m = λ·f for an isometry (|α| = 1), returning λ.
pub fn verify_isometry(f: &BiPoly, m: &PlaneMap) -> Result<Option<i8>> {
    match m.norm_sq.as_ref() {
        Some(n) if n.is_one() => {}
        _ => {
            return Err(Error::domain(
                "verify_isometry requires |alpha| = 1 with an exact unit certificate",
            ))
        }
    }
    let zf = f.to_complex();
    if let Some(composed) = compose_exact(&zf, m) {
        let lam = match composed.proportionality(&zf) {
            Some(l) if l.im.is_zero() && (l.re.is_one() || l.re == -Rat::one()) => l,
            _ => return Ok(None),
        };
        return Ok(Some(if lam.re.is_one() { 1 } else { -1 }));
    }
    // algebraic unit α: eliminate conj(α) = 1/α and reduce mod the defining poly
    let ComplexScalar::Algebraic(alpha) = &m.alpha else {
        unreachable!("exact map handled above")
    };
    let beta_poly = match &m.beta {
        BetaSpec::Exact(b) => CPoly::constant(b.clone()),
        BetaSpec::OfAlpha(p) => p.clone(),
    };
    let composed = compose_symbolic(&zf, m.kind, &beta_poly);
    let one = Rat::one();
    'lams: for lambda in [1i8, -1i8] {
        let lam = GaussRat::new(Rat::from_integer(lambda.into()), Rat::zero());
        let keys: std::collections::BTreeSet<(u32, u32)> = composed
            .keys()
            .chain(zf.terms.keys())
            .cloned()
            .collect();
        for key in keys {
            let mut expr = composed
                .get(&key)
                .cloned()
                .unwrap_or_else(crate::algebraic::ConjPoly::zero);
            let target = zf.coeff(key.0, key.1) * &lam;
            expr.add_term((0, 0), -target);
            let reduced = expr.conj_eliminated(&one);
            if !certified_zero(&reduced, alpha) {
                continue 'lams;
            }
        }
        return Ok(Some(lambda));
    }
    Ok(None)
}

/// A verified finite symmetry group.
#[derive(Debug, Clone)]
pub struct SymmetryReport {
    /// Common point of all axes / center of all rotations, when any exist.
    pub center: Option<GaussRat>,
    /// Verified rotation orders with their multipliers.
    pub rotations: Vec<(u32, i8)>,
    /// Verified reflection units w = e^{2iφ} with their multipliers.
    pub reflections: Vec<(ComplexScalar, i8)>,
    pub group_order: u32,
    /// True when the input was not square-free and was normalized first.
    pub squarefree_normalized: bool,
}

impl SymmetryReport {
    pub fn empty() -> Self {
        SymmetryReport {
            center: None,
            rotations: Vec::new(),
            reflections: Vec::new(),
            group_order: 1,
            squarefree_normalized: false,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rotations.is_empty() && self.reflections.is_empty()
    }
}

#[derive(Debug, Clone)]
pub enum SymmetryOutcome {
    Finite(SymmetryReport),
    Infinite(DegenerateFamily),
}

/// The rotation by 2π/d about `center`, as an exact plane map.
pub fn rotation_map(d: u32, center: &GaussRat) -> Result<PlaneMap> {
    assert!(d >= 2);
    let beta_of = |alpha: &GaussRat| center - &(alpha * center);
    match d {
        2 => Ok(PlaneMap::new_exact(
            MapKind::Direct,
            -crate::scalars::gr_one(),
            beta_of(&-crate::scalars::gr_one()),
        )),
        4 => Ok(PlaneMap::new_exact(
            MapKind::Direct,
            crate::scalars::gr_i(),
            beta_of(&crate::scalars::gr_i()),
        )),
        _ => {
            // primitive root e^{2πi/d}: the nonreal root of z^d - 1 with
            // positive imaginary part and maximal real part
            let mut poly = CPoly::monomial(crate::scalars::gr_one(), d as usize);
            poly = poly.sub(&CPoly::one());
            let eps = Rat::new(BigInt::one(), BigInt::from(1u64 << 24));
            let roots = isolate_roots(&poly, &eps)?;
            let mut best: Option<crate::algebraic::AlgebraicNumber> = None;
            for (root, _) in roots {
                if root.equals_gauss(&crate::scalars::gr_one())
                    || root.equals_gauss(&-crate::scalars::gr_one())
                {
                    continue;
                }
                let mut b = root.box_snapshot();
                while b.im.lo <= Rat::zero() && b.im.hi >= Rat::zero() {
                    let w = b.width() / Rat::from_integer(4.into());
                    b = root.refine_to(&w);
                }
                if b.im.lo <= Rat::zero() {
                    continue;
                }
                best = match best {
                    None => Some(root),
                    Some(cur) => {
                        let cb = cur.box_snapshot();
                        let rb = root.box_snapshot();
                        // compare re intervals; refine until disjoint
                        let (mut cb, mut rb) = (cb, rb);
                        loop {
                            if cb.re.hi < rb.re.lo {
                                break Some(root);
                            }
                            if rb.re.hi < cb.re.lo {
                                break Some(cur);
                            }
                            let w = cb.width().min(rb.width()) / Rat::from_integer(4.into());
                            cb = cur.refine_to(&w);
                            rb = root.refine_to(&w);
                        }
                    }
                };
            }
            let alpha = best.ok_or_else(|| Error::internal("no primitive root found"))?;
            // β(α) = center - α·center
            let beta = BetaSpec::OfAlpha(CPoly::new(vec![center.clone(), -center.clone()]));
            Ok(PlaneMap::new_algebraic(MapKind::Direct, alpha, beta))
        }
    }
}

/// The reflection across the axis through `center` with unit w = e^{2iφ}.
pub fn reflection_map(w: &ComplexScalar, center: &GaussRat) -> PlaneMap {
    match w {
        ComplexScalar::Exact(w) => PlaneMap::reflection_exact(w.clone(), center),
        ComplexScalar::Algebraic(a) => {
            // β(w) = center - w·conj(center)
            let beta = BetaSpec::OfAlpha(CPoly::new(vec![
                center.clone(),
                -gr_conj(center),
            ]));
            let mut m = PlaneMap::new_algebraic(MapKind::Opposite, a.clone(), beta);
            // units from the constraint gcd divide w^m = u with |u| = 1
            m.norm_sq = Some(Rat::one());
            m
        }
    }
}

/// Full symmetry pipeline for a plane algebraic curve f(x, y) = 0.
pub fn symmetries(f: &BiPoly) -> Result<SymmetryOutcome> {
    symmetries_with_max_order(f, None)
}

pub fn symmetries_with_max_order(f: &BiPoly, max_order: Option<u32>) -> Result<SymmetryOutcome> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::invalid("symmetry analysis of a constant"));
    }
    let mut normalized = false;
    let sf = if f.is_squarefree() {
        f.clone()
    } else {
        normalized = true;
        f.squarefree_part()?
    };
    if sf.degree().unwrap_or(0) < 1 {
        return Err(Error::invalid("square-free part is constant"));
    }
    let outcome = reduce::reduce_to_harmonic(&sf)?;
    let deg = sf.degree().unwrap();
    let max_order = max_order.unwrap_or(2 * deg);
    let anchor: GaussRat = match &outcome {
        ReductionOutcome::Degenerate(d) => return Ok(SymmetryOutcome::Infinite(d.clone())),
        ReductionOutcome::HarmonicHighDeg(h) => {
            let g = crate::harmonic::associated_g(h)?;
            let p = crate::harmonic::rotation_center(&g)?;
            if h.degree() == Some(2) {
                // the conic center of a harmonic conic must agree
                let data = crate::conic::classify(h)?;
                match data.center {
                    Some(c) if c == p => {}
                    _ => {
                        return Err(Error::domain(
                            "harmonic and conic centers disagree; inconsistent reduction",
                        ))
                    }
                }
            }
            p
        }
        ReductionOutcome::ConicFallback(q) => {
            let data = crate::conic::classify(q)?;
            match (&data.center, &data.vertex) {
                (Some(c), _) => c.clone(),
                (None, Some(v)) => {
                    // parabola: the only candidate is the axis reflection
                    return parabola_path(&sf, v, &data, normalized);
                }
                _ => return Err(Error::internal("conic fallback without center or vertex")),
            }
        }
        ReductionOutcome::LineTimesCircle { circle, .. } => reduce::radial_center(circle)
            .ok_or_else(|| Error::internal("line-times-circle without a circle center"))?,
    };

    let recentered = sf.translate(&anchor.re, &anchor.im).to_complex();
    let rotations = rotation_orders(&recentered, max_order);
    for &(d, lam) in &rotations {
        let m = rotation_map(d, &anchor)?;
        let verified = verify_isometry(&sf, &m)?;
        if verified != Some(lam) {
            return Err(Error::internal(format!(
                "rotation candidate of order {d} failed exact verification"
            )));
        }
        if d % 2 == 1 && lam != 1 {
            return Err(Error::internal("odd-order rotation with lambda = -1"));
        }
    }
    let reflections = reflection_units(&recentered)?;
    for (w, lam) in &reflections {
        let m = reflection_map(w, &anchor);
        let verified = verify_isometry(&sf, &m)?;
        if verified != Some(*lam) {
            return Err(Error::internal(format!(
                "reflection candidate {} failed exact verification",
                describe_scalar(w)
            )));
        }
    }
    Ok(SymmetryOutcome::Finite(assemble_report(
        Some(anchor),
        rotations,
        reflections,
        normalized,
    )?))
}

fn parabola_path(
    sf: &BiPoly,
    vertex: &GaussRat,
    data: &crate::conic::ConicData,
    normalized: bool,
) -> Result<SymmetryOutcome> {
    let Some(ComplexScalar::Exact(w)) = data.axis_unit.clone() else {
        return Err(Error::internal("parabola without a rational axis unit"));
    };
    let m = PlaneMap::reflection_exact(w.clone(), vertex);
    let report = match verify_isometry(sf, &m)? {
        Some(lam) => assemble_report(
            Some(vertex.clone()),
            Vec::new(),
            vec![(ComplexScalar::Exact(w), lam)],
            normalized,
        )?,
        None => SymmetryReport {
            squarefree_normalized: normalized,
            ..SymmetryReport::empty()
        },
    };
    Ok(SymmetryOutcome::Finite(report))
}

fn assemble_report(
    anchor: Option<GaussRat>,
    rotations: Vec<(u32, i8)>,
    reflections: Vec<(ComplexScalar, i8)>,
    squarefree_normalized: bool,
) -> Result<SymmetryReport> {
    let n_star = rotations.iter().map(|&(d, _)| d).max().unwrap_or(1);
    for &(d, _) in &rotations {
        if n_star % d != 0 {
            return Err(Error::internal(
                "reported rotation orders do not form a cyclic group",
            ));
        }
    }
    if !reflections.is_empty() && reflections.len() != n_star as usize {
        return Err(Error::internal(format!(
            "dihedral structure violated: {} reflections with rotation group of order {}",
            reflections.len(),
            n_star
        )));
    }
    let group_order = n_star * if reflections.is_empty() { 1 } else { 2 };
    let center = if rotations.is_empty() && reflections.is_empty() {
        None
    } else {
        anchor
    };
    Ok(SymmetryReport {
        center,
        rotations,
        reflections,
        group_order,
        squarefree_normalized,
    })
}

pub(crate) fn describe_scalar(s: &ComplexScalar) -> String {
    match s {
        ComplexScalar::Exact(g) => gr_str(g),
        ComplexScalar::Algebraic(a) => {
            let (re, im) = a.approx_decimal(8);
            let sign = if im.starts_with('-') { "" } else { "+" };
            format!("algebraic({} ~ {}{}{}i)", a.defining(), re, sign, im)
        }
    }
}

/// Exact axis angle doubling 2φ of a unit; the reflection acts as z ↦ w z̄.
/// Returns the approximate axis angle in [0, π) for reporting.
pub fn axis_angle_approx(w: &ComplexScalar, digits: usize) -> String {
    let (re, im) = match w {
        ComplexScalar::Exact(g) => {
            use num_traits::ToPrimitive;
            (g.re.to_f64().unwrap_or(0.0), g.im.to_f64().unwrap_or(0.0))
        }
        ComplexScalar::Algebraic(a) => {
            let eps = crate::scalars::rat_pow10_neg(digits as u32 + 6);
            let b = a.refine_to(&eps);
            use num_traits::ToPrimitive;
            let m = b.mid();
            (m.re.to_f64().unwrap_or(0.0), m.im.to_f64().unwrap_or(0.0))
        }
    };
    let mut phi = im.atan2(re) / 2.0;
    if phi < 0.0 {
        phi += std::f64::consts::PI;
    }
    format!("{phi:.*}", digits)
}
