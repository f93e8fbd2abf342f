//! Similarity detection between two implicit curves: the triangular system
//! on the associated complex polynomials with its gcd of constraint
//! polynomials, an anchored conjugate-free refinement at the full-curve
//! level, and tiered exact verification of every candidate map.

use crate::algebraic::{certified_zero, isolate_roots, recognize_gaussian, value_cmp, ConjPoly};
use crate::bipoly::{
    compose_exact, compose_symbolic, BetaSpec, BiPoly, MapKind, PlaneMap, ZPoly,
};
use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::reduce::{self, LaplacianChain};
use crate::scalars::{
    gr_conj, gr_div, gr_norm, gr_pow, gr_zero, rat_nth_root_exact, rational_reconstruct,
    ComplexScalar, GaussRat, Rat,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// An exact rational value or a certified enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealValue {
    Exact(Rat),
    Interval(Rat, Rat),
}

impl RealValue {
    pub fn approx(&self) -> Rat {
        match self {
            RealValue::Exact(r) => r.clone(),
            RealValue::Interval(lo, hi) => (lo + hi) / Rat::from_integer(2.into()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimilarityEntry {
    pub map: PlaneMap,
    pub lambda: RealValue,
    pub mu_sq: RealValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimilarityStatus {
    Similar,
    NotSimilar,
    InfiniteFamily(String),
}

#[derive(Debug, Clone)]
pub struct SimilarityReport {
    pub status: SimilarityStatus,
    pub similarities: Vec<SimilarityEntry>,
    pub squarefree_normalized: bool,
}

impl SimilarityReport {
    fn not_similar(normalized: bool) -> Self {
        SimilarityReport {
            status: SimilarityStatus::NotSimilar,
            similarities: Vec::new(),
            squarefree_normalized: normalized,
        }
    }

    fn infinite(desc: String, normalized: bool) -> Self {
        SimilarityReport {
            status: SimilarityStatus::InfiniteFamily(desc),
            similarities: Vec::new(),
            squarefree_normalized: normalized,
        }
    }
}

/// Candidate scalings for g1(αz+β) = λ·g2(z) (or the coefficient-conjugated
/// g2 for opposite maps): the gcd of the triangular system's constraint
/// polynomials, with β and λ expressed in α.
#[derive(Debug, Clone)]
pub struct SimilarityCandidateSet {
    pub kind: MapKind,
    /// gcd of the n-2 constraint polynomials; zero when the system is
    /// identically satisfied (both inputs are pure powers about their
    /// barycenters), in which case the candidate set is resolved at the
    /// full-curve level.
    pub final_gcd: CPoly,
    /// β(α), always p1 - α·p2 in terms of the two barycenters.
    pub beta_of_alpha: CPoly,
    /// Bookkeeping multiplier λ(α) = b_{n-1}·α^{n-1}/c_{n-1} of the
    /// triangular system (the curve-level multiplier is α·λ(α)·μ^{2ℓ}).
    pub lambda_of_alpha: CPoly,
}

fn binom(n: usize, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * Rat::from_integer(((n - i) as u64).into())
            / Rat::from_integer(((i + 1) as u64).into());
    }
    acc
}

/// Builds the triangular system of Algorithm-5 style and returns the gcd of
/// its constraint polynomials. None signals a degree mismatch (no similarity
/// of this kind at the harmonic level).
pub fn harmonic_candidates(
    g1: &CPoly,
    g2: &CPoly,
    kind: MapKind,
) -> Result<Option<SimilarityCandidateSet>> {
    let n1 = match (g1.degree(), g2.degree()) {
        (Some(a), Some(b)) if a == b && a >= 2 => a,
        _ => return Ok(None),
    };
    let g2k = match kind {
        MapKind::Direct => g2.clone(),
        MapKind::Opposite => g2.conj_coeffs(),
    };
    let b_top = g1.coeff(n1);
    let c_top = g2k.coeff(n1);
    let n1_rat = GaussRat::new(Rat::from_integer((n1 as u64).into()), Rat::zero());
    // λ(α) = (b_{n-1}/c_{n-1})·α^{n-1}
    let lambda_of_alpha = CPoly::monomial(gr_div(&b_top, &c_top), n1);
    // β(α) = B·α + D with B = c_{n-2}/((n-1)c_{n-1}), D = -b_{n-2}/((n-1)b_{n-1})
    let big_b = gr_div(&g2k.coeff(n1 - 1), &(&n1_rat * &c_top));
    let big_d = -gr_div(&g1.coeff(n1 - 1), &(&n1_rat * &b_top));
    let beta_of_alpha = CPoly::new(vec![big_d, big_b]);

    // β-powers as polynomials in α
    let mut beta_pows = vec![CPoly::one()];
    for _ in 1..=n1 {
        let next = beta_pows.last().unwrap().mul(&beta_of_alpha);
        beta_pows.push(next);
    }
    let mut final_gcd = CPoly::zero();
    for j in 0..=n1.saturating_sub(2) {
        // Σ_{m≥j} b_m·C(m,j)·α^j·β^{m-j}  -  λ(α)·c_j
        let mut e = CPoly::zero();
        for m in j..=n1 {
            let bm = g1.coeff(m);
            if bm.is_zero() {
                continue;
            }
            let coef = &bm * &GaussRat::new(binom(m, j), Rat::zero());
            let term = beta_pows[m - j].mul(&CPoly::monomial(coef, j));
            e = e.add(&term);
        }
        e = e.sub(&lambda_of_alpha.scale(&g2k.coeff(j)));
        if e.is_zero() {
            continue;
        }
        final_gcd = if final_gcd.is_zero() {
            e
        } else {
            final_gcd.gcd(&e)?
        };
    }
    if !final_gcd.is_zero() {
        final_gcd = final_gcd.monic();
    }
    Ok(Some(SimilarityCandidateSet {
        kind,
        final_gcd,
        beta_of_alpha,
        lambda_of_alpha,
    }))
}

/// Anchored conjugate-free candidate extraction on the full complex forms:
/// both inputs recentered at corresponding anchor points, so the map reduces
/// to z ↦ α·z (or α·z̄). Returns the gcd of derived constraint polynomials in
/// α together with the scaling relation s^Δ = ρ on s = |α|², or None when no
/// similarity with these anchors can exist.
pub(crate) fn linear_candidates(
    z1: &ZPoly,
    z2: &ZPoly,
    kind: MapKind,
) -> Result<Option<(CPoly, (u32, Rat))>> {
    if z1.terms.len() != z2.terms.len() {
        return Ok(None);
    }
    let mut gammas: BTreeMap<(u32, u32), GaussRat> = BTreeMap::new();
    for (&(j, k), c1) in &z1.terms {
        let c2 = z2.coeff(j, k);
        if c2.is_zero() {
            return Ok(None);
        }
        let c2eff = match kind {
            MapKind::Direct => c2,
            MapKind::Opposite => gr_conj(&c2),
        };
        gammas.insert((j, k), gr_div(&c2eff, c1));
    }
    // norm relations: λ² = s^m · N1/N2 per level m = j+k
    let mut level_ratio: BTreeMap<u32, Rat> = BTreeMap::new();
    for (&(j, k), g) in &gammas {
        // N1/N2 = 1/N(γ)
        let r = gr_norm(g);
        if r.is_zero() {
            return Ok(None);
        }
        let inv = r.recip();
        match level_ratio.entry(j + k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(inv);
            }
            std::collections::btree_map::Entry::Occupied(o) => {
                if o.get() != &inv {
                    return Ok(None);
                }
            }
        }
    }
    if level_ratio.len() < 2 {
        return Err(Error::domain(
            "anchored forms are homogeneous; scaling is unconstrained (degenerate input)",
        ));
    }
    // fold s^{m-m'} = R_{m'}/R_m into a single relation s^Δ = ρ
    let levels: Vec<(u32, Rat)> = level_ratio.into_iter().collect();
    let (m0, r0) = levels[0].clone();
    let mut delta: u64 = 0;
    let mut rho = Rat::one();
    for (m, r) in &levels[1..] {
        let e = (*m - m0) as u64;
        let val = &r0 / r; // s^e = R_{m0}/R_m
        match fold_power_relation(delta, &rho, e, &val) {
            Some((d, v)) => {
                delta = d;
                rho = v;
            }
            None => return Ok(None),
        }
    }
    let delta = delta as u32;
    if delta == 0 {
        return Err(Error::internal("no scaling relation derived"));
    }
    if !rho.is_positive() {
        return Ok(None);
    }
    // α-relations against a reference key: α^a·s^b = γ/γ0 with
    // a = (j-j0)-(k-k0), b = k-k0; powering by Δ eliminates s
    let (&(j0, k0), gamma0) = gammas.iter().next().unwrap();
    let gamma0 = gamma0.clone();
    let mut final_gcd = CPoly::zero();
    for (&(j, k), g) in &gammas {
        if (j, k) == (j0, k0) {
            continue;
        }
        let a = (j as i64 - j0 as i64) - (k as i64 - k0 as i64);
        let b = k as i64 - k0 as i64;
        let v = gr_div(g, &gamma0);
        // α^{aΔ} · ρ^b = v^Δ
        let v_pow = gr_pow(&v, delta);
        let rho_pow = rat_pow_signed(&rho, b);
        if a == 0 {
            if GaussRat::new(rho_pow, Rat::zero()) != v_pow {
                return Ok(None);
            }
            continue;
        }
        let constraint = if a > 0 {
            // z^{aΔ} = v^Δ/ρ^b
            let rhs = v_pow * GaussRat::new(rho_pow.recip(), Rat::zero());
            CPoly::monomial(crate::scalars::gr_one(), (a as usize) * delta as usize)
                .sub(&CPoly::constant(rhs))
        } else {
            // z^{|a|Δ} = ρ^b/v^Δ
            let rhs = gr_div(&GaussRat::new(rho_pow, Rat::zero()), &v_pow);
            CPoly::monomial(crate::scalars::gr_one(), ((-a) as usize) * delta as usize)
                .sub(&CPoly::constant(rhs))
        };
        final_gcd = if final_gcd.is_zero() {
            constraint
        } else {
            final_gcd.gcd(&constraint)?
        };
        if final_gcd.degree() == Some(0) {
            return Ok(None);
        }
    }
    if final_gcd.is_zero() {
        return Err(Error::internal(
            "anchored support admits no conjugate-free constraint (radial input?)",
        ));
    }
    Ok(Some((final_gcd.monic(), (delta, rho))))
}

/// Folds s^d1 = r1 (d1 may be 0: no relation yet) with s^d2 = r2 into the
/// gcd-exponent relation, checking consistency. None = inconsistent.
fn fold_power_relation(d1: u64, r1: &Rat, d2: u64, r2: &Rat) -> Option<(u64, Rat)> {
    if d1 == 0 {
        return Some((d2, r2.clone()));
    }
    let e = num_integer::ExtendedGcd::from(BigInt::from(d1).extended_gcd(&BigInt::from(d2)));
    let g: u64 = (&e.gcd).try_into().ok()?;
    let combined = rat_pow_bigint(r1, &e.x) * rat_pow_bigint(r2, &e.y);
    // consistency: combined^(d1/g) == r1 and combined^(d2/g) == r2
    if rat_pow_signed(&combined, (d1 / g) as i64) != *r1 {
        return None;
    }
    if rat_pow_signed(&combined, (d2 / g) as i64) != *r2 {
        return None;
    }
    Some((g, combined))
}

fn rat_pow_signed(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        crate::scalars::rat_pow(r, e as u32)
    } else {
        crate::scalars::rat_pow(r, (-e) as u32).recip()
    }
}

fn rat_pow_bigint(r: &Rat, e: &BigInt) -> Rat {
    use num_traits::ToPrimitive;
    rat_pow_signed(r, e.to_i64().expect("exponent fits i64"))
}

/// λ_k = λ/μ^{2k}: the multiplier after k Laplacian steps.
pub fn lambda_chain(lambda: &Rat, mu_sq: &Rat, k: u32) -> Result<Rat> {
    if !mu_sq.is_positive() {
        return Err(Error::invalid("lambda_chain requires mu² > 0"));
    }
    Ok(lambda / crate::scalars::rat_pow(mu_sq, k))
}

/// Tiered verification of f1∘m = λ·f2. Tier 1 composes exactly for Gaussian
/// parameters; Tier 2 decides each coefficient relation at the algebraic α,
/// eliminating conj(α) via a known |α|² or by certified interval refinement
/// below a height-derived separation bound.
pub fn verify_similarity(
    f1: &BiPoly,
    f2: &BiPoly,
    m: &PlaneMap,
) -> Result<Option<(RealValue, RealValue)>> {
    let z1 = f1.to_complex();
    let z2 = f2.to_complex();
    if z1.is_zero() || z2.is_zero() {
        return Err(Error::invalid("similarity verification on zero polynomial"));
    }
    if let Some(composed) = compose_exact(&z1, m) {
        let lam = match composed.proportionality(&z2) {
            Some(l) if l.im.is_zero() && !l.re.is_zero() => l.re,
            _ => return Ok(None),
        };
        let mu = m
            .norm_sq
            .clone()
            .ok_or_else(|| Error::internal("exact map without |alpha|²"))?;
        return Ok(Some((RealValue::Exact(lam), RealValue::Exact(mu))));
    }
    let ComplexScalar::Algebraic(alpha) = &m.alpha else {
        unreachable!("exact maps handled above")
    };
    let beta_poly = match &m.beta {
        BetaSpec::Exact(b) => CPoly::constant(b.clone()),
        BetaSpec::OfAlpha(p) => p.clone(),
    };
    let composed = compose_symbolic(&z1, m.kind, &beta_poly);
    let decide = |e: &ConjPoly| -> bool {
        if e.is_zero() {
            return true;
        }
        match &m.norm_sq {
            Some(s) => certified_zero(&e.conj_eliminated(s), alpha),
            None => e.decide_zero_at(alpha),
        }
    };
    // reference coefficient: highest key of f2's support
    let (&(j0, k0), c2ref) = z2.terms.iter().next_back().unwrap();
    let p_ref = composed
        .get(&(j0, k0))
        .cloned()
        .unwrap_or_else(ConjPoly::zero);
    let keys: std::collections::BTreeSet<(u32, u32)> =
        composed.keys().chain(z2.terms.keys()).cloned().collect();
    for key in keys {
        if key == (j0, k0) {
            continue;
        }
        let p = composed.get(&key).cloned().unwrap_or_else(ConjPoly::zero);
        // P_key·c2ref - P_ref·c2_key = 0
        let rel = p.scale(c2ref).sub(&p_ref.scale(&z2.coeff(key.0, key.1)));
        if !decide(&rel) {
            return Ok(None);
        }
    }
    // λ = P_ref(α)/c2ref must be real
    let im_rel = p_ref.sub(&swap_conj(&p_ref));
    if !decide(&im_rel) {
        return Ok(None);
    }
    // certified enclosure of λ, with exact recognition attempt
    let lambda = enclose_real_ratio(&p_ref, c2ref, alpha, &decide)?;
    let mu_sq = match &m.norm_sq {
        Some(s) => RealValue::Exact(s.clone()),
        None => {
            let mut ns = ConjPoly::zero();
            ns.add_term((1, 1), crate::scalars::gr_one());
            enclose_real_ratio(&ns, &crate::scalars::gr_one(), alpha, &decide)?
        }
    };
    Ok(Some((lambda, mu_sq)))
}

fn swap_conj(p: &ConjPoly) -> ConjPoly {
    let mut out = ConjPoly::zero();
    for (&(a, b), c) in &p.terms {
        out.add_term((b, a), gr_conj(c));
    }
    out
}

/// Certified real value of expr(α)/denom with rational-recognition attempt.
fn enclose_real_ratio(
    expr: &ConjPoly,
    denom: &GaussRat,
    alpha: &crate::algebraic::AlgebraicNumber,
    decide: &dyn Fn(&ConjPoly) -> bool,
) -> Result<RealValue> {
    let tight = crate::scalars::rat_pow10_neg(24);
    let v = expr.enclose_at(alpha, &tight);
    let denom_inv = crate::scalars::gr_inv(denom);
    let v = v.mul_exact(&denom_inv);
    let mid = v.mid();
    let cand = rational_reconstruct(&mid.re, &BigInt::from(10u64).pow(10));
    // exact check: expr - cand·denom = 0
    let mut check = expr.clone();
    check.add_term((0, 0), -(denom * &GaussRat::new(cand.clone(), Rat::zero())));
    if decide(&check) {
        return Ok(RealValue::Exact(cand));
    }
    Ok(RealValue::Interval(v.re.lo, v.re.hi))
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

/// All similarities f1∘φ = λ·f2 between two implicit curves.
pub fn similarities(f1: &BiPoly, f2: &BiPoly) -> Result<SimilarityReport> {
    if f1.degree().unwrap_or(0) < 1 || f2.degree().unwrap_or(0) < 1 {
        return Err(Error::invalid("similarity analysis of a constant"));
    }
    let mut normalized = false;
    let sf1 = if f1.is_squarefree() {
        f1.clone()
    } else {
        normalized = true;
        f1.squarefree_part()?
    };
    let sf2 = if f2.is_squarefree() {
        f2.clone()
    } else {
        normalized = true;
        f2.squarefree_part()?
    };
    if sf1.degree() != sf2.degree() {
        return Ok(SimilarityReport::not_similar(normalized));
    }

    // degenerate families
    let par = (
        reduce::detect_parallel_lines(&sf1),
        reduce::detect_parallel_lines(&sf2),
    );
    match par {
        (Some(d1), Some(d2)) => {
            return Ok(SimilarityReport::infinite(
                format!(
                    "both curves are unions of parallel lines (directions {:?} and {:?})",
                    (d1.0.to_string(), d1.1.to_string()),
                    (d2.0.to_string(), d2.1.to_string())
                ),
                normalized,
            ))
        }
        (None, None) => {}
        _ => return Ok(SimilarityReport::not_similar(normalized)),
    }
    let conc = (
        reduce::detect_concentric_circles(&sf1),
        reduce::detect_concentric_circles(&sf2),
    );
    match conc {
        (Some(c1), Some(c2)) => {
            return Ok(SimilarityReport::infinite(
                format!(
                    "both curves are unions of concentric circles (centers {} and {})",
                    crate::scalars::gr_str(&c1),
                    crate::scalars::gr_str(&c2)
                ),
                normalized,
            ))
        }
        (None, None) => {}
        _ => return Ok(SimilarityReport::not_similar(normalized)),
    }
    let conc_lines = (
        reduce::detect_concurrent_lines(&sf1),
        reduce::detect_concurrent_lines(&sf2),
    );
    match conc_lines {
        (Some(p1), Some(p2)) => {
            return if concurrent_similar(&sf1, &p1, &sf2, &p2)? {
                Ok(SimilarityReport::infinite(
                    format!(
                        "both curves are unions of concurrent lines (through {} and {}); \
                         similarities form a one-parameter scaling family",
                        crate::scalars::gr_str(&p1),
                        crate::scalars::gr_str(&p2)
                    ),
                    normalized,
                ))
            } else {
                Ok(SimilarityReport::not_similar(normalized))
            };
        }
        (None, None) => {}
        _ => return Ok(SimilarityReport::not_similar(normalized)),
    }

    let ch1 = reduce::chain(&sf1)?;
    let ch2 = reduce::chain(&sf2)?;
    if ch1.ell != ch2.ell {
        return Ok(SimilarityReport::not_similar(normalized));
    }
    if ch1.terminal_constant.is_zero() != ch2.terminal_constant.is_zero() {
        return Ok(SimilarityReport::not_similar(normalized));
    }
    let t1 = ch1.terminal().clone();
    let t2 = ch2.terminal().clone();
    if t1.degree() != t2.degree() {
        return Ok(SimilarityReport::not_similar(normalized));
    }

    let candidates = match t1.degree().unwrap() {
        d if d > 2 => {
            let h1 = reduce::terminal_harmonic(&ch1)?;
            let h2 = reduce::terminal_harmonic(&ch2)?;
            harmonic_route(&sf1, &sf2, &h1, &h2, &ch1, &ch2, ch1.ell)?
        }
        1 => linear_terminal_route(&sf1, &sf2, &ch1, &ch2)?,
        2 => conic_terminal_route(&sf1, &sf2, &ch1, &ch2)?,
        _ => unreachable!("terminal stage is nonconstant"),
    };
    let candidates = match candidates {
        None => return Ok(SimilarityReport::not_similar(normalized)),
        Some(c) => c,
    };

    let mut entries: Vec<SimilarityEntry> = Vec::new();
    for m in candidates {
        if let Some((lambda, mu_sq)) = verify_similarity(&sf1, &sf2, &m)? {
            let dup = entries.iter().any(|e| {
                e.map.kind == m.kind && crate::algebraic::value_eq(&e.map.alpha, &m.alpha)
            });
            if !dup {
                entries.push(SimilarityEntry { map: m, lambda, mu_sq });
            }
        }
    }
    entries.sort_by(|x, y| {
        let kind_rank = |k: MapKind| match k {
            MapKind::Direct => 0,
            MapKind::Opposite => 1,
        };
        kind_rank(x.map.kind)
            .cmp(&kind_rank(y.map.kind))
            .then_with(|| value_cmp(&x.map.alpha, &y.map.alpha))
    });
    let status = if entries.is_empty() {
        SimilarityStatus::NotSimilar
    } else {
        SimilarityStatus::Similar
    };
    Ok(SimilarityReport {
        status,
        similarities: entries,
        squarefree_normalized: normalized,
    })
}

/// Candidate maps from the harmonic stage: triangular-system gcd intersected
/// with the anchored conjugate-free constraints, for both kinds.
fn harmonic_route(
    sf1: &BiPoly,
    sf2: &BiPoly,
    h1: &BiPoly,
    h2: &BiPoly,
    ch1: &LaplacianChain,
    ch2: &LaplacianChain,
    h_level: usize,
) -> Result<Option<Vec<PlaneMap>>> {
    if h1.degree() != h2.degree() {
        return Ok(None);
    }
    let g1 = crate::harmonic::associated_g(h1)?;
    let g2 = crate::harmonic::associated_g(h2)?;
    let p1 = crate::harmonic::rotation_center(&g1)?;
    let p2 = crate::harmonic::rotation_center(&g2)?;
    let z1a = sf1.translate(&p1.re, &p1.im).to_complex();
    let z2a = sf2.translate(&p2.re, &p2.im).to_complex();
    let mut out = Vec::new();
    for kind in [MapKind::Direct, MapKind::Opposite] {
        let Some(cs) = harmonic_candidates(&g1, &g2, kind)? else {
            continue;
        };
        let Some((lc_gcd, (delta, rho))) = linear_candidates(&z1a, &z2a, kind)? else {
            continue;
        };
        let final_gcd = if cs.final_gcd.is_zero() {
            lc_gcd
        } else {
            cs.final_gcd.gcd(&lc_gcd)?
        };
        if final_gcd.degree().unwrap_or(0) == 0 {
            continue;
        }
        let norm_hint = rat_nth_root_exact(&rho, delta);
        for m in maps_from_gcd(&final_gcd, kind, &p1, &p2, norm_hint.clone())? {
            // terminal-constant filter for exact candidates: the chain forces
            // c1 = λ_{ℓ+1}·c2, i.e. μ^{2(ℓ+1-h_level)}·c1 = λ_h·c2 with λ_h
            // the multiplier of the harmonic pair (sitting at h_level).
            if let (Some((alpha, _)), false, false) = (
                m.exact_parts(),
                ch1.terminal_constant.is_zero(),
                ch2.terminal_constant.is_zero(),
            ) {
                let lam_book = cs.lambda_of_alpha.eval(&alpha);
                let lam_h = &lam_book * &alpha;
                if !lam_h.im.is_zero() {
                    continue;
                }
                let mu_sq = gr_norm(&alpha);
                let steps = (ch1.ell + 1 - h_level) as u32;
                let mu_pow = crate::scalars::rat_pow(&mu_sq, steps);
                if &mu_pow * &ch1.terminal_constant != &lam_h.re * &ch2.terminal_constant {
                    continue;
                }
            }
            out.push(m);
        }
    }
    Ok(Some(out))
}

/// Candidate maps from anchored conjugate-free constraints only.
fn anchored_route(
    sf1: &BiPoly,
    sf2: &BiPoly,
    p1: &GaussRat,
    p2: &GaussRat,
) -> Result<Option<Vec<PlaneMap>>> {
    let z1a = sf1.translate(&p1.re, &p1.im).to_complex();
    let z2a = sf2.translate(&p2.re, &p2.im).to_complex();
    let mut out = Vec::new();
    for kind in [MapKind::Direct, MapKind::Opposite] {
        let Some((gcd, (delta, rho))) = linear_candidates(&z1a, &z2a, kind)? else {
            continue;
        };
        if gcd.degree().unwrap_or(0) == 0 {
            continue;
        }
        let norm_hint = rat_nth_root_exact(&rho, delta);
        out.extend(maps_from_gcd(&gcd, kind, p1, p2, norm_hint)?);
    }
    Ok(Some(out))
}

fn maps_from_gcd(
    gcd: &CPoly,
    kind: MapKind,
    p1: &GaussRat,
    p2: &GaussRat,
    norm_hint: Option<Rat>,
) -> Result<Vec<PlaneMap>> {
    let eps = Rat::new(BigInt::one(), BigInt::from(1u64 << 20));
    let mut out = Vec::new();
    let (nonzero, _) = gcd.strip_zero_roots();
    if nonzero.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for (root, _) in isolate_roots(&nonzero, &eps)? {
        if root.equals_gauss(&gr_zero()) {
            continue;
        }
        let scalar = match recognize_gaussian(&root, &BigInt::from(1_000_000_000u64)) {
            Some(g) => ComplexScalar::Exact(g),
            None => ComplexScalar::Algebraic(root),
        };
        out.push(crate::conic::anchored_map(
            kind,
            scalar,
            p1,
            p2,
            norm_hint.clone(),
        ));
    }
    Ok(out)
}

/// deg △^ℓf = 1: per-curve reduction along each curve's own linear form,
/// then recursion on the harmonic remainders.
fn linear_terminal_route(
    sf1: &BiPoly,
    sf2: &BiPoly,
    ch1: &LaplacianChain,
    ch2: &LaplacianChain,
) -> Result<Option<Vec<PlaneMap>>> {
    let xi1 = crate::bipoly::LinearForm::from_bipoly(ch1.terminal()).unwrap();
    let xi2 = crate::bipoly::LinearForm::from_bipoly(ch2.terminal()).unwrap();
    reduction_by_lines(sf1, sf2, ch1, ch2, &xi1, &xi2)
}

fn reduction_by_lines(
    sf1: &BiPoly,
    sf2: &BiPoly,
    ch1: &LaplacianChain,
    ch2: &LaplacianChain,
    xi1: &crate::bipoly::LinearForm,
    xi2: &crate::bipoly::LinearForm,
) -> Result<Option<Vec<PlaneMap>>> {
    let k1 = first_in_linear(ch1, xi1);
    let k2 = first_in_linear(ch2, xi2);
    let (Some(k1), Some(k2)) = (k1, k2) else {
        return Err(Error::internal("no chain stage lies in the terminal line"));
    };
    if k1 != k2 || k1 == 0 {
        return Ok(None);
    }
    let h1 = ch1.stages[k1 - 1].sub(&reduce::anti_laplacian_linear(&ch1.stages[k1], xi1)?);
    let h2 = ch2.stages[k2 - 1].sub(&reduce::anti_laplacian_linear(&ch2.stages[k2], xi2)?);
    if h1.degree() != h2.degree() {
        return Ok(None);
    }
    match h1.degree().unwrap() {
        d if d >= 3 => harmonic_route(sf1, sf2, &h1, &h2, ch1, ch2, k1 - 1),
        2 => {
            // harmonic conics: anchor at their centers
            let c1 = crate::conic::classify(&h1)?;
            let c2 = crate::conic::classify(&h2)?;
            match (c1.center, c2.center) {
                (Some(p1), Some(p2)) => anchored_route(sf1, sf2, &p1, &p2),
                _ => Ok(None),
            }
        }
        1 => {
            // secant pairs: anchor at the intersection points
            let p1 = line_intersection(&crate::bipoly::LinearForm::from_bipoly(&h1).unwrap(), xi1);
            let p2 = line_intersection(&crate::bipoly::LinearForm::from_bipoly(&h2).unwrap(), xi2);
            match (p1, p2) {
                (Some(p1), Some(p2)) => anchored_route(sf1, sf2, &p1, &p2),
                _ => Ok(None),
            }
        }
        _ => Err(Error::internal("linear reduction produced a constant")),
    }
}

fn first_in_linear(ch: &LaplacianChain, xi: &crate::bipoly::LinearForm) -> Option<usize> {
    ch.stages
        .iter()
        .position(|s| s.as_univariate_in(xi).is_some())
}

fn line_intersection(
    l1: &crate::bipoly::LinearForm,
    l2: &crate::bipoly::LinearForm,
) -> Option<GaussRat> {
    let det = &l1.a * &l2.b - &l1.b * &l2.a;
    if det.is_zero() {
        return None;
    }
    let x = (&l1.b * &l2.c - &l2.b * &l1.c) / &det;
    let y = (&l2.a * &l1.c - &l1.a * &l2.c) / &det;
    Some(GaussRat::new(x, y))
}

/// deg △^ℓf = 2: conic comparison or per-curve radial reduction.
fn conic_terminal_route(
    sf1: &BiPoly,
    sf2: &BiPoly,
    ch1: &LaplacianChain,
    ch2: &LaplacianChain,
) -> Result<Option<Vec<PlaneMap>>> {
    let t1 = ch1.terminal();
    let t2 = ch2.terminal();
    let r1 = reduce::radial_center(t1);
    let r2 = reduce::radial_center(t2);
    match (r1, r2) {
        (Some(c1), Some(c2)) => return radial_terminal_route(sf1, sf2, ch1, ch2, &c1, &c2),
        (None, None) => {}
        _ => return Ok(None),
    }
    let d1 = crate::conic::classify(t1)?;
    let d2 = crate::conic::classify(t2)?;
    match (d1.is_parallel_family, d2.is_parallel_family) {
        (true, true) => {
            // midline-anchored linear forms, as in the reduction module
            let (xi1, _) = parallel_midline(t1)?;
            let (xi2, _) = parallel_midline(t2)?;
            return reduction_by_lines(sf1, sf2, ch1, ch2, &xi1, &xi2);
        }
        (false, false) => {}
        _ => return Ok(None),
    }
    match (&d1.center, &d2.center, &d1.vertex, &d2.vertex) {
        (Some(p1), Some(p2), _, _) => anchored_route(sf1, sf2, p1, p2),
        (None, None, Some(v1), Some(v2)) => anchored_route(sf1, sf2, v1, v2),
        _ => Ok(None),
    }
}

fn parallel_midline(q: &BiPoly) -> Result<(crate::bipoly::LinearForm, ())> {
    let d = crate::conic::classify(q)?;
    let Some(ComplexScalar::Exact(_)) = d.axis_unit else {
        return Err(Error::internal("parallel family without direction"));
    };
    // direction (a0, b0) from the rank-1 block; profile gives the midline
    let a = q.coeff(2, 0);
    let b = q.coeff(1, 1);
    let c = q.coeff(0, 2);
    let two = Rat::from_integer(2.into());
    let (a0, b0) = if !a.is_zero() {
        (a.clone(), &b / &two)
    } else {
        (&b / &two, c.clone())
    };
    let xi0 = crate::bipoly::LinearForm {
        a: a0,
        b: b0,
        c: Rat::zero(),
    };
    let pi = q
        .as_univariate_in(&xi0)
        .ok_or_else(|| Error::internal("parallel family is not univariate in its direction"))?;
    let mid = -pi.0[1].clone() / (&two * &pi.0[2]);
    Ok((
        crate::bipoly::LinearForm {
            a: xi0.a,
            b: xi0.b,
            c: -mid,
        },
        (),
    ))
}

fn radial_terminal_route(
    sf1: &BiPoly,
    sf2: &BiPoly,
    ch1: &LaplacianChain,
    ch2: &LaplacianChain,
    c1: &GaussRat,
    c2: &GaussRat,
) -> Result<Option<Vec<PlaneMap>>> {
    let k1 = first_radial(ch1, c1);
    let k2 = first_radial(ch2, c2);
    let (Some(k1), Some(k2)) = (k1, k2) else {
        return Err(Error::internal("no chain stage is radial about the center"));
    };
    if k1 != k2 || k1 == 0 {
        return Ok(None);
    }
    let h1 = ch1.stages[k1 - 1].sub(&reduce::anti_laplacian_radial(&ch1.stages[k1], c1)?);
    let h2 = ch2.stages[k2 - 1].sub(&reduce::anti_laplacian_radial(&ch2.stages[k2], c2)?);
    if h1.degree() != h2.degree() {
        return Ok(None);
    }
    match h1.degree().unwrap() {
        d if d >= 3 => harmonic_route(sf1, sf2, &h1, &h2, ch1, ch2, k1 - 1),
        2 => {
            let d1 = crate::conic::classify(&h1)?;
            let d2 = crate::conic::classify(&h2)?;
            match (d1.center, d2.center) {
                (Some(p1), Some(p2)) => anchored_route(sf1, sf2, &p1, &p2),
                _ => Ok(None),
            }
        }
        // line × circle: the circle centers anchor everything
        1 => anchored_route(sf1, sf2, c1, c2),
        _ => Err(Error::internal("radial reduction produced a constant")),
    }
}

fn first_radial(ch: &LaplacianChain, center: &GaussRat) -> Option<usize> {
    ch.stages.iter().position(|s| s.is_radial_about(center))
}

/// Do two unions of concurrent lines admit a similarity? (If so there are
/// infinitely many: the scaling family about the common points.)
fn concurrent_similar(
    sf1: &BiPoly,
    p1: &GaussRat,
    sf2: &BiPoly,
    p2: &GaussRat,
) -> Result<bool> {
    let h1 = sf1.translate(&p1.re, &p1.im);
    let h2 = sf2.translate(&p2.re, &p2.im);
    let z1 = h1.to_complex();
    let z2 = h2.to_complex();
    if z1.terms.len() != z2.terms.len() {
        return Ok(false);
    }
    for kind in [MapKind::Direct, MapKind::Opposite] {
        let mut gammas: BTreeMap<(u32, u32), GaussRat> = BTreeMap::new();
        let mut support_ok = true;
        for (&(j, k), c1v) in &z1.terms {
            let c2v = z2.coeff(j, k);
            if c2v.is_zero() {
                support_ok = false;
                break;
            }
            let c2eff = match kind {
                MapKind::Direct => c2v,
                MapKind::Opposite => gr_conj(&c2v),
            };
            gammas.insert((j, k), gr_div(&c2eff, c1v));
        }
        if !support_ok {
            continue;
        }
        // all |γ| equal (single homogeneous level)
        let norms: Vec<Rat> = gammas.values().map(gr_norm).collect();
        if norms.windows(2).any(|w| w[0] != w[1]) {
            continue;
        }
        // unit constraints u^{(j-k)-(j0-k0)} = γ0/γ
        let (&(j0, k0), g0) = gammas.iter().next().unwrap();
        let g0 = g0.clone();
        let mut gcd_acc: Option<CPoly> = None;
        let mut consistent = true;
        for (&(j, k), g) in &gammas {
            let e = (j as i64 - k as i64) - (j0 as i64 - k0 as i64);
            let v = gr_div(&g0, g);
            if e == 0 {
                if !(v - crate::scalars::gr_one()).is_zero() {
                    consistent = false;
                    break;
                }
                continue;
            }
            let constraint = if e > 0 {
                CPoly::monomial(crate::scalars::gr_one(), e as usize).sub(&CPoly::constant(v))
            } else {
                CPoly::monomial(crate::scalars::gr_one(), (-e) as usize)
                    .sub(&CPoly::constant(crate::scalars::gr_inv(&v)))
            };
            gcd_acc = Some(match gcd_acc {
                None => constraint,
                Some(gp) => gp.gcd(&constraint)?,
            });
        }
        if !consistent {
            continue;
        }
        let Some(g) = gcd_acc else { continue };
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let eps = Rat::new(BigInt::one(), BigInt::from(1u64 << 20));
        for (root, _) in isolate_roots(&g, &eps)? {
            let scalar = match recognize_gaussian(&root, &BigInt::from(1_000_000u64)) {
                Some(u) => ComplexScalar::Exact(u),
                None => ComplexScalar::Algebraic(root),
            };
            let m = crate::conic::anchored_map(kind, scalar, p1, p2, Some(Rat::one()));
            if verify_similarity(&h1, &h2, &m)?.is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{gr_i, gr_int, rat, rat_int};

    fn bp(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, rat(n, d)))
                .collect::<Vec<_>>(),
        )
    }

    fn sextic() -> BiPoly {
        bp(&[
            (6, 0, 1, 1),
            (4, 2, -15, 1),
            (3, 0, -2, 1),
            (2, 4, 15, 1),
            (1, 2, 6, 1),
            (0, 6, -1, 1),
        ])
    }

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

    fn stirrup2() -> BiPoly {
        // f2(x, y) = f1(y, x)
        BiPoly {
            terms: stirrup1()
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    #[test]
    fn lambda_chain_values() {
        assert_eq!(
            lambda_chain(&rat_int(1), &rat_int(4), 2).unwrap(),
            rat(1, 16)
        );
        assert_eq!(lambda_chain(&rat_int(1), &rat_int(1), 7).unwrap(), rat_int(1));
        assert!(lambda_chain(&rat_int(1), &rat_int(0), 1).is_err());
        assert!(lambda_chain(&rat_int(1), &rat_int(-2), 1).is_err());
    }

    #[test]
    fn identity_among_harmonic_candidates() {
        let g = crate::harmonic::associated_g(&sextic()).unwrap();
        let cs = harmonic_candidates(&g, &g, MapKind::Direct).unwrap().unwrap();
        assert!(!cs.final_gcd.is_zero());
        // α = 1 is a candidate with β = 0
        assert!(cs.final_gcd.eval(&crate::scalars::gr_one()).is_zero());
        assert!(cs.beta_of_alpha.eval(&crate::scalars::gr_one()).is_zero());
    }

    #[test]
    fn stirrup_pair_is_similar_with_isometries() {
        let rep = similarities(&stirrup1(), &stirrup2()).unwrap();
        assert_eq!(rep.status, SimilarityStatus::Similar);
        // contains z ↦ i·z̄ and z ↦ -i·z, both with λ = 1, μ² = 1
        let mut found_opposite = false;
        let mut found_direct = false;
        for e in &rep.similarities {
            let Some((a, b)) = e.map.exact_parts() else {
                continue;
            };
            if e.map.kind == MapKind::Opposite && a == gr_i() && b.is_zero() {
                found_opposite = true;
                assert_eq!(e.lambda, RealValue::Exact(rat_int(1)));
                assert_eq!(e.mu_sq, RealValue::Exact(rat_int(1)));
            }
            if e.map.kind == MapKind::Direct && a == gr_int(0, -1) && b.is_zero() {
                found_direct = true;
                assert_eq!(e.lambda, RealValue::Exact(rat_int(1)));
            }
        }
        assert!(found_opposite, "missing z ↦ i·z̄");
        assert!(found_direct, "missing z ↦ -i·z");
    }

    #[test]
    fn verify_similarity_examples() {
        // stirrup pair with m: z ↦ i z̄ → λ = 1
        let m = PlaneMap::new_exact(MapKind::Opposite, gr_i(), gr_int(0, 0));
        let (lam, mu) = verify_similarity(&stirrup1(), &stirrup2(), &m)
            .unwrap()
            .unwrap();
        assert_eq!(lam, RealValue::Exact(rat_int(1)));
        assert_eq!(mu, RealValue::Exact(rat_int(1)));
        // direct z ↦ -i z also works
        let m = PlaneMap::new_exact(MapKind::Direct, gr_int(0, -1), gr_int(0, 0));
        assert!(verify_similarity(&stirrup1(), &stirrup2(), &m)
            .unwrap()
            .is_some());
        // a perturbed map fails
        let m = PlaneMap::new_exact(MapKind::Direct, gr_int(0, -1), gr_int(1, 0));
        assert!(verify_similarity(&stirrup1(), &stirrup2(), &m)
            .unwrap()
            .is_none());
    }

    #[test]
    fn planted_scaled_similarity_found() {
        // f2 = f1 ∘ (2z + 1): verify the planted map and pipeline recovery
        let f1 = bp(&[(4, 0, 1, 1), (1, 2, -2, 1), (1, 0, 1, 3), (0, 1, 1, 1), (0, 0, -5, 1)]);
        let planted = PlaneMap::new_exact(MapKind::Direct, gr_int(2, 0), gr_int(1, 0));
        let (rx, ry) = planted.as_real_affine().unwrap();
        let f2 = f1.compose_affine(&rx, &ry);
        let (lam, mu) = verify_similarity(&f1, &f2, &planted).unwrap().unwrap();
        assert_eq!(lam, RealValue::Exact(rat_int(1)));
        assert_eq!(mu, RealValue::Exact(rat_int(4)));
        let rep = similarities(&f1, &f2).unwrap();
        assert_eq!(rep.status, SimilarityStatus::Similar);
        assert!(rep.similarities.iter().any(|e| {
            e.map.exact_parts() == Some((gr_int(2, 0), gr_int(1, 0)))
        }));
    }

    #[test]
    fn degree_mismatch_not_similar() {
        let f1 = bp(&[(3, 0, 1, 1), (0, 1, 1, 1)]);
        let f2 = bp(&[(2, 0, 1, 1), (0, 1, 1, 1)]);
        let rep = similarities(&f1, &f2).unwrap();
        assert_eq!(rep.status, SimilarityStatus::NotSimilar);
    }

    #[test]
    fn concurrent_unions_reported_infinite() {
        // xy = Im(z²)/2 and the rotated pair (x²-y²)/2 = Re(z²)/2 are similar
        let a = bp(&[(1, 1, 1, 1)]);
        let b = bp(&[(2, 0, 1, 2), (0, 2, -1, 2)]);
        let rep = similarities(&a, &b).unwrap();
        match rep.status {
            SimilarityStatus::InfiniteFamily(desc) => {
                assert!(desc.contains("concurrent"));
            }
            other => panic!("unexpected status {other:?}"),
        }
        // three concurrent lines vs a different triple with unequal angles
        let three1 = bp(&[(2, 1, 1, 1)]).add(&bp(&[(0, 3, -1, 3)])); // x²y - y³/3
        let three2 = bp(&[(2, 1, 1, 1)]).add(&bp(&[(0, 3, -1, 7)]));
        let rep = similarities(&three1, &three2).unwrap();
        assert_eq!(rep.status, SimilarityStatus::NotSimilar);
    }
}

#[cfg(test)]
mod sextic_pair_tests {
    use super::*;
    use crate::scalars::{gr_int, rat};

    fn bp(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, rat(n, d)))
                .collect::<Vec<_>>(),
        )
    }

    fn sextic() -> BiPoly {
        bp(&[
            (6, 0, 1, 1),
            (4, 2, -15, 1),
            (3, 0, -2, 1),
            (2, 4, 15, 1),
            (1, 2, 6, 1),
            (0, 6, -1, 1),
        ])
    }

    /// f2(x, y) = f1(-y+2, x+1), i.e. f1∘T with T(z) = i·z + (2+i).
    fn sextic_image() -> BiPoly {
        sextic().compose_affine(
            &[rat(0, 1), rat(-1, 1), rat(2, 1)],
            &[rat(1, 1), rat(0, 1), rat(1, 1)],
        )
    }

    #[test]
    fn sextic_pair_candidate_systems() {
        let f2 = sextic_image();
        let g1 = crate::harmonic::associated_g(&sextic()).unwrap();
        let g2 = crate::harmonic::associated_g(&f2).unwrap();
        // g2 as printed in the source text:
        // -6z⁵ + (-30+60i)z⁴ + (180+240i)z³ + (660-114i)z² + (234-708i)z - 222-246i
        let expect_g2 = CPoly::new(vec![
            gr_int(-222, -246),
            gr_int(234, -708),
            gr_int(660, -114),
            gr_int(180, 240),
            gr_int(-30, 60),
            gr_int(-6, 0),
        ]);
        assert_eq!(g2, expect_g2);

        // direct: M(α) has exactly the cube roots of -i, i.e. equals z³+i up
        // to a unit, and β = (1-2i)·α
        let cs = harmonic_candidates(&g1, &g2, MapKind::Direct)
            .unwrap()
            .unwrap();
        let cube_plus_i = CPoly::new(vec![
            gr_int(0, 1),
            gr_int(0, 0),
            gr_int(0, 0),
            gr_int(1, 0),
        ]);
        assert_eq!(cs.final_gcd.strip_zero_roots().0, cube_plus_i);
        assert_eq!(
            cs.beta_of_alpha,
            CPoly::new(vec![gr_int(0, 0), gr_int(1, -2)])
        );

        // opposite: roots are the cube roots of i, β = (1+2i)·α
        let cs = harmonic_candidates(&g1, &g2, MapKind::Opposite)
            .unwrap()
            .unwrap();
        let cube_minus_i = CPoly::new(vec![
            gr_int(0, -1),
            gr_int(0, 0),
            gr_int(0, 0),
            gr_int(1, 0),
        ]);
        assert_eq!(cs.final_gcd.strip_zero_roots().0, cube_minus_i);
        assert_eq!(
            cs.beta_of_alpha,
            CPoly::new(vec![gr_int(0, 0), gr_int(1, 2)])
        );
    }

    #[test]
    fn sextic_pair_full_pipeline() {
        let f1 = sextic();
        let f2 = sextic_image();
        let rep = similarities(&f1, &f2).unwrap();
        assert_eq!(rep.status, SimilarityStatus::Similar);
        let direct: Vec<&SimilarityEntry> = rep
            .similarities
            .iter()
            .filter(|e| e.map.kind == MapKind::Direct)
            .collect();
        let opposite: Vec<&SimilarityEntry> = rep
            .similarities
            .iter()
            .filter(|e| e.map.kind == MapKind::Opposite)
            .collect();
        assert_eq!(direct.len(), 3, "three direct similarities");
        assert_eq!(opposite.len(), 3, "three opposite similarities");
        // all are isometries (μ² = 1) and the planted T(z) = iz + (2+i)
        // appears among the direct maps
        let mut found_planted = false;
        for e in &rep.similarities {
            assert_eq!(e.mu_sq, RealValue::Exact(Rat::one()));
            if let Some((a, b)) = e.map.exact_parts() {
                if e.map.kind == MapKind::Direct && a == gr_int(0, 1) && b == gr_int(2, 1) {
                    found_planted = true;
                    assert_eq!(e.lambda, RealValue::Exact(Rat::one()));
                }
            }
        }
        assert!(found_planted, "planted map i·z + (2+i) missing");
    }
}
