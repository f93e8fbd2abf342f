//! The complex polynomial g(z) associated with a harmonic polynomial, its
//! primitive, the tentative rotation center, and the axis-direction
//! congruence data.

use crate::bipoly::{BiPoly, ZPoly};
use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::scalars::{gr_conj, gr_div, gr_norm, gr_pow, GaussRat, Rat};
use num_traits::Zero;

/// g(z) = ∂ₓh - i·∂ᵧh, written in z alone. The z̄-dependence of the
/// substituted expression must vanish identically; that is what certifies
/// harmonicity of the input.
pub fn associated_g(h: &BiPoly) -> Result<CPoly> {
    if h.is_constant() {
        return Err(Error::invalid("associated polynomial of a constant"));
    }
    let hx = h.partial_x().to_complex();
    let hy = h.partial_y().to_complex();
    let minus_i = GaussRat::new(Rat::zero(), Rat::from_integer((-1).into()));
    let g2 = hx.add(&hy.scale(&minus_i));
    // all z̄-degrees must be zero
    let mut coeffs: Vec<GaussRat> = Vec::new();
    for (&(j, k), c) in &g2.terms {
        if k != 0 {
            return Err(Error::domain(format!(
                "input is not harmonic: residual z̄-term of degree ({}, {}) with coefficient {}",
                j,
                k,
                crate::scalars::gr_pretty(c)
            )));
        }
        let j = j as usize;
        if coeffs.len() <= j {
            coeffs.resize(j + 1, crate::scalars::gr_zero());
        }
        coeffs[j] = c.clone();
    }
    Ok(CPoly::new(coeffs))
}

/// Primitive G of g with G(0) = 0.
pub fn primitive_g(g: &CPoly) -> CPoly {
    let mut coeffs = vec![crate::scalars::gr_zero()];
    for (k, c) in g.0.iter().enumerate() {
        let d = GaussRat::new(Rat::from_integer(((k + 1) as u32).into()), Rat::zero());
        coeffs.push(gr_div(c, &d));
    }
    CPoly::new(coeffs)
}

/// Re(G(x+iy)) as a real polynomial: the harmonic polynomial whose
/// associated complex polynomial is g.
pub fn harmonic_from_g(g: &CPoly) -> Result<BiPoly> {
    if g.is_zero() {
        return Err(Error::invalid("harmonic reconstruction from zero"));
    }
    let big_g = primitive_g(g);
    // Re(G(z)) = (G(z) + conj(G)(z̄)) / 2
    let half = GaussRat::new(Rat::new(1.into(), 2.into()), Rat::zero());
    let mut f = ZPoly::zero();
    for (k, c) in big_g.0.iter().enumerate() {
        f.add_term(k as u32, 0, c * &half);
        f.add_term(0, k as u32, gr_conj(c) * &half);
    }
    f.to_real()
}

/// Tentative rotation center p = -a_{n-2} / ((n-1)·a_{n-1}).
pub fn rotation_center(g: &CPoly) -> Result<GaussRat> {
    let n1 = match g.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::invalid("center formula needs deg g >= 1")),
    };
    let a_top = g.coeff(n1);
    let a_next = g.coeff(n1 - 1);
    let denom = &a_top * &GaussRat::new(Rat::from_integer((n1 as u32).into()), Rat::zero());
    Ok(-gr_div(&a_next, &denom))
}

/// The finite axis-direction constraint of a centered harmonic polynomial,
/// encoded exactly: candidate reflection units w = e^{2iφ} satisfy
/// w^modulus = unit_rhs with |unit_rhs| = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisCandidates {
    /// a_ℓ ≠ 0 for some ℓ < n-1: (n-ℓ-1)·φ ≡ arg((-1)^{n-ℓ-1}·a_ℓ/a_{n-1}).
    General { modulus: u32, unit_rhs: GaussRat },
    /// g = a_{n-1}·z^{n-1}: φ = (kπ - arg a_{n-1})/n.
    PurePower { modulus: u32, unit_rhs: GaussRat },
}

impl AxisCandidates {
    pub fn modulus(&self) -> u32 {
        match self {
            AxisCandidates::General { modulus, .. } => *modulus,
            AxisCandidates::PurePower { modulus, .. } => *modulus,
        }
    }

    pub fn unit_rhs(&self) -> &GaussRat {
        match self {
            AxisCandidates::General { unit_rhs, .. } => unit_rhs,
            AxisCandidates::PurePower { unit_rhs, .. } => unit_rhs,
        }
    }

    /// Exact membership test for a unit w = e^{2iφ}: the axis direction φ
    /// satisfies the congruence iff w^modulus equals unit_rhs.
    pub fn contains_unit_exact(&self, w: &GaussRat) -> bool {
        gr_pow(w, self.modulus()) == *self.unit_rhs()
    }

    /// The same test as a polynomial relation, usable for algebraic w.
    pub fn membership_poly(&self) -> CPoly {
        let mut p = CPoly::monomial(crate::scalars::gr_one(), self.modulus() as usize);
        p = p.sub(&CPoly::constant(self.unit_rhs().clone()));
        p
    }
}

/// Axis-direction candidates of a centered harmonic input (a_{n-2} = 0).
///
/// The returned data encodes angles doubled into units w = e^{2iφ}, so the
/// congruence `m·φ ≡ arg(γ) (mod 2π)` becomes `w^m = γ²/|γ|²`.
pub fn axis_candidates(g: &CPoly) -> Result<AxisCandidates> {
    let n1 = match g.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::invalid("axis candidates need deg g >= 1")),
    };
    if n1 >= 1 && !g.coeff(n1 - 1).is_zero() {
        return Err(Error::domain(
            "axis candidates require a centered input (a_{n-2} = 0); recenter first",
        ));
    }
    let n = (n1 + 1) as u32;
    let a_top = g.coeff(n1);
    let ell = g.0.iter().position(|c| !c.is_zero()).unwrap();
    if ell < n1 {
        // (n-ℓ-1)·φ ≡ arg γ, γ = (-1)^{n-ℓ-1}·a_ℓ/a_{n-1}
        let m = (n1 - ell) as u32; // n - ℓ - 1
        let mut gamma = gr_div(&g.coeff(ell), &a_top);
        if m % 2 == 1 {
            gamma = -gamma;
        }
        // e^{2i·arg γ} = γ²/|γ|²
        let unit = gr_div(
            &(&gamma * &gamma),
            &GaussRat::new(gr_norm(&gamma), Rat::zero()),
        );
        Ok(AxisCandidates::General {
            modulus: m,
            unit_rhs: unit,
        })
    } else {
        // pure power: n·φ ≡ kπ - arg a_{n-1}  ⇔  w^n = conj(a)²/|a|²
        let ac = gr_conj(&a_top);
        let unit = gr_div(&(&ac * &ac), &GaussRat::new(gr_norm(&a_top), Rat::zero()));
        Ok(AxisCandidates::PurePower {
            modulus: n,
            unit_rhs: unit,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{gr_int, gr_one, rat, rat_int};

    fn bp(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, rat(n, d)))
                .collect::<Vec<_>>(),
        )
    }

    fn sextic() -> BiPoly {
        // x⁶ - 15x⁴y² - 2x³ + 15x²y⁴ + 6xy² - y⁶
        bp(&[
            (6, 0, 1, 1),
            (4, 2, -15, 1),
            (3, 0, -2, 1),
            (2, 4, 15, 1),
            (1, 2, 6, 1),
            (0, 6, -1, 1),
        ])
    }

    #[test]
    fn associated_g_paper_examples() {
        // h = x³ - 3xy² + 1 → 3z²
        let h = bp(&[(3, 0, 1, 1), (1, 2, -3, 1), (0, 0, 1, 1)]);
        let g = associated_g(&h).unwrap();
        assert_eq!(g, CPoly::monomial(gr_int(3, 0), 2));
        // sextic → 6z⁵ - 6z²
        let g = associated_g(&sextic()).unwrap();
        let mut expect = CPoly::monomial(gr_int(6, 0), 5);
        expect = expect.sub(&CPoly::monomial(gr_int(6, 0), 2));
        assert_eq!(g, expect);
        // h = x → 1
        let g = associated_g(&bp(&[(1, 0, 1, 1)])).unwrap();
        assert_eq!(g, CPoly::one());
    }

    #[test]
    fn associated_g_rejects_non_harmonic() {
        let err = associated_g(&bp(&[(2, 0, 1, 1)])).unwrap_err();
        match err {
            crate::error::Error::Domain(msg) => assert!(msg.contains("z̄")),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(associated_g(&BiPoly::constant(rat_int(3))).is_err());
    }

    #[test]
    fn primitive_and_reconstruction() {
        // g = 6z⁵ - 6z² → G = z⁶ - 2z³, Re part as printed in the source curve
        let g = CPoly::monomial(gr_int(6, 0), 5).sub(&CPoly::monomial(gr_int(6, 0), 2));
        let big_g = primitive_g(&g);
        let mut expect = CPoly::monomial(gr_one(), 6);
        expect = expect.sub(&CPoly::monomial(gr_int(2, 0), 3));
        assert_eq!(big_g, expect);
        let h = harmonic_from_g(&g).unwrap();
        let expect_h = bp(&[
            (6, 0, 1, 1),
            (4, 2, -15, 1),
            (2, 4, 15, 1),
            (0, 6, -1, 1),
            (3, 0, -2, 1),
            (1, 2, 6, 1),
        ]);
        assert_eq!(h, expect_h);
        assert!(h.is_harmonic());
        // g = 1 → G = z, h = x
        let h = harmonic_from_g(&CPoly::one()).unwrap();
        assert_eq!(h, bp(&[(1, 0, 1, 1)]));
        // round-trip: associated_g ∘ harmonic_from_g = id
        let g = CPoly::new(vec![gr_int(1, 2), gr_int(0, -3), gr_int(5, 0), gr_int(0, 1)]);
        let back = associated_g(&harmonic_from_g(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rotation_center_examples() {
        // g = 6z⁵ - 6z² → 0
        let g = associated_g(&sextic()).unwrap();
        assert_eq!(rotation_center(&g).unwrap(), gr_int(0, 0));
        // g = a z + b → -b/a
        let g = CPoly::new(vec![gr_int(3, 1), gr_int(1, -1)]);
        let p = rotation_center(&g).unwrap();
        assert_eq!(&gr_int(1, -1) * &p + gr_int(3, 1), gr_int(0, 0));
        // translated sextic: center moves to the translation point
        let h_shift = sextic().translate(&rat_int(-1), &rat_int(-1));
        let g_shift = associated_g(&h_shift).unwrap();
        assert_eq!(rotation_center(&g_shift).unwrap(), gr_int(1, 1));
        assert!(rotation_center(&CPoly::one()).is_err());
    }

    #[test]
    fn axis_candidates_examples() {
        // sextic: 3φ ≡ 0 (mod 2π) → w³ = 1
        let g = associated_g(&sextic()).unwrap();
        let ac = axis_candidates(&g).unwrap();
        assert_eq!(
            ac,
            AxisCandidates::General {
                modulus: 3,
                unit_rhs: gr_one()
            }
        );
        assert!(ac.contains_unit_exact(&gr_one()));
        // g = 3z²: pure power, w³ = 1 (axes kπ/3)
        let g = CPoly::monomial(gr_int(3, 0), 2);
        let ac = axis_candidates(&g).unwrap();
        assert_eq!(
            ac,
            AxisCandidates::PurePower {
                modulus: 3,
                unit_rhs: gr_one()
            }
        );
        // g = z (n = 2): pure power, w² = 1 → axes {π/2, π}
        let g = CPoly::monomial(gr_one(), 1);
        let ac = axis_candidates(&g).unwrap();
        assert_eq!(
            ac,
            AxisCandidates::PurePower {
                modulus: 2,
                unit_rhs: gr_one()
            }
        );
        // non-centered input rejected
        let g = CPoly::new(vec![gr_int(0, 0), gr_int(1, 0), gr_int(1, 0)]);
        assert!(axis_candidates(&g).is_err());
    }

    #[test]
    fn center_equivariance_property() {
        // center(g of h∘τ) = τ⁻¹(center(g of h)) for rational translations
        let h = sextic().translate(&rat(3, 7), &rat(-2, 5));
        for (dx, dy) in [(rat(1, 2), rat(2, 3)), (rat(-5, 4), rat(7, 9))] {
            let moved = h.translate(&dx, &dy);
            let c0 = rotation_center(&associated_g(&h).unwrap()).unwrap();
            let c1 = rotation_center(&associated_g(&moved).unwrap()).unwrap();
            // h∘τ with τ(x) = x + d has center τ⁻¹(center) = center - d
            assert_eq!(c1, c0 - GaussRat::new(dx, dy));
        }
    }
}
