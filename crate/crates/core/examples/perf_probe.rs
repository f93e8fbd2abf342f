use std::time::Instant;
use symmetra_core::bipoly::{BiPoly, MapKind, PlaneMap};
use symmetra_core::scalars::*;
use symmetra_core::similarity::{similarities, SimilarityStatus};

fn dense_random(deg: u32, bits: u32, seed: u64) -> BiPoly {
    // deterministic LCG; coefficients up to 2^bits
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 11
    };
    let mut f = BiPoly::zero();
    for i in 0..=deg {
        for j in 0..=(deg - i) {
            let mag = (next() % (1u64 << bits.min(52))) as i64;
            let sign = if next() % 2 == 0 { 1 } else { -1 };
            f.add_term(i, j, rat_int(sign * mag));
        }
    }
    f
}

fn main() {
    for (deg, bits) in [(20u32, 52u32), (30, 6)] {
        let f1 = dense_random(deg, bits, 42 + deg as u64);
        let m = PlaneMap::new_exact(MapKind::Direct, gr_int(1, -2), gr_int(3, 1));
        let (rx, ry) = m.as_real_affine().unwrap();
        let f2 = f1.compose_affine(&rx, &ry);
        let t0 = Instant::now();
        let rep = similarities(&f1, &f2).unwrap();
        let dt = t0.elapsed();
        println!(
            "deg {} bits {}: {:?} entries {} in {:.3}s",
            deg,
            bits,
            matches!(rep.status, SimilarityStatus::Similar),
            rep.similarities.len(),
            dt.as_secs_f64()
        );
    }
}
