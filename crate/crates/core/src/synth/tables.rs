//! Block exponent tables, as exponents of `Q` with `q = p - 1`.
//!
//! Two controls: `[G1, G2, G3]`. Three controls: `[A, B, C, D, E, F, G]`.

use super::ModeName;
use crate::exponent::RationalExponent as R;

/// Deutsch-class exponents for the two-control structure.
pub fn two_control(mode: ModeName, p: u32) -> Option<[R; 3]> {
    let p = p as i64;
    let q = p - 1;
    let f = R::frac;
    use ModeName::*;
    Some(match mode {
        Deutsch2Conj => [f(1, p), f(q, p), f(-1, p)],
        Deutsch2Disj => [f(q, p), f(1, p), f(1, p)],
        Deutsch2MixedWb => [f(-1, p), f(1, p), f(1, p)],
        Deutsch2MixedBw => [f(q, p), f(-q, p), f(1, p)],
        Deutsch2Xdisj => [f(p - 2, p), f(2 - p, p), f(2, p)],
        // The degenerate disjunctive mixed-polarity gates collapse to one MS gate.
        Deutsch2DisjmixedA => [R::ONE, R::ZERO, R::ZERO],
        Deutsch2DisjmixedB => [R::ZERO, R::ONE, R::ZERO],
        _ => return None,
    })
}

/// Toffoli-class (integer) exponents for the two-control structure.
pub fn toffoli_two_control(mode: ModeName) -> Option<[R; 3]> {
    let (z, o) = (R::ZERO, R::ONE);
    match mode {
        ModeName::Toffoli2Conj => Some([o, z, o]),
        ModeName::Toffoli2Disj => Some([z, o, o]),
        _ => None,
    }
}

/// Deutsch-class exponents for the three-control structure.
pub fn three_control(mode: ModeName, p: u32) -> Option<[R; 7]> {
    let p = p as i64;
    let q = p - 1;
    let pp = p * p;
    let f = R::frac;
    let z = R::ZERO;
    use ModeName::*;
    Some(match mode {
        Conj3 => [f(1, pp), f(q, pp), f(q, p), f(-1, pp), z, z, f(-1, p)],
        Disj3 => [
            f(q * q, pp),
            f(q, pp),
            f(1, p),
            f(q, pp),
            f(1, p),
            f(1, p),
            f(-1, p),
        ],
        Case1 => [f(-1, pp), f(1, pp), z, f(1, pp), z, f(-1, p), f(1, p)],
        Case2 => [f(q, pp), f(-q, pp), z, f(1, pp), f(-1, p), z, f(1, p)],
        Case3 => [f(q, pp), f(q * q, pp), f(-q, p), f(-q, pp), z, z, f(1, p)],
        Case4 => [
            f(1 - p, pp),
            f(-1, pp),
            f(1, p),
            f(-1, pp),
            f(1, p),
            f(1, p),
            f(-1, p),
        ],
        Case5 => [f(1 - p, pp), f(q, pp), z, f(q, pp), z, f(1, p), f(-1, p)],
        Case6 => [
            f(q * q, pp),
            f(-q * q, pp),
            z,
            f(q, pp),
            f(1, p),
            z,
            f(-1, p),
        ],
        Case7 => [
            f(2 * p - 3, pp),
            f(pp - 3 * p + 3, pp),
            f(1 - p, p),
            f(3 - p, pp),
            f(-1, p),
            f(-1, p),
            f(3, p),
        ],
        Case8 => [
            f(pp - 4 * p + 3, pp),
            f(-(pp - 3 * p + 3), pp),
            f(1, p),
            f(2 * p - 3, pp),
            f(2, p),
            f(2, p),
            f(-3, p),
        ],
        _ => return None,
    })
}

/// Toffoli-class blocks for the three-control structure: `true` means the
/// block realizes `Q`, `false` means identity (block omitted).
///
/// Case 8 uses `{B, C, D, G}`. The mod-2 row system of the abstract behavior
/// table has this as its only solution for the Case 8 mask; the complementary
/// `{A, E, F}` activates on rows 2, 5, 6, 7 instead of rows 1, 2, 3.
pub fn toffoli_three_control(mode: ModeName) -> Option<[bool; 7]> {
    use ModeName::*;
    let on = |labels: &str| {
        let mut out = [false; 7];
        for ch in labels.chars() {
            out[(ch as u8 - b'A') as usize] = true;
        }
        out
    };
    Some(match mode {
        Conj3 => on("ADG"),
        Disj3 => on("CEFG"),
        Case1 => on("ABDFG"),
        Case2 => on("DEG"),
        Case3 => on("G"),
        Case4 => on("BCDEFG"),
        Case5 => on("FG"),
        Case6 => on("EG"),
        Case7 => on("ABEFG"),
        Case8 => on("BCDG"),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn denominators_divide_p_or_p_squared() {
        for p in [3u32, 5, 7, 11, 13] {
            let p64 = p as i64;
            for m in ModeName::ALL {
                if let Some(t) = two_control(m, p) {
                    assert!(t.iter().all(|e| e.denom_divides(p64)), "{m} p={p}");
                }
                if let Some(t) = three_control(m, p) {
                    assert!(t.iter().all(|e| e.denom_divides(p64 * p64)), "{m} p={p}");
                }
            }
        }
    }

    #[test]
    fn anchor_values() {
        let conj = three_control(ModeName::Conj3, 5).unwrap();
        assert_eq!(conj[6], R::frac(-1, 5));
        let c7 = three_control(ModeName::Case7, 5).unwrap();
        assert_eq!(c7[6], R::frac(3, 5));
        assert_eq!(c7[1], R::frac(13, 25));
    }
}
