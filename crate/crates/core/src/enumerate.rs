//! Internal enumeration kernels: Gray-code walks over edge subsets and edge
//! orientations with O(1) incremental degree maintenance, plus the
//! denominator-clearing step that lets the inner loops run over Gaussian
//! *integers* (no gcd reductions) and divide back out once at the end.

use crate::exact::{GaussianRational, Rational};
use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::One;

/// Complex number with big-integer parts — the working scalar of the hot
/// loops.
pub(crate) type GaussInt = Complex<BigInt>;

/// Scales `values` by the least common denominator `D` of all real and
/// imaginary parts, returning the Gaussian-integer images and `D`.
pub(crate) fn clear_denominators(values: &[GaussianRational]) -> (Vec<GaussInt>, BigInt) {
    let mut den = BigInt::one();
    for v in values {
        den = den.lcm(v.re.denom());
        den = den.lcm(v.im.denom());
    }
    let scale = |r: &Rational| -> BigInt { r.numer() * (&den / r.denom()) };
    let scaled = values
        .iter()
        .map(|v| Complex::new(scale(&v.re), scale(&v.im)))
        .collect();
    (scaled, den)
}

/// Divides a Gaussian integer by a (positive) big integer, exactly.
pub(crate) fn divide_gauss(sum: &GaussInt, den: &BigInt) -> GaussianRational {
    Complex::new(
        Rational::new(sum.re.clone(), den.clone()),
        Rational::new(sum.im.clone(), den.clone()),
    )
}

/// The Gray code of `i`: consecutive codes differ in exactly the bit
/// `trailing_zeros(i + 1)`.
pub(crate) fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Splits `0..total` into at most `workers` contiguous blocks, runs `kernel`
/// on each (on scoped threads when `workers > 1`), and folds the partial
/// results **in block order**, so the outcome is independent of scheduling.
pub(crate) fn run_blocks<R, K, F>(total: u64, workers: usize, kernel: K, fold: F) -> Option<R>
where
    R: Send,
    K: Fn(u64, u64) -> R + Sync,
    F: Fn(R, R) -> R,
{
    let workers = workers.clamp(1, 64).min(usize::try_from(total).unwrap_or(usize::MAX)).max(1);
    if total == 0 {
        return None;
    }
    if workers == 1 {
        return Some(kernel(0, total));
    }
    let block = total.div_ceil(workers as u64);
    let bounds: Vec<(u64, u64)> = (0..workers as u64)
        .map(|w| (w * block, ((w + 1) * block).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    let kernel = &kernel;
    let parts = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(lo, hi)| scope.spawn(move || kernel(lo, hi)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect::<Vec<_>>()
    });
    parts.into_iter().reduce(fold)
}

/// Walks masks `gray(lo), …, gray(hi-1)`, threading caller state through:
/// `init` builds the state for the first mask, `toggle(state, edge, set)`
/// is called once per step with the single bit that changed, and
/// `visit(state)` fires for every mask in the range (including the first).
/// Returns the final state.
pub(crate) fn walk<S>(
    m: usize,
    lo: u64,
    hi: u64,
    init: impl FnOnce(u64) -> S,
    mut toggle: impl FnMut(&mut S, usize, bool),
    mut visit: impl FnMut(&mut S),
) -> S {
    debug_assert!(lo < hi);
    let start = gray(lo);
    let mut state = init(start);
    let mut mask = start;
    let mut i = lo;
    loop {
        visit(&mut state);
        i += 1;
        if i == hi {
            break;
        }
        let edge = i.trailing_zeros() as usize;
        debug_assert!(edge < m);
        let bit = 1u64 << edge;
        mask ^= bit;
        toggle(&mut state, edge, mask & bit != 0);
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gauss, rational};

    #[test]
    fn gray_codes_differ_in_one_bit() {
        for i in 0..1000u64 {
            let diff = gray(i) ^ gray(i + 1);
            assert!(diff.is_power_of_two());
            assert_eq!(diff, 1 << (i + 1).trailing_zeros());
        }
    }

    #[test]
    fn gray_code_is_a_bijection_on_small_ranges() {
        let mut seen = vec![false; 256];
        for i in 0..256u64 {
            let code = gray(i) as usize;
            assert!(!seen[code]);
            seen[code] = true;
        }
    }

    #[test]
    fn clearing_denominators_scales_exactly() {
        let values = vec![
            gauss(rational(1, 6), rational(-2, 15)),
            gauss(rational(3, 1), rational(1, 10)),
        ];
        let (scaled, den) = clear_denominators(&values);
        assert_eq!(den, BigInt::from(30));
        assert_eq!(scaled[0], Complex::new(BigInt::from(5), BigInt::from(-4)));
        assert_eq!(scaled[1], Complex::new(BigInt::from(90), BigInt::from(3)));
        for (orig, item) in values.iter().zip(&scaled) {
            assert_eq!(&divide_gauss(item, &den), orig);
        }
    }

    #[test]
    fn walk_visits_every_mask_once_toggling_one_bit_per_step() {
        let (mask, seen) = walk(
            4,
            0,
            16,
            |start| (start, vec![false; 16]),
            |state, edge, set| {
                let bit = 1u64 << edge;
                assert_eq!(state.0 & bit == 0, set, "toggle reports the new bit value");
                state.0 ^= bit;
            },
            |state| {
                assert!(!state.1[state.0 as usize], "mask repeated");
                state.1[state.0 as usize] = true;
            },
        );
        assert_eq!(mask, gray(15));
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn split_walks_cover_the_same_masks_as_one_walk() {
        let collect = |lo, hi| {
            walk(
                5,
                lo,
                hi,
                |start| (start, Vec::new()),
                |state, edge, _| state.0 ^= 1u64 << edge,
                |state| state.1.push(state.0),
            )
            .1
        };
        let mut whole = collect(0, 32);
        let mut parts = collect(0, 13);
        parts.extend(collect(13, 32));
        whole.sort_unstable();
        parts.sort_unstable();
        assert_eq!(whole, parts);
    }

    #[test]
    fn blocked_reduction_matches_single_block() {
        let kernel = |lo: u64, hi: u64| (lo..hi).map(gray).sum::<u64>();
        let single = run_blocks(1 << 10, 1, kernel, |a, b| a + b).unwrap();
        for workers in [2, 3, 7] {
            assert_eq!(run_blocks(1 << 10, workers, kernel, |a, b| a + b).unwrap(), single);
        }
        assert_eq!(run_blocks(0, 4, kernel, |a, b| a + b), None);
    }
}
