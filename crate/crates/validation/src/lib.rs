//! Reference computations for the acceptance suite, written without the
//! library's statistics or family code paths.

use equichroma::{FamilyId, FamilyKind, Rational};

/// Σ i·s_i/N and Σ i²·s_i/N − mean², summed directly from class sizes
/// listed largest first.
pub fn summed_moments(sizes: &[u64]) -> (Rational, Rational) {
    let total: u64 = sizes.iter().sum();
    let mut first = Rational::zero();
    let mut second = Rational::zero();
    for (i, &s) in sizes.iter().enumerate() {
        let i = i as u64 + 1;
        first = first + Rational::new(i * s, total);
        second = second + Rational::new(i * i * s, total);
    }
    let var = second - &first * &first;
    (first, var)
}

/// Class sizes, largest first, read off each family's case analysis.
pub fn proof_sizes(fid: FamilyId) -> Vec<usize> {
    let n = fid.n as usize;
    let even = n.is_multiple_of(2);
    let rep = |v: usize, times: usize| std::iter::repeat_n(v, times);
    match fid.kind {
        FamilyKind::Cycle if even => vec![n / 2, n / 2],
        FamilyKind::Cycle => {
            let (q, r) = (n / 3, n % 3);
            rep(q + 1, r).chain(rep(q, 3 - r)).collect()
        }
        FamilyKind::Wheel if even => rep(2, n / 2).chain([1]).collect(),
        FamilyKind::Wheel => rep(2, (n - 1) / 2).chain([1, 1]).collect(),
        FamilyKind::DoubleWheel | FamilyKind::Flower | FamilyKind::Blossom => rep(2, n).chain([1]).collect(),
        _ if even => [(n + 2) / 2].into_iter().chain(rep(n / 2, 3)).collect(),
        _ => rep(n.div_ceil(2), 3).chain([(n - 1) / 2]).collect(),
    }
}

/// (vertices, edges) of a family instance.
pub fn order_and_size(fid: FamilyId) -> (usize, usize) {
    let n = fid.n as usize;
    match fid.kind {
        FamilyKind::Cycle => (n, n),
        FamilyKind::Wheel => (n + 1, 2 * n),
        FamilyKind::Helm => (2 * n + 1, 3 * n),
        FamilyKind::DoubleWheel | FamilyKind::ClosedHelm | FamilyKind::Flower | FamilyKind::Sunflower => {
            (2 * n + 1, 4 * n)
        }
        FamilyKind::ClosedSunflower => (2 * n + 1, 5 * n),
        FamilyKind::Blossom => (2 * n + 1, 6 * n),
    }
}
