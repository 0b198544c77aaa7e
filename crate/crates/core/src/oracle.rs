//! Exhaustive χₑ oracle for small graphs.
//!
//! Deliberately naive: every colouring is enumerated as a restricted growth
//! string (colour `i` may first appear only after colours `0..i`), and each
//! complete string is tested for properness, equitability and colour count.
//! Nothing here is shared with the branch-and-bound search.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{self, Execution};

/// Largest vertex count the oracle accepts.
pub const ORACLE_BUDGET: usize = 13;

const SPLIT_DEPTH: usize = 5;

pub fn brute_force_chi_e(g: &Graph, exec: Execution) -> Result<usize> {
    let n = g.n_vertices();
    if n > ORACLE_BUDGET {
        return Err(Error::OverBudget { n_vertices: n, budget: ORACLE_BUDGET });
    }
    if n == 0 {
        return Err(Error::input("cannot colour an empty graph"));
    }
    for k in 1..=n {
        if exists_equitable(g, k, exec) {
            return Ok(k);
        }
    }
    unreachable!("n singleton classes always form an equitable colouring")
}

fn exists_equitable(g: &Graph, k: usize, exec: Execution) -> bool {
    let n = g.n_vertices();
    let depth = n.min(SPLIT_DEPTH);
    let mut prefixes = Vec::new();
    rgs_prefixes(&mut vec![0; depth], 0, 0, k, &mut prefixes);
    par::any(exec, &prefixes, |prefix| completions_contain_equitable(g, k, prefix))
}

fn rgs_prefixes(buf: &mut Vec<usize>, pos: usize, used: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    if pos == buf.len() {
        out.push(buf.clone());
        return;
    }
    for c in 0..(used + 1).min(k) {
        buf[pos] = c;
        rgs_prefixes(buf, pos + 1, used.max(c + 1), k, out);
    }
}

fn completions_contain_equitable(g: &Graph, k: usize, prefix: &[usize]) -> bool {
    for_each_completion(g.n_vertices(), k, prefix, |a, used| is_equitable_k_coloring(g, k, a, used))
}

/// Visits every restricted growth string of length `n` over at most `k`
/// colours that extends `prefix`, stopping early once `visit` returns true.
fn for_each_completion(n: usize, k: usize, prefix: &[usize], mut visit: impl FnMut(&[usize], usize) -> bool) -> bool {
    let p = prefix.len();
    let mut a = vec![0usize; n];
    a[..p].copy_from_slice(prefix);
    // used[i] = number of distinct colours among a[..i]
    let mut used = vec![0usize; n + 1];
    let refresh = |a: &[usize], used: &mut [usize], from: usize| {
        for i in from..n {
            used[i + 1] = used[i].max(a[i] + 1);
        }
    };
    refresh(&a, &mut used, 0);

    loop {
        if visit(&a, used[n]) {
            return true;
        }
        let mut i = n;
        loop {
            if i == p {
                return false;
            }
            i -= 1;
            if a[i] + 1 < (used[i] + 1).min(k) {
                a[i] += 1;
                a[i + 1..].iter_mut().for_each(|x| *x = 0);
                refresh(&a, &mut used, i);
                break;
            }
        }
    }
}

fn is_equitable_k_coloring(g: &Graph, k: usize, a: &[usize], used: usize) -> bool {
    if used != k {
        return false;
    }
    if g.edges().iter().any(|&(u, v)| a[u] == a[v]) {
        return false;
    }
    let mut counts = vec![0usize; k];
    for &c in a {
        counts[c] += 1;
    }
    let max = *counts.iter().max().unwrap();
    let min = *counts.iter().min().unwrap();
    max - min <= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilyId, FamilyKind};
    use crate::graph::cycle;

    fn count_rgs(n: usize, k: usize) -> usize {
        let mut prefixes = Vec::new();
        rgs_prefixes(&mut vec![0; n.min(SPLIT_DEPTH)], 0, 0, k, &mut prefixes);
        let mut total = 0;
        for prefix in &prefixes {
            for_each_completion(n, k, prefix, |_, _| {
                total += 1;
                false
            });
        }
        total
    }

    #[test]
    fn enumerates_every_set_partition() {
        // Bell numbers B(6) = 203, B(7) = 877
        assert_eq!(count_rgs(6, 6), 203);
        assert_eq!(count_rgs(7, 7), 877);
        // S(7,1) + S(7,2) = 1 + 63
        assert_eq!(count_rgs(7, 2), 64);
    }

    #[test]
    fn small_cycles_and_wheels() {
        assert_eq!(brute_force_chi_e(&cycle(4), Execution::Sequential).unwrap(), 2);
        assert_eq!(brute_force_chi_e(&cycle(5), Execution::Sequential).unwrap(), 3);
        assert_eq!(brute_force_chi_e(&cycle(3), Execution::Parallel).unwrap(), 3);
        let w8 = generate(FamilyId::new(FamilyKind::Wheel, 8).unwrap()).unwrap();
        assert_eq!(brute_force_chi_e(&w8, Execution::Parallel).unwrap(), 5);
    }

    #[test]
    fn refuses_large_graphs() {
        let g = cycle(14);
        assert!(matches!(
            brute_force_chi_e(&g, Execution::Sequential),
            Err(Error::OverBudget { n_vertices: 14, budget: 13 })
        ));
    }
}
