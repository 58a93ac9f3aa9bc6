//! The catalog of abelian groups up to isomorphism.

use crate::group::GroupSpec;

/// All isomorphism types of abelian groups of order 2..=order_max, each in
/// prime-power form: primes ascending, and within one prime the power
/// partition listed largest-part-first ([Z8], [Z2xZ4], [Z2xZ2xZ2]), with the
/// factors of one partition ascending. Orders below 2 yield an empty list.
pub fn group_catalog(order_max: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 2..=order_max.max(1) {
        let factors = factorize(n);
        let mut per_prime: Vec<Vec<Vec<usize>>> = Vec::new();
        for &(p, a) in &factors {
            let mut choices = Vec::new();
            for parts in partitions(a) {
                // parts is non-increasing; ascending prime powers.
                let mut powers: Vec<usize> = parts.iter().rev().map(|&e| p.pow(e as u32)).collect();
                powers.shrink_to_fit();
                choices.push(std::mem::take(&mut powers));
            }
            per_prime.push(choices);
        }
        let mut moduli = Vec::new();
        combine(&per_prime, 0, &mut moduli, &mut out);
    }
    out
}

fn combine(
    per_prime: &[Vec<Vec<usize>>],
    at: usize,
    moduli: &mut Vec<usize>,
    out: &mut Vec<GroupSpec>,
) {
    if at == per_prime.len() {
        out.push(GroupSpec::from_moduli(moduli).expect("catalog orders stay in range"));
        return;
    }
    for choice in &per_prime[at] {
        let before = moduli.len();
        moduli.extend_from_slice(choice);
        combine(per_prime, at + 1, moduli, out);
        moduli.truncate(before);
    }
}

fn factorize(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `a` as non-increasing part lists, largest first:
/// 3 -> [3], [2,1], [1,1,1].
fn partitions(a: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(a, a, &mut cur, &mut out);
    out
}

fn fill(left: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (1..=left.min(max_part)).rev() {
        cur.push(part);
        fill(left - part, part, cur, out);
        cur.pop();
    }
}
