//! Oracles written independently of the library: a Fourier–Motzkin
//! feasibility check, a raw square census, and subset-enumeration
//! distances. They work on plain `i64` values indexed by bitmask.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `Σ coeffs[v]·x_v >= rhs`
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
}

/// Fourier–Motzkin over the rationals. Rows are keyed by their primitive
/// coefficient vector and only the tightest bound per key is kept.
fn fm_feasible(mut rows: Vec<Ineq>, vars: usize) -> bool {
    let mut alive = vec![true; vars];
    loop {
        let mut best: HashMap<Vec<BigInt>, (BigInt, BigInt)> = HashMap::new();
        for row in rows.drain(..) {
            if row.coeffs.iter().all(|c| c.is_zero()) {
                if row.rhs.is_positive() {
                    return false;
                }
                continue;
            }
            let g = row.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            let key: Vec<BigInt> = row.coeffs.iter().map(|c| c / &g).collect();
            // bound is rhs / g, compared as fractions with positive denominators
            match best.get(&key) {
                Some((num, den)) if &row.rhs * den <= num * &g => {}
                _ => {
                    best.insert(key, (row.rhs.clone(), g));
                }
            }
        }
        rows = best
            .into_iter()
            .map(|(key, (num, den))| {
                // scale back to integers: key·x >= num/den  <=>  den·key·x >= num
                Ineq {
                    coeffs: key.into_iter().map(|c| c * &den).collect(),
                    rhs: num,
                }
            })
            .collect();

        let pick = (0..vars)
            .filter(|&v| alive[v])
            .map(|v| {
                let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (pos * neg, v, pos + neg)
            })
            .min();
        let Some((_, v, _)) = pick else {
            return true;
        };
        alive[v] = false;
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows.drain(..) {
            if row.coeffs[v].is_positive() {
                pos.push(row);
            } else if row.coeffs[v].is_negative() {
                neg.push(row);
            } else {
                rest.push(row);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = p.coeffs[v].clone();
                let b = -q.coeffs[v].clone();
                let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x * &b + y * &a).collect();
                rest.push(Ineq {
                    coeffs,
                    rhs: &p.rhs * &b + &q.rhs * &a,
                });
            }
        }
        rows = rest;
    }
}

/// True iff the values on `defined` extend to a submodular function on
/// {0,1}^n, decided by Fourier–Motzkin elimination over the rationals.
pub fn fm_extendable(n: usize, defined: &BTreeMap<u32, i64>) -> bool {
    let size = 1u32 << n;
    let mut var_of = HashMap::new();
    for x in 0..size {
        if !defined.contains_key(&x) {
            let k = var_of.len();
            var_of.insert(x, k);
        }
    }
    let vars = var_of.len();
    let mut rows = Vec::new();
    for x in 0..size {
        for i in 0..n {
            for j in i + 1..n {
                if x >> i & 1 == 1 || x >> j & 1 == 1 {
                    continue;
                }
                let corners = [(x | 1 << i, 1), (x | 1 << j, 1), (x, -1), (x | 1 << i | 1 << j, -1)];
                let mut coeffs = vec![BigInt::zero(); vars];
                let mut rhs = BigInt::zero();
                for (p, sign) in corners {
                    match defined.get(&p) {
                        Some(&val) => rhs -= BigInt::from(sign * val),
                        None => coeffs[var_of[&p]] += sign,
                    }
                }
                rows.push(Ineq { coeffs, rhs });
            }
        }
    }
    fm_feasible(rows, vars)
}

/// Violated squares of `values` (indexed by bitmask), counted by nested
/// loops over bottoms and coordinate pairs.
pub fn raw_census(n: usize, values: &[i64]) -> u64 {
    let mut count = 0;
    for x in 0..1usize << n {
        for i in 0..n {
            for j in i + 1..n {
                if x >> i & 1 == 1 || x >> j & 1 == 1 {
                    continue;
                }
                let (xi, xj, xij) = (x | 1 << i, x | 1 << j, x | 1 << i | 1 << j);
                if values[x] + values[xij] > values[xi] + values[xj] {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Smallest number of points whose values can be released so that the
/// rest extends, found by trying every subset in order of size.
pub fn brute_distance_to_submodular(n: usize, values: &[i64]) -> usize {
    let size = 1usize << n;
    let mut masks: Vec<u64> = (0..1u64 << size).collect();
    masks.sort_by_key(|m| m.count_ones());
    for release in masks {
        let defined: BTreeMap<u32, i64> = (0..size)
            .filter(|&x| release >> x & 1 == 0)
            .map(|x| (x as u32, values[x]))
            .collect();
        if fm_extendable(n, &defined) {
            return release.count_ones() as usize;
        }
    }
    unreachable!("releasing every point always extends")
}

/// Smallest number of points to drop so that no comparable pair `x <= y`
/// with `f(x) < f(y)` survives.
pub fn brute_distance_to_monotone(n: usize, values: &[i64]) -> usize {
    let size = 1usize << n;
    let mut bad = Vec::new();
    for x in 0..size {
        for y in 0..size {
            if x != y && x & y == x && values[x] < values[y] {
                bad.push((x, y));
            }
        }
    }
    (0..=size)
        .find(|&k| {
            (0..1u64 << size)
                .filter(|m| m.count_ones() as usize == k)
                .any(|m| bad.iter().all(|&(x, y)| m >> x & 1 == 1 || m >> y & 1 == 1))
        })
        .expect("dropping every point leaves no pair")
}
