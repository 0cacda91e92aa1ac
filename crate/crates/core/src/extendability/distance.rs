//! Exact distance oracles for small dimensions.
//!
//! Distance to submodularity is computed as an implicit hitting-set
//! problem. A *core* is a set of points whose values alone cannot be
//! extended, so every repair must change at least one of them. Violated
//! squares give the first cores. Each round picks a minimum set hitting
//! all known cores and releases those points; if the rest extends, that
//! set is optimal, otherwise the Farkas multipliers name a new core.

use std::collections::BTreeSet;

use super::{extension_system, solve_feasibility, FeasibilityResult};
use crate::error::{Error, Result};
use crate::functions::{PartialFunction, TotalFunction};
use crate::hypercube::all_squares;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    /// The distance is larger than the budget.
    ExceedsBudget {
        budget: usize,
    },
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::ExceedsBudget { .. } => None,
        }
    }
}

/// Minimum number of values to change to make `f` submodular. `budget`
/// caps the distance searched (default 2^n, which is complete).
pub fn distance_to_submodular<T: Field>(f: &TotalFunction<T>, budget: Option<usize>) -> Result<Distance> {
    let n = f.dim();
    let budget = budget.unwrap_or(1 << n);
    if n < 2 {
        return Ok(Distance::Exact(0));
    }
    let mut cores: Vec<Vec<usize>> = all_squares(n)?
        .filter(|sq| f.is_violated(sq).unwrap_or(false))
        .map(|sq| {
            let mut c: Vec<usize> = sq.corners().iter().map(|p| p.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    loop {
        let Some(released) = min_hitting_set(&cores, budget) else {
            return Ok(Distance::ExceedsBudget { budget });
        };
        let kept = keep_all_but(f, &released)?;
        let sys = extension_system(&kept)?;
        match solve_feasibility(&sys)? {
            FeasibilityResult::Feasible { .. } => return Ok(Distance::Exact(released.len())),
            FeasibilityResult::Infeasible { farkas } => {
                let mut core = BTreeSet::new();
                for (k, _) in &farkas {
                    for p in sys.constraints()[*k].square.corners() {
                        if kept.is_defined(p) {
                            core.insert(p.index());
                        }
                    }
                }
                let core: Vec<usize> = core.into_iter().collect();
                if core.iter().any(|p| released.contains(p)) {
                    return Err(Error::Internal("core meets the released points".into()));
                }
                cores.push(core);
            }
        }
    }
}

fn keep_all_but<T: Scalar>(f: &TotalFunction<T>, released: &[usize]) -> Result<PartialFunction<T>> {
    let n = f.dim();
    let out: BTreeSet<usize> = released.iter().copied().collect();
    PartialFunction::from_pairs(
        n,
        f.points()
            .filter(|p| !out.contains(&p.index()))
            .map(|p| (p, f.value(p).clone())),
    )
}

/// Minimum set meeting every set in `sets`, if one of size at most `cap`
/// exists. Ties go to the lexicographically first search branch.
fn min_hitting_set(sets: &[Vec<usize>], cap: usize) -> Option<Vec<usize>> {
    struct Search<'a> {
        sets: &'a [Vec<usize>],
        best: Option<Vec<usize>>,
        limit: usize,
    }

    impl Search<'_> {
        /// Disjoint unhit sets need distinct elements each.
        fn lower_bound(&self, chosen: &[usize], banned: &[usize]) -> usize {
            let mut used: BTreeSet<usize> = BTreeSet::new();
            let mut bound = 0;
            for s in self.sets {
                if s.iter().any(|e| chosen.contains(e)) {
                    continue;
                }
                if s.iter().all(|e| !used.contains(e)) {
                    bound += 1;
                    used.extend(s.iter().filter(|e| !banned.contains(e)));
                }
            }
            bound
        }

        fn run(&mut self, chosen: &mut Vec<usize>, banned: &mut Vec<usize>) {
            if chosen.len() + self.lower_bound(chosen, banned) > self.limit {
                return;
            }
            let open = self
                .sets
                .iter()
                .filter(|s| !s.iter().any(|e| chosen.contains(e)))
                .map(|s| s.iter().filter(|e| !banned.contains(e)).copied().collect::<Vec<_>>())
                .min_by_key(|s| s.len());
            let Some(branch) = open else {
                self.limit = chosen.len().saturating_sub(1);
                self.best = Some(chosen.clone());
                return;
            };
            let mark = banned.len();
            for e in branch {
                chosen.push(e);
                self.run(chosen, banned);
                chosen.pop();
                banned.push(e);
            }
            banned.truncate(mark);
        }
    }

    let mut search = Search {
        sets,
        best: None,
        limit: cap,
    };
    search.run(&mut Vec::new(), &mut Vec::new());
    search.best.map(|mut b| {
        b.sort_unstable();
        b
    })
}

/// Minimum number of values to change to make `f` monotonically
/// non-increasing: a minimum vertex cover of the graph joining `x < y`
/// whenever `f(x) < f(y)`. `budget` caps the distance searched.
pub fn distance_to_monotone<T: Scalar>(f: &TotalFunction<T>, budget: Option<usize>) -> Result<Distance> {
    let n = f.dim();
    let budget = budget.unwrap_or(1 << n);
    let size = 1usize << n;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); size];
    for x in 0..size {
        // strict supersets y of x
        let free = !x & (size - 1);
        let mut sub = free;
        while sub != 0 {
            let y = x | sub;
            if f.values()[x] < f.values()[y] {
                adjacency[x].push(y);
                adjacency[y].push(x);
            }
            sub = (sub - 1) & free;
        }
    }
    let edges: Vec<(usize, usize)> = (0..size)
        .flat_map(|x| adjacency[x].iter().filter(move |&&y| y > x).map(move |&y| (x, y)))
        .collect();
    Ok(match min_vertex_cover(size, &edges, budget) {
        Some(k) => Distance::Exact(k),
        None => Distance::ExceedsBudget { budget },
    })
}

/// Size of a minimum vertex cover, if at most `cap`.
fn min_vertex_cover(vertices: usize, edges: &[(usize, usize)], cap: usize) -> Option<usize> {
    fn run(edges: &[(usize, usize)], vertices: usize, taken: usize, limit: &mut usize, best: &mut Option<usize>) {
        if edges.is_empty() {
            if taken <= *limit {
                *best = Some(taken);
                *limit = taken.saturating_sub(1);
            }
            return;
        }
        // a greedy maximal matching bounds the remaining cover from below
        let mut matched = vec![false; vertices];
        let mut bound = 0;
        for &(a, b) in edges {
            if !matched[a] && !matched[b] {
                matched[a] = true;
                matched[b] = true;
                bound += 1;
            }
        }
        if taken + bound > *limit {
            return;
        }
        let mut degree = vec![0usize; vertices];
        for &(a, b) in edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let v = (0..vertices)
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
            .unwrap();
        // take v
        let without_v: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
        run(&without_v, vertices, taken + 1, limit, best);
        // or take all of its neighbours
        if degree[v] > 1 {
            let neighbours: BTreeSet<usize> = edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            let rest: Vec<(usize, usize)> = edges
                .iter()
                .copied()
                .filter(|(a, b)| !neighbours.contains(a) && !neighbours.contains(b))
                .collect();
            run(&rest, vertices, taken + neighbours.len(), limit, best);
        }
    }

    let mut limit = cap;
    let mut best = None;
    run(edges, vertices, 0, &mut limit, &mut best);
    best
}

/// The smallest non-increasing function agreeing with `pf`, if any:
/// `g(z) = max{ pf(y) : y >= z defined }`, or the least defined value
/// where no defined point lies above `z`.
pub fn nonincreasing_extension<T: Scalar>(pf: &PartialFunction<T>) -> Option<TotalFunction<T>> {
    let floor = pf.iter().map(|(_, v)| v.clone()).min()?;
    let g = TotalFunction::from_fn(pf.dim(), |z| {
        pf.iter()
            .filter(|(y, _)| z.le(*y))
            .map(|(_, v)| v.clone())
            .max()
            .unwrap_or_else(|| floor.clone())
    })
    .ok()?;
    let agrees = pf.iter().all(|(y, v)| g.value(y) == v);
    (agrees && g.is_monotone_nonincreasing()).then_some(g)
}
