use crate::error::{Error, Result};
use crate::functions::PartialFunction;
use crate::hypercube::{edge_precedes, same_dim, Direction, Edge, Point};
use crate::scalar::Scalar;

/// Edge `edge` (0-based) of path `path` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub path: usize,
    pub edge: usize,
}

/// Directed walks plus an optional pairing of upward with downward edges.
/// A walk whose last point equals its first is a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCertificate {
    pub dim: usize,
    pub paths: Vec<Vec<Point>>,
    /// `(upward, downward)` pairs.
    pub matching: Option<Vec<(EdgeRef, EdgeRef)>>,
}

impl PathCertificate {
    /// The edges of every walk, checking adjacency and dimensions.
    pub fn edges(&self) -> Result<Vec<Vec<Edge>>> {
        self.paths
            .iter()
            .enumerate()
            .map(|(i, walk)| {
                if walk.len() < 2 {
                    return Err(Error::MalformedWalk(format!("path {i} has fewer than two points")));
                }
                walk.windows(2)
                    .map(|w| {
                        same_dim(self.dim, w[0].dim())?;
                        same_dim(self.dim, w[1].dim())?;
                        Edge::between(w[0], w[1]).map_err(|_| {
                            Error::MalformedWalk(format!("path {i}: {} and {} are not adjacent", w[0], w[1]))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    fn is_cycle(walk: &[Point]) -> bool {
        walk.first() == walk.last()
    }

    /// Σ over non-cycle walks of f(end) − f(start).
    pub fn value<T: Scalar>(&self, pf: &PartialFunction<T>) -> Result<T> {
        same_dim(self.dim, pf.dim())?;
        let mut total = T::zero();
        for (i, walk) in self.paths.iter().enumerate() {
            if walk.is_empty() {
                return Err(Error::MalformedWalk(format!("path {i} is empty")));
            }
            if Self::is_cycle(walk) {
                continue;
            }
            let (start, end) = (walk[0], walk[walk.len() - 1]);
            let value_at = |p: Point| {
                pf.get(p)
                    .cloned()
                    .ok_or_else(|| Error::Undefined(format!("path {i} endpoint {p} is not defined")))
            };
            total = total + value_at(end)? - value_at(start)?;
        }
        Ok(total)
    }
}

/// Outcome of checking a certificate against a partial function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck<T> {
    pub value: T,
    /// The declared matching if valid, else one found by augmenting paths.
    pub matching: Option<Vec<(EdgeRef, EdgeRef)>>,
}

impl<T: Scalar> CertificateCheck<T> {
    pub fn is_valid(&self) -> bool {
        self.matching.is_some() && self.value.is_negative()
    }
}

/// Full check: walks, endpoints, value and a perfect matching of upward
/// onto downward edges under `edge_precedes`. A declared matching that
/// fails re-verification falls back to computing one.
pub fn check_path_certificate<T: Scalar>(
    pf: &PartialFunction<T>,
    cert: &PathCertificate,
) -> Result<CertificateCheck<T>> {
    let edges = cert.edges()?;
    let value = cert.value(pf)?;
    let mut up = Vec::new();
    let mut down = Vec::new();
    for (p, walk) in edges.iter().enumerate() {
        for (e, edge) in walk.iter().enumerate() {
            let r = EdgeRef { path: p, edge: e };
            match edge.direction {
                Direction::Up => up.push((r, *edge)),
                Direction::Down => down.push((r, *edge)),
            }
        }
    }
    let matching = match &cert.matching {
        Some(declared) if declared_is_valid(declared, &edges, &up, &down) => Some(declared.clone()),
        _ => find_matching(&up, &down),
    };
    Ok(CertificateCheck { value, matching })
}

/// True iff the certificate is matched and has negative value.
pub fn verify_path_certificate<T: Scalar>(pf: &PartialFunction<T>, cert: &PathCertificate) -> Result<bool> {
    Ok(check_path_certificate(pf, cert)?.is_valid())
}

fn declared_is_valid(
    declared: &[(EdgeRef, EdgeRef)],
    edges: &[Vec<Edge>],
    up: &[(EdgeRef, Edge)],
    down: &[(EdgeRef, Edge)],
) -> bool {
    if declared.len() != up.len() || up.len() != down.len() {
        return false;
    }
    let lookup = |r: &EdgeRef| edges.get(r.path).and_then(|w| w.get(r.edge)).copied();
    let mut seen_up = std::collections::HashSet::new();
    let mut seen_down = std::collections::HashSet::new();
    declared.iter().all(|(u, d)| {
        let (Some(eu), Some(ed)) = (lookup(u), lookup(d)) else {
            return false;
        };
        eu.direction == Direction::Up
            && ed.direction == Direction::Down
            && seen_up.insert(*u)
            && seen_down.insert(*d)
            && edge_precedes(&eu, &ed).unwrap_or(false)
    })
}

/// Perfect matching of `up` onto `down` by augmenting paths.
fn find_matching(up: &[(EdgeRef, Edge)], down: &[(EdgeRef, Edge)]) -> Option<Vec<(EdgeRef, EdgeRef)>> {
    if up.len() != down.len() {
        return None;
    }
    let links: Vec<Vec<usize>> = up
        .iter()
        .map(|(_, eu)| {
            (0..down.len())
                .filter(|&d| edge_precedes(eu, &down[d].1).unwrap_or(false))
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; down.len()];

    fn augment(u: usize, links: &[Vec<usize>], owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
        for &d in &links[u] {
            if visited[d] {
                continue;
            }
            visited[d] = true;
            if owner[d].is_none_or(|other| augment(other, links, owner, visited)) {
                owner[d] = Some(u);
                return true;
            }
        }
        false
    }

    for u in 0..up.len() {
        let mut visited = vec![false; down.len()];
        if !augment(u, &links, &mut owner, &mut visited) {
            return None;
        }
    }
    let mut pairs: Vec<(EdgeRef, EdgeRef)> = owner
        .iter()
        .enumerate()
        .map(|(d, u)| (up[u.unwrap()].0, down[d].0))
        .collect();
    pairs.sort();
    Some(pairs)
}
