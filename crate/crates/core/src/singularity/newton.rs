//! Kouchnirenko's formula for convenient Newton diagrams.
//!
//! `μ = Σ_{k=0}^{N} (-1)^{N-k} k! V_k`, where `V_k` is the sum over all
//! `k`-dimensional coordinate subspaces of the volume of the region below the
//! Newton diagram, and `V_0 = 1`.
//!
//! The region below a convenient diagram is the union of the pyramids
//! `conv(0, F)` over the compact facets `F` of the Newton polyhedron. Facets
//! are found by brute force over point subsets, and each facet is triangulated
//! by coning from one of its points; everything is exact.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{det, solve};
use crate::rat::{factorial, int, Rat};

/// Validates that the point set meets every coordinate axis.
pub fn check_convenient(points: &[Vec<u32>], nvars: usize) -> Result<()> {
    if nvars == 0 {
        return Err(Error::InvalidGerm("Newton diagram in zero variables".into()));
    }
    for p in points {
        if p.len() != nvars {
            return Err(Error::InvalidGerm("vertex dimension mismatch".into()));
        }
    }
    for i in 0..nvars {
        let hit = points
            .iter()
            .any(|p| p[i] >= 1 && p.iter().enumerate().all(|(j, &e)| j == i || e == 0));
        if !hit {
            return Err(Error::InvalidGerm(format!(
                "Newton diagram does not meet coordinate axis {i}"
            )));
        }
    }
    Ok(())
}

/// Milnor number of a Newton-nondegenerate germ with the given convenient diagram.
pub fn kouchnirenko_milnor(points: &[Vec<u32>]) -> Result<i64> {
    let n = points.first().map(Vec::len).unwrap_or(0);
    check_convenient(points, n)?;
    let mut mu = Rat::zero();
    for k in 0..=n {
        let vk = coordinate_volume_sum(points, n, k);
        let term = vk * Rat::from_integer(factorial(k));
        if (n - k) % 2 == 0 {
            mu += term;
        } else {
            mu -= term;
        }
    }
    if !mu.is_integer() || mu.is_negative() {
        return Err(Error::Invariant(format!("Kouchnirenko number {mu} is not a natural number")));
    }
    Ok(mu.to_integer().try_into().expect("small Milnor number"))
}

/// `V_k`: summed volumes below the diagram over all `k`-element coordinate subsets.
pub fn coordinate_volume_sum(points: &[Vec<u32>], n: usize, k: usize) -> Rat {
    if k == 0 {
        return int(1);
    }
    subsets(n, k)
        .into_iter()
        .map(|coords| {
            let restricted: BTreeSet<Vec<Rat>> = points
                .iter()
                .filter(|p| p.iter().enumerate().all(|(j, &e)| coords.contains(&j) || e == 0))
                .map(|p| coords.iter().map(|&j| int(p[j] as i64)).collect())
                .collect();
            volume_below(&restricted.into_iter().collect::<Vec<_>>())
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Volume of `{x ≥ 0} \ Γ₊` for a convenient point set in `Q^k`.
pub fn volume_below(points: &[Vec<Rat>]) -> Rat {
    let k = points[0].len();
    if k == 1 {
        return points.iter().map(|p| p[0].clone()).filter(|v| v.is_positive()).min().unwrap_or_else(Rat::zero);
    }
    let mut facets: BTreeMap<Vec<Rat>, Vec<usize>> = BTreeMap::new();
    for subset in subsets(points.len(), k) {
        let a: Vec<Vec<Rat>> = subset.iter().map(|&i| points[i].clone()).collect();
        let Some(normal) = solve(a, vec![int(1); k]) else { continue };
        if normal.iter().any(|c| !c.is_positive()) {
            continue;
        }
        let value = |p: &Vec<Rat>| -> Rat { p.iter().zip(&normal).map(|(x, a)| x * a).sum() };
        if points.iter().any(|p| value(p) < int(1)) {
            continue;
        }
        let on: Vec<usize> = (0..points.len()).filter(|&i| value(&points[i]) == int(1)).collect();
        facets.insert(normal, on);
    }
    let kfact = Rat::from_integer(factorial(k));
    let mut vol = Rat::zero();
    for on in facets.values() {
        let pts: Vec<Vec<Rat>> = on.iter().map(|&i| points[i].clone()).collect();
        for simplex in triangulate(&pts) {
            vol += det(simplex).abs() / &kfact;
        }
    }
    vol
}

/// Triangulates `conv(points)` into simplices of its affine dimension.
/// Each simplex is returned as its list of vertices.
fn triangulate(points: &[Vec<Rat>]) -> Vec<Vec<Vec<Rat>>> {
    let coords = affine_coordinates(points);
    let d = coords.first().map(Vec::len).unwrap_or(0);
    if d == 0 {
        return vec![vec![points[0].clone()]];
    }
    let apex = 0usize;
    let mut out = Vec::new();
    for facet in facets_in_hull(&coords) {
        if facet.contains(&apex) || on_hyperplane(&coords, &facet, apex) {
            continue;
        }
        let sub: Vec<Vec<Rat>> = facet.iter().map(|&i| points[i].clone()).collect();
        for mut s in triangulate(&sub) {
            s.push(points[apex].clone());
            out.push(s);
        }
    }
    out
}

/// Coordinates of the points in an affine basis of their hull (`p_0` is the origin).
fn affine_coordinates(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let p0 = &points[0];
    let diffs: Vec<Vec<Rat>> = points.iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    // Greedy basis of the difference vectors together with pivot columns.
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    let mut reduced: Vec<(usize, Vec<Rat>)> = Vec::new();
    for v in &diffs {
        let mut r = v.clone();
        for (col, b) in &reduced {
            if !r[*col].is_zero() {
                let f = &r[*col] / &b[*col];
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(col) = r.iter().position(|x| !x.is_zero()) {
            reduced.push((col, r));
            basis.push(v.clone());
        }
    }
    let d = basis.len();
    let cols: Vec<usize> = reduced.iter().map(|(c, _)| *c).collect();
    // Solve Σ λ_j basis_j = v on the pivot coordinates.
    diffs
        .iter()
        .map(|v| {
            if d == 0 {
                return Vec::new();
            }
            let a: Vec<Vec<Rat>> = cols.iter().map(|&c| basis.iter().map(|b| b[c].clone()).collect()).collect();
            let b: Vec<Rat> = cols.iter().map(|&c| v[c].clone()).collect();
            solve(a, b).expect("pivot columns are independent")
        })
        .collect()
}

/// Normal of the hyperplane through `d` points in `Q^d` (generalized cross product).
fn hyperplane_normal(pts: &[&Vec<Rat>]) -> Vec<Rat> {
    let d = pts[0].len();
    let rows: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    (0..d)
        .map(|i| {
            let minor: Vec<Vec<Rat>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect())
                .collect();
            let m = det(minor);
            if i % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

fn side(normal: &[Rat], base: &[Rat], p: &[Rat]) -> Rat {
    normal.iter().zip(p.iter().zip(base)).map(|(n, (x, b))| n * (x - b)).sum()
}

fn on_hyperplane(coords: &[Vec<Rat>], facet: &[usize], i: usize) -> bool {
    let d = coords[0].len();
    let refs: Vec<&Vec<Rat>> = facet.iter().take(d).map(|&j| &coords[j]).collect();
    let n = hyperplane_normal(&refs);
    side(&n, refs[0], &coords[i]).is_zero()
}

/// Facets of a full-dimensional point configuration in `Q^d`, as index sets
/// whose first `d` entries span the facet hyperplane.
fn facets_in_hull(coords: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let d = coords[0].len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for subset in subsets(coords.len(), d) {
        let refs: Vec<&Vec<Rat>> = subset.iter().map(|&i| &coords[i]).collect();
        let normal = hyperplane_normal(&refs);
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let sides: Vec<Rat> = coords.iter().map(|p| side(&normal, refs[0], p)).collect();
        let pos = sides.iter().any(|s| s.is_positive());
        let neg = sides.iter().any(|s| s.is_negative());
        if pos && neg {
            continue;
        }
        let on: Vec<usize> = (0..coords.len()).filter(|&i| sides[i].is_zero()).collect();
        if seen.insert(on.clone()) {
            // put the spanning subset first
            let mut ordered = subset.clone();
            ordered.extend(on.iter().filter(|i| !subset.contains(i)));
            out.push(ordered);
        }
    }
    out
}
