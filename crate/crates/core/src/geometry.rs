//! Closed slices `{z >= 0, sum z = 1, A z >= 0}` of integer cones: vertex
//! enumeration, triangulation and lattice-normalized relative volume.
//!
//! Volumes are measured after dropping the last coordinate, which maps the
//! lattice of the slice `sum z = 1` onto `Z^(D-1)`; a simplex with vertices
//! `q_1..q_D` then has relative volume `|det(q_1; ...; q_D)| / (D-1)!`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{determinant_int, factorial, rank, solve_linear_system, Rational};
use crate::voting::ConstraintSystem;

/// Fixed-width set of small indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(bits: usize) -> Self {
        BitSet {
            words: vec![0; bits.div_ceil(64).max(1)],
        }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub(crate) fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }
}

/// `{z in R^D : z >= 0, sum z = 1, row . z >= 0 for every row}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

impl Polytope {
    pub fn new(dim: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: r.len(),
            });
        }
        Ok(Polytope { dim, rows })
    }

    /// Closure of a constraint system's slice: strict rows become `>= 0`.
    pub fn from_system(system: &ConstraintSystem) -> Self {
        Polytope {
            dim: system.vars(),
            rows: system.rows().iter().map(|r| r.coeffs.clone()).collect(),
        }
    }

    pub fn standard_simplex(dim: usize) -> Self {
        Polytope {
            dim,
            rows: Vec::new(),
        }
    }

    /// Number of ambient variables `D`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Constraints `0..D` are `z_i >= 0`, followed by the rows.
    pub fn constraint_count(&self) -> usize {
        self.dim + self.rows.len()
    }

    fn constraint_value(&self, c: usize, x: &[BigInt]) -> BigInt {
        if c < self.dim {
            x[c].clone()
        } else {
            self.rows[c - self.dim]
                .iter()
                .zip(x)
                .map(|(a, v)| v * *a)
                .sum()
        }
    }

    fn constraint_row(&self, c: usize) -> Vec<Rational> {
        if c < self.dim {
            (0..self.dim)
                .map(|j| {
                    if j == c {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        } else {
            self.rows[c - self.dim]
                .iter()
                .map(|&a| Rational::from_integer(a.into()))
                .collect()
        }
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        z.len() == self.dim
            && z.iter().all(|v| !v.is_negative())
            && z.iter().fold(Rational::zero(), |a, v| a + v) == Rational::one()
            && self.rows.iter().all(|r| {
                r.iter().zip(z).fold(Rational::zero(), |acc, (&a, v)| {
                    acc + v * Rational::from_integer(a.into())
                }) >= Rational::zero()
            })
    }
}

/// Vertex set of a [`Polytope`], each vertex stored as a primitive
/// nonnegative integer ray `r` standing for `r / sum(r)`, sorted
/// lexicographically by vertex coordinates.
#[derive(Clone, Debug)]
pub struct VRep {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    /// tight constraints of each vertex
    incidence: Vec<BitSet>,
    constraints: usize,
}

impl VRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn vertex(&self, i: usize) -> Vec<Rational> {
        ray_to_point(&self.rays[i])
    }

    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        (0..self.len()).map(|i| self.vertex(i)).collect()
    }

    /// Indices of the constraints tight at vertex `i`.
    pub fn tight_constraints(&self, i: usize) -> Vec<usize> {
        self.incidence[i].iter().collect()
    }

    /// Affine dimension of the vertex set; `None` when empty.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let m: Vec<Vec<Rational>> = self
            .rays
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| Rational::from_integer(v.clone()))
                    .collect()
            })
            .collect();
        Some(rank(&m) - 1)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == Some(self.dim - 1)
    }
}

fn ray_to_point(r: &[BigInt]) -> Vec<Rational> {
    let s: BigInt = r.iter().sum();
    r.iter()
        .map(|v| Rational::new(v.clone(), s.clone()))
        .collect()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

fn cmp_points(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

struct Ray {
    v: Vec<BigInt>,
    zeros: BitSet,
}

/// Exact vertex enumeration by the double description method on the cone
/// `{z >= 0, A z >= 0}`, starting from the extreme rays of the orthant and
/// adding one row at a time. Extreme rays of the cone are the vertices of
/// the slice after normalizing to `sum z = 1`.
pub fn vertex_enumeration(p: &Polytope) -> VRep {
    let d = p.dim;
    let nc = p.constraint_count();
    let mut rays: Vec<Ray> = (0..d)
        .map(|i| {
            let mut zeros = BitSet::new(nc);
            (0..d).filter(|&j| j != i).for_each(|j| zeros.insert(j));
            Ray {
                v: (0..d)
                    .map(|j| {
                        if j == i {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect(),
                zeros,
            }
        })
        .collect();
    for c in d..nc {
        let values: Vec<BigInt> = rays.iter().map(|r| p.constraint_value(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let mut created = Vec::new();
        for &i in &pos {
            for &j in &neg {
                let common = rays[i].zeros.intersection(&rays[j].zeros);
                if d >= 2 && common.len() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == i || k == j || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let (vi, vj) = (&values[i], &values[j]);
                let v: Vec<BigInt> = rays[i]
                    .v
                    .iter()
                    .zip(&rays[j].v)
                    .map(|(a, b)| vi * b - vj * a)
                    .collect();
                let mut zeros = common;
                zeros.insert(c);
                created.push(Ray {
                    v: primitive(v),
                    zeros,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                r.zeros.insert(c);
                next.push(r);
            } else if values[i].is_positive() {
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }
    let mut keyed: Vec<(Vec<Rational>, Vec<BigInt>)> = rays
        .into_iter()
        .map(|r| (ray_to_point(&r.v), r.v))
        .collect();
    keyed.sort_by(|a, b| cmp_points(&a.0, &b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let rays: Vec<Vec<BigInt>> = keyed.into_iter().map(|(_, r)| r).collect();
    let incidence = rays
        .iter()
        .map(|r| {
            let mut z = BitSet::new(nc);
            (0..nc)
                .filter(|&c| p.constraint_value(c, r).is_zero())
                .for_each(|c| z.insert(c));
            z
        })
        .collect();
    VRep {
        dim: d,
        rays,
        incidence,
        constraints: nc,
    }
}

/// Reference enumeration: solves every choice of `D - 1` constraints
/// together with `sum z = 1` and keeps the feasible unique solutions.
/// Exponential in the constraint count; intended for cross-checking.
pub fn vertex_enumeration_by_subsets(p: &Polytope) -> Vec<Vec<Rational>> {
    use itertools::Itertools;
    let d = p.dim;
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for subset in (0..p.constraint_count()).combinations(d - 1) {
        let mut a: Vec<Vec<Rational>> = subset.iter().map(|&c| p.constraint_row(c)).collect();
        let mut b = vec![Rational::zero(); d - 1];
        a.push(vec![Rational::one(); d]);
        b.push(Rational::one());
        if let Ok(z) = solve_linear_system(&a, &b) {
            if p.contains(&z) && !out.contains(&z) {
                out.push(z);
            }
        }
    }
    out.sort_by(|a, b| cmp_points(a, b));
    out
}

/// A simplex in the slice `sum z = 1` with `D` affinely independent
/// vertices, each stored as an integer ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    rays: Vec<Vec<BigInt>>,
}

impl Simplex {
    pub fn from_rays(rays: Vec<Vec<BigInt>>) -> Result<Self> {
        let d = rays.len();
        if let Some(r) = rays.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: r.len(),
            });
        }
        if rays.iter().any(|r| r.iter().sum::<BigInt>().is_zero()) {
            return Err(Error::DegenerateSimplex);
        }
        let s = Simplex { rays };
        if s.ray_determinant().is_zero() {
            return Err(Error::DegenerateSimplex);
        }
        Ok(s)
    }

    /// Builds a simplex from rational points with coordinate sum one.
    pub fn from_points(points: &[Vec<Rational>]) -> Result<Self> {
        let rays = points
            .iter()
            .map(|q| {
                if q.iter().fold(Rational::zero(), |a, v| a + v) != Rational::one() {
                    return Err(Error::DegenerateSimplex);
                }
                let l = q.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
                Ok(q.iter().map(|v| v.numer() * (&l / v.denom())).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Simplex::from_rays(rays)
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn points(&self) -> Vec<Vec<Rational>> {
        self.rays.iter().map(|r| ray_to_point(r)).collect()
    }

    fn ray_determinant(&self) -> BigInt {
        determinant_int(&self.rays)
    }

    /// `det(q_1; ...; q_D)` of the vertex matrix.
    pub fn determinant(&self) -> Rational {
        let scale = self
            .rays
            .iter()
            .fold(BigInt::one(), |acc, r| acc * r.iter().sum::<BigInt>());
        Rational::new(self.ray_determinant(), scale)
    }

    pub fn relative_volume(&self) -> Rational {
        let fact = Rational::from_integer(factorial(self.dim() as u64 - 1).into());
        self.determinant().abs() / fact
    }
}

/// Pulling triangulation with vertices prioritized in lexicographic order.
pub fn triangulate(v: &VRep) -> Result<Vec<Simplex>> {
    let priority: Vec<usize> = (0..v.len()).collect();
    triangulate_with_priority(v, &priority)
}

/// Pulling triangulation: each face is coned from its highest-priority
/// vertex over the triangulated facets that avoid it. `priority[i]` ranks
/// vertex `i`; lower pulls first.
pub fn triangulate_with_priority(v: &VRep, priority: &[usize]) -> Result<Vec<Simplex>> {
    if v.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let full = v.dim - 1;
    let dim = v.affine_dim().unwrap_or(0);
    if dim != full {
        return Err(Error::Degenerate {
            dim,
            expected: full,
        });
    }
    assert_eq!(priority.len(), v.len(), "one priority per vertex");
    let n = v.len();
    // vertex set of each constraint hyperplane
    let on_constraint: Vec<BitSet> = (0..v.constraints)
        .map(|c| {
            let mut s = BitSet::new(n);
            (0..n)
                .filter(|&i| v.incidence[i].contains(c))
                .for_each(|i| s.insert(i));
            s
        })
        .collect();
    let mut all = BitSet::new(n);
    (0..n).for_each(|i| all.insert(i));
    let mut out = Vec::new();
    let mut apex = Vec::new();
    pull(&all, full, &on_constraint, priority, &mut apex, &mut out);
    Ok(out
        .into_iter()
        .map(|idx| Simplex {
            rays: idx.into_iter().map(|i| v.rays[i].clone()).collect(),
        })
        .collect())
}

fn pull(
    face: &BitSet,
    dim: usize,
    on_constraint: &[BitSet],
    priority: &[usize],
    apex: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let count = face.len();
    if count == dim + 1 {
        let mut s = apex.clone();
        s.extend(face.iter());
        out.push(s);
        return;
    }
    let v = face
        .iter()
        .min_by_key(|&i| priority[i])
        .expect("nonempty face");
    let mut faces: Vec<BitSet> = Vec::new();
    for c in on_constraint {
        let f = face.intersection(c);
        let n = f.len();
        if n == 0 || n == count || faces.contains(&f) {
            continue;
        }
        faces.push(f);
    }
    let facets: Vec<&BitSet> = faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g != *f && f.is_subset(g)))
        .filter(|f| !f.contains(v))
        .collect();
    apex.push(v);
    for f in facets {
        pull(f, dim - 1, on_constraint, priority, apex, out);
    }
    apex.pop();
}

/// Lattice-normalized volume of the slice; zero when the polytope is empty
/// or lower-dimensional.
pub fn relative_volume(p: &Polytope) -> Rational {
    let v = vertex_enumeration(p);
    match triangulate(&v) {
        Ok(simplices) => simplices
            .par_iter()
            .map(Simplex::relative_volume)
            .reduce(Rational::zero, |a, b| a + b),
        Err(_) => Rational::zero(),
    }
}
