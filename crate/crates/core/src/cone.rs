//! Exact rational polyhedral cones in low dimension.
//!
//! Cones are handled in plain coordinate space; a [`PairingContext`] carries
//! the intersection pairing that turns "dual cone in the numerical sense"
//! into "dual cone in the coordinate sense". Two independent conversion
//! routes are provided and cross-checked in tests: an incremental double
//! description method ([`rays_from_inequalities`]) and a brute-force
//! enumeration of `(d-1)`-subsets ([`naive_dual_rays`]).
//!
//! All descriptions are canonical: lineality bases are reduced row echelon
//! rows, rays are reduced modulo the lineality, scaled to primitive integer
//! vectors, deduplicated, and sorted, so equal cones print identically.

use crate::linalg::{dot, primitive_ray, primitive_signed, QMatrix, Rat};
use num_traits::Zero;
use std::collections::BTreeSet;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("vector has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("pairing matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("pairing matrix of size {size} is singular")]
    SingularPairing { size: usize },
}

/// Generator-side description of a cone: a lineality basis plus rays.
///
/// The cone is the set of nonnegative combinations of the rays plus
/// arbitrary combinations of the lineality vectors. A pointed cone has empty
/// lineality; a linear subspace has no rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualDescription {
    pub dim: usize,
    pub lineality: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Rat>>,
}

/// Facet-side description: the cone is where all `inequalities` are
/// nonnegative and all `equalities` vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetDescription {
    pub dim: usize,
    pub inequalities: Vec<Vec<Rat>>,
    pub equalities: Vec<Vec<Rat>>,
}

fn check_rows(dim: usize, rows: &[Vec<Rat>]) -> Result<(), ConeError> {
    for row in rows {
        if row.len() != dim {
            return Err(ConeError::DimensionMismatch {
                expected: dim,
                found: row.len(),
            });
        }
    }
    Ok(())
}

fn matrix_from(rows: &[&[Rat]], dim: usize) -> QMatrix {
    let mut m = QMatrix::zero(rows.len(), dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

/// Keep only rays that are extremal for the constraints processed so far: a
/// ray is extremal exactly when its active constraints have rank
/// `dim - |lineality| - 1`.
fn prune_extremal(
    dim: usize,
    lineality: &[Vec<Rat>],
    rays: Vec<Vec<Rat>>,
    processed: &[Vec<Rat>],
) -> Vec<Vec<Rat>> {
    if rays.is_empty() {
        return rays;
    }
    let target = dim - lineality.len() - 1;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for ray in rays {
        let Some(p) = primitive_ray(&ray) else {
            continue;
        };
        if !seen.insert(p.clone()) {
            continue;
        }
        let active: Vec<&[Rat]> = processed
            .iter()
            .filter(|a| dot(a, &p).is_zero())
            .map(Vec::as_slice)
            .collect();
        if matrix_from(&active, dim).rank() == target {
            out.push(p);
        }
    }
    out
}

/// Canonical form: lineality as echelon rows, rays reduced modulo the
/// lineality, made primitive, deduplicated, and sorted.
fn canonical(dim: usize, lineality: Vec<Vec<Rat>>, rays: Vec<Vec<Rat>>) -> DualDescription {
    let (lin_rows, reduced_rays) = if lineality.is_empty() {
        (Vec::new(), rays)
    } else {
        let (rref, pivots) = QMatrix::from_rows(lineality)
            .expect("lineality rows share the ambient dimension")
            .rref();
        let lin_rows: Vec<Vec<Rat>> = (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect();
        let reduced = rays
            .into_iter()
            .map(|mut r| {
                for (i, &col) in pivots.iter().enumerate() {
                    let c = r[col].clone();
                    if !c.is_zero() {
                        for (x, l) in r.iter_mut().zip(rref.row(i)) {
                            *x -= &c * l;
                        }
                    }
                }
                r
            })
            .collect();
        (lin_rows, reduced)
    };
    let rays: BTreeSet<Vec<Rat>> = reduced_rays
        .iter()
        .filter_map(|r| primitive_ray(r))
        .collect();
    DualDescription {
        dim,
        lineality: lin_rows
            .iter()
            .map(|l| primitive_signed(l).expect("lineality rows are nonzero"))
            .collect(),
        rays: rays.into_iter().collect(),
    }
}

/// Generator description of `{ x : a·x ≥ 0 for every constraint row a }` by
/// the incremental double description method.
///
/// Starting from the full space, each constraint either cuts the current
/// lineality (one lineality vector is promoted to a ray and everything else
/// is projected onto the constraint hyperplane) or splits the rays into
/// positive, zero, and negative parts which are recombined pairwise. After
/// every step the non-extremal combinations are discarded by the rank
/// criterion, keeping the intermediate descriptions minimal.
pub fn rays_from_inequalities(
    dim: usize,
    constraints: &[Vec<Rat>],
) -> Result<DualDescription, ConeError> {
    check_rows(dim, constraints)?;
    let mut lineality: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rat::zero(); dim];
            e[i] = num_traits::One::one();
            e
        })
        .collect();
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    let mut processed: Vec<Vec<Rat>> = Vec::new();
    for a in constraints {
        let hit = lineality.iter().position(|l| !dot(a, l).is_zero());
        if let Some(i0) = hit {
            let l0 = lineality.remove(i0);
            let d0 = dot(a, &l0);
            for l in &mut lineality {
                let c = dot(a, l) / &d0;
                if !c.is_zero() {
                    for (x, y) in l.iter_mut().zip(&l0) {
                        *x -= &c * y;
                    }
                }
            }
            for r in &mut rays {
                let c = dot(a, r) / &d0;
                if !c.is_zero() {
                    for (x, y) in r.iter_mut().zip(&l0) {
                        *x -= &c * y;
                    }
                }
            }
            // The promoted vector becomes the one ray off the hyperplane,
            // oriented into the halfspace.
            let r0 = if d0 > Rat::zero() {
                l0
            } else {
                l0.iter().map(|x| -x).collect()
            };
            rays.push(r0);
        } else {
            let mut pos: Vec<(Vec<Rat>, Rat)> = Vec::new();
            let mut zero: Vec<Vec<Rat>> = Vec::new();
            let mut neg: Vec<(Vec<Rat>, Rat)> = Vec::new();
            for r in rays.drain(..) {
                let v = dot(a, &r);
                if v > Rat::zero() {
                    pos.push((r, v));
                } else if v < Rat::zero() {
                    neg.push((r, v));
                } else {
                    zero.push(r);
                }
            }
            let mut next: Vec<Vec<Rat>> = Vec::new();
            for (p, vp) in &pos {
                for (n, vn) in &neg {
                    // vp·n - vn·p has positive weight on both parents and
                    // lies on the hyperplane a = 0.
                    let combo: Vec<Rat> =
                        p.iter().zip(n).map(|(pi, ni)| vp * ni - vn * pi).collect();
                    next.push(combo);
                }
            }
            next.extend(pos.into_iter().map(|(p, _)| p));
            next.extend(zero);
            rays = next;
        }
        processed.push(a.clone());
        rays = prune_extremal(dim, &lineality, rays, &processed);
    }
    Ok(canonical(dim, lineality, rays))
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(i + 1, n, k, acc, f);
            acc.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

/// Brute-force alternative to [`rays_from_inequalities`]: every extremal ray
/// of a pointed constraint cone spans the kernel of some `(d-1)`-subset of
/// constraints of rank `d-1`, so enumerating all subsets and sign-filtering
/// the kernel vectors finds them all. Returns `None` when the cone is not
/// pointed (constraint rank below `d`), since rays alone cannot describe it.
pub fn naive_dual_rays(
    dim: usize,
    constraints: &[Vec<Rat>],
) -> Result<Option<Vec<Vec<Rat>>>, ConeError> {
    check_rows(dim, constraints)?;
    if dim == 0 {
        return Ok(Some(Vec::new()));
    }
    let all: Vec<&[Rat]> = constraints.iter().map(Vec::as_slice).collect();
    if matrix_from(&all, dim).rank() < dim {
        return Ok(None);
    }
    let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
    subsets(constraints.len(), dim - 1, &mut |idx| {
        let chosen: Vec<&[Rat]> = idx.iter().map(|&i| constraints[i].as_slice()).collect();
        let kernel = matrix_from(&chosen, dim).kernel_basis();
        if kernel.len() != 1 {
            return;
        }
        let v = &kernel[0];
        for cand in [v.clone(), v.iter().map(|x| -x).collect::<Vec<Rat>>()] {
            if constraints.iter().all(|a| dot(a, &cand) >= Rat::zero()) {
                if let Some(p) = primitive_ray(&cand) {
                    found.insert(p);
                }
            }
        }
    });
    Ok(Some(found.into_iter().collect()))
}

/// A polyhedral cone given by generators, with facets computed on demand and
/// cached.
#[derive(Debug)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<Rat>>,
    facets: OnceLock<FacetDescription>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone {
            dim: self.dim,
            generators: self.generators.clone(),
            facets: OnceLock::new(),
        }
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl Eq for Cone {}

impl Cone {
    /// Normalizing constructor: generators are made primitive, deduplicated,
    /// and sorted; zero vectors are dropped.
    pub fn from_generators(dim: usize, generators: Vec<Vec<Rat>>) -> Result<Cone, ConeError> {
        check_rows(dim, &generators)?;
        let set: BTreeSet<Vec<Rat>> = generators.iter().filter_map(|g| primitive_ray(g)).collect();
        Ok(Cone {
            dim,
            generators: set.into_iter().collect(),
            facets: OnceLock::new(),
        })
    }

    pub fn from_int_generators(dim: usize, generators: &[Vec<i64>]) -> Result<Cone, ConeError> {
        Cone::from_generators(
            dim,
            generators
                .iter()
                .map(|g| g.iter().map(|&n| Rat::from_integer(n.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    /// Rays of the dual cone `{ y : g·y ≥ 0 }` under the standard inner
    /// product; relabeled by [`Cone::facet_description`] as facet data.
    pub fn dual(&self) -> DualDescription {
        rays_from_inequalities(self.dim, &self.generators)
            .expect("generators were dimension-checked at construction")
    }

    /// Facet inequalities and implicit equalities of the cone: the rays of
    /// the dual cone are the facet normals, its lineality vectors vanish on
    /// the whole cone.
    pub fn facet_description(&self) -> &FacetDescription {
        self.facets.get_or_init(|| {
            let dd = self.dual();
            FacetDescription {
                dim: dd.dim,
                inequalities: dd.rays,
                equalities: dd.lineality,
            }
        })
    }

    /// Membership test against the facet description.
    ///
    /// Panics if the point has the wrong number of coordinates.
    pub fn contains(&self, point: &[Rat]) -> bool {
        assert_eq!(point.len(), self.dim, "point dimension mismatch");
        let f = self.facet_description();
        f.inequalities.iter().all(|a| dot(a, point) >= Rat::zero())
            && f.equalities.iter().all(|a| dot(a, point).is_zero())
    }

    /// Equality as sets, decided by mutual containment of generators.
    ///
    /// Panics if the ambient dimensions differ.
    pub fn equals(&self, other: &Cone) -> bool {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    /// Canonical minimal description: lineality plus extremal rays, obtained
    /// by running the double description method back over the facets.
    pub fn extremal_description(&self) -> DualDescription {
        let f = self.facet_description();
        let mut constraints = f.inequalities.clone();
        for e in &f.equalities {
            constraints.push(e.clone());
            constraints.push(e.iter().map(|x| -x).collect());
        }
        rays_from_inequalities(self.dim, &constraints)
            .expect("facet rows have the ambient dimension")
    }

    /// The extremal rays; for a pointed cone this is the unique minimal
    /// generating set (a cone with lineality also needs the lineality
    /// vectors, see [`Cone::extremal_description`]).
    pub fn extremal_rays(&self) -> Vec<Vec<Rat>> {
        self.extremal_description().rays
    }
}

/// An invertible matrix of intersection pairings between a basis of one
/// numerical group and a basis of the complementary one; converts duality
/// against the pairing into coordinate-space duality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingContext {
    matrix: QMatrix,
}

impl PairingContext {
    pub fn new(matrix: QMatrix) -> Result<Self, ConeError> {
        if matrix.rows() != matrix.cols() {
            return Err(ConeError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rank() != matrix.rows() {
            return Err(ConeError::SingularPairing {
                size: matrix.rows(),
            });
        }
        Ok(PairingContext { matrix })
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// The constraint row cutting out `{ y : ⟨g, y⟩ ≥ 0 }` in target
    /// coordinates: `g` times the pairing matrix.
    pub fn constraint_row(&self, g: &[Rat]) -> Result<Vec<Rat>, ConeError> {
        let n = self.size();
        if g.len() != n {
            return Err(ConeError::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
        Ok((0..n)
            .map(|j| (0..n).map(|i| &g[i] * self.matrix.get(i, j)).sum())
            .collect())
    }

    /// Generator description of the dual cone `{ y : ⟨g, y⟩ ≥ 0 for all
    /// generators g }` in target-space coordinates.
    pub fn dual_description(&self, generators: &[Vec<Rat>]) -> Result<DualDescription, ConeError> {
        let constraints = generators
            .iter()
            .map(|g| self.constraint_row(g))
            .collect::<Result<Vec<_>, _>>()?;
        rays_from_inequalities(self.size(), &constraints)
    }

    /// The dual cone as a [`Cone`] (lineality folded in as opposite rays).
    pub fn dual_cone(&self, cone: &Cone) -> Result<Cone, ConeError> {
        let dd = self.dual_description(cone.generators())?;
        let mut gens = dd.rays;
        for l in dd.lineality {
            gens.push(l.iter().map(|x| -x).collect());
            gens.push(l);
        }
        Cone::from_generators(dd.dim, gens)
    }
}
