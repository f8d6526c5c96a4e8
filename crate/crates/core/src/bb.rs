//! Torus fixed points and cell dimensions for the decomposition induced by a
//! one-parameter subgroup.
//!
//! A two-dimensional torus acts on the plane with weights `x: (1,0)`,
//! `y: (0,1)`, `z: (0,0)`, hence on the five-dimensional space of conics
//! through the weights of the degree-two monomials. The one-parameter
//! subgroup is `t -> (t, t^k)` for large `k`, so a weight `(a, b)` is
//! attracting or repelling according to the sign of `b`, with ties broken by
//! the sign of `a`; the weight `(0, 0)` would make the choice degenerate and
//! is rejected.
//!
//! Each fixed point contributes a cell whose dimension is the number of
//! negative tangent weights. Fixed points are computed for the conic space
//! itself, for its blowup along the surface of double lines, and for the
//! exceptional divisor of that blowup. On the blowup the fixed points over a
//! blown-up center split into three, one for each normal direction, and the
//! tangent weights split into surface, fiber, and normal parts.

use std::fmt;
use std::ops::Sub;
use thiserror::Error;

/// Weight of a two-dimensional torus character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusWeight {
    pub a: i64,
    pub b: i64,
}

/// Attraction sign of a weight under the chosen one-parameter subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BbError {
    #[error("torus weight (0,0) has no sign under the one-parameter subgroup")]
    ZeroWeight,
}

impl TorusWeight {
    pub const fn new(a: i64, b: i64) -> Self {
        TorusWeight { a, b }
    }

    /// Sign under `t -> (t, t^k)` with `k` large: the `b` component decides,
    /// the `a` component breaks ties.
    pub fn sign(self) -> Result<Sign, BbError> {
        let decisive = if self.b != 0 { self.b } else { self.a };
        if decisive > 0 {
            Ok(Sign::Positive)
        } else if decisive < 0 {
            Ok(Sign::Negative)
        } else {
            Err(BbError::ZeroWeight)
        }
    }
}

impl Sub for TorusWeight {
    type Output = TorusWeight;

    fn sub(self, rhs: TorusWeight) -> TorusWeight {
        TorusWeight::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl fmt::Display for TorusWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Weights of the plane coordinates `x, y, z`.
pub const PLANE_WEIGHTS: [TorusWeight; 3] = [
    TorusWeight::new(1, 0),
    TorusWeight::new(0, 1),
    TorusWeight::new(0, 0),
];

/// The degree-two monomials indexing the conic coordinates.
pub const CONIC_MONOMIALS: [&str; 6] = ["x^2", "xy", "y^2", "xz", "yz", "z^2"];

/// Weights of the conic coordinates, one per degree-two monomial.
pub fn coordinate_weights() -> [TorusWeight; 6] {
    let [x, y, z] = PLANE_WEIGHTS;
    [
        TorusWeight::new(x.a + x.a, x.b + x.b),
        TorusWeight::new(x.a + y.a, x.b + y.b),
        TorusWeight::new(y.a + y.a, y.b + y.b),
        TorusWeight::new(x.a + z.a, x.b + z.b),
        TorusWeight::new(y.a + z.a, y.b + z.b),
        TorusWeight::new(z.a + z.a, z.b + z.b),
    ]
}

fn count_negative(weights: &[TorusWeight]) -> Result<usize, BbError> {
    let mut n = 0;
    for w in weights {
        if w.sign()? == Sign::Negative {
            n += 1;
        }
    }
    Ok(n)
}

/// A coordinate fixed point of the conic space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P5FixedPoint {
    pub label: String,
    /// Index into the conic coordinates.
    pub index: usize,
    pub weight: TorusWeight,
    /// Tangent weights in coordinate order.
    pub tangent_weights: Vec<TorusWeight>,
    pub dimension: usize,
}

/// The six coordinate fixed points `p0..p5` of the conic space.
pub fn p5_fixed_points() -> Result<Vec<P5FixedPoint>, BbError> {
    let weights = coordinate_weights();
    (0..6)
        .map(|i| {
            let tangent: Vec<TorusWeight> = (0..6)
                .filter(|&j| j != i)
                .map(|j| weights[j] - weights[i])
                .collect();
            Ok(P5FixedPoint {
                label: format!("p{i}"),
                index: i,
                weight: weights[i],
                dimension: count_negative(&tangent)?,
                tangent_weights: tangent,
            })
        })
        .collect()
}

/// A torus-fixed point of the blown-up surface of double lines, with the
/// splitting of the ambient tangent space into surface and normal weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseCenter {
    /// Label of the underlying coordinate fixed point.
    pub label: String,
    pub index: usize,
    pub weight: TorusWeight,
    /// Tangent weights of the surface of double lines.
    pub surface_weights: [TorusWeight; 2],
    /// Normal weights, sorted in descending lexicographic order; this order
    /// fixes the prime labels of the exceptional fixed points.
    pub normal_weights: [TorusWeight; 3],
}

/// Fixed points of the surface of double lines: the squares of the fixed
/// lines `x, y, z`.
pub fn veronese_centers() -> Result<Vec<VeroneseCenter>, BbError> {
    let conic_weights = coordinate_weights();
    PLANE_WEIGHTS
        .iter()
        .enumerate()
        .map(|(line, &u)| {
            // The square of the fixed line lands on the coordinate point
            // whose monomial weight is 2u.
            let double = TorusWeight::new(2 * u.a, 2 * u.b);
            let index = conic_weights
                .iter()
                .position(|&w| w == double)
                .expect("every doubled line weight is a monomial weight");
            // The squaring map is an equivariant embedding, so the surface
            // tangent weights are those of the line plane at the fixed line.
            let surface: Vec<TorusWeight> = (0..3)
                .filter(|&j| j != line)
                .map(|j| PLANE_WEIGHTS[j] - u)
                .collect();
            let mut normal: Vec<TorusWeight> = (0..6)
                .filter(|&j| j != index)
                .map(|j| conic_weights[j] - conic_weights[index])
                .filter(|w| !surface.contains(w))
                .collect();
            normal.sort();
            normal.reverse();
            assert_eq!(normal.len(), 3, "surface weights split off cleanly");
            Ok(VeroneseCenter {
                label: format!("p{index}"),
                index,
                weight: conic_weights[index],
                surface_weights: [surface[0], surface[1]],
                normal_weights: [normal[0], normal[1], normal[2]],
            })
        })
        .collect()
}

/// A fixed point of the exceptional divisor: a blown-up center together with
/// a fixed normal direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalPoint {
    /// Center label with one prime per normal direction, e.g. `p0''`.
    pub label: String,
    pub center: String,
    pub center_weight: TorusWeight,
    pub surface_weights: [TorusWeight; 2],
    /// The normal direction fixed by this point; also the weight of the
    /// direction transverse to the exceptional divisor.
    pub normal: TorusWeight,
    /// Tangent weights of the fiber plane at the fixed direction.
    pub fiber_weights: [TorusWeight; 2],
    pub negative_surface: usize,
    pub negative_fiber: usize,
    pub negative_normal: usize,
}

impl ExceptionalPoint {
    /// Cell dimension in the blowup: all three tangent blocks count.
    pub fn dimension_in_blowup(&self) -> usize {
        self.negative_surface + self.negative_fiber + self.negative_normal
    }

    /// Cell dimension inside the exceptional divisor: the transverse
    /// direction is dropped.
    pub fn dimension_in_divisor(&self) -> usize {
        self.negative_surface + self.negative_fiber
    }
}

/// The nine fixed points of the exceptional divisor, three over each center,
/// in center order with normal directions descending.
pub fn exceptional_points() -> Result<Vec<ExceptionalPoint>, BbError> {
    let mut centers = veronese_centers()?;
    centers.sort_by_key(|c| c.index);
    let mut out = Vec::new();
    for c in &centers {
        for (k, &normal) in c.normal_weights.iter().enumerate() {
            let fiber: Vec<TorusWeight> = c
                .normal_weights
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &mu)| mu - normal)
                .collect();
            out.push(ExceptionalPoint {
                label: format!("{}{}", c.label, "'".repeat(k + 1)),
                center: c.label.clone(),
                center_weight: c.weight,
                surface_weights: c.surface_weights,
                normal,
                fiber_weights: [fiber[0], fiber[1]],
                negative_surface: count_negative(&c.surface_weights)?,
                negative_fiber: count_negative(&fiber)?,
                negative_normal: count_negative(&[normal])?,
            });
        }
    }
    Ok(out)
}

/// A fixed point of the blowup of the conic space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MFixedPoint {
    pub label: String,
    pub dimension: usize,
    pub kind: MPointKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MPointKind {
    /// A coordinate point away from the blown-up surface; the blowdown is an
    /// equivariant isomorphism near it.
    OffCenter(P5FixedPoint),
    /// A point of the exceptional divisor.
    Exceptional(ExceptionalPoint),
}

/// The twelve fixed points of the blowup, in coordinate-point order with
/// each blown-up center replaced by its three exceptional points.
pub fn m_fixed_points() -> Result<Vec<MFixedPoint>, BbError> {
    let ambient = p5_fixed_points()?;
    let exceptional = exceptional_points()?;
    let center_indices: Vec<usize> = veronese_centers()?.iter().map(|c| c.index).collect();
    let mut out = Vec::new();
    for p in ambient {
        if center_indices.contains(&p.index) {
            for e in exceptional.iter().filter(|e| e.center == p.label) {
                out.push(MFixedPoint {
                    label: e.label.clone(),
                    dimension: e.dimension_in_blowup(),
                    kind: MPointKind::Exceptional(e.clone()),
                });
            }
        } else {
            out.push(MFixedPoint {
                label: p.label.clone(),
                dimension: p.dimension,
                kind: MPointKind::OffCenter(p),
            });
        }
    }
    Ok(out)
}

/// The spaces whose cell decompositions are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// The conic space itself.
    P5,
    /// Its blowup along the surface of double lines.
    M,
    /// The exceptional divisor of the blowup.
    E1,
}

impl Space {
    pub fn dimension(self) -> usize {
        match self {
            Space::P5 | Space::M => 5,
            Space::E1 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::P5 => "p5",
            Space::M => "m",
            Space::E1 => "e1",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p5" => Ok(Space::P5),
            "m" => Ok(Space::M),
            "e1" => Ok(Space::E1),
            other => Err(format!("unknown space `{other}`, expected p5, m, or e1")),
        }
    }
}

/// Cell dimensions keyed by the label of the fixed point at the cell center,
/// in table order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellTable {
    pub space: Space,
    pub cells: Vec<(String, usize)>,
}

/// The six cells of the conic space.
pub fn p5_cell_dimensions() -> Result<CellTable, BbError> {
    Ok(CellTable {
        space: Space::P5,
        cells: p5_fixed_points()?
            .into_iter()
            .map(|p| (p.label, p.dimension))
            .collect(),
    })
}

/// The twelve cells of the blowup.
pub fn m_cell_dimensions() -> Result<CellTable, BbError> {
    Ok(CellTable {
        space: Space::M,
        cells: m_fixed_points()?
            .into_iter()
            .map(|p| (p.label, p.dimension))
            .collect(),
    })
}

/// The nine cells of the exceptional divisor.
pub fn e1_cell_dimensions() -> Result<CellTable, BbError> {
    Ok(CellTable {
        space: Space::E1,
        cells: exceptional_points()?
            .into_iter()
            .map(|p| {
                let d = p.dimension_in_divisor();
                (p.label, d)
            })
            .collect(),
    })
}

/// Cell counts by dimension, lowest first.
pub fn betti_vector(space: Space) -> Result<Vec<usize>, BbError> {
    let dims: Vec<usize> = match space {
        Space::P5 => p5_fixed_points()?.iter().map(|p| p.dimension).collect(),
        Space::M => m_fixed_points()?.iter().map(|p| p.dimension).collect(),
        Space::E1 => exceptional_points()?
            .iter()
            .map(ExceptionalPoint::dimension_in_divisor)
            .collect(),
    };
    let mut betti = vec![0usize; space.dimension() + 1];
    for d in dims {
        betti[d] += 1;
    }
    Ok(betti)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> TorusWeight {
        TorusWeight::new(a, b)
    }

    #[test]
    fn signs_follow_the_one_parameter_subgroup() {
        assert_eq!(w(-5, 1).sign(), Ok(Sign::Positive));
        assert_eq!(w(5, -1).sign(), Ok(Sign::Negative));
        assert_eq!(w(3, 0).sign(), Ok(Sign::Positive));
        assert_eq!(w(-3, 0).sign(), Ok(Sign::Negative));
        assert_eq!(w(0, 0).sign(), Err(BbError::ZeroWeight));
    }

    #[test]
    fn conic_coordinate_weights() {
        assert_eq!(
            coordinate_weights(),
            [w(2, 0), w(1, 1), w(0, 2), w(1, 0), w(0, 1), w(0, 0)]
        );
    }

    #[test]
    fn conic_space_cells() {
        let points = p5_fixed_points().unwrap();
        let labels: Vec<&str> = points.iter().map(|p| p.label.as_str()).collect();
        assert_eq!(labels, ["p0", "p1", "p2", "p3", "p4", "p5"]);
        let dims: Vec<usize> = points.iter().map(|p| p.dimension).collect();
        assert_eq!(dims, [2, 4, 5, 1, 3, 0]);
        assert_eq!(
            points[1].tangent_weights,
            vec![w(1, -1), w(-1, 1), w(0, -1), w(-1, 0), w(-1, -1)]
        );
        assert_eq!(betti_vector(Space::P5).unwrap(), vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn centers_sit_at_the_squares_of_fixed_lines() {
        let mut centers = veronese_centers().unwrap();
        centers.sort_by_key(|c| c.index);
        let indices: Vec<usize> = centers.iter().map(|c| c.index).collect();
        assert_eq!(indices, [0, 2, 5]);

        assert_eq!(centers[0].surface_weights, [w(-1, 1), w(-1, 0)]);
        assert_eq!(centers[0].normal_weights, [w(-2, 2), w(-2, 1), w(-2, 0)]);
        assert_eq!(centers[1].surface_weights, [w(1, -1), w(0, -1)]);
        assert_eq!(centers[1].normal_weights, [w(2, -2), w(1, -2), w(0, -2)]);
        assert_eq!(centers[2].surface_weights, [w(1, 0), w(0, 1)]);
        assert_eq!(centers[2].normal_weights, [w(2, 0), w(1, 1), w(0, 2)]);
    }

    #[test]
    fn exceptional_table() {
        let pts = exceptional_points().unwrap();
        // label, normal, fiber weights, (surface, fiber, normal) negatives.
        type Row = (
            &'static str,
            TorusWeight,
            [TorusWeight; 2],
            (usize, usize, usize),
        );
        let expected: [Row; 9] = [
            ("p0'", w(-2, 2), [w(0, -1), w(0, -2)], (1, 2, 0)),
            ("p0''", w(-2, 1), [w(0, 1), w(0, -1)], (1, 1, 0)),
            ("p0'''", w(-2, 0), [w(0, 2), w(0, 1)], (1, 0, 1)),
            ("p2'", w(2, -2), [w(-1, 0), w(-2, 0)], (2, 2, 1)),
            ("p2''", w(1, -2), [w(1, 0), w(-1, 0)], (2, 1, 1)),
            ("p2'''", w(0, -2), [w(2, 0), w(1, 0)], (2, 0, 1)),
            ("p5'", w(2, 0), [w(-1, 1), w(-2, 2)], (0, 0, 0)),
            ("p5''", w(1, 1), [w(1, -1), w(-1, 1)], (0, 1, 0)),
            ("p5'''", w(0, 2), [w(2, -2), w(1, -1)], (0, 2, 0)),
        ];
        assert_eq!(pts.len(), 9);
        for (pt, (label, normal, fiber, negs)) in pts.iter().zip(expected) {
            assert_eq!(pt.label, label);
            assert_eq!(pt.normal, normal, "{label}");
            assert_eq!(pt.fiber_weights, fiber, "{label}");
            assert_eq!(
                (pt.negative_surface, pt.negative_fiber, pt.negative_normal),
                negs,
                "{label}"
            );
        }
    }

    #[test]
    fn blowup_cells() {
        let pts = m_fixed_points().unwrap();
        let rows: Vec<(&str, usize)> = pts
            .iter()
            .map(|p| (p.label.as_str(), p.dimension))
            .collect();
        assert_eq!(
            rows,
            [
                ("p0'", 3),
                ("p0''", 2),
                ("p0'''", 2),
                ("p1", 4),
                ("p2'", 5),
                ("p2''", 4),
                ("p2'''", 3),
                ("p3", 1),
                ("p4", 3),
                ("p5'", 0),
                ("p5''", 1),
                ("p5'''", 2),
            ]
        );
        assert_eq!(betti_vector(Space::M).unwrap(), vec![1, 2, 3, 3, 2, 1]);
    }

    #[test]
    fn exceptional_divisor_cells() {
        let dims: Vec<usize> = exceptional_points()
            .unwrap()
            .iter()
            .map(ExceptionalPoint::dimension_in_divisor)
            .collect();
        assert_eq!(dims, [3, 2, 1, 4, 3, 2, 0, 1, 2]);
        assert_eq!(betti_vector(Space::E1).unwrap(), vec![1, 2, 3, 2, 1]);
    }

    #[test]
    fn cell_tables_carry_label_and_dimension() {
        let t = p5_cell_dimensions().unwrap();
        assert_eq!(t.space, Space::P5);
        assert_eq!(t.cells[2], ("p2".to_string(), 5));

        let t = m_cell_dimensions().unwrap();
        assert_eq!(t.cells.len(), 12);
        assert_eq!(t.cells[0], ("p0'".to_string(), 3));

        let t = e1_cell_dimensions().unwrap();
        let dims: Vec<usize> = t.cells.iter().map(|(_, d)| *d).collect();
        assert_eq!(dims, [3, 2, 1, 4, 3, 2, 0, 1, 2]);
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 3);
    }

    #[test]
    fn space_names_round_trip() {
        for s in [Space::P5, Space::M, Space::E1] {
            assert_eq!(s.name().parse::<Space>().unwrap(), s);
        }
        assert!("proj5".parse::<Space>().is_err());
    }
}
