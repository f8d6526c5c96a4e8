//! Numerical intersection theory on the space of complete conics.
//!
//! The space in question is the closure of the graph of the duality map
//! between plane conics and their dual conics: a smooth fivefold carrying two
//! hyperplane classes `H1` (conics through a point) and `H2` (conics tangent
//! to a line), together with the exceptional divisor `E1` over the Veronese
//! surface of double lines and its dual `E2` of double points. The divisor
//! relations `H2 = 2H1 - E1` and `H1 = 2H2 - E2` let every polynomial class
//! be rewritten in `H1, H2` alone, and then all intersection numbers follow
//! from the six characteristic numbers of degree five.
//!
//! Classes here are always *numerical*: two classes are identified when they
//! pair equally against every complementary monomial. The groups of classes
//! modulo this identification have dimensions (1, 2, 3, 3, 2, 1) in
//! codimensions 0 through 5.

use crate::expr::{parse_class_expression, ClassExpr, ParseError};
use crate::linalg::{format_rat, rat_int, QMatrix, Rat};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Dimension of the ambient space.
pub const DIM: usize = 5;

/// Errors from ring operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChowError {
    #[error("expression is not homogeneous: found terms of degree {first} and {second}")]
    Inhomogeneous { first: usize, second: usize },
    #[error("total degree {degree} exceeds the dimension {DIM} of the space")]
    DegreeTooLarge { degree: usize },
    #[error("expected a class of codimension {expected}, found codimension {found}")]
    WrongCodim { expected: usize, found: usize },
    #[error("cannot compare classes of codimension {left} and {right}")]
    CodimMismatch { left: usize, right: usize },
    #[error("codimensions {left} and {right} do not add up to {DIM}")]
    NotComplementary { left: usize, right: usize },
    #[error("codimension {codim} is out of range 0..={DIM}")]
    CodimOutOfRange { codim: usize },
    #[error("coefficient vector has {found} entries, expected {expected}")]
    BadCoefficientCount { expected: usize, found: usize },
    #[error(
        "the given {count} classes span a space of dimension {spanned}, \
         but the numerical group in codimension {codim} has dimension {dim}"
    )]
    BasisDoesNotSpan {
        count: usize,
        spanned: usize,
        codim: usize,
        dim: usize,
    },
    #[error("empty expression")]
    EmptyExpression,
}

/// Parse or expansion failure for string inputs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

/// A homogeneous class of pure codimension `k`, stored as the coefficients of
/// `H1^(k-j) H2^j` for `j = 0..=k` after eliminating `E1 = 2H1 - H2` and
/// `E2 = 2H2 - H1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    codim: usize,
    coeffs: Vec<Rat>,
}

impl ChowClass {
    /// The zero class of the given codimension.
    pub fn zero(codim: usize) -> Result<Self, ChowError> {
        if codim > DIM {
            return Err(ChowError::CodimOutOfRange { codim });
        }
        Ok(ChowClass {
            codim,
            coeffs: vec![Rat::zero(); codim + 1],
        })
    }

    /// Build from explicit `H1, H2` coefficients (index = power of `H2`).
    pub fn from_coeffs(codim: usize, coeffs: Vec<Rat>) -> Result<Self, ChowError> {
        if codim > DIM {
            return Err(ChowError::CodimOutOfRange { codim });
        }
        if coeffs.len() != codim + 1 {
            return Err(ChowError::BadCoefficientCount {
                expected: codim + 1,
                found: coeffs.len(),
            });
        }
        Ok(ChowClass { codim, coeffs })
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_coeffs(codim: usize, coeffs: &[i64]) -> Result<Self, ChowError> {
        ChowClass::from_coeffs(codim, coeffs.iter().map(|&n| rat_int(n)).collect())
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// The involution exchanging `H1` and `H2` (and hence `E1` and `E2`).
    pub fn swap(&self) -> ChowClass {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        ChowClass {
            codim: self.codim,
            coeffs,
        }
    }

    /// Sum of two classes of equal codimension.
    pub fn add(&self, rhs: &ChowClass) -> Result<ChowClass, ChowError> {
        if self.codim != rhs.codim {
            return Err(ChowError::CodimMismatch {
                left: self.codim,
                right: rhs.codim,
            });
        }
        Ok(ChowClass {
            codim: self.codim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> ChowClass {
        ChowClass {
            codim: self.codim,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Canonical, re-parseable rendering in the `H1, H2` monomial basis.
    ///
    /// The zero class of codimension `k > 0` prints as `0*H1^k` so that the
    /// codimension survives a round trip through the parser.
    pub fn to_expression_string(&self) -> String {
        fn monomial_name(h1: usize, h2: usize) -> String {
            let mut parts = Vec::new();
            if h1 == 1 {
                parts.push("H1".to_string());
            } else if h1 > 1 {
                parts.push(format!("H1^{h1}"));
            }
            if h2 == 1 {
                parts.push("H2".to_string());
            } else if h2 > 1 {
                parts.push(format!("H2^{h2}"));
            }
            parts.join("*")
        }

        if self.is_zero() {
            return if self.codim == 0 {
                "0".to_string()
            } else {
                format!("0*H1^{}", self.codim)
            };
        }
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = monomial_name(self.codim - j, j);
            if mono.is_empty() {
                out.push_str(&format_rat(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rat(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// A numerical group: the span of the codimension-`k` monomials together
/// with the pairing against complementary monomials and its kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalGroup {
    pub codim: usize,
    /// Dimension after killing the pairing kernel.
    pub dimension: usize,
    /// `(k+1) x (6-k)` pairing table of monomials against monomials.
    pub pairing: QMatrix,
    /// Primitive integer generators of the kernel of the pairing.
    pub kernel: Vec<Vec<Rat>>,
}

/// The ring of numerical classes, determined by the six degree-five
/// characteristic numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowRing {
    chars: [Rat; 6],
}

impl Default for ChowRing {
    fn default() -> Self {
        ChowRing::new()
    }
}

/// Homogeneous polynomial multiplication in `H1, H2`; index = power of `H2`.
fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(base: &[Rat], exp: u32) -> Vec<Rat> {
    let mut acc = vec![Rat::one()];
    for _ in 0..exp {
        acc = poly_mul(&acc, base);
    }
    acc
}

impl ChowRing {
    /// The ring with the actual characteristic numbers
    /// `H1^5 = H2^5 = 1`, `H1^4 H2 = H1 H2^4 = 2`, `H1^3 H2^2 = H1^2 H2^3 = 4`.
    pub fn new() -> Self {
        ChowRing {
            chars: [
                rat_int(1),
                rat_int(2),
                rat_int(4),
                rat_int(4),
                rat_int(2),
                rat_int(1),
            ],
        }
    }

    /// A ring with modified characteristic numbers. This exists for
    /// consistency experiments: corrupting one number must make the verifier
    /// fail, which is how the verifier itself is tested.
    pub fn with_characteristic_numbers(values: [i64; 6]) -> Self {
        ChowRing {
            chars: values.map(rat_int),
        }
    }

    /// The number `H1^(5-j) H2^j` for `j = 0..=5`.
    pub fn characteristic_number(&self, j: usize) -> &Rat {
        &self.chars[j]
    }

    pub fn characteristic_numbers(&self) -> &[Rat; 6] {
        &self.chars
    }

    /// Expand a parsed expression into `H1, H2` coefficients, eliminating the
    /// exceptional divisors via `E1 = 2H1 - H2` and `E2 = 2H2 - H1`.
    pub fn expand(&self, expr: &ClassExpr) -> Result<ChowClass, ChowError> {
        let Some(first) = expr.terms.first() else {
            return Err(ChowError::EmptyExpression);
        };
        let degree = first.degree() as usize;
        for t in &expr.terms {
            if t.degree() as usize != degree {
                return Err(ChowError::Inhomogeneous {
                    first: degree,
                    second: t.degree() as usize,
                });
            }
        }
        if degree > DIM {
            return Err(ChowError::DegreeTooLarge { degree });
        }
        let e1: Vec<Rat> = vec![rat_int(2), rat_int(-1)];
        let e2: Vec<Rat> = vec![rat_int(-1), rat_int(2)];
        let mut coeffs = vec![Rat::zero(); degree + 1];
        for t in &expr.terms {
            let [a, b, c, d] = t.exponents;
            let mut p = vec![t.coeff.clone()];
            // H1^a stretches the vector without touching the H2 degree.
            let mut h1 = vec![Rat::zero(); a as usize + 1];
            h1[0] = Rat::one();
            let mut h2 = vec![Rat::zero(); b as usize + 1];
            h2[b as usize] = Rat::one();
            p = poly_mul(&p, &h1);
            p = poly_mul(&p, &h2);
            p = poly_mul(&p, &poly_pow(&e1, c));
            p = poly_mul(&p, &poly_pow(&e2, d));
            for (j, v) in p.into_iter().enumerate() {
                coeffs[j] += v;
            }
        }
        Ok(ChowClass {
            codim: degree,
            coeffs,
        })
    }

    /// Parse and expand in one step.
    pub fn class(&self, input: &str) -> Result<ChowClass, ClassError> {
        Ok(self.expand(&parse_class_expression(input)?)?)
    }

    /// The monomial `H1^h1 * H2^h2` as a class.
    pub fn monomial(&self, h1: usize, h2: usize) -> Result<ChowClass, ChowError> {
        let codim = h1 + h2;
        if codim > DIM {
            return Err(ChowError::DegreeTooLarge { degree: codim });
        }
        let mut coeffs = vec![Rat::zero(); codim + 1];
        coeffs[h2] = Rat::one();
        Ok(ChowClass { codim, coeffs })
    }

    /// Product of two classes. Products past codimension five vanish for
    /// dimension reasons, but asking for one is almost always a logic error,
    /// so it is flagged instead of silently returning zero.
    pub fn mul(&self, a: &ChowClass, b: &ChowClass) -> Result<ChowClass, ChowError> {
        let codim = a.codim + b.codim;
        if codim > DIM {
            return Err(ChowError::DegreeTooLarge { degree: codim });
        }
        Ok(ChowClass {
            codim,
            coeffs: poly_mul(&a.coeffs, &b.coeffs),
        })
    }

    /// Degree of a codimension-five class.
    pub fn intersection_number(&self, c: &ChowClass) -> Result<Rat, ChowError> {
        if c.codim != DIM {
            return Err(ChowError::WrongCodim {
                expected: DIM,
                found: c.codim,
            });
        }
        Ok(c.coeffs.iter().zip(&self.chars).map(|(a, b)| a * b).sum())
    }

    /// Intersection number of two classes of complementary codimension.
    pub fn pair(&self, a: &ChowClass, b: &ChowClass) -> Result<Rat, ChowError> {
        if a.codim + b.codim != DIM {
            return Err(ChowError::NotComplementary {
                left: a.codim,
                right: b.codim,
            });
        }
        self.intersection_number(&self.mul(a, b)?)
    }

    /// Pairings of `c` against the complementary monomials
    /// `H1^(5-k-j) H2^j`, `j = 0..=5-k`. Two classes are numerically equal
    /// exactly when their profiles agree.
    pub fn profile(&self, c: &ChowClass) -> Vec<Rat> {
        (0..=DIM - c.codim)
            .map(|j| {
                c.coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v * &self.chars[i + j])
                    .sum()
            })
            .collect()
    }

    /// The `(k+1) x (6-k)` table pairing codimension-`k` monomials against
    /// complementary monomials; entry `(i, j)` is `H1^(5-i-j) H2^(i+j)`.
    pub fn gram_matrix(&self, k: usize) -> Result<QMatrix, ChowError> {
        if k > DIM {
            return Err(ChowError::CodimOutOfRange { codim: k });
        }
        let mut m = QMatrix::zero(k + 1, 6 - k);
        for i in 0..=k {
            for j in 0..6 - k {
                m.set(i, j, self.chars[i + j].clone());
            }
        }
        Ok(m)
    }

    /// The numerical group in codimension `k`.
    pub fn numerical_group(&self, k: usize) -> Result<NumericalGroup, ChowError> {
        let pairing = self.gram_matrix(k)?;
        let kernel = pairing.transpose().kernel_basis();
        Ok(NumericalGroup {
            codim: k,
            dimension: k + 1 - kernel.len(),
            pairing,
            kernel,
        })
    }

    /// Dimension of the numerical group in codimension `k`.
    pub fn group_dimension(&self, k: usize) -> Result<usize, ChowError> {
        Ok(self.gram_matrix(k)?.rank())
    }

    /// Numerical equality: equal pairings against every complementary
    /// monomial. Classes of different codimension cannot be compared.
    pub fn numerically_equal(&self, a: &ChowClass, b: &ChowClass) -> Result<bool, ChowError> {
        if a.codim != b.codim {
            return Err(ChowError::CodimMismatch {
                left: a.codim,
                right: b.codim,
            });
        }
        Ok(self.profile(a) == self.profile(b))
    }

    /// Coordinates of `c` in a spanning set for its numerical group, found by
    /// solving the pairing system against complementary monomials. The basis
    /// must span the group; with an overcomplete set the answer is the
    /// deterministic solution with free coefficients set to zero.
    pub fn coordinates_in_basis(
        &self,
        c: &ChowClass,
        basis: &[ChowClass],
    ) -> Result<Vec<Rat>, ChowError> {
        let k = c.codim;
        for b in basis {
            if b.codim != k {
                return Err(ChowError::WrongCodim {
                    expected: k,
                    found: b.codim,
                });
            }
        }
        let dim = self.group_dimension(k)?;
        let profiles: Vec<Vec<Rat>> = basis.iter().map(|b| self.profile(b)).collect();
        let mut a = QMatrix::zero(6 - k, basis.len());
        for (i, p) in profiles.iter().enumerate() {
            for (j, v) in p.iter().enumerate() {
                a.set(j, i, v.clone());
            }
        }
        let spanned = a.rank();
        if spanned < dim {
            return Err(ChowError::BasisDoesNotSpan {
                count: basis.len(),
                spanned,
                codim: k,
                dim,
            });
        }
        // A spanning set pairs onto the whole profile space, so the system
        // is consistent; the error below is unreachable but kept honest.
        a.solve(&self.profile(c))
            .ok_or(ChowError::BasisDoesNotSpan {
                count: basis.len(),
                spanned,
                codim: k,
                dim,
            })
    }

    /// The first monomials (in the order `H1^k, H1^(k-1)H2, ...`) that are
    /// numerically independent: a deterministic internal basis.
    pub fn echelon_basis(&self, k: usize) -> Result<Vec<ChowClass>, ChowError> {
        if k > DIM {
            return Err(ChowError::CodimOutOfRange { codim: k });
        }
        let dim = self.group_dimension(k)?;
        let mut chosen: Vec<ChowClass> = Vec::new();
        let mut profile_rows: Vec<Vec<Rat>> = Vec::new();
        for j in 0..=k {
            if chosen.len() == dim {
                break;
            }
            let m = self.monomial(k - j, j)?;
            let p = self.profile(&m);
            let mut rows = profile_rows.clone();
            rows.push(p.clone());
            if QMatrix::from_rows(rows.clone())
                .expect("equal lengths")
                .rank()
                > profile_rows.len()
            {
                profile_rows.push(p);
                chosen.push(m);
            }
        }
        Ok(chosen)
    }

    /// The bases used for rendering coordinates in reports, matching the
    /// bases in which the published inequalities are written.
    pub fn rendering_basis(&self, k: usize) -> Result<Vec<(String, ChowClass)>, ChowError> {
        let labels: &[&str] = match k {
            0 => &["1"],
            1 => &["H1", "H2"],
            2 => &["H1^2", "H1*H2", "H2^2"],
            3 => &["H1^2*E1", "H2^2*E2", "H1^3"],
            4 => &["H1^4", "H1^2*H2^2"],
            5 => &["H1^5"],
            _ => return Err(ChowError::CodimOutOfRange { codim: k }),
        };
        Ok(labels
            .iter()
            .map(|&s| {
                (
                    s.to_string(),
                    self.class(s).expect("static basis expressions parse"),
                )
            })
            .collect())
    }

    /// Pairing matrix between two lists of classes of complementary
    /// codimension; entry `(i, j)` pairs `basis_a[i]` with `basis_b[j]`.
    pub fn pairing_matrix(
        &self,
        basis_a: &[ChowClass],
        basis_b: &[ChowClass],
    ) -> Result<QMatrix, ChowError> {
        let mut m = QMatrix::zero(basis_a.len(), basis_b.len());
        for (i, a) in basis_a.iter().enumerate() {
            for (j, b) in basis_b.iter().enumerate() {
                m.set(i, j, self.pair(a, b)?);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn ring() -> ChowRing {
        ChowRing::new()
    }

    fn coeffs(c: &ChowClass) -> Vec<i64> {
        c.coeffs()
            .iter()
            .map(|x| {
                assert!(x.is_integer(), "non-integer coefficient");
                i64::try_from(x.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn expand_eliminates_the_exceptional_divisors() {
        let r = ring();
        let c = r.class("E1*E2").unwrap();
        assert_eq!(c.codim(), 2);
        assert_eq!(coeffs(&c), vec![-2, 5, -2]);

        let zero = r.class("H2 - 2 H1 + E1").unwrap();
        assert_eq!(zero.codim(), 1);
        assert!(zero.is_zero());

        let tau = r.class("(H1+H2)*E1*E2").unwrap();
        assert_eq!(coeffs(&tau), vec![-2, 3, 3, -2]);
    }

    #[test]
    fn expand_rejects_inhomogeneous_and_overdimensional_input() {
        let r = ring();
        assert_eq!(
            r.class("H1 + H1^2").unwrap_err(),
            ClassError::Chow(ChowError::Inhomogeneous {
                first: 1,
                second: 2
            })
        );
        assert_eq!(
            r.class("H1^6").unwrap_err(),
            ClassError::Chow(ChowError::DegreeTooLarge { degree: 6 })
        );
        assert_eq!(
            r.class("H1^3*E1^3").unwrap_err(),
            ClassError::Chow(ChowError::DegreeTooLarge { degree: 6 })
        );
    }

    #[test]
    fn characteristic_numbers_of_the_monomials() {
        let r = ring();
        let expected = [
            ("H1^5", 1),
            ("H1^4*H2", 2),
            ("H1^3*H2^2", 4),
            ("H1^2*H2^3", 4),
            ("H1*H2^4", 2),
            ("H2^5", 1),
        ];
        for (expr, value) in expected {
            let n = r.intersection_number(&r.class(expr).unwrap()).unwrap();
            assert_eq!(n, rat_int(value), "{expr}");
        }
    }

    #[test]
    fn fifth_power_of_the_exceptional_divisor() {
        let r = ring();
        let n = r.intersection_number(&r.class("E1^5").unwrap()).unwrap();
        assert_eq!(n, rat_int(51));
        // The swap symmetry forces the same for E2.
        let n = r.intersection_number(&r.class("E2^5").unwrap()).unwrap();
        assert_eq!(n, rat_int(51));
    }

    #[test]
    fn intersection_number_requires_codimension_five() {
        let r = ring();
        let c = r.class("H1^2").unwrap();
        assert_eq!(
            r.intersection_number(&c).unwrap_err(),
            ChowError::WrongCodim {
                expected: 5,
                found: 2
            }
        );
    }

    #[test]
    fn products_and_pairings_of_the_named_classes() {
        let r = ring();
        let tau = r.class("(H1+H2)*E1*E2").unwrap();
        let h1e1 = r.class("H1*E1").unwrap();
        let e1e2 = r.class("E1*E2").unwrap();

        let product = r.mul(&h1e1, &tau).unwrap();
        assert_eq!(coeffs(&product), vec![-4, 8, 3, -7, 2, 0]);
        assert_eq!(r.pair(&h1e1, &tau).unwrap(), rat_int(0));

        let product = r.mul(&e1e2, &tau).unwrap();
        assert_eq!(coeffs(&product), vec![4, -16, 13, 13, -16, 4]);
        assert_eq!(r.pair(&e1e2, &tau).unwrap(), rat_int(48));

        let h2e2 = r.class("H2*E2").unwrap();
        let h1cubed = r.class("H1^3").unwrap();
        assert_eq!(r.pair(&h2e2, &h1cubed).unwrap(), rat_int(6));

        assert_eq!(
            r.pair(&h1e1, &h2e2).unwrap_err(),
            ChowError::NotComplementary { left: 2, right: 2 }
        );
        assert_eq!(
            r.mul(&tau, &tau).unwrap_err(),
            ChowError::DegreeTooLarge { degree: 6 }
        );
    }

    #[test]
    fn restriction_pairings_via_the_projection_formula() {
        // Intersections inside E1 push forward to ambient products with one
        // factor restricted: sigma = H1 E2 |_E1 and tau' = (H1+H2) E2 |_E1.
        let r = ring();
        let sigma_fwd = r.class("H1*E1*E2").unwrap();
        let xi_fwd = r.class("H2*E1*E2").unwrap();
        let tau_prime_source = r.class("(H1+H2)*E2").unwrap();
        assert_eq!(r.pair(&sigma_fwd, &tau_prime_source).unwrap(), rat_int(24));
        assert_eq!(r.pair(&xi_fwd, &tau_prime_source).unwrap(), rat_int(0));
    }

    #[test]
    fn gram_matrices_and_group_dimensions() {
        let r = ring();
        let g0 = r.gram_matrix(0).unwrap();
        assert_eq!(g0.rows(), 1);
        assert_eq!(g0.row(0).to_vec(), [1, 2, 4, 4, 2, 1].map(rat_int).to_vec());

        let g2 = r.gram_matrix(2).unwrap();
        assert_eq!((g2.rows(), g2.cols()), (3, 4));
        assert_eq!(g2.row(1).to_vec(), [2, 4, 4, 2].map(rat_int).to_vec());

        let dims: Vec<usize> = (0..=5).map(|k| r.group_dimension(k).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 3, 3, 2, 1]);
        assert!(r.gram_matrix(6).is_err());
    }

    #[test]
    fn the_degree_three_relation_spans_the_kernel() {
        let r = ring();
        let g = r.numerical_group(3).unwrap();
        assert_eq!(g.dimension, 3);
        assert_eq!(g.kernel, vec![[2, -3, 3, -2].map(rat_int).to_vec()]);
        let relation = r.class("2*H1^3 - 3*H1^2*H2 + 3*H1*H2^2 - 2*H2^3").unwrap();
        let zero = ChowClass::zero(3).unwrap();
        assert!(r.numerically_equal(&relation, &zero).unwrap());
        assert!(!relation.is_zero(), "nonzero as a polynomial");
    }

    #[test]
    fn numerical_equality_of_the_published_identities() {
        let r = ring();
        let tau = r.class("(H1+H2)*E1*E2").unwrap();
        let two_alpha1 = r.class("2*(4*H1^3 - 3*H1^2*E1)").unwrap();
        assert!(r.numerically_equal(&tau, &two_alpha1).unwrap());

        let alpha2 = r.class("-3*H1^2*E1 + 3*H2^2*E2 + 4*H1^3").unwrap();
        let four_h2_cubed = r.class("4*H2^3").unwrap();
        assert!(r.numerically_equal(&alpha2, &four_h2_cubed).unwrap());

        let h1c = r.class("H1^3").unwrap();
        let h2c = r.class("H2^3").unwrap();
        assert!(!r.numerically_equal(&h1c, &h2c).unwrap());

        let h1 = r.class("H1").unwrap();
        assert_eq!(
            r.numerically_equal(&h1, &h1c).unwrap_err(),
            ChowError::CodimMismatch { left: 1, right: 3 }
        );
    }

    #[test]
    fn coordinates_in_the_rendering_basis() {
        let r = ring();
        let basis: Vec<ChowClass> = r
            .rendering_basis(3)
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        let tau = r.class("(H1+H2)*E1*E2").unwrap();
        assert_eq!(
            r.coordinates_in_basis(&tau, &basis).unwrap(),
            [-6, 0, 8].map(rat_int).to_vec()
        );
        let h1c = r.class("H1^3").unwrap();
        assert_eq!(
            r.coordinates_in_basis(&h1c, &basis).unwrap(),
            [0, 0, 1].map(rat_int).to_vec()
        );
        let h2c = r.class("H2^3").unwrap();
        assert_eq!(
            r.coordinates_in_basis(&h2c, &basis).unwrap(),
            vec![rat(-3, 4), rat(3, 4), rat_int(1)]
        );

        let beta = r.class("H1^2 - H1*H2 + H2^2").unwrap();
        let monomials: Vec<ChowClass> = r
            .rendering_basis(2)
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        assert_eq!(
            r.coordinates_in_basis(&beta, &monomials).unwrap(),
            [1, -1, 1].map(rat_int).to_vec()
        );

        // A rank-deficient set is rejected.
        let bad = vec![h1c.clone(), h1c.scale(&rat_int(2))];
        assert!(matches!(
            r.coordinates_in_basis(&tau, &bad).unwrap_err(),
            ChowError::BasisDoesNotSpan { spanned: 1, .. }
        ));
    }

    #[test]
    fn echelon_bases_skip_numerically_dependent_monomials() {
        let r = ring();
        let names = |k: usize| -> Vec<String> {
            r.echelon_basis(k)
                .unwrap()
                .iter()
                .map(ChowClass::to_expression_string)
                .collect()
        };
        assert_eq!(names(3), vec!["H1^3", "H1^2*H2", "H1*H2^2"]);
        // H1^3*H2 pairs proportionally to H1^4 and is skipped.
        assert_eq!(names(4), vec!["H1^4", "H1^2*H2^2"]);
        assert_eq!(names(0), vec!["1"]);
    }

    #[test]
    fn swap_symmetry_of_the_pairing() {
        let r = ring();
        let a = r.class("H1*E1").unwrap();
        let b = r.class("(H1+H2)*E1*E2").unwrap();
        assert_eq!(
            r.pair(&a.swap(), &b.swap()).unwrap(),
            r.pair(&a, &b).unwrap()
        );
        assert_eq!(b.swap(), b, "tau is swap-invariant");
        let e1 = r.class("E1").unwrap();
        let e2 = r.class("E2").unwrap();
        assert_eq!(e1.swap(), e2);
    }

    #[test]
    fn expression_strings_round_trip() {
        let r = ring();
        for expr in [
            "(H1+H2)*E1*E2",
            "E1*E2",
            "H1^2 - H1*H2 + H2^2",
            "1/2 H1^4 - 7 H1^2*H2^2",
            "H1*E1 - H1*E1",
            "3/4",
        ] {
            let c = r.class(expr).unwrap();
            let rendered = c.to_expression_string();
            let back = r.class(&rendered).unwrap();
            assert_eq!(back, c, "{expr} -> {rendered}");
        }
        let zero2 = ChowClass::zero(2).unwrap();
        assert_eq!(zero2.to_expression_string(), "0*H1^2");
        assert_eq!(r.class("0*H1^2").unwrap(), zero2);
    }

    #[test]
    fn corrupted_characteristic_numbers_change_the_answers() {
        let r = ChowRing::with_characteristic_numbers([1, 2, 4, 4, 2, 2]);
        let n = r.intersection_number(&r.class("H2^5").unwrap()).unwrap();
        assert_eq!(n, rat_int(2));
    }
}
