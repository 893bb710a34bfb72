//! Cubic element operators built stage by stage.
//!
//! For p = 3 this module derives a structure-preserving change of basis `T`
//! together with a sparse companion matrix `L` that reproduces every mass
//! moment against test functions of degree <= 2. `L` is block lower
//! triangular over the stages vertex, first edge mode, second edge mode,
//! interior, so a projection in the transformed basis reduces to four sweeps
//! of substitutions and diagonal divisions. All arithmetic on the main route
//! is rational; an independent floating-point route goes through quadrature
//! and is compared against it in the tests, never merged with it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::changebasis::{structure, ChangeOfBasis, EntryRule, ExactChangeOfBasis};
use crate::dubiner::{dim, low_degree_positions, triangle_rule, Edge, ReferenceBasis, Vertex};
use crate::exact::{mass_matrix_exact, rat, rat_identity, rat_solve, rat_to_f64, Rat, RatMat};
use crate::linalg::Mat;
use crate::{BasisOrdering, Error, Result};

/// The construction is specific to cubics.
pub const DEGREE: usize = 3;
const N: usize = 10;
const INTERIOR: usize = 9;

const ORDERING: BasisOrdering = BasisOrdering::ModeMajor;

fn vpos(v: Vertex) -> usize {
    v.index()
}

/// Column of an edge function in the mode-major cubic layout.
fn epos(edge: Edge, mode: usize) -> usize {
    debug_assert!(mode == 1 || mode == 2);
    3 + 3 * (mode - 1) + edge.index()
}

/// Coefficients of an `L` row belonging to a first edge mode. The same four
/// values must come out of all three edges; the construction checks this.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeModeOneCoeffs {
    /// At the vertex opposite the edge.
    pub opposite: Rat,
    /// At the vertex the edge starts from (counterclockwise).
    pub start: Rat,
    /// At the vertex the edge ends at.
    pub end: Rat,
    pub diag: Rat,
}

/// Coefficients of an `L` row belonging to a second edge mode, again shared
/// by all three edges. The diagonal is not solved for; it is the free
/// parameter of the construction.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeModeTwoCoeffs {
    pub opposite: Rat,
    pub start: Rat,
    pub end: Rat,
    /// At the first mode of the next edge counterclockwise.
    pub next_mode_one: Rat,
    /// At the first mode of the previous edge.
    pub prev_mode_one: Rat,
}

/// Every solved coefficient that is provably shared between rows.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedCoefficients {
    /// Diagonal of the three vertex rows of `L`.
    pub vertex_diag: Rat,
    pub mode_one: EdgeModeOneCoeffs,
    pub mode_two: EdgeModeTwoCoeffs,
}

/// Result of the staged derivation, exact.
#[derive(Debug, Clone)]
pub struct Construction {
    l: RatMat,
    t: RatMat,
    coeffs: NamedCoefficients,
    interior_mode_two: [Rat; 3],
    e2: Rat,
}

impl Construction {
    pub fn p(&self) -> usize {
        DEGREE
    }

    pub fn ordering(&self) -> BasisOrdering {
        ORDERING
    }

    /// The sparse moment matrix; row i, column j couples transformed
    /// function i to transformed function j, stages strictly ordered.
    pub fn l(&self) -> &RatMat {
        &self.l
    }

    /// The change of basis; row i gives transformed function i in terms of
    /// the modal functions.
    pub fn t(&self) -> &RatMat {
        &self.t
    }

    pub fn coefficients(&self) -> &NamedCoefficients {
        &self.coeffs
    }

    /// Entries of the interior row of `L` at the three second-mode columns.
    /// They come out of the final matrix product rather than a prescribed
    /// sparsity pattern, so they are reported instead of being assumed zero.
    pub fn interior_mode_two_couplings(&self) -> &[Rat; 3] {
        &self.interior_mode_two
    }

    /// The chosen second-mode diagonal of `L`.
    pub fn mode_two_diag(&self) -> &Rat {
        &self.e2
    }

    pub fn transform(&self) -> Result<ExactChangeOfBasis> {
        ExactChangeOfBasis::new(DEGREE, ORDERING, self.t.clone())
    }

    pub fn to_operators(&self) -> ElementOperators {
        ElementOperators {
            l: Mat::from_fn(N, N, |i, j| rat_to_f64(&self.l[i][j])),
            t: Mat::from_fn(N, N, |i, j| rat_to_f64(&self.t[i][j])),
        }
    }
}

/// Floating-point element matrices, either converted from an exact
/// [`Construction`] or built independently by [`construct_float`].
#[derive(Debug, Clone)]
pub struct ElementOperators {
    pub l: Mat,
    pub t: Mat,
}

/// Stage one for general degree: the three vertex rows of `T` and the
/// shared vertex diagonal of `L`.
#[derive(Debug, Clone)]
pub struct VertexRows {
    pub p: usize,
    /// Full rows of `T`, length dim(p).
    pub rows: [Vec<Rat>; 3],
    pub vertex_diag: Rat,
}

/// Solves the vertex stage alone at degree p. Counting shows the linear
/// system for each vertex row is square: 2(p-1) adjacent edge modes plus
/// (p-1)(p-2)/2 bubbles plus the diagonal unknown equals dim(p-1).
pub fn solve_vertex_rows(p: usize) -> Result<VertexRows> {
    crate::dubiner::check_degree(p, 2, 9)?;
    let m = mass_matrix_exact(p, ORDERING);
    vertex_rows_from_mass(&m, p)
}

fn vertex_rows_from_mass(m: &RatMat, p: usize) -> Result<VertexRows> {
    let rules = structure(p, ORDERING);
    let mu = low_degree_positions(p, ORDERING);
    let n = dim(p);
    let mut rows: [Vec<Rat>; 3] = [
        vec![Rat::zero(); n],
        vec![Rat::zero(); n],
        vec![Rat::zero(); n],
    ];
    let mut diags: Vec<Rat> = Vec::with_capacity(3);
    for v in 0..3 {
        let free: Vec<usize> = (0..n).filter(|&j| rules[v][j] == EntryRule::Free).collect();
        if free.len() + 1 != mu.len() {
            return Err(Error::ConstructionCheck {
                what: format!(
                    "vertex stage is not square at p = {p}: {} unknowns, {} equations",
                    free.len() + 1,
                    mu.len()
                ),
            });
        }
        let k = mu.len();
        let mut a = vec![vec![Rat::zero(); k]; k];
        let mut rhs = vec![Rat::zero(); k];
        for (ei, &i) in mu.iter().enumerate() {
            for (ci, &c) in free.iter().enumerate() {
                a[ei][ci] = m[c][i].clone();
            }
            if i == v {
                a[ei][k - 1] = -Rat::one();
            }
            rhs[ei] = -m[v][i].clone();
        }
        let sol = rat_solve(&a, &rhs, "vertex stage")?;
        rows[v][v] = Rat::one();
        for (ci, &c) in free.iter().enumerate() {
            rows[v][c] = sol[ci].clone();
        }
        diags.push(sol[k - 1].clone());
    }
    if diags[1] != diags[0] || diags[2] != diags[0] {
        return Err(Error::ConstructionCheck {
            what: format!("vertex diagonal differs between rows at p = {p}"),
        });
    }
    Ok(VertexRows {
        p,
        rows,
        vertex_diag: diags[0].clone(),
    })
}

struct ModeOneRow {
    coeffs: EdgeModeOneCoeffs,
    /// `T` entry at the same edge's second mode.
    t_mode_two: Rat,
    /// `T` entry at the interior column.
    t_interior: Rat,
}

/// One first-mode row. `tinv` must invert the transform with the vertex
/// stage already in place; the columns this reads are unaffected by the
/// other first-mode rows, so the three edges can be solved in any order.
fn solve_mode_one_row(m: &RatMat, tinv: &RatMat, mu: &[usize], edge: Edge) -> Result<ModeOneRow> {
    let row = epos(edge, 1);
    let o = vpos(edge.opposite());
    let st = vpos(edge.start());
    let en = vpos(edge.end());
    let own2 = epos(edge, 2);
    let k = mu.len();
    let mut a = vec![vec![Rat::zero(); k]; k];
    let mut rhs = vec![Rat::zero(); k];
    for (ei, &i) in mu.iter().enumerate() {
        a[ei][0] = tinv[i][o].clone();
        a[ei][1] = tinv[i][st].clone();
        a[ei][2] = tinv[i][en].clone();
        a[ei][3] = tinv[i][row].clone();
        a[ei][4] = -m[own2][i].clone();
        a[ei][5] = -m[INTERIOR][i].clone();
        rhs[ei] = m[row][i].clone();
    }
    let sol = rat_solve(&a, &rhs, "first edge mode stage")?;
    Ok(ModeOneRow {
        coeffs: EdgeModeOneCoeffs {
            opposite: sol[0].clone(),
            start: sol[1].clone(),
            end: sol[2].clone(),
            diag: sol[3].clone(),
        },
        t_mode_two: sol[4].clone(),
        t_interior: sol[5].clone(),
    })
}

struct ModeTwoRow {
    coeffs: EdgeModeTwoCoeffs,
    t_interior: Rat,
}

/// One second-mode row, with the diagonal of `L` fixed to `e2` instead of
/// solved. `tinv` must invert the transform with the first two stages in
/// place.
fn solve_mode_two_row(
    m: &RatMat,
    tinv: &RatMat,
    mu: &[usize],
    edge: Edge,
    e2: &Rat,
) -> Result<ModeTwoRow> {
    let row = epos(edge, 2);
    let o = vpos(edge.opposite());
    let st = vpos(edge.start());
    let en = vpos(edge.end());
    let np = epos(edge.next(), 1);
    let pp = epos(edge.prev(), 1);
    let k = mu.len();
    let mut a = vec![vec![Rat::zero(); k]; k];
    let mut rhs = vec![Rat::zero(); k];
    for (ei, &i) in mu.iter().enumerate() {
        a[ei][0] = tinv[i][o].clone();
        a[ei][1] = tinv[i][st].clone();
        a[ei][2] = tinv[i][en].clone();
        a[ei][3] = tinv[i][np].clone();
        a[ei][4] = tinv[i][pp].clone();
        a[ei][5] = -m[INTERIOR][i].clone();
        rhs[ei] = m[row][i].clone() - e2.clone() * tinv[i][row].clone();
    }
    let sol = rat_solve(&a, &rhs, "second edge mode stage")?;
    Ok(ModeTwoRow {
        coeffs: EdgeModeTwoCoeffs {
            opposite: sol[0].clone(),
            start: sol[1].clone(),
            end: sol[2].clone(),
            next_mode_one: sol[3].clone(),
            prev_mode_one: sol[4].clone(),
        },
        t_interior: sol[5].clone(),
    })
}

/// Full staged derivation with the standard second-mode diagonal of one.
pub fn construct_standard() -> Result<Construction> {
    construct(Rat::one())
}

/// Full staged derivation. `e2` is the free diagonal of the second-mode
/// rows of `L`; everything downstream of those rows shifts with it.
pub fn construct(e2: Rat) -> Result<Construction> {
    construct_with_edge_order(e2, Edge::ALL, Edge::ALL)
}

/// Same derivation with the per-stage edge order made explicit. Any order
/// must give the same matrices; the tests exercise this.
pub fn construct_with_edge_order(
    e2: Rat,
    mode_one_order: [Edge; 3],
    mode_two_order: [Edge; 3],
) -> Result<Construction> {
    if e2.is_zero() {
        return Err(Error::SingularSystem {
            context: alloc::string::String::from("second-mode diagonal of L is zero"),
        });
    }
    let m = mass_matrix_exact(DEGREE, ORDERING);
    let mu = low_degree_positions(DEGREE, ORDERING);
    let mut l = vec![vec![Rat::zero(); N]; N];
    let mut t = rat_identity(N);

    // vertex stage
    let vertex = vertex_rows_from_mass(&m, DEGREE)?;
    for v in 0..3 {
        t[v] = vertex.rows[v].clone();
        l[v][v] = vertex.vertex_diag.clone();
    }

    // first edge modes; one inverse snapshot serves all three rows
    let tinv = ExactChangeOfBasis::new(DEGREE, ORDERING, t.clone())?.block_inverse()?;
    let mut mode_one: Option<EdgeModeOneCoeffs> = None;
    for edge in mode_one_order {
        let row = epos(edge, 1);
        let sol = solve_mode_one_row(&m, &tinv, &mu, edge)?;
        match &mode_one {
            None => mode_one = Some(sol.coeffs.clone()),
            Some(shared) if *shared == sol.coeffs => {}
            Some(_) => {
                return Err(Error::ConstructionCheck {
                    what: format!("first-mode coefficients differ at {edge:?}"),
                });
            }
        }
        l[row][vpos(edge.opposite())] = sol.coeffs.opposite.clone();
        l[row][vpos(edge.start())] = sol.coeffs.start.clone();
        l[row][vpos(edge.end())] = sol.coeffs.end.clone();
        l[row][row] = sol.coeffs.diag.clone();
        t[row][epos(edge, 2)] = sol.t_mode_two;
        t[row][INTERIOR] = sol.t_interior;
    }
    let mode_one = mode_one.unwrap();

    // second edge modes, after refreshing the inverse
    let tinv = ExactChangeOfBasis::new(DEGREE, ORDERING, t.clone())?.block_inverse()?;
    let mut mode_two: Option<EdgeModeTwoCoeffs> = None;
    for edge in mode_two_order {
        let row = epos(edge, 2);
        let sol = solve_mode_two_row(&m, &tinv, &mu, edge, &e2)?;
        match &mode_two {
            None => mode_two = Some(sol.coeffs.clone()),
            Some(shared) if *shared == sol.coeffs => {}
            Some(_) => {
                return Err(Error::ConstructionCheck {
                    what: format!("second-mode coefficients differ at {edge:?}"),
                });
            }
        }
        l[row][vpos(edge.opposite())] = sol.coeffs.opposite.clone();
        l[row][vpos(edge.start())] = sol.coeffs.start.clone();
        l[row][vpos(edge.end())] = sol.coeffs.end.clone();
        l[row][epos(edge.next(), 1)] = sol.coeffs.next_mode_one.clone();
        l[row][epos(edge.prev(), 1)] = sol.coeffs.prev_mode_one.clone();
        l[row][row] = e2.clone();
        t[row][INTERIOR] = sol.t_interior;
    }
    let mode_two = mode_two.unwrap();

    // interior row: the matching row of T M T^t, taken as is
    for j in 0..N {
        let mut acc = Rat::zero();
        for b in 0..N {
            if !t[j][b].is_zero() && !m[INTERIOR][b].is_zero() {
                acc += t[j][b].clone() * m[INTERIOR][b].clone();
            }
        }
        l[INTERIOR][j] = acc;
    }
    let interior_mode_two = [
        l[INTERIOR][epos(Edge::Bottom, 2)].clone(),
        l[INTERIOR][epos(Edge::Hypotenuse, 2)].clone(),
        l[INTERIOR][epos(Edge::Left, 2)].clone(),
    ];

    let transform = ExactChangeOfBasis::new(DEGREE, ORDERING, t.clone())?;
    let tinv = transform.block_inverse()?;
    verify_moments(&l, &t, &m, &mu, &tinv)?;

    Ok(Construction {
        l,
        t,
        coeffs: NamedCoefficients {
            vertex_diag: vertex.vertex_diag,
            mode_one,
            mode_two,
        },
        interior_mode_two,
        e2,
    })
}

/// The defining property, checked exactly: for every low-degree function i
/// and every row j, sum_c L[j][c] Tinv[i][c] equals sum_b T[j][b] M[b][i].
fn verify_moments(l: &RatMat, t: &RatMat, m: &RatMat, mu: &[usize], tinv: &RatMat) -> Result<()> {
    for &i in mu {
        for j in 0..N {
            let mut lhs = Rat::zero();
            for c in 0..N {
                if !l[j][c].is_zero() {
                    lhs += l[j][c].clone() * tinv[i][c].clone();
                }
            }
            let mut rhs = Rat::zero();
            for b in 0..N {
                if !t[j][b].is_zero() {
                    rhs += t[j][b].clone() * m[b][i].clone();
                }
            }
            if lhs != rhs {
                return Err(Error::ConstructionCheck {
                    what: format!("moment equation failed at row {j}, function {i}"),
                });
            }
        }
    }
    Ok(())
}

/// Independent derivation in floating point: quadrature mass matrix, LU
/// solves, float block inverses. Shares no intermediate values with
/// [`construct`]; agreement between the two is a meaningful check.
pub fn construct_float(e2: f64) -> Result<ElementOperators> {
    if e2 == 0.0 {
        return Err(Error::SingularSystem {
            context: alloc::string::String::from("second-mode diagonal of L is zero"),
        });
    }
    let basis = ReferenceBasis::with_ordering(DEGREE, ORDERING)?;
    let m = basis.mass_matrix(&triangle_rule(DEGREE + 2)?)?;
    let rules = structure(DEGREE, ORDERING);
    let mu = low_degree_positions(DEGREE, ORDERING);
    let k = mu.len();
    let mut l = Mat::zeros(N, N);
    let mut t = Mat::identity(N);

    // vertex stage
    let mut diag = f64::NAN;
    for v in 0..3 {
        let free: Vec<usize> = (0..N).filter(|&j| rules[v][j] == EntryRule::Free).collect();
        let mut a = Mat::zeros(k, k);
        let mut rhs = vec![0.0; k];
        for (ei, &i) in mu.iter().enumerate() {
            for (ci, &c) in free.iter().enumerate() {
                a[(ei, ci)] = m[(c, i)];
            }
            if i == v {
                a[(ei, k - 1)] = -1.0;
            }
            rhs[ei] = -m[(v, i)];
        }
        let sol = a.solve(&rhs)?;
        for (ci, &c) in free.iter().enumerate() {
            t[(v, c)] = sol[ci];
        }
        l[(v, v)] = sol[k - 1];
        if v == 0 {
            diag = sol[k - 1];
        } else if crate::math::abs(sol[k - 1] - diag) > FLOAT_CHECK_TOL {
            return Err(Error::ConstructionCheck {
                what: format!("vertex diagonals disagree in the float route at vertex {v}"),
            });
        }
    }

    // first edge modes
    let tinv = ChangeOfBasis::new(DEGREE, ORDERING, t.clone())?.block_inverse()?;
    for edge in Edge::ALL {
        let row = epos(edge, 1);
        let mut a = Mat::zeros(k, k);
        let mut rhs = vec![0.0; k];
        for (ei, &i) in mu.iter().enumerate() {
            a[(ei, 0)] = tinv[(i, vpos(edge.opposite()))];
            a[(ei, 1)] = tinv[(i, vpos(edge.start()))];
            a[(ei, 2)] = tinv[(i, vpos(edge.end()))];
            a[(ei, 3)] = tinv[(i, row)];
            a[(ei, 4)] = -m[(epos(edge, 2), i)];
            a[(ei, 5)] = -m[(INTERIOR, i)];
            rhs[ei] = m[(row, i)];
        }
        let sol = a.solve(&rhs)?;
        l[(row, vpos(edge.opposite()))] = sol[0];
        l[(row, vpos(edge.start()))] = sol[1];
        l[(row, vpos(edge.end()))] = sol[2];
        l[(row, row)] = sol[3];
        t[(row, epos(edge, 2))] = sol[4];
        t[(row, INTERIOR)] = sol[5];
    }

    // second edge modes
    let tinv = ChangeOfBasis::new(DEGREE, ORDERING, t.clone())?.block_inverse()?;
    for edge in Edge::ALL {
        let row = epos(edge, 2);
        let mut a = Mat::zeros(k, k);
        let mut rhs = vec![0.0; k];
        for (ei, &i) in mu.iter().enumerate() {
            a[(ei, 0)] = tinv[(i, vpos(edge.opposite()))];
            a[(ei, 1)] = tinv[(i, vpos(edge.start()))];
            a[(ei, 2)] = tinv[(i, vpos(edge.end()))];
            a[(ei, 3)] = tinv[(i, epos(edge.next(), 1))];
            a[(ei, 4)] = tinv[(i, epos(edge.prev(), 1))];
            a[(ei, 5)] = -m[(INTERIOR, i)];
            rhs[ei] = m[(row, i)] - e2 * tinv[(i, row)];
        }
        let sol = a.solve(&rhs)?;
        l[(row, vpos(edge.opposite()))] = sol[0];
        l[(row, vpos(edge.start()))] = sol[1];
        l[(row, vpos(edge.end()))] = sol[2];
        l[(row, epos(edge.next(), 1))] = sol[3];
        l[(row, epos(edge.prev(), 1))] = sol[4];
        l[(row, row)] = e2;
        t[(row, INTERIOR)] = sol[5];
    }

    // interior row
    for j in 0..N {
        let mut acc = 0.0;
        for b in 0..N {
            acc += t[(j, b)] * m[(INTERIOR, b)];
        }
        l[(INTERIOR, j)] = acc;
    }

    let tinv = ChangeOfBasis::new(DEGREE, ORDERING, t.clone())?.block_inverse()?;
    for &i in &mu {
        for j in 0..N {
            let mut lhs = 0.0;
            let mut rhs = 0.0;
            for c in 0..N {
                lhs += l[(j, c)] * tinv[(i, c)];
                rhs += t[(j, c)] * m[(c, i)];
            }
            if crate::math::abs(lhs - rhs) > FLOAT_CHECK_TOL {
                return Err(Error::ConstructionCheck {
                    what: format!("float moment equation failed at row {j}, function {i}"),
                });
            }
        }
    }

    Ok(ElementOperators { l, t })
}

const FLOAT_CHECK_TOL: f64 = 1e-9;

fn embed(table: &[[(i64, i64); N]; N]) -> RatMat {
    table
        .iter()
        .map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect())
        .collect()
}

/// The known closed form of `L` at the standard second-mode diagonal.
pub fn reference_l() -> RatMat {
    const TABLE: [[(i64, i64); N]; N] = [
        [(1, 30), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
        [(0, 1), (1, 30), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
        [(0, 1), (0, 1), (1, 30), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
        [
            (-1, 180),
            (1, 360),
            (1, 360),
            (1, 90),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
        ],
        [
            (1, 360),
            (-1, 180),
            (1, 360),
            (0, 1),
            (1, 90),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
        ],
        [
            (1, 360),
            (1, 360),
            (-1, 180),
            (0, 1),
            (0, 1),
            (1, 90),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
        ],
        [
            (0, 1),
            (157, 280),
            (-157, 280),
            (0, 1),
            (1, 210),
            (-1, 210),
            (1, 1),
            (0, 1),
            (0, 1),
            (0, 1),
        ],
        [
            (-157, 280),
            (0, 1),
            (157, 280),
            (-1, 210),
            (0, 1),
            (1, 210),
            (0, 1),
            (1, 1),
            (0, 1),
            (0, 1),
        ],
        [
            (157, 280),
            (-157, 280),
            (0, 1),
            (1, 210),
            (-1, 210),
            (0, 1),
            (0, 1),
            (0, 1),
            (1, 1),
            (0, 1),
        ],
        [
            (-1, 2520),
            (-1, 2520),
            (-1, 2520),
            (1, 2520),
            (1, 2520),
            (1, 2520),
            (0, 1),
            (0, 1),
            (0, 1),
            (1, 1260),
        ],
    ];
    embed(&TABLE)
}

/// The known closed form of `T` at the standard second-mode diagonal.
pub fn reference_t() -> RatMat {
    const TABLE: [[(i64, i64); N]; N] = [
        [
            (1, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (-9, 4),
            (-9, 4),
            (0, 1),
            (-7, 12),
            (7, 12),
            (0, 1),
        ],
        [
            (0, 1),
            (1, 1),
            (0, 1),
            (-9, 4),
            (0, 1),
            (-9, 4),
            (7, 12),
            (0, 1),
            (-7, 12),
            (21, 4),
        ],
        [
            (0, 1),
            (0, 1),
            (1, 1),
            (-9, 4),
            (-9, 4),
            (0, 1),
            (-7, 12),
            (7, 12),
            (0, 1),
            (21, 4),
        ],
        [(0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (-7, 2)],
        [(0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (-7, 2)],
        [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (0, 1), (-7, 2)],
        [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (0, 1)],
        [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (3, 1)],
        [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (-3, 1)],
        [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1)],
    ];
    embed(&TABLE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    #[test]
    fn vertex_diagonal_is_one_thirtieth() {
        let vr = solve_vertex_rows(3).unwrap();
        assert_eq!(vr.vertex_diag, rat(1, 30));
        let reference = reference_t();
        for v in 0..3 {
            assert_eq!(vr.rows[v], reference[v], "vertex row {v}");
        }
    }

    #[test]
    fn vertex_stage_solves_for_low_degrees() {
        for p in 2..=6 {
            let vr = solve_vertex_rows(p).unwrap();
            assert!(!vr.vertex_diag.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn standard_construction_matches_reference() {
        let c = construct_standard().unwrap();
        assert_eq!(c.l(), &reference_l());
        assert_eq!(c.t(), &reference_t());
        let nc = c.coefficients();
        assert_eq!(nc.vertex_diag, rat(1, 30));
        assert_eq!(nc.mode_one.opposite, rat(-1, 180));
        assert_eq!(nc.mode_one.start, rat(1, 360));
        assert_eq!(nc.mode_one.end, rat(1, 360));
        assert_eq!(nc.mode_one.diag, rat(1, 90));
        assert_eq!(nc.mode_two.opposite, rat_int(0));
        assert_eq!(nc.mode_two.start, rat(157, 280));
        assert_eq!(nc.mode_two.end, rat(-157, 280));
        assert_eq!(nc.mode_two.next_mode_one, rat(1, 210));
        assert_eq!(nc.mode_two.prev_mode_one, rat(-1, 210));
        // the interior row happens to decouple from the second modes
        assert_eq!(c.interior_mode_two_couplings(), &[Rat::zero(), Rat::zero(), Rat::zero()]);
    }

    #[test]
    fn float_route_agrees_with_exact_route() {
        let exact = construct_standard().unwrap().to_operators();
        let float = construct_float(1.0).unwrap();
        assert!(exact.l.max_abs_diff(&float.l) < 1e-12);
        assert!(exact.t.max_abs_diff(&float.t) < 1e-12);
    }

    #[test]
    fn edge_order_does_not_matter() {
        let base = construct_standard().unwrap();
        let orders = [
            [Edge::Left, Edge::Bottom, Edge::Hypotenuse],
            [Edge::Hypotenuse, Edge::Left, Edge::Bottom],
        ];
        for o1 in orders {
            for o2 in orders {
                let c = construct_with_edge_order(Rat::one(), o1, o2).unwrap();
                assert_eq!(c.l(), base.l());
                assert_eq!(c.t(), base.t());
            }
        }
    }

    #[test]
    fn nonstandard_diagonal_shifts_only_late_stages() {
        let c = construct(rat_int(2)).unwrap();
        let rl = reference_l();
        let rt = reference_t();
        for row in 0..6 {
            assert_eq!(c.l()[row], rl[row], "L row {row}");
            assert_eq!(c.t()[row], rt[row], "T row {row}");
        }
        for edge in Edge::ALL {
            let row = epos(edge, 2);
            assert_eq!(c.l()[row][row], rat_int(2));
        }
        assert!(construct(Rat::zero()).is_err());
    }
}
