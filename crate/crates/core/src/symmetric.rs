//! Symmetric functions of a root list and Vandermonde determinants.
//!
//! `e_k` are the elementary symmetric polynomials and `h_l` (also written
//! `S_l`) the complete homogeneous ones, both evaluated at field elements.
//! They are linked by `Σ_{i=0..min(l,q)} (-1)^i e_i h_{l-i} = 0` for `l ≥ 1`,
//! which is how [`complete_homogeneous`] computes `h_l`; the brute-force
//! monomial sum [`complete_homogeneous_direct`] is kept as its oracle.

use crate::field::Field;
use crate::poly::AlgebraError;

/// Largest multiset count [`complete_homogeneous_direct`] will enumerate.
pub const DIRECT_ENUMERATION_BUDGET: u128 = 1_000_000;

/// Matrices at most this size use cofactor expansion in [`determinant_exact`].
pub const COFACTOR_MAX_DIM: usize = 4;

/// `e_0..e_q` for the given roots, with `e_0 = 1`.
pub fn elementary_from_roots<F: Field>(roots: &[F]) -> Vec<F> {
    // Coefficients of Π (1 + a x), grown one root at a time.
    let mut e = vec![F::one()];
    for a in roots {
        e.push(F::zero());
        for k in (1..e.len()).rev() {
            e[k] = e[k].clone() + a.clone() * e[k - 1].clone();
        }
    }
    e
}

/// Elementary and complete homogeneous values of one root list, `h` up to depth `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTable<F: Field> {
    pub e: Vec<F>,
    pub h: Vec<F>,
}

impl<F: Field> SymTable<F> {
    pub fn new(roots: &[F], depth: usize) -> Self {
        let e = elementary_from_roots(roots);
        let q = roots.len();
        let mut h = Vec::with_capacity(depth + 1);
        h.push(F::one());
        for l in 1..=depth {
            let mut acc = F::zero();
            for i in 1..=l.min(q) {
                let term = e[i].clone() * h[l - i].clone();
                acc = if i % 2 == 1 { acc + term } else { acc - term };
            }
            h.push(acc);
        }
        SymTable { e, h }
    }

    pub fn q(&self) -> usize {
        self.e.len() - 1
    }

    pub fn depth(&self) -> usize {
        self.h.len() - 1
    }

    /// Checks `Σ (-1)^i e_i h_{l-i} = 0` for every `1 ≤ l ≤ L`.
    pub fn newton_relation_holds(&self) -> bool {
        (1..=self.depth()).all(|l| {
            let mut acc = F::zero();
            for i in 0..=l.min(self.q()) {
                let term = self.e[i].clone() * self.h[l - i].clone();
                acc = if i % 2 == 0 { acc + term } else { acc - term };
            }
            acc.is_zero()
        })
    }
}

/// `h_l(roots)` by the elementary/complete recurrence.
pub fn complete_homogeneous<F: Field>(roots: &[F], l: usize) -> F {
    SymTable::new(roots, l).h.pop().expect("table has depth l")
}

fn multiset_count(n: usize, l: usize) -> u128 {
    // C(n + l - 1, l)
    if n == 0 {
        return u128::from(l == 0);
    }
    let mut c: u128 = 1;
    for i in 0..l as u128 {
        c = c * (n as u128 + i) / (i + 1);
        if c > u128::MAX / 1024 {
            return u128::MAX;
        }
    }
    c
}

/// `h_l(roots)` as the literal sum over weakly increasing index tuples
/// `i_1 ≤ … ≤ i_l` of `x_{i_1}···x_{i_l}`.
pub fn complete_homogeneous_direct<F: Field>(roots: &[F], l: usize) -> Result<F, AlgebraError> {
    let count = multiset_count(roots.len(), l);
    if count > DIRECT_ENUMERATION_BUDGET {
        return Err(AlgebraError::EnumerationBudget {
            count,
            budget: DIRECT_ENUMERATION_BUDGET,
        });
    }
    fn walk<F: Field>(roots: &[F], start: usize, left: usize, prefix: F, acc: &mut F) {
        if left == 0 {
            *acc = acc.clone() + prefix;
            return;
        }
        for i in start..roots.len() {
            walk(roots, i, left - 1, prefix.clone() * roots[i].clone(), acc);
        }
    }
    let mut acc = F::zero();
    walk(roots, 0, l, F::one(), &mut acc);
    Ok(acc)
}

/// `Π_{i<j} (x_j - x_i)`.
pub fn vandermonde_product<F: Field>(points: &[F]) -> F {
    let mut acc = F::one();
    for j in 0..points.len() {
        for i in 0..j {
            acc = acc * (points[j].clone() - points[i].clone());
        }
    }
    acc
}

fn check_square<F>(matrix: &[Vec<F>]) -> Result<usize, AlgebraError> {
    let n = matrix.len();
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(AlgebraError::NonSquare { row, len: r.len(), expected: n });
        }
    }
    Ok(n)
}

/// Exact determinant: cofactor expansion up to 4×4, fraction-free
/// elimination above.
pub fn determinant_exact<F: Field>(matrix: &[Vec<F>]) -> Result<F, AlgebraError> {
    let n = check_square(matrix)?;
    if n <= COFACTOR_MAX_DIM {
        determinant_cofactor(matrix)
    } else {
        determinant_bareiss(matrix)
    }
}

/// Laplace expansion along the first row.
pub fn determinant_cofactor<F: Field>(matrix: &[Vec<F>]) -> Result<F, AlgebraError> {
    let n = check_square(matrix)?;
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor_rec(matrix, 0, &cols))
}

fn cofactor_rec<F: Field>(m: &[Vec<F>], row: usize, cols: &[usize]) -> F {
    match cols.len() {
        0 => F::one(),
        1 => m[row][cols[0]].clone(),
        _ => {
            let mut acc = F::zero();
            for (k, &c) in cols.iter().enumerate() {
                let entry = &m[row][c];
                if entry.is_zero() {
                    continue;
                }
                let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = entry.clone() * cofactor_rec(m, row + 1, &minor_cols);
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Bareiss fraction-free elimination with row pivoting.
pub fn determinant_bareiss<F: Field>(matrix: &[Vec<F>]) -> Result<F, AlgebraError> {
    let n = check_square(matrix)?;
    if n == 0 {
        return Ok(F::one());
    }
    let mut m: Vec<Vec<F>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = F::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(F::zero()),
            }
        }
        let prev_inv = prev.inv().expect("Bareiss pivots are nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num * prev_inv.clone();
            }
            m[i][k] = F::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Rows `(1, x, …, x^{n-1})`.
pub fn vandermonde_matrix<F: Field>(points: &[F]) -> Vec<Vec<F>> {
    let exps: Vec<u32> = (0..points.len() as u32).collect();
    power_matrix(points, &exps)
}

/// Rows `(1, x, …, x^{n-2}, x^{n-1+l})`: the Vandermonde matrix with the top
/// exponent raised by `l`.
pub fn generalized_vandermonde_matrix<F: Field>(points: &[F], l: u32) -> Vec<Vec<F>> {
    let n = points.len() as u32;
    let exps: Vec<u32> = (0..n)
        .map(|j| if j + 1 == n { j + l } else { j })
        .collect();
    power_matrix(points, &exps)
}

fn power_matrix<F: Field>(points: &[F], exps: &[u32]) -> Vec<Vec<F>> {
    points
        .iter()
        .map(|x| exps.iter().map(|&e| x.pow(e)).collect())
        .collect()
}

/// `det` of [`generalized_vandermonde_matrix`]; equals `V_n · h_l`.
pub fn generalized_vandermonde<F: Field>(points: &[F], l: u32) -> Result<F, AlgebraError> {
    if points.is_empty() {
        return Err(AlgebraError::EmptyPointSet);
    }
    determinant_exact(&generalized_vandermonde_matrix(points, l))
}
