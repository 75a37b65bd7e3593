//! Exact linear algebra.
//!
//! Rational matrices go through fraction-free (Bareiss) elimination over the
//! integers. Matrices over other fields, in particular rational functions,
//! use plain Gauss–Jordan elimination; they stay small in this crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};

/// Integer matrix in row echelon form produced by [`bareiss_echelon`].
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, in order.
    pub pivots: Vec<(usize, usize)>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Scale each row of a rational matrix to integers.
pub fn clear_row_denominators(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let den = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| v.numer() * (&den / v.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination to row echelon form.
///
/// Columns are scanned left to right; within a column the pivot is the
/// nonzero entry of smallest bit size (first such row on ties).
pub fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == nrows {
            break;
        }
        let best = (prow..nrows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| (a[i][col].bits(), i));
        let Some(best) = best else { continue };
        a.swap(prow, best);
        let (head, tail) = a.split_at_mut(prow + 1);
        let prow_ref = &head[prow];
        let piv = prow_ref[col].clone();
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = &piv * &row[j] - &factor * &prow_ref[j];
                row[j] = if prev.is_one() {
                    v
                } else {
                    let (q, r) = v.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    q
                };
            }
        }
        pivots.push((prow, col));
        prev = piv;
        prow += 1;
    }
    Echelon {
        rows: a,
        pivots,
        cols,
    }
}

/// Basis of the right nullspace of an echelon form. Each vector has integer
/// entries with content one and a positive entry at its free column.
pub fn echelon_nullspace(e: &Echelon) -> Vec<Vec<BigInt>> {
    let pivot_cols: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..e.cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![<Rational as Field>::zero(); e.cols];
        v[f] = <Rational as Field>::one();
        for &(r, c) in e.pivots.iter().rev() {
            let row = &e.rows[r];
            let mut s = <Rational as Field>::zero();
            for j in c + 1..e.cols {
                if !row[j].is_zero() && !Field::is_zero(&v[j]) {
                    s += &v[j] * Rational::from_integer(row[j].clone());
                }
            }
            v[c] = -s / Rational::from_integer(row[c].clone());
        }
        out.push(primitive_integer_vector(&v));
    }
    out
}

/// Scale a nonzero rational vector to coprime integers, keeping signs.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Right nullspace of a rational matrix with `cols` columns.
///
/// Returns a basis of integer vectors with content one; the list is empty
/// exactly when the matrix has full column rank.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<BigInt>> {
    let e = bareiss_echelon(clear_row_denominators(m), cols);
    echelon_nullspace(&e)
}

pub fn rank(m: &[Vec<Rational>], cols: usize) -> usize {
    bareiss_echelon(clear_row_denominators(m), cols).rank()
}

/// Gauss–Jordan nullspace over an arbitrary field. Each basis vector has a
/// one at its free column.
pub fn nullspace_over<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        let Some(p) = (prow..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(prow, p);
        let inv = a[prow][col].inverse();
        for j in col..cols {
            a[prow][j] = a[prow][j].times(&inv);
        }
        for i in 0..a.len() {
            if i != prow && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..cols {
                    let t = f.times(&a[prow][j]);
                    a[i][j] = a[i][j].minus(&t);
                }
            }
        }
        pivots.push(col);
        prow += 1;
        if prow == a.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[f] = F::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = a[r][f].negated();
        }
        out.push(v);
    }
    out
}

/// Incremental search for the first linear dependence in a sequence of
/// vectors `v_0, v_1, ...` over a field.
pub struct DependenceFinder<F> {
    /// Reduced rows: pivot index, vector with a one at the pivot, and the
    /// combination of inputs it equals.
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
    count: usize,
}

impl<F: Field> Default for DependenceFinder<F> {
    fn default() -> Self {
        DependenceFinder {
            rows: Vec::new(),
            count: 0,
        }
    }
}

impl<F: Field> DependenceFinder<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Feed the next vector. Returns coefficients `c_0..c_k` with
    /// `sum c_i v_i = 0` and `c_k = 1` once `v_k` depends on its
    /// predecessors.
    pub fn push(&mut self, v: Vec<F>) -> Option<Vec<F>> {
        let k = self.count;
        self.count += 1;
        let mut r = v;
        let mut comb = vec![F::zero(); k + 1];
        comb[k] = F::one();
        for (p, row, rc) in &self.rows {
            if *p >= r.len() || r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            if r.len() < row.len() {
                r.resize(row.len(), F::zero());
            }
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    r[j] = r[j].minus(&f.times(x));
                }
            }
            for (j, x) in rc.iter().enumerate() {
                if !x.is_zero() {
                    comb[j] = comb[j].minus(&f.times(x));
                }
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            None => Some(comb),
            Some(p) => {
                let inv = r[p].inverse();
                let r: Vec<F> = r.iter().map(|x| x.times(&inv)).collect();
                let comb: Vec<F> = comb.iter().map(|x| x.times(&inv)).collect();
                self.rows.push((p, r, comb));
                None
            }
        }
    }
}

/// Integer vector dot product helper for tests and verification.
pub fn mat_vec(m: &[Vec<Rational>], v: &[BigInt]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(<Rational as Field>::zero(), |acc, (a, b)| acc + a * Rational::from_integer(b.clone()))
        })
        .collect()
}

/// Vector sign convention helper: true if the first nonzero entry is
/// negative.
pub fn leads_negative(v: &[BigInt]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative())
}
