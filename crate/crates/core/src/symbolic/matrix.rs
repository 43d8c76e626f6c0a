use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::polynomial::{Monomial, Polynomial};
use super::rational::Q;
use super::var::VarId;
use crate::error::EvalError;

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![Polynomial::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        PolyMatrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| (self.get(i, j) + self.get(j, i)).is_zero()))
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> PolyMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|r| *r != i) {
            for c in (0..self.cols).filter(|c| *c != j) {
                data.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Signed cofactor `(-1)^(i+j) det(minor(i, j))`.
    pub fn cofactor(&self, i: usize, j: usize) -> Polynomial {
        let d = self.minor(i, j).determinant();
        if (i + j) % 2 == 0 {
            d
        } else {
            -d
        }
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Polynomial {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match self.rows {
            0 => Polynomial::one(),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = Polynomial::zero();
                for j in 0..self.cols {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let t = a * &self.minor(0, j).det_cofactor();
                    acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                acc
            }
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination over the polynomial ring.
    pub fn det_bareiss(&self) -> Polynomial {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Polynomial::one();
        }
        let mut a: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = Polynomial::one();
        let mut negate = false;
        for k in 0..n - 1 {
            // sparsest nonzero pivot in column k
            let pivot = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].num_terms());
            let Some(p) = pivot else {
                return Polynomial::zero();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Cofactor expansion up to 4x4, Bareiss elimination above.
    pub fn determinant(&self) -> Polynomial {
        if self.rows <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    pub fn eval(&self, point: &dyn Fn(VarId) -> Option<Q>) -> Result<RationalMatrix, EvalError> {
        let data = self.data.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>, _>>()?;
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Rank over the field of rational functions in the entries' variables.
    ///
    /// Gaussian elimination by cross-multiplication `row <- p * row - a * pivot_row`
    /// (a monomial pivot contributes only its monomial, its coefficient is divided out),
    /// choosing the pivot with fewest terms and least expected fill. Each updated row is
    /// divided by the monomial content of its entries. All steps rescale rows by nonzero
    /// elements of the function field, so rank is preserved. Gives up (returns `None`)
    /// once an entry exceeds `max_terms` terms.
    pub fn symbolic_rank(&self, max_terms: usize) -> Option<usize> {
        let mut a: Vec<Vec<Polynomial>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut live_rows: Vec<usize> = (0..self.rows).collect();
        let mut live_cols: Vec<usize> = (0..self.cols).collect();
        let mut rank = 0;
        loop {
            let row_count: Vec<usize> =
                live_rows.iter().map(|&r| live_cols.iter().filter(|&&c| !a[r][c].is_zero()).count()).collect();
            let col_count: Vec<usize> =
                live_cols.iter().map(|&c| live_rows.iter().filter(|&&r| !a[r][c].is_zero()).count()).collect();
            let mut best: Option<(usize, usize, (usize, usize, u32))> = None;
            for (ri, &r) in live_rows.iter().enumerate() {
                for (ci, &c) in live_cols.iter().enumerate() {
                    let e = &a[r][c];
                    if e.is_zero() {
                        continue;
                    }
                    let fill = (row_count[ri] - 1) * (col_count[ci] - 1);
                    let key = (e.num_terms(), fill, e.degree().unwrap_or(0));
                    if best.as_ref().map_or(true, |b| key < b.2) {
                        best = Some((ri, ci, key));
                    }
                }
            }
            let Some((ri, ci, _)) = best else {
                return Some(rank);
            };
            let pr = live_rows.swap_remove(ri);
            let pc = live_cols.swap_remove(ci);
            let pivot = a[pr][pc].clone();
            let (scale, inv) = if pivot.is_monomial() {
                let (m, c) = pivot.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
                (Polynomial::term(Q::one(), m), Q::one() / c)
            } else {
                (pivot.clone(), Q::one())
            };
            for &r in &live_rows {
                if a[r][pc].is_zero() {
                    continue;
                }
                let factor = std::mem::take(&mut a[r][pc]).scale(&inv);
                let mut content: Option<Monomial> = None;
                for &c in &live_cols {
                    let t = &(&scale * &a[r][c]) - &(&factor * &a[pr][c]);
                    if t.num_terms() > max_terms {
                        return None;
                    }
                    if !t.is_zero() {
                        let mc = t.monomial_content();
                        content = Some(match content {
                            None => mc,
                            Some(prev) => prev.gcd(&mc),
                        });
                    }
                    a[r][c] = t;
                }
                if let Some(mc) = content.filter(|mc| !mc.is_one()) {
                    for &c in &live_cols {
                        if !a[r][c].is_zero() {
                            a[r][c] = a[r][c].div_monomial(&mc).expect("content divides the row");
                        }
                    }
                }
            }
            rank += 1;
        }
    }
}

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        RationalMatrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    /// Exact rank: rows are scaled to integers, then fraction-free elimination over `Z`.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| (v * Q::from_integer(lcm.clone())).to_integer()).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            for i in r + 1..self.rows {
                if a[i][c].is_zero() {
                    for j in c + 1..self.cols {
                        a[i][j] = &a[r][c] * &a[i][j] / &prev;
                    }
                    continue;
                }
                for j in c + 1..self.cols {
                    a[i][j] = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
            if r == self.rows {
                break;
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::q;

    fn n(i: usize, k: usize) -> Polynomial {
        Polynomial::var(VarId::n(i, k))
    }

    #[test]
    fn small_determinants() {
        assert_eq!(PolyMatrix::from_rows(vec![vec![n(1, 4)]]).determinant(), n(1, 4));
        let m = PolyMatrix::from_rows(vec![vec![n(1, 3), n(1, 4)], vec![n(2, 3), n(2, 4)]]);
        assert_eq!(m.determinant(), &n(1, 3) * &n(2, 4) - &n(2, 3) * &n(1, 4));
        let id = PolyMatrix::from_fn(3, 3, |i, j| Polynomial::from(if i == j { 1 } else { 0 }));
        assert!(id.determinant().is_one());
        assert!(id.det_bareiss().is_one());
    }

    #[test]
    fn bareiss_matches_cofactor_with_zero_leading_pivot() {
        let m = PolyMatrix::from_rows(vec![
            vec![Polynomial::zero(), n(1, 2), n(1, 3)],
            vec![n(2, 3), Polynomial::zero(), n(1, 4)],
            vec![n(2, 4), n(3, 4), Polynomial::from(2)],
        ]);
        assert_eq!(m.det_bareiss(), m.det_cofactor());
    }

    #[test]
    fn rational_rank() {
        let m = RationalMatrix::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1) / q(2)],
        ]);
        assert_eq!(m.rank(), 2);
        let z = RationalMatrix::from_rows(vec![vec![q(0), q(0)], vec![q(0), q(0)]]);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn symbolic_rank_heisenberg() {
        // [[0, n13, 0], [-n13, 0, 0], [0, 0, 0]]
        let m = PolyMatrix::from_rows(vec![
            vec![Polynomial::zero(), n(1, 3), Polynomial::zero()],
            vec![-n(1, 3), Polynomial::zero(), Polynomial::zero()],
            vec![Polynomial::zero(), Polynomial::zero(), Polynomial::zero()],
        ]);
        assert_eq!(m.symbolic_rank(1000), Some(2));
    }
}
