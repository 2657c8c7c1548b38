//! Exact sparse linear systems over ℚ.
//!
//! Columns are given as sparse vectors keyed by an ordered row type. The system is
//! split into connected components, and each block is reduced with first-column
//! pivoting in the given column order; free variables are set to zero.

use std::collections::{BTreeMap, BTreeSet};

use crate::scalars::Rat;

/// A row that reduces to 0 = c with c ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistent<R> {
    /// Smallest row key among the original rows of the failing combination.
    pub row: R,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Blocks of (row indices, column indices) in increasing order.
fn components<R: Ord + Clone>(columns: &[BTreeMap<R, Rat>], extra_rows: &BTreeSet<R>) -> (Vec<R>, Vec<(Vec<usize>, Vec<usize>)>) {
    let mut rows: BTreeSet<R> = extra_rows.clone();
    for c in columns {
        rows.extend(c.keys().cloned());
    }
    let rows: Vec<R> = rows.into_iter().collect();
    let index: BTreeMap<&R, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let nr = rows.len();
    let mut dsu = Dsu((0..nr + columns.len()).collect());
    for (j, c) in columns.iter().enumerate() {
        for r in c.keys() {
            dsu.union(nr + j, index[r]);
        }
    }
    let mut blocks: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for i in 0..nr {
        let root = dsu.find(i);
        blocks.entry(root).or_default().0.push(i);
    }
    for j in 0..columns.len() {
        let root = dsu.find(nr + j);
        blocks.entry(root).or_default().1.push(j);
    }
    (rows, blocks.into_values().collect())
}

/// Solve Σ x_j · column_j = rhs exactly.
pub fn solve<R: Ord + Clone>(columns: &[BTreeMap<R, Rat>], rhs: &BTreeMap<R, Rat>) -> Result<Vec<Rat>, Inconsistent<R>> {
    let extra: BTreeSet<R> = rhs.iter().filter(|(_, c)| !c.is_zero()).map(|(r, _)| r.clone()).collect();
    let (rows, blocks) = components(columns, &extra);
    let mut x = vec![Rat::ZERO; columns.len()];
    let mut failure: Option<R> = None;
    for (brows, bcols) in blocks {
        let local: BTreeMap<&R, usize> = brows.iter().enumerate().map(|(i, r)| (&rows[*r], i)).collect();
        let nc = bcols.len();
        // Track which original rows feed each reduced row to locate failures.
        let mut m: Vec<Vec<Rat>> = vec![vec![Rat::ZERO; nc + 1 + brows.len()]; brows.len()];
        for (lj, j) in bcols.iter().enumerate() {
            for (r, v) in &columns[*j] {
                m[local[r]][lj] = v.clone();
            }
        }
        for (i, r) in brows.iter().enumerate() {
            if let Some(v) = rhs.get(&rows[*r]) {
                m[i][nc] = v.clone();
            }
            m[i][nc + 1 + i] = Rat::ONE;
        }
        let pivots = rref(&mut m, nc);
        for (i, row) in m.iter().enumerate() {
            if i < pivots.len() {
                x[bcols[pivots[i]]] = row[nc].clone();
            } else if !row[nc].is_zero() {
                let first = (0..brows.len()).find(|k| !row[nc + 1 + k].is_zero()).map(|k| rows[brows[k]].clone());
                if let Some(f) = first {
                    if failure.as_ref().is_none_or(|g| f < *g) {
                        failure = Some(f);
                    }
                }
            }
        }
    }
    match failure {
        Some(row) => Err(Inconsistent { row }),
        None => Ok(x),
    }
}

/// Reduced row echelon form in place, pivoting only on the first `ncols` columns.
fn rref(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.add_ref(&y.mul_ref(&f).neg_ref());
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of {x : Σ x_j · column_j = 0}, one sparse vector per free column.
pub fn nullspace<R: Ord + Clone>(columns: &[BTreeMap<R, Rat>]) -> Vec<BTreeMap<usize, Rat>> {
    let (rows, blocks) = components(columns, &BTreeSet::new());
    let mut basis: Vec<BTreeMap<usize, Rat>> = Vec::new();
    for (brows, bcols) in blocks {
        let local: BTreeMap<&R, usize> = brows.iter().enumerate().map(|(i, r)| (&rows[*r], i)).collect();
        let nc = bcols.len();
        let mut m: Vec<Vec<Rat>> = vec![vec![Rat::ZERO; nc]; brows.len()];
        for (lj, j) in bcols.iter().enumerate() {
            for (r, v) in &columns[*j] {
                m[local[r]][lj] = v.clone();
            }
        }
        let pivots = rref(&mut m, nc);
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        for free in (0..nc).filter(|c| !pivot_set.contains(c)) {
            let mut v = BTreeMap::new();
            v.insert(bcols[free], Rat::ONE);
            for (i, pc) in pivots.iter().enumerate() {
                let e = &m[i][free];
                if !e.is_zero() {
                    v.insert(bcols[*pc], e.neg_ref());
                }
            }
            basis.push(v);
        }
    }
    basis.sort_by_key(|v| *v.keys().next_back().expect("nonempty"));
    basis
}

/// Rank of a dense matrix.
pub fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let nc = m.first().map_or(0, |r| r.len());
    rref(&mut m, nc).len()
}

/// Determinant of a small square matrix.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut d = Rat::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rat::ZERO };
        if p != c {
            a.swap(p, c);
            d = d.neg_ref();
        }
        d = d.mul_ref(&a[c][c]);
        let inv = a[c][c].recip().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul_ref(&inv);
            for j in c..n {
                let v = a[c][j].mul_ref(&f);
                a[i][j] = a[i][j].add_ref(&v.neg_ref());
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(entries: &[(u32, i64)]) -> BTreeMap<u32, Rat> {
        entries.iter().map(|(r, v)| (*r, Rat::from_int(*v))).collect()
    }

    #[test]
    fn solves_and_reports() {
        // x + y = 3, x − y = 1; z alone on row 5
        let cols = vec![col(&[(0, 1), (1, 1)]), col(&[(0, 1), (1, -1)]), col(&[(5, 2)])];
        let rhs = col(&[(0, 3), (1, 1), (5, 4)]);
        let x = solve(&cols, &rhs).unwrap();
        assert_eq!(x, vec![Rat::from_int(2), Rat::ONE, Rat::from_int(2)]);
        let bad = col(&[(7, 1)]);
        assert_eq!(solve(&cols, &bad), Err(Inconsistent { row: 7 }));
    }

    #[test]
    fn free_columns_are_zero() {
        let cols = vec![col(&[(0, 1)]), col(&[(0, 1)])];
        let x = solve(&cols, &col(&[(0, 5)])).unwrap();
        assert_eq!(x, vec![Rat::from_int(5), Rat::ZERO]);
    }

    #[test]
    fn kernel() {
        let cols = vec![col(&[(0, 1)]), col(&[(0, 1)]), col(&[(1, 1)])];
        let k = nullspace(&cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].get(&0), Some(&Rat::from_int(-1)));
        assert_eq!(k[0].get(&1), Some(&Rat::ONE));
    }

    #[test]
    fn determinant() {
        let m: Vec<Vec<Rat>> = [[3, 0, -1], [-1, 0, 2], [-1, 1, 0]].iter().map(|r| r.iter().map(|x| Rat::from_int(*x)).collect()).collect();
        assert_eq!(det(&m), Rat::from_int(-5));
        assert_eq!(rank(m), 3);
    }
}
