//! Elimination kernels, generic over the coefficient type so the same code
//! runs in checked `i64` and in `BigInt`. Every function returns `None` on
//! overflow.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use super::int::{extended_gcd, sub_mul, ExactInt};
use super::snf::{Certificate, SmithForm};
use super::sparse::SparseMatrix;

struct Dense<T> {
    a: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
}

impl<T: ExactInt> Dense<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// `row_t -= q * row_s`.
    fn row_sub(&mut self, t: usize, s: usize, q: &T) -> Option<()> {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m[t].len() {
                if !m[s][c].is_zero() {
                    m[t][c] = sub_mul(&m[t][c], q, &m[s][c])?;
                }
            }
        }
        Some(())
    }

    /// `col_t -= q * col_s`.
    fn col_sub(&mut self, t: usize, s: usize, q: &T) -> Option<()> {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            if !row[s].is_zero() {
                row[t] = sub_mul(&row[t], q, &row[s])?;
            }
        }
        Some(())
    }

    /// Rows `(i, j) <- [[p, q], [r, s]] * (row_i, row_j)`.
    fn row_mix(&mut self, i: usize, j: usize, k: [&T; 4]) -> Option<()> {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m[i].len() {
                let (x, y) = (m[i][c].clone(), m[j][c].clone());
                m[i][c] = k[0].checked_mul(&x)?.checked_add(&k[1].checked_mul(&y)?)?;
                m[j][c] = k[2].checked_mul(&x)?.checked_add(&k[3].checked_mul(&y)?)?;
            }
        }
        Some(())
    }

    /// Columns `(col_i, col_j) <- (col_i, col_j) * [[p, q], [r, s]]`.
    fn col_mix(&mut self, i: usize, j: usize, k: [&T; 4]) -> Option<()> {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let (x, y) = (row[i].clone(), row[j].clone());
            row[i] = x.checked_mul(k[0])?.checked_add(&y.checked_mul(k[2])?)?;
            row[j] = x.checked_mul(k[1])?.checked_add(&y.checked_mul(k[3])?)?;
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = x.checked_neg()?;
            }
        }
        Some(())
    }
}

fn identity<T: ExactInt>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub(super) fn dense_snf<T: ExactInt>(m: &SparseMatrix) -> Option<SmithForm> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut st = Dense {
        a: m
            .to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(T::from_i64).collect())
            .collect::<Vec<Vec<T>>>(),
        u: identity(rows),
        v: identity(cols),
    };
    let mut rank = 0;
    while rank < rows.min(cols) {
        let t = rank;
        let Some((pr, pc)) = min_entry(&st.a, t..rows, t..cols) else {
            break;
        };
        st.swap_rows(t, pr);
        st.swap_cols(t, pc);
        loop {
            let p = st.a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !st.a[i][t].is_zero() {
                    let q = st.a[i][t].checked_div(&p)?;
                    st.row_sub(i, t, &q)?;
                    dirty |= !st.a[i][t].is_zero();
                }
            }
            if dirty {
                let (pr, _) = min_entry(&st.a, t..rows, t..t + 1)?;
                st.swap_rows(t, pr);
                continue;
            }
            for j in t + 1..cols {
                if !st.a[t][j].is_zero() {
                    let q = st.a[t][j].checked_div(&p)?;
                    st.col_sub(j, t, &q)?;
                    dirty |= !st.a[t][j].is_zero();
                }
            }
            if dirty {
                let (_, pc) = min_entry(&st.a, t..t + 1, t..cols)?;
                st.swap_cols(t, pc);
                continue;
            }
            break;
        }
        rank += 1;
    }
    // divisibility chain
    for i in 0..rank {
        for j in i + 1..rank {
            let (a, b) = (st.a[i][i].clone(), st.a[j][j].clone());
            if b.is_multiple_of(&a)? {
                continue;
            }
            let (g, x, y) = extended_gcd(&a, &b)?;
            let (a_g, b_g) = (a.checked_div(&g)?, b.checked_div(&g)?);
            let neg_b_g = b_g.checked_neg()?;
            st.row_mix(i, j, [&x, &y, &neg_b_g, &a_g])?;
            let one = T::one();
            let c = y.checked_mul(&b_g)?.checked_neg()?;
            let e = x.checked_mul(&a_g)?;
            st.col_mix(i, j, [&one, &c, &one, &e])?;
        }
        if st.a[i][i].is_negative() {
            st.negate_row(i)?;
        }
    }
    Some(SmithForm {
        rows,
        cols,
        factors: (0..rank).map(|i| st.a[i][i].to_bigint()).collect(),
        certificate: Some(Certificate {
            u: to_big(&st.u),
            v: to_big(&st.v),
        }),
    })
}

fn to_big<T: ExactInt>(m: &[Vec<T>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(ExactInt::to_bigint).collect()).collect()
}

fn min_entry<T: ExactInt>(
    a: &[Vec<T>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[i][j];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs_cmp(&a[bi][bj]).is_lt()) {
                best = Some((i, j));
                if x.is_unit() {
                    return best;
                }
            }
        }
    }
    best
}

/// Sparse elimination returning the diagonal of an equivalent diagonal
/// matrix. Pivots are chosen by smallest absolute value, ties broken by
/// Markowitz cost.
pub(super) fn sparse_diagonal<T: ExactInt>(m: &SparseMatrix) -> Option<Vec<T>> {
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); m.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for &(r, c, v) in m.entries() {
        rows[r].insert(c, T::from_i64(v));
        cols[c].insert(r);
    }
    let mut alive: BTreeSet<usize> = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();
    let mut diag = Vec::new();

    while let Some((mut r, mut c)) = choose_pivot(&rows, &cols, &alive) {
        loop {
            // clear column c below/above the pivot with row operations
            let p = rows[r][&c].clone();
            let others: Vec<usize> = cols[c].iter().copied().filter(|&x| x != r).collect();
            let mut remainder = false;
            for r2 in others {
                let q = rows[r2][&c].checked_div(&p)?;
                row_axpy(&mut rows, &mut cols, r2, r, &q)?;
                if rows[r2].is_empty() {
                    alive.remove(&r2);
                }
                remainder |= rows[r2].contains_key(&c);
            }
            if remainder {
                r = *cols[c]
                    .iter()
                    .min_by(|&&a, &&b| rows[a][&c].abs_cmp(&rows[b][&c]))
                    .expect("column is nonempty");
                continue;
            }
            // column c now holds only the pivot, so column operations touch
            // row r alone
            let entries: Vec<(usize, T)> = rows[r]
                .iter()
                .filter(|(&k, _)| k != c)
                .map(|(&k, v)| (k, v.clone()))
                .collect();
            let mut leftover = false;
            for (c2, b) in entries {
                let q = b.checked_div(&p)?;
                let rem = sub_mul(&b, &q, &p)?;
                if rem.is_zero() {
                    rows[r].remove(&c2);
                    cols[c2].remove(&r);
                } else {
                    rows[r].insert(c2, rem);
                    leftover = true;
                }
            }
            if leftover {
                c = *rows[r]
                    .iter()
                    .filter(|(&k, _)| k != c)
                    .min_by(|a, b| a.1.abs_cmp(b.1))
                    .map(|(k, _)| k)
                    .expect("row has leftovers");
                continue;
            }
            break;
        }
        let p = rows[r].remove(&c).expect("pivot present");
        cols[c].remove(&r);
        alive.remove(&r);
        diag.push(p);
    }
    Some(diag)
}

fn choose_pivot<T: ExactInt>(
    rows: &[BTreeMap<usize, T>],
    cols: &[BTreeSet<usize>],
    alive: &BTreeSet<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for &r in alive {
        let row_cost = rows[r].len() - 1;
        for (&c, v) in &rows[r] {
            let cost = row_cost * (cols[c].len() - 1);
            let better = match best {
                None => true,
                Some((br, bc, bcost)) => match v.abs_cmp(&rows[br][&bc]) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => cost < bcost,
                    std::cmp::Ordering::Greater => false,
                },
            };
            if better {
                best = Some((r, c, cost));
                if cost == 0 && v.is_unit() {
                    return Some((r, c));
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// `row_t -= q * row_s`, maintaining the column index.
fn row_axpy<T: ExactInt>(
    rows: &mut [BTreeMap<usize, T>],
    cols: &mut [BTreeSet<usize>],
    t: usize,
    s: usize,
    q: &T,
) -> Option<()> {
    let src: Vec<(usize, T)> = rows[s].iter().map(|(&k, v)| (k, v.clone())).collect();
    for (c, v) in src {
        let cur = rows[t].get(&c).cloned().unwrap_or_else(T::zero);
        let next = sub_mul(&cur, q, &v)?;
        if next.is_zero() {
            rows[t].remove(&c);
            cols[c].remove(&t);
        } else {
            rows[t].insert(c, next);
            cols[c].insert(t);
        }
    }
    Some(())
}

