//! Abelianization of a presentation via the Smith normal form of its
//! exponent-sum matrix.
//!
//! Arithmetic runs in `i64` with overflow checks and is redone over
//! arbitrary-precision integers if any step would overflow.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

use crate::presentations::Presentation;
use crate::words::Generator;

/// `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `t_1 | t_2 | … | t_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

trait Entry: Integer + Signed + Clone + CheckedMul + CheckedSub + fmt::Debug {}
impl<T: Integer + Signed + Clone + CheckedMul + CheckedSub + fmt::Debug> Entry for T {}

type SparseRow<T> = BTreeMap<usize, T>;

/// `row -= f * pivot`, dropping zeros.
fn sparse_axpy<T: Entry>(row: &mut SparseRow<T>, f: &T, pivot: &SparseRow<T>) -> Option<()> {
    for (&c, v) in pivot {
        let delta = f.checked_mul(v)?;
        let cur = row.get(&c).cloned().unwrap_or_else(T::zero);
        let next = cur.checked_sub(&delta)?;
        if next.is_zero() {
            row.remove(&c);
        } else {
            row.insert(c, next);
        }
    }
    Some(())
}

/// Row-reduce to echelon form; the row space is unchanged.
fn echelon<T: Entry>(rows: Vec<SparseRow<T>>, cols: usize) -> Option<Vec<SparseRow<T>>> {
    let mut pending: Vec<SparseRow<T>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut out = Vec::new();
    for col in 0..cols {
        loop {
            let hits: Vec<usize> = (0..pending.len())
                .filter(|&k| pending[k].contains_key(&col))
                .collect();
            if hits.is_empty() {
                break;
            }
            if hits.len() == 1 {
                out.push(pending.swap_remove(hits[0]));
                break;
            }
            let p = *hits
                .iter()
                .min_by(|&&a, &&b| pending[a][&col].abs().cmp(&pending[b][&col].abs()))
                .expect("nonempty");
            let pivot = pending[p].clone();
            let a = pivot[&col].clone();
            for &q in hits.iter().filter(|&&q| q != p) {
                let f = pending[q][&col].div_floor(&a);
                sparse_axpy(&mut pending[q], &f, &pivot)?;
            }
            pending.retain(|r| !r.is_empty());
        }
    }
    Some(out)
}

/// Diagonal entries after full two-sided elimination of a dense matrix.
fn diagonalize<T: Entry>(mut m: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = m.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Some(diag);
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let a = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let f = m[i][t].div_floor(&a);
                let (top, rest) = m.split_at_mut(i);
                for (x, y) in rest[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                    *x = x.checked_sub(&f.checked_mul(y)?)?;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let f = m[t][j].div_floor(&a);
                for row in m.iter_mut().skip(t) {
                    let d = f.checked_mul(&row[t])?;
                    row[j] = row[j].checked_sub(&d)?;
                }
                clean &= m[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
        diag.push(m[t][t].abs());
    }
    Some(diag)
}

/// Rewrite a diagonal into divisibility-chain form.
fn chain<T: Entry>(mut d: Vec<T>) -> Option<Vec<T>> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g.is_zero() {
                continue;
            }
            let l = (d[i].clone() / g.clone()).checked_mul(&d[j])?;
            d[i] = g;
            d[j] = l.abs();
        }
    }
    Some(d)
}

fn invariants<T: Entry + Into<BigInt>>(
    rows: Vec<SparseRow<T>>,
    cols: usize,
) -> Option<AbelianInvariants> {
    let ech = echelon(rows, cols)?;
    let dense = ech
        .iter()
        .map(|r| {
            let mut v = vec![T::zero(); cols];
            for (&c, x) in r {
                v[c] = x.clone();
            }
            v
        })
        .collect();
    let diag = chain(diagonalize(dense, cols)?)?;
    let rank = diag.len();
    Some(AbelianInvariants {
        free_rank: cols - rank,
        torsion: diag
            .into_iter()
            .filter(|x| !x.is_one())
            .map(Into::into)
            .collect(),
    })
}

/// Invariants of `Z^cols` modulo the row span of an integer matrix.
pub fn smith_invariants(rows: &[Vec<(usize, BigInt)>], cols: usize) -> AbelianInvariants {
    let small: Option<Vec<SparseRow<i64>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| v.to_i64().map(|x| (*c, x)))
                .collect()
        })
        .collect();
    if let Some(inv) = small.and_then(|s| invariants(s, cols)) {
        return inv;
    }
    let big = rows
        .iter()
        .map(|r| {
            r.iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (*c, v.clone()))
                .collect()
        })
        .collect();
    invariants::<BigInt>(big, cols).expect("arbitrary precision does not overflow")
}

/// Exponent-sum matrix of the relators, one column per generator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<(usize, BigInt)>> {
    let column: HashMap<Generator, usize> = p
        .generators
        .iter()
        .enumerate()
        .map(|(k, &g)| (g, k))
        .collect();
    p.relator_words()
        .map(|w| {
            let mut row: BTreeMap<usize, i64> = BTreeMap::new();
            for l in w.letters() {
                let c = *column
                    .get(&l.gen)
                    .unwrap_or_else(|| panic!("{} is not a generator of the presentation", l.gen));
                *row.entry(c).or_default() += l.sign();
            }
            row.into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|(c, v)| (c, BigInt::from(v)))
                .collect()
        })
        .collect()
}

/// Abelian invariants of the presented group.
///
/// Panics if a relator uses a generator outside `p.generators`.
pub fn abelianize(p: &Presentation) -> AbelianInvariants {
    smith_invariants(&relation_matrix(p), p.generators.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(m: &[&[i64]]) -> Vec<Vec<(usize, BigInt)>> {
        m.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, BigInt::from(v)))
                    .collect()
            })
            .collect()
    }

    fn torsion(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_matrices() {
        let inv = smith_invariants(&rows(&[&[2]]), 1);
        assert_eq!((inv.free_rank, inv.torsion.clone()), (0, torsion(&[2])));
        let inv = smith_invariants(&rows(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(inv.torsion, torsion(&[6]));
        let inv = smith_invariants(&rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!((inv.free_rank, inv.torsion), (0, torsion(&[2, 6, 12])));
        let inv = smith_invariants(&rows(&[&[1, -1, 0]]), 3);
        assert_eq!((inv.free_rank, inv.is_free()), (2, true));
        assert_eq!(smith_invariants(&[], 4).free_rank, 4);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big: BigInt = BigInt::from(i64::MAX) * 4;
        let r = vec![
            vec![(0, big.clone()), (1, BigInt::from(5))],
            vec![(1, big.clone())],
        ];
        let inv = smith_invariants(&r, 2);
        // det = big^2, gcd of entries = 1
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, vec![&big * &big]);
    }

    #[test]
    fn display() {
        let inv = AbelianInvariants {
            free_rank: 3,
            torsion: torsion(&[2]),
        };
        assert_eq!(inv.to_string(), "Z^3 + Z/2");
    }
}
