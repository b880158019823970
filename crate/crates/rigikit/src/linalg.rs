//! Dense symmetric matrices, exact inertia by congruence, and a Jacobi eigensolver.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Float, Num, Zero};

use crate::error::{invalid, Result};
use crate::graph::WeightedGraph;
use crate::{QuadraticNumber, Rational};

/// Exact ordered field: every comparison is decided without rounding.
pub trait ExactField: Clone + Debug + Num + Neg<Output = Self> {
    fn sign(&self) -> Ordering;
    fn from_i64(v: i64) -> Self;
}

impl ExactField for Rational {
    fn sign(&self) -> Ordering {
        self.cmp(&Rational::zero())
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl ExactField for QuadraticNumber {
    fn sign(&self) -> Ordering {
        QuadraticNumber::sign(self)
    }
    fn from_i64(v: i64) -> Self {
        QuadraticNumber::integer(v)
    }
}

/// Square matrix stored row-major; symmetric by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone> SymMatrix<T> {
    /// Fails unless `rows` is square and symmetric.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self>
    where
        T: PartialEq,
    {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return invalid("matrix is not square");
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return invalid(format!("matrix is not symmetric at ({i},{j})"));
                }
            }
        }
        Ok(SymMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        SymMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }
}

/// Integer adjacency matrix (entries are multiplicities).
pub fn adjacency_matrix<G: WeightedGraph>(g: &G) -> SymMatrix<i64> {
    let n = g.order();
    let mut m = SymMatrix::from_fn(n, |_, _| 0i64);
    for u in 0..n {
        for (v, w) in g.weighted_neighbors(u) {
            m.data[u * n + v] = w as i64;
        }
    }
    m
}

/// Integer Laplacian D − A.
pub fn laplacian_matrix<G: WeightedGraph>(g: &G) -> SymMatrix<i64> {
    let n = g.order();
    let mut m = adjacency_matrix(g).map(|&x| -x);
    for v in 0..n {
        m.data[v * n + v] = g.weighted_degree(v) as i64;
    }
    m
}

/// One block of the block-diagonal form reached by congruence.
#[derive(Clone, Debug, PartialEq)]
pub enum PivotBlock<T> {
    /// Nonzero 1×1 pivot at `index`.
    Single { index: usize, value: T },
    /// 2×2 pivot `[[0, off], [off, 0]]` on rows `first`, `second`; one positive and one negative eigenvalue.
    Pair { first: usize, second: usize, off: T },
    /// Rows left identically zero.
    Zero { indices: Vec<usize> },
}

/// Sylvester signature of `M − cI` with the congruence that produced it.
///
/// `transform` is a matrix `T` such that `T (M − cI) Tᵀ` is the block-diagonal matrix
/// described by `blocks`; it is empty when the transcript was not requested.
#[derive(Clone, Debug, PartialEq)]
pub struct InertiaCertificate<T> {
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
    pub shift: T,
    pub transform: Vec<Vec<T>>,
    pub blocks: Vec<PivotBlock<T>>,
}

impl<T: ExactField> InertiaCertificate<T> {
    /// Re-derives `T (M − cI) Tᵀ`, checks it against the recorded blocks and checks `T` is nonsingular.
    pub fn verify(&self, m: &SymMatrix<T>) -> bool {
        let n = m.dim();
        if self.transform.len() != n || self.n_neg + self.n_zero + self.n_pos != n {
            return false;
        }
        let s: Vec<Vec<T>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { m.get(i, j).clone() - self.shift.clone() } else { m.get(i, j).clone() })
                    .collect()
            })
            .collect();
        let t = &self.transform;
        let ts: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(T::zero(), |acc, k| acc + t[i][k].clone() * s[k][j].clone())).collect())
            .collect();
        let d: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(T::zero(), |acc, k| acc + ts[i][k].clone() * t[j][k].clone())).collect())
            .collect();
        let mut expected: Vec<Vec<T>> = vec![vec![T::zero(); n]; n];
        let (mut neg, mut zero, mut pos) = (0, 0, 0);
        for b in &self.blocks {
            match b {
                PivotBlock::Single { index, value } => {
                    expected[*index][*index] = value.clone();
                    match value.sign() {
                        Ordering::Less => neg += 1,
                        Ordering::Greater => pos += 1,
                        Ordering::Equal => return false,
                    }
                }
                PivotBlock::Pair { first, second, off } => {
                    if off.is_zero() {
                        return false;
                    }
                    expected[*first][*second] = off.clone();
                    expected[*second][*first] = off.clone();
                    neg += 1;
                    pos += 1;
                }
                PivotBlock::Zero { indices } => zero += indices.len(),
            }
        }
        if (neg, zero, pos) != (self.n_neg, self.n_zero, self.n_pos) || d != expected {
            return false;
        }
        rank(t.clone()) == n
    }
}

/// Rank by Gaussian elimination over an exact field.
pub fn rank<T: ExactField>(mut rows: Vec<Vec<T>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone() / rows[r][c].clone();
            for j in c..cols {
                let sub = f.clone() * rows[r][j].clone();
                rows[i][j] = rows[i][j].clone() - sub;
            }
        }
        r += 1;
    }
    r
}

/// Signature of `M − cI` via symmetric congruence with 1×1 and 2×2 pivots.
pub fn inertia_shifted<T: ExactField>(m: &SymMatrix<T>, c: &T) -> InertiaCertificate<T> {
    congruence(m, c, true)
}

/// As [`inertia_shifted`] without recording the transform.
pub fn inertia_counts<T: ExactField>(m: &SymMatrix<T>, c: &T) -> (usize, usize, usize) {
    let cert = congruence(m, c, false);
    (cert.n_neg, cert.n_zero, cert.n_pos)
}

fn congruence<T: ExactField>(m: &SymMatrix<T>, c: &T, record: bool) -> InertiaCertificate<T> {
    let n = m.dim();
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { m.get(i, j).clone() - c.clone() } else { m.get(i, j).clone() }).collect())
        .collect();
    let mut t: Vec<Vec<T>> = if record {
        (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
    } else {
        Vec::new()
    };
    let mut active = vec![true; n];
    let mut blocks = Vec::new();
    let (mut neg, mut zero, mut pos) = (0, 0, 0);
    loop {
        let act: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        if act.is_empty() {
            break;
        }
        if let Some(&i) = act.iter().find(|&&i| !a[i][i].is_zero()) {
            let p = a[i][i].clone();
            let rest: Vec<usize> = act.iter().copied().filter(|&r| r != i).collect();
            let factors: Vec<Option<T>> = rest
                .iter()
                .map(|&r| (!a[r][i].is_zero()).then(|| a[r][i].clone() / p.clone()))
                .collect();
            for (ri, &r) in rest.iter().enumerate() {
                let Some(f) = &factors[ri] else { continue };
                for &cc in &rest {
                    if a[i][cc].is_zero() {
                        continue;
                    }
                    let sub = f.clone() * a[i][cc].clone();
                    a[r][cc] = a[r][cc].clone() - sub;
                }
                if record {
                    for k in 0..n {
                        if !t[i][k].is_zero() {
                            let sub = f.clone() * t[i][k].clone();
                            t[r][k] = t[r][k].clone() - sub;
                        }
                    }
                }
            }
            for &r in &rest {
                a[r][i] = T::zero();
                a[i][r] = T::zero();
            }
            match p.sign() {
                Ordering::Less => neg += 1,
                _ => pos += 1,
            }
            blocks.push(PivotBlock::Single { index: i, value: p });
            active[i] = false;
            continue;
        }
        let pair = act.iter().enumerate().find_map(|(x, &i)| {
            act[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            zero += act.len();
            blocks.push(PivotBlock::Zero { indices: act });
            break;
        };
        let off = a[i][j].clone();
        let rest: Vec<usize> = act.iter().copied().filter(|&r| r != i && r != j).collect();
        // [a_ri a_rj] · [[0, 1/x], [1/x, 0]] = [a_rj / x, a_ri / x]
        let coeffs: Vec<(T, T)> = rest
            .iter()
            .map(|&r| (a[r][j].clone() / off.clone(), a[r][i].clone() / off.clone()))
            .collect();
        for (ri, &r) in rest.iter().enumerate() {
            let (alpha, beta) = &coeffs[ri];
            if alpha.is_zero() && beta.is_zero() {
                continue;
            }
            for &cc in &rest {
                let sub = alpha.clone() * a[i][cc].clone() + beta.clone() * a[j][cc].clone();
                a[r][cc] = a[r][cc].clone() - sub;
            }
            if record {
                for k in 0..n {
                    let sub = alpha.clone() * t[i][k].clone() + beta.clone() * t[j][k].clone();
                    t[r][k] = t[r][k].clone() - sub;
                }
            }
        }
        for &r in &rest {
            for x in [i, j] {
                a[r][x] = T::zero();
                a[x][r] = T::zero();
            }
        }
        neg += 1;
        pos += 1;
        blocks.push(PivotBlock::Pair { first: i, second: j, off });
        active[i] = false;
        active[j] = false;
    }
    InertiaCertificate { n_neg: neg, n_zero: zero, n_pos: pos, shift: c.clone(), transform: t, blocks }
}

/// Converts an integer matrix into an exact field.
pub fn lift<T: ExactField>(m: &SymMatrix<i64>) -> SymMatrix<T> {
    m.map(|&x| T::from_i64(x))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, in non-increasing order.
///
/// Sweeps stop once the off-diagonal Frobenius norm is at most `tol`.
pub fn jacobi_eigenvalues<F: Float>(m: &SymMatrix<F>, tol: F, max_sweeps: usize) -> Vec<F> {
    let n = m.dim();
    let mut a = m.rows();
    for _ in 0..max_sweeps {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(F::zero(), |acc, (i, j)| acc + a[i][j] * a[i][j])
            .sqrt();
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == F::zero() {
                    continue;
                }
                let two = F::one() + F::one();
                let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
                let t = theta.signum() / (theta.abs() + (F::one() + theta * theta).sqrt());
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<F> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap_or(Ordering::Equal));
    eig
}
