//! Root data for the supported finite types.
//!
//! Conventions: `matrix[i][j] = <alpha_j, h_i>`, so the `j`-th column of the
//! Cartan matrix is the simple root `alpha_j` written in the fundamental-weight
//! basis. Colors are 0-based internally and 1-based in every rendered form.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the weight lattice in fundamental-weight coordinates.
///
/// `coords[i] = <mu, h_i>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// The pairing `<self, h_i>`.
    #[inline]
    pub fn pair(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A1,
    A1xA1,
    A2,
    A3,
    B2,
    G2,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 6] = [
        TypeLabel::A1,
        TypeLabel::A1xA1,
        TypeLabel::A2,
        TypeLabel::A3,
        TypeLabel::B2,
        TypeLabel::G2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TypeLabel::A1 => "A1",
            TypeLabel::A1xA1 => "A1xA1",
            TypeLabel::A2 => "A2",
            TypeLabel::A3 => "A3",
            TypeLabel::B2 => "B2",
            TypeLabel::G2 => "G2",
        }
    }

    fn matrix(self) -> Vec<Vec<i64>> {
        match self {
            TypeLabel::A1 => vec![vec![2]],
            TypeLabel::A1xA1 => vec![vec![2, 0], vec![0, 2]],
            TypeLabel::A2 => vec![vec![2, -1], vec![-1, 2]],
            TypeLabel::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            TypeLabel::B2 => vec![vec![2, -1], vec![-2, 2]],
            TypeLabel::G2 => vec![vec![2, -1], vec![-3, 2]],
        }
    }

    /// Reduced word for the longest element, in application order.
    pub fn longest_word(self) -> Vec<usize> {
        match self {
            TypeLabel::A1 => vec![0],
            TypeLabel::A1xA1 => vec![0, 1],
            TypeLabel::A2 => vec![0, 1, 0],
            TypeLabel::B2 => vec![0, 1, 0, 1],
            TypeLabel::G2 => vec![0, 1, 0, 1, 0, 1],
            TypeLabel::A3 => vec![0, 1, 0, 2, 1, 0],
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(TypeLabel::A1),
            "A1XA1" => Ok(TypeLabel::A1xA1),
            "A2" => Ok(TypeLabel::A2),
            "A3" => Ok(TypeLabel::A3),
            "B2" => Ok(TypeLabel::B2),
            "G2" => Ok(TypeLabel::G2),
            _ => Err(Error::UnsupportedType(s.to_string())),
        }
    }
}

/// Cartan matrix together with the root data derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    /// Positive roots in root-basis coordinates, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub rho: Weight,
    /// `d_i` with `d_i c_ij = d_j c_ji`; `(alpha_i, alpha_j) = d_i c_ij`.
    pub symmetrizer: Vec<i64>,
    inverse: Vec<Vec<Rational64>>,
}

pub fn cartan_matrix(label: &str) -> Result<CartanData> {
    Ok(CartanData::new(label.parse()?))
}

impl CartanData {
    pub fn new(type_label: TypeLabel) -> Self {
        let matrix = type_label.matrix();
        let rank = matrix.len();
        let symmetrizer = symmetrize(&matrix);
        let inverse = invert(&matrix);
        let mut data = CartanData {
            type_label,
            rank,
            matrix,
            positive_roots: Vec::new(),
            rho: Weight(vec![1; rank]),
            symmetrizer,
            inverse,
        };
        data.positive_roots = data.close_positive_roots();
        data
    }

    /// `alpha_j` in fundamental-weight coordinates (the `j`-th column).
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight((0..self.rank).map(|i| self.matrix[i][j]).collect())
    }

    /// `<alpha_j, h_i>`.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn check_color(&self, i: usize) -> Result<()> {
        if i < self.rank {
            Ok(())
        } else {
            Err(Error::ColorOutOfRange {
                color: i,
                rank: self.rank,
            })
        }
    }

    pub fn check_weight(&self, mu: &Weight) -> Result<()> {
        if mu.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::WeightRank {
                got: mu.rank(),
                rank: self.rank,
            })
        }
    }

    /// `s_i(mu) = mu - <mu, h_i> alpha_i`.
    pub fn reflect(&self, i: usize, mu: &Weight) -> Weight {
        let m = mu.pair(i);
        Weight(
            (0..self.rank)
                .map(|k| mu.0[k] - m * self.matrix[k][i])
                .collect(),
        )
    }

    /// Applies the letters in order (first letter first).
    pub fn reflect_word(&self, word: &[usize], mu: &Weight) -> Weight {
        word.iter()
            .fold(mu.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// Root-basis coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.matrix[i][j] * root[j]).sum())
                .collect(),
        )
    }

    /// Solves `C x = mu` exactly; `x` are the root-basis coordinates of `mu`.
    pub fn weight_to_root(&self, mu: &Weight) -> Vec<Rational64> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.inverse[i][j] * Rational64::from_integer(mu.0[j]))
                    .fold(Rational64::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Root-basis coordinates of `mu` when they are all integers.
    pub fn weight_to_root_int(&self, mu: &Weight) -> Option<Vec<i64>> {
        self.weight_to_root(mu)
            .into_iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// Height of `mu` when `mu` lies in the root lattice.
    pub fn height(&self, mu: &Weight) -> Option<i64> {
        self.weight_to_root_int(mu).map(|x| x.iter().sum())
    }

    /// Invariant form `(mu, nu)` normalized by `(alpha_i, alpha_j) = d_i c_ij`.
    pub fn inner(&self, mu: &Weight, nu: &Weight) -> Rational64 {
        let x = self.weight_to_root(mu);
        (0..self.rank)
            .map(|j| x[j] * Rational64::from_integer(self.symmetrizer[j] * nu.0[j]))
            .fold(Rational64::zero(), |a, b| a + b)
    }

    /// `<mu, beta^vee>` for a root `beta` given in root coordinates.
    pub fn coroot_pairing(&self, mu: &Weight, root: &[i64]) -> Rational64 {
        let num: i64 = (0..self.rank)
            .map(|j| root[j] * self.symmetrizer[j] * mu.0[j])
            .sum();
        let mut norm = 0i64;
        for j in 0..self.rank {
            for k in 0..self.rank {
                norm += root[j] * root[k] * self.symmetrizer[j] * self.matrix[j][k];
            }
        }
        Rational64::new(2 * num, norm)
    }

    /// Dominant element of the Weyl orbit of `mu`.
    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        let mut cur = mu.clone();
        while let Some(i) = (0..self.rank).find(|&i| cur.pair(i) < 0) {
            cur = self.reflect(i, &cur);
        }
        cur
    }

    /// `w_0(mu)`.
    pub fn longest_image(&self, mu: &Weight) -> Weight {
        self.reflect_word(&self.type_label.longest_word(), mu)
    }

    /// The reduced word for `w_0` used to build the B(infinity) realization.
    pub fn iota_block(&self) -> Vec<usize> {
        self.type_label.longest_word()
    }

    fn close_positive_roots(&self) -> Vec<Vec<i64>> {
        let mut roots: Vec<Vec<i64>> = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..self.rank {
                    let pair: i64 = (0..self.rank).map(|j| self.matrix[i][j] * beta[j]).sum();
                    let mut image = beta.clone();
                    image[i] -= pair;
                    if image.iter().all(|&c| c >= 0) && !roots.contains(&image) {
                        roots.push(image.clone());
                        next.push(image);
                    }
                }
            }
            frontier = next;
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        roots
    }
}

fn symmetrize(c: &[Vec<i64>]) -> Vec<i64> {
    // Connected components of rank <= 3 are chains, so propagate along edges.
    let n = c.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational64::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && c[i][j] != 0 && d[j].is_none() {
                    // d_i c_ij = d_j c_ji
                    d[j] = Some(d[i].unwrap() * Rational64::new(c[i][j], c[j][i]));
                    stack.push(j);
                }
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(Option::unwrap).collect();
    let denom = d
        .iter()
        .fold(1i64, |acc, x| num_integer_lcm(acc, *x.denom()));
    d.iter()
        .map(|x| (x * Rational64::from_integer(denom)).to_integer())
        .collect()
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn invert(c: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = c.len();
    let mut a: Vec<Vec<Rational64>> = c
        .iter()
        .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational64::from_integer(i64::from(i == j)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("finite-type Cartan matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= factor * x;
                    inv[r][j] -= factor * y;
                }
            }
        }
    }
    inv
}
