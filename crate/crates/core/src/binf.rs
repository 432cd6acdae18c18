//! `B(infinity)` realized through iterated Kashiwara embeddings into
//! `... (x) B_{iota_2} (x) B_{iota_1}`.
//!
//! An element is a finitely supported coordinate vector `(a_1, a_2, ...)`
//! standing for `... (x) b_{iota_2}(-a_2) (x) b_{iota_1}(-a_1)`; position 1 is
//! the rightmost factor. The iota sequence is a finite prefix followed by a
//! repeated reduced word for `w_0`, so every color recurs.
//!
//! Operators evaluate the tensor rule on a finite window of the semi-infinite
//! tensor. If `f_i` lands on the leftmost factor of the window the window is
//! grown by one block and the computation repeated; growth past the configured
//! capacity is an error, never a silently wrong answer.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::cartan::{CartanData, Weight};
use crate::crystal::{
    fold_e_target, fold_eps, fold_f_target, Crystal, ElementaryElement, ExtInt, FactorStats,
};
use crate::error::{Error, Result};
use crate::par;

/// Window positions allowed beyond the current support.
pub const DEFAULT_MAX_EXTRA: usize = 24;
/// Largest depth accepted by [`BInfinity::generate`].
pub const DEFAULT_MAX_DEPTH: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BInfElement {
    coords: Vec<u32>,
}

impl BInfElement {
    /// `u_infinity`.
    pub fn highest() -> Self {
        BInfElement { coords: Vec::new() }
    }

    pub fn from_coords(mut coords: Vec<u32>) -> Self {
        while coords.last() == Some(&0) {
            coords.pop();
        }
        BInfElement { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// `a_k` for 1-based position `k`.
    pub fn coord(&self, k: usize) -> u32 {
        self.coords.get(k - 1).copied().unwrap_or(0)
    }

    pub fn depth(&self) -> usize {
        self.coords.iter().map(|&a| a as usize).sum()
    }

    pub fn is_highest(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for BInfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, a) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// One choice of iota sequence.
#[derive(Clone, Debug)]
pub struct Realization {
    cartan: Arc<CartanData>,
    prefix: Vec<usize>,
    block: Vec<usize>,
    max_extra: usize,
    pad_blocks: usize,
}

impl Realization {
    pub fn new(cartan: Arc<CartanData>, prefix: Vec<usize>, block: Vec<usize>) -> Self {
        Realization {
            cartan,
            prefix,
            block,
            max_extra: DEFAULT_MAX_EXTRA,
            pad_blocks: 0,
        }
    }

    /// Color of 1-based position `k`.
    pub fn color_at(&self, k: usize) -> usize {
        let p = k - 1;
        if p < self.prefix.len() {
            self.prefix[p]
        } else {
            self.block[(p - self.prefix.len()) % self.block.len()]
        }
    }

    fn initial_window(&self, b: &BInfElement) -> usize {
        b.coords.len().max(self.prefix.len()) + self.block.len() * (1 + self.pad_blocks)
    }

    fn window_limit(&self, b: &BInfElement) -> usize {
        b.coords.len().max(self.prefix.len())
            + self.max_extra.max(self.block.len() * (1 + self.pad_blocks))
    }

    /// Factor statistics left to right, i.e. positions `window, ..., 1`.
    fn stats(&self, i: usize, b: &BInfElement, window: usize) -> Vec<FactorStats> {
        (1..=window)
            .rev()
            .map(|k| {
                let color = self.color_at(k);
                let a = i64::from(b.coord(k));
                let wt = -a * self.cartan.entry(i, color);
                if color == i {
                    FactorStats {
                        eps: ExtInt::Finite(a),
                        phi: ExtInt::Finite(-a),
                        wt,
                    }
                } else {
                    FactorStats {
                        eps: ExtInt::NegInfinity,
                        phi: ExtInt::NegInfinity,
                        wt,
                    }
                }
            })
            .collect()
    }

    pub fn f(&self, i: usize, b: &BInfElement) -> Result<BInfElement> {
        let limit = self.window_limit(b);
        let mut window = self.initial_window(b);
        loop {
            let t = fold_f_target(&self.stats(i, b, window));
            if t == 0 {
                let grown = window + self.block.len();
                if grown > limit {
                    return Err(Error::Capacity(format!(
                        "f_{} needs a window beyond {limit} positions for {b}",
                        i + 1
                    )));
                }
                window = grown;
                continue;
            }
            let k = window - t;
            if self.color_at(k) != i {
                return Err(Error::Internal(format!(
                    "f_{} landed on a factor of another color",
                    i + 1
                )));
            }
            let mut coords = b.coords.clone();
            if coords.len() < k {
                coords.resize(k, 0);
            }
            coords[k - 1] += 1;
            return Ok(BInfElement::from_coords(coords));
        }
    }

    pub fn e(&self, i: usize, b: &BInfElement) -> Result<Option<BInfElement>> {
        let window = self.initial_window(b);
        let stats = self.stats(i, b, window);
        if fold_eps(&stats) == 0 {
            return Ok(None);
        }
        let k = window - fold_e_target(&stats);
        if self.color_at(k) != i || b.coord(k) == 0 {
            return Err(Error::Internal(format!(
                "e_{} landed outside the support of {b}",
                i + 1
            )));
        }
        let mut coords = b.coords.clone();
        coords[k - 1] -= 1;
        Ok(Some(BInfElement::from_coords(coords)))
    }

    pub fn eps(&self, i: usize, b: &BInfElement) -> i64 {
        fold_eps(&self.stats(i, b, self.initial_window(b)))
            .finite()
            .expect("the window always contains a factor of every color")
    }

    pub fn wt(&self, b: &BInfElement) -> Weight {
        let mut w = Weight::zero(self.cartan.rank);
        for (p, &a) in b.coords.iter().enumerate() {
            w = w.add_scaled(
                &self.cartan.simple_root(self.color_at(p + 1)),
                -i64::from(a),
            );
        }
        w
    }

    /// Word `(j_1, ..., j_m)` with `b = f_{j_1} ... f_{j_m} u_infinity`, peeling
    /// with the smallest color that has positive `eps` at every step.
    pub fn peel(&self, b: &BInfElement) -> Result<Vec<usize>> {
        let mut word = Vec::with_capacity(b.depth());
        let mut cur = b.clone();
        while !cur.is_highest() {
            let j = (0..self.cartan.rank)
                .find(|&j| self.eps(j, &cur) > 0)
                .ok_or_else(|| {
                    Error::Internal(format!("{cur} is not reachable from the highest element"))
                })?;
            cur = self.e(j, &cur)?.expect("eps > 0");
            word.push(j);
        }
        Ok(word)
    }

    /// Inverse of [`Realization::peel`].
    pub fn replay(&self, word: &[usize]) -> Result<BInfElement> {
        word.iter()
            .rev()
            .try_fold(BInfElement::highest(), |acc, &j| self.f(j, &acc))
    }
}

/// `B(infinity)` in the standard realization, with the rotated realizations
/// used to compute `Psi_i`.
#[derive(Clone, Debug)]
pub struct BInfinity {
    cartan: Arc<CartanData>,
    standard: Realization,
    rotated: Vec<Realization>,
    max_depth: usize,
}

impl BInfinity {
    pub fn new(cartan: Arc<CartanData>) -> Self {
        Self::with_padding(cartan, 0)
    }

    /// Realization whose windows start `pad_blocks` iota-blocks longer than needed.
    pub fn with_padding(cartan: Arc<CartanData>, pad_blocks: usize) -> Self {
        let block = cartan.iota_block();
        let mk = |prefix: Vec<usize>| {
            let mut r = Realization::new(cartan.clone(), prefix, block.clone());
            r.pad_blocks = pad_blocks;
            r
        };
        let standard = mk(Vec::new());
        let rotated = (0..cartan.rank).map(|i| mk(vec![i])).collect();
        BInfinity {
            cartan,
            standard,
            rotated,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn cartan_data(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn standard(&self) -> &Realization {
        &self.standard
    }

    pub fn highest(&self) -> BInfElement {
        BInfElement::highest()
    }

    pub fn f_op(&self, i: usize, b: &BInfElement) -> Result<BInfElement> {
        self.cartan.check_color(i)?;
        self.standard.f(i, b)
    }

    pub fn e_op(&self, i: usize, b: &BInfElement) -> Result<Option<BInfElement>> {
        self.cartan.check_color(i)?;
        self.standard.e(i, b)
    }

    pub fn eps_op(&self, i: usize, b: &BInfElement) -> i64 {
        self.standard.eps(i, b)
    }

    /// `phi_i = eps_i + <wt, h_i>`.
    pub fn phi_op(&self, i: usize, b: &BInfElement) -> i64 {
        self.standard.eps(i, b) + self.standard.wt(b).pair(i)
    }

    pub fn weight(&self, b: &BInfElement) -> Weight {
        self.standard.wt(b)
    }

    pub fn peel(&self, b: &BInfElement) -> Result<Vec<usize>> {
        self.standard.peel(b)
    }

    pub fn replay(&self, word: &[usize]) -> Result<BInfElement> {
        word.iter().try_for_each(|&j| self.cartan.check_color(j))?;
        self.standard.replay(word)
    }

    /// `f_{word[0]} ... f_{word[m-1]} u_infinity` as the sequence of operators
    /// applied in order; convenience for tests and examples.
    pub fn apply_f_word(&self, letters_in_order: &[usize]) -> Result<BInfElement> {
        letters_in_order
            .iter()
            .try_fold(self.highest(), |acc, &j| self.f_op(j, &acc))
    }

    /// `Psi_i(b) = b' (x) b''` with `b'' = b_i(-a)`.
    pub fn psi(&self, i: usize, b: &BInfElement) -> Result<(BInfElement, ElementaryElement)> {
        self.cartan.check_color(i)?;
        let rotated = self.rotated[i].replay(&self.standard.peel(b)?)?;
        let a = rotated.coord(1);
        let rest = BInfElement::from_coords(rotated.coords.iter().skip(1).copied().collect());
        Ok((rest, ElementaryElement::new(i, -i64::from(a))))
    }

    /// Preimage of `b' (x) b_i(level)` under `Psi_i`. Fails if the pair is not in the image.
    pub fn psi_inverse(&self, i: usize, rest: &BInfElement, level: i64) -> Result<BInfElement> {
        self.cartan.check_color(i)?;
        if level > 0 {
            return Err(Error::Internal(format!(
                "b_{}({level}) is not in the image of Psi",
                i + 1
            )));
        }
        let mut coords = Vec::with_capacity(rest.coords.len() + 1);
        coords.push((-level) as u32);
        coords.extend_from_slice(&rest.coords);
        let rotated = BInfElement::from_coords(coords);
        let word = self.rotated[i].peel(&rotated)?;
        self.standard.replay(&word)
    }

    pub fn f_star(&self, i: usize, b: &BInfElement) -> Result<BInfElement> {
        let (rest, tail) = self.psi(i, b)?;
        self.psi_inverse(i, &rest, tail.level - 1)
    }

    pub fn e_star(&self, i: usize, b: &BInfElement) -> Result<Option<BInfElement>> {
        let (rest, tail) = self.psi(i, b)?;
        if tail.level == 0 {
            return Ok(None);
        }
        self.psi_inverse(i, &rest, tail.level + 1).map(Some)
    }

    /// Largest `k` with `e_i*^k b != 0`.
    pub fn eps_star(&self, i: usize, b: &BInfElement) -> Result<i64> {
        Ok(-self.psi(i, b)?.1.level)
    }

    /// `f_i*^k b`.
    pub fn f_star_pow(&self, i: usize, k: usize, b: &BInfElement) -> Result<BInfElement> {
        if k == 0 {
            return Ok(b.clone());
        }
        let (rest, tail) = self.psi(i, b)?;
        self.psi_inverse(i, &rest, tail.level - k as i64)
    }

    /// The star involution: peel `b = f_{j_1} ... f_{j_m} u` and return
    /// `f_{j_1}* ... f_{j_m}* u`.
    pub fn star(&self, b: &BInfElement) -> Result<BInfElement> {
        let word = self.standard.peel(b)?;
        word.iter()
            .rev()
            .try_fold(self.highest(), |acc, &j| self.f_star(j, &acc))
    }

    /// Elements of depth at most `depth`, one sorted layer per depth.
    pub fn generate_layers(&self, depth: usize) -> Result<Vec<Vec<BInfElement>>> {
        if depth > self.max_depth {
            return Err(Error::Capacity(format!(
                "depth {depth} exceeds the configured maximum {}",
                self.max_depth
            )));
        }
        let mut layers = vec![vec![self.highest()]];
        for _ in 0..depth {
            let last = layers.last().expect("non-empty");
            let rank = self.cartan.rank;
            let images = par::map(last, |b| {
                (0..rank)
                    .map(|i| self.standard.f(i, b))
                    .collect::<Result<Vec<_>>>()
            });
            let mut next = BTreeSet::new();
            for imgs in images {
                next.extend(imgs?);
            }
            layers.push(next.into_iter().collect());
        }
        Ok(layers)
    }

    pub fn generate(&self, depth: usize) -> Result<BTreeSet<BInfElement>> {
        Ok(self.generate_layers(depth)?.into_iter().flatten().collect())
    }
}

impl Crystal for BInfinity {
    type Element = BInfElement;

    fn cartan(&self) -> &CartanData {
        &self.cartan
    }
    fn f(&self, i: usize, b: &BInfElement) -> Result<Option<BInfElement>> {
        self.f_op(i, b).map(Some)
    }
    fn e(&self, i: usize, b: &BInfElement) -> Result<Option<BInfElement>> {
        self.e_op(i, b)
    }
    fn eps(&self, i: usize, b: &BInfElement) -> Result<ExtInt> {
        Ok(ExtInt::Finite(self.eps_op(i, b)))
    }
    fn phi(&self, i: usize, b: &BInfElement) -> Result<ExtInt> {
        Ok(ExtInt::Finite(self.phi_op(i, b)))
    }
    fn wt(&self, b: &BInfElement) -> Weight {
        self.weight(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLabel;
    use crate::crystal::{Elementary, Tensor};

    fn binf(t: TypeLabel) -> BInfinity {
        BInfinity::new(Arc::new(CartanData::new(t)))
    }

    fn c(v: &[u32]) -> BInfElement {
        BInfElement::from_coords(v.to_vec())
    }

    #[test]
    fn operator_examples_a2() {
        let b = binf(TypeLabel::A2);
        let u = b.highest();
        let f1 = b.f_op(0, &u).unwrap();
        assert_eq!(f1, c(&[1]));
        assert_eq!(b.f_op(0, &f1).unwrap(), c(&[2]));
        assert_eq!(b.e_op(0, &u).unwrap(), None);
        assert_eq!(b.e_op(0, &f1).unwrap(), Some(u.clone()));
        assert_eq!(b.weight(&f1), Weight(vec![-2, 1]));
    }

    #[test]
    fn peel_examples() {
        let b = binf(TypeLabel::A2);
        assert_eq!(b.peel(&b.highest()).unwrap(), Vec::<usize>::new());
        assert_eq!(b.peel(&b.apply_f_word(&[0]).unwrap()).unwrap(), vec![0]);
        let x = b.apply_f_word(&[0, 1]).unwrap();
        let word = b.peel(&x).unwrap();
        assert_eq!(word.len(), 2);
        assert_eq!(b.replay(&word).unwrap(), x);
    }

    #[test]
    fn psi_examples() {
        let b = binf(TypeLabel::A2);
        let u = b.highest();
        assert_eq!(
            b.psi(0, &u).unwrap(),
            (u.clone(), ElementaryElement::new(0, 0))
        );
        let f1 = b.f_op(0, &u).unwrap();
        assert_eq!(
            b.psi(0, &f1).unwrap(),
            (u.clone(), ElementaryElement::new(0, -1))
        );
        let f2 = b.f_op(1, &u).unwrap();
        assert_eq!(
            b.psi(0, &f2).unwrap(),
            (f2.clone(), ElementaryElement::new(0, 0))
        );
    }

    #[test]
    fn star_operator_examples() {
        let b = binf(TypeLabel::A2);
        let u = b.highest();
        let f1 = b.f_op(0, &u).unwrap();
        assert_eq!(b.f_star(0, &u).unwrap(), f1);
        assert_eq!(b.f_star(0, &f1).unwrap(), b.apply_f_word(&[0, 0]).unwrap());
        // f_2* f_1 u = f_1 f_2* u = f_1 f_2 u
        assert_eq!(b.f_star(1, &f1).unwrap(), b.apply_f_word(&[1, 0]).unwrap());
        assert_eq!(b.e_star(0, &u).unwrap(), None);
        assert_eq!(b.e_star(0, &f1).unwrap(), Some(u.clone()));
        assert_eq!(b.eps_star(0, &u).unwrap(), 0);
        assert_eq!(b.eps_star(0, &f1).unwrap(), 1);
        assert_eq!(b.eps_star(1, &f1).unwrap(), 0);
    }

    #[test]
    fn star_examples() {
        let b = binf(TypeLabel::A2);
        let u = b.highest();
        assert_eq!(b.star(&u).unwrap(), u);
        let f1 = b.f_op(0, &u).unwrap();
        assert_eq!(b.star(&f1).unwrap(), f1);
        // star(f_2 f_1 u) = f_1 f_2 u
        let f2f1 = b.apply_f_word(&[0, 1]).unwrap();
        let f1f2 = b.apply_f_word(&[1, 0]).unwrap();
        assert_ne!(f2f1, f1f2);
        assert_eq!(b.star(&f2f1).unwrap(), f1f2);
    }

    /// Kostant partition count: number of ways to write `beta` as a sum of positive roots.
    fn kostant(roots: &[Vec<i64>], beta: &[i64]) -> usize {
        match roots.split_first() {
            None => usize::from(beta.iter().all(|&x| x == 0)),
            Some((r, rest)) => {
                let mut total = 0;
                let mut cur = beta.to_vec();
                while cur.iter().all(|&x| x >= 0) {
                    total += kostant(rest, &cur);
                    for (x, y) in cur.iter_mut().zip(r) {
                        *x -= y;
                    }
                }
                total
            }
        }
    }

    fn kostant_count_up_to(cartan: &CartanData, depth: i64) -> usize {
        let n = cartan.rank;
        let mut total = 0;
        let mut stack = vec![vec![0i64; n]];
        let mut seen = BTreeSet::new();
        while let Some(beta) = stack.pop() {
            if !seen.insert(beta.clone()) {
                continue;
            }
            total += kostant(&cartan.positive_roots, &beta);
            if beta.iter().sum::<i64>() < depth {
                for j in 0..n {
                    let mut next = beta.clone();
                    next[j] += 1;
                    stack.push(next);
                }
            }
        }
        total
    }

    #[test]
    fn generation_matches_kostant_partition_counts() {
        let b = binf(TypeLabel::A1);
        assert_eq!(b.generate(0).unwrap().len(), 1);
        assert_eq!(b.generate(3).unwrap().len(), 4);
        for t in TypeLabel::ALL {
            let b = binf(t);
            for d in 0..=5 {
                assert_eq!(
                    b.generate(d).unwrap().len(),
                    kostant_count_up_to(b.cartan_data(), d as i64),
                    "{t} depth {d}"
                );
            }
        }
        // A2 depth 2: u; f1u, f2u; f1^2u, f2^2u and two elements of weight -a1-a2.
        assert_eq!(binf(TypeLabel::A2).generate(2).unwrap().len(), 7);
    }

    #[test]
    fn depth_equals_height_and_weight_formula() {
        for t in TypeLabel::ALL {
            let b = binf(t);
            for x in b.generate(5).unwrap() {
                assert_eq!(
                    b.cartan_data().height(&b.weight(&x).scale(-1)),
                    Some(x.depth() as i64)
                );
            }
        }
    }

    #[test]
    fn generation_beyond_capacity_is_an_error() {
        let b = binf(TypeLabel::A2).with_max_depth(3);
        assert!(matches!(b.generate(4), Err(Error::Capacity(_))));
    }

    #[test]
    fn window_overflow_is_a_capacity_error() {
        let cartan = Arc::new(CartanData::new(TypeLabel::A1));
        let mut r = Realization::new(cartan, Vec::new(), vec![0]);
        r.max_extra = 0;
        assert!(matches!(
            r.f(0, &BInfElement::highest()),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn psi_is_a_crystal_morphism_on_small_depth() {
        let b = binf(TypeLabel::B2);
        let cartan = b.cartan_data().clone();
        for x in b.generate(4).unwrap() {
            for i in 0..2 {
                let target = Tensor(&b, Elementary::new(cartan.clone(), i).unwrap());
                let image = b.psi(i, &x).unwrap();
                let lhs = target.f(i, &image).unwrap();
                let rhs = b.psi(i, &b.f_op(i, &x).unwrap()).unwrap();
                assert_eq!(lhs, Some(rhs));
                let lhs = target.e(i, &image).unwrap();
                let rhs = b.e_op(i, &x).unwrap().map(|y| b.psi(i, &y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
