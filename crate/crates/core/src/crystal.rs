//! The crystal contract, the elementary crystals `B_i` and `T_lambda`, and
//! tensor products.
//!
//! Tensor products follow the rule
//! `f_i(b1 (x) b2) = f_i b1 (x) b2` if `phi_i(b1) > eps_i(b2)`, else `b1 (x) f_i b2`,
//! together with its standard completion
//! `e_i(b1 (x) b2) = e_i b1 (x) b2` if `phi_i(b1) >= eps_i(b2)`, else `b1 (x) e_i b2`,
//! `eps_i(b1 (x) b2) = max(eps_i(b1), eps_i(b2) - <wt b1, h_i>)`,
//! `phi_i(b1 (x) b2) = max(phi_i(b2), phi_i(b1) + <wt b2, h_i>)`.
//! Longer tensors are folded left-nested: `((b1 (x) b2) (x) b3) ...`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Sub};
use std::sync::Arc;

use crate::cartan::{CartanData, Weight};
use crate::error::Result;

/// `Z ∪ {-inf}` with `-inf` absorbing under addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    NegInfinity,
    Finite(i64),
}

impl ExtInt {
    pub const NEG_INFINITY: ExtInt = ExtInt::NegInfinity;

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(n) => Some(n),
            ExtInt::NegInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        ExtInt::Finite(n)
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: i64) -> ExtInt {
        match self {
            ExtInt::Finite(n) => ExtInt::Finite(n + rhs),
            ExtInt::NegInfinity => ExtInt::NegInfinity,
        }
    }
}

impl Sub<i64> for ExtInt {
    type Output = ExtInt;
    fn sub(self, rhs: i64) -> ExtInt {
        self + (-rhs)
    }
}

impl PartialEq<i64> for ExtInt {
    fn eq(&self, other: &i64) -> bool {
        *self == ExtInt::Finite(*other)
    }
}

impl PartialOrd<i64> for ExtInt {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&ExtInt::Finite(*other)))
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(n) => write!(f, "{n}"),
            ExtInt::NegInfinity => write!(f, "-inf"),
        }
    }
}

/// A crystal over a fixed Cartan datum. `Ok(None)` is the zero outcome of a
/// partial operator; errors are reserved for capacity and consistency failures.
pub trait Crystal {
    type Element: Clone + Eq + Ord + Hash + fmt::Debug;

    fn cartan(&self) -> &CartanData;
    fn f(&self, i: usize, b: &Self::Element) -> Result<Option<Self::Element>>;
    fn e(&self, i: usize, b: &Self::Element) -> Result<Option<Self::Element>>;
    fn eps(&self, i: usize, b: &Self::Element) -> Result<ExtInt>;
    fn phi(&self, i: usize, b: &Self::Element) -> Result<ExtInt>;
    fn wt(&self, b: &Self::Element) -> Weight;

    /// `f_i^k b`, stopping at zero.
    fn f_pow(&self, i: usize, k: usize, b: &Self::Element) -> Result<Option<Self::Element>> {
        let mut cur = b.clone();
        for _ in 0..k {
            match self.f(i, &cur)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    fn e_pow(&self, i: usize, k: usize, b: &Self::Element) -> Result<Option<Self::Element>> {
        let mut cur = b.clone();
        for _ in 0..k {
            match self.e(i, &cur)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }
}

impl<C: Crystal + ?Sized> Crystal for &C {
    type Element = C::Element;

    fn cartan(&self) -> &CartanData {
        (**self).cartan()
    }
    fn f(&self, i: usize, b: &Self::Element) -> Result<Option<Self::Element>> {
        (**self).f(i, b)
    }
    fn e(&self, i: usize, b: &Self::Element) -> Result<Option<Self::Element>> {
        (**self).e(i, b)
    }
    fn eps(&self, i: usize, b: &Self::Element) -> Result<ExtInt> {
        (**self).eps(i, b)
    }
    fn phi(&self, i: usize, b: &Self::Element) -> Result<ExtInt> {
        (**self).phi(i, b)
    }
    fn wt(&self, b: &Self::Element) -> Weight {
        (**self).wt(b)
    }
}

/// `b_i(n)`; `b_i = b_i(0)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryElement {
    pub color: usize,
    pub level: i64,
}

impl ElementaryElement {
    pub fn new(color: usize, level: i64) -> Self {
        ElementaryElement { color, level }
    }

    pub fn eps(&self, i: usize) -> ExtInt {
        if i == self.color {
            ExtInt::Finite(-self.level)
        } else {
            ExtInt::NegInfinity
        }
    }

    pub fn phi(&self, i: usize) -> ExtInt {
        if i == self.color {
            ExtInt::Finite(self.level)
        } else {
            ExtInt::NegInfinity
        }
    }

    pub fn f(&self, i: usize) -> Option<Self> {
        (i == self.color).then(|| ElementaryElement::new(self.color, self.level - 1))
    }

    pub fn e(&self, i: usize) -> Option<Self> {
        (i == self.color).then(|| ElementaryElement::new(self.color, self.level + 1))
    }

    /// `<wt b_i(n), h_j> = n c_{j i}`.
    pub fn wt_pair(&self, cartan: &CartanData, j: usize) -> i64 {
        self.level * cartan.entry(j, self.color)
    }
}

impl fmt::Display for ElementaryElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}({})", self.color + 1, self.level)
    }
}

/// The elementary crystal `B_i`.
#[derive(Clone, Debug)]
pub struct Elementary {
    cartan: Arc<CartanData>,
    color: usize,
}

impl Elementary {
    pub fn new(cartan: Arc<CartanData>, color: usize) -> Result<Self> {
        cartan.check_color(color)?;
        Ok(Elementary { cartan, color })
    }

    pub fn color(&self) -> usize {
        self.color
    }

    pub fn element(&self, level: i64) -> ElementaryElement {
        ElementaryElement::new(self.color, level)
    }
}

impl Crystal for Elementary {
    type Element = ElementaryElement;

    fn cartan(&self) -> &CartanData {
        &self.cartan
    }
    fn f(&self, i: usize, b: &ElementaryElement) -> Result<Option<ElementaryElement>> {
        Ok(b.f(i))
    }
    fn e(&self, i: usize, b: &ElementaryElement) -> Result<Option<ElementaryElement>> {
        Ok(b.e(i))
    }
    fn eps(&self, i: usize, b: &ElementaryElement) -> Result<ExtInt> {
        Ok(b.eps(i))
    }
    fn phi(&self, i: usize, b: &ElementaryElement) -> Result<ExtInt> {
        Ok(b.phi(i))
    }
    fn wt(&self, b: &ElementaryElement) -> Weight {
        self.cartan.simple_root(b.color).scale(b.level)
    }
}

/// The single element `t_lambda`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TLambdaElement {
    pub lambda: Weight,
}

/// The one-element crystal `T_lambda`: all statistics `-inf`, both operators zero.
#[derive(Clone, Debug)]
pub struct TLambda {
    cartan: Arc<CartanData>,
    lambda: Weight,
}

impl TLambda {
    pub fn new(cartan: Arc<CartanData>, lambda: Weight) -> Result<Self> {
        cartan.check_weight(&lambda)?;
        Ok(TLambda { cartan, lambda })
    }

    pub fn element(&self) -> TLambdaElement {
        TLambdaElement {
            lambda: self.lambda.clone(),
        }
    }
}

impl Crystal for TLambda {
    type Element = TLambdaElement;

    fn cartan(&self) -> &CartanData {
        &self.cartan
    }
    fn f(&self, _: usize, _: &TLambdaElement) -> Result<Option<TLambdaElement>> {
        Ok(None)
    }
    fn e(&self, _: usize, _: &TLambdaElement) -> Result<Option<TLambdaElement>> {
        Ok(None)
    }
    fn eps(&self, _: usize, _: &TLambdaElement) -> Result<ExtInt> {
        Ok(ExtInt::NegInfinity)
    }
    fn phi(&self, _: usize, _: &TLambdaElement) -> Result<ExtInt> {
        Ok(ExtInt::NegInfinity)
    }
    fn wt(&self, b: &TLambdaElement) -> Weight {
        b.lambda.clone()
    }
}

/// The statistics of one tensor factor for a fixed color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorStats {
    pub eps: ExtInt,
    pub phi: ExtInt,
    pub wt: i64,
}

/// Which factor `f_i` acts on, for the left-nested fold of `stats`.
pub fn fold_f_target(stats: &[FactorStats]) -> usize {
    let phis = prefix_phis(stats);
    // On P_k = P_{k-1} (x) s_k, act on P_{k-1} iff phi(P_{k-1}) > eps(s_k).
    (1..stats.len())
        .rev()
        .find(|&k| phis[k - 1] <= stats[k].eps)
        .unwrap_or(0)
}

/// Which factor `e_i` acts on, for the left-nested fold of `stats`.
pub fn fold_e_target(stats: &[FactorStats]) -> usize {
    let phis = prefix_phis(stats);
    (1..stats.len())
        .rev()
        .find(|&k| phis[k - 1] < stats[k].eps)
        .unwrap_or(0)
}

pub fn fold_eps(stats: &[FactorStats]) -> ExtInt {
    let mut eps = ExtInt::NegInfinity;
    let mut wt = 0i64;
    for (k, s) in stats.iter().enumerate() {
        eps = if k == 0 { s.eps } else { eps.max(s.eps - wt) };
        wt += s.wt;
    }
    eps
}

pub fn fold_phi(stats: &[FactorStats]) -> ExtInt {
    *prefix_phis(stats).last().unwrap_or(&ExtInt::NegInfinity)
}

fn prefix_phis(stats: &[FactorStats]) -> Vec<ExtInt> {
    let mut out = Vec::with_capacity(stats.len());
    let mut cur = ExtInt::NegInfinity;
    for (k, s) in stats.iter().enumerate() {
        cur = if k == 0 { s.phi } else { s.phi.max(cur + s.wt) };
        out.push(cur);
    }
    out
}

/// Binary tensor product `A (x) B`; elements are pairs `(left, right)`.
#[derive(Clone, Debug)]
pub struct Tensor<A, B>(pub A, pub B);

impl<A: Crystal, B: Crystal> Crystal for Tensor<A, B> {
    type Element = (A::Element, B::Element);

    fn cartan(&self) -> &CartanData {
        self.0.cartan()
    }

    fn f(&self, i: usize, (b1, b2): &Self::Element) -> Result<Option<Self::Element>> {
        if self.0.phi(i, b1)? > self.1.eps(i, b2)? {
            Ok(self.0.f(i, b1)?.map(|x| (x, b2.clone())))
        } else {
            Ok(self.1.f(i, b2)?.map(|y| (b1.clone(), y)))
        }
    }

    fn e(&self, i: usize, (b1, b2): &Self::Element) -> Result<Option<Self::Element>> {
        if self.0.phi(i, b1)? >= self.1.eps(i, b2)? {
            Ok(self.0.e(i, b1)?.map(|x| (x, b2.clone())))
        } else {
            Ok(self.1.e(i, b2)?.map(|y| (b1.clone(), y)))
        }
    }

    fn eps(&self, i: usize, (b1, b2): &Self::Element) -> Result<ExtInt> {
        Ok(self
            .0
            .eps(i, b1)?
            .max(self.1.eps(i, b2)? - self.0.wt(b1).pair(i)))
    }

    fn phi(&self, i: usize, (b1, b2): &Self::Element) -> Result<ExtInt> {
        Ok(self
            .1
            .phi(i, b2)?
            .max(self.0.phi(i, b1)? + self.1.wt(b2).pair(i)))
    }

    fn wt(&self, (b1, b2): &Self::Element) -> Weight {
        self.0.wt(b1).add(&self.1.wt(b2))
    }
}

/// A factor of a [`TensorWord`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Elementary(ElementaryElement),
    T(Weight),
}

impl Factor {
    fn stats(&self, cartan: &CartanData, i: usize) -> FactorStats {
        match self {
            Factor::Elementary(b) => FactorStats {
                eps: b.eps(i),
                phi: b.phi(i),
                wt: b.wt_pair(cartan, i),
            },
            Factor::T(lambda) => FactorStats {
                eps: ExtInt::NegInfinity,
                phi: ExtInt::NegInfinity,
                wt: lambda.pair(i),
            },
        }
    }

    fn wt(&self, cartan: &CartanData) -> Weight {
        match self {
            Factor::Elementary(b) => cartan.simple_root(b.color).scale(b.level),
            Factor::T(lambda) => lambda.clone(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Elementary(b) => write!(f, "{b}"),
            Factor::T(l) => write!(f, "t{l}"),
        }
    }
}

/// Finite tensors of elementary and `T_lambda` factors, leftmost factor first.
#[derive(Clone, Debug)]
pub struct TensorWord {
    cartan: Arc<CartanData>,
}

impl TensorWord {
    pub fn new(cartan: Arc<CartanData>) -> Self {
        TensorWord { cartan }
    }

    fn stats(&self, i: usize, b: &[Factor]) -> Vec<FactorStats> {
        b.iter().map(|x| x.stats(&self.cartan, i)).collect()
    }
}

impl Crystal for TensorWord {
    type Element = Vec<Factor>;

    fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    fn f(&self, i: usize, b: &Vec<Factor>) -> Result<Option<Vec<Factor>>> {
        if b.is_empty() {
            return Ok(None);
        }
        let k = fold_f_target(&self.stats(i, b));
        Ok(match &b[k] {
            Factor::Elementary(x) => x.f(i).map(|y| {
                let mut out = b.clone();
                out[k] = Factor::Elementary(y);
                out
            }),
            Factor::T(_) => None,
        })
    }

    fn e(&self, i: usize, b: &Vec<Factor>) -> Result<Option<Vec<Factor>>> {
        if b.is_empty() {
            return Ok(None);
        }
        let k = fold_e_target(&self.stats(i, b));
        Ok(match &b[k] {
            Factor::Elementary(x) => x.e(i).map(|y| {
                let mut out = b.clone();
                out[k] = Factor::Elementary(y);
                out
            }),
            Factor::T(_) => None,
        })
    }

    fn eps(&self, i: usize, b: &Vec<Factor>) -> Result<ExtInt> {
        Ok(fold_eps(&self.stats(i, b)))
    }

    fn phi(&self, i: usize, b: &Vec<Factor>) -> Result<ExtInt> {
        Ok(fold_phi(&self.stats(i, b)))
    }

    fn wt(&self, b: &Vec<Factor>) -> Weight {
        b.iter().fold(Weight::zero(self.cartan.rank), |acc, x| {
            acc.add(&x.wt(&self.cartan))
        })
    }
}

/// Finitely supported integer combination of elements; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum<E: Ord> {
    terms: BTreeMap<E, i64>,
}

impl<E: Ord> Default for FormalSum<E> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<E: Ord + Clone> FormalSum<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(e: E) -> Self {
        let mut s = Self::zero();
        s.add_term(e, 1);
        s
    }

    /// Sum of the given elements, each with coefficient one (repeats accumulate).
    pub fn from_elements<I: IntoIterator<Item = E>>(it: I) -> Self {
        let mut s = Self::zero();
        for e in it {
            s.add_term(e, 1);
        }
        s
    }

    pub fn add_term(&mut self, e: E, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add_assign(&mut self, other: &FormalSum<E>) {
        for (e, &c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    pub fn coeff(&self, e: &E) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&E, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &E> {
        self.terms.keys()
    }

    /// True when every coefficient is 1, i.e. the sum is the indicator of a set.
    pub fn is_set(&self) -> bool {
        self.terms.values().all(|&c| c == 1)
    }

    pub fn map_keys<F: Ord + Clone>(&self, mut g: impl FnMut(&E) -> F) -> FormalSum<F> {
        let mut out = FormalSum::zero();
        for (e, &c) in &self.terms {
            out.add_term(g(e), c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLabel;
    use proptest::prelude::*;

    fn a2() -> Arc<CartanData> {
        Arc::new(CartanData::new(TypeLabel::A2))
    }

    fn el(color: usize, level: i64) -> Factor {
        Factor::Elementary(ElementaryElement::new(color, level))
    }

    #[test]
    fn ext_int_arithmetic() {
        let n = ExtInt::NEG_INFINITY;
        assert_eq!(n + 5, n);
        assert_eq!(n - 5, n);
        assert!(n < ExtInt::Finite(i64::MIN));
        assert_eq!(ExtInt::Finite(3).max(n), ExtInt::Finite(3));
        assert_eq!(ExtInt::Finite(3) + 2, 5);
        assert!(ExtInt::Finite(0) > -1);
    }

    #[test]
    fn elementary_examples() {
        let b1 = Elementary::new(a2(), 0).unwrap();
        let b = b1.element(0);
        assert_eq!(b1.f(0, &b).unwrap(), Some(b1.element(-1)));
        assert_eq!(b1.e(0, &b1.element(-1)).unwrap(), Some(b));
        assert_eq!(b1.phi(0, &b1.element(-2)).unwrap(), -2);
        assert_eq!(b1.eps(0, &b1.element(-2)).unwrap(), 2);
        assert_eq!(b1.f(1, &b1.element(0)).unwrap(), None);
        assert_eq!(b1.eps(1, &b1.element(0)).unwrap(), ExtInt::NEG_INFINITY);
        assert_eq!(b1.wt(&b1.element(-1)), Weight(vec![-2, 1]));
    }

    #[test]
    fn t_lambda_is_inert() {
        let t = TLambda::new(a2(), Weight(vec![2, 1])).unwrap();
        let x = t.element();
        for i in 0..2 {
            assert_eq!(t.f(i, &x).unwrap(), None);
            assert_eq!(t.e(i, &x).unwrap(), None);
            assert_eq!(t.eps(i, &x).unwrap(), ExtInt::NEG_INFINITY);
        }
        assert_eq!(t.wt(&x).pair(0), 2);
    }

    #[test]
    fn tensor_examples() {
        let tw = TensorWord::new(a2());
        assert_eq!(
            tw.f(0, &vec![el(0, 0), el(0, 0)]).unwrap(),
            Some(vec![el(0, 0), el(0, -1)])
        );
        assert_eq!(
            tw.f(0, &vec![el(0, 1), el(0, 0)]).unwrap(),
            Some(vec![el(0, 0), el(0, 0)])
        );
        assert_eq!(
            tw.e(0, &vec![el(0, 0), el(0, -1)]).unwrap(),
            Some(vec![el(0, 0), el(0, 0)])
        );
        assert_eq!(tw.eps(0, &vec![el(0, 0), el(0, -1)]).unwrap(), 1);
        assert_eq!(tw.phi(0, &vec![el(0, 1), el(0, 0)]).unwrap(), 1);
        // eps(t) = -inf forces the left factor.
        let t = Factor::T(Weight(vec![1, 0]));
        assert_eq!(
            tw.f(0, &vec![el(0, 0), t.clone()]).unwrap(),
            Some(vec![el(0, -1), t.clone()])
        );
        assert_eq!(tw.f(0, &vec![t.clone()]).unwrap(), None);
    }

    #[test]
    fn binary_tensor_agrees_with_word_fold() {
        let c = a2();
        let t = Tensor(
            Elementary::new(c.clone(), 0).unwrap(),
            Elementary::new(c.clone(), 1).unwrap(),
        );
        let tw = TensorWord::new(c);
        for l1 in -3..=3 {
            for l2 in -3..=3 {
                let pair = (ElementaryElement::new(0, l1), ElementaryElement::new(1, l2));
                let word = vec![el(0, l1), el(1, l2)];
                for i in 0..2 {
                    let fp = t
                        .f(i, &pair)
                        .unwrap()
                        .map(|(a, b)| vec![Factor::Elementary(a), Factor::Elementary(b)]);
                    assert_eq!(fp, tw.f(i, &word).unwrap());
                    let ep = t
                        .e(i, &pair)
                        .unwrap()
                        .map(|(a, b)| vec![Factor::Elementary(a), Factor::Elementary(b)]);
                    assert_eq!(ep, tw.e(i, &word).unwrap());
                    assert_eq!(t.eps(i, &pair).unwrap(), tw.eps(i, &word).unwrap());
                    assert_eq!(t.phi(i, &pair).unwrap(), tw.phi(i, &word).unwrap());
                }
            }
        }
    }

    #[test]
    fn formal_sum_drops_zero_terms() {
        let mut s = FormalSum::from_elements([1, 2, 2]);
        assert_eq!(s.coeff(&2), 2);
        assert!(!s.is_set());
        s.add_term(2, -2);
        assert_eq!(s.len(), 1);
        assert!(s.is_set());
        s.add_term(1, -1);
        assert!(s.is_zero());
    }

    fn factor_strategy() -> impl Strategy<Value = Factor> {
        prop_oneof![
            4 => (0usize..2, -3i64..=3).prop_map(|(c, l)| el(c, l)),
            1 => (0i64..3, 0i64..3).prop_map(|(a, b)| Factor::T(Weight(vec![a, b]))),
        ]
    }

    proptest! {
        #[test]
        fn tensor_word_axioms(word in proptest::collection::vec(factor_strategy(), 1..5), i in 0usize..2) {
            let tw = TensorWord::new(a2());
            let alpha = tw.cartan().simple_root(i);
            if let Some(fb) = tw.f(i, &word).unwrap() {
                prop_assert_eq!(tw.e(i, &fb).unwrap(), Some(word.clone()));
                prop_assert_eq!(tw.wt(&fb), tw.wt(&word).sub(&alpha));
            }
            if let Some(eb) = tw.e(i, &word).unwrap() {
                prop_assert_eq!(tw.f(i, &eb).unwrap(), Some(word.clone()));
            }
            let (eps, phi) = (tw.eps(i, &word).unwrap(), tw.phi(i, &word).unwrap());
            if eps.is_finite() && phi.is_finite() {
                prop_assert_eq!(phi, eps + tw.wt(&word).pair(i));
            }
        }
    }
}
