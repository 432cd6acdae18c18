//! The highest-weight crystal `B(lambda)` inside `B(infinity) (x) T_lambda`.
//!
//! Membership is `{b : eps_i*(b) <= <lambda, h_i> for all i}`; `e_i` is the
//! tensor action (which always lands on the `B(infinity)` factor) and `f_i` is
//! cut off to zero where it would leave the subset.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::binf::{BInfElement, BInfinity};
use crate::cartan::{CartanData, Weight};
use crate::charring::WeightPolynomial;
use crate::crystal::{Crystal, ExtInt, FormalSum, TLambda, TLambdaElement, Tensor};
use crate::error::{Error, Result};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BLambdaElement {
    pub base: BInfElement,
    pub lambda: Weight,
}

#[derive(Clone, Debug)]
pub struct BLambda {
    binf: Arc<BInfinity>,
    lambda: Weight,
    t: TLambda,
}

impl BLambda {
    pub fn new(binf: Arc<BInfinity>, lambda: Weight) -> Result<Self> {
        let cartan = binf.cartan_data().clone();
        cartan.check_weight(&lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let t = TLambda::new(cartan, lambda.clone())?;
        Ok(BLambda { binf, lambda, t })
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn binf(&self) -> &Arc<BInfinity> {
        &self.binf
    }

    /// `u_lambda`, i.e. `u_infinity (x) t_lambda`.
    pub fn highest(&self) -> BLambdaElement {
        self.wrap(BInfElement::highest())
    }

    fn wrap(&self, base: BInfElement) -> BLambdaElement {
        BLambdaElement {
            base,
            lambda: self.lambda.clone(),
        }
    }

    fn ambient(&self) -> Tensor<&BInfinity, &TLambda> {
        Tensor(&*self.binf, &self.t)
    }

    fn pair(&self, x: &BLambdaElement) -> (BInfElement, TLambdaElement) {
        (x.base.clone(), self.t.element())
    }

    /// Whether `b (x) t_lambda` lies in the image of `B(lambda)`.
    pub fn contains(&self, b: &BInfElement) -> Result<bool> {
        for j in 0..self.lambda.rank() {
            if self.binf.eps_star(j, b)? > self.lambda.pair(j) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Breadth-first closure of `u_lambda` under every `f_i`.
    pub fn generate(&self) -> Result<HighestWeightCrystal> {
        HighestWeightCrystal::build(self)
    }
}

impl Crystal for BLambda {
    type Element = BLambdaElement;

    fn cartan(&self) -> &CartanData {
        self.binf.cartan_data()
    }

    fn f(&self, i: usize, x: &BLambdaElement) -> Result<Option<BLambdaElement>> {
        match self.ambient().f(i, &self.pair(x))? {
            Some((b, _)) if self.contains(&b)? => Ok(Some(self.wrap(b))),
            _ => Ok(None),
        }
    }

    fn e(&self, i: usize, x: &BLambdaElement) -> Result<Option<BLambdaElement>> {
        Ok(self
            .ambient()
            .e(i, &self.pair(x))?
            .map(|(b, _)| self.wrap(b)))
    }

    fn eps(&self, i: usize, x: &BLambdaElement) -> Result<ExtInt> {
        self.ambient().eps(i, &self.pair(x))
    }

    fn phi(&self, i: usize, x: &BLambdaElement) -> Result<ExtInt> {
        self.ambient().phi(i, &self.pair(x))
    }

    fn wt(&self, x: &BLambdaElement) -> Weight {
        self.lambda.add(&self.binf.weight(&x.base))
    }
}

/// Index of an element inside a [`HighestWeightCrystal`].
pub type ElementId = usize;

/// A maximal chain `head, f_i head, ..., f_i^{phi_i(head)} head` with `e_i head = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IString {
    pub color: usize,
    pub head: ElementId,
    pub members: Vec<ElementId>,
}

impl IString {
    pub fn tail(&self) -> ElementId {
        *self.members.last().expect("strings are non-empty")
    }
}

/// A fully generated `B(lambda)` with its crystal graph tabulated.
#[derive(Clone, Debug)]
pub struct HighestWeightCrystal {
    cartan: Arc<CartanData>,
    lambda: Weight,
    elements: Vec<BLambdaElement>,
    index: HashMap<BLambdaElement, ElementId>,
    /// `f_table[i][x]`
    f_table: Vec<Vec<Option<ElementId>>>,
    e_table: Vec<Vec<Option<ElementId>>>,
    weights: Vec<Weight>,
    eps: Vec<Vec<i64>>,
    phi: Vec<Vec<i64>>,
}

impl HighestWeightCrystal {
    fn build(bl: &BLambda) -> Result<Self> {
        let rank = bl.lambda.rank();
        let mut elements = vec![bl.highest()];
        let mut index = HashMap::from([(bl.highest(), 0usize)]);
        let mut frontier = vec![bl.highest()];
        while !frontier.is_empty() {
            let images = par::map(&frontier, |x| {
                (0..rank).map(|i| bl.f(i, x)).collect::<Result<Vec<_>>>()
            });
            let mut next = BTreeSet::new();
            for imgs in images {
                for y in imgs?.into_iter().flatten() {
                    if !index.contains_key(&y) {
                        next.insert(y);
                    }
                }
            }
            for y in &next {
                index.insert(y.clone(), elements.len());
                elements.push(y.clone());
            }
            frontier = next.into_iter().collect();
        }

        let rows = par::map(&elements, |x| -> Result<_> {
            let mut f = Vec::with_capacity(rank);
            let mut e = Vec::with_capacity(rank);
            let mut eps = Vec::with_capacity(rank);
            let mut phi = Vec::with_capacity(rank);
            for i in 0..rank {
                f.push(bl.f(i, x)?);
                e.push(bl.e(i, x)?);
                eps.push(finite(bl.eps(i, x)?)?);
                phi.push(finite(bl.phi(i, x)?)?);
            }
            Ok((f, e, eps, phi, bl.wt(x)))
        });

        let n = elements.len();
        let mut f_table = vec![vec![None; n]; rank];
        let mut e_table = vec![vec![None; n]; rank];
        let mut weights = Vec::with_capacity(n);
        let mut eps_rows = Vec::with_capacity(n);
        let mut phi_rows = Vec::with_capacity(n);
        let lookup = |y: Option<BLambdaElement>| -> Result<Option<ElementId>> {
            match y {
                None => Ok(None),
                Some(y) => index.get(&y).copied().map(Some).ok_or_else(|| {
                    Error::Internal("an operator left the generated crystal".into())
                }),
            }
        };
        for (x, row) in rows.into_iter().enumerate() {
            let (f, e, eps, phi, wt) = row?;
            for (i, y) in f.into_iter().enumerate() {
                f_table[i][x] = lookup(y)?;
            }
            for (i, y) in e.into_iter().enumerate() {
                e_table[i][x] = lookup(y)?;
            }
            weights.push(wt);
            eps_rows.push(eps);
            phi_rows.push(phi);
        }

        Ok(HighestWeightCrystal {
            cartan: bl.binf.cartan_data().clone(),
            lambda: bl.lambda.clone(),
            elements,
            index,
            f_table,
            e_table,
            weights,
            eps: eps_rows,
            phi: phi_rows,
        })
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<ElementId> {
        0..self.elements.len()
    }

    /// `u_lambda` is always id 0.
    pub fn highest(&self) -> ElementId {
        0
    }

    pub fn element(&self, x: ElementId) -> &BLambdaElement {
        &self.elements[x]
    }

    pub fn id_of(&self, x: &BLambdaElement) -> Option<ElementId> {
        self.index.get(x).copied()
    }

    pub fn weight(&self, x: ElementId) -> &Weight {
        &self.weights[x]
    }

    /// `<wt(x), h_i>`.
    pub fn wt_i(&self, i: usize, x: ElementId) -> i64 {
        self.weights[x].pair(i)
    }

    pub fn f(&self, i: usize, x: ElementId) -> Option<ElementId> {
        self.f_table[i][x]
    }

    pub fn e(&self, i: usize, x: ElementId) -> Option<ElementId> {
        self.e_table[i][x]
    }

    pub fn f_pow(&self, i: usize, k: usize, x: ElementId) -> Option<ElementId> {
        (0..k).try_fold(x, |y, _| self.f(i, y))
    }

    pub fn e_pow(&self, i: usize, k: usize, x: ElementId) -> Option<ElementId> {
        (0..k).try_fold(x, |y, _| self.e(i, y))
    }

    pub fn eps(&self, i: usize, x: ElementId) -> i64 {
        self.eps[x][i]
    }

    pub fn phi(&self, i: usize, x: ElementId) -> i64 {
        self.phi[x][i]
    }

    /// Depth of the underlying `B(infinity)` element.
    pub fn depth(&self, x: ElementId) -> usize {
        self.elements[x].base.depth()
    }

    /// Elements killed by every `f_i`.
    pub fn lowest_elements(&self) -> Vec<ElementId> {
        self.ids()
            .filter(|&x| (0..self.rank()).all(|i| self.f(i, x).is_none()))
            .collect()
    }

    /// The partition of `B(lambda)` into `i`-strings, ordered by head id.
    pub fn i_strings(&self, i: usize) -> Vec<IString> {
        self.ids()
            .filter(|&x| self.e(i, x).is_none())
            .map(|head| {
                let mut members = vec![head];
                while let Some(y) = self.f(i, *members.last().expect("non-empty")) {
                    members.push(y);
                }
                IString {
                    color: i,
                    head,
                    members,
                }
            })
            .collect()
    }

    /// Word `(j_1, ..., j_m)` with `x = f_{j_1} ... f_{j_m} u_lambda`, peeling
    /// the smallest color with a nonzero `e` at each step.
    pub fn peel(&self, x: ElementId) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = x;
        while let Some((j, y)) = (0..self.rank()).find_map(|j| self.e(j, cur).map(|y| (j, y))) {
            word.push(j);
            cur = y;
        }
        word
    }

    /// Stable readable identifier, e.g. `f1 f2 · u`.
    pub fn name(&self, x: ElementId) -> String {
        let word = self.peel(x);
        if word.is_empty() {
            return "u".to_string();
        }
        let mut s: Vec<String> = word.iter().map(|j| format!("f{}", j + 1)).collect();
        s.push("· u".to_string());
        s.join(" ")
    }

    /// The weight map `Z[B(lambda)] -> Z[P]`.
    pub fn char_map(&self, x: &FormalSum<ElementId>) -> WeightPolynomial {
        x.iter()
            .map(|(&id, c)| (self.weights[id].clone(), c))
            .collect()
    }

    /// The sum of every element of `B(lambda)`.
    pub fn full_sum(&self) -> FormalSum<ElementId> {
        FormalSum::from_elements(self.ids())
    }
}

fn finite(x: ExtInt) -> Result<i64> {
    x.finite()
        .ok_or_else(|| Error::Internal("B(lambda) statistic is -inf".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLabel;

    fn bl(t: TypeLabel, lambda: &[i64]) -> BLambda {
        let binf = Arc::new(BInfinity::new(Arc::new(CartanData::new(t))));
        BLambda::new(binf, Weight(lambda.to_vec())).unwrap()
    }

    #[test]
    fn operator_examples() {
        let b = bl(TypeLabel::A2, &[1, 0]);
        let u = b.highest();
        let f1u = b.f(0, &u).unwrap().expect("f1 u != 0");
        assert_eq!(b.f(0, &f1u).unwrap(), None);
        assert_eq!(b.f(1, &u).unwrap(), None);
        for i in 0..2 {
            assert_eq!(b.e(i, &u).unwrap(), None);
        }
        assert_eq!(b.phi(0, &u).unwrap(), 1);
    }

    #[test]
    fn non_dominant_lambda_is_rejected() {
        let binf = Arc::new(BInfinity::new(Arc::new(CartanData::new(TypeLabel::A2))));
        assert!(matches!(
            BLambda::new(binf.clone(), Weight(vec![1, -1])),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            BLambda::new(binf, Weight(vec![1])),
            Err(Error::WeightRank { .. })
        ));
    }

    #[test]
    fn sizes() {
        assert_eq!(bl(TypeLabel::A2, &[0, 0]).generate().unwrap().len(), 1);
        assert_eq!(bl(TypeLabel::A2, &[1, 0]).generate().unwrap().len(), 3);
        assert_eq!(bl(TypeLabel::A2, &[1, 1]).generate().unwrap().len(), 8);
    }

    #[test]
    fn strings_of_the_standard_a2_crystal() {
        let c = bl(TypeLabel::A2, &[1, 0]).generate().unwrap();
        let strings = c.i_strings(0);
        let mut sizes: Vec<usize> = strings.iter().map(|s| s.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        for i in 0..2 {
            let strings = c.i_strings(i);
            assert!(strings.iter().any(|s| s.head == c.highest()));
            assert_eq!(
                strings.iter().map(|s| s.members.len()).sum::<usize>(),
                c.len()
            );
        }
    }

    #[test]
    fn char_map_examples() {
        let c = bl(TypeLabel::A2, &[1, 0]).generate().unwrap();
        let u = FormalSum::single(c.highest());
        assert_eq!(
            c.char_map(&u),
            WeightPolynomial::monomial(Weight(vec![1, 0]))
        );
        let expected: WeightPolynomial = [
            (Weight(vec![1, 0]), 1),
            (Weight(vec![-1, 1]), 1),
            (Weight(vec![0, -1]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(c.char_map(&c.full_sum()), expected);
        assert!(c.char_map(&FormalSum::zero()).is_zero());
    }

    #[test]
    fn names_are_peel_words() {
        let c = bl(TypeLabel::A2, &[1, 0]).generate().unwrap();
        let names: Vec<String> = c.ids().map(|x| c.name(x)).collect();
        assert_eq!(names, vec!["u", "f1 · u", "f2 f1 · u"]);
    }
}
