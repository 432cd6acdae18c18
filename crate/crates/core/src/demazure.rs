//! Demazure crystals and the crystal Demazure operator.
//!
//! Words are in application order: for `(i_1, ..., i_n)` the set is built by
//! closing `{u}` under `f_{i_1}` first and `f_{i_n}` last, and the operator
//! product applies `D_{i_1}` first.

use std::collections::BTreeSet;

use crate::binf::{BInfElement, BInfinity};
use crate::blambda::{ElementId, HighestWeightCrystal};
use crate::cartan::Weight;
use crate::crystal::FormalSum;
use crate::error::{Error, Result};
use crate::weyl::{ReducedWord, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Lambda(Weight),
    Infinity { depth: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemazureSet<E: Ord> {
    pub word: ReducedWord,
    pub ambient: Ambient,
    pub members: BTreeSet<E>,
}

impl<E: Ord> DemazureSet<E> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.members.contains(x)
    }
}

/// `B_w(lambda)` for a reduced word of `w`.
pub fn demazure_blambda(
    crystal: &HighestWeightCrystal,
    weyl: &WeylGroup,
    word: &ReducedWord,
) -> Result<DemazureSet<ElementId>> {
    weyl.require_reduced(word)?;
    Ok(DemazureSet {
        word: word.clone(),
        ambient: Ambient::Lambda(crystal.lambda().clone()),
        members: demazure_closure(crystal, word.letters()),
    })
}

/// The recursive `f`-closure along `letters` without a reducedness check.
pub fn demazure_closure(crystal: &HighestWeightCrystal, letters: &[usize]) -> BTreeSet<ElementId> {
    let mut set = BTreeSet::from([crystal.highest()]);
    for &i in letters {
        set = f_closure(crystal, i, &set);
    }
    set
}

/// `union_k f_i^k (set)`.
pub fn f_closure(
    crystal: &HighestWeightCrystal,
    i: usize,
    set: &BTreeSet<ElementId>,
) -> BTreeSet<ElementId> {
    let mut out = set.clone();
    for &x in set {
        let mut cur = x;
        while let Some(y) = crystal.f(i, cur) {
            out.insert(y);
            cur = y;
        }
    }
    out
}

/// Elements of `B_w(infinity)` of depth at most `depth`.
pub fn demazure_binf(
    binf: &BInfinity,
    weyl: &WeylGroup,
    word: &ReducedWord,
    depth: usize,
) -> Result<DemazureSet<BInfElement>> {
    weyl.require_reduced(word)?;
    Ok(DemazureSet {
        word: word.clone(),
        ambient: Ambient::Infinity { depth },
        members: demazure_binf_closure(binf, word.letters(), depth)?,
    })
}

pub fn demazure_binf_closure(
    binf: &BInfinity,
    letters: &[usize],
    depth: usize,
) -> Result<BTreeSet<BInfElement>> {
    let mut set = BTreeSet::from([binf.highest()]);
    for &i in letters {
        let mut next = set.clone();
        for x in &set {
            let mut cur = x.clone();
            while cur.depth() < depth {
                cur = binf.f_op(i, &cur)?;
                next.insert(cur.clone());
            }
        }
        set = next;
    }
    Ok(set)
}

/// The operator `D_i` on `Z[B(lambda)]`:
/// `b -> sum_{0<=k<=wt_i(b)} f_i^k b` when `wt_i(b) >= 0`, and
/// `b -> -sum_{1<=k<=-wt_i(b)-1} e_i^k b` otherwise.
pub fn demazure_operator(
    crystal: &HighestWeightCrystal,
    i: usize,
    x: &FormalSum<ElementId>,
) -> Result<FormalSum<ElementId>> {
    let mut out = FormalSum::zero();
    for (&b, c) in x.iter() {
        let m = crystal.wt_i(i, b);
        if m >= 0 {
            let mut cur = b;
            out.add_term(cur, c);
            for k in 1..=m {
                cur = crystal.f(i, cur).ok_or_else(|| not_normal("f", i, k, b))?;
                out.add_term(cur, c);
            }
        } else {
            let mut cur = b;
            for k in 1..=(-m - 1) {
                cur = crystal.e(i, cur).ok_or_else(|| not_normal("e", i, k, b))?;
                out.add_term(cur, -c);
            }
        }
    }
    Ok(out)
}

fn not_normal(op: &str, i: usize, k: i64, b: ElementId) -> Error {
    Error::Internal(format!(
        "{op}_{}^{k} vanished on element #{b}; the crystal is not normal",
        i + 1
    ))
}

/// `D_{i_n} ... D_{i_1} x` for `letters = (i_1, ..., i_n)`.
pub fn demazure_operator_word(
    crystal: &HighestWeightCrystal,
    letters: &[usize],
    x: &FormalSum<ElementId>,
) -> Result<FormalSum<ElementId>> {
    letters
        .iter()
        .try_fold(x.clone(), |acc, &i| demazure_operator(crystal, i, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blambda::BLambda;
    use crate::cartan::{CartanData, TypeLabel};
    use std::sync::Arc;

    struct Fixture {
        binf: Arc<BInfinity>,
        weyl: WeylGroup,
    }

    fn fixture(t: TypeLabel) -> Fixture {
        let cartan = Arc::new(CartanData::new(t));
        Fixture {
            binf: Arc::new(BInfinity::new(cartan.clone())),
            weyl: WeylGroup::new(cartan),
        }
    }

    impl Fixture {
        fn crystal(&self, lambda: &[i64]) -> HighestWeightCrystal {
            BLambda::new(self.binf.clone(), Weight(lambda.to_vec()))
                .unwrap()
                .generate()
                .unwrap()
        }
    }

    #[test]
    fn blambda_examples() {
        let fx = fixture(TypeLabel::A2);
        let c = fx.crystal(&[1, 0]);
        let empty = demazure_blambda(&c, &fx.weyl, &ReducedWord::empty()).unwrap();
        assert_eq!(empty.members, BTreeSet::from([c.highest()]));
        let s1 = demazure_blambda(&c, &fx.weyl, &ReducedWord(vec![0])).unwrap();
        assert_eq!(
            s1.members,
            BTreeSet::from([c.highest(), c.f(0, c.highest()).unwrap()])
        );
        let adj = fx.crystal(&[1, 1]);
        assert_eq!(
            demazure_blambda(&adj, &fx.weyl, &ReducedWord(vec![0, 1, 0]))
                .unwrap()
                .len(),
            8
        );
        assert!(matches!(
            demazure_blambda(&adj, &fx.weyl, &ReducedWord(vec![0, 0])),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn binf_examples() {
        let fx = fixture(TypeLabel::A2);
        let b = &fx.binf;
        for d in [0, 3] {
            let set = demazure_binf(b, &fx.weyl, &ReducedWord::empty(), d).unwrap();
            assert_eq!(set.members, BTreeSet::from([b.highest()]));
        }
        let s1 = demazure_binf(b, &fx.weyl, &ReducedWord(vec![0]), 3).unwrap();
        let string: BTreeSet<_> = (0..=3)
            .map(|k| b.apply_f_word(&vec![0; k]).unwrap())
            .collect();
        assert_eq!(s1.members, string);
        // u, f1u, f1^2u, f2u, f2^2u, f2f1u
        let s2s1 = demazure_binf(b, &fx.weyl, &ReducedWord(vec![0, 1]), 2).unwrap();
        assert_eq!(s2s1.len(), 6);
        assert!(!s2s1.contains(&b.apply_f_word(&[1, 0]).unwrap()));
        assert!(s2s1.contains(&b.apply_f_word(&[0, 1]).unwrap()));
    }

    #[test]
    fn operator_examples() {
        let fx = fixture(TypeLabel::A2);
        let c = fx.crystal(&[0, 1]);
        let u = FormalSum::single(c.highest());
        assert_eq!(demazure_operator(&c, 0, &u).unwrap(), u);

        let a1 = fixture(TypeLabel::A1);
        let c = a1.crystal(&[2]);
        let got = demazure_operator(&c, 0, &FormalSum::single(c.highest())).unwrap();
        let expected =
            FormalSum::from_elements((0..=2).map(|k| c.f_pow(0, k, c.highest()).unwrap()));
        assert_eq!(got, expected);

        // In B(omega_1) of A2, f1 u has <wt, h_1> = -1.
        let c = fx.crystal(&[1, 0]);
        let f1u = c.f(0, c.highest()).unwrap();
        assert_eq!(c.wt_i(0, f1u), -1);
        assert!(demazure_operator(&c, 0, &FormalSum::single(f1u))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn operator_is_idempotent_on_basis_elements() {
        let fx = fixture(TypeLabel::B2);
        let c = fx.crystal(&[1, 1]);
        for x in c.ids() {
            for i in 0..2 {
                let once = demazure_operator(&c, i, &FormalSum::single(x)).unwrap();
                assert_eq!(demazure_operator(&c, i, &once).unwrap(), once);
            }
        }
    }
}
