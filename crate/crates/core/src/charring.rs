//! The group ring `Z[P]`, the algebraic Demazure operator, and crystal-free
//! character and dimension oracles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};

/// Finitely supported `Weight -> Z`; `e^mu e^nu = e^{mu + nu}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightPolynomial {
    terms: BTreeMap<Weight, i64>,
}

impl WeightPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e^mu`.
    pub fn monomial(mu: Weight) -> Self {
        let mut p = Self::zero();
        p.add_term(mu, 1);
        p
    }

    pub fn add_term(&mut self, mu: Weight, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(mu.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&mu);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, &c) in &other.terms {
            out.add_term(mu.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (mu, &c) in &self.terms {
            out.add_term(mu.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (mu, &a) in &self.terms {
            for (nu, &b) in &other.terms {
                out.add_term(mu.add(nu), a * b);
            }
        }
        out
    }

    pub fn coeff(&self, mu: &Weight) -> i64 {
        self.terms.get(mu).copied().unwrap_or(0)
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

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(mu, &c)| (mu, c))
    }

    /// Sum of all coefficients (the dimension, for a character).
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Applies `s_i` to every exponent.
    pub fn reflect(&self, cartan: &CartanData, i: usize) -> Self {
        let mut out = Self::zero();
        for (mu, &c) in &self.terms {
            out.add_term(cartan.reflect(i, mu), c);
        }
        out
    }
}

impl FromIterator<(Weight, i64)> for WeightPolynomial {
    fn from_iter<I: IntoIterator<Item = (Weight, i64)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (mu, c) in iter {
            p.add_term(mu, c);
        }
        p
    }
}

/// Renders as `e^{(1,0)} + 2e^{(0,0)} - e^{(-1,1)}`, highest terms first.
impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mu, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "e^{{{mu}}}")?;
        }
        Ok(())
    }
}

/// The algebraic Demazure operator, monomial-wise: with `m = <mu, h_i>`,
/// `m >= 0` gives `sum_{0<=k<=m} e^{mu - k alpha_i}`, `m = -1` gives 0 and
/// `m < -1` gives `-sum_{1<=k<=-m-1} e^{mu + k alpha_i}`.
pub fn algebraic_demazure(cartan: &CartanData, i: usize, f: &WeightPolynomial) -> WeightPolynomial {
    let alpha = cartan.simple_root(i);
    let mut out = WeightPolynomial::zero();
    for (mu, &c) in &f.terms {
        let m = mu.pair(i);
        if m >= 0 {
            for k in 0..=m {
                out.add_term(mu.add_scaled(&alpha, -k), c);
            }
        } else {
            for k in 1..=(-m - 1) {
                out.add_term(mu.add_scaled(&alpha, k), -c);
            }
        }
    }
    out
}

/// Applies the operators for `word` in application order.
pub fn algebraic_demazure_word(
    cartan: &CartanData,
    word: &[usize],
    f: &WeightPolynomial,
) -> WeightPolynomial {
    word.iter()
        .fold(f.clone(), |acc, &i| algebraic_demazure(cartan, i, &acc))
}

/// Checks `(1 - e^{-alpha_i}) D_i f = f - e^{-alpha_i} s_i(f)`.
pub fn satisfies_divided_difference(cartan: &CartanData, i: usize, f: &WeightPolynomial) -> bool {
    let shift = WeightPolynomial::monomial(cartan.simple_root(i).scale(-1));
    let one_minus = WeightPolynomial::monomial(Weight::zero(cartan.rank)).sub(&shift);
    let lhs = one_minus.mul(&algebraic_demazure(cartan, i, f));
    let rhs = f.sub(&shift.mul(&f.reflect(cartan, i)));
    lhs == rhs
}

fn require_dominant(cartan: &CartanData, lambda: &Weight) -> Result<()> {
    cartan.check_weight(lambda)?;
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.to_string()))
    }
}

/// Weyl dimension formula `prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dim(cartan: &CartanData, lambda: &Weight) -> Result<u64> {
    require_dominant(cartan, lambda)?;
    let shifted = lambda.add(&cartan.rho);
    let mut prod = Rational64::one();
    for root in &cartan.positive_roots {
        prod *= cartan.coroot_pairing(&shifted, root) / cartan.coroot_pairing(&cartan.rho, root);
    }
    if !prod.is_integer() || prod <= Rational64::zero() {
        return Err(Error::Internal(format!(
            "Weyl dimension of {lambda} evaluated to {prod}"
        )));
    }
    Ok(prod.to_integer() as u64)
}

/// Full character of the irreducible module of highest weight `lambda`:
/// Freudenthal's recursion for the dominant multiplicities, then orbit expansion.
pub fn freudenthal_character(cartan: &CartanData, lambda: &Weight) -> Result<WeightPolynomial> {
    require_dominant(cartan, lambda)?;
    let n = cartan.rank;
    let roots: Vec<Weight> = cartan
        .positive_roots
        .iter()
        .map(|r| cartan.root_to_weight(r))
        .collect();
    // Every weight lies between w0(lambda) and lambda.
    let span = cartan
        .weight_to_root_int(&lambda.sub(&cartan.longest_image(lambda)))
        .ok_or_else(|| Error::Internal("lambda - w0(lambda) is not in the root lattice".into()))?;

    // Dominant candidates lambda - sum n_j alpha_j with 0 <= n_j <= span_j, by height.
    let mut candidates: Vec<(i64, Weight)> = Vec::new();
    let mut counter = vec![0i64; n];
    loop {
        let mu = (0..n).fold(lambda.clone(), |acc, j| {
            acc.add_scaled(&cartan.simple_root(j), -counter[j])
        });
        if mu.is_dominant() {
            candidates.push((counter.iter().sum(), mu));
        }
        let mut k = 0;
        while k < n {
            counter[k] += 1;
            if counter[k] <= span[k] {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    candidates.sort();

    let lr = lambda.add(&cartan.rho);
    let norm_lr = cartan.inner(&lr, &lr);
    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    for (height, mu) in candidates {
        if height == 0 {
            mult.insert(mu, 1);
            continue;
        }
        let mut sum = Rational64::zero();
        for alpha in &roots {
            let mut k = 1;
            loop {
                let nu = mu.add_scaled(alpha, k);
                let dom = cartan.dominant_conjugate(&nu);
                // Weights on an alpha-string through a weight form an interval.
                match mult.get(&dom) {
                    Some(&m) => sum += Rational64::from_integer(m) * cartan.inner(&nu, alpha),
                    None => {
                        if !below(cartan, &dom, lambda) {
                            break;
                        }
                    }
                }
                k += 1;
            }
        }
        let mr = mu.add(&cartan.rho);
        let denom = norm_lr - cartan.inner(&mr, &mr);
        if denom <= Rational64::zero() {
            return Err(Error::Internal(format!(
                "non-positive Freudenthal denominator at {mu}"
            )));
        }
        let m = Rational64::from_integer(2) * sum / denom;
        if !m.is_integer() {
            return Err(Error::Internal(format!(
                "fractional multiplicity {m} at {mu}"
            )));
        }
        if m.to_integer() > 0 {
            mult.insert(mu, m.to_integer());
        }
    }

    let mut character = WeightPolynomial::zero();
    for (mu, m) in mult {
        for nu in orbit(cartan, &mu) {
            character.add_term(nu, m);
        }
    }
    Ok(character)
}

/// `mu <= lambda` in dominance order.
fn below(cartan: &CartanData, mu: &Weight, lambda: &Weight) -> bool {
    cartan
        .weight_to_root_int(&lambda.sub(mu))
        .is_some_and(|x| x.iter().all(|&c| c >= 0))
}

/// Weyl orbit of `mu`.
pub fn orbit(cartan: &CartanData, mu: &Weight) -> BTreeSet<Weight> {
    let mut seen = BTreeSet::from([mu.clone()]);
    let mut frontier = vec![mu.clone()];
    while let Some(x) = frontier.pop() {
        for i in 0..cartan.rank {
            let y = cartan.reflect(i, &x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}
