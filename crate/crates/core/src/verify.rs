//! Executable checks for the refined Demazure character formula and the
//! statements it rests on. Every check returns a [`CheckReport`]; a failing
//! report always carries a witness that can be re-checked by hand.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::binf::{BInfElement, BInfinity};
use crate::blambda::{BLambda, ElementId, HighestWeightCrystal};
use crate::cartan::{CartanData, TypeLabel, Weight};
use crate::charring::{
    algebraic_demazure, algebraic_demazure_word, freudenthal_character, weyl_dim, WeightPolynomial,
};
use crate::crystal::{
    Crystal, Elementary, ElementaryElement, Factor, FormalSum, Tensor, TensorWord,
};
use crate::demazure::{
    demazure_binf_closure, demazure_blambda, demazure_closure, demazure_operator,
    demazure_operator_word, f_closure,
};
use crate::error::{Error, Result};
use crate::par;
use crate::weyl::{ReducedWord, WeylElement, WeylGroup};

/// Default depth bound for `B(infinity)` statements.
pub const DEFAULT_DEPTH: usize = 6;

/// Statement identifiers accepted by the verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Statement {
    /// Sum over `B_w(lambda)` equals `D_{i_n} ... D_{i_1} u_lambda`.
    RefinedFormula,
    /// String property and the three-case analysis for the last letter.
    StringProperty,
    WordIndependence,
    /// `B_{w_0}(lambda)` against the dimension and character oracles.
    FullCrystal,
    Axioms,
    Intertwining,
    /// The explicit lowest element of an A2 crystal.
    LowestWitness,
    Star,
    Psi,
    /// `f_i` and `f_j*` strings through `b` generate the same set.
    StarCommutation,
    /// `B_w(infinity)` is the `f*`-union along the word.
    StarUnion,
    /// The star involution maps `B_w(infinity)` onto `B_{w^-1}(infinity)`.
    StarInverse,
    /// `e_i` applied to an `f_j*`-string through `b`.
    RaisingStar,
    /// `B_w(infinity)` is closed under every `e_i`.
    RaisingClosure,
    /// `B_w(infinity) = union_k f*_{i_1}^k B_{w s_{i_1}}(infinity)`.
    StarRecursion,
    /// A single `f_j` step inside `B_w(infinity)` extends to the whole string.
    StringClosure,
    /// `B_w(lambda)` is the preimage of `B_w(infinity) (x) t_lambda`.
    Iota,
    Truncation,
    Braid,
}

impl Statement {
    pub const ALL: [Statement; 19] = [
        Statement::RefinedFormula,
        Statement::StringProperty,
        Statement::WordIndependence,
        Statement::FullCrystal,
        Statement::Axioms,
        Statement::Intertwining,
        Statement::LowestWitness,
        Statement::Star,
        Statement::Psi,
        Statement::StarCommutation,
        Statement::StarUnion,
        Statement::StarInverse,
        Statement::RaisingStar,
        Statement::RaisingClosure,
        Statement::StarRecursion,
        Statement::StringClosure,
        Statement::Iota,
        Statement::Truncation,
        Statement::Braid,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Statement::RefinedFormula => "eq4",
            Statement::StringProperty => "string",
            Statement::WordIndependence => "words",
            Statement::FullCrystal => "full",
            Statement::Axioms => "axioms",
            Statement::Intertwining => "intertwine",
            Statement::LowestWitness => "lowest",
            Statement::Star => "star",
            Statement::Psi => "psi",
            Statement::StarCommutation => "lem31",
            Statement::StarUnion => "thm32",
            Statement::StarInverse => "cor33",
            Statement::RaisingStar => "lem34",
            Statement::RaisingClosure => "thm35",
            Statement::StarRecursion => "thm35r",
            Statement::StringClosure => "p3",
            Statement::Iota => "iota",
            Statement::Truncation => "trunc",
            Statement::Braid => "braid",
        }
    }

    /// The braid-witness search only reports.
    pub fn gating(self) -> bool {
        self != Statement::Braid
    }

    /// Set statements about `B(infinity)` evaluated under a depth bound.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            Statement::StarCommutation
                | Statement::StarUnion
                | Statement::StarInverse
                | Statement::RaisingStar
                | Statement::RaisingClosure
                | Statement::StarRecursion
                | Statement::StringClosure
        )
    }

    pub fn gating_suites() -> Vec<Statement> {
        Self::ALL.into_iter().filter(|s| s.gating()).collect()
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Statement {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key = s.trim().to_ascii_lowercase();
        Statement::ALL
            .into_iter()
            .find(|st| st.id() == key)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub statement: &'static str,
    pub params: String,
    pub verdict: Verdict,
    pub gating: bool,
    pub witness: Option<String>,
    pub details: Vec<String>,
}

impl CheckReport {
    fn new(statement: Statement, params: String) -> Self {
        CheckReport {
            statement: statement.id(),
            params,
            verdict: Verdict::Pass,
            gating: statement.gating(),
            witness: None,
            details: Vec::new(),
        }
    }

    /// Records the first failure; later failures only add details.
    fn fail(&mut self, witness: impl Into<String>) {
        let witness = witness.into();
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
            self.witness = Some(witness);
        } else if self.details.len() < 8 {
            self.details.push(witness);
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.verdict, self.gating) {
            (Verdict::Pass, true) => "PASS",
            (Verdict::Fail, true) => "FAIL",
            (Verdict::Pass, false) => "REPORT",
            (Verdict::Fail, false) => "REPORT-FAIL",
        };
        write!(f, "{tag} {} {}", self.statement, self.params)?;
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        for d in &self.details {
            write!(f, "\n    {d}")?;
        }
        Ok(())
    }
}

/// Everything derived from one Cartan type.
#[derive(Clone, Debug)]
pub struct TypeContext {
    pub cartan: Arc<CartanData>,
    pub weyl: WeylGroup,
    pub binf: Arc<BInfinity>,
}

impl TypeContext {
    pub fn new(t: TypeLabel) -> Self {
        let cartan = Arc::new(CartanData::new(t));
        TypeContext {
            weyl: WeylGroup::new(cartan.clone()),
            binf: Arc::new(BInfinity::new(cartan.clone())),
            cartan,
        }
    }

    pub fn label(&self) -> TypeLabel {
        self.cartan.type_label
    }

    pub fn blambda(&self, lambda: &Weight) -> Result<BLambda> {
        BLambda::new(self.binf.clone(), lambda.clone())
    }

    pub fn crystal(&self, lambda: &Weight) -> Result<HighestWeightCrystal> {
        self.blambda(lambda)?.generate()
    }

    /// `(w, word)` for every reduced word of every element of length at most `max_len`.
    pub fn words_up_to(&self, max_len: usize) -> Vec<(&WeylElement, ReducedWord)> {
        self.weyl
            .elements()
            .iter()
            .filter(|w| w.length <= max_len)
            .flat_map(|w| {
                self.weyl
                    .reduced_words(w)
                    .into_iter()
                    .map(move |wd| (w, wd))
            })
            .collect()
    }

    pub fn all_words(&self) -> Vec<(&WeylElement, ReducedWord)> {
        self.words_up_to(usize::MAX)
    }

    /// Readable name of a `B(infinity)` element, e.g. `f2 f1 · u∞`.
    pub fn binf_name(&self, b: &BInfElement) -> String {
        match self.binf.peel(b) {
            Ok(word) if word.is_empty() => "u∞".to_string(),
            Ok(word) => {
                let mut s: Vec<String> = word.iter().map(|j| format!("f{}", j + 1)).collect();
                s.push("· u∞".into());
                s.join(" ")
            }
            Err(_) => format!("coords {b}"),
        }
    }
}

/// The acceptance grid of dominant weights for a type.
pub fn grid_lambdas(t: TypeLabel) -> Vec<Weight> {
    let box_grid = |rank: usize, max: i64| -> Vec<Weight> {
        let mut out = vec![Vec::new()];
        for _ in 0..rank {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| (0..=max).map(move |a| [p.clone(), vec![a]].concat()))
                .collect();
        }
        out.into_iter().map(Weight).collect()
    };
    match t {
        TypeLabel::A1 => box_grid(1, 4),
        TypeLabel::A1xA1 | TypeLabel::A2 | TypeLabel::B2 => box_grid(2, 2),
        TypeLabel::G2 => box_grid(2, 1),
        TypeLabel::A3 => box_grid(3, 1),
    }
}

/// Depth bound used for the star suite of a type.
pub fn grid_depth(t: TypeLabel) -> usize {
    if t == TypeLabel::G2 {
        4
    } else {
        DEFAULT_DEPTH
    }
}

fn lambda_params(crystal: &HighestWeightCrystal, word: Option<&ReducedWord>) -> String {
    let mut s = format!("{} λ={}", crystal.cartan().type_label, crystal.lambda());
    if let Some(w) = word {
        s.push_str(&format!(" word={w}"));
    }
    s
}

fn names(crystal: &HighestWeightCrystal, set: impl IntoIterator<Item = ElementId>) -> String {
    let v: Vec<String> = set.into_iter().map(|x| crystal.name(x)).collect();
    format!("{{{}}}", v.join(", "))
}

/// Refined Demazure formula for one reduced word.
pub fn refined_formula_check(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
    word: &ReducedWord,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        Statement::RefinedFormula,
        lambda_params(crystal, Some(word)),
    );
    let set = demazure_blambda(crystal, &ctx.weyl, word)?;
    let rhs = demazure_operator_word(
        crystal,
        word.letters(),
        &FormalSum::single(crystal.highest()),
    )?;
    if let Some((&x, c)) = rhs.iter().find(|&(x, c)| c != 1 || !set.contains(x)) {
        report.fail(format!(
            "operator side has coefficient {c} on {}",
            crystal.name(x)
        ));
    }
    if let Some(&x) = set.members.iter().find(|x| rhs.coeff(x) == 0) {
        report.fail(format!(
            "{} is in B_w(λ) but missing from the operator side",
            crystal.name(x)
        ));
    }
    report.details.push(format!("|B_w(λ)| = {}", set.len()));
    Ok(report)
}

/// String property for every color, plus the three-case analysis and the
/// closure identity with respect to the last letter.
pub fn string_property_check(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
    word: &ReducedWord,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        Statement::StringProperty,
        lambda_params(crystal, Some(word)),
    );
    let set = demazure_blambda(crystal, &ctx.weyl, word)?.members;
    for i in 0..crystal.rank() {
        for s in crystal.i_strings(i) {
            let inter: BTreeSet<ElementId> = s
                .members
                .iter()
                .copied()
                .filter(|x| set.contains(x))
                .collect();
            let ok = inter.is_empty()
                || inter.len() == s.members.len()
                || inter == BTreeSet::from([s.head]);
            report.check(ok, || {
                format!(
                    "color {}: string of {} meets B_w(λ) in {}",
                    i + 1,
                    crystal.name(s.head),
                    names(crystal, inter.clone())
                )
            });
        }
    }
    let Some(last) = word.last() else {
        return Ok(report);
    };
    let prev = demazure_closure(crystal, word.without_last().letters());
    for s in crystal.i_strings(last) {
        let full: BTreeSet<ElementId> = s.members.iter().copied().collect();
        let cur: BTreeSet<ElementId> = full.intersection(&set).copied().collect();
        let before: BTreeSet<ElementId> = full.intersection(&prev).copied().collect();
        let head = BTreeSet::from([s.head]);
        let case = (cur.is_empty() && before.is_empty())
            || (cur == full && before == full)
            || (cur == full && before == head);
        report.check(case, || {
            format!(
                "color {}: string of {} gives (B_w ∩ S, B_(s w) ∩ S) = ({}, {})",
                last + 1,
                crystal.name(s.head),
                names(crystal, cur.clone()),
                names(crystal, before.clone())
            )
        });
        let closed = f_closure(crystal, last, &before);
        report.check(closed == cur, || {
            format!(
                "color {}: B_w ∩ S is not the f-closure of B_(s w) ∩ S at {}",
                last + 1,
                crystal.name(s.head)
            )
        });
        let lhs = FormalSum::from_elements(cur.iter().copied());
        let rhs = demazure_operator(
            crystal,
            last,
            &FormalSum::from_elements(before.iter().copied()),
        )?;
        report.check(lhs == rhs, || {
            format!(
                "color {}: D on the string of {} does not give B_w ∩ S",
                last + 1,
                crystal.name(s.head)
            )
        });
    }
    Ok(report)
}

/// All reduced words of `w` give the same `B_w(lambda)`.
pub fn word_independence_check(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
    w: &WeylElement,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        Statement::WordIndependence,
        lambda_params(crystal, Some(&w.canonical_word)),
    );
    let words = ctx.weyl.reduced_words(w);
    let mut reference: Option<(ReducedWord, BTreeSet<ElementId>)> = None;
    for word in words.iter() {
        let set = demazure_blambda(crystal, &ctx.weyl, word)?.members;
        match &reference {
            None => reference = Some((word.clone(), set)),
            Some((w0, s0)) => report.check(*s0 == set, || {
                format!(
                    "{w0} gives {} elements but {word} gives {}",
                    s0.len(),
                    set.len()
                )
            }),
        }
    }
    report
        .details
        .push(format!("{} reduced words", words.len()));
    Ok(report)
}

/// `B_{w_0}(lambda)` has the Weyl dimension and the Freudenthal character.
pub fn full_crystal_check(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(Statement::FullCrystal, lambda_params(crystal, None));
    let cartan = &ctx.cartan;
    let dim = weyl_dim(cartan, crystal.lambda())?;
    let chi = freudenthal_character(cartan, crystal.lambda())?;
    for word in ctx.weyl.reduced_words(ctx.weyl.longest()) {
        let set = demazure_blambda(crystal, &ctx.weyl, &word)?.members;
        report.check(set.len() as u64 == dim, || {
            format!("|B_w0(λ)| = {} via {word}, Weyl dimension {dim}", set.len())
        });
        let ch = crystal.char_map(&FormalSum::from_elements(set.iter().copied()));
        report.check(ch == chi, || {
            format!("character via {word} is {ch}, expected {chi}")
        });
    }
    report.check(crystal.len() as u64 == dim, || {
        format!("|B(λ)| = {} but Weyl dimension is {dim}", crystal.len())
    });
    Ok(report)
}

/// Crystal axioms and normality on a generated `B(lambda)`, and the unique lowest element.
pub fn blambda_axioms_check(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(Statement::Axioms, lambda_params(crystal, None));
    let bl = ctx.blambda(crystal.lambda())?;
    for x in crystal.ids() {
        for i in 0..crystal.rank() {
            let alpha = ctx.cartan.simple_root(i);
            if let Some(y) = crystal.f(i, x) {
                report.check(crystal.e(i, y) == Some(x), || {
                    format!("e{0} f{0} {1} != {1}", i + 1, crystal.name(x))
                });
                report.check(*crystal.weight(y) == crystal.weight(x).sub(&alpha), || {
                    format!("wt shift fails at f{} {}", i + 1, crystal.name(x))
                });
            }
            if let Some(y) = crystal.e(i, x) {
                report.check(crystal.f(i, y) == Some(x), || {
                    format!("f{0} e{0} {1} != {1}", i + 1, crystal.name(x))
                });
            }
            let (eps, phi) = (crystal.eps(i, x), crystal.phi(i, x));
            report.check(phi == eps + crystal.wt_i(i, x), || {
                format!("phi{} != eps + wt at {}", i + 1, crystal.name(x))
            });
            let e_len = (0..)
                .take_while(|&k| crystal.e_pow(i, k + 1, x).is_some())
                .count() as i64;
            let f_len = (0..)
                .take_while(|&k| crystal.f_pow(i, k + 1, x).is_some())
                .count() as i64;
            report.check(eps == e_len && phi == f_len, || {
                format!("not normal at color {} on {}", i + 1, crystal.name(x))
            });
            // e_i on B(lambda) matches e_i on B(infinity) (x) t_lambda.
            let ambient = ctx.binf.e_op(i, &crystal.element(x).base)?;
            let via_table = crystal.e(i, x).map(|y| crystal.element(y).base.clone());
            report.check(ambient == via_table, || {
                format!(
                    "embedding does not commute with e{} at {}",
                    i + 1,
                    crystal.name(x)
                )
            });
            let direct = bl.f(i, crystal.element(x))?.and_then(|y| crystal.id_of(&y));
            report.check(direct == crystal.f(i, x), || {
                format!("tabulated f{} disagrees at {}", i + 1, crystal.name(x))
            });
        }
    }
    let lowest = crystal.lowest_elements();
    let w0_lambda = ctx.cartan.longest_image(crystal.lambda());
    report.check(lowest.len() == 1, || {
        format!("{} lowest elements", lowest.len())
    });
    if let Some(&low) = lowest.first() {
        report.check(*crystal.weight(low) == w0_lambda, || {
            format!(
                "lowest element has weight {}, w0(λ) = {w0_lambda}",
                crystal.weight(low)
            )
        });
    }
    Ok(report)
}

/// Inverse property, weight shift and the `eps`/`phi` identity on `B(infinity)` up to `depth`.
pub fn binf_axioms_check(ctx: &TypeContext, depth: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(Statement::Axioms, format!("{} B(∞) d={depth}", ctx.label()));
    let binf = &ctx.binf;
    let elements: Vec<BInfElement> = binf.generate(depth)?.into_iter().collect();
    let rows = par::map(&elements, |b| -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for i in 0..ctx.cartan.rank {
            let fb = binf.f_op(i, b)?;
            if binf.e_op(i, &fb)?.as_ref() != Some(b) {
                bad.push(format!("e{0} f{0} {1} != {1}", i + 1, ctx.binf_name(b)));
            }
            if binf.weight(&fb) != binf.weight(b).sub(&ctx.cartan.simple_root(i)) {
                bad.push(format!("wt shift fails at f{} {}", i + 1, ctx.binf_name(b)));
            }
            let e = binf.e_op(i, b)?;
            if e.is_none() != (binf.eps_op(i, b) == 0) {
                bad.push(format!(
                    "e{} zero iff eps = 0 fails at {}",
                    i + 1,
                    ctx.binf_name(b)
                ));
            }
            if let Some(y) = e {
                if binf.f_op(i, &y)? != *b {
                    bad.push(format!("f{0} e{0} {1} != {1}", i + 1, ctx.binf_name(b)));
                }
            }
            let window_phi = binf.phi(i, b)?;
            if window_phi != binf.eps_op(i, b) + binf.weight(b).pair(i) {
                bad.push(format!("phi{} != eps + wt at {}", i + 1, ctx.binf_name(b)));
            }
        }
        Ok(bad)
    });
    for r in rows {
        for w in r? {
            report.fail(w);
        }
    }
    Ok(report)
}

/// Left- and right-nested tensor rules agree on all triples of small factors.
pub fn tensor_associativity_check(ctx: &TypeContext, max_level: i64) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        Statement::Axioms,
        format!("{} tensor triples |n|<={max_level}", ctx.label()),
    );
    let cartan = ctx.cartan.clone();
    let single = TensorWord::new(cartan.clone());
    let mut factors: Vec<Factor> = (0..cartan.rank)
        .flat_map(|j| {
            (-max_level..=max_level).map(move |n| Factor::Elementary(ElementaryElement::new(j, n)))
        })
        .collect();
    factors.push(Factor::T(Weight::zero(cartan.rank)));
    factors.push(Factor::T(cartan.rho.clone()));
    let left = Tensor(Tensor(single.clone(), single.clone()), single.clone());
    let right = Tensor(single.clone(), Tensor(single.clone(), single.clone()));
    let flat = TensorWord::new(cartan.clone());
    type Triple = ((Vec<Factor>, Vec<Factor>), Vec<Factor>);
    let regroup_left = |x: Option<Triple>| x.map(|((a, b), c)| [a, b, c].concat());
    type RightTriple = (Vec<Factor>, (Vec<Factor>, Vec<Factor>));
    let regroup_right = |x: Option<RightTriple>| x.map(|(a, (b, c))| [a, b, c].concat());
    for a in &factors {
        for b in &factors {
            for c in &factors {
                let l = ((vec![a.clone()], vec![b.clone()]), vec![c.clone()]);
                let r = (vec![a.clone()], (vec![b.clone()], vec![c.clone()]));
                let word = vec![a.clone(), b.clone(), c.clone()];
                for i in 0..cartan.rank {
                    let fl = regroup_left(left.f(i, &l)?);
                    let fr = regroup_right(right.f(i, &r)?);
                    let el = regroup_left(left.e(i, &l)?);
                    let er = regroup_right(right.e(i, &r)?);
                    let same = fl == fr
                        && el == er
                        && fl == flat.f(i, &word)?
                        && el == flat.e(i, &word)?
                        && left.eps(i, &l)? == right.eps(i, &r)?
                        && left.phi(i, &l)? == right.phi(i, &r)?
                        && left.wt(&l) == right.wt(&r);
                    report.check(same, || format!("color {}: {a} ⊗ {b} ⊗ {c}", i + 1));
                }
            }
        }
    }
    Ok(report)
}

/// The weight map intertwines crystal and algebraic Demazure operators, and
/// the algebraic operators along `w_0` recover the character.
pub fn intertwining_check(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(Statement::Intertwining, lambda_params(crystal, None));
    for x in crystal.ids() {
        let single = FormalSum::single(x);
        let chx = crystal.char_map(&single);
        for i in 0..crystal.rank() {
            let lhs = crystal.char_map(&demazure_operator(crystal, i, &single)?);
            let rhs = algebraic_demazure(&ctx.cartan, i, &chx);
            report.check(lhs == rhs, || {
                format!("color {} at {}: {lhs} vs {rhs}", i + 1, crystal.name(x))
            });
        }
    }
    let chi = freudenthal_character(&ctx.cartan, crystal.lambda())?;
    for word in ctx.weyl.reduced_words(ctx.weyl.longest()) {
        let got = algebraic_demazure_word(
            &ctx.cartan,
            word.letters(),
            &WeightPolynomial::monomial(crystal.lambda().clone()),
        );
        report.check(got == chi, || {
            format!("D along {word} gives {got}, expected {chi}")
        });
    }
    Ok(report)
}

/// For A2 and `lambda = (l1, l2)`: `f1^{l2} f2^{l1+l2} f1^{l1} u_lambda` is the unique lowest element.
pub fn lowest_witness_check(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(Statement::LowestWitness, lambda_params(crystal, None));
    if ctx.label() != TypeLabel::A2 {
        return Err(Error::UnsupportedType(format!(
            "{} (the lowest-element witness is stated for A2)",
            ctx.label()
        )));
    }
    let (l1, l2) = (
        crystal.lambda().pair(0) as usize,
        crystal.lambda().pair(1) as usize,
    );
    let x = crystal
        .f_pow(0, l1, crystal.highest())
        .and_then(|y| crystal.f_pow(1, l1 + l2, y))
        .and_then(|y| crystal.f_pow(0, l2, y));
    let Some(x) = x else {
        report.fail("f1^l2 f2^(l1+l2) f1^l1 u vanished");
        return Ok(report);
    };
    report.check((0..2).all(|i| crystal.f(i, x).is_none()), || {
        format!("{} is not killed by every f", crystal.name(x))
    });
    let w0_lambda = ctx.cartan.longest_image(crystal.lambda());
    report.check(*crystal.weight(x) == w0_lambda, || {
        format!("weight {} != w0(λ) = {w0_lambda}", crystal.weight(x))
    });
    report.check(crystal.lowest_elements() == vec![x], || {
        format!(
            "lowest elements {}",
            names(crystal, crystal.lowest_elements())
        )
    });
    let s121 = demazure_closure(crystal, &[0, 1, 0]);
    report.check(s121.contains(&x), || {
        "witness is not in B_{s1 s2 s1}(λ)".into()
    });
    Ok(report)
}

/// Star involution identities on `B(infinity)` up to `depth`.
pub fn star_check(ctx: &TypeContext, depth: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(Statement::Star, format!("{} d={depth}", ctx.label()));
    let binf = &ctx.binf;
    let rank = ctx.cartan.rank;
    let elements: Vec<BInfElement> = binf.generate(depth)?.into_iter().collect();
    let rows = par::map(&elements, |b| -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let name = || ctx.binf_name(b);
        let sb = binf.star(b)?;
        if binf.star(&sb)? != *b {
            bad.push(format!("star(star({})) != itself", name()));
        }
        if binf.weight(&sb) != binf.weight(b) {
            bad.push(format!("star changes the weight of {}", name()));
        }
        for i in 0..rank {
            let count = std::iter::successors(Some(b.clone()), |y| binf.e_star(i, y).ok().flatten())
                .count() as i64
                - 1;
            if count != binf.eps_star(i, b)? {
                bad.push(format!(
                    "eps{}* disagrees with the e* count on {}",
                    i + 1,
                    name()
                ));
            }
            if b.depth() < depth {
                let lhs = binf.star(&binf.f_op(i, b)?)?;
                let rhs = binf.f_star(i, &sb)?;
                if lhs != rhs {
                    bad.push(format!("(f{0} b)* != f{0}* b* for b = {1}", i + 1, name()));
                }
            }
            for j in (0..rank).filter(|&j| j != i) {
                if b.depth() + 2 <= depth {
                    let lhs = binf.f_op(i, &binf.f_star(j, b)?)?;
                    let rhs = binf.f_star(j, &binf.f_op(i, b)?)?;
                    if lhs != rhs {
                        bad.push(format!(
                            "f{} and f{}* do not commute on {}",
                            i + 1,
                            j + 1,
                            name()
                        ));
                    }
                }
                if b.depth() < depth {
                    let lhs = binf.e_op(i, &binf.f_star(j, b)?)?;
                    let rhs = binf.e_op(i, b)?.map(|y| binf.f_star(j, &y)).transpose()?;
                    if lhs != rhs {
                        bad.push(format!(
                            "e{} and f{}* do not commute on {}",
                            i + 1,
                            j + 1,
                            name()
                        ));
                    }
                }
            }
        }
        Ok(bad)
    });
    for r in rows {
        for w in r? {
            report.fail(w);
        }
    }
    report.details.push(format!("{} elements", elements.len()));
    Ok(report)
}

/// `Psi_i(u) = u (x) b_i`, `Psi_i(f_i* b) = b' (x) f_i b''`, `Psi_i` commutes with
/// `e_i` and `f_i`, and is injective on the generated set.
pub fn psi_check(ctx: &TypeContext, depth: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(Statement::Psi, format!("{} d={depth}", ctx.label()));
    let binf = &ctx.binf;
    let elements: Vec<BInfElement> = binf.generate(depth)?.into_iter().collect();
    for i in 0..ctx.cartan.rank {
        let u = binf.highest();
        report.check(
            binf.psi(i, &u)? == (u.clone(), ElementaryElement::new(i, 0)),
            || format!("Psi{}(u∞) != u∞ ⊗ b{}", i + 1, i + 1),
        );
        let target = Tensor(&**binf, Elementary::new(ctx.cartan.clone(), i)?);
        let rows = par::map(
            &elements,
            |b| -> Result<(Option<String>, (BInfElement, ElementaryElement))> {
                let image = binf.psi(i, b)?;
                let name = ctx.binf_name(b);
                let mut bad = None;
                let (rest, tail) = image.clone();
                if binf.psi(i, &binf.f_star(i, b)?)?
                    != (rest, ElementaryElement::new(i, tail.level - 1))
                {
                    bad = Some(format!(
                        "Psi{0}(f{0}* b) != b' ⊗ f{0} b'' for b = {name}",
                        i + 1
                    ));
                }
                if target.f(i, &image)? != Some(binf.psi(i, &binf.f_op(i, b)?)?) {
                    bad = Some(format!(
                        "f{0} Psi{0}(b) != Psi{0}(f{0} b) for b = {name}",
                        i + 1
                    ));
                }
                let via_e = binf.e_op(i, b)?.map(|y| binf.psi(i, &y)).transpose()?;
                if target.e(i, &image)? != via_e {
                    bad = Some(format!(
                        "e{0} Psi{0}(b) != Psi{0}(e{0} b) for b = {name}",
                        i + 1
                    ));
                }
                Ok((bad, image))
            },
        );
        let mut images = BTreeSet::new();
        for r in rows {
            let (bad, image) = r?;
            if let Some(w) = bad {
                report.fail(w);
            }
            images.insert(image);
        }
        report.check(images.len() == elements.len(), || {
            format!("Psi{} is not injective on depth <= {depth}", i + 1)
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Subset,
}

/// A set relation between two depth-truncated subsets of `B(infinity)`.
/// `restrictable` marks sides that are exact depth truncations, so a run at
/// a smaller depth must reproduce their restriction.
#[derive(Clone, Debug)]
pub struct SetRelation {
    pub label: String,
    pub lhs: BTreeSet<BInfElement>,
    pub rhs: BTreeSet<BInfElement>,
    pub relation: Relation,
    pub restrictable: (bool, bool),
}

impl SetRelation {
    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Equal => self.lhs == self.rhs,
            Relation::Subset => self.lhs.is_subset(&self.rhs),
        }
    }

    fn witness(&self, ctx: &TypeContext) -> Option<String> {
        if self.holds() {
            return None;
        }
        if let Some(x) = self.lhs.difference(&self.rhs).next() {
            return Some(format!(
                "{}: {} is on the left only",
                self.label,
                ctx.binf_name(x)
            ));
        }
        self.rhs
            .difference(&self.lhs)
            .next()
            .map(|x| format!("{}: {} is on the right only", self.label, ctx.binf_name(x)))
    }
}

/// Inputs of a structural statement.
#[derive(Clone, Debug, Default)]
pub struct StructuralParams {
    pub word: ReducedWord,
    pub depth: usize,
    /// Base elements for the two lemmas; default all of depth `<= depth - 2`.
    pub bases: Option<Vec<BInfElement>>,
    /// `(i, j)` for the two lemmas; default every pair.
    pub colors: Option<(usize, usize)>,
}

fn binf_f_closure(
    binf: &BInfinity,
    set: &BTreeSet<BInfElement>,
    i: usize,
    depth: usize,
) -> Result<BTreeSet<BInfElement>> {
    let mut out = set.clone();
    for x in set {
        let mut cur = x.clone();
        while cur.depth() < depth {
            cur = binf.f_op(i, &cur)?;
            out.insert(cur.clone());
        }
    }
    Ok(out)
}

fn binf_f_star_closure(
    binf: &BInfinity,
    set: &BTreeSet<BInfElement>,
    i: usize,
    depth: usize,
) -> Result<BTreeSet<BInfElement>> {
    let mut out = set.clone();
    for x in set {
        let mut cur = x.clone();
        while cur.depth() < depth {
            cur = binf.f_star(i, &cur)?;
            out.insert(cur.clone());
        }
    }
    Ok(out)
}

/// `{f*_{i_1}^{k_1} ... f*_{i_n}^{k_n} u}` for `letters = (i_1, ..., i_n)`.
fn star_union(binf: &BInfinity, letters: &[usize], depth: usize) -> Result<BTreeSet<BInfElement>> {
    letters
        .iter()
        .rev()
        .try_fold(BTreeSet::from([binf.highest()]), |acc, &i| {
            binf_f_star_closure(binf, &acc, i, depth)
        })
}

fn lemma_bases(ctx: &TypeContext, params: &StructuralParams) -> Result<Vec<BInfElement>> {
    match &params.bases {
        Some(b) => Ok(b.clone()),
        None => Ok(ctx
            .binf
            .generate(params.depth.saturating_sub(2))?
            .into_iter()
            .collect()),
    }
}

fn color_pairs(ctx: &TypeContext, params: &StructuralParams) -> Vec<(usize, usize)> {
    match params.colors {
        Some(p) => vec![p],
        None => (0..ctx.cartan.rank)
            .flat_map(|i| (0..ctx.cartan.rank).map(move |j| (i, j)))
            .collect(),
    }
}

/// The set relations making up a structural statement at one depth.
pub fn relations(
    ctx: &TypeContext,
    statement: Statement,
    params: &StructuralParams,
) -> Result<Vec<SetRelation>> {
    let binf = &*ctx.binf;
    let d = params.depth;
    let letters = params.word.letters();
    let word_needed = matches!(
        statement,
        Statement::StarUnion
            | Statement::StarInverse
            | Statement::RaisingClosure
            | Statement::StarRecursion
            | Statement::StringClosure
    );
    if word_needed {
        ctx.weyl.require_reduced(&params.word)?;
    }
    let bw = || demazure_binf_closure(binf, letters, d);
    let rel = |label: String, lhs, rhs, relation, restrictable| SetRelation {
        label,
        lhs,
        rhs,
        relation,
        restrictable,
    };
    let w = &params.word;
    Ok(match statement {
        Statement::StarUnion => vec![rel(
            format!("B_w(∞) vs f* union for {w}"),
            bw()?,
            star_union(binf, letters, d)?,
            Relation::Equal,
            (true, true),
        )],
        Statement::StarInverse => {
            let stars: BTreeSet<BInfElement> =
                par::map(&bw()?.into_iter().collect::<Vec<_>>(), |b| binf.star(b))
                    .into_iter()
                    .collect::<Result<_>>()?;
            let inverse = demazure_binf_closure(binf, w.reversed().letters(), d)?;
            vec![rel(
                format!("B_w(∞)* vs B_w⁻¹(∞) for {w}"),
                stars,
                inverse,
                Relation::Equal,
                (true, true),
            )]
        }
        Statement::RaisingClosure => {
            let set = bw()?;
            let mut image = BTreeSet::new();
            for b in &set {
                for i in 0..ctx.cartan.rank {
                    image.extend(binf.e_op(i, b)?);
                }
            }
            vec![rel(
                format!("e B_w(∞) ⊂ B_w(∞) for {w}"),
                image,
                set,
                Relation::Subset,
                (false, true),
            )]
        }
        Statement::StarRecursion => {
            let (first, rest) = match letters.split_first() {
                Some((&f, r)) => (Some(f), r),
                None => (None, letters),
            };
            let tail = demazure_binf_closure(binf, rest, d)?;
            let rhs = match first {
                Some(i) => binf_f_star_closure(binf, &tail, i, d)?,
                None => tail,
            };
            vec![rel(
                format!("B_w(∞) vs f*_(i_1) B_(w s_(i_1))(∞) for {w}"),
                bw()?,
                rhs,
                Relation::Equal,
                (true, true),
            )]
        }
        Statement::StringClosure => {
            let set = bw()?;
            let mut strings = BTreeSet::new();
            for b in set.iter().filter(|b| b.depth() < d) {
                for j in 0..ctx.cartan.rank {
                    if set.contains(&binf.f_op(j, b)?) {
                        strings.extend(binf_f_closure(binf, &BTreeSet::from([b.clone()]), j, d)?);
                    }
                }
            }
            vec![rel(
                format!("f-strings through B_w(∞) for {w}"),
                strings,
                set,
                Relation::Subset,
                (false, true),
            )]
        }
        Statement::StarCommutation => {
            let bases = lemma_bases(ctx, params)?;
            let pairs = color_pairs(ctx, params);
            let jobs: Vec<(BInfElement, (usize, usize))> = bases
                .iter()
                .flat_map(|b| pairs.iter().map(move |&p| (b.clone(), p)))
                .collect();
            par::map(&jobs, |(b, (i, j))| -> Result<SetRelation> {
                let start = BTreeSet::from([b.clone()]);
                let lhs = binf_f_closure(binf, &binf_f_star_closure(binf, &start, *j, d)?, *i, d)?;
                let rhs = binf_f_star_closure(binf, &binf_f_closure(binf, &start, *i, d)?, *j, d)?;
                Ok(rel(
                    format!("i={} j={} b={}", i + 1, j + 1, ctx.binf_name(b)),
                    lhs,
                    rhs,
                    Relation::Equal,
                    (true, true),
                ))
            })
            .into_iter()
            .collect::<Result<_>>()?
        }
        Statement::RaisingStar => {
            let bases = lemma_bases(ctx, params)?;
            let pairs = color_pairs(ctx, params);
            let jobs: Vec<(BInfElement, (usize, usize))> = bases
                .iter()
                .flat_map(|b| pairs.iter().map(move |&p| (b.clone(), p)))
                .collect();
            par::map(&jobs, |(b, (i, j))| -> Result<SetRelation> {
                let start = BTreeSet::from([b.clone()]);
                let chain = binf_f_star_closure(binf, &start, *j, d)?;
                let mut lhs = BTreeSet::new();
                for x in &chain {
                    lhs.extend(binf.e_op(*i, x)?);
                }
                let mut rhs = chain.clone();
                if let Some(eb) = binf.e_op(*i, b)? {
                    rhs.extend(binf_f_star_closure(binf, &BTreeSet::from([eb]), *j, d)?);
                }
                Ok(rel(
                    format!("i={} j={} b={}", i + 1, j + 1, ctx.binf_name(b)),
                    lhs,
                    rhs,
                    Relation::Subset,
                    (false, false),
                ))
            })
            .into_iter()
            .collect::<Result<_>>()?
        }
        other => {
            return Err(Error::Internal(format!(
                "{other} is not a structural set statement"
            )))
        }
    })
}

fn structural_params_text(
    ctx: &TypeContext,
    statement: Statement,
    params: &StructuralParams,
) -> String {
    let mut s = format!("{} d={}", ctx.label(), params.depth);
    if !matches!(
        statement,
        Statement::StarCommutation | Statement::RaisingStar
    ) {
        s.push_str(&format!(" word={}", params.word));
    } else {
        if let Some((i, j)) = params.colors {
            s.push_str(&format!(" i={} j={}", i + 1, j + 1));
        }
        if let Some(b) = &params.bases {
            let v: Vec<String> = b.iter().map(|x| ctx.binf_name(x)).collect();
            s.push_str(&format!(" b={{{}}}", v.join(", ")));
        }
    }
    s
}

/// Evaluates one structural statement (or the `Psi` identities) under a depth bound.
pub fn structural_check(
    ctx: &TypeContext,
    statement: Statement,
    params: &StructuralParams,
) -> Result<CheckReport> {
    if statement == Statement::Psi {
        return psi_check(ctx, params.depth);
    }
    let mut report = CheckReport::new(statement, structural_params_text(ctx, statement, params));
    for r in relations(ctx, statement, params)? {
        if let Some(w) = r.witness(ctx) {
            report.fail(w);
        }
    }
    Ok(report)
}

fn restrict(set: &BTreeSet<BInfElement>, depth: usize) -> BTreeSet<BInfElement> {
    set.iter().filter(|b| b.depth() <= depth).cloned().collect()
}

/// Re-runs a structural statement at `depth - 1` and compares with the
/// restriction of the run at `depth`.
pub fn truncation_check(
    ctx: &TypeContext,
    statement: Statement,
    params: &StructuralParams,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        Statement::Truncation,
        format!(
            "{} via {statement}",
            structural_params_text(ctx, statement, params)
        ),
    );
    if params.depth == 0 {
        return Ok(report);
    }
    // Both runs must range over the same base elements.
    let mut params = params.clone();
    if matches!(
        statement,
        Statement::StarCommutation | Statement::RaisingStar
    ) && params.bases.is_none()
    {
        params.bases = Some(lemma_bases(ctx, &params)?);
    }
    let params = &params;
    let smaller = StructuralParams {
        depth: params.depth - 1,
        ..params.clone()
    };
    let big = relations(ctx, statement, params)?;
    let small = relations(ctx, statement, &smaller)?;
    report.check(big.len() == small.len(), || {
        format!("{} relations at d but {} at d-1", big.len(), small.len())
    });
    for (b, s) in big.iter().zip(&small) {
        report.check(b.holds() == s.holds(), || {
            format!("{}: verdict changes between d and d-1", b.label)
        });
        if b.restrictable.0 {
            report.check(restrict(&b.lhs, smaller.depth) == s.lhs, || {
                format!("{}: left side is not depth-stable", b.label)
            });
        }
        if b.restrictable.1 {
            report.check(restrict(&b.rhs, smaller.depth) == s.rhs, || {
                format!("{}: right side is not depth-stable", b.label)
            });
        }
    }
    Ok(report)
}

/// Generation, Demazure sets and window size are all depth- and window-stable.
pub fn generation_stability_check(ctx: &TypeContext, depth: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        Statement::Truncation,
        format!("{} generation d={depth}", ctx.label()),
    );
    let binf = &ctx.binf;
    let big = binf.generate(depth)?;
    if depth > 0 {
        report.check(
            restrict(&big, depth - 1) == binf.generate(depth - 1)?,
            || "generate(d-1) is not the restriction of generate(d)".into(),
        );
        for (_, word) in ctx.all_words() {
            let a = demazure_binf_closure(binf, word.letters(), depth)?;
            let b = demazure_binf_closure(binf, word.letters(), depth - 1)?;
            report.check(restrict(&a, depth - 1) == b, || {
                format!("B_w(∞) for {word} is not depth-stable")
            });
        }
    }
    // A window one block longer gives the same operators.
    let padded = BInfinity::with_padding(ctx.cartan.clone(), 1);
    for b in &big {
        for i in 0..ctx.cartan.rank {
            let same = binf.f_op(i, b)? == padded.f_op(i, b)?
                && binf.e_op(i, b)? == padded.e_op(i, b)?
                && binf.eps_op(i, b) == padded.eps_op(i, b)
                && binf.psi(i, b)? == padded.psi(i, b)?;
            report.check(same, || {
                format!(
                    "color {}: a longer window changes the result at {}",
                    i + 1,
                    ctx.binf_name(b)
                )
            });
        }
        report.check(binf.star(b)? == padded.star(b)?, || {
            format!("a longer window changes star({})", ctx.binf_name(b))
        });
    }
    Ok(report)
}

/// `B_w(lambda)` is the preimage of `B_w(infinity) (x) t_lambda`, up to `depth`.
pub fn iota_check(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
    word: &ReducedWord,
    depth: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        Statement::Iota,
        format!("{} d={depth}", lambda_params(crystal, Some(word))),
    );
    let bl = ctx.blambda(crystal.lambda())?;
    let mut preimage = BTreeSet::new();
    for b in demazure_binf_closure(&ctx.binf, word.letters(), depth)? {
        if bl.contains(&b)? {
            preimage.insert(b);
        }
    }
    let direct: BTreeSet<BInfElement> = demazure_blambda(crystal, &ctx.weyl, word)?
        .members
        .into_iter()
        .map(|x| crystal.element(x).base.clone())
        .filter(|b| b.depth() <= depth)
        .collect();
    if let Some(x) = preimage.symmetric_difference(&direct).next() {
        report.fail(format!(
            "{} lies in exactly one of the two sets",
            ctx.binf_name(x)
        ));
    }
    Ok(report)
}

/// Order of `s_i s_j`.
pub fn braid_order(cartan: &CartanData, i: usize, j: usize) -> usize {
    match cartan.entry(i, j) * cartan.entry(j, i) {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        p => panic!("no finite braid relation for product {p}"),
    }
}

fn alternating(i: usize, j: usize, m: usize) -> Vec<usize> {
    (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect()
}

/// Searches basis elements where the braid relation between `D_i` and `D_j`
/// fails, and confirms it on every Demazure sum. Only the latter decides the verdict.
pub fn braid_witness_search(
    ctx: &TypeContext,
    crystal: &HighestWeightCrystal,
    i: usize,
    j: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        Statement::Braid,
        format!("{} i={} j={}", lambda_params(crystal, None), i + 1, j + 1),
    );
    if i == j {
        return Err(Error::Internal(
            "braid search needs two distinct colors".into(),
        ));
    }
    let m = braid_order(&ctx.cartan, i, j);
    let (left, right) = (alternating(i, j, m), alternating(j, i, m));
    let mut witnesses = Vec::new();
    for x in crystal.ids() {
        let single = FormalSum::single(x);
        if demazure_operator_word(crystal, &left, &single)?
            != demazure_operator_word(crystal, &right, &single)?
        {
            witnesses.push(crystal.name(x));
        }
    }
    let mut instances = 0;
    for w in ctx.weyl.elements() {
        let sum = FormalSum::from_elements(demazure_closure(crystal, w.canonical_word.letters()));
        let l = demazure_operator_word(crystal, &left, &sum)?;
        let r = demazure_operator_word(crystal, &right, &sum)?;
        instances += 1;
        report.check(l == r, || {
            format!(
                "braid relation fails on the Demazure sum for {}",
                w.canonical_word
            )
        });
    }
    report.details.push(format!(
        "m = {m}; {} basis witnesses of {}",
        witnesses.len(),
        crystal.len()
    ));
    if !witnesses.is_empty() {
        let shown: Vec<&str> = witnesses.iter().take(6).map(String::as_str).collect();
        report
            .details
            .push(format!("basis witnesses: {}", shown.join("; ")));
    }
    report
        .details
        .push(format!("{instances} Demazure-sum instances agree"));
    Ok(report)
}

/// What a verification run covers.
#[derive(Clone, Debug)]
pub struct Scope {
    pub lambdas: Vec<Weight>,
    /// Restrict word-based suites to one word; otherwise every reduced word.
    pub word: Option<ReducedWord>,
    pub depth: usize,
    /// Longest element length used by the word-based `B(infinity)` suites.
    pub max_structural_length: usize,
}

impl Scope {
    pub fn grid(t: TypeLabel) -> Self {
        Scope {
            lambdas: grid_lambdas(t),
            word: None,
            depth: grid_depth(t),
            max_structural_length: 3,
        }
    }
}

fn words_for<'a>(
    ctx: &'a TypeContext,
    scope: &Scope,
    max_len: usize,
) -> Vec<(&'a WeylElement, ReducedWord)> {
    match &scope.word {
        Some(w) => match ctx.weyl.product(w.letters()) {
            Ok(el) => vec![(el, w.clone())],
            Err(_) => Vec::new(),
        },
        None => ctx.words_up_to(max_len),
    }
}

/// Runs one suite for one type. Reports come back in a deterministic order.
pub fn run_suite(
    ctx: &TypeContext,
    statement: Statement,
    scope: &Scope,
) -> Result<Vec<CheckReport>> {
    if let Some(w) = &scope.word {
        ctx.weyl.require_reduced(w)?;
    }
    let lambda_suite = |f: &(dyn Fn(&HighestWeightCrystal) -> Result<Vec<CheckReport>> + Sync)| -> Result<Vec<CheckReport>> {
        let rows = par::map(&scope.lambdas, |lambda| ctx.crystal(lambda).and_then(|c| f(&c)));
        Ok(rows.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
    };
    match statement {
        Statement::RefinedFormula => lambda_suite(&|c| {
            words_for(ctx, scope, usize::MAX)
                .iter()
                .map(|(_, w)| refined_formula_check(ctx, c, w))
                .collect()
        }),
        Statement::StringProperty => lambda_suite(&|c| {
            words_for(ctx, scope, usize::MAX)
                .iter()
                .map(|(_, w)| string_property_check(ctx, c, w))
                .collect()
        }),
        Statement::WordIndependence => lambda_suite(&|c| {
            let elements: Vec<&WeylElement> = match &scope.word {
                Some(w) => vec![ctx.weyl.product(w.letters())?],
                None => ctx.weyl.elements().iter().collect(),
            };
            elements
                .into_iter()
                .map(|w| word_independence_check(ctx, c, w))
                .collect()
        }),
        Statement::FullCrystal => lambda_suite(&|c| Ok(vec![full_crystal_check(ctx, c)?])),
        Statement::Intertwining => lambda_suite(&|c| Ok(vec![intertwining_check(ctx, c)?])),
        Statement::LowestWitness => {
            if ctx.label() != TypeLabel::A2 {
                return Ok(Vec::new());
            }
            lambda_suite(&|c| Ok(vec![lowest_witness_check(ctx, c)?]))
        }
        Statement::Axioms => {
            let mut out = lambda_suite(&|c| Ok(vec![blambda_axioms_check(ctx, c)?]))?;
            out.push(binf_axioms_check(ctx, scope.depth)?);
            out.push(tensor_associativity_check(ctx, 2)?);
            Ok(out)
        }
        Statement::Iota => lambda_suite(&|c| {
            words_for(ctx, scope, usize::MAX)
                .iter()
                .map(|(_, w)| iota_check(ctx, c, w, scope.depth))
                .collect()
        }),
        Statement::Braid => lambda_suite(&|c| {
            let n = ctx.cartan.rank;
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    out.push(braid_witness_search(ctx, c, i, j)?);
                }
            }
            Ok(out)
        }),
        Statement::Star => Ok(vec![star_check(ctx, scope.depth)?]),
        Statement::Psi => Ok(vec![psi_check(ctx, scope.depth)?]),
        Statement::StarCommutation | Statement::RaisingStar => {
            let params = StructuralParams {
                depth: scope.depth,
                ..Default::default()
            };
            Ok(vec![structural_check(ctx, statement, &params)?])
        }
        Statement::StarUnion
        | Statement::StarInverse
        | Statement::RaisingClosure
        | Statement::StarRecursion
        | Statement::StringClosure => {
            let words = words_for(ctx, scope, scope.max_structural_length);
            let rows = par::map(&words, |(_, w)| {
                structural_check(
                    ctx,
                    statement,
                    &StructuralParams {
                        word: w.clone(),
                        depth: scope.depth,
                        ..Default::default()
                    },
                )
            });
            rows.into_iter().collect()
        }
        Statement::Truncation => {
            let mut out = vec![generation_stability_check(ctx, scope.depth)?];
            let words = words_for(ctx, scope, scope.max_structural_length);
            for st in [
                Statement::StarUnion,
                Statement::StarInverse,
                Statement::RaisingClosure,
                Statement::StarRecursion,
                Statement::StringClosure,
            ] {
                let rows = par::map(&words, |(_, w)| {
                    truncation_check(
                        ctx,
                        st,
                        &StructuralParams {
                            word: w.clone(),
                            depth: scope.depth,
                            ..Default::default()
                        },
                    )
                });
                out.extend(rows.into_iter().collect::<Result<Vec<_>>>()?);
            }
            for st in [Statement::StarCommutation, Statement::RaisingStar] {
                out.push(truncation_check(
                    ctx,
                    st,
                    &StructuralParams {
                        depth: scope.depth,
                        ..Default::default()
                    },
                )?);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statement_ids_round_trip() {
        for s in Statement::ALL {
            assert_eq!(s.id().parse::<Statement>().unwrap(), s);
        }
        assert!("nosuch".parse::<Statement>().is_err());
        assert!(!Statement::Braid.gating());
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(grid_lambdas(TypeLabel::A1).len(), 5);
        assert_eq!(grid_lambdas(TypeLabel::A2).len(), 9);
        assert_eq!(grid_lambdas(TypeLabel::G2).len(), 4);
        assert_eq!(grid_lambdas(TypeLabel::A3).len(), 8);
    }

    #[test]
    fn refined_formula_examples() {
        let ctx = TypeContext::new(TypeLabel::A2);
        let c = ctx.crystal(&Weight(vec![1, 1])).unwrap();
        let r = refined_formula_check(&ctx, &c, &ReducedWord(vec![0, 1, 0])).unwrap();
        assert!(r.passed(), "{r}");
        let r = refined_formula_check(&ctx, &c, &ReducedWord(vec![1, 0, 1])).unwrap();
        assert!(r.passed(), "{r}");
        let ctx1 = TypeContext::new(TypeLabel::A1);
        let c = ctx1.crystal(&Weight(vec![3])).unwrap();
        let rhs = demazure_operator_word(&c, &[0], &FormalSum::single(c.highest())).unwrap();
        assert_eq!(rhs.len(), 4);
        assert!(refined_formula_check(&ctx1, &c, &ReducedWord(vec![0]))
            .unwrap()
            .passed());
    }

    #[test]
    fn string_property_examples() {
        let ctx = TypeContext::new(TypeLabel::A2);
        let c = ctx.crystal(&Weight(vec![1, 1])).unwrap();
        assert!(string_property_check(&ctx, &c, &ReducedWord(vec![0, 1]))
            .unwrap()
            .passed());
        assert!(string_property_check(&ctx, &c, &ReducedWord::empty())
            .unwrap()
            .passed());
    }

    #[test]
    fn structural_examples() {
        let ctx = TypeContext::new(TypeLabel::A2);
        let p = |w: Vec<usize>| StructuralParams {
            word: ReducedWord(w),
            depth: 6,
            ..Default::default()
        };
        assert!(
            structural_check(&ctx, Statement::StarInverse, &p(vec![0, 1]))
                .unwrap()
                .passed()
        );
        assert!(
            structural_check(&ctx, Statement::StarUnion, &p(vec![0, 1, 0]))
                .unwrap()
                .passed()
        );
        let f2u = ctx.binf.f_op(1, &ctx.binf.highest()).unwrap();
        let lem34 = StructuralParams {
            depth: 6,
            bases: Some(vec![f2u]),
            colors: Some((0, 0)),
            ..Default::default()
        };
        assert!(structural_check(&ctx, Statement::RaisingStar, &lem34)
            .unwrap()
            .passed());
    }

    #[test]
    fn a_wrong_relation_produces_a_witness() {
        let ctx = TypeContext::new(TypeLabel::A2);
        // B_w(∞)* is B_w⁻¹(∞), not B_w(∞): compare against the wrong set.
        let word = ReducedWord(vec![0, 1]);
        let set = demazure_binf_closure(&ctx.binf, word.letters(), 3).unwrap();
        let stars: BTreeSet<_> = set.iter().map(|b| ctx.binf.star(b).unwrap()).collect();
        let r = SetRelation {
            label: "deliberately wrong".into(),
            lhs: stars,
            rhs: set,
            relation: Relation::Equal,
            restrictable: (true, true),
        };
        assert!(!r.holds());
        assert!(r.witness(&ctx).unwrap().contains("deliberately wrong"));
    }

    #[test]
    fn word_independence_examples() {
        let ctx = TypeContext::new(TypeLabel::A2);
        let c = ctx.crystal(&Weight(vec![1, 1])).unwrap();
        let r = word_independence_check(&ctx, &c, ctx.weyl.longest()).unwrap();
        assert!(r.passed());
        let s1 = ctx.weyl.product(&[0]).unwrap();
        assert!(word_independence_check(&ctx, &c, s1).unwrap().passed());
    }

    #[test]
    fn braid_examples() {
        let ctx = TypeContext::new(TypeLabel::A2);
        let c = ctx.crystal(&Weight(vec![0, 0])).unwrap();
        let r = braid_witness_search(&ctx, &c, 0, 1).unwrap();
        assert!(r.passed());
        assert!(r.details[0].contains("0 basis witnesses"));
        let ctx = TypeContext::new(TypeLabel::A1xA1);
        for lambda in grid_lambdas(TypeLabel::A1xA1) {
            let c = ctx.crystal(&lambda).unwrap();
            let r = braid_witness_search(&ctx, &c, 0, 1).unwrap();
            assert!(
                r.passed() && r.details[0].contains(" 0 basis witnesses"),
                "{r}"
            );
        }
    }
}
