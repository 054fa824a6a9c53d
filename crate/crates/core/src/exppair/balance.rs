use serde::Serialize;

use super::{ExponentPair, PairError};
use crate::scalar::OrderedScalar;

/// A bound `R^a H^b` on part of a lattice-sum error, normalised by `R^nu`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTerm<T> {
    pub r_exp: T,
    pub h_exp: T,
    pub label: String,
    pub eps: bool,
}

fn power(base: &str, exp: &str) -> String {
    match exp {
        "0" => String::new(),
        "1" => base.to_string(),
        e if e.contains(['/', '-', '.', 'e']) => format!("{base}^{{{e}}}"),
        e => format!("{base}^{e}"),
    }
}

impl<T: OrderedScalar> ErrorTerm<T> {
    /// A term labelled by its exponents, e.g. `R^{17/14}H^{-1/7}`.
    pub fn new(r_exp: T, h_exp: T, eps: bool) -> Self {
        let mut label = power("R", &r_exp.to_literal()) + &power("H", &h_exp.to_literal());
        if label.is_empty() {
            label = "1".into();
        }
        Self { r_exp, h_exp, label, eps }
    }

    /// Exponent of `R` after substituting `H = R^alpha`.
    pub fn at(&self, alpha: &T) -> T {
        self.r_exp.clone() + self.h_exp.clone() * alpha.clone()
    }
}

fn frac<T: OrderedScalar>(p: i64, q: i64) -> T {
    T::from_int(p) / T::from_int(q)
}

/// The two terms of the long-sum bound driven by an exponent pair:
/// `R H^{-1/2}` and `R^{1 + (k+1)/(4k+2l+4)} H^{-(k+3l-1)/(4k+2l+4)}`.
pub fn long_sum_terms<T: OrderedScalar>(p: &ExponentPair<T>) -> Vec<ErrorTerm<T>> {
    let (k, l) = (p.k.clone(), p.l.clone());
    let denom = T::from_int(4) * k.clone() + T::from_int(2) * l.clone() + T::from_int(4);
    let r_exp = T::one() + (k.clone() + T::one()) / denom.clone();
    let h_exp = -(k + T::from_int(3) * l - T::one()) / denom;
    vec![ErrorTerm::new(T::one(), frac(-1, 2), false), ErrorTerm::new(r_exp, h_exp, p.eps_carry)]
}

/// Bounds for the short sum over the shell `R <= |x| <= R + H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShortModel {
    /// `R^2 H`, counting points in the shell.
    Trivial,
    /// `R^{15/8} H^{7/8}` (Chamizo-Iwaniec).
    Ci,
    /// `R^{11/6} H^{5/6}` (Heath-Brown).
    Hb,
    /// `R^{15/8} H + R`, from coefficient bounds for cusp forms.
    Cusp,
    /// `R^{3/2} H^{1/2}`, conditional on the Lindelof hypothesis for the short interval.
    Glh,
    /// `R^{3/2} H`, conditional on square-root cancellation in the coefficients.
    Rc,
}

impl ShortModel {
    pub const ALL: [ShortModel; 6] =
        [ShortModel::Trivial, ShortModel::Ci, ShortModel::Hb, ShortModel::Cusp, ShortModel::Glh, ShortModel::Rc];

    pub fn name(self) -> &'static str {
        match self {
            ShortModel::Trivial => "trivial",
            ShortModel::Ci => "ci",
            ShortModel::Hb => "hb",
            ShortModel::Cusp => "cusp",
            ShortModel::Glh => "glh",
            ShortModel::Rc => "rc",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name().eq_ignore_ascii_case(name))
    }

    pub fn is_conjectural(self) -> bool {
        matches!(self, ShortModel::Glh | ShortModel::Rc)
    }
}

pub fn short_sum_terms<T: OrderedScalar>(model: ShortModel) -> Vec<ErrorTerm<T>> {
    let t = |a: T, b: T| ErrorTerm::new(a, b, false);
    match model {
        ShortModel::Trivial => vec![t(T::from_int(2), T::one())],
        ShortModel::Ci => vec![t(frac(15, 8), frac(7, 8))],
        ShortModel::Hb => vec![t(frac(11, 6), frac(5, 6))],
        ShortModel::Cusp => vec![t(frac(15, 8), T::one()), t(T::one(), T::zero())],
        ShortModel::Glh => vec![t(frac(3, 2), frac(1, 2))],
        ShortModel::Rc => vec![t(frac(3, 2), T::one())],
    }
}

/// `1 + max(7/24, (15k + 21l + 1)/(40k + 40l + 24))`.
pub fn theta_formula<T: OrderedScalar>(p: &ExponentPair<T>) -> T {
    let (k, l) = (p.k.clone(), p.l.clone());
    let branch = (T::from_int(15) * k.clone() + T::from_int(21) * l.clone() + T::one())
        / (T::from_int(40) * k + T::from_int(40) * l + T::from_int(24));
    let floor = frac(7, 24);
    T::one() + if branch > floor { branch } else { floor }
}

/// Closed or half-open range for `alpha = log H / log R`; `None` is unbounded.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaRange<T> {
    pub lo: Option<T>,
    pub hi: Option<T>,
}

impl<T: OrderedScalar> Default for AlphaRange<T> {
    /// `[-1, 0]`: the smoothing width lies between `1/R` and `1`.
    fn default() -> Self {
        Self { lo: Some(-T::one()), hi: Some(T::zero()) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalanceResult<T> {
    pub alpha: T,
    pub theta: T,
    /// Labels of the terms attaining `theta` at `alpha`.
    pub active_terms: Vec<String>,
    pub eps: bool,
}

fn envelope<T: OrderedScalar>(terms: &[&ErrorTerm<T>], alpha: &T) -> T {
    terms
        .iter()
        .map(|t| t.at(alpha))
        .reduce(|a, b| if b > a { b } else { a })
        .expect("nonempty")
}

/// Minimises `F(alpha) = max_i (a_i + b_i alpha)` over `range`, exactly.
///
/// `F` is convex and piecewise linear, so its minimum sits at an end of the
/// range or where two terms cross. Among minimisers the largest `alpha` wins.
pub fn balance<T: OrderedScalar>(
    long_terms: &[ErrorTerm<T>],
    short_terms: &[ErrorTerm<T>],
    range: &AlphaRange<T>,
) -> Result<BalanceResult<T>, PairError> {
    if long_terms.is_empty() || short_terms.is_empty() {
        return Err(PairError::NoTerms);
    }
    if let (Some(lo), Some(hi)) = (&range.lo, &range.hi) {
        if lo > hi {
            return Err(PairError::EmptyRange);
        }
    }
    let terms: Vec<&ErrorTerm<T>> = long_terms.iter().chain(short_terms).collect();
    let min_slope = terms.iter().map(|t| t.h_exp.clone()).reduce(|a, b| if b < a { b } else { a }).unwrap();
    let max_slope = terms.iter().map(|t| t.h_exp.clone()).reduce(|a, b| if b > a { b } else { a }).unwrap();
    // Far left F has slope min_slope, far right max_slope.
    if range.lo.is_none() && min_slope > T::zero() {
        return Err(PairError::Unbounded);
    }
    if range.hi.is_none() && max_slope <= T::zero() {
        return Err(PairError::Unbounded);
    }
    let inside = |a: &T| {
        range.lo.as_ref().is_none_or(|lo| a >= lo) && range.hi.as_ref().is_none_or(|hi| a <= hi)
    };
    let mut candidates: Vec<T> = range.lo.iter().chain(range.hi.iter()).cloned().collect();
    for (i, s) in terms.iter().enumerate() {
        for t in &terms[i + 1..] {
            let ds = t.h_exp.clone() - s.h_exp.clone();
            if ds.is_zero() {
                continue;
            }
            let alpha = (s.r_exp.clone() - t.r_exp.clone()) / ds;
            if inside(&alpha) {
                candidates.push(alpha);
            }
        }
    }
    if candidates.is_empty() {
        return Err(PairError::Unbounded);
    }
    let mut best: Option<(T, T)> = None;
    for alpha in candidates {
        let value = envelope(&terms, &alpha);
        best = match best {
            None => Some((alpha, value)),
            Some((ba, bv)) => {
                if value < bv || (value == bv && alpha > ba) {
                    Some((alpha, value))
                } else {
                    Some((ba, bv))
                }
            }
        };
    }
    let (alpha, theta) = best.expect("nonempty candidates");
    let active: Vec<&&ErrorTerm<T>> = terms.iter().filter(|t| t.at(&alpha) == theta).collect();
    Ok(BalanceResult {
        active_terms: active.iter().map(|t| t.label.clone()).collect(),
        eps: terms.iter().any(|t| t.eps),
        alpha,
        theta,
    })
}

impl<T: OrderedScalar> BalanceResult<T> {
    /// Checks `F(alpha ± delta) >= F(alpha)` at the probes that fall inside `range`.
    pub fn certify(&self, terms: &[ErrorTerm<T>], range: &AlphaRange<T>, delta: &T) -> bool {
        let refs: Vec<&ErrorTerm<T>> = terms.iter().collect();
        let inside = |a: &T| {
            range.lo.as_ref().is_none_or(|lo| a >= lo) && range.hi.as_ref().is_none_or(|hi| a <= hi)
        };
        [self.alpha.clone() - delta.clone(), self.alpha.clone() + delta.clone()]
            .iter()
            .filter(|a| inside(a))
            .all(|a| envelope(&refs, a) >= self.theta)
    }
}
