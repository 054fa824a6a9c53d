//! The summary table of proved and conjectured exponents, regenerated by balancing.

use std::fmt::Write as _;

use num_rational::BigRational;

use super::{
    balance, huxley_pair, lindelof_pair, long_sum_terms, short_sum_terms, AlphaRange, BalanceResult, ErrorTerm,
    ExponentPair, ShortModel,
};
use crate::scalar::{rational_to_f64, ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    AllP,
    Constant,
    MeanZero,
}

impl Applicability {
    pub fn label(self) -> &'static str {
        match self {
            Applicability::AllP => "all P",
            Applicability::Constant => "P = 1",
            Applicability::MeanZero => "mean-zero P",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub long_source: &'static str,
    pub short_source: &'static str,
    pub long_terms: Vec<ErrorTerm<BigRational>>,
    pub short_terms: Vec<ErrorTerm<BigRational>>,
    pub result: BalanceResult<BigRational>,
    pub applicability: Applicability,
    /// Conjectural rows carry two question marks, proved rows none.
    pub marks: u8,
}

impl TableRow {
    pub fn long_label(&self) -> String {
        join(&self.long_terms)
    }

    pub fn short_label(&self) -> String {
        join(&self.short_terms)
    }
}

fn join(terms: &[ErrorTerm<BigRational>]) -> String {
    terms.iter().map(|t| t.label.as_str()).collect::<Vec<_>>().join(" + ")
}

fn t(a: (i64, i64), b: (i64, i64)) -> ErrorTerm<BigRational> {
    ErrorTerm::new(ratio(a.0, a.1), ratio(b.0, b.1), false)
}

/// The twelve rows, each balanced over `alpha` in `[-1, 0]`.
pub fn appendix_table() -> Vec<TableRow> {
    let half = ExponentPair::new(ratio(1, 2), ratio(1, 2), false).expect("valid pair");
    let huxley_bah = huxley_pair().apply_word("BA^2").expect("valid word");
    let van_der_corput = vec![t((1, 1), (-1, 1))];
    let chen_vinogradov = vec![t((1, 1), (-1, 2))];
    let chamizo_iwaniec = vec![t((1, 1), (-1, 2)), t((21, 16), (0, 1)), t((11, 8), (1, 8))];
    let classic = long_sum_terms(&half);
    let huxley = long_sum_terms(&huxley_bah);
    let huxley_raw = long_sum_terms(&huxley_pair());
    let lindelof = long_sum_terms(&lindelof_pair());

    use Applicability::*;
    use ShortModel::*;
    let specs: Vec<(&'static str, Vec<ErrorTerm<BigRational>>, ShortModel, Applicability)> = vec![
        ("Van der Corput", van_der_corput, Trivial, AllP),
        ("Chen, Vinogradov", chen_vinogradov, Trivial, AllP),
        ("Chamizo-Iwaniec", chamizo_iwaniec.clone(), Ci, Constant),
        ("Chamizo-Iwaniec", chamizo_iwaniec, Hb, Constant),
        ("pair (1/2,1/2)", classic.clone(), Cusp, MeanZero),
        ("pair BA^2 Huxley", huxley, Cusp, MeanZero),
        ("Lindelof pair", lindelof.clone(), Cusp, MeanZero),
        ("pair (1/2,1/2)", classic.clone(), Glh, Constant),
        ("Lindelof pair", lindelof.clone(), Glh, Constant),
        ("pair (1/2,1/2)", classic, Rc, MeanZero),
        ("Huxley pair", huxley_raw, Rc, MeanZero),
        ("Lindelof pair", lindelof, Rc, MeanZero),
    ];
    specs
        .into_iter()
        .map(|(long_source, long_terms, model, applicability)| {
            let short_terms = short_sum_terms(model);
            let result = balance(&long_terms, &short_terms, &AlphaRange::default()).expect("bounded table row");
            let conjectural = model.is_conjectural() || long_source == "Lindelof pair";
            TableRow {
                long_source,
                short_source: short_source(model),
                long_terms,
                short_terms,
                result,
                applicability,
                marks: if conjectural { 2 } else { 0 },
            }
        })
        .collect()
}

fn short_source(model: ShortModel) -> &'static str {
    match model {
        ShortModel::Trivial => "trivial",
        ShortModel::Ci => "Chamizo-Iwaniec",
        ShortModel::Hb => "Heath-Brown",
        ShortModel::Cusp => "cusp-form coefficients",
        ShortModel::Glh => "GLH",
        ShortModel::Rc => "RC",
    }
}

fn decimal(r: &BigRational) -> String {
    format!("{:.5}", rational_to_f64(r))
}

/// CSV with header `long,short,theta,alpha,marks`.
pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("long,short,theta,alpha,marks\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.long_label(),
            row.short_label(),
            row.result.theta,
            row.result.alpha,
            "?".repeat(row.marks as usize)
        );
    }
    out
}

/// Aligned plain-text table; conjectural cells are suffixed with their question marks.
pub fn render_text(rows: &[TableRow]) -> String {
    let header = ["long sum", "short sum", "theta", "alpha", "theta (dec)", "alpha (dec)", "applies to", "sources"];
    let cells: Vec<[String; 8]> = rows
        .iter()
        .map(|row| {
            let q = "?".repeat(row.marks as usize);
            [
                row.long_label(),
                row.short_label(),
                format!("{}{q}", row.result.theta),
                format!("{}{q}", row.result.alpha),
                decimal(&row.result.theta),
                decimal(&row.result.alpha),
                row.applicability.label().to_string(),
                format!("{} / {}", row.long_source, row.short_source),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |fields: Vec<&str>| {
        let padded: Vec<String> =
            fields.iter().zip(widths).map(|(f, w)| format!("{f}{}", " ".repeat(w - f.chars().count()))).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in &cells {
        line(row.iter().map(String::as_str).collect());
    }
    out
}
