//! Plain-text analysis report with stable section headers.

use std::fmt;

use contextlab_core::coloring::{chromatic_number, Coloring, ColoringError};
use contextlab_core::enumeration::{
    additive_histogram, enumerate_two_valued_states, product_sum_histogram, EnumerationError, SweepOptions,
};
use contextlab_core::hypergraph::{FaithfulnessReport, Violation};
use contextlab_core::quantum::{
    additive_prediction, context_product_operator, context_sum_operator, expectation, prime_product_decompose,
    quantum_product_prediction, QuantumError,
};
use contextlab_core::{
    ContextHypergraph, DensityMatrix, EigenvalueScheme, Matrix, PmAssignment, Rational, SumHistogram, TwoValuedState,
    ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

impl Section {
    fn new(title: &str) -> Self {
        Section { title: title.to_string(), lines: Vec::new() }
    }

    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalysisReport {
    pub sections: Vec<Section>,
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "== {}", s.title)?;
            for line in &s.lines {
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

fn names(h: &ContextHypergraph, ids: impl IntoIterator<Item = contextlab_core::ObservableId>) -> String {
    let list: Vec<&str> = ids.into_iter().map(|id| h.name(id)).collect();
    if list.is_empty() {
        "(none)".to_string()
    } else {
        list.join(" ")
    }
}

pub fn witness(h: &ContextHypergraph, a: PmAssignment) -> String {
    format!("mask {:#x}, -1 at {}", a.0, names(h, a.minus_ones().filter(|id| id.0 < h.num_observables())))
}

pub fn configuration_section(label: &str, h: &ContextHypergraph) -> Section {
    let mut s = Section::new("configuration");
    s.line(format!("source: {label}"));
    s.line(format!("dimension: {}", h.dim()));
    s.line(format!("observables: {}", h.num_observables()));
    s.line(format!("contexts: {}", h.contexts().len()));
    s.line(format!("labeled: {}", yes_no(h.labels().is_some())));
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn validation_section(
    h: &ContextHypergraph,
    report: &ValidationReport,
    faithful: Option<&FaithfulnessReport>,
) -> Section {
    let mut s = Section::new("validation");
    for (check, context) in report.contexts.iter().zip(h.contexts()) {
        let members = names(h, context.members.iter().copied());
        match &check.vectors {
            None => s.line(format!("{}: {} (unlabeled, vector checks skipped)", check.name, members)),
            Some(v) => {
                s.line(format!(
                    "{}: {} orthogonal={} complete={} det={}",
                    check.name,
                    members,
                    yes_no(v.orthogonal()),
                    yes_no(v.complete()),
                    v.determinant
                ));
                for &z in &v.zero_members {
                    s.line(format!("  zero vector: {}", h.name(z)));
                }
                for &(a, b, ip) in &v.non_orthogonal {
                    s.line(format!("  non-orthogonal pair: {} {} (inner product {})", h.name(a), h.name(b), ip));
                }
            }
        }
    }
    let degrees: Vec<String> =
        h.observables().zip(&report.degrees).map(|(id, d)| format!("{}:{}", h.name(id), d)).collect();
    s.line(format!("occurrence degrees: {}", degrees.join(" ")));
    s.line(format!("even-connected: {}", yes_no(h.is_even_connected())));
    match faithful {
        None => s.line("faithful orthogonal representation: skipped (unlabeled)"),
        Some(f) => {
            s.line(format!(
                "faithful orthogonal representation: {} ({} counterexamples)",
                yes_no(f.is_faithful()),
                f.counterexamples.len()
            ));
            for &(a, b, kind) in &f.counterexamples {
                let why = match kind {
                    Violation::OrthogonalNotCocontextual => "orthogonal but share no context",
                    Violation::CocontextualNotOrthogonal => "share a context but are not orthogonal",
                };
                s.line(format!("  {} {}: {}", h.name(a), h.name(b), why));
            }
        }
    }
    s.line(format!("valid: {}", yes_no(report.is_valid())));
    s
}

pub fn states_section(h: &ContextHypergraph, states: &[TwoValuedState]) -> Section {
    let mut s = Section::new("two-valued states");
    s.line(format!("count: {}", states.len()));
    for (i, state) in states.iter().enumerate() {
        s.line(format!("state {}: value 1 at {}", i + 1, names(h, state.ones())));
    }
    s
}

fn histogram_lines(s: &mut Section, h: &ContextHypergraph, hist: &SumHistogram) {
    s.line(format!("assignments: {}", hist.total()));
    for (sum, count) in hist.counts() {
        s.line(format!("  {sum:>4}: {count}"));
    }
    if let Some((v, w)) = hist.min() {
        s.line(format!("min: {v} ({})", witness(h, w)));
    }
    if let Some((v, w)) = hist.max() {
        s.line(format!("max: {v} ({})", witness(h, w)));
    }
}

pub fn products_section(h: &ContextHypergraph, hist: &SumHistogram) -> Section {
    let mut s = Section::new("product sums");
    histogram_lines(&mut s, h, hist);
    let n = h.contexts().len() as i64;
    s.line(format!("count(-{n}): {}", hist.count(-n)));
    s.line(format!("count(-{}): {}", n - 1, hist.count(-(n - 1))));
    s
}

pub fn additive_section(h: &ContextHypergraph, hist: &SumHistogram) -> Section {
    let mut s = Section::new("additive sums");
    histogram_lines(&mut s, h, hist);
    s
}

/// Per-context and total quantum values for one scheme.
pub fn quantum_lines(
    s: &mut Section,
    h: &ContextHypergraph,
    scheme: &EigenvalueScheme,
    minus_slot: usize,
) -> Result<Rational, QuantumError> {
    let eigen = scheme.eigenvalues(h.dim(), minus_slot)?;
    let per_context = scheme.product(h.dim())?;
    let total = quantum_product_prediction(h, scheme)?;
    let list: Vec<String> = eigen.iter().map(Rational::to_string).collect();
    s.line(format!("scheme {scheme}: eigenvalues ({})", list.join(", ")));
    s.line(format!("  per-context product: {per_context}"));
    s.line(format!("  sum over {} contexts: {total}", h.contexts().len()));
    if let EigenvalueScheme::Primes(primes) = scheme {
        if per_context.is_integer() && per_context.numer() > 0 {
            let factors = prime_product_decompose(per_context.numer() as u64, primes)?;
            let list: Vec<String> = factors.iter().map(u64::to_string).collect();
            s.line(format!("  decomposition of {per_context}: {{{}}}", list.join(", ")));
        }
    }
    Ok(total)
}

pub fn additive_quantum_lines(
    s: &mut Section,
    h: &ContextHypergraph,
    minus_slot: usize,
) -> Result<Rational, QuantumError> {
    let rho = DensityMatrix::maximally_mixed(h.dim());
    let first = h.contexts().first().map(|c| context_sum_operator(h, c, minus_slot)).transpose()?;
    let total = additive_prediction(h, minus_slot)?;
    if let Some(op) = first {
        s.line(format!(
            "context sum (-1 at slot {}): trace {}, expectation {}",
            minus_slot + 1,
            op.trace(),
            expectation(&op, &rho)?
        ));
    }
    s.line(format!("additive prediction under maximally mixed state: {total}"));
    s.line(format!("eigenvalue total ({} x sum): {}", h.dim(), total * Rational::from(h.dim() as i64)));
    Ok(total)
}

pub fn quantum_section(
    h: &ContextHypergraph,
    schemes: &[EigenvalueScheme],
    minus_slot: usize,
) -> Result<Section, QuantumError> {
    let mut s = Section::new("quantum predictions");
    let minus_one = Matrix::identity(h.dim()).scale(-Rational::ONE);
    let all = h
        .contexts()
        .iter()
        .map(|c| context_product_operator(h, c).map(|m| m == minus_one))
        .collect::<Result<Vec<_>, _>>()?;
    s.line(format!("context reflector products equal -1: {}/{}", all.iter().filter(|&&x| x).count(), all.len()));
    for scheme in schemes {
        quantum_lines(&mut s, h, scheme, minus_slot)?;
    }
    additive_quantum_lines(&mut s, h, minus_slot)?;
    Ok(s)
}

pub fn structure_section(h: &ContextHypergraph, coloring: Result<&Coloring, &ColoringError>) -> Section {
    let mut s = Section::new("parity and coloring");
    s.line(format!("contexts: {} ({})", h.contexts().len(), if h.contexts().len() % 2 == 1 { "odd" } else { "even" }));
    s.line(format!("even-connected: {}", yes_no(h.is_even_connected())));
    s.line(format!("parity obstruction: {}", yes_no(h.parity_obstruction())));
    match coloring {
        Ok(c) => {
            s.line(format!("clique number: {}", c.clique_number));
            s.line(format!("chromatic number: {}", c.chromatic_number));
            let colors: Vec<String> =
                h.observables().zip(&c.colors).map(|(id, col)| format!("{}:{}", h.name(id), col)).collect();
            s.line(format!("coloring: {}", colors.join(" ")));
        }
        Err(e) => s.line(format!("chromatic number: skipped ({e})")),
    }
    s
}

pub fn comparison_section(
    h: &ContextHypergraph,
    products: &SumHistogram,
    additive: &SumHistogram,
    product_prediction: Rational,
    additive_total: Rational,
) -> Section {
    let mut s = Section::new("quantum versus classical");
    let reachable = |hist: &SumHistogram, q: Rational| q.is_integer() && hist.count(q.numer() as i64) > 0;
    s.line(format!(
        "product sum: quantum {}, classical range [{}, {}], quantum value reachable classically: {}",
        product_prediction,
        products.min().map_or(0, |m| m.0),
        products.max().map_or(0, |m| m.0),
        yes_no(reachable(products, product_prediction))
    ));
    let eigen_total = additive_total * Rational::from(h.dim() as i64);
    s.line(format!(
        "additive sum: quantum eigenvalue total {}, classical count({}) = {}, reachable: {}",
        eigen_total,
        eigen_total,
        if eigen_total.is_integer() { additive.count(eigen_total.numer() as i64) } else { 0 },
        yes_no(reachable(additive, eigen_total))
    ));
    s
}

#[derive(Debug)]
pub enum ReportError {
    Enumeration(EnumerationError),
    Quantum(QuantumError),
}

/// Every analysis on one hypergraph.
pub fn full_report(
    label: &str,
    h: &ContextHypergraph,
    sweep: SweepOptions,
    vertex_cap: usize,
    minus_slot: usize,
) -> Result<AnalysisReport, ReportError> {
    let mut report = AnalysisReport::default();
    report.sections.push(configuration_section(label, h));
    let validation = h.validate();
    let faithful = h.verify_faithful_representation().ok();
    report.sections.push(validation_section(h, &validation, faithful.as_ref()));
    report.sections.push(states_section(h, &enumerate_two_valued_states(h)));
    let products = product_sum_histogram(h, sweep).map_err(ReportError::Enumeration)?;
    let additive = additive_histogram(h, sweep).map_err(ReportError::Enumeration)?;
    report.sections.push(products_section(h, &products));
    report.sections.push(additive_section(h, &additive));
    let coloring = chromatic_number(&h.adjacency_graph(), vertex_cap);
    report.sections.push(structure_section(h, coloring.as_ref()));
    if h.labels().is_some() && validation.is_valid() {
        let d = h.dim();
        let mut schemes = vec![EigenvalueScheme::Householder];
        if d >= 2 {
            let custom = (0..d).map(|i| if i < 2 { -Rational::ONE } else { Rational::ONE }).collect();
            schemes.push(EigenvalueScheme::Custom(custom));
        }
        schemes.push(EigenvalueScheme::Primes(first_primes(d)));
        let q = quantum_section(h, &schemes, minus_slot).map_err(ReportError::Quantum)?;
        report.sections.push(q);
        let product_prediction =
            quantum_product_prediction(h, &EigenvalueScheme::Householder).map_err(ReportError::Quantum)?;
        let additive_total = additive_prediction(h, minus_slot).map_err(ReportError::Quantum)?;
        report.sections.push(comparison_section(h, &products, &additive, product_prediction, additive_total));
    } else {
        let mut s = Section::new("quantum predictions");
        s.line("skipped: requires orthogonal, complete vector labels");
        report.sections.push(s);
    }
    Ok(report)
}

pub fn first_primes(n: usize) -> Vec<u64> {
    (2u64..).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).take(n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(first_primes(4), vec![2, 3, 5, 7]);
        assert_eq!(first_primes(0), Vec::<u64>::new());
    }

    #[test]
    fn section_layout() {
        let mut r = AnalysisReport::default();
        let mut a = Section::new("alpha");
        a.line("x: 1");
        r.sections.push(a);
        r.sections.push(Section::new("beta"));
        assert_eq!(r.to_string(), "== alpha\nx: 1\n\n== beta\n");
    }

    #[test]
    fn ceg_report_headlines() {
        let h = ContextHypergraph::preset("ceg18").unwrap();
        let text = full_report("preset ceg18", &h, SweepOptions::default(), 30, 0).unwrap().to_string();
        assert!(text.contains("== two-valued states\ncount: 0\n"));
        assert!(text.contains("min: -7 "));
        assert!(text.contains("    -7: 9216\n"));
        assert!(text.contains("  sum over 9 contexts: -9\n"));
        assert!(text.contains("additive prediction under maximally mixed state: 9/2\n"));
        assert!(text.contains("classical count(18) = 0, reachable: no"));
        assert!(text.contains("chromatic number: 5\n"));
        assert!(text.contains("decomposition of 210: {2, 3, 5, 7}"));
    }
}
