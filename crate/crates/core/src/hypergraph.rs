//! Context hypergraphs: observables grouped into `d`-element contexts, with
//! optional exact vector labels.
//!
//! Text format (UTF-8, line oriented, `#` starts a comment):
//!
//! ```text
//! dim 4
//! vec a1 0 0 1 -1        # labeled observable, rational components
//! obs b                  # unlabeled observable (labels are all-or-nothing)
//! ctx C1 a1 a2 a3 a4
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::SimpleGraph;
use crate::linalg::{inner_product, Matrix, Vector};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown observable `{0}`")]
    UnknownObservable(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("observable `{name}` has {got} components, expected {expected}")]
    WrongVectorDim { name: String, got: usize, expected: usize },
    #[error("context `{name}` has {got} members, expected {expected}")]
    ContextSize { name: String, got: usize, expected: usize },
    #[error("context `{context}` repeats observable `{observable}`")]
    RepeatedMember { context: String, observable: String },
    #[error("observable `{0}` belongs to no context")]
    UnusedObservable(String),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("labels are required for this operation")]
    MissingLabels,
    #[error("labels must be given for all observables or none")]
    PartialLabels,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, HypergraphError>;

/// Dense 0-based index of an observable within its hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObservableId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub name: String,
    pub members: Vec<ObservableId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContextHypergraph {
    dim: usize,
    names: Vec<String>,
    contexts: Vec<Context>,
    labels: Option<Vec<Vector<Rational>>>,
}

impl ContextHypergraph {
    /// Builds and checks the structural invariants. Orthogonality of labels
    /// is not required here; [`validate`](Self::validate) reports on it.
    pub fn new(
        dim: usize,
        names: Vec<String>,
        contexts: Vec<(String, Vec<String>)>,
        labels: Option<Vec<Vector<Rational>>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(HypergraphError::ZeroDimension);
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(HypergraphError::DuplicateName(name.clone()));
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != names.len() {
                return Err(HypergraphError::PartialLabels);
            }
            for (name, v) in names.iter().zip(labels) {
                if v.dim() != dim {
                    return Err(HypergraphError::WrongVectorDim { name: name.clone(), got: v.dim(), expected: dim });
                }
            }
        }
        let mut context_names = BTreeSet::new();
        let mut built = Vec::with_capacity(contexts.len());
        let mut used = vec![false; names.len()];
        for (cname, members) in contexts {
            if !context_names.insert(cname.clone()) {
                return Err(HypergraphError::DuplicateName(cname));
            }
            if members.len() != dim {
                return Err(HypergraphError::ContextSize { name: cname, got: members.len(), expected: dim });
            }
            let mut ids = Vec::with_capacity(dim);
            for m in &members {
                let &i = index.get(m.as_str()).ok_or_else(|| HypergraphError::UnknownObservable(m.clone()))?;
                if ids.contains(&ObservableId(i)) {
                    return Err(HypergraphError::RepeatedMember { context: cname, observable: m.clone() });
                }
                used[i] = true;
                ids.push(ObservableId(i));
            }
            built.push(Context { name: cname, members: ids });
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(HypergraphError::UnusedObservable(names[i].clone()));
        }
        Ok(ContextHypergraph { dim, names, contexts: built, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_observables(&self) -> usize {
        self.names.len()
    }

    pub fn observables(&self) -> impl Iterator<Item = ObservableId> {
        (0..self.names.len()).map(ObservableId)
    }

    pub fn name(&self, id: ObservableId) -> &str {
        &self.names[id.0]
    }

    pub fn id(&self, name: &str) -> Option<ObservableId> {
        self.names.iter().position(|n| n == name).map(ObservableId)
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn labels(&self) -> Option<&[Vector<Rational>]> {
        self.labels.as_deref()
    }

    pub fn label(&self, id: ObservableId) -> Option<&Vector<Rational>> {
        self.labels.as_ref().map(|l| &l[id.0])
    }

    /// Label vectors of a context's members, in member order.
    pub fn context_vectors(&self, context: &Context) -> Result<Vec<Vector<Rational>>> {
        let labels = self.labels.as_ref().ok_or(HypergraphError::MissingLabels)?;
        Ok(context.members.iter().map(|m| labels[m.0].clone()).collect())
    }

    fn context_specs(&self) -> Vec<(String, Vec<String>)> {
        self.contexts
            .iter()
            .map(|c| (c.name.clone(), c.members.iter().map(|&m| self.name(m).to_string()).collect()))
            .collect()
    }

    /// A copy without the context at `index`; observables left in no context
    /// are dropped.
    pub fn without_context(&self, index: usize) -> Result<Self> {
        let mut specs = self.context_specs();
        specs.remove(index);
        let keep: BTreeSet<&str> = specs.iter().flat_map(|(_, m)| m.iter().map(String::as_str)).collect();
        let kept: Vec<usize> = (0..self.names.len()).filter(|&i| keep.contains(self.names[i].as_str())).collect();
        let names = kept.iter().map(|&i| self.names[i].clone()).collect();
        let labels = self.labels.as_ref().map(|l| kept.iter().map(|&i| l[i].clone()).collect());
        ContextHypergraph::new(self.dim, names, specs, labels)
    }

    /// A copy with one extra context; members not yet present are created
    /// (with the given labels, if the hypergraph is labeled).
    pub fn with_context(&self, name: &str, members: &[(&str, Option<Vector<Rational>>)]) -> Result<Self> {
        let mut names = self.names.clone();
        let mut labels = self.labels.clone();
        for (m, v) in members {
            if !names.iter().any(|n| n == m) {
                names.push(m.to_string());
                match (&mut labels, v) {
                    (Some(l), Some(v)) => l.push(v.clone()),
                    (None, None) => {}
                    _ => return Err(HypergraphError::PartialLabels),
                }
            }
        }
        let mut specs = self.context_specs();
        specs.push((name.to_string(), members.iter().map(|(m, _)| m.to_string()).collect()));
        ContextHypergraph::new(self.dim, names, specs, labels)
    }

    /// A copy with the label of `name` replaced.
    pub fn with_label(&self, name: &str, v: Vector<Rational>) -> Result<Self> {
        let id = self.id(name).ok_or_else(|| HypergraphError::UnknownObservable(name.to_string()))?;
        let mut labels = self.labels.clone().ok_or(HypergraphError::MissingLabels)?;
        labels[id.0] = v;
        ContextHypergraph::new(self.dim, self.names.clone(), self.context_specs(), Some(labels))
    }

    /// Bitmask of each context over observable indices (`N ≤ 64`).
    pub fn context_masks(&self) -> Vec<u64> {
        assert!(self.names.len() <= 64, "context masks need at most 64 observables");
        self.contexts.iter().map(|c| c.members.iter().fold(0u64, |m, id| m | (1u64 << id.0))).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut names = Vec::new();
        let mut labels: Vec<Vector<Rational>> = Vec::new();
        let mut unlabeled = 0usize;
        let mut contexts = Vec::new();
        let mut declared: BTreeSet<String> = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| HypergraphError::Parse { line, message };
            let mut tokens = content.split_whitespace();
            let keyword = tokens.next().expect("non-empty line");
            let rest: Vec<&str> = tokens.collect();
            let Some(d) = dim else {
                if keyword != "dim" {
                    return Err(err("expected `dim <d>` first".into()));
                }
                let [value] = rest[..] else {
                    return Err(err("`dim` takes exactly one value".into()));
                };
                let d: usize = value.parse().map_err(|_| err(format!("invalid dimension `{value}`")))?;
                if d == 0 {
                    return Err(HypergraphError::ZeroDimension);
                }
                dim = Some(d);
                continue;
            };
            match keyword {
                "dim" => return Err(err("`dim` given more than once".into())),
                "vec" | "obs" => {
                    let (&name, comps) = rest.split_first().ok_or_else(|| err(format!("`{keyword}` needs a name")))?;
                    if !declared.insert(name.to_string()) {
                        return Err(HypergraphError::DuplicateName(name.to_string()));
                    }
                    if keyword == "vec" {
                        if comps.len() != d {
                            return Err(HypergraphError::WrongVectorDim {
                                name: name.to_string(),
                                got: comps.len(),
                                expected: d,
                            });
                        }
                        let v = comps
                            .iter()
                            .map(|c| c.parse::<Rational>().map_err(|e| err(e.to_string())))
                            .collect::<Result<Vec<_>>>()?;
                        labels.push(Vector::new(v));
                    } else {
                        if !comps.is_empty() {
                            return Err(err("`obs` takes only a name".into()));
                        }
                        unlabeled += 1;
                    }
                    names.push(name.to_string());
                }
                "ctx" => {
                    let (&name, members) = rest.split_first().ok_or_else(|| err("`ctx` needs a name".into()))?;
                    for m in members {
                        if !declared.contains(*m) {
                            return Err(HypergraphError::UnknownObservable(m.to_string()));
                        }
                    }
                    contexts.push((name.to_string(), members.iter().map(|m| m.to_string()).collect()));
                }
                other => return Err(err(format!("unknown keyword `{other}`"))),
            }
        }
        let dim = dim.ok_or(HypergraphError::Parse { line: 0, message: "missing `dim` line".into() })?;
        let labels = match (labels.is_empty(), unlabeled) {
            (_, 0) if !names.is_empty() => Some(labels),
            (true, _) => None,
            _ => return Err(HypergraphError::PartialLabels),
        };
        ContextHypergraph::new(dim, names, contexts, labels)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "dim {}", self.dim).unwrap();
        for (i, name) in self.names.iter().enumerate() {
            match &self.labels {
                Some(labels) => {
                    let comps: Vec<String> = labels[i].components().iter().map(Rational::to_string).collect();
                    writeln!(out, "vec {} {}", name, comps.join(" ")).unwrap();
                }
                None => writeln!(out, "obs {name}").unwrap(),
            }
        }
        for c in &self.contexts {
            let members: Vec<&str> = c.members.iter().map(|&m| self.name(m)).collect();
            writeln!(out, "ctx {} {}", c.name, members.join(" ")).unwrap();
        }
        out
    }

    /// Number of contexts containing each observable.
    pub fn occurrence_degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0; self.names.len()];
        for c in &self.contexts {
            for m in &c.members {
                degrees[m.0] += 1;
            }
        }
        degrees
    }

    /// Every observable occurs in an even number (≥ 2) of contexts.
    pub fn is_even_connected(&self) -> bool {
        self.occurrence_degrees().iter().all(|&d| d >= 2 && d % 2 == 0)
    }

    /// True when no ±1 assignment can give every context product −1: the
    /// product over all contexts squares every observable (even connectivity)
    /// yet an odd number of −1 factors would make it −1.
    pub fn parity_obstruction(&self) -> bool {
        self.is_even_connected() && self.contexts.len() % 2 == 1
    }

    pub fn shares_context(&self, a: ObservableId, b: ObservableId) -> bool {
        self.contexts.iter().any(|c| c.members.contains(&a) && c.members.contains(&b))
    }

    /// Simple graph joining observables that share a context.
    pub fn adjacency_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.names.len());
        for c in &self.contexts {
            for (i, a) in c.members.iter().enumerate() {
                for b in &c.members[i + 1..] {
                    g.add_edge(a.0, b.0);
                }
            }
        }
        g
    }

    pub fn validate(&self) -> ValidationReport {
        let degrees = self.occurrence_degrees();
        let contexts = self
            .contexts
            .iter()
            .map(|c| {
                let Some(labels) = &self.labels else {
                    return ContextCheck { name: c.name.clone(), vectors: None };
                };
                let mut zero_members = Vec::new();
                let mut non_orthogonal = Vec::new();
                for (i, &a) in c.members.iter().enumerate() {
                    if labels[a.0].is_zero() {
                        zero_members.push(a);
                    }
                    for &b in &c.members[i + 1..] {
                        let ip = inner_product(&labels[a.0], &labels[b.0]).expect("labels share the dimension");
                        if !ip.is_zero() {
                            non_orthogonal.push((a, b, ip));
                        }
                    }
                }
                let rows: Vec<Vector<Rational>> = c.members.iter().map(|m| labels[m.0].clone()).collect();
                let determinant = Matrix::from_row_vectors(&rows).expect("context size equals dimension").determinant();
                ContextCheck {
                    name: c.name.clone(),
                    vectors: Some(VectorCheck { zero_members, non_orthogonal, determinant }),
                }
            })
            .collect();
        ValidationReport { contexts, degrees }
    }

    /// Checks that two observables share a context exactly when their labels
    /// are orthogonal.
    pub fn verify_faithful_representation(&self) -> Result<FaithfulnessReport> {
        let labels = self.labels.as_ref().ok_or(HypergraphError::MissingLabels)?;
        let mut counterexamples = Vec::new();
        let n = self.names.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (ObservableId(i), ObservableId(j));
                let orthogonal = inner_product(&labels[i], &labels[j]).expect("labels share the dimension").is_zero();
                let co = self.shares_context(a, b);
                if orthogonal != co {
                    let kind =
                        if co { Violation::CocontextualNotOrthogonal } else { Violation::OrthogonalNotCocontextual };
                    counterexamples.push((a, b, kind));
                }
            }
        }
        Ok(FaithfulnessReport { counterexamples })
    }

    /// Built-in configurations: `ceg18` and a few small demos.
    pub fn preset(name: &str) -> Result<Self> {
        let text = match name {
            "ceg18" => CEG18,
            "std2" => STD2,
            "std3" => STD3,
            "std4" => STD4,
            "pair5" => PAIR5,
            other => return Err(HypergraphError::UnknownPreset(other.to_string())),
        };
        Self::parse(text)
    }

    pub fn preset_names() -> &'static [&'static str] {
        &["ceg18", "std2", "std3", "std4", "pair5"]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    OrthogonalNotCocontextual,
    CocontextualNotOrthogonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub counterexamples: Vec<(ObservableId, ObservableId, Violation)>,
}

impl FaithfulnessReport {
    pub fn is_faithful(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorCheck {
    pub zero_members: Vec<ObservableId>,
    /// Offending pairs with their nonzero inner product.
    pub non_orthogonal: Vec<(ObservableId, ObservableId, Rational)>,
    /// Determinant of the member matrix; nonzero iff the members span.
    pub determinant: Rational,
}

impl VectorCheck {
    pub fn orthogonal(&self) -> bool {
        self.non_orthogonal.is_empty() && self.zero_members.is_empty()
    }

    pub fn complete(&self) -> bool {
        !self.determinant.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContextCheck {
    pub name: String,
    /// `None` for unlabeled hypergraphs.
    pub vectors: Option<VectorCheck>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub contexts: Vec<ContextCheck>,
    pub degrees: Vec<usize>,
}

impl ValidationReport {
    /// All labeled contexts are orthogonal, nonzero and complete.
    pub fn is_valid(&self) -> bool {
        self.contexts.iter().all(|c| c.vectors.as_ref().is_none_or(|v| v.orthogonal() && v.complete()))
    }
}

const CEG18: &str = "\
# 18 observables in 9 contexts, dimension 4
dim 4
vec a1 0 0 1 -1
vec a2 1 -1 0 0
vec a3 1 1 -1 -1
vec a4 1 1 1 1
vec a5 1 -1 1 -1
vec a6 1 0 -1 0
vec a7 0 1 0 -1
vec a8 1 0 1 0
vec a9 1 1 -1 1
vec a10 -1 1 1 1
vec a11 1 1 1 -1
vec a12 1 0 0 1
vec a13 0 1 -1 0
vec a14 0 1 1 0
vec a15 0 0 0 1
vec a16 1 0 0 0
vec a17 0 1 0 0
vec a18 0 0 1 1
ctx C1 a1 a2 a3 a4
ctx C2 a4 a5 a6 a7
ctx C3 a7 a8 a9 a10
ctx C4 a10 a11 a12 a13
ctx C5 a13 a14 a15 a16
ctx C6 a16 a17 a18 a1
ctx C7 a2 a9 a11 a18
ctx C8 a3 a5 a12 a14
ctx C9 a6 a8 a15 a17
";

const STD2: &str = "dim 2\nvec e1 1 0\nvec e2 0 1\nctx C e1 e2\n";

const STD3: &str = "dim 3\nvec e1 1 0 0\nvec e2 0 1 0\nvec e3 0 0 1\nctx C e1 e2 e3\n";

const STD4: &str = "dim 4\nvec e1 1 0 0 0\nvec e2 0 1 0 0\nvec e3 0 0 1 0\nvec e4 0 0 0 1\nctx C e1 e2 e3 e4\n";

// two triads sharing `a`
const PAIR5: &str = "\
dim 3
vec a 1 0 0
vec b 0 1 0
vec c 0 0 1
vec d 0 1 1
vec e 0 1 -1
ctx C1 a b c
ctx C2 a d e
";
