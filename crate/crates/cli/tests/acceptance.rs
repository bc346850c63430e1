//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::panic;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use contextlab_core::enumeration::{
    additive_histogram, additive_sum, enumerate_two_valued_states, product_sum, product_sum_histogram, SweepOptions,
};
use contextlab_core::linalg::context_product;
use contextlab_core::quantum::{
    additive_prediction, context_observable, context_product_operator, context_sum_operator, expectation,
    prime_product_decompose, quantum_product_prediction, spectral_operator,
};
use contextlab_core::{
    ContextHypergraph, DensityMatrix, EigenvalueScheme, HouseholderReflector, Matrix, ObservableId, PmAssignment,
    Rational, Vector,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ceg() -> ContextHypergraph {
    ContextHypergraph::preset("ceg18").unwrap()
}

fn q(n: i128) -> Rational {
    Rational::from_integer(n)
}

fn minus_identity(n: usize) -> Matrix<Rational> {
    Matrix::identity(n).scale(-Rational::ONE)
}

fn values_of(mask: u64, n: usize) -> Vec<i64> {
    (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()
}

fn naive_product_sum(values: &[i64], h: &ContextHypergraph) -> i64 {
    h.contexts().iter().map(|c| c.members.iter().map(|m| values[m.0]).product::<i64>()).sum()
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn c1_householder_example() -> Outcome {
    let u = HouseholderReflector::from_vector(&Vector::from_ints(&[1, 1])).unwrap();
    let expected = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap().scale(-Rational::ONE);
    ensure!(*u.matrix() == expected, "U = {:?}", u.matrix());
    let y = u.reflect(&Vector::from_ints(&[2, 1])).unwrap();
    ensure!(y == Vector::from_ints(&[-1, -2]), "U(2,1) = {y}");
    ensure!(u.matrix().mul_vec(&Vector::from_ints(&[2, 1])).unwrap() == y, "matrix and reflect disagree");
    Ok("U = -[[0,1],[1,0]], U(2,1) = (-1,-2)".into())
}

fn c2_property_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(200);
    let mut tested = 0;
    while tested < 200 {
        let n = rng.gen_range(2..=6);
        let x = Vector::new((0..n).map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))).collect());
        if x.is_zero() {
            continue;
        }
        let u = HouseholderReflector::from_vector(&x).unwrap();
        let m = u.matrix();
        ensure!(m.transpose() == *m, "not symmetric for {x}");
        ensure!(m.checked_mul(m).unwrap() == Matrix::identity(n), "not involutory for {x}");
        ensure!(m.determinant() == -Rational::ONE, "det != -1 for {x}");
        ensure!(m.mul_vec(&x).unwrap() == x.scale(-Rational::ONE), "U x != -x for {x}");
        let v = Vector::new((0..n).map(|_| Rational::from(rng.gen_range(-5i64..=5))).collect());
        let w = v.checked_sub(&x.scale(x.dot(&v).unwrap() / x.norm_sqr())).unwrap();
        ensure!(m.mul_vec(&w).unwrap() == w, "U w != w for {x}");
        tested += 1;
    }
    for n in 2..=6 {
        let basis: Vec<Vector<Rational>> = (0..n).map(|i| Vector::unit(n, i)).collect();
        let p = context_product(&basis).unwrap();
        ensure!(p.complete && p.matrix == minus_identity(n), "standard basis n={n} product != -1");
    }
    Ok("200 random vectors exact; standard bases n=2..6 give -1".into())
}

fn c3_ceg_validation() -> Outcome {
    let h = ceg();
    ensure!(h.contexts().len() == 9 && h.num_observables() == 18, "shape");
    let report = h.validate();
    for c in &report.contexts {
        let v = c.vectors.as_ref().ok_or("unlabeled")?;
        ensure!(v.orthogonal() && v.complete(), "context {} fails", c.name);
    }
    ensure!(report.degrees.iter().all(|&d| d == 2), "degrees {:?}", report.degrees);
    let faithful = h.verify_faithful_representation().unwrap();
    let pairs: Vec<String> =
        faithful.counterexamples.iter().map(|&(a, b, _)| format!("{}-{}", h.name(a), h.name(b))).collect();
    ensure!(
        faithful.is_faithful(),
        "9 orthogonal complete contexts, degrees all 2; faithful representation NOT confirmed: {} counterexamples ({})",
        pairs.len(),
        pairs.join(" ")
    );
    Ok("9 orthogonal complete contexts, degrees all 2, faithful".into())
}

fn c4_ks_emptiness() -> Outcome {
    let h = ceg();
    let start = Instant::now();
    let states = enumerate_two_valued_states(&h);
    let elapsed = start.elapsed();
    ensure!(states.is_empty(), "{} states found", states.len());
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("0 states in {elapsed:.2?}"))
}

fn c5_product_sweep() -> Outcome {
    let h = ceg();
    let start = Instant::now();
    let hist = product_sum_histogram(&h, SweepOptions::default()).unwrap();
    let elapsed = start.elapsed();
    ensure!(hist.total() == 1 << 18, "total {}", hist.total());
    ensure!(hist.count(-7) == 9216, "count(-7) = {}", hist.count(-7));
    ensure!(hist.count(-8) == 0 && hist.count(-9) == 0, "-8/-9 reached");
    let (min, witness) = hist.min().unwrap();
    ensure!(min == -7, "min {min}");
    ensure!(hist.max().unwrap().0 == 9, "max {:?}", hist.max());
    ensure!(naive_product_sum(&values_of(witness.0, 18), &h) == -7, "witness does not evaluate to -7");
    let marked: Vec<ObservableId> =
        ["a2", "a4", "a8", "a11", "a12", "a13", "a18"].iter().map(|n| h.id(n).unwrap()).collect();
    let fig = product_sum(PmAssignment::from_minus_ones(marked), &h);
    ensure!(fig == -7, "marked assignment gives {fig}");
    ensure!(elapsed < Duration::from_secs(2), "took {elapsed:?}");
    Ok(format!("count(-7)=9216, min -7 (witness {:#x}), max 9, marked assignment -7, {elapsed:.2?}", witness.0))
}

fn c6_additive_sweep() -> Outcome {
    let h = ceg();
    let hist = additive_histogram(&h, SweepOptions::default()).unwrap();
    let table = [48620, 43758, 31824, 18564, 8568, 3060, 816, 153, 18, 1];
    for (i, &count) in table.iter().enumerate() {
        let n = 4 * i as i64;
        ensure!(
            hist.count(n) == count && hist.count(-n) == count,
            "count(±{n}) = {}/{}",
            hist.count(n),
            hist.count(-n)
        );
    }
    for k in 0..=18u64 {
        ensure!(hist.count(-36 + 4 * k as i64) == binomial(18, k), "k={k}");
    }
    ensure!(hist.total() == 1 << 18 && hist.counts().len() == 19, "extra sums present");
    ensure!(hist.count(18) == 0, "18 reached");
    for mask in 0u64..1 << 18 {
        let a = PmAssignment(mask);
        let twice: i64 = 2 * values_of(mask, 18).iter().sum::<i64>();
        ensure!(additive_sum(a, &h) == twice, "identity fails at {mask:#x}");
    }
    Ok("table matches C(18,k); count(18)=0; identity holds on all 2^18".into())
}

fn c7_quantum_predictions() -> Outcome {
    let h = ceg();
    for c in h.contexts() {
        ensure!(context_product_operator(&h, c).unwrap() == minus_identity(4), "context {} product != -1", c.name);
    }
    let householder = quantum_product_prediction(&h, &EigenvalueScheme::Householder).unwrap();
    ensure!(householder == q(-9), "householder {householder}");
    let custom = quantum_product_prediction(&h, &"custom:-1,-1,1,1".parse().unwrap()).unwrap();
    ensure!(custom == q(9), "custom {custom}");
    let rho = DensityMatrix::maximally_mixed(4);
    for c in h.contexts() {
        let s = context_sum_operator(&h, c, 0).unwrap();
        ensure!(expectation(&s, &rho).unwrap() == Rational::new(1, 2), "<S_{}> != 1/2", c.name);
    }
    let additive = additive_prediction(&h, 0).unwrap();
    ensure!(additive == Rational::new(9, 2), "additive {additive}");
    let primes = EigenvalueScheme::Primes(vec![2, 3, 5, 7]);
    for c in h.contexts() {
        let det = spectral_operator(&context_observable(&h, c, &primes, 0).unwrap()).determinant();
        ensure!(det == q(210), "det {det} in {}", c.name);
    }
    ensure!(prime_product_decompose(210, &[2, 3, 5, 7]).unwrap() == vec![2, 3, 5, 7], "decomposition");
    Ok("-1 per context; -9; +9; 9/2 with 1/2 each; det 210 = {2,3,5,7}".into())
}

fn c8_parity() -> Outcome {
    let h = ceg();
    ensure!(h.parity_obstruction(), "no obstruction on ceg18");
    let even = h.without_context(8).unwrap();
    ensure!(!even.parity_obstruction(), "8-context variant flagged");
    let odd_connected = h
        .with_context(
            "X",
            &[
                ("x1", Some(Vector::unit(4, 0))),
                ("x2", Some(Vector::unit(4, 1))),
                ("x3", Some(Vector::unit(4, 2))),
                ("x4", Some(Vector::unit(4, 3))),
            ],
        )
        .unwrap();
    ensure!(!odd_connected.parity_obstruction(), "oddly connected variant flagged");
    let hist = product_sum_histogram(&h, SweepOptions::default()).unwrap();
    ensure!(hist.count(-9) == 0, "-9 reached classically");
    Ok("ceg18 obstructed; even/oddly-connected variants not; sweep never reaches -9".into())
}

fn brute_force_states(h: &ContextHypergraph) -> Vec<Vec<ObservableId>> {
    let n = h.num_observables();
    let mut out: Vec<Vec<ObservableId>> = (0u64..1 << n)
        .filter(|&m| h.contexts().iter().all(|c| c.members.iter().filter(|x| m >> x.0 & 1 == 1).count() == 1))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(ObservableId).collect())
        .collect();
    out.sort();
    out
}

fn c9_oracle_equivalence() -> Outcome {
    let h = ceg();
    let mut rng = StdRng::seed_from_u64(10_000);
    for _ in 0..10_000 {
        let mask = rng.gen_range(0u64..1 << 18);
        ensure!(
            product_sum(PmAssignment(mask), &h) == naive_product_sum(&values_of(mask, 18), &h),
            "popcount path differs at {mask:#x}"
        );
    }
    let mut graphs: Vec<ContextHypergraph> =
        ["std2", "std3", "std4", "pair5", "ceg18"].iter().map(|n| ContextHypergraph::preset(n).unwrap()).collect();
    graphs.push(h.without_context(8).unwrap());
    graphs.push(h.without_context(0).unwrap());
    let mut states_seen = 0;
    for g in &graphs {
        ensure!(g.num_observables() <= 20, "graph too large for brute force");
        let mut found: Vec<Vec<ObservableId>> = enumerate_two_valued_states(g).iter().map(|s| s.ones()).collect();
        found.sort();
        states_seen += found.len();
        ensure!(found == brute_force_states(g), "backtracker differs from brute force");
    }
    Ok(format!("10000 assignments agree; {} graphs agree ({} states)", graphs.len(), states_seen))
}

fn c10_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_contextlab");
    let run = |jobs: &str| Command::new(exe).args(["report", "--preset", "ceg18", "--jobs", jobs]).output().unwrap();
    let a = run("1");
    let b = run("1");
    let c = run("8");
    ensure!(a.status.success(), "report failed: {}", String::from_utf8_lossy(&a.stderr));
    ensure!(a.stdout == b.stdout, "differs across runs");
    ensure!(a.stdout == c.stdout, "differs between --jobs 1 and --jobs 8");
    Ok(format!("{} bytes identical across runs and jobs", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("householder worked example", c1_householder_example),
        ("reflector property suite", c2_property_suite),
        ("ceg18 validation", c3_ceg_validation),
        ("no two-valued states", c4_ks_emptiness),
        ("product-sum sweep", c5_product_sweep),
        ("additive sweep", c6_additive_sweep),
        ("quantum predictions", c7_quantum_predictions),
        ("parity obstruction", c8_parity),
        ("oracle equivalence", c9_oracle_equivalence),
        ("report determinism", c10_determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
