//! Cross-module invariant checks, run as one suite.
//!
//! Each check compares two independent computations of the same quantity
//! over a fixed, deterministic corpus of small graphs.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coloring::{closed_form_phi, GraphSymmetry};
use crate::combinat::{binomial, factorial, stirling2};
use crate::error::Result;
use crate::graph::{lexicographic_product, make_family, FamilySpec, Graph};
use crate::group::{count_automorphisms, PermutationGroup};
use crate::index::{BackendChoice, Mode};
use crate::partition::{
    closed_form_psi, PartitionCensus, PartitionFamily, RgsWalker, SetPartition,
};

#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: &'static str,
    /// Number of instances checked.
    pub cases: usize,
    /// One line per failing instance.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

type Check = fn(&mut Tally) -> Result<()>;

const CHECKS: [(&str, Check); 12] = [
    (
        "threshold formula matches definition (all labeled graphs, n <= 6)",
        threshold_formula,
    ),
    (
        "twin pair iff theta >= n (all labeled graphs, 2 <= n <= 6)",
        twin_obstruction,
    ),
    ("oracle and Moebius backends agree", backend_agreement),
    ("phi_n = n!/|Aut|", all_distinct_colors),
    ("phi_k = k!S(n,k)/|Aut| for k >= theta", threshold_regime),
    ("Phi_k = sum_i C(k,i) phi_i", binomial_round_trip),
    ("Burnside orbit count matches enumeration", burnside),
    ("Xi_k <= Psi_k <= Pi_k and psi_n = 1", partition_ordering),
    (
        "Psi_k(P_n) = Pi_k(P_n) - Pi_k(P_m) - Xi_k(P_m), m = ceil(n/2), 2 <= n <= 10",
        path_identity,
    ),
    (
        "closed psi_2(P_n) matches enumeration, n <= 12",
        path_two_cells,
    ),
    (
        "D(X o Y) from Phi_k(Y) matches direct computation",
        lexicographic,
    ),
    ("closed-form Phi/phi rules match counting", closed_forms),
];

/// Runs every check; outcomes come back in a fixed order.
pub fn run_properties() -> Vec<PropertyOutcome> {
    CHECKS
        .par_iter()
        .map(|&(name, check)| {
            let start = Instant::now();
            let mut tally = Tally::new();
            if let Err(e) = check(&mut tally) {
                tally.failures.push(format!("error: {e}"));
            }
            PropertyOutcome {
                name,
                cases: tally.cases,
                failures: tally.failures,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

/// Every labeled graph on `n` vertices (2^(n(n-1)/2) of them).
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("pairs are in range")
    })
}

fn family(spec: &str) -> Result<(FamilySpec, Graph)> {
    let spec: FamilySpec = spec.parse()?;
    let g = make_family(&spec)?;
    Ok((spec, g))
}

/// Small named graphs used by most checks.
fn corpus() -> Result<Vec<(FamilySpec, Graph)>> {
    let mut specs: Vec<String> = Vec::new();
    specs.extend((1..=7).map(|n| format!("path:{n}")));
    specs.extend((3..=7).map(|n| format!("cycle:{n}")));
    specs.extend((1..=5).map(|n| format!("complete:{n}")));
    specs.extend((1..=4).map(|n| format!("empty:{n}")));
    specs.extend(["biclique:2,3", "biclique:3,3", "biclique:1,4", "kneser:5,2"].map(String::from));
    specs.iter().map(|s| family(s)).collect()
}

/// Threshold straight from its definition: one more than the largest cell
/// count of a partition fixed cellwise by a non-identity automorphism.
fn threshold_by_definition(group: &PermutationGroup) -> usize {
    let n = group.degree();
    let mut walker = RgsWalker::new(n, n);
    let mut worst = 0;
    while let Some(rgs) = walker.next_rgs() {
        let p = SetPartition::from_labels(rgs);
        let r = p.cell_count();
        if r > worst && group.non_identity().any(|g| p.is_fixed_cellwise_by(g)) {
            worst = r;
        }
    }
    worst + 1
}

fn threshold_formula(t: &mut Tally) -> Result<()> {
    for n in 1..=6 {
        for g in labeled_graphs(n) {
            let sym = GraphSymmetry::new(&g)?;
            let formula = sym.threshold().value;
            let direct = threshold_by_definition(sym.group());
            t.check(formula == BigUint::from(direct), || {
                format!("{g:?}: formula {formula}, definition {direct}")
            });
        }
    }
    Ok(())
}

fn twin_obstruction(t: &mut Tally) -> Result<()> {
    for n in 2..=6 {
        for g in labeled_graphs(n) {
            let theta = GraphSymmetry::new(&g)?.threshold().value;
            let twins = g.twin_obstruction().is_some();
            t.check(twins == (theta >= BigUint::from(n)), || {
                format!("{g:?}: twins {twins}, theta {theta}")
            });
        }
    }
    Ok(())
}

fn backend_agreement(t: &mut Tally) -> Result<()> {
    let mut graphs: Vec<Graph> = labeled_graphs(4).collect();
    graphs.extend(corpus()?.into_iter().map(|(_, g)| g));
    for g in &graphs {
        let sym = GraphSymmetry::new(g)?;
        for k in 1..=3 {
            for mode in [Mode::AtMost, Mode::Exact] {
                let oracle = sym.oracle_phi(k, mode)?;
                let moebius = sym.moebius_phi(k, mode)?;
                t.check(oracle == moebius, || {
                    format!("{g:?} k={k} {mode:?}: oracle {oracle}, Moebius {moebius}")
                });
            }
        }
    }
    Ok(())
}

fn all_distinct_colors(t: &mut Tally) -> Result<()> {
    for (spec, g) in corpus()? {
        let n = g.vertex_count();
        let sym = GraphSymmetry::new(&g)?;
        let counted = sym.moebius_phi(n, Mode::Exact)?;
        let expected = factorial(n) / BigUint::from(sym.group().order());
        t.check(counted == expected, || {
            format!("{spec}: phi_n {counted}, n!/|Aut| {expected}")
        });
    }
    Ok(())
}

fn threshold_regime(t: &mut Tally) -> Result<()> {
    for (spec, g) in corpus()? {
        let n = g.vertex_count();
        let sym = GraphSymmetry::new(&g)?;
        let theta = sym.threshold().value.to_usize().unwrap_or(usize::MAX);
        for k in theta.max(1)..=n {
            let counted = sym.moebius_phi(k, Mode::Exact)?;
            let expected = factorial(k) * stirling2(n, k) / BigUint::from(sym.group().order());
            t.check(counted == expected, || {
                format!("{spec} k={k}: phi_k {counted}, formula {expected}")
            });
        }
    }
    Ok(())
}

fn binomial_round_trip(t: &mut Tally) -> Result<()> {
    for (spec, g) in corpus()? {
        let sym = GraphSymmetry::new(&g)?;
        let exact: Vec<BigUint> = (1..=6)
            .map(|k| sym.moebius_phi(k, Mode::Exact))
            .collect::<Result<_>>()?;
        for k in 1..=6 {
            let upper = sym.moebius_phi(k, Mode::AtMost)?;
            let sum: BigUint = (1..=k).map(|i| binomial(k, i) * &exact[i - 1]).sum();
            t.check(upper == sum, || {
                format!("{spec} k={k}: Phi {upper}, sum {sum}")
            });
        }
    }
    Ok(())
}

/// Orbits of all `k^n` colorings: lex-least representatives counted
/// directly, against the average number of fixed colorings.
fn burnside(t: &mut Tally) -> Result<()> {
    let specs = (2..=8)
        .map(|n| format!("path:{n}"))
        .chain((3..=8).map(|n| format!("cycle:{n}")));
    for spec in specs {
        let (_, g) = family(&spec)?;
        let sym = GraphSymmetry::new(&g)?;
        let group = sym.group();
        let n = g.vertex_count();
        for k in 2..=3u32 {
            let fixed: BigUint = group
                .elements()
                .iter()
                .map(|p| BigUint::from(k).pow(p.cycle_count() as u32))
                .sum();
            let by_burnside = fixed / BigUint::from(group.order());
            let mut reps = 0u64;
            let mut colors = vec![0u32; n];
            loop {
                let least = group.elements().iter().all(|p| {
                    let mut image = vec![0u32; n];
                    for (v, &c) in colors.iter().enumerate() {
                        image[p.image(v)] = c;
                    }
                    image >= colors
                });
                if least {
                    reps += 1;
                }
                let Some(i) = colors.iter().rposition(|&c| c + 1 < k) else {
                    break;
                };
                colors[i] += 1;
                colors[i + 1..].fill(0);
            }
            t.check(by_burnside == BigUint::from(reps), || {
                format!("{spec} k={k}: Burnside {by_burnside}, enumerated {reps}")
            });
        }
    }
    Ok(())
}

fn partition_ordering(t: &mut Tally) -> Result<()> {
    for (spec, g) in corpus()? {
        let n = g.vertex_count();
        let census = PartitionCensus::for_graph(&g, n)?;
        for k in 1..=n {
            let xi = census.at_most(PartitionFamily::Xi, k);
            let psi = census.at_most(PartitionFamily::Psi, k);
            let pi = census.at_most(PartitionFamily::Pi, k);
            t.check(xi <= psi && psi <= pi, || {
                format!("{spec} k={k}: Xi {xi}, Psi {psi}, Pi {pi}")
            });
        }
        let top = census.exact(PartitionFamily::Psi, n);
        t.check(top == 1, || format!("{spec}: psi_n = {top}"));
    }
    Ok(())
}

fn path_identity(t: &mut Tally) -> Result<()> {
    let census = |n: usize| -> Result<PartitionCensus> {
        PartitionCensus::for_graph(&family(&format!("path:{n}"))?.1, n)
    };
    for n in 2..=10 {
        let whole = census(n)?;
        let m = n.div_ceil(2);
        let half = census(m)?;
        for k in 2..=10 {
            let lhs = whole.at_most(PartitionFamily::Psi, k) as i128;
            let rhs = whole.at_most(PartitionFamily::Pi, k) as i128
                - half.at_most(PartitionFamily::Pi, k) as i128
                - half.at_most(PartitionFamily::Xi, k) as i128;
            t.check(lhs == rhs, || {
                format!("n={n} k={k}: Psi {lhs}, right side {rhs}")
            });
        }
    }
    Ok(())
}

fn path_two_cells(t: &mut Tally) -> Result<()> {
    for n in 2..=12 {
        let (spec, g) = family(&format!("path:{n}"))?;
        let closed = closed_form_psi(&spec, 2)?.value;
        let counted = PartitionCensus::for_graph(&g, 2)?.exact(PartitionFamily::Psi, 2);
        t.check(closed == BigUint::from(counted), || {
            format!("{spec}: closed {closed}, enumerated {counted}")
        });
    }
    Ok(())
}

fn lexicographic(t: &mut Tally) -> Result<()> {
    let pairs = [
        ("path:3", "path:2"),
        ("path:3", "complete:2"),
        ("path:4", "path:3"),
        ("cycle:4", "path:3"),
        ("cycle:5", "path:2"),
        ("path:2", "path:3"),
        ("complete:3", "path:3"),
        ("empty:2", "path:4"),
    ];
    for (a, b) in pairs {
        let (_, x) = family(a)?;
        let (_, y) = family(b)?;
        let product = crate::products::d_lexicographic(&x, &y)?;
        let z = lexicographic_product(&x, &y);
        let direct = GraphSymmetry::new(&z)?.distinguishing_number()?.value;
        t.check(product.value.value == direct, || {
            format!(
                "{a} o {b}: product rule {}, direct {direct}",
                product.value.value
            )
        });
        let auts = count_automorphisms(&z)?;
        let natural = product.analysis.natural_count.clone();
        t.check(natural <= auts && !natural.is_zero(), || {
            format!("{a} o {b}: {natural} natural of {auts}")
        });
    }
    Ok(())
}

fn closed_forms(t: &mut Tally) -> Result<()> {
    let specs = (2..=7)
        .map(|n| format!("path:{n}"))
        .chain((1..=5).map(|n| format!("complete:{n}")))
        .chain((1..=4).map(|n| format!("empty:{n}")))
        .chain((1..=3).map(|n| format!("biclique:{n},{n}")));
    for s in specs {
        let (spec, g) = family(&s)?;
        let sym = GraphSymmetry::new(&g)?;
        for k in 1..=6 {
            for mode in [Mode::AtMost, Mode::Exact] {
                let closed = closed_form_phi(&spec, k, mode)?.value;
                let counted = sym.count_phi(k, mode, BackendChoice::Moebius)?.value;
                t.check(closed == counted, || {
                    format!("{spec} k={k} {mode:?}: closed {closed}, counted {counted}")
                });
            }
        }
    }
    Ok(())
}
