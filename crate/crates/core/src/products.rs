//! Distinguishing numbers of lexicographic products and X-joins.
//!
//! Both results assume every automorphism of the join is natural, i.e. maps
//! fibers onto fibers. That hypothesis is checked by counting: the natural
//! automorphisms number `Σ_{α ∈ Aut(X)} Π_x |Iso(Y_x, Y_{α(x)})|`, and all of
//! them are natural iff this equals `|Aut(Z)|`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::coloring::{Coloring, GraphSymmetry, ORACLE_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{lexicographic_product, x_join, Graph};
use crate::group::{automorphism_group, count_automorphisms, count_isomorphisms};
use crate::index::{Backend, BackendChoice, IndexValue, Mode, Rule};

/// Largest join on which the lexicographic result is cross-checked directly.
pub const DIRECT_CHECK_VERTICES: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinAnalysis {
    pub natural_count: BigUint,
    pub full_aut_order: BigUint,
    pub all_natural: bool,
}

/// Compares the natural automorphism count of `z` with `|Aut(z)|`.
///
/// `z` must be the X-join of `fibers` over `x`.
pub fn naturality_check(z: &Graph, x: &Graph, fibers: &[Graph]) -> Result<JoinAnalysis> {
    if x_join(x, fibers)? != *z {
        return Err(Error::Fiber(
            "graph is not the X-join of the given base and fibers".into(),
        ));
    }
    let classes = FiberClasses::new(fibers)?;
    let mut natural_count = BigUint::zero();
    for alpha in automorphism_group(x)?.elements() {
        let mut term = BigUint::from(1u32);
        for u in 0..x.vertex_count() {
            term *= classes.isomorphisms(u, alpha.image(u));
            if term.is_zero() {
                break;
            }
        }
        natural_count += term;
    }
    let full_aut_order = count_automorphisms(z)?;
    Ok(JoinAnalysis {
        all_natural: natural_count == full_aut_order,
        natural_count,
        full_aut_order,
    })
}

/// Fibers grouped into isomorphism classes, with `|Iso|` between class members.
struct FiberClasses {
    class_of: Vec<usize>,
    /// `|Aut|` of each class representative, which is `|Iso|` within a class.
    aut_order: Vec<BigUint>,
    representatives: Vec<usize>,
}

impl FiberClasses {
    fn new(fibers: &[Graph]) -> Result<Self> {
        let mut class_of = Vec::with_capacity(fibers.len());
        let mut representatives: Vec<usize> = Vec::new();
        let mut aut_order = Vec::new();
        for (u, f) in fibers.iter().enumerate() {
            let mut found = None;
            for (c, &r) in representatives.iter().enumerate() {
                if !count_isomorphisms(&fibers[r], f)?.is_zero() {
                    found = Some(c);
                    break;
                }
            }
            let c = match found {
                Some(c) => c,
                None => {
                    representatives.push(u);
                    aut_order.push(count_automorphisms(f)?);
                    representatives.len() - 1
                }
            };
            class_of.push(c);
        }
        Ok(FiberClasses {
            class_of,
            aut_order,
            representatives,
        })
    }

    fn isomorphic(&self, u: usize, w: usize) -> bool {
        self.class_of[u] == self.class_of[w]
    }

    fn isomorphisms(&self, u: usize, w: usize) -> BigUint {
        if self.isomorphic(u, w) {
            self.aut_order[self.class_of[u]].clone()
        } else {
            BigUint::zero()
        }
    }
}

/// D(X ∘ Y) with its provenance.
#[derive(Debug, Clone)]
pub struct ProductNumber {
    /// The least `k` with `Φ_k(Y) ≥ D(X)` when all automorphisms are natural,
    /// otherwise the distinguishing number of the product computed directly.
    pub value: IndexValue,
    pub analysis: JoinAnalysis,
    /// True when naturality failed and the value is the direct computation.
    pub fallback: bool,
    /// Direct D(X ∘ Y), computed when the product has at most
    /// [`DIRECT_CHECK_VERTICES`] vertices.
    pub direct: Option<BigUint>,
}

pub fn d_lexicographic(x: &Graph, y: &Graph) -> Result<ProductNumber> {
    let z = lexicographic_product(x, y);
    let analysis = naturality_check(&z, x, &vec![y.clone(); x.vertex_count()])?;
    let direct = || -> Result<IndexValue> { GraphSymmetry::new(&z)?.distinguishing_number() };
    if !analysis.all_natural {
        let value = direct()?;
        return Ok(ProductNumber {
            direct: Some(value.value.clone()),
            value,
            analysis,
            fallback: true,
        });
    }
    let dx = GraphSymmetry::new(x)?.distinguishing_number()?.value;
    let fiber = GraphSymmetry::new(y)?;
    let mut k = 1;
    loop {
        // Φ_k(Y) ≥ C(k, |Y|) grows without bound, so this terminates
        if fiber.count_phi(k, Mode::AtMost, BackendChoice::Auto)?.value >= dx {
            break;
        }
        k += 1;
    }
    let direct = if z.vertex_count() <= DIRECT_CHECK_VERTICES {
        Some(direct()?.value)
    } else {
        None
    };
    Ok(ProductNumber {
        value: IndexValue::new(k, Backend::ClosedForm(Rule::LexicographicProduct)),
        analysis,
        fallback: false,
        direct,
    })
}

/// The quantities behind one candidate coloring `f` of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XJoinBoundInput {
    /// A distinguishing coloring of the base with D(X) colors.
    pub f: Coloring,
    /// `C(x)`: `x` together with the base vertices of another color whose
    /// fiber is isomorphic to `Y_x`.
    pub classes: Vec<Vec<usize>>,
    /// `D_x = min{k : Φ_k(Y_x) ≥ |C(x)|}`.
    pub dx: Vec<usize>,
    /// `d_f = max_x D_x`.
    pub df: usize,
}

#[derive(Debug, Clone)]
pub struct XJoinBound {
    /// `min{d_f : f ∈ S}`.
    pub bound: usize,
    /// The minimizing coloring and its data.
    pub witness: XJoinBoundInput,
    /// Number of non-equivalent distinguishing D(X)-colorings of the base.
    pub candidates: usize,
    pub analysis: JoinAnalysis,
    /// D(Z) computed directly, when within the counting bounds.
    pub direct: Option<IndexValue>,
}

/// Upper bound `min{d_f}` on D(Z) for an X-join whose automorphisms are all natural.
pub fn d_xjoin_upper_bound(x: &Graph, fibers: &[Graph]) -> Result<XJoinBound> {
    let z = x_join(x, fibers)?;
    let analysis = naturality_check(&z, x, fibers)?;
    if !analysis.all_natural {
        return Err(Error::NotNatural {
            natural: analysis.natural_count.to_string(),
            total: analysis.full_aut_order.to_string(),
        });
    }
    let base = GraphSymmetry::new(x)?;
    let d = base
        .distinguishing_number()?
        .value
        .to_usize()
        .ok_or_else(|| Error::Internal("distinguishing number overflow".into()))?;
    let candidates = distinguishing_representatives(&base, d)?;
    let classes = FiberClasses::new(fibers)?;
    let mut fiber_counts = FiberCounts::new(fibers, &classes)?;

    let mut best: Option<XJoinBoundInput> = None;
    for f in &candidates {
        let input = bound_input(f, &classes, &mut fiber_counts)?;
        if best.as_ref().is_none_or(|b| input.df < b.df) {
            best = Some(input);
        }
    }
    let witness = best.ok_or_else(|| Error::Internal("no distinguishing base coloring".into()))?;

    let direct = match GraphSymmetry::new(&z).and_then(|s| s.distinguishing_number()) {
        Ok(v) => Some(v),
        Err(e) if e.is_resource_bound() => None,
        Err(e) => return Err(e),
    };
    if let Some(direct) = &direct {
        if direct.value > BigUint::from(witness.df) {
            return Err(Error::Internal(format!(
                "D(Z) = {} exceeds the X-join bound {}",
                direct.value, witness.df
            )));
        }
    }
    Ok(XJoinBound {
        bound: witness.df,
        witness,
        candidates: candidates.len(),
        analysis,
        direct,
    })
}

fn bound_input(
    f: &Coloring,
    classes: &FiberClasses,
    counts: &mut FiberCounts,
) -> Result<XJoinBoundInput> {
    let n = f.labels().len();
    let mut cells = Vec::with_capacity(n);
    let mut dx = Vec::with_capacity(n);
    for u in 0..n {
        let cell: Vec<usize> = (0..n)
            .filter(|&w| w == u || (f.color(w) != f.color(u) && classes.isomorphic(u, w)))
            .collect();
        dx.push(counts.least_colors(classes.class_of[u], cell.len())?);
        cells.push(cell);
    }
    Ok(XJoinBoundInput {
        f: f.clone(),
        df: dx.iter().copied().max().unwrap_or(0),
        classes: cells,
        dx,
    })
}

/// Φ_k of each fiber class, computed on demand.
struct FiberCounts {
    symmetries: Vec<GraphSymmetry>,
    cache: HashMap<(usize, usize), BigUint>,
}

impl FiberCounts {
    fn new(fibers: &[Graph], classes: &FiberClasses) -> Result<Self> {
        let symmetries = classes
            .representatives
            .iter()
            .map(|&r| GraphSymmetry::new(&fibers[r]))
            .collect::<Result<_>>()?;
        Ok(FiberCounts {
            symmetries,
            cache: HashMap::new(),
        })
    }

    /// `min{k : Φ_k(Y) ≥ target}` for fiber class `class`.
    fn least_colors(&mut self, class: usize, target: usize) -> Result<usize> {
        let target = BigUint::from(target);
        let mut k = 1;
        loop {
            let phi = match self.cache.get(&(class, k)) {
                Some(v) => v.clone(),
                None => {
                    let v = self.symmetries[class]
                        .count_phi(k, Mode::AtMost, BackendChoice::Auto)?
                        .value;
                    self.cache.insert((class, k), v.clone());
                    v
                }
            };
            if phi >= target {
                return Ok(k);
            }
            k += 1;
        }
    }
}

/// One representative (the lexicographically least labels) of every orbit of
/// distinguishing colorings of the base using colors `1..=d`.
fn distinguishing_representatives(base: &GraphSymmetry, d: usize) -> Result<Vec<Coloring>> {
    let n = base.graph().vertex_count();
    let total = (d as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= ORACLE_LIMIT)
        .ok_or_else(|| {
            Error::size_bound("base colorings D(X)^|X|", format!("{d}^{n}"), ORACLE_LIMIT)
        })?;
    let group = base.group();
    let mut reps = Vec::new();
    let mut labels = vec![1u32; n];
    for code in 0..total {
        let mut rest = code;
        for l in labels.iter_mut() {
            *l = (rest % d as u64) as u32 + 1;
            rest /= d as u64;
        }
        let c = Coloring::new(labels.clone(), d as u32)?;
        let mut keep = true;
        for p in group.non_identity() {
            if c.is_preserved_by(p) {
                keep = false;
                break;
            }
            // image under p: label of v moves to p(v)
            let mut image = vec![0u32; n];
            for v in 0..n {
                image[p.image(v)] = labels[v];
            }
            if image < labels {
                keep = false;
                break;
            }
        }
        if keep {
            reps.push(c);
        }
    }
    Ok(reps)
}
