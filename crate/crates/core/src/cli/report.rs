//! Structured command output. The JSON form is tagged by `command`; the text
//! form is a short human summary of the same data.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::binomial_ideal::{OverweightReport, PrimalityReport};
use crate::exact_linalg::json;
use crate::fan_geometry::{Cone, Fan};
use crate::toric_jacobian::{CongruenceReport, NonvanishingReport};
use crate::zr_space::{Distance, FiberReport, MetricReport, Preorder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameRow {
    pub kept: Vec<String>,
    pub differentiated: Vec<String>,
    pub rows: Vec<usize>,
    #[serde(with = "json")]
    pub minor: BigInt,
    /// Index of the kept generators in `Z^r`; `None` when infinite.
    #[serde(with = "json::option")]
    pub index: Option<BigInt>,
    pub index_certified: bool,
    pub coprime: bool,
    pub finite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub cone: Cone,
    pub orbit_dim: usize,
    /// Indices of the orbits in the closure of this one.
    pub closure: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Semigroup {
        characteristic: u64,
        truncation: u64,
        generators: Vec<u64>,
        multiplicity: u64,
        conductor: u64,
        gap_count: u64,
        /// `None` when the generators are not those of a plane branch.
        char_exponents: Option<Vec<u64>>,
    },
    PrimeCheck {
        variables: Vec<String>,
        characteristic: u64,
        primality: PrimalityReport,
        overweight: OverweightReport,
    },
    Tame {
        characteristic: u64,
        codim: usize,
        projections: Vec<TameRow>,
        congruence: Option<CongruenceReport>,
        nonvanishing: Option<NonvanishingReport>,
    },
    FanValidate {
        fan: Fan,
        cone_count: usize,
        complete: bool,
        closed_points: usize,
        height: i64,
    },
    FanDual {
        cone: Cone,
        dual: Cone,
    },
    FanHilbert {
        cone: Cone,
        dual: Cone,
        generators: Vec<Vec<i64>>,
    },
    FanSubdivide {
        ray: Vec<i64>,
        fan: Fan,
    },
    FanRefineCheck {
        refines: bool,
    },
    FanOrbits {
        orbits: Vec<OrbitRow>,
        closed_points: Vec<usize>,
    },
    FanHeight {
        height: i64,
    },
    PreorderCompare {
        preorder: Preorder,
        m: Vec<i64>,
        n: Vec<i64>,
        /// `<`, `=` or `>`.
        relation: String,
    },
    PreorderIsOrder {
        preorder: Preorder,
        canonical: Preorder,
        is_order: bool,
    },
    PreorderDominate {
        preorder: Preorder,
        cone: Cone,
        equivalence_face: Cone,
    },
    PreorderThread {
        preorder: Preorder,
        stages: Vec<Cone>,
    },
    PreorderDist {
        metric: String,
        cap: u64,
        distance: Distance,
    },
    CantorFibers(FiberReport),
    MetricCompare(MetricReport),
}

fn vecs(v: &[Vec<i64>]) -> String {
    v.iter().map(|x| format!("({})", x.iter().join(","))).join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Semigroup { characteristic, truncation, generators, multiplicity, conductor, gap_count, char_exponents } => {
                writeln!(f, "characteristic {characteristic}, truncation {truncation}")?;
                writeln!(f, "generators: {}", generators.iter().join(", "))?;
                writeln!(f, "multiplicity: {multiplicity}")?;
                writeln!(f, "conductor: {conductor}")?;
                writeln!(f, "gaps: {gap_count}")?;
                match char_exponents {
                    Some(b) => writeln!(f, "characteristic exponents: {}", b.iter().join(", ")),
                    None => writeln!(f, "characteristic exponents: none (not a plane branch semigroup)"),
                }
            }
            Report::PrimeCheck { variables, characteristic, primality, overweight } => {
                writeln!(f, "variables {}, characteristic {characteristic}", variables.join(" "))?;
                writeln!(f, "lattice rank: {}", primality.rank)?;
                writeln!(f, "saturated: {}", yes(primality.saturated))?;
                writeln!(f, "prime: {}", yes(primality.prime))?;
                if !primality.torsion_divisors.is_empty() {
                    writeln!(f, "torsion: {}", primality.torsion_divisors.iter().join(", "))?;
                }
                if let (Some(w), Some(k)) = (&primality.witness, &primality.witness_order) {
                    writeln!(f, "witness: {w}, {k}·v in L")?;
                }
                if let Some(n) = &primality.note {
                    writeln!(f, "note: {n}")?;
                }
                writeln!(f, "overweight: {}", yes(overweight.overweight))
            }
            Report::Tame { characteristic, codim, projections, congruence, nonvanishing } => {
                writeln!(f, "characteristic {characteristic}, minors of size {codim}")?;
                for t in projections {
                    let index = t.index.as_ref().map_or("infinite".to_string(), |i| i.to_string());
                    writeln!(
                        f,
                        "keep {{{}}}: minor {} on rows {:?}, index {index}{}, finite {}",
                        t.kept.join(","),
                        t.minor,
                        t.rows,
                        if t.index_certified { " (= |minor|)" } else { "" },
                        yes(t.finite),
                    )?;
                }
                if projections.is_empty() {
                    writeln!(f, "no minor is prime to {characteristic}")?;
                }
                if let Some(c) = congruence {
                    writeln!(f, "congruence: {} at {} points, minor {}", if c.holds { "holds" } else { "FAILS" }, c.trials, c.minor)?;
                }
                if let Some(n) = nonvanishing {
                    writeln!(f, "deformed minor: zero at {} of {} points of a field of size {}", n.zero_samples, n.trials, n.field_size)?;
                }
                Ok(())
            }
            Report::FanValidate { fan, cone_count, complete, closed_points, height } => {
                writeln!(f, "a fan in rank {} with {} cones", fan.ambient_rank(), cone_count)?;
                writeln!(f, "rays: {}", vecs(&fan.rays()))?;
                writeln!(f, "maximal: {}", fan.maximal_cones().iter().join(" "))?;
                writeln!(f, "complete: {}", yes(*complete))?;
                writeln!(f, "closed points: {closed_points}")?;
                writeln!(f, "height: {height}")
            }
            Report::FanDual { cone, dual } => writeln!(f, "{cone}\ndual: {dual}"),
            Report::FanHilbert { cone, dual, generators } => {
                writeln!(f, "{cone}\ndual: {dual}\ngenerators: {}", vecs(generators))
            }
            Report::FanSubdivide { ray, fan } => {
                writeln!(f, "subdivided at ({})", ray.iter().join(","))?;
                writeln!(f, "rays: {}", vecs(&fan.rays()))?;
                writeln!(f, "maximal: {}", fan.maximal_cones().iter().join(" "))
            }
            Report::FanRefineCheck { refines } => writeln!(f, "refines: {}", yes(*refines)),
            Report::FanOrbits { orbits, closed_points } => {
                for (i, o) in orbits.iter().enumerate() {
                    writeln!(f, "{i}: {} orbit dim {}, closure {:?}", o.cone, o.orbit_dim, o.closure)?;
                }
                writeln!(f, "closed points: {closed_points:?}")
            }
            Report::FanHeight { height } => writeln!(f, "{height}"),
            Report::PreorderCompare { preorder, m, n, relation } => {
                writeln!(f, "({}) {relation} ({}) under {preorder}", m.iter().join(","), n.iter().join(","))
            }
            Report::PreorderIsOrder { preorder, canonical, is_order } => {
                writeln!(f, "{preorder}: order {}, canonical {canonical}", yes(*is_order))
            }
            Report::PreorderDominate { preorder, cone, equivalence_face } => {
                writeln!(f, "{preorder} dominates {cone}\nequivalence face: {equivalence_face}")
            }
            Report::PreorderThread { preorder, stages } => {
                writeln!(f, "thread of {preorder}")?;
                for (k, c) in stages.iter().enumerate() {
                    writeln!(f, "  stage {k}: {c}")?;
                }
                Ok(())
            }
            Report::PreorderDist { metric, distance, .. } => writeln!(f, "{metric} = {distance}"),
            Report::CantorFibers(r) => {
                for row in &r.rows {
                    writeln!(f, "stage {} {}: {} preimages", row.stage, row.closed_point, row.fiber)?;
                }
                writeln!(f, "every closed point splits: {}", yes(r.all_split))
            }
            Report::MetricCompare(r) => {
                writeln!(f, "{} samples, seed {}, height cap {}, radius cap {}", r.samples.len(), r.seed, r.height_cap, r.radius_cap)?;
                writeln!(f, "{:<28} {:>6}  d̃ range", "d", "pairs")?;
                for e in &r.envelopes {
                    writeln!(f, "{:<28} {:>6}  {} .. {}", e.d.to_string(), e.count, e.dtilde_min, e.dtilde_max)?;
                }
                Ok(())
            }
        }
    }
}
