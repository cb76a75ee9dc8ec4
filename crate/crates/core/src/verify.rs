//! Corpus-wide consistency checks with a pass/fail tally.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{self, CorpusSpec};
use crate::error::Result;
use crate::intnf::{self, minor_gcd};
use crate::lattice2::AffineLattice2;
use crate::par::{self, Execution};
use crate::polygon::{InteriorClassification, LatticePolygon};
use crate::sampling;
use crate::severi::{self, build_profile};

/// Sup-norm of functionals scanned by the brute-force width check.
pub const WIDTH_ORACLE_NORM: i64 = 25;
/// Offsets of the random affine maps in the invariance trials.
pub const TRIAL_OFFSET_BOUND: i64 = 5;

/// Check names in report order.
pub const CHECKS: [&str; 12] = [
    "pick_z2",
    "pick_m0",
    "width_oracle",
    "empty_interior_classification",
    "count_agreement",
    "invariant_factors",
    "rotation_duality",
    "width_one_rank",
    "interior_monotonicity",
    "signature",
    "component_flags",
    "unimodular_invariance",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub corpus: CorpusSpec,
    /// Random unimodular-invariance trials over the corpus.
    pub trials: usize,
    pub seed: u64,
    pub execution: Execution,
    /// Reports one deliberate failure; exercises the failure path.
    #[doc(hidden)]
    pub inject_fault: bool,
}

impl VerifyOptions {
    pub fn new(max_coordinate: i64) -> Self {
        VerifyOptions {
            corpus: CorpusSpec::new(max_coordinate),
            trials: 100,
            seed: 0,
            execution: Execution::default(),
            inject_fault: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub polygon: LatticePolygon,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub polygons: usize,
    pub trials: usize,
    pub checks: BTreeMap<String, Tally>,
    /// In corpus order, trials last.
    pub failures: Vec<Failure>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "polygons: {}  trials: {}", self.polygons, self.trials)?;
        writeln!(f, "{:<32}{:>10}{:>10}", "check", "passed", "failed")?;
        for name in CHECKS {
            let t = self.checks.get(name).copied().unwrap_or_default();
            writeln!(f, "{name:<32}{:>10}{:>10}", t.passed, t.failed)?;
        }
        for fail in self.failures.iter().take(20) {
            writeln!(
                f,
                "FAIL {} {:?}: {}",
                fail.check,
                fail.polygon.vertices(),
                fail.detail
            )?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "... {} more failures", self.failures.len() - 20)?;
        }
        write!(f, "{}", if self.all_passed() { "PASS" } else { "FAIL" })
    }
}

type Outcome = (&'static str, std::result::Result<(), String>);

fn check(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    (name, if ok { Ok(()) } else { Err(detail()) })
}

fn run_all(name: &'static str, f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    f().unwrap_or_else(|e| (name, Err(e.to_string())))
}

/// Every per-polygon check.
pub fn check_polygon(p: &LatticePolygon) -> Vec<(&'static str, std::result::Result<(), String>)> {
    let profile = match build_profile(p) {
        Ok(profile) => profile,
        Err(e) => return vec![("rotation_duality", Err(e.to_string()))],
    };
    let m0 = profile.m0;
    let mut out = vec![check("rotation_duality", true, String::new)];

    out.push(run_all("pick_z2", || {
        let ok = p.verify_pick(&AffineLattice2::Z2)?;
        Ok(check("pick_z2", ok, || "Pick identity fails over Z2".into()))
    }));
    out.push(run_all("pick_m0", || {
        let ok = p.verify_pick(&m0)?;
        Ok(check("pick_m0", ok, || "Pick identity fails over M0".into()))
    }));

    let normalized = p.normalize_to_lattice(&m0).map(|(q, _)| q);
    out.push(run_all("width_oracle", || {
        let q = normalized.clone()?;
        for poly in [p, &q] {
            let fast = poly.lattice_width_z2();
            let slow = poly.lattice_width_brute_force(WIDTH_ORACLE_NORM);
            if fast != slow {
                return Ok(check("width_oracle", false, || {
                    format!("width {fast:?} vs brute force {slow:?}")
                }));
            }
        }
        Ok(check("width_oracle", true, String::new))
    }));

    out.push(run_all("empty_interior_classification", || {
        for lattice in [AffineLattice2::Z2, m0] {
            let class = p.classify_interior_empty(&lattice)?;
            let empty = p.interior_points_in_lattice(&lattice).is_empty();
            if empty != (class != InteriorClassification::NonEmptyInterior) {
                return Ok(check("empty_interior_classification", false, || {
                    format!("classification {class:?} over {lattice:?}")
                }));
            }
        }
        Ok(check("empty_interior_classification", true, String::new))
    }));

    out.push(run_all("count_agreement", || {
        let formula = severi::count_components(p)?;
        let oracle = severi::count_components_oracle(p)?;
        Ok(check("count_agreement", formula == oracle, || {
            format!("formula {formula}, oracle {oracle}")
        }))
    }));

    out.push(run_all("invariant_factors", || {
        let a = &profile.a_delta;
        let factors = intnf::invariant_factors(a)?;
        let idx = profile.index as i128;
        let ok = factors == [1, idx] && minor_gcd(a, 1)? == 1 && minor_gcd(a, 2)? == idx;
        Ok(check("invariant_factors", ok, || {
            format!("factors {factors:?}, index {idx}")
        }))
    }));

    out.push(run_all("width_one_rank", || {
        let by_rank = severi::width_one_by_rank(&profile)?.is_some();
        let width = normalized.clone()?.lattice_width_z2().width;
        Ok(check("width_one_rank", by_rank == (width == 1), || {
            format!("rank criterion {by_rank}, M0 width {width}")
        }))
    }));

    let components = severi::enumerate_components(p);
    out.push(run_all("interior_monotonicity", || {
        let comps = components.clone()?;
        let base = p.interior_points_in_lattice(&m0).len();
        let ok = comps.iter().all(|c| c.interior_points >= base)
            && comps
                .iter()
                .all(|c| c.d != profile.index || c.interior_points == p.interior_points().len());
        Ok(check("interior_monotonicity", ok, || {
            "interior counts not monotone in the lattice".into()
        }))
    }));

    out.push(run_all("signature", || {
        let z = severi::component_signature(&profile)?;
        let block_constant = profile
            .owner
            .windows(2)
            .zip(z.windows(2))
            .all(|(o, w)| o[0] != o[1] || w[0] == w[1]);
        let ok = z.iter().sum::<i128>() == 0 && block_constant;
        Ok(check("signature", ok, || format!("signature {z:?}")))
    }));

    out.push(run_all("component_flags", || {
        let comps = components?;
        let count = severi::count_components(p)?;
        let contributing = comps.iter().filter(|c| c.contributes).count();
        let ok = contributing == count
            && comps.iter().all(|c| {
                c.d * c.index_in_z2 == profile.index
                    && c.torsion_order == c.d
                    && (c.d == 1 || c.contributes)
                    && (c.d != 1 || c.contributes == (c.interior_points > 0))
            });
        Ok(check("component_flags", ok, || {
            format!("{contributing} contributing descriptors, count {count}")
        }))
    }));
    out
}

fn record(
    checks: &mut BTreeMap<String, Tally>,
    failures: &mut Vec<Failure>,
    polygon: &LatticePolygon,
    (name, outcome): Outcome,
) {
    let tally = checks.entry(name.to_string()).or_default();
    match outcome {
        Ok(()) => tally.passed += 1,
        Err(detail) => {
            tally.failed += 1;
            failures.push(Failure {
                check: name.to_string(),
                polygon: polygon.clone(),
                detail,
            });
        }
    }
}

/// One random affine image per trial; invariance of the component count.
fn invariance_trial(p: &LatticePolygon, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (map, image) = sampling::random_affine_image(&mut rng, p, TRIAL_OFFSET_BOUND);
    run_all("unimodular_invariance", || {
        let before = severi::count_components(p)?;
        let after = severi::count_components(&image)?;
        Ok(check("unimodular_invariance", before == after, || {
            format!("count {before} becomes {after} under {map:?}")
        }))
    })
}

/// Runs every check over the corpus plus the seeded invariance trials.
/// The summary does not depend on the execution mode.
pub fn run(opts: &VerifyOptions) -> Result<VerifySummary> {
    let polygons = corpus::enumerate(&opts.corpus)?;
    let per_polygon = par::map(opts.execution, &polygons, check_polygon);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let trials: Vec<(usize, u64)> = if polygons.is_empty() {
        Vec::new()
    } else {
        (0..opts.trials)
            .map(|_| (rng.gen_range(0..polygons.len()), rng.gen()))
            .collect()
    };
    let trial_outcomes = par::map(opts.execution, &trials, |&(i, s)| {
        invariance_trial(&polygons[i], s)
    });

    let mut checks: BTreeMap<String, Tally> =
        CHECKS.iter().map(|c| (c.to_string(), Tally::default())).collect();
    let mut failures = Vec::new();
    for (p, outcomes) in polygons.iter().zip(per_polygon) {
        for o in outcomes {
            record(&mut checks, &mut failures, p, o);
        }
    }
    for (&(i, _), o) in trials.iter().zip(trial_outcomes) {
        record(&mut checks, &mut failures, &polygons[i], o);
    }
    if opts.inject_fault {
        if let Some(p) = polygons.first() {
            let fault = ("count_agreement", Err("injected fault".to_string()));
            record(&mut checks, &mut failures, p, fault);
        }
    }
    Ok(VerifySummary {
        polygons: polygons.len(),
        trials: trials.len(),
        checks,
        failures,
    })
}
