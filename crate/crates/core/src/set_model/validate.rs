use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Bits;

use super::{AtomMask, ClosureModel};

/// Models with at most this many atoms get exhaustive subset scans.
pub const EXHAUSTIVE_ATOM_LIMIT: usize = 20;

const SAMPLE_COUNT: usize = 4096;
const SAMPLE_SEED: u64 = 0x6b74_665f_7661_6c69;

/// Outcome of one closure-algebra invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// True when the check looked at a random sample of subsets instead of all of them.
    pub sampled: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Whether the definition-level and identity-level saturation checks agree.
    pub fn saturation_agreement(&self) -> bool {
        match (self.check(SATURATED), self.check(SATURATION_IDENTITY)) {
            (Some(a), Some(b)) => a.passed == b.passed,
            _ => false,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let sampled = if c.sampled { " (sampled)" } else { "" };
            write!(f, "{status} {}{sampled}", c.name)?;
            if let Some(cx) = &c.counterexample {
                write!(f, ": {cx}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub const EXTENSIVE: &str = "extensive";
pub const IDEMPOTENT: &str = "idempotent";
pub const NESTED: &str = "nested";
pub const SATURATED: &str = "saturated";
pub const SATURATION_IDENTITY: &str = "saturation-identity";

/// Checks every closure-algebra invariant of `model`.
///
/// Failures are reported, never raised. Saturation is checked twice: once from
/// the definition (every nonempty open set has nonempty interior in every
/// topology) and once through the identities `k_x i_y = k_x i_x` and
/// `i_x k_y = i_x k_x`.
pub fn validate<B: Bits>(model: &ClosureModel<B>) -> ValidationReport {
    let width = model.atom_count();
    let n = model.n();
    let exhaustive = width <= EXHAUSTIVE_ATOM_LIMIT;
    let subsets = SubsetFamily::new(width, exhaustive);
    let mut checks = Vec::with_capacity(5);

    let mut extensive = None;
    let mut idempotent = None;
    'rows: for j in 1..=n {
        for a in 0..width {
            let row = model.row(j, a);
            if extensive.is_none() && !row.contains(a) {
                extensive = Some(format!(
                    "topology {j}: atom {} not in its own closure",
                    model.atom_name(a)
                ));
            }
            if idempotent.is_none() {
                let again = model.closure_bits(j, row.bits());
                if &again != row.bits() {
                    idempotent = Some(format!(
                        "topology {j}: closure row of atom {} is not closed",
                        model.atom_name(a)
                    ));
                }
            }
            if extensive.is_some() && idempotent.is_some() {
                break 'rows;
            }
        }
    }
    checks.push(outcome(EXTENSIVE, false, extensive));
    checks.push(outcome(IDEMPOTENT, false, idempotent));

    let mut nested = None;
    'nest: for j in 1..n {
        for a in 0..width {
            if !model.row(j, a).is_subset(&model.row(j + 1, a)) {
                nested = Some(format!(
                    "closure of atom {} under topology {j} is not contained in topology {}",
                    model.atom_name(a),
                    j + 1
                ));
                break 'nest;
            }
        }
    }
    checks.push(outcome(NESTED, false, nested));

    let mut saturated = None;
    'sat: for s in subsets.iter::<B>() {
        if s.is_clear() {
            continue;
        }
        for j in 1..=n {
            if model.interior_bits(j, &s) != s {
                continue;
            }
            for y in 1..=n {
                if model.interior_bits(y, &s).is_clear() {
                    saturated = Some(format!(
                        "{} is open in topology {j} but has empty interior in topology {y}",
                        AtomMask::from_bits(s.clone(), width)
                    ));
                    break 'sat;
                }
            }
        }
    }
    checks.push(outcome(SATURATED, !exhaustive, saturated));

    let mut identity = None;
    'ident: for s in subsets.iter::<B>() {
        for x in 1..=n {
            let kx_ix = model.closure_bits(x, &model.interior_bits(x, &s));
            let ix_kx = model.interior_bits(x, &model.closure_bits(x, &s));
            for y in 1..=n {
                if y == x {
                    continue;
                }
                if model.closure_bits(x, &model.interior_bits(y, &s)) != kx_ix {
                    identity = Some(format!(
                        "k{x} i{y} differs from k{x} i{x} on {}",
                        AtomMask::from_bits(s.clone(), width)
                    ));
                    break 'ident;
                }
                if model.interior_bits(x, &model.closure_bits(y, &s)) != ix_kx {
                    identity = Some(format!(
                        "i{x} k{y} differs from i{x} k{x} on {}",
                        AtomMask::from_bits(s.clone(), width)
                    ));
                    break 'ident;
                }
            }
        }
    }
    checks.push(outcome(SATURATION_IDENTITY, !exhaustive, identity));

    ValidationReport { checks }
}

fn outcome(name: &'static str, sampled: bool, counterexample: Option<String>) -> Check {
    Check {
        name,
        passed: counterexample.is_none(),
        sampled,
        counterexample,
    }
}

/// Either every subset of the atoms, or a fixed pseudo-random sample of them.
struct SubsetFamily {
    width: usize,
    exhaustive: bool,
}

impl SubsetFamily {
    fn new(width: usize, exhaustive: bool) -> Self {
        SubsetFamily { width, exhaustive }
    }

    fn iter<B: Bits>(&self) -> Box<dyn Iterator<Item = B> + '_> {
        let width = self.width;
        if self.exhaustive {
            Box::new((0..1usize << width).map(move |i| B::from_index(i, width)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            Box::new((0..SAMPLE_COUNT).map(move |_| {
                let mut b = B::zeroed(width);
                for a in 0..width {
                    if rng.gen_bool(0.5) {
                        b.insert(a);
                    }
                }
                b
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_model::ModelKind;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn accepts_a_simple_nested_pair() {
        // Open sets {0}, {0,1} in topology 1 and {0} in topology 2.
        let m = ClosureModel::<u32>::from_atom_lists(
            names(3),
            &[
                vec![vec![0, 1, 2], vec![1, 2], vec![2]],
                vec![vec![0, 1, 2], vec![1, 2], vec![1, 2]],
            ],
            ModelKind::PointSpace,
        )
        .unwrap();
        let report = validate(&m);
        assert!(report.is_valid(), "{report}");
        assert!(report.saturation_agreement());
    }

    #[test]
    fn reports_extensivity_failure_with_atom() {
        let m = ClosureModel::<u32>::from_atom_lists(
            names(2),
            &[vec![vec![1], vec![1]]],
            ModelKind::PointSpace,
        )
        .unwrap();
        let report = validate(&m);
        let check = report.check(EXTENSIVE).unwrap();
        assert!(!check.passed);
        assert!(check.counterexample.as_ref().unwrap().contains("p0"));
    }

    #[test]
    fn reports_nesting_failure() {
        // Topology 1 is coarser than topology 2: the order is reversed.
        let m = ClosureModel::<u32>::from_atom_lists(
            names(2),
            &[vec![vec![0], vec![0, 1]], vec![vec![0], vec![1]]],
            ModelKind::PointSpace,
        )
        .unwrap();
        let report = validate(&m);
        assert!(!report.check(NESTED).unwrap().passed);
        assert!(report.check(EXTENSIVE).unwrap().passed);
    }

    #[test]
    fn reports_idempotence_failure() {
        // closure{2} = {1,2} but closure{1} = {0,1}: the row {1,2} is not closed.
        let m = ClosureModel::<u32>::from_atom_lists(
            names(3),
            &[vec![vec![0], vec![0, 1], vec![1, 2]]],
            ModelKind::PointSpace,
        )
        .unwrap();
        assert!(!validate(&m).check(IDEMPOTENT).unwrap().passed);
    }

    #[test]
    fn detects_unsaturated_pair() {
        // {1} is open in the discrete topology but has empty interior in the
        // coarser one, where closure{0} = {0,1}.
        let m = ClosureModel::<u32>::from_atom_lists(
            names(2),
            &[vec![vec![0], vec![1]], vec![vec![0, 1], vec![1]]],
            ModelKind::PointSpace,
        )
        .unwrap();
        let report = validate(&m);
        assert!(!report.check(SATURATED).unwrap().passed);
        assert!(!report.check(SATURATION_IDENTITY).unwrap().passed);
        assert!(report.saturation_agreement());
    }
}
