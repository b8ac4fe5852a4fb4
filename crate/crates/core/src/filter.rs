//! Per-graph verdicts for census filtering.

use std::fmt;

use crate::covers::double::{odd_girth_via_cover, verify_target, VerifierMismatch};
use crate::graph::{girth, has_cycle_of_length, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterSpec {
    pub k: usize,
    pub g: usize,
    /// Also require this odd girth (`None`: any).
    pub odd_girth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    /// Empty when the graph passes.
    pub reasons: Vec<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            f.write_str("pass")
        } else {
            write!(f, "reject: {}", self.reasons.join("; "))
        }
    }
}

/// Checks `g` against the spec with both target verifiers; an internal
/// disagreement is returned as an error rather than a verdict.
pub fn check(g: &Graph, spec: FilterSpec) -> Result<Verdict, VerifierMismatch> {
    let target = verify_target(g, spec.k, spec.g)?;
    let mut reasons = Vec::new();
    if !target {
        if !g.is_regular(spec.k) {
            let (lo, hi) = g.degrees().iter().fold((usize::MAX, 0), |(lo, hi), &d| (lo.min(d), hi.max(d)));
            reasons.push(format!("not {}-regular (degrees {lo}..{hi})", spec.k));
        }
        match girth(g) {
            Some(x) if x == spec.g => {}
            Some(x) => reasons.push(format!("girth {x}")),
            None => reasons.push("acyclic".to_string()),
        }
        if spec.g >= 2 && has_cycle_of_length(g, spec.g + 1) {
            reasons.push(format!("has a {}-cycle", spec.g + 1));
        }
    }
    if let Some(q) = spec.odd_girth {
        let og = odd_girth_via_cover(g);
        if og != Some(q) {
            reasons.push(match og {
                Some(x) => format!("odd girth {x}"),
                None => "bipartite".to_string(),
            });
        }
    }
    Ok(Verdict {
        pass: reasons.is_empty(),
        reasons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn campbell_passes_with_odd_girth() {
        let spec = FilterSpec {
            k: 3,
            g: 6,
            odd_girth: Some(11),
        };
        let v = check(&named::campbell(), spec).unwrap();
        assert!(v.pass, "{v}");
        assert_eq!(named::campbell().order(), 28);
    }

    #[test]
    fn reasons() {
        let spec = FilterSpec {
            k: 3,
            g: 5,
            odd_girth: None,
        };
        let v = check(&named::petersen(), spec).unwrap();
        assert_eq!(v.reasons, vec!["has a 6-cycle".to_string()]);
        let v = check(&named::heawood(), spec).unwrap();
        assert_eq!(v.reasons, vec!["girth 6".to_string(), "has a 6-cycle".to_string()]);
        let v = check(&named::cycle(5), spec).unwrap();
        assert_eq!(v.to_string(), "reject: not 3-regular (degrees 2..2)");
        let spec = FilterSpec {
            k: 3,
            g: 6,
            odd_girth: Some(7),
        };
        assert_eq!(check(&named::heawood(), spec).unwrap().reasons, vec!["bipartite".to_string()]);
    }
}
