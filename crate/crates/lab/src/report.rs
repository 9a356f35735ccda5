use serde::{Deserialize, Serialize};

/// How far a statistic can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Computed exactly, or a certified distance.
    Exact,
    /// An upper bound; conclusive when it already satisfies the bound.
    UpperBound,
    /// Nothing certified within the search cap.
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorstCase {
    pub instance: String,
    pub statistic: i64,
    pub exactness: Exactness,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessCounts {
    pub exact: usize,
    pub upper_bound: usize,
    pub uncertified: usize,
}

/// Outcome of one campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    /// The quoted bound on the statistic, if the campaign has one.
    pub bound: Option<i64>,
    /// Largest conclusive statistic.
    pub max_observed: Option<i64>,
    pub instances: usize,
    /// Instances whose statistic could not be decided against the bound.
    pub inconclusive: usize,
    /// Conclusive instances exceeding the bound.
    pub violations: usize,
    pub worst_cases: Vec<WorstCase>,
    pub exactness: ExactnessCounts,
    pub config_digest: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub pass: bool,
}

const WORST_KEPT: usize = 8;

/// Accumulates instance statistics against a bound.
///
/// An instance with statistic `s` is conclusive when `s` is exact, or when
/// `s` is an upper bound and `s <= bound`. Only conclusive instances enter
/// `max_observed` and can cause a violation.
#[derive(Clone, Debug)]
pub struct Tally {
    campaign: String,
    bound: Option<i64>,
    instances: usize,
    inconclusive: usize,
    violations: usize,
    max_observed: Option<i64>,
    worst: Vec<WorstCase>,
    undecided: Vec<WorstCase>,
    exactness: ExactnessCounts,
    notes: Vec<String>,
}

impl Tally {
    pub fn new(campaign: &str, bound: Option<i64>) -> Self {
        Tally {
            campaign: campaign.into(),
            bound,
            instances: 0,
            inconclusive: 0,
            violations: 0,
            max_observed: None,
            worst: Vec::new(),
            undecided: Vec::new(),
            exactness: ExactnessCounts::default(),
            notes: Vec::new(),
        }
    }

    pub fn instances(&self) -> usize {
        self.instances
    }

    pub fn violations(&self) -> usize {
        self.violations
    }

    pub fn max_observed(&self) -> Option<i64> {
        self.max_observed
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn record(&mut self, instance: impl Into<String>, statistic: i64, exactness: Exactness) {
        self.record_with(instance, statistic, exactness, String::new());
    }

    pub fn record_with(
        &mut self,
        instance: impl Into<String>,
        statistic: i64,
        exactness: Exactness,
        detail: String,
    ) {
        self.instances += 1;
        match exactness {
            Exactness::Exact => self.exactness.exact += 1,
            Exactness::UpperBound => self.exactness.upper_bound += 1,
            Exactness::Uncertified => self.exactness.uncertified += 1,
        }
        let within = self.bound.map_or(true, |b| statistic <= b);
        let case = WorstCase {
            instance: instance.into(),
            statistic,
            exactness,
            detail,
        };
        let conclusive = match exactness {
            Exactness::Exact => true,
            Exactness::UpperBound => within,
            Exactness::Uncertified => false,
        };
        if !conclusive {
            self.inconclusive += 1;
            if self.undecided.len() < WORST_KEPT {
                self.undecided.push(case);
            }
            return;
        }
        if !within {
            self.violations += 1;
        }
        self.max_observed = Some(self.max_observed.map_or(statistic, |m| m.max(statistic)));
        push_worst(&mut self.worst, case);
    }

    /// Records a structural failure, which is always a violation.
    pub fn fail(&mut self, instance: impl Into<String>, detail: impl Into<String>) {
        self.instances += 1;
        self.exactness.exact += 1;
        self.violations += 1;
        push_worst(
            &mut self.worst,
            WorstCase {
                instance: instance.into(),
                statistic: i64::MAX,
                exactness: Exactness::Exact,
                detail: detail.into(),
            },
        );
    }

    pub fn finish(self, config_digest: &str) -> VerificationReport {
        let mut worst_cases = self.worst;
        worst_cases.extend(self.undecided);
        VerificationReport {
            campaign: self.campaign,
            bound: self.bound,
            max_observed: self.max_observed,
            instances: self.instances,
            inconclusive: self.inconclusive,
            violations: self.violations,
            worst_cases,
            exactness: self.exactness,
            config_digest: config_digest.into(),
            notes: self.notes,
            pass: self.violations == 0 && self.instances > self.inconclusive,
        }
    }
}

fn push_worst(worst: &mut Vec<WorstCase>, case: WorstCase) {
    worst.push(case);
    worst.sort_by(|a, b| b.statistic.cmp(&a.statistic).then(a.instance.cmp(&b.instance)));
    worst.truncate(WORST_KEPT);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_bounds_decide_only_when_within() {
        let mut t = Tally::new("t", Some(7));
        t.record("a", 3, Exactness::Exact);
        t.record("b", 6, Exactness::UpperBound);
        t.record("c", 9, Exactness::UpperBound);
        t.record("d", 1, Exactness::Uncertified);
        let r = t.finish("00");
        assert_eq!(r.instances, 4);
        assert_eq!(r.inconclusive, 2);
        assert_eq!(r.max_observed, Some(6));
        assert!(r.pass);
    }

    #[test]
    fn exact_excess_is_a_violation() {
        let mut t = Tally::new("t", Some(7));
        t.record("a", 8, Exactness::Exact);
        let r = t.finish("00");
        assert_eq!(r.violations, 1);
        assert!(!r.pass);
    }

    #[test]
    fn nothing_conclusive_does_not_pass() {
        let mut t = Tally::new("t", Some(0));
        t.record("a", 3, Exactness::Uncertified);
        assert!(!t.finish("00").pass);
    }
}
