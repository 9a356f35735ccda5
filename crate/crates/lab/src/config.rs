use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use dhl_core::kernel::RibbonGraph;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::LabError;

/// The verification campaigns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Campaign {
    /// Doubled arcs project back to themselves.
    B5,
    /// Projections of single spheres and of disjoint pairs have small diameter.
    B3,
    /// Doubling preserves distances.
    B7,
    /// Projection is coarsely Lipschitz.
    A1,
    /// Witnesses along surgery paths and the diameter of their projections.
    C3,
    /// Innermost discs and strictly descending surgery.
    C4,
    /// Distance between projection and nearest-point projection, measured.
    A2,
    /// Disjoint arcs double to disjoint spheres and conversely.
    Coherence,
    /// Slope arcs on the one-holed torus follow Farey adjacency.
    Farey,
    /// Symmetry, invariance and wider-search confirmation of the model.
    Invariance,
}

impl Campaign {
    pub const ALL: [Campaign; 10] = [
        Campaign::B5,
        Campaign::B3,
        Campaign::B7,
        Campaign::A1,
        Campaign::C3,
        Campaign::C4,
        Campaign::A2,
        Campaign::Coherence,
        Campaign::Farey,
        Campaign::Invariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::B5 => "B5",
            Campaign::B3 => "B3",
            Campaign::B7 => "B7",
            Campaign::A1 => "A1",
            Campaign::C3 => "C3",
            Campaign::C4 => "C4",
            Campaign::A2 => "A2",
            Campaign::Coherence => "coherence",
            Campaign::Farey => "farey",
            Campaign::Invariance => "invariance",
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Campaign {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| LabError::UnknownCampaign(s.to_string()))
    }
}

/// Everything a campaign run depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub campaign: Campaign,
    /// Rank of the free group; must match the ribbon graph.
    pub genus: usize,
    /// A preset name (`torus`, `pants`, `rank3`) or a cyclic order such as `xyXY`.
    pub ribbon: String,
    /// Sphere enumeration radius.
    pub radius: usize,
    /// Maximum number of cylinders per sphere side.
    pub max_cylinders: usize,
    /// Complexity cap on enumerated arcs.
    pub arc_complexity: usize,
    /// Completeness bound of the arc ball used for distances.
    pub arc_bound: usize,
    /// Search cap for graph distances.
    pub cap: u32,
    /// Random draws per instance where a campaign samples.
    pub samples: usize,
    pub seed: u64,
    /// Largest circle count considered by the surgery campaigns.
    pub kappa_max: usize,
    /// Half-width of the slope box for the Farey campaign.
    pub farey_box: i64,
    /// Where the frozen A2 threshold lives.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub threshold_path: Option<PathBuf>,
    /// Append-only result store.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub store_path: Option<PathBuf>,
}

impl CampaignConfig {
    /// Desk-scale defaults on the one-holed torus.
    pub fn new(campaign: Campaign) -> Self {
        CampaignConfig {
            campaign,
            genus: 2,
            ribbon: "torus".into(),
            radius: 3,
            max_cylinders: 3,
            arc_complexity: 6,
            arc_bound: 6,
            cap: 32,
            samples: 10,
            seed: 0,
            kappa_max: 6,
            farey_box: 20,
            threshold_path: None,
            store_path: None,
        }
    }

    pub fn with_ribbon(mut self, ribbon: &str) -> Self {
        self.ribbon = ribbon.into();
        self
    }

    pub fn validate(&self) -> Result<RibbonGraph, LabError> {
        for (name, v) in [
            ("genus", self.genus),
            ("radius", self.radius),
            ("max_cylinders", self.max_cylinders),
            ("arc_complexity", self.arc_complexity),
            ("arc_bound", self.arc_bound),
            ("samples", self.samples),
        ] {
            if v == 0 {
                return Err(LabError::Config(format!("{name} must be positive")));
            }
        }
        if self.cap == 0 {
            return Err(LabError::Config("cap must be positive".into()));
        }
        if self.farey_box <= 0 {
            return Err(LabError::Config("farey_box must be positive".into()));
        }
        let rg = ribbon_from_name(&self.ribbon, self.genus)?;
        if rg.rank() != self.genus {
            return Err(LabError::Config(format!(
                "ribbon {} has rank {}, not {}",
                self.ribbon,
                rg.rank(),
                self.genus
            )));
        }
        Ok(rg)
    }

    /// Hex SHA-256 of the configuration, ignoring where output goes.
    pub fn digest(&self) -> String {
        let mut c = self.clone();
        c.threshold_path = None;
        c.store_path = None;
        let json = serde_json::to_vec(&c).expect("config serializes");
        hex::encode(Sha256::digest(json))
    }
}

/// Resolves a preset name or an explicit cyclic order.
pub fn ribbon_from_name(name: &str, rank: usize) -> Result<RibbonGraph, LabError> {
    match RibbonGraph::preset(name) {
        Ok(rg) => Ok(rg),
        Err(_) => RibbonGraph::parse(rank, name).map_err(|e| LabError::Config(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn campaign_names_round_trip() {
        for c in Campaign::ALL {
            assert_eq!(c.name().parse::<Campaign>().unwrap(), c);
        }
        assert!("B9".parse::<Campaign>().is_err());
    }

    #[test]
    fn digest_ignores_paths() {
        let a = CampaignConfig::new(Campaign::B5);
        let mut b = a.clone();
        b.store_path = Some("x.jsonl".into());
        assert_eq!(a.digest(), b.digest());
        b.seed = 1;
        assert_ne!(a.digest(), b.digest());
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let mut c = CampaignConfig::new(Campaign::B5);
        c.genus = 3;
        assert!(c.validate().is_err());
        c.ribbon = "xyXYzZ".into();
        assert_eq!(c.validate().unwrap().rank(), 3);
    }
}
