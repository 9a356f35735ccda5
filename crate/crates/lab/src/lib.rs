//! Verification campaigns over enumerated balls of the arc and sphere
//! graphs, nearest-point projection, graph export and result persistence.

pub mod ball;
pub mod campaigns;
pub mod config;
pub mod error;
pub mod export;
pub mod report;
pub mod store;

pub use ball::{nearest_point_projection, Ball};
pub use campaigns::verify;
pub use config::{Campaign, CampaignConfig};
pub use error::LabError;
pub use report::{Exactness, VerificationReport};
pub use store::ResultStore;
