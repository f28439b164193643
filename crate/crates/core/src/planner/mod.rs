//! Minimum-DOC route planning among cylindrical obstacles.
//!
//! The world is flown at a fixed altitude, so every cylinder reaching that
//! altitude becomes a buffered disc in the plane. RRT* grows a tree whose
//! edge costs are the DOC of flying each straight edge at the optimal
//! airspeed; for an all-electric aircraft that cost is proportional to the
//! edge length.

mod cost;
mod geometry;
mod rrt;
mod world;

pub use cost::{ArrivalState, EdgeCoster};
pub use geometry::{collision_free, point_segment_distance, Disc, Point};
pub use rrt::{plan, Path, PlanNode, PlanOutcome, PlanStats, PlannerConfig, Sampler};
pub use world::{active_obstacles, generate_city, CityParams, CylinderObstacle, Extent, World};
