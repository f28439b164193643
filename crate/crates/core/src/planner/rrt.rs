//! RRT* with DOC edge costs.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::cost::{ArrivalState, EdgeCoster};
use super::geometry::{collision_free, Disc, Point};
use super::world::{active_obstacles, World};
use crate::error::{ensure_positive, Error, Result};
use crate::optimizer::{shoot, Boundary, CruiseParams, CruiseProfile, ShootOptions};

/// Draws abandoned before the planner gives up, per requested sample.
const MAX_ATTEMPTS_PER_SAMPLE: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Sampler {
    Uniform,
    /// Uniform along the start–goal line with a normal lateral offset.
    /// `sigma_lateral` defaults to a quarter of the world depth.
    Gaussian {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma_lateral: Option<f64>,
    },
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::Gaussian { sigma_lateral: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlannerConfig {
    /// Accepted tree extensions.
    pub n_samples: usize,
    /// m
    pub steer_step: f64,
    /// `γ` in the neighbour radius `γ·√(ln n / n)·diagonal`.
    pub neighbor_radius_scale: f64,
    /// m
    pub goal_tolerance: f64,
    pub sampler: Sampler,
    pub rng_seed: u64,
    /// Integration step for hybrid edges and the final profile, s.
    pub step: f64,
}

impl PlannerConfig {
    /// Makes the neighbour radius 10% of the world diagonal at n = 250.
    pub fn default_radius_scale() -> f64 {
        let n = 250.0_f64;
        0.1 / (n.ln() / n).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::Domain {
                name: "n_samples",
                value: 0.0,
                reason: "must be >= 1",
            });
        }
        ensure_positive("steer_step", self.steer_step)?;
        ensure_positive("neighbor_radius_scale", self.neighbor_radius_scale)?;
        ensure_positive("goal_tolerance", self.goal_tolerance)?;
        ensure_positive("step", self.step)?;
        if let Sampler::Gaussian {
            sigma_lateral: Some(sigma),
        } = self.sampler
        {
            ensure_positive("sigma_lateral", sigma)?;
        }
        Ok(())
    }
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            n_samples: 250,
            steer_step: 2000.0,
            neighbor_radius_scale: Self::default_radius_scale(),
            goal_tolerance: 1000.0,
            sampler: Sampler::default(),
            rng_seed: 0,
            step: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanNode {
    pub position: Point,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub cost_to_come: f64,
    /// DOC of the edge from the parent; zero at the root.
    pub edge_cost: f64,
    pub arrival: ArrivalState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PlanStats {
    /// Samples drawn, rejected ones included.
    pub attempts: usize,
    /// Nodes added to the tree (root excluded).
    pub accepted: usize,
    pub collisions: usize,
    pub rewires: usize,
    /// Nodes that connect to the goal.
    pub goal_connections: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    /// Start first, goal last.
    pub waypoints: Vec<Point>,
    pub edge_costs: Vec<f64>,
    /// Distance flown at each waypoint, m.
    pub waypoint_distances: Vec<f64>,
    pub total_doc: f64,
    /// m
    pub total_length: f64,
    pub arrival: ArrivalState,
    /// Optimal cruise over the path length.
    pub profile: CruiseProfile,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanOutcome {
    pub path: Path,
    pub tree: Vec<PlanNode>,
    /// Best goal-reaching cost after each accepted sample.
    pub history: Vec<Option<f64>>,
    pub stats: PlanStats,
}

struct Best {
    cost: f64,
    waypoints: Vec<Point>,
    edge_costs: Vec<f64>,
    arrival: ArrivalState,
}

struct Tree<'a> {
    nodes: Vec<PlanNode>,
    discs: &'a [Disc],
    coster: &'a EdgeCoster,
}

impl Tree<'_> {
    fn nearest(&self, p: &Point) -> usize {
        let mut best = (f64::INFINITY, 0);
        for (i, n) in self.nodes.iter().enumerate() {
            let d = n.position.distance_squared(p);
            if d < best.0 {
                best = (d, i);
            }
        }
        best.1
    }

    fn within(&self, p: &Point, radius: f64) -> Vec<usize> {
        let r2 = radius * radius;
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].position.distance_squared(p) <= r2)
            .collect()
    }

    fn is_ancestor(&self, ancestor: usize, mut node: usize) -> bool {
        loop {
            if node == ancestor {
                return true;
            }
            match self.nodes[node].parent {
                Some(p) => node = p,
                None => return false,
            }
        }
    }

    /// Moves `node` under `parent` and recomputes costs and arrival states
    /// through its subtree. Nothing changes if any edge becomes infeasible.
    fn reparent(&mut self, node: usize, parent: usize) -> bool {
        let mut staged: HashMap<usize, (f64, f64, ArrivalState)> = HashMap::new();
        let mut stack = vec![(node, parent)];
        while let Some((child, from)) = stack.pop() {
            let (from_cost, from_state) = staged
                .get(&from)
                .map(|s| (s.0, s.2))
                .unwrap_or((self.nodes[from].cost_to_come, self.nodes[from].arrival));
            let Ok((edge, arrival)) =
                self.coster
                    .edge_cost(&self.nodes[from].position, &self.nodes[child].position, &from_state)
            else {
                return false;
            };
            staged.insert(child, (from_cost + edge, edge, arrival));
            for &c in &self.nodes[child].children {
                stack.push((c, child));
            }
        }
        if let Some(old) = self.nodes[node].parent {
            self.nodes[old].children.retain(|&c| c != node);
        }
        self.nodes[parent].children.push(node);
        self.nodes[node].parent = Some(parent);
        for (i, (cost, edge, arrival)) in staged {
            let n = &mut self.nodes[i];
            n.cost_to_come = cost;
            n.edge_cost = edge;
            n.arrival = arrival;
        }
        true
    }

    fn chain(&self, mut node: usize) -> (Vec<Point>, Vec<f64>) {
        let mut points = vec![self.nodes[node].position];
        let mut edges = Vec::new();
        while let Some(p) = self.nodes[node].parent {
            edges.push(self.nodes[node].edge_cost);
            points.push(self.nodes[p].position);
            node = p;
        }
        points.reverse();
        edges.reverse();
        (points, edges)
    }
}

fn draw(rng: &mut ChaCha8Rng, world: &World, start: &Point, goal: &Point, sampler: &Sampler) -> Point {
    let ext = world.extent;
    match *sampler {
        Sampler::Uniform => Point::new(rng.random_range(0.0..=ext.width), rng.random_range(0.0..=ext.depth)),
        Sampler::Gaussian { sigma_lateral } => {
            let sigma = sigma_lateral.unwrap_or(ext.depth / 4.0);
            let (dx, dy) = (goal.x - start.x, goal.y - start.y);
            let len = dx.hypot(dy);
            let (nx, ny) = if len > 0.0 { (-dy / len, dx / len) } else { (0.0, 1.0) };
            let u: f64 = rng.random_range(0.0..=1.0);
            let lateral = Normal::new(0.0, sigma).expect("sigma validated").sample(rng);
            ext.clamp(Point::new(
                start.x + u * dx + lateral * nx,
                start.y + u * dy + lateral * ny,
            ))
        }
    }
}

fn check_endpoint(name: &str, p: &Point, world: &World, discs: &[Disc]) -> Result<()> {
    if !world.extent.contains(p) {
        return Err(Error::Precondition(format!(
            "{name} ({}, {}) lies outside the world",
            p.x, p.y
        )));
    }
    if discs.iter().any(|d| d.contains(p)) {
        return Err(Error::Precondition(format!(
            "{name} ({}, {}) lies inside an obstacle",
            p.x, p.y
        )));
    }
    Ok(())
}

/// Plans a minimum-DOC path from `start` to `goal`.
///
/// `params.atmosphere` is replaced by the world's. The returned path ends
/// exactly at `goal`; its last tree node lies within `goal_tolerance`.
pub fn plan(
    world: &World,
    start: Point,
    goal: Point,
    params: &CruiseParams,
    initial: ArrivalState,
    config: &PlannerConfig,
) -> Result<PlanOutcome> {
    world.validate()?;
    config.validate()?;
    ensure_positive("initial weight", initial.weight)?;
    let discs = active_obstacles(world);
    check_endpoint("start", &start, world, &discs)?;
    check_endpoint("goal", &goal, world, &discs)?;

    let mut params = *params;
    params.atmosphere = world.atmosphere;
    let coster = EdgeCoster::new(params, config.step)?;
    let mut tree = Tree {
        nodes: vec![PlanNode {
            position: start,
            parent: None,
            children: Vec::new(),
            cost_to_come: 0.0,
            edge_cost: 0.0,
            arrival: initial,
        }],
        discs: &discs,
        coster: &coster,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let diagonal = world.extent.diagonal();
    let mut stats = PlanStats::default();
    let mut history = Vec::with_capacity(config.n_samples);
    let mut goal_nodes: Vec<usize> = Vec::new();
    let mut best: Option<Best> = None;

    let try_goal = |tree: &Tree, i: usize| -> Option<(f64, f64, ArrivalState)> {
        let n = &tree.nodes[i];
        if n.position.distance(&goal) > config.goal_tolerance || !collision_free(&n.position, &goal, tree.discs) {
            return None;
        }
        let (edge, arrival) = tree.coster.edge_cost(&n.position, &goal, &n.arrival).ok()?;
        Some((n.cost_to_come + edge, edge, arrival))
    };

    // the start itself may already be close enough
    if try_goal(&tree, 0).is_some() {
        goal_nodes.push(0);
    }

    let max_attempts = config.n_samples.saturating_mul(MAX_ATTEMPTS_PER_SAMPLE);
    while stats.accepted < config.n_samples && stats.attempts < max_attempts {
        stats.attempts += 1;
        let sample = draw(&mut rng, world, &start, &goal, &config.sampler);
        let nearest = tree.nearest(&sample);
        let from = tree.nodes[nearest].position;
        let new_pos = from.steer(&sample, config.steer_step);
        if new_pos == from {
            continue;
        }
        if !collision_free(&from, &new_pos, &discs) {
            stats.collisions += 1;
            continue;
        }

        let n = (tree.nodes.len() + 1) as f64;
        let radius = config.neighbor_radius_scale * (n.ln() / n).sqrt() * diagonal;
        let mut neighbors = tree.within(&new_pos, radius);
        if !neighbors.contains(&nearest) {
            neighbors.push(nearest);
        }

        // choose the cheapest collision-free parent
        let mut parent: Option<(usize, f64, f64, ArrivalState)> = None;
        for &j in &neighbors {
            let nj = &tree.nodes[j];
            if j != nearest && !collision_free(&nj.position, &new_pos, &discs) {
                continue;
            }
            let Ok((edge, arrival)) = coster.edge_cost(&nj.position, &new_pos, &nj.arrival) else {
                continue;
            };
            let cost = nj.cost_to_come + edge;
            if parent.is_none_or(|p| cost < p.1) {
                parent = Some((j, cost, edge, arrival));
            }
        }
        let Some((pj, cost, edge, arrival)) = parent else {
            continue;
        };
        let new = tree.nodes.len();
        tree.nodes.push(PlanNode {
            position: new_pos,
            parent: Some(pj),
            children: Vec::new(),
            cost_to_come: cost,
            edge_cost: edge,
            arrival,
        });
        tree.nodes[pj].children.push(new);
        stats.accepted += 1;

        // rewire neighbours through the new node
        for &j in &neighbors {
            if j == pj || tree.is_ancestor(j, new) {
                continue;
            }
            let (pos_j, cost_j) = (tree.nodes[j].position, tree.nodes[j].cost_to_come);
            if !collision_free(&new_pos, &pos_j, &discs) {
                continue;
            }
            let Ok((e, _)) = coster.edge_cost(&new_pos, &pos_j, &tree.nodes[new].arrival) else {
                continue;
            };
            if cost + e < cost_j && tree.reparent(j, new) {
                stats.rewires += 1;
            }
        }

        if try_goal(&tree, new).is_some() {
            goal_nodes.push(new);
            stats.goal_connections += 1;
        }
        for &g in &goal_nodes {
            if let Some((total, edge, arrival)) = try_goal(&tree, g) {
                if best.as_ref().is_none_or(|b| total < b.cost) {
                    let (mut waypoints, mut edge_costs) = tree.chain(g);
                    waypoints.push(goal);
                    edge_costs.push(edge);
                    best = Some(Best {
                        cost: total,
                        waypoints,
                        edge_costs,
                        arrival,
                    });
                }
            }
        }
        history.push(best.as_ref().map(|b| b.cost));
    }

    let Some(best) = best else {
        let closest = tree
            .nodes
            .iter()
            .map(|n| n.position.distance(&goal))
            .fold(f64::INFINITY, f64::min);
        return Err(Error::PlanningFailed {
            iterations: stats.attempts,
            nodes: tree.nodes.len(),
            closest_to_goal: closest,
        });
    };

    let mut waypoint_distances = Vec::with_capacity(best.waypoints.len());
    let mut total_length = 0.0;
    waypoint_distances.push(0.0);
    for w in best.waypoints.windows(2) {
        total_length += w[0].distance(&w[1]);
        waypoint_distances.push(total_length);
    }
    let profile = shoot(
        &Boundary {
            r0: 0.0,
            rf: total_length,
            w0: initial.weight,
            q0: initial.charge,
        },
        &params,
        &ShootOptions {
            step: config.step,
            ..ShootOptions::default()
        },
    )?
    .profile;

    Ok(PlanOutcome {
        path: Path {
            total_doc: best.edge_costs.iter().sum(),
            waypoints: best.waypoints,
            edge_costs: best.edge_costs,
            waypoint_distances,
            total_length,
            arrival: best.arrival,
            profile,
        },
        tree: tree.nodes,
        history,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::fixtures::e430;
    use crate::planner::world::{generate_city, CityParams, Extent};

    fn open_world() -> World {
        World {
            extent: Extent {
                width: 10_000.0,
                depth: 5_000.0,
            },
            obstacles: Vec::new(),
            cruise_altitude: 300.0,
            atmosphere: crate::Atmosphere {
                density: 1.2,
                altitude: 300.0,
            },
        }
    }

    fn initial() -> ArrivalState {
        ArrivalState {
            t: 0.0,
            weight: 4600.0,
            charge: 360_000.0,
        }
    }

    const START: Point = Point::new(200.0, 4800.0);
    const GOAL: Point = Point::new(9800.0, 100.0);

    fn city_outcome(seed: u64) -> PlanOutcome {
        let world = generate_city(&CityParams::urban_default(), seed).unwrap();
        let config = PlannerConfig {
            rng_seed: seed,
            ..Default::default()
        };
        plan(&world, START, GOAL, &e430(), initial(), &config).unwrap()
    }

    #[test]
    fn tree_costs_match_parent_chains() {
        let out = city_outcome(1);
        for (i, n) in out.tree.iter().enumerate() {
            let mut sum = 0.0;
            let mut k = i;
            while let Some(p) = out.tree[k].parent {
                sum += out.tree[k].edge_cost;
                assert!(out.tree[p].children.contains(&k));
                k = p;
            }
            assert_eq!(k, 0);
            let tol = 1e-9 * n.cost_to_come.abs().max(1e-300);
            assert!((n.cost_to_come - sum).abs() <= tol, "node {i}");
        }
        assert_eq!(out.tree[0].cost_to_come, 0.0);
        assert_eq!(out.tree[0].arrival, initial());
    }

    #[test]
    fn path_is_collision_free_and_ends_at_goal() {
        let world = generate_city(&CityParams::urban_default(), 1).unwrap();
        let out = city_outcome(1);
        let discs = active_obstacles(&world);
        let w = &out.path.waypoints;
        assert_eq!(w[0], START);
        assert_eq!(*w.last().unwrap(), GOAL);
        for s in w.windows(2) {
            assert!(collision_free(&s[0], &s[1], &discs));
        }
        assert_eq!(out.path.edge_costs.len(), w.len() - 1);
    }

    #[test]
    fn deterministic_for_seed() {
        let a = city_outcome(4);
        let b = city_outcome(4);
        assert_eq!(a.path.waypoints, b.path.waypoints);
        assert_eq!(a.history, b.history);
    }

    #[test]
    fn history_is_monotone() {
        let out = city_outcome(2);
        let costs: Vec<f64> = out.history.iter().flatten().copied().collect();
        assert!(!costs.is_empty());
        for w in costs.windows(2) {
            assert!(w[1] <= w[0]);
        }
        // once found, a path is never lost
        let first = out.history.iter().position(Option::is_some).unwrap();
        assert!(out.history[first..].iter().all(Option::is_some));
    }

    #[test]
    fn electric_cost_proportional_to_length() {
        let out = city_outcome(3);
        let rate = EdgeCoster::new(e430(), 1.0)
            .unwrap()
            .electric_doc_per_metre(4600.0)
            .unwrap();
        let expected = out.path.total_length * rate;
        assert!((out.path.total_doc - expected).abs() <= 1e-9 * expected);
        let prof = &out.path.profile.summary;
        assert!((prof.total_doc - out.path.total_doc).abs() <= 1e-6 * expected);
    }

    #[test]
    fn open_world_path_is_near_straight() {
        let out = plan(
            &open_world(),
            START,
            GOAL,
            &e430(),
            initial(),
            &PlannerConfig::default(),
        )
        .unwrap();
        let straight = START.distance(&GOAL);
        assert!(out.path.total_length >= straight * (1.0 - 1e-12));
        assert!(out.path.total_length <= 1.05 * straight, "{}", out.path.total_length);
    }

    #[test]
    fn unreachable_goal_reports_statistics() {
        // a wall of discs across the map
        let mut world = open_world();
        for k in 0..=50 {
            world.obstacles.push(crate::planner::CylinderObstacle {
                center: Point::new(5000.0, 100.0 * k as f64),
                radius: 60.0,
                height: 400.0,
                buffer: 10.0,
            });
        }
        let config = PlannerConfig {
            n_samples: 50,
            ..Default::default()
        };
        match plan(&world, START, GOAL, &e430(), initial(), &config) {
            Err(Error::PlanningFailed {
                nodes, closest_to_goal, ..
            }) => {
                assert!(nodes > 1);
                assert!(closest_to_goal > 4000.0);
            }
            other => panic!("expected planning failure, got {:?}", other.map(|o| o.stats)),
        }
    }

    #[test]
    fn rejects_blocked_endpoints() {
        let mut world = open_world();
        world.obstacles.push(crate::planner::CylinderObstacle {
            center: START,
            radius: 50.0,
            height: 400.0,
            buffer: 10.0,
        });
        assert!(matches!(
            plan(&world, START, GOAL, &e430(), initial(), &PlannerConfig::default()),
            Err(Error::Precondition(_))
        ));
        assert!(plan(
            &open_world(),
            Point::new(-1.0, 0.0),
            GOAL,
            &e430(),
            initial(),
            &PlannerConfig::default()
        )
        .is_err());
    }

    #[test]
    fn config_validation() {
        let bad = PlannerConfig {
            n_samples: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = PlannerConfig {
            steer_step: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let r = PlannerConfig::default_radius_scale() * (250f64.ln() / 250.0).sqrt();
        assert!((r - 0.1).abs() < 1e-15);
    }
}
