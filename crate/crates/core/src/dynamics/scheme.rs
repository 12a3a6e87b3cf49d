use serde::{Deserialize, Serialize};

use crate::ensemble::{Configuration, GasModel};
use crate::error::{domain, Result};
use crate::prob::{standard_normal, RngStream};

/// Boundary rule applied after each Euler proposal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Sort the proposal back into the chamber.
    EulerReflected,
    /// Halve the step (refining the Brownian path by bridges) while the
    /// proposal leaves the open chamber; sort once the cap is reached.
    EulerSubstep,
}

impl std::str::FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "euler_reflected" | "euler-reflected" => Ok(Scheme::EulerReflected),
            "euler_substep" | "euler-substep" => Ok(Scheme::EulerSubstep),
            _ => Err(format!("unknown scheme {s:?} (expected euler_reflected or euler_substep)")),
        }
    }
}

pub const DEFAULT_DT_GUARD: f64 = 0.1;
pub const DEFAULT_SUBSTEP_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DouParams {
    model: GasModel,
    dt: f64,
    t_end: f64,
    scheme: Scheme,
    dt_guard: f64,
    substep_cap: u32,
    interaction: bool,
    noise: bool,
}

impl DouParams {
    /// Requires `0 < dt <= 0.1 / rho`; see [`DouParams::with_guard`].
    pub fn new(model: GasModel, dt: f64, t_end: f64, scheme: Scheme) -> Result<Self> {
        Self::with_guard(model, dt, t_end, scheme, DEFAULT_DT_GUARD)
    }

    /// As [`DouParams::new`] with `dt * rho <= dt_guard` in place of the default guard.
    pub fn with_guard(model: GasModel, dt: f64, t_end: f64, scheme: Scheme, dt_guard: f64) -> Result<Self> {
        Self {
            model,
            dt,
            t_end,
            scheme,
            dt_guard,
            substep_cap: DEFAULT_SUBSTEP_CAP,
            interaction: true,
            noise: true,
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return domain(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return domain(format!("t_end must be positive, got {}", self.t_end));
        }
        if !(self.dt_guard > 0.0) {
            return domain("dt guard must be positive");
        }
        let max_dt = self.dt_guard / self.model.rho();
        if self.dt > max_dt {
            return domain(format!(
                "dt = {} exceeds the stability guard {} / rho = {max_dt}",
                self.dt, self.dt_guard
            ));
        }
        Ok(self)
    }

    /// Largest number of dyadic halvings of one step (at most `2^cap` substeps).
    pub fn with_substep_cap(mut self, cap: u32) -> Result<Self> {
        if cap > 40 {
            return domain(format!("substep cap {cap} too large (max 40)"));
        }
        self.substep_cap = cap;
        Ok(self)
    }

    /// Drops the pairwise repulsion (test hook).
    pub fn without_interaction(mut self) -> Self {
        self.interaction = false;
        self
    }

    /// Drives the dynamics with zero noise (test hook).
    pub fn without_noise(mut self) -> Self {
        self.noise = false;
        self
    }

    pub fn model(&self) -> &GasModel {
        &self.model
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn n_steps(&self) -> u64 {
        (self.t_end / self.dt).round().max(1.0) as u64
    }

    /// Default burn-in `10 / rho` before stationary statistics.
    pub fn default_burn_in(&self) -> f64 {
        10.0 / self.model.rho()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathState {
    pub t: f64,
    pub x: Configuration,
    /// Total L¹ displacement applied by sorting (discrete local time).
    pub boundary_pushes: f64,
    /// Steps whose unconstrained proposal left the open chamber.
    pub interventions: u64,
    /// Substep refinements that hit the cap and were sorted instead.
    pub flagged: u64,
    pub steps: u64,
}

impl PathState {
    pub fn new(x: Configuration) -> Self {
        Self {
            t: 0.0,
            x,
            boundary_pushes: 0.0,
            interventions: 0,
            flagged: 0,
            steps: 0,
        }
    }
}

/// Noise of one step: the increments `sqrt(2) (B_{t+dt} - B_t)` and, for the
/// substep scheme, a stream from which bridge refinements are derived.
/// Refinement node `k` (heap numbering, root 1) always uses `refine.fork(k)`,
/// so two chains fed the same `StepNoise` see the same Brownian path.
#[derive(Clone, Debug)]
pub struct StepNoise {
    increments: Vec<f64>,
    refine: Option<RngStream>,
}

impl StepNoise {
    pub fn draw(params: &DouParams, rng: &mut RngStream) -> Self {
        let n = params.model.n();
        if !params.noise {
            return Self::zero(n);
        }
        let scale = (2.0 * params.dt).sqrt();
        let increments = (0..n).map(|_| scale * standard_normal(rng)).collect();
        let refine = match params.scheme {
            Scheme::EulerSubstep => {
                let key = rng.next_u64();
                Some(rng.fork(key))
            }
            Scheme::EulerReflected => None,
        };
        Self { increments, refine }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            increments: vec![0.0; n],
            refine: None,
        }
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    fn bridge(&self, node: u64, n: usize) -> Vec<f64> {
        match &self.refine {
            Some(r) => {
                let mut s = r.fork(node);
                (0..n).map(|_| standard_normal(&mut s)).collect()
            }
            None => vec![0.0; n],
        }
    }
}

fn strictly_decreasing(y: &[f64]) -> bool {
    y.windows(2).all(|w| w[0] > w[1])
}

fn euler_proposal(params: &DouParams, x: &[f64], h: f64, inc: &[f64], drift: &mut [f64]) -> Vec<f64> {
    params.model.drift(x, drift, params.interaction);
    x.iter()
        .zip(drift.iter())
        .zip(inc)
        .map(|((xi, b), d)| xi + h * b + d)
        .collect()
}

/// Sorts in place, returning the L¹ displacement.
fn project(y: &mut [f64]) -> f64 {
    let before = y.to_vec();
    y.sort_by(|a, b| b.partial_cmp(a).expect("finite coordinates"));
    before.iter().zip(y.iter()).map(|(a, b)| (a - b).abs()).sum()
}

struct Advance<'a> {
    params: &'a DouParams,
    noise: &'a StepNoise,
    drift: Vec<f64>,
    pushes: f64,
    flagged: u64,
    intervened: bool,
}

impl Advance<'_> {
    fn run(&mut self, x: &[f64], h: f64, inc: &[f64], node: u64, depth: u32) -> Vec<f64> {
        let mut y = euler_proposal(self.params, x, h, inc, &mut self.drift);
        if strictly_decreasing(&y) {
            return y;
        }
        self.intervened = true;
        if self.params.scheme == Scheme::EulerReflected || depth >= self.params.substep_cap {
            if self.params.scheme == Scheme::EulerSubstep {
                self.flagged += 1;
            }
            self.pushes += project(&mut y);
            return y;
        }
        // Brownian bridge: given the sum D over [0, h], the left half is
        // D/2 + sqrt(h/2) Z.
        let z = self.noise.bridge(node, x.len());
        let s = (h / 2.0).sqrt();
        let left: Vec<f64> = inc.iter().zip(&z).map(|(d, z)| 0.5 * d + s * z).collect();
        let right: Vec<f64> = inc.iter().zip(&left).map(|(d, l)| d - l).collect();
        let mid = self.run(x, h / 2.0, &left, 2 * node, depth + 1);
        self.run(&mid, h / 2.0, &right, 2 * node + 1, depth + 1)
    }
}

/// One step driven by the given noise.
pub fn step_with_noise(params: &DouParams, state: &mut PathState, noise: &StepNoise) {
    let mut adv = Advance {
        params,
        noise,
        drift: vec![0.0; state.x.len()],
        pushes: 0.0,
        flagged: 0,
        intervened: false,
    };
    let mut y = adv.run(state.x.points(), params.dt, &noise.increments, 1, 0);
    if !y.windows(2).all(|w| w[0] >= w[1]) {
        adv.pushes += project(&mut y);
    }
    state.x = Configuration::from_sorted_unchecked(y);
    state.boundary_pushes += adv.pushes;
    state.flagged += adv.flagged;
    state.interventions += u64::from(adv.intervened);
    state.steps += 1;
    state.t = state.steps as f64 * params.dt;
}

/// One step with fresh noise from `rng`.
pub fn step(params: &DouParams, state: &mut PathState, rng: &mut RngStream) {
    let noise = StepNoise::draw(params, rng);
    step_with_noise(params, state, &noise);
}

/// Trajectory on `[0, t_end]`, recording the initial state and every
/// `record_every`-th step (the final step is always recorded).
pub fn simulate(params: &DouParams, x0: Configuration, rng: &mut RngStream, record_every: u64) -> Result<Vec<PathState>> {
    if x0.len() != params.model.n() {
        return domain(format!("x0 has {} coordinates, model has n = {}", x0.len(), params.model.n()));
    }
    if record_every == 0 {
        return domain("record_every must be positive");
    }
    let n_steps = params.n_steps();
    let mut state = PathState::new(x0);
    let mut out = vec![state.clone()];
    for k in 1..=n_steps {
        step(params, &mut state, rng);
        if k % record_every == 0 || k == n_steps {
            out.push(state.clone());
        }
    }
    Ok(out)
}
