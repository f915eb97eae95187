//! Monitored brickwork circuits and the reference-qubit probe protocols.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::CliffordTwoQubit;
use crate::density::TwoQubitDensity;
use crate::error::{Error, Result};
use crate::graphstate::{tableau_to_graph, Graph, LocalCorrections};
use crate::rng::{Stream, StreamKey};
use crate::tableau::{Gate, StabilizerTableau};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    /// System qubits only.
    #[default]
    Plain,
    /// Reference `R1` Bell-paired with one system site.
    OneReference,
    /// `R1` as above plus an idle `R2`, coupled to `R1` after the evolution.
    TwoAncilla,
}

impl Protocol {
    pub fn references(self) -> usize {
        match self {
            Protocol::Plain => 0,
            Protocol::OneReference => 1,
            Protocol::TwoAncilla => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Plain => "plain",
            Protocol::OneReference => "one_reference",
            Protocol::TwoAncilla => "two_ancilla",
        }
    }
}

impl std::fmt::Display for Protocol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Protocol::Plain),
            "one_reference" => Ok(Protocol::OneReference),
            "two_ancilla" => Ok(Protocol::TwoAncilla),
            _ => Err(Error::InvalidConfig(format!("unknown protocol {s:?}"))),
        }
    }
}

/// Two-qubit gate applied to `(R1, R2)` at the end of the two-ancilla protocol.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FinalGate {
    /// Uniformly random two-qubit Clifford drawn from the gate stream.
    #[default]
    RandomClifford,
    /// CNOT with control `R1`, target `R2`.
    Cnot,
    /// CNOT with control `R2`, target `R1`.
    CnotReversed,
}

impl FinalGate {
    pub fn name(self) -> &'static str {
        match self {
            FinalGate::RandomClifford => "random_clifford",
            FinalGate::Cnot => "cnot",
            FinalGate::CnotReversed => "cnot_reversed",
        }
    }
}

impl std::fmt::Display for FinalGate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FinalGate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_clifford" => Ok(FinalGate::RandomClifford),
            "cnot" => Ok(FinalGate::Cnot),
            "cnot_reversed" => Ok(FinalGate::CnotReversed),
            _ => Err(Error::InvalidConfig(format!("unknown final gate {s:?}"))),
        }
    }
}

/// Product state the system starts in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    #[default]
    Zero,
    Plus,
}

/// Everything needed to replay one monitored realization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitConfig {
    /// System size `L`.
    pub size: usize,
    /// Measurement probability per site per layer.
    pub p: f64,
    /// Number of brick layers `T`.
    pub layers: usize,
    pub seed: u64,
    /// Realization index within the ensemble; part of the RNG key.
    pub realization: u64,
    pub protocol: Protocol,
    /// System site Bell-paired with `R1`.
    pub attach_site: usize,
    /// Number of brick layers run before `R1` is attached (0 = at the start).
    #[serde(default)]
    pub attach_layer: usize,
    pub final_gate: FinalGate,
    #[serde(default)]
    pub initial_state: InitialState,
    /// Measure after every `measure_every`-th brick layer (1 = every layer).
    pub measure_every: usize,
}

impl CircuitConfig {
    /// Defaults: `T = 4L`, `R1` attached at `⌊L/2⌋`, plain protocol.
    pub fn new(size: usize, p: f64) -> Self {
        Self {
            size,
            p,
            layers: 4 * size,
            seed: 0,
            realization: 0,
            protocol: Protocol::Plain,
            attach_site: size / 2,
            attach_layer: 0,
            final_gate: FinalGate::default(),
            initial_state: InitialState::Zero,
            measure_every: 1,
        }
    }

    pub fn with_protocol(mut self, protocol: Protocol) -> Self {
        self.protocol = protocol;
        self
    }

    pub fn with_layers(mut self, layers: usize) -> Self {
        self.layers = layers;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_realization(mut self, realization: u64) -> Self {
        self.realization = realization;
        self
    }

    pub fn with_attach_layer(mut self, layer: usize) -> Self {
        self.attach_layer = layer;
        self
    }

    pub fn with_initial_state(mut self, state: InitialState) -> Self {
        self.initial_state = state;
        self
    }

    pub fn with_final_gate(mut self, gate: FinalGate) -> Self {
        self.final_gate = gate;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.size < 2 {
            return bad(format!("system size {} < 2", self.size));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return bad(format!("measurement probability {} outside [0, 1]", self.p));
        }
        if self.layers == 0 {
            return bad("at least one layer required".into());
        }
        if self.attach_site >= self.size {
            return bad(format!("attach site {} >= L = {}", self.attach_site, self.size));
        }
        if self.attach_layer >= self.layers {
            return bad(format!("attach layer {} >= T = {}", self.attach_layer, self.layers));
        }
        if self.measure_every == 0 {
            return bad("measure_every must be positive".into());
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.size + self.protocol.references()
    }

    pub fn key(&self) -> StreamKey {
        StreamKey::new(self.seed, self.realization)
    }
}

/// One projective measurement performed during the evolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub site: usize,
    /// 1-based layer index.
    pub layer: usize,
    pub outcome: u8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizationOutput {
    pub graph: Graph,
    pub corrections: LocalCorrections,
    pub log: Vec<MeasurementRecord>,
    /// Vertex indices of `R1` (and `R2`).
    pub references: Vec<usize>,
    pub tableau: StabilizerTableau,
}

/// Bonds of layer `t` (1-based) on an open chain of `size` sites: even `t`
/// couples `(0,1), (2,3), …`, odd `t` couples `(1,2), (3,4), …`.
pub fn brick_bonds(size: usize, t: usize) -> impl Iterator<Item = (usize, usize)> {
    let start = if t.is_multiple_of(2) { 0 } else { 1 };
    (start..size.saturating_sub(1)).step_by(2).map(|a| (a, a + 1))
}

fn evolve(cfg: &CircuitConfig) -> Result<(StabilizerTableau, Vec<MeasurementRecord>)> {
    cfg.validate()?;
    let key = cfg.key();
    let mut gates = key.rng(Stream::Gates);
    let mut placement = key.rng(Stream::Placement);
    let mut outcomes = key.rng(Stream::Outcomes);

    let l = cfg.size;
    let mut t = StabilizerTableau::new(cfg.num_qubits())?;
    if cfg.initial_state == InitialState::Plus {
        for q in 0..l {
            t.apply(&Gate::H(q))?;
        }
    }
    let attach = |t: &mut StabilizerTableau| -> Result<()> {
        if cfg.protocol.references() > 0 {
            t.apply(&Gate::H(l))?;
            t.apply(&Gate::Cnot(l, cfg.attach_site))?;
        }
        Ok(())
    };

    let mut log = Vec::new();
    for layer in 1..=cfg.layers {
        if layer == cfg.attach_layer + 1 {
            attach(&mut t)?;
        }
        for (a, b) in brick_bonds(l, layer) {
            t.apply(&Gate::Clifford(CliffordTwoQubit::sample(&mut gates), a, b))?;
        }
        if layer % cfg.measure_every != 0 {
            continue;
        }
        for site in 0..l {
            if placement.random_bool(cfg.p) {
                let m = t.measure_z(site, &mut outcomes)?;
                log.push(MeasurementRecord { site, layer, outcome: m.bit() });
            }
        }
    }

    if cfg.protocol == Protocol::TwoAncilla {
        let (r1, r2) = (l, l + 1);
        let gate = match cfg.final_gate {
            FinalGate::RandomClifford => Gate::Clifford(CliffordTwoQubit::sample(&mut gates), r1, r2),
            FinalGate::Cnot => Gate::Cnot(r1, r2),
            FinalGate::CnotReversed => Gate::Cnot(r2, r1),
        };
        t.apply(&gate)?;
    }
    Ok((t, log))
}

fn finish(cfg: &CircuitConfig, tableau: StabilizerTableau, log: Vec<MeasurementRecord>) -> Result<RealizationOutput> {
    let (graph, corrections) = tableau_to_graph(&tableau)?;
    let references = (cfg.size..cfg.num_qubits()).collect();
    Ok(RealizationOutput { graph, corrections, log, references, tableau })
}

fn require(cfg: &CircuitConfig, protocol: Protocol) -> Result<()> {
    if cfg.protocol != protocol {
        return Err(Error::InvalidConfig(format!(
            "expected protocol {}, got {}",
            protocol.name(),
            cfg.protocol.name()
        )));
    }
    Ok(())
}

/// Plain monitored evolution from `|0…0⟩`.
pub fn run_realization(cfg: &CircuitConfig) -> Result<RealizationOutput> {
    require(cfg, Protocol::Plain)?;
    let (t, log) = evolve(cfg)?;
    finish(cfg, t, log)
}

/// Evolution with reference `R1` (vertex `L`) Bell-paired with the attach
/// site; gates and measurements act on system qubits only.
pub fn run_with_reference(cfg: &CircuitConfig) -> Result<RealizationOutput> {
    require(cfg, Protocol::OneReference)?;
    let (t, log) = evolve(cfg)?;
    finish(cfg, t, log)
}

/// As [`run_with_reference`] plus `R2` (vertex `L+1`) in `|0⟩`; the final
/// gate couples `R1` and `R2`, and their reduced state is returned.
pub fn run_two_ancilla(cfg: &CircuitConfig) -> Result<(RealizationOutput, TwoQubitDensity)> {
    require(cfg, Protocol::TwoAncilla)?;
    let (mut t, log) = evolve(cfg)?;
    let rho = t.reduced_density_2q(cfg.size, cfg.size + 1)?;
    Ok((finish(cfg, t, log)?, rho))
}

/// Run whichever protocol `cfg` names.
pub fn run(cfg: &CircuitConfig) -> Result<(RealizationOutput, Option<TwoQubitDensity>)> {
    match cfg.protocol {
        Protocol::Plain => run_realization(cfg).map(|o| (o, None)),
        Protocol::OneReference => run_with_reference(cfg).map(|o| (o, None)),
        Protocol::TwoAncilla => run_two_ancilla(cfg).map(|(o, rho)| (o, Some(rho))),
    }
}
