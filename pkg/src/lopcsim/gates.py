"""Netlist execution: branch enumeration, conditional-gate assembly, scoring.

Feed-forward is simulated by exhaustive branch enumeration: every detector
outcome is kept with its exact amplitude, no sampling anywhere.  A branch is
one (detector outcome, accepted target output port) combination together
with the conditional two-qubit state it leaves behind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .elements import ppbs
from .fock import (
    H,
    V,
    FockState,
    ModeLabel,
    ModeRegistry,
    apply_element,
    make_photon_state,
    post_select,
    project_detector,
    two_qubit_amplitudes,
)
from .netlist import CircuitNetlist, NetlistValidationError, validate

_SQ2 = math.sqrt(2.0)

#: Polarization kets for the logical basis: |0> = H, |1> = V.
BASIS_KETS = ((1.0 + 0j, 0j), (0j, 1.0 + 0j))


def ideal_cphase(phi: float) -> np.ndarray:
    """The target two-qubit operation: phase e^{i phi} on |11> only."""
    return np.diag([1.0, 1.0, 1.0, np.exp(1j * phi)]).astype(complex)


@dataclass(frozen=True, eq=False)
class Branch:
    """One accepted (outcome, output port) result for a single input state."""

    outcome: str
    port: str
    amplitudes: np.ndarray  # over |00>, |01>, |10>, |11>
    probability: float

    @property
    def label(self) -> str:
        return f"{self.outcome}:{self.port}"


@dataclass(frozen=True, eq=False)
class GateBranch:
    """Conditional operator of one branch, assembled over the four basis inputs."""

    outcome: str
    port: str
    operator: np.ndarray  # 4x4
    probability: float

    @property
    def label(self) -> str:
        return f"{self.outcome}:{self.port}"


@dataclass(frozen=True, eq=False)
class ConditionalGateReport:
    """Assembled conditional gate and its scores against the ideal operation.

    ``gate`` is the raw conditional operator of the primary branch (first
    declared outcome on the first target output port).  ``branch_consistent``
    records whether every accepted branch equals the primary one up to a
    global phase within 1e-10; the dual-output layouts legitimately fail
    this because the second port carries an extra pi on |11>.
    """

    phi: float
    gate: np.ndarray
    p_success: float
    fidelity: float
    branches: tuple[GateBranch, ...]
    branch_consistent: bool
    diagonal: bool


def prepare_inputs(
    netlist: CircuitNetlist,
    target_ket: Sequence[complex],
    control_ket: Sequence[complex],
    phi: float,
) -> FockState:
    """Three-photon product input: target and control qubits plus the
    phase-programming photon (|H> - e^{i phi}|V>)/sqrt(2)."""
    for name, ket in (("target", target_ket), ("control", control_ket)):
        if len(ket) != 2 or abs(sum(abs(c) ** 2 for c in ket) - 1.0) > 1e-12:
            raise ValueError(f"{name} ket must be a normalized 2-component vector")
    reg = netlist.registry()
    ports = netlist.ports
    photons = [
        [
            (ModeLabel(ports.target_in, H), complex(target_ket[0])),
            (ModeLabel(ports.target_in, V), complex(target_ket[1])),
        ],
        [
            (ModeLabel(ports.control_in, H), complex(control_ket[0])),
            (ModeLabel(ports.control_in, V), complex(control_ket[1])),
        ],
        [
            (ModeLabel(ports.program_in, H), 1.0 / _SQ2 + 0j),
            (ModeLabel(ports.program_in, V), -np.exp(1j * phi) / _SQ2),
        ],
    ]
    return make_photon_state(reg, photons)


def run(netlist: CircuitNetlist, state: FockState) -> list[Branch]:
    """Execute a netlist on a prepared input and enumerate all branches.

    Stages run in order up to the measurement point; each detector outcome
    forks there, applies its feed-forward correction (if any), runs the
    remaining stages, then post-selects one photon on each accepted output
    port, projects the detector photon onto the outcome ket and reads off
    the conditional two-qubit amplitudes.  Probabilities are exact.
    """
    diagnostics = validate(netlist)
    if diagnostics:
        raise NetlistValidationError(diagnostics)
    if state.photon_number != netlist.postselect_total():
        raise ValueError(
            f"input holds {state.photon_number} photons, "
            f"post-selection expects {netlist.postselect_total()}"
        )
    built = [spec.build() for spec in netlist.stages]
    mid = state
    for element in built[: netlist.measure_after]:
        mid = apply_element(mid, element)

    target_ports = netlist.ports.target_out
    base_pattern = [(p, n) for p, n in netlist.postselect if p not in set(target_ports)]
    branches: list[Branch] = []
    for outcome in netlist.measurement.outcomes:
        branch_state = mid
        if outcome.correct is not None:
            branch_state = apply_element(
                branch_state, netlist.correction(outcome.correct).build()
            )
        for element in built[netlist.measure_after:]:
            branch_state = apply_element(branch_state, element)
        for port in target_ports:
            pattern = dict(base_pattern)
            pattern[port] = 1
            selected, _ = post_select(branch_state, pattern)
            detected, _ = project_detector(selected, netlist.measurement.path, outcome.ket)
            amps = two_qubit_amplitudes(detected, port, netlist.ports.control_out)
            probability = float(np.sum(np.abs(amps) ** 2))
            branches.append(Branch(outcome.label, port, amps, probability))
    return branches


def fidelity(gate: np.ndarray, phi: float) -> float:
    """Overlap |Tr(G† U)|^2 / (4 Tr(G† G)) with U = diag(1, 1, 1, e^{i phi}).

    Equals 1 exactly when G is proportional to the ideal operation.
    """
    g = np.asarray(gate, dtype=complex)
    denom = float(np.sum(np.abs(g) ** 2))
    if denom == 0.0:
        raise ValueError("fidelity of the zero operator is undefined")
    overlap = np.trace(g.conj().T @ ideal_cphase(phi))
    return float(abs(overlap) ** 2 / (4.0 * denom))


def conditional_gate(
    netlist: CircuitNetlist,
    phi: float,
    branch_tol: float = 1e-10,
    diag_tol: float = 1e-12,
) -> ConditionalGateReport:
    """Run the four basis inputs and assemble the conditional operator per branch."""
    operators: dict[tuple[str, str], np.ndarray] = {}
    order: list[tuple[str, str]] = []
    for t_bit in (0, 1):
        for c_bit in (0, 1):
            state = prepare_inputs(netlist, BASIS_KETS[t_bit], BASIS_KETS[c_bit], phi)
            for branch in run(netlist, state):
                key = (branch.outcome, branch.port)
                if key not in operators:
                    operators[key] = np.zeros((4, 4), dtype=complex)
                    order.append(key)
                operators[key][:, 2 * t_bit + c_bit] = branch.amplitudes

    branches = tuple(
        GateBranch(o, p, operators[(o, p)], float(np.sum(np.abs(operators[(o, p)][:, 0]) ** 2)))
        for o, p in order
    )
    primary = branches[0].operator
    p_success = float(sum(b.probability for b in branches))

    ref_flat = primary.ravel()
    ref_idx = int(np.argmax(np.abs(ref_flat)))
    consistent = True
    for branch in branches:
        ratio = branch.operator.ravel()[ref_idx]
        phase = ratio / abs(ratio) if abs(ratio) > 0 else 1.0
        if np.max(np.abs(branch.operator - phase * primary)) > branch_tol:
            consistent = False
    diagonal = all(
        float(np.max(np.abs(b.operator - np.diag(np.diag(b.operator))))) <= diag_tol
        for b in branches
    )
    return ConditionalGateReport(
        phi=float(phi),
        gate=primary,
        p_success=p_success,
        fidelity=fidelity(primary, phi),
        branches=branches,
        branch_consistent=consistent,
        diagonal=diagonal,
    )


def success_probability(
    netlist: CircuitNetlist,
    target_ket: Sequence[complex],
    control_ket: Sequence[complex],
    phi: float,
) -> float:
    """Total accepted-branch probability for one product input."""
    state = prepare_inputs(netlist, target_ket, control_ket, phi)
    return float(sum(branch.probability for branch in run(netlist, state)))


@dataclass(frozen=True)
class SweepRow:
    phi: float
    p_success: float
    fidelity: float
    branch_probs: tuple[tuple[str, float], ...]


def sweep_phi(netlist: CircuitNetlist, phi_grid: Sequence[float]) -> list[SweepRow]:
    """Evaluate the gate over a phase grid; one row per phase, deterministic."""
    if len(phi_grid) == 0:
        raise ValueError("phase grid must not be empty")
    rows = []
    for phi in phi_grid:
        report = conditional_gate(netlist, float(phi))
        rows.append(
            SweepRow(
                phi=float(phi),
                p_success=report.p_success,
                fidelity=report.fidelity,
                branch_probs=tuple((b.label, b.probability) for b in report.branches),
            )
        )
    return rows


def hom_scan(t_v: float, overlap_grid: Sequence[float]) -> list[tuple[float, float]]:
    """Two-photon interference scan against wavepacket overlap.

    Two vertically polarized photons enter the two ports of a partially
    polarizing splitter; the second photon carries amplitude sqrt(v) in the
    shared wavepacket and sqrt(1-v) in an orthogonal one.  Returns the
    coincidence probability (one photon per output path, summed over
    wavepacket indices) for each overlap v:
    P(v) = v (t^2 - r^2)^2 + (1 - v)(t^4 + r^4).
    """
    if not 0.0 < t_v < 1.0:
        raise ValueError(f"transmissivity must lie in (0, 1), got {t_v}")
    registry = ModeRegistry(("a", "b"), internal_count=2)
    splitter = ppbs("a", "b", "a", "b", t_v)
    rows = []
    for v in overlap_grid:
        v = float(v)
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"overlap must lie in [0, 1], got {v}")
        photons = [
            [(ModeLabel("a", V, 0), 1.0 + 0j)],
            [
                (ModeLabel("b", V, 0), complex(math.sqrt(v))),
                (ModeLabel("b", V, 1), complex(math.sqrt(1.0 - v))),
            ],
        ]
        state = make_photon_state(registry, photons)
        _, probability = post_select(apply_element(state, splitter), {"a": 1, "b": 1})
        rows.append((v, float(probability)))
    return rows
