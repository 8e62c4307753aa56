"""lopcsim: simulator and verification harness for a post-selected
linear-optical controlled-phase gate whose phase is set by a third,
detected "program" photon."""

__version__ = "0.1.0"

from .elements import ElementSpec, hwp, jones, pbs, phase_flip, pol_filter, ppbs
from .fock import (
    FockState,
    LinearElement,
    ModeLabel,
    ModeRegistry,
    apply_element,
    linear_element,
    make_photon_state,
    post_select,
    project_detector,
    two_qubit_amplitudes,
)
from .gates import (
    Branch,
    ConditionalGateReport,
    GateBranch,
    SweepRow,
    conditional_gate,
    fidelity,
    hom_scan,
    ideal_cphase,
    prepare_inputs,
    run,
    success_probability,
    sweep_phi,
)
from .netlist import (
    CircuitNetlist,
    MeasurementOutcome,
    MeasurementRule,
    NetlistError,
    NetlistValidationError,
    Ports,
    builtin_basic,
    builtin_optimized,
    builtin_variant,
    parse,
    render,
    strip_corrections,
    validate,
)
from .oracle import OracleBranch, OraclePath, branch_table, oracle_conditional_gate, path_amplitude

__all__ = [
    "__version__",
    "Branch",
    "CircuitNetlist",
    "ConditionalGateReport",
    "ElementSpec",
    "FockState",
    "GateBranch",
    "LinearElement",
    "MeasurementOutcome",
    "MeasurementRule",
    "ModeLabel",
    "ModeRegistry",
    "NetlistError",
    "NetlistValidationError",
    "OracleBranch",
    "OraclePath",
    "Ports",
    "SweepRow",
    "apply_element",
    "branch_table",
    "builtin_basic",
    "builtin_optimized",
    "builtin_variant",
    "conditional_gate",
    "fidelity",
    "hom_scan",
    "hwp",
    "ideal_cphase",
    "jones",
    "linear_element",
    "make_photon_state",
    "oracle_conditional_gate",
    "parse",
    "path_amplitude",
    "pbs",
    "phase_flip",
    "pol_filter",
    "post_select",
    "ppbs",
    "prepare_inputs",
    "project_detector",
    "render",
    "run",
    "strip_corrections",
    "success_probability",
    "sweep_phi",
    "two_qubit_amplitudes",
    "validate",
]
