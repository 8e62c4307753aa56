"""Builders for the optical elements of the gate circuits.

Phase conventions, fixed once for the whole package and pinned by the
oracle-equivalence tests:

* matrix columns are input channels, rows are output channels
  (a†_in[i] -> sum_j M[j, i] a†_out[j]);
* PBS blocks are positive permutations: transmission routes straight
  through with amplitude +1, the vertical block is the swap with +1
  reflection amplitudes;
* the PPBS vertical block is the rotation [[t, -r], [r, t]], so both
  straight-through amplitudes are +t and the two-photon coincidence
  amplitude t^2 - r^2 is negative at t = 1/sqrt(3).

Angles are accepted in degrees, matching how wave-plate settings are
usually quoted on the bench.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fock import H, V, LinearElement, linear_element

#: PPBS vertical-polarization amplitude transmissivity used by the gate.
T_V = 1.0 / math.sqrt(3.0)
#: Horizontal transmissivity of the polarization-sensitive output filter.
T_F2H = 1.0 / math.sqrt(3.0)

#: Polarization map applied on the lower target arm before the two-photon
#: interference: |V> -> (1/2)|H> + (sqrt(3)/2)|V>.  Equals a half-wave plate
#: at 75 degrees.
TARGET_SPLIT_MATRIX = np.array(
    [[-math.sqrt(3.0) / 2.0, 0.5], [0.5, math.sqrt(3.0) / 2.0]], dtype=complex
)

ELEMENT_KINDS = ("pbs", "ppbs", "hwp", "jones", "filter", "phaseflip")


@dataclass(frozen=True)
class ElementSpec:
    """Declarative description of one element: kind, wiring and parameters.

    ``paths`` carries the port wiring (inputs then outputs for beam
    splitters, the single acted-on path otherwise).  ``params`` holds the
    kind-specific numbers: tv for ppbs, the angle for hwp, the row-major
    matrix entries for jones, (th, tv) for filter.  ``line`` remembers the
    source line when the element came from a parsed netlist.
    """

    kind: str
    name: str
    paths: tuple[str, ...]
    params: tuple[complex, ...] = ()
    line: int | None = field(default=None, compare=False)

    def build(self) -> LinearElement:
        if self.kind == "pbs":
            return pbs(*self.paths, name=self.name)
        if self.kind == "ppbs":
            return ppbs(*self.paths, float(self.params[0].real), name=self.name)
        if self.kind == "hwp":
            return hwp(self.paths[0], float(self.params[0].real), name=self.name)
        if self.kind == "jones":
            m = np.array(self.params, dtype=complex).reshape(2, 2)
            return jones(self.paths[0], m, name=self.name)
        if self.kind == "filter":
            return pol_filter(
                self.paths[0],
                float(self.params[0].real),
                float(self.params[1].real),
                name=self.name,
            )
        if self.kind == "phaseflip":
            return phase_flip(self.paths[0], name=self.name)
        raise ValueError(f"unknown element kind {self.kind!r}")


def pbs(in_a: str, in_b: str, out_t: str, out_r: str, name: str = "PBS") -> LinearElement:
    """Polarizing beam splitter: transmits H straight through, reflects V.

    With input ports (a, b) and output ports (t, r): H maps a -> t and
    b -> r with amplitude 1; V maps a -> r and b -> t with amplitude +1.
    Input paths may coincide with output paths (a beam continuing on the
    same line), but the two inputs and the two outputs must each differ.
    """
    if in_a == in_b:
        raise ValueError("pbs input paths must differ")
    if out_t == out_r:
        raise ValueError("pbs output paths must differ")
    matrix = np.zeros((4, 4), dtype=complex)
    matrix[0, 0] = matrix[1, 1] = 1.0  # H block: straight through
    matrix[2, 3] = matrix[3, 2] = 1.0  # V block: positive swap
    return linear_element(
        name,
        ((in_a, H), (in_b, H), (in_a, V), (in_b, V)),
        ((out_t, H), (out_r, H), (out_t, V), (out_r, V)),
        matrix,
    )


def ppbs(
    in_a: str, in_b: str, out_a: str, out_b: str, t_v: float, name: str = "PPBS"
) -> LinearElement:
    """Partially polarizing beam splitter: H passes, V splits with amplitude t_v."""
    if not 0.0 < t_v < 1.0:
        raise ValueError(f"ppbs transmissivity must lie in (0, 1), got {t_v}")
    if in_a == in_b:
        raise ValueError("ppbs input paths must differ")
    if out_a == out_b:
        raise ValueError("ppbs output paths must differ")
    r_v = math.sqrt(1.0 - t_v * t_v)
    matrix = np.eye(4, dtype=complex)
    matrix[2:, 2:] = np.array([[t_v, -r_v], [r_v, t_v]])
    return linear_element(
        name,
        ((in_a, H), (in_b, H), (in_a, V), (in_b, V)),
        ((out_a, H), (out_b, H), (out_a, V), (out_b, V)),
        matrix,
    )


def hwp(path: str, angle_deg: float, name: str = "HWP") -> LinearElement:
    """Half-wave plate at the given fast-axis angle (degrees from horizontal).

    Jones matrix [[cos 2θ, sin 2θ], [sin 2θ, -cos 2θ]]: determinant -1 and
    self-inverse.  22.5° gives the Hadamard, 45° the polarization swap.
    """
    theta = math.radians(angle_deg)
    c, s = math.cos(2.0 * theta), math.sin(2.0 * theta)
    matrix = np.array([[c, s], [s, -c]], dtype=complex)
    return linear_element(name, ((path, H), (path, V)), ((path, H), (path, V)), matrix)


def jones(path: str, matrix: np.ndarray, name: str = "JONES") -> LinearElement:
    """Arbitrary subunitary 2x2 polarization map on one path."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"jones matrix must be 2x2, got shape {m.shape}")
    return linear_element(name, ((path, H), (path, V)), ((path, H), (path, V)), m)


def pol_filter(path: str, t_h: float, t_v: float, name: str = "FILTER") -> LinearElement:
    """Diagonal amplitude filter diag(t_h, t_v); neutral when t_h == t_v."""
    for value in (t_h, t_v):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"filter transmissivity must lie in [0, 1], got {value}")
    return linear_element(
        name,
        ((path, H), (path, V)),
        ((path, H), (path, V)),
        np.diag([t_h, t_v]).astype(complex),
    )


def phase_flip(path: str, name: str = "PLM") -> LinearElement:
    """Feed-forward corrector |V> -> -|V> (diag(1, -1)) on one path."""
    return linear_element(
        name,
        ((path, H), (path, V)),
        ((path, H), (path, V)),
        np.diag([1.0, -1.0]).astype(complex),
    )
