"""Textual circuit descriptions: parser, renderer, validator and the
built-in gate layouts.

A netlist is line based, one statement per line, ``#`` starts a comment:

    path <name>
    pbs <name> in=<p1>,<p2> out=<p3>,<p4>
    ppbs <name> in=<p1>,<p2> out=<p3>,<p4> tv=<float>
    hwp <name> path=<p> angle=<deg>
    jones <name> path=<p> m=<a>,<b>,<c>,<d>
    filter <name> path=<p> th=<float> tv=<float>
    phaseflip <name> path=<p>
    measure path=<p> outcome <label> ket=<a>,<b> [correct=<element-name>]
    postselect <p>=<n> ...
    ports target_in=<p> control_in=<p> program_in=<p> target_out=<p>[,<p>] control_out=<p>

Complex literals are ``re`` or ``re+imj``.  Paths must be declared before
use.  Element statements execute in file order; the position of the
``measure`` lines among them marks where measurement-conditioned
corrections are inserted.  An element referenced by some ``correct=`` is a
conditional correction and is excluded from the unconditional stage flow.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

import numpy as np

from .elements import T_F2H, T_V, TARGET_SPLIT_MATRIX, ElementSpec
from .fock import ModeRegistry

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_SQ2 = math.sqrt(2.0)

VARIANTS = {
    "basic": (False, False),
    "ff": (True, False),
    "dual": (False, True),
    "full": (True, True),
}


class NetlistError(ValueError):
    """Parse or structural error, located at (line, col) when known."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


class NetlistValidationError(ValueError):
    """A netlist failed validation; carries the diagnostic list."""

    def __init__(self, diagnostics: list[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


@dataclass(frozen=True)
class MeasurementOutcome:
    label: str
    ket: tuple[complex, complex]
    correct: str | None = None


@dataclass(frozen=True)
class MeasurementRule:
    path: str
    outcomes: tuple[MeasurementOutcome, ...]


@dataclass(frozen=True)
class Ports:
    target_in: str
    control_in: str
    program_in: str
    target_out: tuple[str, ...]
    control_out: str


@dataclass(frozen=True)
class CircuitNetlist:
    """Validated circuit description: ordered stages plus measurement rules.

    ``measure_after`` is the number of unconditional stages applied before
    the measurement point; feed-forward corrections act there.
    """

    paths: tuple[str, ...]
    stages: tuple[ElementSpec, ...]
    corrections: tuple[ElementSpec, ...]
    measurement: MeasurementRule
    measure_after: int
    postselect: tuple[tuple[str, int], ...]
    ports: Ports

    def registry(self, internal_count: int = 1) -> ModeRegistry:
        return ModeRegistry(self.paths, internal_count)

    def correction(self, name: str) -> ElementSpec:
        for spec in self.corrections:
            if spec.name == name:
                return spec
        raise KeyError(f"no correction element named {name!r}")

    def postselect_total(self) -> int:
        return sum(n for _, n in self.postselect)


# ---------------------------------------------------------------------------
# parsing


def _parse_complex(token: str, line: int, col: int) -> complex:
    try:
        return complex(token)
    except ValueError:
        raise NetlistError(f"invalid complex literal {token!r}", line, col) from None


def _parse_float(token: str, line: int, col: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise NetlistError(f"invalid number {token!r}", line, col) from None


def _parse_int(token: str, line: int, col: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise NetlistError(f"invalid integer {token!r}", line, col) from None


class _Parser:
    def __init__(self) -> None:
        self.paths: list[str] = []
        self.elements: list[ElementSpec] = []
        self.names: dict[str, int] = {}
        self.measure_path: str | None = None
        self.outcomes: list[MeasurementOutcome] = []
        self.measure_lines: list[int] = []
        self.elements_before_measure: int | None = None
        self.postselect: list[tuple[str, int]] | None = None
        self.postselect_line = 0
        self.ports: Ports | None = None
        self.last_line = 0

    # -- helpers ----------------------------------------------------------

    def _ident(self, tok: tuple[str, int], line: int, what: str) -> str:
        word, col = tok
        if not _IDENT.match(word):
            raise NetlistError(f"invalid {what} {word!r}", line, col)
        return word

    def _known_path(self, name: str, line: int, col: int) -> str:
        if name not in self.paths:
            raise NetlistError(f"undeclared path {name!r}", line, col)
        return name

    def _kv(self, tok: tuple[str, int], line: int, key: str) -> tuple[str, int]:
        word, col = tok
        prefix = key + "="
        if not word.startswith(prefix):
            raise NetlistError(f"expected {key}=..., got {word!r}", line, col)
        return word[len(prefix):], col + len(prefix)

    def _arity(self, toks, line: int, n: int, usage: str) -> None:
        if len(toks) != n:
            raise NetlistError(f"expected {usage}", line, toks[0][1])

    def _new_name(self, tok: tuple[str, int], line: int) -> str:
        name = self._ident(tok, line, "element name")
        if name in self.names:
            raise NetlistError(f"duplicate element name {name!r}", line, tok[1])
        self.names[name] = line
        return name

    def _path_list(self, value: str, line: int, col: int, count: int) -> tuple[str, ...]:
        parts = value.split(",")
        if len(parts) != count:
            raise NetlistError(f"expected {count} comma-separated paths", line, col)
        return tuple(self._known_path(p, line, col) for p in parts)

    # -- statement handlers -------------------------------------------------

    def stmt_path(self, toks, line: int) -> None:
        self._arity(toks, line, 2, "path <name>")
        name = self._ident(toks[1], line, "path name")
        if name in self.paths:
            raise NetlistError(f"duplicate path {name!r}", line, toks[1][1])
        self.paths.append(name)

    def _stmt_splitter(self, kind: str, toks, line: int) -> None:
        usage = f"{kind} <name> in=<p1>,<p2> out=<p3>,<p4>" + (
            " tv=<float>" if kind == "ppbs" else ""
        )
        self._arity(toks, line, 5 if kind == "ppbs" else 4, usage)
        name = self._new_name(toks[1], line)
        ins_val, ins_col = self._kv(toks[2], line, "in")
        outs_val, outs_col = self._kv(toks[3], line, "out")
        ins = self._path_list(ins_val, line, ins_col, 2)
        outs = self._path_list(outs_val, line, outs_col, 2)
        params: tuple[complex, ...] = ()
        if kind == "ppbs":
            tv_val, tv_col = self._kv(toks[4], line, "tv")
            params = (complex(_parse_float(tv_val, line, tv_col)),)
        self.elements.append(ElementSpec(kind, name, ins + outs, params, line=line))

    def stmt_pbs(self, toks, line: int) -> None:
        self._stmt_splitter("pbs", toks, line)

    def stmt_ppbs(self, toks, line: int) -> None:
        self._stmt_splitter("ppbs", toks, line)

    def stmt_hwp(self, toks, line: int) -> None:
        self._arity(toks, line, 4, "hwp <name> path=<p> angle=<deg>")
        name = self._new_name(toks[1], line)
        path_val, path_col = self._kv(toks[2], line, "path")
        angle_val, angle_col = self._kv(toks[3], line, "angle")
        path = self._known_path(path_val, line, path_col)
        angle = _parse_float(angle_val, line, angle_col)
        self.elements.append(ElementSpec("hwp", name, (path,), (complex(angle),), line=line))

    def stmt_jones(self, toks, line: int) -> None:
        self._arity(toks, line, 4, "jones <name> path=<p> m=<a>,<b>,<c>,<d>")
        name = self._new_name(toks[1], line)
        path_val, path_col = self._kv(toks[2], line, "path")
        m_val, m_col = self._kv(toks[3], line, "m")
        path = self._known_path(path_val, line, path_col)
        entries = m_val.split(",")
        if len(entries) != 4:
            raise NetlistError("jones matrix needs 4 row-major entries", line, m_col)
        params = tuple(_parse_complex(e, line, m_col) for e in entries)
        self.elements.append(ElementSpec("jones", name, (path,), params, line=line))

    def stmt_filter(self, toks, line: int) -> None:
        self._arity(toks, line, 5, "filter <name> path=<p> th=<float> tv=<float>")
        name = self._new_name(toks[1], line)
        path_val, path_col = self._kv(toks[2], line, "path")
        th_val, th_col = self._kv(toks[3], line, "th")
        tv_val, tv_col = self._kv(toks[4], line, "tv")
        path = self._known_path(path_val, line, path_col)
        th = _parse_float(th_val, line, th_col)
        tv = _parse_float(tv_val, line, tv_col)
        self.elements.append(
            ElementSpec("filter", name, (path,), (complex(th), complex(tv)), line=line)
        )

    def stmt_phaseflip(self, toks, line: int) -> None:
        self._arity(toks, line, 3, "phaseflip <name> path=<p>")
        name = self._new_name(toks[1], line)
        path_val, path_col = self._kv(toks[2], line, "path")
        path = self._known_path(path_val, line, path_col)
        self.elements.append(ElementSpec("phaseflip", name, (path,), (), line=line))

    def stmt_measure(self, toks, line: int) -> None:
        if len(toks) not in (5, 6):
            raise NetlistError(
                "expected measure path=<p> outcome <label> ket=<a>,<b> [correct=<name>]",
                line,
                toks[0][1],
            )
        path_val, path_col = self._kv(toks[1], line, "path")
        path = self._known_path(path_val, line, path_col)
        if toks[2][0] != "outcome":
            raise NetlistError(f"expected 'outcome', got {toks[2][0]!r}", line, toks[2][1])
        label = self._ident(toks[3], line, "outcome label")
        ket_val, ket_col = self._kv(toks[4], line, "ket")
        entries = ket_val.split(",")
        if len(entries) != 2:
            raise NetlistError("measurement ket needs 2 components", line, ket_col)
        ket = tuple(_parse_complex(e, line, ket_col) for e in entries)
        correct: str | None = None
        if len(toks) == 6:
            correct_val, correct_col = self._kv(toks[5], line, "correct")
            correct = self._ident((correct_val, correct_col), line, "correction name")
        if self.measure_path is None:
            self.measure_path = path
            self.elements_before_measure = len(self.elements)
        elif self.measure_path != path:
            raise NetlistError(
                f"measurement path {path!r} conflicts with earlier {self.measure_path!r}",
                line,
                path_col,
            )
        if any(o.label == label for o in self.outcomes):
            raise NetlistError(f"duplicate outcome label {label!r}", line, toks[3][1])
        self.outcomes.append(MeasurementOutcome(label, (ket[0], ket[1]), correct))
        self.measure_lines.append(line)

    def stmt_postselect(self, toks, line: int) -> None:
        if self.postselect is not None:
            raise NetlistError("duplicate postselect statement", line, toks[0][1])
        if len(toks) < 2:
            raise NetlistError("expected postselect <path>=<count> ...", line, toks[0][1])
        pattern: list[tuple[str, int]] = []
        for word, col in toks[1:]:
            if "=" not in word:
                raise NetlistError(f"expected <path>=<count>, got {word!r}", line, col)
            path, count_text = word.split("=", 1)
            path = self._known_path(path, line, col)
            if any(p == path for p, _ in pattern):
                raise NetlistError(f"duplicate path {path!r} in postselect", line, col)
            count = _parse_int(count_text, line, col + len(path) + 1)
            if count < 0:
                raise NetlistError("postselect counts must be non-negative", line, col)
            pattern.append((path, count))
        self.postselect = pattern
        self.postselect_line = line

    def stmt_ports(self, toks, line: int) -> None:
        if self.ports is not None:
            raise NetlistError("duplicate ports statement", line, toks[0][1])
        self._arity(
            toks,
            line,
            6,
            "ports target_in=<p> control_in=<p> program_in=<p> "
            "target_out=<p>[,<p>] control_out=<p>",
        )
        t_in, col = self._kv(toks[1], line, "target_in")
        t_in = self._known_path(t_in, line, col)
        c_in, col = self._kv(toks[2], line, "control_in")
        c_in = self._known_path(c_in, line, col)
        p_in, col = self._kv(toks[3], line, "program_in")
        p_in = self._known_path(p_in, line, col)
        t_out_val, col = self._kv(toks[4], line, "target_out")
        t_out = tuple(self._known_path(p, line, col) for p in t_out_val.split(","))
        c_out, col = self._kv(toks[5], line, "control_out")
        c_out = self._known_path(c_out, line, col)
        self.ports = Ports(t_in, c_in, p_in, t_out, c_out)

    # -- assembly -----------------------------------------------------------

    def finish(self) -> CircuitNetlist:
        eol = self.last_line
        if self.postselect is None:
            raise NetlistError("no postselect declared", eol)
        if self.ports is None:
            raise NetlistError("no ports declared", eol)
        if self.measure_path is None:
            raise NetlistError("no measurement declared", eol)
        budget = 3  # one photon per declared input port
        total = sum(n for _, n in self.postselect)
        if total != budget:
            raise NetlistError(
                f"postselect totals {total} photons, expected budget {budget}",
                self.postselect_line,
            )
        kets = [np.array(o.ket, dtype=complex) for o in self.outcomes]
        for i, k in enumerate(kets):
            if abs(np.vdot(k, k).real - 1.0) > 1e-12:
                raise NetlistError(
                    f"outcome {self.outcomes[i].label!r} ket is not normalized",
                    self.measure_lines[i],
                )
            for j in range(i):
                if abs(np.vdot(kets[j], k)) > 1e-12:
                    raise NetlistError(
                        f"outcome kets {self.outcomes[j].label!r} and "
                        f"{self.outcomes[i].label!r} are not orthogonal",
                        self.measure_lines[i],
                    )
        conditional = {o.correct for o in self.outcomes if o.correct is not None}
        for name in sorted(conditional):
            if name not in self.names:
                raise NetlistError(f"correct= references unknown element {name!r}", eol)
        stages = tuple(e for e in self.elements if e.name not in conditional)
        corrections = tuple(e for e in self.elements if e.name in conditional)
        before = self.elements[: self.elements_before_measure]
        measure_after = sum(1 for e in before if e.name not in conditional)
        return CircuitNetlist(
            paths=tuple(self.paths),
            stages=stages,
            corrections=corrections,
            measurement=MeasurementRule(self.measure_path, tuple(self.outcomes)),
            measure_after=measure_after,
            postselect=tuple(self.postselect),
            ports=self.ports,
        )


_HANDLERS = {
    "path": _Parser.stmt_path,
    "pbs": _Parser.stmt_pbs,
    "ppbs": _Parser.stmt_ppbs,
    "hwp": _Parser.stmt_hwp,
    "jones": _Parser.stmt_jones,
    "filter": _Parser.stmt_filter,
    "phaseflip": _Parser.stmt_phaseflip,
    "measure": _Parser.stmt_measure,
    "postselect": _Parser.stmt_postselect,
    "ports": _Parser.stmt_ports,
}


def parse(text: str) -> CircuitNetlist:
    """Parse a netlist from its textual form; deterministic, located errors."""
    parser = _Parser()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parser.last_line = lineno
        code = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", code)]
        if not toks:
            continue
        keyword, col = toks[0]
        handler = _HANDLERS.get(keyword)
        if handler is None:
            raise NetlistError(f"unknown keyword {keyword!r}", lineno, col)
        handler(parser, toks, lineno)
    return parser.finish()


# ---------------------------------------------------------------------------
# rendering


def _fmt_float(value: float) -> str:
    return repr(float(value))


def _fmt_complex(value: complex) -> str:
    z = complex(value)
    if z.imag == 0.0:
        return _fmt_float(z.real)
    imag = _fmt_float(z.imag)
    sign = "" if imag.startswith("-") else "+"
    return f"{_fmt_float(z.real)}{sign}{imag}j"


def _render_element(spec: ElementSpec) -> str:
    if spec.kind in ("pbs", "ppbs"):
        ins = ",".join(spec.paths[:2])
        outs = ",".join(spec.paths[2:])
        tail = f" tv={_fmt_float(spec.params[0].real)}" if spec.kind == "ppbs" else ""
        return f"{spec.kind} {spec.name} in={ins} out={outs}{tail}"
    if spec.kind == "hwp":
        return f"hwp {spec.name} path={spec.paths[0]} angle={_fmt_float(spec.params[0].real)}"
    if spec.kind == "jones":
        entries = ",".join(_fmt_complex(p) for p in spec.params)
        return f"jones {spec.name} path={spec.paths[0]} m={entries}"
    if spec.kind == "filter":
        th, tv = (_fmt_float(p.real) for p in spec.params)
        return f"filter {spec.name} path={spec.paths[0]} th={th} tv={tv}"
    if spec.kind == "phaseflip":
        return f"phaseflip {spec.name} path={spec.paths[0]}"
    raise ValueError(f"unknown element kind {spec.kind!r}")


def render(netlist: CircuitNetlist) -> str:
    """Canonical textual form; parse(render(n)) == n."""
    lines = [f"path {p}" for p in netlist.paths]
    measure_block = [_render_element(spec) for spec in netlist.corrections]
    for outcome in netlist.measurement.outcomes:
        ket = ",".join(_fmt_complex(c) for c in outcome.ket)
        suffix = f" correct={outcome.correct}" if outcome.correct else ""
        measure_block.append(
            f"measure path={netlist.measurement.path} outcome {outcome.label} ket={ket}{suffix}"
        )
    for i, spec in enumerate(netlist.stages):
        if i == netlist.measure_after:
            lines.extend(measure_block)
        lines.append(_render_element(spec))
    if netlist.measure_after >= len(netlist.stages):
        lines.extend(measure_block)
    lines.append("postselect " + " ".join(f"{p}={n}" for p, n in netlist.postselect))
    pr = netlist.ports
    lines.append(
        f"ports target_in={pr.target_in} control_in={pr.control_in} "
        f"program_in={pr.program_in} target_out={','.join(pr.target_out)} "
        f"control_out={pr.control_out}"
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation


def _where(spec: ElementSpec) -> str:
    return f"line {spec.line}: " if spec.line else ""


def validate(netlist: CircuitNetlist) -> list[str]:
    """Structural and numeric checks; an empty list means the netlist is valid."""
    diags: list[str] = []
    declared = set(netlist.paths)
    names: set[str] = set()
    for spec in netlist.stages + netlist.corrections:
        if spec.name in names:
            diags.append(f"{_where(spec)}duplicate element name {spec.name!r}")
        names.add(spec.name)
        for path in spec.paths:
            if path not in declared:
                diags.append(f"{_where(spec)}{spec.name}: undeclared path {path!r}")
        try:
            spec.build()
        except ValueError as err:
            diags.append(f"{_where(spec)}{spec.name}: {err}")

    rule = netlist.measurement
    if rule.path not in declared:
        diags.append(f"measurement on undeclared path {rule.path!r}")
    kets = [np.array(o.ket, dtype=complex) for o in rule.outcomes]
    for i, ket in enumerate(kets):
        if abs(np.vdot(ket, ket).real - 1.0) > 1e-12:
            diags.append(f"outcome {rule.outcomes[i].label!r}: ket is not normalized")
        for j in range(i):
            if abs(np.vdot(kets[j], ket)) > 1e-12:
                diags.append(
                    f"outcome kets {rule.outcomes[j].label!r} and "
                    f"{rule.outcomes[i].label!r} are not orthogonal"
                )
    correction_names = {c.name for c in netlist.corrections}
    for outcome in rule.outcomes:
        if outcome.correct is not None and outcome.correct not in correction_names:
            diags.append(f"outcome {outcome.label!r}: unknown correction {outcome.correct!r}")

    pattern = dict(netlist.postselect)
    for path in pattern:
        if path not in declared:
            diags.append(f"postselect references undeclared path {path!r}")
    if netlist.postselect_total() != 3:
        diags.append(
            f"postselect totals {netlist.postselect_total()} photons, expected 3"
        )
    if pattern.get(rule.path) != 1:
        diags.append("postselect must require exactly one photon on the measurement path")
    ports = netlist.ports
    if pattern.get(ports.control_out) != 1:
        diags.append("postselect must require exactly one photon on the control output")
    in_pattern = [p for p in ports.target_out if p in pattern]
    if len(in_pattern) != 1 or pattern[in_pattern[0]] != 1:
        diags.append(
            "postselect must require exactly one photon on exactly one target output port"
        )
    for path in (
        ports.target_in,
        ports.control_in,
        ports.program_in,
        ports.control_out,
        *ports.target_out,
    ):
        if path not in declared:
            diags.append(f"ports reference undeclared path {path!r}")

    if not 0 <= netlist.measure_after <= len(netlist.stages):
        diags.append("measurement position outside the stage list")
    else:
        for spec in netlist.stages[netlist.measure_after:]:
            if rule.path in spec.paths:
                diags.append(
                    f"{_where(spec)}{spec.name}: touches measurement path {rule.path!r} "
                    "after the measurement point"
                )

    def reaches(start: str, goals: set[str]) -> bool:
        reached = {start}
        for spec in netlist.stages:
            if spec.kind in ("pbs", "ppbs"):
                ins, outs = set(spec.paths[:2]), set(spec.paths[2:])
                if reached & ins:
                    reached = (reached - ins) | outs
        return bool(reached & goals)

    if not reaches(ports.target_in, set(ports.target_out)):
        diags.append("target input does not reach any target output")
    if not reaches(ports.control_in, {ports.control_out}):
        diags.append("control input does not reach the control output")
    if not reaches(ports.program_in, {rule.path}):
        diags.append("program input does not reach the detector path")
    return diags


# ---------------------------------------------------------------------------
# built-in layouts


def builtin_optimized(feedforward: bool, dual_output: bool) -> CircuitNetlist:
    """Gate layout with the two success-probability upgrades toggled.

    ``feedforward`` keeps the anti-diagonal detector outcome and corrects it
    with a phase flip on the lower target arm right behind the beam splitter
    that mixes target and program photons.  ``dual_output`` halves the
    neutral filter loss, splits the upper arm 50/50 with an extra half-wave
    plate and accepts both final beam splitter outputs, the second one
    through a polarization swap.
    """
    f1 = 1.0 / _SQ2 if dual_output else 0.5
    stages = [ElementSpec("pbs", "PBS1", ("t_in", "t_in2", "t_up", "t_low"))]
    stages.append(ElementSpec("filter", "F1", ("t_up",), (complex(f1), complex(f1))))
    if dual_output:
        stages.append(ElementSpec("hwp", "HWP4", ("t_up",), (complex(22.5),)))
    stages.append(
        ElementSpec("jones", "HWP1", ("t_low",), tuple(map(complex, TARGET_SPLIT_MATRIX.ravel())))
    )
    stages.append(ElementSpec("ppbs", "PPBS", ("t_low", "c_in", "t_low", "C_OUT"), (complex(T_V),)))
    stages.append(ElementSpec("filter", "F2", ("C_OUT",), (complex(T_F2H), complex(1.0))))
    stages.append(ElementSpec("hwp", "HWP2", ("t_low",), (complex(22.5),)))
    stages.append(ElementSpec("pbs", "PBS3", ("t_low", "p_in", "t_low", "d")))
    measure_after = len(stages)
    stages.append(ElementSpec("hwp", "HWP3", ("t_low",), (complex(22.5),)))
    stages.append(ElementSpec("pbs", "PBS2", ("t_up", "t_low", "T_OUT", "T_OUT2")))
    if dual_output:
        stages.append(ElementSpec("hwp", "HWP5", ("T_OUT2",), (complex(45.0),)))

    d_ket = (complex(1.0 / _SQ2), complex(1.0 / _SQ2))
    outcomes = [MeasurementOutcome("D", d_ket, None)]
    corrections: tuple[ElementSpec, ...] = ()
    if feedforward:
        a_ket = (complex(1.0 / _SQ2), complex(-1.0 / _SQ2))
        outcomes.append(MeasurementOutcome("A", a_ket, "PLM"))
        corrections = (ElementSpec("phaseflip", "PLM", ("t_low",)),)

    return CircuitNetlist(
        paths=("t_in", "t_in2", "t_up", "t_low", "c_in", "C_OUT", "p_in", "d", "T_OUT", "T_OUT2"),
        stages=tuple(stages),
        corrections=corrections,
        measurement=MeasurementRule("d", tuple(outcomes)),
        measure_after=measure_after,
        postselect=(("T_OUT", 1), ("C_OUT", 1), ("d", 1)),
        ports=Ports(
            "t_in",
            "c_in",
            "p_in",
            ("T_OUT", "T_OUT2") if dual_output else ("T_OUT",),
            "C_OUT",
        ),
    )


def builtin_basic() -> CircuitNetlist:
    """The unoptimized gate layout: single detector outcome, single output port."""
    return builtin_optimized(False, False)


def builtin_variant(name: str) -> CircuitNetlist:
    try:
        feedforward, dual_output = VARIANTS[name]
    except KeyError:
        raise ValueError(f"unknown variant {name!r}; choose from {sorted(VARIANTS)}") from None
    return builtin_optimized(feedforward, dual_output)


def strip_corrections(netlist: CircuitNetlist) -> CircuitNetlist:
    """Copy of a netlist with all feed-forward corrections disabled."""
    outcomes = tuple(replace(o, correct=None) for o in netlist.measurement.outcomes)
    return replace(
        netlist,
        corrections=(),
        measurement=MeasurementRule(netlist.measurement.path, outcomes),
    )
