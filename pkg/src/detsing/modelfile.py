"""Line-oriented model files.

Sections are headed by ``[variables]``, ``[parameters]``, ``[type]``,
``[matrix]``, ``[euler]``, ``[hyperplanes]``, ``[samples]``,
``[supplied]``.  Matrix rows are comma-separated expressions, one row
per line.  ``#`` starts a comment.  The format is hand-writable,
diff-friendly and round-trips through :func:`format_model`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .detmodel import DeterminantalType, PresentationMatrix
from .errors import ParseError
from .genericity import Hyperplane
from .invariants import ChiData
from .poly import VariableSet, parse_polynomial, poly_to_str

_SECTIONS = (
    "variables",
    "parameters",
    "type",
    "matrix",
    "euler",
    "hyperplanes",
    "samples",
    "supplied",
)

_STRATUM_LINE = re.compile(r"^stratum\s+(\d+)\s*:\s*(.*)$")


@dataclass
class ModelFile:
    """Parsed model file: the matrix data plus the optional sections."""

    variables: tuple
    parameters: tuple
    rows: int
    cols: int
    t: int
    matrix: tuple  # row-major tuples of expression strings
    matrix_lines: tuple = ()  # source line of each matrix row, for errors
    euler_reduced: bool = False
    euler: dict = field(default_factory=dict)  # stratum -> (chi_stab, chi_section)
    hyperplanes: tuple = ()
    samples: tuple = ()  # tuples of (name, Fraction) pairs
    supplied: dict = field(default_factory=dict)  # stratum -> {e_pair, polar}

    def variable_set(self):
        return VariableSet(self.variables, self.parameters)

    def chi_data(self):
        return {
            s: ChiData.from_input(a, b, self.euler_reduced)
            for s, (a, b) in self.euler.items()
        }


def _parse_fraction(text, line_no):
    text = text.strip()
    m = re.fullmatch(r"(-?\d+)(?:\s*/\s*(\d+))?", text)
    if not m:
        raise ParseError(f"expected a rational number, got {text!r}", line=line_no)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator", line=line_no)
    return Fraction(num, den)


def _parse_int(text, line_no):
    text = text.strip()
    if not re.fullmatch(r"-?\d+", text):
        raise ParseError(f"expected an integer, got {text!r}", line=line_no)
    return int(text)


def _parse_assignments(text, line_no):
    out = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ParseError(f"expected name = value, got {piece!r}", line=line_no)
        name, value = piece.split("=", 1)
        out[name.strip()] = (value.strip(), line_no)
    return out


def parse_model_file(text) -> ModelFile:
    sections = {}
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1].strip().lower()
            if name not in _SECTIONS:
                raise ParseError(f"unknown section [{name}]", line=line_no)
            if name in sections:
                raise ParseError(f"duplicate section [{name}]", line=line_no)
            current = []
            sections[name] = current
            continue
        if current is None:
            raise ParseError("content before the first section header", line=line_no)
        current.append((line_no, stripped))

    for required in ("variables", "type", "matrix"):
        if required not in sections:
            raise ParseError(f"missing required section [{required}]", line=1)

    variables = []
    for line_no, line in sections["variables"]:
        variables.extend(line.replace(",", " ").split())
    parameters = []
    for line_no, line in sections.get("parameters", []):
        parameters.extend(line.replace(",", " ").split())
    for name in variables + parameters:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
            raise ParseError(f"bad variable name {name!r}", line=1)

    type_fields = {}
    for line_no, line in sections["type"]:
        for name, (value, ln) in _parse_assignments(line, line_no).items():
            type_fields[name] = _parse_int(value, ln)
    for needed in ("rows", "cols", "t"):
        if needed not in type_fields:
            raise ParseError(f"[type] is missing {needed!r}", line=1)
    rows, cols, t = type_fields["rows"], type_fields["cols"], type_fields["t"]

    matrix = []
    matrix_lines = []
    for line_no, line in sections["matrix"]:
        row = tuple(cell.strip() for cell in line.split(","))
        if len(row) != cols:
            raise ParseError(
                f"matrix row has {len(row)} entries, expected {cols}", line=line_no
            )
        matrix.append(row)
        matrix_lines.append(line_no)
    if len(matrix) != rows:
        raise ParseError(
            f"matrix has {len(matrix)} rows, expected {rows}", line=1
        )

    euler_reduced = False
    euler = {}
    for line_no, line in sections.get("euler", []):
        m = _STRATUM_LINE.match(line)
        if m:
            idx = int(m.group(1))
            fields = {}
            for name, (value, ln) in _parse_assignments(m.group(2), line_no).items():
                fields[name] = _parse_int(value, ln)
            for needed in ("chi_stab", "chi_section"):
                if needed not in fields:
                    raise ParseError(
                        f"euler line for stratum {idx} is missing {needed!r}",
                        line=line_no,
                    )
            euler[idx] = (fields["chi_stab"], fields["chi_section"])
        else:
            fields = _parse_assignments(line, line_no)
            if "reduced" not in fields or len(fields) != 1:
                raise ParseError(
                    "euler lines are 'reduced = true|false' or "
                    "'stratum N: chi_stab = .., chi_section = ..'",
                    line=line_no,
                )
            value = fields["reduced"][0].lower()
            if value not in ("true", "false"):
                raise ParseError("reduced must be true or false", line=line_no)
            euler_reduced = value == "true"

    hyperplanes = tuple(line for _, line in sections.get("hyperplanes", []))

    samples = []
    for line_no, line in sections.get("samples", []):
        point = {}
        for name, (value, ln) in _parse_assignments(line, line_no).items():
            point[name] = _parse_fraction(value, ln)
        samples.append(tuple(sorted(point.items())))

    supplied = {}
    for line_no, line in sections.get("supplied", []):
        m = _STRATUM_LINE.match(line)
        if not m:
            raise ParseError(
                "supplied lines look like 'stratum N: e_pair = .., polar = ..'",
                line=line_no,
            )
        idx = int(m.group(1))
        fields = {}
        for name, (value, ln) in _parse_assignments(m.group(2), line_no).items():
            if name not in ("e_pair", "polar"):
                raise ParseError(f"unknown supplied field {name!r}", line=ln)
            fields[name] = _parse_int(value, ln)
        supplied[idx] = fields

    return ModelFile(
        variables=tuple(variables),
        parameters=tuple(parameters),
        rows=rows,
        cols=cols,
        t=t,
        matrix=tuple(matrix),
        matrix_lines=tuple(matrix_lines),
        euler_reduced=euler_reduced,
        euler=euler,
        hyperplanes=hyperplanes,
        samples=tuple(samples),
        supplied=supplied,
    )


def build_model(mf: ModelFile) -> PresentationMatrix:
    vars = mf.variable_set()
    n = min(mf.rows, mf.cols)
    k = abs(mf.rows - mf.cols)
    dtype = DeterminantalType(n, k, mf.t)
    entries = []
    for r, row in enumerate(mf.matrix):
        line = mf.matrix_lines[r] if r < len(mf.matrix_lines) else None
        parsed = []
        for cell in row:
            try:
                parsed.append(parse_polynomial(cell, vars))
            except ParseError as exc:
                raise ParseError(
                    f"bad matrix entry {cell!r}: {exc}", line=line
                ) from None
        entries.append(parsed)
    return PresentationMatrix(dtype, entries, vars)


def build_hyperplanes(mf: ModelFile, vars: VariableSet):
    out = []
    for text in mf.hyperplanes:
        p = parse_polynomial(text, vars)
        out.append(Hyperplane.from_linear_form(p, vars))
    return out


def load_model_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_model_file(text)


def format_model(m: PresentationMatrix) -> str:
    """Model-file text for a model (used by the slice command); the
    output re-parses to an equal model."""
    lines = ["[variables]", " ".join(m.vars.ambient)]
    if m.vars.parameters:
        lines += ["", "[parameters]", " ".join(m.vars.parameters)]
    lines += [
        "",
        "[type]",
        f"rows = {m.rows}",
        f"cols = {m.cols}",
        f"t = {m.dtype.t}",
        "",
        "[matrix]",
    ]
    for row in m.entries:
        lines.append(", ".join(poly_to_str(e) for e in row))
    return "\n".join(lines) + "\n"
