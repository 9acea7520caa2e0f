"""Line-oriented scenario files describing a toric model, a hypersurface and a transform.

Example::

    [variety]
    vars = u v x t y z
    row1 = 1 1 0 -2 -2 -4
    row2 = 0 0 1 2 1 1
    chamber = (1,0) (0,1)

    [hypersurface]
    degree = (-4,4)
    monomial = x*y*z^2 u_min=5
    exclude = x^4

    [transform]
    shift = x:4 t:6 y:3
    vars = u v x t z y
    row1 = 1 1 0 0 0 -1
    row2 = 0 0 1 2 1 1
    chamber = (1,0) (0,1)

    [claims]
    sections (-2,1) = 1,1,2,4,6
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .cones2d import Cone2, primitivize
from .graded_toric import GradingMatrix, ToricModel, model_from_chamber
from .monomials import (
    LinearSystem, build_system, constraint_list, fibrewise_transform, format_monomial,
    parse_monomial,
)

BLOCKS = ("variety", "hypersurface", "transform", "claims")
BUILTINS = ("paper-X", "paper-Xprime")


class ScenarioError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_pair(text: str) -> tuple:
    """``"(-4,4)"`` or ``"-4,4"`` to ``(-4, 4)``."""
    t = text.strip()
    m = _PAIR.fullmatch(t) or _PAIR.fullmatch(f"({t})")
    if not m:
        raise ValueError(f"expected an integer pair like (-4,4), got {text!r}")
    return (int(m.group(1)), int(m.group(2)))


def fmt_pair(p) -> str:
    return f"({p[0]},{p[1]})"


@dataclass(frozen=True)
class Transform:
    shift: tuple  # ((var, power), ...)
    target: GradingMatrix
    chamber: Cone2


@dataclass(frozen=True)
class Scenario:
    grading: GradingMatrix
    chamber: Cone2
    degree: Optional[tuple] = None
    constraints: tuple = ()  # ((fibre exps, u_min), ...)
    exclude: tuple = ()
    transform: Optional[Transform] = None
    claims: tuple = ()  # (("sections", (x,y), (w1, w2, ...)), ...)
    name: str = field(default="", compare=False)

    @property
    def has_hypersurface(self) -> bool:
        return self.degree is not None

    def model(self) -> ToricModel:
        return model_from_chamber(self.grading, self.chamber)

    def system(self) -> LinearSystem:
        if self.degree is None:
            raise ScenarioError("scenario has no [hypersurface] block")
        return build_system(self.grading, self.degree, self.constraints, self.exclude)

    def claim(self, kind: str, ray) -> Optional[tuple]:
        for k, r, val in self.claims:
            if k == kind and tuple(r) == tuple(ray):
                return val
        return None

    def same_content(self, other: "Scenario") -> bool:
        """Equality of the mathematical content, ignoring order and formatting."""
        return (self.grading == other.grading and self.chamber == other.chamber
                and self.degree == other.degree
                and set(self.constraints) == set(other.constraints)
                and set(self.exclude) == set(other.exclude))


def parse(text: str, name: str = "") -> Scenario:
    blocks: dict[str, dict] = {}
    lines: dict[str, list] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioError(f"malformed block header {line!r}", lineno)
            current = line[1:-1].strip()
            if current not in BLOCKS:
                raise ScenarioError(f"unknown block [{current}]", lineno)
            if current in blocks:
                raise ScenarioError(f"duplicate block [{current}]", lineno)
            blocks[current] = {}
            lines[current] = []
            continue
        if current is None:
            raise ScenarioError("entry outside of any block", lineno)
        if "=" not in line:
            raise ScenarioError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        lines[current].append((lineno, key, value))
        if key not in ("monomial", "exclude") and current != "claims":
            if key in blocks[current]:
                raise ScenarioError(f"duplicate key {key!r}", lineno)
        blocks[current].setdefault(key, (lineno, value))

    if "variety" not in blocks:
        raise ScenarioError("missing [variety] block")
    grading, chamber = _parse_variety(blocks["variety"], "variety")

    degree, constraints, exclude = None, [], []
    if "hypersurface" in blocks:
        hb = blocks["hypersurface"]
        if "degree" not in hb:
            raise ScenarioError("[hypersurface] needs a degree")
        ln, v = hb["degree"]
        degree = _wrap(parse_pair, v, ln)
        for ln, key, value in lines["hypersurface"]:
            if key == "monomial":
                parts = value.split()
                if len(parts) != 2 or not parts[1].startswith("u_min="):
                    raise ScenarioError(f"expected 'monomial = m u_min=k', got {value!r}", ln)
                fib = _wrap(parse_monomial, parts[0], ln, grading.vars)
                constraints.append((fib, _wrap(int, parts[1][6:], ln)))
            elif key == "exclude":
                exclude.append(_wrap(parse_monomial, value, ln, grading.vars))
            elif key != "degree":
                raise ScenarioError(f"unknown key {key!r} in [hypersurface]", ln)

    transform = None
    if "transform" in blocks:
        tb = blocks["transform"]
        if "shift" not in tb:
            raise ScenarioError("[transform] needs a shift line")
        ln, v = tb["shift"]
        shift = []
        for item in v.split():
            if ":" not in item:
                raise ScenarioError(f"expected var:power, got {item!r}", ln)
            var, p = item.split(":", 1)
            if var not in grading.vars:
                raise ScenarioError(f"unknown variable {var!r}", ln)
            shift.append((var, _wrap(int, p, ln)))
        tgrading, tchamber = _parse_variety(tb, "transform", allowed={"shift"})
        transform = Transform(tuple(shift), tgrading, tchamber)

    claims = []
    for ln, key, value in lines.get("claims", []):
        m = re.fullmatch(r"(\w+)\s+(\(.*\))", key)
        if not m:
            raise ScenarioError(f"expected 'kind (x,y) = w1,w2,...', got {key!r}", ln)
        ray = _wrap(parse_pair, m.group(2), ln)
        ws = tuple(_wrap(int, w, ln) for w in value.split(","))
        claims.append((m.group(1), ray, ws))

    try:
        scn = Scenario(grading, chamber, degree, tuple(constraints), tuple(exclude),
                       transform, tuple(claims), name)
        if degree is not None:
            scn.system()
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    return scn


def _wrap(fn, value, line, *args):
    try:
        return fn(value, *args)
    except ValueError as exc:
        raise ScenarioError(str(exc), line) from exc


def _parse_variety(block: dict, name: str, allowed=()):
    for key, (ln, _) in block.items():
        if key not in {"vars", "row1", "row2", "chamber"} | set(allowed):
            raise ScenarioError(f"unknown key {key!r} in [{name}]", ln)
    for key in ("vars", "row1", "row2", "chamber"):
        if key not in block:
            raise ScenarioError(f"[{name}] needs {key}")
    names = block["vars"][1].split()
    rows = []
    for key in ("row1", "row2"):
        ln, v = block[key]
        row = [_wrap(int, x, ln) for x in v.split()]
        if len(row) != len(names):
            raise ScenarioError(f"{key} has {len(row)} entries for {len(names)} variables", ln)
        rows.append(row)
    ln = block["vars"][0]
    try:
        g = GradingMatrix.from_rows(names, *rows)
    except ValueError as exc:
        raise ScenarioError(str(exc), ln) from exc
    ln, v = block["chamber"]
    rays = _PAIR.findall(v)
    if len(rays) != 2:
        raise ScenarioError("chamber needs two rays like (1,0) (0,1)", ln)
    try:
        c = Cone2(primitivize(tuple(map(int, rays[0]))), primitivize(tuple(map(int, rays[1]))))
        model_from_chamber(g, c)
    except ValueError as exc:
        raise ScenarioError(str(exc), ln) from exc
    return g, c


def _variety_lines(g: GradingMatrix, c: Cone2) -> list[str]:
    r1, r2 = g.rows()
    return [f"vars = {' '.join(g.vars)}",
            f"row1 = {' '.join(map(str, r1))}",
            f"row2 = {' '.join(map(str, r2))}",
            f"chamber = {fmt_pair(c.lo)} {fmt_pair(c.hi)}"]


def serialize(s: Scenario) -> str:
    out = []
    if s.name:
        out.append(f"# scenario {s.name}")
    out.append("[variety]")
    out += _variety_lines(s.grading, s.chamber)
    if s.degree is not None:
        out += ["", "[hypersurface]", f"degree = {fmt_pair(s.degree)}"]
        for fib, i in s.constraints:
            out.append(f"monomial = {format_monomial(fib, s.grading.vars)} u_min={i}")
        for fib in s.exclude:
            out.append(f"exclude = {format_monomial(fib, s.grading.vars)}")
    if s.transform is not None:
        t = s.transform
        out += ["", "[transform]", "shift = " + " ".join(f"{v}:{p}" for v, p in t.shift)]
        out += _variety_lines(t.target, t.chamber)
    if s.claims:
        out += ["", "[claims]"]
        for kind, ray, ws in s.claims:
            out.append(f"{kind} {fmt_pair(ray)} = {','.join(map(str, ws))}")
    return "\n".join(out) + "\n"


def load(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), name=str(path))


def builtin(name: str) -> Scenario:
    if name not in BUILTINS:
        raise ScenarioError(f"unknown builtin scenario {name!r}; choose from {', '.join(BUILTINS)}")
    text = resources.files("tworay").joinpath("scenarios").joinpath(f"{name}.scn").read_text("utf-8")
    return parse(text, name=name)


def apply_transform(s: Scenario) -> Scenario:
    """The scenario of the birational transform described by ``s.transform``."""
    if s.transform is None:
        raise ScenarioError("scenario has no [transform] block")
    t = s.transform
    g = fibrewise_transform(s.system(), dict(t.shift), t.target)
    cons, excl = constraint_list(g)
    name = f"{s.name}-transformed" if s.name else ""
    return Scenario(t.target, t.chamber, g.degree, tuple(cons), tuple(excl), name=name)


__all__ = [
    "Scenario", "Transform", "ScenarioError", "parse", "serialize", "load", "builtin",
    "apply_transform", "parse_pair", "fmt_pair", "BUILTINS",
]
