"""Session files: a ring, named ideals, named elements and user assertions, as JSON."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .poly import ParseError, field_from_spec, parse_polynomial
from .rings import Ideal, PresentedRing

SCHEMA = 1
SUITE = ("regular", "cusp", "x4", "y2x5")


class SessionError(ValueError):
    pass


@dataclass
class Session:
    name: str
    ring: PresentedRing
    ideals: dict
    elements: dict = field(default_factory=dict)
    assertions: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    def ideal(self, spec: str) -> tuple[str, Ideal]:
        """Look up a named ideal, or parse a literal ``(f, g, ...)``."""
        if spec in self.ideals:
            return spec, self.ideals[spec]
        text = spec.strip()
        if text.startswith("(") and text.endswith(")"):
            parts = [p for p in _split_top(text[1:-1]) if p.strip()]
            try:
                gens = [parse_polynomial(p, self.ring.S) for p in parts]
            except ParseError as exc:
                raise SessionError(f"bad ideal {spec!r}: {exc}") from None
            return spec, Ideal(self.ring, gens)
        raise SessionError(f"unknown ideal {spec!r}; known: {', '.join(sorted(self.ideals))}")

    def element(self, text: str):
        try:
            return parse_polynomial(text, self.ring.S)
        except ParseError as exc:
            raise SessionError(f"bad element {text!r}: {exc}") from None


def _split_top(text: str):
    """Split on commas outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _field(spec):
    if spec == "rationals":
        spec = {"rationals": True}
    try:
        return field_from_spec(spec)
    except (ValueError, TypeError, AttributeError):
        raise SessionError(f"bad field spec {spec!r}") from None


def session_from_dict(data: dict, source: str = "<session>") -> Session:
    if not isinstance(data, dict):
        raise SessionError(f"{source}: session must be a JSON object")
    if data.get("schema", SCHEMA) != SCHEMA:
        raise SessionError(f"{source}: unsupported schema {data.get('schema')!r}")
    try:
        variables = list(data["variables"])
    except KeyError:
        raise SessionError(f"{source}: missing 'variables'") from None
    fld = _field(data.get("field", {"prime": 1048583}))
    name = str(data.get("name", Path(source).stem))
    local = bool(data.get("local", True))
    try:
        R = PresentedRing(variables, [], fld, local, name)
        L = []
        for k, text in enumerate(data.get("defining_ideal", [])):
            L.append(parse_polynomial(text, R.S))
        R = PresentedRing(variables, L, fld, local, name)
    except ParseError as exc:
        raise SessionError(f"{source}: defining ideal: {exc}") from None
    except ValueError as exc:
        raise SessionError(f"{source}: {exc}") from None
    ideals = {}
    for key, gens in data.get("ideals", {}).items():
        try:
            ideals[key] = Ideal(R, [parse_polynomial(g, R.S) for g in gens])
        except ParseError as exc:
            raise SessionError(f"{source}: ideal {key!r}: {exc}") from None
    ideals.setdefault("m", R.maximal_ideal)
    elements = {}
    for key, text in data.get("elements", {}).items():
        if key not in ideals:
            raise SessionError(f"{source}: element for unknown ideal {key!r}")
        try:
            elements[key] = parse_polynomial(text, R.S)
        except ParseError as exc:
            raise SessionError(f"{source}: element {key!r}: {exc}") from None
    assertions = {k: bool(v) for k, v in data.get("assertions", {}).items()}
    return Session(name, R, ideals, elements, assertions, data)


def load_session(path) -> Session:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SessionError(f"cannot read session {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return session_from_dict(data, str(path))


def suite_session(name: str) -> Session:
    """One of the bundled suite rings by name."""
    if name not in SUITE:
        raise SessionError(f"unknown suite ring {name!r}")
    text = resources.files("deltaindex.suite").joinpath(f"{name}.json").read_text()
    return session_from_dict(json.loads(text), f"{name}.json")


def resolve_session(spec) -> Session:
    """A path to a session file, or the name of a bundled suite ring."""
    if spec in SUITE and not Path(spec).exists():
        return suite_session(spec)
    stem = re.sub(r"\.json$", "", Path(spec).name)
    if not Path(spec).exists() and stem in SUITE:
        return suite_session(stem)
    return load_session(spec)
