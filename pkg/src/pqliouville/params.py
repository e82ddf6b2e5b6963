"""Flat key/value parameter files with Cartesian grid lists.

Format: one `key = value` per line, `#` comments, values either a
single token or a whitespace/comma separated list (a grid).  A value
token naming another key ties the two (e.g. `q = p` sweeps q together
with p).  Instance keys: kind, N, p, q, s, m, M.  Radial keys: r0, r1,
u0, u1, mesh_n, reg_eps, log_transform.
"""

from __future__ import annotations

from .instance import KINDS, ProblemInstance

INSTANCE_KEYS = ("kind", "N", "p", "q", "s", "m", "M")
RADIAL_KEYS = ("r0", "r1", "u0", "u1", "mesh_n", "reg_eps", "log_transform", "c")
SCALAR_KEYS = ("q_il", "m_il")


class ParamError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"parameter {field!r}: {message}")
        self.field = field


def parse_params(text: str) -> dict[str, list[str]]:
    """Parse the raw key -> token-list mapping, preserving file order."""
    out: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParamError(f"line {lineno}", "expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        tokens = [t for t in value.replace(",", " ").split() if t]
        if not key:
            raise ParamError(f"line {lineno}", "empty key")
        if not tokens:
            raise ParamError(key, "empty value")
        if key in out:
            raise ParamError(key, "duplicate key")
        out[key] = tokens
    return out


def _float(key: str, token: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParamError(key, f"not a number: {token!r}") from None


def expand_instances(params: dict[str, list[str]]) -> list[ProblemInstance]:
    """Cartesian expansion of the instance keys into validated instances.

    Grid order is the fixed key order (kind, N, p, q, s, m, M) with the
    last key varying fastest; tied keys (value naming another key) copy
    that key's current grid value.
    """
    if "kind" not in params:
        raise ParamError("kind", "missing")
    for kind in params["kind"]:
        if kind not in KINDS:
            raise ParamError("kind", f"unknown kind {kind!r}")
    grids: list[tuple[str, list[str]]] = []
    ties: dict[str, str] = {}
    for key in INSTANCE_KEYS:
        if key not in params:
            continue
        tokens = params[key]
        if len(tokens) == 1 and tokens[0] in INSTANCE_KEYS and tokens[0] != key:
            ties[key] = tokens[0]
        else:
            grids.append((key, tokens))
    for key, target in ties.items():
        if target not in params or target in ties:
            raise ParamError(key, f"tied to unavailable key {target!r}")

    out: list[ProblemInstance] = []

    def build(values: dict[str, str]):
        for key, target in ties.items():
            values[key] = values[target]
        kwargs = {"kind": values["kind"]}
        for key in ("N", "p", "q", "s", "m", "M"):
            if key in values:
                kwargs[key] = _float(key, values[key])
        if "N" in kwargs:
            kwargs["N"] = int(kwargs["N"])
        for required in ("N", "p", "q"):
            if required not in kwargs:
                raise ParamError(required, "missing")
        try:
            out.append(ProblemInstance(**kwargs))
        except ValueError as exc:
            raise ParamError("instance", str(exc)) from None

    def recurse(level: int, acc: dict[str, str]):
        if level == len(grids):
            build(dict(acc))
            return
        key, tokens = grids[level]
        for token in tokens:
            acc[key] = token
            recurse(level + 1, acc)

    recurse(0, {})
    return out


def radial_settings(params: dict[str, list[str]]) -> dict:
    """Scalar radial-problem settings from the parameter map."""
    out: dict = {}
    for key in RADIAL_KEYS:
        if key not in params:
            continue
        tokens = params[key]
        if len(tokens) != 1:
            raise ParamError(key, "radial settings must be scalars")
        if key == "mesh_n":
            out[key] = int(_float(key, tokens[0]))
        elif key == "log_transform":
            out[key] = tokens[0].lower() in ("1", "true", "yes")
        else:
            out[key] = _float(key, tokens[0])
    return out
