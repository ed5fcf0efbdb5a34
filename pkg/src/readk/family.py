"""Read-k families: independent finite variables plus Boolean read functions.

A family is ``m`` independent variables (finite supports, optionally
weighted) and ``r`` Boolean functions, each reading an ordered subset of
the variables through an explicit truth table. Truth tables are stored as
``'0'``/``'1'`` strings in mixed-radix row-major order: the first listed
variable is the most significant digit.

The JSON file format used across the package::

    {"variables": [{"name": "x1", "support": 2, "probs": [0.5, 0.5]}, ...],
     "functions": [{"name": "y1", "vars": [0, 1], "truth_table": "0110"}, ...]}

``probs`` may be omitted, meaning uniform. ``vars`` are 0-based indices
into ``variables``. Parsers reject wrong-length tables and unnormalized
probability vectors.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import DomainError, ValidationError
from .info_theory import PROB_SUM_TOL


@dataclass(frozen=True)
class Variable:
    """One independent random variable with values ``0 .. support_size-1``."""

    name: str
    support_size: int
    probs: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if not isinstance(self.support_size, int) or self.support_size < 1:
            raise ValidationError(f"support_size must be a positive int, got {self.support_size!r}")
        if not self.probs:
            object.__setattr__(self, "probs", (1.0 / self.support_size,) * self.support_size)
        else:
            object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if len(self.probs) != self.support_size:
            raise ValidationError(
                f"variable {self.name!r}: {len(self.probs)} probs for support {self.support_size}"
            )
        if any(not (p >= 0.0) or math.isnan(p) or math.isinf(p) for p in self.probs):
            raise ValidationError(f"variable {self.name!r}: negative or non-finite probability")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValidationError(f"variable {self.name!r}: probs sum to {total!r}")

    @property
    def is_uniform(self) -> bool:
        return all(p == 1.0 / self.support_size for p in self.probs)


@dataclass(frozen=True)
class ReadFunction:
    """A Boolean function of the listed variables, given by its truth table."""

    name: str
    vars: tuple[int, ...]
    truth_table: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))


@dataclass(frozen=True)
class FamilySpec:
    """A complete family: variables plus read functions, fully validated."""

    variables: tuple[Variable, ...]
    functions: tuple[ReadFunction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "functions", tuple(self.functions))
        if not self.variables:
            raise ValidationError("family needs at least one variable")
        if not self.functions:
            raise ValidationError("family needs at least one function")
        m = len(self.variables)
        for fn in self.functions:
            if len(set(fn.vars)) != len(fn.vars):
                raise ValidationError(f"function {fn.name!r}: duplicate variable indices")
            for i in fn.vars:
                if not isinstance(i, int) or not (0 <= i < m):
                    raise ValidationError(f"function {fn.name!r}: variable index {i!r} out of range")
            expected = math.prod(self.variables[i].support_size for i in fn.vars)
            if len(fn.truth_table) != expected:
                raise ValidationError(
                    f"function {fn.name!r}: truth table length {len(fn.truth_table)}, expected {expected}"
                )
            if any(c not in "01" for c in fn.truth_table):
                raise ValidationError(f"function {fn.name!r}: truth table must be over '0'/'1'")

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_functions(self) -> int:
        return len(self.functions)


def read_width(spec: FamilySpec) -> int:
    """Smallest k such that every variable is read by at most k functions.

    Equals the maximum, over variables, of how many functions list that
    variable; 0 when no function reads anything.
    """
    counts = [0] * spec.num_variables
    for fn in spec.functions:
        for i in fn.vars:
            counts[i] += 1
    return max(counts, default=0)


def table_index(spec: FamilySpec, j: int, assignment: Sequence[int]) -> int:
    """Mixed-radix position of ``assignment`` restricted to function j's vars."""
    fn = spec.functions[j]
    idx = 0
    for i in fn.vars:
        v = assignment[i]
        size = spec.variables[i].support_size
        if not (0 <= v < size):
            raise DomainError(
                f"value {v!r} out of range for variable {spec.variables[i].name!r}"
            )
        idx = idx * size + v
    return idx


def eval_function(spec: FamilySpec, j: int, assignment: Sequence[int]) -> int:
    """Value of function ``j`` on a full assignment (one value per variable)."""
    if not (0 <= j < spec.num_functions):
        raise DomainError(f"function index {j} out of range")
    if len(assignment) != spec.num_variables:
        raise DomainError(
            f"assignment has {len(assignment)} values for {spec.num_variables} variables"
        )
    return int(spec.functions[j].truth_table[table_index(spec, j, assignment)])


class Component(NamedTuple):
    """One block of the dependency partition: function and variable indices."""

    functions: tuple[int, ...]
    variables: tuple[int, ...]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def dependency_components(spec: FamilySpec) -> tuple[Component, ...]:
    """Partition functions into blocks that share no variables.

    Two functions land in the same block iff their variable sets are
    connected through shared variables. Each read variable belongs to
    exactly one block; unread variables belong to none. Blocks are ordered
    by their smallest function index.
    """
    uf = _UnionFind(spec.num_functions)
    readers: dict[int, list[int]] = {}
    for j, fn in enumerate(spec.functions):
        for i in fn.vars:
            readers.setdefault(i, []).append(j)
    for js in readers.values():
        for j in js[1:]:
            uf.union(js[0], j)
    blocks: dict[int, list[int]] = {}
    for j in range(spec.num_functions):
        blocks.setdefault(uf.find(j), []).append(j)
    components = []
    for js in blocks.values():
        var_set = sorted({i for j in js for i in spec.functions[j].vars})
        components.append(Component(tuple(sorted(js)), tuple(var_set)))
    components.sort(key=lambda c: c.functions[0])
    return tuple(components)


# --- file format ------------------------------------------------------------

def family_to_json(spec: FamilySpec) -> str:
    """Serialize to the JSON family format (always writes explicit probs)."""
    obj = {
        "variables": [
            {"name": v.name, "support": v.support_size, "probs": list(v.probs)}
            for v in spec.variables
        ],
        "functions": [
            {"name": f.name, "vars": list(f.vars), "truth_table": f.truth_table}
            for f in spec.functions
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def _expect_keys(obj: dict, allowed: set[str], required: set[str], what: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise ValidationError(f"{what}: unknown keys {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise ValidationError(f"{what}: missing keys {sorted(missing)}")


def family_from_json(text: str) -> FamilySpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed family file: {e}") from None
    if not isinstance(obj, dict):
        raise ValidationError("family file must hold a JSON object")
    _expect_keys(obj, {"variables", "functions"}, {"variables", "functions"}, "family")
    variables = []
    for entry in obj["variables"]:
        _expect_keys(entry, {"name", "support", "probs"}, {"name", "support"}, "variable")
        variables.append(
            Variable(
                name=str(entry["name"]),
                support_size=entry["support"],
                probs=tuple(entry.get("probs") or ()),
            )
        )
    functions = []
    for entry in obj["functions"]:
        _expect_keys(
            entry, {"name", "vars", "truth_table"}, {"name", "vars", "truth_table"}, "function"
        )
        functions.append(
            ReadFunction(
                name=str(entry["name"]),
                vars=tuple(entry["vars"]),
                truth_table=str(entry["truth_table"]),
            )
        )
    return FamilySpec(tuple(variables), tuple(functions))


def save_family(spec: FamilySpec, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(family_to_json(spec))


def load_family(path: str | os.PathLike) -> FamilySpec:
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_json(fh.read())
