"""Exact distribution of the function-sum of a family, by weighted enumeration.

The oracle enumerates assignments in mixed-radix order, vectorized in
chunks, independently per dependency component, and convolves the
per-component partial sums. Families where every variable is uniform take
an integer-counting fast path. Work is capped by an enumeration guard
(``DEFAULT_GUARD`` assignments per component) which can be overridden per
call or through the ``READK_ENUM_GUARD`` environment variable.

Chunks are processed and reduced in a fixed order, so results are
bit-reproducible for identical inputs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator, Literal, NamedTuple, Sequence

import numpy as np

from .errors import DomainError, ResourceError, ValidationError
from .family import Component, FamilySpec, dependency_components
from .info_theory import PROB_SUM_TOL

DEFAULT_GUARD = 1 << 24

#: Assignments handled per vectorized block; bounds peak memory.
CHUNK = 1 << 20


def enumeration_guard(guard: int | None = None) -> int:
    """Resolve the effective guard: explicit arg, else env override, else default."""
    if guard is not None:
        return int(guard)
    env = os.environ.get("READK_ENUM_GUARD")
    return int(env) if env else DEFAULT_GUARD


@dataclass(frozen=True)
class TailQuery:
    """A one-sided threshold event on the function sum: ``Y >= t`` or ``Y <= t``."""

    threshold: float
    direction: Literal["ge", "le"] = "ge"

    def __post_init__(self) -> None:
        if self.direction not in ("ge", "le"):
            raise DomainError(f"direction must be 'ge' or 'le', got {self.direction!r}")
        if math.isnan(self.threshold):
            raise DomainError("threshold must not be NaN")

    def effective_threshold(self) -> int:
        """Integer threshold actually compared against the (integer) sum."""
        if self.direction == "ge":
            return math.ceil(self.threshold)
        return math.floor(self.threshold)


@dataclass(frozen=True)
class SumPmf:
    """Exact pmf of ``Y = Y_1 + ... + Y_r``; ``probs[s] = Pr[Y = s]``."""

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if not self.probs:
            raise ValidationError("empty pmf")
        if any(not (p >= 0.0) or math.isnan(p) for p in self.probs):
            raise ValidationError("pmf entries must be non-negative")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValidationError(f"pmf sums to {total!r}, not 1")

    @property
    def max_sum(self) -> int:
        return len(self.probs) - 1

    def mean(self) -> float:
        return math.fsum(s * p for s, p in enumerate(self.probs))


class Marginals(NamedTuple):
    """Per-function one-probabilities and their average."""

    per_function: tuple[float, ...]
    mean: float


class _Space:
    """Vectorized mixed-radix enumeration over an ordered variable subset."""

    def __init__(self, spec: FamilySpec, var_indices: Sequence[int]):
        self.spec = spec
        self.vars = tuple(var_indices)
        self.sizes = {i: spec.variables[i].support_size for i in self.vars}
        self.total = math.prod(self.sizes.values())
        self.uniform = all(spec.variables[i].is_uniform for i in self.vars)
        # mixed-radix strides, first listed variable most significant
        self.strides: dict[int, int] = {}
        stride = 1
        for i in reversed(self.vars):
            self.strides[i] = stride
            stride *= self.sizes[i]

    def chunks(self) -> Iterator[np.ndarray]:
        dtype = np.int32 if self.total <= 2**31 - 1 else np.int64
        for start in range(0, self.total, CHUNK):
            stop = min(start + CHUNK, self.total)
            yield np.arange(start, stop, dtype=dtype)

    def digit(self, idx: np.ndarray, var: int) -> np.ndarray:
        stride, size = self.strides[var], self.sizes[var]
        if stride & (stride - 1) == 0 and size & (size - 1) == 0:
            return (idx >> (stride.bit_length() - 1)) & (size - 1)
        return (idx // stride) % size

    def digits(self, idx: np.ndarray) -> dict[int, np.ndarray]:
        return {i: self.digit(idx, i) for i in self.vars}

    def weights(self, digits: dict[int, np.ndarray], n: int) -> np.ndarray:
        """Product of per-variable probabilities for each assignment."""
        w = np.ones(n, dtype=np.float64)
        for i in self.vars:
            w *= np.asarray(self.spec.variables[i].probs)[digits[i]]
        return w

    def table_indices(self, j: int, digits: dict[int, np.ndarray], n: int) -> np.ndarray:
        """Mixed-radix truth-table positions of function j on each assignment."""
        fn = self.spec.functions[j]
        if not fn.vars:
            return np.zeros(n, dtype=np.int64)
        idx = digits[fn.vars[0]].copy()
        for i in fn.vars[1:]:
            idx *= self.sizes[i]
            idx += digits[i]
        return idx

    def function_values(self, j: int, digits: dict[int, np.ndarray], n: int) -> np.ndarray:
        fn = self.spec.functions[j]
        table = np.frombuffer(fn.truth_table.encode("ascii"), dtype=np.uint8) - ord("0")
        if not fn.vars:
            return np.full(n, table[0], dtype=np.uint8)
        return table[self.table_indices(j, digits, n)]


def _check_guard(total: int, guard: int, what: str) -> None:
    if total > guard:
        raise ResourceError(f"{what} spans {total} assignments, exceeding the guard {guard}")


def _enumerate_pmf(spec: FamilySpec, var_indices: Sequence[int], fn_indices: Sequence[int],
                   guard: int, what: str) -> np.ndarray:
    """Exact pmf of the partial sum of the given functions over their variables."""
    space = _Space(spec, var_indices)
    _check_guard(space.total, guard, what)
    nbins = len(fn_indices) + 1
    counts = np.zeros(nbins, dtype=np.int64)
    pmf = np.zeros(nbins, dtype=np.float64)
    for idx in space.chunks():
        digits = space.digits(idx)
        s = np.zeros(len(idx), dtype=np.int32)
        for j in fn_indices:
            s += space.function_values(j, digits, len(idx))
        if space.uniform:
            counts += np.bincount(s, minlength=nbins)
        else:
            pmf += np.bincount(s, weights=space.weights(digits, len(idx)), minlength=nbins)
    if space.uniform:
        return counts / space.total
    return pmf


def sum_pmf(spec: FamilySpec, guard: int | None = None) -> SumPmf:
    """Exact pmf of the family's function sum, component by component.

    Each dependency component is enumerated on its own (weighted by the
    variable probabilities; unread variables contribute weight one) and
    the component pmfs are convolved in order of smallest function index.
    Raises :class:`ResourceError` naming the offending component when a
    single component exceeds the guard.
    """
    guard = enumeration_guard(guard)
    acc: np.ndarray | None = None
    for comp in dependency_components(spec):
        names = ", ".join(spec.functions[j].name for j in comp.functions[:4])
        what = f"component [{names}{', ...' if len(comp.functions) > 4 else ''}]"
        part = _enumerate_pmf(spec, comp.variables, comp.functions, guard, what)
        acc = part if acc is None else np.convolve(acc, part)
    assert acc is not None and len(acc) == spec.num_functions + 1
    return SumPmf(tuple(float(p) for p in acc))


def sum_pmf_enumerate(spec: FamilySpec, guard: int | None = None) -> SumPmf:
    """Exact pmf by one flat enumeration of *all* variables, no decomposition.

    Independent cross-check path for :func:`sum_pmf`; quadratically more
    work on families with many components, so keep it to small inputs.
    """
    guard = enumeration_guard(guard)
    pmf = _enumerate_pmf(
        spec, range(spec.num_variables), range(spec.num_functions), guard, "full family"
    )
    return SumPmf(tuple(float(p) for p in pmf))


def tail_prob(pmf: SumPmf, query: TailQuery) -> float:
    """``Pr[Y >= t]`` or ``Pr[Y <= t]``, inclusive at integer thresholds.

    Fractional thresholds round toward the event: ceiling for ``ge``,
    floor for ``le``.
    """
    t = query.effective_threshold()
    if query.direction == "ge":
        if t > pmf.max_sum:
            return 0.0
        if t <= 0:
            return 1.0
        return min(math.fsum(pmf.probs[t:]), 1.0)
    if t < 0:
        return 0.0
    if t >= pmf.max_sum:
        return 1.0
    return min(math.fsum(pmf.probs[: t + 1]), 1.0)


def function_marginals(spec: FamilySpec) -> Marginals:
    """Exact ``p_j = Pr[f_j = 1]`` for every function, plus their average."""
    per = []
    for j, fn in enumerate(spec.functions):
        space = _Space(spec, fn.vars)
        table = np.frombuffer(fn.truth_table.encode("ascii"), dtype=np.uint8) - ord("0")
        if space.uniform:
            per.append(float(np.count_nonzero(table)) / space.total)
            continue
        total = 0.0
        for idx in space.chunks():
            digits = space.digits(idx)
            w = space.weights(digits, len(idx))
            total += float(w[table[idx] == 1].sum())
        per.append(min(total, 1.0))
    return Marginals(tuple(per), math.fsum(per) / len(per))


def conditional_function_marginals(
    spec: FamilySpec, query: TailQuery, guard: int | None = None
) -> tuple[float, ...]:
    """Exact ``q_j = Pr[f_j = 1 | tail event]`` by full enumeration.

    Enumerates the entire assignment space (no component shortcut, since
    conditioning couples the components). Raises :class:`DomainError` when
    the conditioning event has probability zero.
    """
    guard = enumeration_guard(guard)
    space = _Space(spec, range(spec.num_variables))
    _check_guard(space.total, guard, "full family")
    t = query.effective_threshold()
    r = spec.num_functions
    mass = 0.0
    hits = np.zeros(r, dtype=np.float64)
    count = 0
    hit_counts = np.zeros(r, dtype=np.int64)
    for idx in space.chunks():
        digits = space.digits(idx)
        vals = np.empty((r, len(idx)), dtype=np.uint8)
        s = np.zeros(len(idx), dtype=np.int64)
        for j in range(r):
            vals[j] = space.function_values(j, digits, len(idx))
            s += vals[j]
        mask = s >= t if query.direction == "ge" else s <= t
        if space.uniform:
            count += int(np.count_nonzero(mask))
            hit_counts += vals[:, mask].sum(axis=1, dtype=np.int64)
        else:
            w = space.weights(digits, len(idx))
            mass += float(w[mask].sum())
            hits += (vals * w).T[mask].sum(axis=0)
    if space.uniform:
        if count == 0:
            raise DomainError("conditioning event has probability zero")
        return tuple(float(c) / count for c in hit_counts)
    if mass <= 0.0:
        raise DomainError("conditioning event has probability zero")
    return tuple(float(h) / mass for h in hits)
