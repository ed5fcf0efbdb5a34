"""Cross-validation of the vectorized engine against a scalar reference.

The reference path enumerates assignments with itertools.product and
evaluates functions one at a time through the scalar truth-table lookup,
so it shares no indexing or reduction code with the numpy engine.
"""

import itertools
import math

import numpy as np
import pytest

from readk.audit import proof_trace
from readk.exact import (
    TailQuery,
    conditional_function_marginals,
    function_marginals,
    sum_pmf,
)
from readk.family import FamilySpec, ReadFunction, Variable, eval_function, read_width
from readk.generators import gen_random_family
from readk.info_theory import Distribution, kl_binary, kl_divergence, project

EXACT_TOL = 1e-12


def reference_rows(spec):
    """Yield (assignment, weight, sum_of_function_values) scalar-style."""
    supports = [range(v.support_size) for v in spec.variables]
    for assignment in itertools.product(*supports):
        weight = 1.0
        for v, value in zip(spec.variables, assignment):
            weight *= v.probs[value]
        total = sum(
            eval_function(spec, j, assignment) for j in range(spec.num_functions)
        )
        yield assignment, weight, total


def reference_pmf(spec):
    pmf = [0.0] * (spec.num_functions + 1)
    for _, weight, total in reference_rows(spec):
        pmf[total] += weight
    return pmf


def weighted_variant(spec, rng):
    """Same structure, random non-uniform probabilities."""
    variables = []
    for v in spec.variables:
        raw = rng.random(v.support_size) + 0.05
        variables.append(
            Variable(v.name, v.support_size, tuple(float(x) for x in raw / raw.sum()))
        )
    return FamilySpec(tuple(variables), spec.functions)


@pytest.mark.parametrize("seed", range(12))
def test_sum_pmf_matches_scalar_reference(seed):
    rng = np.random.default_rng(seed)
    spec = gen_random_family(m=5, r=5, k=3, max_arity=3, seed=seed)
    if seed % 2:
        spec = weighted_variant(spec, rng)
    got = sum_pmf(spec).probs
    want = reference_pmf(spec)
    assert all(abs(a - b) <= EXACT_TOL for a, b in zip(got, want))


@pytest.mark.parametrize("seed", range(6))
def test_marginals_match_scalar_reference(seed):
    rng = np.random.default_rng(100 + seed)
    spec = weighted_variant(
        gen_random_family(m=5, r=4, k=2, max_arity=2, seed=seed), rng
    )
    per = function_marginals(spec).per_function
    for j in range(spec.num_functions):
        want = math.fsum(
            w for a, w, _ in reference_rows(spec) if eval_function(spec, j, a) == 1
        )
        assert per[j] == pytest.approx(want, abs=EXACT_TOL)


@pytest.mark.parametrize("seed", range(6))
def test_conditional_marginals_match_scalar_reference(seed):
    rng = np.random.default_rng(200 + seed)
    spec = weighted_variant(
        gen_random_family(m=5, r=4, k=2, max_arity=2, seed=seed), rng
    )
    t = 2
    rows = [(a, w) for a, w, total in reference_rows(spec) if total >= t]
    mass = math.fsum(w for _, w in rows)
    if mass == 0.0:
        pytest.skip("tail empty for this seed")
    got = conditional_function_marginals(spec, TailQuery(t, "ge"))
    for j in range(spec.num_functions):
        want = math.fsum(w for a, w in rows if eval_function(spec, j, a) == 1) / mass
        assert got[j] == pytest.approx(want, abs=1e-10)


def test_trace_terms_match_distribution_level_reference():
    spec = gen_random_family(m=5, r=5, k=2, max_arity=2, seed=9)
    t, r = 3, spec.num_functions
    k = read_width(spec)
    trace = proof_trace(spec, TailQuery(t, "ge"))

    # conditional law over the full outcome set, built scalar-style
    outcomes = tuple(
        itertools.product(*(range(v.support_size) for v in spec.variables))
    )
    tail = [a for a, _, total in reference_rows(spec) if total >= t]
    law = Distribution(
        outcomes, tuple(1.0 / len(tail) if a in set(tail) else 0.0 for a in outcomes)
    )
    uniform = Distribution.uniform(outcomes)

    assert trace.neg_log_tail == pytest.approx(
        kl_divergence(law, uniform), rel=1e-12
    )

    shearer = 0.0
    for fn in spec.functions:
        sub = tuple(
            itertools.product(*(range(spec.variables[i].support_size) for i in fn.vars))
        )
        shearer += kl_divergence(
            project(law, fn.vars), Distribution.uniform(sub)
        )
    assert trace.shearer_term == pytest.approx(shearer / k, rel=1e-12)

    p_js = function_marginals(spec).per_function
    q_js = conditional_function_marginals(spec, TailQuery(t, "ge"))
    dpi = math.fsum(kl_binary(q, p) for q, p in zip(q_js, p_js)) / k
    assert trace.dpi_term == pytest.approx(dpi, rel=1e-12)

    q_bar, p_bar = math.fsum(q_js) / r, math.fsum(p_js) / r
    assert trace.convexity_term == pytest.approx(
        (r / k) * kl_binary(q_bar, p_bar), rel=1e-12
    )
    assert trace.final_term == pytest.approx(
        (r / k) * kl_binary(max(t / r, p_bar), p_bar), rel=1e-12
    )
