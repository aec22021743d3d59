"""Invariant suites for one (Cartan type, parabolic) configuration.

Five suites, run in a fixed order; each returns a list of human-readable
failure strings.  The CLI maps the first failing suite to its exit code:
axioms 1, duality 2, classical oracle 3, quantum properties 4, Hecke
crosscheck 5.
"""

from __future__ import annotations

from .stable import CHAMBERS, StableTables
from .quantum import (annihilates_unit, classical_matrix,
                      classical_matrix_oracle, commutator, q_zero_limit,
                      quantum_matrix, scalar_antisymmetry_holds)
from .hecke import bmo_operator, crosscheck_conjugation, orbit_sums


def admissible_weights(tables: StableTables):
    """Fundamental weights orthogonal to the Levi coroots."""
    rs = tables.system
    return [rs.fundamental_weight(i) for i in tables.parabolic.free_indices]


def suite_axioms(tables: StableTables):
    failures = []
    for chamber in CHAMBERS:
        failures.extend(tables.verify_axioms(chamber))
    return failures


def suite_duality(tables: StableTables):
    return tables.check_duality()


def suite_classical_oracle(tables: StableTables):
    failures = []
    for lam in admissible_weights(tables):
        direct = classical_matrix(tables, lam)
        oracle = classical_matrix_oracle(tables, lam)
        if direct != oracle:
            failures.append(
                f"classical matrix disagrees with localization at {lam}"
            )
    return failures


def suite_quantum(tables: StableTables):
    failures = []
    ops = []
    for lam in admissible_weights(tables):
        op = quantum_matrix(tables, lam)
        ops.append(op)
        if not annihilates_unit(tables, op.quantum):
            failures.append(f"purely quantum part does not kill 1 at {lam}")
        for key, val in op.classical.entries.items():
            if not val.is_polynomial:
                failures.append(f"classical entry {key} not polynomial")
                break
        for key, val in op.quantum.entries.items():
            if not all(tables.field.a_free(fac) for fac in val.den):
                failures.append(f"quantum entry {key} has weight denominator")
                break
            if not q_zero_limit(tables, val).is_zero:
                failures.append(f"quantum entry {key} survives q -> 0")
                break
        for i in tables.parabolic.subset:
            if not scalar_antisymmetry_holds(tables, lam, i):
                failures.append(
                    f"scalar numerator not antisymmetric under s{i} at {lam}"
                )
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            if not commutator(ops[a].total, ops[b].total).is_zero:
                failures.append(
                    f"operators at {ops[a].weight} and {ops[b].weight} "
                    "do not commute"
                )
    return failures


def suite_hecke(tables: StableTables, degree: int = 2):
    failures = []
    basis = orbit_sums(tables, degree)
    borel = not tables.parabolic.subset
    for lam in admissible_weights(tables):
        for f in basis:
            lhs, rhs = crosscheck_conjugation(tables, lam, f)
            if lhs != rhs:
                failures.append(
                    f"conjugation mismatch at {lam} on "
                    f"{tables.field.to_string(f)}"
                )
            elif borel and bmo_operator(tables, lam, f) != rhs:
                failures.append(
                    f"shift operator differs from conjugated one at {lam} "
                    f"on {tables.field.to_string(f)}"
                )
    return failures


SUITES = (
    ("axioms", 1, suite_axioms),
    ("duality", 2, suite_duality),
    ("classical oracle", 3, suite_classical_oracle),
    ("quantum properties", 4, suite_quantum),
    ("hecke crosscheck", 5, suite_hecke),
)


def run_all(tables: StableTables, degree: int = 2):
    """Run every suite; returns (exit code, report lines).  The code is 0
    when all pass, otherwise the code of the first failing suite."""
    code = 0
    lines = []
    for name, suite_code, fn in SUITES:
        failures = fn(tables, degree) if name == "hecke crosscheck" \
            else fn(tables)
        if failures:
            lines.append(f"{name}: FAIL ({failures[0]})")
            lines.extend(f"  - {msg}" for msg in failures[1:])
            if not code:
                code = suite_code
        else:
            lines.append(f"{name}: ok")
    return code, lines
