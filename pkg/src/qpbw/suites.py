"""Named verification suites assembling module checks into reports."""

from __future__ import annotations

import random
import time

from .freealg import Element
from .presentations import (
    build_presentation,
    build_r_matrix,
    centrality_checks,
    cross_check_short_presentation,
    expand_rtt,
    generator_matrix,
    qmatrix_relations,
    triangular_system,
)
from .reports import CheckRecord, Report, check
from .rewrite import orient_relations
from .specialize import frobenius_check, verify_poisson_tables
from .structmaps import (
    check_antimap_properties,
    check_l_operator_identities,
    check_rootvector_identities,
    integer_form_checks,
    verify_jimbo_presentation,
)

SUITE_NAMES = (
    "qmatrix",
    "short-vs-full",
    "confluence",
    "hopf",
    "jimbo",
    "rootvectors",
    "loperators",
    "poisson",
    "frobenius",
    "all",
)


class UsageError(ValueError):
    pass


def _rtt_equivalence(n: int) -> list[CheckRecord]:
    R = build_r_matrix(n)
    records = []
    for kind, matrix_kind in (("upper", "upper"), ("lower", "lower")):
        family_sys = triangular_system(n, kind)
        M = generator_matrix(n, matrix_kind)
        expanded = [r for r in expand_rtt(R, M, M) if r]
        bad = next(
            (r for r in expanded if family_sys.normal_form(r)), None
        )
        records.append(
            check(
                f"braid expansion inside {kind} family span ({len(expanded)} entries)",
                "2.12",
                bad is None,
                bad,
            )
        )
        expanded_sys = orient_relations(
            expanded, family_sys.order, n=n, integer_form=True
        )
        bad = next(
            (r for r in qmatrix_relations(n, kind) if expanded_sys.normal_form(r)),
            None,
        )
        records.append(
            check(
                f"{kind} family inside braid expansion span",
                "2.1",
                bad is None,
                bad,
            )
        )
    pres = build_presentation(n, "gl")
    Rop = build_r_matrix(n, "op")
    mixed = [
        r
        for r in expand_rtt(
            Rop, generator_matrix(n, "lower_conj"), generator_matrix(n, "upper_conj"), "12"
        )
        if r
    ]
    bad = next((r for r in mixed if pres.normal_form(r)), None)
    records.append(
        check(
            f"conjugated mixed braid identity ({len(mixed)} entries)",
            "2.13",
            bad is None,
            bad,
        )
    )
    return records


def _confluence_records(n: int, flavor: str, *, seed: int = 20060) -> list[CheckRecord]:
    pres = build_presentation(n, flavor)
    records = [
        check(
            f"locally confluent ({len(pres.system.rules)} rules, "
            f"{len(pres.ambiguities)} unresolved overlaps)",
            "2.9" if flavor == "gl" else "3.4",
            not pres.ambiguities,
            pres.ambiguities[0].to_dict() if pres.ambiguities else None,
        )
    ]
    rng = random.Random(seed + n)
    gens = pres.generators
    bad = None
    for _ in range(5):
        word = tuple(rng.choice(gens) for _ in range(4))
        left = pres.normal_form(Element.from_word(word), "leftmost")
        right = pres.normal_form(Element.from_word(word), "rightmost")
        if left != right and bad is None:
            bad = word
    records.append(
        check("reduction strategy independence on random words", "2.9", bad is None, bad)
    )
    return records


def run_suite(
    suite: str,
    n: int,
    flavor: str = "gl",
    ell: int | None = None,
    *,
    deterministic: bool = False,
    random_triples: int = 100,
) -> Report:
    """Execute one named suite and collect its report."""
    if suite not in SUITE_NAMES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    if flavor not in ("gl", "sl"):
        raise UsageError("flavor must be gl or sl")
    if n < 1:
        raise UsageError("n must be >= 1")
    if suite in ("frobenius",) and ell is None:
        raise UsageError("the frobenius suite requires --ell")
    started = time.monotonic()
    report = Report(suite=suite, n=n, flavor=flavor, ell=ell)

    def dispatch(name: str):
        if name == "qmatrix":
            report.extend(_rtt_equivalence(n))
            report.extend(centrality_checks(n))
        elif name == "short-vs-full":
            report.extend(cross_check_short_presentation(n))
        elif name == "confluence":
            report.extend(_confluence_records(n, flavor))
        elif name == "hopf":
            from .hopf import hopf_context_for, verify_hopf_axioms

            report.extend(verify_hopf_axioms(hopf_context_for(n, flavor)))
        elif name == "jimbo":
            report.extend(verify_jimbo_presentation(n))
            report.extend(integer_form_checks(n))
        elif name == "rootvectors":
            report.extend(check_rootvector_identities(n))
            report.extend(check_antimap_properties(n))
        elif name == "loperators":
            report.extend(check_l_operator_identities(n))
        elif name == "poisson":
            report.extend(
                verify_poisson_tables(n, flavor, random_triples=random_triples)
            )
        elif name == "frobenius":
            report.extend(frobenius_check(n, ell, flavor))

    if suite == "all":
        for name in SUITE_NAMES[:-1]:
            if name == "frobenius" and ell is None:
                continue
            if name in ("short-vs-full", "jimbo", "rootvectors", "loperators", "qmatrix") and n < 2:
                continue
            dispatch(name)
    else:
        if n < 2 and suite in ("short-vs-full", "jimbo", "rootvectors", "loperators", "qmatrix"):
            raise UsageError(f"suite {suite!r} needs n >= 2")
        dispatch(suite)
    report.duration_ms = int((time.monotonic() - started) * 1000)
    if deterministic:
        report.duration_ms = 0
    return report
