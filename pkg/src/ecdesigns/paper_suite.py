"""Reproduction checks for the block-design existential closure results.

Each check rebuilds its designs from scratch, records pass/fail per item and
its wall time against a budget. ``run_suite`` gathers them into one report.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import constructions as C
from .analysis import (
    condition_report,
    find_sub_system,
    intersection_profile,
    kohler_alpha,
    qs_disjoint_margin,
)
from .design import (
    Design,
    derived_design,
    is_simple,
    lambda_h,
    supplementary_design,
    validate_t_design,
)
from .ec import find_dominating_union_pair, is_1_ec, is_2_ec_fast, is_n_ec, xi
from .graphs import (
    Graph,
    build_big,
    build_s_big,
    complement,
    degree_stats,
    induced_subgraph,
    random_graph,
)

DEFAULT_SEED = C.DEFAULT_SEED


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = DEFAULT_SEED
    fast: bool = False  # skip stress checks
    kohler_subsets: int = 50
    random_graph_count: int = 100
    random_graph_max_n: int = 40


@dataclass
class CheckResult:
    id: str
    title: str
    citation: str
    budget_s: float
    items: dict = field(default_factory=dict)
    seconds: float = 0.0
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(self.items.values())

    @property
    def within_budget(self) -> bool:
        return self.seconds < self.budget_s

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "citation": self.citation,
            "passed": self.passed,
            "items": dict(self.items),
            "seconds": round(self.seconds, 4),
            "budget_s": self.budget_s,
            "within_budget": self.within_budget,
            "error": self.error,
        }


@dataclass(frozen=True)
class Check:
    id: str
    title: str
    citation: str
    budget_s: float
    run: Callable[[SuiteConfig], dict]
    stress: bool = False

    def __call__(self, cfg: SuiteConfig | None = None) -> CheckResult:
        cfg = SuiteConfig() if cfg is None else cfg
        res = CheckResult(self.id, self.title, self.citation, self.budget_s)
        start = time.perf_counter()
        try:
            res.items = self.run(cfg)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            res.error = f"{type(exc).__name__}: {exc}"
        res.seconds = time.perf_counter() - start
        return res


def _netto(cfg):
    D = C.netto13()
    return {
        "validates 2-(13,3,1)": validate_t_design(D, 2, 3, 1).ok,
        "26 blocks": D.b == 26,
        "xi(BIG) == 2": xi(build_big(D)) == 2,
    }


def _ts13_4(cfg):
    D = C.ts13_4()
    G = build_big(D)
    return {
        "simple": is_simple(D),
        "validates 2-(13,3,4)": validate_t_design(D, 2, 3, 4).ok,
        "104 blocks": D.b == 104,
        "BIG 2-e.c.": is_2_ec_fast(G).holds,
        "xi(BIG) == 2": xi(G) == 2,
        "no sub-TS(6,4)": find_sub_system(D, 6, 3, 4) is None,
    }


def _ts11(cfg):
    D = C.ts11_3()
    S = supplementary_design(D, 3)
    return {
        "simple": is_simple(D),
        "validates 2-(11,3,3)": validate_t_design(D, 2, 3, 3).ok,
        "xi(BIG) == 2": xi(build_big(D)) == 2,
        "supplementary validates 2-(11,3,6)": validate_t_design(S, 2, 3, 6).ok,
        "supplementary has 110 blocks": S.b == 110,
        "supplementary simple": is_simple(S),
        "supplementary xi(BIG) == 2": xi(build_big(S)) == 2,
    }


def _complete9(cfg):
    D = C.complete_design(9, 3)
    G = build_big(D)
    return {
        "validates 2-(9,3,7)": validate_t_design(D, 2, 3, 7).ok,
        "BIG 2-e.c.": is_2_ec_fast(G).holds,
        "BIG not 3-e.c. (brute force)": not is_n_ec(G, 3).holds,
    }


def _ts9_2(cfg):
    D = C.ts9_2(cfg.seed)
    return {
        "validates 2-(9,3,2)": validate_t_design(D, 2, 3, 2).ok,
        "simple": is_simple(D),
        "xi(BIG) == 1": xi(build_big(D)) == 1,
    }


def _sqs8(cfg):
    D = C.boolean_sqs8()
    G = build_big(D)
    return {
        "validates 3-(8,4,1)": validate_t_design(D, 3, 4, 1).ok,
        "14 blocks": D.b == 14,
        "BIG 1-e.c. (brute force)": is_n_ec(G, 1).holds,
        "BIG not 2-e.c.": not is_2_ec_fast(G).holds,
        "xi(BIG) == 1": xi(G) == 1,
        "{1}-BIG not 2-e.c.": not is_2_ec_fast(build_s_big(D, {1})).holds,
    }


def _sqs16(cfg):
    D = C.doubling_sqs(C.boolean_sqs8())
    G = build_big(D)
    return {
        "validates 3-(16,4,1)": validate_t_design(D, 3, 4, 1).ok,
        "140 blocks": D.b == 140,
        "BIG 2-e.c.": is_2_ec_fast(G).holds,
        "xi(BIG) == 2": xi(G) == 2,
        "lambda_2 == 7": lambda_h(3, 16, 4, 1, 2) == 7,
        "{1}-BIG 2-e.c.": is_2_ec_fast(build_s_big(D, {1})).holds,
    }


def derived_big_matches(D: Design, x: int) -> bool:
    """BIG of the derived design at ``x`` equals the {2..k}-BIG induced on the blocks through ``x``."""
    k = max(D.block_sizes)
    through = D.blocks_through(x)
    sub, labels = induced_subgraph(build_s_big(D, range(2, k + 1)), through)
    Dx = derived_design(D, x)
    # vertex i of ``sub`` is block labels[i] minus x; Dx lists those blocks in sorted order
    relabel = [tuple(p - (p > x) for p in D.blocks[j] if p != x) for j in labels]
    order = sorted(range(len(relabel)), key=relabel.__getitem__)
    if [relabel[i] for i in order] != list(Dx.blocks):
        return False
    pos = {i: r for r, i in enumerate(order)}
    Gx = build_big(Dx)
    return all(
        sub.adjacent(i, j) == Gx.adjacent(pos[i], pos[j])
        for i in range(len(relabel))
        for j in range(i + 1, len(relabel))
    )


def _derived_lemma(cfg):
    D = C.doubling_sqs(C.boolean_sqs8())
    return {f"point {x}": derived_big_matches(D, x) for x in range(D.v)}


def kohler_agrees(D: Design, t: int, k: int, lam: int, M) -> bool:
    prof = intersection_profile(D, M)
    m = prof.m
    high = prof.alphas[t + 1 :]
    return all(kohler_alpha(t, D.v, k, lam, m, i, high) == prof.alphas[i] for i in range(t + 1))


def _kohler(cfg):
    rng = random.Random(cfg.seed)
    cases = {
        "netto13": (C.netto13(), 2, 3, 1),
        "ts13_4": (C.ts13_4(), 2, 3, 4),
        "sqs8": (C.boolean_sqs8(), 3, 4, 1),
        "sqs16": (C.doubling_sqs(C.boolean_sqs8()), 3, 4, 1),
    }
    items = {}
    for name, (D, t, k, lam) in cases.items():
        ok = True
        for _ in range(cfg.kohler_subsets):
            m = rng.randint(t + 1, min(D.v, 8))
            ok &= kohler_agrees(D, t, k, lam, rng.sample(range(D.v), m))
        items[f"{name}: {cfg.kohler_subsets} random subsets"] = ok
    return items


def _qs_margin(cfg):
    D = C.doubling_sqs(C.boolean_sqs8())
    b1 = D.blocks[0]
    b2 = next(b for b in D.blocks if not set(b) & set(b1))
    disjoint = intersection_profile(D, set(b1) | set(b2))
    b3 = next(b for b in D.blocks if len(set(b) & set(b1)) == 1)
    M7 = set(b1) | set(b3)
    meet = intersection_profile(D, M7)
    margin = qs_disjoint_margin(16, 1, 7, meet.alphas[4])
    return {
        "disjoint pair: alpha_0 == alpha_4": disjoint.alphas[0] == disjoint.alphas[4],
        "disjoint pair: margin == alpha_4": qs_disjoint_margin(16, 1, 8, disjoint.alphas[4])
        == disjoint.alphas[4],
        "m=7: margin == counted alpha_0": margin == meet.alphas[0],
        "m=7: alpha_0 >= 2": meet.alphas[0] >= 2,
    }


def suite_graphs(seed: int = DEFAULT_SEED) -> dict[str, Graph]:
    sqs8 = C.boolean_sqs8()
    sqs16 = C.doubling_sqs(sqs8)
    graphs = {
        name: build_big(D)
        for name, D in {
            "netto13": C.netto13(),
            "ts13_4": C.ts13_4(),
            "ts11_3": C.ts11_3(),
            "ts11_6": supplementary_design(C.ts11_3(), 3),
            "complete(9,3)": C.complete_design(9, 3),
            "ts9_2": C.ts9_2(seed),
            "sqs8": sqs8,
            "sqs16": sqs16,
        }.items()
    }
    for name, D in (("sqs8", sqs8), ("sqs16", sqs16)):
        graphs[f"{name} {{1}}"] = build_s_big(D, {1})
        graphs[f"{name} {{0,2}}"] = build_s_big(D, {0, 2})
    return graphs


def random_graphs(seed: int, count: int = 100, max_n: int = 40) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng.randint(3, max_n), rng.uniform(0.15, 0.85), rng) for _ in range(count)]


def monotone(G: Graph, top: int = 3) -> bool:
    prev = True
    for n in range(1, min(top, G.n - 1) + 1):
        cur = is_n_ec(G, n).holds
        if cur and not prev:
            return False
        prev = cur
    return True


def _properties(cfg):
    graphs = suite_graphs(cfg.seed)
    rand = random_graphs(cfg.seed, cfg.random_graph_count, cfg.random_graph_max_n)
    items = {
        f"fast 2-e.c. == brute force ({len(rand)} random graphs)": all(
            is_2_ec_fast(G) == is_n_ec(G, 2) for G in rand
        ),
        "fast 2-e.c. == brute force (suite graphs)": all(
            is_2_ec_fast(G) == is_n_ec(G, 2) for G in graphs.values()
        ),
        "monotonicity (suite graphs)": all(monotone(G) for G in graphs.values()),
        "1-e.c. degree form (suite graphs)": all(
            is_n_ec(G, 1).holds == is_1_ec(G) for G in graphs.values()
        ),
    }
    connected = [G for G in graphs.values() if degree_stats(G).is_connected]
    items["zero closure iff a vertex sees all (connected suite graphs)"] = all(
        (xi(G) == 0) == (degree_stats(G).max_degree == G.n - 1) for G in connected
    )
    for name in ("sqs8", "sqs16"):
        one, zero_two = graphs[f"{name} {{1}}"], graphs[f"{name} {{0,2}}"]
        items[f"{name}: complement of {{1}}-BIG is {{0,2}}-BIG"] = complement(one) == zero_two
        items[f"{name}: {{1}} and {{0,2}} agree on 2-e.c."] = (
            is_2_ec_fast(one).holds == is_2_ec_fast(zero_two).holds
        )
    return items


def _conditions(cfg):
    a = condition_report(13, 3, 1, 2)
    b = condition_report(31, 3, 1, 3)
    c = condition_report(12, 3, 2, 1)
    d = condition_report(13, 3, 4, 2)
    return {
        "(13,3,1,2): 13 >= 11": a["steiner_2ec_threshold"].satisfied
        and a["steiner_2ec_threshold"].rhs == 11,
        "(31,3,1,3): bound is exactly 31": b["ec3_order_upper_bound"].satisfied
        and b["ec3_order_upper_bound"].rhs == 31,
        "(12,3,2,1): 12 >= 6": c["order_lower_bound"].satisfied and c["order_lower_bound"].rhs == 6,
        "(13,3,4,2): PBD sufficiency fails at 13": not d["pbd_2ec_sufficient"].satisfied,
    }


def _sqs32(cfg):
    D = C.doubling_sqs(C.doubling_sqs(C.boolean_sqs8()))
    return {
        "validates 3-(32,4,1)": validate_t_design(D, 3, 4, 1).ok,
        "1240 blocks": D.b == 1240,
        "BIG 2-e.c.": is_2_ec_fast(build_big(D)).holds,
    }


CHECKS = [
    Check("C01", "Netto STS(13)", "STS 2-e.c. threshold, v >= 13", 1.0, _netto),
    Check("C02", "TS(13,4) from three permuted Netto copies", "TS(13,4) example; sub-TS(6,4) lemma", 5.0, _ts13_4),
    Check("C03", "TS(11,3) and its supplementary TS(11,6)", "TS(11,3) example", 2.0, _ts11),
    Check("C04", "Complete TS(9,7)", "simple TS(v, v-2) remark", 2.0, _complete9),
    Check("C05", "TS(9,2) from two block-disjoint STS(9)", "TS(9, lambda) lemma", 2.0, _ts9_2),
    Check("C06", "Boolean SQS(8)", "SQS BIG theorem; {1}-BIG theorem", 1.0, _sqs8),
    Check("C07", "SQS(16) by doubling", "SQS BIG theorem; {1}-BIG theorem", 10.0, _sqs16),
    Check("C08", "Derived-design BIG lemma on SQS(16)", "derived BIG lemma", 5.0, _derived_lemma),
    Check("C09", "Intersection numbers by formula vs direct count", "Koehler intersection numbers", 5.0, _kohler),
    Check("C10", "Quadruple-system disjointness margin", "quadruple-system lemma", 1.0, _qs_margin),
    Check("C11", "E.c. property suite", "e.c. definition; zero-closure proposition", 10.0, _properties),
    Check("C12", "Closed-form condition boundaries", "necessary-condition theorems", 1.0, _conditions),
    Check("S01", "SQS(32) by double doubling (stress)", "SQS BIG theorem", 60.0, _sqs32, stress=True),
]


def _extra_sqs10(D: Design) -> dict:
    return {
        "validates 3-(10,4,1)": validate_t_design(D, 3, 4, 1).ok,
        "BIG not 2-e.c.": not is_2_ec_fast(build_big(D)).holds,
        "{1}-BIG not 2-e.c.": not is_2_ec_fast(build_s_big(D, {1})).holds,
    }


def _extra_sqs14(D: Design) -> dict:
    return {
        "validates 3-(14,4,1)": validate_t_design(D, 3, 4, 1).ok,
        "BIG not 2-e.c.": not is_2_ec_fast(build_big(D)).holds,
        "{1}-BIG 2-e.c.": is_2_ec_fast(build_s_big(D, {1})).holds,
    }


def _extra_ts13_4(D: Design) -> dict:
    two_ec = is_2_ec_fast(build_big(D)).holds
    hole = find_sub_system(D, 6, 3, 4)
    items = {
        "simple": is_simple(D),
        "validates 2-(13,3,4)": validate_t_design(D, 2, 3, 4).ok,
        "2-e.c. iff no sub-TS(6,4)": two_ec == (hole is None),
        "dominating pair iff not 2-e.c.": (find_dominating_union_pair(D) is None) == two_ec,
    }
    return items


def _extra_ts12_2(D: Design) -> dict:
    two_ec = is_2_ec_fast(build_big(D)).holds
    items = {
        "validates 2-(12,3,2)": validate_t_design(D, 2, 3, 2).ok,
        "dominating pair rules out 2-e.c.": find_dominating_union_pair(D) is None or not two_ec,
    }
    if is_simple(D):
        items["supplementary validates 2-(12,3,8)"] = validate_t_design(
            supplementary_design(D, 3), 2, 3, 8
        ).ok
    return items


EXTRA_CHECKS = {
    "sqs10": ("Ingested SQS(10)", "{1}-BIG theorem", _extra_sqs10),
    "sqs14": ("Ingested SQS(14)", "SQS BIG theorem; {1}-BIG theorem", _extra_sqs14),
    "ts13_4": ("Ingested simple TS(13,4)", "sub-TS(6,4) lemma", _extra_ts13_4),
    "ts12_2": ("Ingested TS(12,2)", "TS(12,2) census remark", _extra_ts12_2),
}


def extra_check(key: str, D: Design) -> Check:
    title, citation, fn = EXTRA_CHECKS[key]
    return Check(f"X-{key}", title, citation, 10.0, lambda cfg: fn(D))


def run_suite(
    fast: bool = False,
    extras: dict[str, Design] | None = None,
    seed: int = DEFAULT_SEED,
    config: SuiteConfig | None = None,
) -> dict:
    cfg = SuiteConfig(seed=seed, fast=fast) if config is None else config
    checks = [c for c in CHECKS if not (cfg.fast and c.stress)]
    checks += [extra_check(key, D) for key, D in (extras or {}).items()]
    start = time.perf_counter()
    results = [c(cfg) for c in checks]
    return {
        "seed": cfg.seed,
        "fast": cfg.fast,
        "passed": all(r.passed for r in results),
        "checks": [r.as_dict() for r in results],
        "seconds": round(time.perf_counter() - start, 4),
    }
