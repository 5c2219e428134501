"""
harness.py: Verification campaigns over enumerated and constructed regular graphs.

Each verify_* function checks one claim and returns a VerificationReport. run_campaign
runs the checks named in the configuration, writes the report files and maps the
outcome to a process exit status.
"""

import logging
import os
import time
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Callable, Iterable, Optional

import numpy as np
from joblib import Parallel, delayed

from src.construct import (
    FamilyParamsError, family_f, family_h, generalized_no_hamilton, generalized_no_path, h_prime_variants,
    is_family_f_member, is_family_h_member, no_path_f, no_path_h, petersen, petersen_prime,
)
from src.data_ingestion import ingest_graph6
from src.data_processing import ConfigError, enabled_checks
from src.enumeration import (
    ALL_GRAPHS_MAX_N, EnumerationTask, EnvelopeError, enumerate_connected_k_regular, enumerate_graphs,
)
from src.graph_core import Graph, GraphError, build_graph, canonical_form, graph6_encode
from src.hamilton import (
    DP_CAPACITY, SolverSettings, cycle_through, hamiltonian_cycle, hamiltonian_path,
)
from src.output_generation import (
    ensure_output_directory, generate_csv, generate_html, generate_json, get_output_filename,
    write_graph6_side_files,
)
from src.structure import (
    components_after_deletion, cut_vertices, is_connected, is_k_regular, is_two_connected, separating_cuts,
)

logger = logging.getLogger(__name__)

VERIFIED = 'verified'
REFUTED = 'refuted'
WITH_EXCEPTIONS = 'verified-with-known-exceptions'

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_ERROR = 2

KNOWN_EXCEPTIONS = {
    'petersen': (petersen, "Petersen graph: 2-connected cubic, non-Hamiltonian, on the classic "
                           "exception list for cubic graphs on at most 3k+3 vertices"),
    'petersen_prime': (petersen_prime, "Petersen graph with one vertex inflated to a triangle: on the same "
                                       "exception list"),
}

DEFAULT_GENERALIZED_CASES = (
    {'kind': 'no_hamilton', 'k': 4, 'n': 13}, {'kind': 'no_hamilton', 'k': 4, 'n': 15},
    {'kind': 'no_hamilton', 'k': 4, 'n': 17}, {'kind': 'no_hamilton', 'k': 3, 'n': 12},
    {'kind': 'no_hamilton', 'k': 3, 'n': 14}, {'kind': 'no_hamilton', 'k': 3, 'n': 16},
    {'kind': 'no_path', 'k': 6, 'n': 23}, {'kind': 'no_path', 'k': 5, 'n': 22},
)


@dataclass
class VerificationReport:
    """
    Outcome of one claim check.

    Attributes:
        claim (str): Claim identifier.
        parameters (dict): Degree, order range and other inputs of the check.
        instances (int): Graphs examined.
        counterexamples (list): {graph6, reason} entries violating the claim.
        exceptions_matched (list): {name, graph6, reason} entries matching a declared exception.
        wall_time (float): Seconds spent.
        verdict (str): verified, refuted or verified-with-known-exceptions.
        details (dict): Per-order counts and claim-specific findings.
    """
    claim: str
    parameters: dict
    instances: int = 0
    counterexamples: list = field(default_factory=list)
    exceptions_matched: list = field(default_factory=list)
    wall_time: float = 0.0
    verdict: str = VERIFIED
    details: dict = field(default_factory=dict)

    def add_counterexample(self, G: Graph, reason: str) -> None:
        logger.warning(f"{self.claim}: counterexample {graph6_encode(G)} ({reason})")
        self.counterexamples.append({'graph6': graph6_encode(G), 'reason': reason})

    def add_exception(self, name: str, G: Graph, reason: str) -> None:
        logger.info(f"{self.claim}: matched declared exception {name}")
        self.exceptions_matched.append({'name': name, 'graph6': graph6_encode(G), 'reason': reason})

    def finalize(self, started: float) -> 'VerificationReport':
        if self.counterexamples:
            self.verdict = REFUTED
        elif self.exceptions_matched:
            self.verdict = WITH_EXCEPTIONS
        else:
            self.verdict = VERIFIED
        self.wall_time = time.time() - started
        logger.info(f"{self.claim}: {self.verdict} after {self.instances} instances in {self.wall_time:.2f}s")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CampaignContext:
    settings: SolverSettings = field(default_factory=SolverSettings)
    envelope: Optional[dict] = None
    workers: int = 1
    data_dir: str = 'data'


DEFAULT_CONTEXT = CampaignContext()


def _parallel(func: Callable, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    return Parallel(n_jobs=workers)(delayed(func)(item) for item in items)


def _has_cycle(G: Graph, settings: SolverSettings) -> bool:
    return hamiltonian_cycle(G, settings) is not None


def _has_path(G: Graph, settings: SolverSettings) -> bool:
    return hamiltonian_path(G, settings) is not None


def _regular_graphs(k: int, n: int, context: CampaignContext, filters: tuple = ()) -> list[Graph]:
    task = EnumerationTask(k=k, n=n, filters=filters)
    return list(enumerate_connected_k_regular(task, context.envelope, context.workers))


def _orders(k: int, top: int) -> list[int]:
    return [n for n in range(k + 1, top + 1) if k * n % 2 == 0]


def _exception_forms(names: Iterable[str]) -> dict[bytes, str]:
    forms = {}
    for name in names:
        if name not in KNOWN_EXCEPTIONS:
            raise ConfigError(f"Unknown exception {name!r}; expected one of {sorted(KNOWN_EXCEPTIONS)}")
        forms[canonical_form(KNOWN_EXCEPTIONS[name][0]()).bytes] = name
    return forms


def _backtracking(settings: SolverSettings) -> SolverSettings:
    return SolverSettings(engine='backtrack', dp_max_n=settings.dp_max_n, prunes=settings.prunes)


def _sweep(report: VerificationReport, k: int, orders: list[int], context: CampaignContext,
           predicate: Callable, failure: str, filters: tuple = (), exceptions: Optional[dict] = None) -> dict:
    """Enumerate each order, run predicate on every graph and record the failures; returns canonical forms seen."""
    per_n = {}
    seen: dict[bytes, Graph] = {}
    exceptions = exceptions or {}
    for n in orders:
        started = time.time()
        graphs = _regular_graphs(k, n, context, filters)
        verdicts = _parallel(partial(predicate, settings=context.settings), graphs, context.workers)
        per_n[str(n)] = len(graphs)
        report.instances += len(graphs)
        for G, ok in zip(graphs, verdicts):
            code = canonical_form(G).bytes
            seen[code] = G
            if ok:
                continue
            if code in exceptions:
                report.add_exception(exceptions[code], G, KNOWN_EXCEPTIONS[exceptions[code]][1])
            else:
                report.add_counterexample(G, failure)
        logger.info(f"{report.claim}: k={k} n={n}: {len(graphs)} graphs in {time.time() - started:.2f}s")
    report.details['per_n'] = per_n
    return seen


def verify_hamiltonicity_threshold(k: int, n_max: Optional[int] = None,
                                   context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """
    Every connected k-regular graph on at most 2k+2 vertices is Hamiltonian.

    Raises:
        EnvelopeError: If an order up to 2k+2 lies outside the enumeration envelope.
    """
    started = time.time()
    top = 2 * k + 2 if n_max is None else min(n_max, 2 * k + 2)
    report = VerificationReport('hamiltonicity-threshold', {'k': k, 'n_range': [k + 1, top]})
    _sweep(report, k, _orders(k, top), context, _has_cycle, 'no Hamiltonian cycle')
    return report.finalize(started)


def _family_members(k: int) -> list[tuple[str, Graph, tuple]]:
    """(label, graph, expected membership) for every constructible member of degree k at the critical order."""
    members = []
    if k % 2 == 0:
        r = k // 2
        if r >= 2:
            for t in range(2, 2 * r - 1, 2):
                members.append((f"family_f(r={r}, t={t})", family_f(r, t), (r, min(t, 2 * r - t))))
    else:
        r = (k - 1) // 2
        for t in range(2, 2 * r + 1, 2):
            for shape in h_prime_variants(r, t):
                members.append((f"family_h(r={r}, t={t}, {shape.describe()})", family_h(r, t, shape), (r, t)))
    return members


def _member_violations(G: Graph, k: int, n: int, expected: tuple, member_of: Callable,
                       hamiltonian: bool) -> list[str]:
    reasons = []
    if G.n != n:
        reasons.append(f"order {G.n} differs from {n}")
    if not is_k_regular(G, k):
        reasons.append(f"not {k}-regular")
    if not is_connected(G):
        reasons.append("disconnected")
    sides = (k + 1, k + 1) if k % 2 == 0 else (k + 1, k + 2)
    if next(separating_cuts(G, sides), None) is None:
        reasons.append(f"no cut vertex separating sides of sizes {sides[0]} and {sides[1]}")
    if hamiltonian:
        reasons.append("family member is Hamiltonian")
    recovered = member_of(G)
    if recovered != expected:
        reasons.append(f"membership decider returned {recovered}, expected {expected}")
    return reasons


def verify_characterization(k: int, exceptions: Iterable[str] = (), directions: Iterable[str] = ('forward', 'backward'),
                            context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """
    Non-Hamiltonian connected k-regular graphs at the critical order are exactly the family members.

    The critical order is 2k+3 for even k and 2k+4 for odd k. The forward direction checks
    that every constructed member is connected, k-regular, has a cut vertex separating
    two sides of k+1 vertices (k+1 and k+2 for odd k), is non-Hamiltonian and is
    recognized by its membership decider. The backward direction
    enumerates the order and requires every non-Hamiltonian graph to be a member or a
    declared exception.
    """
    started = time.time()
    directions = list(directions)
    even = k % 2 == 0
    n = 2 * k + 3 if even else 2 * k + 4
    member_of = is_family_f_member if even else is_family_h_member
    declared = _exception_forms(exceptions)
    report = VerificationReport('characterization-even' if even else 'characterization-odd',
                                {'k': k, 'n': n, 'directions': directions, 'exceptions': sorted(set(exceptions))})
    members = _family_members(k)
    classes: dict[bytes, list[str]] = {}
    for label, G, _ in members:
        classes.setdefault(canonical_form(G).bytes, []).append(label)
    report.details['family_constructions'] = len(members)
    report.details['family_classes'] = len(classes)

    if 'forward' in directions:
        flags = _parallel(partial(_has_cycle, settings=context.settings), [G for _, G, _ in members], context.workers)
        failed = 0
        for (label, G, expected), hamiltonian in zip(members, flags):
            reasons = _member_violations(G, k, n, expected, member_of, hamiltonian)
            if reasons:
                failed += 1
                report.add_counterexample(G, f"{label}: {'; '.join(reasons)}")
        report.instances += len(members)
        report.details['forward'] = {'checked': len(members), 'failed': failed}

    if 'backward' in directions:
        graphs = _regular_graphs(k, n, context)
        flags = _parallel(partial(_has_cycle, settings=context.settings), graphs, context.workers)
        non_hamiltonian = 0
        found_members = set()
        for G, hamiltonian in zip(graphs, flags):
            membership = member_of(G)
            if hamiltonian:
                if membership is not None:
                    report.add_counterexample(G, f"Hamiltonian graph recognized as family member {membership}")
                continue
            non_hamiltonian += 1
            code = canonical_form(G).bytes
            if membership is not None:
                found_members.add(code)
            elif code in declared:
                report.add_exception(declared[code], G, KNOWN_EXCEPTIONS[declared[code]][1])
            else:
                report.add_counterexample(G, "non-Hamiltonian but outside the family")
        report.instances += len(graphs)
        report.details['per_n'] = {str(n): len(graphs)}
        report.details['backward'] = {
            'enumerated': len(graphs),
            'non_hamiltonian': non_hamiltonian,
            'family_members_found': len(found_members),
            'constructions_cover_members': found_members <= set(classes),
        }
    return report.finalize(started)


def verify_hampath_threshold(k: int = 3, n_max: Optional[int] = None,
                             context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """Every connected k-regular graph on at most 3k+3 vertices has a Hamiltonian path."""
    started = time.time()
    top = 3 * k + 3 if n_max is None else min(n_max, 3 * k + 3)
    report = VerificationReport('hampath-threshold', {'k': k, 'n_range': [k + 1, top]})
    seen = _sweep(report, k, _orders(k, top), context, _has_path, 'no Hamiltonian path')
    if k == 3:
        report.details['includes'] = {name: canonical_form(build()).bytes in seen
                                      for name, (build, _) in KNOWN_EXCEPTIONS.items()}
    return report.finalize(started)


def verify_hampath_counterexamples(ks: Iterable[int] = (5, 6, 7, 8),
                                   context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """The three-block constructions are connected, k-regular, of order 3k+4 / 3k+5 and have no Hamiltonian path."""
    started = time.time()
    ks = list(ks)
    report = VerificationReport('hampath-counterexamples', {'ks': ks})
    settings = _backtracking(context.settings)
    per_k = {}
    for k in ks:
        G = no_path_f(k) if k % 2 == 0 else no_path_h(k)
        expected_n = 3 * k + 4 if k % 2 == 0 else 3 * k + 5
        shortcut = any(len(components_after_deletion(G, v)) >= 3 for v in cut_vertices(G))
        path = hamiltonian_path(G, settings)
        report.instances += 1
        reasons = []
        if G.n != expected_n:
            reasons.append(f"order {G.n} differs from {expected_n}")
        if not is_k_regular(G, k) or not is_connected(G):
            reasons.append(f"not a connected {k}-regular graph")
        if not shortcut:
            reasons.append("no cut vertex leaves three components")
        if path is not None:
            reasons.append(f"Hamiltonian path {list(path.order)}")
        if reasons:
            report.add_counterexample(G, f"k={k}: {'; '.join(reasons)}")
        per_k[str(k)] = {'n': G.n, 'three_component_cut': shortcut, 'hamiltonian_path': path is not None}
    report.details['per_k'] = per_k
    return report.finalize(started)


def _two_connected_spot(claim: str, k: int, top: int, exceptions: Iterable[str],
                        context: CampaignContext) -> VerificationReport:
    started = time.time()
    declared = _exception_forms(exceptions)
    report = VerificationReport(claim, {'k': k, 'n_range': [k + 1, top], 'exceptions': sorted(set(exceptions))})
    _sweep(report, k, _orders(k, top), context, _has_cycle, 'non-Hamiltonian 2-connected graph',
           filters=(is_two_connected,), exceptions=declared)
    matched = {e['name'] for e in report.exceptions_matched}
    report.details['missing_exceptions'] = sorted(name for name in declared.values()
                                                  if name not in matched and KNOWN_EXCEPTIONS[name][0]().n <= top)
    return report.finalize(started)


def verify_jackson_spot(k: int, n_max: Optional[int] = None,
                        context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """Every 2-connected k-regular graph on at most 3k vertices is Hamiltonian."""
    top = 3 * k if n_max is None else min(n_max, 3 * k)
    return _two_connected_spot('jackson-spot', k, top, (), context)


def verify_hilbig_spot(n_max: int = 12, exceptions: Iterable[str] = ('petersen', 'petersen_prime'),
                       context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """2-connected cubic graphs on at most 12 vertices are Hamiltonian apart from the declared exceptions."""
    return _two_connected_spot('hilbig-spot', 3, min(n_max, 12), exceptions, context)


def _max_degree_cycle(G: Graph) -> bool:
    top = max(G.degrees())
    return cycle_through(G, [v for v in range(G.n) if G.degree(v) == top]) is not None


def _in_degree_window(G: Graph) -> bool:
    return is_two_connected(G) and G.n <= 3 * max(G.degrees()) - 2


def verify_cycle_through_max_degree(n_max: int = 7, context: CampaignContext = DEFAULT_CONTEXT,
                                    all_graphs_max_n: int = ALL_GRAPHS_MAX_N) -> VerificationReport:
    """
    Every 2-connected graph with at most 3*Delta-2 vertices has a cycle through all its
    maximum-degree vertices.

    Pass all_graphs_max_n=10 to opt in to the ten-vertex sweep.

    Raises:
        EnvelopeError: If n_max exceeds all_graphs_max_n.
    """
    started = time.time()
    if n_max > all_graphs_max_n:
        raise EnvelopeError(f"cycle-through-max-degree needs n_max <= {all_graphs_max_n}, requested {n_max}")
    report = VerificationReport('cycle-through-max-degree', {'n_range': [3, n_max]})
    per_n = {}
    for n in range(3, n_max + 1):
        graphs = enumerate_graphs(n, keep=_in_degree_window, max_n=all_graphs_max_n)
        flags = _parallel(_max_degree_cycle, graphs, context.workers)
        for G, ok in zip(graphs, flags):
            if not ok:
                report.add_counterexample(G, "no cycle through all maximum-degree vertices")
        per_n[str(n)] = len(graphs)
        report.instances += len(graphs)
    report.details['per_n'] = per_n
    return report.finalize(started)


def verify_family_soundness(f_max_n: int = 23, h_max_n: int = 22,
                            context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """
    Every constructible family_f member with at most f_max_n vertices and every default
    family_h member with at most h_max_n vertices is a connected regular graph with a cut
    vertex separating sides of the expected sizes, is non-Hamiltonian and is recovered by
    its membership decider.
    """
    started = time.time()
    report = VerificationReport('family-soundness', {'f_max_n': f_max_n, 'h_max_n': h_max_n})
    members = []
    r = 2
    while 4 * r + 3 <= f_max_n:
        for t in range(2, 2 * r - 1, 2):
            members.append((f"family_f(r={r}, t={t})", family_f(r, t), 2 * r, (r, min(t, 2 * r - t)),
                            is_family_f_member))
        r += 1
    r = 1
    while 4 * r + 6 <= h_max_n:
        for t in range(2, 2 * r + 1, 2):
            members.append((f"family_h(r={r}, t={t})", family_h(r, t), 2 * r + 1, (r, t), is_family_h_member))
        r += 1
    settings = SolverSettings(engine='auto', dp_max_n=context.settings.dp_max_n, prunes=context.settings.prunes)
    flags = _parallel(partial(_has_cycle, settings=settings), [m[1] for m in members], context.workers)
    per_n: dict[str, int] = {}
    for (label, G, k, expected, member_of), hamiltonian in zip(members, flags):
        per_n[str(G.n)] = per_n.get(str(G.n), 0) + 1
        reasons = _member_violations(G, k, G.n, expected, member_of, hamiltonian)
        if reasons:
            report.add_counterexample(G, f"{label}: {'; '.join(reasons)}")
    report.instances = len(members)
    report.details['per_n'] = per_n
    report.details['h_prime_variants'] = {f"r={r},t={t}": len(h_prime_variants(r, t))
                                          for r in range(1, (h_max_n - 6) // 4 + 1) for t in range(2, 2 * r + 1, 2)}
    return report.finalize(started)


def verify_generalized_constructions(cases: Optional[Iterable[dict]] = None,
                                     context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """
    Generalized constructions produce connected k-regular graphs of the requested order
    with no Hamiltonian cycle (no_hamilton cases) or no Hamiltonian path (no_path cases).
    """
    started = time.time()
    cases = list(cases or DEFAULT_GENERALIZED_CASES)
    report = VerificationReport('generalized-constructions', {'cases': cases})
    per_n: dict[str, int] = {}
    for case in cases:
        k, n, kind = case['k'], case['n'], case['kind']
        if kind == 'no_hamilton':
            G = generalized_no_hamilton(k, n)
            witness = hamiltonian_cycle(G, context.settings)
        else:
            G = generalized_no_path(k, n)
            witness = hamiltonian_path(G, _backtracking(context.settings))
        reasons = []
        if G.n != n or not is_k_regular(G, k) or not is_connected(G):
            reasons.append(f"not a connected {k}-regular graph on {n} vertices")
        if not cut_vertices(G):
            reasons.append("no cut vertex")
        if witness is not None:
            reasons.append(f"found {witness.kind} {list(witness.order)}")
        if reasons:
            report.add_counterexample(G, f"{kind}(k={k}, n={n}): {'; '.join(reasons)}")
        per_n[str(n)] = per_n.get(str(n), 0) + 1
        report.instances += 1
    report.details['per_n'] = per_n
    return report.finalize(started)


def random_graphs(samples: int, n_max: int, seed: int) -> list[Graph]:
    """Seeded G(n, p) samples with n uniform in [1, n_max] and p uniform in [0.1, 0.9]."""
    rng = np.random.default_rng(seed)
    graphs = []
    for _ in range(samples):
        n = int(rng.integers(1, n_max + 1))
        p = float(rng.uniform(0.1, 0.9))
        draws = rng.random(n * (n - 1) // 2)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        graphs.append(build_graph(n, [pair for pair, x in zip(pairs, draws) if x < p]))
    return graphs


def _engine_answers(G: Graph, dp: SolverSettings, backtrack: SolverSettings) -> tuple:
    return (hamiltonian_cycle(G, dp) is not None, hamiltonian_cycle(G, backtrack) is not None,
            hamiltonian_path(G, dp) is not None, hamiltonian_path(G, backtrack) is not None)


def verify_engine_agreement(samples: int = 1000, n_max: int = 18, seed: int = 0,
                            context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """The DP and backtracking engines agree on cycle and path existence for seeded random graphs."""
    started = time.time()
    if n_max > DP_CAPACITY:
        raise EnvelopeError(f"Engine agreement needs n_max <= {DP_CAPACITY}, got {n_max}")
    report = VerificationReport('engine-agreement', {'samples': samples, 'n_max': n_max, 'seed': seed})
    dp = SolverSettings(engine='dp', dp_max_n=max(n_max, 1), prunes=context.settings.prunes)
    graphs = random_graphs(samples, n_max, seed)
    answers = _parallel(partial(_engine_answers, dp=dp, backtrack=_backtracking(dp)), graphs, context.workers)
    per_n: dict[str, int] = {}
    hamiltonian = 0
    for G, (cycle_dp, cycle_bt, path_dp, path_bt) in zip(graphs, answers):
        per_n[str(G.n)] = per_n.get(str(G.n), 0) + 1
        hamiltonian += cycle_dp
        if cycle_dp != cycle_bt:
            report.add_counterexample(G, f"cycle existence differs: dp={cycle_dp}, backtrack={cycle_bt}")
        if path_dp != path_bt:
            report.add_counterexample(G, f"path existence differs: dp={path_dp}, backtrack={path_bt}")
    report.instances = len(graphs)
    report.details['per_n'] = per_n
    report.details['hamiltonian'] = hamiltonian
    return report.finalize(started)


def verify_corpus_crosscheck(sources: Iterable[dict], context: CampaignContext = DEFAULT_CONTEXT) -> VerificationReport:
    """Canonical forms of each ingested corpus equal the enumerator's output for the same (k, n)."""
    started = time.time()
    sources = [s for s in sources if s.get('enabled', True) and 'k' in s and 'n' in s]
    report = VerificationReport('corpus-crosscheck', {'sources': [s['name'] for s in sources]})
    per_source = {}
    skipped = []
    for source in sources:
        k, n = source['k'], source['n']
        path = os.path.join(context.data_dir, source['output'])
        if not os.path.isfile(path):
            logger.warning(f"corpus-crosscheck: {path} missing, skipping {source['name']}")
            skipped.append(source['name'])
            continue
        diagnostics = []
        corpus: dict[bytes, Graph] = {}
        entries = 0
        for G in ingest_graph6(path, diagnostics=diagnostics):
            entries += 1
            if G.n != n or not is_k_regular(G, k) or not is_connected(G):
                report.add_counterexample(G, f"{source['name']}: not a connected {k}-regular graph on {n} vertices")
                continue
            corpus.setdefault(canonical_form(G).bytes, G)
        enumerated = {canonical_form(G).bytes: G for G in _regular_graphs(k, n, context)}
        for code in sorted(set(enumerated) - set(corpus)):
            report.add_counterexample(enumerated[code], f"{source['name']}: enumerated graph absent from corpus")
        for code in sorted(set(corpus) - set(enumerated)):
            report.add_counterexample(corpus[code], f"{source['name']}: corpus graph absent from enumeration")
        report.instances += entries
        per_source[source['name']] = {'entries': entries, 'distinct': len(corpus), 'enumerated': len(enumerated),
                                      'malformed_lines': len(diagnostics)}
    report.details['per_source'] = per_source
    report.details['skipped'] = skipped
    return report.finalize(started)


def run_check(check: dict, context: CampaignContext, sources: Iterable[dict] = (),
              no_exception: bool = False) -> VerificationReport:
    """Dispatch one configured check to its verify_* function."""
    claim = check['claim']

    def exceptions(default):
        return () if no_exception else check.get('exceptions', default)

    if claim == 'hamiltonicity-threshold':
        return verify_hamiltonicity_threshold(check['k'], check.get('n_max'), context)
    if claim in ('characterization-even', 'characterization-odd'):
        if (check['k'] % 2 == 0) != (claim == 'characterization-even'):
            raise ConfigError(f"{claim} does not apply to k={check['k']}")
        return verify_characterization(check['k'], exceptions(()), check.get('directions', ('forward', 'backward')),
                                       context)
    if claim == 'hampath-threshold':
        return verify_hampath_threshold(check.get('k', 3), check.get('n_max'), context)
    if claim == 'hampath-counterexamples':
        return verify_hampath_counterexamples(check.get('ks', (5, 6, 7, 8)), context)
    if claim == 'jackson-spot':
        return verify_jackson_spot(check['k'], check.get('n_max'), context)
    if claim == 'hilbig-spot':
        return verify_hilbig_spot(check.get('n_max', 12), exceptions(('petersen', 'petersen_prime')), context)
    if claim == 'cycle-through-max-degree':
        return verify_cycle_through_max_degree(check.get('n_max', 7), context,
                                               check.get('all_graphs_max_n', ALL_GRAPHS_MAX_N))
    if claim == 'family-soundness':
        return verify_family_soundness(check.get('f_max_n', 23), check.get('h_max_n', 22), context)
    if claim == 'generalized-constructions':
        return verify_generalized_constructions(check.get('cases'), context)
    if claim == 'engine-agreement':
        return verify_engine_agreement(check.get('samples', 1000), check.get('n_max', 18), check.get('seed', 0),
                                       context)
    if claim == 'corpus-crosscheck':
        return verify_corpus_crosscheck(sources, context)
    raise ConfigError(f"Unknown claim {claim!r}")


def write_reports(reports: list[VerificationReport], output_config: dict) -> list[str]:
    """Write JSON, CSV, HTML and graph6 side files; returns the paths written."""
    directory = output_config['directory']
    prefix = output_config['prefix']
    stamp = output_config.get('append_timestamp', False)
    ensure_output_directory(directory)
    payload = [report.to_dict() for report in reports]
    paths = [get_output_filename(directory, prefix, ext, stamp) for ext in ('json', 'csv', 'html')]
    generate_json(payload, paths[0])
    generate_csv(payload, paths[1])
    generate_html(payload, paths[2])
    return paths + write_graph6_side_files(payload, directory, prefix)


def run_campaign(config: dict, only: Optional[Iterable[str]] = None, no_exception: bool = False,
                 workers: Optional[int] = None, output_dir: Optional[str] = None,
                 engine: Optional[str] = None, data_dir: str = 'data') -> tuple[list[VerificationReport], int]:
    """
    Run every enabled check of a validated configuration and write the report files.

    Args:
        config (dict): Configuration as returned by load_config.
        only (iterable, optional): Restrict to these claim identifiers.
        no_exception (bool): Ignore all declared exceptions.
        workers (int, optional): Overrides campaign.workers.
        output_dir (str, optional): Overrides output.directory.
        engine (str, optional): Overrides hamilton.engine.
        data_dir (str): Directory holding downloaded corpora.

    Returns:
        tuple: (reports, exit status) where the status is 0 when every claim is verified
            (declared exceptions allowed), 1 when a counterexample was found and 2 on a
            configuration or runtime error.
    """
    try:
        hamilton_config = dict(config.get('hamilton', {}))
        if engine:
            hamilton_config['engine'] = engine
        context = CampaignContext(
            settings=SolverSettings.from_config(hamilton_config),
            envelope=config.get('enumeration', {}).get('envelope'),
            workers=workers or config.get('campaign', {}).get('workers', 1),
            data_dir=data_dir,
        )
        checks = enabled_checks(config, only)
    except (ConfigError, ValueError, TypeError) as e:
        logger.error(f"Invalid campaign configuration: {e}")
        return [], EXIT_ERROR
    if not checks:
        logger.error("No enabled checks to run; refusing to report an empty campaign as verified")
        return [], EXIT_ERROR

    reports = []
    errors = 0
    for check in checks:
        logger.info(f"Running check {check['claim']}")
        try:
            reports.append(run_check(check, context, config.get('sources', []), no_exception))
        except (EnvelopeError, ConfigError, FamilyParamsError, GraphError, ValueError, KeyError) as e:
            logger.error(f"Check {check['claim']} failed: {e}")
            errors += 1
        except Exception as e:
            logger.error(f"Check {check['claim']} raised an unexpected error: {e!r}")
            errors += 1

    output_config = dict(config.get('output', {}))
    if output_dir:
        output_config['directory'] = output_dir
    try:
        write_reports(reports, output_config)
    except (OSError, ConfigError, KeyError) as e:
        logger.error(f"Failed to write reports: {e}")
        errors += 1
    except Exception as e:
        logger.error(f"Unexpected error while writing reports: {e!r}")
        errors += 1

    if errors:
        return reports, EXIT_ERROR
    if any(report.verdict == REFUTED for report in reports):
        return reports, EXIT_REFUTED
    return reports, EXIT_OK
