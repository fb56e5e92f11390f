"""One-graph evaluation shared by the CLI and the scan harness."""
from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import ChromaticResult, CliqueResult, chromatic_number, max_clique
from .errors import NegativeMu2, NotConnected, NotRegular, TooSmall
from .graph import Graph, GraphStats, graph_stats
from .inequalities import (
    DEFAULT_TOLERANCES,
    CertificateReport,
    CheckKind,
    EqualityClass,
    Tolerances,
    Verdict,
    al_chain_certify,
    al_equivalence_check,
    ando_lin_check,
    bn_check,
    equality_classify,
    regular_identity_check,
    spectral_turan_check,
    triangle_trace_check,
    xpm_certify,
)
from .spectral import Spectrum, eigendecompose, rank_two_split


@dataclass
class Evaluation:
    graph: Graph
    stats: GraphStats
    spectrum: Spectrum
    clique: CliqueResult
    chromatic: ChromaticResult | None = None
    verdicts: dict[CheckKind, Verdict] = field(default_factory=dict)
    equality: EqualityClass | None = None
    certificates: list[CertificateReport] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    @property
    def omega(self) -> int:
        return self.clique.omega

    @property
    def certified(self) -> bool:
        return all(not c.identity_failures for c in self.certificates)


def certify(g: Graph, spec: Spectrum, omega: int, stats: GraphStats | None = None, r: float | None = None):
    """Run every proof-chain certificate that applies to ``g``.

    Returns ``(reports, notices)``; inapplicable steps become notices.
    """
    stats = stats or graph_stats(g)
    reports: list[CertificateReport] = []
    notices: list[str] = []
    r_eff = float(omega) if r is None else float(r)
    if g.n < 2:
        notices.append("rank-two steps skipped: needs at least two vertices")
    elif r_eff <= 1:
        notices.append(f"rank-two steps skipped: r = {r_eff:g} must exceed 1")
    else:
        reports.append(al_equivalence_check(g, spec, r_eff))
        reports.append(al_chain_certify(g, spec, rank_two_split(spec, g), r_eff))
    reports.append(triangle_trace_check(g, spec))
    if stats.regular_degree is not None and g.n >= 2:
        try:
            reports.append(regular_identity_check(g, spec, omega))
        except (NotRegular, NotConnected, TooSmall) as exc:
            notices.append(f"regular closed forms skipped ({type(exc).__name__}): {exc}")
    else:
        notices.append("regular closed forms skipped (NotRegular): graph is not regular")
    if g.n >= 2:
        try:
            reports.append(xpm_certify(g, spec, omega))
        except NegativeMu2 as exc:
            notices.append(f"two-vector construction skipped (NegativeMu2): {exc}")
    return reports, notices


def evaluate(
    g: Graph,
    checks,
    tol: Tolerances = DEFAULT_TOLERANCES,
    certify_graph: bool = False,
    r: float | None = None,
    stats: GraphStats | None = None,
) -> Evaluation:
    """Spectrum and clique number once, then every requested check."""
    stats = stats or graph_stats(g)
    spec = eigendecompose(g)
    clique = max_clique(g)
    ev = Evaluation(g, stats, spec, clique)
    omega = clique.omega
    for kind in checks:
        kind = CheckKind(kind)
        if kind is CheckKind.SPECTRAL_TURAN:
            ev.verdicts[kind] = spectral_turan_check(g, spec, omega, tol)
        elif kind is CheckKind.BOLLOBAS_NIKIFOROV:
            v = bn_check(g, spec, omega, tol)
            ev.verdicts[kind] = v
            ev.equality = equality_classify(g, v, omega)
        elif kind is CheckKind.ANDO_LIN_CHI:
            ev.chromatic = chromatic_number(g)
            ev.verdicts[kind] = ando_lin_check(g, spec, ev.chromatic.chi, omega, tol)
    if certify_graph:
        ev.certificates, ev.notices = certify(g, spec, omega, stats, r)
    return ev
