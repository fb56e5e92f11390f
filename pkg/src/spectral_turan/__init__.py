"""Numerical verification of spectral Turán-type inequalities on concrete graphs."""
from ._backend import BACKEND
from .combinatorics import ChromaticResult, CliqueResult, chromatic_number, max_clique
from .graph import (
    Graph,
    GraphStats,
    complement,
    disjoint_union,
    enumerate_labeled,
    gen_gnp,
    gen_named,
    gen_random_regular,
    gen_turan,
    graph_stats,
)
from .graph6 import parse_graph6, to_graph6
from .inequalities import (
    CertificateReport,
    CheckKind,
    EqualityClass,
    EqualityTag,
    Tolerances,
    Verdict,
    al_chain_certify,
    al_equivalence_check,
    ando_lin_check,
    bn_check,
    equality_classify,
    nikiforov_form_check,
    regular_identity_check,
    spectral_turan_check,
    triangle_trace_check,
    xpm_vectors,
)
from .scan import Check, Filters, ScanConfig, ScanReport, Source, emit_report, find_extremal, scan
from .spectral import RankTwoSplit, Spectrum, eigendecompose, hadamard, kg_quadratic_form, rank_two_split

__version__ = "0.1.0"
