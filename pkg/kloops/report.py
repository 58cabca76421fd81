"""
Invariant reports printed by the command line, one `key: value` per line.
"""
from dataclasses import dataclass, field
import logging
from typing import Dict, List, Optional, Union

from .constants import DEFAULT_CAP
from .errors import CapExceeded
from .loops import LoopStructure, check_kloop_identities
from .permutations import inner_group, is_fixed_point_free, mlt, mlt_left, precession_group
from .subloops import enumerate_subloops, is_automorphic
from .symetron import SymetronStructure, enumerate_convex

logger = logging.getLogger(__name__)

CAP_EXCEEDED = "cap-exceeded"

Count = Union[int, str]


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "n/a"
    return str(value)


@dataclass
class InvariantReport:
    """
    Everything the `invariants` command prints about a structure. Values that
    could not be computed within the cap hold "cap-exceeded", values that do
    not apply to the kind hold None.
    """

    kind: str
    order: int
    flags: Dict[str, Optional[bool]] = field(default_factory=dict)
    group_sizes: Dict[str, Count] = field(default_factory=dict)
    counts: Dict[str, Count] = field(default_factory=dict)
    identities: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "flags": dict(self.flags),
            "group_sizes": dict(self.group_sizes),
            "counts": dict(self.counts),
            "identities": dict(self.identities),
        }

    def to_lines(self) -> List[str]:
        lines = [f"kind: {self.kind}", f"order: {self.order}"]
        for section in (self.flags, self.group_sizes, self.counts):
            lines += [f"{k}: {_format_value(v)}" for k, v in section.items()]
        lines += [f"identity.{k}: {'pass' if v else 'fail'}" for k, v in self.identities.items()]
        return lines


def _size_or_cap(build, L, cap) -> Count:
    try:
        return len(build(L, cap))
    except CapExceeded:
        logger.debug("%s exceeds the cap %d", build.__name__, cap)
        return CAP_EXCEEDED


def loop_kind(L: LoopStructure) -> str:
    if L.flags.is_kloop:
        return "kloop"
    if L.flags.is_bol:
        return "bol"
    return "loop"


def loop_report(L: LoopStructure, cap: int = DEFAULT_CAP) -> InvariantReport:
    """
    Builds the invariant report of a loop.

    Parameters
    ----------
    L
        Any loop. The subloop count needs a Bol loop, the identity suite and
        fixed-point-freeness a K-loop; otherwise they are left out.
    cap
        Cap for every group closure and enumeration.

    Returns
    -------
    InvariantReport
        The report, with flags reproducible by the module operations of the
        same name.
    """
    report = InvariantReport(kind=loop_kind(L), order=L.order)
    report.flags = {
        "is_bol": L.flags.is_bol,
        "is_aip": L.flags.is_aip,
        "is_u2d": L.flags.is_u2d,
        "is_commutative": L.flags.is_commutative,
        "is_associative": L.flags.is_associative,
        "is_automorphic": is_automorphic(L),
        "is_fixed_point_free": None,
    }
    if L.flags.is_kloop:
        try:
            report.flags["is_fixed_point_free"] = is_fixed_point_free(L, cap)
        except CapExceeded:
            logger.debug("precession group exceeds the cap %d", cap)

    report.group_sizes = {
        "mlt_left": _size_or_cap(mlt_left, L, cap),
        "mlt": _size_or_cap(mlt, L, cap),
        "precession_group": _size_or_cap(precession_group, L, cap),
        "inner_group": _size_or_cap(inner_group, L, cap),
    }
    report.counts = {
        "subloops": _size_or_cap(enumerate_subloops, L, cap) if L.flags.is_bol else None,
    }
    if L.flags.is_kloop:
        suite = check_kloop_identities(L)
        report.identities = {k: v.passed for k, v in suite.items.items()}
    return report


def symetron_report(S: SymetronStructure, cap: int = DEFAULT_CAP) -> InvariantReport:
    report = InvariantReport(kind="symetron", order=S.order)
    report.counts = {"convex_sets": _size_or_cap(enumerate_convex, S, cap)}
    return report
