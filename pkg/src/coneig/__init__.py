"""Certified eigenvalue localization via cone domination and Gerschgorin disks."""

from importlib import resources

from .cones import (
    Cone,
    ConeSpec,
    RateBounds,
    co_upper,
    compose,
    cone_member,
    ex_lower,
    exact_co,
    exact_ex,
    is_dominating,
    r_norm,
)
from .errors import *  # noqa: F401,F403
from .gersch import (
    Disk,
    Membership,
    Partition,
    block_disk_member,
    block_disk_outer,
    classical_disks,
    first_disk_scaling,
    generalized_isolation_check,
    group_disks,
    scaled_disks,
    standard_isolation_check,
    wilkinson_bound,
)
from .interval import CRect, Interval, mag, mig
from .linalg import IMatrix, QMatrix, inv_norm_lower, inv_norm_upper
from .localize import (
    LocalizationReport,
    RParams,
    approx_eigs,
    block_localize,
    chain_localize,
    feasible_r,
    gersch_dominating,
    single_eigen,
)
from .matfile import load, loads

__version__ = "0.1.0"


def corpus_path(name: str):
    """Path of a bundled example matrix file, e.g. ``corpus_path("dominat-exactly")``."""
    return resources.files(__package__) / "corpus" / f"{name}.json"


def corpus_names() -> list:
    return sorted(p.name[:-5] for p in (resources.files(__package__) / "corpus").iterdir() if p.name.endswith(".json"))
