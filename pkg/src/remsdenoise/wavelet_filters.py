"""Orthonormal wavelet filter banks built from the shipped coefficient tables.

Supported: Daubechies 1-10, Symlets 2-10, Coiflets 1-5. The tables store the
reconstruction low-pass (scaling) filter; the other three filters follow by
reversal and quadrature mirroring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from ._filter_tables import SCALING_FILTERS
from .errors import UnsupportedWaveletError

_FAMILY_PREFIX = {
    "daubechies": "db", "db": "db",
    "symlet": "sym", "sym": "sym",
    "coiflet": "coif", "coif": "coif",
}

SUPPORTED = tuple(sorted(SCALING_FILTERS))


@dataclass(frozen=True)
class WaveletSpec:
    """An orthonormal two-channel filter bank.

    ``dec_*`` are the analysis filters, ``rec_*`` the synthesis filters;
    ``rec_lo`` is the scaling filter with sum sqrt(2) and unit energy.
    """

    family: str
    order: int
    dec_lo: np.ndarray
    dec_hi: np.ndarray
    rec_lo: np.ndarray
    rec_hi: np.ndarray

    @property
    def name(self) -> str:
        return f"{_FAMILY_PREFIX[self.family]}{self.order}"

    @property
    def filter_length(self) -> int:
        return len(self.rec_lo)


def build_wavelet(family: str, order: int) -> WaveletSpec:
    """Look up a filter bank by family and order.

    Raises
    ------
    UnsupportedWaveletError
        If the (family, order) pair is not in the shipped tables.
    """
    prefix = _FAMILY_PREFIX.get(family.lower())
    if prefix is None:
        raise UnsupportedWaveletError(
            f"unknown wavelet family {family!r} (expected daubechies/symlet/coiflet)"
        )
    key = f"{prefix}{int(order)}"
    if key not in SCALING_FILTERS:
        raise UnsupportedWaveletError(
            f"unsupported wavelet {key!r}; available: {', '.join(SUPPORTED)}"
        )
    rec_lo = np.asarray(SCALING_FILTERS[key], dtype=np.float64)
    L = len(rec_lo)
    # quadrature mirror: w[k] = (-1)^k g[L-1-k]
    rec_hi = ((-1.0) ** np.arange(L)) * rec_lo[::-1]
    spec = WaveletSpec(
        family={"db": "daubechies", "sym": "symlet", "coif": "coiflet"}[prefix],
        order=int(order),
        dec_lo=rec_lo[::-1].copy(),
        dec_hi=rec_hi[::-1].copy(),
        rec_lo=rec_lo,
        rec_hi=rec_hi,
    )
    for arr in (spec.dec_lo, spec.dec_hi, spec.rec_lo, spec.rec_hi):
        arr.setflags(write=False)
    return spec


def parse_wavelet_name(name: str) -> WaveletSpec:
    """Parse compact names like ``coif5``, ``db4`` or ``sym8``."""
    m = re.fullmatch(r"([a-zA-Z]+)(\d+)", name.strip())
    if not m:
        raise UnsupportedWaveletError(f"cannot parse wavelet name {name!r}")
    return build_wavelet(m.group(1), int(m.group(2)))
