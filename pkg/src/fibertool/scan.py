"""Integer-lattice scans with exact integrality and magnitude filters.

A polynomial in primitive form f(t) = (1/b) sum A_i t^i evaluated at
t = m/g becomes F(m)/L with F(m) = sum A_i g^(d-i) m^i and L = b g^d, so
"f(m/g) is an integer of absolute value <= B" is the pure integer test
``F(m) % L == 0 and |F(m)| <= B*L``. The divisibility part is periodic in m
with period L, which lets long ranges skip inadmissible residues.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from math import lcm

from .poly import PrimitiveForm

MAX_PERIOD = 1_000_000


class ScaledForm:
    __slots__ = ("coeffs", "modulus")

    def __init__(self, pf: PrimitiveForm, scale: int):
        d = pf.degree
        self.coeffs = [a * scale ** (d - i) for i, a in enumerate(pf.numerator_coeffs)]
        self.modulus = pf.denom * scale**d

    def value(self, m: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc


def _admissible(forms, B, m) -> bool:
    for f in forms:
        v = f.value(m)
        L = f.modulus
        if v % L or abs(v) > B * L:
            return False
    return True


def _scan_range(forms, B, lo, hi, period, residues):
    out = []
    if residues is None:
        for m in range(lo, hi + 1):
            if _admissible(forms, B, m):
                out.append(m)
        return out
    base = lo - lo % period
    while base <= hi:
        for r in residues:
            m = base + r
            if m < lo:
                continue
            if m > hi:
                break
            if _admissible(forms, B, m):
                out.append(m)
        base += period
    return out


def _scan_chunk(args):
    return _scan_range(*args)


def lattice_scan(pfs, scale: int, B: int, lo: int, hi: int, workers: int = 1) -> list[int]:
    """Sorted integers m in [lo, hi] with f(m/scale) integral and |f(m/scale)| <= B
    for every primitive form f in ``pfs``."""
    if lo > hi:
        return []
    forms = [ScaledForm(pf, scale) for pf in pfs]
    period = 1
    for f in forms:
        period = lcm(period, f.modulus)
    span = hi - lo + 1
    residues = None
    if 1 < period <= MAX_PERIOD and 4 * period <= span:
        residues = [r for r in range(period) if all(f.value(r) % f.modulus == 0 for f in forms)]
    else:
        period = 1
    if workers <= 1 or span < 10_000:
        return _scan_range(forms, B, lo, hi, period, residues)
    # chunk borders aligned to the period so every chunk walks whole residue blocks
    step = -(-span // workers)
    step = -(-step // period) * period
    jobs = []
    start = lo
    while start <= hi:
        end = min(hi, start + step - 1)
        jobs.append((forms, B, start, end, period, residues))
        start = end + 1
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_scan_chunk, jobs))
    return [m for part in parts for m in part]
