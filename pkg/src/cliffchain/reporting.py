"""Verification campaigns with machine-readable reports.

run_campaign executes one named battery of checks (or all of them) over a
grid of (n, l) values and returns a plain-dict report document.  emit
serializes the document as json, per-table csv files, or a text summary.

Reports are deterministic for a fixed config and version: rows are sorted,
seeds are derived from the config seed, and json output is byte-identical
between runs except for the timestamp and the recorded wall-clock times.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from math import comb

import numpy as np

from . import __version__
from .clifford import CliffordElement, gamma0, realize, trace
from .hamiltonians import (
    aklt_su2,
    chain_hamiltonian,
    frustration_free_check,
    kernel_basis,
    majumdar_ghosh,
    parent_check,
    so_n_aklt,
)
from .mps import (
    rdm_eigen_by_grade,
    transfer_eigenvalue,
    transfer_spectrum,
    two_point_correlation,
)
from .so_n import (
    clebsch_gordan_dims,
    isotypic_decomposition,
    pieri_dimension_check,
    so_generator,
    so_n_casimir,
    wedge_generator,
)
from .spt import (
    FIXES,
    INVARIANT,
    SWAPS,
    aklt_tensors,
    clifford_tensors,
    cocycle_sign,
    conjugation_check,
    mps_spt_index,
    on_site_breaking_check,
    product_tensors,
    reflection_check,
    time_reversal_check,
)

CAMPAIGNS = (
    "transfer",
    "rdm",
    "parent",
    "spt",
    "cpt",
    "clifford-selftest",
    "repr-dims",
    "all",
)

SCHEMA_VERSION = 1

DEFAULT_N_LIST = (3, 4, 5, 6)
DEFAULT_CAP_DENSE = 2048
DEFAULT_CAP_SPARSE = 2_000_000

# grid guards for the heavier batteries
RDM_MAX_N = 8
RDM_MAX_L = 16
PARENT_MAX_DIM = 16_000
PIERI_MAX_N = 6
SELFTEST_SAMPLES = 500
CORRELATOR_RANGE = range(2, 13)


@dataclass(frozen=True)
class CampaignConfig:
    campaign: str
    n_list: tuple = DEFAULT_N_LIST
    l_list: tuple = ()
    tol_kernel: float = 1e-10
    tol_match: float = 1e-9
    seed: int = 0
    cap_dense: int = DEFAULT_CAP_DENSE
    cap_sparse: int = DEFAULT_CAP_SPARSE

    def __post_init__(self):
        if self.campaign not in CAMPAIGNS:
            raise ValueError(f"unknown campaign {self.campaign!r}")
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        object.__setattr__(self, "l_list", tuple(int(l) for l in self.l_list))
        for n in self.n_list:
            if n < 2:
                raise ValueError("n must be at least 2")
        for l in self.l_list:
            if l < 1:
                raise ValueError("lengths must be positive")
        if self.tol_kernel <= 0 or self.tol_match <= 0:
            raise ValueError("tolerances must be positive")
        if self.cap_dense < 2 or self.cap_sparse < 2:
            raise ValueError("caps must be at least 2")


# ---------------------------------------------------------------------------
# row assembly
# ---------------------------------------------------------------------------


def _plain(value):
    """Coerce numbers to builtin types so json round-trips exactly."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, complex):
        if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
            raise ValueError("refusing to flatten a genuinely complex number")
        return float(value.real)
    if isinstance(value, str):
        return value
    raise TypeError(f"unsupported report value {type(value)!r}")


class _Collector:
    def __init__(self, campaign: str):
        self.campaign = campaign
        self.rows: list[dict] = []
        self.tables: dict[str, list] = {}

    def add(self, n, l, name, passed, numbers=None, notes=""):
        self.rows.append(
            {
                "campaign": self.campaign,
                "n": None if n is None else int(n),
                "l": None if l is None else int(l),
                "name": name,
                "status": "pass" if passed else "fail",
                "numbers": {k: _plain(v) for k, v in (numbers or {}).items()},
                "notes": notes,
                "seconds": 0.0,
            }
        )
        return self.rows[-1]

    def skip(self, n, l, name, reason):
        row = self.add(n, l, name, True, notes=reason)
        row["status"] = "skip"
        return row

    def table_row(self, table: str, row: tuple):
        self.tables.setdefault(table, []).append(tuple(_plain(v) for v in row))


def _timed(collector, n, l, name, fn):
    """Run fn() -> (passed, numbers, notes) and record one timed row."""
    t0 = time.perf_counter()
    try:
        passed, numbers, notes = fn()
    except Exception as exc:  # a broken check is a failing check, not a crash
        passed, numbers, notes = False, {}, f"error: {exc}"
    row = collector.add(n, l, name, passed, numbers, notes)
    row["seconds"] = round(time.perf_counter() - t0, 6)
    return row


# ---------------------------------------------------------------------------
# transfer campaign
# ---------------------------------------------------------------------------


def _expected_transfer_clusters(n: int) -> list[tuple[float, int]]:
    kmax = n if n % 2 == 0 else (n - 1) // 2
    out = [(transfer_eigenvalue(n, k), comb(n, k)) for k in range(kmax + 1)]
    out.sort(key=lambda p: -p[0])
    return out

def _exact_decay_rate(n: int) -> float:
    rates = [abs(n - 2 * k) / n for k in range(2, n, 2)]
    return max(rates) if rates else 0.0


def _antisymmetric_probe(n: int) -> np.ndarray:
    S = np.zeros((n, n), dtype=complex)
    S[0, 1], S[1, 0] = 1.0j, -1.0j
    return S


def _run_transfer(config: CampaignConfig) -> _Collector:
    col = _Collector("transfer")
    for n in config.n_list:
        spectrum = transfer_spectrum(n, "E")

        def check_spectrum(n=n, spectrum=spectrum):
            expected = _expected_transfer_clusters(n)
            got = spectrum.eigenvalues
            if len(got) != len(expected):
                return False, {"clusters": len(got)}, "cluster count mismatch"
            dev = max(abs(a - b) for (a, _), (b, _) in zip(got, expected))
            mult_ok = all(ma == mb for (_, ma), (_, mb) in zip(got, expected))
            numbers = {"max_value_dev": dev, "clusters": len(got)}
            return dev < config.tol_match and mult_ok, numbers, ""

        _timed(col, n, None, "transfer-spectrum", check_spectrum)
        for value, mult in spectrum.eigenvalues:
            col.table_row("eigenvalues", (n, value, mult))

        def check_xi(n=n, spectrum=spectrum):
            rate = _exact_decay_rate(n)
            xi = 0.0 if rate == 0.0 else -1.0 / math.log(rate)
            dev = abs(spectrum.correlation_length - xi)
            return dev < config.tol_match, {"xi": xi, "rate": rate, "dev": dev}, ""

        _timed(col, n, None, "correlation-length", check_xi)

        def check_peripheral(n=n, spectrum=spectrum):
            peripheral = sum(
                m for v, m in spectrum.eigenvalues if abs(abs(v) - 1.0) < 1e-9
            )
            want_primitive = n % 2 == 1
            numbers = {"peripheral": peripheral}
            return spectrum.is_primitive == want_primitive, numbers, ""

        _timed(col, n, None, "peripheral-count", check_peripheral)

        if n % 2 == 0:

            def check_fshared(n=n):
                shared = transfer_spectrum(n, "F_shared")
                top = shared.eigenvalues[0]
                ok = shared.is_primitive and abs(top[0] - 1.0) < 1e-12 and top[1] == 1
                return ok, {"clusters": len(shared.eigenvalues)}, ""

            _timed(col, n, None, "factorized-primitivity", check_fshared)

        boundary = "plus" if n % 2 == 0 else "omega"
        probe = _antisymmetric_probe(n)
        corr = {}
        for r in CORRELATOR_RANGE:
            c = two_point_correlation(n, probe, probe, r, boundary)
            corr[r] = c
            col.table_row("correlators", (n, r, c))

        # a one-site probe only excites the grade-2 class, so its correlator
        # decays at |lambda_2|, not at the max over all even grades
        channel = abs(transfer_eigenvalue(n, 2)) if n > 2 else 1.0
        if channel == 0.0:

            def check_vanish(corr=corr):
                worst = max(abs(c) for c in corr.values())
                return worst < 1e-12, {"max_correlator": worst}, ""

            _timed(col, n, None, "correlators-vanish", check_vanish)
        elif channel < 1.0 - 1e-9:

            def check_slope(corr=corr, channel=channel):
                rs = [r for r in corr if abs(corr[r]) > 1e-300]
                logs = [math.log(abs(corr[r])) for r in rs]
                slope = float(np.polyfit(rs, logs, 1)[0])
                target = math.log(channel)
                rel = abs(slope - target) / abs(target)
                numbers = {"slope": slope, "target": target, "rel_dev": rel}
                return rel < 0.02, numbers, ""

            _timed(col, n, None, "decay-slope", check_slope)
    return col


# ---------------------------------------------------------------------------
# rdm campaign
# ---------------------------------------------------------------------------


def _rdm_lengths(config: CampaignConfig) -> tuple:
    return config.l_list or (2, 3, 4, 6, 8)


def _expected_grade_mult(n: int, grade: int) -> int:
    if 2 * grade == n:
        return comb(n, grade) // 2
    return comb(n, grade)


def _expected_grades(n: int, l: int) -> list[int]:
    # a class labeled by its min-grade representative g shows up when an
    # l-site word of grade g or of grade n - g exists
    out = []
    for g in range(n // 2 + 1):
        direct = g % 2 == l % 2 and g <= l
        partner = (n - g) % 2 == l % 2 and (n - g) <= l
        if direct or partner:
            out.append(g)
    return out


def _run_rdm(config: CampaignConfig) -> _Collector:
    col = _Collector("rdm")
    for n in config.n_list:
        for l in _rdm_lengths(config):
            if n > RDM_MAX_N or l > RDM_MAX_L:
                col.skip(n, l, "marginal-spectrum", "cap-exceeded")
                continue

            blocks = rdm_eigen_by_grade(n, l, "plus")

            def check_spectrum(n=n, blocks=blocks):
                tr = sum(mu * mult for _, mu, mult in blocks)
                mus = [mu for _, mu, _ in blocks]
                numbers = {
                    "grades": len(blocks),
                    "trace": tr,
                    "min_mu": min(mus),
                    "max_mu": max(mus),
                }
                return abs(tr - 1.0) < 1e-9 and min(mus) > 0.0, numbers, ""

            _timed(col, n, l, "marginal-spectrum", check_spectrum)
            for grade, mu, mult in blocks:
                col.table_row("mu_by_length", (n, l, grade, mu))

            def check_mults(n=n, l=l, blocks=blocks):
                got = [(g, mult) for g, _, mult in blocks]
                want = [(g, _expected_grade_mult(n, g)) for g in _expected_grades(n, l)]
                notes = "" if got == want else f"layout {got}, expected {want}"
                return got == want, {"grades": len(blocks)}, notes

            _timed(col, n, l, "grade-multiplicities", check_mults)

            if n % 2 == 0:

                def check_pair(n=n, l=l, blocks=blocks):
                    other = rdm_eigen_by_grade(n, l, "minus")
                    if [(g, m) for g, _, m in blocks] != [
                        (g, m) for g, _, m in other
                    ]:
                        return False, {}, "grade layout differs between the pair"
                    dev = max(
                        abs(a - b)
                        for (_, a, _), (_, b, _) in zip(blocks, other)
                    )
                    return dev < 1e-10, {"spectrum_dev": dev}, ""

                _timed(col, n, l, "pure-state-pair", check_pair)
    return col


# ---------------------------------------------------------------------------
# parent campaign
# ---------------------------------------------------------------------------


def _parent_lengths(config: CampaignConfig, n: int) -> list[int]:
    if config.l_list:
        return [l for l in config.l_list if l >= 2]
    out = []
    for l in range(max(2, n), n + 4):
        if n**l <= min(config.cap_sparse, PARENT_MAX_DIM):
            out.append(l)
    return out or [n]


def _run_parent(config: CampaignConfig) -> _Collector:
    col = _Collector("parent")

    def su2_kernels():
        dims = {}
        for l in (4, 5, 6, 7):
            H = chain_hamiltonian(majumdar_ghosh(), l)
            dims[l] = kernel_basis(H.matrix, tol=config.tol_kernel).dim
        ok = dims == {4: 5, 5: 4, 6: 5, 7: 4}
        numbers = {f"dim_l{l}": d for l, d in dims.items()}
        return ok, numbers, ""

    _timed(col, 2, None, "dimer-kernel-dims", su2_kernels)

    def su2_aklt():
        H = chain_hamiltonian(aklt_su2(), 4)
        dim = kernel_basis(H.matrix, tol=config.tol_kernel).dim
        return dim == 4, {"kernel_dim": dim}, ""

    _timed(col, 3, None, "spin1-kernel-dim", su2_aklt)

    for n in config.n_list:
        for l in _parent_lengths(config, n):
            if n**l > min(config.cap_sparse, PARENT_MAX_DIM):
                col.skip(n, l, "parent-kernel", "cap-exceeded")
                col.skip(n, l, "frustration-free", "cap-exceeded")
                continue

            def check_parent(n=n, l=l):
                report = parent_check(n, l, cap=config.cap_sparse)
                return report.passed, dict(report.numbers), report.notes

            _timed(col, n, l, "parent-kernel", check_parent)

            if n**l <= config.cap_dense:

                def check_ff(n=n, l=l):
                    report = frustration_free_check(
                        so_n_aklt(n), l, cap=config.cap_sparse
                    )
                    return report.passed, dict(report.numbers), report.notes

                _timed(col, n, l, "frustration-free", check_ff)
            else:
                col.skip(n, l, "frustration-free", "cap-exceeded")
    return col


# ---------------------------------------------------------------------------
# spt campaign
# ---------------------------------------------------------------------------


def _run_spt(config: CampaignConfig) -> _Collector:
    col = _Collector("spt")
    for n in config.n_list:

        def check_spin(n=n):
            sign = cocycle_sign(n, "SPIN")
            return sign == -1, {"sign": sign}, ""

        _timed(col, n, None, "cocycle-spin", check_spin)

        def check_defining(n=n):
            sign = cocycle_sign(n, "DEFINING")
            return sign == 1, {"sign": sign}, ""

        _timed(col, n, None, "cocycle-defining", check_defining)

        def check_clifford_index(n=n):
            sign = mps_spt_index(clifford_tensors(n))
            return sign == -1, {"index": sign}, ""

        _timed(col, n, None, "index-clifford", check_clifford_index)

        def check_product_index(n=n):
            sign = mps_spt_index(product_tensors(n))
            return sign == 1, {"index": sign}, ""

        _timed(col, n, None, "index-product", check_product_index)

        if n == 3:

            def check_aklt_index():
                sign = mps_spt_index(aklt_tensors())
                return sign == -1, {"index": sign}, ""

            _timed(col, n, None, "index-spin1-aklt", check_aklt_index)
    return col


# ---------------------------------------------------------------------------
# cpt campaign
# ---------------------------------------------------------------------------


def _cpt_lengths(config: CampaignConfig) -> tuple:
    return config.l_list or (4, 6)


def _run_cpt(config: CampaignConfig) -> _Collector:
    col = _Collector("cpt")
    for n in config.n_list:
        for l in _cpt_lengths(config):
            if n % 2 == 1:
                col.skip(n, l, "cpt-suite", "not-applicable-odd-n")
                continue
            expected_pair = FIXES if n % 4 == 0 else SWAPS

            def check_conj(n=n, l=l):
                verdict, res = conjugation_check(n, l)
                matched = min(res.values())
                ok = verdict == expected_pair and matched < config.tol_match
                numbers = dict(res, matched_residual=matched)
                return ok, numbers, f"verdict {verdict}, expected {expected_pair}"

            _timed(col, n, l, "conjugation", check_conj)

            if l % 2 == 0:

                def check_refl(n=n, l=l):
                    verdict, res = reflection_check(n, l)
                    matched = min(res.values())
                    ok = verdict == expected_pair and matched < config.tol_match
                    numbers = dict(res, matched_residual=matched)
                    return ok, numbers, f"verdict {verdict}, expected {expected_pair}"

                _timed(col, n, l, "reflection", check_refl)
            else:
                col.skip(n, l, "reflection", "not-applicable-odd-length")

            def check_tr(n=n, l=l):
                verdict, res = time_reversal_check(n, l)
                matched = min(res["time_reversal_fix"], res["time_reversal_swap"])
                ok = verdict == INVARIANT and matched < config.tol_match
                notes = f"verdict {verdict}, expected {INVARIANT}"
                return ok, dict(res, matched_residual=matched), notes

            _timed(col, n, l, "time-reversal", check_tr)

            def check_breaking(n=n, l=l):
                report = on_site_breaking_check(
                    n, l, rotations=3, seed=config.seed
                )
                return report.passed, dict(report.numbers), report.notes

            _timed(col, n, l, "on-site-breaking", check_breaking)
    return col


# ---------------------------------------------------------------------------
# clifford-selftest campaign
# ---------------------------------------------------------------------------


def _random_element(n: int, rng: np.random.Generator) -> CliffordElement:
    terms = min(1 << n, 12)
    idx = rng.choice(1 << n, size=terms, replace=False)
    coefs = rng.standard_normal(terms) + 1.0j * rng.standard_normal(terms)
    return CliffordElement(n, {int(b): complex(c) for b, c in zip(idx, coefs)})


def _run_selftest(config: CampaignConfig) -> _Collector:
    col = _Collector("clifford-selftest")
    for n in config.n_list:
        if n > 8:
            col.skip(n, None, "matrix-oracle", "cap-exceeded")
            continue

        def check_oracle(n=n):
            rng = np.random.default_rng((config.seed, n))
            # at odd n the top word realizes to a scalar, so the matrix
            # trace also sees the full-mask coefficient
            full = (1 << n) - 1
            alias = 0.0 if n % 2 == 0 else 1.0 / gamma0(n).coef[full]
            dim = realize(CliffordElement.one(n)).shape[0]
            worst_prod = 0.0
            worst_trace = 0.0
            for _ in range(SELFTEST_SAMPLES):
                a = _random_element(n, rng)
                b = _random_element(n, rng)
                left = realize(a * b)
                right = realize(a) @ realize(b)
                scale = max(1.0, float(np.abs(right).max()))
                worst_prod = max(worst_prod, float(np.abs(left - right).max()) / scale)
                tr = trace(a) + dim * alias * a.coef.get(full, 0.0)
                mat_tr = complex(np.trace(realize(a)))
                tscale = max(1.0, abs(mat_tr))
                worst_trace = max(worst_trace, abs(tr - mat_tr) / tscale)
            numbers = {
                "samples": SELFTEST_SAMPLES,
                "max_product_rel": worst_prod,
                "max_trace_rel": worst_trace,
                "seed": config.seed,
            }
            return worst_prod < 1e-10 and worst_trace < 1e-10, numbers, ""

        _timed(col, n, None, "matrix-oracle", check_oracle)

        def check_anticomm(n=n):
            worst = 0.0
            eye = None
            for i in range(1, n + 1):
                gi = realize(CliffordElement.gamma(n, i))
                if eye is None:
                    eye = np.eye(len(gi))
                for j in range(i, n + 1):
                    gj = realize(CliffordElement.gamma(n, j))
                    anti = gi @ gj + gj @ gi
                    target = 2.0 * eye if i == j else 0.0 * eye
                    worst = max(worst, float(np.abs(anti - target).max()))
            return worst < 1e-12, {"max_dev": worst}, ""

        _timed(col, n, None, "anticommutation", check_anticomm)
    return col


# ---------------------------------------------------------------------------
# repr-dims campaign
# ---------------------------------------------------------------------------


def _pair_rep(n: int):
    def apply(i, j):
        L = so_generator(n, i, j)
        return np.kron(L, np.eye(n)) + np.kron(np.eye(n), L)

    return apply


def _wedge_pair_rep(n: int, k: int):
    def apply(i, j):
        Lk = wedge_generator(n, k, i, j)
        L1 = so_generator(n, i, j)
        return np.kron(Lk, np.eye(n)) + np.kron(np.eye(len(Lk)), L1)

    return apply


def _run_repr_dims(config: CampaignConfig) -> _Collector:
    col = _Collector("repr-dims")

    def check_cg():
        spins = [s / 2.0 for s in range(0, 9)]
        pairs = 0
        for mu in spins:
            for nu in spins:
                total = sum(int(round(2 * j + 1)) for j in clebsch_gordan_dims(mu, nu))
                if total != int(round((2 * mu + 1) * (2 * nu + 1))):
                    return False, {"mu": mu, "nu": nu}, "dimension sum mismatch"
                pairs += 1
        return True, {"pairs": pairs}, ""

    _timed(col, None, None, "cg-dimension-sum", check_cg)

    def check_iso3():
        rep = isotypic_decomposition(so_n_casimir(3, _pair_rep(3)))
        dims = sorted(d for _, d in rep.blocks)
        return dims == [1, 3, 5], {"total_dim": rep.total_dim}, ""

    _timed(col, 3, None, "isotypic-vector-pair", check_iso3)

    def check_iso5():
        rep = isotypic_decomposition(so_n_casimir(5, _pair_rep(5)))
        dims = sorted(d for _, d in rep.blocks)
        return dims == [1, 10, 14], {"total_dim": rep.total_dim}, ""

    _timed(col, 5, None, "isotypic-vector-pair", check_iso5)

    for n in config.n_list:
        if n > PIERI_MAX_N:
            col.skip(n, None, "wedge-branching", "cap-exceeded")
            continue

        def check_pieri(n=n):
            for k in range(0, n + 1):
                lhs, (lo, hi, rest) = pieri_dimension_check(n, k)
                rep = isotypic_decomposition(so_n_casimir(n, _wedge_pair_rep(n, k)))
                if rep.total_dim != lhs:
                    return False, {"k": k}, "total dimension mismatch"
                expected = {}
                for kk, d in ((k - 1, lo), (k + 1, hi)):
                    if d == 0:
                        continue
                    Ck = so_n_casimir(
                        n, lambda i, j, kk=kk: wedge_generator(n, kk, i, j)
                    )
                    val = float(Ck[0, 0].real)
                    if np.abs(Ck - val * np.eye(len(Ck))).max() > 1e-10:
                        return False, {"k": k}, "wedge Casimir is not scalar"
                    key = round(val, 6)
                    expected[key] = expected.get(key, 0) + d
                rest_found = 0
                for val, d in rep.blocks:
                    key = round(val, 6)
                    if key in expected:
                        if d != expected[key]:
                            return False, {"k": k}, "isotypic block size mismatch"
                    else:
                        rest_found += d
                if rest_found != rest:
                    return False, {"k": k}, "leftover block size mismatch"
            return True, {"max_grade": n}, ""

        _timed(col, n, None, "wedge-branching", check_pieri)
    return col


# ---------------------------------------------------------------------------
# document assembly
# ---------------------------------------------------------------------------

_RUNNERS = {
    "transfer": _run_transfer,
    "rdm": _run_rdm,
    "parent": _run_parent,
    "spt": _run_spt,
    "cpt": _run_cpt,
    "clifford-selftest": _run_selftest,
    "repr-dims": _run_repr_dims,
}


def _sort_key(row: dict):
    return (
        row["campaign"],
        -1 if row["n"] is None else row["n"],
        -1 if row["l"] is None else row["l"],
        row["name"],
    )


def run_campaign(config: CampaignConfig) -> dict:
    t0 = time.perf_counter()
    names = list(_RUNNERS) if config.campaign == "all" else [config.campaign]
    rows: list[dict] = []
    tables: dict[str, list] = {}
    if config.n_list:
        for name in names:
            col = _RUNNERS[name](config)
            rows.extend(col.rows)
            for table, trs in col.tables.items():
                tables.setdefault(table, []).extend(trs)
    rows.sort(key=_sort_key)
    for table in tables:
        tables[table] = [list(r) for r in sorted(tables[table])]
    counts = {
        "pass": sum(r["status"] == "pass" for r in rows),
        "fail": sum(r["status"] == "fail" for r in rows),
        "skip": sum(r["status"] == "skip" for r in rows),
        "total": len(rows),
    }
    return {
        "schema": SCHEMA_VERSION,
        "tool": "cliffchain",
        "version": __version__,
        "campaign": config.campaign,
        "config": {
            "n_list": list(config.n_list),
            "l_list": list(config.l_list),
            "tol_kernel": config.tol_kernel,
            "tol_match": config.tol_match,
            "seed": config.seed,
            "cap_dense": config.cap_dense,
            "cap_sparse": config.cap_sparse,
        },
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "checks": rows,
        "tables": tables,
        "summary": dict(counts, seconds=round(time.perf_counter() - t0, 6)),
    }


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

TABLE_HEADERS = {
    "eigenvalues": ("n", "value", "multiplicity"),
    "mu_by_length": ("n", "l", "grade", "mu"),
    "correlators": ("n", "r", "value"),
}


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def report_to_text(report: dict) -> str:
    lines = [
        f"cliffchain {report['version']} campaign={report['campaign']} "
        f"schema={report['schema']}"
    ]
    for row in report["checks"]:
        where = []
        if row["n"] is not None:
            where.append(f"n={row['n']}")
        if row["l"] is not None:
            where.append(f"l={row['l']}")
        loc = " ".join(where) if where else "-"
        nums = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                         for k, v in sorted(row["numbers"].items()))
        tail = f" ({row['notes']})" if row["notes"] else ""
        lines.append(f"[{row['status']:>4}] {row['name']} {loc}: {nums}{tail}")
    eig = report["tables"].get("eigenvalues")
    if eig:
        for n in sorted({row[0] for row in eig}):
            rows = sorted(((v, m) for nn, v, m in eig if nn == n), reverse=True)
            parts = ", ".join(f"{v:.6g}x{m}" for v, m in rows)
            lines.append(f"eigenvalues n={n}: {parts}")
    s = report["summary"]
    lines.append(
        f"summary: {s['pass']} pass, {s['fail']} fail, {s['skip']} skip "
        f"of {s['total']} in {s['seconds']:.2f}s"
    )
    return "\n".join(lines) + "\n"


def _checks_csv(report: dict) -> str:
    number_keys = sorted({k for row in report["checks"] for k in row["numbers"]})
    header = ["campaign", "n", "l", "name", "status", "notes", "seconds"]
    lines = [",".join(header + number_keys)]
    for row in report["checks"]:
        cells = [
            row["campaign"],
            "" if row["n"] is None else str(row["n"]),
            "" if row["l"] is None else str(row["l"]),
            row["name"],
            row["status"],
            row["notes"].replace(",", ";"),
            _csv_cell(row["seconds"]),
        ]
        for key in number_keys:
            value = row["numbers"].get(key)
            cells.append("" if value is None else _csv_cell(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _table_csv(name: str, rows: list) -> str:
    lines = [",".join(TABLE_HEADERS[name])]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str, out: str | None = None) -> list[str]:
    """Serialize a report; returns the list of files written (may be empty).

    'json' and 'text' print to stdout when out is None.  'csv-tables' always
    needs an output stem; it writes one checks file plus one file per table.
    """
    import pathlib
    import sys

    if fmt == "json":
        payload = report_to_json(report)
        if out is None:
            sys.stdout.write(payload)
            return []
        pathlib.Path(out).write_text(payload)
        return [out]
    if fmt == "text":
        payload = report_to_text(report)
        if out is None:
            sys.stdout.write(payload)
            return []
        pathlib.Path(out).write_text(payload)
        return [out]
    if fmt == "csv-tables":
        if out is None:
            raise ValueError("csv-tables requires an output path stem")
        stem = pathlib.Path(out)
        if stem.suffix == ".csv":
            stem = stem.with_suffix("")
        written = []
        path = stem.parent / f"{stem.name}_checks.csv"
        path.write_text(_checks_csv(report))
        written.append(str(path))
        for name, rows in sorted(report["tables"].items()):
            path = stem.parent / f"{stem.name}_{name}.csv"
            path.write_text(_table_csv(name, rows))
            written.append(str(path))
        return written
    raise ValueError(f"unknown output format {fmt!r}")
