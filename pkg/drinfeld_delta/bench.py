from __future__ import annotations

import time
from typing import Any

from .apoly import APoly
from .config import SCHEMA_VERSION, RunConfig
from .errors import InconsistencyError
from .expansion import StatusCallback, delta_expansion, evaluate_expansion
from .lattice import LatticeSpec, delta_direct, phi_from_lattice, u_param
from .verification import build_omega, builtin_points, module_values


def _timed(fn, *args, **kwargs) -> tuple[Any, float]:
    started = time.perf_counter()
    value = fn(*args, **kwargs)
    return value, time.perf_counter() - started


def bench_exponentiation(config: RunConfig, status_callback: StatusCallback | None = None) -> dict[str, Any]:
    """delta_expansion with charp_pow against square-and-multiply; the results must agree."""
    if status_callback:
        status_callback(f"expanding q={config.q} r={config.r} N={config.N} with charp_pow")
    fast, fast_seconds = _timed(
        delta_expansion, config.q, config.r, config.N, config.mode, config.D, True
    )
    if status_callback:
        status_callback("expanding again with square-and-multiply")
    slow, slow_seconds = _timed(
        delta_expansion, config.q, config.r, config.N, config.mode, config.D, False
    )
    if fast.coefficients != slow.coefficients:
        raise InconsistencyError("charp_pow and naive exponentiation disagree")
    return {
        "name": "charp_vs_naive",
        "q": config.q,
        "r": config.r,
        "N": config.N,
        "D": fast.degree,
        "factor_count": fast.factor_count,
        "charp_seconds": round(fast_seconds, 6),
        "naive_seconds": round(slow_seconds, 6),
        "speedup": round(slow_seconds / fast_seconds, 3) if fast_seconds else None,
        "identical": True,
    }


def bench_product_vs_direct(config: RunConfig, status_callback: StatusCallback | None = None) -> dict[str, Any] | None:
    """Delta at a built-in point through the expansion and through the torsion product."""
    points = builtin_points(config.q, config.r)
    if not points:
        return None
    spec = points[config.seed % len(points)]
    if status_callback:
        status_callback(f"timing both routes at {spec.name}")
    omega = build_omega(spec, config.P)
    expansion = delta_expansion(spec.q, spec.rank, config.N, config.mode, config.D)

    def product_route():
        prime = LatticeSpec(omega.entries[1:], config.B)
        phi = phi_from_lattice(prime, APoly.t(omega.ring.base_field))
        values = module_values(phi, omega.ring, spec.rank)
        return evaluate_expansion(expansion, values, u_param(omega, config.B))

    product, product_seconds = _timed(product_route)
    direct, direct_seconds = _timed(delta_direct, omega, config.B)
    return {
        "name": "product_vs_direct",
        "point": spec.name,
        "B": config.B,
        "P": config.P,
        "agreement": product.agreement(direct),
        "product_seconds": round(product_seconds, 6),
        "direct_seconds": round(direct_seconds, 6),
        "expansion_seconds": round(expansion.elapsed, 6),
    }


def run_bench(config: RunConfig, status_callback: StatusCallback | None = None) -> dict[str, Any]:
    rows = [bench_exponentiation(config, status_callback)]
    comparison = bench_product_vs_direct(config, status_callback)
    if comparison is not None:
        rows.append(comparison)
    return {"schema_version": SCHEMA_VERSION, "rows": rows}


def render_bench_text(payload: dict[str, Any]) -> str:
    lines = []
    for row in payload["rows"]:
        cells = [f"{key}={row[key]}" for key in sorted(row) if key != "name"]
        lines.append(f"{row['name']}: " + " ".join(cells))
    return "\n".join(lines) + "\n"
