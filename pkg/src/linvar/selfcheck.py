"""Built-in fixture suite behind ``linvar selfcheck``."""
import numpy as np

from .linalg import fro
from .oracle import finite_diff_gradient_check, line_distance_r3, random_restart_minimize
from .pinv import check_penrose, pinv_direct, pinv_partitioned, relative_penrose
from .samples import axis_lines, lines_as_varieties, random_line_pair, shifted_axis_lines
from .varieties import best_pair, classify


def _close(x, y, tol):
    return bool(np.all(np.abs(np.asarray(x, float) - np.asarray(y, float)) <= tol))


def _axis(method):
    v1, v2 = axis_lines()
    bp = best_pair(v1, v2, method)
    tag = classify(v1, v2).tag.value
    ok = (
        abs(bp.distance - 1.0) <= 1e-12
        and _close(bp.point_on_first, [0, 0, 1], 1e-12)
        and _close(bp.point_on_second, [0, 0, 0], 1e-12)
        and bp.param_norm <= 1e-12
        and tag == "skew"
    )
    return ok, f"distance={bp.distance:.3e} param_norm={bp.param_norm:.3e} tag={tag}"


def _shifted_axis():
    v1, v2 = shifted_axis_lines()
    bp = best_pair(v1, v2)
    ok = (
        _close(bp.point_on_first, [0, 0, 1], 1e-12)
        and _close(bp.point_on_second, [0, 0, 0], 1e-12)
        and _close(bp.params_first, [-3], 1e-12)
        and _close(bp.params_second, [5], 1e-12)
    )
    return ok, f"u*={bp.params_first[0]:.3e} v*={bp.params_second[0]:.3e}"


def _penrose(name, a, expected=None):
    res = pinv_direct(a)
    worst = max(relative_penrose(a, res.pinv))
    ok = worst <= 1e-9
    if expected is not None:
        ok = ok and _close(res.pinv, expected, 1e-12)
    return ok, f"max relative residual={worst:.3e} rank={res.numerical_rank}"


def _partitioned():
    res, _ = pinv_partitioned([[1.0]], [[1.0]])
    worst = max(check_penrose([[1.0, 1.0]], res.pinv))
    ok = _close(res.pinv, [[0.5], [0.5]], 1e-12)
    return ok, f"max residual={worst:.3e}"


def _random_lines(seed):
    rng = np.random.default_rng(seed)
    p1, d1, p2, d2 = random_line_pair(rng)
    v1, v2 = lines_as_varieties(p1, d1, p2, d2)
    bp = best_pair(v1, v2)
    cross = line_distance_r3(p1, d1, p2, d2)
    descent = random_restart_minimize(v1, v2, restarts=10, seed=seed)
    grad = finite_diff_gradient_check(v1, v2, bp)
    gap_cross = abs(bp.distance - cross) / max(1.0, cross)
    gap_descent = abs(bp.distance - descent) / max(1.0, descent)
    return [
        ("random lines vs cross product", gap_cross <= 1e-9, f"gap={gap_cross:.3e}"),
        ("random lines vs restarts", gap_descent <= 1e-6, f"gap={gap_descent:.3e}"),
        ("random lines gradient", grad.passed, f"|grad|={grad.method_value:.3e}"),
    ]


def run_checks(seed=0):
    """Return ``[(name, passed, detail), ...]`` for every fixture."""
    rows = []

    def add(name, fn, *args):
        try:
            ok, detail = fn(*args)
        except Exception as exc:  # a crash is a failed fixture, not a crashed selfcheck
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append((name, bool(ok), detail))

    add("axis lines (direct)", _axis, "direct")
    add("axis lines (partitioned)", _axis, "partitioned")
    add("shifted axis lines", _shifted_axis)
    add("penrose identity", _penrose, "I4", np.eye(4), np.eye(4))
    add("penrose diag(2,0)", _penrose, "diag", np.diag([2.0, 0.0]), np.diag([0.5, 0.0]))
    add("penrose column [1;1]", _penrose, "col", [[1.0], [1.0]], [[0.5, 0.5]])
    rng = np.random.default_rng(seed)
    add("penrose random 6x4", _penrose, "rand", rng.standard_normal((6, 4)))
    add("partitioned [1 1]", _partitioned)
    try:
        rows.extend(_random_lines(seed))
    except Exception as exc:
        rows.append(("random lines", False, f"{type(exc).__name__}: {exc}"))
    return rows


def format_table(rows):
    width = max(len(name) for name, _, _ in rows)
    lines = [f"{'check':<{width}}  result  detail"]
    for name, ok, detail in rows:
        lines.append(f"{name:<{width}}  {'PASS' if ok else 'FAIL':<6}  {detail}")
    passed = sum(ok for _, ok, _ in rows)
    lines.append(f"{passed}/{len(rows)} checks passed")
    return "\n".join(lines)
