"""Floating-point star-product kernels, their defining ODEs, and numeric checks.

Notation: ``A = v.k/kappa``, ``B = v.q/kappa`` where ``v.k = v^alpha k_alpha``
is a plain index pairing (no metric). The imaginary functions ``g``, ``Q`` and
``G`` are all of the form ``i * ln(positive)``; only the real logarithm is
stored (``g = i*gLog`` etc.), which keeps every amplitude real and positive.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .report import Report, format_u

__all__ = [
    "DomainError",
    "ConvergenceError",
    "StarParams",
    "PlaneWaveProduct",
    "Packet",
    "star_kernel",
    "closed_forms",
    "K",
    "K_inv",
    "J",
    "g_log",
    "Q_log",
    "G_log",
    "ode_oracle",
    "sample_momenta",
    "check_ode_oracle",
    "check_star_properties",
    "coproduct_consistency",
    "wave_packet_star",
    "star_with_plane_wave",
    "kernel_table_csv",
]


class DomainError(ValueError):
    """An input lies on or beyond a branch-cut guard."""


class ConvergenceError(RuntimeError):
    """RK4 step halving did not reach the requested tolerance."""


@dataclass(frozen=True)
class StarParams:
    u: float
    kappa: float
    v: tuple = (1.0, 0.0)

    def __post_init__(self):
        if not self.kappa or not math.isfinite(self.kappa):
            raise ValueError("kappa must be finite and nonzero")
        v = tuple(float(x) for x in self.v)
        if not all(math.isfinite(x) for x in v):
            raise ValueError("v must be finite")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "u", float(self.u))
        object.__setattr__(self, "kappa", float(self.kappa))

    @property
    def n(self) -> int:
        return len(self.v)

    @property
    def varr(self) -> np.ndarray:
        return np.asarray(self.v)

    def a(self, k) -> float:
        """``v.k / kappa``."""
        return float(np.dot(self.varr, np.asarray(k, dtype=float))) / self.kappa

    def to_dict(self) -> dict:
        return {"u": self.u, "kappa": self.kappa, "v": list(self.v), "n": self.n}


@dataclass(frozen=True)
class PlaneWaveProduct:
    """``e^{ik.x} * e^{iq.x} = amplitude * e^{i dvec.x}`` with ``amplitude = exp(-gLog)``."""

    dvec: np.ndarray
    gLog: float

    @property
    def amplitude(self) -> float:
        return math.exp(-self.gLog)

    def to_dict(self) -> dict:
        return {"dvec": [float(x) for x in self.dvec], "gLog": self.gLog, "amplitude": self.amplitude}


def _guard(value: float, text: str):
    if not value > 0:
        raise DomainError(f"domain violation: requires {text} > 0 (got {value!r})")


# ------------------------------------------------------------ closed forms
def star_kernel(p: StarParams, k, q, family: str = "L") -> PlaneWaveProduct:
    """Momentum composition ``D_mu(u; k, q)`` and the R-family amplitude."""
    family = family.upper()
    if family not in ("L", "R"):
        raise ValueError(f"family must be L or R, got {family!r}")
    k = np.asarray(k, dtype=float)
    q = np.asarray(q, dtype=float)
    u = p.u
    A, B = p.a(k), p.a(q)
    den = 1 + u * (1 - u) * A * B
    _guard(den, "1 + u(1-u)(v.k)(v.q)/kappa^2")
    _guard(1 + u * B, "1 + u(v.q)/kappa")
    _guard(1 - (1 - u) * A, "1 - (1-u)(v.k)/kappa")
    dvec = (k * (1 + u * B) + (1 - (1 - u) * A) * q) / den
    glog = math.log1p(u * (1 - u) * A * B) if family == "R" else 0.0
    return PlaneWaveProduct(dvec, glog)


def _expm1_over(a: float) -> float:
    """``(e^a - 1)/a`` with the removable singularity handled by a Taylor series."""
    if abs(a) >= 1e-4:
        return math.expm1(a) / a
    return sum(a**m / math.factorial(m + 1) for m in range(6))


def K(p: StarParams, k) -> np.ndarray:
    """``K(k) = k (e^A - 1)/A / ((1-u) e^A + u)``."""
    k = np.asarray(k, dtype=float)
    A = p.a(k)
    den = (1 - p.u) * math.exp(A) + p.u
    _guard(den, "(1-u) e^{v.k/kappa} + u")
    return k * _expm1_over(A) / den


def K_inv(p: StarParams, k) -> np.ndarray:
    """``K^-1(k) = k ln[(1 + uA)/(1 - (1-u)A)] / A``."""
    k = np.asarray(k, dtype=float)
    u, A = p.u, p.a(k)
    _guard(1 + u * A, "1 + u(v.k)/kappa")
    _guard(1 - (1 - u) * A, "1 - (1-u)(v.k)/kappa")
    if abs(A) >= 1e-4:
        f = (math.log1p(u * A) - math.log1p(-(1 - u) * A)) / A
    else:
        f = sum(A ** (m - 1) / m * ((-1) ** (m + 1) * u**m + (1 - u) ** m) for m in range(1, 8))
    return k * f


def J(p: StarParams, k, q) -> np.ndarray:
    """Closed-form ``J(k, q)``, with ``J(0, q) = q`` and ``J(k, 0) = K(k)``."""
    q = np.asarray(q, dtype=float)
    u = p.u
    Kk = K(p, k)
    C, B = p.a(Kk), p.a(q)
    den = 1 + u * (1 - u) * C * B
    _guard(den, "1 + u(1-u)(v.K)(v.q)/kappa^2")
    return (Kk * (1 + u * B) + (1 - (1 - u) * C) * q) / den


def _cumulant_series(u: float, a: float) -> float:
    s2 = u * (1 - u)
    k3 = s2 * (2 * u - 1)
    k4 = s2 * (1 - 6 * s2)
    return s2 * a**2 / 2 + k3 * a**3 / 6 + k4 * a**4 / 24


def g_log(p: StarParams, k) -> float:
    """``g(k) = i*gLog`` with ``gLog = ln(u e^{-(1-u)A} + (1-u) e^{uA})``."""
    u, A = p.u, p.a(k)
    arg = u * math.exp(-(1 - u) * A) + (1 - u) * math.exp(u * A)
    _guard(arg, "u e^{-(1-u)v.k/kappa} + (1-u) e^{u v.k/kappa}")
    if abs(A) < 1e-4:
        return _cumulant_series(u, A)
    return math.log1p(u * math.expm1(-(1 - u) * A) + (1 - u) * math.expm1(u * A))


def Q_log(p: StarParams, k, q) -> float:
    """``Q(k, q) = i*QLog``; ``QLog(k, 0) = gLog(k)`` and ``QLog(0, q) = 0``."""
    u, A, B = p.u, p.a(k), p.a(q)
    em, ep = math.expm1(-(1 - u) * A), math.expm1(u * A)
    arg = u * (1 - (1 - u) * B) * (1 + em) + (1 - u) * (1 + u * B) * (1 + ep)
    _guard(arg, "u(1-(1-u)v.q/kappa) e^{-(1-u)v.k/kappa} + (1-u)(1+u v.q/kappa) e^{u v.k/kappa}")
    base = _cumulant_series(u, A) if abs(A) < 1e-4 else None
    if base is not None:
        # ln(arg) = gLog(A) + ln(1 + u(1-u)B (e^{uA} - e^{-(1-u)A}) / (u e^{-(1-u)A} + (1-u) e^{uA}))
        norm = math.exp(base)
        return base + math.log1p(u * (1 - u) * B * (ep - em) / norm)
    return math.log1p(u * em + (1 - u) * ep + u * (1 - u) * B * (ep - em))


def G_log(p: StarParams, k, q) -> float:
    """``G(k,q) = Q(K^-1(k), q) - Q(K^-1(k), 0)`` as a real logarithm."""
    ki = K_inv(p, k)
    return Q_log(p, ki, q) - Q_log(p, ki, np.zeros_like(ki))


def closed_forms(p: StarParams, k, q) -> dict:
    return {
        "K": K(p, k),
        "Kinv": K_inv(p, k),
        "J": J(p, k, q),
        "gLog": g_log(p, k),
        "QLog": Q_log(p, k, q),
    }


# ------------------------------------------------------------ ODE oracle
def _rhs(p: StarParams, k: np.ndarray):
    """Right-hand side for ``y = (X_0..X_{n-1}, L)`` with X = K or J and L the log.

    ``dX_alpha/dlam = (k_alpha - ((1-u)/kappa)(v.k) X_alpha)(1 + (u/kappa) v.X)``,
    ``dL/dlam = u(1-u)/kappa^2 (v.k)(v.X)``; ``k`` has shape (S, n).
    """
    u, kap, v = p.u, p.kappa, p.varr
    vk = k @ v

    def f(y):
        X = y[:, :-1]
        vX = X @ v
        dX = (k - ((1 - u) / kap) * vk[:, None] * X) * (1 + (u / kap) * vX)[:, None]
        dL = u * (1 - u) / kap**2 * vk * vX
        return np.concatenate([dX, dL[:, None]], axis=1)

    return f


def _rk4(f, y0: np.ndarray, steps: int) -> np.ndarray:
    h = 1.0 / steps
    y = y0.copy()
    for _ in range(steps):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    if not np.all(np.isfinite(y)):
        raise DomainError("domain violation encountered during integration")
    return y


def _integrate(p: StarParams, k: np.ndarray, y0: np.ndarray, steps: int = 8, rtol: float = 1e-11, max_steps: int = 1 << 15):
    """RK4 from 0 to 1 with Richardson step halving until successive estimates agree."""
    f = _rhs(p, k)
    coarse = _rk4(f, y0, steps)
    prev = None
    while steps <= max_steps:
        fine = _rk4(f, y0, 2 * steps)
        est = fine + (fine - coarse) / 15
        if prev is not None:
            err = np.abs(est - prev)
            if np.all(err <= rtol * np.abs(est) + 1e-15):
                return est
        prev, coarse, steps = est, fine, 2 * steps
    raise ConvergenceError(f"RK4 step halving did not converge to {rtol} within {max_steps} steps")


def ode_oracle(p: StarParams, which: str, k, q=None, steps: int = 8):
    """Integrate the defining ODE of ``K``, ``J``, ``g`` or ``Q`` (batched over rows of ``k``).

    ``k`` (and ``q``) may be a single momentum or an (S, n) array. ``g``/``Q``
    return the real log part (``g = i*gLog``).
    """
    which = which.upper() if which.lower() != "g" else "g"
    single = np.ndim(k) == 1
    k = np.atleast_2d(np.asarray(k, dtype=float))
    S, n = k.shape
    if which in ("J", "Q"):
        if q is None:
            raise ValueError(f"{which} needs q")
        q = np.broadcast_to(np.atleast_2d(np.asarray(q, dtype=float)), (S, n))
        x0 = np.array(q, dtype=float)
    elif which in ("K", "g"):
        x0 = np.zeros((S, n))
    else:
        raise ValueError(f"unknown function {which!r}")
    y = _integrate(p, k, np.concatenate([x0, np.zeros((S, 1))], axis=1), steps)
    out = y[:, :-1] if which in ("K", "J") else y[:, -1]
    return out[0] if single else out


# ------------------------------------------------------------ sampling & checks
def sample_momenta(p: StarParams, rng: np.random.Generator, count: int, arity: int = 1, valid=None) -> list:
    """Uniform draws from ``[-kappa/4, kappa/4]^n``, rejecting tuples that fail ``valid``."""
    out = []
    half = abs(p.kappa) / 4
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 100 * count + 1000:
            raise DomainError("could not draw enough in-domain samples")
        draw = tuple(rng.uniform(-half, half, p.n) for _ in range(arity))
        if valid is not None:
            try:
                if not valid(*draw):
                    continue
            except DomainError:
                continue
        out.append(draw if arity > 1 else draw[0])
    return out


def _rel(a, b) -> float:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    scale = max(float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    diff = float(np.max(np.abs(a - b), initial=0.0))
    if diff == 0:
        return 0.0
    return diff / scale if scale > 1e-300 else math.inf


def _num_report(check, p: StarParams, worst: float, tol: float, family="-", detail="") -> Report:
    u = format_u(Fraction(p.u).limit_denominator(10**6))
    return Report(check, family, u, 0, bool(worst <= tol), None, 0, detail or f"max residual {worst:.3e} (tol {tol:.0e})")


def check_ode_oracle(p: StarParams, samples: int = 100, seed: int = 42, tol: float = 1e-9) -> list[Report]:
    """Closed forms of K, K^-1, J, g, Q against RK4 integration on seeded samples."""
    rng = np.random.default_rng(seed)

    def valid(k, q):
        closed_forms(p, k, q)
        K_inv(p, K(p, k))
        return True

    pairs = sample_momenta(p, rng, samples, 2, valid)
    ks = np.array([k for k, _ in pairs])
    qs = np.array([q for _, q in pairs])
    rk_K = ode_oracle(p, "K", ks)
    rk_J = ode_oracle(p, "J", ks, qs)
    rk_g = ode_oracle(p, "g", ks)
    rk_Q = ode_oracle(p, "Q", ks, qs)
    res = {"K": 0.0, "Kinv": 0.0, "J": 0.0, "g": 0.0, "Q": 0.0, "K=J(k,0)": 0.0}
    for i, (k, q) in enumerate(pairs):
        res["K"] = max(res["K"], _rel(K(p, k), rk_K[i]))
        res["J"] = max(res["J"], _rel(J(p, k, q), rk_J[i]))
        res["g"] = max(res["g"], _rel(g_log(p, k), rk_g[i]))
        res["Q"] = max(res["Q"], _rel(Q_log(p, k, q), rk_Q[i]))
        res["Kinv"] = max(res["Kinv"], _rel(K_inv(p, K(p, k)), k))
        res["K=J(k,0)"] = max(res["K=J(k,0)"], _rel(K(p, k), J(p, k, np.zeros_like(k))))
    tols = {"K=J(k,0)": 1e-12}
    return [_num_report(f"ode-{name}", p, worst, tols.get(name, tol)) for name, worst in res.items()]


def check_star_properties(p: StarParams, samples: int = 100, seed: int = 42, tol: float = 1e-9) -> list[Report]:
    """Associativity of D, the gLog cocycle, unit laws, and the K/J/Q representations."""
    rng = np.random.default_rng(seed)

    def valid(k, q, r):
        kq = star_kernel(p, k, q, "R").dvec
        qr = star_kernel(p, q, r, "R").dvec
        star_kernel(p, kq, r, "R")
        star_kernel(p, k, qr, "R")
        J(p, K_inv(p, k), q)
        G_log(p, k, q)
        return True

    triples = sample_momenta(p, rng, samples, 3, valid)
    zero = np.zeros(p.n)
    res = {"assoc": 0.0, "cocycle": 0.0, "unit": 0.0, "D=J(Kinv)": 0.0, "G=Q(Kinv)": 0.0}
    for k, q, r in triples:
        kq, qr = star_kernel(p, k, q, "R"), star_kernel(p, q, r, "R")
        left, right = star_kernel(p, kq.dvec, r, "R"), star_kernel(p, k, qr.dvec, "R")
        res["assoc"] = max(res["assoc"], _rel(left.dvec, right.dvec))
        res["cocycle"] = max(res["cocycle"], _rel(kq.gLog + left.gLog, qr.gLog + right.gLog))
        unit = [
            _rel(star_kernel(p, k, zero, "R").dvec, k),
            _rel(star_kernel(p, zero, q, "R").dvec, q),
            abs(star_kernel(p, k, zero, "R").gLog),
            abs(star_kernel(p, zero, q, "R").gLog),
        ]
        res["unit"] = max(res["unit"], *unit)
        res["D=J(Kinv)"] = max(res["D=J(Kinv)"], _rel(kq.dvec, J(p, K_inv(p, k), q)))
        res["G=Q(Kinv)"] = max(res["G=Q(Kinv)"], _rel(kq.gLog, G_log(p, k, q)))
    return [_num_report(f"star-{name}", p, worst, tol) for name, worst in res.items()]


def coproduct_consistency(p: StarParams, family: str, N: int, k, q, cfg=None) -> Report:
    """Truncated symbolic ``Delta^F(P_mu)`` against the closed-form kernel.

    The residual at ``kappa`` and ``2 kappa`` must shrink by ``2^{N+1}`` (within 20%).
    """
    from .hopf import build_twist, twisted_coproduct
    from .ncalg import Config, eval_momentum

    uq = Fraction(p.u).limit_denominator(10**6)
    if cfg is None:
        cfg = Config(n=p.n, N=N, v=tuple(Fraction(x).limit_denominator(10**6) for x in p.v))
    F = build_twist(family, uq, cfg)
    coprods = [twisted_coproduct(F, cfg.P(mu)) for mu in range(cfg.n)]
    residuals = []
    for kap in (p.kappa, 2 * p.kappa):
        pk = StarParams(p.u, kap, p.v)
        exact = star_kernel(pk, k, q, family).dvec
        approx = np.array([eval_momentum(c, k, q, kap) for c in coprods], dtype=float)
        residuals.append(float(np.max(np.abs(approx - exact))))
    ratio = residuals[0] / residuals[1] if residuals[1] else math.inf
    target = 2.0 ** (N + 1)
    ok = 0.8 * target <= ratio <= 1.2 * target
    return Report(
        "coproduct-consistency",
        family,
        format_u(uq),
        N,
        ok,
        None,
        max(len(c) for c in coprods),
        f"ratio {ratio:.2f} vs 2^{N + 1} = {target:.0f}; residuals {residuals[0]:.3e}, {residuals[1]:.3e}",
    )


# ------------------------------------------------------------ wave packets
@dataclass(frozen=True)
class Packet:
    """Gaussian packet ``f(x) = exp(i c.x - sum sigma_j^2 x_j^2 / 2)``.

    Its Fourier density is the normal density with mean ``center`` and
    standard deviation ``width`` per component.
    """

    center: tuple
    width: tuple

    def __call__(self, x) -> complex:
        c, w, x = np.asarray(self.center), np.asarray(self.width), np.asarray(x, dtype=float)
        return complex(np.exp(1j * c @ x - 0.5 * np.sum((w * x) ** 2)))

    def nodes(self, m: int):
        """Gauss-Hermite nodes per component and matching weights (summing to 1)."""
        t, w = np.polynomial.hermite.hermgauss(m)
        pts = [c + math.sqrt(2) * s * t for c, s in zip(self.center, self.width)]
        return pts, w / math.sqrt(math.pi)


def _tail_check(p: StarParams, pk: Packet, pq: Packet, tail: float):
    """The mass outside a box around both packets is below ``tail``, and the box is in-domain."""
    dims = len(pk.center) + len(pq.center)
    T = 1.0
    while dims * math.erfc(T / math.sqrt(2)) >= tail:
        T += 0.25
    absv = np.abs(p.varr)
    spans = []
    for pk_ in (pk, pq):
        c = p.a(pk_.center)
        r = T * float(absv @ np.asarray(pk_.width)) / abs(p.kappa)
        spans.append((c - r, c + r))
    u = p.u
    for A in spans[0]:
        for B in spans[1]:
            for val, text in (
                (1 + u * (1 - u) * A * B, "1 + u(1-u)(v.k)(v.q)/kappa^2"),
                (1 + u * B, "1 + u(v.q)/kappa"),
                (1 - (1 - u) * A, "1 - (1-u)(v.k)/kappa"),
            ):
                if not val > 0:
                    raise DomainError(f"tail mass violation: packet support within {T} widths reaches {text} <= 0")


def wave_packet_star(p: StarParams, pk: Packet, pq: Packet, x, family: str = "R", m: int = 16, tail: float = 1e-6) -> complex:
    """``(f * g)(x) = int int f^(k) g^(q) e^{i D(k,q).x} e^{-gLog(k,q)} dk dq`` by Gauss-Hermite quadrature."""
    _tail_check(p, pk, pq, tail)
    x = np.asarray(x, dtype=float)
    kn, w = pk.nodes(m)
    qn, _ = pq.nodes(m)
    grids = np.meshgrid(*kn, *qn, indexing="ij")
    wts = np.ones_like(grids[0])
    for j, wg in enumerate(np.meshgrid(*([w] * (2 * p.n)), indexing="ij")):
        wts = wts * wg
    n = p.n
    ks = np.stack([g.ravel() for g in grids[:n]], axis=1)
    qs = np.stack([g.ravel() for g in grids[n:]], axis=1)
    dvec, amp = _kernel_batch(p, ks, qs, family)
    return complex(np.sum(wts.ravel() * amp * np.exp(1j * dvec @ x)))


def _kernel_batch(p: StarParams, ks: np.ndarray, qs: np.ndarray, family: str):
    v, u = p.varr, p.u
    A, B = ks @ v / p.kappa, qs @ v / p.kappa
    den = 1 + u * (1 - u) * A * B
    for val, text in (
        (den, "1 + u(1-u)(v.k)(v.q)/kappa^2"),
        (1 + u * B, "1 + u(v.q)/kappa"),
        (1 - (1 - u) * A, "1 - (1-u)(v.k)/kappa"),
    ):
        if not np.all(val > 0):
            raise DomainError(f"domain violation at a quadrature node: requires {text} > 0")
    dvec = (ks * (1 + u * B)[:, None] + (1 - (1 - u) * A)[:, None] * qs) / den[:, None]
    amp = 1 / den if family.upper() == "R" else np.ones_like(den)
    return dvec, amp


def star_with_plane_wave(p: StarParams, pk: Packet, q, x, family: str = "R", m: int = 24) -> complex:
    """``(f * e^{iq.x})(x)`` by quadrature over ``k`` only: the narrow-packet limit."""
    x = np.asarray(x, dtype=float)
    kn, w = pk.nodes(m)
    grids = np.meshgrid(*kn, indexing="ij")
    wts = np.ones_like(grids[0])
    for wg in np.meshgrid(*([w] * p.n), indexing="ij"):
        wts = wts * wg
    ks = np.stack([g.ravel() for g in grids], axis=1)
    qs = np.broadcast_to(np.asarray(q, dtype=float), ks.shape)
    dvec, amp = _kernel_batch(p, ks, qs, family)
    return complex(np.sum(wts.ravel() * amp * np.exp(1j * dvec @ x)))


def kernel_table_csv(p: StarParams, pairs, family: str = "R") -> str:
    """CSV rows ``k, q, D, amplitude`` (vector components joined by spaces)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "q", "D", "amplitude"])
    for k, q in pairs:
        pw = star_kernel(p, k, q, family)
        fmt = lambda a: " ".join(f"{float(t):.17g}" for t in a)  # noqa: E731
        writer.writerow([fmt(k), fmt(q), fmt(pw.dvec), f"{pw.amplitude:.17g}"])
    return buf.getvalue()
