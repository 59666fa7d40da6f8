"""Numerical Chern-Weil computation for SU(2) clutching data over the 4-sphere.

Geometry conventions used throughout:

- The closed 3-disk D3 carries spherical coordinates (alpha, beta, r) in
  [0, 2pi] x [0, pi] x [0, 1]; r = 1 is the boundary sphere.
- A clutching function is a pair of smooth SU(2)-valued charts on D3, one
  per hemisphere of S^3.  Its second Chern number is the orientation-signed
  hemisphere difference of the integral of the 3-form

      A = 2(zb dz dw dwb + wb dz dzb dw - 2(z dzb dw dwb + w dz dzb dwb))

  divided by 24 pi^2.  Only the real part of A contributes; in the real
  decomposition z = x + iy, w = u + iv it collapses to
  Re A = -12 [(y dx - x dy) du dv + (v du - u dv) dx dy].
- SU(2) elements are stored as pairs (z, w) denoting [[z, -wb], [w, zb]].
- Charts are vectorized: they accept broadcastable coordinate arrays and
  return complex (z, w) arrays with |z|^2 + |w|^2 = 1.

The hemisphere difference is taken lower-chart minus upper-chart; with the
built-in hemisphere parameterization this makes the degree of the identity
map +1 and reproduces the reference value -1 for the built-in two-cocycle
example.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

UNIT_TOL = 1e-12
RENORM_TRIGGER = 1e-13
BOUNDARY_TOL = 1e-10
DEFAULT_FD_STEP = 1e-5

#: Collar V of the disk boundary in which the two-cocycle construction
#: assumes radial independence: points with height x5 > -1/3, i.e.
#: r > sqrt(8)/3 under r = sqrt(1 - x5^2).
COLLAR_R_MIN = math.sqrt(8.0) / 3.0


# ---------------------------------------------------------------------------
# scalar SU(2) values
# ---------------------------------------------------------------------------


def _renormalized(z: complex, w: complex) -> tuple[complex, complex]:
    norm = abs(z) ** 2 + abs(w) ** 2
    if abs(norm - 1.0) > RENORM_TRIGGER:
        scale = 1.0 / math.sqrt(norm)
        return z * scale, w * scale
    return z, w


@dataclass(frozen=True)
class SU2Matrix:
    """An SU(2) element (z, w), i.e. the matrix [[z, -conj(w)], [w, conj(z)]]."""

    z: complex
    w: complex

    def __post_init__(self) -> None:
        norm = abs(self.z) ** 2 + abs(self.w) ** 2
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(f"not a unit pair: |z|^2+|w|^2 = {norm!r}")

    @classmethod
    def identity(cls) -> "SU2Matrix":
        return cls(1.0 + 0.0j, 0.0 + 0.0j)

    def matrix(self) -> np.ndarray:
        return np.array([[self.z, -np.conj(self.w)], [self.w, np.conj(self.z)]])


def su2_product(a: SU2Matrix, b: SU2Matrix) -> SU2Matrix:
    z = a.z * b.z - np.conj(a.w) * b.w
    w = a.w * b.z + np.conj(a.z) * b.w
    return SU2Matrix(*_renormalized(complex(z), complex(w)))


def su2_inverse(a: SU2Matrix) -> SU2Matrix:
    return SU2Matrix(complex(np.conj(a.z)), -a.w)


def su2_power(a: SU2Matrix, k: int) -> SU2Matrix:
    """Integer power by repeated squaring; negative powers go through the inverse."""
    if k == 0:
        return SU2Matrix.identity()
    if k < 0:
        return su2_power(su2_inverse(a), -k)
    result = SU2Matrix.identity()
    base = a
    chain = 0
    while k:
        if k & 1:
            result = su2_product(result, base)
            chain += 1
        if k > 1:
            base = su2_product(base, base)
            chain += 1
        if chain > 8:
            result = SU2Matrix(*_renormalized(result.z, result.w))
            chain = 0
        k >>= 1
    return result


def commutator_norm(a: SU2Matrix, b: SU2Matrix) -> float:
    """Frobenius norm of ab - ba."""
    ma, mb = a.matrix(), b.matrix()
    return float(np.linalg.norm(ma @ mb - mb @ ma))


# ---------------------------------------------------------------------------
# vectorized SU(2)-valued maps on D3
# ---------------------------------------------------------------------------

Coords = tuple[np.ndarray, np.ndarray, np.ndarray]
PairArrays = tuple[np.ndarray, np.ndarray]
PartialArrays = tuple[tuple[np.ndarray, np.ndarray, np.ndarray],
                      tuple[np.ndarray, np.ndarray, np.ndarray]]


class SU2Map:
    """A smooth map D3 -> SU(2) with vectorized evaluation.

    ``value_fn(alpha, beta, r)`` returns the complex pair (z, w); the
    optional ``partials_fn`` returns the analytic coordinate partials
    ((dz_da, dz_db, dz_dr), (dw_da, dw_db, dw_dr)).  Without it, partials
    fall back to central differences with one Richardson extrapolation
    level.  Inverses, products and integer powers propagate analytic
    partials through the product rule.
    """

    def __init__(self, value_fn: Callable[..., PairArrays],
                 partials_fn: Callable[..., PartialArrays] | None = None,
                 fd_step: float = DEFAULT_FD_STEP):
        self._value = value_fn
        self._partials = partials_fn
        self.fd_step = fd_step

    def __call__(self, alpha, beta, r) -> PairArrays:
        z, w = self._value(alpha, beta, r)
        return np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)

    def has_analytic_partials(self) -> bool:
        return self._partials is not None

    def partials(self, alpha, beta, r) -> PartialArrays:
        if self._partials is not None:
            (zd, wd) = self._partials(alpha, beta, r)
            return (tuple(np.asarray(v, dtype=complex) for v in zd),
                    tuple(np.asarray(v, dtype=complex) for v in wd))
        return self._fd_partials(alpha, beta, r)

    def _fd_partials(self, alpha, beta, r) -> PartialArrays:
        zd, wd = [], []
        for axis in range(3):
            dz, dw = self._fd_axis(alpha, beta, r, axis, self.fd_step)
            dz2, dw2 = self._fd_axis(alpha, beta, r, axis, self.fd_step / 2)
            zd.append((4.0 * dz2 - dz) / 3.0)
            wd.append((4.0 * dw2 - dw) / 3.0)
        return (tuple(zd), tuple(wd))

    def _fd_axis(self, alpha, beta, r, axis: int, h: float) -> PairArrays:
        deltas = [0.0, 0.0, 0.0]
        deltas[axis] = h
        zp, wp = self(alpha + deltas[0], beta + deltas[1], r + deltas[2])
        zm, wm = self(alpha - deltas[0], beta - deltas[1], r - deltas[2])
        return (zp - zm) / (2.0 * h), (wp - wm) / (2.0 * h)

    # -- compositions --------------------------------------------------

    @classmethod
    def constant(cls, z: complex, w: complex) -> "SU2Map":
        pair = SU2Matrix(z, w)  # validates unit norm

        def value(alpha, beta, r):
            shape = np.broadcast(alpha, beta, r).shape
            return (np.full(shape, pair.z, dtype=complex),
                    np.full(shape, pair.w, dtype=complex))

        def partials(alpha, beta, r):
            shape = np.broadcast(alpha, beta, r).shape
            zero = np.zeros(shape, dtype=complex)
            return ((zero, zero, zero), (zero, zero, zero))

        return cls(value, partials)

    def inverse(self) -> "SU2Map":
        def value(alpha, beta, r):
            z, w = self(alpha, beta, r)
            return np.conj(z), -w

        partials = None
        if self._partials is not None:
            def partials(alpha, beta, r):
                zd, wd = self.partials(alpha, beta, r)
                return (tuple(np.conj(v) for v in zd), tuple(-v for v in wd))

        return SU2Map(value, partials, self.fd_step)

    def __mul__(self, other: "SU2Map") -> "SU2Map":
        if not isinstance(other, SU2Map):
            return NotImplemented

        def value(alpha, beta, r):
            za, wa = self(alpha, beta, r)
            zb, wb = other(alpha, beta, r)
            return za * zb - np.conj(wa) * wb, wa * zb + np.conj(za) * wb

        partials = None
        if self._partials is not None and other._partials is not None:
            def partials(alpha, beta, r):
                za, wa = self(alpha, beta, r)
                zb, wb = other(alpha, beta, r)
                zda, wda = self.partials(alpha, beta, r)
                zdb, wdb = other.partials(alpha, beta, r)
                zd, wd = [], []
                for axis in range(3):
                    zd.append(zda[axis] * zb + za * zdb[axis]
                              - np.conj(wda[axis]) * wb - np.conj(wa) * wdb[axis])
                    wd.append(wda[axis] * zb + wa * zdb[axis]
                              + np.conj(zda[axis]) * wb + np.conj(za) * wdb[axis])
                return (tuple(zd), tuple(wd))

        return SU2Map(value, partials, self.fd_step)

    def power(self, k: int) -> "SU2Map":
        if k == 0:
            return SU2Map.constant(1.0, 0.0)
        if k < 0:
            return self.inverse().power(-k)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result


# ---------------------------------------------------------------------------
# partition-of-unity profile
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionProfile:
    """A smooth height profile: 1 on [-1, -1/3], 0 on [1/3, 1], nonincreasing.

    ``fn`` must be vectorized over the height; ``derivative`` is optional
    and falls back to Richardson-extrapolated central differences.
    Construction verifies the shape constraints by finite differences.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        h = np.linspace(-1.0, 1.0, 1201)
        vals = np.asarray(self.fn(h), dtype=float)
        if not np.allclose(vals[h <= -1 / 3], 1.0, atol=1e-12):
            raise ValueError("profile must be identically 1 on [-1, -1/3]")
        if not np.allclose(vals[h >= 1 / 3], 0.0, atol=1e-12):
            raise ValueError("profile must be identically 0 on [1/3, 1]")
        if np.any(np.diff(vals) > 1e-12):
            raise ValueError("profile must be monotone nonincreasing")
        # C1 check: forward and backward difference quotients must agree.
        step = h[1] - h[0]
        fwd = (vals[2:] - vals[1:-1]) / step
        bwd = (vals[1:-1] - vals[:-2]) / step
        if np.max(np.abs(fwd - bwd)) > 0.1:
            raise ValueError("profile does not look continuously differentiable")

    def __call__(self, h):
        return self.fn(np.asarray(h, dtype=float))

    def diff(self, h):
        h = np.asarray(h, dtype=float)
        if self.derivative is not None:
            return np.asarray(self.derivative(h), dtype=float)
        step = DEFAULT_FD_STEP
        d1 = (self.fn(h + step) - self.fn(h - step)) / (2 * step)
        d2 = (self.fn(h + step / 2) - self.fn(h - step / 2)) / step
        return (4.0 * d2 - d1) / 3.0


def standard_profile() -> PartitionProfile:
    """Quintic smoothstep transition from 1 to 0 across [-1/3, 1/3]."""

    def fn(h):
        t = np.clip((np.asarray(h, dtype=float) + 1 / 3) * 1.5, 0.0, 1.0)
        return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t))

    def derivative(h):
        t = np.clip((np.asarray(h, dtype=float) + 1 / 3) * 1.5, 0.0, 1.0)
        return -1.5 * 30.0 * t * t * (t - 1.0) * (t - 1.0)

    return PartitionProfile(fn, derivative)


def f2_moment(profile, grid: "QuadratureGrid | None" = None, nodes: int | None = None) -> float:
    """The height integral of (1 - f2) f2 f2' over [-1, 1].

    Accepts a PartitionProfile or any plain callable (the latter is
    differentiated by central differences).  Integration is panelwise
    Gauss-Legendre with panel joints at the profile seams +-1/3.
    """
    if nodes is None:
        nodes = len(grid.r_nodes) if grid is not None else 64
    if isinstance(profile, PartitionProfile):
        f, df = profile, profile.diff
    else:
        f = profile

        def df(h):
            step = DEFAULT_FD_STEP
            d1 = (f(h + step) - f(h - step)) / (2 * step)
            d2 = (f(h + step / 2) - f(h - step / 2)) / step
            return (4.0 * d2 - d1) / 3.0

    total = 0.0
    for lo, hi in ((-1.0, -1 / 3), (-1 / 3, 1 / 3), (1 / 3, 1.0)):
        x, w = _gauss_legendre(nodes, lo, hi)
        vals = (1.0 - np.asarray(f(x), dtype=float)) * np.asarray(f(x), dtype=float) * df(x)
        total += float(np.sum(vals * w))
    return total


# ---------------------------------------------------------------------------
# quadrature grids
# ---------------------------------------------------------------------------


def _gauss_legendre(n: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    t, w = np.polynomial.legendre.leggauss(n)
    half = (hi - lo) / 2.0
    return half * t + (hi + lo) / 2.0, half * w


class QuadratureGrid:
    """Tensor Gauss-Legendre nodes for (alpha, beta, r); open rules only.

    The beta axis is split at pi/2 where the built-in cocycles are only
    piecewise smooth, so no node ever sits on the seam or on a coordinate
    degeneracy (r = 0, beta in {0, pi}).
    """

    __slots__ = ("alpha_nodes", "alpha_weights", "beta_nodes", "beta_weights",
                 "r_nodes", "r_weights")

    def __init__(self, alpha_nodes, alpha_weights, beta_nodes, beta_weights,
                 r_nodes, r_weights):
        self.alpha_nodes = np.asarray(alpha_nodes, dtype=float)
        self.alpha_weights = np.asarray(alpha_weights, dtype=float)
        self.beta_nodes = np.asarray(beta_nodes, dtype=float)
        self.beta_weights = np.asarray(beta_weights, dtype=float)
        self.r_nodes = np.asarray(r_nodes, dtype=float)
        self.r_weights = np.asarray(r_weights, dtype=float)
        self.validate()

    @classmethod
    def make(cls, n_alpha: int, n_beta: int | None = None, n_r: int | None = None) -> "QuadratureGrid":
        n_beta = n_alpha if n_beta is None else n_beta
        n_r = n_alpha if n_r is None else n_r
        if min(n_alpha, n_beta, n_r) < 2 or n_beta % 2:
            raise ValueError("need at least 2 nodes per axis and an even beta count")
        a, wa = _gauss_legendre(n_alpha, 0.0, 2.0 * math.pi)
        b1, wb1 = _gauss_legendre(n_beta // 2, 0.0, math.pi / 2)
        b2, wb2 = _gauss_legendre(n_beta // 2, math.pi / 2, math.pi)
        r, wr = _gauss_legendre(n_r, 0.0, 1.0)
        return cls(a, wa, np.concatenate([b1, b2]), np.concatenate([wb1, wb2]), r, wr)

    def validate(self) -> None:
        for name, weights, length in (("alpha", self.alpha_weights, 2.0 * math.pi),
                                      ("beta", self.beta_weights, math.pi),
                                      ("r", self.r_weights, 1.0)):
            if abs(float(np.sum(weights)) - length) > 1e-12:
                raise ValueError(f"{name}-axis weights do not sum to the axis length")

    def counts(self) -> dict:
        return {"alpha": len(self.alpha_nodes), "beta": len(self.beta_nodes),
                "r": len(self.r_nodes)}

    def halved(self) -> "QuadratureGrid":
        def half_even(n: int) -> int:
            h = max(2, n // 2)
            return h + (h % 2)
        c = self.counts()
        return QuadratureGrid.make(max(2, c["alpha"] // 2), half_even(c["beta"]),
                                   max(2, c["r"] // 2))


# ---------------------------------------------------------------------------
# cocycle pairs and clutching functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CocyclePair:
    """Two smooth maps D3 -> SU(2) feeding the three-set cover construction."""

    rho1: SU2Map
    rho2: SU2Map

    def _mesh(self, n: int, r_values: np.ndarray) -> Coords:
        alpha = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)[:, None, None]
        beta = np.linspace(0.0, math.pi, n)[None, :, None]
        return alpha, beta, r_values[None, None, :]

    def max_commutator(self, n: int = 64, r_values: Sequence[float] = (1.0,)) -> float:
        """Largest Frobenius norm of [rho1, rho2] over the sample mesh."""
        a, b, r = self._mesh(n, np.asarray(r_values, dtype=float))
        z1, w1 = self.rho1(a, b, r)
        z2, w2 = self.rho2(a, b, r)
        pz = z1 * z2 - np.conj(w1) * w2
        pw = w1 * z2 + np.conj(z1) * w2
        qz = z2 * z1 - np.conj(w2) * w1
        qw = w2 * z1 + np.conj(z2) * w1
        # Frobenius norm of the pair difference of [[z,-wb],[w,zb]] matrices.
        return float(np.max(np.sqrt(2.0 * (np.abs(pz - qz) ** 2 + np.abs(pw - qw) ** 2))))

    def max_radial_derivative(self, n: int = 64,
                              r_values: Sequence[float] | None = None,
                              step: float = 1e-4) -> float:
        """Largest finite-difference |d rho_i / dr| over the sample mesh."""
        if r_values is None:
            r_values = np.linspace(COLLAR_R_MIN, 1.0 - step, 16)
        a, b, r = self._mesh(n, np.asarray(r_values, dtype=float))
        worst = 0.0
        for rho in (self.rho1, self.rho2):
            zp, wp = rho(a, b, r + step)
            zm, wm = rho(a, b, r - step)
            mags = np.sqrt(np.abs(zp - zm) ** 2 + np.abs(wp - wm) ** 2) / (2 * step)
            worst = max(worst, float(np.max(mags)))
        return worst

    def verify_boundary(self, n: int = 64, tol: float = BOUNDARY_TOL) -> bool:
        """Commutativity on the boundary sphere r = 1 (what the clutching needs)."""
        return self.max_commutator(n, (1.0,)) <= tol

    def verify_collar(self, n: int = 64, comm_tol: float = BOUNDARY_TOL,
                      radial_tol: float = 1e-6) -> dict:
        """Check the full collar hypotheses of the three-set construction.

        Returns the measured maxima together with pass flags; callers that
        construct custom cocycle pairs should require ``ok``.
        """
        rs = np.linspace(COLLAR_R_MIN, 1.0, 16)
        comm = self.max_commutator(n, rs)
        radial = self.max_radial_derivative(n)
        return {"max_commutator": comm, "max_radial_derivative": radial,
                "ok": comm <= comm_tol and radial <= radial_tol}


@dataclass(frozen=True)
class ClutchingFunction:
    """Charts for the two hemispheres of S^3, each given over D3."""

    upper: SU2Map
    lower: SU2Map
    name: str = ""

    def boundary_mismatch(self, n: int = 64) -> float:
        alpha = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)[:, None]
        beta = np.linspace(0.0, math.pi, n)[None, :]
        r = np.ones_like(beta)
        zu, wu = self.upper(alpha, beta, r)
        zl, wl = self.lower(alpha, beta, r)
        return float(np.max(np.sqrt(np.abs(zu - zl) ** 2 + np.abs(wu - wl) ** 2)))

    def check_boundary(self, tol: float = BOUNDARY_TOL) -> None:
        gap = self.boundary_mismatch()
        if gap > tol:
            raise ValueError(f"hemisphere charts disagree at r = 1 (max gap {gap:.3e})")


class ClutchingPair(NamedTuple):
    phi_E: ClutchingFunction
    phi_Einv: ClutchingFunction


def build_clutching_pair(pair: CocyclePair) -> ClutchingPair:
    """The clutching functions of the bundle E and its (-1)-st associated bundle.

    E uses the single product formula rho1 rho2 on both hemispheres (hence
    extends over the disk and is nullhomotopic); the inverse bundle uses
    rho1^-1 rho2^-1 on the upper and rho2^-1 rho1^-1 on the lower chart,
    which agree on the boundary exactly when the cocycles commute there.
    """
    if not pair.verify_boundary():
        raise ValueError("cocycles do not commute on the boundary sphere r = 1")
    product = pair.rho1 * pair.rho2
    phi_e = ClutchingFunction(product, product, name="E")
    inv1, inv2 = pair.rho1.inverse(), pair.rho2.inverse()
    phi_inv = ClutchingFunction(inv1 * inv2, inv2 * inv1, name="E^-1")
    phi_inv.check_boundary()
    return ClutchingPair(phi_e, phi_inv)


# ---------------------------------------------------------------------------
# built-in examples
# ---------------------------------------------------------------------------


def build_example_cocycles() -> CocyclePair:
    """The explicit two-cocycle pair on D3 with the piecewise formulas.

    Both maps are given in closed form with analytic partial derivatives;
    the branch seam sits at beta = pi/2 where the formulas agree.  They
    commute exactly on the boundary sphere r = 1, which is the hypothesis
    the inverse-bundle clutching construction consumes.
    """

    def rho1_value(alpha, beta, r):
        lo = np.asarray(beta) <= math.pi / 2
        phase = np.exp(1j * np.asarray(alpha))
        s = np.where(lo, np.sin(math.pi / 2 * np.asarray(r)), np.sin(np.asarray(r) * np.asarray(beta)))
        c = np.where(lo, np.cos(math.pi / 2 * np.asarray(r)), np.cos(np.asarray(r) * np.asarray(beta)))
        return s * phase, c + 0j * phase

    def rho1_partials(alpha, beta, r):
        alpha, beta, r = np.broadcast_arrays(*np.atleast_1d(alpha, beta, r))
        lo = beta <= math.pi / 2
        phase = np.exp(1j * alpha)
        s = np.where(lo, np.sin(math.pi / 2 * r), np.sin(r * beta))
        c1, c2 = np.cos(math.pi / 2 * r), np.cos(r * beta)
        s2 = np.sin(r * beta)
        dz_da = 1j * s * phase
        dz_db = np.where(lo, 0.0, r * c2) * phase
        dz_dr = np.where(lo, math.pi / 2 * c1, beta * c2) * phase
        zero = np.zeros_like(phase)
        dw_db = np.where(lo, 0.0, -r * s2) + 0j * phase
        dw_dr = np.where(lo, -math.pi / 2 * np.sin(math.pi / 2 * r), -beta * s2) + 0j * phase
        return ((dz_da, dz_db, dz_dr), (zero, dw_db, dw_dr))

    def rho2_value(alpha, beta, r):
        lo = np.asarray(beta) <= math.pi / 2
        cpr, spr = np.cos(math.pi * np.asarray(r)), np.sin(math.pi * np.asarray(r))
        phase = np.exp(2j * np.asarray(beta))
        z = np.where(lo, -cpr * phase, cpr + 0j * phase)
        w = spr + 0j * phase
        return z + 0j * np.asarray(alpha), w + 0j * np.asarray(alpha)

    def rho2_partials(alpha, beta, r):
        alpha, beta, r = np.broadcast_arrays(*np.atleast_1d(alpha, beta, r))
        lo = beta <= math.pi / 2
        cpr, spr = np.cos(math.pi * r), np.sin(math.pi * r)
        phase = np.exp(2j * beta)
        zero = np.zeros(beta.shape, dtype=complex)
        dz_db = np.where(lo, -2j * cpr * phase, zero)
        dz_dr = np.where(lo, math.pi * spr * phase, -math.pi * spr + zero)
        dw_dr = math.pi * cpr + zero
        return ((zero, dz_db, dz_dr), (zero, zero, dw_dr))

    return CocyclePair(SU2Map(rho1_value, rho1_partials),
                       SU2Map(rho2_value, rho2_partials))


def hemisphere_chart(x4_sign: int) -> SU2Map:
    """Identification of a closed hemisphere of S^3 with D3.

    The point with coordinates (alpha, beta, r) is
    (sin(pi r/2) nhat(alpha, beta), x4_sign * cos(pi r/2)) in R^4, read as
    the SU(2) pair z = x1 + i x2, w = x3 + i x4.  The azimuth enters as
    exp(-i alpha) so that the identity clutching map has degree +1 under
    the lower-minus-upper hemisphere convention.
    """
    if x4_sign not in (-1, 1):
        raise ValueError("x4_sign must be +-1")

    def value(alpha, beta, r):
        s, c = np.sin(math.pi / 2 * np.asarray(r)), np.cos(math.pi / 2 * np.asarray(r))
        phase = np.exp(-1j * np.asarray(alpha))
        z = s * np.sin(np.asarray(beta)) * phase
        w = s * np.cos(np.asarray(beta)) + 1j * x4_sign * c + 0j * phase
        return z, w

    def partials(alpha, beta, r):
        alpha, beta, r = np.broadcast_arrays(*np.atleast_1d(alpha, beta, r))
        s, c = np.sin(math.pi / 2 * r), np.cos(math.pi / 2 * r)
        ds = math.pi / 2 * c
        phase = np.exp(-1j * alpha)
        sb, cb = np.sin(beta), np.cos(beta)
        dz_da = -1j * s * sb * phase
        dz_db = s * cb * phase
        dz_dr = ds * sb * phase
        zero = np.zeros(alpha.shape, dtype=complex)
        dw_db = -s * sb + zero
        dw_dr = ds * cb - 1j * x4_sign * math.pi / 2 * s + zero
        return ((dz_da, dz_db, dz_dr), (zero, dw_db, dw_dr))

    return SU2Map(value, partials)


def quaternion_power_clutching(d: int) -> ClutchingFunction:
    """The clutching function q -> q^d on S^3, expressed in hemisphere charts."""
    upper = hemisphere_chart(+1).power(d)
    lower = hemisphere_chart(-1).power(d)
    return ClutchingFunction(upper, lower, name=f"qpow:{d}")


def constant_clutching() -> ClutchingFunction:
    ident = SU2Map.constant(1.0, 0.0)
    return ClutchingFunction(ident, ident, name="constant")


def paper_example_clutching() -> ClutchingFunction:
    return build_clutching_pair(build_example_cocycles()).phi_Einv


#: Registered examples: name -> (builder, reference c2 value or None).
CLUTCHING_EXAMPLES: dict[str, tuple[Callable[[], ClutchingFunction], float | None]] = {
    "paper": (paper_example_clutching, -1.0),
    "constant": (constant_clutching, 0.0),
}


def clutching_example(name: str) -> tuple[ClutchingFunction, float | None]:
    """Look up a registry entry; qpow:d is synthesized on demand."""
    if name in CLUTCHING_EXAMPLES:
        builder, reference = CLUTCHING_EXAMPLES[name]
        return builder(), reference
    if name.startswith("qpow:"):
        try:
            d = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"malformed quaternion power example {name!r}") from None
        return quaternion_power_clutching(d), None
    raise ValueError(f"unknown clutching example {name!r}")


# ---------------------------------------------------------------------------
# quadrature of the Chern form and the degree oracle
# ---------------------------------------------------------------------------


def _re_A(z, w, partials):
    """Real part of the A-form on the coordinate frame: -12 (J1 + J2)."""
    (zda, zdb, zdr), (wda, wdb, wdr) = partials
    x, y, u, v = z.real, z.imag, w.real, w.imag
    xa, ya = zda.real, zda.imag
    xb, yb = zdb.real, zdb.imag
    xr, yr = zdr.real, zdr.imag
    ua, va = wda.real, wda.imag
    ub, vb = wdb.real, wdb.imag
    ur, vr = wdr.real, wdr.imag
    j1 = ((y * xa - x * ya) * (ub * vr - vb * ur)
          - (y * xb - x * yb) * (ua * vr - va * ur)
          + (y * xr - x * yr) * (ua * vb - va * ub))
    j2 = ((v * ua - u * va) * (xb * yr - yb * xr)
          - (v * ub - u * vb) * (xa * yr - ya * xr)
          + (v * ur - u * vr) * (xa * yb - ya * xb))
    return -12.0 * (j1 + j2)


def _volume_pullback(z, w, partials):
    """Pullback of the (unnormalized) volume form of S^3 on the coordinate frame."""
    (zda, zdb, zdr), (wda, wdb, wdr) = partials
    comps = np.broadcast_arrays(
        z.real, z.imag, w.real, w.imag,
        zda.real, zda.imag, wda.real, wda.imag,
        zdb.real, zdb.imag, wdb.real, wdb.imag,
        zdr.real, zdr.imag, wdr.real, wdr.imag)
    rows = [np.stack(comps[4 * i:4 * i + 4], axis=-1) for i in range(4)]
    return np.linalg.det(np.stack(rows, axis=-2))


def integrate_chart(chart: SU2Map, grid: QuadratureGrid, integrand=_re_A) -> float:
    """Integrate a 3-form integrand over D3 for one chart, deterministically.

    The alpha axis is processed in fixed-size chunks (bounded memory); the
    reduction order is a fixed function of the grid alone, so results are
    byte-identical across runs.
    """
    nb, nr = len(grid.beta_nodes), len(grid.r_nodes)
    chunk = max(1, 1_000_000 // max(1, nb * nr))
    beta = grid.beta_nodes[None, :, None]
    r = grid.r_nodes[None, None, :]
    wbr = grid.beta_weights[None, :, None] * grid.r_weights[None, None, :]
    total = 0.0
    for start in range(0, len(grid.alpha_nodes), chunk):
        alpha = grid.alpha_nodes[start:start + chunk][:, None, None]
        walpha = grid.alpha_weights[start:start + chunk][:, None, None]
        z, w = chart(alpha, beta, r)
        vals = integrand(z, w, chart.partials(alpha, beta, r))
        vals, wall = np.broadcast_arrays(vals, walpha * wbr)
        if not np.all(np.isfinite(vals)):
            bad = np.argwhere(~np.isfinite(vals))[0]
            node = (float(grid.alpha_nodes[start + bad[0]]),
                    float(grid.beta_nodes[bad[1]]), float(grid.r_nodes[bad[2]]))
            raise ValueError(f"non-finite integrand sample at (alpha, beta, r) = {node}")
        total += float(np.sum(vals * wall))
    return total


def hemisphere_difference(phi: ClutchingFunction, grid: QuadratureGrid,
                          integrand=_re_A) -> float:
    """Lower-chart integral minus upper-chart integral (the S^3 orientation)."""
    grid.validate()
    return (integrate_chart(phi.lower, grid, integrand)
            - integrate_chart(phi.upper, grid, integrand))


def a_form_integral(phi: ClutchingFunction, grid: QuadratureGrid) -> float:
    """The hemisphere-difference integral of (J1 + J2), i.e. Re(A)/(-12) combined."""
    return hemisphere_difference(phi, grid) / 24.0


def chern2(phi: ClutchingFunction, grid: QuadratureGrid) -> float:
    """Second Chern number of the bundle over S^4 clutched by ``phi``."""
    return hemisphere_difference(phi, grid) / (24.0 * math.pi ** 2)


def mapping_degree(phi: ClutchingFunction, grid: QuadratureGrid) -> float:
    """Degree of the chart pair as a map S^3 -> SU(2) = S^3 (volume-form oracle)."""
    return hemisphere_difference(phi, grid, integrand=_volume_pullback) / (2.0 * math.pi ** 2)


# ---------------------------------------------------------------------------
# curvature local forms for two-set covers
# ---------------------------------------------------------------------------

_CHART_BOUNDS = ((0.0, 2.0 * math.pi), (0.0, math.pi), (0.0, 1.0), (-1.0, 1.0))


def _check_point(point: Sequence[float]) -> tuple[float, float, float, float]:
    point = tuple(float(c) for c in point)
    if len(point) != 4:
        raise ValueError("a chart point has four coordinates (alpha, beta, r, height)")
    for value, (lo, hi) in zip(point, _CHART_BOUNDS):
        if not lo <= value <= hi:
            raise ValueError(f"point {point} lies outside the chart domain")
    return point


def _pair_matrix(z: complex, w: complex) -> np.ndarray:
    return np.array([[z, -np.conj(w)], [w, np.conj(z)]], dtype=complex)


def _scalar(value) -> complex:
    return complex(np.asarray(value).reshape(-1)[0])


def _tau_values(rho_k: SU2Map, point) -> tuple[np.ndarray, list[np.ndarray]]:
    """Value matrix and the three coordinate partial matrices of rho^k."""
    a, b, r, _ = point
    aa, bb, rr = np.float64(a), np.float64(b), np.float64(r)
    z, w = rho_k(aa, bb, rr)
    value = _pair_matrix(_scalar(z), _scalar(w))
    (zd, wd) = rho_k.partials(aa, bb, rr)
    mats = [_pair_matrix(_scalar(zd[i]), _scalar(wd[i])) for i in range(3)]
    return value, mats


def curvature_local_form(rho: SU2Map, k: int, f2: PartitionProfile,
                         point: Sequence[float], X: Sequence[float],
                         Y: Sequence[float]) -> np.ndarray:
    """Local curvature 2-form of the k-th associated bundle, on (X, Y).

    Implements df2 . rho^-k d(rho^k) + (f2^2 - f2) rho^-k d(rho^k) ^ rho^-k d(rho^k)
    at a point of the overlap chart, with X, Y tangent vectors in the
    (alpha, beta, r, height) coordinates.
    """
    point = _check_point(point)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape != (4,) or Y.shape != (4,):
        raise ValueError("tangent vectors have four components")
    rho_k = rho.power(k)
    value, dmats = _tau_values(rho_k, point)
    inv = value.conj().T  # unitary inverse

    def tau(vec: np.ndarray) -> np.ndarray:
        d = sum(vec[i] * dmats[i] for i in range(3))
        return inv @ d

    h = point[3]
    df = float(f2.diff(h))
    fval = float(f2(h))
    tX, tY = tau(X), tau(Y)
    wedge = tX @ tY - tY @ tX
    return (df * X[3]) * tY - (df * Y[3]) * tX + (fval * fval - fval) * wedge


def _form_rows(rho: SU2Map, point) -> dict[str, np.ndarray]:
    """The 1-forms dz, dzb, dw, dwb as coordinate coefficient vectors (length 4)."""
    a, b, r, _ = point
    (zd, wd) = rho.partials(np.float64(a), np.float64(b), np.float64(r))
    dz = np.array([_scalar(zd[0]), _scalar(zd[1]), _scalar(zd[2]), 0.0])
    dw = np.array([_scalar(wd[0]), _scalar(wd[1]), _scalar(wd[2]), 0.0])
    return {"z": dz, "zb": np.conj(dz), "w": dw, "wb": np.conj(dw)}


def det_curvature_su2(rho: SU2Map, f2: PartitionProfile, point: Sequence[float],
                      frame: Sequence[Sequence[float]]) -> complex:
    """Determinant 4-form of the two-set-cover curvature, on a 4-vector frame.

    Evaluates 4 (f2-1)^2 f2^2 dz dzb dw dwb - (f2-1) f2 df2 ^ A; the first
    summand vanishes identically here because z, w depend on only three
    coordinates, exactly as in the sphere geometry.
    """
    point = _check_point(point)
    frame = [np.asarray(v, dtype=float) for v in frame]
    if len(frame) != 4 or any(v.shape != (4,) for v in frame):
        raise ValueError("the frame must consist of four 4-component vectors")
    forms = _form_rows(rho, point)
    a, b, r, h = point
    z, w = rho(np.float64(a), np.float64(b), np.float64(r))
    z, w = complex(z), complex(w)

    def apply(form: np.ndarray, vec: np.ndarray) -> complex:
        return complex(form @ vec)

    def det_on(names: Sequence[str], vecs: Sequence[np.ndarray]) -> complex:
        m = np.array([[apply(forms[f], v) for v in vecs] for f in names])
        return complex(np.linalg.det(m))

    def a_form(vecs: Sequence[np.ndarray]) -> complex:
        return 2.0 * (np.conj(z) * det_on(("z", "w", "wb"), vecs)
                      + np.conj(w) * det_on(("z", "zb", "w"), vecs)
                      - 2.0 * (z * det_on(("zb", "w", "wb"), vecs)
                               + w * det_on(("z", "zb", "wb"), vecs)))

    fval = float(f2(h))
    dfval = float(f2.diff(h))
    quad = det_on(("z", "zb", "w", "wb"), frame)
    wedge = 0.0 + 0.0j
    for i in range(4):
        rest = frame[:i] + frame[i + 1:]
        wedge += ((-1.0) ** i) * (dfval * frame[i][3]) * a_form(rest)
    return 4.0 * (fval - 1.0) ** 2 * fval ** 2 * quad - (fval - 1.0) * fval * wedge
