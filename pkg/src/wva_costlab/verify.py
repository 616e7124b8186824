"""Batch verification suites for the toolkit's executable invariants.

Each suite replays one family of model-level identities over a deterministic
sweep and reports the worst observed slack together with a pass/fail verdict:

* ``overlap-identity``: squared ket overlaps equal the Bloch half-angle form.
* ``tradeoff-bound``: the coherence bound holds on the full postselection
  sweep and is saturated on the coplanar branch.
* ``incoherent-ceiling``: postselected meter information from incoherent
  inputs never exceeds the conventional value 4 * Omega.
* ``oracle-agreement``: the spectral unitary-family QFI formula agrees with
  the symmetric-logarithmic-derivative computation on random mixtures.

The tradeoff suite accepts ``printed_form=True`` to evaluate the published
variant of the bound's right-hand side; the saturation check then fails,
which is the documented counterexample to that variant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .costs import CostPoint, l1_coherence, tradeoff_slack
from .fisher import qfi_mixed, qfi_spectral_unitary
from .postselect import WvaSetup, postselected_meter_family
from .states import (
    DensityMatrix,
    HermitianOperator,
    Ket,
    ReferenceBasis,
    UnitaryOperator,
    bloch_angle,
    bloch_of,
    hermitian_eigs,
    overlap_sq,
)

DEFAULT_THETAS = (
    np.pi / 16,
    np.pi / 12,
    np.pi / 8,
    np.pi / 6,
    np.pi / 5,
    np.pi / 4.5,
    np.pi / 4,
)
SUITE_NAMES = (
    "overlap-identity",
    "tradeoff-bound",
    "incoherent-ceiling",
    "oracle-agreement",
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    worst_slack: float
    detail: dict = field(default_factory=dict)


def theta_grid(count: int) -> np.ndarray:
    """Evenly spaced preparation angles spanning [pi/16, pi/4]."""
    if count < 1:
        raise ValueError("theta_grid: count must be >= 1")
    if count == 1:
        return np.array([np.pi / 4.0])
    return np.linspace(np.pi / 16.0, np.pi / 4.0, count)


def random_ket(rng: np.random.Generator, dim: int = 2) -> Ket:
    return Ket(rng.normal(size=dim) + 1j * rng.normal(size=dim))


def suite_overlap_identity(n_pairs: int = 1000, seed: int = 20240) -> SuiteResult:
    """Squared overlap vs cos^2 of half the Bloch angle on random ket pairs."""
    rng = np.random.default_rng(seed)
    basis = ReferenceBasis.standard()
    worst = 0.0
    for _ in range(n_pairs):
        a = random_ket(rng)
        b = random_ket(rng)
        direct = overlap_sq(a, b)
        angle = bloch_angle(bloch_of(a, basis), bloch_of(b, basis))
        worst = max(worst, abs(direct - np.cos(angle / 2.0) ** 2))
    tol = 1e-10
    return SuiteResult(
        name="overlap-identity",
        passed=worst <= tol,
        worst_slack=tol - worst,
        detail={"worst_abs_error": worst, "tolerance": tol, "pairs": n_pairs},
    )


def suite_tradeoff_bound(
    thetas=DEFAULT_THETAS,
    n_alpha: int = 721,
    printed_form: bool = False,
) -> SuiteResult:
    """Soundness and saturation of the coherence bound over the full sweep."""
    basis = ReferenceBasis.standard()
    alphas = np.linspace(-np.pi / 2.0, np.pi / 2.0, n_alpha)
    min_slack = np.inf
    max_sat_gap = 0.0
    checked = 0
    for theta in thetas:
        coherence = l1_coherence(basis.superposition(theta), basis)
        for alpha in alphas:
            c_plus = np.cos(alpha + theta)
            if abs(c_plus) < 1e-3:
                continue
            cp = 1.0 / c_plus**2
            cm = np.cos(alpha - theta) ** 2 * cp
            point = CostPoint(cp_norm=cp, cm_norm=cm, cp_raw=cp, cm_raw=cm, n_wva=cp)
            slack = tradeoff_slack(point, coherence, printed_form=printed_form)
            min_slack = min(min_slack, slack)
            checked += 1
            if theta - np.pi / 2.0 <= alpha <= -theta:
                max_sat_gap = max(max_sat_gap, abs(slack))
    sound = min_slack >= -1e-9
    saturated = max_sat_gap <= 1e-6
    return SuiteResult(
        name="tradeoff-bound",
        passed=bool(sound and saturated),
        worst_slack=float(min_slack),
        detail={
            "saturation_gap": float(max_sat_gap),
            "points": checked,
            "printed_form": printed_form,
            "sound": bool(sound),
            "saturated": bool(saturated),
        },
    )


def suite_incoherent_ceiling(
    mus=tuple(np.round(np.arange(0.1, 0.95, 0.1), 2)),
    n_alpha: int = 13,
    gs=(1e-3, 0.0349, 0.1),
) -> SuiteResult:
    """Postselected meter QFI from incoherent inputs stays at or below 4 Omega."""
    basis = ReferenceBasis.standard()
    alphas = np.linspace(-np.pi / 2.0 + 0.05, np.pi / 2.0 - 0.05, n_alpha)
    worst_excess = -np.inf
    phi_mi = basis.superposition(np.pi / 4.0)
    for mu in mus:
        rho = DensityMatrix.mixture([mu, 1.0 - mu], [basis.ket0, basis.ket1])
        for alpha in alphas:
            for g in gs:
                setup = WvaSetup(
                    psi_si=rho,
                    psi_sf=basis.superposition(alpha),
                    phi_mi=phi_mi,
                    A=basis.sigma(),
                    M=basis.sigma(),
                    g=g,
                )
                ceiling = 4.0 * setup.omega
                value = qfi_mixed(postselected_meter_family(setup), g)
                worst_excess = max(worst_excess, value - ceiling)
    tol = 1e-4
    return SuiteResult(
        name="incoherent-ceiling",
        passed=worst_excess <= tol,
        worst_slack=float(tol - worst_excess),
        detail={"worst_excess": float(worst_excess), "tolerance": tol},
    )


def _unitary_family(H: HermitianOperator):
    vals, vecs = hermitian_eigs(H)
    projectors = [v.projector() for v in vecs]

    def family(g: float) -> UnitaryOperator:
        mat = np.zeros_like(projectors[0])
        for lam, proj in zip(vals, projectors):
            mat = mat + np.exp(-1j * g * lam) * proj
        return UnitaryOperator(mat)

    return family


def _random_orthonormal(rng: np.random.Generator, dim: int, count: int) -> list[Ket]:
    mat = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, _ = np.linalg.qr(mat)
    return [Ket(q[:, k]) for k in range(count)]


def suite_oracle_agreement(n_instances: int = 100, seed: int = 777) -> SuiteResult:
    """Spectral unitary-family QFI vs the SLD computation on random mixtures."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        dim = int(rng.choice([2, 4]))
        raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        H = HermitianOperator((raw + raw.conj().T) / 2.0)
        family_u = _unitary_family(H)
        count = int(rng.integers(1, dim + 1))
        vectors = _random_orthonormal(rng, dim, count)
        weights = rng.random(count) + 0.1
        weights = weights / weights.sum()
        g = float(rng.uniform(-1.0, 1.0))

        rho0 = sum(w * v.projector() for w, v in zip(weights, vectors))

        def rho_family(gp: float, rho0=rho0, family_u=family_u) -> DensityMatrix:
            u = family_u(gp).entries
            return DensityMatrix(u @ rho0 @ u.conj().T)

        spectral = qfi_spectral_unitary(weights, vectors, family_u, g)
        sld = qfi_mixed(rho_family, g)
        worst = max(worst, abs(spectral - sld))
    tol = 1e-6
    return SuiteResult(
        name="oracle-agreement",
        passed=worst <= tol,
        worst_slack=tol - worst,
        detail={"worst_abs_difference": worst, "tolerance": tol, "instances": n_instances},
    )


def run_suites(
    names=None,
    theta_count: int | None = None,
    printed_form: bool = False,
    seed: int = 20240,
) -> list[SuiteResult]:
    """Run the selected suites (all of them by default) and return their results."""
    selected = tuple(names) if names else SUITE_NAMES
    for name in selected:
        if name not in SUITE_NAMES:
            raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    thetas = DEFAULT_THETAS if theta_count is None else theta_grid(theta_count)
    results = []
    for name in selected:
        if name == "overlap-identity":
            results.append(suite_overlap_identity(seed=seed))
        elif name == "tradeoff-bound":
            results.append(suite_tradeoff_bound(thetas=thetas, printed_form=printed_form))
        elif name == "incoherent-ceiling":
            results.append(suite_incoherent_ceiling())
        elif name == "oracle-agreement":
            results.append(suite_oracle_agreement(seed=seed))
    return results
