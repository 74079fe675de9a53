"""The verification battery and its machine-readable report.

``run_verify`` drives every executable statement in the package against one
operator: subspace inclusions and identities, growth inequalities, family
axioms, two-route agreement, splitting invariants, quadratic-form
identities, and the Stieltjes moment bounds.  Each check yields a record
with the mathematical statement it exercises, the measured residual, and
the tolerance in force; the report is deterministic for a fixed
(spec, seed, config) apart from its timestamp field.
"""

import datetime
import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import __version__
from .core import (
    as_hermitian,
    eigen_oracle,
    frobenius,
    hermitize,
    inner,
    norm,
    spectral_scale,
)
from .family import (
    build_general,
    build_positive,
    density_check,
    domain_profile,
    family_defects,
)
from .operators import generate
from .quadrature import (
    bilinear_form,
    integral_form,
    partition_sum,
    per_cell_bounds,
    reconstruct_operator,
    smallest_cap,
)
from .splitting import check_form_identity, check_sign_inequalities, split
from .subspace import (
    check_S_chain,
    check_inclusion_shift,
    check_inverse_inclusion,
    check_sandwich,
    check_square_identity,
    check_strict_lower,
)

__all__ = ["CheckRecord", "Report", "VerifyConfig", "run_verify",
           "family_summary", "split_summary", "quadrature_table"]


@dataclass(frozen=True)
class VerifyConfig:
    """Knobs of the battery: refinement sweep, draw counts, tolerance scale."""

    k_max: int = 64
    trials: int = 6
    tol_scale: float = 1.0
    include_dense: bool = False


@dataclass
class CheckRecord:
    """One verified statement: its residual, tolerance, and verdict."""

    name: str
    statement: str
    passed: bool
    residual: float
    tolerance: float
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "name": self.name,
            "statement": self.statement,
            "passed": bool(self.passed),
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "extra": self.extra,
        }


@dataclass
class Report:
    tool: dict
    input: dict
    config: dict
    checks: list
    family: dict
    split: dict
    quadrature: list
    status: str
    generated_at: str

    def to_dict(self):
        return {
            "tool": self.tool,
            "input": self.input,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "family": self.family,
            "split": self.split,
            "quadrature": self.quadrature,
            "status": self.status,
            "generated_at": self.generated_at,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _bool_record(name, statement, ok, extra=None):
    return CheckRecord(name, statement, bool(ok), 0.0 if ok else 1.0, 0.0, extra or {})


def _resid_record(name, statement, parts, extra=None):
    """Record from (label, residual, tolerance) parts; worst ratio leads."""
    worst = max(parts, key=lambda p: p[1] / p[2] if p[2] > 0 else math.inf)
    passed = all(r <= t for _, r, t in parts)
    info = dict(extra or {})
    info["parts"] = {label: {"residual": float(r), "tolerance": float(t)} for label, r, t in parts}
    return CheckRecord(name, statement, passed, worst[1], worst[2], info)


def _distinct_abs(eigenvalues, min_gap):
    """Distinct eigenvalue magnitudes, then midpoints of gaps wider than min_gap."""
    vals = np.unique(np.abs(eigenvalues))
    mids = [float((a + b) / 2.0) for a, b in zip(vals, vals[1:]) if b - a >= min_gap]
    return vals, mids


def _random_vector(rng, dim, complex_mode):
    x = rng.standard_normal(dim)
    if complex_mode:
        x = x + 1j * rng.standard_normal(dim)
    return x / norm(x)


def _between_cluster_probes(points):
    """Evaluation levels strictly between clusters of jump positions."""
    points = np.asarray(points)
    if points.size == 0:
        return []
    cluster_tol = 1e-9 * max(spectral_scale(points), 1.0)
    keep = [float(points[0])]
    for v in points[1:]:
        if v - keep[-1] > cluster_tol:
            keep.append(float(v))
    return [keep[0] - 1.0] + [
        (x + y) / 2.0 for x, y in zip(keep, keep[1:])
    ] + [keep[-1] + 1.0]


# ---------------------------------------------------------------------------
# check groups


def _subspace_checks(a, eig, rng, tol_scale):
    scale = spectral_scale(eig.eigenvalues)
    vals, mids = _distinct_abs(eig.eigenvalues, 2e-6 * max(scale, 1.0))
    top = float(vals[-1]) if vals.size else 0.0
    tol = 1e-8 * tol_scale
    records = []

    deltas = [0.0, 0.5 * max(scale, 1.0), float(rng.uniform(0, max(scale, 1.0)))]
    epss = [float(rng.uniform(0, max(scale, 1.0))) for _ in deltas]
    ok = all(check_inclusion_shift(a, d, e, tol=tol) for d, e in zip(deltas, epss))
    records.append(_bool_record(
        "shift_inclusion",
        "subspace(A + d, e) is contained in subspace(A, d + e)",
        ok, {"draws": len(deltas)},
    ))

    levels = (mids + [top + 1.0])[:3]
    ok = all(check_square_identity(a, e, tol=tol) for e in levels)
    records.append(_bool_record(
        "square_identity",
        "subspace(A^2, e^2) equals subspace(A, e)",
        ok, {"levels": levels},
    ))

    shifted = hermitize(a + (1.0 - float(eig.eigenvalues[0])) * np.eye(a.shape[0], dtype=a.dtype))
    svals, smids = _distinct_abs(eig.eigenvalues - eig.eigenvalues[0] + 1.0,
                                 2e-6 * max(scale, 1.0))
    inv_levels = (smids + [float(svals[-1]) + 1.0])[:3]
    ok = all(check_inverse_inclusion(shifted, e, tol=tol) for e in inv_levels)
    records.append(_bool_record(
        "inverse_inclusion",
        "complement of subspace(inv(A), 1/e) is contained in subspace(A, e), A >= 1",
        ok, {"levels": inv_levels, "note": "applied to A shifted to be >= 1"},
    ))

    chain_levels = [0.5, float(top * top + 2.0)]
    chain_levels += [m * m - 1.0 for m in mids if m * m - 1.0 > 1e-3][:2]
    ok = all(check_S_chain(a, e, tol=tol) for e in chain_levels)
    records.append(_bool_record(
        "square_chain",
        "subspace(A^2+1, e) within subspace(A^2, e+1) within subspace(A, sqrt(e+1))",
        ok, {"levels": chain_levels},
    ))

    strict_levels = [m for m in mids if top - m >= 1e-6]
    if vals.size and float(vals[0]) >= 2e-6:
        strict_levels.insert(0, 0.0)
    if strict_levels:
        ok = all(check_strict_lower(a, lam, trials=10, rng=rng) for lam in strict_levels[:3])
        extra = {"levels": strict_levels[:3]}
    else:
        ok, extra = True, {"note": "no level with a nonzero complement; trivially true"}
    records.append(_bool_record(
        "strict_growth", "||A x|| > lam ||x|| strictly outside subspace(A, lam)", ok, extra))

    pairs = [(lo, hi) for lo, hi in zip(mids, mids[1:])]
    if mids:
        pairs.append((mids[0], top + 1.0))
    if pairs:
        ok = all(check_sandwich(a, lo, hi, trials=10, rng=rng) for lo, hi in pairs[:3])
        extra = {"pairs": pairs[:3]}
    else:
        ok, extra = True, {"note": "no nonempty shell between resolvable levels; trivially true"}
    records.append(_bool_record(
        "sandwich",
        "lam ||x|| <= ||A x|| <= mu ||x|| on the shell between the two levels",
        ok, extra))
    return records


def _family_checks(a, fams, tol_scale):
    records = []
    scale = max(frobenius(a), 1e-300)
    for route, fam in fams.items():
        defects = family_defects(fam)
        parts = [
            ("orthogonality", defects["orthogonality"], 1e-10 * tol_scale),
            ("completeness", defects["completeness"], 1e-9 * tol_scale),
            ("idempotence", defects["idempotence"], 1e-9 * tol_scale),
            ("monotonicity", defects["monotonicity"], 1e-9 * tol_scale),
        ]
        commute = 0.0
        points = fam.jump_points
        probes = list(points) + [
            (x + y) / 2.0 for x, y in zip(points, points[1:])
        ]
        for t in probes:
            e = fam.evaluate(t)
            commute = max(commute, frobenius(e @ a - a @ e) / scale)
        parts.append(("commutation", commute, 1e-9 * tol_scale))
        records.append(_resid_record(
            f"family_axioms_{route}",
            "increments are orthogonal projectors summing to the identity; "
            "E is monotone, right-continuous, and commutes with A",
            parts, {"route": route, "jumps": len(fam.jumps)},
        ))

    # evaluate between jump clusters: the two routes place matching jumps
    # within rounding of each other, so probing exactly at a jump would
    # compare the families across that sliver
    fam_a, fam_b = fams["shift"], fams["split"]
    probes = _between_cluster_probes(
        np.union1d(fam_a.jump_points, fam_b.jump_points)
    )
    worst = 0.0
    for t in probes:
        worst = max(worst, frobenius(fam_a.evaluate(t) - fam_b.evaluate(t)))
    records.append(_resid_record(
        "route_equality",
        "the shift-route and split-route families agree at every level",
        [("max_projector_distance", worst, 1e-8 * tol_scale)],
        {"evaluation_points": len(probes)},
    ))
    return records


def _split_checks(a, deco, rng, tol_scale, trials):
    records = []
    scale = max(frobenius(a), 1e-300)
    d = a.shape[0]

    nb = float(np.linalg.norm(deco.B, 2))
    records.append(_resid_record(
        "bounded_transform_norm",
        "||A (1 + A^2)^{-1}|| is at most 1/2",
        [("spectral_norm_minus_half", max(0.0, nb - 0.5), 1e-12 * tol_scale)],
    ))

    resolvent = scipy.linalg.solve(
        hermitize(np.eye(d, dtype=a.dtype) + a @ a), np.eye(d, dtype=a.dtype),
        assume_a="pos",
    )
    parts = [
        ("EA_minus_AE", frobenius(deco.E @ a - a @ deco.E) / scale, 1e-9 * tol_scale),
        ("EB_minus_BE", frobenius(deco.E @ deco.B - deco.B @ deco.E), 1e-10 * tol_scale),
        ("E_resolvent_commutator",
         frobenius(deco.E @ resolvent - resolvent @ deco.E), 1e-10 * tol_scale),
    ]
    records.append(_resid_record(
        "split_commutation",
        "the splitting projector commutes with A, B, and (1 + A^2)^{-1}",
        parts,
    ))

    spec_minus = eigen_oracle(deco.A_minus).eigenvalues if deco.rank_minus else np.array([])
    spec_plus = eigen_oracle(deco.A_plus).eigenvalues if deco.rank_plus else np.array([])
    sign_resid = 0.0
    if spec_minus.size:
        sign_resid = max(sign_resid, float(spec_minus[-1]))
    if spec_plus.size:
        sign_resid = max(sign_resid, -float(spec_plus[0]))
    records.append(_resid_record(
        "split_signs",
        "the compressed parts satisfy A_minus <= 0 <= A_plus",
        [("worst_sign_violation", max(0.0, sign_resid), 1e-9 * scale * tol_scale)],
        {"rank_minus": deco.rank_minus, "rank_plus": deco.rank_plus},
    ))

    merged = np.sort(np.concatenate([spec_minus, spec_plus]))
    full = eigen_oracle(a).eigenvalues
    spec_resid = float(np.max(np.abs(merged - full))) if full.size else 0.0
    records.append(_resid_record(
        "split_spectra",
        "the spectra of the two parts reassemble the spectrum of A",
        [("max_eigenvalue_distance", spec_resid, 1e-8 * max(1.0, scale) * tol_scale)],
    ))

    assembled = (
        deco.basis_minus @ deco.A_minus @ deco.basis_minus.conj().T
        + deco.basis_plus @ deco.A_plus @ deco.basis_plus.conj().T
    )
    records.append(_resid_record(
        "split_reconstruction",
        "lifting the two compressed parts reassembles A",
        [("frobenius_distance", frobenius(assembled - a) / scale, 1e-9 * tol_scale)],
    ))

    complex_mode = np.iscomplexobj(a)
    worst = 0.0
    for _ in range(max(trials, 3) * 4):
        x = _random_vector(rng, d, complex_mode)
        worst = max(worst, check_form_identity(a, x))
    records.append(_resid_record(
        "form_identity",
        "<Ax, x> = <Bx, x> + <B Ax, Ax> with B = A (1 + A^2)^{-1}",
        [("residual", worst, 1e-9 * (1.0 + frobenius(a) ** 2) * tol_scale)],
    ))

    records.append(_bool_record(
        "summand_sign_forms",
        "<Bx, x> and <Ax, x> are nonpositive on the minus summand and "
        "nonnegative on the plus summand",
        check_sign_inequalities(deco, trials=max(trials, 3) * 4, rng=rng),
    ))
    return records


def _quadrature_checks(a, eig, rng, config):
    records = []
    scale = spectral_scale(eig.eigenvalues)
    tol_scale = config.tol_scale
    complex_mode = np.iscomplexobj(a)
    d = a.shape[0]

    if float(eig.eigenvalues[0]) >= max(1e-8, 1e-8 * scale):
        a_pos = a
        note = "operator is positive; used directly"
    else:
        c = scale + 1.0
        a_pos = hermitize(a + c * np.eye(d, dtype=a.dtype))
        note = f"operator shifted by {c} to be positive"
    fam = build_positive(a_pos)

    draws = []
    for j in range(max(config.trials, 2)):
        x = _random_vector(rng, d, complex_mode)
        if j % 2 == 1 and len(fam.jumps) > 1:
            mid = fam.jump_points[len(fam.jumps) // 2]
            x = fam.evaluate(mid) @ x
            nx = norm(x)
            if nx < 1e-9:
                continue
            x = x / nx
        draws.append((x, smallest_cap(fam, x)))

    ks = [k for k in range(1, config.k_max + 1)]
    worst1 = 0.0
    worst2 = 0.0
    ok_moments = True
    ok_cells = True
    failures = []
    for x, n in draws:
        for k in ks:
            try:
                ps = partition_sum(a_pos, fam, x, n, k, slack=1e-9 * tol_scale)
            except (ValueError, RuntimeError) as exc:
                ok_moments = False
                failures.append(f"k={k}: {exc}")
                continue
            worst1 = max(worst1, ps.err1 - ps.bound1)
            worst2 = max(worst2, ps.err2 - ps.bound2)
        for k in (1, 2, 4, 8, 16, 32, 64):
            if k > config.k_max:
                break
            if not per_cell_bounds(a_pos, fam, x, n, k, slack=1e-10 * tol_scale):
                ok_cells = False
    records.append(_resid_record(
        "quadrature_moment_bounds",
        "|<Ax,x> - sum lam_i ||x_i||^2| <= ||x||^2 / k and "
        "|<A^2x,x> - sum lam_i^2 ||x_i||^2| <= 2n ||x||^2 / k",
        [("first_moment_excess", max(0.0, worst1), 1e-9 * tol_scale),
         ("second_moment_excess", max(0.0, worst2), 1e-9 * tol_scale)],
        {"note": note, "cases": len(draws) * len(ks), "failures": failures},
    ))
    if not ok_moments:
        records[-1].passed = False
    records.append(_bool_record(
        "quadrature_cell_bounds",
        "each cell obeys lam_{i-1} <= <A x_i, x_i>/||x_i||^2 <= lam_i, its "
        "squared form, and the 1/k and 2n/k cell bounds",
        ok_cells, {"note": note},
    ))

    table = []
    if draws:
        x, n = draws[0]
        for k in ks:
            ps = partition_sum(a_pos, fam, x, n, k, slack=1e-9 * tol_scale)
            table.append({
                "k": k,
                "err1": ps.err1, "bound1": ps.bound1,
                "err2": ps.err2, "bound2": ps.bound2,
            })
    return records, table


def _stieltjes_checks(a, fam, rng, config):
    records = []
    d = a.shape[0]
    complex_mode = np.iscomplexobj(a)
    tol = 1e-9 * config.tol_scale
    na = max(frobenius(a), 1e-300)
    worst1 = 0.0
    worst2 = 0.0
    worst_bi = 0.0
    ok = True
    for _ in range(max(config.trials, 3) * 4):
        x = _random_vector(rng, d, complex_mode)
        y = _random_vector(rng, d, complex_mode)
        try:
            s1, s2 = integral_form(a, fam, x, rel_tol=tol)
            bi = bilinear_form(a, fam, x, y, rel_tol=tol)
        except RuntimeError:
            ok = False
            continue
        ax = a @ x
        worst1 = max(worst1, abs(s1 - inner(ax, x).real) / na)
        worst2 = max(worst2, abs(s2 - norm(ax) ** 2) / max(na * na, 1e-300))
        worst_bi = max(worst_bi, abs(bi - inner(ax, y)) / na)
    rec = _resid_record(
        "stieltjes_moments",
        "<Ax,x> and ||Ax||^2 equal the first and second moments of the jump "
        "measure of x",
        [("first_moment", worst1, tol), ("second_moment", worst2, tol)],
    )
    rec.passed = rec.passed and ok
    records.append(rec)
    rec = _resid_record(
        "stieltjes_bilinear",
        "<Ax,y> equals the polarized first moment of the joint jump measure",
        [("bilinear", worst_bi, tol)],
    )
    rec.passed = rec.passed and ok
    records.append(rec)
    return records


def _reconstruction_checks(a, fams, tol_scale):
    records = []
    scale = max(frobenius(a), 1e-300)
    for route, fam in fams.items():
        resid = frobenius(reconstruct_operator(fam) - a) / scale
        records.append(_resid_record(
            f"reconstruction_{route}",
            "A equals the jump-weighted sum of its increments",
            [("frobenius_distance", resid, 1e-9 * tol_scale)],
            {"route": route},
        ))
    return records


def _profile_checks(a, fam, rng):
    d = a.shape[0]
    points = fam.jump_points
    lo = float(points.min()) - 1.0
    hi = float(points.max()) + 1.0
    cuts = np.linspace(lo, hi, max(8, min(32, d)))
    x = _random_vector(rng, d, np.iscomplexobj(a))
    try:
        prof = domain_profile(a, fam, x, cuts)
        ok = True
        terminal = float(prof.norms[-1])
    except RuntimeError:
        ok, terminal = False, math.nan
    return [_bool_record(
        "truncation_profile",
        "||A E(n) x|| is nondecreasing in the cut and saturates at ||A x||",
        ok, {"terminal": terminal, "cuts": len(cuts)},
    )]


def family_summary(fam, include_dense=False):
    return fam.to_report_dict(include_dense=include_dense)


def split_summary(a):
    a = as_hermitian(a)
    deco = split(a)
    scale = max(frobenius(a), 1e-300)
    spec_minus = eigen_oracle(deco.A_minus).eigenvalues if deco.rank_minus else np.array([])
    spec_plus = eigen_oracle(deco.A_plus).eigenvalues if deco.rank_plus else np.array([])
    return {
        "beta": deco.beta,
        "rank_minus": deco.rank_minus,
        "rank_plus": deco.rank_plus,
        "spectrum_minus": [float(v) for v in spec_minus],
        "spectrum_plus": [float(v) for v in spec_plus],
        "residuals": {
            "commutation": frobenius(deco.E @ a - a @ deco.E) / scale,
            "reconstruction": frobenius(
                deco.basis_minus @ deco.A_minus @ deco.basis_minus.conj().T
                + deco.basis_plus @ deco.A_plus @ deco.basis_plus.conj().T
                - a
            ) / scale,
            "transform_norm_minus_half": max(
                0.0, float(np.linalg.norm(deco.B, 2)) - 0.5
            ),
        },
    }


def quadrature_table(a, k_max=64, seed=0):
    a = as_hermitian(a)
    eig = eigen_oracle(a)
    rng = np.random.default_rng([seed, 314159])
    config = VerifyConfig(k_max=k_max, trials=2)
    _, table = _quadrature_checks(a, eig, rng, config)
    return table


def run_verify(spec, config=None):
    """Run the whole battery against the operator described by ``spec``."""
    config = config or VerifyConfig()
    a = as_hermitian(generate(spec))
    rng = np.random.default_rng([spec.seed, 271828182845])
    eig = eigen_oracle(a)

    checks = []
    checks.extend(_subspace_checks(a, eig, rng, config.tol_scale))

    fams = {"shift": build_general(a, "shift"), "split": build_general(a, "split")}
    checks.extend(_family_checks(a, fams, config.tol_scale))

    deco = split(a)
    checks.extend(_split_checks(a, deco, rng, config.tol_scale, config.trials))

    quad_records, table = _quadrature_checks(a, eig, rng, config)
    checks.extend(quad_records)

    checks.extend(_stieltjes_checks(a, fams["shift"], rng, config))
    checks.extend(_reconstruction_checks(a, fams, config.tol_scale))
    checks.extend(_profile_checks(a, fams["shift"], rng))

    checks.append(_bool_record(
        "density",
        "every vector lies in a growth subspace of finite level",
        density_check(a),
    ))

    ok = all(c.passed for c in checks)
    return Report(
        tool={"name": "specfam", "version": __version__},
        input=spec.to_dict(),
        config={
            "k_max": config.k_max,
            "trials": config.trials,
            "tol_scale": config.tol_scale,
            "include_dense": config.include_dense,
        },
        checks=checks,
        family=family_summary(fams["shift"], include_dense=config.include_dense),
        split=split_summary(a),
        quadrature=table,
        status="pass" if ok else "fail",
        generated_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
    )
