"""Independent verification machinery.

Everything here is deliberately separate from the subdivision engine: mixed
volumes come from brute-force polynomial expansion (with a permanent as a
second, independent route), univariate resultants from the classical
Sylvester layout, and the quotient identity is tested by randomized
specialization over a prime field rather than symbolic expansion.

The univariate Sylvester layout is pinned to match the greedy matrix of a
univariate system exactly: the shifted rows of the second polynomial come
first, then the shifted rows of the first.  The classical convention with
the blocks swapped differs by (-1)^(d0*d1); field equality in the checks
needs the block order fixed this way.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadShape, NotPrime
from .greedy import greedy_closure
from .matrix import SymbolicMatrix, build_matrix, principal_submatrix
from .multihomo import greedy_closure_multi, lattice_points_multi
from .subdivision import lattice_points
from .systems import CoeffRef, MultiHomoSystem, ZonotopeSystem

DEFAULT_PRIME = 2147483647  # 2^31 - 1

# Witness set making Miller-Rabin deterministic for all 64-bit inputs (and
# well beyond); no probabilistic acceptance is involved.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p == q:
            return True
        if p % q == 0:
            return False
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int) -> None:
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")


def permanent(rows: Sequence[Sequence[int]]) -> int:
    """Permanent of a square integer matrix by direct column expansion."""
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise BadShape("permanent needs a square matrix")

    def expand(r: int, used: int) -> int:
        if r == n:
            return 1
        total = 0
        for c in range(n):
            if not used & (1 << c) and rows[r][c]:
                total += rows[r][c] * expand(r + 1, used | (1 << c))
        return total

    return expand(0, 0)


def mixed_volume(bounds: Sequence[Sequence[int]], excluded_row: int) -> int:
    """Mixed volume of the boxes with one row left out.

    Brute-force route: expand prod_j (sum_i lambda_i a_ij) over the
    non-excluded rows i as an honest polynomial and read off the coefficient
    of the squarefree monomial.  The permanent of the same submatrix is the
    closed form; tests compare the two.
    """
    if not bounds:
        raise BadShape("bounds must be nonempty")
    n = len(bounds) - 1
    for row in bounds:
        if len(row) != n:
            raise BadShape(f"bounds rows must have length {n}")
    if not 0 <= excluded_row <= n:
        raise BadShape(f"excluded row {excluded_row} out of range 0..{n}")
    rows = [bounds[i] for i in range(n + 1) if i != excluded_row]

    poly: dict[tuple[int, ...], int] = {(0,) * n: 1}
    for j in range(n):
        nxt: dict[tuple[int, ...], int] = {}
        for mono, coef in poly.items():
            for k in range(n):
                a = rows[k][j]
                if a == 0:
                    continue
                bumped = list(mono)
                bumped[k] += 1
                key = tuple(bumped)
                nxt[key] = nxt.get(key, 0) + coef * a
        poly = nxt
    return poly.get((1,) * n, 0)


def ff_det(matrix: Sequence[Sequence[int]], p: int) -> int:
    """Determinant in Z/p by pivoted elimination; det of a 0x0 matrix is 1."""
    _require_prime(p)
    n = len(matrix)
    rows = []
    for row in matrix:
        if len(row) != n:
            raise BadShape("determinant needs a square matrix")
        rows.append([x % p for x in row])
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = p - det
        pivot = rows[col][col]
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        for r in range(col + 1, n):
            f = rows[r][col] * inv % p
            if f:
                upper = rows[col]
                lower = rows[r]
                for c in range(col, n):
                    lower[c] = (lower[c] - f * upper[c]) % p
    return det % p


def sylvester_resultant(
    coeffs0: Sequence[int], coeffs1: Sequence[int], p: int
) -> int:
    """Univariate resultant from the (d0+d1)-square Sylvester layout.

    Coefficient lists are ascending in the variable.  Rows are the d0 shifts
    of the second polynomial followed by the d1 shifts of the first, which
    is the same matrix the greedy construction produces for one variable.
    """
    _require_prime(p)
    d0 = len(coeffs0) - 1
    d1 = len(coeffs1) - 1
    if d0 < 1 or d1 < 1:
        raise BadShape("both polynomials need degree at least 1")
    size = d0 + d1
    m = [[0] * size for _ in range(size)]
    for k in range(d0):
        for a, cf in enumerate(coeffs1):
            m[k][k + a] = cf % p
    for k in range(d1):
        for a, cf in enumerate(coeffs0):
            m[d0 + k][k + a] = cf % p
    return ff_det(m, p)


def specialize(
    m: SymbolicMatrix, coeffs: dict[CoeffRef, int], p: int
) -> list[list[int]]:
    """Dense numeric rows of a symbolic matrix under a coefficient draw."""
    size = m.size
    dense = [[0] * size for _ in range(size)]
    for (r, c), ref in m.entries.items():
        dense[r][c] = coeffs[ref] % p
    return dense


def draw_coefficients(
    sys_: ZonotopeSystem | MultiHomoSystem, rng: random.Random, p: int
) -> dict[CoeffRef, int]:
    """One uniform value per coefficient label, in a fixed deterministic order.

    Zero is allowed on purpose; it exercises the sparse structure.
    """
    return {
        CoeffRef(i, a): rng.randrange(p)
        for i in range(sys_.n + 1)
        for a in sys_.support(i)
    }


@dataclass
class QuotientReport:
    """Aggregated outcome of the randomized quotient checks.

    Checks per trial: (a) the greedy principal minor is nonzero, (b) the
    greedy determinant is nonzero, (c) in one variable the quotient equals
    the classical resultant, (d) the full and greedy quotients agree
    (compared cross-multiplied, so a singular full principal minor cannot
    produce a false alarm), (e) the reflected-orientation quotient agrees
    with the canonical one up to one sign fixed per system.

    Singular draws of the greedy principal minor are retried and then
    recorded as incidents, never as check failures.
    """

    kind: str
    n: int
    p: int
    trials: int
    seed: int
    sizes: dict[str, int]
    passes: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    singular: list[dict] = field(default_factory=list)
    skipped: dict[str, str] = field(default_factory=dict)
    e_sign: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def _record(self, check: str, passed: bool, trial: int, message: str) -> None:
        if passed:
            self.passes[check] = self.passes.get(check, 0) + 1
        else:
            self.failures.append(
                {"check": check, "trial": trial, "message": message}
            )

    def completed(self, check: str) -> int:
        done = self.passes.get(check, 0)
        done += sum(1 for f in self.failures if f["check"] == check)
        return done

    def text(self) -> str:
        lines = [
            f"quotient verification: kind={self.kind} n={self.n} "
            f"p={self.p} trials={self.trials} seed={self.seed}",
            "matrix sizes: "
            + " ".join(f"{k}={v}" for k, v in sorted(self.sizes.items())),
        ]
        labels = {
            "a": "det E_G nonzero",
            "b": "det H_G nonzero",
            "c": "univariate classical resultant match",
            "d": "full vs greedy quotient",
            "e": "reflected orientation quotient",
        }
        for check in "abcde":
            if check in self.skipped:
                lines.append(f"check {check} ({labels[check]}): skipped, "
                             f"{self.skipped[check]}")
                continue
            done = self.completed(check)
            note = ""
            if check == "e" and self.e_sign is not None:
                note = f" (sign {self.e_sign:+d})"
            lines.append(
                f"check {check} ({labels[check]}): "
                f"{self.passes.get(check, 0)}/{done}{note}"
            )
        lines.append(f"singular principal-minor incidents: {len(self.singular)}")
        for f in self.failures:
            lines.append(
                f"FAIL check {f['check']} trial {f['trial']}: {f['message']}"
            )
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "sizes": dict(self.sizes),
            "passes": dict(self.passes),
            "failures": list(self.failures),
            "singular": list(self.singular),
            "skipped": dict(self.skipped),
            "e_sign": self.e_sign,
            "ok": self.ok,
        }


def verify_quotient(
    sys_: ZonotopeSystem | MultiHomoSystem,
    p: int = DEFAULT_PRIME,
    trials: int = 50,
    seed: int = 0,
) -> QuotientReport:
    """Randomized identity testing of the determinant-quotient formula.

    Per trial, every coefficient label gets a fresh uniform value mod p and
    the checks listed on QuotientReport run.  Draws are deterministic in
    (seed, trial, attempt), so failures are reproducible from the report.
    """
    _require_prime(p)
    multi = isinstance(sys_, MultiHomoSystem)
    if multi:
        full_points = list(lattice_points_multi(sys_))
        greedy_points = list(greedy_closure_multi(sys_))
    else:
        full_points = list(lattice_points(sys_))
        greedy_points = list(greedy_closure(sys_))

    h_full = build_matrix(full_points, sys_)
    e_full = principal_submatrix(h_full)
    h_greedy = build_matrix(greedy_points, sys_)
    e_greedy = principal_submatrix(h_greedy)
    if multi:
        h_refl = e_refl = None
    else:
        h_refl = build_matrix(full_points, sys_, reflected=True)
        e_refl = principal_submatrix(h_refl)

    report = QuotientReport(
        kind="multihomogeneous" if multi else "zonotope",
        n=sys_.n,
        p=p,
        trials=trials,
        seed=seed,
        sizes={
            "full": h_full.size,
            "full_principal": e_full.size,
            "greedy": h_greedy.size,
            "greedy_principal": e_greedy.size,
        },
    )
    if sys_.n != 1:
        report.skipped["c"] = "only defined for one variable"
    if multi:
        report.skipped["e"] = "reflected orientation applies to box systems only"

    for trial in range(trials):
        coeffs = None
        for attempt in range(3):
            rng = random.Random(f"{seed}:{trial}:{attempt}")
            candidate = draw_coefficients(sys_, rng, p)
            det_eg = ff_det(specialize(e_greedy, candidate, p), p)
            if det_eg != 0:
                coeffs = candidate
                break
            report.singular.append(
                {"trial": trial, "attempt": attempt,
                 "seed": f"{seed}:{trial}:{attempt}"}
            )
        if coeffs is None:
            report._record("a", False, trial,
                           "det E_G stayed zero after 3 attempts")
            continue
        report._record("a", True, trial, "")

        det_hg = ff_det(specialize(h_greedy, coeffs, p), p)
        report._record("b", det_hg != 0, trial, "det H_G = 0")

        det_h = ff_det(specialize(h_full, coeffs, p), p)
        det_e = ff_det(specialize(e_full, coeffs, p), p)

        if sys_.n == 1:
            c0 = [coeffs[CoeffRef(0, a)] for a in sys_.support(0)]
            c1 = [coeffs[CoeffRef(1, a)] for a in sys_.support(1)]
            quotient = det_hg * pow(det_eg, -1, p) % p
            expected = sylvester_resultant(c0, c1, p)
            report._record(
                "c", quotient == expected, trial,
                f"quotient {quotient} != classical resultant {expected}",
            )

        lhs = det_h * det_eg % p
        rhs = det_hg * det_e % p
        report._record(
            "d", lhs == rhs, trial,
            f"det(H)det(E_G) = {lhs} != det(H_G)det(E) = {rhs}",
        )

        if not multi:
            det_hr = ff_det(specialize(h_refl, coeffs, p), p)
            det_er = ff_det(specialize(e_refl, coeffs, p), p)
            lhs = det_hr * det_e % p
            rhs = det_h * det_er % p
            if lhs == rhs and lhs == (p - rhs) % p:
                report._record("e", True, trial, "")
            elif lhs == rhs or lhs == (p - rhs) % p:
                sign = 1 if lhs == rhs else -1
                if report.e_sign is None:
                    report.e_sign = sign
                report._record(
                    "e", sign == report.e_sign, trial,
                    f"orientation sign flipped to {sign:+d} "
                    f"(established {report.e_sign:+d})",
                )
            else:
                report._record(
                    "e", False, trial,
                    f"reflected quotient differs beyond sign: "
                    f"{lhs} vs +/-{rhs}",
                )
    return report
