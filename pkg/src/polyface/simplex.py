"""Exact rational linear programming with self-verifying certificates.

Two-phase simplex on a slack-form tableau.  All arithmetic is exact:
tableau rows are integer vectors with a per-row positive denominator,
gcd-normalized after every pivot, so no entry is ever rounded.  The
public API speaks `fractions.Fraction`.

Every result carries a certificate checkable by plain substitution,
independent of the pivoting code:

* ``optimal`` -- primal solution plus dual multipliers satisfying the
  complementary-slackness conditions;
* ``infeasible`` -- multipliers for constraints and variable bounds
  that combine to the contradiction 0 < 0;
* ``unbounded`` -- a feasible point and an improving recession ray.

Pivoting uses the largest-reduced-cost rule and switches permanently to
least-index (Bland) selection after a long degenerate streak, which
keeps the finite-termination guarantee; ``pivot_rule="bland"`` forces
least-index selection throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Q = Fraction

LE, EQ, GE = "<=", "=", ">="
_RELS = (LE, EQ, GE)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in _RELS:
            raise ValueError(f"bad relation {self.rel!r}")


@dataclass(frozen=True)
class LinearProgram:
    """Maximize objective . x subject to constraints and variable bounds.

    Bounds are per-variable (lower, upper); None means unbounded on that
    side.  Variables are free by default.
    """

    num_vars: int
    objective: tuple
    constraints: tuple[Constraint, ...]
    lower: tuple = None  # type: ignore[assignment]
    upper: tuple = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.num_vars <= 0:
            raise ValueError("need at least one variable")
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length != num_vars")
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint coefficient length != num_vars")
        if self.lower is None:
            object.__setattr__(self, "lower", (None,) * self.num_vars)
        if self.upper is None:
            object.__setattr__(self, "upper", (None,) * self.num_vars)
        if len(self.lower) != self.num_vars or len(self.upper) != self.num_vars:
            raise ValueError("bounds length != num_vars")
        for lo, hi in zip(self.lower, self.upper):
            if lo is not None and hi is not None and Q(lo) > Q(hi):
                raise ValueError(f"empty bound interval [{lo}, {hi}]")


def make_lp(objective, constraints, lower=None, upper=None) -> LinearProgram:
    """Convenience builder: constraints as (coeffs, rel, rhs) triples."""
    cons = tuple(Constraint(tuple(Q(x) for x in co), rel, Q(rhs)) for co, rel, rhs in constraints)
    n = len(objective)
    low = tuple(None if lo is None else Q(lo) for lo in (lower or (None,) * n))
    up = tuple(None if hi is None else Q(hi) for hi in (upper or (None,) * n))
    return LinearProgram(n, tuple(Q(x) for x in objective), cons, low, up)


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Multipliers combining the system into the contradiction 0 < 0.

    constraint multipliers apply to rows oriented as <= (a >= row is
    negated first); they must be nonnegative except on equality rows.
    The bound multipliers are nonnegative and only touch finite bounds.
    """

    constraints: tuple
    lower: tuple
    upper: tuple


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    primal: tuple | None = None
    objective_value: Fraction | None = None
    dual: tuple | None = None
    infeasibility: InfeasibilityCertificate | None = None
    ray_point: tuple | None = None
    ray_direction: tuple | None = None


def _oriented(con: Constraint):
    """Constraint as (coeffs, rhs) of an <=-or-= row."""
    if con.rel == GE:
        return tuple(-Q(x) for x in con.coeffs), -Q(con.rhs)
    return tuple(Q(x) for x in con.coeffs), Q(con.rhs)


class _Tableau:
    """Integer-scaled simplex tableau: rows[i] / dens[i] are the true values."""

    def __init__(self, nrows, ncols):
        self.rows = [[0] * ncols for _ in range(nrows)]
        self.dens = [1] * nrows
        self.ncols = ncols

    def reduce_row(self, i):
        row = self.rows[i]
        g = self.dens[i]
        for x in row:
            if x:
                g = math.gcd(g, x)
                if g == 1:
                    return
        if g > 1:
            self.rows[i] = [x // g for x in row]
            self.dens[i] //= g

    def combine(self, i, p, pv, f):
        """rows[i] := rows[i]*pv - f*rows[p]; dens[i] *= pv (then normalized)."""
        ri, rp = self.rows[i], self.rows[p]
        self.rows[i] = [x * pv - f * y for x, y in zip(ri, rp)]
        self.dens[i] *= pv
        if self.dens[i] < 0:
            self.dens[i] = -self.dens[i]
            self.rows[i] = [-x for x in self.rows[i]]
        self.reduce_row(i)

    def value(self, i, j) -> Fraction:
        return Q(self.rows[i][j], self.dens[i])


class _Solver:
    def __init__(self, lp: LinearProgram, pivot_rule: str):
        self.lp = lp
        self.pivot_rule = pivot_rule
        self._build()

    # --- standard form construction -------------------------------------

    def _build(self):
        lp = self.lp
        n = lp.num_vars
        # Column plan: each original variable becomes one or two nonnegative
        # columns; cols[k] = (var, sign); shifts[i] is the affine offset so
        # that x_i = shifts[i] + sum(sign * column value).
        self.cols: list[tuple[int, int]] = []
        self.shifts = [Q(0)] * n
        bound_rows = []  # (column, ub_value, var)
        for i in range(n):
            lo, hi = lp.lower[i], lp.upper[i]
            if lo is not None:
                self.shifts[i] = Q(lo)
                self.cols.append((i, 1))
                if hi is not None:
                    bound_rows.append((len(self.cols) - 1, Q(hi) - Q(lo), i))
            elif hi is not None:
                self.shifts[i] = Q(hi)
                self.cols.append((i, -1))
            else:
                self.cols.append((i, 1))
                self.cols.append((i, -1))
        nstruct = len(self.cols)

        # Rows: oriented constraints first, then upper-bound rows.
        self.row_src: list[tuple[str, int]] = []  # ("con", idx) | ("ub", var)
        self.row_rel: list[str] = []
        raw_rows = []
        for idx, con in enumerate(lp.constraints):
            a, b = _oriented(con)
            coeffs = [a[v] * s for v, s in self.cols]
            rhs = b - sum(a[i] * self.shifts[i] for i in range(n) if a[i] != 0)
            raw_rows.append((coeffs, rhs))
            self.row_src.append(("con", idx))
            self.row_rel.append(EQ if con.rel == EQ else LE)
        for col, ub, var in bound_rows:
            coeffs = [Q(0)] * nstruct
            coeffs[col] = Q(1)
            raw_rows.append((coeffs, ub))
            self.row_src.append(("ub", var))
            self.row_rel.append(LE)

        m = len(raw_rows)
        nslack = sum(1 for rel in self.row_rel if rel == LE)
        # Flip rows to nonnegative rhs, then artificials where the slack
        # cannot serve as the initial basic column.
        self.flip = [False] * m
        slack_of = [-1] * m
        art_of = [-1] * m
        col_cursor = nstruct
        for r, rel in enumerate(self.row_rel):
            if rel == LE:
                slack_of[r] = col_cursor
                col_cursor += 1
        self.art_start = col_cursor
        arts = []
        for r in range(m):
            coeffs, rhs = raw_rows[r]
            if rhs < 0:
                self.flip[r] = True
            if self.flip[r] or self.row_rel[r] == EQ:
                art_of[r] = col_cursor
                arts.append(r)
                col_cursor += 1
        self.ncols = col_cursor + 1  # + rhs column
        self.rhs_col = col_cursor
        self.slack_of, self.art_of = slack_of, art_of

        t = _Tableau(m, self.ncols)
        for r in range(m):
            coeffs, rhs = raw_rows[r]
            sign = -1 if self.flip[r] else 1
            den = 1
            for x in list(coeffs) + [rhs]:
                den = den * x.denominator // math.gcd(den, x.denominator)
            row = t.rows[r]
            for j, x in enumerate(coeffs):
                row[j] = sign * int(x * den)
            if slack_of[r] >= 0:
                row[slack_of[r]] = sign * den
            if art_of[r] >= 0:
                row[art_of[r]] = den
            row[self.rhs_col] = sign * int(rhs * den)
            t.dens[r] = den
            t.reduce_row(r)
        self.t = t
        self.m = m
        self.nstruct = nstruct
        self.basis = [art_of[r] if art_of[r] >= 0 else slack_of[r] for r in range(m)]
        self.need_phase1 = bool(arts)

        # Objective rows (reduced costs + negated value in the rhs cell).
        self.obj1 = [0] * self.ncols
        self.obj1den = 1
        for r in arts:
            self.obj1[art_of[r]] = -1
        self.obj2 = [0] * self.ncols
        self.obj2den = 1
        den = 1
        for x in lp.objective:
            den = den * Q(x).denominator // math.gcd(den, Q(x).denominator)
        for k, (v, s) in enumerate(self.cols):
            self.obj2[k] = s * int(Q(lp.objective[v]) * den)
        self.obj2den = den

    # --- pivoting --------------------------------------------------------

    def _eliminate_basics_from(self, obj, objden_attr):
        """Clear basic columns out of an objective row (initialization)."""
        for r in range(self.m):
            j = self.basis[r]
            if obj[j] == 0:
                continue
            pv = self.t.rows[r][j]
            f = obj[j]
            new = [x * pv - f * y for x, y in zip(obj, self.t.rows[r])]
            den = getattr(self, objden_attr) * pv
            if den < 0:
                den = -den
                new = [-x for x in new]
            g = den
            for x in new:
                if x:
                    g = math.gcd(g, x)
                    if g == 1:
                        break
            if g > 1:
                new = [x // g for x in new]
                den //= g
            obj[:] = new
            setattr(self, objden_attr, den)

    def _pivot(self, p, c):
        t = self.t
        # Keep the pivot entry positive so row rhs values stay nonnegative
        # and the min-ratio test remains valid on raw numerators.
        if t.rows[p][c] < 0:
            t.rows[p] = [-x for x in t.rows[p]]
        pv = t.rows[p][c]
        for i in range(self.m):
            if i != p and t.rows[i][c] != 0:
                t.combine(i, p, pv, t.rows[i][c])
        for name in ("obj1", "obj2"):
            obj = getattr(self, name)
            if obj[c] != 0:
                den_attr = name + "den"
                f = obj[c]
                new = [x * pv - f * y for x, y in zip(obj, t.rows[p])]
                den = getattr(self, den_attr) * pv
                if den < 0:
                    den = -den
                    new = [-x for x in new]
                g = den
                for x in new:
                    if x:
                        g = math.gcd(g, x)
                        if g == 1:
                            break
                if g > 1:
                    new = [x // g for x in new]
                    den //= g
                setattr(self, name, new)
                setattr(self, den_attr, den)
        self.basis[p] = c

    def _entering(self, obj, enterable, bland):
        if bland:
            for j in range(self.ncols - 1):
                if obj[j] > 0 and enterable[j]:
                    return j
            return -1
        best, best_val = -1, 0
        for j in range(self.ncols - 1):
            v = obj[j]
            if v > best_val and enterable[j]:
                best, best_val = j, v
        return best

    def _leaving(self, c):
        """Min-ratio row for entering column c; ties by least basic index."""
        t = self.t
        best = -1
        bn = bd = None  # best ratio as bn/bd
        for r in range(self.m):
            trc = t.rows[r][c]
            if trc <= 0:
                continue
            rn, rd = t.rows[r][self.rhs_col], trc
            if best < 0 or rn * bd < bn * rd or (rn * bd == bn * rd and self.basis[r] < self.basis[best]):
                best, bn, bd = r, rn, rd
        return best

    def _run(self, obj_name, enterable):
        """Pivot until the chosen objective row is optimal or unbounded."""
        threshold = 2 * (self.m + self.ncols)
        bland = self.pivot_rule == "bland"
        streak = 0
        while True:
            obj = getattr(self, obj_name)
            c = self._entering(obj, enterable, bland)
            if c < 0:
                return "optimal"
            p = self._leaving(c)
            if p < 0:
                return c  # unbounded along column c
            degenerate = self.t.rows[p][self.rhs_col] == 0
            self._pivot(p, c)
            if self.pivot_rule == "hybrid":
                if degenerate:
                    streak += 1
                    if streak > threshold:
                        bland = True
                else:
                    streak = 0
                    bland = False

    # --- solution read-out ------------------------------------------------

    def _standard_solution(self):
        vals = [Q(0)] * (self.ncols - 1)
        for r in range(self.m):
            vals[self.basis[r]] = self.t.value(r, self.rhs_col) / self.t.value(r, self.basis[r])
        return vals

    def _primal(self):
        vals = self._standard_solution()
        x = list(self.shifts)
        for k, (v, s) in enumerate(self.cols):
            if vals[k] != 0:
                x[v] += s * vals[k]
        return tuple(x)

    def _duals(self, obj, objden, phase1):
        """Row multipliers of the unflipped standard rows, from identity columns.

        Every row keeps a column that started as +e_r in the tableau (its
        artificial, or its slack when no artificial was added), so the
        multiplier is cost - reduced cost there; a row that was negated to
        make its rhs nonnegative carries the opposite multiplier.
        """
        y = []
        for r in range(self.m):
            if self.art_of[r] >= 0:
                col = self.art_of[r]
                cinit = Q(-1) if phase1 else Q(0)
            else:
                col = self.slack_of[r]
                cinit = Q(0)
            yhat = cinit - Q(obj[col], objden)
            y.append(-yhat if self.flip[r] else yhat)
        return y

    def solve(self) -> LPResult:
        lp = self.lp
        enterable_p1 = [j < self.art_start for j in range(self.ncols - 1)]
        if self.need_phase1:
            self._eliminate_basics_from(self.obj1, "obj1den")
            self._run("obj1", enterable_p1)
            # objective rows carry the negated value in the rhs cell
            phase1_value = -Q(self.obj1[self.rhs_col], self.obj1den)
            if phase1_value < 0:
                return self._infeasible_result()
            # Drive basic artificials (all at value 0 now) out of the basis.
            for r in range(self.m):
                if self.basis[r] >= self.art_start:
                    for j in range(self.art_start):
                        if self.t.rows[r][j] != 0:
                            self._pivot(r, j)
                            break
                    # else: redundant row; it is inert from here on.
        self._eliminate_basics_from(self.obj2, "obj2den")
        status = self._run("obj2", enterable_p1)
        if status != "optimal":
            return self._unbounded_result(status)
        primal = self._primal()
        value = sum(Q(c) * v for c, v in zip(lp.objective, primal))
        dual = self._duals(self.obj2, self.obj2den, phase1=False)
        lam = tuple(dual[r] for r in range(len(lp.constraints)))
        return LPResult(status="optimal", primal=primal, objective_value=value, dual=lam)

    def _infeasible_result(self) -> LPResult:
        lp = self.lp
        y = self._duals(self.obj1, self.obj1den, phase1=True)
        lam = [y[r] for r in range(len(lp.constraints))]
        ub_mult = {}
        for r in range(len(lp.constraints), self.m):
            kind, var = self.row_src[r]
            ub_mult[var] = ub_mult.get(var, Q(0)) + y[r]
        # Residuals of the combined functional become bound multipliers.
        d = [Q(0)] * lp.num_vars
        for idx, con in enumerate(lp.constraints):
            if lam[idx] == 0:
                continue
            a, _ = _oriented(con)
            for i in range(lp.num_vars):
                if a[i] != 0:
                    d[i] += lam[idx] * a[i]
        mu_lo = [Q(0)] * lp.num_vars
        mu_hi = [Q(0)] * lp.num_vars
        for i in range(lp.num_vars):
            lo, hi = lp.lower[i], lp.upper[i]
            ub = ub_mult.get(i, Q(0))
            if lo is not None and hi is not None:
                mu_hi[i] = ub
                mu_lo[i] = d[i] + ub
            elif lo is not None:
                mu_lo[i] = d[i]
            elif hi is not None:
                mu_hi[i] = -d[i]
        return LPResult(
            status="infeasible",
            infeasibility=InfeasibilityCertificate(
                constraints=tuple(lam), lower=tuple(mu_lo), upper=tuple(mu_hi)
            ),
        )

    def _unbounded_result(self, c) -> LPResult:
        point = self._primal()
        vals = [Q(0)] * (self.ncols - 1)
        vals[c] = Q(1)
        for r in range(self.m):
            trc = self.t.value(r, c)
            if trc != 0:
                vals[self.basis[r]] = -trc / self.t.value(r, self.basis[r])
        direction = [Q(0)] * self.lp.num_vars
        for k, (v, s) in enumerate(self.cols):
            if vals[k] != 0:
                direction[v] += s * vals[k]
        return LPResult(status="unbounded", ray_point=point, ray_direction=tuple(direction))


def lp_solve(lp: LinearProgram, pivot_rule: str = "hybrid") -> LPResult:
    """Solve exactly; the result always passes verify_lp_certificate.

    Both rules terminate on every input: "bland" is least-index
    selection throughout, "hybrid" (default) uses largest reduced cost
    but falls back to least-index after a degenerate streak.
    """
    if pivot_rule not in ("hybrid", "bland"):
        raise ValueError(f"unknown pivot rule {pivot_rule!r}")
    return _Solver(lp, pivot_rule).solve()


# --- certificate verification (substitution only, no solver state) --------


def _check_primal_feasible(lp: LinearProgram, x) -> bool:
    if len(x) != lp.num_vars:
        return False
    for lo, hi, xi in zip(lp.lower, lp.upper, x):
        if lo is not None and xi < lo:
            return False
        if hi is not None and xi > hi:
            return False
    for con in lp.constraints:
        lhs = sum(a * xi for a, xi in zip(con.coeffs, x) if a != 0)
        if con.rel == LE and not lhs <= con.rhs:
            return False
        if con.rel == GE and not lhs >= con.rhs:
            return False
        if con.rel == EQ and lhs != con.rhs:
            return False
    return True


def verify_lp_certificate(lp: LinearProgram, result: LPResult) -> bool:
    """Check a result by direct substitution into the LP data."""
    try:
        if result.status == "optimal":
            return _verify_optimal(lp, result)
        if result.status == "infeasible":
            return _verify_infeasible(lp, result)
        if result.status == "unbounded":
            return _verify_unbounded(lp, result)
    except (TypeError, ValueError, IndexError):
        return False
    return False


def _verify_optimal(lp, result) -> bool:
    x, y = result.primal, result.dual
    if x is None or y is None or len(y) != len(lp.constraints):
        return False
    if not _check_primal_feasible(lp, x):
        return False
    if result.objective_value != sum(c * xi for c, xi in zip(lp.objective, x)):
        return False
    # Dual sign and complementary slackness on oriented rows.
    for con, yr in zip(lp.constraints, y):
        a, b = _oriented(con)
        if con.rel != EQ and yr < 0:
            return False
        slack = b - sum(ai * xi for ai, xi in zip(a, x) if ai != 0)
        if yr != 0 and slack != 0:
            return False
    # Reduced costs: improvement is blocked by a bound wherever nonzero.
    for i in range(lp.num_vars):
        r = Q(lp.objective[i])
        for con, yr in zip(lp.constraints, y):
            if yr != 0:
                a, _ = _oriented(con)
                r -= yr * a[i]
        if r > 0 and (lp.upper[i] is None or x[i] != lp.upper[i]):
            return False
        if r < 0 and (lp.lower[i] is None or x[i] != lp.lower[i]):
            return False
    return True


def _verify_infeasible(lp, result) -> bool:
    cert = result.infeasibility
    if cert is None or len(cert.constraints) != len(lp.constraints):
        return False
    if len(cert.lower) != lp.num_vars or len(cert.upper) != lp.num_vars:
        return False
    d = [Q(0)] * lp.num_vars
    total = Q(0)
    for con, lam in zip(lp.constraints, cert.constraints):
        if con.rel != EQ and lam < 0:
            return False
        if lam == 0:
            continue
        a, b = _oriented(con)
        for i, ai in enumerate(a):
            if ai != 0:
                d[i] += lam * ai
        total += lam * b
    for i in range(lp.num_vars):
        ml, mh = cert.lower[i], cert.upper[i]
        if ml < 0 or mh < 0:
            return False
        if ml > 0 and lp.lower[i] is None:
            return False
        if mh > 0 and lp.upper[i] is None:
            return False
        if d[i] - ml + mh != 0:
            return False
        if ml > 0:
            total -= ml * lp.lower[i]
        if mh > 0:
            total += mh * lp.upper[i]
    return total < 0


def _verify_unbounded(lp, result) -> bool:
    x, d = result.ray_point, result.ray_direction
    if x is None or d is None:
        return False
    if not _check_primal_feasible(lp, x):
        return False
    if sum(c * di for c, di in zip(lp.objective, d)) <= 0:
        return False
    for i, di in enumerate(d):
        if di > 0 and lp.upper[i] is not None:
            return False
        if di < 0 and lp.lower[i] is not None:
            return False
    for con in lp.constraints:
        lhs = sum(a * di for a, di in zip(con.coeffs, d) if a != 0)
        if con.rel == LE and lhs > 0:
            return False
        if con.rel == GE and lhs < 0:
            return False
        if con.rel == EQ and lhs != 0:
            return False
    return True


def lp_to_text(lp: LinearProgram) -> str:
    """Plain-text dump for debugging: one constraint per line, exact rationals."""
    lines = ["max " + " + ".join(f"{c}*x{i}" for i, c in enumerate(lp.objective) if c != 0)]
    for con in lp.constraints:
        terms = " + ".join(f"{a}*x{i}" for i, a in enumerate(con.coeffs) if a != 0) or "0"
        lines.append(f"{terms} {con.rel} {con.rhs}")
    for i, (lo, hi) in enumerate(zip(lp.lower, lp.upper)):
        if lo is not None or hi is not None:
            lines.append(f"{'-inf' if lo is None else lo} <= x{i} <= {'inf' if hi is None else hi}")
    return "\n".join(lines)
