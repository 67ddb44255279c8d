"""Exact rational linear programming.

A two-phase primal simplex over :class:`~fractions.Fraction` on a dense
tableau.  Every outcome carries evidence that can be checked without trusting
the solver:

* :class:`Optimal` carries a point that satisfies every row exactly;
* :class:`Infeasible` carries Farkas multipliers, one per row of
  :meth:`LinearProgram.rows`, whose aggregate reads ``0 <= negative``;
* :class:`Unbounded` carries a feasible point and an improving ray.

Variables are free unless bounded.  Bounds are part of the row list seen by
certificates (constraints first, then for each variable its lower row and
its upper row, when present), but the solver handles them by substitution.

Pivoting is Dantzig's rule with the lowest index breaking ties; after a run
of degenerate pivots it falls back to Bland's rule until progress resumes,
so the method terminates and is fully deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .rational import to_rational

LE, EQ, GE = "<=", "==", ">="
_RELATIONS = {"<=": LE, "≤": LE, "==": EQ, "=": EQ, ">=": GE, "≥": GE}

_ZERO = Fraction(0)
_ONE = Fraction(1)
_BLAND_AFTER = 30


class LPStructureError(ValueError):
    """Malformed linear program (distinct from an infeasible one)."""


class CertificateError(RuntimeError):
    """A certificate failed its independent replay; indicates a defect."""


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    rel: str
    rhs: Fraction

    def __post_init__(self):
        rel = _RELATIONS.get(self.rel)
        if rel is None:
            raise LPStructureError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "rel", rel)
        object.__setattr__(self, "coeffs", tuple(to_rational(a) for a in self.coeffs))
        object.__setattr__(self, "rhs", to_rational(self.rhs))

    def holds(self, x) -> bool:
        lhs = sum((a * v for a, v in zip(self.coeffs, x) if a), _ZERO)
        if self.rel == LE:
            return lhs <= self.rhs
        if self.rel == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


def _as_constraint(c) -> Constraint:
    if isinstance(c, Constraint):
        return c
    coeffs, rel, rhs = c
    return Constraint(tuple(coeffs), rel, rhs)


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple
    constraints: tuple = ()
    sense: str = "min"
    lower: Optional[tuple] = None
    upper: Optional[tuple] = None

    def __post_init__(self):
        obj = tuple(to_rational(c) for c in self.objective)
        n = len(obj)
        if n == 0:
            raise LPStructureError("a linear program needs at least one variable")
        if self.sense not in ("min", "max"):
            raise LPStructureError(f"sense must be 'min' or 'max', not {self.sense!r}")
        rows = tuple(_as_constraint(c) for c in self.constraints)
        for i, row in enumerate(rows):
            if len(row.coeffs) != n:
                raise LPStructureError(
                    f"constraint {i} has {len(row.coeffs)} coefficients, expected {n}"
                )
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", rows)
        for name in ("lower", "upper"):
            b = getattr(self, name)
            if b is None:
                continue
            if len(b) != n:
                raise LPStructureError(f"{name} bounds have length {len(b)}, expected {n}")
            object.__setattr__(
                self, name, tuple(None if v is None else to_rational(v) for v in b)
            )

    @property
    def nvars(self) -> int:
        return len(self.objective)

    def bound(self, name: str, j: int):
        b = getattr(self, name)
        return None if b is None else b[j]

    def rows(self) -> list:
        """All rows, in the order Farkas vectors refer to them."""
        n = self.nvars
        out = list(self.constraints)
        for j in range(n):
            e = tuple(_ONE if k == j else _ZERO for k in range(n))
            lo, hi = self.bound("lower", j), self.bound("upper", j)
            if lo is not None:
                out.append(Constraint(e, GE, lo))
            if hi is not None:
                out.append(Constraint(e, LE, hi))
        return out

    def value(self, x) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), _ZERO)

    def dual(self) -> "LinearProgram":
        """The LP dual with every row (bounds included) dualized."""
        rows = self.rows()
        n = self.nvars
        m = len(rows)
        cons = []
        for j in range(n):
            cons.append(([r.coeffs[j] for r in rows], EQ, self.objective[j]))
        lower: list = [None] * m
        upper: list = [None] * m
        for i, r in enumerate(rows):
            if r.rel == EQ:
                continue
            nonneg = (r.rel == GE) == (self.sense == "min")
            if nonneg:
                lower[i] = _ZERO
            else:
                upper[i] = _ZERO
        if m == 0:
            raise LPStructureError("dual of an unconstrained program has no variables")
        return LinearProgram(
            objective=[r.rhs for r in rows],
            constraints=cons,
            sense="max" if self.sense == "min" else "min",
            lower=lower,
            upper=upper,
        )


@dataclass(frozen=True)
class Optimal:
    point: tuple
    value: Fraction

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Feasible:
    point: tuple

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Infeasible:
    farkas: tuple

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Unbounded:
    point: tuple
    ray: tuple

    def __bool__(self):
        return True


# ---------------------------------------------------------------------------
# independent replay


def point_satisfies(rows: Sequence[Constraint], x) -> bool:
    return all(r.holds(x) for r in rows)


def farkas_holds(rows: Sequence[Constraint], y) -> bool:
    """Check that ``y`` certifies infeasibility of ``rows`` (free variables).

    Signs: ``y_i >= 0`` on ``<=`` rows, ``y_i <= 0`` on ``>=`` rows, free on
    equalities; then ``sum_i y_i a_i`` must vanish while ``sum_i y_i b_i < 0``.
    """
    if len(y) != len(rows):
        return False
    if not rows:
        return False
    n = len(rows[0].coeffs)
    agg = [_ZERO] * n
    rhs = _ZERO
    for r, yi in zip(rows, y):
        if yi == 0:
            continue
        if r.rel == LE and yi < 0:
            return False
        if r.rel == GE and yi > 0:
            return False
        for k, a in enumerate(r.coeffs):
            if a:
                agg[k] += yi * a
        rhs += yi * r.rhs
    return all(a == 0 for a in agg) and rhs < 0


def ray_holds(lp: LinearProgram, x, d) -> bool:
    if not point_satisfies(lp.rows(), x):
        return False
    for r in lp.rows():
        s = sum((a * v for a, v in zip(r.coeffs, d)), _ZERO)
        if r.rel == LE and s > 0 or r.rel == GE and s < 0 or r.rel == EQ and s != 0:
            return False
    gain = lp.value(d)
    return gain < 0 if lp.sense == "min" else gain > 0


# ---------------------------------------------------------------------------
# standard form


class _StandardForm:
    """min c x  s.t.  A x = b, x >= 0, b >= 0, with maps back to the original."""

    def __init__(self, lp: LinearProgram):
        n = lp.nvars
        self.lp = lp
        self.offset = [_ZERO] * n
        self.terms: list = []  # per original var: list of (column, sign)
        ncol = 0
        extra_rows = []  # (column, rhs, original-row index)
        orig_rows = lp.rows()
        row_index = len(lp.constraints)
        self.bound_row = {}
        for j in range(n):
            lo, hi = lp.bound("lower", j), lp.bound("upper", j)
            if lo is not None:
                self.bound_row[(j, "lower")] = row_index
                row_index += 1
            if hi is not None:
                self.bound_row[(j, "upper")] = row_index
                row_index += 1
            if lo is not None:
                if hi is not None:
                    extra_rows.append((ncol, hi - lo, self.bound_row[(j, "upper")]))
                self.offset[j] = lo
                self.terms.append([(ncol, 1)])
                ncol += 1
            elif hi is not None:
                self.offset[j] = hi
                self.terms.append([(ncol, -1)])
                ncol += 1
            else:
                self.terms.append([(ncol, 1), (ncol + 1, -1)])
                ncol += 2
        self.nstruct = ncol
        self.orig_rows = orig_rows

        # rows over structural columns: (coeff dict, rel, rhs, original row index)
        srows = []
        for i, con in enumerate(lp.constraints):
            coef: dict = {}
            rhs = con.rhs
            for j, a in enumerate(con.coeffs):
                if not a:
                    continue
                rhs -= a * self.offset[j]
                for col, sg in self.terms[j]:
                    coef[col] = coef.get(col, _ZERO) + sg * a
            srows.append((coef, con.rel, rhs, i))
        for col, rhs, oi in extra_rows:
            srows.append(({col: _ONE}, LE, rhs, oi))
        self.srows = srows

    def to_original(self, xs) -> tuple:
        out = []
        for j, terms in enumerate(self.terms):
            v = self.offset[j]
            for col, sg in terms:
                v += sg * xs[col]
            out.append(v)
        return tuple(out)

    def direction_to_original(self, ds) -> tuple:
        out = []
        for terms in self.terms:
            v = _ZERO
            for col, sg in terms:
                v += sg * ds[col]
            out.append(v)
        return tuple(out)


class _Simplex:
    def __init__(self, sf: _StandardForm):
        self.sf = sf
        m = len(sf.srows)
        ncols = sf.nstruct
        self.slack_of = [None] * m
        self.flip = [1] * m
        self.sigma = [0] * m
        for r, (_, rel, rhs, _) in enumerate(sf.srows):
            if rel != EQ:
                self.slack_of[r] = ncols
                self.sigma[r] = 1 if rel == LE else -1
                ncols += 1
            self.flip[r] = -1 if rhs < 0 else 1
        self.nreal = ncols
        # initial basis: usable slack (coefficient +1 after flip) or artificial
        self.init_col = [None] * m
        self.artificial = set()
        for r in range(m):
            if self.slack_of[r] is not None and self.sigma[r] * self.flip[r] == 1:
                self.init_col[r] = self.slack_of[r]
            else:
                self.init_col[r] = ncols
                self.artificial.add(ncols)
                ncols += 1
        self.ncols = ncols
        self.m = m
        T = []
        for r, (coef, rel, rhs, _) in enumerate(sf.srows):
            f = self.flip[r]
            row = [_ZERO] * (ncols + 1)
            for col, a in coef.items():
                row[col] = f * a
            if self.slack_of[r] is not None:
                row[self.slack_of[r]] = Fraction(f * self.sigma[r])
            if self.init_col[r] in self.artificial:
                row[self.init_col[r]] = _ONE
            row[-1] = f * rhs
            T.append(row)
        self.T = T
        self.basis = list(self.init_col)

    # -- core -------------------------------------------------------------
    def _reduced_costs(self, cost):
        d = list(cost) + [_ZERO]
        for r in range(self.m):
            cb = cost[self.basis[r]]
            if cb:
                row = self.T[r]
                for j, v in enumerate(row):
                    if v:
                        d[j] -= cb * v
        return d

    def _pivot(self, r, j, d):
        T = self.T
        prow = T[r]
        piv = prow[j]
        if piv != 1:
            inv = 1 / piv
            for k, v in enumerate(prow):
                if v:
                    prow[k] = v * inv
        nz = [(k, v) for k, v in enumerate(prow) if v]
        for i in range(self.m):
            if i == r:
                continue
            row = T[i]
            f = row[j]
            if f:
                for k, v in nz:
                    row[k] -= f * v
        f = d[j]
        if f:
            for k, v in nz:
                d[k] -= f * v
        self.basis[r] = j

    def _run(self, cost, allowed):
        """Iterate to optimality; return None or the entering column of a ray."""
        d = self._reduced_costs(cost)
        degenerate = 0
        while True:
            bland = degenerate >= _BLAND_AFTER
            j = None
            best = _ZERO
            for k in allowed:
                dk = d[k]
                if dk < 0:
                    if bland:
                        j = k
                        break
                    if dk < best:
                        best, j = dk, k
            if j is None:
                self.d = d
                return None
            r = None
            ratio = None
            for i in range(self.m):
                a = self.T[i][j]
                if a > 0:
                    q = self.T[i][-1] / a
                    if ratio is None or q < ratio or (q == ratio and self.basis[i] < self.basis[r]):
                        r, ratio = i, q
            if r is None:
                self.d = d
                return j
            degenerate = degenerate + 1 if ratio == 0 else 0
            self._pivot(r, j, d)

    def basic_solution(self):
        x = [_ZERO] * self.ncols
        for r, b in enumerate(self.basis):
            x[b] = self.T[r][-1]
        return x

    def solve(self, cost_struct):
        """Returns ('infeasible', y) | ('optimal', x) | ('unbounded', x, dir)."""
        # phase 1
        cost1 = [_ZERO] * self.ncols
        for a in self.artificial:
            cost1[a] = _ONE
        if self.artificial:
            self._run(cost1, range(self.ncols))
            d = self.d
            phase1 = -d[-1]
            if phase1 > 0:
                y = [cost1[self.init_col[r]] - d[self.init_col[r]] for r in range(self.m)]
                return ("infeasible", y)
            # drive zero-level artificials out of the basis where possible
            for r in range(self.m):
                if self.basis[r] in self.artificial:
                    row = self.T[r]
                    for k in range(self.nreal):
                        if row[k]:
                            self._pivot(r, k, [_ZERO] * (self.ncols + 1))
                            break
        cost2 = list(cost_struct) + [_ZERO] * (self.ncols - len(cost_struct))
        enter = self._run(cost2, range(self.nreal))
        x = self.basic_solution()
        if enter is None:
            return ("optimal", x)
        ds = [_ZERO] * self.ncols
        ds[enter] = _ONE
        for r, b in enumerate(self.basis):
            ds[b] = -self.T[r][enter]
        return ("unbounded", x, ds)


def _farkas_from_phase1(sf: _StandardForm, sx: _Simplex, y) -> tuple:
    lp = sf.lp
    rows = sf.orig_rows
    lam = [_ZERO] * len(rows)
    for r, (_, _, _, oi) in enumerate(sf.srows):
        lam[oi] = -y[r] * sx.flip[r]
    n = lp.nvars
    for j in range(n):
        resid = _ZERO
        for i, con in enumerate(lp.constraints):
            a = con.coeffs[j]
            if a and lam[i]:
                resid += lam[i] * a
        up = sf.bound_row.get((j, "upper"))
        lo = sf.bound_row.get((j, "lower"))
        if up is not None and lo is not None:
            resid += lam[up]
        if resid == 0:
            continue
        if resid > 0 and lo is not None:
            lam[lo] = -resid
        elif resid < 0 and up is not None:
            lam[up] -= resid
        else:
            raise CertificateError("Farkas residual lands on a missing bound")
    return tuple(lam)


def solve_lp(lp: LinearProgram):
    """Solve ``lp`` exactly; the outcome is replayed before it is returned."""
    if not isinstance(lp, LinearProgram):
        raise LPStructureError("solve_lp expects a LinearProgram")
    sf = _StandardForm(lp)
    sx = _Simplex(sf)
    sign = 1 if lp.sense == "min" else -1
    cost = [_ZERO] * sf.nstruct
    for j, c in enumerate(lp.objective):
        for col, sg in sf.terms[j]:
            cost[col] += sign * sg * c
    res = sx.solve(cost)
    rows = sf.orig_rows
    if res[0] == "infeasible":
        y = _farkas_from_phase1(sf, sx, res[1])
        if not farkas_holds(rows, y):
            raise CertificateError("Farkas certificate failed replay")
        return Infeasible(y)
    x = sf.to_original(res[1])
    if not point_satisfies(rows, x):
        raise CertificateError("simplex point violates a constraint")
    if res[0] == "optimal":
        return Optimal(x, lp.value(x))
    d = sf.direction_to_original(res[2])
    if not ray_holds(lp, x, d):
        raise CertificateError("unbounded ray failed replay")
    return Unbounded(x, d)


def check_feasible(constraints, nvars: Optional[int] = None, lower=None, upper=None):
    """Feasibility of a constraint list; ``Feasible(point)`` or ``Infeasible``."""
    cons = [_as_constraint(c) for c in constraints]
    if nvars is None:
        if not cons:
            raise LPStructureError("cannot infer the number of variables")
        nvars = len(cons[0].coeffs)
    lp = LinearProgram([0] * nvars, cons, lower=lower, upper=upper)
    out = solve_lp(lp)
    if isinstance(out, Infeasible):
        return out
    return Feasible(out.point)
