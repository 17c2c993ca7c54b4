"""Exact rational linear programming and zero-sum matrix games.

Everything runs on :class:`fractions.Fraction`; there is no floating
point anywhere, so optimality certificates are exact equalities.  The
simplex uses Bland's pivoting rule, which rules out cycling without any
perturbation machinery.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    """Outcome of :func:`solve_lp`.

    ``duals`` holds one multiplier per constraint, signed so that
    ``objective == sum(dual_i * rhs_i)`` at an optimum.
    """

    status: LPStatus
    objective: Fraction = None
    x: list = None
    duals: list = None


def _pivot(tableau, zrow, basis, r, j):
    row = tableau[r]
    piv = row[j]
    if piv != 1:
        inv = Fraction(1) / piv
        tableau[r] = row = [v * inv for v in row]
    for i in range(len(tableau)):
        if i != r:
            f = tableau[i][j]
            if f:
                other = tableau[i]
                tableau[i] = [a - f * b for a, b in zip(other, row)]
    f = zrow[j]
    if f:
        zrow[:] = [a - f * b for a, b in zip(zrow, row)]
    basis[r] = j


def _price_out(costs, tableau, basis):
    zrow = list(costs) + [Fraction(0)]
    for r, col in enumerate(basis):
        cb = costs[col]
        if cb:
            row = tableau[r]
            zrow = [a - cb * b for a, b in zip(zrow, row)]
    return zrow


def _run_simplex(tableau, zrow, basis, allowed):
    """Bland-rule simplex to optimality; returns False on unboundedness."""
    ncols = len(zrow) - 1
    while True:
        enter = next(
            (j for j in range(ncols) if allowed[j] and zrow[j] < 0), None
        )
        if enter is None:
            return True
        leave = None
        best_ratio = None
        for r, row in enumerate(tableau):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = r
        if leave is None:
            return False
        _pivot(tableau, zrow, basis, leave, enter)


def solve_lp(objective, rows, senses, rhs, maximize=False):
    """Exact simplex for: optimize ``objective @ x`` s.t. ``rows @ x (sense) rhs``, x >= 0.

    Senses are "<=", ">=" or "==" per constraint.  Infeasible and
    unbounded problems are reported distinctly in the result status.
    """
    nvars = len(objective)
    m = len(rows)
    if not (len(senses) == len(rhs) == m):
        raise ValueError("rows, senses and rhs must have equal length")
    c = [Fraction(v) for v in objective]
    if maximize:
        c = [-v for v in c]
    if m == 0:
        if any(v < 0 for v in c):
            return LPResult(LPStatus.UNBOUNDED)
        zero = Fraction(0)
        return LPResult(LPStatus.OPTIMAL, zero, [zero] * nvars, [])

    # normalize to nonnegative right-hand sides
    work = []
    for row, sense, b in zip(rows, senses, rhs):
        if len(row) != nvars:
            raise ValueError("constraint row has wrong width")
        row = [Fraction(v) for v in row]
        b = Fraction(b)
        flip = 1
        if b < 0:
            row = [-v for v in row]
            b = -b
            flip = -1
            sense = {"<=": ">=", ">=": "<=", "==": "==", "=": "="}[sense]
        work.append((row, sense, b, flip))

    n_slack = sum(1 for _, s, _, _ in work if s in ("<=", ">="))
    art_rows = [i for i, (_, s, _, _) in enumerate(work) if s in (">=", "==", "=")]
    ncols = nvars + n_slack + len(art_rows)
    art_start = nvars + n_slack

    tableau = []
    basis = []
    birth = [None] * m
    zero = Fraction(0)
    slack_at = 0
    art_at = 0
    for i, (row, sense, b, _flip) in enumerate(work):
        full = row + [zero] * (n_slack + len(art_rows)) + [b]
        if sense == "<=":
            col = nvars + slack_at
            slack_at += 1
            full[col] = Fraction(1)
            basis.append(col)
            birth[i] = col
        elif sense == ">=":
            col = nvars + slack_at
            slack_at += 1
            full[col] = Fraction(-1)
            acol = art_start + art_at
            art_at += 1
            full[acol] = Fraction(1)
            basis.append(acol)
            birth[i] = acol
        else:
            acol = art_start + art_at
            art_at += 1
            full[acol] = Fraction(1)
            basis.append(acol)
            birth[i] = acol
        tableau.append(full)

    allowed = [True] * ncols

    if art_rows:
        phase1 = [zero] * art_start + [Fraction(1)] * len(art_rows)
        zrow = _price_out(phase1, tableau, basis)
        _run_simplex(tableau, zrow, basis, allowed)
        if -zrow[-1] > 0:
            return LPResult(LPStatus.INFEASIBLE)
        # drive leftover artificials out of the basis where possible
        for r in range(m):
            if basis[r] >= art_start:
                j = next(
                    (jj for jj in range(art_start) if tableau[r][jj] != 0), None
                )
                if j is not None:
                    _pivot(tableau, zrow, basis, r, j)
        for j in range(art_start, ncols):
            allowed[j] = False

    phase2 = c + [zero] * (ncols - nvars)
    zrow = _price_out(phase2, tableau, basis)
    if not _run_simplex(tableau, zrow, basis, allowed):
        return LPResult(LPStatus.UNBOUNDED)

    x = [zero] * nvars
    for r, col in enumerate(basis):
        if col < nvars:
            x[col] = tableau[r][-1]
    obj = -zrow[-1]
    duals = []
    for i, (_row, _sense, _b, flip) in enumerate(work):
        y = -zrow[birth[i]] * flip
        duals.append(-y if maximize else y)
    if maximize:
        obj = -obj
    return LPResult(LPStatus.OPTIMAL, obj, x, duals)


@dataclass
class MatrixGame:
    """Zero-sum game; rows maximize the payoff, columns minimize it."""

    payoffs: list

    def __post_init__(self):
        if not self.payoffs or not self.payoffs[0]:
            raise ValueError("payoff matrix needs at least one row and column")
        width = len(self.payoffs[0])
        if any(len(row) != width for row in self.payoffs):
            raise ValueError("payoff matrix must be rectangular")
        self.payoffs = [[Fraction(v) for v in row] for row in self.payoffs]

    @property
    def shape(self):
        return len(self.payoffs), len(self.payoffs[0])


@dataclass
class GameSolution:
    """Exact value, optimal mixed strategies and the duality certificate.

    ``col_guarantees[j]`` is the row strategy's payoff against pure column
    ``j`` (all >= value); ``row_guarantees[i]`` is the column strategy's
    payoff against pure row ``i`` (all <= value).
    """

    value: Fraction
    row_strategy: list
    col_strategy: list
    col_guarantees: list
    row_guarantees: list


def _solve_oriented(matrix):
    """Value and optimal strategies of a game with rows maximizing.

    Builds one slack-feasible LP sized by the number of rows; callers
    orient the matrix so this is the smaller side.
    """
    m, n = len(matrix), len(matrix[0])
    lo = min(min(row) for row in matrix)
    hi = max(max(row) for row in matrix)
    one = Fraction(1)
    if lo == hi:
        p = [one] + [Fraction(0)] * (m - 1)
        q = [one] + [Fraction(0)] * (n - 1)
        return lo, p, q
    # shift chosen so scaling all payoffs rescales the LP, keeping the
    # pivot path (hence the optimal supports) identical
    shift = (hi - lo) - lo
    shifted = [[v + shift for v in row] for row in matrix]
    result = solve_lp(
        [one] * n,
        shifted,
        ["<="] * m,
        [one] * m,
        maximize=True,
    )
    if result.status is not LPStatus.OPTIMAL:
        raise ArithmeticError(f"game LP unexpectedly {result.status.value}")
    total = result.objective
    q = [y / total for y in result.x]
    p = [d / total for d in result.duals]
    return one / total - shift, p, q


def solve_matrix_game(game):
    """Solve a matrix game exactly and verify its certificate."""
    if isinstance(game, MatrixGame):
        matrix = game.payoffs
    else:
        matrix = MatrixGame(game).payoffs
    m, n = len(matrix), len(matrix[0])
    if m <= n:
        value, p, q = _solve_oriented(matrix)
    else:
        negt = [[-matrix[i][j] for i in range(m)] for j in range(n)]
        nval, np_, nq = _solve_oriented(negt)
        value, p, q = -nval, nq, np_
    col_g = [sum(p[i] * matrix[i][j] for i in range(m)) for j in range(n)]
    row_g = [sum(matrix[i][j] * q[j] for j in range(n)) for i in range(m)]
    if (
        sum(p) != 1
        or sum(q) != 1
        or any(v < 0 for v in p)
        or any(v < 0 for v in q)
        or min(col_g) != value
        or max(row_g) != value
    ):
        raise ArithmeticError("matrix game certificate failed to verify")
    return GameSolution(value, p, q, col_g, row_g)
