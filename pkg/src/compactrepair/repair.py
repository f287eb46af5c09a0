"""Trace repair schemes for one symbol of a full-length RS(q^ell, k) code.

A seed scheme repairs f(0) with helpers S\\{0} for a subspace S containing
0 with |S| = q^delta > k.  It stores ell polynomials u_1..u_ell of degree
below q^delta - k; the actual check polynomials are g_i = u_i * M_S where
M_S(x) = (x^(q^ell) - x) / L_S(x) and L_S is the subspace polynomial of S.
That factorization is never expanded: M_S vanishes off S by construction,
and on S it is the constant -1/c, c the linear coefficient of L_S (the
product of all nonzero differences inside the field is -1, and L_S is
linearized so its derivative is the constant c).  Each g_i has degree at
most q^ell - k - 1, i.e. is a check polynomial of the code, so
sum_{a in field} g_i(a) f(a) = 0 for every message polynomial f of degree
below k; the multiplier vector of the dual code is a nonzero constant for
full-length codes and is absorbed into the u_i.

A scheme is valid when the evaluations {g_i(0)} have full rank over F_q;
repairing then works by trace accounting: each helper sends the F_q-traces
of its symbol against an echelon basis of span{g_i(helper)}, which costs
rank-many F_q-symbols, and the replacement node resolves f(0) through the
trace-dual basis of {g_i(0)}.  Substituting x -> (x - a*)/b turns the seed
into a scheme for f(a*) with helpers a* + b(S\\{0}) and identical
bandwidth, which is what makes coset families of a single seed cheap to
deploy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    DimensionTooSmallError,
    MissingPayloadError,
    NotAHelperError,
    RankDeficientError,
    ZeroDilationError,
)
from .gf import FieldCtx
from .subspaces import Subspace, linear_term_of_subspace_polynomial


class SeedScheme:
    """Check-polynomial family repairing f(0) over the helpers S\\{0}.

    Immutable after construction; bandwidth is the total F_q-symbol
    download, summed over helpers.
    """

    def __init__(self, ctx: FieldCtx, subspace: Subspace, k: int, u):
        if 0 not in subspace.members:
            raise ValueError("seed subspace must contain 0")
        size = len(subspace.members)
        if size <= k:
            raise DimensionTooSmallError(
                f"|S| = {size} must exceed k = {k} for a repair scheme"
            )
        self.ctx = ctx
        self.subspace = subspace
        self.k = k
        self.mq = subspace.subfield_m
        self.ell = subspace.ell
        max_len = size - k  # u_i degree < q^delta - k
        u = tuple(tuple(c) for c in u)
        if len(u) != self.ell:
            raise ValueError(f"need {self.ell} polynomials, got {len(u)}")
        for ui in u:
            trimmed = len(ui)
            while trimmed and ui[trimmed - 1] == 0:
                trimmed -= 1
            if trimmed > max_len:
                raise ValueError(
                    f"u polynomial degree must stay below {max_len}"
                )
        self.u = u
        # Value of M_S on S: -1/c with c the linear coefficient of L_S.
        c = linear_term_of_subspace_polynomial(subspace)
        self._on_support = ctx.neg(ctx.inv(c))
        self.helpers = subspace.star()
        self.repaired_point = 0
        self.bandwidth = bandwidth(self)

    def evals_at(self, x: int) -> list[int]:
        """[g_1(x), ..., g_ell(x)]; zero off the support S."""
        ctx = self.ctx
        if x not in self.subspace.members:
            return [0] * self.ell
        return [ctx.mul(ctx.poly_eval(ui, x), self._on_support) for ui in self.u]

    def to_json_dict(self) -> dict:
        return {
            "seed_basis": self.subspace.to_json(),
            "k": self.k,
            "u": [list(ui) for ui in self.u],
            "bandwidth": self.bandwidth,
        }

    def __repr__(self):
        return (
            f"SeedScheme(q={self.subspace.q}, dim={self.subspace.dim}, "
            f"k={self.k}, bandwidth={self.bandwidth})"
        )


class RepairScheme:
    """Seed scheme dilated by b and translated to repair f(alpha_star).

    Stored as (seed, alpha_star, b); evaluations substitute lazily, so
    h_i(x) = g_i((x - alpha_star)/b).
    """

    def __init__(self, seed: SeedScheme, alpha_star: int, b: int):
        if b == 0:
            raise ZeroDilationError("dilation factor b must be nonzero")
        self.seed = seed
        self.ctx = seed.ctx
        self.alpha_star = alpha_star
        self.b = b
        self.mq = seed.mq
        self.ell = seed.ell
        ctx = seed.ctx
        self.helpers = tuple(
            sorted(ctx.add(alpha_star, ctx.mul(b, x)) for x in seed.helpers)
        )
        self.repaired_point = alpha_star

    def evals_at(self, x: int) -> list[int]:
        ctx = self.ctx
        y = ctx.mul(ctx.sub(x, self.alpha_star), ctx.inv(self.b))
        return self.seed.evals_at(y)

    def to_json_dict(self) -> dict:
        # the seed's sorted canonical basis is its stable identifier
        return {
            "seed_basis": self.seed.subspace.to_json(),
            "alpha_star": self.alpha_star,
            "b": self.b,
        }

    def __repr__(self):
        return f"RepairScheme(alpha_star={self.alpha_star}, b={self.b})"


@dataclass(frozen=True)
class HelperPayload:
    """What one helper uploads: traces against an echelon basis of its span.

    symbols[j] = Tr(basis_j * f(beta)); combination[i][j] are the F_q
    coefficients with evals[i] = sum_j combination[i][j] * basis_j, so the
    replacement node can reassemble Tr(h_i(beta) f(beta)) from rank-many
    downloaded symbols.
    """

    beta: int
    rank: int
    symbols: tuple[int, ...]
    combination: tuple[tuple[int, ...], ...]


def naive_seed_scheme(ctx: FieldCtx, S: Subspace, k: int) -> SeedScheme:
    """Baseline scheme: u_i are constants forming an F_q-basis.

    Every helper then sees a full-rank evaluation set, so the bandwidth is
    (|S| - 1) * ell symbols, the full-download worst case.
    """
    mq = ctx.subfield_degree(S.q)
    ell = ctx.n // mq
    u = tuple((ctx.exp(i),) for i in range(ell))
    return SeedScheme(ctx, S, k, u)


def build_seed_scheme(ctx: FieldCtx, S: Subspace, k: int, u) -> SeedScheme:
    """Assemble a scheme from explicit u polynomials (validity not enforced)."""
    return SeedScheme(ctx, S, k, u)


def verify_full_rank(scheme) -> bool:
    """Full-Rank Condition: the evaluations at the repaired point span F_q^ell."""
    evals = scheme.evals_at(scheme.repaired_point)
    return scheme.ctx.rank_over(scheme.mq, evals) == scheme.ell


def bandwidth(scheme) -> int:
    """Total F_q-symbols downloaded: sum of evaluation ranks over helpers."""
    ctx = scheme.ctx
    return sum(
        ctx.rank_over(scheme.mq, scheme.evals_at(beta)) for beta in scheme.helpers
    )


def dilate_translate(seed: SeedScheme, alpha_star: int, b: int) -> RepairScheme:
    """Scheme for f(alpha_star) with helpers alpha_star + b*(S\\{0})."""
    return RepairScheme(seed, alpha_star, b)


def helper_payload(scheme: RepairScheme, beta: int, f_beta: int) -> HelperPayload:
    """Payload the helper at beta sends, given its stored symbol f_beta."""
    if beta not in scheme.helpers:
        raise NotAHelperError(f"{beta} is not a helper of this scheme")
    ctx = scheme.ctx
    mq = scheme.mq
    evals = scheme.evals_at(beta)
    rows = [list(ctx.coords(v, mq)) for v in evals]
    rref, pivots = ctx.rref_over(mq, rows)
    basis = [ctx.from_coords(r, mq) for r in rref]
    symbols = tuple(
        ctx.trace_to_subfield(ctx.mul(xi, f_beta), mq) for xi in basis
    )
    # Reduced echelon form: the coefficient of basis_j in evals[i] is just
    # the coordinate of evals[i] at basis_j's pivot column.
    combination = tuple(
        tuple(ctx.coords(v, mq)[p] for p in pivots) for v in evals
    )
    return HelperPayload(beta, len(pivots), symbols, combination)


def recover_symbol(scheme: RepairScheme, payloads) -> int:
    """Resolve f(alpha_star) from one payload per helper.

    Each check identity gives Tr(h_i(a*) f(a*)) = -sum_beta Tr(h_i(beta)
    f(beta)); the right side assembles from payload symbols, and the left
    side determines f(a*) through the trace-dual basis of {h_i(a*)}.
    """
    ctx = scheme.ctx
    mq = scheme.mq
    by_beta = {}
    for p in payloads:
        if p.beta in by_beta:
            raise ValueError(f"duplicate payload for helper {p.beta}")
        by_beta[p.beta] = p
    missing = [b for b in scheme.helpers if b not in by_beta]
    extra = [b for b in by_beta if b not in scheme.helpers]
    if missing or extra:
        raise MissingPayloadError(
            f"payloads must cover helpers exactly (missing {missing}, extra {extra})"
        )
    w = scheme.evals_at(scheme.alpha_star)
    if ctx.rank_over(mq, w) != scheme.ell:
        raise RankDeficientError(
            "check evaluations at the repaired point do not have full rank"
        )
    duals = ctx.dual_basis(w, mq)
    result = 0
    for i in range(scheme.ell):
        acc = 0
        for beta in scheme.helpers:
            p = by_beta[beta]
            for c, t in zip(p.combination[i], p.symbols):
                acc = ctx.add(acc, ctx.mul(c, t))
        t_i = ctx.neg(acc)  # Tr(h_i(a*) f(a*)) as an F_q scalar
        result = ctx.add(result, ctx.mul(t_i, duals[i]))
    return result


def check_polynomial_validity(ctx: FieldCtx, k: int, coeffs) -> bool:
    """True iff the polynomial is a dual-code check: degree <= q^ell - k - 1."""
    deg = len(coeffs) - 1
    while deg >= 0 and coeffs[deg] == 0:
        deg -= 1
    if deg < 0:
        return True  # the zero polynomial is (degenerately) orthogonal
    return deg <= ctx.order - k - 1


def search_seed_scheme(
    ctx: FieldCtx,
    S: Subspace,
    k: int,
    budget: int,
    rng_seed: int = 0,
) -> SeedScheme:
    """Heuristic bandwidth search over the u coefficients.

    Coordinate descent with random restarts: each step re-tries one
    coefficient slot against every field value, keeping strict improvements
    that preserve the Full-Rank Condition.  The budget counts candidate
    evaluations; budget 0 returns the naive baseline.  The result is always
    valid and never worse than the baseline.
    """
    naive = naive_seed_scheme(ctx, S, k)
    if budget <= 0:
        return naive
    mq = naive.mq
    ell = naive.ell
    helpers = naive.helpers
    slots = len(S.members) - k
    rng = random.Random(rng_seed)

    def score(u) -> int | None:
        at_zero = [ctx.poly_eval(ui, 0) for ui in u]
        if ctx.rank_over(mq, at_zero) != ell:
            return None
        return sum(
            ctx.rank_over(mq, [ctx.poly_eval(ui, a) for ui in u]) for a in helpers
        )

    def pad(u):
        return [list(ui) + [0] * (slots - len(ui)) for ui in u]

    current = pad(naive.u)
    current_bw = naive.bandwidth
    best_u = [list(ui) for ui in current]
    best_bw = current_bw
    spent = 0
    stall = 0
    while spent < budget:
        i = rng.randrange(ell)
        d = rng.randrange(slots)
        original = current[i][d]
        improved = False
        for v in range(ctx.order):
            if v == original or spent >= budget:
                continue
            spent += 1
            current[i][d] = v
            bw = score(current)
            if bw is not None and bw < current_bw:
                current_bw = bw
                original = v
                improved = True
            current[i][d] = original
        if improved:
            stall = 0
            if current_bw < best_bw:
                best_bw = current_bw
                best_u = [list(ui) for ui in current]
        else:
            stall += 1
        if stall > 4 * ell * slots:
            # Restart from a random valid point; keep the global best.
            for _ in range(64):
                if spent >= budget:
                    break
                spent += 1
                cand = [
                    [rng.randrange(ctx.order) for _ in range(slots)]
                    for _ in range(ell)
                ]
                bw = score(cand)
                if bw is not None:
                    current = cand
                    current_bw = bw
                    break
            stall = 0
    return SeedScheme(ctx, S, k, tuple(tuple(ui) for ui in best_u))
