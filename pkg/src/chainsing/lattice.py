"""Finite-rank lattice model of vanishing-cycle intersection data.

A SeifertLattice is a free Z-module of rank r with an upper-unitriangular
pairing matrix (the Seifert matrix of an ordered system of vanishing paths)
and a parity flag n.  Symmetrizing gives the intersection form

    I = Seif + (-1)^n Seif^T,

antisymmetric with zero diagonal for odd n, symmetric with diagonal 2 for
even n.  On top of this the module implements Dehn-twist reflections, the
global monodromy both as a closed form and as an ordered twist composition,
basis mutations, the duality anti-transpose, and the petal-pairing recursion
that rebuilds rainbow Seifert matrices from intersection numbers of matching
cycles (each matching cycle being a difference of two thimble classes).

Composition-order calibration (frozen): writing tau_i for the twist about
basis vector e_i, the global monodromy is tau_{e_1} o tau_{e_2} o ... o
tau_{e_r} (rightmost applied first), with the twist coefficients taken from
the symmetrization of the *opposite* parity, Seif + (-1)^{n+1} Seif^T.  The
opposite parity is forced: the twisted spheres live in the fiber, one complex
dimension below the total space whose parity n enters the monodromy formula.
Calibrated once against the rank-2 case, where the composition must equal
[[0,-1],[1,-1]] = -S^{-1}S^T; no other order/parity combination achieves it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .invariants import (
    ChainTuple,
    alpha_prime_poly,
    companion_matrix,
    degree_d,
    milnor_number,
    seifert_series,
)
from .series import (
    IntMatrix,
    MatrixError,
    RainbowMatrix,
    mat_inverse_unimodular,
    rainbow_invert,
    unitriangular_inverse,
)


class LatticeError(ValueError):
    """Invalid lattice construction or operation."""


@dataclass(frozen=True)
class SeifertLattice:
    """Upper-unitriangular Seifert pairing plus the parity of the ambient dimension."""

    seif: IntMatrix
    parity: int

    def __post_init__(self) -> None:
        m = self.seif
        if m.nrows != m.ncols:
            raise LatticeError("Seifert matrix must be square")
        for i in range(m.nrows):
            if m.rows[i][i] != 1:
                raise LatticeError("Seifert matrix must have unit diagonal")
            if any(m.rows[i][j] != 0 for j in range(i)):
                raise LatticeError("Seifert matrix must be upper triangular")

    @property
    def rank(self) -> int:
        return self.seif.nrows

    @property
    def sign(self) -> int:
        return (-1) ** (self.parity % 2)

    @classmethod
    def from_rainbow(cls, rainbow: RainbowMatrix, parity: int) -> SeifertLattice:
        return cls(rainbow.dense(), parity)

    def basis_vector(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.rank))


def seifert_pair(lattice: SeifertLattice, v: Sequence[int], w: Sequence[int]) -> int:
    """Bilinear extension v^T Seif w of the thimble pairing."""
    r = lattice.rank
    if len(v) != r or len(w) != r:
        raise LatticeError(f"vectors must have length {r}")
    rows = lattice.seif.rows
    return sum(
        vi * sum(rows[i][j] * w[j] for j in range(i, r)) for i, vi in enumerate(v) if vi
    )


@dataclass(frozen=True)
class PetalChain:
    """A matching cycle written as a difference of two thimble classes."""

    plus_index: int
    minus_index: int

    def __post_init__(self) -> None:
        if self.plus_index == self.minus_index:
            raise LatticeError("petal chain needs two distinct thimbles")

    def vector(self, lattice: SeifertLattice) -> tuple[int, ...]:
        if not (0 <= self.plus_index < lattice.rank and 0 <= self.minus_index < lattice.rank):
            raise LatticeError("petal chain index out of range")
        return tuple(
            (1 if i == self.plus_index else 0) - (1 if i == self.minus_index else 0)
            for i in range(lattice.rank)
        )


def petal_chain_pairing(
    lattice: SeifertLattice, first: PetalChain, second: PetalChain
) -> int:
    """Seifert pairing of two thimble-difference cycles."""
    return seifert_pair(lattice, first.vector(lattice), second.vector(lattice))


def intersection_form(lattice: SeifertLattice) -> IntMatrix:
    """Seif + (-1)^n Seif^T; the pairing of absolute cycle classes."""
    s = lattice.seif
    sign = lattice.sign
    n = lattice.rank
    return IntMatrix(
        tuple(
            tuple(s.rows[i][j] + sign * s.rows[j][i] for j in range(n))
            for i in range(n)
        )
    )


def _form_apply(form: IntMatrix, c: Sequence[int], v: Sequence[int]) -> int:
    return sum(
        ci * sum(form.rows[i][j] * v[j] for j in range(form.ncols))
        for i, ci in enumerate(c)
        if ci
    )


def pl_twist(
    lattice: SeifertLattice, c: Sequence[int], v: Sequence[int]
) -> tuple[int, ...]:
    """Dehn twist of the class v about the cycle c:  v - (c . v) c."""
    if len(c) != lattice.rank or len(v) != lattice.rank:
        raise LatticeError(f"vectors must have length {lattice.rank}")
    coef = _form_apply(intersection_form(lattice), c, v)
    return tuple(vi - coef * ci for vi, ci in zip(v, c))


def monodromy_matrix(lattice: SeifertLattice) -> IntMatrix:
    """Global monodromy (-1)^n Seif^{-1} Seif^T."""
    inv = np.array(unitriangular_inverse(lattice.seif).rows, dtype=object)
    st = np.array(lattice.seif.transpose().rows, dtype=object)
    prod = inv @ st
    if lattice.sign != 1:
        prod = -prod
    return IntMatrix(tuple(tuple(int(x) for x in row) for row in prod))


def monodromy_as_twists(lattice: SeifertLattice) -> IntMatrix:
    """Ordered composition of the basis twists (see module docstring).

    Twist coefficients come from the fiber-parity form
    Seif + (-1)^{n+1} Seif^T; the composition applies the twist about the
    last basis vector first.  Must equal monodromy_matrix exactly.
    """
    r = lattice.rank
    fiber = SeifertLattice(lattice.seif, lattice.parity + 1)
    form = np.array(intersection_form(fiber).rows, dtype=object)
    comp = np.array(IntMatrix.identity(r).rows, dtype=object)
    for i in range(r - 1, -1, -1):
        comp[i] = comp[i] - form[i] @ comp
    return IntMatrix(tuple(tuple(int(x) for x in row) for row in comp))


def preserves_intersection_form(lattice: SeifertLattice, h: IntMatrix) -> bool:
    """Exact check h^T I h == I for I = Seif + (-1)^n Seif^T."""
    form = np.array(intersection_form(lattice).rows, dtype=object)
    hm = np.array(h.rows, dtype=object)
    return bool(np.array_equal(hm.T @ form @ hm, form))


@dataclass(frozen=True)
class BasisState:
    """A basis of the lattice (rows = coordinates) with its Gram matrix.

    The Gram matrix is always the pairing of the vectors under the *host*
    lattice's seifert_pair, so mutations preserve the underlying pairing by
    construction; unitriangularity of the Gram is re-checked after each move.
    """

    lattice: SeifertLattice
    vectors: tuple[tuple[int, ...], ...]
    gram: IntMatrix

    @classmethod
    def standard(cls, lattice: SeifertLattice) -> BasisState:
        vecs = tuple(lattice.basis_vector(i) for i in range(lattice.rank))
        return cls(lattice, vecs, lattice.seif)


def _gram(lattice: SeifertLattice, vectors: Sequence[Sequence[int]]) -> IntMatrix:
    return IntMatrix(
        tuple(
            tuple(seifert_pair(lattice, v, w) for w in vectors) for v in vectors
        )
    )


def _rebuild(lattice: SeifertLattice, vectors: list[tuple[int, ...]]) -> BasisState:
    gram = _gram(lattice, vectors)
    for i in range(len(vectors)):
        if gram.rows[i][i] != 1 or any(gram.rows[i][j] != 0 for j in range(i)):
            raise LatticeError("mutation produced a non-unitriangular Gram matrix")
    return BasisState(lattice, tuple(vectors), gram)


def mutate_left(state: BasisState, i: int) -> BasisState:
    """Left mutation at 1-based position i: (x, y) -> (y - <x,y> x, x)."""
    if not 1 <= i < len(state.vectors):
        raise LatticeError(f"mutation index {i} out of range")
    x = state.vectors[i - 1]
    y = state.vectors[i]
    g = state.gram.rows[i - 1][i]
    moved = tuple(yi - g * xi for yi, xi in zip(y, x))
    vecs = list(state.vectors)
    vecs[i - 1], vecs[i] = moved, x
    return _rebuild(state.lattice, vecs)


def mutate_right(state: BasisState, i: int) -> BasisState:
    """Right mutation at 1-based position i: (x, y) -> (y, x - <x,y> y); inverse of left."""
    if not 1 <= i < len(state.vectors):
        raise LatticeError(f"mutation index {i} out of range")
    x = state.vectors[i - 1]
    y = state.vectors[i]
    g = state.gram.rows[i - 1][i]
    moved = tuple(xi - g * yi for xi, yi in zip(x, y))
    vecs = list(state.vectors)
    vecs[i - 1], vecs[i] = y, moved
    return _rebuild(state.lattice, vecs)


def duality_transform(seif: IntMatrix, r_sub: int | None = None) -> IntMatrix:
    """Anti-transpose of the inverse of the leading principal block.

    This is the Seifert matrix of the dual system of vanishing paths; for
    rainbow inputs the anti-transpose is invisible and the result is simply
    the inverse block.
    """
    n = seif.nrows
    r_sub = n if r_sub is None else r_sub
    if not 1 <= r_sub <= n:
        raise MatrixError(f"block size {r_sub} out of range")
    block = IntMatrix(tuple(tuple(seif.rows[i][:r_sub]) for i in range(r_sub)))
    return mat_inverse_unimodular(block).anti_transpose()


def petal_self_and_adjacent_pairings(parity: int) -> tuple[int, int]:
    """(b . b, a . b) for thimbles over a shared matching path: (1, 1 + (-1)^n)."""
    return 1, 1 + (-1) ** (parity % 2)


def petal_pairing(
    s_below: RainbowMatrix, parity: int, mu_petal: int, k: int
) -> RainbowMatrix:
    """Rainbow Seifert matrix of k adjacent petal cycles, one level up.

    Colors below mu_petal are the colors of s_below^{-1} (crossing petals
    pair like the dual thimble system), the mu_petal-th color is the adjacent
    petal intersection (-1)^n, and all higher colors vanish because petals
    further apart are disjoint.  mu_petal must equal the size of s_below:
    both are the Milnor number one level down.
    """
    if k < 1:
        raise LatticeError("petal system size must be positive")
    if mu_petal != s_below.size:
        raise LatticeError(
            f"petal length {mu_petal} inconsistent with lower matrix size {s_below.size}"
        )
    inv_colors = rainbow_invert(s_below).colors
    colors = [0] * (k - 1)
    for j in range(1, k):
        if j < mu_petal:
            colors[j - 1] = inv_colors[j - 1]
        elif j == mu_petal:
            colors[j - 1] = (-1) ** (parity % 2)
    return RainbowMatrix(k, tuple(colors))


def seifert_via_petals(a: ChainTuple) -> RainbowMatrix:
    """Third route to S(a): recursive petal pairings down the tuple.

    Requires all entries >= 2, like the color-level induction.
    """
    if len(a) == 0:
        return RainbowMatrix.identity(1)
    if any(e < 2 for e in a.entries):
        raise LatticeError(f"petal route requires all entries >= 2, got ({a})")
    below = seifert_via_petals(a.tail)
    return petal_pairing(
        below,
        parity=len(a),
        mu_petal=milnor_number(a.tail),
        k=milnor_number(a),
    )


@dataclass(frozen=True)
class PetalWindowReport:
    """Cyclic-constancy check of the length-d petal cycle."""

    ok: bool
    period_ok: bool
    windows_ok: bool
    shift_ok: bool


def petal_cycle_vectors(a: ChainTuple) -> list[tuple[int, ...]]:
    """The d(a)-periodic family of petal classes in the rank-mu lattice.

    v_1..v_mu are the standard basis; later classes follow from the linear
    relation v_i + alpha'_1 v_{i+1} + ... + alpha'_mu v_{i+mu} = 0, whose top
    coefficient is the unit (-1)^{n-1}.  Returns v_1..v_{d+mu}.
    """
    mu = milnor_number(a)
    d = degree_d(a)
    ap = alpha_prime_poly(a)
    top = ap[mu]
    vecs: list[tuple[int, ...]] = [
        tuple(1 if j == i else 0 for j in range(mu)) for i in range(mu)
    ]
    for i in range(mu, d + mu):
        acc = [0] * mu
        # v_i = -(v_{i-mu} + sum_j alpha'_j v_{i-mu+j}) / alpha'_mu
        for j in range(mu):
            coeff = ap[j]  # alpha'_0 = 1
            prev = vecs[i - mu + j]
            for t in range(mu):
                acc[t] += coeff * prev[t]
        vecs.append(tuple(-x * top for x in acc))  # top is +-1, so 1/top == top
    return vecs


def petal_window_report(a: ChainTuple) -> PetalWindowReport:
    """Check d-periodicity, constancy of all mu-windows, and the shift matrix."""
    mu = milnor_number(a)
    d = degree_d(a)
    vecs = petal_cycle_vectors(a)
    period_ok = all(vecs[d + i] == vecs[i] for i in range(mu))

    seif = seifert_series(a).dense()
    s_np = np.array(seif.rows, dtype=object)
    v_np = np.array(vecs, dtype=object)
    pair_all = v_np @ s_np @ v_np.T
    target = np.array(seif.rows, dtype=object)
    windows_ok = all(
        np.array_equal(pair_all[k : k + mu, k : k + mu], target) for k in range(d)
    )

    # matrix of the backward shift v_i -> v_{i-1} on the first window;
    # v_0 = -(alpha'_1 v_1 + ... + alpha'_mu v_mu) from the relation at i = 0
    ap = alpha_prime_poly(a)
    back = [
        -sum(ap[j] * vecs[j - 1][t] for j in range(1, mu + 1)) for t in range(mu)
    ]
    shift_cols = [tuple(back)] + [vecs[j - 1] for j in range(1, mu)]
    shift = IntMatrix(tuple(tuple(shift_cols[j][i] for j in range(mu)) for i in range(mu)))
    shift_ok = shift == companion_matrix(a)

    return PetalWindowReport(
        ok=period_ok and windows_ok and shift_ok,
        period_ok=period_ok,
        windows_ok=windows_ok,
        shift_ok=shift_ok,
    )
