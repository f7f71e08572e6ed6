"""Closed-form coefficients without materializing the full exponent table.

The exponent function of an exponential sum factors through the group
homomorphism b -> prod_i (1 + alpha_i T)^(b_i) from (Z_D)^(q-1) into the
unit group of F_q[T]/(T^(k+1)).  Its transform is therefore supported on the
characters of the image subgroup H: enumerating H once (it has at most
q^k elements, typically far fewer than D^(q-1)), coordinatizing the quotient
(Z_D)^(q-1)/ker by an integer diagonalization of the relation lattice, and
transforming over H's cyclic coordinates yields exactly the nonzero
coefficients, each attached to the frequency multiset read off the
character's values on the generators.

Every run self-certifies: the sampled relation lattice is accepted only when
the quotient order matches |H|, and the coordinate map is checked to place
the |H| elements bijectively on the grid.
"""

from __future__ import annotations

import math
import random

import numpy as np

_STRUCT_CACHE = {}
_STRUCT_CACHE_MAX = 4


def _aggregate_rows(keys, vecs):
    """Sum rows of ``vecs`` grouped by identical rows of ``keys``."""
    order = np.lexsort(keys.T[::-1])
    ks = keys[order]
    vs = vecs[order]
    boundaries = np.ones(len(ks), dtype=bool)
    if len(ks) > 1:
        boundaries[1:] = np.any(ks[1:] != ks[:-1], axis=1)
    starts = np.flatnonzero(boundaries)
    sums = np.add.reduceat(vs, starts, axis=0)
    return {tuple(int(v) for v in row): vec for row, vec in zip(ks[starts], sums)}


def _poly_mul_step(field, poly, alpha, kmax):
    """Multiply a truncated index-coefficient polynomial by (1 + alpha*T)."""
    out = list(poly)
    for d in range(kmax, 0, -1):
        out[d] = field.add_index(out[d], field.mul_index(alpha, out[d - 1]))
    return out


def _psi(field, b, kmax):
    """prod_i (1 + alpha_i T)^(b_i) truncated at degree kmax (index coeffs)."""
    poly = [1] + [0] * kmax
    for i, e in enumerate(b, start=1):
        for _ in range(int(e)):
            poly = _poly_mul_step(field, poly, i, kmax)
    return poly


def _encode_keys(polys, q):
    keys = np.zeros(polys.shape[0], dtype=np.int64)
    mult = 1
    for d in range(1, polys.shape[1]):  # constant coefficient is always 1
        keys += polys[:, d].astype(np.int64) * mult
        mult *= q
    return keys


def _diagonalize_with_column_ops(rows, n):
    """Integer diagonalization U*A*V = diag(d_1..d_n) of the lattice spanned
    by ``rows``; row operations are untracked, column operations accumulate
    in the unimodular V.  Requires the lattice to have full column rank."""
    A = [[int(v) for v in r] for r in rows]
    m = len(A)
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for t in range(n):
        while True:
            piv = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (piv is None or abs(v) < abs(piv[2])):
                        piv = (i, j, v)
            if piv is None:
                raise ArithmeticError("relation lattice is not full rank")
            i0, j0, _ = piv
            A[t], A[i0] = A[i0], A[t]
            if j0 != t:
                for r in A:
                    r[t], r[j0] = r[j0], r[t]
                for r in V:
                    r[t], r[j0] = r[j0], r[t]
            if A[t][t] < 0:
                A[t] = [-v for v in A[t]]
            a = A[t][t]
            clean = True
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    f = v // a
                    if f:
                        A[i] = [x - f * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                v = A[t][j]
                if v:
                    f = v // a
                    if f:
                        for r in A:
                            r[j] -= f * r[t]
                        for r in V:
                            r[j] -= f * r[t]
                    if A[t][j]:
                        clean = False
            if clean:
                break
    return [A[t][t] for t in range(n)], V


class _GroupStructure:
    __slots__ = ("field", "kmax", "D", "polys", "dims", "flat_index", "char_matrix", "order")

    def __init__(self, field, kmax, D, polys, dims, flat_index, char_matrix):
        self.field = field
        self.kmax = kmax
        self.D = D
        self.polys = polys
        self.dims = dims
        self.flat_index = flat_index
        self.char_matrix = char_matrix
        self.order = polys.shape[0]


def _build_structure(field, kmax, D):
    add_t, mul_t, _, _ = field.tables()
    q = field.q
    rho = q - 1

    # enumerate the image subgroup level by level, compressing duplicates
    polys = np.zeros((1, kmax + 1), dtype=np.int32)
    polys[0, 0] = 1
    preim = np.zeros((1, rho), dtype=np.int16)
    for i in range(1, rho + 1):
        blocks = [polys]
        cur = polys
        for _ in range(1, D):
            nxt = cur.copy()
            nxt[:, 1:] = add_t[cur[:, 1:], mul_t[i, cur[:, :-1]]]
            blocks.append(nxt)
            cur = nxt
        stacked = np.concatenate(blocks, axis=0)
        pre = np.tile(preim, (D, 1))
        digits = np.repeat(np.arange(D, dtype=np.int16), preim.shape[0])
        pre[:, i - 1] = digits
        keys = _encode_keys(stacked, q)
        _, first = np.unique(keys, return_index=True)
        polys = stacked[first]
        preim = pre[first]
    keys = _encode_keys(polys, q)
    order = np.argsort(keys)
    polys, preim, keys = polys[order], preim[order], keys[order]
    n_h = polys.shape[0]

    # sample relations of the period lattice until the quotient order matches
    rng = random.Random(0x5EED ^ hash((field.p, field.modulus, kmax, D)))
    rows = [[D if i == j else 0 for j in range(rho)] for i in range(rho)]
    diag = vmat = None
    for _ in range(12):
        for _ in range(6 * rho):
            b = [rng.randrange(D) for _ in range(rho)]
            key = _encode_keys(np.array([_psi(field, b, kmax)], dtype=np.int32), q)[0]
            idx = int(np.searchsorted(keys, key))
            rows.append([bi - int(hi) for bi, hi in zip(b, preim[idx])])
        diag, vmat = _diagonalize_with_column_ops(rows, rho)
        if math.prod(diag) == n_h:
            break
    else:
        raise ArithmeticError("failed to saturate the relation lattice")
    diag_np = np.array(diag, dtype=np.int64)
    v_np = np.array(vmat, dtype=np.int64)
    for r in rows:
        if np.any((np.array(r, dtype=np.int64) @ v_np) % diag_np):
            raise ArithmeticError("quotient coordinates reject a known relation")

    coords = (preim.astype(np.int64) @ v_np) % diag_np
    flat = np.ravel_multi_index(tuple(coords.T), tuple(diag))
    if not np.array_equal(np.sort(flat), np.arange(n_h)):
        raise ArithmeticError("quotient coordinates are not a bijection on the image group")

    # character exponents: chi_y(u_i) = zeta_D ^ (sum_t y_t * phi(e_i)_t * D/d_t)
    char = np.zeros((rho, rho), dtype=np.int64)
    for t in range(rho):
        for i in range(rho):
            char[t, i] = (v_np[i, t] % diag[t]) * (D // diag[t]) % D
    return _GroupStructure(field, kmax, D, polys, tuple(diag), flat, char)


def _get_structure(field, kmax, D):
    key = (field.p, field.modulus, kmax, D)
    if key not in _STRUCT_CACHE:
        if len(_STRUCT_CACHE) >= _STRUCT_CACHE_MAX:
            _STRUCT_CACHE.pop(next(iter(_STRUCT_CACHE)))
        _STRUCT_CACHE[key] = _build_structure(field, kmax, D)
    return _STRUCT_CACHE[key]


def _axis_transform_grid(grid, dims, L, D):
    """Per-axis transform with kernel zeta_(d_t)^(-x*y) on group-ring vectors."""
    out = grid.astype(np.float64)
    eye = np.eye(L)
    for axis, d in enumerate(dims):
        if d == 1:
            continue
        W = np.zeros((d * L, d * L), dtype=np.float64)
        for x in range(d):
            for y in range(d):
                shift = (-x * y * (L // d)) % L
                W[x * L : (x + 1) * L, y * L : (y + 1) * L] = np.roll(eye, shift, axis=1)
        moved = np.moveaxis(out, axis, -2)
        shape = moved.shape
        out = np.moveaxis((moved.reshape(-1, d * L) @ W).reshape(shape), -2, axis)
    result = np.rint(out).astype(np.int64)
    if not np.array_equal(result.astype(np.float64), out):
        raise ArithmeticError("transform left the exact-integer range")
    return result


def group_closed_coefficients(field, spec, D):
    """Nonzero closed-form coefficients of the exponential sum, grouped by
    descending frequency multiset.

    Returns (multiset -> length-L integer vector, |H|); the caller scales by
    D^(q-1)/|H| to express every coefficient over the uniform denominator.
    """
    struct = _get_structure(field, spec.k_max, D)
    add_t, mul_t, _, trace_t = field.tables()
    polys = struct.polys
    acc = np.zeros(polys.shape[0], dtype=np.int32)
    for k, b in spec.terms:
        acc = add_t[acc, mul_t[b, polys[:, k]]]
    exps = trace_t[acc].astype(np.int64)

    p = field.p
    L = math.lcm(D, p)
    n_h = struct.order
    placed = np.zeros((int(np.prod(struct.dims)), L), dtype=np.int64)
    placed[struct.flat_index, (exps * (L // p)) % L] = 1
    grid = placed.reshape(struct.dims + (L,))
    transformed = _axis_transform_grid(grid, struct.dims, L, D).reshape(-1, L)

    ndims = len(struct.dims)
    ys = np.indices(struct.dims).reshape(ndims, -1).T.astype(np.int64)
    t_mat = (ys @ struct.char_matrix) % D
    freq = (-t_mat) % D
    keys = np.sort(freq, axis=1)[:, ::-1]
    return _aggregate_rows(np.ascontiguousarray(keys), transformed), n_h
