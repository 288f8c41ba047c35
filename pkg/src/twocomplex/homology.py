"""Linear algebra over F_p for cycle spaces and face boundaries."""
from __future__ import annotations

from .core import Complex2


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank of an integer matrix over F_p by Gaussian elimination."""
    _check_prime(p)
    m = [[x % p for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                k = m[i][c]
                m[i] = [(a - k * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def boundary_rows(C: Complex2) -> list[list[int]]:
    """One row per face: signed edge incidence of its boundary."""
    idx = {e.id: i for i, e in enumerate(C.edges)}
    rows = []
    for f in C.faces:
        r = [0] * len(C.edges)
        for t in f.trail:
            r[idx[t.edge]] += 1 if t.forward else -1
        rows.append(r)
    return rows


def cycle_space_dim(C: Complex2) -> int:
    g = C.one_skeleton()
    return len(C.edges) - len(C.vertices) + len(g.components())


def homology_trivial(C: Complex2, p: int = 2) -> bool:
    """H1(C; F_p) = 0, i.e. face boundaries span the cycle space."""
    _check_prime(p)
    return rank_mod_p(boundary_rows(C), p) == cycle_space_dim(C)


def solve_face_sum_f2(C: Complex2, edge_set) -> list[str] | None:
    """Faces whose boundaries sum to the given edge set over F_2, or None."""
    idx = {e.id: i for i, e in enumerate(C.edges)}
    n = len(C.edges)
    target = 0
    for e in edge_set:
        target ^= 1 << idx[e]
    basis = {}  # pivot bit -> (vector, face combination bitmask)
    fids = [f.id for f in C.faces]
    for j, f in enumerate(C.faces):
        vec = 0
        for t in f.trail:
            vec ^= 1 << idx[t.edge]
        comb = 1 << j
        while vec:
            top = vec.bit_length() - 1
            if top in basis:
                bv, bc = basis[top]
                vec ^= bv
                comb ^= bc
            else:
                basis[top] = (vec, comb)
                break
    comb = 0
    vec = target
    while vec:
        top = vec.bit_length() - 1
        if top not in basis:
            return None
        bv, bc = basis[top]
        vec ^= bv
        comb ^= bc
    return [fids[j] for j in range(len(fids)) if comb >> j & 1]
