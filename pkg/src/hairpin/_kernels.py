"""Compiled breadth-first search over the substring-state graph.

All indices here are 0-based.  A state ``(i, j)`` has out-edges
``(i+l, j)`` and ``(i, j-l)`` for every valid length ``l``: ``1..m``
under the modified semantics and ``1..m-1`` under the original one, where
``m`` is the arm of ``h[i..j]`` capped at half its length.  The
``1..m-1`` rule is the closed form of the re-completion test in
:mod:`hairpin.hairpin_ops`; the test suite checks the two agree.

Searches are resumable: every call expands at most ``chunk`` states and
records its progress in ``st`` so the caller can enforce budgets between
calls.
"""

import numpy as np
from numba import njit, types
from numba.typed import Dict, List

FOUND = 0
EXHAUSTED = 1
PAUSED = 2

# slots of the progress vector ``st``
HEAD, TAIL, EXPANDED, PEAK, LEVEL, FOUND_I, FOUND_J = range(7)
ST_SIZE = 7


@njit(cache=True)
def arm(h, inv, i, j):
    m = 0
    half = (j - i + 1) // 2
    while m < half and h[i + m] == inv[h[j - m]]:
        m += 1
    return m


@njit(cache=True)
def edge_ok(h, inv, original, i, j, length):
    """Whether ``h[i..j]`` admits a deletion of ``length`` (either side)."""
    need = length + 1 if original else length
    if need > (j - i + 1) // 2:
        return False
    for k in range(need):
        if h[i + k] != inv[h[j - k]]:
            return False
    return True


@njit(cache=True)
def _is_target(i, j, tgt_len, is_start):
    return j - i + 1 == tgt_len and is_start[i] != 0


@njit(cache=True)
def dense_search(h, inv, original, ilo, ihi, jlo, jhi, tgt_len, is_start,
                 dist, queue, st, arm_hist, chunk):
    width = jhi - jlo + 1
    head = st[HEAD]
    tail = st[TAIL]
    done = 0
    while head < tail:
        if done >= chunk:
            st[HEAD] = head
            st[TAIL] = tail
            return PAUSED
        code = queue[head]
        head += 1
        d = dist[code]
        if d > st[LEVEL]:
            st[LEVEL] = d
            if tail - head + 1 > st[PEAK]:
                st[PEAK] = tail - head + 1
        i = code // width + ilo
        j = code % width + jlo
        st[EXPANDED] += 1
        done += 1
        m = arm(h, inv, i, j)
        arm_hist[m] += 1
        top = m - 1 if original else m
        for l in range(1, top + 1):
            ni = i + l
            if ni <= ihi:
                c2 = (ni - ilo) * width + (j - jlo)
                if dist[c2] < 0:
                    dist[c2] = d + 1
                    queue[tail] = c2
                    tail += 1
                    if _is_target(ni, j, tgt_len, is_start):
                        st[HEAD] = head
                        st[TAIL] = tail
                        st[FOUND_I] = ni
                        st[FOUND_J] = j
                        return FOUND
            nj = j - l
            if nj >= jlo:
                c2 = (i - ilo) * width + (nj - jlo)
                if dist[c2] < 0:
                    dist[c2] = d + 1
                    queue[tail] = c2
                    tail += 1
                    if _is_target(i, nj, tgt_len, is_start):
                        st[HEAD] = head
                        st[TAIL] = tail
                        st[FOUND_I] = i
                        st[FOUND_J] = nj
                        return FOUND
    st[HEAD] = head
    st[TAIL] = tail
    return EXHAUSTED


@njit(cache=True)
def dense_backtrack(h, inv, original, ilo, jlo, jhi, dist, ti, tj):
    """Walk from a settled target back to the source along ``dist``.

    Returns parallel arrays (side, length) in forward order; side 0 is left.
    """
    width = jhi - jlo + 1
    d = dist[(ti - ilo) * width + (tj - jlo)]
    sides = np.empty(d, np.int8)
    lengths = np.empty(d, np.int64)
    i = ti
    j = tj
    while d > 0:
        moved = False
        for l in range(1, i - ilo + 1):
            pi = i - l
            if dist[(pi - ilo) * width + (j - jlo)] == d - 1 and edge_ok(h, inv, original, pi, j, l):
                d -= 1
                sides[d] = 0
                lengths[d] = l
                i = pi
                moved = True
                break
        if moved:
            continue
        for l in range(1, jhi - j + 1):
            pj = j + l
            if dist[(i - ilo) * width + (pj - jlo)] == d - 1 and edge_ok(h, inv, original, i, pj, l):
                d -= 1
                sides[d] = 1
                lengths[d] = l
                j = pj
                moved = True
                break
        if not moved:
            raise RuntimeError("inconsistent distance table")
    return sides, lengths


def new_sparse_tables():
    dist = Dict.empty(key_type=types.int64, value_type=types.int64)
    queue = List.empty_list(types.int64)
    return dist, queue


@njit(cache=True)
def sparse_search(h, inv, original, stride, tgt_len, is_start, dist, queue, st, arm_hist, chunk):
    head = st[HEAD]
    done = 0
    while head < len(queue):
        if done >= chunk:
            st[HEAD] = head
            st[TAIL] = len(queue)
            return PAUSED
        code = queue[head]
        head += 1
        d = dist[code]
        if d > st[LEVEL]:
            st[LEVEL] = d
            if len(queue) - head + 1 > st[PEAK]:
                st[PEAK] = len(queue) - head + 1
        i = code // stride
        j = code % stride
        st[EXPANDED] += 1
        done += 1
        m = arm(h, inv, i, j)
        arm_hist[m] += 1
        top = m - 1 if original else m
        for l in range(1, top + 1):
            for side in range(2):
                ni = i + l if side == 0 else i
                nj = j if side == 0 else j - l
                c2 = ni * stride + nj
                if c2 not in dist:
                    dist[c2] = d + 1
                    queue.append(c2)
                    if _is_target(ni, nj, tgt_len, is_start):
                        st[HEAD] = head
                        st[TAIL] = len(queue)
                        st[FOUND_I] = ni
                        st[FOUND_J] = nj
                        return FOUND
    st[HEAD] = head
    st[TAIL] = len(queue)
    return EXHAUSTED


@njit(cache=True)
def sparse_backtrack(h, inv, original, stride, si, sj, dist, ti, tj):
    d = dist[ti * stride + tj]
    sides = np.empty(d, np.int8)
    lengths = np.empty(d, np.int64)
    i = ti
    j = tj
    while d > 0:
        moved = False
        for l in range(1, i - si + 1):
            c = (i - l) * stride + j
            if c in dist and dist[c] == d - 1 and edge_ok(h, inv, original, i - l, j, l):
                d -= 1
                sides[d] = 0
                lengths[d] = l
                i -= l
                moved = True
                break
        if moved:
            continue
        for l in range(1, sj - j + 1):
            c = i * stride + j + l
            if c in dist and dist[c] == d - 1 and edge_ok(h, inv, original, i, j + l, l):
                d -= 1
                sides[d] = 1
                lengths[d] = l
                j += l
                moved = True
                break
        if not moved:
            raise RuntimeError("inconsistent distance table")
    return sides, lengths
