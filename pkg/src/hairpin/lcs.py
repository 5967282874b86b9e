"""Longest common subsequence with a witness matching."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class LcsWitness:
    length: int
    pairs: tuple[tuple[int, int], ...]  # 1-based (i_k, j_k)

    def validate(self, S: Sequence, T: Sequence) -> None:
        if len(self.pairs) != self.length:
            raise ValueError("pair count differs from length")
        prev_i = prev_j = 0
        for i, j in self.pairs:
            if not (prev_i < i <= len(S) and prev_j < j <= len(T)):
                raise ValueError(f"pair ({i},{j}) breaks strict monotonicity or bounds")
            if S[i - 1] != T[j - 1]:
                raise ValueError(f"S[{i}] != T[{j}]")
            prev_i, prev_j = i, j


def lcs(S: Sequence, T: Sequence) -> LcsWitness:
    """Quadratic DP; backtracking prefers advancing in S when lengths tie."""
    n, m = len(S), len(T)
    # table[a][b] = LCS of S[a:] and T[b:]
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for a in range(n - 1, -1, -1):
        row, below = table[a], table[a + 1]
        sa = S[a]
        for b in range(m - 1, -1, -1):
            if sa == T[b]:
                row[b] = below[b + 1] + 1
            else:
                row[b] = max(below[b], row[b + 1])
    pairs = []
    a = b = 0
    while a < n and b < m:
        if S[a] == T[b] and table[a][b] == table[a + 1][b + 1] + 1:
            pairs.append((a + 1, b + 1))
            a += 1
            b += 1
        elif table[a + 1][b] >= table[a][b + 1]:
            a += 1
        else:
            b += 1
    return LcsWitness(table[0][0], tuple(pairs))
