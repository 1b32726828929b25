"""Numpy implementation of the attack-mining kernel (used when the extension is not built)."""
from __future__ import annotations

import numpy as np

INC, GT, LT, EQ = 0, 1, 2, 3


def derived_relations(cmp: np.ndarray, outcome: np.ndarray):
    n, m, _ = cmp.shape
    not_eq = cmp != EQ
    any_diff = not_eq.any(axis=0)
    first = np.argmax(not_eq, axis=0)
    first_cmp = np.take_along_axis(cmp, first[None], axis=0)[0]
    differ = outcome[:, None] != outcome[None, :]
    pot = np.where(any_diff & (first_cmp == GT) & differ, first + 1, 0).astype(np.int32)

    geq = ((cmp == GT) | (cmp == EQ)).all(axis=0).astype(np.uint8)

    strict = cmp == GT
    ks = np.arange(1, n + 1, dtype=np.int32)[:, None, None]
    ms = np.where(strict, ks, 0).max(axis=0).astype(np.int32)
    return pot, geq, ms


def mine_attacks(cmp: np.ndarray, outcome: np.ndarray):
    pot, geq, ms = derived_relations(cmp, outcome)
    m = pot.shape[0]
    src, dst, order = [], [], []
    same = outcome[:, None] == outcome[None, :]
    for a in range(m):
        targets = np.nonzero(pot[a])[0]
        if targets.size == 0:
            continue
        cand = np.nonzero(same[a] & geq[a].astype(bool))[0]
        i = pot[a, targets]  # (t,)
        pg = pot[np.ix_(cand, targets)]  # (g, t)
        msg = ms[a, cand][:, None]  # (g, 1)
        blocked = (((pg == i) & (msg >= i)) | (pg > i)).any(axis=0)
        keep = ~blocked
        src.extend([a] * int(keep.sum()))
        dst.extend(targets[keep].tolist())
        order.extend(i[keep].tolist())
    return (
        np.asarray(src, dtype=np.int32),
        np.asarray(dst, dtype=np.int32),
        np.asarray(order, dtype=np.int32),
    )
