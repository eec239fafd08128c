"""Compiled simulation engine for full benchmark runs.

Every distinct objective vector of an instance corresponds to exactly one
per-block one-count profile, and the profile universe is tiny at desk scale
((n'+1)^(m/2) entries), so dominance between profiles, front membership and
milestone membership are all precomputed tables. A generation then costs a
Deb peel over the distinct profiles present plus an exact contribution
computation on the last front only.

The engine consumes the exact randomness schedule documented in
``algorithms`` (parent draw, n mutation draws, optional subset draws, one
tie-break draw iff |D| > 1) from the same ``numpy.random.Generator``
stream, and uses the same survivor slot layout, so engine runs and the
pure-Python reference steps produce identical traces from identical seeds;
``tests/test_engine.py`` pins that equivalence. The reference point is the
paper's all-minus-one vector.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np
from numba import njit

from .benchmarks import (
    MOJZJ,
    ProblemSpec,
    analytic_pareto_front,
    jump_value,
)
from .core import BitString, Individual, Population

_STRATEGY_CODE = {"classic": 0, "stochastic-update": 1, "aging": 2}


class _Tables(NamedTuple):
    universe: int
    blocks: int
    nprime: int
    pows: np.ndarray
    objs: np.ndarray
    front_mask: np.ndarray
    k_mask: np.ndarray
    c_mask: np.ndarray
    dom: np.ndarray
    f1_order: np.ndarray
    front_total: int
    k_total: int
    c_total: int


@lru_cache(maxsize=None)
def _tables(spec: ProblemSpec) -> _Tables:
    npr, k, blocks = spec.block_length, spec.k, spec.block_count
    base = npr + 1
    universe = base**blocks
    pows = np.array([base**b for b in range(blocks)], dtype=np.int64)
    counts = np.empty((universe, blocks), dtype=np.int64)
    for b in range(blocks):
        counts[:, b] = (np.arange(universe) // pows[b]) % base
    jump = np.array([jump_value(c, npr, k) for c in range(base)], dtype=np.int64)
    objs = np.empty((universe, spec.m), dtype=np.int64)
    for b in range(blocks):
        objs[:, 2 * b] = jump[counts[:, b]]
        objs[:, 2 * b + 1] = jump[npr - counts[:, b]]

    inner = (counts >= k) & (counts <= npr - k)
    extreme = (counts == 0) | (counts == npr)
    front_mask = np.all(inner | extreme, axis=1).astype(np.uint8)
    if spec.kind == MOJZJ:
        k_mask = np.all(
            np.isin(counts, sorted({k, npr - k})), axis=1
        ).astype(np.uint8)
        c_mask = np.all(
            np.isin(counts, sorted({0, k, npr - k, npr})), axis=1
        ).astype(np.uint8)
    else:
        k_mask = np.zeros(universe, dtype=np.uint8)
        c_mask = np.zeros(universe, dtype=np.uint8)

    ge = (objs[:, None, :] >= objs[None, :, :]).all(axis=2)
    gt = (objs[:, None, :] > objs[None, :, :]).any(axis=2)
    dom = (ge & gt).astype(np.uint8)
    f1_order = np.argsort(objs[:, 0], kind="stable").astype(np.int64)

    target = analytic_pareto_front(spec)
    front_vectors = {tuple(v) for v in objs[front_mask == 1]}
    assert front_vectors == set(target.points)

    return _Tables(
        universe=universe,
        blocks=blocks,
        nprime=npr,
        pows=pows,
        objs=objs,
        front_mask=front_mask,
        k_mask=k_mask,
        c_mask=c_mask,
        dom=dom,
        f1_order=f1_order,
        front_total=int(front_mask.sum()),
        k_total=int(k_mask.sum()),
        c_total=int(c_mask.sum()),
    )


@njit(cache=True, nogil=True)
def _hv_exclusive(pts):
    """Exact hypervolume of int points w.r.t. the all-minus-one reference."""
    count, m = pts.shape
    if count == 0:
        return 0
    if m == 2:
        order = np.argsort(pts[:, 0])
        total = 0
        best2 = -1
        for t in range(count - 1, -1, -1):
            i = order[t]
            f2 = pts[i, 1]
            if f2 > best2:
                total += (pts[i, 0] + 1) * (f2 - best2)
                best2 = f2
        return total
    total = 0
    for i in range(count):
        box = 1
        for j in range(m):
            box *= pts[i, j] + 1
        rest = count - i - 1
        if rest == 0:
            total += box
            continue
        clip = np.empty((rest, m), dtype=np.int64)
        for t in range(rest):
            for j in range(m):
                v = pts[i + 1 + t, j]
                if v > pts[i, j]:
                    v = pts[i, j]
                clip[t, j] = v
        keep = np.ones(rest, dtype=np.uint8)
        for a in range(rest):
            if keep[a] == 0:
                continue
            for b in range(rest):
                if a == b or keep[b] == 0:
                    continue
                weak = True
                strict = False
                for j in range(m):
                    if clip[a, j] < clip[b, j]:
                        weak = False
                        break
                    if clip[a, j] > clip[b, j]:
                        strict = True
                if weak and (strict or a < b):
                    keep[b] = 0
        kept = 0
        for a in range(rest):
            kept += keep[a]
        filtered = np.empty((kept, m), dtype=np.int64)
        w = 0
        for a in range(rest):
            if keep[a] == 1:
                for j in range(m):
                    filtered[w, j] = clip[a, j]
                w += 1
        total += box - _hv_exclusive(filtered)
    return total


@njit(cache=True, nogil=True)
def _init_pop(rng, geno, bc, pid, mu, nprime, pows):
    n = geno.shape[1]
    blocks = bc.shape[1]
    for i in range(mu):
        for j in range(n):
            geno[i, j] = 1 if rng.random() < 0.5 else 0
        for b in range(blocks):
            s = 0
            for j in range(b * nprime, (b + 1) * nprime):
                s += geno[i, j]
            bc[i, b] = s
        p = 0
        for b in range(blocks):
            p += bc[i, b] * pows[b]
        pid[i] = p


@njit(cache=True, nogil=True)
def _step(
    rng,
    geno,
    bc,
    pid,
    ages,
    cnt,
    counters,
    mu,
    tau,
    strat,
    inv_n,
    nprime,
    pows,
    objs,
    dom,
    front_mask,
    k_mask,
    c_mask,
    f1_order,
    elig,
    loc,
    present,
    rcnt,
    ndom,
    frontid,
    contrib,
    sorted_lf,
    lf,
    dmembers,
    clipbuf,
    clipfil,
    maskbuf,
    ckeys,
    cvalid,
    clevel,
    fkeys,
    fvalid,
    fdone,
    fdelta,
):
    n = geno.shape[1]
    blocks = bc.shape[1]
    m = objs.shape[1]
    universe = dom.shape[0]
    total = mu + 1
    words = maskbuf.shape[0]

    # offspring into slot mu: one parent draw, then n mutation draws
    parent = int(rng.random() * mu)
    for j in range(n):
        geno[mu, j] = geno[parent, j]
    for b in range(blocks):
        bc[mu, b] = bc[parent, b]
    for j in range(n):
        if rng.random() < inv_n:
            b = j // nprime
            if geno[mu, j] == 1:
                geno[mu, j] = 0
                bc[mu, b] -= 1
            else:
                geno[mu, j] = 1
                bc[mu, b] += 1
    p = 0
    for b in range(blocks):
        p += bc[mu, b] * pows[b]
    pid[mu] = p
    ages[mu] = 0

    # survival-selection candidates
    if strat == 0:
        for i in range(total):
            elig[i] = 1
    elif strat == 1:
        s = total // 2
        for i in range(total):
            dmembers[i] = i
        for i in range(s):
            j = i + int(rng.random() * (total - i))
            tmp = dmembers[i]
            dmembers[i] = dmembers[j]
            dmembers[j] = tmp
        for i in range(total):
            elig[i] = 0
        for i in range(s):
            elig[dmembers[i]] = 1
    else:
        for i in range(total):
            elig[i] = 1 if ages[i] >= tau else 0

    # distinct candidate profiles, ascending member slot
    for q in range(universe):
        loc[q] = -1
    for w in range(words):
        maskbuf[w] = np.uint64(0)
    d = 0
    for i in range(total):
        if elig[i] == 1:
            q = pid[i]
            if loc[q] < 0:
                loc[q] = d
                present[d] = q
                rcnt[d] = 1
                d += 1
                maskbuf[q >> 6] |= np.uint64(1) << np.uint64(q & 63)
            else:
                rcnt[loc[q]] += 1

    # the front partition and the geometric contribution of each profile are
    # pure functions of the candidate profile set; memoize them per set
    h = np.uint64(1469598103934665603)
    for w in range(words):
        h = (h ^ maskbuf[w]) * np.uint64(1099511628211)
    bucket = int(h & np.uint64(ckeys.shape[0] - 1))
    hit = cvalid[bucket] == 1
    if hit:
        for w in range(words):
            if ckeys[bucket, w] != maskbuf[w]:
                hit = False
                break

    if hit:
        istar = 1
        for a in range(d):
            level = clevel[bucket, present[a]]
            frontid[a] = level
            if level > istar:
                istar = level
    else:
        # Deb peel over distinct profiles via the precomputed dominance table
        for a in range(d):
            c = 0
            qa = present[a]
            for b2 in range(d):
                if dom[present[b2], qa] == 1:
                    c += 1
            ndom[a] = c
            frontid[a] = 0
        assigned = 0
        level = 0
        while assigned < d:
            level += 1
            for a in range(d):
                if frontid[a] == 0 and ndom[a] == 0:
                    frontid[a] = level
                    assigned += 1
            for a in range(d):
                if frontid[a] == level:
                    qa = present[a]
                    for b2 in range(d):
                        if frontid[b2] == 0 and dom[qa, present[b2]] == 1:
                            ndom[b2] -= 1
        istar = level

    # contributions on the last front; duplicated vectors contribute zero
    if not hit:
        for w in range(words):
            ckeys[bucket, w] = maskbuf[w]
        for a in range(d):
            clevel[bucket, present[a]] = frontid[a]
        cvalid[bucket] = 1

    lcount = 0
    for a in range(d):
        if frontid[a] == istar:
            lf[lcount] = a
            lcount += 1

    if lcount == 1:
        contrib[lf[0]] = 0
    elif m == 2:
        sc = 0
        for t in range(universe):
            q = f1_order[t]
            li = loc[q]
            if li >= 0 and frontid[li] == istar:
                sorted_lf[sc] = li
                sc += 1
        for t in range(sc):
            li = sorted_lf[t]
            if rcnt[li] >= 2:
                contrib[li] = 0
            else:
                q = present[li]
                left = -1 if t == 0 else objs[present[sorted_lf[t - 1]], 0]
                right = -1 if t == sc - 1 else objs[present[sorted_lf[t + 1]], 1]
                contrib[li] = (objs[q, 0] - left) * (objs[q, 1] - right)
    else:
        # per-profile geometric deltas, memoized by last-front set and
        # filled lazily so a miss costs no more than computing the
        # currently unduplicated profiles
        for w in range(words):
            maskbuf[w] = np.uint64(0)
        for t in range(lcount):
            q = present[lf[t]]
            maskbuf[q >> 6] |= np.uint64(1) << np.uint64(q & 63)
        h = np.uint64(1469598103934665603)
        for w in range(words):
            h = (h ^ maskbuf[w]) * np.uint64(1099511628211)
        fb = int(h & np.uint64(fkeys.shape[0] - 1))
        match = fvalid[fb] == 1
        if match:
            for w in range(words):
                if fkeys[fb, w] != maskbuf[w]:
                    match = False
                    break
        if not match:
            for w in range(words):
                fkeys[fb, w] = maskbuf[w]
                fdone[fb, w] = np.uint64(0)
            fvalid[fb] = 1
        for t in range(lcount):
            li = lf[t]
            if rcnt[li] >= 2:
                contrib[li] = 0
                continue
            q = present[li]
            if fdone[fb, q >> 6] & (np.uint64(1) << np.uint64(q & 63)):
                contrib[li] = fdelta[fb, q]
                continue
            box = 1
            for j in range(m):
                box *= objs[q, j] + 1
            cc = 0
            for t2 in range(lcount):
                if t2 == t:
                    continue
                q2 = present[lf[t2]]
                for j in range(m):
                    v = objs[q2, j]
                    qv = objs[q, j]
                    clipbuf[cc, j] = v if v < qv else qv
                cc += 1
            # dominance-filter the clipped set before the recursion
            fc = 0
            for a in range(cc):
                keep = True
                for b2 in range(cc):
                    if a == b2:
                        continue
                    weak = True
                    strict = False
                    for j in range(m):
                        if clipbuf[b2, j] < clipbuf[a, j]:
                            weak = False
                            break
                        if clipbuf[b2, j] > clipbuf[a, j]:
                            strict = True
                    if weak and (strict or b2 < a):
                        keep = False
                        break
                if keep:
                    for j in range(m):
                        clipfil[fc, j] = clipbuf[a, j]
                    fc += 1
            delta = box - _hv_exclusive(clipfil[:fc])
            fdelta[fb, q] = delta
            fdone[fb, q >> 6] |= np.uint64(1) << np.uint64(q & 63)
            contrib[li] = delta

    # least contributors, tie broken uniformly (one draw iff |D| > 1)
    minc = np.int64(2) ** 62
    for t in range(lcount):
        if contrib[lf[t]] < minc:
            minc = contrib[lf[t]]
    dn = 0
    for i in range(total):
        if elig[i] == 1:
            li = loc[pid[i]]
            if frontid[li] == istar and contrib[li] == minc:
                dmembers[dn] = i
                dn += 1
    victim = dmembers[0]
    if dn > 1:
        victim = dmembers[int(rng.random() * dn)]

    # coverage bookkeeping over the post-removal population
    off = pid[mu]
    vic = pid[victim]
    prev_vic = cnt[vic]
    c0 = cnt[off]
    cnt[off] = c0 + 1
    if c0 == 0:
        if front_mask[off] == 1:
            counters[0] += 1
        if k_mask[off] == 1:
            counters[1] += 1
        if c_mask[off] == 1:
            counters[2] += 1
    cnt[vic] -= 1
    if cnt[vic] == 0:
        if front_mask[vic] == 1:
            counters[0] -= 1
            if prev_vic > 0:
                counters[3] += 1
        if k_mask[vic] == 1:
            counters[1] -= 1
        if c_mask[vic] == 1:
            counters[2] -= 1

    # survivors keep their slots; offspring fills the vacated one
    if victim != mu:
        for j in range(n):
            geno[victim, j] = geno[mu, j]
        for b in range(blocks):
            bc[victim, b] = bc[mu, b]
        pid[victim] = off
        ages[victim] = 0
    if strat == 2:
        for i in range(mu):
            ages[i] += 1
    return victim


@njit(cache=True, nogil=True)
def _run(
    rng,
    geno,
    bc,
    pid,
    ages,
    cnt,
    counters,
    mu,
    tau,
    strat,
    inv_n,
    nprime,
    pows,
    objs,
    dom,
    front_mask,
    k_mask,
    c_mask,
    f1_order,
    elig,
    loc,
    present,
    rcnt,
    ndom,
    frontid,
    contrib,
    sorted_lf,
    lf,
    dmembers,
    clipbuf,
    clipfil,
    maskbuf,
    ckeys,
    cvalid,
    clevel,
    fkeys,
    fvalid,
    fdone,
    fdelta,
    steps,
    it0,
    front_total,
    k_total,
    c_total,
    hits,
):
    it = 0
    while it < steps:
        _step(
            rng, geno, bc, pid, ages, cnt, counters, mu, tau, strat, inv_n,
            nprime, pows, objs, dom, front_mask, k_mask, c_mask, f1_order,
            elig, loc, present, rcnt, ndom, frontid, contrib, sorted_lf, lf,
            dmembers, clipbuf, clipfil, maskbuf, ckeys, cvalid, clevel,
            fkeys, fvalid, fdone, fdelta,
        )
        it += 1
        if hits[0] < 0 and k_total > 0 and counters[1] == k_total:
            hits[0] = it0 + it
        if hits[1] < 0 and c_total > 0 and counters[2] == c_total:
            hits[1] = it0 + it
        if counters[0] == front_total:
            break
    return it


class Simulation:
    """Mutable engine state for one seeded run.

    ``step()`` advances a single generation (used by the equivalence
    tests); ``run()`` executes the compiled loop until the population
    covers the full front or the iteration budget is exhausted.
    """

    def __init__(
        self,
        spec: ProblemSpec,
        strategy,
        mu: int,
        rng: np.random.Generator,
    ) -> None:
        if strategy.kind == "aging" and mu < strategy.tau + 1:
            raise ValueError("aging requires mu >= tau + 1")
        self.spec = spec
        self.strategy = strategy
        self.mu = mu
        self.rng = rng
        self._code = _STRATEGY_CODE[strategy.kind]
        self._tab = tab = _tables(spec)

        n, universe = spec.n, tab.universe
        self._geno = np.zeros((mu + 1, n), dtype=np.uint8)
        self._bc = np.zeros((mu + 1, tab.blocks), dtype=np.int64)
        self._pid = np.zeros(mu + 1, dtype=np.int64)
        self._ages = np.zeros(mu + 1, dtype=np.int64)
        _init_pop(rng, self._geno, self._bc, self._pid, mu, tab.nprime, tab.pows)
        if strategy.kind == "aging":
            self._ages[:mu] = strategy.tau

        self._cnt = np.bincount(self._pid[:mu], minlength=universe).astype(np.int64)
        covered = self._cnt > 0
        self._counters = np.array(
            [
                int(np.count_nonzero(covered & (tab.front_mask == 1))),
                int(np.count_nonzero(covered & (tab.k_mask == 1))),
                int(np.count_nonzero(covered & (tab.c_mask == 1))),
                0,
            ],
            dtype=np.int64,
        )
        self.iterations = 0
        self._hits = np.full(2, -1, dtype=np.int64)
        self._refresh_hits()

        total = mu + 1
        self._elig = np.zeros(total, dtype=np.uint8)
        self._loc = np.zeros(universe, dtype=np.int64)
        self._present = np.zeros(universe, dtype=np.int64)
        self._rcnt = np.zeros(universe, dtype=np.int64)
        self._ndom = np.zeros(universe, dtype=np.int64)
        self._frontid = np.zeros(universe, dtype=np.int64)
        self._contrib = np.zeros(universe, dtype=np.int64)
        self._sorted_lf = np.zeros(universe, dtype=np.int64)
        self._lf = np.zeros(universe, dtype=np.int64)
        self._dmembers = np.zeros(total, dtype=np.int64)
        self._clipbuf = np.zeros((universe, spec.m), dtype=np.int64)

        # direct-mapped memos: front levels per candidate-profile set, and
        # lazily filled geometric deltas per last-front set
        buckets, words = 256, (universe + 63) // 64
        self._clipfil = np.zeros((universe, spec.m), dtype=np.int64)
        self._maskbuf = np.zeros(words, dtype=np.uint64)
        self._ckeys = np.zeros((buckets, words), dtype=np.uint64)
        self._cvalid = np.zeros(buckets, dtype=np.uint8)
        self._clevel = np.zeros((buckets, universe), dtype=np.int64)
        self._fkeys = np.zeros((buckets, words), dtype=np.uint64)
        self._fvalid = np.zeros(buckets, dtype=np.uint8)
        self._fdone = np.zeros((buckets, words), dtype=np.uint64)
        self._fdelta = np.zeros((buckets, universe), dtype=np.int64)

    def _refresh_hits(self) -> None:
        tab = self._tab
        if self._hits[0] < 0 and tab.k_total > 0 and self._counters[1] == tab.k_total:
            self._hits[0] = self.iterations
        if self._hits[1] < 0 and tab.c_total > 0 and self._counters[2] == tab.c_total:
            self._hits[1] = self.iterations

    def _kernel_args(self):
        tab = self._tab
        return (
            self.rng, self._geno, self._bc, self._pid, self._ages, self._cnt,
            self._counters, self.mu, self.strategy.tau, self._code,
            1.0 / self.spec.n, tab.nprime, tab.pows, tab.objs, tab.dom,
            tab.front_mask, tab.k_mask, tab.c_mask, tab.f1_order, self._elig,
            self._loc, self._present, self._rcnt, self._ndom, self._frontid,
            self._contrib, self._sorted_lf, self._lf, self._dmembers,
            self._clipbuf, self._clipfil, self._maskbuf, self._ckeys,
            self._cvalid, self._clevel, self._fkeys, self._fvalid,
            self._fdone, self._fdelta,
        )

    def step(self) -> int:
        """Advance one generation; returns the removed member's slot."""
        victim = _step(*self._kernel_args())
        self.iterations += 1
        self._refresh_hits()
        return int(victim)

    def run(self, max_iterations: int) -> int:
        """Step until the front is covered or ``max_iterations`` generations."""
        tab = self._tab
        remaining = max_iterations - self.iterations
        if remaining > 0 and not self.front_covered:
            self.iterations += int(
                _run(
                    *self._kernel_args(),
                    remaining,
                    self.iterations,
                    tab.front_total,
                    tab.k_total,
                    tab.c_total,
                    self._hits,
                )
            )
        return self.iterations

    @property
    def front_covered(self) -> bool:
        return int(self._counters[0]) == self._tab.front_total

    @property
    def lost_front_points(self) -> int:
        """Generations in which a held front point vanished from the population."""
        return int(self._counters[3])

    @property
    def first_hit_k(self) -> Optional[int]:
        return int(self._hits[0]) if self._hits[0] >= 0 else None

    @property
    def first_hit_c(self) -> Optional[int]:
        return int(self._hits[1]) if self._hits[1] >= 0 else None

    def covered_front_vectors(self) -> set:
        tab = self._tab
        held = (self._cnt > 0) & (tab.front_mask == 1)
        return {tuple(int(v) for v in tab.objs[q]) for q in np.flatnonzero(held)}

    def population(self) -> Population:
        members = []
        for i in range(self.mu):
            bits = BitString(tuple(int(b) for b in self._geno[i]))
            vec = tuple(int(v) for v in self._tab.objs[self._pid[i]])
            members.append(Individual(bits, vec, int(self._ages[i])))
        return Population(tuple(members), self.mu)
