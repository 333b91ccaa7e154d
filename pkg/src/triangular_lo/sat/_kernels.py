"""Numba kernels for the CNF solvers.

Literal encoding inside the kernels: variable ``v`` (0-based) has literals
``2*v`` (positive) and ``2*v + 1`` (negative); negation is ``lit ^ 1``.
Variable values are -1 (unassigned), 0 (false) or 1 (true).

Clauses of length >= 2 watch their first two positions.  Watch lists are
intrusive linked lists over "watch nodes" ``2*c + w`` (w = 0, 1): ``whead``
holds the first node watching a literal and ``wnext`` the next node.
Unit clauses never enter the watch lists; the caller hands them over
separately.
"""

import time

import numba as nb
import numpy as np

STATUS_UNSAT = 0
STATUS_SAT = 1
STATUS_TIMEOUT = -1

REASON_DECISION = -1
REASON_PURE = -2

# stats slots
ST_DECISIONS = 0
ST_PROPAGATIONS = 1
ST_CONFLICTS = 2
ST_RESTARTS = 3
ST_LEARNED = 4
N_STATS = 5


@nb.njit(cache=True)
def _clock():
    with nb.objmode(t="float64"):
        t = time.perf_counter()
    return t


@nb.njit(cache=True, inline="always")
def _litval(val, lit):
    v = val[lit >> 1]
    if v < 0:
        return -1
    return v ^ (lit & 1)


@nb.njit(cache=True)
def _build_watches(nlits, cstart, clen, nclauses, whead, wnext):
    whead[:] = -1
    for c in range(nclauses):
        if clen[c] >= 2:
            for w in range(2):
                node = 2 * c + w
                lit = nlits[cstart[c] + w]
                wnext[node] = whead[lit]
                whead[lit] = node


@nb.njit(cache=True)
def _assign(lit, reason, val, level, reason_of, trail, trail_len, cur_level):
    v = lit >> 1
    val[v] = 1 - (lit & 1)
    level[v] = cur_level
    reason_of[v] = reason
    trail[trail_len] = lit
    return trail_len + 1


@nb.njit(cache=True)
def _propagate(lits, cstart, clen, whead, wnext, val, level, reason_of,
               trail, trail_len, qhead, cur_level, stats):
    """Unit propagation from ``trail[qhead:]``.

    Returns (conflict clause or -1, new trail length, new qhead).
    """
    while qhead < trail_len:
        false_lit = trail[qhead] ^ 1
        qhead += 1
        stats[ST_PROPAGATIONS] += 1
        prev = -1
        node = whead[false_lit]
        while node != -1:
            nxt = wnext[node]
            c = node >> 1
            w = node & 1
            s = cstart[c]
            other = lits[s + 1 - w]
            if _litval(val, other) == 1:
                prev = node
                node = nxt
                continue
            moved = False
            for q in range(s + 2, s + clen[c]):
                cand = lits[q]
                if _litval(val, cand) != 0:
                    lits[q] = lits[s + w]
                    lits[s + w] = cand
                    if prev == -1:
                        whead[false_lit] = nxt
                    else:
                        wnext[prev] = nxt
                    wnext[node] = whead[cand]
                    whead[cand] = node
                    moved = True
                    break
            if moved:
                node = nxt
                continue
            if _litval(val, other) == 0:
                return c, trail_len, qhead
            trail_len = _assign(other, c, val, level, reason_of, trail, trail_len, cur_level)
            prev = node
            node = nxt
    return -1, trail_len, qhead


@nb.njit(cache=True)
def _cancel_until(target, trail_lim, trail, trail_len, val, reason_of, saved_phase):
    start = trail_lim[target]
    for i in range(trail_len - 1, start - 1, -1):
        v = trail[i] >> 1
        saved_phase[v] = val[v]
        val[v] = -1
        reason_of[v] = REASON_DECISION
    return start


# --- DPLL ----------------------------------------------------------------

@nb.njit(cache=True)
def _pure_literals(lits, cstart, clen, nclauses, val, occ):
    """Pure literals among clauses not yet satisfied.

    Fills ``occ[v]`` with bit 1 (positive occurrence) and bit 2 (negative).
    Returns the number of unsatisfied clauses.
    """
    occ[:] = 0
    open_clauses = 0
    for c in range(nclauses):
        s = cstart[c]
        sat = False
        for q in range(s, s + clen[c]):
            if _litval(val, lits[q]) == 1:
                sat = True
                break
        if sat:
            continue
        open_clauses += 1
        for q in range(s, s + clen[c]):
            l = lits[q]
            if val[l >> 1] < 0:
                occ[l >> 1] |= 1 + (l & 1)
    return open_clauses


@nb.njit(cache=True)
def dpll(nvars, lits, cstart, clen, units, budget_s, max_decisions):
    """DPLL: unit propagation, pure literals, lowest index first, true first.

    Returns (status, values, stats).
    """
    nclauses = len(cstart)
    val = np.full(nvars, -1, np.int8)
    level = np.zeros(nvars, np.int64)
    reason_of = np.full(nvars, REASON_DECISION, np.int64)
    saved_phase = np.zeros(nvars, np.int8)
    trail = np.empty(nvars, np.int64)
    trail_lim = np.zeros(nvars + 2, np.int64)
    flipped = np.zeros(nvars + 2, np.bool_)
    occ = np.zeros(nvars, np.int8)
    whead = np.empty(2 * nvars, np.int64)
    wnext = np.empty(2 * nclauses, np.int64)
    stats = np.zeros(N_STATS, np.int64)
    _build_watches(lits, cstart, clen, nclauses, whead, wnext)

    trail_len = 0
    for u in units:
        lv = _litval(val, u)
        if lv == 0:
            return STATUS_UNSAT, val, stats
        if lv < 0:
            trail_len = _assign(u, REASON_DECISION, val, level, reason_of, trail, trail_len, 0)
    qhead = 0
    cur = 0
    t0 = _clock()
    while True:
        confl, trail_len, qhead = _propagate(lits, cstart, clen, whead, wnext, val, level,
                                             reason_of, trail, trail_len, qhead, cur, stats)
        if confl >= 0:
            stats[ST_CONFLICTS] += 1
            # chronological backtracking to the last unflipped decision
            while True:
                if cur == 0:
                    return STATUS_UNSAT, val, stats
                dec = trail[trail_lim[cur - 1]]
                was_flipped = flipped[cur]
                trail_len = _cancel_until(cur - 1, trail_lim, trail, trail_len, val, reason_of, saved_phase)
                qhead = trail_len
                cur -= 1
                if not was_flipped:
                    cur += 1
                    trail_lim[cur - 1] = trail_len
                    flipped[cur] = True
                    stats[ST_DECISIONS] += 1
                    trail_len = _assign(dec ^ 1, REASON_DECISION, val, level, reason_of, trail, trail_len, cur)
                    break
            continue
        # pure literals, repeated until none remain
        open_clauses = _pure_literals(lits, cstart, clen, nclauses, val, occ)
        if open_clauses == 0:
            for v in range(nvars):
                if val[v] < 0:
                    val[v] = 1
            return STATUS_SAT, val, stats
        assigned_pure = False
        for v in range(nvars):
            if occ[v] == 1:
                trail_len = _assign(2 * v, REASON_PURE, val, level, reason_of, trail, trail_len, cur)
                assigned_pure = True
            elif occ[v] == 2:
                trail_len = _assign(2 * v + 1, REASON_PURE, val, level, reason_of, trail, trail_len, cur)
                assigned_pure = True
        if assigned_pure:
            continue
        pick = -1
        for v in range(nvars):
            if val[v] < 0:
                pick = v
                break
        if pick < 0:
            return STATUS_SAT, val, stats
        if max_decisions >= 0 and stats[ST_DECISIONS] >= max_decisions:
            return STATUS_TIMEOUT, val, stats
        if budget_s >= 0 and (stats[ST_DECISIONS] & 1023) == 0 and _clock() - t0 > budget_s:
            return STATUS_TIMEOUT, val, stats
        stats[ST_DECISIONS] += 1
        cur += 1
        trail_lim[cur - 1] = trail_len
        flipped[cur] = False
        trail_len = _assign(2 * pick, REASON_DECISION, val, level, reason_of, trail, trail_len, cur)


# --- CDCL ----------------------------------------------------------------

@nb.njit(cache=True)
def _heap_up(heap, pos, act, i):
    v = heap[i]
    while i > 0:
        parent = (i - 1) >> 1
        if act[heap[parent]] >= act[v]:
            break
        heap[i] = heap[parent]
        pos[heap[i]] = i
        i = parent
    heap[i] = v
    pos[v] = i


@nb.njit(cache=True)
def _heap_down(heap, pos, act, size, i):
    v = heap[i]
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size and act[heap[child + 1]] > act[heap[child]]:
            child += 1
        if act[heap[child]] <= act[v]:
            break
        heap[i] = heap[child]
        pos[heap[i]] = i
        i = child
    heap[i] = v
    pos[v] = i


@nb.njit(cache=True)
def _heap_push(heap, pos, act, size, v):
    if pos[v] >= 0:
        return size
    heap[size] = v
    pos[v] = size
    _heap_up(heap, pos, act, size)
    return size + 1


@nb.njit(cache=True)
def _heap_pop(heap, pos, act, size):
    v = heap[0]
    pos[v] = -1
    size -= 1
    if size > 0:
        heap[0] = heap[size]
        pos[heap[0]] = 0
        _heap_down(heap, pos, act, size, 0)
    return v, size


@nb.njit(cache=True)
def _luby(y, x):
    size = 1
    seq = 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x = x % size
    return y ** seq


@nb.njit(cache=True)
def cdcl(nvars, lits_in, cstart_in, clen_in, units, budget_s, max_conflicts):
    """CDCL with 1UIP learning, VSIDS, phase saving, Luby restarts and
    LBD-based clause deletion.  Returns (status, values, stats)."""
    n_orig = len(cstart_in)
    cap_c = max(2 * n_orig + 1024, 4096)
    cap_l = max(2 * len(lits_in) + 8192, 16384)
    lits = np.empty(cap_l, np.int64)
    lits[:len(lits_in)] = lits_in
    nlit = len(lits_in)
    cstart = np.empty(cap_c, np.int64)
    clen = np.empty(cap_c, np.int64)
    lbd = np.zeros(cap_c, np.int64)
    cstart[:n_orig] = cstart_in
    clen[:n_orig] = clen_in
    nclauses = n_orig

    val = np.full(nvars, -1, np.int8)
    level = np.zeros(nvars, np.int64)
    reason_of = np.full(nvars, REASON_DECISION, np.int64)
    saved_phase = np.zeros(nvars, np.int8)
    trail = np.empty(nvars, np.int64)
    trail_lim = np.zeros(nvars + 2, np.int64)
    whead = np.empty(2 * nvars, np.int64)
    wnext = np.empty(2 * cap_c, np.int64)
    seen = np.zeros(nvars, np.int8)
    learnt = np.empty(nvars + 1, np.int64)
    keep_flag = np.zeros(nvars + 1, np.bool_)
    lvl_mark = np.zeros(nvars + 2, np.int64)
    lvl_stamp = 0
    stats = np.zeros(N_STATS, np.int64)

    act = np.zeros(nvars, np.float64)
    var_inc = 1.0
    heap = np.empty(nvars, np.int64)
    pos = np.full(nvars, -1, np.int64)
    hsize = 0
    # seed activities with occurrence counts so early decisions follow structure
    for q in range(nlit):
        act[lits[q] >> 1] += 1e-3
    for v in range(nvars):
        hsize = _heap_push(heap, pos, act, hsize, v)

    _build_watches(lits, cstart, clen, nclauses, whead, wnext)

    trail_len = 0
    for u in units:
        lv = _litval(val, u)
        if lv == 0:
            return STATUS_UNSAT, val, stats
        if lv < 0:
            trail_len = _assign(u, REASON_DECISION, val, level, reason_of, trail, trail_len, 0)
    qhead = 0
    cur = 0
    t0 = _clock()
    restart_idx = 0
    restart_limit = 100 * _luby(2, 0)
    conflicts_since_restart = 0
    max_learnts = max(n_orig // 3, 2000)
    n_learnts = 0

    while True:
        confl, trail_len, qhead = _propagate(lits, cstart, clen, whead, wnext, val, level,
                                             reason_of, trail, trail_len, qhead, cur, stats)
        if confl >= 0:
            stats[ST_CONFLICTS] += 1
            conflicts_since_restart += 1
            if cur == 0:
                return STATUS_UNSAT, val, stats
            # 1UIP conflict analysis
            nl = 1
            path = 0
            p = -1
            idx = trail_len - 1
            c = confl
            while True:
                s = cstart[c]
                for q in range(s, s + clen[c]):
                    l = lits[q]
                    v = l >> 1
                    if p >= 0 and v == (p >> 1):
                        continue
                    if seen[v] == 0 and level[v] > 0:
                        seen[v] = 1
                        act[v] += var_inc
                        if act[v] > 1e100:
                            for u in range(nvars):
                                act[u] *= 1e-100
                            var_inc *= 1e-100
                        if pos[v] >= 0:
                            _heap_up(heap, pos, act, pos[v])
                        if level[v] >= cur:
                            path += 1
                        else:
                            learnt[nl] = l
                            nl += 1
                while seen[trail[idx] >> 1] == 0:
                    idx -= 1
                p = trail[idx]
                idx -= 1
                c = reason_of[p >> 1]
                seen[p >> 1] = 0
                path -= 1
                if path == 0:
                    break
            learnt[0] = p ^ 1
            # local minimisation: drop literals implied by other learnt literals
            for i in range(1, nl):
                l = learnt[i]
                r = reason_of[l >> 1]
                keep_flag[i] = True
                if r >= 0:
                    keep_flag[i] = False
                    rs = cstart[r]
                    for q in range(rs, rs + clen[r]):
                        u = lits[q] >> 1
                        if u != (l >> 1) and seen[u] == 0 and level[u] > 0:
                            keep_flag[i] = True
                            break
            j = 1
            for i in range(1, nl):
                seen[learnt[i] >> 1] = 0
                if keep_flag[i]:
                    learnt[j] = learnt[i]
                    j += 1
            nl = j
            # backjump level; the highest-level remaining literal goes to slot 1
            bj = 0
            if nl > 1:
                best = 1
                for i in range(2, nl):
                    if level[learnt[i] >> 1] > level[learnt[best] >> 1]:
                        best = i
                tmp = learnt[1]
                learnt[1] = learnt[best]
                learnt[best] = tmp
                bj = level[learnt[1] >> 1]
            lvl_stamp += 1
            glue = 0
            for i in range(nl):
                lv = level[learnt[i] >> 1]
                if lvl_mark[lv] != lvl_stamp:
                    lvl_mark[lv] = lvl_stamp
                    glue += 1
            var_inc /= 0.95
            # undo to the backjump level, re-queueing the unassigned variables
            start = trail_lim[bj]
            for i in range(trail_len - 1, start - 1, -1):
                v = trail[i] >> 1
                saved_phase[v] = val[v]
                val[v] = -1
                reason_of[v] = REASON_DECISION
                hsize = _heap_push(heap, pos, act, hsize, v)
            trail_len = start
            qhead = trail_len
            cur = bj
            if nl == 1:
                trail_len = _assign(learnt[0], REASON_DECISION, val, level, reason_of, trail, trail_len, 0)
            else:
                if nclauses == cap_c:
                    new_cap = 2 * cap_c
                    cstart = _grow(cstart, new_cap)
                    clen = _grow(clen, new_cap)
                    lbd = _grow(lbd, new_cap)
                    wnext = _grow(wnext, 2 * new_cap)
                    cap_c = new_cap
                if nlit + nl > cap_l:
                    cap_l = 2 * (nlit + nl)
                    lits = _grow(lits, cap_l)
                c = nclauses
                cstart[c] = nlit
                clen[c] = nl
                lbd[c] = glue
                lits[nlit:nlit + nl] = learnt[:nl]
                nlit += nl
                nclauses += 1
                n_learnts += 1
                stats[ST_LEARNED] += 1
                for w in range(2):
                    node = 2 * c + w
                    l = lits[cstart[c] + w]
                    wnext[node] = whead[l]
                    whead[l] = node
                trail_len = _assign(learnt[0], c, val, level, reason_of, trail, trail_len, cur)
            if max_conflicts >= 0 and stats[ST_CONFLICTS] >= max_conflicts:
                return STATUS_TIMEOUT, val, stats
            if budget_s >= 0 and (stats[ST_CONFLICTS] & 255) == 0 and _clock() - t0 > budget_s:
                return STATUS_TIMEOUT, val, stats
            continue

        if conflicts_since_restart >= restart_limit and cur > 0:
            stats[ST_RESTARTS] += 1
            restart_idx += 1
            restart_limit = 100 * _luby(2, restart_idx)
            conflicts_since_restart = 0
            start = trail_lim[0]
            for i in range(trail_len - 1, start - 1, -1):
                v = trail[i] >> 1
                saved_phase[v] = val[v]
                val[v] = -1
                reason_of[v] = REASON_DECISION
                hsize = _heap_push(heap, pos, act, hsize, v)
            trail_len = start
            qhead = trail_len
            cur = 0
            if n_learnts > max_learnts:
                nclauses, nlit, n_learnts = _reduce_db(lits, cstart, clen, lbd, n_orig, nclauses,
                                                      reason_of, val, trail, trail_len)
                _build_watches(lits, cstart, clen, nclauses, whead, wnext)
                max_learnts = max_learnts + max_learnts // 10
            continue

        v = -1
        while hsize > 0:
            cand, hsize = _heap_pop(heap, pos, act, hsize)
            if val[cand] < 0:
                v = cand
                break
        if v < 0:
            return STATUS_SAT, val, stats
        if budget_s >= 0 and (stats[ST_DECISIONS] & 1023) == 0 and _clock() - t0 > budget_s:
            return STATUS_TIMEOUT, val, stats
        stats[ST_DECISIONS] += 1
        cur += 1
        trail_lim[cur - 1] = trail_len
        lit = 2 * v + (1 if saved_phase[v] == 0 else 0)
        trail_len = _assign(lit, REASON_DECISION, val, level, reason_of, trail, trail_len, cur)


@nb.njit(cache=True)
def _grow(arr, new_size):
    out = np.empty(new_size, arr.dtype)
    out[:len(arr)] = arr
    return out


@nb.njit(cache=True)
def _reduce_db(lits, cstart, clen, lbd, n_orig, nclauses, reason_of, val, trail, trail_len):
    """Drop the worse half of learned clauses (by LBD), keeping glue <= 2
    and clauses that are currently reasons.  Runs at decision level 0 only,
    so reasons are level-0 implications and are kept."""
    n_learnt = nclauses - n_orig
    locked = np.zeros(nclauses, np.bool_)
    for i in range(trail_len):
        r = reason_of[trail[i] >> 1]
        if r >= 0:
            locked[r] = True
    order = np.argsort(lbd[n_orig:nclauses], kind="mergesort")
    drop = np.zeros(nclauses, np.bool_)
    ndrop = 0
    target = n_learnt // 2
    for k in range(n_learnt - 1, -1, -1):
        if ndrop >= target:
            break
        c = n_orig + order[k]
        if lbd[c] <= 2 or locked[c]:
            continue
        drop[c] = True
        ndrop += 1
    # compact, remapping reasons of level-0 literals
    remap = np.full(nclauses, -1, np.int64)
    write_c = n_orig
    write_l = cstart[n_orig] if n_orig < nclauses else 0
    for c in range(n_orig, nclauses):
        if drop[c]:
            continue
        s = cstart[c]
        ln = clen[c]
        for q in range(ln):
            lits[write_l + q] = lits[s + q]
        cstart[write_c] = write_l
        clen[write_c] = ln
        lbd[write_c] = lbd[c]
        remap[c] = write_c
        write_l += ln
        write_c += 1
    for i in range(trail_len):
        v = trail[i] >> 1
        r = reason_of[v]
        if r >= n_orig:
            reason_of[v] = remap[r]
    return write_c, write_l, write_c - n_orig
