# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled accept-or-reject phase loop.

Twin of ``csar._phase_py.run_phase_loop``. Same inputs, same outputs, and
the same IEEE-double operations in the same order, so results match the
pure-Python kernel bit for bit. Any change here must be mirrored there.
"""

import numpy as np

from libc.stdint cimport int64_t, int8_t, uint8_t


cpdef run_phase_loop(double[:, ::1] reward_sums,
                     double[:, ::1] cost_sums,
                     int64_t[::1] pulls,
                     double tau,
                     int64_t m):
    cdef Py_ssize_t num_arms = reward_sums.shape[0]
    cdef Py_ssize_t num_phases = pulls.shape[0]

    selections_arr = np.full(m, -1, dtype=np.int64)
    deactivated_arr = np.full(num_phases, -1, dtype=np.int64)
    decision_arr = np.zeros(num_phases, dtype=np.int8)
    m_pre_arr = np.zeros(num_phases, dtype=np.int64)
    feasible_arr = np.zeros((num_phases, num_arms), dtype=np.uint8)

    cdef int64_t[::1] selections = selections_arr
    cdef int64_t[::1] deactivated = deactivated_arr
    cdef int8_t[::1] decision = decision_arr
    cdef int64_t[::1] m_pre = m_pre_arr
    cdef uint8_t[:, ::1] feasible = feasible_arr

    # per-phase scratch, indexed by arm id or by feasible-list position
    active_arr = np.ones(num_arms, dtype=np.uint8)
    feas_arr = np.empty(num_arms, dtype=np.int64)
    mu_of_arr = np.empty(num_arms, dtype=np.float64)
    rank_arr = np.empty(num_arms, dtype=np.int64)
    sort_mu_arr = np.empty(num_arms, dtype=np.float64)
    sort_id_arr = np.empty(num_arms, dtype=np.int64)
    cdef uint8_t[::1] active = active_arr
    cdef int64_t[::1] feas = feas_arr
    cdef double[::1] mu_of = mu_of_arr
    cdef int64_t[::1] rank_of = rank_arr
    cdef double[::1] sort_mu = sort_mu_arr
    cdef int64_t[::1] sort_id = sort_id_arr

    cdef int64_t m_rem = m
    cdef int exit_code = 0
    cdef Py_ssize_t phases_run = 0

    cdef Py_ssize_t k, a, i, j
    cdef int64_t nk, d_k, best_mu_arm, other, key_id
    cdef Py_ssize_t nf
    cdef double mu, best_mu, gap, best_gap, v_mk, v_mk1, c, worst_cost, key_mu
    cdef bint accepted
    cdef int8_t dec

    for k in range(num_phases):
        nk = pulls[k]
        m_pre[k] = m_rem

        # arms with zero samples have undefined means: never feasible
        nf = 0
        if nk > 0:
            for a in range(num_arms):
                if active[a] and cost_sums[a, k] / nk <= tau:
                    feas[nf] = a
                    nf += 1
                    feasible[k, a] = 1

        best_mu_arm = -1
        if nf > 0:
            best_mu_arm = feas[0]
            best_mu = reward_sums[feas[0], k] / nk
            for i in range(1, nf):
                a = feas[i]
                mu = reward_sums[a, k] / nk
                if mu > best_mu:
                    best_mu = mu
                    best_mu_arm = a

        if nf > m_rem:
            # rank feasible arms by empirical reward mean, ties by id
            for i in range(nf):
                a = feas[i]
                mu_of[a] = reward_sums[a, k] / nk
                sort_mu[i] = mu_of[a]
                sort_id[i] = a
            for i in range(1, nf):
                key_mu = sort_mu[i]
                key_id = sort_id[i]
                j = i - 1
                while j >= 0 and (sort_mu[j] < key_mu or
                                  (sort_mu[j] == key_mu and sort_id[j] > key_id)):
                    sort_mu[j + 1] = sort_mu[j]
                    sort_id[j + 1] = sort_id[j]
                    j -= 1
                sort_mu[j + 1] = key_mu
                sort_id[j + 1] = key_id
            for i in range(nf):
                rank_of[sort_id[i]] = i + 1
            v_mk = sort_mu[m_rem - 1]
            v_mk1 = sort_mu[m_rem]
            d_k = -1
            best_gap = 0.0
            for i in range(nf):
                a = feas[i]
                mu = mu_of[a]
                if rank_of[a] <= m_rem:
                    gap = mu - v_mk1
                else:
                    gap = v_mk - mu
                if d_k < 0 or gap > best_gap:
                    best_gap = gap
                    d_k = a
            accepted = d_k == best_mu_arm
            dec = 1 if accepted else 0
        elif nf >= 1:
            d_k = best_mu_arm
            accepted = True
            dec = 1
        else:
            # nothing looks feasible: evict the worst-looking active arm
            # (zero-sample phases tie everything, leaving the lowest id)
            d_k = -1
            worst_cost = 0.0
            for a in range(num_arms):
                if not active[a]:
                    continue
                if nk == 0:
                    d_k = a
                    break
                c = cost_sums[a, k] / nk
                if d_k < 0 or c > worst_cost:
                    worst_cost = c
                    d_k = a
            accepted = False
            dec = 2

        if accepted:
            selections[m - m_rem] = d_k
            m_rem -= 1
        active[d_k] = 0
        deactivated[k] = d_k
        decision[k] = dec
        phases_run = k + 1

        if m_rem == 0:
            exit_code = 1
            break
        if m_rem == 1 and nf == 2:
            other = feas[0] if feas[1] == d_k else feas[1]
            selections[m - 1] = other
            exit_code = 2
            break

    cdef int status = 1
    for i in range(m):
        if selections[i] < 0:
            status = 0
            break

    return (
        status,
        selections_arr,
        phases_run,
        deactivated_arr,
        decision_arr,
        m_pre_arr,
        feasible_arr,
        exit_code,
    )
