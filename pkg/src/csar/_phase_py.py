"""Pure-Python accept-or-reject phase loop.

Reference implementation of the per-trial hot kernel; `csar._phase_cy` is
the compiled twin. Both consume the same cumulative-sum arrays and must
produce bit-identical outputs, so every arithmetic step here (division by
the pull count, gap differences, comparisons) is written exactly as the C
code performs it. Keep the two files in lockstep.

Encodings shared with the compiled twin:
  decision: 0 = rejected, 1 = accepted, 2 = forced eviction (no arm looked feasible)
  exit:     0 = phase budget exhausted, 1 = all slots filled, 2 = last-pair shortcut
"""

from __future__ import annotations

import numpy as np

DECISION_REJECTED = 0
DECISION_ACCEPTED = 1
DECISION_FORCED = 2

EXIT_NONE = 0
EXIT_ALL_ACCEPTED = 1
EXIT_LAST_PAIR = 2


def run_phase_loop(reward_sums, cost_sums, pulls, tau, m):
    """Run the deactivation loop over precomputed per-phase cumulative sums.

    reward_sums, cost_sums: float64 (num_arms, num_phases), entry [a, k] is
    the sum of arm a's first pulls[k] samples (unused when pulls[k] == 0).
    pulls: int64 (num_phases,), cumulative per-arm pull counts n_k.

    Returns (status, selections, num_phases_run, deactivated, decision,
    m_pre, feasible, exit_code); selections uses -1 for unfilled slots and
    the per-phase arrays are zero-padded past num_phases_run.
    """
    num_arms = reward_sums.shape[0]
    num_phases = pulls.shape[0]

    selections = np.full(m, -1, dtype=np.int64)
    deactivated = np.full(num_phases, -1, dtype=np.int64)
    decision = np.zeros(num_phases, dtype=np.int8)
    m_pre = np.zeros(num_phases, dtype=np.int64)
    feasible = np.zeros((num_phases, num_arms), dtype=np.uint8)

    active = [True] * num_arms
    m_rem = m
    exit_code = EXIT_NONE
    phases_run = 0

    for k in range(num_phases):
        nk = int(pulls[k])
        m_pre[k] = m_rem

        # arms with zero samples have undefined means: never feasible
        feas: list[int] = []
        if nk > 0:
            for a in range(num_arms):
                if active[a] and cost_sums[a, k] / nk <= tau:
                    feas.append(a)
                    feasible[k, a] = 1
        nf = len(feas)

        if nf > 0:
            best_mu_arm = feas[0]
            best_mu = reward_sums[feas[0], k] / nk
            for a in feas[1:]:
                mu = reward_sums[a, k] / nk
                if mu > best_mu:
                    best_mu = mu
                    best_mu_arm = a

        if nf > m_rem:
            # rank feasible arms by empirical reward mean, ties by id
            order = sorted(feas, key=lambda a: (-(reward_sums[a, k] / nk), a))
            rank_of = {a: r for r, a in enumerate(order, start=1)}
            v_mk = reward_sums[order[m_rem - 1], k] / nk
            v_mk1 = reward_sums[order[m_rem], k] / nk
            d_k = -1
            best_gap = 0.0
            for a in feas:
                mu = reward_sums[a, k] / nk
                gap = mu - v_mk1 if rank_of[a] <= m_rem else v_mk - mu
                if d_k < 0 or gap > best_gap:
                    best_gap = gap
                    d_k = a
            accepted = d_k == best_mu_arm
            dec = DECISION_ACCEPTED if accepted else DECISION_REJECTED
        elif nf >= 1:
            d_k = best_mu_arm
            accepted = True
            dec = DECISION_ACCEPTED
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
            dec = DECISION_FORCED

        if accepted:
            selections[m - m_rem] = d_k
            m_rem -= 1
        active[d_k] = False
        deactivated[k] = d_k
        decision[k] = dec
        phases_run = k + 1

        if m_rem == 0:
            exit_code = EXIT_ALL_ACCEPTED
            break
        if m_rem == 1 and nf == 2:
            other = feas[0] if feas[1] == d_k else feas[1]
            selections[m - 1] = other
            exit_code = EXIT_LAST_PAIR
            break

    status = 1 if all(s >= 0 for s in selections) else 0
    return (
        status,
        selections,
        phases_run,
        deactivated,
        decision,
        m_pre,
        feasible,
        exit_code,
    )
