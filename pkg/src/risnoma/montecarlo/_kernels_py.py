"""Vectorized numpy implementation of the trial kernel.

Consumes the counter-based draws of ``rng`` in the slot order documented in
``rng.draws_per_trial`` so that it reproduces the compiled kernel.
"""

import numpy as np

from risnoma.montecarlo import rng as crng

N_COUNTERS = 6
TRIAL_BLOCK = 2048


def _block(key, t0, n, n_el, n_cells, params):
    (psi1, psi2, iota, power, pj, noise_var, ka2, kb2,
     amp1, amp2, paper_replica, fixed1, fixed2) = params
    m = crng.draws_per_trial(n_el, n_cells)
    counters = (np.arange(t0, t0 + n, dtype=np.uint64)[:, None] * np.uint64(m)
                + np.arange(m, dtype=np.uint64)[None, :])
    raw = crng.raw_draws(key, counters)
    u = crng.to_unit(raw)

    pos = 0
    serv = u[:, pos:pos + 3 * n_el].reshape(n, 3, n_el)
    pos += 3 * n_el
    ici = u[:, pos:pos + 4 * n_cells * n_el].reshape(n, 2, n_cells, 2, n_el)
    pos += 4 * n_cells * n_el
    phase = u[:, pos:pos + 2 * n_cells].reshape(n, 2, n_cells)
    pos += 2 * n_cells
    sb = np.where((raw[:, pos:pos + 2 + 4 * n_cells] >> np.uint64(63)) == 1, 1, -1)
    pos += 2 + 4 * n_cells
    g = u[:, pos:pos + 4].reshape(n, 2, 2)
    z = np.sqrt(-2.0 * np.log(g[..., 0])) * np.cos(2 * np.pi * g[..., 1])

    if fixed1 < 0:
        r = np.sqrt(-np.log(serv))
        a1 = np.stack([(r[:, 0] * r[:, 1]).sum(axis=1), (r[:, 0] * r[:, 2]).sum(axis=1)], axis=1)
    else:
        a1 = np.empty((n, 2))
        a1[:, 0] = fixed1
        a1[:, 1] = fixed2

    s1 = sb[:, 0]
    s2 = sb[:, 1]
    if n_cells:
        ri = np.sqrt(-np.log(ici))
        cas = (ri[..., 0, :] * ri[..., 1, :]).sum(axis=-1)
        cell = sb[:, 2:].reshape(n, 2, n_cells, 2)
        xj = amp1 * cell[..., 0] + amp2 * cell[..., 1]
        ici_sig = np.sqrt(pj * iota) * (cas * xj * np.cos(2 * np.pi * phase)).sum(axis=-1)
        ici_pow = pj * iota * kb2 * (cas * cas).sum(axis=-1)
    else:
        ici_sig = np.zeros((n, 2))
        ici_pow = np.zeros((n, 2))

    psi = np.array([psi1, psi2])
    gain = np.sqrt(psi * power) * a1
    var = noise_var + power * psi * a1 * a1 * ka2 + ici_pow
    rest = ici_sig + z * np.sqrt(0.5 * var)

    x = amp1 * s1 + amp2 * s2
    y1 = gain[:, 0] * x + rest[:, 0]
    y2 = gain[:, 1] * x + rest[:, 1]
    e1 = np.where(y1 >= 0, 1, -1) != s1
    s1_at_u2 = np.where(y2 >= 0, 1, -1)
    if paper_replica:
        y2c = y2 - gain[:, 0] * s1_at_u2
    else:
        y2c = y2 - gain[:, 1] * amp1 * s1_at_u2
    e2 = np.where(y2c >= 0, 1, -1) != s2
    o1 = np.where(gain[:, 0] * s1 + rest[:, 0] >= 0, 1, -1) != s1
    o2 = np.where(gain[:, 1] * s2 + rest[:, 1] >= 0, 1, -1) != s2
    return np.array(
        [e1.sum(), e2.sum(), (e1 | e2).sum(), o1.sum(), o2.sum(), (o1 | o2).sum()],
        dtype=np.int64,
    )


def simulate_trials(key, t0, n, n_elements, n_cells, params):
    """Error counters ``[u1, u2, system, oma_u1, oma_u2, oma_system]`` over
    trials ``t0 .. t0+n-1``.  ``params`` comes from ``engine.kernel_params``."""
    out = np.zeros(N_COUNTERS, dtype=np.int64)
    for start in range(t0, t0 + n, TRIAL_BLOCK):
        size = min(TRIAL_BLOCK, t0 + n - start)
        out += _block(key, start, size, n_elements, n_cells, params)
    return out
