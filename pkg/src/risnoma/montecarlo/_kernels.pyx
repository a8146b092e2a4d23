# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial kernel; same contract and draws as ``_kernels_py``."""

import numpy as np
from libc.math cimport sqrt, log, cos, M_PI
from libc.stdint cimport uint64_t

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL


cdef inline uint64_t _raw(uint64_t key, uint64_t ctr) nogil:
    cdef uint64_t x = key + ctr * GAMMA
    x = (x ^ (x >> 30)) * MIX1
    x = (x ^ (x >> 27)) * MIX2
    return x ^ (x >> 31)


cdef inline double _unit(uint64_t v) nogil:
    return (<double>(v >> 11) + 0.5) * (1.0 / 9007199254740992.0)


cdef inline double _rayleigh(uint64_t key, uint64_t ctr) nogil:
    return sqrt(-log(_unit(_raw(key, ctr))))


cdef inline int _bit(uint64_t key, uint64_t ctr) nogil:
    return 1 if (_raw(key, ctr) >> 63) == 1 else -1


cdef inline int _sgn(double v) nogil:
    return 1 if v >= 0 else -1


def simulate_trials(uint64_t key, long long t0, long long n, int n_elements, int n_cells,
                    const double[::1] params):
    cdef double psi1 = params[0], psi2 = params[1], iota = params[2]
    cdef double power = params[3], pj = params[4], noise_var = params[5]
    cdef double ka2 = params[6], kb2 = params[7], amp1 = params[8], amp2 = params[9]
    cdef bint paper_replica = params[10] != 0
    cdef double fixed1 = params[11], fixed2 = params[12]

    cdef uint64_t m = 3 * n_elements + 4 * n_cells * n_elements + 2 * n_cells + 2 + 4 * n_cells + 4
    cdef uint64_t base, p_ici, p_phase, p_bits, p_norm, c
    cdef long long t
    cdef int u, j, k
    cdef double a1[2]
    cdef double psi[2]
    cdef double gain[2]
    cdef double rest[2]
    cdef double nu, acc, xj, sig, powr, var, x, y1, y2, y2c, zn, g1, g2
    cdef int s1, s2, e1, e2, o1, o2, s1h
    cdef long long c_e1 = 0, c_e2 = 0, c_sys = 0, c_o1 = 0, c_o2 = 0, c_osys = 0
    cdef double sq_pji = sqrt(pj * iota)

    psi[0] = psi1
    psi[1] = psi2

    with nogil:
        for t in range(t0, t0 + n):
            base = <uint64_t>t * m
            p_ici = base + 3 * n_elements
            p_phase = p_ici + 4 * n_cells * n_elements
            p_bits = p_phase + 2 * n_cells
            p_norm = p_bits + 2 + 4 * n_cells
            if fixed1 < 0:
                a1[0] = 0.0
                a1[1] = 0.0
                for k in range(n_elements):
                    nu = _rayleigh(key, base + k)
                    a1[0] += nu * _rayleigh(key, base + n_elements + k)
                    a1[1] += nu * _rayleigh(key, base + 2 * n_elements + k)
            else:
                a1[0] = fixed1
                a1[1] = fixed2
            s1 = _bit(key, p_bits)
            s2 = _bit(key, p_bits + 1)
            x = amp1 * s1 + amp2 * s2
            for u in range(2):
                sig = 0.0
                powr = 0.0
                for j in range(n_cells):
                    c = p_ici + <uint64_t>(2 * (u * n_cells + j)) * n_elements
                    acc = 0.0
                    for k in range(n_elements):
                        acc += _rayleigh(key, c + k) * _rayleigh(key, c + n_elements + k)
                    xj = amp1 * _bit(key, p_bits + 2 + 2 * (u * n_cells + j)) \
                        + amp2 * _bit(key, p_bits + 3 + 2 * (u * n_cells + j))
                    sig += acc * xj * cos(2 * M_PI * _unit(_raw(key, p_phase + u * n_cells + j)))
                    powr += acc * acc
                g1 = _unit(_raw(key, p_norm + 2 * u))
                g2 = _unit(_raw(key, p_norm + 2 * u + 1))
                zn = sqrt(-2.0 * log(g1)) * cos(2 * M_PI * g2)
                gain[u] = sqrt(psi[u] * power) * a1[u]
                var = noise_var + power * psi[u] * a1[u] * a1[u] * ka2 + pj * iota * kb2 * powr
                rest[u] = sq_pji * sig + zn * sqrt(0.5 * var)

            y1 = gain[0] * x + rest[0]
            y2 = gain[1] * x + rest[1]
            e1 = _sgn(y1) != s1
            s1h = _sgn(y2)
            if paper_replica:
                y2c = y2 - gain[0] * s1h
            else:
                y2c = y2 - gain[1] * amp1 * s1h
            e2 = _sgn(y2c) != s2
            o1 = _sgn(gain[0] * s1 + rest[0]) != s1
            o2 = _sgn(gain[1] * s2 + rest[1]) != s2
            c_e1 += e1
            c_e2 += e2
            c_sys += e1 | e2
            c_o1 += o1
            c_o2 += o2
            c_osys += o1 | o2

    return np.array([c_e1, c_e2, c_sys, c_o1, c_o2, c_osys], dtype=np.int64)
