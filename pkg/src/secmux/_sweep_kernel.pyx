# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the power-split parameter sweep.

Walks the six-dimensional (b1, t1, m1, b2, t2, m2) grid in flat C order,
evaluates the closed-form mutual informations, builds the rate-polygon
caps (shifted by the leakage terms for the secret-rate region) and emits
feasible candidate vertices.  Semantics match ``_sweep_numpy`` exactly;
the only extra is a cheap dominance prefilter against three running
anchor points, which drops points that cannot lie on the Pareto front of
the emitted set and therefore cannot be hull vertices.
"""

from libc.math cimport log1p

DEF FEAS_TOL = 1e-9

BACKEND_NAME = "compiled"


cdef inline double _half_log1p(double num, double den) noexcept nogil:
    return 0.5 * log1p(num / den)


def emit_candidates(double tau1, double tau2, double p1, double p2,
                    double[::1] axis, long start, long stop, bint secure,
                    double[:, ::1] buf):
    """Fill ``buf`` with feasible polygon vertices for grid points in
    [start, stop) of the flattened grid; returns the point count."""
    cdef long res = axis.shape[0]
    cdef long idx, rem, count = 0
    cdef long i_b1, i_t1, i_m1, i_b2, i_t2, i_m2
    cdef double b1, t1, m1, b2, t2, m2
    cdef double msg1, art1, com1, prv1, msg2, art2, com2, prv2
    cdef double tau1sq = tau1 * tau1, tau2sq = tau2 * tau2
    cdef double den1, den2
    cdef double a1, bb1, c1, d1, a2, bb2, c2, d2, s1, s2
    cdef double k1, k2, k3, k4, k5
    cdef double x, y
    cdef int j
    cdef double[19] xs
    cdef double[19] ys
    # Anchor points for the dominance prefilter: best x+y, best x, best y.
    cdef double sum_x = -1.0, sum_y = -1.0
    cdef double maxx_x = -1.0, maxx_y = -1.0
    cdef double maxy_x = -1.0, maxy_y = -1.0
    cdef bint dominated

    for idx in range(start, stop):
        rem = idx
        i_m2 = rem % res; rem //= res
        i_t2 = rem % res; rem //= res
        i_b2 = rem % res; rem //= res
        i_m1 = rem % res; rem //= res
        i_t1 = rem % res; rem //= res
        i_b1 = rem
        b1 = axis[i_b1]; t1 = axis[i_t1]; m1 = axis[i_m1]
        b2 = axis[i_b2]; t2 = axis[i_t2]; m2 = axis[i_m2]

        msg1 = b1 * t1 * p1
        art1 = b1 * (1.0 - t1) * p1
        com1 = m1 * msg1
        prv1 = msg1 - com1
        msg2 = b2 * t2 * p2
        art2 = b2 * (1.0 - t2) * p2
        com2 = m2 * msg2
        prv2 = msg2 - com2

        den1 = 1.0 + art1 + tau1sq * (art2 + prv2)
        den2 = 1.0 + art2 + tau2sq * (art1 + prv1)
        a1 = _half_log1p(prv1, den1)
        bb1 = _half_log1p(prv1 + tau1sq * com2, den1)
        c1 = _half_log1p(msg1, den1)
        d1 = _half_log1p(msg1 + tau1sq * com2, den1)
        a2 = _half_log1p(prv2, den2)
        bb2 = _half_log1p(prv2 + tau2sq * com1, den2)
        c2 = _half_log1p(msg2, den2)
        d2 = _half_log1p(msg2 + tau2sq * com1, den2)

        k1 = c1 if c1 <= a1 + bb2 else a1 + bb2
        k2 = c2 if c2 <= a2 + bb1 else a2 + bb1
        k3 = d1 + a2
        if a1 + d2 < k3:
            k3 = a1 + d2
        if bb1 + bb2 < k3:
            k3 = bb1 + bb2
        k4 = d1 + a1 + bb2
        k5 = d2 + a2 + bb1

        if secure:
            s1 = _half_log1p(tau2sq * msg1, 1.0 + tau2sq * art1 + art2)
            s2 = _half_log1p(tau1sq * msg2, 1.0 + tau1sq * art2 + art1)
            k1 = k1 - s1
            k2 = k2 - s2
            k3 = k3 - s1 - s2
            k4 = k4 - 2.0 * s1 - s2
            k5 = k5 - s1 - 2.0 * s2

        if (k1 < -FEAS_TOL or k2 < -FEAS_TOL or k3 < -FEAS_TOL
                or k4 < -FEAS_TOL or k5 < -FEAS_TOL):
            continue

        xs[0] = 0.0;            ys[0] = 0.0
        xs[1] = 0.0;            ys[1] = k2
        xs[2] = 0.0;            ys[2] = k3
        xs[3] = 0.0;            ys[3] = k4
        xs[4] = 0.0;            ys[4] = 0.5 * k5
        xs[5] = k1;             ys[5] = 0.0
        xs[6] = k3;             ys[6] = 0.0
        xs[7] = 0.5 * k4;       ys[7] = 0.0
        xs[8] = k5;             ys[8] = 0.0
        xs[9] = k1;             ys[9] = k2
        xs[10] = k1;            ys[10] = k3 - k1
        xs[11] = k1;            ys[11] = k4 - 2.0 * k1
        xs[12] = k1;            ys[12] = 0.5 * (k5 - k1)
        xs[13] = k3 - k2;       ys[13] = k2
        xs[14] = 0.5 * (k4 - k2); ys[14] = k2
        xs[15] = k5 - 2.0 * k2; ys[15] = k2
        xs[16] = k4 - k3;       ys[16] = 2.0 * k3 - k4
        xs[17] = 2.0 * k3 - k5; ys[17] = k5 - k3
        xs[18] = (2.0 * k4 - k5) / 3.0; ys[18] = (2.0 * k5 - k4) / 3.0

        for j in range(19):
            x = xs[j]
            y = ys[j]
            if x < -FEAS_TOL or y < -FEAS_TOL:
                continue
            if x > k1 + FEAS_TOL or y > k2 + FEAS_TOL:
                continue
            if x + y > k3 + FEAS_TOL:
                continue
            if 2.0 * x + y > k4 + FEAS_TOL:
                continue
            if x + 2.0 * y > k5 + FEAS_TOL:
                continue
            if x < 0.0:
                x = 0.0
            if y < 0.0:
                y = 0.0
            # Prefilter: a point dominated by an already emitted point can
            # never be Pareto-maximal in the final set.
            dominated = ((x <= sum_x and y <= sum_y)
                         or (x <= maxx_x and y <= maxx_y)
                         or (x <= maxy_x and y <= maxy_y))
            if dominated:
                continue
            buf[count, 0] = x
            buf[count, 1] = y
            count += 1
            if x + y > sum_x + sum_y:
                sum_x = x; sum_y = y
            if x > maxx_x:
                maxx_x = x; maxx_y = y
            if y > maxy_y:
                maxy_x = x; maxy_y = y
    return count
