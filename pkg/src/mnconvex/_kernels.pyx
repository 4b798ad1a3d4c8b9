# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: batch means, counter-based uniforms, monotone scans.

Mirrors ``mnconvex._kernels_py`` operation for operation; the test-suite
checks the two agree.
"""
from libc.math cimport sqrt, log, log1p, exp, expm1, fabs, isinf, INFINITY
from libc.stdint cimport uint64_t

cdef double DIAGONAL_GUARD = 1e-8
cdef double PARAM_GUARD = 1e-8

cdef inline double _arith(double hi, double lo) nogil:
    return 0.5 * hi + 0.5 * lo

cdef inline double _geo(double hi, double lo) nogil:
    cdef double prod = hi * lo
    if 1e-300 < prod < 1e300:
        return sqrt(prod)
    return sqrt(hi) * sqrt(lo)

cdef inline double _harm(double hi, double lo) nogil:
    return lo * (hi / _arith(hi, lo))

cdef inline double _log_ratio(double hi, double lo) nogil:
    cdef double r = hi / lo
    if r < 2.0:
        return log1p((hi - lo) / lo)
    if isinf(r):
        return log(hi) - log(lo)
    return log(r)

cdef inline double _logm(double hi, double lo, double d) nogil:
    cdef double d2
    if d < DIAGONAL_GUARD:
        d2 = d * d
        return _geo(hi, lo) * (1.0 + d2 * (1.0 / 24 + d2 * (1.0 / 1920 + d2 / 322560)))
    return (hi - lo) / d

cdef inline double _ident(double hi, double lo, double d) nogil:
    cdef double s2, q
    if d < DIAGONAL_GUARD:
        s2 = 0.25 * d * d
        q = s2 * (1.0 / 3 - s2 * (1.0 / 45 - s2 * (2.0 / 945 - s2 / 4725)))
        return _geo(hi, lo) * exp(q)
    return hi * exp(d / expm1(d) - 1.0)

cdef inline double _log_abs_expm1(double t) nogil:
    if t > 0.0:
        return t + log1p(-exp(-t))
    return log(-expm1(t))

cdef double _alzer_ratio(double p, double hi, double lo, double d) nogil:
    cdef double a = (p + 1.0) * d
    cdef double b = p * d
    cdef double base, factor, sign
    if p > 0.0 or (-1.0 < p < 0.0 and (p + 1.0) > -p):
        base = hi
        a = -a
        b = -b
    else:
        base = lo
    factor = p / (p + 1.0)
    if a < 700.0 and b < 700.0:
        return factor * base * (expm1(a) / expm1(b))
    sign = 1.0 if (a > 0) == (b > 0) else -1.0
    return factor * (sign * exp(_log_abs_expm1(a) - _log_abs_expm1(b) + log(base)))

cdef double _alzer(double p, double hi, double lo, double d) nogil:
    if p == 1.0:
        return _arith(hi, lo)
    if p == -2.0:
        return _harm(hi, lo)
    if fabs(p) < PARAM_GUARD:
        return _logm(hi, lo, d)
    if fabs(p + 1.0) < PARAM_GUARD:
        return (lo / _logm(hi, lo, d)) * hi
    return _alzer_ratio(p, hi, lo, d)

cdef double _power(double t, double hi, double lo, double d) nogil:
    if t == 1.0:
        return _arith(hi, lo)
    if fabs(t) < PARAM_GUARD:
        return _geo(hi, lo)
    if t > 0.0:
        return hi * exp(log1p(0.5 * expm1(-t * d)) / t)
    return lo * exp(log1p(0.5 * expm1(t * d)) / t)

cdef double _mean(int code, double param, double x, double y) nogil:
    cdef double hi, lo, d, r
    if x == y:
        return x
    if x > y:
        hi = x
        lo = y
    else:
        hi = y
        lo = x
    if code == 0:
        r = _arith(hi, lo)
    elif code == 1:
        r = _geo(hi, lo)
    elif code == 2:
        r = _harm(hi, lo)
    elif code == 7:
        r = sqrt(_geo(hi, lo)) * sqrt(_arith(hi, lo))
    else:
        d = _log_ratio(hi, lo)
        if code == 3:
            r = _logm(hi, lo, d)
        elif code == 4:
            r = _ident(hi, lo, d)
        elif code == 5:
            r = _alzer(param, hi, lo, d)
        else:
            r = _power(param, hi, lo, d)
    if r < lo:
        return lo
    if r > hi:
        return hi
    return r


def batch_mean(int code, double param, const double[::1] x, const double[::1] y, double[::1] out):
    cdef Py_ssize_t i, n = x.shape[0]
    if code < 0 or code > 7:
        raise ValueError(f"bad mean code {code}")
    with nogil:
        for i in range(n):
            out[i] = _mean(code, param, x[i], y[i])


cdef inline uint64_t _splitmix(uint64_t seed, uint64_t counter) nogil:
    cdef uint64_t z = seed + (counter + 1) * <uint64_t>0x9E3779B97F4A7C15ULL
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return z ^ (z >> 31)


def uniforms(uint64_t seed, uint64_t start, double[::1] out):
    """Fill ``out[i]`` with the uniform in [0, 1) keyed by (seed, start + i)."""
    cdef Py_ssize_t i, n = out.shape[0]
    with nogil:
        for i in range(n):
            out[i] = <double>(_splitmix(seed, start + <uint64_t>i) >> 11) * (1.0 / 9007199254740992.0)


def monotone_scan(const double[::1] v, double tol):
    """Scan for the first inversion in each direction.

    Returns ``(min_up, up_i, up_j, min_down, down_i, down_j)``: the worst
    normalised margin of the non-decreasing (resp. non-increasing) claim and
    the first index pair violating it by more than ``tol`` (-1 if none).
    """
    cdef Py_ssize_t n = v.shape[0], j
    cdef Py_ssize_t imax = 0, imin = 0
    cdef Py_ssize_t up_i = -1, up_j = -1, down_i = -1, down_j = -1
    cdef double m, min_up = INFINITY, min_down = INFINITY
    if n == 0:
        return (min_up, -1, -1, min_down, -1, -1)
    for j in range(1, n):
        m = (v[j] - v[imax]) / (1.0 + fabs(v[j]) + fabs(v[imax]))
        if m < min_up:
            min_up = m
        if m < -tol and up_j < 0:
            up_i = imax
            up_j = j
        m = (v[imin] - v[j]) / (1.0 + fabs(v[j]) + fabs(v[imin]))
        if m < min_down:
            min_down = m
        if m < -tol and down_j < 0:
            down_i = imin
            down_j = j
        if v[j] > v[imax]:
            imax = j
        if v[j] < v[imin]:
            imin = j
    return (min_up, up_i, up_j, min_down, down_i, down_j)
