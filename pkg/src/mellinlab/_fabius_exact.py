"""Exact rational values of the Fabius-type base function at dyadic knots.

The base function theta: [0,1] -> [0,1] is pinned down by

    theta'(x) = 2*theta(2x)   on [0, 1/2],
    theta(0) = 0, theta(1) = 1,
    theta(x) + theta(1-x) = 1,

and is evaluated here *exactly* (as `fractions.Fraction`) at every dyadic
knot k/2^d up to a requested depth.  The route is a moment recursion rather
than repeated spline integration:

* Base moments A_m = int_0^1 x^m theta(x) dx close under two exact relation
  families (symmetry closes even m; the scaling identity
  int_0^y f = f(y/2) closes odd m after eliminating A_{m+1}).
* Interval moments of the reflected extension f (f = theta on [0,1],
  f(y) = theta(2-y) on [1,2], antiperiodic continuation on [2,4]) satisfy a
  downward recursion in the mesh depth obtained by integrating
  f'(t) = 2 f(2t) by parts once per level.
* Depth-(d+1) knot values are prefix sums of the depth-d zeroth moments.

Everything here is integer/rational arithmetic; floats appear only in the
table exports consumed by the evaluation kernels.
"""
from fractions import Fraction
from math import comb, factorial

import numpy as np

# Taylor degree per spline piece. Degree 6 about interval centers leaves a
# truncation error ~ max|theta^(7)| * (2^-(L+1))^7 / 7!, i.e. below double
# precision for mesh level L >= 10.
PIECE_DEGREE = 6


def base_moments(max_m):
    """Exact A_m = int_0^1 x^m theta(x) dx for m = 0..max_m.

    Even orders follow from the symmetry theta(x) + theta(1-x) = 1:

        A_m (1 + (-1)^m) + sum_{j<m} C(m,j) (-1)^j A_j = 1/(m+1).

    Odd orders follow by eliminating A_{m+1} between that relation at m+1
    and the scaling relation at m+1 (from int_0^y f = theta(y/2) on [0,2]):

        A_n (1 + (-1)^n) + sum_{j<n} C(n,j) (-1)^j 2^{n-j} A_j
            + n 2^n A_{n-1} - 2^n = 0,      n = m+1.
    """
    A = [Fraction(1, 2)]
    for m in range(1, max_m + 1):
        if m % 2 == 0:
            s = sum(Fraction(comb(m, j)) * (-1) ** j * A[j] for j in range(m))
            A.append((Fraction(1, m + 1) - s) / 2)
        else:
            n = m + 1
            coeff = Fraction(comb(n, m)) * (-1) ** m + Fraction(n) * 2 ** n
            s = sum(
                Fraction(comb(n, j)) * (-1) ** j * (Fraction(2) ** (n - j) - 1) * A[j]
                for j in range(m)
            )
            A.append((Fraction(2) ** n - Fraction(1, n + 1) - s) / coeff)
    return A


def knot_table(depth):
    """Exact theta(k/2^d) for all dyadics of depth <= `depth` in [0,1].

    Returns a dict Fraction -> Fraction (keys in lowest terms).
    """
    max_m = depth + 1
    A = base_moments(max_m)
    # B_m = int_1^2 (x-1)^m f(x) dx with f(1+v) = theta(1-v).
    B = [
        sum(Fraction(comb(m, j)) * (-1) ** j * A[j] for j in range(m + 1))
        for m in range(max_m + 1)
    ]
    valtab = {Fraction(0): Fraction(0), Fraction(1): Fraction(1)}

    def f_at(num, d):
        # f(num/2^d) on [0,2]: reflect onto [0,1] and look up.
        k = num if num <= 2 ** d else 2 * 2 ** d - num
        return valtab[Fraction(k, 2 ** d)]

    mu_prev = None
    for d in range(depth + 1):
        morders = max_m - d
        if d == 0:
            mu = [[A[m], B[m]] for m in range(morders + 1)]
        else:
            # New knot values at depth d: theta(k/2^d) = int_0^{k/2^{d-1}} f
            # for odd k, i.e. prefix sums of the depth-(d-1) zeroth moments.
            pref = [Fraction(0)]
            for j in range(2 ** d):
                pref.append(pref[-1] + mu_prev[0][j])
            for k in range(1, 2 ** d, 2):
                valtab[Fraction(k, 2 ** d)] = pref[k]
            h = Fraction(1, 2 ** d)
            mu = []
            for m in range(morders + 1):
                row = []
                for j in range(2 ** (d + 1)):
                    fb = f_at(j + 1, d)
                    if j + 1 <= 2 ** d:
                        M = mu_prev[m + 1][j]
                    else:
                        # Antiperiodicity f(x) = -f(x-2) holds on [2,4],
                        # which is all the recursion ever touches there.
                        M = -mu_prev[m + 1][j - 2 ** d]
                    row.append((h ** (m + 1) * fb - M / 2 ** (m + 1)) / (m + 1))
                mu.append(row)
        mu_prev = mu
    return valtab


def extension_exact(num, den_pow, valtab):
    """Exact extended value f(num/2^den_pow) for the derivative chain.

    f = theta on [0,1], theta(2-y) on [1,2]; each further unit interval
    [m, m+1] carries the shape theta(y-m) (m even) or theta(m+1-y) (m odd)
    with sign (-1)^popcount(m//2).  The pattern is what makes
    f'(t) = 2 f(2t) hold on all of [0, inf).
    """
    m, rnum = divmod(num, 2 ** den_pow)
    sign = -1 if (m >> 1).bit_count() % 2 else 1
    if rnum == 0:
        return Fraction(0) if m % 2 == 0 else Fraction(sign)
    base = Fraction(rnum, 2 ** den_pow)
    if m % 2:
        base = 1 - base
    return sign * valtab[base]


def spline_tables(level):
    """Float tables for the mesh-`level` piecewise-Taylor evaluator.

    Returns (coeff, knots):
      coeff[i, b] = theta^(b)(x0_i) / b!  at centers x0_i = (2i+1)/2^(level+1),
                    computed exactly via theta^(b)(x) = 2^(b(b+1)/2) f(2^b x);
      knots[k]    = theta(k / 2^(level+1)), exact rationals rounded once.
    """
    valtab = knot_table(level + 1)
    nk = 2 ** (level + 1)
    knots = np.array([float(valtab[Fraction(k, nk)]) for k in range(nk + 1)])
    coeff = np.empty((2 ** level, PIECE_DEGREE + 1))
    for i in range(2 ** level):
        x0num = 2 * i + 1  # x0 = x0num / 2^(level+1)
        for b in range(PIECE_DEGREE + 1):
            val = extension_exact(x0num * 2 ** b, level + 1, valtab)
            coeff[i, b] = float(
                Fraction(2) ** (b * (b + 1) // 2) * val / factorial(b)
            )
    return coeff, knots
