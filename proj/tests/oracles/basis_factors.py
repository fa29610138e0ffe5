"""Closed generating-function factors against brute-force sums and quadrature.

Each closed factor is sqrt of the squared-norm series sum_k w^{2k} ||P_k||^2
(or the integral of the squared generating function for Chebyshev), with the
per-basis normalisation used in the library.
"""
from mpmath import mp, mpf, quad, sqrt, log, pi, gamma, hyp2f1, factorial

mp.dps = 30
TERMS = 5000


def closed(kind, w, al):
    if kind == "hermite-geometric":
        return 1 / sqrt(1 - w * w)
    if kind == "chebyshev-t":
        return sqrt(2 / pi) * sqrt(1 + (1 - w * w) / (2 * w) * log((1 + w) / (1 - w)))
    if kind == "chebyshev-u":
        return 2 / (sqrt(pi) * (1 - w * w))
    if kind == "legendre":
        return sqrt(log((1 + w) / (1 - w)) / w)
    if kind == "laguerre":
        return sqrt(gamma(al + 1) / (1 - w * w) ** (al + 1))
    if kind == "gegenbauer":
        z = 4 * w * w / (1 + w * w) ** 2
        reg = hyp2f1(al, al + mpf(1) / 2, al + 1, z) / gamma(al + 1)
        return gamma(al) / (1 + w * w) ** al * sqrt(gamma(al + mpf(1) / 2) / (sqrt(pi) * 2 ** (1 - 2 * al))) * sqrt(reg)


def brute(kind, w, al):
    if kind == "hermite-geometric":
        return sqrt(sum(w ** (2 * k) for k in range(TERMS)))
    if kind in ("chebyshev-t", "chebyshev-u"):
        # truncated generating function via the three-term recurrence
        def gf(x):
            p0, p1 = mpf(1), (x if kind == "chebyshev-t" else 2 * x)
            s, wk = p0 + w * p1, w
            for _ in range(2, 400):
                p0, p1 = p1, 2 * x * p1 - p0
                wk *= w
                s += wk * p1
            return s
        return sqrt(2 / pi) * sqrt(quad(lambda x: gf(x) ** 2, [-1, 0, 1]))
    if kind == "legendre":
        return sqrt(sum(w ** (2 * k) * 2 / (2 * k + 1) for k in range(TERMS)))
    if kind == "laguerre":
        return sqrt(sum(w ** (2 * k) * gamma(k + al + 1) / factorial(k) for k in range(TERMS)))
    if kind == "gegenbauer":
        return sqrt(sum(w ** (2 * k) * gamma(k + 2 * al) / (factorial(k) * (k + al)) for k in range(TERMS)))


if __name__ == "__main__":
    for kind in ("hermite-geometric", "chebyshev-t", "chebyshev-u", "legendre", "laguerre", "gegenbauer"):
        for w in ("0.1", "0.5", "0.9"):
            w = mpf(w)
            al = mpf("0.7")
            c, b = closed(kind, w, al), brute(kind, w, al)
            print(f"{kind:18s} w={mp.nstr(w, 2)} closed={mp.nstr(c, 17)} brute={mp.nstr(b, 17)} rel={mp.nstr(abs(c - b) / b, 3)}")
