"""Exact arithmetic in Q(sqrt d).

Every coordinate in the library is a Scalar a + b*sqrt(d) with rational a, b.
Comparisons are decided exactly, so a point sitting on an edge is never
misclassified by rounding.
"""

from multitile import Scalar, parse_scalar

r2 = Scalar(0, 1, 2)
print("sqrt(2)          =", r2)
print("sqrt(2)^2        =", r2 * r2)
print("1/(1 + sqrt(2))  =", 1 / (1 + r2))

# 140/99 and 99/70 are the classic close rational brackets of sqrt(2)
lo, hi = parse_scalar("140/99"), parse_scalar("99/70")
print("140/99 < sqrt2 < 99/70:", lo < r2 < hi)
print("floor(10*sqrt2)  =", (10 * r2).floor())

# a value that looks like zero in floating point but is not
tiny = parse_scalar("sqrt(2)") - parse_scalar("665857/470832")
print("sqrt2 - 665857/470832 =", tiny, "sign", tiny.sign(), "float", float(tiny))
