'''Asking for a genus 10 integral on P^2.

With 36 points in the configuration and 22 free parameters, the maximum of
T_alpha^2 is 0 and the genus picks gamma = 6.  Other genera are refused.
'''
import time

from folint import AFFINE, PROJECTIVE, algorithm3, analyze

A = AFFINE.parse("-4*x^5*y - y^6 - 5*x^4*y^6")
B = AFFINE.parse("x^2 + x^6 + 6*x*y^5 + 6*x^5*y^5")

t0 = time.perf_counter()
an = analyze(A, B, PROJECTIVE)
print("points:", an.config.n, " terminal:", an.config.d)

sigma = [PROJECTIVE.parse(c) for c in "XYZ"]
for g in (0, 5, 10):
    print("g =", g, "->", algorithm3(an, sigma, g))
print("%.2f s" % (time.perf_counter() - t0))
