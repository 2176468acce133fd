'''Polynomial first integrals: only invariant curves at infinity may be poles.

On F_2 the curves X0 = 0 and Y0 = 0 lie at infinity.  The restricted search
finds the polynomial x^2 + y^3 + x^4 y^3 of genus 5.
'''
from folint import AFFINE, hirzebruch, polynomial_first_integral

A = AFFINE.parse("2*x + 4*x^3*y^3")
B = AFFINE.parse("3*y^2 + 3*x^4*y^2")

for g in (0, 2, 5):
    v = polynomial_first_integral(A, B, hirzebruch(2), g)
    print("g =", g, "->", v)
    if v.kind == "FirstIntegral":
        print("   polynomial:", v.affine[0])
