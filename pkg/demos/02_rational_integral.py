'''A genus 0 rational first integral found on F_2.

Here T^2 = 0 and K_Z.T = -1/3, so the pencil lives in |6T|.  The complete
linear system is computed exactly and its two generators give the integral.
'''
from folint import AFFINE, algorithm2, analyze, hirzebruch
from folint.decide import family_for
from folint.linsys import complete_linear_system, system_of_class

A = AFFINE.parse("x^4 - x^3*y + x^4*y^3 + 5*x^3*y^4 + 9*x^2*y^5 + 7*x*y^6 + 2*y^7")
B = AFFINE.parse("2*x^4 - 3*x^5*y^2 - 13*x^4*y^3 - 21*x^3*y^4 - 15*x^2*y^5 - 4*x*y^6")

an = analyze(A, B, hirzebruch(2))
S = an.surface
sigma = [S.parse(c) for c in ("X0", "X1", "Y0")]
fam = family_for(an, sigma)

print("terminal points:", [an.config.points[i].label for i in an.config.terminal_ids])
print("T =", fam.t_sigma)
print("T^2 =", fam.t_sigma_sq, "  K_Z.T =", an.KZ.dot(fam.t_sigma))

# the linear system |6T| by hand
sys6 = system_of_class(fam.t_sigma * 6, S)
L = complete_linear_system(sys6, an.config)
print("class", sys6.degree, "dimension", L.proj_dim, "base point free:", L.base_point_free)

v = algorithm2(an, sigma)
print(v)
num, den = v.affine
print("on C^2:  (%s) / (%s)" % (num, den))
