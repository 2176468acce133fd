'''A foliation on F_1 without rational first integral.

The curves X0 = 0 and Y0 = 0 are invariant.  Together with the canonical
data they pin the candidate class T down completely, and T^2 < 0 rules out
any pencil of invariant curves.
'''
from folint import AFFINE, algorithm2, analyze, hirzebruch
from folint.decide import family_for

A = AFFINE.parse("-8*y + 9*x^2*y + 3*y^3 - 3*x^2*y^3")
B = AFFINE.parse("8*x - 3*x^3 - 9*x*y^2 + 3*x^3*y^2 - 2*y^3")

an = analyze(A, B, hirzebruch(1))
print("canonical degrees:", an.canonical_degrees)

cfg = an.config
for p in cfg.points:
    print(p.label, "level", p.level, "nu", p.nu, "terminal" if p.eps else "")

S = an.surface
sigma = [S.parse("X0"), S.parse("Y0")]
fam = family_for(an, sigma)
print("alpha:", fam.alpha_sigma)
print("T =", fam.t_sigma)
print("T^2 =", fam.t_sigma_sq)

print(algorithm2(an, sigma))
