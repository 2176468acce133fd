'''Some small foliations whose answer is known by hand.'''
from folint import AFFINE, PROJECTIVE, algorithm2, analyze, hirzebruch, polynomial_first_integral

cases = [
    # (A, B, surface, what to expect)
    ("-y", "x", PROJECTIVE, "y/x"),
    ("2*x", "2*y", PROJECTIVE, "x^2 + y^2"),
    ("-3*x^2", "1", PROJECTIVE, "y - x^3"),
    ("-y", "1", PROJECTIVE, "none, y exp(-x) is transcendental"),
    ("1", "0", hirzebruch(1), "x, the ruling"),
]

for a, b, S, expected in cases:
    an = analyze(AFFINE.parse(a), AFFINE.parse(b), S)
    v = algorithm2(an)
    print("(%s) dx + (%s) dy on %s" % (a, b, S))
    print("   expected:", expected)
    print("   rational:", v)
    print("   polynomial, g = 0:", polynomial_first_integral(None, None, None, 0, analysis=an))
