"""Independent reference values frozen into the C++ unit tests.

Run with `python3 tests/oracles/derive_oracles.py`. Uses sympy for exact
algebra, mpmath for high-precision evaluation and scipy for an independent
stiff-capable ODE integration. Nothing here shares code with the C++ library.
"""
import mpmath as mp
import sympy as sp
from scipy.integrate import solve_ivp
import numpy as np

mp.mp.dps = 40
s, t, x = sp.symbols("s t x")


def v_sym(j, kappa):
    """v_j(t) by direct symbolic differentiation of the defining recursion."""
    v = sp.exp(-sp.exp(-t) - kappa * t)
    for i in range(1, j):
        v = sp.simplify((kappa + i - sp.exp(-t)) * v - sp.diff(v, t))
    return v


def p_sym(j, kappa):
    w = sp.exp(-sp.exp(-t) - kappa * t)
    return sp.Poly(sp.expand(sp.simplify(v_sym(j, kappa) / w)).subs(sp.exp(-t), s), s)


print("# polynomial factors p_j(s)")
for j, kappa in [(3, 0), (4, 0), (4, sp.Rational(1, 2)), (5, sp.Rational(7, 3))]:
    print(j, kappa, p_sym(j, kappa).all_coeffs()[::-1])

print("# exceptional values, 25 digits")
for k, n in [(2, 1), (2.5, 1), (2.5, 2), (3, 1), (3, 2), (4.7, 1), (4.7, 2), (4.7, 3), (4.7, 4)]:
    kk = mp.mpf(str(k))
    print(k, n, mp.nstr(-mp.sqrt(2 * kk * n - n * n), 25))


def phi(j, kappa, tt):
    """Unwound angle arctan(sqrt(2 kappa j + j^2) v_j / v_{j+1}) + pi, mpmath."""
    kappa = mp.mpf(kappa)
    pj = [mp.mpf(sp.Rational(c).p) / sp.Rational(c).q for c in p_sym(j, sp.nsimplify(kappa)).all_coeffs()[::-1]]
    pn = [mp.mpf(sp.Rational(c).p) / sp.Rational(c).q for c in p_sym(j + 1, sp.nsimplify(kappa)).all_coeffs()[::-1]]
    ss = mp.e ** (-mp.mpf(tt))
    ev = lambda cs: sum(c * ss**i for i, c in enumerate(cs))
    roots = sorted(r for r in mp.polyroots(pn[::-1], maxsteps=200, extraprec=200) if abs(mp.im(r)) < 1e-20 and mp.re(r) > 0)
    passed = sum(1 for r in roots if mp.re(r) > ss)
    return mp.pi + mp.atan(mp.sqrt(2 * kappa * j + j * j) * ev(pj) / ev(pn)) - passed * mp.pi


print("# phi_j(t)")
for j, kappa in [(1, 1), (2, 1), (3, "0.5"), (3, 0)]:
    for tt in [-3, -0.5, 0.01, 0.7, 2, 6]:
        print(j, kappa, tt, mp.nstr(phi(j, kappa, tt), 20))


print("# theta0 by scipy Radau from t=-30 with three-term start")
def theta0_scipy(k, c, t_end):
    a1 = c / 2
    a2 = (2 * k - 1) * a1 / 2
    a3 = ((2 * k - 2) * a2 + 4.0 / 3.0 * a1**3) / 2
    t0 = -30.0
    u = np.exp(t0)
    y0 = np.pi + u * (a1 + u * (a2 + u * a3))
    f = lambda tt, y: [c + (k - np.exp(-tt)) * np.sin(2 * y[0])]
    sol = solve_ivp(f, (t0, t_end), [y0], method="Radau", rtol=1e-13, atol=1e-14)
    return sol.y[0, -1]


for k, c, te in [(2.0, -1.0, -np.log(2.0)), (2.0, -1.0, 0.0), (2.0, -1.0, 3.0), (3.0, -2.0, -np.log(3.0)), (0.5, -0.3, 1.0)]:
    print(k, c, te, repr(theta0_scipy(k, c, te)))

print("# theta_inf by scipy DOP853 backward from t=40")
def theta_inf_scipy(k, c, t_end):
    th_minus = 0.5 * np.arcsin(-c / k)
    f = lambda tt, y: [c + (k - np.exp(-tt)) * np.sin(2 * y[0])]
    sol = solve_ivp(f, (40.0, t_end), [th_minus], method="DOP853", rtol=1e-13, atol=1e-14)
    return sol.y[0, -1]


for k, c, te in [(2.0, -1.0, -np.log(2.0)), (2.0, -1.0, 2.0), (3.0, -2.0, -np.log(3.0))]:
    print(k, c, te, repr(theta_inf_scipy(k, c, te)))

print("# harmonic levels (sympy)")
v = sp.exp(-x**2 / 2)
for n in range(1, 6):
    print(n, sp.factor(sp.simplify(v / sp.exp(-x**2 / 2))))
    v = sp.simplify(x * v - sp.diff(v, x))
