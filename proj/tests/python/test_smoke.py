"""Smoke tests for the python module: exercises each exposed surface once
with known values; the C++ suites carry the detailed coverage."""

import math
import sys

import hopfsoliton as hs


def linspace(lo, hi, n):
    h = (hi - lo) / (n - 1)
    return [lo + i * h for i in range(n)]


def check(name, cond):
    print(("PASS" if cond else "FAIL") + " " + name)
    return cond


def main():
    ok = True

    p = hs.surface_params(math.exp(-2.0), math.exp(-1.0))
    ok &= check("surface params", abs(p.a + 2.0) < 1e-15 and abs(p.mu + 1.0) < 1e-15
                and p.mu + p.c_k == 1.0)

    pe = hs.surface_params(math.exp(-1.0), math.exp(-1.0))
    ok &= check("equal moduli", pe.equal_moduli() and not p.equal_moduli())

    grid = linspace(-20.0, 20.0, 401)
    sol = hs.solve_profile(p, grid)
    ok &= check("gauge kappa(0)=1/2", abs(sol.k_of_x(0.0) - 0.5) < 1e-12)
    ok &= check("kappa inverse round trip", abs(hs.kappa_inverse(sol, sol.k_of_x(3.7)) - 3.7) < 1e-9)

    g = sol.as_metric_profile()
    ok &= check("soliton residual", hs.soliton_residual(g, p.mu, grid) < 1e-8)
    ok &= check("pluriclosed", hs.is_pluriclosed(g, grid)[0])

    rb = hs.bismut_ricci(g, 0.4)
    ly = hs.lie_derivative_Y(g, 0.4)
    gap = max(abs(rb[i][j] - p.mu * ly[i][j]) for i in range(2) for j in range(2))
    ok &= check("soliton equation rho_B = mu L_Y g", gap < 1e-12)

    orc = hs.bismut_ricci_oracle(g, 0.4, 1e-3)
    gap = max(abs(rb[i][j] - orc[i][j]) for i in range(2) for j in range(2))
    ok &= check("curvature oracle agrees", gap < 1e-7)

    ok &= check("logistic profile", abs(hs.logistic_profile(1.0, 0.0) - 0.5) < 1e-15)

    items, all_pass = hs.check_asymptotics(g, p, 30.0)
    ok &= check("asymptotics report", all_pass and len(items) == 8)

    ok &= check("even-type frobenius", hs.frobenius_residual(g, p, 1.3) < 1e-10)
    ok &= check("even-type isotropy", hs.isotropy_residual(g, p, 1.3) < 1e-10)
    res, lam, fit = hs.projection_identity_residual(g, p, 1.3)
    ok &= check("even-type projection", res < 1e-10 and abs(lam - p.a / p.b) < 1e-10)
    ok &= check("odd-type", hs.odd_type_residual(g, p, 1.3) < 1e-10)

    phi = hs.phi_solve(0.3 + 0.4j, 0.5 - 0.1j, p)
    e1 = -2.0 * p.a / (p.a + p.b)
    e2 = -2.0 * p.b / (p.a + p.b)
    res = abs(abs(0.3 + 0.4j) ** 2 * phi ** e1 + abs(0.5 - 0.1j) ** 2 * phi ** e2 - 1.0)
    ok &= check("phi defining identity", res < 1e-12)

    L = hs.ddbar_log_phi(0.8 + 0.1j, 0.2 + 0.6j, p)
    tr = (L[0][0] + L[1][1]).real
    det = (L[0][0] * L[1][1] - L[0][1] * L[1][0]).real
    lo = 0.5 * (tr - math.sqrt(max(0.0, tr * tr - 4.0 * det)))
    ok &= check("ddbar log phi semipositive", lo > -1e-6)

    traj, final = hs.run_flow(hs.soliton_with_bump(sol, 1.5, 1.0, 3.0), p, 50.0,
                              L=20.0, N=501, record_dt=0.5, target=1e-3)
    ok &= check("flow converges", traj[-1].aligned_sup_error < 1e-3)
    env = [max(d.C_low, d.C_high) for d in traj]
    ok &= check("envelope monotone", all(b <= a + 1e-6 for a, b in zip(env, env[1:])))
    ok &= check("flow state in (0,1)", all(0.0 < k < 1.0 for k in final.k()))

    print("smoke tests:", "OK" if ok else "FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
