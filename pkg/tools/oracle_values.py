"""Generate high-precision reference values with mpmath (run once, paste into tests/oracle.py).

    python3 tools/oracle_values.py > tests/oracle.py

mpmath is only needed here; the package itself never imports it.
"""

import mpmath as mp

mp.mp.dps = 40

K = 2 * mp.pi
KZ = mp.mpf("0.995") * K
KP = mp.sqrt(K * K - KZ * KZ)


def s_norm(parity, a):
    sec = 1 / mp.cosh(mp.pi * a)
    if parity == "even":
        return mp.sqrt(mp.pi * sec) / abs(mp.gamma(mp.mpf(3) / 4 - 0.5j * a))
    return mp.sqrt(2 * mp.pi * sec) / abs(mp.gamma(mp.mpf(1) / 4 - 0.5j * a))


def profile(parity, q, t, kp=KP):
    t = mp.mpf(t)
    n = 1 if parity == "even" else 3
    zeta = kp * t * t
    g = mp.exp(-0.5j * zeta) * mp.hyp1f1(mp.mpf(n) / 4 - 0.5j * q, mp.mpf(n) / 2, 1j * zeta)
    if parity == "even":
        return s_norm(parity, q) * g
    return s_norm(parity, q) * mp.sqrt(kp) * t * g


def psi_xy(parity, a, x, y):
    z = mp.sqrt(2 * (mp.mpf(x) + 1j * mp.mpf(y)))
    u, v = mp.re(z), mp.im(z)
    if v < 0:
        u, v = -u, -v
    return profile(parity, a, u) * profile(parity, -a, v)


def c(z):
    z = mp.mpc(z)
    return complex(float(z.real), float(z.imag))


def main():
    out = {}
    out["gamma_3/4-i"] = c(mp.gamma(mp.mpf(3) / 4 - 1j))
    out["gamma_1/4+2.5i"] = c(mp.gamma(mp.mpf(1) / 4 + 2.5j))
    out["gamma_-2.5+0.5i"] = c(mp.gamma(mp.mpf("-2.5") + 0.5j))
    out["hyp1f1_1/4-i_1/2_5i"] = c(mp.hyp1f1(mp.mpf(1) / 4 - 1j, mp.mpf(1) / 2, 5j))
    out["hyp1f1_3/4+0.5i_3/2_50i"] = c(mp.hyp1f1(mp.mpf(3) / 4 + 0.5j, mp.mpf(3) / 2, 50j))
    out["hyp1f1_1/4+1.5i_1/2_150i"] = c(mp.hyp1f1(mp.mpf(1) / 4 + 1.5j, mp.mpf(1) / 2, 150j))
    out["hyp1f1_3/4-2.5i_3/2_199i"] = c(mp.hyp1f1(mp.mpf(3) / 4 - 2.5j, mp.mpf(3) / 2, 199j))
    out["s_even_0"] = float(s_norm("even", 0))
    out["s_odd_0"] = float(s_norm("odd", 0))
    out["s_even_-2"] = float(s_norm("even", -2))
    out["s_odd_-2"] = float(s_norm("odd", -2))
    out["U_even_a-2_u1"] = c(profile("even", -2, 1))
    out["U_odd_a-2_u1"] = c(profile("odd", -2, 1))
    out["U_odd_a-2_u-3.7"] = c(profile("odd", -2, "-3.7"))
    out["V_even_a-2_v2.5"] = c(profile("even", 2, "2.5"))
    out["dU_even_a-2_u1"] = c(mp.diff(lambda t: profile("even", -2, t), 1))
    out["dU_odd_a-2_u2"] = c(mp.diff(lambda t: profile("odd", -2, t), 2))
    # Cartesian derivatives of psi for the field oracle: odd mode, a = -2, point (x, y) = (-1.3, 2.1)
    x0, y0 = mp.mpf("-1.3"), mp.mpf("2.1")
    out["psi_odd_xy"] = c(psi_xy("odd", -2, x0, y0))
    out["psi_x_odd_xy"] = c(mp.diff(lambda x: psi_xy("odd", -2, x, y0), x0))
    out["psi_y_odd_xy"] = c(mp.diff(lambda y: psi_xy("odd", -2, x0, y), y0))
    print('"""Reference values from tools/oracle_values.py (mpmath, 40 digits)."""')
    print()
    print("ORACLE = {")
    for k, v in out.items():
        print(f"    {k!r}: {v!r},")
    print("}")
    print(f"K_PERP_REF = {float(KP)!r}")


if __name__ == "__main__":
    main()
