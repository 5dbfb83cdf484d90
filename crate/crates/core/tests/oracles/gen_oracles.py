# Offline multiprecision oracle for the frozen constants in the core test suite.
# Requires mpmath. Run: python3 gen_oracles.py
import mpmath as mp

mp.mp.dps = 40
pi = mp.pi


def c(z):
    z = mp.mpc(z)
    return "C64::new(%s, %s)" % (mp.nstr(z.real, 20, min_fixed=-30, max_fixed=30), mp.nstr(z.imag, 20, min_fixed=-30, max_fixed=30))


def r(x):
    return mp.nstr(mp.mpf(x), 20)


def h(s):
    return pi ** (-s / 2) * mp.gamma(s / 2)


print("// log_gamma")
for z in [mp.mpf("0.25"), mp.mpc(3, 5), mp.mpc(-2.5, 0.5), mp.mpc(0.25, 50), mp.mpc(-7.3, -12)]:
    print(c(z), "=>", c(mp.loggamma(z)))
print("// digamma")
for z in [mp.mpf(1), mp.mpc(0.7, 2), mp.mpc(-3.5, 1.25), mp.mpc(10, -40)]:
    print(c(z), "=>", c(mp.digamma(z)))
print("// h(0.5+14i)", c(h(mp.mpc(0.5, 14))))
print("// theta(100)", r(mp.siegeltheta(100)), " theta(17.5)", r(mp.siegeltheta(17.5)))
print("// zeta(0.5)", r(mp.zeta(0.5)))
for s in [mp.mpc(0.3, 11), mp.mpc(0.5, 100), mp.mpc(2.5, -30), mp.mpc(0.9, 60)]:
    print("// zeta", c(s), "=>", c(mp.zeta(s)))
print("// zeta'(0)", r(mp.zeta(0, derivative=1)), " -0.5 log 2pi", r(-mp.log(2 * pi) / 2))
for s in [mp.mpc(0.4, 3), mp.mpc(0.5, 40)]:
    print("// zeta'", c(s), "=>", c(mp.zeta(s, derivative=1)))
print("// Z(t)")
for t in [0, 14.1, 14.2, 25, 50, 99.5]:
    print(r(t), "=>", r(mp.siegelz(t)))
