"""Reference values for tests/test_analytic.cpp, computed independently with
mpmath at 30 digits (Bessel K0 for the product-normal density, mpmath.quad
for every integral).  Run: python3 tests/reference/analytic_values.py"""
from mpmath import mp, mpf, quad, besselk, pi, atan, erfc, sqrt, exp, inf, ncdf, npdf
mp.dps = 30
Phi = lambda t: ncdf(t); phi = lambda t: npdf(t)
fyz = lambda t: besselk(0, abs(t))/pi
c0 = (pi + atan(mpf(24)/7))/(2*pi)
c2 = 4/pi**2*quad(lambda v: atan(2*v)/(1+v*v), [0, 1, inf])
c1 = 2*quad(lambda t: Phi(2*sqrt(t))*fyz(t), [0, 1, inf]) - mpf(1)/2
print("c0", c0); print("c2", c2); print("c1", c1)
print("fyz(1)", fyz(1), "fyz(0.1)", fyz(mpf('0.1')), "fyz(5)", fyz(5))
print("w0+", 4/(1-c0)/(2*pi)*sqrt(pi/10))
# vmax
def vGS(y): return 2*quad(lambda v: (Phi(y-2*v)-Phi(-y+2*v))*phi(v), [0, y/2])
def vCS(y): return 4/pi**2*quad(lambda v: atan(y-2*v)/(1+v*v), [0, y/2])
def vGN(y):
    # P(V<=y): YZ<0: sqrt(x^2+4|t|) <= y ; YZ>=0: |x|+2sqrt(t) <= y
    neg = quad(lambda t: fyz(t)*(2*Phi(sqrt(max(y*y-4*t,0)))-1), sorted({mpf(0), min(mpf(1), y*y/4), y*y/4})) if y>0 else 0
    pos = quad(lambda t: fyz(t)*(2*Phi(y-2*sqrt(t))-1), sorted({mpf(0), min(mpf(1), y*y/4), y*y/4})) if y>0 else 0
    return neg+pos
for y in [1,3]:
    print("vmax y=%g GS %s CS %s GN %s" % (y, vGS(mpf(y)), vCS(mpf(y)), vGN(mpf(y))))
# densities
dGS = lambda w: 4/(1-c0)*quad(lambda v: phi(w+2*v)*phi(v), [0, inf])
dCS = lambda w: 4/(pi**2*(1-c2))*quad(lambda v: 1/((1+v*v)*(1+(w+2*v)**2)), [0, inf])
dGN = lambda w: (phi(w) + 2*quad(lambda t: phi(w+2*sqrt(t))*fyz(t), [0, 1, inf]))/(1-c1)
for w in [mpf('0.5'), mpf(2)]:
    print("density w=%s GS %s CS %s GN %s" % (w, dGS(w), dCS(w), dGN(w)))
# kappa
kGSclosed = lambda z: (1-(2/pi)*atan(2*(z+1)/(z-1)))/(1-c0)
def kGS(z):
    cut=(z-1)/4
    return 4/(1-c0)*quad(lambda w: quad(lambda v: phi(w+2*v)*phi(v), [0, cut*w]), [0, 1, inf])
def kCS(z):
    cut=(z-1)/4
    return 4/(pi**2*(1-c2))*quad(lambda w: quad(lambda v: 1/((1+v*v)*(1+(w+2*v)**2)), [0, cut*w]), [0,1,10,inf])
def kGN(z):
    cut=(z-1)/4
    def outer(w):
        negcap=(z*z-1)*w*w/4
        neg = quad(fyz, [0, min(negcap,1), negcap]) if negcap>0 else 0
        pcap=(cut*w)**2
        pos = quad(lambda t: phi(w+2*sqrt(t))*fyz(t), [0, min(pcap,1), pcap]) if pcap>0 else 0
        return 2*phi(w)*neg + 2*pos
    return quad(outer, [0,1,3,inf])/(1-c1)
for z in [2,3,5]:
    z=mpf(z); print("kappa z=%s GSclosed %s GS %s" % (z, kGSclosed(z), kGS(z)))
mp.dps=15
for z in [2,3]:
    z=mpf(z); print("kappa z=%s CS %s GN %s" % (z, kCS(z), kGN(z)))
