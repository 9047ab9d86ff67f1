# Sliding into the abyss on blow-ups of (P^1)^n.
from gkz import curves
from gkz.curves import FmLinearization

lin = FmLinearization(0, (2, 2, 2, 4))
cert = curves.find_abyss_path(lin)
for c in cert.crossings:
    print("cross", c.side, "mu", c.mu)
print("empty at mark", cert.empty_mark)

# Hassett spaces as small perturbations of the symmetric weights
for n in (5, 6, 7):
    for j in curves.hassett_stages(n):
        cert = curves.find_abyss_path(curves.hassett_preset(n, j))
        mus = sorted({c.mu for c in cert.crossings})
        print(n, j, len(cert.crossings), "walls, mu values", mus, cert.method)

# the anticanonical weight of a wall picks up the exceptional divisors
print(curves.fm_wall_mu(FmLinearization(3, (2,) * 5), (1,)))
