"""Pure-Python kernels.

Same contracts as the compiled ``_ckernels`` module.  Inputs are anything
indexable as ``a[i][j]`` / ``a[i][j][k]``; values are exact Python numbers (or
any ring element supporting ``+`` and ``*``), so nothing here can overflow.
"""


def _lists(a):
    return a.tolist() if hasattr(a, "tolist") else a


def mobius_matrix(leq, order):
    """mu(x, y) = -sum_{x <= a < y} mu(x, a), mu(x, x) = 1; zero off the order."""
    leq = _lists(leq)
    order = _lists(order)
    n = len(leq)
    mu = [[0] * n for _ in range(n)]
    for x in range(n):
        row = mu[x]
        lx = leq[x]
        seen = []
        for y in order:
            if not lx[y]:
                continue
            if y == x:
                row[y] = 1
            else:
                s = 0
                for a in seen:
                    if leq[a][y]:
                        s += row[a]
                row[y] = -s
            seen.append(y)
    return mu


def tri_mul(leq, f, g):
    """(f |> g)(x,y,z) = sum over x<=a<=y<=b<=z of f(x,a,a) g(a,y,b) f(b,b,z)."""
    leq = _lists(leq)
    f = _lists(f)
    g = _lists(g)
    n = len(leq)
    up = [[j for j in range(n) if leq[i][j]] for i in range(n)]
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for x in range(n):
        fx = f[x]
        for y in up[x]:
            left = [(a, fx[a][a]) for a in up[x] if leq[a][y]]
            left = [(a, v) for a, v in left if v != 0]
            for z in up[y]:
                right = [(b, f[b][b][z]) for b in up[y] if leq[b][z]]
                s = 0
                for a, fa in left:
                    ga = g[a][y]
                    for b, fb in right:
                        s += fa * ga[b] * fb
                out[x][y][z] = s
    return out


def jmobius_coeffs(leq, mu, ranks, total_rank):
    """Coefficients of sum_{x<=y<=z} mu(x,y) mu(y,z) t^(3R - rk x - rk y - rk z)."""
    leq = _lists(leq)
    mu = _lists(mu)
    ranks = _lists(ranks)
    n = len(leq)
    up = [[j for j in range(n) if leq[i][j]] for i in range(n)]
    coeffs = [0] * (3 * total_rank + 1)
    base = 3 * total_rank
    for x in range(n):
        rx = ranks[x]
        for y in up[x]:
            mxy = mu[x][y]
            if mxy == 0:
                continue
            ry = ranks[y]
            muy = mu[y]
            for z in up[y]:
                coeffs[base - rx - ry - ranks[z]] += mxy * muy[z]
    return coeffs
