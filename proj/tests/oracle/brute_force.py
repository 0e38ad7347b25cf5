"""Independent brute-force oracles used to freeze expected values in the C++ tests.

Ordered-tuple enumeration of nonparametric resamples (n^n per group), so it
shares no code path with the composition-based enumerator in core/.
"""
import itertools
from fractions import Fraction
from scipy.stats import norm


def theta_hat(groups):
    return max(sum(g) / len(g) for g in groups)


def resamples(group):
    n = len(group)
    for idx in itertools.product(range(n), repeat=n):
        yield [group[i] for i in idx], Fraction(1, n ** n)


def joint(groups):
    per = [list(resamples(g)) for g in groups]
    for combo in itertools.product(*per):
        p = Fraction(1)
        for _, q in combo:
            p *= q
        yield [c[0] for c in combo], p


def e_theta(groups):
    return sum(float(p) * theta_hat(y) for y, p in joint(groups))


def level1(groups):
    e1 = e_theta(groups)
    t = theta_hat(groups)
    return e1 - t, 2 * t - e1


def level2(groups):
    t1 = 2 * theta_hat(groups) - e_theta(groups)
    e = sum(float(p) * (2 * theta_hat(y) - e_theta(y)) for y, p in joint(groups))
    a2 = e - t1
    return a2, t1 - a2


def jackknife(groups):
    flat = [(gi, j) for gi, g in enumerate(groups) for j in range(len(g))]
    N = len(flat)
    loo = []
    for gi, j in flat:
        gs = [list(g) for g in groups]
        del gs[gi][j]
        loo.append(theta_hat(gs))
    return N * theta_hat(groups) - (N - 1) * sum(loo) / N


if __name__ == "__main__":
    print("A1 [0,2],[3,5]:", level1([[0, 2], [3, 5]]))
    print("A1 [0,2],[1,1.5]:", level1([[0, 2], [1, 1.5]]))
    print("A2 [0,2],[1,1.5]:", level2([[0, 2], [1, 1.5]]))
    print("A1 [0,1,3],[0.5,2]:", level1([[0, 1, 3], [0.5, 2]]))
    print("A2 [0,1,3],[0.5,2]:", level2([[0, 1, 3], [0.5, 2]]))
    print("A1 [1,2],[0,3],[1.5,1.5]:", level1([[1, 2], [0, 3], [1.5, 1.5]]))
    print("JK [0,2],[1,1]:", jackknife([[0, 2], [1, 1]]))
    print("JK [0,2],[3,5]:", jackknife([[0, 2], [3, 5]]))
    print("JK [1,4,2],[3,0,2.5]:", repr(jackknife([[1, 4, 2], [3, 0, 2.5]])))
    for p in [1e-300, 1e-10, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.975, 0.999999]:
        print("ppf", p, repr(norm.ppf(p)))
