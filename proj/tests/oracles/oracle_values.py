"""Independent numpy oracles for frozen expected values used in the C++ tests.

Run: python3 tests/oracles/oracle_values.py
"""
import numpy as np

LN2 = np.log(2.0)


def entropy(rho):
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    w = w[w > 1e-14]
    return float(-(w * np.log(w)).sum())


def ptrace_b(rho, da, db):
    return np.trace(rho.reshape(da, db, da, db), axis1=1, axis2=3)


def ptrace_a(rho, da, db):
    return np.trace(rho.reshape(da, db, da, db), axis1=0, axis2=2)


def bell():
    v = np.zeros(4, complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return np.outer(v, v.conj())


def werner(w):
    return w * bell() + (1 - w) * np.eye(4) / 4


def qubit_basis(theta, phi):
    a0 = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    a1 = np.array([-np.exp(-1j * phi) * np.sin(theta / 2), np.cos(theta / 2)])
    return [a0, a1]


def dephase_a(rho, basis, db=2):
    out = np.zeros_like(rho)
    for v in basis:
        p = np.kron(np.outer(v, v.conj()), np.eye(db))
        out += p @ rho @ p
    return out


def dephase_b(rho, basis, da=2):
    out = np.zeros_like(rho)
    for v in basis:
        p = np.kron(np.eye(da), np.outer(v, v.conj()))
        out += p @ rho @ p
    return out


def mutual(rho):
    return entropy(ptrace_b(rho, 2, 2)) + entropy(ptrace_a(rho, 2, 2)) - entropy(rho)


def wootters_eof(rho):
    sy = np.array([[0, -1j], [1j, 0]])
    yy = np.kron(sy, sy)
    r = rho @ yy @ rho.conj() @ yy
    lam = np.sqrt(np.abs(np.sort(np.linalg.eigvals(r).real)[::-1]))
    c = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    x = (1 + np.sqrt(1 - c * c)) / 2
    if x >= 1:
        return c, 0.0
    return c, float(-x * np.log(x) - (1 - x) * np.log(1 - x))


def grid_min_discord(rho, nt=181, nph=361):
    best = np.inf
    for t in np.linspace(0, np.pi, nt):
        for p in np.linspace(0, 2 * np.pi, nph, endpoint=False):
            b = qubit_basis(t, p)
            best = min(best, mutual(rho) - mutual(dephase_a(rho, b)))
    return best


def eta(rho, ba, bb):
    ja = entropy(dephase_a(rho, ba)) - entropy(rho)
    s = dephase_b(rho, bb)
    jb = entropy(dephase_a(s, ba)) - entropy(s)
    return ja - jb


def grid_max_eta(rho, n=25):
    best = -np.inf
    ts = np.linspace(0, np.pi, n)
    ps = np.linspace(0, 2 * np.pi, 2 * n - 1, endpoint=False)
    for t1 in ts:
        for p1 in ps:
            ba = qubit_basis(t1, p1)
            for t2 in ts:
                for p2 in ps:
                    best = max(best, eta(rho, ba, qubit_basis(t2, p2)))
    return best


if __name__ == "__main__":
    print("S(diag(.25,.75))       =", repr(entropy(np.diag([0.25, 0.75]))))
    print("I(werner 0.5)          =", repr(np.log(4) - entropy(werner(0.5))))
    print("E(sqrt.8|00>+sqrt.2|11>)=", repr(-0.8 * np.log(0.8) - 0.2 * np.log(0.2)))
    print("eig [[.6,.2],[.2,.4]]  =", np.linalg.eigvalsh(np.array([[0.6, 0.2], [0.2, 0.4]])))
    print("EoF(werner 0.9)        =", wootters_eof(werner(0.9)))
    print("D_A(werner 0.5) grid   =", repr(grid_min_discord(werner(0.5))))
    print("N(werner 0.5) grid     =", repr(grid_max_eta(werner(0.5))))
