"""Pure-Python fallback for the compiled kernels in ``_ckernels.pyx``."""


def pfaffian_mod(n, flat, p):
    """Pfaffian of a skew-symmetric ``n`` x ``n`` matrix over GF(p).

    ``flat`` is the row-major matrix with entries already reduced into
    ``[0, p)``.  Returns the residue in ``[0, p)``.
    """
    if n % 2:
        return 0
    A = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
    pf = 1
    for k in range(0, n, 2):
        row = A[k]
        piv = k + 1
        while piv < n and row[piv] == 0:
            piv += 1
        if piv == n:
            return 0
        k1 = k + 1
        if piv != k1:
            A[k1], A[piv] = A[piv], A[k1]
            for r in A:
                r[k1], r[piv] = r[piv], r[k1]
            pf = -pf
            row = A[k]
        a = row[k1]
        pf = pf * a % p
        inv = pow(a, p - 2, p)
        r0 = A[k]
        r1 = A[k1]
        s0 = [x * inv % p for x in r0]
        s1 = [x * inv % p for x in r1]
        for i in range(k + 2, n):
            Ai = A[i]
            aik = Ai[k]
            aik1 = Ai[k1]
            if aik == 0 and aik1 == 0:
                continue
            for j in range(k + 2, n):
                Ai[j] = (Ai[j] + aik * s1[j] - aik1 * s0[j]) % p
    return pf % p


BACKEND = "python"
