"""Numba twins of the numpy kernels. Same contracts, explicit loops."""
import numpy as np
from numba import njit


@njit(cache=True)
def pauli_transform(buf, L):
    n = buf.size
    out = np.empty_like(buf)
    a_buf = buf
    b_buf = out
    stride = 1
    for s in range(L):
        nblocks = n // (4 * stride)
        for blk in range(nblocks):
            base = blk * 4 * stride
            for r in range(stride):
                i0 = base + r
                i1 = i0 + stride
                i2 = i1 + stride
                i3 = i2 + stride
                a = a_buf[i0]
                b = a_buf[i1]
                c = a_buf[i2]
                d = a_buf[i3]
                b_buf[i0] = a + d
                b_buf[i1] = b + c
                b_buf[i2] = 1j * (b - c)
                b_buf[i3] = a - d
        a_buf, b_buf = b_buf, a_buf
        stride *= 4
    return a_buf


@njit(cache=True)
def bessel_downward(order_max, z):
    out = np.zeros(order_max + 1)
    if z == 0.0:
        out[0] = 1.0
        return out
    start = int(np.ceil(max(z, float(order_max)) + 12.0 * z ** (1.0 / 3.0) + 40.0))
    raw = np.zeros(start + 2)
    raw[start] = 1e-30
    for k in range(start, 0, -1):
        raw[k - 1] = (2.0 * k / z) * raw[k] - raw[k + 1]
        if abs(raw[k - 1]) > 1e250:
            for i in range(k - 1, start + 2):
                raw[i] *= 1e-250
    s = raw[0]
    for k in range(2, start + 2, 2):
        s += 2.0 * raw[k]
    for k in range(order_max + 1):
        out[k] = raw[k] / s
    return out


@njit(cache=True)
def _bracket(psi, j, k, l):
    v = 0.0 + 0.0j
    if k == l:
        v += psi[j]
    if j == l:
        v += psi[k]
    if j == k:
        v += psi[l]
    if j == k and j == l:
        v -= 2.0 * psi[j]
    return v


@njit(cache=True)
def bruteforce_total(psi):
    L = psi.shape[0]
    tot = 0.0 + 0.0j
    for j in range(L):
        for k in range(L):
            for l in range(L):
                bjkl = _bracket(psi, j, k, l)
                if bjkl == 0.0:
                    continue
                pre = psi[j] * psi[k] * psi[l] * bjkl
                for m in range(L):
                    tot += (
                        pre
                        * np.conj(psi[m])
                        * np.conj(_bracket(psi, j, k, m))
                        * np.conj(_bracket(psi, j, l, m))
                        * np.conj(_bracket(psi, k, l, m))
                    )
    return tot
