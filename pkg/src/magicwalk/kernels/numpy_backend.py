"""Pure-numpy reference implementations of the hot kernels."""
import numpy as np


def pauli_transform(buf, L):
    """Per-site 4x4 map over the interleaved vectorized density matrix.

    buf holds 4^L complex values, base-4 little-endian in the site index,
    with each site's digit encoding (row_bit, col_bit) of the local density
    components. Site s maps (r00, r01, r10, r11) -> traces against (I, X, Y, Z).
    buf is consumed as scratch; the returned array holds the result.
    """
    out = np.empty_like(buf)
    for s in range(L):
        stride = 4 ** s
        v = buf.reshape(-1, 4, stride)
        o = out.reshape(-1, 4, stride)
        a, b, c, d = v[:, 0, :], v[:, 1, :], v[:, 2, :], v[:, 3, :]
        o[:, 0, :] = a + d
        o[:, 1, :] = b + c
        o[:, 2, :] = 1j * (b - c)
        o[:, 3, :] = a - d
        buf, out = out, buf
    return buf


def bessel_downward(order_max, z):
    """J_0(z)..J_order_max(z) by downward recurrence with normalization.

    Upward recurrence is unstable for k > z, so seed far above both z and the
    requested order and recur down, rescaling to dodge overflow; normalize via
    J_0 + 2*sum(J_2k) = 1.
    """
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
            raw[k - 1 :] *= 1e-250  # rescale the computed tail, normalization fixes scale
    s = raw[0] + 2.0 * np.sum(raw[2::2])
    out[:] = raw[: order_max + 1] / s
    return out


def bruteforce_total(psi):
    """Literal quadruple contraction over site indices; returns 2^(-M2).

    The three-index symbol is psi_j d_kl + psi_k d_jl + psi_l d_jk
    - 2 psi_j d_jk d_jl; cost O(L^4) via einsum.
    """
    L = psi.shape[0]
    eye = np.eye(L)
    B = (
        psi[:, None, None] * eye[None, :, :]
        + psi[None, :, None] * eye[:, None, :]
        + psi[None, None, :] * eye[:, :, None]
    )
    d3 = eye[:, :, None] * eye[:, None, :]
    B = B - 2.0 * psi[:, None, None] * d3
    C = psi[:, None, None] * psi[None, :, None] * psi[None, None, :] * B
    Bc = B.conj()
    return np.einsum("jkl,m,jkm,jlm,klm->", C, psi.conj(), Bc, Bc, Bc)
