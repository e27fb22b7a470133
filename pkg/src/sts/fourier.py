"""Arbitrary-length DFT via Bluestein's chirp-z embedding in power-of-two FFTs."""

import numpy as np


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def bluestein_fft(x: np.ndarray) -> np.ndarray:
    """DFT of a 1-D signal of any length using three power-of-two FFTs."""
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1:
        raise ValueError("signal must be 1-dimensional")
    n = x.size
    if n == 0:
        return x.copy()
    size = 1 << (2 * n - 1).bit_length()
    k = np.arange(n, dtype=np.int64)
    # k^2 mod 2n keeps the chirp phase exact for long inputs
    phase = (k * k) % (2 * n)
    w = np.exp(-1j * np.pi * phase / n)
    w_conj = np.conj(w)

    a = np.zeros(size, dtype=np.complex128)
    a[:n] = x * w
    b = np.zeros(size, dtype=np.complex128)
    b[:n] = w_conj
    if n > 1:
        b[-(n - 1):] = w_conj[1:n][::-1]

    c = np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))
    return c[:n] * w


def dft(x: np.ndarray) -> np.ndarray:
    """DFT dispatching to numpy for power-of-two lengths."""
    x = np.asarray(x)
    if _is_power_of_two(x.size):
        return np.fft.fft(x)
    return bluestein_fft(x)
