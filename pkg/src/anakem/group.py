"""Prime-order group with a uniform byte encoding of elements.

The default group is the quadratic-residue subgroup of the RFC 3526
2048-bit MODP group (a safe prime p = 2q + 1, generator 2). Exponents are
256-bit, relying on the standard short-exponent discrete-log assumption at
the 128-bit level.

Uniform encoding: each residue y has a canonical representative
x = min(y, p - y) in [1, q]; since p = 3 mod 4, exactly one of {x, p - x}
is a residue, so the map is a bijection onto [1, q]. The representative is
then lifted to a uniform-looking 2048-bit integer u = (x - 1) + t*q with t
drawn from the caller-supplied tweak bits, so encoded elements are
statistically indistinguishable from uniform 256-byte strings. Decoding
reduces mod q and restores the residue with a Legendre-symbol test. Every
256-byte string decodes to some group element; authenticity of a received
encoding is enforced by the KEM's re-encapsulation check, not here.
"""

from __future__ import annotations

try:
    from gmpy2 import legendre as _legendre
    from gmpy2 import mpz, powmod as _powmod

    def _pow(base: int, exp: int, mod: int) -> int:
        return int(_powmod(base, exp, mod))

    def _is_qr(x: int, p: int) -> bool:
        return _legendre(mpz(x), mpz(p)) == 1

except ImportError:  # slower pure-Python fallback

    def _pow(base: int, exp: int, mod: int) -> int:
        return pow(base, exp, mod)

    def _is_qr(x: int, p: int) -> bool:
        return pow(x, (p - 1) // 2, p) == 1


# RFC 3526, group 14.
_MODP_2048_P = int(
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD1"
    "29024E088A67CC74020BBEA63B139B22514A08798E3404DD"
    "EF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245"
    "E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3D"
    "C2007CB8A163BF0598DA48361C55D39A69163FA8FD24CF5F"
    "83655D23DCA3AD961C62F356208552BB9ED529077096966D"
    "670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9"
    "DE2BCBF6955817183995497CEA956AE515D2261898FA0510"
    "15728E5A8AACAA68FFFFFFFFFFFFFFFF",
    16,
)

SCALAR_LEN = 32  # 256-bit exponents
TWEAK_LEN = 40  # lift-tweak bits: 64 bits more than the element size


class ModpGroup:
    """Quadratic-residue subgroup of a safe prime, with uniform encoding."""

    def __init__(self, group_id: str, p: int, g: int):
        self.group_id = group_id
        self.p = p
        self.q = (p - 1) // 2
        self.g = g
        self.elem_len = (p.bit_length() + 7) // 8

    def exp(self, base: int, scalar: int) -> int:
        return _pow(base, scalar, self.p)

    def base_exp(self, scalar: int) -> int:
        return _pow(self.g, scalar, self.p)

    def elem_bytes(self, y: int) -> bytes:
        """Canonical (non-uniform) fixed-width serialization, for key files."""
        return y.to_bytes(self.elem_len, "big")

    def elem_from_bytes(self, data: bytes) -> int:
        from .core import AnamorphicError, ErrorKind

        if len(data) != self.elem_len:
            raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
        y = int.from_bytes(data, "big")
        if not 1 <= y < self.p or not _is_qr(y, self.p):
            raise AnamorphicError(ErrorKind.DECODE_FAILURE)
        return y

    def encode_uniform(self, y: int, tweak: bytes) -> bytes:
        """Encode residue y into elem_len bytes indistinguishable from uniform.

        ``tweak`` supplies the lift randomness (TWEAK_LEN bytes); the same
        (y, tweak) always encodes identically.
        """
        assert len(tweak) == TWEAK_LEN
        x = y if y <= self.q else self.p - y
        x0 = x - 1  # in [0, q)
        bound = 1 << (8 * self.elem_len)
        lifts = (bound - 1 - x0) // self.q + 1
        t = int.from_bytes(tweak, "big") % lifts
        u = x0 + t * self.q
        return u.to_bytes(self.elem_len, "big")

    def decode_uniform(self, data: bytes) -> int:
        from .core import AnamorphicError, ErrorKind

        if len(data) != self.elem_len:
            raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
        u = int.from_bytes(data, "big")
        x = (u % self.q) + 1
        return x if _is_qr(x, self.p) else self.p - x


GROUPS = {"g1": ModpGroup("g1", _MODP_2048_P, 2)}


def group_by_id(group_id: str) -> ModpGroup:
    from .core import AnamorphicError, ErrorKind

    try:
        return GROUPS[group_id]
    except KeyError:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE) from None
