"""
Finite fields GF(p^k).

Elements are integers 0..q-1. The integer sum(c_i * p**i) stands for the
polynomial residue sum(c_i * t**i) modulo the field's modulus, so the
elements of the prime subfield keep their usual names 0..p-1. Addition
works digit-wise; multiplication goes through exp/log tables built from a
primitive element.

All arithmetic methods accept Python ints or numpy integer arrays and
broadcast like numpy ufuncs. Scalar inputs give Python ints back.
"""

import math
import re
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime

from .exceptions import AxiomViolationError, DescriptorError
from .settings import FIELD_AXIOM_CHECK_ORDER, MAX_FIELD_ORDER, axiom_check_limit

_DESCRIPTOR_RE = re.compile(
    r"^\s*gf\(\s*(\d+)\s*(?:\^\s*(\d+)\s*;\s*([-\d\s,]+))?\)\s*$", re.IGNORECASE
)
_TERM_RE = re.compile(r"^([+-]?\d*)\*?(?:([tx])(?:\^(\d+))?)?$")


def _trim(poly: List[int]) -> List[int]:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(num: Sequence[int], den: Sequence[int], p: int) -> List[int]:
    """Remainder of num by den over GF(p); coefficient lists low-to-high."""
    rem = [c % p for c in num]
    den = _trim([c % p for c in den])
    lead_inv = pow(den[-1], p - 2, p)
    while len(_trim(rem)) >= len(den) and any(rem):
        shift = len(rem) - len(den)
        factor = (rem[-1] * lead_inv) % p
        for i, c in enumerate(den):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
        _trim(rem)
    return rem


def _monic_polynomials(p: int, degree: int):
    for index in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(index % p)
            index //= p
        yield coeffs + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division against every monic polynomial of degree <= k/2."""
    k = len(modulus) - 1
    for degree in range(1, k // 2 + 1):
        for divisor in _monic_polynomials(p, degree):
            if not any(_poly_mod(modulus, divisor, p)):
                return False
    return True


class FiniteField:
    """The finite field GF(p^k) defined by a monic irreducible modulus."""

    def __init__(self, p: int, modulus: Optional[Sequence[int]] = None):
        if not isprime(p):
            raise AxiomViolationError(f"GF({p})", "primality of the characteristic")

        if modulus is None or len(modulus) <= 2:
            modulus = (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if modulus[-1] != 1:
            raise AxiomViolationError(
                f"GF({p}) modulus {list(modulus)}", "monic leading coefficient"
            )

        self.p = p
        self.k = len(modulus) - 1
        self.order = p ** self.k
        self.modulus = modulus

        if self.order > MAX_FIELD_ORDER:
            raise AxiomViolationError(
                f"GF({p}^{self.k})", f"size limit |F| <= {MAX_FIELD_ORDER}"
            )
        if self.k > 1 and not is_irreducible(modulus, p):
            raise AxiomViolationError(
                f"GF({p}^{self.k}) modulus {list(modulus)}", "irreducibility"
            )

        self._powers = p ** np.arange(self.k, dtype=np.int64)
        elements = np.arange(self.order, dtype=np.int64)
        self._digits = (elements[:, None] // self._powers[None, :]) % p
        self._build_tables()
        if self.order <= min(FIELD_AXIOM_CHECK_ORDER, axiom_check_limit()):
            self.verify_axioms()

    # Construction helpers
    def _mul_digits(self, a: List[int], b: List[int]) -> List[int]:
        product = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    product[i + j] = (product[i + j] + x * y) % self.p
        rem = _poly_mod(product, self.modulus, self.p)
        return rem + [0] * (self.k - len(rem))

    def _index_of(self, digits: Sequence[int]) -> int:
        return int(sum(int(c) * int(w) for c, w in zip(digits, self._powers)))

    def _slow_pow(self, a: int, exponent: int) -> int:
        result = [1] + [0] * (self.k - 1)
        base = [int(c) for c in self._digits[a]]
        while exponent:
            if exponent & 1:
                result = self._mul_digits(result, base)
            base = self._mul_digits(base, base)
            exponent >>= 1
        return self._index_of(result)

    def _find_primitive(self) -> int:
        if self.order == 2:
            return 1
        group_order = self.order - 1
        cofactors = [group_order // r for r in factorint(group_order)]
        for candidate in range(2, self.order):
            if all(self._slow_pow(candidate, c) != 1 for c in cofactors):
                return candidate
        raise AxiomViolationError(repr(self), "existence of a primitive element")

    def _build_tables(self) -> None:
        q = self.order
        self._exp = np.zeros(max(q - 1, 1), dtype=np.int64)
        self._log = np.zeros(q, dtype=np.int64)
        if self.k == 1:
            generator = self._find_primitive()
            value = 1
            for i in range(q - 1):
                self._exp[i] = value
                self._log[value] = i
                value = (value * generator) % self.p
        else:
            generator = self._find_primitive()
            gen_digits = [int(c) for c in self._digits[generator]]
            value = [1] + [0] * (self.k - 1)
            for i in range(q - 1):
                index = self._index_of(value)
                self._exp[i] = index
                self._log[index] = i
                value = self._mul_digits(value, gen_digits)
        self.primitive_element = int(self._exp[1]) if q > 2 else 1

    # Conversions
    @staticmethod
    def _wrap(result):
        if np.ndim(result) == 0:
            return int(result)
        return result

    def digits(self, a) -> np.ndarray:
        """Coefficient vector(s) (c_0, ..., c_{k-1}) over GF(p)."""
        return self._digits[np.asarray(a, dtype=np.int64)]

    def from_digits(self, digits) -> int:
        digits = np.asarray(digits, dtype=np.int64) % self.p
        return self._wrap(digits @ self._powers)

    def from_int(self, value):
        """Image of an integer under Z -> GF(p) -> GF(p^k)."""
        return self._wrap(np.asarray(value, dtype=np.int64) % self.p)

    # Arithmetic
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return self._wrap((a + b) % self.p)
        summed = (self._digits[a] + self._digits[b]) % self.p
        return self._wrap(summed @ self._powers)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return self._wrap((-a) % self.p)
        return self._wrap(((-self._digits[a]) % self.p) @ self._powers)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return self._wrap((a * b) % self.p)
        exponent = (self._log[a] + self._log[b]) % (self.order - 1)
        return self._wrap(np.where((a == 0) | (b == 0), 0, self._exp[exponent]))

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        exponent = (-self._log[a]) % (self.order - 1)
        return self._wrap(self._exp[exponent])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a: int, exponent: int) -> int:
        if a == 0:
            return 0 if exponent > 0 else 1
        log = (int(self._log[a]) * exponent) % (self.order - 1)
        return int(self._exp[log])

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        group_order = self.order - 1
        log = int(self._log[a])
        return group_order // math.gcd(group_order, log) if log else 1

    def matmul(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Matrix product over the field."""
        left = np.asarray(left, dtype=np.int64)
        right = np.asarray(right, dtype=np.int64)
        if self.k == 1:
            return (left @ right) % self.p
        result = np.zeros((left.shape[0], right.shape[1]), dtype=np.int64)
        for t in range(left.shape[1]):
            result = self.add(result, self.mul(left[:, t : t + 1], right[t : t + 1, :]))
        return np.asarray(result, dtype=np.int64)

    def identity(self, d: int) -> np.ndarray:
        return np.eye(d, dtype=np.int64)

    def elements(self) -> range:
        return range(self.order)

    # Display and parsing
    @property
    def descriptor(self) -> str:
        if self.k == 1:
            return f"gf({self.p})"
        coeffs = ",".join(str(c) for c in self.modulus)
        return f"gf({self.p}^{self.k};{coeffs})"

    def format_element(self, a: int) -> str:
        if self.k == 1:
            return str(int(a))
        terms = []
        for power, coeff in enumerate(self._digits[a]):
            if not coeff:
                continue
            if power == 0:
                terms.append(str(coeff))
            else:
                base = "t" if power == 1 else f"t^{power}"
                terms.append(base if coeff == 1 else f"{coeff}{base}")
        return "+".join(terms) if terms else "0"

    def parse_element(self, text: str) -> int:
        """Parse an element index ("5") or a polynomial in t ("t+1", "2t^2")."""
        text = text.replace(" ", "")
        if re.fullmatch(r"\d+", text):
            value = int(text)
            if value >= self.order:
                raise DescriptorError(text, f"element index out of range for {self.descriptor}")
            return value
        digits = [0] * self.k
        for term in re.split(r"(?=[+-])", text):
            if not term:
                continue
            match = _TERM_RE.match(term)
            if match is None:
                raise DescriptorError(text, f"cannot read term '{term}'")
            coeff_text, variable, power_text = match.groups()
            if coeff_text in ("", "+"):
                coeff = 1
            elif coeff_text == "-":
                coeff = -1
            else:
                coeff = int(coeff_text)
            power = 0 if variable is None else int(power_text or 1)
            if variable is None and coeff_text in ("", "+", "-"):
                raise DescriptorError(text, f"cannot read term '{term}'")
            if power >= self.k:
                # Reduce t^power with the modulus.
                monomial = [0] * power + [1]
                reduced = _poly_mod(monomial, self.modulus, self.p)
                for i, c in enumerate(reduced):
                    digits[i] += coeff * c
            else:
                digits[power] += coeff
        return self.from_digits(digits)

    # Verification
    def verify_axioms(self) -> None:
        """Exhaustive check of the field axioms; intended for small fields."""
        elems = np.arange(self.order, dtype=np.int64)
        a = elems[:, None, None]
        b = elems[None, :, None]
        c = elems[None, None, :]
        if not np.array_equal(self.add(self.add(a, b), c), self.add(a, self.add(b, c))):
            raise AxiomViolationError(repr(self), "associativity of addition")
        if not np.array_equal(self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c))):
            raise AxiomViolationError(repr(self), "associativity of multiplication")
        if not np.array_equal(
            self.mul(a, self.add(b, c)), self.add(self.mul(a, b), self.mul(a, c))
        ):
            raise AxiomViolationError(repr(self), "distributivity")
        nonzero = elems[1:]
        if not np.array_equal(self.mul(nonzero, self.inv(nonzero)), np.ones_like(nonzero)):
            raise AxiomViolationError(repr(self), "invertibility of nonzero elements")

    def prime_subfield(self) -> "FiniteField":
        return self if self.k == 1 else FiniteField(self.p)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        if isinstance(other, FiniteField):
            return self.p == other.p and self.modulus == other.modulus
        return False

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))


def parse_field_descriptor(descriptor: str) -> FiniteField:
    """
    Build a field from `gf(p)` or `gf(p^k;c0,c1,...,ck)`.

    Args:
        descriptor: Field descriptor, modulus coefficients low-to-high

    Returns:
        The corresponding FiniteField

    Raises:
        DescriptorError: If the text is not a valid descriptor
    """
    match = _DESCRIPTOR_RE.match(descriptor)
    if match is None:
        raise DescriptorError(descriptor, "expected gf(p) or gf(p^k;c0,...,ck)")

    p = int(match.group(1))
    if not isprime(p):
        raise DescriptorError(descriptor, f"{p} is not prime")
    if match.group(2) is None:
        return FiniteField(p)

    k = int(match.group(2))
    coeffs = [c.strip() for c in match.group(3).split(",") if c.strip()]
    if len(coeffs) != k + 1:
        raise DescriptorError(
            descriptor, f"modulus of degree {k} needs {k + 1} coefficients, got {len(coeffs)}"
        )
    if k == 1:
        return FiniteField(p)
    try:
        return FiniteField(p, [int(c) for c in coeffs])
    except AxiomViolationError as e:
        raise DescriptorError(descriptor, str(e)) from e


def split_field_descriptor(text: str) -> Tuple[str, str]:
    """Split 'gf(...),rest' at the closing parenthesis of the field."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return text[: i + 1], text[i + 1 :].lstrip(" ,")
    raise DescriptorError(text, "unbalanced parentheses")
