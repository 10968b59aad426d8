from __future__ import annotations

import numpy as np
import pytest

from monopole_obstruct.lattice import (
    EMPTY,
    H,
    Block,
    IntersectionLattice,
    InvalidCharacteristic,
    LatticeSyntaxError,
    SpinCData,
    connected_sum,
    dirac_index,
    lattice_invariants,
    parse_lattice,
)

# explicit Gram matrices: the oracle for rank / signature / parity
E8_GRAM = np.array(
    [
        [2, -1, 0, 0, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0, 0, 0],
        [0, -1, 2, -1, 0, 0, 0, 0],
        [0, 0, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, -1],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, 0],
        [0, 0, 0, 0, -1, 0, 0, 2],
    ]
)
GRAMS = {
    Block.H: np.array([[0, 1], [1, 0]]),
    Block.E8_PLUS: E8_GRAM,
    Block.E8_MINUS: -E8_GRAM,
    Block.DIAG_PLUS: np.array([[1]]),
    Block.DIAG_MINUS: np.array([[-1]]),
}


def gram(L: IntersectionLattice) -> np.ndarray:
    blocks = [GRAMS[b] for b, n in L.counts for _ in range(n)]
    size = sum(len(g) for g in blocks)
    out = np.zeros((size, size), dtype=int)
    i = 0
    for g in blocks:
        out[i:i + len(g), i:i + len(g)] = g
        i += len(g)
    return out


def oracle_invariants(L):
    G = gram(L)
    if G.size == 0:
        return 0, 0, 0, 0, "even"
    ev = np.linalg.eigvalsh(G.astype(float))
    bp, bm = int((ev > 1e-9).sum()), int((ev < -1e-9).sum())
    assert round(abs(np.linalg.det(G.astype(float)))) == 1  # unimodular
    parity = "even" if all(G[i, i] % 2 == 0 for i in range(len(G))) else "odd"
    return len(G), bp - bm, bp, bm, parity


def test_basic_examples():
    assert tuple(lattice_invariants(parse_lattice("2H+2E8m"))) == (20, -16, 2, 18, "even")
    assert tuple(lattice_invariants(parse_lattice("E8m"))) == (8, -8, 0, 8, "even")
    assert tuple(lattice_invariants(EMPTY)) == (0, 0, 0, 0, "even")


def test_against_gram_matrices(rng):
    blocks = list(Block)
    for _ in range(40):
        L = IntersectionLattice({b: rng.randint(0, 3) for b in blocks})
        assert tuple(lattice_invariants(L)) == oracle_invariants(L)


def test_dirac_index_examples():
    assert dirac_index(parse_lattice("10H+6E8m"), SpinCData.spin()) == 6
    for n in range(1, 20):
        assert dirac_index(parse_lattice(f"{n}D1m"), SpinCData(-n)) == 0
    assert dirac_index(parse_lattice("2H+2E8m"), SpinCData.spin()) == 2


def test_connected_sum():
    p, g, b = 3, 5, 1
    L = connected_sum(IntersectionLattice({Block.H: g * (p - 1)}), IntersectionLattice({Block.E8_MINUS: 2 * b * p}))
    assert L == parse_lattice("10H+6E8m")
    assert connected_sum(L, EMPTY) == L
    HH = H + H
    assert HH == parse_lattice("2H") and HH.signature == 0 and HH.b_plus == 2


def test_parse_grammar():
    assert str(parse_lattice("10H+6E8m+3D1p")) == "10H+6E8m+3D1p"
    assert parse_lattice("E8m+E8m") == parse_lattice("2E8m")
    assert parse_lattice("0") == EMPTY
    assert str(EMPTY) == "0"


@pytest.mark.parametrize("text,pos", [("10X", 0), ("2H+", 3), ("2H*3E8m", 2), ("H+E8", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(LatticeSyntaxError) as exc:
        parse_lattice(text)
    assert exc.value.position == pos


def test_structural_properties(rng):
    for _ in range(50):
        L = IntersectionLattice({b: rng.randint(0, 4) for b in Block})
        assert (L.rank - L.signature) % 2 == 0
        if L.is_even:
            assert L.signature % 8 == 0
            SpinCData.spin().validate(L)
        else:
            with pytest.raises(InvalidCharacteristic):
                SpinCData.spin().validate(L)


def test_dirac_index_additive(rng):
    for _ in range(30):
        L1 = IntersectionLattice({Block.H: rng.randint(0, 3), Block.DIAG_MINUS: rng.randint(1, 5), Block.E8_MINUS: rng.randint(0, 2)})
        L2 = IntersectionLattice({Block.DIAG_PLUS: rng.randint(1, 5), Block.E8_MINUS: rng.randint(0, 2)})
        s1 = SpinCData(L1.signature + 8 * rng.randint(-2, 2))
        s2 = SpinCData(L2.signature + 8 * rng.randint(-2, 2))
        total = dirac_index(L1 + L2, SpinCData(s1.c_squared + s2.c_squared))
        assert total == dirac_index(L1, s1) + dirac_index(L2, s2)


def test_congruence_violation():
    with pytest.raises(InvalidCharacteristic):
        dirac_index(parse_lattice("E8m"), SpinCData(-1))
    with pytest.raises(InvalidCharacteristic):
        SpinCData(8, True).validate(parse_lattice("E8m"))
