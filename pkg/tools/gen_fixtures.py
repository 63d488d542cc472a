#!/usr/bin/env python3
"""Regenerate the bundled group fixtures.

heisenberg5.json  the extraspecial 5^3 subgroup of SL_5
a5dim5.json       A5 = PSL(2,5) in its 5-dimensional irreducible
                  representation, realized on the sum-zero sublattice of
                  the 6-point action on the projective line over F_5
2a5dim2.json      the binary icosahedral subgroup of SL_2, generated by the
                  order-10 rotation lift diag(z10, z10^-1) and the lift of
                  the adjacent 2-fold rotation, written over Q(zeta_20)

Each construction is verified (order, determinants, class structure,
irreducibility) before the file is written.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from wex.cyclotomic import Cyclotomic, root_of_unity
from wex.groups import GroupElement, closure, contains_reflections
from wex.characters import char_inner, natural_character
from wex.constructions import heisenberg
from wex.specio import emit_group_spec, group_spec_from_generators

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "src" / "wex" / "fixtures"


def a5_dim5_generators() -> list[GroupElement]:
    pts = list(range(5)) + ["inf"]

    def act_T(q):  # z -> z + 1
        return "inf" if q == "inf" else (q + 1) % 5

    def act_S(q):  # z -> -1/z
        if q == "inf":
            return 0
        if q == 0:
            return "inf"
        return (-pow(q, 3, 5)) % 5

    mats = []
    for act in (act_T, act_S):
        perm = [pts.index(act(q)) for q in pts]
        # restrict the 6-point permutation action to span{e_i - e_inf}
        M = [[0] * 5 for _ in range(5)]
        for i in range(5):
            if perm[i] != 5:
                M[perm[i]][i] += 1
            if perm[5] != 5:
                M[perm[5]][i] -= 1
        mats.append(GroupElement.from_rational_rows(M))
    return mats


def binary_icosahedral_generators() -> list[GroupElement]:
    def z(j):
        return root_of_unity(20, j)

    zero = Cyclotomic.zero(20)
    a = GroupElement([[z(2), zero], [zero, z(-2)]])
    # lift of the 2-fold rotation about the axis at angle theta to the
    # 5-fold axis, cos^2(theta) = (5+sqrt5)/10:
    #   B = (i/sqrt5) [[2cos18, 2cos54], [2cos54, -2cos18]]
    sqrt5 = z(4) - z(8) - z(12) + z(16)
    f = z(5) * (sqrt5 / 5)
    c = z(1) + z(-1)
    s = z(3) + z(-3)
    b = GroupElement([[f * c, f * s], [f * s, -(f * c)]])
    return [a, b]


def verify_and_write(name, gens, order, degree, *, in_sl=True,
                     irreducible=True, reflection_free=True):
    G = closure(gens, cap=4 * order)
    assert G.order == order, (name, G.order)
    assert G.degree == degree
    if in_sl:
        assert all(e.det() == 1 for e in G.elements), name
    if irreducible:
        nat = natural_character(G)
        assert char_inner(nat, nat) == 1, name
    if reflection_free:
        assert not contains_reflections(G)[0], name
    spec = group_spec_from_generators(gens, metadata={"name": name})
    path = FIXTURES / f"{name.replace('.', '').replace('-', '')}.json"
    path.write_text(emit_group_spec(spec))
    print(f"wrote {path} (order {G.order}, degree {degree})")
    return path


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    spec = group_spec_from_generators(
        heisenberg(5), metadata={"name": "heisenberg-5"}
    )
    G = closure(list(spec.generators))
    assert G.order == 125
    (FIXTURES / "heisenberg5.json").write_text(emit_group_spec(spec))
    print(f"wrote {FIXTURES / 'heisenberg5.json'} (order 125, degree 5)")

    gens = a5_dim5_generators()
    spec = group_spec_from_generators(gens, metadata={"name": "a5-dim5"})
    G = closure(gens)
    assert G.order == 60 and char_inner(natural_character(G),
                                        natural_character(G)) == 1
    assert not contains_reflections(G)[0]
    (FIXTURES / "a5dim5.json").write_text(emit_group_spec(spec))
    print(f"wrote {FIXTURES / 'a5dim5.json'} (order 60, degree 5)")

    gens = binary_icosahedral_generators()
    spec = group_spec_from_generators(gens, metadata={"name": "2a5-dim2"})
    G = closure(gens)
    assert G.order == 120
    assert all(e.det() == 1 for e in G.elements)
    assert char_inner(natural_character(G), natural_character(G)) == 1
    assert not contains_reflections(G)[0]
    (FIXTURES / "2a5dim2.json").write_text(emit_group_spec(spec))
    print(f"wrote {FIXTURES / '2a5dim2.json'} (order 120, degree 2)")


if __name__ == "__main__":
    main()
