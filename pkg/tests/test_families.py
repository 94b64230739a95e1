import pytest

from hrhlab.errors import DomainError
from hrhlab.exactnum import INF
from hrhlab.families import (
    DIAMONDS,
    HodgeDiamond,
    ToricCone,
    cone_hrh,
    cone_lcdef,
    exact_rank,
    is_simplicial,
    projective_space,
    secant_hrh,
    toric_hrh,
)


class TestHodgeDiamond:
    def test_fills_symmetric_entries(self):
        k3 = DIAMONDS["K3"]
        assert k3.hodge(2, 0) == k3.hodge(2, 2) == 1
        assert [k3.betti(i) for i in range(5)] == [1, 0, 22, 0, 1]

    def test_conflict(self):
        with pytest.raises(DomainError):
            HodgeDiamond.from_entries(2, [(0, 1, 1), (1, 0, 2)])

    def test_direct_validation(self):
        with pytest.raises(DomainError):
            HodgeDiamond(1, ((1, 1), (0, 1)))
        with pytest.raises(DomainError):
            HodgeDiamond(1, ((0, 0), (0, 0)))

    def test_json_round_trip(self):
        for dia in DIAMONDS.values():
            assert HodgeDiamond.from_json(dia.to_json()) == dia
            assert dia.transpose() == dia


class TestCones:
    def test_p2(self):
        assert cone_hrh(DIAMONDS["P2"]).value == INF

    def test_godeaux(self):
        assert cone_hrh(DIAMONDS["godeaux"]).value == 0

    def test_p1xp1(self):
        assert cone_hrh(DIAMONDS["P1xP1"]).value == 0

    def test_k3_and_elliptic(self):
        assert cone_hrh(DIAMONDS["K3"]).value == -1
        assert cone_hrh(DIAMONDS["elliptic"]).value == -1

    @pytest.mark.parametrize("n", range(0, 7))
    def test_projective_spaces_are_rhm(self, n):
        assert cone_hrh(projective_space(n)).value == INF

    def test_stops_below_middle(self):
        # h^{2,2} = 2 on a fourfold: level 1 holds, and 2*1 > d - 3 = 2 fails
        dia = HodgeDiamond.from_entries(4, [(0, 0, 1), (1, 1, 1), (2, 2, 2)])
        assert cone_hrh(dia).value == 1
        dia6 = HodgeDiamond.from_entries(6, [(0, 0, 1), (1, 1, 2), (2, 2, 2), (3, 3, 2)])
        assert cone_hrh(dia6).value == 0

    @pytest.mark.parametrize("name", ["P2", "godeaux", "K3"])
    def test_lcdef_surfaces(self, name):
        assert cone_lcdef(DIAMONDS[name]) == 0

    def test_lcdef_positive(self):
        # an abelian threefold: b_1 = 6 != b_{-1} = 0, so only the empty range works
        ab = HodgeDiamond.from_entries(
            3, [(0, 0, 1), (0, 1, 3), (0, 2, 3), (0, 3, 1), (1, 1, 9), (1, 2, 9)]
        )
        assert [ab.betti(i) for i in range(4)] == [1, 6, 15, 20]
        assert cone_lcdef(ab) == 2


class TestToric:
    def test_smooth(self):
        assert toric_hrh(ToricCone([(1, 0), (0, 1)])).value == INF

    def test_square(self):
        cone = ToricCone([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
        assert not is_simplicial(cone)
        assert toric_hrh(cone).value == 0

    def test_quotient(self):
        assert toric_hrh(ToricCone([(2, 1), (1, 2)])).value == INF

    def test_rays_normalized(self):
        cone = ToricCone([(2, 0), (1, 0), (0, 3)])
        assert cone.rays == ((1, 0), (0, 1))
        assert str(cone) == "(1,0),(0,1)"

    def test_bad_rays(self):
        with pytest.raises(DomainError):
            ToricCone([])
        with pytest.raises(DomainError):
            ToricCone([(0, 0)])
        with pytest.raises(DomainError):
            ToricCone([(1, 0), (1, 0, 0)])

    def test_exact_rank(self):
        assert exact_rank([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 2
        assert exact_rank([]) == 0


@pytest.mark.parametrize(
    "p1,vanishing,expected", [(True, True, INF), (False, True, 0), (False, False, -1)]
)
def test_secant(p1, vanishing, expected):
    assert secant_hrh(p1, vanishing).value == expected
