import pytest

import btq


def test_pic_of_twice_punctured_line():
    p = btq.pic(3, ["t", "inf"])
    assert p["unit_rank"] == 1
    assert p["pic"] == "0"
    assert p["exact"]


def test_degree_two_puncture_has_two_kummer_classes():
    assert btq.pic(3, ["t^2+1"])["kummer_size"] == 2


def test_elliptic_curve():
    p = btq.pic(5, ["O", "0,0"], curve="elliptic", a=[0, 0, 0, -1, 0])
    assert p["unit_rank"] == 1


def test_tree_ball_size():
    for q in (2, 3):
        for r in range(4):
            assert len(btq.tree_ball(q, "inf", r)) == 1 + (q + 1) * (q**r - 1) // (q - 1)


def test_serre_ray():
    Q = btq.quotient(2, ["inf"], radius=4, group="sl2")
    assert Q["counts"][0] == 5
    assert Q["parabolic_components"] == 1


def test_homology_and_localization():
    rp2 = btq.homology([1, 1, 1], [[], [(0, 0, 2)]])
    assert [g["str"] for g in rp2] == ["Z", "Z/2", "0"]
    assert [g["str"] for g in btq.homology([1, 1, 1], [[], [(0, 0, 2)]], "Z[1/2]")] == ["Z", "0", "0"]


def test_apartment_sphere():
    H = btq.apartment_link_homology(3)
    assert [g["free_rank"] for g in H] == [1, 0, 1]


def test_model_betti():
    assert [g["free_rank"] for g in btq.model_homology(3, ["t", "t+1", "inf"], "T")][:3] == [1, 2, 1]


def test_group_homology():
    assert btq.group_homology("C3", 1)["str"] == "Z/3"


def test_points():
    assert btq.points_complex_counts(3, 2) == [4, 6, 4]
    assert btq.points_acyclic(5, 3)
    assert all(g["str"] == "0" for g in btq.rp1_low_degree(3))


def test_suite_runner():
    assert "localization" in btq.suite_names()
    R = btq.run_suite("apartment-spheres")
    assert R["pass"]


def test_bad_input_raises():
    with pytest.raises(ValueError):
        btq.pic(6, ["inf"])
    with pytest.raises(ValueError):
        btq.homology([1, 1], [[(0, 5, 1)]])
