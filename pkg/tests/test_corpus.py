"""Every corpus entry must pass its registered oracles."""
import pytest

from fcalc.corpus import build, build_sharp, list_entries, run_oracles


@pytest.mark.parametrize("name", list_entries())
def test_oracles(name):
    report = run_oracles(name)
    details = "\n".join(report.lines())
    assert report.ok, details


def test_all_fi_entries_verify():
    for name, coeff, N in [("const", "Z", 5), ("atomic(1)", "Z", 5),
                           ("zgeq(2)", "Q", 5), ("P(2)", "F2", 5),
                           ("augmentation_kernel", "Z", 5),
                           ("ex_upm_A", "F2", 5), ("ex_upm_F", "F2", 5),
                           ("sum_zgeq", "Z", 4), ("atomics_upto(3)", "Z", 5)]:
        assert build(name, coeff, N).verify() == [], name


def test_direct_sum_names():
    F = build("zgeq(1)+atomic(0)", "Z", 5)
    from fcalc.fimod import dim_profile
    assert dim_profile(F).dims == [1, 1, 1, 1, 1, 1]


def test_unknown_name_rejected():
    with pytest.raises(Exception):
        build("mystery(3)", "Z", 5)
    with pytest.raises(Exception):
        build_sharp("mystery", "Z", 5)


def test_run_oracles_unknown():
    with pytest.raises(Exception):
        run_oracles("nonexistent")
