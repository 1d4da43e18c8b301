"""Experiment configs: the INI dialect, quasimorphism blocks, and the
per-kind probe validation that runs before anything executes."""

import pytest

from qmprobe.config import parse_experiment
from qmprobe.errors import ConfigError
from qmprobe.exact import ExactReal, ONE, ZERO
from qmprobe.quasimorphisms import (
    BrooksQM,
    CombinationQM,
    HomogenizedQM,
    HomomorphismQM,
)

FREE_GROUP = """\
[group]
free_rank = 2
names = a b
ball_cap = 8
"""

Z2_GROUP = """\
[group]
abelian_rank = 2
names = a c
ball_cap = 20
"""

PSIBAR = """\
[quasimorphism psi]
kind = brooks
word = a b

[quasimorphism psibar]
kind = homogenized
base = psi
"""

DEFECT_PROBE = """\
[probe d]
kind = defect
qm = psibar
radius = 2
"""


def test_full_parse(tmp_path):
    text = (
        FREE_GROUP
        + PSIBAR
        + DEFECT_PROBE
        + "\n[probe climb]\nkind = path-search\nqm = psibar\nstart = 1\n"
        + "target = a b\nk = 0\nradius = 3\n"
        + "\n[output]\npath = out.json\n"
    )
    exp = parse_experiment(text)
    assert exp.model.free_rank == 2 and exp.model.abelian_rank == 0
    assert exp.model.ball_cap == 8
    assert sorted(exp.quasimorphisms) == ["psi", "psibar"]
    assert isinstance(exp.quasimorphisms["psi"], BrooksQM)
    assert isinstance(exp.quasimorphisms["psibar"], HomogenizedQM)
    assert [p.name for p in exp.probes] == ["d", "climb"]
    assert exp.probes[0].kind == "defect"
    assert exp.probes[1].settings["radius"] == 3
    assert exp.output_path == "out.json"
    assert exp.raw_text == text


def test_homomorphism_defaults_missing_generators_to_zero():
    text = Z2_GROUP + "[quasimorphism phi]\nkind = homomorphism\nc = 1\n"
    text += "[probe d]\nkind = defect\nqm = phi\nradius = 1\n"
    phi = parse_experiment(text).quasimorphisms["phi"]
    assert isinstance(phi, HomomorphismQM)
    assert phi.values == (ZERO, ONE)


def test_combination_parse():
    text = FREE_GROUP + PSIBAR
    text += "[quasimorphism mix]\nkind = combination\nterms = 2 * psibar, -1/3 * psibar\n"
    text += "[probe d]\nkind = defect\nqm = mix\nradius = 1\n"
    mix = parse_experiment(text).quasimorphisms["mix"]
    assert isinstance(mix, CombinationQM)
    assert mix.coefficients == (ExactReal(2), ExactReal.parse("-1/3"))


def test_ball_cap_override():
    text = FREE_GROUP + PSIBAR + DEFECT_PROBE
    exp = parse_experiment(text, ball_cap=12)
    assert exp.model.ball_cap == 12


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("[probe d]\nkind = defect\n", "missing [group]"),
        (FREE_GROUP, "no probes"),
        (FREE_GROUP + "[nonsense]\nx = 1\n" + PSIBAR + DEFECT_PROBE, "unknown section"),
        (FREE_GROUP + PSIBAR + PSIBAR + DEFECT_PROBE, "already exists"),
        (
            FREE_GROUP + PSIBAR
            + "[quasimorphism  psi]\nkind = brooks\nword = b\n" + DEFECT_PROBE,
            "duplicate quasimorphism",
        ),
        (
            FREE_GROUP + PSIBAR + DEFECT_PROBE
            + "[probe d ]\nkind = defect\nqm = psibar\nradius = 2\n",
            "duplicate probe",
        ),
        (
            FREE_GROUP + PSIBAR + "[probe x]\nkind = astrology\nqm = psibar\n",
            "unknown probe kind",
        ),
        (
            FREE_GROUP + "[quasimorphism q]\nword = a\n" + DEFECT_PROBE,
            "missing key 'kind'",
        ),
        (
            FREE_GROUP + "[quasimorphism psibar]\nkind = homogenized\nbase = ghost\n"
            + DEFECT_PROBE,
            "unknown quasimorphism",
        ),
        (
            FREE_GROUP + PSIBAR + "[probe d]\nkind = defect\nqm = psibar\nradius = 9\n",
            "ball cap",
        ),
        (
            FREE_GROUP + PSIBAR + "[probe d]\nkind = defect\nqm = psi\nradius = 2\n",
            "homogeneous",
        ),
        (
            FREE_GROUP + PSIBAR
            + "[probe d]\nkind = defect\nqm = psibar\nradius = 2\nclaimed_upper = 1.5\n",
            "claimed_upper",
        ),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert fragment in str(err.value)


def test_aker_scaling_window_enforced():
    text = FREE_GROUP + PSIBAR
    # phi-bar(a) = 0 misses (4/5, 1]
    text += "[probe k]\nkind = aker-cert\nqm = psibar\ndstar = 1\nradius = 2\nscaling = a\n"
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "(4 D*/5, D*]" in str(err.value)


def test_aker_dstar_zero_needs_no_scaling():
    text = Z2_GROUP + "[quasimorphism phi]\nkind = homomorphism\nc = 1\n"
    text += "[probe k]\nkind = aker-cert\nqm = phi\ndstar = 0\nradius = 2\n"
    probe = parse_experiment(text).probes[0]
    assert probe.settings["scaling"] is None


def test_library_kprime_must_clear_two_dstar():
    text = Z2_GROUP + "[quasimorphism phi]\nkind = homomorphism\nc = 1\n"
    text += (
        "[probe lib]\nkind = q-library\nqm = phi\ndstar = 1\nkprime = 2\n"
        "scaling = c\nradius = 10\n"
    )
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "kprime" in str(err.value)


def test_peak_reduce_endpoints_must_be_near_kernel():
    text = Z2_GROUP + "[quasimorphism phi]\nkind = homomorphism\nc = 1\n"
    text += (
        "[probe flat]\nkind = peak-reduce\nqm = phi\ndstar = 1\nkprime = 3\n"
        "scaling = c\nradius = 10\nletters = c c c\n"
    )
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "Aker" in str(err.value)


def test_f2z_example_needs_the_specific_model():
    text = Z2_GROUP + "[quasimorphism phi]\nkind = homomorphism\nc = 1\n"
    text += "[probe e]\nkind = f2z-example\nqm = phi\nstart = 1\ntarget = 1\n"
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "F_2 x Z" in str(err.value)


def test_free_obstruction_rejects_abelian_models():
    text = Z2_GROUP + "[quasimorphism phi]\nkind = homomorphism\nc = 1\n"
    text += (
        "[probe o]\nkind = free-obstruction\nqm = phi\nx = a\nscaling = c\n"
        "dstar = 1\nmax_depth = 2\n"
    )
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "free group" in str(err.value)


def test_novikov_needs_a_defect_bound():
    # a Brooks base has no certified structural defect constant, so the
    # probe demands an explicit bound
    text = FREE_GROUP + PSIBAR
    text += (
        "[probe n]\nkind = novikov-solve\nqm = psibar\nstart = 1\nend = 1\n"
        "scaling = a b a^-1 b^-1\nwindow = 4\nradius = 4\n"
    )
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "scaling must be a single generator letter" in str(err.value)
    text = text.replace("scaling = a b a^-1 b^-1", "scaling = a")
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    # phi-bar(a) = 0 under psibar: the direction check fires first
    assert "positive phi-bar" in str(err.value)


def test_novikov_defect_bound_missing_message():
    text = FREE_GROUP
    text += "[quasimorphism lead]\nkind = brooks\nword = a\n"
    text += "[quasimorphism bar]\nkind = homogenized\nbase = lead\n"
    text += (
        "[probe n]\nkind = novikov-solve\nqm = bar\nstart = 1\nend = 1\n"
        "scaling = a\nwindow = 4\nradius = 4\n"
    )
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "no defect bound available" in str(err.value)


def test_zs_radius_must_cover_the_high_path():
    text = Z2_GROUP + "[quasimorphism phi]\nkind = homomorphism\nc = 1\n"
    text += (
        "[probe z]\nkind = zs-cycle\nqm = phi\ns = a\nscaling = c\n"
        "depth = 4\nk = 1\nradius = 4\n"
    )
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "depth + 1" in str(err.value)


def test_zs_s_must_be_a_letter():
    text = Z2_GROUP + "[quasimorphism phi]\nkind = homomorphism\nc = 1\n"
    text += (
        "[probe z]\nkind = zs-cycle\nqm = phi\ns = a a\nscaling = c\n"
        "depth = 2\nk = 1\nradius = 6\n"
    )
    with pytest.raises(ConfigError) as err:
        parse_experiment(text)
    assert "single generator letter" in str(err.value)


def test_rips_profile_accepts_ball_radius():
    text = FREE_GROUP + "[probe r]\nkind = rips-profile\nn_max = 2\nball_radius = 1\n"
    probe = parse_experiment(text).probes[0]
    assert len(probe.settings["vertices"]) == 5


def test_corpus_configs_parse(pytestconfig):
    root = pytestconfig.rootpath / "tests" / "configs"
    names = sorted(p.name for p in root.glob("*.cfg"))
    assert names, "config corpus is missing"
    for name in names:
        text = (root / name).read_text(encoding="utf-8")
        exp = parse_experiment(text)
        assert exp.probes, name
