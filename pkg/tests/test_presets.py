import pytest

from pslet import cli
from pslet.presets import TABLES, get_table


@pytest.mark.parametrize("table_id", [1, 2, 3, 4, 5])
def test_configs_validate(table_id):
    preset = TABLES[table_id]
    cfg = cli.parse_config(preset.config)
    assert {(s.k, s.ell) for s in cfg.states} == set(preset.published)


def test_published_parameters():
    assert TABLES[1].config["mass"] == "1.12"
    assert TABLES[3].config["potential"]["vector"][0]["coeff"] == "-0.26"  # -2(0.39)/3
    assert TABLES[3].config["potential"]["scalar"][0]["coeff"] == "0.105275"  # 0.21055/2
    assert TABLES[5].config["mass"] == "1.370"


def test_typo_is_excluded():
    assert "M(4)" not in TABLES[1].published[(0, 1)]
    assert TABLES[1].excluded[(0, 1)]["M(4)"] == "4.43256"


def test_unknown_table():
    with pytest.raises(KeyError):
        get_table(7)
