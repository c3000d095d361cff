import pytest

from uavmarl.scenario import (ConfigError, SCHEMA, dump_scenario, crossing_scenario, load_scenario,
                              parse_scenario)

CROSSING_DOC = """\
radius_m = 500.0
altitude_m = 100.0
slot_duration_s = 0.1
num_slots = 500
L = 100
M = 2
speed_mps = 40.0
start_angles_deg = [0.0, 45.0]
channel_model = "probabilistic"
K = 1
J = 3
max_power_dbm = 23.0
power_cost = 100.0
sinr_threshold_db = 3.0
noise_dbm = -80.0
epsilon = 0.5
seeds = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19]
"""


def test_full_document_parses():
    sc = parse_scenario(CROSSING_DOC)
    assert (sc.num_uavs, sc.num_users, sc.num_subchannels, sc.num_power_levels) == (2, 100, 1, 3)
    assert sc == crossing_scenario()


def test_defaults_fill_omitted_keys():
    sc = parse_scenario("num_slots = 10\nL = 5\nM = 1\nspeed_mps = 40.0\n")
    assert sc.noise_dbm == -80.0
    assert sc.reward_params.noise_mw == pytest.approx(1e-8)
    assert sc.start_angles_deg is None
    assert sc.seeds == tuple(range(20))


@pytest.mark.parametrize("text, key", [
    ("J = 0", "J"),
    ("K = 0", "K"),
    ("epsilon = 1.5", "epsilon"),
    ("discount = -0.1", "discount"),
    ("phi_alpha = 0.4", "phi_alpha"),
    ('channel_model = "rayleigh"', "channel_model"),
    ("L = 1.5", "L"),
    ('speed_mps = "fast"', "speed_mps"),
    ("start_angles_deg = [0.0]", "start_angles_deg"),
    ("speed_mps = [1.0, 2.0, 3.0]", "speed_mps"),
    ("bogus = 1", "bogus"),
    ("power_cost = -1.0", "power_cost"),
])
def test_bad_values_name_their_key(text, key):
    base = dict(num_slots="10", L="5", M="2", speed_mps="40.0")
    lines = [f"{k} = {v}" for k, v in base.items() if not text.startswith(k + " ")]
    with pytest.raises(ConfigError) as info:
        parse_scenario("\n".join(lines + [text]) + "\n")
    assert info.value.key == key


def test_missing_required_key_named():
    with pytest.raises(ConfigError) as info:
        parse_scenario("num_slots = 10\nL = 5\nspeed_mps = 40.0\n")
    assert info.value.key == "M"


def test_nested_tables_rejected():
    with pytest.raises(ConfigError):
        parse_scenario("num_slots = 10\nL = 5\nM = 1\nspeed_mps = 40.0\n[radio]\nJ = 2\n")


def test_invalid_toml_rejected():
    with pytest.raises(ConfigError):
        parse_scenario("num_slots = = 3")


def test_dump_is_a_fixed_point(tmp_path):
    sc = crossing_scenario(speed_mps=[30.0, 50.0], los_sampling=True)
    text = dump_scenario(sc)
    assert parse_scenario(text) == sc
    assert dump_scenario(parse_scenario(text)) == text
    assert [line.split(" = ")[0] for line in text.splitlines()] == list(SCHEMA)
    path = tmp_path / "s.toml"
    path.write_text(text, encoding="utf-8")
    assert load_scenario(path) == sc


def test_overrides_and_digest():
    sc = crossing_scenario()
    assert sc.with_overrides(epsilon=0.2).epsilon == 0.2
    assert sc.with_overrides(epsilon=0.2).digest() != sc.digest()
    assert crossing_scenario().digest() == sc.digest()
    assert sc.speeds == (40.0, 40.0)
