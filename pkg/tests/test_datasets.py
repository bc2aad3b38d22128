"""Bundled datasets and the case-study generators."""

import pytest

from abacbench import rule_coverage, serialize_policy, statistics, validate_policy
from abacbench.datasets import DATASET_NAMES, bundled_datasets, dataset_text, load_dataset
from abacbench.errors import AbacError
from abacbench.genkit import (
    EDOCUMENT_DEFAULTS,
    GenConfig,
    WORKFORCE_DEFAULTS,
    generate_edocument,
    generate_workforce,
    parse_config_file,
)
from abacbench.validate import UNDECLARED_ATTRIBUTE

TABLE_ROWS = {
    "healthcare": (21, 16, 6, 7, 6, 43),
    "project-mgmt": (19, 40, 8, 6, 5, 101),
    "university": (22, 34, 6, 5, 10, 168),
}
BIG_STRUCTURE = {
    "workforce": (353, 250, 10, 16, 28),
    "e-document": (500, 300, 11, 9, 25),
}
# scale anchors for generated permission totals: stay within [0.2x, 5x]
PERM_ANCHORS = {"workforce": 15858, "e-document": 32961}


def test_bundled_list_has_five_datasets():
    datasets = bundled_datasets()
    assert [name for name, _ in datasets] == list(DATASET_NAMES)
    assert len(datasets) == 5


@pytest.mark.parametrize("name", sorted(TABLE_ROWS))
def test_small_dataset_statistics_exact(name):
    s = statistics(load_dataset(name))
    assert (s.n_sub, s.n_res, s.n_uattr, s.n_rattr, s.n_rule, s.n_perm) == TABLE_ROWS[name]


@pytest.mark.parametrize("name", sorted(BIG_STRUCTURE))
def test_big_dataset_structure_and_perm_band(name):
    s = statistics(load_dataset(name))
    assert (s.n_sub, s.n_res, s.n_uattr, s.n_rattr, s.n_rule) == BIG_STRUCTURE[name]
    anchor = PERM_ANCHORS[name]
    assert 0.2 * anchor <= s.n_perm <= 5 * anchor


def test_all_bundled_validate_clean(all_bundled):
    for name, p in all_bundled:
        diags = validate_policy(p)
        assert not [d for d in diags if d.kind == UNDECLARED_ATTRIBUTE], name


def test_every_rule_grants_on_small_datasets(small_bundled):
    for name, p in small_bundled:
        assert all(c.granted_count > 0 for c in rule_coverage(p)), name


def test_unknown_dataset_name():
    with pytest.raises(AbacError):
        load_dataset("nonexistent")


def test_data_dir_override(tmp_path, monkeypatch):
    (tmp_path / "university.abac").write_text("userAttrib(only)\n")
    monkeypatch.setenv("ABACLAB_DATA", str(tmp_path))
    p = load_dataset("university")
    assert [u.id for u in p.users] == ["only"]


# ---------------------------------------------------------------------------
# Generators


def test_workforce_default_counts():
    s = statistics(generate_workforce(GenConfig(seed=42)))
    assert (s.n_sub, s.n_res, s.n_uattr, s.n_rattr, s.n_rule) == (353, 250, 10, 16, 28)


def test_edocument_default_counts():
    s = statistics(generate_edocument(GenConfig(seed=42)))
    assert (s.n_sub, s.n_res, s.n_uattr, s.n_rattr, s.n_rule) == (500, 300, 11, 9, 25)


def test_vendored_instances_match_generators():
    assert dataset_text("workforce") == serialize_policy(generate_workforce(GenConfig(seed=42)))
    assert dataset_text("e-document") == serialize_policy(generate_edocument(GenConfig(seed=42)))


@pytest.mark.parametrize("gen", [generate_workforce, generate_edocument])
def test_generator_deterministic(gen):
    a = serialize_policy(gen(GenConfig(seed=7)))
    b = serialize_policy(gen(GenConfig(seed=7)))
    assert a == b
    c = serialize_policy(gen(GenConfig(seed=8)))
    assert a != c


@pytest.mark.parametrize(
    "gen, defaults",
    [(generate_workforce, WORKFORCE_DEFAULTS), (generate_edocument, EDOCUMENT_DEFAULTS)],
)
def test_generator_zero_controls(gen, defaults):
    cfg = GenConfig(seed=1, size_controls={name: 0 for name in defaults})
    p = gen(cfg)
    s = statistics(p)
    assert (s.n_sub, s.n_res, s.n_perm) == (0, 0, 0)
    assert s.n_rule == len(p.rules) > 0


def test_generator_counts_are_exact_functions_of_controls():
    cfg = GenConfig(
        seed=3,
        size_controls={"nManagers": 5, "nTechnicians": 7, "nOperators": 3, "nWorkOrders": 4, "nTasks": 6, "nStockRequests": 2},
    )
    p = generate_workforce(cfg)
    assert len(p.users) == 15
    assert len(p.resources) == 12


def test_edocument_user_scaling_doubles():
    doubled = {
        name: (value * 2 if name in ("nEmployees", "nCustomers", "nAdmins") else value)
        for name, value in EDOCUMENT_DEFAULTS.items()
    }
    p = generate_edocument(GenConfig(seed=42, size_controls=doubled))
    assert len(p.users) == 1000
    assert len(p.resources) == 300


def test_every_rule_grants_at_default_config():
    for gen in (generate_workforce, generate_edocument):
        p = gen(GenConfig(seed=42))
        assert all(c.granted_count > 0 for c in rule_coverage(p))


def test_workforce_referential_integrity():
    p = generate_workforce(GenConfig(seed=11))
    user_ids = set(p.users_by_id)
    wo_ids = {r.id for r in p.resources if r.attrs["type"] == "workOrder"}
    for r in p.resources:
        attrs = r.attrs
        if "workOrder" in attrs:
            assert attrs["workOrder"] in wo_ids
        for ref in ("createdBy", "assignee", "requestedBy"):
            if ref in attrs:
                assert attrs[ref] in user_ids, (r.id, ref)
        if "team" in attrs:
            assert attrs["team"] <= user_ids


def test_edocument_referential_integrity():
    p = generate_edocument(GenConfig(seed=11))
    user_ids = set(p.users_by_id)
    for r in p.resources:
        attrs = r.attrs
        for ref in ("sender", "customer", "payee"):
            if ref in attrs:
                assert attrs[ref] in user_ids, (r.id, ref)
        if "recipients" in attrs:
            assert attrs["recipients"] <= user_ids
    for u in p.users:
        if "supervisedEmployees" in u.attrs:
            assert u.attrs["supervisedEmployees"] <= user_ids


def test_unknown_size_control_rejected():
    with pytest.raises(AbacError, match="unknown size controls"):
        generate_workforce(GenConfig(seed=1, size_controls={"nWizards": 3}))


def test_parse_config_file():
    cfg = parse_config_file("# comment\nseed=99\nnManagers=2\n\nnTasks = 7\n")
    assert cfg.seed == 99
    assert cfg.size_controls == {"nManagers": 2, "nTasks": 7}
    with pytest.raises(AbacError):
        parse_config_file("nManagers=two")
    with pytest.raises(AbacError):
        parse_config_file("just words")
    with pytest.raises(AbacError):
        parse_config_file("nManagers=-3")
