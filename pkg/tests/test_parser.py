"""`.abac` parsing, serialization, and validation."""

import pytest

from abacbench import (
    ConjunctOp,
    ConstraintOp,
    PolicyParseError,
    parse_policy,
    parse_rules,
    serialize_policy,
    validate_policy,
)
from abacbench.datasets import DATASET_NAMES, dataset_text, load_dataset
from abacbench.validate import MISSING_ATTRIBUTE, UNDECLARED_ATTRIBUTE, ZERO_PERMISSION_RULE


def test_entity_declaration():
    p = parse_policy("userAttrib(u1, position=student, crsTaken={cs101 cs601})")
    (u,) = p.users
    assert u.id == "u1"
    assert u.attrs["position"] == "student"
    assert u.attrs["crsTaken"] == frozenset({"cs101", "cs601"})


def test_empty_condition_rule():
    p = parse_policy("rule(; ; {read}; )")
    (r,) = p.rules
    assert r.sub_cond == () and r.res_cond == () and r.constraints == ()
    assert r.actions == frozenset({"read"})
    assert r.index == 1


def test_rule_indices_in_file_order():
    p = parse_policy("rule(; ; {a}; )\nrule(; ; {b}; )\nrule(; ; {c}; )")
    assert [r.index for r in p.rules] == [1, 2, 3]
    assert p.actions == ("a", "b", "c")


def test_operator_forms_and_sugar():
    p = parse_policy(
        "rule(dept = cs, tags supseteq {x y}, lvl in {1 2}, caps subseteq {a b}; ; {act}; "
        "uid = owner, crs in crsSet, skills contains need, a supseteq b, c subseteq d)"
    )
    (r,) = p.rules
    ops = [(c.attr, c.op, c.consts) for c in r.sub_cond]
    assert ops[0] == ("dept", ConjunctOp.IN, frozenset({"cs"}))  # sugar: = is in-singleton
    assert ops[1] == ("tags", ConjunctOp.SUPSETEQ, frozenset({"x", "y"}))
    assert ops[2] == ("lvl", ConjunctOp.IN, frozenset({"1", "2"}))
    assert ops[3] == ("caps", ConjunctOp.SUBSETEQ, frozenset({"a", "b"}))
    cops = [k.op for k in r.constraints]
    assert cops == [
        ConstraintOp.EQUAL,
        ConstraintOp.IN,
        ConstraintOp.CONTAINS,
        ConstraintOp.SUPSETEQ,
        ConstraintOp.SUBSETEQ,
    ]


def test_contains_sugar_is_supseteq_singleton():
    p = parse_policy("rule(crsTaken contains cs101; ; {act}; )")
    (c,) = p.rules[0].sub_cond
    assert c.op is ConjunctOp.SUPSETEQ and c.consts == frozenset({"cs101"})


def test_comments_blanks_and_wrapped_statements():
    text = """
    # header comment
    userAttrib(u1,
        position=student,   # trailing comment
        crsTaken={cs101
                  cs601})

    rule(position in {student};
         ; {read}; )
    """
    p = parse_policy(text)
    assert p.users[0].attrs["crsTaken"] == frozenset({"cs101", "cs601"})
    assert len(p.rules) == 1


def test_crlf_accepted():
    p = parse_policy("userAttrib(u1, a=1)\r\nresourceAttrib(r1, b=2)\r\n")
    assert p.users[0].id == "u1" and p.resources[0].id == "r1"


def test_declaration_order_preserved():
    p = parse_policy("userAttrib(z)\nuserAttrib(a)\nresourceAttrib(m)\nresourceAttrib(b)")
    assert [u.id for u in p.users] == ["z", "a"]
    assert [r.id for r in p.resources] == ["m", "b"]


def test_empty_set_value_allowed_on_entities():
    p = parse_policy("userAttrib(u1, crsTaken={})")
    assert p.users[0].attrs["crsTaken"] == frozenset()


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("userAttrib(u1)\nuserAttrib(u1)", "duplicate user id"),
        ("rule(; ; {}; )", "non-empty"),
        ("rule(position foo {x}; ; {a}; )", "unknown operator"),
        ("rule(; ; {a}; uid near owner)", "unknown operator"),
        ("userAttrib(u1, a=1, a=2)", "declared twice"),
        ("userAttrib(u1, a=1", "missing ')'"),
        ("rule(position in {student}; ; {a}", "missing ')'"),
        ("userAttrib(u1, a={x})\nuserAttrib(u2, a=x)", "atomic"),
        ("widget(u1)", "unknown statement"),
        ("rule(position in {}; ; {a}; )", "non-empty"),
        ("userAttrib(u1, 9bad=x)", "invalid attribute name"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(PolicyParseError) as err:
        parse_policy(text)
    assert fragment in str(err.value)


def test_parse_error_carries_line_number():
    with pytest.raises(PolicyParseError) as err:
        parse_policy("userAttrib(u1)\n\nrule(position foo {x}; ; {a}; )")
    assert err.value.line == 3
    assert "line 3" in str(err.value)


def test_mixed_arity_error_points_at_both_lines():
    with pytest.raises(PolicyParseError) as err:
        parse_policy("userAttrib(u1, a=x)\nuserAttrib(u2, a={x y})")
    assert "line 1" in str(err.value) and err.value.line == 2


def test_parse_rules_only():
    rules = parse_rules("rule(; ; {read}; )\nrule(a = b; ; {write}; )")
    assert [r.index for r in rules] == [1, 2]
    assert parse_rules("") == ()
    assert parse_rules("# only a comment\n") == ()
    with pytest.raises(PolicyParseError):
        parse_rules("userAttrib(u1)")


def test_serialize_sorts_sets_and_attrs():
    p = parse_policy("userAttrib(u1, zeta=1, alpha={b a})")
    out = serialize_policy(p)
    assert "userAttrib(u1, alpha={a b}, zeta=1)" in out
    assert out.endswith("\n")
    assert "\r" not in out


def test_serialize_empty_components():
    p = parse_policy("rule(; ; {read}; )")
    assert "rule(; ; {read}; )" in serialize_policy(p)


def test_roundtrip_bundled_datasets():
    for name in DATASET_NAMES:
        p = load_dataset(name)
        again = parse_policy(serialize_policy(p), name)
        assert again == p, name
        # serialization is canonical: a second pass is byte-identical
        assert serialize_policy(again) == serialize_policy(p)


def test_bundled_corpus_parses_totally():
    for name in DATASET_NAMES:
        text = dataset_text(name)
        assert parse_policy(text, name).rules


def test_validate_undeclared_attribute():
    p = parse_policy("userAttrib(u1, position=x)\nrule(dept2 = y; ; {act}; )")
    diags = validate_policy(p)
    kinds = [d for d in diags if d.kind == UNDECLARED_ATTRIBUTE]
    assert len(kinds) == 1
    assert kinds[0].attr == "dept2"


def test_validate_missing_attribute():
    text = """
    userAttrib(u1, position=student)
    userAttrib(u2)
    rule(position in {student}; ; {act}; )
    """
    diags = validate_policy(parse_policy(text))
    missing = [d for d in diags if d.kind == MISSING_ATTRIBUTE]
    assert [(d.entity_id, d.attr) for d in missing] == [("u2", "position")]


def test_validate_zero_permission_rule_deep():
    text = """
    userAttrib(u1, position=student)
    resourceAttrib(r1, type=gradebook)
    rule(position in {professor}; ; {act}; )
    rule(position in {student}; ; {act}; )
    """
    p = parse_policy(text)
    assert not [d for d in validate_policy(p) if d.kind == ZERO_PERMISSION_RULE]
    deep = [d for d in validate_policy(p, deep=True) if d.kind == ZERO_PERMISSION_RULE]
    assert [d.rule_index for d in deep] == [1]


def test_bundled_datasets_have_no_undeclared_warnings():
    for name in DATASET_NAMES:
        diags = validate_policy(load_dataset(name))
        assert not [d for d in diags if d.kind == UNDECLARED_ATTRIBUTE], name
