import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elspl.instance import (
    INFEASIBLE,
    Instance,
    InstanceParseError,
    InstanceValidationError,
    ScheduleError,
    cost_add,
    evaluate_schedule,
    generate_instance,
    make_schedule,
    parse_instance,
    serialize_instance,
    validate,
)


def test_cost_add_saturates():
    assert cost_add(1, 2, 3) == 6
    assert cost_add(5, INFEASIBLE) == INFEASIBLE
    assert cost_add() == 0


def test_production_cost_pieces(t2_instance):
    inst = t2_instance
    assert inst.production_cost(1, 0) == 0
    assert inst.production_cost(1, 3) == 13
    assert inst.production_cost(1, 5) == 15
    assert inst.production_cost(1, 6) == 15 + 12  # second piece: 15 + 2*6
    assert inst.production_cost(1, 100) == 215
    assert inst.production_cost(1, 101) == INFEASIBLE
    assert inst.production_cost(1, -1) == INFEASIBLE


def test_inventory_cost_linear_and_table():
    inst = Instance.linear((1, 1), (10,), (0,), (0,), 2, 3)
    assert inst.inventory_cost(1, 4) == 8
    assert inst.inventory_cost(1, -4) == 12
    assert inst.inventory_cost(1, 0) == 0
    concave = Instance((1,), (10,), ((0,),), ((0,),), (((2, 5), (None, 1)),), (0,))
    assert validate(concave) == []
    assert concave.inventory_cost(1, 2) == 10
    assert concave.inventory_cost(1, 5) == 13


def test_cumulative_demand_clamps(t2_instance):
    assert t2_instance.cumulative_demand(1, 2) == 7
    assert t2_instance.cumulative_demand(2, 1) == 0
    assert t2_instance.cumulative_demand(0, 1) == 3
    assert t2_instance.cumulative_demand(2, 5) == 4


def test_validate_messages():
    bad = Instance.linear((1, -2, 0), (5, 5), (0, 0), (0, 0), 1, 1)
    msgs = validate(bad)
    assert "breakpoints not strictly increasing" in msgs
    assert "negative demand at period 2" in msgs
    with pytest.raises(InstanceValidationError):
        parse_instance(serialize_instance(bad))


def test_validate_capacity_infeasible():
    inst = Instance.linear((10, 10), (3,), (0,), (0,), 1, 1)
    assert any("cannot cover total demand" in m for m in validate(inst))


def test_validate_concavity():
    inst = Instance((1,), (10,), ((0,),), ((0,),), (((2, 1), (None, 5)),), (0,))
    assert any("not concave" in m for m in validate(inst))


def test_round_trip(t2_instance):
    text = serialize_instance(t2_instance)
    assert parse_instance(text) == t2_instance
    assert parse_instance(text).digest == t2_instance.digest


def test_parse_errors_have_locations(t2_instance):
    with pytest.raises(InstanceParseError) as e:
        parse_instance('{"horizon": 2,')
    assert "line 1" in str(e.value)
    data = json.loads(serialize_instance(t2_instance))
    data["pieces"][1][0]["colour"] = 3
    with pytest.raises(InstanceParseError) as e:
        parse_instance(json.dumps(data))
    assert "pieces[1][0]" in str(e.value)
    data = json.loads(serialize_instance(t2_instance))
    data["demands"][0] = 1.5
    with pytest.raises(InstanceParseError) as e:
        parse_instance(json.dumps(data))
    assert e.value.location == "demands[0]"


def test_evaluate_schedule(t2_instance):
    assert evaluate_schedule(t2_instance, [3, 4]) == 27
    assert evaluate_schedule(t2_instance, [7, 0]) == 29 + 4  # second piece, then hold 4
    assert evaluate_schedule(t2_instance, [0, 7]) == 6 + 29  # backlog 3 at rate 2
    with pytest.raises(ScheduleError):
        evaluate_schedule(t2_instance, [3, 3])
    s = make_schedule(t2_instance, [3, 4])
    assert s.inventory == (0, 0, 0) and s.total_cost == 27
    forged = s.__class__((3, 4), (0, 1, 0), 27)
    with pytest.raises(ScheduleError):
        evaluate_schedule(t2_instance, forged)


def test_generate_is_deterministic():
    a = generate_instance(7, 6, 2)
    b = generate_instance(7, 6, 2)
    assert a == b and a.digest == b.digest
    assert generate_instance(8, 6, 2) != a


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 12), st.integers(0, 3), st.booleans(), st.booleans())
def test_generated_instances_validate(seed, T, m, unc, reg):
    inst = generate_instance(seed, T, m, uncapacitated=unc, regular=reg)
    assert validate(inst) == []
    assert parse_instance(serialize_instance(inst)) == inst
    if unc and reg:
        assert inst.levels == (0,) + inst.breakpoints[:-1]
