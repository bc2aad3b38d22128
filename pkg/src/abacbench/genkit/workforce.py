"""Workforce-management dataset generator.

Models a field-service operation: managers, technicians, and operators
working on work orders, their tasks, and stock refill requests.  The rule
set is fixed; the object model is drawn pseudorandomly from the
distributions in data/workforce_model.json, parameterized by size controls.
Equal configs produce byte-identical policies.
"""

from __future__ import annotations

from ..model import RESOURCE, USER, Entity, Policy
from ..parser import parse_rules
from ..prng import SplitMix64
from .config import GenConfig, resolve_controls
from .draws import load_model, percent, subset, weighted

DEFAULT_CONTROLS = {
    "nManagers": 28,
    "nTechnicians": 215,
    "nOperators": 110,
    "nWorkOrders": 80,
    "nTasks": 120,
    "nStockRequests": 50,
}

RULES_TEXT = """
# --- work orders ---
rule(role in {operator}, department in {helpdesk}; type in {workOrder}; {viewWorkOrder}; region = region)
rule(role in {operator}; type in {workOrder}; {updateWorkOrder}; uid = createdBy)
rule(role in {manager}; type in {workOrder}; {viewWorkOrder}; managedTenants contains tenant)
rule(role in {manager}; type in {workOrder}, status in {done}; {closeWorkOrder}; managedTenants contains tenant)
rule(role in {manager}, isSupervisor in {true}; type in {workOrder}; {viewWorkOrder}; )
rule(role in {manager}, isSupervisor in {true}; type in {workOrder}; {closeWorkOrder}; )
rule(role in {technician}; type in {workOrder}; {viewWorkOrder}; uid in team)
rule(role in {technician}, shift in {day}; type in {workOrder}, status in {open}; {viewWorkOrder}; region = region)
rule(role in {operator}; type in {workOrder}, priority in {high}; {escalateWorkOrder}; region = region)
rule(role in {manager}; type in {workOrder}; {createTask}; managedTenants contains tenant)

# --- tasks ---
rule(role in {technician}; type in {task}; {viewTask}; uid = assignee)
rule(role in {technician}; type in {task}; {updateTask}; uid = assignee)
rule(role in {technician}, certified in {true}; type in {task}; {completeTask}; uid = assignee, expertise supseteq requiredSkills)
rule(role in {technician}; type in {task}, status in {open}; {viewTask}; region = region)
rule(role in {technician}; type in {task}, status in {scheduled}; {viewTask}; expertise supseteq requiredSkills, region = region)
rule(role in {technician}, seniority in {senior}; type in {task}, priority in {high}; {updateTask}; region = region)
rule(role in {manager}; type in {task}, status in {open}; {assignTask}; managedTenants contains tenant)
rule(role in {manager}; type in {task}; {viewTask}; managedTenants contains tenant)
rule(role in {manager}, isSupervisor in {true}; type in {task}; {assignTask reassignTask}; )
rule(role in {operator}, department in {helpdesk}; type in {task}; {viewTask}; region = region)

# --- stock refill requests ---
rule(role in {technician}; type in {workOrder}; {createStockRequest}; uid in team)
rule(role in {technician}; type in {stockRequest}; {viewStockRequest}; uid = requestedBy)
rule(role in {operator}, department in {warehouse}; type in {stockRequest}; {viewStockRequest}; )
rule(role in {operator}, department in {warehouse}; type in {stockRequest}, quantityBand in {small}, status in {approved}; {fulfillStockRequest}; region = warehouse)
rule(role in {manager}; type in {stockRequest}, quantityBand in {bulk}, status in {pending}; {approveStockRequest}; managedTenants contains tenant)
rule(role in {manager}, isSupervisor in {true}; type in {stockRequest}, status in {pending}; {approveStockRequest}; )
rule(role in {manager}, department in {accounts}; type in {stockRequest}; {viewStockRequest}; managedTenants contains tenant)
rule(role in {manager}, department in {operations}; type in {workOrder}, status in {scheduled}; {updateWorkOrder}; managedTenants contains tenant)
"""


def generate_workforce(cfg: GenConfig) -> Policy:
    """Build the workforce policy for a config (see DEFAULT_CONTROLS)."""
    controls = resolve_controls(cfg, DEFAULT_CONTROLS)
    model = load_model("workforce_model.json")
    rng = SplitMix64(cfg.seed)

    users = []
    managers = _managers(rng, model, controls["nManagers"])
    technicians = _technicians(rng, model, controls["nTechnicians"])
    operators = _operators(rng, model, controls["nOperators"])
    users = managers + technicians + operators

    helpdesk = [u.id for u in operators if u.attrs.get("department") == "helpdesk"]
    tech_ids = [u.id for u in technicians]

    work_orders = _work_orders(rng, model, controls["nWorkOrders"], helpdesk, tech_ids)
    tasks = _tasks(rng, model, controls["nTasks"], work_orders, technicians)
    stock_requests = _stock_requests(rng, model, controls["nStockRequests"], work_orders)
    resources = work_orders + tasks + stock_requests

    return Policy(
        name="workforce",
        users=tuple(users),
        resources=tuple(resources),
        rules=parse_rules(RULES_TEXT),
    )


def _managers(rng, model, n):
    m = model["manager"]
    out = []
    for i in range(1, n + 1):
        attrs = {
            "uid": f"mgr{i}",
            "role": "manager",
            "department": weighted(rng, m["departments"], m["departmentWeights"]),
            "region": weighted(rng, model["regions"], model["regionWeights"]),
            "shift": weighted(rng, model["shifts"], model["shiftWeights"]),
            "seniority": weighted(rng, model["seniorities"], model["seniorityWeights"]),
            "isSupervisor": "true" if percent(rng, m["supervisorPercent"]) else "false",
            "managedTenants": subset(
                rng, model["tenants"], m["managedTenantsMin"], m["managedTenantsMax"]
            ),
        }
        out.append(Entity(id=f"mgr{i}", kind=USER, attrs=attrs))
    return out


def _technicians(rng, model, n):
    t = model["technician"]
    out = []
    for i in range(1, n + 1):
        attrs = {
            "uid": f"tech{i}",
            "role": "technician",
            "department": "field",
            "region": weighted(rng, model["regions"], model["regionWeights"]),
            "shift": weighted(rng, model["shifts"], model["shiftWeights"]),
            "seniority": weighted(rng, model["seniorities"], model["seniorityWeights"]),
            "certified": "true" if percent(rng, t["certifiedPercent"]) else "false",
            "expertise": subset(rng, model["skills"], t["expertiseMin"], t["expertiseMax"]),
        }
        out.append(Entity(id=f"tech{i}", kind=USER, attrs=attrs))
    return out


def _operators(rng, model, n):
    o = model["operator"]
    out = []
    for i in range(1, n + 1):
        attrs = {
            "uid": f"op{i}",
            "role": "operator",
            "department": weighted(rng, o["departments"], o["departmentWeights"]),
            "region": weighted(rng, model["regions"], model["regionWeights"]),
            "shift": weighted(rng, model["shifts"], model["shiftWeights"]),
            "seniority": weighted(rng, model["seniorities"], model["seniorityWeights"]),
        }
        out.append(Entity(id=f"op{i}", kind=USER, attrs=attrs))
    return out


def _work_orders(rng, model, n, helpdesk_ids, tech_ids):
    wo = model["workOrder"]
    out = []
    for i in range(1, n + 1):
        attrs = {
            "type": "workOrder",
            "tenant": weighted(rng, model["tenants"], [1] * len(model["tenants"])),
            "region": weighted(rng, model["regions"], model["regionWeights"]),
            "site": model["sites"][rng.below(len(model["sites"]))],
            "service": weighted(rng, model["services"], model["serviceWeights"]),
            "status": weighted(rng, wo["statuses"], wo["statusWeights"]),
            "priority": weighted(rng, wo["priorities"], wo["priorityWeights"]),
        }
        if helpdesk_ids:
            attrs["createdBy"] = helpdesk_ids[rng.below(len(helpdesk_ids))]
        if tech_ids:
            attrs["team"] = subset(rng, tech_ids, wo["teamMin"], wo["teamMax"])
        out.append(Entity(id=f"wo{i}", kind=RESOURCE, attrs=attrs))
    return out


def _tasks(rng, model, n, work_orders, technicians):
    t = model["task"]
    tech_by_id = {u.id: u for u in technicians}
    out = []
    for i in range(1, n + 1):
        attrs = {
            "type": "task",
            "status": weighted(rng, t["statuses"], t["statusWeights"]),
            "priority": weighted(rng, t["priorities"], t["priorityWeights"]),
        }
        assignee = None
        if work_orders:
            parent = work_orders[rng.below(len(work_orders))]
            attrs["workOrder"] = parent.id
            attrs["tenant"] = parent.attrs["tenant"]
            attrs["region"] = parent.attrs["region"]
            team = sorted(parent.attrs.get("team", ()))
            if team and not percent(rng, t["unassignedPercent"]):
                assignee = team[rng.below(len(team))]
                attrs["assignee"] = assignee
        else:
            attrs["tenant"] = weighted(rng, model["tenants"], [1] * len(model["tenants"]))
            attrs["region"] = weighted(rng, model["regions"], model["regionWeights"])
        # skills usually drawn from the assignee so completions are possible
        if assignee is not None and percent(rng, t["skillMatchedPercent"]):
            pool = sorted(tech_by_id[assignee].attrs["expertise"])
        else:
            pool = model["skills"]
        attrs["requiredSkills"] = subset(
            rng, pool, t["requiredSkillsMin"], t["requiredSkillsMax"]
        )
        out.append(Entity(id=f"task{i}", kind=RESOURCE, attrs=attrs))
    return out


def _stock_requests(rng, model, n, work_orders):
    s = model["stockRequest"]
    out = []
    for i in range(1, n + 1):
        attrs = {
            "type": "stockRequest",
            "item": model["stockItems"][rng.below(len(model["stockItems"]))],
            "quantityBand": weighted(rng, s["quantityBands"], s["quantityBandWeights"]),
            "status": weighted(rng, s["statuses"], s["statusWeights"]),
        }
        if work_orders:
            parent = work_orders[rng.below(len(work_orders))]
            attrs["workOrder"] = parent.id
            attrs["tenant"] = parent.attrs["tenant"]
            attrs["warehouse"] = parent.attrs["region"]
            team = sorted(parent.attrs.get("team", ()))
            if team:
                attrs["requestedBy"] = team[rng.below(len(team))]
        else:
            attrs["tenant"] = weighted(rng, model["tenants"], [1] * len(model["tenants"]))
            attrs["warehouse"] = weighted(rng, model["regions"], model["regionWeights"])
        out.append(Entity(id=f"sr{i}", kind=RESOURCE, attrs=attrs))
    return out
