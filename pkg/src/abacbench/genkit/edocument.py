"""E-document dataset generator.

Models a multi-tenant document-processing service: tenant employees,
external customers, and platform admins working with invoices, banking
notes, and paychecks.  The 25-rule policy is fixed; the object model comes
from data/edocument_model.json distributions under the given size controls.
"""

from __future__ import annotations

from ..model import RESOURCE, USER, Entity, Policy
from ..parser import parse_rules
from ..prng import SplitMix64
from .config import GenConfig, resolve_controls
from .draws import load_model, percent, subset, weighted

DEFAULT_CONTROLS = {
    "nEmployees": 300,
    "nCustomers": 150,
    "nAdmins": 50,
    "nInvoices": 125,
    "nBankingNotes": 100,
    "nPaychecks": 75,
    "nTenants": 10,
}

RULES_TEXT = """
# --- invoices ---
rule(role in {employee}, department in {finance}; type in {invoice}; {view}; tenant = tenant)
rule(role in {employee}, department in {sales}; type in {invoice}, department in {sales}; {view}; tenant = tenant)
rule(role in {customer}, registered in {true}; type in {invoice}; {view}; uid = customer)
rule(role in {customer}, registered in {true}; type in {invoice}, status in {sent}; {download}; uid = customer)
rule(role in {customer}; type in {invoice}, confidential in {false}; {readMetaInfo}; uid = customer)
rule(role in {employee}, department in {finance}, position in {supervisor director}; type in {invoice}, status in {draft}; {approve}; tenant = tenant)
rule(role in {employee}, department in {finance}, position in {clerk}; type in {invoice}, status in {draft}; {update}; uid = sender)
rule(role in {employee}; type in {invoice}, status in {approved}; {send}; uid = sender)

# --- banking notes ---
rule(role in {employee}, department in {finance}, position in {director}; type in {bankingNote}; {view}; tenant = tenant)
rule(role in {employee}, clearance in {confidential}; type in {bankingNote}; {readMetaInfo}; tenant = tenant)
rule(role in {employee}, department in {finance}, position in {director}; type in {bankingNote}, status in {draft}; {approve}; tenant = tenant)

# --- paychecks ---
rule(role in {employee}; type in {paycheck}; {view}; uid = payee)
rule(role in {employee}, department in {hr}; type in {paycheck}; {view}; tenant = tenant)
rule(role in {employee}, department in {hr}; type in {paycheck}; {readMetaInfo}; tenant = tenant)
rule(role in {employee}, department in {hr}, position in {supervisor director}; type in {paycheck}, status in {issued}; {send}; tenant = tenant)

# --- any document type ---
rule(role in {employee}; ; {view}; uid = sender)
rule(; ; {receive}; uid in recipients)
rule(role in {employee}; confidential in {false}; {readMetaInfo}; tenant = tenant)
rule(role in {employee}, position in {supervisor director}; ; {view}; supervisedEmployees contains sender)
rule(role in {employee}, position in {director}; confidential in {false}; {view}; tenant = tenant)
rule(role in {employee}, department in {legal}; status in {archived}; {view}; tenant = tenant)
rule(role in {employee}; status in {sent}; {archive}; uid = sender)
rule(role in {admin}; ; {readMetaInfo}; managedTenants contains tenant)
rule(role in {admin}; status in {archived}; {view}; managedTenants contains tenant)
rule(role in {admin}; status in {archived}; {purge}; managedTenants contains tenant)
"""


def generate_edocument(cfg: GenConfig) -> Policy:
    """Build the e-document policy for a config (see DEFAULT_CONTROLS)."""
    controls = resolve_controls(cfg, DEFAULT_CONTROLS)
    model = load_model("edocument_model.json")
    rng = SplitMix64(cfg.seed)
    tenants = [f"tenant{i}" for i in range(1, controls["nTenants"] + 1)]
    tweights = model["tenantWeights"]

    employees = _employees(rng, model, controls["nEmployees"], tenants, tweights)
    customers = _customers(rng, model, controls["nCustomers"], tenants, tweights)
    admins = _admins(rng, model, controls["nAdmins"], tenants)
    users = employees + customers + admins

    emp_by_tenant = _group_by_tenant(employees)
    cust_by_tenant = _group_by_tenant(customers)
    _assign_supervised(rng, model, employees, emp_by_tenant)

    invoices = _invoices(
        rng, model, controls["nInvoices"], tenants, tweights, emp_by_tenant, cust_by_tenant
    )
    notes = _banking_notes(rng, model, controls["nBankingNotes"], tenants, tweights, emp_by_tenant)
    paychecks = _paychecks(rng, model, controls["nPaychecks"], tenants, tweights, emp_by_tenant)
    resources = invoices + notes + paychecks

    return Policy(
        name="e-document",
        users=tuple(users),
        resources=tuple(resources),
        rules=parse_rules(RULES_TEXT),
    )


def _base_user(rng, model, uid, role):
    return {
        "uid": uid,
        "role": role,
        "office": model["offices"][rng.below(len(model["offices"]))],
        "language": weighted(rng, model["languages"], model["languageWeights"]),
    }


def _employees(rng, model, n, tenants, tweights):
    out = []
    for i in range(1, n + 1):
        uid = f"emp{i}"
        attrs = _base_user(rng, model, uid, "employee")
        if tenants:
            attrs["tenant"] = weighted(rng, tenants, tweights)
        attrs["department"] = weighted(rng, model["departments"], model["departmentWeights"])
        attrs["position"] = weighted(rng, model["positions"], model["positionWeights"])
        attrs["clearance"] = weighted(rng, model["clearances"], model["clearanceWeights"])
        out.append(Entity(id=uid, kind=USER, attrs=attrs))
    return out


def _assign_supervised(rng, model, employees, emp_by_tenant):
    """Second pass: supervisors get a set of same-tenant employee uids.

    Entities are frozen dataclasses but attrs dicts are built here before
    the policy escapes, so filling them in place is safe.
    """
    cap = model["employee"]["supervisedMax"]
    for emp in employees:
        if emp.attrs.get("position") not in ("supervisor", "director"):
            continue
        pool = [e.id for e in emp_by_tenant.get(emp.attrs.get("tenant"), []) if e.id != emp.id]
        chosen = subset(rng, pool, 1, cap)
        if chosen:
            emp.attrs["supervisedEmployees"] = chosen


def _customers(rng, model, n, tenants, tweights):
    out = []
    for i in range(1, n + 1):
        uid = f"cust{i}"
        attrs = _base_user(rng, model, uid, "customer")
        if tenants:
            attrs["tenant"] = weighted(rng, tenants, tweights)
        attrs["registered"] = (
            "true" if percent(rng, model["customer"]["registeredPercent"]) else "false"
        )
        out.append(Entity(id=uid, kind=USER, attrs=attrs))
    return out


def _admins(rng, model, n, tenants):
    a = model["admin"]
    out = []
    for i in range(1, n + 1):
        uid = f"adm{i}"
        attrs = _base_user(rng, model, uid, "admin")
        managed = subset(rng, tenants, a["managedTenantsMin"], a["managedTenantsMax"])
        if managed:
            attrs["managedTenants"] = managed
        out.append(Entity(id=uid, kind=USER, attrs=attrs))
    return out


def _group_by_tenant(users):
    groups: dict = {}
    for u in users:
        tenant = u.attrs.get("tenant")
        if tenant is not None:
            groups.setdefault(tenant, []).append(u)
    return groups


def _doc_tenant(rng, tenants, tweights):
    return weighted(rng, tenants, tweights) if tenants else None


def _sender_from(rng, emp_by_tenant, tenant, departments=None):
    pool = emp_by_tenant.get(tenant, [])
    if departments is not None:
        narrowed = [e for e in pool if e.attrs.get("department") in departments]
        pool = narrowed or pool
    if not pool:
        return None
    return pool[rng.below(len(pool))].id


def _invoices(rng, model, n, tenants, tweights, emp_by_tenant, cust_by_tenant):
    inv = model["invoice"]
    out = []
    for i in range(1, n + 1):
        tenant = _doc_tenant(rng, tenants, tweights)
        attrs = {
            "type": "invoice",
            "department": weighted(rng, inv["departments"], inv["departmentWeights"]),
            "status": weighted(rng, inv["statuses"], inv["statusWeights"]),
            "confidential": "true" if percent(rng, inv["confidentialPercent"]) else "false",
        }
        if tenant:
            attrs["tenant"] = tenant
        sender = _sender_from(rng, emp_by_tenant, tenant, ("finance", "sales"))
        if sender:
            attrs["sender"] = sender
        custs = cust_by_tenant.get(tenant, [])
        if custs:
            attrs["customer"] = custs[rng.below(len(custs))].id
        recipients = _recipients(
            rng,
            [e.id for e in emp_by_tenant.get(tenant, [])] + [c.id for c in custs],
            inv["recipientsMin"],
            inv["recipientsMax"],
        )
        if recipients:
            attrs["recipients"] = recipients
        out.append(Entity(id=f"inv{i}", kind=RESOURCE, attrs=attrs))
    return out


def _banking_notes(rng, model, n, tenants, tweights, emp_by_tenant):
    note = model["bankingNote"]
    out = []
    for i in range(1, n + 1):
        tenant = _doc_tenant(rng, tenants, tweights)
        attrs = {
            "type": "bankingNote",
            "department": "finance",
            "status": weighted(rng, note["statuses"], note["statusWeights"]),
            "confidential": "true" if percent(rng, note["confidentialPercent"]) else "false",
        }
        if tenant:
            attrs["tenant"] = tenant
        sender = _sender_from(rng, emp_by_tenant, tenant, ("finance",))
        if sender:
            attrs["sender"] = sender
        recipients = _recipients(
            rng,
            [e.id for e in emp_by_tenant.get(tenant, [])],
            note["recipientsMin"],
            note["recipientsMax"],
        )
        if recipients:
            attrs["recipients"] = recipients
        out.append(Entity(id=f"note{i}", kind=RESOURCE, attrs=attrs))
    return out


def _paychecks(rng, model, n, tenants, tweights, emp_by_tenant):
    pay = model["paycheck"]
    out = []
    for i in range(1, n + 1):
        tenant = _doc_tenant(rng, tenants, tweights)
        attrs = {
            "type": "paycheck",
            "department": "hr",
            "status": weighted(rng, pay["statuses"], pay["statusWeights"]),
            "confidential": "true" if percent(rng, pay["confidentialPercent"]) else "false",
        }
        if tenant:
            attrs["tenant"] = tenant
        sender = _sender_from(rng, emp_by_tenant, tenant, ("hr",))
        if sender:
            attrs["sender"] = sender
        pool = emp_by_tenant.get(tenant, [])
        if pool:
            payee = pool[rng.below(len(pool))].id
            attrs["payee"] = payee
            attrs["recipients"] = frozenset([payee])
        out.append(Entity(id=f"pay{i}", kind=RESOURCE, attrs=attrs))
    return out


def _recipients(rng, pool, lo, hi) -> frozenset:
    return subset(rng, pool, lo, hi)
