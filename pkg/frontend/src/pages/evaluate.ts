/** Access Evaluation page: Manual Check (all fields optional) and File
 * Check (batch CSV upload with downloadable results). */

import type { ApiClient, EvalResponse } from "../api.js";
import { isDecision } from "../api.js";
import { clear, downloadText, el, errorBox, parseCsv, table } from "../dom.js";

export function renderEvalResult(response: EvalResponse): HTMLElement {
  if (isDecision(response)) {
    const verdict = response.permitted ? "PERMIT" : "DENY";
    const rules = response.matchingRules.length
      ? ` — matching rules: ${response.matchingRules.join(", ")}`
      : "";
    const note = response.note ? ` (${response.note})` : "";
    return el("div", { class: `decision ${verdict.toLowerCase()}` }, [
      el("strong", { text: verdict }),
      el("span", { text: rules + note }),
    ]);
  }
  const rows = response.permissions.map((p) => [p.user, p.resource, p.action]);
  const summary =
    response.total > response.permissions.length
      ? `showing ${response.permissions.length} of ${response.total} permissions`
      : `${response.total} permissions`;
  return el("div", { class: "eval-result" }, [
    el("p", { class: "result-summary", "data-total": String(response.total), text: summary }),
    table(["user", "resource", "action"], rows),
  ]);
}

export function renderCheckResult(csv: string): HTMLElement {
  const rows = parseCsv(csv);
  const [header, ...body] = rows;
  return el("div", { class: "check-result" }, [
    el("p", { class: "result-summary", text: `${body.length} request results` }),
    table(header ?? [], body),
  ]);
}

export function mountEvaluate(root: HTMLElement, api: ApiClient, policyId: string): void {
  clear(root);
  const userInput = el("input", { id: "eval-user", placeholder: "user id (optional)" });
  const resInput = el("input", { id: "eval-resource", placeholder: "resource id (optional)" });
  const actInput = el("input", { id: "eval-action", placeholder: "action (optional)" });
  const runButton = el("button", { type: "submit", text: "Check" });
  const manualOut = el("div", { id: "manual-result" });

  const form = el("form", { id: "manual-check" }, [
    userInput,
    resInput,
    actInput,
    runButton,
  ]);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      clear(manualOut);
      try {
        const response = await api.evaluate(policyId, {
          user: userInput.value.trim() || undefined,
          resource: resInput.value.trim() || undefined,
          action: actInput.value.trim() || undefined,
        });
        manualOut.append(renderEvalResult(response));
      } catch (err) {
        manualOut.append(errorBox(String((err as Error).message)));
      }
    })();
  });

  const fileInput = el("input", { type: "file", id: "check-file", accept: ".csv" });
  const checkOut = el("div", { id: "check-result" });
  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    void (async () => {
      clear(checkOut);
      try {
        const result = await api.checkFile(policyId, await file.text());
        checkOut.append(renderCheckResult(result));
        const download = el("button", { text: "Download results CSV" });
        download.addEventListener("click", () =>
          downloadText(`${policyId}-check-results.csv`, result),
        );
        checkOut.append(download);
      } catch (err) {
        checkOut.append(errorBox(String((err as Error).message)));
      }
    })();
  });

  root.append(
    el("section", { class: "page eval-page" }, [
      el("h2", { text: `Access Evaluation — ${policyId}` }),
      el("h3", { text: "Manual Check" }),
      el("p", {
        class: "hint",
        text: "Fill any combination of fields; empty fields range over everything.",
      }),
      form,
      manualOut,
      el("h3", { text: "File Check" }),
      el("p", { class: "hint", text: "CSV with header user,resource,action; * means all." }),
      fileInput,
      checkOut,
    ]),
  );
}
