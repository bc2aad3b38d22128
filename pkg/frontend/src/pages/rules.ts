/** Rule Analysis page: per-rule coverage with expandable permission lists,
 * plus a textarea for scoring an external rule set against the policy. */

import type { ApiClient, CoverageEntry } from "../api.js";
import { clear, el, errorBox, table } from "../dom.js";

export function renderCoverage(entries: CoverageEntry[]): HTMLElement {
  const container = el("div", { class: "coverage-list" });
  for (const entry of entries) {
    const summary = el("summary", {}, [
      el("span", { class: "rule-label", text: `rule ${entry.rule}` }),
      el("span", {
        class: "rule-count",
        "data-rule": String(entry.rule),
        text: ` grants ${entry.count} permission${entry.count === 1 ? "" : "s"}`,
      }),
    ]);
    const details = el("details", { class: "rule-coverage" }, [summary]);
    if (entry.granted) {
      const rows = entry.granted.map((p) => [p.user, p.resource, p.action]);
      if (entry.total !== undefined && entry.total > entry.granted.length) {
        details.append(
          el("p", {
            class: "hint",
            text: `showing first ${entry.granted.length} of ${entry.total}`,
          }),
        );
      }
      details.append(table(["user", "resource", "action"], rows));
    }
    container.append(details);
  }
  return container;
}

export function mountRules(root: HTMLElement, api: ApiClient, policyId: string): void {
  clear(root);
  const ownOut = el("div", { id: "own-coverage" });
  const externalOut = el("div", { id: "external-coverage" });
  const rulesBox = el("textarea", {
    id: "external-rules",
    rows: "6",
    placeholder: "rule(position in {student}; type in {gradebook}; {readMyScores}; crsTaken contains crs)",
  });
  const scoreButton = el("button", { text: "Score external rules" });
  scoreButton.addEventListener("click", () => {
    void (async () => {
      clear(externalOut);
      try {
        const entries = await api.externalCoverage(policyId, rulesBox.value);
        const totalGranted = entries.reduce((acc, e) => acc + e.count, 0);
        externalOut.append(
          el("p", {
            class: "result-summary",
            text: `${entries.length} rules grant ${totalGranted} permissions in total`,
          }),
          renderCoverage(entries),
        );
      } catch (err) {
        externalOut.append(errorBox(String((err as Error).message)));
      }
    })();
  });

  root.append(
    el("section", { class: "page rules-page" }, [
      el("h2", { text: `Rule Analysis — ${policyId}` }),
      ownOut,
      el("h3", { text: "External rules" }),
      el("p", {
        class: "hint",
        text: "Paste rule statements to compute their coverage over this policy's attribute data.",
      }),
      rulesBox,
      scoreButton,
      externalOut,
    ]),
  );

  void (async () => {
    try {
      const entries = await api.coverage(policyId, true, 200);
      ownOut.append(renderCoverage(entries));
    } catch (err) {
      ownOut.append(errorBox(String((err as Error).message)));
    }
  })();
}
