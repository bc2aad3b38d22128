/** Home / Statistics page: dataset picker lives in the shell; this page
 * shows the selected policy's count cards. */

import type { ApiClient, Stats } from "../api.js";
import { clear, el, errorBox } from "../dom.js";

const CARDS: { key: keyof Stats; label: string }[] = [
  { key: "sub", label: "Users" },
  { key: "res", label: "Resources" },
  { key: "uAttr", label: "User attributes" },
  { key: "rAttr", label: "Resource attributes" },
  { key: "rule", label: "Rules" },
  { key: "perm", label: "Permissions" },
];

export function renderStats(policyId: string, stats: Stats): HTMLElement {
  const cards = CARDS.map(({ key, label }) =>
    el("div", { class: "stat-card", "data-stat": key }, [
      el("div", { class: "stat-value", text: String(stats[key]) }),
      el("div", { class: "stat-label", text: label }),
    ]),
  );
  return el("section", { class: "page stats-page" }, [
    el("h2", { text: `Statistics — ${policyId}` }),
    el("div", { class: "stat-cards" }, cards),
  ]);
}

export async function mountStats(
  root: HTMLElement,
  api: ApiClient,
  policyId: string,
): Promise<void> {
  clear(root);
  try {
    root.append(renderStats(policyId, await api.stats(policyId)));
  } catch (err) {
    root.append(errorBox(String((err as Error).message)));
  }
}
