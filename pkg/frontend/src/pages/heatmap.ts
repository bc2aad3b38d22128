/** Attribute Usage page: rule x attribute heatmap; cell intensity is the
 * permission count the API reports, normalized against the matrix max. */

import type { ApiClient, Heatmap } from "../api.js";
import { clear, el, errorBox } from "../dom.js";

export function renderHeatmap(matrix: Heatmap): HTMLElement {
  const attrs = [
    ...matrix.userAttrs.map((a) => ({ name: a, side: "u" })),
    ...matrix.resourceAttrs.map((a) => ({ name: a, side: "r" })),
  ];
  const max = Math.max(1, ...matrix.cells.flat());
  const header = el("tr", {}, [
    el("th", { text: "rule" }),
    ...attrs.map((a) =>
      el("th", { class: `attr-${a.side}`, text: `${a.side}:${a.name}` }),
    ),
  ]);
  const rows = matrix.rules.map((rule, i) => {
    const cells = matrix.cells[i]!.map((value) => {
      const alpha = value === 0 ? 0 : 0.15 + 0.85 * (value / max);
      return el("td", {
        class: "heat-cell",
        "data-value": String(value),
        style: `background-color: rgba(178, 34, 52, ${alpha.toFixed(3)})`,
        title: String(value),
        text: value === 0 ? "" : String(value),
      });
    });
    return el("tr", {}, [el("th", { text: String(rule) }), ...cells]);
  });
  return el("table", { class: "heatmap" }, [
    el("thead", {}, [header]),
    el("tbody", {}, rows),
  ]);
}

export async function mountHeatmap(
  root: HTMLElement,
  api: ApiClient,
  policyId: string,
): Promise<void> {
  clear(root);
  const section = el("section", { class: "page heatmap-page" }, [
    el("h2", { text: `Attribute Usage — ${policyId}` }),
    el("p", {
      class: "hint",
      text: "Cells show how many permissions each rule grants when it mentions the attribute.",
    }),
  ]);
  root.append(section);
  try {
    section.append(renderHeatmap(await api.heatmap(policyId)));
  } catch (err) {
    section.append(errorBox(String((err as Error).message)));
  }
}
