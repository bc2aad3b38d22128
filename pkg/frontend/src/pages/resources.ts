/** Resource Access page: top-10 / bottom-10 bar charts of distinct users
 * with access, straight from the API's projection. */

import type { AccessProfile, ApiClient, ResourceAccess } from "../api.js";
import { clear, el, errorBox } from "../dom.js";

export function renderBars(title: string, profiles: AccessProfile[], max: number): HTMLElement {
  const rows = profiles.map((p) => {
    const width = max === 0 ? 0 : (p.users / max) * 100;
    return el("div", { class: "bar-row" }, [
      el("span", { class: "bar-label", text: p.resource }),
      el("div", { class: "bar-track" }, [
        el("div", { class: "bar-fill", style: `width: ${width.toFixed(1)}%` }),
      ]),
      el("span", { class: "bar-value", "data-resource": p.resource, text: String(p.users) }),
    ]);
  });
  return el("div", { class: "bar-chart" }, [el("h3", { text: title }), ...rows]);
}

export function renderResourceAccess(data: ResourceAccess): HTMLElement {
  const max = Math.max(1, ...data.top.map((p) => p.users), ...data.bottom.map((p) => p.users));
  return el("div", { class: "resource-access" }, [
    renderBars("Most accessible resources", data.top, max),
    renderBars("Least accessible resources", data.bottom, max),
  ]);
}

export async function mountResources(
  root: HTMLElement,
  api: ApiClient,
  policyId: string,
): Promise<void> {
  clear(root);
  const section = el("section", { class: "page resources-page" }, [
    el("h2", { text: `Resource Access — ${policyId}` }),
  ]);
  root.append(section);
  try {
    section.append(renderResourceAccess(await api.resourceAccess(policyId)));
  } catch (err) {
    section.append(errorBox(String((err as Error).message)));
  }
}
