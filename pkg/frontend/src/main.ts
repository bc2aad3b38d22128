/** Application shell: policy picker, upload, and hash routing over the
 * six pages. All state is the selected policy id plus the current route. */

import { ApiClient } from "./api.js";
import { clear, el, errorBox } from "./dom.js";
import { mountEvaluate } from "./pages/evaluate.js";
import { mountHeatmap } from "./pages/heatmap.js";
import { mountLoggen } from "./pages/loggen.js";
import { mountResources } from "./pages/resources.js";
import { mountRules } from "./pages/rules.js";
import { mountStats } from "./pages/stats.js";

type Mount = (root: HTMLElement, api: ApiClient, policyId: string) => void | Promise<void>;

export const PAGES: { route: string; label: string; mount: Mount }[] = [
  { route: "stats", label: "Statistics", mount: mountStats },
  { route: "evaluate", label: "Access Evaluation", mount: mountEvaluate },
  { route: "rules", label: "Rule Analysis", mount: mountRules },
  { route: "heatmap", label: "Attribute Usage", mount: mountHeatmap },
  { route: "resources", label: "Resource Access", mount: mountResources },
  { route: "loggen", label: "Log Generator", mount: mountLoggen },
];

export function currentRoute(): string {
  const hash = window.location.hash.replace(/^#\/?/, "");
  return PAGES.some((p) => p.route === hash) ? hash : "stats";
}

export async function startApp(root: HTMLElement, api = new ApiClient()): Promise<void> {
  const picker = el("select", { id: "policy-picker" });
  const uploadInput = el("input", { type: "file", id: "policy-upload", accept: ".abac" });
  const shellError = el("div", { id: "shell-error" });
  const nav = el("nav", {}, [
    ...PAGES.map((p) => el("a", { href: `#/${p.route}`, "data-route": p.route, text: p.label })),
  ]);
  const content = el("main", { id: "content" });

  clear(root);
  root.append(
    el("header", {}, [
      el("h1", { text: "ABAC policy workbench" }),
      el("div", { class: "toolbar" }, [
        el("label", { text: "Dataset: " }, [picker]),
        el("label", { class: "upload-label", text: "Upload .abac: " }, [uploadInput]),
      ]),
      nav,
      shellError,
    ]),
    content,
  );

  async function refreshPolicies(selected?: string): Promise<void> {
    const policies = await api.listPolicies();
    clear(picker);
    for (const p of policies) {
      picker.append(el("option", { value: p.id, text: p.id }));
    }
    if (selected && policies.some((p) => p.id === selected)) {
      picker.value = selected;
    }
  }

  function renderPage(): void {
    const route = currentRoute();
    for (const link of nav.querySelectorAll("a")) {
      link.classList.toggle("active", link.dataset.route === route);
    }
    const page = PAGES.find((p) => p.route === route)!;
    const policyId = picker.value;
    if (!policyId) {
      clear(content);
      content.append(errorBox("no policy loaded"));
      return;
    }
    void page.mount(content, api, policyId);
  }

  picker.addEventListener("change", renderPage);
  window.addEventListener("hashchange", renderPage);
  uploadInput.addEventListener("change", () => {
    const file = uploadInput.files?.[0];
    if (!file) return;
    void (async () => {
      clear(shellError);
      try {
        const name = file.name.replace(/\.abac$/, "");
        const { id } = await api.uploadPolicy(await file.text(), name);
        await refreshPolicies(id);
        renderPage();
      } catch (err) {
        shellError.append(errorBox(String((err as Error).message)));
      }
    })();
  });

  try {
    await refreshPolicies();
    renderPage();
  } catch (err) {
    shellError.append(errorBox(String((err as Error).message)));
  }
}

declare global {
  interface Window {
    __ABACBENCH_TEST__?: boolean;
  }
}

if (typeof window !== "undefined" && !window.__ABACBENCH_TEST__) {
  const root = document.getElementById("app");
  if (root) void startApp(root);
}
