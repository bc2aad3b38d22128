/** Log Generator page: size/ratio/noise/seed form, CSV download. */

import type { ApiClient, LogRequest } from "../api.js";
import { clear, downloadText, el, errorBox, parseCsv } from "../dom.js";

export function readLogForm(form: HTMLFormElement): LogRequest {
  const value = (name: string) =>
    (form.querySelector(`[name=${name}]`) as HTMLInputElement).value;
  const checked = (name: string) =>
    (form.querySelector(`[name=${name}]`) as HTMLInputElement).checked;
  return {
    n: Number(value("n")),
    permitRatio: Number(value("permitRatio")),
    overRate: Number(value("overRate") || 0),
    underRate: Number(value("underRate") || 0),
    seed: Number(value("seed") || 0),
    unique: checked("unique"),
    emitTruth: checked("emitTruth"),
  };
}

export function summarizeCsv(csv: string): { rows: number; permits: number; denies: number } {
  const [header, ...body] = parseCsv(csv);
  const decisionCol = header ? header.indexOf("decision") : -1;
  let permits = 0;
  for (const row of body) {
    if (row[decisionCol] === "permit") permits += 1;
  }
  return { rows: body.length, permits, denies: body.length - permits };
}

function numberField(name: string, label: string, attrs: Record<string, string>): HTMLElement {
  return el("label", { class: "field" }, [
    el("span", { text: label }),
    el("input", { name, type: "number", ...attrs }),
  ]);
}

export function mountLoggen(root: HTMLElement, api: ApiClient, policyId: string): void {
  clear(root);
  const out = el("div", { id: "loggen-result" });
  const form = el("form", { id: "loggen-form" }, [
    numberField("n", "Entries", { value: "100", min: "1", step: "1" }),
    numberField("permitRatio", "Permit ratio", { value: "0.6", min: "0", max: "1", step: "0.01" }),
    numberField("overRate", "Over-permission rate", { value: "0", min: "0", max: "1", step: "0.01" }),
    numberField("underRate", "Under-permission rate", { value: "0", min: "0", max: "1", step: "0.01" }),
    numberField("seed", "Seed", { value: "0", min: "0", step: "1" }),
    el("label", { class: "field checkbox" }, [
      el("input", { name: "unique", type: "checkbox" }),
      el("span", { text: "Unique entries (sample without replacement)" }),
    ]),
    el("label", { class: "field checkbox" }, [
      el("input", { name: "emitTruth", type: "checkbox" }),
      el("span", { text: "Include ground-truth column" }),
    ]),
    el("button", { type: "submit", text: "Generate" }),
  ]);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      clear(out);
      try {
        const config = readLogForm(form);
        const csv = await api.generateLogs(policyId, config);
        const summary = summarizeCsv(csv);
        out.append(
          el("p", {
            class: "result-summary",
            "data-rows": String(summary.rows),
            "data-permits": String(summary.permits),
            text: `${summary.rows} entries: ${summary.permits} permit, ${summary.denies} deny`,
          }),
        );
        const download = el("button", { text: "Download CSV" });
        download.addEventListener("click", () => downloadText(`${policyId}-logs.csv`, csv));
        out.append(download);
      } catch (err) {
        out.append(errorBox(String((err as Error).message)));
      }
    })();
  });

  root.append(
    el("section", { class: "page loggen-page" }, [
      el("h2", { text: `Log Generator — ${policyId}` }),
      form,
      out,
    ]),
  );
}
