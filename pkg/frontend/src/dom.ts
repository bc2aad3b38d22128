/** Small DOM construction helpers shared by the pages. */

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "text") node.textContent = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

/** Build a table; every cell is plain text from the caller's data. */
export function table(headers: string[], rows: (string | number)[][]): HTMLTableElement {
  const head = el("tr", {}, headers.map((h) => el("th", { text: h })));
  const body = rows.map((row) =>
    el("tr", {}, row.map((cell) => el("td", { text: String(cell) }))),
  );
  return el("table", { class: "data-table" }, [
    el("thead", {}, [head]),
    el("tbody", {}, body),
  ]);
}

export function errorBox(message: string): HTMLElement {
  return el("div", { class: "error-box", role: "alert", text: message });
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

/** Parse CSV the service emits (no quoted fields in its outputs we table). */
export function parseCsv(text: string): string[][] {
  return text
    .split(/\r?\n/)
    .filter((line) => line.length > 0)
    .map((line) => line.split(","));
}

export function downloadText(filename: string, text: string, mime = "text/csv"): void {
  const url = URL.createObjectURL(new Blob([text], { type: mime }));
  const link = el("a", { href: url, download: filename });
  document.body.append(link);
  link.click();
  link.remove();
  URL.revokeObjectURL(url);
}
