/**
 * Typed client for the abacbench JSON API.
 *
 * Every number shown in the UI comes from one of these responses; the UI
 * performs no policy evaluation of its own.
 */

export type PolicyRef = { id: string; name: string };

export type Stats = {
  sub: number;
  res: number;
  uAttr: number;
  rAttr: number;
  rule: number;
  perm: number;
};

export type Permission = { user: string; resource: string; action: string };

export type Decision = {
  permitted: boolean;
  matchingRules: number[];
  note?: string;
};

export type PermissionList = {
  permissions: Permission[];
  total: number;
  limit: number;
};

export type EvalResponse = Decision | PermissionList;

export type CoverageEntry = {
  rule: number;
  count: number;
  granted?: Permission[];
  total?: number;
};

export type Heatmap = {
  rules: number[];
  userAttrs: string[];
  resourceAttrs: string[];
  cells: number[][];
};

export type AccessProfile = { resource: string; users: number };

export type ResourceAccess = { top: AccessProfile[]; bottom: AccessProfile[] };

export type LogRequest = {
  n: number;
  permitRatio: number;
  overRate?: number;
  underRate?: number;
  seed?: number;
  unique?: boolean;
  emitTruth?: boolean;
};

export function isDecision(response: EvalResponse): response is Decision {
  return "permitted" in response;
}

/** Error carrying the server's diagnostic text, shown inline by pages. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let detail = `HTTP ${response.status}`;
      try {
        const body = await response.json();
        if (body && typeof body.detail === "string") detail = body.detail;
        else detail = JSON.stringify(body);
      } catch {
        /* non-JSON error body; keep the status text */
      }
      throw new ApiError(response.status, detail);
    }
    return response;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    return (await this.request(path, init)).json() as Promise<T>;
  }

  listPolicies(): Promise<PolicyRef[]> {
    return this.json("/api/policies");
  }

  stats(id: string): Promise<Stats> {
    return this.json(`/api/policies/${encodeURIComponent(id)}/stats`);
  }

  uploadPolicy(text: string, name: string): Promise<{ id: string; stats: Stats }> {
    const query = name ? `?name=${encodeURIComponent(name)}` : "";
    return this.json(`/api/policies${query}`, { method: "POST", body: text });
  }

  evaluate(
    id: string,
    fields: { user?: string; resource?: string; action?: string; limit?: number },
  ): Promise<EvalResponse> {
    return this.json(`/api/policies/${encodeURIComponent(id)}/eval`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(fields),
    });
  }

  async checkFile(id: string, csv: string): Promise<string> {
    const response = await this.request(`/api/policies/${encodeURIComponent(id)}/check`, {
      method: "POST",
      body: csv,
    });
    return response.text();
  }

  coverage(id: string, withPermissions: boolean, limit?: number): Promise<CoverageEntry[]> {
    const params = new URLSearchParams();
    if (withPermissions) params.set("permissions", "true");
    if (limit !== undefined) params.set("limit", String(limit));
    const query = params.toString() ? `?${params}` : "";
    return this.json(`/api/policies/${encodeURIComponent(id)}/coverage${query}`);
  }

  externalCoverage(id: string, rules: string): Promise<CoverageEntry[]> {
    return this.json(`/api/policies/${encodeURIComponent(id)}/coverage`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ rules, permissions: true, limit: 50 }),
    });
  }

  heatmap(id: string): Promise<Heatmap> {
    return this.json(`/api/policies/${encodeURIComponent(id)}/heatmap`);
  }

  resourceAccess(id: string): Promise<ResourceAccess> {
    return this.json(`/api/policies/${encodeURIComponent(id)}/resource-access`);
  }

  async generateLogs(id: string, config: LogRequest): Promise<string> {
    const response = await this.request(`/api/policies/${encodeURIComponent(id)}/logs`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(config),
    });
    return response.text();
  }
}
