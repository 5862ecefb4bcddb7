import type {
  Account,
  Catalog,
  Finding,
  ModelDetail,
  ModelInfo,
  PageOf,
  RecordInfo,
  SaveResult,
  ShareReport,
  TimelineEntry,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

/**
 * Thin typed client for the gateway. Sessions normally ride the http-only
 * cookie; when `token` is set (non-browser test harnesses) it is sent as a
 * header instead. A session-expired 401 fires `onSessionLost` so the shell
 * can bounce to the login screen.
 */
export class ApiClient {
  token: string | null = null;
  onSessionLost: (() => void) | null = null;

  constructor(public baseUrl = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["X-Session-Token"] = this.token;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      credentials: "same-origin",
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = "error";
      let message = response.statusText;
      try {
        const payload = await response.json();
        code = payload.code ?? code;
        message = payload.message ?? message;
      } catch {
        /* non-JSON error body */
      }
      if (response.status === 401 && code === "session-expired" && this.onSessionLost) {
        this.onSessionLost();
      }
      throw new ApiError(response.status, code, message);
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  // auth
  register(username: string, password: string, profile: string): Promise<Account> {
    return this.request("POST", "/api/auth/register", { username, password, profile });
  }

  async login(username: string, password: string): Promise<Account> {
    const result = await this.request<{ token: string; user: Account }>(
      "POST", "/api/auth/login", { username, password });
    this.token = result.token;
    return result.user;
  }

  async logout(): Promise<void> {
    await this.request("POST", "/api/auth/logout", {});
    this.token = null;
  }

  me(): Promise<Account> {
    return this.request("GET", "/api/me");
  }

  // catalog
  catalog(): Promise<Catalog> {
    return this.request("GET", "/api/catalog");
  }

  vocabulary(name: string): Promise<{ name: string; entries: string[] }> {
    return this.request("GET", `/api/catalog/vocabularies/${encodeURIComponent(name)}`);
  }

  // models
  listModels(page = 1): Promise<PageOf<ModelInfo>> {
    return this.request("GET", `/api/models?page=${page}`);
  }

  createModel(name: string): Promise<ModelInfo> {
    return this.request("POST", "/api/models", { name });
  }

  fetchModel(modelId: string): Promise<ModelDetail> {
    return this.request("GET", `/api/models/${modelId}`);
  }

  renameModel(modelId: string, name: string): Promise<ModelInfo> {
    return this.request("PATCH", `/api/models/${modelId}`, { name });
  }

  listObjects(modelId: string, page = 1): Promise<PageOf<RecordInfo>> {
    return this.request("GET", `/api/models/${modelId}/objects?page=${page}`);
  }

  addObject(modelId: string, kind: string): Promise<RecordInfo> {
    return this.request("POST", `/api/models/${modelId}/objects`, { kind });
  }

  // records
  saveProperties(recordId: string, properties: Record<string, unknown>): Promise<SaveResult> {
    return this.request("PUT", `/api/objects/${recordId}`, { properties });
  }

  retract(recordId: string): Promise<RecordInfo> {
    return this.request("POST", `/api/objects/${recordId}/retract`, {});
  }

  restore(recordId: string): Promise<RecordInfo> {
    return this.request("POST", `/api/objects/${recordId}/restore`, {});
  }

  // share
  validateModel(modelId: string): Promise<ShareReport> {
    return this.request("GET", `/api/models/${modelId}/validate`);
  }

  preview(modelId: string): Promise<unknown> {
    return this.request("GET", `/api/models/${modelId}/preview`);
  }

  downloadUrl(modelId: string): string {
    return `${this.baseUrl}/api/models/${modelId}/download`;
  }

  // timeline
  timeline(): Promise<TimelineEntry[]> {
    return this.request("GET", "/api/timeline");
  }

  history(modelId: string): Promise<TimelineEntry[]> {
    return this.request("GET", `/api/models/${modelId}/history`);
  }
}

export type { Finding };
