/** Thin client for the versecraft HTTP API.
 *
 * At most one suggest request is in flight: a newer call aborts the
 * previous one. The fetch implementation is injectable for tests. */
export class ApiError extends Error {
    status;
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
export class ApiClient {
    baseUrl;
    fetchImpl;
    suggestController = null;
    constructor(baseUrl = "", fetchImpl = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchImpl = fetchImpl;
    }
    async post(path, body, signal) {
        const resp = await this.fetchImpl(this.baseUrl + path, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
            signal,
        });
        if (!resp.ok) {
            let detail = `${resp.status}`;
            try {
                const payload = await resp.json();
                detail = payload.detail ?? detail;
            }
            catch {
                // non-JSON error body; keep the status code
            }
            throw new ApiError(resp.status, detail);
        }
        return resp.json();
    }
    /** Request next-line suggestions; cancels any in-flight request. */
    async suggest(context, tier, count = 20) {
        this.suggestController?.abort();
        const controller = new AbortController();
        this.suggestController = controller;
        try {
            return await this.post("/api/suggest", { context, tier, count }, controller.signal);
        }
        finally {
            if (this.suggestController === controller) {
                this.suggestController = null;
            }
        }
    }
    async generate(options) {
        return this.post("/api/generate", options);
    }
    /** One POST per accepted suggestion; dismissals never call this. */
    async sendFeedback(record) {
        return this.post("/api/feedback", record);
    }
    async health() {
        const resp = await this.fetchImpl(this.baseUrl + "/api/health");
        if (!resp.ok) {
            throw new ApiError(resp.status, "health check failed");
        }
        return resp.json();
    }
}
