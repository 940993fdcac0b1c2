import type {
  AnswerResponse,
  ExplainerPayload,
  FinalizeResponse,
  LearnerProfile,
  PurchaseResponse,
  SessionPayload,
  StoreItemPayload,
  TopicEntry,
  WalletPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

/** Thrown when the service cannot be reached at all (vs. an HTTP error). */
export class ServiceUnreachableError extends Error {
  constructor(cause: unknown) {
    super(`service unreachable: ${String(cause)}`);
  }
}

type FetchLike = typeof fetch;

const RETRY_DELAYS_MS = [150, 400];

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/**
 * Thin typed client. Mutations carry a request_id; on a network failure the
 * same body (same request_id) is resent, so the server applies it once.
 */
export class ApiClient {
  constructor(
    public readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  newRequestId(): string {
    return crypto.randomUUID();
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let lastFailure: unknown;
    for (let attempt = 0; attempt <= RETRY_DELAYS_MS.length; attempt++) {
      try {
        return await this.fetchImpl(this.baseUrl + path, init);
      } catch (failure) {
        lastFailure = failure;
        if (attempt < RETRY_DELAYS_MS.length) {
          await sleep(RETRY_DELAYS_MS[attempt]);
        }
      }
    }
    throw new ServiceUnreachableError(lastFailure);
  }

  private async parse<T>(response: Response): Promise<T> {
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private async getJson<T>(path: string): Promise<T> {
    return this.parse<T>(await this.request(path));
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.request(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return this.parse<T>(response);
  }

  health(): Promise<{ status: string }> {
    return this.getJson("/health");
  }

  register(displayName: string, gradeLevel: number): Promise<LearnerProfile> {
    return this.postJson("/learners", {
      display_name: displayName,
      grade_level: gradeLevel,
      request_id: this.newRequestId(),
    });
  }

  learnerTopics(learnerId: string): Promise<{ topics: TopicEntry[] }> {
    return this.getJson(`/learners/${learnerId}/topics`);
  }

  wallet(learnerId: string): Promise<WalletPayload> {
    return this.getJson(`/learners/${learnerId}/wallet`);
  }

  report(learnerId: string): Promise<string> {
    return this.request(`/learners/${learnerId}/report`).then(async (response) => {
      if (!response.ok) throw new ApiError(response.status, response.statusText);
      return response.text();
    });
  }

  catalog(): Promise<{ items: StoreItemPayload[] }> {
    return this.getJson("/store/catalog");
  }

  messages(): Promise<{ messages: Record<string, string> }> {
    return this.getJson("/messages");
  }

  explainer(topicCode: string): Promise<ExplainerPayload> {
    return this.getJson(`/topics/${topicCode}/explainer`);
  }

  startSession(
    learnerId: string,
    topicCode: string,
    seed?: number | string,
  ): Promise<SessionPayload> {
    return this.postJson("/sessions", {
      learner_id: learnerId,
      topic: topicCode,
      seed: seed ?? null,
      request_id: this.newRequestId(),
    });
  }

  sessionDetail(sessionId: string): Promise<SessionPayload> {
    return this.getJson(`/sessions/${sessionId}`);
  }

  submitAnswer(
    sessionId: string,
    answer: number,
    elapsedSeconds: number,
    requestId: string,
  ): Promise<AnswerResponse> {
    return this.postJson(`/sessions/${sessionId}/answer`, {
      answer,
      elapsed_seconds: elapsedSeconds,
      request_id: requestId,
    });
  }

  advance(sessionId: string): Promise<SessionPayload> {
    return this.postJson(`/sessions/${sessionId}/advance`, {
      request_id: this.newRequestId(),
    });
  }

  finalize(sessionId: string, recordDate?: string): Promise<FinalizeResponse> {
    return this.postJson(`/sessions/${sessionId}/finalize`, {
      request_id: this.newRequestId(),
      record_date: recordDate ?? null,
    });
  }

  purchase(learnerId: string, itemId: string): Promise<PurchaseResponse> {
    return this.postJson(`/learners/${learnerId}/purchase`, {
      item_id: itemId,
      request_id: this.newRequestId(),
    });
  }
}
