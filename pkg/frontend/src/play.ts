import { ApiClient } from "./api.js";
import { AppStore } from "./state.js";
import { Countdown } from "./timer.js";
import type { AnswerResponse, FinalizeResponse, SessionPayload } from "./types.js";

/**
 * Drives one session: starts the countdown per question, stamps every
 * submission with the client-measured elapsed seconds, and mirrors the
 * server's judgment back into the store. Answers are never judged locally.
 */
export class PlayController {
  timer: Countdown | null = null;
  inputEnabled = false;
  private pendingRequestId: string | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly store: AppStore,
    private readonly now: () => number = () => Date.now(),
  ) {}

  get session(): SessionPayload | null {
    return this.store.session;
  }

  async start(learnerId: string, topicCode: string, seed?: number | string): Promise<SessionPayload> {
    const session = await this.api.startSession(learnerId, topicCode, seed);
    this.store.beginPlay(session);
    this.armQuestion(session);
    return session;
  }

  /** Resume an existing session (after a reload or service restart). */
  async resume(sessionId: string): Promise<SessionPayload> {
    const session = await this.api.sessionDetail(sessionId);
    this.store.beginPlay(session);
    this.armQuestion(session);
    return session;
  }

  private armQuestion(session: SessionPayload): void {
    if (session.problem !== null) {
      this.timer = new Countdown(session.time_limit_seconds, this.now);
      this.timer.start();
      this.inputEnabled = true;
    } else {
      this.timer = null;
      this.inputEnabled = false;
    }
    this.pendingRequestId = null;
  }

  /** Submit the learner's answer with the measured elapsed time. */
  async submit(answer: number): Promise<AnswerResponse> {
    if (!this.inputEnabled || this.store.session === null) {
      throw new Error("input is disabled; no question is pending");
    }
    const elapsed = this.timer ? this.timer.elapsedSeconds() : 0;
    return this.send(answer, elapsed);
  }

  /**
   * Countdown expiry: disable input immediately and report an elapsed time
   * past the limit so the server records a timeout.
   */
  async submitTimeout(): Promise<AnswerResponse> {
    if (this.store.session === null) {
      throw new Error("no active session");
    }
    this.inputEnabled = false;
    const limit = this.store.session.time_limit_seconds;
    const elapsed = Math.max(this.timer?.elapsedSeconds() ?? 0, limit + 1);
    return this.send(0, elapsed);
  }

  private async send(answer: number, elapsedSeconds: number): Promise<AnswerResponse> {
    const session = this.store.session!;
    const wasEnabled = this.inputEnabled;
    this.inputEnabled = false;
    // One request id per question attempt; any retry resubmits the same id.
    if (this.pendingRequestId === null) {
      this.pendingRequestId = this.api.newRequestId();
    }
    let response: AnswerResponse;
    try {
      response = await this.api.submitAnswer(
        session.session_id,
        answer,
        elapsedSeconds,
        this.pendingRequestId,
      );
    } catch (error) {
      // Transport failure: let the learner resubmit the same attempt.
      this.inputEnabled = wasEnabled;
      throw error;
    }
    this.pendingRequestId = null;
    this.store.applyServerSession(response, response.message);
    if (response.problem !== null) {
      this.armQuestion(response);
    } else {
      this.timer = null;
      this.inputEnabled = false;
    }
    return response;
  }

  get stageComplete(): boolean {
    const session = this.store.session;
    return session !== null && !session.finished && session.remaining === 0;
  }

  async advanceStage(): Promise<SessionPayload> {
    const session = this.store.session;
    if (session === null) throw new Error("no active session");
    const updated = await this.api.advance(session.session_id);
    this.store.applyServerSession(updated);
    this.armQuestion(updated);
    return updated;
  }

  async finalize(recordDate?: string): Promise<FinalizeResponse> {
    const session = this.store.session;
    if (session === null) throw new Error("no active session");
    const result = await this.api.finalize(session.session_id, recordDate);
    this.store.applyWallet(result.wallet);
    this.store.feedback = result.message;
    this.store.showResults();
    return result;
  }
}
