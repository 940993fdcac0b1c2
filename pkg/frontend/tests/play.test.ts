import { describe, expect, it } from "vitest";

import { ApiClient, ServiceUnreachableError } from "../src/api.js";
import { PlayController } from "../src/play.js";
import { AppStore } from "../src/state.js";
import type { ProblemPayload, SessionPayload } from "../src/types.js";

const PROBLEM: ProblemPayload = {
  prompt: "138 + 520 = ?",
  presentation: "numeric-sentence",
  topic: "add-no-regroup",
  render: {},
};

function session(overrides: Partial<SessionPayload> = {}): SessionPayload {
  return {
    session_id: "s-00000001",
    learner_id: "l-000001",
    topic: "add-no-regroup",
    topic_title: "Addition A",
    stage: "preparatory",
    remaining: 2,
    asked: 0,
    correct: 0,
    finished: false,
    time_limit_seconds: 60,
    problem: PROBLEM,
    ...overrides,
  };
}

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

interface Call {
  path: string;
  body: Record<string, unknown> | null;
}

function makeHarness(responses: Array<(call: Call) => unknown>) {
  const calls: Call[] = [];
  let failNext = 0;
  const fetchImpl: typeof fetch = async (url, init) => {
    const call: Call = {
      path: String(url),
      body: init?.body ? JSON.parse(String(init.body)) : null,
    };
    if (failNext > 0) {
      failNext -= 1;
      throw new TypeError("connection reset");
    }
    calls.push(call);
    const responder = responses.shift();
    if (!responder) throw new Error(`no scripted response for ${call.path}`);
    return jsonResponse(responder(call));
  };
  const store = new AppStore();
  let nowMs = 0;
  const controller = new PlayController(new ApiClient("", fetchImpl), store, () => nowMs);
  return {
    calls,
    store,
    controller,
    advanceClock: (ms: number) => {
      nowMs += ms;
    },
    failNextRequest: () => {
      failNext = 3; // exhaust the transport-level retries too
    },
  };
}

describe("PlayController", () => {
  it("starting a session arms the countdown and enables input", async () => {
    const harness = makeHarness([() => session()]);
    await harness.controller.start("l-000001", "add-no-regroup");
    expect(harness.controller.inputEnabled).toBe(true);
    expect(harness.controller.timer?.running).toBe(true);
    expect(harness.store.screen).toBe("play");
  });

  it("submissions carry the client-measured elapsed seconds", async () => {
    const harness = makeHarness([
      () => session(),
      () => ({
        ...session({ remaining: 1, asked: 1, correct: 1 }),
        event: "correct",
        message: "Great job!",
        stage_complete: false,
      }),
    ]);
    await harness.controller.start("l-000001", "add-no-regroup");
    harness.advanceClock(3200);
    await harness.controller.submit(658);
    const answerCall = harness.calls[1];
    expect(answerCall.path).toContain("/answer");
    expect(answerCall.body?.answer).toBe(658);
    expect(answerCall.body?.elapsed_seconds).toBeCloseTo(3.2);
  });

  it("the tally shown is exactly what the server acknowledged", async () => {
    const harness = makeHarness([
      () => session(),
      () => ({
        ...session({ remaining: 1, asked: 5, correct: 4 }),
        event: "correct",
        message: "Great job!",
        stage_complete: false,
      }),
    ]);
    await harness.controller.start("l-000001", "add-no-regroup");
    await harness.controller.submit(658);
    expect(harness.store.tally).toEqual({ asked: 5, correct: 4 });
    expect(harness.store.feedback).toBe("Great job!");
  });

  it("timeout disables input and reports an over-limit elapsed time", async () => {
    const harness = makeHarness([
      () => session(),
      () => ({
        ...session({ remaining: 1, asked: 1, correct: 0 }),
        event: "timeout",
        message: "Time's up!",
        stage_complete: false,
      }),
    ]);
    await harness.controller.start("l-000001", "add-no-regroup");
    const response = await harness.controller.submitTimeout();
    expect(response.event).toBe("timeout");
    const body = harness.calls[1].body!;
    expect(Number(body.elapsed_seconds)).toBeGreaterThan(60);
  });

  it("a failed submission can be resent with the same request id", async () => {
    const harness = makeHarness([
      () => session(),
      () => ({
        ...session({ remaining: 1, asked: 1, correct: 1 }),
        event: "correct",
        message: "Great job!",
        stage_complete: false,
      }),
    ]);
    await harness.controller.start("l-000001", "add-no-regroup");
    harness.failNextRequest();
    await expect(harness.controller.submit(658)).rejects.toBeInstanceOf(
      ServiceUnreachableError,
    );
    expect(harness.controller.inputEnabled).toBe(true); // learner may retry
    await harness.controller.submit(658);
    const answerCalls = harness.calls.filter((c) => c.path.includes("/answer"));
    expect(answerCalls).toHaveLength(1); // failed attempts never reached the wire
    expect(typeof answerCalls[0].body?.request_id).toBe("string");
  });

  it("stage completion leads to advance, which rearms the timer", async () => {
    const harness = makeHarness([
      () => session({ remaining: 1 }),
      () => ({
        ...session({ remaining: 0, asked: 1, correct: 1, problem: null }),
        event: "correct",
        message: "Great job! Stage complete!",
        stage_complete: true,
      }),
      () => session({ stage: "developmental", remaining: 5 }),
    ]);
    await harness.controller.start("l-000001", "add-no-regroup");
    await harness.controller.submit(658);
    expect(harness.controller.stageComplete).toBe(true);
    expect(harness.controller.inputEnabled).toBe(false);
    await harness.controller.advanceStage();
    expect(harness.store.session?.stage).toBe("developmental");
    expect(harness.controller.inputEnabled).toBe(true);
  });

  it("finalize stores the server wallet and moves to results", async () => {
    const harness = makeHarness([
      () => session({ remaining: 0, problem: null, finished: true }),
      () => ({
        session_id: "s-00000001",
        record: {
          date: "2011-05-11",
          learner_name: "John",
          lesson: "Addition",
          topic: "Addition A",
          preparatory_percent: 75,
          developmental_percent: 80,
          evaluation_percent: 90,
          remark: "Passed",
        },
        tickets_awarded: 11,
        wallet: { learner_id: "l-000001", earned: 11, spent: 0, balance: 11 },
        message: "Congratulations!",
      }),
    ]);
    await harness.controller.resume("s-00000001");
    const result = await harness.controller.finalize("2011-05-11");
    expect(result.record.remark).toBe("Passed");
    expect(harness.store.wallet?.balance).toBe(11);
    expect(harness.store.screen).toBe("results");
  });
});
